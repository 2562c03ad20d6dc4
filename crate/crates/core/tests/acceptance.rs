//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails or overruns its time limit.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hjramsey::hjcube::{classify_kset, enumerate_lines, lines_within, quasilines_within, Alphabet, KSetVerdict, Line, Point};
use hjramsey::hypergraph::{Hypergraph, WeightFamily};
use hjramsey::intembed::{choose_t, phi_embed, pullback_verify, scaled_congruent_copies, Configuration, EmbedStatus, LatticePoint};
use hjramsey::linesys::{classify_triple, greedy_build, is_suitable, GreedyConfig, LineSystem, TripleVerdict};
use hjramsey::oracles::{brute_congruent_tuples, brute_k4minus, brute_quasilines, max_weight_independent_set, proper_coloring_search};
use hjramsey::picture::{amalgamate, is_picture, music_alphabet, picture_zero, Picture};
use hjramsey::pipeline::{dense_free_subset, ramsey_witness, run_construction, ConstructionTrace, GraphSpec, MuEvidence, PipelineConfig, RamseyOutcome, StagePolicy};
use hjramsey::shifthyp::{build_shift, certify_k43minus_free, window_independent_set, ShiftParams};
use hjramsey::{Budget, Verdict};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn pts(words: &[&str]) -> Vec<Point> {
    words.iter().map(|w| Point::parse(w).unwrap()).collect()
}

fn binom(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sorted(mut v: Vec<Point>) -> Vec<Point> {
    v.sort();
    v
}

fn fano_trace() -> ConstructionTrace {
    let policy = StagePolicy::Sparse { n: 2, d: 4, target: usize::MAX, max_rejections: 10_000 };
    let half = BigRational::new(1.into(), 2.into());
    run_construction(&PipelineConfig::new(3, 2, half, GraphSpec::Fano, vec![policy], 0)).unwrap()
}

fn c1_worked_examples() -> Check {
    match classify_kset(&pts(&["111", "121", "131"]), 3).unwrap() {
        KSetVerdict::IsLine(l) => ensure!(l.star_word() == "1*1", "line found as {}", l.star_word()),
        other => return Err(format!("{{111,121,131}} classified {other:?}")),
    }
    let v = classify_kset(&pts(&["113", "122", "131"]), 3).unwrap();
    ensure!(v == KSetVerdict::QuasilineOnly, "{{113,122,131}} classified {v:?}");
    let v = classify_kset(&pts(&["124", "223", "322", "421"]), 4).unwrap();
    ensure!(v == KSetVerdict::QuasilineOnly, "{{124,223,322,421}} classified {v:?}");
    let diag = Line::parse_star_word("**", 3).unwrap();
    for a in 1..=3 {
        let left = Line::parse_star_word(&format!("{a}*"), 3).unwrap();
        let right = Line::parse_star_word(&format!("*{a}"), 3).unwrap();
        let v = classify_triple(&diag, &left, &right).unwrap();
        ensure!(v == TripleVerdict::Tripod, "diagonal with {a}* and *{a} classified {v:?}");
    }
    Ok("3 k-sets and 3 tripods".into())
}

fn c2_counting() -> Check {
    let mut checked = 0;
    for k in 2..=4usize {
        for n in 1..=5usize {
            let mut total = 0u128;
            for i in 1..=n {
                let lines: BTreeSet<Line> = enumerate_lines(k, n, Some(i)).unwrap().collect();
                let want = binom(n as u128, i as u128) * (k as u128).pow((n - i) as u32);
                ensure!(lines.len() as u128 == want, "k={k} n={n} i={i}: {} lines, expected {want}", lines.len());
                ensure!(lines.iter().all(|l| l.moving().len() == i), "k={k} n={n} i={i}: wrong class");
                total += want;
            }
            let all = enumerate_lines(k, n, None).unwrap().count() as u128;
            let closed = (k as u128 + 1).pow(n as u32) - (k as u128).pow(n as u32);
            ensure!(all == closed && total == closed, "k={k} n={n}: {all} lines, expected {closed}");
            checked += 1;
        }
    }
    for k in 2..=4usize {
        for ell in 1..=4usize {
            for n in ell..=12usize {
                let s = build_shift(&ShiftParams::new(k, ell, n).unwrap()).unwrap();
                let (v, e) = (binom(n as u128, ell as u128), binom(n as u128, (k + ell - 1) as u128));
                ensure!(s.graph.num_vertices() as u128 == v, "Sh({k})({n},{ell}) has {} vertices", s.graph.num_vertices());
                ensure!(s.graph.num_edges() as u128 == e, "Sh({k})({n},{ell}) has {} edges", s.graph.num_edges());
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} parameter sets"))
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn c3_window_average() -> Check {
    let s = build_shift(&ShiftParams::new(2, 3, 5).unwrap()).unwrap();
    let perms = permutations(5);
    ensure!(perms.len() == 120, "{} permutations", perms.len());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let third = BigRational::new(1.into(), 3.into());
    let ys: Vec<Vec<usize>> = perms.iter().map(|pi| window_independent_set(&s, pi).unwrap().1).collect();
    for (pi, y) in perms.iter().zip(&ys) {
        for e in s.graph.edges() {
            ensure!(!e.iter().all(|v| y.contains(v)), "Y for {pi:?} contains edge {e:?}");
        }
        // The window peak must sit at position 2, the only index in I.
        for (x, win) in s.windows.iter().enumerate() {
            let peak = (0..3).max_by_key(|&j| pi[win[j] as usize - 1]).unwrap() + 1;
            ensure!(y.contains(&x) == (peak == 2), "membership of window {win:?} under {pi:?}");
        }
    }
    for family in 0..20 {
        let raw: Vec<BigRational> = (0..s.graph.num_vertices())
            .map(|_| BigRational::new(rng.gen_range(0..50).into(), rng.gen_range(1..20).into()))
            .collect();
        let w = WeightFamily::new(raw).unwrap().normalized().ok_or("zero weight family")?;
        let mut sum = BigRational::zero();
        for y in &ys {
            sum += w.weight_of(y);
        }
        let mean = sum / BigRational::from_integer(120.into());
        ensure!(mean == third, "family {family}: mean {mean}");
    }
    Ok("120 permutations, 20 families, mean exactly 1/3".into())
}

fn c4_tournament() -> Check {
    let mut edges = 0;
    for n in 3..=9 {
        let s = build_shift(&ShiftParams::new(3, 3, n).unwrap()).unwrap();
        let cert = certify_k43minus_free(&s).map_err(|e| format!("n={n}: {e}"))?;
        ensure!(cert.cyclic_triangles.len() == s.graph.num_edges(), "n={n}: partial certificate");
        ensure!(brute_k4minus(&s.graph).is_none(), "n={n}: 4-subset scan found three edges");
        edges += s.graph.num_edges();
    }
    Ok(format!("Sh(3)(n,3) for n = 3..9, {edges} edges certified"))
}

fn c5_picture_zero() -> Check {
    let graphs = [
        ("one edge", Hypergraph::from_int_edges(3, 3, &[vec![1, 2, 3]]).unwrap()),
        ("path", Hypergraph::from_int_edges(3, 5, &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap()),
        ("fano", Hypergraph::fano()),
    ];
    for (name, g) in graphs {
        let (p0, lines) = picture_zero(Arc::new(g.clone()), 3).unwrap();
        let want: BTreeSet<Vec<Point>> = lines.iter().map(|l| sorted(l.points())).collect();
        ensure!(want.len() == g.num_edges(), "{name}: edge lines not distinct");
        let fast: BTreeSet<Vec<Point>> = quasilines_within(p0.points(), 3).unwrap().into_iter().collect();
        let brute: BTreeSet<Vec<Point>> = brute_quasilines(p0.points(), 3, u128::MAX).unwrap().into_iter().collect();
        ensure!(fast == want, "{name}: quasilines differ from the edge lines");
        ensure!(brute == want, "{name}: subset scan differs from the edge lines");
        for (e, l) in g.edges().iter().zip(&lines) {
            let img: BTreeSet<usize> = l.points().iter().map(|p| p0.psi_of(p).unwrap()).collect();
            ensure!(img == e.iter().copied().collect(), "{name}: line {l} projects off its edge");
        }
        let v = is_picture(p0.points(), p0.psi(), &g, 3, &mut Budget::unlimited()).unwrap();
        ensure!(v.is_proven(), "{name}: is_picture {}", v.label());
    }
    Ok("one edge, path, fano".into())
}

fn c6_amalgamation() -> Check {
    let fano = Arc::new(Hypergraph::fano());
    let sh = Arc::new(build_shift(&ShiftParams::new(3, 3, 7).unwrap()).unwrap().graph);
    let (pf, _) = picture_zero(fano.clone(), 3).unwrap();
    let (ps, _) = picture_zero(sh.clone(), 3).unwrap();
    let mut copies_checked = 0;
    for seed in 0..50u64 {
        let (pic, g) = if seed % 2 == 0 { (&pf, &fano) } else { (&ps, &sh) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..g.num_vertices()).collect();
        order.shuffle(&mut rng);
        let x = *order.iter().find(|&&v| g.degree(v) >= 2).ok_or("no vertex of degree 2")?;
        let alphabet = music_alphabet(pic, x).unwrap();
        let n = 1 + (seed as usize / 2) % 2;
        let d = 1 + (seed as usize / 4) % 4;
        let sys = greedy_build(&alphabet, n, &GreedyConfig::new(Some(d), usize::MAX), &mut rng).unwrap().system;
        ensure!(is_suitable(&sys, d).is_ok(), "seed {seed}: greedy system not suitable");
        let am = amalgamate(pic, x, &sys).map_err(|e| format!("seed {seed}: {e}"))?;
        let mut sets = Vec::new();
        for (u, line) in sys.lines().iter().enumerate() {
            let c = am.standard_copy(u).unwrap();
            let v = is_picture(c.points(), c.psi(), g, 3, &mut Budget::unlimited()).unwrap();
            ensure!(v.is_proven(), "seed {seed}: copy {u} is_picture {}", v.label());
            let flat: BTreeSet<Point> = line.points().iter().map(|w| alphabet.flatten(w).unwrap()).collect();
            sets.push((c.points().iter().cloned().collect::<BTreeSet<Point>>(), flat));
            copies_checked += 1;
        }
        for (i, (pa, ua)) in sets.iter().enumerate() {
            for (j, (pb, ub)) in sets.iter().enumerate().skip(i + 1) {
                let got: BTreeSet<&Point> = pa.intersection(pb).collect();
                let want: BTreeSet<&Point> = ua.intersection(ub).collect();
                ensure!(got == want, "seed {seed}: copies {i},{j} meet in {} points, lines in {}", got.len(), want.len());
            }
        }
        let top = &am.picture;
        let union: BTreeSet<Point> = sets.iter().flat_map(|(p, _)| p.iter().cloned()).collect();
        ensure!(union.len() == top.len(), "seed {seed}: amalgam is not the union of its copies");
        let v = is_picture(top.points(), top.psi(), g, 3, &mut Budget::unlimited()).unwrap();
        ensure!(v.is_proven(), "seed {seed}: amalgam is_picture {}", v.label());
        if top.len() <= 250 {
            for q in brute_quasilines(top.points(), 3, u128::MAX).unwrap() {
                let e: Vec<usize> = q.iter().map(|p| top.psi_of(p).unwrap()).collect();
                ensure!(matches!(classify_kset(&q, 3).unwrap(), KSetVerdict::IsLine(_)), "seed {seed}: quasiline not a line");
                let mut e = e;
                e.sort_unstable();
                ensure!(g.has_edge(&e), "seed {seed}: quasiline projects to a non-edge");
            }
        }
    }
    Ok(format!("50 amalgamations, {copies_checked} standard copies"))
}

fn c7_walker(trace: &ConstructionTrace) -> Check {
    let top = trace.final_picture();
    let mut witnesses = 0;
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let colours: BTreeMap<Point, u32> = top.points().iter().map(|p| (p.clone(), rng.gen_range(0..2))).collect();
        match ramsey_witness(trace, |p| colours.get(p).copied()).unwrap() {
            RamseyOutcome::Witness(w) => {
                let pts = w.line.points();
                ensure!(matches!(classify_kset(&pts, 3).unwrap(), KSetVerdict::IsLine(_)), "seed {seed}: witness not a line");
                for p in &pts {
                    ensure!(colours.get(p) == Some(&w.colour), "seed {seed}: {p} has the wrong colour");
                }
                witnesses += 1;
            }
            RamseyOutcome::StageFailure(_) => {}
        }
        let single = |p: &Point| colours.contains_key(p).then_some(0);
        match ramsey_witness(trace, single).unwrap() {
            RamseyOutcome::Witness(w) => {
                ensure!(w.line.points().iter().all(|p| colours.contains_key(p)), "r=1 witness leaves the picture");
                ensure!(matches!(classify_kset(&w.line.points(), 3).unwrap(), KSetVerdict::IsLine(_)), "r=1 witness not a line");
            }
            RamseyOutcome::StageFailure(s) => return Err(format!("r = 1 failed at stage {s}")),
        }
    }
    Ok(format!("{witnesses}/1000 two-colourings gave witnesses, all valid; r = 1 always succeeded"))
}

fn c8_density(trace: &ConstructionTrace) -> Check {
    let fano = Hypergraph::fano();
    let (_, alpha) = max_weight_independent_set(&fano, &WeightFamily::uniform(7), 40).unwrap();
    let scan = (0u32..128)
        .map(|m| (0..7).filter(|v| m >> v & 1 == 1).collect::<Vec<usize>>())
        .filter(|s| fano.is_independent(s))
        .map(|s| s.len())
        .max()
        .unwrap();
    ensure!(alpha == BigRational::from_integer(4.into()) && scan == 4, "independence number {alpha} / scan {scan}");
    ensure!(matches!(trace.base.mu, MuEvidence::ExactOracle), "base evidence is {}", trace.base.mu.label());
    ensure!(trace.final_verdict().is_proven(), "final picture is {}", trace.final_verdict().label());
    let top = trace.final_picture();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for sample in 0..50 {
        let keep: f64 = rng.gen_range(0.05..1.0);
        let y: Vec<Point> = top.points().iter().filter(|_| rng.gen_bool(keep)).cloned().collect();
        let d = dense_free_subset(trace, &y, None, 1000).map_err(|e| format!("sample {sample}: {e}"))?;
        ensure!(2 * d.z.len() >= y.len(), "sample {sample}: |Z| = {} < |Y|/2 = {}/2", d.z.len(), y.len());
        ensure!(d.z.iter().all(|p| y.contains(p)), "sample {sample}: Z leaves Y");
        let q = brute_quasilines(&d.z, 3, u128::MAX).unwrap();
        ensure!(q.is_empty(), "sample {sample}: Z contains quasiline {:?}", q[0]);
    }
    Ok(format!("alpha(Fano) = 4; 50 samples over {} points", top.len()))
}

/// Every AP of length 3 (1-D) or congruent copy (otherwise) in the image,
/// found by exhaustive scan; returns their preimages.
fn copies_by_scan(x: &[Point], images: &[LatticePoint], f: &Configuration) -> Vec<Vec<Point>> {
    let mut out = BTreeSet::new();
    if f.d() == 1 && f.is_progression() {
        let v: Vec<&BigInt> = images.iter().map(|p| &p.coords()[0]).collect();
        for a in 0..v.len() {
            for b in 0..v.len() {
                for c in 0..v.len() {
                    if a != b && b != c && a != c && v[b] - v[a] == v[c] - v[b] {
                        out.insert(sorted(vec![x[a].clone(), x[b].clone(), x[c].clone()]));
                    }
                }
            }
        }
    } else {
        let raw: Vec<Vec<BigInt>> = images.iter().map(|p| p.coords().to_vec()).collect();
        let fz: Vec<Vec<BigInt>> = f.points().iter().map(|p| p.coords().to_vec()).collect();
        for (t, _) in brute_congruent_tuples(&raw, &fz) {
            out.insert(sorted(t.iter().map(|&i| x[i].clone()).collect()));
        }
    }
    out.into_iter().collect()
}

fn c9_transfer() -> Check {
    let edge = Arc::new(Hypergraph::from_int_edges(3, 3, &[vec![1, 2, 3]]).unwrap());
    let path = Arc::new(Hypergraph::from_int_edges(3, 5, &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap());
    let instances: Vec<(&str, Vec<Point>)> = vec![
        ("[3]^2", hjramsey::hjcube::cube_points(3, 2).collect()),
        ("[3]^3", hjramsey::hjcube::cube_points(3, 3).collect()),
        ("P0(edge)", picture_zero(edge, 3).unwrap().0.points().to_vec()),
        ("P0(path)", picture_zero(path, 3).unwrap().0.points().to_vec()),
        ("P0(fano)", picture_zero(Arc::new(Hypergraph::fano()), 3).unwrap().0.points().to_vec()),
    ];
    let configs = ["1,2,3", "0,1,3", "0 0;1 0;0 1"];
    let mut runs = 0;
    for (name, x) in &instances {
        for fs in configs {
            let f = Configuration::parse(fs).unwrap();
            let mut params = choose_t(x, &f, None, 30, 50_000_000).map_err(|e| format!("{name} F={fs}: {e}"))?;
            ensure!(params.status == EmbedStatus::PullbackChecked, "{name} F={fs}: T not validated");
            let images = phi_embed(x, &f, &mut params).unwrap();
            let w = params.weights();
            for l in lines_within(x, 3).unwrap() {
                let idx: Vec<usize> = l.points().iter().map(|p| x.iter().position(|q| q == p).unwrap()).collect();
                let lambda: BigInt = l.moving().iter().map(|&i| w[i].clone()).sum();
                ensure!(lambda > BigInt::zero(), "{name}: non-positive scale");
                let v = images[idx[0]].sub(&f.points()[0].scale(&lambda));
                for (j, &i) in idx.iter().enumerate() {
                    ensure!(images[i] == v.add(&f.points()[j].scale(&lambda)), "{name} F={fs}: line {l} image not homothetic");
                }
            }
            let verdict = pullback_verify(x, &f, &mut params, &mut Budget::unlimited()).unwrap();
            ensure!(verdict.is_proven(), "{name} F={fs}: pullback {}", verdict.label());
            for q in copies_by_scan(x, &images, &f) {
                ensure!(classify_kset(&q, 3).unwrap().is_quasiline(), "{name} F={fs}: scan found a copy over a non-quasiline");
            }
            runs += 1;
        }
    }
    let square = Configuration::parse("0 0;0 1;1 0;1 1").unwrap();
    let tilted: Vec<LatticePoint> = [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|c| LatticePoint::from_i64s(c)).collect();
    let found = scaled_congruent_copies(&tilted, &square, &mut Budget::unlimited());
    let two = BigRational::from_integer(2.into());
    ensure!(found.complete && !found.copies.is_empty(), "no copy of the square found");
    ensure!(found.copies.iter().all(|(_, l2)| *l2 == two), "square copies with lambda^2 other than 2");
    let raw: Vec<Vec<BigInt>> = tilted.iter().map(|p| p.coords().to_vec()).collect();
    let fz: Vec<Vec<BigInt>> = square.points().iter().map(|p| p.coords().to_vec()).collect();
    let mut brute = brute_congruent_tuples(&raw, &fz);
    brute.sort();
    ensure!(brute == found.copies, "square copies disagree with the tuple scan");
    ensure!(hjramsey::intembed::homothetic_copies(&tilted, &square).is_empty(), "tilted square is homothetic");
    Ok(format!("{runs} embeddings validated; tilted square has {} copies, all lambda^2 = 2", found.copies.len()))
}

fn c10_chromatic() -> Check {
    let sys = LineSystem::full(Alphabet::canonical(2), 2).unwrap();
    let v = hjramsey::linesys::chromatic_exceeds(&sys, 2, &mut Budget::unlimited()).unwrap();
    ensure!(v.is_proven(), "chromatic_exceeds on L([2]^2) is {}", v.label());
    let points = sys.points();
    for mask in 0u32..1 << points.len() {
        let colour = |p: &Point| mask >> points.iter().position(|q| q == p).unwrap() & 1;
        let mono = sys.lines().iter().any(|l| l.points().iter().all(|p| colour(p) == colour(&l.point(0))));
        ensure!(mono, "colouring {mask:04b} of [2]^2 has no monochromatic line");
    }
    let fano = Hypergraph::fano();
    let v: Verdict<Vec<u32>> = proper_coloring_search(&fano, 2, &mut Budget::unlimited());
    ensure!(v.is_proven(), "Fano 2-colouring search is {}", v.label());
    for mask in 0u32..128 {
        let mono = fano.edges().iter().any(|e| e.iter().all(|&u| (mask >> u & 1) == (mask >> e[0] & 1)));
        ensure!(mono, "Fano colouring {mask:07b} is proper");
    }
    let v = proper_coloring_search(&fano, 3, &mut Budget::unlimited());
    ensure!(v.is_refuted(), "Fano 3-colouring search is {}", v.label());
    Ok("16 colourings of [2]^2 and 128 of Fano exhausted".into())
}

fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.insert(rel, fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn c11_determinism() -> Check {
    let tmp = tempfile::tempdir().unwrap();
    let mut trees = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(run);
        let status = Command::new(env!("CARGO_BIN_EXE_hjramsey"))
            .args(["pipeline", "--seed", "0", "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(status.status.success(), "run {run} exited with {:?}", status.status.code());
        trees.push(tree(&out));
    }
    ensure!(trees[0].len() >= 5, "only {} files written", trees[0].len());
    ensure!(trees[0] == trees[1], "artifact trees differ");
    let pic: Picture = hjramsey::artifact::read(&tmp.path().join("a/stage-1/picture.json")).unwrap();
    ensure!(!pic.is_empty(), "empty stage picture");
    Ok(format!("{} files identical", trees[0].len()))
}

fn main() {
    let trace = std::cell::OnceCell::new();
    let fano = || trace.get_or_init(fano_trace);
    let criteria: Vec<(&str, Option<Duration>, Box<dyn Fn() -> Check + '_>)> = vec![
        ("1 worked examples", Some(Duration::from_secs(1)), Box::new(c1_worked_examples)),
        ("2 counting identities", Some(Duration::from_secs(30)), Box::new(c2_counting)),
        ("3 window averages", Some(Duration::from_secs(10)), Box::new(c3_window_average)),
        ("4 tournament certificate", Some(Duration::from_secs(60)), Box::new(c4_tournament)),
        ("5 picture zero", Some(Duration::from_secs(30)), Box::new(c5_picture_zero)),
        ("6 amalgamation", Some(Duration::from_secs(300)), Box::new(c6_amalgamation)),
        ("7 walker soundness", Some(Duration::from_secs(120)), Box::new(|| c7_walker(fano()))),
        ("8 dense quasiline-free subsets", Some(Duration::from_secs(120)), Box::new(|| c8_density(fano()))),
        ("9 integer transfer", Some(Duration::from_secs(120)), Box::new(c9_transfer)),
        ("10 chromatic oracles", Some(Duration::from_secs(30)), Box::new(c10_chromatic)),
        ("11 determinism", None, Box::new(c11_determinism)),
    ];
    let mut failed = 0;
    for (name, limit, check) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if start.elapsed() > *l => Err(format!("took {secs:.2}s, limit {}s", l.as_secs())),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({secs:.2}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
