//! The stagewise construction `Pi_0, ..., Pi_q` over a base hypergraph, the
//! backward-induction Ramsey walker, and dense quasiline-free subsets
//! obtained through the final projection.

use std::sync::Arc;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::{Budget, Verdict};
use crate::error::{Error, Result};
use crate::hjcube::{CombEmbedding, Line, Point};
use crate::hypergraph::{Hypergraph, WeightFamily};
use crate::linesys::{chromatic_exceeds, greedy_build, is_suitable, GreedyConfig, LineSystem};
use crate::oracles::{brute_k4minus, max_weight_independent_set, proper_coloring_search, DEFAULT_SIZE_GUARD};
use crate::picture::{amalgamate, music_alphabet, picture_zero, Picture};
use crate::shifthyp::{
    build_shift, certify_k43minus_free, check_mu, heavy_independent_search, window_density, HeavySearch, ShiftHypergraph,
    ShiftParams,
};

#[derive(Clone, Debug)]
pub enum GraphSpec {
    Fano,
    /// `Sh^(k)(n, ell)`; `ell` defaults to the window length for `mu`.
    Shift { n: usize, ell: Option<usize> },
    /// The smallest shift hypergraph with the window length for `mu`.
    Auto,
    Given(Hypergraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StagePolicy {
    /// Greedy suitable line system.
    Sparse { n: usize, d: usize, target: usize, max_rejections: usize },
    /// Every line of the music-line cube.
    Full { n: usize },
}

impl StagePolicy {
    pub fn n(&self) -> usize {
        match self {
            StagePolicy::Sparse { n, .. } | StagePolicy::Full { n } => *n,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            StagePolicy::Sparse { .. } => "sparse",
            StagePolicy::Full { .. } => "full",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub k: usize,
    pub r: usize,
    pub mu: BigRational,
    pub graph: GraphSpec,
    /// Stage `i` (1-based) amalgamates over vertex `i - 1`.
    pub stages: Vec<StagePolicy>,
    pub seed: u64,
    pub chromatic_budget: u64,
    pub picture_budget: u64,
    pub dim_cap: usize,
}

impl PipelineConfig {
    pub fn new(k: usize, r: usize, mu: BigRational, graph: GraphSpec, stages: Vec<StagePolicy>, seed: u64) -> Self {
        PipelineConfig {
            k,
            r,
            mu,
            graph,
            stages,
            seed,
            chromatic_budget: 1_000_000,
            picture_budget: 50_000_000,
            dim_cap: 4096,
        }
    }
}

/// How the base hypergraph's independence guarantee is backed.
#[derive(Clone, Debug)]
pub enum MuEvidence {
    /// Permutation windows; `|I|/ell >= mu`.
    Window(Box<ShiftHypergraph>),
    /// Exact maximum-weight independent sets, checked against `mu` per query.
    ExactOracle,
    Missing,
}

impl MuEvidence {
    pub fn label(&self) -> &'static str {
        match self {
            MuEvidence::Window(_) => "window",
            MuEvidence::ExactOracle => "exact-oracle",
            MuEvidence::Missing => "missing",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K4Evidence {
    NotRequired,
    Linear,
    Tournament,
    BruteForce,
    Missing,
}

impl K4Evidence {
    pub fn label(&self) -> &'static str {
        match self {
            K4Evidence::NotRequired => "not-required",
            K4Evidence::Linear => "linear",
            K4Evidence::Tournament => "tournament",
            K4Evidence::BruteForce => "brute-force",
            K4Evidence::Missing => "missing",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BaseCertificates {
    /// `Proven` means no proper `r`-colouring exists.
    pub chromatic: Verdict<Vec<u32>>,
    pub mu: MuEvidence,
    pub k4_free: K4Evidence,
}

#[derive(Clone, Debug)]
pub struct Stage {
    /// 1-based.
    pub index: usize,
    pub vertex: usize,
    pub policy: StagePolicy,
    /// `None` when the music line has fewer than two points and the stage
    /// leaves the picture unchanged.
    pub lines: Option<LineSystem>,
    pub suitable: Option<bool>,
    pub chromatic: Option<Verdict<std::collections::BTreeMap<Point, u32>>>,
    pub n: usize,
    pub m: usize,
    pub picture: Picture,
    pub picture_verdict: Verdict<Vec<Point>>,
    /// `eta^+_U` per line, in line order.
    pub copies: Vec<CombEmbedding>,
}

#[derive(Clone, Debug)]
pub struct ConstructionTrace {
    pub k: usize,
    pub r: usize,
    pub mu: BigRational,
    pub seed: u64,
    pub graph: Arc<Hypergraph>,
    pub base: BaseCertificates,
    pub picture0: Picture,
    pub picture0_verdict: Verdict<Vec<Point>>,
    pub edge_lines: Vec<Line>,
    pub stages: Vec<Stage>,
    /// Set when the dimension cap stopped the run early.
    pub truncated_at: Option<usize>,
}

impl ConstructionTrace {
    pub fn final_picture(&self) -> &Picture {
        self.stages.last().map_or(&self.picture0, |s| &s.picture)
    }

    pub fn final_verdict(&self) -> &Verdict<Vec<Point>> {
        self.stages.last().map_or(&self.picture0_verdict, |s| &s.picture_verdict)
    }

    pub fn dimensions(&self) -> Vec<usize> {
        std::iter::once(self.picture0.m()).chain(self.stages.iter().map(|s| s.m)).collect()
    }
}

/// Stage `i` draws from stream `i` of the master seed.
pub fn stage_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn resolve_graph(cfg: &PipelineConfig) -> Result<(Hypergraph, Option<ShiftHypergraph>)> {
    let shift = |n: usize, ell: usize| -> Result<(Hypergraph, Option<ShiftHypergraph>)> {
        let mut params = ShiftParams::new(cfg.k, ell, n)?;
        params.mu = Some(cfg.mu.clone());
        let s = build_shift(&params)?;
        Ok((s.graph.clone(), Some(s)))
    };
    match &cfg.graph {
        GraphSpec::Fano => Ok((Hypergraph::fano(), None)),
        GraphSpec::Given(h) => Ok((h.clone(), None)),
        GraphSpec::Shift { n, ell } => {
            let ell = match ell {
                Some(l) => *l,
                None => crate::shifthyp::ell_for(cfg.k, &cfg.mu)?,
            };
            shift(*n, ell)
        }
        GraphSpec::Auto => {
            let ell = crate::shifthyp::ell_for(cfg.k, &cfg.mu)?;
            shift(ell + cfg.k - 1, ell)
        }
    }
}

fn certify_base(cfg: &PipelineConfig, g: &Hypergraph, shift: Option<ShiftHypergraph>) -> Result<BaseCertificates> {
    let mut budget = Budget::nodes(cfg.chromatic_budget);
    let chromatic = if g.num_vertices() <= DEFAULT_SIZE_GUARD * 4 {
        proper_coloring_search(g, cfg.r, &mut budget)
    } else {
        Verdict::Unknown { spent: 0 }
    };
    let window_ok = shift.as_ref().is_some_and(|s| {
        window_density(s.params.k, s.params.ell).is_ok_and(|d| d >= cfg.mu)
    });
    let k4_free = if cfg.k != 3 {
        K4Evidence::NotRequired
    } else if g.is_linear() {
        K4Evidence::Linear
    } else if let Some(s) = &shift {
        certify_k43minus_free(s)?;
        K4Evidence::Tournament
    } else if g.num_vertices() <= 60 && brute_k4minus(g).is_none() {
        K4Evidence::BruteForce
    } else {
        K4Evidence::Missing
    };
    let mu = match shift {
        Some(s) if window_ok => MuEvidence::Window(Box::new(s)),
        _ if g.num_vertices() <= DEFAULT_SIZE_GUARD => MuEvidence::ExactOracle,
        _ => MuEvidence::Missing,
    };
    Ok(BaseCertificates { chromatic, mu, k4_free })
}

pub fn run_construction(cfg: &PipelineConfig) -> Result<ConstructionTrace> {
    if cfg.k < 3 {
        return Err(Error::InvalidParameter(format!("the construction needs k >= 3, got {}", cfg.k)));
    }
    if cfg.r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    check_mu(cfg.k, &cfg.mu)?;
    let (g, shift) = resolve_graph(cfg)?;
    if g.k() != cfg.k {
        return Err(Error::InvalidHypergraph(format!("base hypergraph is {}-uniform, expected {}", g.k(), cfg.k)));
    }
    if cfg.stages.len() > g.num_vertices() {
        return Err(Error::InvalidParameter(format!(
            "{} stages requested but the base hypergraph has {} vertices",
            cfg.stages.len(),
            g.num_vertices()
        )));
    }
    let base = certify_base(cfg, &g, shift)?;
    if base.k4_free == K4Evidence::Missing {
        return Err(Error::NotCertified("k = 3 needs a base hypergraph certified free of K4(3)-".into()));
    }
    let g = Arc::new(g);
    let (picture0, edge_lines) = picture_zero(g.clone(), cfg.k)?;
    let picture0_verdict = picture0.verify(&mut Budget::nodes(cfg.picture_budget))?;

    let mut stages: Vec<Stage> = Vec::new();
    let mut truncated_at = None;
    for (i, policy) in cfg.stages.iter().enumerate() {
        let index = i + 1;
        let vertex = i;
        let prev = stages.last().map_or(&picture0, |s| &s.picture);
        let alphabet = music_alphabet(prev, vertex)?;
        let n = policy.n();
        if n == 0 {
            return Err(Error::InvalidParameter(format!("stage {index} has dimension 0")));
        }
        if alphabet.size() < 2 {
            stages.push(Stage {
                index,
                vertex,
                policy: policy.clone(),
                lines: None,
                suitable: None,
                chromatic: None,
                n: 1,
                m: prev.m(),
                picture: prev.clone(),
                picture_verdict: stages.last().map_or(picture0_verdict.clone(), |s| s.picture_verdict.clone()),
                copies: Vec::new(),
            });
            continue;
        }
        let m = prev.m() * n;
        if m > cfg.dim_cap {
            truncated_at = Some(index);
            break;
        }
        let mut rng = stage_rng(cfg.seed, index as u64);
        let (lines, suitable) = match policy {
            StagePolicy::Sparse { d, target, max_rejections, .. } => {
                let mut gc = GreedyConfig::new(Some(*d), *target);
                gc.max_consecutive_rejections = *max_rejections;
                let out = greedy_build(&alphabet, n, &gc, &mut rng)?;
                let ok = is_suitable(&out.system, *d).is_ok();
                (out.system, ok)
            }
            StagePolicy::Full { .. } => {
                let sys = LineSystem::full(alphabet.clone(), n)?;
                let ok = is_suitable(&sys, usize::MAX).is_ok();
                (sys, ok)
            }
        };
        if lines.is_empty() {
            return Err(Error::Internal(format!("stage {index} produced no lines")));
        }
        let chromatic = chromatic_exceeds(&lines, cfg.r, &mut Budget::nodes(cfg.chromatic_budget))?;
        let am = amalgamate(prev, vertex, &lines)?;
        let picture_verdict = am.picture.verify(&mut Budget::nodes(cfg.picture_budget))?;
        debug_assert_eq!(am.picture.m(), m);
        stages.push(Stage {
            index,
            vertex,
            policy: policy.clone(),
            lines: Some(lines),
            suitable: Some(suitable),
            chromatic: Some(chromatic),
            n,
            m,
            picture: am.picture,
            picture_verdict,
            copies: am.copies,
        });
    }
    Ok(ConstructionTrace {
        k: cfg.k,
        r: cfg.r,
        mu: cfg.mu.clone(),
        seed: cfg.seed,
        graph: g,
        base,
        picture0,
        picture0_verdict,
        edge_lines,
        stages,
        truncated_at,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyWitness {
    /// Embedding of the base cube carrying every music line onto a
    /// monochromatic set of the final picture.
    pub embedding: CombEmbedding,
    pub line: Line,
    pub colour: u32,
    /// Edge index of the base hypergraph.
    pub edge: usize,
    /// Chosen line index per stage (`None` for unchanged stages), stage 1 first.
    pub chosen: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamseyOutcome {
    Witness(RamseyWitness),
    /// The search at this stage found no monochromatic line (0: no
    /// monochromatic edge at the base).
    StageFailure(usize),
}

/// Replay the backward induction for a colouring of the final picture.
pub fn ramsey_witness<C>(trace: &ConstructionTrace, colour: C) -> Result<RamseyOutcome>
where
    C: Fn(&Point) -> Option<u32>,
{
    let k = trace.k;
    let top = trace.final_picture();
    let colour_of = |p: &Point| -> Result<u32> {
        if top.psi_of(p).is_none() {
            return Err(Error::InvalidPoint(format!("{p} is not in the final picture")));
        }
        colour(p).ok_or_else(|| Error::PartialColouring(p.to_string()))
    };
    let mut acc = CombEmbedding::identity(k, top.m());
    let mut chosen = vec![None; trace.stages.len()];
    for stage in trace.stages.iter().rev() {
        let Some(lines) = &stage.lines else { continue };
        let alphabet = lines.alphabet();
        let mut found = None;
        'lines: for (u, line) in lines.lines().iter().enumerate() {
            let mut first = None;
            for w in line.points() {
                let p = acc.apply(&alphabet.flatten(&w)?)?;
                let c = colour_of(&p)?;
                if *first.get_or_insert(c) != c {
                    continue 'lines;
                }
            }
            found = Some(u);
            break;
        }
        let Some(u) = found else {
            return Ok(RamseyOutcome::StageFailure(stage.index));
        };
        chosen[stage.index - 1] = Some(u);
        acc = acc.compose(&stage.copies[u])?;
    }
    // Colour collapse: a vertex is coloured when the image of its music line
    // is monochromatic.
    let p0 = &trace.picture0;
    let mut rho: Vec<Option<Option<u32>>> = vec![None; trace.graph.num_vertices()];
    for (p, &v) in p0.points().iter().zip(p0.psi()) {
        let c = colour_of(&acc.apply(p)?)?;
        rho[v] = match rho[v] {
            None => Some(Some(c)),
            Some(Some(d)) if d == c => Some(Some(c)),
            _ => Some(None),
        };
    }
    for (e_idx, e) in trace.graph.edges().iter().enumerate() {
        let cs: Vec<Option<u32>> = e.iter().map(|&v| rho[v].flatten()).collect();
        if let Some(Some(c)) = cs.first().copied() {
            if cs.iter().all(|x| *x == Some(c)) {
                let line = trace.edge_lines[e_idx].map(&acc)?;
                return Ok(RamseyOutcome::Witness(RamseyWitness { embedding: acc, line, colour: c, edge: e_idx, chosen }));
            }
        }
    }
    Ok(RamseyOutcome::StageFailure(0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSubset {
    pub z: Vec<Point>,
    /// Independent vertex set of the base hypergraph.
    pub z_g: Vec<usize>,
    pub weight_y: BigRational,
    pub weight_z: BigRational,
}

/// A subset `Z` of `y` with `weight(Z) >= mu * weight(y)` containing no
/// quasiline: the part of `y` projecting into a heavy independent set of
/// the base hypergraph. `weights` is indexed like `y` (uniform if absent).
pub fn dense_free_subset(
    trace: &ConstructionTrace,
    y: &[Point],
    weights: Option<&WeightFamily>,
    max_tries: usize,
) -> Result<DenseSubset> {
    if !trace.final_verdict().is_proven() {
        return Err(Error::NotCertified("the final picture is not certified".into()));
    }
    if matches!(trace.base.mu, MuEvidence::Missing) {
        return Err(Error::NotCertified("no evidence for the independence guarantee of the base".into()));
    }
    let mut ys: Vec<Point> = y.to_vec();
    ys.sort();
    ys.dedup();
    if ys.len() != y.len() {
        return Err(Error::InvalidPoint("repeated point in Y".into()));
    }
    let w = match weights {
        Some(w) if w.len() == y.len() => w.clone(),
        Some(w) => return Err(Error::InvalidParameter(format!("{} weights for {} points", w.len(), y.len()))),
        None => WeightFamily::uniform(y.len()),
    };
    let top = trace.final_picture();
    let psi: Vec<usize> = y
        .iter()
        .map(|p| top.psi_of(p).ok_or_else(|| Error::InvalidPoint(format!("{p} is not in the final picture"))))
        .collect::<Result<_>>()?;
    let g = &trace.graph;
    let u = crate::shifthyp::push_forward(&psi, &w, g.num_vertices());
    let z_g = match &trace.base.mu {
        MuEvidence::Window(s) => {
            let mut rng = stage_rng(trace.seed, u64::MAX);
            match heavy_independent_search(s, &u, &mut rng, max_tries)? {
                HeavySearch::Found { set, .. } => set,
                HeavySearch::Unknown { tries } => {
                    return Err(Error::Internal(format!("no heavy window set after {tries} permutations")))
                }
            }
        }
        MuEvidence::ExactOracle => max_weight_independent_set(g, &u, DEFAULT_SIZE_GUARD)?.0,
        MuEvidence::Missing => unreachable!(),
    };
    if !g.is_independent(&z_g) {
        return Err(Error::Internal("base set is not independent".into()));
    }
    let weight_y = w.total();
    let target = &trace.mu * &weight_y;
    let inside = crate::shifthyp::pullback_independent(&psi, &z_g);
    let weight_z = w.weight_of(&inside);
    if weight_z < target {
        return Err(Error::NotCertified(format!(
            "the base hypergraph has no independent set of weight {target}; best found {weight_z}"
        )));
    }
    let z = inside.iter().map(|&i| y[i].clone()).collect();
    Ok(DenseSubset { z, z_g, weight_y, weight_z })
}
