//! Brute-force and backtracking reference implementations. These share no
//! search code with the fast paths they certify.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::budget::{Budget, Verdict};
use crate::error::{Error, Result};
use crate::hjcube::Point;
use crate::hypergraph::{k_subsets, Hypergraph, VertexLabel, WeightFamily};
use crate::linesys::{LineSystem, TripleVerdict};

pub const DEFAULT_SIZE_GUARD: usize = 40;

/// Exact maximum-weight independent set by branch and bound. Returns the
/// set (ascending) and its weight.
pub fn max_weight_independent_set(h: &Hypergraph, w: &WeightFamily, guard: usize) -> Result<(Vec<usize>, BigRational)> {
    let n = h.num_vertices();
    if n > guard {
        return Err(Error::SizeGuard(format!("{n} vertices exceed the guard of {guard}")));
    }
    if w.len() != n {
        return Err(Error::InvalidParameter(format!("{} weights for {n} vertices", w.len())));
    }
    let denom = w.as_slice().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = w.as_slice().iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scaled[b].cmp(&scaled[a]).then(a.cmp(&b)));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bb = Mwis {
        h,
        order,
        pos,
        w: scaled,
        chosen: vec![false; n],
        best: BigInt::from(-1),
        best_set: Vec::new(),
    };
    bb.search(0, BigInt::zero());
    let mut set = bb.best_set;
    set.sort_unstable();
    if !is_independent_scan(h, &set) {
        return Err(Error::Internal("branch and bound produced a dependent set".into()));
    }
    let weight = w.weight_of(&set);
    Ok((set, weight))
}

fn is_independent_scan(h: &Hypergraph, set: &[usize]) -> bool {
    let s: HashSet<usize> = set.iter().copied().collect();
    !h.edges().iter().any(|e| e.iter().all(|v| s.contains(v)))
}

struct Mwis<'a> {
    h: &'a Hypergraph,
    order: Vec<usize>,
    pos: Vec<usize>,
    w: Vec<BigInt>,
    chosen: Vec<bool>,
    best: BigInt,
    best_set: Vec<usize>,
}

impl Mwis<'_> {
    /// Current weight plus all undecided weight, less a greedy packing of
    /// edges that would otherwise be completed: each such edge, with
    /// undecided parts pairwise disjoint, loses at least its lightest
    /// undecided vertex.
    fn bound(&self, i: usize, current: &BigInt) -> BigInt {
        let mut b = current.clone();
        for &v in &self.order[i..] {
            b += &self.w[v];
        }
        let mut used = vec![false; self.w.len()];
        for e in self.h.edges() {
            let mut lightest: Option<&BigInt> = None;
            let mut ok = true;
            for &v in e {
                if self.pos[v] >= i {
                    if used[v] {
                        ok = false;
                        break;
                    }
                    lightest = Some(match lightest {
                        Some(l) if l <= &self.w[v] => l,
                        _ => &self.w[v],
                    });
                } else if !self.chosen[v] {
                    ok = false;
                    break;
                }
            }
            if let (true, Some(l)) = (ok, lightest) {
                b -= l;
                for &v in e {
                    if self.pos[v] >= i {
                        used[v] = true;
                    }
                }
            }
        }
        b
    }

    fn completes_edge(&self, v: usize) -> bool {
        self.h.edges_at(v).iter().any(|&e| self.h.edges()[e].iter().all(|&u| u == v || self.chosen[u]))
    }

    fn search(&mut self, i: usize, current: BigInt) {
        if i == self.order.len() {
            if current > self.best {
                self.best = current;
                self.best_set = (0..self.chosen.len()).filter(|&v| self.chosen[v]).collect();
            }
            return;
        }
        if self.bound(i, &current) <= self.best {
            return;
        }
        let v = self.order[i];
        if !self.completes_edge(v) {
            self.chosen[v] = true;
            let next = &current + &self.w[v];
            self.search(i + 1, next);
            self.chosen[v] = false;
        }
        self.search(i + 1, current);
    }
}

/// No edge is monochromatic under `colours`.
pub fn is_proper_colouring(h: &Hypergraph, colours: &[u32]) -> bool {
    colours.len() == h.num_vertices()
        && h.edges().iter().all(|e| e.iter().any(|&v| colours[v] != colours[e[0]]))
}

/// `Proven`: no `r`-colouring without a monochromatic edge exists
/// (`chi(H) > r`). `Refuted` carries a proper colouring with colours `0..r`.
pub fn proper_coloring_search(h: &Hypergraph, r: usize, budget: &mut Budget) -> Verdict<Vec<u32>> {
    let n = h.num_vertices();
    if r == 0 {
        return if n == 0 { Verdict::Refuted(Vec::new()) } else { Verdict::Proven };
    }
    let mut colours = vec![u32::MAX; n];
    match colour_rec(h, r as u32, 0, 0, &mut colours, budget) {
        Some(true) => {
            if !is_proper_colouring(h, &colours) {
                panic!("colouring search returned an improper colouring");
            }
            Verdict::Refuted(colours)
        }
        Some(false) => Verdict::Proven,
        None => Verdict::Unknown { spent: budget.spent() },
    }
}

fn colour_rec(h: &Hypergraph, r: u32, v: usize, used: u32, colours: &mut [u32], budget: &mut Budget) -> Option<bool> {
    if v == colours.len() {
        return Some(true);
    }
    for c in 0..(used + 1).min(r) {
        if !budget.tick() {
            return None;
        }
        colours[v] = c;
        let clash = h.edges_at(v).iter().any(|&e| {
            let e = &h.edges()[e];
            e.iter().all(|&u| u <= v && colours[u] == c)
        });
        if !clash {
            match colour_rec(h, r, v + 1, used.max(c + 1), colours, budget) {
                Some(false) => {}
                other => return other,
            }
        }
    }
    colours[v] = u32::MAX;
    Some(false)
}

/// Largest subset (indices into `y`, ascending) containing no forbidden
/// `k`-subset.
pub fn max_pattern_free_subset<T, F>(y: &[T], k: usize, forbidden: F, guard: usize) -> Result<Vec<usize>>
where
    F: Fn(&[&T]) -> bool,
{
    if y.len() > guard {
        return Err(Error::SizeGuard(format!("{} elements exceed the guard of {guard}", y.len())));
    }
    if y.len() < k || k < 2 {
        return Ok((0..y.len()).collect());
    }
    let edges: Vec<Vec<usize>> = k_subsets(y.len(), k)
        .into_iter()
        .filter(|s| {
            let items: Vec<&T> = s.iter().map(|&i| &y[i]).collect();
            forbidden(&items)
        })
        .collect();
    let labels = (0..y.len() as i64).map(VertexLabel::Int).collect();
    let h = Hypergraph::new(k, labels, edges)?;
    let (z, _) = max_weight_independent_set(&h, &WeightFamily::uniform(y.len()), guard)?;
    Ok(z)
}

/// Coordinates where the points are not all equal, or `None` if some such
/// coordinate repeats a value.
fn quasiline_moving(points: &[&Point], k: usize) -> Option<Vec<usize>> {
    let n = points[0].dim();
    let mut moving = Vec::new();
    for c in 0..n {
        let vals: BTreeSet<u16> = points.iter().map(|p| p.entries()[c]).collect();
        if vals.len() == k {
            moving.push(c);
        } else if vals.len() != 1 {
            return None;
        }
    }
    Some(moving)
}

/// Every `k`-subset of `points` that is a quasiline, each sorted, in
/// lexicographic order of index subsets of the sorted input.
pub fn brute_quasilines(points: &[Point], k: usize, max_subsets: u128) -> Result<Vec<Vec<Point>>> {
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort();
    sorted.dedup();
    let count = crate::hjcube::binomial(sorted.len() as u64, k as u64).unwrap_or(u128::MAX);
    if count > max_subsets {
        return Err(Error::SizeGuard(format!("{count} subsets of size {k}")));
    }
    let mut out = Vec::new();
    for s in k_subsets(sorted.len(), k) {
        let pts: Vec<&Point> = s.iter().map(|&i| &sorted[i]).collect();
        if quasiline_moving(&pts, k).is_some() {
            out.push(pts.into_iter().cloned().collect());
        }
    }
    out.sort();
    Ok(out)
}

/// A quasiline given as a `k`-set is a combinatorial line: all moving
/// coordinates agree on every point.
pub fn brute_is_line(points: &[Point], k: usize) -> bool {
    let refs: Vec<&Point> = points.iter().collect();
    match quasiline_moving(&refs, k) {
        Some(m) if !m.is_empty() => points.iter().all(|p| m.iter().all(|&c| p.entries()[c] == p.entries()[m[0]])),
        _ => false,
    }
}

/// First 4-vertex set spanning at least three edges, scanning all 4-subsets.
pub fn brute_k4minus(h: &Hypergraph) -> Option<[usize; 4]> {
    if h.k() != 3 {
        return None;
    }
    for s in k_subsets(h.num_vertices(), 4) {
        let spanned = (0..4)
            .filter(|&skip| {
                let tri: Vec<usize> = (0..4).filter(|&j| j != skip).map(|j| s[j]).collect();
                h.has_edge(&tri)
            })
            .count();
        if spanned >= 3 {
            return Some([s[0], s[1], s[2], s[3]]);
        }
    }
    None
}

/// Triangle or tripod status of three lines from their point sets alone.
pub fn brute_triple(a: &[Point], b: &[Point], c: &[Point], k: usize) -> TripleVerdict {
    let sa: BTreeSet<&Point> = a.iter().collect();
    let sb: BTreeSet<&Point> = b.iter().collect();
    let sc: BTreeSet<&Point> = c.iter().collect();
    let ab = sa.intersection(&sb).count();
    let ac = sa.intersection(&sc).count();
    let bc = sb.intersection(&sc).count();
    if ab == 0 || ac == 0 || bc == 0 {
        return TripleVerdict::Neither;
    }
    let common = sa.iter().any(|p| sb.contains(p) && sc.contains(p));
    if !common {
        return TripleVerdict::Triangle;
    }
    let moving = |pts: &[Point]| -> BTreeSet<usize> {
        let refs: Vec<&Point> = pts.iter().collect();
        quasiline_moving(&refs, k).unwrap_or_default().into_iter().collect()
    };
    let m = [moving(a), moving(b), moving(c)];
    for x in 0..3 {
        let (y, z) = ((x + 1) % 3, (x + 2) % 3);
        let union: BTreeSet<usize> = m[y].union(&m[z]).copied().collect();
        if m[y].is_disjoint(&m[z]) && union == m[x] {
            return TripleVerdict::Tripod;
        }
    }
    TripleVerdict::Neither
}

/// Cubic scan: point degrees at most `d` and no triangle or tripod among
/// any three lines.
pub fn brute_suitable(sys: &LineSystem, d: usize) -> bool {
    let pts: Vec<Vec<Point>> = sys.lines().iter().map(|l| l.points()).collect();
    let mut degree = std::collections::BTreeMap::new();
    for l in &pts {
        for p in l {
            *degree.entry(p).or_insert(0usize) += 1;
        }
    }
    if degree.values().any(|&c| c > d) {
        return false;
    }
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if brute_triple(&pts[a], &pts[b], &pts[c], sys.k()) != TripleVerdict::Neither {
                    return false;
                }
            }
        }
    }
    true
}

fn sq_dist(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Every ordered `k`-tuple of distinct points of `z` (as indices) whose
/// squared distances are a common positive rational multiple of those of
/// `f`, with that multiple.
pub fn brute_congruent_tuples(z: &[Vec<BigInt>], f: &[Vec<BigInt>]) -> Vec<(Vec<usize>, BigRational)> {
    let k = f.len();
    let mut out = Vec::new();
    if k < 2 || z.len() < k {
        return out;
    }
    let dz: Vec<Vec<BigInt>> = z.iter().map(|a| z.iter().map(|b| sq_dist(a, b)).collect()).collect();
    let df: Vec<Vec<BigInt>> = f.iter().map(|a| f.iter().map(|b| sq_dist(a, b)).collect()).collect();
    // Proportional to df with factor dz[t0][t1] / df[0][1], compared crosswise.
    let similar = |t: &[usize]| -> Option<BigRational> {
        let (num, den) = (&dz[t[0]][t[1]], &df[0][1]);
        for i in 0..k {
            for j in i + 1..k {
                if &dz[t[i]][t[j]] * den != num * &df[i][j] {
                    return None;
                }
            }
        }
        (!den.is_zero() && num.is_positive()).then(|| BigRational::new(num.clone(), den.clone()))
    };
    fn rec(n: usize, k: usize, tuple: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if tuple.len() == k {
            visit(tuple);
            return;
        }
        for v in 0..n {
            if !tuple.contains(&v) {
                tuple.push(v);
                rec(n, k, tuple, visit);
                tuple.pop();
            }
        }
    }
    let mut tuple = Vec::with_capacity(k);
    rec(z.len(), k, &mut tuple, &mut |t| {
        if let Some(r) = similar(t) {
            out.push((t.to_vec(), r));
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn mwis_examples() {
        let edgeless = Hypergraph::new(3, (1..=4).map(VertexLabel::Int).collect(), vec![]).unwrap();
        let (z, _) = max_weight_independent_set(&edgeless, &WeightFamily::uniform(4), 30).unwrap();
        assert_eq!(z, vec![0, 1, 2, 3]);
        let k4 = Hypergraph::complete(3, 4).unwrap();
        let w = WeightFamily::uniform(4).normalized().unwrap();
        assert_eq!(max_weight_independent_set(&k4, &w, 30).unwrap().1, r(1, 2));
        let fano = Hypergraph::fano();
        let w = WeightFamily::uniform(7).normalized().unwrap();
        let (z, wt) = max_weight_independent_set(&fano, &w, 30).unwrap();
        assert_eq!(wt, r(4, 7));
        assert!(fano.is_independent(&z));
        assert!(max_weight_independent_set(&fano, &w, 5).is_err());
    }

    #[test]
    fn colouring_examples() {
        let one = Hypergraph::from_int_edges(3, 3, &[vec![1, 2, 3]]).unwrap();
        assert!(proper_coloring_search(&one, 2, &mut Budget::unlimited()).is_refuted());
        assert!(proper_coloring_search(&Hypergraph::fano(), 2, &mut Budget::unlimited()).is_proven());
        let v = proper_coloring_search(&Hypergraph::fano(), 3, &mut Budget::unlimited());
        assert!(is_proper_colouring(&Hypergraph::fano(), v.witness().unwrap()));
        let k4 = Hypergraph::complete(3, 4).unwrap();
        assert!(proper_coloring_search(&k4, 4, &mut Budget::unlimited()).is_refuted());
    }

    #[test]
    fn pattern_free() {
        let ap3 = |s: &[&i64]| {
            let mut v: Vec<i64> = s.iter().map(|x| **x).collect();
            v.sort();
            v[1] - v[0] == v[2] - v[1]
        };
        let y: Vec<i64> = (1..=5).collect();
        assert_eq!(max_pattern_free_subset(&y, 3, ap3, 30).unwrap().len(), 4);
        assert_eq!(max_pattern_free_subset(&[1i64, 2], 3, ap3, 30).unwrap().len(), 2);
        assert_eq!(max_pattern_free_subset(&[3i64, 5, 7], 3, ap3, 30).unwrap().len(), 2);
    }

    #[test]
    fn quasiline_scan() {
        let pts: Vec<Point> = ["111", "121", "131"].iter().map(|s| Point::parse(s).unwrap()).collect();
        assert_eq!(brute_quasilines(&pts, 3, 1000).unwrap().len(), 1);
        assert!(brute_is_line(&pts, 3));
        let q: Vec<Point> = ["113", "122", "131"].iter().map(|s| Point::parse(s).unwrap()).collect();
        assert!(!brute_is_line(&q, 3));
    }

    #[test]
    fn k4minus_scan() {
        assert!(brute_k4minus(&Hypergraph::complete(3, 4).unwrap()).is_some());
        assert!(brute_k4minus(&Hypergraph::fano()).is_none());
    }

    #[test]
    fn congruent_scan() {
        let v = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
        let f = vec![v(0, 0), v(0, 1), v(1, 0), v(1, 1)];
        let z = vec![v(1, 0), v(-1, 0), v(0, 1), v(0, -1)];
        let hits = brute_congruent_tuples(&z, &f);
        assert!(!hits.is_empty());
        assert!(hits.iter().all(|(_, l)| *l == r(2, 1)));
        assert!(brute_congruent_tuples(&f, &f).iter().any(|(t, l)| t == &vec![0, 1, 2, 3] && *l == r(1, 1)));
    }
}
