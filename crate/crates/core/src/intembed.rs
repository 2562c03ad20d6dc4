//! Transfer from cubes to lattices: the map `a -> sum_i T^(2^i) f_{a(i)}`,
//! exact detection of homothetic and scaled-congruent copies of a
//! configuration, a posteriori validation of `T`, and spaced translates.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Verdict};
use crate::error::{Error, Result};
use crate::hjcube::{classify_kset, Point};

/// Largest cube dimension accepted by the embedding; `T^(2^n)` grows
/// doubly exponentially.
pub const MAX_EMBED_DIM: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct LatticePoint(pub Vec<BigInt>);

impl LatticePoint {
    pub fn from_i64s(c: &[i64]) -> Self {
        LatticePoint(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn zero(d: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); d])
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &BigInt) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| a * s).collect())
    }

    pub fn sq_norm(&self) -> BigInt {
        self.0.iter().map(|a| a * a).sum()
    }

    pub fn sq_dist(&self, other: &LatticePoint) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b) * (a - b)).sum()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(BigInt::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<LatticePoint> for Vec<String> {
    fn from(p: LatticePoint) -> Self {
        p.0.iter().map(BigInt::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for LatticePoint {
    type Error = String;

    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("bad coordinate {s:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(LatticePoint)
    }
}

/// Distinct integer points `f_1, ..., f_k` of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    points: Vec<LatticePoint>,
}

impl Configuration {
    pub fn new(points: Vec<LatticePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter("a configuration needs at least two points".into()));
        }
        let d = points[0].dim();
        if d == 0 {
            return Err(Error::InvalidParameter("configuration points need dimension >= 1".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
        }
        let distinct: BTreeSet<&LatticePoint> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidParameter("configuration points must be distinct".into()));
        }
        Ok(Configuration { points })
    }

    /// `[k] = {1, ..., k}` on the integer line.
    pub fn interval(k: usize) -> Self {
        Configuration { points: (1..=k as i64).map(|i| LatticePoint::from_i64s(&[i])).collect() }
    }

    /// Parses `"1,2,3"` (one-dimensional) or `"0 0;0 1;1 0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let rows: Vec<Vec<i64>> = if text.contains(';') {
            text.split(';')
                .map(|row| row.split_whitespace().map(|x| x.parse::<i64>()).collect::<std::result::Result<_, _>>())
                .collect::<std::result::Result<_, _>>()
        } else {
            text.split(',').map(|x| x.trim().parse::<i64>().map(|v| vec![v])).collect::<std::result::Result<_, _>>()
        }
        .map_err(|e| Error::InvalidParameter(format!("bad configuration {text:?}: {e}")))?;
        Configuration::new(rows.iter().map(|r| LatticePoint::from_i64s(r)).collect())
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn d(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// `ceil(max |f_i|)`.
    pub fn s(&self) -> BigInt {
        let m = self.points.iter().map(LatticePoint::sq_norm).max().unwrap_or_default();
        ceil_sqrt(&m)
    }

    pub fn sq_dist(&self, i: usize, j: usize) -> BigInt {
        self.points[i].sq_dist(&self.points[j])
    }

    /// One-dimensional and equally spaced: copies are exactly the
    /// arithmetic progressions of length `k`.
    pub fn is_progression(&self) -> bool {
        if self.d() != 1 {
            return false;
        }
        let mut v: Vec<&BigInt> = self.points.iter().map(|p| &p.0[0]).collect();
        v.sort();
        let step = v[1] - v[0];
        v.windows(2).all(|w| w[1] - w[0] == step)
    }

    fn sq_diameter(&self) -> BigInt {
        let mut best = BigInt::zero();
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                best = best.max(self.sq_dist(i, j));
            }
        }
        best
    }

    fn sq_min_gap(&self) -> BigInt {
        let mut best: Option<BigInt> = None;
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                let d = self.sq_dist(i, j);
                best = Some(best.map_or(d.clone(), |b| b.min(d)));
            }
        }
        best.unwrap_or_default()
    }
}

fn ceil_sqrt(x: &BigInt) -> BigInt {
    let r = x.sqrt();
    if &r * &r == *x {
        r
    } else {
        r + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbedStatus {
    Unvalidated,
    InjectivityChecked,
    PullbackChecked,
    /// The doubling cap was reached without validation.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedParams {
    pub t: BigInt,
    pub n: usize,
    pub status: EmbedStatus,
}

impl EmbedParams {
    pub fn new(t: BigInt, n: usize) -> Result<Self> {
        if t < BigInt::one() {
            return Err(Error::InvalidParameter(format!("T = {t} must be positive")));
        }
        if n > MAX_EMBED_DIM {
            return Err(Error::SizeGuard(format!("cube dimension {n} exceeds {MAX_EMBED_DIM}")));
        }
        Ok(EmbedParams { t, n, status: EmbedStatus::Unvalidated })
    }

    /// `T^(2^i)` for `i = 1..=n`.
    pub fn weights(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.n);
        let mut cur = &self.t * &self.t;
        for i in 0..self.n {
            if i + 1 < self.n {
                let next = &cur * &cur;
                out.push(std::mem::replace(&mut cur, next));
            } else {
                out.push(cur.clone());
            }
        }
        out
    }
}

fn check_points(x: &[Point], f: &Configuration, n: usize) -> Result<()> {
    for p in x {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.dim() });
        }
        if !p.in_cube(f.k()) {
            return Err(Error::AlphabetMismatch(format!("{p} is not a point of [{}]^{n}", f.k())));
        }
    }
    Ok(())
}

fn phi_with(weights: &[BigInt], f: &Configuration, a: &Point) -> LatticePoint {
    let mut acc = LatticePoint::zero(f.d());
    for (w, &s) in weights.iter().zip(a.entries()) {
        for (c, fc) in acc.0.iter_mut().zip(&f.points[s as usize].0) {
            *c += w * fc;
        }
    }
    acc
}

/// The image of one point.
pub fn phi(a: &Point, f: &Configuration, params: &EmbedParams) -> Result<LatticePoint> {
    check_points(std::slice::from_ref(a), f, params.n)?;
    Ok(phi_with(&params.weights(), f, a))
}

/// Images of `x` in input order; fails on the first collision. Marks the
/// parameters as injectivity-checked.
pub fn phi_embed(x: &[Point], f: &Configuration, params: &mut EmbedParams) -> Result<Vec<LatticePoint>> {
    check_points(x, f, params.n)?;
    let weights = params.weights();
    let images: Vec<LatticePoint> = x.iter().map(|a| phi_with(&weights, f, a)).collect();
    let mut seen: HashMap<&LatticePoint, usize> = HashMap::with_capacity(images.len());
    for (i, img) in images.iter().enumerate() {
        if let Some(&j) = seen.get(img) {
            if x[i] != x[j] {
                return Err(Error::Collision(x[j].to_string(), x[i].to_string()));
            }
        }
        seen.insert(img, i);
    }
    if params.status == EmbedStatus::Unvalidated {
        params.status = EmbedStatus::InjectivityChecked;
    }
    Ok(images)
}

/// All `(v, lambda)` with `lambda > 0` integral and `v + lambda F ⊆ y`,
/// sorted.
pub fn homothetic_copies(y: &[LatticePoint], f: &Configuration) -> Vec<(LatticePoint, BigInt)> {
    let set: BTreeSet<&LatticePoint> = y.iter().collect();
    let diff = f.points[1].sub(&f.points[0]);
    let Some(axis) = diff.0.iter().position(|c| !c.is_zero()) else { return Vec::new() };
    let mut out = BTreeSet::new();
    for y0 in &set {
        for y1 in &set {
            if y0 == y1 {
                continue;
            }
            let delta = y1.sub(y0);
            if !(&delta.0[axis] % &diff.0[axis]).is_zero() {
                continue;
            }
            let lambda = &delta.0[axis] / &diff.0[axis];
            if !lambda.is_positive() || diff.scale(&lambda) != delta {
                continue;
            }
            let v = y0.sub(&f.points[0].scale(&lambda));
            if f.points.iter().all(|fi| set.contains(&v.add(&fi.scale(&lambda)))) {
                out.insert((v, lambda));
            }
        }
    }
    out.into_iter().collect()
}

/// Every arithmetic progression of length `k` in `values` (ascending
/// index tuples by value, so each set appears once).
pub fn arithmetic_progressions(values: &[BigInt], k: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let index: BTreeMap<&BigInt, usize> = values.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = Vec::new();
    for (x, &a) in order.iter().enumerate() {
        for &b in &order[x + 1..] {
            let step = &values[b] - &values[a];
            if step.is_zero() {
                continue;
            }
            let mut ap = vec![a, b];
            let mut next = &values[b] + &step;
            while ap.len() < k {
                match index.get(&next) {
                    Some(&c) => ap.push(c),
                    None => break,
                }
                next += &step;
            }
            if ap.len() == k {
                out.push(ap);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruentCopies {
    /// Ordered tuples `(z_1..z_k)` (indices into the input) with the common
    /// ratio `lambda^2`.
    pub copies: Vec<(Vec<usize>, BigRational)>,
    /// False when the budget ran out; `copies` is then partial.
    pub complete: bool,
}

/// All ordered `k`-tuples of distinct points of `z` whose pairwise squared
/// distances are `lambda^2` times those of `f`, for one rational
/// `lambda^2 > 0`. Sorted.
pub fn scaled_congruent_copies(z: &[LatticePoint], f: &Configuration, budget: &mut Budget) -> CongruentCopies {
    let k = f.k();
    let mut copies = Vec::new();
    if z.len() < k {
        return CongruentCopies { copies, complete: true };
    }
    // Per point: squared distance -> other points at that distance.
    let buckets: Vec<HashMap<BigInt, Vec<usize>>> = (0..z.len())
        .map(|a| {
            let mut m: HashMap<BigInt, Vec<usize>> = HashMap::new();
            for b in 0..z.len() {
                if a != b {
                    m.entry(z[a].sq_dist(&z[b])).or_default().push(b);
                }
            }
            m
        })
        .collect();
    let fd: Vec<Vec<BigInt>> = (0..k).map(|i| (0..k).map(|j| f.sq_dist(i, j)).collect()).collect();
    let base = &fd[0][1];
    let mut tuple = Vec::with_capacity(k);
    for a in 0..z.len() {
        let mut dists: Vec<(&BigInt, &Vec<usize>)> = buckets[a].iter().collect();
        // Rarest squared distance first.
        dists.sort_by(|x, y| x.1.len().cmp(&y.1.len()).then(x.0.cmp(y.0)));
        for (dab, bs) in dists {
            // Required squared distances fd[i][j] * dab / base, or None when not integral.
            let need: Vec<Vec<Option<BigInt>>> = fd
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|d| {
                            let (q, r) = (dab * d).div_rem(base);
                            r.is_zero().then_some(q)
                        })
                        .collect()
                })
                .collect();
            for &b in bs {
                if !budget.tick() {
                    copies.sort();
                    return CongruentCopies { copies, complete: false };
                }
                tuple.clear();
                tuple.push(a);
                tuple.push(b);
                if !extend_tuple(z, &buckets, &need, (dab, base), &mut tuple, &mut copies, budget) {
                    copies.sort();
                    return CongruentCopies { copies, complete: false };
                }
            }
        }
    }
    copies.sort();
    CongruentCopies { copies, complete: true }
}

fn extend_tuple(
    z: &[LatticePoint],
    buckets: &[HashMap<BigInt, Vec<usize>>],
    need: &[Vec<Option<BigInt>>],
    ratio: (&BigInt, &BigInt),
    tuple: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, BigRational)>,
    budget: &mut Budget,
) -> bool {
    let i = tuple.len();
    if i == need.len() {
        out.push((tuple.clone(), BigRational::new(ratio.0.clone(), ratio.1.clone())));
        return true;
    }
    let Some(d0) = &need[i][0] else { return true };
    let Some(cands) = buckets[tuple[0]].get(d0) else { return true };
    for &c in cands {
        if !budget.tick() {
            return false;
        }
        if tuple.contains(&c) {
            continue;
        }
        let fits = (1..i).all(|j| need[i][j].as_ref().is_some_and(|d| buckets[c].get(d).is_some_and(|v| v.contains(&tuple[j]))));
        if fits {
            tuple.push(c);
            let ok = extend_tuple(z, buckets, need, ratio, tuple, out, budget);
            tuple.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Index sets (ascending) of the copies of `f` inside `images`.
fn copy_sets(images: &[LatticePoint], f: &Configuration, budget: &mut Budget) -> (BTreeSet<Vec<usize>>, bool) {
    if f.is_progression() {
        let values: Vec<BigInt> = images.iter().map(|p| p.0[0].clone()).collect();
        let sets = arithmetic_progressions(&values, f.k())
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        return (sets, true);
    }
    let found = scaled_congruent_copies(images, f, budget);
    let sets = found
        .copies
        .into_iter()
        .map(|(mut t, _)| {
            t.sort_unstable();
            t
        })
        .collect();
    (sets, found.complete)
}

/// Preimages (sorted point lists) of every copy of `f` in the image of `x`.
pub fn copy_preimages(x: &[Point], f: &Configuration, params: &mut EmbedParams, budget: &mut Budget) -> Result<(Vec<Vec<Point>>, bool)> {
    let images = phi_embed(x, f, params)?;
    let (sets, complete) = copy_sets(&images, f, budget);
    let mut out: Vec<Vec<Point>> = sets
        .into_iter()
        .map(|s| {
            let mut pts: Vec<Point> = s.into_iter().map(|i| x[i].clone()).collect();
            pts.sort();
            pts
        })
        .collect();
    out.sort();
    out.dedup();
    Ok((out, complete))
}

/// `Proven` iff every copy of `f` in the image of `x` has a quasiline as
/// preimage. `Refuted` carries the first other preimage.
pub fn pullback_verify(x: &[Point], f: &Configuration, params: &mut EmbedParams, budget: &mut Budget) -> Result<Verdict<Vec<Point>>> {
    let (pre, complete) = copy_preimages(x, f, params, budget)?;
    for set in pre {
        if !classify_kset(&set, f.k())?.is_quasiline() {
            return Ok(Verdict::Refuted(set));
        }
    }
    if !complete {
        return Ok(Verdict::Unknown { spent: budget.spent() });
    }
    params.status = EmbedStatus::PullbackChecked;
    Ok(Verdict::Proven)
}

/// Doubling search for a base `T` that makes the embedding injective on
/// `x` and passes [`pullback_verify`]. Starts at `2(k s n + 1)` unless
/// `start` is given.
pub fn choose_t(x: &[Point], f: &Configuration, start: Option<BigInt>, max_doublings: u32, budget_nodes: u64) -> Result<EmbedParams> {
    let n = x.first().map_or(0, Point::dim);
    let mut t = match start {
        Some(t) => t,
        None => BigInt::from(2) * (BigInt::from(f.k()) * f.s() * BigInt::from(n) + 1),
    };
    for _ in 0..=max_doublings {
        let mut params = EmbedParams::new(t.clone(), n)?;
        match phi_embed(x, f, &mut params) {
            Ok(_) => {
                if pullback_verify(x, f, &mut params, &mut Budget::nodes(budget_nodes))?.is_proven() {
                    return Ok(params);
                }
            }
            Err(Error::Collision(..)) => {}
            Err(e) => return Err(e),
        }
        t *= 2;
    }
    let mut params = EmbedParams::new(t, n)?;
    params.status = EmbedStatus::Unknown;
    Ok(params)
}

#[derive(Clone, Debug)]
pub struct Translates {
    pub offsets: Vec<LatticePoint>,
    /// `Proven`: no copy of `f` in the union meets two translates.
    /// `Refuted` carries a crossing tuple of union indices.
    pub certificate: Verdict<Vec<usize>>,
    /// The union, part by part.
    pub union: Vec<(usize, LatticePoint)>,
}

fn sq_diameter(points: &[LatticePoint]) -> BigInt {
    let mut best = BigInt::zero();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max(a.sq_dist(b));
        }
    }
    best
}

/// Offsets `v_1 = 0, v_2, ...` along the first axis such that a copy of
/// `f` in the union of the translates `v_r + X_r` lies in one translate.
///
/// A copy meeting `v_r + X_r` and earlier translates has two points on
/// one side, so `lambda <= D / gmin(F)` with `D` the larger diameter; its
/// diameter `lambda diam(F)` must also span the gap. A gap above
/// `diam(F) D / gmin(F)` therefore excludes it.
pub fn separate_translates(parts: &[Vec<LatticePoint>], f: &Configuration, budget: &mut Budget) -> Result<Translates> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("no parts to place".into()));
    }
    let d = f.d();
    if let Some(p) = parts.iter().flatten().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
    }
    let ratio_num = ceil_sqrt(&f.sq_diameter());
    let ratio_den = f.sq_min_gap().sqrt().max(BigInt::one());
    let k = BigInt::from(f.k());
    let mut offsets = Vec::with_capacity(parts.len());
    let mut placed: Vec<LatticePoint> = Vec::new();
    let mut union = Vec::new();
    for (r, part) in parts.iter().enumerate() {
        let offset = if r == 0 || placed.is_empty() || part.is_empty() {
            LatticePoint::zero(d)
        } else {
            let diam_old = ceil_sqrt(&sq_diameter(&placed));
            let diam_new = ceil_sqrt(&sq_diameter(part));
            let general = &ratio_num * diam_old.clone().max(diam_new) / &ratio_den + BigInt::one();
            let gap = general.max(&k * &diam_old + BigInt::one());
            let max_old = placed.iter().map(|p| &p.0[0]).max().cloned().unwrap_or_default();
            let min_new = part.iter().map(|p| &p.0[0]).min().cloned().unwrap_or_default();
            let mut v = LatticePoint::zero(d);
            v.0[0] = max_old + gap - min_new;
            v
        };
        for p in part {
            let q = p.add(&offset);
            placed.push(q.clone());
            union.push((r, q));
        }
        offsets.push(offset);
    }
    let pts: Vec<LatticePoint> = union.iter().map(|(_, p)| p.clone()).collect();
    let found = scaled_congruent_copies(&pts, f, budget);
    let crossing = found.copies.iter().find(|(t, _)| t.iter().any(|&i| union[i].0 != union[t[0]].0));
    let certificate = match (crossing, found.complete) {
        (Some((t, _)), _) => Verdict::Refuted(t.clone()),
        (None, true) => Verdict::Proven,
        (None, false) => Verdict::Unknown { spent: budget.spent() },
    };
    Ok(Translates { offsets, certificate, union })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(words: &[&str]) -> Vec<Point> {
        words.iter().map(|w| Point::parse(w).unwrap()).collect()
    }

    fn ints(v: &[i64]) -> Vec<LatticePoint> {
        v.iter().map(|&x| LatticePoint::from_i64s(&[x])).collect()
    }

    #[test]
    fn phi_values() {
        let f = Configuration::interval(3);
        let p = EmbedParams::new(BigInt::from(10), 1).unwrap();
        assert_eq!(phi(&Point::parse("2").unwrap(), &f, &p).unwrap(), LatticePoint::from_i64s(&[200]));
        let mut p = EmbedParams::new(BigInt::from(10), 2).unwrap();
        let img = phi_embed(&pts(&["12", "22", "32"]), &f, &mut p).unwrap();
        assert_eq!(img, ints(&[20100, 20200, 20300]));
        assert_eq!(p.status, EmbedStatus::InjectivityChecked);
        assert_eq!(homothetic_copies(&img, &f), vec![(LatticePoint::from_i64s(&[20000]), BigInt::from(100))]);
    }

    #[test]
    fn collision_at_t_one() {
        let f = Configuration::interval(3);
        let mut p = EmbedParams::new(BigInt::one(), 2).unwrap();
        assert!(matches!(phi_embed(&pts(&["12", "21"]), &f, &mut p), Err(Error::Collision(..))));
    }

    #[test]
    fn homothety_examples() {
        let f = Configuration::interval(3);
        assert_eq!(homothetic_copies(&ints(&[5, 7, 9]), &f), vec![(LatticePoint::from_i64s(&[3]), BigInt::from(2))]);
        let square = Configuration::parse("0 0;0 1;1 0;1 1").unwrap();
        let tilted: Vec<LatticePoint> = [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|c| LatticePoint::from_i64s(c)).collect();
        assert!(homothetic_copies(&tilted, &square).is_empty());
        let found = scaled_congruent_copies(&tilted, &square, &mut Budget::unlimited());
        assert!(found.complete && !found.copies.is_empty());
        assert!(found.copies.iter().all(|(_, l)| *l == BigRational::from_integer(2.into())));
    }

    #[test]
    fn congruence_examples() {
        let f = Configuration::interval(3);
        let itself = scaled_congruent_copies(f.points(), &f, &mut Budget::unlimited());
        assert!(itself.copies.contains(&(vec![0, 1, 2], BigRational::one())));
        let skew = scaled_congruent_copies(&ints(&[0, 1, 4]), &f, &mut Budget::unlimited());
        assert!(skew.copies.is_empty());
    }

    #[test]
    fn progressions() {
        let v: Vec<BigInt> = [1, 2, 3, 4, 5].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(arithmetic_progressions(&v, 3).len(), 4);
    }

    #[test]
    fn pullback_and_choose() {
        let f = Configuration::interval(3);
        let line = pts(&["11", "22", "33"]);
        let mut p = choose_t(&line, &f, None, 10, 1_000_000).unwrap();
        assert_eq!(p.status, EmbedStatus::PullbackChecked);
        assert!(pullback_verify(&line, &f, &mut p, &mut Budget::unlimited()).unwrap().is_proven());

        let cube: Vec<Point> = crate::hjcube::cube_points(3, 2).collect();
        let mut two = EmbedParams::new(BigInt::from(2), 2).unwrap();
        assert!(pullback_verify(&cube, &f, &mut two, &mut Budget::unlimited()).unwrap().is_refuted());
        let chosen = choose_t(&cube, &f, Some(BigInt::from(2)), 10, 1_000_000).unwrap();
        assert!(chosen.t > BigInt::from(2));
        assert_eq!(chosen.status, EmbedStatus::PullbackChecked);
    }

    #[test]
    fn translates() {
        let f = Configuration::interval(3);
        let t = separate_translates(&[ints(&[1, 2, 3])], &f, &mut Budget::unlimited()).unwrap();
        assert_eq!(t.offsets, vec![LatticePoint::zero(1)]);
        let t = separate_translates(&[ints(&[1, 2, 3]), ints(&[1, 2, 3])], &f, &mut Budget::unlimited()).unwrap();
        assert!(t.certificate.is_proven());
        let t = separate_translates(&[ints(&[1, 2, 3]), ints(&[0, 1, 5, 9]), ints(&[2, 3, 4, 8, 20])], &f, &mut Budget::unlimited())
            .unwrap();
        assert!(t.certificate.is_proven());
    }

    #[test]
    fn lattice_json() {
        let p = LatticePoint(vec![BigInt::from(10).pow(40u32), BigInt::from(-3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[\"10000000000000000000000000000000000000000\",\"-3\"]");
        assert_eq!(serde_json::from_str::<LatticePoint>(&s).unwrap(), p);
    }
}
