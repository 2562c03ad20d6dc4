//! Shift hypergraphs `Sh^(k)(n, ell)`, the permutation-window independent
//! sets behind their fractional property, and the tournament orientation
//! showing `Sh^(3)(n, ell)` has no three edges on four vertices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexLabel, WeightFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftParams {
    pub k: usize,
    pub ell: usize,
    pub n: usize,
    pub mu: Option<BigRational>,
}

impl ShiftParams {
    pub fn new(k: usize, ell: usize, n: usize) -> Result<Self> {
        if k < 2 || ell < 1 || n < 1 {
            return Err(Error::InvalidParameter(format!("need k >= 2 and ell, n >= 1 (k={k}, ell={ell}, n={n})")));
        }
        Ok(ShiftParams { k, ell, n, mu: None })
    }

    /// Parameters with `ell` derived from `mu`.
    pub fn for_mu(k: usize, mu: BigRational, n: usize) -> Result<Self> {
        let ell = ell_for(k, &mu)?;
        let mut p = ShiftParams::new(k, ell, n)?;
        p.mu = Some(mu);
        Ok(p)
    }
}

/// `mu` must lie strictly between 0 and `(k-1)/k`.
pub fn check_mu(k: usize, mu: &BigRational) -> Result<()> {
    let bound = BigRational::new(BigInt::from(k - 1), BigInt::from(k));
    if *mu <= BigRational::zero() || *mu >= bound {
        return Err(Error::InvalidParameter(format!("mu = {mu} must lie in (0, {bound})")));
    }
    Ok(())
}

/// `ceil(2(k-1)^2 / ((k-1) - k*mu))`, exactly.
pub fn ell_for(k: usize, mu: &BigRational) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} < 2")));
    }
    check_mu(k, mu)?;
    let km1 = BigRational::from_integer(BigInt::from(k - 1));
    let num = BigRational::from_integer(BigInt::from(2 * (k - 1) * (k - 1)));
    let den = &km1 - BigRational::from_integer(BigInt::from(k)) * mu;
    let ell = (num / den).ceil().to_integer();
    usize::try_from(&ell).map_err(|_| Error::InvalidParameter(format!("window length {ell} too large")))
}

/// A built shift hypergraph; vertex `i` is the window `windows[i]`
/// (ascending, 1-based elements), vertices in lexicographic order.
#[derive(Clone, Debug)]
pub struct ShiftHypergraph {
    pub params: ShiftParams,
    pub graph: Hypergraph,
    pub windows: Vec<Vec<u32>>,
}

pub fn build_shift(params: &ShiftParams) -> Result<ShiftHypergraph> {
    let ShiftParams { k, ell, n, .. } = *params;
    if n < ell {
        return Err(Error::InvalidParameter(format!("n = {n} < ell = {ell}")));
    }
    let windows: Vec<Vec<u32>> = crate::hypergraph::k_subsets(n, ell)
        .into_iter()
        .map(|s| s.into_iter().map(|a| a as u32 + 1).collect())
        .collect();
    let index: HashMap<&[u32], usize> = windows.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for seq in crate::hypergraph::k_subsets(n, k + ell - 1) {
        let seq: Vec<u32> = seq.into_iter().map(|a| a as u32 + 1).collect();
        let edge: Vec<usize> = (0..k).map(|i| index[&seq[i..i + ell]]).collect();
        edges.push(edge);
    }
    let labels = windows.iter().map(|w| VertexLabel::Tuple(w.clone())).collect();
    let graph = Hypergraph::new(k, labels, edges)?;
    Ok(ShiftHypergraph { params: params.clone(), graph, windows })
}

/// `I = { i in [k, ell-k+1] : i != -1 mod k }` (1-based indices).
pub fn window_index_set(k: usize, ell: usize) -> Result<Vec<usize>> {
    if ell + 1 < 2 * k {
        return Err(Error::InvalidParameter(format!("ell = {ell} < 2k-1 = {}", 2 * k - 1)));
    }
    Ok((k..=ell + 1 - k).filter(|i| i % k != k - 1).collect())
}

/// 1-based position inside `window` of the element with the largest
/// `pi`-value; `pi[a - 1]` is the image of `a`.
pub fn nu(window: &[u32], pi: &[u32]) -> usize {
    let mut best = 0;
    for (j, &a) in window.iter().enumerate() {
        if pi[a as usize - 1] > pi[window[best] as usize - 1] {
            best = j;
        }
    }
    best + 1
}

fn check_permutation(pi: &[u32], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if pi.len() != n {
        return Err(Error::InvalidParameter(format!("permutation has length {}, expected {n}", pi.len())));
    }
    for &v in pi {
        if v == 0 || v as usize > n || seen[v as usize - 1] {
            return Err(Error::InvalidParameter("not a permutation of [n]".into()));
        }
        seen[v as usize - 1] = true;
    }
    Ok(())
}

/// Returns `(I, Y_pi)` where `Y_pi` lists the vertex indices whose window
/// peaks (under `pi`) at a position in `I`.
pub fn window_independent_set(shift: &ShiftHypergraph, pi: &[u32]) -> Result<(Vec<usize>, Vec<usize>)> {
    let ShiftParams { k, ell, n, .. } = shift.params;
    let index_set = window_index_set(k, ell)?;
    check_permutation(pi, n)?;
    Ok((index_set.clone(), window_set_unchecked(shift, &index_set, pi)))
}

fn window_set_unchecked(shift: &ShiftHypergraph, index_set: &[usize], pi: &[u32]) -> Vec<usize> {
    let mut in_i = vec![false; shift.params.ell + 1];
    for &i in index_set {
        in_i[i] = true;
    }
    shift
        .windows
        .iter()
        .enumerate()
        .filter(|(_, w)| in_i[nu(w, pi)])
        .map(|(x, _)| x)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeavySearch {
    /// An independent set carrying at least `mu` of the total weight,
    /// found at the given (0-based) trial.
    Found { set: Vec<usize>, weight: BigRational, trial: usize },
    Unknown { tries: usize },
}

/// Sample permutations until some `Y_pi` carries at least `mu` of the
/// total weight. Some permutation always works because the mean of
/// `weight(Y_pi)` is `|I|/ell >= mu`.
pub fn heavy_independent_search<R: Rng>(
    shift: &ShiftHypergraph,
    weights: &WeightFamily,
    rng: &mut R,
    max_tries: usize,
) -> Result<HeavySearch> {
    let mu = shift
        .params
        .mu
        .clone()
        .ok_or_else(|| Error::InvalidParameter("shift parameters carry no mu".into()))?;
    let ShiftParams { k, ell, n, .. } = shift.params;
    let index_set = window_index_set(k, ell)?;
    if weights.len() != shift.graph.num_vertices() {
        return Err(Error::InvalidParameter(format!(
            "{} weights for {} vertices",
            weights.len(),
            shift.graph.num_vertices()
        )));
    }
    let total = weights.total();
    if total.is_zero() {
        return Ok(HeavySearch::Found { set: Vec::new(), weight: BigRational::zero(), trial: 0 });
    }
    let target = &mu * &total;
    let mut pi: Vec<u32> = (1..=n as u32).collect();
    for trial in 0..max_tries {
        pi.shuffle(rng);
        let set = window_set_unchecked(shift, &index_set, &pi);
        let weight = weights.weight_of(&set);
        if weight >= target {
            debug_assert!(shift.graph.is_independent(&set));
            return Ok(HeavySearch::Found { set, weight, trial });
        }
    }
    Ok(HeavySearch::Unknown { tries: max_tries })
}

/// Orientation of the pair `{x, y}` of windows: true iff `x -> y`.
///
/// For `min(x) < min(y)` the arc is `x -> y` exactly when `|y \ x|` is even;
/// pairs with equal minima (never in a common edge) are ordered
/// lexicographically.
pub fn oriented(x: &[u32], y: &[u32]) -> bool {
    use std::cmp::Ordering::*;
    match x[0].cmp(&y[0]) {
        Less => difference_size(y, x) % 2 == 0,
        Greater => difference_size(x, y) % 2 == 1,
        Equal => x < y,
    }
}

fn difference_size(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|v| b.binary_search(v).is_err()).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K43Certificate {
    /// For each edge, its windows `(x, y, z)` sorted by minimum; the
    /// orientation contains the cycle `z -> y -> x -> z`.
    pub cyclic_triangles: Vec<[usize; 3]>,
}

/// Check that every edge of `Sh^(3)(n, ell)` is a cyclic triangle of the
/// parity tournament. Tournament hypergraphs contain no `K_4^(3)-`.
pub fn certify_k43minus_free(shift: &ShiftHypergraph) -> Result<K43Certificate> {
    if shift.params.k != 3 {
        return Err(Error::InvalidParameter("tournament certificate needs k = 3".into()));
    }
    let mut triangles = Vec::with_capacity(shift.graph.num_edges());
    for e in shift.graph.edges() {
        let mut t = [e[0], e[1], e[2]];
        t.sort_by_key(|&v| shift.windows[v][0]);
        let [x, y, z] = t.map(|v| shift.windows[v].as_slice());
        if !(x[0] < y[0] && y[0] < z[0]) {
            return Err(Error::Internal(format!("edge {e:?} has repeated minima")));
        }
        if !(oriented(z, y) && oriented(y, x) && oriented(x, z)) {
            return Err(Error::Internal(format!("edge {e:?} is not a cyclic triangle")));
        }
        triangles.push(t);
    }
    Ok(K43Certificate { cyclic_triangles: triangles })
}

/// Every edge of `g` maps onto an edge of `h` under `psi` (vertex of `g` to
/// vertex of `h`).
pub fn is_homomorphism(g: &Hypergraph, h: &Hypergraph, psi: &[usize]) -> bool {
    psi.len() == g.num_vertices()
        && g.k() == h.k()
        && g.edges().iter().all(|e| {
            let image: Vec<usize> = e.iter().map(|&v| psi[v]).collect();
            h.has_edge(&image) && {
                let mut s = image.clone();
                s.sort_unstable();
                s.dedup();
                s.len() == h.k()
            }
        })
}

/// `u_j = sum of w_i over psi^{-1}(j)`.
pub fn push_forward(psi: &[usize], weights: &WeightFamily, target_len: usize) -> WeightFamily {
    let mut out = vec![BigRational::zero(); target_len];
    for (i, &j) in psi.iter().enumerate() {
        out[j] += weights.get(i);
    }
    WeightFamily::new(out).expect("sums of nonnegative weights")
}

/// `psi^{-1}[z_h]`, ascending.
pub fn pullback_independent(psi: &[usize], z_h: &[usize]) -> Vec<usize> {
    let wanted: std::collections::HashSet<usize> = z_h.iter().copied().collect();
    (0..psi.len()).filter(|i| wanted.contains(&psi[*i])).collect()
}

/// `|I| / ell` as an exact fraction.
pub fn window_density(k: usize, ell: usize) -> Result<BigRational> {
    let size = window_index_set(k, ell)?.len();
    Ok(BigRational::new(BigInt::from(size), BigInt::from(ell)))
}

#[cfg(test)]
pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
