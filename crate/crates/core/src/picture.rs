//! Pictures over a hypergraph: point sets with a projection onto its
//! vertices such that every quasiline is a line projecting onto an edge.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::budget::{Budget, Verdict};
use crate::error::{Error, Result};
use crate::hjcube::{classify_kset, extend_embedding, for_each_quasiline, Alphabet, CombEmbedding, KSetVerdict, Line, Point, Symbol};
use crate::hypergraph::Hypergraph;
use crate::linesys::{meet, LineSystem, Meet};

/// Points of `[k]^m` (ascending) with `psi[i]` the vertex of `points[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Picture {
    k: usize,
    m: usize,
    points: Vec<Point>,
    psi: Vec<usize>,
    graph: Arc<Hypergraph>,
}

impl Picture {
    /// Validates shape only; the picture property itself is checked by
    /// [`is_picture`].
    pub fn new(k: usize, m: usize, assoc: Vec<(Point, usize)>, graph: Arc<Hypergraph>) -> Result<Self> {
        let mut assoc = assoc;
        assoc.sort();
        for w in assoc.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidPoint(format!("{} listed twice", w[0].0)));
            }
        }
        for (p, v) in &assoc {
            if p.dim() != m {
                return Err(Error::DimensionMismatch { expected: m, got: p.dim() });
            }
            if !p.in_cube(k) {
                return Err(Error::AlphabetMismatch(format!("{p} is not a point of [{k}]^{m}")));
            }
            if *v >= graph.num_vertices() {
                return Err(Error::InvalidHypergraph(format!("{p} projects to unknown vertex {v}")));
            }
        }
        let (points, psi) = assoc.into_iter().unzip();
        Ok(Picture { k, m, points, psi, graph })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    pub fn graph(&self) -> &Arc<Hypergraph> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn psi_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok().map(|i| self.psi[i])
    }

    pub fn verify(&self, budget: &mut Budget) -> Result<Verdict<Vec<Point>>> {
        is_picture(&self.points, &self.psi, &self.graph, self.k, budget)
    }
}

/// The picture with one line per edge of `g`, plus those lines in edge order.
///
/// With `m = |E(g)|`, the line for edge `i` lives in `[k]^(2m)`, moves only
/// at coordinate `i`, has symbol 2 at coordinate `m+i` and symbol 1
/// elsewhere; its point with moving symbol `j` projects to the `j`-th
/// vertex of the edge.
pub fn picture_zero(g: Arc<Hypergraph>, k: usize) -> Result<(Picture, Vec<Line>)> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("pictures need k >= 3, got {k}")));
    }
    if g.k() != k {
        return Err(Error::InvalidHypergraph(format!("hypergraph is {}-uniform, expected {k}", g.k())));
    }
    let m = g.num_edges();
    let mut lines = Vec::with_capacity(m);
    let mut assoc = Vec::with_capacity(m * k);
    for (i, e) in g.edges().iter().enumerate() {
        let word: Vec<Option<Symbol>> = (0..2 * m)
            .map(|c| if c == i { None } else if c == m + i { Some(1) } else { Some(0) })
            .collect();
        let line = Line::from_pattern(k, &word)?;
        for (j, p) in line.points().into_iter().enumerate() {
            assoc.push((p, e[j]));
        }
        lines.push(line);
    }
    Ok((Picture::new(k, 2 * m, assoc, g)?, lines))
}

/// `psi^{-1}(x)`, ascending.
pub fn music_line(pic: &Picture, x: usize) -> Result<Vec<Point>> {
    if x >= pic.graph.num_vertices() {
        return Err(Error::InvalidHypergraph(format!("vertex {x} not in the hypergraph")));
    }
    Ok(pic.points.iter().zip(&pic.psi).filter(|(_, &v)| v == x).map(|(p, _)| p.clone()).collect())
}

/// The music line over `x` as a point alphabet.
pub fn music_alphabet(pic: &Picture, x: usize) -> Result<Alphabet> {
    Alphabet::of_points(music_line(pic, x)?, pic.k)
}

#[derive(Clone, Debug)]
pub struct Amalgamation {
    pub picture: Picture,
    pub source: Picture,
    pub vertex: usize,
    pub lines: LineSystem,
    /// `eta^+_U` for each line `U`, in line order.
    pub copies: Vec<CombEmbedding>,
}

impl Amalgamation {
    /// The standard copy `(P^U, psi_U)` for line index `u`.
    pub fn standard_copy(&self, u: usize) -> Result<Picture> {
        copy_of(&self.source, &self.copies[u])
    }
}

fn copy_of(pic: &Picture, eta: &CombEmbedding) -> Result<Picture> {
    let assoc = pic
        .points
        .iter()
        .zip(&pic.psi)
        .map(|(p, &v)| Ok((eta.apply(p)?, v)))
        .collect::<Result<Vec<_>>>()?;
    Picture::new(pic.k, eta.target_dim(), assoc, pic.graph.clone())
}

/// `pic ⊞ lines`: glue one standard copy of `pic` per line `U`, along the
/// music line over `x`. Checks that copies agree on overlaps, that each
/// copy's music line over `x` is `U`, and that two copies meet exactly in
/// the intersection of their lines.
pub fn amalgamate(pic: &Picture, x: usize, lines: &LineSystem) -> Result<Amalgamation> {
    let alphabet = music_alphabet(pic, x)?;
    if lines.alphabet() != &alphabet {
        return Err(Error::AlphabetMismatch(format!("line system is not over the music line over vertex {x}")));
    }
    if lines.is_empty() {
        return Err(Error::InvalidParameter("amalgamation needs at least one line".into()));
    }
    let flat_line = |u: &Line| -> Result<BTreeSet<Point>> {
        u.points().iter().map(|p| alphabet.flatten(p)).collect()
    };
    let built: Vec<(CombEmbedding, Picture)> = lines
        .lines()
        .par_iter()
        .map(|u| {
            let eta = extend_embedding(u.embedding(), &alphabet)?;
            let copy = copy_of(pic, &eta)?;
            let music: BTreeSet<Point> = music_line(&copy, x)?.into_iter().collect();
            if music != flat_line(u)? {
                return Err(Error::Internal(format!("standard copy for {u} has the wrong music line")));
            }
            Ok((eta, copy))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut merged: BTreeMap<Point, (usize, Vec<usize>)> = BTreeMap::new();
    for (u, (_, copy)) in built.iter().enumerate() {
        for (p, &v) in copy.points.iter().zip(&copy.psi) {
            let slot = merged.entry(p.clone()).or_insert((v, Vec::new()));
            if slot.0 != v {
                return Err(Error::Internal(format!("copies disagree on the projection of {p}")));
            }
            slot.1.push(u);
        }
    }
    let mut shared: BTreeMap<(usize, usize), BTreeSet<Point>> = BTreeMap::new();
    for (p, (_, owners)) in &merged {
        for (i, &a) in owners.iter().enumerate() {
            for &b in &owners[i + 1..] {
                shared.entry((a, b)).or_default().insert(p.clone());
            }
        }
    }
    let ls = lines.lines();
    for a in 0..ls.len() {
        for b in a + 1..ls.len() {
            let expected: BTreeSet<Point> = match meet(&ls[a], &ls[b]) {
                Meet::Point(w) => std::iter::once(alphabet.flatten(&w)?).collect(),
                Meet::Empty => BTreeSet::new(),
                Meet::Same => return Err(Error::DuplicateLine(ls[a].star_word())),
            };
            let got = shared.remove(&(a, b)).unwrap_or_default();
            if got != expected {
                return Err(Error::Internal(format!(
                    "copies for {} and {} meet in {} points, lines meet in {}",
                    ls[a],
                    ls[b],
                    got.len(),
                    expected.len()
                )));
            }
        }
    }
    let dim = pic.m * lines.n();
    let assoc = merged.into_iter().map(|(p, (v, _))| (p, v)).collect();
    let picture = Picture::new(pic.k, dim, assoc, pic.graph.clone())?;
    Ok(Amalgamation {
        picture,
        source: pic.clone(),
        vertex: x,
        lines: lines.clone(),
        copies: built.into_iter().map(|(e, _)| e).collect(),
    })
}

/// `Proven` iff every quasiline of `points` is a combinatorial line whose
/// projection is an edge of `g`. `Refuted` carries the first offending
/// quasiline found.
pub fn is_picture(points: &[Point], psi: &[usize], g: &Hypergraph, k: usize, budget: &mut Budget) -> Result<Verdict<Vec<Point>>> {
    if points.len() != psi.len() {
        return Err(Error::InvalidParameter(format!("{} points but {} projections", points.len(), psi.len())));
    }
    let lookup: BTreeMap<&Point, usize> = points.iter().zip(psi).map(|(p, &v)| (p, v)).collect();
    let mut witness: Option<Vec<Point>> = None;
    let mut failure: Option<Error> = None;
    let finished = for_each_quasiline(points, k, budget, |q| {
        if witness.is_some() || failure.is_some() {
            return;
        }
        let owned: Vec<Point> = q.iter().map(|p| (*p).clone()).collect();
        match classify_kset(&owned, k) {
            Ok(KSetVerdict::IsLine(_)) => {
                let image: Vec<usize> = q.iter().map(|p| lookup[p]).collect();
                let distinct: BTreeSet<usize> = image.iter().copied().collect();
                if distinct.len() != k || !g.has_edge(&image) {
                    witness = Some(owned);
                }
            }
            Ok(_) => witness = Some(owned),
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(match (witness, finished) {
        (Some(w), _) => Verdict::Refuted(w),
        (None, true) => Verdict::Proven,
        (None, false) => Verdict::Unknown { spent: budget.spent() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hjcube::quasilines_within;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn edge() -> Arc<Hypergraph> {
        Arc::new(Hypergraph::from_int_edges(3, 3, &[vec![1, 2, 3]]).unwrap())
    }

    #[test]
    fn zero_for_three_edges() {
        let g = Arc::new(Hypergraph::from_int_edges(3, 5, &[vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 5]]).unwrap());
        let (pic, lines) = picture_zero(g, 3).unwrap();
        let words: Vec<String> = lines.iter().map(Line::star_word).collect();
        assert_eq!(words, vec!["*11211", "1*1121", "11*112"]);
        assert_eq!(pic.m(), 6);
        assert_eq!(quasilines_within(pic.points(), 3).unwrap().len(), 3);
        assert!(pic.verify(&mut Budget::unlimited()).unwrap().is_proven());
        assert_eq!(music_line(&pic, 0).unwrap().len(), 2);
        assert_eq!(music_line(&pic, 2).unwrap(), vec![pt("311211")]);
    }

    #[test]
    fn zero_for_one_edge() {
        let (pic, _) = picture_zero(edge(), 3).unwrap();
        assert_eq!(pic.points(), &[pt("12"), pt("22"), pt("32")]);
        assert_eq!(pic.psi(), &[0, 1, 2]);
    }

    #[test]
    fn degenerate_inputs() {
        let g = Arc::new(Hypergraph::new(3, vec![crate::hypergraph::VertexLabel::Int(1)], vec![]).unwrap());
        let (pic, lines) = picture_zero(g, 3).unwrap();
        assert!(pic.is_empty() && lines.is_empty());
        assert!(music_line(&pic, 0).unwrap().is_empty());
        assert!(music_line(&pic, 1).is_err());
        assert!(picture_zero(edge(), 4).is_err());
    }

    #[test]
    fn non_edge_projection_refuted() {
        let g = Hypergraph::from_int_edges(3, 4, &[vec![1, 2, 3]]).unwrap();
        let pts = vec![pt("1"), pt("2"), pt("3")];
        let v = is_picture(&pts, &[0, 1, 3], &g, 3, &mut Budget::unlimited()).unwrap();
        assert!(v.is_refuted());
        assert!(is_picture(&pts, &[0, 1, 2], &g, 3, &mut Budget::unlimited()).unwrap().is_proven());
    }

    #[test]
    fn amalgamation_shapes() {
        let (pic, _) = picture_zero(edge(), 3).unwrap();
        let alphabet = music_alphabet(&pic, 0).unwrap();
        assert_eq!(alphabet.size(), 1);

        let g = Arc::new(Hypergraph::from_int_edges(3, 5, &[vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 5]]).unwrap());
        let (pic, _) = picture_zero(g, 3).unwrap();
        // Vertex 4 (index 3) lies on two edges: music line of size 2.
        let a = music_alphabet(&pic, 3).unwrap();
        assert_eq!(a.size(), 2);
        let one = LineSystem::from_star_words(a.clone(), 2, &["1*"]).unwrap();
        let am = amalgamate(&pic, 3, &one).unwrap();
        assert_eq!(am.picture.len(), pic.len());
        assert_eq!(am.picture.m(), 12);
        assert!(am.picture.verify(&mut Budget::unlimited()).unwrap().is_proven());

        let disjoint = LineSystem::from_star_words(a.clone(), 2, &["1*", "2*"]).unwrap();
        let am = amalgamate(&pic, 3, &disjoint).unwrap();
        assert_eq!(am.picture.len(), 2 * pic.len());

        let meeting = LineSystem::from_star_words(a, 2, &["1*", "*1"]).unwrap();
        let am = amalgamate(&pic, 3, &meeting).unwrap();
        assert_eq!(am.picture.len(), 2 * pic.len() - 1);
        assert!(am.standard_copy(1).unwrap().verify(&mut Budget::unlimited()).unwrap().is_proven());
    }

    #[test]
    fn amalgamation_rejects_foreign_alphabet() {
        let (pic, _) = picture_zero(edge(), 3).unwrap();
        let s = LineSystem::from_star_words(Alphabet::canonical(3), 1, &["*"]).unwrap();
        assert!(matches!(amalgamate(&pic, 0, &s), Err(Error::AlphabetMismatch(_))));
    }
}
