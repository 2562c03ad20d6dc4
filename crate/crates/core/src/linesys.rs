//! Systems of combinatorial lines over an alphabet: triangle and tripod
//! detection, suitability, a randomized greedy builder, monochromatic line
//! counts and a backtracking chromatic search.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::budget::{Budget, Verdict};
use crate::error::{Error, Result};
use crate::hjcube::{enumerate_lines, line_count, Alphabet, Coord, Line, Point, Symbol};

/// Lines over `A^n` (symbols of `A` are `0..|A|`), kept in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSystem {
    alphabet: Alphabet,
    n: usize,
    lines: Vec<Line>,
    cap: Option<usize>,
}

impl LineSystem {
    pub fn new(alphabet: Alphabet, n: usize, lines: Vec<Line>, cap: Option<usize>) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &lines {
            if l.k() != alphabet.size() {
                return Err(Error::AlphabetMismatch(format!("line {l} over {} symbols", l.k())));
            }
            if l.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: l.dim() });
            }
            if !seen.insert(l) {
                return Err(Error::DuplicateLine(l.star_word()));
            }
        }
        let sys = LineSystem { alphabet, n, lines, cap };
        if let Some(d) = cap {
            if let Some((p, ls)) = sys.point_lines().into_iter().find(|(_, ls)| ls.len() > d) {
                return Err(Error::InvalidParameter(format!("{p} lies on {} > {d} lines", ls.len())));
            }
        }
        Ok(sys)
    }

    pub fn empty(alphabet: Alphabet, n: usize) -> Self {
        LineSystem { alphabet, n, lines: Vec::new(), cap: None }
    }

    /// Every line of `A^n`, in enumeration order.
    pub fn full(alphabet: Alphabet, n: usize) -> Result<Self> {
        let lines: Vec<Line> = enumerate_lines(alphabet.size(), n, None)?.collect();
        LineSystem::new(alphabet, n, lines, None)
    }

    pub fn from_star_words(alphabet: Alphabet, n: usize, words: &[&str]) -> Result<Self> {
        let k = alphabet.size();
        let lines = words.iter().map(|w| Line::parse_star_word(w, k)).collect::<Result<Vec<_>>>()?;
        LineSystem::new(alphabet, n, lines, None)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn k(&self) -> usize {
        self.alphabet.size()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Subsystem on the given line indices, in the given order.
    pub fn subsystem(&self, indices: &[usize]) -> Result<Self> {
        LineSystem::new(self.alphabet.clone(), self.n, indices.iter().map(|&i| self.lines[i].clone()).collect(), None)
    }

    /// Points of `∪S`, ascending.
    pub fn points(&self) -> Vec<Point> {
        let set: BTreeSet<Point> = self.lines.iter().flat_map(Line::points).collect();
        set.into_iter().collect()
    }

    /// For each point of `∪S`, the indices of the lines through it.
    pub fn point_lines(&self) -> BTreeMap<Point, Vec<usize>> {
        let mut map: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
        for (i, l) in self.lines.iter().enumerate() {
            for p in l.points() {
                map.entry(p).or_default().push(i);
            }
        }
        map
    }

    pub fn max_degree(&self) -> usize {
        self.point_lines().values().map(Vec::len).max().unwrap_or(0)
    }
}

/// Intersection of two lines of the same cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    Empty,
    Point(Point),
    Same,
}

/// Solve `L1(s) = L2(t)` coordinatewise.
pub fn meet(l1: &Line, l2: &Line) -> Meet {
    let mut s: Option<Symbol> = None;
    let mut t: Option<Symbol> = None;
    let mut tied = false;
    for (a, b) in l1.coords().iter().zip(l2.coords()) {
        match (*a, *b) {
            (Coord::Const(x), Coord::Const(y)) => {
                if x != y {
                    return Meet::Empty;
                }
            }
            (Coord::Moving(_), Coord::Const(y)) => {
                if *s.get_or_insert(y) != y {
                    return Meet::Empty;
                }
            }
            (Coord::Const(x), Coord::Moving(_)) => {
                if *t.get_or_insert(x) != x {
                    return Meet::Empty;
                }
            }
            (Coord::Moving(_), Coord::Moving(_)) => tied = true,
        }
    }
    let s = match (s, t, tied) {
        (Some(s), Some(t), true) if s != t => return Meet::Empty,
        (Some(s), _, _) => s,
        // `l1` has a moving coordinate, so `t` alone pins it through `s = t`.
        (None, Some(t), _) => t,
        (None, None, _) => return Meet::Same,
    };
    Meet::Point(l1.point(s))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TripleVerdict {
    Triangle,
    Tripod,
    Neither,
}

/// One moving set is the disjoint union of the other two, for some labelling.
fn moving_sets_split(l: [&Line; 3]) -> bool {
    let m: Vec<BTreeSet<usize>> = l.iter().map(|x| x.moving().into_iter().collect()).collect();
    (0..3).any(|a| {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        m[b].is_disjoint(&m[c]) && m[b].len() + m[c].len() == m[a].len() && m[b].union(&m[c]).all(|x| m[a].contains(x))
    })
}

pub fn classify_triple(l1: &Line, l2: &Line, l3: &Line) -> Result<TripleVerdict> {
    if l1 == l2 || l1 == l3 || l2 == l3 {
        return Err(Error::DuplicateLine(format!("{l1}, {l2}, {l3}")));
    }
    if l1.k() != l2.k() || l1.k() != l3.k() {
        return Err(Error::AlphabetMismatch("lines over different alphabets".into()));
    }
    if l1.dim() != l2.dim() || l1.dim() != l3.dim() {
        return Err(Error::DimensionMismatch { expected: l1.dim(), got: l2.dim().max(l3.dim()) });
    }
    Ok(classify_distinct(l1, l2, l3))
}

fn classify_distinct(l1: &Line, l2: &Line, l3: &Line) -> TripleVerdict {
    let (Meet::Point(p12), Meet::Point(p13), Meet::Point(p23)) = (meet(l1, l2), meet(l1, l3), meet(l2, l3)) else {
        return TripleVerdict::Neither;
    };
    if p12 == p13 {
        debug_assert_eq!(p12, p23);
        if moving_sets_split([l1, l2, l3]) {
            TripleVerdict::Tripod
        } else {
            TripleVerdict::Neither
        }
    } else {
        debug_assert!(p12 != p23 && p13 != p23);
        TripleVerdict::Triangle
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Degree { point: Point, lines: Vec<usize> },
    Triple { lines: [usize; 3], verdict: TripleVerdict },
}

/// Lines of the system meeting line `i` (excluding `i`), ascending.
fn neighbours(sys: &LineSystem, through: &BTreeMap<Point, Vec<usize>>, i: usize) -> Vec<usize> {
    let mut out: BTreeSet<usize> = BTreeSet::new();
    for p in sys.lines[i].points() {
        out.extend(through[&p].iter().copied().filter(|&j| j != i));
    }
    out.into_iter().collect()
}

/// `Ok(())` when every point lies on at most `d` lines and no three lines
/// form a triangle or tripod; otherwise the first violation (degree
/// violations first, then triples in lexicographic index order).
pub fn is_suitable(sys: &LineSystem, d: usize) -> std::result::Result<(), Violation> {
    let through = sys.point_lines();
    if let Some((p, ls)) = through.iter().find(|(_, ls)| ls.len() > d) {
        return Err(Violation::Degree { point: p.clone(), lines: ls.clone() });
    }
    for a in 0..sys.lines.len() {
        let nb: Vec<usize> = neighbours(sys, &through, a).into_iter().filter(|&j| j > a).collect();
        for (x, &b) in nb.iter().enumerate() {
            for &c in &nb[x + 1..] {
                let v = classify_distinct(&sys.lines[a], &sys.lines[b], &sys.lines[c]);
                if v != TripleVerdict::Neither {
                    return Err(Violation::Triple { lines: [a, b, c], verdict: v });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct GreedyConfig {
    /// Degree cap; `None` for unbounded.
    pub d: Option<usize>,
    pub target: usize,
    /// Stop after this many rejections in a row.
    pub max_consecutive_rejections: usize,
    /// Enumerate and shuffle all lines when there are at most this many;
    /// otherwise sample star-words by rejection.
    pub enumerate_limit: u128,
}

impl GreedyConfig {
    pub fn new(d: Option<usize>, target: usize) -> Self {
        GreedyConfig { d, target, max_consecutive_rejections: 10_000, enumerate_limit: 1 << 20 }
    }
}

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    pub system: LineSystem,
    pub reached_target: bool,
    pub proposals: usize,
}

/// Incremental state: the accepted lines and the lines through each point.
struct Growing {
    lines: Vec<Line>,
    through: HashMap<Point, Vec<usize>>,
}

impl Growing {
    fn accepts(&self, cand: &Line, d: usize) -> bool {
        let pts = cand.points();
        let mut nb: BTreeSet<usize> = BTreeSet::new();
        for p in &pts {
            if let Some(ls) = self.through.get(p) {
                if ls.len() >= d {
                    return false;
                }
                nb.extend(ls.iter().copied());
            }
        }
        let nb: Vec<usize> = nb.into_iter().collect();
        for (x, &b) in nb.iter().enumerate() {
            for &c in &nb[x + 1..] {
                if classify_distinct(cand, &self.lines[b], &self.lines[c]) != TripleVerdict::Neither {
                    return false;
                }
            }
        }
        true
    }

    fn push(&mut self, line: Line) {
        let i = self.lines.len();
        for p in line.points() {
            self.through.entry(p).or_default().push(i);
        }
        self.lines.push(line);
    }
}

fn random_line<R: Rng>(rng: &mut R, k: usize, n: usize) -> Line {
    loop {
        let word: Vec<Option<Symbol>> =
            (0..n).map(|_| {
                let s = rng.gen_range(0..=k);
                if s == k { None } else { Some(s as Symbol) }
            }).collect();
        if word.iter().any(Option::is_none) {
            return Line::from_pattern(k, &word).expect("valid pattern");
        }
    }
}

/// Add uniformly drawn unused lines one at a time, keeping those that
/// preserve suitability.
pub fn greedy_build<R: Rng>(alphabet: &Alphabet, n: usize, cfg: &GreedyConfig, rng: &mut R) -> Result<GreedyOutcome> {
    let k = alphabet.size();
    if k < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!("greedy build needs |A| >= 2 and n >= 1 (|A|={k}, n={n})")));
    }
    if cfg.d == Some(0) {
        return Err(Error::InvalidParameter("degree cap must be at least 1".into()));
    }
    let d = cfg.d.unwrap_or(usize::MAX);
    let total = crate::hjcube::total_line_count(k, n);
    let mut g = Growing { lines: Vec::new(), through: HashMap::new() };
    let mut proposals = 0;
    let mut rejections = 0;
    match total {
        Some(t) if t <= cfg.enumerate_limit => {
            let mut all: Vec<Line> = enumerate_lines(k, n, None)?.collect();
            all.shuffle(rng);
            for cand in all {
                if g.lines.len() >= cfg.target || rejections >= cfg.max_consecutive_rejections {
                    break;
                }
                proposals += 1;
                if g.accepts(&cand, d) {
                    g.push(cand);
                    rejections = 0;
                } else {
                    rejections += 1;
                }
            }
        }
        _ => {
            let mut used: HashSet<Line> = HashSet::new();
            while g.lines.len() < cfg.target && rejections < cfg.max_consecutive_rejections {
                let cand = random_line(rng, k, n);
                if !used.insert(cand.clone()) {
                    rejections += 1;
                    continue;
                }
                proposals += 1;
                if g.accepts(&cand, d) {
                    g.push(cand);
                    rejections = 0;
                } else {
                    rejections += 1;
                }
            }
        }
    }
    let reached_target = g.lines.len() >= cfg.target;
    let system = LineSystem::new(alphabet.clone(), n, g.lines, cfg.d)?;
    Ok(GreedyOutcome { system, reached_target, proposals })
}

/// Which lines a census ranges over.
pub enum CensusScope<'a> {
    System(&'a LineSystem),
    /// All lines of `[k]^n`.
    Full { k: usize, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    /// Number of moving coordinates.
    pub i: usize,
    pub monochromatic: u64,
    /// Lines of the scope in this class.
    pub lines: u64,
    /// `|L_i| = C(n, i) k^(n-i)`.
    pub class_size: u128,
}

/// Count monochromatic lines per moving-set size `i = 1..=n`.
pub fn mono_census<C>(scope: CensusScope<'_>, colour: C) -> Result<Vec<CensusRow>>
where
    C: Fn(&Point) -> Option<u32>,
{
    let (k, n, lines): (usize, usize, Box<dyn Iterator<Item = Line> + '_>) = match scope {
        CensusScope::System(s) => (s.k(), s.n(), Box::new(s.lines().iter().cloned())),
        CensusScope::Full { k, n } => (k, n, Box::new(enumerate_lines(k, n, None)?)),
    };
    let mut rows: Vec<CensusRow> = (1..=n)
        .map(|i| CensusRow {
            i,
            monochromatic: 0,
            lines: 0,
            class_size: line_count(k, n, i).unwrap_or(u128::MAX),
        })
        .collect();
    for l in lines {
        let row = &mut rows[l.moving().len() - 1];
        row.lines += 1;
        let mut first = None;
        let mut mono = true;
        for p in l.points() {
            let c = colour(&p).ok_or_else(|| Error::PartialColouring(p.to_string()))?;
            if *first.get_or_insert(c) != c {
                mono = false;
            }
        }
        if mono {
            row.monochromatic += 1;
        }
    }
    Ok(rows)
}

/// Decide whether every `r`-colouring of `∪S` has a monochromatic line of
/// `S`. `Refuted` carries a colouring (`0..r`) with no monochromatic line.
pub fn chromatic_exceeds(sys: &LineSystem, r: usize, budget: &mut Budget) -> Result<Verdict<BTreeMap<Point, u32>>> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let through = sys.point_lines();
    let mut order: Vec<(&Point, &Vec<usize>)> = through.iter().collect();
    order.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(b.0)));
    let lines_at: Vec<&Vec<usize>> = order.iter().map(|(_, ls)| *ls).collect();

    let mut search = ColourSearch {
        k: sys.k(),
        r,
        lines_at,
        counts: vec![vec![0; r]; sys.len()],
        colours: vec![u32::MAX; order.len()],
    };
    let outcome = search.run(0, 0, budget);
    Ok(match outcome {
        Some(true) => {
            let colouring: BTreeMap<Point, u32> =
                order.iter().zip(&search.colours).map(|((p, _), &c)| ((*p).clone(), c)).collect();
            debug_assert!(sys.lines().iter().all(|l| {
                let cs: BTreeSet<u32> = l.points().iter().map(|p| colouring[p]).collect();
                cs.len() > 1
            }));
            Verdict::Refuted(colouring)
        }
        Some(false) => Verdict::Proven,
        None => Verdict::Unknown { spent: budget.spent() },
    })
}

struct ColourSearch<'a> {
    k: usize,
    r: usize,
    lines_at: Vec<&'a Vec<usize>>,
    /// `counts[line][c]`: points of the line already coloured `c`.
    counts: Vec<Vec<usize>>,
    colours: Vec<u32>,
}

impl ColourSearch<'_> {
    /// `Some(true)`: a good colouring extends the current one. `None`:
    /// budget exhausted.
    fn run(&mut self, v: usize, max_used: usize, budget: &mut Budget) -> Option<bool> {
        if v == self.colours.len() {
            return Some(true);
        }
        let limit = (max_used + 1).min(self.r);
        for c in 0..limit {
            if !budget.tick() {
                return None;
            }
            let lines = self.lines_at[v];
            if lines.iter().any(|&l| self.counts[l][c] + 1 == self.k) {
                continue;
            }
            for &l in lines {
                self.counts[l][c] += 1;
            }
            self.colours[v] = c as u32;
            let res = self.run(v + 1, max_used.max(c + 1), budget);
            for &l in lines {
                self.counts[l][c] -= 1;
            }
            match res {
                Some(false) => {}
                other => return other,
            }
        }
        self.colours[v] = u32::MAX;
        Some(false)
    }
}
