//! Hales-Jewett cubes: points, combinatorial embeddings, lines and quasilines.
//!
//! Symbols are stored 0-based (`0..k`); every textual form uses 1-based
//! digits, so the internal point `[0, 1, 0]` prints as `121`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};

pub type Symbol = u16;

/// A point of a cube `[k]^n`, i.e. a word of length `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Symbol>);

impl Point {
    pub fn new(entries: Vec<Symbol>) -> Self {
        Point(entries)
    }

    pub fn from_slice(entries: &[Symbol]) -> Self {
        Point(entries.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Symbol> {
        self.0
    }

    pub fn in_cube(&self, k: usize) -> bool {
        self.0.iter().all(|&s| (s as usize) < k)
    }

    /// Fixed-radix code `sum entries[i] * k^(n-1-i)` when it fits in 62 bits.
    /// Code order agrees with the derived lexicographic order.
    pub fn code(&self, k: usize) -> Option<u64> {
        let bits = usize::BITS - (k.max(2) - 1).leading_zeros();
        if self.0.len() * bits as usize > 62 {
            return None;
        }
        let mut code: u64 = 0;
        for &s in &self.0 {
            code = code * k as u64 + s as u64;
        }
        Some(code)
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Point>) -> Point {
        let mut out = Vec::new();
        for p in parts {
            out.extend_from_slice(&p.0);
        }
        Point(out)
    }

    /// Parse the 1-based textual form: `"121"`, or `"1.12.3"` when some
    /// symbol needs more than one digit.
    pub fn parse(text: &str) -> Result<Point> {
        let text = text.trim();
        let tokens: Vec<&str> = if text.contains('.') {
            split_dotted(text)
        } else {
            text.split("").filter(|t| !t.is_empty()).collect()
        };
        let mut entries = Vec::with_capacity(tokens.len());
        for tok in tokens {
            entries.push(parse_symbol(tok)?);
        }
        Ok(Point(entries))
    }
}

fn split_dotted(text: &str) -> Vec<&str> {
    let mut tokens: Vec<&str> = text.split('.').collect();
    if tokens.len() == 2 && tokens[1].is_empty() {
        tokens.pop();
    }
    tokens
}

fn parse_symbol(tok: &str) -> Result<Symbol> {
    let v: u32 = tok
        .parse()
        .map_err(|_| Error::InvalidPoint(format!("bad symbol {tok:?}")))?;
    if v == 0 || v > Symbol::MAX as u32 + 1 {
        return Err(Error::InvalidPoint(format!("symbol {v} out of range")));
    }
    Ok((v - 1) as Symbol)
}

fn write_word<I: Iterator<Item = Option<Symbol>> + Clone>(
    f: &mut fmt::Formatter<'_>,
    word: I,
) -> fmt::Result {
    let wide = word.clone().any(|s| matches!(s, Some(s) if s >= 9));
    let mut len = 0;
    for (i, s) in word.enumerate() {
        if wide && i > 0 {
            f.write_str(".")?;
        }
        match s {
            Some(s) => write!(f, "{}", s as u32 + 1)?,
            None => f.write_str("*")?,
        }
        len += 1;
    }
    // A lone wide symbol keeps a trailing dot so it parses back as one symbol.
    if wide && len == 1 {
        f.write_str(".")?;
    }
    Ok(())
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.0.iter().map(|&s| Some(s)))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

/// All points of `[k]^n` in lexicographic order.
pub fn cube_points(k: usize, n: usize) -> impl Iterator<Item = Point> {
    let mut next = if k == 0 && n > 0 { None } else { Some(vec![0 as Symbol; n]) };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = n;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if (succ[i] as usize) + 1 < k {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Point(cur))
    })
}

/// An alphabet: either the canonical `[k]`, or a sorted set of points of
/// some cube `[base_k]^m` used as symbols (a music line, say).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
    symbols: Option<Vec<Point>>,
    base_k: usize,
}

impl Alphabet {
    pub fn canonical(k: usize) -> Self {
        Alphabet { size: k, symbols: None, base_k: k }
    }

    /// Points become symbols `0..len` in sorted order.
    pub fn of_points(points: impl IntoIterator<Item = Point>, base_k: usize) -> Result<Self> {
        let set: BTreeSet<Point> = points.into_iter().collect();
        let symbols: Vec<Point> = set.into_iter().collect();
        if let Some(first) = symbols.first() {
            let m = first.dim();
            for p in &symbols {
                if p.dim() != m {
                    return Err(Error::DimensionMismatch { expected: m, got: p.dim() });
                }
                if !p.in_cube(base_k) {
                    return Err(Error::AlphabetMismatch(format!("{p} is not in [{base_k}]^{m}")));
                }
            }
        }
        Ok(Alphabet { size: symbols.len(), symbols: Some(symbols), base_k })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn base_k(&self) -> usize {
        self.base_k
    }

    pub fn points(&self) -> Option<&[Point]> {
        self.symbols.as_deref()
    }

    pub fn point_dim(&self) -> Option<usize> {
        self.symbols.as_ref().map(|s| s.first().map_or(0, Point::dim))
    }

    pub fn symbol_point(&self, s: Symbol) -> Option<&Point> {
        self.symbols.as_ref()?.get(s as usize)
    }

    pub fn index_of(&self, p: &Point) -> Option<Symbol> {
        let syms = self.symbols.as_ref()?;
        syms.binary_search(p).ok().map(|i| i as Symbol)
    }

    /// Spell a word over this alphabet as a point of `[base_k]^(m*n)`.
    pub fn flatten(&self, word: &Point) -> Result<Point> {
        let syms = self
            .symbols
            .as_ref()
            .ok_or_else(|| Error::AlphabetMismatch("canonical alphabet has no point symbols".into()))?;
        let mut parts = Vec::with_capacity(word.dim());
        for &s in word.entries() {
            parts.push(
                syms.get(s as usize)
                    .ok_or_else(|| Error::AlphabetMismatch(format!("symbol {} out of range", s + 1)))?,
            );
        }
        Ok(Point::concat(parts))
    }
}

/// One target coordinate of a combinatorial embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Const(Symbol),
    /// Index of the moving block (0-based) this coordinate belongs to.
    Moving(usize),
}

/// A combinatorial embedding `[k]^m -> [k]^n`.
///
/// Each target coordinate is either constant or copies one source
/// coordinate; the coordinates copying source coordinate `j` form the
/// block `M_j`, and every block is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombEmbedding {
    k: usize,
    source_dim: usize,
    coords: Vec<Coord>,
}

impl CombEmbedding {
    pub fn new(k: usize, source_dim: usize, coords: Vec<Coord>) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidEmbedding("alphabet must be nonempty".into()));
        }
        if source_dim == 0 {
            return Err(Error::InvalidEmbedding("source dimension must be at least 1".into()));
        }
        let mut seen = vec![false; source_dim];
        for c in &coords {
            match *c {
                Coord::Const(s) if (s as usize) >= k => {
                    return Err(Error::InvalidEmbedding(format!("constant {} outside [{k}]", s + 1)))
                }
                Coord::Moving(j) if j >= source_dim => {
                    return Err(Error::InvalidEmbedding(format!("block {j} exceeds source dimension")))
                }
                Coord::Moving(j) => seen[j] = true,
                _ => {}
            }
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidEmbedding(format!("moving block {} is empty", j + 1)));
        }
        Ok(CombEmbedding { k, source_dim, coords })
    }

    /// Build from the partition description: 0-based constant coordinates
    /// with their symbols, and the moving blocks `M_1..M_m`.
    pub fn from_partition(
        k: usize,
        target_dim: usize,
        constants: &BTreeMap<usize, Symbol>,
        blocks: &[Vec<usize>],
    ) -> Result<Self> {
        let mut coords: Vec<Option<Coord>> = vec![None; target_dim];
        let mut place = |i: usize, c: Coord| -> Result<()> {
            let slot = coords
                .get_mut(i)
                .ok_or_else(|| Error::InvalidEmbedding(format!("coordinate {} out of range", i + 1)))?;
            if slot.is_some() {
                return Err(Error::InvalidEmbedding(format!("coordinate {} assigned twice", i + 1)));
            }
            *slot = Some(c);
            Ok(())
        };
        for (&i, &s) in constants {
            place(i, Coord::Const(s))?;
        }
        for (j, block) in blocks.iter().enumerate() {
            for &i in block {
                place(i, Coord::Moving(j))?;
            }
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::InvalidEmbedding(format!("coordinate {} unassigned", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        CombEmbedding::new(k, blocks.len(), coords)
    }

    pub fn identity(k: usize, m: usize) -> Self {
        CombEmbedding { k, source_dim: m, coords: (0..m).map(Coord::Moving).collect() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn constants(&self) -> BTreeMap<usize, Symbol> {
        self.coords
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c {
                Coord::Const(s) => Some((i, *s)),
                Coord::Moving(_) => None,
            })
            .collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.source_dim];
        for (i, c) in self.coords.iter().enumerate() {
            if let Coord::Moving(j) = c {
                blocks[*j].push(i);
            }
        }
        blocks
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        if p.dim() != self.source_dim {
            return Err(Error::DimensionMismatch { expected: self.source_dim, got: p.dim() });
        }
        if !p.in_cube(self.k) {
            return Err(Error::AlphabetMismatch(format!("{p} is not a point of [{}]^{}", self.k, p.dim())));
        }
        Ok(self.apply_unchecked(p.entries()))
    }

    pub(crate) fn apply_unchecked(&self, p: &[Symbol]) -> Point {
        Point(
            self.coords
                .iter()
                .map(|c| match *c {
                    Coord::Const(s) => s,
                    Coord::Moving(j) => p[j],
                })
                .collect(),
        )
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &CombEmbedding) -> Result<CombEmbedding> {
        if inner.target_dim() != self.source_dim {
            return Err(Error::DimensionMismatch { expected: self.source_dim, got: inner.target_dim() });
        }
        if inner.k != self.k {
            return Err(Error::AlphabetMismatch(format!("[{}] vs [{}]", inner.k, self.k)));
        }
        let coords = self
            .coords
            .iter()
            .map(|c| match *c {
                Coord::Const(s) => Coord::Const(s),
                Coord::Moving(j) => inner.coords[j],
            })
            .collect();
        CombEmbedding::new(self.k, inner.source_dim, coords)
    }

    /// Inverse image of a target point, if it lies in the image.
    pub fn preimage(&self, q: &Point) -> Option<Point> {
        if q.dim() != self.coords.len() {
            return None;
        }
        let mut src: Vec<Option<Symbol>> = vec![None; self.source_dim];
        for (c, &v) in self.coords.iter().zip(q.entries()) {
            match *c {
                Coord::Const(s) if s != v => return None,
                Coord::Const(_) => {}
                Coord::Moving(j) => match src[j] {
                    Some(w) if w != v => return None,
                    _ => src[j] = Some(v),
                },
            }
        }
        Some(Point(src.into_iter().map(|s| s.expect("blocks are nonempty")).collect()))
    }
}

/// Extend `eta: A^s -> A^n`, where the symbols of `A` are points of
/// `[k]^m`, to the combinatorial embedding `[k]^(m*s) -> [k]^(m*n)` that
/// substitutes whole `[k]^m`-points into the moving slots.
pub fn extend_embedding(eta: &CombEmbedding, alphabet: &Alphabet) -> Result<CombEmbedding> {
    let symbols = alphabet
        .points()
        .ok_or_else(|| Error::AlphabetMismatch("extension needs an alphabet of points".into()))?;
    if eta.k() != alphabet.size() {
        return Err(Error::AlphabetMismatch(format!(
            "embedding over {} symbols, alphabet has {}",
            eta.k(),
            alphabet.size()
        )));
    }
    let m = alphabet.point_dim().unwrap_or(0);
    if m == 0 {
        return Err(Error::AlphabetMismatch("alphabet points have dimension 0".into()));
    }
    let mut coords = Vec::with_capacity(m * eta.target_dim());
    for c in eta.coords() {
        match *c {
            Coord::Const(s) => {
                let g = symbols
                    .get(s as usize)
                    .ok_or_else(|| Error::AlphabetMismatch(format!("constant {} not in alphabet", s + 1)))?;
                coords.extend(g.entries().iter().map(|&v| Coord::Const(v)));
            }
            Coord::Moving(j) => coords.extend((0..m).map(|t| Coord::Moving(j * m + t))),
        }
    }
    CombEmbedding::new(alphabet.base_k(), m * eta.source_dim(), coords)
}

/// A combinatorial line: the image of a combinatorial embedding `[k] -> [k]^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line(CombEmbedding);

impl Line {
    pub fn new(embedding: CombEmbedding) -> Result<Self> {
        if embedding.source_dim() != 1 {
            return Err(Error::InvalidEmbedding("a line needs source dimension 1".into()));
        }
        Ok(Line(embedding))
    }

    /// `word` uses `None` for moving coordinates.
    pub fn from_pattern(k: usize, word: &[Option<Symbol>]) -> Result<Self> {
        let coords = word
            .iter()
            .map(|s| match s {
                Some(s) => Coord::Const(*s),
                None => Coord::Moving(0),
            })
            .collect();
        Line::new(CombEmbedding::new(k, 1, coords)?)
    }

    pub fn parse_star_word(text: &str, k: usize) -> Result<Self> {
        let text = text.trim();
        let tokens: Vec<&str> = if text.contains('.') {
            split_dotted(text)
        } else {
            text.split("").filter(|t| !t.is_empty()).collect()
        };
        let mut word = Vec::with_capacity(tokens.len());
        for tok in tokens {
            if tok == "*" {
                word.push(None);
            } else {
                word.push(Some(parse_symbol(tok)?));
            }
        }
        Line::from_pattern(k, &word)
    }

    pub fn star_word(&self) -> String {
        self.to_string()
    }

    pub fn embedding(&self) -> &CombEmbedding {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.k()
    }

    pub fn dim(&self) -> usize {
        self.0.target_dim()
    }

    pub fn coords(&self) -> &[Coord] {
        self.0.coords()
    }

    /// The moving coordinate set `M_L` (0-based, ascending).
    pub fn moving(&self) -> Vec<usize> {
        self.coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, Coord::Moving(_)))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn point(&self, s: Symbol) -> Point {
        self.0.apply_unchecked(&[s])
    }

    /// The `k` points in symbol order.
    pub fn points(&self) -> Vec<Point> {
        (0..self.k()).map(|s| self.point(s as Symbol)).collect()
    }

    /// The symbol at which the line passes through `p`, if it does.
    pub fn symbol_of(&self, p: &Point) -> Option<Symbol> {
        self.0.preimage(p).map(|q| q.entries()[0])
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.symbol_of(p).is_some()
    }

    /// The unique line through two distinct points, if there is one.
    pub fn through(p: &Point, q: &Point, k: usize) -> Option<Line> {
        if p == q || p.dim() != q.dim() {
            return None;
        }
        let mut sp = None;
        let mut sq = None;
        let mut word = Vec::with_capacity(p.dim());
        for (&a, &b) in p.entries().iter().zip(q.entries()) {
            if a == b {
                word.push(Some(a));
            } else {
                if *sp.get_or_insert(a) != a || *sq.get_or_insert(b) != b {
                    return None;
                }
                word.push(None);
            }
        }
        Line::from_pattern(k, &word).ok()
    }

    /// Image of this line under an embedding whose source is this line's cube.
    pub fn map(&self, e: &CombEmbedding) -> Result<Line> {
        Line::new(e.compose(&self.0)?)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(
            f,
            self.coords().iter().map(|c| match c {
                Coord::Const(s) => Some(*s),
                Coord::Moving(_) => None,
            }),
        )
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KSetVerdict {
    NotQuasiline,
    QuasilineOnly,
    IsLine(Line),
}

impl KSetVerdict {
    pub fn is_quasiline(&self) -> bool {
        !matches!(self, KSetVerdict::NotQuasiline)
    }
}

fn check_same_dim(points: &[Point], k: usize) -> Result<usize> {
    let n = points.first().map_or(0, Point::dim);
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.dim() });
        }
        if !p.in_cube(k) {
            return Err(Error::AlphabetMismatch(format!("{p} is not a point of [{k}]^{n}")));
        }
    }
    Ok(n)
}

/// Classify a `k`-set of points of `[k]^n`.
pub fn classify_kset(points: &[Point], k: usize) -> Result<KSetVerdict> {
    let distinct: BTreeSet<&Point> = points.iter().collect();
    if distinct.len() != k || points.len() != k {
        return Err(Error::WrongSetSize { expected: k, got: distinct.len() });
    }
    let n = check_same_dim(points, k)?;
    let mut moving = Vec::new();
    let mut seen = vec![false; k];
    for c in 0..n {
        let first = points[0].entries()[c];
        if points.iter().all(|p| p.entries()[c] == first) {
            continue;
        }
        seen.iter_mut().for_each(|s| *s = false);
        for p in points {
            let v = p.entries()[c] as usize;
            if seen[v] {
                return Ok(KSetVerdict::NotQuasiline);
            }
            seen[v] = true;
        }
        moving.push(c);
    }
    let in_sync = points.iter().all(|p| {
        let e = p.entries();
        moving.iter().all(|&c| e[c] == e[moving[0]])
    });
    if !in_sync {
        return Ok(KSetVerdict::QuasilineOnly);
    }
    let p0 = points[0].entries();
    let word: Vec<Option<Symbol>> =
        (0..n).map(|c| if moving.contains(&c) { None } else { Some(p0[c]) }).collect();
    Ok(KSetVerdict::IsLine(Line::from_pattern(k, &word)?))
}

/// Number of lines of `[k]^n` with exactly `i` moving coordinates:
/// `C(n, i) * k^(n-i)`.
pub fn line_count(k: usize, n: usize, i: usize) -> Option<u128> {
    if i == 0 || i > n {
        return Some(0);
    }
    let binom = binomial(n as u64, i as u64)?;
    binom.checked_mul((k as u128).checked_pow((n - i) as u32)?)
}

/// Total number of lines of `[k]^n`: `(k+1)^n - k^n`.
pub fn total_line_count(k: usize, n: usize) -> Option<u128> {
    let a = ((k + 1) as u128).checked_pow(n as u32)?;
    let b = (k as u128).checked_pow(n as u32)?;
    Some(a - b)
}

pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Streams every combinatorial line of `[k]^n` exactly once, optionally
/// only those with `moving` moving coordinates.
pub struct LineIter {
    k: usize,
    filter: Option<usize>,
    digits: Option<Vec<usize>>,
}

impl Iterator for LineIter {
    type Item = Line;

    fn next(&mut self) -> Option<Line> {
        loop {
            let digits = self.digits.as_mut()?;
            let current = digits.clone();
            // odometer over {0..k-1, k=*}
            let mut i = digits.len();
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if digits[i] < self.k {
                    digits[i] += 1;
                    advanced = true;
                    break;
                }
                digits[i] = 0;
            }
            if !advanced {
                self.digits = None;
            }
            let stars = current.iter().filter(|&&d| d == self.k).count();
            if stars == 0 || self.filter.is_some_and(|i| i != stars) {
                continue;
            }
            let word: Vec<Option<Symbol>> = current
                .iter()
                .map(|&d| if d == self.k { None } else { Some(d as Symbol) })
                .collect();
            return Some(Line::from_pattern(self.k, &word).expect("star word with a star is a line"));
        }
    }
}

pub fn enumerate_lines(k: usize, n: usize, moving: Option<usize>) -> Result<LineIter> {
    if k < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!("need k >= 2 and n >= 1, got k={k}, n={n}")));
    }
    if let Some(i) = moving {
        if i < 1 || i > n {
            return Err(Error::InvalidParameter(format!("moving-set size {i} outside [1, {n}]")));
        }
    }
    Ok(LineIter { k, filter: moving, digits: Some(vec![0; n]) })
}

/// Every combinatorial line of `[k]^n` contained in `points`.
pub fn lines_within(points: &[Point], k: usize) -> Result<Vec<Line>> {
    check_same_dim(points, k)?;
    let set: HashSet<&Point> = points.iter().collect();
    let mut found = BTreeSet::new();
    // Each line is met once: as the pair (its symbol-0 point, its symbol-1 point).
    for p in &set {
        for q in &set {
            if p == q {
                continue;
            }
            let ok = p
                .entries()
                .iter()
                .zip(q.entries())
                .all(|(&a, &b)| a == b || (a == 0 && b == 1));
            if !ok {
                continue;
            }
            let line = Line::through(p, q, k).expect("differing coordinates are in sync");
            debug_assert_eq!(line.symbol_of(p), Some(0));
            if (2..k).all(|s| set.contains(&line.point(s as Symbol))) {
                found.insert(line);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Visit every quasiline inside `points` (each exactly once, points in
/// ascending order). Returns `false` if the budget ran out first.
///
/// The search fixes the first coordinate `d0` where the quasiline's points
/// differ; the point carrying symbol `s` there lies in the block of sorted
/// points sharing the common prefix and having `s` at `d0`. After two points
/// every coordinate is known to be constant or moving, which prunes the rest.
pub fn for_each_quasiline<F>(points: &[Point], k: usize, budget: &mut Budget, mut visit: F) -> Result<bool>
where
    F: FnMut(&[&Point]),
{
    let n = check_same_dim(points, k)?;
    let mut sorted: Vec<&Point> = points.iter().collect();
    sorted.sort();
    sorted.dedup();
    if k < 2 || sorted.len() < k {
        return Ok(true);
    }
    let mut ranges: Vec<&[&Point]> = Vec::with_capacity(k);
    let mut key: Vec<Symbol> = Vec::with_capacity(n);
    let mut chosen: Vec<&Point> = Vec::with_capacity(k);
    let mut constant = vec![false; n];
    for &p1 in &sorted {
        for d0 in 0..n {
            if p1.entries()[d0] != 0 {
                continue;
            }
            ranges.clear();
            for s in 0..k {
                key.clear();
                key.extend_from_slice(&p1.entries()[..d0]);
                key.push(s as Symbol);
                let lo = sorted.partition_point(|q| q.entries()[..=d0] < key[..]);
                let hi = sorted.partition_point(|q| q.entries()[..=d0] <= key[..]);
                ranges.push(&sorted[lo..hi]);
            }
            if ranges.iter().any(|r| r.is_empty()) {
                continue;
            }
            chosen.clear();
            chosen.push(p1);
            for &p2 in ranges[1] {
                if !budget.tick() {
                    return Ok(false);
                }
                for c in d0 + 1..n {
                    constant[c] = p1.entries()[c] == p2.entries()[c];
                }
                chosen.push(p2);
                if !extend_quasiline(&ranges, 2, d0, &constant, &mut chosen, budget, &mut visit) {
                    return Ok(false);
                }
                chosen.pop();
            }
        }
    }
    Ok(true)
}

fn extend_quasiline<'a, F: FnMut(&[&Point])>(
    ranges: &[&[&'a Point]],
    depth: usize,
    d0: usize,
    constant: &[bool],
    chosen: &mut Vec<&'a Point>,
    budget: &mut Budget,
    visit: &mut F,
) -> bool {
    if depth == ranges.len() {
        let mut sorted = chosen.clone();
        sorted.sort();
        visit(&sorted);
        return true;
    }
    let anchor = chosen[0].entries();
    for &cand in ranges[depth] {
        if !budget.tick() {
            return false;
        }
        let e = cand.entries();
        let fits = (d0 + 1..e.len()).all(|c| {
            if constant[c] {
                e[c] == anchor[c]
            } else {
                chosen.iter().all(|q| q.entries()[c] != e[c])
            }
        });
        if fits {
            chosen.push(cand);
            if !extend_quasiline(ranges, depth + 1, d0, constant, chosen, budget, visit) {
                return false;
            }
            chosen.pop();
        }
    }
    true
}

/// All quasilines inside `points`, each as an ascending point list, sorted.
pub fn quasilines_within(points: &[Point], k: usize) -> Result<Vec<Vec<Point>>> {
    let mut out = Vec::new();
    for_each_quasiline(points, k, &mut Budget::unlimited(), |q| {
        out.push(q.iter().map(|p| (*p).clone()).collect::<Vec<_>>())
    })?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn pts(ss: &[&str]) -> Vec<Point> {
        ss.iter().map(|s| pt(s)).collect()
    }

    #[test]
    fn point_text_is_one_based() {
        let p = pt("121");
        assert_eq!(p.entries(), &[0, 1, 0]);
        assert_eq!(p.to_string(), "121");
        let wide = Point::new(vec![0, 11, 2]);
        assert_eq!(wide.to_string(), "1.12.3");
        assert_eq!(Point::parse("1.12.3").unwrap(), wide);
        assert!(Point::parse("102").is_err());
        let lone = Point::new(vec![11]);
        assert_eq!(Point::parse(&lone.to_string()).unwrap(), lone);
    }

    #[test]
    fn code_agrees_with_order() {
        let all: Vec<Point> = cube_points(3, 4).collect();
        assert_eq!(all.len(), 81);
        let codes: Vec<u64> = all.iter().map(|p| p.code(3).unwrap()).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Point::new(vec![0; 40]).code(3), None);
    }

    #[test]
    fn identity_embedding_fixes_points() {
        let e = CombEmbedding::identity(3, 2);
        for p in cube_points(3, 2) {
            assert_eq!(e.apply(&p).unwrap(), p);
        }
    }

    #[test]
    fn line_embedding_evaluates() {
        let line = Line::parse_star_word("1*1", 3).unwrap();
        assert_eq!(line.embedding().apply(&pt("2")).unwrap(), pt("121"));
    }

    #[test]
    fn split_block_embedding() {
        let consts = BTreeMap::from([(1usize, 0 as Symbol)]);
        let e = CombEmbedding::from_partition(2, 3, &consts, &[vec![0, 2]]).unwrap();
        assert_eq!(e.apply(&pt("1")).unwrap(), pt("111"));
        assert_eq!(e.apply(&pt("2")).unwrap(), pt("212"));
    }

    #[test]
    fn embedding_errors() {
        let e = CombEmbedding::identity(3, 2);
        assert!(matches!(e.apply(&pt("1")), Err(Error::DimensionMismatch { .. })));
        assert!(e.apply(&Point::new(vec![0, 5])).is_err());
        assert!(CombEmbedding::new(3, 2, vec![Coord::Moving(0)]).is_err());
        let consts = BTreeMap::from([(0usize, 0 as Symbol)]);
        assert!(CombEmbedding::from_partition(3, 2, &consts, &[vec![0, 1]]).is_err());
    }

    #[test]
    fn compose_diagonal_into_split() {
        let inner = CombEmbedding::new(2, 1, vec![Coord::Moving(0), Coord::Moving(0)]).unwrap();
        let outer =
            CombEmbedding::new(2, 2, vec![Coord::Moving(0), Coord::Const(0), Coord::Moving(1)]).unwrap();
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c.apply(&pt("1")).unwrap(), pt("111"));
        assert_eq!(c.apply(&pt("2")).unwrap(), pt("212"));
        assert_eq!(c.blocks(), vec![vec![0, 2]]);
        assert!(inner.compose(&outer).is_err());
    }

    #[test]
    fn compose_with_identity() {
        let e = CombEmbedding::new(3, 2, vec![Coord::Moving(1), Coord::Const(2), Coord::Moving(0)]).unwrap();
        let id = CombEmbedding::identity(3, 3);
        assert_eq!(id.compose(&e).unwrap(), e);
        let a = Line::parse_star_word("*", 3).unwrap();
        assert_eq!(a.map(a.embedding()).unwrap(), a);
    }

    #[test]
    fn extension_prefixes_constant_point() {
        let alphabet = Alphabet::of_points(pts(&["121", "212", "122"]), 3).unwrap();
        let g = alphabet.index_of(&pt("121")).unwrap();
        let eta = CombEmbedding::new(3, 1, vec![Coord::Const(g), Coord::Moving(0)]).unwrap();
        let plus = extend_embedding(&eta, &alphabet).unwrap();
        assert_eq!(plus.source_dim(), 3);
        assert_eq!(plus.target_dim(), 6);
        for p in cube_points(3, 3) {
            let want = Point::concat([&pt("121"), &p]);
            assert_eq!(plus.apply(&p).unwrap(), want);
        }
        for (i, a) in alphabet.points().unwrap().iter().enumerate() {
            let word = eta.apply(&Point::new(vec![i as Symbol])).unwrap();
            assert_eq!(plus.apply(a).unwrap(), alphabet.flatten(&word).unwrap());
        }
    }

    #[test]
    fn extension_of_diagonal_is_identity() {
        let alphabet = Alphabet::of_points(pts(&["12", "21"]), 2).unwrap();
        let eta = CombEmbedding::identity(2, 1);
        assert_eq!(extend_embedding(&eta, &alphabet).unwrap(), CombEmbedding::identity(2, 2));
    }

    #[test]
    fn classify_examples() {
        let v = classify_kset(&pts(&["111", "121", "131"]), 3).unwrap();
        match v {
            KSetVerdict::IsLine(l) => {
                assert_eq!(l.star_word(), "1*1");
                assert_eq!(l.moving(), vec![1]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_kset(&pts(&["113", "122", "131"]), 3).unwrap(), KSetVerdict::QuasilineOnly);
        assert_eq!(classify_kset(&pts(&["124", "223", "322", "421"]), 4).unwrap(), KSetVerdict::QuasilineOnly);
        assert_eq!(classify_kset(&pts(&["111", "112", "121"]), 3).unwrap(), KSetVerdict::NotQuasiline);
        assert!(matches!(classify_kset(&pts(&["111", "121"]), 3), Err(Error::WrongSetSize { .. })));
        assert!(classify_kset(&pts(&["111", "121", "121"]), 3).is_err());
    }

    #[test]
    fn line_counts() {
        assert_eq!(enumerate_lines(3, 2, Some(1)).unwrap().count(), 6);
        assert_eq!(enumerate_lines(3, 1, None).unwrap().count(), 1);
        let words: Vec<String> = enumerate_lines(2, 2, None).unwrap().map(|l| l.star_word()).collect();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["**", "*1", "*2", "1*", "2*"]);
        assert!(enumerate_lines(1, 2, None).is_err());
        assert!(enumerate_lines(3, 2, Some(3)).is_err());
    }

    #[test]
    fn lines_in_a_single_line() {
        let p = pts(&["111", "121", "131"]);
        let lines = lines_within(&p, 3).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].star_word(), "1*1");
        assert_eq!(quasilines_within(&p, 3).unwrap().len(), 1);
    }

    #[test]
    fn quasiline_found_among_extra_points() {
        let p = pts(&["113", "122", "131", "111"]);
        let q = quasilines_within(&p, 3).unwrap();
        assert!(q.contains(&pts(&["113", "122", "131"])));
        assert!(lines_within(&p, 3).unwrap().is_empty());
    }

    #[test]
    fn through_two_points() {
        let l = Line::through(&pt("12"), &pt("32"), 3).unwrap();
        assert_eq!(l.star_word(), "*2");
        assert!(Line::through(&pt("12"), &pt("21"), 3).is_none());
        assert_eq!(Line::through(&pt("11"), &pt("33"), 3).unwrap().star_word(), "**");
        assert!(Line::through(&pt("11"), &pt("23"), 3).is_none());
    }
}
