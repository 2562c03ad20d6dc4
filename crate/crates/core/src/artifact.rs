//! Versioned JSON documents for hypergraphs, line systems, pictures, point
//! sets, lattice sets and run manifests.
//!
//! Every document carries a `"schema"` tag `"<kind>/<version>"`; decoding
//! checks the tag before anything else. Output is pretty-printed with keys in
//! a fixed order, so equal values encode to equal bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hjcube::{Alphabet, Line, Point};
use crate::hypergraph::{Hypergraph, VertexLabel};
use crate::intembed::LatticePoint;
use crate::linesys::LineSystem;
use crate::picture::Picture;

pub const HYPERGRAPH_SCHEMA: &str = "hypergraph/1";
pub const LINE_SYSTEM_SCHEMA: &str = "line-system/1";
pub const PICTURE_SCHEMA: &str = "picture/1";
pub const POINT_SET_SCHEMA: &str = "point-set/1";
pub const LATTICE_SET_SCHEMA: &str = "lattice-set/1";
pub const MANIFEST_SCHEMA: &str = "manifest/1";

/// A value with a JSON document form.
pub trait Artifact: Sized {
    const SCHEMA: &'static str;
    type Doc: Serialize + DeserializeOwned;

    fn to_doc(&self) -> Self::Doc;
    fn from_doc(doc: Self::Doc) -> Result<Self>;
}

#[derive(Serialize)]
struct Tagged<'a, D> {
    schema: &'a str,
    #[serde(flatten)]
    doc: &'a D,
}

pub fn encode<A: Artifact>(a: &A) -> String {
    let doc = a.to_doc();
    let mut s = serde_json::to_string_pretty(&Tagged { schema: A::SCHEMA, doc: &doc }).expect("documents serialize");
    s.push('\n');
    s
}

/// The schema tag of a JSON document.
pub fn schema_of(text: &str) -> Result<String> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(format!("not JSON: {e}")))?;
    match v.get("schema") {
        Some(Value::String(s)) => Ok(s.clone()),
        _ => Err(Error::Schema("document has no schema tag".into())),
    }
}

pub fn decode<A: Artifact>(text: &str) -> Result<A> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(format!("not JSON: {e}")))?;
    let tag = match v.as_object_mut().and_then(|o| o.remove("schema")) {
        Some(Value::String(s)) => s,
        _ => return Err(Error::Schema("document has no schema tag".into())),
    };
    if tag != A::SCHEMA {
        return Err(Error::Schema(format!("expected {}, found {tag}", A::SCHEMA)));
    }
    let doc: A::Doc = serde_json::from_value(v).map_err(|e| Error::Schema(format!("{}: {e}", A::SCHEMA)))?;
    A::from_doc(doc)
}

pub fn write<A: Artifact>(path: &Path, a: &A) -> Result<()> {
    write_text(path, &encode(a))
}

pub fn read<A: Artifact>(path: &Path) -> Result<A> {
    decode(&read_text(path)?)
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| Error::Internal(format!("cannot create {}: {e}", dir.display())))?;
        }
    }
    fs::write(path, text).map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))
}

fn parse_points(words: &[String]) -> Result<Vec<Point>> {
    words.iter().map(|w| Point::parse(w)).collect()
}

fn show_points(points: &[Point]) -> Vec<String> {
    points.iter().map(Point::to_string).collect()
}

#[derive(Serialize, Deserialize)]
pub struct HypergraphDoc {
    pub k: usize,
    pub vertices: Vec<VertexLabel>,
    /// Edges by vertex label.
    pub edges: Vec<Vec<VertexLabel>>,
}

impl Artifact for Hypergraph {
    const SCHEMA: &'static str = HYPERGRAPH_SCHEMA;
    type Doc = HypergraphDoc;

    fn to_doc(&self) -> HypergraphDoc {
        HypergraphDoc {
            k: self.k(),
            vertices: self.labels().to_vec(),
            edges: self.edges().iter().map(|e| e.iter().map(|&v| self.label(v).clone()).collect()).collect(),
        }
    }

    fn from_doc(doc: HypergraphDoc) -> Result<Self> {
        let index: BTreeMap<&VertexLabel, usize> = doc.vertices.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|l| index.get(l).copied().ok_or_else(|| Error::InvalidHypergraph(format!("unknown vertex {l}"))))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Hypergraph::new(doc.k, doc.vertices.clone(), edges)
    }
}

#[derive(Serialize, Deserialize)]
pub struct LineSystemDoc {
    /// Symbol count of the alphabet.
    pub k: usize,
    /// Point symbols of `[base_k]^m`; absent for the canonical alphabet.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<AlphabetDoc>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    pub lines: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct AlphabetDoc {
    pub base_k: usize,
    pub symbols: Vec<String>,
}

impl Artifact for LineSystem {
    const SCHEMA: &'static str = LINE_SYSTEM_SCHEMA;
    type Doc = LineSystemDoc;

    fn to_doc(&self) -> LineSystemDoc {
        let a = self.alphabet();
        LineSystemDoc {
            k: a.size(),
            alphabet: a.points().map(|ps| AlphabetDoc { base_k: a.base_k(), symbols: show_points(ps) }),
            n: self.n(),
            cap: self.cap(),
            lines: self.lines().iter().map(Line::star_word).collect(),
        }
    }

    fn from_doc(doc: LineSystemDoc) -> Result<Self> {
        let alphabet = match doc.alphabet {
            None => Alphabet::canonical(doc.k),
            Some(a) => {
                let pts = parse_points(&a.symbols)?;
                let alpha = Alphabet::of_points(pts, a.base_k)?;
                if alpha.size() != doc.k || a.symbols.len() != doc.k {
                    return Err(Error::Schema(format!("alphabet lists {} symbols, k = {}", a.symbols.len(), doc.k)));
                }
                alpha
            }
        };
        let lines = doc.lines.iter().map(|w| Line::parse_star_word(w, doc.k)).collect::<Result<Vec<_>>>()?;
        LineSystem::new(alphabet, doc.n, lines, doc.cap)
    }
}

#[derive(Serialize, Deserialize)]
pub struct PictureDoc {
    pub k: usize,
    pub m: usize,
    pub graph: HypergraphDoc,
    /// Point to vertex label.
    pub psi: BTreeMap<String, VertexLabel>,
}

impl Artifact for Picture {
    const SCHEMA: &'static str = PICTURE_SCHEMA;
    type Doc = PictureDoc;

    fn to_doc(&self) -> PictureDoc {
        let g = self.graph();
        PictureDoc {
            k: self.k(),
            m: self.m(),
            graph: g.to_doc(),
            psi: self.points().iter().zip(self.psi()).map(|(p, &v)| (p.to_string(), g.label(v).clone())).collect(),
        }
    }

    fn from_doc(doc: PictureDoc) -> Result<Self> {
        let g = Hypergraph::from_doc(doc.graph)?;
        let index = g.label_map();
        let assoc = doc
            .psi
            .iter()
            .map(|(p, l)| {
                let v = *index.get(l).ok_or_else(|| Error::InvalidHypergraph(format!("unknown vertex {l}")))?;
                Ok((Point::parse(p)?, v))
            })
            .collect::<Result<Vec<_>>>()?;
        drop(index);
        Picture::new(doc.k, doc.m, assoc, Arc::new(g))
    }
}

/// Points of `[k]^n`, kept in the given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub k: usize,
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn new(k: usize, points: Vec<Point>) -> Result<Self> {
        if let Some(first) = points.first() {
            for p in &points {
                if p.dim() != first.dim() {
                    return Err(Error::DimensionMismatch { expected: first.dim(), got: p.dim() });
                }
                if !p.in_cube(k) {
                    return Err(Error::AlphabetMismatch(format!("{p} is not a point of [{k}]^{}", p.dim())));
                }
            }
        }
        Ok(PointSet { k, points })
    }
}

#[derive(Serialize, Deserialize)]
pub struct PointSetDoc {
    pub k: usize,
    pub points: Vec<String>,
}

impl Artifact for PointSet {
    const SCHEMA: &'static str = POINT_SET_SCHEMA;
    type Doc = PointSetDoc;

    fn to_doc(&self) -> PointSetDoc {
        PointSetDoc { k: self.k, points: show_points(&self.points) }
    }

    fn from_doc(doc: PointSetDoc) -> Result<Self> {
        PointSet::new(doc.k, parse_points(&doc.points)?)
    }
}

/// Lattice points, optionally tagged with the embedding parameter that
/// produced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configuration: Option<Vec<LatticePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    pub points: Vec<LatticePoint>,
}

impl Artifact for LatticeSet {
    const SCHEMA: &'static str = LATTICE_SET_SCHEMA;
    type Doc = LatticeSet;

    fn to_doc(&self) -> LatticeSet {
        self.clone()
    }

    fn from_doc(doc: LatticeSet) -> Result<Self> {
        if let Some(d) = doc.points.first().map(LatticePoint::dim) {
            if let Some(p) = doc.points.iter().find(|p| p.dim() != d) {
                return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
            }
        }
        Ok(doc)
    }
}

/// Inputs, seed and verdicts of one run. No clock readings, so equal
/// configurations give equal manifests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdicts: BTreeMap<String, String>,
    pub results: BTreeMap<String, Value>,
    /// Artifact files written next to the manifest.
    pub files: Vec<String>,
}

impl Manifest {
    pub fn new(subcommand: &str) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: subcommand.into(),
            inputs: BTreeMap::new(),
            seed: None,
            verdicts: BTreeMap::new(),
            results: BTreeMap::new(),
            files: Vec::new(),
        }
    }
}

impl Artifact for Manifest {
    const SCHEMA: &'static str = MANIFEST_SCHEMA;
    type Doc = Manifest;

    fn to_doc(&self) -> Manifest {
        self.clone()
    }

    fn from_doc(doc: Manifest) -> Result<Self> {
        Ok(doc)
    }
}
