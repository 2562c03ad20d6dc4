//! Command-line front end: one subcommand per construction step, each
//! writing a manifest plus JSON artifacts.
//!
//! Exit status: 0 when every expected certificate is proven, 2 when one is
//! refuted, 3 when one is unknown or a size guard tripped, 4 on bad input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::artifact::{self, Artifact, LatticeSet, Manifest, PointSet};
use crate::budget::{Budget, Verdict};
use crate::error::{Error, Result};
use crate::hjcube::{lines_within, quasilines_within, Alphabet, Line, Point};
use crate::hypergraph::Hypergraph;
use crate::intembed::{choose_t, homothetic_copies, phi_embed, pullback_verify, scaled_congruent_copies, Configuration, EmbedParams, EmbedStatus, LatticePoint};
use crate::linesys::{chromatic_exceeds, greedy_build, is_suitable, GreedyConfig, LineSystem};
use crate::oracles::{brute_k4minus, proper_coloring_search};
use crate::picture::{amalgamate, music_alphabet, picture_zero, Picture};
use crate::pipeline::{run_construction, stage_rng, GraphSpec, PipelineConfig, StagePolicy};
use crate::shifthyp::{build_shift, certify_k43minus_free, check_mu, ell_for, window_density, window_index_set, ShiftParams};

/// Random stream labels; pipeline stage `i` uses stream `i`.
const LINES_STREAM: u64 = 1 << 32;
const AMALGAMATE_STREAM: u64 = (1 << 32) + 1;

#[derive(Parser, Debug, Clone)]
#[command(name = "hjramsey", version, about = "Hales-Jewett pictures, shift hypergraphs and their certificates")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Alphabet size (uniformity of the base hypergraph).
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Number of colours.
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// Density as an exact fraction "p/q".
    #[arg(long, global = true, value_parser = parse_ratio)]
    pub mu: Option<BigRational>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    /// Maximum point degree of a line system.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Embedding base.
    #[arg(long = "T", global = true, value_parser = parse_bigint)]
    pub t: Option<BigInt>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long = "budget-nodes", global = true)]
    pub budget_nodes: Option<u64>,
    #[arg(long = "budget-secs", global = true)]
    pub budget_secs: Option<f64>,
    #[arg(long, global = true)]
    pub stages: Option<usize>,
    /// Line count goal for greedy line systems.
    #[arg(long, global = true)]
    pub target: Option<usize>,
    /// Base hypergraph: fano, edge, path, auto, shift:N[,ELL] or a JSON file.
    #[arg(long = "G", visible_alias = "graph", global = true)]
    pub graph: Option<String>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build a shift hypergraph and certify its window density.
    Shift,
    /// Greedy suitable line system with its chromatic verdict.
    Lines,
    /// The starting picture of a base hypergraph.
    PictureZero,
    /// Amalgamate a picture along a line system over one music line.
    Amalgamate {
        #[arg(long)]
        picture: PathBuf,
        /// Vertex label of the base hypergraph.
        #[arg(long)]
        vertex: String,
        /// Line system file; generated greedily when absent.
        #[arg(long)]
        lines: Option<PathBuf>,
    },
    /// Run the stagewise construction and write its trace.
    Pipeline {
        /// Use every line of each music-line cube.
        #[arg(long)]
        full: bool,
    },
    /// Map a point set into the integer lattice and check the pullback.
    Embed {
        input: PathBuf,
        /// Target configuration, "1,2,3" or "0 0;0 1".
        #[arg(long = "F")]
        f: Option<String>,
        /// Search for T by doubling.
        #[arg(long = "auto-T")]
        auto_t: bool,
        #[arg(long = "max-doublings", default_value_t = 40)]
        max_doublings: u32,
    },
    /// Re-run the checks that apply to a JSON artifact.
    Verify {
        input: PathBuf,
        /// List the lines and quasilines of a point set.
        #[arg(long)]
        quasilines: bool,
        #[arg(long = "F")]
        f: Option<String>,
    },
}

fn parse_ratio(s: &str) -> std::result::Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("{s:?} is not a fraction p/q: {e}"))
}

fn parse_bigint(s: &str) -> std::result::Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|e| format!("{s:?} is not an integer: {e}"))
}

/// Result of one dispatch: the manifest and the artifacts to write beside
/// it, keyed by relative path.
#[derive(Clone, Debug)]
pub struct Report {
    pub manifest: Manifest,
    pub files: BTreeMap<String, String>,
    /// Verdict keys that must be proven for a zero exit.
    pub expected: Vec<String>,
}

impl Report {
    fn new(subcommand: &str, common: &Common) -> Self {
        let mut manifest = Manifest::new(subcommand);
        manifest.seed = common.seed;
        let mut put = |key: &str, v: Value| {
            if !v.is_null() {
                manifest.inputs.insert(key.into(), v);
            }
        };
        put("k", json!(common.k));
        put("r", json!(common.r));
        put("mu", json!(common.mu.as_ref().map(ToString::to_string)));
        put("n", json!(common.n));
        put("ell", json!(common.ell));
        put("d", json!(common.d));
        put("T", json!(common.t.as_ref().map(ToString::to_string)));
        put("budget_nodes", json!(common.budget_nodes));
        put("budget_secs", json!(common.budget_secs));
        put("stages", json!(common.stages));
        put("target", json!(common.target));
        put("G", json!(common.graph));
        Report { manifest, files: BTreeMap::new(), expected: Vec::new() }
    }

    fn input(&mut self, key: &str, v: Value) {
        self.manifest.inputs.insert(key.into(), v);
    }

    fn result(&mut self, key: &str, v: Value) {
        self.manifest.results.insert(key.into(), v);
    }

    fn verdict<W>(&mut self, key: &str, v: &Verdict<W>, expected: bool) {
        self.manifest.verdicts.insert(key.into(), v.label().into());
        if expected {
            self.expected.push(key.into());
        }
    }

    fn file<A: Artifact>(&mut self, path: &str, a: &A) {
        self.files.insert(path.into(), artifact::encode(a));
        self.manifest.files.push(path.into());
    }

    pub fn exit_code(&self) -> i32 {
        let labels: Vec<&str> = self.expected.iter().map(|k| self.manifest.verdicts[k].as_str()).collect();
        if labels.contains(&"refuted") {
            2
        } else if labels.contains(&"unknown") {
            3
        } else {
            0
        }
    }

    /// Write the artifacts and `manifest.json` under `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        for (rel, text) in &self.files {
            artifact::write_text(&dir.join(rel), text)?;
        }
        artifact::write(&dir.join("manifest.json"), &self.manifest)
    }
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuard(_) => 3,
        Error::NotCertified(_) => 2,
        Error::Internal(_) => 1,
        _ => 4,
    }
}

/// Parse arguments, dispatch, write artifacts and print the manifest.
/// Returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = match dispatch(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    if let Some(dir) = &cfg.common.out {
        if let Err(e) = report.write(dir) {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    }
    print!("{}", artifact::encode(&report.manifest));
    report.exit_code()
}

pub fn dispatch(cfg: &RunConfig) -> Result<Report> {
    let c = &cfg.common;
    match &cfg.command {
        Command::Shift => shift(c),
        Command::Lines => lines(c),
        Command::PictureZero => picture_zero_cmd(c),
        Command::Amalgamate { picture, vertex, lines } => amalgamate_cmd(c, picture, vertex, lines.as_deref()),
        Command::Pipeline { full } => pipeline(c, *full),
        Command::Embed { input, f, auto_t, max_doublings } => embed(c, input, f.as_deref(), *auto_t, *max_doublings),
        Command::Verify { input, quasilines, f } => verify(c, input, *quasilines, f.as_deref()),
    }
}

fn budget(c: &Common, default_nodes: u64) -> Budget {
    let b = Budget::nodes(c.budget_nodes.unwrap_or(default_nodes));
    match c.budget_secs {
        Some(s) if s > 0.0 => b.with_deadline(Duration::from_secs_f64(s)),
        _ => b,
    }
}

fn need_seed(c: &Common, what: &str) -> Result<u64> {
    c.seed.ok_or_else(|| Error::InvalidParameter(format!("{what} is randomized and needs --seed")))
}

fn checked_mu(k: usize, mu: Option<&BigRational>) -> Result<Option<BigRational>> {
    if let Some(mu) = mu {
        check_mu(k, mu)?;
    }
    Ok(mu.cloned())
}

fn default_mu() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn words(points: &[Point]) -> Vec<String> {
    points.iter().map(Point::to_string).collect()
}

fn shift(c: &Common) -> Result<Report> {
    let mut rep = Report::new("shift", c);
    let k = c.k.unwrap_or(3);
    let mu = checked_mu(k, c.mu.as_ref())?;
    let ell = match (c.ell, &mu) {
        (Some(l), _) => l,
        (None, Some(mu)) => ell_for(k, mu)?,
        (None, None) => return Err(Error::InvalidParameter("shift needs --ell or --mu".into())),
    };
    let n = c.n.unwrap_or(ell + k - 1);
    let mut params = ShiftParams::new(k, ell, n)?;
    params.mu = mu.clone();
    let s = build_shift(&params)?;
    rep.result("k", json!(k));
    rep.result("ell", json!(ell));
    rep.result("n", json!(n));
    rep.result("vertices", json!(s.graph.num_vertices()));
    rep.result("edges", json!(s.graph.num_edges()));
    if let Ok(i) = window_index_set(k, ell) {
        rep.result("index_set", json!(i));
        let density = window_density(k, ell)?;
        rep.result("window_density", json!(density.to_string()));
        if let Some(mu) = &mu {
            let v: Verdict<()> = if density >= *mu { Verdict::Proven } else { Verdict::Refuted(()) };
            rep.verdict("window-density", &v, true);
        }
    } else if mu.is_some() {
        rep.verdict::<()>("window-density", &Verdict::Refuted(()), true);
    }
    if k == 3 {
        let v: Verdict<String> = match certify_k43minus_free(&s) {
            Ok(_) => Verdict::Proven,
            Err(e) => Verdict::Refuted(e.to_string()),
        };
        rep.verdict("k43-minus-free", &v, true);
    }
    rep.file("graph.json", &s.graph);
    Ok(rep)
}

fn lines(c: &Common) -> Result<Report> {
    let mut rep = Report::new("lines", c);
    let seed = need_seed(c, "lines")?;
    let k = c.k.unwrap_or(3);
    let n = c.n.unwrap_or(2);
    let d = c.d.unwrap_or(4);
    let r = c.r.unwrap_or(2);
    let cfg = GreedyConfig::new(Some(d), c.target.unwrap_or(usize::MAX));
    let out = greedy_build(&Alphabet::canonical(k), n, &cfg, &mut stage_rng(seed, LINES_STREAM))?;
    let sys = out.system;
    rep.result("lines", json!(sys.len()));
    rep.result("max_degree", json!(sys.max_degree()));
    rep.result("proposals", json!(out.proposals));
    rep.result("reached_target", json!(out.reached_target));
    let suitable: Verdict<String> = match is_suitable(&sys, d) {
        Ok(()) => Verdict::Proven,
        Err(v) => Verdict::Refuted(format!("{v:?}")),
    };
    rep.verdict("suitable", &suitable, true);
    let chromatic = chromatic_exceeds(&sys, r, &mut budget(c, 1_000_000))?;
    rep.verdict("chromatic-exceeds", &chromatic, false);
    if let Some(col) = chromatic.witness() {
        let colouring: BTreeMap<String, u32> = col.iter().map(|(p, &c)| (p.to_string(), c + 1)).collect();
        rep.result("colouring", json!(colouring));
    }
    rep.file("lines.json", &sys);
    Ok(rep)
}

fn resolve_graph(c: &Common, k: usize) -> Result<Hypergraph> {
    let spec = c.graph.as_deref().unwrap_or("fano");
    match spec {
        "fano" => Ok(Hypergraph::fano()),
        "edge" => Hypergraph::from_int_edges(k, k, &[(1..=k as i64).collect()]),
        "path" => {
            let a: Vec<i64> = (1..=k as i64).collect();
            let b: Vec<i64> = (k as i64..=2 * k as i64 - 1).collect();
            Hypergraph::from_int_edges(k, 2 * k - 1, &[a, b])
        }
        _ => match graph_spec(c, k)? {
            GraphSpec::Given(h) => Ok(h),
            GraphSpec::Fano => Ok(Hypergraph::fano()),
            GraphSpec::Shift { n, ell } => {
                let ell = match ell {
                    Some(l) => l,
                    None => ell_for(k, c.mu.as_ref().unwrap_or(&default_mu()))?,
                };
                Ok(build_shift(&ShiftParams::new(k, ell, n)?)?.graph)
            }
            GraphSpec::Auto => {
                let ell = ell_for(k, c.mu.as_ref().unwrap_or(&default_mu()))?;
                Ok(build_shift(&ShiftParams::new(k, ell, ell + k - 1)?)?.graph)
            }
        },
    }
}

fn graph_spec(c: &Common, k: usize) -> Result<GraphSpec> {
    let spec = c.graph.as_deref().unwrap_or(if k == 3 { "fano" } else { "auto" });
    if let Some(rest) = spec.strip_prefix("shift:") {
        let nums: Vec<usize> = rest
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad shift spec {spec:?}"))))
            .collect::<Result<_>>()?;
        return match nums.as_slice() {
            [n] => Ok(GraphSpec::Shift { n: *n, ell: None }),
            [n, ell] => Ok(GraphSpec::Shift { n: *n, ell: Some(*ell) }),
            _ => Err(Error::InvalidParameter(format!("bad shift spec {spec:?}"))),
        };
    }
    match spec {
        "fano" => Ok(GraphSpec::Fano),
        "auto" => Ok(GraphSpec::Auto),
        "edge" | "path" => {
            let mut c2 = c.clone();
            c2.graph = Some(spec.into());
            Ok(GraphSpec::Given(resolve_graph(&c2, k)?))
        }
        path => Ok(GraphSpec::Given(artifact::read(Path::new(path))?)),
    }
}

fn picture_zero_cmd(c: &Common) -> Result<Report> {
    let mut rep = Report::new("picture-zero", c);
    let k = c.k.unwrap_or(3);
    let g = Arc::new(resolve_graph(c, k)?);
    let (p0, edge_lines) = picture_zero(g.clone(), k)?;
    let v = p0.verify(&mut budget(c, 50_000_000))?;
    rep.verdict("is-picture", &v, true);
    rep.result("m", json!(p0.m()));
    rep.result("points", json!(p0.len()));
    rep.result("edge_lines", json!(edge_lines.iter().map(Line::star_word).collect::<Vec<_>>()));
    rep.file("graph.json", &*g);
    rep.file("picture0.json", &p0);
    Ok(rep)
}

fn find_vertex(g: &Hypergraph, label: &str) -> Result<usize> {
    (0..g.num_vertices())
        .find(|&v| g.label(v).to_string() == label)
        .ok_or_else(|| Error::InvalidParameter(format!("no vertex labelled {label:?}")))
}

fn amalgamate_cmd(c: &Common, picture: &Path, vertex: &str, lines_path: Option<&Path>) -> Result<Report> {
    let mut rep = Report::new("amalgamate", c);
    rep.input("picture", json!(picture.display().to_string()));
    rep.input("vertex", json!(vertex));
    let pic: Picture = artifact::read(picture)?;
    let x = find_vertex(pic.graph(), vertex)?;
    let alphabet = music_alphabet(&pic, x)?;
    let sys = match lines_path {
        Some(p) => {
            rep.input("lines", json!(p.display().to_string()));
            let sys: LineSystem = artifact::read(p)?;
            if sys.alphabet() != &alphabet {
                return Err(Error::AlphabetMismatch("line system is not over this music line".into()));
            }
            sys
        }
        None => {
            let seed = need_seed(c, "amalgamate without --lines")?;
            let d = c.d.unwrap_or(4);
            let cfg = GreedyConfig::new(Some(d), c.target.unwrap_or(usize::MAX));
            greedy_build(&alphabet, c.n.unwrap_or(2), &cfg, &mut stage_rng(seed, AMALGAMATE_STREAM))?.system
        }
    };
    if let Some(d) = c.d {
        let v: Verdict<String> = match is_suitable(&sys, d) {
            Ok(()) => Verdict::Proven,
            Err(e) => Verdict::Refuted(format!("{e:?}")),
        };
        rep.verdict("suitable", &v, true);
    }
    let am = amalgamate(&pic, x, &sys)?;
    let v = am.picture.verify(&mut budget(c, 50_000_000))?;
    rep.verdict("is-picture", &v, true);
    rep.result("copies", json!(am.copies.len()));
    rep.result("m", json!(am.picture.m()));
    rep.result("points", json!(am.picture.len()));
    rep.file("lines.json", &sys);
    rep.file("picture.json", &am.picture);
    Ok(rep)
}

fn pipeline(c: &Common, full: bool) -> Result<Report> {
    let mut rep = Report::new("pipeline", c);
    rep.input("full", json!(full));
    let seed = need_seed(c, "pipeline")?;
    let k = c.k.unwrap_or(3);
    let r = c.r.unwrap_or(2);
    let mu = c.mu.clone().unwrap_or_else(default_mu);
    check_mu(k, &mu)?;
    let graph = graph_spec(c, k)?;
    let n = c.n.unwrap_or(2);
    let policy = if full {
        StagePolicy::Full { n }
    } else {
        StagePolicy::Sparse { n, d: c.d.unwrap_or(4), target: c.target.unwrap_or(usize::MAX), max_rejections: 10_000 }
    };
    let mut cfg = PipelineConfig::new(k, r, mu, graph, vec![policy; c.stages.unwrap_or(1)], seed);
    if let Some(b) = c.budget_nodes {
        cfg.chromatic_budget = b;
        cfg.picture_budget = b;
    }
    let trace = run_construction(&cfg)?;
    let g = &trace.graph;
    rep.verdict("base-chromatic-exceeds", &trace.base.chromatic, true);
    rep.result("mu_evidence", json!(trace.base.mu.label()));
    rep.result("k4_evidence", json!(trace.base.k4_free.label()));
    rep.result("dimensions", json!(trace.dimensions()));
    rep.result("truncated_at", json!(trace.truncated_at));
    rep.result("edge_lines", json!(trace.edge_lines.iter().map(Line::star_word).collect::<Vec<_>>()));
    rep.verdict("picture0", &trace.picture0_verdict, true);
    rep.file("graph.json", &**g);
    rep.file("picture0.json", &trace.picture0);
    let mut stages = Vec::new();
    for s in &trace.stages {
        let dir = format!("stage-{}", s.index);
        rep.verdict(&format!("{dir}/picture"), &s.picture_verdict, true);
        if let Some(ok) = s.suitable {
            let v: Verdict<()> = if ok { Verdict::Proven } else { Verdict::Refuted(()) };
            rep.verdict(&format!("{dir}/suitable"), &v, true);
        }
        if let Some(ch) = &s.chromatic {
            rep.verdict(&format!("{dir}/chromatic-exceeds"), ch, false);
        }
        if let Some(l) = &s.lines {
            rep.file(&format!("{dir}/lines.json"), l);
        }
        rep.file(&format!("{dir}/picture.json"), &s.picture);
        stages.push(json!({
            "index": s.index,
            "vertex": g.label(s.vertex).to_string(),
            "policy": s.policy.label(),
            "n": s.n,
            "m": s.m,
            "lines": s.lines.as_ref().map(LineSystem::len),
            "points": s.picture.len(),
        }));
    }
    rep.result("stages", Value::Array(stages));
    rep.verdict("final-picture", trace.final_verdict(), true);
    Ok(rep)
}

fn load_points(path: &Path) -> Result<(usize, Vec<Point>)> {
    let text = artifact::read_text(path)?;
    let schema = artifact::schema_of(&text)?;
    if schema == artifact::PICTURE_SCHEMA {
        let p: Picture = artifact::decode(&text)?;
        Ok((p.k(), p.points().to_vec()))
    } else {
        let s: PointSet = artifact::decode(&text)?;
        Ok((s.k, s.points))
    }
}

fn embed(c: &Common, input: &Path, f: Option<&str>, auto_t: bool, max_doublings: u32) -> Result<Report> {
    let mut rep = Report::new("embed", c);
    rep.input("input", json!(input.display().to_string()));
    rep.input("F", json!(f));
    rep.input("auto_T", json!(auto_t));
    let (k, x) = load_points(input)?;
    let f = match f {
        Some(s) => Configuration::parse(s)?,
        None => Configuration::interval(k),
    };
    if f.k() != k {
        return Err(Error::WrongSetSize { expected: k, got: f.k() });
    }
    let nodes = c.budget_nodes.unwrap_or(10_000_000);
    let mut params = match (&c.t, auto_t) {
        (Some(t), false) => EmbedParams::new(t.clone(), x.first().map_or(0, Point::dim))?,
        (start, _) => choose_t(&x, &f, start.clone(), max_doublings, nodes)?,
    };
    let image = phi_embed(&x, &f, &mut params)?;
    let pullback = if params.status == EmbedStatus::Unknown {
        Verdict::Unknown { spent: nodes }
    } else {
        pullback_verify(&x, &f, &mut params, &mut budget(c, nodes))?
    };
    rep.verdict("pullback", &pullback, true);
    if let Some(w) = pullback.witness() {
        rep.result("pullback_counterexample", json!(words(w)));
    }
    let lines = lines_within(&x, k)?;
    let index: BTreeMap<&Point, usize> = x.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let homothetic = lines.iter().all(|l| {
        let img: Vec<LatticePoint> = l.points().iter().map(|p| image[index[p]].clone()).collect();
        !homothetic_copies(&img, &f).is_empty()
    });
    let v: Verdict<()> = if homothetic { Verdict::Proven } else { Verdict::Refuted(()) };
    rep.verdict("lines-homothetic", &v, true);
    rep.result("T", json!(params.t.to_string()));
    rep.result("status", json!(params.status));
    rep.result("lines", json!(lines.len()));
    rep.file(
        "lattice.json",
        &LatticeSet { configuration: Some(f.points().to_vec()), t: Some(params.t.to_string()), points: image },
    );
    Ok(rep)
}

fn verify(c: &Common, input: &Path, quasilines: bool, f: Option<&str>) -> Result<Report> {
    let mut rep = Report::new("verify", c);
    rep.input("input", json!(input.display().to_string()));
    rep.input("quasilines", json!(quasilines));
    let text = artifact::read_text(input)?;
    let schema = artifact::schema_of(&text)?;
    rep.result("schema", json!(schema));
    match schema.as_str() {
        artifact::PICTURE_SCHEMA | artifact::POINT_SET_SCHEMA => {
            let (k, points) = load_points(input)?;
            if schema == artifact::PICTURE_SCHEMA {
                let p: Picture = artifact::decode(&text)?;
                let v = p.verify(&mut budget(c, 50_000_000))?;
                rep.verdict("is-picture", &v, true);
                if let Some(w) = v.witness() {
                    rep.result("counterexample", json!(words(w)));
                }
            }
            if quasilines || schema == artifact::POINT_SET_SCHEMA {
                let ls = lines_within(&points, k)?;
                let qs = quasilines_within(&points, k)?;
                rep.result("lines", json!(ls.len()));
                rep.result("quasilines", json!(qs.len()));
                rep.result("line_words", json!(ls.iter().map(Line::star_word).collect::<Vec<_>>()));
                rep.result("quasiline_sets", json!(qs.iter().map(|q| words(q)).collect::<Vec<_>>()));
            }
        }
        artifact::LINE_SYSTEM_SCHEMA => {
            let sys: LineSystem = artifact::decode(&text)?;
            rep.result("lines", json!(sys.len()));
            rep.result("max_degree", json!(sys.max_degree()));
            if let Some(d) = c.d {
                let v: Verdict<String> = match is_suitable(&sys, d) {
                    Ok(()) => Verdict::Proven,
                    Err(e) => Verdict::Refuted(format!("{e:?}")),
                };
                rep.verdict("suitable", &v, true);
            }
            if let Some(r) = c.r {
                let v = chromatic_exceeds(&sys, r, &mut budget(c, 1_000_000))?;
                rep.verdict("chromatic-exceeds", &v, true);
            }
        }
        artifact::HYPERGRAPH_SCHEMA => {
            let g: Hypergraph = artifact::decode(&text)?;
            rep.result("vertices", json!(g.num_vertices()));
            rep.result("edges", json!(g.num_edges()));
            rep.result("linear", json!(g.is_linear()));
            if let Some(r) = c.r {
                let v = proper_coloring_search(&g, r, &mut budget(c, 1_000_000));
                rep.verdict("chromatic-exceeds", &v, true);
            }
            if g.k() == 3 {
                if g.num_vertices() > 60 {
                    return Err(Error::SizeGuard(format!("{} vertices for the 4-subset scan", g.num_vertices())));
                }
                let v: Verdict<[usize; 4]> = match brute_k4minus(&g) {
                    None => Verdict::Proven,
                    Some(w) => Verdict::Refuted(w),
                };
                rep.verdict("k43-minus-free", &v, true);
            }
        }
        artifact::LATTICE_SET_SCHEMA => {
            let set: LatticeSet = artifact::decode(&text)?;
            let f = match (f, &set.configuration) {
                (Some(s), _) => Configuration::parse(s)?,
                (None, Some(pts)) => Configuration::new(pts.clone())?,
                (None, None) => return Err(Error::InvalidParameter("lattice set without a configuration needs --F".into())),
            };
            let found = scaled_congruent_copies(&set.points, &f, &mut budget(c, 10_000_000));
            rep.result("congruent_copies", json!(found.copies.len()));
            let v: Verdict<Vec<usize>> = match (found.copies.first(), found.complete) {
                (Some((t, _)), _) => Verdict::Refuted(t.clone()),
                (None, true) => Verdict::Proven,
                (None, false) => Verdict::Unknown { spent: 0 },
            };
            rep.verdict("f-free", &v, false);
        }
        other => return Err(Error::Schema(format!("nothing to verify in a {other} document"))),
    }
    Ok(rep)
}
