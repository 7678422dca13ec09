//! Command-line front end. `run` returns the exit status and the text that
//! belongs on stdout, so it can be driven from tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::families::{
    ascendant_tree, lift3d_poset, qn_extended, qn_quiver, quiver_from_triangulation, surface_arc_poset, QnSpec,
    Triangulation, Triple,
};
use crate::fixtures;
use crate::poly::{Monomial, Polynomial, VarId};
use crate::poset::{attach, ideal_function, relabel, truncate_zeros, LabeledPoset};
use crate::quiver::{Quiver, VertexId};
use crate::seedtrack::{dt_transform, search_reddening_with, PrincipalSeed, SearchConfig, SearchMode, SearchOutcome};
use crate::verify::{run_suite, VerifyOptions, SUITES};
use crate::webs::{boundary_measurement, build_web, factor_phi, weng_report, Side};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "clusterdt", version, about = "F-polynomials of cluster DT transformations and their posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    pub out: OutFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Structured,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Green,
    Reddening,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// Twice-punctured disk.
    Disk,
    /// Three-vertex acyclic quiver.
    Acyclic,
    Markov,
    /// Local quiver around an arc between two punctures.
    TwoPuncture,
    /// Hexagon glued to a 3-cycle.
    HexagonTriangle,
    /// Tetrahedral triangulation of the four-punctured sphere.
    Sphere,
}

#[derive(Args, Debug, Clone, Default)]
pub struct QuiverSource {
    /// Quiver JSON file, `-` for stdin, or inline JSON.
    #[arg(long)]
    pub quiver: Option<String>,
    /// A built-in quiver.
    #[arg(long, value_enum)]
    pub example: Option<Example>,
    /// The quiver `Q_n` on triples `(a,b,c)`.
    #[arg(long = "qn")]
    pub qn: Option<usize>,
    /// Triangulation JSON file; the quiver has one vertex per interior arc.
    #[arg(long)]
    pub surface: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate a quiver along a sequence.
    Mutate {
        #[command(flatten)]
        src: QuiverSource,
        /// Comma-separated vertex names.
        #[arg(long)]
        seq: String,
    },
    /// C-matrix, g-vectors and F-polynomials after a sequence.
    Seed {
        #[command(flatten)]
        src: QuiverSource,
        #[arg(long, default_value = "")]
        seq: String,
    },
    /// Search for a reddening or maximal green sequence.
    Search {
        #[command(flatten)]
        src: QuiverSource,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Reddening)]
        mode: ModeArg,
        /// Give up after this many visited states.
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// DT F-polynomials, along `--seq` or a searched sequence.
    Dt {
        #[command(flatten)]
        src: QuiverSource,
        #[arg(long)]
        seq: Option<String>,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Reddening)]
        mode: ModeArg,
    },
    /// Build a family poset.
    Poset {
        /// Ascendant tree of `--vertex` in the quiver given by the source flags.
        #[arg(long)]
        acyclic: bool,
        /// Arc poset of arc `--vertex` in this triangulation JSON.
        #[arg(long = "surface-poset", value_name = "FILE")]
        surface_poset: Option<String>,
        /// Lift of `--vertex a,b,c` in `Q_n`.
        #[arg(long = "qn-poset", value_name = "N")]
        qn_poset: Option<usize>,
        #[arg(long)]
        vertex: String,
        #[command(flatten)]
        src: QuiverSource,
    },
    /// Ideal function of a poset.
    Idealfn {
        #[arg(long)]
        poset: String,
    },
    /// Remove zero-labeled elements.
    Truncate {
        #[arg(long)]
        poset: String,
    },
    /// Attach pieces above every element labeled `X<at>`.
    Attach {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        at: u32,
        /// `FILE` or `FILE:MULT`; repeatable.
        #[arg(long = "piece", required = true)]
        pieces: Vec<String>,
    },
    /// Substitute variables in the labels, e.g. `--map 4=1,5=2`.
    Relabel {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        map: String,
    },
    /// Boundary measurements on the web for `Q_n`.
    Web {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Run verification suites.
    Verify {
        /// Suite name; all suites when omitted.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a quiver or a poset as DOT.
    Dot {
        #[command(flatten)]
        src: QuiverSource,
        #[arg(long)]
        poset: Option<String>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.to_string());
        }
    };
    match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => (1, format!("error: {e}\n")),
    }
}

fn read_text(spec: &str) -> CliResult<String> {
    let t = spec.trim_start();
    if t.starts_with('{') || t.starts_with("digraph") {
        return Ok(spec.to_string());
    }
    if spec == "-" {
        return Ok(std::io::read_to_string(std::io::stdin())?);
    }
    std::fs::read_to_string(PathBuf::from(spec)).map_err(|e| input(format!("cannot read `{spec}`: {e}")))
}

fn read_json(spec: &str) -> CliResult<Value> {
    Ok(serde_json::from_str(&read_text(spec)?)?)
}

fn load_quiver(src: &QuiverSource) -> CliResult<Quiver> {
    let given =
        [src.quiver.is_some(), src.example.is_some(), src.qn.is_some(), src.surface.is_some()].iter().filter(|&&b| b).count();
    if given != 1 {
        return Err(input("give exactly one of --quiver, --example, --qn, --surface"));
    }
    if let Some(q) = &src.quiver {
        return Ok(Quiver::from_json(&read_json(q)?)?);
    }
    if let Some(n) = src.qn {
        if n < 3 {
            return Err(input("--qn needs n >= 3"));
        }
        return Ok(qn_quiver(n));
    }
    if let Some(s) = &src.surface {
        return Ok(quiver_from_triangulation(&Triangulation::from_json(&read_json(s)?)?)?);
    }
    Ok(match src.example.unwrap() {
        Example::Disk => fixtures::twice_punctured_disk(),
        Example::Acyclic => fixtures::example_acyclic(),
        Example::Markov => fixtures::markov(),
        Example::TwoPuncture => fixtures::two_puncture_local(),
        Example::HexagonTriangle => fixtures::hexagon_with_triangle(),
        Example::Sphere => quiver_from_triangulation(&fixtures::four_punctured_sphere().0)?,
    })
}

fn parse_seq(q: &Quiver, s: &str) -> CliResult<Vec<VertexId>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    // Q_n names contain commas, so triples go in parentheses or use `;`
    let parts: Vec<String> = if s.contains('(') {
        s.split(')').map(|p| p.trim_matches(|c: char| c == ',' || c == '(' || c.is_whitespace()).to_string()).filter(|p| !p.is_empty()).collect()
    } else if s.contains(';') {
        s.split(';').map(|p| p.trim().to_string()).collect()
    } else {
        s.split(',').map(|p| p.trim().to_string()).collect()
    };
    parts
        .iter()
        .map(|p| {
            let k = q.position_of_name(p).ok_or_else(|| input(format!("unknown vertex `{p}`")))?;
            if !q.is_mutable(k) {
                return Err(input(format!("vertex `{p}` is frozen")));
            }
            Ok(k)
        })
        .collect()
}

fn load_poset(spec: &str) -> CliResult<LabeledPoset> {
    let text = read_text(spec)?;
    if text.trim_start().starts_with("digraph") {
        Ok(LabeledPoset::parse_dot(&text)?)
    } else {
        Ok(LabeledPoset::from_json(&serde_json::from_str(&text)?)?)
    }
}

fn mode(m: ModeArg) -> SearchMode {
    match m {
        ModeArg::Green => SearchMode::MaximalGreen,
        ModeArg::Reddening => SearchMode::Reddening,
    }
}

fn names_of(q: &Quiver, seq: &[VertexId]) -> Vec<String> {
    seq.iter().map(|&k| q.name(k).to_string()).collect()
}

fn fmt_seq(q: &Quiver, seq: &[VertexId]) -> String {
    let names = names_of(q, seq);
    if names.iter().any(|n| n.contains(',')) {
        names.iter().map(|n| format!("({n})")).collect::<Vec<_>>().join(" ")
    } else {
        names.join(",")
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn quiver_text(q: &Quiver) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mutable: {}", q.names()[..q.n_mutable()].join(" "));
    if q.n_frozen() > 0 {
        let _ = writeln!(s, "frozen: {}", q.names()[q.n_mutable()..].join(" "));
    }
    let _ = writeln!(s, "arrows:");
    for (i, j, m) in q.arrows() {
        if m == 1 {
            let _ = writeln!(s, "  {} -> {}", q.name(i), q.name(j));
        } else {
            let _ = writeln!(s, "  {} -> {} x{m}", q.name(i), q.name(j));
        }
    }
    s
}

fn emit_quiver(q: &Quiver, out: OutFormat) -> String {
    match out {
        OutFormat::Text => quiver_text(q),
        OutFormat::Structured => pretty(&q.to_json()),
        OutFormat::Dot => q.to_dot(),
    }
}

fn poset_text(p: &LabeledPoset) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "elements:");
    for (i, l) in p.labels().iter().enumerate() {
        let _ = writeln!(s, "  {i} {l}");
    }
    let _ = writeln!(s, "covers:");
    for &(u, l) in p.covers() {
        let _ = writeln!(s, "  {u} > {l}");
    }
    s
}

fn emit_poset(p: &LabeledPoset, out: OutFormat) -> String {
    match out {
        OutFormat::Text => poset_text(p),
        OutFormat::Structured => pretty(&p.to_json()),
        OutFormat::Dot => p.to_dot(),
    }
}

fn emit_poly(f: &Polynomial, out: OutFormat) -> CliResult<String> {
    match out {
        OutFormat::Text => Ok(format!("{f}\n")),
        OutFormat::Structured => Ok(pretty(&json!({"text": f.to_string(), "terms": f.to_structured()}))),
        OutFormat::Dot => Err(input("polynomials have no DOT form")),
    }
}

fn no_dot(out: OutFormat, what: &str) -> CliResult<()> {
    if out == OutFormat::Dot {
        return Err(input(format!("{what} has no DOT form")));
    }
    Ok(())
}

fn monomial_text(m: &Monomial) -> String {
    Polynomial::monomial(m.clone(), 1.into()).to_string()
}

fn dispatch(cli: &Cli) -> CliResult<(i32, String)> {
    let out = cli.out;
    match &cli.command {
        Command::Mutate { src, seq } => {
            let q = load_quiver(src)?;
            let seq = parse_seq(&q, seq)?;
            Ok((0, emit_quiver(&q.mutate_seq(&seq)?, out)))
        }
        Command::Seed { src, seq } => {
            no_dot(out, "a seed")?;
            let q = load_quiver(src)?;
            let seq = parse_seq(&q, seq)?;
            let s = PrincipalSeed::initial(&q).mutate_seq(&seq)?;
            let g = s.g_matrix()?;
            let c = s.c_matrix();
            let mq = s.quiver();
            if out == OutFormat::Structured {
                let fs: Vec<String> = s.f().iter().map(|f| f.to_string()).collect();
                return Ok((
                    0,
                    pretty(&json!({
                        "vertices": mq.names(),
                        "eps": s.eps(),
                        "C": c,
                        "g": g,
                        "F": fs,
                        "history": names_of(&q, s.history()),
                    })),
                ));
            }
            let mut t = String::new();
            let _ = writeln!(t, "history: {}", fmt_seq(&q, s.history()));
            for i in 0..s.n() {
                let color = if s.c_row(i).iter().any(|&x| x > 0) { "green" } else { "red" };
                let _ = writeln!(t, "vertex {} ({color})", q.name(i));
                let _ = writeln!(t, "  c = {:?}", c[i]);
                let _ = writeln!(t, "  g = {:?}", g[i]);
                let _ = writeln!(t, "  F = {}", s.f()[i]);
            }
            Ok((0, t))
        }
        Command::Search { src, depth, mode: m, node_limit } => {
            no_dot(out, "a search result")?;
            let q = load_quiver(src)?;
            let cfg = SearchConfig { max_depth: *depth, mode: mode(*m), node_limit: *node_limit };
            let outcome = search_reddening_with(&q, cfg);
            let (status, seq) = match &outcome {
                SearchOutcome::Found(s) => ("found", Some(s.clone())),
                SearchOutcome::NotFound => ("none", None),
                SearchOutcome::Aborted => ("aborted", None),
            };
            if out == OutFormat::Structured {
                return Ok((
                    0,
                    pretty(&json!({"status": status, "depth": depth, "sequence": seq.map(|s| names_of(&q, &s))})),
                ));
            }
            Ok((0, match seq {
                Some(s) => format!("{}\n", fmt_seq(&q, &s)),
                None => format!("{status}\n"),
            }))
        }
        Command::Dt { src, seq, depth, mode: m } => {
            no_dot(out, "a DT transformation")?;
            let q = load_quiver(src)?;
            let seq = match seq {
                Some(s) => parse_seq(&q, s)?,
                None => match search_reddening_with(&q, SearchConfig { max_depth: *depth, mode: mode(*m), node_limit: None }) {
                    SearchOutcome::Found(s) => s,
                    _ => return Err(input(format!("no reddening sequence up to depth {depth}"))),
                },
            };
            let dt = dt_transform(&q, &seq)?;
            if out == OutFormat::Structured {
                let fs: Vec<Value> =
                    (0..dt.f.len()).map(|i| json!({"vertex": q.name(i), "F": dt.f[i].to_string()})).collect();
                return Ok((
                    0,
                    pretty(&json!({
                        "sequence": names_of(&q, &dt.sequence),
                        "sigma": dt.sigma.iter().map(|&k| q.name(k)).collect::<Vec<_>>(),
                        "F": fs,
                    })),
                ));
            }
            let mut t = format!("sequence: {}\n", fmt_seq(&q, &dt.sequence));
            for (i, f) in dt.f.iter().enumerate() {
                let _ = writeln!(t, "F[{}] = {f}", q.name(i));
            }
            Ok((0, t))
        }
        Command::Poset { acyclic, surface_poset, qn_poset, vertex, src } => {
            let chosen = [*acyclic, surface_poset.is_some(), qn_poset.is_some()].iter().filter(|&&b| b).count();
            if chosen != 1 {
                return Err(input("give exactly one of --acyclic, --surface-poset, --qn-poset"));
            }
            let p = if *acyclic {
                let q = load_quiver(src)?;
                let k = q.position_of_name(vertex).ok_or_else(|| input(format!("unknown vertex `{vertex}`")))?;
                ascendant_tree(&q, k)?
            } else if let Some(s) = surface_poset {
                let t = Triangulation::from_json(&read_json(s)?)?;
                let arc: u32 = vertex.parse().map_err(|_| input("--vertex must be an arc id"))?;
                surface_arc_poset(&t, arc)?
            } else {
                let n = qn_poset.unwrap();
                let t: Triple = vertex.parse().map_err(|_| input("--vertex must be a,b,c"))?;
                lift3d_poset(n, t.a, t.b, t.c)?
            };
            Ok((0, emit_poset(&p, out)))
        }
        Command::Idealfn { poset } => Ok((0, emit_poly(&ideal_function(&load_poset(poset)?)?, out)?)),
        Command::Truncate { poset } => Ok((0, emit_poset(&truncate_zeros(&load_poset(poset)?)?, out))),
        Command::Attach { poset, at, pieces } => {
            let p = load_poset(poset)?;
            let mut ps = Vec::new();
            for spec in pieces {
                let (file, mult) = match spec.rsplit_once(':') {
                    Some((f, m)) if m.chars().all(|c| c.is_ascii_digit()) && !m.is_empty() => {
                        (f, m.parse::<usize>().map_err(|_| input("bad multiplicity"))?)
                    }
                    _ => (spec.as_str(), 1),
                };
                ps.push((load_poset(file)?, mult));
            }
            Ok((0, emit_poset(&attach(&p, VarId(*at), &ps)?, out)))
        }
        Command::Relabel { poset, map } => {
            let p = load_poset(poset)?;
            let mut m = BTreeMap::new();
            for pair in map.split(',').filter(|s| !s.trim().is_empty()) {
                let (a, b) = pair.split_once('=').ok_or_else(|| input(format!("bad mapping `{pair}`")))?;
                let parse = |x: &str| {
                    x.trim().trim_start_matches('X').parse::<u32>().map_err(|_| input(format!("bad variable `{x}`")))
                };
                m.insert(VarId(parse(a)?), VarId(parse(b)?));
            }
            Ok((0, emit_poset(&relabel(&p, &m), out)))
        }
        Command::Web { n, vertex } => web(*n, vertex.as_deref(), out),
        Command::Verify { suite, n, slow, seed } => {
            no_dot(out, "a verification report")?;
            let names: Vec<&str> = match suite {
                Some(s) if SUITES.contains(&s.as_str()) => vec![s.as_str()],
                Some(s) => return Err(input(format!("unknown suite `{s}`; known: {}", SUITES.join(", ")))),
                None => SUITES.to_vec(),
            };
            let opts = VerifyOptions { seed: *seed, slow: *slow, n: *n };
            let reports: Vec<_> = names.iter().map(|s| run_suite(s, &opts).expect("known suite")).collect();
            let ok = reports.iter().all(|r| r.passed());
            let text = if out == OutFormat::Structured {
                let v: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "suite": r.suite,
                            "passed": r.passed(),
                            "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                pretty(&json!({"passed": ok, "suites": v}))
            } else {
                // timings are left out so reruns are byte-identical
                let mut t = String::new();
                for r in &reports {
                    for c in &r.checks {
                        let mark = if c.passed { "pass" } else { "FAIL" };
                        let _ = write!(t, "[{mark}] {}: {}", r.suite, c.name);
                        if !c.passed && !c.detail.is_empty() {
                            let _ = write!(t, " ({})", c.detail);
                        }
                        t.push('\n');
                    }
                }
                let _ = writeln!(t, "{}", if ok { "all checks passed" } else { "verification FAILED" });
                t
            };
            Ok((if ok { 0 } else { 2 }, text))
        }
        Command::Dot { src, poset } => match poset {
            Some(p) => Ok((0, load_poset(p)?.to_dot())),
            None => Ok((0, load_quiver(src)?.to_dot())),
        },
    }
}

fn web(n: usize, vertex: Option<&str>, out: OutFormat) -> CliResult<(i32, String)> {
    no_dot(out, "a web report")?;
    if n < 3 {
        return Err(input("--n needs n >= 3"));
    }
    let spec = QnSpec::new(n);
    let w = build_web(n);
    let ext = qn_extended(n);
    let report = weng_report(n, Side::Right)?;
    let wanted: Option<Triple> = match vertex {
        Some(v) => Some(v.parse().map_err(|_| input("--vertex must be a,b,c"))?),
        None => None,
    };
    if let Some(t) = wanted {
        if !spec.mutable.contains(&t) {
            return Err(crate::Error::OutOfSimplex(t.a, t.b, t.c, n).into());
        }
    }
    let mut faces = Vec::new();
    for (i, fc) in report.faces.iter().enumerate() {
        if wanted.is_some_and(|t| t != fc.face) {
            continue;
        }
        let m = boundary_measurement(&w, &spec.j_set(fc.face), Side::Right)?;
        let (nf, phi) = factor_phi(&m)?;
        faces.push((i, fc, m, nf, phi));
    }
    let ok = faces.iter().all(|(_, fc, ..)| fc.monomial_identity && fc.phi_is_f);
    let text = if out == OutFormat::Structured {
        let v: Vec<Value> = faces
            .iter()
            .map(|(i, fc, m, nf, phi)| {
                json!({
                    "face": fc.face.to_string(),
                    "var": ext.quiver.var(*i).to_string(),
                    "J": spec.j_set(fc.face),
                    "M": m.to_string(),
                    "N": monomial_text(nf),
                    "Phi": phi.to_string(),
                    "terms": fc.terms,
                    "monomial_identity": fc.monomial_identity,
                    "phi_is_f": fc.phi_is_f,
                })
            })
            .collect();
        pretty(&json!({"n": n, "passed": ok, "faces": v}))
    } else {
        let mut t = String::new();
        for (i, fc, m, nf, phi) in &faces {
            let mark = if fc.monomial_identity && fc.phi_is_f { "pass" } else { "FAIL" };
            let _ = writeln!(t, "face ({}) {} J={:?}: {mark}, {} terms", fc.face, ext.quiver.var(*i), spec.j_set(fc.face), fc.terms);
            let _ = writeln!(t, "  M = {m}");
            let _ = writeln!(t, "  N = {}", monomial_text(nf));
            let _ = writeln!(t, "  Phi = {phi}");
        }
        t
    };
    Ok((if ok { 0 } else { 2 }, text))
}
