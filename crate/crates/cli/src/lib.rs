//! `gsc`: every pipeline stage as a subcommand with a versioned JSON report.
//!
//! Exit codes: 0 whenever a result was computed (including failing
//! certificates and nontrivial verdicts), 2 for input and parse errors,
//! 3 when a search or enumeration budget runs out.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gsc_core::cancel::{longest_doublet, product_graph, DoubletWitness};
use gsc_core::dehn::verdict_json;
use gsc_core::geometry::{
    check_filling, isoperimetric_constant, verify_embedding, verify_shortest_relation, FillingCertificateJson,
    DEFAULT_BALL_BUDGET,
};
use gsc_core::lgraph::{anneal_labelling, random_labelling, DEFAULT_LABELLING_ATTEMPTS};
use gsc_core::present::{render_json, render_text};
use gsc_core::{cayley_ball, certify, fill, presentation, Alphabet, Dehn, Error, LabelledGraph, Shape, Word};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_RELATION_BUDGET: u64 = 1_000_000;
pub const DEFAULT_RANDOM_TRIES: u64 = 1000;
pub const DEFAULT_ANNEAL_STEPS: usize = 200_000;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "gsc", version, about = "Graphical small cancellation toolkit")]
pub struct Cli {
    /// Human-readable output instead of the JSON report.
    #[arg(long, global = true)]
    pub text: bool,
    /// Add wall-clock timing to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify 6*Lambda < girth.
    Check(GraphArg),
    /// Longest doublet and its witness.
    Doublets(GraphArg),
    /// Presentation read off a spanning-tree cycle family.
    Present(GraphArg),
    /// Word problem by Dehn reduction.
    Wp {
        graph: PathBuf,
        word: String,
    },
    /// Equality of two words in the presented group.
    Equal {
        graph: PathBuf,
        left: String,
        right: String,
    },
    /// Fill a closed-path word with tiles of length at most 3*diameter.
    Fill {
        graph: PathBuf,
        word: String,
        /// Base vertex of the closed path (default: least vertex name).
        #[arg(long)]
        start: Option<String>,
    },
    /// Re-check a filling certificate (a `fill` report or a bare certificate).
    VerifyFill {
        graph: PathBuf,
        certificate: PathBuf,
    },
    /// Isoperimetric constant (g - 6*Lambda)/3.
    Constant(GraphArg),
    /// Ball around the identity in the Cayley graph.
    Ball {
        graph: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Maximum number of elements.
        #[arg(long, default_value_t = DEFAULT_BALL_BUDGET)]
        budget: usize,
    },
    /// No nontrivial relation shorter than the girth.
    VerifyRelation {
        graph: PathBuf,
        /// Word budget; above it the check samples.
        #[arg(long, default_value_t = DEFAULT_RELATION_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The graph embeds isometrically in the Cayley graph.
    VerifyEmbedding {
        graph: PathBuf,
        /// Pair distance bound (default: diameter).
        #[arg(long)]
        radius: Option<usize>,
        /// Ball element budget.
        #[arg(long, default_value_t = DEFAULT_BALL_BUDGET)]
        budget: usize,
    },
    /// Seeded random folded labelling of a graph shape.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct GraphArg {
    pub graph: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    Cycle,
    Path,
    Theta,
    /// Complete graph on `--k` vertices, each edge subdivided into `--arm-len` edges.
    Complete,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, value_enum)]
    pub shape: ShapeKind,
    /// Vertex count for cycle and path.
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long)]
    pub arms: Option<usize>,
    #[arg(long)]
    pub arm_len: Option<usize>,
    /// Theta arm lengths, comma-separated (overrides --arms/--arm-len).
    #[arg(long, value_delimiter = ',')]
    pub arm_lengths: Option<Vec<usize>>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of generators (named a, b, c, ...).
    #[arg(long)]
    pub alphabet: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Try successive seeds until the certificate passes.
    #[arg(long)]
    pub until_pass: bool,
    /// Seeds to try with --until-pass.
    #[arg(long, default_value_t = DEFAULT_RANDOM_TRIES)]
    pub budget: u64,
    /// Search for a labelling with longest doublet at most this value.
    #[arg(long)]
    pub anneal: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ANNEAL_STEPS)]
    pub anneal_steps: usize,
}

/// Everything a run writes; `main` copies it to the process streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InputFile {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Inputs,
    pub result: Value,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct Inputs {
    pub files: Vec<InputFile>,
    pub params: serde_json::Map<String, Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// An operational failure and its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::RetriesExhausted(_) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

/// What a subcommand produced: the JSON payload and its text rendering.
struct Computed {
    result: Value,
    text: String,
    warnings: Vec<String>,
}

#[derive(Default)]
struct Ctx {
    inputs: Inputs,
}

impl Ctx {
    fn read(&mut self, role: &'static str, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        self.inputs.files.push(InputFile { role: role.to_string(), path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|_| input_error(format!("{}: not UTF-8", path.display())))
    }

    fn graph(&mut self, path: &Path) -> Result<LabelledGraph, Failure> {
        let text = self.read("graph", path)?;
        LabelledGraph::parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.params.insert(key.to_string(), value.into());
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let name = command_name(&cli.command);
    let started = Instant::now();
    let mut ctx = Ctx::default();
    match execute(&cli.command, &mut ctx) {
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("gsc {name}: {}\n", f.message) },
        Ok(done) => {
            let stderr: String = done.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            let stdout = if cli.text {
                done.text
            } else {
                let report = RunReport {
                    schema_version: SCHEMA_VERSION,
                    command: name.to_string(),
                    inputs: ctx.inputs,
                    result: done.result,
                    warnings: done.warnings,
                    timing: cli.timing.then(|| Timing { elapsed_ms: started.elapsed().as_secs_f64() * 1e3 }),
                };
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            };
            Outcome { code: EXIT_OK, stdout, stderr }
        }
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Doublets(_) => "doublets",
        Command::Present(_) => "present",
        Command::Wp { .. } => "wp",
        Command::Equal { .. } => "equal",
        Command::Fill { .. } => "fill",
        Command::VerifyFill { .. } => "verify-fill",
        Command::Constant(_) => "constant",
        Command::Ball { .. } => "ball",
        Command::VerifyRelation { .. } => "verify-relation",
        Command::VerifyEmbedding { .. } => "verify-embedding",
        Command::Random(_) => "random",
    }
}

fn parse_word(g: &LabelledGraph, text: &str) -> Result<Word, Failure> {
    g.alphabet().parse_word(text).map_err(|e| input_error(format!("word `{text}`: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload serializes")
}

/// Payload for checks whose precondition is a passing certificate.
fn not_applicable(reason: &str) -> Computed {
    Computed {
        result: json!({ "applicable": false, "reason": reason }),
        text: format!("not applicable: {reason}\n"),
        warnings: Vec::new(),
    }
}

fn execute(command: &Command, ctx: &mut Ctx) -> Result<Computed, Failure> {
    match command {
        Command::Check(a) => {
            let g = ctx.graph(&a.graph)?;
            let cert = certify(&g);
            let mut text = format!(
                "verdict {}\nfolded {}\ngirth {}\ndiameter {}\n",
                if cert.passed() { "pass" } else { "fail" },
                cert.folded,
                cert.girth.map_or("none".to_string(), |x| x.to_string()),
                cert.diameter
            );
            if let Some(l) = cert.lambda {
                text.push_str(&format!("lambda {}\n", lambda_text(l)));
            }
            if let Some(r) = &cert.ratio {
                text.push_str(&format!("ratio {r}\n"));
            }
            Ok(Computed { result: to_value(&cert), text, warnings: g.warnings().to_vec() })
        }
        Command::Doublets(a) => {
            let g = ctx.graph(&a.graph)?;
            let pg = product_graph(&g)?;
            let report = longest_doublet(&g)?;
            let name = |v: usize| g.vertex_name(v).to_string();
            let s = g.alphabet();
            let witness = match &report.witness {
                DoubletWitness::None => Value::Null,
                DoubletWitness::Word { word, starts } => json!({
                    "kind": "doublet",
                    "word": s.format_word(word),
                    "starts": [name(starts.0), name(starts.1)],
                }),
                DoubletWitness::Cycle { states, word } => json!({
                    "kind": "cycle",
                    "word": s.format_word(word),
                    "states": states.iter().map(|&(p, q)| [name(p), name(q)]).collect::<Vec<_>>(),
                }),
            };
            let mut text = format!("lambda {}\n", lambda_text(report.lambda));
            if let Some(w) = witness.get("word").and_then(Value::as_str) {
                text.push_str(&format!("witness {w}\n"));
            }
            let result = json!({
                "lambda": report.lambda,
                "witness": witness,
                "product_states": pg.state_count(),
                "product_transitions": pg.transitions().len(),
            });
            Ok(Computed { result, text, warnings: g.warnings().to_vec() })
        }
        Command::Present(a) => {
            let g = ctx.graph(&a.graph)?;
            let p = presentation(&g, &g.spanning_tree());
            let mut warnings = g.warnings().to_vec();
            warnings.extend(p.warnings.iter().cloned());
            Ok(Computed { result: render_json(&p), text: format!("{}\n", render_text(&p)), warnings })
        }
        Command::Wp { graph, word } => {
            let g = ctx.graph(graph)?;
            ctx.param("word", word.as_str());
            let w = parse_word(&g, word)?;
            let dehn = Dehn::new(&g)?;
            let verdict = dehn.is_trivial(&w);
            let mut warnings = g.warnings().to_vec();
            if !dehn.is_certified() {
                warnings.push("certificate did not pass; a reduced nonempty word is reported irreducible".into());
            }
            let result = verdict_json(&g, &w, &verdict);
            Ok(Computed { text: verdict_text(&result), result, warnings })
        }
        Command::Equal { graph, left, right } => {
            let g = ctx.graph(graph)?;
            ctx.param("left", left.as_str());
            ctx.param("right", right.as_str());
            let (u, v) = (parse_word(&g, left)?, parse_word(&g, right)?);
            let dehn = Dehn::new(&g)?;
            let verdict = dehn.equal(&u, &v);
            let mut warnings = g.warnings().to_vec();
            if !dehn.is_certified() {
                warnings.push("certificate did not pass; inequality cannot be concluded".into());
            }
            let s = g.alphabet();
            let mut result = verdict_json(&g, &u.concat(&v.invert()), &verdict);
            result["left"] = json!(s.format_word(&u));
            result["right"] = json!(s.format_word(&v));
            result["equal"] = json!(verdict.is_trivial());
            Ok(Computed { text: verdict_text(&result), result, warnings })
        }
        Command::Fill { graph, word, start } => {
            let g = ctx.graph(graph)?;
            ctx.param("word", word.as_str());
            let start = match start {
                Some(name) => {
                    ctx.param("start", name.as_str());
                    g.vertex(name)?
                }
                None => 0,
            };
            let w = parse_word(&g, word)?;
            let cert = fill(&g, start, &w)?;
            let girth = g.girth().unwrap_or(0);
            let longest = cert.tiles.iter().map(|t| t.word.len()).max().unwrap_or(0);
            let result = json!({
                "certificate": to_value(&cert.to_json(&g)),
                "boundary_length": w.len(),
                "tile_count": cert.tile_count,
                "longest_tile": longest,
                "tile_bound": 3 * g.diameter(),
                "girth": girth,
                "within_bound": girth * cert.tile_count <= 3 * w.len(),
            });
            let mut text = format!("tiles {} (boundary {}, girth {})\n", cert.tile_count, w.len(), girth);
            for t in &cert.tiles {
                text.push_str(&format!("{} @ {}\n", g.alphabet().format_word(&t.word), g.vertex_name(t.start)));
            }
            Ok(Computed { result, text, warnings: g.warnings().to_vec() })
        }
        Command::VerifyFill { graph, certificate } => {
            let g = ctx.graph(graph)?;
            let raw = ctx.read("certificate", certificate)?;
            let value: Value = serde_json::from_str(&raw).map_err(|e| input_error(format!("certificate: {e}")))?;
            let body = value.get("result").and_then(|r| r.get("certificate")).cloned().unwrap_or(value);
            let json: FillingCertificateJson =
                serde_json::from_value(body).map_err(|e| input_error(format!("certificate: {e}")))?;
            let (valid, reason) = match gsc_core::FillingCertificate::from_json(&g, &json) {
                Err(e) => (false, Some(e.to_string())),
                Ok(cert) => match check_filling(&g, &cert) {
                    Ok(()) => (true, None),
                    Err(r) => (false, Some(r)),
                },
            };
            let text = match &reason {
                None => "valid\n".to_string(),
                Some(r) => format!("invalid: {r}\n"),
            };
            Ok(Computed { result: json!({ "valid": valid, "reason": reason }), text, warnings: Vec::new() })
        }
        Command::Constant(a) => {
            let g = ctx.graph(&a.graph)?;
            let cert = certify(&g);
            match isoperimetric_constant(&cert) {
                Err(Error::NotCertified) => Ok(not_applicable("certificate did not pass")),
                Err(Error::NoCycles) => Ok(not_applicable("graph has no cycles")),
                Err(e) => Err(e.into()),
                Ok(c) => {
                    let result = json!({
                        "applicable": true,
                        "constant": format!("{}/{}", c.numer(), c.denom()),
                        "numerator": c.numer(),
                        "denominator": c.denom(),
                        "girth": cert.girth,
                        "lambda": cert.lambda_len(),
                    });
                    Ok(Computed { result, text: format!("{}/{}\n", c.numer(), c.denom()), warnings: Vec::new() })
                }
            }
        }
        Command::Ball { graph, radius, budget } => {
            let g = ctx.graph(graph)?;
            ctx.param("radius", *radius);
            ctx.param("budget", *budget);
            let dehn = Dehn::new(&g)?;
            let ball = match cayley_ball(&dehn, *radius, *budget) {
                Err(Error::NotCertified) => return Ok(not_applicable("certificate did not pass")),
                r => r?,
            };
            let s = g.alphabet();
            let result = json!({
                "applicable": true,
                "radius": ball.radius,
                "sizes": ball.sizes(),
                "elements": ball.elements.iter().map(|w| s.format_word(w)).collect::<Vec<_>>(),
                "edges": ball.edges.iter().map(|&(i, l, j)| json!([i, s.token(l), j])).collect::<Vec<_>>(),
            });
            let sizes: Vec<String> = ball.sizes().iter().map(|x| x.to_string()).collect();
            Ok(Computed { result, text: format!("sizes {}\n", sizes.join(" ")), warnings: Vec::new() })
        }
        Command::VerifyRelation { graph, budget, seed } => {
            let g = ctx.graph(graph)?;
            ctx.param("budget", *budget);
            ctx.param("seed", *seed);
            let dehn = Dehn::new(&g)?;
            let report = match verify_shortest_relation(&dehn, *budget, *seed) {
                Err(Error::NotCertified) => return Ok(not_applicable("certificate did not pass")),
                Err(Error::NoCycles) => return Ok(not_applicable("graph has no cycles")),
                r => r?,
            };
            let mut result = to_value(&report);
            result["applicable"] = json!(true);
            let text = format!(
                "{} ({}, {} words below girth {})\n",
                if report.holds { "holds" } else { "fails" },
                result["mode"].as_str().unwrap_or_default(),
                report.words_checked,
                report.girth
            );
            Ok(Computed { result, text, warnings: Vec::new() })
        }
        Command::VerifyEmbedding { graph, radius, budget } => {
            let g = ctx.graph(graph)?;
            let radius = radius.unwrap_or_else(|| g.diameter());
            ctx.param("radius", radius);
            ctx.param("budget", *budget);
            let dehn = Dehn::new(&g)?;
            let report = match verify_embedding(&dehn, radius, *budget) {
                Err(Error::NotCertified) => return Ok(not_applicable("certificate did not pass")),
                r => r?,
            };
            let mut result = to_value(&report);
            result["applicable"] = json!(true);
            let text = format!(
                "{} ({} pairs within distance {})\n",
                if report.holds { "holds" } else { "fails" },
                report.pairs_checked,
                report.radius
            );
            Ok(Computed { result, text, warnings: Vec::new() })
        }
        Command::Random(args) => random(args, ctx),
    }
}

fn lambda_text(l: gsc_core::Lambda) -> String {
    match l {
        gsc_core::Lambda::Finite(n) => n.to_string(),
        gsc_core::Lambda::Unbounded => "unbounded".into(),
    }
}

fn verdict_text(v: &Value) -> String {
    let mut text = format!("{}\n", v["verdict"].as_str().unwrap_or_default());
    for step in v["steps"].as_array().into_iter().flatten() {
        text.push_str(&format!(
            "rotate {} replace [{}, +{}) {}->{} by {}\n",
            step["rotation"], step["start"], step["length"], step["start_vertex"].as_str().unwrap_or_default(),
            step["end_vertex"].as_str().unwrap_or_default(),
            match step["replacement"].as_str().unwrap_or_default() {
                "" => "1",
                r => r,
            }
        ));
    }
    text
}

fn need(value: Option<usize>, flag: &str, shape: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| input_error(format!("--shape {shape} requires {flag}")))
}

fn shape_of(args: &RandomArgs) -> Result<Shape, Failure> {
    let shape = match args.shape {
        ShapeKind::Cycle => Shape::cycle(need(args.vertices, "--vertices", "cycle")?.max(1)),
        ShapeKind::Path => {
            let n = need(args.vertices, "--vertices", "path")?;
            if n < 2 {
                return Err(input_error("a path needs at least 2 vertices"));
            }
            Shape::path(n)
        }
        ShapeKind::Theta => match &args.arm_lengths {
            Some(lengths) => Shape::theta_with(lengths),
            None => Shape::theta(need(args.arms, "--arms", "theta")?, need(args.arm_len, "--arm-len", "theta")?),
        },
        ShapeKind::Complete => {
            Shape::subdivided_complete(need(args.k, "--k", "complete")?, args.arm_len.unwrap_or(1))
        }
    };
    if let Some(l) = &args.arm_lengths {
        if l.contains(&0) {
            return Err(input_error("arm lengths must be positive"));
        }
    }
    if args.arm_len == Some(0) {
        return Err(input_error("--arm-len must be positive"));
    }
    if shape.edges.is_empty() {
        return Err(input_error("shape has no edges"));
    }
    Ok(shape)
}

fn letter_alphabet(m: usize) -> Result<Alphabet, Failure> {
    if m == 0 || m > 26 {
        return Err(input_error("--alphabet must be between 1 and 26"));
    }
    Ok(Alphabet::new((0..m).map(|i| ((b'a' + i as u8) as char).to_string()))?)
}

fn random(args: &RandomArgs, ctx: &mut Ctx) -> Result<Computed, Failure> {
    let shape = shape_of(args)?;
    let alphabet = letter_alphabet(args.alphabet)?;
    for (k, v) in [
        ("shape", json!(format!("{:?}", args.shape).to_lowercase())),
        ("vertices", json!(args.vertices)),
        ("arms", json!(args.arms)),
        ("arm_len", json!(args.arm_len)),
        ("arm_lengths", json!(args.arm_lengths)),
        ("k", json!(args.k)),
        ("alphabet", json!(args.alphabet)),
        ("seed", json!(args.seed)),
        ("until_pass", json!(args.until_pass)),
        ("budget", json!(args.budget)),
        ("anneal", json!(args.anneal)),
        ("anneal_steps", json!(args.anneal_steps)),
    ] {
        if !v.is_null() {
            ctx.param(k, v);
        }
    }
    let tries = if args.until_pass { args.budget.max(1) } else { 1 };
    let mut last_error = None;
    for i in 0..tries {
        let seed = args.seed.wrapping_add(i);
        let labelled = match args.anneal {
            Some(lambda) => anneal_labelling(&shape, alphabet.clone(), lambda, seed, args.anneal_steps),
            None => random_labelling(&shape, alphabet.clone(), seed, DEFAULT_LABELLING_ATTEMPTS),
        };
        let g = match labelled {
            Ok(g) => g,
            Err(e @ Error::RetriesExhausted(_)) => {
                last_error = Some(e);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let cert = certify(&g);
        if args.until_pass && !cert.passed() {
            continue;
        }
        let header = format!(
            "# seed {seed}: verdict {}, girth {}, longest doublet {}, diameter {}\n",
            if cert.passed() { "pass" } else { "fail" },
            cert.girth.map_or("none".to_string(), |x| x.to_string()),
            cert.lambda.map_or("n/a".to_string(), lambda_text),
            cert.diameter
        );
        let text = format!("{header}{}", g.to_text());
        let result = json!({
            "seed": seed,
            "tries": i + 1,
            "graph": g.to_text(),
            "certificate": to_value(&cert),
        });
        return Ok(Computed { result, text, warnings: g.warnings().to_vec() });
    }
    Err(match last_error {
        Some(e) if !args.until_pass => e.into(),
        _ => Failure { code: EXIT_BUDGET, message: format!("no passing labelling in {tries} seeds") },
    })
}
