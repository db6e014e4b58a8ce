//! `pebble` command-line front end.
//!
//! Every command writes one JSON object per line to standard output with the
//! fields `command`, `graph`, `result`, `witness` (when there is one),
//! `checked`, `elapsed_ms`, and `engine_version`. Diagnostics go to standard
//! error.
//!
//! Exit codes: 0 computed or verified, 1 counterexample or mismatch,
//! 2 usage error, 3 undecided (state budget exhausted).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pebble_core::formulas::{
    cycle_formula, max_path_partition, middle_cycle_formula, tree_formula,
};
use pebble_core::number::{rooted_number_with, verify_pebbling_number, Mode};
use pebble_core::properties::{check_property_with, Property, PropertyError};
use pebble_core::{
    solvable, DemandVector, Distribution, EngineError, EngineOptions, Graph, SweepError, VertexId,
    ENGINE_VERSION,
};
use serde_json::{json, Map, Value};

use crate::cache::{number_key, Cache, CacheRecord};
use crate::expr::{eval, parse_graph_expr};
use crate::harness::{
    pebbling_number_par, verify_cover_lemma, verify_graham, GrahamMode, HarnessError, LemmaId,
    Verdict, VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pebble", version, about = "Exact graph pebbling workbench")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Result cache file (JSON lines); falls back to $PEBBLE_CACHE.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Ignore graph symmetries.
    #[arg(long, global = true)]
    no_symmetry: bool,
    /// Maximum number of states per sweep level.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NumberMode {
    Discover,
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PropertyArg {
    TwoPebbling,
    OddTwoPebbling,
    Herscovici,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GrahamArg {
    Exact,
    Bound,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormulaKind {
    Tree,
    Cycle,
    Middle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rooted or global t-pebbling number.
    Number {
        #[arg(long)]
        graph: String,
        /// Vertex label; omit for the maximum over all vertices.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long, value_enum, default_value_t = NumberMode::Discover)]
        mode: NumberMode,
        /// Claimed value for verify mode.
        #[arg(long, required_if_eq("mode", "verify"))]
        expect: Option<u64>,
    },
    /// Decide one distribution against a demand vector.
    Solvable {
        #[arg(long)]
        graph: String,
        /// "label=count,..." or a file holding that text.
        #[arg(long)]
        dist: String,
        /// "label=count,...".
        #[arg(long)]
        demand: String,
    },
    /// Check a pebbling property.
    Check {
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[arg(long)]
        graph: String,
    },
    /// Check f(G x H) <= f(G) f(H).
    Graham {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, value_enum, default_value_t = GrahamArg::Exact)]
        mode: GrahamArg,
    },
    /// Exhaustively check a simultaneous-placement lemma.
    Lemma {
        /// One of 2.5, 2.6, 3.5, 3.6, 3.7.
        #[arg(long)]
        id: LemmaId,
        /// Length parameter of the path or caterpillar factor.
        #[arg(long)]
        k: usize,
        /// The auxiliary graph G.
        #[arg(long, default_value = "complete:1")]
        aux: String,
        /// Must match the lemma's own count when given.
        #[arg(long)]
        pebbles: Option<u64>,
    },
    /// Evaluate a closed form.
    Formula {
        #[arg(long, value_enum)]
        kind: FormulaKind,
        /// Tree expression (tree kind).
        #[arg(long)]
        graph: Option<String>,
        /// Root label (tree kind; default the first vertex).
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Cycle length, or half-length for middle.
        #[arg(long)]
        n: Option<usize>,
        /// Report the rooted value for the spanning subgraph M*.
        #[arg(long)]
        rooted_mstar: bool,
    },
}

/// Failure that ends a command with a non-zero status.
struct Fail {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Fail {
    Fail {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<EngineError> for Fail {
    fn from(e: EngineError) -> Self {
        let code = match e {
            EngineError::Sweep(SweepError::BudgetExceeded { .. }) => EXIT_UNDECIDED,
            _ => EXIT_USAGE,
        };
        Fail {
            code,
            message: e.to_string(),
        }
    }
}

impl From<HarnessError> for Fail {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Engine(e) => e.into(),
            other => usage(other.to_string()),
        }
    }
}

impl From<PropertyError> for Fail {
    fn from(e: PropertyError) -> Self {
        match e {
            PropertyError::Engine(e) => e.into(),
            other => usage(other.to_string()),
        }
    }
}

struct Ctx<'a> {
    opts: EngineOptions,
    cache: Option<Cache>,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

struct Record {
    graph: String,
    result: Value,
    witness: Option<Value>,
    checked: u64,
}

fn load_graph(src: &str) -> Result<Graph, Fail> {
    let e = parse_graph_expr(src).map_err(|e| usage(format!("graph '{src}': {e}")))?;
    eval(&e).map_err(|e| usage(format!("graph '{src}': {e}")))
}

fn vertex(g: &Graph, label: &str) -> Result<VertexId, Fail> {
    g.vertex_by_label(label)
        .ok_or_else(|| usage(format!("no vertex labelled '{label}' in {}", g.family())))
}

/// `{"label": count}` for the occupied vertices, in vertex order.
pub fn label_map(g: &Graph, counts: &[u32]) -> Value {
    let mut m = Map::new();
    for (v, &c) in counts.iter().enumerate() {
        if c > 0 {
            m.insert(g.label(v).to_string(), json!(c));
        }
    }
    Value::Object(m)
}

/// Splits on commas and whitespace outside brackets, so product labels
/// like `(v0,x1)` stay whole.
fn split_items(text: &str) -> Vec<&str> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&text[start..i]);
                start = i + 1;
            }
            c if c.is_whitespace() && depth == 0 => {
                items.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    items.push(&text[start..]);
    items.retain(|s| !s.is_empty());
    items
}

/// Parses "label=count,label=count" (commas or whitespace separate).
pub fn parse_counts(g: &Graph, text: &str) -> Result<Vec<u32>, String> {
    let mut counts = vec![0u32; g.n()];
    for item in split_items(text) {
        let (label, count) = item
            .rsplit_once('=')
            .ok_or_else(|| format!("expected label=count, found '{item}'"))?;
        let v = g
            .vertex_by_label(label.trim())
            .ok_or_else(|| format!("no vertex labelled '{}'", label.trim()))?;
        let c: u32 = count
            .trim()
            .parse()
            .map_err(|_| format!("bad count '{}' for {label}", count.trim()))?;
        counts[v.index()] = counts[v.index()]
            .checked_add(c)
            .ok_or_else(|| format!("count overflow at {label}"))?;
    }
    Ok(counts)
}

fn params_json(report: &VerificationReport) -> Map<String, Value> {
    let mut m = Map::new();
    for (k, v) in &report.params {
        let value = v
            .parse::<u64>()
            .map(Value::from)
            .unwrap_or_else(|_| json!(v));
        m.insert(k.clone(), value);
    }
    m
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Verified => EXIT_OK,
        Verdict::Refuted => EXIT_COUNTEREXAMPLE,
        Verdict::Inconclusive => EXIT_UNDECIDED,
    }
}

impl Ctx<'_> {
    fn emit(&mut self, command: &str, rec: Record, start: Instant) {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(command));
        obj.insert("graph".into(), json!(rec.graph));
        obj.insert("result".into(), rec.result);
        if let Some(w) = rec.witness {
            obj.insert("witness".into(), w);
        }
        obj.insert("checked".into(), json!(rec.checked));
        obj.insert(
            "elapsed_ms".into(),
            json!(start.elapsed().as_millis() as u64),
        );
        obj.insert("engine_version".into(), json!(ENGINE_VERSION));
        let _ = writeln!(self.out, "{}", Value::Object(obj));
    }

    fn note(&mut self, msg: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", msg.as_ref());
    }

    /// Cached or freshly computed discover-mode number.
    fn number(&mut self, g: &Graph, target: Option<VertexId>, t: u32) -> Result<CacheRecord, Fail> {
        let label = target.map(|v| g.label(v.index()).to_string());
        let key = number_key(g.family(), label.as_deref(), t, self.opts.no_symmetry);
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.lookup(&key)) {
            return Ok(hit.clone());
        }
        let (value, at, witness, checked) = match target {
            Some(v) => {
                let r = rooted_number_with(g, v, t, Mode::Discover, &self.opts)?;
                (r.value, v, r.witness, r.explored)
            }
            None => {
                let r = pebbling_number_par(g, t, &self.opts)?;
                let checked = r.explored();
                (r.value, r.argmax, r.witness, checked)
            }
        };
        let rec = CacheRecord {
            key,
            value,
            target: g.label(at.index()).to_string(),
            witness: Some(witness.counts().to_vec()),
            checked: checked as u64,
            engine_version: ENGINE_VERSION.to_string(),
        };
        if let Some(cache) = self.cache.as_mut() {
            if let Err(e) = cache.store(rec.clone()) {
                let msg = format!("warning: cache write failed: {e}");
                self.note(msg);
            }
        }
        Ok(rec)
    }

    fn run(&mut self, command: Command) -> Result<i32, Fail> {
        let start = Instant::now();
        match command {
            Command::Number {
                graph,
                target,
                t,
                mode,
                expect,
            } => {
                let g = load_graph(&graph)?;
                if t == 0 {
                    return Err(usage("--t must be positive"));
                }
                let root = target.as_deref().map(|l| vertex(&g, l)).transpose()?;
                match mode {
                    NumberMode::Discover => {
                        let rec = self.number(&g, root, t)?;
                        self.note(format!("f_{t}({}) = {}", g.family(), rec.value));
                        let witness = rec.witness.as_ref().map(|w| label_map(&g, w));
                        self.emit(
                            "number",
                            Record {
                                graph: g.family().to_string(),
                                result: json!({"value": rec.value, "target": rec.target, "t": t}),
                                witness,
                                checked: rec.checked,
                            },
                            start,
                        );
                        Ok(EXIT_OK)
                    }
                    NumberMode::Verify => {
                        let expected = expect.ok_or_else(|| usage("verify mode needs --expect"))?;
                        let outcome = match root {
                            Some(v) => {
                                rooted_number_with(&g, v, t, Mode::Verify(expected), &self.opts)
                                    .map(|r| (r.explored as u64, g.label(v.index()).to_string()))
                            }
                            None => verify_pebbling_number(&g, t, expected, &self.opts).map(|r| {
                                (r.explored() as u64, g.label(r.argmax.index()).to_string())
                            }),
                        };
                        let (result, witness, checked, code) = match outcome {
                            Ok((checked, at)) => (
                                json!({"mode": "verify", "expected": expected, "verified": true, "target": at, "t": t}),
                                None,
                                checked,
                                EXIT_OK,
                            ),
                            Err(EngineError::TooSmall { counterexample, .. }) => (
                                json!({"mode": "verify", "expected": expected, "verified": false, "reason": "unsolvable distribution of the claimed size", "t": t}),
                                Some(label_map(&g, counterexample.counts())),
                                0,
                                EXIT_COUNTEREXAMPLE,
                            ),
                            Err(EngineError::TooLarge { actual, .. }) => (
                                json!({"mode": "verify", "expected": expected, "verified": false, "actual": actual, "t": t}),
                                None,
                                0,
                                EXIT_COUNTEREXAMPLE,
                            ),
                            Err(e) => return Err(e.into()),
                        };
                        self.note(format!(
                            "claim f_{t} = {expected} for {}: {}",
                            g.family(),
                            if code == EXIT_OK {
                                "verified"
                            } else {
                                "refuted"
                            }
                        ));
                        self.emit(
                            "number",
                            Record {
                                graph: g.family().to_string(),
                                result,
                                witness,
                                checked,
                            },
                            start,
                        );
                        Ok(code)
                    }
                }
            }
            Command::Solvable {
                graph,
                dist,
                demand,
            } => {
                let g = load_graph(&graph)?;
                let dist_text = if std::path::Path::new(&dist).is_file() {
                    std::fs::read_to_string(&dist).map_err(|e| usage(format!("{dist}: {e}")))?
                } else {
                    dist
                };
                let d = Distribution::new(parse_counts(&g, &dist_text).map_err(usage)?);
                let demand = DemandVector::new(parse_counts(&g, &demand).map_err(usage)?)
                    .map_err(|e| usage(format!("demand: {e}")))?;
                let cert = solvable(&g, &d, &demand);
                let moves: Vec<Value> = cert
                    .moves
                    .iter()
                    .map(|(a, b)| json!([g.label(a.index()), g.label(b.index())]))
                    .collect();
                self.note(if cert.is_solvable() {
                    "solvable"
                } else {
                    "unsolvable"
                });
                self.emit(
                    "solvable",
                    Record {
                        graph: g.family().to_string(),
                        result: json!({"solvable": cert.is_solvable(), "moves": moves}),
                        witness: None,
                        checked: cert.explored as u64,
                    },
                    start,
                );
                Ok(EXIT_OK)
            }
            Command::Check { property, graph } => {
                let g = load_graph(&graph)?;
                let property = match property {
                    PropertyArg::TwoPebbling => Property::TwoPebbling,
                    PropertyArg::OddTwoPebbling => Property::OddTwoPebbling,
                    PropertyArg::Herscovici => Property::Herscovici,
                };
                if property == Property::Herscovici && g.n() < 5 {
                    return Err(usage(format!(
                        "the inequality needs at least 5 vertices, got {}",
                        g.n()
                    )));
                }
                let f = self.number(&g, None, 1)?.value;
                let report = check_property_with(&g, property, &self.opts, Some(f))?;
                let mut result = json!({
                    "property": property.name(),
                    "holds": report.holds,
                    "f": report.f_value,
                });
                if let Some(f4) = report.f4_value {
                    result["f4"] = json!(f4);
                }
                let witness = report.counterexample.as_ref().map(|(d, v)| {
                    result["target"] = json!(g.label(v.index()));
                    label_map(&g, d.counts())
                });
                self.note(format!(
                    "{} {} for {}",
                    property.name(),
                    if report.holds { "holds" } else { "fails" },
                    g.family()
                ));
                self.emit(
                    "check",
                    Record {
                        graph: g.family().to_string(),
                        result,
                        witness,
                        checked: report.search_size,
                    },
                    start,
                );
                Ok(if report.holds {
                    EXIT_OK
                } else {
                    EXIT_COUNTEREXAMPLE
                })
            }
            Command::Graham { g, h, mode } => {
                let gg = load_graph(&g)?;
                let hh = load_graph(&h)?;
                let mode = match mode {
                    GrahamArg::Exact => GrahamMode::Exact,
                    GrahamArg::Bound => GrahamMode::BoundOnly,
                };
                let report = verify_graham(&gg, &hh, mode, &self.opts)?;
                self.emit_report("graham", &report, start);
                Ok(verdict_code(report.verdict))
            }
            Command::Lemma {
                id,
                k,
                aux,
                pebbles,
            } => {
                let g = load_graph(&aux)?;
                let report = verify_cover_lemma(id, k, &g, pebbles, &self.opts)?;
                self.emit_report("lemma", &report, start);
                Ok(verdict_code(report.verdict))
            }
            Command::Formula {
                kind,
                graph,
                target,
                t,
                n,
                rooted_mstar,
            } => {
                let (family, result) = match kind {
                    FormulaKind::Tree => {
                        let src = graph.ok_or_else(|| usage("the tree formula needs --graph"))?;
                        let g = load_graph(&src)?;
                        let v = match target.as_deref() {
                            Some(l) => vertex(&g, l)?,
                            None => VertexId(0),
                        };
                        let err = |e: pebble_core::FormulaError| usage(e.to_string());
                        let value = tree_formula(&g, v, t).map_err(err)?;
                        let part = max_path_partition(&g, v).map_err(err)?;
                        (
                            g.family().to_string(),
                            json!({"kind": "tree", "value": value, "target": g.label(v.index()), "t": t, "partition": part.sizes}),
                        )
                    }
                    FormulaKind::Cycle => {
                        let n = n.ok_or_else(|| usage("the cycle formula needs --n"))?;
                        let value = cycle_formula(n).map_err(|e| usage(e.to_string()))?;
                        (
                            format!("cycle:{n}"),
                            json!({"kind": "cycle", "value": value}),
                        )
                    }
                    FormulaKind::Middle => {
                        let n = n.ok_or_else(|| usage("the middle formula needs --n"))?;
                        let value = middle_cycle_formula(n, rooted_mstar)
                            .map_err(|e| usage(e.to_string()))?;
                        let family = if rooted_mstar {
                            format!("mstar:{n}")
                        } else {
                            format!("middle(cycle:{})", 2 * n)
                        };
                        (
                            family,
                            json!({"kind": "middle", "value": value, "rooted_mstar": rooted_mstar}),
                        )
                    }
                };
                self.note(format!("{family}: {}", result["value"]));
                self.emit(
                    "formula",
                    Record {
                        graph: family,
                        result,
                        witness: None,
                        checked: 0,
                    },
                    start,
                );
                Ok(EXIT_OK)
            }
        }
    }

    fn emit_report(&mut self, command: &str, report: &VerificationReport, start: Instant) {
        let mut result = params_json(report);
        result.insert("claim".into(), json!(report.claim));
        result.insert("outcome".into(), json!(report.verdict.as_str()));
        let witness = report
            .counterexample
            .as_ref()
            .map(|d| label_map(&report.host, d.counts()));
        self.note(format!("{}: {}", report.claim, report.verdict.as_str()));
        self.emit(
            command,
            Record {
                graph: report.host.family().to_string(),
                result: Value::Object(result),
                witness,
                checked: report.distributions_checked,
            },
            start,
        );
    }
}

/// Runs one command line, writing records to `out` and diagnostics to
/// `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let cache_path = cli
        .cache
        .clone()
        .or_else(|| std::env::var_os("PEBBLE_CACHE").map(PathBuf::from));
    let cache = match cache_path {
        Some(p) => match Cache::open(&p) {
            Ok(c) => {
                for w in &c.warnings {
                    let _ = writeln!(err, "warning: {w}");
                }
                Some(c)
            }
            Err(e) => {
                let _ = writeln!(err, "error: cache {}: {e}", p.display());
                return EXIT_USAGE;
            }
        },
        None => None,
    };
    let mut ctx = Ctx {
        opts: EngineOptions {
            no_symmetry: cli.no_symmetry,
            budget: cli.budget,
        },
        cache,
        out,
        err,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            ctx.note(format!("error: thread pool: {e}"));
            return EXIT_USAGE;
        }
    };
    let result = pool.install(|| ctx.run(cli.command));
    match result {
        Ok(code) => code,
        Err(f) => {
            ctx.note(format!("error: {}", f.message));
            f.code
        }
    }
}
