//! Command-line front end. [`run`] takes its streams explicitly so tests can
//! drive it in-process.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use treeweave::{
    classify, cross_validate, kappa3, max_internally_disjoint, parse_edge_list, parse_graph6, upper_bound,
    verify_packing, DeletedShape, DeletedShapeSpec, SimpleGraph, SweepConfig, TreePacking,
};

/// Environment variable holding the sweep's sampling seed.
pub const SEED_VAR: &str = "TREEWEAVE_SEED";

#[derive(Debug, Parser)]
#[command(name = "treeweave", version, about = "Generalized 3-connectivity of small graphs")]
struct Cli {
    /// Input graph format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Output style; only JSON is stable.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact κ₃ with a minimizing terminal set and its tree packing.
    Compute {
        /// Graph file; stdin when absent or `-`.
        input: Option<PathBuf>,
        /// Pack this terminal set only instead of minimizing over all.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        terminals: Option<Vec<usize>>,
    },
    /// Predict κ₃ from the edges missing from the complete graph.
    Classify { input: Option<PathBuf> },
    /// Emit the explicit packing of a near-complete graph.
    Construct {
        /// none | edge | matching:r | p3p2 | c3p2 | p4
        #[arg(long)]
        shape: String,
        #[arg(long)]
        n: usize,
        /// One terminal set; every 3-set when absent.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        terminals: Option<Vec<usize>>,
        /// Vertices carrying the deleted shape; `0, 1, ...` when absent.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        placement: Option<Vec<usize>>,
    },
    /// Check a packing JSON file against a graph.
    Verify {
        #[arg(long)]
        packing: PathBuf,
        input: Option<PathBuf>,
    },
    /// Cross-validate the classifier against the oracle.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Random graphs per order above 6.
        #[arg(long, default_value_t = 1000)]
        sample: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Per-triple upper bounds `min(deg, n - 2)`.
    Bounds { input: Option<PathBuf> },
}

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

struct Failure(i32, String);

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure(EXIT_INPUT, msg.to_string())
    }
}

struct Ctx<'a> {
    output: Output,
    format: Format,
    stdin: &'a mut dyn Read,
    out: String,
}

impl Ctx<'_> {
    fn read(&mut self, path: &Option<PathBuf>) -> Result<String, Failure> {
        let mut text = String::new();
        match path {
            Some(p) if p.as_os_str() != "-" => {
                text = std::fs::read_to_string(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
            }
            _ => {
                self.stdin.read_to_string(&mut text).map_err(|e| Failure::input(format!("stdin: {e}")))?;
            }
        }
        Ok(text)
    }

    /// graph6 input holds one graph per non-blank line; edge lists hold one.
    fn graphs(&mut self, path: &Option<PathBuf>) -> Result<Vec<SimpleGraph>, Failure> {
        let text = self.read(path)?;
        let graphs = match self.format {
            Format::Graph6 => text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| Failure::input(format!("line {}: {e}", i + 1))))
                .collect::<Result<Vec<_>, _>>()?,
            Format::Edges => vec![parse_edge_list(&text).map_err(Failure::input)?],
        };
        if graphs.is_empty() {
            return Err(Failure::input("no graph in input"));
        }
        Ok(graphs)
    }

    fn single(&mut self, path: &Option<PathBuf>) -> Result<SimpleGraph, Failure> {
        let mut graphs = self.graphs(path)?;
        if graphs.len() != 1 {
            return Err(Failure::input(format!("expected one graph, found {}", graphs.len())));
        }
        Ok(graphs.remove(0))
    }

    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) {
        match self.output {
            Output::Json => {
                self.out.push_str(&serde_json::to_string(value).expect("serializable"));
                self.out.push('\n');
            }
            Output::Text => self.out.push_str(&text()),
        }
    }
}

#[derive(Serialize)]
struct ComputeLine<'a> {
    graph6: String,
    n: usize,
    kappa3: usize,
    terminals: Option<[usize; 3]>,
    witness: Option<&'a TreePacking>,
}

#[derive(Serialize)]
struct PackLine<'a> {
    graph6: String,
    n: usize,
    value: usize,
    terminals: &'a [usize],
    witness: &'a TreePacking,
}

#[derive(Serialize)]
struct VerifyLine {
    valid: bool,
    violation: Option<String>,
}

#[derive(Serialize)]
struct BoundRow {
    terminals: [usize; 3],
    upper_bound: usize,
}

#[derive(Serialize)]
struct BoundsLine {
    graph6: String,
    n: usize,
    rows: Vec<BoundRow>,
}

fn packing_text(p: &TreePacking) -> String {
    let mut s = String::new();
    for (i, t) in p.trees.iter().enumerate() {
        let edges: Vec<String> = t.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let _ = writeln!(s, "  T{}: {}", i + 1, edges.join(" "));
    }
    s
}

fn execute(cli: Cli, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    match cli.command {
        Command::Compute { input, terminals: None } => {
            for g in ctx.graphs(&input)? {
                let k = kappa3(&g).map_err(Failure::input)?;
                let line = ComputeLine {
                    graph6: g.to_graph6(),
                    n: g.order(),
                    kappa3: k.value,
                    terminals: k.terminals,
                    witness: k.witness.as_ref(),
                };
                ctx.emit(&line, || {
                    let mut s = format!("{}: kappa3 = {}", line.graph6, k.value);
                    if let Some(t) = k.terminals {
                        let _ = write!(s, ", minimized at {t:?}");
                    }
                    s.push('\n');
                    s + &k.witness.as_ref().map(packing_text).unwrap_or_default()
                });
            }
        }
        Command::Compute { input, terminals: Some(s) } => {
            for g in ctx.graphs(&input)? {
                let (value, packing) = max_internally_disjoint(&g, &s).map_err(Failure::input)?;
                let line =
                    PackLine { graph6: g.to_graph6(), n: g.order(), value, terminals: &packing.terminals, witness: &packing };
                ctx.emit(&line, || {
                    format!("{}: kappa({:?}) = {value}\n", line.graph6, packing.terminals) + &packing_text(&packing)
                });
            }
        }
        Command::Classify { input } => {
            for g in ctx.graphs(&input)? {
                let report = classify(&g);
                ctx.emit(&report, || {
                    let shapes: Vec<String> = report.profile.shapes.iter().map(|s| s.to_string()).collect();
                    format!(
                        "{}: {} by {} (missing: [{}], max degree {})\n",
                        g.to_graph6(),
                        report.verdict,
                        report.rule_fired,
                        shapes.join(", "),
                        report.profile.max_degree
                    )
                });
            }
        }
        Command::Construct { shape, n, terminals, placement } => {
            let shape: DeletedShape = shape.parse().map_err(Failure::input)?;
            let spec = match placement {
                Some(p) => DeletedShapeSpec::new(shape, p).map_err(Failure::input)?,
                None => DeletedShapeSpec::canonical(shape),
            };
            let packings = match terminals {
                Some(s) => vec![spec.pack(n, &s).map_err(Failure::input)?],
                None => spec.pack_all(n).map_err(Failure::input)?,
            };
            for p in &packings {
                ctx.emit(p, || format!("S = {:?}, {} trees\n", p.terminals, p.len()) + &packing_text(p));
            }
        }
        Command::Verify { packing, input } => {
            let text = std::fs::read_to_string(&packing)
                .map_err(|e| Failure::input(format!("{}: {e}", packing.display())))?;
            let p: TreePacking = serde_json::from_str(&text)
                .map_err(|e| Failure::input(format!("{}: {e}", packing.display())))?;
            let g = ctx.single(&input)?;
            let verdict = verify_packing(&g, &p.terminals, &p);
            let line = VerifyLine { valid: verdict.is_ok(), violation: verdict.as_ref().err().map(|v| v.to_string()) };
            ctx.emit(&line, || match &line.violation {
                None => format!("valid: {} internally disjoint trees\n", p.len()),
                Some(v) => format!("invalid: {v}\n"),
            });
            return Ok(if line.valid { EXIT_OK } else { EXIT_FAILED });
        }
        Command::Sweep { n, sample, jobs } => {
            let seed = match std::env::var(SEED_VAR) {
                Ok(v) => v.trim().parse::<u64>().map_err(|_| Failure::input(format!("{SEED_VAR}={v:?} is not a u64")))?,
                Err(_) => 0,
            };
            if jobs == Some(0) {
                return Err(Failure::input("--jobs must be positive"));
            }
            let config = SweepConfig { n_max: n, sample_budget: sample, seed, jobs };
            let report = cross_validate(&config).map_err(Failure::input)?;
            ctx.emit(&report, || {
                let mut s = format!(
                    "n <= {}: {} graphs ({} exact, {} bounded), {} mismatches, {} ms\n",
                    report.n,
                    report.graphs_checked,
                    report.exact_checked,
                    report.bound_checked,
                    report.mismatches.len(),
                    report.wallclock_ms
                );
                for m in &report.mismatches {
                    let _ = writeln!(s, "  {} [{}] {}", m.graph6, m.kind, m.detail);
                }
                s
            });
            return Ok(if report.mismatches.is_empty() { EXIT_OK } else { EXIT_FAILED });
        }
        Command::Bounds { input } => {
            for g in ctx.graphs(&input)? {
                let n = g.order();
                let mut rows = Vec::new();
                for a in 0..n {
                    for b in a + 1..n {
                        for c in b + 1..n {
                            let upper_bound = upper_bound(&g, &[a, b, c]).map_err(Failure::input)?;
                            rows.push(BoundRow { terminals: [a, b, c], upper_bound });
                        }
                    }
                }
                let line = BoundsLine { graph6: g.to_graph6(), n, rows };
                ctx.emit(&line, || {
                    let mut s = format!("{}\n", line.graph6);
                    for r in &line.rows {
                        let _ = writeln!(s, "  {:?}\t{}", r.terminals, r.upper_bound);
                    }
                    s
                });
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line `argv` (program name first) and returns the exit
/// status. Nothing is written to `stdout` on input errors.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx { output: cli.output, format: cli.format, stdin, out: String::new() };
    match execute(cli, &mut ctx) {
        Ok(code) => {
            let _ = stdout.write_all(ctx.out.as_bytes());
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "treeweave: {msg}");
            code
        }
    }
}
