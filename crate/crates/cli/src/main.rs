//! `wordrep`: generate grid-like graphs, build and verify their uniform
//! word-representants, and search for new ones.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use wordrep::check::{paper_check, PaperCheckOptions};
use wordrep::search::explore_conjecture;
use wordrep::{
    generate, representation_number, search_k_word, CheckRecord, ConstructionError, Family, FamilySpec, Graph, Naming,
    Report, SearchConfig, SearchStatus, Status, Word,
};

const REPRESENTS_ANCHOR: &str = "w represents G iff x and y alternate in w exactly when xy is an edge";
const REPNUM_ANCHOR: &str = "R(G) is the least k such that some k-uniform word represents G";

#[derive(Parser)]
#[command(name = "wordrep", version, about = "Uniform word-representants of grid-like graphs")]
struct Cli {
    /// Print a JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Print only the essential result line.
    #[arg(long, global = true)]
    quiet: bool,
    /// Reserved. The search is deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph of a standard family.
    Gen {
        family: Family,
        /// Rows, or the size of a one-parameter family.
        m: usize,
        /// Columns.
        n: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the 3-uniform word for a grid, cylinder or torus.
    Construct {
        family: Family,
        m: usize,
        n: usize,
        /// Print the verdict instead of the word.
        #[arg(long)]
        verify_only: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a word represents a graph.
    Verify { graph: PathBuf, word: PathBuf },
    /// Search for a k-uniform representant.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        opts: SearchOpts,
        /// Write the word found to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Compute the representation number, or bounds on it.
    Repnum {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Run the bundled verification suite.
    PaperCheck {
        #[arg(long, default_value_t = 12)]
        max_size: usize,
        /// Wall-clock guard per exhaustion, in seconds.
        #[arg(long, default_value_t = 900)]
        exhaustion_secs: u64,
        #[arg(long)]
        parallel: bool,
        /// Also write the JSON report to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bounded search for a k-uniform representant of the m x n torus.
    ExploreConjecture {
        m: usize,
        n: usize,
        #[arg(default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        opts: SearchOpts,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchOpts {
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Also enumerate words that do not start with the first vertex.
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long)]
    parallel: bool,
    /// Print a progress line every this many nodes.
    #[arg(long)]
    progress: Option<u64>,
}

impl SearchOpts {
    fn config(&self, k: usize) -> Result<SearchConfig, Fail> {
        let mut cfg = SearchConfig::new(k).with_symmetry_breaking(!self.no_symmetry).with_parallel(self.parallel);
        cfg.node_budget = self.budget_nodes;
        cfg.progress_interval = self.progress.filter(|&p| p > 0);
        if let Some(secs) = self.budget_secs {
            let limit = Duration::try_from_secs_f64(secs)
                .ok()
                .filter(|d| !d.is_zero())
                .ok_or_else(|| Fail::usage(format!("--budget-secs must be positive, got {secs}")))?;
            cfg.time_budget = Some(limit);
        }
        Ok(cfg)
    }
}

/// A non-zero exit with its message.
#[derive(Debug)]
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn negative(message: impl Into<String>) -> Self {
        Fail { code: 1, message: message.into() }
    }
    fn usage(message: impl Into<String>) -> Self {
        Fail { code: 2, message: message.into() }
    }
    fn io(path: &Path, err: std::io::Error) -> Self {
        Fail { code: 3, message: format!("{}: {err}", path.display()) }
    }
    fn no_known_word(message: impl Into<String>) -> Self {
        Fail { code: 4, message: message.into() }
    }
}

struct Ctx {
    json: bool,
    quiet: bool,
    argv: Vec<String>,
}

impl Ctx {
    /// Plain-text detail, suppressed by `--quiet` and `--json`.
    fn info(&self, line: impl AsRef<str>) {
        if !self.quiet && !self.json {
            println!("{}", line.as_ref());
        }
    }

    /// The main result line, suppressed by `--json` only.
    fn result(&self, line: impl AsRef<str>) {
        if !self.json {
            println!("{}", line.as_ref());
        }
    }

    fn report(&self) -> Report {
        Report::new(self.argv.clone())
    }

    fn emit(&self, report: &Report) {
        if self.json {
            println!("{}", report.to_json());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { json: cli.json, quiet: cli.quiet, argv: std::env::args().skip(1).collect() };
    if cli.seed.is_some() && !cli.quiet {
        eprintln!("note: --seed is reserved; the search is deterministic");
    }
    let result = match cli.command {
        Command::Gen { family, m, n, output } => cmd_gen(&ctx, family, m, n, output.as_deref()),
        Command::Construct { family, m, n, verify_only, output } => {
            cmd_construct(&ctx, family, m, n, verify_only, output.as_deref())
        }
        Command::Verify { graph, word } => cmd_verify(&ctx, &graph, &word),
        Command::Search { graph, k, opts, witness } => cmd_search(&ctx, &graph, k, &opts, witness.as_deref()),
        Command::Repnum { graph, max_k, opts } => cmd_repnum(&ctx, &graph, max_k, &opts),
        Command::PaperCheck { max_size, exhaustion_secs, parallel, output } => {
            cmd_paper_check(&ctx, max_size, exhaustion_secs, parallel, output.as_deref())
        }
        Command::ExploreConjecture { m, n, k, opts, output } => cmd_explore(&ctx, m, n, k, &opts, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(fail) => {
            if !fail.message.is_empty() {
                eprintln!("wordrep: {}", fail.message);
            }
            ExitCode::from(fail.code)
        }
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Fail> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Fail::io(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| Fail::io(path, e))?;
    tmp.persist(path).map_err(|e| Fail::io(path, e.error))?;
    Ok(())
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::io(path, e))
}

fn load_graph(path: &Path) -> Result<Graph, Fail> {
    Graph::parse(&read(path)?).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn naming(g: &Graph) -> Naming {
    Naming::new(g.all_names())
}

fn family_spec(family: Family, m: usize, n: Option<usize>) -> Result<FamilySpec, Fail> {
    let spec = match (family.is_one_parameter(), n) {
        (true, None) => match family {
            Family::Path => FamilySpec::path(m),
            Family::Cycle => FamilySpec::cycle(m),
            Family::Ladder => FamilySpec::ladder(m),
            Family::Prism => FamilySpec::prism(m),
            _ => FamilySpec::complete(m),
        },
        (true, Some(_)) => return Err(Fail::usage(format!("{family} takes a single size"))),
        (false, Some(n)) => FamilySpec::new(family, m, n),
        (false, None) => return Err(Fail::usage(format!("{family} needs two sizes: m n"))),
    };
    spec.validate().map_err(|e| Fail::usage(e.to_string()))?;
    Ok(spec)
}

fn cmd_gen(ctx: &Ctx, family: Family, m: usize, n: Option<usize>, output: Option<&Path>) -> Result<(), Fail> {
    let spec = family_spec(family, m, n)?;
    let g = generate(spec).map_err(|e| Fail::usage(e.to_string()))?;
    let text = g.to_text();
    match output {
        Some(path) => write_atomic(path, &text)?,
        None if !ctx.json => print!("{text}"),
        None => {}
    }
    let summary = format!("p edge {} {}", g.vertex_count(), g.edge_count());
    let mut report = ctx.report();
    let mut record = CheckRecord::new("gen", spec.to_string(), Status::Pass)
        .detail("vertices", g.vertex_count())
        .detail("edges", g.edge_count());
    if let Some(path) = output {
        record = record.detail("path", path.display().to_string());
        ctx.result(&summary);
    }
    report.push(record);
    ctx.emit(&report);
    Ok(())
}

fn cmd_construct(
    ctx: &Ctx,
    family: Family,
    m: usize,
    n: usize,
    verify_only: bool,
    output: Option<&Path>,
) -> Result<(), Fail> {
    let spec = FamilySpec::new(family, m, n);
    let built = match family {
        Family::Grid => wordrep::grid_word(m, n),
        Family::CylGrid if n == 3 => wordrep::cyl3_word(m),
        Family::CylGrid => wordrep::cyl_word(m, n),
        Family::ToroidalGrid => wordrep::torus_word(m, n),
        other => return Err(Fail::usage(format!("no construction for `{other}`; use grid, cyl or torus"))),
    };
    let word = match built {
        Ok(w) => w,
        Err(ConstructionError::NoKnownWord { m, n }) => {
            return Err(Fail::no_known_word(format!(
                "no known 3-uniform word for torus({m},{n}); try `wordrep search --graph <file> --k 3`"
            )))
        }
        Err(e @ ConstructionError::VerificationFailed { .. }) => return Err(Fail::negative(e.to_string())),
        Err(e) => return Err(Fail::usage(e.to_string())),
    };
    let text = word.to_text(&Naming::grid(m, n));
    if let Some(path) = output {
        write_atomic(path, &text)?;
    }
    let mut report = ctx.report();
    report.push(
        CheckRecord::new(format!("construct.{family}"), REPRESENTS_ANCHOR, Status::Pass)
            .detail("graph", spec.to_string())
            .detail("k", 3)
            .detail("length", word.len())
            .detail("word", text.trim_end()),
    );
    if verify_only {
        ctx.result(format!("VERIFIED {spec} k=3"));
    } else {
        ctx.result(text.trim_end());
    }
    ctx.emit(&report);
    Ok(())
}

fn cmd_verify(ctx: &Ctx, graph: &Path, word: &Path) -> Result<(), Fail> {
    let g = load_graph(graph)?;
    let names = naming(&g);
    let w = Word::parse(&read(word)?, &names).map_err(|e| Fail::usage(format!("{}: {e}", word.display())))?;
    let mut report = ctx.report();
    let record = |status| CheckRecord::new("verify", REPRESENTS_ANCHOR, status).detail("length", w.len());

    let Some(k) = w.uniformity() else {
        report.push(record(Status::Fail).detail("reason", "not uniform"));
        ctx.result("NOT UNIFORM");
        ctx.emit(&report);
        return Err(Fail::negative(""));
    };
    match w.first_mismatch(&g).map_err(|e| Fail::usage(e.to_string()))? {
        None => {
            report.push(record(Status::Pass).detail("k", k));
            ctx.result(format!("REPRESENTS k={k}"));
            ctx.emit(&report);
            Ok(())
        }
        Some(mm) => {
            let (x, y) = (names.name(mm.x.index()), names.name(mm.y.index()));
            report.push(
                record(Status::Fail)
                    .detail("k", k)
                    .detail("x", x)
                    .detail("y", y)
                    .detail("edge", mm.edge)
                    .detail("alternates", mm.alternates),
            );
            ctx.result(format!("DOES NOT REPRESENT: pair ({x}, {y}) edge={} alternates={}", mm.edge, mm.alternates));
            ctx.emit(&report);
            Err(Fail::negative(""))
        }
    }
}

fn cmd_search(ctx: &Ctx, graph: &Path, k: usize, opts: &SearchOpts, witness: Option<&Path>) -> Result<(), Fail> {
    let g = load_graph(graph)?;
    let cfg = opts.config(k)?;
    let outcome = search_k_word(&g, &cfg).map_err(|e| Fail::usage(e.to_string()))?;
    let status = match outcome.status {
        SearchStatus::Found | SearchStatus::ExhaustedNoSolution => Status::Pass,
        SearchStatus::BudgetExceeded => Status::Inconclusive,
    };
    let mut record = CheckRecord::new("search", REPRESENTS_ANCHOR, status)
        .detail("k", k)
        .detail("status", format!("{:?}", outcome.status))
        .detail("nodes_expanded", outcome.nodes_expanded)
        .detail("break_symmetry", cfg.break_symmetry)
        .detail("parallel", outcome.parallel);
    if let Some(b) = cfg.node_budget {
        record = record.detail("node_budget", b);
    }
    ctx.result(format!("{:?}", outcome.status));
    if let Some(w) = &outcome.word {
        let text = w.to_text(&naming(&g));
        record = record.detail("witness", text.trim_end());
        if let Some(path) = witness {
            write_atomic(path, &text)?;
            record = record.detail("witness_path", path.display().to_string());
        }
        ctx.info(text.trim_end());
    }
    ctx.info(format!("nodes={} time={:.3}s", outcome.nodes_expanded, outcome.wall_time.as_secs_f64()));
    let mut report = ctx.report();
    report.push(record);
    report.time("search", outcome.wall_time.as_secs_f64());
    ctx.emit(&report);
    if outcome.found() {
        Ok(())
    } else {
        Err(Fail::negative(""))
    }
}

fn cmd_repnum(ctx: &Ctx, graph: &Path, max_k: usize, opts: &SearchOpts) -> Result<(), Fail> {
    let g = load_graph(graph)?;
    let template = opts.config(2)?;
    let r = representation_number(&g, max_k, &template).map_err(|e| Fail::usage(e.to_string()))?;
    let line = match (r.value, r.upper_bound) {
        (Some(v), _) => format!("R = {v}"),
        (None, Some(hi)) => format!("{} <= R <= {hi}", r.lower_bound),
        (None, None) => format!("R >= {}", r.lower_bound),
    };
    let status = if r.value.is_some() { Status::Pass } else { Status::Inconclusive };
    let mut record = CheckRecord::new("repnum", REPNUM_ANCHOR, status)
        .detail("max_k", max_k)
        .detail("lower_bound", r.lower_bound)
        .detail(
            "per_k",
            r.per_k
                .iter()
                .map(
                    |(k, o)| json!({ "k": k, "status": format!("{:?}", o.status), "nodes_expanded": o.nodes_expanded }),
                )
                .collect::<Vec<_>>(),
        );
    if let Some(v) = r.value {
        record = record.detail("value", v);
    }
    if let Some(hi) = r.upper_bound {
        record = record.detail("upper_bound", hi);
    }
    ctx.result(&line);
    if let Some(w) = &r.witness {
        let text = w.to_text(&naming(&g));
        ctx.info(text.trim_end());
        record = record.detail("witness", text.trim_end());
    }
    for (k, o) in &r.per_k {
        ctx.info(format!("k={k}: {:?} nodes={} time={:.3}s", o.status, o.nodes_expanded, o.wall_time.as_secs_f64()));
    }
    let mut report = ctx.report();
    report.push(record);
    report.time("repnum", r.per_k.iter().map(|(_, o)| o.wall_time.as_secs_f64()).sum());
    ctx.emit(&report);
    if r.value.is_some() {
        Ok(())
    } else {
        Err(Fail::negative(""))
    }
}

fn print_records(ctx: &Ctx, report: &Report) {
    for r in &report.records {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        ctx.info(format!("{tag:<12} {:<32} {}", r.claim_id, r.anchor));
        if r.status != Status::Pass {
            for (key, value) in &r.details {
                ctx.info(format!("{:>14} {key}: {value}", ""));
            }
        }
    }
    ctx.result(format!("overall: {:?}", report.overall).to_lowercase());
}

fn finish_report(ctx: &Ctx, report: &Report, output: Option<&Path>) -> Result<(), Fail> {
    if let Some(path) = output {
        write_atomic(path, &(report.to_json() + "\n"))?;
    }
    if ctx.json {
        ctx.emit(report);
    } else {
        print_records(ctx, report);
    }
    Ok(())
}

fn cmd_paper_check(
    ctx: &Ctx,
    max_size: usize,
    exhaustion_secs: u64,
    parallel: bool,
    output: Option<&Path>,
) -> Result<(), Fail> {
    if max_size < 3 {
        return Err(Fail::usage("--max-size must be at least 3"));
    }
    let opts = PaperCheckOptions {
        max_size,
        exhaustion_time: Duration::from_secs(exhaustion_secs.max(1)),
        parallel,
        ..PaperCheckOptions::default()
    };
    let mut report = paper_check(&opts);
    report.command = ctx.argv.clone();
    finish_report(ctx, &report, output)?;
    match report.overall {
        Status::Pass => Ok(()),
        _ => Err(Fail::negative("")),
    }
}

fn cmd_explore(ctx: &Ctx, m: usize, n: usize, k: usize, opts: &SearchOpts, output: Option<&Path>) -> Result<(), Fail> {
    let cfg = opts.config(k)?;
    let mut report = explore_conjecture(m, n, k, &cfg).map_err(|e| Fail::usage(e.to_string()))?;
    report.command = ctx.argv.clone();
    finish_report(ctx, &report, output)?;
    if let Some(record) = report.records.first() {
        if let Some(conclusion) = record.details.get("conclusion").and_then(|v| v.as_str()) {
            ctx.info(conclusion);
        }
    }
    match report.overall {
        Status::Fail => Err(Fail::negative("")),
        _ => Ok(()),
    }
}
