use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trilab::certificate::{parse_any_graph, parse_claim, verify_claim, AnyGraph};
use trilab::constructions::{
    extremal_regular, glue, octahedron_free, projective_plane_bipartite, random_graph, ExtremalRegularParams,
    OctahedronFreeParams, PlaneOrder,
};
use trilab::detection::{find_k3s, find_kss};
use trilab::finder::{find_k3s_with_fallback, FinderParams};
use trilab::io::{self, GraphDocument};
use trilab::scalar::parse_rational;
use trilab::search::{probe_k32_free_surplus, probe_min_triangles, Initializer, Objective, SearchConfig};
use trilab::structure::{extract_c6, validate_c6_close, C6CloseInstance, C6Outcome, PropertyCheck};
use trilab::{Error, Part, Rational, TripartiteGraph, Vertex};

/// `print!` that exits quietly when stdout is closed, e.g. piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {
        write_stdout(&format!($($arg)*))
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        write_stdout(&(format!($($arg)*) + "\n"))
    };
}

fn write_stdout(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: io: {e}");
        std::process::exit(2);
    }
}

#[derive(Parser)]
#[command(name = "tri-lab", version, about = "Balanced tripartite graphs under minimum-degree constraints")]
struct Cli {
    /// Worker threads for parallel loops; results do not depend on it.
    #[arg(long, global = true, env = "TRI_LAB_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from one of the reference families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Decide whether a K_3(s) (or K_{s,s} for bipartite files) exists.
    Detect {
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        /// Also write the witness here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the constructive K_3(s) finder, falling back to exact detection.
    Find {
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: Option<usize>,
        /// Print the full finder trace as JSON.
        #[arg(long)]
        trace: bool,
    },
    /// Extract a C6 blow-up partition.
    Extract {
        graph: PathBuf,
        /// Tolerance, e.g. `1/10` or `0.1`.
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        table: bool,
    },
    /// Check the hypotheses for two interleaved C6 blow-ups.
    #[command(name = "validate-c6close")]
    ValidateC6Close {
        graph: PathBuf,
        /// JSON file `{"w": [[..] x6], "x": [[..] x6]}` of vertex indices;
        /// W_i and X_i live in part ((i - 1) mod 3) + 1.
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        table: bool,
    },
    /// Local search probes.
    Probe {
        #[command(subcommand)]
        probe: Probe,
    },
    /// Re-verify a claim file against a graph; exit 0 if it holds, 1 if not.
    VerifyWitness { graph: PathBuf, witness: PathBuf },
    /// Run the acceptance suite and print the results table.
    Reproduce {
        #[arg(long)]
        seed: u64,
        /// Write machine-readable results here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Complete tripartite graph K_3(n).
    K3n {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Point-line incidence graph of the projective plane of order q.
    Plane {
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// K_3(2)-free graph with minimum degree n + t.
    C51 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Glue two graphs with equal part sizes.
    Glue {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// (n+t)-regular graph with n^2 (3t - n) / 2 triangles.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded random graph with a minimum-degree floor.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        min_degree: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Probe {
    /// Minimise T(G) subject to min degree >= n + t.
    MinTriangles(ProbeArgs),
    /// Maximise min degree - n over K_3(2)-free graphs.
    K32Surplus(ProbeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InitKind {
    Construction,
    Random,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = InitKind::Construction)]
    init: InitKind,
    /// Start from this graph instead of `--init`.
    #[arg(long)]
    init_file: Option<PathBuf>,
    /// Write the best graph here.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

/// Exit status of a command that ran to completion.
enum Status {
    Ok,
    Refuted,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            out!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let summary: Vec<&str> = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("error: usage: {}", summary.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: invalid-parameter: --workers must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(workers).build_global().ok();
    }
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Refuted) => ExitCode::from(1),
        Err(Error::BoundViolation(m)) => {
            eprintln!("error: bound-violation: {m}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), e.message());
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> trilab::Result<Status> {
    match command {
        Command::Construct { family } => construct(family),
        Command::Detect { graph, s, output } => detect(&graph, s, output.as_deref()),
        Command::Find { graph, s, t, trace } => find(&graph, s, t, trace),
        Command::Extract { graph, epsilon, table } => extract(&graph, &epsilon, table),
        Command::ValidateC6Close { graph, instance, c, d, table } => validate(&graph, &instance, &c, d, table),
        Command::Probe { probe } => match probe {
            Probe::MinTriangles(args) => probe_run(args, Objective::MinimizeTriangles),
            Probe::K32Surplus(args) => probe_run(args, Objective::MaximizeSurplusK32Free),
        },
        Command::VerifyWitness { graph, witness } => verify(&graph, &witness),
        Command::Reproduce { seed, json } => reproduce(seed, json.as_deref()),
    }
}

fn read_text(path: &Path) -> trilab::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_text(path: Option<&Path>, text: &str) -> trilab::Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            outln!("{text}");
            Ok(())
        }
    }
}

fn read_tripartite(path: &Path) -> trilab::Result<TripartiteGraph> {
    match parse_any_graph(&read_text(path)?)? {
        AnyGraph::Tripartite(g) => Ok(g),
        AnyGraph::Bipartite(_) => Err(Error::InvalidParameter(format!("{} is a bipartite graph", path.display()))),
    }
}

fn parse_scalar(text: &str, what: &str) -> trilab::Result<Rational> {
    parse_rational(text).ok_or_else(|| Error::InvalidParameter(format!("{what} must be a rational such as 1/10, got {text:?}")))
}

fn emit_graph(doc: GraphDocument, output: Option<&Path>) -> trilab::Result<Status> {
    let g = &doc.graph;
    let summary = format!("n={} min_degree={} triangles={}", g.n(), g.min_degree(), g.triangle_count());
    write_text(output, &io::to_json(&doc))?;
    if let Some(p) = output {
        outln!("wrote {} ({summary})", p.display());
    }
    Ok(Status::Ok)
}

fn construct(family: Family) -> trilab::Result<Status> {
    match family {
        Family::K3n { n, output } => {
            let doc = GraphDocument::with_meta(TripartiteGraph::complete(n)?, json!({"construction": "complete", "params": {"n": n}}));
            emit_graph(doc, output.as_deref())
        }
        Family::Plane { q, output } => {
            let b = projective_plane_bipartite(PlaneOrder::new(q)?)?;
            write_text(output.as_deref(), &io::bipartite_to_json(&b))?;
            if let Some(p) = output {
                outln!("wrote {} (m=n={} edges={})", p.display(), b.m(), b.edge_count());
            }
            Ok(Status::Ok)
        }
        Family::C51 { n, t, output } => emit_graph(octahedron_free(OctahedronFreeParams::new(n, t)?).into_document(), output.as_deref()),
        Family::Glue { first, second, output } => {
            let g = glue(&read_tripartite(&first)?, &read_tripartite(&second)?)?;
            emit_graph(GraphDocument::with_meta(g, json!({"construction": "glue"})), output.as_deref())
        }
        Family::Extremal { n, t, output } => {
            emit_graph(extremal_regular(ExtremalRegularParams::new(n, t)?).into_document(), output.as_deref())
        }
        Family::Random { n, min_degree, seed, output } => {
            let g = random_graph(n, min_degree, seed)?;
            let meta = json!({"construction": "random", "params": {"n": n, "min_degree": min_degree, "seed": seed}});
            emit_graph(GraphDocument::with_meta(g, meta), output.as_deref())
        }
    }
}

fn detect(path: &Path, s: usize, output: Option<&Path>) -> trilab::Result<Status> {
    let witness: Option<Value> = match parse_any_graph(&read_text(path)?)? {
        AnyGraph::Tripartite(g) => find_k3s(&g, s)?.map(|w| json!({"parts": w.parts})),
        AnyGraph::Bipartite(b) => {
            if s == 0 {
                return Err(Error::InvalidParameter("s must be positive".into()));
            }
            find_kss(&b, s).map(|w| json!({"left": w.left, "right": w.right}))
        }
    };
    match witness {
        Some(w) => {
            let text = io::canonical_string(&w);
            outln!("{text}");
            if output.is_some() {
                write_text(output, &text)?;
            }
        }
        None => outln!("absent"),
    }
    Ok(Status::Ok)
}

fn find(path: &Path, s: usize, t: Option<usize>, trace: bool) -> trilab::Result<Status> {
    let g = read_tripartite(path)?;
    let report = find_k3s_with_fallback(&g, FinderParams { s, t })?;
    if trace {
        outln!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        match &report.witness {
            Some(w) => outln!("{}", io::canonical_string(&json!({"parts": w.parts}))),
            None => outln!("absent"),
        }
        eprintln!("source: {}", serde_json::to_value(report.source).expect("serializes").as_str().unwrap_or(""));
    }
    Ok(Status::Ok)
}

/// Rationals as `"p/q"` strings instead of `[p, q]` pairs.
fn rational_string(r: Rational) -> Value {
    Value::from(if *r.denom() == 1 { r.numer().to_string() } else { format!("{}/{}", r.numer(), r.denom()) })
}

fn check_rows(checks: &[&PropertyCheck]) -> String {
    let mut out = format!("{:<18} {:<6} {:>12}  {}\n", "property", "result", "worst slack", "violator");
    for c in checks {
        out.push_str(&format!(
            "{:<18} {:<6} {:>12}  {}\n",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.worst_slack.map_or("-".to_string(), |s| format!("{s:.3}")),
            c.violator.as_deref().unwrap_or("-")
        ));
    }
    out
}

fn extract(path: &Path, epsilon: &str, table: bool) -> trilab::Result<Status> {
    let g = read_tripartite(path)?;
    let eps = parse_scalar(epsilon, "epsilon")?;
    let outcome = extract_c6(&g, eps)?;
    if table {
        match &outcome {
            C6Outcome::Partition(p) => {
                let sizes: Vec<String> = p.w.iter().enumerate().map(|(i, w)| format!("W{}={}", i + 1, w.len())).collect();
                outln!("beta = {}/{}  {}", p.min_out_degree, g.n(), sizes.join(" "));
                out!("{}", check_rows(&p.diagnostics.checks()));
            }
            C6Outcome::Witness { witness, .. } => outln!("K_3(2) witness {:?}", witness.parts),
            C6Outcome::Failure(f) => outln!("failure: {}", f.reason),
        }
    } else {
        let mut value = serde_json::to_value(&outcome).expect("outcome serializes");
        if let C6Outcome::Partition(p) = &outcome {
            value["epsilon"] = rational_string(p.epsilon);
            value["beta"] = rational_string(p.beta);
        }
        outln!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
    }
    Ok(Status::Ok)
}

fn read_instance(path: &Path, c: Rational, d: usize) -> trilab::Result<C6CloseInstance<Rational>> {
    let value: Value = serde_json::from_str(&read_text(path)?).map_err(|e| Error::Malformed(format!("instance: {e}")))?;
    let family = |key: &str, required: bool| -> trilab::Result<[Vec<Vertex>; 6]> {
        let mut sets: [Vec<Vertex>; 6] = Default::default();
        let Some(list) = value.get(key) else {
            return if required { Err(Error::Malformed(format!("instance lacks \"{key}\""))) } else { Ok(sets) };
        };
        let list = list.as_array().filter(|a| a.len() == 6).ok_or_else(|| Error::Malformed(format!("\"{key}\" must hold six arrays")))?;
        for (i, entry) in list.iter().enumerate() {
            let part = Part::from_index(i % 3);
            let arr = entry.as_array().ok_or_else(|| Error::Malformed(format!("{key}{} must be an array", i + 1)))?;
            for idx in arr {
                let idx = idx.as_u64().ok_or_else(|| Error::Malformed(format!("{key}{} entries must be indices", i + 1)))?;
                sets[i].push(Vertex::new(part, idx as usize));
            }
        }
        Ok(sets)
    };
    Ok(C6CloseInstance { w: family("w", true)?, x: family("x", false)?, c, d })
}

fn validate(path: &Path, instance: &Path, c: &str, d: usize, table: bool) -> trilab::Result<Status> {
    let g = read_tripartite(path)?;
    let inst = read_instance(instance, parse_scalar(c, "c")?, d)?;
    let report = validate_c6_close(&g, &inst)?;
    if table {
        let checks: Vec<&PropertyCheck> = report.conditions.iter().collect();
        out!("{}", check_rows(&checks));
        if report.all_passed {
            outln!("all hypotheses hold; K_3(2) {}", if report.alarm { "NOT FOUND (alarm)" } else { "found" });
        }
    } else {
        outln!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    }
    Ok(if report.all_passed && !report.alarm { Status::Ok } else { Status::Refuted })
}

fn probe_run(args: ProbeArgs, objective: Objective) -> trilab::Result<Status> {
    let initializer = match (&args.init_file, args.init) {
        (Some(p), _) => Initializer::File(p.clone()),
        (None, InitKind::Construction) => Initializer::Construction,
        (None, InitKind::Random) => Initializer::Random,
    };
    let cfg = SearchConfig {
        n: args.n,
        t: args.t,
        objective,
        budget: args.budget,
        restarts: args.restarts,
        seed: args.seed,
        initializer,
    };
    let outcome = match objective {
        Objective::MinimizeTriangles => probe_min_triangles(&cfg)?,
        Objective::MaximizeSurplusK32Free => probe_k32_free_surplus(&cfg)?,
    };
    if let Some(p) = &args.output {
        io::write_graph(p, &outcome.document())?;
    }
    if args.json {
        outln!("{}", outcome.report.to_json());
    } else {
        out!("{}", outcome.report.render_table());
    }
    eprintln!("wall time: {:.2}s", outcome.report.wall_time.as_secs_f64());
    Ok(Status::Ok)
}

fn verify(graph: &Path, witness: &Path) -> trilab::Result<Status> {
    let g = parse_any_graph(&read_text(graph)?)?;
    let claim = parse_claim(&read_text(witness)?)?;
    let verdict = verify_claim(&g, &claim)?;
    outln!("{} {}: {}", if verdict.holds { "verified" } else { "refuted" }, verdict.claim, verdict.detail);
    Ok(if verdict.holds { Status::Ok } else { Status::Refuted })
}

fn reproduce(seed: u64, json_path: Option<&Path>) -> trilab::Result<Status> {
    let results = trilab_repro::run_all(seed);
    out!("{}", trilab_repro::render_table(&results));
    if let Some(p) = json_path {
        fs::write(p, trilab_repro::render_json(seed, &results) + "\n").map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(if results.iter().all(|r| r.passed) { Status::Ok } else { Status::Refuted })
}
