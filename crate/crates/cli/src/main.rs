mod load;

// Stdout writes that tolerate a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kplanar::gadgets::{
    bandwidth_instance, certify, gen_gap_instance, gen_two_sided, gen_ubp, pad_ubp, witness_two_sided, witness_ubp,
    Family, GadgetInstance, UbpVariant,
};
use kplanar::graph::families::random_tree;
use kplanar::graph::{param_report, write_graph, Graph};
use kplanar::kernel::{kernelize_nd, kernelize_vc, KernelReport, KernelVerdict};
use kplanar::oracle::{decide_k_planar, Answer, CrossingPlan, Mode, SearchConfig, DEFAULT_BUDGET};
use kplanar::transforms::subdivide;
use kplanar::ubp::{solve_ubp, verify_partition, UbpInstance};
use kplanar::witness::verify;
use load::{load_graph, load_instance, load_plan, parse_bins, parse_list, usage, CliError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "kplanar", version, about = "Local crossing number toolkit")]
struct Cli {
    /// Print structured JSON documents instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Let the oracle search branches in parallel.
    #[arg(long, global = true)]
    parallel: bool,
    /// Seed for randomized generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph has a drawing with at most k crossings per edge.
    /// Exits 0 on yes, 1 on no, 2 when the budget runs out.
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Skip the density and bipartite lower bounds.
        #[arg(long)]
        no_bounds: bool,
        /// Write the witness plan here.
        #[arg(long)]
        plan_out: Option<PathBuf>,
        file: PathBuf,
    },
    /// Shrink a graph by the vertex cover (vc) or neighborhood diversity (nd)
    /// reduction rules.
    Kernelize {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Param::Vc)]
        param: Param,
        /// Write the kernel as an edge list here.
        #[arg(long, short)]
        out: Option<PathBuf>,
        file: PathBuf,
    },
    /// Generate a gadget instance.
    Gen(GenArgs),
    /// Build the drawing of a gadget instance from a solution.
    Witness {
        #[arg(value_enum)]
        family: WitnessFamily,
        instance: PathBuf,
        /// Bins as item indices, `0,3;1,2;4`. Solved exactly when omitted.
        #[arg(long)]
        bins: Option<String>,
        /// Orders of the two layers; the instance's layer order when omitted.
        #[arg(long)]
        x_order: Option<String>,
        #[arg(long)]
        y_order: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check a plan: exits 0 when it certifies at most k crossings per edge.
    Verify {
        #[arg(long)]
        k: usize,
        graph: PathBuf,
        plan: PathBuf,
    },
    /// Re-check the structural claims of a gadget instance. Exits 1 if any
    /// fails.
    Certify { instance: PathBuf },
    /// Structural parameters of a graph.
    Stats { file: PathBuf },
    /// Replace every edge by a path of k edges.
    Subdivide {
        #[arg(long)]
        k: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
        file: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: GenFamily,
    /// Source graph (two-sided) or tree (bandwidth, gap). A random tree is
    /// used when omitted.
    file: Option<PathBuf>,
    /// Vertices of the random source tree.
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Number of bins, or the bandwidth.
    #[arg(long)]
    b: Option<usize>,
    /// Bin capacity.
    #[arg(long = "B")]
    capacity: Option<u64>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value = "basic")]
    variant: String,
    /// Comma-separated item sizes; random solvable items when omitted.
    #[arg(long)]
    items: Option<String>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Subdivide,
    Direct,
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    Vc,
    Nd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    TwoSided,
    Bandwidth,
    Gap,
    Ubp,
    PadUbp,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessFamily {
    Ubp,
    TwoSided,
}

struct Ctx {
    json: bool,
    parallel: bool,
    seed: u64,
}

impl Ctx {
    fn print_doc<T: Serialize>(&self, doc: &T) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(doc).expect("documents serialize");
        outln!("{text}");
        Ok(())
    }

    /// The document goes to `out` when given, else to stdout in JSON mode;
    /// the summary is printed unless the document went to stdout.
    fn emit<T: Serialize>(&self, doc: &T, out: Option<&Path>, summary: impl FnOnce() -> String) -> Result<(), CliError> {
        if let Some(path) = out {
            let text = serde_json::to_string_pretty(doc).expect("documents serialize");
            write_file(path, &(text + "\n"))?;
        }
        if self.json && out.is_none() {
            self.print_doc(doc)
        } else {
            outln!("{}", summary());
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx {
        json: cli.json,
        parallel: cli.parallel,
        seed: cli.seed,
    };
    let result = run(&ctx, cli.command);
    let _ = std::io::stdout().flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("kplanar: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `kplanar --help` for usage");
            }
            ExitCode::from(e.code() as u8)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<u8, CliError> {
    match command {
        Command::Solve {
            k,
            budget,
            mode,
            no_bounds,
            plan_out,
            file,
        } => solve(ctx, k, budget, mode, no_bounds, plan_out.as_deref(), &file),
        Command::Kernelize { k, param, out, file } => kernelize(ctx, k, param, out.as_deref(), &file),
        Command::Gen(args) => gen(ctx, &args).map(|_| 0),
        Command::Witness {
            family,
            instance,
            bins,
            x_order,
            y_order,
            out,
        } => witness(ctx, family, &instance, bins, x_order, y_order, out.as_deref()).map(|_| 0),
        Command::Verify { k, graph, plan } => verify_cmd(ctx, k, &graph, &plan),
        Command::Certify { instance } => certify_cmd(ctx, &instance),
        Command::Stats { file } => stats(ctx, &file).map(|_| 0),
        Command::Subdivide { k, out, file } => subdivide_cmd(ctx, k, out.as_deref(), &file).map(|_| 0),
    }
}

fn solve(
    ctx: &Ctx,
    k: usize,
    budget: u64,
    mode: ModeArg,
    no_bounds: bool,
    plan_out: Option<&Path>,
    file: &Path,
) -> Result<u8, CliError> {
    let g = load_graph(file)?;
    let cfg = SearchConfig {
        budget,
        parallel: ctx.parallel,
        use_lower_bounds: !no_bounds,
        mode: match mode {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Subdivide => Mode::Subdivide,
            ModeArg::Direct => Mode::Direct,
        },
    };
    let v = decide_k_planar(&g, k, &cfg).map_err(|e| CliError::Data(format!("{}: {e}", file.display())))?;
    let doc = v.to_doc(&g, k);
    if let (Some(path), Some(plan)) = (plan_out, &doc.plan) {
        write_file(path, &(serde_json::to_string_pretty(plan).expect("plans serialize") + "\n"))?;
    }
    if ctx.json {
        ctx.print_doc(&doc)?;
    } else {
        let stats = format!("{} nodes, {:.1} ms", v.nodes, doc.elapsed_ms);
        match v.answer {
            Answer::Yes => {
                let plan = doc.plan.as_ref().expect("yes verdicts carry a plan");
                let c = plan.crossings.len();
                let s = if c == 1 { "" } else { "s" };
                outln!("yes: at most {k} per edge, {c} crossing{s} ({stats})");
                for [[a, b], [c, d]] in &plan.crossings {
                    outln!("cross {a}-{b} {c}-{d}");
                }
            }
            Answer::No => {
                let reason = serde_json::to_value(v.reason).expect("reasons serialize");
                outln!("no: {} ({stats})", reason.as_str().unwrap_or("unknown"));
            }
            Answer::Inconclusive => outln!("inconclusive: budget of {budget} nodes exhausted ({stats})"),
        }
    }
    Ok(match v.answer {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::Inconclusive => 2,
    })
}

fn kernelize(ctx: &Ctx, k: usize, param: Param, out: Option<&Path>, file: &Path) -> Result<u8, CliError> {
    let g = load_graph(file)?;
    let report: KernelReport = match param {
        Param::Vc => kernelize_vc(&g, k),
        Param::Nd => kernelize_nd(&g, k),
    }
    .map_err(|e| usage(e.to_string()))?;
    if let (Some(path), Some(kernel)) = (out, report.kernel()) {
        write_file(path, &write_graph(kernel))?;
    }
    if ctx.json {
        return ctx.print_doc(&report).map(|_| 0);
    }
    match &report.verdict {
        KernelVerdict::NotKPlanar { reason } => {
            let reason = serde_json::to_value(reason).expect("reasons serialize");
            outln!("not {k}-planar: {reason}");
        }
        KernelVerdict::Kernel { graph, .. } => {
            outln!(
                "kernel: {} -> {} vertices, {} -> {} edges",
                report.n_before,
                graph.n(),
                report.m_before,
                graph.m()
            );
        }
    }
    let t = &report.thresholds;
    outln!("cover size {}, distinct labels {} (bound {})", report.cover.len(), report.labels, t.label_bound);
    for f in &report.fired {
        let name = serde_json::to_value(f.rule).expect("rule names serialize");
        outln!("rule {} removed {}", name.as_str().unwrap_or("?"), f.count);
    }
    if report.kernel().is_some() {
        outln!(
            "outside vertices: {} of degree >= 3 (bound {}), {} of degree 2 (bound {})",
            report.outside_deg3, t.deg3_bound, report.outside_deg2, t.deg2_bound
        );
    }
    outln!("{:.1} ms", report.elapsed_ms);
    Ok(0)
}

fn source_graph(ctx: &Ctx, args: &GenArgs) -> Result<Graph, CliError> {
    match &args.file {
        Some(path) => load_graph(path),
        None => Ok(random_tree(args.n.max(1), &mut ChaCha8Rng::seed_from_u64(ctx.seed))),
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("gen {family} needs {flag}")))
}

// Random solvable instance with items at most sqrt(B) - 1.
fn random_items(seed: u64, bins: usize, capacity: u64) -> Vec<u64> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let max_item = ((capacity as f64).sqrt() as u64).saturating_sub(1).max(1);
    let mut items = Vec::new();
    for _ in 0..bins {
        let mut left = capacity;
        while left > 0 {
            let x = r.gen_range(1..=left.min(max_item));
            items.push(x);
            left -= x;
        }
    }
    items
}

fn ubp_instance(ctx: &Ctx, args: &GenArgs, family: &str) -> Result<UbpInstance, CliError> {
    let b = need(args.b, "--b", family)?;
    let capacity = need(args.capacity, "--B", family)?;
    let items = match &args.items {
        Some(text) => parse_list(text, "--items")?,
        None => random_items(ctx.seed, b, capacity),
    };
    UbpInstance::new(items, capacity, b).map_err(|e| usage(e.to_string()))
}

fn gen(ctx: &Ctx, args: &GenArgs) -> Result<(), CliError> {
    let out = args.out.as_deref();
    let inst: GadgetInstance = match args.family {
        GenFamily::PadUbp => {
            let padded = pad_ubp(&ubp_instance(ctx, args, "pad-ubp")?).map_err(|e| usage(e.to_string()))?;
            return ctx.emit(&padded, out, || {
                format!(
                    "{} items, {} bins of capacity {}",
                    padded.items.len(),
                    padded.bins,
                    padded.capacity
                )
            });
        }
        GenFamily::Ubp => {
            let variant: UbpVariant = args.variant.parse().map_err(usage)?;
            gen_ubp(&ubp_instance(ctx, args, "ubp")?, variant)
        }
        GenFamily::TwoSided => {
            let k = need(args.k, "--k", "two-sided")?;
            let g = source_graph(ctx, args)?;
            let side = g
                .bipartition()
                .ok_or_else(|| CliError::Data("source graph is not bipartite".into()))?;
            let x: Vec<usize> = (0..g.n()).filter(|&v| side[v]).collect();
            let y: Vec<usize> = (0..g.n()).filter(|&v| !side[v]).collect();
            gen_two_sided(&g, &x, &y, k)
        }
        GenFamily::Bandwidth => {
            let b = need(args.b, "--b", "bandwidth")?;
            let tree = source_graph(ctx, args)?;
            bandwidth_instance(&tree, b, args.ell.unwrap_or(2 * b * b), None)
        }
        GenFamily::Gap => {
            let b = need(args.b, "--b", "gap")?;
            let tree = source_graph(ctx, args)?;
            gen_gap_instance(&tree, b, args.t.unwrap_or(b * b + 2), args.c.unwrap_or(1))
        }
    }
    .map_err(|e| usage(e.to_string()))?;
    ctx.emit(&inst, out, || {
        format!(
            "{}: {} vertices, {} edges, k = {}",
            inst.family_name(),
            inst.graph.n(),
            inst.graph.m(),
            inst.k
        )
    })
}

fn witness(
    ctx: &Ctx,
    family: WitnessFamily,
    path: &Path,
    bins: Option<String>,
    x_order: Option<String>,
    y_order: Option<String>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let inst = load_instance(path)?;
    let plan: CrossingPlan = match family {
        WitnessFamily::Ubp => {
            let Family::Ubp { instance, .. } = &inst.source else {
                return Err(usage(format!("{} is a {} instance", path.display(), inst.family_name())));
            };
            let bins = match bins {
                Some(text) => {
                    let bins = parse_bins(&text)?;
                    verify_partition(instance, &bins).map_err(|e| usage(format!("--bins: {e}")))?;
                    bins
                }
                None => solve_ubp(instance).ok_or_else(|| CliError::Data("bin packing has no solution".into()))?,
            };
            witness_ubp(&inst, &bins)
        }
        WitnessFamily::TwoSided => {
            let Family::TwoSided { x, y, .. } = &inst.source else {
                return Err(usage(format!("{} is a {} instance", path.display(), inst.family_name())));
            };
            let x_order = match x_order {
                Some(text) => parse_list(&text, "--x-order")?,
                None => x.clone(),
            };
            let y_order = match y_order {
                Some(text) => parse_list(&text, "--y-order")?,
                None => y.clone(),
            };
            witness_two_sided(&inst, &x_order, &y_order)
        }
    }
    .map_err(|e| usage(e.to_string()))?;
    let doc = plan.to_doc(&inst.graph);
    ctx.emit(&doc, out, || {
        format!(
            "{} crossings, at most {} per edge",
            plan.len(),
            plan.counts(inst.graph.m()).into_iter().max().unwrap_or(0)
        )
    })
}

#[derive(Serialize)]
struct VerifyDoc {
    k: usize,
    accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    rejection: Option<kplanar::witness::Rejection>,
}

fn verify_cmd(ctx: &Ctx, k: usize, graph: &Path, plan: &Path) -> Result<u8, CliError> {
    let g = load_graph(graph)?;
    let doc = load_plan(plan)?;
    let result = CrossingPlan::from_doc(&g, &doc)
        .map_err(|e| kplanar::witness::Rejection::Malformed { detail: e.to_string() })
        .and_then(|p| verify(&g, k, &p));
    let accepted = result.is_ok();
    if ctx.json {
        ctx.print_doc(&VerifyDoc {
            k,
            accepted,
            rejection: result.err(),
        })?;
    } else {
        match result {
            Ok(()) => outln!("accept"),
            Err(r) => outln!("reject: {r}"),
        }
    }
    Ok(if accepted { 0 } else { 1 })
}

fn certify_cmd(ctx: &Ctx, path: &Path) -> Result<u8, CliError> {
    let inst = load_instance(path)?;
    inst.check_invariants().map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let cert = certify(&inst);
    if ctx.json {
        ctx.print_doc(&cert)?;
    } else {
        outln!("{}: {}", cert.family, if cert.passed { "passed" } else { "FAILED" });
        for c in &cert.claims {
            outln!(
                "  {} {} after deleting {} vertices: {}",
                if c.holds { "ok  " } else { "FAIL" },
                c.name,
                c.deleted.len(),
                c.explanation
            );
        }
        outln!("  near-planar: {}", serde_json::to_value(&cert.near_planar).expect("serializes"));
    }
    Ok(if cert.passed { 0 } else { 1 })
}

fn stats(ctx: &Ctx, path: &Path) -> Result<(), CliError> {
    let r = param_report(&load_graph(path)?);
    if ctx.json {
        return ctx.print_doc(&r);
    }
    outln!("vertices              {}", r.n);
    outln!("edges                 {}", r.m);
    outln!("degree                {}..{}", r.min_degree, r.max_degree);
    outln!("components            {}", r.components);
    outln!("feedback edge number  {}", r.feedback_edge_number);
    outln!("neighborhood div.     {}", r.neighborhood_diversity);
    outln!("vertex cover (2-apx)  {}", r.approx_vertex_cover);
    Ok(())
}

fn subdivide_cmd(ctx: &Ctx, k: usize, out: Option<&Path>, path: &Path) -> Result<(), CliError> {
    let map = subdivide(&load_graph(path)?, k).map_err(|e| usage(e.to_string()))?;
    if let Some(path) = out {
        write_file(path, &(serde_json::to_string_pretty(&map).expect("serializes") + "\n"))?;
    }
    if ctx.json && out.is_none() {
        ctx.print_doc(&map)
    } else {
        out!("{}", write_graph(&map.graph));
        Ok(())
    }
}
