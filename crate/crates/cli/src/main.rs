use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use edgereg::betti::{graded_betti, regularity};
use edgereg::harness::{emit_report, run_suite, CorpusSpec, Format, Suite, SuiteConfig};
use edgereg::ideals::{closure_formula, symbolic_power_formula, symbolic_power_of_ideal, symbolic_power_oracle};
use edgereg::{closure_of_power, edge_ideal, parse_graph, parse_ideal, Budget, FieldChar, Graph, MonomialIdeal};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "edgereg", version, about = "Powers, symbolic powers and integral closures of edge ideals, and their regularity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute generators, regularity or Betti numbers of a power.
    Compute(ComputeArgs),
    /// Run a verification suite over a corpus.
    Verify(VerifyArgs),
    /// Graph invariants.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    Info {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Reg,
    Gens,
    Betti,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ordinary,
    Symbolic,
    Closure,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Oracle,
}

#[derive(Args)]
struct BudgetArgs {
    /// Cap on lcm-lattice elements visited while computing Betti numbers.
    #[arg(long, default_value_t = Budget::generous().max_lattice)]
    max_lattice: usize,
    /// Cap on the number of generators of intermediate ideals.
    #[arg(long, default_value_t = Budget::generous().max_generators)]
    max_generators: usize,
    /// Cap on points examined by the integral-closure search.
    #[arg(long, default_value_t = Budget::generous().max_lp_calls)]
    max_lp: usize,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> anyhow::Result<Budget> {
        if self.max_lattice == 0 || self.max_generators == 0 || self.max_lp == 0 {
            bail!("budgets must be positive");
        }
        let mut b = Budget::generous();
        b.max_lattice = self.max_lattice;
        b.max_generators = self.max_generators;
        b.max_lp_calls = self.max_lp;
        if let Some(t) = self.time_limit {
            b = b.with_time_limit(Duration::from_secs(t));
        }
        Ok(b)
    }
}

#[derive(Args)]
struct ComputeArgs {
    what: What,
    #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
    graph: Option<PathBuf>,
    #[arg(long)]
    ideal: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    power: u32,
    #[arg(long, value_enum, default_value = "ordinary")]
    kind: Kind,
    /// Defaults to the oracle, cross-checked against the closed form when one applies.
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long = "char", default_value_t = 32003)]
    char: u64,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value = "builtin:fixtures")]
    corpus: String,
    #[arg(long, default_value_t = 3)]
    smax: u32,
    /// Largest power at which regularities are computed.
    #[arg(long, default_value_t = 4)]
    reg_smax: u32,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long = "char", default_value_t = 32003)]
    char: u64,
    /// Second characteristic every regularity is compared against; 0 disables.
    #[arg(long, default_value_t = 2)]
    cross_char: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Write the JSON report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Format of the report printed to stdout.
    #[arg(long, default_value = "text")]
    format: String,
    /// Record per-instance wall time in the report.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn field(p: u64) -> anyhow::Result<FieldChar> {
    Ok(FieldChar::new(p)?)
}

/// The requested power together with the closed form when one applies.
struct Computed {
    ideal: MonomialIdeal,
    formula: Option<MonomialIdeal>,
}

fn compute_ideal(args: &ComputeArgs, budget: &Budget) -> anyhow::Result<Computed> {
    let s = args.power;
    if s == 0 {
        bail!("--power must be at least 1");
    }
    let method = args.method.unwrap_or(Method::Oracle);
    if let Some(path) = &args.ideal {
        let i = parse_ideal(&read(path)?).with_context(|| format!("in {}", path.display()))?;
        if method == Method::Formula && args.kind != Kind::Ordinary {
            bail!("closed forms are only available for edge ideals of graphs");
        }
        let ideal = match args.kind {
            Kind::Ordinary => i.power_with_budget(s, budget)?,
            Kind::Symbolic => symbolic_power_of_ideal(&i, s, budget)?,
            Kind::Closure => closure_of_power(&i, s, budget)?.ideal,
        };
        return Ok(Computed { ideal, formula: None });
    }
    let g = load_graph(args.graph.as_ref().expect("clap enforces one input"))?;
    let i = edge_ideal(&g);
    let formula = match args.kind {
        Kind::Ordinary => None,
        Kind::Symbolic => symbolic_power_formula(&g, s, budget)?,
        Kind::Closure => closure_formula(&g, s, budget)?,
    };
    if method == Method::Formula {
        let ideal = match args.kind {
            Kind::Ordinary => i.power_with_budget(s, budget)?,
            _ => formula.ok_or_else(|| anyhow!("no closed form covers this graph at s = {s}; use --method oracle"))?,
        };
        return Ok(Computed { ideal, formula: None });
    }
    let ideal = match args.kind {
        Kind::Ordinary => i.power_with_budget(s, budget)?,
        Kind::Symbolic => symbolic_power_oracle(&g, s, budget)?,
        Kind::Closure => closure_of_power(&i, s, budget)?.ideal,
    };
    Ok(Computed { ideal, formula })
}

fn cmd_compute(args: ComputeArgs) -> anyhow::Result<ExitCode> {
    let budget = args.budget.budget()?;
    let char = field(args.char)?;
    let c = compute_ideal(&args, &budget)?;
    let cross = match &c.formula {
        None => "not covered",
        Some(f) if *f == c.ideal => "agree",
        Some(_) => "disagree",
    };
    let mut out = json!({
        "power": args.power,
        "kind": match args.kind { Kind::Ordinary => "ordinary", Kind::Symbolic => "symbolic", Kind::Closure => "closure" },
        "char": char.p(),
        "formula_check": cross,
    });
    let text = match args.what {
        What::Gens => {
            let gens: Vec<String> = c.ideal.gens().iter().map(|g| g.to_token_string(c.ideal.ctx())).collect();
            out["generators"] = json!(gens);
            c.ideal.to_text()
        }
        What::Reg => {
            let r = regularity(&c.ideal, char, &budget)?;
            out["regularity"] = json!(r);
            format!("{r}\n")
        }
        What::Betti => {
            let t = graded_betti(&c.ideal, char, &budget)?;
            let mut s = String::new();
            for ((i, d), r) in t.coarse() {
                s.push_str(&format!("beta_{i},{d} = {r}\n"));
            }
            s.push_str(&format!("regularity {}\n", t.regularity()));
            out["betti"] = t.to_json();
            s
        }
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        print!("{text}");
    }
    if cross == "disagree" {
        eprintln!("error: the closed form and the oracle disagree");
        return Ok(ExitCode::from(EXIT_FAIL));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let suite: Suite = args.suite.parse()?;
    let format: Format = args.format.parse()?;
    let corpus = CorpusSpec::parse(&args.corpus, args.seed)?.expand()?;
    let cfg = SuiteConfig {
        smax: args.smax,
        reg_smax: args.reg_smax,
        seed: args.seed,
        char: field(args.char)?,
        cross_char: if args.cross_char == 0 { None } else { Some(field(args.cross_char)?) },
        budget: args.budget.budget()?,
        trials: args.trials,
        timings: args.timings,
    };
    let report = run_suite(suite, &corpus, &cfg);
    if let Some(path) = &args.json {
        std::fs::write(path, emit_report(&report, Format::Json)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    use std::io::Write;
    std::io::stdout().write_all(&emit_report(&report, format))?;
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

fn cmd_graph_info(path: &Path, as_json: bool) -> anyhow::Result<ExitCode> {
    let g = load_graph(path)?;
    let budget = Budget::generous();
    let bows = g.bows(&budget)?;
    let sizes: Vec<usize> = bows.iter().map(|b| b.size).collect();
    let info = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "bipartite": g.is_bipartite(),
        "odd_girth": g.odd_girth(),
        "induced_matching_number": g.try_induced_matching_number()?,
        "vertex_cover_number": g.vertex_cover_number(),
        "bow_sizes": sizes,
        "normal": bows.is_empty(),
    });
    if as_json {
        println!("{}", serde_json::to_string_pretty(&info)?);
        return Ok(ExitCode::SUCCESS);
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    println!("vertices: {}", g.vertex_count());
    println!("edges: {}", g.edge_count());
    println!("bipartite: {}", yes(g.is_bipartite()));
    match g.odd_girth() {
        Some(k) => println!("odd girth: {k}"),
        None => println!("odd girth: none"),
    }
    println!("induced matching number: {}", info["induced_matching_number"]);
    println!("vertex cover number: {}", info["vertex_cover_number"]);
    if bows.is_empty() {
        println!("bows: none");
    } else {
        let list: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        println!("bows: {} (sizes {})", bows.len(), list.join(", "));
    }
    println!("normal: {}", yes(bows.is_empty()));
    Ok(ExitCode::SUCCESS)
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    let budget = err.chain().any(|e| e.downcast_ref::<edgereg::Error>().is_some_and(|e| e.is_budget()));
    if budget {
        EXIT_BUDGET
    } else {
        EXIT_INPUT
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Graph {
            command: GraphCommand::Info { graph, json },
        } => cmd_graph_info(&graph, json),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
