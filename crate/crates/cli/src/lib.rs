//! The `hamsym` command line.
//!
//! Exit status: 0 on success, 1 on a library error (its stable code is
//! printed), 2 on a usage error, 3 when a cap or budget left the answer
//! inconclusive.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hamsym::census::{run_census, CensusOptions};
use hamsym::construct::{group_induced_layers, LayeredView};
use hamsym::factor::{classify_by_theorems, prime_factorization};
use hamsym::family::{parse_family, Built};
use hamsym::hamilton::{
    boustrophedon_cycles, is_ham_transitive, kappa_of_graph, orbit_classes, zigzag_cycle, ClassCount, ClassReport,
    SearchLimits, ZigzagSpec, DEFAULT_CYCLE_CAP,
};
use hamsym::abelian::{AbelianGroup, GeneratingSet};
use hamsym::graph::GraphJson;
use hamsym::{canon, graph6, Error, Graph};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "hamsym", version, about = "Hamiltonian cycles up to symmetry")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumerated Hamiltonian cycles.
    #[arg(long, global = true, env = "HAMSYM_CAP")]
    cap: Option<usize>,
    /// Time budget in seconds for a single classification.
    #[arg(long, global = true)]
    budget: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Family expression, e.g. "prism 7" or "cayley Z5 gens=1,4".
    #[arg(long, conflicts_with_all = ["graph6", "graph_json", "source"])]
    family: Option<String>,
    /// graph6 string.
    #[arg(long, conflicts_with_all = ["graph_json", "source"])]
    graph6: Option<String>,
    /// JSON graph file with `n`, `edges` and optional `labels`.
    #[arg(long, conflicts_with = "source")]
    graph_json: Option<PathBuf>,
    /// File holding a graph6 string, or `-` for standard input.
    source: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Json,
    Edges,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Task {
    Transitivity,
    Classes,
    Kappa,
    Factorize,
    Predict,
    Autgroup,
    EdgeOrbits,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family and print it.
    Construct {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Run several analyses on one graph.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "transitivity")]
        tasks: Vec<Task>,
    },
    /// Partition the Hamiltonian cycles into automorphism classes.
    Classes {
        #[command(flatten)]
        input: Input,
    },
    /// Hamilton compression of the graph.
    Kappa {
        #[command(flatten)]
        input: Input,
    },
    /// Build witness cycles.
    Witness {
        #[command(subcommand)]
        kind: Witness,
    },
    /// Cartesian prime factorization.
    Factorize {
        #[command(flatten)]
        input: Input,
    },
    /// Theorem-based prediction of Hamiltonian transitivity.
    Predict {
        #[command(flatten)]
        input: Input,
    },
    /// Census of Cayley graphs of abelian groups.
    Census {
        #[arg(long)]
        max_order: usize,
        /// Also run order 27.
        #[arg(long = "order-27")]
        order_27: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for per-order JSON-lines files; reruns resume from it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seconds allowed per graph; defaults to 60 with --order-27.
        #[arg(long)]
        graph_budget: Option<f64>,
        /// Include wall-clock timings in the JSON report.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Witness {
    /// Zigzag cycle in the l-layer grid C_l □ C_k.
    Zigzag {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// (l-3)/2 comma-separated entries in 0..=k-2.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        a: Vec<usize>,
    },
    /// Boustrophedon cycles of a two-factor product.
    Boustrophedon {
        #[arg(long)]
        family: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    result: Value,
    inconclusive: bool,
}

struct Ctx {
    cap: usize,
    budget: Option<f64>,
}

impl Ctx {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            cycle_cap: self.cap,
            deadline: self.budget.map(|b| Instant::now() + Duration::from_secs_f64(b)),
            ..SearchLimits::default()
        }
    }
}

fn load(input: &Input) -> Result<Built, Error> {
    if let Some(f) = &input.family {
        return parse_family(f)?.build();
    }
    let plain = |graph| Built { graph, cayley: None, product: None };
    if let Some(s) = &input.graph6 {
        return Ok(plain(graph6::decode_str(s.trim())?));
    }
    if let Some(p) = &input.graph_json {
        let text = std::fs::read_to_string(p)?;
        let j: GraphJson = serde_json::from_str(&text)?;
        return Ok(plain(Graph::from_json(&j)?));
    }
    let text = match input.source.as_deref() {
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(path) => std::fs::read_to_string(path)?,
        None => return Err(Error::Parse { pos: 0, msg: "no input graph given".into() }),
    };
    Ok(plain(graph6::decode_str(text.trim())?))
}

fn class_count_fields(c: ClassCount) -> (u64, bool) {
    match c {
        ClassCount::Exact(k) => (k, true),
        ClassCount::LowerBound(k) => (k, false),
    }
}

fn class_report_json(r: &ClassReport) -> Value {
    let (count, exact) = class_count_fields(r.class_count);
    json!({
        "transitive": r.is_transitive(),
        "class_count": count,
        "class_count_exact": exact,
        "total_cycles": r.total_cycles.as_ref().map(|t| t.to_string()),
        "aut_order": r.aut_order.to_string(),
        "method": r.method,
        "representatives": r.representatives,
    })
}

fn class_report_text(r: &ClassReport, out: &mut String) {
    let (count, exact) = class_count_fields(r.class_count);
    let _ = writeln!(out, "transitive: {}", r.is_transitive());
    let _ = writeln!(out, "classes: {}{count}", if exact { "" } else { ">= " });
    if let Some(t) = &r.total_cycles {
        let _ = writeln!(out, "hamiltonian cycles: {t}");
    }
    let _ = writeln!(out, "|Aut|: {}", r.aut_order);
    let _ = writeln!(out, "method: {:?}", r.method);
    for c in &r.representatives {
        let _ = writeln!(out, "  representative: {:?}", c.seq());
    }
}

fn transitivity(b: &Built, ctx: &Ctx, rep: &mut Report, obj: &mut serde_json::Map<String, Value>) -> Result<(), Error> {
    match is_ham_transitive(&b.graph, &ctx.limits()) {
        Ok(r) => {
            class_report_text(&r, &mut rep.text);
            if let Value::Object(m) = class_report_json(&r) {
                obj.extend(m);
            }
            Ok(())
        }
        Err(Error::Inconclusive(why)) => {
            rep.inconclusive = true;
            let _ = writeln!(rep.text, "transitivity: inconclusive ({why})");
            obj.insert("transitive".into(), Value::Null);
            obj.insert("inconclusive".into(), json!(why));
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn kappa_task(b: &Built, ctx: &Ctx, rep: &mut Report, obj: &mut serde_json::Map<String, Value>) -> Result<(), Error> {
    let k = kappa_of_graph(&b.graph, ctx.cap)?;
    let _ = writeln!(rep.text, "kappa: {}{}", if k.exact { "" } else { ">= " }, k.value);
    let _ = writeln!(rep.text, "  witness: {:?}", k.witness.seq());
    obj.insert("kappa".into(), json!(k.value));
    obj.insert("kappa_exact".into(), json!(k.exact));
    obj.insert("kappa_witness".into(), json!(k.witness));
    Ok(())
}

fn factorize_task(b: &Built, rep: &mut Report, obj: &mut serde_json::Map<String, Value>) -> Result<(), Error> {
    let f = prime_factorization(&b.graph)?;
    let factors: Vec<Value> = f
        .prime_factors
        .iter()
        .map(|p| {
            json!({
                "vertices": p.graph.n(),
                "edges": p.graph.edge_count(),
                "multiplicity": p.multiplicity,
                "tag": p.tag(),
                "graph6": graph6::encode_string(&p.graph),
            })
        })
        .collect();
    let _ = writeln!(rep.text, "prime factors: {}", if f.is_prime() { "(prime)" } else { "" });
    for p in &f.prime_factors {
        let name = p.tag().unwrap_or_else(|| graph6::encode_string(&p.graph));
        let _ = writeln!(rep.text, "  {name} ({} vertices) x{}", p.graph.n(), p.multiplicity);
    }
    obj.insert("prime_factors".into(), json!(factors));
    obj.insert("certificate".into(), json!(f.certificate.images()));
    Ok(())
}

fn predict_task(b: &Built, rep: &mut Report, obj: &mut serde_json::Map<String, Value>) {
    let p = classify_by_theorems(&b.graph, b.cayley.as_ref());
    let _ = writeln!(rep.text, "prediction: {:?}", p.verdict);
    if let Some(r) = &p.reason {
        let _ = writeln!(rep.text, "  by: {r}");
    }
    let _ = writeln!(rep.text, "  {}", p.detail);
    obj.insert("prediction".into(), json!(p));
}

fn autgroup_task(b: &Built, rep: &mut Report, obj: &mut serde_json::Map<String, Value>) {
    let aut = canon::graph_automorphisms(&b.graph);
    let gens: Vec<&[usize]> = aut.generators().iter().map(|p| p.images()).collect();
    let _ = writeln!(rep.text, "|Aut|: {}", aut.order());
    let _ = writeln!(rep.text, "  generators: {}", gens.len());
    obj.insert("aut_order".into(), json!(aut.order().to_string()));
    obj.insert("aut_generators".into(), json!(gens));
}

fn edge_orbits_task(b: &Built, rep: &mut Report, obj: &mut serde_json::Map<String, Value>) -> Result<(), Error> {
    let mut orbits = Vec::new();
    for orbit in canon::edge_orbits(&b.graph) {
        let ell = b.graph.shortest_cycle_through_edge(orbit[0])?;
        let _ = writeln!(rep.text, "edge orbit of size {}: ell = {}", orbit.len(), ell.map_or("-".into(), |l| l.to_string()));
        orbits.push(json!({ "size": orbit.len(), "ell": ell, "edges": orbit }));
    }
    obj.insert("edge_orbits".into(), json!(orbits));
    Ok(())
}

fn layered_grid(k: usize, l: usize) -> Result<LayeredView, Error> {
    let group = AbelianGroup::new(vec![l, k])?;
    let s: Vec<_> = [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|x| group.elem_mod(x)).collect::<Result<_, _>>()?;
    let s = GeneratingSet::new(&group, s)?;
    let sub = vec![group.elem_mod(&[0, 1])?, group.elem_mod(&[0, -1])?];
    group_induced_layers(&group, &s, &sub)
}

fn execute(cmd: &Command, ctx: &Ctx) -> Result<(String, Report), Error> {
    let mut rep = Report { text: String::new(), result: Value::Null, inconclusive: false };
    let mut obj = serde_json::Map::new();
    let name = match cmd {
        Command::Construct { family, format } => {
            let b = parse_family(family)?.build()?;
            let g = &b.graph;
            match format {
                Format::Graph6 => rep.text = graph6::encode_string(g) + "\n",
                Format::Json => rep.text = serde_json::to_string(&g.to_json())? + "\n",
                Format::Edges => {
                    let _ = writeln!(rep.text, "{} {}", g.n(), g.edge_count());
                    for e in g.edges() {
                        let _ = writeln!(rep.text, "{} {}", e.0, e.1);
                    }
                }
            }
            obj.insert("graph6".into(), json!(graph6::encode_string(g)));
            obj.insert("graph".into(), json!(g.to_json()));
            "construct"
        }
        Command::Analyze { input, tasks } => {
            let b = load(input)?;
            let _ = writeln!(rep.text, "graph: {} vertices, {} edges", b.graph.n(), b.graph.edge_count());
            obj.insert("vertices".into(), json!(b.graph.n()));
            obj.insert("edges".into(), json!(b.graph.edge_count()));
            for task in tasks {
                match task {
                    Task::Transitivity => transitivity(&b, ctx, &mut rep, &mut obj)?,
                    Task::Classes => {
                        let r = orbit_classes(&b.graph, &ctx.limits())?;
                        let (count, exact) = class_count_fields(r.class_count);
                        let _ = writeln!(rep.text, "classes: {}{count}", if exact { "" } else { ">= " });
                        obj.insert("classes".into(), class_report_json(&r));
                        rep.inconclusive |= !exact;
                    }
                    Task::Kappa => kappa_task(&b, ctx, &mut rep, &mut obj)?,
                    Task::Factorize => factorize_task(&b, &mut rep, &mut obj)?,
                    Task::Predict => predict_task(&b, &mut rep, &mut obj),
                    Task::Autgroup => autgroup_task(&b, &mut rep, &mut obj),
                    Task::EdgeOrbits => edge_orbits_task(&b, &mut rep, &mut obj)?,
                }
            }
            "analyze"
        }
        Command::Classes { input } => {
            let b = load(input)?;
            let r = orbit_classes(&b.graph, &ctx.limits())?;
            class_report_text(&r, &mut rep.text);
            rep.inconclusive = !matches!(r.class_count, ClassCount::Exact(_));
            if let Value::Object(m) = class_report_json(&r) {
                obj.extend(m);
            }
            "classes"
        }
        Command::Kappa { input } => {
            kappa_task(&load(input)?, ctx, &mut rep, &mut obj)?;
            "kappa"
        }
        Command::Factorize { input } => {
            factorize_task(&load(input)?, &mut rep, &mut obj)?;
            "factorize"
        }
        Command::Predict { input } => {
            predict_task(&load(input)?, &mut rep, &mut obj);
            "predict"
        }
        Command::Witness { kind: Witness::Zigzag { k, l, a } } => {
            let lv = layered_grid(*k, *l)?;
            let (cycle, mu) = zigzag_cycle(&lv, &ZigzagSpec::new(a.clone()))?;
            let closed = 2 * k - 1 + 2 * a.iter().map(|x| x + 1).sum::<usize>();
            let _ = writeln!(rep.text, "zigzag cycle in C{l} x C{k} with a = {a:?}");
            let _ = writeln!(rep.text, "mu: {mu} (closed form {closed})");
            let _ = writeln!(rep.text, "cycle: {:?}", cycle.seq());
            obj.insert("mu".into(), json!(mu));
            obj.insert("closed_form".into(), json!(closed));
            obj.insert("cycle".into(), json!(cycle));
            "witness"
        }
        Command::Witness { kind: Witness::Boustrophedon { family } } => {
            let b = parse_family(family)?.build()?;
            let pv = b.product.ok_or_else(|| Error::NotApplicable("family is not a two-factor product".into()))?;
            let w = boustrophedon_cycles(&pv)?;
            let _ = writeln!(rep.text, "E_H edges: C has {}, C-hat has {}", w.eh_counts.0, w.eh_counts.1);
            let _ = writeln!(rep.text, "C: {:?}", w.c.seq());
            let _ = writeln!(rep.text, "C-hat: {:?}", w.c_hat.seq());
            if let Value::Object(m) = json!(w) {
                obj.extend(m);
            }
            "witness"
        }
        Command::Census { max_order, order_27, jobs, out, graph_budget, timing } => {
            let mut opts = CensusOptions::new(*max_order);
            opts.include_order_27 = *order_27;
            opts.jobs = *jobs;
            opts.out_dir = out.clone();
            opts.cycle_cap = ctx.cap;
            let per_graph = graph_budget.or(ctx.budget).or(order_27.then_some(60.0));
            opts.graph_budget = per_graph.map(Duration::from_secs_f64);
            let mut report = run_census(&opts)?;
            let _ = writeln!(rep.text, "per-graph budget: {}", per_graph.map_or("none".to_string(), |b| format!("{b}s")));
            obj.insert("graph_budget_seconds".into(), json!(per_graph));
            let _ = writeln!(rep.text, "order  groups  gensets  graphs  members  inconclusive");
            for s in &report.orders {
                let _ = writeln!(
                    rep.text,
                    "{:>5}  {:>6}  {:>7}  {:>6}  {:>7}  {:>12}",
                    s.order, s.groups, s.generating_sets, s.distinct_graphs, s.members, s.inconclusive
                );
            }
            rep.text.push('\n');
            rep.text.push_str(&report.summary_table());
            for r in report.inconclusive() {
                let _ = writeln!(rep.text, "inconclusive: order {} {} S={{{}}}", r.order, r.group, r.genset.join(","));
            }
            if report.partial {
                let _ = writeln!(rep.text, "partial report: budget exhausted");
            }
            rep.inconclusive = report.partial || report.inconclusive().next().is_some();
            if !timing {
                report.timing.clear();
            }
            obj.insert("census".into(), serde_json::to_value(&report)?);
            "census"
        }
    };
    rep.result = Value::Object(obj);
    Ok((name.to_string(), rep))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    if cli.cap == Some(0) || cli.budget.is_some_and(|b| b.is_nan() || b <= 0.0) {
        return Outcome { code: 2, stdout: String::new(), stderr: "error: caps and budgets must be positive\n".into() };
    }
    let ctx = Ctx { cap: cli.cap.unwrap_or(DEFAULT_CYCLE_CAP), budget: cli.budget };
    match execute(&cli.command, &ctx) {
        Ok((name, rep)) => {
            let stdout = if cli.json {
                let envelope = json!({
                    "tool": "hamsym",
                    "version": VERSION,
                    "command": name,
                    "caps": { "cycle_cap": ctx.cap, "budget_seconds": ctx.budget },
                    "inconclusive": rep.inconclusive,
                    "result": rep.result,
                });
                serde_json::to_string_pretty(&envelope).expect("report serializes") + "\n"
            } else if matches!(cli.command, Command::Construct { .. }) {
                rep.text
            } else {
                let budget = ctx.budget.map_or("none".to_string(), |b| format!("{b}s"));
                format!("# hamsym {VERSION}, cycle cap {}, budget {budget}\n{}", ctx.cap, rep.text)
            };
            Outcome { code: if rep.inconclusive { 3 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = match e {
                Error::Inconclusive(_) => 3,
                Error::Parse { .. } => 2,
                _ => 1,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error[E{:03}]: {e}\n", e.code()) }
        }
    }
}
