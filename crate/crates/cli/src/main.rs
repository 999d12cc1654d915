//! Batch front door: graph6 lines in, JSON lines out.
//!
//! Stream commands (`ml`, `fc`, `classify`) read graph6 from files or stdin,
//! fan the graphs out over a worker pool, and emit one JSON record per input
//! line in input order. `survey` and `generate` drive the built-in
//! isomorph-free generator; `construct` emits the named construction
//! families; `oracle-check` runs the brute-force agreement suites.
//!
//! Exit codes: 0 all lines processed, 2 some line-level errors, 1 fatal.

mod stream;

use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use leafcost::classify::{self, FragmentClass, LeafLabel};
use leafcost::constructions::{self, LabelledConstruction};
use leafcost::faultcost;
use leafcost::graph::{ConnectivityClass, Graph};
use leafcost::mlst::{self, MlNumber};
use leafcost::oracle::{ConnectivityFilter, GraphClassFilter};
use leafcost::{parse_graph6, write_graph6, Deadline};

#[derive(Parser)]
#[command(name = "leafcost", version, about = "Minimum leaf numbers and fault costs of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct StreamArgs {
    /// Input files of graph6 lines; stdin when none are given.
    files: Vec<String>,
    /// Worker threads (graphs are processed one per task).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Per-graph time budget; lines over budget produce an error record.
    #[arg(long)]
    timeout_secs: Option<u64>,
}

#[derive(Args, Clone)]
struct FilterArgs {
    /// Minimum girth to admit.
    #[arg(long)]
    girth_min: Option<usize>,
    /// Restrict to 3-regular graphs.
    #[arg(long)]
    cubic: bool,
    /// Restrict to bipartite graphs.
    #[arg(long)]
    bipartite: bool,
    /// Connectivity requirement.
    #[arg(long, value_enum, default_value_t = ConnArg::Two)]
    connectivity: ConnArg,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ConnArg {
    Any,
    Two,
    Three,
}

impl FilterArgs {
    fn to_filter(&self) -> GraphClassFilter {
        GraphClassFilter {
            min_girth: self.girth_min,
            connectivity: match self.connectivity {
                ConnArg::Any => ConnectivityFilter::Any,
                ConnArg::Two => ConnectivityFilter::TwoConnected,
                ConnArg::Three => ConnectivityFilter::ThreeConnected,
            },
            regular_degree: self.cubic.then_some(3),
            bipartite_only: self.bipartite,
        }
    }

    fn describe(&self) -> String {
        let mut parts = vec![match self.connectivity {
            ConnArg::Any => "any",
            ConnArg::Two => "2-connected",
            ConnArg::Three => "3-connected",
        }
        .to_string()];
        if self.cubic {
            parts.push("cubic".into());
        }
        if self.bipartite {
            parts.push("bipartite".into());
        }
        if let Some(g) = self.girth_min {
            parts.push(format!("girth>={g}"));
        }
        parts.join(",")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimum leaf number of each input graph.
    Ml(StreamArgs),
    /// Fault cost of each input graph.
    Fc {
        #[command(flatten)]
        stream: StreamArgs,
        /// Reject inputs that are not 2-connected (the default).
        #[arg(long, overrides_with = "no_require_2_connected")]
        require_2_connected: bool,
        /// Accept any input; graphs with cut vertices still error out of the
        /// fault cost itself.
        #[arg(long)]
        no_require_2_connected: bool,
    },
    /// Leaf-guaranteed classification of each input graph.
    Classify(StreamArgs),
    /// Count fault costs over a generated or supplied graph class.
    Survey {
        /// Vertex count for the internal generator.
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        filter: FilterArgs,
        /// Read the class from a graph6 file instead of generating it.
        #[arg(long, conflicts_with = "order")]
        input: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Stream the internal generator as graph6 lines.
    Generate {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Emit a named construction family: graph6 line, then its role map.
    Construct {
        /// gm, hm, xi8, xi9, petersen-gk, bipartite12, type1, type2,
        /// cubic-fc3, fig5, fig6, fig7, exemplars
        family: String,
        /// Family parameter (m or k) where one applies.
        #[arg(long)]
        param: Option<usize>,
        /// Suppress the role-map lines.
        #[arg(long)]
        graph6_only: bool,
    },
    /// Certify the fragment class of (graph, a, x, y).
    Fragment {
        graph6: String,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Run the brute-force agreement suites.
    OracleCheck {
        #[arg(long, value_enum, default_value_t = Tier::Default)]
        tier: Tier,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tier {
    Default,
    Extended,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn deadline_of(args: &StreamArgs) -> Deadline {
    match args.timeout_secs {
        Some(s) => Deadline::after(Duration::from_secs(s)),
        None => Deadline::NONE,
    }
}

fn ml_json(ml: MlNumber) -> serde_json::Value {
    match ml {
        MlNumber::Finite(k) => json!(k),
        MlNumber::Infinite => json!("infinite"),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Ml(args) => {
            let deadline = deadline_of(&args);
            Ok(stream::run(&args.files, args.threads, move |line| {
                let record = match parse_graph6(line) {
                    Ok(g) => match mlst::ml_number_within(&g, deadline) {
                        Ok(ml) => json!({"graph6": line, "n": g.n(), "ml": ml_json(ml)}),
                        Err(_) => json!({"graph6": line, "error": "timeout"}),
                    },
                    Err(e) => json!({"graph6": line, "error": e.to_string()}),
                };
                (record.to_string(), record.get("error").is_some())
            }))
        }
        Command::Fc { stream: args, no_require_2_connected, .. } => {
            let deadline = deadline_of(&args);
            let require = !no_require_2_connected;
            Ok(stream::run(&args.files, args.threads, move |line| {
                let record = fc_record(line, require, deadline);
                (record.to_string(), record.get("error").is_some())
            }))
        }
        Command::Classify(args) => {
            let deadline = deadline_of(&args);
            Ok(stream::run(&args.files, args.threads, move |line| {
                let record = classify_record(line, deadline);
                (record.to_string(), record.get("error").is_some())
            }))
        }
        Command::Survey { order, filter, input, format, threads } => {
            survey(order, &filter, input.as_deref(), format, threads)
        }
        Command::Generate { order, filter } => {
            let graphs = leafcost::oracle::generate_nonisomorphic(order, &filter.to_filter())
                .map_err(|e| e.to_string())?;
            let mut out = std::io::stdout().lock();
            for g in &graphs {
                writeln!(out, "{}", write_graph6(g)).map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct { family, param, graph6_only } => {
            let built = construct(&family, param)?;
            let mut out = std::io::stdout().lock();
            for c in &built {
                writeln!(out, "{}", write_graph6(&c.graph)).map_err(|e| e.to_string())?;
                if !graph6_only {
                    let roles: serde_json::Map<String, serde_json::Value> = c
                        .roles
                        .iter()
                        .map(|(k, &v)| (k.clone(), json!(v)))
                        .collect();
                    writeln!(out, "{}", serde_json::Value::Object(roles))
                        .map_err(|e| e.to_string())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fragment { graph6, a, x, y } => {
            let g = parse_graph6(&graph6).map_err(|e| e.to_string())?;
            let spec = classify::fragment_class(&g, a, x, y).map_err(|e| e.to_string())?;
            let witnesses: Vec<serde_json::Value> = spec
                .witnesses
                .iter()
                .map(|(del, w)| json!({"deleted": del, "path": w.order}))
                .collect();
            let record = json!({
                "graph6": graph6,
                "a": a, "x": x, "y": y,
                "class": class_name(spec.class),
                "witnesses": witnesses,
            });
            println!("{record}");
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleCheck { tier } => oracle_check(matches!(tier, Tier::Extended)),
    }
}

fn class_name(c: FragmentClass) -> &'static str {
    match c {
        FragmentClass::NotWeak => "not-weak",
        FragmentClass::Weak => "weak",
        FragmentClass::Medium => "medium",
        FragmentClass::Strong => "strong",
    }
}

fn fc_record(line: &str, require_2_connected: bool, deadline: Deadline) -> serde_json::Value {
    let g = match parse_graph6(line) {
        Ok(g) => g,
        Err(e) => return json!({"graph6": line, "error": e.to_string()}),
    };
    if require_2_connected
        && (g.n() < 3 || g.connectivity_class() < ConnectivityClass::TwoConnected)
    {
        return json!({"graph6": line, "error": "NotTwoConnected"});
    }
    match faultcost::fault_cost_within(&g, deadline) {
        Ok(r) => json!({
            "graph6": line,
            "n": g.n(),
            "ml": r.ml,
            "phi": r.phi,
            "per_vertex": r.per_vertex_cost,
            "optimal_profile": r.optimal_profile.degrees(),
        }),
        Err(e) => json!({"graph6": line, "error": e.to_string()}),
    }
}

fn classify_record(line: &str, deadline: Deadline) -> serde_json::Value {
    let g = match parse_graph6(line) {
        Ok(g) => g,
        Err(e) => return json!({"graph6": line, "error": e.to_string()}),
    };
    if g.n() < 3 {
        return json!({"graph6": line, "error": "graph too small to classify"});
    }
    match classify::classify_leaf_guaranteed_within(&g, deadline) {
        Ok(c) => {
            let (label, k) = match c.label {
                LeafLabel::LeafStable(k) => ("leaf-stable", Some(k)),
                LeafLabel::LeafCritical(k) => ("leaf-critical", Some(k)),
                LeafLabel::LeafGuaranteedMixed(k) => ("leaf-guaranteed-mixed", Some(k)),
                LeafLabel::NotLeafGuaranteed => ("not-leaf-guaranteed", None),
            };
            json!({
                "graph6": line,
                "n": g.n(),
                "ml": ml_json(c.ml),
                "class": label,
                "k": k,
                "vertex_deleted_ml": c.vertex_deleted_mls.iter().map(|&m| ml_json(m)).collect::<Vec<_>>(),
            })
        }
        Err(_) => json!({"graph6": line, "error": "timeout"}),
    }
}

fn survey(
    order: Option<usize>,
    filter: &FilterArgs,
    input: Option<&str>,
    format: Format,
    threads: usize,
) -> Result<ExitCode, String> {
    use rayon::prelude::*;
    let started = Instant::now();
    let (graphs, source, order_desc) = match input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
            let mut graphs = Vec::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                graphs.push(parse_graph6(line.trim()).map_err(|e| format!("{line}: {e}"))?);
            }
            let order = graphs.first().map(Graph::n).unwrap_or(0);
            (graphs, "external-stream", order)
        }
        None => {
            let n = order.ok_or("survey needs --order or --input")?;
            let graphs = leafcost::oracle::generate_nonisomorphic(n, &filter.to_filter())
                .map_err(|e| e.to_string())?;
            (graphs, "internal-generator", n)
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let counts: std::collections::BTreeMap<u32, usize> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| faultcost::fault_cost(g).map(|r| r.phi))
            .try_fold(std::collections::BTreeMap::new, |mut m, phi| {
                phi.map(|p| {
                    *m.entry(p).or_insert(0usize) += 1;
                    m
                })
            })
            .try_reduce(std::collections::BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                Ok(a)
            })
    })
    .map_err(|e| format!("survey input: {e}"))?;

    let total: usize = counts.values().sum();
    let wall = started.elapsed().as_secs_f64();
    match format {
        Format::Jsonl => {
            let counts_json: serde_json::Map<String, serde_json::Value> = counts
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            println!(
                "{}",
                json!({
                    "order": order_desc,
                    "filter": filter.describe(),
                    "source": source,
                    "counts": counts_json,
                    "total": total,
                    "wall_time_secs": wall,
                })
            );
        }
        Format::Csv => {
            let max_phi = counts.keys().max().copied().unwrap_or(0);
            let header: Vec<String> = (0..=max_phi).map(|p| format!("phi{p}")).collect();
            println!("order,filter,source,total,wall_time_secs,{}", header.join(","));
            let row: Vec<String> = (0..=max_phi)
                .map(|p| counts.get(&p).copied().unwrap_or(0).to_string())
                .collect();
            println!(
                "{},{},{},{},{:.3},{}",
                order_desc,
                filter.describe(),
                source,
                total,
                wall,
                row.join(",")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(family: &str, param: Option<usize>) -> Result<Vec<LabelledConstruction>, String> {
    let need = |what: &str| param.ok_or(format!("family {what} needs --param"));
    let built = match family {
        "gm" => vec![constructions::build_gm(need("gm")?).map_err(|e| e.to_string())?],
        "hm" => vec![constructions::build_hm(need("hm")?).map_err(|e| e.to_string())?],
        "xi8" => vec![constructions::build_xi8()],
        "xi9" => vec![constructions::find_xi9()],
        "petersen-gk" => {
            vec![constructions::build_petersen_gk(need("petersen-gk")?).map_err(|e| e.to_string())?]
        }
        "bipartite12" => vec![constructions::build_bipartite12()],
        "type1" => vec![constructions::build_type1_fig4()],
        "type2" => vec![constructions::build_type2_fig4()],
        "cubic-fc3" => {
            vec![constructions::build_cubic_fc3(need("cubic-fc3")?).map_err(|e| e.to_string())?]
        }
        "fig5" => constructions::build_weak_fragments_fig5(),
        "fig6" => constructions::build_medium_fragments_fig6(),
        "fig7" => constructions::build_tfc1_fig7(),
        "exemplars" => constructions::min_fault_cost_exemplars()
            .into_iter()
            .map(|(phi, graph)| {
                let mut c = LabelledConstruction { graph, roles: Default::default() };
                c.roles.insert("phi".into(), phi as usize);
                c
            })
            .collect(),
        other => return Err(format!("unknown family {other:?}")),
    };
    Ok(built)
}

fn oracle_check(extended: bool) -> Result<ExitCode, String> {
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("{}: {}", name, if ok { "ok" } else { "FAILED" });
        if !ok {
            failures += 1;
        }
    };
    leafcost::checks::run_default_tier(&mut check);
    if extended {
        leafcost::checks::run_extended_tier(&mut check);
    }
    if failures == 0 {
        println!("all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failures} check(s) failed");
        Ok(ExitCode::from(1))
    }
}
