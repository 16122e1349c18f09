use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrsm::reduction::{
    from_three_partition, from_vertex_cover, vc_solution_to_matching, GadgetRule, ScaleMode, ThreePartitionInstance,
    VcGadgetSpec,
};
use lrsm::{
    blocking_report, check_feasible, divisible_check, feasible_divisible, feasible_exact, lstable, optimize, validate,
    Error, Instance, InstanceDoc, Matching, Objective,
};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "lrsm", version, about = "Location-restricted stable matching toolkit")]
struct Cli {
    #[command(flatten)]
    io: IoArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Instance file (JSON). Reads stdin when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write machine output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance and list every violation.
    Validate,
    /// Construct a feasible matching.
    Feasible {
        #[arg(long, value_enum, default_value_t = FeasibleMode::Exact)]
        mode: FeasibleMode,
    },
    /// Compute an l-stable matching from a seed matching.
    Lstable {
        /// Seed source. Defaults to divisible when the instance is divisible, else exact.
        #[arg(long, value_enum)]
        seed: Option<SeedMode>,
        /// Seed matching file, required with `--seed file`.
        #[arg(long)]
        matching: Option<PathBuf>,
    },
    /// Exhaustive Min-BP / Min-BA.
    Optimize {
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Bp)]
        objective: ObjectiveArg,
        /// Abort (exit 3) rather than inspect more than this many feasible matchings.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Blocking pairs and agents of a matching. Exits 1 when it is not stable.
    Report {
        #[arg(long)]
        matching: PathBuf,
    },
    /// Generate reduction instances.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Clone, Copy, ValueEnum)]
enum FeasibleMode {
    Divisible,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedMode {
    Divisible,
    Exact,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Bp,
    Ba,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Bp => Objective::Bp,
            ObjectiveArg::Ba => Objective::Ba,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Auto,
    Verbatim,
    SingleCycle,
}

#[derive(Subcommand)]
enum Gen {
    /// Instance from a 3-Partition instance.
    #[command(name = "3part")]
    ThreePart {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        target: u64,
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        items: Vec<u64>,
    },
    /// Instance from a Vertex Cover instance.
    Vc {
        /// Graph file: {"vertices": n, "edges": [[i, j], ...]}, 0-based.
        #[arg(long)]
        edges: PathBuf,
        /// Cover size K0.
        #[arg(long)]
        k: usize,
        /// Gadget half-size B2 (scaled mode).
        #[arg(long, required_unless_present = "faithful", conflicts_with = "faithful")]
        b2: Option<usize>,
        /// Size gadgets from epsilon instead of --b2.
        #[arg(long, requires = "epsilon")]
        faithful: bool,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Bp)]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value_t = RuleArg::Auto)]
        rule: RuleArg,
        /// Role-map sidecar path. Defaults to `<output>.roles.json` when --output is set.
        #[arg(long)]
        roles: Option<PathBuf>,
        /// Also write the matching induced by this cover (comma-separated vertices).
        #[arg(long, value_delimiter = ',', requires = "cover_matching")]
        cover: Option<Vec<usize>>,
        #[arg(long, requires = "cover")]
        cover_matching: Option<PathBuf>,
    },
}

#[derive(Deserialize)]
struct GraphDoc {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct OptimizeOut<'a> {
    objective: Objective,
    value: usize,
    enumerated_count: u64,
    assign: &'a [lrsm::ProjectId],
}

/// Failure carrying its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn input(message: impl Into<String>) -> Self {
        Fail {
            code: 2,
            message: message.into(),
        }
    }

    fn negative(message: impl Into<String>) -> Self {
        Fail {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InfeasibleInstance | Error::NotACover(..) | Error::GadgetCycleBroken { .. } => 1,
            Error::LimitExceeded(_) => 3,
            _ => 2,
        };
        let message = match &e {
            Error::InvalidInstance(report) => format!("{}: {}", e.code(), to_json(report)),
            Error::InfeasibleInput(v) => format!("{}: {}", e.code(), to_json(v)),
            _ => format!("{}: {e}", e.code()),
        };
        Fail { code, message }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("output types always serialize")
}

fn read_text(path: Option<&Path>) -> Result<String, Fail> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Fail::input(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Fail::input(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail::input(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(io: &IoArgs) -> Result<Instance, Fail> {
    Ok(Instance::from_json(&read_text(io.input.as_deref())?)?)
}

fn load_matching(path: &Path) -> Result<Matching, Fail> {
    Ok(Matching::from_json(&read_text(Some(path))?)?)
}

/// What a command produced: JSON document plus a text rendering.
struct Output {
    json: String,
    text: String,
}

fn matching_text(m: &Matching) -> String {
    let mut s = String::new();
    for (i, p) in m.assign.iter().enumerate() {
        let _ = writeln!(s, "s{i} -> {p}");
    }
    s
}

fn assign_output(m: &Matching) -> Output {
    Output {
        json: to_json(m),
        text: matching_text(m),
    }
}

fn run(cli: Cli) -> Result<(Output, Option<Fail>), Fail> {
    let io = &cli.io;
    match cli.command {
        Command::Validate => {
            let doc = InstanceDoc::from_json(&read_text(io.input.as_deref())?)?;
            let report = validate(&doc);
            let mut text = String::from(if report.ok { "ok\n" } else { "invalid\n" });
            for v in &report.violations {
                let _ = writeln!(text, "{v:?}");
            }
            let verdict = (!report.ok).then(|| Fail::negative("instance is invalid"));
            Ok((
                Output {
                    json: to_json(&report),
                    text,
                },
                verdict,
            ))
        }
        Command::Feasible { mode } => {
            let inst = load_instance(io)?;
            let m = match mode {
                FeasibleMode::Divisible => feasible_divisible(&inst)?,
                FeasibleMode::Exact => feasible_exact(&inst).ok_or(Error::InfeasibleInstance)?,
            };
            Ok((assign_output(&m), None))
        }
        Command::Lstable { seed, matching } => {
            let inst = load_instance(io)?;
            let seed = match seed {
                Some(s) => s,
                None if matching.is_some() => SeedMode::File,
                None if divisible_check(&inst).is_some() => SeedMode::Divisible,
                None => SeedMode::Exact,
            };
            let start = match seed {
                SeedMode::Divisible => feasible_divisible(&inst)?,
                SeedMode::Exact => feasible_exact(&inst).ok_or(Error::InfeasibleInstance)?,
                SeedMode::File => {
                    let path = matching.ok_or_else(|| Fail::input("--seed file needs --matching"))?;
                    load_matching(&path)?
                }
            };
            Ok((assign_output(&lstable(&inst, &start)?), None))
        }
        Command::Optimize { objective, limit } => {
            let inst = load_instance(io)?;
            let best = optimize(&inst, objective.into(), limit)?;
            let out = OptimizeOut {
                objective: best.objective,
                value: best.value,
                enumerated_count: best.enumerated_count,
                assign: &best.best_matching.assign,
            };
            let text = format!(
                "min {} = {} over {} feasible matchings\n{}",
                best.objective,
                best.value,
                best.enumerated_count,
                matching_text(&best.best_matching)
            );
            Ok((
                Output {
                    json: to_json(&out),
                    text,
                },
                None,
            ))
        }
        Command::Report { matching } => {
            let inst = load_instance(io)?;
            let m = load_matching(&matching)?;
            if let Err(violations) = check_feasible(&inst, &m) {
                return Err(Error::InfeasibleInput(violations).into());
            }
            let report = blocking_report(&inst, &m)?;
            let mut text = format!(
                "{} blocking pairs ({} local), {} blocking agents\n",
                report.pair_count, report.local_pair_count, report.agent_count
            );
            for bp in &report.pairs {
                let _ = writeln!(
                    text,
                    "({}, {}){}",
                    bp.student,
                    bp.project,
                    if bp.local { " local" } else { "" }
                );
            }
            let verdict = (!report.is_stable()).then(|| Fail::negative("matching is not stable"));
            Ok((
                Output {
                    json: to_json(&report),
                    text,
                },
                verdict,
            ))
        }
        Command::Gen(Gen::ThreePart { m, target, items }) => {
            let tp = ThreePartitionInstance::new(m, items, target)?;
            let doc = from_three_partition(&tp)?.to_doc();
            let text = format!(
                "{} students, {} projects, {} locations\n",
                doc.students.len(),
                doc.projects.len(),
                doc.locations
            );
            Ok((
                Output {
                    json: to_json(&doc),
                    text,
                },
                None,
            ))
        }
        Command::Gen(Gen::Vc {
            edges,
            k,
            b2,
            faithful,
            epsilon,
            objective,
            rule,
            roles,
            cover,
            cover_matching,
        }) => {
            let graph: GraphDoc = serde_json::from_str(&read_text(Some(&edges))?)
                .map_err(|e| Fail::input(format!("bad graph file {}: {e}", edges.display())))?;
            let mode = match (faithful, epsilon, b2) {
                (true, Some(epsilon), _) => ScaleMode::Faithful {
                    epsilon,
                    objective: objective.into(),
                },
                (false, _, Some(b2)) => ScaleMode::Scaled { b2 },
                _ => return Err(Fail::input("give either --b2 or --faithful --epsilon")),
            };
            let spec = VcGadgetSpec {
                n_v: graph.vertices,
                edges: graph.edges,
                k0: k,
                mode,
                rule: match rule {
                    RuleArg::Auto => GadgetRule::Auto,
                    RuleArg::Verbatim => GadgetRule::Verbatim,
                    RuleArg::SingleCycle => GadgetRule::SingleCycle,
                },
            };
            let (inst, layout) = from_vertex_cover(&spec)?;
            let roles_path = roles.or_else(|| {
                io.output.as_ref().map(|o| {
                    let mut name = o.clone().into_os_string();
                    name.push(".roles.json");
                    PathBuf::from(name)
                })
            });
            if let Some(path) = roles_path {
                write_file(&path, &(to_json(&layout.role_map()) + "\n"))?;
            }
            if let (Some(cover), Some(path)) = (cover, cover_matching) {
                let m = vc_solution_to_matching(&inst, &layout, &cover)?;
                write_file(&path, &(to_json(&m) + "\n"))?;
            }
            let doc = inst.to_doc();
            let text = format!(
                "{} students, {} projects, B1 = {}, B2 = {}\n",
                doc.students.len(),
                doc.projects.len(),
                layout.b1,
                layout.b2
            );
            Ok((
                Output {
                    json: to_json(&doc),
                    text,
                },
                None,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.io.format;
    let output = cli.io.output.clone();
    match run(cli) {
        Ok((out, verdict)) => {
            let body = match format {
                Format::Json => out.json + "\n",
                Format::Text => out.text,
            };
            let written = match &output {
                Some(path) => write_file(path, &body),
                None => io::stdout()
                    .write_all(body.as_bytes())
                    .map_err(|e| Fail::input(format!("cannot write stdout: {e}"))),
            };
            if let Err(f) = written {
                eprintln!("error: {}", f.message);
                return ExitCode::from(f.code);
            }
            match verdict {
                Some(f) => {
                    eprintln!("{}", f.message);
                    ExitCode::from(f.code)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
