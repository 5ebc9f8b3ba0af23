mod input;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use braidrack::classify::{preset_name, search, SearchSpec};
use braidrack::exact::ExactError;
use braidrack::hurwitz::{census, orbit, ORBIT_CAP};
use braidrack::nichols::cubic::{check_conditions, cubic_kernel};
use braidrack::nichols::integral::{evaluate_chain, integral_preset, INTEGRAL_PRESETS};
use braidrack::nichols::quotient::{presentation_preset, quotient_dims, relation_in_kernel, Presentation};
use braidrack::nichols::symmetrizer::{symmetrizer_rank, RankOptions};
use braidrack::nichols::graded_dims;
use braidrack::percolate::{format_ratio, immunity_table};
use braidrack::presets::PRESET_NAMES;
use braidrack::report::{verify, Profile};
use braidrack::{find_isomorphism, BraidingError, ClassifyError, HurwitzError, NicholsError, PercolateError, RackError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use input::{load_cocycle, load_rack, read_file};
use output::{cell, Format, Output, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Rack(#[from] RackError),
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
    #[error(transparent)]
    Percolate(#[from] PercolateError),
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    Nichols(#[from] NicholsError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Racks, Hurwitz orbits and Nichols algebras of braided racks.
#[derive(Debug, Parser)]
#[command(name = "braidrack", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Field for constant cocycles: QQ, Fp(p), or a quotient like QQ[t]/(t^2+t+1).
    #[arg(long, global = true, default_value = "QQ")]
    field: String,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rack tables and invariants.
    #[command(subcommand)]
    Rack(RackCommand),
    /// Braid group orbits on tuples.
    #[command(subcommand)]
    Hurwitz(HurwitzCommand),
    /// Minimal plagues and immunity of every 3-orbit.
    Immunity { rack: String },
    /// Nichols algebra dimensions and cubic relations.
    #[command(subcommand)]
    Nichols(NicholsCommand),
    /// Search for braided racks with few cubic orbits.
    Classify(ClassifyArgs),
    /// Recompute every reference value and compare exactly.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
        /// Keep per-entry runtimes in the JSON output.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Subcommand)]
enum RackCommand {
    /// Invariants of a preset or a rack file.
    Info { rack: String },
    /// An isomorphism between two racks, if one exists.
    Iso { first: String, second: String },
    /// Names of the preset racks.
    PresetList,
}

#[derive(Debug, Subcommand)]
enum HurwitzCommand {
    /// Orbit sizes in X^n.
    Census {
        rack: String,
        #[arg(short, default_value_t = 3)]
        n: usize,
    },
    /// The orbit of one tuple, with the sigma_1 and sigma_2 edges.
    Orbit {
        rack: String,
        /// Comma-separated 1-based tuple, e.g. 1,1,2.
        #[arg(long, value_delimiter = ',', required = true)]
        seed: Vec<usize>,
    },
}

#[derive(Debug, Args)]
struct CocycleArgs {
    /// Rack preset or file; omit for cocycle presets that carry their own rack.
    rack: Option<String>,
    /// Cocycle preset or JSON file.
    #[arg(long, default_value = "minus1")]
    cocycle: String,
    /// Use the constant cocycle q over --field instead.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DimsMethod {
    Derivation,
    Symmetrizer,
}

#[derive(Debug, Subcommand)]
enum NicholsCommand {
    /// Graded dimensions up to a degree.
    Dims {
        #[command(flatten)]
        cocycle: CocycleArgs,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "derivation")]
        method: DimsMethod,
    },
    /// Kernel of X_3 per Hurwitz orbit and the three conditions.
    Cubic {
        #[command(flatten)]
        cocycle: CocycleArgs,
        /// Degree up to which the Hilbert series is computed for the conditions.
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Dimensions of the algebra presented by a relations file.
    Quotient {
        #[command(flatten)]
        cocycle: CocycleArgs,
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        relations: Option<String>,
        /// Built-in presentation.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = 30)]
        max_degree: usize,
    },
    /// Derivation chain on the top-degree integral of a built-in example.
    Integral {
        #[arg(long)]
        preset: String,
    },
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,6")]
    degree: Vec<usize>,
    #[arg(long, default_value_t = 6, conflicts_with = "any_k3")]
    k3_max: usize,
    /// Drop the bound on k3.
    #[arg(long)]
    any_k3: bool,
    #[arg(long, default_value_t = 12)]
    size_max: usize,
    /// Also report decomposable racks.
    #[arg(long)]
    decomposable: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

/// A finished command: its output and whether every check passed.
struct Outcome {
    output: Output,
    pass: bool,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Outcome { output, pass: true }
    }
}

fn one_based(t: &[u32]) -> String {
    t.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn rack_command(cmd: RackCommand) -> Result<Output, CliError> {
    match cmd {
        RackCommand::Info { rack } => {
            let r = load_rack(&rack)?;
            #[derive(Serialize)]
            struct Info {
                name: Option<String>,
                #[serde(flatten)]
                invariants: braidrack::RackInvariants,
                table: Vec<Vec<usize>>,
            }
            let info = Info { name: preset_name(&r), invariants: r.invariants(), table: r.one_based_table() };
            let mut out = Output::fields(&info)?;
            out.table.rows.retain(|row| row[0] != "table");
            Ok(out)
        }
        RackCommand::Iso { first, second } => {
            let (a, b) = (load_rack(&first)?, load_rack(&second)?);
            let map = find_isomorphism(&a, &b).map(|m| m.iter().map(|x| x + 1).collect::<Vec<_>>());
            let data = json!({ "isomorphic": map.is_some(), "map": map });
            Output::fields(&data)
        }
        RackCommand::PresetList => {
            let mut t = Table::new(["name", "size"]);
            let mut data = Vec::new();
            for name in PRESET_NAMES {
                let size = braidrack::presets::preset(name)?.size();
                t.row([name.to_string(), size.to_string()]);
                data.push(json!({ "name": name, "size": size }));
            }
            Output::new(&data, t)
        }
    }
}

fn hurwitz_command(cmd: HurwitzCommand) -> Result<Output, CliError> {
    match cmd {
        HurwitzCommand::Census { rack, n } => {
            let c = census(&load_rack(&rack)?, n)?;
            let mut t = Table::new(["orbit_size", "count", "closed_form"]);
            for (size, count) in &c.counts {
                let formula = c.formulas.as_ref().and_then(|f| f.get(size)).map_or("-".into(), |x| x.to_string());
                t.row([size.to_string(), count.to_string(), formula]);
            }
            Output::new(&c, t)
        }
        HurwitzCommand::Orbit { rack, seed } => {
            let r = load_rack(&rack)?;
            if seed.iter().any(|&x| x == 0 || x > r.size()) {
                return Err(CliError::Usage(format!("seed entries must lie in 1..={}", r.size())));
            }
            let tuple: Vec<u32> = seed.iter().map(|&x| x as u32 - 1).collect();
            let o = orbit(&r, &tuple, ORBIT_CAP)?;
            let export = o.export();
            let mut headers = vec!["index".to_string(), "tuple".to_string()];
            headers.extend((1..o.arity).map(|i| format!("sigma{i}")));
            let mut t = Table::new(headers);
            for (k, tup) in o.tuples.iter().enumerate() {
                let mut row = vec![k.to_string(), one_based(tup)];
                row.extend(o.edges.iter().map(|e| e[k].to_string()));
                t.row(row);
            }
            Output::new(&export, t)
        }
    }
}

fn immunity_command(rack: &str) -> Result<Output, CliError> {
    let rows = immunity_table(&load_rack(rack)?)?;
    let mut t = Table::new(["orbit_size", "orbits", "min_plague", "immunity", "witness"]);
    for row in rows.values() {
        let witness: Vec<String> = row.witness.iter().map(|w| format!("({})", cell(&json!(w)).trim_matches(['[', ']']))).collect();
        t.row([
            row.orbit_size.to_string(),
            row.orbits.to_string(),
            row.plague_size.to_string(),
            format_ratio(&row.immunity),
            witness.join(" "),
        ]);
    }
    Output::new(&rows.values().collect::<Vec<_>>(), t)
}

fn cocycle(args: &CocycleArgs, field: &str) -> Result<braidrack::braiding::Cocycle, CliError> {
    load_cocycle(args.rack.as_deref(), &args.cocycle, field, args.q.as_deref())
}

fn dims_table(dims: &[usize]) -> Table {
    let mut t = Table::new(["degree", "dim"]);
    for (n, d) in dims.iter().enumerate() {
        t.row([n, *d]);
    }
    t
}

fn nichols_command(cmd: NicholsCommand, field: &str) -> Result<Output, CliError> {
    match cmd {
        NicholsCommand::Dims { cocycle: args, max_degree, method } => {
            let c = cocycle(&args, field)?;
            match method {
                DimsMethod::Derivation => {
                    let g = graded_dims(&c, max_degree)?;
                    let table = dims_table(&g.dims);
                    Output::new(&g, table)
                }
                DimsMethod::Symmetrizer => {
                    let opts = RankOptions::default();
                    let ranks = (0..=max_degree)
                        .map(|n| symmetrizer_rank(&c, n, &opts))
                        .collect::<Result<Vec<_>, _>>()?;
                    let mut t = Table::new(["degree", "dim", "words", "blocks", "route"]);
                    for r in &ranks {
                        t.row([r.degree.to_string(), r.rank.to_string(), r.words.to_string(), r.blocks.to_string(), format!("{:?}", r.route)]);
                    }
                    Output::new(&ranks, t)
                }
            }
        }
        NicholsCommand::Cubic { cocycle: args, max_degree } => {
            let c = cocycle(&args, field)?;
            let kernel = cubic_kernel(&c)?;
            let g = graded_dims(&c, max_degree)?;
            let conditions = check_conditions(c.size(), &g.dims, kernel.total, g.complete);
            let mut t = Table::new(["orbit_size", "representative", "ker_X3", "ker_S3", "min_plague", "within_bound"]);
            for o in &kernel.orbits {
                t.row([
                    o.size.to_string(),
                    cell(&json!(o.representative)),
                    o.kernel.to_string(),
                    o.symmetrizer_kernel.to_string(),
                    cell(&json!(o.plague_size)),
                    cell(&json!(o.within_immunity_bound)),
                ]);
            }
            for (label, value) in [
                ("total", kernel.total.to_string()),
                ("cond1 (truncated)", conditions.cond1_truncated.to_string()),
                ("cond2", conditions.cond2.to_string()),
                ("cond3", conditions.cond3.to_string()),
            ] {
                t.row([label.to_string(), String::new(), value, String::new(), String::new(), String::new()]);
            }
            Output::new(&json!({ "kernel": kernel, "conditions": conditions }), t)
        }
        NicholsCommand::Quotient { cocycle: args, relations, preset, max_degree } => {
            let p = match (relations, preset) {
                (_, Some(name)) => presentation_preset(&name)?,
                (Some(path), None) => Presentation::from_json(cocycle(&args, field)?, &read_file(&path)?)?,
                (None, None) => return Err(CliError::Usage("give --relations or --preset".into())),
            };
            let in_kernel = relation_in_kernel(&p);
            let g = quotient_dims(&p, max_degree)?;
            let mut t = dims_table(&g.dims);
            t.row(["total".to_string(), g.total().to_string()]);
            t.row(["relations in ker S".to_string(), format!("{}/{}", in_kernel.iter().filter(|&&x| x).count(), in_kernel.len())]);
            Output::new(&json!({ "dims": g, "total": g.total(), "top_degree": g.top_degree(), "relations_in_kernel": in_kernel }), t)
        }
        NicholsCommand::Integral { preset } => {
            let p = integral_preset(&preset).map_err(|_| {
                let names: Vec<&str> = INTEGRAL_PRESETS.iter().map(|p| p.name).collect();
                CliError::Usage(format!("unknown integral preset {preset:?}; expected one of {}", names.join(", ")))
            })?;
            let c = braidrack::braiding::cocycle_preset(p.name, None)?;
            let (_, value) = evaluate_chain(&c, p.word, p.chain)?;
            Output::fields(&value)
        }
    }
}

fn classify_command(args: ClassifyArgs) -> Result<Output, CliError> {
    let spec = SearchSpec {
        degrees: args.degree,
        k3_max: (!args.any_k3).then_some(args.k3_max),
        size_max: args.size_max,
        require_indecomposable: !args.decomposable,
    };
    let found = search(&spec)?;
    let mut t = Table::new(["name", "size", "degree", "k3", "m"]);
    for r in &found {
        t.row([r.name.clone().unwrap_or_else(|| "-".into()), r.size.to_string(), r.degree.to_string(), r.k3.to_string(), r.m.to_string()]);
    }
    Output::new(&found, t)
}

fn verify_command(profile: ProfileArg, timings: bool) -> Result<Outcome, CliError> {
    let profile = match profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Full => Profile::Full,
    };
    let report = verify(profile, |c| eprintln!("{c}"));
    let pass = report.pass;
    let report = if timings { report } else { report.without_timings() };
    let mut t = Table::new(["criterion", "check", "source", "expected", "computed", "match"]);
    for c in &report.criteria {
        for e in &c.entries {
            t.row([
                c.id.clone(),
                e.check.clone(),
                cell(&json!(e.source)),
                e.expected.clone(),
                e.computed.clone(),
                if e.matches { "yes" } else { "NO" }.to_string(),
            ]);
        }
    }
    Ok(Outcome { output: Output::new(&report, t)?, pass })
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    Ok(match cli.command {
        Command::Rack(cmd) => rack_command(cmd)?.into(),
        Command::Hurwitz(cmd) => hurwitz_command(cmd)?.into(),
        Command::Immunity { rack } => immunity_command(&rack)?.into(),
        Command::Nichols(cmd) => nichols_command(cmd, &cli.field)?.into(),
        Command::Classify(args) => classify_command(args)?.into(),
        Command::VerifyPaper { profile, timings } => verify_command(profile, timings)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = run(cli).and_then(|outcome| {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        outcome.output.write(format, &mut lock)?;
        lock.flush()?;
        Ok(outcome.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
