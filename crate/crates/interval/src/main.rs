use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use interval::datafile::{emit_library, oracle_entry, parse_library};
use interval::emit::{emit_dot, emit_json};
use interval::run::{bench, format_table, run};
use interval::spec::{parse_specs, GroupSpec, SubgroupRule};
use interval::{Method, RunError, Settings};
use interval_core::maximal::{embedding_conjugates, SmallCPolicy};
use interval_core::oracle::{all_subgroups, MaximalLibrary};
use interval_core::Caps;

#[derive(Parser)]
#[command(name = "interval", version, about = "Intermediate subgroups of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the interval [U, G] for one group spec.
    Compute(ComputeArgs),
    /// Time the methods over every record of a corpus file.
    Bench(BenchArgs),
    /// Subgroup classes of G by brute force, or its maximal subgroups as a data file.
    Oracle(OracleArgs),
    /// Conjugates of a target subgroup A that strictly contain U.
    Embed(EmbedArgs),
}

#[derive(Args)]
struct Common {
    /// Group spec file.
    #[arg(long)]
    group: PathBuf,
    /// Record to use when the file holds several.
    #[arg(long)]
    label: Option<String>,
    /// Overrides the file's subgroup rule (trivial, sylow:p, derived-of-sylow:p, gens:..).
    #[arg(long)]
    subgroup: Option<SubgroupRule>,
    #[arg(long, default_value_t = Caps::default().coset_index)]
    cap_index: u128,
    #[arg(long, default_value_t = Caps::default().oracle_order)]
    cap_order: u128,
    #[arg(long, default_value_t = Caps::default().class_elements)]
    cap_class: u128,
    #[arg(long)]
    maximal_data: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Skip the orbit-length filter on maximal subgroups.
    #[arg(long)]
    no_orbit_filter: bool,
    #[arg(long, value_enum, default_value_t = SmallC::Auto)]
    small_c: SmallC,
}

#[derive(Clone, Copy, ValueEnum)]
enum SmallC {
    Auto,
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Dot,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleEmit {
    Table,
    Datafile,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "maximal")]
    method: Method,
    #[arg(long, value_enum, default_value_t = Emit::Table)]
    emit: Emit,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    /// Methods for records without a `methods` line.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    method: Vec<Method>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = OracleEmit::Table)]
    emit: OracleEmit,
}

#[derive(Args)]
struct EmbedArgs {
    #[command(flatten)]
    common: Common,
    /// The subgroup A whose conjugates are listed.
    #[arg(long)]
    target: SubgroupRule,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        Failure { code: e.exit_code() as u8, error: e.into() }
    }
}

fn input_error(error: anyhow::Error) -> Failure {
    Failure { code: 2, error }
}

fn load_specs(common: &Common) -> Result<Vec<GroupSpec>, Failure> {
    let text = std::fs::read_to_string(&common.group)
        .with_context(|| format!("reading {}", common.group.display()))
        .map_err(input_error)?;
    let mut specs = parse_specs(&text).map_err(|e| input_error(e.into()))?;
    if let Some(rule) = &common.subgroup {
        for s in &mut specs {
            s.subgroup = rule.clone();
        }
    }
    Ok(specs)
}

fn pick(specs: Vec<GroupSpec>, label: Option<&str>, path: &Path) -> Result<GroupSpec, Failure> {
    let found = match label {
        Some(l) => specs.into_iter().find(|s| s.label == l),
        None => specs.into_iter().next(),
    };
    found.ok_or_else(|| input_error(anyhow::anyhow!("no matching record in {}", path.display())))
}

fn settings(common: &Common) -> Result<Settings, Failure> {
    let library = match &common.maximal_data {
        None => None,
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading {}", p.display()))
                .map_err(input_error)?;
            Some(parse_library(&text).map_err(|e| input_error(e.into()))?)
        }
    };
    Ok(Settings {
        caps: Caps {
            coset_index: common.cap_index,
            oracle_order: common.cap_order,
            class_elements: common.cap_class,
            ..Caps::default()
        },
        orbit_filter: !common.no_orbit_filter,
        small_c: match common.small_c {
            SmallC::Auto => SmallCPolicy::Auto,
            SmallC::On => SmallCPolicy::ForceOn,
            SmallC::Off => SmallCPolicy::ForceOff,
        },
        library,
        seed: common.seed,
    })
}

fn compute(args: ComputeArgs) -> Result<(), Failure> {
    let spec = pick(load_specs(&args.common)?, args.common.label.as_deref(), &args.common.group)?;
    let settings = settings(&args.common)?;
    let reports = run(&spec, &[args.method], &settings)?;
    let first = &reports[0];
    match args.emit {
        Emit::Json => print!("{}", emit_json(&first.interval)),
        Emit::Dot => print!("{}", emit_dot(&first.interval)),
        Emit::Table => {
            println!("{}: [G:U] = {}", spec.label, first.interval.top().order() / first.interval.bottom().order());
            for r in &reports {
                println!("{:<8} {:>6} subgroups  {:.3} s", r.method.name(), r.count(), r.wall_time.as_secs_f64());
            }
            let orders: Vec<String> = first.interval.subgroups().iter().map(|v| v.order().to_string()).collect();
            println!("orders: [{}]", orders.join(","));
            let edges: Vec<String> = first.interval.inclusions().iter().map(|(a, b)| format!("[{a},{b}]")).collect();
            println!("inclusions: [{}]", edges.join(","));
        }
    }
    Ok(())
}

fn bench_cmd(args: BenchArgs) -> Result<(), Failure> {
    let specs = load_specs(&args.common)?;
    let settings = settings(&args.common)?;
    let rows = bench(&specs, &args.method, &settings);
    let mut methods = args.method.clone();
    for s in &specs {
        for m in s.methods.iter().flatten() {
            if !methods.contains(m) {
                methods.push(*m);
            }
        }
    }
    print!("{}", format_table(&rows, &methods));
    if rows.iter().all(|r| r.consistent()) {
        Ok(())
    } else {
        Err(Failure { code: 4, error: anyhow::anyhow!("methods disagree on some rows") })
    }
}

fn oracle_cmd(args: OracleArgs) -> Result<(), Failure> {
    let spec = pick(load_specs(&args.common)?, args.common.label.as_deref(), &args.common.group)?;
    let settings = settings(&args.common)?;
    let g = spec.group().map_err(RunError::from)?;
    match args.emit {
        OracleEmit::Datafile => {
            let entry = oracle_entry(&spec.label, &g, &settings.caps).map_err(RunError::from)?;
            print!("{}", emit_library(&MaximalLibrary { entries: vec![entry] }));
        }
        OracleEmit::Table => {
            let lattice = all_subgroups(&g, &settings.caps).map_err(RunError::from)?;
            println!("{}: order {}, {} classes, {} subgroups", spec.label, g.order(), lattice.classes().len(), lattice.total());
            println!("{:>5} {:>10} {:>8} {:>10}", "class", "order", "length", "normalizer");
            for (i, c) in lattice.classes().iter().enumerate() {
                println!("{:>5} {:>10} {:>8} {:>10}", i, c.representative.order(), c.orbit_size, c.normalizer.order());
            }
        }
    }
    Ok(())
}

fn embed_cmd(args: EmbedArgs) -> Result<(), Failure> {
    let spec = pick(load_specs(&args.common)?, args.common.label.as_deref(), &args.common.group)?;
    let settings = settings(&args.common)?;
    let g = spec.group().map_err(RunError::from)?;
    let b = spec.subgroup(&g, settings.seed, &settings.caps).map_err(RunError::from)?;
    let a = spec.subgroup_by(&args.target, &g, settings.seed, &settings.caps).map_err(RunError::from)?;
    let found = embedding_conjugates(&g, &a, &b, &settings.options()).map_err(RunError::from)?;
    println!("{} conjugates of A (order {}) strictly contain U (order {})", found.len(), a.order(), b.order());
    for (x, h) in &found {
        let gens: Vec<String> = x.generators().iter().map(|p| p.to_cycle_string()).collect();
        println!("h = {}  gens: {}", h.to_cycle_string(), gens.join(";"));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Oracle(a) => oracle_cmd(a),
        Command::Embed(a) => embed_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
