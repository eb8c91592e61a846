use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cliffzeta::corpus;
use cliffzeta::format::{parse_extension, write_extension};
use cliffzeta::group::{Extension, Group};
use cliffzeta::record::{invariant_rows, FitRecord, Kind, OutputRecord, Params, Provenance, TowerRecord};
use cliffzeta::verify::{self, Suite};
use cliffzeta::zeta::{assemble, assemble_twist, tower_series, Family, FitBounds, TowerMode};
use cliffzeta::Exec;
use std::process::ExitCode;

/// Sets the number of worker threads; unset means one per core.
const THREADS_VAR: &str = "CLIFFZETA_THREADS";

#[derive(Parser)]
#[command(name = "cliffzeta", version, about = "Zeta polynomials of finite groups over normal p-subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Browse the group catalogue or load a group file.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Compute a zeta polynomial, partial series or invariant table.
    Compute(ComputeArgs),
    /// Run verification suites; exits nonzero if any check fails.
    Verify(VerifyArgs),
    /// Coefficients of a tower of p-groups and their rational fit.
    Tower(TowerArgs),
}

#[derive(Subcommand)]
enum GroupCmd {
    /// List the catalogue.
    List,
    /// Describe a catalogue group.
    Show {
        id: String,
        /// The normal subgroup for `--text`; the default is the first listed.
        #[arg(long)]
        normal: Option<String>,
        /// Print the group in the text format instead.
        #[arg(long)]
        text: bool,
    },
    /// Parse a group file and describe it.
    Load { file: std::path::PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Zeta,
    TwistZeta,
    Partial,
    Invariants,
}

#[derive(Args)]
struct ComputeArgs {
    what: What,
    #[arg(long, conflicts_with = "file")]
    group: Option<String>,
    #[arg(long, requires = "group")]
    normal: Option<String>,
    /// A group file in the text format.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    /// Stabiliser id, as numbered by `compute invariants`.
    #[arg(long = "K")]
    k: Option<usize>,
    /// Class id within the stabiliser.
    #[arg(long, requires = "k")]
    class: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Assembly,
    Twist,
    Jaikin,
    Cohomology,
    Schur,
    Sylow,
    WellDefined,
    Tower,
    Completeness,
    Oracles,
}

#[derive(Args)]
struct VerifyArgs {
    suite: SuiteArg,
    #[arg(long, default_value_t = verify::Config::default().seed)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TowerArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    p: u64,
    /// The highest level; levels start at 1 (2 for the modular family).
    #[arg(long)]
    levels: u32,
    /// Fit a rational function to the stable coefficients.
    #[arg(long)]
    fit: bool,
    /// Count twist classes instead of characters.
    #[arg(long)]
    twist: bool,
    #[arg(long)]
    json: bool,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: cliffzeta::Error| e.to_string())
}

/// Writes to standard output, exiting quietly when the reader has gone away.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to standard output: {e}");
        }
    }};
}

fn emit(rec: &OutputRecord, json: bool) {
    if json {
        out!("{}\n", rec.to_json());
    } else {
        out!("{rec}");
    }
}

fn group_cmd(cmd: GroupCmd) -> Result<()> {
    match cmd {
        GroupCmd::List => {
            out!("{:<9} {:>5} {:>2}  {:<16} description\n", "id", "order", "p", "normal");
            for e in corpus::catalogue() {
                out!("{:<9} {:>5} {:>2}  {:<16} {}\n", e.id, e.order, e.p, e.normals.join(","), e.description);
            }
        }
        GroupCmd::Show { id, normal, text } => {
            let e = corpus::entry_of(&id)?;
            if text {
                let normal = normal.as_deref().unwrap_or(e.normals[0]);
                out!("{}", write_extension(&corpus::extension(e.id, normal)?));
                return Ok(());
            }
            out!("{}: {}\n", e.id, e.description);
            out!("order {}, p = {}\n", e.order, e.p);
            for n in e.normals {
                let ext = corpus::extension(e.id, n)?;
                out!("normal {n}: |N| = {}, |G:N| = {}\n", ext.normal().order(), ext.index());
            }
        }
        GroupCmd::Load { file } => {
            let ext = load(&file)?;
            out!("{}: order {}, p = {}\n", file.display(), ext.order(), ext.p());
            out!("|N| = {}, |G:N| = {}\n", ext.normal().order(), ext.index());
        }
    }
    Ok(())
}

fn load(file: &std::path::Path) -> Result<Extension> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    parse_extension(&text).map_err(|e| anyhow!("{}: {e}", file.display()))
}

fn compute_cmd(args: ComputeArgs) -> Result<()> {
    if args.k.is_some() && !matches!(args.what, What::Partial) {
        bail!(Usage("--K and --class only apply to `compute partial`".into()));
    }
    let (label, normal, ext) = match (&args.group, &args.file) {
        (Some(g), None) => {
            let e = corpus::entry_of(g)?;
            let n = match &args.normal {
                Some(n) => e.normals.iter().find(|x| x.eq_ignore_ascii_case(n)).copied().unwrap_or(n.as_str()),
                None => e.normals[0],
            };
            (e.id.to_string(), Some(n.to_string()), corpus::extension(e.id, n)?)
        }
        (None, Some(f)) => (f.display().to_string(), None, load(f)?),
        _ => bail!(Usage("give either --group or --file".into())),
    };
    let exec = Exec::default();
    let rec = |kind| OutputRecord::new(kind, &label, normal.as_deref());
    match args.what {
        What::Zeta => emit(&rec(Kind::Zeta).with_series(&assemble(&ext, exec)?.zeta), args.json),
        What::TwistZeta => emit(&rec(Kind::TwistZeta).with_series(&assemble_twist(&ext, exec)?.zeta), args.json),
        What::Invariants => {
            let a = assemble(&ext, exec)?;
            let t = assemble_twist(&ext, exec)?;
            let mut r = rec(Kind::Invariants).with_series(&a.zeta);
            r.invariants = invariant_rows(ext.index(), &a, &t);
            emit(&r, args.json);
        }
        What::Partial => {
            let k_id = args.k.ok_or_else(|| Usage("`compute partial` needs --K".into()))?;
            let a = assemble(&ext, exec)?;
            let mut ks: Vec<&Vec<usize>> = Vec::new();
            for b in &a.buckets {
                if !ks.contains(&&b.k) {
                    ks.push(&b.k);
                }
            }
            let k = *ks.get(k_id).ok_or_else(|| Usage(format!("--K {k_id}: there are {} stabilisers", ks.len())))?;
            let buckets: Vec<_> = a.buckets.iter().filter(|b| &b.k == k).collect();
            let ids: Vec<usize> = match args.class {
                Some(c) if c < buckets.len() => vec![c],
                Some(c) => bail!(Usage(format!("--class {c}: K has {} classes", buckets.len()))),
                None => (0..buckets.len()).collect(),
            };
            for c in ids {
                let mut r = rec(Kind::Partial).with_series(&buckets[c].partial);
                r.params = Params { k: Some(k.clone()), class_ids: vec![c], ..Params::default() };
                emit(&r, args.json);
            }
        }
    }
    Ok(())
}

fn suites(arg: SuiteArg) -> Vec<Suite> {
    match arg {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Assembly => vec![Suite::Assembly],
        SuiteArg::Twist => vec![Suite::Twist],
        SuiteArg::Jaikin => vec![Suite::Jaikin],
        SuiteArg::Cohomology => vec![Suite::Cohomology],
        SuiteArg::Schur => vec![Suite::Schur],
        SuiteArg::Sylow => vec![Suite::Sylow],
        SuiteArg::WellDefined => vec![Suite::WellDefined],
        SuiteArg::Tower => vec![Suite::Tower],
        SuiteArg::Completeness => vec![Suite::Completeness],
        SuiteArg::Oracles => vec![Suite::Oracles],
    }
}

fn verify_cmd(args: VerifyArgs) -> Result<bool> {
    let cfg = verify::Config { seed: args.seed, ..verify::Config::default() };
    let mut first_failure = None;
    for suite in suites(args.suite) {
        let report = verify::run(suite, &cfg);
        if args.json {
            out!("{}\n", report.to_record(args.seed).to_json());
        } else {
            let status = if report.passed() { "PASS" } else { "FAIL" };
            out!("{status} {suite}: {} checks in {:.2}s\n", report.checks.len(), report.elapsed.as_secs_f64());
        }
        if first_failure.is_none() {
            if let Some(c) = report.first_failure() {
                first_failure = Some(format!("{suite}: {}: {}", c.name, c.detail));
            } else if report.checks.is_empty() {
                first_failure = Some(format!("{suite}: no checks ran"));
            }
        }
    }
    match first_failure {
        Some(f) => {
            eprintln!("first failure: {f}");
            Ok(false)
        }
        None => Ok(true),
    }
}

fn tower_cmd(args: TowerArgs) -> Result<()> {
    let start = if args.family == Family::Modular { 2 } else { 1 };
    if args.levels < start {
        bail!(Usage(format!("--levels must be at least {start}")));
    }
    let levels: Vec<u32> = (start..=args.levels).collect();
    let mode = if args.twist { TowerMode::Twist } else { TowerMode::Zeta };
    let table = tower_series(args.family, args.p, &levels, mode, Exec::default())?;
    let mut rec = OutputRecord::new(Kind::Tower, &format!("{:?}", args.family).to_lowercase(), None);
    rec.tower = Some(TowerRecord::from(&table));
    rec.provenance = Provenance::current(None);
    let fit = args.fit.then(|| table.fit(FitBounds::default()));
    if let Some(Ok(fit)) = &fit {
        rec.fit = Some(FitRecord::from(fit));
    }
    emit(&rec, args.json);
    if let Some(Err(e)) = fit {
        bail!("no rational fit: {e}");
    }
    Ok(())
}

/// A bad combination of arguments. These and invalid ids exit with code 2,
/// like clap's own errors.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "usage: {}", self.0)
    }
}

impl std::error::Error for Usage {}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.parse().with_context(|| format!("{THREADS_VAR} must be a number, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Group(cmd) => group_cmd(cmd).map(|()| true),
        Command::Compute(args) => compute_cmd(args).map(|()| true),
        Command::Verify(args) => verify_cmd(args),
        Command::Tower(args) => tower_cmd(args).map(|()| true),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) if e.is::<Usage>() || matches!(e.downcast_ref(), Some(cliffzeta::Error::Invalid(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
