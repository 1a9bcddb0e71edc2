use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use alternating_ascent::engine::Engine;
use alternating_ascent::generate::generate_instance;
use alternating_ascent::io::load_qubo;
use alternating_ascent::oracle::brute_force;
use alternating_ascent::replay::replay_working_table;
use alternating_ascent::report::{write_pass_csv, write_trace_csv};
use alternating_ascent::tabu::{TabuFree, TabuSearch};
use alternating_ascent::{
    AAConfig, Arithmetic, ChoiceConfig, ChoiceRule, CutoffVersion, EEConfig, McConfig, McSchedule, QuboInstance,
    QuboProvider, RunResult, Selection, TabuConfig, TabuRelease,
};
use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Single,
    DoubleV1,
    DoubleV2,
    Tabu,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Choice {
    Weighted,
    SimpleCutoff,
    AdvancedCutoff,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mc {
    Off,
    A,
    B,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ArithArg {
    Int,
    Real,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Release {
    LastVbl,
    All,
    Status,
}

/// Alternating Ascent and tabu search for QUBO maximization.
#[derive(Debug, Parser)]
#[command(name = "aasearch", version)]
struct Args {
    #[arg(long, value_enum, default_value = "single")]
    algo: Algo,
    #[arg(long, value_enum, default_value = "weighted")]
    choice: Choice,
    /// Instance file (see the crate docs for the format).
    #[arg(long, conflicts_with = "random")]
    instance: Option<PathBuf>,
    /// Random instance as `n,density,range`, seeded by --seed.
    #[arg(long)]
    random: Option<String>,
    #[arg(long = "Q", default_value_t = 20)]
    q: usize,
    #[arg(long, default_value_t = 10)]
    r: usize,
    #[arg(long, default_value_t = 5)]
    trigger: usize,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "int")]
    arithmetic: ArithArg,
    #[arg(long = "F", default_value_t = 0.8)]
    f: f64,
    #[arg(long = "W1", default_value_t = 0.1)]
    w1: f64,
    #[arg(long = "W2", default_value_t = 10.0)]
    w2: f64,
    #[arg(long, value_enum, default_value = "off")]
    mc: Mc,
    /// Tenure for variables reversed by a drop step.
    #[arg(long, default_value_t = 0)]
    small: u64,
    #[arg(long, value_enum, default_value = "last-vbl")]
    tabu_release: Release,
    #[arg(long, default_value_t = 10_000)]
    max_iter: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    tabu_low: u64,
    #[arg(long, default_value_t = 12)]
    tabu_high: u64,
    /// Enables the tabu-free aspiration with this range.
    #[arg(long)]
    tabu_range: Option<u64>,
    #[arg(long, default_value_t = 0)]
    xo_tolerance: i64,
    /// Start from this 0/1 string by complementing the instance around it.
    #[arg(long)]
    complement: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Double-Pass per-iteration cutoff statistics as CSV.
    #[arg(long)]
    pass_stats: Option<PathBuf>,
    /// Compare against the exhaustive optimum (n <= 22).
    #[arg(long)]
    brute_force: bool,
    /// Run the worked Post-Ascent example and print its checks.
    #[arg(long)]
    replay: bool,
}

fn load_instance(args: &Args) -> Result<QuboInstance> {
    if let Some(path) = &args.instance {
        return load_qubo(path).with_context(|| format!("reading {}", path.display()));
    }
    let Some(spec) = &args.random else {
        bail!("one of --instance or --random is required")
    };
    let parts: Vec<&str> = spec.split(',').collect();
    let [n, d, r] = parts[..] else {
        bail!("--random expects n,density,range")
    };
    let n: usize = n.trim().parse().context("--random n")?;
    let d: f64 = d.trim().parse().context("--random density")?;
    let r: i64 = r.trim().parse().context("--random range")?;
    if n == 0 || !(0.0..=1.0).contains(&d) || r < 1 {
        bail!("--random needs n >= 1, density in [0,1], range >= 1");
    }
    Ok(generate_instance(n, d, r, args.seed)?)
}

fn ee_config(args: &Args) -> EEConfig {
    let arithmetic = match args.arithmetic {
        ArithArg::Int => Arithmetic::Integer,
        ArithArg::Real => Arithmetic::Real,
    };
    EEConfig {
        q: args.q,
        r: args.r,
        alpha: args.alpha,
        arithmetic,
        ..EEConfig::default()
    }
}

fn aa_config(args: &Args) -> AAConfig {
    let rule = match args.choice {
        Choice::Weighted => ChoiceRule::WeightedSum,
        Choice::SimpleCutoff => ChoiceRule::SimpleCutoff,
        Choice::AdvancedCutoff => ChoiceRule::AdvancedCutoff,
    };
    let selection = match args.algo {
        Algo::DoubleV1 => Selection::DoublePass {
            version: CutoffVersion::Eval,
            use_list: true,
        },
        Algo::DoubleV2 => Selection::DoublePass {
            version: CutoffVersion::Ee,
            use_list: true,
        },
        _ => Selection::SinglePass,
    };
    let mc = match args.mc {
        Mc::Off => None,
        Mc::A => Some(McConfig::new(McSchedule::a())),
        Mc::B => Some(McConfig::new(McSchedule::b())),
    };
    let tabu_release = match args.tabu_release {
        Release::LastVbl => TabuRelease::LastVbl,
        Release::All => TabuRelease::ReleaseAll,
        Release::Status => TabuRelease::HoldStatusVariables,
    };
    AAConfig {
        ee: ee_config(args),
        choice: ChoiceConfig {
            rule,
            w1: args.w1,
            w2: args.w2,
            f: args.f,
            ..ChoiceConfig::default()
        },
        trigger: args.trigger,
        max_iter: args.max_iter,
        seed: args.seed,
        mc,
        tabu_release,
        small: args.small,
        selection,
        trace: args.trace.is_some(),
    }
}

fn parse_mask(s: &str, n: usize) -> Result<Vec<bool>> {
    let mask: Vec<bool> = s
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => bail!("--complement accepts only 0 and 1"),
        })
        .collect::<Result<_>>()?;
    if mask.len() != n {
        bail!("--complement has length {}, instance has n = {n}", mask.len());
    }
    Ok(mask)
}

fn solve(args: &Args, inst: &QuboInstance) -> Result<RunResult> {
    match args.algo {
        Algo::Tabu => {
            let tabu_free = args.tabu_range.map(|tabu_range| TabuFree {
                tabu_range,
                xo_tolerance: args.xo_tolerance,
            });
            let cfg = TabuConfig {
                low_tenure: args.tabu_low,
                high_tenure: args.tabu_high,
                max_iter: args.max_iter,
                seed: args.seed,
                tabu_free,
                random_ties: false,
                trace: args.trace.is_some(),
            };
            Ok(TabuSearch::new(QuboProvider::new(inst), cfg)?.run())
        }
        _ => Ok(Engine::new(QuboProvider::new(inst), aa_config(args))?.run()),
    }
}

fn replay() -> ExitCode {
    let report = replay_working_table();
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.replay {
        return replay();
    }
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(args: Args) -> Result<()> {
    ee_config(&args).validate()?;
    let original = load_instance(&args)?;
    let mask = args
        .complement
        .as_deref()
        .map(|s| parse_mask(s, original.n()))
        .transpose()?;
    let (inst, offset) = match &mask {
        Some(m) => original.complemented(m)?,
        None => (original.clone(), 0),
    };
    let mut result = solve(&args, &inst)?;
    if let Some(m) = &mask {
        for (b, &c) in result.best_assignment.iter_mut().zip(m) {
            *b ^= c as u8;
        }
        result.best_objective += offset;
    }
    let check = original.objective(&result.best_bits())?;
    if check != result.best_objective {
        bail!(
            "internal error: best objective {} recomputes to {check}",
            result.best_objective
        );
    }
    if args.brute_force {
        let (opt, _) = brute_force(&original)?;
        result.attach_optimum(opt);
    }
    if let Some(path) = &args.trace {
        let w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        write_trace_csv(w, &result.trace)?;
    }
    if let Some(path) = &args.pass_stats {
        let w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        write_pass_csv(w, &result.pass_records)?;
    }
    let json = serde_json::to_string_pretty(&result)?;
    match &args.out {
        Some(path) => std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => writeln!(std::io::stdout(), "{json}")?,
    }
    Ok(())
}
