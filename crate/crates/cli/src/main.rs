use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use normexp::commands::{self, DistCheck, GrowthCheck, GrowthOptions, TableAction};
use normexp::config::{Format, RunConfig, Tolerances};
use normexp::expr::SubsetExpr;
use normexp::report::ReportDocument;
use normexp::suite::Profile;
use normexp_core::words::Word;

/// Character-theoretic growth and expansion checks for finite groups.
#[derive(Debug, Parser)]
#[command(name = "normexp", version)]
struct Cli {
    /// Group spec: A:n, S:n, PSL2:q, PSL3:q or a generator file path.
    #[arg(long, global = true, default_value = "A:5")]
    group: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance override, name=value. Repeatable.
    #[arg(long = "tolerance", global = true)]
    tolerances: Vec<String>,
    #[arg(long, global = true, default_value_t = normexp_core::group::DEFAULT_ORDER_CAP)]
    order_cap: usize,
    #[arg(long, global = true, default_value_t = normexp_core::spectral::DEFAULT_DENSE_CAP)]
    dense_cap: usize,
    #[arg(long, global = true, default_value_t = normexp_core::growth::RANDOM_SWEEP_SIZE)]
    sweep_cap: usize,
    /// Output directory; reports go to stdout when unset.
    #[arg(long, global = true, env = "NORMEXP_OUT_DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, classes and real-class census.
    Group,
    Chartable {
        #[command(subcommand)]
        action: TableCommand,
    },
    /// Cayley graph spectrum for a normal subset.
    Lambda {
        /// Subset expression such as class:1, classes:1,2, all-nonid, complement-real or word:xyXY.
        subset: SubsetExpr,
    },
    Growth {
        #[arg(value_enum)]
        check: GrowthCheck,
        #[arg(long)]
        a: Option<SubsetExpr>,
        #[arg(long)]
        b: Option<SubsetExpr>,
        /// Target class for gowers2.
        #[arg(long)]
        class: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value = "xx")]
        w1: Word,
        #[arg(long, default_value = "xyXY")]
        w2: Word,
    },
    Dist {
        #[arg(value_enum)]
        check: DistCheck,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Runs every acceptance criterion.
    Acceptance {
        #[arg(long, value_enum, default_value_t = Profile::Quick)]
        profile: Profile,
    },
}

#[derive(Debug, Subcommand)]
enum TableCommand {
    Compute,
    Verify {
        /// Stored table to check against the group instead of a fresh one.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    Export {
        path: PathBuf,
    },
    Import {
        path: PathBuf,
    },
}

fn config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let cfg = RunConfig {
        group: cli.group.clone(),
        seed: cli.seed,
        tolerances: Tolerances::with_overrides(&cli.tolerances)?,
        order_cap: cli.order_cap,
        dense_cap: cli.dense_cap,
        sweep_cap: cli.sweep_cap,
        out: cli.out.clone(),
        format: cli.format,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli, cfg: &RunConfig) -> anyhow::Result<ReportDocument> {
    let doc = match &cli.command {
        Command::Group => commands::cmd_group(cfg)?,
        Command::Chartable { action } => {
            let action = match action {
                TableCommand::Compute => TableAction::Compute,
                TableCommand::Verify { table } => TableAction::Verify(table.clone()),
                TableCommand::Export { path } => TableAction::Export(path.clone()),
                TableCommand::Import { path } => TableAction::Import(path.clone()),
            };
            commands::cmd_chartable(cfg, &action)?
        }
        Command::Lambda { subset } => commands::cmd_lambda(cfg, subset)?,
        Command::Growth { check, a, b, class, trials, w1, w2 } => {
            let opts = GrowthOptions {
                a: a.clone(),
                b: b.clone(),
                class: *class,
                trials: *trials,
                w1: w1.clone(),
                w2: w2.clone(),
            };
            commands::cmd_growth(cfg, *check, &opts)?
        }
        Command::Dist { check, trials } => commands::cmd_dist(cfg, *check, *trials)?,
        Command::Acceptance { profile } => {
            let (doc, _) = commands::cmd_acceptance(cfg, *profile, |o| eprintln!("{}", o.line()))?;
            doc
        }
    };
    Ok(doc)
}

fn emit(doc: &ReportDocument, cfg: &RunConfig) -> anyhow::Result<()> {
    let ext = match cfg.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    match &cfg.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let name = doc.header.command.replace(' ', "-");
            let path = dir.join(format!("{name}.{ext}"));
            let file = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            match cfg.format {
                Format::Json => doc.write_json(file)?,
                Format::Csv => doc.write_csv(file)?,
            }
            eprintln!("wrote {}", path.display());
        }
        None => {
            let stdout = std::io::stdout().lock();
            match cfg.format {
                Format::Json => doc.write_json(stdout)?,
                Format::Csv => doc.write_csv(stdout)?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let doc = match run(&cli, &cfg) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&doc, &cfg) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    eprintln!(
        "{}: {} pass, {} fail, {} skipped, {} info",
        doc.summary.status, doc.summary.pass_count, doc.summary.fail_count, doc.summary.skipped_count, doc.summary.info_count
    );
    if doc.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
