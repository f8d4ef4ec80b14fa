use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ssgenus::report::{
    reproduce_table, run_genus, run_lift, run_spectrum, EngineParams, Report, RowOutcome, RowStatus, WitnessFile,
    CSV_HEADER,
};
use ssgenus::tables::{TableKind, Tier};
use ssgenus::{Error, GroupSpec, TripleSignature};

const EXIT_INVARIANT: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAPABILITY: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_VERIFICATION: u8 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "ssgenus",
    version,
    about = "Strong symmetric genus of the finite Coxeter groups"
)]
struct Cli {
    /// Largest group order searched exhaustively.
    #[arg(long, global = true, env = "SSGENUS_THRESHOLD")]
    threshold: Option<u64>,

    /// Fall back to seeded random search above the threshold.
    #[arg(long, global = true, env = "SSGENUS_HEURISTIC")]
    heuristic: bool,

    /// Random samples or walk steps per candidate triple.
    #[arg(long, global = true, env = "SSGENUS_BUDGET")]
    budget: Option<u64>,

    #[arg(long, global = true, env = "SSGENUS_SEED")]
    seed: Option<u64>,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "SSGENUS_JOBS")]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "SSGENUS_FORMAT")]
    format: Format,

    /// Write the generating pair as a witness file.
    #[arg(long, global = true, env = "SSGENUS_WITNESS_OUT")]
    witness_out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal generating pair and genus of one group.
    Genus { spec: String },
    /// Recompute an embedded table and diff it against the listed values.
    Table {
        #[arg(long)]
        reproduce: String,
        #[arg(long, default_value = "standard", env = "SSGENUS_TIER")]
        tier: String,
    },
    /// Lift a `Σ_n` pair of the given type to `D_n`.
    Lift { n: usize, p: u64, q: u64, r: u64 },
    /// Element orders and class count.
    Spectrum { spec: String },
    /// Re-check a witness file.
    Verify { file: PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Structural(_) | Error::Io(_) => EXIT_PARSE,
        Error::Capability(_) | Error::Precondition(_) => EXIT_CAPABILITY,
        Error::Verification(_) => EXIT_VERIFICATION,
        Error::Invariant(_) | Error::Json(_) => EXIT_INVARIANT,
    }
}

impl Cli {
    fn params(&self) -> EngineParams {
        let d = EngineParams::default();
        EngineParams {
            threshold: self.threshold.unwrap_or(d.threshold),
            heuristic: self.heuristic,
            budget: self.budget.unwrap_or(d.budget),
            seed: self.seed.unwrap_or(d.seed),
            jobs: self.jobs.unwrap_or(d.jobs),
        }
    }

    fn write_witness(&self, rep: &Report) -> Result<(), Error> {
        if let Some(path) = &self.witness_out {
            std::fs::write(path, rep.witness_file().to_json()? + "\n")?;
        }
        Ok(())
    }
}

fn print_report(rep: &Report, format: Format) -> Result<(), Error> {
    match format {
        Format::Json => println!("{}", rep.to_json()?),
        Format::Csv => {
            println!("{CSV_HEADER}");
            println!("{}", rep.csv_row());
        }
        Format::Text => {
            println!("group      {}", rep.group);
            println!("order      {}", rep.order);
            println!("triple     {}", rep.triple);
            println!("genus      {}", rep.genus);
            println!("exactness  {}", rep.exactness);
            println!("method     {}", rep.method);
            println!("x          {}", rep.witness.x);
            println!("y          {}", rep.witness.y);
            match (&rep.paper.triple, &rep.paper.genus) {
                (Some(t), Some(g)) => println!("listed     {t} genus {g} ({})", rep.paper.status),
                _ => println!("listed     {}", rep.paper.status),
            }
            for note in &rep.notes {
                println!("note       {note}");
            }
            println!("time       {} ms", rep.timing_ms);
        }
    }
    Ok(())
}

fn print_table(rows: &[RowOutcome], format: Format) -> Result<(), Error> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(rows)?),
        Format::Csv => {
            println!("{CSV_HEADER}");
            for rep in rows.iter().filter_map(|r| r.report.as_ref()) {
                println!("{}", rep.csv_row());
            }
        }
        Format::Text => {
            println!(
                "{:<6} {:<10} {:>10} {:<10} {:>10} {:>9} status",
                "group", "listed", "genus", "computed", "genus", "ms"
            );
            for r in rows {
                let (triple, genus, ms) = match &r.report {
                    Some(rep) => (rep.triple.to_string(), rep.genus.to_string(), rep.timing_ms.to_string()),
                    None => ("-".into(), "-".into(), "-".into()),
                };
                let mut status = r.status.to_string();
                if r.verify_only {
                    status.push_str(" (verify-only)");
                }
                if let Some(e) = &r.error {
                    status.push_str(&format!(": {e}"));
                }
                println!(
                    "{:<6} {:<10} {:>10} {:<10} {:>10} {:>9} {status}",
                    r.group,
                    r.expected_triple.to_string(),
                    r.expected_genus,
                    triple,
                    genus,
                    ms
                );
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let params = cli.params();
    match &cli.command {
        Command::Genus { spec } => {
            let spec: GroupSpec = spec.parse()?;
            let rep = run_genus(spec, &params)?;
            cli.write_witness(&rep)?;
            print_report(&rep, cli.format)?;
        }
        Command::Lift { n, p, q, r } => {
            let rep = run_lift(*n, TripleSignature::new(*p, *q, *r)?, &params)?;
            cli.write_witness(&rep)?;
            print_report(&rep, cli.format)?;
        }
        Command::Table { reproduce, tier } => {
            let kind: TableKind = reproduce.parse()?;
            let tier: Tier = tier.parse()?;
            let rows = reproduce_table(kind, tier, &params);
            print_table(&rows, cli.format)?;
            if rows.iter().any(|r| r.status != RowStatus::Match) {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Spectrum { spec } => {
            let s = run_spectrum(spec.parse()?, &params)?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&s)?),
                Format::Csv => {
                    println!("order");
                    for o in &s.orders {
                        println!("{o}");
                    }
                }
                Format::Text => {
                    let orders: Vec<String> = s.orders.iter().map(u64::to_string).collect();
                    println!("group    {}", s.group);
                    println!("order    {}", s.order);
                    println!("classes  {}", s.classes);
                    println!("orders   {}", orders.join(" "));
                }
            }
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(file)?;
            let w = WitnessFile::from_json(&text)?;
            let genus = w.verify()?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"status": "verified", "group": w.group, "triple": w.triple, "genus_bound": genus.to_string()})
                ),
                _ => println!("verified {} {} genus <= {genus}", w.group, w.triple),
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ssgenus: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
