//! `derange`: exact derangement statistics in cosets of normal subgroups of
//! permutation groups.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage or resolution error, 3 budget exceeded.

mod output;
mod sources;

use clap::{Args, Parser, Subcommand};
use derange_core::report::{scan_group, Budgets, ScanItem};
use derange_core::verify::{run_suite, LemmaFilter, LemmaId, Status};
use derange_core::{catalog, Error};
use rayon::prelude::*;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "derange", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one triple (A, G, xG) and print its statistics
    Analyze(AnalyzeArgs),
    /// Print only the case label of one triple
    Classify(AnalyzeArgs),
    /// Scan groups: one report row per (A, normal G with cyclic quotient,
    /// generating coset)
    Scan(ScanArgs),
    /// Scan and run the verification suite; exit 1 on any failed check
    Verify(VerifyArgs),
    /// List or emit catalog groups
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Group selector (e.g. `sym:4`, `agl1:9`, `hol:sym:3`,
    /// `file:groups.json#S3`)
    group: String,
    /// Normal subgroup selector; defaults to the group itself
    #[arg(long)]
    normal: Option<String>,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Args)]
struct ScanArgs {
    /// Sources: `catalog` and/or `file:<path>` entries
    #[arg(default_value = "catalog")]
    sources: Vec<String>,
    /// Only scan these families (comma separated; `affine` expands to the
    /// affine families)
    #[arg(long)]
    only: Option<String>,
    /// Output format
    #[arg(long, default_value = "tsv", value_parser = ["tsv", "structured"])]
    format: String,
    /// Write rows here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Suppress the generation-stamp header line
    #[arg(long)]
    no_header: bool,
    /// Parallel scan width (groups are scanned concurrently; output order
    /// is unaffected)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    scan: ScanArgs,
    /// Only run these checks (comma separated, e.g. `L2,L7`)
    #[arg(long)]
    lemmas: Option<String>,
    /// Corrupt the first scanned spectrum before checking (test hook;
    /// forces an L2 counterexample)
    #[arg(long, hide = true)]
    inject_spectrum_fault: bool,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List family names and the default catalog instances
    List,
    /// Print the serialized description of one group as a group file
    Emit { selector: String },
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Skip groups of larger degree in scans
    #[arg(long, default_value_t = 10)]
    max_degree: usize,
    /// Skip groups with more elements than this
    #[arg(long, default_value_t = 100_000)]
    max_order: usize,
    /// Cap on the size of tuple domains
    #[arg(long, default_value_t = 10_000_000)]
    tuple_budget: u64,
    /// Highest tuple arity for common-orbit counts (1..=4)
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=4))]
    k: u8,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            tuple_budget: self.tuple_budget,
            max_k: self.k as usize,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    ExitCode::from(code)
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ClosureCapExceeded { .. }
        | Error::TupleBudgetExceeded { .. }
        | Error::AutBudgetExceeded { .. }
        | Error::FieldTooLarge(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> derange_core::Result<u8> {
    match cli.command {
        Command::Analyze(args) => {
            let (a, g, x, names) = sources::resolve_triple(&args.group, args.normal.as_deref())?;
            let report = derange_core::report::analyze_triple(&a, &g, &x, &args.budgets.budgets())?;
            output::print_human_report(&report, &names);
            Ok(0)
        }
        Command::Classify(args) => {
            let (a, g, x, _names) = sources::resolve_triple(&args.group, args.normal.as_deref())?;
            let report = derange_core::report::analyze_triple(&a, &g, &x, &args.budgets.budgets())?;
            match report.label {
                Some(label) => println!("{label}"),
                None => println!("-"),
            }
            Ok(0)
        }
        Command::Scan(args) => {
            let scan = perform_scan(&args)?;
            write_scan_output(&args, &scan, &[])?;
            Ok(0)
        }
        Command::Verify(args) => {
            let mut scan = perform_scan(&args.scan)?;
            if args.inject_spectrum_fault {
                if let Some(item) = scan.items.first_mut() {
                    let counts = &mut item.report.spectrum.counts;
                    counts[0] += 1; // deliberate off-by-one
                }
            }
            let filter = match &args.lemmas {
                None => LemmaFilter::default(),
                Some(list) => {
                    let ids: Result<Vec<LemmaId>, String> =
                        list.split(',').map(|s| s.trim().parse()).collect();
                    LemmaFilter(Some(ids.map_err(Error::Precondition)?))
                }
            };
            let inventory = catalog::default_regular_inventory();
            let verdicts = run_suite(&scan.items, &scan.entries, &inventory, &filter)?;
            write_scan_output(&args.scan, &scan, &verdicts)?;
            let failures = verdicts.iter().filter(|v| v.status == Status::Fail).count();
            let passes = verdicts.iter().filter(|v| v.status == Status::Pass).count();
            eprintln!(
                "verify: {} checks, {} pass, {} fail, {} inapplicable",
                verdicts.len(),
                passes,
                failures,
                verdicts.len() - passes - failures
            );
            Ok(if failures > 0 { 1 } else { 0 })
        }
        Command::Catalog(args) => {
            match args.action {
                CatalogAction::List => {
                    println!("families: {}", catalog::family_names().join(", "));
                    let (entries, skipped) = catalog::default_catalog(usize::MAX, 1_000_000);
                    println!("default catalog:");
                    for e in entries {
                        println!(
                            "  {}\tdegree {}\torder {}",
                            e.spec.name,
                            e.spec.degree,
                            e.group.order()
                        );
                    }
                    for (name, why) in skipped {
                        println!("  {name}\t(skipped: {why})");
                    }
                }
                CatalogAction::Emit { selector } => {
                    let entry = catalog::resolve(&selector)?;
                    println!("{}", serde_json::to_string_pretty(&vec![entry.spec])?);
                }
            }
            Ok(0)
        }
    }
}

struct ScanResult {
    entries: Vec<catalog::CatalogEntry>,
    items: Vec<ScanItem>,
    /// (group name, reason) for sources that could not be built or scanned.
    skipped: Vec<(String, String)>,
}

fn perform_scan(args: &ScanArgs) -> derange_core::Result<ScanResult> {
    let only = args.only.as_deref().map(sources::expand_only);
    let (entries, mut skipped) = sources::gather(&args.sources, &only, &args.budgets)?;
    let budgets = args.budgets.budgets();

    let scan_one = |entry: &catalog::CatalogEntry| -> (Vec<ScanItem>, Option<(String, String)>) {
        match scan_group(&entry.group, &entry.spec.name, source_of(entry), &budgets) {
            Ok(items) => (items, None),
            Err(e) => (Vec::new(), Some((entry.spec.name.clone(), e.to_string()))),
        }
    };

    let scanned: Vec<(Vec<ScanItem>, Option<(String, String)>)> = if args.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(|| entries.par_iter().map(scan_one).collect())
    } else {
        entries.iter().map(scan_one).collect()
    };

    let mut items = Vec::new();
    for (rows, skip) in scanned {
        items.extend(rows);
        if let Some(s) = skip {
            skipped.push(s);
        }
    }
    Ok(ScanResult {
        entries,
        items,
        skipped,
    })
}

fn source_of(entry: &catalog::CatalogEntry) -> &'static str {
    if entry.spec.ingested {
        "file"
    } else {
        "catalog"
    }
}

fn write_scan_output(
    args: &ScanArgs,
    scan: &ScanResult,
    verdicts: &[derange_core::verify::SuiteVerdict],
) -> derange_core::Result<()> {
    let mut buffer = Vec::new();
    if !args.no_header {
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        writeln!(buffer, "# derange scan generated-at-unix {stamp}")?;
    }
    match args.format.as_str() {
        "tsv" => output::write_tsv(&mut buffer, &scan.items, verdicts)?,
        _ => output::write_structured(&mut buffer, &scan.items, verdicts)?,
    }
    match &args.out {
        Some(path) => std::fs::write(path, &buffer)?,
        None => std::io::stdout().write_all(&buffer)?,
    }

    // summary table
    let mut histogram: std::collections::BTreeMap<&str, usize> = Default::default();
    for item in &scan.items {
        let token = item
            .report
            .label
            .as_ref()
            .map(|l| l.token())
            .unwrap_or("-");
        *histogram.entry(token).or_default() += 1;
    }
    eprintln!("scan: {} rows from {} groups", scan.items.len(), scan.entries.len());
    eprintln!(
        "cases: {}",
        histogram
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    for (name, why) in &scan.skipped {
        eprintln!("skipped {name}: {why}");
    }
    for item in &scan.items {
        for note in &item.report.notes {
            eprintln!("note {}: {note}", item.report.triple_id);
        }
    }
    Ok(())
}
