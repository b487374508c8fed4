use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orbitgraph::constructors::{catalog, catalog_entry, catalog_names};
use orbitgraph::error::Error;
use orbitgraph::input::{parse_action_json, parse_group_json, resolve_group_name, LoadedGroup};
use orbitgraph::iso::DEFAULT_BUDGET;
use orbitgraph::verifier::{analyze, analyze_entry, refute_by_aut_clique, verify_catalog, AnalysisReport, CaseOutcome, CheckStatus};

const EXIT_ASSERTION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Commuting graphs of automorphism orbits on finite groups.
#[derive(Parser)]
#[command(name = "orbitgraph", version)]
struct Cli {
    /// Node budget for automorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Orbits, graph, structure and case for one group and action.
    Analyze {
        /// Catalog name, family such as `sl2(5)`, or a JSON group file.
        #[arg(long)]
        group: String,
        /// Action name (`inner`, `full_aut`, or one defined by the group) or a JSON action file.
        #[arg(long)]
        action: String,
        /// Write the graph as graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the graph as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the full analysis report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Analyse every catalog entry and run the corollary scans.
    Verify {
        #[arg(long, required = true)]
        all: bool,
        /// Write the full verification report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Search for four pairwise commuting elements in distinct Aut(G)-orbits.
    Refute {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names, orders and actions of the catalog entries.
    List,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: EXIT_INPUT, message }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_ASSERTION),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// `Ok(false)` means the run completed and some assertion failed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Catalog { command: CatalogCommand::List } => {
            for name in catalog_names() {
                let e = catalog_entry(name)?;
                println!("{:<20} order {:<6} actions {:<28} {}", e.name, e.group.order(), e.action_names().join(","), e.description);
            }
            Ok(true)
        }
        Command::Analyze { group, action, dot, json, report } => {
            let loaded = load_group(group)?;
            let analysis = match (&loaded.entry, Path::new(action).is_file()) {
                (Some(entry), false) if entry.action(action).is_some() => analyze_entry(entry, action)?,
                (_, true) => {
                    let text = read(Path::new(action))?;
                    analyze(&loaded.group, &parse_action_json(&loaded, &text, cli.budget)?)?
                }
                _ => analyze(&loaded.group, &loaded.named_action(action, cli.budget)?)?,
            };
            if let Some(path) = dot {
                write(path, &analysis.graph.export_dot())?;
            }
            if let Some(path) = json {
                write(path, &analysis.graph.export_json())?;
            }
            if let Some(path) = report {
                write(path, &analysis.report.to_json())?;
            }
            print_report(&analysis.report);
            Ok(analysis.report.passed())
        }
        Command::Verify { report, .. } => {
            let entries = catalog()?;
            let result = verify_catalog(&entries)?;
            for e in &result.entries {
                let status = if e.report.passed() && e.orbit_sum_ok { "pass" } else { "FAIL" };
                println!("{status:<5} {:<20} {:<10} {}", e.entry, e.report.action, e.report.shape);
            }
            let scans = &result.corollaries.results;
            let failed_scans = scans.iter().filter(|r| !r.pass).count();
            println!("corollary scans: {} run, {failed_scans} failed", scans.len());
            let failures = result.failures();
            for f in &failures {
                println!("  {f}");
            }
            if let Some(path) = report {
                write(path, &result.to_json())?;
            }
            println!("{}", if failures.is_empty() { "all checks passed" } else { "verification FAILED" });
            Ok(failures.is_empty())
        }
        Command::Refute { group } => {
            let loaded = load_group(group)?;
            match refute_by_aut_clique(&loaded.group, cli.budget)? {
                Some(w) => {
                    println!("{}: no A <= Aut(G) gives an F-graph", loaded.group.name());
                    for ((label, order), orbit) in w.labels.iter().zip(&w.orders).zip(&w.orbits) {
                        println!("  {label}  order {order}  orbit {orbit}");
                    }
                    println!("found by {}", w.method);
                    Ok(true)
                }
                None => {
                    println!("{}: no four pairwise commuting elements in distinct Aut(G)-orbits", loaded.group.name());
                    Ok(false)
                }
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn load_group(arg: &str) -> Result<LoadedGroup, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(parse_group_json(&read(path)?)?)
    } else {
        Ok(resolve_group_name(arg)?)
    }
}

fn print_report(r: &AnalysisReport) {
    println!("group      {} (order {})", r.group, r.order);
    match r.action_order {
        Some(n) => println!("action     {} (order {n} on G)", r.action),
        None => println!("action     {}", r.action),
    }
    println!("orbits     {:?}", r.orbit_sizes);
    println!("graph      {} vertices, {} edges, {} triangles", r.vertices, r.edges, r.triangles);
    println!("shape      {}", r.shape);
    if let Some(s) = &r.singular {
        println!("singular   orbit of {} (size {}, element order {})", s.rep_label, s.size, s.rep_order);
    }
    match &r.theorem_case {
        CaseOutcome::Classified { case } => println!("case       {case:?}"),
        CaseOutcome::NoBranchMatches { reason } => println!("case       none matches (counterexample candidate): {reason}"),
    }
    for note in &r.notes {
        println!("note       {note}");
    }
    let items: Vec<String> = r
        .checklist
        .iter()
        .map(|c| {
            let s = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NotApplicable => "n/a",
                CheckStatus::Sampled => "sampled",
            };
            format!("{}:{s}", c.item)
        })
        .collect();
    println!("checklist  {}", items.join(" "));
    if !r.expectations.is_empty() {
        let held = r.expectations.iter().filter(|e| e.holds).count();
        println!("expected   {held}/{} facts hold", r.expectations.len());
    }
    for f in r.failures() {
        println!("  {f}");
    }
    println!("result     {}", if r.passed() { "pass" } else { "FAIL" });
}
