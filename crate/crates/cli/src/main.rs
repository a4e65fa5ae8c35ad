//! `epg`: enhanced power graph statistics, DOT export and claim verification.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use epg_core::catalog::catalog_order16;
use epg_core::group::{GroupTable, DEFAULT_LAW_SEED};
use epg_core::morphism::isomorphic;
use epg_core::presentation::DEFAULT_MAX_COSETS;
use epg_core::verify::{
    builtin_census, census_order16, check_dihedral_aut_fact, check_power_identity, run_census,
    to_csv, to_jsonl, ClaimId, IdentityFamily, Status, VerdictReport,
};
use epg_core::{build_epg, parse_presentation, parse_spec, realize, GroupSpec};

const SPEC_HELP: &str = "\
Group specs are atoms joined by `x`, e.g. C(4)xC(2).
Atoms are named by total order:
  C(n)     cyclic group of order n
  D(n)     dihedral group of order n (n = 2^(a+1) >= 8)
  Q(n)     generalized quaternion group of order n (n = 2^(a+1) >= 8)
  SD(n)    semidihedral group of order n (n = 2^(a+1) >= 16)
  M(p,k)   modular group of order p^k (k >= 3, k >= 4 when p = 2)
  H(p)     Heisenberg group of order p^3, p an odd prime
  P\"<x,y | x^4, y^2, x^y=x^-1>\"   group given by a presentation";

#[derive(Parser)]
#[command(name = "epg", version, about = "Enhanced power graphs of finite groups", after_help = SPEC_HELP)]
struct Cli {
    /// Refuse to build groups larger than this.
    #[arg(long, global = true, default_value_t = 4096)]
    max_order: usize,
    /// Output format for reports and tabular output.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for the sampled associativity check on large tables.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, exponent, n_G, component data and neighborhood sizes.
    Stats {
        #[arg(value_parser = spec_arg)]
        spec: GroupSpec,
    },
    /// Run a verification suite and write report files.
    Verify {
        /// Claim id, or one of: order16, dihedral-aut, proof-identities, all.
        #[arg(long)]
        suite: String,
        /// Groups to check (repeatable). Defaults to the built-in census.
        #[arg(long = "spec", value_parser = spec_arg)]
        specs: Vec<GroupSpec>,
        /// Report directory.
        #[arg(long, default_value = "./epg-reports")]
        out: PathBuf,
    },
    /// Check the groups of order 16 and list those with n_G = exp(G).
    Census16,
    /// Write the enhanced power graph in GraphViz DOT format.
    Dot {
        #[arg(value_parser = spec_arg)]
        spec: GroupSpec,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Realize a presentation by coset enumeration and print its invariants.
    Realize { presentation: String },
}

fn spec_arg(s: &str) -> Result<GroupSpec, String> {
    parse_spec(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Suite {
    Claim(ClaimId),
    Order16,
    DihedralAut,
    ProofIdentities,
    All,
}

impl Suite {
    fn ids() -> Vec<&'static str> {
        let mut ids: Vec<&str> = ClaimId::ALL.iter().map(|c| c.as_str()).collect();
        ids.extend(["order16", "dihedral-aut", "proof-identities", "all"]);
        ids
    }

    fn name(&self) -> &str {
        match self {
            Suite::Claim(c) => c.as_str(),
            Suite::Order16 => "order16",
            Suite::DihedralAut => "dihedral-aut",
            Suite::ProofIdentities => "proof-identities",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "order16" => Suite::Order16,
            "dihedral-aut" => Suite::DihedralAut,
            "proof-identities" => Suite::ProofIdentities,
            "all" => Suite::All,
            other => match other.parse::<ClaimId>() {
                Ok(c) => Suite::Claim(c),
                Err(_) => bail!("unknown suite `{s}`; available: {}", Suite::ids().join(", ")),
            },
        })
    }
}

fn build(spec: &GroupSpec, cli: &Cli) -> Result<GroupTable> {
    let g = spec.build(cli.max_order).with_context(|| format!("cannot build {spec}"))?;
    if let Some(seed) = cli.seed {
        g.check_laws(seed).with_context(|| format!("{spec} fails the group laws"))?;
    }
    Ok(g)
}

fn stats(g: &GroupTable, format: Option<Format>) -> Result<String> {
    let epg = build_epg(g)?;
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for x in g.nontrivial() {
        *sizes.entry(epg.neighborhood_size(x)).or_default() += 1;
    }
    let mut out = String::new();
    match format {
        Some(Format::Csv) => {
            out.push_str("element,order,neighborhood,component\n");
            for x in g.nontrivial() {
                writeln!(
                    out,
                    "{x},{},{},{}",
                    g.element_order(x),
                    epg.neighborhood_size(x),
                    epg.component_label(x)
                )?;
            }
        }
        Some(Format::Jsonl) => {
            let sizes: Vec<[usize; 2]> = sizes.iter().map(|(&s, &m)| [s, m]).collect();
            let record = serde_json::json!({
                "label": g.label(),
                "order": g.order(),
                "exp": g.exponent(),
                "nG": epg.n_g(),
                "components": epg.components().len(),
                "largest_component": epg.largest_component(),
                "universal": epg.universal_vertices().len(),
                "neighborhood_sizes": sizes,
            });
            writeln!(out, "{record}")?;
        }
        None => {
            writeln!(out, "group: {}", g.label())?;
            writeln!(out, "order: {}", g.order())?;
            writeln!(out, "exponent: {}", g.exponent())?;
            writeln!(out, "n_G: {}", epg.n_g())?;
            writeln!(out, "components: {}", epg.components().len())?;
            writeln!(out, "largest component: {}", epg.largest_component())?;
            writeln!(out, "universal vertices: {}", epg.universal_vertices().len())?;
            let multiset: Vec<String> = sizes.iter().map(|(s, m)| format!("{s}^{m}")).collect();
            writeln!(out, "neighborhood sizes: {}", multiset.join(" "))?;
        }
    }
    Ok(out)
}

fn suite_reports(suite: &Suite, specs: &[GroupSpec], cap: usize) -> Result<Vec<VerdictReport>> {
    let census_specs;
    let specs = if specs.is_empty() {
        census_specs = builtin_census();
        &census_specs[..]
    } else {
        specs
    };
    let claims: Vec<ClaimId> = match suite {
        Suite::Claim(c) => vec![*c],
        Suite::All => ClaimId::ALL.to_vec(),
        _ => Vec::new(),
    };
    let mut reports = Vec::new();
    if !claims.is_empty() {
        let census = run_census(specs, &claims, cap);
        if let Some((spec, why)) = census.errors.first() {
            bail!("cannot build {spec}: {why}");
        }
        reports.extend(census.reports);
    }
    if matches!(suite, Suite::Order16 | Suite::All) {
        reports.extend(census_order16()?.reports);
    }
    if matches!(suite, Suite::DihedralAut | Suite::All) {
        for alpha in 2..=5 {
            reports.push(check_dihedral_aut_fact(alpha)?);
        }
    }
    if matches!(suite, Suite::ProofIdentities | Suite::All) {
        for p in [3, 5] {
            for alpha in 2..=3 {
                reports.push(check_power_identity(IdentityFamily::Modular, p, alpha)?);
            }
        }
        for alpha in 3..=5 {
            reports.push(check_power_identity(IdentityFamily::Modular, 2, alpha)?);
            reports.push(check_power_identity(IdentityFamily::Semidihedral, 2, alpha)?);
        }
    }
    Ok(reports)
}

fn write_reports(dir: &Path, stem: &str, reports: &[VerdictReport], format: Option<Format>) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut written = Vec::new();
    let formats = match format {
        Some(f) => vec![f],
        None => vec![Format::Jsonl, Format::Csv],
    };
    for f in formats {
        let (ext, body) = match f {
            Format::Jsonl => ("jsonl", to_jsonl(reports)),
            Format::Csv => ("csv", to_csv(reports)),
        };
        let path = dir.join(format!("{stem}.{ext}"));
        fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}

fn summary(reports: &[VerdictReport]) -> String {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    format!(
        "{} pass, {} fail, {} not-applicable",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::NotApplicable)
    )
}

fn any_fail(reports: &[VerdictReport]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Stats { spec } => {
            let g = build(spec, cli)?;
            print!("{}", stats(&g, cli.format)?);
            Ok(true)
        }
        Command::Verify { suite, specs, out } => {
            let suite: Suite = suite.parse()?;
            let reports = suite_reports(&suite, specs, cli.max_order)?;
            let written = write_reports(out, suite.name(), &reports, cli.format)?;
            println!("suite {}: {}", suite.name(), summary(&reports));
            for r in reports.iter().filter(|r| r.status == Status::Fail) {
                let witness = r.witness.map(|w| w.to_string()).unwrap_or_default();
                println!("FAIL {} {} witness={witness}", r.label, r.claim);
            }
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(!any_fail(&reports))
        }
        Command::Census16 => {
            let census = census_order16()?;
            match cli.format {
                Some(Format::Jsonl) => print!("{}", to_jsonl(&census.reports)),
                Some(Format::Csv) => print!("{}", to_csv(&census.reports)),
                None => {
                    let catalog = catalog_order16()?;
                    println!("{:<14} {:>3} {:>3} {:>4}  status", "group", "exp", "nG", "=exp");
                    for (entry, r) in catalog.iter().zip(&census.reports) {
                        let n = r.n_g.unwrap_or(0);
                        let mark = if n == r.exp { "yes" } else { "no" };
                        println!("{:<14} {:>3} {:>3} {:>4}  {}", entry.name, r.exp, n, mark, r.status);
                    }
                    println!("n_G = exp(G): {}", census.attaining_exponent.join(", "));
                }
            }
            Ok(!any_fail(&census.reports))
        }
        Command::Dot { spec, output } => {
            let g = build(spec, cli)?;
            let epg = build_epg(&g)?;
            fs::write(output, epg.to_dot()).with_context(|| format!("cannot write {}", output.display()))?;
            println!(
                "wrote {} ({} vertices, {} edges)",
                output.display(),
                epg.vertex_count(),
                epg.edge_count()
            );
            Ok(true)
        }
        Command::Realize { presentation } => {
            let pres = parse_presentation(presentation)?;
            let g = realize(&pres, DEFAULT_MAX_COSETS)?;
            if g.order() > cli.max_order {
                bail!("group has order {}, above --max-order {}", g.order(), cli.max_order);
            }
            g.check_laws(cli.seed.unwrap_or(DEFAULT_LAW_SEED))?;
            println!("presentation: {pres}");
            if g.order() == 16 {
                let catalog = catalog_order16()?;
                for entry in &catalog {
                    if isomorphic(&g, &entry.table)? {
                        println!("isomorphic to: {}", entry.name);
                    }
                }
            }
            if g.order() == 1 {
                println!("order: 1");
            } else {
                print!("{}", stats(&g, cli.format)?);
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
