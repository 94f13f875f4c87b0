//! `dyckgrass`: tables, pictures and verification suites on the command line.

mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dyckgrass_core::dyck::{enumerate_partitions, q1};
use dyckgrass_core::equivariant::{check_commutativity, verify_pieri_gkm};
use dyckgrass_core::fixtures::{
    emit_fixtures, golden_check, round_trip, PairRecord, FIXTURE_DIR_VAR,
};
use dyckgrass_core::hecke::{kl_tables, PolyTable};
use dyckgrass_core::homology::{
    cellular_rank, hom1_dim, hom2_dim, hom_rank_notless, rouquier_terms,
};
use dyckgrass_core::paths::region_boxes;
use dyckgrass_core::selftest::{run_selected, run_suite, CriterionResult, SuiteConfig};
use dyckgrass_core::zelevinsky::{
    neat_orders_capped, translation_pair, verify_small_resolution, CharacterRoute, NEAT_ORDER_CAP,
};
use dyckgrass_core::Path;

#[derive(Parser, Debug)]
#[command(
    name = "dyckgrass",
    version,
    about = "Dyck partitions, parabolic KL polynomials and their checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for verification commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Ascii,
}

#[derive(Args, Debug)]
struct Space {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    i: usize,
}

#[derive(Args, Debug)]
struct OptSpace {
    /// Check a single space; requires --i.
    #[arg(long, requires = "i")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    i: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parabolic KL polynomials h(λ, μ).
    Kl(Space),
    /// Inverse parabolic KL polynomials g(λ, μ).
    Invkl(Space),
    /// Dyck partitions of the region between λ and μ.
    Partitions {
        /// Lower path; defaults to the identity.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        space: OptSpace,
    },
    /// Picture of the region between λ and μ with box labels.
    Render {
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        space: OptSpace,
    },
    /// Neat orders of a path and their translation pairs.
    Neat {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        space: OptSpace,
    },
    /// Compare small-resolution characters with KL basis elements, by both routes.
    CharCheck {
        #[command(flatten)]
        space: OptSpace,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Terms of the character-level Rouquier complex of μ.
    Rouquier {
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        space: OptSpace,
    },
    /// Graded Hom dimensions between λ and μ.
    Homdim {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        space: OptSpace,
    },
    /// Pieri rule against GKM localization, and commutativity of the two module actions.
    PieriCheck {
        #[command(flatten)]
        space: OptSpace,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Braid invariance, the reflection expansion and positivity of Demazure operators.
    DemazureCheck {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// The full verification suite, optionally capped at a smaller n.
    Selftest {
        #[arg(long)]
        max_n: Option<usize>,
        /// Also write golden fixtures to this directory and check they round-trip.
        #[arg(long)]
        emit_fixtures: Option<PathBuf>,
    },
}

/// Rendered output and whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn parse_path(s: &str, space: &OptSpace) -> Result<Path> {
    let p = match (space.n, space.i) {
        (Some(n), Some(i)) => Path::parse_in(s, n, i)?,
        _ => s.parse()?,
    };
    Ok(p)
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn table_output(t: &PolyTable, format: Format) -> String {
    match format {
        Format::Csv => t.to_csv(),
        Format::Json => {
            let rows: Vec<Value> = t
                .rows()
                .into_iter()
                .map(|(l, m, p)| json!({"lambda": l, "mu": m, "poly": p.to_string()}))
                .collect();
            pretty(&rows)
        }
        Format::Ascii => {
            let paths = t.space().paths();
            let cells: Vec<Vec<String>> = (0..paths.len())
                .map(|a| {
                    (0..paths.len())
                        .map(|b| {
                            let p = t.at(a, b);
                            if p.is_zero() {
                                ".".to_string()
                            } else {
                                p.to_string()
                            }
                        })
                        .collect()
                })
                .collect();
            let first = paths.iter().map(|p| p.n()).max().unwrap_or(0).max(3);
            let widths: Vec<usize> = (0..paths.len())
                .map(|b| {
                    cells
                        .iter()
                        .map(|r| r[b].len())
                        .max()
                        .unwrap_or(1)
                        .max(paths[b].n())
                })
                .collect();
            let mut out = format!("{:<first$}", "λ\\μ");
            for (b, p) in paths.iter().enumerate() {
                write!(out, "  {:>w$}", p.to_string(), w = widths[b]).unwrap();
            }
            out.push('\n');
            for (a, p) in paths.iter().enumerate() {
                write!(out, "{:<first$}", p.to_string()).unwrap();
                for (b, c) in cells[a].iter().enumerate() {
                    write!(out, "  {:>w$}", c, w = widths[b]).unwrap();
                }
                out.push('\n');
            }
            out
        }
    }
}

fn partitions_output(lam: &Path, mu: &Path, format: Format) -> Result<String> {
    let parts = enumerate_partitions(lam, mu)?;
    let kind = |p: &dyckgrass_core::DyckPartition| match (p.is_type1(), p.is_type2()) {
        (true, true) => "type 1, type 2",
        (true, false) => "type 1",
        (false, true) => "type 2",
        (false, false) => "-",
    };
    Ok(match format {
        Format::Json => {
            let v: Vec<Value> = parts
                .iter()
                .map(|p| json!({"size": p.size(), "type1": p.is_type1(), "type2": p.is_type2(), "strips": p}))
                .collect();
            pretty(&json!({"lambda": lam, "mu": mu, "partitions": v}))
        }
        Format::Csv => {
            let mut out = String::from("index,size,type1,type2,strips\n");
            for (k, p) in parts.iter().enumerate() {
                let strips: Vec<String> = p.strips().iter().map(|s| format!("{s:?}")).collect();
                writeln!(
                    out,
                    "{k},{},{},{},\"{}\"",
                    p.size(),
                    p.is_type1(),
                    p.is_type2(),
                    strips.join(" ")
                )
                .unwrap();
            }
            out
        }
        Format::Ascii => {
            let mut out = format!(
                "{} partitions of the region between {lam} and {mu}\n",
                parts.len()
            );
            for (k, p) in parts.iter().enumerate() {
                writeln!(out, "\n#{k}: {} strips, {}", p.size(), kind(p)).unwrap();
                out.push_str(&render::painted_partition(p));
            }
            out
        }
    })
}

fn render_output(lam: &Path, mu: &Path, format: Format) -> Result<String> {
    let region = region_boxes(lam, mu)?;
    Ok(match format {
        Format::Ascii => render::labelled_region(lam, mu),
        Format::Json => pretty(&json!({"lambda": lam, "mu": mu, "region": region})),
        Format::Csv => {
            let mut out = String::from("x,y,label\n");
            for b in &region.boxes {
                writeln!(out, "{},{},{}", b.x, b.y, b.label()).unwrap();
            }
            out
        }
    })
}

fn neat_output(lam: &Path, format: Format) -> Result<String> {
    let mut recs = Vec::new();
    for order in neat_orders_capped(lam, NEAT_ORDER_CAP) {
        let pair = translation_pair(lam, &order)?;
        recs.push(PairRecord {
            lambda: lam.to_string(),
            order,
            pair,
        });
    }
    let join = |o: &[usize]| {
        o.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(match format {
        Format::Json => pretty(&recs),
        Format::Csv => {
            let mut out = String::from("order,pair\n");
            for r in &recs {
                writeln!(out, "{},\"{}\"", join(&r.order), r.pair).unwrap();
            }
            out
        }
        Format::Ascii => {
            let mut out = format!("{} neat orders of {lam}\n", recs.len());
            for r in &recs {
                writeln!(out, "[{}]  {}", join(&r.order), r.pair).unwrap();
            }
            out
        }
    })
}

fn rouquier_output(mu: &Path, format: Format) -> Result<String> {
    let r = rouquier_terms(mu)?;
    Ok(match format {
        Format::Json => pretty(&r),
        Format::Csv => {
            let mut out = String::from("degree,lambda,shift\n");
            for (d, terms) in &r.terms {
                for t in terms {
                    writeln!(out, "{d},{},{}", t.lambda, t.shift).unwrap();
                }
            }
            out
        }
        Format::Ascii => {
            let columns: Vec<(String, Vec<String>)> = r
                .terms
                .iter()
                .map(|(d, terms)| {
                    let cells = terms
                        .iter()
                        .map(|t| {
                            if t.shift == 0 {
                                format!("B_{}", t.lambda)
                            } else {
                                format!("B_{}({})", t.lambda, t.shift)
                            }
                        })
                        .collect();
                    (format!("E^{d}"), cells)
                })
                .collect();
            let widths: Vec<usize> = columns
                .iter()
                .map(|(h, c)| {
                    c.iter()
                        .map(|s| s.chars().count())
                        .chain([h.chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let height = columns.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
            let mut out = String::new();
            let mut line = |cells: Vec<&str>| {
                let row: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                out.push_str(row.join("    ").trim_end());
                out.push('\n');
            };
            line(columns.iter().map(|(h, _)| h.as_str()).collect());
            for k in 0..height {
                line(
                    columns
                        .iter()
                        .map(|(_, c)| c.get(k).map_or("", String::as_str))
                        .collect(),
                );
            }
            out
        }
    })
}

fn homdim_output(lam: &Path, mu: &Path, format: Format) -> Result<String> {
    let hom1 = if lam == mu {
        None
    } else {
        Some(hom1_dim(lam, mu)?)
    };
    let hom2 = if lam.leq(mu) && lam != mu {
        Some(hom2_dim(lam, mu)?)
    } else {
        None
    };
    let notless = hom_rank_notless(lam, mu)?.to_string();
    let cellular = cellular_rank(lam, mu)?.to_string();
    let kl = q1(lam, mu).to_string();
    let opt = |x: Option<usize>| x.map_or("n/a".to_string(), |d| d.to_string());
    Ok(match format {
        Format::Json => pretty(&json!({
            "lambda": lam, "mu": mu, "hom1": hom1, "hom2": hom2,
            "hom_rank_notless": notless, "cellular_rank": cellular, "q1": kl,
        })),
        Format::Csv => format!(
            "lambda,mu,hom1,hom2,hom_rank_notless,cellular_rank,q1\n{lam},{mu},{},{},{notless},{cellular},{kl}\n",
            opt(hom1),
            opt(hom2)
        ),
        Format::Ascii => format!(
            "Hom(B_{lam}, B_{mu})\n  degree 1: {}\n  degree 2: {}\n  graded rank (strip peeling): {notless}\n  graded rank (cellular): {cellular}\n  q1: {kl}\n",
            opt(hom1),
            opt(hom2)
        ),
    })
}

fn spaces(space: &OptSpace, max_n: usize) -> Vec<(usize, usize)> {
    match (space.n, space.i) {
        (Some(n), Some(i)) => vec![(n, i)],
        _ => (2..=max_n)
            .flat_map(|n| (1..n).map(move |i| (n, i)))
            .collect(),
    }
}

fn char_check(space: &OptSpace, max_n: usize, format: Format) -> Result<Outcome> {
    let mut ok = true;
    let mut rows = Vec::new();
    for (n, i) in spaces(space, max_n) {
        let alg = verify_small_resolution(n, i, NEAT_ORDER_CAP, CharacterRoute::Algebra, true)?;
        let module = verify_small_resolution(n, i, NEAT_ORDER_CAP, CharacterRoute::Module, true)?;
        ok &= alg.passed() && module.passed();
        rows.push((alg, module));
    }
    let pf = |b: bool| if b { "PASS" } else { "FAIL" };
    let text = match format {
        Format::Json => pretty(
            &rows
                .iter()
                .map(|(a, m)| json!({"algebra": a, "module": m}))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut out = String::from("n,i,paths,orders,algebra,module\n");
            for (a, m) in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    a.n,
                    a.i,
                    a.paths,
                    a.orders_checked,
                    pf(a.passed()),
                    pf(m.passed())
                )
                .unwrap();
            }
            out
        }
        Format::Ascii => {
            let mut out = String::new();
            for (a, m) in &rows {
                writeln!(
                    out,
                    "n={} i={}: {} paths, {} orders; algebra {}, module {}",
                    a.n,
                    a.i,
                    a.paths,
                    a.orders_checked,
                    pf(a.passed()),
                    pf(m.passed())
                )
                .unwrap();
                for f in a.failures.iter().chain(&m.failures) {
                    writeln!(out, "  {f}").unwrap();
                }
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

fn pieri_check(
    space: &OptSpace,
    max_n: usize,
    trials: usize,
    seed: u64,
    format: Format,
) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut rows = Vec::new();
    for (n, i) in spaces(space, max_n) {
        let r = verify_pieri_gkm(n, i)?;
        let comm = check_commutativity(n, i, trials, &mut rng)?;
        ok &= r.passed() && comm;
        rows.push((r, comm));
    }
    let pf = |b: bool| if b { "PASS" } else { "FAIL" };
    let text = match format {
        Format::Json => pretty(
            &rows
                .iter()
                .map(|(r, c)| json!({"pieri": r, "commutativity": c}))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut out = String::from("n,i,checks,pieri,commutativity\n");
            for (r, c) in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    r.i,
                    r.checks,
                    pf(r.passed()),
                    pf(*c)
                )
                .unwrap();
            }
            out
        }
        Format::Ascii => {
            let mut out = String::new();
            for (r, c) in &rows {
                writeln!(
                    out,
                    "n={} i={}: {} localized values {}, commutativity ({trials} trials) {}",
                    r.n,
                    r.i,
                    r.checks,
                    pf(r.passed()),
                    pf(*c)
                )
                .unwrap();
                for f in &r.failures {
                    writeln!(out, "  {f}").unwrap();
                }
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

fn suite_output(results: &[CriterionResult], extra: &[(String, bool)], format: Format) -> Outcome {
    let ok = results.iter().all(|r| r.passed) && extra.iter().all(|(_, b)| *b);
    let text = match format {
        Format::Json => pretty(&json!({
            "criteria": results,
            "extra": extra.iter().map(|(d, b)| json!({"detail": d, "passed": b})).collect::<Vec<_>>(),
            "passed": ok,
        })),
        Format::Csv => {
            let mut out = String::from("id,name,passed,detail\n");
            for r in results {
                writeln!(
                    out,
                    "{},{},{},\"{}\"",
                    r.id,
                    r.name,
                    r.passed,
                    r.detail.replace('"', "'")
                )
                .unwrap();
            }
            for (d, b) in extra {
                writeln!(out, ",,{b},\"{}\"", d.replace('"', "'")).unwrap();
            }
            out
        }
        Format::Ascii => {
            let mut out = String::new();
            for r in results {
                writeln!(out, "{}", r.summary()).unwrap();
            }
            for (d, b) in extra {
                writeln!(out, "{d} {}", if *b { "PASS" } else { "FAIL" }).unwrap();
            }
            let failed = results.iter().filter(|r| !r.passed).count()
                + extra.iter().filter(|(_, b)| !b).count();
            writeln!(
                out,
                "{} checks, {failed} failed",
                results.len() + extra.len()
            )
            .unwrap();
            out
        }
    };
    Outcome { text, ok }
}

fn report_timing(r: &CriterionResult) {
    let t: Vec<String> = r
        .timings
        .iter()
        .map(|(w, s)| format!("{w} {s:.2}s"))
        .collect();
    eprintln!(
        "criterion {} {}: {}",
        r.id,
        if r.passed { "PASS" } else { "FAIL" },
        t.join(", ")
    );
}

fn selftest(
    max_n: Option<usize>,
    emit: Option<&PathBuf>,
    seed: u64,
    format: Format,
) -> Result<Outcome> {
    let cfg = match max_n {
        Some(m) => SuiteConfig::capped(m, seed),
        None => SuiteConfig {
            seed,
            ..SuiteConfig::full()
        },
    };
    let results = run_suite(&cfg, report_timing);
    let mut extra = Vec::new();
    if let Some(dir) = emit {
        let files = emit_fixtures(dir, max_n.unwrap_or(6))?;
        let mut bad = Vec::new();
        for f in &files {
            if !round_trip(f)? {
                bad.push(f.display().to_string());
            }
        }
        extra.push((
            format!(
                "fixtures: {} files written, {} failed to round-trip",
                files.len(),
                bad.len()
            ),
            bad.is_empty(),
        ));
    }
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_VAR) {
        let bad = golden_check(std::path::Path::new(&dir))?;
        extra.push((
            format!("golden fixtures: {} mismatched files {:?}", bad.len(), bad),
            bad.is_empty(),
        ));
    }
    Ok(suite_output(&results, &extra, format))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let fmt = |default: Format| cli.common.format.unwrap_or(default);
    let path_or_id = |s: &Option<String>, mu: &Path| -> Result<Path> {
        match s {
            Some(s) => {
                let p: Path = s.parse()?;
                if (p.n(), p.i()) != (mu.n(), mu.i()) {
                    bail!("{p} and {mu} lie in different spaces");
                }
                Ok(p)
            }
            None => Ok(Path::identity(mu.n(), mu.i())?),
        }
    };
    Ok(match &cli.command {
        Command::Kl(s) => table_output(&kl_tables(s.n, s.i)?.h, fmt(Format::Csv)).into(),
        Command::Invkl(s) => table_output(&kl_tables(s.n, s.i)?.g, fmt(Format::Csv)).into(),
        Command::Partitions { lambda, mu, space } => {
            let mu = parse_path(mu, space)?;
            partitions_output(&path_or_id(lambda, &mu)?, &mu, fmt(Format::Ascii))?.into()
        }
        Command::Render { lambda, mu, space } => {
            let mu = parse_path(mu, space)?;
            render_output(&path_or_id(lambda, &mu)?, &mu, fmt(Format::Ascii))?.into()
        }
        Command::Neat { lambda, space } => {
            neat_output(&parse_path(lambda, space)?, fmt(Format::Ascii))?.into()
        }
        Command::CharCheck { space, max_n } => char_check(space, *max_n, fmt(Format::Ascii))?,
        Command::Rouquier { mu, space } => {
            rouquier_output(&parse_path(mu, space)?, fmt(Format::Ascii))?.into()
        }
        Command::Homdim { lambda, mu, space } => {
            let mu = parse_path(mu, space)?;
            homdim_output(
                &path_or_id(&Some(lambda.clone()), &mu)?,
                &mu,
                fmt(Format::Ascii),
            )?
            .into()
        }
        Command::PieriCheck {
            space,
            max_n,
            trials,
        } => pieri_check(space, *max_n, *trials, cli.common.seed, fmt(Format::Ascii))?,
        Command::DemazureCheck { max_n } => {
            let results = run_selected(
                &SuiteConfig::capped(*max_n, cli.common.seed),
                &[8],
                report_timing,
            );
            suite_output(&results, &[], fmt(Format::Ascii))
        }
        Command::Selftest {
            max_n,
            emit_fixtures,
        } => selftest(
            *max_n,
            emit_fixtures.as_ref(),
            cli.common.seed,
            fmt(Format::Ascii),
        )?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.common.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .expect("thread pool");
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.common.output {
        Some(file) => std::fs::write(file, &outcome.text)
            .with_context(|| format!("writing {}", file.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
