mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use plumbsw::brieskorn::{closed_form_invariants, brieskorn_seifert, BrieskornSpec};
use plumbsw::dedekind::{dr_sum, dr_sum_direct, DedekindArgs};
use plumbsw::homology::{gauss_sum_check, homology_from_lattice, DEFAULT_ORDER_CAP};
use plumbsw::plumbing::{build_lattice, PlumbingGraph};
use plumbsw::report::{analyze, AnalysisOptions, InvariantReport};
use plumbsw::seifert::{
    ks_route, lens_chain, seifert_casson_walker, seifert_k2nv, seifert_torsion_shortcut, star_graph,
    SeifertData,
};
use plumbsw::verify::{fixtures, mutant_dedekind, run_all, Ctx};
use plumbsw::Error;

use render::{Check, Output};

/// Largest |H| for which reports include the floating-point Gauss sum check.
const GAUSS_CAP: u64 = 100_000;
/// Largest modulus for which `dedekind` cross-checks against direct summation.
const DIRECT_SUM_CAP: i64 = 100_000;

#[derive(Parser)]
#[command(name = "plumbsw", version, about = "Exact invariants of negative definite plumbed 3-manifolds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Refuse character sums over groups larger than this.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP, global = true)]
    max_order: u64,
    /// Also report torsion and sw0 for every spin^c structure.
    #[arg(long, global = true)]
    all_spinc: bool,
    /// Worker threads for character sums (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a plumbing graph read from a JSON file.
    Graph { path: PathBuf },
    /// Analyze the lens space L(p, q).
    Lens { p: i64, q: i64 },
    /// Analyze a Seifert fibered rational homology sphere.
    Seifert {
        /// Central Euler number.
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// One singular fiber as alpha/omega; repeat for each arm.
        #[arg(long = "arm", value_parser = parse_arm, required = true)]
        arms: Vec<(i64, i64)>,
    },
    /// Analyze the Brieskorn-Hamm link with the given exponents.
    Brieskorn {
        #[arg(required = true, num_args = 3..)]
        exponents: Vec<i64>,
    },
    /// Evaluate the Dedekind-Rademacher sum s(h, k; x, y).
    Dedekind {
        #[arg(allow_hyphen_values = true)]
        h: i64,
        k: i64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x: BigRational,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        y: BigRational,
    },
    /// Run the built-in fixture suite.
    Verify {
        /// Print fixture names without running them.
        #[arg(long)]
        list: bool,
        /// Replace the Dedekind fast path with a wrong one, to check the suite notices.
        #[arg(long, hide = true)]
        corrupt_dedekind: bool,
    },
}

fn parse_arm(s: &str) -> Result<(i64, i64), String> {
    let (a, w) = s.split_once('/').ok_or_else(|| format!("expected alpha/omega, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(w)?))
}

enum Failure {
    Input(String),
    Cap(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = format!("{}: {e}", e.kind());
        match e {
            Error::OrderCapExceeded { .. } => Failure::Cap(msg),
            _ => Failure::Input(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify) => ExitCode::from(1),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let opts = AnalysisOptions {
        max_order: g.max_order,
        all_spinc: g.all_spinc,
    };
    let out = match &cli.command {
        Command::Graph { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let graph = PlumbingGraph::from_json(&text)?;
            graph_output(&graph, &opts)?
        }
        Command::Lens { p, q } => lens_output(*p, *q, &opts)?,
        Command::Seifert { b, arms } => seifert_output(SeifertData::new(*b, arms.clone())?, &opts)?,
        Command::Brieskorn { exponents } => brieskorn_output(exponents, &opts)?,
        Command::Dedekind { h, k, x, y } => {
            let args = DedekindArgs::new(*h, *k, x.clone(), y.clone())?;
            emit(&render::dedekind(g.format, &args, &dr_sum(&args), direct_check(&args, *k)));
            return Ok(());
        }
        Command::Verify { list, corrupt_dedekind } => return verify(g.format, *list, *corrupt_dedekind),
    };
    emit(&out.render(g.format));
    Ok(())
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn direct_check(args: &DedekindArgs, k: i64) -> Option<Check> {
    (k.abs() <= DIRECT_SUM_CAP).then(|| Check::equal("direct summation", &dr_sum(args), &dr_sum_direct(args)))
}

fn graph_output(graph: &PlumbingGraph, opts: &AnalysisOptions) -> Result<Output, Failure> {
    let report = analyze(graph, opts)?;
    let mut out = Output::new(report);
    out.checks.extend(gauss_check(graph)?);
    Ok(out)
}

fn gauss_check(graph: &PlumbingGraph) -> Result<Option<Check>, Failure> {
    let l = build_lattice(graph)?;
    let h = homology_from_lattice(&l)?;
    if h.order() > GAUSS_CAP {
        return Ok(None);
    }
    let (lhs, rhs) = gauss_sum_check(&l, &h, GAUSS_CAP)?;
    let delta = (lhs - rhs).norm();
    Ok(Some(Check {
        name: "Gauss sum (floating point)".into(),
        matches: Some(delta < 1e-9),
        detail: format!("|difference| = {delta:.1e}"),
    }))
}

fn lens_output(p: i64, q: i64, opts: &AnalysisOptions) -> Result<Output, Failure> {
    let graph = lens_chain(p, q)?;
    let mut out = graph_output(&graph, opts)?;
    let s = plumbsw::dedekind::dedekind_sum(q, p);
    let r = &out.report;
    let rat = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let checks = [
        Check::equal("closed-form T(1)", &r.torsion_at_1, &(rat(p - 1, 4 * p) - &s)),
        Check::equal("closed-form lambda", &r.casson_walker, &(rat(p, 2) * &s)),
        Check::equal("closed-form K^2+#V", &r.k2_plus_nv, &(rat(2 * (p - 1), p) - &s * rat(12, 1))),
    ];
    out.extras.push(("s(q,p)".into(), s.to_string()));
    out.checks.splice(0..0, checks);
    Ok(out)
}

fn seifert_output(s: SeifertData, opts: &AnalysisOptions) -> Result<Output, Failure> {
    let star = star_graph(&s);
    let mut out = graph_output(&star.graph, opts)?;
    let mut checks = seifert_checks(&s, &out.report);
    let l = build_lattice(&star.graph)?;
    let h = homology_from_lattice(&l)?;
    let short = seifert_torsion_shortcut(&s, &star, &h, &h.zero(), opts.max_order)?;
    checks.push(Check::equal("Seifert torsion shortcut", &short, &out.report.torsion_at_1));
    let ks = ks_route(&s);
    out.extras.push(("e".into(), s.e().to_string()));
    out.extras.push(("KS".into(), ks.ks.to_string()));
    out.extras.push(("|S0+|, |S0-|".into(), format!("{}, {}", ks.s0_plus, ks.s0_minus)));
    checks.push(match &ks.sw0_ks {
        Some(v) => Check::equal("KS route sw0", v, &out.report.sw0),
        None => Check::not_applicable("KS route sw0", "monopole moduli not zero-dimensional"),
    });
    out.checks.splice(0..0, checks);
    Ok(out)
}

fn seifert_checks(s: &SeifertData, r: &InvariantReport) -> Vec<Check> {
    vec![
        Check::equal("|H| = alpha_1...alpha_nu |e|", &s.order_h(), &r.order_h),
        Check::equal("Seifert closed-form lambda", &seifert_casson_walker(s), &r.casson_walker),
        Check::equal("Seifert closed-form K^2+#V", &seifert_k2nv(s), &r.k2_plus_nv),
    ]
}

fn brieskorn_output(exponents: &[i64], opts: &AnalysisOptions) -> Result<Output, Failure> {
    let spec = BrieskornSpec::new(exponents.to_vec())?;
    let s = brieskorn_seifert(&spec)?;
    let closed = closed_form_invariants(&spec)?;
    let mut out = graph_output(&star_graph(&s).graph, opts)?;
    let r = &out.report;
    let mut checks = vec![
        Check::equal("closed-form |H|", &closed.order_h, &r.order_h),
        Check::equal("closed-form T(1)", &closed.torsion_closed, &r.torsion_at_1),
        Check::equal("closed-form lambda", &closed.lambda_closed, &r.casson_walker),
        Check {
            name: "gorenstein_check -sw0 = sigma(F)/8".into(),
            matches: Some(closed.gorenstein_check),
            detail: format!("sw0 = {}, sigma(F) = {}", closed.sw0, closed.sigma_f),
        },
    ];
    checks.extend(seifert_checks(&s, r));
    out.extras.push(("Seifert data".into(), render::seifert_text(&s)));
    out.extras.push(("sigma(F)".into(), closed.sigma_f.to_string()));
    out.checks.splice(0..0, checks);
    Ok(out)
}

fn verify(format: Format, list: bool, corrupt: bool) -> Result<(), Failure> {
    if list {
        emit(&render::fixture_list(format, &fixtures()));
        return Ok(());
    }
    let ctx = Ctx {
        dedekind: if corrupt { mutant_dedekind } else { dr_sum },
    };
    let results = run_all(&ctx);
    let (text, all) = render::verify(format, &results);
    emit(&text);
    if all {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
