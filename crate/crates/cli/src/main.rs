//! `venant`: exact verification of the identities of linear elasticity.
//!
//! Exit codes: 0 success, 1 identity failure, 2 mathematical precondition
//! failure, 64 usage error, 65 unreadable or malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use venant::calculus::{curl_curl, sym_grad};
use venant::complex::chain::{
    derive_elasticity, elasticity_complex, halfway_complex, verify_complex, w_split_complex,
    ComplexReport,
};
use venant::connection::{normalize_rigid, saint_venant_reconstruct};
use venant::poly::{parse_rational, rational_to_string, Rational};
use venant::riemannian::{linearized_einstein, pointwise_curvature, PolyMetric, RatMat3};
use venant::verify::{run_suite, Suite, SuiteConfig};
use venant::{Error, Field, SymField};

const EXIT_IDENTITY: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_INPUT: u8 = 65;

#[derive(Parser)]
#[command(name = "venant", version, about = "Exact tensor calculus for linear elasticity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Calculus,
    Connection,
    Riemannian,
    Complex,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Calculus => Suite::Calculus,
            SuiteArg::Connection => Suite::Connection,
            SuiteArg::Riemannian => Suite::Riemannian,
            SuiteArg::Complex => Suite::Complex,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Derive {
    None,
    Halfway,
    Elasticity,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites on seeded random polynomial fields.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Recover a displacement from a compatible strain.
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Remove the rigid motion fixed by the value and rotation at the origin.
        #[arg(long)]
        normalize: bool,
        /// Check that the strain of the output equals the input.
        #[arg(long)]
        verify_output: bool,
    },
    /// First-order Einstein tensor of the metric `delta + eps * Sigma`.
    Linearize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Compare with curl curl of the input.
        #[arg(long)]
        check: bool,
    },
    /// Exactness and rank report for truncated complexes.
    Complex {
        #[arg(long)]
        degree: i64,
        #[arg(long, value_enum, default_value = "none")]
        derive: Derive,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Exact Ricci, scalar and Einstein curvature of a metric at a point.
    Ricci {
        #[arg(long)]
        metric: PathBuf,
        /// Comma-separated rationals, e.g. `1/3,2,-1`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SaintVenant { .. }
            | Error::SingularMetric
            | Error::NotCurlFree { .. }
            | Error::NotFlat { .. }
            | Error::DegreeTooLow { .. }
            | Error::ZeroVector
            | Error::NonIdentityBackground => EXIT_PRECONDITION,
            Error::Parse(_) | Error::NotSymmetric { .. } => EXIT_INPUT,
            Error::Input(_) | Error::InvalidAxis(_) | Error::UnknownOperator(_) => EXIT_USAGE,
            Error::NonInvertibleBlock { .. } | Error::Internal(_) => EXIT_IDENTITY,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Verify {
            suite,
            degree,
            trials,
            seed,
            json,
            report,
            inject_fault,
        } => cmd_verify(
            SuiteConfig {
                suite: suite.into(),
                degree,
                trials,
                seed,
            },
            json,
            report.as_deref(),
            inject_fault.as_deref(),
        ),
        Command::Reconstruct {
            input,
            output,
            normalize,
            verify_output,
        } => cmd_reconstruct(&input, &output, normalize, verify_output),
        Command::Linearize {
            input,
            output,
            check,
        } => cmd_linearize(&input, &output, check),
        Command::Complex {
            degree,
            derive,
            report,
            json,
        } => cmd_complex(degree, derive, report.as_deref(), json),
        Command::Ricci {
            metric,
            point,
            json,
        } => cmd_ricci(&metric, &point, json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, format!("{text}\n"))
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))
}

fn read_sym(path: &Path) -> Result<SymField, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let field = Field::from_json(&text).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    match field {
        Field::Sym(s) => Ok(s),
        other => Err(Failure::new(
            EXIT_INPUT,
            format!("{}: expected a sym field, got {}", path.display(), other.kind()),
        )),
    }
}

fn cmd_verify(config: SuiteConfig, json: bool, report: Option<&Path>, fault: Option<&str>) -> Outcome {
    let r = run_suite(&config, fault)?;
    if json {
        println!("{}", r.to_json());
    } else {
        println!("{r}");
    }
    if let Some(path) = report {
        write_file(path, &r.to_json())?;
    }
    if r.passed {
        Ok(())
    } else {
        let names: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
        Err(Failure::new(EXIT_IDENTITY, format!("failed: {}", names.join(", "))))
    }
}

fn cmd_reconstruct(input: &Path, output: &Path, normalize: bool, verify_output: bool) -> Outcome {
    let sigma = read_sym(input)?;
    let x = match saint_venant_reconstruct(&sigma) {
        Ok(x) => x,
        Err(Error::SaintVenant { residual }) => {
            println!("{}", Field::Sym((*residual).clone()).to_json());
            return Err(Failure::new(
                EXIT_PRECONDITION,
                format!("strain is not compatible, curl curl = {residual}"),
            ));
        }
        Err(e) => return Err(e.into()),
    };
    let x = if normalize { normalize_rigid(&x) } else { x };
    if verify_output && sym_grad(&x) != sigma {
        return Err(Failure::new(
            EXIT_IDENTITY,
            format!("strain of the output differs from the input: {}", &sym_grad(&x) - &sigma),
        ));
    }
    write_file(output, &Field::Vec(x).to_json())
}

fn cmd_linearize(input: &Path, output: &Path, check: bool) -> Outcome {
    let sigma = read_sym(input)?;
    let g = linearized_einstein(&sigma)?;
    write_file(output, &Field::Sym(g.clone()).to_json())?;
    if check {
        let cc = curl_curl(&sigma)?;
        if cc != g {
            return Err(Failure::new(
                EXIT_IDENTITY,
                format!("linearized Einstein minus curl curl = {}", &g - &cc),
            ));
        }
        println!("linearized_einstein == curl_curl: pass");
    }
    Ok(())
}

fn report_ok(r: &ComplexReport) -> bool {
    r.compositions_vanish() && r.is_exact()
}

fn print_report(r: &ComplexReport) {
    println!("{}", r.complex);
    for (k, s) in r.slots.iter().enumerate() {
        let defect = s.defect.map_or("-".to_string(), |d| d.to_string());
        println!(
            "  slot {k}: {}  dim {}  kernel {}  image {}  defect {defect}",
            s.space, s.dim, s.kernel_dim, s.incoming_rank
        );
    }
    println!("  ranks {:?}  compositions {:?}", r.ranks, r.composition_residuals);
}

fn cmd_complex(degree: i64, derive: Derive, report: Option<&Path>, json: bool) -> Outcome {
    if degree < 3 {
        return Err(Failure::new(EXIT_PRECONDITION, "complex reports need --degree >= 3"));
    }
    let (doc, ok) = match derive {
        Derive::None => {
            let reports = [
                verify_complex(&elasticity_complex(degree)?),
                verify_complex(&w_split_complex(degree)?),
            ];
            let ok = reports.iter().all(report_ok);
            if !json {
                reports.iter().for_each(print_report);
            }
            (json!({ "degree": degree, "complexes": reports }), ok)
        }
        Derive::Halfway => {
            let reports = [
                verify_complex(&w_split_complex(degree)?),
                verify_complex(&halfway_complex(degree)?),
            ];
            let ok = reports.iter().all(report_ok);
            let shapes = halfway_complex(degree)?.shapes();
            if !json {
                reports.iter().for_each(print_report);
                let shown: Vec<String> = shapes.iter().map(|s| s.join(" + ")).collect();
                println!("halfway shapes: {}", shown.join(" -> "));
            }
            (
                json!({ "degree": degree, "complexes": reports, "halfway_shapes": shapes }),
                ok,
            )
        }
        Derive::Elasticity => {
            let d = derive_elasticity(degree)?;
            let reports = [&d.w_report, &d.halfway_report, &d.reduced_report, &d.elasticity_report];
            let ok = reports.iter().all(|r| report_ok(r)) && d.all_proportional();
            if !json {
                reports.iter().for_each(|r| print_report(r));
                for s in &d.stages {
                    println!(
                        "stage {}: {} = ({}) * {}",
                        s.stage,
                        s.reduced_map,
                        s.constant.as_deref().unwrap_or("not proportional"),
                        s.reference_map
                    );
                }
            }
            (serde_json::to_value(&d).expect("derivation serializes"), ok)
        }
    };
    let text = serde_json::to_string_pretty(&doc).expect("report serializes");
    if json {
        println!("{text}");
    }
    if let Some(path) = report {
        write_file(path, &text)?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::new(EXIT_IDENTITY, "complex is not exact or reduction is not proportional"))
    }
}

fn parse_point(s: &str) -> Result<[Rational; 3], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Failure::new(EXIT_USAGE, format!("point `{s}` needs three coordinates")));
    }
    let mut out: [Rational; 3] = Default::default();
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_rational(p)
            .ok_or_else(|| Failure::new(EXIT_USAGE, format!("`{p}` is not a rational number")))?;
    }
    Ok(out)
}

fn mat_strings(m: &RatMat3) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(rational_to_string).collect()).collect()
}

fn cmd_ricci(metric: &Path, point: &str, json: bool) -> Outcome {
    let p = parse_point(point)?;
    let g = read_sym(metric)?;
    let c = pointwise_curvature(&PolyMetric::new(g), &p)?;
    if json {
        let doc = json!({
            "point": p.iter().map(rational_to_string).collect::<Vec<_>>(),
            "ricci": mat_strings(&c.ricci),
            "scalar": rational_to_string(&c.scalar),
            "einstein": mat_strings(&c.einstein),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else {
        let show = |name: &str, m: &RatMat3| {
            println!("{name}:");
            for row in mat_strings(m) {
                println!("  {}", row.join("  "));
            }
        };
        show("ricci", &c.ricci);
        println!("scalar: {}", rational_to_string(&c.scalar));
        show("einstein", &c.einstein);
    }
    Ok(())
}
