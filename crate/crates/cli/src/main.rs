//! Command line driver: JSON descriptions in, signature reports out.
//!
//! Exit codes: 0 success (and every suite case passed), 1 a verify suite had
//! failing cases, 2 unreadable or malformed input, 3 validated input that the
//! computation rejects.

mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use l2sig::constructions::{counterexample_battery, staircase_product, CoveredComplex};
use l2sig::covering::CoveringCocycle;
use l2sig::group::GroupModel;
use l2sig::json::{self, ComplexDto, FormDto, RealDto, ReportDto};
use l2sig::pairing::l2_signature_of_space;
use l2sig::signature::{l2_signature_of_form, signature_tower, QuadratureSpec};
use serde::de::DeserializeOwned;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "l2sig", version, about = "Von Neumann signatures of group-ring forms and covered complexes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Signature report for a Hermitian form file
    FormSig {
        /// form JSON file
        form: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Signature report for a covered complex file
    SpaceSig {
        /// complex JSON file, optionally carrying a covering cocycle
        complex: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Normalized signatures down a tower of finite quotients, as CSV
    Tower {
        /// form JSON file over a tower group model
        form: PathBuf,
        /// how many quotients to descend
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Product of two forms (Kunneth) or two covered complexes (staircase)
    Product {
        a: PathBuf,
        b: PathBuf,
        /// write the product here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one invariant suite and report per-case lines
    Verify {
        /// whitney | kunneth | sylvester | two-route | ordering
        suite: String,
    },
    /// Write the counterexample battery: form files plus an expectations CSV
    Battery {
        /// output directory
        #[arg(long)]
        out: PathBuf,
        /// deck group orders; 1 encodes the infinite cyclic case
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,1")]
        p: Vec<usize>,
    },
}

#[derive(Args)]
struct RunFlags {
    /// quadrature nodes per axis for free abelian deck groups
    #[arg(long, default_value_t = 2048)]
    nodes: usize,
    /// zero threshold for quadrature eigenvalues
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    /// quadrature jitter seed, echoed into the report
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// What went wrong, bucketed by exit code.
pub enum Failure {
    /// unreadable file, malformed JSON, unknown suite name: exit 2
    Parse(String),
    /// well-formed input the library rejects, or a failed write: exit 3
    Validation(String),
    /// a verify suite ran to completion with failing cases: exit 1
    Suite(usize),
}

impl From<l2sig::Error> for Failure {
    fn from(e: l2sig::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Suite(n)) => {
            eprintln!("{n} failing case(s)");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::FormSig { form, run } => {
            let dto: FormDto = read_json(&form)?;
            let form = json::form_from_dto(&dto)?;
            let spec = quad_spec(&run)?;
            let report = l2_signature_of_form(&form, Some(&spec))?;
            let text = render_report(&json::report_to_dto(&report, run.seed, run.nodes, run.eps), run.format);
            emit(&text, run.out.as_deref())
        }
        Cmd::SpaceSig { complex, run } => {
            let dto: ComplexDto = read_json(&complex)?;
            let (complex, covering) = json::complex_from_dto(&dto)?;
            let covering =
                covering.unwrap_or_else(|| CoveringCocycle::trivial(GroupModel::trivial()));
            let spec = quad_spec(&run)?;
            let report = l2_signature_of_space(&complex, &covering, Some(&spec))?;
            let text = render_report(&json::report_to_dto(&report, run.seed, run.nodes, run.eps), run.format);
            emit(&text, run.out.as_deref())
        }
        Cmd::Tower { form, depth, run } => {
            let dto: FormDto = read_json(&form)?;
            let form = json::form_from_dto(&dto)?;
            let rows = signature_tower(&form, depth)?;
            let mut csv = String::from("k,index,sign2\n");
            for (k, row) in rows.iter().enumerate() {
                let _ = writeln!(csv, "{},{},{}", k + 1, row.index, row.sign2);
            }
            // reference value over the full deck group, for eyeballing the limit
            let base = form.group().tower_data().map(|t| t.base.clone());
            if let Some(base) = base.filter(|b| b.rank().is_some() && depth > 0) {
                let based = form.with_group(base)?;
                let report = l2_signature_of_form(&based, Some(&quad_spec(&run)?))?;
                let _ = writeln!(csv, "quadrature,,{}", report.sign2);
            }
            emit(&csv, run.out.as_deref())
        }
        Cmd::Product { a, b, out } => {
            let va: serde_json::Value = read_json(&a)?;
            let vb: serde_json::Value = read_json(&b)?;
            let text = match (sniff(&va, &a)?, sniff(&vb, &b)?) {
                (Kind::Form, Kind::Form) => {
                    let fa = json::form_from_dto(&decode(va, &a)?)?;
                    let fb = json::form_from_dto(&decode(vb, &b)?)?;
                    let product = fa.kunneth_product(&fb)?;
                    pretty(&json::form_to_dto(&product)?)
                }
                (Kind::Complex, Kind::Complex) => {
                    let x = covered_from_dto(&decode(va, &a)?)?;
                    let y = covered_from_dto(&decode(vb, &b)?)?;
                    let product = staircase_product(&x, &y)?;
                    let covering = (product.covering.group().order() != Some(1))
                        .then_some(&product.covering);
                    pretty(&json::complex_to_dto(&product.complex, covering)?)
                }
                _ => {
                    return Err(Failure::Validation(
                        "product needs two forms or two complexes, not one of each".into(),
                    ))
                }
            };
            emit(&text, out.as_deref())
        }
        Cmd::Verify { suite } => suites::run(&suite),
        Cmd::Battery { out, p } => {
            let cases = counterexample_battery(&p)?;
            fs::create_dir_all(&out)
                .map_err(|e| Failure::Validation(format!("cannot create {}: {e}", out.display())))?;
            let mut csv = String::from("name,file,p,expected_sign2,expected_sign\n");
            for case in &cases {
                let name = case.name();
                let path = out.join(format!("{name}.json"));
                let text = pretty(&json::form_to_dto(&case.form)?);
                write_file(&path, &text)?;
                println!("wrote {}", path.display());
                let _ = writeln!(
                    csv,
                    "{name},{name}.json,{},{},{}",
                    case.p, case.expected_sign2, case.expected_sign
                );
            }
            let path = out.join("expectations.csv");
            write_file(&path, &csv)?;
            println!("wrote {}", path.display());
            Ok(())
        }
    }
}

enum Kind {
    Form,
    Complex,
}

/// Decide form vs complex by the discriminating field, before strict decoding.
fn sniff(v: &serde_json::Value, path: &Path) -> Result<Kind, Failure> {
    if v.get("matrix").is_some() {
        Ok(Kind::Form)
    } else if v.get("top_simplices").is_some() {
        Ok(Kind::Complex)
    } else {
        Err(Failure::Parse(format!(
            "{}: expected a form (matrix field) or a complex (top_simplices field)",
            path.display()
        )))
    }
}

fn decode<T: DeserializeOwned>(v: serde_json::Value, path: &Path) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn covered_from_dto(dto: &ComplexDto) -> Result<CoveredComplex, Failure> {
    let (complex, covering) = json::complex_from_dto(dto)?;
    Ok(match covering {
        Some(covering) => CoveredComplex::new(complex, covering)?,
        None => CoveredComplex::plain(complex)?,
    })
}

fn quad_spec(run: &RunFlags) -> Result<QuadratureSpec, Failure> {
    Ok(QuadratureSpec::new(run.nodes, run.seed, run.eps)?)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization is total");
    text.push('\n');
    text
}

fn real_csv(r: &RealDto) -> String {
    match r {
        RealDto::Exact(s) => s.clone(),
        RealDto::Approx(x) => format!("{x}"),
    }
}

fn render_report(dto: &ReportDto, format: Format) -> String {
    match format {
        Format::Json => pretty(dto),
        Format::Csv => format!(
            "method,sign2,ordinary_sign,kernel_dim,error_bound,dim,seed,nodes,eps\n{},{},{},{},{},{},{},{},{}\n",
            dto.method,
            real_csv(&dto.sign2),
            dto.ordinary_sign,
            real_csv(&dto.kernel_dim),
            dto.error_bound,
            dto.dim,
            dto.seed,
            dto.nodes,
            dto.eps,
        ),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::Validation(format!("cannot write {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
