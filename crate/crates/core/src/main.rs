use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wheel_green::metrics::{effective_resistance, kirchhoff_closed, kirchhoff_green, kirchhoff_wheel};
use wheel_green::output::{csv_rows, format_number, matrix_csv, matrix_payload, Envelope};
use wheel_green::validate::{validate, DEFAULT_TOL};
use wheel_green::{
    assemble_group_inverse, build_laplacian, dense_group_inverse, resistance_closed, resistance_table,
    theorem_group_inverse, DenseMatrix, Error, Result, Sweep, VertexId, WheelParams,
};

#[derive(Parser)]
#[command(name = "wheel-green", version, about = "Green matrix, resistances and Kirchhoff index of wheel networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The (n+1)x(n+1) group inverse of the wheel Laplacian.
    Ginv {
        #[command(flatten)]
        net: NetworkArgs,
        #[arg(long, value_enum, default_value_t = Method::Pipeline)]
        method: Method,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Effective resistance between two vertices (1-based, hub = n+1), or all pairs.
    Resistance {
        #[command(flatten)]
        net: NetworkArgs,
        #[arg(long, value_enum, default_value_t = Method::Pipeline)]
        method: Method,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Kirchhoff index.
    Kirchhoff {
        #[command(flatten)]
        net: NetworkArgs,
        #[arg(long, value_enum, default_value_t = Method::Pipeline)]
        method: Method,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cross-check every route over a parameter sweep and emit the errata ledger.
    Validate {
        /// Sweep ranges, e.g. "m=2..6,d=1..5".
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct NetworkArgs {
    /// Number of spokes.
    #[arg(long)]
    m: usize,
    /// Spoke spacing along the cycle.
    #[arg(long)]
    d: usize,
    /// Hub-spoke conductance.
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Cycle-edge conductance.
    #[arg(long, allow_negative_numbers = true)]
    c: f64,
}

impl NetworkArgs {
    fn params(&self) -> Result<WheelParams> {
        WheelParams::new(self.m, self.d, self.a, self.c)
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit a header line in CSV output.
    #[arg(long)]
    header: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Pipeline,
    Theorem,
    Oracle,
    Closed,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Pipeline => "pipeline",
            Method::Theorem => "theorem",
            Method::Oracle => "oracle",
            Method::Closed => "closed",
        }
    }
}

fn group_inverse(p: &WheelParams, method: Method) -> Result<DenseMatrix> {
    match method {
        Method::Pipeline => assemble_group_inverse(p),
        Method::Theorem => theorem_group_inverse(p),
        Method::Oracle => dense_group_inverse(&build_laplacian(p)),
        Method::Closed => Err(Error::Precondition(
            "--method closed applies to resistance and kirchhoff; use theorem for the matrix".into(),
        )),
    }
}

fn vertex(label: usize, p: &WheelParams) -> Result<VertexId> {
    if label == 0 || label > p.order() {
        return Err(Error::IndexOutOfRange { index: label, order: p.order() });
    }
    Ok(VertexId(label - 1))
}

fn emit(out: &OutputArgs, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(io)
        }
    }
}

fn scalar_csv(header: bool, name: &str, value: f64) -> String {
    let head = if header { format!("{name}\n") } else { String::new() };
    format!("{head}{}\n", format_number(value))
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Ginv { net, method, out } => {
            let p = net.params()?;
            let x = group_inverse(&p, method)?;
            let text = match out.format {
                Format::Json => Envelope::new(Some(&p), method.name(), matrix_payload(&x)).to_json()?,
                Format::Csv => matrix_csv(&x, out.header),
            };
            emit(&out, &text)?;
        }
        Command::Resistance { net, method, i, j, all, out } => {
            let p = net.params()?;
            let pair = match (all, i, j) {
                (true, None, None) => None,
                (false, Some(i), Some(j)) => Some((vertex(i, &p)?, vertex(j, &p)?)),
                _ => return Err(Error::Precondition("give either --i and --j, or --all".into())),
            };
            let text = match pair {
                Some((vi, vj)) => {
                    let r = if method == Method::Closed {
                        resistance_closed(&p, vi, vj)?
                    } else {
                        effective_resistance(&group_inverse(&p, method)?, vi, vj)?
                    };
                    match out.format {
                        Format::Json => Envelope::new(Some(&p), method.name(), r).to_json()?,
                        Format::Csv => scalar_csv(out.header, "resistance", r),
                    }
                }
                None => {
                    let table = if method == Method::Closed {
                        let n = p.order();
                        let mut t = DenseMatrix::zeros(n, n);
                        for a in 0..n {
                            for b in a + 1..n {
                                let r = resistance_closed(&p, VertexId(a), VertexId(b))?;
                                t[(a, b)] = r;
                                t[(b, a)] = r;
                            }
                        }
                        t
                    } else {
                        resistance_table(&group_inverse(&p, method)?)?
                    };
                    match out.format {
                        Format::Json => Envelope::new(Some(&p), method.name(), matrix_payload(&table)).to_json()?,
                        Format::Csv => matrix_csv(&table, out.header),
                    }
                }
            };
            emit(&out, &text)?;
        }
        Command::Kirchhoff { net, method, out } => {
            let p = net.params()?;
            let k = match method {
                Method::Closed if p.is_complete_wheel() => kirchhoff_wheel(&p)?,
                Method::Closed => kirchhoff_closed(&p)?,
                _ => kirchhoff_green(&group_inverse(&p, method)?),
            };
            let text = match out.format {
                Format::Json => Envelope::new(Some(&p), method.name(), k).to_json()?,
                Format::Csv => scalar_csv(out.header, "kirchhoff", k),
            };
            emit(&out, &text)?;
        }
        Command::Validate { sweep, tol, out } => {
            let sweep = match sweep {
                Some(spec) => Sweep::parse(&spec)?,
                None => Sweep::standard(),
            };
            let report = validate(&sweep, tol)?;
            let text = match out.format {
                Format::Json => {
                    let env = Envelope::new(None, "pipeline", &report);
                    match &report.ledger {
                        Some(ledger) => env.with_errata(ledger).to_json()?,
                        None => env.to_json()?,
                    }
                }
                Format::Csv => {
                    let header: Vec<String> = [
                        "m",
                        "d",
                        "a",
                        "c",
                        "n",
                        "axiom_residual",
                        "oracle_rel_frobenius",
                        "theorem_max_abs",
                        "resistance_oracle_max_abs",
                        "resistance_closed_max_abs",
                        "kirchhoff_identity_gap",
                        "kirchhoff_closed_gap",
                        "passed",
                    ]
                    .map(String::from)
                    .to_vec();
                    let rows: Vec<Vec<f64>> = report
                        .points
                        .iter()
                        .map(|pt| {
                            vec![
                                pt.params.m as f64,
                                pt.params.d as f64,
                                pt.params.a,
                                pt.params.c,
                                pt.n as f64,
                                pt.axiom_residual,
                                pt.oracle_rel_frobenius,
                                pt.theorem_max_abs.unwrap_or(f64::NAN),
                                pt.resistance_oracle_max_abs,
                                pt.resistance_closed_max_abs.unwrap_or(f64::NAN),
                                pt.kirchhoff_identity_gap,
                                pt.kirchhoff_closed_gap.unwrap_or(f64::NAN),
                                if pt.passed { 1.0 } else { 0.0 },
                            ]
                        })
                        .collect();
                    csv_rows(out.header.then_some(header.as_slice()), rows.iter().map(Vec::as_slice))
                        .replace("null", "")
                }
            };
            emit(&out, &text)?;
            for line in report.diagnostics.iter().chain(&report.failures) {
                eprintln!("wheel-green: {line}");
            }
            for id in &report.unresolved {
                eprintln!("wheel-green: unresolved formula {id}");
            }
            return Ok(report.exit_code as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("wheel-green: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
