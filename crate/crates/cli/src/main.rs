use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use qcg::coulomb::ChamberPoint;
use qcg::correspondence::{f_anchor, f_hwv};
use qcg::uqsl2::{hwv_space_basis, TensorSpace};
use qcg_cli::config::{parse_list, parse_points, Format, Settings};
use qcg_cli::output::{write_rows, Row};
use qcg_cli::suites::{run_suite, SuiteSettings};
use qcg_cli::vector::parse_vector;

#[derive(Parser)]
#[command(name = "qcg", version, about = "Boundary correlation functions from quantum group vectors")]
struct Cli {
    /// `key = value` settings file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    kappa: Option<f64>,
    /// Comma-separated dimensions d_1,...,d_n.
    #[arg(long, global = true)]
    dims: Option<String>,
    /// basis:l1,..., hwv-pair:m, hwv:d:k, trivial:k or an explicit vector.
    #[arg(long, global = true)]
    vector: Option<String>,
    /// Points `x1,...,xn`, several separated by `;`.
    #[arg(long = "x", global = true)]
    x: Option<String>,
    /// Anchor point left of all x; without it the anchor integrals are dropped.
    #[arg(long, global = true, allow_hyphen_values = true)]
    x0: Option<f64>,
    #[arg(long, global = true)]
    quad_order: Option<usize>,
    #[arg(long, global = true)]
    max_subdiv: Option<usize>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Summand dimension for dump-basis.
    #[arg(long, global = true)]
    d: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F[v] at one or more points.
    Eval,
    /// Run a verification suite: qg, reduction, pde, cov, asy, infinity, cyclic or all.
    Verify { suite: String },
    /// Print a basis of the highest weight vectors of dimension d.
    DumpBasis,
}

impl Cli {
    fn settings(&self) -> Result<Settings, String> {
        let file = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                Settings::parse_file(&text).map_err(|e| format!("{}: {e}", p.display()))?
            }
            None => Settings::default(),
        };
        let flags = Settings {
            kappa: self.kappa,
            dims: self.dims.as_deref().map(|s| parse_list("dims", s)).transpose()?,
            vector: self.vector.clone(),
            points: self.x.as_deref().map(parse_points).transpose()?,
            x0: self.x0,
            quad_order: self.quad_order,
            max_subdiv: self.max_subdiv,
            rel_tol: self.rel_tol,
            seed: self.seed,
            out: self.out.clone(),
            format: self.format,
            d: self.d,
        };
        Ok(file.merge(flags))
    }
}

fn emit(s: &Settings, text: &str) -> Result<(), String> {
    match &s.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn eval(s: &Settings) -> Result<(), String> {
    let dims = s.dims()?.to_vec();
    let spec = s.vector.as_deref().ok_or("missing 'vector'")?;
    let v = parse_vector(spec, &dims)?;
    let points = s.points.clone().ok_or("missing 'x'")?;
    let (kappa, quad) = (s.kappa(), s.quad()?);
    let rows = points
        .par_iter()
        .map(|x| {
            let est = match s.x0 {
                Some(x0) => f_anchor(&v, &ChamberPoint::new(x0, x.clone())?, kappa, &quad)?,
                None => f_hwv(&v, x, kappa, &quad)?,
            };
            Ok(Row {
                kappa,
                dims: dims.clone(),
                vector: spec.to_string(),
                x0: s.x0,
                x: x.clone(),
                re: est.value.re,
                im: est.value.im,
                err_est: est.err,
            })
        })
        .collect::<qcg::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    emit(s, &write_rows(&rows, s.format())?)
}

fn verify(s: &Settings, suite: &str) -> Result<bool, String> {
    let settings = SuiteSettings { kappa: s.kappa(), quad: s.quad()?, seed: s.seed(), ..Default::default() };
    let report = run_suite(suite, &settings)?;
    let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    emit(s, &(text + "\n"))?;
    Ok(report.passed)
}

fn dump_basis(s: &Settings) -> Result<(), String> {
    let space = TensorSpace::new(s.dims()?.to_vec()).map_err(|e| e.to_string())?;
    let d = s.d.unwrap_or(1);
    let basis = hwv_space_basis(&space, d).map_err(|e| e.to_string())?;
    let text: String = basis.iter().map(|v| format!("{v}\n")).collect();
    emit(s, &text)
}

fn run(cli: &Cli) -> Result<bool, String> {
    let s = cli.settings()?;
    match &cli.command {
        Command::Eval => eval(&s).map(|_| true),
        Command::Verify { suite } => verify(&s, suite),
        Command::DumpBasis => dump_basis(&s).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
