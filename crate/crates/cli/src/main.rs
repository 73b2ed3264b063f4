mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rde_manifolds::manifolds::PrintedPolynomial;
use rde_manifolds::verify::{self, reproduce_paper_rows, RegressionRow};
use rde_manifolds::{
    iterate_trajectory, periodic_partner, spectrum_t, spectrum_t2, trace_curve, validate_params,
    CheckReport, Grid, ManifoldModel, ManifoldTarget, Params, State, Status, Summary,
};
use serde_json::{json, Value};

use crate::output::{g12, print_json, write_csv};

#[derive(Debug, Parser)]
#[command(
    name = "rdeman",
    version,
    about = "Invariant manifolds of x[n+1] = alpha + beta*x[n-1] + x[n-1]/x[n]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Equilibrium, eigenvalues and eigenvectors of T.
    Analyze {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        json: bool,
    },
    /// Cubic coefficients of the unstable or stable manifold.
    Coeffs {
        #[arg(long, value_enum)]
        kind: SaddleKind,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        json: bool,
    },
    /// Cubic coefficients of the invariant curve through a period-two point (alpha = 1).
    Center {
        #[arg(long, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Use the companion base point (psi, phi).
        #[arg(long)]
        swap: bool,
        #[arg(long)]
        json: bool,
    },
    /// Trace a curve as `x,y` CSV.
    Curve {
        #[arg(long, value_enum)]
        kind: CurveKind,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        phi: Option<f64>,
        #[arg(long)]
        swap: bool,
        #[arg(long, allow_negative_numbers = true)]
        xmin: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        xmax: Option<f64>,
        /// Half-width of the default range around the base point.
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate the recurrence and write `n,x` CSV starting at n = -1.
    Trajectory {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        y0: f64,
        #[arg(long, allow_negative_numbers = true)]
        z0: f64,
        #[arg(short = 'n', default_value_t = 100)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check; exits 1 if any fails.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GridArg::Coarse)]
        grid: GridArg,
    },
    /// Printed coefficients of the worked examples against recomputed ones.
    ReproducePaper {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SaddleKind {
    Unstable,
    Stable,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CurveKind {
    Unstable,
    Stable,
    Center,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridArg {
    Coarse,
    Fine,
}

/// Failed checks, as opposed to bad input.
struct ChecksFailed;

fn params(alpha: f64, beta: f64) -> Result<Params> {
    let p = validate_params(alpha, beta)?;
    if alpha == 0.0 {
        eprintln!(
            "warning: alpha = 0 lies outside alpha > 0; positivity of iterates is not guaranteed"
        );
    }
    Ok(p)
}

fn analyze(alpha: f64, beta: f64, as_json: bool) -> Result<()> {
    let s = spectrum_t(&params(alpha, beta)?);
    if as_json {
        return print_json(&json!({
            "alpha": alpha,
            "beta": beta,
            "fixed_point": s.x_bar,
            "theta": s.theta,
            "lambda1": s.lambda1,
            "lambda2": s.lambda2,
            "v1": s.v1,
            "v2": s.v2,
            "saddle": s.saddle,
        }));
    }
    println!("fixed point  {}", g12(s.x_bar));
    println!("theta        {}", g12(s.theta));
    println!("lambda1      {}", g12(s.lambda1));
    println!("lambda2      {}", g12(s.lambda2));
    println!("v1           ({}, {})", g12(s.v1[0]), g12(s.v1[1]));
    println!("v2           ({}, {})", g12(s.v2[0]), g12(s.v2[1]));
    println!("saddle       {}", s.saddle);
    Ok(())
}

fn printed_json(p: &PrintedPolynomial) -> Value {
    json!({
        "x_coeff": p.x_coeff,
        "constant": p.constant,
        "y_coeff": p.y_coeff,
        "quadratic": p.quadratic,
        "bracket_x": p.bracket_x,
        "bracket_constant": p.bracket_constant,
        "bracket_y": p.bracket_y,
        "cubic": p.cubic,
    })
}

fn signed(v: f64) -> String {
    if v.is_sign_negative() {
        format!("- {}", g12(-v))
    } else {
        format!("+ {}", g12(v))
    }
}

fn printed_text(p: &PrintedPolynomial) -> String {
    let bracket = format!(
        "({}x {} {}y)",
        g12(p.bracket_x),
        signed(p.bracket_constant),
        signed(p.bracket_y)
    );
    format!(
        "{}x {} {}y {}{bracket}^2 {}{bracket}^3",
        g12(p.x_coeff),
        signed(p.constant),
        signed(p.y_coeff),
        signed(p.quadratic),
        signed(p.cubic)
    )
}

fn coeffs(kind: SaddleKind, alpha: f64, beta: f64, as_json: bool) -> Result<()> {
    let p = params(alpha, beta)?;
    let target = match kind {
        SaddleKind::Unstable => ManifoldTarget::Unstable(p),
        SaddleKind::Stable => ManifoldTarget::Stable(p),
    };
    let m = target.build()?;
    let [g1, g2, g3] = m.linear_constants;
    let (k2, k3) = match kind {
        SaddleKind::Unstable => ("a2", "a3"),
        SaddleKind::Stable => ("b2", "b3"),
    };
    let printed = m.implicit().printed();
    if as_json {
        return print_json(&json!({
            "kind": m.kind.as_str(),
            "alpha": alpha,
            "beta": beta,
            "base": m.base,
            "gamma1": g1,
            "gamma2": g2,
            "gamma3": g3,
            k2: m.coeff2,
            k3: m.coeff3,
            "tangent_slope": m.tangent_slope,
            "printed": printed_json(&printed),
        }));
    }
    println!(
        "{} manifold, base ({}, {})",
        m.kind.as_str(),
        g12(m.base[0]),
        g12(m.base[1])
    );
    println!("gamma1         {}", g12(g1));
    println!("gamma2         {}", g12(g2));
    println!("gamma3         {}", g12(g3));
    println!("{k2}             {}", g12(m.coeff2));
    println!("{k3}             {}", g12(m.coeff3));
    let slope_label = match kind {
        SaddleKind::Unstable => "dy/dx",
        SaddleKind::Stable => "dx/dy",
    };
    println!("tangent slope  {} ({slope_label})", g12(m.tangent_slope));
    println!("{}", printed_text(&printed));
    Ok(())
}

fn center(phi: f64, beta: f64, swap: bool, as_json: bool) -> Result<()> {
    let pair = periodic_partner(phi, beta)?;
    let pair = if swap { pair.swapped() } else { pair };
    let m = ManifoldTarget::Center(pair).build()?;
    let spec = spectrum_t2(&pair);
    let [d1, d2, d3] = m.linear_constants;
    let printed = m.implicit().printed();
    if as_json {
        return print_json(&json!({
            "phi": pair.phi(),
            "psi": pair.psi(),
            "beta": beta,
            "lambda01": spec.lambda01,
            "delta1": d1,
            "delta2": d2,
            "delta3": d3,
            "c2": m.coeff2,
            "c3": m.coeff3,
            "tangent_slope": m.tangent_slope,
            "printed": printed_json(&printed),
        }));
    }
    println!(
        "base (phi, psi) = ({}, {})",
        g12(pair.phi()),
        g12(pair.psi())
    );
    println!("lambda01       {}", g12(spec.lambda01));
    println!("delta1         {}", g12(d1));
    println!("delta2         {}", g12(d2));
    println!("delta3         {}", g12(d3));
    println!("c2             {}", g12(m.coeff2));
    println!("c3             {}", g12(m.coeff3));
    println!("tangent slope  {} (dy/dx)", g12(m.tangent_slope));
    println!("{}", printed_text(&printed));
    Ok(())
}

struct CurveArgs {
    kind: CurveKind,
    alpha: Option<f64>,
    beta: f64,
    phi: Option<f64>,
    swap: bool,
    xmin: Option<f64>,
    xmax: Option<f64>,
    radius: f64,
    samples: usize,
    out: Option<PathBuf>,
}

fn curve_model(a: &CurveArgs) -> Result<ManifoldModel> {
    let target = match a.kind {
        CurveKind::Unstable | CurveKind::Stable => {
            let alpha = a.alpha.context("--alpha is required for saddle curves")?;
            let p = params(alpha, a.beta)?;
            if matches!(a.kind, CurveKind::Unstable) {
                ManifoldTarget::Unstable(p)
            } else {
                ManifoldTarget::Stable(p)
            }
        }
        CurveKind::Center => {
            let phi = a.phi.context("--phi is required for center curves")?;
            let pair = periodic_partner(phi, a.beta)?;
            ManifoldTarget::Center(if a.swap { pair.swapped() } else { pair })
        }
    };
    Ok(target.build()?)
}

fn curve(a: CurveArgs) -> Result<()> {
    if !(a.radius.is_finite() && a.radius > 0.0) {
        bail!("--radius must be positive, got {}", a.radius);
    }
    let m = curve_model(&a)?;
    let lo = a.xmin.unwrap_or(m.base[0] - a.radius);
    let hi = a.xmax.unwrap_or(m.base[0] + a.radius);
    let trace = trace_curve(&m, lo, hi, a.samples)?;
    if !trace.is_complete() {
        eprintln!(
            "warning: Newton failed at {} of {} abscissae, first at x = {}",
            trace.gaps.len(),
            a.samples,
            g12(trace.gaps[0])
        );
    }
    let rows: Vec<Vec<String>> = trace
        .points
        .iter()
        .map(|[x, y]| vec![g12(*x), g12(*y)])
        .collect();
    write_csv(a.out.as_deref(), &["x", "y"], &rows)
}

fn trajectory(
    alpha: f64,
    beta: f64,
    y0: f64,
    z0: f64,
    n: usize,
    out: Option<PathBuf>,
) -> Result<()> {
    let p = params(alpha, beta)?;
    let orbit = iterate_trajectory(&p, State::new(y0, z0)?, n)?;
    let mut rows = vec![vec!["-1".to_string(), g12(y0)]];
    rows.extend(
        orbit
            .iter()
            .enumerate()
            .map(|(k, s)| vec![k.to_string(), g12(s.z)]),
    );
    write_csv(out.as_deref(), &["n", "x"], &rows)
}

fn report_line(r: &CheckReport) -> String {
    format!(
        "{:<7} {}  observed {} expected {} tol {}  {}",
        r.status.to_string(),
        r.name,
        g12(r.observed),
        g12(r.expected),
        g12(r.tolerance),
        r.detail
    )
}

fn run_verify(seed: u64, grid: GridArg) -> std::result::Result<(), ChecksFailed> {
    let grid = match grid {
        GridArg::Coarse => Grid::Coarse,
        GridArg::Fine => Grid::Fine,
    };
    let reports = rde_manifolds::run_suite(grid, seed);
    for r in &reports {
        println!("{}", report_line(r));
    }
    let summary = Summary::of(&reports);
    println!("{summary}");
    if summary.fail > 0 {
        Err(ChecksFailed)
    } else {
        Ok(())
    }
}

fn row_json(r: &RegressionRow) -> Value {
    json!({
        "case": r.case,
        "quantity": r.quantity,
        "paper_value": r.paper_value,
        "computed": r.computed,
        "abs_diff": r.abs_diff,
        "status": r.status,
    })
}

fn reproduce(as_json: bool) -> Result<std::result::Result<(), ChecksFailed>> {
    let rows = reproduce_paper_rows();
    let summary = Summary::of(
        &rows
            .iter()
            .map(RegressionRow::to_report)
            .collect::<Vec<_>>(),
    );
    if as_json {
        print_json(&json!({
            "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
            "summary": summary,
        }))?;
    } else {
        let width = rows.iter().map(|r| r.case.len()).max().unwrap_or(4);
        println!(
            "{:<width$}  {:<9}  {:>16}  {:>16}  {:>10}  status",
            "case", "quantity", "paper_value", "computed", "abs_diff"
        );
        for r in &rows {
            println!(
                "{:<width$}  {:<9}  {:>16}  {:>16}  {:>10.3e}  {}",
                r.case,
                r.quantity,
                g12(r.paper_value),
                g12(r.computed),
                r.abs_diff,
                r.status
            );
        }
        println!("{summary}");
    }
    Ok(if rows.iter().any(|r| r.status == Status::Fail) {
        Err(ChecksFailed)
    } else {
        Ok(())
    })
}

fn run(cli: Cli) -> Result<std::result::Result<(), ChecksFailed>> {
    match cli.command {
        Command::Analyze { alpha, beta, json } => analyze(alpha, beta, json)?,
        Command::Coeffs {
            kind,
            alpha,
            beta,
            json,
        } => coeffs(kind, alpha, beta, json)?,
        Command::Center {
            phi,
            beta,
            swap,
            json,
        } => center(phi, beta, swap, json)?,
        Command::Curve {
            kind,
            alpha,
            beta,
            phi,
            swap,
            xmin,
            xmax,
            radius,
            samples,
            out,
        } => curve(CurveArgs {
            kind,
            alpha,
            beta,
            phi,
            swap,
            xmin,
            xmax,
            radius,
            samples,
            out,
        })?,
        Command::Trajectory {
            alpha,
            beta,
            y0,
            z0,
            n,
            out,
        } => trajectory(alpha, beta, y0, z0, n, out)?,
        Command::Verify { seed, grid } => return Ok(run_verify(seed, grid)),
        Command::ReproducePaper { json } => return reproduce(json),
    }
    Ok(Ok(()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(ChecksFailed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
