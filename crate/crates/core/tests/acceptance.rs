//! One test per exit criterion. Each prints a single `PASS` or `FAIL` line;
//! run with `cargo test -p rde-manifolds --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rde_manifolds::verify::{
    self, conjugacy_check, global_dynamics_check, oracle_equivalence_check, reproduce_paper_rows,
    residual_order_check, trajectory_distance_check, CheckReport, Grid, NormalFormTarget,
    RegressionRow, Status,
};
use rde_manifolds::{periodic_partner, ManifoldTarget, Params};

const SEED: u64 = 42;
const REL_TOL: f64 = 1e-7;
const ORACLE_TOL: f64 = 1e-9;
const RATIO_BOUND: f64 = 4.0;
const CONJUGACY_TOL: f64 = 1e-11;
const CONJUGACY_SAMPLES: usize = 100;
const CONVERGENCE_TOL: f64 = 1e-8;
const PARTNER_TOL: f64 = 1e-6;
const GROWTH: f64 = 10.0;
const BAND: f64 = 1e-3;
const FOLLOW_STEPS: usize = 50;

fn report(criterion: u32, title: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion} [{verdict}] {title}: {detail}");
}

fn failures(reports: &[CheckReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| format!("{} observed {:.6e} ({})", r.name, r.observed, r.detail))
        .collect()
}

fn rows_for(prefixes: &[&str]) -> Vec<RegressionRow> {
    reproduce_paper_rows()
        .into_iter()
        .filter(|r| prefixes.iter().any(|p| r.case.starts_with(p)))
        .collect()
}

fn regression(criterion: u32, title: &str, rows: &[RegressionRow], expected_rows: usize) {
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.abs_diff > REL_TOL * r.paper_value.abs() || r.status != Status::Pass)
        .map(|r| {
            format!(
                "{} {}: {} vs {}",
                r.case, r.quantity, r.computed, r.paper_value
            )
        })
        .collect();
    let ok = bad.is_empty() && rows.len() == expected_rows;
    let worst = rows
        .iter()
        .map(|r| r.abs_diff / r.paper_value.abs())
        .fold(0.0, f64::max);
    report(
        criterion,
        title,
        ok,
        &format!("{} values, worst relative error {worst:.2e}", rows.len()),
    );
    assert!(ok, "{bad:#?}");
}

#[test]
fn tolerances_are_pinned() {
    assert_eq!(verify::PRINTED_REL_TOL, REL_TOL);
    assert_eq!(verify::ORACLE_TOL, ORACLE_TOL);
    assert_eq!(verify::RESIDUAL_RATIO_BOUND, RATIO_BOUND);
    assert_eq!(verify::RESIDUAL_SAMPLES, [0.1, 0.05, 0.025, 0.0125]);
    assert_eq!(verify::CONJUGACY_TOL, CONJUGACY_TOL);
    assert_eq!(verify::CONVERGENCE_TOL, CONVERGENCE_TOL);
    assert_eq!(verify::CONVERGENCE_STEPS, 2000);
    assert_eq!(verify::CONVERGENCE_STARTS, 10);
    assert_eq!(verify::PARTNER_TOL, PARTNER_TOL);
    assert_eq!(verify::REPULSION_KICK, 1e-4);
    assert_eq!(verify::REPULSION_STEPS, 30);
    assert_eq!(verify::REPULSION_GROWTH, GROWTH);
    assert_eq!(verify::TRAJECTORY_OFFSET, 1e-2);
    assert_eq!(verify::TRAJECTORY_BAND, BAND);
}

#[test]
fn criterion_1_saddle_regression() {
    let start = Instant::now();
    let rows = rows_for(&["U1 ", "S1 ", "U2 ", "S2 "]);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    regression(1, "saddle polynomials at beta = 0", &rows, 16);
}

#[test]
fn criterion_2_center_regression_beta_zero() {
    let mut rows = rows_for(&["C1 ", "C2 "]);
    rows.extend(
        rows_for(&["partner"])
            .into_iter()
            .filter(|r| r.case.contains("beta=0)")),
    );
    regression(2, "center polynomials at beta = 0", &rows, 18);
}

#[test]
fn criterion_3_center_regression_beta_half() {
    let mut rows = rows_for(&["C3 ", "C4 "]);
    rows.extend(
        rows_for(&["partner"])
            .into_iter()
            .filter(|r| r.case.contains("beta=0.5)")),
    );
    regression(3, "center polynomials at beta = 0.5", &rows, 18);
}

#[test]
fn criterion_4_erratum_handling() {
    let rows = rows_for(&["U3 ", "S3 ", "U4 ", "S4 "]);
    let all_erratum = rows.len() == 16 && rows.iter().all(|r| r.status == Status::Erratum);
    let gamma = rows
        .iter()
        .find(|r| r.case.starts_with("U3 ") && r.quantity == "x_coeff")
        .expect("U3 row");
    let theta = 22.12_f64.sqrt();
    let gamma_ok = (gamma.computed - (-(1.0 + 0.5 * 2.4) / theta)).abs() < 1e-12
        && gamma.paper_value == -0.4152273992;

    let mut checks = Vec::new();
    for (a, b) in [(0.2, 0.5), (0.8, 0.5)] {
        let p = Params::new(a, b).unwrap();
        for t in [ManifoldTarget::Unstable(p), ManifoldTarget::Stable(p)] {
            checks.push(oracle_equivalence_check(&t));
            checks.push(residual_order_check(&t));
        }
    }
    let bad = failures(&checks);
    let ok = all_erratum && gamma_ok && bad.is_empty();
    report(
        4,
        "beta = 0.5 saddle polynomials flagged, recomputed ones verified",
        ok,
        &format!(
            "{} ERRATUM rows, printed {} vs computed {:.6}",
            rows.len(),
            gamma.paper_value,
            gamma.computed
        ),
    );
    assert!(ok, "{bad:#?}");
}

fn grid_targets() -> Vec<ManifoldTarget> {
    let mut targets = Vec::new();
    for i in 1..=9 {
        for beta in [0.0, 0.25, 0.5, 0.75] {
            let p = Params::new(i as f64 / 10.0, beta).unwrap();
            targets.push(ManifoldTarget::Unstable(p));
            targets.push(ManifoldTarget::Stable(p));
        }
    }
    for beta in [0.0, 0.5] {
        for phi in [1.5, 2.3, 2.94, 5.0] {
            // phi = 1.5 is not above 1/(1 - beta) when beta = 0.5
            if let Ok(pair) = periodic_partner(phi, beta) {
                targets.push(ManifoldTarget::Center(pair));
                targets.push(ManifoldTarget::Center(pair.swapped()));
            }
        }
    }
    targets
}

#[test]
fn criterion_5_oracle_equivalence() {
    let start = Instant::now();
    let targets = grid_targets();
    assert_eq!(targets, Grid::Coarse.targets());
    let reports: Vec<CheckReport> = targets.iter().map(oracle_equivalence_check).collect();
    let elapsed = start.elapsed();
    let worst = reports.iter().map(|r| r.observed).fold(0.0, f64::max);
    let bad = failures(&reports);
    let ok = bad.is_empty() && elapsed < Duration::from_secs(10);
    report(
        5,
        "closed form against series solver",
        ok,
        &format!(
            "{} grid points, worst {worst:.2e} (tol {ORACLE_TOL:e}), {elapsed:.2?}",
            reports.len()
        ),
    );
    assert!(ok, "{bad:#?}");
}

#[test]
fn criterion_6_residual_order() {
    let reports: Vec<CheckReport> = grid_targets().iter().map(residual_order_check).collect();
    let bad = failures(&reports);
    let worst = reports.iter().map(|r| r.observed).fold(0.0, f64::max);
    report(
        6,
        "fourth-order invariance residual",
        bad.is_empty(),
        &format!(
            "{} of {} grid points within factor {RATIO_BOUND}, worst spread {worst:.3}",
            reports.len() - bad.len(),
            reports.len()
        ),
    );
    for line in &bad {
        println!("    {line}");
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn criterion_7_conjugacy() {
    let mut targets: Vec<NormalFormTarget> = Grid::Coarse
        .saddle_points()
        .into_iter()
        .map(NormalFormTarget::T)
        .collect();
    targets.extend(
        Grid::Coarse
            .center_pairs()
            .into_iter()
            .map(NormalFormTarget::T2),
    );
    let reports: Vec<CheckReport> = targets
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED + i as u64);
            conjugacy_check(t, CONJUGACY_SAMPLES, &mut rng)
        })
        .collect();
    let worst = reports.iter().map(|r| r.observed).fold(0.0, f64::max);
    let bad = failures(&reports);
    let ok = bad.is_empty() && worst < CONJUGACY_TOL;
    report(
        7,
        "normal-form conjugacy for T and T^2",
        ok,
        &format!("{} grid points, worst {worst:.2e}", reports.len()),
    );
    assert!(ok, "{bad:#?}");
}

#[test]
fn criterion_8_global_dynamics() {
    let converge = global_dynamics_check(&Params::new(2.0, 0.0).unwrap(), SEED);
    let period_two = global_dynamics_check(&Params::new(1.0, 0.0).unwrap(), SEED);
    let repel = global_dynamics_check(&Params::new(0.2, 0.0).unwrap(), SEED);
    let ok = converge.passed()
        && converge.observed <= CONVERGENCE_TOL
        && period_two.passed()
        && period_two.observed <= PARTNER_TOL
        && repel.passed()
        && repel.observed >= GROWTH;
    report(
        8,
        "long-run behaviour by regime",
        ok,
        &format!(
            "alpha=2 distance {:.2e}, alpha=1 partner error {:.2e}, alpha=0.2 growth x{:.1}",
            converge.observed, period_two.observed, repel.observed
        ),
    );
    assert!(ok, "{converge:#?}\n{period_two:#?}\n{repel:#?}");
}

#[test]
fn criterion_9_trajectory_follows_center_curve() {
    let pair = periodic_partner(2.94, 0.0).unwrap();
    let r = trajectory_distance_check(&pair, FOLLOW_STEPS);
    let ok = r.passed() && r.observed <= BAND;
    report(
        9,
        "trajectory near the center curve",
        ok,
        &format!(
            "max vertical distance {:.2e} over {FOLLOW_STEPS} T^2-steps",
            r.observed
        ),
    );
    assert!(ok, "{r:#?}");
}
