use serde::{Deserialize, Serialize};

use super::average::{local_average, WindowPolicy};
use super::coefficient::{
    classical_coefficient, quantum_coefficient_closed, quantum_coefficient_numeric_with,
    NUMERIC_TOL,
};
use crate::bouncer::{classical_density_at, make_state, BouncerState};
use crate::error::{Error, Result};
use crate::exec::{self, ExecPolicy};

/// Per-state comparison of the quantum and classical pictures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub n: usize,
    pub a_n: f64,
    pub epsilon_policy: String,
    pub interior_fraction: f64,
    /// `int |<rho_qm>_eps - rho_cl| / int rho_cl` over the interior.
    pub l1_error: f64,
    /// Largest `|numeric - classical|` over the momentum grid.
    pub coefficient_deviation: f64,
    /// `|numeric - closed form|` at the fixed `Q`.
    pub fixed_q_deviation: f64,
    /// Log-log slope of `fixed_q_deviation` against `|a_n|` across the study.
    pub fitted_exponent: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StudyOptions {
    pub window: WindowPolicy,
    /// Values of `Q = q h` for the coefficient deviation.
    pub q_grid: Vec<f64>,
    pub fixed_q: f64,
    /// Absolute tolerance of the numeric coefficient.
    pub tol: f64,
    pub policy: ExecPolicy,
}

impl Default for StudyOptions {
    fn default() -> Self {
        Self {
            window: WindowPolicy::default(),
            q_grid: (0..=12).map(|i| 2.5 * f64::from(i)).collect(),
            fixed_q: 5.0,
            tol: NUMERIC_TOL,
            policy: ExecPolicy::default(),
        }
    }
}

/// Relative L1 distance between the locally averaged quantum density and
/// the classical density over the policy's interior region.
pub fn l1_error(state: &BouncerState, window: &WindowPolicy, policy: ExecPolicy) -> Result<f64> {
    window.validate()?;
    let h = state.turning_point;
    let (lo, hi) = (window.interior.0 * h, window.interior.1 * h);
    let m = window.samples;
    let zs: Vec<f64> = (0..m)
        .map(|j| lo + (hi - lo) * j as f64 / (m - 1) as f64)
        .collect();
    let pairs = exec::try_map(policy, &zs, |&z| {
        let avg = local_average(state, z, window.epsilon(h, z))?;
        let cl = classical_density_at(h, z)?;
        Ok::<_, Error>(((avg - cl).abs(), cl))
    })?;
    let trap = |f: &dyn Fn(usize) -> f64| -> f64 {
        (1..m)
            .map(|j| 0.5 * (zs[j] - zs[j - 1]) * (f(j) + f(j - 1)))
            .sum()
    };
    let diff = trap(&|j| pairs[j].0);
    let norm = trap(&|j| pairs[j].1);
    Ok(diff / norm)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::domain(
            "power-law fit needs at least two paired points",
        ));
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::domain("power-law fit needs positive finite data"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("power-law fit needs distinct abscissae"));
    }
    Ok(sxy / sxx)
}

pub fn convergence_study(
    n_list: &[usize],
    window: &WindowPolicy,
) -> Result<Vec<ConvergenceReport>> {
    convergence_study_with(
        n_list,
        &StudyOptions {
            window: *window,
            ..StudyOptions::default()
        },
    )
}

pub fn convergence_study_with(
    n_list: &[usize],
    opts: &StudyOptions,
) -> Result<Vec<ConvergenceReport>> {
    if n_list.len() < 2 {
        return Err(Error::domain("convergence study needs at least two states"));
    }
    opts.window.validate()?;
    let mut reports = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let state = make_state(n)?;
        let h = state.turning_point;
        let l1 = l1_error(&state, &opts.window, opts.policy)?;
        let devs = exec::try_map(opts.policy, &opts.q_grid, |&big_q| {
            let q = big_q / h;
            let num =
                quantum_coefficient_numeric_with(&state, q, opts.tol, ExecPolicy::Sequential)?;
            let cl = classical_coefficient(h, q)?;
            Ok::<_, Error>((num.value - cl.value).norm())
        })?;
        let q = opts.fixed_q / h;
        let num = quantum_coefficient_numeric_with(&state, q, opts.tol, opts.policy)?;
        let closed = quantum_coefficient_closed(&state, q)?;
        reports.push(ConvergenceReport {
            n,
            a_n: state.zero.value,
            epsilon_policy: opts.window.describe(),
            interior_fraction: opts.window.interior_fraction(),
            l1_error: l1,
            coefficient_deviation: devs.into_iter().fold(0.0, f64::max),
            fixed_q_deviation: (num.value - closed.value).norm(),
            fitted_exponent: f64::NAN,
        });
    }
    let xs: Vec<f64> = reports.iter().map(|r| r.a_n.abs()).collect();
    let ys: Vec<f64> = reports.iter().map(|r| r.fixed_q_deviation).collect();
    let slope = fit_power_law(&xs, &ys)?;
    for r in &mut reports {
        r.fitted_exponent = slope;
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_law_fit() {
        let xs = [2.0, 4.0, 8.0, 16.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-2.5)).collect();
        assert!((fit_power_law(&xs, &ys).unwrap() + 2.5).abs() < 1e-12);
        assert!(fit_power_law(&[1.0], &[1.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0], &[1.0, 0.0]).is_err());
        assert!(fit_power_law(&[2.0, 2.0], &[1.0, 3.0]).is_err());
    }

    #[test]
    fn small_study_shape() {
        let opts = StudyOptions {
            window: WindowPolicy {
                samples: 60,
                ..WindowPolicy::default()
            },
            q_grid: vec![0.0, 5.0],
            ..StudyOptions::default()
        };
        let reports = convergence_study_with(&[5, 10], &opts).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports
            .iter()
            .all(|r| r.l1_error >= 0.0 && r.interior_fraction > 0.0));
        assert!(reports[1].fixed_q_deviation < reports[0].fixed_q_deviation);
        assert!(reports[0].fitted_exponent.is_finite());
        assert!(convergence_study(&[5], &WindowPolicy::default()).is_err());
    }
}
