use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::albright::coefficient_series;
use crate::bouncer::{integrate_against_density, BouncerState};
use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::quadrature::{integrate_oscillatory_with, integrate_panels, kernel_panels, Tolerance};
use crate::special_fn::erf_rotated;

const INV_2PI: f64 = 0.5 / PI;

/// How a coefficient was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    Numeric,
    Albright { order: u8 },
    ClosedForm,
    Classical,
}

impl Route {
    pub fn label(&self) -> String {
        match self {
            Route::Numeric => "numeric".into(),
            Route::Albright { order } => format!("albright{order}"),
            Route::ClosedForm => "closed".into(),
            Route::Classical => "classical".into(),
        }
    }
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "numeric" => Ok(Route::Numeric),
            "albright0" => Ok(Route::Albright { order: 0 }),
            "albright1" | "albright" => Ok(Route::Albright { order: 1 }),
            "closed" | "closed_form" => Ok(Route::ClosedForm),
            "classical" => Ok(Route::Classical),
            other => Err(Error::domain(format!(
                "unknown route '{other}' (expected numeric, albright0, albright1, closed, classical)"
            ))),
        }
    }
}

/// `(1/2pi) int rho(zeta) e^{-i q zeta} dzeta` at one momentum.
///
/// `q` is in units of `hbar / l_g`; `big_q = q h` uses the turning point of
/// the density's state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierCoefficient {
    pub q: f64,
    pub big_q: f64,
    pub value: Complex64,
    pub route: Route,
}

/// Oscillation budget for the numeric route: `|q| h` at most this.
pub const NUMERIC_QH_MAX: f64 = 1e3;
/// Absolute tolerance of the numeric route's integral.
pub const NUMERIC_TOL: f64 = 1e-12;

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("momentum q = {q} is not finite")))
    }
}

pub fn quantum_coefficient_numeric(state: &BouncerState, q: f64) -> Result<FourierCoefficient> {
    quantum_coefficient_numeric_with(state, q, NUMERIC_TOL, ExecPolicy::default())
}

/// The numeric route with an explicit tolerance and execution policy.
pub fn quantum_coefficient_numeric_with(
    state: &BouncerState,
    q: f64,
    tol: f64,
    policy: ExecPolicy,
) -> Result<FourierCoefficient> {
    check_q(q)?;
    let h = state.turning_point;
    if (q * h).abs() > NUMERIC_QH_MAX {
        return Err(Error::budget(
            "numeric coefficient (|q| h above oscillation budget)",
        ));
    }
    // cut kernel periods over the oscillatory region and a little beyond
    let breaks = kernel_panels(q, 0.0, h + 8.0)?;
    let r = integrate_against_density(
        state,
        |z: f64| Complex64::from_polar(1.0, -q * z),
        0,
        &breaks,
        Tolerance::absolute(tol),
        policy,
    )?;
    Ok(FourierCoefficient {
        q,
        big_q: q * h,
        value: r.value * INV_2PI,
        route: Route::Numeric,
    })
}

/// Series route through the moment recursion, truncated after `order`
/// passes (0 or 1).
pub fn quantum_coefficient_albright(
    state: &BouncerState,
    q: f64,
    order: u8,
) -> Result<FourierCoefficient> {
    check_q(q)?;
    if order > 1 {
        return Err(Error::domain(format!(
            "moment series order {order} not supported (0 or 1)"
        )));
    }
    let big_q = q * state.turning_point;
    let (s0, s1) = coefficient_series(big_q)?;
    let mut sum = s0;
    if order == 1 {
        sum += s1 / state.zero.value.powi(3);
    }
    Ok(FourierCoefficient {
        q,
        big_q,
        value: Complex64::from_polar(INV_2PI, -big_q) * sum,
        route: Route::Albright { order },
    })
}

/// `(1/2pi) e^{-i(Q - pi/4)} sqrt(pi) / (2 sqrt Q) erf(e^{-i pi/4} sqrt Q)`
/// as a function of `Q` alone; negative `Q` by conjugation.
pub fn leading_coefficient(big_q: f64) -> Result<Complex64> {
    check_q(big_q)?;
    if big_q == 0.0 {
        return Ok(Complex64::new(INV_2PI, 0.0));
    }
    let x = big_q.abs();
    let w = if x < 1e-8 {
        // erf(z)/z -> 2/sqrt(pi) makes the product 1 to first order
        Complex64::new(1.0, x / 3.0)
    } else {
        let e = erf_rotated(x)?;
        Complex64::from_polar(1.0, FRAC_PI_4) * e * (PI.sqrt() / (2.0 * x.sqrt()))
    };
    let v = Complex64::from_polar(INV_2PI, -x) * w;
    Ok(if big_q < 0.0 { v.conj() } else { v })
}

pub fn quantum_coefficient_closed(state: &BouncerState, q: f64) -> Result<FourierCoefficient> {
    check_q(q)?;
    let big_q = q * state.turning_point;
    Ok(FourierCoefficient {
        q,
        big_q,
        value: leading_coefficient(big_q)?,
        route: Route::ClosedForm,
    })
}

/// Absolute tolerance for the classical route.
pub const CLASSICAL_TOL: f64 = 1e-13;
/// Most chirp panels the classical route will cut.
const CLASSICAL_MAX_PANELS: f64 = 1e5;

/// Transform of the classical density `1/(2 sqrt(h (h - zeta)))`.
///
/// With `zeta = h (1 - u^2)` the inverse square root cancels and the
/// integral becomes `int_0^1 e^{-iQ(1-u^2)} du`, cut at the zeros of the
/// chirp phase `Q u^2 = k pi`.
pub fn classical_coefficient(h: f64, q: f64) -> Result<FourierCoefficient> {
    check_q(q)?;
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::domain(format!(
            "turning point must be positive, got {h}"
        )));
    }
    let big_q = q * h;
    let x = big_q.abs();
    let periods = x / PI;
    if periods > CLASSICAL_MAX_PANELS {
        return Err(Error::budget("classical coefficient (chirp panel budget)"));
    }
    let mut breaks = vec![0.0];
    let mut k = 1.0;
    while k < periods {
        breaks.push((k / periods).sqrt());
        k += 1.0;
    }
    breaks.push(1.0);
    let r = integrate_panels(
        |u: f64| Complex64::from_polar(1.0, -big_q * (1.0 - u * u)),
        &breaks,
        CLASSICAL_TOL,
        ExecPolicy::Sequential,
    )?;
    Ok(FourierCoefficient {
        q,
        big_q,
        value: r.value * INV_2PI,
        route: Route::Classical,
    })
}

/// Numeric coefficient of an arbitrary density supported on `[lo, hi]`.
pub fn density_coefficient<F>(density: F, lo: f64, hi: f64, q: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    check_q(q)?;
    let r = integrate_oscillatory_with(density, q, lo, hi, tol, ExecPolicy::Sequential)?;
    Ok(r.value * INV_2PI)
}

/// Coefficient of `state` by `route`.
pub fn coefficient_by_route(
    state: &BouncerState,
    q: f64,
    route: Route,
) -> Result<FourierCoefficient> {
    match route {
        Route::Numeric => quantum_coefficient_numeric(state, q),
        Route::Albright { order } => quantum_coefficient_albright(state, q, order),
        Route::ClosedForm => quantum_coefficient_closed(state, q),
        Route::Classical => classical_coefficient(state.turning_point, q),
    }
}
