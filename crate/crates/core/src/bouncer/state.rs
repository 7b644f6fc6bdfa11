use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::quadrature::{
    integrate_panels, integrate_semi_infinite, IntegrationResult, QuadValue, Tolerance,
};
use crate::special_fn::{ai_squared_tail_bound, airy, airy_ai, airy_zero, AiryZero};

/// Highest power of `zeta` accepted by [`moment_z_quantum`].
pub const MAX_Z_MOMENT: u32 = 12;
/// Highest `k` accepted by [`moment_p_even_quantum`].
pub const MAX_P_MOMENT: u32 = 6;

/// Default absolute tolerance for integrals of the normalised density.
pub const STATE_TOL: f64 = 1e-12;

/// Energy eigenstate `n` in dimensionless units.
///
/// `turning_point` is `h_n / l_g` and `energy` is `E_n / (m g l_g)`; both
/// equal `-a_n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BouncerState {
    pub n: usize,
    pub zero: AiryZero,
    pub turning_point: f64,
    pub energy: f64,
}

impl BouncerState {
    pub fn new(n: usize) -> Result<Self> {
        let zero = airy_zero(n)?;
        Ok(Self {
            n,
            zero,
            turning_point: -zero.value,
            energy: -zero.value,
        })
    }

    /// `Ai'(a_n)^2`, the normalisation of `Ai(a_n + zeta)^2`.
    pub fn norm_squared(&self) -> f64 {
        self.zero.ai_prime_at_zero * self.zero.ai_prime_at_zero
    }

    /// Nodes of the wavefunction: `0` and the interior zeros
    /// `a_m - a_n` for `m = n-1, ..., 1`, ascending.
    pub fn nodes(&self) -> Result<Vec<f64>> {
        let mut nodes = Vec::with_capacity(self.n);
        nodes.push(0.0);
        for m in (1..self.n).rev() {
            nodes.push(airy_zero(m)?.value - self.zero.value);
        }
        Ok(nodes)
    }
}

pub fn make_state(n: usize) -> Result<BouncerState> {
    BouncerState::new(n)
}

/// `psi_n(zeta) = Ai(a_n + zeta) / Ai'(a_n)`, in units of `l_g^{-1/2}`.
pub fn wavefunction(state: &BouncerState, zeta: f64) -> Result<f64> {
    if zeta.is_nan() || zeta < 0.0 {
        return Err(Error::domain(format!(
            "wavefunction: zeta = {zeta} is inside the wall"
        )));
    }
    Ok(airy_ai(state.zero.value + zeta)? / state.zero.ai_prime_at_zero)
}

/// `|psi_n(zeta)|^2` without the domain check, for quadrature kernels.
pub(crate) fn density_unchecked(state: &BouncerState, zeta: f64) -> f64 {
    match airy(state.zero.value + zeta) {
        Ok(p) => p.ai * p.ai / state.norm_squared(),
        Err(_) => f64::NAN,
    }
}

/// `int_0^inf weight(zeta) |psi_n(zeta)|^2 dzeta`.
///
/// `weight_power` must satisfy `|weight(zeta)| <= max(1, zeta)^weight_power`
/// beyond the turning point; it sizes the tail cut. Panels run between the
/// nodes of `psi_n` (plus any `extra_breaks`) and then in unit steps past the
/// turning point until the tail bound is met.
pub fn integrate_against_density<T, W>(
    state: &BouncerState,
    weight: W,
    weight_power: u32,
    extra_breaks: &[f64],
    tol: impl Into<Tolerance>,
    policy: ExecPolicy,
) -> Result<IntegrationResult<T>>
where
    T: QuadValue,
    W: Fn(f64) -> T + Sync + Send,
{
    let tol = tol.into();
    let h = state.turning_point;
    let a2 = state.norm_squared();
    let tail = |x: f64| {
        // |w| <= 1 + zeta^k <= 1 + 2^k (h^k + x^k) with zeta = h + x
        let k = weight_power;
        let two_k = 2f64.powi(k as i32);
        (ai_squared_tail_bound(x, 0) * (1.0 + two_k * h.powi(k as i32))
            + two_k * ai_squared_tail_bound(x, k))
            / a2
    };
    let mut past = 1.0;
    loop {
        let t = tail(past);
        if t.is_finite() && t <= 0.05 * tol.abs.max(f64::MIN_POSITIVE) {
            break;
        }
        if past > 1e3 {
            return Err(Error::Accuracy {
                context: "density integral tail cut",
                estimate: num_complex::Complex64::new(f64::NAN, 0.0),
                error_estimate: t,
                evaluations: 0,
            });
        }
        past += 1.0;
    }

    let mut breaks = state.nodes()?;
    breaks.push(h);
    let mut x = 1.0;
    while x <= past {
        breaks.push(h + x);
        x += 1.0;
    }
    breaks.extend(
        extra_breaks
            .iter()
            .copied()
            .filter(|&b| b > 0.0 && b < h + past),
    );
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|p, q| (*p - *q).abs() < 1e-9);

    let mut result = integrate_panels(
        |z| weight(z) * density_unchecked(state, z),
        &breaks,
        tol.scaled(0.9),
        policy,
    )?;
    result.error_estimate += tail(past);
    Ok(result)
}

/// Probability of finding the particle above the classical turning point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailProbability {
    pub n: usize,
    /// `[Ai'(0) / Ai'(a_n)]^2`
    pub closed_form: f64,
    /// `int_{h_n}^inf |psi_n|^2` by quadrature.
    pub quadrature: f64,
    pub quadrature_error: f64,
}

/// Agreement demanded between the two tail-probability routes.
pub const TAIL_AGREEMENT: f64 = 1e-8;

pub fn tail_probability(state: &BouncerState) -> Result<TailProbability> {
    let aip0 = airy(0.0)?.ai_prime;
    let closed_form = (aip0 / state.zero.ai_prime_at_zero).powi(2);
    let a2 = state.norm_squared();
    let q = integrate_semi_infinite(
        |x: f64| airy_ai(x).map_or(f64::NAN, |v| v * v) / a2,
        0.0,
        1e-13,
        |x| ai_squared_tail_bound(x, 0) / a2,
    )?;
    if (q.value - closed_form).abs() > TAIL_AGREEMENT {
        return Err(Error::OracleMismatch {
            context: "tail probability",
            primary: closed_form,
            oracle: q.value,
            tolerance: TAIL_AGREEMENT,
        });
    }
    Ok(TailProbability {
        n: state.n,
        closed_form,
        quadrature: q.value,
        quadrature_error: q.error_estimate,
    })
}

/// `<zeta^k>` in the quantum state, by quadrature.
pub fn moment_z_quantum(state: &BouncerState, k: u32) -> Result<f64> {
    if k > MAX_Z_MOMENT {
        return Err(Error::budget("position moment (power above budget)"));
    }
    let scale = state.turning_point.max(1.0).powi(k as i32);
    let r = integrate_against_density(
        state,
        |z: f64| z.powi(k as i32),
        k,
        &[],
        Tolerance::absolute(STATE_TOL * scale),
        ExecPolicy::default(),
    )?;
    Ok(r.value)
}

/// `<zeta^k>` for the classical density on `[0, h)`:
/// `h^k k! sqrt(pi) / (2 Gamma(k + 3/2)) = h^k (2k)!! / (2k+1)!!`.
pub fn moment_z_classical(h: f64, k: u32) -> f64 {
    let ratio: f64 = (1..=k)
        .map(|j| 2.0 * f64::from(j) / (2.0 * f64::from(j) + 1.0))
        .product();
    h.powi(k as i32) * ratio
}

/// `<p^{2k}>` in units of `(hbar / l_g)^{2k}`.
///
/// With `p^2 = 2m (H - m g z)` and these units, `p^2 = E - zeta`, so the
/// moment is `int (E - zeta)^k |psi|^2`.
pub fn moment_p_even_quantum(state: &BouncerState, k: u32) -> Result<f64> {
    if k > MAX_P_MOMENT {
        return Err(Error::budget("momentum moment (power above budget)"));
    }
    let e = state.energy;
    let scale = e.max(1.0).powi(k as i32);
    let r = integrate_against_density(
        state,
        |z: f64| (e - z).powi(k as i32),
        k,
        &[],
        Tolerance::absolute(STATE_TOL * scale),
        ExecPolicy::default(),
    )?;
    Ok(r.value)
}

/// Odd momentum moments vanish by parity.
pub fn moment_p_odd_quantum(_state: &BouncerState, _k: u32) -> f64 {
    0.0
}

/// Classical `<p^{2k}>` in the same units: `h^k / (2k + 1)`.
pub fn moment_p_even_classical(h: f64, k: u32) -> f64 {
    h.powi(k as i32) / (2.0 * f64::from(k) + 1.0)
}
