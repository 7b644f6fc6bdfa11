//! Moments `I_k = int_{a_n}^inf x^k Ai(x)^2 dx` and the power series they
//! generate for the Fourier coefficient.
//!
//! Integrating by parts against the Airy equation gives
//!
//! ```text
//! I_k = a^k Ai'(a)^2 / (2k+1) + k(k-1)(k-2) / (2(2k+1)) I_{k-3}
//! ```
//!
//! at a zero `a` of `Ai`, so each pass through the recursion costs a factor
//! `a^{-3}` relative to the leading term.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bouncer::BouncerState;
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlbrightMoment {
    pub n: usize,
    pub k: u32,
    pub value: f64,
}

pub fn albright_moment(state: &BouncerState, k: u32) -> AlbrightMoment {
    let a = state.zero.value;
    let base = state.norm_squared();
    let mut table: Vec<f64> = Vec::with_capacity(k as usize + 1);
    for j in 0..=k {
        let jf = f64::from(j);
        let mut v = a.powi(j as i32) * base / (2.0 * jf + 1.0);
        if j >= 3 {
            v += jf * (jf - 1.0) * (jf - 2.0) / (2.0 * (2.0 * jf + 1.0)) * table[j as usize - 3];
        }
        table.push(v);
    }
    AlbrightMoment {
        n: state.n,
        k,
        value: table[k as usize],
    }
}

/// Largest `|Q|` the series route accepts. Beyond it the largest term,
/// about `e^|Q|`, eats the double-double headroom.
pub const SERIES_Q_MAX: f64 = 40.0;
const SERIES_CUTOFF: f64 = 1e-20;
const SERIES_MAX_TERMS: u32 = 10_000;

/// Partial sums `S0 = sum (iQ)^k / (k! (2k+1))` and
/// `S1 = sum (iQ)^k / k! * k(k-1)(k-2) / (2(2k+1)(2k-5))`.
///
/// Both are summed in double-double; the terms reach `e^Q` while the sums
/// stay of order one. Summation stops past the peak once a term, weighted by
/// its largest coefficient, drops below `1e-20`.
pub(crate) fn coefficient_series(big_q: f64) -> Result<(Complex64, Complex64)> {
    if !big_q.is_finite() {
        return Err(Error::domain(format!(
            "series argument Q = {big_q} is not finite"
        )));
    }
    if big_q.abs() > SERIES_Q_MAX {
        return Err(Error::budget(
            "moment series (|Q| above double-double headroom)",
        ));
    }
    let x = big_q.abs();
    // [re, im] accumulators for S0 and S1
    let mut s0 = [DoubleDouble::ZERO; 2];
    let mut s1 = [DoubleDouble::ZERO; 2];
    let mut mag = DoubleDouble::ONE;
    for k in 0..SERIES_MAX_TERMS {
        let kf = f64::from(k);
        if k > 0 {
            mag = mag.mul_f64(x).div_f64(kf);
        }
        let c0 = mag.div_f64(2.0 * kf + 1.0);
        let c1 = if k >= 3 {
            mag.mul_f64(kf * (kf - 1.0) * (kf - 2.0))
                .div_f64(2.0 * (2.0 * kf + 1.0) * (2.0 * kf - 5.0))
        } else {
            DoubleDouble::ZERO
        };
        let (slot, negative) = match k % 4 {
            0 => (0, false),
            1 => (1, false),
            2 => (0, true),
            _ => (1, true),
        };
        if negative {
            s0[slot] = s0[slot] - c0;
            s1[slot] = s1[slot] - c1;
        } else {
            s0[slot] += c0;
            s1[slot] += c1;
        }
        if kf > x && mag.to_f64() * (1.0 + kf) < SERIES_CUTOFF {
            let sign = if big_q < 0.0 { -1.0 } else { 1.0 };
            let s0 = Complex64::new(s0[0].to_f64(), sign * s0[1].to_f64());
            let s1 = Complex64::new(s1[0].to_f64(), sign * s1[1].to_f64());
            return Ok((s0, s1));
        }
    }
    Err(Error::NoConvergence {
        context: "moment series",
        iterations: SERIES_MAX_TERMS as usize,
    })
}
