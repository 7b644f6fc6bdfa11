//! Airy function Ai and its derivative on the real line.
//!
//! Two regimes:
//!
//! * `SERIES_MIN <= x <= SERIES_MAX`: the Maclaurin series
//!   `Ai = c1 f(x) - c2 g(x)`, summed in double-double arithmetic. The
//!   partial sums of `f` and `g` grow like `Bi(x)` while `Ai` stays small, so
//!   the extra 16 digits absorb the cancellation over the whole window.
//! * outside that window: the Poincaré asymptotic expansions, truncated at
//!   the smallest term. The oscillatory phase `(2/3)|x|^{3/2} - pi/4` is
//!   formed and reduced modulo `2 pi` in double-double, so the phase error
//!   stays near one ulp even for `x` in the thousands.

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

const AI0: DoubleDouble = DoubleDouble::new(0.3550280538878172, 2.05233632436212e-17);
/// `-Ai'(0)`.
const NEG_AIP0: DoubleDouble = DoubleDouble::new(0.2588194037928068, -2.522243111610832e-17);
const TWO_PI: DoubleDouble = DoubleDouble::new(std::f64::consts::TAU, 2.4492935982947064e-16);
const QUARTER_PI: DoubleDouble =
    DoubleDouble::new(std::f64::consts::FRAC_PI_4, 3.061616997868383e-17);

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Lower edge of the series window.
pub(crate) const SERIES_MIN: f64 = -9.5;
/// Upper edge of the series window.
pub(crate) const SERIES_MAX: f64 = 8.5;

/// Arguments more negative than this lose the oscillation phase entirely.
const MOST_NEGATIVE: f64 = -1.0e10;

/// `Ai(x)` together with `Ai'(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub ai_prime: f64,
}

/// Evaluates `Ai(x)` and `Ai'(x)`.
pub fn airy(x: f64) -> Result<AiryPair> {
    if !x.is_finite() {
        return Err(Error::domain(format!("airy: non-finite argument {x}")));
    }
    if x < MOST_NEGATIVE {
        return Err(Error::domain(format!(
            "airy: argument {x} below supported range {MOST_NEGATIVE:e}"
        )));
    }
    Ok(if x < SERIES_MIN {
        asymptotic_negative(-x)
    } else if x > SERIES_MAX {
        asymptotic_positive(x)
    } else {
        maclaurin(x)
    })
}

/// `Ai(x)`.
pub fn airy_ai(x: f64) -> Result<f64> {
    airy(x).map(|p| p.ai)
}

/// `Ai'(x)`.
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    airy(x).map(|p| p.ai_prime)
}

/// Upper bound on `int_x^inf t^k Ai(t)^2 dt` for `x > 0`.
///
/// From `Ai(t)^2 <= exp(-(4/3) t^{3/2}) / (4 pi sqrt t)` and one integration
/// by parts; valid once `x^{3/2} >= k - 1`, infinite before that.
pub fn ai_squared_tail_bound(x: f64, power: u32) -> f64 {
    if x.is_nan() || x <= 0.0 || x.powf(1.5) < f64::from(power) - 1.0 {
        return f64::INFINITY;
    }
    x.powi(power as i32 - 1) * (-4.0 / 3.0 * x.powf(1.5)).exp() / (4.0 * std::f64::consts::PI)
}

pub(crate) fn maclaurin(x: f64) -> AiryPair {
    let xdd = DoubleDouble::from_f64(x);
    let x3 = xdd * xdd * xdd;

    // f = sum x^{3k} 3^k (1/3)_k / (3k)!,   g = sum x^{3k+1} 3^k (2/3)_k / (3k+1)!
    // fp = f', gp = g'
    let mut tf = DoubleDouble::ONE;
    let mut tg = xdd;
    let mut tfp = (xdd * xdd).div_f64(2.0);
    let mut tgp = DoubleDouble::ONE;
    let mut f = tf;
    let mut g = tg;
    let mut fp = tfp;
    let mut gp = tgp;
    let mut peak: f64 = 1.0f64.max(x.abs());

    for k in 1..400u32 {
        let kf = f64::from(k);
        tf = (tf * x3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        tg = (tg * x3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        tgp = (tgp * x3).div_f64((3.0 * kf) * (3.0 * kf - 2.0));
        if k >= 2 {
            tfp = (tfp * x3).div_f64((3.0 * kf - 3.0) * (3.0 * kf - 1.0));
            fp += tfp;
        }
        f += tf;
        g += tg;
        gp += tgp;
        let largest = tf
            .hi
            .abs()
            .max(tg.hi.abs())
            .max(tfp.hi.abs())
            .max(tgp.hi.abs());
        peak = peak.max(largest);
        if largest < 1.0e-36 * peak {
            break;
        }
    }

    let ai = AI0 * f - NEG_AIP0 * g;
    let aip = AI0 * fp - NEG_AIP0 * gp;
    AiryPair {
        ai: ai.to_f64(),
        ai_prime: aip.to_f64(),
    }
}

/// Runs the `u_k`, `v_k` coefficient recurrences and hands each pair to
/// `visit` together with `zeta^{-k}`, stopping at the smallest term.
fn asymptotic_terms(zeta: f64, mut visit: impl FnMut(usize, f64, f64)) {
    let inv = 1.0 / zeta;
    let mut u = 1.0;
    let mut scale = 1.0;
    visit(0, 1.0, 1.0);
    let mut prev = f64::INFINITY;
    for k in 1..200usize {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        scale *= inv;
        let size = (u.abs().max(v.abs())) * scale;
        if size > prev {
            break;
        }
        visit(k, u * scale, v * scale);
        if size < 1.0e-18 {
            break;
        }
        prev = size;
    }
}

fn asymptotic_positive(x: f64) -> AiryPair {
    let sqrt_x = x.sqrt();
    let zeta = 2.0 / 3.0 * x * sqrt_x;
    let mut su = 0.0;
    let mut sv = 0.0;
    asymptotic_terms(zeta, |k, u, v| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        su += sign * u;
        sv += sign * v;
    });
    let quarter = sqrt_x.sqrt();
    let decay = (-zeta).exp();
    AiryPair {
        ai: decay * 0.5 * FRAC_1_SQRT_PI / quarter * su,
        ai_prime: -decay * 0.5 * FRAC_1_SQRT_PI * quarter * sv,
    }
}

/// `(sin, cos)` of `(2/3) t^{3/2} - pi/4`, with the phase carried in
/// double-double until after reduction.
fn reduced_phase(t: f64) -> (f64, f64) {
    let tdd = DoubleDouble::from_f64(t);
    let zeta = (tdd * tdd.sqrt()).mul_f64(2.0).div_f64(3.0);
    let phase = zeta - QUARTER_PI;
    let turns = (phase.hi / TWO_PI.hi).round();
    let r = (phase - TWO_PI.mul_f64(turns)).to_f64();
    r.sin_cos()
}

fn asymptotic_negative(t: f64) -> AiryPair {
    let sqrt_t = t.sqrt();
    let zeta = 2.0 / 3.0 * t * sqrt_t;
    // even / odd partial sums with alternating signs
    let (mut pu, mut qu, mut pv, mut qv) = (0.0, 0.0, 0.0, 0.0);
    asymptotic_terms(zeta, |k, u, v| {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pu += sign * u;
            pv += sign * v;
        } else {
            qu += sign * u;
            qv += sign * v;
        }
    });
    let (s, c) = reduced_phase(t);
    let quarter = sqrt_t.sqrt();
    AiryPair {
        ai: FRAC_1_SQRT_PI / quarter * (c * pu + s * qu),
        ai_prime: FRAC_1_SQRT_PI * quarter * (s * pv - c * qv),
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // Reference values from a 40-digit evaluation (mpmath `airyai`).
    const REFERENCE: &[(f64, f64, f64)] = &[
        (-1000.0, 0.055971895773019918842, 2.6330710195241287311),
        (-500.0, 0.072590120104041139612, 2.1173370928026481258),
        (-100.0, 0.17675339323955287809, -0.2422970316605838054),
        (-30.0, -0.087968188456842162833, 1.2286206026374851347),
        (-12.5, -0.27627456138116024823, -0.41933133041950516441),
        (-10.0, 0.040241238486443190689, 0.9962650441327900559),
        (-9.0, -0.022133721547341403674, -0.97566398092633159471),
        (-7.3, 0.33577037051514727697, -0.18009580448329365985),
        (-5.0, 0.35076100902411431979, 0.32719281855444313679),
        (-2.0, 0.22740742820168557599, 0.61825902074169104141),
        (-0.5, 0.4757280916105395888, -0.20408167033954738614),
        (0.7, 0.18916240039815008218, -0.19985119158228048105),
        (1.0, 0.13529241631288141552, -0.15914744129679321279),
        (2.0, 0.034924130423274379135, -0.053090384433653631704),
        (4.5, 0.00033025032351430898366, -0.00071786656755750888869),
        (8.0, 4.6922076160992316256e-8, -1.3414392979067865743e-7),
        (9.0, 2.4711684308724898433e-9, -7.4806413896589464128e-9),
        (12.0, 1.393184688875360839e-13, -4.854736554985308463e-13),
        (30.0, 3.2082175915504955711e-49, -1.7598765814327259821e-48),
        (
            100.0,
            2.6344821520881844896e-291,
            -2.6351403616044099336e-290,
        ),
    ];

    /// Scale against which an error counts as "relative": the value itself
    /// on the decaying side, the oscillation envelope on the negative axis.
    fn envelope(x: f64, derivative: bool) -> f64 {
        if x >= 0.0 {
            1.0
        } else {
            let q = (-x).powf(0.25);
            FRAC_1_SQRT_PI * if derivative { q } else { 1.0 / q }
        }
    }

    #[test]
    fn matches_reference_values() {
        for &(x, ai, aip) in REFERENCE {
            let p = airy(x).unwrap();
            let scale_ai = if x >= 0.0 {
                ai.abs()
            } else {
                envelope(x, false)
            };
            let scale_aip = if x >= 0.0 {
                aip.abs()
            } else {
                envelope(x, true)
            };
            // the far negative axis is bounded by the f64 representation of x
            let tol = if x < -200.0 { 2e-12 } else { 2e-13 };
            assert!(
                ((p.ai - ai) / scale_ai).abs() < tol,
                "Ai({x}) = {} want {ai}",
                p.ai
            );
            assert!(
                ((p.ai_prime - aip) / scale_aip).abs() < tol,
                "Ai'({x}) = {} want {aip}",
                p.ai_prime
            );
        }
    }

    #[test]
    fn regimes_agree_at_switch_points() {
        for x in [SERIES_MIN, SERIES_MIN - 0.3, SERIES_MIN + 0.3] {
            let a = maclaurin(x);
            let b = asymptotic_negative(-x);
            assert!((a.ai - b.ai).abs() < 1e-13 * envelope(x, false), "{x}");
            assert!(
                (a.ai_prime - b.ai_prime).abs() < 1e-13 * envelope(x, true),
                "{x}"
            );
        }
        for x in [SERIES_MAX, SERIES_MAX - 0.3, SERIES_MAX + 0.3] {
            let a = maclaurin(x);
            let b = asymptotic_positive(x);
            assert!(((a.ai - b.ai) / b.ai).abs() < 1e-13, "{x}");
            assert!(
                ((a.ai_prime - b.ai_prime) / b.ai_prime).abs() < 1e-13,
                "{x}"
            );
        }
    }

    #[test]
    fn tail_bound_dominates_tail() {
        // brute-force the tail with a fine midpoint rule
        for (x0, k) in [(1.0, 0u32), (2.0, 0), (2.5, 3), (3.0, 5)] {
            let steps = 200_000;
            let h = 12.0 / steps as f64;
            let tail: f64 = (0..steps)
                .map(|i| {
                    let t = x0 + (i as f64 + 0.5) * h;
                    t.powi(k as i32) * airy_ai(t).unwrap().powi(2) * h
                })
                .sum();
            let bound = ai_squared_tail_bound(x0, k);
            assert!(
                bound >= tail && bound < 5.0 * tail,
                "x0={x0} k={k}: {bound} vs {tail}"
            );
        }
        assert!(ai_squared_tail_bound(0.5, 9).is_infinite());
        assert!(ai_squared_tail_bound(-1.0, 0).is_infinite());
    }

    #[test]
    fn closed_forms_at_origin() {
        let p = airy(0.0).unwrap();
        assert!((p.ai - 0.355_028_053_887_817_2).abs() < 1e-16);
        assert!((p.ai_prime + 0.258_819_403_792_806_8).abs() < 1e-16);
    }

    #[test]
    fn underflows_quietly() {
        let p = airy(200.0).unwrap();
        assert_eq!(p.ai, 0.0);
        assert!(p.ai_prime.abs() == 0.0);
        assert!(airy(1e300).unwrap().ai == 0.0);
    }

    #[test]
    fn rejects_non_finite_and_out_of_range() {
        assert!(airy(f64::NAN).is_err());
        assert!(airy(f64::INFINITY).is_err());
        assert!(airy(f64::NEG_INFINITY).is_err());
        assert!(airy(-1e12).is_err());
        assert!(airy_ai_prime(f64::NAN).is_err());
    }
}
