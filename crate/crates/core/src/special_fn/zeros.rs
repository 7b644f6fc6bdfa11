use serde::{Deserialize, Serialize};

use super::airy::airy;
use crate::error::{Error, Result};

const MAX_NEWTON_STEPS: usize = 20;

/// The n-th zero of `Ai` on the negative axis, with `Ai'` there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AiryZero {
    pub index: usize,
    pub value: f64,
    pub ai_prime_at_zero: f64,
}

/// `-[(3 pi / 2)(n - 1/4)]^{2/3}`.
pub fn airy_zero_asymptotic(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("airy zero index must be >= 1"));
    }
    let t = 1.5 * std::f64::consts::PI * (n as f64 - 0.25);
    Ok(-t.powf(2.0 / 3.0))
}

/// The n-th negative zero, Newton-refined from the asymptotic seed.
pub fn airy_zero(n: usize) -> Result<AiryZero> {
    let mut x = airy_zero_asymptotic(n)?;
    for _ in 0..MAX_NEWTON_STEPS {
        let p = airy(x)?;
        let step = p.ai / p.ai_prime;
        x -= step;
        if step.abs() < 1e-14 * x.abs() {
            let p = airy(x)?;
            return Ok(AiryZero {
                index: n,
                value: x,
                ai_prime_at_zero: p.ai_prime,
            });
        }
    }
    Err(Error::NoConvergence {
        context: "airy zero Newton iteration",
        iterations: MAX_NEWTON_STEPS,
    })
}

/// Zeros `1..=n_max`, in order.
pub fn airy_zeros(n_max: usize) -> Result<Vec<AiryZero>> {
    crate::exec::try_map_range(crate::exec::ExecPolicy::default(), 1..n_max + 1, airy_zero)
}
