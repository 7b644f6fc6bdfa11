use serde::{Deserialize, Serialize};

use crate::bouncer::{density_unchecked, BouncerState, DensityGrid};
use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;

/// Something that can be integrated over a window of `zeta`.
pub trait LocalDensity {
    /// Closed interval on which the density is defined.
    fn domain(&self) -> (f64, f64);
    fn window_integral(&self, lo: f64, hi: f64) -> Result<f64>;
}

/// Absolute tolerance for window integrals of callables and states.
pub const WINDOW_TOL: f64 = 1e-12;

impl LocalDensity for DensityGrid {
    fn domain(&self) -> (f64, f64) {
        let xs = self.coordinates();
        match (xs.first(), xs.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (f64::NAN, f64::NAN),
        }
    }

    /// Exact integral of the piecewise-linear interpolant.
    fn window_integral(&self, lo: f64, hi: f64) -> Result<f64> {
        let xs = self.coordinates();
        let value = |x: f64| self.interpolate(x).unwrap_or(f64::NAN);
        let mut total = 0.0;
        let mut left = lo;
        let mut i = xs.partition_point(|&x| x <= lo);
        while left < hi {
            let right = if i < xs.len() { xs[i].min(hi) } else { hi };
            total += 0.5 * (right - left) * (value(left) + value(right));
            left = right;
            i += 1;
        }
        Ok(total)
    }
}

impl LocalDensity for BouncerState {
    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    fn window_integral(&self, lo: f64, hi: f64) -> Result<f64> {
        Ok(integrate_adaptive(|z: f64| density_unchecked(self, z), lo, hi, WINDOW_TOL)?.value)
    }
}

/// A closure used as a density on `domain`.
pub struct FnDensity<F> {
    pub f: F,
    pub domain: (f64, f64),
}

impl<F: Fn(f64) -> f64> LocalDensity for FnDensity<F> {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn window_integral(&self, lo: f64, hi: f64) -> Result<f64> {
        Ok(integrate_adaptive(&self.f, lo, hi, WINDOW_TOL)?.value)
    }
}

/// `(1 / 2 eps) int_{c - eps}^{c + eps} rho`.
pub fn local_average<D: LocalDensity + ?Sized>(
    density: &D,
    center: f64,
    epsilon: f64,
) -> Result<f64> {
    if !(epsilon.is_finite() && epsilon > 0.0 && center.is_finite()) {
        return Err(Error::domain(format!(
            "local average needs finite center and positive epsilon, got {center}, {epsilon}"
        )));
    }
    let (lo, hi) = density.domain();
    let (a, b) = (center - epsilon, center + epsilon);
    if !(a >= lo && b <= hi) {
        return Err(Error::domain(format!(
            "window [{a}, {b}] leaves the density's domain [{lo}, {hi}]"
        )));
    }
    Ok(density.window_integral(a, b)? / (2.0 * epsilon))
}

/// Half-width rule for the averaging window.
///
/// `epsilon(zeta) = periods * pi / sqrt(h - zeta)`: `pi / sqrt(h - zeta)` is
/// the local period of `|psi|^2`, so the full window spans `2 * periods`
/// fringes. The window is then shrunk to stay inside `[0, clip * h]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowPolicy {
    pub periods: f64,
    pub clip: f64,
    /// Interior region `[lo, hi]` as fractions of `h`.
    pub interior: (f64, f64),
    /// Sample points across the interior for the L1 integral.
    pub samples: usize,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        Self {
            periods: 2.0,
            clip: 0.95,
            interior: (0.05, 0.90),
            samples: 400,
        }
    }
}

impl WindowPolicy {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.interior;
        let ok = self.periods.is_finite()
            && self.periods > 0.0
            && self.clip > 0.0
            && self.clip <= 1.0
            && lo > 0.0
            && lo < hi
            && hi < self.clip
            && self.samples >= 2;
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid window policy {self:?}")))
        }
    }

    pub fn epsilon(&self, h: f64, zeta: f64) -> f64 {
        let raw = self.periods * std::f64::consts::PI / (h - zeta).sqrt();
        raw.min(zeta).min(self.clip * h - zeta)
    }

    pub fn describe(&self) -> String {
        format!(
            "eps = {} pi / sqrt(h - zeta), clipped to [0, {} h]; interior [{}, {}] h; {} samples",
            self.periods, self.clip, self.interior.0, self.interior.1, self.samples
        )
    }

    pub fn interior_fraction(&self) -> f64 {
        self.interior.1 - self.interior.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bouncer::{classical_density_at, make_state, DensityKind};
    use crate::special_fn::airy;

    #[test]
    fn constant_density() {
        let d = FnDensity {
            f: |_| 0.25,
            domain: (0.0, 4.0),
        };
        for eps in [0.01, 0.5, 1.9] {
            assert!((local_average(&d, 2.0, eps).unwrap() - 0.25).abs() < 1e-14);
        }
        assert!(local_average(&d, 3.5, 1.0).is_err());
        assert!(local_average(&d, 2.0, 0.0).is_err());
    }

    #[test]
    fn full_period_of_sin_squared() {
        let w = 3.0;
        let d = FnDensity {
            f: move |z: f64| 2.0 * (w * z).sin().powi(2),
            domain: (0.0, 10.0),
        };
        let eps = std::f64::consts::PI / (2.0 * w);
        assert!((local_average(&d, 4.1, eps).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_window_matches_linear_profile() {
        let xs: Vec<f64> = (0..=10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x).collect();
        let g = DensityGrid::new(xs, ys, DensityKind::Averaged).unwrap();
        assert!((local_average(&g, 4.3, 1.25).unwrap() - 8.6).abs() < 1e-12);
        assert!((local_average(&g, 9.0, 1.0).unwrap() - 18.0).abs() < 1e-12);
        assert!(local_average(&g, 9.5, 1.0).is_err());
    }

    #[test]
    fn state_window_matches_primitive() {
        // int Ai^2 = x Ai^2 - Ai'^2
        let s = make_state(30).unwrap();
        let prim = |z: f64| {
            let p = airy(s.zero.value + z).unwrap();
            ((s.zero.value + z) * p.ai * p.ai - p.ai_prime * p.ai_prime) / s.norm_squared()
        };
        let (c, eps) = (11.0, 0.8);
        let exact = (prim(c + eps) - prim(c - eps)) / (2.0 * eps);
        assert!((local_average(&s, c, eps).unwrap() - exact).abs() < 1e-11);
    }

    #[test]
    fn large_n_average_tracks_classical() {
        let s = make_state(100).unwrap();
        let h = s.turning_point;
        let policy = WindowPolicy::default();
        for frac in [0.3, 0.6] {
            let z = frac * h;
            let avg = local_average(&s, z, policy.epsilon(h, z)).unwrap();
            let cl = classical_density_at(h, z).unwrap();
            assert!((avg / cl - 1.0).abs() < 0.02, "{frac}: {avg} vs {cl}");
        }
    }

    #[test]
    fn policy_clipping() {
        let p = WindowPolicy::default();
        p.validate().unwrap();
        let h = 20.0;
        assert!(p.epsilon(h, 0.1) <= 0.1);
        assert!(p.epsilon(h, 18.5) <= 0.5 + 1e-12);
        assert!(WindowPolicy {
            interior: (0.5, 0.2),
            ..p
        }
        .validate()
        .is_err());
    }
}
