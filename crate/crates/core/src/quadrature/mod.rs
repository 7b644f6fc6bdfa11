//! Adaptive one-dimensional quadrature.
//!
//! Everything is built on a globally adaptive bisection driven by the
//! 10/21-point Gauss-Kronrod pair: the interval with the largest error
//! estimate is split until the summed estimate meets the tolerance. The
//! variants here add an inverse-square-root endpoint substitution, a
//! semi-infinite range with a caller-supplied tail bound, and panelisation
//! for oscillatory kernels.

mod gauss_kronrod;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::{self, ExecPolicy};
use gauss_kronrod::{qk21, POINTS};

/// Values a quadrature can accumulate: `f64` and `Complex64`.
pub trait QuadValue:
    Copy + Default + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
    fn to_complex(self) -> Complex64;
}

impl QuadValue for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl QuadValue for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Stopping rule: the error estimate must fall below
/// `max(abs, rel * |value|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Self { abs, rel: 0.0 }
    }

    pub fn relative(rel: f64) -> Self {
        Self { abs: 0.0, rel }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }

    pub(crate) fn scaled(&self, fraction: f64) -> Self {
        Self {
            abs: self.abs * fraction,
            rel: self.rel,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |t: f64| t.is_finite() && t >= 0.0;
        if ok(self.abs) && ok(self.rel) && (self.abs > 0.0 || self.rel > 0.0) {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid tolerance {self:?}")))
        }
    }
}

impl From<f64> for Tolerance {
    fn from(abs: f64) -> Self {
        Tolerance::absolute(abs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl<T: QuadValue> IntegrationResult<T> {
    fn zero() -> Self {
        Self {
            value: T::default(),
            error_estimate: 0.0,
            evaluations: 0,
        }
    }

    fn absorb(&mut self, other: &Self) {
        self.value = self.value + other.value;
        self.error_estimate += other.error_estimate;
        self.evaluations += other.evaluations;
    }
}

/// Upper limit on subintervals held by one adaptive run.
pub const MAX_INTERVALS: usize = 4000;

struct Interval<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Interval<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl<T> Eq for Interval<T> {}
impl<T> PartialOrd for Interval<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Interval<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Neumaier-compensated sum of interval values in left-to-right order.
fn ordered_total<T: QuadValue>(mut parts: Vec<Interval<T>>) -> (T, f64) {
    parts.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut sum = parts
        .iter()
        .map(|p| p.value)
        .fold(KahanSum::<T>::default(), |mut acc, v| {
            acc.add(v);
            acc
        });
    let err = parts.iter().map(|p| p.error).sum();
    (sum.total(), err)
}

#[derive(Default)]
struct KahanSum<T> {
    sum: T,
    comp: T,
}

impl<T: QuadValue> KahanSum<T> {
    fn add(&mut self, v: T) {
        let t = self.sum + v;
        // Neumaier: compensate with whichever operand lost bits
        if self.sum.magnitude() >= v.magnitude() {
            self.comp = self.comp + ((self.sum - t) + v);
        } else {
            self.comp = self.comp + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    fn total(&mut self) -> T {
        self.sum + self.comp
    }
}

/// `int_a^b f` by globally adaptive Gauss-Kronrod bisection.
///
/// `f` may have an integrable singularity at an endpoint (nodes never touch
/// the endpoints), though convergence there is slow; see
/// [`integrate_sqrt_endpoint`] for the inverse-square-root case.
pub fn integrate_adaptive<T, F>(
    f: F,
    a: f64,
    b: f64,
    tol: impl Into<Tolerance>,
) -> Result<IntegrationResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let tol = tol.into();
    tol.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::domain(format!(
            "integration limits must be finite with a <= b, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(IntegrationResult {
            value: T::default(),
            error_estimate: 0.0,
            evaluations: 1,
        });
    }

    let first = checked(qk21(&f, a, b))?;
    let mut evaluations = POINTS;
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Interval<T>> = Vec::new();
    let mut value = first.value;
    let mut error = first.error;
    heap.push(Interval {
        a,
        b,
        value: first.value,
        error: first.error,
    });

    while error > tol.target(value.magnitude()) {
        if heap.len() + frozen.len() >= MAX_INTERVALS {
            let (v, e) = ordered_total(heap.into_vec().into_iter().chain(frozen).collect());
            return Err(Error::Accuracy {
                context: "adaptive quadrature",
                estimate: v.to_complex(),
                error_estimate: e,
                evaluations,
            });
        }
        let Some(worst) = heap.pop() else {
            // every remaining interval is at floating-point resolution
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        let resolution =
            1e3 * f64::EPSILON * worst.a.abs().max(worst.b.abs()).max(f64::MIN_POSITIVE);
        if worst.b - worst.a < resolution {
            frozen.push(worst);
            continue;
        }
        let left = checked(qk21(&f, worst.a, mid))?;
        let right = checked(qk21(&f, mid, worst.b))?;
        evaluations += 2 * POINTS;
        value = value - worst.value + left.value + right.value;
        error = error - worst.error + left.error + right.error;
        heap.push(Interval {
            a: worst.a,
            b: mid,
            value: left.value,
            error: left.error,
        });
        heap.push(Interval {
            a: mid,
            b: worst.b,
            value: right.value,
            error: right.error,
        });
    }

    let (value, error_estimate) =
        ordered_total(heap.into_vec().into_iter().chain(frozen).collect());
    if error_estimate > tol.target(value.magnitude()) {
        return Err(Error::Accuracy {
            context: "adaptive quadrature (roundoff limit)",
            estimate: value.to_complex(),
            error_estimate,
            evaluations,
        });
    }
    Ok(IntegrationResult {
        value,
        error_estimate,
        evaluations,
    })
}

fn checked<T: QuadValue>(e: gauss_kronrod::Estimate<T>) -> Result<gauss_kronrod::Estimate<T>> {
    if e.value.magnitude().is_finite() && e.error.is_finite() {
        Ok(e)
    } else {
        Err(Error::domain(
            "integrand is not finite on the integration range",
        ))
    }
}

/// Which end of the range carries a `1/sqrt` singularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqrtEndpoint {
    Lower,
    Upper,
}

/// `int_a^b f` where `f(x) * sqrt(|x - endpoint|)` is smooth.
///
/// Substitutes `x = b - (b - a) u^2` (upper) or `x = a + (b - a) u^2`
/// (lower), which cancels the singularity exactly.
pub fn integrate_sqrt_endpoint<T, F>(
    f: F,
    a: f64,
    b: f64,
    endpoint: SqrtEndpoint,
    tol: impl Into<Tolerance>,
) -> Result<IntegrationResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let width = b - a;
    match endpoint {
        SqrtEndpoint::Upper => {
            integrate_adaptive(|u| f(b - width * u * u) * (2.0 * width * u), 0.0, 1.0, tol)
        }
        SqrtEndpoint::Lower => {
            integrate_adaptive(|u| f(a + width * u * u) * (2.0 * width * u), 0.0, 1.0, tol)
        }
    }
}

/// Sums adaptive integrals over consecutive panels `[p_i, p_{i+1}]`.
///
/// The absolute tolerance is shared out in proportion to panel width.
/// Panels may run concurrently; the sum is formed afterwards in panel order.
pub fn integrate_panels<T, F>(
    f: F,
    breakpoints: &[f64],
    tol: impl Into<Tolerance>,
    policy: ExecPolicy,
) -> Result<IntegrationResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T + Sync + Send,
{
    let tol = tol.into();
    if breakpoints.len() < 2
        || breakpoints
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
    {
        return Err(Error::domain(
            "panel breakpoints must be strictly increasing",
        ));
    }
    let total = breakpoints[breakpoints.len() - 1] - breakpoints[0];
    let panels: Vec<(f64, f64)> = breakpoints.windows(2).map(|w| (w[0], w[1])).collect();
    let parts = exec::try_map(policy, &panels, |&(lo, hi)| {
        integrate_adaptive(&f, lo, hi, tol.scaled((hi - lo) / total))
    })?;
    let mut acc = KahanSum::<T>::default();
    let mut out = IntegrationResult::<T>::zero();
    for p in &parts {
        acc.add(p.value);
        out.error_estimate += p.error_estimate;
        out.evaluations += p.evaluations;
    }
    out.value = acc.total();
    Ok(out)
}

/// `int_a^inf f`, truncated at the first `X = a + 2^k` where
/// `tail_bound(X) >= int_X^inf |f|` drops below a tenth of the tolerance.
/// The bound at the cut is added to the reported error.
pub fn integrate_semi_infinite<T, F, B>(
    f: F,
    a: f64,
    tol: impl Into<Tolerance>,
    tail_bound: B,
) -> Result<IntegrationResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
    B: Fn(f64) -> f64,
{
    let tol = tol.into();
    tol.validate()?;
    if !a.is_finite() {
        return Err(Error::domain(format!(
            "semi-infinite lower limit {a} is not finite"
        )));
    }
    let mut out = IntegrationResult::<T>::zero();
    let mut lo = a;
    let mut width = 1.0;
    for piece in 0..64 {
        let hi = lo + width;
        let part = integrate_adaptive(&f, lo, hi, tol.scaled(0.5f64.powi(piece + 1)))?;
        out.absorb(&part);
        let tail = tail_bound(hi);
        if tail.is_finite() && tail <= 0.1 * tol.target(out.value.magnitude()) {
            out.error_estimate += tail;
            return Ok(out);
        }
        lo = hi;
        width *= 2.0;
    }
    Err(Error::Accuracy {
        context: "semi-infinite quadrature (tail bound never met)",
        estimate: out.value.to_complex(),
        error_estimate: out.error_estimate,
        evaluations: out.evaluations,
    })
}

/// Most panels an oscillatory integral may be split into.
pub const MAX_OSCILLATORY_PANELS: usize = 200_000;

/// `int_a^b f(x) e^{-i omega x} dx`, split into panels of width
/// `pi / |omega|` (half a kernel period) with an adaptive rule on each.
pub fn integrate_oscillatory<F>(
    f: F,
    omega: f64,
    a: f64,
    b: f64,
    tol: impl Into<Tolerance>,
) -> Result<IntegrationResult<Complex64>>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    integrate_oscillatory_with(f, omega, a, b, tol, ExecPolicy::default())
}

pub fn integrate_oscillatory_with<F>(
    f: F,
    omega: f64,
    a: f64,
    b: f64,
    tol: impl Into<Tolerance>,
    policy: ExecPolicy,
) -> Result<IntegrationResult<Complex64>>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    if !omega.is_finite() || !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::domain(format!(
            "oscillatory integral needs finite omega and a < b, got omega={omega}, [{a}, {b}]"
        )));
    }
    let breakpoints = kernel_panels(omega, a, b)?;
    integrate_panels(
        |x| Complex64::from_polar(f(x), -omega * x),
        &breakpoints,
        tol,
        policy,
    )
}

/// `a`, `b` and every `a + k pi/|omega|` strictly between them.
pub(crate) fn kernel_panels(omega: f64, a: f64, b: f64) -> Result<Vec<f64>> {
    if omega == 0.0 {
        return Ok(vec![a, b]);
    }
    let step = std::f64::consts::PI / omega.abs();
    let count = ((b - a) / step).ceil();
    if count > MAX_OSCILLATORY_PANELS as f64 {
        return Err(Error::Accuracy {
            context: "oscillatory quadrature (panel budget)",
            estimate: Complex64::new(f64::NAN, f64::NAN),
            error_estimate: f64::INFINITY,
            evaluations: 0,
        });
    }
    let mut points: Vec<f64> = (0..count as usize).map(|k| a + k as f64 * step).collect();
    points.push(b);
    points.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * step);
    if points.len() < 2 {
        points = vec![a, b];
    }
    Ok(points)
}
