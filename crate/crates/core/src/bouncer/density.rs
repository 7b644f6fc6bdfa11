use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::state::{density_unchecked, BouncerState};
use crate::error::{Error, Result};
use crate::exec::{self, ExecPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    Quantum,
    Classical,
    Averaged,
    Reconstructed,
}

/// Trapezoid integral must be this close to 1 for a grid declared
/// normalized-complete.
pub const COMPLETE_NORM_TOL: f64 = 1e-6;

/// A density sampled on an increasing grid of `zeta = z / l_g` values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    coordinates: Vec<f64>,
    values: Vec<f64>,
    kind: DensityKind,
    normalized_complete: bool,
}

impl DensityGrid {
    pub fn new(coordinates: Vec<f64>, values: Vec<f64>, kind: DensityKind) -> Result<Self> {
        if coordinates.len() != values.len() {
            return Err(Error::domain(format!(
                "grid has {} coordinates but {} values",
                coordinates.len(),
                values.len()
            )));
        }
        validate_coordinates(&coordinates)?;
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::domain(format!(
                "density value {v} is not a finite nonnegative number"
            )));
        }
        Ok(Self {
            coordinates,
            values,
            kind,
            normalized_complete: false,
        })
    }

    /// Marks the grid as covering the whole support, after checking that its
    /// trapezoid integral is within [`COMPLETE_NORM_TOL`] of 1.
    pub fn declare_normalized_complete(mut self) -> Result<Self> {
        let total = self.trapezoid();
        if (total - 1.0).abs() > COMPLETE_NORM_TOL {
            return Err(Error::domain(format!(
                "grid integrates to {total}, not 1 within {COMPLETE_NORM_TOL}"
            )));
        }
        self.normalized_complete = true;
        Ok(self)
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.coordinates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn is_normalized_complete(&self) -> bool {
        self.normalized_complete
    }

    pub fn len(&self) -> usize {
        self.coordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coordinates.is_empty()
    }

    pub fn trapezoid(&self) -> f64 {
        self.coordinates
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }

    /// Linear interpolation; `None` outside the sampled range.
    pub fn interpolate(&self, zeta: f64) -> Option<f64> {
        let xs = &self.coordinates;
        if xs.is_empty() || zeta < xs[0] || zeta > xs[xs.len() - 1] {
            return None;
        }
        let i = xs.partition_point(|&x| x <= zeta);
        if i == xs.len() {
            return Some(self.values[xs.len() - 1]);
        }
        let (x0, x1) = (xs[i - 1], xs[i]);
        let t = (zeta - x0) / (x1 - x0);
        Some(self.values[i - 1] + t * (self.values[i] - self.values[i - 1]))
    }

    /// Indices of interior local maxima (strictly above both neighbours).
    pub fn local_maxima(&self) -> Vec<usize> {
        let v = &self.values;
        (1..v.len().saturating_sub(1))
            .filter(|&i| v[i] > v[i - 1] && v[i] > v[i + 1])
            .collect()
    }
}

fn validate_coordinates(grid: &[f64]) -> Result<()> {
    if let Some(x) = grid.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::domain(format!(
            "grid coordinate {x} is not a finite nonnegative number"
        )));
    }
    if grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
    {
        return Err(Error::domain(
            "grid coordinates must be strictly increasing",
        ));
    }
    Ok(())
}

pub fn quantum_density(state: &BouncerState, grid: &[f64]) -> Result<DensityGrid> {
    quantum_density_with(state, grid, ExecPolicy::default())
}

pub fn quantum_density_with(
    state: &BouncerState,
    grid: &[f64],
    policy: ExecPolicy,
) -> Result<DensityGrid> {
    validate_coordinates(grid)?;
    let values = exec::try_map(policy, grid, |&z| {
        let v = density_unchecked(state, z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!(
                "density not representable at zeta = {z}"
            )))
        }
    })?;
    DensityGrid::new(grid.to_vec(), values, DensityKind::Quantum)
}

/// `1 / (2 sqrt(h (h - zeta)))` below the turning point, `0` above.
pub fn classical_density_at(h: f64, zeta: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::domain(format!(
            "turning point must be positive, got {h}"
        )));
    }
    if zeta == h {
        return Err(Error::domain(
            "classical density is singular at the turning point",
        ));
    }
    if zeta.is_nan() || zeta < 0.0 {
        return Err(Error::domain(format!("zeta = {zeta} is inside the wall")));
    }
    Ok(if zeta < h {
        0.5 / (h * (h - zeta)).sqrt()
    } else {
        0.0
    })
}

pub fn classical_density(h: f64, grid: &[f64]) -> Result<DensityGrid> {
    classical_density_with(h, grid, ExecPolicy::default())
}

pub fn classical_density_with(h: f64, grid: &[f64], policy: ExecPolicy) -> Result<DensityGrid> {
    validate_coordinates(grid)?;
    let values = exec::try_map(policy, grid, |&z| classical_density_at(h, z))?;
    DensityGrid::new(grid.to_vec(), values, DensityKind::Classical)
}

/// Half-width of the neighbourhood of the turning point left out of default
/// grids, as a fraction of `h`.
pub const TURNING_POINT_GAP: f64 = 1e-3;

/// `points` equally spaced values of `zeta` on `[0, span * h]`, with those
/// closer than `TURNING_POINT_GAP * h` to the turning point removed.
pub fn turning_point_grid(h: f64, span: f64, points: usize) -> Result<Vec<f64>> {
    if !(h.is_finite() && h > 0.0 && span.is_finite() && span > 0.0) || points < 2 {
        return Err(Error::domain(format!(
            "grid needs positive h and span and at least 2 points, got h={h}, span={span}, points={points}"
        )));
    }
    let top = span * h;
    let step = top / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == points - 1 {
                top
            } else {
                i as f64 * step
            }
        })
        .filter(|z| (z - h).abs() >= TURNING_POINT_GAP * h)
        .collect())
}
