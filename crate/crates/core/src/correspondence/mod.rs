//! Fourier-space and locally averaged comparison of quantum and classical
//! densities.
//!
//! Convention: the forward transform is `(1/2pi) int rho(zeta) e^{-i q zeta}`
//! with `q` in units of `hbar / l_g`, so every normalised density has
//! coefficient `1/(2pi)` at `q = 0`.

mod albright;
mod average;
mod coefficient;
mod study;

pub use albright::{albright_moment, AlbrightMoment, SERIES_Q_MAX};
pub use average::{local_average, FnDensity, LocalDensity, WindowPolicy, WINDOW_TOL};
pub use coefficient::{
    classical_coefficient, coefficient_by_route, density_coefficient, leading_coefficient,
    quantum_coefficient_albright, quantum_coefficient_closed, quantum_coefficient_numeric,
    quantum_coefficient_numeric_with, FourierCoefficient, Route, CLASSICAL_TOL, NUMERIC_QH_MAX,
    NUMERIC_TOL,
};
pub use study::{
    convergence_study, convergence_study_with, fit_power_law, l1_error, ConvergenceReport,
    StudyOptions,
};
