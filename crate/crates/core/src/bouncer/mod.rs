//! Eigenstates of a particle above a hard floor in uniform gravity, in units
//! of the gravitational length.

mod density;
mod params;
mod state;

pub use density::{
    classical_density, classical_density_at, classical_density_with, quantum_density,
    quantum_density_with, turning_point_grid, DensityGrid, DensityKind, COMPLETE_NORM_TOL,
    TURNING_POINT_GAP,
};
pub use params::{
    default_species, gravitational_length, parse_species_config, regime_estimate, PhysicalParams,
    RegimeEstimate, Species, DEFAULT_SPECIES_CONFIG, HBAR, STANDARD_GRAVITY,
};
pub(crate) use state::density_unchecked;
pub use state::{
    integrate_against_density, make_state, moment_p_even_classical, moment_p_even_quantum,
    moment_p_odd_quantum, moment_z_classical, moment_z_quantum, tail_probability, wavefunction,
    BouncerState, TailProbability, MAX_P_MOMENT, MAX_Z_MOMENT, STATE_TOL, TAIL_AGREEMENT,
};
