//! Quantum bouncer: Airy eigenstates above a hard floor in uniform gravity,
//! their probability densities, and the Fourier-space check that the leading
//! large-n term of the quantum density coefficient is exactly the classical
//! one.
//!
//! All physics is carried out in dimensionless units: lengths in the
//! gravitational length `l_g`, energies in `m g l_g`, momenta in `hbar / l_g`.

pub mod bouncer;
pub mod correspondence;
mod dd;
pub mod error;
pub mod exec;
pub mod quadrature;
pub mod special_fn;

pub use error::{Error, Result};
pub use exec::ExecPolicy;
