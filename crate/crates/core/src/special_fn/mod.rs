//! Special-function kernels: Airy `Ai`/`Ai'`, the negative zeros of `Ai`,
//! and the rotated error function that appears in the closed-form leading
//! Fourier coefficient.

mod airy;
mod erf;
mod zeros;

pub use airy::{ai_squared_tail_bound, airy, airy_ai, airy_ai_prime, AiryPair};
pub use erf::{erf_rotated, fresnel};
pub use zeros::{airy_zero, airy_zero_asymptotic, airy_zeros, AiryZero};
