//! The relative-motion problem of two Coulomb-coupled particles in a
//! planar harmonic trap.
//!
//! With `ρ = √ω̃ r` and `u = e^{−ρ²/2} ρ^{|m|+1/2} t(ρ)` the radial equation
//! becomes `[D(D + 2|m|) + Ẽρ² − 2ρ³ d/dρ − κρ] t = 0`, `κ = Z/√ω̃`.
//! Termination of `t` at degree `n − 1` fixes `Ẽ = 2(n − 1)` and leaves a
//! polynomial condition on `κ`, hence a discrete set of trap frequencies.

mod branch;
mod wavefunction;

pub use branch::{
    coefficient_recurrence, quantization_polynomial, radial_series_operator, recurrence,
    solve_frequencies, QuantizationBranch,
};
pub use wavefunction::{
    build_wavefunction, energies, log_grid, radial_operator, radial_operator_with, verify_branch, CenterOfMassState,
    Energies, HookeParams, RadialWavefunction,
};
