//! Sextic oscillator with a centrifugal barrier, its polynomial sectors,
//! the change of variable `x² = r` onto the Hooke radial problem, and an
//! energy-as-parameter estimator for states with no polynomial form.
//!
//! The variational estimator minimises the normalised residual
//! `R(E) = ‖(H − E)Ψ_E‖² / ‖Ψ_E‖²`, which vanishes exactly on eigenstates.

mod map;
mod sextic;
mod variational;

pub use map::{map_from_hooke, map_to_hooke, HookeEquivalence, MappedState, SexticImage};
pub use sextic::{
    qes_condition, qes_exact_energies, qes_series, qes_series_operator, qes_series_with, reduced_qes_operator,
    SexticParams,
};
pub use variational::{
    literal_roots, node_count, node_count_exact, node_count_roots, node_count_scan, variational_state, Picture, Trial,
    VariationalState, SCAN_SAMPLES,
};
