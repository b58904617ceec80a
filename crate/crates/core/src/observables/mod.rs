//! Pair correlation, single-particle density and information entropy of
//! the relative-motion eigenstates.
//!
//! With centre-of-mass density `(β/π) e^{−βR²}` and `G(r) = u²/(2πr)` the
//! single-particle density is
//! `n(x) = (2β/π) ∫₀^∞ u(r)² e^{−β(x − r/2)²} Î_0(βxr) dr`,
//! `Î_0` the exponentially scaled Bessel function.

mod density;
mod entropy;
mod export;
mod profile;

pub use density::{
    closed_form_density, density_quadrature, fit_cm_width, max_relative_deviation, AngularMethod,
    ClosedFormCase, ClosedFormDensity, PairCorrelation, QuadratureDensity, WidthFit,
};
pub use entropy::{entropy_density, entropy_scan, entropy_surface, entropy_term, total_entropy, ScanRow};
pub use export::{fmt_num, fmt_rational, parse_profile_csv, profile_csv, scan_csv, surface_csv};
pub use profile::{default_grid, linear_grid, trapezoid, DensityProfile, EntropyProfile, SurfaceGrid};
