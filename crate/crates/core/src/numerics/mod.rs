//! Quadrature, special functions and profile analysis.

mod fit;
mod fwhm;
mod profile;
mod quadrature;
mod special;

pub use fit::fit_power_law;
pub use fwhm::{fwhm, FwhmResult};
pub use profile::{peak_normalize, ProfileKind, ProfileValues, SampledProfile};
pub(crate) use quadrature::chirp_panels;
pub use quadrature::{integrate_complex, required_panels, sampled_weights, simpson_rule};
pub use special::{erf, erf_halfnorm, gaussian_fourier_amplitude};
