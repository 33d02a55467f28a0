//! Special functions: Airy, the s^(m)/t^(m) families, orthonormal Hermite
//! polynomials, and the Hastings-McLeod Painlevé II solution.
//!
//! All operations are pure functions of their inputs and safe to call
//! concurrently; [`PainleveSolution`] is immutable once constructed.

mod airy;
mod contour;
mod hermite;
mod painleve;
mod stfun;

pub use airy::{airy_ai, airy_ai_derivative, airy_ai_pair, airy_ai_prime, AIRY_AI_0, AIRY_AI_PRIME_0};
pub use contour::{ContourSpec, DEFAULT_NODES, DEFAULT_RADIUS};
pub use hermite::{hermite_orthonormal, hermite_pair, HERMITE_CAP};
pub use painleve::{hastings_mcleod, shooting_oracle, PainleveSolution};
pub use stfun::{s_m, s_m_contour, s_m_w, s_m_w_scaled, t_m, t_m_w, t_m_w_scaled, M_CAP};
