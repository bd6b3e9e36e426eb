//! Exact symbolic calculus for the higher omni-Lie algebroid
//! `𝔇E ⊕ 𝔍ₙE` of a trivial vector bundle `E → ℝᵐ`.
//!
//! Every object is generic over a [`Scalar`] field; the aliases at the crate
//! root fix it to exact [`Rational`] arithmetic, which is what all checks use.

pub mod chart;
pub mod derivation;
pub mod dirac;
pub mod error;
pub mod forms;
pub mod gauge;
pub mod index;
pub mod jet;
pub mod linalg;
pub mod multicontact;
pub mod omni;
pub mod poly;
pub mod random;
pub mod scalar;

pub use chart::ChartConfig;
pub use error::{Error, Result};
pub use forms::{EKey, Slot};
pub use index::IndexSet;
pub use scalar::{int, rat, Rational, Scalar};

pub type Poly = poly::Poly<Rational>;
pub type ScalarForm = forms::ScalarForm<Rational>;
pub type EForm = forms::EForm<Rational>;
pub type Derivation = derivation::Derivation<Rational>;
pub type GenForm = gauge::GenForm<Rational>;
pub type JForm = jet::JForm<Rational>;
pub type OmniSection = omni::OmniSection<Rational>;
pub type BMapD = dirac::BMapD<Rational>;
pub type ZStructure = dirac::volume::ZStructure<Rational>;
