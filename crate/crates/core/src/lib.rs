//! Division polynomials of `y^2 = x^3 + s x + t` reduced mod `p`, the
//! polynomials `theta` and `eta` that express them in `x^p`, supersingular
//! j-invariants, per-prime structural checks and finite-field specializations.

pub mod division_poly;
pub mod error;
pub mod finite_field;
pub mod frobenius_form;
pub mod specializer;
pub mod supersingular;
pub mod theorem_verifier;
pub mod weighted_poly;

pub use division_poly::{DivPolyTable, SigmaPoly};
pub use error::{Error, Result};
pub use finite_field::{field_make, ExtField, Field, IntegerRing, PrimeField, Ring, UniPoly};
pub use frobenius_form::{EtaData, StructureFailure, ThetaData};
pub use specializer::{CurveSpec, PrimeData, SampleConfig, SampleReport};
pub use supersingular::SupersingularTable;
pub use theorem_verifier::{Budget, VerificationReport, VerifyConfig};
pub use weighted_poly::{WeightedBivar, XPoly};
