//! Polynomials in `s, t` graded by `wt(s) = 2`, `wt(t) = 3`, polynomials in
//! `x` over them (`wt(x) = 1`), and the reduction of homogeneous polynomials to
//! one variable `u = s^3 / t^2`.

mod bivar;
mod dehom;
mod text;
mod xpoly;

pub use bivar::{Mono, Weight, WeightedBivar};
pub use dehom::{
    dehomogenize, rehomogenize, wb_gcd, wb_squarefree_check, weight_residues, DehomForm,
    SquarefreeCheck,
};
pub(crate) use dehom::from_u;
pub use text::{parse_bivar, parse_xpoly};
pub use xpoly::XPoly;
