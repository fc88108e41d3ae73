//! Explicit Richelot isogeny of genus-2 Kummer surfaces in the coordinates of
//! weight-2 Kleinian functions.
//!
//! The exact layer is generic over [`Scalar`] and is normally used with
//! [`Rational`]. The [`numeric`] layer works in double precision and checks
//! the transcendental statements against the exact matrices. [`suites`]
//! bundles both into named checks.

pub mod curve;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod numeric;
pub mod poly;
pub mod quad;
pub mod richelot;
pub mod scalar;
pub mod suites;

pub use curve::{
    f_pair, incidence, is_admissible, node, node_table, node_zero, trope_single, trope_table,
    trope_triple, trope_triple_unchecked, xi_coords, CurvePoint, DivisorPair, NodeLabel, NodeTable, RootedSextic,
    TropeLabel, WPoint,
};
pub use error::{Error, Result};
pub use linalg::{Mat, Mat2, Mat4, Vec4};
pub use poly::{Poly, Sextic};
pub use quad::{bracket, delta, discr, mobius_act, res, res1, roots, LinFactor, Mobius, ProjRoot, Quad};
pub use richelot::{
    enumerate_decompositions, Decomposition, FactorLabel, FactoredSextic, RichelotData, SignChoice,
};
pub use scalar::{format_rational, int, parse_rational, rat, Rational, Scalar, C64};
