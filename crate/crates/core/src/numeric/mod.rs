//! Double-precision periods and theta functions, leading to the weight-2
//! Kleinian basis.
//!
//! Accuracy is controlled by [`NumericConfig`]: a target of `2^-bits` for
//! quadrature and theta truncation, clamped to what `f64` can deliver.

pub mod abel;
pub mod kleinian;
pub mod lattice;
pub mod periods;
pub mod quadrature;
pub mod roots;
pub mod theta;

pub use abel::{abel_pair, abel_point, random_divisor};
pub use kleinian::{
    build_s_basis, eval_s_vec, sample_points, t_iso, verify_kummer_diagram, verify_main_theorem,
    DiagramReport, MainTheoremReport, SBasis, SampleResidual,
};
pub use lattice::{
    adapted_bases, kernel_pairs, lattice_member, numeric_h, verify_eta_transform, AdaptedBases,
    EtaReport, LatticeApprox,
};
pub use periods::{
    compute_periods, differentials, BranchPoints, Differentials, Homology, LegendreResiduals,
    PeriodData,
};
pub use theta::{theta, ThetaChar, ThetaJet, ThetaSeries};

/// Accuracy knobs shared by the numeric routines.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    /// Requested binary precision of quadrature and theta sums.
    pub precision_bits: u32,
    /// Relative separation below which two branch points are rejected.
    pub branch_separation: f64,
    /// Tolerance in lattice coordinates for membership tests.
    pub lattice_tol: f64,
}

impl NumericConfig {
    pub const MIN_BITS: u32 = 10;
    /// Beyond this, `f64` rounding dominates.
    pub const MAX_BITS: u32 = 46;

    pub fn with_precision(bits: u32) -> Self {
        NumericConfig {
            precision_bits: bits.clamp(Self::MIN_BITS, Self::MAX_BITS),
            ..Self::default()
        }
    }

    /// `2^-bits`.
    pub fn tol(&self) -> f64 {
        (-(self.precision_bits as f64)).exp2()
    }
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            precision_bits: 42,
            branch_separation: 1e-6,
            lattice_tol: 1e-6,
        }
    }
}
