//! Inputs shared by the benchmarks.

use richelot_core::fixtures::standard;
use richelot_core::{int, FactoredSextic, Rational, Vec4};

pub fn triple() -> FactoredSextic<Rational> {
    standard()
}

pub fn point() -> Vec4<Rational> {
    [int(1), int(-2), int(3), int(5)]
}
