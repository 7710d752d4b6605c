//! Exact numerical geometry of `X = P(E1) x_C P(E2)` over a smooth curve.
//!
//! Given Harder-Narasimhan data of two bundles `E1`, `E2` on a curve, this
//! crate builds the numerical intersection ring of the fiber product of
//! their projectivizations, produces nef-cone and curve-cone generators,
//! decides nefness and ampleness of divisor classes, and evaluates Seshadri
//! constants of ample classes, returning exact rational values or rigorous
//! intervals tagged with the case that produced them.
//!
//! All arithmetic is exact; the only inexact output is the real root in
//! [`seshadri::root_volume_upper`].

pub mod bundles;
pub mod cones;
pub mod error;
pub mod numring;
pub mod rational;
pub mod seshadri;

pub use bundles::{check_space_consistency, HnData, HnQuotient};
pub use cones::{
    cone_slice, curve_cone_generators, is_ample, is_nef, nef_generators, pairing_matrix,
    witness_cycle, CurveBasis, CurveClass, DivisorBasis, DivisorClass,
};
pub use error::{Error, ErrorKind, Result};
pub use numring::{Monomial, RingClass, SpaceSpec, Term, DEFAULT_MAX_RANK};
pub use seshadri::{
    root_volume_upper, seshadri_at_point, seshadri_global, seshadri_lower,
    seshadri_product_proj, Bounds, GlobalSeshadri, Justification, PointTag, SeshadriResult,
};

pub use num_rational::BigRational;
