//! Nef cone and curve cone of `X = P(E1) x_C P(E2)`.
//!
//! The nef cone is simplicial, spanned by
//!
//! ```text
//! tau1 = h1 - mu11 * F,   tau2 = h2 - mu21 * F,   F,
//! ```
//!
//! where `mu_i1` is the smallest slope of any torsion-free quotient of
//! `E_i`. The dual cone of curves is spanned by the fiber line classes
//! `delta1`, `delta2` and the slope-corrected horizontal class `delta3bar`;
//! the two triples pair to the identity matrix. Divisor classes live in the
//! `eta` basis `(h1, h2, F)` or the `tau` basis; nefness is a sign check on
//! tau coordinates and ampleness is the strict interior.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numring::{RingClass, SpaceSpec, Term};
use crate::rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisorBasis {
    Eta,
    Tau,
}

/// A numerical divisor class, `x*h1 + y*h2 + z*F` in the eta basis or
/// `a*tau1 + b*tau2 + c*F` in the tau basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DivisorClassRaw", into = "DivisorClassRaw")]
pub struct DivisorClass {
    basis: DivisorBasis,
    coords: [BigRational; 3],
}

#[derive(Serialize, Deserialize)]
struct DivisorClassRaw {
    basis: DivisorBasis,
    coords: [String; 3],
}

impl TryFrom<DivisorClassRaw> for DivisorClass {
    type Error = String;

    fn try_from(raw: DivisorClassRaw) -> std::result::Result<Self, String> {
        Ok(DivisorClass {
            basis: raw.basis,
            coords: parse_coords(&raw.coords)?,
        })
    }
}

impl From<DivisorClass> for DivisorClassRaw {
    fn from(class: DivisorClass) -> Self {
        DivisorClassRaw {
            basis: class.basis,
            coords: format_coords(&class.coords),
        }
    }
}

fn parse_coords(raw: &[String; 3]) -> std::result::Result<[BigRational; 3], String> {
    Ok([
        rational::parse_ratio(&raw[0])?,
        rational::parse_ratio(&raw[1])?,
        rational::parse_ratio(&raw[2])?,
    ])
}

fn format_coords(coords: &[BigRational; 3]) -> [String; 3] {
    [
        rational::format_ratio(&coords[0]),
        rational::format_ratio(&coords[1]),
        rational::format_ratio(&coords[2]),
    ]
}

impl DivisorClass {
    pub fn new(basis: DivisorBasis, coords: [BigRational; 3]) -> Self {
        Self { basis, coords }
    }

    pub fn eta(coords: [BigRational; 3]) -> Self {
        Self::new(DivisorBasis::Eta, coords)
    }

    pub fn tau(coords: [BigRational; 3]) -> Self {
        Self::new(DivisorBasis::Tau, coords)
    }

    pub fn basis(&self) -> DivisorBasis {
        self.basis
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.coords
    }

    pub fn into_coords(self) -> [BigRational; 3] {
        self.coords
    }

    /// Coordinates in the tau basis: `(x, y, z)` in eta coordinates maps to
    /// `(x, y, z + x*mu11 + y*mu21)`.
    pub fn to_tau(&self, space: &SpaceSpec) -> DivisorClass {
        match self.basis {
            DivisorBasis::Tau => self.clone(),
            DivisorBasis::Eta => {
                let [x, y, z] = &self.coords;
                let c = z + x * space.mu11() + y * space.mu21();
                DivisorClass::tau([x.clone(), y.clone(), c])
            }
        }
    }

    /// Inverse of [`DivisorClass::to_tau`].
    pub fn to_eta(&self, space: &SpaceSpec) -> DivisorClass {
        match self.basis {
            DivisorBasis::Eta => self.clone(),
            DivisorBasis::Tau => {
                let [a, b, c] = &self.coords;
                let z = c - a * space.mu11() - b * space.mu21();
                DivisorClass::eta([a.clone(), b.clone(), z])
            }
        }
    }

    /// Expansion in the numerical ring.
    pub fn ring_class(&self, space: &SpaceSpec) -> RingClass {
        let eta = self.to_eta(space);
        let [x, y, z] = eta.coords;
        RingClass::reduce(
            space,
            &[
                Term::new(0, 1, 0, x),
                Term::new(0, 0, 1, y),
                Term::new(1, 0, 0, z),
            ],
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveBasis {
    #[serde(rename = "delta")]
    Delta,
    #[serde(rename = "delta-bar")]
    DeltaBar,
}

/// A numerical curve class over `(delta1, delta2, delta3)` or over
/// `(delta1, delta2, delta3bar)` with
/// `delta3bar = delta3 + mu11*delta1 + mu21*delta2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveClassRaw", into = "CurveClassRaw")]
pub struct CurveClass {
    basis: CurveBasis,
    coords: [BigRational; 3],
}

#[derive(Serialize, Deserialize)]
struct CurveClassRaw {
    basis: CurveBasis,
    coords: [String; 3],
}

impl TryFrom<CurveClassRaw> for CurveClass {
    type Error = String;

    fn try_from(raw: CurveClassRaw) -> std::result::Result<Self, String> {
        Ok(CurveClass {
            basis: raw.basis,
            coords: parse_coords(&raw.coords)?,
        })
    }
}

impl From<CurveClass> for CurveClassRaw {
    fn from(class: CurveClass) -> Self {
        CurveClassRaw {
            basis: class.basis,
            coords: format_coords(&class.coords),
        }
    }
}

impl CurveClass {
    pub fn new(basis: CurveBasis, coords: [BigRational; 3]) -> Self {
        Self { basis, coords }
    }

    pub fn delta(coords: [BigRational; 3]) -> Self {
        Self::new(CurveBasis::Delta, coords)
    }

    pub fn delta_bar(coords: [BigRational; 3]) -> Self {
        Self::new(CurveBasis::DeltaBar, coords)
    }

    pub fn basis(&self) -> CurveBasis {
        self.basis
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.coords
    }

    pub fn into_coords(self) -> [BigRational; 3] {
        self.coords
    }

    pub fn to_delta(&self, space: &SpaceSpec) -> CurveClass {
        match self.basis {
            CurveBasis::Delta => self.clone(),
            CurveBasis::DeltaBar => {
                let [p, q, r] = &self.coords;
                CurveClass::delta([
                    p + r * space.mu11(),
                    q + r * space.mu21(),
                    r.clone(),
                ])
            }
        }
    }

    pub fn to_delta_bar(&self, space: &SpaceSpec) -> CurveClass {
        match self.basis {
            CurveBasis::DeltaBar => self.clone(),
            CurveBasis::Delta => {
                let [u, v, w] = &self.coords;
                CurveClass::delta_bar([
                    u - w * space.mu11(),
                    v - w * space.mu21(),
                    w.clone(),
                ])
            }
        }
    }

    /// Expansion in the numerical ring, through
    ///
    /// ```text
    /// delta1 = F * h1^(r1-2) * h2^(r2-1),
    /// delta2 = F * h1^(r1-1) * h2^(r2-2),
    /// delta3 = h1^(r1-1) * h2^(r2-1) - d1*delta1 - d2*delta2.
    /// ```
    pub fn ring_class(&self, space: &SpaceSpec) -> RingClass {
        let delta = self.to_delta(space);
        let [u, v, w] = delta.coords;
        let r1 = space.r1();
        let r2 = space.r2();
        let d1 = rational::int(space.d1());
        let d2 = rational::int(space.d2());
        RingClass::reduce(
            space,
            &[
                Term::new(1, r1 - 2, r2 - 1, u - &w * d1),
                Term::new(1, r1 - 1, r2 - 2, v - &w * d2),
                Term::new(0, r1 - 1, r2 - 1, w),
            ],
        )
    }
}

/// The nef cone generators `tau1, tau2, F` in eta coordinates:
/// `tau1 = (1, 0, -mu11)`, `tau2 = (0, 1, -mu21)`, `F = (0, 0, 1)`.
pub fn nef_generators(space: &SpaceSpec) -> (DivisorClass, DivisorClass, DivisorClass) {
    let zero = BigRational::zero;
    let one = || rational::int(1);
    (
        DivisorClass::eta([one(), zero(), -space.mu11()]),
        DivisorClass::eta([zero(), one(), -space.mu21()]),
        DivisorClass::eta([zero(), zero(), one()]),
    )
}

/// The curve cone generators `delta1, delta2, delta3bar`, as coordinate
/// vectors in the delta-bar basis. The coordinates are constant; the space
/// enters through their ring expansions via [`CurveClass::ring_class`].
pub fn curve_cone_generators(_space: &SpaceSpec) -> (CurveClass, CurveClass, CurveClass) {
    let zero = BigRational::zero;
    let one = || rational::int(1);
    (
        CurveClass::delta_bar([one(), zero(), zero()]),
        CurveClass::delta_bar([zero(), one(), zero()]),
        CurveClass::delta_bar([zero(), zero(), one()]),
    )
}

/// Pairing of the nef generators `(tau1, tau2, F)` against the curve
/// generators `(delta1, delta2, delta3bar)`, computed in the ring. The
/// result is the identity matrix; this function computes it rather than
/// asserting it, so tests can check the duality.
pub fn pairing_matrix(space: &SpaceSpec) -> Result<[[BigRational; 3]; 3]> {
    let (tau1, tau2, fiber) = nef_generators(space);
    let (delta1, delta2, delta3bar) = curve_cone_generators(space);
    let divisor_rings = [
        tau1.ring_class(space),
        tau2.ring_class(space),
        fiber.ring_class(space),
    ];
    let curve_rings = [
        delta1.ring_class(space),
        delta2.ring_class(space),
        delta3bar.ring_class(space),
    ];
    let mut matrix = [
        [BigRational::zero(), BigRational::zero(), BigRational::zero()],
        [BigRational::zero(), BigRational::zero(), BigRational::zero()],
        [BigRational::zero(), BigRational::zero(), BigRational::zero()],
    ];
    for (row, divisor) in divisor_rings.iter().enumerate() {
        for (col, curve) in curve_rings.iter().enumerate() {
            matrix[row][col] = divisor.multiply(curve)?.degree()?;
        }
    }
    Ok(matrix)
}

/// Nef means all tau coordinates are nonnegative.
pub fn is_nef(divisor: &DivisorClass, space: &SpaceSpec) -> bool {
    let tau = divisor.to_tau(space);
    tau.coords().iter().all(|c| !c.is_negative())
}

/// Ample means the strict interior of the nef cone: all tau coordinates
/// positive (Kleiman's criterion).
pub fn is_ample(divisor: &DivisorClass, space: &SpaceSpec) -> bool {
    let tau = divisor.to_tau(space);
    tau.coords().iter().all(|c| c.is_positive())
}

/// The effective 1-cycle witnessing that `tau1` and `tau2` lie on the
/// boundary of the nef cone:
///
/// ```text
/// D = h1^(r1-1)*h2^(r2-1) + (mu11 - d1)*delta1 + (mu21 - d2)*delta2,
/// ```
///
/// which is exactly `delta3bar`; it satisfies `deg(tau1 * D) =
/// deg(tau2 * D) = 0`.
pub fn witness_cycle(_space: &SpaceSpec) -> CurveClass {
    CurveClass::delta_bar([
        BigRational::zero(),
        BigRational::zero(),
        rational::int(1),
    ])
}

/// Vertices of the nef cone's cross-section by the plane `a + b + c = 1`
/// (tau coordinates), expressed in the eta basis for plotting.
pub fn cone_slice(space: &SpaceSpec) -> [[BigRational; 3]; 3] {
    let (tau1, tau2, fiber) = nef_generators(space);
    [tau1.coords, tau2.coords, fiber.coords]
}
