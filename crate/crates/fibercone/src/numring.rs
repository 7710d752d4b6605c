//! The graded numerical ring of `X = P(E1) x_C P(E2)` over a smooth curve.
//!
//! `N^1(X)` is spanned by `h1` (the pullback of the relative hyperplane class
//! of `P(E1)`), `h2` (same for `P(E2)`) and the common fiber class `F`. The
//! full numerical ring is the quotient of the polynomial ring on these three
//! generators by
//!
//! ```text
//! F^2 = 0,
//! h1^r1 = d1 * F * h1^(r1-1),        h2^r2 = d2 * F * h2^(r2-1),
//! ```
//!
//! which force `h1^(r1+1) = h2^(r2+1) = 0` and `F * h1^r1 = F * h2^r2 = 0`.
//! Monomials `F^e * h1^a * h2^b` with `e <= 1`, `a <= r1-1`, `b <= r2-1` form
//! a basis; every class is kept in that normal form. The point class
//! `F * h1^(r1-1) * h2^(r2-1)` has degree 1, so that
//! `deg(h1^r1 * h2^(r2-1)) = d1` and `deg(h2^r2 * h1^(r1-1)) = d2`.
//!
//! Coefficients are exact rationals; nothing here rounds.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational;

/// Default cap on bundle ranks. Keeps the expansion of `L^n` (with
/// `n = r1 + r2 - 1`) tractable; exceeding the cap is an explicit error.
pub const DEFAULT_MAX_RANK: u32 = 64;

/// Numerical input data of `X = P(E1) x_C P(E2)`: ranks and degrees of the
/// two bundles plus the smallest slope of any torsion-free quotient of each.
///
/// The ring relations only use the ranks and degrees; the minimal quotient
/// slopes drive the cone and Seshadri computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceSpec {
    r1: u32,
    r2: u32,
    d1: i64,
    d2: i64,
    #[serde(with = "rational::serde_str")]
    mu11: BigRational,
    #[serde(with = "rational::serde_str")]
    mu21: BigRational,
}

impl SpaceSpec {
    /// Validating constructor with the default rank cap.
    pub fn new(
        r1: u32,
        r2: u32,
        d1: i64,
        d2: i64,
        mu11: BigRational,
        mu21: BigRational,
    ) -> Result<Self> {
        Self::with_max_rank(r1, r2, d1, d2, mu11, mu21, DEFAULT_MAX_RANK)
    }

    /// Validating constructor with an explicit rank cap.
    ///
    /// Checks `r1, r2 >= 2`, the cap, and that each minimal quotient slope is
    /// bounded by the corresponding bundle slope `d_i / r_i` (equality holds
    /// exactly for a semistable bundle).
    pub fn with_max_rank(
        r1: u32,
        r2: u32,
        d1: i64,
        d2: i64,
        mu11: BigRational,
        mu21: BigRational,
        max_rank: u32,
    ) -> Result<Self> {
        for (which, rank) in [("E1", r1), ("E2", r2)] {
            if rank < 2 {
                return Err(Error::RankTooSmall { which, rank });
            }
            if rank > max_rank {
                return Err(Error::RankExceedsCap {
                    which,
                    rank,
                    cap: max_rank,
                });
            }
        }
        if mu11 > rational::ratio(d1, i64::from(r1)) {
            return Err(Error::SlopeAboveBundleSlope { which: "E1" });
        }
        if mu21 > rational::ratio(d2, i64::from(r2)) {
            return Err(Error::SlopeAboveBundleSlope { which: "E2" });
        }
        Ok(Self {
            r1,
            r2,
            d1,
            d2,
            mu11,
            mu21,
        })
    }

    pub fn r1(&self) -> u32 {
        self.r1
    }

    pub fn r2(&self) -> u32 {
        self.r2
    }

    pub fn d1(&self) -> i64 {
        self.d1
    }

    pub fn d2(&self) -> i64 {
        self.d2
    }

    pub fn mu11(&self) -> &BigRational {
        &self.mu11
    }

    pub fn mu21(&self) -> &BigRational {
        &self.mu21
    }

    /// `dim X = r1 + r2 - 1`, the top codimension.
    pub fn dim(&self) -> usize {
        self.r1 as usize + self.r2 as usize - 1
    }
}

/// A normal-form monomial `F^e * h1^a * h2^b` with `e <= 1`, `a <= r1 - 1`,
/// `b <= r2 - 1`. The derived ordering (lexicographic on `(e, a, b)`) is the
/// canonical serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    e: u8,
    a: u32,
    b: u32,
}

impl Monomial {
    pub fn e(&self) -> u32 {
        u32::from(self.e)
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Codimension grading `e + a + b`.
    pub fn codim(&self) -> usize {
        usize::from(self.e) + self.a as usize + self.b as usize
    }
}

/// One raw ring term `coeff * F^e * h1^a * h2^b`. Exponents are arbitrary
/// nonnegative integers; [`RingClass::reduce`] brings lists of these into
/// normal form. Also the wire format for serialized classes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub e: u32,
    pub a: u32,
    pub b: u32,
    #[serde(rename = "c", with = "rational::serde_str")]
    pub coeff: BigRational,
}

impl Term {
    pub fn new(e: u32, a: u32, b: u32, coeff: BigRational) -> Self {
        Self { e, a, b, coeff }
    }
}

/// An element of the numerical ring in normal form: a finite coefficient
/// table over normal-form monomials, with no zero entries. Carries its
/// [`SpaceSpec`] so that cross-space operations are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct RingClass {
    space: SpaceSpec,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Normal form of a single raw term, or `None` when the relations kill it.
fn normalize_term(
    space: &SpaceSpec,
    e: u32,
    a: u32,
    b: u32,
    coeff: &BigRational,
) -> Option<(Monomial, BigRational)> {
    if coeff.is_zero() {
        return None;
    }
    // F^2 = 0 and h_i^(r_i + 1) = 0.
    if e >= 2 || a > space.r1 || b > space.r2 {
        return None;
    }
    let mut e = e;
    let mut a = a;
    let mut b = b;
    let mut coeff = coeff.clone();
    // h1^r1 = d1 * F * h1^(r1-1); combined with F^2 = 0 this kills any term
    // that already carries an F factor.
    if a == space.r1 {
        if e >= 1 {
            return None;
        }
        e = 1;
        a = space.r1 - 1;
        coeff *= rational::int(space.d1);
    }
    if b == space.r2 {
        if e >= 1 {
            return None;
        }
        e = 1;
        b = space.r2 - 1;
        coeff *= rational::int(space.d2);
    }
    if coeff.is_zero() {
        return None;
    }
    Some((Monomial { e: e as u8, a, b }, coeff))
}

impl RingClass {
    /// Unique normal form of a list of raw terms. Total: every input reduces.
    pub fn reduce(space: &SpaceSpec, raw: &[Term]) -> RingClass {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for term in raw {
            if let Some((mono, coeff)) = normalize_term(space, term.e, term.a, term.b, &term.coeff)
            {
                let entry = terms.entry(mono).or_insert_with(BigRational::zero);
                *entry += coeff;
            }
        }
        terms.retain(|_, coeff| !coeff.is_zero());
        RingClass {
            space: space.clone(),
            terms,
        }
    }

    pub fn zero(space: &SpaceSpec) -> RingClass {
        RingClass {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &SpaceSpec) -> RingClass {
        Self::monomial(space, 0, 0, 0, BigRational::one())
    }

    /// `coeff * F^e * h1^a * h2^b`, reduced.
    pub fn monomial(space: &SpaceSpec, e: u32, a: u32, b: u32, coeff: BigRational) -> RingClass {
        Self::reduce(space, &[Term::new(e, a, b, coeff)])
    }

    pub fn h1(space: &SpaceSpec) -> RingClass {
        Self::monomial(space, 0, 1, 0, BigRational::one())
    }

    pub fn h2(space: &SpaceSpec) -> RingClass {
        Self::monomial(space, 0, 0, 1, BigRational::one())
    }

    pub fn fiber(space: &SpaceSpec) -> RingClass {
        Self::monomial(space, 1, 0, 0, BigRational::one())
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(e, a, b)` order.
    pub fn terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(mono, coeff)| Term::new(mono.e(), mono.a(), mono.b(), coeff.clone()))
            .collect()
    }

    /// Coefficient of the normal-form monomial `F^e * h1^a * h2^b`
    /// (zero when absent).
    pub fn coeff(&self, e: u32, a: u32, b: u32) -> BigRational {
        if e > 1 {
            return BigRational::zero();
        }
        let mono = Monomial { e: e as u8, a, b };
        self.terms.get(&mono).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Common codimension of all terms, or `None` when the class is zero or
    /// inhomogeneous.
    pub fn grade(&self) -> Option<usize> {
        let mut iter = self.terms.keys();
        let first = iter.next()?.codim();
        iter.all(|mono| mono.codim() == first).then_some(first)
    }

    /// True for the zero class and for nonzero classes of uniform
    /// codimension `codim`.
    pub fn is_homogeneous_of(&self, codim: usize) -> bool {
        self.terms.keys().all(|mono| mono.codim() == codim)
    }

    fn check_space(&self, other: &RingClass) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingClass) -> Result<RingClass> {
        self.check_space(other)?;
        let mut terms = self.terms.clone();
        for (mono, coeff) in &other.terms {
            let entry = terms.entry(*mono).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        terms.retain(|_, coeff| !coeff.is_zero());
        Ok(RingClass {
            space: self.space.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &RingClass) -> Result<RingClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingClass {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, factor: &BigRational) -> RingClass {
        if factor.is_zero() {
            return RingClass::zero(&self.space);
        }
        RingClass {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mono, coeff)| (*mono, coeff * factor))
                .collect(),
        }
    }

    /// Product in normal form. Bilinear, commutative, associative; grading
    /// adds whenever both factors are homogeneous and the product survives.
    pub fn multiply(&self, other: &RingClass) -> Result<RingClass> {
        self.check_space(other)?;
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (lhs, lc) in &self.terms {
            for (rhs, rc) in &other.terms {
                let raw_coeff = lc * rc;
                if let Some((mono, coeff)) = normalize_term(
                    &self.space,
                    lhs.e() + rhs.e(),
                    lhs.a + rhs.a,
                    lhs.b + rhs.b,
                    &raw_coeff,
                ) {
                    let entry = terms.entry(mono).or_insert_with(BigRational::zero);
                    *entry += coeff;
                }
            }
        }
        terms.retain(|_, coeff| !coeff.is_zero());
        Ok(RingClass {
            space: self.space.clone(),
            terms,
        })
    }

    /// Intersection number of a class of top codimension `r1 + r2 - 1`: the
    /// coefficient of the point class `F * h1^(r1-1) * h2^(r2-1)`.
    ///
    /// The zero class evaluates to 0; any other class must be homogeneous of
    /// top codimension.
    pub fn degree(&self) -> Result<BigRational> {
        let top = self.space.dim();
        if self.terms.is_empty() {
            return Ok(BigRational::zero());
        }
        match self.grade() {
            Some(grade) if grade == top => Ok(self.coeff(1, self.space.r1 - 1, self.space.r2 - 1)),
            Some(grade) => Err(Error::Grade {
                expected: top,
                found: format!("a class of codimension {grade}"),
            }),
            None => Err(Error::Grade {
                expected: top,
                found: "an inhomogeneous class".to_string(),
            }),
        }
    }

    /// `deg(L^n)` for a divisor class `L` (codimension 1), `n = r1 + r2 - 1`.
    pub fn top_self_intersection(&self) -> Result<BigRational> {
        if self.terms.is_empty() {
            return Ok(BigRational::zero());
        }
        if self.grade() != Some(1) {
            return Err(Error::Grade {
                expected: 1,
                found: "a class that is not a divisor".to_string(),
            });
        }
        let mut power = self.clone();
        for _ in 1..self.space.dim() {
            power = power.multiply(self)?;
        }
        power.degree()
    }
}
