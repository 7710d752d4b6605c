//! Seshadri constants of ample classes on `X = P(E1) x_C P(E2)`.
//!
//! For an ample class `L = a*tau1 + b*tau2 + c*F` the constant
//! `eps(X, L, x)` always satisfies `min{a,b,c} <= eps <= min{a,b}`. Within
//! that sandwich the evaluator applies a fixed case table, in order:
//!
//! | case          | condition                                              | result   |
//! |---------------|--------------------------------------------------------|----------|
//! | `Thm4.1.1`    | `a <= b` and `a <= c`                                  | exact `a`|
//! | `Thm4.1.2`    | `b <= a` and `b <= c`                                  | exact `b`|
//! | `Thm4.3.iii`  | `c` strictly minimal, point on a `delta3bar` curve, both bundles unstable | exact `c`|
//! | `Thm4.3.i`    | `c <= a <= b`, both unstable, `E1` rank-2 normalized, point outside `B_-(h1)` | exact `a`|
//! | `Thm4.3.i-bound` | same but point inside `B_-(h1)`                     | `[c, a]` |
//! | `Thm4.3.ii`   | `c <= b <= a`, both unstable, `E2` rank-2 normalized, point outside `B_-(h2)` | exact `b`|
//! | `Thm4.3.ii-bound`| same but point inside `B_-(h2)`                     | `[c, b]` |
//! | `Thm4.5.i`    | `c <= b <= a`, `E1` semistable, `E2` unstable rank-2 normalized, point outside `B_-(h2)` | exact `b`|
//! | `Thm4.5.ii`   | same but point inside `B_-(h2)`                        | `[c, b]` |
//! | `generic-bounds` | anything else                                        | `[min{a,b,c}, min{a,b}]` |
//!
//! Membership in a restricted base locus `B_-` is declared by the caller
//! through a [`PointTag`], never computed. Everything is exact rational
//! arithmetic except [`root_volume_upper`], which returns a float accurate
//! to at least 12 significant digits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize, Serializer};

use crate::bundles::{check_space_consistency, HnData};
use crate::cones::DivisorClass;
use crate::error::{Error, Result};
use crate::numring::SpaceSpec;
use crate::rational;

/// Declared position of the point the constant is evaluated at. Locus
/// membership is an input, not something the calculator derives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointTag {
    #[serde(rename = "generic")]
    Generic,
    /// Point lies in `B_-(h1)`, the restricted base locus on the `P(E1)` side.
    #[serde(rename = "in_Bminus_tau1")]
    InBminusTau1,
    /// Point lies in `B_-(h2)`.
    #[serde(rename = "in_Bminus_tau2")]
    InBminusTau2,
    /// Point lies on a curve whose class is proportional to `delta3bar`.
    #[serde(rename = "on_delta3bar_curve")]
    OnDelta3barCurve,
}

/// Which case of the table produced the result. The labels are stable wire
/// strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    Thm411,
    Thm412,
    Lem42,
    Thm43i,
    Thm43iBound,
    Thm43ii,
    Thm43iiBound,
    Thm43iii,
    Thm45i,
    Thm45ii,
    GenericBounds,
}

impl Justification {
    pub fn label(self) -> &'static str {
        match self {
            Justification::Thm411 => "Thm4.1.1",
            Justification::Thm412 => "Thm4.1.2",
            Justification::Lem42 => "Lem4.2",
            Justification::Thm43i => "Thm4.3.i",
            Justification::Thm43iBound => "Thm4.3.i-bound",
            Justification::Thm43ii => "Thm4.3.ii",
            Justification::Thm43iiBound => "Thm4.3.ii-bound",
            Justification::Thm43iii => "Thm4.3.iii",
            Justification::Thm45i => "Thm4.5.i",
            Justification::Thm45ii => "Thm4.5.ii",
            Justification::GenericBounds => "generic-bounds",
        }
    }
}

impl Serialize for Justification {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.label())
    }
}

/// Exact value or rigorous closed interval.
#[derive(Debug, Clone, PartialEq)]
pub enum Bounds {
    Exact(BigRational),
    Interval {
        lower: BigRational,
        upper: BigRational,
    },
}

/// Outcome of a Seshadri evaluation: bounds plus the case that produced them
/// and the hypotheses that case consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct SeshadriResult {
    bounds: Bounds,
    justification: Justification,
    hypotheses: Vec<&'static str>,
}

impl SeshadriResult {
    fn exact(value: BigRational, justification: Justification, hypotheses: Vec<&'static str>) -> Self {
        Self {
            bounds: Bounds::Exact(value),
            justification,
            hypotheses,
        }
    }

    fn interval(
        lower: BigRational,
        upper: BigRational,
        justification: Justification,
        hypotheses: Vec<&'static str>,
    ) -> Self {
        debug_assert!(lower <= upper);
        Self {
            bounds: Bounds::Interval { lower, upper },
            justification,
            hypotheses,
        }
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn justification(&self) -> Justification {
        self.justification
    }

    pub fn hypotheses(&self) -> &[&'static str] {
        &self.hypotheses
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.bounds, Bounds::Exact(_))
    }

    /// The exact value, when there is one.
    pub fn value(&self) -> Option<&BigRational> {
        match &self.bounds {
            Bounds::Exact(value) => Some(value),
            Bounds::Interval { .. } => None,
        }
    }

    /// Lower endpoint (the value itself when exact).
    pub fn lower(&self) -> &BigRational {
        match &self.bounds {
            Bounds::Exact(value) => value,
            Bounds::Interval { lower, .. } => lower,
        }
    }

    /// Upper endpoint (the value itself when exact).
    pub fn upper(&self) -> &BigRational {
        match &self.bounds {
            Bounds::Exact(value) => value,
            Bounds::Interval { upper, .. } => upper,
        }
    }
}

#[derive(Serialize)]
struct SeshadriResultWire<'a> {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<String>,
    justification: Justification,
    hypotheses_used: &'a [&'static str],
}

impl Serialize for SeshadriResult {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match &self.bounds {
            Bounds::Exact(value) => SeshadriResultWire {
                kind: "exact",
                value: Some(rational::format_ratio(value)),
                lower: None,
                upper: None,
                justification: self.justification,
                hypotheses_used: &self.hypotheses,
            },
            Bounds::Interval { lower, upper } => SeshadriResultWire {
                kind: "interval",
                value: None,
                lower: Some(rational::format_ratio(lower)),
                upper: Some(rational::format_ratio(upper)),
                justification: self.justification,
                hypotheses_used: &self.hypotheses,
            },
        };
        wire.serialize(ser)
    }
}

/// Seshadri constant of a type-`(a, b)` class on `P^n x P^m`: `min{a, b}`
/// at every point, the minimum being attained by a line in one factor.
pub fn seshadri_product_proj(
    n: u32,
    m: u32,
    a: &BigRational,
    b: &BigRational,
) -> Result<BigRational> {
    if n < 1 || m < 1 {
        return Err(Error::EmptyInput("projective space factor of dimension 0"));
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::NotAmple(
            "both type coefficients must be positive".to_string(),
        ));
    }
    Ok(a.min(b).clone())
}

/// Universal lower bound `min{a, b, c}` for an ample `a*tau1 + b*tau2 + c*F`.
pub fn seshadri_lower(a: &BigRational, b: &BigRational, c: &BigRational) -> Result<BigRational> {
    if !a.is_positive() || !b.is_positive() || !c.is_positive() {
        return Err(Error::NotAmple(
            "all tau coordinates must be positive".to_string(),
        ));
    }
    Ok(a.min(b).min(c).clone())
}

/// Base-2 logarithm of a positive big integer, accurate to a few ulps.
fn log2_bigint(value: &BigInt) -> f64 {
    let bits = value.bits();
    if bits <= 53 {
        return value.to_f64().expect("small BigInt fits f64").log2();
    }
    let shift = bits - 53;
    let top: BigInt = value >> shift;
    top.to_f64().expect("53-bit BigInt fits f64").log2() + shift as f64
}

/// `x^(1/n)` for a positive rational `x`, computed through logarithms so that
/// arbitrarily large exact values keep at least 12 significant digits.
fn nth_root(value: &BigRational, n: usize) -> f64 {
    let log2 = log2_bigint(value.numer()) - log2_bigint(value.denom());
    (log2 / n as f64).exp2()
}

/// `(L^n)^(1/n)` with `n = dim X`, the universal upper bound for Seshadri
/// constants of an ample `L`. `L^n` itself is exact; only the root is a
/// float, accurate to at least 12 significant digits.
pub fn root_volume_upper(space: &SpaceSpec, l: &DivisorClass) -> Result<f64> {
    let tau = l.to_tau(space);
    if !tau.coords().iter().all(|c| c.is_positive()) {
        return Err(Error::NotAmple(
            "root-volume bound requires an ample class".to_string(),
        ));
    }
    let top_power = l.ring_class(space).top_self_intersection()?;
    if !top_power.is_positive() {
        return Err(Error::Inconsistency(format!(
            "ample class with nonpositive top self-intersection {}",
            rational::format_ratio(&top_power)
        )));
    }
    Ok(nth_root(&top_power, space.dim()))
}

fn ample_tau_coords(space: &SpaceSpec, l: &DivisorClass) -> Result<[BigRational; 3]> {
    let [a, b, c] = l.to_tau(space).into_coords();
    if !a.is_positive() || !b.is_positive() || !c.is_positive() {
        return Err(Error::NotAmple(format!(
            "tau coordinates ({}, {}, {}) must all be positive",
            rational::format_ratio(&a),
            rational::format_ratio(&b),
            rational::format_ratio(&c)
        )));
    }
    Ok([a, b, c])
}

fn check_point_tag(point: PointTag, e1: &HnData, e2: &HnData) -> Result<()> {
    match point {
        PointTag::InBminusTau1 if e1.is_semistable() => Err(Error::Hypothesis(
            "point tagged inside B_-(h1) while E1 is semistable".to_string(),
        )),
        PointTag::InBminusTau2 if e2.is_semistable() => Err(Error::Hypothesis(
            "point tagged inside B_-(h2) while E2 is semistable".to_string(),
        )),
        _ => Ok(()),
    }
}

fn rank2_normalized(bundle: &HnData) -> bool {
    bundle.rank() == 2 && bundle.is_normalized()
}

/// Evaluate `eps(X, L, x)` for an ample `L` at a tagged point, by the case
/// table in the module docs. Total on valid input: every ample class with a
/// consistent tag yields an exact value or an interval.
pub fn seshadri_at_point(
    space: &SpaceSpec,
    e1: &HnData,
    e2: &HnData,
    l: &DivisorClass,
    point: PointTag,
) -> Result<SeshadriResult> {
    check_space_consistency(space, e1, e2)?;
    let [a, b, c] = ample_tau_coords(space, l)?;
    check_point_tag(point, e1, e2)?;

    let both_unstable = !e1.is_semistable() && !e2.is_semistable();

    // Case 1: a is a minimum.
    if a <= b && a <= c {
        return Ok(SeshadriResult::exact(
            a,
            Justification::Thm411,
            vec!["ample", "a-minimal"],
        ));
    }
    // Case 2: b is a minimum.
    if b <= a && b <= c {
        return Ok(SeshadriResult::exact(
            b,
            Justification::Thm412,
            vec!["ample", "b-minimal"],
        ));
    }
    // From here on c is the strict minimum.
    debug_assert!(c < a && c < b);

    // Case 3: point on a delta3bar curve.
    if c < a && c < b && point == PointTag::OnDelta3barCurve && both_unstable {
        return Ok(SeshadriResult::exact(
            c,
            Justification::Thm43iii,
            vec!["ample", "c-minimal", "both-unstable", "point-on-delta3bar-curve"],
        ));
    }
    // Case 4: c <= a <= b with E1 rank-2 normalized.
    if a <= b && both_unstable && rank2_normalized(e1) {
        return Ok(if point == PointTag::InBminusTau1 {
            SeshadriResult::interval(
                c,
                a,
                Justification::Thm43iBound,
                vec![
                    "ample",
                    "c-minimal",
                    "both-unstable",
                    "e1-rank2-normalized",
                    "point-in-Bminus-h1",
                ],
            )
        } else {
            SeshadriResult::exact(
                a,
                Justification::Thm43i,
                vec![
                    "ample",
                    "c-minimal",
                    "both-unstable",
                    "e1-rank2-normalized",
                    "point-outside-Bminus-h1",
                ],
            )
        });
    }
    // Case 5: c <= b <= a with E2 rank-2 normalized.
    if b <= a && both_unstable && rank2_normalized(e2) {
        return Ok(if point == PointTag::InBminusTau2 {
            SeshadriResult::interval(
                c,
                b,
                Justification::Thm43iiBound,
                vec![
                    "ample",
                    "c-minimal",
                    "both-unstable",
                    "e2-rank2-normalized",
                    "point-in-Bminus-h2",
                ],
            )
        } else {
            SeshadriResult::exact(
                b,
                Justification::Thm43ii,
                vec![
                    "ample",
                    "c-minimal",
                    "both-unstable",
                    "e2-rank2-normalized",
                    "point-outside-Bminus-h2",
                ],
            )
        });
    }
    // Case 6: c <= b <= a, semistable E1 against a rank-2 normalized E2.
    if b <= a && e1.is_semistable() && !e2.is_semistable() && rank2_normalized(e2) {
        return Ok(if point == PointTag::InBminusTau2 {
            SeshadriResult::interval(
                c,
                b,
                Justification::Thm45ii,
                vec![
                    "ample",
                    "c-minimal",
                    "e1-semistable",
                    "e2-rank2-normalized",
                    "point-in-Bminus-h2",
                ],
            )
        } else {
            SeshadriResult::exact(
                b,
                Justification::Thm45i,
                vec![
                    "ample",
                    "c-minimal",
                    "e1-semistable",
                    "e2-rank2-normalized",
                    "point-outside-Bminus-h2",
                ],
            )
        });
    }
    // Case 7: no exact case applies; report the honest sandwich.
    let lower = a.clone().min(b.clone()).min(c);
    let upper = a.min(b);
    Ok(SeshadriResult::interval(
        lower,
        upper,
        Justification::GenericBounds,
        vec!["ample"],
    ))
}

/// Global Seshadri data of an ample `L`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalSeshadri {
    /// `eps(X, L) = inf_x eps(X, L, x)`.
    pub epsilon: SeshadriResult,
    /// Bounds for `eps(X, L, 1) = sup_x eps(X, L, x)`.
    pub epsilon_sup: SeshadriResult,
}

/// `eps(X, L) = min{a, b, c}` when both bundles are unstable; the supremum
/// `eps(X, L, 1)` is only bounded, inside `[min{a,b,c}, min{a,b}]`. When a
/// bundle is semistable the exact-infimum case does not apply and both
/// outputs degrade to the generic sandwich, flagged as such.
pub fn seshadri_global(
    space: &SpaceSpec,
    e1: &HnData,
    e2: &HnData,
    l: &DivisorClass,
) -> Result<GlobalSeshadri> {
    check_space_consistency(space, e1, e2)?;
    let [a, b, c] = ample_tau_coords(space, l)?;
    let lower = a.clone().min(b.clone()).min(c.clone());
    let upper = a.clone().min(b.clone());

    let both_unstable = !e1.is_semistable() && !e2.is_semistable();
    let epsilon_sup = SeshadriResult::interval(
        lower.clone(),
        upper.clone(),
        Justification::GenericBounds,
        if both_unstable {
            vec!["ample", "both-unstable"]
        } else {
            vec!["ample"]
        },
    );
    let epsilon = if both_unstable {
        // The infimum is attained: by a fiber line when a or b is minimal,
        // along a delta3bar curve otherwise.
        let (justification, hypotheses) = if a <= b && a <= c {
            (Justification::Thm411, vec!["ample", "both-unstable", "a-minimal"])
        } else if b <= a && b <= c {
            (Justification::Thm412, vec!["ample", "both-unstable", "b-minimal"])
        } else {
            (
                Justification::Thm43iii,
                vec!["ample", "both-unstable", "c-minimal"],
            )
        };
        SeshadriResult::exact(lower, justification, hypotheses)
    } else {
        SeshadriResult::interval(
            lower,
            upper,
            Justification::GenericBounds,
            vec!["ample", "unstability-hypothesis-not-met"],
        )
    };
    Ok(GlobalSeshadri {
        epsilon,
        epsilon_sup,
    })
}
