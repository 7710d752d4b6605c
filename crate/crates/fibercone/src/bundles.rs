//! Harder-Narasimhan data of a vector bundle on a smooth curve.
//!
//! A bundle enters the calculator only through the ranks and degrees of the
//! graded quotients of its Harder-Narasimhan filtration, listed from the
//! smallest slope upward. Nothing here builds filtrations from bundle
//! presentations; split bundles get a convenience constructor and everything
//! else is declared input.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numring::{SpaceSpec, DEFAULT_MAX_RANK};
use crate::rational;

/// One graded piece of the filtration: `(rank, degree)` of a semistable
/// quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct HnQuotient {
    pub rank: u32,
    pub degree: i64,
}

impl HnQuotient {
    pub fn new(rank: u32, degree: i64) -> Self {
        Self { rank, degree }
    }

    pub fn slope(&self) -> BigRational {
        rational::ratio(self.degree, i64::from(self.rank))
    }
}

fn is_false(flag: &bool) -> bool {
    !*flag
}

/// Validated Harder-Narasimhan data: quotients with strictly increasing
/// slopes, the first being the minimal-slope quotient. The `normalized` flag
/// declares the rank-2 normalization used by the exact Seshadri cases; it is
/// validated against its numerical consequence `d_1 <= -1`. The genus is
/// carried as inert metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnData {
    #[serde(rename = "hn")]
    quotients: Vec<HnQuotient>,
    #[serde(skip_serializing_if = "is_false")]
    normalized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<u32>,
}

impl HnData {
    /// Validating constructor.
    ///
    /// Errors: zero-rank quotient, non-increasing slopes, or a `normalized`
    /// flag whose consequences (`rank 2`, two quotients, `n_1 = 1`,
    /// `d_1 <= -1`) fail.
    pub fn new(quotients: Vec<HnQuotient>, normalized: bool, genus: Option<u32>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::EmptyInput("harder-narasimhan quotient list"));
        }
        for (index, quotient) in quotients.iter().enumerate() {
            if quotient.rank == 0 {
                return Err(Error::ZeroRankQuotient { index });
            }
        }
        for index in 1..quotients.len() {
            if quotients[index].slope() <= quotients[index - 1].slope() {
                return Err(Error::SlopeOrdering { index });
            }
        }
        let data = Self {
            quotients,
            normalized,
            genus,
        };
        if normalized {
            if data.rank() != 2 || data.quotients.len() != 2 || data.quotients[0].rank != 1 {
                return Err(Error::Normalization(
                    "flag requires a rank-2 unstable bundle with two line quotients".to_string(),
                ));
            }
            if data.quotients[0].degree > -1 {
                return Err(Error::Normalization(format!(
                    "flag requires minimal quotient degree <= -1, got {}",
                    data.quotients[0].degree
                )));
            }
        }
        Ok(data)
    }

    /// HN data of a direct sum of line bundles with the given degrees:
    /// summands of equal degree group into one semistable quotient, smallest
    /// degree first.
    pub fn from_split(line_degrees: &[i64]) -> Result<Self> {
        if line_degrees.is_empty() {
            return Err(Error::EmptyInput("split line-bundle degree list"));
        }
        let mut counts: std::collections::BTreeMap<i64, u32> = std::collections::BTreeMap::new();
        for &degree in line_degrees {
            *counts.entry(degree).or_insert(0) += 1;
        }
        let quotients = counts
            .into_iter()
            .map(|(value, multiplicity)| {
                HnQuotient::new(multiplicity, i64::from(multiplicity) * value)
            })
            .collect();
        Self::new(quotients, false, None)
    }

    pub fn quotients(&self) -> &[HnQuotient] {
        &self.quotients
    }

    /// Total rank, the sum over quotients.
    pub fn rank(&self) -> u32 {
        self.quotients.iter().map(|q| q.rank).sum()
    }

    /// Total degree, the sum over quotients.
    pub fn degree(&self) -> i64 {
        self.quotients.iter().map(|q| q.degree).sum()
    }

    /// Slope of the whole bundle, degree over rank.
    pub fn slope(&self) -> BigRational {
        rational::ratio(self.degree(), i64::from(self.rank()))
    }

    /// Slope of the first quotient: the smallest slope of any torsion-free
    /// quotient. Equals `slope()` exactly when the bundle is semistable.
    pub fn min_quotient_slope(&self) -> BigRational {
        self.quotients[0].slope()
    }

    /// Semistable means a single graded piece.
    pub fn is_semistable(&self) -> bool {
        self.quotients.len() == 1
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn genus(&self) -> Option<u32> {
        self.genus
    }
}

impl SpaceSpec {
    /// Space of `P(E1) x_C P(E2)` from the HN data of the two bundles, with
    /// the default rank cap.
    pub fn from_bundles(e1: &HnData, e2: &HnData) -> Result<SpaceSpec> {
        Self::from_bundles_with_max_rank(e1, e2, DEFAULT_MAX_RANK)
    }

    pub fn from_bundles_with_max_rank(
        e1: &HnData,
        e2: &HnData,
        max_rank: u32,
    ) -> Result<SpaceSpec> {
        SpaceSpec::with_max_rank(
            e1.rank(),
            e2.rank(),
            e1.degree(),
            e2.degree(),
            e1.min_quotient_slope(),
            e2.min_quotient_slope(),
            max_rank,
        )
    }
}

/// Check that a space was derived from these bundles: ranks, degrees and
/// minimal quotient slopes must all agree.
pub fn check_space_consistency(space: &SpaceSpec, e1: &HnData, e2: &HnData) -> Result<()> {
    let pairs = [
        ("E1", e1, space.r1(), space.d1(), space.mu11()),
        ("E2", e2, space.r2(), space.d2(), space.mu21()),
    ];
    for (which, bundle, rank, degree, min_slope) in pairs {
        if bundle.rank() != rank {
            return Err(Error::BundleMismatch(format!(
                "{which} has rank {}, space expects {rank}",
                bundle.rank()
            )));
        }
        if bundle.degree() != degree {
            return Err(Error::BundleMismatch(format!(
                "{which} has degree {}, space expects {degree}",
                bundle.degree()
            )));
        }
        if bundle.min_quotient_slope() != *min_slope {
            return Err(Error::BundleMismatch(format!(
                "{which} has minimal quotient slope {}, space expects {}",
                rational::format_ratio(&bundle.min_quotient_slope()),
                rational::format_ratio(min_slope)
            )));
        }
    }
    Ok(())
}
