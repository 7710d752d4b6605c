//! Raw JSON shapes accepted by the CLI, prior to validation.

use fibercone::{DivisorClass, HnQuotient, PointTag, Term};
use serde::Deserialize;
use serde_json::{Map, Value};

/// Common envelope of every job: a command name, an optional per-job output
/// file, and the command-specific remainder of the object.
#[derive(Debug, Deserialize)]
pub struct JobEnvelope {
    pub command: String,
    #[serde(default)]
    pub output_path: Option<String>,
    #[serde(flatten)]
    pub payload: Map<String, Value>,
}

/// Space description; the minimal quotient slopes default to `d_i / r_i`
/// (semistable bundles) when omitted.
#[derive(Debug, Deserialize)]
pub struct SpaceJson {
    pub r1: u32,
    pub r2: u32,
    pub d1: i64,
    pub d2: i64,
    #[serde(default)]
    pub mu11: Option<String>,
    #[serde(default)]
    pub mu21: Option<String>,
}

/// Bundle description: either explicit HN quotients or a split bundle given
/// by its line-bundle degrees.
#[derive(Debug, Deserialize)]
pub struct BundleJson {
    #[serde(default)]
    pub hn: Option<Vec<HnQuotient>>,
    #[serde(default)]
    pub split_degrees: Option<Vec<i64>>,
    #[serde(default)]
    pub normalized: Option<bool>,
    #[serde(default)]
    pub genus: Option<u32>,
}

/// The geometry source for ring and cone commands: an explicit space, two
/// bundles, or both (cross-checked).
#[derive(Debug, Deserialize)]
pub struct GeomParams {
    #[serde(default)]
    pub space: Option<SpaceJson>,
    #[serde(default)]
    pub e1: Option<BundleJson>,
    #[serde(default)]
    pub e2: Option<BundleJson>,
}

#[derive(Debug, Deserialize)]
pub struct RingEvalParams {
    #[serde(flatten)]
    pub geom: GeomParams,
    pub terms: Vec<Term>,
}

#[derive(Debug, Deserialize)]
pub struct DivisorParams {
    #[serde(flatten)]
    pub geom: GeomParams,
    pub divisor: DivisorClass,
}

#[derive(Debug, Deserialize)]
pub struct PairingParams {
    #[serde(flatten)]
    pub geom: GeomParams,
    /// Optional randomized self-test: also check this many random spaces.
    #[serde(default)]
    pub trials: Option<u32>,
}

#[derive(Debug, Deserialize)]
pub struct SeshadriPointParams {
    pub e1: BundleJson,
    pub e2: BundleJson,
    pub divisor: DivisorClass,
    pub point: PointTag,
}

#[derive(Debug, Deserialize)]
pub struct SeshadriGlobalParams {
    pub e1: BundleJson,
    pub e2: BundleJson,
    pub divisor: DivisorClass,
}

#[derive(Debug, Deserialize)]
pub struct HnValidateParams {
    pub bundle: BundleJson,
}

#[derive(Debug, Deserialize)]
pub struct HnFromSplitParams {
    pub split_degrees: Vec<i64>,
}
