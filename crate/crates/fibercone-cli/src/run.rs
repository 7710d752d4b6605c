//! Job execution: envelope parsing, validation, dispatch, result documents.

use fibercone::{
    cone_slice, curve_cone_generators, is_ample, is_nef, nef_generators, pairing_matrix,
    rational, root_volume_upper, seshadri_at_point, seshadri_global, witness_cycle, BigRational,
    CurveClass, DivisorClass, Error, ErrorKind, HnData, RingClass, SpaceSpec, Term,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::schema::{
    BundleJson, DivisorParams, GeomParams, HnFromSplitParams, HnValidateParams, JobEnvelope,
    PairingParams, RingEvalParams, SeshadriGlobalParams, SeshadriPointParams, SpaceJson,
};

pub struct Options {
    pub seed: u64,
    pub max_rank: u32,
}

/// Final document plus process exit code; per-job `output_path` copies are
/// collected for the caller to write.
pub struct Outcome {
    pub document: Value,
    pub exit_code: u8,
    pub side_outputs: Vec<(String, Value)>,
}

enum JobError {
    Parse(String),
    Lib(Error),
}

impl From<Error> for JobError {
    fn from(err: Error) -> Self {
        JobError::Lib(err)
    }
}

impl JobError {
    fn exit_code(&self) -> u8 {
        match self {
            JobError::Parse(_) => 2,
            JobError::Lib(err) => match err.kind() {
                ErrorKind::Validation => 3,
                ErrorKind::Hypothesis => 4,
                ErrorKind::Inconsistency => 5,
            },
        }
    }

    fn document(&self) -> Value {
        let (kind, message) = match self {
            JobError::Parse(message) => ("parse", message.clone()),
            JobError::Lib(err) => (err.kind().as_str(), err.to_string()),
        };
        json!({ "error_kind": kind, "message": message })
    }
}

fn validation(message: impl Into<String>) -> JobError {
    JobError::Lib(Error::Invalid(message.into()))
}

/// Run a whole input text: one job object, or a list of jobs processed
/// independently in order. The exit code is 0 when every job succeeds,
/// otherwise the code of the first failing job.
pub fn run_text(text: &str, options: &Options) -> Outcome {
    let value: Value = match serde_json::from_str(text) {
        Ok(value) => value,
        Err(err) => {
            let job_err = JobError::Parse(format!("invalid JSON: {err}"));
            return Outcome {
                document: job_err.document(),
                exit_code: job_err.exit_code(),
                side_outputs: Vec::new(),
            };
        }
    };
    match value {
        Value::Array(jobs) => {
            let mut documents = Vec::with_capacity(jobs.len());
            let mut exit_code = 0u8;
            let mut side_outputs = Vec::new();
            for job in jobs {
                let (document, code, side) = run_job_value(job, options);
                if exit_code == 0 && code != 0 {
                    exit_code = code;
                }
                if let Some(side) = side {
                    side_outputs.push(side);
                }
                documents.push(document);
            }
            Outcome {
                document: Value::Array(documents),
                exit_code,
                side_outputs,
            }
        }
        other => {
            let (document, exit_code, side) = run_job_value(other, options);
            Outcome {
                document,
                exit_code,
                side_outputs: side.into_iter().collect(),
            }
        }
    }
}

fn run_job_value(value: Value, options: &Options) -> (Value, u8, Option<(String, Value)>) {
    let envelope: JobEnvelope = match serde_json::from_value(value) {
        Ok(envelope) => envelope,
        Err(err) => {
            let job_err = JobError::Parse(format!("invalid job: {err}"));
            return (job_err.document(), job_err.exit_code(), None);
        }
    };
    let output_path = envelope.output_path.clone();
    match run_job(&envelope, options) {
        Ok(document) => {
            let side = output_path.map(|path| (path, document.clone()));
            (document, 0, side)
        }
        Err(err) => (err.document(), err.exit_code(), None),
    }
}

fn run_job(envelope: &JobEnvelope, options: &Options) -> Result<Value, JobError> {
    let payload = Value::Object(envelope.payload.clone());
    match envelope.command.as_str() {
        "ring-eval" => ring_eval(parse_params(payload)?, options),
        "volume" => volume(parse_params(payload)?, options),
        "cone-nef" => cone_nef(parse_params(payload)?, options),
        "cone-curves" => cone_curves(parse_params(payload)?, options),
        "cone-check" => cone_check(parse_params(payload)?, options),
        "cone-slice" => cone_slice_cmd(parse_params(payload)?, options),
        "pairing" => pairing(parse_params(payload)?, options),
        "witness" => witness(parse_params(payload)?, options),
        "seshadri-point" => seshadri_point_cmd(parse_params(payload)?, options),
        "seshadri-global" => seshadri_global_cmd(parse_params(payload)?, options),
        "hn-validate" => hn_validate(parse_params(payload)?),
        "hn-from-split" => hn_from_split(parse_params(payload)?),
        other => Err(JobError::Parse(format!("unknown command {other:?}"))),
    }
}

fn parse_params<T: serde::de::DeserializeOwned>(payload: Value) -> Result<T, JobError> {
    serde_json::from_value(payload).map_err(|err| JobError::Parse(format!("invalid job: {err}")))
}

fn to_document<T: Serialize>(out: &T) -> Value {
    serde_json::to_value(out).expect("output documents always serialize")
}

fn parse_slope(text: &Option<String>, fallback: BigRational) -> Result<BigRational, JobError> {
    match text {
        None => Ok(fallback),
        Some(text) => rational::parse_ratio(text).map_err(JobError::Parse),
    }
}

fn build_bundle(json: &BundleJson, which: &str) -> Result<HnData, JobError> {
    let normalized = json.normalized.unwrap_or(false);
    match (&json.hn, &json.split_degrees) {
        (Some(_), Some(_)) => Err(validation(format!(
            "{which}: give either \"hn\" or \"split_degrees\", not both"
        ))),
        (None, None) => Err(validation(format!(
            "{which}: missing \"hn\" or \"split_degrees\""
        ))),
        (Some(quotients), None) => {
            Ok(HnData::new(quotients.clone(), normalized, json.genus)?)
        }
        (None, Some(degrees)) => {
            let split = HnData::from_split(degrees)?;
            Ok(HnData::new(
                split.quotients().to_vec(),
                normalized,
                json.genus,
            )?)
        }
    }
}

fn build_space(json: &SpaceJson, max_rank: u32) -> Result<SpaceSpec, JobError> {
    let mu11 = parse_slope(&json.mu11, rational::ratio(json.d1, i64::from(json.r1.max(1))))?;
    let mu21 = parse_slope(&json.mu21, rational::ratio(json.d2, i64::from(json.r2.max(1))))?;
    Ok(SpaceSpec::with_max_rank(
        json.r1, json.r2, json.d1, json.d2, mu11, mu21, max_rank,
    )?)
}

/// Resolve the geometry of a job: from an explicit space, from a bundle
/// pair, or from both (which must agree).
fn resolve_space(geom: &GeomParams, options: &Options) -> Result<SpaceSpec, JobError> {
    let from_bundles = match (&geom.e1, &geom.e2) {
        (Some(e1), Some(e2)) => {
            let e1 = build_bundle(e1, "e1")?;
            let e2 = build_bundle(e2, "e2")?;
            Some(SpaceSpec::from_bundles_with_max_rank(
                &e1,
                &e2,
                options.max_rank,
            )?)
        }
        (None, None) => None,
        _ => return Err(validation("bundles must come as a pair \"e1\", \"e2\"")),
    };
    match (&geom.space, from_bundles) {
        (Some(json), None) => build_space(json, options.max_rank),
        (None, Some(space)) => Ok(space),
        (Some(json), Some(space)) => {
            let explicit = build_space(json, options.max_rank)?;
            if explicit != space {
                return Err(validation(
                    "explicit \"space\" disagrees with the one derived from \"e1\", \"e2\"",
                ));
            }
            Ok(space)
        }
        (None, None) => Err(validation("missing geometry: give \"space\" or \"e1\"/\"e2\"")),
    }
}

fn format_matrix(matrix: &[[BigRational; 3]; 3]) -> [[String; 3]; 3] {
    matrix.each_ref().map(|row| row.each_ref().map(rational::format_ratio))
}

#[derive(Serialize)]
struct RingEvalOut {
    class: Vec<Term>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grade: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<String>,
}

fn ring_eval(params: RingEvalParams, options: &Options) -> Result<Value, JobError> {
    let space = resolve_space(&params.geom, options)?;
    let class = RingClass::reduce(&space, &params.terms);
    let grade = class.grade();
    let degree = if class.is_zero() || grade == Some(space.dim()) {
        Some(rational::format_ratio(&class.degree()?))
    } else {
        None
    };
    Ok(to_document(&RingEvalOut {
        class: class.terms(),
        grade,
        degree,
    }))
}

#[derive(Serialize)]
struct VolumeOut {
    dimension: usize,
    top_power: String,
    root: f64,
}

fn volume(params: DivisorParams, options: &Options) -> Result<Value, JobError> {
    let space = resolve_space(&params.geom, options)?;
    let root = root_volume_upper(&space, &params.divisor)?;
    let top_power = params
        .divisor
        .ring_class(&space)
        .top_self_intersection()?;
    Ok(to_document(&VolumeOut {
        dimension: space.dim(),
        top_power: rational::format_ratio(&top_power),
        root,
    }))
}

#[derive(Serialize)]
struct ConeNefOut {
    tau1: DivisorClass,
    tau2: DivisorClass,
    #[serde(rename = "F")]
    fiber: DivisorClass,
}

fn cone_nef(params: GeomParams, options: &Options) -> Result<Value, JobError> {
    let space = resolve_space(&params, options)?;
    let (tau1, tau2, fiber) = nef_generators(&space);
    Ok(to_document(&ConeNefOut { tau1, tau2, fiber }))
}

#[derive(Serialize)]
struct CurveOut {
    class: CurveClass,
    ring: Vec<Term>,
}

fn curve_out(class: CurveClass, space: &SpaceSpec) -> CurveOut {
    let ring = class.ring_class(space).terms();
    CurveOut { class, ring }
}

#[derive(Serialize)]
struct ConeCurvesOut {
    delta1: CurveOut,
    delta2: CurveOut,
    delta3: CurveOut,
    delta3bar: CurveOut,
}

fn cone_curves(params: GeomParams, options: &Options) -> Result<Value, JobError> {
    let space = resolve_space(&params, options)?;
    let (delta1, delta2, delta3bar) = curve_cone_generators(&space);
    let delta3 = CurveClass::delta([
        rational::int(0),
        rational::int(0),
        rational::int(1),
    ]);
    Ok(to_document(&ConeCurvesOut {
        delta1: curve_out(delta1, &space),
        delta2: curve_out(delta2, &space),
        delta3: curve_out(delta3, &space),
        delta3bar: curve_out(delta3bar, &space),
    }))
}

#[derive(Serialize)]
struct ConeCheckOut {
    tau: DivisorClass,
    nef: bool,
    ample: bool,
}

fn cone_check(params: DivisorParams, options: &Options) -> Result<Value, JobError> {
    let space = resolve_space(&params.geom, options)?;
    Ok(to_document(&ConeCheckOut {
        tau: params.divisor.to_tau(&space),
        nef: is_nef(&params.divisor, &space),
        ample: is_ample(&params.divisor, &space),
    }))
}

#[derive(Serialize)]
struct ConeSliceOut {
    vertices: [[String; 3]; 3],
}

fn cone_slice_cmd(params: GeomParams, options: &Options) -> Result<Value, JobError> {
    let space = resolve_space(&params, options)?;
    let vertices = cone_slice(&space).each_ref().map(|v| v.each_ref().map(rational::format_ratio));
    Ok(to_document(&ConeSliceOut { vertices }))
}

#[derive(Serialize)]
struct PairingOut {
    matrix: [[String; 3]; 3],
    identity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<u32>,
}

fn matrix_is_identity(matrix: &[[BigRational; 3]; 3]) -> bool {
    matrix.iter().enumerate().all(|(row, entries)| {
        entries.iter().enumerate().all(|(col, entry)| {
            let expected = if row == col { rational::int(1) } else { rational::int(0) };
            *entry == expected
        })
    })
}

/// Random admissible space for the pairing self-test: small ranks, bounded
/// degrees, minimal quotient slope at most the bundle slope.
fn random_space(rng: &mut ChaCha8Rng) -> SpaceSpec {
    let r1 = rng.random_range(2..=8u32);
    let r2 = rng.random_range(2..=8u32);
    let d1 = rng.random_range(-20..=20i64);
    let d2 = rng.random_range(-20..=20i64);
    let drop1 = rational::ratio(rng.random_range(0..=8i64), rng.random_range(1..=4i64));
    let drop2 = rational::ratio(rng.random_range(0..=8i64), rng.random_range(1..=4i64));
    let mu11 = rational::ratio(d1, i64::from(r1)) - drop1;
    let mu21 = rational::ratio(d2, i64::from(r2)) - drop2;
    SpaceSpec::new(r1, r2, d1, d2, mu11, mu21).expect("generated space is admissible")
}

fn pairing(params: PairingParams, options: &Options) -> Result<Value, JobError> {
    let space = resolve_space(&params.geom, options)?;
    let matrix = pairing_matrix(&space)?;
    let identity = matrix_is_identity(&matrix);
    if let Some(trials) = params.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for trial in 0..trials {
            let sample = random_space(&mut rng);
            let sample_matrix = pairing_matrix(&sample)?;
            if !matrix_is_identity(&sample_matrix) {
                return Err(JobError::Lib(Error::Inconsistency(format!(
                    "pairing self-test failed on trial {trial} for space {sample:?}"
                ))));
            }
        }
    }
    Ok(to_document(&PairingOut {
        matrix: format_matrix(&matrix),
        identity,
        trials: params.trials,
    }))
}

#[derive(Serialize)]
struct WitnessOut {
    class: CurveClass,
    ring: Vec<Term>,
    tau1_pairing: String,
    tau2_pairing: String,
}

fn witness(params: GeomParams, options: &Options) -> Result<Value, JobError> {
    let space = resolve_space(&params, options)?;
    let class = witness_cycle(&space);
    let ring = class.ring_class(&space);
    let (tau1, tau2, _) = nef_generators(&space);
    let tau1_pairing = tau1.ring_class(&space).multiply(&ring)?.degree()?;
    let tau2_pairing = tau2.ring_class(&space).multiply(&ring)?.degree()?;
    Ok(to_document(&WitnessOut {
        ring: ring.terms(),
        class,
        tau1_pairing: rational::format_ratio(&tau1_pairing),
        tau2_pairing: rational::format_ratio(&tau2_pairing),
    }))
}

fn seshadri_point_cmd(params: SeshadriPointParams, options: &Options) -> Result<Value, JobError> {
    let e1 = build_bundle(&params.e1, "e1")?;
    let e2 = build_bundle(&params.e2, "e2")?;
    let space = SpaceSpec::from_bundles_with_max_rank(&e1, &e2, options.max_rank)?;
    let result = seshadri_at_point(&space, &e1, &e2, &params.divisor, params.point)?;
    Ok(to_document(&result))
}

fn seshadri_global_cmd(
    params: SeshadriGlobalParams,
    options: &Options,
) -> Result<Value, JobError> {
    let e1 = build_bundle(&params.e1, "e1")?;
    let e2 = build_bundle(&params.e2, "e2")?;
    let space = SpaceSpec::from_bundles_with_max_rank(&e1, &e2, options.max_rank)?;
    let result = seshadri_global(&space, &e1, &e2, &params.divisor)?;
    Ok(to_document(&result))
}

#[derive(Serialize)]
struct HnValidateOut {
    valid: bool,
    bundle: HnData,
    rank: u32,
    degree: i64,
    slope: String,
    min_quotient_slope: String,
    semistable: bool,
}

fn hn_validate(params: HnValidateParams) -> Result<Value, JobError> {
    let bundle = build_bundle(&params.bundle, "bundle")?;
    Ok(to_document(&HnValidateOut {
        valid: true,
        rank: bundle.rank(),
        degree: bundle.degree(),
        slope: rational::format_ratio(&bundle.slope()),
        min_quotient_slope: rational::format_ratio(&bundle.min_quotient_slope()),
        semistable: bundle.is_semistable(),
        bundle,
    }))
}

fn hn_from_split(params: HnFromSplitParams) -> Result<Value, JobError> {
    let bundle = HnData::from_split(&params.split_degrees)?;
    Ok(to_document(&bundle))
}
