//! Shared helpers for the integration and acceptance suites: an independent
//! naive-rewriting oracle for the ring, and seeded random generators for
//! spaces, bundles and classes.

#![allow(dead_code)]

use fibercone::rational::ratio;
use fibercone::{
    DivisorClass, HnData, HnQuotient, PointTag, RingClass, SpaceSpec, Term,
};
use num_rational::BigRational;
use num_traits::Zero;
use rand::prelude::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Wrap a criterion body so one PASS/FAIL line is always printed, then
/// propagate any failure to the harness.
pub fn criterion(number: u32, name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let result = std::panic::catch_unwind(body);
    match &result {
        Ok(()) => println!("acceptance criterion {number} ({name}): PASS"),
        Err(_) => println!("acceptance criterion {number} ({name}): FAIL"),
    }
    if let Err(panic) = result {
        std::panic::resume_unwind(panic);
    }
}

// ---------------------------------------------------------------------------
// Naive rewrite oracle
// ---------------------------------------------------------------------------

/// One raw term during naive rewriting.
type RawTerm = (u32, u32, u32, BigRational);

/// Single-step rewrite rules of the quotient ring, numbered for random
/// selection. A rule either deletes the term or replaces it.
fn applicable_rules(space: &SpaceSpec, term: &RawTerm) -> Vec<u8> {
    let (e, a, b, _) = term;
    let (r1, r2) = (space.r1(), space.r2());
    let top = space.dim() as u64;
    let mut rules = Vec::new();
    if *e >= 2 {
        rules.push(1); // F^2 = 0
    }
    if *a > r1 {
        rules.push(2); // h1^(r1+1) = 0
    }
    if *b > r2 {
        rules.push(3); // h2^(r2+1) = 0
    }
    if *e >= 1 && *a >= r1 {
        rules.push(4); // F * h1^r1 = 0
    }
    if *e >= 1 && *b >= r2 {
        rules.push(5); // F * h2^r2 = 0
    }
    if *e == 0 && *a >= r1 {
        rules.push(6); // h1^r1 -> d1 * F * h1^(r1-1)
    }
    if *e == 0 && *b >= r2 {
        rules.push(7); // h2^r2 -> d2 * F * h2^(r2-1)
    }
    if u64::from(*e) + u64::from(*a) + u64::from(*b) > top {
        rules.push(8); // codimension beyond dim X
    }
    rules
}

fn apply_rule(space: &SpaceSpec, term: RawTerm, rule: u8) -> Option<RawTerm> {
    let (e, a, b, coeff) = term;
    match rule {
        1 | 2 | 3 | 4 | 5 | 8 => None,
        6 => Some((e + 1, a - 1, b, coeff * ratio(space.d1(), 1))),
        7 => Some((e + 1, a, b - 1, coeff * ratio(space.d2(), 1))),
        _ => unreachable!("unknown rule"),
    }
}

/// Rewrite a raw polynomial to its fixpoint, picking the term and the rule
/// at random each step, then canonicalize. Independent of
/// [`RingClass::reduce`] by construction.
pub fn naive_fixpoint(
    space: &SpaceSpec,
    raw: &[Term],
    rng: &mut ChaCha8Rng,
) -> BTreeMap<(u32, u32, u32), BigRational> {
    let mut terms: Vec<RawTerm> = raw
        .iter()
        .map(|t| (t.e, t.a, t.b, t.coeff.clone()))
        .collect();
    loop {
        let rewritable: Vec<(usize, Vec<u8>)> = terms
            .iter()
            .enumerate()
            .filter_map(|(index, term)| {
                let rules = applicable_rules(space, term);
                (!rules.is_empty()).then_some((index, rules))
            })
            .collect();
        let Some((index, rules)) = rewritable.choose(rng).cloned() else {
            break;
        };
        let rule = *rules.choose(rng).expect("nonempty rule list");
        let term = terms.swap_remove(index);
        if let Some(rewritten) = apply_rule(space, term, rule) {
            terms.push(rewritten);
        }
    }
    let mut merged: BTreeMap<(u32, u32, u32), BigRational> = BTreeMap::new();
    for (e, a, b, coeff) in terms {
        *merged.entry((e, a, b)).or_insert_with(BigRational::zero) += coeff;
    }
    merged.retain(|_, coeff| !coeff.is_zero());
    merged
}

/// The implementation-side view of a class, keyed the same way as the
/// oracle output.
pub fn class_table(class: &RingClass) -> BTreeMap<(u32, u32, u32), BigRational> {
    class
        .terms()
        .into_iter()
        .map(|term| ((term.e, term.a, term.b), term.coeff))
        .collect()
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

/// Random positive rational with small numerator and denominator.
pub fn random_positive_ratio(rng: &mut ChaCha8Rng) -> BigRational {
    ratio(rng.random_range(1..=12), rng.random_range(1..=6))
}

/// Random rational in a symmetric range, possibly negative or zero.
pub fn random_ratio(rng: &mut ChaCha8Rng) -> BigRational {
    ratio(rng.random_range(-9..=9), rng.random_range(1..=6))
}

/// Admissible random space: `2 <= r_i <= 9`, `|d_i| <= 50`, minimal quotient
/// slopes at most the bundle slopes.
pub fn random_space(rng: &mut ChaCha8Rng) -> SpaceSpec {
    let r1 = rng.random_range(2..=9u32);
    let r2 = rng.random_range(2..=9u32);
    let d1 = rng.random_range(-50..=50i64);
    let d2 = rng.random_range(-50..=50i64);
    let drop1 = ratio(rng.random_range(0..=10), rng.random_range(1..=4));
    let drop2 = ratio(rng.random_range(0..=10), rng.random_range(1..=4));
    let mu11 = ratio(d1, i64::from(r1)) - drop1;
    let mu21 = ratio(d2, i64::from(r2)) - drop2;
    SpaceSpec::new(r1, r2, d1, d2, mu11, mu21).expect("generated space is admissible")
}

/// Random raw terms with exponents beyond the normal-form ranges, so every
/// rewrite rule gets exercised.
pub fn random_terms(rng: &mut ChaCha8Rng, space: &SpaceSpec, count: usize) -> Vec<Term> {
    (0..count)
        .map(|_| {
            Term::new(
                rng.random_range(0..=3u32),
                rng.random_range(0..=space.r1() + 2),
                rng.random_range(0..=space.r2() + 2),
                ratio(rng.random_range(-9..=9), rng.random_range(1..=9)),
            )
        })
        .collect()
}

/// Random valid HN data of total rank at least 2.
pub fn random_bundle(rng: &mut ChaCha8Rng) -> HnData {
    loop {
        let pieces = rng.random_range(1..=3usize);
        let mut candidates: Vec<HnQuotient> = (0..pieces)
            .map(|_| HnQuotient::new(rng.random_range(1..=3u32), rng.random_range(-10..=10i64)))
            .collect();
        candidates.sort_by_key(|quotient| quotient.slope());
        candidates.dedup_by(|next, prev| next.slope() == prev.slope());
        if candidates.iter().map(|q| q.rank).sum::<u32>() < 2 {
            continue;
        }
        return HnData::new(candidates, false, None).expect("sorted distinct slopes are valid");
    }
}

/// Random rank-2 unstable bundle carrying the normalized flag.
pub fn random_rank2_normalized(rng: &mut ChaCha8Rng) -> HnData {
    let low = rng.random_range(-5..=-1i64);
    let high = rng.random_range(low + 1..=low + 6);
    HnData::new(
        vec![HnQuotient::new(1, low), HnQuotient::new(1, high)],
        true,
        None,
    )
    .expect("normalized rank-2 data is valid")
}

/// Random ample divisor class in tau coordinates.
pub fn random_ample(rng: &mut ChaCha8Rng) -> DivisorClass {
    DivisorClass::tau([
        random_positive_ratio(rng),
        random_positive_ratio(rng),
        random_positive_ratio(rng),
    ])
}

/// Random point tag consistent with the two bundles: the `B_-` tags are only
/// declared on the unstable side.
pub fn random_valid_tag(rng: &mut ChaCha8Rng, e1: &HnData, e2: &HnData) -> PointTag {
    let mut tags = vec![PointTag::Generic, PointTag::OnDelta3barCurve];
    if !e1.is_semistable() {
        tags.push(PointTag::InBminusTau1);
    }
    if !e2.is_semistable() {
        tags.push(PointTag::InBminusTau2);
    }
    *tags.choose(rng).expect("tag list nonempty")
}

/// Brute-force oracle for the Seshadri constant on a product of projective
/// spaces: minimize `(a*y + b*x) / m` over curve types `x, y <= 8` with
/// multiplicity `1 <= m <= x + y`, `(x, y) != (0, 0)`.
pub fn grid_minimum(a: &BigRational, b: &BigRational) -> BigRational {
    let mut best: Option<BigRational> = None;
    for x in 0..=8i64 {
        for y in 0..=8i64 {
            if x == 0 && y == 0 {
                continue;
            }
            for m in 1..=(x + y) {
                let value = (a * ratio(y, 1) + b * ratio(x, 1)) / ratio(m, 1);
                if best.as_ref().is_none_or(|current| value < *current) {
                    best = Some(value);
                }
            }
        }
    }
    best.expect("grid is nonempty")
}
