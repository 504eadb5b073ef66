//! The reduced representation of maximal unrefinable partitions and the two
//! bijections onto plain distinct-part partitions.
//!
//! A maximal partition of `T(n) - d` with `d >= 3` is pinned down by its
//! missing parts that are at most `n-3` (its *reduced form*): the free-area
//! pattern is recovered from the sum constraint and everything else is
//! mirror-forced. Complementation `v -> n-2-v` then carries reduced forms to
//! distinct-part partitions of `k`, and doubling `x -> 2x-1` carries those to
//! odd ones, which yields generation by bijection as a third independent
//! method next to search and table constructions.

use crate::construct::{predicted_max_last_part, ConstructError};
use crate::enumerate::{distinct_partitions, gen_distinct_odd};
use crate::partition::{canonical_pi, triangular, DeltaRecord, Partition};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("(n={n}, d={d}) is outside the bijection regimes")]
    OutOfRegime { n: i64, d: i64 },
    #[error("partition is not maximal for its total: largest part {found}, expected {expected}")]
    NotMaximal { expected: i64, found: i64 },
    #[error("reduced value {value} outside 1..={max}")]
    BadReducedValue { value: i64, max: i64 },
    #[error("star partition value {value} outside 1..={max}")]
    BadStarValue { value: i64, max: i64 },
    #[error("values must be positive, distinct and ascending")]
    BadValues,
    #[error("no consistent expansion: {0}")]
    MalformedForm(String),
    #[error("expansion matched more than one free-area pattern: {0}")]
    AmbiguousExpansion(String),
    #[error("star partition {0:?} fits no class")]
    UnclassifiableStar(Vec<i64>),
    #[error("odd-parts partition needs an even number of parts, got {0}")]
    OddLength(usize),
    #[error("part {0} is even")]
    EvenPart(i64),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

fn ascending_distinct_positive(values: &[i64]) -> bool {
    values.iter().all(|&v| v >= 1) && values.windows(2).all(|w| w[0] < w[1])
}

/// Context a reduced form lives in: the triangular index, the distance and
/// the largest part of the partitions it represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedCtx {
    pub n: i64,
    pub d: i64,
    pub last_part: i64,
}

impl ReducedCtx {
    /// Context for `(n, d)` with `d >= 3`; the largest part is implied.
    pub fn new(n: i64, d: i64) -> Result<Self, BijectionError> {
        if d < 3 {
            return Err(BijectionError::OutOfRegime { n, d });
        }
        let last_part = predicted_max_last_part(n, d)?;
        Ok(ReducedCtx { n, d, last_part })
    }
}

/// The missing parts `<= n-3` of a maximal partition, ascending; empty
/// exactly for the exceptional partitions `(1, ..., n-2, 2n-4)` (`d = 3`)
/// and `(1, ..., n-2, 2n-5)` (`d = 4`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    values: Vec<i64>,
    ctx: ReducedCtx,
}

impl ReducedForm {
    pub fn new(values: Vec<i64>, ctx: ReducedCtx) -> Result<Self, BijectionError> {
        if !ascending_distinct_positive(&values) {
            return Err(BijectionError::BadValues);
        }
        let max = ctx.n - 3;
        if let Some(&v) = values.iter().find(|&&v| v > max) {
            return Err(BijectionError::BadReducedValue { value: v, max });
        }
        Ok(ReducedForm { values, ctx })
    }

    pub fn empty(ctx: ReducedCtx) -> Self {
        ReducedForm {
            values: Vec::new(),
            ctx,
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn ctx(&self) -> &ReducedCtx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A partition into distinct parts that may, unlike [`Partition`], be empty
/// or a single part: the complement image of a reduced form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StarPartition {
    parts: Vec<i64>,
}

impl StarPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self, BijectionError> {
        if !ascending_distinct_positive(&parts) {
            return Err(BijectionError::BadValues);
        }
        Ok(StarPartition { parts })
    }

    pub fn empty() -> Self {
        StarPartition { parts: Vec::new() }
    }

    pub fn single(value: i64) -> Self {
        StarPartition { parts: vec![value] }
    }

    pub fn from_partition(p: &Partition) -> Self {
        StarPartition {
            parts: p.parts().to_vec(),
        }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_single(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn total(&self) -> i64 {
        self.parts.iter().sum()
    }
}

/// Class of a star partition by its smallest parts, with the recovered
/// removal count `h`. `A`..`D` classify the largest-part-`2n-4` regime,
/// `E1`..`F4` the largest-part-`2n-5` regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    A { h: i64 },
    B { h: i64 },
    C { h: i64 },
    D { h: i64 },
    E1 { h: i64 },
    E2 { h: i64 },
    E3 { h: i64 },
    E4 { h: i64 },
    F1 { h: i64 },
    F2 { h: i64 },
    F3 { h: i64 },
    F4 { h: i64 },
}

impl ClassTag {
    pub fn h(&self) -> i64 {
        match *self {
            ClassTag::A { h }
            | ClassTag::B { h }
            | ClassTag::C { h }
            | ClassTag::D { h }
            | ClassTag::E1 { h }
            | ClassTag::E2 { h }
            | ClassTag::E3 { h }
            | ClassTag::E4 { h }
            | ClassTag::F1 { h }
            | ClassTag::F2 { h }
            | ClassTag::F3 { h }
            | ClassTag::F4 { h } => h,
        }
    }
}

/// A partition into distinct odd parts with an even number of parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPartition {
    parts: Vec<i64>,
}

impl OddPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self, BijectionError> {
        if !ascending_distinct_positive(&parts) {
            return Err(BijectionError::BadValues);
        }
        if !parts.len().is_multiple_of(2) || parts.is_empty() {
            return Err(BijectionError::OddLength(parts.len()));
        }
        if let Some(&v) = parts.iter().find(|&&v| v % 2 == 0) {
            return Err(BijectionError::EvenPart(v));
        }
        Ok(OddPartition { parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always at least two parts
    }

    pub fn total(&self) -> i64 {
        self.parts.iter().sum()
    }
}

/// Reduced form of a maximal partition: its missing parts `<= n-3`.
/// The distance is recovered from the total; the largest part must match
/// the prediction for `(n, d)`.
pub fn reduce_form(p: &Partition, n: i64) -> Result<ReducedForm, BijectionError> {
    let d = triangular(n) - p.total();
    let ctx = ReducedCtx::new(n, d)?;
    if p.last_part() != ctx.last_part {
        return Err(BijectionError::NotMaximal {
            expected: ctx.last_part,
            found: p.last_part(),
        });
    }
    let values: Vec<i64> = p
        .missing_parts()
        .values()
        .iter()
        .copied()
        .take_while(|&v| v <= n - 3)
        .collect();
    ReducedForm::new(values, ctx)
}

/// Free-area triples admissible for a largest part of `2n-4` (four patterns)
/// or `2n-5` (eight patterns), as offsets from n.
fn regime_triples(last_off: i64) -> &'static [[i64; 3]] {
    if last_off == -4 {
        &[[-2, -1, 0], [-3, -2, 0], [-4, -2, -1], [-4, -3, -2]]
    } else {
        &[
            [-2, -1, 0],
            [-3, -1, 0],
            [-4, -2, 0],
            [-4, -3, 0],
            [-5, -2, -1],
            [-5, -3, -1],
            [-5, -4, -2],
            [-5, -4, -3],
        ]
    }
}

/// Rebuilds the unique maximal partition whose reduced form is `eta`.
///
/// The free-area pattern is chosen by the sum constraint among the (at most
/// eight) admissible triples; the classification guarantees uniqueness and
/// multiple matches are a hard error. The reduced values below the free area
/// are removals (or the missing distance itself), and each contributes its
/// mirror `last - v` as a replacement.
pub fn expand_form(eta: &ReducedForm) -> Result<Partition, BijectionError> {
    let ReducedCtx { n, d, last_part } = *eta.ctx();
    let base = canonical_pi(n, d).map_err(|e| BijectionError::MalformedForm(e.to_string()))?;

    if eta.is_empty() {
        // the two exceptional partitions remove only the top two parts
        if !(last_part == 2 * n - 4 && d == 3 || last_part == 2 * n - 5 && d == 4) {
            return Err(BijectionError::MalformedForm(format!(
                "empty form needs d=3 or d=4, got n={n} d={d}"
            )));
        }
        let delta = DeltaRecord::new(vec![n - 1, n], vec![d, last_part])
            .map_err(|e| BijectionError::MalformedForm(e.to_string()))?;
        return base
            .apply_delta(&delta)
            .map_err(|e| BijectionError::MalformedForm(e.to_string()));
    }

    let free_lo = last_part - n;
    let low: Vec<i64> = eta
        .values()
        .iter()
        .copied()
        .filter(|&v| v < free_lo)
        .collect();
    let removed_first: Vec<i64> = low.iter().copied().filter(|&v| v != d).collect();
    let d_is_missing = removed_first.len() != low.len();
    let free_low: Vec<i64> = eta
        .values()
        .iter()
        .copied()
        .filter(|&v| v >= free_lo)
        .collect();

    let mut matches: Vec<Partition> = Vec::new();
    for triple_off in regime_triples(last_part - 2 * n) {
        let triple: Vec<i64> = triple_off.iter().map(|o| n + o).collect();
        let mut removed = removed_first.clone();
        removed.extend_from_slice(&triple);
        let mut added: Vec<i64> = low.iter().map(|&v| last_part - v).collect();
        added.push(last_part);
        if !d_is_missing {
            added.push(d);
        }
        added.sort_unstable();
        if removed.iter().sum::<i64>() != added.iter().sum::<i64>() {
            continue;
        }
        let Ok(delta) = DeltaRecord::new(removed, added) else {
            continue;
        };
        let Ok(candidate) = base.apply_delta(&delta) else {
            continue;
        };
        if candidate.last_part() != last_part || !candidate.is_unrefinable() {
            continue;
        }
        // full round trip: the candidate must reduce back to eta, which also
        // confirms the free-area values of eta sit inside the chosen triple
        if reduce_form(&candidate, n).as_ref() != Ok(eta) {
            continue;
        }
        matches.push(candidate);
    }

    match matches.len() {
        1 => Ok(matches.pop().expect("one match")),
        0 => Err(BijectionError::MalformedForm(format!(
            "no free-area pattern fits {:?} (n={n}, d={d}, last={last_part}, free_low={free_low:?})",
            eta.values()
        ))),
        _ => Err(BijectionError::AmbiguousExpansion(format!(
            "{:?} expands to {} partitions",
            eta.values(),
            matches.len()
        ))),
    }
}

/// Complement-and-reverse: `(eta_1, ..., eta_s) -> (n-2-eta_s, ..., n-2-eta_1)`.
/// The empty form maps to the empty star, the single trivial form to a
/// single-part star.
pub fn phi(eta: &ReducedForm) -> StarPartition {
    let n = eta.ctx().n;
    let parts: Vec<i64> = eta.values().iter().rev().map(|&v| n - 2 - v).collect();
    StarPartition { parts }
}

/// Inverse of [`phi`]; every star value must be at most `n-3` so the
/// preimage values stay positive.
pub fn phi_inv(rho: &StarPartition, ctx: &ReducedCtx) -> Result<ReducedForm, BijectionError> {
    let n = ctx.n;
    if let Some(&v) = rho.parts().iter().find(|&&v| v > n - 3) {
        return Err(BijectionError::BadStarValue { value: v, max: n - 3 });
    }
    let values: Vec<i64> = rho.parts().iter().rev().map(|&v| n - 2 - v).collect();
    ReducedForm::new(values, *ctx)
}

/// Four-way classification for the largest-part-`2n-4` regime, by smallest
/// parts; a single-part star is the trivial member of class A at `h = 4`.
pub fn classify_2n4(rho: &StarPartition) -> Result<ClassTag, BijectionError> {
    let p = rho.parts();
    let s = p.len() as i64;
    match p {
        [] => Err(BijectionError::UnclassifiableStar(Vec::new())),
        [_] => Ok(ClassTag::A { h: 4 }),
        [first, ..] if *first >= 3 => Ok(ClassTag::A { h: s + 3 }),
        [2, ..] => Ok(ClassTag::C { h: s + 2 }),
        [1, 2, ..] => Ok(ClassTag::D { h: s + 1 }),
        [1, ..] => Ok(ClassTag::B { h: s + 2 }),
        _ => unreachable!("ascending distinct positive parts"),
    }
}

/// Eight-way classification for the largest-part-`2n-5` regime.
pub fn classify_2n5(rho: &StarPartition) -> Result<ClassTag, BijectionError> {
    let p = rho.parts();
    let s = p.len() as i64;
    let fail = || Err(BijectionError::UnclassifiableStar(p.to_vec()));
    if p.len() < 2 {
        return fail();
    }
    match (p[0], p[1]) {
        (f, _) if f >= 4 => Ok(ClassTag::E1 { h: s + 3 }),
        (3, _) => Ok(ClassTag::F3 { h: s + 2 }),
        (2, 3) => Ok(ClassTag::E4 { h: s + 1 }),
        (2, x) if x >= 4 => Ok(ClassTag::F2 { h: s + 2 }),
        (1, 3) => Ok(ClassTag::E3 { h: s + 1 }),
        (1, 2) => {
            if p.len() < 3 {
                fail()
            } else if p[2] == 3 {
                Ok(ClassTag::F4 { h: s })
            } else {
                Ok(ClassTag::E2 { h: s + 1 })
            }
        }
        (1, x) if x >= 4 => Ok(ClassTag::F1 { h: s + 2 }),
        _ => fail(),
    }
}

/// Part-wise `x -> 2x-1`; requires an even number of parts.
pub fn psi(p: &Partition) -> Result<OddPartition, BijectionError> {
    if !p.len().is_multiple_of(2) {
        return Err(BijectionError::OddLength(p.len()));
    }
    let parts: Vec<i64> = p.parts().iter().map(|&x| 2 * x - 1).collect();
    OddPartition::new(parts)
}

/// Part-wise `x -> (x+1)/2`, the inverse of [`psi`].
pub fn psi_inv(sigma: &OddPartition) -> Partition {
    let parts: Vec<i64> = sigma.parts().iter().map(|&x| (x + 1) / 2).collect();
    Partition::new(parts).expect("preimage of an odd partition is a valid partition")
}

/// Generates all maximal unrefinable partitions of `T(n) - d` through the
/// bijections, independently of both the search oracle and the table
/// constructions. Admissible regimes: `3 <= d <= n-7` with `n-d` odd
/// (domain: distinct partitions of `k = (n-d+1)/2` plus a trivial extra),
/// and `4 <= d <= n-8` with `n-d` even (domain: odd distinct partitions of
/// `2(k+1)`, `k = (n-d)/2`).
pub fn generate_via_bijection(n: i64, d: i64) -> Result<Vec<Partition>, BijectionError> {
    if n < 11 {
        return Err(BijectionError::Construct(ConstructError::NTooSmall(n)));
    }
    let regime_2n4 = (n - d) % 2 == 1 && (3..=n - 7).contains(&d);
    let regime_2n5 = (n - d) % 2 == 0 && (4..=n - 8).contains(&d);
    if !regime_2n4 && !regime_2n5 {
        return Err(BijectionError::OutOfRegime { n, d });
    }
    let ctx = ReducedCtx::new(n, d)?;
    let mut out = Vec::new();

    if regime_2n4 {
        let k = (n - d + 1) / 2;
        let mut stars: Vec<StarPartition> = distinct_partitions(k)
            .iter()
            .map(StarPartition::from_partition)
            .collect();
        if d == 3 {
            stars.push(StarPartition::empty());
        } else {
            stars.push(StarPartition::single(k));
        }
        for rho in stars {
            if rho.is_empty() {
                out.push(expand_form(&ReducedForm::empty(ctx))?);
            } else {
                let _tag = classify_2n4(&rho)?;
                out.push(expand_form(&phi_inv(&rho, &ctx)?)?);
            }
        }
    } else {
        let k = (n - d) / 2;
        let trivial_star = vec![1, k + 1];
        for sigma in gen_distinct_odd(2 * (k + 1)) {
            let sigma = OddPartition::new(sigma.parts().to_vec())?;
            let rho = StarPartition::from_partition(&psi_inv(&sigma));
            if d == 4 && rho.parts() == trivial_star.as_slice() {
                // this slot is taken by the exceptional partition
                out.push(expand_form(&ReducedForm::empty(ctx))?);
            } else {
                let _tag = classify_2n5(&rho)?;
                out.push(expand_form(&phi_inv(&rho, &ctx)?)?);
            }
        }
    }

    out.sort_unstable();
    let unique: BTreeSet<&Partition> = out.iter().collect();
    assert_eq!(unique.len(), out.len(), "bijection produced duplicates");
    Ok(out)
}
