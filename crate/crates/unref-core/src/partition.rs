//! Core partition types: partitions into distinct parts, their missing parts,
//! the refinability predicate, triangular decomposition `N = n(n+1)/2 - d`,
//! the canonical near-staircase partition and part-replacement deltas.
//!
//! A partition here is a strictly increasing list of positive integers with at
//! least two parts. Values in `{1, ..., last_part}` that are not parts are its
//! *missing parts*. The partition is *refinable* when some part equals the sum
//! of two distinct missing parts, and *unrefinable* otherwise.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part {0} is not positive")]
    NonPositivePart(i64),
    #[error("duplicate part {0}")]
    DuplicatePart(i64),
    #[error("parts out of order: {prev} followed by {next}")]
    OutOfOrder { prev: i64, next: i64 },
    #[error("a partition needs at least two parts, got {0}")]
    TooFewParts(usize),
    #[error("arithmetic overflow while summing parts")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("N={0} is too small, need N >= 3")]
    TotalTooSmall(i64),
    #[error("n={0} is too small")]
    IndexTooSmall(i64),
    #[error("d={d} is out of range for n={n}")]
    DistanceOutOfRange { n: i64, d: i64 },
    #[error("value {value} is outside 1..={max}")]
    ValueOutOfRange { value: i64, max: i64 },
    #[error("largest part {last_part} incompatible with n={n}")]
    BadAreaContext { last_part: i64, n: i64 },
    #[error("arithmetic overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("removed values must be positive, distinct and ascending")]
    BadRemoved,
    #[error("added values must be positive, distinct and ascending")]
    BadAdded,
    #[error("value {0} appears in both removed and added")]
    SharedValue(i64),
    #[error("sum mismatch: removed sums to {removed}, added sums to {added}")]
    SumMismatch { removed: i64, added: i64 },
    #[error("removed value {0} is not a part of the base partition")]
    RemovedAbsent(i64),
    #[error("added value {0} is already a part")]
    AddedPresent(i64),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// A partition of `N` into distinct parts, kept ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition {
    parts: Vec<i64>,
    total: i64,
}

impl Partition {
    /// Validates and builds a partition. Parts must be positive, strictly
    /// increasing and at least two.
    pub fn new(parts: Vec<i64>) -> Result<Self, PartitionError> {
        if parts.len() < 2 {
            return Err(PartitionError::TooFewParts(parts.len()));
        }
        let mut total: i64 = 0;
        for (idx, &p) in parts.iter().enumerate() {
            if p < 1 {
                return Err(PartitionError::NonPositivePart(p));
            }
            if idx > 0 {
                let prev = parts[idx - 1];
                if p == prev {
                    return Err(PartitionError::DuplicatePart(p));
                }
                if p < prev {
                    return Err(PartitionError::OutOfOrder { prev, next: p });
                }
            }
            total = total.checked_add(p).ok_or(PartitionError::Overflow)?;
        }
        Ok(Partition { parts, total })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Number of parts, `t`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid partition always has at least two parts
    }

    /// The largest part.
    pub fn last_part(&self) -> i64 {
        *self.parts.last().expect("partition has parts")
    }

    /// The partitioned integer `N`.
    pub fn total(&self) -> i64 {
        self.total
    }

    pub fn contains(&self, value: i64) -> bool {
        self.parts.binary_search(&value).is_ok()
    }

    /// The values in `{1, ..., last_part}` that are not parts, ascending.
    pub fn missing_parts(&self) -> MissingSet {
        let mut values = Vec::new();
        let mut next = 1;
        for &p in &self.parts {
            values.extend(next..p);
            next = p + 1;
        }
        MissingSet { values }
    }

    /// The lexicographically least witness `(l, i, j)` with
    /// `missing[i] + missing[j] == parts[l]`, or `None` when unrefinable.
    /// Indices are 1-based.
    pub fn refinability_witness(&self) -> Option<RefinabilityWitness> {
        let missing = self.missing_parts();
        let mv = missing.values();
        for (l0, &p) in self.parts.iter().enumerate() {
            for (i0, &a) in mv.iter().enumerate() {
                // need a second missing value strictly larger than `a`
                if 2 * a >= p {
                    break;
                }
                if let Ok(off) = mv[i0 + 1..].binary_search(&(p - a)) {
                    return Some(RefinabilityWitness {
                        part_index: l0 + 1,
                        missing_pair: (i0 + 1, i0 + 1 + off + 1),
                    });
                }
            }
        }
        None
    }

    /// True when no part is the sum of two distinct missing parts.
    pub fn is_unrefinable(&self) -> bool {
        let mut scratch = Vec::new();
        slice_is_unrefinable(&self.parts, &mut scratch)
    }

    /// Removes `delta.removed` and inserts `delta.added`, revalidating the
    /// result. The total is preserved exactly.
    pub fn apply_delta(&self, delta: &DeltaRecord) -> Result<Partition, DeltaError> {
        let mut parts = self.parts.clone();
        for &r in delta.removed() {
            match parts.binary_search(&r) {
                Ok(pos) => {
                    parts.remove(pos);
                }
                Err(_) => return Err(DeltaError::RemovedAbsent(r)),
            }
        }
        for &a in delta.added() {
            match parts.binary_search(&a) {
                Ok(_) => return Err(DeltaError::AddedPresent(a)),
                Err(pos) => parts.insert(pos, a),
            }
        }
        let result = Partition::new(parts)?;
        debug_assert_eq!(result.total(), self.total());
        Ok(result)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = PartitionError;
    fn try_from(parts: Vec<i64>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.parts
    }
}

/// Refinability check on a raw ascending slice of distinct parts.
/// `scratch` is a reusable part-membership bitmap indexed by value.
pub fn slice_is_unrefinable(parts: &[i64], scratch: &mut Vec<bool>) -> bool {
    let last = *parts.last().expect("nonempty parts") as usize;
    scratch.clear();
    scratch.resize(last + 1, false);
    for &p in parts {
        scratch[p as usize] = true;
    }
    for &p in parts {
        let p = p as usize;
        let mut a = 1usize;
        while 2 * a < p {
            if !scratch[a] && !scratch[p - a] {
                return false;
            }
            a += 1;
        }
    }
    true
}

/// The missing parts of a partition, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingSet {
    values: Vec<i64>,
}

impl MissingSet {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Number of missing parts, `m`.
    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, value: i64) -> bool {
        self.values.binary_search(&value).is_ok()
    }
}

/// A proof that a partition is refinable: `missing[i] + missing[j] == parts[l]`.
/// All indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefinabilityWitness {
    pub part_index: usize,
    pub missing_pair: (usize, usize),
}

/// `T(n) = n(n+1)/2`, checked.
pub fn triangular(n: i64) -> i64 {
    n.checked_mul(n + 1)
        .and_then(|x| x.checked_div(2))
        .expect("triangular number overflow")
}

/// `N` written as `T(n) - d` with `0 <= d <= n-1`; `d = 0` exactly for
/// triangular `N`, otherwise the pair `(n, d)` is unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TriangularForm {
    n: i64,
    d: i64,
}

impl TriangularForm {
    pub fn new(n: i64, d: i64) -> Result<Self, DomainError> {
        if n < 2 {
            return Err(DomainError::IndexTooSmall(n));
        }
        if d < 0 || d > n - 1 {
            return Err(DomainError::DistanceOutOfRange { n, d });
        }
        Ok(TriangularForm { n, d })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn total(&self) -> i64 {
        triangular(self.n) - self.d
    }

    pub fn is_triangular(&self) -> bool {
        self.d == 0
    }
}

impl fmt::Display for TriangularForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            write!(f, "T({})", self.n)
        } else {
            write!(f, "T({},{})", self.n, self.d)
        }
    }
}

/// Decomposes `N >= 3` as `T(n) - d` with `0 <= d <= n-1`.
pub fn triangular_form(total: i64) -> Result<TriangularForm, DomainError> {
    if total < 3 {
        return Err(DomainError::TotalTooSmall(total));
    }
    let mut n = 2;
    while triangular(n) < total {
        n += 1;
    }
    let d = triangular(n) - total;
    debug_assert!((0..n).contains(&d));
    Ok(TriangularForm { n, d })
}

/// The canonical unrefinable partition `(1, 2, ..., d-1, d+1, ..., n)` of
/// `T(n) - d`, for `n >= 3` and `1 <= d <= n-1`.
pub fn canonical_pi(n: i64, d: i64) -> Result<Partition, DomainError> {
    if n < 3 {
        return Err(DomainError::IndexTooSmall(n));
    }
    if d < 1 || d > n - 1 {
        return Err(DomainError::DistanceOutOfRange { n, d });
    }
    let parts: Vec<i64> = (1..=n).filter(|&v| v != d).collect();
    let pi = Partition::new(parts).expect("canonical partition is valid");
    debug_assert_eq!(pi.total(), triangular(n) - d);
    Ok(pi)
}

#[derive(Serialize, Deserialize)]
struct DeltaRaw {
    removed: Vec<i64>,
    added: Vec<i64>,
}

/// Parts to remove from a base partition and replacements to insert, with
/// equal sums so that the total is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DeltaRaw", into = "DeltaRaw")]
pub struct DeltaRecord {
    removed: Vec<i64>,
    added: Vec<i64>,
}

fn ascending_distinct_positive(values: &[i64]) -> bool {
    values.iter().all(|&v| v >= 1) && values.windows(2).all(|w| w[0] < w[1])
}

impl DeltaRecord {
    pub fn new(removed: Vec<i64>, added: Vec<i64>) -> Result<Self, DeltaError> {
        if !ascending_distinct_positive(&removed) {
            return Err(DeltaError::BadRemoved);
        }
        if !ascending_distinct_positive(&added) {
            return Err(DeltaError::BadAdded);
        }
        if let Some(&v) = removed.iter().find(|v| added.binary_search(v).is_ok()) {
            return Err(DeltaError::SharedValue(v));
        }
        let sum = |xs: &[i64]| -> i64 { xs.iter().sum() };
        let (rs, ads) = (sum(&removed), sum(&added));
        if rs != ads {
            return Err(DeltaError::SumMismatch {
                removed: rs,
                added: ads,
            });
        }
        Ok(DeltaRecord { removed, added })
    }

    /// The identity delta.
    pub fn empty() -> Self {
        DeltaRecord {
            removed: Vec::new(),
            added: Vec::new(),
        }
    }

    pub fn removed(&self) -> &[i64] {
        &self.removed
    }

    pub fn added(&self) -> &[i64] {
        &self.added
    }

    /// Number of removed parts, `h`.
    pub fn removed_count(&self) -> usize {
        self.removed.len()
    }

    /// Number of added parts, `j`.
    pub fn added_count(&self) -> usize {
        self.added.len()
    }
}

impl TryFrom<DeltaRaw> for DeltaRecord {
    type Error = DeltaError;
    fn try_from(raw: DeltaRaw) -> Result<Self, Self::Error> {
        DeltaRecord::new(raw.removed, raw.added)
    }
}

impl From<DeltaRecord> for DeltaRaw {
    fn from(d: DeltaRecord) -> DeltaRaw {
        DeltaRaw {
            removed: d.removed,
            added: d.added,
        }
    }
}

/// The three intervals of `{1, ..., last_part - 1}` an unrefinable partition's
/// parts can occupy: first `[1, last-n-1]`, free `[last-n, n]`, last `[n+1, last-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Area {
    First,
    Free,
    Last,
}

pub fn area_of(value: i64, last_part: i64, n: i64) -> Result<Area, DomainError> {
    if last_part <= n || last_part > 2 * n - 2 {
        return Err(DomainError::BadAreaContext { last_part, n });
    }
    if value < 1 || value > last_part - 1 {
        return Err(DomainError::ValueOutOfRange {
            value,
            max: last_part - 1,
        });
    }
    if value < last_part - n {
        Ok(Area::First)
    } else if value <= n {
        Ok(Area::Free)
    } else {
        Ok(Area::Last)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn make_partition_accepts_smallest_case() {
        let q = p(&[1, 2, 3]);
        assert_eq!(q.total(), 6);
        assert_eq!(q.last_part(), 3);
        assert_eq!(q.len(), 3);
    }

    #[test]
    fn make_partition_rejects_each_defect_distinctly() {
        assert_eq!(
            Partition::new(vec![1, 3, 3]),
            Err(PartitionError::DuplicatePart(3))
        );
        assert_eq!(
            Partition::new(vec![5]),
            Err(PartitionError::TooFewParts(1))
        );
        assert_eq!(
            Partition::new(vec![3, 1]),
            Err(PartitionError::OutOfOrder { prev: 3, next: 1 })
        );
        assert_eq!(
            Partition::new(vec![0, 2]),
            Err(PartitionError::NonPositivePart(0))
        );
        assert_eq!(
            Partition::new(vec![-1, 2]),
            Err(PartitionError::NonPositivePart(-1))
        );
    }

    #[test]
    fn missing_parts_examples() {
        assert!(p(&[1, 2, 3]).missing_parts().is_empty());
        assert_eq!(p(&[1, 2, 4, 5, 8]).missing_parts().values(), &[3, 6, 7]);
        assert_eq!(p(&[2, 4]).missing_parts().values(), &[1, 3]);
    }

    #[test]
    fn missing_parts_partition_the_prefix() {
        for q in [p(&[2, 4]), p(&[1, 2, 4, 5, 8]), p(&[3, 5, 9])] {
            let missing = q.missing_parts();
            let mut all: Vec<i64> = q.parts().to_vec();
            all.extend_from_slice(missing.values());
            all.sort_unstable();
            let expect: Vec<i64> = (1..=q.last_part()).collect();
            assert_eq!(all, expect);
        }
    }

    #[test]
    fn refinability_witness_examples() {
        // (2,4): missing {1,3}, 1+3 = 4 at part index 2
        let w = p(&[2, 4]).refinability_witness().unwrap();
        assert_eq!(w.part_index, 2);
        assert_eq!(w.missing_pair, (1, 2));
        assert!(p(&[1, 2, 3]).refinability_witness().is_none());
        assert!(p(&[1, 2, 4, 5, 8]).refinability_witness().is_none());
    }

    #[test]
    fn is_unrefinable_examples() {
        assert!(p(&[1, 2, 3]).is_unrefinable());
        assert!(!p(&[1, 5]).is_unrefinable()); // 2+3 = 5
        let mut parts: Vec<i64> = (1..=9).collect();
        parts.push(20);
        assert!(p(&parts).is_unrefinable());
    }

    #[test]
    fn triangular_form_examples() {
        let tf = triangular_form(66).unwrap();
        assert_eq!((tf.n(), tf.d()), (11, 0));
        assert!(tf.is_triangular());
        let tf = triangular_form(65).unwrap();
        assert_eq!((tf.n(), tf.d()), (11, 1));
        let tf = triangular_form(60).unwrap();
        assert_eq!((tf.n(), tf.d()), (11, 6));
        assert_eq!(tf.total(), 60);
        assert!(triangular_form(2).is_err());
    }

    #[test]
    fn canonical_pi_examples() {
        let pi = canonical_pi(5, 2).unwrap();
        assert_eq!(pi.parts(), &[1, 3, 4, 5]);
        assert_eq!(pi.total(), 13);
        let pi = canonical_pi(11, 5).unwrap();
        assert_eq!(pi.parts(), &[1, 2, 3, 4, 6, 7, 8, 9, 10, 11]);
        assert_eq!(pi.total(), 61);
        assert!(canonical_pi(3, 3).is_err());
    }

    #[test]
    fn canonical_pi_is_unrefinable_over_a_range() {
        for n in 3..=30 {
            for d in 1..n {
                assert!(canonical_pi(n, d).unwrap().is_unrefinable(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn apply_delta_examples() {
        let base = canonical_pi(11, 5).unwrap();
        let delta = DeltaRecord::new(vec![6, 7, 9], vec![5, 17]).unwrap();
        let out = base.apply_delta(&delta).unwrap();
        assert_eq!(out.parts(), &[1, 2, 3, 4, 5, 8, 10, 11, 17]);
        assert_eq!(out.total(), 61);

        let delta = DeltaRecord::new(vec![8, 10, 11], vec![12, 17]).unwrap();
        let out = base.apply_delta(&delta).unwrap();
        assert_eq!(out.parts(), &[1, 2, 3, 4, 6, 7, 9, 12, 17]);
        assert_eq!(out.total(), 61);

        assert_eq!(base.apply_delta(&DeltaRecord::empty()).unwrap(), base);
    }

    #[test]
    fn apply_delta_error_paths() {
        let base = p(&[1, 2, 4]);
        let delta = DeltaRecord::new(vec![3], vec![3]);
        assert_eq!(delta, Err(DeltaError::SharedValue(3)));
        let delta = DeltaRecord::new(vec![3], vec![1, 2]).unwrap();
        assert_eq!(
            base.apply_delta(&delta),
            Err(DeltaError::RemovedAbsent(3))
        );
        let delta = DeltaRecord::new(vec![4], vec![1, 3]).unwrap();
        assert_eq!(base.apply_delta(&delta), Err(DeltaError::AddedPresent(1)));
        assert_eq!(
            DeltaRecord::new(vec![5], vec![1, 2]),
            Err(DeltaError::SumMismatch { removed: 5, added: 3 })
        );
    }

    #[test]
    fn area_classification() {
        assert_eq!(area_of(1, 20, 11).unwrap(), Area::First);
        assert_eq!(area_of(8, 20, 11).unwrap(), Area::First);
        assert_eq!(area_of(9, 20, 11).unwrap(), Area::Free);
        assert_eq!(area_of(11, 20, 11).unwrap(), Area::Free);
        assert_eq!(area_of(12, 20, 11).unwrap(), Area::Last);
        assert_eq!(area_of(19, 20, 11).unwrap(), Area::Last);
        assert!(area_of(20, 20, 11).is_err());
        assert!(area_of(0, 20, 11).is_err());
        assert!(area_of(1, 21, 11).is_err());
    }

    #[test]
    fn serde_round_trips() {
        let q = p(&[1, 2, 3, 4, 5, 8, 10, 11, 17]);
        let js = serde_json::to_string(&q).unwrap();
        assert_eq!(js, "[1,2,3,4,5,8,10,11,17]");
        let back: Partition = serde_json::from_str(&js).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Partition>("[2,2]").is_err());

        let delta = DeltaRecord::new(vec![6, 7, 9], vec![5, 17]).unwrap();
        let js = serde_json::to_string(&delta).unwrap();
        assert_eq!(js, r#"{"removed":[6,7,9],"added":[5,17]}"#);
        let back: DeltaRecord = serde_json::from_str(&js).unwrap();
        assert_eq!(back, delta);
        assert!(serde_json::from_str::<DeltaRecord>(r#"{"removed":[1],"added":[2]}"#).is_err());
    }
}
