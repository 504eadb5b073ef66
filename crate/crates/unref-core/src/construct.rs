//! Closed-form construction of every maximal unrefinable partition of
//! `T(n) - d` for `n >= 11`, without search.
//!
//! Each maximal partition arises from the canonical partition by removing a
//! run of parts and inserting replacements: the fixed small cases remove two
//! or three parts, and two parametrised families (largest part `2n-4`,
//! largest part `2n-5`) remove `h >= 4` parts, three of them inside the free
//! area and the rest in the first area, whose mirror images reappear as
//! replacement parts. Every candidate is re-validated; a failure here is a
//! hard error, never a silent skip.

use crate::partition::{canonical_pi, triangular, DeltaRecord, Partition};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("closed-form constructions need n >= 11, got n={0}")]
    NTooSmall(i64),
    #[error("d={d} out of range 1..={max} for n={n}")]
    DOutOfRange { n: i64, d: i64, max: i64 },
    #[error("(n={n}, d={d}) is outside this family's regime")]
    OutOfRegime { n: i64, d: i64 },
    #[error("construction produced an invalid candidate for (n={n}, d={d}): {reason}")]
    InvalidCandidate { n: i64, d: i64, reason: String },
}

fn check_nd(n: i64, d: i64) -> Result<(), ConstructError> {
    if n < 11 {
        return Err(ConstructError::NTooSmall(n));
    }
    if d < 1 || d > n - 1 {
        return Err(ConstructError::DOutOfRange { n, d, max: n - 1 });
    }
    Ok(())
}

/// The largest part of any maximal unrefinable partition of `T(n) - d`:
/// `2n-2`, `2n-3`, `2n-4` for `d = 1, 2, 3`, and for `d > 3` either `2n-5`
/// (`n-d` even) or `2n-4` (`n-d` odd).
pub fn predicted_max_last_part(n: i64, d: i64) -> Result<i64, ConstructError> {
    check_nd(n, d)?;
    Ok(match d {
        1 => 2 * n - 2,
        2 => 2 * n - 3,
        3 => 2 * n - 4,
        _ => {
            if (n - d) % 2 == 0 {
                2 * n - 5
            } else {
                2 * n - 4
            }
        }
    })
}

/// Builds, applies and validates one candidate delta against the canonical
/// partition. Any failure falsifies the encoded case analysis.
fn finish_candidate(
    n: i64,
    d: i64,
    removed: Vec<i64>,
    added: Vec<i64>,
    out: &mut Vec<(DeltaRecord, Partition)>,
    seen: &mut BTreeSet<Partition>,
) -> Result<(), ConstructError> {
    let invalid = |reason: String| ConstructError::InvalidCandidate { n, d, reason };
    let delta = DeltaRecord::new(removed, added).map_err(|e| invalid(e.to_string()))?;
    let base = canonical_pi(n, d).expect("checked range");
    let candidate = base
        .apply_delta(&delta)
        .map_err(|e| invalid(e.to_string()))?;
    let expected_last = predicted_max_last_part(n, d)?;
    if candidate.last_part() != expected_last {
        return Err(invalid(format!(
            "largest part {} instead of {expected_last} in {candidate}",
            candidate.last_part()
        )));
    }
    if candidate.total() != triangular(n) - d {
        return Err(invalid(format!("total {} in {candidate}", candidate.total())));
    }
    if !candidate.is_unrefinable() {
        return Err(invalid(format!("{candidate} is refinable")));
    }
    if !seen.insert(candidate.clone()) {
        return Err(invalid(format!("duplicate candidate {candidate}")));
    }
    out.push((delta, candidate));
    Ok(())
}

/// The fixed constructions: singletons for `d` in `{1, 2}`, for `d = 3` with
/// `n` odd and for `d` in `{n-1, n-2, n-3, n-4}`, and the two-element sets
/// for `d` in `{n-5, n-6}`.
pub fn special_cases_with_deltas(
    n: i64,
    d: i64,
) -> Result<Vec<(DeltaRecord, Partition)>, ConstructError> {
    check_nd(n, d)?;
    let mut rows: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    if d == 1 {
        rows.push((vec![n - 1, n], vec![1, 2 * n - 2]));
    } else if d == 2 {
        rows.push((vec![n - 1, n], vec![2, 2 * n - 3]));
    } else if d == 3 && n % 2 == 1 {
        rows.push((vec![n - 1, n], vec![3, 2 * n - 4]));
    } else if d == n - 1 {
        rows.push((vec![n - 3, n - 2, n], vec![n - 1, 2 * n - 4]));
    } else if d == n - 2 {
        rows.push((vec![n - 4, n - 3, n], vec![n - 2, 2 * n - 5]));
    } else if d == n - 3 {
        rows.push((vec![n - 4, n - 2, n - 1], vec![n - 3, 2 * n - 4]));
    } else if d == n - 4 {
        rows.push((vec![n - 5, n - 3, n - 1], vec![n - 4, 2 * n - 5]));
    } else if d == n - 5 {
        rows.push((vec![n - 4, n - 3, n - 2], vec![n - 5, 2 * n - 4]));
        rows.push((vec![n - 2, n - 1, n], vec![n + 1, 2 * n - 4]));
    } else if d == n - 6 {
        rows.push((vec![n - 5, n - 4, n - 2], vec![n - 6, 2 * n - 5]));
        rows.push((vec![n - 3, n - 1, n], vec![n + 1, 2 * n - 5]));
    } else {
        return Err(ConstructError::OutOfRegime { n, d });
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (removed, added) in rows {
        finish_candidate(n, d, removed, added, &mut out, &mut seen)?;
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

pub fn special_cases(n: i64, d: i64) -> Result<Vec<Partition>, ConstructError> {
    Ok(special_cases_with_deltas(n, d)?
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}

/// Required parity of the removal count `h` for a pattern row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HParity {
    Any,
    Odd,
    Even,
}

impl HParity {
    fn admits(&self, h: i64) -> bool {
        match self {
            HParity::Any => true,
            HParity::Odd => h % 2 == 1,
            HParity::Even => h % 2 == 0,
        }
    }
}

/// One parametrised removal pattern. For removal count `h`, the removed parts
/// are `a1, mid_1, ..., mid_{h-4}` in the first area plus the free-area
/// triple, where `a1 = (n + h^2 + a1_lin*h + a1_c + d)/2 + i` and the middles
/// walk down from the top of the first area, lowered by offsets summing to
/// `i`. The replacements are `d`, the mirrors `last - a` of the first-area
/// removals, and `last` itself.
struct PatternRow {
    /// free-area triple as offsets from n, ascending
    triple: [i64; 3],
    a1_c: i64,
    parity: HParity,
    /// admissible d at this h: d_min..=n - (h^2 + bound_lin*h + bound_c),
    /// with the stricter printed bound at h = 4 when `h4_strict`
    bound_c: i64,
    h4_strict: bool,
}

struct FamilyTable {
    /// largest part is 2n + last_off
    last_off: i64,
    d_min: i64,
    a1_lin: i64,
    bound_lin: i64,
    /// top of the first area is n + first_hi_off
    first_hi_off: i64,
    rows: &'static [PatternRow],
}

static TABLE1: FamilyTable = FamilyTable {
    last_off: -4,
    d_min: 3,
    a1_lin: -3,
    bound_lin: -1,
    first_hi_off: -5,
    rows: &[
        PatternRow { triple: [-2, -1, 0], a1_c: -9, parity: HParity::Any, bound_c: -7, h4_strict: true },
        PatternRow { triple: [-3, -2, 0], a1_c: -7, parity: HParity::Any, bound_c: -5, h4_strict: false },
        PatternRow { triple: [-4, -2, -1], a1_c: -5, parity: HParity::Any, bound_c: -3, h4_strict: false },
        PatternRow { triple: [-4, -3, -2], a1_c: -3, parity: HParity::Any, bound_c: -1, h4_strict: false },
    ],
};

static TABLE2: FamilyTable = FamilyTable {
    last_off: -5,
    d_min: 4,
    a1_lin: -2,
    bound_lin: 0,
    first_hi_off: -6,
    rows: &[
        PatternRow { triple: [-2, -1, 0], a1_c: -15, parity: HParity::Odd, bound_c: -11, h4_strict: false },
        PatternRow { triple: [-3, -1, 0], a1_c: -14, parity: HParity::Even, bound_c: -10, h4_strict: true },
        PatternRow { triple: [-4, -2, 0], a1_c: -12, parity: HParity::Even, bound_c: -8, h4_strict: false },
        PatternRow { triple: [-4, -3, 0], a1_c: -11, parity: HParity::Odd, bound_c: -7, h4_strict: false },
        PatternRow { triple: [-5, -2, -1], a1_c: -10, parity: HParity::Even, bound_c: -6, h4_strict: false },
        PatternRow { triple: [-5, -3, -1], a1_c: -9, parity: HParity::Odd, bound_c: -5, h4_strict: false },
        PatternRow { triple: [-5, -4, -2], a1_c: -7, parity: HParity::Odd, bound_c: -3, h4_strict: false },
        PatternRow { triple: [-5, -4, -3], a1_c: -6, parity: HParity::Even, bound_c: -2, h4_strict: false },
    ],
};

impl FamilyTable {
    fn last_part(&self, n: i64) -> i64 {
        2 * n + self.last_off
    }

    fn d_admissible(&self, row: &PatternRow, n: i64, d: i64, h: i64) -> bool {
        if h == 4 && row.h4_strict {
            // printed with a strict lower bound and a two-smaller upper bound:
            // the boundary d would collide with a1 or refine through the mirror
            return d > self.d_min && d <= n - (self.d_min + 4);
        }
        d >= self.d_min && d <= n - (h * h + self.bound_lin * h + row.bound_c)
    }

    /// Emits every partition of this family for `(n, d)`.
    fn generate(
        &self,
        n: i64,
        d: i64,
        out: &mut Vec<(DeltaRecord, Partition)>,
        seen: &mut BTreeSet<Partition>,
    ) -> Result<(), ConstructError> {
        let last = self.last_part(n);
        for row in self.rows {
            let mut h = 4;
            loop {
                // the generic bound tightens quadratically with h
                if h >= 5 && n - (h * h + self.bound_lin * h + row.bound_c) < self.d_min {
                    break;
                }
                if row.parity.admits(h) && self.d_admissible(row, n, d, h) {
                    self.generate_row(n, d, row, h, last, out, seen)?;
                }
                h += 1;
            }
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn generate_row(
        &self,
        n: i64,
        d: i64,
        row: &PatternRow,
        h: i64,
        last: i64,
        out: &mut Vec<(DeltaRecord, Partition)>,
        seen: &mut BTreeSet<Partition>,
    ) -> Result<(), ConstructError> {
        let invalid = |reason: &str| ConstructError::InvalidCandidate {
            n,
            d,
            reason: reason.to_string(),
        };
        let a1_num = n + h * h + self.a1_lin * h + row.a1_c + d;
        if a1_num % 2 != 0 {
            return Err(invalid("non-integral first removal"));
        }
        let a1_base = a1_num / 2;
        let triple = [n + row.triple[0], n + row.triple[1], n + row.triple[2]];
        let mid_count = (h - 4) as usize;
        // middles walk mid_lo..=mid_hi before offsets are applied
        let mid_hi = n + self.first_hi_off;
        let mid_lo = mid_hi - (h - 5);

        let mut emit = |firsts: &[i64]| -> Result<(), ConstructError> {
            let mut removed = firsts.to_vec();
            removed.extend_from_slice(&triple);
            let mut added = vec![d, last];
            added.extend(firsts.iter().map(|&a| last - a));
            added.sort_unstable();
            finish_candidate(n, d, removed, added, out, seen)
        };

        if mid_count == 0 {
            if a1_base < 1 || a1_base > mid_hi || a1_base == d {
                return Err(invalid("first removal out of place"));
            }
            return emit(&[a1_base]);
        }

        // offsets o_1 >= o_2 >= ... >= o_{mid_count} >= 0 lower the middles,
        // and their sum raises a1; the removals must stay ascending:
        //   a1_base + sum(o) < mid_lo - o_1
        let mut offsets = vec![0i64; mid_count];
        let mut stack_emit = |offsets: &[i64]| -> Result<(), ConstructError> {
            let total: i64 = offsets.iter().sum();
            let a1 = a1_base + total;
            let mut firsts = Vec::with_capacity(mid_count + 1);
            firsts.push(a1);
            for (r, &o) in offsets.iter().enumerate() {
                firsts.push(mid_lo + r as i64 - o);
            }
            if a1 < 1 || firsts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid("removals not ascending"));
            }
            if firsts.contains(&d) {
                return Err(invalid("removal collides with d"));
            }
            emit(&firsts)
        };
        fn rec(
            offsets: &mut Vec<i64>,
            idx: usize,
            prev: i64,
            sum: i64,
            a1_base: i64,
            mid_lo: i64,
            f: &mut dyn FnMut(&[i64]) -> Result<(), ConstructError>,
        ) -> Result<(), ConstructError> {
            if idx == offsets.len() {
                debug_assert!(a1_base + sum < mid_lo - offsets[0]);
                return f(offsets);
            }
            let mut o = 0;
            while idx == 0 || o <= prev {
                let first = if idx == 0 { o } else { offsets[0] };
                if a1_base + sum + o + first >= mid_lo {
                    break;
                }
                offsets[idx] = o;
                rec(offsets, idx + 1, o, sum + o, a1_base, mid_lo, f)?;
                o += 1;
            }
            Ok(())
        }
        rec(&mut offsets, 0, 0, 0, a1_base, mid_lo, &mut stack_emit)
    }
}

/// The family with largest part `2n-4`, for `d = n - (2k-1)` with
/// `3 <= d <= n-7`; for `d = 3` this includes the exceptional partition
/// `(1, ..., n-2, 2n-4)`.
pub fn table1_family_with_deltas(
    n: i64,
    d: i64,
) -> Result<Vec<(DeltaRecord, Partition)>, ConstructError> {
    check_nd(n, d)?;
    if (n - d) % 2 == 0 || d < 3 || d > n - 7 {
        return Err(ConstructError::OutOfRegime { n, d });
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    if d == 3 {
        finish_candidate(n, d, vec![n - 1, n], vec![3, 2 * n - 4], &mut out, &mut seen)?;
    }
    TABLE1.generate(n, d, &mut out, &mut seen)?;
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

pub fn table1_family(n: i64, d: i64) -> Result<Vec<Partition>, ConstructError> {
    Ok(table1_family_with_deltas(n, d)?
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}

/// The family with largest part `2n-5`, for `d = n - 2k` with
/// `4 <= d <= n-8`; for `d = 4` this includes the exceptional partition
/// `(1, ..., n-2, 2n-5)`.
pub fn table2_family_with_deltas(
    n: i64,
    d: i64,
) -> Result<Vec<(DeltaRecord, Partition)>, ConstructError> {
    check_nd(n, d)?;
    if (n - d) % 2 == 1 || d < 4 || d > n - 8 {
        return Err(ConstructError::OutOfRegime { n, d });
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    if d == 4 {
        finish_candidate(n, d, vec![n - 1, n], vec![4, 2 * n - 5], &mut out, &mut seen)?;
    }
    TABLE2.generate(n, d, &mut out, &mut seen)?;
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

pub fn table2_family(n: i64, d: i64) -> Result<Vec<Partition>, ConstructError> {
    Ok(table2_family_with_deltas(n, d)?
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}

/// Every maximal unrefinable partition of `T(n) - d`, dispatching to the
/// fixed cases or the two parametrised families.
pub fn construct_all_with_deltas(
    n: i64,
    d: i64,
) -> Result<Vec<(DeltaRecord, Partition)>, ConstructError> {
    check_nd(n, d)?;
    if d <= 2 || d >= n - 6 {
        special_cases_with_deltas(n, d)
    } else if d == 3 {
        if n % 2 == 1 {
            special_cases_with_deltas(n, d)
        } else {
            table1_family_with_deltas(n, d)
        }
    } else if (n - d) % 2 == 1 {
        table1_family_with_deltas(n, d)
    } else {
        table2_family_with_deltas(n, d)
    }
}

pub fn construct_all_maximal(n: i64, d: i64) -> Result<Vec<Partition>, ConstructError> {
    Ok(construct_all_with_deltas(n, d)?
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::gen_maximal_unrefinable;

    fn parts(items: &[Partition]) -> Vec<Vec<i64>> {
        items.iter().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn predicted_max_examples() {
        assert_eq!(predicted_max_last_part(11, 1).unwrap(), 20);
        assert_eq!(predicted_max_last_part(11, 2).unwrap(), 19);
        assert_eq!(predicted_max_last_part(11, 3).unwrap(), 18);
        assert_eq!(predicted_max_last_part(11, 4).unwrap(), 18); // n-d odd
        assert_eq!(predicted_max_last_part(12, 4).unwrap(), 19); // n-d even
        assert!(predicted_max_last_part(10, 1).is_err());
        assert!(predicted_max_last_part(11, 11).is_err());
    }

    #[test]
    fn special_singletons() {
        let s = special_cases(11, 1).unwrap();
        assert_eq!(parts(&s), vec![vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 20]]);
        let s = special_cases(11, 2).unwrap();
        assert_eq!(parts(&s), vec![vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 19]]);
        let s = special_cases(11, 3).unwrap(); // n odd
        assert_eq!(parts(&s), vec![vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 18]]);
        assert!(special_cases(12, 3).is_err()); // n even is a family case
        assert!(special_cases(12, 5).is_err()); // family regime
    }

    #[test]
    fn special_pairs_match_named_partitions() {
        // d = n-5, n = 11: includes (1,...,n-6,n-4,n-3,n+1,2n-4)
        let s = special_cases(11, 6).unwrap();
        assert_eq!(s.len(), 2);
        assert!(parts(&s).contains(&vec![1, 2, 3, 4, 5, 7, 8, 12, 18]));
        // d = n-6, n = 12: includes (1,...,n-7,n-5,n-4,n-2,n+1,2n-5)
        let s = special_cases(12, 6).unwrap();
        assert_eq!(s.len(), 2);
        assert!(parts(&s).contains(&vec![1, 2, 3, 4, 5, 7, 8, 10, 13, 19]));
    }

    #[test]
    fn table1_examples() {
        let f = table1_family(12, 3).unwrap();
        assert_eq!(f.len(), 3);
        assert!(parts(&f).contains(&vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20]));
        let f = table1_family(13, 6).unwrap();
        assert_eq!(f.len(), 2);
        assert!(table1_family(11, 3).is_err()); // n odd: fixed case instead
    }

    #[test]
    fn table2_examples() {
        let f = table2_family(14, 6).unwrap();
        assert_eq!(f.len(), 2);
        let f = table2_family(13, 5).unwrap();
        assert_eq!(f.len(), 2);
        let f = table2_family(12, 4).unwrap();
        assert!(parts(&f).contains(&vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 19]));
    }

    #[test]
    fn construct_all_examples() {
        let c = construct_all_maximal(11, 5).unwrap();
        assert_eq!(
            parts(&c),
            vec![
                vec![1, 2, 3, 4, 5, 8, 10, 11, 17],
                vec![1, 2, 3, 4, 6, 7, 9, 12, 17]
            ]
        );
        let c = construct_all_maximal(11, 2).unwrap();
        assert_eq!(parts(&c), vec![vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 19]]);
        assert_eq!(construct_all_maximal(14, 7).unwrap().len(), 2);
    }

    #[test]
    fn construct_matches_oracle_for_n_11_and_12() {
        for n in [11i64, 12] {
            for d in 1..n {
                let expected = gen_maximal_unrefinable(triangular(n) - d).unwrap();
                let got = construct_all_maximal(n, d).unwrap();
                assert_eq!(got, expected, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn removal_counts_match_replacement_counts() {
        // h = j when the largest part is 2n-2 or 2n-3; h = j+1 on the
        // d-missing patterns with largest part 2n-4 or 2n-5
        for n in [11i64, 12, 13] {
            for d in 1..n {
                for (delta, p) in construct_all_with_deltas(n, d).unwrap() {
                    let (h, j) = (delta.removed_count(), delta.added_count());
                    let last = p.last_part();
                    if last == 2 * n - 2 || last == 2 * n - 3 {
                        assert_eq!(h, j, "n={n} d={d} {p}");
                    } else if !p.contains(d) {
                        assert_eq!(h, j + 1, "n={n} d={d} {p}");
                    } else {
                        assert!(h == j || h == j + 1, "n={n} d={d} {p}");
                    }
                }
            }
        }
    }
}
