//! Generators and exact counts for partitions into distinct parts, odd
//! distinct parts, unrefinable partitions and maximal unrefinable partitions.
//!
//! Everything here is ground truth for the closed-form constructions: the
//! brute-force filter is the reference, the pruned search is the fast path,
//! and the two are required to agree.

use crate::partition::{slice_is_unrefinable, Partition};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("no unrefinable partitions of {0} exist")]
    EmptyUnrefinableSet(i64),
    #[error("bad count table row at line {line}: {reason}")]
    BadCountRow { line: usize, reason: String },
}

/// Emission order for generators, on ascending part lists.
/// `Lex` compares from the smallest part, `Colex` from the largest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    #[default]
    Lex,
    Colex,
}

/// Generator configuration. `min_parts` is 2 under the usual convention and 1
/// when the single-part list should be included as well.
#[derive(Debug, Clone)]
pub struct EnumConfig {
    pub min_parts: u32,
    pub order: Order,
    pub max_items: Option<usize>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            min_parts: 2,
            order: Order::Lex,
            max_items: None,
        }
    }
}

impl EnumConfig {
    pub fn with_min_parts(min_parts: u32) -> Self {
        EnumConfig {
            min_parts,
            ..EnumConfig::default()
        }
    }

    fn check(&self) {
        assert!(
            self.min_parts == 1 || self.min_parts == 2,
            "min_parts must be 1 or 2"
        );
    }
}

/// Item emitted by [`gen_distinct`]: either a proper partition or, under
/// `min_parts = 1`, the raw single-part list which is not a valid `Partition`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistinctItem {
    Proper(Partition),
    Single(i64),
}

impl DistinctItem {
    pub fn parts_vec(&self) -> Vec<i64> {
        match self {
            DistinctItem::Proper(p) => p.parts().to_vec(),
            DistinctItem::Single(n) => vec![*n],
        }
    }
}

/// Visits every partition of `total` into distinct parts in lex order on
/// ascending part lists, as raw slices. Includes the single-part list last
/// when `cfg.min_parts == 1`. Restartable and side-effect free.
pub fn for_each_distinct<F: FnMut(&[i64])>(total: i64, cfg: &EnumConfig, mut f: F) {
    cfg.check();
    if total < 1 {
        return;
    }
    let mut buf = Vec::new();
    distinct_rec(total, 1, &mut buf, &mut f);
    if cfg.min_parts == 1 {
        f(&[total]);
    }
}

fn distinct_rec<F: FnMut(&[i64])>(remaining: i64, min_next: i64, buf: &mut Vec<i64>, f: &mut F) {
    for p in min_next..=remaining {
        buf.push(p);
        if p == remaining {
            if buf.len() >= 2 {
                f(buf);
            }
        } else if remaining - p > p {
            distinct_rec(remaining - p, p + 1, buf, f);
        }
        buf.pop();
    }
}

fn order_and_cap(mut items: Vec<Partition>, cfg: &EnumConfig) -> Vec<Partition> {
    match cfg.order {
        Order::Lex => items.sort_unstable(),
        Order::Colex => items.sort_unstable_by(|a, b| a.parts().iter().rev().cmp(b.parts().iter().rev())),
    }
    if let Some(cap) = cfg.max_items {
        items.truncate(cap);
    }
    items
}

/// The set of partitions of `total` into distinct parts.
pub fn gen_distinct(total: i64, cfg: &EnumConfig) -> Vec<DistinctItem> {
    cfg.check();
    let mut proper = Vec::new();
    for_each_distinct(total, &EnumConfig::default(), |parts| {
        proper.push(Partition::new(parts.to_vec()).expect("generator emits valid partitions"));
    });
    let mut items: Vec<DistinctItem> = order_and_cap(proper, cfg)
        .into_iter()
        .map(DistinctItem::Proper)
        .collect();
    if cfg.min_parts == 1 && total >= 1 {
        // the single-part list sorts last in both orders
        items.push(DistinctItem::Single(total));
        if let Some(cap) = cfg.max_items {
            items.truncate(cap);
        }
    }
    items
}

/// Proper distinct partitions of `total` in lex order; the common case.
pub fn distinct_partitions(total: i64) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_distinct(total, &EnumConfig::default(), |parts| {
        out.push(Partition::new(parts.to_vec()).expect("generator emits valid partitions"));
    });
    out
}

/// Partitions of `total` into exactly `len >= 2` distinct parts, lex order.
pub fn gen_distinct_len(total: i64, len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_distinct(total, &EnumConfig::default(), |parts| {
        if parts.len() == len {
            out.push(Partition::new(parts.to_vec()).expect("valid"));
        }
    });
    out
}

/// Visits every partition of `total` into at least two distinct odd parts,
/// lex order, as raw slices.
pub fn for_each_distinct_odd<F: FnMut(&[i64])>(total: i64, mut f: F) {
    if total < 1 {
        return;
    }
    let mut buf = Vec::new();
    distinct_odd_rec(total, 1, &mut buf, &mut f);
}

/// Partitions of `total` into distinct odd parts (at least two), lex order.
pub fn gen_distinct_odd(total: i64) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_distinct_odd(total, |parts| {
        out.push(Partition::new(parts.to_vec()).expect("valid"));
    });
    out
}

fn distinct_odd_rec<F: FnMut(&[i64])>(remaining: i64, min_next: i64, buf: &mut Vec<i64>, f: &mut F) {
    let mut p = if min_next % 2 == 1 { min_next } else { min_next + 1 };
    while p <= remaining {
        buf.push(p);
        if p == remaining {
            if buf.len() >= 2 {
                f(buf);
            }
        } else if remaining - p > p {
            distinct_odd_rec(remaining - p, p + 2, buf, f);
        }
        buf.pop();
        p += 2;
    }
}

/// Exact count of partitions of `total` into distinct parts, by dynamic
/// programming. Must agree with the generator cardinality.
pub fn count_distinct(total: i64, cfg: &EnumConfig) -> u64 {
    cfg.check();
    if total < 1 {
        return 0;
    }
    let all = count_distinct_dp(total, false);
    if cfg.min_parts == 1 {
        all
    } else {
        all - 1 // drop the single-part list
    }
}

/// Exact count of partitions of `total` into at least two distinct odd parts.
pub fn count_distinct_odd(total: i64) -> u64 {
    if total < 1 {
        return 0;
    }
    let all = count_distinct_dp(total, true);
    if total % 2 == 1 {
        all - 1 // the single odd part `total`
    } else {
        all
    }
}

fn count_distinct_dp(total: i64, odd_only: bool) -> u64 {
    let n = total as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    let mut p = 1;
    while p <= n {
        for j in (p..=n).rev() {
            ways[j] = ways[j]
                .checked_add(ways[j - p])
                .expect("distinct-partition count overflow");
        }
        p += if odd_only { 2 } else { 1 };
    }
    ways[n]
}

/// How to produce the unrefinable set: filter every distinct partition, or
/// search top-down with missing-pair pruning. The strategies must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    BruteFilter,
    PrunedSearch,
}

/// The unrefinable partitions of `total`, in lex order.
pub fn gen_unrefinable(total: i64, strategy: Strategy) -> Vec<Partition> {
    let mut out = match strategy {
        Strategy::BruteFilter => {
            let mut found = Vec::new();
            let mut scratch = Vec::new();
            for_each_distinct(total, &EnumConfig::default(), |parts| {
                if slice_is_unrefinable(parts, &mut scratch) {
                    found.push(Partition::new(parts.to_vec()).expect("valid"));
                }
            });
            found
        }
        Strategy::PrunedSearch => {
            let mut found = Vec::new();
            let mut dfs = PrunedDfs::new();
            let hi = largest_part_range(total);
            for largest in hi {
                dfs.run(total, largest, &mut found);
            }
            found
        }
    };
    out.sort_unstable();
    out
}

pub fn count_unrefinable(total: i64, strategy: Strategy) -> u64 {
    gen_unrefinable(total, strategy).len() as u64
}

fn largest_part_range(total: i64) -> impl Iterator<Item = i64> {
    // need one more part below the largest, and the rest must fit under it
    (2..total).filter(move |&l| {
        let rest = total - l;
        rest >= 1 && rest <= l * (l - 1) / 2
    })
}

/// Descending search for unrefinable partitions with a fixed largest part.
///
/// Parts are committed from the largest down; every value passed over becomes
/// a missing part. A branch dies as soon as two committed missing values sum
/// to a committed part, which is a complete check because each pair is tested
/// when its smaller member goes missing.
struct PrunedDfs {
    parts_desc: Vec<i64>,
    missing: Vec<bool>,
}

impl PrunedDfs {
    fn new() -> Self {
        PrunedDfs {
            parts_desc: Vec::new(),
            missing: Vec::new(),
        }
    }

    fn run(&mut self, total: i64, largest: i64, out: &mut Vec<Partition>) {
        self.parts_desc.clear();
        self.missing.clear();
        self.missing.resize(largest as usize + 1, false);
        self.parts_desc.push(largest);
        self.rec(largest - 1, total - largest, out);
        self.parts_desc.pop();
    }

    /// True when `value` may go missing; leaves it marked on success.
    fn mark_missing(&mut self, value: i64) -> bool {
        for &p in &self.parts_desc {
            let other = p - value;
            if other != value && other >= 1 && self.missing[other as usize] {
                return false;
            }
        }
        self.missing[value as usize] = true;
        true
    }

    fn unmark(&mut self, value: i64) {
        self.missing[value as usize] = false;
    }

    fn rec(&mut self, cursor: i64, remaining: i64, out: &mut Vec<Partition>) {
        if remaining == 0 {
            self.flush_tail(cursor, out);
            return;
        }
        if cursor == 0 || remaining > cursor * (cursor + 1) / 2 {
            return;
        }
        if cursor <= remaining {
            // committing a part never creates a missing pair: all committed
            // missing values exceed the cursor, so their sums exceed it too
            self.parts_desc.push(cursor);
            self.rec(cursor - 1, remaining - cursor, out);
            self.parts_desc.pop();
        }
        if self.mark_missing(cursor) {
            self.rec(cursor - 1, remaining, out);
            self.unmark(cursor);
        }
    }

    /// All values `cursor..1` go missing; emit if no pair conflict appears.
    fn flush_tail(&mut self, cursor: i64, out: &mut Vec<Partition>) {
        let mut marked = Vec::new();
        let mut ok = true;
        for v in (1..=cursor).rev() {
            if self.mark_missing(v) {
                marked.push(v);
            } else {
                ok = false;
                break;
            }
        }
        if ok && self.parts_desc.len() >= 2 {
            let mut parts = self.parts_desc.clone();
            parts.reverse();
            let p = Partition::new(parts).expect("search emits valid partitions");
            debug_assert!(p.is_unrefinable());
            out.push(p);
        }
        for v in marked {
            self.unmark(v);
        }
    }
}

/// The largest last part over all unrefinable partitions of `total`.
pub fn max_last_part(total: i64) -> Result<i64, EnumError> {
    let mut dfs = PrunedDfs::new();
    let candidates: Vec<i64> = largest_part_range(total).collect();
    for &largest in candidates.iter().rev() {
        let mut found = Vec::new();
        dfs.run(total, largest, &mut found);
        if !found.is_empty() {
            return Ok(largest);
        }
    }
    Err(EnumError::EmptyUnrefinableSet(total))
}

/// The unrefinable partitions of `total` attaining [`max_last_part`], lex order.
pub fn gen_maximal_unrefinable(total: i64) -> Result<Vec<Partition>, EnumError> {
    let mut dfs = PrunedDfs::new();
    let candidates: Vec<i64> = largest_part_range(total).collect();
    for &largest in candidates.iter().rev() {
        let mut found = Vec::new();
        dfs.run(total, largest, &mut found);
        if !found.is_empty() {
            found.sort_unstable();
            return Ok(found);
        }
    }
    Err(EnumError::EmptyUnrefinableSet(total))
}

/// Count family selector for [`CountTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Distinct,
    DistinctOdd,
    Unrefinable,
    MaximalUnrefinable,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Distinct => "distinct",
            Family::DistinctOdd => "distinct_odd",
            Family::Unrefinable => "unrefinable",
            Family::MaximalUnrefinable => "maximal_unrefinable",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "distinct" => Some(Family::Distinct),
            "distinct_odd" => Some(Family::DistinctOdd),
            "unrefinable" => Some(Family::Unrefinable),
            "maximal_unrefinable" => Some(Family::MaximalUnrefinable),
            _ => None,
        }
    }

    pub const ALL: [Family; 4] = [
        Family::Distinct,
        Family::DistinctOdd,
        Family::Unrefinable,
        Family::MaximalUnrefinable,
    ];
}

/// Exact counts per family and `N`. Advisory on-disk cache, always re-derivable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    entries: BTreeMap<(Family, i64), u64>,
}

impl CountTable {
    pub fn new() -> Self {
        CountTable::default()
    }

    pub fn insert(&mut self, family: Family, total: i64, count: u64) {
        if let Some(prev) = self.entries.insert((family, total), count) {
            assert_eq!(prev, count, "conflicting counts for {family:?} N={total}");
        }
    }

    pub fn get(&self, family: Family, total: i64) -> Option<u64> {
        self.entries.get(&(family, total)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Family, i64, u64)> + '_ {
        self.entries.iter().map(|(&(f, n), &c)| (f, n, c))
    }

    /// Fills the table for `family` over `from..=to` by direct computation.
    pub fn compute(&mut self, family: Family, from: i64, to: i64, cfg: &EnumConfig) {
        for n in from.max(1)..=to {
            let count = match family {
                Family::Distinct => count_distinct(n, cfg),
                Family::DistinctOdd => count_distinct_odd(n),
                Family::Unrefinable => count_unrefinable(n, Strategy::PrunedSearch),
                Family::MaximalUnrefinable => gen_maximal_unrefinable(n)
                    .map(|v| v.len() as u64)
                    .unwrap_or(0),
            };
            self.insert(family, n, count);
        }
    }

    /// Rows of `family,N,count`.
    pub fn to_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (family, n, count) in self.iter() {
            writeln!(w, "{},{},{}", family.name(), n, count)?;
        }
        Ok(())
    }

    pub fn from_csv<R: BufRead>(r: R) -> Result<Self, EnumError> {
        let mut table = CountTable::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line.map_err(|e| EnumError::BadCountRow {
                line: idx + 1,
                reason: e.to_string(),
            })?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split(',');
            let bad = |reason: &str| EnumError::BadCountRow {
                line: idx + 1,
                reason: reason.to_string(),
            };
            let family = fields
                .next()
                .and_then(Family::parse)
                .ok_or_else(|| bad("unknown family"))?;
            let n = fields
                .next()
                .and_then(|s| s.parse::<i64>().ok())
                .ok_or_else(|| bad("bad N"))?;
            let count = fields
                .next()
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| bad("bad count"))?;
            if fields.next().is_some() {
                return Err(bad("trailing fields"));
            }
            table.insert(family, n, count);
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(items: &[Partition]) -> Vec<Vec<i64>> {
        items.iter().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn gen_distinct_examples() {
        let d6 = distinct_partitions(6);
        assert_eq!(parts(&d6), vec![vec![1, 2, 3], vec![1, 5], vec![2, 4]]);
        assert_eq!(parts(&distinct_partitions(4)), vec![vec![1, 3]]);
        assert_eq!(parts(&distinct_partitions(3)), vec![vec![1, 2]]);
    }

    #[test]
    fn gen_distinct_single_part_flagged() {
        let items = gen_distinct(5, &EnumConfig::with_min_parts(1));
        assert_eq!(items.len(), 3);
        assert_eq!(items.last(), Some(&DistinctItem::Single(5)));
        let proper = items
            .iter()
            .filter(|i| matches!(i, DistinctItem::Proper(_)))
            .count();
        assert_eq!(proper, 2);
    }

    #[test]
    fn colex_order_and_cap() {
        let cfg = EnumConfig {
            order: Order::Colex,
            ..EnumConfig::default()
        };
        let d6 = gen_distinct(6, &cfg);
        let got: Vec<Vec<i64>> = d6.iter().map(|i| i.parts_vec()).collect();
        assert_eq!(got, vec![vec![1, 2, 3], vec![2, 4], vec![1, 5]]);
        let capped = gen_distinct(
            6,
            &EnumConfig {
                max_items: Some(2),
                ..EnumConfig::default()
            },
        );
        assert_eq!(capped.len(), 2);
    }

    #[test]
    fn gen_distinct_len_examples() {
        assert_eq!(
            parts(&gen_distinct_len(7, 2)),
            vec![vec![1, 6], vec![2, 5], vec![3, 4]]
        );
        assert_eq!(parts(&gen_distinct_len(6, 3)), vec![vec![1, 2, 3]]);
        assert!(gen_distinct_len(4, 3).is_empty());
    }

    #[test]
    fn gen_distinct_odd_examples() {
        assert_eq!(parts(&gen_distinct_odd(8)), vec![vec![1, 7], vec![3, 5]]);
        assert_eq!(parts(&gen_distinct_odd(10)), vec![vec![1, 9], vec![3, 7]]);
        assert_eq!(parts(&gen_distinct_odd(4)), vec![vec![1, 3]]);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_distinct(5, &EnumConfig::default()), 2);
        assert_eq!(count_distinct(5, &EnumConfig::with_min_parts(1)), 3);
        assert_eq!(count_distinct(7, &EnumConfig::default()), 4);
        assert_eq!(count_distinct_odd(10), 2);
    }

    #[test]
    fn counts_match_generators_small() {
        for n in 1..=60 {
            assert_eq!(
                count_distinct(n, &EnumConfig::default()),
                distinct_partitions(n).len() as u64,
                "distinct N={n}"
            );
            assert_eq!(
                count_distinct(n, &EnumConfig::with_min_parts(1)),
                gen_distinct(n, &EnumConfig::with_min_parts(1)).len() as u64,
                "distinct(min 1) N={n}"
            );
            assert_eq!(
                count_distinct_odd(n),
                gen_distinct_odd(n).len() as u64,
                "odd N={n}"
            );
        }
    }

    #[test]
    fn unrefinable_examples() {
        assert_eq!(
            parts(&gen_unrefinable(6, Strategy::BruteFilter)),
            vec![vec![1, 2, 3]]
        );
        assert_eq!(
            parts(&gen_unrefinable(10, Strategy::BruteFilter)),
            vec![vec![1, 2, 3, 4]]
        );
        let u65 = gen_unrefinable(65, Strategy::PrunedSearch);
        let mut target: Vec<i64> = (1..=9).collect();
        target.push(20);
        assert!(parts(&u65).contains(&target));
    }

    #[test]
    fn strategies_agree_small() {
        for n in 3..=45 {
            assert_eq!(
                gen_unrefinable(n, Strategy::BruteFilter),
                gen_unrefinable(n, Strategy::PrunedSearch),
                "N={n}"
            );
        }
    }

    #[test]
    fn max_last_part_examples() {
        assert_eq!(max_last_part(65).unwrap(), 20);
        assert_eq!(max_last_part(64).unwrap(), 19);
        assert_eq!(max_last_part(6).unwrap(), 3);
        assert!(max_last_part(2).is_err());
    }

    #[test]
    fn maximal_examples() {
        let mu65 = gen_maximal_unrefinable(65).unwrap();
        let mut target: Vec<i64> = (1..=9).collect();
        target.push(20);
        assert_eq!(parts(&mu65), vec![target]);

        let mu61 = gen_maximal_unrefinable(61).unwrap();
        assert_eq!(
            parts(&mu61),
            vec![
                vec![1, 2, 3, 4, 5, 8, 10, 11, 17],
                vec![1, 2, 3, 4, 6, 7, 9, 12, 17]
            ]
        );

        assert_eq!(parts(&gen_maximal_unrefinable(6).unwrap()), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn maximal_matches_filter_of_full_set() {
        for n in 3..=50 {
            let u = gen_unrefinable(n, Strategy::BruteFilter);
            let mx = u.iter().map(|p| p.last_part()).max().unwrap();
            let expect: Vec<Partition> =
                u.into_iter().filter(|p| p.last_part() == mx).collect();
            assert_eq!(gen_maximal_unrefinable(n).unwrap(), expect, "N={n}");
        }
    }

    #[test]
    fn count_table_csv_round_trip() {
        let mut table = CountTable::new();
        table.compute(Family::Distinct, 1, 10, &EnumConfig::default());
        table.compute(Family::Unrefinable, 3, 10, &EnumConfig::default());
        let mut buf = Vec::new();
        table.to_csv(&mut buf).unwrap();
        let back = CountTable::from_csv(buf.as_slice()).unwrap();
        assert_eq!(back, table);
        assert_eq!(back.get(Family::Distinct, 6), Some(3));
        assert_eq!(back.get(Family::Unrefinable, 6), Some(1));

        assert!(CountTable::from_csv("nonsense,1,2\n".as_bytes()).is_err());
        assert!(CountTable::from_csv("distinct,x,2\n".as_bytes()).is_err());
    }
}
