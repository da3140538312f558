use std::collections::BTreeSet;
use std::fmt;

use crate::RankError;

/// Largest n accepted by the enumerator and the brute-force table.
pub const BRUTE_FORCE_BOUND: u32 = 40;

/// A partition in which the first occurrence of a part size may be overlined.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overpartition {
    parts: Vec<u32>,
    overlined: BTreeSet<u32>,
}

impl Overpartition {
    /// `parts` are sorted into non-increasing order; every overlined value must be a part.
    pub fn new(mut parts: Vec<u32>, overlined: BTreeSet<u32>) -> Option<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.contains(&0) || !overlined.iter().all(|v| parts.contains(v)) {
            return None;
        }
        Some(Overpartition { parts, overlined })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn overlined(&self) -> &BTreeSet<u32> {
        &self.overlined
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Largest part minus number of parts; 0 for the empty overpartition.
    pub fn rank(&self) -> i64 {
        rank_of(&self.parts)
    }
}

fn rank_of(parts: &[u32]) -> i64 {
    match parts.first() {
        Some(&l) => l as i64 - parts.len() as i64,
        None => 0,
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let mut prev = None;
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if prev != Some(p) && self.overlined.contains(&p) {
                for ch in p.to_string().chars() {
                    write!(f, "{ch}\u{305}")?;
                }
            } else {
                write!(f, "{p}")?;
            }
            prev = Some(p);
        }
        Ok(())
    }
}

fn check_bound(n: u32) -> Result<(), RankError> {
    if n > BRUTE_FORCE_BOUND {
        Err(RankError::TooLarge { n, bound: BRUTE_FORCE_BOUND })
    } else {
        Ok(())
    }
}

/// Calls `visit(parts, rank)` once per overpartition of `n`; the overline
/// choice is not materialized, so each partition with `d` distinct parts is
/// visited `2^d` times.
pub(crate) fn for_each_rank<F: FnMut(i64)>(n: u32, mut visit: F) {
    fn rec<F: FnMut(i64)>(rest: u32, max: u32, parts: &mut Vec<u32>, distinct: u32, visit: &mut F) {
        if rest == 0 {
            let r = rank_of(parts);
            for _ in 0..(1u64 << distinct) {
                visit(r);
            }
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            let new = parts.last() != Some(&p);
            parts.push(p);
            rec(rest - p, p, parts, distinct + new as u32, visit);
            parts.pop();
        }
    }
    rec(n, n, &mut Vec::new(), 0, &mut visit);
}

/// Every overpartition of `n`, each exactly once.
pub fn enumerate_overpartitions(n: u32) -> Result<Vec<Overpartition>, RankError> {
    check_bound(n)?;
    fn rec(rest: u32, max: u32, parts: &mut Vec<u32>, out: &mut Vec<Overpartition>) {
        if rest == 0 {
            let mut distinct: Vec<u32> = parts.clone();
            distinct.dedup();
            for mask in 0..(1u64 << distinct.len()) {
                let overlined = distinct.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                out.push(Overpartition { parts: parts.clone(), overlined });
            }
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            parts.push(p);
            rec(rest - p, p, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

pub(crate) fn bruteforce_row(n: u32) -> Result<Vec<u64>, RankError> {
    check_bound(n)?;
    let w = n as i64;
    let mut row = vec![0u64; 2 * n as usize + 1];
    for_each_rank(n, |r| row[(r + w) as usize] += 1);
    Ok(row)
}
