//! Closed real intervals and finite unions of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with `lo ≤ hi`. Degenerate points are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvertedInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }

    /// `other ⊆ self` with endpoint slack `tol`.
    pub fn contains_interval(&self, other: &Interval, tol: f64) -> bool {
        other.lo >= self.lo - tol && other.hi <= self.hi + tol
    }

    pub fn widened(&self, tol: f64) -> Self {
        Interval {
            lo: self.lo - tol,
            hi: self.hi + tol,
        }
    }

    pub fn translated(&self, delta: f64) -> Self {
        Interval {
            lo: self.lo + delta,
            hi: self.hi + delta,
        }
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

/// Finite union of closed intervals.
///
/// A normalized union is sorted by `lo` and its members are separated by gaps
/// larger than `1e-12 (1 + max|endpoint|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
    normalized: bool,
}

impl IntervalUnion {
    /// Keeps the given intervals as they are.
    pub fn raw(intervals: Vec<Interval>) -> Self {
        IntervalUnion {
            intervals,
            normalized: false,
        }
    }

    pub fn normalized_from(intervals: Vec<Interval>) -> Self {
        Self::raw(intervals).normalize()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn merge_tol(&self) -> f64 {
        let m = self
            .intervals
            .iter()
            .map(|i| i.lo.abs().max(i.hi.abs()))
            .fold(0.0, f64::max);
        1e-12 * (1.0 + m)
    }

    pub fn normalize(self) -> Self {
        if self.normalized {
            return self;
        }
        let tol = self.merge_tol();
        let mut sorted = self.intervals;
        sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        let mut out: Vec<Interval> = Vec::with_capacity(sorted.len());
        for iv in sorted {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi + tol => last.hi = last.hi.max(iv.hi),
                _ => out.push(iv),
            }
        }
        IntervalUnion {
            intervals: out,
            normalized: true,
        }
    }

    /// Smallest interval containing the union; `None` when empty.
    pub fn hull(&self) -> Option<Interval> {
        let mut it = self.intervals.iter();
        let first = *it.next()?;
        Some(it.fold(first, |acc, i| acc.hull(i)))
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x, tol))
    }

    /// Every point of `other` lies in some member of `self` (checked member by
    /// member, so `other` should be raw or normalized consistently).
    pub fn contains_each(&self, other: &IntervalUnion, tol: f64) -> bool {
        other
            .intervals
            .iter()
            .all(|o| self.intervals.iter().any(|s| s.contains_interval(o, tol)))
    }

    pub fn translated(&self, delta: f64) -> Self {
        IntervalUnion {
            intervals: self.intervals.iter().map(|i| i.translated(delta)).collect(),
            normalized: self.normalized,
        }
    }
}
