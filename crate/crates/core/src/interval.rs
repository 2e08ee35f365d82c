//! Intervals over the extended rationals with per-endpoint open/closed flags,
//! and normalized finite unions of them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ExtRational, Rational};

/// A nonempty interval. Infinite endpoints are always open; a degenerate
/// interval `lo == hi` is a closed point.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    lo: ExtRational,
    lo_closed: bool,
    hi: ExtRational,
    hi_closed: bool,
}

#[derive(Deserialize)]
struct RawInterval {
    lo: ExtRational,
    lo_closed: bool,
    hi: ExtRational,
    hi_closed: bool,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.lo, raw.lo_closed, raw.hi, raw.hi_closed)
    }
}

impl Interval {
    pub fn new(lo: ExtRational, lo_closed: bool, hi: ExtRational, hi_closed: bool) -> Result<Self> {
        if lo == ExtRational::PosInf || hi == ExtRational::NegInf {
            return Err(Error::Parameter(format!(
                "interval endpoints {lo}, {hi} are out of order"
            )));
        }
        if (!lo.is_finite() && lo_closed) || (!hi.is_finite() && hi_closed) {
            return Err(Error::Parameter("infinite endpoints must be open".into()));
        }
        match lo.cmp(&hi) {
            Ordering::Greater => Err(Error::Parameter(format!("empty interval: {lo} > {hi}"))),
            Ordering::Equal if !(lo_closed && hi_closed) => {
                Err(Error::Parameter(format!("empty interval at {lo}")))
            }
            _ => Ok(Interval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            }),
        }
    }

    pub fn point(q: Rational) -> Self {
        Interval {
            lo: q.clone().into(),
            lo_closed: true,
            hi: q.into(),
            hi_closed: true,
        }
    }

    /// The whole line `(-inf, inf)`.
    pub fn everything() -> Self {
        Interval {
            lo: ExtRational::NegInf,
            lo_closed: false,
            hi: ExtRational::PosInf,
            hi_closed: false,
        }
    }

    pub fn lo(&self) -> &ExtRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExtRational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn contains(&self, q: &Rational) -> bool {
        let above = match self.lo.cmp_finite(q) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match self.hi.cmp_finite(q) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Less => false,
        };
        above && below
    }

    // Lower endpoints order: a closed start precedes an open start at the same value.
    fn cmp_lower(&self, other: &Interval) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then_with(|| other.lo_closed.cmp(&self.lo_closed))
    }

    // Upper endpoints order: a closed end extends past an open end at the same value.
    fn cmp_upper(&self, other: &Interval) -> Ordering {
        self.hi
            .cmp(&other.hi)
            .then_with(|| self.hi_closed.cmp(&other.hi_closed))
    }

    /// Whether `next` (which must not start before `self`) overlaps or abuts `self`
    /// so that their union is a single interval.
    fn joins(&self, next: &Interval) -> bool {
        match self.hi.cmp(&next.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed || next.lo_closed,
            Ordering::Less => false,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not an interval"));
        let lo_closed = match s.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match s.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let inner = &s[1..s.len() - 1];
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        Interval::new(lo.parse()?, lo_closed, hi.parse()?, hi_closed)
    }
}

/// A finite union of intervals kept sorted, pairwise disjoint and non-adjacent,
/// so that no two members could be merged into one interval.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        let mut intervals: Vec<Interval> = intervals.into_iter().collect();
        intervals.sort_by(Interval::cmp_lower);
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for next in intervals {
            match merged.last_mut() {
                Some(cur) if cur.joins(&next) => {
                    if next.cmp_upper(cur) == Ordering::Greater {
                        cur.hi = next.hi;
                        cur.hi_closed = next.hi_closed;
                    }
                }
                _ => merged.push(next),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn insert(&mut self, interval: Interval) {
        let mut all = std::mem::take(&mut self.intervals);
        all.push(interval);
        *self = IntervalSet::from_intervals(all);
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.intervals.iter().any(|i| i.contains(q))
    }

    /// Checks the normalization invariant; used by tests.
    pub fn is_normalized(&self) -> bool {
        self.intervals
            .windows(2)
            .all(|w| w[0].cmp_lower(&w[1]) == Ordering::Less && !w[0].joins(&w[1]))
    }
}

/// Normalized union of two interval sets.
pub fn interval_union(a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
    a.union(b)
}

impl From<Vec<Interval>> for IntervalSet {
    fn from(v: Vec<Interval>) -> Self {
        IntervalSet::from_intervals(v)
    }
}

impl From<IntervalSet> for Vec<Interval> {
    fn from(s: IntervalSet) -> Self {
        s.intervals
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<I: IntoIterator<Item = Interval>>(iter: I) -> Self {
        IntervalSet::from_intervals(iter)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntervalSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "{}" {
            return Ok(IntervalSet::empty());
        }
        s.split(" U ").map(str::parse).collect()
    }
}
