//! Interval unions, discrete point sets, periodic sets, and the fold-mod
//! multiplicity function.
//!
//! The central object is [`IntervalUnion`]: a finite union of half-open
//! rational intervals `[a, a+r)`, kept sorted and disjoint. Most operations
//! in the crate require a *normalized* union: leftmost point 0 and total
//! measure exactly 1. Half-open intervals make folding and fiber partitions
//! exact and gap-free.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, is_integer, mod_period, rat_int, Rational};

/// A finite union of disjoint half-open intervals `[a_j, a_j + r_j)`,
/// sorted left to right. Touching intervals are merged on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    intervals: Vec<(Rational, Rational)>, // (left, length), length > 0
}

/// `x ↦ scale·x + shift` with `scale ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub scale: Rational,
    pub shift: Rational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            scale: Rational::one(),
            shift: Rational::zero(),
        }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.scale * x + &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.shift.is_zero()
    }
}

impl IntervalUnion {
    /// Build from `(left, right)` pairs in any order. Touching intervals are
    /// merged; overlapping intervals are an error.
    pub fn from_endpoints(pairs: &[(Rational, Rational)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut sorted: Vec<(Rational, Rational)> = Vec::with_capacity(pairs.len());
        for (left, right) in pairs {
            if right <= left {
                return Err(Error::NonPositiveInterval {
                    left: format_rational(left),
                    right: format_rational(right),
                });
            }
            sorted.push((left.clone(), right.clone()));
        }
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(sorted.len());
        for (left, right) in sorted {
            match merged.last_mut() {
                Some((_, prev_right)) if left < *prev_right => {
                    return Err(Error::OverlappingIntervals {
                        left: format_rational(&left),
                        right: format_rational(&right),
                    });
                }
                Some((_, prev_right)) if left == *prev_right => {
                    *prev_right = right;
                }
                _ => merged.push((left, right)),
            }
        }
        Ok(IntervalUnion {
            intervals: merged
                .into_iter()
                .map(|(l, r)| {
                    let len = &r - &l;
                    (l, len)
                })
                .collect(),
        })
    }

    /// Convenience constructor from small integers: `[(n, d, n', d'), ...]`
    /// meaning `[n/d, n'/d')`.
    pub fn from_i64_endpoints(pairs: &[(i64, i64, i64, i64)]) -> Result<Self> {
        let pairs: Vec<(Rational, Rational)> = pairs
            .iter()
            .map(|(ln, ld, rn, rd)| {
                (
                    Rational::new((*ln).into(), (*ld).into()),
                    Rational::new((*rn).into(), (*rd).into()),
                )
            })
            .collect();
        Self::from_endpoints(&pairs)
    }

    /// The unit interval `[0, 1)`.
    pub fn unit() -> Self {
        IntervalUnion {
            intervals: vec![(Rational::zero(), Rational::one())],
        }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    /// `(left, right)` pairs.
    pub fn endpoints(&self) -> Vec<(Rational, Rational)> {
        self.intervals
            .iter()
            .map(|(l, r)| (l.clone(), l + r))
            .collect()
    }

    /// Number of maximal intervals.
    pub fn interval_count(&self) -> usize {
        self.intervals.len()
    }

    /// Exact total length `Σ r_j`.
    pub fn measure(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::zero(), |acc, (_, len)| acc + len)
    }

    pub fn leftmost(&self) -> &Rational {
        &self.intervals[0].0
    }

    pub fn rightmost(&self) -> Rational {
        let (l, r) = self.intervals.last().unwrap();
        l + r
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals
            .iter()
            .any(|(l, len)| x >= l && x < &(l + len))
    }

    pub fn is_normalized(&self) -> bool {
        self.leftmost().is_zero() && self.measure().is_one()
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                leftmost: format_rational(self.leftmost()),
                measure: format_rational(&self.measure()),
            })
        }
    }

    /// Translate so the leftmost point is 0 and rescale to measure exactly 1.
    /// Returns the normalized union and the map carrying the original onto it.
    pub fn normalize(&self) -> (IntervalUnion, AffineMap) {
        let a0 = self.leftmost().clone();
        let m = self.measure();
        let scale = m.recip();
        let shift = -&a0 * &scale;
        let map = AffineMap { scale, shift };
        let intervals = self
            .intervals
            .iter()
            .map(|(l, len)| (map.apply(l), len / &m))
            .collect();
        (IntervalUnion { intervals }, map)
    }

    /// Apply an affine map (positive scale keeps orientation; negative scale
    /// reverses interval order).
    pub fn apply_map(&self, map: &AffineMap) -> Result<IntervalUnion> {
        let pairs: Vec<(Rational, Rational)> = self
            .endpoints()
            .iter()
            .map(|(l, r)| {
                let a = map.apply(l);
                let b = map.apply(r);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        IntervalUnion::from_endpoints(&pairs)
    }

    /// Translate by `t`.
    pub fn translate(&self, t: &Rational) -> IntervalUnion {
        IntervalUnion {
            intervals: self
                .intervals
                .iter()
                .map(|(l, len)| (l + t, len.clone()))
                .collect(),
        }
    }

    /// The covering multiplicity `F(x) = Σ_k χ(x + k/d)` as an exact step
    /// function on one period `[0, 1/d)`. Every interval endpoint is reduced
    /// mod `1/d` and a sweep accumulates the counts.
    pub fn fold_multiplicity(&self, d: &Rational) -> Result<MultiplicityFunction> {
        if !d.is_positive() {
            return Err(Error::NonPositive(format_rational(d)));
        }
        let cell = d.recip(); // period of the fold
                              // Collect +1/-1 events at folded endpoints.
        let mut breaks: Vec<Rational> = vec![Rational::zero(), cell.clone()];
        let mut events: Vec<(Rational, i64)> = Vec::new();
        for (left, right) in self.endpoints() {
            // Walk the interval one grid cell at a time.
            let mut k = (&left / &cell).floor();
            loop {
                let cell_lo = &k * &cell;
                let cell_hi = &cell_lo + &cell;
                if cell_lo >= right {
                    break;
                }
                let seg_lo = if left > cell_lo {
                    left.clone()
                } else {
                    cell_lo.clone()
                };
                let seg_hi = if right < cell_hi {
                    right.clone()
                } else {
                    cell_hi.clone()
                };
                if seg_lo < seg_hi {
                    let lo = &seg_lo - &cell_lo;
                    let hi = &seg_hi - &cell_lo;
                    breaks.push(lo.clone());
                    breaks.push(hi.clone());
                    events.push((lo, 1));
                    events.push((hi, -1));
                }
                k += Rational::one();
            }
        }
        breaks.sort();
        breaks.dedup();
        let mut counts: Vec<u64> = Vec::new();
        let mut cells: Vec<(Rational, Rational)> = Vec::new();
        for w in breaks.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let mut c: i64 = 0;
            for (at, delta) in &events {
                if at <= lo {
                    c += delta;
                }
            }
            debug_assert!(c >= 0);
            cells.push((lo.clone(), hi.clone()));
            counts.push(c as u64);
        }
        // Canonical form: merge adjacent cells with equal counts.
        let mut merged_cells: Vec<(Rational, Rational)> = Vec::new();
        let mut merged_counts: Vec<u64> = Vec::new();
        for ((lo, hi), c) in cells.into_iter().zip(counts) {
            match (merged_cells.last_mut(), merged_counts.last()) {
                (Some((_, prev_hi)), Some(&prev_c)) if prev_c == c && *prev_hi == lo => {
                    *prev_hi = hi;
                }
                _ => {
                    merged_cells.push((lo, hi));
                    merged_counts.push(c);
                }
            }
        }
        Ok(MultiplicityFunction {
            cells: merged_cells,
            counts: merged_counts,
        })
    }
}

/// Exact step function on `[0, 1/d)`: a partition into half-open cells with a
/// nonnegative count on each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityFunction {
    cells: Vec<(Rational, Rational)>,
    counts: Vec<u64>,
}

impl MultiplicityFunction {
    pub fn cells(&self) -> impl Iterator<Item = (&(Rational, Rational), u64)> {
        self.cells.iter().zip(self.counts.iter().copied())
    }

    /// `Some(c)` when the function is constant `c` on the whole period.
    pub fn constant_value(&self) -> Option<u64> {
        match self.counts.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// `Σ count_i · len_i`; equals the measure of the folded set.
    pub fn mass(&self) -> Rational {
        self.cells
            .iter()
            .zip(&self.counts)
            .fold(Rational::zero(), |acc, ((lo, hi), c)| {
                acc + (hi - lo) * rat_int(*c as i64)
            })
    }

    pub fn value_at(&self, x: &Rational) -> Option<u64> {
        self.cells
            .iter()
            .zip(&self.counts)
            .find(|((lo, hi), _)| x >= lo && x < hi)
            .map(|(_, c)| *c)
    }
}

/// A strictly increasing finite list of rational points; a finite window of
/// some discrete set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteSampleSet {
    points: Vec<Rational>,
}

impl DiscreteSampleSet {
    /// Sorts its input; duplicates are rejected.
    pub fn new(mut points: Vec<Rational>) -> Result<Self> {
        points.sort();
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint(format_rational(&w[0])));
            }
        }
        Ok(DiscreteSampleSet { points })
    }

    pub fn from_i64(points: &[i64]) -> Self {
        DiscreteSampleSet {
            points: points.iter().map(|&p| rat_int(p)).collect(),
        }
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.points.binary_search_by(|p| p.cmp(x)).is_ok()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.points.first()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.points.last()
    }

    /// Consecutive differences.
    pub fn gaps(&self) -> Vec<Rational> {
        self.points.windows(2).map(|w| &w[1] - &w[0]).collect()
    }
}

/// A `d`-periodic set `Λ = {offsets} + dℤ` with all offsets in `[0, d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeriodicSet {
    period: Rational,
    offsets: Vec<Rational>,
}

impl PeriodicSet {
    pub fn new(period: Rational, mut offsets: Vec<Rational>) -> Result<Self> {
        if !period.is_positive() {
            return Err(Error::NonPositive(format_rational(&period)));
        }
        offsets.sort();
        for w in offsets.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint(format_rational(&w[0])));
            }
        }
        if offsets.is_empty() {
            return Err(Error::TooFewPoints { needed: 1, got: 0 });
        }
        for o in &offsets {
            if o.is_negative() || *o >= period {
                return Err(Error::OffsetOutOfRange(format_rational(o)));
            }
        }
        Ok(PeriodicSet { period, offsets })
    }

    /// The integer lattice `ℤ`.
    pub fn integers() -> Self {
        PeriodicSet {
            period: Rational::one(),
            offsets: vec![Rational::zero()],
        }
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    /// `#offsets / d`, exact.
    pub fn density(&self) -> Rational {
        rat_int(self.offsets.len() as i64) / &self.period
    }

    /// Density 1 in the exact sense: `#offsets = d` with `d` a positive integer.
    pub fn has_unit_density(&self) -> bool {
        is_integer(&self.period) && rat_int(self.offsets.len() as i64) == self.period
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let r = mod_period(x, &self.period);
        self.offsets.binary_search_by(|o| o.cmp(&r)).is_ok()
    }

    /// Materialize the window `Λ ∩ [lo, hi)`.
    pub fn window(&self, lo: &Rational, hi: &Rational) -> Result<DiscreteSampleSet> {
        if lo >= hi {
            return Err(Error::InvalidRange {
                lo: format_rational(lo),
                hi: format_rational(hi),
            });
        }
        let mut pts = Vec::new();
        let mut k = ((lo - self.offsets.last().unwrap()) / &self.period).floor();
        loop {
            let base = &k * &self.period;
            if &base + self.offsets.first().unwrap() >= *hi {
                break;
            }
            for o in &self.offsets {
                let x = &base + o;
                if &x >= lo && &x < hi {
                    pts.push(x);
                }
            }
            k += Rational::one();
        }
        DiscreteSampleSet::new(pts)
    }

    /// Translate by `t`, renormalizing offsets into `[0, d)`.
    pub fn translate(&self, t: &Rational) -> PeriodicSet {
        let offsets = self
            .offsets
            .iter()
            .map(|o| mod_period(&(o + t), &self.period))
            .collect();
        PeriodicSet::new(self.period.clone(), offsets).unwrap()
    }

    /// Rescale the whole set by `s > 0`: period and offsets multiply.
    pub fn scale(&self, s: &Rational) -> Result<PeriodicSet> {
        if !s.is_positive() {
            return Err(Error::NonPositive(format_rational(s)));
        }
        PeriodicSet::new(
            &self.period * s,
            self.offsets.iter().map(|o| o * s).collect(),
        )
    }

    /// Canonical minimal-period form: while the offsets split into full
    /// residue ladders modulo `d/k`, fold the period down by `k`. The set of
    /// reals is unchanged.
    pub fn reduce_period(&self) -> PeriodicSet {
        let mut current = self.clone();
        'outer: loop {
            let m = current.offsets.len();
            for k in (2..=m).filter(|k| m.is_multiple_of(*k)) {
                let sub = &current.period / rat_int(k as i64);
                let mut classes: std::collections::BTreeMap<Rational, Vec<Rational>> =
                    std::collections::BTreeMap::new();
                for o in &current.offsets {
                    classes
                        .entry(mod_period(o, &sub))
                        .or_default()
                        .push(o.clone());
                }
                let full_ladders = classes.iter().all(|(rep, members)| {
                    members.len() == k
                        && (0..k).all(|j| {
                            let lift = rep + &sub * rat_int(j as i64);
                            members.contains(&lift)
                        })
                });
                if full_ladders {
                    current = PeriodicSet::new(sub, classes.into_keys().collect()).unwrap();
                    continue 'outer;
                }
            }
            return current;
        }
    }
}
