//! Combinatorial structure of spectrum samples: gap alphabets, window
//! words and dimension profiles, pigeonhole period discovery, sliding
//! count diagnostics, and the fiber decomposition of a tiling domain.
//!
//! Everything here is exact. Windows are half-open `[kL, (k+1)L)`; a
//! window's word is the run of successive gaps starting at its first
//! point, kept while the running sum stays ≤ L (so the gap crossing the
//! right boundary is included exactly when it fits). Truncated windows —
//! those not fully inside the observed span — are profiled but never used
//! for pigeonhole matching.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::domain::{DiscreteSampleSet, IntervalUnion, PeriodicSet};
use crate::embedding::{basis_translate_period, rank_span};
use crate::error::{Error, Result};
use crate::newton::verify_tiling;
use crate::rational::{denominator_lcm, format_rational, rat_int, Rational};
use crate::search::verify_spectrum;

/// The finite set of distinct consecutive gaps of a sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapAlphabet {
    gaps: Vec<Rational>,
}

impl GapAlphabet {
    /// Sorted ascending, distinct, all positive.
    pub fn gaps(&self) -> &[Rational] {
        &self.gaps
    }

    pub fn min_gap(&self) -> &Rational {
        &self.gaps[0]
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Distinct consecutive differences of a sample with at least two points.
pub fn gap_alphabet(sample: &DiscreteSampleSet) -> Result<GapAlphabet> {
    if sample.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: sample.len(),
        });
    }
    let mut gaps = sample.gaps();
    gaps.sort();
    gaps.dedup();
    Ok(GapAlphabet { gaps })
}

/// One window `[kL, (k+1)L)` of a profiled sample.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowEntry {
    pub index: i64,
    pub points: Vec<Rational>,
    /// Successive gaps starting at the first point of the window, kept
    /// while the running sum stays ≤ L.
    pub word: Vec<Rational>,
    /// Rank of the span of the embedded window points.
    pub dim: usize,
    /// The window is not fully inside the observed span of the sample.
    pub truncated: bool,
}

/// Window-by-window structure of a sample at a fixed length `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowProfile {
    pub window_length: Rational,
    pub entries: Vec<WindowEntry>,
    /// Distinct words among non-truncated windows.
    pub distinct_word_count: usize,
    /// Number of words over the observed gap alphabet with gap sum ≤ L
    /// (empty word included); `None` when the scaled length is too large
    /// to tabulate.
    pub word_count_bound: Option<BigUint>,
    /// `1 / (2L(N+1))` for the bound `N` above — a separation scale
    /// carried as a diagnostic annotation only.
    pub separation_hint: Option<Rational>,
    pub max_dim: usize,
}

/// One window of the sample: index, points, word, truncation flag.
type RawWindow = (i64, Vec<Rational>, Vec<Rational>, bool);

/// Window decomposition shared by the profile and the period discovery.
fn split_windows(sample: &DiscreteSampleSet, l: &Rational) -> Result<Vec<RawWindow>> {
    if !l.is_positive() {
        return Err(Error::NonPositive(format_rational(l)));
    }
    let points = sample.points();
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let lo = sample.min().expect("nonempty").clone();
    let hi = sample.max().expect("nonempty").clone();
    let k_min = (&lo / l)
        .floor()
        .to_integer()
        .to_i64()
        .expect("window index fits");
    let k_max = (&hi / l)
        .floor()
        .to_integer()
        .to_i64()
        .expect("window index fits");

    let mut out = Vec::new();
    let mut cursor = 0usize;
    for k in k_min..=k_max {
        let left = rat_int(k) * l;
        let right = &left + l;
        while cursor < points.len() && points[cursor] < left {
            cursor += 1;
        }
        let start = cursor;
        let mut end = cursor;
        while end < points.len() && points[end] < right {
            end += 1;
        }
        cursor = end;
        let window: Vec<Rational> = points[start..end].to_vec();

        // Word: gaps from each window point to its successor in the whole
        // sample, accumulated while the total stays within L.
        let mut word = Vec::new();
        let mut sum = Rational::zero();
        for i in start..end {
            if i + 1 >= points.len() {
                break;
            }
            let gap = &points[i + 1] - &points[i];
            if &sum + &gap > *l {
                break;
            }
            sum += &gap;
            word.push(gap);
        }

        let truncated = left < lo || right > hi;
        out.push((k, window, word, truncated));
    }
    Ok(out)
}

/// Profile a sample at window length `L`: per-window words and exact span
/// dimensions, plus the word-count bound for the observed gap alphabet.
pub fn window_profile(
    domain: &IntervalUnion,
    sample: &DiscreteSampleSet,
    l: &Rational,
) -> Result<WindowProfile> {
    domain.require_normalized()?;
    let windows = split_windows(sample, l)?;

    let mut entries = Vec::with_capacity(windows.len());
    let mut words = BTreeSet::new();
    let mut max_dim = 0;
    for (index, points, word, truncated) in windows {
        let dim = if points.is_empty() {
            0
        } else {
            rank_span(domain, &DiscreteSampleSet::new(points.clone())?)?.rank
        };
        max_dim = max_dim.max(dim);
        if !truncated {
            words.insert(word.clone());
        }
        entries.push(WindowEntry {
            index,
            points,
            word,
            dim,
            truncated,
        });
    }

    let (word_count_bound, separation_hint) = if sample.len() >= 2 {
        match word_count_bound(&gap_alphabet(sample)?, l) {
            Some(n) => {
                let n_plus_one = BigInt::from(n.clone()) + BigInt::one();
                let hint = Rational::one() / (rat_int(2) * l * Rational::from_integer(n_plus_one));
                (Some(n), Some(hint))
            }
            None => (None, None),
        }
    } else {
        (None, None)
    };

    Ok(WindowProfile {
        window_length: l.clone(),
        entries,
        distinct_word_count: words.len(),
        word_count_bound,
        separation_hint,
        max_dim,
    })
}

/// Count words over `alphabet` with gap sum ≤ L, empty word included.
/// Classic coin-style tabulation on the common-denominator integer scale;
/// bails out (`None`) when that scale is too large to enumerate.
fn word_count_bound(alphabet: &GapAlphabet, l: &Rational) -> Option<BigUint> {
    const MAX_SCALE: u64 = 100_000;
    let q = denominator_lcm(alphabet.gaps().iter().chain(std::iter::once(l)));
    let target = (l * Rational::from_integer(q.clone()))
        .to_integer()
        .to_u64()?;
    if target > MAX_SCALE {
        return None;
    }
    let weights: Vec<u64> = alphabet
        .gaps()
        .iter()
        .filter_map(|g| {
            (g * Rational::from_integer(q.clone()))
                .to_integer()
                .to_u64()
        })
        .filter(|w| *w > 0 && *w <= target)
        .collect();
    let mut ways = vec![BigUint::zero(); target as usize + 1];
    ways[0] = BigUint::one();
    for s in 1..=target as usize {
        for w in weights.iter().map(|w| *w as usize).filter(|w| *w <= s) {
            ways[s] = &ways[s] + &ways[s - w];
        }
    }
    Some(ways.iter().sum())
}

/// Candidate periods of a sample, by pigeonhole on repeated window words.
///
/// For each length `L`, identical words at non-truncated windows `k₁ < k₂`
/// yield the raw candidate `(k₂−k₁)·L`; raw candidates and their rational
/// divisors are then filtered through `basis_translate_period`, and any
/// candidate that is an integer multiple of a smaller surviving one is
/// dropped. Discovery only nominates periods — certification belongs to
/// `verify_spectrum`.
pub fn discover_period(
    domain: &IntervalUnion,
    sample: &DiscreteSampleSet,
    lengths: &[Rational],
) -> Result<Vec<Rational>> {
    domain.require_normalized()?;
    let alphabet = gap_alphabet(sample)?;
    let min_gap = alphabet.min_gap().clone();
    let basis = rank_span(domain, sample)?;

    let mut raw = BTreeSet::new();
    let mut any_length_usable = false;
    for l in lengths {
        let windows = split_windows(sample, l)?;
        let full: Vec<(i64, &Vec<Rational>)> = windows
            .iter()
            .filter(|(_, _, _, truncated)| !truncated)
            .map(|(k, _, word, _)| (*k, word))
            .collect();
        if full.len() < 2 {
            continue;
        }
        any_length_usable = true;
        for (i, (k1, w1)) in full.iter().enumerate() {
            for (k2, w2) in full.iter().skip(i + 1) {
                if w1 == w2 {
                    raw.insert(rat_int(k2 - k1) * l);
                }
            }
        }
    }
    if !any_length_usable {
        let span = match (sample.min(), sample.max()) {
            (Some(a), Some(b)) => b - a,
            _ => Rational::zero(),
        };
        let shortest = lengths.iter().min().cloned().unwrap_or_else(Rational::zero);
        return Err(Error::SpanTooShort {
            span: format_rational(&span),
            window: format_rational(&(rat_int(2) * shortest)),
        });
    }

    // Raw distances over-shoot the period by an integer factor whenever
    // the repeat was seen several windows apart, so test their divisors
    // too (down to the smallest gap — no period can be shorter).
    let mut survivors = BTreeSet::new();
    for d in &raw {
        let t_max = (d / &min_gap)
            .floor()
            .to_integer()
            .to_i64()
            .unwrap_or(1)
            .max(1);
        for t in 1..=t_max {
            let c = d / rat_int(t);
            if c < min_gap {
                break;
            }
            if basis_translate_period(domain, sample, &basis, &c)? {
                survivors.insert(c);
            }
        }
    }

    // Keep each survivor only if no smaller survivor divides it evenly.
    let list: Vec<Rational> = survivors.iter().cloned().collect();
    let mut out = Vec::new();
    'cand: for d in &list {
        for smaller in &out {
            let ratio: Rational = d / smaller;
            if ratio.denom().is_one() {
                continue 'cand;
            }
        }
        out.push(d.clone());
    }
    Ok(out)
}

/// Extremes and mean of sliding-window counts.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub window_length: Rational,
    pub n_minus: usize,
    pub n_plus: usize,
    /// Mean count divided by the window length, exact.
    pub density: Rational,
}

impl DensityReport {
    pub fn csv(&self) -> String {
        format!(
            "R,n_minus,n_plus,density\n{},{},{},{}\n",
            format_rational(&self.window_length),
            self.n_minus,
            self.n_plus,
            format_rational(&self.density)
        )
    }
}

/// Sliding half-open windows `[x, x+R)` with `x` running over the sample
/// points and the points shifted left by `R`, clipped so the window stays
/// inside the observed span. Reports the extreme and mean counts.
pub fn landau_counts(sample: &DiscreteSampleSet, r: &Rational) -> Result<DensityReport> {
    if !r.is_positive() {
        return Err(Error::NonPositive(format_rational(r)));
    }
    if sample.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: sample.len(),
        });
    }
    let lo = sample.min().expect("nonempty").clone();
    let hi = sample.max().expect("nonempty").clone();
    let span = &hi - &lo;
    if *r > span {
        return Err(Error::SpanTooShort {
            span: format_rational(&span),
            window: format_rational(r),
        });
    }

    let points = sample.points();
    let mut starts = BTreeSet::new();
    for p in points {
        if *p <= &hi - r {
            starts.insert(p.clone());
        }
        let shifted = p - r;
        if shifted >= lo {
            starts.insert(shifted);
        }
    }

    let mut n_minus = usize::MAX;
    let mut n_plus = 0usize;
    let mut total = 0usize;
    for x in &starts {
        let end = x + r;
        let from = points.partition_point(|p| p < x);
        let to = points.partition_point(|p| *p < end);
        let count = to - from;
        n_minus = n_minus.min(count);
        n_plus = n_plus.max(count);
        total += count;
    }
    let windows = starts.len();
    let density = rat_int(total as i64) / (rat_int(windows as i64) * r);
    Ok(DensityReport {
        window_length: r.clone(),
        n_minus,
        n_plus,
        density,
    })
}

/// One class of the fiber decomposition: the subset `E ⊆ [0, 1/d)` whose
/// points all share the same shift fiber `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberClass {
    /// Disjoint half-open cells inside `[0, 1/d)`, sorted ascending.
    pub cells: Vec<(Rational, Rational)>,
    /// The common fiber: exactly `d` integers `k` with `x + k/d ∈ Ω`.
    pub shifts: Vec<i64>,
}

/// Partition of `[0, 1/d)` by fiber equality, for a domain that d-tiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberDecomposition {
    pub period: u64,
    pub classes: Vec<FiberClass>,
}

impl FiberDecomposition {
    pub fn cell_width(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.period))
    }

    /// The domain `[0, 1/d) + A_j/d` generated by class `j`'s fiber.
    pub fn component(&self, j: usize) -> Result<IntervalUnion> {
        let w = self.cell_width();
        let pairs: Vec<(Rational, Rational)> = self.classes[j]
            .shifts
            .iter()
            .map(|a| {
                let left = rat_int(*a) * &w;
                let right = &left + &w;
                (left, right)
            })
            .collect();
        IntervalUnion::from_endpoints(&pairs)
    }

    /// Reassemble the original domain: the union of `E_j + A_j/d` over all
    /// classes.
    pub fn reconstruct(&self) -> Result<IntervalUnion> {
        let w = self.cell_width();
        let mut pairs = Vec::new();
        for class in &self.classes {
            for (l, r) in &class.cells {
                for a in &class.shifts {
                    let shift = rat_int(*a) * &w;
                    pairs.push((l + &shift, r + &shift));
                }
            }
        }
        pairs.sort();
        IntervalUnion::from_endpoints(&pairs)
    }
}

/// Fiber of `x` under the `1/d` shift lattice: all integers `k` with
/// `x + k/d ∈ Ω`.
fn fiber(domain: &IntervalUnion, x: &Rational, cell: &Rational) -> Vec<i64> {
    let mut shifts = Vec::new();
    let mut k = 0i64;
    loop {
        let point = x + rat_int(k) * cell;
        if point >= domain.rightmost() {
            break;
        }
        if domain.contains(&point) {
            shifts.push(k);
        }
        k += 1;
    }
    shifts
}

/// Exact fiber decomposition of a d-tiling domain: sweep the endpoint-
/// induced breakpoints of `[0, 1/d)`, read each subcell's fiber at its
/// midpoint, and group subcells with identical fibers (classes ordered by
/// first appearance, touching cells merged).
pub fn decompose(domain: &IntervalUnion, d: u64) -> Result<FiberDecomposition> {
    domain.require_normalized()?;
    if d == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    if !verify_tiling(domain, d)? {
        return Err(Error::NotATiling { d: d.to_string() });
    }
    let cell = Rational::new(BigInt::one(), BigInt::from(d));

    let mut cuts = BTreeSet::new();
    cuts.insert(Rational::zero());
    cuts.insert(cell.clone());
    for (a, b) in domain.endpoints() {
        cuts.insert(crate::rational::mod_period(&a, &cell));
        cuts.insert(crate::rational::mod_period(&b, &cell));
    }
    let cuts: Vec<Rational> = cuts.into_iter().collect();

    let mut classes: Vec<FiberClass> = Vec::new();
    for pair in cuts.windows(2) {
        let (left, right) = (&pair[0], &pair[1]);
        let mid = (left + right) / rat_int(2);
        let shifts = fiber(domain, &mid, &cell);
        // the tiling hypothesis makes every fiber have exactly d elements
        assert_eq!(shifts.len() as u64, d, "fiber at {} has wrong size", mid);
        match classes.iter_mut().find(|c| c.shifts == shifts) {
            Some(class) => {
                if let Some(last) = class.cells.last_mut() {
                    if last.1 == *left {
                        last.1 = right.clone();
                        continue;
                    }
                }
                class.cells.push((left.clone(), right.clone()));
            }
            None => classes.push(FiberClass {
                cells: vec![(left.clone(), right.clone())],
                shifts,
            }),
        }
    }
    Ok(FiberDecomposition { period: d, classes })
}

/// Check a decomposition against its domain and a spectrum: the classes
/// must partition `[0, 1/d)` with fibers of size `d` and reassemble `Ω`
/// exactly, and every generated component must accept `Λ` as a spectrum
/// (components are translated to the origin first — spectra are
/// translation invariant). Returns `false`, never an error, on violations.
pub fn verify_decomposition(
    domain: &IntervalUnion,
    lam: &PeriodicSet,
    dec: &FiberDecomposition,
) -> Result<bool> {
    if dec.period == 0 || dec.classes.is_empty() {
        return Ok(false);
    }
    let cell = dec.cell_width();

    // Structural pass: fibers of size d, cells sane and disjoint, total
    // width 1/d, reassembly equals the domain.
    let mut all_cells = Vec::new();
    for class in &dec.classes {
        if class.shifts.len() as u64 != dec.period || class.cells.is_empty() {
            return Ok(false);
        }
        if class.shifts.windows(2).any(|w| w[0] >= w[1]) {
            return Ok(false);
        }
        for (l, r) in &class.cells {
            if l >= r || l.is_negative() || *r > cell {
                return Ok(false);
            }
            all_cells.push((l.clone(), r.clone()));
        }
    }
    all_cells.sort();
    let mut covered = Rational::zero();
    for i in 0..all_cells.len() {
        if i + 1 < all_cells.len() && all_cells[i].1 > all_cells[i + 1].0 {
            return Ok(false);
        }
        covered += &all_cells[i].1 - &all_cells[i].0;
    }
    if covered != cell {
        return Ok(false);
    }
    match dec.reconstruct() {
        Ok(rebuilt) if rebuilt == *domain => {}
        _ => return Ok(false),
    }

    // Spectral pass: every component accepts Λ.
    for j in 0..dec.classes.len() {
        let part = dec.component(j)?;
        let origin = part.leftmost().clone();
        let anchored = part.translate(&-origin);
        if !verify_spectrum(&anchored, lam)?.is_spectrum {
            return Ok(false);
        }
    }
    Ok(true)
}
