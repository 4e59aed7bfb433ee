//! The torus embedding of the line attached to an interval union, the
//! indefinite form that turns orthogonality of exponentials into a scalar
//! identity, and the span/periodicity machinery built on top of it.
//!
//! A point `x` maps to the pair of unit-modulus vectors with entries
//! `e^{2πi(a_j+r_j)x}` and `e^{2πi a_j x}`. Under the form
//! `v ⊙ w = ⟨v₁,w₁⟩ − ⟨v₂,w₂⟩` the image satisfies
//! `φ(x) ⊙ φ(y) = P(x−y)`, so orthogonality questions collapse to zero-set
//! membership of a single rational difference.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::cyclotomic::field::CyclotomicNumber;
use crate::cyclotomic::{sum_is_zero, RootOfUnityTerm};
use crate::domain::{DiscreteSampleSet, IntervalUnion, PeriodicSet};
use crate::error::{Error, Result};
use crate::expoly::ExpPolynomial;
use crate::newton::{check_ap_zeroset, APVerdict};
use crate::rational::{
    denominator_lcm, format_rational, mod_one, mod_period, rat_int, to_f64, Rational,
};

/// Image of one point under the embedding; numeric entries plus the exact
/// angle lists (as fractions of a full turn) that generated them.
#[derive(Debug, Clone)]
pub struct PhiVector {
    base_point: Rational,
    first: Vec<Complex64>,
    second: Vec<Complex64>,
    exact_angles: Option<(Vec<Rational>, Vec<Rational>)>,
}

/// Which arithmetic produced a rank/basis result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    Exact,
    Numeric,
}

/// A greedy basis for the span of the φ-images of a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanBasis {
    pub base_points: Vec<Rational>,
    pub rank: usize,
    pub method: RankMethod,
}

/// Exact certificate attached to a periodic orthogonal extension.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionCertificate {
    /// Every pairwise offset difference passed the shifted zero checks.
    pub orthogonal: bool,
    /// Zero-set progression certificate for the extension period.
    pub ap: APVerdict,
    /// First failing `(offset_i, offset_j, k)` if not orthogonal.
    pub failing: Option<(Rational, Rational, i64)>,
}

fn unit_circle_point(angle: &Rational) -> Complex64 {
    let theta = 2.0 * std::f64::consts::PI * to_f64(angle);
    Complex64::new(theta.cos(), theta.sin())
}

/// The embedding of `x`: unit-modulus coordinates indexed by interval
/// endpoints, with exact angles kept alongside.
pub fn phi(domain: &IntervalUnion, x: &Rational) -> Result<PhiVector> {
    domain.require_normalized()?;
    let mut first_angles = Vec::with_capacity(domain.interval_count());
    let mut second_angles = Vec::with_capacity(domain.interval_count());
    for (left, right) in domain.endpoints() {
        first_angles.push(mod_one(&(&right * x)));
        second_angles.push(mod_one(&(&left * x)));
    }
    let first = first_angles.iter().map(unit_circle_point).collect();
    let second = second_angles.iter().map(unit_circle_point).collect();
    Ok(PhiVector {
        base_point: x.clone(),
        first,
        second,
        exact_angles: Some((first_angles, second_angles)),
    })
}

impl PhiVector {
    pub fn base_point(&self) -> &Rational {
        &self.base_point
    }

    pub fn dimension(&self) -> usize {
        self.first.len()
    }

    pub fn first(&self) -> &[Complex64] {
        &self.first
    }

    pub fn second(&self) -> &[Complex64] {
        &self.second
    }
}

/// `v ⊙ w = ⟨v₁,w₁⟩ − ⟨v₂,w₂⟩`, conjugating the second argument.
pub fn null_form(v: &PhiVector, w: &PhiVector) -> Result<Complex64> {
    if v.dimension() != w.dimension() {
        return Err(Error::DimensionMismatch(v.dimension(), w.dimension()));
    }
    let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
    };
    Ok(inner(&v.first, &w.first) - inner(&v.second, &w.second))
}

/// Exact decision `v ⊙ w = 0` from the stored angles: the form expands into
/// one vanishing-sum question over 2n roots of unity (the same sum as
/// `P(x−y)` when both vectors are φ-images).
pub fn null_form_is_zero_exact(v: &PhiVector, w: &PhiVector) -> Result<bool> {
    if v.dimension() != w.dimension() {
        return Err(Error::DimensionMismatch(v.dimension(), w.dimension()));
    }
    let (va, wb) = match (&v.exact_angles, &w.exact_angles) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::NonPositive(
                "exact form unavailable on a numeric-only vector".into(),
            ))
        }
    };
    let mut terms = Vec::with_capacity(2 * v.dimension());
    for (x, y) in va.0.iter().zip(&wb.0) {
        terms.push(RootOfUnityTerm::new(1, x - y));
    }
    for (x, y) in va.1.iter().zip(&wb.1) {
        terms.push(RootOfUnityTerm::new(-1, x - y));
    }
    sum_is_zero(&terms)
}

/// First pair of points whose φ-images are not mutually null, if any.
fn first_non_null_pair(
    poly: &ExpPolynomial,
    points: &[Rational],
) -> Result<Option<(Rational, Rational)>> {
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            if !poly.is_zero_exact(&(x - y))?.is_zero {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    Ok(None)
}

// --- exact elimination over the cyclotomic field ---

struct ExactEliminator {
    order: u64,
    dim: usize,
    pivots: Vec<(usize, Vec<CyclotomicNumber>)>, // (pivot column, normalized row)
}

impl ExactEliminator {
    fn new(order: u64, dim: usize) -> Self {
        ExactEliminator {
            order,
            dim,
            pivots: Vec::new(),
        }
    }

    fn vector_for(&self, domain: &IntervalUnion, x: &Rational) -> Result<Vec<CyclotomicNumber>> {
        let mut coords = Vec::with_capacity(self.dim);
        for (_, right) in domain.endpoints() {
            coords.push(self.root_at(&(&right * x))?);
        }
        for (left, _) in domain.endpoints() {
            coords.push(self.root_at(&(&left * x))?);
        }
        Ok(coords)
    }

    fn root_at(&self, angle: &Rational) -> Result<CyclotomicNumber> {
        let a = mod_one(angle);
        let scaled = &a * rat_int(self.order as i64);
        debug_assert!(crate::rational::is_integer(&scaled));
        CyclotomicNumber::root_power(self.order, scaled.numer().to_i64().unwrap())
    }

    /// Reduce against existing pivots; if independent, record a new pivot
    /// and answer true.
    fn insert(&mut self, mut v: Vec<CyclotomicNumber>) -> Result<bool> {
        for (col, row) in &self.pivots {
            let coeff = v[*col].clone();
            if coeff.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = &*vi - &(&coeff * ri);
            }
        }
        let Some(col) = v.iter().position(|c| !c.is_zero()) else {
            return Ok(false);
        };
        let inv = v[col].inv()?;
        let row: Vec<CyclotomicNumber> = v.iter().map(|c| c * &inv).collect();
        self.pivots.push((col, row));
        Ok(true)
    }
}

// --- numeric greedy Gram-Schmidt fallback ---

const NUMERIC_RANK_TOL: f64 = 1e-8;

struct NumericEliminator {
    basis: Vec<Vec<Complex64>>, // orthonormal
}

impl NumericEliminator {
    fn new() -> Self {
        NumericEliminator { basis: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<Complex64>) -> bool {
        for q in &self.basis {
            let proj: Complex64 = v.iter().zip(q).map(|(a, b)| a * b.conj()).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm <= NUMERIC_RANK_TOL {
            return false;
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        self.basis.push(v);
        true
    }
}

/// Greedy left-to-right basis of the span of the φ-images. Exact elimination
/// over the cyclotomic field whenever the common root order is within reach;
/// otherwise numeric Gram–Schmidt with the fixed threshold, recorded in
/// `method`.
pub fn rank_span(domain: &IntervalUnion, points: &DiscreteSampleSet) -> Result<SpanBasis> {
    domain.require_normalized()?;
    if points.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let n = domain.interval_count();
    let basis = match rank_span_exact(domain, points) {
        Ok(b) => b,
        Err(Error::OrderTooLarge { .. }) => rank_span_numeric(domain, points)?,
        Err(e) => return Err(e),
    };
    if basis.rank > n {
        // Only non-null families may exceed n; a mutually null family with
        // larger rank contradicts the dimension bound.
        let poly = ExpPolynomial::from_domain(domain)?;
        assert!(
            first_non_null_pair(&poly, points.points())?.is_some(),
            "rank {} exceeds {} on a mutually null family",
            basis.rank,
            n
        );
    }
    Ok(basis)
}

fn rank_span_exact(domain: &IntervalUnion, points: &DiscreteSampleSet) -> Result<SpanBasis> {
    let mut angles: Vec<Rational> = Vec::new();
    for x in points.points() {
        for (left, right) in domain.endpoints() {
            angles.push(mod_one(&(&right * x)));
            angles.push(mod_one(&(&left * x)));
        }
    }
    let n_big = denominator_lcm(angles.iter());
    let order = n_big
        .to_u64()
        .filter(|&n| n <= crate::cyclotomic::MAX_ORDER)
        .ok_or(Error::OrderTooLarge {
            order: n_big.to_string(),
            limit: crate::cyclotomic::MAX_ORDER,
        })?;
    let dim = 2 * domain.interval_count();
    let mut elim = ExactEliminator::new(order, dim);
    let mut base_points = Vec::new();
    for x in points.points() {
        let v = elim.vector_for(domain, x)?;
        if elim.insert(v)? {
            base_points.push(x.clone());
        }
    }
    Ok(SpanBasis {
        rank: base_points.len(),
        base_points,
        method: RankMethod::Exact,
    })
}

fn rank_span_numeric(domain: &IntervalUnion, points: &DiscreteSampleSet) -> Result<SpanBasis> {
    let mut elim = NumericEliminator::new();
    let mut base_points = Vec::new();
    for x in points.points() {
        let v = phi(domain, x)?;
        let coords: Vec<Complex64> = v.first.iter().chain(&v.second).copied().collect();
        if elim.insert(coords) {
            base_points.push(x.clone());
        }
    }
    Ok(SpanBasis {
        rank: base_points.len(),
        base_points,
        method: RankMethod::Numeric,
    })
}

/// Membership in the orthogonality closure of a basis: true iff `x − y` is
/// in the zero set for every basis point `y` (equal points pass trivially).
pub fn membership_test(domain: &IntervalUnion, basis: &SpanBasis, x: &Rational) -> Result<bool> {
    let poly = ExpPolynomial::from_domain(domain)?;
    for y in &basis.base_points {
        if !poly.is_zero_exact(&(x - y))?.is_zero {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does every basis point survive translation by `d` inside the window?
/// A true answer licenses `d` as a period candidate.
pub fn basis_translate_period(
    domain: &IntervalUnion,
    window: &DiscreteSampleSet,
    basis: &SpanBasis,
    d: &Rational,
) -> Result<bool> {
    domain.require_normalized()?;
    for y in &basis.base_points {
        if !window.contains(y) {
            return Err(Error::BasisNotInSample(format_rational(y)));
        }
    }
    Ok(basis.base_points.iter().all(|y| window.contains(&(y + d))))
}

/// Extend a finite mutually-null family periodically: fold the sample onto
/// `[0, d)` offsets and certify every pairwise difference of the periodic
/// set exactly.
///
/// Preconditions (violations are errors carrying the witness): the sample is
/// mutually null, the basis is drawn from the sample and spans its φ-image,
/// and the translated basis stays inside the sample.
pub fn periodic_extension(
    domain: &IntervalUnion,
    sample: &DiscreteSampleSet,
    basis: &SpanBasis,
    d: &Rational,
) -> Result<(PeriodicSet, ExtensionCertificate)> {
    domain.require_normalized()?;
    if !d.is_positive() {
        return Err(Error::NonPositive(format_rational(d)));
    }
    let poly = ExpPolynomial::from_domain(domain)?;
    if let Some((x, y)) = first_non_null_pair(&poly, sample.points())? {
        return Err(Error::NotMutuallyNull(
            format_rational(&x),
            format_rational(&y),
        ));
    }
    for y in &basis.base_points {
        if !sample.contains(y) {
            return Err(Error::BasisNotInSample(format_rational(y)));
        }
        if !sample.contains(&(y + d)) {
            return Err(Error::TranslateMissing(format_rational(&(y + d))));
        }
    }
    // The basis must span the whole sample's φ-image.
    let basis_set = DiscreteSampleSet::new(basis.base_points.clone())?;
    let basis_rank = rank_span(domain, &basis_set)?.rank;
    let sample_rank = rank_span(domain, sample)?.rank;
    if basis_rank < sample_rank {
        return Err(Error::BasisDoesNotSpan {
            basis_rank,
            sample_rank,
        });
    }
    let mut offsets: Vec<Rational> = sample.points().iter().map(|x| mod_period(x, d)).collect();
    offsets.sort();
    offsets.dedup();
    let periodic = PeriodicSet::new(d.clone(), offsets)?;
    let n = domain.interval_count() as i64;
    let ap = check_ap_zeroset(domain, d)?;
    let mut orthogonal = true;
    let mut failing = None;
    'outer: for (i, a) in periodic.offsets().iter().enumerate() {
        for b in periodic.offsets().iter().skip(i + 1) {
            let delta = b - a;
            for k in -n..=n {
                let xi = &delta + d * rat_int(k);
                if !poly.is_zero_exact(&xi)?.is_zero {
                    orthogonal = false;
                    failing = Some((a.clone(), b.clone(), k));
                    break 'outer;
                }
            }
        }
    }
    Ok((
        periodic,
        ExtensionCertificate {
            orthogonal,
            ap,
            failing,
        },
    ))
}
