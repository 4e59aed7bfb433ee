//! The boundary exponential polynomial of an interval union and the
//! transform built on it.
//!
//! For a union of intervals `[a_j, a_j + r_j)` the polynomial
//! `P(ξ) = Σ_j (e^{2πi(a_j+r_j)ξ} − e^{2πi a_j ξ})` carries the zero set of
//! the transform `P(ξ)/(2πiξ)` away from the origin. At rational ξ every
//! term is a root of unity, so membership in the zero set is decided
//! exactly; elsewhere the module offers numeric evaluation and a
//! grid-plus-refinement zero scan.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_traits::Zero;

use crate::cyclotomic::{sum_is_zero, RootOfUnityTerm};
use crate::domain::IntervalUnion;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// Finite sum `Σ c_j e^{2πi f_j ξ}` with integer coefficients and rational
/// frequencies. Duplicate frequencies are combined on construction and zero
/// coefficients dropped, so the term list is canonical up to order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPolynomial {
    terms: Vec<(i64, Rational)>,
}

/// How a zero-set membership question was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroMethod {
    Exact,
    Numeric,
}

/// Verdict on "is ξ in the zero set?". Exact verdicts carry no witness;
/// numeric verdicts record the observed magnitude `|P(ξ)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroVerdict {
    pub is_zero: bool,
    pub method: ZeroMethod,
    pub witness: Option<f64>,
}

impl ExpPolynomial {
    /// Combine duplicate frequencies (first occurrence keeps its slot) and
    /// drop cancelled terms.
    pub fn new(raw: Vec<(i64, Rational)>) -> Self {
        let mut terms: Vec<(i64, Rational)> = Vec::with_capacity(raw.len());
        for (c, f) in raw {
            match terms.iter_mut().find(|(_, g)| *g == f) {
                Some((acc, _)) => *acc += c,
                None => terms.push((c, f)),
            }
        }
        terms.retain(|(c, _)| *c != 0);
        ExpPolynomial { terms }
    }

    /// The boundary polynomial of a normalized union: `(+1, a_j + r_j)` and
    /// `(−1, a_j)` per interval.
    pub fn from_domain(domain: &IntervalUnion) -> Result<Self> {
        domain.require_normalized()?;
        Ok(Self::from_domain_unchecked(domain))
    }

    fn from_domain_unchecked(domain: &IntervalUnion) -> Self {
        let mut raw = Vec::with_capacity(2 * domain.interval_count());
        for (left, right) in domain.endpoints() {
            raw.push((1i64, right));
            raw.push((-1i64, left));
        }
        Self::new(raw)
    }

    pub fn terms(&self) -> &[(i64, Rational)] {
        &self.terms
    }

    /// Largest minus smallest frequency; zero for degenerate polynomials.
    pub fn frequency_spread(&self) -> Rational {
        let max = self.terms.iter().map(|(_, f)| f).max();
        let min = self.terms.iter().map(|(_, f)| f).min();
        match (max, min) {
            (Some(max), Some(min)) => max - min,
            _ => Rational::zero(),
        }
    }

    pub fn eval_numeric(&self, xi: f64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (c, f) in &self.terms {
            let theta = 2.0 * std::f64::consts::PI * to_f64(f) * xi;
            acc += Complex64::new(theta.cos(), theta.sin()) * *c as f64;
        }
        acc
    }

    /// Exact zero-set membership at rational ξ. The origin is a member by
    /// definition (the zero set adjoins {0}), so ξ = 0 answers true even
    /// though the transform itself is 1 there.
    pub fn is_zero_exact(&self, xi: &Rational) -> Result<ZeroVerdict> {
        let is_zero = if xi.is_zero() {
            true
        } else {
            let terms: Vec<RootOfUnityTerm> = self
                .terms
                .iter()
                .map(|(c, f)| RootOfUnityTerm::new(*c, f * xi))
                .collect();
            sum_is_zero(&terms)?
        };
        Ok(ZeroVerdict {
            is_zero,
            method: ZeroMethod::Exact,
            witness: None,
        })
    }

    /// Numeric membership for points with no rational representation.
    pub fn is_zero_numeric(&self, xi: f64, tol: f64) -> ZeroVerdict {
        let mag = self.eval_numeric(xi).norm();
        ZeroVerdict {
            is_zero: mag <= tol,
            method: ZeroMethod::Numeric,
            witness: Some(mag),
        }
    }

    /// All points of `[lo, hi]` where `|P|` dips below `tol`: sample `|P|²`
    /// on a grid with pitch at most `1/(8·frequency spread)`, then refine
    /// each bracketed local minimum by ternary search. Results are sorted
    /// and deduplicated within `tol`.
    pub fn scan_zeros_numeric(&self, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
        // partial_cmp: NaN endpoints and tolerances must be rejected too
        if lo.partial_cmp(&hi) != Some(Ordering::Less) {
            return Err(Error::InvalidRange {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        if tol.partial_cmp(&0.0) != Some(Ordering::Greater) {
            return Err(Error::NonPositive(tol.to_string()));
        }
        let spread = to_f64(&self.frequency_spread());
        let pitch = if spread > 0.0 {
            1.0 / (8.0 * spread)
        } else {
            (hi - lo) / 1024.0
        };
        let steps = ((hi - lo) / pitch).ceil() as usize;
        let steps = steps.max(2);
        let g = |x: f64| self.eval_numeric(x).norm_sqr();
        let xs: Vec<f64> = (0..=steps)
            .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
            .collect();
        let gs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
        let mut zeros: Vec<f64> = Vec::new();
        for i in 0..xs.len() {
            let left_ok = i == 0 || gs[i] <= gs[i - 1];
            let right_ok = i + 1 == xs.len() || gs[i] <= gs[i + 1];
            if !(left_ok && right_ok) {
                continue;
            }
            let mut a = if i == 0 { lo } else { xs[i - 1] };
            let mut b = if i + 1 == xs.len() { hi } else { xs[i + 1] };
            for _ in 0..200 {
                if b - a < 1e-16 * (1.0 + a.abs() + b.abs()) {
                    break;
                }
                let m1 = a + (b - a) / 3.0;
                let m2 = b - (b - a) / 3.0;
                if g(m1) < g(m2) {
                    b = m2;
                } else {
                    a = m1;
                }
            }
            let x = 0.5 * (a + b);
            if g(x).sqrt() <= tol {
                zeros.push(x);
            }
        }
        zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
        zeros.dedup_by(|b, a| (*b - *a).abs() <= tol);
        Ok(zeros)
    }
}

/// The transform `P(ξ)/(2πiξ)` of the indicator of `domain`, with the
/// removable singularity at the origin filled in by the measure.
pub fn eval_chi_hat(domain: &IntervalUnion, xi: f64) -> Complex64 {
    if xi == 0.0 {
        return Complex64::new(to_f64(&domain.measure()), 0.0);
    }
    let p = ExpPolynomial::from_domain_unchecked(domain).eval_numeric(xi);
    p / (Complex64::new(0.0, 2.0 * std::f64::consts::PI * xi))
}

/// Sampled plot rows `ξ, Re P, Im P, |χ̂|` as CSV.
pub fn plot_csv(domain: &IntervalUnion, lo: f64, hi: f64, samples: usize) -> Result<String> {
    // partial_cmp: NaN endpoints must be rejected too
    if lo.partial_cmp(&hi) != Some(Ordering::Less) {
        return Err(Error::InvalidRange {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    if samples < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: samples,
        });
    }
    let p = ExpPolynomial::from_domain_unchecked(domain);
    let mut out = String::from("xi,re_p,im_p,abs_chi_hat\n");
    for i in 0..samples {
        let xi = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let v = p.eval_numeric(xi);
        let chi = eval_chi_hat(domain, xi).norm();
        out.push_str(&format!("{xi},{},{},{chi}\n", v.re, v.im));
    }
    Ok(out)
}
