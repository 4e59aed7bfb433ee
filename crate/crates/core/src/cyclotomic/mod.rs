//! Exact decisions about sums of roots of unity.
//!
//! A finite sum `Σ c_j e^{2πi p_j/q_j}` with integer coefficients vanishes
//! iff, after putting every exponent over the common denominator
//! `N = lcm(q_j)`, the accumulated polynomial in `ℤ[x]/(x^N − 1)` is
//! divisible by the N-th cyclotomic polynomial `Φ_N`. That divisibility is
//! an integer-arithmetic question, so the decision procedure here is exact.

pub mod field;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{mod_one, Rational};

/// Hard ceiling on the root-of-unity order. `Φ_N` is computed by repeated
/// polynomial division, which is quadratic in `N`; beyond this the exact
/// path is refused rather than allowed to crawl.
pub const MAX_ORDER: u64 = 10_000;

/// One term `coeff · e^{2πi·exponent}` of a sum of roots of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnityTerm {
    pub coeff: BigInt,
    pub exponent: Rational,
}

impl RootOfUnityTerm {
    pub fn new(coeff: i64, exponent: Rational) -> Self {
        RootOfUnityTerm {
            coeff: coeff.into(),
            exponent,
        }
    }
}

/// Dense integer polynomial, index = degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    /// `x^n - 1`.
    pub fn power_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntegerPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial answers `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Remainder of `self` under division by a monic divisor. Monicity keeps
    /// every intermediate coefficient an integer.
    pub fn rem_monic(&self, divisor: &IntegerPolynomial) -> IntegerPolynomial {
        let d = divisor.degree().expect("divisor must be nonzero");
        assert!(divisor.coeffs[d].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let lead = rem.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = rem.len() - d;
            for i in 0..d {
                let delta = &lead * &divisor.coeffs[i];
                rem[shift + i] -= delta;
            }
        }
        IntegerPolynomial::new(rem)
    }

    /// Exact quotient under a monic divisor; panics if the division leaves a
    /// remainder (internal use only, on products known to be exact).
    fn div_exact_monic(&self, divisor: &IntegerPolynomial) -> IntegerPolynomial {
        let d = divisor.degree().expect("divisor must be nonzero");
        assert!(divisor.coeffs[d].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        let mut quot: Vec<BigInt> = Vec::new();
        while rem.len() > d {
            let lead = rem.pop().unwrap();
            let shift = rem.len() - d;
            if !lead.is_zero() {
                for i in 0..d {
                    let delta = &lead * &divisor.coeffs[i];
                    rem[shift + i] -= delta;
                }
            }
            quot.push(lead);
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "division was expected to be exact"
        );
        quot.reverse();
        IntegerPolynomial::new(quot)
    }
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, IntegerPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntegerPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The N-th cyclotomic polynomial `Φ_N`, from the identity
/// `x^N − 1 = Π_{d|N} Φ_d`: divide `x^N − 1` by `Φ_d` for every proper
/// divisor `d`. Results are cached for the life of the process.
pub fn cyclotomic_polynomial(order: u64) -> Result<IntegerPolynomial> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: order.to_string(),
            limit: MAX_ORDER,
        });
    }
    if let Some(p) = cyclo_cache().lock().unwrap().get(&order) {
        return Ok(p.clone());
    }
    let mut poly = IntegerPolynomial::power_minus_one(order as usize);
    for d in 1..order {
        if order.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d)?;
            poly = poly.div_exact_monic(&phi_d);
        }
    }
    cyclo_cache().lock().unwrap().insert(order, poly.clone());
    Ok(poly)
}

/// Accumulate terms over the common order `N = lcm(q_j)` into an element of
/// `ℤ[x]/(x^N − 1)`; returns `(N, coefficient vector of length N)`.
pub fn accumulate_terms(terms: &[RootOfUnityTerm]) -> Result<(u64, Vec<BigInt>)> {
    let mut n_big = BigInt::one();
    let mut reduced: Vec<(BigInt, Rational)> = Vec::with_capacity(terms.len());
    for t in terms {
        let e = mod_one(&t.exponent);
        n_big = n_big.lcm(e.denom());
        reduced.push((t.coeff.clone(), e));
    }
    let order = n_big
        .to_u64()
        .filter(|&n| n <= MAX_ORDER)
        .ok_or_else(|| Error::OrderTooLarge {
            order: n_big.to_string(),
            limit: MAX_ORDER,
        })?;
    let mut acc = vec![BigInt::zero(); order as usize];
    for (coeff, e) in reduced {
        // e = p/q in lowest terms with 0 ≤ p < q; its slot is p·(N/q).
        let q = e.denom();
        let idx = (e.numer() * (&n_big / q)).to_u64().unwrap() as usize;
        acc[idx] += coeff;
    }
    Ok((order, acc))
}

/// Exact decision: does `Σ c_j e^{2πi·exponent_j}` equal zero?
pub fn sum_is_zero(terms: &[RootOfUnityTerm]) -> Result<bool> {
    let (order, acc) = accumulate_terms(terms)?;
    let poly = IntegerPolynomial::new(acc);
    if poly.is_zero() {
        return Ok(true);
    }
    let phi = cyclotomic_polynomial(order)?;
    Ok(poly.rem_monic(&phi).is_zero())
}

/// Canonical representative of an element of `ℤ[x]/(x^N − 1)` in the quotient
/// `ℤ[x]/Φ_N`: the remainder mod `Φ_N`, degree below `φ(N)`.
pub fn normalize_element(order: u64, coeffs: &[BigInt]) -> Result<IntegerPolynomial> {
    let phi = cyclotomic_polynomial(order)?;
    Ok(IntegerPolynomial::new(coeffs.to_vec()).rem_monic(&phi))
}
