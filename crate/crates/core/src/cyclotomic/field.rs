//! Arithmetic in the cyclotomic field ℚ(ζ_N) ≅ ℚ[x]/Φ_N.
//!
//! Elements are coefficient vectors in the power basis 1, ζ, …, ζ^{φ(N)−1},
//! always reduced mod Φ_N, so equality is coefficient equality. Φ_N is
//! irreducible over ℚ, which makes the quotient a field; inverses come from
//! the extended Euclidean algorithm.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::cyclotomic::cyclotomic_polynomial;
use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<Rational>, // length φ(order), reduced mod Φ_order
}

fn phi_as_rational(order: u64) -> Vec<Rational> {
    // Order was validated by the constructor; the cache cannot refuse it now.
    let phi = cyclotomic_polynomial(order).expect("order validated at construction");
    phi.coeffs()
        .iter()
        .map(|c| Rational::from(c.clone()))
        .collect()
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Remainder of `a` mod the monic polynomial `m`, over ℚ.
fn rem_monic(mut a: Vec<Rational>, m: &[Rational]) -> Vec<Rational> {
    let d = m.len() - 1;
    debug_assert!(m[d].is_one());
    while a.len() > d {
        let lead = a.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = a.len() - d;
        for i in 0..d {
            let delta = &lead * &m[i];
            a[shift + i] -= delta;
        }
    }
    a.resize(d, Rational::zero());
    a
}

/// Quotient and remainder over ℚ; `b` need not be monic.
fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db {
        let factor = rem.last().unwrap() * &lead_inv;
        let shift = rem.len() - 1 - db;
        quot[shift] = factor.clone();
        for i in 0..=db {
            let delta = &factor * &b[i];
            rem[shift + i] -= delta;
        }
        rem = trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(out)
}

impl CyclotomicNumber {
    /// Build from an arbitrary-length coefficient vector; reduces mod Φ_N.
    pub fn new(order: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let phi = cyclotomic_polynomial(order)?; // validates the order
        let m: Vec<Rational> = phi
            .coeffs()
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        Ok(CyclotomicNumber {
            order,
            coeffs: rem_monic(coeffs, &m),
        })
    }

    pub fn zero(order: u64) -> Result<Self> {
        Self::new(order, Vec::new())
    }

    pub fn one(order: u64) -> Result<Self> {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u64, value: Rational) -> Result<Self> {
        Self::new(order, vec![value])
    }

    /// ζ_N^k (any integer k, reduced mod N).
    pub fn root_power(order: u64, k: i64) -> Result<Self> {
        let n = order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Self::new(order, coeffs)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
            && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn div_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&rat_int(k).recip()))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_N. Fails only on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = phi_as_rational(self.order);
        let mut old_r = trim(self.coeffs.clone());
        let mut r = phi.clone();
        let mut old_u: Vec<Rational> = vec![Rational::one()];
        let mut u: Vec<Rational> = Vec::new();
        // Invariant: old_u·self ≡ old_r and u·self ≡ r (mod Φ_N).
        while !r.is_empty() {
            let (q, rem) = divmod(&old_r, &r);
            let new_u = poly_sub(&old_u, &poly_mul(&q, &u));
            old_r = r;
            r = rem;
            old_u = u;
            u = new_u;
        }
        // Φ_N is irreducible and self ≠ 0, so the gcd is a nonzero constant.
        assert_eq!(old_r.len(), 1, "cyclotomic polynomial must be irreducible");
        let c_inv = old_r[0].recip();
        let scaled: Vec<Rational> = old_u.iter().map(|x| x * &c_inv).collect();
        CyclotomicNumber::new(self.order, scaled)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Numeric value with ζ_N = e^{2πi/N}; for crosschecks and diagnostics.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / self.order as f64;
            acc +=
                num_complex::Complex64::new(theta.cos(), theta.sin()) * crate::rational::to_f64(c);
        }
        acc
    }
}

fn assert_same_order(a: &CyclotomicNumber, b: &CyclotomicNumber) {
    assert_eq!(
        a.order, b.order,
        "cyclotomic numbers must share one root order"
    );
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_same_order(self, rhs);
        CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_same_order(self, rhs);
        CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_same_order(self, rhs);
        let product = poly_mul(&self.coeffs, &rhs.coeffs);
        let phi = phi_as_rational(self.order);
        CyclotomicNumber {
            order: self.order,
            coeffs: rem_monic(product, &phi),
        }
    }
}
