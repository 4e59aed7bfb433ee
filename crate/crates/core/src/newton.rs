//! Newton's identities over exact coefficient domains, and the two
//! arithmetic-progression certificates built on them.
//!
//! If the first `n` points `d, 2d, …, nd` of a progression lie in the zero
//! set, the power sums of the two endpoint root systems agree up to order
//! `n`, hence (Newton) their elementary symmetric functions agree, hence the
//! root multisets agree. The resulting pairing of end roots with start roots
//! certifies the progression for every integer multiple at once, forces `d`
//! to be an integer, and identifies the fold multiplicity with `d`.

use num_traits::Signed;

use crate::domain::{DiscreteSampleSet, IntervalUnion};
use crate::error::{Error, Result};
use crate::expoly::ExpPolynomial;
use crate::rational::{denominator_lcm, format_rational, is_integer, mod_one, rat_int, Rational};

/// Exact coefficient domain for the Newton recurrence: a commutative ring
/// with division by nonzero integers.
pub trait NewtonDomain: Clone + PartialEq {
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn div_by_int(&self, k: i64) -> Self;
}

impl NewtonDomain for Rational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_by_int(&self, k: i64) -> Self {
        self / rat_int(k)
    }
}

impl NewtonDomain for crate::cyclotomic::field::CyclotomicNumber {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_by_int(&self, k: i64) -> Self {
        crate::cyclotomic::field::CyclotomicNumber::div_int(self, k)
            .expect("Newton recurrence divides by k ≥ 1 only")
    }
}

/// Power sums and the monic coefficients they determine, related by
/// `W_k + S_1·W_{k−1} + … + S_{k−1}·W_1 + k·S_k = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonCoefficients<T> {
    pub power_sums: Vec<T>,
    pub coefficients: Vec<T>,
}

/// From power sums `W_1..W_n` of an unknown root multiset to the
/// coefficients `S_1..S_n` of `z^n + S_1 z^{n−1} + … + S_n = Π(z − α_i)`.
pub fn power_sums_to_coeffs<T: NewtonDomain>(w: &[T]) -> Vec<T> {
    let mut s: Vec<T> = Vec::with_capacity(w.len());
    for k in 1..=w.len() {
        let mut acc = w[k - 1].clone();
        for i in 1..k {
            acc = acc.plus(&s[i - 1].times(&w[k - i - 1]));
        }
        s.push(acc.negated().div_by_int(k as i64));
    }
    s
}

/// Outcome of an arithmetic-progression certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct APVerdict {
    /// The finite hypothesis (the first n progression points, or the n+1
    /// sample points) was confirmed.
    pub hypothesis_holds: bool,
    /// The full progression is certified inside the zero set (respectively
    /// consistent with the sampled spectrum window).
    pub full_ap_in_zeroset: bool,
    pub d_is_integer: bool,
    pub tiles: bool,
    /// For each interval index j: the interval index whose start root equals
    /// interval j's end root.
    pub pairing: Option<Vec<(usize, usize)>>,
    /// First failing check as (k, ξ).
    pub failure_witness: Option<(i64, Rational)>,
}

impl APVerdict {
    fn refuted(k: i64, xi: Rational) -> Self {
        APVerdict {
            hypothesis_holds: false,
            full_ap_in_zeroset: false,
            d_is_integer: false,
            tiles: false,
            pairing: None,
            failure_witness: Some((k, xi)),
        }
    }
}

/// True iff folding by the `1/d` grid covers every point exactly `d` times.
pub fn verify_tiling(domain: &IntervalUnion, d: u64) -> Result<bool> {
    if d == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    let fold = domain.fold_multiplicity(&rat_int(d as i64))?;
    Ok(fold.constant_value() == Some(d))
}

/// Certify that `d, 2d, …, nd` in the zero set propagates to the whole
/// progression `dℤ`: check the hypothesis exactly, rebuild both endpoint
/// root systems in the cyclotomic field, run the Newton recurrence on each,
/// and extract the pairing from the equal root multisets.
pub fn check_ap_zeroset(domain: &IntervalUnion, d: &Rational) -> Result<APVerdict> {
    check_ap_zeroset_with(domain, d, 0)
}

/// As [`check_ap_zeroset`], plus exact spot checks at every `|k| ≤
/// spot_checks` behind the algebraic certificate.
pub fn check_ap_zeroset_with(
    domain: &IntervalUnion,
    d: &Rational,
    spot_checks: i64,
) -> Result<APVerdict> {
    if !d.is_positive() {
        return Err(Error::NonPositive(format_rational(d)));
    }
    let poly = ExpPolynomial::from_domain(domain)?;
    let n = domain.interval_count() as i64;
    for k in 1..=n {
        let xi = d * rat_int(k);
        if !poly.is_zero_exact(&xi)?.is_zero {
            return Ok(APVerdict::refuted(k, xi));
        }
    }
    // End roots e^{2πi d(a_j+r_j)} and start roots e^{2πi d a_j}, as
    // rational angles in [0, 1).
    let endpoints = domain.endpoints();
    let end_angles: Vec<Rational> = endpoints.iter().map(|(_, r)| mod_one(&(d * r))).collect();
    let start_angles: Vec<Rational> = endpoints.iter().map(|(l, _)| mod_one(&(d * l))).collect();
    let order = {
        let all = end_angles.iter().chain(start_angles.iter());
        let n_big = denominator_lcm(all);
        num_traits::ToPrimitive::to_u64(&n_big).ok_or(Error::OrderTooLarge {
            order: n_big.to_string(),
            limit: crate::cyclotomic::MAX_ORDER,
        })?
    };
    let power_sums =
        |angles: &[Rational]| -> Result<Vec<crate::cyclotomic::field::CyclotomicNumber>> {
            let exps: Vec<i64> = angles
                .iter()
                .map(|a| {
                    let scaled = a * rat_int(order as i64);
                    debug_assert!(is_integer(&scaled));
                    num_traits::ToPrimitive::to_i64(scaled.numer()).unwrap()
                })
                .collect();
            (1..=n)
                .map(|k| {
                    let mut acc = crate::cyclotomic::field::CyclotomicNumber::zero(order)?;
                    for e in &exps {
                        acc = &acc
                            + &crate::cyclotomic::field::CyclotomicNumber::root_power(
                                order,
                                e.checked_mul(k).expect("exponent fits i64"),
                            )?;
                    }
                    Ok(acc)
                })
                .collect()
        };
    let w_end = power_sums(&end_angles)?;
    let w_start = power_sums(&start_angles)?;
    let s_end = power_sums_to_coeffs(&w_end);
    let s_start = power_sums_to_coeffs(&w_start);
    assert_eq!(
        s_end, s_start,
        "equal power sums must give equal coefficients"
    );
    // Equal coefficients mean equal root multisets; match angles greedily,
    // ties in index order.
    let mut used = vec![false; start_angles.len()];
    let mut pairing: Vec<(usize, usize)> = Vec::with_capacity(end_angles.len());
    for (j, angle) in end_angles.iter().enumerate() {
        let i = start_angles
            .iter()
            .enumerate()
            .position(|(i, s)| !used[i] && s == angle)
            .unwrap_or_else(|| panic!("root multisets must match once the hypothesis holds"));
        used[i] = true;
        pairing.push((j, i));
    }
    for k in 1..=spot_checks {
        for sign in [1i64, -1] {
            let xi = d * rat_int(sign * k);
            assert!(
                poly.is_zero_exact(&xi)?.is_zero,
                "certified progression failed spot check at k = {}",
                sign * k
            );
        }
    }
    let d_is_integer = is_integer(d);
    let tiles = if d_is_integer {
        verify_tiling(domain, num_traits::ToPrimitive::to_u64(d.numer()).unwrap())?
    } else {
        false
    };
    Ok(APVerdict {
        hypothesis_holds: true,
        full_ap_in_zeroset: true,
        d_is_integer,
        tiles,
        pairing: Some(pairing),
        failure_witness: None,
    })
}

/// Certify that a progression `a, a+d, …, a+nd` observed inside a sampled
/// spectrum window completes to `a + dℤ` consistent with the window: runs
/// the zero-set certificate at `d` and then exact cross checks
/// `(a + kd) − λ ∈ zero set` for every window point `λ` and `|k| ≤ n`.
pub fn extend_ap_in_spectrum(
    domain: &IntervalUnion,
    window: &DiscreteSampleSet,
    a: &Rational,
    d: &Rational,
) -> Result<APVerdict> {
    if !d.is_positive() {
        return Err(Error::NonPositive(format_rational(d)));
    }
    let n = domain.interval_count() as i64;
    let (min, max) = match (window.min(), window.max()) {
        (Some(min), Some(max)) => (min, max),
        _ => {
            return Err(Error::TooFewPoints {
                needed: n as usize + 1,
                got: 0,
            })
        }
    };
    let last = a + d * rat_int(n);
    if a < min || &last > max {
        return Err(Error::WindowTooSmall(format!(
            "progression spans [{}, {}] but window covers [{}, {}]",
            format_rational(a),
            format_rational(&last),
            format_rational(min),
            format_rational(max),
        )));
    }
    for k in 0..=n {
        let point = a + d * rat_int(k);
        if !window.contains(&point) {
            return Ok(APVerdict::refuted(k, point));
        }
    }
    let mut verdict = check_ap_zeroset(domain, d)?;
    if !verdict.hypothesis_holds {
        return Ok(verdict);
    }
    let poly = ExpPolynomial::from_domain(domain)?;
    for lambda in window.points() {
        for k in -n..=n {
            let xi = a + d * rat_int(k) - lambda;
            if !poly.is_zero_exact(&xi)?.is_zero {
                verdict.full_ap_in_zeroset = false;
                verdict.failure_witness = Some((k, xi));
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::field::CyclotomicNumber;
    use crate::rational::rat;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn omega_b() -> IntervalUnion {
        IntervalUnion::from_i64_endpoints(&[(0, 1, 1, 2), (1, 1, 3, 2)]).unwrap()
    }

    fn omega_c() -> IntervalUnion {
        IntervalUnion::from_i64_endpoints(&[(0, 1, 1, 3), (1, 1, 4, 3), (2, 1, 7, 3)]).unwrap()
    }

    fn rats(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn recurrence_matches_hand_expansions() {
        // roots {1,2}: z² − 3z + 2
        assert_eq!(power_sums_to_coeffs(&rats(&[3, 5])), rats(&[-3, 2]));
        // roots {±1}: z² − 1
        assert_eq!(power_sums_to_coeffs(&rats(&[0, 2])), rats(&[0, -1]));
        // roots {0,1}: z² − z
        assert_eq!(power_sums_to_coeffs(&rats(&[1, 1])), rats(&[-1, 0]));
    }

    // Oracle: expand Π(z − α) directly (ascending coefficients) and read off
    // S_1..S_n from z^n + S_1 z^{n−1} + … + S_n.
    fn expand_roots(roots: &[Rational]) -> Vec<Rational> {
        let mut asc = vec![Rational::one()];
        for r in roots {
            let mut next = vec![Rational::zero(); asc.len() + 1];
            for (i, c) in asc.iter().enumerate() {
                next[i + 1] += c;
                let shifted = c * r;
                next[i] -= shifted;
            }
            asc = next;
        }
        let n = asc.len() - 1;
        (1..=n).map(|k| asc[n - k].clone()).collect()
    }

    proptest! {
        #[test]
        fn round_trips_integer_root_multisets(raw in proptest::collection::vec(-6i64..=6, 1..=8)) {
            let roots: Vec<Rational> = raw.iter().map(|&r| rat_int(r)).collect();
            let w: Vec<Rational> = (1..=roots.len() as u32)
                .map(|k| {
                    roots.iter().fold(Rational::zero(), |acc, r| {
                        let mut p = Rational::one();
                        for _ in 0..k {
                            p *= r;
                        }
                        acc + p
                    })
                })
                .collect();
            prop_assert_eq!(power_sums_to_coeffs(&w), expand_roots(&roots));
        }
    }

    #[test]
    fn round_trips_root_of_unity_multisets() {
        // roots ζ_12^e for a fixed exponent multiset, expanded in the field
        let order = 12u64;
        let exps = [0i64, 3, 3, 7];
        let roots: Vec<CyclotomicNumber> = exps
            .iter()
            .map(|&e| CyclotomicNumber::root_power(order, e).unwrap())
            .collect();
        let w: Vec<CyclotomicNumber> = (1..=roots.len() as i64)
            .map(|k| {
                roots
                    .iter()
                    .fold(CyclotomicNumber::zero(order).unwrap(), |acc, r| {
                        let mut p = CyclotomicNumber::one(order).unwrap();
                        for _ in 0..k {
                            p = &p * r;
                        }
                        &acc + &p
                    })
            })
            .collect();
        let s = power_sums_to_coeffs(&w);
        // oracle: direct expansion Π(z − root) in the field
        let mut poly = vec![CyclotomicNumber::one(order).unwrap()];
        for r in &roots {
            let zero = CyclotomicNumber::zero(order).unwrap();
            let mut next = vec![zero; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * r);
            }
            poly = next;
        }
        poly.reverse(); // leading first
        assert_eq!(s, poly[1..].to_vec());
    }

    #[test]
    fn three_interval_domain_certifies_at_three() {
        let v = check_ap_zeroset_with(&omega_c(), &rat_int(3), 50).unwrap();
        assert!(v.hypothesis_holds);
        assert!(v.full_ap_in_zeroset);
        assert!(v.d_is_integer);
        assert!(v.tiles);
        assert!(v.failure_witness.is_none());
        assert_eq!(v.pairing.unwrap().len(), 3);
    }

    #[test]
    fn two_interval_domain_certifies_at_two() {
        let v = check_ap_zeroset_with(&omega_b(), &rat_int(2), 50).unwrap();
        assert!(v.hypothesis_holds && v.full_ap_in_zeroset && v.d_is_integer && v.tiles);
    }

    #[test]
    fn fractional_step_is_refuted_with_witness() {
        let v = check_ap_zeroset(&omega_c(), &rat(1, 3)).unwrap();
        assert!(!v.hypothesis_holds);
        assert!(!v.full_ap_in_zeroset);
        assert_eq!(v.failure_witness, Some((3, rat_int(1))));
    }

    #[test]
    fn wrong_integer_step_is_refuted_immediately() {
        let v = check_ap_zeroset(&omega_c(), &rat_int(2)).unwrap();
        assert!(!v.hypothesis_holds);
        assert_eq!(v.failure_witness, Some((1, rat_int(2))));
    }

    #[test]
    fn nonpositive_step_is_an_error() {
        assert!(check_ap_zeroset(&omega_c(), &rat_int(0)).is_err());
        assert!(check_ap_zeroset(&omega_c(), &rat(-1, 2)).is_err());
    }

    #[test]
    fn crossing_pairing_is_extracted() {
        // End root of the first interval equals the start root of the
        // second and vice versa, so the matching must cross.
        let domain = IntervalUnion::from_i64_endpoints(&[(0, 1, 3, 4), (7, 4, 2, 1)]).unwrap();
        let v = check_ap_zeroset_with(&domain, &rat_int(1), 50).unwrap();
        assert!(v.full_ap_in_zeroset && v.tiles);
        assert_eq!(v.pairing.unwrap(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn tiling_checks_match_fold_oracle() {
        assert!(verify_tiling(&omega_c(), 3).unwrap());
        assert!(!verify_tiling(&omega_c(), 2).unwrap());
        assert!(verify_tiling(&IntervalUnion::unit(), 1).unwrap());
        assert!(verify_tiling(&omega_b(), 2).unwrap());
        assert!(verify_tiling(
            &IntervalUnion::from_i64_endpoints(&[(0, 1, 1, 2), (3, 4, 5, 4)]).unwrap(),
            2
        )
        .unwrap());
        assert!(verify_tiling(&IntervalUnion::unit(), 0).is_err());
    }

    #[test]
    fn certificates_agree_with_tiling_checks() {
        for (domain, d) in [
            (omega_c(), 3u64),
            (omega_b(), 2),
            (IntervalUnion::unit(), 1),
        ] {
            let v = check_ap_zeroset(&domain, &rat_int(d as i64)).unwrap();
            assert!(v.d_is_integer);
            assert_eq!(v.tiles, verify_tiling(&domain, d).unwrap());
        }
    }

    #[test]
    fn hypothesis_points_are_mirror_symmetric() {
        // The zero set is symmetric, so the certificate cannot depend on the
        // sign of the probe direction.
        let poly = ExpPolynomial::from_domain(&omega_c()).unwrap();
        for k in 1..=12i64 {
            let fwd = poly.is_zero_exact(&rat_int(k)).unwrap().is_zero;
            let bwd = poly.is_zero_exact(&rat_int(-k)).unwrap().is_zero;
            assert_eq!(fwd, bwd);
            let fwd = poly.is_zero_exact(&rat(k, 3)).unwrap().is_zero;
            let bwd = poly.is_zero_exact(&rat(-k, 3)).unwrap().is_zero;
            assert_eq!(fwd, bwd);
        }
    }

    fn lambda_c_window() -> DiscreteSampleSet {
        // {0, 1/3, 2/3} + 3ℤ over [0, 12]
        let mut pts = Vec::new();
        for base in [0i64, 3, 6, 9, 12] {
            for off in [rat_int(0), rat(1, 3), rat(2, 3)] {
                pts.push(rat_int(base) + off);
            }
        }
        DiscreteSampleSet::new(pts).unwrap()
    }

    #[test]
    fn spectrum_window_extends_integer_progression() {
        let v = extend_ap_in_spectrum(&omega_c(), &lambda_c_window(), &rat_int(0), &rat_int(3))
            .unwrap();
        assert!(v.hypothesis_holds);
        assert!(v.full_ap_in_zeroset);
        assert!(v.d_is_integer);
        assert!(v.tiles);
    }

    #[test]
    fn short_progression_in_window_does_not_extend() {
        // 0, 1/3, 2/3 are present but the fourth term 1 is not.
        let v =
            extend_ap_in_spectrum(&omega_c(), &lambda_c_window(), &rat_int(0), &rat(1, 3)).unwrap();
        assert!(!v.hypothesis_holds);
        assert_eq!(v.failure_witness, Some((3, rat_int(1))));
    }

    #[test]
    fn unit_domain_window_extends_everywhere() {
        let window = DiscreteSampleSet::from_i64(&[0, 1, 2, 3, 4, 5]);
        let v = extend_ap_in_spectrum(&IntervalUnion::unit(), &window, &rat_int(0), &rat_int(1))
            .unwrap();
        assert!(v.hypothesis_holds && v.full_ap_in_zeroset && v.d_is_integer && v.tiles);
        let v = extend_ap_in_spectrum(&IntervalUnion::unit(), &window, &rat_int(2), &rat_int(1))
            .unwrap();
        assert!(v.hypothesis_holds && v.full_ap_in_zeroset);
    }

    #[test]
    fn undersized_window_is_an_error() {
        let tiny = DiscreteSampleSet::new(vec![rat_int(0), rat(1, 3), rat(2, 3)]).unwrap();
        let res = extend_ap_in_spectrum(&omega_c(), &tiny, &rat_int(0), &rat_int(3));
        assert!(matches!(res, Err(Error::WindowTooSmall(_))));
    }
}
