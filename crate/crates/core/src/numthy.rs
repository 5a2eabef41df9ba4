//! Integer number theory over arbitrary-precision integers.
//!
//! Everything a tower computation needs about `p^n - 1`: q-adic valuations,
//! multiplicative orders, and the valuation-transfer rules that give
//! `v_q(p^n - 1)` from `n` alone, without ever forming `p^n`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Deterministic primality test for 64-bit integers (Miller-Rabin with a
/// fixed base set that is exact below 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn ensure_prime(x: u64) -> Result<()> {
    if is_prime(x) {
        Ok(())
    } else {
        Err(Error::NotPrime(x))
    }
}

/// Valuation of a machine integer; `m` must be nonzero and `q >= 2`.
pub(crate) fn v_small(q: u64, mut m: u64) -> u32 {
    debug_assert!(m != 0 && q >= 2);
    let mut v = 0;
    while m % q == 0 {
        m /= q;
        v += 1;
    }
    v
}

/// The q-adic valuation of `m`: the largest `v` with `q^v | m`.
pub fn v_adic(q: u64, m: &BigUint) -> Result<u32> {
    ensure_prime(q)?;
    if m.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if q == 2 {
        return Ok(m.trailing_zeros().unwrap_or(0) as u32);
    }
    let q_big = BigUint::from(q);
    let mut rest = m.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = rest.div_rem(&q_big);
        if !rem.is_zero() {
            return Ok(v);
        }
        rest = quot;
        v += 1;
    }
}

/// `ord_q(p)`: the least `d > 0` with `q | p^d - 1`.
pub fn mult_order(q: u64, p: u64) -> Result<u64> {
    ensure_prime(q)?;
    ensure_prime(p)?;
    if p == q {
        return Err(Error::EqualPrimes(p));
    }
    let base = p % q;
    let mut acc = base;
    let mut d = 1;
    while acc != 1 {
        acc = mul_mod(acc, base, q);
        d += 1;
    }
    Ok(d)
}

/// A map degree `t >= 2` together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredDegree {
    t: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredDegree {
    pub fn t(&self) -> u64 {
        self.t
    }

    /// `(q_i, f_i)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    /// Number of distinct prime factors.
    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_even(&self) -> bool {
        self.t % 2 == 0
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.primes().any(|q| q == p)
    }
}

/// Factor a map degree by trial division.
pub fn factor_degree(t: u64) -> Result<FactoredDegree> {
    if t < 2 {
        return Err(Error::DegreeTooSmall(t));
    }
    let mut factors = Vec::new();
    let mut rest = t;
    let mut q = 2u64;
    while q.saturating_mul(q) <= rest {
        if rest % q == 0 {
            let mut f = 0;
            while rest % q == 0 {
                rest /= q;
                f += 1;
            }
            factors.push((q, f));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredDegree { t, factors })
}

/// `v_q(p^d - 1)` for the order `d` of `p` mod `q`, by checking
/// `p^d = 1 (mod q^k)` for increasing `k`.
fn base_valuation(p: u64, q: u64, d: u64) -> u32 {
    let p_big = BigUint::from(p);
    let q_big = BigUint::from(q);
    let d_big = BigUint::from(d);
    let mut modulus = q_big.clone();
    let mut mu = 0;
    while p_big.modpow(&d_big, &modulus).is_one() {
        mu += 1;
        modulus *= &q_big;
    }
    mu
}

/// `v_q(p^n - 1)` computed from `n` alone via the valuation-transfer rules.
///
/// Zero when `ord_q(p)` does not divide `n`. For odd `q` it is
/// `v_q(p^d - 1) + v_q(n)` with `d = ord_q(p)`. For `q = 2` (so `p` odd) it
/// is `v_2(p - 1)` for odd `n` and `max(v_2(p - 1), v_2(p + 1)) + v_2(n)`
/// for even `n`.
pub fn predicted_valuation(p: u64, q: u64, n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    let d = mult_order(q, p)?;
    if n % d != 0 {
        return Ok(0);
    }
    if q == 2 {
        let lambda = v_small(2, p - 1);
        if n % 2 == 1 {
            return Ok(lambda);
        }
        let mu = lambda.max(v_small(2, p + 1));
        return Ok(mu + v_small(2, n));
    }
    Ok(base_valuation(p, q, d) + v_small(q, n))
}

/// Per-prime tower data for a characteristic `p` and a map degree `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerParams {
    pub p: u64,
    pub spec: FactoredDegree,
    /// `delta[i] = ord_{q_i}(p)`.
    pub delta: Vec<u64>,
    /// `mu[i] = v_{q_i}(p^{delta[i]} - 1)`.
    pub mu: Vec<u32>,
    /// `lcm(delta)`.
    pub cap_delta: u64,
    /// `v_2(p - 1)`, present when `t` is even and `p` odd.
    pub lambda: Option<u32>,
    /// `max(v_2(p - 1), v_2(p + 1))`, present when `t` is even and `p` odd.
    pub mu2: Option<u32>,
}

impl TowerParams {
    /// Position of `q` in the factorization, if present.
    pub fn index_of(&self, q: u64) -> Option<usize> {
        self.spec.primes().position(|x| x == q)
    }
}

pub fn tower_params(p: u64, t: u64) -> Result<TowerParams> {
    ensure_prime(p)?;
    let spec = factor_degree(t)?;
    if spec.contains_prime(p) {
        return Err(Error::CharacteristicDividesDegree { p, t });
    }
    let mut delta = Vec::with_capacity(spec.r());
    let mut mu = Vec::with_capacity(spec.r());
    for q in spec.primes() {
        let d = mult_order(q, p)?;
        delta.push(d);
        mu.push(base_valuation(p, q, d));
    }
    let cap_delta = delta.iter().fold(1u64, |acc, &d| acc.lcm(&d));
    let (lambda, mu2) = if spec.is_even() {
        let lambda = v_small(2, p - 1);
        (Some(lambda), Some(lambda.max(v_small(2, p + 1))))
    } else {
        (None, None)
    };
    Ok(TowerParams {
        p,
        spec,
        delta,
        mu,
        cap_delta,
        lambda,
        mu2,
    })
}

/// `<v_{q_i}(n)>` over the primes of `spec`.
pub fn valuation_vector(n: u64, spec: &FactoredDegree) -> Vec<u32> {
    spec.primes().map(|q| v_small(q, n)).collect()
}

/// `p^n` as a big integer.
pub fn big_pow(p: u64, n: u64) -> BigUint {
    let exp = n.to_u32().expect("exponent fits in u32");
    BigUint::from(p).pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(q: u64, m: u64) -> u32 {
        v_adic(q, &BigUint::from(m)).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(v(2, 24), 3);
        assert_eq!(v(3, 18), 2);
        assert_eq!(v(11, 242), 2);
        assert_eq!(v(7, 5), 0);
    }

    #[test]
    fn valuation_rejects_zero_and_composite_base() {
        assert_eq!(v_adic(3, &BigUint::zero()), Err(Error::ZeroValuation));
        assert_eq!(v_adic(6, &BigUint::from(36u32)), Err(Error::NotPrime(6)));
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(3, 19).unwrap(), 1);
        assert_eq!(mult_order(3, 5).unwrap(), 2);
        assert_eq!(mult_order(5, 2).unwrap(), 4);
        assert_eq!(mult_order(3, 3), Err(Error::EqualPrimes(3)));
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_degree(15).unwrap().factors(), &[(3, 1), (5, 1)]);
        assert_eq!(factor_degree(8).unwrap().factors(), &[(2, 3)]);
        assert_eq!(factor_degree(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factor_degree(1), Err(Error::DegreeTooSmall(1)));
        assert_eq!(factor_degree(97).unwrap().factors(), &[(97, 1)]);
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(predicted_valuation(5, 3, 6).unwrap(), 2);
        assert_eq!(predicted_valuation(3, 2, 2).unwrap(), 3);
        assert_eq!(predicted_valuation(5, 3, 1).unwrap(), 0);
        assert_eq!(predicted_valuation(2, 2, 1), Err(Error::EqualPrimes(2)));
    }

    #[test]
    fn tower_params_examples() {
        let tp = tower_params(2, 15).unwrap();
        assert_eq!(tp.delta, vec![2, 4]);
        assert_eq!(tp.mu, vec![1, 1]);
        assert_eq!(tp.cap_delta, 4);
        assert_eq!(tp.lambda, None);

        let tp = tower_params(5, 3).unwrap();
        assert_eq!(
            (tp.delta.as_slice(), tp.mu.as_slice(), tp.cap_delta),
            (&[2][..], &[1][..], 2)
        );

        let tp = tower_params(19, 3).unwrap();
        assert_eq!(
            (tp.delta.as_slice(), tp.mu.as_slice(), tp.cap_delta),
            (&[1][..], &[2][..], 1)
        );

        let tp = tower_params(17, 2).unwrap();
        assert_eq!((tp.lambda, tp.mu2), (Some(4), Some(4)));
        let tp = tower_params(7, 6).unwrap();
        assert_eq!((tp.lambda, tp.mu2), (Some(1), Some(3)));

        assert_eq!(
            tower_params(3, 6),
            Err(Error::CharacteristicDividesDegree { p: 3, t: 6 })
        );
        assert_eq!(tower_params(2, 15).unwrap(), tower_params(2, 15).unwrap());
    }

    #[test]
    fn valuation_vectors() {
        let spec = factor_degree(15).unwrap();
        assert_eq!(valuation_vector(12, &spec), vec![1, 0]);
        assert_eq!(valuation_vector(45, &spec), vec![2, 1]);
        assert_eq!(valuation_vector(7, &spec), vec![0, 0]);
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    proptest! {
        #[test]
        fn valuation_is_exact(q in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), m in 1u64..1_000_000_000) {
            let v = v(q, m);
            let qv = q.pow(v);
            prop_assert_eq!(m % qv, 0);
            prop_assert_ne!((m / qv) % q, 0);
        }

        #[test]
        fn order_divides_q_minus_one(
            q in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 101, 1009]),
            p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 101, 1009]),
        ) {
            prop_assume!(p != q);
            let d = mult_order(q, p).unwrap();
            prop_assert_eq!((q - 1) % d, 0);
            prop_assert!(d < q);
            prop_assert_eq!(pow_mod(p, d, q), 1);
        }

        #[test]
        fn factorization_multiplies_back(t in 2u64..200_000) {
            let f = factor_degree(t).unwrap();
            let prod: u64 = f.factors().iter().map(|&(q, e)| q.pow(e)).product();
            prop_assert_eq!(prod, t);
            prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.primes().all(is_prime));
        }
    }
}
