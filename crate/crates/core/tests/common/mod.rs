//! Reference computations that avoid the library's valuation shortcuts.
#![allow(dead_code)]

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use ffperiod_core::ExactRatio;

/// `v_q(m)` by repeated division.
pub fn valuation(q: u64, m: &BigUint) -> u32 {
    assert!(!m.is_zero());
    let q = BigUint::from(q);
    let mut m = m.clone();
    let mut v = 0;
    loop {
        let (d, r) = m.div_rem(&q);
        if !r.is_zero() {
            return v;
        }
        m = d;
        v += 1;
    }
}

pub fn pow(p: u64, n: u64) -> BigUint {
    BigUint::from(p).pow(n as u32)
}

/// The part of `m` made of primes in `qs`.
pub fn q_part(m: &BigUint, qs: &[u64]) -> BigUint {
    qs.iter()
        .map(|&q| BigUint::from(q).pow(valuation(q, m)))
        .fold(BigUint::one(), |a, b| a * b)
}

/// Prime factors of `t`, by trial division.
pub fn primes_of(mut t: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= t {
        if t % d == 0 {
            out.push(d);
            while t % d == 0 {
                t /= d;
            }
        }
        d += 1;
    }
    if t > 1 {
        out.push(t);
    }
    out
}

/// `#Per(z^t) = (p^n - 1) / Q + 1`, with `Q` the `t`-part found by division.
pub fn power_count(p: u64, n: u64, t: u64) -> BigUint {
    let m = pow(p, n) - 1u32;
    let q = q_part(&m, &primes_of(t));
    m / q + 1u32
}

/// `#Per(T_t) = (d_1 + d_2) / 2` with `d_1`, `d_2` the prime-to-`t` parts of `p^n -/+ 1`.
pub fn cheby_count(p: u64, n: u64, t: u64) -> BigUint {
    let qs = primes_of(t);
    let minus = pow(p, n) - 1u32;
    let plus = pow(p, n) + 1u32;
    let d1 = &minus / q_part(&minus, &qs);
    let d2 = &plus / q_part(&plus, &qs);
    (d1 + d2) / 2u32
}

pub fn ratio(num: BigUint, den: BigUint) -> ExactRatio {
    ExactRatio::new(num, den).unwrap()
}

pub fn signed(r: &ExactRatio) -> BigRational {
    r.to_signed()
}

/// `ord_q(p)` by stepping through powers.
pub fn order(q: u64, p: u64) -> u64 {
    let mut x = p % q;
    let mut k = 1;
    while x != 1 {
        x = x * (p % q) % q;
        k += 1;
    }
    k
}
