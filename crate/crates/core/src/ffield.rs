//! Finite fields `F_{p^n}` as `F_p[x] / (f)` for a monic irreducible `f`.
//!
//! Elements are coefficient vectors of length `n` (constant term first).
//! The defining modulus is the lexicographically smallest monic irreducible
//! of degree `n`, comparing `(c_0, c_1, ..., c_{n-1})` ascending, so a field
//! built twice is labelled identically. For `n = 1` the modulus is `x`.
//!
//! Element indices are the base-`p` integers `sum c_j p^j`; [`FieldDesc::enumerate`]
//! walks them in ascending order.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numthy::{ensure_prime, factor_degree};

/// Default cap on the number of elements any enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 2_000_000;

/// Environment variable that overrides [`DEFAULT_ENUM_BUDGET`].
pub const ENUM_BUDGET_ENV: &str = "FFPERIOD_MAX_ENUM";

/// Upper bound on the size of a field that may be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBudget(pub u64);

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget(DEFAULT_ENUM_BUDGET)
    }
}

impl EnumBudget {
    /// The default budget, or the value of `FFPERIOD_MAX_ENUM` when set and numeric.
    pub fn from_env() -> Self {
        std::env::var(ENUM_BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(EnumBudget)
            .unwrap_or_default()
    }
}

/// Polynomials over `F_p` as coefficient vectors, constant term first.
/// Results are trimmed of leading zeros (the zero polynomial is empty).
mod poly {
    use super::{mul_mod_p, pow_mod_p};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod_p(x, y, p)) % p;
            }
        }
        trim(out)
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut rem = trim(a.to_vec());
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead_inv = pow_mod_p(*b.last().unwrap(), p - 2, p);
        let mut quot = vec![0u64; rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = mul_mod_p(*rem.last().unwrap(), lead_inv, p);
            quot[shift] = c;
            for (j, &bj) in b.iter().enumerate() {
                let idx = shift + j;
                rem[idx] = (rem[idx] + p - mul_mod_p(c, bj, p)) % p;
            }
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        div_rem(a, b, p).1
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `base^(p^k) mod m` by `k` repeated `p`-th powers.
    pub fn frobenius_pow(base: &[u64], k: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(base, m, p);
        for _ in 0..k {
            acc = pow_rem(&acc, p, m, p);
        }
        acc
    }

    pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        rem(&acc, m, p)
    }
}

#[inline]
fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    // p < 2^32, so the product fits.
    a * b % p
}

fn pow_mod_p(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_p(acc, b, p);
        }
        b = mul_mod_p(b, b, p);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
///
/// `f` of degree `d` is irreducible iff `x^(p^d) = x (mod f)` and
/// `gcd(x^(p^(d/l)) - x, f) = 1` for every prime `l | d`.
pub fn is_irreducible(p: u64, poly: &[u64]) -> Result<bool> {
    ensure_prime(p)?;
    if p > u32::MAX as u64 {
        return Err(Error::CharacteristicTooLarge(p));
    }
    let f = poly::trim(poly.iter().map(|&c| c % p).collect());
    if f.len() < 2 || f.len() != poly.len() || *f.last().unwrap() != 1 {
        return Err(Error::NotMonic);
    }
    let d = (f.len() - 1) as u64;
    if d == 1 {
        return Ok(true);
    }
    let x = vec![0u64, 1];
    if poly::frobenius_pow(&x, d, &f, p) != poly::rem(&x, &f, p) {
        return Ok(false);
    }
    let spec = factor_degree(d).unwrap_or_else(|_| unreachable!("d >= 2"));
    for l in spec.primes() {
        let h = poly::frobenius_pow(&x, d / l, &f, p);
        let g = poly::gcd(&poly::sub(&h, &x, p), &f, p);
        if g.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element of a [`FieldDesc`]: `n` coefficients in `[0, p)`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<u64>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match (j, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (j, 1) => format!("x^{j}"),
                (j, c) => format!("{c}x^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A concrete realization of `F_{p^n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    p: u64,
    n: usize,
    /// Monic, length `n + 1`, constant term first.
    modulus: Vec<u64>,
}

impl FieldDesc {
    /// A field with an explicitly chosen modulus, which must be monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_irreducible(p, &modulus)? {
            return Err(Error::OutsideScope("modulus is reducible".into()));
        }
        Ok(FieldDesc {
            p,
            n: modulus.len() - 1,
            modulus,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^n`.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.n as u32)
    }

    /// `p^n - 1`, the order of the multiplicative group.
    pub fn unit_group_order(&self) -> BigUint {
        self.size() - 1u32
    }

    /// `p^n` when it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        self.size().to_u64()
    }

    /// `F_{p^n}` label, e.g. `F_{5^4}`.
    pub fn label(&self) -> String {
        format!("F_{{{}^{}}}", self.p, self.n)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.n])
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer under `Z -> F_p -> F_{p^n}`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut c = vec![0; self.n];
        c[0] = v.rem_euclid(self.p as i64) as u64;
        FieldElement(c)
    }

    /// Validates and wraps a coefficient vector.
    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.n {
            return Err(Error::ElementLength {
                expected: self.n,
                got: coeffs.len(),
            });
        }
        if let Some(&coeff) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::UnreducedCoefficient { coeff, p: self.p });
        }
        Ok(FieldElement(coeffs))
    }

    /// The class of `x`, which is `0` when `n = 1` (the modulus is `x`).
    pub fn gen(&self) -> FieldElement {
        let mut c = vec![0; self.n];
        if self.n > 1 {
            c[1] = 1;
        }
        FieldElement(c)
    }

    pub fn from_index(&self, index: u64) -> Result<FieldElement> {
        if let Some(size) = self.size_u64() {
            if index >= size {
                return Err(Error::IndexOutOfRange { index, size });
            }
        }
        let mut rest = index;
        let coeffs = (0..self.n)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect();
        Ok(FieldElement(coeffs))
    }

    /// `sum c_j p^j`; only meaningful for fields whose size fits in `u64`.
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.0.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + p - y) % p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let (p, n) = (self.p, self.n);
        if n == 1 {
            return FieldElement(vec![mul_mod_p(a.0[0], b.0[0], p)]);
        }
        let mut buf = vec![0u64; 2 * n - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                buf[i + j] = (buf[i + j] + mul_mod_p(x, y, p)) % p;
            }
        }
        // x^n = -(c_0 + ... + c_{n-1} x^{n-1})
        for k in (n..2 * n - 1).rev() {
            let c = buf[k];
            if c == 0 {
                continue;
            }
            buf[k] = 0;
            for j in 0..n {
                let m = self.modulus[j];
                if m != 0 {
                    let idx = k - n + j;
                    buf[idx] = (buf[idx] + p - mul_mod_p(c, m, p)) % p;
                }
            }
        }
        buf.truncate(n);
        FieldElement(buf)
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on polynomials.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.p;
        // Invariant: s_i * a = r_i (mod modulus).
        let mut r0 = self.modulus.clone();
        let mut r1 = poly::trim(a.0.clone());
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while r1.len() > 1 {
            let (q, r) = poly::div_rem(&r0, &r1, p);
            let s = poly::sub(&s0, &poly::mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since the modulus is irreducible.
        let c_inv = pow_mod_p(r1[0], p - 2, p);
        let s = poly::rem(&s1, &self.modulus, p);
        let mut out = vec![0u64; self.n];
        for (j, &c) in s.iter().enumerate() {
            out[j] = mul_mod_p(c, c_inv, p);
        }
        Ok(FieldElement(out))
    }

    /// `a^e` by square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &FieldElement, e: u64) -> FieldElement {
        self.pow(a, &BigUint::from(e))
    }

    /// Checks the size against `budget` and returns the element count.
    pub fn check_budget(&self, budget: EnumBudget) -> Result<u64> {
        match self.size_u64() {
            Some(size) if size <= budget.0 => Ok(size),
            _ => Err(Error::BudgetExceeded {
                size: self.size().to_string(),
                budget: budget.0,
            }),
        }
    }

    /// All `p^n` elements in ascending index order.
    pub fn enumerate(&self, budget: EnumBudget) -> Result<Elements<'_>> {
        let size = self.check_budget(budget)?;
        Ok(Elements {
            field: self,
            next: self.zero(),
            remaining: size,
        })
    }
}

/// Iterator over a field in base-`p` index order.
pub struct Elements<'a> {
    field: &'a FieldDesc,
    next: FieldElement,
    remaining: u64,
}

impl Iterator for Elements<'_> {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.next.clone();
        for c in self.next.0.iter_mut() {
            *c += 1;
            if *c < self.field.p {
                break;
            }
            *c = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for Elements<'_> {}

/// `F_{p^n}` with the lexicographically smallest monic irreducible modulus.
pub fn build_field(p: u64, n: usize) -> Result<FieldDesc> {
    ensure_prime(p)?;
    if p > u32::MAX as u64 {
        return Err(Error::CharacteristicTooLarge(p));
    }
    if n == 0 {
        return Err(Error::ZeroExtensionDegree);
    }
    let mut tail = vec![0u64; n];
    // For n > 1 a zero constant term leaves the factor x, so skip that block.
    if n > 1 {
        tail[0] = 1;
    }
    loop {
        let mut candidate = tail.clone();
        candidate.push(1);
        if is_irreducible(p, &candidate)? {
            return Ok(FieldDesc {
                p,
                n,
                modulus: candidate,
            });
        }
        // Advance (c_0, ..., c_{n-1}) lexicographically, c_{n-1} fastest.
        let mut j = n;
        loop {
            if j == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            j -= 1;
            tail[j] += 1;
            if tail[j] < p {
                break;
            }
            tail[j] = 0;
        }
    }
}

/// Given `omega` in the degree-`n/2` subfield of `big_field`, find the first
/// nonzero `zeta` (in index order) with `zeta + 1/zeta = omega`.
pub fn lift_pair(
    big_field: &FieldDesc,
    omega: &FieldElement,
    budget: EnumBudget,
) -> Result<FieldElement> {
    let n2 = big_field.n();
    if n2 % 2 != 0 {
        return Err(Error::NotQuadraticExtension(n2));
    }
    let sub = n2 / 2;
    let q_sub = BigUint::from(big_field.p()).pow(sub as u32);
    if big_field.pow(omega, &q_sub) != *omega {
        return Err(Error::NotInSubfield(sub));
    }
    let one = big_field.one();
    for z in big_field.enumerate(budget)?.skip(1) {
        // z^2 - omega z + 1 = 0
        let lhs = big_field.add(
            &big_field.sub(&big_field.square(&z), &big_field.mul(omega, &z)),
            &one,
        );
        if lhs.is_zero() {
            return Ok(z);
        }
    }
    Err(Error::NoLift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(f: &FieldDesc, c: &[u64]) -> FieldElement {
        f.element(c.to_vec()).unwrap()
    }

    #[test]
    fn build_field_examples() {
        assert_eq!(build_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(build_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(build_field(5, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(build_field(4, 2), Err(Error::NotPrime(4)));
        assert_eq!(build_field(5, 0), Err(Error::ZeroExtensionDegree));
    }

    /// Independent check of the modulus choice: the first candidate in
    /// lexicographic order with no factor of degree <= n/2, found by
    /// exhaustive trial division by every monic polynomial of that degree.
    fn brute_irreducible(p: u64, f: &[u64]) -> bool {
        let d = f.len() - 1;
        for k in 1..=d / 2 {
            let count = p.pow(k as u32);
            for idx in 0..count {
                let mut g: Vec<u64> = (0..k).map(|j| (idx / p.pow(j as u32)) % p).collect();
                g.push(1);
                if poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for (p, dmax) in [(2u64, 8usize), (3, 5), (5, 4), (7, 3)] {
            for d in 1..=dmax {
                let count = p.pow(d as u32);
                for idx in 0..count {
                    let mut f: Vec<u64> = (0..d).map(|j| (idx / p.pow(j as u32)) % p).collect();
                    f.push(1);
                    assert_eq!(
                        is_irreducible(p, &f).unwrap(),
                        brute_irreducible(p, &f),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn rabin_rejects_squarefree_product_of_mixed_degrees() {
        // (x)(x^2 + x + 1)(x^3 + x + 1) over F_2: every factor degree divides 6.
        let f = poly::mul(&poly::mul(&[0, 1], &[1, 1, 1], 2), &[1, 1, 0, 1], 2);
        assert_eq!(f.len(), 7);
        assert!(!is_irreducible(2, &f).unwrap());
    }

    #[test]
    fn modulus_is_lexicographically_first() {
        for (p, n) in [(2u64, 5usize), (3, 4), (5, 3), (7, 2), (2, 8)] {
            let field = build_field(p, n).unwrap();
            let m = field.modulus();
            assert!(brute_irreducible(p, m));
            // Every smaller tail is reducible.
            let key = |f: &[u64]| f[..n].to_vec();
            let count = p.pow(n as u32);
            for idx in 0..count {
                // Tuple (c_0, ..., c_{n-1}) in lexicographic order with c_0 most significant.
                let mut tail: Vec<u64> = (0..n)
                    .map(|j| (idx / p.pow((n - 1 - j) as u32)) % p)
                    .collect();
                if tail == key(m) {
                    break;
                }
                tail.push(1);
                assert!(!brute_irreducible(p, &tail), "{tail:?} precedes {m:?}");
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(!is_irreducible(5, &[1, 0, 1]).unwrap());
        assert!(is_irreducible(3, &[1, 0, 1]).unwrap());
        assert!(is_irreducible(2, &[1, 1, 1]).unwrap());
        assert_eq!(is_irreducible(3, &[1, 0, 2]), Err(Error::NotMonic));
        assert_eq!(is_irreducible(3, &[1]), Err(Error::NotMonic));
    }

    #[test]
    fn arithmetic_examples() {
        let f9 = build_field(3, 2).unwrap();
        let x = f9.gen();
        assert_eq!(f9.mul(&x, &x), f9.from_int(2));
        let a = el(&f9, &[2, 1]);
        assert!(f9.add(&a, &f9.neg(&a)).is_zero());

        let f5 = build_field(5, 1).unwrap();
        assert_eq!(f5.inv(&f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(&f5.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn element_validation() {
        let f9 = build_field(3, 2).unwrap();
        assert_eq!(
            f9.element(vec![1]),
            Err(Error::ElementLength {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            f9.element(vec![0, 3]),
            Err(Error::UnreducedCoefficient { coeff: 3, p: 3 })
        );
    }

    #[test]
    fn powers() {
        let f9 = build_field(3, 2).unwrap();
        for a in f9.enumerate(EnumBudget::default()).unwrap() {
            assert_eq!(f9.pow_u64(&a, 0), f9.one());
            if !a.is_zero() {
                assert_eq!(f9.pow_u64(&a, 8), f9.one());
            }
        }
        let f243 = build_field(3, 5).unwrap();
        for a in f243.enumerate(EnumBudget::default()).unwrap() {
            assert_eq!(f243.pow_u64(&a, 243), a);
        }
    }

    #[test]
    fn enumeration() {
        let f2 = build_field(2, 1).unwrap();
        let all: Vec<_> = f2.enumerate(EnumBudget::default()).unwrap().collect();
        assert_eq!(all, vec![f2.zero(), f2.one()]);

        let f4 = build_field(2, 2).unwrap();
        let all: Vec<_> = f4.enumerate(EnumBudget::default()).unwrap().collect();
        assert_eq!(all.len(), 4);
        assert!(all[0].is_zero());

        let f625 = build_field(5, 4).unwrap();
        let all: Vec<_> = f625.enumerate(EnumBudget::default()).unwrap().collect();
        assert_eq!(all.len(), 625);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(f625.index_of(a), i as u64);
            assert_eq!(&f625.from_index(i as u64).unwrap(), a);
        }

        let big = build_field(2, 64).unwrap();
        assert!(matches!(
            big.enumerate(EnumBudget::default()),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            f625.enumerate(EnumBudget(624)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn lift_pair_examples() {
        let budget = EnumBudget::default();
        let f25 = build_field(5, 2).unwrap();
        assert_eq!(
            lift_pair(&f25, &f25.from_int(2), budget).unwrap(),
            f25.one()
        );
        let z = lift_pair(&f25, &f25.zero(), budget).unwrap();
        assert_eq!(f25.square(&z), f25.from_int(-1));

        let f4 = build_field(2, 2).unwrap();
        assert_eq!(lift_pair(&f4, &f4.zero(), budget).unwrap(), f4.one());

        // x generates F_25 over F_5, so it is not in the subfield.
        assert_eq!(
            lift_pair(&f25, &f25.gen(), budget),
            Err(Error::NotInSubfield(1))
        );
        let f125 = build_field(5, 3).unwrap();
        assert_eq!(
            lift_pair(&f125, &f125.one(), budget),
            Err(Error::NotQuadraticExtension(3))
        );
    }

    #[test]
    fn lift_pair_lands_in_one_of_two_subgroups() {
        for (p, n) in [
            (2u64, 1usize),
            (2, 2),
            (3, 1),
            (3, 2),
            (5, 1),
            (7, 1),
            (11, 1),
        ] {
            let big = build_field(p, 2 * n).unwrap();
            let q = BigUint::from(p).pow(n as u32);
            let budget = EnumBudget::default();
            for omega in big
                .enumerate(budget)
                .unwrap()
                .filter(|w| big.pow(w, &q) == *w)
            {
                let z = lift_pair(&big, &omega, budget).unwrap();
                let zi = big.inv(&z).unwrap();
                assert_eq!(big.add(&z, &zi), omega);
                let minus = big.pow(&z, &(&q - 1u32));
                let plus = big.pow(&z, &(&q + 1u32));
                assert!(minus == big.one() || plus == big.one());
            }
        }
    }

    #[test]
    fn frobenius_fixes_every_small_field() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut n = 1;
            while p.pow(n as u32) <= 3125 {
                let f = build_field(p, n).unwrap();
                let q = f.size();
                for a in f.enumerate(EnumBudget::default()).unwrap() {
                    assert_eq!(f.pow(&a, &q), a);
                }
                n += 1;
            }
        }
    }

    #[test]
    fn inverses_in_small_fields() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 53] {
            let mut n = 1;
            while p.pow(n as u32) <= 3125 {
                let f = build_field(p, n).unwrap();
                for a in f.enumerate(EnumBudget::default()).unwrap().skip(1) {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
                n += 1;
            }
        }
    }

    #[test]
    fn build_is_deterministic() {
        for (p, n) in [(2u64, 10usize), (3, 6), (13, 3)] {
            assert_eq!(build_field(p, n).unwrap(), build_field(p, n).unwrap());
        }
    }

    fn field_and_elements() -> impl Strategy<Value = (FieldDesc, u64, u64, u64)> {
        prop::sample::select(vec![
            (2u64, 7usize),
            (3, 5),
            (5, 3),
            (7, 4),
            (13, 2),
            (31, 1),
            (2, 11),
        ])
        .prop_flat_map(|(p, n)| {
            let f = build_field(p, n).unwrap();
            let size = f.size_u64().unwrap();
            (Just(f), 0..size, 0..size, 0..size)
        })
    }

    proptest! {
        #[test]
        fn field_axioms((f, ia, ib, ic) in field_and_elements()) {
            let a = f.from_index(ia).unwrap();
            let b = f.from_index(ib).unwrap();
            let c = f.from_index(ic).unwrap();
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }
}
