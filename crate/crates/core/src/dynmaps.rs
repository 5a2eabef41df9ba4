//! Power maps `z^t` and Chebyshev polynomials `T_t` as evaluable maps.
//!
//! `T_t` is evaluated with a doubling ladder on the pair `(T_k, T_{k+1})`:
//!
//! ```text
//! T_{2k}   = T_k^2 - 2
//! T_{2k+1} = T_k T_{k+1} - w
//! ```
//!
//! so the `k`-th iterate `T_{t^k}` costs `O(k log t)` field multiplications
//! even though its index is a big integer.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ffield::{FieldDesc, FieldElement};
use crate::numthy::{factor_degree, FactoredDegree};

/// Largest index accepted by [`cheb_coeffs`].
pub const CHEB_COEFF_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Power,
    Chebyshev,
}

/// A dynamical map of degree `t >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapSpec {
    kind: MapKind,
    spec: FactoredDegree,
}

impl MapSpec {
    pub fn new(kind: MapKind, t: u64) -> Result<Self> {
        Ok(MapSpec {
            kind,
            spec: factor_degree(t)?,
        })
    }

    pub fn power(t: u64) -> Result<Self> {
        Self::new(MapKind::Power, t)
    }

    pub fn chebyshev(t: u64) -> Result<Self> {
        Self::new(MapKind::Chebyshev, t)
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn t(&self) -> u64 {
        self.spec.t()
    }

    pub fn spec(&self) -> &FactoredDegree {
        &self.spec
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MapKind::Power => write!(f, "power:{}", self.t()),
            MapKind::Chebyshev => write!(f, "cheb:{}", self.t()),
        }
    }
}

impl FromStr for MapSpec {
    type Err = Error;

    /// Parses `power:T` or `cheb:T`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MapSyntax(s.to_string());
        let (kind, t) = s.split_once(':').ok_or_else(bad)?;
        let kind = match kind.trim() {
            "power" => MapKind::Power,
            "cheb" => MapKind::Chebyshev,
            _ => return Err(bad()),
        };
        let t: u64 = t.trim().parse().map_err(|_| bad())?;
        MapSpec::new(kind, t)
    }
}

/// `T_index(w)` by the doubling ladder.
pub fn chebyshev_eval(field: &FieldDesc, index: &BigUint, w: &FieldElement) -> FieldElement {
    let two = field.from_int(2);
    // (T_k, T_{k+1}) starting at k = 0.
    let mut lo = two.clone();
    let mut hi = w.clone();
    for i in (0..index.bits()).rev() {
        let cross = field.sub(&field.mul(&lo, &hi), w);
        if index.bit(i) {
            hi = field.sub(&field.square(&hi), &two);
            lo = cross;
        } else {
            lo = field.sub(&field.square(&lo), &two);
            hi = cross;
        }
    }
    lo
}

/// One application of the map.
pub fn apply(field: &FieldDesc, map: &MapSpec, z: &FieldElement) -> FieldElement {
    let t = BigUint::from(map.t());
    match map.kind {
        MapKind::Power => field.pow(z, &t),
        MapKind::Chebyshev => chebyshev_eval(field, &t, z),
    }
}

/// The `k`-th iterate in closed form: `z^(t^k)` or `T_{t^k}(z)`.
pub fn iterate(field: &FieldDesc, map: &MapSpec, k: u32, z: &FieldElement) -> FieldElement {
    if k == 0 {
        return z.clone();
    }
    let index = BigUint::from(map.t()).pow(k);
    match map.kind {
        MapKind::Power => {
            if z.is_zero() {
                return z.clone();
            }
            let order = field.unit_group_order();
            field.pow(z, &(index % order))
        }
        MapKind::Chebyshev => chebyshev_eval(field, &index, z),
    }
}

/// Integer coefficients of `T_d`, constant term first, from the three-term
/// recursion `T_d = w T_{d-1} - T_{d-2}` with `T_0 = 2`, `T_1 = w`.
pub fn cheb_coeffs(d: u64) -> Result<Vec<BigInt>> {
    if d > CHEB_COEFF_CAP {
        return Err(Error::CoefficientCap(d));
    }
    let mut prev: Vec<BigInt> = vec![BigInt::from(2)];
    if d == 0 {
        return Ok(prev);
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..d {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Replaces a prime-power degree `q^e` by `q`; the periodic sets coincide.
pub fn reduce_prime_power(map: &MapSpec) -> MapSpec {
    match map.spec.factors() {
        [(q, e)] if *e > 1 => MapSpec::new(map.kind, *q).expect("prime degree is valid"),
        _ => map.clone(),
    }
}
