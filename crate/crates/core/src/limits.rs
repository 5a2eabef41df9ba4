//! Limiting proportions of periodic points along towers of fields.
//!
//! A tower fixes a divisor `delta` of `Delta = lcm(ord_{q_i}(p))` and a
//! valuation vector `nu`, and collects the `n` that satisfy a divisibility
//! rule together with `v_{q_i}(n) = nu_i`. Along a tower the valuations
//! `v_{q_i}(p^n -/+ 1)` are constant, so `#Per / p^n` converges to a closed
//! form and the gap to the limit shrinks exactly like `1 / p^n`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::One;

use crate::census::analytic_count;
use crate::dynmaps::{MapKind, MapSpec};
use crate::error::{Error, Result};
use crate::numthy::{
    big_pow, pow_mod, tower_params, valuation_vector, FactoredDegree, TowerParams,
};

pub use crate::ratio::{
    render_binary32_display, render_decimal, render_truncated, round_to_binary, ExactRatio,
};

/// Upper bound on multiples of `delta` examined by [`tower`].
pub const TOWER_SEARCH_CAP: u64 = 10_000_000;

/// Which `n` belong to a tower, before the valuation condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TowerConstraint {
    /// `delta | n`.
    DeltaDividesN,
    /// `delta | 2n`, the prime-degree Chebyshev rule.
    DeltaDivides2N,
    /// `gcd(Delta, n) = delta`.
    Gcd,
    /// `n = delta * m` with `gcd(m, Delta) = 1`.
    GcdCoprime,
}

impl TowerConstraint {
    /// `DeltaDividesN` or `DeltaDivides2N` for prime-power degrees,
    /// `GcdCoprime` otherwise.
    pub fn default_for(map: &MapSpec) -> Self {
        match (map.spec().is_prime_power(), map.kind()) {
            (true, MapKind::Power) => TowerConstraint::DeltaDividesN,
            (true, MapKind::Chebyshev) => TowerConstraint::DeltaDivides2N,
            (false, _) => TowerConstraint::GcdCoprime,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TowerConstraint::DeltaDividesN => "delta-divides-n",
            TowerConstraint::DeltaDivides2N => "delta-divides-2n",
            TowerConstraint::Gcd => "gcd",
            TowerConstraint::GcdCoprime => "gcd-coprime",
        }
    }
}

impl fmt::Display for TowerConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TowerConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta-divides-n" => Ok(TowerConstraint::DeltaDividesN),
            "delta-divides-2n" => Ok(TowerConstraint::DeltaDivides2N),
            "gcd" => Ok(TowerConstraint::Gcd),
            "gcd-coprime" => Ok(TowerConstraint::GcdCoprime),
            _ => Err(Error::OutsideScope(format!(
                "unknown tower constraint {s:?}"
            ))),
        }
    }
}

/// A validated tower: characteristic, map, `delta`, `nu` and membership rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerQuery {
    map: MapSpec,
    params: TowerParams,
    delta: u64,
    nu: Vec<u32>,
    constraint: TowerConstraint,
}

impl TowerQuery {
    /// `delta` defaults to `Delta` and `constraint` to
    /// [`TowerConstraint::default_for`].
    ///
    /// Prime-power degrees under the divisibility rules require
    /// `delta = ord_q(p)`; otherwise `delta` must divide `Delta`.
    pub fn new(
        p: u64,
        map: MapSpec,
        delta: Option<u64>,
        nu: Vec<u32>,
        constraint: Option<TowerConstraint>,
    ) -> Result<Self> {
        let params = tower_params(p, map.t())?;
        let cap_delta = params.cap_delta;
        let delta = delta.unwrap_or(cap_delta);
        let constraint = constraint.unwrap_or_else(|| TowerConstraint::default_for(&map));
        let invalid = |reason| Error::InvalidDelta {
            delta,
            cap_delta,
            reason,
        };
        if nu.len() != params.spec.r() {
            return Err(Error::NuLength {
                expected: params.spec.r(),
                got: nu.len(),
            });
        }
        if delta == 0 || cap_delta % delta != 0 {
            return Err(invalid("delta must divide Delta"));
        }
        match constraint {
            TowerConstraint::DeltaDividesN | TowerConstraint::DeltaDivides2N => {
                if !params.spec.is_prime_power() {
                    return Err(invalid("composite degrees use the gcd rules"));
                }
                if delta != cap_delta {
                    return Err(invalid("prime-degree towers take delta = ord_q(p)"));
                }
                if constraint == TowerConstraint::DeltaDivides2N && map.kind() == MapKind::Power {
                    return Err(invalid("delta | 2n applies to Chebyshev maps only"));
                }
            }
            TowerConstraint::Gcd | TowerConstraint::GcdCoprime => {}
        }
        Ok(TowerQuery {
            map,
            params,
            delta,
            nu,
            constraint,
        })
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn map(&self) -> &MapSpec {
        &self.map
    }

    pub fn params(&self) -> &TowerParams {
        &self.params
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn nu(&self) -> &[u32] {
        &self.nu
    }

    pub fn constraint(&self) -> TowerConstraint {
        self.constraint
    }

    /// Whether `n` is a member of this tower.
    pub fn admits(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let (delta, cap) = (self.delta, self.params.cap_delta);
        let divisible = match self.constraint {
            TowerConstraint::DeltaDividesN => n % delta == 0,
            TowerConstraint::DeltaDivides2N => (2 * n) % delta == 0,
            TowerConstraint::Gcd => cap.gcd(&n) == delta,
            TowerConstraint::GcdCoprime => n % delta == 0 && (n / delta).gcd(&cap) == 1,
        };
        divisible && valuation_vector(n, &self.params.spec) == self.nu
    }
}

/// A limiting proportion with the prime-power products that produce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limit {
    pub value: ExactRatio,
    /// Set for even composite power maps, whose formula extrapolates the
    /// prime-degree cases.
    pub extension: bool,
    /// Primes dividing `p^delta + 1` but not `p^delta - 1` (Chebyshev, odd `t`).
    pub i_primes: Vec<u64>,
    /// Primes with `ord_q(p) | delta`.
    pub j_primes: Vec<u64>,
    /// Product of `q^{v_q}` over the `p^n + 1` side (1 for power maps).
    pub q_i: BigUint,
    /// Product of `q^{v_q}` over the `p^n - 1` side.
    pub q_j: BigUint,
}

/// Index sets `(I, J)`: `J = {j : delta_j | delta}` and
/// `I = {i not in J : q_i | p^delta + 1}`.
pub fn subsets_ij(p: u64, spec: &FactoredDegree, delta: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    let params = tower_params(p, spec.t())?;
    let mut i_set = Vec::new();
    let mut j_set = Vec::new();
    for (idx, q) in spec.primes().enumerate() {
        if delta % params.delta[idx] == 0 {
            j_set.push(idx);
        } else if (pow_mod(p % q, delta, q) + 1) % q == 0 {
            i_set.push(idx);
        }
    }
    Ok((i_set, j_set))
}

fn prime_power(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// `v_{q_i}(p^n - 1)` along the tower for a prime in `J`.
fn minus_exponent(params: &TowerParams, idx: usize, nu: u32) -> u32 {
    let q = params.spec.factors()[idx].0;
    if q == 2 {
        let lambda = params.lambda.expect("p odd when 2 | t");
        if nu == 0 {
            lambda
        } else {
            params.mu2.expect("p odd when 2 | t") + nu
        }
    } else {
        params.mu[idx] + nu
    }
}

/// Limit of `#Per(z^t, F_{p^n}) / p^n`: `1 / prod_{j in J} q_j^{e_j}`.
pub fn limit_power(query: &TowerQuery) -> Result<Limit> {
    let params = &query.params;
    let (_, j_set) = subsets_ij(params.p, &params.spec, query.delta)?;
    let mut q_j = BigUint::one();
    let mut j_primes = Vec::new();
    for &j in &j_set {
        let q = params.spec.factors()[j].0;
        q_j *= prime_power(q, minus_exponent(params, j, query.nu[j]));
        j_primes.push(q);
    }
    let spec = &params.spec;
    Ok(Limit {
        value: ExactRatio::new(BigUint::one(), q_j.clone())?,
        extension: spec.is_even() && !spec.is_prime_power(),
        i_primes: Vec::new(),
        j_primes,
        q_i: BigUint::one(),
        q_j,
    })
}

/// Limit of `#Per(T_t, F_{p^n}) / p^n`: `(Q_I + Q_J) / (2 Q_I Q_J)`.
///
/// For `t = 2^e` the two products are the 2-parts of `p^n - 1` and
/// `p^n + 1`, which reproduces `(2^{mu+nu-1} + 1) / 2^{mu+nu+1}`.
pub fn limit_cheby(query: &TowerQuery) -> Result<Limit> {
    let params = &query.params;
    let spec = &params.spec;
    let (q_i, q_j, i_primes, j_primes) = if spec.factors()[0].0 == 2 {
        if !spec.is_prime_power() {
            return Err(Error::OutsideScope(format!(
                "Chebyshev limits for even composite degree {}",
                spec.t()
            )));
        }
        let lambda = params.lambda.expect("p odd when 2 | t");
        let mu2 = params.mu2.expect("p odd when 2 | t");
        let nu = query.nu[0];
        let (minus, plus) = if nu == 0 {
            (lambda, mu2 + 1 - lambda)
        } else {
            (mu2 + nu, 1)
        };
        (
            prime_power(2, plus),
            prime_power(2, minus),
            Vec::new(),
            Vec::new(),
        )
    } else {
        let (i_set, j_set) = subsets_ij(params.p, spec, query.delta)?;
        let side = |set: &[usize]| {
            let mut prod = BigUint::one();
            let mut primes = Vec::new();
            for &k in set {
                let q = spec.factors()[k].0;
                prod *= prime_power(q, params.mu[k] + query.nu[k]);
                primes.push(q);
            }
            (prod, primes)
        };
        let (q_i, i_primes) = side(&i_set);
        let (q_j, j_primes) = side(&j_set);
        (q_i, q_j, i_primes, j_primes)
    };
    let value = ExactRatio::new(&q_i + &q_j, (&q_i * &q_j) << 1usize)?;
    Ok(Limit {
        value,
        extension: false,
        i_primes,
        j_primes,
        q_i,
        q_j,
    })
}

pub fn limit(query: &TowerQuery) -> Result<Limit> {
    match query.map.kind() {
        MapKind::Power => limit_power(query),
        MapKind::Chebyshev => limit_cheby(query),
    }
}

/// The `count` smallest members of the tower, ascending.
pub fn tower(query: &TowerQuery, count: usize) -> Result<Vec<u64>> {
    // Every rule admits only multiples of `step`.
    let step = match query.constraint {
        TowerConstraint::DeltaDivides2N => query.delta / query.delta.gcd(&2),
        _ => query.delta,
    };
    let forced = valuation_vector(step, &query.params.spec);
    if forced.iter().zip(&query.nu).any(|(f, nu)| f > nu) {
        return Err(Error::EmptyTower(step));
    }
    let mut out = Vec::with_capacity(count);
    let mut m = 0u64;
    while out.len() < count {
        m += 1;
        if m > TOWER_SEARCH_CAP {
            return Err(Error::EmptyTower(step.saturating_mul(TOWER_SEARCH_CAP)));
        }
        let n = step * m;
        if query.admits(n) {
            out.push(n);
        }
    }
    Ok(out)
}

/// `#Per(map, F_{p^n}) / p^n` from the analytic count.
pub fn ratio_at(p: u64, n: u64, map: &MapSpec) -> Result<ExactRatio> {
    let count = analytic_count(p, n, map)?;
    Ok(ExactRatio::from(Ratio::new(count, big_pow(p, n))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numthy::factor_degree;

    fn q(a: u64, b: u64) -> ExactRatio {
        ExactRatio::from_u64(a, b).unwrap()
    }

    fn query(p: u64, map: &str, delta: Option<u64>, nu: &[u32]) -> TowerQuery {
        TowerQuery::new(p, map.parse().unwrap(), delta, nu.to_vec(), None).unwrap()
    }

    fn lim(p: u64, map: &str, delta: Option<u64>, nu: &[u32]) -> ExactRatio {
        limit(&query(p, map, delta, nu)).unwrap().value
    }

    #[test]
    fn power_limits() {
        assert_eq!(lim(3, "power:2", None, &[0]), q(1, 2));
        assert_eq!(lim(19, "power:3", Some(1), &[1]), q(1, 27));
        assert_eq!(lim(2, "power:15", Some(4), &[0, 0]), q(1, 15));
        assert_eq!(lim(2, "power:15", Some(1), &[0, 0]), q(1, 1));
    }

    #[test]
    fn chebyshev_limits() {
        assert_eq!(lim(7, "cheb:2", None, &[0]), q(5, 16));
        assert_eq!(lim(53, "cheb:3", None, &[0]), q(14, 27));
        assert_eq!(lim(2, "cheb:15", Some(4), &[0, 0]), q(8, 15));
        assert_eq!(lim(2, "cheb:15", Some(2), &[0, 0]), q(4, 15));
        assert_eq!(lim(17, "cheb:2", None, &[1]), q(17, 64));
        let l = limit(&query(2, "cheb:15", Some(4), &[0, 0])).unwrap();
        assert!(l.i_primes.is_empty());
        assert_eq!(l.j_primes, vec![3, 5]);
    }

    #[test]
    fn even_composite_handling() {
        let l = limit(&query(7, "power:6", None, &[0, 0])).unwrap();
        assert!(l.extension);
        let e = limit(&query(7, "cheb:6", None, &[0, 0]));
        assert!(matches!(e, Err(Error::OutsideScope(_))));
    }

    #[test]
    fn index_sets() {
        let spec = factor_degree(15).unwrap();
        assert_eq!(subsets_ij(2, &spec, 4).unwrap(), (vec![], vec![0, 1]));
        assert_eq!(subsets_ij(2, &spec, 2).unwrap(), (vec![1], vec![0]));
        assert_eq!(subsets_ij(2, &spec, 1).unwrap(), (vec![0], vec![]));
    }

    #[test]
    fn tower_examples() {
        assert_eq!(
            tower(&query(5, "power:3", Some(2), &[0]), 3).unwrap(),
            vec![2, 4, 8]
        );
        assert_eq!(
            tower(&query(19, "power:3", Some(1), &[1]), 3).unwrap(),
            vec![3, 6, 12]
        );
        assert_eq!(
            tower(&query(2, "power:15", Some(4), &[0, 0]), 2).unwrap(),
            vec![4, 28]
        );
        assert_eq!(
            tower(&query(3, "power:2", None, &[0]), 4).unwrap(),
            vec![1, 3, 5, 7]
        );
        assert_eq!(
            tower(&query(53, "cheb:3", None, &[0]), 3).unwrap(),
            vec![1, 2, 4]
        );
        let literal = TowerQuery::new(
            2,
            "power:15".parse().unwrap(),
            Some(4),
            vec![0, 0],
            Some(TowerConstraint::Gcd),
        )
        .unwrap();
        assert_eq!(tower(&literal, 2).unwrap(), vec![4, 8]);
    }

    #[test]
    fn empty_tower_is_reported() {
        // ord_7(2) = 3, so every member has v_3(n) >= 1.
        let qy = query(2, "power:21", Some(3), &[0, 0]);
        assert!(matches!(tower(&qy, 1), Err(Error::EmptyTower(_))));
    }

    #[test]
    fn query_validation() {
        let m: MapSpec = "power:3".parse().unwrap();
        let bad = TowerQuery::new(5, m.clone(), Some(1), vec![0], None);
        assert!(matches!(bad, Err(Error::InvalidDelta { .. })));
        let bad = TowerQuery::new(5, m.clone(), None, vec![0, 0], None);
        assert!(matches!(bad, Err(Error::NuLength { .. })));
        let bad = TowerQuery::new(
            5,
            m.clone(),
            None,
            vec![0],
            Some(TowerConstraint::DeltaDivides2N),
        );
        assert!(matches!(bad, Err(Error::InvalidDelta { .. })));
        let bad = TowerQuery::new(3, m, None, vec![0], None);
        assert!(matches!(
            bad,
            Err(Error::CharacteristicDividesDegree { .. })
        ));
        let c: TowerConstraint = "gcd-coprime".parse().unwrap();
        assert_eq!(c.to_string(), "gcd-coprime");
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(
            ratio_at(3, 7, &"power:2".parse().unwrap()).unwrap(),
            q(1094, 2187)
        );
        assert_eq!(
            ratio_at(5, 4, &"power:3".parse().unwrap()).unwrap(),
            q(209, 625)
        );
        assert_eq!(ratio_at(3, 1, &"cheb:2".parse().unwrap()).unwrap(), q(1, 3));
    }
}
