//! Periodic-point counts, two independent ways.
//!
//! The brute-force route builds the functional graph `a -> phi(a)` on every
//! element and peels nodes of in-degree zero until only cycles remain; a
//! finite set mapped onto itself consists of periodic points, so the residue
//! is exactly the periodic set.
//!
//! The analytic route never touches field elements. With `d_1` (resp. `d_2`)
//! the part of `p^n - 1` (resp. `p^n + 1`) prime to `t`:
//!
//! - `z^t` has `d_1 + 1` periodic points: `0` and the `d_1`-th roots of unity;
//! - `T_t` has `(d_1 + d_2) / 2`: the values `z + 1/z` for `z` in
//!   `mu_{d_1} ∪ mu_{d_2}`, paired with their inverses.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::dynmaps::{apply, MapKind, MapSpec};
use crate::error::{Error, Result};
use crate::ffield::{EnumBudget, FieldDesc, FieldElement};
use crate::numthy::{big_pow, ensure_prime, factor_degree, predicted_valuation, FactoredDegree};

/// Orbit statistics of one map on one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    pub field_size: u64,
    pub periodic_count: u64,
    pub preperiodic_count: u64,
    /// One entry per cycle, ascending.
    pub cycle_lengths: Vec<u64>,
    /// Longest path from any point into a cycle.
    pub max_tail: u64,
}

impl OrbitCensus {
    /// Cycle length -> number of cycles of that length.
    pub fn cycle_histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for &l in &self.cycle_lengths {
            *h.entry(l).or_insert(0) += 1;
        }
        h
    }

    pub fn is_permutation(&self) -> bool {
        self.preperiodic_count == 0
    }
}

/// Where a single point sits in the functional graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Periodic { cycle_length: u64 },
    Preperiodic { tail_length: u64, cycle_length: u64 },
}

/// The functional graph of a map on a field, indexed by element index.
#[derive(Debug, Clone)]
pub struct FunctionalGraph {
    succ: Vec<u32>,
    periodic: Vec<bool>,
    /// Length of the cycle each node eventually enters.
    cycle_len: Vec<u32>,
    /// Distance to that cycle (0 on the cycle).
    tail: Vec<u32>,
}

impl FunctionalGraph {
    pub fn build(field: &FieldDesc, map: &MapSpec, budget: EnumBudget) -> Result<Self> {
        let size = field.check_budget(budget)?;
        let size = u32::try_from(size).map_err(|_| Error::BudgetExceeded {
            size: size.to_string(),
            budget: u32::MAX as u64,
        })?;
        let succ: Vec<u32> = (0..size)
            .into_par_iter()
            .map(|i| {
                let z = field.from_index(i as u64).expect("index below field size");
                field.index_of(&apply(field, map, &z)) as u32
            })
            .collect();
        Ok(Self::from_successors(succ))
    }

    /// Analyses an arbitrary functional graph given as a successor table.
    pub fn from_successors(succ: Vec<u32>) -> Self {
        let n = succ.len();
        let mut indeg = vec![0u32; n];
        for &s in &succ {
            indeg[s as usize] += 1;
        }

        // Peel in-degree-zero nodes; the residue is the union of cycles.
        let mut periodic = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            periodic[v] = false;
            let s = succ[v] as usize;
            indeg[s] -= 1;
            if indeg[s] == 0 {
                queue.push_back(s);
            }
        }

        let mut cycle_len = vec![0u32; n];
        let mut tail = vec![u32::MAX; n];
        for start in 0..n {
            if !periodic[start] || tail[start] == 0 {
                continue;
            }
            let mut len = 0u32;
            let mut v = start;
            loop {
                tail[v] = 0;
                len += 1;
                v = succ[v] as usize;
                if v == start {
                    break;
                }
            }
            let mut v = start;
            loop {
                cycle_len[v] = len;
                v = succ[v] as usize;
                if v == start {
                    break;
                }
            }
        }

        // Reverse BFS from the cycles, in CSR form.
        let mut offsets = vec![0usize; n + 1];
        for &s in &succ {
            offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut preds = vec![0u32; n];
        for (v, &s) in succ.iter().enumerate() {
            preds[fill[s as usize]] = v as u32;
            fill[s as usize] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| periodic[v]).collect();
        while let Some(v) = queue.pop_front() {
            for &u in &preds[offsets[v]..offsets[v + 1]] {
                let u = u as usize;
                if !periodic[u] && tail[u] == u32::MAX {
                    tail[u] = tail[v] + 1;
                    cycle_len[u] = cycle_len[v];
                    queue.push_back(u);
                }
            }
        }

        FunctionalGraph {
            succ,
            periodic,
            cycle_len,
            tail,
        }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successors(&self) -> &[u32] {
        &self.succ
    }

    pub fn is_periodic(&self, index: usize) -> bool {
        self.periodic[index]
    }

    pub fn periodic_mask(&self) -> &[bool] {
        &self.periodic
    }

    pub fn classify(&self, index: usize) -> PointClass {
        let cycle_length = self.cycle_len[index] as u64;
        match self.tail[index] {
            0 => PointClass::Periodic { cycle_length },
            t => PointClass::Preperiodic {
                tail_length: t as u64,
                cycle_length,
            },
        }
    }

    pub fn census(&self) -> OrbitCensus {
        let periodic_count = self.periodic.iter().filter(|&&b| b).count() as u64;
        let mut cycle_lengths = Vec::new();
        let mut seen = vec![false; self.len()];
        for v in 0..self.len() {
            if self.periodic[v] && !seen[v] {
                let mut u = v;
                while !seen[u] {
                    seen[u] = true;
                    u = self.succ[u] as usize;
                }
                cycle_lengths.push(self.cycle_len[v] as u64);
            }
        }
        cycle_lengths.sort_unstable();
        OrbitCensus {
            field_size: self.len() as u64,
            periodic_count,
            preperiodic_count: self.len() as u64 - periodic_count,
            cycle_lengths,
            max_tail: self.tail.iter().copied().max().unwrap_or(0) as u64,
        }
    }
}

/// Orbit census of `map` on every element of `field`.
pub fn brute_census(field: &FieldDesc, map: &MapSpec, budget: EnumBudget) -> Result<OrbitCensus> {
    Ok(FunctionalGraph::build(field, map, budget)?.census())
}

pub fn classify_point(
    field: &FieldDesc,
    map: &MapSpec,
    z: &FieldElement,
    budget: EnumBudget,
) -> Result<PointClass> {
    let graph = FunctionalGraph::build(field, map, budget)?;
    Ok(graph.classify(field.index_of(z) as usize))
}

fn check_inputs(p: u64, n: u64, t: u64) -> Result<FactoredDegree> {
    ensure_prime(p)?;
    if n == 0 {
        return Err(Error::ZeroExtensionDegree);
    }
    let spec = factor_degree(t)?;
    if spec.contains_prime(p) {
        return Err(Error::CharacteristicDividesDegree { p, t });
    }
    Ok(spec)
}

/// Divides out `q^v` for each prime of `spec`, with `v` supplied per prime.
fn strip(
    mut m: BigUint,
    spec: &FactoredDegree,
    mut valuation: impl FnMut(u64) -> Result<u32>,
) -> Result<BigUint> {
    for q in spec.primes() {
        let v = valuation(q)?;
        let qv = BigUint::from(q).pow(v);
        let (quot, rem) = m.div_rem(&qv);
        debug_assert!(rem.is_zero(), "q^v must divide");
        m = quot;
    }
    Ok(m)
}

/// The part of `p^n - 1` prime to `t`.
fn d_minus(p: u64, n: u64, spec: &FactoredDegree) -> Result<BigUint> {
    strip(big_pow(p, n) - 1u32, spec, |q| predicted_valuation(p, q, n))
}

/// The part of `p^n + 1` prime to `t`, using `v_q(p^n + 1) = v_q(p^{2n} - 1) - v_q(p^n - 1)`.
fn d_plus(p: u64, n: u64, spec: &FactoredDegree) -> Result<BigUint> {
    strip(big_pow(p, n) + 1u32, spec, |q| {
        Ok(predicted_valuation(p, q, 2 * n)? - predicted_valuation(p, q, n)?)
    })
}

/// `#Per(z^t, F_{p^n})`.
pub fn analytic_count_power(p: u64, n: u64, t: u64) -> Result<BigUint> {
    let spec = check_inputs(p, n, t)?;
    Ok(d_minus(p, n, &spec)? + 1u32)
}

/// `#Per(T_t, F_{p^n})`.
pub fn analytic_count_cheby(p: u64, n: u64, t: u64) -> Result<BigUint> {
    let spec = check_inputs(p, n, t)?;
    let sum = d_minus(p, n, &spec)? + d_plus(p, n, &spec)?;
    let (half, rem) = sum.div_rem(&BigUint::from(2u32));
    assert!(
        rem.is_zero(),
        "d1 + d2 must be even; valuation bookkeeping is inconsistent"
    );
    Ok(half)
}

pub fn analytic_count(p: u64, n: u64, map: &MapSpec) -> Result<BigUint> {
    match map.kind() {
        MapKind::Power => analytic_count_power(p, n, map.t()),
        MapKind::Chebyshev => analytic_count_cheby(p, n, map.t()),
    }
}

/// Whether the map permutes `F_{p^n}` (every point periodic).
///
/// Power maps: no `q_i` divides `p^n - 1`. Chebyshev: no `q_i` divides `p^{2n} - 1`.
pub fn is_permutation_case(p: u64, n: u64, map: &MapSpec) -> Result<bool> {
    let spec = check_inputs(p, n, map.t())?;
    let exponent = match map.kind() {
        MapKind::Power => n,
        MapKind::Chebyshev => 2 * n,
    };
    for q in spec.primes() {
        if predicted_valuation(p, q, exponent)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
