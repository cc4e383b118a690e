//! Wreath products `Γ ≀ Sₙ` with `Γ` cyclic of order `m`, acting on `ℂ²ⁿ`.
//!
//! `Γ` is embedded in `Sp(2)` as the group generated by `diag(ζ, ζ⁻¹)` for a
//! primitive `m`-th root of unity `ζ`. An element is stored as a twist vector
//! of residues mod `m` together with a permutation of the `n` blocks, and acts
//! by first permuting the blocks and then scaling block `i` by
//! `diag(ζ^gᵢ, ζ^-gᵢ)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on `m^n · n!` for [`census`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    m: u32,
    n: u32,
}

impl GroupParams {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter("m (order of the cyclic group) must be >= 1".into()));
        }
        if n == 0 {
            return Err(Error::Parameter("n (number of C^2 factors) must be >= 1".into()));
        }
        Ok(GroupParams { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `m^n · n!`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        let mut order: u128 = 1;
        for _ in 0..self.n {
            order = order.saturating_mul(self.m as u128);
        }
        for i in 2..=self.n as u128 {
            order = order.saturating_mul(i);
        }
        order
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement { params: *self, twists: vec![0; self.n as usize], perm: (0..self.n as usize).collect() }
    }

    /// Every element of the group, twists varying fastest.
    pub fn elements(&self) -> Elements {
        Elements::new(*self)
    }
}

/// A group element `(g, σ)`.
///
/// `perm` is stored in one-line form, 0-based: `perm[i] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    params: GroupParams,
    twists: Vec<u32>,
    perm: Vec<usize>,
}

impl WreathElement {
    /// Builds an element from raw twists (reduced mod `m`) and a 0-based
    /// one-line permutation.
    pub fn new(params: GroupParams, twists: &[i64], perm: &[usize]) -> Result<Self> {
        let n = params.n as usize;
        if twists.len() != n || perm.len() != n {
            return Err(Error::Parameter(format!(
                "expected {n} twists and a permutation of length {n}, got {} and {}",
                twists.len(),
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parameter(format!("{perm:?} is not a permutation of 0..{n}")));
            }
        }
        let m = params.m as i64;
        Ok(WreathElement {
            params,
            twists: twists.iter().map(|t| t.rem_euclid(m) as u32).collect(),
            perm: perm.to_vec(),
        })
    }

    /// Same as [`WreathElement::new`] but takes a 1-based permutation, the
    /// way cycles are usually written down.
    pub fn from_one_based(params: GroupParams, twists: &[i64], perm: &[usize]) -> Result<Self> {
        if perm.contains(&0) {
            return Err(Error::Parameter("1-based permutation contains 0".into()));
        }
        let zero_based: Vec<usize> = perm.iter().map(|p| p - 1).collect();
        Self::new(params, twists, &zero_based)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn twists(&self) -> &[u32] {
        &self.twists
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.twists.iter().all(|&t| t == 0) && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `σ(h)` with `σ(h)_i = h_{σ⁻¹(i)}`.
    fn permute_twists(&self, h: &[u32]) -> Vec<u32> {
        let mut out = vec![0; h.len()];
        for (j, &target) in self.perm.iter().enumerate() {
            out[target] = h[j];
        }
        out
    }

    /// `(g, σ)·(h, τ) = (g + σ(h), στ)`.
    pub fn compose(&self, other: &WreathElement) -> Result<WreathElement> {
        if self.params != other.params {
            return Err(Error::Parameter(format!(
                "cannot compose elements of different groups (m={}, n={}) and (m={}, n={})",
                self.params.m, self.params.n, other.params.m, other.params.n
            )));
        }
        let m = self.params.m;
        let moved = self.permute_twists(&other.twists);
        let twists = self.twists.iter().zip(&moved).map(|(a, b)| (a + b) % m).collect();
        let perm = other.perm.iter().map(|&i| self.perm[i]).collect();
        Ok(WreathElement { params: self.params, twists, perm })
    }

    /// `(g, σ)⁻¹ = (-σ⁻¹(g), σ⁻¹)`.
    pub fn inverse(&self) -> WreathElement {
        let m = self.params.m;
        let mut inv_perm = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv_perm[p] = i;
        }
        // σ⁻¹(g)_i = g_{σ(i)}
        let twists = self.perm.iter().map(|&p| (m - self.twists[p]) % m).collect();
        WreathElement { params: self.params, twists, perm: inv_perm }
    }

    /// Cycles of the permutation, each listed from its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.perm)
    }

    /// Codimension of the fixed subspace in `ℂ²ⁿ`.
    ///
    /// A cycle of blocks contributes a fixed plane exactly when its twists
    /// sum to zero mod `m`, so the codimension is `2(n - Z)` with `Z` the
    /// number of such cycles.
    pub fn fixed_codim(&self) -> u32 {
        codim_from_cycles(&cycles_of(&self.perm), &self.twists, self.params.m)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<usize> = self.perm.iter().map(|p| p + 1).collect();
        write!(f, "({:?}, {:?})", self.twists, perm)
    }
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = perm[i];
        }
        cycles.push(cycle);
    }
    cycles
}

fn codim_from_cycles(cycles: &[Vec<usize>], twists: &[u32], m: u32) -> u32 {
    let zero_sum =
        cycles.iter().filter(|c| c.iter().map(|&i| twists[i] as u64).sum::<u64>() % m as u64 == 0).count() as u32;
    2 * (twists.len() as u32 - zero_sum)
}

/// Iterator over all elements of a wreath product.
pub struct Elements {
    params: GroupParams,
    twists: Vec<u32>,
    perm: Vec<usize>,
    done: bool,
}

impl Elements {
    fn new(params: GroupParams) -> Self {
        let n = params.n as usize;
        Elements { params, twists: vec![0; n], perm: (0..n).collect(), done: false }
    }
}

impl Iterator for Elements {
    type Item = WreathElement;

    fn next(&mut self) -> Option<WreathElement> {
        if self.done {
            return None;
        }
        let item = WreathElement { params: self.params, twists: self.twists.clone(), perm: self.perm.clone() };
        if !advance_twists(&mut self.twists, self.params.m) && !next_permutation(&mut self.perm) {
            self.done = true;
        }
        Some(item)
    }
}

/// Odometer increment; returns false after wrapping back to all zeros.
fn advance_twists(twists: &mut [u32], m: u32) -> bool {
    for t in twists.iter_mut() {
        *t += 1;
        if *t < m {
            return true;
        }
        *t = 0;
    }
    false
}

/// Lexicographic successor; returns false (leaving the slice sorted) after
/// the last permutation.
pub(crate) fn next_permutation<T: Ord>(perm: &mut [T]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Element counts by fixed-space codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub params: GroupParams,
    pub order: u64,
    pub by_codim: BTreeMap<u32, u64>,
}

impl CensusReport {
    /// Number of symplectic reflections (codimension-2 elements).
    pub fn reflections(&self) -> u64 {
        self.by_codim.get(&2).copied().unwrap_or(0)
    }

    /// `{"m":..,"n":..,"order":..,"by_codim":{"0":..,..}}` with sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        let by_codim: serde_json::Map<String, serde_json::Value> =
            self.by_codim.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect();
        serde_json::json!({
            "m": self.params.m,
            "n": self.params.n,
            "order": self.order,
            "by_codim": by_codim,
        })
    }
}

pub fn census(params: GroupParams) -> Result<CensusReport> {
    census_bounded(params, DEFAULT_ENUMERATION_BOUND)
}

/// Enumerates the whole group and buckets elements by [`WreathElement::fixed_codim`].
///
/// Work is split by permutation; each worker walks all twist vectors for its
/// permutations and the partial counts are merged at the end.
pub fn census_bounded(params: GroupParams, bound: u64) -> Result<CensusReport> {
    use rayon::prelude::*;

    let order = params.order();
    if order > bound as u128 {
        return Err(Error::Size { order, bound });
    }
    let n = params.n as usize;
    let mut perms = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        perms.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let by_codim = perms
        .par_iter()
        .map(|perm| {
            let cycles = cycles_of(perm);
            let mut counts = BTreeMap::new();
            let mut twists = vec![0u32; n];
            loop {
                *counts.entry(codim_from_cycles(&cycles, &twists, params.m)).or_insert(0u64) += 1;
                if !advance_twists(&mut twists, params.m) {
                    break;
                }
            }
            counts
        })
        .reduce(BTreeMap::new, |mut acc, part| {
            for (k, v) in part {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        });
    Ok(CensusReport { params, order: order as u64, by_codim })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(m: u32, n: u32, twists: &[i64], perm: &[usize]) -> WreathElement {
        WreathElement::from_one_based(GroupParams::new(m, n).unwrap(), twists, perm).unwrap()
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(matches!(GroupParams::new(0, 1), Err(Error::Parameter(_))));
        assert!(matches!(GroupParams::new(1, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn rejects_non_permutation() {
        let p = GroupParams::new(2, 2).unwrap();
        assert!(WreathElement::new(p, &[0, 0], &[0, 0]).is_err());
        assert!(WreathElement::new(p, &[0], &[0, 1]).is_err());
    }

    #[test]
    fn compose_swap_example() {
        let a = el(2, 2, &[1, 0], &[2, 1]);
        let b = el(2, 2, &[0, 1], &[2, 1]);
        let c = a.compose(&b).unwrap();
        assert!(c.is_identity(), "{c}");
    }

    #[test]
    fn compose_rejects_mismatched_groups() {
        let a = el(2, 2, &[0, 0], &[1, 2]);
        let b = el(3, 2, &[0, 0], &[1, 2]);
        assert!(matches!(a.compose(&b), Err(Error::Parameter(_))));
    }

    #[test]
    fn inverse_swap_example() {
        let a = el(2, 2, &[1, 0], &[2, 1]);
        assert_eq!(a.inverse(), el(2, 2, &[0, 1], &[2, 1]));
    }

    #[test]
    fn fixed_codim_examples() {
        assert_eq!(GroupParams::new(3, 3).unwrap().identity().fixed_codim(), 0);
        assert_eq!(el(2, 1, &[1], &[1]).fixed_codim(), 2);
        assert_eq!(el(2, 2, &[1, 1], &[2, 1]).fixed_codim(), 2);
        assert_eq!(el(2, 2, &[1, 0], &[2, 1]).fixed_codim(), 4);
    }

    #[test]
    fn enumerates_whole_group() {
        let p = GroupParams::new(3, 3).unwrap();
        let all: std::collections::HashSet<_> = p.elements().collect();
        assert_eq!(all.len() as u128, p.order());
        assert_eq!(p.order(), 162);
    }

    #[test]
    fn census_examples() {
        let c = census(GroupParams::new(1, 1).unwrap()).unwrap();
        assert_eq!(c.by_codim, BTreeMap::from([(0, 1)]));
        let c = census(GroupParams::new(2, 2).unwrap()).unwrap();
        assert_eq!(c.order, 8);
        assert_eq!(c.by_codim, BTreeMap::from([(0, 1), (2, 4), (4, 3)]));
        assert_eq!(c.reflections(), 4);
        let c = census(GroupParams::new(3, 1).unwrap()).unwrap();
        assert_eq!(c.by_codim, BTreeMap::from([(0, 1), (2, 2)]));
    }

    #[test]
    fn census_bound_is_reported() {
        let err = census_bounded(GroupParams::new(2, 3).unwrap(), 47).unwrap_err();
        assert_eq!(err, Error::Size { order: 48, bound: 47 });
        assert!(err.to_string().contains("47"));
    }

    #[test]
    fn census_json_shape() {
        let c = census(GroupParams::new(2, 2).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&c.to_json()).unwrap(),
            r#"{"by_codim":{"0":1,"2":4,"4":3},"m":2,"n":2,"order":8}"#
        );
    }
}
