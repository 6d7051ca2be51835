//! Finite-dimensional representation theory: characters (Freudenthal),
//! tensor decompositions (Brauer–Klimyk), Casimir eigenvalues and the
//! Kostant spectrum bounding the Casimir action on `U ⊗ M`.
//!
//! Characters are Weyl-invariant, so only multiplicities of dominant weights
//! are stored; full weight multisets are reconstructed from orbits.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, Rational};
use crate::root_system::{Algebra, AlgebraData, IntWeight, Weight};

/// Weyl-invariant weight multiset, keyed by dominant representatives.
#[derive(Clone)]
pub struct Character {
    pub algebra: Algebra,
    dominant: BTreeMap<IntWeight, u64>,
}

impl Character {
    pub fn zero(algebra: &Algebra) -> Self {
        Character { algebra: algebra.clone(), dominant: BTreeMap::new() }
    }

    pub fn trivial(algebra: &Algebra) -> Self {
        let mut dominant = BTreeMap::new();
        dominant.insert(vec![0; algebra.rank], 1);
        Character { algebra: algebra.clone(), dominant }
    }

    /// Builds a character from dominant multiplicities; zero entries are dropped.
    pub fn from_dominant(algebra: &Algebra, mults: BTreeMap<IntWeight, u64>) -> Result<Self> {
        for w in mults.keys() {
            if w.len() != algebra.rank {
                return Err(Error::RankMismatch { got: w.len(), rank: algebra.rank });
            }
            if !AlgebraData::is_dominant(w) {
                return Err(Error::NotDominantIntegral(format!("{w:?}")));
            }
        }
        let dominant = mults.into_iter().filter(|(_, m)| *m > 0).collect();
        Ok(Character { algebra: algebra.clone(), dominant })
    }

    /// Builds a character from a full weight multiset, checking Weyl invariance.
    pub fn from_full(algebra: &Algebra, full: &BTreeMap<IntWeight, u64>) -> Result<Self> {
        let not_invariant =
            |w: &[i64]| Error::Unsupported(format!("weight multiset is not Weyl invariant at {w:?}"));
        let mut dominant = BTreeMap::new();
        let mut covered = 0usize;
        for (w, &m) in full.iter().filter(|(w, m)| **m > 0 && AlgebraData::is_dominant(w)) {
            for v in algebra.orbit(w) {
                if full.get(&v) != Some(&m) {
                    return Err(not_invariant(&v));
                }
                covered += 1;
            }
            dominant.insert(w.clone(), m);
        }
        if let Some((w, _)) = full.iter().find(|(w, m)| **m > 0 && !dominant.contains_key(&algebra.to_dominant(w).0)) {
            return Err(not_invariant(w));
        }
        debug_assert_eq!(covered, full.values().filter(|m| **m > 0).count());
        Ok(Character { algebra: algebra.clone(), dominant })
    }

    pub fn dominant_multiplicities(&self) -> &BTreeMap<IntWeight, u64> {
        &self.dominant
    }

    pub fn is_zero(&self) -> bool {
        self.dominant.is_empty()
    }

    /// Multiplicity of an arbitrary integral weight.
    pub fn mult(&self, w: &[i64]) -> u64 {
        let (d, _) = self.algebra.to_dominant(w);
        self.dominant.get(&d).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.dominant
            .iter()
            .map(|(w, m)| m * self.algebra.orbit_size(w) as u64)
            .sum()
    }

    /// Full weight multiset.
    pub fn full(&self) -> BTreeMap<IntWeight, u64> {
        let mut out = BTreeMap::new();
        for (w, &m) in &self.dominant {
            for v in self.algebra.orbit(w) {
                out.insert(v, m);
            }
        }
        out
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut dominant = self.dominant.clone();
        for (w, m) in &other.dominant {
            *dominant.entry(w.clone()).or_insert(0) += m;
        }
        Character { algebra: self.algebra.clone(), dominant }
    }

    pub fn scale(&self, k: u64) -> Character {
        if k == 0 {
            return Character::zero(&self.algebra);
        }
        let dominant = self.dominant.iter().map(|(w, m)| (w.clone(), m * k)).collect();
        Character { algebra: self.algebra.clone(), dominant }
    }

    /// Adams operation ψ^k: every weight β is replaced by kβ.
    pub fn adams(&self, k: i64) -> Character {
        assert!(k >= 1);
        let dominant = self
            .dominant
            .iter()
            .map(|(w, m)| (w.iter().map(|x| x * k).collect(), *m))
            .collect();
        Character { algebra: self.algebra.clone(), dominant }
    }

    /// Pointwise product of characters (character of the tensor product).
    pub fn product(&self, other: &Character) -> Character {
        let (small, large) = if self.dominant.len() <= other.dominant.len() {
            (self, other)
        } else {
            (other, self)
        };
        let large_full = large.full();
        let mut dominant: BTreeMap<IntWeight, u64> = BTreeMap::new();
        for (w, &m) in &small.full() {
            for (v, &n) in &large_full {
                let s: IntWeight = w.iter().zip(v).map(|(a, b)| a + b).collect();
                if AlgebraData::is_dominant(&s) {
                    *dominant.entry(s).or_insert(0) += m * n;
                }
            }
        }
        Character { algebra: self.algebra.clone(), dominant }
    }

    /// Exact division of every multiplicity by `k`; panics if inexact.
    fn div_exact(&self, k: u64) -> Character {
        let dominant = self
            .dominant
            .iter()
            .map(|(w, m)| {
                assert_eq!(m % k, 0, "inexact character division");
                (w.clone(), m / k)
            })
            .collect();
        Character { algebra: self.algebra.clone(), dominant }
    }

    /// Symmetric powers `Sym^0 .. Sym^k_max` via Newton's identity
    /// `k·h_k = Σ_{i=1}^k ψ^i(χ)·h_{k−i}`.
    pub fn symmetric_powers(&self, k_max: usize) -> Vec<Character> {
        let mut h = vec![Character::trivial(&self.algebra)];
        let adams: Vec<Character> = (1..=k_max).map(|i| self.adams(i as i64)).collect();
        for k in 1..=k_max {
            let mut acc = Character::zero(&self.algebra);
            for i in 1..=k {
                acc = acc.add(&adams[i - 1].product(&h[k - i]));
            }
            h.push(acc.div_exact(k as u64));
        }
        h
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.dominant == other.dominant
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({}, {:?})", self.algebra.name(), self.dominant)
    }
}

/// Multiset of irreducible constituents, keyed by dominant highest weight.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct DecompositionMultiset {
    pub entries: BTreeMap<IntWeight, u64>,
}

impl DecompositionMultiset {
    pub fn dim(&self, algebra: &Algebra) -> u64 {
        self.entries
            .iter()
            .map(|(hw, m)| m * algebra.weyl_dimension(hw).to_u64().unwrap())
            .sum()
    }

    pub fn character(&self, algebra: &Algebra) -> Character {
        let mut acc = Character::zero(algebra);
        for (hw, &m) in &self.entries {
            acc = acc.add(&irrep_character_int(algebra, hw).scale(m));
        }
        acc
    }
}

/// Length (number of irreducible constituents with multiplicity).
pub fn length_of(decomp: &DecompositionMultiset) -> u64 {
    decomp.entries.values().sum()
}

fn dominant_weights_below(algebra: &AlgebraData, hw: &[i64]) -> Vec<(IntWeight, i64)> {
    // Dominant weights μ ≤ λ are connected to λ by steps μ ↦ μ − α (α > 0)
    // that stay dominant.
    let roots = algebra.positive_roots_as_weights();
    let heights: Vec<i64> = algebra.positive_roots.iter().map(|r| r.iter().sum()).collect();
    let mut seen: HashMap<IntWeight, i64> = HashMap::new();
    seen.insert(hw.to_vec(), 0);
    let mut stack = vec![(hw.to_vec(), 0i64)];
    while let Some((w, depth)) = stack.pop() {
        for (r, h) in roots.iter().zip(&heights) {
            let v: IntWeight = w.iter().zip(r).map(|(a, b)| a - b).collect();
            if AlgebraData::is_dominant(&v) && !seen.contains_key(&v) {
                seen.insert(v.clone(), depth + h);
                stack.push((v, depth + h));
            }
        }
    }
    let mut out: Vec<(IntWeight, i64)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
    out
}

/// Character of the irreducible module with dominant integral highest weight
/// `hw` (weight coordinates), by Freudenthal's recursion.
pub fn irrep_character_int(algebra: &Algebra, hw: &[i64]) -> Character {
    assert!(AlgebraData::is_dominant(hw), "highest weight must be dominant");
    let dominant = dominant_weights_below(algebra, hw);
    let members: HashSet<IntWeight> = dominant.iter().map(|(w, _)| w.clone()).collect();
    let to_q = |w: &[i64]| -> Vec<Rational> { w.iter().map(|&x| q(x)).collect() };
    let shifted = |w: &[i64]| -> Vec<Rational> { w.iter().map(|&x| q(x + 1)).collect() };
    let top_norm = {
        let s = shifted(hw);
        algebra.form_weight_weight(&s, &s)
    };
    let roots_w = algebra.positive_roots_as_weights();
    let mut mults: BTreeMap<IntWeight, u64> = BTreeMap::new();
    mults.insert(hw.to_vec(), 1);
    for (mu, _) in dominant.iter().skip(1) {
        let s = shifted(mu);
        let denom = &top_norm - algebra.form_weight_weight(&s, &s);
        let mut acc = Rational::zero();
        for (alpha_root, alpha_w) in algebra.positive_roots.iter().zip(&roots_w) {
            let mut k = 1;
            loop {
                let v: IntWeight = mu.iter().zip(alpha_w).map(|(a, b)| a + k * b).collect();
                let (d, _) = algebra.to_dominant(&v);
                if !members.contains(&d) {
                    break;
                }
                let m = mults.get(&d).copied().unwrap_or(0);
                if m > 0 {
                    acc += algebra.form_weight_root(&to_q(&v), alpha_root) * q(m as i64);
                }
                k += 1;
            }
        }
        let m = q(2) * acc / denom;
        assert!(m.is_integer(), "Freudenthal produced a non-integral multiplicity");
        let m = m.to_integer().to_u64().unwrap();
        if m > 0 {
            mults.insert(mu.clone(), m);
        }
    }
    Character { algebra: algebra.clone(), dominant: mults }
}

/// Character of `L(highest_weight)`.
pub fn irrep_character(algebra: &Algebra, highest_weight: &Weight) -> Result<Character> {
    let hw = highest_weight.as_dominant_integral()?;
    if !highest_weight.algebra.same_as(algebra) {
        return Err(Error::AlgebraMismatch(algebra.name(), highest_weight.algebra.name()));
    }
    Ok(irrep_character_int(algebra, &hw))
}

/// Brauer–Klimyk: decomposes `L(hw) ⊗ χ` by reflecting `hw + μ + ρ` into the
/// dominant chamber for every weight μ of χ.
pub fn brauer_klimyk(algebra: &Algebra, hw: &[i64], chi: &Character) -> DecompositionMultiset {
    let mut signed: BTreeMap<IntWeight, i64> = BTreeMap::new();
    for (mu, m) in chi.full() {
        let nu: IntWeight = hw.iter().zip(&mu).map(|(a, b)| a + b + 1).collect();
        let (d, odd) = algebra.to_dominant(&nu);
        if d.iter().any(|&x| x == 0) {
            continue;
        }
        let key: IntWeight = d.iter().map(|x| x - 1).collect();
        let e = signed.entry(key).or_insert(0);
        *e += if odd { -(m as i64) } else { m as i64 };
    }
    let mut entries = BTreeMap::new();
    for (k, v) in signed {
        assert!(v >= 0, "negative multiplicity in Brauer–Klimyk sum");
        if v > 0 {
            entries.insert(k, v as u64);
        }
    }
    DecompositionMultiset { entries }
}

/// Decomposition of an arbitrary character into irreducibles.
pub fn decompose_character(chi: &Character) -> DecompositionMultiset {
    let zero = vec![0; chi.algebra.rank];
    brauer_klimyk(&chi.algebra, &zero, chi)
}

/// A tensor factor: either an irreducible given by highest weight, or a
/// character.
#[derive(Clone, Debug)]
pub enum TensorFactor {
    Irrep(Weight),
    Char(Character),
}

impl TensorFactor {
    fn algebra(&self) -> &Algebra {
        match self {
            TensorFactor::Irrep(w) => &w.algebra,
            TensorFactor::Char(c) => &c.algebra,
        }
    }
}

/// Decomposes `a ⊗ b` into irreducibles.
pub fn tensor_decompose(a: &TensorFactor, b: &TensorFactor) -> Result<DecompositionMultiset> {
    let alg = a.algebra();
    if !alg.same_as(b.algebra()) {
        return Err(Error::AlgebraMismatch(alg.name(), b.algebra().name()));
    }
    match (a, b) {
        (TensorFactor::Irrep(w), other) | (other, TensorFactor::Irrep(w)) => {
            let hw = w.as_dominant_integral()?;
            let chi = match other {
                TensorFactor::Irrep(v) => irrep_character_int(alg, &v.as_dominant_integral()?),
                TensorFactor::Char(c) => c.clone(),
            };
            Ok(brauer_klimyk(alg, &hw, &chi))
        }
        (TensorFactor::Char(x), TensorFactor::Char(y)) => {
            let mut entries: BTreeMap<IntWeight, u64> = BTreeMap::new();
            for (hw, m) in decompose_character(x).entries {
                for (k, n) in brauer_klimyk(alg, &hw, y).entries {
                    *entries.entry(k).or_insert(0) += m * n;
                }
            }
            Ok(DecompositionMultiset { entries })
        }
    }
}

/// `|ν + ρ|² − |ρ|²`, the Casimir eigenvalue on `L(ν)`.
pub fn casimir_on_irrep_int(algebra: &AlgebraData, hw: &[i64]) -> Rational {
    let s: Vec<Rational> = hw.iter().map(|&x| q(x + 1)).collect();
    algebra.form_weight_weight(&s, &s) - algebra.rho_norm_sq()
}

pub fn casimir_on_irrep(algebra: &Algebra, highest_weight: &Weight) -> Result<Rational> {
    let hw = highest_weight.as_dominant_integral()?;
    Ok(casimir_on_irrep_int(algebra, &hw))
}

/// `{|λ + μ_i|² − |ρ|²}` over the weights μ_i of `L(u_hw)` with multiplicity,
/// in lexicographic order of μ_i. λ is the infinitesimal-character parameter.
pub fn kostant_spectrum(u_hw: &Weight, lambda: &Weight) -> Result<Vec<Rational>> {
    let hw = u_hw.as_dominant_integral()?;
    if !u_hw.algebra.same_as(&lambda.algebra) {
        return Err(Error::AlgebraMismatch(u_hw.algebra.name(), lambda.algebra.name()));
    }
    let alg = &lambda.algebra;
    let rho2 = alg.rho_norm_sq();
    let mut out = Vec::new();
    for (mu, m) in irrep_character_int(alg, &hw).full() {
        let shifted: Vec<Rational> = lambda.coords.iter().zip(&mu).map(|(a, &b)| a + q(b)).collect();
        let v = alg.form_weight_weight(&shifted, &shifted) - &rho2;
        for _ in 0..m {
            out.push(v.clone());
        }
    }
    Ok(out)
}
