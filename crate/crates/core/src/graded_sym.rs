//! The graded symmetric algebra `S(ad) = S(g t ⊕ g t² ⊕ …)` (the k-th copy
//! of the adjoint representation sitting in degree k) and the level
//! characters `M ⊗ S(ad)^n` of Weyl modules.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::finite_rep::{brauer_klimyk, irrep_character_int, Character, DecompositionMultiset};
use crate::root_system::{Algebra, IntWeight, Weight};

/// Characters indexed by degree `0..=n_max`.
#[derive(Clone, Debug)]
pub struct GradedCharacter {
    pub algebra: Algebra,
    pub levels: Vec<Character>,
}

impl PartialEq for GradedCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl GradedCharacter {
    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dims(&self) -> Vec<u64> {
        self.levels.iter().map(Character::dim).collect()
    }
}

/// Character of the adjoint representation, read off the root system.
pub fn adjoint_character(algebra: &Algebra) -> Character {
    let mut full: BTreeMap<IntWeight, u64> = BTreeMap::new();
    full.insert(vec![0; algebra.rank], algebra.rank as u64);
    for root in &algebra.positive_roots {
        let w = algebra.root_to_weight(root);
        full.insert(w.iter().map(|x| -x).collect(), 1);
        full.insert(w, 1);
    }
    Character::from_full(algebra, &full).expect("root system is Weyl invariant")
}

/// Degree-truncated character of `S(ad)`, as the product over `k ≥ 1` of
/// `Σ_j Sym^j(g)·q^{jk}`.
pub fn sym_ad_graded(algebra: &Algebra, n_max: usize) -> GradedCharacter {
    let adj = adjoint_character(algebra);
    let sym = adj.symmetric_powers(n_max);
    let mut levels: Vec<Character> = (0..=n_max)
        .map(|d| if d == 0 { Character::trivial(algebra) } else { Character::zero(algebra) })
        .collect();
    for k in 1..=n_max {
        let mut next: Vec<Character> = vec![Character::zero(algebra); n_max + 1];
        for (d, slot) in next.iter_mut().enumerate() {
            let mut acc = Character::zero(algebra);
            for j in 0..=d / k {
                let prev = &levels[d - j * k];
                if prev.is_zero() {
                    continue;
                }
                acc = if j == 0 { acc.add(prev) } else { acc.add(&sym[j].product(prev)) };
            }
            *slot = acc;
        }
        levels = next;
    }
    GradedCharacter { algebra: algebra.clone(), levels }
}

/// Characters of `M ⊗ S(ad)^n` for `n = 0..=n_max`, where `M = L(m_hw)`.
pub fn weyl_level_characters(m_hw: &Weight, n_max: usize) -> Result<Vec<Character>> {
    let hw = m_hw.as_dominant_integral()?;
    let alg = &m_hw.algebra;
    let m = irrep_character_int(alg, &hw);
    Ok(sym_ad_graded(alg, n_max).levels.iter().map(|c| m.product(c)).collect())
}

pub fn weyl_level_character(m_hw: &Weight, n: usize) -> Result<Character> {
    Ok(weyl_level_characters(m_hw, n)?.pop().expect("at least one level"))
}

/// Irreducible constituents of `M ⊗ S(ad)^n`.
pub fn weyl_level_decomposition(m_hw: &Weight, n: usize) -> Result<DecompositionMultiset> {
    let hw = m_hw.as_dominant_integral()?;
    let level = sym_ad_graded(&m_hw.algebra, n).levels.pop().expect("level n");
    Ok(brauer_klimyk(&m_hw.algebra, &hw, &level))
}

/// Decompositions of every level `0..=n_max` in one pass.
pub fn weyl_level_decompositions(m_hw: &Weight, n_max: usize) -> Result<Vec<DecompositionMultiset>> {
    let hw = m_hw.as_dominant_integral()?;
    Ok(sym_ad_graded(&m_hw.algebra, n_max)
        .levels
        .iter()
        .map(|lvl| brauer_klimyk(&m_hw.algebra, &hw, lvl))
        .collect())
}
