//! Consistency between the character-level numerics and the explicit
//! truncated modules.

use std::collections::BTreeMap;

use affweyl::affine_numerics::{
    candidate_pairs, delta_upper_bound, irreducibility_certificate, shifted_parameter,
};
use affweyl::explicit_module::build_truncated;
use affweyl::finite_rep::{casimir_on_irrep_int, length_of, tensor_decompose, TensorFactor};
use affweyl::graded_sym::{weyl_level_character, weyl_level_decompositions};
use affweyl::lie_realization::{LieBasis, Representation, StructureConstant};
use affweyl::linalg::Matrix;
use affweyl::rational::{q, qf};
use affweyl::root_system::{build_algebra, Algebra, Series, Weight};
use affweyl::{ComplexRational, Rational};

fn sl(n: usize) -> Algebra {
    build_algebra(Series::A, n).unwrap()
}

fn kappa(s: &str) -> ComplexRational {
    s.parse().unwrap()
}

#[derive(serde::Deserialize)]
struct Golden {
    algebra: String,
    basis: Vec<String>,
    structure_constants: Vec<StructureConstant>,
}

#[test]
fn structure_constants_match_golden_files() {
    for (rank, text) in [
        (1, include_str!("golden/structure_A1.json")),
        (2, include_str!("golden/structure_A2.json")),
    ] {
        let golden: Golden = serde_json::from_str(text).unwrap();
        let lie = LieBasis::new(&sl(rank)).unwrap();
        assert_eq!(golden.algebra, lie.algebra.name());
        let names: Vec<String> = lie.elements.iter().map(|e| e.name.clone()).collect();
        assert_eq!(golden.basis, names);
        assert_eq!(golden.structure_constants, lie.structure_constants());
    }
    // spot checks against matrix units: [E12, E23] = E13, [E13, E32] = E12
    let lie = LieBasis::new(&sl(2)).unwrap();
    let idx = |n: &str| lie.elements.iter().position(|e| e.name == n).unwrap();
    assert_eq!(lie.bracket[idx("e[1,0]")][idx("e[0,1]")], vec![(idx("e[1,1]"), q(1))]);
    assert_eq!(lie.bracket[idx("e[1,1]")][idx("f[0,1]")], vec![(idx("e[1,0]"), q(1))]);
    assert_eq!(lie.bracket[idx("e[1,0]")][idx("f[1,0]")], vec![(idx("h1"), q(1))]);
}

#[test]
fn pbw_counts_match_level_characters() {
    let a = sl(1);
    for hw in [0, 1, 2] {
        let m = Weight::from_ints(&a, &[hw]);
        let module = build_truncated(&m, &kappa("-1"), 6).unwrap();
        for n in 0..=6 {
            let expected = weyl_level_character(&m, n).unwrap().dim();
            assert_eq!(module.monomial_count(n) as u64 * (hw as u64 + 1), expected);
            assert_eq!(module.degree_dim(n) as u64, expected);
        }
    }
}

fn configurations() -> Vec<(Weight, ComplexRational, usize)> {
    let mut out = Vec::new();
    let a1 = sl(1);
    for hw in [0, 1, 2, 3, 4] {
        for k in ["-1", "-2", "-3/2", "-1+i", "-1/2", "-3", "-100", "2i"] {
            out.push((Weight::from_ints(&a1, &[hw]), kappa(k), 4));
        }
    }
    let a2 = sl(2);
    for hw in [[0, 0], [1, 0], [0, 1]] {
        for k in ["-1", "-3", "-3/2", "-1+i", "-100"] {
            out.push((Weight::from_ints(&a2, &hw), kappa(k), 3));
        }
    }
    for k in ["-1", "-2", "-3"] {
        out.push((Weight::from_ints(&a2, &[1, 1]), kappa(k), 2));
    }
    out
}

#[test]
fn singular_vectors_respect_candidates_and_certificates() {
    let mut found_any = false;
    for (m, k, depth) in configurations() {
        let module = build_truncated(&m, &k, depth).unwrap();
        let lambda = shifted_parameter(&m);
        let levels: Vec<u64> = candidate_pairs(&lambda, &k, depth as u64).unwrap().iter().map(|p| p.n).collect();
        let verdict = irreducibility_certificate(&m, &k).unwrap();
        for n in 1..=depth {
            let report = module.singular_vectors(n).unwrap();
            if report.is_empty() {
                continue;
            }
            found_any = true;
            assert!(levels.contains(&(n as u64)), "{m:?} κ={k} n={n}");
            assert!(!verdict.is_certified(), "{m:?} κ={k} n={n}");
            assert!(!report.highest_weights.is_empty());
            for hw in &report.highest_weights {
                let pair = hw.matched_candidate.as_ref().expect("singular weight matches a pair");
                assert_eq!(pair.n, n as u64);
            }
        }
    }
    assert!(found_any, "the configuration list exercises at least one reducible module");
}

#[test]
fn complete_delta_equal_to_top_length_forces_certificate() {
    for (m, k, _) in configurations() {
        let bound = delta_upper_bound(&m, &k, 6).unwrap();
        let top = length_of(&weyl_level_decompositions(&m, 0).unwrap()[0]);
        if bound.complete && bound.value == top {
            assert!(irreducibility_certificate(&m, &k).unwrap().is_certified(), "{m:?} κ={k}");
        }
    }
}

/// Characteristic-style check: `∏ (Ω − c)` over the distinct expected values
/// is zero, and the multiset of eigenvalues read off the block structure of
/// `Ω` on each weight space matches the constituents.
fn check_kostant(alg: &Algebra, u_hw: &[i64], m_hw: &[i64]) {
    let lie = LieBasis::new(alg).unwrap();
    let u = Representation::irreducible(&lie, u_hw).unwrap();
    let m = Representation::irreducible(&lie, m_hw).unwrap();
    let um = u.tensor(&m);
    let omega = um.casimir(&lie);
    let lambda = shifted_parameter(&Weight::from_ints(alg, m_hw));
    let values = affweyl::finite_rep::kostant_spectrum(&Weight::from_ints(alg, u_hw), &lambda).unwrap();
    let mut prod: Matrix<Rational> = Matrix::identity(um.dim);
    for v in &values {
        prod = prod.mul(&omega.sub(&Matrix::identity(um.dim).scale(v)));
    }
    assert!(prod.is_zero(), "{u_hw:?} ⊗ {m_hw:?}");
    // eigenvalue multiset from constituents
    let decomp = tensor_decompose(
        &TensorFactor::Irrep(Weight::from_ints(alg, u_hw)),
        &TensorFactor::Irrep(Weight::from_ints(alg, m_hw)),
    )
    .unwrap();
    let mut expected: BTreeMap<Rational, usize> = BTreeMap::new();
    for (tau, mult) in &decomp.entries {
        let d = affweyl::root_system::AlgebraData::weyl_dimension(alg, tau);
        let d: usize = d.to_string().parse().unwrap();
        *expected.entry(casimir_on_irrep_int(alg, tau)).or_insert(0) += d * *mult as usize;
    }
    for (c, mult) in &expected {
        let shifted = omega.sub(&Matrix::identity(um.dim).scale(c));
        assert_eq!(um.dim - shifted.rank(), *mult, "eigenvalue {c} of {u_hw:?} ⊗ {m_hw:?}");
    }
}

#[test]
fn kostant_spectrum_against_explicit_casimir() {
    let a1 = sl(1);
    for du in 1..=25i64 {
        for dm in 1..=25 / du {
            check_kostant(&a1, &[du - 1], &[dm - 1]);
        }
    }
    check_kostant(&sl(2), &[1, 1], &[1, 0]);
}

#[test]
fn casimir_scalar_matches_closed_form() {
    let a2 = sl(2);
    let lie = LieBasis::new(&a2).unwrap();
    let rep = Representation::irreducible(&lie, &[1, 1]).unwrap();
    assert_eq!(rep.casimir(&lie), Matrix::identity(8).scale(&q(6)));
    let rep = Representation::irreducible(&lie, &[1, 0]).unwrap();
    assert_eq!(rep.casimir(&lie), Matrix::identity(3).scale(&qf(8, 3)));
}
