//! Acceptance suite A1–A9. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use affweyl::affine_numerics::{
    candidate_pairs, delta_upper_bound, irreducibility_certificate, kostant_bound_c, shifted_parameter,
};
use affweyl::explicit_module::{build_truncated, TruncatedWeylModule};
use affweyl::finite_rep::{casimir_on_irrep_int, kostant_spectrum, length_of, tensor_decompose, TensorFactor};
use affweyl::graded_sym::{weyl_level_character, weyl_level_decompositions};
use affweyl::lie_realization::{LieBasis, Representation};
use affweyl::linalg::Matrix;
use affweyl::root_system::{build_algebra, Algebra, Series, Weight};
use affweyl::{ComplexRational, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn sl(n: usize) -> Algebra {
    build_algebra(Series::A, n).unwrap()
}

fn kappa(s: &str) -> ComplexRational {
    s.parse().unwrap()
}

/// The modules of A1: (M, depth).
fn a1_modules() -> Vec<(Weight, usize)> {
    let (a1, a2) = (sl(1), sl(2));
    vec![
        (Weight::from_ints(&a1, &[0]), 5),
        (Weight::from_ints(&a1, &[2]), 5),
        (Weight::from_ints(&a1, &[4]), 5),
        (Weight::from_ints(&a2, &[0, 0]), 3),
        (Weight::from_ints(&a2, &[1, 0]), 3),
    ]
}

const A2_KAPPAS: [&str; 4] = ["-1", "-2", "-1/2", "-1+i"];

fn describe(m: &Weight) -> String {
    format!("{} {}", m.algebra.name(), m)
}

fn a1() -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    for (m, depth) in a1_modules() {
        let module = build_truncated(&m, &kappa("-1"), depth).map_err(|e| e.to_string())?;
        for n in 0..=depth {
            let expected = weyl_level_character(&m, n).map_err(|e| e.to_string())?.dim();
            if module.degree_dim(n) as u64 != expected {
                return Err(format!("{} degree {n}: explicit {} vs {expected}", describe(&m), module.degree_dim(n)));
            }
            compared += 1;
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(30) {
        return Err(format!("took {t:.2?}, limit 30 s"));
    }
    Ok(format!("{compared} (module, degree) dimensions equal, {t:.2?}"))
}

fn a2_modules() -> Vec<TruncatedWeylModule> {
    let mut out = Vec::new();
    for (m, depth) in a1_modules() {
        for k in A2_KAPPAS {
            out.push(build_truncated(&m, &kappa(k), depth).unwrap());
        }
    }
    out
}

fn a2(modules: &[TruncatedWeylModule]) -> Outcome {
    let start = Instant::now();
    for module in modules {
        if !module.l0_is_scalar() {
            return Err(format!("{} κ={}: L0 is not a/2κ + n", describe(module.m_hw()), module.kappa()));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(60) {
        return Err(format!("took {t:.2?}, limit 60 s"));
    }
    Ok(format!("{} configurations exactly scalar per degree, {t:.2?}", modules.len()))
}

fn a3(modules: &[TruncatedWeylModule]) -> Outcome {
    let mut checked = 0;
    for module in modules {
        let report = module.virasoro_commutation_check();
        if !report.holds {
            return Err(format!("{} κ={}: failures {:?}", describe(module.m_hw()), module.kappa(), report.failures));
        }
        checked += report.checked;
    }
    Ok(format!("{} configurations, all generators, |m| ≤ depth (≥ 3), {checked} basis columns", modules.len()))
}

fn kostant_case(alg: &Algebra, u_hw: &[i64], m_hw: &[i64]) -> Result<(), String> {
    let lie = LieBasis::new(alg).map_err(|e| e.to_string())?;
    let u = Representation::irreducible(&lie, u_hw).map_err(|e| e.to_string())?;
    let m = Representation::irreducible(&lie, m_hw).map_err(|e| e.to_string())?;
    let um = u.tensor(&m);
    let omega = um.casimir(&lie);
    let id: Matrix<Rational> = Matrix::identity(um.dim);
    let lambda = shifted_parameter(&Weight::from_ints(alg, m_hw));
    let values = kostant_spectrum(&Weight::from_ints(alg, u_hw), &lambda).map_err(|e| e.to_string())?;
    let mut prod = id.clone();
    for v in &values {
        prod = prod.mul(&omega.sub(&id.scale(v)));
    }
    if !prod.is_zero() {
        return Err(format!("{u_hw:?} ⊗ {m_hw:?}: product over Kostant values is nonzero"));
    }
    let decomp = tensor_decompose(
        &TensorFactor::Irrep(Weight::from_ints(alg, u_hw)),
        &TensorFactor::Irrep(Weight::from_ints(alg, m_hw)),
    )
    .map_err(|e| e.to_string())?;
    let mut expected: BTreeMap<Rational, usize> = BTreeMap::new();
    for (tau, mult) in &decomp.entries {
        let dim: usize = alg.weyl_dimension(tau).to_string().parse().unwrap();
        *expected.entry(casimir_on_irrep_int(alg, tau)).or_insert(0) += dim * *mult as usize;
    }
    let mut total = 0;
    for (c, mult) in &expected {
        let eig = um.dim - omega.sub(&id.scale(c)).rank();
        if eig != *mult {
            return Err(format!("{u_hw:?} ⊗ {m_hw:?}: eigenvalue {c} has multiplicity {eig}, expected {mult}"));
        }
        total += eig;
    }
    if total != um.dim {
        return Err(format!("{u_hw:?} ⊗ {m_hw:?}: eigenvalues cover {total} of {}", um.dim));
    }
    Ok(())
}

fn a4() -> Outcome {
    let a1 = sl(1);
    let mut cases = 0;
    for du in 1..=25i64 {
        for dm in 1..=25 / du {
            kostant_case(&a1, &[du - 1], &[dm - 1])?;
            cases += 1;
        }
    }
    kostant_case(&sl(2), &[1, 1], &[1, 0])?;
    Ok(format!("{} pairs (U, M), annihilating product and eigenvalue multisets exact", cases + 1))
}

fn singular_degrees(module: &TruncatedWeylModule, max: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for n in 1..=max {
        if !module.singular_vectors(n).map_err(|e| e.to_string())?.is_empty() {
            out.push(n);
        }
    }
    Ok(out)
}

fn a5() -> Outcome {
    let a1 = sl(1);
    let mut configs = 0;
    let mut with_singular = 0;
    for hw in [0, 2, 4] {
        for k in ["-1", "-2", "-3/2", "-1+i"] {
            let m = Weight::from_ints(&a1, &[hw]);
            let kap = kappa(k);
            let module = build_truncated(&m, &kap, 4).map_err(|e| e.to_string())?;
            let levels: Vec<u64> =
                candidate_pairs(&shifted_parameter(&m), &kap, 4).map_err(|e| e.to_string())?.iter().map(|p| p.n).collect();
            let found = singular_degrees(&module, 4)?;
            if let Some(n) = found.iter().find(|&&n| !levels.contains(&(n as u64))) {
                return Err(format!("V({hw}) κ={k}: singular degree {n} not among candidate levels {levels:?}"));
            }
            configs += 1;
            with_singular += usize::from(!found.is_empty());
        }
    }
    Ok(format!("{configs} configurations, {with_singular} with singular vectors, 0 violations"))
}

fn a6() -> Outcome {
    let (a1, a2) = (sl(1), sl(2));
    let mut configs: Vec<(Weight, &str, usize)> = Vec::new();
    for hw in [0, 1, 2, 3, 4] {
        for k in ["-1", "-2", "-3/2", "-1+i", "-1/2", "-3", "-100"] {
            configs.push((Weight::from_ints(&a1, &[hw]), k, 4));
        }
    }
    for hw in [[0, 0], [1, 0], [0, 1]] {
        for k in ["-1", "-2", "-3/2", "-1+i", "-100"] {
            configs.push((Weight::from_ints(&a2, &hw), k, 3));
        }
    }
    let mut certified = 0;
    for (m, k, depth) in &configs {
        let kap = kappa(k);
        let verdict = irreducibility_certificate(m, &kap).map_err(|e| e.to_string())?;
        let forced = *k == "-1+i" || (*k == "-100" && m.algebra.rank == 1 && m.coords == vec![Rational::from_integer(2.into())]);
        if forced && !verdict.is_certified() {
            return Err(format!("{} κ={k}: forced case not certified", describe(m)));
        }
        if !verdict.is_certified() {
            continue;
        }
        certified += 1;
        let module = build_truncated(m, &kap, *depth).map_err(|e| e.to_string())?;
        let found = singular_degrees(&module, *depth)?;
        if !found.is_empty() {
            return Err(format!("{} κ={k}: certified but singular in degrees {found:?}", describe(m)));
        }
    }
    Ok(format!("{certified} certified of {} configurations, none with singular vectors", configs.len()))
}

fn random_weight(rng: &mut StdRng, alg: &Algebra) -> Weight {
    let coords = (0..alg.rank)
        .map(|_| Rational::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=6).into()))
        .collect();
    Weight::new(alg, coords).unwrap()
}

fn a7() -> Outcome {
    let k = kappa("-1+i");
    for (m, _) in a1_modules() {
        let bound = delta_upper_bound(&m, &k, 6).map_err(|e| e.to_string())?;
        let top = length_of(&weyl_level_decompositions(&m, 0).map_err(|e| e.to_string())?[0]);
        if !(bound.complete && bound.value == top) {
            return Err(format!("{}: δ bound {:?}, l(M) = {top}", describe(&m), bound));
        }
    }
    let types = [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::A, 3), (Series::C, 3)];
    let mut rng = StdRng::seed_from_u64(20_26);
    for i in 0..50 {
        let (s, r) = types[i % types.len()];
        let lambda = random_weight(&mut rng, &build_algebra(s, r).unwrap());
        let c = kostant_bound_c(&lambda);
        if c > Rational::from_integer(0.into()) {
            return Err(format!("C = {c} > 0 for λ = {lambda} in {s}{r}"));
        }
    }
    Ok(format!("{} modules give (l(M), complete); C ≤ 0 for 50 random rational λ", a1_modules().len()))
}

fn a8() -> Outcome {
    let a1 = sl(1);
    let mut runs = 0;
    for hw in [0, 2, 4] {
        for k in ["-1", "-2", "-3/2", "-1+i"] {
            let module = build_truncated(&Weight::from_ints(&a1, &[hw]), &kappa(k), 5).map_err(|e| e.to_string())?;
            for level in [2, 3] {
                let r = module.check_kl_exact_sequence(level).map_err(|e| e.to_string())?;
                if !r.holds {
                    return Err(format!("V({hw}) κ={k} N'={level}: {r:?}"));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} checks (N' = 2, 3; depth 5) exact"))
}

fn cli_commands() -> Vec<Vec<&'static str>> {
    vec![
        vec!["algebra", "A", "1"],
        vec!["algebra", "A", "2"],
        vec!["algebra", "G", "2"],
        vec!["symlevels", "A", "1", "--n", "2"],
        vec!["symlevels", "A", "1", "--n", "0"],
        vec!["symlevels", "A", "2", "--n", "3"],
        vec!["decompose", "A", "2", "--hw", "1,1", "--hw", "1,0"],
        vec!["candidates", "A", "1", "--hw", "2", "--kappa", "-2"],
        vec!["certify", "A", "1", "--hw", "0", "--kappa", "-1"],
        vec!["certify", "A", "1", "--hw", "2", "--kappa", "-2"],
        vec!["certify", "A", "1", "--hw", "2", "--kappa", "1"],
        vec!["crossvalidate", "A", "1", "--hw", "0", "--kappa", "-1", "--depth", "4"],
        vec!["crossvalidate", "A", "1", "--hw", "2", "--kappa", "-2", "--depth", "3"],
        vec!["dump", "A", "1", "--hw", "1", "--kappa", "-1+i", "--depth", "2"],
    ]
}

fn a9() -> Outcome {
    let mut runs = 0;
    for cmd in cli_commands() {
        let mut args = vec!["affweyl"];
        args.extend(&cmd);
        args.extend(["--format", "json"]);
        let first = affweyl_cli::run(args.clone());
        let second = affweyl_cli::run(args.clone());
        if first != second {
            return Err(format!("{}: outputs differ between runs", cmd.join(" ")));
        }
        if first.code != 1 {
            let again = affweyl_cli::reemit_json(&first.stdout).map_err(|e| format!("{}: {e}", cmd.join(" ")))?;
            if again != first.stdout {
                return Err(format!("{}: JSON does not round-trip", cmd.join(" ")));
            }
        }
        runs += 1;
    }
    Ok(format!("{runs} commands byte-identical across two runs; JSON round-trips"))
}

fn main() {
    let mut failed = 0;
    let mut report = |name: &str, outcome: Outcome| match outcome {
        Ok(msg) => println!("{name} PASS: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("{name} FAIL: {msg}");
        }
    };
    report("A1", a1());
    let modules = a2_modules();
    report("A2", a2(&modules));
    report("A3", a3(&modules));
    report("A4", a4());
    report("A5", a5());
    report("A6", a6());
    report("A7", a7());
    report("A8", a8());
    report("A9", a9());
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
