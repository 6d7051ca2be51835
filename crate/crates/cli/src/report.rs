//! Serializable command results and their plain-text rendering.

use std::fmt::Write;

use affweyl::affine_numerics::{CandidatePair, VerdictReason, VerdictStatus};
use affweyl::finite_rep::DecompositionMultiset;
use affweyl::rational::format_rational;
use affweyl::root_system::{Algebra, IntWeight};
use serde::{Deserialize, Serialize};

use crate::config::JobConfig;

/// Top-level JSON document: the normalized job and its result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub config: JobConfig,
    pub result: T,
}

pub trait Render {
    fn text(&self) -> String;
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub root: Vec<i64>,
    pub weight: Vec<i64>,
    pub norm_sq: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub name: String,
    pub dim: usize,
    pub dual_coxeter: u32,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub form_gram: Vec<Vec<String>>,
    pub rho: Vec<i64>,
    pub rho_norm_sq: String,
    pub positive_roots: Vec<RootEntry>,
}

impl AlgebraReport {
    pub fn new(alg: &Algebra) -> Self {
        let r = alg.rank;
        AlgebraReport {
            name: alg.name(),
            dim: alg.dim(),
            dual_coxeter: alg.dual_coxeter,
            cartan_matrix: alg.cartan_matrix.clone(),
            form_gram: (0..r).map(|i| (0..r).map(|j| format_rational(alg.form_gram.get(i, j))).collect()).collect(),
            rho: vec![1; r],
            rho_norm_sq: format_rational(&alg.rho_norm_sq()),
            positive_roots: alg
                .positive_roots
                .iter()
                .map(|root| RootEntry {
                    root: root.clone(),
                    weight: alg.root_to_weight(root),
                    norm_sq: format_rational(&alg.root_norm_sq(root)),
                })
                .collect(),
        }
    }
}

impl Render for AlgebraReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "algebra {} (dim {})", self.name, self.dim).unwrap();
        writeln!(s, "dual Coxeter number h∨ = {}", self.dual_coxeter).unwrap();
        writeln!(s, "rho = [{}] (fundamental weights), |rho|^2 = {}", join(&self.rho), self.rho_norm_sq).unwrap();
        writeln!(s, "Cartan matrix:").unwrap();
        for row in &self.cartan_matrix {
            writeln!(s, "  [{}]", join(row)).unwrap();
        }
        writeln!(s, "form Gram matrix on simple roots:").unwrap();
        for row in &self.form_gram {
            writeln!(s, "  [{}]", row.join(", ")).unwrap();
        }
        writeln!(s, "positive roots ({}):", self.positive_roots.len()).unwrap();
        for e in &self.positive_roots {
            writeln!(s, "  [{}]  weight [{}]  |a|^2 = {}", join(&e.root), join(&e.weight), e.norm_sq).unwrap();
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    pub highest_weight: IntWeight,
    pub multiplicity: u64,
    pub dim: u64,
}

pub fn constituents(alg: &Algebra, d: &DecompositionMultiset) -> Vec<Constituent> {
    d.entries
        .iter()
        .map(|(w, m)| Constituent {
            highest_weight: w.clone(),
            multiplicity: *m,
            dim: alg.weyl_dimension(w).to_string().parse().expect("dimension fits in u64"),
        })
        .collect()
}

fn render_constituents(c: &[Constituent]) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter()
        .map(|x| {
            let w = format!("V[{}]", join(&x.highest_weight));
            if x.multiplicity == 1 {
                w
            } else {
                format!("{}·{w}", x.multiplicity)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelEntry {
    pub n: usize,
    pub dim: u64,
    pub length: u64,
    pub decomposition: Vec<Constituent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymLevelsReport {
    pub algebra: String,
    pub highest_weight: IntWeight,
    pub levels: Vec<LevelEntry>,
}

impl Render for SymLevelsReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}: M = V[{}] tensor S(ad)^n", self.algebra, join(&self.highest_weight)).unwrap();
        for l in &self.levels {
            writeln!(s, "n = {}: dim {}, length {}: {}", l.n, l.dim, l.length, render_constituents(&l.decomposition)).unwrap();
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub algebra: String,
    pub factors: Vec<IntWeight>,
    pub dim: u64,
    pub constituents: Vec<Constituent>,
}

impl Render for DecomposeReport {
    fn text(&self) -> String {
        let f: Vec<String> = self.factors.iter().map(|w| format!("V[{}]", join(w))).collect();
        format!("{}: {} = {} (dim {})\n", self.algebra, f.join(" ⊗ "), render_constituents(&self.constituents), self.dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateEntry {
    pub mu: Vec<i64>,
    pub n: u64,
    pub xi: String,
}

impl From<&CandidatePair> for CandidateEntry {
    fn from(p: &CandidatePair) -> Self {
        CandidateEntry { mu: p.mu.coords.clone(), n: p.n, xi: p.xi.to_string() }
    }
}

fn render_candidates(s: &mut String, c: &[CandidateEntry]) {
    for e in c {
        writeln!(s, "  mu = [{}] (simple roots), n = {}, xi = {}", join(&e.mu), e.n, e.xi).unwrap();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatesReport {
    pub algebra: String,
    pub highest_weight: Vec<String>,
    pub lambda: Vec<String>,
    pub kappa: String,
    pub bound_c: String,
    pub n_max: u64,
    pub candidates: Vec<CandidateEntry>,
}

impl Render for CandidatesReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}: lambda = [{}], kappa = {}, C = {}", self.algebra, self.lambda.join(", "), self.kappa, self.bound_c).unwrap();
        writeln!(s, "{} candidate pairs with n <= {}:", self.candidates.len(), self.n_max).unwrap();
        render_candidates(&mut s, &self.candidates);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub algebra: String,
    pub highest_weight: Vec<String>,
    pub lambda: Vec<String>,
    pub kappa: String,
    pub bound_c: String,
    pub status: VerdictStatus,
    pub reason: Option<VerdictReason>,
    pub candidates: Vec<CandidateEntry>,
}

impl Render for CertifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}: M = V[{}], kappa = {}", self.algebra, self.highest_weight.join(", "), self.kappa).unwrap();
        writeln!(s, "lambda = [{}], C = {}", self.lambda.join(", "), self.bound_c).unwrap();
        match self.reason {
            Some(r) => writeln!(s, "{:?} ({:?})", self.status, r).unwrap(),
            None => writeln!(s, "{:?}", self.status).unwrap(),
        }
        if !self.candidates.is_empty() {
            writeln!(s, "candidate pairs with n > 0:").unwrap();
            render_candidates(&mut s, &self.candidates);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularWeightEntry {
    pub weight: IntWeight,
    pub multiplicity: usize,
    pub matched_candidate: Option<CandidateEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularEntry {
    pub degree: usize,
    pub dim: usize,
    pub highest_weights: Vec<SingularWeightEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidateReport {
    pub algebra: String,
    pub highest_weight: IntWeight,
    pub kappa: String,
    pub depth: usize,
    pub graded_dims: Vec<usize>,
    pub candidate_levels: Vec<u64>,
    pub certificate: VerdictStatus,
    pub singular: Vec<SingularEntry>,
    pub checks: Vec<CheckEntry>,
    pub all_passed: bool,
}

impl Render for CrossValidateReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{}: M = V[{}], kappa = {}, depth {}",
            self.algebra,
            join(&self.highest_weight),
            self.kappa,
            self.depth
        )
        .unwrap();
        writeln!(s, "graded dimensions: [{}]", join(&self.graded_dims)).unwrap();
        writeln!(s, "candidate levels: [{}]; certificate: {:?}", join(&self.candidate_levels), self.certificate).unwrap();
        for e in &self.singular {
            writeln!(s, "singular vectors in degree {}: dim {}", e.degree, e.dim).unwrap();
            for hw in &e.highest_weights {
                let m = match &hw.matched_candidate {
                    Some(c) => format!("matches mu = [{}], n = {}", join(&c.mu), c.n),
                    None => "no matching candidate".into(),
                };
                writeln!(s, "  highest weight [{}] x{}: {m}", join(&hw.weight), hw.multiplicity).unwrap();
            }
        }
        for c in &self.checks {
            writeln!(s, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail).unwrap();
        }
        writeln!(s, "{}", if self.all_passed { "all checks passed" } else { "some checks failed" }).unwrap();
        s
    }
}

impl Render for affweyl::explicit_module::ModuleDump {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}: M = V[{}], kappa = {}, K = {}", self.algebra, join(&self.highest_weight), self.kappa, self.central_charge)
            .unwrap();
        for d in &self.degrees {
            writeln!(s, "degree {}: {} basis vectors", d.degree, d.basis.len()).unwrap();
        }
        writeln!(s, "{} action matrices; use --format json for entries", self.actions.len()).unwrap();
        s
    }
}
