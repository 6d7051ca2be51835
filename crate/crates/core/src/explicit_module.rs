//! Brute-force realization of the Weyl module `Ind(M)_κ` truncated at a
//! fixed depth: PBW basis, exact action of the generators `x εᵐ`, the
//! Sugawara operator `L₀`, singular vectors and the annihilator filtration
//! `V(N)`.
//!
//! A basis vector of degree `d` is a PBW monomial
//! `(x_{a_1} ε^{−k_1}) ⋯ (x_{a_r} ε^{−k_r}) ⊗ m` with `Σ k_i = d`, factors
//! sorted by `(k, a)`, and `m` a basis vector of `M`. Generators act by
//! straightening with the commutation relation
//! `[x εᵃ, y εᵇ] = [x, y] εᵃ⁺ᵇ + a δ_{a,−b} (x, y) K`, `K = κ − h∨`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine_numerics::{candidate_pairs, shifted_parameter, CandidatePair};
use crate::error::{Error, Result};
use crate::finite_rep::casimir_on_irrep;
use crate::lie_realization::{LieBasis, Representation, StructureConstant};
use crate::linalg::{kernel_of_rows, span_rank, Matrix};
use crate::rational::{q, ComplexRational};
use crate::root_system::{Algebra, IntWeight, Weight};

pub type Scalar = ComplexRational;

/// Largest depth accepted by [`build_truncated`].
pub const DEFAULT_DEPTH_CAP: usize = 6;

/// Factors `(k, a)` standing for `x_a ε^{−k}`, sorted ascending.
type Mono = Vec<(u16, u16)>;
/// `(monomial id, M basis index)`.
type Key = (u32, u32);
type SparseVec = Vec<(Key, Scalar)>;

/// One PBW basis vector, as reported to callers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwVector {
    /// `(generator index, k)` for each factor `x ε^{−k}`.
    pub monomial: Vec<(usize, u64)>,
    pub m_index: usize,
    pub weight: IntWeight,
}

/// Column-sparse matrix with sorted, nonzero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn scalar(n: usize, s: &Scalar) -> Self {
        let columns = (0..n).map(|i| if s.is_zero() { Vec::new() } else { vec![(i, s.clone())] }).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn mul_sparse_col(&self, v: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, b) in v {
            for (i, a) in &self.columns[*k] {
                *acc.entry(*i).or_insert_with(Scalar::zero) += &(a * b);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let columns = other.columns.iter().map(|c| self.mul_sparse_col(c)).collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn add_scaled(&self, other: &SparseMatrix, s: &Scalar) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Scalar> = a.iter().cloned().collect();
                for (i, x) in b {
                    *acc.entry(*i).or_insert_with(Scalar::zero) += &(x * s);
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        SparseMatrix::zeros(self.rows, self.cols).add_scaled(self, s)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(other, &-Scalar::one())
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out.push((*i, j, v.clone()));
            }
        }
        out
    }
}

/// The action of `x_a εᵐ`, one block per source degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix {
    pub generator: usize,
    pub mode: i64,
    /// Source degree `d` ↦ block from degree `d` to degree `d − m`.
    /// Source degrees with `d − m < 0` map to zero and carry no block.
    pub blocks: BTreeMap<usize, SparseMatrix>,
    /// Source degrees whose image would leave the truncation.
    pub partial_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularBlock {
    pub weight: IntWeight,
    /// Basis of the solution space, as sparse vectors in degree coordinates.
    pub vectors: Vec<Vec<(usize, Scalar)>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularHighestWeight {
    pub weight: IntWeight,
    /// Dimension of the singular vectors of this weight killed by every `e_i`.
    pub multiplicity: usize,
    pub matched_candidate: Option<CandidatePair>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularVectorReport {
    pub degree: usize,
    pub blocks: Vec<SingularBlock>,
    pub highest_weights: Vec<SingularHighestWeight>,
}

impl SingularVectorReport {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.vectors.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }
}

/// Basis of `V(N′)` on the degrees `0..=window`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilatorSpace {
    pub level: usize,
    pub window: usize,
    /// Dense vectors in degree coordinates, one list per degree.
    pub degrees: Vec<Vec<Vec<Scalar>>>,
}

impl AnnihilatorSpace {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlReport {
    pub holds: bool,
    pub level: usize,
    pub window: usize,
    pub kernel_equals_v1: bool,
    pub image_in_previous_level: bool,
    pub g_stable: bool,
    pub equivariant: bool,
    pub v1_dims: Vec<usize>,
    pub level_dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub holds: bool,
    /// Number of basis vectors on which the identity was evaluated.
    pub checked: usize,
    /// `(generator, mode, source degree)` of the first failures.
    pub failures: Vec<(usize, i64, usize)>,
}

#[derive(Debug)]
pub struct TruncatedWeylModule {
    lie: Arc<LieBasis>,
    m_hw: Weight,
    m_rep: Representation,
    kappa: Scalar,
    level_shift: Scalar,
    depth: usize,
    monos: Vec<Mono>,
    mono_ids: HashMap<Mono, u32>,
    mono_weights: Vec<IntWeight>,
    mono_degrees: Vec<usize>,
    basis: Vec<Key>,
    degree_offsets: Vec<usize>,
    position: HashMap<Key, usize>,
    memo: Mutex<HashMap<(u16, i32, Key), Arc<SparseVec>>>,
    action_cache: Mutex<HashMap<(usize, i64), Arc<GradedMatrix>>>,
    l0: OnceLock<Vec<SparseMatrix>>,
}

/// Builds the truncation with the default depth cap.
pub fn build_truncated(m_hw: &Weight, kappa: &Scalar, depth: usize) -> Result<TruncatedWeylModule> {
    build_truncated_with_cap(m_hw, kappa, depth, DEFAULT_DEPTH_CAP)
}

pub fn build_truncated_with_cap(m_hw: &Weight, kappa: &Scalar, depth: usize, cap: usize) -> Result<TruncatedWeylModule> {
    let alg = &m_hw.algebra;
    if alg.rank > 2 {
        return Err(Error::Unsupported(format!("explicit modules are limited to rank ≤ 2, got {}", alg.name())));
    }
    if depth == 0 || depth > cap {
        return Err(Error::Unsupported(format!("depth {depth} outside the supported range 1..={cap}")));
    }
    if kappa.is_zero() {
        return Err(Error::CriticalLevel);
    }
    let hw = m_hw.as_dominant_integral()?;
    let lie = Arc::new(LieBasis::new(alg)?);
    let m_rep = Representation::irreducible(&lie, &hw)?;
    let dim_g = lie.dim() as u16;

    let mut monos: Vec<Mono> = Vec::new();
    let mut mono_degrees = Vec::new();
    for d in 0..=depth {
        let mut found = Vec::new();
        enumerate_monos(d as u16, (1, 0), dim_g, &mut Vec::new(), &mut found);
        mono_degrees.extend(std::iter::repeat_n(d, found.len()));
        monos.extend(found);
    }
    let mono_ids: HashMap<Mono, u32> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
    let mono_weights = monos
        .iter()
        .map(|m| {
            let mut w = vec![0; alg.rank];
            for &(_, a) in m {
                add_into(&mut w, &lie.elements[a as usize].weight);
            }
            w
        })
        .collect();

    let mut basis = Vec::new();
    let mut degree_offsets = vec![0];
    let mut position = HashMap::new();
    for d in 0..=depth {
        let start = basis.len();
        for (id, _) in monos.iter().enumerate().filter(|(i, _)| mono_degrees[*i] == d) {
            for m in 0..m_rep.dim {
                position.insert((id as u32, m as u32), basis.len() - start);
                basis.push((id as u32, m as u32));
            }
        }
        degree_offsets.push(basis.len());
    }
    let level_shift = kappa - &Scalar::from_int(alg.dual_coxeter as i64);
    Ok(TruncatedWeylModule {
        lie,
        m_hw: m_hw.clone(),
        m_rep,
        kappa: kappa.clone(),
        level_shift,
        depth,
        monos,
        mono_ids,
        mono_weights,
        mono_degrees,
        basis,
        degree_offsets,
        position,
        memo: Mutex::new(HashMap::new()),
        action_cache: Mutex::new(HashMap::new()),
        l0: OnceLock::new(),
    })
}

fn enumerate_monos(rest: u16, min: (u16, u16), dim_g: u16, cur: &mut Mono, out: &mut Vec<Mono>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for k in min.0..=rest {
        let first = if k == min.0 { min.1 } else { 0 };
        for a in first..dim_g {
            cur.push((k, a));
            enumerate_monos(rest - k, (k, a), dim_g, cur, out);
            cur.pop();
        }
    }
}

fn add_into(acc: &mut [i64], w: &[i64]) {
    for (x, y) in acc.iter_mut().zip(w) {
        *x += y;
    }
}

fn accumulate<K: std::hash::Hash + Eq + Ord>(acc: HashMap<K, Scalar>) -> Vec<(K, Scalar)> {
    let mut v: Vec<(K, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

impl TruncatedWeylModule {
    pub fn algebra(&self) -> &Algebra {
        &self.lie.algebra
    }

    pub fn lie(&self) -> &LieBasis {
        &self.lie
    }

    pub fn m_hw(&self) -> &Weight {
        &self.m_hw
    }

    pub fn m_representation(&self) -> &Representation {
        &self.m_rep
    }

    pub fn kappa(&self) -> &Scalar {
        &self.kappa
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The scalar `κ − h∨` by which `K` acts.
    pub fn central_charge(&self) -> &Scalar {
        &self.level_shift
    }

    /// Matrix of `K` on degree `d`.
    pub fn central_action(&self, d: usize) -> SparseMatrix {
        SparseMatrix::scalar(self.degree_dim(d), &self.level_shift)
    }

    pub fn degree_dim(&self, d: usize) -> usize {
        self.degree_offsets[d + 1] - self.degree_offsets[d]
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        (0..=self.depth).map(|d| self.degree_dim(d)).collect()
    }

    /// Number of PBW monomials in `U(ε⁻¹g[ε⁻¹])` of degree `d`.
    pub fn monomial_count(&self, d: usize) -> usize {
        self.mono_degrees.iter().filter(|&&x| x == d).count()
    }

    pub fn basis_vector(&self, d: usize, i: usize) -> PbwVector {
        let (id, m) = self.basis[self.degree_offsets[d] + i];
        PbwVector {
            monomial: self.monos[id as usize].iter().map(|&(k, a)| (a as usize, k as u64)).collect(),
            m_index: m as usize,
            weight: self.key_weight((id, m)),
        }
    }

    fn key_weight(&self, (id, m): Key) -> IntWeight {
        let mut w = self.mono_weights[id as usize].clone();
        add_into(&mut w, &self.m_rep.weights[m as usize]);
        w
    }

    fn key_at(&self, d: usize, i: usize) -> Key {
        self.basis[self.degree_offsets[d] + i]
    }

    fn mono_id(&self, m: &[(u16, u16)]) -> u32 {
        *self.mono_ids.get(m).expect("monomial inside the truncation")
    }

    /// `x_a εᵐ` applied to a basis vector. The caller guarantees that the
    /// target degree does not exceed the depth.
    fn apply_key(&self, a: usize, mode: i32, key: Key) -> Arc<SparseVec> {
        let memo_key = (a as u16, mode, key);
        if let Some(v) = self.memo.lock().unwrap().get(&memo_key) {
            return v.clone();
        }
        let v = Arc::new(self.compute_key(a, mode, key));
        self.memo.lock().unwrap().entry(memo_key).or_insert(v).clone()
    }

    fn compute_key(&self, a: usize, mode: i32, (id, m): Key) -> SparseVec {
        let mono = &self.monos[id as usize];
        if mono.is_empty() {
            return match mode {
                _ if mode > 0 => Vec::new(),
                0 => {
                    let mat = &self.m_rep.matrices[a];
                    (0..self.m_rep.dim)
                        .filter(|&r| !mat.get(r, m as usize).is_zero())
                        .map(|r| ((0, r as u32), Scalar::real(mat.get(r, m as usize).clone())))
                        .collect()
                }
                _ => vec![((self.mono_id(&[((-mode) as u16, a as u16)]), m), Scalar::one())],
            };
        }
        let head = mono[0];
        if mode < 0 && ((-mode) as u16, a as u16) <= head {
            let mut longer = Vec::with_capacity(mono.len() + 1);
            longer.push(((-mode) as u16, a as u16));
            longer.extend_from_slice(mono);
            return vec![((self.mono_id(&longer), m), Scalar::one())];
        }
        // y·z·R = z·(y·R) + [y, z]·R
        let rest = (self.mono_id(&mono[1..]), m);
        let (k, b) = (head.0 as i32, head.1 as usize);
        let mut acc: HashMap<Key, Scalar> = HashMap::new();
        for (key, c) in self.apply_key(a, mode, rest).iter() {
            for (key2, c2) in self.apply_key(b, -k, *key).iter() {
                *acc.entry(*key2).or_insert_with(Scalar::zero) += &(c * c2);
            }
        }
        for (cidx, f) in &self.lie.bracket[a][b] {
            for (key2, c2) in self.apply_key(*cidx, mode - k, rest).iter() {
                *acc.entry(*key2).or_insert_with(Scalar::zero) += &c2.scale(f);
            }
        }
        if mode == k {
            let form = self.lie.form.get(a, b);
            if !form.is_zero() {
                let c = self.level_shift.scale(&(q(mode as i64) * form));
                *acc.entry(rest).or_insert_with(Scalar::zero) += &c;
            }
        }
        accumulate(acc)
    }

    fn apply_sparse(&self, a: usize, mode: i32, v: &SparseVec) -> SparseVec {
        let mut acc: HashMap<Key, Scalar> = HashMap::new();
        for (key, c) in v {
            for (key2, c2) in self.apply_key(a, mode, *key).iter() {
                *acc.entry(*key2).or_insert_with(Scalar::zero) += &(c * c2);
            }
        }
        accumulate(acc)
    }

    fn degree_of_key(&self, key: Key) -> usize {
        self.mono_degrees[key.0 as usize]
    }

    fn check_mode(&self, mode: i64) -> Result<()> {
        if mode.unsigned_abs() as usize > self.depth {
            return Err(Error::WindowTooSmall(format!("mode {mode} exceeds depth {}", self.depth)));
        }
        Ok(())
    }

    fn to_sparse(&self, d: usize, v: &[Scalar]) -> SparseVec {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.key_at(d, i), c.clone())).collect()
    }

    fn to_dense(&self, d: usize, v: &SparseVec) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.degree_dim(d)];
        for (key, c) in v {
            debug_assert_eq!(self.degree_of_key(*key), d);
            out[self.position[key]] = c.clone();
        }
        out
    }

    /// `x_a εᵐ` applied to a dense vector of degree `d`. Returns an empty
    /// vector when the target degree is negative.
    pub fn apply(&self, a: usize, mode: i64, d: usize, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_mode(mode)?;
        let target = d as i64 - mode;
        if target < 0 {
            return Ok(Vec::new());
        }
        if target as usize > self.depth {
            return Err(Error::WindowTooSmall(format!("degree {target} exceeds depth {}", self.depth)));
        }
        Ok(self.to_dense(target as usize, &self.apply_sparse(a, mode as i32, &self.to_sparse(d, v))))
    }

    /// Exact matrix of `x_a εᵐ`.
    pub fn act(&self, a: usize, mode: i64) -> Result<Arc<GradedMatrix>> {
        self.check_mode(mode)?;
        if a >= self.lie.dim() {
            return Err(Error::Unsupported(format!("generator index {a} out of range")));
        }
        if let Some(m) = self.action_cache.lock().unwrap().get(&(a, mode)) {
            return Ok(m.clone());
        }
        let mut blocks = BTreeMap::new();
        let mut partial_degrees = Vec::new();
        for d in 0..=self.depth {
            let target = d as i64 - mode;
            if target < 0 {
                continue;
            }
            let target = target as usize;
            if target > self.depth {
                partial_degrees.push(d);
                continue;
            }
            let columns = (0..self.degree_dim(d))
                .map(|i| {
                    self.apply_key(a, mode as i32, self.key_at(d, i))
                        .iter()
                        .map(|(key, c)| (self.position[key], c.clone()))
                        .collect()
                })
                .collect();
            blocks.insert(d, SparseMatrix { rows: self.degree_dim(target), cols: self.degree_dim(d), columns });
        }
        let gm = Arc::new(GradedMatrix { generator: a, mode, blocks, partial_degrees });
        Ok(self.action_cache.lock().unwrap().entry((a, mode)).or_insert(gm).clone())
    }

    /// `x^p εʲ` applied to `v`, where `x^p` is the dual basis element.
    fn apply_dual(&self, p: usize, mode: i32, v: &SparseVec) -> SparseVec {
        let mut acc: HashMap<Key, Scalar> = HashMap::new();
        for (qi, c) in &self.lie.dual[p] {
            for (key, x) in self.apply_sparse(*qi, mode, v) {
                *acc.entry(key).or_insert_with(Scalar::zero) += &x.scale(c);
            }
        }
        accumulate(acc)
    }

    /// `L₀ = (1/2κ) Σ_p [x_p x^p + 2 Σ_{j≥1} (x_p ε^{−j})(x^p εʲ)]`,
    /// evaluated on every basis vector; one block per degree.
    pub fn sugawara_l0(&self) -> &[SparseMatrix] {
        self.l0.get_or_init(|| {
            let inv_two_kappa = (&self.kappa + &self.kappa).inv().expect("κ ≠ 0");
            (0..=self.depth)
                .map(|d| {
                    let columns = (0..self.degree_dim(d))
                        .map(|i| {
                            let v: SparseVec = vec![(self.key_at(d, i), Scalar::one())];
                            let mut acc: HashMap<Key, Scalar> = HashMap::new();
                            for p in 0..self.lie.dim() {
                                for (key, c) in self.apply_sparse(p, 0, &self.apply_dual(p, 0, &v)) {
                                    *acc.entry(key).or_insert_with(Scalar::zero) += &c;
                                }
                                for j in 1..=d as i32 {
                                    let lowered = self.apply_dual(p, j, &v);
                                    for (key, c) in self.apply_sparse(p, -j, &lowered) {
                                        *acc.entry(key).or_insert_with(Scalar::zero) += &(&c + &c);
                                    }
                                }
                            }
                            accumulate(acc)
                                .into_iter()
                                .map(|(key, c)| (self.position[&key], &c * &inv_two_kappa))
                                .collect()
                        })
                        .collect();
                    SparseMatrix { rows: self.degree_dim(d), cols: self.degree_dim(d), columns }
                })
                .collect()
        })
    }

    /// The scalar `a/2κ + d` expected for `L₀` on degree `d`.
    pub fn expected_l0(&self, d: usize) -> Scalar {
        let a = casimir_on_irrep(self.algebra(), &self.m_hw).expect("dominant highest weight");
        let top = &Scalar::real(a) / &(&self.kappa + &self.kappa);
        &top + &Scalar::from_int(d as i64)
    }

    /// Whether `L₀` equals `a/2κ + d` on every degree.
    pub fn l0_is_scalar(&self) -> bool {
        self.sugawara_l0()
            .iter()
            .enumerate()
            .all(|(d, block)| *block == SparseMatrix::scalar(self.degree_dim(d), &self.expected_l0(d)))
    }

    fn weight_blocks(&self, d: usize) -> BTreeMap<IntWeight, Vec<usize>> {
        let mut blocks: BTreeMap<IntWeight, Vec<usize>> = BTreeMap::new();
        for i in 0..self.degree_dim(d) {
            blocks.entry(self.key_weight(self.key_at(d, i))).or_default().push(i);
        }
        blocks
    }

    /// Kernel of the stacked maps `column ↦ op(column)`, `op` ranging over
    /// `ops`, restricted to the span of the given degree-`d` vectors.
    fn joint_kernel(&self, d: usize, cols: &[Vec<(usize, Scalar)>], ops: &[(usize, i32)]) -> Vec<Vec<Scalar>> {
        let sources: Vec<SparseVec> =
            cols.iter().map(|col| col.iter().map(|(i, c)| (self.key_at(d, *i), c.clone())).collect()).collect();
        let words: Vec<Vec<(usize, i32)>> = ops.iter().filter(|&&(_, mode)| d as i32 - mode >= 0).map(|&op| vec![op]).collect();
        self.kernel_of_words(&sources, &words)
    }

    /// Kernel of `v ↦ (w·v)_w` over the span of `sources`, each word applied
    /// right to left.
    fn kernel_of_words(&self, sources: &[SparseVec], words: &[Vec<(usize, i32)>]) -> Vec<Vec<Scalar>> {
        let mut rows: BTreeMap<(usize, Key), Vec<Scalar>> = BTreeMap::new();
        let n = sources.len();
        for (j, v) in sources.iter().enumerate() {
            for (w, word) in words.iter().enumerate() {
                let mut img = v.clone();
                for &(a, mode) in word.iter().rev() {
                    img = self.apply_sparse(a, mode, &img);
                    if img.is_empty() {
                        break;
                    }
                }
                for (key, c) in img {
                    rows.entry((w, key)).or_insert_with(|| vec![Scalar::zero(); n])[j] = c;
                }
            }
        }
        kernel_of_rows(n, rows.into_values())
    }

    fn lowering_ops(&self, mode: i32) -> Vec<(usize, i32)> {
        (0..self.lie.dim()).map(|a| (a, mode)).collect()
    }

    /// Vectors of degree `n` killed by `x ε` for every basis element `x`.
    pub fn singular_vectors(&self, n: usize) -> Result<SingularVectorReport> {
        if n == 0 || n > self.depth {
            return Err(Error::WindowTooSmall(format!("degree {n} outside 1..={}", self.depth)));
        }
        let ops = self.lowering_ops(1);
        let mut blocks = Vec::new();
        let mut highest_weights = Vec::new();
        for (weight, idx) in self.weight_blocks(n) {
            let unit_cols: Vec<Vec<(usize, Scalar)>> = idx.iter().map(|&i| vec![(i, Scalar::one())]).collect();
            let kernel = self.joint_kernel(n, &unit_cols, &ops);
            if kernel.is_empty() {
                continue;
            }
            let vectors: Vec<Vec<(usize, Scalar)>> = kernel
                .iter()
                .map(|k| idx.iter().zip(k).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, c.clone())).collect())
                .collect();
            if crate::root_system::AlgebraData::is_dominant(&weight) {
                let raising: Vec<(usize, i32)> = self.lie.simple_raising.iter().map(|&e| (e, 0)).collect();
                let hw_dim = self.joint_kernel(n, &vectors, &raising).len();
                if hw_dim > 0 {
                    highest_weights.push(SingularHighestWeight {
                        weight: weight.clone(),
                        multiplicity: hw_dim,
                        matched_candidate: self.match_candidate(&weight, n),
                    });
                }
            }
            blocks.push(SingularBlock { weight, vectors });
        }
        Ok(SingularVectorReport { degree: n, blocks, highest_weights })
    }

    /// The pair `(μ, n)` with `μ = ν − M_hw`, looked up among the candidates.
    fn match_candidate(&self, nu: &[i64], n: usize) -> Option<CandidatePair> {
        let alg = self.algebra();
        let hw = self.m_hw.as_integral()?;
        let diff: Vec<i64> = nu.iter().zip(&hw).map(|(a, b)| a - b).collect();
        let mu = alg.weight_in_root_lattice(&diff)?;
        let lambda = shifted_parameter(&self.m_hw);
        candidate_pairs(&lambda, &self.kappa, n as u64)
            .ok()?
            .into_iter()
            .find(|p| p.n == n as u64 && p.mu.coords == mu)
    }

    /// `V(N′)`: vectors killed by every PBW monomial of `U(εg[ε])` of
    /// degree `N′`, on the degrees `0..=depth − N′`.
    pub fn annihilator_level(&self, level: usize) -> Result<AnnihilatorSpace> {
        if level == 0 || self.depth < level {
            return Err(Error::WindowTooSmall(format!("V({level}) needs depth ≥ {level}, have {}", self.depth)));
        }
        let window = self.depth - level;
        // the factor (k, a) of a PBW monomial stands for x_a εᵏ here
        let words: Vec<Vec<(usize, i32)>> = (0..self.monos.len())
            .filter(|&i| self.mono_degrees[i] == level)
            .map(|i| self.monos[i].iter().map(|&(k, a)| (a as usize, k as i32)).collect())
            .collect();
        let mut degrees = Vec::new();
        for d in 0..=window {
            let dim = self.degree_dim(d);
            if d < level {
                degrees.push((0..dim).map(|i| unit(dim, i)).collect());
                continue;
            }
            let mut basis = Vec::new();
            for idx in self.weight_blocks(d).into_values() {
                let sources: Vec<SparseVec> = idx.iter().map(|&i| vec![(self.key_at(d, i), Scalar::one())]).collect();
                for k in self.kernel_of_words(&sources, &words) {
                    let mut v = vec![Scalar::zero(); dim];
                    for (&i, c) in idx.iter().zip(k) {
                        v[i] = c;
                    }
                    basis.push(v);
                }
            }
            degrees.push(basis);
        }
        Ok(AnnihilatorSpace { level, window, degrees })
    }

    /// Exactness of `0 → V(1) → V(N′) → Hom(g, V(N′−1))`,
    /// `i(v)(x) = (εx)·v`, and g-equivariance of `i`, on degrees
    /// `0..=depth − N′`.
    pub fn check_kl_exact_sequence(&self, level: usize) -> Result<KlReport> {
        let vn = self.annihilator_level(level)?;
        let window = vn.window;
        let v1 = self.annihilator_level(1)?;
        if level == 1 {
            return Ok(KlReport {
                holds: true,
                level,
                window,
                kernel_equals_v1: true,
                image_in_previous_level: true,
                g_stable: true,
                equivariant: true,
                v1_dims: v1.dims()[..=window].to_vec(),
                level_dims: vn.dims(),
                kernel_dims: vn.dims(),
            });
        }
        let prev = self.annihilator_level(level - 1)?;
        let dim_g = self.lie.dim();
        let mut report = KlReport {
            holds: true,
            level,
            window,
            kernel_equals_v1: true,
            image_in_previous_level: true,
            g_stable: true,
            equivariant: true,
            v1_dims: v1.dims()[..=window].to_vec(),
            level_dims: vn.dims(),
            kernel_dims: Vec::new(),
        };
        for d in 0..=window {
            let basis = &vn.degrees[d];
            let dim = self.degree_dim(d);
            // i as a matrix on the chosen basis of V(N′)_d
            let images: Vec<Vec<Vec<Scalar>>> = basis
                .iter()
                .map(|v| (0..dim_g).map(|x| self.apply(x, 1, d, v).expect("inside window")).collect())
                .collect();
            let stacked: Vec<Vec<Scalar>> = images.iter().map(|per_x| per_x.concat()).collect();
            let kernel: Vec<Vec<Scalar>> = if stacked.is_empty() {
                Vec::new()
            } else if stacked[0].is_empty() {
                basis.clone()
            } else {
                Matrix::from_cols(stacked[0].len(), &stacked)
                    .nullspace()
                    .iter()
                    .map(|c| combine(basis, c, dim))
                    .collect()
            };
            report.kernel_dims.push(kernel.len());
            let r1 = span_rank(dim, &v1.degrees[d]);
            let joint: Vec<Vec<Scalar>> = kernel.iter().chain(&v1.degrees[d]).cloned().collect();
            if kernel.len() != r1 || span_rank(dim, &joint) != r1 {
                report.kernel_equals_v1 = false;
            }
            if d >= 1 {
                let target = &prev.degrees[d - 1];
                let rp = span_rank(self.degree_dim(d - 1), target);
                let joint: Vec<Vec<Scalar>> = target.iter().cloned().chain(images.iter().flatten().cloned()).collect();
                if span_rank(self.degree_dim(d - 1), &joint) != rp {
                    report.image_in_previous_level = false;
                }
            }
            let rb = basis.len();
            for y in 0..dim_g {
                let moved: Vec<Vec<Scalar>> = basis.iter().map(|v| self.apply(y, 0, d, v).expect("degree kept")).collect();
                let joint: Vec<Vec<Scalar>> = basis.iter().chain(&moved).cloned().collect();
                if span_rank(dim, &joint) != rb {
                    report.g_stable = false;
                }
                if d == 0 {
                    continue;
                }
                for (v, yv) in basis.iter().zip(&moved) {
                    for x in 0..dim_g {
                        // (εx)(y v) − y((εx) v) − (ε[x, y]) v
                        let lhs = self.apply(x, 1, d, yv)?;
                        let rhs = self.apply(y, 0, d - 1, &self.apply(x, 1, d, v)?)?;
                        let mut diff: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                        for (c, f) in &self.lie.bracket[x][y] {
                            for (slot, val) in diff.iter_mut().zip(self.apply(*c, 1, d, v)?) {
                                *slot -= &val.scale(f);
                            }
                        }
                        if diff.iter().any(|c| !c.is_zero()) {
                            report.equivariant = false;
                        }
                    }
                }
            }
        }
        report.holds = report.kernel_equals_v1 && report.image_in_previous_level && report.g_stable && report.equivariant;
        Ok(report)
    }

    /// `[L₀, x εⁿ] = −n x εⁿ` for every generator and `|n| ≤ depth`, on all
    /// source degrees whose image stays inside the truncation.
    pub fn virasoro_commutation_check(&self) -> IdentityReport {
        let l0 = self.sugawara_l0();
        let mut report = IdentityReport { holds: true, checked: 0, failures: Vec::new() };
        let depth = self.depth as i64;
        for a in 0..self.lie.dim() {
            for mode in -depth..=depth {
                let act = self.act(a, mode).expect("mode within depth");
                for (&d, block) in &act.blocks {
                    let target = (d as i64 - mode) as usize;
                    let lhs = l0[target].mul(block).sub(&block.mul(&l0[d]));
                    let rhs = block.scale(&Scalar::from_int(-mode));
                    report.checked += block.cols;
                    if lhs != rhs {
                        report.holds = false;
                        report.failures.push((a, mode, d));
                    }
                }
            }
        }
        report
    }

    /// `[x_a εᵐ, x_b εᵐ'] = [x_a, x_b] εᵐ⁺ᵐ' + m δ_{m,−m'} (x_a, x_b) K` on
    /// every basis vector for which all intermediate degrees stay inside the
    /// truncation, for `|m|, |m'| ≤ max_mode`.
    pub fn commutation_check(&self, max_mode: i64) -> Result<IdentityReport> {
        self.check_mode(max_mode)?;
        let mut report = IdentityReport { holds: true, checked: 0, failures: Vec::new() };
        let dim_g = self.lie.dim();
        let depth = self.depth as i64;
        for a in 0..dim_g {
            for b in 0..dim_g {
                for m1 in -max_mode..=max_mode {
                    for m2 in -max_mode..=max_mode {
                        if (m1 + m2).abs() > depth {
                            continue;
                        }
                        for d in 0..=depth {
                            let fits = [d - m1, d - m2, d - m1 - m2].iter().all(|&t| t <= depth);
                            if !fits {
                                continue;
                            }
                            let du = d as usize;
                            let mut ok = true;
                            for i in 0..self.degree_dim(du) {
                                let v: SparseVec = vec![(self.key_at(du, i), Scalar::one())];
                                let ab = if d - m2 < 0 { Vec::new() } else { self.apply_sparse(a, m1 as i32, &self.apply_sparse(b, m2 as i32, &v)) };
                                let ba = if d - m1 < 0 { Vec::new() } else { self.apply_sparse(b, m2 as i32, &self.apply_sparse(a, m1 as i32, &v)) };
                                let mut acc: HashMap<Key, Scalar> = HashMap::new();
                                for (k, c) in ab {
                                    *acc.entry(k).or_insert_with(Scalar::zero) += &c;
                                }
                                for (k, c) in ba {
                                    *acc.entry(k).or_insert_with(Scalar::zero) -= &c;
                                }
                                if d - m1 - m2 >= 0 {
                                    for (c, f) in &self.lie.bracket[a][b] {
                                        for (k, x) in self.apply_sparse(*c, (m1 + m2) as i32, &v) {
                                            *acc.entry(k).or_insert_with(Scalar::zero) -= &x.scale(f);
                                        }
                                    }
                                }
                                if m1 == -m2 {
                                    let form = self.lie.form.get(a, b);
                                    let c = self.level_shift.scale(&(q(m1) * form));
                                    *acc.entry(v[0].0).or_insert_with(Scalar::zero) -= &c;
                                }
                                report.checked += 1;
                                if acc.values().any(|c| !c.is_zero()) {
                                    ok = false;
                                }
                            }
                            if !ok {
                                report.holds = false;
                                if report.failures.len() < 16 {
                                    report.failures.push((a, m1, du));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// Serializable snapshot of the basis and of the actions of the
    /// requested modes.
    pub fn dump(&self, modes: &[i64]) -> Result<ModuleDump> {
        let alg = self.algebra();
        let degrees = (0..=self.depth)
            .map(|d| DegreeDump { degree: d, basis: (0..self.degree_dim(d)).map(|i| self.basis_vector(d, i)).collect() })
            .collect();
        let mut actions = Vec::new();
        for &mode in modes {
            for a in 0..self.lie.dim() {
                let act = self.act(a, mode)?;
                actions.push(ActionDump {
                    generator: a,
                    mode,
                    blocks: act
                        .blocks
                        .iter()
                        .map(|(&d, m)| BlockDump {
                            source_degree: d,
                            target_degree: (d as i64 - mode) as usize,
                            rows: m.rows,
                            cols: m.cols,
                            entries: m.entries().into_iter().map(|(i, j, v)| (i, j, v.to_string())).collect(),
                        })
                        .collect(),
                    partial_degrees: act.partial_degrees.clone(),
                });
            }
        }
        let l0 = self
            .sugawara_l0()
            .iter()
            .enumerate()
            .map(|(d, m)| BlockDump {
                source_degree: d,
                target_degree: d,
                rows: m.rows,
                cols: m.cols,
                entries: m.entries().into_iter().map(|(i, j, v)| (i, j, v.to_string())).collect(),
            })
            .collect();
        Ok(ModuleDump {
            algebra: alg.name(),
            highest_weight: self.m_hw.as_dominant_integral()?,
            kappa: self.kappa.to_string(),
            central_charge: self.level_shift.to_string(),
            depth: self.depth,
            generators: self.lie.elements.iter().map(|e| GeneratorDump { name: e.name.clone(), weight: e.weight.clone() }).collect(),
            structure_constants: self.lie.structure_constants(),
            degrees,
            actions,
            l0,
        })
    }
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

fn combine(basis: &[Vec<Scalar>], coeffs: &[Scalar], dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (slot, x) in out.iter_mut().zip(b) {
            *slot += &(x * c);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDump {
    pub name: String,
    pub weight: IntWeight,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeDump {
    pub degree: usize,
    pub basis: Vec<PbwVector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockDump {
    pub source_degree: usize,
    pub target_degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)` with values as exact complex strings.
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionDump {
    pub generator: usize,
    pub mode: i64,
    pub blocks: Vec<BlockDump>,
    pub partial_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDump {
    pub algebra: String,
    pub highest_weight: IntWeight,
    pub kappa: String,
    pub central_charge: String,
    pub depth: usize,
    pub generators: Vec<GeneratorDump>,
    pub structure_constants: Vec<StructureConstant>,
    pub degrees: Vec<DegreeDump>,
    pub actions: Vec<ActionDump>,
    pub l0: Vec<BlockDump>,
}
