//! Concrete realization of `sl_{r+1}` by trace-free matrices: a fixed
//! Chevalley basis, its structure constants, the normalized invariant form
//! (the trace form), the dual basis, and explicit finite-dimensional
//! representations.
//!
//! Basis order: `e_β` for the positive roots β in the order of
//! [`AlgebraData::positive_roots`], then `h_1..h_r`, then `f_β` in the same
//! order. For `β = α_i + … + α_{j−1}` (0-based), `e_β = E_{ij}`,
//! `f_β = E_{ji}` and `h_k = E_{kk} − E_{k+1,k+1}`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{rational_string, Rational};
use crate::root_system::{Algebra, AlgebraData, IntWeight, Series};

/// Sparse linear combination of basis elements.
pub type Combination = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    Raising,
    Cartan,
    Lowering,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub kind: BasisKind,
    pub weight: IntWeight,
}

/// Structure constant `[x_a, x_b] = Σ_c coeff·x_c`, serialized for golden files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    #[serde(with = "rational_string")]
    pub coeff: Rational,
}

#[derive(Debug)]
pub struct LieBasis {
    pub algebra: Algebra,
    pub elements: Vec<BasisElement>,
    /// Defining-representation matrices, one per basis element.
    pub matrices: Vec<Matrix<Rational>>,
    /// `bracket[a][b]` = expansion of `[x_a, x_b]`.
    pub bracket: Vec<Vec<Combination>>,
    /// Gram matrix of the invariant form on the basis.
    pub form: Matrix<Rational>,
    /// `dual[p]` = expansion of `x^p` with `(x_p, x^q) = δ_pq`.
    pub dual: Vec<Combination>,
    /// Indices of `e_{α_i}` and `f_{α_i}` for the simple roots.
    pub simple_raising: Vec<usize>,
    pub simple_lowering: Vec<usize>,
}

impl LieBasis {
    /// Chevalley basis of `sl_{r+1}`; other series are not realized.
    pub fn new(algebra: &Algebra) -> Result<Self> {
        if algebra.series != Series::A {
            return Err(Error::Unsupported(format!(
                "explicit matrix realization is only available for type A, not {}",
                algebra.name()
            )));
        }
        let r = algebra.rank;
        let n = r + 1;
        let unit = |i: usize, j: usize| {
            let mut m = Matrix::<Rational>::zeros(n, n);
            m.set(i, j, Rational::one());
            m
        };
        let root_span = |root: &[i64]| -> (usize, usize) {
            let i = root.iter().position(|&x| x != 0).unwrap();
            let len = root.iter().filter(|&&x| x != 0).count();
            (i, i + len)
        };
        let mut elements = Vec::new();
        let mut matrices = Vec::new();
        for root in &algebra.positive_roots {
            let (i, j) = root_span(root);
            elements.push(BasisElement {
                name: format!("e{root:?}").replace(' ', ""),
                kind: BasisKind::Raising,
                weight: algebra.root_to_weight(root),
            });
            matrices.push(unit(i, j));
        }
        for k in 0..r {
            let mut m = unit(k, k);
            m.set(k + 1, k + 1, -Rational::one());
            elements.push(BasisElement { name: format!("h{}", k + 1), kind: BasisKind::Cartan, weight: vec![0; r] });
            matrices.push(m);
        }
        for root in &algebra.positive_roots {
            let (i, j) = root_span(root);
            elements.push(BasisElement {
                name: format!("f{root:?}").replace(' ', ""),
                kind: BasisKind::Lowering,
                weight: algebra.root_to_weight(root).iter().map(|x| -x).collect(),
            });
            matrices.push(unit(j, i));
        }
        let npos = algebra.positive_roots.len();
        let mut offdiag: HashMap<(usize, usize), usize> = HashMap::new();
        for (idx, root) in algebra.positive_roots.iter().enumerate() {
            let (i, j) = root_span(root);
            offdiag.insert((i, j), idx);
            offdiag.insert((j, i), npos + r + idx);
        }
        let expand = |m: &Matrix<Rational>| -> Combination {
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && !m.get(i, j).is_zero() {
                        out.push((offdiag[&(i, j)], m.get(i, j).clone()));
                    }
                }
            }
            // diag(d) = Σ c_k h_k with c_k = d_0 + … + d_k
            let mut c = Rational::zero();
            for k in 0..r {
                c += m.get(k, k);
                if !c.is_zero() {
                    out.push((npos + k, c.clone()));
                }
            }
            out.sort_by_key(|x| x.0);
            out
        };
        let dim = elements.len();
        let mut bracket = vec![vec![Vec::new(); dim]; dim];
        let mut form = Matrix::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                let ab = matrices[a].mul(&matrices[b]);
                let comm = ab.sub(&matrices[b].mul(&matrices[a]));
                bracket[a][b] = expand(&comm);
                let tr = (0..n).fold(Rational::zero(), |acc, i| acc + ab.get(i, i));
                form.set(a, b, tr);
            }
        }
        let inv = form.inverse().expect("invariant form is nondegenerate");
        let dual = (0..dim)
            .map(|p| (0..dim).filter(|&q| !inv.get(p, q).is_zero()).map(|q| (q, inv.get(p, q).clone())).collect())
            .collect();
        let simple_raising = (0..r).map(|i| algebra.positive_roots.iter().position(|x| is_unit(x, i)).unwrap()).collect::<Vec<_>>();
        let simple_lowering = simple_raising.iter().map(|&i| npos + r + i).collect();
        Ok(LieBasis { algebra: algebra.clone(), elements, matrices, bracket, form, dual, simple_raising, simple_lowering })
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for (c, coeff) in &self.bracket[a][b] {
                    out.push(StructureConstant { a, b, c: *c, coeff: coeff.clone() });
                }
            }
        }
        out
    }
}

fn is_unit(v: &[i64], i: usize) -> bool {
    v.iter().enumerate().all(|(k, &x)| x == if k == i { 1 } else { 0 })
}

/// A finite-dimensional representation with a weight basis.
#[derive(Clone, Debug)]
pub struct Representation {
    pub dim: usize,
    pub weights: Vec<IntWeight>,
    /// Action matrix of every basis element of the Lie algebra.
    pub matrices: Vec<Matrix<Rational>>,
}

type Tensor = Vec<u8>;
type AmbientVec = BTreeMap<Tensor, Rational>;

impl Representation {
    pub fn trivial(lie: &LieBasis) -> Self {
        Representation {
            dim: 1,
            weights: vec![vec![0; lie.algebra.rank]],
            matrices: vec![Matrix::zeros(1, 1); lie.dim()],
        }
    }

    pub fn defining(lie: &LieBasis) -> Self {
        let r = lie.algebra.rank;
        let weights = (0..=r)
            .map(|k| {
                // ε_k = ω_k − ω_{k−1} (1-based, ω_0 = ω_{r+1} = 0)
                let mut w = vec![0i64; r];
                if k < r {
                    w[k] += 1;
                }
                if k > 0 {
                    w[k - 1] -= 1;
                }
                w
            })
            .collect();
        Representation { dim: r + 1, weights, matrices: lie.matrices.clone() }
    }

    pub fn dual(&self) -> Self {
        Representation {
            dim: self.dim,
            weights: self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
            matrices: self.matrices.iter().map(|m| m.transpose().scale(&-Rational::one())).collect(),
        }
    }

    pub fn adjoint(lie: &LieBasis) -> Self {
        let dim = lie.dim();
        let matrices = (0..dim)
            .map(|a| {
                let mut m = Matrix::zeros(dim, dim);
                for b in 0..dim {
                    for (c, v) in &lie.bracket[a][b] {
                        m.set(*c, b, v.clone());
                    }
                }
                m
            })
            .collect();
        Representation { dim, weights: lie.elements.iter().map(|e| e.weight.clone()).collect(), matrices }
    }

    pub fn tensor(&self, other: &Representation) -> Self {
        let dim = self.dim * other.dim;
        let mut weights = Vec::with_capacity(dim);
        for w in &self.weights {
            for v in &other.weights {
                weights.push(w.iter().zip(v).map(|(a, b)| a + b).collect());
            }
        }
        let id_a: Matrix<Rational> = Matrix::identity(self.dim);
        let id_b: Matrix<Rational> = Matrix::identity(other.dim);
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(x, y)| kron(x, &id_b).add(&kron(&id_a, y)))
            .collect();
        Representation { dim, weights, matrices }
    }

    /// The irreducible module `L(hw)` of `sl_2` or `sl_3`. For `sl_3` it is
    /// cut out of `V^{⊗a} ⊗ (V*)^{⊗b}` as the span of lowering-operator words
    /// applied to the tensor of highest weight vectors.
    pub fn irreducible(lie: &LieBasis, hw: &[i64]) -> Result<Self> {
        let alg = &lie.algebra;
        if alg.rank > 2 {
            return Err(Error::Unsupported(format!("explicit irreducibles of {} are not implemented", alg.name())));
        }
        if !AlgebraData::is_dominant(hw) || hw.len() != alg.rank {
            return Err(Error::NotDominantIntegral(format!("{hw:?}")));
        }
        if hw.iter().all(|&x| x == 0) {
            return Ok(Self::trivial(lie));
        }
        if alg.rank == 1 {
            return Ok(Self::sl2_irreducible(hw[0] as usize));
        }
        let v = Self::defining(lie);
        let vd = v.dual();
        let mut factors: Vec<&Representation> = vec![&v; hw[0] as usize];
        if alg.rank == 2 {
            factors.extend(std::iter::repeat_n(&vd, hw[1] as usize));
        }
        let top: Tensor = factors
            .iter()
            .enumerate()
            .map(|(i, _)| if i < hw[0] as usize { 0 } else { alg.rank as u8 })
            .collect();
        let apply = |x: usize, vec: &AmbientVec| -> AmbientVec {
            let mut out = AmbientVec::new();
            for (t, c) in vec {
                for (p, f) in factors.iter().enumerate() {
                    let col = t[p] as usize;
                    for row in 0..f.dim {
                        let m = f.matrices[x].get(row, col);
                        if m.is_zero() {
                            continue;
                        }
                        let mut t2 = t.clone();
                        t2[p] = row as u8;
                        *out.entry(t2).or_insert_with(Rational::zero) += c * m;
                    }
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        };
        let weight_of = |vec: &AmbientVec| -> IntWeight {
            let (t, _) = vec.iter().next().expect("nonzero vector");
            let mut w = vec![0; alg.rank];
            for (p, f) in factors.iter().enumerate() {
                for (k, x) in f.weights[t[p] as usize].iter().enumerate() {
                    w[k] += x;
                }
            }
            w
        };
        let mut basis: Vec<AmbientVec> = vec![AmbientVec::from([(top, Rational::one())])];
        let mut by_weight: BTreeMap<IntWeight, Vec<usize>> = BTreeMap::new();
        by_weight.insert(hw.to_vec(), vec![0]);
        let mut idx = 0;
        while idx < basis.len() {
            for &f in &lie.simple_lowering {
                let y = apply(f, &basis[idx]);
                if y.is_empty() {
                    continue;
                }
                let w = weight_of(&y);
                let members = by_weight.entry(w).or_default();
                let mut family: Vec<&AmbientVec> = members.iter().map(|&i| &basis[i]).collect();
                family.push(&y);
                if ambient_rank(&family) == family.len() {
                    members.push(basis.len());
                    basis.push(y);
                }
            }
            idx += 1;
        }
        // order: weights descending, then generation order
        let mut order: Vec<usize> = Vec::new();
        for members in by_weight.values().rev() {
            order.extend(members);
        }
        let ordered: Vec<AmbientVec> = order.iter().map(|&i| basis[i].clone()).collect();
        let weights: Vec<IntWeight> = ordered.iter().map(weight_of).collect();
        let dim = ordered.len();
        let mut slots: BTreeMap<IntWeight, Vec<usize>> = BTreeMap::new();
        for (i, w) in weights.iter().enumerate() {
            slots.entry(w.clone()).or_default().push(i);
        }
        let mut matrices = Vec::with_capacity(lie.dim());
        for x in 0..lie.dim() {
            let mut m = Matrix::zeros(dim, dim);
            for (j, b) in ordered.iter().enumerate() {
                let y = apply(x, b);
                if y.is_empty() {
                    continue;
                }
                let w = weight_of(&y);
                let targets = slots.get(&w).expect("image weight lies in the module");
                let family: Vec<&AmbientVec> = targets.iter().map(|&i| &ordered[i]).collect();
                let coeffs = ambient_solve(&family, &y).expect("image lies in the cyclic submodule");
                for (&i, c) in targets.iter().zip(coeffs) {
                    m.set(i, j, c);
                }
            }
            matrices.push(m);
        }
        Ok(Representation { dim, weights, matrices })
    }

    /// `V(n)` with basis `v_j = f^j v_0 / j!`: `h v_j = (n − 2j) v_j`,
    /// `f v_j = (j + 1) v_{j+1}`, `e v_j = (n − j + 1) v_{j−1}`.
    fn sl2_irreducible(n: usize) -> Self {
        let dim = n + 1;
        let int = |x: i64| Rational::from_integer(x.into());
        let (mut e, mut h, mut f) = (Matrix::zeros(dim, dim), Matrix::zeros(dim, dim), Matrix::zeros(dim, dim));
        for j in 0..dim {
            h.set(j, j, int(n as i64 - 2 * j as i64));
            if j + 1 < dim {
                f.set(j + 1, j, int(j as i64 + 1));
            }
            if j > 0 {
                e.set(j - 1, j, int((n - j + 1) as i64));
            }
        }
        let weights = (0..dim).map(|j| vec![n as i64 - 2 * j as i64]).collect();
        Representation { dim, weights, matrices: vec![e, h, f] }
    }

    /// `Σ_p ρ(x_p) ρ(x^p)`.
    pub fn casimir(&self, lie: &LieBasis) -> Matrix<Rational> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for p in 0..lie.dim() {
            let mut dual = Matrix::zeros(self.dim, self.dim);
            for (qi, c) in &lie.dual[p] {
                dual = dual.add(&self.matrices[*qi].scale(c));
            }
            out = out.add(&self.matrices[p].mul(&dual));
        }
        out
    }

    /// Checks `[ρ(x_a), ρ(x_b)] = ρ([x_a, x_b])` for all basis pairs.
    pub fn is_homomorphism(&self, lie: &LieBasis) -> bool {
        for a in 0..lie.dim() {
            for b in 0..lie.dim() {
                let lhs = self.matrices[a].mul(&self.matrices[b]).sub(&self.matrices[b].mul(&self.matrices[a]));
                let mut rhs = Matrix::zeros(self.dim, self.dim);
                for (c, v) in &lie.bracket[a][b] {
                    rhs = rhs.add(&self.matrices[*c].scale(v));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

fn kron(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let mut out = Matrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * b.rows + k, j * b.cols + l, x * y);
                    }
                }
            }
        }
    }
    out
}

fn support_index(family: &[&AmbientVec], extra: Option<&AmbientVec>) -> HashMap<Tensor, usize> {
    let mut idx = HashMap::new();
    for v in family.iter().copied().chain(extra) {
        for t in v.keys() {
            let next = idx.len();
            idx.entry(t.clone()).or_insert(next);
        }
    }
    idx
}

fn ambient_rank(family: &[&AmbientVec]) -> usize {
    let idx = support_index(family, None);
    let cols: Vec<Vec<Rational>> = family
        .iter()
        .map(|v| {
            let mut col = vec![Rational::zero(); idx.len()];
            for (t, c) in v.iter() {
                col[idx[t]] = c.clone();
            }
            col
        })
        .collect();
    Matrix::from_cols(idx.len(), &cols).rank()
}

fn ambient_solve(family: &[&AmbientVec], target: &AmbientVec) -> Option<Vec<Rational>> {
    let idx = support_index(family, Some(target));
    let to_col = |v: &AmbientVec| {
        let mut col = vec![Rational::zero(); idx.len()];
        for (t, c) in v.iter() {
            col[idx[t]] = c.clone();
        }
        col
    };
    let cols: Vec<Vec<Rational>> = family.iter().map(|v| to_col(v)).collect();
    let a = Matrix::from_cols(idx.len(), &cols);
    crate::linalg::solve(&a, &to_col(target))
}
