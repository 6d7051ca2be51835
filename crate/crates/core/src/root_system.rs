//! Cartan data of the complex simple Lie algebras: roots, weights, the
//! invariant form normalized so that long roots have square length 2, the
//! Weyl group action, ρ and the dual Coxeter number.
//!
//! Weights are stored in the fundamental-weight basis, root-lattice vectors
//! in the simple-root basis. All arithmetic is exact.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{format_rational, q, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::InvalidType {
                series: other.chars().next().unwrap_or('?'),
                rank: 0,
                reason: "series must be one of A, B, C, D, E, F, G".into(),
            }),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Integer weight in fundamental-weight coordinates. Used as a map key for
/// characters.
pub type IntWeight = Vec<i64>;

/// Root-system datum of a simple Lie algebra.
#[derive(Debug)]
pub struct AlgebraData {
    pub series: Series,
    pub rank: usize,
    /// `cartan_matrix[i][j] = 2(α_i, α_j)/(α_i, α_i)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// `d_i = (α_i, α_i)/2`, so that `(α_i, α_j) = d_i·cartan_matrix[i][j]`.
    pub symmetrizers: Vec<Rational>,
    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub dual_coxeter: u32,
    /// Gram matrix of (.,.) on the simple roots.
    pub form_gram: Matrix<Rational>,
    /// Gram matrix of (.,.) on the fundamental weights.
    pub weight_gram: Matrix<Rational>,
    cartan_inverse: Matrix<Rational>,
}

pub type Algebra = Arc<AlgebraData>;

fn cartan_matrix_for(series: Series, rank: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = |reason: &str| Error::InvalidType {
        series: series.letter(),
        rank,
        reason: reason.to_string(),
    };
    let min_rank = match series {
        Series::A => 1,
        Series::B => 2,
        Series::C => 3,
        Series::D => 4,
        Series::E => 6,
        Series::F => 4,
        Series::G => 2,
    };
    if rank < min_rank {
        return Err(invalid(&format!("rank must be at least {min_rank}")));
    }
    match series {
        Series::E if rank > 8 => return Err(invalid("E exists only in ranks 6, 7, 8")),
        Series::F if rank != 4 => return Err(invalid("F exists only in rank 4")),
        Series::G if rank != 2 => return Err(invalid("G exists only in rank 2")),
        _ => {}
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match series {
        Series::A => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        Series::B => {
            // α_n short
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            a[n - 1][n - 2] = -2;
        }
        Series::C => {
            // α_n long
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            a[n - 2][n - 1] = -2;
        }
        Series::D => {
            for i in 0..n - 2 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, n - 3, n - 1);
        }
        Series::E => {
            // Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 2..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        Series::F => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            // α_1, α_2 long; α_3, α_4 short
            a[2][1] = -2;
        }
        Series::G => {
            // α_1 short, α_2 long
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    Ok(a)
}

/// Solves `d_i a_ij = d_j a_ji` along the Dynkin diagram, normalized so the
/// largest `d_i` is 1.
fn symmetrizers_for(a: &[Vec<i64>]) -> Vec<Rational> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    d[0] = Some(Rational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * q(a[i][j]) / q(a[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("Dynkin diagram is connected")).collect();
    let max = d.iter().max().unwrap().clone();
    d.into_iter().map(|x| x / &max).collect()
}

fn positive_roots_for(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut idx = 0;
    while idx < roots.len() {
        let beta = roots[idx].clone();
        idx += 1;
        for i in 0..n {
            // <β, α_i^∨>
            let pairing: i64 = (0..n).map(|j| a[i][j] * beta[j]).sum();
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if known.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
    }
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| x.cmp(y))
    });
    roots
}

/// Builds the Cartan datum of the simple algebra of the given type.
pub fn build_algebra(series: Series, rank: usize) -> Result<Algebra> {
    let cartan_matrix = cartan_matrix_for(series, rank)?;
    let symmetrizers = symmetrizers_for(&cartan_matrix);
    let n = rank;
    let mut form_gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            form_gram.set(i, j, &symmetrizers[i] * q(cartan_matrix[i][j]));
        }
    }
    let a_q = Matrix::from_rows(
        cartan_matrix.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
    );
    let cartan_inverse = a_q.inverse().expect("Cartan matrix is invertible");
    let mut weight_gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            weight_gram.set(i, j, cartan_inverse.get(i, j) * &symmetrizers[i]);
        }
    }
    let positive_roots = positive_roots_for(&cartan_matrix);
    let highest = positive_roots.last().unwrap();
    let dual_marks: Rational = highest
        .iter()
        .zip(&symmetrizers)
        .map(|(&a, d)| q(a) * d)
        .fold(Rational::zero(), |acc, x| acc + x);
    let h = dual_marks + Rational::one();
    assert!(h.is_integer());
    let dual_coxeter = h.to_integer().to_u32().unwrap();
    Ok(Arc::new(AlgebraData {
        series,
        rank,
        cartan_matrix,
        symmetrizers,
        positive_roots,
        dual_coxeter,
        form_gram,
        weight_gram,
        cartan_inverse,
    }))
}

impl AlgebraData {
    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn same_as(&self, other: &AlgebraData) -> bool {
        self.series == other.series && self.rank == other.rank
    }

    /// Dimension of the algebra: rank + 2·#positive roots.
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    /// `(α, α)` for a root in simple-root coordinates.
    pub fn root_norm_sq(&self, root: &[i64]) -> Rational {
        self.form_root_root(root, root)
    }

    pub fn form_root_root(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if y[j] != 0 {
                    acc += self.form_gram.get(i, j) * q(x[i] * y[j]);
                }
            }
        }
        acc
    }

    /// `(λ, μ)` for λ in weight coordinates and μ in root coordinates.
    pub fn form_weight_root(&self, lambda: &[Rational], mu: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if mu[i] != 0 {
                acc += &lambda[i] * &self.symmetrizers[i] * q(mu[i]);
            }
        }
        acc
    }

    pub fn form_weight_weight(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if !y[j].is_zero() {
                    acc += self.weight_gram.get(i, j) * &x[i] * &y[j];
                }
            }
        }
        acc
    }

    /// Weight coordinates of a root-lattice vector.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan_matrix[i][j] * root[j]).sum())
            .collect()
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root(&self, w: &[Rational]) -> Vec<Rational> {
        self.cartan_inverse.mul_vec(w)
    }

    /// Root coordinates of an integral weight difference, if it lies in Q.
    pub fn weight_in_root_lattice(&self, w: &[i64]) -> Option<Vec<i64>> {
        let wq: Vec<Rational> = w.iter().map(|&x| q(x)).collect();
        self.weight_to_root(&wq)
            .into_iter()
            .map(|r| if r.is_integer() { r.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn rho_coords(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn rho(self: &Arc<Self>) -> Weight {
        Weight::from_ints(self, &self.rho_coords())
    }

    pub fn rho_norm_sq(&self) -> Rational {
        let r: Vec<Rational> = vec![Rational::one(); self.rank];
        self.form_weight_weight(&r, &r)
    }

    /// Simple reflection `s_i` on an integral weight.
    pub fn reflect(&self, i: usize, w: &mut [i64]) {
        let c = w[i];
        if c != 0 {
            for (k, wk) in w.iter_mut().enumerate() {
                *wk -= c * self.cartan_matrix[k][i];
            }
        }
    }

    pub fn reflect_rational(&self, i: usize, w: &mut [Rational]) {
        let c = w[i].clone();
        if !c.is_zero() {
            for (k, wk) in w.iter_mut().enumerate() {
                *wk -= &c * q(self.cartan_matrix[k][i]);
            }
        }
    }

    pub fn is_dominant(w: &[i64]) -> bool {
        w.iter().all(|&x| x >= 0)
    }

    /// Dominant representative of the Weyl orbit of `w`, and the parity of the
    /// number of reflections used.
    pub fn to_dominant(&self, w: &[i64]) -> (Vec<i64>, bool) {
        let mut v = w.to_vec();
        let mut odd = false;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect(i, &mut v);
            odd = !odd;
        }
        (v, odd)
    }

    /// All weights in the Weyl orbit of a dominant integral weight.
    pub fn orbit(&self, dominant: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut out = vec![dominant.to_vec()];
        seen.insert(dominant.to_vec());
        let mut idx = 0;
        while idx < out.len() {
            let w = out[idx].clone();
            idx += 1;
            for i in 0..self.rank {
                if w[i] > 0 {
                    let mut v = w.clone();
                    self.reflect(i, &mut v);
                    if seen.insert(v.clone()) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    pub fn orbit_size(&self, dominant: &[i64]) -> usize {
        self.orbit(dominant).len()
    }

    /// Positive roots in weight coordinates.
    pub fn positive_roots_as_weights(&self) -> Vec<Vec<i64>> {
        self.positive_roots.iter().map(|r| self.root_to_weight(r)).collect()
    }

    /// Weyl dimension formula `∏_{α>0} (λ+ρ, α)/(ρ, α)` for an integral
    /// dominant λ.
    pub fn weyl_dimension(&self, hw: &[i64]) -> BigInt {
        let lr: Vec<Rational> = hw.iter().map(|&x| q(x + 1)).collect();
        let rho: Vec<Rational> = vec![Rational::one(); self.rank];
        let mut num = Rational::one();
        for alpha in &self.positive_roots {
            num *= self.form_weight_root(&lr, alpha) / self.form_weight_root(&rho, alpha);
        }
        assert!(num.is_integer());
        num.to_integer()
    }
}

/// A weight with exact rational fundamental-weight coordinates.
#[derive(Clone)]
pub struct Weight {
    pub algebra: Algebra,
    pub coords: Vec<Rational>,
}

impl Weight {
    pub fn new(algebra: &Algebra, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != algebra.rank {
            return Err(Error::RankMismatch { got: coords.len(), rank: algebra.rank });
        }
        Ok(Weight { algebra: algebra.clone(), coords })
    }

    pub fn from_ints(algebra: &Algebra, coords: &[i64]) -> Self {
        assert_eq!(coords.len(), algebra.rank);
        Weight { algebra: algebra.clone(), coords: coords.iter().map(|&x| q(x)).collect() }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        Self::from_ints(algebra, &vec![0; algebra.rank])
    }

    pub fn from_root(root: &RootVector) -> Self {
        Self::from_ints(&root.algebra, &root.algebra.root_to_weight(&root.coords))
    }

    /// Integer coordinates, if integral.
    pub fn as_integral(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Integer coordinates, if dominant integral.
    pub fn as_dominant_integral(&self) -> Result<Vec<i64>> {
        match self.as_integral() {
            Some(v) if v.iter().all(|&x| x >= 0) => Ok(v),
            _ => Err(Error::NotDominantIntegral(self.to_string())),
        }
    }

    fn check_same(&self, other: &Weight) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(self.algebra.name(), other.algebra.name()))
        }
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Weight { algebra: self.algebra.clone(), coords })
    }

    pub fn add_root(&self, root: &RootVector) -> Weight {
        let rw = self.algebra.root_to_weight(&root.coords);
        let coords = self.coords.iter().zip(&rw).map(|(a, &b)| a + q(b)).collect();
        Weight { algebra: self.algebra.clone(), coords }
    }

    pub fn scale(&self, s: &Rational) -> Weight {
        Weight { algebra: self.algebra.clone(), coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn norm_sq(&self) -> Rational {
        self.algebra.form_weight_weight(&self.coords, &self.coords)
    }

    pub fn reflect(&self, i: usize) -> Weight {
        let mut c = self.coords.clone();
        self.algebra.reflect_rational(i, &mut c);
        Weight { algebra: self.algebra.clone(), coords: c }
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coords == other.coords
    }
}

impl Eq for Weight {}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({}, {})", self.algebra.name(), self)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// An element of the root lattice Q in simple-root coordinates.
#[derive(Clone)]
pub struct RootVector {
    pub algebra: Algebra,
    pub coords: Vec<i64>,
}

impl RootVector {
    pub fn new(algebra: &Algebra, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != algebra.rank {
            return Err(Error::RankMismatch { got: coords.len(), rank: algebra.rank });
        }
        Ok(RootVector { algebra: algebra.clone(), coords })
    }

    pub fn norm_sq(&self) -> Rational {
        self.algebra.root_norm_sq(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl PartialEq for RootVector {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coords == other.coords
    }
}

impl Eq for RootVector {}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootVector({:?})", self.coords)
    }
}

/// Exact symmetric bilinear form on weights.
pub fn inner_product(x: &Weight, y: &Weight) -> Result<Rational> {
    x.check_same(y)?;
    Ok(x.algebra.form_weight_weight(&x.coords, &y.coords))
}

/// Largest integer `m` with `m ≤ x`.
pub(crate) fn floor_rational(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("coordinate bound fits in i64")
}

/// Every `μ ∈ Q` with `|μ|² + 2(shift, μ) ≤ bound`, sorted lexicographically.
///
/// The set equals `{μ : |μ + shift|² ≤ bound + |shift|²}`; each coordinate of
/// `μ + shift` (in root coordinates) is bounded by `sqrt(R·(G⁻¹)_kk)` where
/// `G` is the root Gram matrix, and the resulting integer box is scanned.
pub fn enumerate_root_lattice_ball(algebra: &Algebra, bound: &Rational, shift: &Weight) -> Vec<RootVector> {
    let n = algebra.rank;
    let radius_sq = bound + shift.norm_sq();
    if radius_sq.is_negative() {
        return Vec::new();
    }
    let s = algebra.weight_to_root(&shift.coords);
    let ginv = algebra.form_gram.inverse().expect("positive definite");
    let mut ranges = Vec::with_capacity(n);
    for k in 0..n {
        let t = &radius_sq * ginv.get(k, k);
        // integers x with (x + s_k)^2 <= t
        let center = -s[k].clone();
        let mut lo = floor_rational(&center);
        let mut hi = lo + 1;
        let fits = |x: i64| {
            let d = q(x) - &center;
            &d * &d <= t
        };
        while fits(lo) {
            lo -= 1;
        }
        while fits(hi) {
            hi += 1;
        }
        ranges.push((lo + 1, hi - 1));
    }
    let mut out = Vec::new();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    if ranges.iter().any(|&(a, b)| a > b) {
        return out;
    }
    loop {
        let value = algebra.root_norm_sq(&cur) + q(2) * algebra.form_weight_root(&shift.coords, &cur);
        if value <= *bound {
            out.push(RootVector { algebra: algebra.clone(), coords: cur.clone() });
        }
        // odometer
        let mut k = n;
        loop {
            if k == 0 {
                out.sort_by(|a, b| a.coords.cmp(&b.coords));
                return out;
            }
            k -= 1;
            if cur[k] < ranges[k].1 {
                cur[k] += 1;
                for (j, c) in cur.iter_mut().enumerate().skip(k + 1) {
                    *c = ranges[j].0;
                }
                break;
            }
        }
    }
}

/// Convenience lookup of built algebras, keyed by type.
#[derive(Default)]
pub struct AlgebraCache {
    cache: HashMap<(Series, usize), Algebra>,
}

impl AlgebraCache {
    pub fn get(&mut self, series: Series, rank: usize) -> Result<Algebra> {
        if let Some(a) = self.cache.get(&(series, rank)) {
            return Ok(a.clone());
        }
        let a = build_algebra(series, rank)?;
        self.cache.insert((series, rank), a.clone());
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use proptest::prelude::*;

    fn all_small_types() -> Vec<(Series, usize)> {
        vec![
            (Series::A, 1),
            (Series::A, 2),
            (Series::A, 3),
            (Series::B, 2),
            (Series::B, 3),
            (Series::C, 3),
            (Series::G, 2),
        ]
    }

    fn all_types() -> Vec<(Series, usize)> {
        let mut v = all_small_types();
        v.extend([
            (Series::A, 5),
            (Series::B, 4),
            (Series::C, 4),
            (Series::D, 4),
            (Series::D, 5),
            (Series::E, 6),
            (Series::E, 7),
            (Series::E, 8),
            (Series::F, 4),
        ]);
        v
    }

    #[test]
    fn sl2_data() {
        let a = build_algebra(Series::A, 1).unwrap();
        assert_eq!(a.rank, 1);
        assert_eq!(a.positive_roots, vec![vec![1]]);
        assert_eq!(a.root_norm_sq(&[1]), q(2));
        assert_eq!(a.dual_coxeter, 2);
        let rho = a.rho();
        assert_eq!(inner_product(&rho, &rho).unwrap(), qf(1, 2));
        let alpha = Weight::from_ints(&a, &[2]);
        assert_eq!(inner_product(&alpha, &alpha).unwrap(), q(2));
        let zero = Weight::zero(&a);
        assert_eq!(inner_product(&zero, &alpha).unwrap(), q(0));
    }

    #[test]
    fn sl3_data() {
        let a = build_algebra(Series::A, 2).unwrap();
        assert_eq!(a.positive_roots.len(), 3);
        assert_eq!(a.dual_coxeter, 3);
        assert_eq!(a.rho_norm_sq(), q(2));
    }

    #[test]
    fn g2_root_lengths() {
        let a = build_algebra(Series::G, 2).unwrap();
        let lens: HashSet<Rational> = a.positive_roots.iter().map(|r| a.root_norm_sq(r)).collect();
        assert_eq!(lens, HashSet::from([q(2), qf(2, 3)]));
        assert_eq!(a.positive_roots.len(), 6);
        assert_eq!(a.dual_coxeter, 4);
    }

    #[test]
    fn root_counts_and_dual_coxeter() {
        let expect = [
            ((Series::A, 5), 15, 6),
            ((Series::B, 4), 16, 7),
            ((Series::C, 4), 16, 5),
            ((Series::D, 5), 20, 8),
            ((Series::E, 6), 36, 12),
            ((Series::E, 7), 63, 18),
            ((Series::E, 8), 120, 30),
            ((Series::F, 4), 24, 9),
        ];
        for ((s, r), npos, h) in expect {
            let a = build_algebra(s, r).unwrap();
            assert_eq!(a.positive_roots.len(), npos, "{s}{r}");
            assert_eq!(a.dual_coxeter, h, "{s}{r}");
        }
    }

    #[test]
    fn dual_coxeter_matches_highest_root_pairing() {
        // h∨ = 1 + (θ, ρ) when (θ, θ) = 2
        for (s, r) in all_types() {
            let a = build_algebra(s, r).unwrap();
            let theta = a.positive_roots.last().unwrap();
            assert_eq!(a.root_norm_sq(theta), q(2));
            let rho: Vec<Rational> = vec![Rational::one(); a.rank];
            let via_rho = a.form_weight_root(&rho, theta) + Rational::one();
            assert_eq!(via_rho, q(a.dual_coxeter as i64), "{s}{r}");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(build_algebra(Series::E, 5).is_err());
        assert!(build_algebra(Series::G, 3).is_err());
        assert!(build_algebra(Series::A, 0).is_err());
        assert!(build_algebra(Series::D, 3).is_err());
        assert!("Z".parse::<Series>().is_err());
    }

    #[test]
    fn algebra_invariants() {
        for (s, r) in all_types() {
            let a = build_algebra(s, r).unwrap();
            let max_len = a.positive_roots.iter().map(|x| a.root_norm_sq(x)).max().unwrap();
            assert_eq!(max_len, q(2), "{s}{r}");
            for i in 0..r {
                for j in 0..r {
                    let ai = a.form_gram.get(i, i).clone();
                    let lhs = q(a.cartan_matrix[i][j]);
                    assert_eq!(lhs, q(2) * a.form_gram.get(i, j) / ai);
                    assert_eq!(a.form_gram.get(i, j), a.form_gram.get(j, i));
                }
                // ρ pairs to 1 with every simple coroot
                let rho: Vec<Rational> = vec![Rational::one(); r];
                let mut e = vec![0; r];
                e[i] = 1;
                let pairing = q(2) * a.form_weight_root(&rho, &e) / a.root_norm_sq(&e);
                assert_eq!(pairing, Rational::one());
            }
            // positive definite via leading principal minors
            for m in a.form_gram.leading_principal_minors() {
                assert!(m.is_positive(), "{s}{r}");
            }
            // ρ is half the sum of positive roots
            let mut sum = vec![0i64; r];
            for root in &a.positive_roots {
                for (k, v) in a.root_to_weight(root).into_iter().enumerate() {
                    sum[k] += v;
                }
            }
            assert!(sum.iter().all(|&x| x == 2), "{s}{r}");
        }
    }

    #[test]
    fn ball_examples_sl2() {
        let a = build_algebra(Series::A, 1).unwrap();
        let zero = Weight::zero(&a);
        let b0: Vec<Vec<i64>> = enumerate_root_lattice_ball(&a, &q(0), &zero).into_iter().map(|r| r.coords).collect();
        assert_eq!(b0, vec![vec![0]]);
        let b2: Vec<Vec<i64>> = enumerate_root_lattice_ball(&a, &q(2), &zero).into_iter().map(|r| r.coords).collect();
        assert_eq!(b2, vec![vec![-1], vec![0], vec![1]]);
        let rho = a.rho();
        let br: Vec<Vec<i64>> = enumerate_root_lattice_ball(&a, &q(0), &rho).into_iter().map(|r| r.coords).collect();
        assert_eq!(br, vec![vec![-1], vec![0]]);
    }

    /// Naive scan of a fixed large box; results must stay strictly inside it.
    fn naive_ball(a: &Algebra, bound: &Rational, shift: &Weight, half_width: i64) -> Vec<Vec<i64>> {
        let n = a.rank;
        let mut out = Vec::new();
        let total = (2 * half_width + 1).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut mu = vec![0i64; n];
            for m in mu.iter_mut() {
                *m = c % (2 * half_width + 1) - half_width;
                c /= 2 * half_width + 1;
            }
            let v = a.root_norm_sq(&mu) + q(2) * a.form_weight_root(&shift.coords, &mu);
            if v <= *bound {
                assert!(mu.iter().all(|&x| x.abs() < half_width), "naive box too small {:?} {} {:?}", a.name(), bound, mu);
                out.push(mu);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn ball_matches_naive_scan() {
        for (s, r) in all_small_types() {
            let a = build_algebra(s, r).unwrap();
            let shifts: Vec<Vec<Rational>> = vec![
                vec![q(0); r],
                vec![q(1); r],
                (0..r).map(|i| qf(i as i64 * 3 - 2, 2)).collect(),
            ];
            for shift in shifts {
                let w = Weight::new(&a, shift).unwrap();
                for bound in [q(0), qf(3, 2), q(4), q(10)] {
                    let fast: Vec<Vec<i64>> =
                        enumerate_root_lattice_ball(&a, &bound, &w).into_iter().map(|x| x.coords).collect();
                    let half = if r == 3 { 16 } else { 30 };
                    assert_eq!(fast, naive_ball(&a, &bound, &w, half), "{s}{r} bound {bound}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn weyl_invariance_of_norm(idx in 0usize..7, coords in proptest::collection::vec((-20i64..20, 1i64..7), 3)) {
            let (s, r) = all_small_types()[idx];
            let a = build_algebra(s, r).unwrap();
            let c: Vec<Rational> = coords.iter().take(r).map(|&(n, d)| qf(n, d)).collect();
            let lambda = Weight::new(&a, c).unwrap();
            for i in 0..r {
                prop_assert_eq!(lambda.reflect(i).norm_sq(), lambda.norm_sq());
            }
        }
    }
}
