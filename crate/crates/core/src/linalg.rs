//! Dense complex linear algebra helpers over nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex64;
pub type CMat = DMatrix<C>;
pub type CVec = DVector<C>;

pub const ONE: C = C::new(1.0, 0.0);
pub const ZERO: C = C::new(0.0, 0.0);

pub fn zeros(r: usize, c: usize) -> CMat {
    CMat::zeros(r, c)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// The matrix unit `E_{ij}`.
pub fn unit(n: usize, i: usize, j: usize) -> CMat {
    let mut m = zeros(n, n);
    m[(i, j)] = ONE;
    m
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn direct_sum(blocks: &[CMat]) -> CMat {
    let r: usize = blocks.iter().map(|b| b.nrows()).sum();
    let c: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut m = zeros(r, c);
    let (mut i, mut j) = (0, 0);
    for b in blocks {
        m.view_mut((i, j), (b.nrows(), b.ncols())).copy_from(b);
        i += b.nrows();
        j += b.ncols();
    }
    m
}

/// Largest singular value.
pub fn op_norm(a: &CMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().svd(false, false).singular_values.max()
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn flatten(m: &CMat) -> CVec {
    CVec::from_iterator(m.len(), m.iter().copied())
}

/// An orthonormal (Frobenius) basis of a space of equally sized matrices.
#[derive(Clone, Debug)]
pub struct Span {
    shape: (usize, usize),
    basis: Vec<CVec>,
}

impl Span {
    pub fn new(rows: usize, cols: usize) -> Self {
        Span { shape: (rows, cols), basis: Vec::new() }
    }

    pub fn of(ms: &[CMat]) -> Self {
        let (r, c) = ms.first().map(|m| m.shape()).unwrap_or((0, 0));
        let mut s = Span::new(r, c);
        for m in ms {
            s.insert(m);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn residual(&self, v: &CVec) -> CVec {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let c = b.dotc(&r);
                r -= b * c;
            }
        }
        r
    }

    /// Distance from `m` to the span.
    pub fn distance(&self, m: &CMat) -> f64 {
        self.residual(&flatten(m)).norm()
    }

    pub fn contains(&self, m: &CMat) -> bool {
        self.distance(m) <= 1e-8 * m.norm().max(1.0)
    }

    /// Adds `m`; returns whether the dimension grew.
    pub fn insert(&mut self, m: &CMat) -> bool {
        let v = flatten(m);
        let r = self.residual(&v);
        let n = r.norm();
        if n <= 1e-8 * v.norm().max(1.0) {
            return false;
        }
        self.basis.push(r / C::new(n, 0.0));
        true
    }

    pub fn matrices(&self) -> Vec<CMat> {
        self.basis.iter().map(|v| CMat::from_iterator(self.shape.0, self.shape.1, v.iter().copied())).collect()
    }
}

/// The (non-unital) algebra generated by `gens`, also closed under adjoints
/// when `star` is set.
pub fn algebra_closure(gens: &[CMat], star: bool) -> Span {
    let mut all: Vec<CMat> = gens.to_vec();
    if star {
        all.extend(gens.iter().map(|g| g.adjoint()));
    }
    let (r, c) = all.first().map(|m| m.shape()).unwrap_or((0, 0));
    let mut span = Span::new(r, c);
    let mut frontier = Vec::new();
    for g in &all {
        if span.insert(g) {
            frontier.push(g.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for g in &all {
                for m in [g * b, b * g] {
                    if span.insert(&m) {
                        next.push(m);
                    }
                }
            }
        }
        frontier = next;
    }
    span
}

/// Orthonormal basis of the null space of `m` (as column vectors).
pub fn null_space(m: &CMat, tol: f64) -> Vec<CVec> {
    let h = m.adjoint() * m;
    let eig = h.symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&i| eig.eigenvalues[i].abs() <= tol).collect();
    idx.sort_unstable();
    idx.into_iter().map(|i| eig.eigenvectors.column(i).into_owned()).collect()
}

/// Ranks of the source family, the target family and the paired family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Correspondence {
    pub rank_src: usize,
    pub rank_dst: usize,
    pub rank_joint: usize,
}

impl Correspondence {
    /// `src_i ↦ dst_i` extends to a well-defined linear map.
    pub fn well_defined(&self) -> bool {
        self.rank_joint == self.rank_src
    }

    pub fn injective(&self) -> bool {
        self.well_defined() && self.rank_joint == self.rank_dst
    }
}

fn paired(a: &CMat, b: &CMat) -> CMat {
    direct_sum(&[a.clone(), b.clone()])
}

pub fn correspondence(src: &[CMat], dst: &[CMat]) -> Correspondence {
    let joint: Vec<CMat> = src.iter().zip(dst).map(|(a, b)| paired(a, b)).collect();
    Correspondence { rank_src: Span::of(src).dim(), rank_dst: Span::of(dst).dim(), rank_joint: Span::of(&joint).dim() }
}

/// Compares the algebras generated by `src`, by `dst` and by the pairs
/// `diag(src_i, dst_i)`; equal dimensions mean `src_i ↦ dst_i` extends to an
/// algebra isomorphism.
pub fn paired_closure(src: &[CMat], dst: &[CMat], star: bool) -> Correspondence {
    let joint: Vec<CMat> = src.iter().zip(dst).map(|(a, b)| paired(a, b)).collect();
    Correspondence {
        rank_src: algebra_closure(src, star).dim(),
        rank_dst: algebra_closure(dst, star).dim(),
        rank_joint: algebra_closure(&joint, star).dim(),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_c(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_mat(rng: &mut ChaCha8Rng, r: usize, c: usize) -> CMat {
    CMat::from_fn(r, c, |_, _| random_c(rng))
}

/// A sparse square operator stored as triplets.
#[derive(Clone, Debug, Default)]
pub struct SparseOp {
    pub n: usize,
    pub entries: Vec<(usize, usize, C)>,
}

impl SparseOp {
    pub fn apply(&self, x: &CVec) -> CVec {
        let mut y = CVec::zeros(self.n);
        for &(i, j, a) in &self.entries {
            y[i] += a * x[j];
        }
        y
    }

    pub fn apply_adjoint(&self, x: &CVec) -> CVec {
        let mut y = CVec::zeros(self.n);
        for &(i, j, a) in &self.entries {
            y[j] += a.conj() * x[i];
        }
        y
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = zeros(self.n, self.n);
        for &(i, j, a) in &self.entries {
            m[(i, j)] += a;
        }
        m
    }
}

/// Operator norm by Lanczos on `T*T` with full reorthogonalization.
pub fn lanczos_norm(op: &SparseOp, iters: usize, seed: u64) -> f64 {
    let n = op.n;
    if n == 0 {
        return 0.0;
    }
    let mut r = rng(seed);
    let mut q = CVec::from_fn(n, |_, _| random_c(&mut r));
    q /= C::new(q.norm(), 0.0);
    let mut qs: Vec<CVec> = vec![q];
    let mut alpha = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    for k in 0..iters.min(n) {
        let mut w = op.apply_adjoint(&op.apply(&qs[k]));
        let a = qs[k].dotc(&w).re;
        alpha.push(a);
        for _ in 0..2 {
            for v in &qs {
                let c = v.dotc(&w);
                w -= v * c;
            }
        }
        let b = w.norm();
        if b < 1e-12 {
            break;
        }
        beta.push(b);
        qs.push(w / C::new(b, 0.0));
    }
    let m = alpha.len();
    let t = DMatrix::<f64>::from_fn(m, m, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j || j + 1 == i {
            beta[i.min(j)]
        } else {
            0.0
        }
    });
    let top = t.symmetric_eigen().eigenvalues.max();
    top.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_matrix_units() {
        let s = algebra_closure(&[unit(2, 0, 1)], true);
        assert_eq!(s.dim(), 4);
        let s = algebra_closure(&[unit(2, 0, 1), unit(2, 0, 0), unit(2, 1, 1)], false);
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn norms_and_null_spaces() {
        let m = CMat::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ONE]);
        assert!((op_norm(&m) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(null_space(&m, 1e-10).len(), 1);
        let op = SparseOp { n: 2, entries: vec![(1, 0, ONE), (1, 1, ONE)] };
        assert!((lanczos_norm(&op, 10, 1) - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn correspondence_ranks() {
        let a = [unit(2, 0, 0), unit(2, 1, 1), eye(2)];
        let b = [unit(1, 0, 0), unit(1, 0, 0), unit(1, 0, 0) * C::new(2.0, 0.0)];
        let c = correspondence(&a, &b);
        assert!(c.well_defined());
        assert!(!c.injective());
    }
}
