//! C*-envelopes of finite-dimensional operator algebras by Shilov-ideal
//! search over the block ideals of a finite-dimensional C*-cover.

use serde::Serialize;

use crate::cstar::{complete_isometry_check, Effort, IsometryVerdict};
use crate::error::{Error, Result};
use crate::linalg::{algebra_closure, kron, null_space, paired_closure, random_c, rng, unit, zeros, CMat, Correspondence, Span, C};

/// One simple summand `M_size` of a finite-dimensional C*-algebra.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub size: usize,
    pub multiplicity: usize,
    #[serde(skip)]
    pub projection: CMat,
    /// Matrix units `e_{i1}`.
    #[serde(skip)]
    pub units: Vec<CMat>,
}

impl Block {
    /// Coordinates `b_{ij}` with `e_{1i} b e_{j1} = b_{ij} e_{11}`.
    pub fn coords(&self, b: &CMat) -> CMat {
        let e11 = &self.units[0];
        let tr = e11.trace();
        CMat::from_fn(self.size, self.size, |i, j| (self.units[i].adjoint() * b * &self.units[j]).trace() / tr)
    }
}

/// A finite-dimensional C*-algebra of matrices with its block structure.
#[derive(Clone, Debug, Serialize)]
pub struct FinDimCStar {
    pub blocks: Vec<Block>,
    pub dim: usize,
    #[serde(skip)]
    basis: Vec<CMat>,
}

impl FinDimCStar {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    /// The central projection onto the blocks outside `mask`.
    pub fn complement(&self, mask: &[usize]) -> CMat {
        let n = self.basis.first().map(|b| b.nrows()).unwrap_or(0);
        self.blocks.iter().enumerate().filter(|(i, _)| !mask.contains(i)).fold(zeros(n, n), |acc, (_, b)| acc + &b.projection)
    }

    /// `b ↦ P b P` with `P` the complement of `mask`; isometric to the
    /// quotient by the ideal of `mask`.
    pub fn quotient(&self, mask: &[usize], b: &CMat) -> CMat {
        let p = self.complement(mask);
        &p * b * &p
    }

    /// The ideal spanned by the given blocks.
    pub fn ideal_span(&self, mask: &[usize]) -> Span {
        let mut s = Span::new(0, 0);
        let mut first = true;
        for &i in mask {
            let p = &self.blocks[i].projection;
            for b in &self.basis {
                let x = p * b;
                if first {
                    s = Span::new(x.nrows(), x.ncols());
                    first = false;
                }
                s.insert(&x);
            }
        }
        s
    }
}

/// Orthonormal columns spanning the union of ranges of `ms`.
fn range_basis(ms: &[CMat]) -> CMat {
    let n = ms.first().map(|m| m.nrows()).unwrap_or(0);
    let mut cols: Vec<nalgebra::DVector<C>> = Vec::new();
    for m in ms {
        for j in 0..m.ncols() {
            let mut v = m.column(j).into_owned();
            for _ in 0..2 {
                for c in &cols {
                    let d = c.dotc(&v);
                    v -= c * d;
                }
            }
            let nv = v.norm();
            if nv > 1e-9 {
                cols.push(v / C::new(nv, 0.0));
            }
        }
    }
    if cols.is_empty() {
        return zeros(n, 0);
    }
    CMat::from_columns(&cols)
}

/// Eigen-decomposition of a Hermitian matrix into clustered spectral
/// projections.
fn spectral_projections(h: &CMat, tol: f64) -> Vec<CMat> {
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let mut out: Vec<CMat> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for i in order {
        let v = eig.eigenvectors.column(i).into_owned();
        let pr = &v * v.adjoint();
        if eig.eigenvalues[i] - last > tol || out.is_empty() {
            out.push(pr);
        } else {
            *out.last_mut().unwrap() += pr;
        }
        last = eig.eigenvalues[i];
    }
    out
}

/// Block decomposition of the C*-algebra generated by `gens`.
pub fn block_decompose(gens: &[CMat], seed: u64) -> Result<FinDimCStar> {
    let span = algebra_closure(gens, true);
    let basis = span.matrices();
    let m = basis.len();
    if m == 0 {
        return Ok(FinDimCStar { blocks: Vec::new(), dim: 0, basis });
    }
    let n = basis[0].nrows();
    let mut constraints = zeros(m * n * n, m);
    for i in 0..m {
        for (j, b) in basis.iter().enumerate() {
            let c = &basis[i] * b - b * &basis[i];
            for (k, z) in c.iter().enumerate() {
                constraints[(j * n * n + k, i)] = *z;
            }
        }
    }
    let center: Vec<CMat> = null_space(&constraints, 1e-9)
        .iter()
        .map(|x| basis.iter().zip(x.iter()).fold(zeros(n, n), |acc, (b, c)| acc + b * *c))
        .collect();
    let support = range_basis(&basis);
    let mut r = rng(seed);
    for _ in 0..20 {
        let z = center.iter().fold(zeros(n, n), |acc, c| acc + c * C::new(random_c(&mut r).re, 0.0));
        let h = (&z + z.adjoint()) * C::new(0.5, 0.0);
        let compressed = support.adjoint() * &h * &support;
        let projections: Vec<CMat> =
            spectral_projections(&compressed, 1e-7).into_iter().map(|q| &support * q * support.adjoint()).collect();
        if projections.len() != center.len() {
            continue;
        }
        let mut blocks = Vec::new();
        for pr in projections {
            let local: Vec<CMat> = basis.iter().map(|b| &pr * b).collect();
            let d = Span::of(&local).dim();
            let size = (d as f64).sqrt().round() as usize;
            if size * size != d {
                return Err(Error::PreconditionViolated(format!("block of dimension {d} is not a full matrix algebra")));
            }
            let units = matrix_units(&local, &pr, size, &mut r)?;
            let rank = pr.trace().re.round() as usize;
            blocks.push(Block { size, multiplicity: rank / size.max(1), projection: pr, units });
        }
        blocks.sort_by_key(|b| b.size);
        return Ok(FinDimCStar { blocks, dim: m, basis });
    }
    Err(Error::PreconditionViolated("central projections did not separate".into()))
}

fn matrix_units(local: &[CMat], pr: &CMat, size: usize, r: &mut rand_chacha::ChaCha8Rng) -> Result<Vec<CMat>> {
    let n = pr.nrows();
    for _ in 0..20 {
        let a = local.iter().fold(zeros(n, n), |acc, b| acc + b * random_c(r));
        let h = (&a + a.adjoint()) * C::new(0.5, 0.0);
        let support = range_basis(std::slice::from_ref(pr));
        let compressed = support.adjoint() * &h * &support;
        let es: Vec<CMat> =
            spectral_projections(&compressed, 1e-7).into_iter().map(|q| &support * q * support.adjoint()).collect();
        if es.len() != size {
            continue;
        }
        let b = local.iter().fold(zeros(n, n), |acc, x| acc + x * random_c(r));
        let mut units = vec![es[0].clone()];
        for e in es.iter().skip(1) {
            let x = e * &b * &es[0];
            let c = (x.adjoint() * &x).trace().re / es[0].trace().re;
            if c < 1e-10 {
                break;
            }
            units.push(x / C::new(c.sqrt(), 0.0));
        }
        if units.len() == size {
            return Ok(units);
        }
    }
    Err(Error::PreconditionViolated("matrix units not found".into()))
}

/// Whether the ideal `mask` is a boundary ideal for `a` (the quotient is
/// completely isometric on `a`).
pub fn is_boundary_ideal(b: &FinDimCStar, mask: &[usize], a: &[CMat], labels: &[String], effort: &Effort) -> Result<IsometryVerdict> {
    let images: Vec<CMat> = a.iter().map(|x| b.quotient(mask, x)).collect();
    complete_isometry_check(a, &images, labels, effort)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShilovResult {
    pub mask: Vec<usize>,
    pub cover_blocks: Vec<usize>,
    pub envelope_blocks: Vec<usize>,
    pub certified_masks: Vec<Vec<usize>>,
    pub rejected_masks: Vec<(Vec<usize>, String)>,
    pub effort: Effort,
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// The largest boundary ideal of `b` for `a`: masks are tried by descending
/// size, supersets of rejected masks are pruned, and the join of all
/// certified masks is certified again.
pub fn shilov_ideal(b: &FinDimCStar, a: &[CMat], labels: &[String], effort: &Effort) -> Result<ShilovResult> {
    if algebra_closure(a, true).dim() != b.dim {
        return Err(Error::NotACover);
    }
    let nb = b.blocks.len();
    let mut masks: Vec<Vec<usize>> = (0u32..(1 << nb)).map(|m| (0..nb).filter(|i| m & (1 << i) != 0).collect()).collect();
    masks.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    let mut certified: Vec<Vec<usize>> = Vec::new();
    let mut rejected: Vec<(Vec<usize>, String)> = Vec::new();
    for mask in masks {
        if rejected.iter().any(|(r, _)| subset(r, &mask)) || certified.iter().any(|c| subset(&mask, c)) {
            continue;
        }
        match is_boundary_ideal(b, &mask, a, labels, effort)? {
            IsometryVerdict::Certified { .. } => certified.push(mask),
            IsometryVerdict::Rejected { witness, .. } => rejected.push((mask, witness)),
        }
    }
    let mut join: Vec<usize> = certified.iter().flatten().copied().collect();
    join.sort_unstable();
    join.dedup();
    if !is_boundary_ideal(b, &join, a, labels, effort)?.certified() {
        return Err(Error::PreconditionViolated(format!("join {join:?} of boundary ideals failed certification")));
    }
    let envelope_blocks = (0..nb).filter(|i| !join.contains(i)).map(|i| b.blocks[i].size).collect();
    Ok(ShilovResult { mask: join, cover_blocks: b.sizes(), envelope_blocks, certified_masks: certified, rejected_masks: rejected, effort: effort.clone() })
}

/// Envelope generators: `a` pushed into the quotient by the Shilov ideal.
pub fn envelope_image(b: &FinDimCStar, shilov: &ShilovResult, a: &[CMat]) -> Vec<CMat> {
    a.iter().map(|x| b.quotient(&shilov.mask, x)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PiEnvReport {
    pub map: Correspondence,
    pub kernel_dim: usize,
    pub diagonal: Correspondence,
}

impl PiEnvReport {
    pub fn isomorphism(&self) -> bool {
        self.map.injective()
    }

    pub fn diagonal_injective(&self) -> bool {
        self.diagonal.injective()
    }
}

/// Compares the *-algebras generated by `boundary_gens` and `envelope_gens`
/// (paired by index) and the diagonal subalgebras.
pub fn pi_env_realize(boundary_gens: &[CMat], envelope_gens: &[CMat], boundary_diag: &[CMat], envelope_diag: &[CMat]) -> PiEnvReport {
    let map = paired_closure(boundary_gens, envelope_gens, true);
    let diagonal = paired_closure(boundary_diag, envelope_diag, true);
    PiEnvReport { kernel_dim: map.rank_src.saturating_sub(map.rank_dst), map, diagonal }
}

#[derive(Clone, Debug, Serialize)]
pub struct DetectVerdict {
    pub detects: bool,
    pub witness_block: Option<usize>,
}

/// Every nonzero ideal contains a single block, so it suffices that `D`
/// meets each block ideal.
pub fn detects_ideals(b: &FinDimCStar, d: &[CMat]) -> DetectVerdict {
    let dspan = Span::of(d);
    for i in 0..b.blocks.len() {
        let ideal = b.ideal_span(&[i]).matrices();
        let mut sum = Span::of(&ideal);
        let before = sum.dim();
        for x in dspan.matrices() {
            sum.insert(&x);
        }
        let intersection = before + dspan.dim() - sum.dim();
        if intersection == 0 {
            return DetectVerdict { detects: false, witness_block: Some(i) };
        }
    }
    DetectVerdict { detects: true, witness_block: None }
}

/// `a ⊗ E_{jk}` for all matrix units of `M_m`.
pub fn stabilize(a: &[CMat], m: usize) -> Vec<CMat> {
    let mut out = Vec::new();
    for x in a {
        for j in 0..m {
            for k in 0..m {
                out.push(kron(x, &unit(m, j, k)));
            }
        }
    }
    out
}

/// The upper triangular `T_n ⊆ M_n`.
pub fn upper_triangular(n: usize) -> Vec<CMat> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push(unit(n, i, j));
        }
    }
    out
}

/// The diagonal `ℂ^n ⊆ M_n`.
pub fn diagonal(n: usize) -> Vec<CMat> {
    (0..n).map(|i| unit(n, i, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::LambdaRep;
    use crate::fixtures;
    use crate::linalg::eye;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("a{i}")).collect()
    }

    #[test]
    fn m2_is_one_block() {
        let b = block_decompose(&[unit(2, 0, 1), unit(2, 1, 0)], 0).unwrap();
        assert_eq!(b.sizes(), vec![2]);
        let x = CMat::from_fn(2, 2, |i, j| C::new((i * 2 + j) as f64, 0.0));
        let c = b.blocks[0].coords(&x);
        let back = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).fold(zeros(2, 2), |acc, (i, j)| {
            acc + &b.blocks[0].units[i] * b.blocks[0].units[j].adjoint() * c[(i, j)]
        });
        assert!((back - x).norm() < 1e-10);
    }

    #[test]
    fn triangular_envelope_is_m2() {
        let t2 = upper_triangular(2);
        let b = block_decompose(&t2, 0).unwrap();
        let r = shilov_ideal(&b, &t2, &labels(3), &Effort::default()).unwrap();
        assert!(r.mask.is_empty());
        assert_eq!(r.envelope_blocks, vec![2]);
    }

    #[test]
    fn diagonal_detection() {
        let b = block_decompose(&[unit(2, 0, 1), unit(2, 1, 0)], 0).unwrap();
        assert!(detects_ideals(&b, &diagonal(2)).detects);
        let cm = crate::linalg::direct_sum(&[eye(1), zeros(2, 2)]);
        let gens = vec![cm.clone(), crate::linalg::direct_sum(&[zeros(1, 1), unit(2, 0, 1)]), crate::linalg::direct_sum(&[zeros(1, 1), unit(2, 1, 0)])];
        let b = block_decompose(&gens, 0).unwrap();
        let v = detects_ideals(&b, &[cm]);
        assert!(!v.detects);
        assert_eq!(b.blocks[v.witness_block.unwrap()].size, 2);
    }

    #[test]
    fn edge_envelope() {
        let p = fixtures::edge();
        let lam = LambdaRep::new(&p, 4);
        let a: Vec<CMat> = ["v", "w", "e"].iter().map(|t| lam.lambda(&p, &p.morphism(t).unwrap())).collect();
        let b = block_decompose(&a, 0).unwrap();
        assert_eq!(b.dim, 5);
        assert_eq!(b.sizes(), vec![1, 2]);
        let r = shilov_ideal(&b, &a, &labels(3), &Effort::default()).unwrap();
        assert_eq!(r.mask, vec![0]);
        assert_eq!(r.envelope_blocks, vec![2]);
        let env = envelope_image(&b, &r, &a);
        let b2 = block_decompose(&env, 0).unwrap();
        let r2 = shilov_ideal(&b2, &env, &labels(3), &Effort::default()).unwrap();
        assert!(r2.mask.is_empty());
    }
}
