//! Matrix realizations: the left regular representation, groupoid regular
//! representations, the compressions `ϑ_χ`, the boundary quotient, matrix
//! norms and complete-isometry search.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::category::{Morphism, Presentation};
use crate::error::{Error, Result};
use crate::germ::{germ_key, GermGroupoid};
use crate::groupoid::FiniteGroupoid;
use crate::hull::{fix_set, FixSet, HullClosure, PiecewiseBijection};
use crate::ideals::{Character, Ideal, Spectrum};
use crate::linalg::{
    algebra_closure, correspondence, kron, max_abs_diff, op_norm, random_mat, rng, zeros, CMat, Correspondence, SparseOp, C, ONE, ZERO,
};

/// `λ` and `Λ` on `ℓ²` of a window of morphisms.
#[derive(Clone, Debug)]
pub struct LambdaRep {
    basis: Vec<Morphism>,
    index: HashMap<Morphism, usize>,
    exact: bool,
}

impl LambdaRep {
    /// The window is `ball(n)`; it is exact when it holds every morphism.
    pub fn new(p: &Presentation, n: usize) -> Self {
        let basis = p.ball(n);
        let exact = p.diameter().is_some_and(|d| n >= d);
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        LambdaRep { basis, index, exact }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn labels(&self, p: &Presentation) -> Vec<String> {
        self.basis.iter().map(|m| p.render(m)).collect()
    }

    /// `Λ_s e_x = e_{s(x)}`, dropping images outside the window.
    pub fn inverse_rep(&self, p: &Presentation, s: &PiecewiseBijection) -> CMat {
        let n = self.dim();
        let mut m = zeros(n, n);
        for (j, x) in self.basis.iter().enumerate() {
            if let Some(i) = s.apply(p, x).and_then(|y| self.index.get(&y).copied()) {
                m[(i, j)] = ONE;
            }
        }
        m
    }

    pub fn lambda(&self, p: &Presentation, c: &Morphism) -> CMat {
        self.inverse_rep(p, &PiecewiseBijection::from_morphism(c))
    }

    /// `Σ a_i Λ_{s_i}` as a sparse operator.
    pub fn sparse(&self, p: &Presentation, terms: &[(C, PiecewiseBijection)]) -> SparseOp {
        let mut entries = Vec::new();
        for (a, s) in terms {
            for (j, x) in self.basis.iter().enumerate() {
                if let Some(i) = s.apply(p, x).and_then(|y| self.index.get(&y).copied()) {
                    entries.push((i, j, *a));
                }
            }
        }
        SparseOp { n: self.dim(), entries }
    }
}

/// Functions on a finite groupoid as coefficient vectors.
pub fn indicator(g: &FiniteGroupoid, elems: &[usize]) -> Vec<C> {
    let mut f = vec![ZERO; g.len()];
    for &x in elems {
        f[x] = ONE;
    }
    f
}

pub fn convolve(g: &FiniteGroupoid, f: &[C], h: &[C]) -> Vec<C> {
    let mut out = vec![ZERO; g.len()];
    for a in 0..g.len() {
        if f[a] == ZERO {
            continue;
        }
        for b in 0..g.len() {
            if let Some(ab) = g.product(a, b) {
                out[ab] += f[a] * h[b];
            }
        }
    }
    out
}

pub fn adjoint_fn(g: &FiniteGroupoid, f: &[C]) -> Vec<C> {
    (0..g.len()).map(|x| f[g.inverse(x)].conj()).collect()
}

/// `E(f) = f|_{units}`.
pub fn expectation_units(g: &FiniteGroupoid, f: &[C]) -> Vec<C> {
    (0..g.len()).map(|x| if g.is_unit(x) { f[x] } else { ZERO }).collect()
}

/// The regular representation of `C*_r(G)` summed over chosen units.
#[derive(Clone, Debug, Serialize)]
pub struct GroupoidRep {
    /// `(unit, G_u)` for each block.
    pub blocks: Vec<(usize, Vec<usize>)>,
}

impl GroupoidRep {
    /// One unit per orbit; this representation is faithful.
    pub fn new(g: &FiniteGroupoid) -> Self {
        Self::on_units(g, &g.orbits().iter().map(|o| o[0]).collect::<Vec<_>>())
    }

    pub fn on_units(g: &FiniteGroupoid, units: &[usize]) -> Self {
        GroupoidRep { blocks: units.iter().map(|&u| (u, (0..g.len()).filter(|&x| g.source(x) == u).collect())).collect() }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.len()).sum()
    }

    /// `ρ(f) δ_h = Σ_k f(k) δ_{kh}` on each block.
    pub fn rep(&self, g: &FiniteGroupoid, f: &[C]) -> CMat {
        let n = self.dim();
        let mut m = zeros(n, n);
        let mut off = 0;
        for (_, basis) in &self.blocks {
            let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            for (j, &h) in basis.iter().enumerate() {
                for k in 0..g.len() {
                    if f[k] == ZERO {
                        continue;
                    }
                    if let Some(kh) = g.product(k, h) {
                        m[(off + pos[&kh], off + j)] += f[k];
                    }
                }
            }
            off += basis.len();
        }
        m
    }

    pub fn delta(&self, g: &FiniteGroupoid, x: usize) -> CMat {
        self.rep(g, &indicator(g, &[x]))
    }
}

/// The germs `[s, χ]` for all `χ` in the unit space with `χ(dom s) = 1`.
pub fn bisection(p: &Presentation, gg: &GermGroupoid, s: &PiecewiseBijection) -> Vec<usize> {
    if s.is_zero() {
        return Vec::new();
    }
    let dom = s.domain(p);
    gg.groupoid
        .units()
        .into_iter()
        .filter_map(|u| {
            let chi = &gg.germs[u].chi;
            if chi.value(p, &dom) {
                gg.find(p, s, chi)
            } else {
                None
            }
        })
        .collect()
}

/// `1_{[s, Ω(dom s)]}` as a function on the germ groupoid.
pub fn bisection_fn(p: &Presentation, gg: &GermGroupoid, s: &PiecewiseBijection) -> Vec<C> {
    indicator(&gg.groupoid, &bisection(p, gg, s))
}

/// Generators `1_{[c, Ω(𝔡(c)𝔠)]}` of the operator algebra inside a germ
/// groupoid representation, one per morphism.
pub fn operator_algebra_gens(p: &Presentation, gg: &GermGroupoid, rep: &GroupoidRep) -> Result<Vec<CMat>> {
    let all = p.all_morphisms().ok_or(Error::InfiniteCharacterSpace)?;
    Ok(all.iter().map(|c| rep.rep(&gg.groupoid, &bisection_fn(p, gg, &PiecewiseBijection::from_morphism(c)))).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct JackVerdict {
    pub elements: usize,
    pub correspondence: Correspondence,
    pub groupoid_dim: usize,
    pub toeplitz_dim: usize,
    pub multiplicative: bool,
    pub adjoint: bool,
    pub unital: bool,
}

impl JackVerdict {
    pub fn isomorphism(&self) -> bool {
        self.correspondence.injective()
            && self.correspondence.rank_src == self.groupoid_dim
            && self.correspondence.rank_dst == self.toeplitz_dim
            && self.multiplicative
            && self.adjoint
            && self.unital
    }
}

/// Matches `1_{[s, Ω(dom s)]} ↦ Λ_s` across the whole hull.
pub fn jack_check(p: &Presentation, h: &HullClosure, gg: &GermGroupoid, lam: &LambdaRep) -> Result<JackVerdict> {
    let g = &gg.groupoid;
    let rep = GroupoidRep::new(g);
    let elems: Vec<&PiecewiseBijection> = h.elements().iter().collect();
    let src: Vec<CMat> = elems.iter().map(|s| rep.rep(g, &bisection_fn(p, gg, s))).collect();
    let dst: Vec<CMat> = elems.iter().map(|s| lam.inverse_rep(p, s)).collect();
    let idx: HashMap<&PiecewiseBijection, usize> = elems.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let close = |a: &CMat, b: &CMat| max_abs_diff(a, b) < 1e-12;
    let mut multiplicative = true;
    let mut adjoint = true;
    for (i, s) in elems.iter().enumerate() {
        let si = idx[&s.inverse(p)];
        adjoint &= close(&src[i].adjoint(), &src[si]) && close(&dst[i].adjoint(), &dst[si]);
        for (j, t) in elems.iter().enumerate() {
            let k = idx[&s.compose(p, t)?];
            multiplicative &= close(&(&src[i] * &src[j]), &src[k]) && close(&(&dst[i] * &dst[j]), &dst[k]);
        }
    }
    let ids: Vec<PiecewiseBijection> = p.identities().iter().map(PiecewiseBijection::from_morphism).collect();
    let one_src: CMat = ids.iter().map(|s| rep.rep(g, &bisection_fn(p, gg, s))).fold(zeros(rep.dim(), rep.dim()), |a, b| a + b);
    let one_dst: CMat = ids.iter().map(|s| lam.inverse_rep(p, s)).fold(zeros(lam.dim(), lam.dim()), |a, b| a + b);
    let unital = close(&one_src, &CMat::identity(rep.dim(), rep.dim())) && close(&one_dst, &CMat::identity(lam.dim(), lam.dim()));
    let gens: Vec<CMat> = p.all_morphisms().unwrap_or_default().iter().map(|c| lam.lambda(p, c)).collect();
    Ok(JackVerdict {
        elements: elems.len(),
        correspondence: correspondence(&src, &dst),
        groupoid_dim: g.len(),
        toeplitz_dim: algebra_closure(&gens, true).dim(),
        multiplicative,
        adjoint,
        unital,
    })
}

/// `ϑ_χ` on the basis `[𝔠, χ]`, truncated to a window of morphisms.
#[derive(Clone, Debug)]
pub struct ThetaRep {
    pub chi: Character,
    basis: Vec<Morphism>,
    keys: HashMap<PiecewiseBijection, usize>,
    depth: usize,
}

impl ThetaRep {
    /// `window` is the ball radius for `d`; `depth` fixes germ keys of
    /// infinite filters.
    pub fn new(p: &Presentation, spectrum: Option<&Spectrum>, chi: &Character, window: usize, depth: usize) -> Result<Self> {
        if let Some(sp) = spectrum {
            if !sp.in_boundary(chi) {
                return Err(Error::NotBoundary);
            }
        }
        let mut basis = Vec::new();
        let mut keys = HashMap::new();
        for d in p.ball(window) {
            let s = PiecewiseBijection::from_morphism(&d);
            if !chi.value(p, &s.domain(p)) {
                continue;
            }
            let k = germ_key(p, &s, chi, depth)?;
            if let std::collections::hash_map::Entry::Vacant(e) = keys.entry(k) {
                e.insert(basis.len());
                basis.push(d);
            }
        }
        Ok(ThetaRep { chi: chi.clone(), basis, keys, depth })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    fn image(&self, p: &Presentation, s: &PiecewiseBijection, j: usize) -> Result<Option<usize>> {
        let t = s.compose(p, &PiecewiseBijection::from_morphism(&self.basis[j]))?;
        if t.is_zero() || !self.chi.value(p, &t.domain(p)) {
            return Ok(None);
        }
        match germ_key(p, &t, &self.chi, self.depth) {
            Ok(k) => Ok(self.keys.get(&k).copied()),
            Err(Error::NotInDomain) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// `ϑ_χ(1_{[s, Ω(dom s)]}) e_{[d,χ]} = e_{[s d, χ]}` when that germ lies in
    /// the basis.
    pub fn theta(&self, p: &Presentation, s: &PiecewiseBijection) -> Result<CMat> {
        let n = self.dim();
        let mut m = zeros(n, n);
        for j in 0..n {
            if let Some(i) = self.image(p, s, j)? {
                m[(i, j)] = ONE;
            }
        }
        Ok(m)
    }

    pub fn sparse(&self, p: &Presentation, terms: &[(C, PiecewiseBijection)]) -> Result<SparseOp> {
        let mut entries = Vec::new();
        for (a, s) in terms {
            for j in 0..self.dim() {
                if let Some(i) = self.image(p, s, j)? {
                    entries.push((i, j, *a));
                }
            }
        }
        Ok(SparseOp { n: self.dim(), entries })
    }

    /// Diagonal projection onto `{[d, χ] : d ∈ X}`.
    pub fn projection(&self, p: &Presentation, x: &Ideal) -> CMat {
        let n = self.dim();
        let mut m = zeros(n, n);
        for (i, d) in self.basis.iter().enumerate() {
            if x.contains(p, d) {
                m[(i, i)] = ONE;
            }
        }
        m
    }
}

/// Checks `P_χ ρ_χ(x) P_χ = ϑ_χ(x)` and invariance of `ℓ²([𝔠,χ])` for the
/// generators `x = 1_{[c, Ω(𝔡(c)𝔠)]}`.
pub fn compression_check(p: &Presentation, gg: &GermGroupoid, theta: &ThetaRep) -> Result<bool> {
    let g = &gg.groupoid;
    let unit = gg.unit_of(&theta.chi).ok_or(Error::NotBoundary)?;
    let rep = GroupoidRep::on_units(g, &[unit]);
    let fibre = &rep.blocks[0].1;
    let pos: Vec<usize> = theta
        .basis
        .iter()
        .map(|d| gg.find(p, &PiecewiseBijection::from_morphism(d), &theta.chi).and_then(|x| fibre.iter().position(|&y| y == x)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::PreconditionViolated("basis germ missing from the groupoid".into()))?;
    let inside: Vec<bool> = (0..fibre.len()).map(|i| pos.contains(&i)).collect();
    for c in p.all_morphisms().ok_or(Error::InfiniteCharacterSpace)? {
        let s = PiecewiseBijection::from_morphism(&c);
        let big = rep.rep(g, &bisection_fn(p, gg, &s));
        let small = theta.theta(p, &s)?;
        for (j, &pj) in pos.iter().enumerate() {
            for (row, &ins) in inside.iter().enumerate() {
                if !ins && big[(row, pj)] != ZERO {
                    return Ok(false);
                }
            }
            for (i, &pi) in pos.iter().enumerate() {
                if big[(pi, pj)] != small[(i, j)] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Inclusion–exclusion for a family of ideals: `Σ_{∅≠A⊆F} (−1)^{|A|−1} Π_{X∈A} P_X`.
pub fn inclusion_exclusion(p: &Presentation, theta: &ThetaRep, family: &[Ideal]) -> CMat {
    let n = theta.dim();
    let projections: Vec<CMat> = family.iter().map(|x| theta.projection(p, x)).collect();
    let mut total = zeros(n, n);
    for mask in 1u32..(1 << family.len()) {
        let mut prod = CMat::identity(n, n);
        for (i, pr) in projections.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod *= pr;
            }
        }
        let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
        total += prod * C::new(sign, 0.0);
    }
    total
}

/// `ϑ_χ(1_{ℱ_s})` via inclusion–exclusion over `fix(s)` against the diagonal
/// projection onto the fixed basis points.
pub fn inclusion_exclusion_check(p: &Presentation, s: &PiecewiseBijection, theta: &ThetaRep, bound: usize) -> Result<bool> {
    let family: Vec<Ideal> = match fix_set(p, s, bound) {
        FixSet::IdealUnion { ideal, .. } => ideal.gens().iter().cloned().map(Ideal::principal).collect(),
        FixSet::NotIdealUnion { .. } => return Err(Error::NotHausdorff),
    };
    let lhs = inclusion_exclusion(p, theta, &family);
    let n = theta.dim();
    let mut rhs = zeros(n, n);
    for (i, d) in theta.basis.iter().enumerate() {
        if s.apply(p, d).as_ref() == Some(d) {
            rhs[(i, i)] = ONE;
        }
    }
    Ok(max_abs_diff(&lhs, &rhs) < 1e-12)
}

/// Which orbit blocks of the `Ω` representation survive restriction to `∂Ω`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryQuotient {
    pub kept: Vec<usize>,
    pub killed: Vec<usize>,
    pub surjective: bool,
}

/// `q_∂(f) = f|_{I_l⋉∂Ω}` on functions.
pub fn restrict_function(full: &GermGroupoid, bd: &GermGroupoid, f: &[C]) -> Vec<C> {
    bd.germs.iter().map(|g| full.germs.iter().position(|h| h == g).map(|i| f[i]).unwrap_or(ZERO)).collect()
}

pub fn boundary_quotient(full: &GermGroupoid, bd: &GermGroupoid) -> BoundaryQuotient {
    let mut kept = Vec::new();
    let mut killed = Vec::new();
    for (i, orbit) in full.groupoid.orbits().iter().enumerate() {
        if bd.germs.contains(&full.germs[orbit[0]]) {
            kept.push(i);
        } else {
            killed.push(i);
        }
    }
    let surjective = bd.germs.iter().all(|g| full.germs.contains(g));
    BoundaryQuotient { kept, killed, surjective }
}

/// `‖Σ C_i ⊗ A_i‖` for `k × k` coefficient matrices `C_i`.
pub fn norm_level_k(coeffs: &[CMat], basis: &[CMat]) -> Result<f64> {
    if coeffs.len() != basis.len() {
        return Err(Error::DimensionMismatch(format!("{} coefficients for {} basis elements", coeffs.len(), basis.len())));
    }
    let k = coeffs.first().map(|c| c.nrows()).unwrap_or(1);
    if coeffs.iter().any(|c| c.nrows() != k || c.ncols() != k) {
        return Err(Error::DimensionMismatch("coefficients must be square of one size".into()));
    }
    Ok(op_norm(&amplify(coeffs, basis)))
}

fn amplify(coeffs: &[CMat], basis: &[CMat]) -> CMat {
    let k = coeffs.first().map(|c| c.nrows()).unwrap_or(1);
    let (r, c) = basis.first().map(|b| b.shape()).unwrap_or((0, 0));
    coeffs.iter().zip(basis).fold(zeros(k * r, k * c), |acc, (ci, ai)| acc + kron(ci, ai))
}

/// Search effort for complete-isometry certification.
#[derive(Clone, Debug, Serialize)]
pub struct Effort {
    pub levels: usize,
    pub samples: usize,
    pub restarts: usize,
    pub steps: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for Effort {
    fn default() -> Self {
        Effort { levels: 5, samples: 40, restarts: 4, steps: 40, seed: 0, tol: 1e-9 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum IsometryVerdict {
    Certified { max_deviation: f64, effort: Effort },
    Rejected { level: usize, deviation: f64, witness: String, src_norm: f64, dst_norm: f64 },
}

impl IsometryVerdict {
    pub fn certified(&self) -> bool {
        matches!(self, IsometryVerdict::Certified { .. })
    }
}

/// Searches for an element `Σ C_i ⊗ A_i` whose norm changes under
/// `A_i ↦ B_i`. Rejection carries the offending element; certification is a
/// numerical statement with the recorded effort.
pub fn complete_isometry_check(src: &[CMat], dst: &[CMat], labels: &[String], effort: &Effort) -> Result<IsometryVerdict> {
    if src.len() != dst.len() || labels.len() != src.len() {
        return Err(Error::DimensionMismatch("source, target and labels differ in length".into()));
    }
    let m = src.len();
    let deviation = |cs: &[CMat]| -> (f64, f64, f64) {
        let x = op_norm(&amplify(cs, src));
        let y = op_norm(&amplify(cs, dst));
        let d = if x > 1e-14 { (y - x).abs() / x } else if y > 1e-14 { f64::INFINITY } else { 0.0 };
        (d, x, y)
    };
    let mut worst = 0.0f64;
    let scalar = |z: C| CMat::from_element(1, 1, z);
    let reject = |level: usize, d: (f64, f64, f64), witness: String| IsometryVerdict::Rejected {
        level,
        deviation: d.0,
        witness,
        src_norm: d.1,
        dst_norm: d.2,
    };

    for i in 0..m {
        let cs: Vec<CMat> = (0..m).map(|j| scalar(if i == j { ONE } else { ZERO })).collect();
        let d = deviation(&cs);
        if d.0 > effort.tol {
            return Ok(reject(1, d, labels[i].clone()));
        }
        worst = worst.max(d.0);
    }
    for i in 0..m {
        for j in i + 1..m {
            for (z, sym) in [(ONE, "+"), (-ONE, "-"), (C::new(0.0, 1.0), "+i")] {
                let cs: Vec<CMat> = (0..m)
                    .map(|l| scalar(if l == i { ONE } else if l == j { z } else { ZERO }))
                    .collect();
                let d = deviation(&cs);
                if d.0 > effort.tol {
                    return Ok(reject(1, d, format!("{} {}{}", labels[i], sym, labels[j])));
                }
                worst = worst.max(d.0);
            }
        }
    }
    let mut r = rng(effort.seed);
    for k in 1..=effort.levels {
        for sample in 0..effort.samples {
            let cs: Vec<CMat> = (0..m).map(|_| random_mat(&mut r, k, k)).collect();
            let d = deviation(&cs);
            if d.0 > effort.tol {
                return Ok(reject(k, d, format!("random level-{k} element #{sample}")));
            }
            worst = worst.max(d.0);
        }
        for restart in 0..effort.restarts {
            let mut cs: Vec<CMat> = (0..m).map(|_| random_mat(&mut r, k, k)).collect();
            let mut best = deviation(&cs).0;
            let mut scale = 0.5;
            for _ in 0..effort.steps {
                let trial: Vec<CMat> = cs.iter().map(|c| c + random_mat(&mut r, k, k) * C::new(scale, 0.0)).collect();
                let d = deviation(&trial);
                if d.0 > effort.tol {
                    return Ok(reject(k, d, format!("optimized level-{k} element (restart {restart})")));
                }
                if d.0 > best {
                    best = d.0;
                    cs = trial;
                } else {
                    scale *= 0.9;
                }
            }
            worst = worst.max(best);
        }
    }
    Ok(IsometryVerdict::Certified { max_deviation: worst, effort: effort.clone() })
}

/// Faithfulness of `E` on positives: `E(a*a) = 0` only for `a = 0`, tested on
/// the given functions.
pub fn expectation_faithful(g: &FiniteGroupoid, samples: &[Vec<C>]) -> bool {
    samples.iter().all(|a| {
        let e = expectation_units(g, &convolve(g, &adjoint_fn(g, a), a));
        let zero_e = e.iter().all(|z| z.norm() < 1e-12);
        let zero_a = a.iter().all(|z| z.norm() < 1e-12);
        zero_e == zero_a
    })
}

/// Basis labels followed by row-major `re,im` entries.
pub fn dump_matrix(labels: &[String], m: &CMat) -> String {
    let mut out = labels.join(" ");
    out.push('\n');
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{},{}", m[(i, j)].re, m[(i, j)].im)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::germ::omega_and_boundary;
    use crate::hull::generate_hull;
    use crate::ideals::spectrum;
    use crate::linalg::unit;

    #[test]
    fn edge_lambda() {
        let p = fixtures::edge();
        let lam = LambdaRep::new(&p, 1);
        assert!(lam.is_exact());
        assert_eq!(lam.labels(&p), ["v", "w", "e"]);
        assert_eq!(lam.lambda(&p, &p.morphism("e").unwrap()), unit(3, 2, 1));
        let ei = PiecewiseBijection::from_morphism(&p.morphism("e").unwrap()).inverse(&p);
        assert_eq!(lam.inverse_rep(&p, &ei), unit(3, 1, 2));
    }

    #[test]
    fn free_monoid_truncation() {
        let p = fixtures::free2();
        let lam = LambdaRep::new(&p, 2);
        assert!(!lam.is_exact());
        let m = lam.lambda(&p, &p.morphism("a").unwrap());
        let col = |x: &str| lam.basis().iter().position(|b| *b == p.morphism(x).unwrap()).unwrap();
        assert_eq!(m[(col("a"), col("ε"))], ONE);
        assert_eq!(m[(col("ab"), col("b"))], ONE);
        assert_eq!(m.column(col("aa")).iter().filter(|z| **z != ZERO).count(), 0);
    }

    #[test]
    fn edge_jack_and_theta() {
        let p = fixtures::edge();
        let h = generate_hull(&p, 4).unwrap();
        let sp = spectrum(&p, &h).unwrap();
        let (full, bd) = omega_and_boundary(&p, &h, &sp).unwrap();
        let lam = LambdaRep::new(&p, 1);
        let j = jack_check(&p, &h, &full, &lam).unwrap();
        assert!(j.isomorphism(), "{j:?}");
        let chi_w = Character::Principal(Ideal::principal(p.morphism("w").unwrap()));
        let th = ThetaRep::new(&p, Some(&sp), &chi_w, 2, 0).unwrap();
        assert_eq!(th.dim(), 2);
        let e = PiecewiseBijection::from_morphism(&p.morphism("e").unwrap());
        assert_eq!(th.theta(&p, &e).unwrap(), unit(2, 1, 0));
        assert!(compression_check(&p, &bd, &th).unwrap());
        for s in h.elements() {
            assert!(inclusion_exclusion_check(&p, s, &th, 2).unwrap());
        }
        let chi_v = Character::Principal(Ideal::principal(p.morphism("v").unwrap()));
        assert!(matches!(ThetaRep::new(&p, Some(&sp), &chi_v, 2, 0), Err(Error::NotBoundary)));
    }

    #[test]
    fn level_k_norms() {
        let a = [unit(2, 1, 0)];
        assert!((norm_level_k(&[CMat::identity(1, 1)], &a).unwrap() - 1.0).abs() < 1e-12);
        let three = CMat::identity(3, 3) * C::new(2.5, 0.0);
        assert!((norm_level_k(&[three], &[CMat::identity(2, 2)]).unwrap() - 2.5).abs() < 1e-12);
        assert!(norm_level_k(&[], &a).is_err());
    }
}
