//! Universal groups of finite groupoids, the `j` map, functors into groupoids
//! and the cocycles they induce on germ groupoids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::{Morphism, Presentation};
use crate::error::{Error, Result};
use crate::germ::GermGroupoid;
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::hull::{HullClosure, PiecewiseBijection};

/// Orbit representatives and connectors `γ_v: u → v`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitData {
    pub representatives: Vec<usize>,
    rep_of: BTreeMap<usize, usize>,
    connector: BTreeMap<usize, usize>,
}

impl OrbitData {
    /// Seed 0 takes the lowest index everywhere; other seeds choose at random.
    pub fn new(g: &FiniteGroupoid, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = |xs: &[usize]| if seed == 0 { xs[0] } else { *xs.choose(&mut rng).unwrap() };
        let mut representatives = Vec::new();
        let mut rep_of = BTreeMap::new();
        let mut connector = BTreeMap::new();
        for orbit in g.orbits() {
            let u = pick(&orbit);
            representatives.push(u);
            for &v in &orbit {
                rep_of.insert(v, u);
                let c = if v == u { u } else { pick(&g.hom(u, v)) };
                connector.insert(v, c);
            }
        }
        OrbitData { representatives, rep_of, connector }
    }

    pub fn rep(&self, unit: usize) -> usize {
        self.rep_of[&unit]
    }

    pub fn connector(&self, unit: usize) -> usize {
        self.connector[&unit]
    }

    pub fn is_rep(&self, unit: usize) -> bool {
        self.rep_of[&unit] == unit
    }

    /// The letters `X_u = [u] ∖ {u}` of the free factors.
    pub fn free_letters(&self) -> Vec<usize> {
        self.rep_of.iter().filter(|(v, u)| v != u).map(|(v, _)| *v).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    /// `x̄_unit^exp` for a non-representative unit.
    Free { unit: usize, exp: i32 },
    /// A non-unit isotropy element at a representative.
    Iso { rep: usize, elem: usize },
}

/// A reduced word in `⍟_u (𝔽(X_u) ⍟ 𝔊_u^u)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UGWord(pub Vec<Letter>);

impl UGWord {
    pub fn empty() -> Self {
        UGWord(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, g: &FiniteGroupoid, other: &UGWord) -> UGWord {
        reduce(g, self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self, g: &FiniteGroupoid) -> UGWord {
        UGWord(
            self.0
                .iter()
                .rev()
                .map(|l| match *l {
                    Letter::Free { unit, exp } => Letter::Free { unit, exp: -exp },
                    Letter::Iso { rep, elem } => Letter::Iso { rep, elem: g.inverse(elem) },
                })
                .collect(),
        )
    }

    pub fn render(&self, g: &FiniteGroupoid) -> String {
        if self.is_empty() {
            return "e".into();
        }
        let mut out = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            match *l {
                Letter::Free { unit, exp: 1 } => {
                    let _ = write!(out, "x~{}", g.label(unit));
                }
                Letter::Free { unit, exp } => {
                    let _ = write!(out, "x~{}^{}", g.label(unit), exp);
                }
                Letter::Iso { rep, elem } => {
                    let _ = write!(out, "iso({})@{}", g.label(elem), g.label(rep));
                }
            }
        }
        out
    }
}

/// Free-product reduction: merges adjacent letters of the same factor and
/// drops trivial ones.
pub fn reduce(g: &FiniteGroupoid, letters: impl IntoIterator<Item = Letter>) -> UGWord {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        match l {
            Letter::Free { exp: 0, .. } => continue,
            Letter::Iso { elem, .. } if g.is_unit(elem) => continue,
            _ => {}
        }
        match (stack.last().copied(), l) {
            (Some(Letter::Free { unit: a, exp: x }), Letter::Free { unit: b, exp: y }) if a == b => {
                stack.pop();
                if x + y != 0 {
                    stack.push(Letter::Free { unit: a, exp: x + y });
                }
            }
            (Some(Letter::Iso { rep: a, elem: x }), Letter::Iso { rep: b, elem: y }) if a == b => {
                stack.pop();
                let xy = g.product(x, y).expect("isotropy product");
                if !g.is_unit(xy) {
                    stack.push(Letter::Iso { rep: a, elem: xy });
                }
            }
            _ => stack.push(l),
        }
    }
    UGWord(stack)
}

/// `j(g) = z̄ (γ_z⁻¹ g γ_y) ȳ⁻¹` for `g: y → z`.
pub fn j_map(g: &FiniteGroupoid, od: &OrbitData, x: usize) -> UGWord {
    let (y, z) = (g.source(x), g.range(x));
    let u = od.rep(y);
    let gz = od.connector(z);
    let gy = od.connector(y);
    let h = g.product(g.product(g.inverse(gz), x).unwrap(), gy).unwrap();
    let mut letters = Vec::new();
    if !od.is_rep(z) {
        letters.push(Letter::Free { unit: z, exp: 1 });
    }
    letters.push(Letter::Iso { rep: u, elem: h });
    if !od.is_rep(y) {
        letters.push(Letter::Free { unit: y, exp: -1 });
    }
    reduce(g, letters)
}

/// Checks `μ′ ∘ j = μ` for a functor `μ` into a finite group, with `μ′`
/// defined on the generators of the universal group.
pub fn factors_through_universal(g: &FiniteGroupoid, od: &OrbitData, h: &FiniteGroup, mu: &[usize]) -> bool {
    let eval = |w: &UGWord| {
        w.0.iter().fold(h.identity(), |acc, l| {
            let x = match *l {
                Letter::Free { unit, exp } => {
                    let base = mu[od.connector(unit)];
                    let b = if exp < 0 { h.inv(base) } else { base };
                    (0..exp.unsigned_abs()).fold(h.identity(), |a, _| h.mul(a, b))
                }
                Letter::Iso { elem, .. } => mu[elem],
            };
            h.mul(acc, x)
        })
    };
    (0..g.len()).all(|x| eval(&j_map(g, od, x)) == mu[x])
}

/// A functor from a presented category into a finite groupoid, given on
/// objects and letters and validated on a ball.
#[derive(Clone, Debug)]
pub struct CategoryFunctor {
    pub target: FiniteGroupoid,
    object_map: Vec<usize>,
    letter_map: BTreeMap<u32, usize>,
}

impl CategoryFunctor {
    pub fn new(p: &Presentation, target: FiniteGroupoid, object_map: Vec<usize>, letter_map: BTreeMap<u32, usize>, bound: usize) -> Result<Self> {
        let bad = |m: String| Error::PreconditionViolated(m);
        if object_map.len() != p.object_count() || object_map.iter().any(|&u| !target.is_unit(u)) {
            return Err(bad("object map must send objects to units".into()));
        }
        for m in p.letters() {
            let x = *letter_map.get(&m.word[0]).ok_or_else(|| bad(format!("no image for {}", p.render(&m))))?;
            if target.source(x) != object_map[m.dom as usize] || target.range(x) != object_map[m.tgt as usize] {
                return Err(bad(format!("image of {} has the wrong endpoints", p.render(&m))));
            }
        }
        let f = CategoryFunctor { target, object_map, letter_map };
        let ball = match p.all_morphisms() {
            Some(all) => all,
            None => p.ball(bound),
        };
        for c in &ball {
            for d in ball.iter().filter(|d| d.tgt == c.dom) {
                if let Some(cd) = p.compose(c, d) {
                    if f.image(&cd) != f.target.product(f.image(c), f.image(d)).unwrap() {
                        return Err(bad(format!("relation {}·{} not respected", p.render(c), p.render(d))));
                    }
                }
            }
        }
        Ok(f)
    }

    /// Sends each edge `e: w → v` of a path category to `(v, w)` in the pair
    /// groupoid on the objects.
    pub fn into_pair_groupoid(p: &Presentation, bound: usize) -> Result<Self> {
        let labels: Vec<&str> = p.objects().iter().map(|s| s.as_str()).collect();
        let target = FiniteGroupoid::pair(&labels);
        let n = labels.len();
        let object_map = (0..n).collect();
        let pair = |r: u32, s: u32| {
            if r == s {
                r as usize
            } else {
                target.hom(s as usize, r as usize)[0]
            }
        };
        let letter_map = p.letters().iter().map(|m| (m.word[0], pair(m.tgt, m.dom))).collect();
        Self::new(p, target.clone(), object_map, letter_map, bound)
    }

    /// The inclusion of a groupoid subcategory into its ambient groupoid.
    pub fn ambient_inclusion(p: &Presentation) -> Result<Self> {
        let target = p.ambient_groupoid().ok_or_else(|| Error::PreconditionViolated("not a groupoid subcategory".into()))?.clone();
        let object_map = p.identities().iter().map(|m| p.ambient_element(m).unwrap()).collect();
        let letter_map = p.letters().iter().map(|m| (m.word[0], p.ambient_element(m).unwrap())).collect();
        Self::new(p, target, object_map, letter_map, 1)
    }

    /// Every object and letter sent to the single unit of the trivial group.
    pub fn collapse(p: &Presentation) -> Result<Self> {
        let target = FiniteGroupoid::from_group(&FiniteGroup::trivial());
        let object_map = vec![0; p.object_count()];
        let letter_map = p.letters().iter().map(|m| (m.word[0], 0)).collect();
        Self::new(p, target, object_map, letter_map, 3)
    }

    pub fn image(&self, m: &Morphism) -> usize {
        m.word.iter().fold(self.object_map[m.tgt as usize], |acc, l| self.target.product(acc, self.letter_map[l]).expect("composable image"))
    }

    pub fn is_injective_on(&self, ms: &[Morphism]) -> bool {
        let images: BTreeSet<usize> = ms.iter().map(|m| self.image(m)).collect();
        images.len() == ms.len()
    }
}

/// `ρ̃(s) = ρ(a)ρ(b)⁻¹` for any piece `(a, b)`; every piece must agree.
pub fn rho_tilde(p: &Presentation, s: &PiecewiseBijection, rho: &CategoryFunctor) -> Result<usize> {
    let g = &rho.target;
    let mut value = None;
    for (a, b) in s.pieces() {
        let x = g.product(rho.image(a), g.inverse(rho.image(b))).expect("common domain");
        match value {
            None => value = Some(x),
            Some(y) if y != x => {
                return Err(Error::PreconditionViolated(format!("ρ̃ is not well defined on {}", s.render(p))));
            }
            _ => {}
        }
    }
    value.ok_or(Error::ZeroElement)
}

/// The cocycle `κ_ρ([s, χ]) = j(ρ̃(s))`.
pub fn kappa(p: &Presentation, s: &PiecewiseBijection, rho: &CategoryFunctor, od: &OrbitData) -> Result<UGWord> {
    Ok(j_map(&rho.target, od, rho_tilde(p, s, rho)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct PurityVerdict {
    pub injective: bool,
    pub pure: bool,
    pub witness: Option<String>,
}

/// Checks that `ρ̄(s) = e` forces `s` to be idempotent across the hull.
pub fn idempotent_pure_check(p: &Presentation, h: &HullClosure, rho: &CategoryFunctor, od: &OrbitData) -> Result<PurityVerdict> {
    let window = match p.all_morphisms() {
        Some(all) => all,
        None => p.ball(h.bound()),
    };
    let injective = rho.is_injective_on(&window);
    for s in h.nonzero() {
        if kappa(p, s, rho, od)?.is_empty() && !s.is_idempotent() {
            return Ok(PurityVerdict { injective, pure: false, witness: Some(s.render(p)) });
        }
    }
    Ok(PurityVerdict { injective, pure: true, witness: None })
}

/// Checks `ρ(s(x)) = ρ̃(s)ρ(x)` on the given points of `dom(s)`.
pub fn partial_hom_identity(p: &Presentation, s: &PiecewiseBijection, rho: &CategoryFunctor, points: &[Morphism]) -> Result<bool> {
    let r = rho_tilde(p, s, rho)?;
    for x in points {
        if let Some(sx) = s.apply(p, x) {
            if Some(rho.image(&sx)) != rho.target.product(r, rho.image(x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `κ` on every element of a germ groupoid.
pub fn kappa_table(p: &Presentation, gg: &GermGroupoid, rho: &CategoryFunctor, od: &OrbitData) -> Result<Vec<UGWord>> {
    gg.germs.iter().map(|g| kappa(p, &g.s, rho, od)).collect()
}

/// Whether `κ(gh) = κ(g)κ(h)` on all composable pairs.
pub fn is_cocycle(gg: &GermGroupoid, target: &FiniteGroupoid, kappas: &[UGWord]) -> bool {
    let g = &gg.groupoid;
    (0..g.len()).all(|a| {
        (0..g.len()).all(|b| match g.product(a, b) {
            Some(ab) => kappas[ab] == kappas[a].mul(target, &kappas[b]),
            None => true,
        })
    })
}

/// The subgroupoid `{g : κ(g) = e}`.
pub fn kernel_subgroupoid(gg: &GermGroupoid, kappas: &[UGWord]) -> Result<FiniteGroupoid> {
    let keep: Vec<usize> = (0..gg.len()).filter(|&i| kappas[i].is_empty()).collect();
    gg.groupoid.subgroupoid(&keep)
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialActionVerdict {
    pub germs: usize,
    pub pairs: usize,
    pub injective: bool,
    pub homomorphism: bool,
}

impl PartialActionVerdict {
    pub fn isomorphism(&self) -> bool {
        self.injective && self.homomorphism && self.germs == self.pairs
    }
}

/// The map `[s, χ] ↦ (ρ̄(s), χ)` into the transformation groupoid of the
/// induced partial action.
pub fn partial_action_iso_check(p: &Presentation, gg: &GermGroupoid, rho: &CategoryFunctor, od: &OrbitData) -> Result<PartialActionVerdict> {
    let kappas = kappa_table(p, gg, rho, od)?;
    let pairs: BTreeSet<(&UGWord, &crate::ideals::Character)> = gg.germs.iter().zip(&kappas).map(|(g, k)| (k, &g.chi)).collect();
    let homomorphism = is_cocycle(gg, &rho.target, &kappas);
    Ok(PartialActionVerdict { germs: gg.len(), pairs: pairs.len(), injective: pairs.len() == gg.len(), homomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pair_groupoid_universal_group() {
        let g = FiniteGroupoid::pair(&["1", "2"]);
        let od = OrbitData::new(&g, 0);
        assert_eq!(od.representatives, vec![0]);
        assert_eq!(od.free_letters(), vec![1]);
        let x = g.find("(2,1)").unwrap();
        assert_eq!(j_map(&g, &od, x).render(&g), "x~2");
        assert_eq!(j_map(&g, &od, g.inverse(x)).render(&g), "x~2^-1");
        assert!(j_map(&g, &od, 0).is_empty());
    }

    #[test]
    fn isotropy_letters() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(3));
        let od = OrbitData::new(&g, 0);
        assert_eq!(j_map(&g, &od, 1).render(&g), "iso(1)@*");
        let w = reduce(&g, [Letter::Iso { rep: 0, elem: 1 }, Letter::Iso { rep: 0, elem: 2 }]);
        assert!(w.is_empty());
        let w = reduce(&g, [Letter::Iso { rep: 0, elem: 1 }, Letter::Iso { rep: 0, elem: 1 }]);
        assert_eq!(w.render(&g), "iso(2)@*");
    }

    #[test]
    fn edge_rho_tilde() {
        let p = fixtures::edge();
        let rho = CategoryFunctor::into_pair_groupoid(&p, 3).unwrap();
        let e = PiecewiseBijection::from_morphism(&p.morphism("e").unwrap());
        let r = rho_tilde(&p, &e.inverse(&p), &rho).unwrap();
        assert_eq!(rho.target.label(r), "(w,v)");
        assert!(matches!(rho_tilde(&p, &PiecewiseBijection::zero(), &rho), Err(Error::ZeroElement)));
    }
}
