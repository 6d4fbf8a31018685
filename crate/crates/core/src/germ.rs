//! Germ groupoids `I_l ⋉ Ω` and their boundary restrictions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::category::{Kind, Morphism, Presentation};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::hull::{hausdorff_check, HullClosure, PiecewiseBijection};
use crate::ideals::{act, Character, Ideal, Spectrum};

/// A representative `(s, χ)` of the germ `[s, χ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Germ {
    pub s: PiecewiseBijection,
    pub chi: Character,
}

impl Germ {
    pub fn render(&self, p: &Presentation) -> String {
        format!("[{}, {}]", self.s.render(p), self.chi.render(p))
    }
}

/// A deep point of `ℕ^k`, lying in every nonempty constructible ideal whose
/// generators have length at most `depth`.
pub fn deep_point(p: &Presentation, depth: usize) -> Result<Morphism> {
    match p.kind() {
        Kind::Nk(k) => {
            let mut word = Vec::new();
            for i in 0..*k as u32 {
                word.extend(std::iter::repeat_n(i, depth));
            }
            Ok(Morphism { word, dom: 0, tgt: 0 })
        }
        _ => Err(Error::PreconditionViolated("χ_∞ germs need a monoid with a deep diagonal point".into())),
    }
}

/// Normal form of a germ: `s` restricted to the least ideal of the filter of
/// `χ`, or to a principal ideal at the given depth for infinite filters
/// (the depth must reach into `dom(s)`).
pub fn germ_key(p: &Presentation, s: &PiecewiseBijection, chi: &Character, depth: usize) -> Result<PiecewiseBijection> {
    if !chi.value(p, &s.domain(p)) {
        return Err(Error::NotInDomain);
    }
    let point = match chi {
        Character::Principal(x) => return s.restrict(p, x),
        Character::Infinity => deep_point(p, depth)?,
        Character::Ray { .. } => chi.ray_point(p, depth).expect("ray"),
    };
    let image = s.apply(p, &point).ok_or(Error::NotInDomain)?;
    Ok(PiecewiseBijection::from_pieces(p, vec![(image, point)]))
}

pub fn germ_equal(p: &Presentation, a: &Germ, b: &Germ, depth: usize) -> Result<bool> {
    if a.chi != b.chi {
        return Ok(false);
    }
    let depth = depth.max(a.s.weight()).max(b.s.weight());
    Ok(germ_key(p, &a.s, &a.chi, depth)? == germ_key(p, &b.s, &b.chi, depth)?)
}

/// A finite germ groupoid with its germ representatives.
#[derive(Clone, Debug, Serialize)]
pub struct GermGroupoid {
    pub groupoid: FiniteGroupoid,
    pub germs: Vec<Germ>,
}

impl GermGroupoid {
    pub fn find(&self, p: &Presentation, s: &PiecewiseBijection, chi: &Character) -> Option<usize> {
        let key = germ_key(p, s, chi, 0).ok()?;
        self.germs.iter().position(|g| g.s == key && &g.chi == chi)
    }

    pub fn unit_of(&self, chi: &Character) -> Option<usize> {
        self.groupoid.units().into_iter().find(|&u| &self.germs[u].chi == chi)
    }

    pub fn len(&self) -> usize {
        self.germs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.germs.is_empty()
    }
}

/// All germs `[s, χ]` with `s ∈ h` nonzero and `χ` among `chars`. Refuses
/// hulls without a certified Hausdorff verdict.
pub fn build_groupoid(p: &Presentation, h: &HullClosure, chars: &[Character]) -> Result<GermGroupoid> {
    if !h.is_complete() {
        return Err(Error::InfiniteCharacterSpace);
    }
    if !hausdorff_check(p, h).passed() {
        return Err(Error::NotHausdorff);
    }
    let mut units = Vec::new();
    let mut others = Vec::new();
    for chi in chars {
        let x = match chi {
            Character::Principal(x) => x.clone(),
            _ => return Err(Error::InfiniteCharacterSpace),
        };
        units.push(Germ { s: PiecewiseBijection::identity_on(&x), chi: chi.clone() });
        for s in h.nonzero() {
            if !chi.value(p, &s.domain(p)) {
                continue;
            }
            let key = germ_key(p, s, chi, 0)?;
            if !key.is_idempotent() {
                others.push(Germ { s: key, chi: chi.clone() });
            }
        }
    }
    others.sort();
    others.dedup();
    let germs: Vec<Germ> = units.into_iter().chain(others).collect();
    let index: BTreeMap<&Germ, usize> = germs.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let unit_of: BTreeMap<&Character, usize> = (0..chars.len()).map(|i| (&germs[i].chi, i)).collect();

    let mut source = Vec::new();
    let mut range = Vec::new();
    for g in &germs {
        source.push(unit_of[&g.chi]);
        let r = act(p, &g.s, &g.chi)?;
        range.push(*unit_of.get(&r).ok_or_else(|| {
            Error::PreconditionViolated(format!("{} leaves the chosen character set", g.render(p)))
        })?);
    }
    let lookup = |s: &PiecewiseBijection, chi: &Character| -> Result<usize> {
        let key = germ_key(p, s, chi, 0)?;
        if key.is_idempotent() {
            return Ok(unit_of[chi]);
        }
        index.get(&Germ { s: key, chi: chi.clone() }).copied().ok_or_else(|| Error::PreconditionViolated("germ outside hull".into()))
    };
    let mut products = BTreeMap::new();
    for (j, b) in germs.iter().enumerate() {
        for (i, a) in germs.iter().enumerate() {
            if source[i] == range[j] {
                products.insert((i, j), lookup(&a.s.compose(p, &b.s)?, &b.chi)?);
            }
        }
    }
    let labels = germs.iter().map(|g| g.render(p)).collect();
    let groupoid = FiniteGroupoid::new(labels, source, range, |i, j| products[&(i, j)])?;
    Ok(GermGroupoid { groupoid, germs })
}

/// The full subgroupoid over the boundary characters.
pub fn restrict_boundary(g: &GermGroupoid, spectrum: &Spectrum) -> Result<GermGroupoid> {
    let keep: Vec<usize> = (0..g.len())
        .filter(|&i| spectrum.in_boundary(&g.germs[g.groupoid.source(i)].chi) && spectrum.in_boundary(&g.germs[g.groupoid.range(i)].chi))
        .collect();
    let groupoid = g.groupoid.subgroupoid(&keep)?;
    Ok(GermGroupoid { groupoid, germs: keep.iter().map(|&i| g.germs[i].clone()).collect() })
}

/// Germ groupoids over `Ω` and over `∂Ω`.
pub fn omega_and_boundary(p: &Presentation, h: &HullClosure, spectrum: &Spectrum) -> Result<(GermGroupoid, GermGroupoid)> {
    let full = build_groupoid(p, h, &spectrum.characters)?;
    let boundary = restrict_boundary(&full, spectrum)?;
    Ok((full, boundary))
}

/// The identity germ on a principal ideal, for callers that name germs by
/// morphisms.
pub fn unit_germ(x: &Ideal, chi: &Character) -> Germ {
    Germ { s: PiecewiseBijection::identity_on(x), chi: chi.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hull::generate_hull;
    use crate::ideals::spectrum;

    #[test]
    fn edge_groupoids() {
        let p = fixtures::edge();
        let h = generate_hull(&p, 4).unwrap();
        let sp = spectrum(&p, &h).unwrap();
        let (full, bd) = omega_and_boundary(&p, &h, &sp).unwrap();
        assert_eq!(full.len(), 5);
        assert_eq!(bd.len(), 4);
        assert!(bd.groupoid.is_principal());
        assert_eq!(bd.groupoid.orbits().len(), 1);
    }

    #[test]
    fn edge_germ_equality() {
        let p = fixtures::edge();
        let id = |t: &str| Ideal::principal(p.morphism(t).unwrap());
        let chi_e = Character::Principal(id("e"));
        let chi_w = Character::Principal(id("w"));
        let a = unit_germ(&id("v"), &chi_e);
        let b = unit_germ(&id("e"), &chi_e);
        assert!(germ_equal(&p, &a, &b, 0).unwrap());
        let e = Germ { s: PiecewiseBijection::from_morphism(&p.morphism("e").unwrap()), chi: chi_w.clone() };
        assert!(!germ_equal(&p, &e, &unit_germ(&id("w"), &chi_w), 0).unwrap());
        assert_eq!(act(&p, &e.s, &chi_w).unwrap(), chi_e);
    }

    #[test]
    fn n2_germs_at_infinity() {
        let p = fixtures::n2();
        let x = |t: &str| p.morphism(t).unwrap();
        let s = PiecewiseBijection::from_pieces(&p, vec![(x("(2,1)"), x("(1,1)"))]);
        let t = PiecewiseBijection::from_morphism(&x("(1,0)"));
        let a = Germ { s, chi: Character::Infinity };
        let b = Germ { s: t, chi: Character::Infinity };
        assert!(germ_equal(&p, &a, &b, 4).unwrap());
    }
}
