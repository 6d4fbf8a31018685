//! Constructible right ideals, characters, the spectrum and its boundary.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::category::{Kind, Morphism, Presentation};
use crate::error::{Error, Result};
use crate::hull::{HullClosure, PiecewiseBijection};

/// A finite union `⋃ b_i𝔠` of principal right ideals in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ideal {
    gens: Vec<Morphism>,
}

impl Ideal {
    pub fn empty() -> Self {
        Ideal { gens: Vec::new() }
    }

    pub fn principal(m: Morphism) -> Self {
        Ideal { gens: vec![m] }
    }

    /// Drops generators lying in another generator's ideal; ties keep the
    /// smaller generator.
    pub fn from_gens(p: &Presentation, mut gens: Vec<Morphism>) -> Self {
        gens.sort();
        gens.dedup();
        let n = gens.len();
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                !(0..n).any(|j| j != i && p.in_ideal(&gens[j], &gens[i]) && !(p.in_ideal(&gens[i], &gens[j]) && i < j))
            })
            .collect();
        Ideal { gens: gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect() }
    }

    pub fn gens(&self) -> &[Morphism] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, p: &Presentation, x: &Morphism) -> bool {
        self.gens.iter().any(|g| p.in_ideal(g, x))
    }

    /// `self ⊆ other`; exact because a principal ideal lies in a finite union
    /// of principal ideals only if its generator does.
    pub fn subset(&self, p: &Presentation, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(p, g))
    }

    pub fn meet(&self, p: &Presentation, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::new();
        for g in &self.gens {
            for h in &other.gens {
                for (x, _) in p.align(g, h)? {
                    gens.push(p.compose(g, &x).expect("alignment endpoints"));
                }
            }
        }
        Ok(Ideal::from_gens(p, gens))
    }

    pub fn union(&self, p: &Presentation, other: &Ideal) -> Ideal {
        Ideal::from_gens(p, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn render(&self, p: &Presentation) -> String {
        if self.is_empty() {
            return "∅".into();
        }
        self.gens.iter().map(|g| format!("{}𝔠", p.render(g))).collect::<Vec<_>>().join("∪")
    }
}

/// The constructible ideals of a hull with their meets.
#[derive(Clone, Debug, Serialize)]
pub struct SemilatticeTable {
    ideals: Vec<Ideal>,
    meet: Vec<Vec<Option<usize>>>,
    complete: bool,
}

impl SemilatticeTable {
    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn index(&self, x: &Ideal) -> Option<usize> {
        self.ideals.binary_search(x).ok()
    }

    /// Index of `X ∩ Y`, when the meet lies in the table.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.meet[i][j]
    }

    pub fn contains_empty(&self) -> bool {
        self.ideals.first().is_some_and(|x| x.is_empty())
    }

    pub fn nonempty(&self) -> impl Iterator<Item = (usize, &Ideal)> {
        self.ideals.iter().enumerate().filter(|(_, x)| !x.is_empty())
    }
}

/// `𝒥 = {dom(s) : s ∈ h}` with its meet table.
pub fn constructible_ideals(p: &Presentation, h: &HullClosure) -> Result<SemilatticeTable> {
    let set: BTreeSet<Ideal> = h.elements().iter().map(|s| s.domain(p)).collect();
    let ideals: Vec<Ideal> = set.into_iter().collect();
    let mut meet = vec![vec![None; ideals.len()]; ideals.len()];
    for i in 0..ideals.len() {
        for j in i..ideals.len() {
            let m = ideals[i].meet(p, &ideals[j])?;
            let k = ideals.binary_search(&m).ok();
            meet[i][j] = k;
            meet[j][i] = k;
        }
    }
    Ok(SemilatticeTable { ideals, meet, complete: h.is_complete() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverVerdict {
    pub covers: bool,
    /// A nonempty sub-ideal missing every member of the family.
    pub witness: Option<Ideal>,
    pub exact: bool,
}

/// Whether `family` covers `x`: every nonempty `Y ⊆ x` in the table meets
/// some member.
pub fn is_cover(p: &Presentation, table: &SemilatticeTable, family: &[Ideal], x: &Ideal) -> Result<CoverVerdict> {
    if let Some(z) = family.iter().find(|z| !z.subset(p, x)) {
        return Err(Error::PreconditionViolated(format!("{} is not contained in {}", z.render(p), x.render(p))));
    }
    for (_, y) in table.nonempty() {
        if !y.subset(p, x) {
            continue;
        }
        let mut hit = false;
        for z in family {
            if !z.meet(p, y)?.is_empty() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(CoverVerdict { covers: false, witness: Some(y.clone()), exact: true });
        }
    }
    Ok(CoverVerdict { covers: true, witness: None, exact: table.is_complete() })
}

/// A character of `𝒥`: the filter above an ideal, the all-ones character, or
/// the filter of an eventually periodic infinite path `prefix·cycle^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Character {
    Principal(Ideal),
    Infinity,
    Ray { prefix: Morphism, cycle: Morphism },
}

impl Character {
    /// An eventually periodic ray. For path categories the representation is
    /// reduced to a primitive cycle entered as early as possible.
    pub fn ray(p: &Presentation, prefix: Morphism, cycle: Morphism) -> Result<Self> {
        if cycle.is_identity() || cycle.dom != cycle.tgt || cycle.tgt != prefix.dom {
            return Err(Error::PreconditionViolated("a ray needs a nontrivial loop at the end of its prefix".into()));
        }
        let (mut prefix, mut cycle) = (prefix, cycle);
        if matches!(p.kind(), Kind::Path(_)) {
            let n = cycle.word.len();
            if let Some(d) = (1..n).find(|&d| n % d == 0 && (0..n).all(|i| cycle.word[i] == cycle.word[i % d])) {
                cycle.word.truncate(d);
            }
            while let (Some(&l), Some(&c)) = (prefix.word.last(), cycle.word.last()) {
                if l != c {
                    break;
                }
                prefix.word.pop();
                cycle.word.rotate_right(1);
                let first = cycle.word[0];
                let end = p.letters().into_iter().find(|m| m.word == [first]).expect("letter").tgt;
                cycle.dom = end;
                cycle.tgt = end;
                prefix.dom = end;
            }
        }
        Ok(Character::Ray { prefix, cycle })
    }

    /// `prefix · cycle^n` for a ray.
    pub fn ray_point(&self, p: &Presentation, n: usize) -> Option<Morphism> {
        match self {
            Character::Ray { prefix, cycle } => {
                let mut x = prefix.clone();
                for _ in 0..n {
                    x = p.compose(&x, cycle).expect("ray loop");
                }
                Some(x)
            }
            _ => None,
        }
    }

    fn ray_depth(&self, m: &Morphism) -> usize {
        match self {
            Character::Ray { prefix, .. } => m.len() + prefix.len() + 1,
            _ => 0,
        }
    }

    pub fn value(&self, p: &Presentation, y: &Ideal) -> bool {
        match self {
            Character::Principal(x) => !x.is_empty() && x.subset(p, y),
            Character::Infinity => !y.is_empty(),
            Character::Ray { .. } => y.gens().iter().any(|g| {
                let pt = self.ray_point(p, self.ray_depth(g)).unwrap();
                p.in_ideal(g, &pt)
            }),
        }
    }

    pub fn render(&self, p: &Presentation) -> String {
        match self {
            Character::Principal(x) if x.gens().len() == 1 => format!("χ_{}", p.render(&x.gens()[0])),
            Character::Principal(x) => format!("χ_{{{}}}", x.render(p)),
            Character::Infinity => "χ_∞".into(),
            Character::Ray { prefix, cycle } => {
                let pre = if prefix.is_identity() { String::new() } else { p.render(prefix) };
                format!("χ[{}({})^∞]", pre, p.render(cycle))
            }
        }
    }
}

/// `s.χ`, defined when `χ(dom s) = 1`.
pub fn act(p: &Presentation, s: &PiecewiseBijection, chi: &Character) -> Result<Character> {
    if !chi.value(p, &s.domain(p)) {
        return Err(Error::NotInDomain);
    }
    match chi {
        Character::Principal(x) => {
            let gens = x.gens().iter().map(|g| s.apply(p, g).expect("generator in domain")).collect();
            Ok(Character::Principal(Ideal::from_gens(p, gens)))
        }
        Character::Infinity => Ok(Character::Infinity),
        Character::Ray { cycle, .. } => {
            for (a, b) in s.pieces() {
                let pt = chi.ray_point(p, chi.ray_depth(b)).unwrap();
                if let Some(t) = p.divide_left(b, &pt) {
                    let prefix = p.compose(a, &t).expect("piece endpoints");
                    return Character::ray(p, prefix, cycle.clone());
                }
            }
            Err(Error::NotInDomain)
        }
    }
}

/// The explicit characters and boundary of a finite semilattice.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub table: SemilatticeTable,
    pub characters: Vec<Character>,
    pub maximal: Vec<usize>,
    pub boundary: Vec<usize>,
}

impl Spectrum {
    pub fn boundary_characters(&self) -> impl Iterator<Item = &Character> {
        self.boundary.iter().map(|&i| &self.characters[i])
    }

    pub fn position(&self, chi: &Character) -> Option<usize> {
        self.characters.iter().position(|c| c == chi)
    }

    pub fn in_boundary(&self, chi: &Character) -> bool {
        self.position(chi).is_some_and(|i| self.boundary.contains(&i))
    }
}

/// Ω-characters of a finite `𝒥`. Every filter of a finite semilattice has a
/// least member, so the candidates are the principal filters `χ_X`.
pub fn enumerate_characters(p: &Presentation, table: &SemilatticeTable) -> Result<Vec<Character>> {
    if !table.is_complete() {
        return Err(Error::InfiniteSemilattice);
    }
    let mut out = Vec::new();
    for (_, x) in table.nonempty() {
        if union_condition(p, table, x) {
            out.push(Character::Principal(x.clone()));
        }
    }
    Ok(out)
}

/// No `Y ⊇ X` is the union of sub-ideals of `Y` that miss `X`.
fn union_condition(p: &Presentation, table: &SemilatticeTable, x: &Ideal) -> bool {
    for (_, y) in table.nonempty() {
        if !x.subset(p, y) {
            continue;
        }
        let parts: Vec<&Ideal> = table.nonempty().map(|(_, z)| z).filter(|z| z.subset(p, y) && !x.subset(p, z)).collect();
        if y.gens().iter().all(|g| parts.iter().any(|z| z.contains(p, g))) {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicSet {
    pub x: Ideal,
    pub f: Vec<Ideal>,
}

/// Indices of `Ω(X;𝔣)` within `chars`.
pub fn basic_set(p: &Presentation, chars: &[Character], b: &BasicSet) -> Result<Vec<usize>> {
    if b.f.iter().any(|y| y.is_empty() || !y.subset(p, &b.x)) {
        return Err(Error::PreconditionViolated("basic set family must be nonempty sub-ideals of X".into()));
    }
    Ok((0..chars.len())
        .filter(|&i| chars[i].value(p, &b.x) && b.f.iter().all(|y| !chars[i].value(p, y)))
        .collect())
}

/// The smallest basic neighbourhood of `χ_X`.
fn minimal_neighbourhood(p: &Presentation, table: &SemilatticeTable, x: &Ideal) -> BasicSet {
    let f = table.nonempty().map(|(_, y)| y).filter(|y| y.subset(p, x) && !x.subset(p, y)).cloned().collect();
    BasicSet { x: x.clone(), f }
}

/// Whether `χ` meets some member of every cover of every ideal in its filter.
pub fn is_tight(p: &Presentation, table: &SemilatticeTable, chi: &Character) -> Result<bool> {
    for (_, x) in table.nonempty() {
        if !chi.value(p, x) {
            continue;
        }
        let zeros: Vec<Ideal> = table.nonempty().map(|(_, z)| z).filter(|z| z.subset(p, x) && !chi.value(p, z)).cloned().collect();
        if is_cover(p, table, &zeros, x)?.covers {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Characters, maximal characters and `∂Ω = closure(Ω_max)` for a finite
/// hull; the closure is taken through basic neighbourhoods.
pub fn spectrum(p: &Presentation, h: &HullClosure) -> Result<Spectrum> {
    let table = constructible_ideals(p, h)?;
    let characters = enumerate_characters(p, &table)?;
    let ideal_of = |c: &Character| match c {
        Character::Principal(x) => x.clone(),
        _ => unreachable!("finite spectra are principal"),
    };
    let maximal: Vec<usize> = (0..characters.len())
        .filter(|&i| {
            let xi = ideal_of(&characters[i]);
            !(0..characters.len()).any(|j| {
                let xj = ideal_of(&characters[j]);
                j != i && xj.subset(p, &xi) && !xi.subset(p, &xj)
            })
        })
        .collect();
    let max_chars: Vec<Character> = maximal.iter().map(|&i| characters[i].clone()).collect();
    let mut boundary = Vec::new();
    for (i, c) in characters.iter().enumerate() {
        let nb = minimal_neighbourhood(p, &table, &ideal_of(c));
        if !basic_set(p, &max_chars, &nb)?.is_empty() {
            boundary.push(i);
        }
    }
    Ok(Spectrum { table, characters, maximal, boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hull::generate_hull;

    fn edge_spectrum() -> (Presentation, Spectrum) {
        let p = fixtures::edge();
        let h = generate_hull(&p, 4).unwrap();
        let s = spectrum(&p, &h).unwrap();
        (p, s)
    }

    fn names(p: &Presentation, cs: impl Iterator<Item = Character>) -> Vec<String> {
        cs.map(|c| c.render(p)).collect()
    }

    #[test]
    fn edge_semilattice() {
        let (p, s) = edge_spectrum();
        let r: Vec<String> = s.table.ideals().iter().map(|x| x.render(&p)).collect();
        assert_eq!(r, ["∅", "v𝔠", "w𝔠", "e𝔠"]);
        assert_eq!(names(&p, s.characters.iter().cloned()), ["χ_v", "χ_w", "χ_e"]);
        assert_eq!(names(&p, s.boundary_characters().cloned()), ["χ_w", "χ_e"]);
    }

    #[test]
    fn edge_covers_and_tightness() {
        let (p, s) = edge_spectrum();
        let id = |t: &str| Ideal::principal(p.morphism(t).unwrap());
        assert!(is_cover(&p, &s.table, &[id("e")], &id("v")).unwrap().covers);
        assert!(is_cover(&p, &s.table, &[id("w")], &id("w")).unwrap().covers);
        assert!(is_cover(&p, &s.table, &[id("v")], &id("e")).is_err());
        let tight: Vec<bool> = s.characters.iter().map(|c| is_tight(&p, &s.table, c).unwrap()).collect();
        assert_eq!(tight, [false, true, true]);
        let b = BasicSet { x: id("v"), f: vec![id("e")] };
        assert_eq!(basic_set(&p, &s.characters, &b).unwrap(), vec![0]);
    }

    #[test]
    fn free_monoid_cover_witness() {
        let p = fixtures::free2();
        let h = generate_hull(&p, 2).unwrap();
        let t = constructible_ideals(&p, &h).unwrap();
        let a = Ideal::principal(p.morphism("a").unwrap());
        let all = Ideal::principal(p.morphism("ε").unwrap());
        let v = is_cover(&p, &t, &[a], &all).unwrap();
        assert!(!v.covers);
        assert_eq!(v.witness.unwrap().render(&p), "b𝔠");
    }

    #[test]
    fn ray_characters() {
        let p = fixtures::free2();
        let a = p.morphism("a").unwrap();
        let b = p.morphism("b").unwrap();
        let ab = p.morphism("ab").unwrap();
        let chi = Character::ray(&p, ab.clone(), b.clone()).unwrap();
        assert_eq!(chi, Character::ray(&p, a.clone(), b.clone()).unwrap());
        assert_eq!(chi.render(&p), "χ[a(b)^∞]");
        assert!(chi.value(&p, &Ideal::principal(p.morphism("abbb").unwrap())));
        assert!(!chi.value(&p, &Ideal::principal(b.clone())));
        let s = PiecewiseBijection::from_morphism(&a).inverse(&p);
        assert_eq!(act(&p, &s, &chi).unwrap().render(&p), "χ[(b)^∞]");
        assert!(act(&p, &PiecewiseBijection::from_morphism(&b).inverse(&p), &chi).is_err());
    }
}
