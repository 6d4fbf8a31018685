//! The left inverse hull as piecewise partial bijections.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::category::{Morphism, Presentation};
use crate::error::Result;
use crate::ideals::Ideal;

/// A partial bijection given by pieces `(a, b)` acting as `b t ↦ a t` on
/// `b𝔠`. The empty piece list is the zero element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PiecewiseBijection {
    pieces: Vec<(Morphism, Morphism)>,
}

impl PiecewiseBijection {
    pub fn zero() -> Self {
        PiecewiseBijection { pieces: Vec::new() }
    }

    /// The map `𝔡(c)𝔠 → c𝔠, x ↦ cx`.
    pub fn from_morphism(c: &Morphism) -> Self {
        PiecewiseBijection { pieces: vec![(c.clone(), Morphism::identity(c.dom))] }
    }

    /// The identity on a union of principal ideals.
    pub fn identity_on(x: &Ideal) -> Self {
        PiecewiseBijection { pieces: x.gens().iter().map(|g| (g.clone(), g.clone())).collect() }
    }

    pub fn from_pieces(p: &Presentation, pieces: Vec<(Morphism, Morphism)>) -> Self {
        Self::canonical(p, pieces)
    }

    pub fn pieces(&self) -> &[(Morphism, Morphism)] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_idempotent(&self) -> bool {
        self.pieces.iter().all(|(a, b)| a == b)
    }

    /// Largest `|a| + |b|` over the pieces.
    pub fn weight(&self) -> usize {
        self.pieces.iter().map(|(a, b)| a.len() + b.len()).max().unwrap_or(0)
    }

    fn subsumes(p: &Presentation, big: &(Morphism, Morphism), small: &(Morphism, Morphism)) -> bool {
        match p.divide_left(&big.1, &small.1) {
            Some(x) => p.compose(&big.0, &x).as_ref() == Some(&small.0),
            None => false,
        }
    }

    /// `(a, b)` and `(au, bu)` agree for invertible `u`; keep the smallest `bu`.
    fn normalize_piece(p: &Presentation, (a, b): (Morphism, Morphism)) -> (Morphism, Morphism) {
        let units = p.invertibles_into(b.dom);
        if units.len() <= 1 {
            return (a, b);
        }
        units
            .iter()
            .filter_map(|u| Some((p.compose(&b, u)?, p.compose(&a, u)?)))
            .min()
            .map(|(bu, au)| (au, bu))
            .unwrap_or((a, b))
    }

    fn canonical(p: &Presentation, pieces: Vec<(Morphism, Morphism)>) -> Self {
        let mut pieces: Vec<_> = pieces.into_iter().map(|x| Self::normalize_piece(p, x)).collect();
        pieces.sort();
        pieces.dedup();
        let keep: Vec<bool> = (0..pieces.len())
            .map(|i| {
                !(0..pieces.len()).any(|j| {
                    j != i
                        && Self::subsumes(p, &pieces[j], &pieces[i])
                        && !(Self::subsumes(p, &pieces[i], &pieces[j]) && i < j)
                })
            })
            .collect();
        let pieces = pieces.into_iter().zip(keep).filter_map(|(x, k)| k.then_some(x)).collect();
        PiecewiseBijection { pieces }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, p: &Presentation, other: &Self) -> Result<Self> {
        let mut pieces = Vec::new();
        for (a, b) in &self.pieces {
            for (a2, b2) in &other.pieces {
                for (u, v) in p.align(a2, b)? {
                    let av = p.compose(a, &v).expect("alignment endpoints");
                    let bu = p.compose(b2, &u).expect("alignment endpoints");
                    pieces.push((av, bu));
                }
            }
        }
        Ok(Self::canonical(p, pieces))
    }

    pub fn inverse(&self, p: &Presentation) -> Self {
        Self::canonical(p, self.pieces.iter().map(|(a, b)| (b.clone(), a.clone())).collect())
    }

    pub fn apply(&self, p: &Presentation, x: &Morphism) -> Option<Morphism> {
        self.pieces
            .iter()
            .find_map(|(a, b)| p.divide_left(b, x).map(|t| p.compose(a, &t).expect("piece endpoints")))
    }

    pub fn domain(&self, p: &Presentation) -> Ideal {
        Ideal::from_gens(p, self.pieces.iter().map(|(_, b)| b.clone()).collect())
    }

    pub fn image(&self, p: &Presentation) -> Ideal {
        Ideal::from_gens(p, self.pieces.iter().map(|(a, _)| a.clone()).collect())
    }

    /// Restriction to `x ∩ dom(self)`.
    pub fn restrict(&self, p: &Presentation, x: &Ideal) -> Result<Self> {
        self.compose(p, &Self::identity_on(x))
    }

    /// Checks that the pieces glue to a single-valued injective map.
    pub fn is_consistent(&self, p: &Presentation) -> Result<bool> {
        for (i, (a, b)) in self.pieces.iter().enumerate() {
            for (a2, b2) in self.pieces.iter().skip(i + 1) {
                for (x, y) in p.align(b, b2)? {
                    if p.compose(a, &x) != p.compose(a2, &y) {
                        return Ok(false);
                    }
                }
                for (x, y) in p.align(a, a2)? {
                    if p.compose(b, &x) != p.compose(b2, &y) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn render(&self, p: &Presentation) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|(a, b)| {
                if a == b {
                    format!("id[{}]", p.render(b))
                } else if b.is_identity() {
                    p.render(a)
                } else if a.is_identity() {
                    format!("{}^-1", p.render(b))
                } else {
                    format!("{}·{}^-1", p.render(a), p.render(b))
                }
            })
            .collect();
        parts.join(" ∪ ")
    }
}

/// A finite portion of `I_l` closed under products and inverses.
#[derive(Clone, Debug, Serialize)]
pub struct HullClosure {
    elements: Vec<PiecewiseBijection>,
    bound: usize,
    complete: bool,
}

impl HullClosure {
    pub fn elements(&self) -> &[PiecewiseBijection] {
        &self.elements
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &PiecewiseBijection> {
        self.elements.iter().filter(|s| !s.is_zero())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn contains(&self, s: &PiecewiseBijection) -> bool {
        self.elements.binary_search(s).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.elements.first().is_some_and(|s| s.is_zero())
    }

    pub fn idempotents(&self) -> impl Iterator<Item = &PiecewiseBijection> {
        self.elements.iter().filter(|s| s.is_idempotent())
    }
}

/// Closure of `{from_morphism(c)}` under products and inverses. Finite
/// categories are closed completely; otherwise seeds come from `ball(bound)`
/// and elements of weight above `bound` are discarded.
pub fn generate_hull(p: &Presentation, bound: usize) -> Result<HullClosure> {
    let finite = p.is_finite();
    let seeds = match p.all_morphisms() {
        Some(all) => all,
        None => p.ball(bound),
    };
    let admit = |s: &PiecewiseBijection| finite || s.weight() <= bound;
    let mut set: BTreeSet<PiecewiseBijection> = BTreeSet::new();
    let mut frontier: Vec<PiecewiseBijection> = Vec::new();
    for c in &seeds {
        for s in [PiecewiseBijection::from_morphism(c), PiecewiseBijection::from_morphism(c).inverse(p)] {
            if admit(&s) && set.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    while !frontier.is_empty() {
        let current: Vec<PiecewiseBijection> = set.iter().cloned().collect();
        let mut next = Vec::new();
        for x in &frontier {
            for y in &current {
                for s in [x.compose(p, y)?, y.compose(p, x)?] {
                    if admit(&s) && !set.contains(&s) {
                        set.insert(s.clone());
                        next.push(s);
                    }
                }
            }
            let xi = x.inverse(p);
            if admit(&xi) && set.insert(xi.clone()) {
                next.push(xi);
            }
        }
        frontier = next;
    }
    Ok(HullClosure { elements: set.into_iter().collect(), bound, complete: finite })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FixSet {
    /// The fixed points form `⋃ X`; `exact` is false for bounded windows.
    IdealUnion { ideal: Ideal, exact: bool },
    /// `point` is fixed but `extension` (a right multiple of it) is not.
    NotIdealUnion { point: Morphism, extension: Morphism },
}

/// Expresses a set of points as a finite union of principal right ideals,
/// judged inside `window` (exact when `window` is the whole category).
pub fn ideal_union_of_points(p: &Presentation, points: &BTreeSet<Morphism>, window: &[Morphism], exact: bool) -> FixSet {
    for x in points {
        for t in window.iter().filter(|t| t.tgt == x.dom) {
            if let Some(xt) = p.compose(x, t) {
                if window.contains(&xt) && !points.contains(&xt) {
                    return FixSet::NotIdealUnion { point: x.clone(), extension: xt };
                }
            }
        }
    }
    FixSet::IdealUnion { ideal: Ideal::from_gens(p, points.iter().cloned().collect()), exact }
}

/// `{x ∈ dom(s) : s(x) = x}` as a finite union of principal ideals.
pub fn fix_set(p: &Presentation, s: &PiecewiseBijection, bound: usize) -> FixSet {
    if p.structurally_cancellative() {
        let gens = s.pieces().iter().filter(|(a, b)| a == b).map(|(_, b)| b.clone()).collect();
        return FixSet::IdealUnion { ideal: Ideal::from_gens(p, gens), exact: true };
    }
    let (window, exact) = match p.all_morphisms() {
        Some(all) => (all, true),
        None => (p.ball(bound), false),
    };
    let points: BTreeSet<Morphism> = window.iter().filter(|x| s.apply(p, x).as_ref() == Some(*x)).cloned().collect();
    ideal_union_of_points(p, &points, &window, exact)
}

/// A partial map given pointwise on a finite window; used to exercise the
/// Hausdorff criterion on maps that need not come from the hull.
#[derive(Clone, Debug, Default)]
pub struct PointwiseMap {
    pub graph: BTreeMap<Morphism, Morphism>,
}

impl PointwiseMap {
    pub fn fix_set(&self, p: &Presentation, window: &[Morphism]) -> FixSet {
        let points = self.graph.iter().filter(|(x, y)| x == y).map(|(x, _)| x.clone()).collect();
        ideal_union_of_points(p, &points, window, false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HausdorffVerdict {
    Certified,
    CertifiedAtBound(usize),
    Counterexample { element: String, point: Morphism, extension: Morphism },
}

impl HausdorffVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, HausdorffVerdict::Counterexample { .. })
    }
}

pub fn hausdorff_check(p: &Presentation, h: &HullClosure) -> HausdorffVerdict {
    let mut exact = h.is_complete();
    for s in h.elements() {
        match fix_set(p, s, h.bound()) {
            FixSet::IdealUnion { exact: e, .. } => exact &= e,
            FixSet::NotIdealUnion { point, extension } => {
                return HausdorffVerdict::Counterexample { element: s.render(p), point, extension }
            }
        }
    }
    if exact {
        HausdorffVerdict::Certified
    } else {
        HausdorffVerdict::CertifiedAtBound(h.bound())
    }
}

/// The Hausdorff criterion applied to pointwise maps on a window.
pub fn hausdorff_check_pointwise(p: &Presentation, maps: &[(String, PointwiseMap)], window: &[Morphism]) -> HausdorffVerdict {
    for (name, m) in maps {
        if let FixSet::NotIdealUnion { point, extension } = m.fix_set(p, window) {
            return HausdorffVerdict::Counterexample { element: name.clone(), point, extension };
        }
    }
    HausdorffVerdict::CertifiedAtBound(window.iter().map(|m| m.len()).max().unwrap_or(0))
}

/// Renders a hull listing, one element per line.
pub fn render_hull(p: &Presentation, h: &HullClosure) -> String {
    let mut out = String::new();
    for s in h.elements() {
        let _ = writeln!(out, "{}", s.render(p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn edge_hull_has_six_elements() {
        let p = fixtures::edge();
        let h = generate_hull(&p, 4).unwrap();
        let names: Vec<String> = h.elements().iter().map(|s| s.render(&p)).collect();
        assert_eq!(names, ["0", "id[v]", "id[w]", "e^-1", "e", "id[e]"]);
        assert!(h.is_complete());
        assert!(h.contains_zero());
    }

    #[test]
    fn edge_compositions() {
        let p = fixtures::edge();
        let e = PiecewiseBijection::from_morphism(&p.morphism("e").unwrap());
        let w = p.morphism("w").unwrap();
        let ei = e.inverse(&p);
        assert_eq!(ei.compose(&p, &e).unwrap(), PiecewiseBijection::identity_on(&Ideal::principal(w)));
        assert_eq!(ei.apply(&p, &p.morphism("e").unwrap()), Some(p.morphism("w").unwrap()));
    }

    #[test]
    fn free_monoid_zero() {
        let p = fixtures::free2();
        let a = PiecewiseBijection::from_morphism(&p.morphism("a").unwrap());
        let b = PiecewiseBijection::from_morphism(&p.morphism("b").unwrap());
        assert!(a.inverse(&p).compose(&p, &b).unwrap().is_zero());
        let h = generate_hull(&p, 3).unwrap();
        assert!(h.contains_zero());
        assert!(!h.is_complete());
    }

    #[test]
    fn n2_hull_at_bound_two() {
        let p = fixtures::n2();
        let h = generate_hull(&p, 2).unwrap();
        assert_eq!(h.len(), 15);
        assert!(!h.contains_zero());
    }

    #[test]
    fn fixed_points() {
        let p = fixtures::free2();
        let s = PiecewiseBijection::from_pieces(&p, vec![(p.morphism("a").unwrap(), p.morphism("b").unwrap())]);
        assert_eq!(fix_set(&p, &s, 3), FixSet::IdealUnion { ideal: Ideal::empty(), exact: true });
        assert_eq!(fix_set(&p, &PiecewiseBijection::zero(), 3), FixSet::IdealUnion { ideal: Ideal::empty(), exact: true });
    }
}
