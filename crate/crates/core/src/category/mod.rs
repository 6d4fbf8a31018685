//! Left cancellative small categories under several presentation classes.
//!
//! Every morphism is stored as a normal-form word over the letters of its
//! presentation together with its domain and target objects. Identities have
//! empty words.

mod kgraph;
mod nk;
mod paths;
mod product;
mod table;
mod validate;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

pub use kgraph::KGraph;
pub use paths::PathCategory;
pub use table::{FiniteTable, GroupoidSub};
pub use validate::{validate, Certification, ValidationReport, Verdict};

pub type ObjectId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub word: Vec<u32>,
    pub dom: ObjectId,
    pub tgt: ObjectId,
}

impl Morphism {
    pub fn identity(o: ObjectId) -> Self {
        Morphism { word: Vec::new(), dom: o, tgt: o }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

impl Ord for Morphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.tgt.cmp(&other.tgt))
            .then_with(|| self.dom.cmp(&other.dom))
    }
}

impl PartialOrd for Morphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    FiniteTable,
    GraphPath,
    KGraph,
    FreeMonoid,
    NkMonoid,
    GroupoidSub,
    DirectProduct,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Class::FiniteTable => "FiniteTable",
            Class::GraphPath => "GraphPath",
            Class::KGraph => "KGraph",
            Class::FreeMonoid => "FreeMonoid",
            Class::NkMonoid => "NkMonoid",
            Class::GroupoidSub => "GroupoidSub",
            Class::DirectProduct => "DirectProduct",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Kind {
    Table(FiniteTable),
    GroupoidSub(GroupoidSub),
    Path(PathCategory),
    KGraph(KGraph),
    Nk(usize),
    Product(Box<Presentation>, Box<Presentation>),
}

/// An immutable, validated-on-construction category presentation.
#[derive(Clone, Debug)]
pub struct Presentation {
    objects: Vec<String>,
    kind: Kind,
}

pub type AlignmentSet = Vec<(Morphism, Morphism)>;

impl Presentation {
    pub(crate) fn from_parts(objects: Vec<String>, kind: Kind) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::MalformedPresentation("no objects".into()));
        }
        let mut seen = BTreeSet::new();
        for o in &objects {
            if !seen.insert(o.as_str()) {
                return Err(Error::MalformedPresentation(format!("duplicate object label {o}")));
            }
        }
        Ok(Presentation { objects, kind })
    }

    /// Path category of a finite directed graph; `edges` are `(name, dom, tgt)`.
    pub fn graph_path(objects: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let cat = PathCategory::new(&objects, edges, false)?;
        Self::from_parts(objects, Kind::Path(cat))
    }

    /// Free monoid on the given letters.
    pub fn free_monoid(letters: &[&str]) -> Result<Self> {
        let objects = vec!["ε".to_string()];
        let edges: Vec<(&str, &str, &str)> = letters.iter().map(|l| (*l, "ε", "ε")).collect();
        let cat = PathCategory::new(&objects, &edges, true)?;
        Self::from_parts(objects, Kind::Path(cat))
    }

    /// The monoid ℕ^k.
    pub fn nk_monoid(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::MalformedPresentation("k must be positive".into()));
        }
        Self::from_parts(vec!["0".to_string()], Kind::Nk(k))
    }

    /// A k-graph given by coloured edges `(name, dom, tgt, colour)` and
    /// factorization squares `(x, y, y2, x2)` meaning `x y = y2 x2`.
    pub fn kgraph(
        k: usize,
        objects: &[&str],
        edges: &[(&str, &str, &str, usize)],
        squares: &[(&str, &str, &str, &str)],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let g = KGraph::new(k, &objects, edges, squares)?;
        Self::from_parts(objects, Kind::KGraph(g))
    }

    /// A finite category given by its non-identity elements `(name, dom, tgt)`
    /// and the products of composable non-identity pairs `(c, d, cd)`.
    /// Identities are referred to by object label.
    pub fn finite_table(
        objects: &[&str],
        elements: &[(&str, &str, &str)],
        products: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let t = FiniteTable::new(&objects, elements, products)?;
        Self::from_parts(objects, Kind::Table(t))
    }

    /// The subcategory of a finite groupoid spanned by the chosen elements.
    pub fn groupoid_sub(ambient: FiniteGroupoid, chosen: &[usize]) -> Result<Self> {
        let (objects, g) = GroupoidSub::new(ambient, chosen)?;
        Self::from_parts(objects, Kind::GroupoidSub(g))
    }

    pub fn direct_product(left: Presentation, right: Presentation) -> Result<Self> {
        let mut objects = Vec::new();
        for l in &left.objects {
            for r in &right.objects {
                objects.push(format!("({l},{r})"));
            }
        }
        Self::from_parts(objects, Kind::Product(Box::new(left), Box::new(right)))
    }

    pub fn class(&self) -> Class {
        match &self.kind {
            Kind::Table(_) => Class::FiniteTable,
            Kind::GroupoidSub(_) => Class::GroupoidSub,
            Kind::Path(p) if p.is_monoid() => Class::FreeMonoid,
            Kind::Path(_) => Class::GraphPath,
            Kind::KGraph(_) => Class::KGraph,
            Kind::Nk(_) => Class::NkMonoid,
            Kind::Product(..) => Class::DirectProduct,
        }
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_id(&self, label: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == label).map(|i| i as ObjectId)
    }

    pub fn is_monoid(&self) -> bool {
        self.objects.len() == 1
    }

    pub fn identity(&self, o: ObjectId) -> Morphism {
        Morphism::identity(o)
    }

    pub fn identities(&self) -> Vec<Morphism> {
        (0..self.objects.len() as ObjectId).map(Morphism::identity).collect()
    }

    /// Number of distinct letters words are built from.
    pub fn letter_count(&self) -> usize {
        match &self.kind {
            Kind::Table(t) => t.letter_count(),
            Kind::GroupoidSub(g) => g.table().letter_count(),
            Kind::Path(p) => p.letter_count(),
            Kind::KGraph(g) => g.letter_count(),
            Kind::Nk(k) => *k,
            Kind::Product(l, r) => l.letter_count() + r.letter_count(),
        }
    }

    /// Identities together with the one-letter morphisms.
    pub fn generators(&self) -> Vec<Morphism> {
        let mut out = self.identities();
        out.extend(self.letters());
        out
    }

    /// One-letter morphisms.
    pub fn letters(&self) -> Vec<Morphism> {
        match &self.kind {
            Kind::Table(t) => t.letters(),
            Kind::GroupoidSub(g) => g.table().letters(),
            Kind::Path(p) => p.letters(),
            Kind::KGraph(g) => g.letters(),
            Kind::Nk(k) => (0..*k as u32).map(|i| Morphism { word: vec![i], dom: 0, tgt: 0 }).collect(),
            Kind::Product(l, r) => {
                let nr = r.object_count() as u32;
                let off = l.letter_count() as u32;
                let mut out = Vec::new();
                for m in l.letters() {
                    for o in 0..nr {
                        out.push(product::pair(&m, &Morphism::identity(o), off, nr));
                    }
                }
                for m in r.letters() {
                    for o in 0..l.object_count() as u32 {
                        out.push(product::pair(&Morphism::identity(o), &m, off, nr));
                    }
                }
                out.sort();
                out
            }
        }
    }

    pub fn compose(&self, c: &Morphism, d: &Morphism) -> Option<Morphism> {
        if c.dom != d.tgt {
            return None;
        }
        if c.is_identity() {
            return Some(d.clone());
        }
        if d.is_identity() {
            return Some(c.clone());
        }
        match &self.kind {
            Kind::Table(t) => t.compose(c, d),
            Kind::GroupoidSub(g) => g.table().compose(c, d),
            Kind::Path(_) => {
                let mut word = c.word.clone();
                word.extend_from_slice(&d.word);
                Some(Morphism { word, dom: d.dom, tgt: c.tgt })
            }
            Kind::KGraph(g) => Some(g.compose(c, d)),
            Kind::Nk(_) => Some(nk::compose(c, d)),
            Kind::Product(l, r) => product::compose(l, r, c, d),
        }
    }

    /// Composes a non-empty sequence left to right.
    pub fn compose_all(&self, ms: &[Morphism]) -> Option<Morphism> {
        let mut it = ms.iter();
        let mut acc = it.next()?.clone();
        for m in it {
            acc = self.compose(&acc, m)?;
        }
        Some(acc)
    }

    /// The unique `x` with `m = c x`, if any.
    pub fn divide_left(&self, c: &Morphism, m: &Morphism) -> Option<Morphism> {
        if c.tgt != m.tgt {
            return None;
        }
        if c.is_identity() {
            return Some(m.clone());
        }
        match &self.kind {
            Kind::Table(t) => t.divide_left(c, m),
            Kind::GroupoidSub(g) => g.table().divide_left(c, m),
            Kind::Path(_) => {
                if m.word.len() >= c.word.len() && m.word[..c.word.len()] == c.word[..] {
                    let rest = m.word[c.word.len()..].to_vec();
                    Some(Morphism { word: rest, dom: m.dom, tgt: c.dom })
                } else {
                    None
                }
            }
            Kind::KGraph(g) => g.divide_left(c, m),
            Kind::Nk(k) => nk::divide_left(*k, c, m),
            Kind::Product(l, r) => product::divide_left(l, r, c, m),
        }
    }

    /// Whether `m ∈ c𝔠`.
    pub fn in_ideal(&self, c: &Morphism, m: &Morphism) -> bool {
        self.divide_left(c, m).is_some()
    }

    /// Invertible morphisms with target `o`. Only finite tables and groupoid
    /// subcategories can have any besides the identity.
    pub fn invertibles_into(&self, o: ObjectId) -> Vec<Morphism> {
        if !matches!(self.kind, Kind::Table(_) | Kind::GroupoidSub(_)) {
            return vec![self.identity(o)];
        }
        let all = self.all_morphisms().unwrap_or_default();
        all.iter()
            .filter(|u| u.tgt == o)
            .filter(|u| {
                all.iter().any(|v| {
                    self.compose(u, v).is_some_and(|x| x.is_identity()) && self.compose(v, u).is_some_and(|x| x.is_identity())
                })
            })
            .cloned()
            .collect()
    }

    /// A minimal complete set of pairs `(x, y)` with `c x = d y` whose
    /// principal ideals `c x 𝔠` cover `c𝔠 ∩ d𝔠`.
    pub fn align(&self, c: &Morphism, d: &Morphism) -> Result<AlignmentSet> {
        if c.tgt != d.tgt {
            return Ok(Vec::new());
        }
        if c.is_identity() {
            return Ok(vec![(d.clone(), Morphism::identity(d.dom))]);
        }
        if d.is_identity() {
            return Ok(vec![(Morphism::identity(c.dom), c.clone())]);
        }
        let out = match &self.kind {
            Kind::Table(_) | Kind::GroupoidSub(_) => table::finite_align(self, c, d),
            Kind::Path(_) => {
                if let Some(x) = self.divide_left(c, d) {
                    vec![(x, Morphism::identity(d.dom))]
                } else if let Some(y) = self.divide_left(d, c) {
                    vec![(Morphism::identity(c.dom), y)]
                } else {
                    Vec::new()
                }
            }
            Kind::KGraph(g) => g.align(c, d),
            Kind::Nk(k) => vec![nk::align(*k, c, d)],
            Kind::Product(l, r) => product::align(l, r, c, d)?,
        };
        Ok(out)
    }

    /// All morphisms of word length at most `n`, sorted.
    pub fn ball(&self, n: usize) -> Vec<Morphism> {
        let mut out = match &self.kind {
            Kind::Table(t) => t.all(&self.identities(), n),
            Kind::GroupoidSub(g) => g.table().all(&self.identities(), n),
            Kind::Path(p) => p.ball(self.object_count(), n),
            Kind::KGraph(g) => g.ball(self.object_count(), n),
            Kind::Nk(k) => nk::ball(*k, n),
            Kind::Product(l, r) => product::ball(l, r, n),
        };
        out.sort();
        out.dedup();
        out
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            Kind::Table(_) | Kind::GroupoidSub(_) => true,
            Kind::Path(p) => p.is_acyclic(),
            Kind::KGraph(g) => g.is_acyclic(),
            Kind::Nk(_) => false,
            Kind::Product(l, r) => l.is_finite() && r.is_finite(),
        }
    }

    /// Upper bound on word length in a finite category.
    pub fn diameter(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        match &self.kind {
            Kind::Table(_) | Kind::GroupoidSub(_) => Some(1),
            Kind::Path(p) => Some(p.longest_path()),
            Kind::KGraph(g) => Some(g.longest_path()),
            Kind::Nk(_) => None,
            Kind::Product(l, r) => Some(l.diameter()? + r.diameter()?),
        }
    }

    /// Every morphism, when the category is finite.
    pub fn all_morphisms(&self) -> Option<Vec<Morphism>> {
        self.diameter().map(|d| self.ball(d))
    }

    /// Morphisms with the given target, drawn from `ball(n)`.
    pub fn ball_from(&self, o: ObjectId, n: usize) -> Vec<Morphism> {
        self.ball(n).into_iter().filter(|m| m.tgt == o).collect()
    }

    /// Degree vector for P-graph classes.
    pub fn degree(&self, m: &Morphism) -> Option<Vec<u32>> {
        match &self.kind {
            Kind::KGraph(g) => Some(g.degree(&m.word)),
            Kind::Nk(k) => Some(nk::degree(*k, m)),
            Kind::Product(l, r) => {
                let (a, b) = product::split(l, r, m);
                let mut d = l.degree(&a)?;
                d.extend(r.degree(&b)?);
                Some(d)
            }
            _ => None,
        }
    }

    /// Whether right cancellation is a structural property of the class.
    pub fn structurally_cancellative(&self) -> bool {
        match &self.kind {
            Kind::Table(_) => false,
            Kind::GroupoidSub(_) | Kind::Path(_) | Kind::KGraph(_) | Kind::Nk(_) => true,
            Kind::Product(l, r) => l.structurally_cancellative() && r.structurally_cancellative(),
        }
    }

    /// Ambient groupoid element of a morphism of a `GroupoidSub` presentation.
    pub fn ambient_element(&self, m: &Morphism) -> Option<usize> {
        match &self.kind {
            Kind::GroupoidSub(g) => Some(g.ambient_element(m)),
            _ => None,
        }
    }

    /// Components of a morphism of a direct product.
    pub fn split_product(&self, m: &Morphism) -> Option<(&Presentation, Morphism, &Presentation, Morphism)> {
        match &self.kind {
            Kind::Product(l, r) => {
                let (a, b) = product::split(l, r, m);
                Some((l, a, r, b))
            }
            _ => None,
        }
    }

    pub fn ambient_groupoid(&self) -> Option<&FiniteGroupoid> {
        match &self.kind {
            Kind::GroupoidSub(g) => Some(g.ambient()),
            _ => None,
        }
    }

    pub fn render(&self, m: &Morphism) -> String {
        match &self.kind {
            Kind::Nk(k) => nk::render(*k, m),
            Kind::Product(l, r) => {
                let (a, b) = product::split(l, r, m);
                format!("({},{})", l.render(&a), r.render(&b))
            }
            _ => {
                if m.is_identity() {
                    return self.objects[m.tgt as usize].clone();
                }
                let names: Vec<&str> = m.word.iter().map(|&i| self.letter_name(i)).collect();
                if names.iter().all(|n| n.chars().count() == 1) {
                    names.concat()
                } else {
                    names.join(".")
                }
            }
        }
    }

    pub fn letter_name(&self, i: u32) -> &str {
        match &self.kind {
            Kind::Table(t) => t.name(i),
            Kind::GroupoidSub(g) => g.table().name(i),
            Kind::Path(p) => p.name(i),
            Kind::KGraph(g) => g.name(i),
            Kind::Nk(_) | Kind::Product(..) => "?",
        }
    }

    /// Parses a rendered morphism: an object label for an identity, or a
    /// word of letter names separated by `.`/whitespace (single-character
    /// letters may also be juxtaposed).
    pub fn morphism(&self, text: &str) -> Result<Morphism> {
        let text = text.trim();
        let bad = || Error::MalformedPresentation(format!("cannot parse morphism `{text}`"));
        match &self.kind {
            Kind::Nk(k) => nk::parse(*k, text).ok_or_else(bad),
            Kind::Product(l, r) => {
                let inner = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
                let cut = product::top_level_comma(inner).ok_or_else(bad)?;
                let a = l.morphism(&inner[..cut])?;
                let b = r.morphism(&inner[cut + 1..])?;
                Ok(product::pair(&a, &b, l.letter_count() as u32, r.object_count() as u32))
            }
            _ => {
                if let Some(o) = self.object_id(text) {
                    return Ok(Morphism::identity(o));
                }
                if self.is_monoid() && (text == "1" || text == "ε" || text.is_empty()) {
                    return Ok(Morphism::identity(0));
                }
                let tokens: Vec<String> = if text.contains('.') || text.contains(char::is_whitespace) {
                    text.split(|c: char| c == '.' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| s.to_string())
                        .collect()
                } else if let Some(i) = self.letter_index(text) {
                    return self.letter_morphism(i).ok_or_else(bad);
                } else {
                    text.chars().map(|c| c.to_string()).collect()
                };
                let mut parts = Vec::new();
                for t in tokens {
                    let i = self.letter_index(&t).ok_or_else(bad)?;
                    parts.push(self.letter_morphism(i).ok_or_else(bad)?);
                }
                self.compose_all(&parts).ok_or_else(bad)
            }
        }
    }

    fn letter_index(&self, name: &str) -> Option<u32> {
        (0..self.letter_count() as u32).find(|&i| self.letter_name(i) == name)
    }

    fn letter_morphism(&self, i: u32) -> Option<Morphism> {
        self.letters().into_iter().find(|m| m.word == [i])
    }
}
