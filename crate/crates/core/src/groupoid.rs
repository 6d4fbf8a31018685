//! Abstract finite groupoids.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

const NONE: u32 = u32::MAX;

/// A finite groupoid with a dense partial product table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroupoid {
    labels: Vec<String>,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    table: Vec<u32>,
}

impl FiniteGroupoid {
    /// Builds a groupoid from source/range maps (valued in unit elements) and
    /// a product defined on composable pairs `(g, h)` with `source(g) = range(h)`.
    pub fn new(
        labels: Vec<String>,
        source: Vec<usize>,
        range: Vec<usize>,
        product: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        if source.len() != n || range.len() != n {
            return Err(Error::MalformedPresentation("groupoid shape".into()));
        }
        let mut table = vec![NONE; n * n];
        for g in 0..n {
            for h in 0..n {
                if source[g] == range[h] {
                    let gh = product(g, h);
                    if gh >= n {
                        return Err(Error::MalformedPresentation("product out of range".into()));
                    }
                    table[g * n + h] = gh as u32;
                }
            }
        }
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g * n + h] == range[g] as u32 && table[h * n + g] == source[g] as u32)
                .ok_or_else(|| Error::MalformedPresentation(format!("no inverse for {}", labels[g])))?;
        }
        let g = FiniteGroupoid { labels, source, range, inverse, table };
        g.check_axioms().map_err(Error::MalformedPresentation)?;
        Ok(g)
    }

    /// Pair groupoid on the given unit labels; `(r,s)` has range r, source s.
    pub fn pair(units: &[&str]) -> Self {
        let n = units.len();
        let mut labels: Vec<String> = units.iter().map(|s| s.to_string()).collect();
        let mut ends: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        for r in 0..n {
            for s in 0..n {
                if r != s {
                    labels.push(format!("({},{})", units[r], units[s]));
                    ends.push((r, s));
                }
            }
        }
        let idx = |r: usize, s: usize| ends.iter().position(|&e| e == (r, s)).unwrap();
        let source = ends.iter().map(|&(_, s)| s).collect();
        let range = ends.iter().map(|&(r, _)| r).collect();
        Self::new(labels, source, range, |g, h| idx(ends[g].0, ends[h].1)).expect("pair groupoid")
    }

    /// A group viewed as a one-unit groupoid.
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self::transitive(&["*"], g)
    }

    /// The transitive groupoid (pair groupoid) × (group); elements `(r,s;h)`.
    pub fn transitive(units: &[&str], grp: &FiniteGroup) -> Self {
        let n = units.len();
        let m = grp.order();
        let mut ends = Vec::new();
        for r in 0..n {
            for s in 0..n {
                for h in 0..m {
                    if r == s && h == 0 {
                        ends.push((r, s, h));
                    }
                }
            }
        }
        for r in 0..n {
            for s in 0..n {
                for h in 0..m {
                    if !(r == s && h == 0) {
                        ends.push((r, s, h));
                    }
                }
            }
        }
        let labels = ends
            .iter()
            .map(|&(r, s, h)| {
                if r == s && h == 0 {
                    units[r].to_string()
                } else if m == 1 {
                    format!("({},{})", units[r], units[s])
                } else if n == 1 {
                    grp.label(h).to_string()
                } else {
                    format!("({},{};{})", units[r], units[s], grp.label(h))
                }
            })
            .collect();
        let idx = |r: usize, s: usize, h: usize| ends.iter().position(|&e| e == (r, s, h)).unwrap();
        let source = ends.iter().map(|&(_, s, _)| idx(s, s, 0)).collect();
        let range = ends.iter().map(|&(r, _, _)| idx(r, r, 0)).collect();
        Self::new(labels, source, range, |a, b| {
            let (r, _, g) = ends[a];
            let (_, s, h) = ends[b];
            idx(r, s, grp.mul(g, h))
        })
        .expect("transitive groupoid")
    }

    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Self {
        let mut labels = Vec::new();
        let mut source = Vec::new();
        let mut range = Vec::new();
        let mut offsets = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            let off = labels.len();
            offsets.push(off);
            for g in 0..p.len() {
                labels.push(if parts.len() > 1 { format!("{}#{}", p.label(g), i) } else { p.label(g).to_string() });
                source.push(p.source(g) + off);
                range.push(p.range(g) + off);
            }
        }
        let owner = |g: usize| offsets.iter().rposition(|&o| o <= g).unwrap();
        Self::new(labels, source, range, |g, h| {
            let i = owner(g);
            let off = offsets[i];
            parts[i].product(g - off, h - off).unwrap() + off
        })
        .expect("disjoint union")
    }

    /// Subgroupoid on the given elements (which must be closed).
    pub fn subgroupoid(&self, elements: &[usize]) -> Result<Self> {
        let mut keep: Vec<usize> = elements.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let pos = |g: usize| keep.iter().position(|&x| x == g);
        let labels = keep.iter().map(|&g| self.labels[g].clone()).collect();
        let mut source = Vec::new();
        let mut range = Vec::new();
        for &g in &keep {
            source.push(pos(self.source[g]).ok_or(Error::PreconditionViolated("units missing".into()))?);
            range.push(pos(self.range[g]).ok_or(Error::PreconditionViolated("units missing".into()))?);
        }
        for &g in &keep {
            for &h in &keep {
                if let Some(gh) = self.product(g, h) {
                    if pos(gh).is_none() {
                        return Err(Error::PreconditionViolated("element set not closed".into()));
                    }
                }
            }
        }
        Self::new(labels, source, range, |a, b| pos(self.product(keep[a], keep[b]).unwrap()).unwrap())
    }

    /// Full subgroupoid over a set of units.
    pub fn full_subgroupoid(&self, units: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = units.iter().copied().collect();
        let elems: Vec<usize> =
            (0..self.len()).filter(|&g| set.contains(&self.source[g]) && set.contains(&self.range[g])).collect();
        self.subgroupoid(&elems)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn range(&self, g: usize) -> usize {
        self.range[g]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn is_unit(&self, g: usize) -> bool {
        self.source[g] == g && self.range[g] == g
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.is_unit(g)).collect()
    }

    pub fn product(&self, g: usize, h: usize) -> Option<usize> {
        let v = self.table[g * self.len() + h];
        (v != NONE).then_some(v as usize)
    }

    /// Elements with the given source and range.
    pub fn hom(&self, s: usize, r: usize) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.source[g] == s && self.range[g] == r).collect()
    }

    /// Non-unit elements whose range equals their source.
    pub fn nontrivial_isotropy(&self) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.source[g] == self.range[g] && !self.is_unit(g)).collect()
    }

    /// Unit orbits, each sorted, in order of least unit.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for u in self.units() {
            if seen.contains(&u) {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.len()).filter(|&g| self.source[g] == u).map(|g| self.range[g]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            seen.extend(orbit.iter().copied());
            out.push(orbit);
        }
        out
    }

    pub fn is_principal(&self) -> bool {
        self.nontrivial_isotropy().is_empty()
    }

    /// Effectiveness for a discrete groupoid: the interior of the isotropy is
    /// the isotropy itself, so this agrees with principality.
    pub fn is_effective(&self) -> bool {
        self.is_principal()
    }

    /// Exhaustive check of the groupoid axioms.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.len();
        for g in 0..n {
            let (s, r) = (self.source[g], self.range[g]);
            if !self.is_unit(s) || !self.is_unit(r) {
                return Err(format!("endpoints of {} are not units", self.labels[g]));
            }
            if self.product(r, g) != Some(g) || self.product(g, s) != Some(g) {
                return Err(format!("units are not neutral for {}", self.labels[g]));
            }
            let gi = self.inverse[g];
            if self.product(g, gi) != Some(r) || self.product(gi, g) != Some(s) {
                return Err(format!("inverse law fails at {}", self.labels[g]));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let Some(gh) = self.product(g, h) else { continue };
                if self.source[gh] != self.source[h] || self.range[gh] != self.range[g] {
                    return Err("product endpoints".into());
                }
                for k in 0..n {
                    if self.source[h] != self.range[k] {
                        continue;
                    }
                    let hk = self.product(h, k).unwrap();
                    if self.product(gh, k) != self.product(g, hk) {
                        return Err(format!("associativity fails at {},{},{}", self.labels[g], self.labels[h], self.labels[k]));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_shape() {
        let g = FiniteGroupoid::pair(&["1", "2"]);
        assert_eq!(g.len(), 4);
        assert_eq!(g.units(), vec![0, 1]);
        assert!(g.is_principal());
        assert_eq!(g.orbits(), vec![vec![0, 1]]);
    }

    #[test]
    fn group_is_not_principal() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        assert!(!g.is_principal());
        assert!(!g.is_effective());
    }

    #[test]
    fn transitive_with_isotropy() {
        let g = FiniteGroupoid::transitive(&["a", "b"], &FiniteGroup::symmetric3());
        assert_eq!(g.len(), 24);
        assert_eq!(g.orbits().len(), 1);
        assert_eq!(g.nontrivial_isotropy().len(), 10);
    }
}
