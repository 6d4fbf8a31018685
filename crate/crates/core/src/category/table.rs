use std::collections::HashMap;

use super::paths::resolve;
use super::{Morphism, ObjectId, Presentation};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// A finite category given by a composition table. Letter `i` is the
/// `i`-th non-identity element; every morphism has word length at most 1.
#[derive(Clone, Debug)]
pub struct FiniteTable {
    names: Vec<String>,
    ends: Vec<(ObjectId, ObjectId)>,
    table: HashMap<(u32, u32), Morphism>,
}

impl FiniteTable {
    pub(super) fn new(
        objects: &[String],
        elements: &[(&str, &str, &str)],
        products: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let bad = |s: String| Error::MalformedPresentation(s);
        let mut names: Vec<String> = Vec::new();
        let mut ends = Vec::new();
        for (name, dom, tgt) in elements {
            if names.iter().any(|n| n == name) || objects.iter().any(|o| o == name) {
                return Err(bad(format!("duplicate element `{name}`")));
            }
            names.push(name.to_string());
            ends.push((resolve(objects, dom)?, resolve(objects, tgt)?));
        }
        let lookup = |n: &str| -> Result<Morphism> {
            if let Some(o) = objects.iter().position(|o| o == n) {
                return Ok(Morphism::identity(o as ObjectId));
            }
            names
                .iter()
                .position(|x| x == n)
                .map(|i| Morphism { word: vec![i as u32], dom: ends[i].0, tgt: ends[i].1 })
                .ok_or_else(|| bad(format!("unknown element `{n}`")))
        };
        let mut table = HashMap::new();
        for (c, d, cd) in products {
            let (c, d, cd) = (lookup(c)?, lookup(d)?, lookup(cd)?);
            if c.is_identity() || d.is_identity() {
                if (c.is_identity() && cd != d) || (d.is_identity() && cd != c) {
                    return Err(bad("table contradicts an identity law".into()));
                }
                continue;
            }
            if c.dom != d.tgt {
                return Err(bad(format!("product row for non-composable pair {}{}", names[c.word[0] as usize], names[d.word[0] as usize])));
            }
            if cd.dom != d.dom || cd.tgt != c.tgt {
                return Err(bad("product has wrong endpoints".into()));
            }
            if let Some(prev) = table.insert((c.word[0], d.word[0]), cd.clone()) {
                if prev != cd {
                    return Err(bad("conflicting product rows".into()));
                }
            }
        }
        for a in 0..names.len() {
            for b in 0..names.len() {
                if ends[a].0 == ends[b].1 && !table.contains_key(&(a as u32, b as u32)) {
                    return Err(bad(format!("missing product row for {} {}", names[a], names[b])));
                }
            }
        }
        Ok(FiniteTable { names, ends, table })
    }

    pub fn letter_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn letters(&self) -> Vec<Morphism> {
        self.ends
            .iter()
            .enumerate()
            .map(|(i, &(d, t))| Morphism { word: vec![i as u32], dom: d, tgt: t })
            .collect()
    }

    pub(super) fn all(&self, ids: &[Morphism], n: usize) -> Vec<Morphism> {
        let mut out = ids.to_vec();
        if n >= 1 {
            out.extend(self.letters());
        }
        out
    }

    pub(super) fn compose(&self, c: &Morphism, d: &Morphism) -> Option<Morphism> {
        self.table.get(&(c.word[0], d.word[0])).cloned()
    }

    pub(super) fn divide_left(&self, c: &Morphism, m: &Morphism) -> Option<Morphism> {
        if c == m {
            return Some(Morphism::identity(c.dom));
        }
        self.letters()
            .into_iter()
            .filter(|x| x.tgt == c.dom)
            .find(|x| self.compose(c, x).as_ref() == Some(m))
    }
}

/// Exhaustive alignment in a finite category: the maximal principal ideals
/// inside `c𝔠 ∩ d𝔠`, one representative per ideal.
pub(super) fn finite_align(p: &Presentation, c: &Morphism, d: &Morphism) -> Vec<(Morphism, Morphism)> {
    let all = p.all_morphisms().expect("finite category");
    let common: Vec<&Morphism> = all.iter().filter(|m| p.in_ideal(c, m) && p.in_ideal(d, m)).collect();
    let mut reps: Vec<&Morphism> = Vec::new();
    for &m in &common {
        let dominated = common.iter().any(|&o| o != m && p.in_ideal(o, m) && !(p.in_ideal(m, o) && m < o));
        if !dominated {
            reps.push(m);
        }
    }
    reps.into_iter()
        .map(|m| (p.divide_left(c, m).unwrap(), p.divide_left(d, m).unwrap()))
        .collect()
}

/// The subcategory of a finite groupoid formed by a chosen set of elements.
#[derive(Clone, Debug)]
pub struct GroupoidSub {
    ambient: FiniteGroupoid,
    units: Vec<usize>,
    letters: Vec<usize>,
    table: FiniteTable,
}

impl GroupoidSub {
    pub(super) fn new(ambient: FiniteGroupoid, chosen: &[usize]) -> Result<(Vec<String>, Self)> {
        let bad = |s: String| Error::MalformedPresentation(s);
        let mut chosen: Vec<usize> = chosen.to_vec();
        chosen.sort_unstable();
        chosen.dedup();
        if let Some(&g) = chosen.iter().find(|&&g| g >= ambient.len()) {
            return Err(bad(format!("element {g} not in ambient groupoid")));
        }
        let units: Vec<usize> = chosen.iter().copied().filter(|&g| ambient.is_unit(g)).collect();
        let letters: Vec<usize> = chosen.iter().copied().filter(|&g| !ambient.is_unit(g)).collect();
        for &g in &letters {
            for u in [ambient.source(g), ambient.range(g)] {
                if !units.contains(&u) {
                    return Err(bad(format!("identity {} missing from chosen set", ambient.label(u))));
                }
            }
        }
        let objects: Vec<String> = units.iter().map(|&u| ambient.label(u).to_string()).collect();
        let obj = |u: usize| units.iter().position(|&x| x == u).unwrap() as ObjectId;
        let as_morphism = |g: usize| -> Option<Morphism> {
            if ambient.is_unit(g) {
                units.iter().position(|&x| x == g).map(|i| Morphism::identity(i as ObjectId))
            } else {
                letters
                    .iter()
                    .position(|&x| x == g)
                    .map(|i| Morphism { word: vec![i as u32], dom: obj(ambient.source(g)), tgt: obj(ambient.range(g)) })
            }
        };
        let names: Vec<String> = letters.iter().map(|&g| ambient.label(g).to_string()).collect();
        let ends: Vec<(ObjectId, ObjectId)> =
            letters.iter().map(|&g| (obj(ambient.source(g)), obj(ambient.range(g)))).collect();
        let mut table = HashMap::new();
        for (i, &a) in letters.iter().enumerate() {
            for (j, &b) in letters.iter().enumerate() {
                if ambient.source(a) == ambient.range(b) {
                    let ab = ambient.product(a, b).unwrap();
                    let m = as_morphism(ab).ok_or_else(|| {
                        bad(format!("chosen set not closed: {}·{}", ambient.label(a), ambient.label(b)))
                    })?;
                    table.insert((i as u32, j as u32), m);
                }
            }
        }
        let table = FiniteTable { names, ends, table };
        Ok((objects, GroupoidSub { ambient, units, letters, table }))
    }

    pub fn table(&self) -> &FiniteTable {
        &self.table
    }

    pub fn ambient(&self) -> &FiniteGroupoid {
        &self.ambient
    }

    pub fn ambient_element(&self, m: &Morphism) -> usize {
        if m.is_identity() {
            self.units[m.tgt as usize]
        } else {
            self.letters[m.word[0] as usize]
        }
    }
}
