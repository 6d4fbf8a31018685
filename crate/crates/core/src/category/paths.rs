use super::{Morphism, ObjectId};
use crate::error::{Error, Result};

/// Path category of a finite directed graph; free monoids are the
/// single-vertex case.
#[derive(Clone, Debug)]
pub struct PathCategory {
    names: Vec<String>,
    ends: Vec<(ObjectId, ObjectId)>,
    monoid: bool,
}

pub(super) fn resolve(objects: &[String], label: &str) -> Result<ObjectId> {
    objects
        .iter()
        .position(|o| o == label)
        .map(|i| i as ObjectId)
        .ok_or_else(|| Error::MalformedPresentation(format!("dangling endpoint `{label}`")))
}

impl PathCategory {
    pub(super) fn new(objects: &[String], edges: &[(&str, &str, &str)], monoid: bool) -> Result<Self> {
        let mut names = Vec::new();
        let mut ends = Vec::new();
        for (name, dom, tgt) in edges {
            if names.iter().any(|n| n == name) || objects.iter().any(|o| o == name) {
                return Err(Error::MalformedPresentation(format!("duplicate letter `{name}`")));
            }
            names.push(name.to_string());
            ends.push((resolve(objects, dom)?, resolve(objects, tgt)?));
        }
        Ok(PathCategory { names, ends, monoid })
    }

    pub fn is_monoid(&self) -> bool {
        self.monoid
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

    pub fn ball(&self, objects: usize, n: usize) -> Vec<Morphism> {
        let mut out: Vec<Morphism> = (0..objects as ObjectId).map(Morphism::identity).collect();
        let mut frontier = out.clone();
        for _ in 0..n {
            let mut next = Vec::new();
            for m in &frontier {
                for (i, &(d, t)) in self.ends.iter().enumerate() {
                    if t == m.dom {
                        let mut word = m.word.clone();
                        word.push(i as u32);
                        next.push(Morphism { word, dom: d, tgt: m.tgt });
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn adjacency(&self) -> Vec<(usize, usize)> {
        self.ends.iter().map(|&(d, t)| (t as usize, d as usize)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        longest(&self.adjacency()).is_some()
    }

    pub fn longest_path(&self) -> usize {
        longest(&self.adjacency()).unwrap_or(usize::MAX)
    }
}

/// Length of the longest path in a graph given by `(from, to)` arcs, or
/// `None` when there is a cycle.
pub(super) fn longest(arcs: &[(usize, usize)]) -> Option<usize> {
    let n = arcs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let mut indeg = vec![0usize; n];
    for &(_, b) in arcs {
        indeg[b] += 1;
    }
    let mut order = Vec::new();
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(a, b) in arcs {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    if order.len() < n {
        return None;
    }
    let mut depth = vec![0usize; n];
    for &v in &order {
        for &(a, b) in arcs {
            if a == v {
                depth[b] = depth[b].max(depth[v] + 1);
            }
        }
    }
    Some(depth.into_iter().max().unwrap_or(0))
}
