use std::collections::HashMap;

use super::paths::{longest, resolve};
use super::{Morphism, ObjectId};
use crate::error::{Error, Result};

/// A k-graph: coloured edges plus a bijection between two-coloured
/// composable pairs. Normal forms list colours in nondecreasing order.
#[derive(Clone, Debug)]
pub struct KGraph {
    k: usize,
    names: Vec<String>,
    ends: Vec<(ObjectId, ObjectId)>,
    colour: Vec<usize>,
    swap: HashMap<(u32, u32), (u32, u32)>,
}

impl KGraph {
    pub(super) fn new(
        k: usize,
        objects: &[String],
        edges: &[(&str, &str, &str, usize)],
        squares: &[(&str, &str, &str, &str)],
    ) -> Result<Self> {
        let bad = |s: String| Error::MalformedPresentation(s);
        if k == 0 {
            return Err(bad("k must be positive".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let mut ends = Vec::new();
        let mut colour = Vec::new();
        for (name, dom, tgt, c) in edges {
            if *c >= k {
                return Err(bad(format!("colour {c} of `{name}` out of range")));
            }
            if names.iter().any(|n| n == name) {
                return Err(bad(format!("duplicate letter `{name}`")));
            }
            names.push(name.to_string());
            ends.push((resolve(objects, dom)?, resolve(objects, tgt)?));
            colour.push(*c);
        }
        let idx = |n: &str| -> Result<u32> {
            names
                .iter()
                .position(|x| x == n)
                .map(|i| i as u32)
                .ok_or_else(|| bad(format!("unknown edge `{n}` in square")))
        };
        let mut swap = HashMap::new();
        for (x, y, y2, x2) in squares {
            let (x, y, y2, x2) = (idx(x)?, idx(y)?, idx(y2)?, idx(x2)?);
            let (cx, cy) = (colour[x as usize], colour[y as usize]);
            if cx == cy || colour[y2 as usize] != cy || colour[x2 as usize] != cx {
                return Err(bad("square colours do not swap".into()));
            }
            let e = |i: u32| ends[i as usize];
            if e(x).0 != e(y).1 || e(y2).0 != e(x2).1 || e(x).1 != e(y2).1 || e(y).0 != e(x2).0 {
                return Err(bad("square endpoints do not match".into()));
            }
            for (key, val) in [((x, y), (y2, x2)), ((y2, x2), (x, y))] {
                if let Some(prev) = swap.insert(key, val) {
                    if prev != val {
                        return Err(bad("factorization squares are not a bijection".into()));
                    }
                }
            }
        }
        for a in 0..names.len() {
            for b in 0..names.len() {
                if colour[a] != colour[b] && ends[a].0 == ends[b].1 && !swap.contains_key(&(a as u32, b as u32)) {
                    return Err(bad(format!("no factorization square for {}{}", names[a], names[b])));
                }
            }
        }
        Ok(KGraph { k, names, ends, colour, swap })
    }

    pub fn k(&self) -> usize {
        self.k
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

    pub fn degree(&self, word: &[u32]) -> Vec<u32> {
        let mut d = vec![0u32; self.k];
        for &i in word {
            d[self.colour[i as usize]] += 1;
        }
        d
    }

    fn col(&self, i: u32) -> usize {
        self.colour[i as usize]
    }

    fn swap_at(&self, w: &mut [u32], i: usize) {
        let (a, b) = self.swap[&(w[i], w[i + 1])];
        w[i] = a;
        w[i + 1] = b;
    }

    fn normalize(&self, w: &mut [u32]) {
        loop {
            let mut moved = false;
            for i in 0..w.len().saturating_sub(1) {
                if self.col(w[i]) > self.col(w[i + 1]) {
                    self.swap_at(w, i);
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
    }

    /// Rewrites `w` so its colour sequence equals `target`.
    fn rearrange(&self, w: &mut [u32], target: &[usize]) {
        for i in 0..target.len() {
            let j = (i..w.len()).find(|&j| self.col(w[j]) == target[i]).expect("degree mismatch");
            for p in (i..j).rev() {
                self.swap_at(w, p);
            }
        }
    }

    pub(super) fn compose(&self, c: &Morphism, d: &Morphism) -> Morphism {
        let mut word = c.word.clone();
        word.extend_from_slice(&d.word);
        self.normalize(&mut word);
        Morphism { word, dom: d.dom, tgt: c.tgt }
    }

    fn sorted_colours(d: &[u32]) -> Vec<usize> {
        d.iter().enumerate().flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize)).collect()
    }

    pub(super) fn divide_left(&self, c: &Morphism, m: &Morphism) -> Option<Morphism> {
        let dc = self.degree(&c.word);
        let dm = self.degree(&m.word);
        if dc.iter().zip(&dm).any(|(a, b)| a > b) {
            return None;
        }
        let rest: Vec<u32> = dm.iter().zip(&dc).map(|(b, a)| b - a).collect();
        let mut target = Self::sorted_colours(&dc);
        target.extend(Self::sorted_colours(&rest));
        let mut w = m.word.clone();
        self.rearrange(&mut w, &target);
        let n = c.word.len();
        if w[..n] != c.word[..] {
            return None;
        }
        Some(Morphism { word: w[n..].to_vec(), dom: m.dom, tgt: c.dom })
    }

    /// Normal-form paths of degree `d` with target `v`.
    pub(super) fn paths_of_degree(&self, v: ObjectId, d: &[u32]) -> Vec<Morphism> {
        let colours = Self::sorted_colours(d);
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.extend_paths(v, &colours, &mut word, v, &mut out);
        out
    }

    fn extend_paths(&self, tgt: ObjectId, colours: &[usize], word: &mut Vec<u32>, at: ObjectId, out: &mut Vec<Morphism>) {
        if word.len() == colours.len() {
            out.push(Morphism { word: word.clone(), dom: at, tgt });
            return;
        }
        let want = colours[word.len()];
        for (i, &(d, t)) in self.ends.iter().enumerate() {
            if t == at && self.colour[i] == want {
                word.push(i as u32);
                self.extend_paths(tgt, colours, word, d, out);
                word.pop();
            }
        }
    }

    pub(super) fn align(&self, c: &Morphism, d: &Morphism) -> Vec<(Morphism, Morphism)> {
        let dc = self.degree(&c.word);
        let dd = self.degree(&d.word);
        let ext: Vec<u32> = dc.iter().zip(&dd).map(|(a, b)| a.max(b) - a).collect();
        let mut out = Vec::new();
        for alpha in self.paths_of_degree(c.dom, &ext) {
            let lam = self.compose(c, &alpha);
            if let Some(beta) = self.divide_left(d, &lam) {
                out.push((alpha, beta));
            }
        }
        out
    }

    pub(super) fn ball(&self, objects: usize, n: usize) -> Vec<Morphism> {
        let mut out: Vec<Morphism> = (0..objects as ObjectId).map(Morphism::identity).collect();
        let mut frontier = out.clone();
        for _ in 0..n {
            let mut next = Vec::new();
            for m in &frontier {
                let last = m.word.last().map(|&i| self.col(i)).unwrap_or(0);
                for (i, &(d, t)) in self.ends.iter().enumerate() {
                    if t == m.dom && self.colour[i] >= last {
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

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.ends.iter().map(|&(d, t)| (t as usize, d as usize)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        longest(&self.arcs()).is_some()
    }

    pub fn longest_path(&self) -> usize {
        longest(&self.arcs()).unwrap_or(usize::MAX)
    }
}
