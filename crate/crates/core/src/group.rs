use serde::Serialize;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(labels: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let bad = |s: &str| Error::MalformedPresentation(format!("group table: {s}"));
        if n == 0 || mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad("shape"));
        }
        for (i, row) in mul.iter().enumerate() {
            if row[0] != i || mul[0][i] != i {
                return Err(bad("element 0 is not the identity"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0).ok_or_else(|| bad("missing inverse"))?;
        }
        Ok(FiniteGroup { labels, mul, inv })
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(labels, mul).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order(), h.order());
        let labels = (0..m * n).map(|i| format!("({},{})", g.label(i / n), h.label(i % n))).collect();
        let mul = (0..m * n)
            .map(|a| (0..m * n).map(|b| g.mul(a / n, b / n) * n + h.mul(a % n, b % n)).collect())
            .collect();
        Self::from_table(labels, mul).expect("product group")
    }

    /// The symmetric group on three letters, elements as permutations of 012.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        let mul = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::from_table(labels, mul).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}
