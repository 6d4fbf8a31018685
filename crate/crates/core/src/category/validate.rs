use std::collections::HashMap;

use serde::Serialize;

use super::{Kind, Morphism, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    Exhaustive,
    Structural,
    Bounded(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub associative: Verdict,
    pub identity_laws: Verdict,
    pub left_cancellative: Verdict,
    pub right_cancellative: Verdict,
    pub certification: Certification,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.associative.holds() && self.identity_laws.holds() && self.left_cancellative.holds()
    }

    pub fn cancellative(&self) -> bool {
        self.valid() && self.right_cancellative.holds()
    }

    fn structural() -> Self {
        ValidationReport {
            associative: Verdict::Holds,
            identity_laws: Verdict::Holds,
            left_cancellative: Verdict::Holds,
            right_cancellative: Verdict::Holds,
            certification: Certification::Structural,
        }
    }
}

/// Checks the category axioms and cancellation. `bound` is the ball radius
/// used for classes without a structural or exhaustive argument.
pub fn validate(p: &Presentation, bound: usize) -> ValidationReport {
    match p.kind() {
        Kind::Path(_) | Kind::Nk(_) | Kind::GroupoidSub(_) => ValidationReport::structural(),
        Kind::Table(_) => check(p, 3, Certification::Exhaustive),
        Kind::KGraph(_) => match p.diameter() {
            Some(d) => check(p, 3 * d, Certification::Exhaustive),
            None => check(p, bound, Certification::Bounded(bound)),
        },
        Kind::Product(l, r) => {
            let a = validate(l, bound);
            let b = validate(r, bound);
            let both = |x: &Verdict, y: &Verdict| match (x, y) {
                (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
                (Verdict::Fails(w), _) => Verdict::Fails(format!("left factor: {w}")),
                (_, Verdict::Fails(w)) => Verdict::Fails(format!("right factor: {w}")),
            };
            let certification = match (a.certification, b.certification) {
                (Certification::Bounded(n), _) | (_, Certification::Bounded(n)) => Certification::Bounded(n),
                (Certification::Structural, Certification::Structural) => Certification::Structural,
                _ => Certification::Exhaustive,
            };
            ValidationReport {
                associative: both(&a.associative, &b.associative),
                identity_laws: both(&a.identity_laws, &b.identity_laws),
                left_cancellative: both(&a.left_cancellative, &b.left_cancellative),
                right_cancellative: both(&a.right_cancellative, &b.right_cancellative),
                certification,
            }
        }
    }
}

/// All checks over instances whose total word length is at most `n`.
fn check(p: &Presentation, n: usize, certification: Certification) -> ValidationReport {
    let ball = p.ball(n);
    let mut by_tgt: HashMap<u32, Vec<&Morphism>> = HashMap::new();
    for m in &ball {
        by_tgt.entry(m.tgt).or_default().push(m);
    }
    let empty = Vec::new();
    let after = |m: &Morphism| by_tgt.get(&m.dom).unwrap_or(&empty);
    let r = |m: &Morphism| p.render(m);

    let mut identity_laws = Verdict::Holds;
    for m in &ball {
        let lt = p.compose(&Morphism::identity(m.tgt), m);
        let rt = p.compose(m, &Morphism::identity(m.dom));
        if lt.as_ref() != Some(m) || rt.as_ref() != Some(m) {
            identity_laws = Verdict::Fails(format!("identity law fails at {}", r(m)));
            break;
        }
    }

    let mut associative = Verdict::Holds;
    'outer: for c in &ball {
        for d in after(c) {
            if c.len() + d.len() > n {
                continue;
            }
            for e in after(d) {
                if c.len() + d.len() + e.len() > n {
                    continue;
                }
                let lhs = p.compose(c, d).and_then(|cd| p.compose(&cd, e));
                let rhs = p.compose(d, e).and_then(|de| p.compose(c, &de));
                if lhs != rhs {
                    associative = Verdict::Fails(format!("({} {}) {} ≠ {} ({} {})", r(c), r(d), r(e), r(c), r(d), r(e)));
                    break 'outer;
                }
            }
        }
    }

    let mut left_cancellative = Verdict::Holds;
    let mut right_cancellative = Verdict::Holds;
    let mut left: HashMap<(&Morphism, Morphism), &Morphism> = HashMap::new();
    let mut right: HashMap<(&Morphism, Morphism), &Morphism> = HashMap::new();
    for c in &ball {
        for x in after(c) {
            if c.len() + x.len() > n {
                continue;
            }
            if let Some(cx) = p.compose(c, x) {
                if let Some(y) = left.insert((c, cx.clone()), x) {
                    if y != *x && left_cancellative.holds() {
                        left_cancellative = Verdict::Fails(format!("{}{} = {}{} with {} ≠ {}", r(c), r(x), r(c), r(y), r(x), r(y)));
                    }
                }
                if let Some(y) = right.insert((x, cx), c) {
                    if y != c && right_cancellative.holds() {
                        right_cancellative = Verdict::Fails(format!("{}{} = {}{} with {} ≠ {}", r(c), r(x), r(y), r(x), r(c), r(y)));
                    }
                }
            }
        }
    }

    ValidationReport { associative, identity_laws, left_cancellative, right_cancellative, certification }
}
