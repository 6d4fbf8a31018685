use super::{Morphism, Presentation};
use crate::error::Result;

pub(super) fn pair(a: &Morphism, b: &Morphism, off: u32, nr: u32) -> Morphism {
    let mut word = a.word.clone();
    word.extend(b.word.iter().map(|&i| i + off));
    Morphism { word, dom: a.dom * nr + b.dom, tgt: a.tgt * nr + b.tgt }
}

pub(super) fn split(l: &Presentation, r: &Presentation, m: &Morphism) -> (Morphism, Morphism) {
    let off = l.letter_count() as u32;
    let nr = r.object_count() as u32;
    let cut = m.word.iter().position(|&i| i >= off).unwrap_or(m.word.len());
    let a = Morphism { word: m.word[..cut].to_vec(), dom: m.dom / nr, tgt: m.tgt / nr };
    let b = Morphism { word: m.word[cut..].iter().map(|&i| i - off).collect(), dom: m.dom % nr, tgt: m.tgt % nr };
    (a, b)
}

fn join(l: &Presentation, r: &Presentation, a: &Morphism, b: &Morphism) -> Morphism {
    pair(a, b, l.letter_count() as u32, r.object_count() as u32)
}

pub(super) fn compose(l: &Presentation, r: &Presentation, c: &Morphism, d: &Morphism) -> Option<Morphism> {
    let (c1, c2) = split(l, r, c);
    let (d1, d2) = split(l, r, d);
    Some(join(l, r, &l.compose(&c1, &d1)?, &r.compose(&c2, &d2)?))
}

pub(super) fn divide_left(l: &Presentation, r: &Presentation, c: &Morphism, m: &Morphism) -> Option<Morphism> {
    let (c1, c2) = split(l, r, c);
    let (m1, m2) = split(l, r, m);
    Some(join(l, r, &l.divide_left(&c1, &m1)?, &r.divide_left(&c2, &m2)?))
}

pub(super) fn align(l: &Presentation, r: &Presentation, c: &Morphism, d: &Morphism) -> Result<Vec<(Morphism, Morphism)>> {
    let (c1, c2) = split(l, r, c);
    let (d1, d2) = split(l, r, d);
    let left = l.align(&c1, &d1)?;
    let right = r.align(&c2, &d2)?;
    let mut out = Vec::new();
    for (x1, y1) in &left {
        for (x2, y2) in &right {
            out.push((join(l, r, x1, x2), join(l, r, y1, y2)));
        }
    }
    Ok(out)
}

pub(super) fn ball(l: &Presentation, r: &Presentation, n: usize) -> Vec<Morphism> {
    let bl = l.ball(n);
    let br = r.ball(n);
    let mut out = Vec::new();
    for a in &bl {
        for b in &br {
            if a.len() + b.len() <= n {
                out.push(join(l, r, a, b));
            }
        }
    }
    out
}

/// Byte offset of the comma separating the two factors of `(l,r)`.
pub(super) fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}
