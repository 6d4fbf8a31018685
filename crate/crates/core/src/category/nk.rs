use super::Morphism;

pub(super) fn degree(k: usize, m: &Morphism) -> Vec<u32> {
    let mut d = vec![0u32; k];
    for &i in &m.word {
        d[i as usize] += 1;
    }
    d
}

pub(super) fn from_degree(d: &[u32]) -> Morphism {
    let mut word = Vec::new();
    for (i, &n) in d.iter().enumerate() {
        word.extend(std::iter::repeat_n(i as u32, n as usize));
    }
    Morphism { word, dom: 0, tgt: 0 }
}

pub(super) fn compose(c: &Morphism, d: &Morphism) -> Morphism {
    let mut word = c.word.clone();
    word.extend_from_slice(&d.word);
    word.sort_unstable();
    Morphism { word, dom: 0, tgt: 0 }
}

pub(super) fn divide_left(k: usize, c: &Morphism, m: &Morphism) -> Option<Morphism> {
    let dc = degree(k, c);
    let dm = degree(k, m);
    if dc.iter().zip(&dm).all(|(a, b)| a <= b) {
        let diff: Vec<u32> = dm.iter().zip(&dc).map(|(b, a)| b - a).collect();
        Some(from_degree(&diff))
    } else {
        None
    }
}

pub(super) fn align(k: usize, c: &Morphism, d: &Morphism) -> (Morphism, Morphism) {
    let dc = degree(k, c);
    let dd = degree(k, d);
    let top: Vec<u32> = dc.iter().zip(&dd).map(|(a, b)| *a.max(b)).collect();
    let x: Vec<u32> = top.iter().zip(&dc).map(|(t, a)| t - a).collect();
    let y: Vec<u32> = top.iter().zip(&dd).map(|(t, b)| t - b).collect();
    (from_degree(&x), from_degree(&y))
}

pub(super) fn ball(k: usize, n: usize) -> Vec<Morphism> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(k: usize, i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Morphism>) {
        if i == k {
            out.push(from_degree(cur));
            return;
        }
        for v in 0..=left {
            cur[i] = v as u32;
            rec(k, i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(k, 0, n, &mut cur, &mut out);
    out
}

pub(super) fn render(k: usize, m: &Morphism) -> String {
    let d = degree(k, m);
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub(super) fn parse(k: usize, text: &str) -> Option<Morphism> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<u32> = t.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    if parts.len() != k {
        return None;
    }
    Some(from_degree(&parts))
}
