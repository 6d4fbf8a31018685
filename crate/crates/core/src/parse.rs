//! Line-oriented input grammar shared by `.cat`, `.grad` and `.gpd` files.
//!
//! A document is a `key: value` header followed by `[section]` blocks. `#`
//! starts a comment. Columns are 1-based character offsets.
//!
//! `.cat` keys: `class` (`path`, `free`, `nk`, `kgraph`, `table`,
//! `groupoid-sub`), `objects`, `letters` (free), `k` (nk, kgraph),
//! `ambient` and `chosen` (groupoid-sub). Sections: `[generators]` with
//! `name: dom -> tgt` (kgraph adds `@colour`), `[table]` with `c d -> cd`,
//! `[squares]` with `x y = y2 x2`.
//!
//! `.grad` keys: `group` (`cyclic n`, `s3`, `trivial`, joined by `x` for
//! products), `dim`. Sections: `[generator NAME degree LABEL]` followed by
//! `dim` rows of entries, each `re` or `re,im`.
//!
//! `.gpd` keys: `units`, or `template` (`pair u1 u2 ...`, `group <name>`).
//! Sections: `[elements]` with `label: src -> rng`, `[products]` with
//! `a b -> c` for composable non-unit pairs.

use std::collections::BTreeMap;
use std::path::Path;

use crate::category::Presentation;
use crate::coaction::GradedAlgebra;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::linalg::{zeros, CMat, C};
use crate::pipeline::Input;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Category,
    Graded,
    Groupoid,
}

impl Format {
    pub fn from_path(path: &Path) -> Result<Format> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("cat") => Ok(Format::Category),
            Some("grad") => Ok(Format::Graded),
            Some("gpd") => Ok(Format::Groupoid),
            _ => Err(Error::Parse { line: 0, col: 0, msg: format!("unknown input extension for {}", path.display()) }),
        }
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    line: usize,
    col: usize,
    text: &'a str,
}

impl Tok<'_> {
    fn fail(&self, msg: impl Into<String>) -> Error {
        err(self.line, self.col, msg)
    }
}

fn tokens(line: usize, text: &str, offset: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (ci, (b, ch)) in text.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((ci, b)),
            (true, Some((sc, sb))) => {
                out.push(Tok { line, col: offset + sc + 1, text: &text[sb..b] });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((sc, sb)) = start {
        out.push(Tok { line, col: offset + sc + 1, text: &text[sb..] });
    }
    out
}

#[derive(Debug)]
struct Entry<'a> {
    line: usize,
    /// Column of the first character of `text`.
    col: usize,
    text: &'a str,
}

impl<'a> Entry<'a> {
    fn tokens(&self) -> Vec<Tok<'a>> {
        tokens(self.line, self.text, self.col - 1)
    }

    fn fail(&self, msg: impl Into<String>) -> Error {
        err(self.line, self.col, msg)
    }

    /// Splits at the first occurrence of `sep`.
    fn split(&self, sep: &str) -> Option<(Entry<'a>, Entry<'a>)> {
        let at = self.text.find(sep)?;
        let left = &self.text[..at];
        let right = &self.text[at + sep.len()..];
        let rcol = self.col + self.text[..at + sep.len()].chars().count();
        Some((Entry { line: self.line, col: self.col, text: left }, Entry { line: self.line, col: rcol, text: right }))
    }
}

#[derive(Debug)]
struct Section<'a> {
    header: Entry<'a>,
    body: Vec<Entry<'a>>,
}

#[derive(Debug, Default)]
struct Document<'a> {
    header: BTreeMap<&'a str, (Entry<'a>, Entry<'a>)>,
    sections: Vec<Section<'a>>,
}

fn strip(line: &str) -> (&str, usize) {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let trimmed = body.trim_start();
    let lead = body[..body.len() - trimmed.len()].chars().count();
    (trimmed.trim_end(), lead + 1)
}

fn document(src: &str) -> Result<Document<'_>> {
    let mut doc = Document::default();
    for (i, raw) in src.lines().enumerate() {
        let no = i + 1;
        let (text, col) = strip(raw);
        if text.is_empty() {
            continue;
        }
        let entry = Entry { line: no, col, text };
        if let Some(rest) = text.strip_prefix('[') {
            let inner = rest.strip_suffix(']').ok_or_else(|| err(no, col + text.chars().count(), "expected ']'"))?;
            doc.sections.push(Section { header: Entry { line: no, col: col + 1, text: inner.trim() }, body: Vec::new() });
            continue;
        }
        if let Some(s) = doc.sections.last_mut() {
            s.body.push(entry);
            continue;
        }
        let (k, v) = entry.split(":").ok_or_else(|| entry.fail("expected `key: value`"))?;
        let key = k.text.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(k.fail(format!("invalid key `{key}`")));
        }
        let vt = v.text.trim_start();
        let v = Entry { line: no, col: v.col + (v.text.chars().count() - vt.chars().count()), text: vt };
        if doc.header.insert(key, (k, v)).is_some() {
            return Err(err(no, col, format!("duplicate key `{key}`")));
        }
    }
    Ok(doc)
}

impl<'a> Document<'a> {
    fn get(&self, key: &str) -> Option<&Entry<'a>> {
        self.header.get(key).map(|(_, v)| v)
    }

    fn require(&self, key: &str) -> Result<&Entry<'a>> {
        self.get(key).ok_or_else(|| err(1, 1, format!("missing header key `{key}`")))
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for (key, (k, _)) in &self.header {
            if !allowed.contains(key) {
                return Err(k.fail(format!("unknown key `{key}`")));
            }
        }
        Ok(())
    }

    fn section(&self, name: &str) -> Option<&Section<'a>> {
        self.sections.iter().find(|s| s.header.text == name)
    }

    fn check_sections(&self, allowed: &[&str]) -> Result<()> {
        for s in &self.sections {
            let head = s.header.text.split_whitespace().next().unwrap_or("");
            if !allowed.contains(&head) {
                return Err(s.header.fail(format!("unknown section `{}`", s.header.text)));
            }
        }
        Ok(())
    }
}

fn number<T: std::str::FromStr>(t: &Tok) -> Result<T> {
    t.text.parse().map_err(|_| t.fail(format!("expected a number, found `{}`", t.text)))
}

fn single<'a>(e: &Entry<'a>) -> Result<Tok<'a>> {
    let toks = e.tokens();
    match toks.as_slice() {
        [t] => Ok(*t),
        [] => Err(e.fail("missing value")),
        [_, extra, ..] => Err(extra.fail("unexpected token")),
    }
}

/// `name: dom -> tgt [@colour]`.
fn arrow_line<'a>(e: &Entry<'a>) -> Result<(Tok<'a>, Tok<'a>, Tok<'a>, Option<Tok<'a>>)> {
    let (name, rest) = e.split(":").ok_or_else(|| e.fail("expected `name: dom -> tgt`"))?;
    let name = single(&name)?;
    let toks = rest.tokens();
    match toks.as_slice() {
        [d, arrow, t] if arrow.text == "->" => Ok((name, *d, *t, None)),
        [d, arrow, t, c] if arrow.text == "->" && c.text.starts_with('@') => Ok((name, *d, *t, Some(*c))),
        [_, bad, ..] if bad.text != "->" => Err(bad.fail("expected `->`")),
        [.., extra] if toks.len() > 3 => Err(extra.fail("unexpected token")),
        _ => Err(rest.fail("expected `dom -> tgt`")),
    }
}

/// `a b -> c`.
fn product_line<'a>(e: &Entry<'a>) -> Result<(Tok<'a>, Tok<'a>, Tok<'a>)> {
    let toks = e.tokens();
    match toks.as_slice() {
        [a, b, arrow, c] if arrow.text == "->" => Ok((*a, *b, *c)),
        [_, _, bad, ..] if bad.text != "->" => Err(bad.fail("expected `->`")),
        [.., extra] if toks.len() > 4 => Err(extra.fail("unexpected token")),
        _ => Err(e.fail("expected `a b -> ab`")),
    }
}

fn known<'a>(t: &Tok<'a>, names: &[&str], what: &str) -> Result<&'a str> {
    if names.contains(&t.text) {
        Ok(t.text)
    } else {
        Err(t.fail(format!("unknown {what} `{}`", t.text)))
    }
}

fn group_spec(e: &Entry) -> Result<FiniteGroup> {
    let toks = e.tokens();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let g = match toks[i].text {
            "cyclic" => {
                let n = toks.get(i + 1).ok_or_else(|| toks[i].fail("cyclic needs an order"))?;
                let order: usize = number(n)?;
                if order == 0 {
                    return Err(n.fail("order must be positive"));
                }
                i += 2;
                FiniteGroup::cyclic(order)
            }
            "s3" => {
                i += 1;
                FiniteGroup::symmetric3()
            }
            "trivial" => {
                i += 1;
                FiniteGroup::trivial()
            }
            other => return Err(toks[i].fail(format!("unknown group `{other}`"))),
        };
        factors.push(g);
        if i < toks.len() {
            if toks[i].text != "x" {
                return Err(toks[i].fail("expected `x` between group factors"));
            }
            i += 1;
            if i == toks.len() {
                return Err(toks[i - 1].fail("dangling `x`"));
            }
        }
    }
    let mut it = factors.into_iter();
    let first = it.next().ok_or_else(|| e.fail("missing group"))?;
    Ok(it.fold(first, |acc, g| FiniteGroup::direct_product(&acc, &g)))
}

fn parse_category(doc: &Document) -> Result<Presentation> {
    doc.check_keys(&["class", "objects", "letters", "k", "ambient", "chosen"])?;
    doc.check_sections(&["generators", "table", "squares"])?;
    let class_entry = doc.require("class")?;
    let class = single(class_entry)?;
    let objects_of = || -> Result<Vec<Tok>> {
        let toks = doc.require("objects")?.tokens();
        if toks.is_empty() {
            return Err(doc.require("objects")?.fail("no objects"));
        }
        Ok(toks)
    };
    let body = |name: &str| doc.section(name).map(|s| s.body.iter().collect::<Vec<_>>()).unwrap_or_default();
    match class.text {
        "path" | "GraphPath" => {
            let objects = objects_of()?;
            let names: Vec<&str> = objects.iter().map(|t| t.text).collect();
            let mut edges = Vec::new();
            for e in body("generators") {
                let (n, d, t, c) = arrow_line(e)?;
                if let Some(c) = c {
                    return Err(c.fail("colours only apply to kgraph"));
                }
                edges.push((n.text, known(&d, &names, "object")?, known(&t, &names, "object")?));
            }
            Presentation::graph_path(&names, &edges)
        }
        "free" | "FreeMonoid" => {
            let letters = doc.require("letters")?.tokens();
            let names: Vec<&str> = letters.iter().map(|t| t.text).collect();
            Presentation::free_monoid(&names)
        }
        "nk" | "NkMonoid" => {
            let k: usize = number(&single(doc.require("k")?)?)?;
            Presentation::nk_monoid(k)
        }
        "kgraph" | "KGraph" => {
            let k_tok = single(doc.require("k")?)?;
            let k: usize = number(&k_tok)?;
            let objects = objects_of()?;
            let names: Vec<&str> = objects.iter().map(|t| t.text).collect();
            let mut edges = Vec::new();
            for e in body("generators") {
                let (n, d, t, c) = arrow_line(e)?;
                let c = c.ok_or_else(|| e.fail("kgraph edges need a colour `@i`"))?;
                let colour: usize = c.text[1..].parse().map_err(|_| c.fail("colour must be a number"))?;
                if colour >= k {
                    return Err(c.fail(format!("colour {colour} out of range for k = {k}")));
                }
                edges.push((n.text, known(&d, &names, "object")?, known(&t, &names, "object")?, colour));
            }
            let edge_names: Vec<&str> = edges.iter().map(|e| e.0).collect();
            let mut squares = Vec::new();
            for e in body("squares") {
                let toks = e.tokens();
                match toks.as_slice() {
                    [x, y, eq, y2, x2] if eq.text == "=" => squares.push((
                        known(x, &edge_names, "edge")?,
                        known(y, &edge_names, "edge")?,
                        known(y2, &edge_names, "edge")?,
                        known(x2, &edge_names, "edge")?,
                    )),
                    [_, _, bad, ..] if bad.text != "=" => return Err(bad.fail("expected `=`")),
                    _ => return Err(e.fail("expected `x y = y2 x2`")),
                }
            }
            Presentation::kgraph(k, &names, &edges, &squares)
        }
        "table" | "FiniteTable" => {
            let objects = objects_of()?;
            let names: Vec<&str> = objects.iter().map(|t| t.text).collect();
            let mut elems = Vec::new();
            for e in body("generators") {
                let (n, d, t, c) = arrow_line(e)?;
                if let Some(c) = c {
                    return Err(c.fail("colours only apply to kgraph"));
                }
                elems.push((n.text, known(&d, &names, "object")?, known(&t, &names, "object")?));
            }
            let mut all: Vec<&str> = names.clone();
            all.extend(elems.iter().map(|e| e.0));
            let mut rows = Vec::new();
            for e in body("table") {
                let (a, b, c) = product_line(e)?;
                rows.push((known(&a, &all, "element")?, known(&b, &all, "element")?, known(&c, &all, "element")?));
            }
            Presentation::finite_table(&names, &elems, &rows)
        }
        "groupoid-sub" | "GroupoidSub" => {
            let amb = doc.require("ambient")?;
            let toks = amb.tokens();
            let ambient = match toks.first().map(|t| t.text) {
                Some("pair") => {
                    let units: Vec<&str> = toks[1..].iter().map(|t| t.text).collect();
                    if units.is_empty() {
                        return Err(toks[0].fail("pair needs unit labels"));
                    }
                    FiniteGroupoid::pair(&units)
                }
                Some(_) => FiniteGroupoid::from_group(&group_spec(amb)?),
                None => return Err(amb.fail("missing ambient groupoid")),
            };
            let mut chosen = Vec::new();
            for t in doc.require("chosen")?.tokens() {
                chosen.push(ambient.find(t.text).ok_or_else(|| t.fail(format!("`{}` is not an element of the ambient groupoid", t.text)))?);
            }
            Presentation::groupoid_sub(ambient, &chosen)
        }
        other => Err(class.fail(format!("unknown class `{other}`"))),
    }
}

fn entry_value(t: &Tok) -> Result<C> {
    let parse = |s: &str| s.parse::<f64>().map_err(|_| t.fail(format!("bad matrix entry `{}`", t.text)));
    match t.text.split_once(',') {
        Some((re, im)) => Ok(C::new(parse(re)?, parse(im)?)),
        None => Ok(C::new(parse(t.text)?, 0.0)),
    }
}

fn parse_graded(doc: &Document) -> Result<GradedAlgebra> {
    doc.check_keys(&["group", "dim"])?;
    doc.check_sections(&["generator"])?;
    let group = group_spec(doc.require("group")?)?;
    let dim_tok = single(doc.require("dim")?)?;
    let n: usize = number(&dim_tok)?;
    if n == 0 {
        return Err(dim_tok.fail("dimension must be positive"));
    }
    let mut gens: Vec<(CMat, usize)> = Vec::new();
    for s in &doc.sections {
        let head = s.header.tokens();
        let degree = match head.as_slice() {
            [_, _name, kw, d] if kw.text == "degree" => {
                group.labels().iter().position(|l| l == d.text).ok_or_else(|| d.fail(format!("`{}` is not a group element", d.text)))?
            }
            _ => return Err(s.header.fail("expected `[generator NAME degree LABEL]`")),
        };
        if s.body.len() != n {
            let at = s.body.last().map(|e| (e.line, e.col)).unwrap_or((s.header.line, s.header.col));
            return Err(err(at.0, at.1, format!("expected {n} rows, found {}", s.body.len())));
        }
        let mut m = zeros(n, n);
        for (i, row) in s.body.iter().enumerate() {
            let toks = row.tokens();
            if toks.len() != n {
                return Err(row.fail(format!("expected {n} entries, found {}", toks.len())));
            }
            for (j, t) in toks.iter().enumerate() {
                m[(i, j)] = entry_value(t)?;
            }
        }
        gens.push((m, degree));
    }
    if gens.is_empty() {
        return Err(err(1, 1, "no generators"));
    }
    GradedAlgebra::from_generators(&group, n, &gens)
}

fn parse_groupoid(doc: &Document) -> Result<FiniteGroupoid> {
    doc.check_keys(&["units", "template"])?;
    doc.check_sections(&["elements", "products"])?;
    if let Some(t) = doc.get("template") {
        let toks = t.tokens();
        return match toks.first().map(|x| x.text) {
            Some("pair") if toks.len() > 1 => Ok(FiniteGroupoid::pair(&toks[1..].iter().map(|x| x.text).collect::<Vec<_>>())),
            Some("group") if toks.len() > 1 => {
                let rest = Entry { line: t.line, col: toks[1].col, text: &t.text[t.text.find(toks[1].text).unwrap_or(0)..] };
                Ok(FiniteGroupoid::from_group(&group_spec(&rest)?))
            }
            _ => Err(t.fail("expected `pair u1 u2 ...` or `group <name>`")),
        };
    }
    let units = doc.require("units")?.tokens();
    if units.is_empty() {
        return Err(doc.require("units")?.fail("no units"));
    }
    let mut labels: Vec<&str> = units.iter().map(|t| t.text).collect();
    let nu = labels.len();
    let mut source: Vec<usize> = (0..nu).collect();
    let mut range: Vec<usize> = (0..nu).collect();
    let unit_names: Vec<&str> = labels.clone();
    for e in doc.section("elements").map(|s| s.body.as_slice()).unwrap_or(&[]) {
        let (n, s, r, c) = arrow_line(e)?;
        if let Some(c) = c {
            return Err(c.fail("unexpected colour"));
        }
        if labels.contains(&n.text) {
            return Err(n.fail(format!("duplicate label `{}`", n.text)));
        }
        let si = unit_names.iter().position(|u| *u == s.text).ok_or_else(|| s.fail(format!("unknown unit `{}`", s.text)))?;
        let ri = unit_names.iter().position(|u| *u == r.text).ok_or_else(|| r.fail(format!("unknown unit `{}`", r.text)))?;
        labels.push(n.text);
        source.push(si);
        range.push(ri);
    }
    let mut products: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in doc.section("products").map(|s| s.body.as_slice()).unwrap_or(&[]) {
        let (a, b, c) = product_line(e)?;
        let idx = |t: &Tok| labels.iter().position(|l| *l == t.text).ok_or_else(|| t.fail(format!("unknown element `{}`", t.text)));
        let (ai, bi, ci) = (idx(&a)?, idx(&b)?, idx(&c)?);
        if source[ai] != range[bi] {
            return Err(b.fail(format!("`{}` and `{}` are not composable", a.text, b.text)));
        }
        products.insert((ai, bi), ci);
    }
    let n = labels.len();
    let mut missing = None;
    for g in nu..n {
        for h in nu..n {
            if source[g] == range[h] && !products.contains_key(&(g, h)) && missing.is_none() {
                missing = Some(format!("missing product {} {}", labels[g], labels[h]));
            }
        }
    }
    if let Some(m) = missing {
        let line = doc.section("products").map(|s| s.header.line).unwrap_or(1);
        return Err(err(line, 1, m));
    }
    let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    FiniteGroupoid::new(owned, source.clone(), range.clone(), |g, h| {
        if g < nu {
            h
        } else if h < nu {
            g
        } else {
            products[&(g, h)]
        }
    })
}

pub fn parse_str(format: Format, src: &str) -> Result<Input> {
    let doc = document(src)?;
    Ok(match format {
        Format::Category => Input::Category(parse_category(&doc)?),
        Format::Graded => Input::Graded(parse_graded(&doc)?),
        Format::Groupoid => Input::Groupoid(parse_groupoid(&doc)?),
    })
}

pub fn parse_file(path: &Path) -> Result<Input> {
    let format = Format::from_path(path)?;
    let src = std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, col: 0, msg: format!("{}: {e}", path.display()) })?;
    parse_str(format, &src)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(src: &str) -> Result<Presentation> {
        match parse_str(Format::Category, src)? {
            Input::Category(p) => Ok(p),
            _ => unreachable!(),
        }
    }

    #[test]
    fn edge_document() {
        let p = cat("class: path\nobjects: v w  # two\n[generators]\ne: w -> v\n").unwrap();
        assert_eq!(p.all_morphisms().unwrap().len(), 3);
    }

    #[test]
    fn positions() {
        let e = cat("class: path\nobjects: v w\n[generators]\ne: w => v\n").unwrap_err();
        assert_eq!(e, err(4, 6, "expected `->`"));
        let e = cat("class: path\nobjects: v w\n[generators]\ne: w -> x\n").unwrap_err();
        assert_eq!(e, err(4, 9, "unknown object `x`"));
        let e = cat("class: path\n  colour: 3\n").unwrap_err();
        assert_eq!(e, err(2, 3, "unknown key `colour`"));
        let e = cat("class: blob\n").unwrap_err();
        assert_eq!(e, err(1, 8, "unknown class `blob`"));
    }

    #[test]
    fn graded_and_groupoid() {
        let src = "group: cyclic 2\ndim: 2\n[generator p degree 0]\n1 0\n0 0\n[generator q degree 0]\n0 0\n0 1\n[generator x degree 1]\n0 1\n0 0\n";
        match parse_str(Format::Graded, src).unwrap() {
            Input::Graded(g) => assert_eq!(g.component_dims(), vec![2, 1]),
            _ => unreachable!(),
        }
        let src = "units: 1 2\n[elements]\na: 2 -> 1\nb: 1 -> 2\n[products]\na b -> 1\nb a -> 2\n";
        match parse_str(Format::Groupoid, src).unwrap() {
            Input::Groupoid(g) => assert_eq!(g.len(), 4),
            _ => unreachable!(),
        }
    }
}
