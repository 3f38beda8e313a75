//! Line-oriented parser for spec files.

use std::collections::HashMap;
use std::fmt;

use orbitcat_core::linalg::is_prime;

use crate::spec::{ArrowSpec, ModuleSpec, RelationSpec, SpecFile, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// Whitespace separated words with their 1-based columns.
fn words(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((base + st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

struct Parser {
    line: usize,
    spec: SpecFile,
    vertices: HashMap<String, usize>,
    arrows: HashMap<String, usize>,
}

impl Parser {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { line: self.line, column, message: message.into() })
    }

    fn vertex(&self, col: usize, name: &str) -> PResult<usize> {
        match self.vertices.get(name) {
            Some(&v) => Ok(v),
            None => self.err(col, format!("undeclared vertex {name}")),
        }
    }

    fn name(&self, col: usize, name: &str) -> PResult<()> {
        let ok = !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        if !ok {
            return self.err(col, format!("invalid name {name:?}"));
        }
        if self.vertices.contains_key(name) || self.arrows.contains_key(name) {
            return self.err(col, format!("duplicate name {name}"));
        }
        Ok(())
    }

    fn field(&mut self, rest: &[(usize, &str)], col: usize) -> PResult<()> {
        let num = |(c, w): (usize, &str)| w.parse::<u64>().map_err(|_| (c, w.to_string()));
        let bad = |p: &Parser, (c, w): (usize, String)| p.err::<()>(c, format!("expected a number, found {w}"));
        match rest {
            [p] | [p, _] => {
                let pv = match num(*p) {
                    Ok(v) => v,
                    Err(e) => return bad(self, e),
                };
                if !is_prime(pv) {
                    return self.err(p.0, format!("{pv} is not a prime"));
                }
                let m = match rest.get(1) {
                    Some(&w) => match num(w) {
                        Ok(v) if (1..=64).contains(&v) => v as u32,
                        Ok(_) => return self.err(w.0, "extension degree must be between 1 and 64"),
                        Err(e) => return bad(self, e),
                    },
                    None => 1,
                };
                self.spec.prime = pv;
                self.spec.extension = m;
                Ok(())
            }
            _ => self.err(col, "expected `field <p> [<m>]`"),
        }
    }

    fn arrow(&mut self, text: &str, col: usize) -> PResult<()> {
        // `<name>: <src> -> <tgt>`
        let Some(colon) = text.find(':') else { return self.err(col, "expected `arrow <name>: <src> -> <tgt>`") };
        let name = text[..colon].trim();
        let name_col = col + text[..colon].find(name).unwrap_or(0);
        self.name(name_col, name)?;
        let rest = words(&text[colon + 1..], col + colon + 1);
        let [(sc, s), (_, "->"), (tc, t)] = rest[..] else {
            return self.err(col + colon + 1, "expected `<src> -> <tgt>`");
        };
        self.vertex(sc, s)?;
        self.vertex(tc, t)?;
        self.arrows.insert(name.to_string(), self.spec.arrows.len());
        self.spec.arrows.push(ArrowSpec { name: name.to_string(), source: s.to_string(), target: t.to_string() });
        Ok(())
    }

    /// Checks composability and returns `(source, target)`.
    fn path(&self, col: usize, w: &str) -> PResult<(Vec<String>, usize, usize)> {
        let mut names = Vec::new();
        let mut ends: Option<(usize, usize)> = None;
        let mut at = col;
        for part in w.split('*') {
            let Some(&a) = self.arrows.get(part) else { return self.err(at, format!("undeclared arrow {part}")) };
            let ar = &self.spec.arrows[a];
            let (s, t) = (self.vertices[&ar.source], self.vertices[&ar.target]);
            ends = match ends {
                None => Some((s, t)),
                Some((s0, t0)) if t0 == s => Some((s0, t)),
                Some(_) => return self.err(at, format!("arrow {part} does not compose with the path before it")),
            };
            names.push(part.to_string());
            at += part.len() + 1;
        }
        let (s, t) = ends.unwrap();
        Ok((names, s, t))
    }
}

impl Parser {
    fn relation(&mut self, head: &str, text: &str, col: usize) -> PResult<()> {
        let name = head.trim();
        let name = if name.is_empty() {
            None
        } else {
            if self.spec.relations.iter().any(|r| r.name.as_deref() == Some(name)) {
                return self.err(col, format!("duplicate relation {name}"));
            }
            Some(name.to_string())
        };
        let mut toks = Vec::new();
        for (c, w) in words(text, col) {
            match w.strip_prefix(['+', '-']) {
                Some(rest) if !rest.is_empty() => {
                    toks.push((c, &w[..1]));
                    toks.push((c + 1, rest));
                }
                _ => toks.push((c, w)),
            }
        }
        let mut terms = Vec::new();
        let mut shape: Option<(usize, usize, usize)> = None;
        let mut i = 0;
        while i < toks.len() {
            let mut sign = 1i64;
            if let Some(&(c, s)) = toks.get(i).filter(|t| t.1 == "+" || t.1 == "-") {
                if s == "-" {
                    sign = -1;
                } else if terms.is_empty() {
                    return self.err(c, "unexpected `+`");
                }
                i += 1;
            } else if !terms.is_empty() {
                return self.err(toks[i].0, "expected `+` or `-` between terms");
            }
            let mut coeff = 1i64;
            if let Some(&(c, w)) = toks.get(i) {
                if let Ok(v) = w.parse::<i64>() {
                    if v <= 0 {
                        return self.err(c, "coefficients must be positive; use `-` for signs");
                    }
                    coeff = v;
                    i += 1;
                }
            }
            let Some(&(c, w)) = toks.get(i) else { return self.err(col + text.len(), "expected a path") };
            let (path, s, t) = self.path(c, w)?;
            if path.len() < 2 {
                return self.err(c, format!("relation path {w} has length {} < 2", path.len()));
            }
            match shape {
                None => shape = Some((s, t, path.len())),
                Some(sh) if sh == (s, t, path.len()) => {}
                Some(_) => return self.err(c, format!("path {w} is not parallel to the first term or has another length")),
            }
            terms.push(Term { coeff: sign * coeff, path });
            i += 1;
        }
        if terms.is_empty() {
            return self.err(col, "empty relation");
        }
        self.spec.relations.push(RelationSpec { name, terms });
        Ok(())
    }

    fn current(&mut self, col: usize) -> PResult<&mut ModuleSpec> {
        if self.spec.modules.is_empty() {
            return self.err(col, "module data outside a module block");
        }
        Ok(self.spec.modules.last_mut().unwrap())
    }

    fn dim_of(m: &ModuleSpec, v: &str) -> usize {
        m.dims.iter().find(|(w, _)| w == v).map_or(0, |d| d.1)
    }

    fn dim_line(&mut self, text: &str, col: usize) -> PResult<()> {
        let Some(eq) = text.find('=') else { return self.err(col, "expected `dim <vertex>=<n>`") };
        let v = text[..eq].trim();
        self.vertex(col, v)?;
        let n: usize = match text[eq + 1..].trim().parse() {
            Ok(n) => n,
            Err(_) => return self.err(col + eq + 1, "expected a dimension"),
        };
        let line = self.line;
        let m = self.current(col)?;
        if m.dims.iter().any(|(w, _)| w == v) || !m.maps.is_empty() {
            return Err(ParseError { line, column: col, message: format!("dim {v} repeated or given after a map") });
        }
        m.dims.push((v.to_string(), n));
        Ok(())
    }

    fn map_line(&mut self, text: &str, col: usize) -> PResult<()> {
        let Some(eq) = text.find('=') else { return self.err(col, "expected `map <arrow> = [..]`") };
        let a = text[..eq].trim().to_string();
        let body = text[eq + 1..].trim();
        let Some(inner) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) else {
            return self.err(col + eq + 1, "matrix must be enclosed in [ ]");
        };
        let mut rows = Vec::new();
        if !inner.trim().is_empty() {
            for r in inner.split(';') {
                let mut row = Vec::new();
                for w in r.split_whitespace() {
                    match w.parse::<i64>() {
                        Ok(x) => row.push(x),
                        Err(_) => return self.err(col + eq + 1, format!("bad matrix entry {w}")),
                    }
                }
                rows.push(row);
            }
        }
        let known = self.arrows.get(&a).map(|&i| self.spec.arrows[i].clone());
        let line = self.line;
        let m = self.current(col)?;
        let e = |message: String| Err(ParseError { line, column: col, message });
        if m.maps.iter().any(|(b, _)| *b == a) {
            return e(format!("map {a} repeated"));
        }
        match known {
            Some(ar) => {
                let (r, c) = (Self::dim_of(m, &ar.source), Self::dim_of(m, &ar.target));
                let ok = if r * c == 0 { rows.is_empty() } else { rows.len() == r && rows.iter().all(|x| x.len() == c) };
                if !ok {
                    return e(format!("map {a} must be {r} x {c}"));
                }
            }
            None if m.over_tilde => {}
            None => return e(format!("undeclared arrow {a}")),
        }
        m.maps.push((a, rows));
        Ok(())
    }

    fn degree_line(&mut self, text: &str, col: usize) -> PResult<()> {
        let Some(eq) = text.find('=') else { return self.err(col, "expected `degree <vertex> = <d...>`") };
        let v = text[..eq].trim().to_string();
        self.vertex(col, &v)?;
        let mut ds = Vec::new();
        for w in text[eq + 1..].split_whitespace() {
            match w.parse::<i64>() {
                Ok(d) => ds.push(d),
                Err(_) => return self.err(col + eq + 1, format!("bad degree {w}")),
            }
        }
        let line = self.line;
        let m = self.current(col)?;
        if ds.len() != Self::dim_of(m, &v) || m.degrees.iter().any(|(w, _)| *w == v) {
            return Err(ParseError { line, column: col, message: format!("degrees at {v} must be given once, one per basis vector") });
        }
        m.degrees.push((v, ds));
        Ok(())
    }
}

pub fn parse_spec(text: &str) -> PResult<SpecFile> {
    let mut p = Parser {
        line: 0,
        spec: SpecFile { prime: 0, extension: 1, vertices: vec![], arrows: vec![], relations: vec![], modules: vec![] },
        vertices: HashMap::new(),
        arrows: HashMap::new(),
    };
    let mut module_lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        p.line = k + 1;
        let line = raw.split('#').next().unwrap();
        let ws = words(line, 1);
        let Some(&(col, first)) = ws.first() else { continue };
        let body = &line[col - 1..];
        let kw = match body.strip_prefix("relation") {
            Some(r) if r.starts_with(':') || r.starts_with(char::is_whitespace) => "relation",
            _ => first,
        };
        let tail = &body[kw.len()..];
        let tcol = col + (line.len() - col + 1 - tail.len());
        if p.spec.prime == 0 && kw != "field" {
            return p.err(col, "the first line must be `field <p> [<m>]`");
        }
        match kw {
            "field" if p.spec.prime == 0 => p.field(&ws[1..], col)?,
            "field" => return p.err(col, "field declared twice"),
            "vertex" => {
                for &(c, v) in &ws[1..] {
                    p.name(c, v)?;
                    p.vertices.insert(v.to_string(), p.spec.vertices.len());
                    p.spec.vertices.push(v.to_string());
                }
            }
            "arrow" => p.arrow(tail, tcol)?,
            "relation" => {
                let Some(colon) = tail.find(':') else { return p.err(col, "expected `relation [<name>]: ...`") };
                p.relation(&tail[..colon], &tail[colon + 1..], tcol + colon + 1)?;
            }
            "module" => {
                let Some(head) = tail.trim_end().strip_suffix(':') else { return p.err(col, "expected `module <name>:`") };
                let hw = words(head, tcol);
                let (name, over_tilde) = match hw[..] {
                    [(_, n)] => (n, false),
                    [(_, n), (_, "over"), (_, "tilde")] => (n, true),
                    _ => return p.err(tcol, "expected `module <name> [over tilde]:`"),
                };
                if p.spec.module(name).is_some() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return p.err(hw[0].0, format!("invalid or duplicate module name {name}"));
                }
                module_lines.push(p.line);
                p.spec.modules.push(ModuleSpec { name: name.into(), over_tilde, dims: vec![], maps: vec![], degrees: vec![] });
            }
            "dim" => p.dim_line(tail, tcol)?,
            "map" => p.map_line(tail, tcol)?,
            "degree" => p.degree_line(tail, tcol)?,
            _ => return p.err(col, format!("unknown keyword {kw}")),
        }
    }
    if p.spec.prime == 0 {
        return Err(ParseError { line: 1, column: 1, message: "missing `field` line".into() });
    }
    for (m, &line) in p.spec.modules.iter().zip(&module_lines) {
        let graded = !m.degrees.is_empty();
        if graded && m.dims.iter().any(|(v, d)| *d > 0 && !m.degrees.iter().any(|(w, _)| w == v)) {
            return Err(ParseError { line, column: 1, message: format!("module {} has degrees for only some vertices", m.name) });
        }
    }
    Ok(p.spec)
}
