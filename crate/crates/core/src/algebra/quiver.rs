use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    /// Grading degree (0 for arrows of the base quiver).
    pub degree: u32,
    /// Positive weight used to stratify the path basis. Relations must be
    /// weight-homogeneous.
    pub weight: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver::default()
    }

    /// A quiver with vertices named `0..n` and the given arrows `(name, source, target)`.
    pub fn from_parts(n: usize, arrows: &[(&str, usize, usize)]) -> Result<Quiver> {
        let mut q = Quiver::new();
        for v in 0..n {
            q.add_vertex(&v.to_string())?;
        }
        for &(name, s, t) in arrows {
            q.add_arrow(name, s, t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vindex.contains_key(name) || self.aindex.contains_key(name) {
            return Err(Error::InvalidInput(format!("duplicate name {name}")));
        }
        let i = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vindex.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> Result<usize> {
        self.add_arrow_with(name, source, target, 0, 1)
    }

    pub fn add_arrow_with(&mut self, name: &str, source: usize, target: usize, degree: u32, weight: u32) -> Result<usize> {
        if self.aindex.contains_key(name) || self.vindex.contains_key(name) {
            return Err(Error::InvalidInput(format!("duplicate name {name}")));
        }
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::UnknownName(format!("vertex of arrow {name}")));
        }
        if weight == 0 {
            return Err(Error::InvalidInput("arrow weight must be positive".into()));
        }
        let i = self.arrows.len();
        self.arrows.push(Arrow { name: name.to_string(), source, target, degree, weight });
        self.aindex.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vindex.get(name).copied().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.aindex.get(name).copied().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Parses `a*b*c` (or a vertex name for a trivial path) into a path.
    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let s = s.trim();
        if let Ok(v) = self.vertex(s) {
            return Ok(Path::trivial(v));
        }
        let mut arrows = Vec::new();
        for part in s.split('*') {
            arrows.push(self.arrow_index(part.trim())?);
        }
        Path::new(self, arrows)
    }

    pub fn is_acyclic(&self) -> bool {
        self.simple_cycles().is_empty()
    }

    /// Simple oriented cycles as arrow lists, each rotated to start at its smallest
    /// vertex and listed once; sorted lexicographically.
    pub fn simple_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for start in 0..n {
            let mut stack: Vec<usize> = Vec::new();
            let mut on_path = vec![false; n];
            on_path[start] = true;
            self.cycle_dfs(start, start, &mut stack, &mut on_path, &mut out);
        }
        out.sort();
        out
    }

    fn cycle_dfs(&self, start: usize, v: usize, stack: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
        for a in self.arrows_from(v) {
            let t = self.arrows[a].target;
            if t == start {
                stack.push(a);
                out.push(stack.clone());
                stack.pop();
            } else if t > start && !on_path[t] {
                on_path[t] = true;
                stack.push(a);
                self.cycle_dfs(start, t, stack, on_path, out);
                stack.pop();
                on_path[t] = false;
            }
        }
    }
}

/// A path in a quiver, composing left to right. A trivial path has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        let first = *arrows.first().ok_or_else(|| Error::InvalidInput("empty arrow path".into()))?;
        let source = q.arrow(first).source;
        let mut cur = source;
        for &a in &arrows {
            let ar = q.arrow(a);
            if ar.source != cur {
                return Err(Error::InvalidInput(format!("arrows do not compose at {}", ar.name)));
            }
            cur = ar.target;
        }
        Ok(Path { source, target: cur, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn weight(&self, q: &Quiver) -> u32 {
        self.arrows.iter().map(|&a| q.arrow(a).weight).sum()
    }

    pub fn degree(&self, q: &Quiver) -> u32 {
        self.arrows.iter().map(|&a| q.arrow(a).degree).sum()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertex_name(self.source))
        } else {
            self.arrows.iter().map(|&a| q.arrow(a).name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: Option<String>,
    pub terms: Vec<(Elem, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Elem, Path)>) -> Relation {
        Relation { name: None, terms: terms.into_iter().filter(|(c, _)| *c != 0).collect() }
    }

    pub fn named(name: &str, terms: Vec<(Elem, Path)>) -> Relation {
        Relation { name: Some(name.to_string()), ..Relation::new(terms) }
    }

    pub fn monomial(p: Path) -> Relation {
        Relation::new(vec![(1, p)])
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn display(&self, f: &Field, q: &Quiver) -> String {
        let p = f.characteristic();
        self.terms
            .iter()
            .enumerate()
            .map(|(i, (c, path))| {
                let lead = if i == 0 { "" } else { " + " };
                if f.is_prime_field() && *c == p - 1 {
                    let sep = if i == 0 { "-" } else { " - " };
                    format!("{sep}{}", path.display(q))
                } else if *c == 1 {
                    format!("{lead}{}", path.display(q))
                } else {
                    format!("{lead}{c} {}", path.display(q))
                }
            })
            .collect()
    }
}

/// Quiver, relations and base field.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl AlgebraPresentation {
    pub fn new(field: Field, quiver: Quiver, relations: Vec<Relation>) -> Result<AlgebraPresentation> {
        let pres = AlgebraPresentation { field, quiver, relations };
        pres.validate()?;
        Ok(pres)
    }

    pub fn validate(&self) -> Result<()> {
        for (k, r) in self.relations.iter().enumerate() {
            let label = r.name.clone().unwrap_or_else(|| format!("#{k}"));
            if r.terms.is_empty() {
                return Err(Error::InvalidInput(format!("relation {label} is zero")));
            }
            let (s, t, w) = (r.source(), r.target(), r.terms[0].1.weight(&self.quiver));
            for (c, p) in &r.terms {
                if *c >= self.field.order() {
                    return Err(Error::InvalidInput(format!("coefficient {c} not in field")));
                }
                if p.source != s || p.target != t {
                    return Err(Error::InvalidInput(format!("relation {label} mixes non-parallel paths")));
                }
                if p.len() < 2 {
                    return Err(Error::InvalidInput(format!("relation {label} has a path of length < 2")));
                }
                if p.weight(&self.quiver) != w {
                    return Err(Error::InvalidInput(format!("relation {label} is not length-homogeneous")));
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
    fn cycles_of_a_three_cycle_with_chord() {
        let q = Quiver::from_parts(3, &[("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("d", 0, 2)]).unwrap();
        assert_eq!(q.simple_cycles(), vec![vec![0, 1, 2], vec![3, 2]]);
        let line = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        assert!(line.is_acyclic());
    }

    #[test]
    fn path_parsing_and_validation() {
        let q = Quiver::from_parts(3, &[("a", 0, 1), ("b", 1, 2)]).unwrap();
        let p = q.parse_path("a*b").unwrap();
        assert_eq!((p.source, p.target, p.len()), (0, 2, 2));
        assert!(q.parse_path("b*a").is_err());
        assert!(q.parse_path("x").is_err());
        let f = Field::prime(5).unwrap();
        let short = Relation::monomial(q.parse_path("a").unwrap());
        assert!(AlgebraPresentation::new(f, q, vec![short]).is_err());
    }
}
