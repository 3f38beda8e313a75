//! The plain-text description of an algebra and of modules over it.

use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A path `a*b*c` with a signed integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpec {
    pub name: Option<String>,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub name: String,
    /// Defined over the graded algebra rather than the base algebra.
    pub over_tilde: bool,
    pub dims: Vec<(String, usize)>,
    /// Rows of the matrix of each listed arrow; unlisted arrows act by zero.
    pub maps: Vec<(String, Vec<Vec<i64>>)>,
    /// Per-vertex degrees of the basis vectors, when the module is graded.
    pub degrees: Vec<(String, Vec<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub prime: u64,
    pub extension: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub relations: Vec<RelationSpec>,
    pub modules: Vec<ModuleSpec>,
}

impl SpecFile {
    pub fn module(&self, name: &str) -> Option<&ModuleSpec> {
        self.modules.iter().find(|m| m.name == name)
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Canonical text form; `parse_spec(&serialize(s)) == s`.
pub fn serialize(s: &SpecFile) -> String {
    let mut out = String::new();
    if s.extension == 1 {
        writeln!(out, "field {}", s.prime).unwrap();
    } else {
        writeln!(out, "field {} {}", s.prime, s.extension).unwrap();
    }
    writeln!(out, "vertex {}", s.vertices.join(" ")).unwrap();
    for a in &s.arrows {
        writeln!(out, "arrow {}: {} -> {}", a.name, a.source, a.target).unwrap();
    }
    for r in &s.relations {
        let mut line = match &r.name {
            Some(n) => format!("relation {n}:"),
            None => "relation:".to_string(),
        };
        for (i, t) in r.terms.iter().enumerate() {
            let path = t.path.join("*");
            let (sign, c) = if t.coeff < 0 { ("-", -t.coeff) } else { ("+", t.coeff) };
            if i == 0 {
                line.push(' ');
                if sign == "-" {
                    line.push('-');
                }
            } else {
                write!(line, " {sign} ").unwrap();
            }
            if c == 1 {
                line.push_str(&path);
            } else {
                write!(line, "{c} {path}").unwrap();
            }
        }
        writeln!(out, "{line}").unwrap();
    }
    for m in &s.modules {
        let over = if m.over_tilde { " over tilde" } else { "" };
        writeln!(out, "module {}{over}:", m.name).unwrap();
        for (v, d) in &m.dims {
            writeln!(out, "  dim {v}={d}").unwrap();
        }
        for (a, rows) in &m.maps {
            let body = rows.iter().map(|r| join(r, " ")).collect::<Vec<_>>().join("; ");
            writeln!(out, "  map {a} = [{body}]").unwrap();
        }
        for (v, ds) in &m.degrees {
            writeln!(out, "  degree {v} = {}", join(ds, " ")).unwrap();
        }
    }
    out
}
