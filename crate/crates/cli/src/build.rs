//! Turning a parsed spec into algebras and modules.

use std::fmt;
use std::sync::Arc;

use orbitcat_core::algebra::{injective, projective, simple, Algebra, AlgebraPresentation, Quiver, Relation};
use orbitcat_core::linalg::{Elem, Field, Matrix};
use orbitcat_core::repr::Module;
use orbitcat_core::tilde::GradedModule;

use crate::parse::ParseError;
use crate::spec::{ModuleSpec, SpecFile};

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Core(orbitcat_core::Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse_error",
            CliError::Core(e) => e.code(),
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) | CliError::Io(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<orbitcat_core::Error> for CliError {
    fn from(e: orbitcat_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// The spec's field, or `GF(prime)` when overridden.
pub fn field_of(spec: &SpecFile, prime: Option<u64>) -> CliResult<Field> {
    match prime {
        Some(_) if spec.extension != 1 => Err(CliError::Usage("--prime only applies to prime-field specs".into())),
        Some(p) => Ok(Field::prime(p)?),
        None if spec.extension == 1 => Ok(Field::prime(spec.prime)?),
        None => Ok(Field::new(spec.prime, spec.extension)?),
    }
}

/// Integers name residues in a prime field and encoded elements otherwise.
pub fn element(f: &Field, x: i64) -> CliResult<Elem> {
    if f.is_prime_field() {
        return Ok(f.from_i64(x));
    }
    let a = x.unsigned_abs();
    if a >= f.order() {
        return Err(CliError::Usage(format!("{x} does not encode an element of GF({}^{})", f.characteristic(), f.degree())));
    }
    Ok(if x < 0 { f.neg(a) } else { a })
}

pub fn presentation(spec: &SpecFile, prime: Option<u64>) -> CliResult<AlgebraPresentation> {
    let f = field_of(spec, prime)?;
    let mut q = Quiver::new();
    for v in &spec.vertices {
        q.add_vertex(v)?;
    }
    for a in &spec.arrows {
        q.add_arrow(&a.name, q.vertex(&a.source)?, q.vertex(&a.target)?)?;
    }
    let mut rels = Vec::new();
    for r in &spec.relations {
        let mut terms = Vec::new();
        for t in &r.terms {
            terms.push((element(&f, t.coeff)?, q.parse_path(&t.path.join("*"))?));
        }
        let rel = match &r.name {
            Some(n) => Relation::named(n, terms),
            None => Relation::new(terms),
        };
        if rel.terms.is_empty() {
            return Err(CliError::Usage("a relation vanishes over this field".into()));
        }
        rels.push(rel);
    }
    Ok(AlgebraPresentation::new(f, q, rels)?)
}

pub fn algebra(spec: &SpecFile, prime: Option<u64>) -> CliResult<Arc<Algebra>> {
    Ok(Arc::new(Algebra::new(&presentation(spec, prime)?)?))
}

fn declared(m: &ModuleSpec, alg: &Arc<Algebra>) -> CliResult<Module> {
    let q = alg.quiver();
    let f = alg.field();
    let mut dims = vec![0; q.num_vertices()];
    for (v, d) in &m.dims {
        dims[q.vertex(v)?] = *d;
    }
    let mut mats: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
    for (a, rows) in &m.maps {
        let i = q.arrow_index(a)?;
        let (r, c) = (mats[i].rows(), mats[i].cols());
        if r * c > 0 && (rows.len() != r || rows.iter().any(|x| x.len() != c)) {
            return Err(CliError::Usage(format!("module {}: map {a} must be {r} x {c}", m.name)));
        }
        let data = rows.iter().flatten().map(|&x| element(f, x)).collect::<CliResult<Vec<_>>>()?;
        if r * c > 0 {
            mats[i] = Matrix::from_rows(r, c, data);
        }
    }
    Ok(Module::new(alg, dims, mats)?)
}

/// Views a base-algebra module over the graded algebra, with the degree-1 arrows acting by zero.
pub fn inflate(m: &Module, tilde: &Arc<Algebra>) -> CliResult<Module> {
    let q = tilde.quiver();
    let dims = m.dims().to_vec();
    let mats = (0..q.num_arrows())
        .map(|a| match m.mats().get(a) {
            Some(x) => x.clone(),
            None => Matrix::zeros(dims[q.arrow(a).source], dims[q.arrow(a).target]),
        })
        .collect();
    Ok(Module::new(tilde, dims, mats)?)
}

/// A module named in the spec, or `S<v>`, `P<v>`, `I<v>` for a vertex `v`. Modules declared
/// `over tilde` need the graded algebra.
pub fn module(spec: &SpecFile, name: &str, base: &Arc<Algebra>, tilde: Option<&Arc<Algebra>>) -> CliResult<Module> {
    if let Some(m) = spec.module(name) {
        if !m.over_tilde {
            return declared(m, base);
        }
        let t = tilde.ok_or_else(|| CliError::Usage(format!("module {name} lives over the graded algebra")))?;
        return declared(m, t);
    }
    let mut chars = name.chars();
    let kind = chars.next();
    let v = base.quiver().vertex(chars.as_str()).map_err(|_| CliError::Usage(format!("unknown module {name}")))?;
    Ok(match kind {
        Some('S') => simple(base, v)?,
        Some('P') => projective(base, v)?,
        Some('I') => injective(base, v)?,
        _ => return Err(CliError::Usage(format!("unknown module {name}"))),
    })
}

/// The declared grading of a module over the graded algebra, if it has one.
pub fn graded(spec: &SpecFile, name: &str, m: &Module) -> CliResult<Option<GradedModule>> {
    let Some(ms) = spec.module(name).filter(|ms| !ms.degrees.is_empty()) else { return Ok(None) };
    let q = m.algebra().quiver();
    let mut degrees = vec![vec![]; q.num_vertices()];
    for (v, ds) in &ms.degrees {
        degrees[q.vertex(v)?] = ds.clone();
    }
    Ok(Some(GradedModule::new(m.clone(), degrees)?))
}
