//! JSON forms of matrices, modules and maps, and their inverses.

use std::sync::Arc;

use serde_json::{json, Value};

use orbitcat_core::algebra::{Algebra, ProjMap};
use orbitcat_core::linalg::{Elem, Field, Matrix};
use orbitcat_core::repr::{ModMap, Module};
use orbitcat_core::tilde::GradedModule;

use crate::build::{CliError, CliResult};

fn bad(what: &str) -> CliError {
    CliError::Usage(format!("malformed certificate: {what}"))
}

pub fn get<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("missing {key}")))
}

pub fn u64_of(v: &Value, key: &str) -> CliResult<u64> {
    get(v, key)?.as_u64().ok_or_else(|| bad(key))
}

pub fn i64_of(v: &Value, key: &str) -> CliResult<i64> {
    get(v, key)?.as_i64().ok_or_else(|| bad(key))
}

pub fn bool_of(v: &Value, key: &str) -> CliResult<bool> {
    get(v, key)?.as_bool().ok_or_else(|| bad(key))
}

pub fn str_of<'a>(v: &'a Value, key: &str) -> CliResult<&'a str> {
    get(v, key)?.as_str().ok_or_else(|| bad(key))
}

pub fn array<'a>(v: &'a Value, what: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what))
}

pub fn u64s(v: &Value, what: &str) -> CliResult<Vec<u64>> {
    array(v, what)?.iter().map(|x| x.as_u64().ok_or_else(|| bad(what))).collect()
}

pub fn i64s(v: &Value, what: &str) -> CliResult<Vec<i64>> {
    array(v, what)?.iter().map(|x| x.as_i64().ok_or_else(|| bad(what))).collect()
}

pub fn usizes(v: &Value, what: &str) -> CliResult<Vec<usize>> {
    Ok(u64s(v, what)?.into_iter().map(|x| x as usize).collect())
}

pub fn field(f: &Field) -> Value {
    json!({ "p": f.characteristic(), "m": f.degree(), "modulus": f.modulus() })
}

pub fn field_from(v: &Value) -> CliResult<Field> {
    let (p, m) = (u64_of(v, "p")?, u64_of(v, "m")? as u32);
    if m == 1 {
        return Ok(Field::prime(p)?);
    }
    Ok(Field::with_modulus(p, m, u64s(get(v, "modulus")?, "modulus")?)?)
}

pub fn matrix(m: &Matrix) -> Value {
    json!((0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// An `r x c` matrix with entries in `f`.
pub fn matrix_from(v: &Value, r: usize, c: usize, f: &Field) -> CliResult<Matrix> {
    let rows = array(v, "matrix")?;
    if rows.len() != r {
        return Err(bad("matrix row count"));
    }
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        let row = u64s(row, "matrix row")?;
        if row.len() != c || row.iter().any(|&x| x >= f.order()) {
            return Err(bad("matrix entries"));
        }
        data.extend(row);
    }
    Ok(Matrix::from_rows(r, c, data))
}

pub fn module(m: &Module) -> Value {
    json!({ "dims": m.dims(), "mats": m.mats().iter().map(matrix).collect::<Vec<_>>() })
}

pub fn module_from(v: &Value, alg: &Arc<Algebra>) -> CliResult<Module> {
    let q = alg.quiver();
    let dims = usizes(get(v, "dims")?, "dims")?;
    let mats = array(get(v, "mats")?, "mats")?;
    if dims.len() != q.num_vertices() || mats.len() != q.num_arrows() {
        return Err(bad("module shape"));
    }
    let mats = q
        .arrows()
        .iter()
        .zip(mats)
        .map(|(a, x)| matrix_from(x, dims[a.source], dims[a.target], alg.field()))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Module::new(alg, dims, mats)?)
}

pub fn graded_module(g: &GradedModule) -> Value {
    let mut v = module(&g.module);
    v["degrees"] = json!(g.degrees);
    v
}

pub fn graded_module_from(v: &Value, alg: &Arc<Algebra>) -> CliResult<GradedModule> {
    let m = module_from(v, alg)?;
    let degrees = array(get(v, "degrees")?, "degrees")?.iter().map(|d| i64s(d, "degrees")).collect::<CliResult<_>>()?;
    Ok(GradedModule::new(m, degrees)?)
}

/// Matrices of a map, one per vertex.
pub fn modmap(f: &ModMap) -> Value {
    json!(f.mats.iter().map(matrix).collect::<Vec<_>>())
}

/// Per-vertex matrices between two modules; not checked to be a homomorphism.
pub fn modmap_from(v: &Value, src: &Module, tgt: &Module) -> CliResult<ModMap> {
    let mats = array(v, "map")?;
    if mats.len() != src.dims().len() {
        return Err(bad("map shape"));
    }
    let mats = mats
        .iter()
        .enumerate()
        .map(|(i, x)| matrix_from(x, src.dim_at(i), tgt.dim_at(i), src.field()))
        .collect::<CliResult<Vec<_>>>()?;
    let mut out = ModMap::zero(src, tgt);
    out.mats = mats;
    Ok(out)
}

pub fn element_from(v: &Value, alg: &Algebra) -> CliResult<Vec<Elem>> {
    let x = u64s(v, "element")?;
    if x.len() != alg.dim() || x.iter().any(|&c| c >= alg.field().order()) {
        return Err(bad("algebra element"));
    }
    Ok(x)
}

pub fn proj_map(m: &ProjMap) -> Value {
    json!({ "src": m.src, "tgt": m.tgt, "entries": m.entries })
}

pub fn proj_map_from(v: &Value, alg: &Algebra) -> CliResult<ProjMap> {
    let src = usizes(get(v, "src")?, "src")?;
    let tgt = usizes(get(v, "tgt")?, "tgt")?;
    let rows = array(get(v, "entries")?, "entries")?;
    let entries = rows
        .iter()
        .map(|r| array(r, "entries")?.iter().map(|x| element_from(x, alg)).collect::<CliResult<Vec<_>>>())
        .collect::<CliResult<Vec<_>>>()?;
    if src.iter().chain(&tgt).any(|&v| v >= alg.num_vertices()) {
        return Err(bad("projective map vertices"));
    }
    let m = ProjMap { src, tgt, entries };
    if m.entries.len() != m.tgt.len() || m.entries.iter().any(|r| r.len() != m.src.len()) || !m.is_well_formed(alg) {
        return Err(bad("projective map"));
    }
    Ok(m)
}
