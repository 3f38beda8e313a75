//! Exhaustive grading search over a prime field.
//!
//! A grading of `M` is the same as a diagonalizable "degree operator" `D` with
//! integer eigenvalues and `M_a D_t - D_s M_a = deg(a) M_a` for every arrow. Over
//! `GF(p)` with `p > deg * dim M` the eigenvalues live in `Z/p` and lift to `Z`
//! by cutting at a gap. The solutions form a coset of `End(M)`; the search runs
//! summand by summand and enumerates every point of the coset modulo scalars.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{AffineSolution, Echelon, Elem, Field, Matrix};
use crate::repr::{decompose, Module};
use crate::tilde::GradedModule;

/// Affine space of degree operators, as one vector per solution: the blocks `D_v` concatenated row-major.
pub fn degree_operators(m: &Module) -> Result<Option<AffineSolution>> {
    let f = m.field();
    let q = m.algebra().quiver();
    let nv = q.num_vertices();
    let mut off = vec![0usize; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + m.dim_at(v) * m.dim_at(v);
    }
    let unknowns = off[nv];
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut rhs: Vec<Elem> = Vec::new();
    for (a, ar) in q.arrows().iter().enumerate() {
        let (s, t) = (ar.source, ar.target);
        let (ns, nt) = (m.dim_at(s), m.dim_at(t));
        let ma = m.mat(a);
        let d = f.from_i64(ar.degree as i64);
        // entry (i, j) of M_a D_t - D_s M_a
        for i in 0..ns {
            for j in 0..nt {
                let mut row = vec![0; unknowns];
                for k in 0..nt {
                    let idx = off[t] + k * nt + j;
                    row[idx] = f.add(row[idx], ma.get(i, k));
                }
                for k in 0..ns {
                    let idx = off[s] + i * ns + k;
                    row[idx] = f.sub(row[idx], ma.get(k, j));
                }
                rows.push(row);
                rhs.push(f.mul(d, ma.get(i, j)));
            }
        }
    }
    if rows.is_empty() {
        return Ok(Some(AffineSolution { particular: vec![0; unknowns], nullspace: Matrix::identity(unknowns) }));
    }
    let a = Matrix::from_vecs(unknowns, &rows);
    let b = Matrix::from_rows(rhs.len(), 1, rhs);
    crate::linalg::solve_system(f, &a, &b)
}

fn blocks(m: &Module, x: &[Elem]) -> Vec<Matrix> {
    let mut at = 0;
    m.dims()
        .iter()
        .map(|&n| {
            let b = Matrix::from_rows(n, n, x[at..at + n * n].to_vec());
            at += n * n;
            b
        })
        .collect()
}

/// The grading defined by `D`, if it is diagonalizable with eigenvalues cut into `Z`.
fn grading_from_operator(m: &Module, d: &[Matrix], g: u64) -> Option<GradedModule> {
    let f = m.field();
    let p = f.characteristic();
    let mut eig: Vec<Vec<(Elem, Matrix)>> = Vec::new();
    let mut seen = vec![false; p as usize];
    for (v, dv) in d.iter().enumerate() {
        let n = m.dim_at(v);
        let mut here = Vec::new();
        if n > 0 {
            let mp = dv.minpoly(f);
            let roots = mp.roots(f);
            if roots.len() != mp.degree().unwrap_or(0) {
                return None;
            }
            for e in roots {
                seen[e as usize] = true;
                here.push((e, dv.sub(f, &Matrix::scalar(n, e)).left_kernel(f)));
            }
        }
        eig.push(here);
    }
    // start right after the widest run of unused residues
    let mut best = (0u64, 0u64);
    for s in 0..p {
        if seen[s as usize] && !seen[((s + p - 1) % p) as usize] {
            let gap = (1..p).take_while(|k| !seen[((s + p - k) % p) as usize]).count() as u64;
            if gap > best.0 {
                best = (gap, s);
            }
        }
    }
    if best.0 < g && seen.iter().filter(|&&x| !x).count() > 0 {
        return None;
    }
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for (v, here) in eig.iter().enumerate() {
        let mut b = Matrix::zeros(0, m.dim_at(v));
        let mut ds = Vec::new();
        for (e, sp) in here {
            b = b.vstack(sp);
            ds.extend(std::iter::repeat(((e + p - best.1) % p) as i64).take(sp.rows()));
        }
        basis.push(b);
        degrees.push(ds);
    }
    GradedModule::new(m.conjugate(&basis), degrees).ok()
}

fn search_indecomposable(m: &Module, g: u64, limit: u64) -> Result<Option<GradedModule>> {
    let f = m.field();
    let Some(sol) = degree_operators(m)? else { return Ok(None) };
    // drop the scalar direction: it only shifts every degree
    let unit: Vec<Elem> = blocks_identity(m);
    let mut ech = Echelon::new(unit.len());
    ech.insert(f, &unit);
    let dirs: Vec<Vec<Elem>> = sol.nullspace.row_vecs().into_iter().filter(|r| ech.insert(f, r)).collect();
    let q = f.order();
    let total = (q as f64).powi(dirs.len() as i32);
    if total > limit as f64 {
        return Err(Error::NoConvergence(format!("{} degree operators exceed the search limit {limit}", total as u64)));
    }
    let mut coeff = vec![0u64; dirs.len()];
    loop {
        let mut x = sol.particular.clone();
        for (c, r) in coeff.iter().zip(&dirs) {
            crate::linalg::matrix::vec_axpy(f, &mut x, *c, r);
        }
        if let Some(gm) = grading_from_operator(m, &blocks(m, &x), g) {
            return Ok(Some(gm));
        }
        // next coefficient tuple
        let mut k = 0;
        loop {
            if k == coeff.len() {
                return Ok(None);
            }
            coeff[k] += 1;
            if coeff[k] < q {
                break;
            }
            coeff[k] = 0;
            k += 1;
        }
    }
}

fn blocks_identity(m: &Module) -> Vec<Elem> {
    m.dims().iter().flat_map(|&n| Matrix::identity(n).data().to_vec()).collect()
}

/// Searches for a grading summand by summand; `Ok(None)` if some summand admits none.
/// `limit` bounds the number of operators tried per summand.
pub fn brute_force_grading<R: Rng>(m: &Module, limit: u64, rng: &mut R) -> Result<Option<GradedModule>> {
    let f: &Field = m.field();
    if !f.is_prime_field() {
        return Err(Error::InvalidInput("the grading search runs over a prime field".into()));
    }
    let g = m.algebra().quiver().arrows().iter().map(|a| a.degree as u64).max().unwrap_or(1).max(1);
    if f.characteristic() <= g * m.dim() as u64 {
        return Err(Error::CharacteristicTooSmall { have: f.characteristic(), needed: g * m.dim() as u64 + 1 });
    }
    let dec = decompose(m, rng)?;
    let mut out: Option<GradedModule> = None;
    for s in &dec.summands {
        match search_indecomposable(&s.module, g, limit)? {
            Some(gm) => out = Some(match out { None => gm, Some(o) => o.direct_sum(&gm) }),
            None => return Ok(None),
        }
    }
    Ok(Some(out.unwrap_or_else(|| GradedModule { module: m.clone(), degrees: m.dims().iter().map(|&n| vec![0; n]).collect() })))
}
