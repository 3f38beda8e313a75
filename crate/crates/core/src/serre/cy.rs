//! Indecomposability of complexes and the search for `X[a] = S^b X`.

use std::sync::Arc;

use rand::Rng;

use super::complex::ProjComplex;
use super::functor::serre;
use super::hom::{chain_map_top, delta_matrix, minimal_complexes_isomorphic};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{next_prime, Echelon, Elem, Matrix};
use crate::repr::decompose::DEFAULT_RETRIES;

/// Whether a complex is indecomposable in the homotopy category. Null-homotopic
/// and radical chain maps form a nilpotent ideal, so this reduces to locality of
/// the algebra of tops of chain maps.
pub fn is_indecomposable<R: Rng>(alg: &Algebra, c: &ProjComplex, rng: &mut R) -> Result<bool> {
    let c = c.minimize(alg);
    if c.is_zero() {
        return Ok(false);
    }
    let f = alg.field();
    let (lay, _, dm) = delta_matrix(alg, &c, &c, 0);
    let z = dm.left_kernel(f);
    let tops: Vec<Matrix> = z.row_vecs().iter().map(|r| chain_map_top(alg, &lay.unpack(alg, &c, &c, r))).collect();
    let s = tops.first().map_or(0, |t| t.rows());
    if f.characteristic() <= s as u64 {
        return Err(Error::CharacteristicTooSmall { have: f.characteristic(), needed: next_prime(s as u64) });
    }
    let mut ech = Echelon::new(s * s);
    let basis: Vec<Matrix> = tops.into_iter().filter(|t| ech.insert(f, t.data())).collect();
    let k = basis.len();
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g.set(i, j, basis[i].mul(f, &basis[j]).trace(f));
        }
    }
    let top = k - g.nullspace(f).rows();
    if top == 1 {
        return Ok(true);
    }
    for _ in 0..DEFAULT_RETRIES {
        let mut x = Matrix::zeros(s, s);
        for b in &basis {
            let c: Elem = rng.gen_range(0..f.order());
            x = x.add(f, &b.scale(f, c));
        }
        let factors = x.minpoly(f).factor(f)?;
        if factors.len() >= 2 {
            return Ok(false);
        }
        if factors[0].0.degree() == Some(top) {
            return Ok(true);
        }
    }
    Err(Error::NoConvergence("no idempotent found within the retry budget".into()))
}

/// `a_max = 4V + 8`, `b_max = 3V + 6` for `V` vertices.
pub fn default_caps(num_vertices: usize) -> (i64, i64) {
    let v = num_vertices as i64;
    (4 * v + 8, 3 * v + 6)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CySearch {
    /// All `(a, b)` with `C[a] = S^b C`, `|a| <= a_max`, `1 <= b <= b_max`.
    pub hits: Vec<(i64, i64)>,
    pub a_max: i64,
    pub b_max: i64,
    /// Number of projective summands of `S^b C` for `b = 0..=b_max`.
    pub orbit_sizes: Vec<usize>,
    pub diagnostic: Option<String>,
}

impl CySearch {
    /// Some hit has `a != b`.
    pub fn has_fractional_hit(&self) -> bool {
        self.hits.iter().any(|&(a, b)| a != b)
    }
}

pub fn fractional_cy_search<R: Rng>(
    alg: &Arc<Algebra>,
    c: &ProjComplex,
    a_max: i64,
    b_max: i64,
    rng: &mut R,
) -> Result<CySearch> {
    if a_max <= 0 || b_max <= 0 {
        return Err(Error::InvalidInput("search caps must be positive".into()));
    }
    let x = c.minimize(alg);
    if !is_indecomposable(alg, &x, rng)? {
        return Err(Error::InvalidInput("complex is not indecomposable".into()));
    }
    let mut hits = Vec::new();
    let mut sizes = vec![x.size()];
    let mut widths = vec![x.terms.len()];
    let mut cur = x.clone();
    for b in 1..=b_max {
        cur = serre(alg, &cur)?;
        sizes.push(cur.size());
        widths.push(cur.terms.len());
        let a = x.low - cur.low;
        if a.abs() > a_max {
            continue;
        }
        let sx = x.shift(alg, a);
        if minimal_complexes_isomorphic(alg, &sx, &cur, rng).is_iso() {
            hits.push((a, b));
        }
    }
    let diagnostic = if hits.is_empty() {
        let grew = sizes.last() > sizes.first() || widths.last() > widths.first();
        Some(if grew {
            "caps too small: the Serre orbit is still growing".to_string()
        } else {
            "no hit within the caps".to_string()
        })
    } else {
        None
    };
    Ok(CySearch { hits, a_max, b_max, orbit_sizes: sizes, diagnostic })
}
