//! Bounded complexes of finitely generated projective modules.

use std::sync::Arc;

use crate::algebra::{min_proj_resolution, Algebra, ProjMap, DEFAULT_GLDIM_CAP};
use crate::error::{Error, Result};
use crate::linalg::Elem;
use crate::repr::Module;

/// Cohomologically graded: `terms[k]` sits in degree `low + k` and
/// `diffs[k]: terms[k] -> terms[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    pub low: i64,
    pub terms: Vec<Vec<usize>>,
    pub diffs: Vec<ProjMap>,
}

impl ProjComplex {
    pub fn zero() -> ProjComplex {
        ProjComplex { low: 0, terms: vec![], diffs: vec![] }
    }

    /// A sum of indecomposable projectives in a single degree.
    pub fn stalk(verts: &[usize], degree: i64) -> ProjComplex {
        ProjComplex { low: degree, terms: vec![verts.to_vec()], diffs: vec![] }.trimmed()
    }

    pub fn new(alg: &Algebra, low: i64, terms: Vec<Vec<usize>>, diffs: Vec<ProjMap>) -> Result<ProjComplex> {
        if !terms.is_empty() && diffs.len() + 1 != terms.len() {
            return Err(Error::DimensionMismatch("need one differential between consecutive terms".into()));
        }
        let c = ProjComplex { low, terms, diffs };
        for (k, d) in c.diffs.iter().enumerate() {
            if d.src != c.terms[k] || d.tgt != c.terms[k + 1] || !d.is_well_formed(alg) {
                return Err(Error::DimensionMismatch(format!("differential {k} has the wrong shape")));
            }
        }
        if !c.is_complex(alg) {
            return Err(Error::InvalidInput("d o d is not zero".into()));
        }
        Ok(c.trimmed())
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    pub fn term(&self, n: i64) -> &[usize] {
        if n < self.low || n > self.high() {
            return &[];
        }
        &self.terms[(n - self.low) as usize]
    }

    /// Differential leaving degree `n`, or `None` if either end is zero.
    pub fn diff(&self, n: i64) -> Option<&ProjMap> {
        if n < self.low || n >= self.high() {
            return None;
        }
        Some(&self.diffs[(n - self.low) as usize])
    }

    pub fn diff_or_zero(&self, alg: &Algebra, n: i64) -> ProjMap {
        self.diff(n).cloned().unwrap_or_else(|| ProjMap::zero(alg, self.term(n), self.term(n + 1)))
    }

    pub fn is_complex(&self, alg: &Algebra) -> bool {
        self.diffs.windows(2).all(|w| w[0].then(alg, &w[1]).is_zero())
    }

    /// Minimal means no differential entry has a unit coefficient.
    pub fn is_minimal(&self, alg: &Algebra) -> bool {
        self.diffs.iter().all(|d| d.is_radical(alg))
    }

    /// Total number of indecomposable summands.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(mut self) -> ProjComplex {
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            if !self.diffs.is_empty() {
                self.diffs.pop();
            }
        }
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.low += 1;
        }
        if self.terms.is_empty() {
            self.low = 0;
        }
        self
    }

    /// `C[n]`: `C[n]^k = C^{k+n}`, differentials multiplied by `(-1)^n`.
    pub fn shift(&self, alg: &Algebra, n: i64) -> ProjComplex {
        let sign = if n.rem_euclid(2) == 1 { alg.field().neg(1) } else { 1 };
        ProjComplex {
            low: self.low - n,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(alg, sign)).collect(),
        }
    }

    pub fn direct_sum(&self, alg: &Algebra, o: &ProjComplex) -> ProjComplex {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high().max(o.high());
        let terms: Vec<Vec<usize>> = (low..=high).map(|n| [self.term(n), o.term(n)].concat()).collect();
        let diffs = (low..high)
            .map(|n| {
                let a = self.diff_or_zero(alg, n);
                let b = o.diff_or_zero(alg, n);
                block_diag(alg, &a, &b)
            })
            .collect();
        ProjComplex { low, terms, diffs }
    }

    /// Multiset of vertices in each degree, for quick non-isomorphism checks.
    pub fn profile(&self) -> Vec<(i64, Vec<usize>)> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, t)| {
                let mut s = t.clone();
                s.sort_unstable();
                (self.low + k as i64, s)
            })
            .collect()
    }

    /// Splits off contractible summands `P --unit--> P` until minimal.
    pub fn minimize(&self, alg: &Algebra) -> ProjComplex {
        let mut c = self.clone();
        'outer: loop {
            for k in 0..c.diffs.len() {
                let d = &c.diffs[k];
                for (w, row) in d.entries.iter().enumerate() {
                    for (u, x) in row.iter().enumerate() {
                        if d.src[u] == d.tgt[w] && x[d.src[u]] != 0 {
                            c = eliminate(alg, &c, k, u, w);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        c.trimmed()
    }
}

fn block_diag(alg: &Algebra, a: &ProjMap, b: &ProjMap) -> ProjMap {
    let src = [a.src.clone(), b.src.clone()].concat();
    let tgt = [a.tgt.clone(), b.tgt.clone()].concat();
    let mut m = ProjMap::zero(alg, &src, &tgt);
    for w in 0..a.tgt.len() {
        for u in 0..a.src.len() {
            m.entries[w][u] = a.entries[w][u].clone();
        }
    }
    for w in 0..b.tgt.len() {
        for u in 0..b.src.len() {
            m.entries[a.tgt.len() + w][a.src.len() + u] = b.entries[w][u].clone();
        }
    }
    m
}

/// Inverse of a unit of the local ring `e_v A e_v`.
pub fn local_inverse(alg: &Algebra, x: &[Elem], v: usize) -> Vec<Elem> {
    let f = alg.field();
    let lam = x[v];
    assert!(lam != 0, "not a unit");
    let li = f.inv(lam);
    // x = lam (e - n) with n = e - x/lam nilpotent; x^{-1} = lam^{-1} (e + n + n^2 + ...)
    let e = alg.idempotent(v);
    let n = alg.sub(&e, &alg.scale(x, li));
    let mut acc = e.clone();
    let mut pw = e;
    loop {
        pw = alg.mul(&pw, &n);
        if pw.iter().all(|&c| c == 0) {
            break;
        }
        acc = alg.add(&acc, &pw);
    }
    alg.scale(&acc, li)
}

/// Gaussian elimination of the unit entry `(w, u)` of `diffs[k]`.
fn eliminate(alg: &Algebra, c: &ProjComplex, k: usize, u0: usize, w0: usize) -> ProjComplex {
    let d = &c.diffs[k];
    let v = d.src[u0];
    let xinv = local_inverse(alg, &d.entries[w0][u0], v);
    let keep_src: Vec<usize> = (0..d.src.len()).filter(|&u| u != u0).collect();
    let keep_tgt: Vec<usize> = (0..d.tgt.len()).filter(|&w| w != w0).collect();
    let mut terms = c.terms.clone();
    terms[k] = keep_src.iter().map(|&u| d.src[u]).collect();
    terms[k + 1] = keep_tgt.iter().map(|&w| d.tgt[w]).collect();
    let mut diffs = c.diffs.clone();
    let mut nd = ProjMap::zero(alg, &terms[k], &terms[k + 1]);
    for (wi, &w) in keep_tgt.iter().enumerate() {
        let left = alg.mul(&d.entries[w][u0], &xinv);
        for (ui, &u) in keep_src.iter().enumerate() {
            let corr = alg.mul(&left, &d.entries[w0][u]);
            nd.entries[wi][ui] = alg.sub(&d.entries[w][u], &corr);
        }
    }
    diffs[k] = nd;
    if k > 0 {
        let prev = &c.diffs[k - 1];
        let mut np = ProjMap::zero(alg, &terms[k - 1], &terms[k]);
        for (ui, &u) in keep_src.iter().enumerate() {
            np.entries[ui] = prev.entries[u].clone();
        }
        diffs[k - 1] = np;
    }
    if k + 1 < c.diffs.len() {
        let next = &c.diffs[k + 1];
        let mut nn = ProjMap::zero(alg, &terms[k + 1], &terms[k + 2]);
        for z in 0..next.tgt.len() {
            nn.entries[z] = keep_tgt.iter().map(|&w| next.entries[z][w].clone()).collect();
        }
        diffs[k + 1] = nn;
    }
    ProjComplex { low: c.low, terms, diffs }
}

/// Minimal projective resolution as a complex in degrees `<= 0`.
pub fn proj_resolve(m: &Module) -> Result<ProjComplex> {
    proj_resolve_capped(m, DEFAULT_GLDIM_CAP)
}

pub fn proj_resolve_capped(m: &Module, cap: usize) -> Result<ProjComplex> {
    let r = min_proj_resolution(m, cap);
    if !r.complete {
        return Err(Error::GlobalDimensionTooLarge(cap));
    }
    if r.terms.is_empty() {
        return Ok(ProjComplex::zero());
    }
    let len = r.length();
    let terms: Vec<Vec<usize>> = r.terms.iter().rev().cloned().collect();
    let diffs: Vec<ProjMap> = r.differentials.iter().rev().cloned().collect();
    Ok(ProjComplex { low: -(len as i64), terms, diffs })
}

/// The regular module `A = (+)_i P_i` in degree 0.
pub fn regular(alg: &Arc<Algebra>) -> ProjComplex {
    ProjComplex::stalk(&(0..alg.num_vertices()).collect::<Vec<_>>(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{simple, AlgebraPresentation, Quiver};
    use crate::linalg::Field;

    fn a2() -> Arc<Algebra> {
        let f = Field::prime(101).unwrap();
        let q = Quiver::from_parts(2, &[("a", 0, 1)]).unwrap();
        Arc::new(Algebra::new(&AlgebraPresentation::new(f, q, vec![]).unwrap()).unwrap())
    }

    #[test]
    fn simple_resolution_shape() {
        let a = a2();
        let c = proj_resolve(&simple(&a, 0).unwrap()).unwrap();
        assert_eq!((c.low, c.terms.clone()), (-1, vec![vec![1], vec![0]]));
        assert!(c.is_complex(&a) && c.is_minimal(&a));
        let s = c.shift(&a, 2).shift(&a, -5);
        assert_eq!(s, c.shift(&a, -3));
    }

    #[test]
    fn contractible_summand_is_removed() {
        let a = a2();
        let c = proj_resolve(&simple(&a, 0).unwrap()).unwrap();
        let cone = ProjComplex { low: -1, terms: vec![vec![1], vec![1]], diffs: vec![ProjMap::identity(&a, &[1])] };
        let big = c.direct_sum(&a, &cone);
        assert_eq!(big.size(), 4);
        let m = big.minimize(&a);
        assert_eq!(m.profile(), c.profile());
        assert!(m.is_minimal(&a));
    }
}
