//! Graded modules over a graded quiver algebra, graded Hom, shift and push-down.

use std::sync::Arc;

use crate::algebra::{proj_module, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{Elem, Matrix};
use crate::repr::{hom, HomSpace, Module};

/// A module whose basis vectors carry degrees; an arrow of degree `d` maps degree `l` into degree `l + d`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule {
    pub module: Module,
    /// `degrees[v][k]`: degree of basis vector `k` at vertex `v`.
    pub degrees: Vec<Vec<i64>>,
}

impl GradedModule {
    pub fn new(module: Module, degrees: Vec<Vec<i64>>) -> Result<GradedModule> {
        let g = GradedModule { module, degrees };
        if g.degrees.len() != g.module.dims().len()
            || g.degrees.iter().zip(g.module.dims()).any(|(d, &n)| d.len() != n)
        {
            return Err(Error::DimensionMismatch("one degree per basis vector".into()));
        }
        if !g.is_homogeneous() {
            return Err(Error::InvalidInput("arrow action does not respect the grading".into()));
        }
        Ok(g)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    pub fn is_homogeneous(&self) -> bool {
        let q = self.algebra().quiver();
        q.arrows().iter().enumerate().all(|(a, ar)| {
            let m = self.module.mat(a);
            (0..m.rows()).all(|i| {
                (0..m.cols()).all(|j| {
                    m.get(i, j) == 0 || self.degrees[ar.target][j] == self.degrees[ar.source][i] + ar.degree as i64
                })
            })
        })
    }

    pub fn push_down(&self) -> Module {
        self.module.clone()
    }

    /// `M<d>`: every degree raised by `d`.
    pub fn shift(&self, d: i64) -> GradedModule {
        let degrees = self.degrees.iter().map(|v| v.iter().map(|x| x + d).collect()).collect();
        GradedModule { module: self.module.clone(), degrees }
    }

    /// Smallest and largest degree, if nonzero.
    pub fn support(&self) -> Option<(i64, i64)> {
        let all: Vec<i64> = self.degrees.iter().flatten().copied().collect();
        Some((*all.iter().min()?, *all.iter().max()?))
    }

    /// `M_{[lo, hi]}`: agrees with `M` in degrees `lo..=hi`, zero elsewhere (a subquotient).
    pub fn truncate(&self, lo: i64, hi: i64) -> GradedModule {
        let keep: Vec<Vec<usize>> =
            self.degrees.iter().map(|d| (0..d.len()).filter(|&k| d[k] >= lo && d[k] <= hi).collect()).collect();
        let alg = self.algebra();
        let q = alg.quiver();
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, ar)| self.module.mat(a).select_rows(&keep[ar.source]).select_cols(&keep[ar.target]))
            .collect();
        let dims = keep.iter().map(|k| k.len()).collect();
        let degrees = keep.iter().zip(&self.degrees).map(|(k, d)| k.iter().map(|&i| d[i]).collect()).collect();
        GradedModule { module: Module::new_unchecked(alg, dims, mats), degrees }
    }

    /// The graded projective `P_i<d>`: the path `p` sits in degree `deg p + d`.
    pub fn projective(alg: &Arc<Algebra>, i: usize, d: i64) -> GradedModule {
        let module = proj_module(alg, &[i]);
        let degrees = (0..alg.num_vertices())
            .map(|v| alg.paths_between(i, v).iter().map(|&p| alg.degree(p) as i64 + d).collect())
            .collect();
        GradedModule { module, degrees }
    }

    pub fn direct_sum(&self, o: &GradedModule) -> GradedModule {
        let degrees = self.degrees.iter().zip(&o.degrees).map(|(a, b)| [a.clone(), b.clone()].concat()).collect();
        GradedModule { module: self.module.direct_sum(&o.module), degrees }
    }
}

/// Degree-preserving homomorphisms `M -> N`.
pub fn graded_hom(m: &GradedModule, n: &GradedModule) -> Result<HomSpace> {
    let h = hom(&m.module, &n.module)?;
    let f = m.module.field();
    let nv = m.degrees.len();
    // one equation per entry joining different degrees
    let mut eqs: Vec<Vec<Elem>> = Vec::new();
    for v in 0..nv {
        for (i, &di) in m.degrees[v].iter().enumerate() {
            for (j, &dj) in n.degrees[v].iter().enumerate() {
                if di != dj {
                    eqs.push(h.basis.iter().map(|b| b.mats[v].get(i, j)).collect());
                }
            }
        }
    }
    let sol = if eqs.is_empty() {
        Matrix::identity(h.dim())
    } else {
        Matrix::from_vecs(h.dim(), &eqs).nullspace(f)
    };
    let basis = sol.row_vecs().iter().map(|c| h.combination(c)).collect();
    Ok(HomSpace { src: m.module.clone(), tgt: n.module.clone(), basis })
}

/// `Hom_gr(M, N<d>)` for each `d` in `range`.
pub fn graded_hom_shifts(
    m: &GradedModule,
    n: &GradedModule,
    range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<(i64, HomSpace)>> {
    range.map(|d| Ok((d, graded_hom(m, &n.shift(d))?))).collect()
}
