//! Greedy homogenization of maps between graded projectives.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{Algebra, ProjMap};
use crate::error::{Error, Result};
use crate::linalg::{Elem, Matrix};

/// `(+)_u P_{src[u]}<src_shifts[u]> -> (+)_w P_{tgt[w]}<tgt_shifts[w]>`; the entry
/// `[w][u]` is homogeneous when it has degree `src_shifts[u] - tgt_shifts[w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedProjMap {
    pub map: ProjMap,
    pub src_shifts: Vec<i64>,
    pub tgt_shifts: Vec<i64>,
}

fn component(alg: &Algebra, x: &[Elem], d: i64) -> Vec<Elem> {
    x.iter().enumerate().map(|(i, &c)| if alg.degree(i) as i64 == d { c } else { 0 }).collect()
}

impl GradedProjMap {
    pub fn new(alg: &Algebra, map: ProjMap, src_shifts: Vec<i64>, tgt_shifts: Vec<i64>) -> Result<GradedProjMap> {
        if src_shifts.len() != map.src.len() || tgt_shifts.len() != map.tgt.len() || !map.is_well_formed(alg) {
            return Err(Error::DimensionMismatch("shifts or entries do not fit the map".into()));
        }
        Ok(GradedProjMap { map, src_shifts, tgt_shifts })
    }

    fn expected(&self, w: usize, u: usize) -> i64 {
        self.src_shifts[u] - self.tgt_shifts[w]
    }

    /// Degrees `k` of the nonzero parts; part `k` collects the components of degree `expected + k`.
    pub fn part_degrees(&self, alg: &Algebra) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for (w, row) in self.map.entries.iter().enumerate() {
            for (u, x) in row.iter().enumerate() {
                for (i, &c) in x.iter().enumerate() {
                    if c != 0 {
                        out.insert(alg.degree(i) as i64 - self.expected(w, u));
                    }
                }
            }
        }
        out
    }

    pub fn part(&self, alg: &Algebra, k: i64) -> ProjMap {
        let mut out = self.map.clone();
        for (w, row) in out.entries.iter_mut().enumerate() {
            for (u, x) in row.iter_mut().enumerate() {
                *x = component(alg, x, self.src_shifts[u] - self.tgt_shifts[w] + k);
            }
        }
        out
    }

    pub fn is_homogeneous(&self, alg: &Algebra) -> bool {
        self.part_degrees(alg).iter().all(|&k| k == 0)
    }
}

#[derive(Clone, Debug)]
pub struct Homogenized {
    /// `left . f . right`, homogeneous for the returned shifts.
    pub map: GradedProjMap,
    /// Automorphisms of the target and source.
    pub left: ProjMap,
    pub right: ProjMap,
    pub steps: usize,
}

#[derive(Clone, Debug)]
pub struct StuckReport {
    /// The lowest higher part that could not be factored away.
    pub degree: i64,
    /// Nonzero part degrees of the current map.
    pub parts: Vec<i64>,
    pub map: GradedProjMap,
    pub steps: usize,
}

#[derive(Clone, Debug)]
pub enum Homogenization {
    Done(Homogenized),
    Stuck(StuckReport),
}

/// Homogeneous endomorphism unknowns of `(+)_w P_{verts[w]}<shifts[w]>` in degree `d`: `(row, col, basis index)`.
fn endo_unknowns(alg: &Algebra, verts: &[usize], shifts: &[i64], d: i64) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (w, &tw) in verts.iter().enumerate() {
        for (u, &su) in verts.iter().enumerate() {
            for &i in alg.paths_between(tw, su) {
                if alg.degree(i) as i64 == shifts[u] - shifts[w] + d {
                    out.push((w, u, i));
                }
            }
        }
    }
    out
}

fn unit_map(alg: &Algebra, verts: &[usize], (w, u, i): (usize, usize, usize)) -> ProjMap {
    let mut m = ProjMap::zero(alg, verts, verts);
    m.entries[w][u] = alg.unit(i);
    m
}

fn flatten(m: &ProjMap) -> Vec<Elem> {
    m.entries.iter().flatten().flatten().copied().collect()
}

fn combine(alg: &Algebra, verts: &[usize], unk: &[(usize, usize, usize)], c: &[Elem]) -> ProjMap {
    let mut m = ProjMap::zero(alg, verts, verts);
    for (&(w, u, i), &x) in unk.iter().zip(c) {
        m.entries[w][u][i] = alg.field().add(m.entries[w][u][i], x);
    }
    m
}

/// Repeatedly removes the lowest higher part `f_d` by solving `f_d = r f_0 + f_0 s` with
/// homogeneous `r`, `s` of degree `d` and replacing `f` by `(1 - r) f (1 - s)`.
pub fn homogenize_map(alg: &Arc<Algebra>, f: &GradedProjMap) -> Result<Homogenization> {
    let fl = alg.field();
    let mut cur = f.clone();
    if let Some(&k0) = cur.part_degrees(alg).iter().next() {
        for t in cur.tgt_shifts.iter_mut() {
            *t -= k0;
        }
    }
    let (src, tgt) = (cur.map.src.clone(), cur.map.tgt.clone());
    let mut left = ProjMap::identity(alg, &tgt);
    let mut right = ProjMap::identity(alg, &src);
    let mut steps = 0;
    loop {
        let parts: Vec<i64> = cur.part_degrees(alg).into_iter().collect();
        let Some(&d) = parts.iter().find(|&&k| k > 0) else {
            return Ok(Homogenization::Done(Homogenized { map: cur, left, right, steps }));
        };
        let f0 = cur.part(alg, 0);
        let fd = cur.part(alg, d);
        let ru = endo_unknowns(alg, &tgt, &cur.tgt_shifts, d);
        let su = endo_unknowns(alg, &src, &cur.src_shifts, d);
        let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(ru.len() + su.len());
        for &x in &ru {
            cols.push(flatten(&f0.then(alg, &unit_map(alg, &tgt, x))));
        }
        for &x in &su {
            cols.push(flatten(&unit_map(alg, &src, x).then(alg, &f0)));
        }
        let target = flatten(&fd);
        let sol = if cols.is_empty() {
            if target.iter().all(|&c| c == 0) {
                Some(Vec::new())
            } else {
                None
            }
        } else {
            Matrix::from_vecs(target.len(), &cols).transpose().solve(fl, &target)
        };
        let Some(c) = sol else {
            return Ok(Homogenization::Stuck(StuckReport { degree: d, parts, map: cur, steps }));
        };
        let r = combine(alg, &tgt, &ru, &c[..ru.len()]);
        let s = combine(alg, &src, &su, &c[ru.len()..]);
        let one_r = ProjMap::identity(alg, &tgt).add(alg, &r.scale(alg, fl.neg(1)));
        let one_s = ProjMap::identity(alg, &src).add(alg, &s.scale(alg, fl.neg(1)));
        cur.map = one_s.then(alg, &cur.map).then(alg, &one_r);
        left = left.then(alg, &one_r);
        right = one_s.then(alg, &right);
        steps += 1;
    }
}
