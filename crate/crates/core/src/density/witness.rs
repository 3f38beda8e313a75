//! The wrapped zigzag module and the non-density certificate.

use std::sync::Arc;

use rand::Rng;

use super::zigzag::{cycle_cover, verify_zigzag, Cover, ZigzagData, ZigzagReport};
use crate::algebra::{Algebra, ProjMap};
use crate::error::{Error, Result};
use crate::gradability::{is_gradable, GradabilityVerdict, GradedProjMap};
use crate::repr::{is_local, Module};
use crate::tilde::{build_tilde, GradedAlgebra, DEFAULT_DEGREE_CAP};

/// `period` copies of the zigzag arranged as `(+) A_j -> (+) B_j` with `f_j` on the diagonal,
/// `g_j` just above it and, if `wrapped`, `g_0` in the corner `A_0 -> B_{L-1}`. The shifts are
/// those of the unwrapped zigzag, so only the corner is inhomogeneous.
pub fn zigzag_presentation(t: &Algebra, z: &ZigzagData, period: usize, wrapped: bool) -> Result<GradedProjMap> {
    if z.is_empty() || period == 0 {
        return Err(Error::InvalidInput("the zigzag has no relations to wrap".into()));
    }
    let len = z.len() * period;
    let k = |j: usize| j % z.len();
    let src: Vec<usize> = (0..len).map(|j| z.p[k(j)]).collect();
    let tgt: Vec<usize> = (0..len).map(|j| z.q[k(j)]).collect();
    let mut m = ProjMap::zero(t, &src, &tgt);
    for j in 0..len {
        m.entries[j][j] = z.f[k(j)].clone();
        if j > 0 {
            m.entries[j - 1][j] = z.g[k(j)].clone();
        } else if wrapped {
            m.entries[len - 1][0] = t.add(&m.entries[len - 1][0], &z.g[0]);
        }
    }
    let shifts: Vec<i64> = (0..len as i64).map(|j| z.offset(j)).collect();
    GradedProjMap::new(t, m, shifts.clone(), shifts)
}

/// Cokernel of the wrapped presentation.
pub fn wrap_witness(t: &Arc<Algebra>, z: &ZigzagData, period: usize) -> Result<Module> {
    Ok(zigzag_presentation(t, z, period, true)?.map.to_modmap(t).cokernel().0)
}

/// The same cokernel without the corner entry.
pub fn unwrapped_witness(t: &Arc<Algebra>, z: &ZigzagData, period: usize) -> Result<Module> {
    Ok(zigzag_presentation(t, z, period, false)?.map.to_modmap(t).cokernel().0)
}

#[derive(Clone, Debug)]
pub struct DensityCertificate {
    /// Arrows of the oriented cycle used.
    pub cycle: Vec<usize>,
    pub zigzag: ZigzagData,
    pub report: ZigzagReport,
    pub witness: Module,
    pub verdict: GradabilityVerdict,
    /// `End(W)` is local.
    pub indecomposable: bool,
    /// The cokernel with the corner entry removed is gradable.
    pub control_gradable: bool,
}

impl DensityCertificate {
    pub fn is_valid(&self) -> bool {
        self.report.all_pass() && !self.verdict.is_gradable() && self.indecomposable && self.control_gradable
    }
}

#[derive(Clone, Debug)]
pub enum DensityOutcome {
    Certificate(Box<DensityCertificate>),
    NoCycleFound,
    /// Cycles exist but none produced a verified certificate; one diagnostic per cycle.
    Inconclusive(Vec<String>),
}

/// Tries one cycle; `Err(diagnostic)` when it does not yield a verified certificate.
pub fn certify_cycle<R: Rng>(
    g: &GradedAlgebra,
    cycle: &[usize],
    rng: &mut R,
) -> Result<std::result::Result<DensityCertificate, String>> {
    let z = match cycle_cover(g, cycle)? {
        Cover::Zigzag(z) => z,
        Cover::Failure(d) => return Ok(Err(d)),
    };
    let report = verify_zigzag(g, &z, rng)?;
    if !report.all_pass() {
        return Ok(Err(format!("zigzag hypotheses fail: {report:?}")));
    }
    let witness = wrap_witness(&g.tilde, &z, 1)?;
    let verdict = is_gradable(&witness, rng)?;
    let indecomposable = is_local(&witness, rng)?;
    let control_gradable = is_gradable(&unwrapped_witness(&g.tilde, &z, 1)?, rng)?.is_gradable();
    let cert = DensityCertificate { cycle: cycle.to_vec(), zigzag: z, report, witness, verdict, indecomposable, control_gradable };
    if cert.is_valid() {
        Ok(Ok(cert))
    } else {
        Ok(Err(format!(
            "witness checks fail: gradable {}, indecomposable {}, control gradable {}",
            cert.verdict.is_gradable(),
            cert.indecomposable,
            cert.control_gradable
        )))
    }
}

pub fn certify_not_dense<R: Rng>(alg: &Arc<Algebra>, rng: &mut R) -> Result<DensityOutcome> {
    certify_not_dense_capped(alg, DEFAULT_DEGREE_CAP, rng)
}

pub fn certify_not_dense_capped<R: Rng>(alg: &Arc<Algebra>, cap: usize, rng: &mut R) -> Result<DensityOutcome> {
    let cycles = alg.quiver().simple_cycles();
    if cycles.is_empty() {
        return Ok(DensityOutcome::NoCycleFound);
    }
    let g = build_tilde(alg, cap)?;
    let mut diags = Vec::new();
    for c in &cycles {
        match certify_cycle(&g, c, rng)? {
            Ok(cert) => return Ok(DensityOutcome::Certificate(Box::new(cert))),
            Err(d) => diags.push(format!("cycle {c:?}: {d}")),
        }
    }
    Ok(DensityOutcome::Inconclusive(diags))
}
