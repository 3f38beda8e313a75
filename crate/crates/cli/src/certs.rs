//! Gradability and non-density certificates as JSON.

use serde_json::{json, Value};

use orbitcat_core::density::{certify_not_dense_capped, zigzag_presentation, DensityCertificate, DensityOutcome, ZigzagData, ZigzagReport};
use orbitcat_core::gradability::{brute_force_grading, is_gradable, Gradability, GradabilityVerdict};
use orbitcat_core::linalg::Elem;
use orbitcat_core::algebra::Algebra;
use orbitcat_core::repr::{Module, Refutation};

use crate::build::{self, CliResult};
use crate::commands::{rng, Context};
use crate::encode;
use crate::report::Status;

pub const ORACLE_LIMIT: u64 = 1 << 16;

pub(crate) fn refutation(r: &Refutation) -> Value {
    match r {
        Refutation::DimensionVectors { left, right } => json!({ "kind": "dimension_vectors", "left": left, "right": right }),
        Refutation::Summands { unmatched } => json!({ "kind": "summands", "unmatched": unmatched }),
    }
}

pub(crate) fn gradability(v: &GradabilityVerdict) -> Value {
    let mut out = match &v.decision {
        Gradability::Gradable { lift, iso } => {
            json!({ "kind": "gradable", "lift": encode::graded_module(lift), "iso": encode::modmap(iso) })
        }
        Gradability::NotGradable { alpha, order, refutation: r } => {
            json!({ "kind": "not_gradable", "alpha": alpha, "order": order, "refutation": refutation(r) })
        }
    };
    out["field"] = encode::field(&v.field);
    out
}

/// The brute-force search, when it applies within its budget.
pub(crate) fn oracle(m: &Module, seed: u64) -> Option<bool> {
    brute_force_grading(m, ORACLE_LIMIT, &mut rng(seed)).ok().map(|g| g.is_some())
}

pub(crate) fn grade_result(ctx: &Context, name: &str) -> CliResult<(Status, Value)> {
    let g = ctx.tilde()?;
    let m = build::module(&ctx.spec, name, &ctx.alg, Some(&g.tilde))?;
    let m = if m.same_algebra(&Module::zero(&g.tilde)) { m } else { build::inflate(&m, &g.tilde)? };
    let declared = build::graded(&ctx.spec, name, &m)?.map(|gm| gm.is_homogeneous());
    let v = is_gradable(&m, &mut rng(ctx.flags.seed))?;
    Ok((
        Status::Definite,
        json!({
            "module": name,
            "dims": m.dims(),
            "input_module": encode::module(&m),
            "gradable": v.is_gradable(),
            "declared_grading_valid": declared,
            "oracle_gradable": oracle(&m, ctx.flags.seed),
            "certificate": gradability(&v),
        }),
    ))
}

fn element(t: &Algebra, x: &[Elem]) -> Value {
    json!({ "coeffs": x, "display": t.element_display(x) })
}

fn zigzag(t: &Algebra, z: &ZigzagData) -> Value {
    let q = t.quiver();
    json!({
        "p": z.p,
        "q": z.q,
        "p_names": z.p.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
        "q_names": z.q.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
        "f": z.f.iter().map(|x| element(t, x)).collect::<Vec<_>>(),
        "g": z.g.iter().map(|x| element(t, x)).collect::<Vec<_>>(),
        "f_paths": z.f_paths,
        "g_paths": z.g_paths,
        "g_degrees": z.g_degrees,
        "offsets": z.offsets,
        "sequences": z.sequences.iter().map(|s| json!({ "simples": s.simples, "relations": s.relations })).collect::<Vec<_>>(),
    })
}

pub(crate) fn zigzag_report(r: &ZigzagReport) -> Value {
    json!({
        "local": r.local,
        "f_nonzero_radical": r.f_nonzero_radical,
        "degrees_match": r.degrees_match,
        "offsets_distinct": r.offsets_distinct,
        "sequences_valid": r.sequences_valid,
        "f_not_factoring": r.f_not_factoring,
        "g_not_factoring": r.g_not_factoring,
        "all_pass": r.all_pass(),
    })
}

pub(crate) fn density_certificate(c: &DensityCertificate) -> CliResult<Value> {
    let t = c.witness.algebra();
    let pres = zigzag_presentation(t, &c.zigzag, 1, true)?;
    let q = c.witness.algebra().quiver();
    Ok(json!({
        "cycle": c.cycle.iter().map(|&a| q.arrow(a).name.clone()).collect::<Vec<_>>(),
        "zigzag": zigzag(t, &c.zigzag),
        "zigzag_report": zigzag_report(&c.report),
        "presentation": {
            "map": encode::proj_map(&pres.map),
            "src_shifts": pres.src_shifts,
            "tgt_shifts": pres.tgt_shifts,
        },
        "witness": encode::module(&c.witness),
        "gradability": gradability(&c.verdict),
        "indecomposable": c.indecomposable,
        "control_gradable": c.control_gradable,
    }))
}

pub(crate) fn not_dense_result(ctx: &Context) -> CliResult<(Status, Value)> {
    let out = certify_not_dense_capped(&ctx.alg, ctx.flags.degree_cap, &mut rng(ctx.flags.seed))?;
    Ok(match out {
        DensityOutcome::Certificate(c) => {
            (Status::Definite, json!({ "verdict": "not_dense", "certificate": density_certificate(&c)? }))
        }
        DensityOutcome::NoCycleFound => (Status::Definite, json!({ "verdict": "no_cycle_found" })),
        DensityOutcome::Inconclusive(d) => (Status::Inconclusive, json!({ "verdict": "inconclusive", "diagnostics": d })),
    })
}
