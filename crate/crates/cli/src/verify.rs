//! Independent re-checking of emitted reports.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use orbitcat_core::algebra::Algebra;
use orbitcat_core::density::{unwrapped_witness, verify_zigzag, zigzag_presentation, RelationSequence, ZigzagData};
use orbitcat_core::gradability::{extend_algebra, extend_module, is_gradable, twist, GradedProjMap};
use orbitcat_core::linalg::Embedding;
use orbitcat_core::repr::{is_isomorphic, is_local, IsoVerdict, Module};
use orbitcat_core::serre::{complexes_isomorphic, proj_resolve, serre};
use orbitcat_core::tilde::GradedAlgebra;

use crate::build::{self, CliError, CliResult};
use crate::certs::oracle;
use crate::commands::{info_result, rng, tau2_result, tilde_result, Command, Context};
use crate::encode::*;
use crate::report::{digest, Flags, Report, Status, SCHEMA_VERSION};

/// Named checks; a check that cannot be evaluated counts as failed.
#[derive(Default)]
struct Checks(Vec<(String, bool, Option<String>)>);

impl Checks {
    fn add(&mut self, name: &str, r: CliResult<bool>) {
        match r {
            Ok(b) => self.0.push((name.to_string(), b, None)),
            Err(e) => self.0.push((name.to_string(), false, Some(e.to_string()))),
        }
    }

    fn all(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|c| c.1)
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (n, b, e) in &self.0 {
            m.insert(n.clone(), json!({ "pass": b, "error": e }));
        }
        Value::Object(m)
    }
}

fn flags_from(v: &Value) -> CliResult<Flags> {
    let opt_i = |k: &str| v.get(k).and_then(Value::as_i64);
    Ok(Flags {
        seed: u64_of(v, "seed")?,
        prime: v.get("prime").and_then(Value::as_u64),
        degree_cap: u64_of(v, "degree_cap")? as usize,
        amax: opt_i("amax"),
        bmax: opt_i("bmax"),
    })
}

fn max_degree(alg: &Algebra) -> u64 {
    alg.quiver().arrows().iter().map(|a| a.degree as u64).max().unwrap_or(1).max(1)
}

/// Checks a gradability certificate for `m`.
fn check_gradability(checks: &mut Checks, prefix: &str, m: &Module, cert: &Value, seed: u64) -> CliResult<bool> {
    let big = field_from(get(cert, "field")?)?;
    let base = m.field().clone();
    let t = m.algebra();
    let kind = str_of(cert, "kind")?;
    let embeddings = if big == base { vec![] } else { Embedding::all(&base, &big)? };
    let extend = |e: Option<&Embedding>| -> CliResult<(Arc<Algebra>, Module)> {
        match e {
            None => Ok((t.clone(), m.clone())),
            Some(e) => {
                let a = extend_algebra(t, e)?;
                let mm = extend_module(m, &a, e)?;
                Ok((a, mm))
            }
        }
    };
    let opts: Vec<Option<&Embedding>> = if embeddings.is_empty() { vec![None] } else { embeddings.iter().map(Some).collect() };
    if kind == "gradable" {
        let mut ok = false;
        let mut last = None;
        for e in opts {
            let r = (|| -> CliResult<bool> {
                let (a, mm) = extend(e)?;
                let lift = graded_module_from(get(cert, "lift")?, &a)?;
                let iso = modmap_from(get(cert, "iso")?, &lift.push_down(), &mm)?;
                Ok(lift.is_homogeneous() && iso.is_homomorphism() && iso.is_iso())
            })();
            match r {
                Ok(true) => ok = true,
                Ok(false) => {}
                Err(err) => last = Some(err),
            }
        }
        if !ok {
            if let Some(err) = last {
                checks.add(&format!("{prefix}lift_and_iso"), Err(err));
                return Ok(false);
            }
        }
        checks.add(&format!("{prefix}lift_and_iso"), Ok(ok));
        checks.add(&format!("{prefix}oracle_consistent"), Ok(oracle(m, seed) != Some(false)));
        return Ok(true);
    }
    if kind != "not_gradable" {
        return Err(CliError::Usage(format!("unknown gradability kind {kind}")));
    }
    let alpha = u64_of(cert, "alpha")?;
    let order = u64_of(cert, "order")?;
    checks.add(
        &format!("{prefix}order_exceeds_bound"),
        Ok(alpha != 0 && alpha < big.order() && big.order_of(alpha) == order && order > max_degree(t) * m.dim() as u64),
    );
    let r = (|| {
        let (_, mm) = extend(opts[0])?;
        Ok(matches!(is_isomorphic(&twist(&mm, alpha)?, &mm, &mut rng(seed ^ 0x5eed))?, IsoVerdict::NotIsomorphic(_)))
    })();
    checks.add(&format!("{prefix}twist_not_isomorphic"), r);
    checks.add(&format!("{prefix}oracle_consistent"), Ok(oracle(m, seed) != Some(true)));
    Ok(false)
}

fn zigzag_from(v: &Value, t: &Algebra) -> CliResult<ZigzagData> {
    let nested = |k: &str| -> CliResult<Vec<Vec<usize>>> { array(get(v, k)?, k)?.iter().map(|x| usizes(x, k)).collect() };
    let elems = |k: &str| -> CliResult<Vec<Vec<u64>>> {
        array(get(v, k)?, k)?.iter().map(|x| element_from(get(x, "coeffs")?, t)).collect()
    };
    let sequences = array(get(v, "sequences")?, "sequences")?
        .iter()
        .map(|s| Ok(RelationSequence { simples: usizes(get(s, "simples")?, "simples")?, relations: usizes(get(s, "relations")?, "relations")? }))
        .collect::<CliResult<Vec<_>>>()?;
    let z = ZigzagData {
        p: usizes(get(v, "p")?, "p")?,
        q: usizes(get(v, "q")?, "q")?,
        f: elems("f")?,
        g: elems("g")?,
        f_paths: nested("f_paths")?,
        g_paths: nested("g_paths")?,
        g_degrees: usizes(get(v, "g_degrees")?, "g_degrees")?,
        offsets: i64s(get(v, "offsets")?, "offsets")?,
        sequences,
    };
    let l = z.len();
    let nv = t.num_vertices();
    let narrows = t.quiver().num_arrows();
    let nrel = t.presentation().relations.len();
    let shapes = [z.q.len(), z.f.len(), z.g.len(), z.g_degrees.len(), z.offsets.len(), z.sequences.len(), z.f_paths.len(), z.g_paths.len()];
    let in_range = z.p.iter().chain(&z.q).all(|&x| x < nv)
        && z.f_paths.iter().chain(&z.g_paths).flatten().all(|&a| a < narrows)
        && z.sequences.iter().all(|s| s.simples.iter().all(|&x| x < nv) && s.relations.iter().all(|&r| r < nrel));
    if l == 0 || shapes.iter().any(|&s| s != l) || !in_range {
        return Err(CliError::Usage("malformed certificate: zigzag shape".into()));
    }
    Ok(z)
}

fn check_density(checks: &mut Checks, g: &GradedAlgebra, cert: &Value, seed: u64) -> CliResult<()> {
    let t = &g.tilde;
    let base = g.base.quiver();
    let cycle = array(get(cert, "cycle")?, "cycle")?
        .iter()
        .map(|a| Ok(base.arrow_index(a.as_str().unwrap_or_default())?))
        .collect::<CliResult<Vec<_>>>();
    checks.add(
        "cycle_is_oriented_cycle",
        cycle.map(|c| {
            !c.is_empty() && (0..c.len()).all(|i| base.arrow(c[i]).target == base.arrow(c[(i + 1) % c.len()]).source)
        }),
    );
    let z = match zigzag_from(get(cert, "zigzag")?, t) {
        Ok(z) => z,
        Err(e) => {
            checks.add("zigzag_decodes", Err(e));
            return Ok(());
        }
    };
    checks.add("zigzag_hypotheses", Ok(verify_zigzag(g, &z, &mut rng(seed))?.all_pass()));
    let pres = get(cert, "presentation")?;
    let claimed = (|| -> CliResult<GradedProjMap> {
        Ok(GradedProjMap {
            map: proj_map_from(get(pres, "map")?, t)?,
            src_shifts: i64s(get(pres, "src_shifts")?, "src_shifts")?,
            tgt_shifts: i64s(get(pres, "tgt_shifts")?, "tgt_shifts")?,
        })
    })();
    let expected = zigzag_presentation(t, &z, 1, true)?;
    checks.add("presentation_matches_zigzag", claimed.map(|c| c == expected));
    let w = module_from(get(cert, "witness")?, t);
    let coker = expected.map.to_modmap(t).cokernel().0;
    checks.add("witness_is_cokernel", w.as_ref().map(|w| w.dims() == coker.dims() && w.mats() == coker.mats()).map_err(|e: &CliError| CliError::Usage(e.to_string())));
    let Ok(w) = w else { return Ok(()) };
    let claims_gradable = check_gradability(checks, "witness_", &w, get(cert, "gradability")?, seed);
    checks.add("witness_not_gradable", claims_gradable.map(|b| !b));
    checks.add("witness_indecomposable", Ok(is_local(&w, &mut rng(seed))?));
    let control = unwrapped_witness(t, &z, 1)?;
    checks.add("control_gradable", Ok(is_gradable(&control, &mut rng(seed))?.is_gradable()));
    Ok(())
}

fn check_cy(checks: &mut Checks, ctx: &Context, name: &str, result: &Value) -> CliResult<()> {
    let m = build::module(&ctx.spec, name, &ctx.alg, None)?;
    let c = proj_resolve(&m)?.minimize(&ctx.alg);
    let hits = array(get(result, "hits")?, "hits")?;
    let (am, bm) = (i64_of(result, "a_max")?, i64_of(result, "b_max")?);
    let mut orbit = vec![c.clone()];
    for h in hits {
        let ab = i64s(h, "hit")?;
        let [a, b] = ab[..] else { return Err(CliError::Usage("malformed certificate: hit".into())) };
        if b < 1 || b > bm || a.abs() > am {
            checks.add(&format!("hit_{a}_{b}"), Ok(false));
            continue;
        }
        while orbit.len() <= b as usize {
            let next = serre(&ctx.alg, orbit.last().unwrap())?;
            orbit.push(next);
        }
        let iso = complexes_isomorphic(&ctx.alg, &c.shift(&ctx.alg, a), &orbit[b as usize], &mut rng(ctx.flags.seed ^ 0xc7))?;
        checks.add(&format!("hit_{a}_{b}"), Ok(iso.is_iso()));
    }
    Ok(())
}

fn check_grade(checks: &mut Checks, ctx: &Context, name: &str, result: &Value) -> CliResult<()> {
    let g = ctx.tilde()?;
    let m = build::module(&ctx.spec, name, &ctx.alg, Some(&g.tilde))?;
    let m = if m.same_algebra(&Module::zero(&g.tilde)) { m } else { build::inflate(&m, &g.tilde)? };
    let claimed = module_from(get(result, "input_module")?, &g.tilde);
    checks.add("input_module_matches_spec", claimed.map(|c| c.dims() == m.dims() && c.mats() == m.mats()));
    let gradable = check_gradability(checks, "", &m, get(result, "certificate")?, ctx.flags.seed);
    checks.add("verdict_matches_certificate", gradable.and_then(|b| Ok(b == bool_of(result, "gradable")?)));
    Ok(())
}

fn check_report(checks: &mut Checks, report: &Value) -> CliResult<()> {
    if u64_of(report, "schema")? != SCHEMA_VERSION {
        return Err(CliError::Usage("unsupported report schema".into()));
    }
    let text = str_of(report, "spec")?;
    checks.add("input_digest", Ok(digest(text) == str_of(report, "input_digest")?));
    let flags = flags_from(get(report, "flags")?)?;
    let ctx = Context::new(text, &flags)?;
    let cmd = Command::from_parts(str_of(report, "command")?, report.get("target").and_then(Value::as_str))?;
    let result = get(report, "result")?;
    match &cmd {
        Command::Info => checks.add("info_recomputed", Ok(info_result(&ctx.alg)? == *result)),
        Command::Tau2 => checks.add("tau2_recomputed", Ok(tau2_result(&ctx.alg, flags.degree_cap)?.1 == *result)),
        Command::Tilde => match ctx.tilde() {
            Ok(g) => checks.add("tilde_recomputed", Ok(tilde_result(&g)? == *result && bool_of(result, "tensor_power_dims_agree")?)),
            Err(_) => checks.add("tilde_inconclusive", Ok(result.get("diagnostic").is_some())),
        },
        Command::CySearch(name) => check_cy(checks, &ctx, name, result)?,
        Command::GradeTest(name) => check_grade(checks, &ctx, name, result)?,
        Command::NotDense => match str_of(result, "verdict")? {
            "not_dense" => check_density(checks, &ctx.tilde()?, get(result, "certificate")?, flags.seed)?,
            "no_cycle_found" => checks.add("quiver_acyclic", Ok(ctx.alg.quiver().is_acyclic())),
            _ => checks.add("has_cycles", Ok(!ctx.alg.quiver().is_acyclic())),
        },
    }
    Ok(())
}

/// Re-checks a report produced by `run`.
pub fn verify(report_text: &str) -> CliResult<Report> {
    let report: Value = serde_json::from_str(report_text).map_err(|e| CliError::Usage(format!("report is not JSON: {e}")))?;
    let mut checks = Checks::default();
    if let Err(e) = check_report(&mut checks, &report) {
        checks.add("report_readable", Err(e));
    }
    let status = if checks.all() { Status::Definite } else { Status::Rejected };
    let value = json!({
        "schema": SCHEMA_VERSION,
        "version": env!("CARGO_PKG_VERSION"),
        "command": "verify",
        "verified_command": report.get("command"),
        "report_digest": digest(report_text),
        "status": status.as_str(),
        "accepted": status == Status::Definite,
        "checks": checks.to_json(),
    });
    Ok(Report { status, value })
}
