//! The subcommands.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use orbitcat_core::algebra::{global_dimension, projective, Algebra, GlobalDimension, DEFAULT_GLDIM_CAP};
use orbitcat_core::serre::{default_caps, fractional_cy_search, proj_resolve};
use orbitcat_core::tilde::{build_tilde, is_tau2_finite, tensor_dims_agree, GradedAlgebra, Tau2Verdict};

use crate::build::{self, CliError, CliResult};
use crate::parse::parse_spec;
use crate::report::{digest, Flags, Report, Status, SCHEMA_VERSION};
use crate::spec::{serialize, SpecFile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Info,
    Tau2,
    Tilde,
    GradeTest(String),
    CySearch(String),
    NotDense,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Tau2 => "tau2",
            Command::Tilde => "tilde",
            Command::GradeTest(_) => "grade-test",
            Command::CySearch(_) => "cy-search",
            Command::NotDense => "not-dense",
        }
    }

    pub fn target(&self) -> Option<&str> {
        match self {
            Command::GradeTest(m) | Command::CySearch(m) => Some(m),
            _ => None,
        }
    }

    /// Inverse of `name` and `target`.
    pub fn from_parts(name: &str, target: Option<&str>) -> CliResult<Command> {
        let need = || target.map(str::to_string).ok_or_else(|| CliError::Usage(format!("{name} needs a module")));
        Ok(match name {
            "info" => Command::Info,
            "tau2" => Command::Tau2,
            "tilde" => Command::Tilde,
            "grade-test" => Command::GradeTest(need()?),
            "cy-search" => Command::CySearch(need()?),
            "not-dense" => Command::NotDense,
            _ => return Err(CliError::Usage(format!("unknown command {name}"))),
        })
    }
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The inputs shared by every command.
pub(crate) struct Context {
    pub spec: SpecFile,
    pub flags: Flags,
    pub alg: Arc<Algebra>,
}

impl Context {
    pub fn new(spec_text: &str, flags: &Flags) -> CliResult<Context> {
        let spec = parse_spec(spec_text)?;
        let alg = build::algebra(&spec, flags.prime)?;
        Ok(Context { spec, flags: flags.clone(), alg })
    }

    pub fn tilde(&self) -> CliResult<GradedAlgebra> {
        Ok(build_tilde(&self.alg, self.flags.degree_cap)?)
    }

    fn report(&self, cmd: &Command, status: Status, result: Value) -> Report {
        let text = serialize(&self.spec);
        let value = json!({
            "schema": SCHEMA_VERSION,
            "version": env!("CARGO_PKG_VERSION"),
            "command": cmd.name(),
            "target": cmd.target(),
            "spec": text,
            "input_digest": digest(&text),
            "flags": self.flags.to_json(),
            "field": crate::encode::field(self.alg.field()),
            "seed": self.flags.seed,
            "status": status.as_str(),
            "result": result,
        });
        Report { status, value }
    }
}

pub(crate) fn arrows_json(alg: &Algebra) -> Value {
    let q = alg.quiver();
    json!(q
        .arrows()
        .iter()
        .map(|a| json!({ "name": a.name, "source": q.vertex_name(a.source), "target": q.vertex_name(a.target), "degree": a.degree }))
        .collect::<Vec<_>>())
}

pub(crate) fn relations_json(alg: &Algebra) -> Value {
    json!(alg.relations().iter().map(|r| r.display(alg.field(), alg.quiver())).collect::<Vec<_>>())
}

pub(crate) fn info_result(alg: &Arc<Algebra>) -> CliResult<Value> {
    let q = alg.quiver();
    let gldim = match global_dimension(alg, DEFAULT_GLDIM_CAP) {
        GlobalDimension::Finite(d) => json!({ "finite": d }),
        GlobalDimension::ExceedsCap(c) => json!({ "exceeds": c }),
    };
    let pdims = (0..q.num_vertices()).map(|v| Ok(projective(alg, v)?.dim())).collect::<CliResult<Vec<_>>>()?;
    Ok(json!({
        "dim": alg.dim(),
        "vertices": q.vertex_names(),
        "arrows": arrows_json(alg),
        "relations": relations_json(alg),
        "basis": alg.basis().iter().map(|p| p.display(q)).collect::<Vec<_>>(),
        "projective_dims": pdims,
        "gldim": gldim,
    }))
}

pub(crate) fn tau2_result(alg: &Arc<Algebra>, cap: usize) -> CliResult<(Status, Value)> {
    Ok(match is_tau2_finite(alg, cap)? {
        Tau2Verdict::Finite { top_degree } => (Status::Definite, json!({ "tau2_finite": true, "top_degree": top_degree })),
        Tau2Verdict::NotFinite { reason } => (Status::Definite, json!({ "tau2_finite": false, "reason": reason })),
        Tau2Verdict::Inconclusive { cap } => (Status::Inconclusive, json!({ "tau2_finite": null, "degree_cap": cap })),
    })
}

pub(crate) fn tilde_result(g: &GradedAlgebra) -> CliResult<Value> {
    Ok(json!({
        "top_degree": g.top_degree,
        "dim": g.tilde.dim(),
        "degree_dims": g.degree_dims(),
        "pair_dims": g.derived_dims,
        "tensor_power_dims_agree": tensor_dims_agree(g)?,
        "arrows": arrows_json(&g.tilde),
        "relations": relations_json(&g.tilde),
    }))
}

pub(crate) fn cy_result(ctx: &Context, name: &str) -> CliResult<(Status, Value)> {
    let m = build::module(&ctx.spec, name, &ctx.alg, None)?;
    let c = proj_resolve(&m)?;
    let (da, db) = default_caps(ctx.alg.num_vertices());
    let (am, bm) = (ctx.flags.amax.unwrap_or(da), ctx.flags.bmax.unwrap_or(db));
    let s = fractional_cy_search(&ctx.alg, &c, am, bm, &mut rng(ctx.flags.seed))?;
    let status = if s.hits.is_empty() { Status::Inconclusive } else { Status::Definite };
    let profile: Vec<Value> = c.profile().into_iter().map(|(d, vs)| json!([d, vs])).collect();
    Ok((
        status,
        json!({
            "module": name,
            "resolution": profile,
            "hits": s.hits.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "fractional": s.has_fractional_hit(),
            "a_max": s.a_max,
            "b_max": s.b_max,
            "orbit_sizes": s.orbit_sizes,
            "diagnostic": s.diagnostic,
        }),
    ))
}

pub fn run(cmd: &Command, spec_text: &str, flags: &Flags) -> CliResult<Report> {
    let ctx = Context::new(spec_text, flags)?;
    let (status, result) = match cmd {
        Command::Info => (Status::Definite, info_result(&ctx.alg)?),
        Command::Tau2 => tau2_result(&ctx.alg, flags.degree_cap)?,
        Command::Tilde => match ctx.tilde() {
            Ok(g) => (Status::Definite, tilde_result(&g)?),
            Err(CliError::Core(orbitcat_core::Error::Tau2Inconclusive(d))) => (Status::Inconclusive, json!({ "diagnostic": d })),
            Err(e) => return Err(e),
        },
        Command::CySearch(name) => cy_result(&ctx, name)?,
        Command::GradeTest(name) => crate::certs::grade_result(&ctx, name)?,
        Command::NotDense => crate::certs::not_dense_result(&ctx)?,
    };
    Ok(ctx.report(cmd, status, result))
}
