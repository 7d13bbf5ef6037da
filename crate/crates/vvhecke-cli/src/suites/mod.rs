pub mod classify;
pub mod coxeter;
mod decompose;
mod typed;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};
use vvhecke::quiver::orbit_components;
use vvhecke::type_d::verify_w_relations;
use vvhecke::vvalgebra::{verify_relations, Algebra, Element, Mode, PbwMonomial};

use crate::config::{Config, ConfigError};
use crate::report::Cases;
use crate::sample::{rng, Sampler};
use crate::{Caps, Suite};

pub struct Ctx {
    pub caps: Caps,
    pub seed: u64,
    pub workers: usize,
}

/// Parameter echo for the report header.
pub fn echo(cfg: &Config) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    m.insert("config".into(), json!(cfg.name));
    m.insert("characteristic".into(), json!(cfg.field.characteristic()));
    m.insert("mode".into(), json!(if cfg.mode == Mode::A { "A" } else { "B" }));
    m.insert("vertices".into(), json!(cfg.quiver.vertices()));
    m.insert("lambda".into(), json!(cfg.params.lambda));
    let gamma: Vec<String> = cfg.params.gamma.iter().map(|g| g.to_string()).collect();
    m.insert("gamma".into(), json!(gamma));
    m.insert("orbits".into(), json!(cfg.seeds));
    if let Some(p) = &cfg.partition {
        let blocks: Vec<Vec<&str>> =
            (1..=p.blocks() as u8).map(|j| p.vertices_in(j).iter().map(|&v| cfg.quiver.name(v)).collect()).collect();
        m.insert("partition".into(), json!(blocks));
    }
    if !cfg.weights.is_empty() {
        let ws: Vec<&Vec<u32>> = cfg.weights.iter().map(|w| &w.0).collect();
        m.insert("weights".into(), json!(ws));
    }
    m
}

/// Runs `job` on every index in `0..n` using up to `workers` threads and merges
/// the resulting cases. Cases are keyed by name, so the merge order is irrelevant.
fn par_jobs<F>(n: usize, workers: usize, job: F) -> Cases
where
    F: Fn(usize) -> Cases + Sync,
{
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Cases::default());
    std::thread::scope(|s| {
        for _ in 0..workers.min(n).max(1) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= n {
                    break;
                }
                let cases = job(k);
                out.lock().expect("no poisoned jobs").merge(cases);
            });
        }
    });
    out.into_inner().expect("no poisoned jobs")
}

/// Runs `job` on the algebra of every orbit seed, with its own random stream.
fn per_orbit<F>(cfg: &Config, ctx: &Ctx, job: F) -> Result<Cases, ConfigError>
where
    F: Fn(&Arc<Algebra>, &str, &mut rand_chacha::ChaCha8Rng) -> Cases + Sync,
{
    let algebras = (0..cfg.seeds.len()).map(|k| cfg.algebra(k)).collect::<Result<Vec<_>, _>>()?;
    Ok(par_jobs(algebras.len(), ctx.workers, |k| {
        let mut r = rng(ctx.seed, k as u64);
        job(&algebras[k], &cfg.label(k), &mut r)
    }))
}

pub fn run_config(suite: &Suite, cfg: &Config, ctx: &Ctx) -> Result<Cases, ConfigError> {
    match suite {
        Suite::Validate => Ok(validate(cfg)),
        Suite::Relations => per_orbit(cfg, ctx, |alg, scope, _| relations(alg, scope)),
        Suite::Pbw => per_orbit(cfg, ctx, |alg, scope, r| pbw(alg, scope, ctx.caps, r)),
        Suite::Decompose => decompose::decompose(cfg, ctx),
        Suite::Cyclo => decompose::cyclo(cfg, ctx),
        Suite::Orbits => decompose::orbits(cfg),
        Suite::Typed => typed::typed(cfg, ctx),
        Suite::Coxeter { .. } | Suite::Classify(_) => unreachable!("config-free suites"),
    }
}

fn validate(cfg: &Config) -> Cases {
    let mut cases = Cases::default();
    let q = &cfg.quiver;
    let fixed = (0..q.len()).filter(|&v| q.theta(v) == v).count();
    cases.note("quiver", format!("{} vertices, {fixed} fixed by theta", q.len()));
    cases.fallible("p_family", q.check_p_family(cfg.field));
    let nonzero = cfg.params.lambda.iter().filter(|&&l| l > 0).count()
        + cfg.params.gamma.iter().filter(|g| !g.is_zero()).count();
    cases.note("params", format!("{nonzero} nonzero entries"));
    for k in 0..cfg.seeds.len() {
        let scope = cfg.label(k);
        let orbit = cfg.orbit(k);
        cases.record(format!("{scope}/closed"), orbit.is_closed(), None);
        match cfg.algebra(k) {
            Ok(alg) => cases.note(format!("{scope}/algebra"), format!("{} tuples", alg.orbit().len())),
            Err(e) => cases.record(format!("{scope}/algebra"), false, Some(e.message)),
        }
        if let Some(p) = &cfg.partition {
            match orbit_components(&orbit, p) {
                Ok(c) => cases.record(
                    format!("{scope}/components"),
                    c.rebuild_ok,
                    Some(format!("component sizes {:?} do not rebuild the orbit", c.sizes)),
                ),
                Err(e) => cases.record(format!("{scope}/components"), false, Some(e.to_string())),
            }
        }
    }
    for (k, w) in cfg.weights.iter().enumerate() {
        cases.note(format!("weight[{k}]"), format!("{:?}", w.0));
    }
    cases
}

fn relations(alg: &Arc<Algebra>, scope: &str) -> Cases {
    let mut cases = Cases::default();
    cases.absorb(scope, verify_relations(alg));
    if alg.mode() == Mode::B && alg.params_zero() {
        match verify_w_relations(alg) {
            Ok(r) => cases.absorb(&format!("{scope}/typeD"), r),
            Err(e) => cases.record(format!("{scope}/typeD"), false, Some(e.to_string())),
        }
    }
    cases
}

/// Round trips (exhaustive up to rank 3, sampled beyond), products of composable
/// monomial pairs and associativity on composable triples.
fn pbw(alg: &Arc<Algebra>, scope: &str, caps: Caps, r: &mut rand_chacha::ChaCha8Rng) -> Cases {
    let mut cases = Cases::default();
    let sampler = Sampler::new(alg, caps.max_ydeg);
    let round: Vec<PbwMonomial> = if alg.rank() <= 3 {
        PbwMonomial::enumerate(alg, Some(caps.max_len), caps.max_ydeg)
    } else {
        (0..caps.samples).map(|_| sampler.monomial(r)).collect()
    };
    let name = format!("{scope}/round_trip");
    for m in &round {
        let back = alg.monomial_op(m).and_then(|op| alg.pbw_expand(&op));
        match back {
            Ok(e) => cases.record(&name, e == Element::monomial(alg, *m), Some(format!("{m:?} came back as {e}"))),
            Err(e) => cases.record(&name, false, Some(format!("{m:?}: {e}"))),
        }
    }
    let name = format!("{scope}/closure");
    for _ in 0..caps.samples {
        let ms = sampler.chain(r, 2);
        let outcome = (|| {
            let op = alg.monomial_op(&ms[0])?.compose(&alg.monomial_op(&ms[1])?)?;
            let e = alg.pbw_expand(&op)?;
            Ok::<bool, vvhecke::vvalgebra::AlgebraError>(e.op()? == op)
        })();
        match outcome {
            Ok(ok) => cases.record(&name, ok, Some(format!("{ms:?}: expansion does not reproduce the operator"))),
            Err(e) => cases.record(&name, false, Some(format!("{ms:?}: {e}"))),
        }
    }
    let name = format!("{scope}/associativity");
    for _ in 0..(caps.samples / 10).max(1) {
        let ms = sampler.chain(r, 3);
        let [a, b, c] = [0, 1, 2].map(|k| Element::monomial(alg, ms[k]));
        let outcome = (|| {
            let left = a.mul(&b)?.mul(&c)?;
            let right = a.mul(&b.mul(&c)?)?;
            Ok::<bool, vvhecke::vvalgebra::AlgebraError>(left == right)
        })();
        match outcome {
            Ok(ok) => cases.record(&name, ok, Some(format!("{ms:?}"))),
            Err(e) => cases.record(&name, false, Some(format!("{ms:?}: {e}"))),
        }
    }
    cases
}
