use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use vvhecke::decomposition::{cyclo_transport, full_decompose, generators, orbit_bijection_check, DecompositionError};
use vvhecke::quiver::Partition;
use vvhecke::vvalgebra::{cyclo_identity_checks, Algebra, Element};

use super::{per_orbit, Ctx};
use crate::config::{Config, ConfigError};
use crate::report::Cases;

pub(super) fn partition(cfg: &Config) -> Result<&Partition, ConfigError> {
    cfg.partition.as_ref().ok_or_else(|| ConfigError::new(&cfg.file, "partition", "this suite needs a partition"))
}

pub fn decompose(cfg: &Config, ctx: &Ctx) -> Result<Cases, ConfigError> {
    let p = partition(cfg)?;
    per_orbit(cfg, ctx, |alg, scope, r| {
        let mut cases = Cases::default();
        if let Err(e) = decompose_one(alg, p, ctx, scope, r, &mut cases) {
            cases.record(format!("{scope}/error"), false, Some(e.to_string()));
        }
        cases
    })
}

/// Profile identities, the `ρ` homomorphism and bijection, `θ`/`η` on corner
/// spanning sets (exhaustive up to rank 2, sampled beyond) and the composite
/// isomorphism on generator pairs.
fn decompose_one(
    alg: &Arc<Algebra>,
    p: &Partition,
    ctx: &Ctx,
    scope: &str,
    r: &mut ChaCha8Rng,
    cases: &mut Cases,
) -> Result<(), DecompositionError> {
    let fd = full_decompose(alg, p)?;
    let caps = ctx.caps;
    cases.absorb(scope, fd.verify_structure()?);
    cases.absorb(scope, fd.verify_rho_bijection(caps.max_ydeg)?);
    cases.absorb(scope, fd.dimensions(caps.max_ydeg));
    let ps = &fd.profiles;
    let mut span = Vec::new();
    for row in 0..ps.len() {
        for col in 0..ps.len() {
            span.extend(ps.block_monomials(row, col, caps.max_ydeg));
        }
    }
    if alg.rank() > 2 && span.len() > caps.samples {
        span = span.choose_multiple(r, caps.samples).copied().collect();
        span.sort();
    }
    let xs: Vec<Element> = span.into_iter().map(|m| Element::monomial(alg, m)).collect();
    cases.absorb(scope, fd.verify_theta_eta(&xs)?);
    let gens = generators(alg);
    let pairs: Vec<(Element, Element)> =
        gens.iter().flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone()))).collect();
    cases.absorb(scope, fd.verify_pairs(&pairs)?);
    Ok(())
}

/// The `Λ̃` identities on every orbit and, given a partition, transport of the
/// cyclotomic ideal through the decomposition.
pub fn cyclo(cfg: &Config, ctx: &Ctx) -> Result<Cases, ConfigError> {
    if cfg.weights.is_empty() {
        return Err(ConfigError::new(&cfg.file, "weights", "this suite needs at least one weight"));
    }
    per_orbit(cfg, ctx, |alg, scope, _| {
        let mut cases = Cases::default();
        for (k, w) in cfg.weights.iter().enumerate() {
            let scope = format!("{scope}/weight[{k}]");
            if alg.params_zero() {
                match cyclo_identity_checks(alg, w) {
                    Ok(rep) => cases.absorb(&scope, rep),
                    Err(e) => cases.record(format!("{scope}/identities"), false, Some(e.to_string())),
                }
            }
            if let Some(p) = &cfg.partition {
                match cyclo_transport(alg, p, w) {
                    Ok(c) => {
                        cases.absorb(&scope, c.report);
                        cases.note(format!("{scope}/quotient_is_zero"), c.quotient_is_zero.to_string());
                    }
                    Err(e) => cases.record(format!("{scope}/transport"), false, Some(e.to_string())),
                }
            }
        }
        cases
    })
}

/// Bijection and counting checks between orbits and component orbits, for every
/// rank occurring among the orbit seeds.
pub fn orbits(cfg: &Config) -> Result<Cases, ConfigError> {
    let p = partition(cfg)?;
    let ranks: BTreeSet<usize> = cfg.seeds.iter().map(Vec::len).collect();
    let mut cases = Cases::default();
    for n in ranks {
        cases.absorb(&format!("n={n}"), orbit_bijection_check(&cfg.quiver, p, n, cfg.mode));
    }
    Ok(cases)
}
