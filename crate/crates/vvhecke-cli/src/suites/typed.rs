use vvhecke::type_d::{decompose_d, iota_coherence, semidirect_check, verify_w_relations, TypeDError};
use vvhecke::vvalgebra::{Element, Mode};

use super::{per_orbit, Ctx};
use crate::config::{Config, ConfigError};
use crate::report::Cases;
use crate::sample::Sampler;

/// W relations, `ι`/`π` coherence and the semidirect law on sampled pairs, and
/// the splitting along components when the configuration has a partition.
pub fn typed(cfg: &Config, ctx: &Ctx) -> Result<Cases, ConfigError> {
    if cfg.mode != Mode::B || !cfg.params.is_zero() {
        return Err(ConfigError::new(&cfg.file, "mode", "type D needs mode B with zero parameters"));
    }
    let pairs = (ctx.caps.samples / 4).max(1);
    per_orbit(cfg, ctx, |alg, scope, r| {
        let mut cases = Cases::default();
        match verify_w_relations(alg) {
            Ok(rep) => cases.absorb(scope, rep),
            Err(e) => cases.record(format!("{scope}/w_relations"), false, Some(e.to_string())),
        }
        let sampler = Sampler::new(alg, ctx.caps.max_ydeg.min(1));
        let xs: Vec<(Element, Element)> = (0..pairs).map(|_| (sampler.element(r), sampler.element(r))).collect();
        match semidirect_check(alg, &xs) {
            Ok(rep) => cases.absorb(scope, rep),
            Err(e) => cases.record(format!("{scope}/semidirect"), false, Some(e.to_string())),
        }
        let singles: Vec<Element> = xs.iter().map(|(a, _)| a.clone()).collect();
        match iota_coherence(alg, &singles) {
            Ok(rep) => cases.absorb(scope, rep),
            Err(e) => cases.record(format!("{scope}/iota"), false, Some(e.to_string())),
        }
        if let Some(p) = &cfg.partition {
            let runs = std::iter::once(None).chain(cfg.weights.iter().map(Some));
            for (k, w) in runs.enumerate() {
                let name = if k == 0 { format!("{scope}/decompose_d") } else { format!("{scope}/decompose_d[weight{}]", k - 1) };
                let ydeg = if w.is_some() { 0 } else { ctx.caps.max_ydeg.min(1) };
                match decompose_d(alg, p, w, ydeg) {
                    Ok(rep) => cases.absorb(&name, rep),
                    Err(e @ (TypeDError::ComponentEmpty(_) | TypeDError::DEqualsOne)) => cases.skip(name, e.to_string()),
                    Err(e) => cases.record(name, false, Some(e.to_string())),
                }
            }
        }
        cases
    })
}
