use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use vvhecke::field::Field;
use vvhecke::quiver::{build_hecke_quiver, CycWeight, Group, HeckeMode, Orbit, Params, Partition, Quiver};
use vvhecke::vvalgebra::{Algebra, Mode};

/// A configuration problem, located by file and by line/column or field path.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}:{location}: {message}", file.display())]
pub struct ConfigError {
    pub file: PathBuf,
    pub location: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(file: &Path, location: impl Into<String>, message: impl fmt::Display) -> ConfigError {
        ConfigError { file: file.to_path_buf(), location: location.into(), message: message.to_string() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<(String, String)>,
    #[serde(default)]
    pub involution: Vec<(String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeSpec {
    pub q: String,
    pub x: Vec<String>,
    pub p: Option<String>,
    pub mode: String,
}

/// The file format, before validation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub name: String,
    #[serde(default)]
    pub characteristic: u64,
    pub quiver: Option<QuiverSpec>,
    pub hecke: Option<HeckeSpec>,
    #[serde(default)]
    pub lambda: BTreeMap<String, u32>,
    #[serde(default)]
    pub gamma: BTreeMap<String, String>,
    #[serde(default = "default_mode")]
    pub mode: String,
    pub orbits: Vec<Vec<String>>,
    pub partition: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub weights: Vec<BTreeMap<String, u32>>,
}

fn default_mode() -> String {
    "B".into()
}

/// A validated configuration: a quiver with parameters, a list of orbit seeds and
/// optional partition and cyclotomic weights.
#[derive(Debug, Clone)]
pub struct Config {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub params: Params,
    pub mode: Mode,
    pub seeds: Vec<Vec<String>>,
    pub partition: Option<Partition>,
    pub weights: Vec<CycWeight>,
    pub file: PathBuf,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::new(path, "-", e))?;
        Config::parse(path, &text)
    }

    pub fn parse(path: &Path, text: &str) -> Result<Config, ConfigError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
            ConfigError::new(path, format!("{}:{}", e.line(), e.column()), e)
        })?;
        Config::from_raw(path, raw)
    }

    fn from_raw(path: &Path, raw: RawConfig) -> Result<Config, ConfigError> {
        let err = |loc: &str, msg: &dyn fmt::Display| ConfigError::new(path, loc, msg);
        let field = Field::from_characteristic(raw.characteristic).map_err(|e| err("characteristic", &e))?;
        let mode = match raw.mode.as_str() {
            "A" => Mode::A,
            "B" => Mode::B,
            other => return Err(err("mode", &format!("expected \"A\" or \"B\", got {other:?}"))),
        };
        let (quiver, mut params) = match (&raw.quiver, &raw.hecke) {
            (Some(q), None) => {
                let quiver = Quiver::new(&q.vertices, &q.arrows, &q.involution).map_err(|e| err("quiver", &e))?;
                let params = Params::zero(&quiver, field);
                (quiver, params)
            }
            (None, Some(h)) => {
                if !raw.lambda.is_empty() || !raw.gamma.is_empty() {
                    return Err(err("hecke", &"parameters of a Hecke quiver are derived, drop lambda/gamma"));
                }
                let scalar = |loc: &str, s: &str| field.parse(s).map_err(|e| err(loc, &e));
                let q = scalar("hecke.q", &h.q)?;
                let xs = h
                    .x
                    .iter()
                    .enumerate()
                    .map(|(k, s)| scalar(&format!("hecke.x[{k}]"), s))
                    .collect::<Result<Vec<_>, _>>()?;
                let p = h.p.as_deref().map(|s| scalar("hecke.p", s)).transpose()?;
                let hmode = match h.mode.as_str() {
                    "B" => HeckeMode::B,
                    "D" => HeckeMode::D,
                    other => return Err(err("hecke.mode", &format!("expected \"B\" or \"D\", got {other:?}"))),
                };
                let hq = build_hecke_quiver(&q, &xs, p.as_ref(), hmode).map_err(|e| err("hecke", &e))?;
                (hq.quiver, hq.params)
            }
            _ => return Err(err("quiver", &"exactly one of \"quiver\" and \"hecke\" is required")),
        };
        let vertex = |loc: String, name: &str| quiver.vertex(name).map_err(|e| err(&loc, &e));
        for (name, &l) in &raw.lambda {
            params.lambda[vertex(format!("lambda.{name}"), name)?] = l;
        }
        for (name, g) in &raw.gamma {
            let loc = format!("gamma.{name}");
            params.gamma[vertex(loc.clone(), name)?] = field.parse(g).map_err(|e| err(&loc, &e))?;
        }
        params.validate(&quiver).map_err(|e| err("params", &e))?;
        if mode == Mode::A && !params.is_zero() {
            return Err(err("mode", &"type A takes no lambda/gamma parameters"));
        }
        for (k, seed) in raw.orbits.iter().enumerate() {
            for (a, name) in seed.iter().enumerate() {
                vertex(format!("orbits[{k}][{a}]"), name)?;
            }
        }
        let partition = match &raw.partition {
            None => None,
            Some(blocks) => {
                let mut block = vec![0u8; quiver.len()];
                for (j, vs) in blocks.iter().enumerate() {
                    for (a, name) in vs.iter().enumerate() {
                        block[vertex(format!("partition[{j}][{a}]"), name)?] = j as u8 + 1;
                    }
                }
                if let Some(v) = block.iter().position(|&b| b == 0) {
                    return Err(err("partition", &format!("vertex {} is in no block", quiver.name(v))));
                }
                Some(Partition::new(&quiver, block).map_err(|e| err("partition", &e))?)
            }
        };
        let mut weights = Vec::new();
        for (k, w) in raw.weights.iter().enumerate() {
            let mut lam = vec![0u32; quiver.len()];
            for (name, &v) in w {
                lam[vertex(format!("weights[{k}].{name}"), name)?] = v;
            }
            weights.push(CycWeight(lam));
        }
        Ok(Config {
            name: raw.name,
            field,
            quiver,
            params,
            mode,
            seeds: raw.orbits,
            partition,
            weights,
            file: path.to_path_buf(),
        })
    }

    pub fn group(&self) -> Group {
        match self.mode {
            Mode::A => Group::S,
            Mode::B => Group::B,
        }
    }

    /// The orbit generated by seed `k`.
    pub fn orbit(&self, k: usize) -> Orbit {
        let seed: Vec<u16> =
            self.seeds[k].iter().map(|s| self.quiver.vertex(s).expect("checked at load") as u16).collect();
        Orbit::generate(self.quiver.theta_map(), &seed, self.group())
    }

    pub fn algebra(&self, k: usize) -> Result<Arc<Algebra>, ConfigError> {
        Algebra::new(self.quiver.clone(), self.params.clone(), self.orbit(k), self.mode, self.field)
            .map_err(|e| ConfigError::new(&self.file, format!("orbits[{k}]"), e))
    }

    /// Short label of seed `k`, used to scope case names.
    pub fn label(&self, k: usize) -> String {
        format!("beta({})", self.seeds[k].join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Config, ConfigError> {
        Config::parse(Path::new("t.json"), text)
    }

    const PAIR: &str = r#""quiver": {"vertices": ["i", "I", "k"], "arrows": [["i", "I"]], "involution": [["i", "I"]]}"#;

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let e = parse("{\n  \"name\": \"x\",\n  \"orbits\": [}\n").unwrap_err();
        assert_eq!(e.location, "3:14");
        assert!(e.to_string().starts_with("t.json:3:14: "), "{e}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let e = parse(&format!(r#"{{"name": "x", {PAIR}, "orbits": [], "colour": 1}}"#)).unwrap_err();
        assert!(e.message.contains("unknown field `colour`"), "{e}");
    }

    #[test]
    fn semantic_errors_carry_a_field_path() {
        let cases = [
            (r#""orbits": [["i", "z"]]"#, "orbits[0][1]"),
            (r#""orbits": [], "gamma": {"i": "1"}"#, "params"),
            (r#""orbits": [], "mode": "C""#, "mode"),
            (r#""orbits": [], "mode": "A", "lambda": {"i": 1}"#, "mode"),
            (r#""orbits": [], "partition": [["i", "I"]]"#, "partition"),
            (r#""orbits": [], "weights": [{"q": 1}]"#, "weights[0].q"),
            (r#""orbits": [], "characteristic": 2"#, "characteristic"),
        ];
        for (body, location) in cases {
            let e = parse(&format!(r#"{{"name": "x", {PAIR}, {body}}}"#)).unwrap_err();
            assert_eq!(e.location, location, "{body}: {e}");
        }
        let e = parse(r#"{"name": "x", "orbits": []}"#).unwrap_err();
        assert_eq!(e.location, "quiver");
        let hecke = r#"{"name": "h", "characteristic": 5, "hecke": {"q": "2", "x": ["1"], "p": "7/0", "mode": "B"}, "orbits": []}"#;
        assert_eq!(parse(hecke).unwrap_err().location, "hecke.p");
    }

    #[test]
    fn valid_config_builds_orbits_and_labels() {
        let cfg = parse(&format!(
            r#"{{"name": "x", {PAIR}, "orbits": [["i", "k"]], "partition": [["i", "I"], ["k"]], "weights": [{{"k": 2}}]}}"#
        ))
        .unwrap();
        assert_eq!(cfg.field, Field::Rational);
        assert_eq!(cfg.label(0), "beta(i,k)");
        assert_eq!(cfg.orbit(0).len(), 4);
        assert_eq!(cfg.partition.as_ref().unwrap().blocks(), 2);
        assert_eq!(cfg.weights[0].0, vec![0, 0, 2]);
        assert_eq!(cfg.algebra(0).unwrap().rank(), 2);
    }
}
