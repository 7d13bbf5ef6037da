use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use serde_json::{json, Value};
use vvhecke::field::{Field, Scalar};
use vvhecke::quiver::{classify_morita_b, classify_morita_d, MoritaCaseB, MoritaCaseD};

use super::Ctx;
use crate::report::Cases;
use crate::sample::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifyMode {
    B,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyArgs {
    pub characteristic: u64,
    pub q: Option<String>,
    pub p: Option<String>,
    pub x: Option<String>,
    pub mode: ClassifyMode,
    /// Classify sampled triples of the whole field against the membership oracle.
    pub sweep: bool,
}

impl ClassifyArgs {
    pub fn echo(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        m.insert("characteristic".into(), json!(self.characteristic));
        m.insert("mode".into(), json!(if self.mode == ClassifyMode::B { "B" } else { "D" }));
        for (k, v) in [("q", &self.q), ("p", &self.p), ("x", &self.x)] {
            if let Some(v) = v {
                m.insert(k.into(), json!(v));
            }
        }
        m.insert("sweep".into(), json!(self.sweep));
        m
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut r, mut b) = (1u64, b % m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `{± c·q^{2k}}` as residues.
fn signed_coset(c: u64, q: u64, m: u64) -> BTreeSet<u64> {
    let q2 = q * q % m;
    let mut out = BTreeSet::new();
    let mut g = c % m;
    for _ in 0..m {
        out.insert(g);
        out.insert((m - g) % m);
        g = g * q2 % m;
    }
    out
}

/// Case letter of `(x, q, p)` in type B by membership in `±q^{2ℤ}`, `±q^{2ℤ+1}`,
/// `±p^{±1}q^{2ℤ}`, in that order.
pub fn oracle_b(x: u64, q: u64, p: u64, m: u64) -> char {
    let pinv = pow_mod(p, m - 2, m);
    if signed_coset(1, q, m).contains(&x) {
        'a'
    } else if signed_coset(q, q, m).contains(&x) {
        'b'
    } else if signed_coset(p, q, m).contains(&x) || signed_coset(pinv, q, m).contains(&x) {
        'c'
    } else {
        'd'
    }
}

/// Case letter of `(x, q)` in type D.
pub fn oracle_d(x: u64, q: u64, m: u64) -> char {
    if signed_coset(1, q, m).contains(&x) {
        'a'
    } else if signed_coset(q, q, m).contains(&x) {
        'b'
    } else {
        'c'
    }
}

fn letter_b(c: MoritaCaseB) -> char {
    match c {
        MoritaCaseB::A => 'a',
        MoritaCaseB::B => 'b',
        MoritaCaseB::C => 'c',
        MoritaCaseB::D => 'd',
    }
}

fn letter_d(c: MoritaCaseD) -> char {
    match c {
        MoritaCaseD::A => 'a',
        MoritaCaseD::B => 'b',
        MoritaCaseD::C => 'c',
    }
}

fn odd_order(q: u64, m: u64) -> bool {
    let q2 = q * q % m;
    let mut k = 1u64;
    let mut g = q2;
    while g != 1 {
        g = g * q2 % m;
        k += 1;
    }
    k % 2 == 1
}

/// Classifier output as `(case, flag, normalisation text)`.
fn classify(mode: ClassifyMode, x: &Scalar, q: &Scalar, p: Option<&Scalar>) -> Result<(char, bool, String), String> {
    match mode {
        ClassifyMode::B => {
            let p = p.ok_or("mode B needs --p")?;
            let r = classify_morita_b(x, q, p).map_err(|e| e.to_string())?;
            let n = &r.normalisation;
            let text = format!("negated={} inverted_p={} shift={}", n.negated, n.inverted_p, n.shift);
            Ok((letter_b(r.case), r.b_equivalent_to_a, text))
        }
        ClassifyMode::D => {
            let r = classify_morita_d(x, q).map_err(|e| e.to_string())?;
            let n = &r.normalisation;
            Ok((letter_d(r.case), r.b_equivalent_to_a, format!("negated={} shift={}", n.negated, n.shift)))
        }
    }
}

pub fn run(args: &ClassifyArgs, ctx: &Ctx) -> Result<Cases, String> {
    let field = Field::prime(args.characteristic).map_err(|e| e.to_string())?;
    let m = args.characteristic;
    let parse = |flag: &str, v: &Option<String>| -> Result<Option<Scalar>, String> {
        v.as_deref().map(|s| field.parse(s).map_err(|e| format!("--{flag}: {e}"))).transpose()
    };
    let (q, p, x) = (parse("q", &args.q)?, parse("p", &args.p)?, parse("x", &args.x)?);
    let mut cases = Cases::default();
    if !args.sweep {
        let q = q.ok_or("--q is required")?;
        let x = x.ok_or("--x is required")?;
        let (case, flag, text) = classify(args.mode, &x, &q, p.as_ref())?;
        cases.note("case", case.to_string());
        cases.note("normalisation", text);
        cases.note("b_equivalent_to_a", flag.to_string());
        let res = |s: &Scalar| s.residue().expect("prime field");
        let want = match args.mode {
            ClassifyMode::B => oracle_b(res(&x), res(&q), res(p.as_ref().expect("checked")), m),
            ClassifyMode::D => oracle_d(res(&x), res(&q), m),
        };
        cases.record("oracle", case == want, Some(format!("oracle says {want}")));
        cases.record("odd_order_flag", flag == odd_order(res(&q), m), None);
        return Ok(cases);
    }
    let units: Vec<u64> = (1..m).collect();
    let good: Vec<u64> = units.iter().copied().filter(|&v| v * v % m != 1).collect();
    let fixed = |s: &Option<Scalar>, all: &[u64]| match s {
        Some(s) => vec![s.residue().expect("prime field")],
        None => all.to_vec(),
    };
    let qs = fixed(&q, &good);
    let ps = if args.mode == ClassifyMode::B { fixed(&p, &good) } else { vec![0] };
    let xs = fixed(&x, &units);
    let mut triples = Vec::new();
    for &q in &qs {
        for &p in &ps {
            for &x in &xs {
                triples.push((q, p, x));
            }
        }
    }
    if triples.len() > ctx.caps.samples {
        triples = triples.choose_multiple(&mut rng(ctx.seed, 0), ctx.caps.samples).copied().collect();
        triples.sort();
    }
    let mut seen: BTreeMap<char, usize> = BTreeMap::new();
    for &(qv, pv, xv) in &triples {
        let s = |v: u64| field.from_i64(v as i64);
        let (case, flag) = match classify(args.mode, &s(xv), &s(qv), Some(&s(pv))) {
            Ok((c, f, _)) => (c, f),
            Err(e) => {
                cases.record("sweep/oracle", false, Some(format!("(q,p,x)=({qv},{pv},{xv}): {e}")));
                continue;
            }
        };
        let want = match args.mode {
            ClassifyMode::B => oracle_b(xv, qv, pv, m),
            ClassifyMode::D => oracle_d(xv, qv, m),
        };
        *seen.entry(case).or_default() += 1;
        cases.record("sweep/oracle", case == want, Some(format!("(q,p,x)=({qv},{pv},{xv}): {case} vs {want}")));
        cases.record("sweep/odd_order_flag", flag == odd_order(qv, m), Some(format!("q={qv}")));
    }
    let summary: Vec<String> = seen.iter().map(|(c, k)| format!("{c}:{k}")).collect();
    cases.note("sweep/cases_seen", summary.join(" "));
    Ok(cases)
}
