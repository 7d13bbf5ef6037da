use std::collections::BTreeSet;

use crate::field::{Field, Scalar};

use super::{Params, Quiver, QuiverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeckeMode {
    B,
    D,
}

/// A Hecke-type quiver together with its parameters and the partition into the sets `I_x`.
#[derive(Debug, Clone)]
pub struct HeckeQuiver {
    pub quiver: Quiver,
    pub params: Params,
    /// The scalar labelling each vertex.
    pub values: Vec<Scalar>,
    /// Block `a + 1` for vertices of `I_{x_a}`.
    pub blocks: Vec<u8>,
}

fn prime_of(s: &Scalar) -> Result<u64, QuiverError> {
    match s.field() {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(QuiverError::NotFiniteField),
    }
}

fn nonzero(s: &Scalar, what: &str) -> Result<(), QuiverError> {
    if s.is_zero() {
        Err(QuiverError::DegenerateParams(format!("{what} = 0")))
    } else {
        Ok(())
    }
}

/// `{s^k : k ∈ ℤ}` in a finite field.
fn powers(s: &Scalar) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut cur = s.field().one();
    loop {
        if !out.insert(cur.residue().expect("prime field")) {
            return out;
        }
        cur = &cur * s;
    }
}

fn same_field(scalars: &[&Scalar]) -> Result<Field, QuiverError> {
    let f = scalars[0].field();
    prime_of(scalars[0])?;
    for s in scalars {
        if s.field() != f {
            return Err(QuiverError::DegenerateParams("scalars from different fields".into()));
        }
    }
    Ok(f)
}

/// `I_x = {x^ε q^{2l}}`.
fn orbit_set(x: &Scalar, q2_powers: &BTreeSet<u64>) -> Result<BTreeSet<u64>, QuiverError> {
    let f = x.field();
    let xinv = x.inv().map_err(|_| QuiverError::DegenerateParams("x = 0".into()))?;
    let mut out = BTreeSet::new();
    for &k in q2_powers {
        let g = f.from_i64(k as i64);
        out.insert((x * &g).residue().expect("prime field"));
        out.insert((&xinv * &g).residue().expect("prime field"));
    }
    Ok(out)
}

/// Vertices `⊔ I_{x_a}`, arrows `v → q²v`, `θ(v) = v⁻¹`. In mode B, `λ` is the indicator of
/// `{±p} ∩ I` and `γ_i = 1` exactly at θ-fixed vertices. In mode D both vanish.
pub fn build_hecke_quiver(
    q: &Scalar,
    xs: &[Scalar],
    p: Option<&Scalar>,
    mode: HeckeMode,
) -> Result<HeckeQuiver, QuiverError> {
    let mut all = vec![q];
    all.extend(xs.iter());
    if let Some(p) = p {
        all.push(p);
    }
    let field = same_field(&all)?;
    nonzero(q, "q")?;
    let q2 = q * q;
    if q2.is_one() {
        return Err(QuiverError::DegenerateQ);
    }
    let p = match (mode, p) {
        (HeckeMode::B, Some(p)) => {
            nonzero(p, "p")?;
            if (p * p).is_one() {
                return Err(QuiverError::DegenerateParams("p^2 = 1".into()));
            }
            Some(p.clone())
        }
        (HeckeMode::B, None) => {
            return Err(QuiverError::DegenerateParams("mode B requires p".into()))
        }
        (HeckeMode::D, _) => None,
    };
    let q2_powers = powers(&q2);
    let mut values = Vec::new();
    let mut blocks = Vec::new();
    let mut seen = BTreeSet::new();
    for (a, x) in xs.iter().enumerate() {
        nonzero(x, "x")?;
        for v in orbit_set(x, &q2_powers)? {
            if !seen.insert(v) {
                return Err(QuiverError::OverlappingOrbitSets);
            }
            values.push(field.from_i64(v as i64));
            blocks.push(a as u8 + 1);
        }
    }
    let n = values.len();
    let index_of = |s: &Scalar| values.iter().position(|v| v == s).expect("closed set");
    let mut arrows = vec![vec![0u32; n]; n];
    let mut theta = vec![0; n];
    for (k, v) in values.iter().enumerate() {
        arrows[k][index_of(&(v * &q2))] += 1;
        theta[k] = index_of(&v.inv().expect("nonzero vertex"));
    }
    let names = values.iter().map(|v| v.residue().expect("prime field").to_string()).collect();
    let quiver = Quiver::from_parts(names, arrows, theta)?;
    let params = match p {
        Some(p) => {
            let minus_p = -&p;
            let lambda = values.iter().map(|v| u32::from(*v == p || *v == minus_p)).collect();
            let gamma = (0..n)
                .map(|k| if quiver.theta(k) == k { field.one() } else { field.zero() })
                .collect();
            Params { lambda, gamma }
        }
        None => Params::zero(&quiver, field),
    };
    params.validate(&quiver)?;
    Ok(HeckeQuiver { quiver, params, values, blocks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoritaCaseB {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoritaCaseD {
    A,
    B,
    C,
}

/// How `x` was brought to its representative: `x = sign · base^{inv} · q^{2·shift}`,
/// where `base` is `1`, `q` or `p` according to the case.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Normalisation {
    /// `X ↦ -X` was applied.
    pub negated: bool,
    /// `g_0 ↦ -g_0` was applied, exchanging `p` and `p⁻¹`.
    pub inverted_p: bool,
    /// Exponent `N` of the shift by `q^{2N}`.
    pub shift: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaB {
    pub case: MoritaCaseB,
    pub normalisation: Normalisation,
    /// `q²` has odd multiplicative order, so case b never needs separate treatment.
    pub b_equivalent_to_a: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaD {
    pub case: MoritaCaseD,
    pub normalisation: Normalisation,
    pub b_equivalent_to_a: bool,
}

/// Finds `(negated, N)` with `x = ±base·q^{2N}`.
fn locate(x: &Scalar, base: &Scalar, q2: &Scalar) -> Option<(bool, u64)> {
    let order = q2.mult_order().ok()?;
    let mut g = base.clone();
    for k in 0..order {
        if &g == x {
            return Some((false, k));
        }
        if -&g == *x {
            return Some((true, k));
        }
        g = &g * q2;
    }
    None
}

fn check_q(x: &Scalar, q: &Scalar) -> Result<Scalar, QuiverError> {
    same_field(&[x, q])?;
    nonzero(x, "x")?;
    nonzero(q, "q")?;
    let q2 = q * q;
    if q2.is_one() {
        return Err(QuiverError::DegenerateParams("q^2 = 1".into()));
    }
    Ok(q2)
}

fn odd_order(q2: &Scalar) -> bool {
    q2.mult_order().map(|o| o % 2 == 1).unwrap_or(false)
}

pub fn classify_morita_b(x: &Scalar, q: &Scalar, p: &Scalar) -> Result<MoritaB, QuiverError> {
    let q2 = check_q(x, q)?;
    same_field(&[x, q, p])?;
    nonzero(p, "p")?;
    if (p * p).is_one() {
        return Err(QuiverError::DegenerateParams("p^2 = 1".into()));
    }
    let one = x.field().one();
    let b_equivalent_to_a = odd_order(&q2);
    let done = |case, negated, inverted_p, shift| MoritaB {
        case,
        normalisation: Normalisation { negated, inverted_p, shift },
        b_equivalent_to_a,
    };
    if let Some((neg, k)) = locate(x, &one, &q2) {
        return Ok(done(MoritaCaseB::A, neg, false, k));
    }
    if let Some((neg, k)) = locate(x, q, &q2) {
        return Ok(done(MoritaCaseB::B, neg, false, k));
    }
    if let Some((neg, k)) = locate(x, p, &q2) {
        return Ok(done(MoritaCaseB::C, neg, false, k));
    }
    let pinv = p.inv().expect("nonzero");
    if let Some((neg, k)) = locate(x, &pinv, &q2) {
        return Ok(done(MoritaCaseB::C, neg, true, k));
    }
    Ok(done(MoritaCaseB::D, false, false, 0))
}

pub fn classify_morita_d(x: &Scalar, q: &Scalar) -> Result<MoritaD, QuiverError> {
    let q2 = check_q(x, q)?;
    let one = x.field().one();
    let b_equivalent_to_a = odd_order(&q2);
    let done = |case, negated, shift| MoritaD {
        case,
        normalisation: Normalisation { negated, inverted_p: false, shift },
        b_equivalent_to_a,
    };
    if let Some((neg, k)) = locate(x, &one, &q2) {
        return Ok(done(MoritaCaseD::A, neg, k));
    }
    if let Some((neg, k)) = locate(x, q, &q2) {
        return Ok(done(MoritaCaseD::B, neg, k));
    }
    Ok(done(MoritaCaseD::C, false, 0))
}

/// A bijection of vertices preserving arrow counts and commuting with `θ`, by backtracking.
pub fn find_theta_isomorphism(a: &Quiver, b: &Quiver) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let out_deg = |q: &Quiver, i: usize| -> (u32, u32, bool) {
        let o = (0..q.len()).map(|j| q.arrows(i, j)).sum();
        let inn = (0..q.len()).map(|j| q.arrows(j, i)).sum();
        (o, inn, q.theta(i) == i)
    };
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(a: &Quiver, b: &Quiver, map: &[usize], i: usize) -> bool {
        let bi = map[i];
        for (j, &bj) in map.iter().enumerate() {
            if bj == usize::MAX {
                continue;
            }
            if a.arrows(i, j) != b.arrows(bi, bj) || a.arrows(j, i) != b.arrows(bj, bi) {
                return false;
            }
        }
        let ti = a.theta(i);
        map[ti] == usize::MAX || map[ti] == b.theta(bi)
    }

    fn search(
        a: &Quiver,
        b: &Quiver,
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig: &dyn Fn(&Quiver, usize) -> (u32, u32, bool),
    ) -> bool {
        if i == a.len() {
            return true;
        }
        if map[i] != usize::MAX {
            return search(a, b, i + 1, map, used, sig);
        }
        for c in 0..b.len() {
            if used[c] || sig(a, i) != sig(b, c) {
                continue;
            }
            let ti = a.theta(i);
            let tc = b.theta(c);
            let pair = ti != i;
            if pair && (map[ti] != usize::MAX || used[tc]) {
                continue;
            }
            map[i] = c;
            used[c] = true;
            if pair {
                map[ti] = tc;
                used[tc] = true;
            }
            if consistent(a, b, map, i) && (!pair || consistent(a, b, map, ti))
                && search(a, b, i + 1, map, used, sig) {
                    return true;
                }
            map[i] = usize::MAX;
            used[c] = false;
            if pair {
                map[ti] = usize::MAX;
                used[tc] = false;
            }
        }
        false
    }

    if search(a, b, 0, &mut map, &mut used, &out_deg) {
        Some(map)
    } else {
        None
    }
}
