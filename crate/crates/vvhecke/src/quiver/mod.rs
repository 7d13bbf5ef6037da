//! Quivers with involution, the parameters `λ`, `γ`, `Λ`, the polynomial families
//! `Q`, `P`, `α`, orbits and profiles, Hecke-type quivers and Morita cases.

mod hecke;
mod orbit;

pub use hecke::{
    build_hecke_quiver, classify_morita_b, classify_morita_d, find_theta_isomorphism,
    HeckeMode, HeckeQuiver, MoritaB, MoritaCaseB, MoritaCaseD, MoritaD, Normalisation,
};
pub use orbit::{orbit_components, profiles, Components, Group, Orbit, Partition, Profiles, Tuple};

use std::collections::{BTreeMap, HashMap};

use crate::field::{Field, Scalar};
use crate::smash::PolyN;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("loop at vertex {0:?}")]
    Loop(String),
    #[error("theta is not an involution at {0:?}")]
    NotInvolution(String),
    #[error("arrow counts violate |i->j| = |theta(j)->theta(i)| for ({0:?}, {1:?})")]
    ArrowIncompatible(String, String),
    #[error("invalid P family: {0}")]
    InvalidPFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("partition is not component-stable: {0}")]
    NotComponentStable(String),
    #[error("builder requires a prime field")]
    NotFiniteField,
    #[error("the sets I_x overlap")]
    OverlappingOrbitSets,
    #[error("q^2 = 1")]
    DegenerateQ,
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
}

/// Finite quiver with involution. Vertices are indexed `0..len`, string ids are
/// kept for input and output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    arrows: Vec<Vec<u32>>,
    theta: Vec<usize>,
    p_family: Option<BTreeMap<(usize, usize), PolyN>>,
}

impl Quiver {
    /// Builds and validates a quiver. `involution` lists the non-trivial pairs;
    /// unlisted vertices are fixed.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        arrows: &[(S, S)],
        involution: &[(S, S)],
    ) -> Result<Quiver, QuiverError> {
        let mut index = HashMap::new();
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (k, v) in names.iter().enumerate() {
            if index.insert(v.clone(), k).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| QuiverError::UnknownVertex(s.as_ref().to_string()))
        };
        let n = names.len();
        let mut arrow_counts = vec![vec![0u32; n]; n];
        for (a, b) in arrows {
            let (i, j) = (lookup(a)?, lookup(b)?);
            arrow_counts[i][j] += 1;
        }
        let mut theta: Vec<usize> = (0..n).collect();
        for (a, b) in involution {
            let (i, j) = (lookup(a)?, lookup(b)?);
            theta[i] = j;
            theta[j] = i;
        }
        Quiver::from_parts(names, arrow_counts, theta)
    }

    /// Builds from index data: `arrows[i][j] = |i→j|`.
    pub fn from_parts(
        vertices: Vec<String>,
        arrows: Vec<Vec<u32>>,
        theta: Vec<usize>,
    ) -> Result<Quiver, QuiverError> {
        let mut index = HashMap::new();
        for (k, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), k).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let q = Quiver { vertices, index, arrows, theta, p_family: None };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<(), QuiverError> {
        let n = self.len();
        for i in 0..n {
            if self.arrows[i][i] > 0 {
                return Err(QuiverError::Loop(self.vertices[i].clone()));
            }
            if self.theta[i] >= n || self.theta[self.theta[i]] != i {
                return Err(QuiverError::NotInvolution(self.vertices[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.arrows[i][j] != self.arrows[self.theta[j]][self.theta[i]] {
                    return Err(QuiverError::ArrowIncompatible(
                        self.vertices[i].clone(),
                        self.vertices[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex(&self, id: &str) -> Result<usize, QuiverError> {
        self.index.get(id).copied().ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    }

    pub fn theta(&self, i: usize) -> usize {
        self.theta[i]
    }

    pub fn theta_map(&self) -> &[usize] {
        &self.theta
    }

    /// `|i → j|`.
    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn arrow_matrix(&self) -> &[Vec<u32>] {
        &self.arrows
    }

    /// `i·j = |i→j| + |j→i|`.
    pub fn dot(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j] + self.arrows[j][i]
    }

    /// `d(i,j)`: `i·j` for distinct vertices, `-2` otherwise.
    pub fn d_pair(&self, i: usize, j: usize) -> i64 {
        if i == j {
            -2
        } else {
            self.dot(i, j) as i64
        }
    }

    fn check(&self, i: usize) -> Result<(), QuiverError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(QuiverError::UnknownVertex(format!("#{i}")))
        }
    }

    /// `Q_{ij}(u,v) = (-1)^{|i→j|}(u-v)^{i·j}` for `i ≠ j`, zero otherwise; `u = x1`, `v = x2`.
    pub fn q_poly(&self, i: usize, j: usize, field: Field) -> Result<PolyN, QuiverError> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Ok(PolyN::zero(2));
        }
        let base = PolyN::var(2, 1, field).sub(&PolyN::var(2, 2, field));
        let p = base.pow(self.dot(i, j), field);
        Ok(if self.arrows[i][j] % 2 == 1 { p.neg() } else { p })
    }

    /// `P_{ij}(u,v)`: the installed family, or `(u-v)^{|j→i|}` for `i ≠ j` and zero otherwise.
    pub fn p_poly(&self, i: usize, j: usize, field: Field) -> Result<PolyN, QuiverError> {
        self.check(i)?;
        self.check(j)?;
        if let Some(fam) = &self.p_family {
            return Ok(fam.get(&(i, j)).cloned().unwrap_or_else(|| PolyN::zero(2)));
        }
        if i == j {
            return Ok(PolyN::zero(2));
        }
        let base = PolyN::var(2, 1, field).sub(&PolyN::var(2, 2, field));
        Ok(base.pow(self.arrows[j][i], field))
    }

    /// Installs a custom `P` family after checking its defining identities.
    pub fn with_p_family(
        mut self,
        family: BTreeMap<(usize, usize), PolyN>,
        field: Field,
    ) -> Result<Quiver, QuiverError> {
        self.p_family = Some(family);
        self.check_p_family(field)?;
        Ok(self)
    }

    /// Checks `P_{ij}(u,v) = P_{ij}(-v,-u)`, `P_{ij} = P_{θ(j)θ(i)}`,
    /// `P_{ij}(u,v)P_{ji}(v,u) = Q_{ij}(u,v)` and `P_{ii} = 0`.
    pub fn check_p_family(&self, field: Field) -> Result<(), QuiverError> {
        let swap = [(1i8, 2usize), (1, 1)];
        let neg_swap = [(-1i8, 2usize), (-1, 1)];
        for i in 0..self.len() {
            for j in 0..self.len() {
                let p = self.p_poly(i, j, field)?;
                let name = || format!("({}, {})", self.vertices[i], self.vertices[j]);
                if i == j && !p.is_zero() {
                    return Err(QuiverError::InvalidPFamily(format!("P_ii != 0 at {}", name())));
                }
                if p.substitute(&neg_swap, 2) != p {
                    return Err(QuiverError::InvalidPFamily(format!(
                        "P(u,v) != P(-v,-u) at {}",
                        name()
                    )));
                }
                if self.p_poly(self.theta[j], self.theta[i], field)? != p {
                    return Err(QuiverError::InvalidPFamily(format!(
                        "P_ij != P_theta(j)theta(i) at {}",
                        name()
                    )));
                }
                let pji = self.p_poly(j, i, field)?.substitute(&swap, 2);
                if p.mul(&pji) != self.q_poly(i, j, field)? {
                    return Err(QuiverError::InvalidPFamily(format!("P P != Q at {}", name())));
                }
            }
        }
        Ok(())
    }

    /// Induced subquiver on `keep` (must be θ-stable).
    pub fn restrict(&self, keep: &[usize]) -> Result<(Quiver, Vec<usize>), QuiverError> {
        let mut map = vec![usize::MAX; self.len()];
        for (k, &v) in keep.iter().enumerate() {
            map[v] = k;
        }
        for &v in keep {
            if map[self.theta[v]] == usize::MAX {
                return Err(QuiverError::NotInvolution(self.vertices[v].clone()));
            }
        }
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let arrows = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| self.arrows[a][b]).collect())
            .collect();
        let theta = keep.iter().map(|&v| map[self.theta[v]]).collect();
        let mut q = Quiver::from_parts(vertices, arrows, theta)?;
        if let Some(fam) = &self.p_family {
            let mut sub = BTreeMap::new();
            for (&(i, j), p) in fam {
                if map[i] != usize::MAX && map[j] != usize::MAX {
                    sub.insert((map[i], map[j]), p.clone());
                }
            }
            q.p_family = Some(sub);
        }
        Ok((q, keep.to_vec()))
    }
}

/// The parameters `λ ∈ ℕ^I` and `γ ∈ K^I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub lambda: Vec<u32>,
    pub gamma: Vec<Scalar>,
}

impl Params {
    pub fn zero(quiver: &Quiver, field: Field) -> Params {
        Params { lambda: vec![0; quiver.len()], gamma: vec![field.zero(); quiver.len()] }
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.iter().all(|&l| l == 0) && self.gamma.iter().all(|g| g.is_zero())
    }

    /// Checks `θ(i) ≠ i ⇒ γ_i = 0`, `γ_i = 0 ⇒ (θ(i) ≠ i or λ_i + λ_{θ(i)} = 0)`
    /// and `γ_{θ(i)} = γ_i`.
    pub fn validate(&self, quiver: &Quiver) -> Result<(), QuiverError> {
        let n = quiver.len();
        if self.lambda.len() != n || self.gamma.len() != n {
            return Err(QuiverError::InvalidParams("length mismatch".into()));
        }
        for i in 0..n {
            let t = quiver.theta(i);
            let name = quiver.name(i);
            if t != i && !self.gamma[i].is_zero() {
                return Err(QuiverError::InvalidParams(format!(
                    "gamma nonzero at non-fixed vertex {name}"
                )));
            }
            if self.gamma[i].is_zero() && t == i && self.lambda[i] + self.lambda[t] != 0 {
                return Err(QuiverError::InvalidParams(format!(
                    "gamma zero at fixed vertex {name} with lambda nonzero"
                )));
            }
            if self.gamma[i] != self.gamma[t] {
                return Err(QuiverError::InvalidParams(format!(
                    "gamma not theta-invariant at {name}"
                )));
            }
        }
        Ok(())
    }

    /// `d(i) = λ_i + λ_{θ(i)}` when `γ_i = 0`, `-2` otherwise.
    pub fn d_vertex(&self, quiver: &Quiver, i: usize) -> i64 {
        if self.gamma[i].is_zero() {
            (self.lambda[i] + self.lambda[quiver.theta(i)]) as i64
        } else {
            -2
        }
    }

    /// `α_i(y) = y^{λ_{θ(i)}}` when `γ_i = 0`, zero otherwise (one variable).
    pub fn alpha_poly(&self, quiver: &Quiver, i: usize, field: Field) -> PolyN {
        if self.gamma[i].is_zero() {
            PolyN::var(1, 1, field).pow(self.lambda[quiver.theta(i)], field)
        } else {
            PolyN::zero(1)
        }
    }
}

/// Cyclotomic weight `Λ ∈ ℕ^I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycWeight(pub Vec<u32>);

impl CycWeight {
    /// `Λ̃_i = min(Λ_i, Λ_{θ(i)})`.
    pub fn tilde(&self, quiver: &Quiver) -> CycWeight {
        CycWeight((0..self.0.len()).map(|i| self.0[i].min(self.0[quiver.theta(i)])).collect())
    }

    pub fn is_zero_on(&self, vertices: impl IntoIterator<Item = usize>) -> bool {
        vertices.into_iter().all(|v| self.0[v] == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn uv() -> (PolyN, PolyN) {
        (PolyN::var(2, 1, Q), PolyN::var(2, 2, Q))
    }

    fn two_cycle() -> Quiver {
        // a → b, θ swaps a with b̄ and b with ā, so θ(b)→θ(a) is ā→b̄.
        Quiver::new(
            &["a", "b", "A", "B"],
            &[("a", "b"), ("A", "B")],
            &[("a", "B"), ("b", "A")],
        )
        .unwrap()
    }

    fn single_arrow() -> Quiver {
        // j → i, with θ pairing i with I and j with J.
        Quiver::new(&["i", "j", "I", "J"], &[("j", "i"), ("I", "J")], &[("i", "I"), ("j", "J")])
            .unwrap()
    }

    #[test]
    fn q_examples() {
        let q = Quiver::new(
            &["i", "j", "k", "J", "I"],
            &[("i", "j"), ("J", "I")],
            &[("i", "I"), ("j", "J")],
        )
        .unwrap();
        let (u, v) = uv();
        assert!(q.q_poly(0, 0, Q).unwrap().is_zero());
        assert_eq!(q.q_poly(0, 1, Q).unwrap(), u.sub(&v).neg());
        assert_eq!(q.q_poly(1, 0, Q).unwrap(), u.sub(&v));
        assert_eq!(q.q_poly(0, 2, Q).unwrap(), PolyN::one(2, Q));
        assert!(matches!(q.q_poly(0, 7, Q), Err(QuiverError::UnknownVertex(_))));
    }

    #[test]
    fn p_examples() {
        let q = single_arrow();
        let (u, v) = uv();
        assert!(q.p_poly(0, 0, Q).unwrap().is_zero());
        assert_eq!(q.p_poly(0, 1, Q).unwrap(), u.sub(&v));
        q.check_p_family(Q).unwrap();
        two_cycle().check_p_family(Q).unwrap();
    }

    #[test]
    fn rejects_bad_quivers() {
        assert!(matches!(
            Quiver::new(&["a"], &[("a", "a")], &[]),
            Err(QuiverError::Loop(_))
        ));
        assert!(matches!(
            Quiver::new(&["a", "b", "c"], &[("a", "b")], &[("a", "c")]),
            Err(QuiverError::ArrowIncompatible(..))
        ));
    }

    #[test]
    fn rejects_bad_p_family() {
        let q = single_arrow();
        let (u, v) = uv();
        let mut fam = BTreeMap::new();
        fam.insert((0, 1), u.sub(&v).neg());
        fam.insert((1, 0), u.sub(&v).neg());
        assert!(matches!(q.with_p_family(fam, Q), Err(QuiverError::InvalidPFamily(_))));
    }

    #[test]
    fn alpha_and_degrees() {
        let q = Quiver::new(&["f", "a", "A"], &[], &[("a", "A")]).unwrap();
        let p = Params { lambda: vec![0, 2, 1], gamma: vec![Q.one(), Q.zero(), Q.zero()] };
        p.validate(&q).unwrap();
        assert!(p.alpha_poly(&q, 0, Q).is_zero());
        assert_eq!(p.d_vertex(&q, 0), -2);
        assert_eq!(p.alpha_poly(&q, 1, Q), PolyN::var(1, 1, Q));
        assert_eq!(p.d_vertex(&q, 1), 3);
        let y = PolyN::var(1, 1, Q);
        // α_{θ(i)}(y) α_i(-y) = (-1)^{λ_{θ(i)}} y^{d(i)}
        for i in 1..3 {
            let t = q.theta(i);
            let lhs = p
                .alpha_poly(&q, t, Q)
                .mul(&p.alpha_poly(&q, i, Q).substitute(&[(-1, 1)], 1));
            let mut rhs = y.pow(p.d_vertex(&q, i) as u32, Q);
            if p.lambda[t] % 2 == 1 {
                rhs = rhs.neg();
            }
            assert_eq!(lhs, rhs);
        }
        let zero_lambda = Params { lambda: vec![0; 3], gamma: vec![Q.one(), Q.zero(), Q.zero()] };
        assert_eq!(zero_lambda.alpha_poly(&q, 1, Q), PolyN::one(1, Q));
    }

    #[test]
    fn params_conditions() {
        let q = Quiver::new(&["f", "a", "A"], &[], &[("a", "A")]).unwrap();
        let bad = Params { lambda: vec![0; 3], gamma: vec![Q.zero(), Q.one(), Q.one()] };
        assert!(bad.validate(&q).is_err());
        let bad = Params { lambda: vec![1, 0, 0], gamma: vec![Q.zero(); 3] };
        assert!(bad.validate(&q).is_err());
    }

    #[test]
    fn tilde_weight() {
        let q = Quiver::new(&["a", "A"], &[], &[("a", "A")]).unwrap();
        assert_eq!(CycWeight(vec![3, 1]).tilde(&q), CycWeight(vec![1, 1]));
    }
}
