use std::collections::BTreeMap;
use std::sync::Arc;

use crate::quiver::{CycWeight, Partition};
use crate::smash::PolyN;
use crate::vvalgebra::{Algebra, AlgebraError, Element, PbwMonomial, Report};

use super::profile::{profile_system, MatrixElement, ProfileSystem};
use super::system::validate_system;
use super::tensor::{rho, TensorElement, TensorStructure};
use super::DecompositionError;

/// A profile-indexed matrix over the tensor product of the factor algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorMatrix {
    pub size: usize,
    pub entries: BTreeMap<(usize, usize), TensorElement>,
}

impl TensorMatrix {
    fn insert(&mut self, row: usize, col: usize, x: TensorElement) -> Result<(), AlgebraError> {
        let sum = match self.entries.remove(&(row, col)) {
            Some(old) => old.add(&x)?,
            None => x,
        };
        if !sum.is_zero() {
            self.entries.insert((row, col), sum);
        }
        Ok(())
    }

    pub fn mul(&self, other: &TensorMatrix) -> Result<TensorMatrix, AlgebraError> {
        let mut out = TensorMatrix { size: self.size, entries: BTreeMap::new() };
        for (&(r, k), a) in &self.entries {
            for (&(k2, c), b) in &other.entries {
                if k == k2 {
                    out.insert(r, c, a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }
}

/// `A ≅ Mat_N(⊗_j A^{(j)})`: the profile system, the corner maps and `ρ`.
#[derive(Debug)]
pub struct FullDecomposition {
    pub profiles: ProfileSystem,
    pub tensor: TensorStructure,
}

pub fn full_decompose(
    alg: &Arc<Algebra>,
    partition: &Partition,
) -> Result<FullDecomposition, DecompositionError> {
    let profiles = profile_system(alg, partition)?;
    let tensor = rho(alg, partition)?;
    Ok(FullDecomposition { profiles, tensor })
}

/// `e(i)` for every tuple, then `y_a` and `ψ_b` summed over tuples.
pub fn generators(alg: &Arc<Algebra>) -> Vec<Element> {
    let mut out: Vec<Element> = (0..alg.orbit().len() as u32).map(|i| Element::e(alg, i)).collect();
    out.extend((1..=alg.rank()).filter_map(|a| Element::y(alg, a).ok()));
    out.extend((0..alg.rank()).filter_map(|b| Element::psi(alg, b).ok()));
    out
}

impl FullDecomposition {
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.profiles.algebra()
    }

    pub fn matrix_size(&self) -> usize {
        self.profiles.len()
    }

    /// `h ↦ ρ^{-1}(θ(h))` entrywise.
    pub fn forward(&self, h: &Element) -> Result<TensorMatrix, DecompositionError> {
        let m = self.profiles.theta(h)?;
        let mut out = TensorMatrix { size: m.size, entries: BTreeMap::new() };
        for ((r, c), x) in m.entries {
            out.entries.insert((r, c), self.tensor.rho_inverse(&x)?);
        }
        Ok(out)
    }

    pub fn backward(&self, m: &TensorMatrix) -> Result<Element, DecompositionError> {
        let mut mat = MatrixElement::zero(m.size);
        for (&(r, c), x) in &m.entries {
            mat.insert(r, c, self.tensor.rho_expand(x)?)?;
        }
        self.profiles.eta(&mat)
    }

    /// Structural checks: the system axioms, the profile identities and the
    /// homomorphism property of `ρ`.
    pub fn verify_structure(&self) -> Result<Report, DecompositionError> {
        let mut report = validate_system(&self.profiles.system, 0)?.report;
        report.extend(self.profiles.identities()?);
        report.extend(self.tensor.verify_homomorphism());
        report.extend(self.dimensions(1));
        Ok(report)
    }

    /// Basis counts of the corner against the tensor product, in total over
    /// the group and truncated at `y`-degree `max_ydeg`.
    pub fn dimensions(&self, max_ydeg: u32) -> Report {
        let alg = self.algebra();
        let mut report = Report::default();
        let corner = self.tensor.corner();
        let in_corner = |i: u32| corner.binary_search(&i).is_ok();
        let group = alg.group_elements();
        let mut corner_pairs = 0u128;
        for &i in corner {
            corner_pairs += group.iter().filter(|w| in_corner(alg.act(w, i))).count() as u128;
        }
        let tensor_pairs: u128 = self
            .tensor
            .factors
            .iter()
            .map(|f| f.orbit().len() as u128 * f.group_elements().len() as u128)
            .product();
        report.push("dimension[corner]", "*", corner_pairs == tensor_pairs);
        let n2 = (self.matrix_size() as u128).pow(2);
        let total = alg.orbit().len() as u128 * group.len() as u128;
        report.push("dimension[total]", "*", total == n2 * corner_pairs);
        let truncated = PbwMonomial::enumerate(alg, None, max_ydeg)
            .into_iter()
            .filter(|m| in_corner(m.source) && in_corner(m.target(alg)))
            .count();
        let tensor_truncated = self
            .tensor
            .tensor_monomials(max_ydeg)
            .into_iter()
            .filter(|ms| ms.iter().map(|m| m.exps.degree()).sum::<u32>() <= max_ydeg)
            .count();
        report.push(format!("dimension[ydeg<={max_ydeg}]"), "*", truncated == tensor_truncated);
        report
    }

    /// `ρ` and `ρ^{-1}` are mutually inverse on every basis element of `y`-degree at most `max_ydeg`.
    pub fn verify_rho_bijection(&self, max_ydeg: u32) -> Result<Report, DecompositionError> {
        let alg = self.algebra();
        let mut report = Report::default();
        let corner = self.tensor.corner();
        let in_corner = |i: u32| corner.binary_search(&i).is_ok();
        let mut ok = true;
        for m in PbwMonomial::enumerate(alg, None, max_ydeg) {
            if in_corner(m.source) && in_corner(m.target(alg)) {
                let x = Element::monomial(alg, m);
                ok &= self.tensor.rho_expand(&self.tensor.rho_inverse(&x)?)? == x;
            }
        }
        report.push("rho_round_trip[corner]", "*", ok);
        let mut ok = true;
        for ms in self.tensor.tensor_monomials(max_ydeg) {
            let mut t = TensorElement::zero(&self.tensor.factors);
            t.add_term(ms, alg.field().one());
            ok &= self.tensor.rho_inverse(&self.tensor.rho_expand(&t)?)? == t;
        }
        report.push("rho_round_trip[tensor]", "*", ok);
        Ok(report)
    }

    /// `Φ(ab) = Φ(a)Φ(b)` and `Φ^{-1}Φ(a) = a` for the given pairs.
    pub fn verify_pairs(&self, pairs: &[(Element, Element)]) -> Result<Report, DecompositionError> {
        let mut report = Report::default();
        let mut mult = true;
        let mut round = true;
        for (a, b) in pairs {
            let (fa, fb) = (self.forward(a)?, self.forward(b)?);
            mult &= self.forward(&a.mul(b)?)? == fa.mul(&fb)?;
            round &= &self.backward(&fa)? == a;
        }
        report.push("composite_multiplicative", format!("{} pairs", pairs.len()), mult);
        report.push("composite_round_trip", format!("{} pairs", pairs.len()), round);
        Ok(report)
    }

    /// `η(θ(h)) = h` and `θ(h_1 h_2) = θ(h_1) θ(h_2)` on the given elements.
    pub fn verify_theta_eta(&self, xs: &[Element]) -> Result<Report, DecompositionError> {
        let mut report = Report::default();
        let mut round = true;
        let mut back = true;
        for x in xs {
            let m = self.profiles.theta(x)?;
            round &= &self.profiles.eta(&m)? == x;
            back &= self.profiles.theta(&self.profiles.eta(&m)?)? == m;
        }
        report.push("eta_theta", format!("{} elements", xs.len()), round);
        report.push("theta_eta", format!("{} elements", xs.len()), back);
        let mut mult = true;
        for w in xs.windows(2) {
            let lhs = self.profiles.theta(&w[0].mul(&w[1])?)?;
            mult &= lhs == self.profiles.theta(&w[0])?.mul(&self.profiles.theta(&w[1])?)?;
        }
        report.push("theta_multiplicative", format!("{} pairs", xs.len().saturating_sub(1)), mult);
        Ok(report)
    }
}

/// Outcome of [`cyclo_transport`].
#[derive(Clone, Debug)]
pub struct CycloReport {
    pub report: Report,
    /// Some block with `n_j ≠ 0` carries `Λ^{(j)} ≡ 0`, so the quotient vanishes.
    pub quotient_is_zero: bool,
}

fn y_power(alg: &Algebra, a: usize, e: u32) -> PolyN {
    PolyN::var(alg.rank(), a, alg.field()).pow(e, alg.field())
}

/// Checks both transport identities between the cyclotomic generators of `A`
/// and those of the corner.
pub fn cyclo_transport(
    alg: &Arc<Algebra>,
    partition: &Partition,
    weight: &CycWeight,
) -> Result<CycloReport, DecompositionError> {
    let ps = profile_system(alg, partition)?;
    let n = alg.rank();
    let mut report = Report::default();
    let sizes = ps.profiles.sizes.clone();
    let mut offsets = Vec::new();
    let mut k = 0;
    for &m in &sizes {
        offsets.push(k);
        k += m;
    }
    let lam = |v: u16| weight.0[v as usize];
    if n == 0 {
        return Ok(CycloReport { report, quotient_is_zero: false });
    }
    for i in 0..alg.orbit().len() as u32 {
        let t = ps.profile_of(i);
        let pi = ps.pis[t];
        let b = pi.apply(1) as usize;
        let v = alg.tuple(i)[0];
        let j = partition.block_of(v) as usize - 1;
        let moved = alg.act(&pi, i);
        let e = lam(v);
        let lhs = Element::poly_at(alg, &y_power(alg, 1, e), i);
        let mid = Element::poly_at(alg, &y_power(alg, b, e), moved);
        let rhs = Element::product(alg, [ps.phi(t), &mid, ps.psi(t), ps.e(t)])?;
        report.push("cyclo_forward", alg.tuple_name(i), lhs == rhs && b == offsets[j] + 1);
    }
    let c = ps.corner();
    let t_beta = ps.profiles.t_beta.clone();
    for &i in &ps.profiles.fibers[c] {
        let i = i as u32;
        for (j, &m) in sizes.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let b = offsets[j] + 1;
            let mut tp = vec![j as u8 + 1];
            let mut removed = false;
            for &x in &t_beta {
                if x == j as u8 + 1 && !removed {
                    removed = true;
                } else {
                    tp.push(x);
                }
            }
            let tp = ps.profiles.position(&tp).expect("a permutation of t^beta is a profile");
            let pi = ps.pis[tp];
            let e = lam(alg.tuple(i)[b - 1]);
            let back = alg.act(&pi.inverse(), i);
            let mut ok = pi.apply(1) as usize == b && alg.tuple(back)[0] == alg.tuple(i)[b - 1];
            let gen = Element::poly_at(alg, &y_power(alg, b, e), i);
            let moved = Element::poly_at(alg, &y_power(alg, 1, e), back);
            for t in 0..ps.len() {
                let lhs = ps.eta_entry(&gen, tp, t)?;
                let rhs = Element::product(alg, [&moved, ps.phi(tp), ps.psi(t)])?;
                ok &= lhs == rhs;
            }
            report.push(format!("cyclo_backward[b={b}]"), alg.tuple_name(i), ok);
        }
    }
    let quotient_is_zero = sizes.iter().enumerate().any(|(j, &m)| {
        m > 0 && weight.is_zero_on(partition.vertices_in(j as u8 + 1))
    });
    if quotient_is_zero {
        let mut contains_e = false;
        for &i in &ps.profiles.fibers[c] {
            for (j, &m) in sizes.iter().enumerate() {
                if m > 0 && lam(alg.tuple(i as u32)[offsets[j]]) == 0 {
                    contains_e = true;
                }
            }
        }
        report.push("quotient_is_zero", "*", contains_e);
    }
    Ok(CycloReport { report, quotient_is_zero })
}
