use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coxeter::SignedPerm;
use crate::quiver::{profiles, Partition, Profiles};
use crate::vvalgebra::{Algebra, AlgebraError, Degree, Element, PbwMonomial, Report};

use super::system::IdempotentSystem;
use super::DecompositionError;

/// Profile idempotents `e(t)` with `ψ_t`, `φ_t` along the canonical word of `π_t`.
#[derive(Clone, Debug)]
pub struct ProfileSystem {
    pub system: IdempotentSystem,
    pub profiles: Profiles,
    /// `π_t` for each profile, in the order of `profiles.list`.
    pub pis: Vec<SignedPerm>,
    pub partition: Partition,
    /// Profile index of each orbit tuple.
    profile_of: Vec<usize>,
}

pub fn profile_system(
    alg: &Arc<Algebra>,
    partition: &Partition,
) -> Result<ProfileSystem, DecompositionError> {
    if partition.vertex_count() != alg.quiver().len() {
        return Err(DecompositionError::NotComponentStable("partition is for another quiver".into()));
    }
    let profiles = profiles(alg.orbit(), partition)?;
    let mut profile_of = vec![0; alg.orbit().len()];
    let mut labels = Vec::new();
    let mut es = Vec::new();
    let mut phis = Vec::new();
    let mut psis = Vec::new();
    let mut pis = Vec::new();
    for (k, t) in profiles.list.iter().enumerate() {
        let mut e = Element::zero(alg);
        for &i in &profiles.fibers[k] {
            profile_of[i] = k;
            e = e.add(&Element::e(alg, i as u32))?;
        }
        let pi = SignedPerm::min_coset_rep(t);
        let word = pi.canonical_word();
        let letters: Vec<Element> =
            word.iter().map(|&a| Element::psi(alg, a as usize)).collect::<Result<_, _>>()?;
        let one = Element::one(alg);
        let psi = Element::product(alg, std::iter::once(&one).chain(&letters))?;
        let phi = Element::product(alg, std::iter::once(&one).chain(letters.iter().rev()))?;
        labels.push(t.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(""));
        es.push(e);
        psis.push(psi);
        phis.push(phi);
        pis.push(pi);
    }
    let system = IdempotentSystem::new(alg, labels, es, phis, psis)?;
    Ok(ProfileSystem { system, profiles, pis, partition: partition.clone(), profile_of })
}

/// A matrix indexed by profiles with entries in the corner `e(t^β) A e(t^β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixElement {
    pub size: usize,
    /// Nonzero entries keyed by `(row, column)`.
    pub entries: BTreeMap<(usize, usize), Element>,
}

impl MatrixElement {
    pub fn zero(size: usize) -> MatrixElement {
        MatrixElement { size, entries: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, row: usize, col: usize, x: Element) -> Result<(), AlgebraError> {
        let sum = match self.entries.remove(&(row, col)) {
            Some(old) => old.add(&x)?,
            None => x,
        };
        if !sum.is_zero() {
            self.entries.insert((row, col), sum);
        }
        Ok(())
    }

    pub fn mul(&self, other: &MatrixElement) -> Result<MatrixElement, AlgebraError> {
        let mut out = MatrixElement::zero(self.size);
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

impl ProfileSystem {
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.system.algebra()
    }

    pub fn len(&self) -> usize {
        self.system.len()
    }

    pub fn is_empty(&self) -> bool {
        self.system.is_empty()
    }

    /// Index of `t^β`.
    pub fn corner(&self) -> usize {
        self.profiles.t_beta_index()
    }

    pub fn profile_of(&self, i: u32) -> usize {
        self.profile_of[i as usize]
    }

    pub fn e(&self, t: usize) -> &Element {
        &self.system.idempotents[t]
    }

    pub fn psi(&self, t: usize) -> &Element {
        &self.system.psi[t]
    }

    pub fn phi(&self, t: usize) -> &Element {
        &self.system.phi[t]
    }

    /// Whether every term of `h` starts in profile `col` and ends in profile `row`.
    pub fn supported_in(&self, h: &Element, row: usize, col: usize) -> bool {
        let alg = self.algebra();
        h.terms()
            .all(|(m, _)| self.profile_of(m.source) == col && self.profile_of(m.target(alg)) == row)
    }

    /// `e(t') h e(t)`.
    pub fn block(&self, h: &Element, row: usize, col: usize) -> Element {
        let alg = self.algebra();
        h.filter(|m| self.profile_of(m.source) == col && self.profile_of(m.target(alg)) == row)
    }

    /// `θ_{t't}(h) = ψ_{t'} h φ_t` for `h ∈ e(t') A e(t)`.
    pub fn theta_entry(&self, h: &Element, row: usize, col: usize) -> Result<Element, DecompositionError> {
        if !self.supported_in(h, row, col) {
            return Err(DecompositionError::CornerMismatch);
        }
        Ok(Element::product(self.algebra(), [self.psi(row), h, self.phi(col)])?)
    }

    /// `η_{t't}(a M_{t't}) = φ_{t'} a ψ_t` for `a` in the corner.
    pub fn eta_entry(&self, a: &Element, row: usize, col: usize) -> Result<Element, DecompositionError> {
        let c = self.corner();
        if !self.supported_in(a, c, c) {
            return Err(DecompositionError::CornerMismatch);
        }
        Ok(Element::product(self.algebra(), [self.phi(row), a, self.psi(col)])?)
    }

    /// `θ(h) = Σ θ_{t't}(e(t') h e(t)) M_{t't}`.
    pub fn theta(&self, h: &Element) -> Result<MatrixElement, DecompositionError> {
        let mut out = MatrixElement::zero(self.len());
        for row in 0..self.len() {
            for col in 0..self.len() {
                let b = self.block(h, row, col);
                if !b.is_zero() {
                    out.insert(row, col, self.theta_entry(&b, row, col)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn eta(&self, m: &MatrixElement) -> Result<Element, DecompositionError> {
        let mut out = Element::zero(self.algebra());
        for (&(row, col), a) in &m.entries {
            out = out.add(&self.eta_entry(a, row, col)?)?;
        }
        Ok(out)
    }

    /// The identities relating `e(t)`, `ψ_t` and `φ_t`, plus the multinomial count.
    pub fn identities(&self) -> Result<Report, AlgebraError> {
        let alg = self.algebra().clone();
        let n = alg.rank();
        let mut report = Report::default();
        let c = self.corner();
        let e_beta = self.e(c);
        let sizes = &self.profiles.sizes;
        let multinomial = (1..=n as u128).product::<u128>()
            / sizes.iter().map(|&m| (1..=m as u128).product::<u128>()).product::<u128>();
        report.push("multinomial", "*", self.len() as u128 == multinomial);
        for t in 0..self.len() {
            let label = &self.system.labels[t];
            let (e, psi, phi) = (self.e(t), self.psi(t), self.phi(t));
            let prof = &self.profiles.list[t];
            let ok = &Element::product(&alg, [phi, psi, e])? == e
                && &Element::product(&alg, [e, phi, psi])? == e;
            report.push("phit_psit_klr", label, ok);
            let ok = &Element::product(&alg, [psi, e, phi])? == e_beta
                && &Element::product(&alg, [psi, phi, e_beta])? == e_beta;
            report.push("psit_et_phit", label, ok);
            for a in 1..n {
                if prof[a - 1] != prof[a] {
                    let p = Element::psi(&alg, a)?;
                    report.push(format!("psi2_e(s)[a={a}]"), label, &Element::product(&alg, [&p, &p, e])? == e);
                }
            }
            for a in 1..=n {
                let b = self.pis[t].apply(a as i32) as usize;
                let lhs = Element::product(&alg, [&Element::y(&alg, a)?, phi, e_beta])?;
                let rhs = Element::product(&alg, [phi, &Element::y(&alg, b)?, e_beta])?;
                report.push(format!("ya_psit[a={a}]"), label, lhs == rhs);
            }
            for a in 1..n.saturating_sub(1) {
                if prof[a - 1] != prof[a + 1] {
                    let (p, q) = (Element::psi(&alg, a)?, Element::psi(&alg, a + 1)?);
                    let lhs = Element::product(&alg, [&q, &p, &q, e])?;
                    let rhs = Element::product(&alg, [&p, &q, &p, e])?;
                    report.push(format!("psi_tresse_exact[a={a}]"), label, lhs == rhs);
                }
            }
            let psi_e = psi.mul(e)?;
            let e_phi = e.mul(phi)?;
            let zero = Degree::Homogeneous(0);
            let ok = e.degree() == zero && psi_e.degree() == zero && e_phi.degree() == zero;
            report.push("degree_zero", label, ok);
        }
        Ok(report)
    }

    /// PBW monomials of `e(t') A e(t)` with `y`-degree at most `max_ydeg`.
    pub fn block_monomials(&self, row: usize, col: usize, max_ydeg: u32) -> Vec<PbwMonomial> {
        let alg = self.algebra();
        PbwMonomial::enumerate(alg, None, max_ydeg)
            .into_iter()
            .filter(|m| self.profile_of(m.source) == col && self.profile_of(m.target(alg)) == row)
            .collect()
    }
}
