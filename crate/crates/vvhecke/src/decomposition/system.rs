use std::sync::Arc;

use crate::vvalgebra::{Algebra, AlgebraError, Element, PbwMonomial, Report};

use super::DecompositionError;

/// A complete set of orthogonal idempotents `E` with elements `φ_e`, `ψ_e`.
#[derive(Clone, Debug)]
pub struct IdempotentSystem {
    alg: Arc<Algebra>,
    pub labels: Vec<String>,
    pub idempotents: Vec<Element>,
    pub phi: Vec<Element>,
    pub psi: Vec<Element>,
}

impl IdempotentSystem {
    pub fn new(
        alg: &Arc<Algebra>,
        labels: Vec<String>,
        idempotents: Vec<Element>,
        phi: Vec<Element>,
        psi: Vec<Element>,
    ) -> Result<IdempotentSystem, DecompositionError> {
        let k = idempotents.len();
        if labels.len() != k || phi.len() != k || psi.len() != k {
            return Err(DecompositionError::ShapeMismatch);
        }
        let foreign = idempotents.iter().chain(&phi).chain(&psi).any(|x| !Arc::ptr_eq(x.algebra(), alg));
        if foreign {
            return Err(AlgebraError::DescriptorMismatch.into());
        }
        Ok(IdempotentSystem { alg: alg.clone(), labels, idempotents, phi, psi })
    }

    /// `φ_e = ψ_e = e` for each given idempotent.
    pub fn trivial(
        alg: &Arc<Algebra>,
        labels: Vec<String>,
        idempotents: Vec<Element>,
    ) -> Result<IdempotentSystem, DecompositionError> {
        let (phi, psi) = (idempotents.clone(), idempotents.clone());
        IdempotentSystem::new(alg, labels, idempotents, phi, psi)
    }

    /// The one-element system `E = {1}`.
    pub fn unit(alg: &Arc<Algebra>) -> IdempotentSystem {
        let one = Element::one(alg);
        IdempotentSystem::trivial(alg, vec!["1".into()], vec![one]).expect("consistent shape")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// `ε = ψ_e e φ_e`.
    pub fn epsilon(&self, k: usize) -> Result<Element, AlgebraError> {
        Element::product(&self.alg, [&self.psi[k], &self.idempotents[k], &self.phi[k]])
    }
}

/// Outcome of [`validate_system`].
#[derive(Clone, Debug)]
pub struct SystemReport {
    pub report: Report,
    /// The distinct `ε`, in order of first appearance.
    pub epsilons: Vec<Element>,
    /// `I_ε` for each entry of `epsilons`, as indices into `E`.
    pub fibers: Vec<Vec<usize>>,
    /// How the disjointness assumption was checked.
    pub disjoint_note: String,
}

impl SystemReport {
    pub fn j_len(&self) -> usize {
        self.epsilons.len()
    }
}

/// Checks the axioms of an idempotent system, computes `J` with its fibres and
/// tests `ε̂ A ε̂' = 0` on PBW monomials of `y`-degree at most `max_ydeg`.
pub fn validate_system(s: &IdempotentSystem, max_ydeg: u32) -> Result<SystemReport, AlgebraError> {
    let alg = &s.alg;
    let mut report = Report::default();
    let mut sum = Element::zero(alg);
    for e in &s.idempotents {
        sum = sum.add(e)?;
    }
    report.push("complete", "*", sum == Element::one(alg));
    for (k, e) in s.idempotents.iter().enumerate() {
        let label = &s.labels[k];
        let mut orthogonal = true;
        for (l, f) in s.idempotents.iter().enumerate() {
            let ef = e.mul(f)?;
            orthogonal &= if k == l { &ef == e } else { ef.is_zero() };
        }
        report.push("orthogonal", label, orthogonal);
        let (phi, psi) = (&s.phi[k], &s.psi[k]);
        report.push("phie_psie_e", label, &Element::product(alg, [phi, psi, e])? == e);
        report.push("e_phie_psie", label, &Element::product(alg, [e, phi, psi])? == e);
        let eps = s.epsilon(k)?;
        report.push("epsilon_idempotent", label, eps.mul(&eps)? == eps);
        report.push("e_phie=phie_epsilon", label, e.mul(phi)? == phi.mul(&eps)?);
        report.push("epsilon_psie=psie_e", label, eps.mul(psi)? == psi.mul(e)?);
        report.push("psie_phie_epsilon", label, Element::product(alg, [psi, phi, &eps])? == eps);
        report.push("epsilon_psie_phie", label, Element::product(alg, [&eps, psi, phi])? == eps);
    }
    let mut epsilons: Vec<Element> = Vec::new();
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    for k in 0..s.len() {
        let eps = s.epsilon(k)?;
        match epsilons.iter().position(|x| *x == eps) {
            Some(p) => fibers[p].push(k),
            None => {
                epsilons.push(eps);
                fibers.push(vec![k]);
            }
        }
    }
    let disjoint_note = if epsilons.len() <= 1 {
        report.push("strong_disjoint", "*", true);
        "vacuous: J has a single element".to_string()
    } else {
        let mut hats = Vec::new();
        for f in &fibers {
            let mut h = Element::zero(alg);
            for &k in f {
                h = h.add(&s.idempotents[k])?;
            }
            hats.push(h);
        }
        let spanning = PbwMonomial::enumerate(alg, None, max_ydeg);
        for (a, ha) in hats.iter().enumerate() {
            for (b, hb) in hats.iter().enumerate() {
                if a == b {
                    continue;
                }
                let mut ok = true;
                for m in &spanning {
                    let x = Element::monomial(alg, *m);
                    if !Element::product(alg, [ha, &x, hb])?.is_zero() {
                        ok = false;
                        break;
                    }
                }
                report.push("strong_disjoint", format!("{a},{b}"), ok);
            }
        }
        format!("checked on PBW monomials of y-degree <= {max_ydeg}")
    };
    Ok(SystemReport { report, epsilons, fibers, disjoint_note })
}
