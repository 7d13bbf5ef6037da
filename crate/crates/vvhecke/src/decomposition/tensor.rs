use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coxeter::SignedPerm;
use crate::field::Scalar;
use crate::quiver::{orbit_components, Orbit, Params, Partition};
use crate::smash::{Mono, OpContext, PolyN, TwistedOp};
use crate::vvalgebra::{
    verify_relations_under, Algebra, AlgebraError, Element, Letter, LetterMap, PbwMonomial,
    Report,
};

use super::DecompositionError;

/// A finite combination of tensors of PBW monomials, one per factor.
#[derive(Clone)]
pub struct TensorElement {
    factors: Vec<Arc<Algebra>>,
    terms: BTreeMap<Vec<PbwMonomial>, Scalar>,
}

impl TensorElement {
    pub fn zero(factors: &[Arc<Algebra>]) -> TensorElement {
        TensorElement { factors: factors.to_vec(), terms: BTreeMap::new() }
    }

    /// `x_1 ⊗ ⋯ ⊗ x_d`.
    pub fn pure(xs: &[Element]) -> TensorElement {
        let factors: Vec<_> = xs.iter().map(|x| x.algebra().clone()).collect();
        let mut acc: Vec<(Vec<PbwMonomial>, Scalar)> =
            vec![(Vec::new(), factors.first().map_or(crate::field::Field::Rational, |f| f.field()).one())];
        for x in xs {
            let mut next = Vec::new();
            for (ms, c) in &acc {
                for (m, s) in x.terms() {
                    let mut ms = ms.clone();
                    ms.push(*m);
                    next.push((ms, c * s));
                }
            }
            acc = next;
        }
        let mut out = TensorElement::zero(&factors);
        for (ms, c) in acc {
            out.add_term(ms, c);
        }
        out
    }

    pub fn factors(&self) -> &[Arc<Algebra>] {
        &self.factors
    }

    pub fn add_term(&mut self, ms: Vec<PbwMonomial>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(ms).or_insert_with(|| c.field().zero());
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMonomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &TensorElement) -> Result<(), AlgebraError> {
        let same = self.factors.len() == other.factors.len()
            && self.factors.iter().zip(&other.factors).all(|(a, b)| Arc::ptr_eq(a, b));
        if same {
            Ok(())
        } else {
            Err(AlgebraError::DescriptorMismatch)
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (ms, c) in &other.terms {
            out.add_term(ms.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            factors: self.factors.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.add(&other.neg())
    }

    /// Factorwise product `(⊗ a_j)(⊗ b_j) = ⊗ a_j b_j`.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check(other)?;
        let mut out = TensorElement::zero(&self.factors);
        for (ms, c) in &self.terms {
            for (ns, s) in &other.terms {
                let mut parts = Vec::with_capacity(ms.len());
                for ((f, m), n) in self.factors.iter().zip(ms).zip(ns) {
                    parts.push(Element::monomial(f, *m).mul(&Element::monomial(f, *n))?);
                }
                let cs = c * s;
                for (k, v) in TensorElement::pure(&parts).terms {
                    out.add_term(k, &v * &cs);
                }
            }
        }
        Ok(out)
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &TensorElement) -> bool {
        self.check(other).is_ok() && self.terms == other.terms
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (ms, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            let parts: Vec<String> = self
                .factors
                .iter()
                .zip(ms)
                .map(|(alg, m)| format!("({})", Element::monomial(alg, *m)))
                .collect();
            write!(f, "{}", parts.join(" ⊗ "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The factor algebras `V_{β^{(j)}}(Γ^{(j)})` and the embedding `ρ` of their
/// tensor product onto the corner `e(t^β) A e(t^β)`.
#[derive(Debug)]
pub struct TensorStructure {
    alg: Arc<Algebra>,
    pub factors: Vec<Arc<Algebra>>,
    /// Original vertex of each factor vertex.
    pub keep: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub offsets: Vec<usize>,
    corner: Vec<u32>,
    split: BTreeMap<u32, Vec<u32>>,
    concat: BTreeMap<Vec<u32>, u32>,
    /// `ρ(ψ_b^{(j)})` indexed by `[j][b]`; `None` for letters the factor lacks.
    psi_images: Vec<Vec<Option<TwistedOp>>>,
}

/// Builds the factor algebras and the images of their generators.
pub fn rho(alg: &Arc<Algebra>, partition: &Partition) -> Result<TensorStructure, DecompositionError> {
    let quiver = alg.quiver();
    if partition.vertex_count() != quiver.len() {
        return Err(DecompositionError::NotComponentStable("partition is for another quiver".into()));
    }
    let comps = orbit_components(alg.orbit(), partition)?;
    if !comps.rebuild_ok {
        return Err(DecompositionError::NotFullOrbit("components do not regenerate the orbit".into()));
    }
    let sizes = comps.sizes.clone();
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut k = 0;
    for &m in &sizes {
        offsets.push(k);
        k += m;
    }
    let group = alg.orbit().group();
    let mut factors = Vec::new();
    let mut keep_all = Vec::new();
    for (j, set) in comps.orbits.iter().enumerate() {
        let keep = partition.vertices_in(j as u8 + 1);
        let (qj, _) = quiver.restrict(&keep)?;
        let mut pos = vec![u16::MAX; quiver.len()];
        for (a, &v) in keep.iter().enumerate() {
            pos[v] = a as u16;
        }
        let params = Params {
            lambda: keep.iter().map(|&v| alg.params().lambda[v]).collect(),
            gamma: keep.iter().map(|&v| alg.params().gamma[v].clone()).collect(),
        };
        let mapped: Vec<Vec<u16>> =
            set.tuples().iter().map(|t| t.iter().map(|&v| pos[v as usize]).collect()).collect();
        let seed = mapped.first().cloned().unwrap_or_default();
        let orbit = Orbit::generate(qj.theta_map(), &seed, group);
        let mut sorted = mapped.clone();
        sorted.sort();
        let mut generated = orbit.tuples().to_vec();
        generated.sort();
        if sorted != generated {
            return Err(DecompositionError::NotFullOrbit(format!("component {} is not an orbit", j + 1)));
        }
        factors.push(Algebra::new(qj, params, orbit, alg.mode(), alg.field())?);
        keep_all.push(keep);
    }
    let mut corner = Vec::new();
    let mut split = BTreeMap::new();
    let mut concat = BTreeMap::new();
    let t_beta: Vec<u8> =
        sizes.iter().enumerate().flat_map(|(j, &m)| std::iter::repeat_n(j as u8 + 1, m)).collect();
    for i in 0..alg.orbit().len() as u32 {
        let t = alg.tuple(i);
        if partition.profile(t) != t_beta {
            continue;
        }
        let mut parts = Vec::with_capacity(factors.len());
        for (j, f) in factors.iter().enumerate() {
            let local: Vec<&str> = t[offsets[j]..offsets[j] + sizes[j]]
                .iter()
                .map(|&v| quiver.name(v as usize))
                .collect();
            parts.push(f.tuple_index(&local)?);
        }
        corner.push(i);
        concat.insert(parts.clone(), i);
        split.insert(i, parts);
    }
    let expected: usize = factors.iter().map(|f| f.orbit().len()).product();
    if corner.len() != expected {
        return Err(DecompositionError::NotFullOrbit(format!(
            "{} corner tuples for {expected} concatenations",
            corner.len()
        )));
    }
    let mut psi_images = Vec::new();
    for (j, f) in factors.iter().enumerate() {
        let mut row = Vec::new();
        for b in 0..sizes[j].max(1) {
            if f.psi_op(b).is_err() {
                row.push(None);
                continue;
            }
            let word = SignedPerm::embed_word(offsets[j], &[b as u8]);
            let mut op = TwistedOp::zero(alg.context());
            for &c in &corner {
                op = op.add(&alg.word_op(c, &word)?)?;
            }
            row.push(Some(op));
        }
        psi_images.push(row);
    }
    Ok(TensorStructure {
        alg: alg.clone(),
        factors,
        keep: keep_all,
        sizes,
        offsets,
        corner,
        split,
        concat,
        psi_images,
    })
}

/// The letters of factor `j` realised through `ρ`.
struct FactorMap<'a> {
    ts: &'a TensorStructure,
    j: usize,
}

impl LetterMap for FactorMap<'_> {
    fn target(&self) -> &OpContext {
        self.ts.alg.context()
    }

    fn unit(&self) -> Result<TwistedOp, AlgebraError> {
        Ok(self.ts.corner_unit())
    }

    fn letter(&self, l: &Letter) -> Result<TwistedOp, AlgebraError> {
        let ts = self.ts;
        let (n, k) = (ts.alg.rank(), ts.offsets[self.j]);
        let ctx = ts.alg.context();
        Ok(match l {
            Letter::E(i) => {
                let mut op = TwistedOp::zero(ctx);
                for &c in &ts.corner {
                    if ts.split[&c][self.j] == *i {
                        op = op.add(&TwistedOp::projection(ctx, c))?;
                    }
                }
                op
            }
            Letter::Y(a) => ts.corner_unit().left_mul_poly(&PolyN::var(n, k + a, ts.alg.field())),
            Letter::Psi(b) => ts.psi_images[self.j]
                .get(*b)
                .cloned()
                .flatten()
                .ok_or_else(|| AlgebraError::InvalidGenerator(format!("psi{b}")))?,
            Letter::Poly(p) => ts.corner_unit().left_mul_poly(&p.shift(k, n)),
            Letter::Rat(f) => {
                let g = f.shift(k, n);
                let mut op = TwistedOp::zero(ctx);
                for &c in &ts.corner {
                    op.add_term(c, SignedPerm::identity(n), g.clone());
                }
                op
            }
            Letter::Op(_) => {
                return Err(AlgebraError::InvalidGenerator("operator letters have no image".into()))
            }
        })
    }
}

impl TensorStructure {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Orbit indices of the corner tuples (profile `t^β`).
    pub fn corner(&self) -> &[u32] {
        &self.corner
    }

    /// Factor tuple indices of a corner tuple.
    pub fn split_tuple(&self, i: u32) -> Option<&[u32]> {
        self.split.get(&i).map(|v| v.as_slice())
    }

    pub fn concat_tuple(&self, parts: &[u32]) -> Option<u32> {
        self.concat.get(parts).copied()
    }

    /// The operator of `e(t^β)`.
    pub fn corner_unit(&self) -> TwistedOp {
        let ctx = self.alg.context();
        let mut op = TwistedOp::zero(ctx);
        for &c in &self.corner {
            op = op.add(&TwistedOp::projection(ctx, c)).expect("same context");
        }
        op
    }

    /// The operator of `ρ(m_1 ⊗ ⋯ ⊗ m_d) = y^b ψ_{w̄_1} ⋯ ψ_{w̄_d} e(i^1, …, i^d)`.
    fn image_op(&self, ms: &[PbwMonomial]) -> Result<TwistedOp, AlgebraError> {
        let sources: Vec<u32> = ms.iter().map(|m| m.source).collect();
        let c = self.concat_tuple(&sources).ok_or_else(|| AlgebraError::UnknownTuple(format!("{sources:?}")))?;
        let mut word = Vec::new();
        let mut exps = Mono::one();
        for (j, m) in ms.iter().enumerate() {
            word.extend(SignedPerm::embed_word(self.offsets[j], &m.word()));
            exps = exps.mul(&m.exps.shift(self.offsets[j]));
        }
        let op = self.alg.word_op(c, &word)?;
        if exps.degree() == 0 {
            return Ok(op);
        }
        let n = self.alg.rank();
        Ok(op.left_mul_poly(&PolyN::monomial(n, exps, self.alg.field().one())))
    }

    fn check_factors(&self, x: &TensorElement) -> Result<(), AlgebraError> {
        let same = x.factors.len() == self.factors.len()
            && x.factors.iter().zip(&self.factors).all(|(a, b)| Arc::ptr_eq(a, b));
        if same {
            Ok(())
        } else {
            Err(AlgebraError::DescriptorMismatch)
        }
    }

    pub fn rho_expand(&self, x: &TensorElement) -> Result<Element, DecompositionError> {
        self.check_factors(x)?;
        let mut op = TwistedOp::zero(self.alg.context());
        for (ms, c) in &x.terms {
            op = op.add(&self.image_op(ms)?.scale(c))?;
        }
        Ok(self.alg.pbw_expand(&op)?)
    }

    /// Reads a corner element in the image basis by triangular extraction on
    /// the group part, which only shortens when subtracting an image.
    pub fn rho_inverse(&self, x: &Element) -> Result<TensorElement, DecompositionError> {
        if !Arc::ptr_eq(x.algebra(), &self.alg) {
            return Err(AlgebraError::DescriptorMismatch.into());
        }
        let inside = x.terms().all(|(m, _)| {
            self.split.contains_key(&m.source) && self.split.contains_key(&m.target(&self.alg))
        });
        if !inside {
            return Err(DecompositionError::NotInCorner);
        }
        let mut out = TensorElement::zero(&self.factors);
        let mut rest = x.op()?;
        while !rest.is_zero() {
            let (i, w) = rest
                .terms()
                .map(|(i, w, _)| (i, *w))
                .max_by_key(|(i, w)| (w.length(), std::cmp::Reverse(w.canonical_word()), std::cmp::Reverse(*i)))
                .expect("nonzero operator");
            let ws = w.split_blocks(&self.sizes).ok_or_else(|| DecompositionError::NotBlockSupported(w.to_string()))?;
            let parts = self.split_tuple(i).ok_or(DecompositionError::NotInCorner)?.to_vec();
            let base: Vec<PbwMonomial> = parts
                .iter()
                .zip(&ws)
                .map(|(&source, &w)| PbwMonomial { source, w, exps: Mono::one() })
                .collect();
            let lead = self.image_op(&base)?;
            let lead = lead.coeff(i, &w).cloned().ok_or_else(|| {
                AlgebraError::NotInAlgebra(format!("vanishing leading term at {w}"))
            })?;
            let c = rest.coeff(i, &w).expect("selected term").clone();
            let p = c.div(&lead).map_err(AlgebraError::from)?;
            let p = p
                .as_polynomial()
                .ok_or_else(|| AlgebraError::NotInAlgebra(format!("coefficient {p} at {w}")))?
                .clone();
            let mut sub = TwistedOp::zero(self.alg.context());
            for (m, s) in p.terms() {
                let ms: Vec<PbwMonomial> = base
                    .iter()
                    .enumerate()
                    .map(|(j, b)| PbwMonomial { exps: m.window(self.offsets[j], self.sizes[j]), ..*b })
                    .collect();
                sub = sub.add(&self.image_op(&ms)?.scale(s))?;
                out.add_term(ms, s.clone());
            }
            rest = rest.sub(&sub)?;
            if rest.coeff(i, &w).is_some() {
                return Err(AlgebraError::NotInAlgebra("extraction did not clear its slot".into()).into());
            }
        }
        Ok(out)
    }

    /// Images of the factor generators as corner elements, labelled by factor.
    pub fn generator_images(&self) -> Result<Vec<(String, Element)>, DecompositionError> {
        let mut out = Vec::new();
        for &c in &self.corner {
            let names: Vec<String> = self.split[&c]
                .iter()
                .zip(&self.factors)
                .map(|(&i, f)| format!("e({})", f.tuple_name(i)))
                .collect();
            out.push((names.join(" ⊗ "), Element::e(&self.alg, c)));
        }
        for j in 0..self.factors.len() {
            let map = FactorMap { ts: self, j };
            for a in 1..=self.sizes[j] {
                out.push((format!("y{a}^({})", j + 1), self.alg.pbw_expand(&map.letter(&Letter::Y(a))?)?));
            }
            for b in 0..self.sizes[j] {
                if let Ok(op) = map.letter(&Letter::Psi(b)) {
                    out.push((format!("psi{b}^({})", j + 1), self.alg.pbw_expand(&op)?));
                }
            }
        }
        Ok(out)
    }

    fn factor_letters(&self, j: usize) -> Vec<Letter> {
        let f = &self.factors[j];
        let mut out: Vec<Letter> = (1..=self.sizes[j]).map(Letter::Y).collect();
        out.extend((0..self.sizes[j]).filter(|&b| f.psi_op(b).is_ok()).map(Letter::Psi));
        out.extend((0..f.orbit().len() as u32).map(Letter::E));
        out
    }

    /// Factor relations through `ρ`, commutation across factors and degrees of images.
    pub fn verify_homomorphism(&self) -> Report {
        let mut report = Report::default();
        for (j, f) in self.factors.iter().enumerate() {
            let map = FactorMap { ts: self, j };
            let mut sub = verify_relations_under(f, &map);
            for r in &mut sub.records {
                r.relation = format!("factor{}:{}", j + 1, r.relation);
            }
            report.extend(sub);
        }
        for j in 0..self.factors.len() {
            for j2 in j + 1..self.factors.len() {
                let (m1, m2) = (FactorMap { ts: self, j }, FactorMap { ts: self, j: j2 });
                let mut ok = true;
                for l1 in self.factor_letters(j) {
                    for l2 in self.factor_letters(j2) {
                        let res = (|| -> Result<bool, AlgebraError> {
                            let (a, b) = (m1.letter(&l1)?, m2.letter(&l2)?);
                            Ok(a.compose(&b)? == b.compose(&a)?)
                        })();
                        ok &= res.unwrap_or(false);
                    }
                }
                report.push("cross_commute", format!("{},{}", j + 1, j2 + 1), ok);
            }
        }
        for (j, f) in self.factors.iter().enumerate() {
            let mut ok = true;
            for &c in &self.corner {
                let local = self.split[&c][j];
                for b in 0..self.sizes[j] {
                    if f.psi_op(b).is_err() {
                        continue;
                    }
                    let word = SignedPerm::embed_word(self.offsets[j], &[b as u8]);
                    ok &= f.letter_degree(b, local) == self.alg.word_degree(c, &word);
                }
            }
            report.push("grading", format!("{}", j + 1), ok);
        }
        report
    }

    /// The tensor PBW monomials with `y`-degree at most `max_ydeg` in each factor.
    pub fn tensor_monomials(&self, max_ydeg: u32) -> Vec<Vec<PbwMonomial>> {
        let mut acc: Vec<Vec<PbwMonomial>> = vec![Vec::new()];
        for f in &self.factors {
            let ms = PbwMonomial::enumerate(f, None, max_ydeg);
            let mut next = Vec::new();
            for prefix in &acc {
                for m in &ms {
                    let mut p = prefix.clone();
                    p.push(*m);
                    next.push(p);
                }
            }
            acc = next;
        }
        acc
    }
}
