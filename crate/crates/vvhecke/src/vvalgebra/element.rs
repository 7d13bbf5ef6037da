use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coxeter::{word_to_string, SignedPerm};
use crate::field::Scalar;
use crate::smash::{Mono, PolyN, TwistedOp};

use super::{Algebra, AlgebraError, Mode};

/// `y_1^{a_1} ⋯ y_n^{a_n} ψ_w e(i)`, with `ψ_w` taken along the canonical word of `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub source: u32,
    pub w: SignedPerm,
    pub exps: Mono,
}

impl PbwMonomial {
    pub fn idempotent(n: usize, i: u32) -> PbwMonomial {
        PbwMonomial { source: i, w: SignedPerm::identity(n), exps: Mono::one() }
    }

    pub fn word(&self) -> Vec<u8> {
        self.w.canonical_word()
    }

    /// Every monomial with `ℓ(w) ≤ max_len` and total `y`-degree at most `max_ydeg`.
    pub fn enumerate(alg: &Algebra, max_len: Option<usize>, max_ydeg: u32) -> Vec<PbwMonomial> {
        let n = alg.rank();
        let exps = Mono::up_to_degree(n, max_ydeg);
        let mut out = Vec::new();
        for w in alg.group_elements() {
            if max_len.is_some_and(|l| w.length() > l) {
                continue;
            }
            for source in 0..alg.orbit().len() as u32 {
                out.extend(exps.iter().map(|&exps| PbwMonomial { source, w, exps }));
            }
        }
        out.sort();
        out
    }

    /// Index of the tuple `w · i` on which the monomial ends.
    pub fn target(&self, alg: &Algebra) -> u32 {
        alg.act(&self.w, self.source)
    }
}

/// Homogeneity of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    NonHomogeneous,
}

/// A finite combination of PBW monomials.
#[derive(Clone)]
pub struct Element {
    alg: Arc<Algebra>,
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl Element {
    pub fn zero(alg: &Arc<Algebra>) -> Element {
        Element { alg: alg.clone(), terms: BTreeMap::new() }
    }

    /// `Σ_i e(i)`.
    pub fn one(alg: &Arc<Algebra>) -> Element {
        let mut e = Element::zero(alg);
        for i in 0..alg.orbit().len() as u32 {
            e.add_term(PbwMonomial::idempotent(alg.rank(), i), alg.field().one());
        }
        e
    }

    pub fn monomial(alg: &Arc<Algebra>, m: PbwMonomial) -> Element {
        let mut e = Element::zero(alg);
        e.add_term(m, alg.field().one());
        e
    }

    /// `e(i)`.
    pub fn e(alg: &Arc<Algebra>, i: u32) -> Element {
        Element::monomial(alg, PbwMonomial::idempotent(alg.rank(), i))
    }

    /// `Σ_i y_a e(i)`.
    pub fn y(alg: &Arc<Algebra>, a: usize) -> Result<Element, AlgebraError> {
        alg.y_op(a)?;
        let mut e = Element::zero(alg);
        for i in 0..alg.orbit().len() as u32 {
            let m = PbwMonomial { exps: Mono::var(a), ..PbwMonomial::idempotent(alg.rank(), i) };
            e.add_term(m, alg.field().one());
        }
        Ok(e)
    }

    /// `Σ_i ψ_b e(i)`.
    pub fn psi(alg: &Arc<Algebra>, b: usize) -> Result<Element, AlgebraError> {
        alg.psi_op(b)?;
        let w = SignedPerm::generator(alg.rank(), b).expect("checked letter");
        let mut e = Element::zero(alg);
        for i in 0..alg.orbit().len() as u32 {
            e.add_term(PbwMonomial { source: i, w, exps: Mono::one() }, alg.field().one());
        }
        Ok(e)
    }

    /// `f(y_1, …, y_n) e(i)`.
    pub fn poly_at(alg: &Arc<Algebra>, f: &PolyN, i: u32) -> Element {
        let mut e = Element::zero(alg);
        for (m, c) in f.terms() {
            e.add_term(PbwMonomial { exps: *m, ..PbwMonomial::idempotent(alg.rank(), i) }, c.clone());
        }
        e
    }

    /// The product `ψ_{a_1} ⋯ ψ_{a_k} e(i)` along an arbitrary word.
    pub fn word_at(alg: &Arc<Algebra>, word: &[u8], i: u32) -> Result<Element, AlgebraError> {
        alg.pbw_expand(&alg.word_op(i, word)?)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
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

    pub fn coeff(&self, m: &PbwMonomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// The terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&PbwMonomial) -> bool) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    fn check(&self, other: &Element) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(AlgebraError::DescriptorMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        let mut r = Element::zero(&self.alg);
        for (m, c) in &self.terms {
            r.add_term(*m, c * s);
        }
        r
    }

    /// The twisted operator realising this element.
    pub fn op(&self) -> Result<TwistedOp, AlgebraError> {
        let mut acc = TwistedOp::zero(self.alg.context());
        for (m, c) in &self.terms {
            acc = acc.add(&self.alg.monomial_op(m)?.scale(c))?;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Element::zero(&self.alg));
        }
        let op = self.op()?.compose(&other.op()?)?;
        self.alg.pbw_expand(&op)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<'a>(
        alg: &Arc<Algebra>,
        factors: impl IntoIterator<Item = &'a Element>,
    ) -> Result<Element, AlgebraError> {
        let mut op = TwistedOp::identity(alg.context());
        for f in factors {
            if !Arc::ptr_eq(alg, &f.alg) {
                return Err(AlgebraError::DescriptorMismatch);
            }
            op = op.compose(&f.op()?)?;
        }
        alg.pbw_expand(&op)
    }

    pub fn monomial_degree(&self, m: &PbwMonomial) -> i64 {
        2 * m.exps.degree() as i64 + self.alg.word_degree(m.source, &m.word())
    }

    pub fn degree(&self) -> Degree {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = self.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Degree::NonHomogeneous,
                _ => {}
            }
        }
        deg.map_or(Degree::Zero, Degree::Homogeneous)
    }

    /// `ι`: negates `ψ_0`, so each monomial picks up `(-1)^{r0 count of w}`.
    pub fn iota(&self) -> Result<Element, AlgebraError> {
        if !self.alg.params_zero() {
            return Err(AlgebraError::ParamsNotZero);
        }
        let mut r = Element::zero(&self.alg);
        for (m, c) in &self.terms {
            r.add_term(*m, if m.w.r0_count() % 2 == 1 { -c } else { c.clone() });
        }
        Ok(r)
    }

    /// Whether every term avoids `ψ_0`.
    pub fn is_psi0_free(&self) -> bool {
        self.alg.mode() == Mode::A || self.terms.keys().all(|m| m.w.is_unsigned())
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.alg.rank();
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_cached_key(|(m, _)| {
            let exps: Vec<std::cmp::Reverse<u16>> =
                (1..=n).map(|a| std::cmp::Reverse(m.exps.exp(a))).collect();
            (m.source, m.w.length(), m.word(), m.exps.degree(), exps)
        });
        for (k, (m, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative_display();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = if neg { -c } else { c.clone() };
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let y = PolyN::monomial(self.alg.rank(), m.exps, self.alg.field().one());
            if m.exps.degree() > 0 {
                write!(f, "{}*", y.display_with("y"))?;
            }
            if !m.w.is_identity() {
                write!(f, "psi{}*", word_to_string(&m.word()))?;
            }
            write!(f, "e({})", self.alg.tuple_name(m.source))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
