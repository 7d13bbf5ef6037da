use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coxeter::SignedPerm;
use crate::field::{Field, Scalar};
use crate::quiver::Orbit;

use super::poly::PolyN;
use super::ratfunc::RatFunc;
use super::SmashError;

/// The ring `K[x_1..x_n]` and orbit `β` that operators act on.
#[derive(Debug, Clone)]
pub struct OpContext {
    pub field: Field,
    pub n: usize,
    pub orbit: Arc<Orbit>,
}

impl OpContext {
    pub fn new(field: Field, orbit: Arc<Orbit>) -> OpContext {
        OpContext { field, n: orbit.rank(), orbit }
    }

    fn same(&self, other: &OpContext) -> bool {
        self.field == other.field
            && self.n == other.n
            && (Arc::ptr_eq(&self.orbit, &other.orbit) || self.orbit == other.orbit)
    }

    /// Index of `w · i`.
    pub fn target(&self, i: u32, w: &SignedPerm) -> Option<u32> {
        self.orbit.act(w, i as usize).map(|k| k as u32)
    }
}

/// An element of `⊕_{i∈β} K[x]·1_i`, keyed by orbit index.
pub type PolyVec = BTreeMap<u32, PolyN>;

/// Serialisable form of one operator term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpRecord {
    pub source: u32,
    pub perm: SignedPerm,
    pub num: String,
    pub den: String,
}

/// `Σ (i, w, c)`, where `(i, w, c)` sends `f·1_i` to `(c · ^w f)·1_{w·i}`.
#[derive(Clone)]
pub struct TwistedOp {
    ctx: OpContext,
    terms: BTreeMap<(u32, SignedPerm), RatFunc>,
}

impl TwistedOp {
    pub fn zero(ctx: &OpContext) -> TwistedOp {
        TwistedOp { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// `Σ_i 1_i`.
    pub fn identity(ctx: &OpContext) -> TwistedOp {
        let mut op = TwistedOp::zero(ctx);
        for i in 0..ctx.orbit.len() as u32 {
            op.add_term(i, SignedPerm::identity(ctx.n), RatFunc::constant(ctx.n, ctx.field.one()));
        }
        op
    }

    /// `1_i`.
    pub fn projection(ctx: &OpContext, i: u32) -> TwistedOp {
        TwistedOp::term(ctx, i, SignedPerm::identity(ctx.n), RatFunc::constant(ctx.n, ctx.field.one()))
    }

    pub fn term(ctx: &OpContext, i: u32, w: SignedPerm, c: RatFunc) -> TwistedOp {
        let mut op = TwistedOp::zero(ctx);
        op.add_term(i, w, c);
        op
    }

    pub fn context(&self) -> &OpContext {
        &self.ctx
    }

    pub fn add_term(&mut self, i: u32, w: SignedPerm, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, w)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &SignedPerm, &RatFunc)> {
        self.terms.iter().map(|((i, w), c)| (*i, w, c))
    }

    pub fn coeff(&self, i: u32, w: &SignedPerm) -> Option<&RatFunc> {
        self.terms.get(&(i, *w))
    }

    fn check(&self, other: &TwistedOp) -> Result<(), SmashError> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(SmashError::OrbitMismatch)
        }
    }

    pub fn add(&self, other: &TwistedOp) -> Result<TwistedOp, SmashError> {
        self.check(other)?;
        let mut r = self.clone();
        for ((i, w), c) in &other.terms {
            r.add_term(*i, *w, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &TwistedOp) -> Result<TwistedOp, SmashError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TwistedOp {
        TwistedOp {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> TwistedOp {
        if s.is_zero() {
            return TwistedOp::zero(&self.ctx);
        }
        TwistedOp {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.scale(s))).collect(),
        }
    }

    /// `p ∘ self`: multiplies every output by the polynomial `p`.
    pub fn left_mul_poly(&self, p: &PolyN) -> TwistedOp {
        let mut r = TwistedOp::zero(&self.ctx);
        for ((i, w), c) in &self.terms {
            r.add_term(*i, *w, c.mul_poly(p));
        }
        r
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &TwistedOp) -> Result<TwistedOp, SmashError> {
        self.check(other)?;
        let mut by_source: BTreeMap<u32, Vec<(&SignedPerm, &RatFunc)>> = BTreeMap::new();
        for ((i, w), c) in &self.terms {
            by_source.entry(*i).or_default().push((w, c));
        }
        let mut r = TwistedOp::zero(&self.ctx);
        for ((i1, w1), c1) in &other.terms {
            let t = self.ctx.target(*i1, w1).ok_or(SmashError::OrbitMismatch)?;
            let Some(outer) = by_source.get(&t) else { continue };
            for (w2, c2) in outer {
                let c = c2.mul(&c1.act(w2));
                r.add_term(*i1, **w2 * *w1, c);
            }
        }
        Ok(r)
    }

    /// Applies the operator to `Σ f_i 1_i`.
    pub fn apply(&self, v: &PolyVec) -> Result<PolyVec, SmashError> {
        let mut acc: BTreeMap<u32, RatFunc> = BTreeMap::new();
        for ((i, w), c) in &self.terms {
            let Some(f) = v.get(i) else { continue };
            let t = self.ctx.target(*i, w).ok_or(SmashError::OrbitMismatch)?;
            let g = c.mul_poly(&f.act(w)?);
            let slot = acc.entry(t).or_insert_with(|| RatFunc::zero(self.ctx.n));
            *slot = slot.add(&g);
        }
        let mut out = PolyVec::new();
        for (t, g) in acc {
            if g.is_zero() {
                continue;
            }
            let p = g.as_polynomial().ok_or(SmashError::NonPolynomialImage)?;
            out.insert(t, p.clone());
        }
        Ok(out)
    }

    /// Terms `(i, w)` with `ℓ(w)` maximal, in key order.
    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(|(_, w)| w.length()).max()
    }

    pub fn records(&self) -> Vec<OpRecord> {
        self.terms
            .iter()
            .map(|((i, w), c)| OpRecord {
                source: *i,
                perm: *w,
                num: c.numerator().to_string(),
                den: c.denominator(self.ctx.field).to_string(),
            })
            .collect()
    }
}

impl PartialEq for TwistedOp {
    fn eq(&self, other: &TwistedOp) -> bool {
        self.ctx.same(&other.ctx) && self.terms == other.terms
    }
}

impl fmt::Display for TwistedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, w), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]*{w}*1_{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TwistedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Group, Quiver};
    use crate::smash::Root;

    const Q: Field = Field::Rational;

    fn ctx(n: usize) -> OpContext {
        let quiver = Quiver::new(&["a", "A", "b"], &[], &[("a", "A")]).unwrap();
        let seed: Vec<u16> = std::iter::once(0).chain(std::iter::repeat_n(2, n - 1)).collect();
        let orbit = Orbit::generate(quiver.theta_map(), &seed, Group::B);
        OpContext::new(Q, Arc::new(orbit))
    }

    fn one(n: usize) -> RatFunc {
        RatFunc::constant(n, Q.one())
    }

    #[test]
    fn identity_is_neutral() {
        let c = ctx(2);
        let r1 = SignedPerm::generator(2, 1).unwrap();
        let op = TwistedOp::term(&c, 0, r1, RatFunc::from_poly(PolyN::var(2, 1, Q)));
        let id = TwistedOp::identity(&c);
        assert_eq!(id.compose(&op).unwrap(), op);
        assert_eq!(op.compose(&id).unwrap(), op);
    }

    #[test]
    fn r0_terms_compose() {
        let c = ctx(1);
        let r0 = SignedPerm::generator(1, 0).unwrap();
        let i = c.orbit.index_of(&[0]).unwrap() as u32;
        let ri = c.target(i, &r0).unwrap();
        assert_ne!(i, ri);
        let a = TwistedOp::term(&c, i, r0, one(1));
        assert!(a.compose(&a).unwrap().is_zero());
        let b = TwistedOp::term(&c, ri, r0, one(1));
        assert_eq!(b.compose(&a).unwrap(), TwistedOp::projection(&c, i));
    }

    #[test]
    fn divided_difference_is_polynomial() {
        let quiver = Quiver::new(&["b"], &[], &[]).unwrap();
        let orbit = Orbit::generate(quiver.theta_map(), &[0, 0], Group::B);
        assert_eq!(orbit.len(), 1);
        let c = OpContext::new(Q, Arc::new(orbit));
        let r1 = SignedPerm::generator(2, 1).unwrap();
        let inv = RatFunc::with_roots(PolyN::one(2, Q), [(Root::Minus(1, 2), 1)]);
        let mut op = TwistedOp::term(&c, 0, r1, inv.clone());
        op.add_term(0, SignedPerm::identity(2), inv.neg());
        let v = PolyVec::from([(0, PolyN::var(2, 1, Q))]);
        let expected = PolyVec::from([(0, PolyN::one(2, Q).neg())]);
        assert_eq!(op.apply(&v).unwrap(), expected);
        let bad = TwistedOp::term(&c, 0, r1, inv);
        assert_eq!(bad.apply(&v), Err(SmashError::NonPolynomialImage));
    }

    #[test]
    fn not_equal_after_adding_projection() {
        let c = ctx(2);
        let op = TwistedOp::identity(&c).left_mul_poly(&PolyN::var(2, 2, Q));
        assert_ne!(op, op.add(&TwistedOp::projection(&c, 0)).unwrap());
        assert_eq!(op, op.clone());
    }

    #[test]
    fn mismatched_orbits() {
        let a = TwistedOp::identity(&ctx(2));
        let b = TwistedOp::identity(&ctx(1));
        assert_eq!(a.compose(&b), Err(SmashError::OrbitMismatch));
    }
}
