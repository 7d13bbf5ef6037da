//! Rational functions whose denominators are products of `B_n` root forms.
//!
//! Every coefficient produced by the polynomial realisation has a denominator
//! built from `x_a`, `x_a - x_b` and `x_a + x_b` (`a < b`), and this set is
//! stable under the signed permutation action up to sign. Keeping denominators
//! factored makes the reduced form canonical without a general multivariate gcd:
//! a root factor is cancelled exactly when it divides the numerator, and
//! distinct roots are pairwise coprime irreducibles.

use std::collections::BTreeMap;
use std::fmt;

use crate::coxeter::SignedPerm;
use crate::field::{Field, Scalar};

use super::poly::PolyN;
use super::SmashError;

/// A monic linear form `x_a`, `x_a - x_b` or `x_a + x_b` with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Root {
    X(u8),
    Minus(u8, u8),
    Plus(u8, u8),
}

impl Root {
    /// `x_a - x_b` normalised to a root times a sign (`true` = negated).
    pub fn difference(a: usize, b: usize) -> (Root, bool) {
        assert_ne!(a, b);
        if a < b {
            (Root::Minus(a as u8, b as u8), false)
        } else {
            (Root::Minus(b as u8, a as u8), true)
        }
    }

    pub fn sum(a: usize, b: usize) -> Root {
        assert_ne!(a, b);
        Root::Plus(a.min(b) as u8, a.max(b) as u8)
    }

    pub fn to_poly(&self, n: usize, field: Field) -> PolyN {
        match *self {
            Root::X(a) => PolyN::var(n, a as usize, field),
            Root::Minus(a, b) => {
                PolyN::var(n, a as usize, field).sub(&PolyN::var(n, b as usize, field))
            }
            Root::Plus(a, b) => {
                PolyN::var(n, a as usize, field).add(&PolyN::var(n, b as usize, field))
            }
        }
    }

    /// `^w(root) = ± root'`; the flag is `true` when the sign is negative.
    pub fn act(&self, w: &SignedPerm) -> (Root, bool) {
        let img = |a: u8| {
            let v = w.apply(a as i32);
            (v < 0, v.unsigned_abs() as usize)
        };
        match *self {
            Root::X(a) => {
                let (neg, c) = img(a);
                (Root::X(c as u8), neg)
            }
            Root::Minus(a, b) | Root::Plus(a, b) => {
                let (na, ca) = img(a);
                let (nb, cb) = img(b);
                let plus = matches!(self, Root::Plus(..));
                // s_a x_ca ± s_b x_cb
                let same = (na == nb) != plus;
                if same {
                    // ±(x_ca - x_cb)
                    let (r, flip) = Root::difference(ca, cb);
                    (r, flip != na)
                } else {
                    (Root::sum(ca, cb), na)
                }
            }
        }
    }

    fn divide(&self, p: &PolyN) -> Option<PolyN> {
        match *self {
            Root::X(a) => p.div_linear(a as usize, None),
            Root::Minus(a, b) => p.div_linear(a as usize, Some((b as usize, true))),
            Root::Plus(a, b) => p.div_linear(a as usize, Some((b as usize, false))),
        }
    }

    /// All roots in rank `n`, in a fixed order.
    pub fn all(n: usize) -> Vec<Root> {
        let mut v: Vec<Root> = (1..=n).map(|a| Root::X(a as u8)).collect();
        for a in 1..=n {
            for b in a + 1..=n {
                v.push(Root::Minus(a as u8, b as u8));
                v.push(Root::Plus(a as u8, b as u8));
            }
        }
        v
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::X(a) => write!(f, "x{a}"),
            Root::Minus(a, b) => write!(f, "(x{a} - x{b})"),
            Root::Plus(a, b) => write!(f, "(x{a} + x{b})"),
        }
    }
}

/// Factors `p` as `c · ∏ roots`; `None` if `p` is not of that shape.
pub fn factor_roots(p: &PolyN, n: usize) -> Option<(Scalar, BTreeMap<Root, u32>)> {
    let mut rest = p.clone();
    let mut roots = BTreeMap::new();
    if rest.is_zero() {
        return None;
    }
    'outer: while rest.degree()? > 0 {
        for r in Root::all(n) {
            if let Some(q) = r.divide(&rest) {
                rest = q;
                *roots.entry(r).or_insert(0) += 1;
                continue 'outer;
            }
        }
        return None;
    }
    Some((rest.as_constant()?.clone(), roots))
}

/// `num / ∏ den`, with no root of `den` dividing `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: PolyN,
    den: BTreeMap<Root, u32>,
}

impl RatFunc {
    pub fn zero(n: usize) -> RatFunc {
        RatFunc { num: PolyN::zero(n), den: BTreeMap::new() }
    }

    pub fn from_poly(p: PolyN) -> RatFunc {
        RatFunc { num: p, den: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> RatFunc {
        RatFunc::from_poly(PolyN::constant(n, c))
    }

    /// `num / ∏ roots`, reduced.
    pub fn with_roots(num: PolyN, roots: impl IntoIterator<Item = (Root, u32)>) -> RatFunc {
        let mut den = BTreeMap::new();
        for (r, e) in roots {
            if e > 0 {
                *den.entry(r).or_insert(0) += e;
            }
        }
        let mut f = RatFunc { num, den };
        f.reduce();
        f
    }

    /// `num / den` for a denominator that factors into roots.
    pub fn new(num: PolyN, den: &PolyN) -> Result<RatFunc, SmashError> {
        let n = num.nvars().max(den.nvars());
        if den.is_zero() {
            return Err(SmashError::DivisionByZero);
        }
        let (c, roots) = factor_roots(den, n).ok_or(SmashError::UnsupportedDenominator)?;
        let c = c.inv().map_err(|_| SmashError::DivisionByZero)?;
        Ok(RatFunc::with_roots(num.scale(&c), roots))
    }

    pub fn numerator(&self) -> &PolyN {
        &self.num
    }

    pub fn denominator_roots(&self) -> &BTreeMap<Root, u32> {
        &self.den
    }

    /// The denominator expanded as a monic polynomial.
    pub fn denominator(&self, field: Field) -> PolyN {
        let n = self.num.nvars();
        let mut d = PolyN::one(n, field);
        for (r, e) in &self.den {
            d = d.mul(&r.to_poly(n, field).pow(*e, field));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&PolyN> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let roots: Vec<Root> = self.den.keys().copied().collect();
        for r in roots {
            while let Some(e) = self.den.get(&r).copied() {
                match r.divide(&self.num) {
                    Some(q) => {
                        self.num = q;
                        if e == 1 {
                            self.den.remove(&r);
                        } else {
                            self.den.insert(r, e - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    fn lift(&self, target: &BTreeMap<Root, u32>, field: Field) -> PolyN {
        let n = self.num.nvars();
        let mut p = self.num.clone();
        for (r, &e) in target {
            let have = self.den.get(r).copied().unwrap_or(0);
            if e > have {
                p = p.mul(&r.to_poly(n, field).pow(e - have, field));
            }
        }
        p
    }

    fn combine(&self, other: &RatFunc, negate: bool) -> RatFunc {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let field = self.num.field().or(other.num.field()).expect("nonzero operands");
        if self.den == other.den {
            let num = if negate { self.num.sub(&other.num) } else { self.num.add(&other.num) };
            let mut f = RatFunc { num, den: self.den.clone() };
            f.reduce();
            return f;
        }
        let mut lcm = self.den.clone();
        for (r, &e) in &other.den {
            let slot = lcm.entry(*r).or_insert(0);
            *slot = (*slot).max(e);
        }
        let a = self.lift(&lcm, field);
        let b = other.lift(&lcm, field);
        let num = if negate { a.sub(&b) } else { a.add(&b) };
        let mut f = RatFunc { num, den: lcm };
        f.reduce();
        f
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.combine(other, true)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> RatFunc {
        if s.is_zero() {
            return RatFunc::zero(self.num.nvars());
        }
        RatFunc { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.num.nvars().max(other.num.nvars()));
        }
        let num = self.num.mul(&other.num);
        if other.den.is_empty() && self.den.is_empty() {
            return RatFunc { num, den: BTreeMap::new() };
        }
        let mut den = self.den.clone();
        for (r, e) in &other.den {
            *den.entry(*r).or_insert(0) += e;
        }
        let mut f = RatFunc { num, den };
        f.reduce();
        f
    }

    pub fn mul_poly(&self, p: &PolyN) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    /// Division by a rational function whose numerator factors into roots.
    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, SmashError> {
        if other.is_zero() {
            return Err(SmashError::DivisionByZero);
        }
        let n = self.num.nvars().max(other.num.nvars());
        let (c, roots) =
            factor_roots(&other.num, n).ok_or(SmashError::UnsupportedDenominator)?;
        let c = c.inv().map_err(|_| SmashError::DivisionByZero)?;
        let field = c.field();
        let mut num = self.num.scale(&c);
        for (r, e) in &other.den {
            num = num.mul(&r.to_poly(n, field).pow(*e, field));
        }
        let mut den = self.den.clone();
        for (r, e) in roots {
            *den.entry(r).or_insert(0) += e;
        }
        let mut f = RatFunc { num, den };
        f.reduce();
        Ok(f)
    }

    /// `^w f`.
    /// Shifts variables `x_a ↦ x_{a+offset}` into a ring with `n` variables.
    pub fn shift(&self, offset: usize, n: usize) -> RatFunc {
        let k = offset as u8;
        let den = self
            .den
            .iter()
            .map(|(r, &e)| {
                let r = match *r {
                    Root::X(a) => Root::X(a + k),
                    Root::Minus(a, b) => Root::Minus(a + k, b + k),
                    Root::Plus(a, b) => Root::Plus(a + k, b + k),
                };
                (r, e)
            })
            .collect();
        RatFunc { num: self.num.shift(offset, n), den }
    }

    pub fn act(&self, w: &SignedPerm) -> RatFunc {
        if w.is_identity() {
            return self.clone();
        }
        let mut num = self.num.act_unchecked(w);
        let mut den = BTreeMap::new();
        let mut negative = false;
        for (r, e) in &self.den {
            let (r2, neg) = r.act(w);
            if neg && e % 2 == 1 {
                negative = !negative;
            }
            *den.entry(r2).or_insert(0) += e;
        }
        if negative {
            num = num.neg();
        }
        RatFunc { num, den }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (k, (r, e)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{r}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
