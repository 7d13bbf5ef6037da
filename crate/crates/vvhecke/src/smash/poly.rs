//! Sparse multivariate polynomials over [`Scalar`] in graded lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coxeter::{SignedPerm, MAX_RANK};
use crate::field::{Field, Scalar};

use super::SmashError;

/// Exponent vector; compares in grlex order with `x1 > x2 > … > xn`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u16; MAX_RANK]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; MAX_RANK])
    }

    /// The variable `x_a`, `a` counted from 1.
    pub fn var(a: usize) -> Mono {
        let mut m = Mono::one();
        m.0[a - 1] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Mono {
        let mut m = Mono::one();
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, a: usize) -> u16 {
        self.0[a - 1]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for (x, y) in m.0.iter_mut().zip(other.0.iter()) {
            *x += *y;
        }
        m
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for (x, y) in m.0.iter_mut().zip(other.0.iter()) {
            *x -= *y;
        }
        m
    }

    /// All monomials in `n` variables of total degree at most `max`.
    pub fn up_to_degree(n: usize, max: u32) -> Vec<Mono> {
        let mut out = vec![Mono::one()];
        for a in 0..n {
            let mut next = Vec::new();
            for m in &out {
                for e in 0..=(max - m.degree()) {
                    let mut m = *m;
                    m.0[a] = e as u16;
                    next.push(m);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// The exponents of variables `offset+1 ..= offset+len` as a monomial in `len` variables.
    pub fn window(&self, offset: usize, len: usize) -> Mono {
        let mut m = Mono::one();
        m.0[..len].copy_from_slice(&self.0[offset..offset + len]);
        m
    }

    /// Shifts variables `x_a ↦ x_{a+offset}`.
    pub fn shift(&self, offset: usize) -> Mono {
        let mut m = Mono::one();
        for a in 0..MAX_RANK - offset {
            m.0[a + offset] = self.0[a];
        }
        m
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, var: &str, first: bool) -> fmt::Result {
        let mut first = first;
        for (a, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{var}{}", a + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Mono) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Mono) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        self.write(f, "x", true)
    }
}

/// Polynomial in `x_1, …, x_n` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyN {
    n: u8,
    terms: BTreeMap<Mono, Scalar>,
}

impl PolyN {
    pub fn zero(n: usize) -> PolyN {
        PolyN { n: n as u8, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> PolyN {
        let mut p = PolyN::zero(n);
        p.add_term(Mono::one(), c);
        p
    }

    pub fn one(n: usize, field: Field) -> PolyN {
        PolyN::constant(n, field.one())
    }

    /// `x_a`, `a` counted from 1.
    pub fn var(n: usize, a: usize, field: Field) -> PolyN {
        assert!(a >= 1 && a <= n, "variable x{a} outside 1..={n}");
        PolyN::monomial(n, Mono::var(a), field.one())
    }

    pub fn monomial(n: usize, m: Mono, c: Scalar) -> PolyN {
        let mut p = PolyN::zero(n);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Mono, Scalar)>) -> PolyN {
        let mut p = PolyN::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    /// Same polynomial viewed in a ring with `n` variables.
    pub fn with_nvars(mut self, n: usize) -> PolyN {
        self.n = n as u8;
        self
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

    /// Terms in increasing grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.values().next().map(|c| c.field())
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    /// The constant value, if the polynomial is constant (zero gives `None`).
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.len() {
            1 => self.terms.get(&Mono::one()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PolyN) -> PolyN {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn add_assign(&mut self, other: &PolyN) {
        self.n = self.n.max(other.n);
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub(&self, other: &PolyN) -> PolyN {
        let mut r = self.clone();
        r.n = r.n.max(other.n);
        for (m, c) in &other.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn neg(&self) -> PolyN {
        PolyN {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> PolyN {
        if s.is_zero() {
            return PolyN::zero(self.nvars());
        }
        PolyN {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, s: &Scalar) -> PolyN {
        if s.is_zero() {
            return PolyN::zero(self.nvars());
        }
        PolyN {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &PolyN) -> PolyN {
        let mut r = PolyN::zero(self.nvars().max(other.nvars()));
        if let Some(c) = other.as_constant() {
            return self.scale(c).with_nvars(r.nvars());
        }
        if let Some(c) = self.as_constant() {
            return other.scale(c).with_nvars(r.nvars());
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32, field: Field) -> PolyN {
        let mut acc = PolyN::one(self.nvars(), field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The Weyl group action `^w x_i = x_{w(i)}` with `x_{-j} = -x_j`.
    pub fn act(&self, w: &SignedPerm) -> Result<PolyN, SmashError> {
        if w.rank() < self.nvars() {
            return Err(SmashError::SizeMismatch(w.rank(), self.nvars()));
        }
        Ok(self.act_unchecked(w))
    }

    pub(crate) fn act_unchecked(&self, w: &SignedPerm) -> PolyN {
        if w.is_identity() {
            return self.clone();
        }
        let imgs = w.images();
        let mut r = PolyN::zero(self.nvars());
        for (m, c) in &self.terms {
            let mut nm = Mono::one();
            let mut negative = false;
            for (a, &v) in imgs.iter().enumerate() {
                let e = m.0[a];
                if e == 0 {
                    continue;
                }
                nm.0[v.unsigned_abs() as usize - 1] = e;
                if v < 0 && e % 2 == 1 {
                    negative = !negative;
                }
            }
            r.add_term(nm, if negative { -c } else { c.clone() });
        }
        r
    }

    /// Substitutes `x_a ↦ ± x_b` given as `(sign, b)` pairs for each variable of
    /// `self`, producing a polynomial in `n` variables.
    pub fn substitute(&self, images: &[(i8, usize)], n: usize) -> PolyN {
        let mut r = PolyN::zero(n);
        for (m, c) in &self.terms {
            let mut nm = Mono::one();
            let mut negative = false;
            for (a, &(s, b)) in images.iter().enumerate() {
                let e = m.0[a];
                if e == 0 {
                    continue;
                }
                nm.0[b - 1] += e;
                if s < 0 && e % 2 == 1 {
                    negative = !negative;
                }
            }
            r.add_term(nm, if negative { -c } else { c.clone() });
        }
        r
    }

    /// Shifts variables `x_a ↦ x_{a+offset}` into a ring with `n` variables.
    pub fn shift(&self, offset: usize, n: usize) -> PolyN {
        PolyN {
            n: n as u8,
            terms: self.terms.iter().map(|(m, c)| (m.shift(offset), c.clone())).collect(),
        }
    }

    /// Exact division; fails with `NotDivisible` when `g ∤ self`.
    pub fn exact_divide(&self, g: &PolyN) -> Result<PolyN, SmashError> {
        let (lm, lc) = g.leading().ok_or(SmashError::DivisionByZero)?;
        let lc_inv = lc.inv().map_err(|_| SmashError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut q = PolyN::zero(self.nvars().max(g.nvars()));
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Err(SmashError::NotDivisible);
            }
            let qm = m.div(lm);
            let qc = c * &lc_inv;
            rem = rem.sub(&g.mul_mono(&qm, &qc));
            q.add_term(qm, qc);
        }
        Ok(q)
    }

    /// Exact division by `x_a - s·x_b` (`s = ±1`) or by `x_a` (`b = None`).
    pub(crate) fn div_linear(&self, a: usize, b: Option<(usize, bool)>) -> Option<PolyN> {
        match b {
            None => {
                let mut r = PolyN::zero(self.nvars());
                for (m, c) in &self.terms {
                    if m.0[a - 1] == 0 {
                        return None;
                    }
                    let mut nm = *m;
                    nm.0[a - 1] -= 1;
                    r.terms.insert(nm, c.clone());
                }
                Some(r)
            }
            Some((b, minus)) => {
                let mut rem: BTreeMap<(u16, Mono), Scalar> = self
                    .terms
                    .iter()
                    .map(|(m, c)| ((m.0[a - 1], *m), c.clone()))
                    .collect();
                let mut q = PolyN::zero(self.nvars());
                while let Some(((k, m), c)) = rem.pop_last() {
                    if k == 0 {
                        return None;
                    }
                    let mut m1 = m;
                    m1.0[a - 1] -= 1;
                    let mut m2 = m1;
                    m2.0[b - 1] += 1;
                    // c·m = c·m1·(x_a ∓ x_b) ± c·m1·x_b
                    let carry = if minus { c.clone() } else { -&c };
                    q.add_term(m1, c);
                    let key = (k - 1, m2);
                    match rem.entry(key) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(carry);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            *o.get_mut() += &carry;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
                Some(q)
            }
        }
    }

    /// Text form with a chosen variable name, e.g. `3*x1^2*x2 - 1/2`.
    pub fn display_with<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { p: self, var }
    }

    /// Parses the text form produced by `Display` (variables `x1 … xn`).
    pub fn parse(s: &str, n: usize, field: Field) -> Result<PolyN, SmashError> {
        let bad = || SmashError::Parse(s.to_string());
        let mut p = PolyN::zero(n);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        if compact == "0" {
            return Ok(p);
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (k, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && k > 0 && !cur.ends_with('^') {
                pieces.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if ch == '-' && k == 0 {
                negative = true;
            } else if ch == '+' && k == 0 {
            } else {
                cur.push(ch);
            }
        }
        pieces.push((negative, cur));
        for (negative, body) in pieces {
            if body.is_empty() {
                return Err(bad());
            }
            let mut coeff = field.one();
            let mut mono = Mono::one();
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (var, exp) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u16>().map_err(|_| bad())?),
                        None => (rest, 1),
                    };
                    let a: usize = var.parse().map_err(|_| bad())?;
                    if a == 0 || a > n {
                        return Err(bad());
                    }
                    mono.0[a - 1] += exp;
                } else {
                    let c = field.parse(factor).map_err(|_| bad())?;
                    coeff = coeff * c;
                }
            }
            p.add_term(mono, if negative { -coeff } else { coeff });
        }
        Ok(p)
    }
}

pub struct PolyDisplay<'a> {
    p: &'a PolyN,
    var: &'a str,
}

fn write_coeff_abs(f: &mut fmt::Formatter<'_>, c: &Scalar) -> Result<bool, fmt::Error> {
    // Returns whether anything was written (i.e. the coefficient is not ±1).
    match c {
        Scalar::Rational(r) => {
            let a = num_traits::Signed::abs(r);
            if num_traits::One::is_one(&a) {
                Ok(false)
            } else {
                write!(f, "{}", Scalar::Rational(a))?;
                Ok(true)
            }
        }
        Scalar::Prime { value, .. } => {
            if *value == 1 {
                Ok(false)
            } else {
                write!(f, "{value}")?;
                Ok(true)
            }
        }
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c.is_negative_display();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let wrote = write_coeff_abs(f, c)?;
            if m.degree() == 0 {
                if !wrote {
                    write!(f, "1")?;
                }
            } else {
                m.write(f, self.var, !wrote)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_with("x"), f)
    }
}

impl fmt::Debug for PolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn x(a: usize) -> PolyN {
        PolyN::var(3, a, Q)
    }

    #[test]
    fn grlex_order() {
        assert!(Mono::var(1) > Mono::var(2));
        assert!(Mono::from_exps(&[0, 2]) > Mono::var(1));
        assert!(Mono::from_exps(&[1, 1]) > Mono::from_exps(&[0, 2]));
    }

    #[test]
    fn divided_differences() {
        let f = x(1).mul(&x(1)).sub(&x(2).mul(&x(2)));
        let g = x(1).sub(&x(2));
        assert_eq!(f.exact_divide(&g).unwrap(), x(1).add(&x(2)));
        let r1 = SignedPerm::generator(3, 1).unwrap();
        let dd = x(1).sub(&x(1).act(&r1).unwrap());
        assert_eq!(dd.exact_divide(&g).unwrap(), PolyN::one(3, Q));
        assert_eq!(x(1).exact_divide(&x(2)), Err(SmashError::NotDivisible));
    }

    #[test]
    fn action_examples() {
        let r0 = SignedPerm::generator(3, 0).unwrap();
        let r1 = SignedPerm::generator(3, 1).unwrap();
        assert_eq!(x(1).act(&r0).unwrap(), x(1).neg());
        let x1x2 = x(1).mul(&x(2));
        assert_eq!(x1x2.act(&r1).unwrap(), x1x2);
        let t2 = SignedPerm::t(3, 2);
        let x2sq = x(2).mul(&x(2));
        assert_eq!(x2sq.act(&t2).unwrap(), x2sq);
        assert_eq!(x(2).act(&t2).unwrap(), x(2).neg());
    }

    #[test]
    fn linear_division() {
        let f = x(1).mul(&x(1)).sub(&x(2).mul(&x(2)));
        assert_eq!(f.div_linear(1, Some((2, true))).unwrap(), x(1).add(&x(2)));
        assert_eq!(f.div_linear(1, Some((2, false))).unwrap(), x(1).sub(&x(2)));
        assert!(x(1).add(&x(3)).div_linear(1, Some((2, true))).is_none());
        assert_eq!(x(1).mul(&x(2)).div_linear(2, None).unwrap(), x(1));
    }

    #[test]
    fn text_form() {
        let half = Q.parse("1/2").unwrap();
        let p = x(1)
            .mul(&x(1))
            .mul(&x(2))
            .scale(&Q.from_i64(3))
            .sub(&PolyN::constant(3, half));
        assert_eq!(p.to_string(), "3*x1^2*x2 - 1/2");
        assert_eq!(PolyN::parse(&p.to_string(), 3, Q).unwrap(), p);
        assert_eq!(x(1).neg().to_string(), "-x1");
        assert_eq!(PolyN::zero(2).to_string(), "0");
    }
}
