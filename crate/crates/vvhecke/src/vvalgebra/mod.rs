//! The algebras `H_α(Γ)` (mode A) and `V_β(Γ,λ,γ)` (mode B), realised on
//! `K[x,β]` through the polynomial representation.

mod element;
mod relations;

pub use element::{Degree, Element, PbwMonomial};
pub use relations::{
    cyclo_identity_checks, eval_expr, relation_instances, verify_relations, verify_relations_under,
    CheckRecord, Expr, Letter, LetterMap, RelationInstance, Report,
};

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::coxeter::SignedPerm;
use crate::field::{Field, Scalar};
use crate::quiver::{Group, Orbit, Params, Quiver, QuiverError};
use crate::smash::{OpContext, PolyN, RatFunc, Root, SmashError, TwistedOp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("operator is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("elements belong to different algebras")]
    DescriptorMismatch,
    #[error("operation requires lambda = gamma = 0 in mode B")]
    ParamsNotZero,
    #[error("orbit group {0:?} does not match the algebra mode")]
    GroupMismatch(Group),
    #[error("orbit is not closed under its group")]
    OrbitNotClosed,
    #[error("unknown tuple {0}")]
    UnknownTuple(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Smash(#[from] SmashError),
}

/// Type A (`ψ_1..ψ_{n-1}`) or type B (adds `ψ_0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

/// Descriptor of `H_α(Γ)` or `V_β(Γ,λ,γ)` with memoised generator operators.
pub struct Algebra {
    quiver: Quiver,
    params: Params,
    mode: Mode,
    ctx: OpContext,
    y_ops: Vec<TwistedOp>,
    psi_ops: Vec<Option<TwistedOp>>,
    words: RwLock<HashMap<(u32, Vec<u8>), TwistedOp>>,
    leads: RwLock<HashMap<(u32, SignedPerm), RatFunc>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("mode", &self.mode)
            .field("n", &self.ctx.n)
            .field("orbit", &self.ctx.orbit.len())
            .finish()
    }
}

impl Algebra {
    pub fn new(
        quiver: Quiver,
        params: Params,
        orbit: Orbit,
        mode: Mode,
        field: Field,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        params.validate(&quiver)?;
        let expected = match mode {
            Mode::A => Group::S,
            Mode::B => Group::B,
        };
        if orbit.group() != expected {
            return Err(AlgebraError::GroupMismatch(orbit.group()));
        }
        if !orbit.is_closed() {
            return Err(AlgebraError::OrbitNotClosed);
        }
        let ctx = OpContext::new(field, Arc::new(orbit));
        let n = ctx.n;
        let y_ops = (1..=n)
            .map(|a| TwistedOp::identity(&ctx).left_mul_poly(&PolyN::var(n, a, field)))
            .collect();
        let mut alg = Algebra {
            quiver,
            params,
            mode,
            ctx,
            y_ops,
            psi_ops: Vec::new(),
            words: RwLock::new(HashMap::new()),
            leads: RwLock::new(HashMap::new()),
        };
        let mut psi_ops = vec![None; n.max(1)];
        for (b, slot) in psi_ops.iter_mut().enumerate() {
            if b == 0 && (mode == Mode::A || n == 0) {
                continue;
            }
            let mut op = TwistedOp::zero(&alg.ctx);
            for i in 0..alg.ctx.orbit.len() as u32 {
                op = op.add(&alg.psi_at(b, i)?)?;
            }
            *slot = Some(op);
        }
        alg.psi_ops = psi_ops;
        Ok(Arc::new(alg))
    }

    /// Mode B with all parameters zero, the setting of the type D constructions.
    pub fn new_zero_params(
        quiver: Quiver,
        orbit: Orbit,
        field: Field,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        let params = Params::zero(&quiver, field);
        Algebra::new(quiver, params, orbit, Mode::B, field)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn field(&self) -> Field {
        self.ctx.field
    }

    pub fn rank(&self) -> usize {
        self.ctx.n
    }

    pub fn orbit(&self) -> &Arc<Orbit> {
        &self.ctx.orbit
    }

    pub fn context(&self) -> &OpContext {
        &self.ctx
    }

    pub fn params_zero(&self) -> bool {
        self.mode == Mode::B && self.params.is_zero()
    }

    pub fn tuple(&self, i: u32) -> &[u16] {
        self.ctx.orbit.tuple(i as usize)
    }

    pub fn tuple_name(&self, i: u32) -> String {
        let names: Vec<&str> =
            self.tuple(i).iter().map(|&v| self.quiver.name(v as usize)).collect();
        names.join(",")
    }

    /// Orbit index of a tuple given by vertex names.
    pub fn tuple_index(&self, names: &[&str]) -> Result<u32, AlgebraError> {
        let mut t = Vec::with_capacity(names.len());
        for s in names {
            t.push(self.quiver.vertex(s)? as u16);
        }
        self.ctx
            .orbit
            .index_of(&t)
            .map(|k| k as u32)
            .ok_or_else(|| AlgebraError::UnknownTuple(names.join(",")))
    }

    /// Index of `w · i`.
    pub fn act(&self, w: &SignedPerm, i: u32) -> u32 {
        self.ctx.target(i, w).expect("orbit is closed")
    }

    pub fn group_elements(&self) -> Vec<SignedPerm> {
        match self.mode {
            Mode::A => SignedPerm::all_unsigned(self.rank()),
            Mode::B => SignedPerm::all(self.rank()),
        }
    }

    fn check_letter(&self, b: usize) -> Result<(), AlgebraError> {
        let n = self.rank();
        let ok = if b == 0 { self.mode == Mode::B && n >= 1 } else { b < n };
        if ok {
            Ok(())
        } else {
            Err(AlgebraError::InvalidGenerator(format!("psi{b}")))
        }
    }

    /// The operator of `ψ_b e(i)`.
    pub fn psi_at(&self, b: usize, i: u32) -> Result<TwistedOp, AlgebraError> {
        self.check_letter(b)?;
        let n = self.rank();
        let field = self.field();
        let t = self.tuple(i);
        let ctx = &self.ctx;
        let id = SignedPerm::identity(n);
        let r = SignedPerm::generator(n, b).expect("checked letter");
        let mut op = TwistedOp::zero(ctx);
        if b == 0 {
            let v = t[0] as usize;
            let gamma = &self.params.gamma[v];
            let alpha = self.params.alpha_poly(&self.quiver, v, field).substitute(&[(1, 1)], n);
            let g_over_x = RatFunc::with_roots(PolyN::constant(n, gamma.clone()), [(Root::X(1), 1)]);
            op.add_term(i, id, g_over_x.clone());
            op.add_term(i, r, RatFunc::from_poly(alpha).sub(&g_over_x));
        } else {
            let (u, v) = (t[b - 1] as usize, t[b] as usize);
            if u == v {
                let inv = RatFunc::with_roots(PolyN::one(n, field), [(Root::Minus(b as u8, b as u8 + 1), 1)]);
                op.add_term(i, r, inv.clone());
                op.add_term(i, id, inv.neg());
            }
            let p = self.quiver.p_poly(u, v, field)?.substitute(&[(1, b + 1), (1, b)], n);
            op.add_term(i, r, RatFunc::from_poly(p));
        }
        Ok(op)
    }

    /// The operator of `Σ_i y_a e(i)`.
    pub fn y_op(&self, a: usize) -> Result<&TwistedOp, AlgebraError> {
        if a == 0 || a > self.rank() {
            return Err(AlgebraError::InvalidGenerator(format!("y{a}")));
        }
        Ok(&self.y_ops[a - 1])
    }

    /// The operator of `Σ_i ψ_b e(i)`.
    pub fn psi_op(&self, b: usize) -> Result<&TwistedOp, AlgebraError> {
        self.check_letter(b)?;
        Ok(self.psi_ops[b].as_ref().expect("built for valid letters"))
    }

    /// The operator of `ψ_{a_1} ⋯ ψ_{a_k} e(i)`, memoised on every suffix.
    pub fn word_op(&self, i: u32, word: &[u8]) -> Result<TwistedOp, AlgebraError> {
        let key = (i, word.to_vec());
        if let Some(op) = self.words.read().expect("memo lock").get(&key) {
            return Ok(op.clone());
        }
        let op = match word.split_first() {
            None => TwistedOp::projection(&self.ctx, i),
            Some((&b, rest)) => self.psi_op(b as usize)?.compose(&self.word_op(i, rest)?)?,
        };
        self.words.write().expect("memo lock").insert(key, op.clone());
        Ok(op)
    }

    /// The operator of `y^a ψ_w e(i)` for a PBW monomial.
    pub fn monomial_op(&self, m: &PbwMonomial) -> Result<TwistedOp, AlgebraError> {
        let op = self.word_op(m.source, &m.w.canonical_word())?;
        if m.exps.degree() == 0 {
            return Ok(op);
        }
        let x = PolyN::monomial(self.rank(), m.exps, self.field().one());
        Ok(op.left_mul_poly(&x))
    }

    /// Coefficient of `w` in the operator of `ψ_w e(i)`, which is nonzero.
    fn leading(&self, i: u32, w: &SignedPerm) -> Result<RatFunc, AlgebraError> {
        if let Some(c) = self.leads.read().expect("memo lock").get(&(i, *w)) {
            return Ok(c.clone());
        }
        let op = self.word_op(i, &w.canonical_word())?;
        let c = op
            .coeff(i, w)
            .cloned()
            .ok_or_else(|| AlgebraError::NotInAlgebra(format!("vanishing leading term at {w}")))?;
        self.leads.write().expect("memo lock").insert((i, *w), c.clone());
        Ok(c)
    }

    /// Reads off the PBW expansion of an operator by triangular extraction.
    pub fn pbw_expand(self: &Arc<Self>, op: &TwistedOp) -> Result<Element, AlgebraError> {
        let n = self.rank();
        let mut rest = op.clone();
        let mut out = Element::zero(self);
        while !rest.is_zero() {
            let (i, w) = rest
                .terms()
                .map(|(i, w, _)| (i, *w))
                .max_by(|(ia, wa), (ib, wb)| {
                    wa.length()
                        .cmp(&wb.length())
                        .then_with(|| wb.canonical_word().cmp(&wa.canonical_word()))
                        .then_with(|| ib.cmp(ia))
                })
                .expect("nonzero operator");
            if self.mode == Mode::A && !w.is_unsigned() {
                return Err(AlgebraError::NotInAlgebra(format!("signed term {w} in mode A")));
            }
            let c = rest.coeff(i, &w).expect("selected term").clone();
            let lead = self.leading(i, &w)?;
            let p = c.div(&lead)?;
            let p = p.as_polynomial().ok_or_else(|| {
                AlgebraError::NotInAlgebra(format!("coefficient {p} at {w} on {}", self.tuple_name(i)))
            })?;
            for (m, s) in p.terms() {
                out.add_term(PbwMonomial { exps: *m, w, source: i }, s.clone());
            }
            let sub = self.word_op(i, &w.canonical_word())?.left_mul_poly(&p.clone().with_nvars(n));
            rest = rest.sub(&sub)?;
            if rest.coeff(i, &w).is_some() {
                return Err(AlgebraError::NotInAlgebra("extraction did not clear its slot".into()));
            }
        }
        Ok(out)
    }

    /// `deg ψ_b e(i)`.
    pub fn letter_degree(&self, b: usize, i: u32) -> i64 {
        let t = self.tuple(i);
        if b == 0 {
            self.params.d_vertex(&self.quiver, t[0] as usize)
        } else {
            self.quiver.d_pair(t[b - 1] as usize, t[b] as usize)
        }
    }

    /// Degree of `ψ_{a_1} ⋯ ψ_{a_k} e(i)`, each letter read against the tuple it acts on.
    pub fn word_degree(&self, i: u32, word: &[u8]) -> i64 {
        let n = self.rank();
        let mut cur = i;
        let mut deg = 0;
        for &b in word.iter().rev() {
            deg += self.letter_degree(b as usize, cur);
            cur = self.act(&SignedPerm::generator(n, b as usize).expect("valid letter"), cur);
        }
        deg
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        self.field().from_i64(v)
    }
}
