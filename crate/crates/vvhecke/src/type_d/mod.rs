//! The type D algebra `W_β(Γ)` inside `V_β(Γ, 0, 0)`: `Ψ_0 ↦ ψ_0 ψ_1 ψ_0`,
//! the involution `ι`, the automorphism `π` and the splitting along components.

use std::sync::Arc;

use crate::coxeter::SignedPerm;
use crate::decomposition::{rho, DecompositionError, TensorElement, TensorStructure};
use crate::field::Scalar;
use crate::quiver::{CycWeight, Partition};
use crate::smash::{PolyN, RatFunc, Root};
use crate::vvalgebra::{
    relation_instances, Algebra, AlgebraError, Degree, Element, Expr, Letter, PbwMonomial,
    RelationInstance, Report,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeDError {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("operation requires lambda = gamma = 0 in mode B")]
    ParamsNotZero,
    #[error("element is not fixed by iota")]
    NotInvariant,
    #[error("component {0} carries no entry of the orbit")]
    ComponentEmpty(usize),
    #[error("the cyclotomic splitting needs at least two components")]
    DEqualsOne,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

fn require_zero(alg: &Algebra) -> Result<(), TypeDError> {
    if alg.params_zero() {
        Ok(())
    } else {
        Err(TypeDError::ParamsNotZero)
    }
}

/// An element of `V^ι`, identified with `W_β(Γ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WElement(Element);

impl WElement {
    pub fn new(x: Element) -> Result<WElement, TypeDError> {
        if x.iota()? == x {
            Ok(WElement(x))
        } else {
            Err(TypeDError::NotInvariant)
        }
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    pub fn mul(&self, other: &WElement) -> Result<WElement, TypeDError> {
        Ok(WElement(self.0.mul(&other.0)?))
    }

    pub fn pi(&self) -> Result<WElement, TypeDError> {
        Ok(WElement(pi_auto(&self.0)?))
    }
}

/// Generators of `W_β(Γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WGenerator {
    E(u32),
    Y(usize),
    /// `ψ_b` for `1 ≤ b < n`.
    Psi(usize),
    BigPsi0,
}

/// `Ψ_0 = ψ_0 ψ_1 ψ_0`, summed over the orbit.
fn big_psi0(alg: &Arc<Algebra>) -> Result<Element, TypeDError> {
    if alg.rank() < 2 {
        return Err(TypeDError::InvalidGenerator("Psi0 needs n >= 2".into()));
    }
    let (p0, p1) = (Element::psi(alg, 0)?, Element::psi(alg, 1)?);
    Ok(Element::product(alg, [&p0, &p1, &p0])?)
}

/// The image of a generator of `W_β(Γ)` in `V_β(Γ, 0, 0)`.
pub fn w_generator(alg: &Arc<Algebra>, g: WGenerator) -> Result<WElement, TypeDError> {
    require_zero(alg)?;
    let x = match g {
        WGenerator::E(i) if (i as usize) < alg.orbit().len() => Element::e(alg, i),
        WGenerator::E(i) => return Err(TypeDError::InvalidGenerator(format!("e({i})"))),
        WGenerator::Y(a) => Element::y(alg, a)?,
        WGenerator::Psi(0) => return Err(TypeDError::InvalidGenerator("psi0 is not in W".into())),
        WGenerator::Psi(b) => Element::psi(alg, b)?,
        WGenerator::BigPsi0 => big_psi0(alg)?,
    };
    WElement::new(x)
}

fn q_at(alg: &Algebra, u: usize, v: usize, a: (i8, usize), b: (i8, usize)) -> PolyN {
    alg.quiver()
        .q_poly(u, v, alg.field())
        .expect("vertices of the orbit")
        .substitute(&[a, b], alg.rank())
}

/// Every defining relation of `W_β(Γ)`, checked on the images in `V_β(Γ, 0, 0)`.
pub fn verify_w_relations(alg: &Arc<Algebra>) -> Result<Report, TypeDError> {
    require_zero(alg)?;
    let mut report = Report::default();
    let type_b = ["psi0", "braid4"];
    for inst in relation_instances(alg) {
        if !type_b.iter().any(|p| inst.relation.starts_with(p)) {
            report.check(alg, alg.as_ref(), &inst);
        }
    }
    let n = alg.rank();
    if n < 2 {
        return Ok(report);
    }
    let one = alg.field().one();
    let big = Letter::Op(big_psi0(alg)?.op()?);
    let s0 = SignedPerm::s0(n);
    let r1 = SignedPerm::generator(n, 1).expect("n >= 2");
    let quiver = alg.quiver();
    let term = |letters: Vec<Letter>| -> Expr { vec![(one.clone(), letters)] };
    let mut push = |relation: String, i: u32, lhs: Expr, rhs: Expr| {
        report.check(alg, alg.as_ref(), &RelationInstance { relation, tuple: Some(i), lhs, rhs });
    };
    for i in 0..alg.orbit().len() as u32 {
        let t = alg.tuple(i).to_vec();
        let (u, v) = (quiver.theta(t[0] as usize), t[1] as usize);
        let e = Letter::E(i);
        push(
            "psi0_e(i)D".into(),
            i,
            term(vec![big.clone(), e.clone()]),
            term(vec![Letter::E(alg.act(&s0, i)), big.clone()]),
        );
        for b in (1..n).filter(|&b| b != 2) {
            push(
                format!("psi0_psibD[b={b}]"),
                i,
                term(vec![big.clone(), Letter::Psi(b), e.clone()]),
                term(vec![Letter::Psi(b), big.clone(), e.clone()]),
            );
        }
        let linked = u == v;
        for a in 1..=2 {
            let ra = r1.apply(a as i32) as usize;
            let lhs = vec![
                (one.clone(), vec![big.clone(), Letter::Y(a), e.clone()]),
                (one.clone(), vec![Letter::Y(ra), big.clone(), e.clone()]),
            ];
            let rhs = if linked { term(vec![e.clone()]) } else { Vec::new() };
            let tag = if linked { "theta(i1)=i2" } else { "theta(i1)!=i2" };
            push(format!("psi0_y1D[a={a},{tag}]"), i, lhs, rhs);
        }
        for a in 3..=n {
            push(
                format!("psi0_yjD[a={a}]"),
                i,
                term(vec![big.clone(), Letter::Y(a), e.clone()]),
                term(vec![Letter::Y(a), big.clone(), e.clone()]),
            );
        }
        let q = q_at(alg, u, v, (-1, 1), (1, 2));
        let tag = if q.is_zero() { "Q=0" } else { "Q!=0" };
        push(
            format!("psi0squareD[{tag}]"),
            i,
            term(vec![big.clone(), big.clone(), e.clone()]),
            term(vec![Letter::Poly(q), e.clone()]),
        );
        if n >= 3 {
            let lhs = vec![
                (one.clone(), vec![big.clone(), Letter::Psi(2), big.clone(), e.clone()]),
                (-one.clone(), vec![Letter::Psi(2), big.clone(), Letter::Psi(2), e.clone()]),
            ];
            let (rhs, tag) = if u == t[2] as usize {
                let num = q_at(alg, u, v, (-1, 1), (1, 2)).sub(&q_at(alg, u, v, (1, 3), (1, 2)));
                let f = RatFunc::with_roots(num, [(Root::Plus(1, 3), 1)]);
                (term(vec![Letter::Rat(f), e.clone()]), "theta(i1)=i3")
            } else {
                (Vec::new(), "theta(i1)!=i3")
            };
            push(format!("braid3D[{tag}]"), i, lhs, rhs);
        }
    }
    for i in 0..alg.orbit().len() as u32 {
        let t = alg.tuple(i);
        let x = big_psi0(alg)?.mul(&Element::e(alg, i))?;
        let want = quiver.d_pair(quiver.theta(t[0] as usize), t[1] as usize);
        let ok = x.degree() == Degree::Homogeneous(want);
        report.push("deg_Psi0", alg.tuple_name(i), ok);
    }
    Ok(report)
}

/// `π(a) = ψ_0 a ψ_0`.
pub fn pi_auto(a: &Element) -> Result<Element, TypeDError> {
    let alg = a.algebra();
    require_zero(alg)?;
    let p0 = Element::psi(alg, 0)?;
    Ok(Element::product(alg, [&p0, a, &p0])?)
}

/// `a = plus + minus` with `plus ∈ V^ι`, `minus ∈ V^- = V^ι ψ_0`.
#[derive(Clone, Debug)]
pub struct Split {
    pub plus: WElement,
    pub minus: Element,
    /// `minus · ψ_0`, which lies in `V^ι`.
    pub minus_psi0: WElement,
}

pub fn fixed_point_split(a: &Element) -> Result<Split, TypeDError> {
    let alg = a.algebra();
    require_zero(alg)?;
    let plus = a.filter(|m| m.w.r0_count() % 2 == 0);
    let minus = a.filter(|m| m.w.r0_count() % 2 == 1);
    let minus_psi0 = minus.mul(&Element::psi(alg, 0)?)?;
    Ok(Split { plus: WElement::new(plus)?, minus, minus_psi0: WElement::new(minus_psi0)? })
}

/// The product of `x ⊗ π^ε` and `x' ⊗ π^{ε'}` in `W ⋊ ⟨π⟩`.
fn semidirect_mul(
    (x, e): (&Element, bool),
    (y, f): (&Element, bool),
) -> Result<(Element, bool), TypeDError> {
    let y = if e { pi_auto(y)? } else { y.clone() };
    Ok((x.mul(&y)?, e ^ f))
}

/// Multiplies split pairs with the semidirect law and compares with the product in `V`.
pub fn semidirect_check(alg: &Arc<Algebra>, pairs: &[(Element, Element)]) -> Result<Report, TypeDError> {
    require_zero(alg)?;
    let mut report = Report::default();
    if alg.rank() == 0 {
        return Ok(report);
    }
    let p0 = Element::psi(alg, 0)?;
    let one = Element::one(alg);
    report.push("psi0_square_one", "*", p0.mul(&p0)? == one);
    let (w, _) = semidirect_mul((&one, true), (&one, true))?;
    report.push("pi_pi_is_identity", "*", w == one);
    let mut law = true;
    let mut action = true;
    let mut iota_pi = true;
    for (a, b) in pairs {
        let (sa, sb) = (fixed_point_split(a)?, fixed_point_split(b)?);
        let parts_a = [(sa.plus.element(), false), (sa.minus_psi0.element(), true)];
        let parts_b = [(sb.plus.element(), false), (sb.minus_psi0.element(), true)];
        let mut total = Element::zero(alg);
        for pa in parts_a {
            for pb in parts_b {
                let (x, eps) = semidirect_mul(pa, pb)?;
                let x = if eps { x.mul(&p0)? } else { x };
                total = total.add(&x)?;
            }
        }
        law &= total == a.mul(b)?;
        action &= WElement::new(pi_auto(sb.plus.element())?).is_ok();
        iota_pi &= pi_auto(&a.iota()?)? == pi_auto(a)?.iota()?;
    }
    report.push("semidirect_law", format!("{} pairs", pairs.len()), law);
    report.push("pi_preserves_w", format!("{} pairs", pairs.len()), action);
    report.push("iota_pi_commute", format!("{} pairs", pairs.len()), iota_pi);
    Ok(report)
}

/// `ι² = id`, and `ι` computed from the `r_0`-parity of each PBW word agrees with
/// the substitution `ψ_0 ↦ -ψ_0` carried out letter by letter on operators.
pub fn iota_coherence(alg: &Arc<Algebra>, xs: &[Element]) -> Result<Report, TypeDError> {
    require_zero(alg)?;
    let mut report = Report::default();
    let mut involution = true;
    let mut sign_rule = true;
    for x in xs {
        let ix = x.iota()?;
        involution &= ix.iota()? == *x;
        let mut op = crate::smash::TwistedOp::zero(alg.context());
        for (m, c) in x.terms() {
            let mut acc = crate::smash::TwistedOp::projection(alg.context(), m.source);
            for &b in m.word().iter().rev() {
                let letter = alg.psi_op(b as usize)?;
                let letter = if b == 0 { letter.neg() } else { letter.clone() };
                acc = letter.compose(&acc).map_err(AlgebraError::from)?;
            }
            let y = PbwMonomial { source: m.target(alg), w: SignedPerm::identity(alg.rank()), exps: m.exps };
            acc = alg.monomial_op(&y)?.compose(&acc).map_err(AlgebraError::from)?;
            op = op.add(&acc.scale(c)).map_err(AlgebraError::from)?;
        }
        sign_rule &= alg.pbw_expand(&op)? == ix;
    }
    report.push("iota_involution", format!("{} elements", xs.len()), involution);
    report.push("iota_sign_rule", format!("{} elements", xs.len()), sign_rule);
    Ok(report)
}

/// An element `(π^{ε_1}, …, π^{ε_d})` of `C_2^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct C2Word(pub Vec<bool>);

impl C2Word {
    pub fn is_even(&self) -> bool {
        self.0.iter().filter(|&&e| e).count() % 2 == 0
    }

    /// All of `C_2^d`.
    pub fn all(d: usize) -> Vec<C2Word> {
        (0..1u32 << d).map(|m| C2Word((0..d).map(|j| m >> j & 1 == 1).collect())).collect()
    }

    /// The subgroup `C_2^{d-1}` of even words.
    pub fn even(d: usize) -> Vec<C2Word> {
        C2Word::all(d).into_iter().filter(C2Word::is_even).collect()
    }

    /// The parity of `ψ_0` in each factor of a tensor monomial.
    pub fn of_monomial(ms: &[PbwMonomial]) -> C2Word {
        C2Word(ms.iter().map(|m| m.w.r0_count() % 2 == 1).collect())
    }

    /// Applies `π` in each factor where the word has `π`.
    pub fn act(&self, x: &TensorElement) -> Result<TensorElement, TypeDError> {
        let factors = x.factors();
        let mut out = TensorElement::zero(factors);
        for (ms, c) in x.terms() {
            let mut parts = Vec::with_capacity(ms.len());
            for ((f, m), &e) in factors.iter().zip(ms).zip(&self.0) {
                let y = Element::monomial(f, *m);
                parts.push(if e { pi_auto(&y)? } else { y });
            }
            for (k, v) in TensorElement::pure(&parts).terms() {
                out.add_term(k.clone(), v * c);
            }
        }
        Ok(out)
    }
}

/// `ι^⊗`: the sign `(-1)^{total ψ_0 count}` on each tensor monomial.
pub fn iota_tensor(x: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(x.factors());
    for (ms, c) in x.terms() {
        let odd = ms.iter().map(|m| m.w.r0_count()).sum::<usize>() % 2 == 1;
        out.add_term(ms.clone(), if odd { -c } else { c.clone() });
    }
    out
}

fn unit_tensor(ts: &TensorStructure, j: usize, x: Element) -> TensorElement {
    let parts: Vec<Element> = ts
        .factors
        .iter()
        .enumerate()
        .map(|(k, f)| if k == j { x.clone() } else { Element::one(f) })
        .collect();
    TensorElement::pure(&parts)
}

fn power(alg: &Algebra, a: usize, negate: bool, e: u32) -> PolyN {
    let y = PolyN::var(alg.rank(), a, alg.field());
    let y = if negate { y.neg() } else { y };
    y.pow(e, alg.field())
}

/// Checks of the type D splitting along components: `ρ ∘ ι^⊗ = ι ∘ ρ`, the
/// even-subgroup description of the fixed points and, given a weight, the
/// `ξ`-conjugation moving `Λ̃`-generators to `Λ`-generators.
pub fn decompose_d(
    alg: &Arc<Algebra>,
    partition: &Partition,
    weight: Option<&CycWeight>,
    max_ydeg: u32,
) -> Result<Report, TypeDError> {
    require_zero(alg)?;
    let ts = rho(alg, partition)?;
    if let Some(j) = ts.sizes.iter().position(|&m| m == 0) {
        return Err(TypeDError::ComponentEmpty(j + 1));
    }
    let d = ts.factors.len();
    if weight.is_some() && d == 1 {
        return Err(TypeDError::DEqualsOne);
    }
    let mut report = Report::default();
    let mut commute = true;
    for (j, f) in ts.factors.iter().enumerate() {
        let mut gens: Vec<Element> = (0..f.orbit().len() as u32).map(|i| Element::e(f, i)).collect();
        gens.extend((1..=f.rank()).map(|a| Element::y(f, a)).collect::<Result<Vec<_>, _>>()?);
        gens.extend((0..f.rank()).map(|b| Element::psi(f, b)).collect::<Result<Vec<_>, _>>()?);
        for g in gens {
            let t = unit_tensor(&ts, j, g);
            commute &= ts.rho_expand(&iota_tensor(&t))? == ts.rho_expand(&t)?.iota()?;
        }
    }
    report.push("rho_iota", "generators", commute);
    let mut fixed = true;
    let mut count = 0usize;
    for ms in ts.tensor_monomials(max_ydeg) {
        let mut t = TensorElement::zero(&ts.factors);
        t.add_term(ms.clone(), alg.field().one());
        let even = C2Word::of_monomial(&ms).is_even();
        let image = ts.rho_expand(&t)?;
        fixed &= (iota_tensor(&t) == t) == even && (image.iota()? == image) == even;
        count += 1;
    }
    report.push("even_fixed_points", format!("{count} monomials"), fixed);
    report.push("even_subgroup_order", "*", C2Word::even(d).len() == 1 << (d - 1));
    if let Some(weight) = weight {
        let tilde = weight.tilde(alg.quiver());
        let quiver = alg.quiver();
        for &c in ts.corner() {
            let parts = ts.split_tuple(c).expect("corner tuple").to_vec();
            for j in 0..d {
                let b = ts.offsets[j] + 1;
                let v = alg.tuple(c)[b - 1] as usize;
                let e = tilde.0[v];
                let k = (j + 1) % d;
                let mut word = vec![false; d];
                word[j] = true;
                word[k] = true;
                let xi = C2Word(word);
                let fj = &ts.factors[j];
                let gen = Element::poly_at(fj, &power(fj, 1, false, e), parts[j]);
                let pieces: Vec<Element> = ts
                    .factors
                    .iter()
                    .enumerate()
                    .map(|(l, f)| if l == j { gen.clone() } else { Element::e(f, parts[l]) })
                    .collect();
                let moved = ts.rho_expand(&xi.act(&TensorElement::pure(&pieces))?)?;
                let mut target = parts.clone();
                for l in [j, k] {
                    let r0 = SignedPerm::generator(ts.sizes[l], 0).expect("n_j >= 1");
                    target[l] = ts.factors[l].act(&r0, parts[l]);
                }
                let ip = ts.concat_tuple(&target).expect("corner tuple");
                let want = Element::poly_at(alg, &power(alg, b, true, e), ip);
                let in_ideal = e == weight.0[v] || e == weight.0[quiver.theta(v)];
                let lands = alg.tuple(ip)[b - 1] as usize == quiver.theta(v);
                report.push(format!("xi_conjugation[b={b}]"), alg.tuple_name(c), moved == want && in_ideal && lands);
            }
        }
    }
    Ok(report)
}

/// `(a ± ι(a)) / 2`, the split by averaging; requires characteristic not 2.
pub fn average_split(a: &Element) -> Result<(Element, Element), TypeDError> {
    let alg = a.algebra();
    let half: Scalar = alg.scalar(2).inv().map_err(|_| TypeDError::InvalidGenerator("characteristic 2".into()))?;
    let ia = a.iota()?;
    Ok((a.add(&ia)?.scale(&half), a.sub(&ia)?.scale(&half)))
}
