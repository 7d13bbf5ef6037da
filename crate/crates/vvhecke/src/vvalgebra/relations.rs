use std::fmt;

use crate::coxeter::SignedPerm;
use crate::field::Scalar;
use crate::quiver::CycWeight;
use crate::smash::{OpContext, PolyN, RatFunc, Root, TwistedOp};

use super::{Algebra, AlgebraError, Element, Mode};

/// One factor of a word in an operator expression.
#[derive(Clone, Debug)]
pub enum Letter {
    E(u32),
    Y(usize),
    Psi(usize),
    /// Multiplication by a polynomial in `y`.
    Poly(PolyN),
    /// Multiplication by a rational function; only meaningful inside sums that
    /// end up in the algebra.
    Rat(RatFunc),
    Op(TwistedOp),
}

/// `Σ c · (l_1 l_2 ⋯ l_k)`.
pub type Expr = Vec<(Scalar, Vec<Letter>)>;

/// Realisation of relation letters as operators on some target.
pub trait LetterMap {
    fn target(&self) -> &OpContext;
    /// Image of the empty word.
    fn unit(&self) -> Result<TwistedOp, AlgebraError>;
    fn letter(&self, l: &Letter) -> Result<TwistedOp, AlgebraError>;
}

impl LetterMap for Algebra {
    fn target(&self) -> &OpContext {
        self.context()
    }

    fn unit(&self) -> Result<TwistedOp, AlgebraError> {
        Ok(TwistedOp::identity(self.context()))
    }

    fn letter(&self, l: &Letter) -> Result<TwistedOp, AlgebraError> {
        let ctx = self.context();
        Ok(match l {
            Letter::E(i) => TwistedOp::projection(ctx, *i),
            Letter::Y(a) => self.y_op(*a)?.clone(),
            Letter::Psi(b) => self.psi_op(*b)?.clone(),
            Letter::Poly(p) => TwistedOp::identity(ctx).left_mul_poly(p),
            Letter::Rat(f) => {
                let mut op = TwistedOp::zero(ctx);
                for i in 0..self.orbit().len() as u32 {
                    op.add_term(i, SignedPerm::identity(self.rank()), f.clone());
                }
                op
            }
            Letter::Op(op) => op.clone(),
        })
    }
}

/// The operator of an expression; products compose left to right.
pub fn eval_expr(map: &dyn LetterMap, expr: &Expr) -> Result<TwistedOp, AlgebraError> {
    let mut acc = TwistedOp::zero(map.target());
    for (c, word) in expr {
        let mut letters = word.iter().rev();
        let mut op = match letters.next() {
            Some(l) => map.letter(l)?,
            None => map.unit()?,
        };
        for l in letters {
            op = map.letter(l)?.compose(&op)?;
        }
        acc = acc.add(&op.scale(c))?;
    }
    Ok(acc)
}

/// One instance `lhs = rhs` of a defining relation; `tuple` is `None` for
/// relations that do not depend on a tuple.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub relation: String,
    pub tuple: Option<u32>,
    pub lhs: Expr,
    pub rhs: Expr,
}

/// Outcome of one relation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub relation: String,
    pub tuple: String,
    pub pass: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn push(&mut self, relation: impl Into<String>, tuple: impl Into<String>, pass: bool) {
        self.records.push(CheckRecord {
            relation: relation.into(),
            tuple: tuple.into(),
            pass,
            detail: None,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// Number of records whose relation name starts with `prefix`.
    pub fn count(&self, prefix: &str) -> usize {
        self.records.iter().filter(|r| r.relation.starts_with(prefix)).count()
    }

    /// Evaluates a relation instance through `map`. Consecutive instances with
    /// the same name and tuple are merged into one record.
    pub fn check(&mut self, source: &Algebra, map: &dyn LetterMap, inst: &RelationInstance) {
        let outcome = eval_expr(map, &inst.lhs).and_then(|l| Ok(l.sub(&eval_expr(map, &inst.rhs)?)?));
        let (pass, detail) = match outcome {
            Ok(d) if d.is_zero() => (true, None),
            Ok(d) => (false, Some(format!("difference {d}"))),
            Err(e) => (false, Some(e.to_string())),
        };
        let tuple = inst.tuple.map_or_else(|| "*".to_string(), |i| source.tuple_name(i));
        if let Some(last) = self.records.last_mut() {
            if last.relation == inst.relation && last.tuple == tuple {
                last.pass &= pass;
                if last.detail.is_none() {
                    last.detail = detail;
                }
                return;
            }
        }
        self.records.push(CheckRecord { relation: inst.relation.clone(), tuple, pass, detail });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            write!(f, "{status} {} ({})", r.relation, r.tuple)?;
            if let Some(d) = &r.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn one(alg: &Algebra) -> Scalar {
    alg.field().one()
}

fn term(alg: &Algebra, letters: Vec<Letter>) -> Expr {
    vec![(one(alg), letters)]
}

fn zero() -> Expr {
    Vec::new()
}

/// `Q_{uv}` evaluated at `(±y_a, ±y_b)`.
fn q_at(alg: &Algebra, u: usize, v: usize, a: (i8, usize), b: (i8, usize)) -> PolyN {
    alg.quiver()
        .q_poly(u, v, alg.field())
        .expect("vertices of the orbit")
        .substitute(&[a, b], alg.rank())
}

fn y_pow(alg: &Algebra, a: usize, sign: i8, e: u32) -> PolyN {
    let f = alg.field();
    let y = PolyN::var(alg.rank(), a, f);
    let y = if sign < 0 { y.neg() } else { y };
    y.pow(e, f)
}

struct Sink<'a> {
    alg: &'a Algebra,
    out: Vec<RelationInstance>,
}

impl Sink<'_> {
    fn push(&mut self, relation: String, i: u32, lhs: Expr, rhs: Expr) {
        self.out.push(RelationInstance { relation, tuple: Some(i), lhs, rhs });
    }
}

/// Every defining relation instance on every tuple of the orbit.
pub fn relation_instances(alg: &Algebra) -> Vec<RelationInstance> {
    let unit = (0..alg.orbit().len() as u32).map(|i| (one(alg), vec![Letter::E(i)])).collect();
    let mut sink = Sink {
        alg,
        out: vec![RelationInstance {
            relation: "idempotents[sum]".into(),
            tuple: None,
            lhs: unit,
            rhs: vec![(one(alg), Vec::new())],
        }],
    };
    for i in 0..alg.orbit().len() as u32 {
        type_a_relations(&mut sink, i);
        if alg.mode() == Mode::B {
            type_b_relations(&mut sink, i);
        }
    }
    sink.out
}

/// Checks every defining relation on every tuple of the orbit.
pub fn verify_relations(alg: &Algebra) -> Report {
    verify_relations_under(alg, alg)
}

/// Checks the relations of `source` with letters realised by `map`.
pub fn verify_relations_under(source: &Algebra, map: &dyn LetterMap) -> Report {
    let mut report = Report::default();
    for inst in relation_instances(source) {
        report.check(source, map, &inst);
    }
    report
}

fn type_a_relations(sink: &mut Sink<'_>, i: u32) {
    let alg = sink.alg;
    let n = alg.rank();
    let t = alg.tuple(i).to_vec();
    for j in 0..alg.orbit().len() as u32 {
        let rhs = if i == j { term(alg, vec![Letter::E(i)]) } else { zero() };
        sink.push("idempotents[orthogonal]".into(), i, term(alg, vec![Letter::E(i), Letter::E(j)]), rhs);
    }
    for a in 1..=n {
        sink.push(
            format!("idempotents[y{a}e]"),
            i,
            term(alg, vec![Letter::Y(a), Letter::E(i)]),
            term(alg, vec![Letter::E(i), Letter::Y(a)]),
        );
        for b in a + 1..=n {
            sink.push(
                format!("idempotents[y{a}y{b}]"),
                i,
                term(alg, vec![Letter::Y(a), Letter::Y(b), Letter::E(i)]),
                term(alg, vec![Letter::Y(b), Letter::Y(a), Letter::E(i)]),
            );
        }
    }
    for a in 1..n {
        let r = SignedPerm::generator(n, a).expect("a < n");
        sink.push(
            format!("psia_e(i)[a={a}]"),
            i,
            term(alg, vec![Letter::Psi(a), Letter::E(i)]),
            term(alg, vec![Letter::E(alg.act(&r, i)), Letter::Psi(a)]),
        );
        for b in 1..=n {
            let rb = r.apply(b as i32) as usize;
            let lhs = vec![
                (one(alg), vec![Letter::Psi(a), Letter::Y(b), Letter::E(i)]),
                (-one(alg), vec![Letter::Y(rb), Letter::Psi(a), Letter::E(i)]),
            ];
            let equal = t[a - 1] == t[a];
            let rhs = if equal && b == a {
                vec![(-one(alg), vec![Letter::E(i)])]
            } else if equal && b == a + 1 {
                term(alg, vec![Letter::E(i)])
            } else {
                zero()
            };
            sink.push(format!("psib_yj[a={a},b={b}]"), i, lhs, rhs);
        }
        for b in a + 2..n {
            sink.push(
                format!("psia_psib[a={a},b={b}]"),
                i,
                term(alg, vec![Letter::Psi(a), Letter::Psi(b), Letter::E(i)]),
                term(alg, vec![Letter::Psi(b), Letter::Psi(a), Letter::E(i)]),
            );
        }
        let q = q_at(alg, t[a - 1] as usize, t[a] as usize, (1, a), (1, a + 1));
        sink.push(
            format!("psia2[a={a}]"),
            i,
            term(alg, vec![Letter::Psi(a), Letter::Psi(a), Letter::E(i)]),
            term(alg, vec![Letter::Poly(q), Letter::E(i)]),
        );
    }
    for b in 1..n.saturating_sub(1) {
        let lhs = vec![
            (one(alg), vec![Letter::Psi(b + 1), Letter::Psi(b), Letter::Psi(b + 1), Letter::E(i)]),
            (-one(alg), vec![Letter::Psi(b), Letter::Psi(b + 1), Letter::Psi(b), Letter::E(i)]),
        ];
        let rhs = if t[b - 1] == t[b + 1] {
            let (u, v) = (t[b - 1] as usize, t[b] as usize);
            let num = q_at(alg, u, v, (1, b), (1, b + 1)).sub(&q_at(alg, u, v, (1, b + 2), (1, b + 1)));
            let f = RatFunc::with_roots(num, [(Root::Minus(b as u8, b as u8 + 2), 1)]);
            term(alg, vec![Letter::Rat(f), Letter::E(i)])
        } else {
            zero()
        };
        sink.push(format!("psi_tresse3[b={b}]"), i, lhs, rhs);
    }
}

fn type_b_relations(sink: &mut Sink<'_>, i: u32) {
    let alg = sink.alg;
    let n = alg.rank();
    if n == 0 {
        return;
    }
    let t = alg.tuple(i).to_vec();
    let quiver = alg.quiver();
    let params = alg.params();
    let i1 = t[0] as usize;
    let g1 = params.gamma[i1].clone();
    let r0 = SignedPerm::generator(n, 0).expect("n >= 1");
    sink.push(
        "psi0_e(i)".into(),
        i,
        term(alg, vec![Letter::Psi(0), Letter::E(i)]),
        term(alg, vec![Letter::E(alg.act(&r0, i)), Letter::Psi(0)]),
    );
    for b in 2..n {
        sink.push(
            format!("psi0_psib[b={b}]"),
            i,
            term(alg, vec![Letter::Psi(0), Letter::Psi(b), Letter::E(i)]),
            term(alg, vec![Letter::Psi(b), Letter::Psi(0), Letter::E(i)]),
        );
    }
    sink.push(
        "psi0_y1".into(),
        i,
        vec![
            (one(alg), vec![Letter::Psi(0), Letter::Y(1), Letter::E(i)]),
            (one(alg), vec![Letter::Y(1), Letter::Psi(0), Letter::E(i)]),
        ],
        vec![(alg.scalar(2) * &g1, vec![Letter::E(i)])],
    );
    for a in 2..=n {
        sink.push(
            format!("psi0_yj[a={a}]"),
            i,
            term(alg, vec![Letter::Psi(0), Letter::Y(a), Letter::E(i)]),
            term(alg, vec![Letter::Y(a), Letter::Psi(0), Letter::E(i)]),
        );
    }
    let sign = |e: u32| if e % 2 == 1 { -one(alg) } else { one(alg) };
    let lam_theta = params.lambda[quiver.theta(i1)];
    let rhs = if g1.is_zero() {
        let d = params.d_vertex(quiver, i1) as u32;
        vec![(sign(lam_theta), vec![Letter::Poly(y_pow(alg, 1, 1, d)), Letter::E(i)])]
    } else {
        zero()
    };
    sink.push(
        "psi0square".into(),
        i,
        term(alg, vec![Letter::Psi(0), Letter::Psi(0), Letter::E(i)]),
        rhs,
    );
    if n < 2 {
        return;
    }
    let i2 = t[1] as usize;
    let g2 = params.gamma[i2].clone();
    let tag = format!(
        "braid4[g1{},g2{}]",
        if g1.is_zero() { "=0" } else { "!=0" },
        if g2.is_zero() { "=0" } else { "!=0" }
    );
    let lhs = vec![
        (one(alg), vec![Letter::Psi(0), Letter::Psi(1), Letter::Psi(0), Letter::Psi(1), Letter::E(i)]),
        (-one(alg), vec![Letter::Psi(1), Letter::Psi(0), Letter::Psi(1), Letter::Psi(0), Letter::E(i)]),
    ];
    let rhs = if g1.is_zero() && quiver.theta(i1) == i2 {
        let d = params.d_vertex(quiver, i1) as u32;
        let num = y_pow(alg, 1, -1, d).sub(&y_pow(alg, 2, 1, d));
        let f = RatFunc::with_roots(num, [(Root::Plus(1, 2), 1)]);
        vec![(sign(lam_theta), vec![Letter::Rat(f), Letter::Psi(1), Letter::E(i)])]
    } else if g2.is_zero() {
        zero()
    } else {
        let num = q_at(alg, i2, i1, (1, 1), (-1, 2)).sub(&q_at(alg, i2, i1, (1, 1), (1, 2)));
        let f = RatFunc::with_roots(num.scale(&g2), [(Root::X(1), 1), (Root::X(2), 1)]);
        vec![
            (one(alg), vec![Letter::Rat(f.clone()), Letter::Y(1), Letter::Psi(0), Letter::E(i)]),
            (-g1.clone(), vec![Letter::Rat(f), Letter::E(i)]),
        ]
    };
    sink.push(tag, i, lhs, rhs);
}

/// `ψ_0 y_1^{Λ_{i_1}} e(i) ψ_0 = (-y_1)^{Λ_{i_1}} e(r_0·i)` for every `i`, as element identities.
pub fn cyclo_identity_checks(
    alg: &std::sync::Arc<Algebra>,
    weight: &CycWeight,
) -> Result<Report, AlgebraError> {
    if !alg.params_zero() {
        return Err(AlgebraError::ParamsNotZero);
    }
    let n = alg.rank();
    let mut report = Report::default();
    if n == 0 {
        return Ok(report);
    }
    let r0 = SignedPerm::generator(n, 0).expect("n >= 1");
    let psi0 = Element::psi(alg, 0)?;
    for i in 0..alg.orbit().len() as u32 {
        let e = weight.0[alg.tuple(i)[0] as usize];
        let mid = Element::poly_at(alg, &y_pow(alg, 1, 1, e), i);
        let lhs = Element::product(alg, [&psi0, &mid, &psi0])?;
        let rhs = Element::poly_at(alg, &y_pow(alg, 1, -1, e), alg.act(&r0, i));
        report.push("cyclo_psi0_conjugate", alg.tuple_name(i), lhs == rhs);
    }
    Ok(report)
}
