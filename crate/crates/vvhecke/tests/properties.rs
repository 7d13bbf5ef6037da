use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use vvhecke::coxeter::SignedPerm;
use vvhecke::field::{Field, Scalar};
use vvhecke::quiver::{
    classify_morita_b, classify_morita_d, profiles, Group, MoritaCaseB, MoritaCaseD, Orbit, Params,
    Partition, Quiver,
};
use vvhecke::smash::{Mono, PolyN, PolyVec, RatFunc, Root};
use vvhecke::vvalgebra::{Algebra, Element, Mode, PbwMonomial};

const Q: Field = Field::Rational;

fn scalar_in(field: Field) -> impl Strategy<Value = Scalar> {
    match field {
        Field::Rational => (-40i64..40, 1i64..12)
            .prop_map(|(n, d)| Q.from_i64(n) / Q.from_i64(d))
            .boxed(),
        Field::Prime(p) => (0..p as i64).prop_map(move |v| field.from_i64(v)).boxed(),
    }
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Q),
        Just(Field::prime(5).unwrap()),
        Just(Field::prime(17).unwrap()),
        Just(Field::prime(101).unwrap()),
    ]
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    field().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
}

proptest! {
    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, a.field().zero());
    }

    #[test]
    fn inverse_is_an_involution((a, _, _) in triple()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(inv.inv().unwrap(), a.clone());
        prop_assert!((&a * &inv).is_one());
    }

    #[test]
    fn rational_normal_form_is_unique(n in -60i64..60, d in 1i64..30, k in 1i64..9, m in -60i64..60, e in 1i64..30) {
        let x = Q.parse(&format!("{n}/{d}")).unwrap();
        let scaled = Q.parse(&format!("{}/{}", n * k, d * k)).unwrap();
        prop_assert_eq!(&x, &scaled);
        prop_assert_eq!(x.to_string(), scaled.to_string());
        let y = Q.parse(&format!("{m}/{e}")).unwrap();
        prop_assert_eq!(x == y, x.to_string() == y.to_string());
        prop_assert_eq!(x == y, n * e == m * d);
    }
}

/// Signed permutation of rank `n` from a permutation index and a sign mask.
fn signed_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
    (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), 0u32..(1 << n)).prop_map(
        |(perm, signs)| {
            let images: Vec<i32> = perm
                .iter()
                .enumerate()
                .map(|(k, &v)| if signs >> k & 1 == 1 { -v } else { v })
                .collect();
            SignedPerm::from_images(&images).unwrap()
        },
    )
}

fn ranked_perm(max: usize) -> impl Strategy<Value = SignedPerm> {
    (1..=max).prop_flat_map(signed_perm)
}

/// `#{i<j : w(i) > w(j)} + #{i≤j : w(-i) > w(j)}`.
fn inversions(w: &SignedPerm) -> usize {
    let n = w.rank() as i32;
    let mut l = 0;
    for i in 1..=n {
        for j in i..=n {
            l += usize::from(i < j && w.apply(i) > w.apply(j));
            l += usize::from(w.apply(-i) > w.apply(j));
        }
    }
    l
}

proptest! {
    #[test]
    fn exchange_condition(w in ranked_perm(6), a in 0usize..6) {
        let n = w.rank();
        let r = SignedPerm::generator(n, a % n).unwrap();
        let (l, lr) = (w.length(), (w * r).length());
        prop_assert!(lr == l + 1 || lr + 1 == l);
        let (l, rl) = (w.length(), (r * w).length());
        prop_assert!(rl == l + 1 || rl + 1 == l);
    }

    #[test]
    fn canonical_word_is_reduced(w in ranked_perm(6)) {
        let word = w.canonical_word();
        prop_assert_eq!(word.len(), w.length());
        prop_assert_eq!(word.len(), inversions(&w));
        prop_assert_eq!(SignedPerm::from_word(w.rank(), &word).unwrap(), w);
        prop_assert_eq!(w.r0_count(), word.iter().filter(|&&b| b == 0).count());
        prop_assert_eq!(w.inverse() * w, SignedPerm::identity(w.rank()));
    }

    #[test]
    fn embedding_is_an_injective_homomorphism(
        (u1, v1, u2, v2) in (1usize..4, 1usize..3)
            .prop_flat_map(|(a, b)| (signed_perm(a), signed_perm(a), signed_perm(b), signed_perm(b)))
    ) {
        let e = |x: SignedPerm, y: SignedPerm| SignedPerm::embed_blocks(&[x, y]);
        prop_assert_eq!(e(u1, u2) * e(v1, v2), e(u1 * v1, u2 * v2));
        prop_assert_eq!(e(u1, u2) == e(v1, v2), u1 == v1 && u2 == v2);
        let sizes = [u1.rank(), u2.rank()];
        prop_assert_eq!(e(u1, u2).split_blocks(&sizes), Some(vec![u1, u2]));
    }
}

/// Two components `a ↔ A` and `k ⇄ l`.
fn split_quiver() -> Quiver {
    Quiver::new(&["a", "A", "k", "l"], &[("a", "A"), ("k", "l"), ("l", "k")], &[("a", "A")]).unwrap()
}

fn seed_tuple(max: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0u16..4, 1..=max)
}

fn multinomial(sizes: &[usize]) -> usize {
    let fact = |m: usize| (1..=m).product::<usize>();
    fact(sizes.iter().sum()) / sizes.iter().map(|&m| fact(m)).product::<usize>()
}

fn tuple_set(o: &Orbit) -> BTreeSet<Vec<u16>> {
    o.tuples().iter().map(|t| t.to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_closure_is_idempotent(seed in seed_tuple(4), pick in any::<prop::sample::Index>(), signed in any::<bool>()) {
        let q = split_quiver();
        let group = if signed { Group::B } else { Group::S };
        let orbit = Orbit::generate(q.theta_map(), &seed, group);
        prop_assert!(orbit.is_closed());
        let other = orbit.tuple(pick.index(orbit.len())).to_vec();
        prop_assert_eq!(tuple_set(&Orbit::generate(q.theta_map(), &other, group)), tuple_set(&orbit));
    }

    #[test]
    fn profile_count_is_multinomial(seed in seed_tuple(4)) {
        let q = split_quiver();
        let orbit = Orbit::generate(q.theta_map(), &seed, Group::B);
        let partition = Partition::new(&q, vec![1, 1, 2, 2]).unwrap();
        let prof = profiles(&orbit, &partition).unwrap();
        prop_assert_eq!(prof.list.len(), multinomial(&prof.sizes));
        let covered: usize = prof.fibers.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, orbit.len());
    }
}

#[test]
fn quiver_symmetries() {
    let quivers = [
        split_quiver(),
        Quiver::new(&["i", "I", "k"], &[("i", "I"), ("i", "k"), ("k", "I")], &[("i", "I")]).unwrap(),
        Quiver::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")], &[("a", "c")]).unwrap(),
    ];
    let swap = [(1i8, 2usize), (1, 1)];
    let neg_swap = [(-1i8, 2usize), (-1, 1)];
    for q in &quivers {
        for field in [Q, Field::prime(7).unwrap()] {
            q.check_p_family(field).unwrap();
            for i in 0..q.len() {
                for j in 0..q.len() {
                    let qij = q.q_poly(i, j, field).unwrap();
                    assert_eq!(qij.substitute(&swap, 2), q.q_poly(j, i, field).unwrap());
                    assert_eq!(qij.substitute(&neg_swap, 2), qij);
                    assert_eq!(qij, q.q_poly(q.theta(j), q.theta(i), field).unwrap());
                }
            }
        }
    }
}

/// Case letter by explicit membership in `±q^{2ℤ}`, `±q^{2ℤ+1}` and `±p^{±1}q^{2ℤ}`.
fn membership(x: u64, q: u64, p: Option<u64>, m: u64) -> char {
    let mul = |a: u64, b: u64| a * b % m;
    let mut even = BTreeSet::new();
    let mut g = 1;
    while even.insert(g) {
        g = mul(g, mul(q, q));
    }
    let coset = |c: u64| -> BTreeSet<u64> {
        even.iter().flat_map(|&s| [mul(c, s), (m - mul(c, s)) % m]).collect()
    };
    if coset(1).contains(&x) {
        return 'a';
    }
    if coset(q).contains(&x) {
        return 'b';
    }
    let Some(p) = p else { return 'c' };
    let pinv = (1..m).find(|&v| mul(v, p) == 1).unwrap();
    if coset(p).contains(&x) || coset(pinv).contains(&x) {
        'c'
    } else {
        'd'
    }
}

fn morita_inputs() -> impl Strategy<Value = (u64, u64, u64, u64)> {
    prop::sample::select(vec![7u64, 11, 13, 17, 19, 23, 29])
        .prop_flat_map(|m| (Just(m), 1..m, 1..m, 1..m))
        .prop_filter("q² ≠ 1 and p² ≠ 1", |&(m, q, p, _)| q * q % m != 1 && p * p % m != 1)
}

proptest! {
    #[test]
    fn morita_b_agrees_with_membership((m, q, p, x) in morita_inputs()) {
        let f = Field::prime(m).unwrap();
        let s = |v: u64| f.from_i64(v as i64);
        let got = classify_morita_b(&s(x), &s(q), &s(p)).unwrap();
        let letter = match got.case {
            MoritaCaseB::A => 'a',
            MoritaCaseB::B => 'b',
            MoritaCaseB::C => 'c',
            MoritaCaseB::D => 'd',
        };
        prop_assert_eq!(letter, membership(x, q, Some(p), m));
        let order = (1..m).find(|&k| s(q).pow(2 * k as u32).is_one()).unwrap();
        prop_assert_eq!(got.b_equivalent_to_a, order % 2 == 1);
    }

    #[test]
    fn morita_d_agrees_with_membership((m, q, _, x) in morita_inputs()) {
        let f = Field::prime(m).unwrap();
        let s = |v: u64| f.from_i64(v as i64);
        let letter = match classify_morita_d(&s(x), &s(q)).unwrap().case {
            MoritaCaseD::A => 'a',
            MoritaCaseD::B => 'b',
            MoritaCaseD::C => 'c',
        };
        prop_assert_eq!(letter, membership(x, q, None, m));
    }
}

fn poly2() -> impl Strategy<Value = PolyN> {
    prop::collection::vec(((0u16..3, 0u16..3), -4i64..5), 1..4).prop_map(|terms| {
        PolyN::from_terms(2, terms.into_iter().map(|((a, b), c)| (Mono::from_exps(&[a, b]), Q.from_i64(c))))
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    let roots = Root::all(2);
    (poly2(), prop::collection::vec((prop::sample::select(roots), 0u32..3), 0..3))
        .prop_map(|(num, den)| RatFunc::with_roots(num, den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ratfunc_arithmetic_is_a_congruence(
        f in ratfunc(),
        g in ratfunc(),
        h in ratfunc(),
        w in signed_perm(2),
        divisor in prop::collection::vec(prop::sample::select(Root::all(2)), 1..3),
    ) {
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g).act(&w), f.act(&w).mul(&g.act(&w)));
        prop_assert_eq!(f.add(&g).act(&w), f.act(&w).add(&g.act(&w)));
        prop_assert!(f.sub(&f).is_zero());
        let d = divisor.iter().fold(RatFunc::constant(2, Q.from_i64(3)), |acc, r| acc.mul_poly(&r.to_poly(2, Q)));
        prop_assert_eq!(f.mul(&d).div(&d).unwrap(), f.clone());
        prop_assert_eq!(f.div(&d).unwrap().mul(&d), f.clone());
        let den = f.denominator(Q);
        prop_assert_eq!(RatFunc::new(f.numerator().clone(), &den).unwrap(), f);
    }
}

/// `i → I` with `θ(i) = I` and a fixed vertex `k` on `i → k → I`, in mode B.
fn pair_algebra(seed: &[&str], with_params: bool) -> Arc<Algebra> {
    let q = Quiver::new(&["i", "I", "k"], &[("i", "I"), ("i", "k"), ("k", "I")], &[("i", "I")]).unwrap();
    let seed: Vec<u16> = seed.iter().map(|s| q.vertex(s).unwrap() as u16).collect();
    let orbit = Orbit::generate(q.theta_map(), &seed, Group::B);
    let params = if with_params {
        Params { lambda: vec![1, 0, 0], gamma: vec![Q.zero(), Q.zero(), Q.from_i64(2)] }
    } else {
        Params::zero(&q, Q)
    };
    Algebra::new(q, params, orbit, Mode::B, Q).unwrap()
}

fn algebras() -> Vec<Arc<Algebra>> {
    vec![pair_algebra(&["i", "k"], false), pair_algebra(&["i", "k"], true), pair_algebra(&["k", "i", "I"], false)]
}

/// Index choices for a PBW monomial: group element, source tuple, exponents.
type Pick = (prop::sample::Index, prop::sample::Index, [u16; 3]);

fn pick() -> impl Strategy<Value = Pick> {
    (any::<prop::sample::Index>(), any::<prop::sample::Index>(), [0u16..2, 0u16..2, 0u16..2])
}

fn monomial(alg: &Algebra, (w, i, exps): &Pick, source: Option<u32>) -> PbwMonomial {
    let group = alg.group_elements();
    let n = alg.rank();
    PbwMonomial {
        source: source.unwrap_or_else(|| i.index(alg.orbit().len()) as u32),
        w: group[w.index(group.len())],
        exps: Mono::from_exps(&exps[..n]),
    }
}

/// `a·b·c` with each factor starting where the next one ends.
fn chain(alg: &Arc<Algebra>, picks: &[Pick; 3]) -> [Element; 3] {
    let c = monomial(alg, &picks[2], None);
    let b = monomial(alg, &picks[1], Some(c.target(alg)));
    let a = monomial(alg, &picks[0], Some(b.target(alg)));
    [a, b, c].map(|m| Element::monomial(alg, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pbw_round_trip(k in 0usize..3, p in pick()) {
        let alg = &algebras()[k];
        let m = monomial(alg, &p, None);
        let op = alg.monomial_op(&m).unwrap();
        prop_assert_eq!(alg.pbw_expand(&op).unwrap(), Element::monomial(alg, m));
    }

    #[test]
    fn products_are_associative_and_close(k in 0usize..3, picks in [pick(), pick(), pick()]) {
        let alg = &algebras()[k];
        let [a, b, c] = chain(alg, &picks);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.op().unwrap(), a.op().unwrap().compose(&b.op().unwrap()).unwrap());
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn operator_composition_matches_application(k in 0usize..3, picks in [pick(), pick(), pick()], deg in prop::collection::vec((0u16..3, 0u16..3, 0u16..3), 1..3)) {
        let alg = &algebras()[k];
        let [a, b, c] = chain(alg, &picks);
        let (a, b) = (a.add(&c).unwrap().op().unwrap(), b.op().unwrap());
        let n = alg.rank();
        let mut v = PolyVec::new();
        for (t, (x, y, z)) in deg.into_iter().enumerate() {
            let e = [x, y, z];
            v.insert((t % alg.orbit().len()) as u32, PolyN::monomial(n, Mono::from_exps(&e[..n]), Q.one()));
        }
        let lhs = a.compose(&b).unwrap().apply(&v).unwrap();
        let rhs = a.apply(&b.apply(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn grading_and_iota_are_multiplicative(picks in [pick(), pick(), pick()]) {
        let alg = &pair_algebra(&["i", "k"], false);
        let [a, b, _] = chain(alg, &picks);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.iota().unwrap(), a.iota().unwrap().mul(&b.iota().unwrap()).unwrap());
        if let (vvhecke::vvalgebra::Degree::Homogeneous(da), vvhecke::vvalgebra::Degree::Homogeneous(db)) = (a.degree(), b.degree()) {
            let want = vvhecke::vvalgebra::Degree::Homogeneous(da + db);
            prop_assert!(ab.is_zero() || ab.degree() == want, "{:?} vs {:?}", ab.degree(), want);
        }
    }

    #[test]
    fn psi0_free_monomials_form_a_subalgebra(k in 0usize..3, picks in [pick(), pick()]) {
        let alg = &algebras()[k];
        let unsigned = SignedPerm::all_unsigned(alg.rank());
        let strip = |m: PbwMonomial, p: &Pick| PbwMonomial { w: unsigned[p.0.index(unsigned.len())], ..m };
        let b = strip(monomial(alg, &picks[1], None), &picks[1]);
        let a = strip(monomial(alg, &picks[0], Some(b.target(alg))), &picks[0]);
        let (a, b) = (Element::monomial(alg, a), Element::monomial(alg, b));
        prop_assert!(a.is_psi0_free() && b.is_psi0_free());
        prop_assert!(a.mul(&b).unwrap().is_psi0_free());
    }
}

#[test]
fn generator_operators_are_triangular() {
    for alg in algebras() {
        for w in alg.group_elements() {
            let word = w.canonical_word();
            for i in 0..alg.orbit().len() as u32 {
                let op = alg.word_op(i, &word).unwrap();
                let top: Vec<_> = op.terms().filter(|(_, v, _)| v.length() >= w.length()).collect();
                assert_eq!(top.len(), 1, "{w} at {i}");
                assert_eq!(*top[0].1, w);
                assert_eq!(top[0].0, i);
            }
        }
    }
}
