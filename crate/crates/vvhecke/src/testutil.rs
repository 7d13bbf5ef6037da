use std::sync::Arc;

use crate::field::Field;
use crate::quiver::{Group, Orbit, Params, Quiver};
use crate::vvalgebra::{Algebra, Mode};

pub const Q: Field = Field::Rational;

/// `a → b → c` with `θ` swapping `a` and `c`.
pub fn path_quiver() -> Quiver {
    Quiver::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")], &[("a", "c")]).unwrap()
}

/// `i → I` with `θ(i) = I`, plus a fixed vertex `k` joined to both by `i → k → I`.
pub fn pair_quiver() -> Quiver {
    Quiver::new(&["i", "I", "k"], &[("i", "I"), ("i", "k"), ("k", "I")], &[("i", "I")]).unwrap()
}

/// Fixed vertices `f`, `g` and a pair `h ↔ H`, with arrows `f → h`, `H → f`, `f ⇄ g`.
pub fn gamma_quiver() -> Quiver {
    Quiver::new(
        &["f", "g", "h", "H"],
        &[("f", "h"), ("H", "f"), ("f", "g"), ("g", "f")],
        &[("h", "H")],
    )
    .unwrap()
}

/// `γ_f = 3`, `γ_g = 0`, `λ_h = 1`, `λ_H = 2`.
pub fn gamma_params(field: Field) -> Params {
    Params {
        lambda: vec![0, 0, 1, 2],
        gamma: vec![field.from_i64(3), field.zero(), field.zero(), field.zero()],
    }
}

pub fn seed(q: &Quiver, names: &[&str]) -> Vec<u16> {
    names.iter().map(|s| q.vertex(s).unwrap() as u16).collect()
}

pub fn algebra(q: Quiver, params: Params, names: &[&str], mode: Mode, field: Field) -> Arc<Algebra> {
    let group = match mode {
        Mode::A => Group::S,
        Mode::B => Group::B,
    };
    let orbit = Orbit::generate(q.theta_map(), &seed(&q, names), group);
    Algebra::new(q, params, orbit, mode, field).unwrap()
}

pub fn zero_b(q: Quiver, names: &[&str]) -> Arc<Algebra> {
    let params = Params::zero(&q, Q);
    algebra(q, params, names, Mode::B, Q)
}

/// Two components: `a → A` with `θ(a) = A`, and `k ⇄ l` fixed by `θ`.
pub fn split_quiver() -> Quiver {
    Quiver::new(&["a", "A", "k", "l"], &[("a", "A"), ("k", "l"), ("l", "k")], &[("a", "A")]).unwrap()
}

pub fn split_partition(q: &Quiver) -> crate::quiver::Partition {
    crate::quiver::Partition::new(q, vec![1, 1, 2, 2]).unwrap()
}

/// `λ_a = 1`, `γ_k = 2`, others zero.
pub fn split_params(field: Field) -> Params {
    Params {
        lambda: vec![1, 0, 0, 0],
        gamma: vec![field.zero(), field.zero(), field.from_i64(2), field.zero()],
    }
}
