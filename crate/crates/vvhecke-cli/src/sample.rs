use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vvhecke::coxeter::SignedPerm;
use vvhecke::smash::Mono;
use vvhecke::vvalgebra::{Algebra, Element, PbwMonomial};

/// The generator for job `stream` of a run seeded with `seed`. Jobs draw from
/// separate streams, so results do not depend on scheduling.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform draws of PBW monomials of bounded `y`-degree.
pub struct Sampler {
    alg: Arc<Algebra>,
    group: Vec<SignedPerm>,
    exps: Vec<Mono>,
}

impl Sampler {
    pub fn new(alg: &Arc<Algebra>, max_ydeg: u32) -> Sampler {
        Sampler { alg: alg.clone(), group: alg.group_elements(), exps: Mono::up_to_degree(alg.rank(), max_ydeg) }
    }

    pub fn monomial(&self, rng: &mut ChaCha8Rng) -> PbwMonomial {
        let source = rng.gen_range(0..self.alg.orbit().len() as u32);
        self.monomial_from(rng, source)
    }

    pub fn monomial_from(&self, rng: &mut ChaCha8Rng, source: u32) -> PbwMonomial {
        let w = *self.group.choose(rng).expect("nonempty group");
        let exps = *self.exps.choose(rng).expect("degree 0 exists");
        PbwMonomial { source, w, exps }
    }

    /// A chain `m_1, …, m_k` with `m_j m_{j+1} ≠ 0` as idempotent patterns,
    /// i.e. `m_{j+1}` ends where `m_j` starts.
    pub fn chain(&self, rng: &mut ChaCha8Rng, k: usize) -> Vec<PbwMonomial> {
        let mut out: Vec<PbwMonomial> = Vec::with_capacity(k);
        let mut last = self.monomial(rng);
        out.push(last);
        while out.len() < k {
            let m = self.retarget(self.monomial(rng), last.source);
            out.push(m);
            last = m;
        }
        out
    }

    /// Replaces the source of `m` so that the monomial ends on tuple `target`.
    fn retarget(&self, m: PbwMonomial, target: u32) -> PbwMonomial {
        let source = self.alg.act(&m.w.inverse(), target);
        PbwMonomial { source, ..m }
    }

    /// A combination of one to three monomials with small integer coefficients.
    pub fn element(&self, rng: &mut ChaCha8Rng) -> Element {
        let mut e = Element::zero(&self.alg);
        for _ in 0..rng.gen_range(1..=3) {
            let c = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            e.add_term(self.monomial(rng), self.alg.scalar(c));
        }
        e
    }
}
