use std::collections::BTreeSet;

use vvhecke::coxeter::{normal_form_words, SignedPerm};

use crate::report::Cases;

const LIMIT: usize = 6;

/// Coefficients of `∏_{i=1}^n (1 + t + ⋯ + t^{2i-1})`.
fn poincare(n: usize) -> Vec<u64> {
    let mut p = vec![1u64];
    for i in 1..=n {
        let mut next = vec![0u64; p.len() + 2 * i - 1];
        for (k, &c) in p.iter().enumerate() {
            for s in 0..2 * i {
                next[k + s] += c;
            }
        }
        p = next;
    }
    p
}

/// Normal-form enumeration, length distribution and block embeddings for every
/// rank up to `max_rank`.
pub fn run(max_rank: usize) -> Result<Cases, String> {
    if max_rank == 0 || max_rank > LIMIT {
        return Err(format!("max rank must lie in 1..={LIMIT}"));
    }
    let mut cases = Cases::default();
    for n in 1..=max_rank {
        let words = normal_form_words(n);
        let order = (1..=n as u64).product::<u64>() << n;
        let mut seen = BTreeSet::new();
        let mut counts = vec![0u64; n * n + 1];
        let mut reduced = true;
        for w in &words {
            let g = SignedPerm::from_word(n, w).map_err(|e| e.to_string())?;
            reduced &= g.length() == w.len() && g.canonical_word() == *w;
            counts[w.len()] += 1;
            seen.insert(g);
        }
        cases.record(
            format!("B{n}/normal_form_count"),
            words.len() as u64 == order && seen.len() as u64 == order,
            Some(format!("{} words, {} distinct, expected {order}", words.len(), seen.len())),
        );
        cases.record(format!("B{n}/normal_form_reduced"), reduced, None);
        cases.record(
            format!("B{n}/poincare"),
            counts == poincare(n),
            Some(format!("length counts {counts:?}")),
        );
    }
    for n1 in 1..max_rank {
        for n2 in 1..=max_rank - n1 {
            let (g1, g2) = (SignedPerm::all(n1), SignedPerm::all(n2));
            let id1 = SignedPerm::identity(n1);
            let id2 = SignedPerm::identity(n2);
            let mut additive = true;
            let mut words_reduced = true;
            for w1 in &g1 {
                for w2 in &g2 {
                    let img = SignedPerm::embed_blocks(&[*w1, *w2]);
                    let left = SignedPerm::embed_blocks(&[*w1, id2]);
                    let right = SignedPerm::embed_blocks(&[id1, *w2]);
                    additive &= img.length() == left.length() + right.length() && left * right == img;
                    let mut word = SignedPerm::embed_word(0, &w1.canonical_word());
                    word.extend(SignedPerm::embed_word(n1, &w2.canonical_word()));
                    let from_word = SignedPerm::from_word(n1 + n2, &word).map_err(|e| e.to_string())?;
                    words_reduced &= from_word == img && word.len() == img.length();
                }
            }
            cases.record(format!("embed[{n1},{n2}]/length_additive"), additive, None);
            cases.record(format!("embed[{n1},{n2}]/words_reduced"), words_reduced, None);
        }
    }
    Ok(cases)
}
