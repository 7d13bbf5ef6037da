//! Weyl groups `S_n ⊂ D_n ⊂ B_n` realised as signed permutations.
//!
//! Generators are `r_0 = (1,-1)` and `r_a = (a,a+1)(-a,-a-1)`. Composition is
//! right to left, `(u ∘ v)(i) = u(v(i))`, and a word `[a_1, …, a_k]` denotes
//! `r_{a_1} ∘ ⋯ ∘ r_{a_k}`.

use std::fmt;
use std::ops::Mul;

/// Largest rank supported by the fixed-size representation.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("rank mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("rank {0} exceeds the supported maximum {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("{0:?} is not a signed permutation")]
    NotSignedPermutation(Vec<i32>),
    #[error("generator r_{0} does not exist in rank {1}")]
    BadGenerator(usize, usize),
    #[error("profile {0:?} has entries outside 1..=d")]
    BadProfile(Vec<u8>),
}

/// Element of `B_n`, stored by its images of `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    n: u8,
    img: [i8; MAX_RANK],
}

impl SignedPerm {
    pub fn identity(n: usize) -> SignedPerm {
        assert!(n <= MAX_RANK, "rank {n} too large");
        let mut img = [0i8; MAX_RANK];
        for (k, v) in img.iter_mut().enumerate().take(n) {
            *v = k as i8 + 1;
        }
        SignedPerm { n: n as u8, img }
    }

    /// `r_a`, with `a = 0` the sign change of `1`.
    pub fn generator(n: usize, a: usize) -> Result<SignedPerm, CoxeterError> {
        if n == 0 || a >= n {
            return Err(CoxeterError::BadGenerator(a, n));
        }
        let mut w = SignedPerm::identity(n);
        if a == 0 {
            w.img[0] = -1;
        } else {
            w.img.swap(a - 1, a);
        }
        Ok(w)
    }

    /// `t_a = r_{a-1} ⋯ r_1 r_0 r_1 ⋯ r_{a-1}`, the sign change of `a`.
    pub fn t(n: usize, a: usize) -> SignedPerm {
        assert!(a >= 1 && a <= n);
        let mut w = SignedPerm::identity(n);
        w.img[a - 1] = -(a as i8);
        w
    }

    /// `s_0 = r_0 r_1 r_0`.
    pub fn s0(n: usize) -> SignedPerm {
        let r0 = SignedPerm::generator(n, 0).expect("n ≥ 2");
        let r1 = SignedPerm::generator(n, 1).expect("n ≥ 2");
        r0 * r1 * r0
    }

    pub fn from_images(images: &[i32]) -> Result<SignedPerm, CoxeterError> {
        let n = images.len();
        if n > MAX_RANK {
            return Err(CoxeterError::RankTooLarge(n));
        }
        let mut seen = [false; MAX_RANK];
        let mut img = [0i8; MAX_RANK];
        for (k, &v) in images.iter().enumerate() {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return Err(CoxeterError::NotSignedPermutation(images.to_vec()));
            }
            seen[a - 1] = true;
            img[k] = v as i8;
        }
        Ok(SignedPerm { n: n as u8, img })
    }

    /// Evaluates `r_{a_1} ∘ ⋯ ∘ r_{a_k}`.
    pub fn from_word(n: usize, word: &[u8]) -> Result<SignedPerm, CoxeterError> {
        let mut w = SignedPerm::identity(n);
        for &a in word.iter().rev() {
            w = SignedPerm::generator(n, a as usize)? * w;
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn images(&self) -> &[i8] {
        &self.img[..self.n as usize]
    }

    /// Image of a signed letter `i ∈ {±1, …, ±n}`.
    #[inline]
    pub fn apply(&self, i: i32) -> i32 {
        if i > 0 {
            self.img[i as usize - 1] as i32
        } else {
            -(self.img[(-i) as usize - 1] as i32)
        }
    }

    pub fn compose(&self, v: &SignedPerm) -> Result<SignedPerm, CoxeterError> {
        if self.n != v.n {
            return Err(CoxeterError::SizeMismatch(self.rank(), v.rank()));
        }
        let mut img = [0i8; MAX_RANK];
        for (k, slot) in img.iter_mut().enumerate().take(self.rank()) {
            *slot = self.apply(v.img[k] as i32) as i8;
        }
        Ok(SignedPerm { n: self.n, img })
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut img = [0i8; MAX_RANK];
        for k in 0..self.rank() {
            let v = self.img[k];
            let a = v.unsigned_abs() as usize;
            img[a - 1] = if v > 0 { k as i8 + 1 } else { -(k as i8 + 1) };
        }
        SignedPerm { n: self.n, img }
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(k, &v)| v == k as i8 + 1)
    }

    /// Coxeter length via `#{i<j : π(i)>π(j)} + #{i≤j : π(-i)>π(j)}`.
    pub fn length(&self) -> usize {
        let n = self.rank();
        let mut l = 0;
        for i in 0..n {
            for j in i..n {
                let (pi, pj) = (self.img[i], self.img[j]);
                if i < j && pi > pj {
                    l += 1;
                }
                if -pi > pj {
                    l += 1;
                }
            }
        }
        l
    }

    /// The normal form `u_n ⋯ u_1` with `u_i ∈ {t_a^ε r_a ⋯ r_{i-1}}`.
    pub fn canonical_word(&self) -> Vec<u8> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = *self;
        for i in (1..=self.rank()).rev() {
            let v = w.img[i - 1];
            let a = v.unsigned_abs() as usize;
            let mut u = Vec::new();
            if v < 0 {
                u.extend((1..a).rev().map(|b| b as u8));
                u.push(0);
                u.extend((1..a).map(|b| b as u8));
            }
            u.extend((a..i).map(|b| b as u8));
            if !u.is_empty() {
                let uw = SignedPerm::from_word(self.rank(), &u).expect("valid letters");
                w = uw.inverse() * w;
                word.extend_from_slice(&u);
            }
        }
        word
    }

    /// Number of `r_0` letters in any reduced expression.
    pub fn r0_count(&self) -> usize {
        self.images().iter().filter(|&&v| v < 0).count()
    }

    /// Membership in `S_n` (no sign changes).
    pub fn is_unsigned(&self) -> bool {
        self.r0_count() == 0
    }

    /// Membership in `D_n`: an even number of negative images.
    pub fn in_dn(&self) -> bool {
        self.r0_count().is_multiple_of(2)
    }

    /// Direct product `B_{n_1} × ⋯ × B_{n_d} → B_n` placing blocks left to right.
    pub fn embed_blocks(ws: &[SignedPerm]) -> SignedPerm {
        let n: usize = ws.iter().map(|w| w.rank()).sum();
        assert!(n <= MAX_RANK, "rank {n} too large");
        let mut img = [0i8; MAX_RANK];
        let mut k = 0usize;
        for w in ws {
            for (a, &v) in w.images().iter().enumerate() {
                img[k + a] = v.signum() * (v.abs() + k as i8);
            }
            k += w.rank();
        }
        SignedPerm { n: n as u8, img }
    }

    /// Inverse of [`SignedPerm::embed_blocks`]; `None` when `self` mixes blocks.
    pub fn split_blocks(&self, sizes: &[usize]) -> Option<Vec<SignedPerm>> {
        if sizes.iter().sum::<usize>() != self.rank() {
            return None;
        }
        let mut out = Vec::with_capacity(sizes.len());
        let mut k = 0usize;
        for &m in sizes {
            let mut imgs = Vec::with_capacity(m);
            for a in 0..m {
                let v = self.img[k + a] as i32;
                let abs = v.abs() - k as i32;
                if abs < 1 || abs > m as i32 {
                    return None;
                }
                imgs.push(v.signum() * abs);
            }
            out.push(SignedPerm::from_images(&imgs).ok()?);
            k += m;
        }
        Some(out)
    }

    /// Image in `B_n` of a block word: letter `0` becomes `r_k ⋯ r_1 r_0 r_1 ⋯ r_k`
    /// and `a` becomes `k + a`, where `k` is the block offset.
    pub fn embed_word(offset: usize, word: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        for &a in word {
            if a == 0 {
                out.extend((1..=offset).rev().map(|b| b as u8));
                out.push(0);
                out.extend((1..=offset).map(|b| b as u8));
            } else {
                out.push(a + offset as u8);
            }
        }
        out
    }

    /// The minimal element `π_t ∈ S_n` with `π_t · t` sorted: a stable sort,
    /// `π_t(k)` being the rank of `(t_k, k)`.
    pub fn min_coset_rep(profile: &[u8]) -> SignedPerm {
        let n = profile.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (profile[k], k));
        let mut imgs = vec![0i32; n];
        for (rank, &k) in order.iter().enumerate() {
            imgs[k] = rank as i32 + 1;
        }
        SignedPerm::from_images(&imgs).expect("a permutation")
    }

    /// Place action on tuples: `(w·i)_{|w(k)|} = θ^{[w(k)<0]}(i_k)`.
    pub fn act_tuple<T: Copy>(&self, tuple: &[T], theta: impl Fn(T) -> T) -> Vec<T> {
        let mut out = tuple.to_vec();
        for (k, &x) in tuple.iter().enumerate() {
            let v = self.img[k];
            let pos = v.unsigned_abs() as usize - 1;
            out[pos] = if v < 0 { theta(x) } else { x };
        }
        out
    }

    /// All elements of `B_n`, enumerated through the normal form.
    pub fn all(n: usize) -> Vec<SignedPerm> {
        normal_form_words(n)
            .iter()
            .map(|w| SignedPerm::from_word(n, w).expect("valid letters"))
            .collect()
    }

    /// All elements of `S_n`.
    pub fn all_unsigned(n: usize) -> Vec<SignedPerm> {
        SignedPerm::all(n).into_iter().filter(|w| w.is_unsigned()).collect()
    }
}

/// Every word `u_n ⋯ u_1` with `u_i ∈ R^{(i)} = {t_a^ε r_a ⋯ r_{i-1}}`.
pub fn normal_form_words(n: usize) -> Vec<Vec<u8>> {
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for i in 1..=n {
        let mut coset = Vec::new();
        for a in 1..=i {
            for eps in 0..2 {
                let mut u = Vec::new();
                if eps == 1 {
                    u.extend((1..a).rev().map(|b| b as u8));
                    u.push(0);
                    u.extend((1..a).map(|b| b as u8));
                }
                u.extend((a..i).map(|b| b as u8));
                coset.push(u);
            }
        }
        let mut next = Vec::with_capacity(words.len() * coset.len());
        for u in &coset {
            for w in &words {
                let mut x = u.clone();
                x.extend_from_slice(w);
                next.push(x);
            }
        }
        words = next;
    }
    words
}

impl Mul for SignedPerm {
    type Output = SignedPerm;
    fn mul(self, rhs: SignedPerm) -> SignedPerm {
        self.compose(&rhs).expect("equal ranks")
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Text form of a word, e.g. `[1,0,1]`.
pub fn word_to_string(word: &[u8]) -> String {
    let parts: Vec<String> = word.iter().map(|a| a.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: usize, a: usize) -> SignedPerm {
        SignedPerm::generator(n, a).unwrap()
    }

    #[test]
    fn generators_are_involutions() {
        for n in 1..=4 {
            for a in 0..n {
                assert!((r(n, a) * r(n, a)).is_identity());
            }
        }
        let id = SignedPerm::identity(3);
        let w = SignedPerm::from_images(&[2, -1, 3]).unwrap();
        assert_eq!(id * w, w);
    }

    #[test]
    fn t2_examples() {
        let t2 = SignedPerm::t(2, 2);
        assert_eq!(r(2, 1) * r(2, 0) * r(2, 1), t2);
        assert_eq!(t2.length(), 3);
        assert_eq!(t2.canonical_word(), vec![1, 0, 1]);
        assert_eq!(t2.r0_count(), 1);
        assert_eq!(SignedPerm::identity(2).canonical_word(), Vec::<u8>::new());
        assert_eq!(r(2, 1).r0_count(), 0);
    }

    #[test]
    fn compose_matches_word_evaluation() {
        let w = r(2, 1) * r(2, 0);
        assert_eq!(SignedPerm::from_word(2, &w.canonical_word()).unwrap(), w);
        assert_eq!(w.canonical_word(), vec![1, 0]);
        assert_eq!(
            r(2, 0).compose(&r(3, 0)),
            Err(CoxeterError::SizeMismatch(2, 3))
        );
    }

    #[test]
    fn b2_length_distribution() {
        let mut counts = [0usize; 5];
        for w in SignedPerm::all(2) {
            counts[w.canonical_word().len()] += 1;
        }
        assert_eq!(counts, [1, 2, 2, 2, 1]);
    }

    #[test]
    fn dn_membership() {
        assert!(SignedPerm::identity(2).in_dn());
        assert!(!r(2, 0).in_dn());
        assert!(SignedPerm::s0(2).in_dn());
        assert_eq!(SignedPerm::s0(2).images(), &[-2, -1]);
    }

    #[test]
    fn embedding_examples() {
        let id1 = SignedPerm::identity(1);
        assert!(SignedPerm::embed_blocks(&[id1, id1]).is_identity());
        let r0 = r(1, 0);
        assert_eq!(SignedPerm::embed_blocks(&[id1, r0]), SignedPerm::t(2, 2));
        assert_eq!(SignedPerm::embed_word(1, &[0]), vec![1, 0, 1]);
    }

    #[test]
    fn coset_representatives() {
        assert!(SignedPerm::min_coset_rep(&[1, 1, 2]).is_identity());
        assert_eq!(SignedPerm::min_coset_rep(&[2, 1]), r(2, 1));
        let t = [2u8, 1, 2];
        let pi = SignedPerm::min_coset_rep(&t);
        assert_eq!(pi.act_tuple(&t, |x| x), vec![1, 2, 2]);
    }

    #[test]
    fn tuple_action_uses_theta_on_sign_changes() {
        let theta = |x: char| x.to_ascii_uppercase();
        assert_eq!(r(2, 0).act_tuple(&['a', 'b'], theta), vec!['A', 'b']);
        assert_eq!(SignedPerm::s0(2).act_tuple(&['a', 'b'], theta), vec!['B', 'A']);
    }

    #[test]
    fn text_form() {
        let w = SignedPerm::from_images(&[2, -1, 3]).unwrap();
        assert_eq!(w.to_string(), "[2,-1,3]");
        assert_eq!(word_to_string(&[1, 0, 1]), "[1,0,1]");
        assert!(SignedPerm::from_images(&[1, 1]).is_err());
    }
}
