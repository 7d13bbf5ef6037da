use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::coxeter::SignedPerm;

use super::{Quiver, QuiverError};

/// An `n`-tuple of vertex indices.
pub type Tuple = Vec<u16>;

/// Which Weyl group acts on tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// `S_n`, place permutations.
    S,
    /// `B_n`, with `r_0` applying `θ` to the first entry.
    B,
    /// `D_n`, generated by `s_0 = r_0 r_1 r_0` and `r_1, …, r_{n-1}`.
    D,
}

impl Group {
    pub fn generators(&self, n: usize) -> Vec<SignedPerm> {
        let mut gens: Vec<SignedPerm> =
            (1..n).map(|a| SignedPerm::generator(n, a).expect("valid")).collect();
        match self {
            Group::S => {}
            Group::B if n >= 1 => gens.insert(0, SignedPerm::generator(n, 0).expect("valid")),
            Group::D if n >= 2 => gens.insert(0, SignedPerm::s0(n)),
            _ => {}
        }
        gens
    }

    pub fn contains(&self, w: &SignedPerm) -> bool {
        match self {
            Group::S => w.is_unsigned(),
            Group::B => true,
            Group::D => w.in_dn() && (w.rank() >= 2 || w.is_identity()),
        }
    }
}

/// A finite set of tuples, normally a single group orbit, in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    group: Group,
    n: usize,
    theta: Vec<u16>,
    tuples: Vec<Tuple>,
    index: HashMap<Tuple, usize>,
}

impl Orbit {
    /// The closure of `seed` under the generators of `group`.
    pub fn generate(theta: &[usize], seed: &[u16], group: Group) -> Orbit {
        let n = seed.len();
        let theta16: Vec<u16> = theta.iter().map(|&t| t as u16).collect();
        let gens = group.generators(n);
        let mut seen: BTreeSet<Tuple> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(seed.to_vec());
        queue.push_back(seed.to_vec());
        while let Some(t) = queue.pop_front() {
            for g in &gens {
                let u = g.act_tuple(&t, |x| theta16[x as usize]);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        Orbit::from_tuples(group, n, theta16, seen)
    }

    /// Wraps an explicit set of tuples without closing it.
    pub fn from_tuples(
        group: Group,
        n: usize,
        theta: Vec<u16>,
        tuples: impl IntoIterator<Item = Tuple>,
    ) -> Orbit {
        let set: BTreeSet<Tuple> = tuples.into_iter().collect();
        let tuples: Vec<Tuple> = set.into_iter().collect();
        let index = tuples.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        Orbit { group, n, theta, tuples, index }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn tuple(&self, k: usize) -> &Tuple {
        &self.tuples[k]
    }

    pub fn index_of(&self, t: &[u16]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn theta(&self, v: u16) -> u16 {
        self.theta[v as usize]
    }

    pub fn theta_map(&self) -> &[u16] {
        &self.theta
    }

    pub fn act_tuple(&self, w: &SignedPerm, t: &[u16]) -> Tuple {
        w.act_tuple(t, |x| self.theta[x as usize])
    }

    /// Index of `w · tuples[k]`, if it stays in the set.
    pub fn act(&self, w: &SignedPerm, k: usize) -> Option<usize> {
        if w.is_identity() {
            return Some(k);
        }
        self.index_of(&self.act_tuple(w, &self.tuples[k]))
    }

    /// Whether the set is stable under the generators of its group.
    pub fn is_closed(&self) -> bool {
        let gens = self.group.generators(self.n);
        self.tuples
            .iter()
            .all(|t| gens.iter().all(|g| self.index.contains_key(&self.act_tuple(g, t))))
    }

    /// Vertices occurring in some tuple.
    pub fn support(&self) -> BTreeSet<u16> {
        self.tuples.iter().flatten().copied().collect()
    }

    pub fn with_group(&self, group: Group) -> Orbit {
        Orbit { group, ..self.clone() }
    }
}

/// Assignment of each vertex to a component `1..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block: Vec<u8>,
    d: usize,
}

impl Partition {
    /// Checks that blocks are θ-stable and that no arrow joins two blocks.
    pub fn new(quiver: &Quiver, block: Vec<u8>) -> Result<Partition, QuiverError> {
        if block.len() != quiver.len() {
            return Err(QuiverError::NotComponentStable("length mismatch".into()));
        }
        let d = block.iter().copied().max().unwrap_or(0) as usize;
        if block.contains(&0) {
            return Err(QuiverError::NotComponentStable("blocks are numbered from 1".into()));
        }
        for i in 0..quiver.len() {
            if block[quiver.theta(i)] != block[i] {
                return Err(QuiverError::NotComponentStable(format!(
                    "theta moves {} across blocks",
                    quiver.name(i)
                )));
            }
            for j in 0..quiver.len() {
                if quiver.arrows(i, j) > 0 && block[i] != block[j] {
                    return Err(QuiverError::NotComponentStable(format!(
                        "arrow {} -> {} joins blocks",
                        quiver.name(i),
                        quiver.name(j)
                    )));
                }
            }
        }
        Ok(Partition { block, d })
    }

    pub fn trivial(quiver: &Quiver) -> Partition {
        Partition { block: vec![1; quiver.len()], d: usize::from(!quiver.is_empty()) }
    }

    pub fn blocks(&self) -> usize {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.block.len()
    }

    pub fn block_of(&self, v: u16) -> u8 {
        self.block[v as usize]
    }

    pub fn vertices_in(&self, j: u8) -> Vec<usize> {
        (0..self.block.len()).filter(|&v| self.block[v] == j).collect()
    }

    pub fn profile(&self, t: &[u16]) -> Vec<u8> {
        t.iter().map(|&v| self.block[v as usize]).collect()
    }

    /// `(n_1, …, n_d)` for a tuple.
    pub fn sizes(&self, t: &[u16]) -> Vec<usize> {
        let mut s = vec![0; self.d];
        for &v in t {
            s[self.block[v as usize] as usize - 1] += 1;
        }
        s
    }

    /// The entries of `t` lying in block `j`, in order.
    pub fn restrict(&self, t: &[u16], j: u8) -> Tuple {
        t.iter().copied().filter(|&v| self.block[v as usize] == j).collect()
    }
}

/// Component data of an orbit.
#[derive(Debug, Clone)]
pub struct Components {
    pub sizes: Vec<usize>,
    pub orbits: Vec<Orbit>,
    /// Each `β^{(j)}` is a full orbit and concatenating seeds regenerates `β`.
    pub rebuild_ok: bool,
}

pub fn orbit_components(beta: &Orbit, partition: &Partition) -> Result<Components, QuiverError> {
    let first = beta
        .tuples()
        .first()
        .cloned()
        .unwrap_or_default();
    let sizes = partition.sizes(&first);
    for t in beta.tuples() {
        if partition.sizes(t) != sizes {
            return Err(QuiverError::NotComponentStable(
                "component counts vary over the orbit".into(),
            ));
        }
    }
    let mut orbits = Vec::with_capacity(partition.blocks());
    let mut rebuild_ok = true;
    for j in 1..=partition.blocks() as u8 {
        let restricted: BTreeSet<Tuple> =
            beta.tuples().iter().map(|t| partition.restrict(t, j)).collect();
        let set = Orbit::from_tuples(
            beta.group(),
            sizes[j as usize - 1],
            beta.theta_map().to_vec(),
            restricted,
        );
        let seed = set.tuple(0).clone();
        let theta: Vec<usize> = beta.theta_map().iter().map(|&t| t as usize).collect();
        let closure = Orbit::generate(&theta, &seed, beta.group());
        rebuild_ok &= closure.tuples() == set.tuples();
        orbits.push(set);
    }
    let concat: Tuple = orbits.iter().flat_map(|o| o.tuple(0).clone()).collect();
    let theta: Vec<usize> = beta.theta_map().iter().map(|&t| t as usize).collect();
    if beta.rank() > 0 {
        rebuild_ok &= Orbit::generate(&theta, &concat, beta.group()).tuples() == beta.tuples();
    }
    Ok(Components { sizes, orbits, rebuild_ok })
}

/// The profile set `Prof^β`, the sorted profile `t^β` and the fibres of `p`.
#[derive(Debug, Clone)]
pub struct Profiles {
    pub list: Vec<Vec<u8>>,
    pub t_beta: Vec<u8>,
    /// `fibers[k]` lists the orbit indices with profile `list[k]`.
    pub fibers: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
}

impl Profiles {
    pub fn position(&self, t: &[u8]) -> Option<usize> {
        self.list.iter().position(|p| p.as_slice() == t)
    }

    pub fn t_beta_index(&self) -> usize {
        self.position(&self.t_beta).expect("t^β is a profile")
    }
}

pub fn profiles(beta: &Orbit, partition: &Partition) -> Result<Profiles, QuiverError> {
    let comps = orbit_components(beta, partition)?;
    let mut by_profile: std::collections::BTreeMap<Vec<u8>, Vec<usize>> = Default::default();
    for (k, t) in beta.tuples().iter().enumerate() {
        by_profile.entry(partition.profile(t)).or_default().push(k);
    }
    let mut t_beta = Vec::new();
    for (j, &m) in comps.sizes.iter().enumerate() {
        t_beta.extend(std::iter::repeat_n(j as u8 + 1, m));
    }
    let (list, fibers) = by_profile.into_iter().unzip();
    Ok(Profiles { list, t_beta, fibers, sizes: comps.sizes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_free() -> Quiver {
        Quiver::new(&["a", "A", "b", "B"], &[], &[("a", "A"), ("b", "B")]).unwrap()
    }

    #[test]
    fn small_orbits() {
        let q = theta_free();
        let o = Orbit::generate(q.theta_map(), &[0], Group::B);
        assert_eq!(o.tuples(), &[vec![0], vec![1]]);
        let o = Orbit::generate(q.theta_map(), &[0, 2], Group::S);
        assert_eq!(o.len(), 2);
        let o = Orbit::generate(q.theta_map(), &[0, 2], Group::B);
        assert_eq!(o.len(), 8);
        assert!(o.is_closed());
    }

    #[test]
    fn d_orbit_uses_s0() {
        let q = theta_free();
        let o = Orbit::generate(q.theta_map(), &[0, 2], Group::D);
        assert_eq!(o.len(), 4);
        assert!(o.index_of(&[3, 1]).is_some());
        assert!(o.index_of(&[1, 2]).is_none());
    }

    #[test]
    fn components_and_profiles() {
        let q = theta_free();
        let part = Partition::new(&q, vec![1, 1, 2, 2]).unwrap();
        let beta = Orbit::generate(q.theta_map(), &[0, 2], Group::B);
        let comps = orbit_components(&beta, &part).unwrap();
        assert_eq!(comps.sizes, vec![1, 1]);
        assert_eq!(comps.orbits[0].tuples(), &[vec![0], vec![1]]);
        assert_eq!(comps.orbits[1].tuples(), &[vec![2], vec![3]]);
        assert!(comps.rebuild_ok);
        let prof = profiles(&beta, &part).unwrap();
        assert_eq!(prof.list.len(), 2);
        assert_eq!(prof.t_beta, vec![1, 2]);
        let covered: usize = prof.fibers.iter().map(|f| f.len()).sum();
        assert_eq!(covered, beta.len());

        let beta = Orbit::generate(q.theta_map(), &[0, 0, 2], Group::B);
        assert_eq!(profiles(&beta, &part).unwrap().list.len(), 3);
    }

    #[test]
    fn trivial_partition() {
        let q = theta_free();
        let beta = Orbit::generate(q.theta_map(), &[0, 2], Group::B);
        let comps = orbit_components(&beta, &Partition::trivial(&q)).unwrap();
        assert_eq!(comps.sizes, vec![2]);
        assert_eq!(comps.orbits[0].tuples(), beta.tuples());
    }

    #[test]
    fn unstable_partition_rejected() {
        let q = theta_free();
        assert!(Partition::new(&q, vec![1, 2, 2, 2]).is_err());
        let p = Quiver::new(&["a", "b"], &[("a", "b"), ("b", "a")], &[]).unwrap();
        assert!(Partition::new(&p, vec![1, 2]).is_err());
    }
}
