use std::collections::{BTreeMap, BTreeSet};

use crate::quiver::{orbit_components, Group, Orbit, Partition, Quiver, Tuple};
use crate::vvalgebra::{Mode, Report};

/// Every `G_n`-orbit of `vertices^n`, each as its sorted tuple set.
fn all_orbits(theta: &[usize], vertices: &[usize], n: usize, group: Group) -> Vec<Orbit> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let t: Tuple = digits.iter().map(|&d| vertices[d] as u16).collect();
        if !seen.contains(&t) {
            let o = Orbit::generate(theta, &t, group);
            seen.extend(o.tuples().iter().cloned());
            out.push(o);
        }
        let mut k = 0;
        loop {
            if k == n || vertices.is_empty() {
                return out;
            }
            digits[k] += 1;
            if digits[k] < vertices.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// `α̂`: occurrences of each `G`-orbit of vertices, keyed by its smallest vertex.
fn counts(o: &Orbit, quiver: &Quiver, group: Group) -> BTreeMap<usize, usize> {
    let mut c = BTreeMap::new();
    if let Some(t) = o.tuples().first() {
        for &v in t {
            let v = v as usize;
            let rep = if group == Group::S { v } else { v.min(quiver.theta(v)) };
            *c.entry(rep).or_insert(0) += 1;
        }
    }
    c
}

fn binomial(a: u128, b: u128) -> u128 {
    (0..b).fold(1, |acc, k| acc * (a - k) / (k + 1))
}

/// Splits every orbit of `I^n` along the partition and checks that this is a
/// bijection onto tuples of component orbits, together with the count by
/// maps `Ω → ℕ` of weight `n`.
pub fn orbit_bijection_check(quiver: &Quiver, partition: &Partition, n: usize, mode: Mode) -> Report {
    let group = match mode {
        Mode::A => Group::S,
        Mode::B => Group::B,
    };
    let mut report = Report::default();
    let theta = quiver.theta_map();
    let all: Vec<usize> = (0..quiver.len()).collect();
    let orbits = all_orbits(theta, &all, n, group);
    let mut keys = BTreeSet::new();
    let mut hats = BTreeSet::new();
    let mut split_ok = true;
    let mut restrict_ok = true;
    for o in &orbits {
        match orbit_components(o, partition) {
            Ok(c) => {
                split_ok &= c.rebuild_ok;
                let key: Vec<(usize, Vec<Tuple>)> =
                    c.sizes.iter().zip(&c.orbits).map(|(&m, p)| (m, p.tuples().to_vec())).collect();
                keys.insert(key);
                let hat = counts(o, quiver, group);
                for p in &c.orbits {
                    for (v, k) in counts(p, quiver, group) {
                        restrict_ok &= hat.get(&v) == Some(&k);
                    }
                }
                hats.insert(hat.into_iter().collect::<Vec<_>>());
            }
            Err(_) => split_ok = false,
        }
    }
    report.push("components_are_orbits", "*", split_ok);
    report.push("split_injective", "*", keys.len() == orbits.len());
    let d = partition.blocks();
    let blocks: Vec<Vec<usize>> = (1..=d as u8).map(|j| partition.vertices_in(j)).collect();
    let mut table = vec![vec![0u128; n + 1]; d];
    for (j, vs) in blocks.iter().enumerate() {
        for (m, slot) in table[j].iter_mut().enumerate() {
            *slot = all_orbits(theta, vs, m, group).len() as u128;
        }
    }
    let mut products = vec![0u128; n + 1];
    products[0] = 1;
    for row in &table {
        let mut next = vec![0u128; n + 1];
        for (a, &p) in products.iter().enumerate() {
            for b in 0..=n - a {
                next[a + b] += p * row[b];
            }
        }
        products = next;
    }
    if d == 0 {
        products = (0..=n).map(|m| u128::from(m == 0)).collect();
    }
    report.push("split_surjective", "*", products[n] == keys.len() as u128);
    let omega = (0..quiver.len())
        .filter(|&v| group == Group::S || v <= quiver.theta(v))
        .count() as u128;
    let expected = if omega == 0 { u128::from(n == 0) } else { binomial(omega + n as u128 - 1, n as u128) };
    report.push("count_maps", "*", orbits.len() as u128 == expected);
    report.push("hat_injective", "*", hats.len() == orbits.len());
    report.push("hat_restricts", "*", restrict_ok);
    report
}
