use std::sync::Arc;

use vvhecke::decomposition::{full_decompose, generators};
use vvhecke::field::{Field, Scalar};
use vvhecke::quiver::{build_hecke_quiver, Group, HeckeMode, HeckeQuiver, Orbit, Partition};
use vvhecke::type_d::{decompose_d, verify_w_relations};
use vvhecke::vvalgebra::{verify_relations, Algebra, Mode, Report};

fn assert_clean(what: &str, report: &Report) {
    let failures: Vec<String> =
        report.failures().map(|r| format!("{} {} {:?}", r.relation, r.tuple, r.detail)).collect();
    assert!(failures.is_empty(), "{what}: {failures:#?}");
    assert!(!report.is_empty(), "{what}: no checks ran");
}

fn hecke(field: Field, q: i64, xs: &[i64], p: Option<i64>, mode: HeckeMode) -> HeckeQuiver {
    let s = |v: i64| field.from_i64(v);
    let xs: Vec<Scalar> = xs.iter().map(|&v| s(v)).collect();
    build_hecke_quiver(&s(q), &xs, p.map(s).as_ref(), mode).unwrap()
}

fn algebra(h: &HeckeQuiver, seed: &[&str], field: Field) -> Arc<Algebra> {
    let seed: Vec<u16> = seed.iter().map(|v| h.quiver.vertex(v).unwrap() as u16).collect();
    let orbit = Orbit::generate(h.quiver.theta_map(), &seed, Group::B);
    Algebra::new(h.quiver.clone(), h.params.clone(), orbit, Mode::B, field).unwrap()
}

#[test]
fn hecke_quiver_over_f5_decomposes_along_its_orbit_sets() {
    let f5 = Field::prime(5).unwrap();
    let h = hecke(f5, 2, &[1, 2], Some(2), HeckeMode::B);
    let names: Vec<&str> = h.quiver.vertices().iter().map(String::as_str).collect();
    assert_eq!(names, ["1", "4", "2", "3"]);
    assert_eq!(h.blocks, [1, 1, 2, 2]);
    assert_eq!(h.params.lambda, [0, 0, 1, 1]);
    let partition = Partition::new(&h.quiver, h.blocks.clone()).unwrap();
    for seed in [&["1", "2"][..], &["4", "3"], &["1", "1"]] {
        let alg = algebra(&h, seed, f5);
        assert_clean("relations", &verify_relations(&alg));
        let full = full_decompose(&alg, &partition).unwrap();
        assert_clean("structure", &full.verify_structure().unwrap());
        assert_clean("rho", &full.verify_rho_bijection(1).unwrap());
        let gens = generators(&alg);
        let pairs: Vec<_> = gens.iter().flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone()))).collect();
        assert_clean("pairs", &full.verify_pairs(&pairs).unwrap());
    }
}

#[test]
fn type_d_hecke_quiver_splits_into_components() {
    let f7 = Field::prime(7).unwrap();
    let h = hecke(f7, 3, &[1, 3], None, HeckeMode::D);
    assert!(h.params.is_zero());
    let partition = Partition::new(&h.quiver, h.blocks.clone()).unwrap();
    let first = h.quiver.name(h.blocks.iter().position(|&b| b == 1).unwrap()).to_string();
    let second = h.quiver.name(h.blocks.iter().position(|&b| b == 2).unwrap()).to_string();
    let alg = algebra(&h, &[&first, &second], f7);
    assert_clean("w relations", &verify_w_relations(&alg).unwrap());
    assert_clean("decompose_d", &decompose_d(&alg, &partition, None, 1).unwrap());
}

#[test]
fn overlapping_orbit_sets_are_rejected() {
    let f7 = Field::prime(7).unwrap();
    let s = |v: i64| f7.from_i64(v);
    // 2 = 1 · 3² in F_7, so I_1 and I_2 coincide
    assert!(build_hecke_quiver(&s(3), &[s(1), s(2)], None, HeckeMode::D).is_err());
}
