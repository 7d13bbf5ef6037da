//! Acceptance criteria 1–9. Each test prints one `criterion N: PASS|FAIL` line
//! straight to stderr, so the lines show up even when output is captured.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vvhecke::coxeter::{normal_form_words, SignedPerm};
use vvhecke::decomposition::profile_system;
use vvhecke::field::Field;
use vvhecke::quiver::{classify_morita_b, classify_morita_d, MoritaCaseB, MoritaCaseD};
use vvhecke_cli::{run, Caps, ClassifyArgs, ClassifyMode, Config, Format, Report, RunConfig, Status, Suite};

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.json"))
}

fn run_on(suite: Suite, config: Option<&str>, caps: Caps, seed: u64) -> Report {
    let rc = RunConfig {
        config: config.map(config_path),
        caps,
        seed,
        format: Format::Json,
        timing: false,
        workers: RunConfig::workers_from_env(),
    };
    run(&suite, &rc).unwrap_or_else(|e| panic!("{}: {e}", suite.name()))
}

fn verdict(n: u32, what: &str, problems: &[String]) {
    let status = if problems.is_empty() { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n}: {status}  {what}");
    assert!(problems.is_empty(), "criterion {n}: {problems:#?}");
}

fn failures(tag: &str, report: &Report, problems: &mut Vec<String>) {
    for c in report.failures() {
        problems.push(format!("{tag}: {} ({})", c.name, c.detail));
    }
}

/// Number of checks merged into a passing case, read from its detail.
fn checks(report: &Report, name_suffix: &str) -> Vec<(String, usize)> {
    report
        .cases
        .iter()
        .filter(|c| c.name.ends_with(name_suffix) && c.status == Status::Pass)
        .map(|c| (c.name.clone(), c.detail.trim_end_matches(" checks").parse().unwrap_or(0)))
        .collect()
}

fn has_case(report: &Report, fragment: &str) -> bool {
    report.cases.iter().any(|c| c.name.contains(fragment) && c.status == Status::Pass)
}

/// Orbit tuples named in the cases of scope `beta(seed)`.
fn tuples_seen(report: &Report, scope: &str) -> BTreeSet<String> {
    report
        .cases
        .iter()
        .filter(|c| c.name.starts_with(scope))
        .filter_map(|c| c.name.rsplit_once('@').map(|(_, t)| t.to_string()))
        .filter(|t| t != "*")
        .collect()
}

#[test]
fn criterion_1_relation_suites() {
    let families: [(&str, &[&str]); 5] = [
        ("(i) type A path, n=3", &["path_a"]),
        ("(ii) zero parameters, theta with fixed points", &["pair_zero", "pair_zero_n3"]),
        ("(ii) zero parameters, theta without fixed points", &["free_zero"]),
        ("(iii) gamma != 0 Hecke quiver over F_5", &["coherence_f5"]),
        ("(iv) mixed gamma branches", &["mixed_gamma"]),
    ];
    let mut problems = Vec::new();
    for (family, configs) in families {
        let start = Instant::now();
        for name in configs {
            let report = run_on(Suite::Relations, Some(name), Caps::default(), 0);
            failures(name, &report, &mut problems);
            let cfg = Config::load(&config_path(name)).unwrap();
            for k in 0..cfg.seeds.len() {
                let alg = cfg.algebra(k).unwrap();
                let seen = tuples_seen(&report, &format!("{}/", cfg.label(k)));
                let all: BTreeSet<String> = (0..alg.orbit().len() as u32).map(|i| alg.tuple_name(i)).collect();
                if seen != all {
                    problems.push(format!("{name} {}: relations cover {} of {} tuples", cfg.label(k), seen.len(), all.len()));
                }
            }
            if *name == "mixed_gamma" {
                for tag in ["braid4[g1=0,g2=0]", "braid4[g1=0,g2!=0]", "braid4[g1!=0,g2=0]", "braid4[g1!=0,g2!=0]"] {
                    if !has_case(&report, tag) {
                        problems.push(format!("mixed_gamma: branch {tag} not exercised"));
                    }
                }
            }
        }
        if start.elapsed() > Duration::from_secs(60) {
            problems.push(format!("{family}: took {:?}", start.elapsed()));
        }
    }
    for ranks in [("pair_zero", 2), ("pair_zero_n3", 3)] {
        let cfg = Config::load(&config_path(ranks.0)).unwrap();
        if cfg.seeds.iter().any(|s| s.len() != ranks.1) {
            problems.push(format!("{} should have rank {}", ranks.0, ranks.1));
        }
    }
    verdict(1, "every defining relation holds exactly on every orbit tuple, five families", &problems);
}

/// `Σ_{w, ℓ(w) ≤ 4} |β| · #{a : |a| ≤ 2}`, counted independently of the enumerator.
fn expected_round_trips(cfg: &Config, k: usize) -> usize {
    let alg = cfg.algebra(k).unwrap();
    let n = alg.rank();
    let group: Vec<SignedPerm> = match cfg.mode {
        vvhecke::vvalgebra::Mode::A => SignedPerm::all_unsigned(n),
        vvhecke::vvalgebra::Mode::B => SignedPerm::all(n),
    };
    let short = group.iter().filter(|w| inversion_length(w) <= 4).count();
    let exps = (n + 2) * (n + 1) / 2;
    short * alg.orbit().len() * exps
}

#[test]
fn criterion_2_pbw_round_trip() {
    let mut problems = Vec::new();
    let caps = Caps { max_len: 4, max_ydeg: 2, samples: 1000 };
    for name in ["path_a", "pair_zero", "pair_zero_n3", "free_zero", "coherence_f5", "mixed_gamma"] {
        let report = run_on(Suite::Pbw, Some(name), caps, 7);
        failures(name, &report, &mut problems);
        let cfg = Config::load(&config_path(name)).unwrap();
        for k in 0..cfg.seeds.len() {
            let want = expected_round_trips(&cfg, k);
            let got = checks(&report, &format!("{}/round_trip", cfg.label(k)));
            if got.len() != 1 || got[0].1 != want {
                problems.push(format!("{name} {}: {got:?} round trips, expected {want}", cfg.label(k)));
            }
        }
    }
    let report = run_on(Suite::Pbw, Some("pair_zero_n4"), Caps { samples: 500, ..caps }, 7);
    failures("pair_zero_n4", &report, &mut problems);
    let n4 = checks(&report, "/round_trip");
    if n4.len() != 2 || n4.iter().any(|(_, c)| *c < 500) {
        problems.push(format!("n=4 samples {n4:?}"));
    }
    verdict(2, "PBW round trip exhaustive for n<=3 (l<=4, |a|<=2) and 500 samples per orbit at n=4", &problems);
}

#[test]
fn criterion_3_closure() {
    let mut problems = Vec::new();
    let caps = Caps { max_len: 1, max_ydeg: 2, samples: 1000 };
    for name in ["path_a", "pair_zero_n3", "free_zero", "coherence_f5", "mixed_gamma"] {
        let report = run_on(Suite::Pbw, Some(name), caps, 11);
        failures(name, &report, &mut problems);
        let products: usize = checks(&report, "/closure").iter().map(|c| c.1).sum();
        let triples: usize = checks(&report, "/associativity").iter().map(|c| c.1).sum();
        if products < 1000 || triples < 100 {
            problems.push(format!("{name}: {products} products, {triples} triples"));
        }
    }
    verdict(3, ">=1000 products per family expand in the algebra, associativity on >=100 triples", &problems);
}

/// `♯{i<j: π(i)>π(j)} + ♯{i≤j: π(-i)>π(j)}`.
fn inversion_length(w: &SignedPerm) -> usize {
    let n = w.rank() as i32;
    let mut l = 0;
    for i in 1..=n {
        for j in i..=n {
            if i < j && w.apply(i) > w.apply(j) {
                l += 1;
            }
            if w.apply(-i) > w.apply(j) {
                l += 1;
            }
        }
    }
    l
}

/// `∏ (1 - t^{2i}) / (1 - t)`, by multiplying out numerators and dividing by `1 - t`.
fn poincare_by_division(n: usize) -> Vec<i64> {
    let mut num = vec![1i64];
    for i in 1..=n {
        let mut next = vec![0i64; num.len() + 2 * i];
        for (k, &c) in num.iter().enumerate() {
            next[k] += c;
            next[k + 2 * i] -= c;
        }
        num = next;
    }
    for _ in 0..n {
        // division by 1 - t is a running sum
        let mut acc = 0;
        for c in num.iter_mut() {
            acc += *c;
            *c = acc;
        }
        while num.last() == Some(&0) {
            num.pop();
        }
    }
    num
}

#[test]
fn criterion_4_coxeter() {
    let mut problems = Vec::new();
    let report = run_on(Suite::Coxeter { max_rank: 4 }, None, Caps::default(), 0);
    failures("coxeter", &report, &mut problems);
    for n in 1..=4usize {
        let words = normal_form_words(n);
        let elems: BTreeSet<SignedPerm> = words.iter().map(|w| SignedPerm::from_word(n, w).unwrap()).collect();
        let order = (1..=n).product::<usize>() << n;
        if words.len() != order || elems.len() != order {
            problems.push(format!("B{n}: {} words, {} distinct", words.len(), elems.len()));
        }
        let mut counts = vec![0i64; n * n + 1];
        for w in &words {
            let g = SignedPerm::from_word(n, w).unwrap();
            if inversion_length(&g) != w.len() {
                problems.push(format!("B{n}: word {w:?} not reduced"));
            }
            counts[w.len()] += 1;
        }
        if counts != poincare_by_division(n) {
            problems.push(format!("B{n}: length counts {counts:?}"));
        }
    }
    for n1 in 1..4usize {
        for n2 in 1..=4 - n1 {
            for w1 in SignedPerm::all(n1) {
                for w2 in SignedPerm::all(n2) {
                    let img = SignedPerm::embed_blocks(&[w1, w2]);
                    let a = SignedPerm::embed_blocks(&[w1, SignedPerm::identity(n2)]);
                    let b = SignedPerm::embed_blocks(&[SignedPerm::identity(n1), w2]);
                    let mut word = w1.canonical_word();
                    word.extend(SignedPerm::embed_word(n1, &w2.canonical_word()));
                    let ok = inversion_length(&img) == inversion_length(&a) + inversion_length(&b)
                        && SignedPerm::from_word(n1 + n2, &word).unwrap() == img
                        && word.len() == inversion_length(&img);
                    if !ok {
                        problems.push(format!("embed {w1} x {w2}"));
                    }
                }
            }
        }
    }
    verdict(4, "2^n n! normal forms, Poincare polynomial, block embeddings for n<=4", &problems);
}

fn multinomial(sizes: &[usize]) -> usize {
    let fact = |m: usize| (1..=m).product::<usize>();
    fact(sizes.iter().sum()) / sizes.iter().map(|&m| fact(m)).product::<usize>()
}

#[test]
fn criterion_5_decomposition() {
    let mut problems = Vec::new();
    let caps = Caps { max_len: 4, max_ydeg: 2, samples: 200 };
    let required = [
        "phit_psit_klr", "psit_et_phit", "psi2_e(s)", "ya_psit", "psi_tresse_exact", "degree_zero",
        "multinomial", "eta_theta", "theta_eta", "factor1:", "factor2:", "cross_commute",
    ];
    for name in ["split_a", "split_b"] {
        let report = run_on(Suite::Decompose, Some(name), caps, 5);
        failures(name, &report, &mut problems);
        let cfg = Config::load(&config_path(name)).unwrap();
        let p = cfg.partition.clone().unwrap();
        let ranks: BTreeSet<usize> = cfg.seeds.iter().map(Vec::len).collect();
        if !ranks.contains(&2) || !ranks.contains(&3) || p.blocks() != 2 {
            problems.push(format!("{name}: needs d=2 and ranks 2 and 3"));
        }
        for k in 0..cfg.seeds.len() {
            let scope = cfg.label(k);
            let alg = cfg.algebra(k).unwrap();
            for tag in required {
                if tag == "psi_tresse_exact" && alg.rank() < 3 {
                    continue;
                }
                if !has_case(&report, &format!("{scope}/{tag}")) {
                    problems.push(format!("{name} {scope}: no passing {tag}"));
                }
            }
            let profiles: BTreeSet<Vec<u8>> = alg.orbit().tuples().iter().map(|t| p.profile(t)).collect();
            let seed = alg.tuple(0);
            let sizes: Vec<usize> = (1..=2u8).map(|j| p.profile(seed).iter().filter(|&&b| b == j).count()).collect();
            let ps = profile_system(&alg, &p).unwrap();
            if ps.len() != profiles.len() || ps.len() != multinomial(&sizes) {
                problems.push(format!("{name} {scope}: {} profiles, expected {}", ps.len(), multinomial(&sizes)));
            }
            let sampled: Vec<usize> = report
                .cases
                .iter()
                .filter(|c| c.name.starts_with(&format!("{scope}/eta_theta@")))
                .filter_map(|c| c.name.rsplit('@').next()?.split(' ').next()?.parse().ok())
                .collect();
            let enough = if alg.rank() == 2 { sampled.len() == 1 } else { sampled.iter().all(|&s| s >= 200) };
            if !enough || sampled.is_empty() {
                problems.push(format!("{name} {scope}: theta/eta on {sampled:?} elements"));
            }
        }
    }
    verdict(5, "profile identities, theta/eta, rho relations, multinomial, degree-0 certificates (d=2, n=2,3)", &problems);
}

#[test]
fn criterion_6_cyclotomic_transport() {
    let mut problems = Vec::new();
    for name in ["split_zero", "split_a"] {
        let report = run_on(Suite::Cyclo, Some(name), Caps::default(), 0);
        failures(name, &report, &mut problems);
        let cfg = Config::load(&config_path(name)).unwrap();
        let p = cfg.partition.clone().unwrap();
        if cfg.weights.len() < 2 {
            problems.push(format!("{name}: fewer than two weights"));
        }
        let mut saw_zero = false;
        for k in 0..cfg.seeds.len() {
            let alg = cfg.algebra(k).unwrap();
            let sizes: Vec<usize> =
                (1..=2u8).map(|j| p.profile(alg.tuple(0)).iter().filter(|&&b| b == j).count()).collect();
            for (w, lam) in cfg.weights.iter().enumerate() {
                let scope = format!("{}/weight[{w}]", cfg.label(k));
                let zero = (0..2).any(|j| sizes[j] > 0 && p.vertices_in(j as u8 + 1).iter().all(|&v| lam.0[v] == 0));
                saw_zero |= zero;
                let flag = report.cases.iter().find(|c| c.name == format!("{scope}/quotient_is_zero"));
                if flag.map(|c| c.detail.as_str()) != Some(if zero { "true" } else { "false" }) {
                    problems.push(format!("{name} {scope}: flag {flag:?}, expected {zero}"));
                }
                for tag in ["cyclo_forward", "cyclo_backward"] {
                    if !has_case(&report, &format!("{scope}/{tag}")) {
                        problems.push(format!("{name} {scope}: no passing {tag}"));
                    }
                }
            }
        }
        if !saw_zero {
            problems.push(format!("{name}: no weight vanishing on a component"));
        }
    }
    verdict(6, "both inclusions of the cyclotomic ideal transported exactly, quotient-is-zero flag", &problems);
}

#[test]
fn criterion_7_type_d() {
    let mut problems = Vec::new();
    let caps = Caps { max_len: 4, max_ydeg: 1, samples: 800 };
    let mut all = Vec::new();
    for name in ["pair_zero", "pair_zero_n3", "split_zero"] {
        let report = run_on(Suite::Typed, Some(name), caps, 3);
        failures(name, &report, &mut problems);
        all.push(report);
    }
    let any = |tag: &str| all.iter().any(|r| has_case(r, tag));
    for tag in [
        "psi0_y1D[a=1,theta(i1)=i2]", "psi0_y1D[a=1,theta(i1)!=i2]", "psi0squareD[Q=0]", "psi0squareD[Q!=0]",
        "braid3D[theta(i1)=i3]", "braid3D[theta(i1)!=i3]", "iota_involution", "iota_sign_rule",
        "pi_pi_is_identity", "iota_pi_commute", "decompose_d/rho_iota", "decompose_d[weight0]/xi_conjugation",
    ] {
        if !any(tag) {
            problems.push(format!("no passing {tag}"));
        }
    }
    let pairs: Vec<usize> = all
        .iter()
        .flat_map(|r| r.cases.iter())
        .filter(|c| c.name.contains("/semidirect_law@"))
        .filter_map(|c| c.name.rsplit('@').next()?.split(' ').next()?.parse().ok())
        .collect();
    if pairs.is_empty() || pairs.iter().any(|&p| p < 200) {
        problems.push(format!("semidirect pairs {pairs:?}"));
    }
    let split = &all[2];
    if !has_case(split, "beta(a,k)/decompose_d[weight0]/xi_conjugation") {
        problems.push("xi-conjugation not checked at d=2, n=2".into());
    }
    verdict(7, "W relations on all branches, iota/pi coherence, semidirect law on >=200 pairs, type D splitting", &problems);
}

/// Case letters by brute-force subset membership, computed on residues.
fn subset_oracle(x: u64, q: u64, p: Option<u64>, m: u64) -> char {
    let mulm = |a: u64, b: u64| a * b % m;
    let mut q2pows = BTreeSet::new();
    let mut g = 1;
    loop {
        if !q2pows.insert(g) {
            break;
        }
        g = mulm(g, mulm(q, q));
    }
    let in_set = |c: u64| q2pows.iter().any(|&s| x == mulm(c, s) || x == (m - mulm(c, s)) % m);
    let pinv = p.map(|p| (1..m).find(|&v| mulm(v, p) == 1).unwrap());
    if in_set(1) {
        'a'
    } else if in_set(q) {
        'b'
    } else if let (Some(p), Some(pinv)) = (p, pinv) {
        if in_set(p) || in_set(pinv) {
            'c'
        } else {
            'd'
        }
    } else {
        'c'
    }
}

fn order_of(v: u64, m: u64) -> u64 {
    (1..m).find(|&k| (0..k).fold(1, |acc, _| acc * v % m) == 1).unwrap()
}

#[test]
fn criterion_8_morita() {
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for m in [17u64, 13] {
        let f = Field::prime(m).unwrap();
        let s = |v: u64| f.from_i64(v as i64);
        let good: Vec<u64> = (2..m).filter(|v| v * v % m != 1).collect();
        let mut letters = BTreeMap::new();
        for _ in 0..60 {
            let q = good[rng.gen_range(0..good.len())];
            let p = good[rng.gen_range(0..good.len())];
            let x = rng.gen_range(1..m);
            let odd = order_of(q * q % m, m) % 2 == 1;
            let b = classify_morita_b(&s(x), &s(q), &s(p)).unwrap();
            let got = match b.case {
                MoritaCaseB::A => 'a',
                MoritaCaseB::B => 'b',
                MoritaCaseB::C => 'c',
                MoritaCaseB::D => 'd',
            };
            *letters.entry(got).or_insert(0) += 1;
            if got != subset_oracle(x, q, Some(p), m) || b.b_equivalent_to_a != odd {
                problems.push(format!("F{m} B (q,p,x)=({q},{p},{x}): {got}, flag {}", b.b_equivalent_to_a));
            }
            let d = classify_morita_d(&s(x), &s(q)).unwrap();
            let got = match d.case {
                MoritaCaseD::A => 'a',
                MoritaCaseD::B => 'b',
                MoritaCaseD::C => 'c',
            };
            if got != subset_oracle(x, q, None, m) || d.b_equivalent_to_a != odd {
                problems.push(format!("F{m} D (q,x)=({q},{x}): {got}"));
            }
        }
        for mode in [ClassifyMode::B, ClassifyMode::D] {
            let args = ClassifyArgs { characteristic: m, q: None, p: None, x: None, mode, sweep: true };
            let report = run_on(Suite::Classify(args), None, Caps { samples: 400, ..Caps::default() }, 1);
            failures(&format!("sweep F{m}"), &report, &mut problems);
        }
        if letters.len() < 3 {
            problems.push(format!("F{m}: only cases {letters:?} sampled"));
        }
    }
    let single = ClassifyArgs {
        characteristic: 17,
        q: Some("2".into()),
        p: Some("3".into()),
        x: Some("3".into()),
        mode: ClassifyMode::B,
        sweep: false,
    };
    let report = run_on(Suite::Classify(single), None, Caps::default(), 0);
    if report.cases.iter().find(|c| c.name == "case").map(|c| c.detail.as_str()) != Some("c") {
        problems.push("F17 (q,p,x)=(2,3,3) is not case c".into());
    }
    verdict(8, "Morita classifiers agree with subset membership over F_17 and F_13, odd-order flag", &problems);
}

fn full_suite(seed: u64, workers: usize) -> Vec<String> {
    let caps = Caps { max_len: 3, max_ydeg: 1, samples: 40 };
    let runs: Vec<(Suite, Option<&str>)> = vec![
        (Suite::Validate, Some("split_zero")),
        (Suite::Relations, Some("pair_zero")),
        (Suite::Pbw, Some("pair_zero_n4")),
        (Suite::Pbw, Some("mixed_gamma")),
        (Suite::Decompose, Some("split_b")),
        (Suite::Typed, Some("split_zero")),
        (Suite::Cyclo, Some("split_zero")),
        (Suite::Orbits, Some("split_a")),
        (Suite::Coxeter { max_rank: 3 }, None),
        (
            Suite::Classify(ClassifyArgs {
                characteristic: 13,
                q: None,
                p: None,
                x: None,
                mode: ClassifyMode::B,
                sweep: true,
            }),
            None,
        ),
    ];
    runs.into_iter()
        .map(|(suite, cfg)| {
            let rc = RunConfig {
                config: cfg.map(config_path),
                caps,
                seed,
                format: Format::Json,
                timing: false,
                workers,
            };
            run(&suite, &rc).unwrap().to_json()
        })
        .collect()
}

#[test]
fn criterion_9_determinism() {
    let mut problems = Vec::new();
    let first = full_suite(42, 1);
    let second = full_suite(42, 3);
    for (k, (a, b)) in first.iter().zip(&second).enumerate() {
        if a != b {
            problems.push(format!("run {k} differs between identical invocations"));
        }
    }
    if !first[2].contains("\"seed\": 42") {
        problems.push("seed missing from the report header".into());
    }
    verdict(9, "two runs of the full suite with one seed give byte-identical reports", &problems);
}
