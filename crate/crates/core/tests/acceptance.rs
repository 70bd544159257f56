//! Acceptance suite: one test per criterion, each asserting exact values
//! and printing a `PASS criterion N` line with its runtime. Run with
//! `cargo test -p recess --test acceptance -- --nocapture` to see the
//! per-criterion table.

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use recess::arrangement::{
    cone_arrangement, intersection_poset, parse_arrangement, Arrangement,
};
use recess::families::{
    binom_convolution_check, braid, catalan, chi_from_levels, exp_level_formula, ish,
    levels_from_chi, shi, ExponentialFamily,
};
use recess::regions::{chi_via_regions, enumerate_regions, level_histogram, levels_via_formula};
use recess::semilattice::{
    chi_identity_check, parse_semilattice, uniform_matroid_flats, validate, wachs_deletion,
    GeometricSemilattice,
};
use recess::verify::{
    all_passed, bijection_checks, closure_checks, cone_checks, fuzz_suite, indexing_shift_check,
    semilattice_checks, Check,
};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_arrangements() -> Vec<(String, Arrangement)> {
    let mut names: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("corpus directory present")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "arr"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            let arr = parse_arrangement(&text)
                .unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_name().unwrap().to_string_lossy().into_owned(), arr)
        })
        .collect()
}

fn corpus_semilattices() -> Vec<(String, GeometricSemilattice)> {
    let mut names: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("corpus directory present")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "poset"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            let (data, _) = parse_semilattice(&text).unwrap();
            let m = validate(&data).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_name().unwrap().to_string_lossy().into_owned(), m)
        })
        .collect()
}

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

fn assert_all(context: &str, checks: &[Check]) {
    for c in checks {
        assert!(c.result.is_ok(), "{context}: {} -> {:?}", c.name, c.result);
    }
}

fn finish(criterion: &str, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its budget: {elapsed:?} >= {budget:?}"
    );
    println!("PASS criterion {criterion}: {what} ({elapsed:?})");
}

#[test]
fn criterion_01_braid3() {
    let started = Instant::now();
    let b3 = braid(3).unwrap();
    let ip = intersection_poset(&b3);
    let chi = ip.poset().char_poly(3).unwrap();
    assert_eq!(chi.to_string(), "t^3 - 3*t^2 + 2*t");
    let (r, b) = ip.poset().zaslavsky(3).unwrap();
    assert_eq!(r, BigInt::from(6));
    assert_eq!(b, BigInt::from(0));
    let hist = level_histogram(&b3);
    assert_eq!(hist, ints(&[0, 0, 0, 6]));
    assert_eq!(levels_via_formula(&b3), hist);
    finish(
        "1",
        "Braid(3) chi, r, b, histogram, formula = enumeration",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_shi3() {
    let started = Instant::now();
    let s3 = shi(3).unwrap();
    assert_eq!(enumerate_regions(&s3).len(), 16);
    let hist = level_histogram(&s3);
    assert_eq!(hist, ints(&[0, 4, 6, 6]));
    assert_eq!(levels_via_formula(&s3), hist);
    let chi = chi_from_levels(&s3).unwrap();
    assert_eq!(chi.to_string(), "t^3 - 6*t^2 + 9*t");
    assert_eq!(chi, intersection_poset(&s3).poset().char_poly(3).unwrap());
    assert_eq!(levels_from_chi(&s3).unwrap(), hist);
    finish(
        "2",
        "Shi(3) 16 regions, histogram both routes, chi reconstruction inverts",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_03_catalan3() {
    let started = Instant::now();
    let c3 = catalan(3).unwrap();
    assert_eq!(enumerate_regions(&c3).len(), 30);
    let hist = level_histogram(&c3);
    assert_eq!(hist, ints(&[0, 12, 12, 6]));
    assert_eq!(levels_via_formula(&c3), hist);
    finish(
        "3",
        "Catalan(3) 30 regions, histogram (0,12,12,6) both routes",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_04_fuzz() {
    let started = Instant::now();
    let checks = fuzz_suite(100, 20260810);
    assert!(all_passed(&checks), "{checks:?}");
    finish(
        "4",
        "level identities on 100 random arrangements",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_05_bijection() {
    let started = Instant::now();
    for (name, arr) in corpus_arrangements() {
        assert_all(&name, &bijection_checks(&arr));
    }
    finish(
        "5",
        "split/join round trip and per-flat counts on the corpus",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_06_cone() {
    let started = Instant::now();
    for (name, arr) in corpus_arrangements() {
        assert_all(&name, &cone_checks(&arr));
        let m = GeometricSemilattice::from_intersection_poset(&intersection_poset(&arr));
        assert_all(&name, &closure_checks(&m));
        assert_all(&name, &semilattice_checks(&m));
    }
    // Wachs round trip on uniform matroids (k <= 3, width <= 6); the
    // per-atom pinned isomorphism runs inside the semilattice checks.
    for k in 1..=3usize {
        for width in k..=6usize {
            let l = uniform_matroid_flats(k, width);
            assert_all(&format!("U_{{{k},{width}}}"), &semilattice_checks(&l));
            assert_all(&format!("U_{{{k},{width}}}"), &closure_checks(&l));
        }
    }
    // Wachs round trip on the cone poset itself with a = H0
    for (name, arr) in corpus_arrangements() {
        if arr.len() > 5 {
            continue;
        }
        let lca = intersection_poset(&cone_arrangement(&arr));
        let l = GeometricSemilattice::from_intersection_poset(&lca);
        assert_all(&format!("{name} cone"), &semilattice_checks(&l));
    }
    finish(
        "6",
        "cone isomorphisms, lattice axioms, closure laws, Wachs round trips",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_07_chi_identity() {
    let started = Instant::now();
    for (name, arr) in corpus_arrangements() {
        let ip = intersection_poset(&arr);
        let m = GeometricSemilattice::from_intersection_poset(&ip);
        let (_, _, ok) = chi_identity_check(&m);
        assert!(ok, "{name}: chi identity");
        let chi = ip.poset().char_poly(arr.dim()).unwrap();
        assert_eq!(
            chi_via_regions(&arr).to_int().as_ref(),
            Some(&chi),
            "{name}: chi via regions"
        );
    }
    for (name, m) in corpus_semilattices() {
        let (_, _, ok) = chi_identity_check(&m);
        assert!(ok, "{name}: chi identity");
    }
    // non-realizable-style inputs: deletions of uniform matroid lattices
    for (k, width) in [(2usize, 4usize), (2, 5), (3, 5), (3, 6)] {
        let l = uniform_matroid_flats(k, width);
        for atom in [0, width - 1] {
            let m = wachs_deletion(&l, atom);
            let (_, _, ok) = chi_identity_check(&m);
            assert!(ok, "U_{{{k},{width}}} minus atom {atom}: chi identity");
        }
    }
    finish(
        "7",
        "semilattice chi identity and region-assembled chi on the corpus",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_exponential() {
    let started = Instant::now();
    for fam in [
        ExponentialFamily::shi(),
        ExponentialFamily::catalan(),
        ExponentialFamily::semiorder(),
    ] {
        for n in 1..=4usize {
            let table = fam.level_table(n);
            for level in 0..=n {
                assert_eq!(
                    exp_level_formula(&fam, n, level),
                    table[level],
                    "{} n={n} level={level}",
                    fam.name()
                );
            }
        }
        for n in 0..=4usize {
            for l1 in 0..=3usize {
                for l2 in 0..=(3 - l1) {
                    let (lhs, rhs, equal) = binom_convolution_check(&fam, n, l1, l2);
                    assert!(
                        equal,
                        "{} n={n} l1={l1} l2={l2}: {lhs} vs {rhs}",
                        fam.name()
                    );
                }
            }
        }
    }
    assert_eq!(enumerate_regions(&shi(4).unwrap()).len(), 125);
    assert_eq!(enumerate_regions(&catalan(4).unwrap()).len(), 336);
    for n in 1..=4usize {
        let s = shi(n).unwrap();
        let i = ish(n).unwrap();
        assert_eq!(
            intersection_poset(&s).poset().char_poly(n).unwrap(),
            intersection_poset(&i).poset().char_poly(n).unwrap(),
            "shi/ish chi n={n}"
        );
        assert_eq!(
            level_histogram(&s),
            level_histogram(&i),
            "shi/ish histogram n={n}"
        );
    }
    finish(
        "8",
        "set-partition formula, binomial convolution, Shi = Ish levels (n <= 4)",
        started,
        Duration::from_secs(180),
    );
}

#[test]
fn criterion_09_level_not_characteristic() {
    let started = Instant::now();
    let parallel = parse_arrangement(
        &fs::read_to_string(corpus_dir().join("fig1_parallel.arr")).unwrap(),
    )
    .unwrap();
    let concurrent = parse_arrangement(
        &fs::read_to_string(corpus_dir().join("fig1_concurrent.arr")).unwrap(),
    )
    .unwrap();
    let chi_p = intersection_poset(&parallel).poset().char_poly(2).unwrap();
    let chi_c = intersection_poset(&concurrent).poset().char_poly(2).unwrap();
    assert_eq!(chi_p, chi_c);
    assert_eq!(chi_p.to_string(), "t^2 - 3*t + 2");
    assert_eq!(level_histogram(&parallel), ints(&[0, 2, 4]));
    assert_eq!(level_histogram(&concurrent), ints(&[0, 0, 6]));
    finish(
        "9",
        "equal chi, different level histograms (level is not characteristic)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_10_indexing_shift() {
    let started = Instant::now();
    for (name, arr) in corpus_arrangements() {
        let check = indexing_shift_check(&arr);
        assert!(check.result.is_ok(), "{name}: {:?}", check.result);
    }
    finish(
        "10",
        "semilattice distribution equals essentialized histogram on the corpus",
        started,
        Duration::from_secs(60),
    );
}
