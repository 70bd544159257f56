//! Cross-module invariant suite. Every check returns a named verdict so
//! the CLI can print a pass/fail table; the same checks back the
//! acceptance tests. Checks compare independently computed routes (poset
//! formula vs region enumeration, combinatorial cone vs geometric cone)
//! for exact equality.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{
    centralize, cone_arrangement, essentialize, intersection_poset, localization, restriction,
    Arrangement, Hyperplane,
};
use crate::atoms::AtomSet;
use crate::posets::{isomorphism, isomorphism_with_pins, RankedPoset};
use crate::ratlin::{rat_int, Rat};
use crate::regions::{
    chi_via_regions, enumerate_regions, is_relatively_bounded, level_histogram,
    levels_via_formula, phi_split, psi_join, recession_cone,
};
use crate::semilattice::{
    chi_identity_check, closure, cone, level_distribution, wachs_deletion, GeometricSemilattice,
};

/// One named verdict.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub result: Result<(), String>,
}

impl Check {
    fn of(name: impl Into<String>, result: Result<(), String>) -> Self {
        Check {
            name: name.into(),
            result,
        }
    }

    fn pass(name: impl Into<String>) -> Self {
        Check::of(name, Ok(()))
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, got: T, want: T) -> Self {
        if got == want {
            Check::pass(name)
        } else {
            Check::of(name, Err(format!("got {got:?}, want {want:?}")))
        }
    }

    fn require(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::of(name, Err(detail.into()))
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.result.is_ok())
}

/// The level-identity subset used by the fuzz suite: formula equals
/// enumeration, total is r, the bottom entry is b, the top entry is the
/// region count of the centralization.
pub fn level_identity_checks(arr: &Arrangement) -> Vec<Check> {
    let n = arr.dim();
    let ip = intersection_poset(arr);
    let (r, b) = ip.poset().zaslavsky(n).expect("ambient bounds rank");
    let rank = ip.poset().max_rank();
    let hist = level_histogram(arr);
    let formula = levels_via_formula(arr);
    let total: BigInt = hist.iter().sum();
    let cent = centralize(arr);
    let (r_cent, _) = intersection_poset(&cent.arr)
        .poset()
        .zaslavsky(n)
        .expect("ambient bounds rank");
    vec![
        Check::eq("levels: formula equals enumeration", formula, hist.clone()),
        Check::eq("levels: total equals r", total, r.clone()),
        Check::eq("levels: entry at n - rank equals b", hist[n - rank].clone(), b),
        Check::eq("levels: entry at n equals r of centralization", hist[n].clone(), r_cent),
    ]
}

/// Zaslavsky counts against direct enumeration.
pub fn count_checks(arr: &Arrangement) -> Vec<Check> {
    let ip = intersection_poset(arr);
    let (r, b) = ip.poset().zaslavsky(arr.dim()).expect("ambient bounds rank");
    let regions = enumerate_regions(arr);
    let bounded = regions
        .iter()
        .filter(|reg| is_relatively_bounded(arr, reg))
        .count();
    vec![
        Check::eq("zaslavsky: r equals region count", r, BigInt::from(regions.len())),
        Check::eq(
            "zaslavsky: b equals relatively bounded count",
            b,
            BigInt::from(bounded),
        ),
    ]
}

/// Bijection checks: round trips through split/join and the per-flat
/// product counts.
pub fn bijection_checks(arr: &Arrangement) -> Vec<Check> {
    let cent = centralize(arr);
    let lc = intersection_poset(&cent.arr);
    let mut per_flat = vec![0usize; lc.len()];
    let mut out = Vec::new();
    for region in enumerate_regions(arr) {
        let rc = recession_cone(arr, &region);
        let Some(v_idx) = lc.flat_index(&rc.span) else {
            out.push(Check::of(
                "bijection: cone span is a flat of the centralization",
                Err(format!("region {} span not found", region.sign_string())),
            ));
            continue;
        };
        per_flat[v_idx] += 1;
        let (ru, rb) = match phi_split(arr, &rc.span, &region) {
            Ok(pair) => pair,
            Err(e) => {
                out.push(Check::of(
                    "bijection: split succeeds",
                    Err(format!("region {}: {e}", region.sign_string())),
                ));
                continue;
            }
        };
        if !is_relatively_bounded(&localization(arr, &rc.span).arr, &rb) {
            out.push(Check::of(
                "bijection: bounded part is relatively bounded",
                Err(format!("region {}", region.sign_string())),
            ));
        }
        let back = psi_join(arr, &rc.span, &ru, &rb);
        if back.sign != region.sign {
            out.push(Check::of(
                "bijection: join inverts split",
                Err(format!(
                    "region {} came back as {}",
                    region.sign_string(),
                    back.sign_string()
                )),
            ));
        }
    }
    if out.is_empty() {
        out.push(Check::pass("bijection: split/join round trip on every region"));
    }
    let mut products_ok = true;
    let mut detail = String::new();
    for v_idx in 0..lc.len() {
        let v = lc.flat(v_idx);
        let rest = restriction(&cent.arr, v);
        let (r, _) = intersection_poset(&rest.arr)
            .poset()
            .zaslavsky(rest.arr.dim())
            .expect("ambient bounds rank");
        let loc = localization(arr, v);
        let (_, b) = intersection_poset(&loc.arr)
            .poset()
            .zaslavsky(loc.arr.dim())
            .expect("ambient bounds rank");
        if BigInt::from(per_flat[v_idx]) != r * b {
            products_ok = false;
            detail = format!("flat {v_idx}: {} regions", per_flat[v_idx]);
            break;
        }
    }
    out.push(Check::require(
        "bijection: per-flat counts are r * b products",
        products_ok,
        detail,
    ));
    out
}

/// Cone correspondences: the geometric cone poset against the
/// combinatorial cone (with the distinguished atoms pinned) and the three
/// induced-subposet identifications of the cone poset.
pub fn cone_checks(arr: &Arrangement) -> Vec<Check> {
    let mut out = Vec::new();
    let ip = intersection_poset(arr);
    let m = GeometricSemilattice::from_intersection_poset(&ip);
    let cm = cone(&m);
    let ca = cone_arrangement(arr);
    let lca = intersection_poset(&ca);

    let a0_elem = (0..cm.len()).find(|&i| cm.element(i) == AtomSet::singleton(cm.a0()));
    let h0_flat = (0..lca.len()).find(|&i| lca.atom_set(i) == AtomSet::singleton(0));
    match (a0_elem, h0_flat) {
        (Some(a0_elem), Some(h0_flat)) => {
            let iso = isomorphism_with_pins(cm.poset(), lca.poset(), &[(a0_elem, h0_flat)]);
            out.push(Check::require(
                "cone: combinatorial cone matches geometric cone with a0 -> H0",
                iso.is_some(),
                "no pinned isomorphism found",
            ));
        }
        _ => out.push(Check::of(
            "cone: combinatorial cone matches geometric cone with a0 -> H0",
            Err("distinguished atoms not found".into()),
        )),
    }

    // L(cA) minus the filter above H0 is L(A)
    let below: Vec<usize> = (0..lca.len()).filter(|&i| !lca.atom_set(i).contains(0)).collect();
    let sets: Vec<AtomSet> = below.iter().map(|&i| lca.atom_set(i)).collect();
    let ranks: Vec<usize> = below.iter().map(|&i| lca.rank(i)).collect();
    let complement = RankedPoset::from_atom_sets(&sets, &ranks);
    out.push(Check::require(
        "cone: complement of the H0 filter matches L(A)",
        isomorphism(&complement, ip.poset()).is_some(),
        "posets differ",
    ));

    // the filter above H0 is L(centralization)
    let cent = centralize(arr);
    let lcent = intersection_poset(&cent.arr);
    let above: Vec<usize> = (0..lca.len()).filter(|&i| lca.atom_set(i).contains(0)).collect();
    let sets: Vec<AtomSet> = above.iter().map(|&i| lca.atom_set(i)).collect();
    let ranks: Vec<usize> = above.iter().map(|&i| lca.rank(i) - 1).collect();
    let filter = RankedPoset::from_atom_sets(&sets, &ranks);
    out.push(Check::require(
        "cone: filter above H0 matches L(centralization)",
        isomorphism(&filter, lcent.poset()).is_some(),
        "posets differ",
    ));

    // for every flat V of the centralization, the ideal below its image
    // minus the H0 filter matches L(localization)
    let zero = Rat::zero();
    let mut ok = true;
    let mut detail = String::new();
    for v_idx in 0..lcent.len() {
        let v = lcent.flat(v_idx);
        let mut image = AtomSet::singleton(0);
        for (i, h) in arr.hyperplanes().iter().enumerate() {
            if v.implies_equation(&h.normal, &zero) {
                image.insert(i + 1);
            }
        }
        let Some(w_idx) = (0..lca.len()).find(|&i| lca.atom_set(i) == image) else {
            ok = false;
            detail = format!("image of flat {v_idx} not found in L(cA)");
            break;
        };
        let keep: Vec<usize> = (0..lca.len())
            .filter(|&i| lca.poset().leq(i, w_idx) && !lca.atom_set(i).contains(0))
            .collect();
        let sets: Vec<AtomSet> = keep.iter().map(|&i| lca.atom_set(i)).collect();
        let ranks: Vec<usize> = keep.iter().map(|&i| lca.rank(i)).collect();
        let slice = RankedPoset::from_atom_sets(&sets, &ranks);
        let loc = localization(arr, v);
        if isomorphism(&slice, intersection_poset(&loc.arr).poset()).is_none() {
            ok = false;
            detail = format!("flat {v_idx} localization slice differs");
            break;
        }
    }
    out.push(Check::require(
        "cone: ideal-minus-filter slices match localizations",
        ok,
        detail,
    ));

    // combinatorial centralization against the geometric one
    let cc = crate::semilattice::centralization(&m);
    out.push(Check::require(
        "centralization: combinatorial matches geometric",
        isomorphism(cc.poset(), lcent.poset()).is_some(),
        "posets differ",
    ));

    // combinatorial localizations against their geometric counterparts:
    // an underlined element corresponds to the intersection of the
    // centralized hyperplanes it contains
    let cent_idx = cm.centralization_indices();
    let mut ok = true;
    let mut detail = String::new();
    for &ci in &cent_idx {
        let ms = cm.localization(ci);
        let rows: Vec<(Vec<Rat>, Rat)> = cm
            .element(ci)
            .iter()
            .filter(|&i| i != cm.a0())
            .map(|i| (arr.hyperplane(i).normal.clone(), Rat::zero()))
            .collect();
        let v = crate::ratlin::solve_affine(arr.dim(), &rows)
            .expect("homogeneous system contains the origin");
        if lcent.flat_index(&v).is_none() {
            ok = false;
            detail = format!("cone element {ci} has no matching flat");
            break;
        }
        let loc = localization(arr, &v);
        if isomorphism(ms.poset(), intersection_poset(&loc.arr).poset()).is_none() {
            ok = false;
            detail = format!("cone element {ci} localization differs from its flat's");
            break;
        }
    }
    out.push(Check::require(
        "localization: combinatorial matches geometric flat by flat",
        ok,
        detail,
    ));

    out
}

/// Restriction posets against principal order filters of L(A).
pub fn restriction_filter_checks(arr: &Arrangement) -> Vec<Check> {
    let ip = intersection_poset(arr);
    for v_idx in 0..ip.len() {
        let rest = restriction(arr, ip.flat(v_idx));
        let (filter, _) = ip.poset().filter_at(v_idx);
        if isomorphism(intersection_poset(&rest.arr).poset(), &filter).is_none() {
            return vec![Check::of(
                "restriction: posets are principal filters",
                Err(format!("flat {v_idx} differs")),
            )];
        }
    }
    vec![Check::pass("restriction: posets are principal filters")]
}

/// Characteristic-polynomial identities for an arrangement.
pub fn chi_checks(arr: &Arrangement) -> Vec<Check> {
    let ip = intersection_poset(arr);
    let chi = ip.poset().char_poly(arr.dim()).expect("ambient bounds rank");
    let via_regions = chi_via_regions(arr);
    let m = GeometricSemilattice::from_intersection_poset(&ip);
    let (_, _, identity_ok) = chi_identity_check(&m);
    vec![
        Check::require(
            "chi: region-assembled polynomial matches the Mobius one",
            via_regions.to_int().as_ref() == Some(&chi),
            format!("got {via_regions}, want {chi}"),
        ),
        Check::require("chi: semilattice identity holds", identity_ok, "sides differ"),
    ]
}

/// The ambient-vs-rank indexing shift between the semilattice level
/// distribution and the geometric histogram of the essentialization.
pub fn indexing_shift_check(arr: &Arrangement) -> Check {
    let ip = intersection_poset(arr);
    let m = GeometricSemilattice::from_intersection_poset(&ip);
    let dist = level_distribution(&m);
    let ess = essentialize(arr);
    let hist = level_histogram(&ess.arr);
    Check::eq(
        "levels: semilattice distribution equals essentialized histogram",
        dist,
        hist,
    )
}

/// Closure-operator and covering checks, exhaustive when the atom count
/// permits.
pub fn closure_checks(m: &GeometricSemilattice) -> Vec<Check> {
    let total = m.atom_count() + 1;
    if total > 9 {
        return vec![Check::pass("closure: skipped (more than 8 atoms)")];
    }
    let cm = cone(m);
    let all: Vec<AtomSet> = (0..(1u64 << total)).map(AtomSet).collect();
    let closures: Vec<AtomSet> = all.iter().map(|&s| closure(m, s)).collect();
    for (i, &s) in all.iter().enumerate() {
        if !s.is_subset(closures[i]) {
            return vec![Check::of("closure: extensive", Err(format!("{s}")))];
        }
        if cm.index_of(closures[i]).is_none() {
            return vec![Check::of("closure: lands in the cone", Err(format!("{s}")))];
        }
        if closure(m, closures[i]) != closures[i] {
            return vec![Check::of("closure: idempotent", Err(format!("{s}")))];
        }
    }
    for (i, &s) in all.iter().enumerate() {
        for (j, &t) in all.iter().enumerate() {
            if s.is_subset(t) && !closures[i].is_subset(closures[j]) {
                return vec![Check::of(
                    "closure: monotone",
                    Err(format!("{s} within {t}")),
                )];
            }
        }
    }
    for i in 0..cm.len() {
        let s = cm.element(i);
        for a in 0..cm.atom_count() {
            if s.contains(a) {
                continue;
            }
            let c = closure(m, s.union(AtomSet::singleton(a)));
            let j = cm.index_of(c).expect("lands in cone");
            if cm.rank(j) != cm.rank(i) + 1 {
                return vec![Check::of(
                    "closure: covering property",
                    Err(format!("{s} plus atom {a}")),
                )];
            }
        }
    }
    vec![Check::pass("closure: operator laws and covering property (exhaustive)")]
}

/// Structural checks of the cone as a geometric lattice, plus the level
/// distribution sanity identities for the base semilattice.
pub fn semilattice_checks(m: &GeometricSemilattice) -> Vec<Check> {
    let mut out = Vec::new();
    let cm = cone(m);
    let p = cm.poset();
    let tops: Vec<usize> = (0..cm.len())
        .filter(|&i| !(0..cm.len()).any(|j| j != i && p.leq(i, j)))
        .collect();
    out.push(Check::require(
        "cone: lattice with a unique top",
        tops.len() == 1,
        format!("{} maximal elements", tops.len()),
    ));
    let mut semimodular = true;
    let mut atomistic = true;
    for s in 0..cm.len() {
        if AtomSet::from_indices(cm.element(s).iter()) != cm.element(s) {
            atomistic = false;
        }
        for t in 0..cm.len() {
            let join = closure(m, cm.element(s).union(cm.element(t)));
            let meet = cm.element(s).intersection(cm.element(t));
            let (Some(ji), Some(mi)) = (cm.index_of(join), cm.index_of(meet)) else {
                semimodular = false;
                continue;
            };
            if cm.rank(s) + cm.rank(t) < cm.rank(ji) + cm.rank(mi) {
                semimodular = false;
            }
        }
    }
    out.push(Check::require("cone: atomistic", atomistic, "element not a join of atoms"));
    out.push(Check::require("cone: semimodular", semimodular, "rank inequality fails"));

    let dist = level_distribution(m);
    let (r, b) = m.region_counts();
    let total: BigInt = dist.iter().sum();
    out.push(Check::eq("levels: distribution totals r(M)", total, r));
    out.push(Check::eq("levels: r_0(M) equals b(M)", dist[0].clone(), b));
    out.push(Check::require(
        "levels: distribution entries nonnegative",
        dist.iter().all(|x| !x.is_negative()),
        "negative entry",
    ));
    let (_, _, chi_ok) = chi_identity_check(m);
    out.push(Check::require("chi: semilattice identity holds", chi_ok, "sides differ"));

    // Wachs round trip when the input is a small geometric lattice
    let has_top = {
        let p = m.poset();
        let maxes: Vec<usize> = (0..m.len())
            .filter(|&i| !(0..m.len()).any(|j| j != i && p.leq(i, j)))
            .collect();
        maxes.len() == 1
    };
    if has_top && m.atom_count() <= 7 && m.atom_count() >= 1 {
        let mut ok = true;
        for atom in 0..m.atom_count() {
            let deleted = wachs_deletion(m, atom);
            let dm = cone(&deleted);
            let a0_elem = (0..dm.len())
                .find(|&i| dm.element(i) == AtomSet::singleton(dm.a0()))
                .expect("a0 atom present");
            let target = m
                .index_of(AtomSet::singleton(atom))
                .expect("atom singleton present");
            if isomorphism_with_pins(dm.poset(), m.poset(), &[(a0_elem, target)]).is_none() {
                ok = false;
                break;
            }
        }
        out.push(Check::require(
            "cone: Wachs round trip over every atom",
            ok,
            "cone of a deletion does not recover the lattice",
        ));
    }
    out
}

/// Full suite for an arrangement file.
pub fn verify_arrangement(arr: &Arrangement) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(count_checks(arr));
    out.extend(level_identity_checks(arr));
    out.extend(chi_checks(arr));
    out.extend(bijection_checks(arr));
    out.extend(cone_checks(arr));
    out.extend(restriction_filter_checks(arr));
    out.push(indexing_shift_check(arr));
    let m = GeometricSemilattice::from_intersection_poset(&intersection_poset(arr));
    out.extend(closure_checks(&m));
    out.extend(semilattice_checks(&m));
    out
}

/// Full suite for a semilattice file.
pub fn verify_semilattice(m: &GeometricSemilattice) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(closure_checks(m));
    out.extend(semilattice_checks(m));
    out
}

/// Deterministic random arrangement: dimension 2 or 3, up to 6
/// hyperplanes with small integer data, duplicates skipped, degenerate
/// configurations (parallels, concurrences) welcome.
pub fn random_arrangement(rng: &mut ChaCha8Rng) -> Arrangement {
    let dim = rng.gen_range(2..=3usize);
    let count = rng.gen_range(1..=6usize);
    let mut hyps: Vec<Hyperplane> = Vec::new();
    let mut guard = 0;
    while hyps.len() < count && guard < 200 {
        guard += 1;
        let normal: Vec<Rat> = (0..dim).map(|_| rat_int(rng.gen_range(-5..=5))).collect();
        if normal.iter().all(Rat::is_zero) {
            continue;
        }
        let offset = rat_int(rng.gen_range(-5..=5));
        let candidate = Hyperplane::new(normal, offset);
        let key = candidate.canonical_key();
        if hyps.iter().any(|h| h.canonical_key() == key) {
            continue;
        }
        hyps.push(candidate);
    }
    Arrangement::new(dim, hyps).expect("deduplicated random hyperplanes")
}

/// Runs the level-identity fuzz suite over `count` seeded random
/// arrangements; returns one aggregated check per identity.
pub fn fuzz_suite(count: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..count {
        let arr = random_arrangement(&mut rng);
        let checks = level_identity_checks(&arr);
        if let Some(bad) = checks.iter().find(|c| c.result.is_err()) {
            return vec![Check::of(
                format!("fuzz: case {case} of {count}"),
                Err(format!(
                    "{} failed on {:?}: {}",
                    bad.name,
                    arr,
                    bad.result.clone().unwrap_err()
                )),
            )];
        }
    }
    vec![Check::pass(format!(
        "fuzz: level identities on {count} random arrangements (seed {seed})"
    ))]
}
