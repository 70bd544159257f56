//! Regions of an arrangement and their level statistic.
//!
//! Regions are enumerated exactly by incremental hyperplane insertion,
//! each carrying a rational witness point. The recession cone of a region
//! is handled in implicit form `{v : sign_i (w_i . v) >= 0}`; its span is
//! a flat of the centralization and the level of the region is the
//! dimension of that span. The level distribution is computed both from
//! the regions themselves and from a flat-by-flat product formula over
//! the centralization, and the two routes are checked against each other
//! throughout the test suite.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{
    centralize, intersection_poset, localization, restriction, Arrangement,
};
use crate::poly::RatPoly;
use crate::ratlin::{
    dot, feasible, implicit_equalities, solve_affine, AffineFlat, LinearSystem, Rat, Rel,
};

/// Which open side of a hyperplane a region lies on. `Pos` sorts before
/// `Neg`, so deriving `Ord` on sign vectors gives the lexicographic order
/// of their `+`/`-` strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Pos,
    Neg,
}

impl Side {
    pub fn of(value: &Rat) -> Option<Side> {
        if value.is_positive() {
            Some(Side::Pos)
        } else if value.is_negative() {
            Some(Side::Neg)
        } else {
            None
        }
    }

    pub fn sign(&self) -> i64 {
        match self {
            Side::Pos => 1,
            Side::Neg => -1,
        }
    }

    pub fn as_char(&self) -> char {
        match self {
            Side::Pos => '+',
            Side::Neg => '-',
        }
    }
}

/// Open cell of the arrangement complement: a sign vector together with
/// an exact interior witness point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub sign: Vec<Side>,
    pub witness: Vec<Rat>,
}

impl Region {
    pub fn sign_string(&self) -> String {
        self.sign.iter().map(Side::as_char).collect()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign_string())
    }
}

/// Strict system `sign_i (w_i . x - a_i) > 0` cutting out a region.
pub fn region_system(arr: &Arrangement, sign: &[Side]) -> LinearSystem {
    assert_eq!(sign.len(), arr.len());
    let mut sys = LinearSystem::new(arr.dim());
    for (h, s) in arr.hyperplanes().iter().zip(sign) {
        let coeffs: Vec<Rat> = h.normal.iter().map(|c| c * crate::ratlin::rat_int(s.sign())).collect();
        let rhs = &h.offset * crate::ratlin::rat_int(s.sign());
        sys.push(coeffs, Rel::Gt, rhs);
    }
    sys
}

/// Homogeneous closed system `sign_i (w_i . v) >= 0` for the recession cone.
pub fn cone_system(arr: &Arrangement, sign: &[Side]) -> LinearSystem {
    assert_eq!(sign.len(), arr.len());
    let mut sys = LinearSystem::new(arr.dim());
    for (h, s) in arr.hyperplanes().iter().zip(sign) {
        let coeffs: Vec<Rat> = h.normal.iter().map(|c| c * crate::ratlin::rat_int(s.sign())).collect();
        sys.push(coeffs, Rel::Ge, Rat::zero());
    }
    sys
}

/// All regions, in lexicographic sign-vector order, by incremental
/// insertion: each new hyperplane splits exactly the existing cells whose
/// interiors it meets, decided by two exact feasibility tests.
pub fn enumerate_regions(arr: &Arrangement) -> Vec<Region> {
    let n = arr.dim();
    // strict constraints per hyperplane and side, built once
    let strict = |i: usize, side: Side| {
        let h = arr.hyperplane(i);
        let s = crate::ratlin::rat_int(side.sign());
        let coeffs: Vec<Rat> = h.normal.iter().map(|c| c * &s).collect();
        (coeffs, &h.offset * &s)
    };
    let probe = |sign: &[Side], i: usize, side: Side| -> Option<Vec<Rat>> {
        let mut sys = LinearSystem::new(n);
        for (j, s) in sign.iter().enumerate() {
            let (coeffs, rhs) = strict(j, *s);
            sys.push(coeffs, Rel::Gt, rhs);
        }
        let (coeffs, rhs) = strict(i, side);
        sys.push(coeffs, Rel::Gt, rhs);
        feasible(&sys).witness().cloned()
    };

    let mut cells: Vec<Region> = vec![Region {
        sign: Vec::new(),
        witness: vec![Rat::zero(); n],
    }];
    for i in 0..arr.len() {
        let h = arr.hyperplane(i);
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let value = h.eval(&cell.witness);
            let (known, to_probe) = match Side::of(&value) {
                Some(side) => (Some(side), vec![flip(side)]),
                None => (None, vec![Side::Pos, Side::Neg]),
            };
            if let Some(side) = known {
                let mut sign = cell.sign.clone();
                sign.push(side);
                next.push(Region {
                    sign,
                    witness: cell.witness.clone(),
                });
            }
            for side in to_probe {
                if let Some(witness) = probe(&cell.sign, i, side) {
                    let mut sign = cell.sign.clone();
                    sign.push(side);
                    next.push(Region { sign, witness });
                }
            }
        }
        cells = next;
    }
    cells.sort_by(|a, b| a.sign.cmp(&b.sign));
    cells
}

fn flip(s: Side) -> Side {
    match s {
        Side::Pos => Side::Neg,
        Side::Neg => Side::Pos,
    }
}

/// Recession cone of a region in implicit form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecessionCone {
    /// Constraint indices forced to equality on the whole cone.
    pub implicit: Vec<usize>,
    /// Linear span of the cone: the flat cut out by the implicit
    /// equalities; always a flat of the centralization.
    pub span: AffineFlat,
}

impl RecessionCone {
    pub fn level(&self) -> usize {
        self.span.dim()
    }
}

pub fn recession_cone(arr: &Arrangement, region: &Region) -> RecessionCone {
    let sys = cone_system(arr, &region.sign);
    let implicit = implicit_equalities(&sys);
    let rows: Vec<(Vec<Rat>, Rat)> = implicit
        .iter()
        .map(|&i| (arr.hyperplane(i).normal.clone(), Rat::zero()))
        .collect();
    let span = solve_affine(arr.dim(), &rows).expect("homogeneous system contains the origin");
    RecessionCone { implicit, span }
}

/// Region counts by level, ambient-indexed `r_0 .. r_n`.
pub fn level_histogram(arr: &Arrangement) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); arr.dim() + 1];
    for region in enumerate_regions(arr) {
        let level = recession_cone(arr, region_ref(&region)).level();
        out[level] += BigInt::one();
    }
    out
}

fn region_ref(r: &Region) -> &Region {
    r
}

/// Level distribution from posets alone: for each flat `V` of the
/// centralization of rank `n - l`, the product of the region count of the
/// restriction of the centralization to `V` and the relatively bounded
/// count of the localization at `V`. No region enumeration is involved.
pub fn levels_via_formula(arr: &Arrangement) -> Vec<BigInt> {
    let n = arr.dim();
    let cent = centralize(arr);
    let lc = intersection_poset(&cent.arr);
    let mut out = vec![BigInt::zero(); n + 1];
    for v_idx in 0..lc.len() {
        let v = lc.flat(v_idx);
        let level = n - lc.rank(v_idx);
        let rest = restriction(&cent.arr, v);
        let (r, _) = intersection_poset(&rest.arr)
            .poset()
            .zaslavsky(rest.arr.dim())
            .expect("ambient dimension bounds the rank");
        let loc = localization(arr, v);
        let (_, b) = intersection_poset(&loc.arr)
            .poset()
            .zaslavsky(loc.arr.dim())
            .expect("ambient dimension bounds the rank");
        out[level] += r * b;
    }
    out
}

/// A region is relatively bounded iff its recession cone is the common
/// lineality space, i.e. every cone constraint is an implicit equality.
pub fn is_relatively_bounded(arr: &Arrangement, region: &Region) -> bool {
    let rc = recession_cone(arr, region);
    rc.implicit.len() == arr.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitError {
    /// The region's recession-cone span differs from the requested flat.
    FlatMismatch,
}

impl fmt::Display for SplitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitError::FlatMismatch => write!(f, "region's cone span is not the given flat"),
        }
    }
}

/// Splits a region with cone span `v` into its unbounded part (a region
/// of the restriction of the centralization to `v`) and its bounded part
/// (a relatively bounded region of the localization at `v`). The two sign
/// vectors partition the sign vector of the input region.
pub fn phi_split(
    arr: &Arrangement,
    v: &AffineFlat,
    region: &Region,
) -> Result<(Region, Region), SplitError> {
    let rc = recession_cone(arr, region);
    if rc.span != *v {
        return Err(SplitError::FlatMismatch);
    }
    let cent = centralize(arr);
    let loc = localization(arr, v);
    let rest = restriction(&cent.arr, v);
    let chart = &rest.chart;

    let bounded = Region {
        sign: loc.kept.iter().map(|&i| region.sign[i]).collect(),
        witness: region.witness.clone(),
    };
    debug_assert!(region_system(&loc.arr, &bounded.sign).holds_at(&bounded.witness));

    let kept: Vec<bool> = {
        let mut k = vec![false; arr.len()];
        for &i in &loc.kept {
            k[i] = true;
        }
        k
    };
    let mut sys = LinearSystem::new(chart.dim());
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        if kept[i] {
            continue;
        }
        let s = crate::ratlin::rat_int(region.sign[i].sign());
        let coeffs: Vec<Rat> = chart.basis.iter().map(|b| dot(&h.normal, b) * &s).collect();
        let rhs = -dot(&h.normal, &chart.origin) * &s;
        sys.push(coeffs, Rel::Gt, rhs);
    }
    let y = feasible(&sys)
        .witness()
        .expect("split of a region along its own cone span is nonempty")
        .clone();
    let sign: Vec<Side> = rest
        .arr
        .hyperplanes()
        .iter()
        .map(|h| Side::of(&h.eval(&y)).expect("witness avoids every restricted hyperplane"))
        .collect();
    let unbounded = Region { sign, witness: y };
    Ok((unbounded, bounded))
}

/// Inverse of [`phi_split`]: recombines the sign vectors of an unbounded
/// part and a bounded part into a region of the full arrangement with
/// cone span `v`. Infeasibility of the combined system would be an
/// implementation bug, not a caller error, so it panics.
pub fn psi_join(
    arr: &Arrangement,
    v: &AffineFlat,
    unbounded: &Region,
    bounded: &Region,
) -> Region {
    let cent = centralize(arr);
    let loc = localization(arr, v);
    let rest = restriction(&cent.arr, v);
    assert_eq!(unbounded.sign.len(), rest.arr.len(), "unbounded part shape");
    assert_eq!(bounded.sign.len(), loc.arr.len(), "bounded part shape");
    debug_assert!(region_system(&rest.arr, &unbounded.sign).holds_at(&unbounded.witness));
    debug_assert!(is_relatively_bounded(&loc.arr, bounded));

    let x_u = rest.chart.to_ambient(&unbounded.witness);
    let mut kept = vec![false; arr.len()];
    let mut sign: Vec<Option<Side>> = vec![None; arr.len()];
    for (pos, &i) in loc.kept.iter().enumerate() {
        kept[i] = true;
        sign[i] = Some(bounded.sign[pos]);
    }
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        if kept[i] {
            continue;
        }
        let value = dot(&h.normal, &x_u);
        sign[i] = Some(Side::of(&value).expect("chart witness avoids every trace"));
    }
    let sign: Vec<Side> = sign.into_iter().map(Option::unwrap).collect();
    let witness = feasible(&region_system(arr, &sign))
        .witness()
        .expect("recombined sign vector cuts a nonempty region")
        .clone();
    Region { sign, witness }
}

/// Characteristic polynomial assembled region by region:
/// `(-1)^n sum_R chi(restriction of centralization to V_R) / chi(-1)`,
/// each term of degree `dim(V_R)`. Equals the characteristic polynomial
/// of the arrangement exactly.
pub fn chi_via_regions(arr: &Arrangement) -> RatPoly {
    let n = arr.dim();
    let cent = centralize(arr);
    let mut counts: HashMap<AffineFlat, BigInt> = HashMap::new();
    for region in enumerate_regions(arr) {
        let rc = recession_cone(arr, &region);
        *counts.entry(rc.span).or_insert_with(BigInt::zero) += BigInt::one();
    }
    let mut acc = RatPoly::zero();
    let mut flats: Vec<(AffineFlat, BigInt)> = counts.into_iter().collect();
    flats.sort_by_key(|(f, _)| f.rank());
    for (flat, count) in flats {
        let rest = restriction(&cent.arr, &flat);
        let chi = intersection_poset(&rest.arr)
            .poset()
            .char_poly(flat.dim())
            .expect("ambient dimension bounds the rank");
        let at_minus_one = chi.eval(&BigInt::from(-1));
        let term = RatPoly::new(chi.scale(&count), at_minus_one);
        acc = acc.add(&term);
    }
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    acc.scale_int(&sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::families::{braid, shi};
    use crate::ratlin::{rat, rat_int};

    fn arr(dim: usize, rows: Vec<(Vec<i64>, i64)>) -> Arrangement {
        Arrangement::new(
            dim,
            rows.into_iter()
                .map(|(w, a)| Hyperplane::new(w.into_iter().map(rat_int).collect(), rat_int(a)))
                .collect(),
        )
        .unwrap()
    }

    fn counts(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|b| i64::try_from(b).unwrap()).collect()
    }

    #[test]
    fn braid3_has_six_regions() {
        let regions = enumerate_regions(&braid(3).unwrap());
        assert_eq!(regions.len(), 6);
        for r in &regions {
            assert!(region_system(&braid(3).unwrap(), &r.sign).holds_at(&r.witness));
        }
    }

    #[test]
    fn shi3_has_sixteen_regions() {
        assert_eq!(enumerate_regions(&shi(3).unwrap()).len(), 16);
    }

    #[test]
    fn empty_arrangement_single_region() {
        let a = Arrangement::empty(2);
        let regions = enumerate_regions(&a);
        assert_eq!(regions.len(), 1);
        assert!(regions[0].sign.is_empty());
        assert_eq!(counts(&level_histogram(&a)), vec![0, 0, 1]);
    }

    #[test]
    fn zero_dimensional_space() {
        let a = Arrangement::empty(0);
        let regions = enumerate_regions(&a);
        assert_eq!(regions.len(), 1);
        assert!(regions[0].witness.is_empty());
        assert_eq!(counts(&level_histogram(&a)), vec![1]);
        assert_eq!(counts(&levels_via_formula(&a)), vec![1]);
        let rc = recession_cone(&a, &regions[0]);
        assert_eq!(rc.level(), 0);
        assert!(is_relatively_bounded(&a, &regions[0]));
        let chi = chi_via_regions(&a);
        assert_eq!(chi.to_int().unwrap().to_string(), "1");
    }

    #[test]
    fn regions_sorted_lexicographically() {
        let regions = enumerate_regions(&shi(2).unwrap());
        let strings: Vec<String> = regions.iter().map(Region::sign_string).collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
        assert_eq!(strings, vec!["++", "+-", "--"]);
    }

    #[test]
    fn bounded_triangle_cell() {
        // x > 0, y > 0, x + y < 1 is a bounded cell of this arrangement
        let a = arr(2, vec![(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, 1], 1)]);
        let region = enumerate_regions(&a)
            .into_iter()
            .find(|r| r.sign == vec![Side::Pos, Side::Pos, Side::Neg])
            .expect("triangle cell exists");
        let rc = recession_cone(&a, &region);
        assert_eq!(rc.implicit, vec![0, 1, 2]);
        assert_eq!(rc.level(), 0);
        assert_eq!(rc.span.dim(), 0);
        assert!(is_relatively_bounded(&a, &region));
    }

    #[test]
    fn shi2_middle_strip_level_one() {
        let a = shi(2).unwrap();
        // middle strip: 0 < x1 - x2 < 1, sign (+, -)
        let region = enumerate_regions(&a)
            .into_iter()
            .find(|r| r.sign == vec![Side::Pos, Side::Neg])
            .unwrap();
        let rc = recession_cone(&a, &region);
        assert_eq!(rc.implicit, vec![0, 1]);
        assert_eq!(rc.level(), 1);
    }

    #[test]
    fn central_regions_have_full_level() {
        let b = braid(3).unwrap();
        for region in enumerate_regions(&b) {
            let rc = recession_cone(&b, &region);
            assert_eq!(rc.level(), 3);
            assert!(rc.implicit.is_empty());
        }
    }

    #[test]
    fn histogram_shi3() {
        assert_eq!(counts(&level_histogram(&shi(3).unwrap())), vec![0, 4, 6, 6]);
    }

    #[test]
    fn histogram_two_parallel_lines_in_plane() {
        let a = arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1)]);
        assert_eq!(counts(&level_histogram(&a)), vec![0, 1, 2]);
    }

    #[test]
    fn histogram_braid3() {
        assert_eq!(counts(&level_histogram(&braid(3).unwrap())), vec![0, 0, 0, 6]);
    }

    #[test]
    fn formula_matches_enumeration_on_examples() {
        for a in [
            shi(2).unwrap(),
            shi(3).unwrap(),
            braid(3).unwrap(),
            arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1), (vec![0, 1], 0)]),
            arr(2, vec![(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, -1], 0)]),
            Arrangement::empty(3),
        ] {
            assert_eq!(levels_via_formula(&a), level_histogram(&a), "{a:?}");
        }
    }

    #[test]
    fn formula_shi2_term_by_term() {
        let out = levels_via_formula(&shi(2).unwrap());
        assert_eq!(counts(&out), vec![0, 1, 2]);
    }

    #[test]
    fn split_and_join_round_trip_shi3() {
        let a = shi(3).unwrap();
        for region in enumerate_regions(&a) {
            let rc = recession_cone(&a, &region);
            let (ru, rb) = phi_split(&a, &rc.span, &region).unwrap();
            assert!(is_relatively_bounded(&localization(&a, &rc.span).arr, &rb));
            let back = psi_join(&a, &rc.span, &ru, &rb);
            assert_eq!(back.sign, region.sign);
            let rc2 = recession_cone(&a, &back);
            assert_eq!(rc2.span, rc.span);
        }
    }

    #[test]
    fn split_rejects_wrong_flat() {
        let a = shi(2).unwrap();
        let region = enumerate_regions(&a)
            .into_iter()
            .find(|r| r.sign == vec![Side::Pos, Side::Pos])
            .unwrap();
        let line = solve_affine(2, &[(vec![rat_int(1), rat_int(-1)], rat_int(0))]).unwrap();
        assert_eq!(
            phi_split(&a, &line, &region).unwrap_err(),
            SplitError::FlatMismatch
        );
    }

    #[test]
    fn split_shi2_middle_strip() {
        let a = shi(2).unwrap();
        let region = enumerate_regions(&a)
            .into_iter()
            .find(|r| r.sign == vec![Side::Pos, Side::Neg])
            .unwrap();
        let rc = recession_cone(&a, &region);
        let (ru, rb) = phi_split(&a, &rc.span, &region).unwrap();
        // restriction of the centralization to its only line is empty
        assert!(ru.sign.is_empty());
        // localization keeps both hyperplanes; the strip is the bounded part
        assert_eq!(rb.sign, vec![Side::Pos, Side::Neg]);
        let back = psi_join(&a, &rc.span, &ru, &rb);
        assert_eq!(back.sign, region.sign);
    }

    #[test]
    fn per_flat_counts_match_zaslavsky_products() {
        let a = shi(3).unwrap();
        let cent = centralize(&a);
        let lc = intersection_poset(&cent.arr);
        let mut by_flat: HashMap<usize, usize> = HashMap::new();
        for region in enumerate_regions(&a) {
            let rc = recession_cone(&a, &region);
            let id = lc.flat_index(&rc.span).expect("cone span is a flat");
            *by_flat.entry(id).or_insert(0) += 1;
        }
        for v_idx in 0..lc.len() {
            let v = lc.flat(v_idx);
            let rest = restriction(&cent.arr, v);
            let (r, _) = intersection_poset(&rest.arr).poset().zaslavsky(rest.arr.dim()).unwrap();
            let loc = localization(&a, v);
            let (_, b) = intersection_poset(&loc.arr).poset().zaslavsky(loc.arr.dim()).unwrap();
            let expected = r * b;
            let got = BigInt::from(by_flat.get(&v_idx).copied().unwrap_or(0));
            assert_eq!(got, expected, "flat {v_idx}");
        }
    }

    #[test]
    fn chi_via_regions_examples() {
        // Braid(3): all six regions share the minimum flat
        let chi = chi_via_regions(&braid(3).unwrap());
        assert_eq!(chi.to_int().unwrap().to_string(), "t^3 - 3*t^2 + 2*t");
        // Shi(2)
        let chi = chi_via_regions(&shi(2).unwrap());
        assert_eq!(chi.to_int().unwrap().to_string(), "t^2 - 2*t");
        // empty arrangement
        let chi = chi_via_regions(&Arrangement::empty(2));
        assert_eq!(chi.to_int().unwrap().to_string(), "t^2");
    }

    #[test]
    fn chi_via_regions_matches_char_poly() {
        for a in [
            shi(3).unwrap(),
            arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1), (vec![0, 1], 0)]),
        ] {
            let direct = intersection_poset(&a).poset().char_poly(a.dim()).unwrap();
            assert_eq!(chi_via_regions(&a).to_int().unwrap(), direct);
        }
    }

    /// A cone direction stays inside the region at any positive scale; a
    /// direction leaving the cone exits the region at a computable scale.
    #[test]
    fn cone_directions_translate_regions() {
        let cases = [
            shi(2).unwrap(),
            arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1), (vec![0, 1], 0)]),
            shi(3).unwrap(),
        ];
        for a in cases {
            for region in enumerate_regions(&a) {
                let rc = recession_cone(&a, &region);
                let csys = cone_system(&a, &region.sign);
                // one interior-ish sample per non-implicit constraint
                for j in 0..a.len() {
                    if rc.implicit.contains(&j) {
                        continue;
                    }
                    let mut probe = csys.clone();
                    probe.constraints[j].rel = Rel::Gt;
                    let v = feasible(&probe).witness().expect("cone has a point strict at j").clone();
                    for c in [1i64, 10, 100] {
                        let moved: Vec<Rat> = region
                            .witness
                            .iter()
                            .zip(&v)
                            .map(|(x, d)| x + d * rat_int(c))
                            .collect();
                        assert!(region_system(&a, &region.sign).holds_at(&moved));
                    }
                    // flip the sample across hyperplane j: outside the cone,
                    // and a large enough step leaves the region
                    let flipped: Vec<Rat> = v.iter().map(|d| -d).collect();
                    let h = a.hyperplane(j);
                    let s = rat_int(region.sign[j].sign());
                    let drop = dot(&h.normal, &flipped) * &s; // negative
                    assert!(drop.is_negative());
                    let slack = (dot(&h.normal, &region.witness) - &h.offset) * &s;
                    let scale = (&slack / -&drop) + rat_int(1);
                    let moved: Vec<Rat> = region
                        .witness
                        .iter()
                        .zip(&flipped)
                        .map(|(x, d)| x + d * &scale)
                        .collect();
                    assert!(!region_system(&a, &region.sign).holds_at(&moved));
                }
            }
        }
    }

    /// A single cone point can be strict on every constraint whose
    /// centralized hyperplane restricts nontrivially to the span.
    #[test]
    fn cone_interior_point_exists() {
        for a in [shi(2).unwrap(), shi(3).unwrap()] {
            for region in enumerate_regions(&a) {
                let rc = recession_cone(&a, &region);
                let csys = cone_system(&a, &region.sign);
                let mut total = vec![Rat::zero(); a.dim()];
                for j in 0..a.len() {
                    if rc.implicit.contains(&j) {
                        continue;
                    }
                    let mut probe = csys.clone();
                    probe.constraints[j].rel = Rel::Gt;
                    let v = feasible(&probe).witness().expect("nonimplicit constraint has slack").clone();
                    for (t, d) in total.iter_mut().zip(&v) {
                        *t += d;
                    }
                }
                // the sum is in the cone and strict on every nonimplicit index
                assert!(csys.holds_at(&total));
                for j in 0..a.len() {
                    if rc.implicit.contains(&j) {
                        continue;
                    }
                    let h = a.hyperplane(j);
                    let s = rat_int(region.sign[j].sign());
                    assert!((dot(&h.normal, &total) * &s).is_positive());
                }
            }
        }
    }

    #[test]
    fn region_count_invariant_under_unimodular_maps() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        let a = arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1), (vec![0, 1], 2), (vec![1, 1], -1)]);
        let base = enumerate_regions(&a).len();
        for _ in 0..5 {
            // random product of elementary integer shears and swaps
            let mut u = [vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]];
            for _ in 0..4 {
                let c = rat_int(rng.gen_range(-2..=2));
                if rng.gen_bool(0.5) {
                    // row0 += c * row1
                    let r1 = u[1].clone();
                    for (x, y) in u[0].iter_mut().zip(&r1) {
                        *x += &c * y;
                    }
                } else {
                    let r0 = u[0].clone();
                    for (x, y) in u[1].iter_mut().zip(&r0) {
                        *x += &c * y;
                    }
                }
            }
            let t = vec![rat(rng.gen_range(-3..=3), 2), rat(rng.gen_range(-3..=3), 2)];
            // x = U y + t maps hyperplane (w, a) to (U^T w, a - w.t)
            let mapped = Arrangement::new(
                2,
                a.hyperplanes()
                    .iter()
                    .map(|h| {
                        let w = vec![
                            &u[0][0] * &h.normal[0] + &u[1][0] * &h.normal[1],
                            &u[0][1] * &h.normal[0] + &u[1][1] * &h.normal[1],
                        ];
                        Hyperplane::new(w, &h.offset - dot(&h.normal, &t))
                    })
                    .collect(),
            )
            .unwrap();
            assert_eq!(enumerate_regions(&mapped).len(), base);
        }
    }
}
