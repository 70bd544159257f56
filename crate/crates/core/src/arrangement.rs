//! Hyperplane arrangements and their derived constructions: intersection
//! poset, centralization, restriction to a flat, localization at a linear
//! subspace, essentialization, and the cone arrangement one dimension up.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::atoms::{AtomSet, MAX_ATOMS};
use crate::posets::RankedPoset;
use crate::ratlin::{
    canonical_direction, dot, fmt_rat, parse_rat, solve_affine, AffineFlat, Rat,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrangementError {
    ZeroNormal { index: usize },
    WrongNormalLength { index: usize, expected: usize, got: usize },
    DuplicateHyperplane { first: usize, second: usize },
    TooManyHyperplanes { count: usize },
}

impl fmt::Display for ArrangementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementError::ZeroNormal { index } => {
                write!(f, "hyperplane {index} has a zero normal vector")
            }
            ArrangementError::WrongNormalLength { index, expected, got } => write!(
                f,
                "hyperplane {index} has normal length {got}, expected {expected}"
            ),
            ArrangementError::DuplicateHyperplane { first, second } => write!(
                f,
                "hyperplanes {first} and {second} are equal as point sets"
            ),
            ArrangementError::TooManyHyperplanes { count } => {
                write!(f, "{count} hyperplanes exceed the supported maximum of {MAX_ATOMS}")
            }
        }
    }
}

/// Parse failure for the text formats, with a 1-based line number.
#[derive(Clone, Debug)]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

/// Affine hyperplane `{x : normal . x = offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Self {
        Hyperplane { normal, offset }
    }

    /// Signed evaluation `normal . x - offset`.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.normal, x) - &self.offset
    }

    /// Point-set canonical form: scaled so the first nonzero normal entry
    /// is 1. Two hyperplanes are equal as sets iff these keys match.
    pub fn canonical_key(&self) -> (Vec<Rat>, Rat) {
        let (w, a, _) = canonical_direction(&self.normal, &self.offset);
        (w, a)
    }

    /// The parallel hyperplane through the origin.
    pub fn centralized(&self) -> Hyperplane {
        Hyperplane::new(self.normal.clone(), Rat::zero())
    }
}

/// Ordered, duplicate-free list of hyperplanes in a fixed ambient
/// dimension. Indices are identities throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        if hyperplanes.len() > MAX_ATOMS {
            return Err(ArrangementError::TooManyHyperplanes {
                count: hyperplanes.len(),
            });
        }
        let mut seen: HashMap<(Vec<Rat>, Rat), usize> = HashMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(ArrangementError::WrongNormalLength {
                    index: i,
                    expected: dim,
                    got: h.normal.len(),
                });
            }
            if h.normal.iter().all(Rat::is_zero) {
                return Err(ArrangementError::ZeroNormal { index: i });
            }
            if let Some(&first) = seen.get(&h.canonical_key()) {
                return Err(ArrangementError::DuplicateHyperplane { first, second: i });
            }
            seen.insert(h.canonical_key(), i);
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }
}

/// Parses the arrangement text format: `dim <n>` then one
/// `h <w_1> ... <w_n> = <a>` line per hyperplane; `#` starts a comment.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, FormatError> {
    let mut dim: Option<usize> = None;
    let mut hyperplanes = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| FormatError {
            line: lineno + 1,
            msg,
        };
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("dim") => {
                if dim.is_some() {
                    return Err(err("duplicate dim line".into()));
                }
                let n = tokens
                    .next()
                    .ok_or_else(|| err("dim requires a value".into()))?
                    .parse::<usize>()
                    .map_err(|_| err("dim must be a nonnegative integer".into()))?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after dim".into()));
                }
                dim = Some(n);
            }
            Some("h") => {
                let n = dim.ok_or_else(|| err("hyperplane before dim line".into()))?;
                let rest: Vec<&str> = tokens.collect();
                if rest.len() != n + 2 || rest[n] != "=" {
                    return Err(err(format!(
                        "expected `h <{n} coefficients> = <offset>`"
                    )));
                }
                let mut normal = Vec::with_capacity(n);
                for tok in &rest[..n] {
                    normal.push(
                        parse_rat(tok).ok_or_else(|| err(format!("bad rational `{tok}`")))?,
                    );
                }
                let offset =
                    parse_rat(rest[n + 1]).ok_or_else(|| err(format!("bad rational `{}`", rest[n + 1])))?;
                hyperplanes.push(Hyperplane::new(normal, offset));
            }
            Some(other) => return Err(err(format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    let dim = dim.ok_or(FormatError {
        line: 1,
        msg: "missing dim line".into(),
    })?;
    Arrangement::new(dim, hyperplanes).map_err(|e| FormatError {
        line: 1,
        msg: e.to_string(),
    })
}

pub fn emit_arrangement(arr: &Arrangement) -> String {
    let mut out = format!("dim {}\n", arr.dim());
    for h in arr.hyperplanes() {
        out.push('h');
        for c in &h.normal {
            out.push(' ');
            out.push_str(&fmt_rat(c));
        }
        out.push_str(" = ");
        out.push_str(&fmt_rat(&h.offset));
        out.push('\n');
    }
    out
}

/// Intersection poset of an arrangement: one entry per nonempty
/// intersection of hyperplanes (by canonical form), index 0 the ambient
/// space, ordered by reverse inclusion; ranks are codimensions.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    ambient: usize,
    flats: Vec<AffineFlat>,
    atom_sets: Vec<AtomSet>,
    index: HashMap<AffineFlat, usize>,
    poset: RankedPoset,
}

impl IntersectionPoset {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains the ambient flat
    }

    pub fn flat(&self, i: usize) -> &AffineFlat {
        &self.flats[i]
    }

    pub fn flats(&self) -> &[AffineFlat] {
        &self.flats
    }

    /// Hyperplane indices containing flat `i`.
    pub fn atom_set(&self, i: usize) -> AtomSet {
        self.atom_sets[i]
    }

    pub fn atom_sets(&self) -> &[AtomSet] {
        &self.atom_sets
    }

    pub fn poset(&self) -> &RankedPoset {
        &self.poset
    }

    pub fn rank(&self, i: usize) -> usize {
        self.poset.rank(i)
    }

    pub fn flat_index(&self, flat: &AffineFlat) -> Option<usize> {
        self.index.get(flat).copied()
    }
}

/// Builds the intersection poset by breadth-first search over ranks:
/// every flat of rank r+1 is a flat of rank r cut by one more hyperplane,
/// so repeated intersection with canonical-form deduplication finds all
/// flats without enumerating hyperplane subsets.
pub fn intersection_poset(arr: &Arrangement) -> IntersectionPoset {
    let n = arr.dim();
    let atom_set_of = |flat: &AffineFlat| {
        AtomSet::from_indices((0..arr.len()).filter(|&h| {
            flat.implies_equation(&arr.hyperplane(h).normal, &arr.hyperplane(h).offset)
        }))
    };

    let mut flats = vec![AffineFlat::full_space(n)];
    let mut atom_sets = vec![atom_set_of(&flats[0])];
    let mut index: HashMap<AffineFlat, usize> = HashMap::new();
    index.insert(flats[0].clone(), 0);

    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &fi in &frontier {
            for h in 0..arr.len() {
                if atom_sets[fi].contains(h) {
                    continue;
                }
                let hp = arr.hyperplane(h);
                let Some(g) = flats[fi].with_equation(&hp.normal, &hp.offset) else {
                    continue;
                };
                debug_assert_eq!(g.rank(), flats[fi].rank() + 1);
                if index.contains_key(&g) {
                    continue;
                }
                index.insert(g.clone(), flats.len());
                atom_sets.push(atom_set_of(&g));
                next.push(flats.len());
                flats.push(g);
            }
        }
        frontier = next;
    }

    let ranks: Vec<usize> = flats.iter().map(AffineFlat::rank).collect();
    let poset = RankedPoset::from_atom_sets(&atom_sets, &ranks);
    IntersectionPoset {
        ambient: n,
        flats,
        atom_sets,
        index,
        poset,
    }
}

/// Centralization with index bookkeeping: parallel hyperplanes of the
/// input collapse, the smallest original index is kept as representative,
/// and `preimages` records the full fiber of each output hyperplane.
#[derive(Clone, Debug)]
pub struct Centralization {
    pub arr: Arrangement,
    /// original index -> centralized index
    pub image: Vec<usize>,
    /// centralized index -> sorted original indices
    pub preimages: Vec<Vec<usize>>,
}

pub fn centralize(arr: &Arrangement) -> Centralization {
    let mut out: Vec<Hyperplane> = Vec::new();
    let mut image = Vec::with_capacity(arr.len());
    let mut preimages: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashMap<(Vec<Rat>, Rat), usize> = HashMap::new();
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        let c = h.centralized();
        let key = c.canonical_key();
        match seen.get(&key) {
            Some(&j) => {
                image.push(j);
                preimages[j].push(i);
            }
            None => {
                let j = out.len();
                seen.insert(key, j);
                out.push(c);
                image.push(j);
                preimages.push(vec![i]);
            }
        }
    }
    let arr = Arrangement::new(arr.dim(), out).expect("deduplicated centralization is valid");
    Centralization { arr, image, preimages }
}

/// Affine chart `x = origin + basis . y` identifying a flat with its own
/// coordinate space.
#[derive(Clone, Debug)]
pub struct Chart {
    pub origin: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
}

impl Chart {
    pub fn of_flat(flat: &AffineFlat) -> Chart {
        Chart {
            origin: flat.particular_point(),
            basis: flat.direction_basis(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_ambient(&self, y: &[Rat]) -> Vec<Rat> {
        assert_eq!(y.len(), self.basis.len());
        let mut x = self.origin.clone();
        for (c, b) in y.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        x
    }

    /// Pullback of `{w . x = a}`: coefficients over the chart coordinates
    /// and adjusted offset.
    pub fn pullback(&self, normal: &[Rat], offset: &Rat) -> (Vec<Rat>, Rat) {
        let coeffs: Vec<Rat> = self.basis.iter().map(|b| dot(normal, b)).collect();
        let adjusted = offset - dot(normal, &self.origin);
        (coeffs, adjusted)
    }
}

/// Restriction of an arrangement to a flat, expressed in a deterministic
/// chart on the flat. Hyperplanes meeting the flat in the whole flat or
/// in nothing are dropped; distinct hyperplanes with the same trace are
/// deduplicated with the preimage fibers recorded.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub arr: Arrangement,
    pub chart: Chart,
    /// restricted index -> sorted original indices with that trace
    pub preimages: Vec<Vec<usize>>,
}

pub fn restriction(arr: &Arrangement, flat: &AffineFlat) -> Restriction {
    assert_eq!(flat.ambient(), arr.dim());
    let chart = Chart::of_flat(flat);
    let mut out: Vec<Hyperplane> = Vec::new();
    let mut preimages: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashMap<(Vec<Rat>, Rat), usize> = HashMap::new();
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        let (coeffs, offset) = chart.pullback(&h.normal, &h.offset);
        if coeffs.iter().all(Rat::is_zero) {
            continue; // trace is the whole flat or empty
        }
        let trace = Hyperplane::new(coeffs, offset);
        let key = trace.canonical_key();
        match seen.get(&key) {
            Some(&j) => preimages[j].push(i),
            None => {
                seen.insert(key, out.len());
                out.push(trace);
                preimages.push(vec![i]);
            }
        }
    }
    let arr = Arrangement::new(chart.dim(), out).expect("deduplicated restriction is valid");
    Restriction { arr, chart, preimages }
}

/// Localization: the sub-arrangement of hyperplanes parallel to the
/// linear subspace `v` (containing it or disjoint from it). Original
/// hyperplane data is retained; `kept` maps back to input indices.
#[derive(Clone, Debug)]
pub struct Localization {
    pub arr: Arrangement,
    pub kept: Vec<usize>,
}

pub fn localization(arr: &Arrangement, v: &AffineFlat) -> Localization {
    assert_eq!(v.ambient(), arr.dim());
    debug_assert!(
        v.contains_point(&vec![Rat::zero(); arr.dim()]),
        "localization expects a linear subspace (flat of the centralization)"
    );
    let zero = Rat::zero();
    let mut kept = Vec::new();
    let mut hyps = Vec::new();
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        // parallel to v <=> the centralized hyperplane contains v
        if v.implies_equation(&h.normal, &zero) {
            kept.push(i);
            hyps.push(h.clone());
        }
    }
    let arr = Arrangement::new(arr.dim(), hyps).expect("sub-arrangement is valid");
    Localization { arr, kept }
}

/// Essentialization: restriction to the span of the normal vectors.
pub fn essentialize(arr: &Arrangement) -> Restriction {
    let n = arr.dim();
    let zero = Rat::zero();
    let normal_rows: Vec<(Vec<Rat>, Rat)> = arr
        .hyperplanes()
        .iter()
        .map(|h| (h.normal.clone(), zero.clone()))
        .collect();
    let kernel = solve_affine(n, &normal_rows).expect("homogeneous system contains the origin");
    // span of normals = orthogonal complement of the kernel
    let span_rows: Vec<(Vec<Rat>, Rat)> = kernel
        .direction_basis()
        .into_iter()
        .map(|v| (v, zero.clone()))
        .collect();
    let span = solve_affine(n, &span_rows).expect("homogeneous system contains the origin");
    restriction(arr, &span)
}

/// Cone of an arrangement: a central arrangement one dimension up, with
/// the new hyperplane `x_{n+1} = 0` at index 0 followed by the
/// homogenized images of the input hyperplanes in order.
pub fn cone_arrangement(arr: &Arrangement) -> Arrangement {
    let n = arr.dim();
    let mut hyps = Vec::with_capacity(arr.len() + 1);
    let mut h0 = vec![Rat::zero(); n + 1];
    h0[n] = Rat::from_integer(1.into());
    hyps.push(Hyperplane::new(h0, Rat::zero()));
    for h in arr.hyperplanes() {
        let mut w = h.normal.clone();
        w.push(-h.offset.clone());
        hyps.push(Hyperplane::new(w, Rat::zero()));
    }
    Arrangement::new(n + 1, hyps).expect("cone of a valid arrangement is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{braid, shi};
    use crate::posets::are_isomorphic;
    use crate::ratlin::rat_int;
    use std::collections::HashSet;

    pub(crate) fn arr(dim: usize, rows: Vec<(Vec<i64>, i64)>) -> Arrangement {
        Arrangement::new(
            dim,
            rows.into_iter()
                .map(|(w, a)| Hyperplane::new(w.into_iter().map(rat_int).collect(), rat_int(a)))
                .collect(),
        )
        .unwrap()
    }

    /// Brute-force oracle: canonical forms of all nonempty subset
    /// intersections, together with their hyperplane sets.
    fn subset_oracle(a: &Arrangement) -> HashSet<(AffineFlat, AtomSet)> {
        let k = a.len();
        let mut out = HashSet::new();
        for mask in 0u64..(1 << k) {
            let eqs: Vec<(Vec<Rat>, Rat)> = (0..k)
                .filter(|i| (mask >> i) & 1 == 1)
                .map(|i| (a.hyperplane(i).normal.clone(), a.hyperplane(i).offset.clone()))
                .collect();
            if let Some(flat) = solve_affine(a.dim(), &eqs) {
                let atoms = AtomSet::from_indices((0..k).filter(|&i| {
                    flat.implies_equation(&a.hyperplane(i).normal, &a.hyperplane(i).offset)
                }));
                out.insert((flat, atoms));
            }
        }
        out
    }

    fn poset_matches_oracle(a: &Arrangement) {
        let p = intersection_poset(a);
        let got: HashSet<(AffineFlat, AtomSet)> = (0..p.len())
            .map(|i| (p.flat(i).clone(), p.atom_set(i)))
            .collect();
        assert_eq!(got.len(), p.len(), "no duplicate flats");
        assert_eq!(got, subset_oracle(a));
    }

    #[test]
    fn braid3_poset_profile() {
        let p = intersection_poset(&braid(3).unwrap());
        assert_eq!(p.poset().rank_profile(), vec![1, 3, 1]);
        poset_matches_oracle(&braid(3).unwrap());
    }

    #[test]
    fn empty_arrangement_poset() {
        let p = intersection_poset(&Arrangement::empty(2));
        assert_eq!(p.len(), 1);
        assert_eq!(p.rank(0), 0);
    }

    #[test]
    fn shi2_poset_no_rank_two() {
        let a = shi(2).unwrap();
        let p = intersection_poset(&a);
        assert_eq!(p.len(), 3);
        assert_eq!(p.poset().rank_profile(), vec![1, 2]);
        poset_matches_oracle(&a);
    }

    #[test]
    fn shi3_poset_matches_oracle() {
        let a = shi(3).unwrap();
        let p = intersection_poset(&a);
        assert_eq!(p.poset().rank_profile(), vec![1, 6, 6]);
        poset_matches_oracle(&a);
    }

    #[test]
    fn join_where_nonempty_is_semilattice() {
        for a in [shi(3).unwrap(), braid(3).unwrap(), arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1), (vec![0, 1], 0)])] {
            let p = intersection_poset(&a);
            for s in 0..p.len() {
                for t in 0..p.len() {
                    let mut eqs = p.flat(s).equations();
                    eqs.extend(p.flat(t).equations());
                    if let Some(meet_flat) = solve_affine(a.dim(), &eqs) {
                        // join exists and equals the geometric intersection
                        let j = p.flat_index(&meet_flat).expect("closed under joins");
                        let union = p.atom_set(s).union(p.atom_set(t));
                        assert!(union.is_subset(p.atom_set(j)));
                        // it is the least upper bound
                        for u in 0..p.len() {
                            if union.is_subset(p.atom_set(u)) {
                                assert!(p.poset().leq(j, u));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn centralize_shi2_collapses() {
        let c = centralize(&shi(2).unwrap());
        assert_eq!(c.arr.len(), 1);
        assert_eq!(c.preimages, vec![vec![0, 1]]);
        assert_eq!(c.image, vec![0, 0]);
    }

    #[test]
    fn centralize_braid3_fixed_point() {
        let b = braid(3).unwrap();
        let c = centralize(&b);
        assert_eq!(c.arr, b);
    }

    #[test]
    fn centralize_shi3_is_braid3() {
        let c = centralize(&shi(3).unwrap());
        assert_eq!(c.arr, braid(3).unwrap());
        assert_eq!(c.preimages, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
    }

    #[test]
    fn centralize_is_idempotent() {
        let a = arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1), (vec![0, 1], 3)]);
        let once = centralize(&a).arr;
        let twice = centralize(&once).arr;
        assert_eq!(once, twice);
    }

    #[test]
    fn restriction_to_full_space_is_identity() {
        let a = shi(3).unwrap();
        let r = restriction(&a, &AffineFlat::full_space(3));
        assert_eq!(r.arr, a);
        assert_eq!(r.preimages.len(), a.len());
    }

    #[test]
    fn restriction_braid3_to_diagonal_plane() {
        let b = braid(3).unwrap();
        let v = solve_affine(
            3,
            &[(vec![rat_int(1), rat_int(-1), rat_int(0)], rat_int(0))],
        )
        .unwrap();
        let r = restriction(&b, &v);
        assert_eq!(r.arr.dim(), 2);
        assert_eq!(r.arr.len(), 1);
        assert_eq!(r.preimages, vec![vec![1, 2]]);
    }

    #[test]
    fn restriction_two_points_on_a_line() {
        let a = arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1)]);
        let v = solve_affine(2, &[(vec![rat_int(0), rat_int(1)], rat_int(0))]).unwrap();
        let r = restriction(&a, &v);
        assert_eq!(r.arr.dim(), 1);
        assert_eq!(r.arr.len(), 2);
    }

    #[test]
    fn localization_examples() {
        let s2 = shi(2).unwrap();
        let line = solve_affine(2, &[(vec![rat_int(1), rat_int(-1)], rat_int(0))]).unwrap();
        let l = localization(&s2, &line);
        assert_eq!(l.kept, vec![0, 1]);

        let l0 = localization(&s2, &AffineFlat::full_space(2));
        assert!(l0.arr.is_empty());

        let b = braid(3).unwrap();
        let diag = solve_affine(
            3,
            &[
                (vec![rat_int(1), rat_int(-1), rat_int(0)], rat_int(0)),
                (vec![rat_int(0), rat_int(1), rat_int(-1)], rat_int(0)),
            ],
        )
        .unwrap();
        assert_eq!(localization(&b, &diag).kept, vec![0, 1, 2]);
    }

    #[test]
    fn essentialize_shi2_two_points() {
        let r = essentialize(&shi(2).unwrap());
        assert_eq!(r.arr.dim(), 1);
        assert_eq!(r.arr.len(), 2);
        let p = intersection_poset(&r.arr);
        let q = intersection_poset(&shi(2).unwrap());
        assert!(are_isomorphic(p.poset(), q.poset()));
    }

    #[test]
    fn essentialize_braid3_poset_preserved() {
        let b = braid(3).unwrap();
        let r = essentialize(&b);
        assert_eq!(r.arr.dim(), 2);
        assert_eq!(r.arr.len(), 3);
        assert!(are_isomorphic(
            intersection_poset(&r.arr).poset(),
            intersection_poset(&b).poset()
        ));
    }

    #[test]
    fn essentialize_twice_stable() {
        let a = shi(2).unwrap();
        let once = essentialize(&a).arr;
        let twice = essentialize(&once).arr;
        assert!(are_isomorphic(
            intersection_poset(&once).poset(),
            intersection_poset(&twice).poset()
        ));
    }

    #[test]
    fn rank_preserved_by_centralization() {
        for a in [
            shi(3).unwrap(),
            arr(2, vec![(vec![1, 0], 0), (vec![1, 0], 1), (vec![0, 1], 2)]),
        ] {
            let ra = intersection_poset(&a).poset().max_rank();
            let rc = intersection_poset(&centralize(&a).arr).poset().max_rank();
            assert_eq!(ra, rc);
        }
    }

    #[test]
    fn cone_of_empty_arrangement() {
        let c = cone_arrangement(&Arrangement::empty(2));
        assert_eq!(c.dim(), 3);
        assert_eq!(c.len(), 1);
        assert_eq!(c.hyperplane(0).normal, vec![rat_int(0), rat_int(0), rat_int(1)]);
    }

    #[test]
    fn cone_of_single_point() {
        // {x = 1} in dim 1 -> {x2 = 0, x1 - x2 = 0} with H0 first
        let c = cone_arrangement(&arr(1, vec![(vec![1], 1)]));
        assert_eq!(c.dim(), 2);
        assert_eq!(c.hyperplane(0).normal, vec![rat_int(0), rat_int(1)]);
        assert_eq!(c.hyperplane(1).normal, vec![rat_int(1), rat_int(-1)]);
        assert_eq!(c.hyperplane(1).offset, rat_int(0));
    }

    #[test]
    fn cone_of_shi2_flat_count() {
        let c = cone_arrangement(&shi(2).unwrap());
        let p = intersection_poset(&c);
        // all three pairwise intersections coincide in the line x1=x2, x3=0
        assert_eq!(p.poset().rank_profile(), vec![1, 3, 1]);
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn text_format_round_trip() {
        let a = arr(
            2,
            vec![(vec![1, -1], 0), (vec![1, -1], 1), (vec![0, 2], -3)],
        );
        let text = emit_arrangement(&a);
        let back = parse_arrangement(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(emit_arrangement(&back), text);
    }

    #[test]
    fn text_format_rationals_and_comments() {
        let text = "# a strip\ndim 2\nh 1/2 -1/3 = 5/7 # slanted\nh 1 0 = 0\n";
        let a = parse_arrangement(text).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.hyperplane(0).normal[0], crate::ratlin::rat(1, 2));
        let round = parse_arrangement(&emit_arrangement(&a)).unwrap();
        assert_eq!(round, a);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_arrangement("dim 2\nh 1 = 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_arrangement("h 1 = 0\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_arrangement("dim 2\nh 1 x = 0\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn duplicate_hyperplanes_rejected() {
        let bad = Arrangement::new(
            1,
            vec![
                Hyperplane::new(vec![rat_int(1)], rat_int(0)),
                Hyperplane::new(vec![rat_int(2)], rat_int(0)),
            ],
        );
        assert_eq!(
            bad.unwrap_err(),
            ArrangementError::DuplicateHyperplane { first: 0, second: 1 }
        );
    }
}
