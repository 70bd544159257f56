//! Abstract geometric semilattices and their cones.
//!
//! Elements are identified with their closed atom sets and the order is
//! set inclusion, which is faithful because every principal order ideal
//! is atomistic. On top of a validated semilattice `M` this module builds
//! the cone `cM` (a geometric lattice over the atoms plus a distinguished
//! atom `a0`), the centralization (the underlined copy of `M` inside
//! `cM`), localizations, the level distribution `r_l(M)`, and the exact
//! characteristic-polynomial identities they satisfy.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::{FormatError, IntersectionPoset};
use crate::atoms::{AtomSet, MAX_ATOMS};
use crate::poly::{IntPolynomial, RatPoly};
use crate::posets::RankedPoset;

/// First axiom or well-formedness failure found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn violation(msg: impl Into<String>) -> Violation {
    Violation(msg.into())
}

/// Raw element list prior to validation: atom sets with declared ranks.
#[derive(Clone, Debug)]
pub struct SemilatticeData {
    pub atom_count: usize,
    pub items: Vec<(AtomSet, usize)>,
}

/// A validated geometric semilattice in the closed-atom-set
/// representation: elements sorted by (rank, atom set), order = inclusion.
#[derive(Clone, Debug)]
pub struct GeometricSemilattice {
    atom_count: usize,
    elems: Vec<AtomSet>,
    ranks: Vec<usize>,
    index: HashMap<u64, usize>,
    poset: RankedPoset,
}

impl GeometricSemilattice {
    /// Trusted constructor for internally generated data.
    fn from_parts(atom_count: usize, mut items: Vec<(AtomSet, usize)>) -> Self {
        items.sort_by_key(|&(set, rank)| (rank, set));
        let elems: Vec<AtomSet> = items.iter().map(|&(s, _)| s).collect();
        let ranks: Vec<usize> = items.iter().map(|&(_, r)| r).collect();
        let index = elems.iter().enumerate().map(|(i, s)| (s.0, i)).collect();
        let poset = RankedPoset::from_atom_sets(&elems, &ranks);
        GeometricSemilattice {
            atom_count,
            elems,
            ranks,
            index,
            poset,
        }
    }

    pub fn from_intersection_poset(ip: &IntersectionPoset) -> Self {
        let items: Vec<(AtomSet, usize)> = (0..ip.len())
            .map(|i| (ip.atom_set(i), ip.rank(i)))
            .collect();
        let mut k = 0;
        for (set, _) in &items {
            if let Some(max) = set.iter().max() {
                k = k.max(max + 1);
            }
        }
        Self::from_parts(k.max(ip_atom_count(ip)), items)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, i: usize) -> AtomSet {
        self.elems[i]
    }

    pub fn elements(&self) -> &[AtomSet] {
        &self.elems
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Rank of the semilattice (all maximal elements share it).
    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn index_of(&self, set: AtomSet) -> Option<usize> {
        self.index.get(&set.0).copied()
    }

    pub fn poset(&self) -> &RankedPoset {
        &self.poset
    }

    fn bottom(&self) -> usize {
        self.index_of(AtomSet::EMPTY).expect("empty set is present")
    }

    /// Join: the unique minimal element containing `set`, or `None` when
    /// `set` has no upper bound.
    pub fn join(&self, set: AtomSet) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, e) in self.elems.iter().enumerate() {
            if set.is_subset(*e) {
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if e.is_subset(self.elems[b]) {
                            best = Some(i);
                        }
                    }
                }
            }
        }
        if let Some(b) = best {
            for (i, e) in self.elems.iter().enumerate() {
                if set.is_subset(*e) {
                    debug_assert!(
                        self.elems[b].is_subset(*e),
                        "join must lie below every upper bound; element {i} violates"
                    );
                }
            }
        }
        best
    }

    /// Characteristic polynomial with ambient degree = rank of `self`.
    pub fn chi(&self) -> IntPolynomial {
        self.poset
            .char_poly(self.max_rank())
            .expect("ambient equals the rank")
    }

    /// `r(M) = (-1)^n chi(-1)` and `b(M) = (-1)^n chi(1)`, n = rank.
    pub fn region_counts(&self) -> (BigInt, BigInt) {
        self.poset
            .zaslavsky(self.max_rank())
            .expect("ambient equals the rank")
    }
}

fn ip_atom_count(ip: &IntersectionPoset) -> usize {
    (0..ip.len()).filter(|&i| ip.rank(i) == 1).count()
}

/// Checks the geometric-semilattice axioms on raw data and produces the
/// validated structure, or the first violation found: well-formed atom
/// ids, unique closed atom sets, bottom and singletons present, cover
/// ranks, meets, semimodularity of bounded joins, and the atom-exchange
/// condition over every independent atom set.
pub fn validate(data: &SemilatticeData) -> Result<GeometricSemilattice, Violation> {
    let k = data.atom_count;
    if k > MAX_ATOMS {
        return Err(violation(format!("{k} atoms exceed the supported maximum of {MAX_ATOMS}")));
    }
    let mut seen: HashMap<u64, usize> = HashMap::new();
    for (pos, &(set, rank)) in data.items.iter().enumerate() {
        if k < 64 && set.0 >> k != 0 {
            return Err(violation(format!("element {pos} references an atom id >= {k}")));
        }
        if let Some(prev) = seen.insert(set.0, pos) {
            return Err(violation(format!(
                "elements {prev} and {pos} share the closed atom set {set} (not atomistic)"
            )));
        }
        if set.is_empty() && rank != 0 {
            return Err(violation("the empty atom set must have rank 0".to_string()));
        }
        if rank == 0 && !set.is_empty() {
            return Err(violation(format!("rank-0 element {set} is not the empty set")));
        }
        if set.len() == 1 && rank != 1 {
            return Err(violation(format!("singleton {set} must have rank 1, has {rank}")));
        }
        if rank == 1 && set.len() != 1 {
            return Err(violation(format!("rank-1 element {set} is not a singleton")));
        }
    }
    if !seen.contains_key(&0) {
        return Err(violation("missing minimum element (empty atom set)".to_string()));
    }
    for a in 0..k {
        if !seen.contains_key(&AtomSet::singleton(a).0) {
            return Err(violation(format!("missing singleton for atom {a}")));
        }
    }

    let items = data.items.clone();
    let n = items.len();
    let rank_of = |i: usize| items[i].1;
    let set_of = |i: usize| items[i].0;

    // cover relations must raise rank by exactly one
    for s in 0..n {
        for t in 0..n {
            if s == t || !set_of(s).is_subset(set_of(t)) {
                continue;
            }
            if rank_of(s) >= rank_of(t) {
                return Err(violation(format!(
                    "rank must increase with the order: {} (rank {}) < {} (rank {})",
                    set_of(s),
                    rank_of(s),
                    set_of(t),
                    rank_of(t)
                )));
            }
            let is_cover = !(0..n).any(|u| {
                u != s && u != t && set_of(s).is_subset(set_of(u)) && set_of(u).is_subset(set_of(t))
            });
            if is_cover && rank_of(t) != rank_of(s) + 1 {
                return Err(violation(format!(
                    "cover {} -> {} jumps rank {} -> {}",
                    set_of(s),
                    set_of(t),
                    rank_of(s),
                    rank_of(t)
                )));
            }
        }
    }

    // meet semilattice: lower bounds of every pair have a unique maximum
    for s in 0..n {
        for t in 0..n {
            let lower: Vec<usize> = (0..n)
                .filter(|&u| set_of(u).is_subset(set_of(s)) && set_of(u).is_subset(set_of(t)))
                .collect();
            let maximal: Vec<usize> = lower
                .iter()
                .copied()
                .filter(|&u| {
                    !lower
                        .iter()
                        .any(|&v| v != u && set_of(u).is_subset(set_of(v)))
                })
                .collect();
            if maximal.len() != 1 {
                return Err(violation(format!(
                    "{} and {} have no meet",
                    set_of(s),
                    set_of(t)
                )));
            }
        }
    }

    let join_of = |set: AtomSet| -> Option<usize> {
        let upper: Vec<usize> = (0..n).filter(|&u| set.is_subset(set_of(u))).collect();
        let minimal: Vec<usize> = upper
            .iter()
            .copied()
            .filter(|&u| !upper.iter().any(|&v| v != u && set_of(v).is_subset(set_of(u))))
            .collect();
        match minimal.as_slice() {
            [one] => Some(*one),
            _ => None, // unbounded, or not a semilattice (caught above)
        }
    };

    // semimodularity on every bounded pair (this is geometricity of the
    // principal ideals; lattice structure and atomisticity come free in
    // the atom-set representation)
    for s in 0..n {
        for t in 0..n {
            if let Some(j) = join_of(set_of(s).union(set_of(t))) {
                let meet = (0..n)
                    .filter(|&u| set_of(u).is_subset(set_of(s)) && set_of(u).is_subset(set_of(t)))
                    .max_by_key(|&u| (rank_of(u), set_of(u)))
                    .expect("meet exists");
                if rank_of(s) + rank_of(t) < rank_of(meet) + rank_of(j) {
                    return Err(violation(format!(
                        "semimodularity fails for {} and {}",
                        set_of(s),
                        set_of(t)
                    )));
                }
            }
        }
    }

    // atom-exchange condition over every independent atom set
    for v in 0..n {
        let atoms = set_of(v);
        let r = rank_of(v);
        if r == 0 {
            continue;
        }
        for subset in subsets_of_size(atoms, r) {
            if join_of(subset) != Some(v) {
                continue;
            }
            // subset is independent with join v
            for t in 0..n {
                if rank_of(t) >= r {
                    continue;
                }
                let ok = subset.iter().any(|a| {
                    !set_of(t).contains(a)
                        && join_of(set_of(t).union(AtomSet::singleton(a))).is_some()
                });
                if !ok {
                    return Err(violation(format!(
                        "exchange fails: independent set {} vs element {}",
                        subset,
                        set_of(t)
                    )));
                }
            }
        }
    }

    Ok(GeometricSemilattice::from_parts(k, items))
}

fn subsets_of_size(set: AtomSet, size: usize) -> Vec<AtomSet> {
    let indices = set.indices();
    let mut out = Vec::new();
    if size > indices.len() {
        return out;
    }
    let mut choice = vec![0usize; size];
    fn rec(indices: &[usize], size: usize, start: usize, depth: usize, choice: &mut Vec<usize>, out: &mut Vec<AtomSet>) {
        if depth == size {
            out.push(AtomSet::from_indices(choice.iter().copied()));
            return;
        }
        for i in start..indices.len() {
            choice[depth] = indices[i];
            rec(indices, size, i + 1, depth + 1, choice, out);
        }
    }
    rec(&indices, size, 0, 0, &mut choice, &mut out);
    out
}

/// The cone `cM`: a geometric lattice over the atoms of `M` plus the
/// distinguished atom `a0` (the highest atom index). Elements come in two
/// families, the original closed sets and the underlined sets
/// `A_s + P_s + a0`; underlined sets of collapsing elements coincide.
#[derive(Clone, Debug)]
pub struct ConedLattice {
    base: GeometricSemilattice,
    a0: usize,
    elems: Vec<AtomSet>,
    ranks: Vec<usize>,
    underlined: Vec<bool>,
    index: HashMap<u64, usize>,
    poset: RankedPoset,
}

impl ConedLattice {
    pub fn base(&self) -> &GeometricSemilattice {
        &self.base
    }

    /// Atom index of `a0` within the cone's atom numbering.
    pub fn a0(&self) -> usize {
        self.a0
    }

    pub fn atom_count(&self) -> usize {
        self.a0 + 1
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, i: usize) -> AtomSet {
        self.elems[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn is_underlined(&self, i: usize) -> bool {
        self.underlined[i]
    }

    pub fn index_of(&self, set: AtomSet) -> Option<usize> {
        self.index.get(&set.0).copied()
    }

    pub fn poset(&self) -> &RankedPoset {
        &self.poset
    }

    /// The cone viewed as a plain semilattice over `atom_count` atoms
    /// (it is a geometric lattice, so this validates structurally).
    pub fn as_semilattice(&self) -> GeometricSemilattice {
        let items: Vec<(AtomSet, usize)> = self
            .elems
            .iter()
            .zip(&self.ranks)
            .map(|(&s, &r)| (s, r))
            .collect();
        GeometricSemilattice::from_parts(self.atom_count(), items)
    }

    /// Indices of the underlined elements, in cone element order.
    pub fn centralization_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.underlined[i]).collect()
    }

    /// The centralization as a ranked poset (ranks shifted down by one),
    /// with the cone indices of its elements.
    pub fn centralization_poset(&self) -> (RankedPoset, Vec<usize>) {
        let idx = self.centralization_indices();
        let sets: Vec<AtomSet> = idx.iter().map(|&i| self.elems[i]).collect();
        let ranks: Vec<usize> = idx.iter().map(|&i| self.ranks[i] - 1).collect();
        (RankedPoset::from_atom_sets(&sets, &ranks), idx)
    }

    /// Localization `M_S` for an underlined element: the ideal of the
    /// cone below `S` minus the underlined family, re-read as a
    /// semilattice on the atoms contained in `S`.
    pub fn localization(&self, cone_idx: usize) -> GeometricSemilattice {
        assert!(self.underlined[cone_idx], "localization requires an underlined element");
        let s = self.elems[cone_idx];
        let base_atoms: Vec<usize> = s
            .indices()
            .into_iter()
            .filter(|&a| a != self.a0)
            .collect();
        let relabel: HashMap<usize, usize> = base_atoms.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut items = Vec::new();
        for (i, e) in self.base.elements().iter().enumerate() {
            if e.is_subset(s) {
                let remapped = AtomSet::from_indices(e.iter().map(|a| relabel[&a]));
                items.push((remapped, self.base.rank(i)));
            }
        }
        GeometricSemilattice::from_parts(base_atoms.len(), items)
    }
}

fn underline_mask(m: &GeometricSemilattice, s: usize, a0: usize) -> AtomSet {
    let set = m.element(s);
    let mut out = set;
    for a in 0..m.atom_count() {
        if set.contains(a) {
            continue;
        }
        // a joins P_s iff a and s have no common upper bound
        let probe = set.union(AtomSet::singleton(a));
        if !m.elements().iter().any(|e| probe.is_subset(*e)) {
            out.insert(a);
        }
    }
    out.insert(a0);
    out
}

/// Builds the cone `cM`.
pub fn cone(m: &GeometricSemilattice) -> ConedLattice {
    let k = m.atom_count();
    assert!(k <= MAX_ATOMS, "cone atom would not fit the mask");
    let a0 = k;
    let mut entries: HashMap<u64, (AtomSet, usize, bool)> = HashMap::new();
    for i in 0..m.len() {
        let set = m.element(i);
        entries.insert(set.0, (set, m.rank(i), false));
    }
    for i in 0..m.len() {
        let u = underline_mask(m, i, a0);
        let rank = m.rank(i) + 1;
        match entries.get(&u.0) {
            Some(&(_, r, underlined)) => {
                assert!(underlined && r == rank, "collapsing elements must agree in rank");
            }
            None => {
                entries.insert(u.0, (u, rank, true));
            }
        }
    }
    let mut list: Vec<(AtomSet, usize, bool)> = entries.into_values().collect();
    list.sort_by_key(|&(set, rank, _)| (rank, set));
    let elems: Vec<AtomSet> = list.iter().map(|&(s, _, _)| s).collect();
    let ranks: Vec<usize> = list.iter().map(|&(_, r, _)| r).collect();
    let underlined: Vec<bool> = list.iter().map(|&(_, _, u)| u).collect();
    let index = elems.iter().enumerate().map(|(i, s)| (s.0, i)).collect();
    let poset = RankedPoset::from_atom_sets(&elems, &ranks);
    ConedLattice {
        base: m.clone(),
        a0,
        elems,
        ranks,
        underlined,
        index,
        poset,
    }
}

/// Closure operator of the cone: for a set of atoms possibly containing
/// `a0` (bit `m.atom_count()`), the smallest element of `cM` containing
/// it. Joins are accumulated greedily; the result is independent of the
/// accumulation order.
pub fn closure(m: &GeometricSemilattice, set: AtomSet) -> AtomSet {
    let a0 = m.atom_count();
    closure_in_order(m, set, &set.minus(AtomSet::singleton(a0)).indices())
}

fn closure_in_order(m: &GeometricSemilattice, set: AtomSet, order: &[usize]) -> AtomSet {
    let a0 = m.atom_count();
    let base = set.minus(AtomSet::singleton(a0));
    if !set.contains(a0) {
        if let Some(j) = m.join(base) {
            return m.element(j);
        }
    }
    // greedy maximal element of the join-closure of the base atoms
    let mut t = m.bottom();
    for &a in order {
        if let Some(j) = m.join(m.element(t).union(AtomSet::singleton(a))) {
            t = j;
        }
    }
    underline_mask(m, t, a0)
}

/// Centralization of `M`: the underlined sub-poset of the cone re-read as
/// a geometric lattice in its own closed-atom-set representation.
pub fn centralization(m: &GeometricSemilattice) -> GeometricSemilattice {
    let cm = cone(m);
    reatomize_centralization(&cm)
}

fn reatomize_centralization(cm: &ConedLattice) -> GeometricSemilattice {
    let (poset, _) = cm.centralization_poset();
    reatomize(&poset)
}

/// Rebuilds a graded atomistic poset in the canonical atom-set
/// representation: each element maps to the set of rank-1 elements below.
pub fn reatomize(p: &RankedPoset) -> GeometricSemilattice {
    let atoms = p.elements_of_rank(1);
    let items: Vec<(AtomSet, usize)> = (0..p.size())
        .map(|e| {
            let set = AtomSet::from_indices(
                atoms
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| p.leq(a, e))
                    .map(|(pos, _)| pos),
            );
            (set, p.rank(e))
        })
        .collect();
    GeometricSemilattice::from_parts(atoms.len(), items)
}

/// Localization at an underlined element given by its cone atom set.
pub fn localize(m: &GeometricSemilattice, s: AtomSet) -> Result<GeometricSemilattice, Violation> {
    let cm = cone(m);
    match cm.index_of(s) {
        Some(i) if cm.is_underlined(i) => Ok(cm.localization(i)),
        _ => Err(violation(format!("{s} is not an element of the centralization"))),
    }
}

/// Level distribution `r_0 .. r_n` (n = rank of `M`):
/// `r_l(M) = sum over underlined S of rank n - l of r(filter above S in
/// the centralization) * b(localization at S)`.
pub fn level_distribution(m: &GeometricSemilattice) -> Vec<BigInt> {
    let cm = cone(m);
    level_distribution_of_cone(&cm)
}

pub fn level_distribution_of_cone(cm: &ConedLattice) -> Vec<BigInt> {
    let n = cm.base().max_rank();
    let (cent, idx) = cm.centralization_poset();
    let mut out = vec![BigInt::zero(); n + 1];
    for (pos, &ci) in idx.iter().enumerate() {
        let s_rank = cm.rank(ci) - 1;
        let level = n - s_rank;
        let (filter, _) = cent.filter_at(pos);
        let (r, _) = filter
            .zaslavsky(filter.max_rank())
            .expect("ambient equals the filter rank");
        let (_, b) = cm.localization(ci).region_counts();
        out[level] += r * b;
    }
    out
}

/// Both sides of the characteristic-polynomial identity
/// `chi_M(t) = sum over underlined S of chi(filter above S)(t) *
/// chi(localization at S)(1)`, plus the exact-equality verdict.
pub fn chi_identity_check(m: &GeometricSemilattice) -> (IntPolynomial, IntPolynomial, bool) {
    let lhs = m.chi();
    let cm = cone(m);
    let (cent, idx) = cm.centralization_poset();
    let mut rhs = IntPolynomial::zero();
    for (pos, &ci) in idx.iter().enumerate() {
        let (filter, _) = cent.filter_at(pos);
        let chi_filter = filter
            .char_poly(filter.max_rank())
            .expect("ambient equals the filter rank");
        let chi_loc_at_one = cm.localization(ci).chi().eval(&BigInt::one());
        rhs = rhs.add(&chi_filter.scale(&chi_loc_at_one));
    }
    let equal = lhs == rhs;
    (lhs, rhs, equal)
}

/// Result of the uniform-expansion check: coefficients `r_l(M)` against
/// the normalized basis polynomials of the uniform centralization.
#[derive(Clone, Debug)]
pub struct UniformExpansion {
    pub coefficients: Vec<BigInt>,
    pub basis: Vec<RatPoly>,
}

/// When the centralization is uniform (all corank-d filters isomorphic),
/// expands `chi_M` in the basis `chi(L_d)(t) / chi(L_d)(-1)` with the
/// level distribution as coefficients and verifies the identity exactly.
/// Returns `None` when the centralization is not uniform.
///
/// With every polynomial in the rank-ambient convention the exact
/// identity is `chi_M(t) = (-1)^n sum_l r_l(M) chi~^l(t)`, n = rank(M);
/// the leading sign cancels only for even rank.
pub fn uniform_expansion(m: &GeometricSemilattice) -> Option<UniformExpansion> {
    let cm = cone(m);
    let n = cm.base().max_rank();
    let (cent, _) = cm.centralization_poset();
    let mut basis = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let elems = cent.elements_of_rank(n - d);
        let (first, _) = cent.filter_at(elems[0]);
        for &other in &elems[1..] {
            let (f, _) = cent.filter_at(other);
            crate::posets::isomorphism(&first, &f)?;
        }
        let chi = first.char_poly(d).expect("filter of corank d has rank d");
        let denom = chi.eval(&BigInt::from(-1));
        basis.push(RatPoly::new(chi, denom));
    }
    let coefficients = level_distribution_of_cone(&cm);
    let mut acc = RatPoly::zero();
    for (level, c) in coefficients.iter().enumerate() {
        acc = acc.add(&basis[level].scale_int(c));
    }
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    assert_eq!(
        acc.scale_int(&sign),
        RatPoly::from_int(m.chi()),
        "uniform centralization must satisfy the basis expansion exactly"
    );
    Some(UniformExpansion { coefficients, basis })
}

/// Lattice of flats of the uniform matroid `U_{k,m}`: all subsets of
/// size below `k`, plus the full ground set at rank `k`. For `k = 1` the
/// ground-set atoms are parallel and collapse to a single rank-1 flat.
pub fn uniform_matroid_flats(k: usize, m: usize) -> GeometricSemilattice {
    assert!(k >= 1 && k <= m && m <= MAX_ATOMS);
    if k == 1 {
        return GeometricSemilattice::from_parts(
            1,
            vec![(AtomSet::EMPTY, 0), (AtomSet::singleton(0), 1)],
        );
    }
    let full = AtomSet::from_indices(0..m);
    let mut items = Vec::new();
    for mask in 0u64..(1 << m) {
        let set = AtomSet(mask);
        if set.len() < k {
            items.push((set, set.len()));
        }
    }
    items.push((full, k));
    GeometricSemilattice::from_parts(m, items)
}

/// Boolean lattice on `k` atoms.
pub fn boolean_lattice(k: usize) -> GeometricSemilattice {
    uniform_matroid_flats(k, k)
}

/// Deletion of the principal filter of an atom: `L - L^a`, re-indexed to
/// the remaining atoms. For a geometric lattice input this is a
/// geometric semilattice (and every geometric semilattice arises so).
pub fn wachs_deletion(l: &GeometricSemilattice, atom: usize) -> GeometricSemilattice {
    assert!(atom < l.atom_count());
    let removed = AtomSet::singleton(atom);
    let relabel: Vec<usize> = (0..l.atom_count()).filter(|&a| a != atom).collect();
    let back: HashMap<usize, usize> = relabel.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let mut items = Vec::new();
    for i in 0..l.len() {
        let e = l.element(i);
        if e.intersection(removed).is_empty() {
            items.push((AtomSet::from_indices(e.iter().map(|a| back[&a])), l.rank(i)));
        }
    }
    GeometricSemilattice::from_parts(l.atom_count() - 1, items)
}

/// Parses the poset text format: `elements <N>`, optional `a0 <atom-id>`,
/// then `e <id> rank <r> atoms {i,j,...}` lines. Atom ids are the element
/// ids of the rank-1 elements (each singleton names itself). Returns raw
/// data for [`validate`] plus the internal index of the tagged `a0` atom.
pub fn parse_semilattice(text: &str) -> Result<(SemilatticeData, Option<usize>), FormatError> {
    let mut declared: Option<usize> = None;
    let mut a0_id: Option<usize> = None;
    let mut rows: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new(); // id, rank, atom ids, line
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| FormatError { line: lineno + 1, msg };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "elements" => {
                if declared.is_some() {
                    return Err(err("duplicate elements line".into()));
                }
                if tokens.len() != 2 {
                    return Err(err("elements requires a count".into()));
                }
                declared = Some(
                    tokens[1]
                        .parse()
                        .map_err(|_| err("element count must be an integer".into()))?,
                );
            }
            "a0" => {
                if tokens.len() != 2 {
                    return Err(err("a0 requires an atom id".into()));
                }
                a0_id = Some(
                    tokens[1]
                        .parse()
                        .map_err(|_| err("a0 id must be an integer".into()))?,
                );
            }
            "e" => {
                if tokens.len() < 5 || tokens[2] != "rank" {
                    return Err(err("expected `e <id> rank <r> atoms {..}`".into()));
                }
                let id: usize = tokens[1].parse().map_err(|_| err("bad element id".into()))?;
                let rank: usize = tokens[3].parse().map_err(|_| err("bad rank".into()))?;
                let atoms_text = line
                    .split_once("atoms")
                    .map(|(_, rest)| rest.trim())
                    .ok_or_else(|| err("missing atoms clause".into()))?;
                if !atoms_text.starts_with('{') || !atoms_text.ends_with('}') {
                    return Err(err("atoms must be braced {i,j,...}".into()));
                }
                let inner = &atoms_text[1..atoms_text.len() - 1];
                let mut ids = Vec::new();
                for piece in inner.split(',') {
                    let piece = piece.trim();
                    if piece.is_empty() {
                        continue;
                    }
                    ids.push(piece.parse().map_err(|_| err(format!("bad atom id `{piece}`")))?);
                }
                rows.push((id, rank, ids, lineno + 1));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let declared = declared.ok_or(FormatError { line: 1, msg: "missing elements line".into() })?;
    if rows.len() != declared {
        return Err(FormatError {
            line: 1,
            msg: format!("declared {declared} elements, found {}", rows.len()),
        });
    }
    // atom numbering: rank-1 elements by ascending id, each naming itself
    let mut atom_ids: Vec<usize> = rows.iter().filter(|r| r.1 == 1).map(|r| r.0).collect();
    atom_ids.sort_unstable();
    let atom_index: HashMap<usize, usize> = atom_ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    if atom_ids.len() > MAX_ATOMS {
        return Err(FormatError { line: 1, msg: format!("too many atoms ({})", atom_ids.len()) });
    }
    for (id, rank, atoms, line) in &rows {
        if *rank == 1 && atoms.as_slice() != [*id] {
            return Err(FormatError {
                line: *line,
                msg: format!("rank-1 element {id} must list exactly its own id as atom"),
            });
        }
    }
    let mut items = Vec::with_capacity(rows.len());
    for (_, rank, atoms, line) in &rows {
        let mut set = AtomSet::EMPTY;
        for a in atoms {
            let idx = atom_index.get(a).ok_or(FormatError {
                line: *line,
                msg: format!("atom id {a} does not name a rank-1 element"),
            })?;
            set.insert(*idx);
        }
        items.push((set, *rank));
    }
    let a0 = match a0_id {
        Some(id) => Some(*atom_index.get(&id).ok_or(FormatError {
            line: 1,
            msg: format!("a0 id {id} does not name a rank-1 element"),
        })?),
        None => None,
    };
    Ok((
        SemilatticeData {
            atom_count: atom_ids.len(),
            items,
        },
        a0,
    ))
}

/// Emits the poset text format. Elements are numbered in the stored
/// order; atom ids are the element ids of the singletons. `a0` (an
/// internal atom index) adds the cone header line.
pub fn emit_semilattice(m: &GeometricSemilattice, a0: Option<usize>) -> String {
    let mut out = format!("elements {}\n", m.len());
    let atom_elem: HashMap<usize, usize> = (0..m.len())
        .filter(|&i| m.rank(i) == 1)
        .map(|i| (m.element(i).indices()[0], i))
        .collect();
    if let Some(a) = a0 {
        out.push_str(&format!("a0 {}\n", atom_elem[&a]));
    }
    for i in 0..m.len() {
        let ids: Vec<String> = m.element(i).iter().map(|a| atom_elem[&a].to_string()).collect();
        out.push_str(&format!("e {i} rank {} atoms {{{}}}\n", m.rank(i), ids.join(",")));
    }
    out
}

pub fn emit_cone(cm: &ConedLattice) -> String {
    emit_semilattice(&cm.as_semilattice(), Some(cm.a0()))
}
