//! Ranked posets with a unique minimum: Mobius function, characteristic
//! polynomial, Zaslavsky region/bounded counts, and rank-preserving
//! isomorphism search for desk-scale posets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::atoms::AtomSet;
use crate::poly::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    NotComparable { s: usize, t: usize },
    AmbientTooSmall { ambient: usize, rank: usize },
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::NotComparable { s, t } => write!(f, "elements {s} and {t} are not comparable"),
            PosetError::AmbientTooSmall { ambient, rank } => {
                write!(f, "ambient degree {ambient} is below the poset rank {rank}")
            }
        }
    }
}

/// Finite ranked poset with a unique minimum element of rank 0.
/// The order relation is stored densely; the Mobius table is computed on
/// first use and then shared read-only.
#[derive(Debug)]
pub struct RankedPoset {
    size: usize,
    ranks: Vec<usize>,
    leq: Vec<bool>,
    min: usize,
    covers: Vec<(usize, usize)>,
    mobius_table: OnceLock<Vec<BigInt>>,
}

impl Clone for RankedPoset {
    fn clone(&self) -> Self {
        RankedPoset {
            size: self.size,
            ranks: self.ranks.clone(),
            leq: self.leq.clone(),
            min: self.min,
            covers: self.covers.clone(),
            mobius_table: OnceLock::new(),
        }
    }
}

impl RankedPoset {
    /// Builds and validates. Panics on structural violations; callers
    /// constructing from untrusted text must validate beforehand.
    pub fn new(ranks: Vec<usize>, leq: Vec<bool>) -> Self {
        let size = ranks.len();
        assert_eq!(leq.len(), size * size, "order matrix shape");
        let at = |s: usize, t: usize| leq[s * size + t];
        for s in 0..size {
            assert!(at(s, s), "order must be reflexive");
            for t in 0..size {
                if s != t && at(s, t) {
                    assert!(!at(t, s), "order must be antisymmetric");
                    assert!(ranks[s] < ranks[t], "rank must increase strictly with the order");
                }
                for u in 0..size {
                    if at(s, t) && at(t, u) {
                        assert!(at(s, u), "order must be transitive");
                    }
                }
            }
        }
        let mins: Vec<usize> = (0..size).filter(|&m| (0..size).all(|t| at(m, t))).collect();
        assert_eq!(mins.len(), 1, "poset must have a unique minimum");
        let min = mins[0];
        assert_eq!(ranks[min], 0, "minimum must have rank 0");

        let mut covers = Vec::new();
        for s in 0..size {
            for t in 0..size {
                if s != t && at(s, t) && !(0..size).any(|u| u != s && u != t && at(s, u) && at(u, t)) {
                    assert_eq!(
                        ranks[t],
                        ranks[s] + 1,
                        "covers must increase rank by exactly one"
                    );
                    covers.push((s, t));
                }
            }
        }
        // covers must generate the order
        let mut gen = vec![false; size * size];
        for s in 0..size {
            gen[s * size + s] = true;
        }
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&s| ranks[s]);
        for &t in &order {
            let incoming: Vec<usize> = covers.iter().filter(|&&(_, b)| b == t).map(|&(a, _)| a).collect();
            for s in 0..size {
                if incoming.iter().any(|&a| gen[s * size + a]) {
                    gen[s * size + t] = true;
                }
            }
        }
        assert_eq!(gen, leq, "cover relations must generate the order");

        RankedPoset {
            size,
            ranks,
            leq,
            min,
            covers,
            mobius_table: OnceLock::new(),
        }
    }

    /// Poset of the given atom sets ordered by inclusion. Valid for
    /// atomistic structures (intersection posets, geometric semilattices,
    /// cones) where order is exactly atom-set containment.
    pub fn from_atom_sets(sets: &[AtomSet], ranks: &[usize]) -> Self {
        let n = sets.len();
        let mut leq = vec![false; n * n];
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                leq[i * n + j] = a.is_subset(*b);
            }
        }
        RankedPoset::new(ranks.to_vec(), leq)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self, s: usize) -> usize {
        self.ranks[s]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn min_element(&self) -> usize {
        self.min
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.leq[s * self.size + t]
    }

    pub fn lt(&self, s: usize, t: usize) -> bool {
        s != t && self.leq(s, t)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn elements_of_rank(&self, r: usize) -> Vec<usize> {
        (0..self.size).filter(|&s| self.ranks[s] == r).collect()
    }

    pub fn rank_profile(&self) -> Vec<usize> {
        let mut profile = vec![0usize; self.max_rank() + 1];
        for &r in &self.ranks {
            profile[r] += 1;
        }
        profile
    }

    fn table(&self) -> &Vec<BigInt> {
        self.mobius_table.get_or_init(|| {
            let n = self.size;
            let mut table = vec![BigInt::zero(); n * n];
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&s| (self.ranks[s], s));
            for &s in &order {
                table[s * n + s] = BigInt::one();
                for &t in &order {
                    if !self.lt(s, t) {
                        continue;
                    }
                    let mut acc = BigInt::zero();
                    for &u in &order {
                        if self.leq(s, u) && self.lt(u, t) {
                            acc += &table[s * n + u];
                        }
                    }
                    table[s * n + t] = -acc;
                }
            }
            table
        })
    }

    /// Mobius function value mu(s, t).
    pub fn mobius(&self, s: usize, t: usize) -> Result<BigInt, PosetError> {
        if !self.leq(s, t) {
            return Err(PosetError::NotComparable { s, t });
        }
        Ok(self.table()[s * self.size + t].clone())
    }

    /// `sum_s mu(0, s) t^(ambient - rank(s))`.
    pub fn char_poly(&self, ambient: usize) -> Result<IntPolynomial, PosetError> {
        let rank = self.max_rank();
        if ambient < rank {
            return Err(PosetError::AmbientTooSmall { ambient, rank });
        }
        let table = self.table();
        let mut coeffs = vec![BigInt::zero(); ambient + 1];
        for s in 0..self.size {
            coeffs[ambient - self.ranks[s]] += &table[self.min * self.size + s];
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }

    /// Zaslavsky evaluations: `r = (-1)^ambient chi(-1)` and
    /// `b = (-1)^rank chi(1)` where rank is the poset rank.
    pub fn zaslavsky(&self, ambient: usize) -> Result<(BigInt, BigInt), PosetError> {
        let chi = self.char_poly(ambient)?;
        let r = sign_pow(ambient) * chi.eval(&BigInt::from(-1));
        let b = sign_pow(self.max_rank()) * chi.eval(&BigInt::one());
        debug_assert!(!r.is_negative() && !b.is_negative());
        Ok((r, b))
    }

    /// Induced subposet on `keep` (index order preserved). With
    /// `rebase_rank`, ranks are shifted down by the minimum kept rank.
    pub fn induced(&self, keep: &[usize], rebase_rank: bool) -> RankedPoset {
        let base = if rebase_rank {
            keep.iter().map(|&s| self.ranks[s]).min().unwrap_or(0)
        } else {
            0
        };
        let ranks: Vec<usize> = keep.iter().map(|&s| self.ranks[s] - base).collect();
        let k = keep.len();
        let mut leq = vec![false; k * k];
        for (i, &s) in keep.iter().enumerate() {
            for (j, &t) in keep.iter().enumerate() {
                leq[i * k + j] = self.leq(s, t);
            }
        }
        RankedPoset::new(ranks, leq)
    }

    /// Principal order filter above `s`, re-ranked to start at 0.
    /// Returns the filter poset and the original indices of its elements.
    pub fn filter_at(&self, s: usize) -> (RankedPoset, Vec<usize>) {
        let keep: Vec<usize> = (0..self.size).filter(|&t| self.leq(s, t)).collect();
        (self.induced(&keep, true), keep)
    }

    /// Principal order ideal below `s` (ranks unchanged).
    pub fn ideal_at(&self, s: usize) -> (RankedPoset, Vec<usize>) {
        let keep: Vec<usize> = (0..self.size).filter(|&t| self.leq(t, s)).collect();
        (self.induced(&keep, false), keep)
    }

    /// Direct product; element (i, j) maps to index `i * other.size + j`.
    pub fn product(&self, other: &RankedPoset) -> RankedPoset {
        let n = self.size * other.size;
        let mut ranks = Vec::with_capacity(n);
        for i in 0..self.size {
            for j in 0..other.size {
                ranks.push(self.ranks[i] + other.ranks[j]);
            }
        }
        let mut leq = vec![false; n * n];
        for i1 in 0..self.size {
            for j1 in 0..other.size {
                for i2 in 0..self.size {
                    for j2 in 0..other.size {
                        if self.leq(i1, i2) && other.leq(j1, j2) {
                            leq[(i1 * other.size + j1) * n + (i2 * other.size + j2)] = true;
                        }
                    }
                }
            }
        }
        RankedPoset::new(ranks, leq)
    }
}

fn sign_pow(n: usize) -> BigInt {
    if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Rank-preserving order isomorphism from `p` to `q`, or `None`.
/// Deterministic for fixed inputs. `pins` forces `p`-element -> `q`-element
/// assignments (used to pin distinguished atoms).
pub fn isomorphism_with_pins(
    p: &RankedPoset,
    q: &RankedPoset,
    pins: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if p.size() != q.size() || p.rank_profile() != q.rank_profile() {
        return None;
    }
    let pc = stable_colors(p);
    let qc = stable_colors(q);
    let mut p_classes: BTreeMap<u64, usize> = BTreeMap::new();
    let mut q_classes: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &pc {
        *p_classes.entry(c).or_insert(0) += 1;
    }
    for &c in &qc {
        *q_classes.entry(c).or_insert(0) += 1;
    }
    if p_classes != q_classes {
        return None;
    }

    let n = p.size();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for &(a, b) in pins {
        if pc[a] != qc[b] || used[b] {
            return None;
        }
        assignment[a] = Some(b);
        used[b] = true;
    }

    // Order unassigned elements: smallest color class first, then rank, index.
    let mut order: Vec<usize> = (0..n).filter(|&s| assignment[s].is_none()).collect();
    order.sort_by_key(|&s| (p_classes[&pc[s]], p.rank(s), s));

    fn consistent(p: &RankedPoset, q: &RankedPoset, assignment: &[Option<usize>], s: usize, t: usize) -> bool {
        for (u, &img) in assignment.iter().enumerate() {
            if let Some(v) = img {
                if p.leq(s, u) != q.leq(t, v) || p.leq(u, s) != q.leq(v, t) {
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(
        p: &RankedPoset,
        q: &RankedPoset,
        pc: &[u64],
        qc: &[u64],
        order: &[usize],
        pos: usize,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let s = order[pos];
        for t in 0..q.size() {
            if used[t] || qc[t] != pc[s] || !consistent(p, q, assignment, s, t) {
                continue;
            }
            assignment[s] = Some(t);
            used[t] = true;
            if backtrack(p, q, pc, qc, order, pos + 1, assignment, used) {
                return true;
            }
            assignment[s] = None;
            used[t] = false;
        }
        false
    }

    // Pins must be mutually consistent before the search starts.
    for &(a, _) in pins {
        let b = assignment[a].unwrap();
        if !consistent_excluding(p, q, &assignment, a, b) {
            return None;
        }
    }

    if backtrack(p, q, &pc, &qc, &order, 0, &mut assignment, &mut used) {
        Some(assignment.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

fn consistent_excluding(
    p: &RankedPoset,
    q: &RankedPoset,
    assignment: &[Option<usize>],
    s: usize,
    t: usize,
) -> bool {
    for (u, &img) in assignment.iter().enumerate() {
        if u == s {
            continue;
        }
        if let Some(v) = img {
            if p.leq(s, u) != q.leq(t, v) || p.leq(u, s) != q.leq(v, t) {
                return false;
            }
        }
    }
    true
}

pub fn isomorphism(p: &RankedPoset, q: &RankedPoset) -> Option<Vec<usize>> {
    isomorphism_with_pins(p, q, &[])
}

pub fn are_isomorphic(p: &RankedPoset, q: &RankedPoset) -> bool {
    isomorphism(p, q).is_some()
}

/// Iterated refinement coloring on the cover graph; isomorphism-invariant.
fn stable_colors(p: &RankedPoset) -> Vec<u64> {
    let n = p.size();
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(s, t) in p.covers() {
        up[s].push(t);
        down[t].push(s);
    }
    let mut colors: Vec<u64> = (0..n).map(|s| p.rank(s) as u64).collect();
    for _ in 0..n {
        let mut keys: Vec<(u64, Vec<u64>, Vec<u64>)> = Vec::with_capacity(n);
        for s in 0..n {
            let mut u: Vec<u64> = up[s].iter().map(|&t| colors[t]).collect();
            let mut d: Vec<u64> = down[s].iter().map(|&t| colors[t]).collect();
            u.sort_unstable();
            d.sort_unstable();
            keys.push((colors[s], u, d));
        }
        let mut palette: HashMap<&(u64, Vec<u64>, Vec<u64>), u64> = HashMap::new();
        let mut sorted: Vec<&(u64, Vec<u64>, Vec<u64>)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        for (i, k) in sorted.iter().enumerate() {
            palette.insert(k, i as u64);
        }
        let next: Vec<u64> = keys.iter().map(|k| palette[k]).collect();
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}
