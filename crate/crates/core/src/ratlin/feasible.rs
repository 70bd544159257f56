//! Feasibility of mixed strict/non-strict rational linear systems by
//! Fourier-Motzkin elimination. Equalities are removed first by exact
//! Gaussian elimination, then inequalities are projected one variable at
//! a time with strictness tracked through every combination. A feasible
//! system yields an exact rational witness by back-substitution.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::{LinearSystem, Rat, Rel};

/// Outcome of a feasibility query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every constraint exactly.
    Feasible(Vec<Rat>),
    Infeasible,
}

impl Feasibility {
    pub fn witness(&self) -> Option<&Vec<Rat>> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Inequality `coeffs . y >= rhs` (or `>` when strict) over the free
/// variables that remain after equality elimination.
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rat>,
    rhs: Rat,
    strict: bool,
}

impl Ineq {
    /// Scales so the first nonzero coefficient has absolute value 1;
    /// positive scaling only, so the constraint is unchanged as a set.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()) {
            let scale = lead.abs().recip();
            if !scale.is_one() {
                for c in &mut self.coeffs {
                    if !c.is_zero() {
                        *c *= &scale;
                    }
                }
                self.rhs *= &scale;
            }
        }
        self
    }
}

/// Pivot data from eliminating the equality subsystem: variable `col` is
/// determined as `rhs - sum(coeff[f] * y_f)` over free columns.
struct EqPivot {
    col: usize,
    coeffs: Vec<Rat>,
    rhs: Rat,
}

/// Decides feasibility exactly and, when feasible, returns a rational
/// witness that satisfies every constraint (rechecked before returning).
pub fn feasible(sys: &LinearSystem) -> Feasibility {
    let dim = sys.dim;

    // Stage 1: eliminate equalities.
    let eq_rows: Vec<Vec<Rat>> = sys
        .constraints
        .iter()
        .filter(|c| c.rel == Rel::Eq)
        .map(|c| {
            let mut row = c.coeffs.clone();
            row.push(c.rhs.clone());
            row
        })
        .collect();

    let mut pivots: Vec<EqPivot> = Vec::new();
    let mut is_free = vec![true; dim];
    if !eq_rows.is_empty() {
        let (r, rank) = super::RatMatrix::from_rows(eq_rows).rref();
        for i in 0..rank {
            let row = r.row(i);
            let Some(pc) = (0..=dim).find(|&c| !row[c].is_zero()) else {
                unreachable!("rank rows are nonzero")
            };
            if pc == dim {
                return Feasibility::Infeasible;
            }
            is_free[pc] = false;
            pivots.push(EqPivot {
                col: pc,
                coeffs: row[..dim].to_vec(),
                rhs: row[dim].clone(),
            });
        }
    }
    let free_cols: Vec<usize> = (0..dim).filter(|&c| is_free[c]).collect();
    let col_slot: HashMap<usize, usize> = free_cols.iter().enumerate().map(|(s, &c)| (c, s)).collect();
    let m = free_cols.len();

    // Stage 2: rewrite inequalities over the free variables.
    let mut current: Vec<Ineq> = Vec::new();
    for c in &sys.constraints {
        let strict = match c.rel {
            Rel::Eq => continue,
            Rel::Ge => false,
            Rel::Gt => true,
        };
        let mut coeffs = vec![Rat::zero(); m];
        let mut rhs = c.rhs.clone();
        for (col, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if let Some(&slot) = col_slot.get(&col) {
                coeffs[slot] += a;
            } else {
                // substitute the pivot expression for this column
                let p = pivots.iter().find(|p| p.col == col).expect("pivot exists");
                rhs -= a * &p.rhs;
                for (f, &fc) in free_cols.iter().enumerate() {
                    let pc = &p.coeffs[fc];
                    if !pc.is_zero() {
                        let v = &coeffs[f] - a * pc;
                        coeffs[f] = v;
                    }
                }
            }
        }
        match push_checked(&mut current, Ineq { coeffs, rhs, strict }) {
            Ok(()) => {}
            Err(()) => return Feasibility::Infeasible,
        }
    }

    // Stage 3: Fourier-Motzkin elimination, greedy variable choice.
    let mut stack: Vec<(usize, Vec<Ineq>)> = Vec::new();
    let mut remaining: Vec<usize> = (0..m).collect();
    while !remaining.is_empty() {
        let slot = *remaining
            .iter()
            .min_by_key(|&&s| {
                let pos = current.iter().filter(|q| q.coeffs[s].is_positive()).count();
                let neg = current.iter().filter(|q| q.coeffs[s].is_negative()).count();
                (pos * neg).saturating_sub(pos + neg)
            })
            .expect("nonempty");
        remaining.retain(|&s| s != slot);

        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        let mut next = Vec::new();
        for q in &current {
            if q.coeffs[slot].is_positive() {
                lowers.push(q.clone());
            } else if q.coeffs[slot].is_negative() {
                uppers.push(q.clone());
            } else {
                next.push(q.clone());
            }
        }
        let mut seen: HashMap<(Vec<Rat>, Rat), usize> = HashMap::new();
        for (i, q) in next.iter().enumerate() {
            seen.insert((q.coeffs.clone(), q.rhs.clone()), i);
        }
        for lo in &lowers {
            for up in &uppers {
                let a = &lo.coeffs[slot]; // > 0
                let b = -&up.coeffs[slot]; // > 0
                let mut coeffs = vec![Rat::zero(); m];
                for f in 0..m {
                    if f == slot {
                        continue;
                    }
                    let v = &lo.coeffs[f] * &b + &up.coeffs[f] * a;
                    coeffs[f] = v;
                }
                let rhs = &lo.rhs * &b + &up.rhs * a;
                let combined = Ineq {
                    coeffs,
                    rhs,
                    strict: lo.strict || up.strict,
                }
                .normalized();
                if combined.coeffs.iter().all(Rat::is_zero) {
                    if violates_constant(&combined) {
                        return Feasibility::Infeasible;
                    }
                    continue;
                }
                let key = (combined.coeffs.clone(), combined.rhs.clone());
                match seen.get(&key) {
                    Some(&idx) => {
                        if combined.strict {
                            next[idx].strict = true;
                        }
                    }
                    None => {
                        seen.insert(key, next.len());
                        next.push(combined);
                    }
                }
            }
        }
        stack.push((slot, current));
        current = next;
    }

    for q in &current {
        debug_assert!(q.coeffs.iter().all(Rat::is_zero));
        if violates_constant(q) {
            return Feasibility::Infeasible;
        }
    }

    // Stage 4: back-substitute through the elimination stack.
    let mut y = vec![Rat::zero(); m];
    for (slot, system) in stack.into_iter().rev() {
        let mut lo: Option<(Rat, bool)> = None;
        let mut hi: Option<(Rat, bool)> = None;
        for q in &system {
            let a = &q.coeffs[slot];
            if a.is_zero() {
                continue;
            }
            let mut rest = q.rhs.clone();
            for f in 0..m {
                if f != slot && !q.coeffs[f].is_zero() {
                    rest -= &q.coeffs[f] * &y[f];
                }
            }
            let bound = rest / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|(v, s)| bound > *v || (bound == *v && q.strict && !s)) {
                    lo = Some((bound, q.strict));
                }
            } else if hi.as_ref().is_none_or(|(v, s)| bound < *v || (bound == *v && q.strict && !s)) {
                hi = Some((bound, q.strict));
            }
        }
        y[slot] = match (lo, hi) {
            (Some((l, ls)), Some((h, hs))) => {
                if l < h {
                    (l + h) / super::rat_int(2)
                } else {
                    assert!(l == h && !ls && !hs, "elimination guarantees a nonempty interval");
                    l
                }
            }
            (Some((l, ls)), None) => {
                if ls {
                    l + Rat::one()
                } else {
                    l
                }
            }
            (None, Some((h, hs))) => {
                if hs {
                    h - Rat::one()
                } else {
                    h
                }
            }
            (None, None) => Rat::zero(),
        };
    }

    // Stage 5: recover pivot variables and recheck everything.
    let mut x = vec![Rat::zero(); dim];
    for (slot, &col) in free_cols.iter().enumerate() {
        x[col] = y[slot].clone();
    }
    for p in pivots.iter().rev() {
        let mut v = p.rhs.clone();
        for (col, a) in p.coeffs.iter().enumerate() {
            if col != p.col && !a.is_zero() {
                v -= a * &x[col];
            }
        }
        x[p.col] = v;
    }
    assert!(
        sys.holds_at(&x),
        "internal error: witness fails the input system"
    );
    Feasibility::Feasible(x)
}

fn violates_constant(q: &Ineq) -> bool {
    let zero = Rat::zero();
    if q.strict {
        !(zero > q.rhs)
    } else {
        !(zero >= q.rhs)
    }
}

fn push_checked(out: &mut Vec<Ineq>, q: Ineq) -> Result<(), ()> {
    let q = q.normalized();
    if q.coeffs.iter().all(Rat::is_zero) {
        if violates_constant(&q) {
            return Err(());
        }
        return Ok(());
    }
    out.push(q);
    Ok(())
}

/// Indices of homogeneous `>= 0` cone constraints that hold with equality
/// on every point of the cone. Index `i` is implicit iff the cone plus
/// `coeffs_i . x > 0` is infeasible.
pub fn implicit_equalities(cone: &LinearSystem) -> Vec<usize> {
    debug_assert!(cone
        .constraints
        .iter()
        .all(|c| c.rel == Rel::Ge && c.rhs.is_zero()));
    let mut out = Vec::new();
    for i in 0..cone.constraints.len() {
        let mut probe = cone.clone();
        probe.constraints[i].rel = Rel::Gt;
        if !feasible(&probe).is_feasible() {
            out.push(i);
        }
    }
    out
}
