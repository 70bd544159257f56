//! Exact rational linear algebra: matrices, reduced row echelon form,
//! canonical affine subspaces, and linear-inequality feasibility.
//!
//! Every coefficient in the system is a [`Rat`] (arbitrary-precision
//! rational, always in lowest terms with positive denominator), so all
//! decisions made here are exact. No floating point anywhere.

mod feasible;

pub use feasible::{feasible, implicit_equalities, Feasibility};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact scalar used throughout the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q. Panics if q = 0.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p` or `p/q` with optional sign. Returns `None` on malformed
/// input or zero denominator.
pub fn parse_rat(token: &str) -> Option<Rat> {
    let mut parts = token.splitn(2, '/');
    let num: BigInt = parts.next()?.parse().ok()?;
    match parts.next() {
        None => Some(Rat::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.parse().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(Rat::new(num, den))
            }
        }
    }
}

/// Canonical text form: `p` when the denominator is 1, else `p/q`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form together with the rank. Exact Gauss-Jordan;
    /// the result is the unique RREF of the row space, so it doubles as a
    /// canonical form.
    pub fn rref(&self) -> (RatMatrix, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(p) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, p);
            let inv = m.at(pivot_row, col).recip();
            for c in col..m.cols {
                let v = m.at(pivot_row, c) * &inv;
                *m.at_mut(pivot_row, c) = v;
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c) - &factor * m.at(pivot_row, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }
}

/// A nonempty affine subspace of `R^ambient`, stored as the RREF of its
/// defining equality system `[A | b]` with all zero rows removed. Two
/// flats are equal as point sets iff their canonical matrices are equal,
/// so the derived `Eq`/`Hash` give O(1) deduplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineFlat {
    ambient: usize,
    canon: RatMatrix,
}

impl AffineFlat {
    /// The whole space (empty equality system).
    pub fn full_space(ambient: usize) -> Self {
        AffineFlat {
            ambient,
            canon: RatMatrix::zero(0, ambient + 1),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Codimension.
    pub fn rank(&self) -> usize {
        self.canon.rows()
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.rank()
    }

    pub fn is_full_space(&self) -> bool {
        self.canon.rows() == 0
    }

    /// Canonical equality rows as (coefficients, rhs) pairs.
    pub fn equations(&self) -> Vec<(Vec<Rat>, Rat)> {
        (0..self.canon.rows())
            .map(|r| {
                let row = self.canon.row(r);
                (row[..self.ambient].to_vec(), row[self.ambient].clone())
            })
            .collect()
    }

    /// True iff every point of the flat satisfies `coeffs . x = rhs`,
    /// i.e. the equation lies in the row space of the canonical system.
    pub fn implies_equation(&self, coeffs: &[Rat], rhs: &Rat) -> bool {
        assert_eq!(coeffs.len(), self.ambient);
        let mut row: Vec<Rat> = coeffs.to_vec();
        let mut r = rhs.clone();
        // Reduce against the RREF rows; pivot columns are strictly increasing.
        for er in 0..self.canon.rows() {
            let pivot_col = (0..self.ambient)
                .find(|&c| !self.canon.at(er, c).is_zero())
                .expect("canonical flat row is nonzero");
            if row[pivot_col].is_zero() {
                continue;
            }
            let factor = row[pivot_col].clone();
            for c in pivot_col..self.ambient {
                let v = &row[c] - &factor * self.canon.at(er, c);
                row[c] = v;
            }
            r -= &factor * self.canon.at(er, self.ambient);
        }
        row.iter().all(Rat::is_zero) && r.is_zero()
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.ambient);
        self.equations()
            .iter()
            .all(|(coeffs, rhs)| dot(coeffs, x) == *rhs)
    }

    /// A point of the flat: free variables set to zero.
    pub fn particular_point(&self) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.ambient];
        for r in 0..self.canon.rows() {
            let pivot_col = (0..self.ambient)
                .find(|&c| !self.canon.at(r, c).is_zero())
                .expect("nonzero row");
            x[pivot_col] = self.canon.at(r, self.ambient).clone();
        }
        x
    }

    /// Basis of the direction space (null space of the coefficient part),
    /// one vector per free column, in column order.
    pub fn direction_basis(&self) -> Vec<Vec<Rat>> {
        let mut pivot_of_col = vec![None; self.ambient];
        for r in 0..self.canon.rows() {
            let pivot_col = (0..self.ambient)
                .find(|&c| !self.canon.at(r, c).is_zero())
                .expect("nonzero row");
            pivot_of_col[pivot_col] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.ambient {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.ambient];
            v[free] = Rat::one();
            for (col, pr) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pr {
                    v[col] = -self.canon.at(*r, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Intersects with one more equation. `None` when the result is empty.
    pub fn with_equation(&self, coeffs: &[Rat], rhs: &Rat) -> Option<AffineFlat> {
        let mut rows = self.canon.row_vecs();
        let mut extra: Vec<Rat> = coeffs.to_vec();
        extra.push(rhs.clone());
        rows.push(extra);
        canonical_flat(self.ambient, rows)
    }
}

fn canonical_flat(ambient: usize, aug_rows: Vec<Vec<Rat>>) -> Option<AffineFlat> {
    let m = RatMatrix::from_rows(aug_rows);
    let (r, rank) = m.rref();
    let mut kept = Vec::with_capacity(rank);
    for i in 0..rank {
        let row = r.row(i);
        let pivot = (0..=ambient).find(|&c| !row[c].is_zero());
        match pivot {
            Some(c) if c == ambient => return None, // 0 = nonzero
            Some(_) => kept.push(row.to_vec()),
            None => unreachable!("rank rows are nonzero"),
        }
    }
    Some(AffineFlat {
        ambient,
        canon: RatMatrix::from_rows(if kept.is_empty() {
            return Some(AffineFlat::full_space(ambient));
        } else {
            kept
        }),
    })
}

/// Solves a pure equality system. `None` means the system is inconsistent
/// (empty solution set); otherwise the canonical flat.
pub fn solve_affine(dim: usize, equations: &[(Vec<Rat>, Rat)]) -> Option<AffineFlat> {
    if equations.is_empty() {
        return Some(AffineFlat::full_space(dim));
    }
    let rows = equations
        .iter()
        .map(|(c, r)| {
            assert_eq!(c.len(), dim, "coefficient length mismatch");
            let mut row = c.clone();
            row.push(r.clone());
            row
        })
        .collect();
    canonical_flat(dim, rows)
}

/// Constraint relation. `Gt` is strict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Ge,
    Gt,
}

/// One linear constraint `coeffs . x  rel  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rel: Rel, rhs: Rat) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.rel {
            Rel::Eq => lhs == self.rhs,
            Rel::Ge => lhs >= self.rhs,
            Rel::Gt => lhs > self.rhs,
        }
    }
}

/// A finite system of linear constraints in a fixed ambient dimension.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rat>, rel: Rel, rhs: Rat) {
        assert_eq!(coeffs.len(), self.dim, "coefficient length mismatch");
        self.constraints.push(Constraint::new(coeffs, rel, rhs));
    }

    pub fn holds_at(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.holds_at(x))
    }
}

/// Scales (coeffs, rhs) so the first nonzero coefficient is 1. Returns the
/// scaled pair and whether the scaling factor was negative.
pub fn canonical_direction(coeffs: &[Rat], rhs: &Rat) -> (Vec<Rat>, Rat, bool) {
    let lead = coeffs
        .iter()
        .find(|c| !c.is_zero())
        .expect("zero normal has no canonical direction");
    let flipped = lead.is_negative();
    let inv = lead.recip();
    (
        coeffs.iter().map(|c| c * &inv).collect(),
        rhs * &inv,
        flipped,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> RatMatrix {
        RatMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity() {
        let (r, rank) = m(vec![vec![1, 0], vec![0, 1]]).rref();
        assert_eq!(r, RatMatrix::identity(2));
        assert_eq!(rank, 2);
    }

    #[test]
    fn rref_dependent_rows() {
        let (r, rank) = m(vec![vec![1, 1], vec![2, 2]]).rref();
        assert_eq!(r, m(vec![vec![1, 1], vec![0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_swaps_rows() {
        let (r, rank) = m(vec![vec![0, 1, 2], vec![1, 0, 1]]).rref();
        assert_eq!(r, m(vec![vec![1, 0, 1], vec![0, 1, 2]]));
        assert_eq!(rank, 2);
    }

    #[test]
    fn solve_affine_parallel_is_empty() {
        // x = 0 and x = 1
        let eqs = vec![
            (vec![rat_int(1)], rat_int(0)),
            (vec![rat_int(1)], rat_int(1)),
        ];
        assert!(solve_affine(1, &eqs).is_none());
    }

    #[test]
    fn solve_affine_point() {
        let eqs = vec![
            (vec![rat_int(1), rat_int(0)], rat_int(0)),
            (vec![rat_int(0), rat_int(1)], rat_int(0)),
        ];
        let f = solve_affine(2, &eqs).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.dim(), 0);
        assert_eq!(f.particular_point(), vec![rat_int(0), rat_int(0)]);
    }

    #[test]
    fn solve_affine_idempotent_duplicate() {
        let eqs = vec![
            (vec![rat_int(1)], rat_int(0)),
            (vec![rat_int(1)], rat_int(0)),
        ];
        let f = solve_affine(1, &eqs).unwrap();
        assert_eq!(f.rank(), 1);
        let single = solve_affine(1, &eqs[..1]).unwrap();
        assert_eq!(f, single);
    }

    #[test]
    fn flat_particular_point_and_directions() {
        // x + y + z = 3 in R^3
        let eqs = vec![(vec![rat_int(1), rat_int(1), rat_int(1)], rat_int(3))];
        let f = solve_affine(3, &eqs).unwrap();
        let p = f.particular_point();
        assert!(f.contains_point(&p));
        for d in f.direction_basis() {
            let shifted: Vec<Rat> = p.iter().zip(&d).map(|(a, b)| a + b).collect();
            assert!(f.contains_point(&shifted));
        }
        assert_eq!(f.direction_basis().len(), 2);
    }

    #[test]
    fn implies_equation_detects_rowspace() {
        // x = 1, y = 2 implies x + y = 3 but not x - y = 0
        let eqs = vec![
            (vec![rat_int(1), rat_int(0)], rat_int(1)),
            (vec![rat_int(0), rat_int(1)], rat_int(2)),
        ];
        let f = solve_affine(2, &eqs).unwrap();
        assert!(f.implies_equation(&[rat_int(1), rat_int(1)], &rat_int(3)));
        assert!(!f.implies_equation(&[rat_int(1), rat_int(-1)], &rat_int(0)));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
    }

    fn arb_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(arb_rat(), r * c)
                .prop_map(move |data| RatMatrix::new(r, c, data))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let (r1, rank1) = m.rref();
            let (r2, rank2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(rank1, rank2);
        }

        #[test]
        fn solve_affine_commutes_with_row_permutation(m in arb_matrix(), seed in 0u64..1000) {
            let dim = m.cols();
            let mut eqs: Vec<(Vec<Rat>, Rat)> = (0..m.rows())
                .map(|r| {
                    let mut row = m.row(r).to_vec();
                    let rhs = row.pop().unwrap_or_else(Rat::zero);
                    (row, rhs)
                })
                .collect();
            if dim == 0 {
                return Ok(());
            }
            let orig = solve_affine(dim - 1, &eqs);
            // Cheap deterministic shuffle.
            let n = eqs.len();
            for i in 0..n {
                let j = (seed as usize + i * 7) % n;
                eqs.swap(i, j);
            }
            let permuted = solve_affine(dim - 1, &eqs);
            prop_assert_eq!(orig, permuted);
        }
    }
}
