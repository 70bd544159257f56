//! Named deformations of the braid arrangement (Braid, Shi, Catalan,
//! semiorder, Ish) and the identities tying their level distributions to
//! characteristic polynomials: the set-partition product formula, the
//! binomial convolution, and the binomial-basis change of variables.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::{centralize, intersection_poset, Arrangement, Hyperplane};
use crate::poly::{binomial, binomial_poly, factorial, IntPolynomial, RatPoly};
use crate::ratlin::{rat_int, Rat};
use crate::regions::level_histogram;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    ZeroSize,
    NotBraidDeformation,
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::ZeroSize => write!(f, "family index n must be at least 1"),
            FamilyError::NotBraidDeformation => {
                write!(f, "arrangement is not a nondegenerate braid deformation")
            }
        }
    }
}

fn pair_hyperplane(n: usize, i: usize, j: usize, offset: i64) -> Hyperplane {
    let mut w = vec![Rat::zero(); n];
    w[i] = rat_int(1);
    w[j] = rat_int(-1);
    Hyperplane::new(w, rat_int(offset))
}

/// Deformation with the given offset multiset on every pair, pairs
/// (i, j) in lexicographic order and offsets ascending within a pair.
fn braid_deformation(n: usize, offsets: &[i64]) -> Result<Arrangement, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ZeroSize);
    }
    let mut hyps = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for &o in offsets {
                hyps.push(pair_hyperplane(n, i, j, o));
            }
        }
    }
    Ok(Arrangement::new(n, hyps).expect("distinct pair/offset hyperplanes"))
}

/// `x_i - x_j = 0` for `i < j`.
pub fn braid(n: usize) -> Result<Arrangement, FamilyError> {
    braid_deformation(n, &[0])
}

/// `x_i - x_j = 0, 1` for `i < j`.
pub fn shi(n: usize) -> Result<Arrangement, FamilyError> {
    braid_deformation(n, &[0, 1])
}

/// `x_i - x_j = -1, 0, 1` for `i < j`.
pub fn catalan(n: usize) -> Result<Arrangement, FamilyError> {
    braid_deformation(n, &[-1, 0, 1])
}

/// `x_i - x_j = -1, 1` for `i < j`.
pub fn semiorder(n: usize) -> Result<Arrangement, FamilyError> {
    braid_deformation(n, &[-1, 1])
}

/// `x_i - x_j = 0` together with `x_1 - x_j = i`, pair (i, j) order
/// matching [`shi`]: each pair contributes its braid hyperplane and then
/// its Ish hyperplane.
pub fn ish(n: usize) -> Result<Arrangement, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ZeroSize);
    }
    let mut hyps = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            hyps.push(pair_hyperplane(n, i, j, 0));
            hyps.push(pair_hyperplane(n, 0, j, (i + 1) as i64));
        }
    }
    Ok(Arrangement::new(n, hyps).expect("distinct Ish hyperplanes"))
}

/// All set partitions of `{0..n-1}` into exactly `blocks` nonempty
/// blocks, via restricted growth strings. Blocks are sorted by least
/// element, elements ascending.
pub fn set_partitions(n: usize, blocks: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if n == 0 {
        if blocks == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        let count = rgs.iter().copied().max().unwrap() + 1;
        if count == blocks {
            let mut partition = vec![Vec::new(); count];
            for (elem, &b) in rgs.iter().enumerate() {
                partition[b].push(elem);
            }
            out.push(partition);
        }
        // advance the restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let cap = rgs[..i].iter().copied().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for slot in rgs.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// A nondegenerate braid deformation generator `n -> A_n` with cached
/// relatively-bounded counts and level tables.
pub struct ExponentialFamily {
    name: &'static str,
    generator: fn(usize) -> Result<Arrangement, FamilyError>,
    cache: Mutex<FamilyCache>,
}

#[derive(Default)]
struct FamilyCache {
    bounded: HashMap<usize, BigInt>,
    levels: HashMap<usize, Vec<BigInt>>,
}

impl ExponentialFamily {
    pub fn braid() -> Self {
        Self::named("braid", braid)
    }

    pub fn shi() -> Self {
        Self::named("shi", shi)
    }

    pub fn catalan() -> Self {
        Self::named("catalan", catalan)
    }

    pub fn semiorder() -> Self {
        Self::named("semiorder", semiorder)
    }

    pub fn ish() -> Self {
        Self::named("ish", ish)
    }

    fn named(name: &'static str, generator: fn(usize) -> Result<Arrangement, FamilyError>) -> Self {
        ExponentialFamily {
            name,
            generator,
            cache: Mutex::new(FamilyCache::default()),
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "braid" => Some(Self::braid()),
            "shi" => Some(Self::shi()),
            "catalan" => Some(Self::catalan()),
            "semiorder" => Some(Self::semiorder()),
            "ish" => Some(Self::ish()),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn generate(&self, n: usize) -> Result<Arrangement, FamilyError> {
        (self.generator)(n)
    }

    /// `b(A_m)` via the characteristic polynomial; `b(A_0) = 1`.
    pub fn bounded_count(&self, m: usize) -> BigInt {
        if m == 0 {
            return BigInt::one();
        }
        let mut cache = self.cache.lock().unwrap();
        if let Some(b) = cache.bounded.get(&m) {
            return b.clone();
        }
        let arr = self.generate(m).expect("m >= 1");
        let (_, b) = intersection_poset(&arr)
            .poset()
            .zaslavsky(arr.dim())
            .expect("ambient dimension bounds the rank");
        cache.bounded.insert(m, b.clone());
        b
    }

    /// Geometric level histogram of `A_m` (enumeration route), with the
    /// generating-function boundary convention `r_0(A_0) = 1`.
    pub fn level_table(&self, m: usize) -> Vec<BigInt> {
        if m == 0 {
            return vec![BigInt::one()];
        }
        let mut cache = self.cache.lock().unwrap();
        if let Some(t) = cache.levels.get(&m) {
            return t.clone();
        }
        let arr = self.generate(m).expect("m >= 1");
        let t = level_histogram(&arr);
        cache.levels.insert(m, t.clone());
        t
    }

    fn level_count(&self, m: usize, level: usize) -> BigInt {
        let table = self.level_table(m);
        table.get(level).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// `r_l(A_n) = l! * sum over partitions of [n] into l blocks of
/// prod_i b(A_(|B_i|))`, evaluated from the cached bounded counts.
pub fn exp_level_formula(fam: &ExponentialFamily, n: usize, level: usize) -> BigInt {
    let mut total = BigInt::zero();
    for partition in set_partitions(n, level) {
        let mut product = BigInt::one();
        for block in &partition {
            product *= fam.bounded_count(block.len());
        }
        total += product;
    }
    factorial(level) * total
}

/// Checks `r_(l1+l2)(A_n) = sum_i C(n,i) r_l1(A_i) r_l2(A_(n-i))`
/// against the enumerated level tables. Returns (lhs, rhs, equal).
pub fn binom_convolution_check(
    fam: &ExponentialFamily,
    n: usize,
    l1: usize,
    l2: usize,
) -> (BigInt, BigInt, bool) {
    let lhs = fam.level_count(n, l1 + l2);
    let mut rhs = BigInt::zero();
    for i in 0..=n {
        rhs += binomial(n, i) * fam.level_count(i, l1) * fam.level_count(n - i, l2);
    }
    let equal = lhs == rhs;
    (lhs, rhs, equal)
}

/// `Some(n)` iff the centralization of the arrangement equals Braid(n)
/// as a set of hyperplanes (nondegenerate braid deformation).
pub fn braid_deformation_order(arr: &Arrangement) -> Option<usize> {
    let n = arr.dim();
    if n == 0 {
        return None;
    }
    let cent = centralize(arr);
    let braid = braid(n).expect("n >= 1");
    let got: HashSet<_> = cent
        .arr
        .hyperplanes()
        .iter()
        .map(Hyperplane::canonical_key)
        .collect();
    let want: HashSet<_> = braid
        .hyperplanes()
        .iter()
        .map(Hyperplane::canonical_key)
        .collect();
    (got == want).then_some(n)
}

/// Characteristic polynomial from the level histogram of a nondegenerate
/// braid deformation: `chi(t) = sum_l (-1)^(n-l) r_l binom(t, l)`.
pub fn chi_from_levels(arr: &Arrangement) -> Result<IntPolynomial, FamilyError> {
    let n = braid_deformation_order(arr).ok_or(FamilyError::NotBraidDeformation)?;
    let hist = level_histogram(arr);
    let mut acc = RatPoly::zero();
    for (level, count) in hist.iter().enumerate() {
        if count.is_zero() {
            continue;
        }
        let sign = if (n - level) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        acc = acc.add(&binomial_poly(level).scale_int(&(sign * count)));
    }
    Ok(acc
        .to_int()
        .expect("binomial expansion of a characteristic polynomial is integral"))
}

/// Level histogram recovered from the characteristic polynomial alone:
/// `r_l = (-1)^n sum_k (-1)^k C(l, k) chi(k)`.
pub fn levels_from_chi(arr: &Arrangement) -> Result<Vec<BigInt>, FamilyError> {
    let n = braid_deformation_order(arr).ok_or(FamilyError::NotBraidDeformation)?;
    let chi = intersection_poset(arr)
        .poset()
        .char_poly(n)
        .expect("ambient dimension bounds the rank");
    let outer = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut out = Vec::with_capacity(n + 1);
    for level in 0..=n {
        let mut acc = BigInt::zero();
        for k in 0..=level {
            let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            acc += sign * binomial(level, k) * chi.eval(&BigInt::from(k as i64));
        }
        out.push(&outer * acc);
    }
    Ok(out)
}
