//! Exact integer linear algebra: Smith normal form with unimodular
//! transforms, determinants, lattice-quotient torsion and cokernels.
//!
//! Everything here is over `Z` with arbitrary-precision entries; there is no
//! floating point anywhere in this module.

use std::cmp::min;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from machine-integer rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = BigInt::from(f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    out.data[i * other.cols + j] += add;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row_dst += q * row_src
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * self.get(src, j);
            self.data[dst * self.cols + j] += add;
        }
    }

    /// col_dst += q * col_src
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * self.get(i, src);
            self.data[i * self.cols + dst] += add;
        }
    }

    /// Exact determinant of a square matrix (fraction-free Bareiss
    /// elimination; every division is exact).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            for i in k + 1..n {
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    /// Rank over `Q` (via the Smith normal form; exact).
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with a
/// divisibility chain `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries `d1 | d2 | ... | dr`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..min(self.d.rows, self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form by gcd-driven elimination, pivoting on the entry of
/// least nonzero absolute value.  The transforms are accumulated so that
/// `U * A * V = D` holds exactly.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < min(rows, cols) {
        // Pivot: least |nonzero| in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d.get(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if d.get(pi, pj).abs() <= d.get(i, j).abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // trailing block is zero
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear row t and column t; pivot magnitude strictly decreases
        // whenever a nonzero remainder shows up, so this terminates.
        let mut col_clear = true;
        for i in t + 1..rows {
            if !d.get(i, t).is_zero() {
                let q = -(d.get(i, t) / d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d.get(i, t).is_zero() {
                    col_clear = false;
                }
            }
        }
        let mut row_clear = true;
        for j in t + 1..cols {
            if !d.get(t, j).is_zero() {
                let q = -(d.get(t, j) / d.get(t, t));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d.get(t, j).is_zero() {
                    row_clear = false;
                }
            }
        }
        if !(col_clear && row_clear) {
            continue;
        }

        // Divisibility sweep: the pivot must divide the whole trailing
        // block, otherwise fold an offending row in and start over.
        let mut offender = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(d.get(i, j) % d.get(t, t)).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = BigInt::one();
            d.add_row_multiple(t, i, &one);
            u.add_row_multiple(t, i, &one);
            continue;
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SmithDecomposition { u, d, v }
}

/// Finitely generated abelian group in invariant-factor form:
/// `Z/d1 + Z/d2 + ... + Z^free_rank` with `d1 | d2 | ...` and every `di >= 2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    /// Validates the divisibility chain and that no factor is a unit.
    pub fn new(invariant_factors: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        for w in invariant_factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "invariant factors {} and {} break the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        if invariant_factors.iter().any(|d| *d <= BigInt::one()) {
            return Err(Error::InvariantViolation(
                "invariant factors must be at least 2".into(),
            ));
        }
        Ok(AbelianGroup {
            invariant_factors,
            free_rank,
        })
    }

    pub fn from_u64(factors: &[u64], free_rank: usize) -> Result<Self> {
        Self::new(
            factors.iter().map(|&d| BigInt::from(d)).collect(),
            free_rank,
        )
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Invariant factors as machine integers; the groups arising from root
    /// lattices are tiny, so this never fails in practice.
    pub fn factors_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|d| u64::try_from(d).expect("invariant factor exceeds u64"))
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// The torsion subgroup (drops the free part).
    pub fn torsion(&self) -> Self {
        AbelianGroup {
            invariant_factors: self.invariant_factors.clone(),
            free_rank: 0,
        }
    }
}

impl fmt::Display for AbelianGroup {
    /// Renders with repeated factors collapsed: `0`, `Z/2Z`, `(Z/2Z)^2`,
    /// `Z/2Z x Z/4Z`, `Z x Z/3Z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let mut count = 1;
            while i + count < self.invariant_factors.len()
                && self.invariant_factors[i + count] == *d
            {
                count += 1;
            }
            if count == 1 {
                parts.push(format!("Z/{d}Z"));
            } else {
                parts.push(format!("(Z/{d}Z)^{count}"));
            }
            i += count;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The quotient `Z^rows / im(M)` for a matrix `M` with linearly independent
/// columns: invariant factors are the nonunit diagonal entries of the Smith
/// form, the free rank is `rows - cols`.
pub fn quotient_torsion(m: &IntMatrix) -> Result<AbelianGroup> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    if rank < m.cols() {
        return Err(Error::RankDeficient {
            cols: m.cols(),
            rank,
        });
    }
    let factors = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
    Ok(AbelianGroup {
        invariant_factors: factors,
        free_rank: m.rows() - m.cols(),
    })
}

/// Cokernel of the map `Z^cols -> Z^rows` given by `A`, in invariant-factor
/// form including the free part.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let factors = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroup {
        invariant_factors: factors,
        free_rank: a.rows() - rank,
    }
}

/// `Ext^1(G, Z)`: the free part dies, the torsion part survives unchanged.
pub fn ext1_to_z(g: &AbelianGroup) -> AbelianGroup {
    g.torsion()
}

/// Solve `A x = b` exactly over `Z`.  Returns `None` when there is no
/// integral solution.  Goes through the Smith form: with `U A V = D`,
/// `x = V y` where `D y = U b`.
pub fn solve_exact(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let mut ub = vec![BigInt::zero(); a.rows()];
    for (i, out) in ub.iter_mut().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            *out += snf.u.get(i, j) * bj;
        }
    }
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        if i < r {
            let d = snf.d.get(i, i);
            if !(ubi % d).is_zero() {
                return None;
            }
            y[i] = ubi / d;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    let mut x = vec![BigInt::zero(); a.cols()];
    for (i, out) in x.iter_mut().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            *out += snf.v.get(i, j) * yj;
        }
    }
    Some(x)
}
