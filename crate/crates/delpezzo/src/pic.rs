//! The Picard lattice of a generalised del Pezzo surface of degree `9 - n`:
//! `Z^{n+1}` with basis `H, E1, ..., En`, intersection form
//! `diag(+1, -1, ..., -1)` and canonical class `K = -3H + E1 + ... + En`.

use crate::error::{Error, Result};

/// Coordinate vector in the `(H, E1, ..., En)` basis.
pub type LatticeVector = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicLattice {
    n: usize,
    canonical: LatticeVector,
}

impl PicLattice {
    /// The lattice for a del Pezzo surface of the given degree.  Degrees 8
    /// and 9 are rejected: their lattices carry no `(-2)`-configurations.
    pub fn new(degree: u32) -> Result<Self> {
        if !(1..=7).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree as i64));
        }
        let n = (9 - degree) as usize;
        let mut canonical = vec![1i64; n + 1];
        canonical[0] = -3;
        Ok(PicLattice { n, canonical })
    }

    /// Number of blown-up points (8 for degree 1, ..., 2 for degree 7).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        (9 - self.n) as u32
    }

    /// Rank of the lattice, `n + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `K = -3H + E1 + ... + En`.
    pub fn canonical_class(&self) -> &[i64] {
        &self.canonical
    }

    /// Intersection pairing `a . b` under `diag(1, -1, ..., -1)`.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        for v in [a, b] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(self.dot(a, b))
    }

    pub(crate) fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        debug_assert_eq!(a.len(), self.dim());
        debug_assert_eq!(b.len(), self.dim());
        let mut acc = a[0] * b[0];
        for i in 1..=self.n {
            acc -= a[i] * b[i];
        }
        acc
    }

    /// Basis vector: index 0 is `H`, index `i >= 1` is `Ei`.
    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        assert!(i <= self.n);
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Is `v` a `(-2)`-class, i.e. a root of `Q = K^perp`?
    pub fn is_root(&self, v: &[i64]) -> bool {
        v.len() == self.dim() && self.dot(v, v) == -2 && self.dot(v, &self.canonical) == 0
    }

    /// Simple roots of the root system inside `Q`:
    /// `H - E1 - E2 - E3` followed by `Ei - E(i+1)` for `i = 1, ..., n-1`.
    /// For `n = 2` the first vector does not exist and the root system is a
    /// single `A1`, so only `E1 - E2` is returned.
    pub fn simple_roots(&self) -> Vec<LatticeVector> {
        let mut out = Vec::with_capacity(self.n);
        if self.n >= 3 {
            let mut r0 = vec![0; self.dim()];
            r0[0] = 1;
            r0[1] = -1;
            r0[2] = -1;
            r0[3] = -1;
            out.push(r0);
        }
        for i in 1..self.n {
            let mut r = vec![0; self.dim()];
            r[i] = 1;
            r[i + 1] = -1;
            out.push(r);
        }
        out
    }

    /// A `Z`-basis of the full sublattice `Q = K^perp`.  For `n >= 3` the
    /// simple roots already form one; for `n = 2` the roots only span a
    /// rank-1 sublattice and `H - 3*E1` completes the basis.
    pub fn q_basis(&self) -> Vec<LatticeVector> {
        if self.n >= 3 {
            return self.simple_roots();
        }
        let e12 = vec![0, 1, -1];
        let h3e1 = vec![1, -3, 0];
        vec![e12, h3e1]
    }

    /// The `q_basis` extended by `E1`: always a basis of the whole Picard
    /// lattice (the coordinate matrix is unimodular), which is exactly the
    /// surjectivity of `Pic X -> Q*`.
    pub fn extended_basis(&self) -> Vec<LatticeVector> {
        let mut out = self.q_basis();
        out.push(self.basis_vector(1));
        out
    }
}
