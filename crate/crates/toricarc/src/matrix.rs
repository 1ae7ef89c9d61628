//! Exact integer linear algebra: Hermite normal form, integer kernels,
//! cokernel coordinates, and small rational solvers.
//!
//! Everything here is arbitrary-precision; no floating point is used
//! anywhere in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from rows of machine integers (convenience for tests and fan data).
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// row_i -= q * row_j
    fn sub_scaled_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let t = q * &self[(j, k)];
            self[(i, k)] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self[(i, k)].clone();
            self[(i, k)] = v;
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// Fraction-free determinant (Bareiss). Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// An integer-linear map between free lattices, stored as a
/// codomain_rank x domain_rank matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    pub domain_rank: usize,
    pub codomain_rank: usize,
    pub matrix: IntMatrix,
}

impl LatticeMap {
    pub fn new(matrix: IntMatrix) -> Self {
        LatticeMap {
            domain_rank: matrix.cols,
            codomain_rank: matrix.rows,
            matrix,
        }
    }

    pub fn apply(&self, a: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply(a)
    }
}

/// Result of a row Hermite normal form computation: `h = u * m` with
/// `u` unimodular, pivots positive and entries above each pivot reduced
/// into `[0, pivot)`.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// (row, col) of each pivot, in row order.
    pub pivots: Vec<(usize, usize)>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row Hermite normal form with transformation matrix.
///
/// Pivot rule: columns left to right; among candidate rows pick the one
/// with the smallest nonzero absolute value (lowest index on ties). The
/// rule is part of the library contract: downstream basis choices for the
/// lattices A and B are read off from `u` and must be reproducible.
pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols {
        if r >= h.rows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..h.rows {
            if !h[(i, c)].is_zero()
                && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs())
            {
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        h.swap_rows(r, p);
        u.swap_rows(r, p);
        // gcd elimination below the pivot
        loop {
            let mut clean = true;
            for i in r + 1..h.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.sub_scaled_row(i, r, &q);
                u.sub_scaled_row(i, r, &q);
                if !h[(i, c)].is_zero() {
                    h.swap_rows(r, i);
                    u.swap_rows(r, i);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.sub_scaled_row(i, r, &q);
            u.sub_scaled_row(i, r, &q);
        }
        pivots.push((r, c));
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// Basis of the integer kernel lattice `{a : a * m = 0}` (row vectors).
///
/// The basis is saturated: it consists of rows of a unimodular matrix, so
/// it extends to a basis of the ambient lattice.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let hnf = hermite_normal_form(m);
    (hnf.rank()..m.rows)
        .map(|i| hnf.u.row(i).to_vec())
        .collect()
}

/// Coordinates of the divisor classes `[Z_i]` in a basis of
/// `B = Z^N / image(M)`, where the rows of `ray_matrix` are the rays.
///
/// Returns `(rank_B, classes)` with `classes[i]` the coordinate vector of
/// the image of `e_i`. Fails with `TorsionCokernel` when B has torsion and
/// with an invariant error when the rays do not span over Q.
pub fn divisor_classes(ray_matrix: &IntMatrix) -> Result<(usize, Vec<Vec<BigInt>>)> {
    let hnf = hermite_normal_form(ray_matrix);
    let rank = hnf.rank();
    if rank < ray_matrix.cols {
        return Err(Error::Invariant(format!(
            "rays span a rank-{rank} sublattice of Z^{}",
            ray_matrix.cols
        )));
    }
    for &(r, c) in &hnf.pivots {
        if !hnf.h[(r, c)].is_one() {
            return Err(Error::TorsionCokernel(format!(
                "pivot {} at column {c}; class lattice has torsion",
                hnf.h[(r, c)]
            )));
        }
    }
    let n = ray_matrix.rows;
    let rank_b = n - rank;
    // Class of e_i: the non-pivot coordinates of u * e_i, i.e. column i of
    // the bottom rows of u. These rows are exactly the kernel basis, which
    // makes the A/B coordinate systems dual by construction.
    let classes = (0..n)
        .map(|i| (rank..n).map(|k| hnf.u[(k, i)].clone()).collect())
        .collect();
    Ok((rank_b, classes))
}

// ---------------------------------------------------------------------------
// Rational helpers (exact Gaussian elimination on small dense systems).

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn qmat_from_int(m: &IntMatrix) -> QMatrix {
    (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| BigRational::from_integer(m[(i, j)].clone()))
                .collect()
        })
        .collect()
}

/// Row echelon elimination in place; returns pivot column per eliminated row.
fn echelon(mat: &mut QMatrix) -> Vec<usize> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for k in c..cols {
            let v = &mat[r][k] * &inv;
            mat[r][k] = v;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for k in c..cols {
                    let t = &f * &mat[r][k];
                    mat[i][k] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    pivot_cols
}

pub fn rational_rank(mat: &QMatrix) -> usize {
    let mut m = mat.clone();
    echelon(&mut m).len()
}

/// Solve a square nonsingular system `m x = rhs` exactly.
pub fn rational_solve(m: &QMatrix, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    assert!(m.iter().all(|row| row.len() == n));
    assert_eq!(rhs.len(), n);
    let mut aug: QMatrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.len() < n {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Basis of the rational null space `{x : m x = 0}` (column-vector kernel).
pub fn rational_nullspace(m: &QMatrix) -> Vec<Vec<BigRational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut red = m.clone();
    let pivot_cols = echelon(&mut red);
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -red[row][f].clone();
        }
        basis.push(v);
    }
    basis
}
