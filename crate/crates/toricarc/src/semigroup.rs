//! The semigroup A_+ = beta^{-1}(Z^N_+): membership, Hilbert basis,
//! and the generating series of its degree grading d(a) = sum_i beta_i(a).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{kernel_basis, rational_rank, rational_solve, LatticeMap, QMatrix};

/// The pointed affine semigroup of lattice points of A with nonnegative
/// image under beta, together with its minimal generating set.
#[derive(Debug, Clone)]
pub struct SemigroupAPlus {
    /// Rank of the ambient lattice A.
    pub ambient_rank: usize,
    /// The injective map beta: A -> Z^N.
    pub beta: LatticeMap,
    /// Minimal generating set, in A-coordinates, sorted by degree then
    /// by descending coordinate order.
    pub hilbert_basis: Vec<Vec<BigInt>>,
}

impl SemigroupAPlus {
    /// The grading d(a) = sum_i beta_i(a); positive on nonzero elements.
    pub fn degree(&self, a: &[BigInt]) -> BigInt {
        self.beta.apply(a).into_iter().sum()
    }

    pub fn contains(&self, a: &[BigInt]) -> bool {
        a_plus_contains(self, a)
    }
}

/// Membership test: beta(a) >= 0 componentwise.
pub fn a_plus_contains(s: &SemigroupAPlus, a: &[BigInt]) -> bool {
    assert_eq!(a.len(), s.ambient_rank, "wrong coordinate count");
    s.beta.apply(a).iter().all(|v| !v.is_negative())
}

/// All lattice points a with 0 <= beta(a) <= k componentwise.
///
/// Coordinate bounds come from inverting a full-rank square submatrix of
/// beta over Q, so the enumeration is exhaustive.
pub(crate) fn enumerate_box(beta: &LatticeMap, k: u64) -> Vec<Vec<BigInt>> {
    let r = beta.domain_rank;
    if r == 0 {
        return vec![Vec::new()];
    }
    let n = beta.codomain_rank;
    let q = crate::matrix::qmat_from_int(&beta.matrix);
    // first r rows of beta that are linearly independent
    let mut picked: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut trial: QMatrix = picked.iter().map(|&p| q[p].clone()).collect();
        trial.push(q[i].clone());
        if rational_rank(&trial) == picked.len() + 1 {
            picked.push(i);
            if picked.len() == r {
                break;
            }
        }
    }
    assert_eq!(picked.len(), r, "beta is not injective");
    let t: QMatrix = picked.iter().map(|&p| q[p].clone()).collect();
    // columns of t^{-1} via solves against unit vectors
    let mut t_inv_cols: Vec<Vec<BigRational>> = Vec::new();
    for j in 0..r {
        let mut e = vec![BigRational::zero(); r];
        e[j] = BigRational::from_integer(1.into());
        t_inv_cols.push(rational_solve(&t, &e).expect("submatrix is invertible"));
    }
    let kq = BigRational::from_integer(BigInt::from(k));
    let mut lo = vec![BigInt::zero(); r];
    let mut hi = vec![BigInt::zero(); r];
    for row in 0..r {
        let mut lo_acc = BigRational::zero();
        let mut hi_acc = BigRational::zero();
        for col in 0..r {
            let coef = &t_inv_cols[col][row] * &kq;
            if coef.is_negative() {
                lo_acc += coef;
            } else {
                hi_acc += coef;
            }
        }
        lo[row] = lo_acc.floor().to_integer();
        hi[row] = hi_acc.ceil().to_integer();
    }
    let bound = BigInt::from(k);
    let mut out = Vec::new();
    let mut cursor = lo.clone();
    'outer: loop {
        let image = beta.apply(&cursor);
        if image.iter().all(|v| !v.is_negative() && *v <= bound) {
            out.push(cursor.clone());
        }
        for i in 0..r {
            if cursor[i] < hi[i] {
                cursor[i] += 1;
                for (j, c) in cursor.iter_mut().enumerate().take(i) {
                    *c = lo[j].clone();
                }
                continue 'outer;
            }
        }
        break;
    }
    out.sort();
    out
}

/// Compute the Hilbert basis of `{a : beta(a) >= 0}`.
///
/// Brute-force search: enumerate the box `0 <= beta(a) <= K`, keep the
/// elements admitting no proper decomposition, and double K until the
/// semigroup generated by the candidates matches the box-restricted
/// semigroup on the doubled box.
pub fn hilbert_basis(beta: &LatticeMap) -> Result<SemigroupAPlus> {
    if !kernel_basis(&beta.matrix.transpose()).is_empty() {
        return Err(Error::NonPointed(
            "beta has a nontrivial kernel, so A_+ contains a line".into(),
        ));
    }
    let max_entry = (0..beta.matrix.rows)
        .flat_map(|i| (0..beta.matrix.cols).map(move |j| (i, j)))
        .map(|(i, j)| beta.matrix[(i, j)].abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let mut k: u64 = 4 * max_entry.to_u64().unwrap_or(1).max(1);
    loop {
        let candidates = irreducibles_in_box(beta, k);
        let box2 = enumerate_box(beta, 2 * k);
        let generated = generate_in_box(beta, &candidates, 2 * k);
        if box2.iter().all(|a| generated.contains(a)) {
            let mut basis = candidates;
            basis.sort_by(|a, b| {
                let da: BigInt = beta.apply(a).into_iter().sum();
                let db: BigInt = beta.apply(b).into_iter().sum();
                da.cmp(&db).then(b.cmp(a))
            });
            return Ok(SemigroupAPlus {
                ambient_rank: beta.domain_rank,
                beta: beta.clone(),
                hilbert_basis: basis,
            });
        }
        k *= 2;
    }
}

fn irreducibles_in_box(beta: &LatticeMap, k: u64) -> Vec<Vec<BigInt>> {
    let elements = enumerate_box(beta, k);
    let images: Vec<Vec<BigInt>> = elements.iter().map(|a| beta.apply(a)).collect();
    let mut out = Vec::new();
    'cand: for (i, a) in elements.iter().enumerate() {
        if a.iter().all(BigInt::is_zero) {
            continue;
        }
        for (j, b) in elements.iter().enumerate() {
            if i == j || b.iter().all(BigInt::is_zero) {
                continue;
            }
            // b <= a in the componentwise order of beta-images gives a
            // decomposition a = b + (a - b) with both parts in A_+
            if images[j].iter().zip(&images[i]).all(|(x, y)| x <= y) {
                continue 'cand;
            }
        }
        out.push(a.clone());
    }
    out
}

fn generate_in_box(
    beta: &LatticeMap,
    gens: &[Vec<BigInt>],
    k: u64,
) -> BTreeSet<Vec<BigInt>> {
    let bound = BigInt::from(k);
    let fits = |a: &[BigInt]| {
        beta.apply(a)
            .iter()
            .all(|v| !v.is_negative() && *v <= bound)
    };
    let mut set: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    set.insert(vec![BigInt::zero(); beta.domain_rank]);
    let mut frontier: Vec<Vec<BigInt>> = set.iter().cloned().collect();
    while let Some(a) = frontier.pop() {
        for g in gens {
            let next: Vec<BigInt> = a.iter().zip(g).map(|(x, y)| x + y).collect();
            if fits(&next) && set.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    set
}

/// Truncated generating series of the d-grading: coefficient k counts the
/// elements of A_+ with d(a) = k, for k <= cutoff.
pub fn semigroup_series(s: &SemigroupAPlus, cutoff: u64) -> Vec<u64> {
    let mut coeffs = vec![0u64; cutoff as usize + 1];
    for a in enumerate_box(&s.beta, cutoff) {
        let d = s.degree(&a);
        if let Some(d) = d.to_u64() {
            if d <= cutoff {
                coeffs[d as usize] += 1;
            }
        }
    }
    coeffs
}
