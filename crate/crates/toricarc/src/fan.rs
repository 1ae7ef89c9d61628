//! Fan ingestion and combinatorics: validation flags, primitive
//! collections, and the f/h-vector transform.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::matrix::{rational_nullspace, rational_rank, rational_solve, IntMatrix, QMatrix};

/// A simplicial fan given by primitive rays and maximal cones.
///
/// Ray order is significant: it fixes the variable order x1..xN of every
/// presentation downstream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub name: String,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// Minimal non-faces of the fan's simplicial complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveCollectionSet {
    pub collections: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub simplicial: bool,
    pub smooth: bool,
    pub facet_paired: bool,
    pub rays_positively_span: bool,
    pub fano: bool,
    pub details: String,
}

impl Fan {
    /// Validate the structural invariants and return the fan.
    pub fn new(
        name: String,
        dim: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan> {
        let fan = Fan { name, dim, rays, max_cones };
        fan.check_structure()?;
        Ok(fan)
    }

    fn check_structure(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Invariant("fan dimension must be positive".into()));
        }
        if self.rays.is_empty() {
            return Err(Error::Invariant("fan has no rays".into()));
        }
        for (i, ray) in self.rays.iter().enumerate() {
            if ray.len() != self.dim {
                return Err(Error::Invariant(format!(
                    "ray {i} has {} coordinates, expected {}",
                    ray.len(),
                    self.dim
                )));
            }
            let gcd = ray.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            if gcd != 1 {
                return Err(Error::Invariant(format!(
                    "ray {i} {ray:?} is not primitive (gcd {gcd})"
                )));
            }
        }
        for i in 0..self.rays.len() {
            for j in i + 1..self.rays.len() {
                if self.rays[i] == self.rays[j] {
                    return Err(Error::Invariant(format!("duplicate ray at {i} and {j}")));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.len() != self.dim {
                return Err(Error::Invariant(format!(
                    "max cone {c} has {} rays, expected {} (simplicial input required)",
                    cone.len(),
                    self.dim
                )));
            }
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() {
                return Err(Error::Invariant(format!("max cone {c} repeats a ray index")));
            }
            if let Some(&bad) = cone.iter().find(|&&i| i >= self.rays.len()) {
                return Err(Error::Invariant(format!(
                    "max cone {c} references ray {bad}, but there are only {} rays",
                    self.rays.len()
                )));
            }
            if !seen.insert(set) {
                return Err(Error::Invariant(format!("max cone {c} is a duplicate")));
            }
        }
        Ok(())
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// N x d matrix whose rows are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays)
    }

    fn cone_matrix(&self, cone: &[usize]) -> IntMatrix {
        IntMatrix::from_rows(&cone.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>())
    }

    /// The fan of projective space of the given dimension: the standard
    /// basis rays plus their negated sum, with all d-subsets as cones.
    pub fn projective_space(dim: usize) -> Fan {
        assert!(dim >= 1);
        let mut rays: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; dim]);
        let max_cones = (0..=dim).combinations(dim).collect();
        Fan {
            name: format!("p{dim}"),
            dim,
            rays,
            max_cones,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fan serializes")
    }
}

/// Parse a fan file (UTF-8 JSON) and check all structural invariants.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let fan: Fan = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    fan.check_structure()?;
    Ok(fan)
}

/// Validation flags for a structurally sound fan.
pub fn validate_fan(fan: &Fan) -> ValidationReport {
    let d = fan.dim;
    let simplicial = fan
        .max_cones
        .iter()
        .all(|cone| !fan.cone_matrix(cone).det().is_zero());
    let smooth = simplicial
        && fan
            .max_cones
            .iter()
            .all(|cone| fan.cone_matrix(cone).det().abs().is_one());

    // every facet of a max cone must be shared by exactly two max cones
    let mut facet_counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for cone in &fan.max_cones {
        let sorted: Vec<usize> = cone.iter().copied().sorted().collect();
        for facet in sorted.iter().copied().combinations(d - 1) {
            *facet_counts.entry(facet).or_insert(0) += 1;
        }
    }
    let facet_paired = !facet_counts.is_empty() && facet_counts.values().all(|&c| c == 2);

    let rays_positively_span = positively_span(fan);
    let fano = smooth && facet_paired && fano_inequalities(fan);
    let details = format!(
        "pseudo-complete (facet-paired and rays positively span): {}",
        facet_paired && rays_positively_span
    );
    ValidationReport {
        simplicial,
        smooth,
        facet_paired,
        rays_positively_span,
        fano,
        details,
    }
}

/// True when 0 lies in the interior of the convex hull of the rays,
/// i.e. the dual cone {m : <m, v_i> >= 0 for all i} is zero.
fn positively_span(fan: &Fan) -> bool {
    let d = fan.dim;
    let q: QMatrix = fan
        .rays
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    if rational_rank(&q) < d {
        return false;
    }
    if d == 1 {
        return fan.rays.iter().any(|r| r[0] > 0) && fan.rays.iter().any(|r| r[0] < 0);
    }
    // Extreme rays of the pointed dual cone lie on d-1 independent
    // hyperplanes <., v_i> = 0; enumerate those and test both signs.
    for subset in (0..fan.num_rays()).combinations(d - 1) {
        let rows: QMatrix = subset.iter().map(|&i| q[i].clone()).collect();
        if rational_rank(&rows) != d - 1 {
            continue;
        }
        let ns = rational_nullspace(&rows);
        debug_assert_eq!(ns.len(), 1);
        for m in [ns[0].clone(), ns[0].iter().map(|x| -x).collect()] {
            let nonneg = q
                .iter()
                .all(|ray| ray.iter().zip(&m).map(|(a, b)| a * b).sum::<BigRational>() >= BigRational::zero());
            if nonneg {
                return false;
            }
        }
    }
    true
}

/// Strict convexity of the anticanonical support function: for each max
/// cone sigma with <m_sigma, v_i> = 1 on its rays, every outside ray
/// pairs to a value < 1.
fn fano_inequalities(fan: &Fan) -> bool {
    let one = BigRational::one();
    for cone in &fan.max_cones {
        let mat: QMatrix = cone
            .iter()
            .map(|&i| {
                fan.rays[i]
                    .iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let rhs = vec![one.clone(); fan.dim];
        let Some(m) = rational_solve(&mat, &rhs) else {
            return false;
        };
        for (j, ray) in fan.rays.iter().enumerate() {
            if cone.contains(&j) {
                continue;
            }
            let pairing: BigRational = ray
                .iter()
                .zip(&m)
                .map(|(&a, b)| BigRational::from_integer(a.into()) * b)
                .sum();
            if pairing >= one {
                return false;
            }
        }
    }
    true
}

fn face_set(fan: &Fan) -> BTreeSet<Vec<usize>> {
    let mut faces = BTreeSet::new();
    for cone in &fan.max_cones {
        let sorted: Vec<usize> = cone.iter().copied().sorted().collect();
        for k in 0..=sorted.len() {
            for sub in sorted.iter().copied().combinations(k) {
                faces.insert(sub);
            }
        }
    }
    faces
}

/// Minimal non-faces of the simplicial complex spanned by the max cones.
pub fn primitive_collections(fan: &Fan) -> PrimitiveCollectionSet {
    let faces = face_set(fan);
    let n = fan.num_rays();
    let mut collections = Vec::new();
    for size in 2..=n {
        'subset: for subset in (0..n).combinations(size) {
            if faces.contains(&subset) {
                continue;
            }
            for proper in subset.iter().copied().combinations(size - 1) {
                if !faces.contains(&proper) {
                    continue 'subset;
                }
            }
            collections.push(subset);
        }
    }
    PrimitiveCollectionSet { collections }
}

/// h-vector of the fan via the standard f-to-h transform; the entries sum
/// to the number of maximal cones.
pub fn h_vector(fan: &Fan) -> Result<Vec<u64>> {
    let report = validate_fan(fan);
    if !report.simplicial || !report.facet_paired {
        return Err(Error::Invariant(
            "h-vector requires a simplicial facet-paired fan".into(),
        ));
    }
    let d = fan.dim;
    let mut cone_counts = vec![0u64; d + 1];
    for face in face_set(fan) {
        cone_counts[face.len()] += 1;
    }
    // sum_j c_j (t-1)^(d-j) = sum_k h_k t^(d-k)
    let mut poly = vec![BigInt::zero(); d + 1]; // coefficients of t^0..t^d
    for (j, &c) in cone_counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        // (t-1)^(d-j), expanded
        let e = d - j;
        let mut pow = vec![BigInt::zero(); d + 1];
        for (i, slot) in pow.iter_mut().enumerate().take(e + 1) {
            let mut b = BigInt::from(num_integer::binomial(
                BigInt::from(e),
                BigInt::from(i),
            ));
            if (e - i) % 2 == 1 {
                b = -b;
            }
            *slot = b;
        }
        for (i, coef) in pow.iter().enumerate() {
            poly[i] += coef * BigInt::from(c);
        }
    }
    let mut h = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let coef = &poly[d - k];
        if coef.is_negative() {
            return Err(Error::Invariant(format!(
                "negative h-vector entry h_{k} = {coef}"
            )));
        }
        h.push(coef.to_string().parse::<u64>().expect("small h entry"));
    }
    Ok(h)
}
