//! Cox quotient data and the two ring presentations: the classical one
//! (linear relations plus squarefree monomials of the primitive
//! collections) and the Batyrev quantum one (same linear relations plus
//! one binomial per Hilbert-basis element of A_+).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fan::{h_vector, primitive_collections, validate_fan, Fan, PrimitiveCollectionSet};
use crate::matrix::{
    divisor_classes, kernel_basis, qmat_from_int, rational_solve, IntMatrix, LatticeMap,
};
use crate::poly::text::{parse_poly, poly_to_text, q_names, x_names};
use crate::poly::{buchberger, standard_monomials, GroebnerBasis, Monomial, MonomialOrder, Poly};
use crate::semigroup::{hilbert_basis, SemigroupAPlus};

/// Default cap on single reduction steps in Groebner runs.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Everything the Cox quotient presentation records about a fan.
#[derive(Debug, Clone)]
pub struct CoxData {
    pub fan: Fan,
    pub a_rank: usize,
    pub b_rank: usize,
    /// beta: A -> Z^N, columns are the kernel basis of the ray matrix.
    pub beta: LatticeMap,
    pub semigroup: SemigroupAPlus,
    pub primitive_collections: PrimitiveCollectionSet,
    /// Coordinates of [Z_i] in the chosen basis of B; row i pairs with the
    /// kernel basis so that <[Z_i], a_j> = beta_i(a_j).
    pub divisor_classes: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationKind {
    Classical,
    QuantumSymbolic,
    QuantumSpecialized,
}

impl PresentationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PresentationKind::Classical => "classical",
            PresentationKind::QuantumSymbolic => "quantum-symbolic",
            PresentationKind::QuantumSpecialized => "quantum-specialized",
        }
    }
}

/// A ring presentation: named variables, optional symbolic q parameters
/// in a trailing block, and the defining relations.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub var_names: Vec<String>,
    pub q_names: Vec<String>,
    pub relations: Vec<Poly>,
    pub kind: PresentationKind,
    pub q_spec: Option<Vec<BigRational>>,
    pub warning: Option<String>,
}

impl Presentation {
    pub fn num_vars(&self) -> usize {
        self.var_names.len() + self.q_names.len()
    }

    pub fn all_names(&self) -> Vec<String> {
        self.var_names
            .iter()
            .chain(self.q_names.iter())
            .cloned()
            .collect()
    }

    /// degrevlex, with the q block ordered behind the x block.
    pub fn order(&self) -> MonomialOrder {
        if self.q_names.is_empty() {
            MonomialOrder::degrevlex()
        } else {
            MonomialOrder::degrevlex().with_block(self.var_names.len())
        }
    }

    pub fn relation_texts(&self) -> Vec<String> {
        let names = self.all_names();
        let order = self.order();
        self.relations
            .iter()
            .map(|p| poly_to_text(p, &names, &order))
            .collect()
    }

    pub fn parse_in_slate(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.all_names())
    }

    pub fn groebner(&self, budget: u64) -> Result<GroebnerBasis> {
        buchberger(&self.relations, &self.order(), budget)
    }
}

/// Assemble lattices, semigroup, primitive collections and divisor
/// classes for a smooth facet-paired fan.
pub fn build_cox_data(fan: &Fan) -> Result<CoxData> {
    let report = validate_fan(fan);
    if !report.smooth {
        return Err(Error::Invariant(format!(
            "fan '{}' is not smooth",
            fan.name
        )));
    }
    if !report.facet_paired {
        return Err(Error::Invariant(format!(
            "fan '{}' is not facet-paired",
            fan.name
        )));
    }
    let ray_matrix = fan.ray_matrix();
    let kernel = kernel_basis(&ray_matrix);
    let n = fan.num_rays();
    let r = kernel.len();
    let mut beta_mat = IntMatrix::zero(n, r);
    for (j, a) in kernel.iter().enumerate() {
        for (i, x) in a.iter().enumerate() {
            beta_mat[(i, j)] = x.clone();
        }
    }
    let beta = LatticeMap::new(beta_mat);
    let (b_rank, classes) = divisor_classes(&ray_matrix)?;
    debug_assert_eq!(b_rank, r);
    let semigroup = hilbert_basis(&beta)?;
    Ok(CoxData {
        fan: fan.clone(),
        a_rank: r,
        b_rank,
        beta,
        semigroup,
        primitive_collections: primitive_collections(fan),
        divisor_classes: classes,
    })
}

fn linear_relations(cd: &CoxData, nvars: usize) -> Vec<Poly> {
    let fan = &cd.fan;
    (0..fan.dim)
        .map(|j| {
            let mut p = Poly::zero(nvars);
            for (i, ray) in fan.rays.iter().enumerate() {
                p.add_term(
                    Monomial::var(i, nvars),
                    BigRational::from_integer(ray[j].into()),
                );
            }
            p
        })
        .collect()
}

fn exponents_to_u32(v: &[BigInt]) -> Vec<u32> {
    v.iter()
        .map(|x| x.to_u32().expect("small nonnegative exponent"))
        .collect()
}

/// x^{beta(a)} as a monomial in a slate with `nvars` variables, the first
/// N of which are the x's.
fn beta_monomial(cd: &CoxData, a: &[BigInt], nvars: usize) -> Monomial {
    let image = cd.beta.apply(a);
    assert!(image.iter().all(|v| !v.is_negative()), "a must lie in A_+");
    let mut exps = exponents_to_u32(&image);
    exps.resize(nvars, 0);
    Monomial(exps)
}

fn rat_pow(c: &BigRational, e: &BigInt) -> BigRational {
    let mut base = c.clone();
    let mut exp = e.clone();
    if exp.is_negative() {
        base = base.recip();
        exp = -exp;
    }
    let mut out = BigRational::from_integer(1.into());
    let mut k = BigInt::zero();
    while k < exp {
        out *= &base;
        k += 1;
    }
    out
}

/// q^a for a specialized q vector: the product of c_j^{a_j}.
pub fn q_power_value(q_spec: &[BigRational], a: &[BigInt]) -> BigRational {
    q_spec
        .iter()
        .zip(a)
        .fold(BigRational::from_integer(1.into()), |acc, (c, e)| {
            acc * rat_pow(c, e)
        })
}

/// Variables x1..xN and relations of the classical cohomology ring.
pub fn classical_presentation(cd: &CoxData) -> Presentation {
    let n = cd.fan.num_rays();
    let mut relations = linear_relations(cd, n);
    for pc in &cd.primitive_collections.collections {
        let mut exps = vec![0u32; n];
        for &i in pc {
            exps[i] = 1;
        }
        relations.push(Poly::from_term(
            BigRational::from_integer(1.into()),
            Monomial(exps),
        ));
    }
    Presentation {
        var_names: x_names(n),
        q_names: Vec::new(),
        relations,
        kind: PresentationKind::Classical,
        q_spec: None,
        warning: None,
    }
}

/// Graded dimensions of the classical quotient, cross-checked against the
/// h-vector of the fan.
pub fn betti_numbers(cd: &CoxData, budget: u64) -> Result<Vec<u64>> {
    let pres = classical_presentation(cd);
    let gb = pres.groebner(budget)?;
    let standard = standard_monomials(&gb, None).map_err(|e| match e {
        Error::InfiniteDimension => Error::MismatchWithHVector(
            "classical quotient is infinite-dimensional".into(),
        ),
        other => other,
    })?;
    let h = h_vector(&cd.fan)?;
    let mut dims = vec![0u64; h.len()];
    for m in &standard {
        let d = m.degree() as usize;
        if d >= dims.len() {
            return Err(Error::MismatchWithHVector(format!(
                "standard monomial of degree {d} exceeds the fan dimension"
            )));
        }
        dims[d] += 1;
    }
    if dims != h {
        return Err(Error::MismatchWithHVector(format!(
            "graded dimensions {dims:?} != h-vector {h:?}"
        )));
    }
    Ok(dims)
}

/// The Batyrev presentation. With `q_spec` the parameters are specialized
/// to nonzero rationals; otherwise symbolic q variables are appended to
/// the slate. Requires a Fano fan unless `allow_non_fano` is set, in which
/// case a warning is attached and no HQ(X) claim is made.
pub fn quantum_presentation(
    cd: &CoxData,
    q_spec: Option<&[BigRational]>,
    allow_non_fano: bool,
) -> Result<Presentation> {
    let report = validate_fan(&cd.fan);
    let mut warning = None;
    if !report.fano {
        if !allow_non_fano {
            return Err(Error::NotFano);
        }
        warning = Some(
            "fan is not Fano: the Batyrev relations below are not claimed to present HQ(X)"
                .to_string(),
        );
    }
    let n = cd.fan.num_rays();
    let r = cd.a_rank;
    if let Some(spec) = q_spec {
        if spec.len() != r {
            return Err(Error::ZeroQSpec(format!(
                "expected {r} values, got {}",
                spec.len()
            )));
        }
        if let Some(bad) = spec.iter().position(|c| c.is_zero()) {
            return Err(Error::ZeroQSpec(format!(
                "q{} = 0 is not invertible",
                bad + 1
            )));
        }
        let mut relations = linear_relations(cd, n);
        for a in &cd.semigroup.hilbert_basis {
            let mono = beta_monomial(cd, a, n);
            let value = q_power_value(spec, a);
            let mut p = Poly::from_term(BigRational::from_integer(1.into()), mono);
            p.add_term(Monomial::one(n), -value);
            relations.push(p);
        }
        Ok(Presentation {
            var_names: x_names(n),
            q_names: Vec::new(),
            relations,
            kind: PresentationKind::QuantumSpecialized,
            q_spec: Some(spec.to_vec()),
            warning,
        })
    } else {
        let nvars = n + r;
        let mut relations = linear_relations(cd, nvars);
        for a in &cd.semigroup.hilbert_basis {
            if a.iter().any(|c| c.is_negative()) {
                return Err(Error::Invariant(format!(
                    "hilbert basis element {a:?} has negative A-coordinates; \
                     symbolic q exponents would be Laurent"
                )));
            }
            let mono = beta_monomial(cd, a, nvars);
            let mut q_exps = vec![0u32; nvars];
            for (j, c) in a.iter().enumerate() {
                q_exps[n + j] = c.to_u32().expect("small exponent");
            }
            let mut p = Poly::from_term(BigRational::from_integer(1.into()), mono);
            p.add_term(Monomial(q_exps), BigRational::from_integer((-1).into()));
            relations.push(p);
        }
        Ok(Presentation {
            var_names: x_names(n),
            q_names: q_names(r),
            relations,
            kind: PresentationKind::QuantumSymbolic,
            q_spec: None,
            warning,
        })
    }
}

/// Substitute the linear relations away using the unimodular pivot block
/// of the first maximal cone; the surviving variables keep their names.
pub fn eliminate_linear(pres: &Presentation, cd: &CoxData) -> Result<Presentation> {
    let fan = &cd.fan;
    let n = fan.num_rays();
    let d = fan.dim;
    let mut pivot_cone: Vec<usize> = fan.max_cones[0].clone();
    pivot_cone.sort_unstable();
    let kept: Vec<usize> = (0..n).filter(|i| !pivot_cone.contains(i)).collect();
    // linear block: row j is sum_i <e_j, v_i> x_i; solve for the pivot vars
    let lq = qmat_from_int(&fan.ray_matrix().transpose());
    let pivot_mat: Vec<Vec<BigRational>> = (0..d)
        .map(|j| pivot_cone.iter().map(|&i| lq[j][i].clone()).collect())
        .collect();
    let new_x = kept.len();
    let new_vars = new_x + pres.q_names.len();
    let mut images: Vec<Poly> = vec![Poly::zero(new_vars); pres.num_vars()];
    for (t, &i) in kept.iter().enumerate() {
        images[i] = Poly::var(t, new_vars);
    }
    for (j, _) in pres.q_names.iter().enumerate() {
        images[n + j] = Poly::var(new_x + j, new_vars);
    }
    for (t, &i) in kept.iter().enumerate() {
        // column of the solved system: pivot_mat * s_col = -L[:, i]
        let rhs: Vec<BigRational> = (0..d).map(|j| -lq[j][i].clone()).collect();
        let col = rational_solve(&pivot_mat, &rhs).ok_or_else(|| {
            Error::Invariant("pivot cone is degenerate".into())
        })?;
        for (k, &pv) in pivot_cone.iter().enumerate() {
            let mut img = std::mem::replace(&mut images[pv], Poly::zero(new_vars));
            img.add_term(Monomial::var(t, new_vars), col[k].clone());
            images[pv] = img;
        }
    }
    let mut relations = Vec::new();
    for rel in pres.relations.iter().skip(d) {
        let mapped = rel.substitute(&images);
        if !mapped.is_zero() {
            relations.push(mapped);
        }
    }
    for rel in pres.relations.iter().take(d) {
        debug_assert!(rel.substitute(&images).is_zero(), "pivot solve failed");
    }
    Ok(Presentation {
        var_names: kept.iter().map(|&i| pres.var_names[i].clone()).collect(),
        q_names: pres.q_names.clone(),
        relations,
        kind: pres.kind,
        q_spec: pres.q_spec.clone(),
        warning: pres.warning.clone(),
    })
}

/// A quantum presentation together with its reduced Groebner basis.
pub struct QuantumRing {
    pub presentation: Presentation,
    pub basis: GroebnerBasis,
}

impl QuantumRing {
    pub fn new(
        cd: &CoxData,
        q_spec: Option<&[BigRational]>,
        allow_non_fano: bool,
        budget: u64,
    ) -> Result<QuantumRing> {
        let presentation = quantum_presentation(cd, q_spec, allow_non_fano)?;
        let basis = presentation.groebner(budget)?;
        Ok(QuantumRing { presentation, basis })
    }

    /// Normal form of the product of the given divisor classes
    /// (0-based indices into x1..xN).
    pub fn product(&self, factors: &[usize]) -> Poly {
        let nvars = self.presentation.num_vars();
        let mut exps = vec![0u32; nvars];
        for &f in factors {
            assert!(f < self.presentation.var_names.len(), "factor index");
            exps[f] += 1;
        }
        let m = Poly::from_term(BigRational::from_integer(1.into()), Monomial(exps));
        crate::poly::normal_form(&m, &self.basis)
    }

    pub fn product_text(&self, factors: &[usize]) -> String {
        poly_to_text(
            &self.product(factors),
            &self.presentation.all_names(),
            &self.presentation.order(),
        )
    }
}

/// Normal form of a product of divisor classes over the quantum basis.
pub fn quantum_product(
    cd: &CoxData,
    factors: &[usize],
    q_spec: Option<&[BigRational]>,
    allow_non_fano: bool,
    budget: u64,
) -> Result<Poly> {
    Ok(QuantumRing::new(cd, q_spec, allow_non_fano, budget)?.product(factors))
}

#[derive(Debug, Clone)]
pub struct RankTrial {
    pub q_spec: Vec<BigRational>,
    pub dimension: u64,
}

#[derive(Debug, Clone)]
pub struct RankCheckReport {
    pub expected: u64,
    pub trials: Vec<RankTrial>,
}

/// Random nonzero rational with numerator in +-1..9 and denominator in 1..9.
pub fn random_q_value(rng: &mut ChaCha8Rng) -> BigRational {
    let numer: i64 = rng.gen_range(1..=9);
    let denom: i64 = rng.gen_range(1..=9);
    let sign: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::new((sign * numer).into(), denom.into())
}

/// Specialize q at seeded random points and check that the quotient
/// dimension equals the sum of the Betti numbers every time.
pub fn quantum_rank_check(
    cd: &CoxData,
    trials: u64,
    seed: u64,
    allow_non_fano: bool,
    budget: u64,
) -> Result<RankCheckReport> {
    let expected: u64 = betti_numbers(cd, budget)?.iter().sum();
    let mut report = RankCheckReport { expected, trials: Vec::new() };
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
        let spec: Vec<BigRational> = (0..cd.a_rank).map(|_| random_q_value(&mut rng)).collect();
        let ring = QuantumRing::new(cd, Some(&spec), allow_non_fano, budget)?;
        let dimension = standard_monomials(&ring.basis, None)?.len() as u64;
        if dimension != expected {
            return Err(Error::RankMismatch(format!(
                "trial {t} with q = ({}) gave dimension {dimension}, expected {expected}",
                spec.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        report.trials.push(RankTrial { q_spec: spec, dimension });
    }
    Ok(report)
}

/// Seeded random element of A_+: a small nonnegative combination of the
/// Hilbert basis.
pub fn sample_a_plus(cd: &CoxData, rng: &mut ChaCha8Rng, max_coeff: u64) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); cd.a_rank];
    for h in &cd.semigroup.hilbert_basis {
        let c = BigInt::from(rng.gen_range(0..=max_coeff));
        for (slot, x) in a.iter_mut().zip(h) {
            *slot += &c * x;
        }
    }
    a
}
