//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with its runtime. Expected values are exact; no tolerances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

use toricarc::cox::{
    build_cox_data, classical_presentation, eliminate_linear, quantum_presentation,
    quantum_rank_check, sample_a_plus, QuantumRing, DEFAULT_BUDGET,
};
use toricarc::fan::{parse_fan, Fan};
use toricarc::jet::{epsilon_shift, jet_var_index, jet_relations};
use toricarc::matrix::{rational_rank, QMatrix};
use toricarc::poly::groebner::s_polynomials_reduce_to_zero;
use toricarc::poly::{standard_monomials, GroebnerBasis, Monomial, Poly};
use toricarc::{
    build_arc_model, cousin_series_check, self_embedding_codim, verify_theorem_main,
};

const ALL_FANS: [&str; 6] = ["p1", "p2", "p3", "p1xp1", "f1", "f2"];
const FANO_FANS: [&str; 5] = ["p1", "p2", "p3", "p1xp1", "f1"];

fn fixture(name: &str) -> toricarc::CoxData {
    let path = format!("{}/../../fixtures/{name}.fan", env!("CARGO_MANIFEST_DIR"));
    let fan = parse_fan(&std::fs::read_to_string(path).unwrap()).unwrap();
    build_cox_data(&fan).unwrap()
}

fn conclude(number: u32, name: &str, limit: Duration, started: Instant, failures: Vec<String>) {
    let elapsed = started.elapsed();
    let in_time = elapsed <= limit;
    let ok = failures.is_empty() && in_time;
    println!(
        "ACCEPTANCE {number} ({name}): {} [{elapsed:.2?}]",
        if ok { "PASS" } else { "FAIL" }
    );
    for f in &failures {
        println!("    - {f}");
    }
    if !in_time {
        panic!("criterion {number} exceeded its time limit: {elapsed:.2?} > {limit:.2?}");
    }
    assert!(failures.is_empty(), "criterion {number} failed:\n{}", failures.join("\n"));
}

#[test]
fn criterion_1_projective_space_relation() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=6usize {
        let fan = Fan::projective_space(n - 1);
        let cd = build_cox_data(&fan).unwrap();
        let pres = quantum_presentation(&cd, None, false).unwrap();
        let reduced = eliminate_linear(&pres, &cd).unwrap();
        let expected = format!("x{n}^{n} - q1");
        if reduced.relations.len() != 1 || reduced.relation_texts() != vec![expected.clone()] {
            failures.push(format!(
                "P^{}: eliminated to {:?}, expected [{expected}]",
                n - 1,
                reduced.relation_texts()
            ));
        }
        let ring = QuantumRing::new(&cd, None, false, DEFAULT_BUDGET).unwrap();
        let product = ring.product(&vec![0usize; n]);
        let nvars = ring.presentation.num_vars();
        let mut q_exps = vec![0u32; nvars];
        q_exps[nvars - 1] = 1;
        let q = Poly::from_term(BigRational::from_integer(1.into()), Monomial(q_exps));
        if product != q {
            failures.push(format!(
                "P^{}: product of {n} hyperplane classes is {}, expected q1",
                n - 1,
                ring.product_text(&vec![0usize; n])
            ));
        }
    }
    conclude(1, "projective space relation q = x^N", Duration::from_secs(5), start, failures);
}

#[test]
fn criterion_2_classical_presentations() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let expected_totals = [("p1", 2u64), ("p2", 3), ("p3", 4), ("p1xp1", 4), ("f1", 4)];
    for (name, total) in expected_totals {
        let cd = fixture(name);
        match toricarc::betti_numbers(&cd, DEFAULT_BUDGET) {
            Ok(betti) => {
                let h = toricarc::h_vector(&cd.fan).unwrap();
                if betti != h {
                    failures.push(format!("{name}: betti {betti:?} != h-vector {h:?}"));
                }
                if betti.iter().sum::<u64>() != total {
                    failures.push(format!(
                        "{name}: betti total {} != max cone count {total}",
                        betti.iter().sum::<u64>()
                    ));
                }
                if cd.fan.max_cones.len() as u64 != total {
                    failures.push(format!("{name}: fixture has wrong cone count"));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    conclude(2, "classical presentations and Betti numbers", Duration::from_secs(2), start, failures);
}

#[test]
fn criterion_3_quantum_freeness_rank() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for name in FANO_FANS {
        let cd = fixture(name);
        match quantum_rank_check(&cd, 5, 0, false, DEFAULT_BUDGET) {
            Ok(report) => {
                if report.trials.len() != 5
                    || report.trials.iter().any(|t| t.dimension != report.expected)
                {
                    failures.push(format!("{name}: some trial missed {}", report.expected));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    conclude(3, "freeness and rank of the quantum quotient", Duration::from_secs(10), start, failures);
}

#[test]
fn criterion_4_codimension_formula() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for name in ALL_FANS {
        let cd = fixture(name);
        for trial in 0..20 {
            let a = sample_a_plus(&cd, &mut rng, 3);
            let c = sample_a_plus(&cd, &mut rng, 3);
            let b: Vec<BigInt> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let codim = self_embedding_codim(&cd, &a, &b).unwrap();
            let image = cd.beta.apply(&c);
            let m = image
                .iter()
                .map(|v| v.to_u32().unwrap())
                .max()
                .unwrap_or(0)
                .max(1);
            let shift = epsilon_shift(&cd, &c, m).unwrap();
            if BigInt::from(shift.image_codim()) != codim {
                failures.push(format!(
                    "{name} trial {trial}: embedding codim {codim} != image locus codim {}",
                    shift.image_codim()
                ));
            }
        }
    }
    conclude(4, "codimension formula vs jet image locus", Duration::from_secs(5), start, failures);
}

#[test]
fn criterion_5_cousin_series_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for name in ALL_FANS {
        let cd = fixture(name);
        let report = cousin_series_check(&cd, 20).unwrap();
        if !report.holds {
            let first = report
                .lhs
                .iter()
                .zip(&report.rhs)
                .position(|(a, b)| a != b)
                .unwrap();
            failures.push(format!(
                "{name}: series differ first at degree {first} (lhs {} vs rhs {})",
                report.lhs[first], report.rhs[first]
            ));
        }
    }
    conclude(5, "graded series identity to degree 20", Duration::from_secs(5), start, failures);
}

#[test]
fn criterion_6_theorem_verifier() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for name in FANO_FANS {
        match verify_theorem_main(&fixture(name), 5, 0, 20, false, DEFAULT_BUDGET) {
            Ok(report) => {
                if !report.passed() {
                    failures.push(format!("{name}: verdicts failed: {}", report.details.join("; ")));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    // corrupting one beta entry must break the verification
    let mut corrupted = fixture("p2");
    corrupted.beta.matrix[(0, 0)] += BigInt::from(1);
    match verify_theorem_main(&corrupted, 5, 0, 20, false, DEFAULT_BUDGET) {
        Ok(report) => {
            if report.passed() {
                failures.push("corrupted beta entry went undetected".into());
            }
        }
        Err(_) => {}
    }
    conclude(6, "localization theorem verifier", Duration::from_secs(10), start, failures);
}

/// Independent jet oracle: expand in a slate with an explicit t variable,
/// with no intermediate truncation, then collect t-coefficients.
fn naive_jet_oracle(f: &Poly, p: usize, m: u32) -> Vec<Poly> {
    let len = m as usize + 1;
    let nvars = p * len;
    let wide = nvars + 1;
    let images: Vec<Poly> = (0..p)
        .map(|j| {
            let mut s = Poly::zero(wide);
            for n in 0..=m {
                let mut exps = vec![0u32; wide];
                exps[jet_var_index(j, n, m)] = 1;
                exps[nvars] = n;
                s.add_term(Monomial(exps), BigRational::from_integer(1.into()));
            }
            s
        })
        .collect();
    let expanded = f.substitute(&images);
    let mut out = vec![Poly::zero(nvars); len];
    for (mono, coeff) in expanded.terms() {
        let t_power = mono.0[nvars] as usize;
        if t_power < len {
            out[t_power].add_term(Monomial(mono.0[..nvars].to_vec()), coeff.clone());
        }
    }
    out
}

#[test]
fn criterion_7_jet_relations_vs_oracle() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let p = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=4);
        let mut f = Poly::zero(p);
        for _ in 0..rng.gen_range(1..=4) {
            let exps: Vec<u32> = (0..p).map(|_| rng.gen_range(0..=3)).collect();
            if exps.iter().sum::<u32>() > 3 {
                continue;
            }
            f.add_term(
                Monomial(exps),
                BigRational::from_integer(rng.gen_range(-5..=5).into()),
            );
        }
        if f.is_zero() {
            continue;
        }
        checked += 1;
        let names: Vec<String> = (1..=p).map(|j| format!("u{j}")).collect();
        let jp = jet_relations(&[f.clone()], &names, m);
        let oracle = naive_jet_oracle(&f, p, m);
        if jp.relations != oracle {
            failures.push(format!("mismatch at sample {checked} (p={p}, m={m})"));
        }
    }
    conclude(7, "jet relations vs naive series oracle", Duration::from_secs(10), start, failures);
}

#[test]
fn criterion_8_semigroup_laws() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for name in ALL_FANS {
        let cd = fixture(name);
        let model = build_arc_model(&cd);
        for trial in 0..50 {
            let a = sample_a_plus(&cd, &mut rng, 3);
            let b = sample_a_plus(&cd, &mut rng, 3);
            let sum: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let mu_law = model.mu(&sum).unwrap()
                == model.mu(&a).unwrap().mul(&model.mu(&b).unwrap());
            if !mu_law {
                failures.push(format!("{name} trial {trial}: mu(a+b) != mu(a) mu(b)"));
            }
            let m = 4;
            let sa = epsilon_shift(&cd, &a, m).unwrap();
            let sb = epsilon_shift(&cd, &b, m).unwrap();
            let sab = epsilon_shift(&cd, &sum, m).unwrap();
            if sa.compose(&sb) != sab
                || sa.compose(&sb).substitution() != sab.substitution()
            {
                failures.push(format!("{name} trial {trial}: shift composition law broke"));
            }
        }
    }
    conclude(8, "semigroup laws for mu and the shifts", Duration::from_secs(5), start, failures);
}

/// Graded Macaulay oracle for a homogeneous ideal: the dimension of each
/// graded piece of the quotient via ranks of spanned-multiple matrices.
fn graded_macaulay_dims(gens: &[Poly], nvars: usize, cutoff: u32) -> Vec<u64> {
    let mut dims = Vec::new();
    for k in 0..=cutoff {
        let monomials = monomials_of_degree(nvars, k);
        let index = |m: &Monomial| monomials.iter().position(|x| x == m).unwrap();
        let mut rows: QMatrix = Vec::new();
        for g in gens {
            let gdeg = match g.total_degree() {
                Some(d) => d,
                None => continue,
            };
            if gdeg > k {
                continue;
            }
            for mult in monomials_of_degree(nvars, k - gdeg) {
                let shifted = g.mul_term(&mult, &BigRational::from_integer(1.into()));
                let mut row = vec![BigRational::zero(); monomials.len()];
                for (m, c) in shifted.terms() {
                    row[index(m)] = c.clone();
                }
                rows.push(row);
            }
        }
        let rank = if rows.is_empty() { 0 } else { rational_rank(&rows) };
        dims.push(monomials.len() as u64 - rank as u64);
    }
    dims
}

fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn go(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, left: u32) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(Monomial(current.clone()));
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            go(out, current, pos + 1, left - e);
        }
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    go(&mut out, &mut current, 0, degree);
    out
}

/// Affine linear-algebra oracle for the quotient dimension of a
/// zero-dimensional ideal. Naive truncation would count solutions of the
/// homogenization (including points at infinity), so the matrix carries a
/// degree-fall window E: relations of degree up to D+E are intersected
/// with the degree <= D space via a rank difference, and both D and E are
/// grown until the estimate stabilizes.
fn affine_macaulay_dim(gens: &[Poly], nvars: usize) -> u64 {
    let max_deg = gens.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
    let estimate = |d: u32, e: u32| -> u64 {
        // columns: monomials of degree > d first, then the low block
        let mut high = Vec::new();
        let mut low = Vec::new();
        for k in 0..=(d + e) {
            for m in monomials_of_degree(nvars, k) {
                if k > d {
                    high.push(m);
                } else {
                    low.push(m);
                }
            }
        }
        let columns: Vec<&Monomial> = high.iter().chain(low.iter()).collect();
        let index = |m: &Monomial| columns.iter().position(|x| *x == m).expect("inside box");
        let mut rows: QMatrix = Vec::new();
        for g in gens {
            let gdeg = g.total_degree().unwrap_or(0);
            if gdeg > d + e {
                continue;
            }
            for k in 0..=(d + e - gdeg) {
                for mult in monomials_of_degree(nvars, k) {
                    let shifted = g.mul_term(&mult, &BigRational::from_integer(1.into()));
                    let mut row = vec![BigRational::zero(); columns.len()];
                    for (m, c) in shifted.terms() {
                        row[index(m)] = c.clone();
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return low.len() as u64;
        }
        let r_full = rational_rank(&rows);
        let high_part: QMatrix = rows
            .iter()
            .map(|r| r[..high.len()].to_vec())
            .collect();
        let r_high = if high.is_empty() { 0 } else { rational_rank(&high_part) };
        // rank of (span of multiples) intersected with the low block
        low.len() as u64 - (r_full - r_high) as u64
    };
    let stable_at = |d: u32| -> u64 {
        let mut prev = None;
        let mut e = 0;
        loop {
            let value = estimate(d, e);
            if prev == Some(value) {
                return value;
            }
            prev = Some(value);
            e += 1;
        }
    };
    let mut d = max_deg.max(1);
    let mut prev = None;
    loop {
        let value = stable_at(d);
        if prev == Some(value) && d >= 2 * max_deg + 2 {
            return value;
        }
        prev = Some(value);
        d += 1;
    }
}

#[test]
fn criterion_9_groebner_soundness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    fn check_basis(failures: &mut Vec<String>, label: &str, gb: &GroebnerBasis) {
        if !s_polynomials_reduce_to_zero(gb) {
            failures.push(format!("{label}: an S-polynomial does not reduce to zero"));
        }
    }
    for name in ALL_FANS {
        let cd = fixture(name);
        // classical: S-polynomials plus graded linear-algebra oracle
        let pres = classical_presentation(&cd);
        let gb = pres.groebner(DEFAULT_BUDGET).unwrap();
        check_basis(&mut failures, &format!("{name} classical"), &gb);
        let standard = standard_monomials(&gb, None).unwrap();
        if standard.len() <= 30 {
            let cutoff = cd.fan.dim as u32 + 1;
            let oracle = graded_macaulay_dims(&pres.relations, pres.num_vars(), cutoff);
            let mut counted = vec![0u64; cutoff as usize + 1];
            for m in &standard {
                counted[m.degree() as usize] += 1;
            }
            if oracle != counted {
                failures.push(format!(
                    "{name} classical: Macaulay dims {oracle:?} != standard monomial counts {counted:?}"
                ));
            }
        }
        // quantum, symbolic when available plus one seeded specialization
        let allow = name == "f2";
        if let Ok(ring) = QuantumRing::new(&cd, None, allow, DEFAULT_BUDGET) {
            check_basis(&mut failures, &format!("{name} quantum symbolic"), &ring.basis);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let spec: Vec<BigRational> = (0..cd.a_rank)
            .map(|_| toricarc::cox::random_q_value(&mut rng))
            .collect();
        let ring = QuantumRing::new(&cd, Some(&spec), allow, DEFAULT_BUDGET).unwrap();
        check_basis(&mut failures, &format!("{name} quantum specialized"), &ring.basis);
        let count = standard_monomials(&ring.basis, None).unwrap().len() as u64;
        if count <= 30 {
            let reduced = eliminate_linear(&ring.presentation, &cd).unwrap();
            let oracle = affine_macaulay_dim(&reduced.relations, reduced.var_names.len());
            if oracle != count {
                failures.push(format!(
                    "{name} quantum specialized: Macaulay dim {oracle} != standard monomial count {count}"
                ));
            }
        }
    }
    conclude(9, "Groebner soundness vs linear-algebra oracle", Duration::from_secs(30), start, failures);
}
