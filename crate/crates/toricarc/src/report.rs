//! JSON report payloads for every CLI subcommand. Field order is the
//! serialization order; everything is deterministic for fixed inputs.

use num_rational::BigRational;
use serde::Serialize;

use crate::arc::{
    cousin_series_check, floer_series, self_embedding_codim, stratum_descriptor,
    verify_theorem_main, TheoremReport,
};
use crate::cox::{
    betti_numbers, classical_presentation, eliminate_linear, quantum_rank_check, CoxData,
    QuantumRing, RankCheckReport,
};
use crate::error::Result;
use crate::fan::{h_vector, validate_fan, Fan};
use crate::jet::JetPresentation;
use crate::poly::text::poly_to_text;
use crate::poly::MonomialOrder;
use num_bigint::BigInt;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub fan: String,
    pub simplicial: bool,
    pub smooth: bool,
    pub facet_paired: bool,
    pub rays_positively_span: bool,
    pub fano: bool,
    pub details: String,
}

pub fn validate_report(fan: &Fan) -> ValidateReport {
    let v = validate_fan(fan);
    ValidateReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "validate",
        fan: fan.name.clone(),
        simplicial: v.simplicial,
        smooth: v.smooth,
        facet_paired: v.facet_paired,
        rays_positively_span: v.rays_positively_span,
        fano: v.fano,
        details: v.details,
    }
}

#[derive(Debug, Serialize)]
pub struct CohomologyReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub fan: String,
    pub variables: Vec<String>,
    pub relations: Vec<String>,
    pub betti: Vec<u64>,
    pub h_vector: Vec<u64>,
    pub betti_total: u64,
    pub max_cones: usize,
}

pub fn cohomology_report(cd: &CoxData, budget: u64) -> Result<CohomologyReport> {
    let pres = classical_presentation(cd);
    let betti = betti_numbers(cd, budget)?;
    Ok(CohomologyReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "cohomology",
        fan: cd.fan.name.clone(),
        variables: pres.var_names.clone(),
        relations: pres.relation_texts(),
        betti_total: betti.iter().sum(),
        betti,
        h_vector: h_vector(&cd.fan)?,
        max_cones: cd.fan.max_cones.len(),
    })
}

#[derive(Debug, Serialize)]
pub struct RankTrialReport {
    pub q_spec: Vec<String>,
    pub dimension: u64,
}

#[derive(Debug, Serialize)]
pub struct ProductEntry {
    /// 1-based divisor class indices, matching the variable names.
    pub factors: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct QuantumReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub fan: String,
    pub kind: &'static str,
    pub warning: Option<String>,
    pub q_spec: Option<Vec<String>>,
    pub a_basis: Vec<Vec<String>>,
    pub hilbert_basis: Vec<Vec<String>>,
    pub variables: Vec<String>,
    pub relations: Vec<String>,
    pub eliminated_relations: Vec<String>,
    pub rank_expected: u64,
    pub rank_trials: Vec<RankTrialReport>,
    pub products: Vec<ProductEntry>,
}

fn rationals_to_strings(values: &[BigRational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn bigints_to_strings(values: &[BigInt]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

pub fn quantum_report(
    cd: &CoxData,
    q_spec: Option<&[BigRational]>,
    allow_non_fano: bool,
    trials: u64,
    seed: u64,
    budget: u64,
) -> Result<QuantumReport> {
    let ring = QuantumRing::new(cd, q_spec, allow_non_fano, budget)?;
    let pres = &ring.presentation;
    let eliminated = eliminate_linear(pres, cd)?;
    let rank: RankCheckReport = quantum_rank_check(cd, trials, seed, allow_non_fano, budget)?;
    let n = cd.fan.num_rays();
    let mut products = Vec::new();
    for i in 0..n {
        for j in i..n {
            products.push(ProductEntry {
                factors: vec![i + 1, j + 1],
                value: ring.product_text(&[i, j]),
            });
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                products.push(ProductEntry {
                    factors: vec![i + 1, j + 1, k + 1],
                    value: ring.product_text(&[i, j, k]),
                });
            }
        }
    }
    // A-basis rows: kernel basis vectors in Z^N coordinates
    let a_basis = (0..cd.a_rank)
        .map(|j| {
            (0..n)
                .map(|i| cd.beta.matrix[(i, j)].to_string())
                .collect()
        })
        .collect();
    Ok(QuantumReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "quantum",
        fan: cd.fan.name.clone(),
        kind: pres.kind.as_str(),
        warning: pres.warning.clone(),
        q_spec: pres.q_spec.as_ref().map(|s| rationals_to_strings(s)),
        a_basis,
        hilbert_basis: cd
            .semigroup
            .hilbert_basis
            .iter()
            .map(|a| bigints_to_strings(a))
            .collect(),
        variables: pres.all_names(),
        relations: pres.relation_texts(),
        eliminated_relations: eliminated.relation_texts(),
        rank_expected: rank.expected,
        rank_trials: rank
            .trials
            .iter()
            .map(|t| RankTrialReport {
                q_spec: rationals_to_strings(&t.q_spec),
                dimension: t.dimension,
            })
            .collect(),
        products,
    })
}

#[derive(Debug, Serialize)]
pub struct SeriesReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub fan: String,
    pub cutoff: u64,
    pub holds: bool,
    pub lhs: Vec<u64>,
    pub rhs: Vec<u64>,
}

pub fn series_report(cd: &CoxData, cutoff: u64) -> Result<SeriesReport> {
    let c = cousin_series_check(cd, cutoff)?;
    Ok(SeriesReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "series",
        fan: cd.fan.name.clone(),
        cutoff,
        holds: c.holds,
        lhs: c.lhs,
        rhs: c.rhs,
    })
}

#[derive(Debug, Serialize)]
pub struct CousinSection {
    pub holds: bool,
    pub cutoff: u64,
    pub lhs: Vec<u64>,
    pub rhs: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct VerifyMainReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub fan: String,
    pub well_defined: bool,
    pub surjective: bool,
    pub rank_equal: bool,
    pub passed: bool,
    pub betti_total: u64,
    pub trials: Vec<RankTrialReport>,
    pub cousin: CousinSection,
    pub details: Vec<String>,
}

pub fn verify_main_report(
    cd: &CoxData,
    trials: u64,
    seed: u64,
    cutoff: u64,
    allow_non_fano: bool,
    budget: u64,
) -> Result<VerifyMainReport> {
    let report: TheoremReport =
        verify_theorem_main(cd, trials, seed, cutoff, allow_non_fano, budget)?;
    Ok(VerifyMainReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "verify-main",
        fan: report.fan.clone(),
        well_defined: report.well_defined,
        surjective: report.surjective,
        rank_equal: report.rank_equal,
        passed: report.passed(),
        betti_total: report.betti_total,
        trials: report
            .trials
            .iter()
            .map(|t| RankTrialReport {
                q_spec: rationals_to_strings(&t.q_spec),
                dimension: t.dimension,
            })
            .collect(),
        cousin: CousinSection {
            holds: report.cousin.holds,
            cutoff: report.cousin.cutoff,
            lhs: report.cousin.lhs.clone(),
            rhs: report.cousin.rhs.clone(),
        },
        details: report.details,
    })
}

#[derive(Debug, Serialize)]
pub struct CodimReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub fan: String,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub codim: String,
}

pub fn codim_report(cd: &CoxData, a: &[BigInt], b: &[BigInt]) -> Result<CodimReport> {
    let codim = self_embedding_codim(cd, a, b)?;
    Ok(CodimReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "codim",
        fan: cd.fan.name.clone(),
        a: bigints_to_strings(a),
        b: bigints_to_strings(b),
        codim: codim.to_string(),
    })
}

#[derive(Debug, Serialize)]
pub struct StrataReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub fan: String,
    pub a: Vec<String>,
    pub codim: String,
    pub poincare: Vec<u64>,
}

pub fn strata_report(cd: &CoxData, a: &[BigInt]) -> Result<StrataReport> {
    let s = stratum_descriptor(cd, a)?;
    Ok(StrataReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "strata",
        fan: cd.fan.name.clone(),
        a: bigints_to_strings(&s.a),
        codim: s.codim.to_string(),
        poincare: s.poincare,
    })
}

#[derive(Debug, Serialize)]
pub struct JetsReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub order: u32,
    pub base_vars: Vec<String>,
    pub jet_vars: Vec<String>,
    pub relations: Vec<String>,
}

pub fn jets_report(jp: &JetPresentation) -> JetsReport {
    let order = MonomialOrder::degrevlex();
    JetsReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "jets",
        order: jp.order,
        base_vars: jp.base_vars.clone(),
        jet_vars: jp.jet_vars.clone(),
        relations: jp
            .relations
            .iter()
            .map(|p| poly_to_text(p, &jp.jet_vars, &order))
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct FloerReport {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub fan: String,
    pub rank: u64,
    pub shifts: Vec<u64>,
    pub betti: Vec<u64>,
    pub sym_series: Vec<u64>,
}

pub fn floer_report(cd: &CoxData, cutoff: u64, budget: u64) -> Result<FloerReport> {
    let f = floer_series(cd, cutoff, budget)?;
    Ok(FloerReport {
        schema_version: SCHEMA_VERSION,
        subcommand: "floer",
        fan: cd.fan.name.clone(),
        rank: f.rank,
        shifts: f.shifts,
        betti: f.betti,
        sym_series: f.sym_series,
    })
}
