//! Truncated jet relations via exact series composition, the
//! multiplication-by-t^{beta(a)} shift endomorphisms, and the truncated
//! exceptional locus.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::cox::CoxData;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};

/// Index of the jet variable u_{j,n} in the flat slate: variables are
/// grouped by base variable, then by order.
pub fn jet_var_index(j: usize, n: u32, m: u32) -> usize {
    j * (m as usize + 1) + n as usize
}

pub fn jet_var_names(base: &[String], m: u32) -> Vec<String> {
    let mut names = Vec::with_capacity(base.len() * (m as usize + 1));
    for b in base {
        for n in 0..=m {
            names.push(format!("{b}_{n}"));
        }
    }
    names
}

/// Relations of the order-m jet of an affine presentation: relation
/// (k, n) is the t^n coefficient of f_k evaluated at truncated series.
#[derive(Debug, Clone)]
pub struct JetPresentation {
    pub base_vars: Vec<String>,
    pub order: u32,
    pub jet_vars: Vec<String>,
    pub relations: Vec<Poly>,
}

/// Truncated series with polynomial coefficients: index = t-power.
type Series = Vec<Poly>;

fn series_zero(len: usize, nvars: usize) -> Series {
    vec![Poly::zero(nvars); len]
}

fn series_add(a: &Series, b: &Series) -> Series {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn series_mul(a: &Series, b: &Series, nvars: usize) -> Series {
    let len = a.len();
    let mut out = series_zero(len, nvars);
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Expand each base relation at u_j(t) = sum_n u_{j,n} t^n mod t^{m+1}.
pub fn jet_relations(base_relations: &[Poly], base_vars: &[String], m: u32) -> JetPresentation {
    let p = base_vars.len();
    assert!(base_relations.iter().all(|f| f.nvars() == p));
    let len = m as usize + 1;
    let nvars = p * len;
    let var_series: Vec<Series> = (0..p)
        .map(|j| {
            (0..=m)
                .map(|n| Poly::var(jet_var_index(j, n, m), nvars))
                .collect()
        })
        .collect();
    let mut relations = Vec::with_capacity(base_relations.len() * len);
    for f in base_relations {
        let mut total = series_zero(len, nvars);
        for (mono, coeff) in f.terms() {
            let mut term = series_zero(len, nvars);
            term[0] = Poly::constant(coeff.clone(), nvars);
            for (j, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    term = series_mul(&term, &var_series[j], nvars);
                }
            }
            total = series_add(&total, &term);
        }
        relations.extend(total);
    }
    JetPresentation {
        base_vars: base_vars.to_vec(),
        order: m,
        jet_vars: jet_var_names(base_vars, m),
        relations,
    }
}

/// The pullback of multiplication by t^{beta(a)} on truncated jet
/// coordinates: z_{i,n} goes to z_{i,n-beta_i(a)}, or to zero when the
/// index drops below zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftMap {
    pub a: Vec<BigInt>,
    pub order: u32,
    /// beta_i(a) per base variable.
    pub shifts: Vec<BigInt>,
}

impl ShiftMap {
    pub fn num_base_vars(&self) -> usize {
        self.shifts.len()
    }

    /// Per jet variable: the substituted variable index, or None for zero.
    pub fn substitution(&self) -> Vec<Option<usize>> {
        let m = self.order;
        let mut table = Vec::new();
        for (i, shift) in self.shifts.iter().enumerate() {
            for n in 0..=m {
                let target = BigInt::from(n) - shift;
                table.push(target.to_u32().map(|t| jet_var_index(i, t, m)));
            }
        }
        table
    }

    pub fn is_identity(&self) -> bool {
        self.shifts.iter().all(|s| s.to_u32() == Some(0))
    }

    /// Apply the substitution to a polynomial in the jet slate.
    pub fn apply(&self, poly: &Poly) -> Poly {
        let nvars = self.num_base_vars() * (self.order as usize + 1);
        assert_eq!(poly.nvars(), nvars, "jet slate mismatch");
        let table = self.substitution();
        let mut out = Poly::zero(nvars);
        'term: for (mono, coeff) in poly.terms() {
            let mut exps = vec![0u32; nvars];
            for (v, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match table[v] {
                    Some(target) => exps[target] += e,
                    None => continue 'term,
                }
            }
            out.add_term(Monomial(exps), coeff.clone());
        }
        out
    }

    /// The composite shift by a + b; composition order does not matter.
    pub fn compose(&self, other: &ShiftMap) -> ShiftMap {
        assert_eq!(self.order, other.order, "truncation orders differ");
        assert_eq!(self.num_base_vars(), other.num_base_vars());
        ShiftMap {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
            order: self.order,
            shifts: self
                .shifts
                .iter()
                .zip(&other.shifts)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    /// Jet variables cut out by the image: (i, n) with n < beta_i(a).
    pub fn image_locus(&self) -> Vec<(usize, u32)> {
        let mut vars = Vec::new();
        for (i, shift) in self.shifts.iter().enumerate() {
            for n in 0..=self.order {
                if BigInt::from(n) < *shift {
                    vars.push((i, n));
                }
            }
        }
        vars
    }

    /// Codimension of the image locus: sum_i min(beta_i(a), m + 1).
    pub fn image_codim(&self) -> u64 {
        self.image_locus().len() as u64
    }
}

/// The shift endomorphism of the order-m jet coordinates attached to
/// a in A_+. Truncation below max_i beta_i(a) loses part of the image
/// locus; the acceptance checks always pick m at least that large.
pub fn epsilon_shift(cd: &CoxData, a: &[BigInt], m: u32) -> Result<ShiftMap> {
    let image = cd.beta.apply(a);
    if image.iter().any(|v| v.is_negative()) {
        return Err(Error::NotInAPlus(format!("beta({a:?}) = {image:?}")));
    }
    Ok(ShiftMap { a: a.to_vec(), order: m, shifts: image })
}

/// One component of the truncated exceptional locus: the coordinate
/// subspace where every jet coordinate of a primitive collection dies.
#[derive(Debug, Clone)]
pub struct JetLocusIdeal {
    pub collection: Vec<usize>,
    pub variables: Vec<String>,
    pub codim: u64,
}

/// For each primitive collection I, the ideal (z_{i,n} : i in I, n <= m);
/// its codimension |I| (m+1) grows strictly with m.
pub fn exceptional_jet_locus(cd: &CoxData, m: u32) -> Vec<JetLocusIdeal> {
    let base: Vec<String> = (1..=cd.fan.num_rays()).map(|i| format!("z{i}")).collect();
    cd.primitive_collections
        .collections
        .iter()
        .map(|pc| {
            let mut variables = Vec::new();
            for &i in pc {
                for n in 0..=m {
                    variables.push(format!("{}_{n}", base[i]));
                }
            }
            JetLocusIdeal {
                collection: pc.clone(),
                codim: (pc.len() * (m as usize + 1)) as u64,
                variables,
            }
        })
        .collect()
}
