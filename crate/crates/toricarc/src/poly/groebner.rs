//! Buchberger's algorithm with the normal selection strategy, full
//! normal forms, standard monomials, and graded dimension counts.

use num_rational::BigRational;
use std::collections::BTreeSet;

use super::{Monomial, MonomialOrder, Poly};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub generators: Vec<Poly>,
    pub order: MonomialOrder,
    pub reduced: bool,
    pub nvars: usize,
}

impl GroebnerBasis {
    fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| {
                g.leading_term(&self.order)
                    .expect("basis elements are nonzero")
                    .0
                    .clone()
            })
            .collect()
    }
}

struct Budget {
    remaining: u64,
    total: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { remaining: limit, total: limit }
    }

    fn step(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::BudgetExceeded(self.total));
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Full normal form: every term of the work polynomial is reduced, so the
/// remainder is canonical for a fixed basis and order.
fn reduce(f: &Poly, basis: &[Poly], order: &MonomialOrder, budget: &mut Budget) -> Result<Poly> {
    let mut work = f.clone();
    let mut remainder = Poly::zero(f.nvars());
    while let Some((lm, lc)) = work.leading_term(order) {
        let lm = lm.clone();
        let lc = lc.clone();
        let reducer = basis.iter().find(|g| {
            g.leading_term(order)
                .is_some_and(|(gm, _)| gm.divides(&lm))
        });
        match reducer {
            Some(g) => {
                budget.step()?;
                let (gm, gc) = g.leading_term(order).expect("nonzero reducer");
                let factor_m = gm.div_into(&lm);
                let factor_c = &lc / gc;
                work = work.sub(&g.mul_term(&factor_m, &factor_c));
            }
            None => {
                remainder.add_term(lm.clone(), lc.clone());
                work.add_term(lm, -lc);
            }
        }
    }
    Ok(remainder)
}

fn s_poly(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.div_into(&l), &fc.recip());
    let b = g.mul_term(&gm.div_into(&l), &gc.recip());
    a.sub(&b)
}

/// Reduced Groebner basis of the ideal spanned by `gens`.
///
/// Deterministic: pairs are processed in order of the total degree of
/// their leading-term lcm (ties by index), with Buchberger's coprimality
/// and chain criteria. The `budget` caps single reduction steps.
pub fn buchberger(gens: &[Poly], order: &MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    assert!(!gens.is_empty(), "buchberger needs at least one generator");
    let nvars = gens[0].nvars();
    let mut budget = Budget::new(budget);
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic(order));
        }
    }
    let lt = |basis: &[Poly], i: usize| -> Monomial {
        basis[i]
            .leading_term(order)
            .expect("basis elements are nonzero")
            .0
            .clone()
    };
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut handled: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..i {
            let deg = lt(&basis, i).lcm(&lt(&basis, j)).degree();
            pending.insert((deg, j, i));
        }
    }
    while let Some(key) = pending.iter().next().cloned() {
        pending.remove(&key);
        let (_, i, j) = key;
        handled.insert((i, j));
        let (li, lj) = (lt(&basis, i), lt(&basis, j));
        let l = li.lcm(&lj);
        // coprime leading terms: S-polynomial reduces to zero
        if l.degree() == li.degree() + lj.degree() {
            continue;
        }
        // chain criterion: some handled k divides the lcm
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lt(&basis, k).divides(&l)
                && handled.contains(&(k.min(i), k.max(i)))
                && handled.contains(&(k.min(j), k.max(j)))
        });
        if chained {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order, &mut budget)?;
        if !r.is_zero() {
            let r = r.monic(order);
            let new_idx = basis.len();
            let new_lt = r
                .leading_term(order)
                .expect("nonzero remainder")
                .0
                .clone();
            for k in 0..new_idx {
                let deg = lt(&basis, k).lcm(&new_lt).degree();
                pending.insert((deg, k, new_idx));
            }
            basis.push(r);
        }
    }
    // minimalize: drop generators whose leading term another divides
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && keep[j] && lt(&basis, j).divides(&lt(&basis, i)) {
                let li = lt(&basis, i);
                let lj = lt(&basis, j);
                if li != lj || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let minimal: Vec<Poly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // tail-reduce each generator against the others
    let mut reduced_gens = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = reduce(&minimal[i], &others, order, &mut budget)?;
        reduced_gens.push(r.monic(order));
    }
    reduced_gens.sort_by(|a, b| {
        let la = a.leading_term(order).expect("nonzero").0;
        let lb = b.leading_term(order).expect("nonzero").0;
        order.cmp(la, lb)
    });
    Ok(GroebnerBasis {
        generators: reduced_gens,
        order: order.clone(),
        reduced: true,
        nvars,
    })
}

/// Canonical remainder of `f` modulo a reduced basis; zero iff `f` lies
/// in the ideal.
pub fn normal_form(f: &Poly, gb: &GroebnerBasis) -> Poly {
    let mut budget = Budget::new(u64::MAX);
    reduce(f, &gb.generators, &gb.order, &mut budget).expect("unbounded budget")
}

/// Monomials not divisible by any leading term, i.e. a vector-space basis
/// of the quotient. Fails with `InfiniteDimension` when the quotient is
/// infinite-dimensional and no degree cap is supplied.
pub fn standard_monomials(gb: &GroebnerBasis, degree_cap: Option<u32>) -> Result<Vec<Monomial>> {
    let nvars = gb.nvars;
    let lts = gb.leading_monomials();
    if degree_cap.is_none() {
        // finite quotient iff some pure power of every variable leads
        for v in 0..nvars {
            let has_pure_power = lts.iter().any(|m| {
                m.0.iter()
                    .enumerate()
                    .all(|(i, &e)| (i == v) == (e > 0))
            });
            if !has_pure_power {
                return Err(Error::InfiniteDimension);
            }
        }
    }
    // standard monomials are downward closed: grow degree by degree
    let mut out: Vec<Monomial> = Vec::new();
    let one = Monomial::one(nvars);
    let mut layer: BTreeSet<Monomial> = BTreeSet::new();
    if !lts.iter().any(|m| m.divides(&one)) {
        layer.insert(one);
    }
    let mut degree = 0u32;
    while !layer.is_empty() {
        out.extend(layer.iter().cloned());
        if degree_cap.is_some_and(|cap| degree >= cap) {
            break;
        }
        let mut next: BTreeSet<Monomial> = BTreeSet::new();
        for m in &layer {
            for v in 0..nvars {
                let cand = m.mul(&Monomial::var(v, nvars));
                if !lts.iter().any(|l| l.divides(&cand)) {
                    next.insert(cand);
                }
            }
        }
        layer = next;
        degree += 1;
    }
    out.sort_by(|a, b| gb.order.cmp(a, b));
    Ok(out)
}

/// Dimensions of the graded pieces of the quotient by a homogeneous ideal.
pub fn graded_dimensions(gb: &GroebnerBasis, cutoff: u32) -> Result<Vec<u64>> {
    for g in &gb.generators {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!(
                "generator with mixed degrees: {} terms",
                g.num_terms()
            )));
        }
    }
    let standard = standard_monomials(gb, Some(cutoff))?;
    let mut dims = vec![0u64; cutoff as usize + 1];
    for m in standard {
        let d = m.degree() as usize;
        if d <= cutoff as usize {
            dims[d] += 1;
        }
    }
    Ok(dims)
}

/// Every S-polynomial of the basis reduces to zero (soundness check used
/// by the acceptance suite).
pub fn s_polynomials_reduce_to_zero(gb: &GroebnerBasis) -> bool {
    let n = gb.generators.len();
    for i in 0..n {
        for j in 0..i {
            let s = s_poly(&gb.generators[i], &gb.generators[j], &gb.order);
            if !normal_form(&s, gb).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Ideal membership for each original generator (round-trip check).
pub fn contains_all(gb: &GroebnerBasis, gens: &[Poly]) -> bool {
    gens.iter().all(|g| normal_form(g, gb).is_zero())
}

/// The coefficient field is exact, so linearity of the normal form can be
/// tested directly.
pub fn nf_is_linear(gb: &GroebnerBasis, f: &Poly, g: &Poly, c: &BigRational) -> bool {
    let lhs = normal_form(&f.add(&g.scale(c)), gb);
    let rhs = normal_form(f, gb).add(&normal_form(g, gb).scale(c));
    lhs == rhs && normal_form(&lhs, gb) == lhs
}
