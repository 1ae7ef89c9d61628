//! Multivariate polynomials over exact rationals.
//!
//! Monomials are exponent vectors over a fixed variable slate. Symbolic
//! quantum parameters are ordinary variables in a trailing block of the
//! slate, ordered behind the geometric variables (see [`order`]).

pub mod groebner;
pub mod order;
pub mod text;

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub use groebner::{buchberger, graded_dimensions, normal_form, standard_monomials, GroebnerBasis};
pub use order::{MonomialOrder, OrderKind};

/// Exponent vector; the derived `Ord` is only used for canonical storage,
/// never for term-order decisions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Polynomial with exact rational coefficients; no zero terms are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(BigRational::one(), nvars)
    }

    pub fn constant(c: BigRational, nvars: usize) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Poly::from_term(BigRational::one(), Monomial::var(i, nvars))
    }

    pub fn from_term(c: BigRational, m: Monomial) -> Self {
        let mut p = Poly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.nvars(), self.nvars, "variable slate mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, v)| (mm.mul(m), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            for (mm, cc) in &other.terms {
                out.add_term(m.mul(mm), c * cc);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Largest term with respect to the given order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Replace variable `i` by `images[i]`; all images must share a slate,
    /// which becomes the slate of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "need an image per variable");
        let out_vars = images.first().map_or(0, Poly::nvars);
        assert!(images.iter().all(|p| p.nvars() == out_vars));
        let mut out = Poly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone(), out_vars);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

/// Convenience constructor used across tests: a polynomial from
/// (numerator, exponent-vector) pairs with denominator 1.
pub fn poly_from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Poly {
    let mut p = Poly::zero(nvars);
    for (c, exps) in terms {
        assert_eq!(exps.len(), nvars);
        p.add_term(
            Monomial(exps.to_vec()),
            BigRational::from_integer((*c).into()),
        );
    }
    p
}
