//! Monomial orders: degrevlex, lex, graded lex, optional variable
//! permutation, and an optional block split used to push symbolic q
//! parameters behind the geometric variables.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use super::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    DegRevLex,
    Lex,
    GradedLex,
}

/// A total, multiplicative well-ordering on monomials.
///
/// With a block split at position `s`, exponents `[0, s)` are compared
/// first and `[s, ..)` break ties; this is an elimination order for the
/// trailing block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Variable priority: position 0 is the most significant variable.
    pub permutation: Option<Vec<usize>>,
    /// Compare exponents before this index first, the rest as tiebreak.
    pub block_split: Option<usize>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, permutation: None, block_split: None }
    }

    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, permutation: None, block_split: None }
    }

    pub fn graded_lex() -> Self {
        MonomialOrder { kind: OrderKind::GradedLex, permutation: None, block_split: None }
    }

    pub fn with_permutation(mut self, perm: Vec<usize>) -> Self {
        self.permutation = Some(perm);
        self
    }

    pub fn with_block(mut self, split: usize) -> Self {
        self.block_split = Some(split);
        self
    }

    fn cmp_slice(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.cmp(b),
            OrderKind::GradedLex => {
                let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            OrderKind::DegRevLex => {
                let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b.iter()).rev() {
                        if x != y {
                            // smaller exponent in the last differing slot wins
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        let (pa, pb);
        let (ea, eb): (&[u32], &[u32]) = match &self.permutation {
            None => (&a.0, &b.0),
            Some(perm) => {
                pa = perm.iter().map(|&i| a.0[i]).collect::<Vec<_>>();
                pb = perm.iter().map(|&i| b.0[i]).collect::<Vec<_>>();
                (&pa, &pb)
            }
        };
        match self.block_split {
            None => self.cmp_slice(ea, eb),
            Some(s) => self
                .cmp_slice(&ea[..s], &eb[..s])
                .then_with(|| self.cmp_slice(&ea[s..], &eb[s..])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::degrevlex();
        // same degree: x0*x1 > x1^2 because the last differing exponent is smaller
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[3, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0]), &m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn lex_with_permutation() {
        // lex with y > x on the slate (x, y)
        let o = MonomialOrder::lex().with_permutation(vec![1, 0]);
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[5, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_trailing_block() {
        // slate (x, q); any monomial with an x beats any pure-q monomial
        let o = MonomialOrder::degrevlex().with_block(1);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[2, 3])), Ordering::Less);
    }

    #[test]
    fn order_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let orders = [
            MonomialOrder::degrevlex(),
            MonomialOrder::lex(),
            MonomialOrder::graded_lex(),
            MonomialOrder::degrevlex().with_block(2),
            MonomialOrder::lex().with_permutation(vec![2, 0, 1, 3]),
        ];
        for _ in 0..300 {
            let rand_m = |rng: &mut ChaCha8Rng| {
                Monomial((0..4).map(|_| rng.gen_range(0..4)).collect())
            };
            let (a, b, c) = (rand_m(&mut rng), rand_m(&mut rng), rand_m(&mut rng));
            for o in &orders {
                // antisymmetry
                assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                // totality: equal only for equal monomials
                if o.cmp(&a, &b) == Ordering::Equal {
                    assert_eq!(a, b);
                }
                // transitivity
                if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                    assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                }
                // multiplicativity
                if o.cmp(&a, &b) == Ordering::Less {
                    assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Less);
                }
                // well-ordering: 1 is minimal
                assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
            }
        }
    }
}
