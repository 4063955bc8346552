//! A second oracle that rewrites monomials with the relations of `I + J`
//! directly, without linear algebra.
//!
//! Take the lowest flat `F` of exponent at least two, with chain neighbours
//! `F_- ⊊ F ⊊ F_+`, and pick `a = min(F \ F_-)`, `b = min(F_+ \ F)`. The
//! linear relation for `a, b` times `m / X_F` gives
//!
//! ```text
//! m = -Σ_{F ⊊ G ⊊ F_+, b ∉ G} X_G m/X_F  -  Σ_{F_- ⊊ G ⊊ F, a ∈ G} X_G m/X_F
//! ```
//!
//! Each step adds one flat to the chain, so the recursion ends at complete
//! flags, which have degree 1.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::graded::ChowPoly;
use crate::chow::{DivisorCombination, DivisorMonomial};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

pub struct Straightener<'a> {
    m: &'a Matroid,
    proper: Vec<Subset>,
    memo: HashMap<Vec<(Subset, u32)>, BigInt>,
}

impl<'a> Straightener<'a> {
    pub fn new(m: &'a Matroid) -> Result<Self> {
        m.require_chow()?;
        Ok(Straightener {
            m,
            proper: m.proper_flats().map(|f| f.members).collect(),
            memo: HashMap::new(),
        })
    }

    /// Degree of a top-degree monomial.
    pub fn degree(&mut self, mono: &DivisorMonomial) -> Result<BigInt> {
        let r = self.m.rank() - 1;
        if mono.degree() != r {
            return Err(Error::invalid(format!(
                "degree needs a monomial of degree {r}, got {}",
                mono.degree()
            )));
        }
        let top = self.m.all();
        for (f, _) in mono.factors() {
            if f != top && !self.proper.contains(&f) {
                return Err(Error::invalid(format!(
                    "{} is not a proper flat",
                    self.m.show(f)
                )));
            }
        }
        let mut minus_psi = DivisorCombination::new();
        for &g in &self.proper {
            if g.contains(0) {
                minus_psi.add_term(g, -1);
            }
        }
        let rest = DivisorMonomial::from_factors(mono.factors().filter(|(f, _)| *f != top));
        let mut poly = ChowPoly::monomial(rest);
        for _ in 0..mono.exponent(top) {
            poly = poly.times_linear(&minus_psi);
        }
        let mut total = BigInt::zero();
        for (term, c) in poly.terms() {
            total += c * self.chain_degree(term.sorted_factors());
        }
        Ok(total)
    }

    fn chain_degree(&mut self, chain: Vec<(Subset, u32)>) -> BigInt {
        if let Some(v) = self.memo.get(&chain) {
            return v.clone();
        }
        let value = match chain.iter().position(|&(_, d)| d >= 2) {
            None => BigInt::one(),
            Some(i) => {
                let f = chain[i].0;
                let below = if i == 0 { Subset::EMPTY } else { chain[i - 1].0 };
                let above = chain.get(i + 1).map_or(self.m.all(), |c| c.0);
                let a = f.difference(below).min().expect("chain is strict");
                let b = above.difference(f).min().expect("chain is strict");
                let mut lowered = chain.clone();
                lowered[i].1 -= 1;
                let mut total = BigInt::zero();
                for gi in 0..self.proper.len() {
                    let g = self.proper[gi];
                    let upper = f.is_proper_subset(g) && g.is_proper_subset(above) && !g.contains(b);
                    let lower = below.is_proper_subset(g) && g.is_proper_subset(f) && g.contains(a);
                    if upper || lower {
                        let mut next = lowered.clone();
                        let at = if upper { i + 1 } else { i };
                        next.insert(at, (g, 1));
                        total -= self.chain_degree(next);
                    }
                }
                total
            }
        };
        self.memo.insert(chain, value.clone());
        value
    }
}

/// Degree of `mono` by straightening with the defining relations.
pub fn straighten_degree(m: &Matroid, mono: &DivisorMonomial) -> Result<BigInt> {
    Straightener::new(m)?.degree(mono)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let m = Matroid::from_boolean(7).unwrap();
        let mono = DivisorMonomial::from_factors([
            (Subset::from_bits(0b11), 3),
            (Subset::from_bits(0b11111), 2),
            (Subset::from_bits(0b111111), 1),
        ]);
        assert_eq!(straighten_degree(&m, &mono).unwrap(), BigInt::from(-4));
    }

    #[test]
    fn top_power_sign() {
        let m = Matroid::from_uniform(3, 5).unwrap();
        let top = DivisorMonomial::from_factors([(m.all(), 2)]);
        assert_eq!(straighten_degree(&m, &top).unwrap(), BigInt::one());
    }
}
