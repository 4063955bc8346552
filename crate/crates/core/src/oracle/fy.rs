//! The monomial basis of flags `∅ ⊊ F_1 ⊊ .. ⊊ F_ℓ = E` with exponent
//! bounds `1 ≤ d_i < rk F_i - rk F_{i-1}` below the top and
//! `0 ≤ d_ℓ < rk E - rk F_{ℓ-1}` at the top.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::graded::{ChowPoly, Oracle};
use super::linalg::solve;
use crate::chow::{flat_name, DivisorMonomial};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FYBasisElement {
    /// `F_1, .., F_ℓ` with `F_ℓ = E`.
    pub flag: Vec<Subset>,
    /// `d_1, .., d_ℓ`.
    pub exponents: Vec<u32>,
}

impl FYBasisElement {
    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&d| d as usize).sum()
    }

    pub fn monomial(&self) -> DivisorMonomial {
        DivisorMonomial::from_factors(self.flag.iter().copied().zip(self.exponents.iter().copied()))
    }

    fn ranks(&self, m: &Matroid) -> Vec<usize> {
        std::iter::once(0)
            .chain(self.flag.iter().map(|&f| m.rank_of(f)))
            .collect()
    }

    /// The complementary element `B̂` of degree `r - k`.
    pub fn hat(&self, m: &Matroid) -> FYBasisElement {
        let rk = self.ranks(m);
        let r = m.rank() - 1;
        let l = self.flag.len();
        let exponents = (1..=l)
            .map(|i| {
                let d = self.exponents[i - 1] as usize;
                let v = if i < l {
                    rk[i] - rk[i - 1] - d
                } else {
                    r - rk[l - 1] - d
                };
                v as u32
            })
            .collect();
        FYBasisElement {
            flag: self.flag.clone(),
            exponents,
        }
    }

    /// `δ(B) = (d̂_ℓ, rk F_{ℓ-1}, d̂_{ℓ-1}, .., rk F_1, d̂_1)`.
    pub fn delta(&self, m: &Matroid) -> Vec<usize> {
        let hat = self.hat(m);
        let rk = self.ranks(m);
        let l = self.flag.len();
        let mut out = Vec::with_capacity(2 * l);
        for i in (1..=l).rev() {
            out.push(hat.exponents[i - 1] as usize);
            if i > 1 {
                out.push(rk[i - 1]);
            }
        }
        out
    }

    pub fn display<'a>(&'a self, m: &'a Matroid) -> impl fmt::Display + 'a {
        struct D<'a>(&'a FYBasisElement, &'a Matroid);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                for (s, &d) in self.0.flag.iter().zip(&self.0.exponents) {
                    if d == 0 {
                        continue;
                    }
                    if !first {
                        f.write_str(" * ")?;
                    }
                    first = false;
                    write!(f, "D{}", flat_name(self.1, *s))?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
                if first {
                    f.write_str("1")?;
                }
                Ok(())
            }
        }
        D(self, m)
    }
}

/// Lexicographic on `δ` (zero-padded), then on the flags from the top down.
pub fn delta_order(m: &Matroid, a: &FYBasisElement, b: &FYBasisElement) -> Ordering {
    let (da, db) = (a.delta(m), b.delta(m));
    let n = da.len().max(db.len());
    let pad = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    (0..n)
        .map(|i| pad(&da, i).cmp(&pad(&db, i)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.flag.iter().rev().cmp(b.flag.iter().rev()))
        .then_with(|| a.exponents.iter().rev().cmp(b.exponents.iter().rev()))
}

/// All basis monomials of degree `k`, sorted by [`delta_order`].
pub fn fy_basis(m: &Matroid, k: usize) -> Result<Vec<FYBasisElement>> {
    m.require_chow()?;
    let top_rank = m.rank();
    let mut out = Vec::new();
    let mut flag = Vec::new();
    let mut exps = Vec::new();
    walk(m, k, 0, Subset::EMPTY, 0, top_rank, &mut flag, &mut exps, &mut out);
    out.sort_by(|a, b| delta_order(m, a, b));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    m: &Matroid,
    k: usize,
    used: usize,
    prev: Subset,
    prev_rank: usize,
    top_rank: usize,
    flag: &mut Vec<Subset>,
    exps: &mut Vec<u32>,
    out: &mut Vec<FYBasisElement>,
) {
    let left = k - used;
    if left < top_rank - prev_rank {
        let mut f = flag.clone();
        f.push(m.all());
        let mut e = exps.clone();
        e.push(left as u32);
        out.push(FYBasisElement {
            flag: f,
            exponents: e,
        });
    }
    for g in m.proper_flats() {
        if !prev.is_proper_subset(g.members) {
            continue;
        }
        let gap = g.rank - prev_rank;
        for d in 1..gap.min(left + 1) {
            flag.push(g.members);
            exps.push(d as u32);
            walk(m, k, used + d, g.members, g.rank, top_rank, flag, exps, out);
            flag.pop();
            exps.pop();
        }
    }
}

/// Integer coordinates of a degree-`k` class over `fy_basis(M, k)`.
pub fn reduce_to_fy(
    oracle: &Oracle,
    basis: &[FYBasisElement],
    poly: &ChowPoly,
) -> Result<Vec<BigInt>> {
    let Some(first) = basis.first() else {
        return if poly.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::invalid("nonzero class in a zero graded piece"))
        };
    };
    let k = first.degree();
    let piece = oracle.piece(k)?;
    let free = piece.free_columns();
    if free.len() != basis.len() {
        return Err(Error::invalid(format!(
            "basis has {} elements but the quotient has rank {}",
            basis.len(),
            free.len()
        )));
    }
    let column = |p: &ChowPoly| -> Result<Vec<BigRational>> {
        let (_, v) = oracle.reduce(p)?;
        Ok(free
            .iter()
            .map(|c| v.get(c).cloned().unwrap_or_else(BigRational::zero))
            .collect())
    };
    // a[i][j] = coordinate i of basis element j.
    let cols = basis
        .iter()
        .map(|b| column(&ChowPoly::monomial(b.monomial())))
        .collect::<Result<Vec<_>>>()?;
    let n = basis.len();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect();
    let rhs = if poly.is_zero() {
        vec![BigRational::zero(); n]
    } else {
        match poly.homogeneous_degree() {
            Some(d) if d == k => column(poly)?,
            _ => return Err(Error::invalid(format!("class is not of degree {k}"))),
        }
    };
    let x = solve(&a, &rhs).ok_or_else(|| Error::invalid("basis images are dependent"))?;
    x.into_iter()
        .map(|q| {
            if q.denom().is_one() {
                Ok(q.numer().clone())
            } else {
                Err(Error::NonIntegral(format!("coordinate {q} over the basis")))
            }
        })
        .collect()
}
