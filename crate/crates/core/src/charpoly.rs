//! Characteristic polynomials, by three independent routes.
//!
//! * [`whitney`] sums `(-1)^|S| λ^{rk E - rk S}` over every subset.
//! * [`deletion_contraction`] applies the loop, coloop and
//!   deletion–contraction rules with memoisation on the lattice.
//! * [`via_mobius`] sums Möbius values over the lattice of flats.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Largest ground set the Whitney sum is run on by default.
pub const WHITNEY_LIMIT: usize = 20;

/// An integer polynomial in `λ`; `coefficients[i]` multiplies `λ^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coefficients: Vec<BigInt>,
}

impl CharPoly {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        CharPoly { coefficients }
    }

    pub fn zero() -> Self {
        CharPoly::new(Vec::new())
    }

    pub fn monomial(degree: usize, c: BigInt) -> Self {
        let mut v = vec![BigInt::zero(); degree + 1];
        v[degree] = c;
        CharPoly::new(v)
    }

    /// `(λ - 1)^n`.
    pub fn lambda_minus_one_pow(n: usize) -> Self {
        (0..n).fold(CharPoly::monomial(0, BigInt::one()), |p, _| p.times_lambda_minus_one())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coefficients.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn times_lambda_minus_one(&self) -> Self {
        let mut v = vec![BigInt::zero(); self.coefficients.len() + 1];
        for (i, c) in self.coefficients.iter().enumerate() {
            v[i + 1] += c;
            v[i] -= c;
        }
        CharPoly::new(v)
    }

    /// Exact quotient by `λ - 1`, or `None` when `λ = 1` is not a root.
    pub fn div_lambda_minus_one(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(CharPoly::zero());
        }
        let d = self.coefficients.len() - 1;
        let mut q = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (1..=d).rev() {
            carry += &self.coefficients[i];
            q[i - 1] = carry.clone();
        }
        (carry + &self.coefficients[0])
            .is_zero()
            .then(|| CharPoly::new(q))
    }

    /// Signs alternate from the leading coefficient down, with no zero gaps.
    pub fn alternates(&self) -> bool {
        let d = match self.degree() {
            Some(d) => d,
            None => return true,
        };
        let lead_pos = self.coefficients[d].is_positive();
        self.coefficients
            .iter()
            .enumerate()
            .rev()
            .take_while(|(_, c)| !c.is_zero())
            .all(|(i, c)| c.is_positive() == (lead_pos == ((d - i) % 2 == 0)))
    }
}

impl std::ops::Add for &CharPoly {
    type Output = CharPoly;

    fn add(self, rhs: &CharPoly) -> CharPoly {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        CharPoly::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl std::ops::Sub for &CharPoly {
    type Output = CharPoly;

    fn sub(self, rhs: &CharPoly) -> CharPoly {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        CharPoly::new((0..n).map(|i| self.coefficient(i) - rhs.coefficient(i)).collect())
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CharPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coefficients.len()))?;
        for c in &self.coefficients {
            seq.serialize_element(&crate::json_int(c))?;
        }
        seq.end()
    }
}

/// Whitney's subset sum. Exponential in `|E|`.
pub fn whitney(m: &Matroid) -> CharPoly {
    let top = m.rank();
    let mut v = vec![BigInt::zero(); top + 1];
    for s in m.all().subsets() {
        let e = top - m.rank_of(s);
        if s.len() % 2 == 0 {
            v[e] += 1;
        } else {
            v[e] -= 1;
        }
    }
    CharPoly::new(v)
}

/// Loop, coloop and deletion–contraction rules, memoised on the lattice.
pub fn deletion_contraction(m: &Matroid) -> CharPoly {
    let mut memo = HashMap::new();
    dc(m, &mut memo)
}

fn dc(m: &Matroid, memo: &mut HashMap<(usize, Vec<u64>), CharPoly>) -> CharPoly {
    if m.n() == 0 {
        return CharPoly::monomial(0, BigInt::one());
    }
    if !m.is_loopless() {
        return CharPoly::zero();
    }
    let key = (m.n(), m.flats().iter().map(|f| f.members.bits()).collect());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let e = m.n() - 1;
    let deleted = m.delete_element(e).expect("element in range");
    let out = if m.coloops().contains(e) {
        dc(&deleted, memo).times_lambda_minus_one()
    } else {
        let contracted = m.contract_element(e).expect("element in range");
        &dc(&deleted, memo) - &dc(&contracted, memo)
    };
    memo.insert(key, out.clone());
    out
}

/// `χ(λ) = Σ_F μ(cl ∅, F) λ^{rk E - rk F}`, zero when there are loops.
pub fn via_mobius(m: &Matroid) -> CharPoly {
    if !m.is_loopless() {
        return CharPoly::zero();
    }
    interval_char_poly(m, 0, m.flats().len() - 1)
}

/// Characteristic polynomial of the interval minor between flats with
/// indices `lo` and `hi`, computed on the lattice without building the minor.
pub(crate) fn interval_char_poly(m: &Matroid, lo: usize, hi: usize) -> CharPoly {
    let flats = m.flats();
    let (f, g) = (flats[lo], flats[hi]);
    let top = g.rank - f.rank;
    let row = mobius_row(m, lo, Some(g.members));
    let mut v = vec![BigInt::zero(); top + 1];
    for (i, mu) in row {
        v[g.rank - flats[i].rank] += mu;
    }
    CharPoly::new(v)
}

/// `μ(F, H)` for every flat `H` with `F ⊆ H ⊆ bound`.
fn mobius_row(m: &Matroid, lo: usize, bound: Option<Subset>) -> Vec<(usize, BigInt)> {
    let flats = m.flats();
    let f = flats[lo].members;
    let bound = bound.unwrap_or(m.all());
    let mut row: Vec<(usize, BigInt)> = Vec::new();
    for (i, h) in flats.iter().enumerate().skip(lo) {
        if !f.is_subset(h.members) || !h.members.is_subset(bound) {
            continue;
        }
        let value = if i == lo {
            BigInt::one()
        } else {
            -row.iter()
                .filter(|(k, _)| flats[*k].members.is_proper_subset(h.members))
                .map(|(_, v)| v)
                .sum::<BigInt>()
        };
        row.push((i, value));
    }
    row
}

impl Matroid {
    /// `χ_M`. Uses the Whitney sum up to [`WHITNEY_LIMIT`] elements and the
    /// Möbius route beyond.
    pub fn char_poly(&self) -> CharPoly {
        if self.n() <= WHITNEY_LIMIT {
            whitney(self)
        } else {
            via_mobius(self)
        }
    }

    /// `χ̄_M = χ_M / (λ - 1)`.
    pub fn reduced_char_poly(&self) -> Result<CharPoly> {
        self.require_chow()?;
        Ok(self
            .char_poly()
            .div_lambda_minus_one()
            .expect("λ = 1 is a root of every nonempty characteristic polynomial"))
    }

    /// `μ^a(M)`, the `a`-th unsigned coefficient of `χ̄_M`.
    pub fn mu(&self, a: usize) -> Result<BigInt> {
        self.require_chow()?;
        let r = self.rank() - 1;
        if a > r {
            return Err(Error::invalid(format!("mu index {a} exceeds r = {r}")));
        }
        let c = self.reduced_char_poly()?.coefficient(r - a);
        Ok(if a.is_multiple_of(2) { c } else { -c })
    }

    /// `(μ^0, .., μ^r)`.
    pub fn mu_vector(&self) -> Result<Vec<BigInt>> {
        let r = self.rank().checked_sub(1).ok_or(Error::EmptyGroundSet)?;
        (0..=r).map(|a| self.mu(a)).collect()
    }

    /// Möbius function of the lattice on the interval `[F, G]`.
    pub fn mobius(&self, f: Subset, g: Subset) -> Result<BigInt> {
        let lo = self.flat_index(f).ok_or(Error::NotAFlat(f))?;
        let hi = self.flat_index(g).ok_or(Error::NotAFlat(g))?;
        if !f.is_subset(g) {
            return Err(Error::invalid(format!("{f} is not contained in {g}")));
        }
        Ok(mobius_row(self, lo, Some(g))
            .into_iter()
            .find(|(i, _)| *i == hi)
            .map(|(_, v)| v)
            .expect("G lies in the interval"))
    }
}
