//! Divisors, psi classes and degrees in the Chow ring of a loopless matroid.
//!
//! Generators `D_F` are indexed by proper flats; `D_E` is accepted as a
//! formal generator and rewritten as `-ψ_∞` wherever a degree is taken.

mod degree;
mod parse;
mod psi;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matroid::Matroid;
use crate::subset::Subset;

pub use degree::{
    deg_flag_mixed, deg_monomial, deg_monomial_diag, deg_psi_minus_product, deg_psi_powers,
    expand_monomial, DegreeEngine, Warning,
};
pub use parse::{parse_flat, parse_monomial, parse_psi_product};
pub use psi::{psi_infinity, psi_minus, psi_plus, psi_zero, rho};

/// An integer combination `Σ c_F D_F` in degree one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DivisorCombination {
    terms: BTreeMap<Subset, BigInt>,
}

impl DivisorCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(f: Subset) -> Self {
        let mut c = Self::new();
        c.add_term(f, BigInt::one());
        c
    }

    pub fn add_term(&mut self, f: Subset, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(f).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn coefficient(&self, f: Subset) -> BigInt {
        self.terms.get(&f).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &BigInt)> + '_ {
        self.terms.iter().map(|(f, c)| (*f, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Self::new();
        for (f, c) in self.terms() {
            out.add_term(f, c * k);
        }
        out
    }

    /// Re-expresses a combination over `M|_S` in the coordinates of `M`.
    pub fn expand(&self, mask: Subset) -> Self {
        let mut out = Self::new();
        for (f, c) in self.terms() {
            out.add_term(f.expand(mask), c.clone());
        }
        out
    }

    pub fn display<'a>(&'a self, m: &'a Matroid) -> impl fmt::Display + 'a {
        struct D<'a>(&'a DivisorCombination, &'a Matroid);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_empty() {
                    return f.write_str("0");
                }
                let mut keys: Vec<Subset> = self.0.terms.keys().copied().collect();
                keys.sort_by_key(|s| (s.len(), *s));
                for (i, s) in keys.iter().enumerate() {
                    let c = &self.0.terms[s];
                    match (i, c.is_negative()) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    if !c.abs().is_one() {
                        write!(f, "{}", c.abs())?;
                    }
                    write!(f, "D{}", flat_name(self.1, *s))?;
                }
                Ok(())
            }
        }
        D(self, m)
    }
}

impl std::ops::Add for &DivisorCombination {
    type Output = DivisorCombination;

    fn add(self, rhs: &DivisorCombination) -> DivisorCombination {
        let mut out = self.clone();
        for (f, c) in rhs.terms() {
            out.add_term(f, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &DivisorCombination {
    type Output = DivisorCombination;

    fn sub(self, rhs: &DivisorCombination) -> DivisorCombination {
        let mut out = self.clone();
        for (f, c) in rhs.terms() {
            out.add_term(f, -c);
        }
        out
    }
}

/// A monomial `Π D_F^{d_F}` with positive exponents, `F` proper or `E`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorMonomial {
    factors: BTreeMap<Subset, u32>,
}

impl DivisorMonomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_factors<I: IntoIterator<Item = (Subset, u32)>>(factors: I) -> Self {
        let mut m = Self::new();
        for (f, d) in factors {
            m.multiply(f, d);
        }
        m
    }

    pub fn multiply(&mut self, f: Subset, d: u32) {
        if d > 0 {
            *self.factors.entry(f).or_default() += d;
        }
    }

    pub fn times(&self, other: &DivisorMonomial) -> DivisorMonomial {
        let mut out = self.clone();
        for (f, d) in other.factors() {
            out.multiply(f, d);
        }
        out
    }

    pub fn factors(&self) -> impl Iterator<Item = (Subset, u32)> + '_ {
        self.factors.iter().map(|(f, d)| (*f, *d))
    }

    pub fn exponent(&self, f: Subset) -> u32 {
        self.factors.get(&f).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.factors.values().map(|&d| d as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors ordered by size then bitmask, which lists a flag bottom-up.
    pub fn sorted_factors(&self) -> Vec<(Subset, u32)> {
        let mut v: Vec<_> = self.factors().collect();
        v.sort_by_key(|(s, _)| (s.len(), *s));
        v
    }

    pub fn display<'a>(&'a self, m: &'a Matroid) -> impl fmt::Display + 'a {
        struct D<'a>(&'a DivisorMonomial, &'a Matroid);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_one() {
                    return f.write_str("1");
                }
                for (i, (s, d)) in self.0.sorted_factors().into_iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "D{}", flat_name(self.1, s))?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
                Ok(())
            }
        }
        D(self, m)
    }
}

/// One summand `c · D_𝓕 · Π (ψ_{F_i}^+)^{a_i^+} (ψ_{F_i}^-)^{a_i^-}` over a flag
/// `∅ = F_0 ⊊ F_1 ⊊ .. ⊊ F_k ⊊ F_{k+1} = E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPsiTerm {
    /// `F_1, .., F_k`; the endpoints are implicit.
    pub flag: Vec<Subset>,
    /// `a_0^+, .., a_k^+`.
    pub plus: Vec<u32>,
    /// `a_1^-, .., a_{k+1}^-`.
    pub minus: Vec<u32>,
    pub coefficient: BigInt,
}

impl FlagPsiTerm {
    /// The term `ψ_0^a ψ_∞^b` on the empty flag.
    pub fn psi_powers(a: u32, b: u32) -> Self {
        FlagPsiTerm {
            flag: Vec::new(),
            plus: vec![a],
            minus: vec![b],
            coefficient: BigInt::one(),
        }
    }

    pub fn total_psi_degree(&self) -> usize {
        self.plus.iter().chain(&self.minus).map(|&a| a as usize).sum()
    }

    pub fn display<'a>(&'a self, m: &'a Matroid) -> impl fmt::Display + 'a {
        struct D<'a>(&'a FlagPsiTerm, &'a Matroid);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let t = self.0;
                write!(f, "{}", t.coefficient)?;
                for s in &t.flag {
                    write!(f, " D{}", flat_name(self.1, *s))?;
                }
                let k = t.flag.len();
                let name = |i: usize| match i {
                    0 => "∅".to_string(),
                    i if i == k + 1 => "E".to_string(),
                    i => flat_name(self.1, t.flag[i - 1]),
                };
                for i in 0..=k {
                    if t.plus[i] > 0 {
                        write!(f, " (ψ+{})^{}", name(i), t.plus[i])?;
                    }
                    if t.minus[i] > 0 {
                        write!(f, " (ψ-{})^{}", name(i + 1), t.minus[i])?;
                    }
                }
                Ok(())
            }
        }
        D(self, m)
    }
}

/// A sum of [`FlagPsiTerm`]s sharing one flag.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PsiExpansion {
    pub terms: Vec<FlagPsiTerm>,
}

impl PsiExpansion {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `{0,1}`-style name, with `E` for the full ground set.
pub fn flat_name(m: &Matroid, s: Subset) -> String {
    if s == m.all() {
        "{E}".to_string()
    } else {
        m.show(s)
    }
}
