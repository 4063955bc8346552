//! Volume polynomials of matroids and volumes of generalized permutahedra.
//!
//! For a loopless matroid the volume polynomial is `x ↦ deg((Σ x_F D_F)^r)`.
//! On the Boolean matroid of `[n]` this is `(n-1)!` times the volume of the
//! generalized permutahedron with support vector `x`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chow::{DegreeEngine, DivisorMonomial};
use crate::error::{Error, Result};
use crate::json_int;
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Largest `n` for the exhaustive submodularity check.
pub const SUBMODULAR_LIMIT: usize = 12;
/// Largest `n` for the Postnikov tuple sum.
pub const POSTNIKOV_LIMIT: usize = 8;
/// Default cap on the number of (flag, composition) pairs enumerated.
pub const DEFAULT_TERM_CAP: u128 = 2_000_000;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn multinomial(parts: &[u32]) -> BigInt {
    let total: u32 = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(total as usize), |acc, &d| acc / factorial(d as usize))
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(u.into()))
            } else {
                Err(Error::Parse(format!("`{n}` is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigRational>()
            .map_err(|_| Error::Parse(format!("`{s}` is not a rational number"))),
        other => Err(Error::Parse(format!("`{other}` is not a number"))),
    }
}

/// An exact rational as a JSON number when integral and small, else `"p/q"`.
pub fn json_rational(q: &BigRational) -> Value {
    if q.is_integer() {
        json_int(q.numer())
    } else {
        Value::String(q.to_string())
    }
}

fn key_text(s: Subset) -> String {
    s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Deserialize)]
struct WeightFile {
    n: usize,
    #[serde(default)]
    x: Option<BTreeMap<String, Value>>,
    #[serde(default)]
    y: Option<BTreeMap<String, Value>>,
}

fn read_map(n: usize, raw: BTreeMap<String, Value>) -> Result<BTreeMap<Subset, BigRational>> {
    let full = Subset::full(n);
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        let s: Subset = k.parse()?;
        if !s.is_subset(full) {
            return Err(Error::Parse(format!("set `{k}` is not a subset of 0..{n}")));
        }
        let q = parse_rational(&v)?;
        if !q.is_zero() {
            out.insert(s, q);
        }
    }
    Ok(out)
}

/// Values `x_F` on proper subsets (or proper flats); `x_∅ = x_E = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportVector {
    n: usize,
    values: BTreeMap<Subset, BigRational>,
}

impl SupportVector {
    pub fn new(n: usize) -> Self {
        SupportVector {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, f: Subset, v: impl Into<BigRational>) {
        let v = v.into();
        if v.is_zero() {
            self.values.remove(&f);
        } else {
            self.values.insert(f, v);
        }
    }

    pub fn get(&self, f: Subset) -> BigRational {
        self.values.get(&f).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero entries.
    pub fn values(&self) -> impl Iterator<Item = (Subset, &BigRational)> + '_ {
        self.values.iter().map(|(s, v)| (*s, v))
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut out = SupportVector::new(self.n);
        for (s, v) in &self.values {
            out.set(*s, v * c);
        }
        out
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = SupportVector::new(self.n);
        for (s, v) in &self.values {
            let t = s.iter().fold(Subset::EMPTY, |t, e| t.with(perm[e]));
            out.set(t, v.clone());
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: WeightFile = serde_json::from_str(text)?;
        let raw = f
            .x
            .ok_or_else(|| Error::Parse("support file needs an `x` object".into()))?;
        let mut values = read_map(f.n, raw)?;
        values.remove(&Subset::EMPTY);
        values.remove(&Subset::full(f.n));
        Ok(SupportVector { n: f.n, values })
    }

    pub fn to_json_value(&self) -> Value {
        let x: serde_json::Map<String, Value> = self
            .values
            .iter()
            .map(|(s, v)| (key_text(*s), json_rational(v)))
            .collect();
        serde_json::json!({ "n": self.n, "x": x })
    }
}

/// Nonnegative weights `y_G` on nonempty subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinkowskiWeights {
    n: usize,
    values: BTreeMap<Subset, BigRational>,
}

impl MinkowskiWeights {
    pub fn new(n: usize) -> Self {
        MinkowskiWeights {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, g: Subset, v: impl Into<BigRational>) -> Result<()> {
        let v = v.into();
        if v.is_negative() {
            return Err(Error::invalid(format!(
                "weight of {g} is negative ({v})"
            )));
        }
        if g.is_empty() || !g.is_subset(Subset::full(self.n)) {
            return Err(Error::invalid(format!(
                "{g} is not a nonempty subset of 0..{}",
                self.n
            )));
        }
        if v.is_zero() {
            self.values.remove(&g);
        } else {
            self.values.insert(g, v);
        }
        Ok(())
    }

    pub fn values(&self) -> impl Iterator<Item = (Subset, &BigRational)> + '_ {
        self.values.iter().map(|(s, v)| (*s, v))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: WeightFile = serde_json::from_str(text)?;
        let raw = f
            .y
            .ok_or_else(|| Error::Parse("weight file needs a `y` object".into()))?;
        let mut out = MinkowskiWeights::new(f.n);
        for (s, v) in read_map(f.n, raw)? {
            out.set(s, v)?;
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> Value {
        let y: serde_json::Map<String, Value> = self
            .values
            .iter()
            .map(|(s, v)| (key_text(*s), json_rational(v)))
            .collect();
        serde_json::json!({ "n": self.n, "y": y })
    }
}

/// Checks `x_A + x_B ≥ x_{A∩B} + x_{A∪B}` over all pairs of subsets of
/// `[n]`; on failure returns the first violating pair in bit order.
pub fn is_submodular(n: usize, x: &SupportVector) -> Result<(bool, Option<(Subset, Subset)>)> {
    if n > SUBMODULAR_LIMIT {
        return Err(Error::GuardExceeded {
            what: "check submodularity",
            size: n as u128,
            cap: SUBMODULAR_LIMIT as u128,
        });
    }
    let full = Subset::full(n);
    let value = |s: Subset| {
        if s.is_empty() || s == full {
            BigRational::zero()
        } else {
            x.get(s)
        }
    };
    let all: Vec<Subset> = full.subsets().collect();
    let vals: Vec<BigRational> = all.iter().map(|&s| value(s)).collect();
    let at = |s: Subset| &vals[s.bits() as usize];
    for &a in &all {
        for &b in &all {
            if b.bits() <= a.bits() || a.comparable(b) {
                continue;
            }
            if at(a) + at(b) < at(a.intersection(b)) + at(a.union(b)) {
                return Ok((false, Some((a, b))));
            }
        }
    }
    Ok((true, None))
}

/// One monomial `coef · Π x_{F_i}^{d_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeTerm {
    pub flag: Vec<Subset>,
    pub exps: Vec<u32>,
    /// `multinomial(r; d) · deg(Π D_{F_i}^{d_i})`.
    pub coef: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumePolynomial {
    pub r: usize,
    pub terms: Vec<VolumeTerm>,
    /// `(n-1)` on Boolean matroids, where values are divided by this
    /// factorial; 0 otherwise, where the raw degree is reported.
    pub denominator_factorial: usize,
}

impl VolumePolynomial {
    pub fn eval(&self, x: &SupportVector) -> BigRational {
        let mut total = BigRational::zero();
        for t in &self.terms {
            let mut v = BigRational::from_integer(t.coef.clone());
            for (f, &d) in t.flag.iter().zip(&t.exps) {
                let xf = x.get(*f);
                if xf.is_zero() {
                    v = BigRational::zero();
                    break;
                }
                v *= num_traits::pow(xf, d as usize);
            }
            total += v;
        }
        total / BigRational::from_integer(factorial(self.denominator_factorial))
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|t| {
                    let flag: Vec<Vec<usize>> = t.flag.iter().map(|f| f.iter().collect()).collect();
                    serde_json::json!({
                        "flag": flag,
                        "exps": t.exps,
                        "coef": t.coef.to_string(),
                        "denominator_factorial": self.denominator_factorial,
                    })
                })
                .collect(),
        )
    }

    pub fn display<'a>(&'a self, m: &'a Matroid) -> impl fmt::Display + 'a {
        struct D<'a>(&'a VolumePolynomial, &'a Matroid);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let p = self.0;
                if p.terms.is_empty() {
                    return f.write_str("0");
                }
                if p.denominator_factorial > 0 {
                    write!(f, "(1/{}!) * (", p.denominator_factorial)?;
                }
                for (i, t) in p.terms.iter().enumerate() {
                    let neg = t.coef.is_negative();
                    match (i, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    let c = t.coef.abs();
                    let mut sep = "";
                    if !c.is_one() {
                        write!(f, "{c}")?;
                        sep = "*";
                    }
                    for (s, &d) in t.flag.iter().zip(&t.exps) {
                        write!(f, "{sep}x{}", self.1.show(*s))?;
                        sep = "*";
                        if d > 1 {
                            write!(f, "^{d}")?;
                        }
                    }
                }
                if p.denominator_factorial > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
        D(self, m)
    }
}

impl Serialize for VolumePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

fn denominator(m: &Matroid) -> usize {
    if m.is_boolean() {
        m.rank() - 1
    } else {
        0
    }
}

/// Walks every strict chain in `flats` (sorted by rank) with a composition of
/// `r`, calling `visit(chain, exponents)`. Fails once more than `cap` pairs
/// have been visited.
fn for_each_flag<F>(flats: &[Subset], r: usize, cap: u128, mut visit: F) -> Result<()>
where
    F: FnMut(&[Subset], &[u32]) -> Result<()>,
{
    fn go<F>(
        flats: &[Subset],
        start: usize,
        left: usize,
        chain: &mut Vec<Subset>,
        exps: &mut Vec<u32>,
        seen: &mut u128,
        cap: u128,
        visit: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[Subset], &[u32]) -> Result<()>,
    {
        if left == 0 {
            *seen += 1;
            if *seen > cap {
                return Err(Error::GuardExceeded {
                    what: "enumerate flags and compositions",
                    size: *seen,
                    cap,
                });
            }
            return visit(chain, exps);
        }
        for i in start..flats.len() {
            let g = flats[i];
            if chain.last().is_some_and(|&p| !p.is_proper_subset(g)) {
                continue;
            }
            for d in 1..=left {
                chain.push(g);
                exps.push(d as u32);
                go(flats, i + 1, left - d, chain, exps, seen, cap, visit)?;
                chain.pop();
                exps.pop();
            }
        }
        Ok(())
    }
    let mut seen = 0;
    go(flats, 0, r, &mut Vec::new(), &mut Vec::new(), &mut seen, cap, &mut visit)
}

pub fn volume_polynomial(m: &Matroid) -> Result<VolumePolynomial> {
    volume_polynomial_with_cap(m, DEFAULT_TERM_CAP)
}

pub fn volume_polynomial_with_cap(m: &Matroid, cap: u128) -> Result<VolumePolynomial> {
    m.require_chow()?;
    let engine = DegreeEngine::new(m)?;
    let r = engine.r();
    let flats: Vec<Subset> = m.proper_flats().map(|f| f.members).collect();
    let mut terms = Vec::new();
    for_each_flag(&flats, r, cap, |chain, exps| {
        let mono = DivisorMonomial::from_factors(chain.iter().copied().zip(exps.iter().copied()));
        let deg = engine.deg_monomial(&mono)?.0;
        if !deg.is_zero() {
            terms.push(VolumeTerm {
                flag: chain.to_vec(),
                exps: exps.to_vec(),
                coef: multinomial(exps) * deg,
            });
        }
        Ok(())
    })?;
    Ok(VolumePolynomial {
        r,
        terms,
        denominator_factorial: denominator(m),
    })
}

/// `deg((Σ x_F D_F)^r)`, divided by `(n-1)!` on Boolean matroids.
///
/// Only flags inside the support of `x` are visited. Keys of `x` must be
/// proper flats of `m`.
pub fn eval_volume(m: &Matroid, x: &SupportVector) -> Result<BigRational> {
    eval_volume_with_cap(m, x, DEFAULT_TERM_CAP)
}

pub fn eval_volume_with_cap(m: &Matroid, x: &SupportVector, cap: u128) -> Result<BigRational> {
    m.require_chow()?;
    if x.n() != m.n() {
        return Err(Error::invalid(format!(
            "support vector is on {} elements, matroid on {}",
            x.n(),
            m.n()
        )));
    }
    let mut support: Vec<(usize, Subset)> = Vec::new();
    for (s, _) in x.values() {
        if !m.is_flat(s) || s == m.all() || s.is_empty() {
            return Err(Error::NotAFlat(s));
        }
        support.push((m.rank_of(s), s));
    }
    support.sort();
    let flats: Vec<Subset> = support.into_iter().map(|p| p.1).collect();
    let engine = DegreeEngine::new(m)?;
    let mut total = BigRational::zero();
    for_each_flag(&flats, engine.r(), cap, |chain, exps| {
        let mono = DivisorMonomial::from_factors(chain.iter().copied().zip(exps.iter().copied()));
        let deg = engine.deg_monomial(&mono)?.0;
        if deg.is_zero() {
            return Ok(());
        }
        let mut v = BigRational::from_integer(multinomial(exps) * deg);
        for (f, &d) in chain.iter().zip(exps) {
            v *= num_traits::pow(x.get(*f), d as usize);
        }
        total += v;
        Ok(())
    })?;
    Ok(total / BigRational::from_integer(factorial(denominator(m))))
}

/// `x_F = -z_F` if `0 ∉ F`, else `z_{[n]} - z_F`, with `z_F = Σ_{G ⊆ F} y_G`.
pub fn minkowski_to_support(n: usize, y: &MinkowskiWeights) -> Result<SupportVector> {
    if y.n() != n {
        return Err(Error::invalid(format!(
            "weights are on {} elements, expected {n}",
            y.n()
        )));
    }
    let full = Subset::full(n);
    let z = |f: Subset| -> BigRational {
        y.values()
            .filter(|(g, _)| g.is_subset(f))
            .fold(BigRational::zero(), |acc, (_, v)| acc + v)
    };
    let z_top = z(full);
    let mut x = SupportVector::new(n);
    for f in full.subsets() {
        if f.is_empty() || f == full {
            continue;
        }
        let v = if f.contains(0) { &z_top - z(f) } else { -z(f) };
        x.set(f, v);
    }
    Ok(x)
}

/// Calls `visit(indices, multiplicities)` for every multiset of size `k`
/// drawn from `0..s`.
fn for_each_multiset<F: FnMut(&[usize], &[u32])>(s: usize, k: usize, mut visit: F) {
    fn go<F: FnMut(&[usize], &[u32])>(
        s: usize,
        start: usize,
        left: usize,
        idx: &mut Vec<usize>,
        mult: &mut Vec<u32>,
        visit: &mut F,
    ) {
        if left == 0 {
            visit(idx, mult);
            return;
        }
        for i in start..s {
            for m in 1..=left {
                idx.push(i);
                mult.push(m as u32);
                go(s, i + 1, left - m, idx, mult, visit);
                idx.pop();
                mult.pop();
            }
        }
    }
    go(s, 0, k, &mut Vec::new(), &mut Vec::new(), &mut visit);
}

fn multiset_count(s: usize, k: usize) -> u128 {
    crate::binomial(s + k.saturating_sub(1), k)
        .to_u128()
        .unwrap_or(u128::MAX)
}

/// Postnikov's formula: `(1/(n-1)!) Σ y_{G_1} ⋯ y_{G_{n-1}}` over ordered
/// tuples whose every subcollection of size `k` has a union of more than
/// `k` elements.
pub fn postnikov_volume(n: usize, y: &MinkowskiWeights) -> Result<BigRational> {
    if n > POSTNIKOV_LIMIT {
        return Err(Error::GuardExceeded {
            what: "sum over Postnikov tuples",
            size: n as u128,
            cap: POSTNIKOV_LIMIT as u128,
        });
    }
    if n == 0 || y.n() != n {
        return Err(Error::invalid(format!(
            "weights are on {} elements, expected {n} > 0",
            y.n()
        )));
    }
    let support: Vec<(Subset, BigRational)> = y.values().map(|(s, v)| (s, v.clone())).collect();
    let k = n - 1;
    let mut total = BigRational::zero();
    for_each_multiset(support.len(), k, |idx, mult| {
        let d = idx.len();
        // Taking every copy of a chosen set is the binding case.
        let valid = (1u32..(1 << d)).all(|pick| {
            let (union, size) = (0..d).filter(|i| pick >> i & 1 == 1).fold(
                (Subset::EMPTY, 0u32),
                |(u, c), i| (u.union(support[idx[i]].0), c + mult[i]),
            );
            union.len() as u32 > size
        });
        if valid {
            let mut v = BigRational::from_integer(multinomial(mult));
            for (&i, &m) in idx.iter().zip(mult) {
                v *= num_traits::pow(support[i].1.clone(), m as usize);
            }
            total += v;
        }
    });
    Ok(total / BigRational::from_integer(factorial(k)))
}

/// `deg((Σ y_G ψ_G^-)^r)` expanded with the union-rank criterion, divided
/// by `(n-1)!` on Boolean matroids. Keys of `y` must be nonempty flats.
pub fn psi_minus_volume(m: &Matroid, y: &MinkowskiWeights) -> Result<BigRational> {
    m.require_chow()?;
    let engine = DegreeEngine::new(m)?;
    let r = engine.r();
    let support: Vec<(Subset, BigRational)> = y.values().map(|(s, v)| (s, v.clone())).collect();
    for (s, _) in &support {
        if !m.is_flat(*s) {
            return Err(Error::NotAFlat(*s));
        }
    }
    let count = multiset_count(support.len(), r);
    if count > DEFAULT_TERM_CAP {
        return Err(Error::GuardExceeded {
            what: "expand the psi-minus power",
            size: count,
            cap: DEFAULT_TERM_CAP,
        });
    }
    let mut total = BigRational::zero();
    let mut failure = None;
    for_each_multiset(support.len(), r, |idx, mult| {
        if failure.is_some() {
            return;
        }
        let flats: Vec<Subset> = idx
            .iter()
            .zip(mult)
            .flat_map(|(&i, &m)| std::iter::repeat_n(support[i].0, m as usize))
            .collect();
        match engine.deg_psi_minus_product(&flats) {
            Ok(d) if d.is_zero() => {}
            Ok(d) => {
                let mut v = BigRational::from_integer(multinomial(mult) * d);
                for (&i, &m) in idx.iter().zip(mult) {
                    v *= num_traits::pow(support[i].1.clone(), m as usize);
                }
                total += v;
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(total / BigRational::from_integer(factorial(denominator(m))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elems: &[usize]) -> Subset {
        Subset::from_elements(8, elems.iter().copied()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn submodularity_examples() {
        let mut ones = SupportVector::new(3);
        for f in Subset::full(3).subsets() {
            if !f.is_empty() && f != Subset::full(3) {
                ones.set(f, BigInt::one());
            }
        }
        assert_eq!(is_submodular(3, &ones).unwrap(), (true, None));
        let mut bad = SupportVector::new(3);
        bad.set(set(&[0, 1]), BigInt::one());
        assert_eq!(
            is_submodular(3, &bad).unwrap(),
            (false, Some((set(&[0]), set(&[1]))))
        );
        assert!(is_submodular(3, &SupportVector::new(3)).unwrap().0);
        assert!(is_submodular(13, &SupportVector::new(13)).is_err());
    }

    #[test]
    fn change_of_variables() {
        let mut y = MinkowskiWeights::new(3);
        y.set(Subset::full(3), BigInt::one()).unwrap();
        let x = minkowski_to_support(3, &y).unwrap();
        let expect: Vec<(Subset, i64)> = vec![(set(&[0]), 1), (set(&[0, 1]), 1), (set(&[0, 2]), 1)];
        assert_eq!(x.values().count(), 3);
        for (s, v) in expect {
            assert_eq!(x.get(s), q(v, 1));
        }
        let mut y2 = MinkowskiWeights::new(3);
        y2.set(set(&[1]), BigInt::one()).unwrap();
        let x2 = minkowski_to_support(3, &y2).unwrap();
        assert_eq!(x2.get(set(&[1])), q(-1, 1));
        assert_eq!(x2.get(set(&[1, 2])), q(-1, 1));
        assert_eq!(x2.get(set(&[0, 1])), q(0, 1));
        assert_eq!(x2.get(set(&[0])), q(1, 1));
        assert!(y2.set(set(&[0]), BigInt::from(-1)).is_err());
    }

    #[test]
    fn fixed_volumes() {
        let b3 = Matroid::from_boolean(3).unwrap();
        let mut y = MinkowskiWeights::new(3);
        y.set(Subset::full(3), BigInt::one()).unwrap();
        assert_eq!(postnikov_volume(3, &y).unwrap(), q(1, 2));
        let x = minkowski_to_support(3, &y).unwrap();
        assert_eq!(eval_volume(&b3, &x).unwrap(), q(1, 2));

        let mut y = MinkowskiWeights::new(3);
        y.set(set(&[0, 1]), BigInt::one()).unwrap();
        y.set(set(&[0, 2]), BigInt::one()).unwrap();
        assert_eq!(postnikov_volume(3, &y).unwrap(), q(1, 1));
        let x = minkowski_to_support(3, &y).unwrap();
        assert_eq!(eval_volume(&b3, &x).unwrap(), q(1, 1));
        assert_eq!(psi_minus_volume(&b3, &y).unwrap(), q(1, 1));

        let mut y = MinkowskiWeights::new(3);
        y.set(set(&[0, 1]), BigInt::one()).unwrap();
        assert!(postnikov_volume(3, &y).unwrap().is_zero());
        assert!(eval_volume(&b3, &SupportVector::new(3)).unwrap().is_zero());
    }

    #[test]
    fn polynomial_terms() {
        let b3 = Matroid::from_boolean(3).unwrap();
        let p = volume_polynomial(&b3).unwrap();
        assert_eq!(p.denominator_factorial, 2);
        let single = p
            .terms
            .iter()
            .find(|t| t.flag == vec![set(&[0])] && t.exps == vec![2])
            .unwrap();
        assert_eq!(single.coef, BigInt::from(-1));

        let b7 = Matroid::from_boolean(7).unwrap();
        let mut x = SupportVector::new(7);
        x.set(set(&[0, 1]), BigInt::one());
        x.set(set(&[0, 1, 2, 3, 4]), BigInt::one());
        x.set(set(&[0, 1, 2, 3, 4, 5]), BigInt::one());
        let engine = DegreeEngine::new(&b7).unwrap();
        let mono = DivisorMonomial::from_factors([
            (set(&[0, 1]), 3),
            (set(&[0, 1, 2, 3, 4]), 2),
            (set(&[0, 1, 2, 3, 4, 5]), 1),
        ]);
        let coef = multinomial(&[3, 2, 1]) * engine.deg_monomial(&mono).unwrap().0;
        assert_eq!(coef, BigInt::from(-240));
        assert!(eval_volume(&b7, &x).is_ok());
    }

    #[test]
    fn polynomial_eval_matches_direct() {
        let m = Matroid::from_uniform(3, 4).unwrap();
        let p = volume_polynomial(&m).unwrap();
        assert_eq!(p.denominator_factorial, 0);
        let mut x = SupportVector::new(4);
        for (i, f) in m.proper_flats().enumerate() {
            x.set(f.members, BigInt::from(i as i64 % 3 - 1));
        }
        assert_eq!(p.eval(&x), eval_volume(&m, &x).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let x = SupportVector::from_json(r#"{"n": 3, "x": {"0": 1, "0,1": "1/2"}}"#).unwrap();
        assert_eq!(x.get(set(&[0, 1])), q(1, 2));
        assert_eq!(SupportVector::from_json(&x.to_json_value().to_string()).unwrap(), x);
        let y = MinkowskiWeights::from_json(r#"{"n": 3, "y": {"0,1,2": 1}}"#).unwrap();
        assert_eq!(y.values().count(), 1);
        assert!(MinkowskiWeights::from_json(r#"{"n": 3, "y": {"0": -1}}"#).is_err());
    }
}
