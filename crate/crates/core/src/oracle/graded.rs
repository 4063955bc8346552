use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::linalg::{Echelon, SparseRow, SparseVec};
use crate::chow::{DivisorCombination, DivisorMonomial};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Default cap on the number of degree-`k` monomials in the generators.
pub const DEFAULT_MONOMIAL_CAP: u128 = 200_000;

/// A polynomial in the divisor generators (`D_E` allowed), with integer
/// coefficients. Monomials containing two incomparable proper flats lie in
/// the ideal `I` and are dropped on construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChowPoly {
    terms: BTreeMap<DivisorMonomial, BigInt>,
}

fn is_chain(mono: &DivisorMonomial) -> bool {
    let flats: Vec<Subset> = mono.sorted_factors().into_iter().map(|f| f.0).collect();
    flats.windows(2).all(|w| w[0].is_subset(w[1]))
}

impl ChowPoly {
    pub fn one() -> Self {
        Self::monomial(DivisorMonomial::new())
    }

    pub fn monomial(mono: DivisorMonomial) -> Self {
        let mut p = ChowPoly::default();
        p.add_term(mono, BigInt::one());
        p
    }

    pub fn linear(c: &DivisorCombination) -> Self {
        let mut p = ChowPoly::default();
        for (f, k) in c.terms() {
            p.add_term(DivisorMonomial::from_factors([(f, 1)]), k.clone());
        }
        p
    }

    /// `Π c_i` for a list of degree-one classes.
    pub fn product(factors: &[DivisorCombination]) -> Self {
        factors
            .iter()
            .fold(ChowPoly::one(), |acc, c| acc.times_linear(c))
    }

    pub fn add_term(&mut self, mono: DivisorMonomial, c: BigInt) {
        if c.is_zero() || !is_chain(&mono) {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&mut self, other: &ChowPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = ChowPoly::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn times_linear(&self, c: &DivisorCombination) -> Self {
        let mut out = ChowPoly::default();
        for (m, a) in &self.terms {
            for (f, b) in c.terms() {
                out.add_term(m.times(&DivisorMonomial::from_factors([(f, 1)])), a * b);
            }
        }
        out
    }

    pub fn times(&self, other: &ChowPoly) -> Self {
        let mut out = ChowPoly::default();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.times(n), a * b);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DivisorMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, or `None` if empty or mixed.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(DivisorMonomial::degree);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
}

/// Monomials in proper-flat positions, as sorted multisets.
type Key = Vec<u16>;

/// The degree-`k` slice of `A*(M)`: chain-supported monomials as
/// coordinates and the linear relations in echelon form.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: usize,
    proper: Rc<Vec<Subset>>,
    columns: Vec<Key>,
    index: HashMap<Key, u32>,
    echelon: Echelon,
    free: Vec<u32>,
}

impl GradedPiece {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of chain-supported monomials; the rest lie in `I`.
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    /// `dim A^k(M)`.
    pub fn rank(&self) -> usize {
        self.free.len()
    }

    /// Columns not eliminated by the relations, which index the quotient.
    pub fn free_columns(&self) -> &[u32] {
        &self.free
    }

    pub fn monomial(&self, col: u32) -> DivisorMonomial {
        let mut m = DivisorMonomial::new();
        for &p in &self.columns[col as usize] {
            m.multiply(self.proper[p as usize], 1);
        }
        m
    }

    pub fn monomials(&self) -> impl Iterator<Item = DivisorMonomial> + '_ {
        (0..self.columns.len() as u32).map(|c| self.monomial(c))
    }

    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.echelon.reduce(v)
    }
}

/// Brute-force model of `A*(M)` by exact linear algebra.
pub struct Oracle<'a> {
    m: &'a Matroid,
    proper: Rc<Vec<Subset>>,
    pos: HashMap<Subset, u16>,
    cap: u128,
    pieces: RefCell<HashMap<usize, Rc<GradedPiece>>>,
    reference: RefCell<Option<Rc<SparseVec>>>,
}

fn count_monomials(p: usize, k: usize) -> u128 {
    // C(p + k - 1, k), saturating.
    if k == 0 {
        return 1;
    }
    if p == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = match acc.checked_mul(p as u128 - 1 + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    acc
}

impl<'a> Oracle<'a> {
    pub fn new(m: &'a Matroid) -> Result<Self> {
        Self::with_cap(m, DEFAULT_MONOMIAL_CAP)
    }

    pub fn with_cap(m: &'a Matroid, cap: u128) -> Result<Self> {
        m.require_chow()?;
        let proper: Vec<Subset> = m.proper_flats().map(|f| f.members).collect();
        if proper.len() > u16::MAX as usize {
            return Err(Error::GuardExceeded {
                what: "index proper flats",
                size: proper.len() as u128,
                cap: u16::MAX as u128,
            });
        }
        let pos = proper
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i as u16))
            .collect();
        Ok(Oracle {
            m,
            proper: Rc::new(proper),
            pos,
            cap,
            pieces: RefCell::new(HashMap::new()),
            reference: RefCell::new(None),
        })
    }

    pub fn matroid(&self) -> &'a Matroid {
        self.m
    }

    pub fn r(&self) -> usize {
        self.m.rank() - 1
    }

    fn comparable(&self, a: u16, b: u16) -> bool {
        self.proper[a as usize].comparable(self.proper[b as usize])
    }

    /// Chain-supported monomials of degree `k`, fewer distinct flats first.
    fn chain_monomials(&self, k: usize) -> Vec<Key> {
        let p = self.proper.len() as u16;
        let mut out = Vec::new();
        let mut cur: Key = Vec::with_capacity(k);
        fn walk(o: &Oracle, k: usize, start: u16, p: u16, cur: &mut Key, out: &mut Vec<Key>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..p {
                if cur.iter().all(|&j| j == i || o.comparable(i, j)) {
                    cur.push(i);
                    walk(o, k, i, p, cur, out);
                    cur.pop();
                }
            }
        }
        walk(self, k, 0, p, &mut cur, &mut out);
        out.sort_by_key(|key| {
            let mut d = key.clone();
            d.dedup();
            (d.len(), key.clone())
        });
        out
    }

    /// Builds (or fetches) the degree-`k` piece.
    pub fn piece(&self, k: usize) -> Result<Rc<GradedPiece>> {
        if let Some(p) = self.pieces.borrow().get(&k) {
            return Ok(p.clone());
        }
        let total = count_monomials(self.proper.len(), k);
        if total > self.cap {
            return Err(Error::GuardExceeded {
                what: "build the graded piece",
                size: total,
                cap: self.cap,
            });
        }
        let columns = self.chain_monomials(k);
        let index: HashMap<Key, u32> = columns
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i as u32))
            .collect();
        let mut rows: Vec<SparseRow> = Vec::new();
        if k > 0 {
            let e0 = 0;
            let lower = self.chain_monomials(k - 1);
            for e in 1..self.m.n() {
                for u in &lower {
                    let mut row: BTreeMap<u32, BigInt> = BTreeMap::new();
                    for (g, i) in self.proper.iter().zip(0u16..) {
                        let c = i64::from(g.contains(e)) - i64::from(g.contains(e0));
                        if c == 0 {
                            continue;
                        }
                        let mut key = u.clone();
                        let at = key.partition_point(|&x| x <= i);
                        key.insert(at, i);
                        if let Some(&col) = index.get(&key) {
                            *row.entry(col).or_default() += c;
                        }
                    }
                    let row: SparseRow = row
                        .into_iter()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(c, v)| (c, BigRational::from_integer(v)))
                        .collect();
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let echelon = Echelon::from_rows(rows);
        let free = (0..columns.len() as u32)
            .filter(|&c| !echelon.is_pivot(c))
            .collect();
        let piece = Rc::new(GradedPiece {
            degree: k,
            proper: self.proper.clone(),
            columns,
            index,
            echelon,
            free,
        });
        let r = self.r();
        if k == r {
            assert_eq!(piece.rank(), 1, "top-degree piece must have rank 1");
        }
        if k > r {
            assert_eq!(piece.rank(), 0, "pieces above the top degree must vanish");
        }
        self.pieces.borrow_mut().insert(k, piece.clone());
        Ok(piece)
    }

    /// Coordinates of a homogeneous polynomial over the chain monomials of
    /// its degree, after substituting `D_E = -Σ_{G ∋ e} D_G`.
    pub fn coordinates(&self, poly: &ChowPoly) -> Result<(usize, SparseVec)> {
        let expanded = self.substitute_top(poly)?;
        let Some(k) = poly.homogeneous_degree() else {
            if poly.is_zero() {
                return Ok((0, SparseVec::new()));
            }
            return Err(Error::invalid("polynomial is not homogeneous"));
        };
        let piece = self.piece(k)?;
        let mut v = SparseVec::new();
        for (mono, c) in expanded.terms() {
            let key = self.key(mono)?;
            let col = piece.index[&key];
            let slot = v.entry(col).or_default();
            *slot += BigRational::from_integer(c.clone());
        }
        v.retain(|_, x| !x.is_zero());
        Ok((k, v))
    }

    fn key(&self, mono: &DivisorMonomial) -> Result<Key> {
        let mut key = Vec::with_capacity(mono.degree());
        for (f, d) in mono.factors() {
            let &p = self.pos.get(&f).ok_or_else(|| {
                Error::invalid(format!("{} is not a proper flat", self.m.show(f)))
            })?;
            key.extend(std::iter::repeat_n(p, d as usize));
        }
        key.sort_unstable();
        Ok(key)
    }

    fn substitute_top(&self, poly: &ChowPoly) -> Result<ChowPoly> {
        let top = self.m.all();
        let mut minus_psi = DivisorCombination::new();
        for &g in self.proper.iter() {
            if g.contains(0) {
                minus_psi.add_term(g, -1);
            }
        }
        let mut out = ChowPoly::default();
        for (mono, c) in poly.terms() {
            for (f, _) in mono.factors() {
                if f != top && !self.pos.contains_key(&f) {
                    return Err(Error::invalid(format!(
                        "{} is not a proper flat",
                        self.m.show(f)
                    )));
                }
            }
            let d = mono.exponent(top);
            let rest = DivisorMonomial::from_factors(mono.factors().filter(|(f, _)| *f != top));
            let mut p = ChowPoly::default();
            p.add_term(rest, c.clone());
            for _ in 0..d {
                p = p.times_linear(&minus_psi);
            }
            out.add(&p);
        }
        Ok(out)
    }

    /// Normal form of a homogeneous polynomial.
    pub fn reduce(&self, poly: &ChowPoly) -> Result<(usize, SparseVec)> {
        let (k, v) = self.coordinates(poly)?;
        if v.is_empty() {
            return Ok((k, v));
        }
        Ok((k, self.piece(k)?.reduce(v)))
    }

    pub fn is_zero(&self, poly: &ChowPoly) -> Result<bool> {
        Ok(self.reduce(poly)?.1.is_empty())
    }

    fn reference(&self) -> Result<Rc<SparseVec>> {
        if let Some(r) = self.reference.borrow().as_ref() {
            return Ok(r.clone());
        }
        let flag = self
            .m
            .complete_flags()
            .into_iter()
            .next()
            .expect("a loopless matroid has a complete flag");
        let v = Rc::new(self.reduce_flag(&flag)?);
        *self.reference.borrow_mut() = Some(v.clone());
        Ok(v)
    }

    fn reduce_flag(&self, flag: &[Subset]) -> Result<SparseVec> {
        let mono = DivisorMonomial::from_factors(flag.iter().map(|&f| (f, 1)));
        let (_, v) = self.reduce(&ChowPoly::monomial(mono))?;
        if v.is_empty() {
            return Err(Error::invalid("complete flag reduced to zero"));
        }
        Ok(v)
    }

    /// Degree of a top-degree polynomial, normalised so that complete flags
    /// have degree 1.
    pub fn degree_poly(&self, poly: &ChowPoly) -> Result<BigInt> {
        let reference = self.reference()?;
        self.degree_against(poly, &reference)
    }

    fn degree_against(&self, poly: &ChowPoly, reference: &SparseVec) -> Result<BigInt> {
        let r = self.r();
        if let Some(k) = poly.homogeneous_degree() {
            if k != r {
                return Err(Error::invalid(format!(
                    "oracle degree needs degree {r}, got {k}"
                )));
            }
        }
        let (_, v) = self.reduce(poly)?;
        let (&col, unit) = reference.iter().next().expect("reference is nonzero");
        let x = v.get(&col).cloned().unwrap_or_else(BigRational::zero) / unit;
        if !x.denom().is_one() {
            return Err(Error::NonIntegral(format!("oracle degree {x}")));
        }
        Ok(x.numer().clone())
    }

    /// Oracle degree of a divisor monomial of degree `r`.
    pub fn degree(&self, mono: &DivisorMonomial) -> Result<BigInt> {
        let r = self.r();
        if mono.degree() != r {
            return Err(Error::invalid(format!(
                "oracle degree needs degree {r}, got {}",
                mono.degree()
            )));
        }
        self.degree_poly(&ChowPoly::monomial(mono.clone()))
    }

    /// Same as [`Oracle::degree_poly`] but normalised on a chosen complete flag.
    pub fn degree_with_reference(&self, poly: &ChowPoly, flag: &[Subset]) -> Result<BigInt> {
        let reference = self.reduce_flag(flag)?;
        self.degree_against(poly, &reference)
    }
}

/// Builds the degree-`k` piece with the default guard.
pub fn build_graded(m: &Matroid, k: usize) -> Result<GradedPiece> {
    let o = Oracle::new(m)?;
    let p = o.piece(k)?;
    Ok((*p).clone())
}

/// Degree of `mono` by reduction modulo `I + J` onto a complete flag.
pub fn oracle_degree(m: &Matroid, mono: &DivisorMonomial) -> Result<BigInt> {
    Oracle::new(m)?.degree(mono)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{deg_monomial, psi_minus, psi_plus};

    #[test]
    fn guard_counts() {
        assert_eq!(count_monomials(14, 3), 560);
        assert_eq!(count_monomials(126, 6), 6_249_655_776);
        assert_eq!(count_monomials(5, 0), 1);
    }

    #[test]
    fn boolean_ranks() {
        let m = Matroid::from_boolean(3).unwrap();
        let o = Oracle::new(&m).unwrap();
        assert_eq!(o.piece(0).unwrap().rank(), 1);
        assert_eq!(o.piece(1).unwrap().rank(), 4);
        assert_eq!(o.piece(2).unwrap().rank(), 1);
        assert_eq!(o.piece(3).unwrap().rank(), 0);
        let b4 = Matroid::from_boolean(4).unwrap();
        assert_eq!(build_graded(&b4, 1).unwrap().rank(), 11);
    }

    #[test]
    fn degrees_match_closed_form_on_u24() {
        let m = Matroid::from_uniform(3, 4).unwrap();
        let o = Oracle::new(&m).unwrap();
        let flats: Vec<Subset> = m.flats().iter().skip(1).map(|f| f.members).collect();
        for (i, &a) in flats.iter().enumerate() {
            for &b in &flats[i..] {
                let mono = DivisorMonomial::from_factors([(a, 1), (b, 1)]);
                assert_eq!(o.degree(&mono).unwrap(), deg_monomial(&m, &mono).unwrap());
            }
        }
    }

    #[test]
    fn self_intersection_vanishes() {
        let m = Matroid::from_uniform(3, 5).unwrap();
        let o = Oracle::new(&m).unwrap();
        for f in m.proper_flats() {
            let d = DivisorCombination::generator(f.members);
            let psi = &psi_minus(&m, f.members, 0).unwrap() + &psi_plus(&m, f.members, 0).unwrap();
            let cls = &d + &psi;
            let poly = ChowPoly::product(&[d.clone(), cls]);
            assert!(o.is_zero(&poly).unwrap());
        }
    }

    #[test]
    fn guard_refuses() {
        let m = Matroid::from_boolean(7).unwrap();
        let o = Oracle::new(&m).unwrap();
        assert!(matches!(o.piece(6), Err(Error::GuardExceeded { .. })));
    }
}
