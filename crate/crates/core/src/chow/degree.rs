use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DivisorMonomial, FlagPsiTerm, PsiExpansion};
use crate::binomial;
use crate::charpoly::interval_char_poly;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Non-fatal diagnostics from degree evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// The degree map only sees the top graded piece; other inputs give 0.
    WrongDegree { expected: usize, found: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::WrongDegree { expected, found } => write!(
                f,
                "monomial has degree {found} but the top degree is {expected}; its degree is 0"
            ),
        }
    }
}

/// Degree evaluation on one matroid with a cache of interval `μ` values.
/// Create one per batch of related queries.
pub struct DegreeEngine<'a> {
    m: &'a Matroid,
    mu: RefCell<HashMap<(usize, usize), Vec<BigInt>>>,
}

/// A monomial sorted into a flag: proper flats with exponents, plus `d_E`.
struct Chain {
    flats: Vec<(usize, u32)>,
    d_top: u32,
}

impl<'a> DegreeEngine<'a> {
    pub fn new(m: &'a Matroid) -> Result<Self> {
        m.require_chow()?;
        Ok(DegreeEngine {
            m,
            mu: RefCell::new(HashMap::new()),
        })
    }

    pub fn matroid(&self) -> &'a Matroid {
        self.m
    }

    /// `r = rk(E) - 1`.
    pub fn r(&self) -> usize {
        self.m.rank() - 1
    }

    /// `μ^a(M[F, G])` for flats with indices `lo` and `hi`.
    pub fn interval_mu(&self, lo: usize, hi: usize, a: usize) -> BigInt {
        if a == 0 {
            return BigInt::one();
        }
        let mut cache = self.mu.borrow_mut();
        let row = cache.entry((lo, hi)).or_insert_with(|| {
            let reduced = interval_char_poly(self.m, lo, hi)
                .div_lambda_minus_one()
                .expect("interval polynomials vanish at 1");
            let top = reduced.degree().unwrap_or(0);
            (0..=top)
                .map(|a| {
                    let c = reduced.coefficient(top - a);
                    if a % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        });
        row.get(a).cloned().unwrap_or_default()
    }

    fn index(&self, f: Subset) -> Result<usize> {
        self.m.flat_index(f).ok_or(Error::NotAFlat(f))
    }

    /// `deg(ψ_0^a ψ_∞^b)` on the interval between flat indices `lo` and `hi`.
    fn interval_psi(&self, lo: usize, hi: usize, a: u32, b: u32) -> BigInt {
        let flats = self.m.flats();
        let r = flats[hi].rank - flats[lo].rank - 1;
        if (a + b) as usize != r {
            return BigInt::zero();
        }
        self.interval_mu(lo, hi, a as usize)
    }

    fn check_factors(&self, mono: &DivisorMonomial) -> Result<()> {
        for (f, _) in mono.factors() {
            let flat = self.m.flat(f)?;
            if flat.rank == 0 {
                return Err(Error::invalid(format!(
                    "{} is the least flat, which has no divisor",
                    self.m.show(f)
                )));
            }
        }
        Ok(())
    }

    /// Sorts the proper flats of a monomial into a flag, or `None` when two
    /// of them are incomparable.
    fn chain(&self, mono: &DivisorMonomial) -> Result<Option<Chain>> {
        self.check_factors(mono)?;
        let top = self.m.all();
        let mut flats = Vec::new();
        let mut d_top = 0;
        for (f, d) in mono.sorted_factors() {
            if f == top {
                d_top = d;
            } else {
                flats.push((f, d));
            }
        }
        if flats.windows(2).any(|w| !w[0].0.is_proper_subset(w[1].0)) {
            return Ok(None);
        }
        let flats = flats
            .into_iter()
            .map(|(f, d)| Ok((self.index(f)?, d)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(Chain { flats, d_top }))
    }

    pub fn deg_psi_powers(&self, a: u32, b: u32) -> BigInt {
        self.interval_psi(0, self.m.flats().len() - 1, a, b)
    }

    /// Flat indices `F_0 = ∅, F_1, .., F_k, F_{k+1} = E` of a term's flag.
    fn flag_indices(&self, term: &FlagPsiTerm) -> Result<Vec<usize>> {
        let k = term.flag.len();
        if term.plus.len() != k + 1 || term.minus.len() != k + 1 {
            return Err(Error::invalid(format!(
                "a flag of length {k} needs {} plus and minus exponents",
                k + 1
            )));
        }
        let mut idx = vec![0];
        for (i, &f) in term.flag.iter().enumerate() {
            let j = self.index(f)?;
            let flat = self.m.flats()[j];
            if flat.rank == 0 || f == self.m.all() {
                return Err(Error::invalid(format!(
                    "{} is not a proper flat",
                    self.m.show(f)
                )));
            }
            if i > 0 && !term.flag[i - 1].is_proper_subset(f) {
                return Err(Error::invalid("flag is not strictly increasing"));
            }
            idx.push(j);
        }
        idx.push(self.m.flats().len() - 1);
        Ok(idx)
    }

    /// `deg_{M[F_i, F_{i+1}]}((ψ_0)^{a_i^+} (ψ_∞)^{a_{i+1}^-})` for each
    /// interval of the flag.
    pub fn interval_factors(&self, term: &FlagPsiTerm) -> Result<Vec<BigInt>> {
        let idx = self.flag_indices(term)?;
        Ok((0..idx.len() - 1)
            .map(|i| self.interval_psi(idx[i], idx[i + 1], term.plus[i], term.minus[i]))
            .collect())
    }

    pub fn deg_flag_mixed(&self, term: &FlagPsiTerm) -> Result<BigInt> {
        let idx = self.flag_indices(term)?;
        let k = term.flag.len();
        if term.total_psi_degree() + k != self.r() {
            return Ok(BigInt::zero());
        }
        let mut value = term.coefficient.clone();
        for i in 0..=k {
            if value.is_zero() {
                break;
            }
            value *= self.interval_psi(idx[i], idx[i + 1], term.plus[i], term.minus[i]);
        }
        Ok(value)
    }

    pub fn expand_monomial(&self, mono: &DivisorMonomial) -> Result<PsiExpansion> {
        let Some(chain) = self.chain(mono)? else {
            return Ok(PsiExpansion::default());
        };
        let flats = self.m.flats();
        let flag: Vec<Subset> = chain.flats.iter().map(|&(i, _)| flats[i].members).collect();
        let excess: u32 = chain.flats.iter().map(|&(_, d)| d - 1).sum::<u32>() + chain.d_top;
        let sign = if excess.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let mut terms = Vec::new();
        let mut split = vec![0u32; chain.flats.len()];
        loop {
            let mut plus = vec![0];
            let mut minus = Vec::new();
            let mut coefficient = sign.clone();
            for (&(_, d), &a) in chain.flats.iter().zip(&split) {
                plus.push(a);
                minus.push(d - 1 - a);
                coefficient *= binomial((d - 1) as usize, a as usize);
            }
            minus.push(chain.d_top);
            terms.push(FlagPsiTerm {
                flag: flag.clone(),
                plus,
                minus,
                coefficient,
            });
            // Odometer over a_i^+ in [0, d_i - 1], last flat fastest.
            let mut i = split.len();
            loop {
                if i == 0 {
                    return Ok(PsiExpansion { terms });
                }
                i -= 1;
                if split[i] + 1 < chain.flats[i].1 {
                    split[i] += 1;
                    split[i + 1..].iter_mut().for_each(|a| *a = 0);
                    break;
                }
            }
        }
    }

    /// Closed-form degree; see [`deg_monomial`].
    pub fn deg_monomial(&self, mono: &DivisorMonomial) -> Result<(BigInt, Option<Warning>)> {
        let r = self.r();
        if mono.degree() != r {
            self.check_factors(mono)?;
            let w = Warning::WrongDegree {
                expected: r,
                found: mono.degree(),
            };
            return Ok((BigInt::zero(), Some(w)));
        }
        let Some(chain) = self.chain(mono)? else {
            return Ok((BigInt::zero(), None));
        };
        let flats = self.m.flats();
        let top = flats.len() - 1;
        let k = chain.flats.len();
        let mut above = chain.d_top as i64;
        let mut value = if (r - k).is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        for m in (0..k).rev() {
            let (i, d) = chain.flats[m];
            let a = r as i64 - flats[i].rank as i64 - above;
            if a < 0 || a > d as i64 - 1 {
                return Ok((BigInt::zero(), None));
            }
            let next = if m + 1 < k { chain.flats[m + 1].0 } else { top };
            value *= binomial((d - 1) as usize, a as usize);
            value *= self.interval_mu(i, next, a as usize);
            above += d as i64;
        }
        Ok((value, None))
    }

    /// `deg(ψ_{F_1}^- ⋯ ψ_{F_r}^-)` by the union-rank criterion.
    pub fn deg_psi_minus_product(&self, flats: &[Subset]) -> Result<BigInt> {
        let r = self.r();
        if flats.len() != r {
            return Err(Error::invalid(format!(
                "expected {r} flats, got {}",
                flats.len()
            )));
        }
        if r > 24 {
            return Err(Error::GuardExceeded {
                what: "enumerate subcollections of psi classes",
                size: 1u128 << r,
                cap: 1 << 24,
            });
        }
        for &f in flats {
            self.m.flat(f)?;
            if f.is_empty() {
                return Err(Error::invalid("psi-minus flats must be nonempty"));
            }
        }
        for pick in 1u32..(1 << r) {
            let union = (0..r)
                .filter(|i| pick >> i & 1 == 1)
                .fold(Subset::EMPTY, |u, i| u.union(flats[i]));
            if self.m.rank_of(union) <= pick.count_ones() as usize {
                return Ok(BigInt::zero());
            }
        }
        Ok(BigInt::one())
    }
}

/// `deg(ψ_0^a ψ_∞^b)`: `μ^a(M)` when `a + b = r`, else 0.
pub fn deg_psi_powers(m: &Matroid, a: u32, b: u32) -> Result<BigInt> {
    Ok(DegreeEngine::new(m)?.deg_psi_powers(a, b))
}

/// Degree of one flag term as a product of interval factors.
pub fn deg_flag_mixed(m: &Matroid, term: &FlagPsiTerm) -> Result<BigInt> {
    DegreeEngine::new(m)?.deg_flag_mixed(term)
}

/// Rewrites `Π D_{F_i}^{d_i} D_E^{d_E}` as a signed sum of flag terms by
/// `D_F^2 = D_F(-ψ_F^- - ψ_F^+)` and `D_E = -ψ_∞`.
pub fn expand_monomial(m: &Matroid, mono: &DivisorMonomial) -> Result<PsiExpansion> {
    DegreeEngine::new(m)?.expand_monomial(mono)
}

/// Degree of a divisor monomial by the closed form
/// `(-1)^{r-k} Π C(d_i - 1, a_i^+) μ^{a_i^+}(M[F_i, F_{i+1}])`.
/// Monomials outside the top degree give 0; see [`deg_monomial_diag`].
pub fn deg_monomial(m: &Matroid, mono: &DivisorMonomial) -> Result<BigInt> {
    deg_monomial_diag(m, mono).map(|(v, _)| v)
}

/// Like [`deg_monomial`], also returning a warning for wrong-degree input.
pub fn deg_monomial_diag(m: &Matroid, mono: &DivisorMonomial) -> Result<(BigInt, Option<Warning>)> {
    DegreeEngine::new(m)?.deg_monomial(mono)
}

/// `deg(ψ_{F_1}^- ⋯ ψ_{F_r}^-)`: 1 when every `k` of the flats have a union
/// of rank above `k`, else 0.
pub fn deg_psi_minus_product(m: &Matroid, flats: &[Subset]) -> Result<BigInt> {
    DegreeEngine::new(m)?.deg_psi_minus_product(flats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> (Matroid, DivisorMonomial) {
        let m = Matroid::from_boolean(7).unwrap();
        let mono = DivisorMonomial::from_factors([
            (Subset::from_bits(0b11), 3),
            (Subset::from_bits(0b11111), 2),
            (Subset::from_bits(0b111111), 1),
        ]);
        (m, mono)
    }

    #[test]
    fn worked_example_closed_form() {
        let (m, mono) = worked_example();
        assert_eq!(deg_monomial(&m, &mono).unwrap(), BigInt::from(-4));
    }

    #[test]
    fn worked_example_expansion() {
        let (m, mono) = worked_example();
        let exp = expand_monomial(&m, &mono).unwrap();
        assert_eq!(exp.len(), 6);
        assert!(exp.terms.iter().all(|t| t.minus[3] == 0 && t.plus[0] == 0));
        let coeffs: Vec<i64> = exp
            .terms
            .iter()
            .map(|t| i64::try_from(&t.coefficient).unwrap())
            .collect();
        assert_eq!(coeffs, vec![-1, -1, -2, -2, -1, -1]);
        let total: BigInt = exp
            .terms
            .iter()
            .map(|t| deg_flag_mixed(&m, t).unwrap())
            .sum();
        assert_eq!(total, BigInt::from(-4));
        // The single surviving term is a_1^- = a_1^+ = a_2^- = 1.
        let live: Vec<_> = exp
            .terms
            .iter()
            .filter(|t| !deg_flag_mixed(&m, t).unwrap().is_zero())
            .collect();
        assert_eq!(live.len(), 1);
        assert_eq!(live[0].plus, vec![0, 1, 0, 0]);
        assert_eq!(live[0].minus, vec![1, 1, 0, 0]);
    }

    #[test]
    fn flag_mixed_interval_factors() {
        let m = Matroid::from_boolean(7).unwrap();
        let term = FlagPsiTerm {
            flag: vec![
                Subset::from_bits(0b11),
                Subset::from_bits(0b11111),
                Subset::from_bits(0b111111),
            ],
            plus: vec![0, 1, 0, 0],
            minus: vec![1, 1, 0, 0],
            coefficient: BigInt::one(),
        };
        assert_eq!(deg_flag_mixed(&m, &term).unwrap(), BigInt::from(2));
        assert_eq!(
            deg_flag_mixed(&m, &FlagPsiTerm::psi_powers(0, 6)).unwrap(),
            BigInt::one()
        );
        assert!(deg_flag_mixed(&m, &FlagPsiTerm::psi_powers(0, 5))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn psi_powers_are_mu() {
        let m = Matroid::from_boolean(7).unwrap();
        assert_eq!(deg_psi_powers(&m, 2, 4).unwrap(), BigInt::from(15));
        assert_eq!(deg_psi_powers(&m, 0, 6).unwrap(), BigInt::one());
        assert!(deg_psi_powers(&m, 2, 2).unwrap().is_zero());
        let u = Matroid::from_uniform(2, 3).unwrap();
        assert_eq!(deg_psi_powers(&u, 1, 0).unwrap(), BigInt::from(2));
    }

    #[test]
    fn top_power_and_complete_flags() {
        for m in [
            Matroid::from_boolean(4).unwrap(),
            Matroid::from_uniform(3, 5).unwrap(),
        ] {
            let r = m.rank() - 1;
            let top = DivisorMonomial::from_factors([(m.all(), r as u32)]);
            let expect = if r % 2 == 0 { 1 } else { -1 };
            assert_eq!(deg_monomial(&m, &top).unwrap(), BigInt::from(expect));
            for flag in m.complete_flags() {
                let mono = DivisorMonomial::from_factors(flag.into_iter().map(|f| (f, 1)));
                assert_eq!(deg_monomial(&m, &mono).unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn wrong_degree_warns() {
        let m = Matroid::from_boolean(3).unwrap();
        let mono = DivisorMonomial::from_factors([(Subset::singleton(0), 1)]);
        let (v, w) = deg_monomial_diag(&m, &mono).unwrap();
        assert!(v.is_zero());
        assert_eq!(w, Some(Warning::WrongDegree { expected: 2, found: 1 }));
        let bad = DivisorMonomial::from_factors([(Subset::EMPTY, 2)]);
        assert!(deg_monomial(&m, &bad).is_err());
    }

    #[test]
    fn incomparable_is_zero() {
        let m = Matroid::from_boolean(3).unwrap();
        let mono =
            DivisorMonomial::from_factors([(Subset::singleton(0), 1), (Subset::singleton(1), 1)]);
        assert!(deg_monomial(&m, &mono).unwrap().is_zero());
        assert!(expand_monomial(&m, &mono).unwrap().is_empty());
    }

    #[test]
    fn bes_examples() {
        let m = Matroid::from_uniform(3, 4).unwrap();
        let p = Subset::singleton(1);
        assert!(deg_psi_minus_product(&m, &[p, p]).unwrap().is_zero());
        // A rank-one flat fails the single-flat condition, and indeed ψ_F^- = 0.
        assert!(deg_psi_minus_product(&m, &[p, m.all()]).unwrap().is_zero());
        let line = Subset::from_bits(0b011);
        assert_eq!(deg_psi_minus_product(&m, &[line, m.all()]).unwrap(), BigInt::one());
        assert!(deg_psi_minus_product(&m, &[line, line]).unwrap().is_zero());
        assert_eq!(
            deg_psi_minus_product(&m, &[m.all(), m.all()]).unwrap(),
            BigInt::one()
        );
        assert!(deg_psi_minus_product(&m, &[p]).is_err());
    }

    #[test]
    fn loopy_rejected() {
        let m = Matroid::from_graph(2, &[(0, 0), (0, 1)]).unwrap();
        assert!(matches!(deg_psi_powers(&m, 0, 0), Err(Error::Loopy(_))));
    }
}
