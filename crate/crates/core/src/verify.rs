//! Verification suites that compare independent computations.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::charpoly::{deletion_contraction, via_mobius, whitney, CharPoly};
use crate::chow::{
    psi_infinity, psi_zero, DegreeEngine, DivisorCombination, DivisorMonomial, PsiExpansion,
};
use crate::error::{Error, Result};
use crate::json_int;
use crate::matroid::Matroid;
use crate::oracle::{fy_basis, pairing_matrix, ChowPoly, Oracle, PairingCertificate};
use crate::subset::Subset;

/// Exhaustive degree checks run up to this many monomials.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000;
/// Samples drawn when the exhaustive count is too large.
pub const DEFAULT_SAMPLES: usize = 1_000;

/// `Σ c · deg` over the terms of an expansion, one interval factor at a time.
pub fn expansion_degree(engine: &DegreeEngine, expansion: &PsiExpansion) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for t in &expansion.terms {
        total += engine.deg_flag_mixed(t)?;
    }
    Ok(total)
}

/// Divisors that may appear in a top-degree monomial: proper flats and `E`.
fn divisor_flats(m: &Matroid) -> Vec<Subset> {
    m.proper_flats()
        .map(|f| f.members)
        .chain(std::iter::once(m.all()))
        .collect()
}

fn monomial_from(picks: &[Subset]) -> DivisorMonomial {
    DivisorMonomial::from_factors(picks.iter().map(|&f| (f, 1)))
}

/// Number of degree-`r` monomials in the divisors `D_F` (`F` proper or `E`).
pub fn top_monomial_count(m: &Matroid) -> u128 {
    let p = divisor_flats(m).len();
    let r = m.rank() - 1;
    use num_traits::ToPrimitive;
    crate::binomial(p + r - 1, r).to_u128().unwrap_or(u128::MAX)
}

/// Every degree-`r` monomial in the divisors.
pub fn all_top_monomials(m: &Matroid) -> Vec<DivisorMonomial> {
    let flats = divisor_flats(m);
    let r = m.rank() - 1;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(flats: &[Subset], start: usize, r: usize, cur: &mut Vec<Subset>, out: &mut Vec<DivisorMonomial>) {
        if cur.len() == r {
            out.push(monomial_from(cur));
            return;
        }
        for i in start..flats.len() {
            cur.push(flats[i]);
            go(flats, i, r, cur, out);
            cur.pop();
        }
    }
    go(&flats, 0, r, &mut cur, &mut out);
    out
}

/// `count` seeded monomials of degree `r`: half uniform over all divisor
/// multisets, half supported on a random chain.
pub fn sample_top_monomials(m: &Matroid, count: usize, seed: u64) -> Vec<DivisorMonomial> {
    let flats = divisor_flats(m);
    let r = m.rank() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let mut picks: Vec<Subset> = Vec::with_capacity(r);
            for _ in 0..r {
                let f = if i % 2 == 0 {
                    flats[rng.gen_range(0..flats.len())]
                } else {
                    let ok: Vec<Subset> = flats
                        .iter()
                        .copied()
                        .filter(|f| picks.iter().all(|p| p.comparable(*f)))
                        .collect();
                    *ok.choose(&mut rng).expect("E is comparable with everything")
                };
                picks.push(f);
            }
            monomial_from(&picks)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub monomial: String,
    pub closed_form: BigInt,
    pub expansion: BigInt,
    pub oracle: Option<BigInt>,
}

impl DegreeCheck {
    pub fn agrees(&self) -> bool {
        self.closed_form == self.expansion
            && self.oracle.as_ref().is_none_or(|o| *o == self.closed_form)
    }
}

#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub checked: usize,
    pub agreements: usize,
    pub oracle_used: bool,
    pub mismatches: Vec<DegreeCheck>,
}

impl DegreeReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "exhaustive": self.exhaustive,
            "seed": self.seed,
            "checked": self.checked,
            "agreements": self.agreements,
            "oracle": self.oracle_used,
            "mismatches": self.mismatches.iter().map(|c| json!({
                "monomial": c.monomial,
                "closed_form": json_int(&c.closed_form),
                "expansion": json_int(&c.expansion),
                "oracle": c.oracle.as_ref().map(json_int),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Closed form against the flag expansion and, when `with_oracle`, the
/// quotient-ring oracle. `samples = None` is exhaustive up to
/// [`EXHAUSTIVE_LIMIT`] monomials and samples [`DEFAULT_SAMPLES`] beyond.
pub fn verify_degrees(
    m: &Matroid,
    samples: Option<usize>,
    seed: u64,
    with_oracle: bool,
) -> Result<DegreeReport> {
    let engine = DegreeEngine::new(m)?;
    let exhaustive = samples.is_none() && top_monomial_count(m) <= EXHAUSTIVE_LIMIT;
    let monomials = if exhaustive {
        all_top_monomials(m)
    } else {
        sample_top_monomials(m, samples.unwrap_or(DEFAULT_SAMPLES), seed)
    };
    let oracle = if with_oracle {
        let o = Oracle::new(m)?;
        o.piece(engine.r())?;
        Some(o)
    } else {
        None
    };
    let mut mismatches = Vec::new();
    for mono in &monomials {
        let check = DegreeCheck {
            monomial: mono.display(m).to_string(),
            closed_form: engine.deg_monomial(mono)?.0,
            expansion: expansion_degree(&engine, &engine.expand_monomial(mono)?)?,
            oracle: oracle.as_ref().map(|o| o.degree(mono)).transpose()?,
        };
        if !check.agrees() {
            mismatches.push(check);
        }
    }
    Ok(DegreeReport {
        exhaustive,
        seed: (!exhaustive).then_some(seed),
        checked: monomials.len(),
        agreements: monomials.len() - mismatches.len(),
        oracle_used: with_oracle,
        mismatches,
    })
}

#[derive(Debug, Clone)]
pub struct CharPolyReport {
    pub whitney: CharPoly,
    pub deletion_contraction: CharPoly,
    pub mobius: CharPoly,
    /// `(element, rule, holds)` for each deletion–contraction identity.
    pub recursion: Vec<(usize, &'static str, bool)>,
    pub simplification_invariant: Option<bool>,
}

impl CharPolyReport {
    pub fn methods_agree(&self) -> bool {
        self.whitney == self.deletion_contraction && self.whitney == self.mobius
    }

    pub fn passed(&self) -> bool {
        self.methods_agree()
            && self.recursion.iter().all(|r| r.2)
            && self.simplification_invariant != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "whitney": self.whitney.to_string(),
            "deletion_contraction": self.deletion_contraction.to_string(),
            "mobius": self.mobius.to_string(),
            "methods_agree": self.methods_agree(),
            "recursion_failures": self.recursion.iter().filter(|r| !r.2)
                .map(|r| json!({"element": r.0, "rule": r.1})).collect::<Vec<_>>(),
            "simplification_invariant": self.simplification_invariant,
        })
    }
}

/// Three χ implementations, the loop / coloop / deletion–contraction rules
/// at every element, and invariance under simplification.
pub fn verify_charpoly(m: &Matroid) -> Result<CharPolyReport> {
    let chi = whitney(m);
    let loops = m.loops();
    let coloops = m.coloops();
    let mut recursion = Vec::new();
    for e in 0..m.n() {
        let deleted = whitney(&m.delete_element(e)?);
        let (rule, holds) = if loops.contains(e) {
            ("loop", chi.is_zero())
        } else if coloops.contains(e) {
            ("coloop", chi == deleted.times_lambda_minus_one())
        } else {
            let contracted = whitney(&m.contract_element(e)?);
            ("deletion-contraction", chi == &deleted - &contracted)
        };
        recursion.push((e, rule, holds));
    }
    let simplification_invariant = if m.is_loopless() {
        Some(whitney(&m.simplify()?) == chi)
    } else {
        None
    };
    Ok(CharPolyReport {
        deletion_contraction: deletion_contraction(m),
        mobius: via_mobius(m),
        whitney: chi,
        recursion,
        simplification_invariant,
    })
}

/// A random vector matroid: up to `max_rank` rows, 3..=7 columns, entries
/// in `GF(2)` or `GF(3)`.
pub fn random_matrix_matroid(rng: &mut ChaCha8Rng, max_rank: usize) -> Result<Matroid> {
    let p: u64 = if rng.gen_bool(0.5) { 2 } else { 3 };
    let rows = rng.gen_range(1..=max_rank);
    let cols = rng.gen_range(3..=7);
    let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(0..p as i64)).collect();
    Matroid::from_matrix(rows, cols, &entries, crate::Field::Prime(p))
}

#[derive(Debug, Clone)]
pub struct PoincareReport {
    pub certificates: Vec<PairingCertificate>,
    /// `(k, |basis_k|, oracle rank of A^k or None if refused, |basis_{r-k}|)`.
    pub ranks: Vec<(usize, usize, Option<usize>, usize)>,
}

impl PoincareReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| {
            c.unimodular() && c.triangular && c.diag_sign_matches && c.spot_check_mismatches == 0
        }) && self
            .ranks
            .iter()
            .all(|&(_, b, o, d)| b == d && o.is_none_or(|o| o == b))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "certificates": self.certificates.iter().map(PairingCertificate::to_json).collect::<Vec<_>>(),
            "ranks": self.ranks.iter().map(|&(k, b, o, d)| json!({
                "k": k, "basis": b, "oracle_rank": o, "complementary_basis": d,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Pairing certificates for one `k` or every `k ≤ r`, with basis sizes
/// compared to oracle ranks.
pub fn verify_pd(m: &Matroid, k: Option<usize>) -> Result<PoincareReport> {
    m.require_chow()?;
    let r = m.rank() - 1;
    let ks: Vec<usize> = match k {
        Some(k) if k > r => return Err(Error::invalid(format!("k = {k} exceeds r = {r}"))),
        Some(k) => vec![k],
        None => (0..=r).collect(),
    };
    let oracle = Oracle::new(m)?;
    let mut certificates = Vec::new();
    let mut ranks = Vec::new();
    for k in ks {
        certificates.push(pairing_matrix(m, k)?);
        let basis = fy_basis(m, k)?.len();
        let dual = fy_basis(m, r - k)?.len();
        let rank = match oracle.piece(k) {
            Ok(p) => Some(p.rank()),
            Err(Error::GuardExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        ranks.push((k, basis, rank, dual));
    }
    Ok(PoincareReport {
        certificates,
        ranks,
    })
}

#[derive(Debug, Clone)]
pub struct SignReport {
    pub complete_flags: usize,
    pub complete_flag_failures: Vec<String>,
    pub top_power: BigInt,
    pub expected_top_power: BigInt,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.complete_flag_failures.is_empty() && self.top_power == self.expected_top_power
    }

    pub fn to_json(&self) -> Value {
        json!({
            "complete_flags": self.complete_flags,
            "complete_flag_failures": self.complete_flag_failures,
            "top_power": json_int(&self.top_power),
            "expected_top_power": json_int(&self.expected_top_power),
        })
    }
}

/// Every complete flag has degree 1 and `deg(D_E^r) = (-1)^r`.
pub fn verify_signs(m: &Matroid) -> Result<SignReport> {
    let engine = DegreeEngine::new(m)?;
    let r = engine.r();
    let flags = m.complete_flags();
    let mut failures = Vec::new();
    for flag in &flags {
        let mono = DivisorMonomial::from_factors(flag.iter().map(|&f| (f, 1)));
        if !engine.deg_monomial(&mono)?.0.is_one() {
            failures.push(mono.display(m).to_string());
        }
    }
    let top = DivisorMonomial::from_factors([(m.all(), r as u32)]);
    Ok(SignReport {
        complete_flags: flags.len(),
        complete_flag_failures: failures,
        top_power: engine.deg_monomial(&top)?.0,
        expected_top_power: if r % 2 == 0 { BigInt::one() } else { -BigInt::one() },
    })
}

#[derive(Debug, Clone)]
pub struct PsiPowerReport {
    /// `(a, b, fast path, μ^a, oracle)` for each `a + b = r`.
    pub rows: Vec<(usize, usize, BigInt, BigInt, Option<BigInt>)>,
}

impl PsiPowerReport {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|(_, _, d, mu, o)| d == mu && o.as_ref().is_none_or(|o| o == d))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|(a, b, d, mu, o)| {
                    json!({"a": a, "b": b, "degree": json_int(d), "mu": json_int(mu),
                           "oracle": o.as_ref().map(json_int)})
                })
                .collect(),
        )
    }
}

/// `deg(ψ_0^a ψ_∞^b) = μ^a` against the oracle on the expanded product.
pub fn verify_psi_powers(m: &Matroid, with_oracle: bool) -> Result<PsiPowerReport> {
    let engine = DegreeEngine::new(m)?;
    let r = engine.r();
    let mu = m.mu_vector()?;
    let oracle = if with_oracle { Some(Oracle::new(m)?) } else { None };
    let (p0, pinf) = (psi_zero(m)?, psi_infinity(m)?);
    let mut rows = Vec::new();
    for a in 0..=r {
        let b = r - a;
        let fast = engine.deg_psi_powers(a as u32, b as u32);
        let odeg = match &oracle {
            Some(o) => {
                let mut factors: Vec<DivisorCombination> = vec![p0.clone(); a];
                factors.extend(std::iter::repeat_n(pinf.clone(), b));
                Some(o.degree_poly(&ChowPoly::product(&factors))?)
            }
            None => None,
        };
        rows.push((a, b, fast, mu[a].clone(), odeg));
    }
    Ok(PsiPowerReport { rows })
}

/// Everything above, for `verify --all`.
#[derive(Debug, Clone)]
pub struct FullReport {
    pub charpoly: CharPolyReport,
    pub psi_powers: PsiPowerReport,
    pub signs: SignReport,
    pub degrees: DegreeReport,
    pub poincare: PoincareReport,
}

impl FullReport {
    pub fn passed(&self) -> bool {
        self.charpoly.passed()
            && self.psi_powers.passed()
            && self.signs.passed()
            && self.degrees.passed()
            && self.poincare.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "charpoly": self.charpoly.to_json(),
            "psi_powers": self.psi_powers.to_json(),
            "signs": self.signs.to_json(),
            "degrees": self.degrees.to_json(),
            "poincare": self.poincare.to_json(),
        })
    }
}

pub fn verify_all(m: &Matroid, samples: Option<usize>, seed: u64) -> Result<FullReport> {
    Ok(FullReport {
        charpoly: verify_charpoly(m)?,
        psi_powers: verify_psi_powers(m, true)?,
        signs: verify_signs(m)?,
        degrees: verify_degrees(m, samples, seed, true)?,
        poincare: verify_pd(m, None)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_enumeration_agree() {
        let m = Matroid::from_uniform(3, 4).unwrap();
        assert_eq!(all_top_monomials(&m).len() as u128, top_monomial_count(&m));
        let s = sample_top_monomials(&m, 10, 3);
        assert_eq!(s, sample_top_monomials(&m, 10, 3));
        assert!(s.iter().all(|x| x.degree() == 2));
    }

    #[test]
    fn small_suites_pass() {
        let m = Matroid::from_uniform(3, 5).unwrap();
        let all = verify_all(&m, Some(50), 7).unwrap();
        assert!(all.passed(), "{}", all.to_json());
        assert_eq!(all.degrees.checked, 50);
    }

    #[test]
    fn charpoly_on_loopy_matrix() {
        let m = Matroid::from_matrix(2, 3, &[1, 0, 0, 0, 1, 0], crate::Field::Prime(2)).unwrap();
        let rep = verify_charpoly(&m).unwrap();
        assert!(rep.whitney.is_zero());
        assert!(rep.passed());
        assert_eq!(rep.simplification_invariant, None);
    }
}
