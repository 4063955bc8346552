//! Poincaré pairing matrices between `A^k` and `A^{r-k}` on the monomial
//! basis, with unimodularity and triangularity certificates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use super::fy::fy_basis;
use super::graded::{Oracle, DEFAULT_MONOMIAL_CAP};
use super::linalg::bareiss_det;
use crate::chow::DegreeEngine;
use crate::error::{Error, Result};
use crate::json_int;
use crate::matroid::Matroid;

#[derive(Debug, Clone)]
pub struct PairingOptions {
    /// Fraction of entries re-derived by the oracle.
    pub spot_fraction: f64,
    pub seed: u64,
    pub monomial_cap: u128,
}

impl Default for PairingOptions {
    fn default() -> Self {
        PairingOptions {
            spot_fraction: 0.1,
            seed: 0,
            monomial_cap: DEFAULT_MONOMIAL_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingCertificate {
    pub k: usize,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub matrix: Vec<Vec<BigInt>>,
    pub det: BigInt,
    pub triangular: bool,
    pub diag: Vec<BigInt>,
    /// Whether each diagonal entry equals `(-1)^{r-ℓ+1}`.
    pub diag_sign_matches: bool,
    pub spot_checks: usize,
    pub spot_check_mismatches: usize,
    /// Set when the oracle could not run (guard refusal).
    pub spot_check_skipped: Option<String>,
}

impl PairingCertificate {
    pub fn unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    /// Unimodular but not triangular contradicts the proof's ordering
    /// argument without contradicting duality.
    pub fn anomaly(&self) -> bool {
        self.unimodular() && !self.triangular
    }

    pub fn to_json(&self) -> Value {
        let ints = |v: &[BigInt]| Value::Array(v.iter().map(json_int).collect());
        serde_json::json!({
            "k": self.k,
            "rows": self.rows,
            "columns": self.columns,
            "matrix": self.matrix.iter().map(|r| ints(r)).collect::<Vec<_>>(),
            "det": json_int(&self.det),
            "triangular": self.triangular,
            "diag": ints(&self.diag),
            "diag_sign_matches": self.diag_sign_matches,
            "anomaly": self.anomaly(),
            "spot_checks": self.spot_checks,
            "spot_check_mismatches": self.spot_check_mismatches,
            "spot_check_skipped": self.spot_check_skipped,
        })
    }
}

impl Serialize for PairingCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// The pairing matrix with default options.
pub fn pairing_matrix(m: &Matroid, k: usize) -> Result<PairingCertificate> {
    pairing_matrix_with(m, k, &PairingOptions::default())
}

pub fn pairing_matrix_with(
    m: &Matroid,
    k: usize,
    opts: &PairingOptions,
) -> Result<PairingCertificate> {
    m.require_chow()?;
    let r = m.rank() - 1;
    if k > r {
        return Err(Error::invalid(format!("k = {k} exceeds r = {r}")));
    }
    let basis = fy_basis(m, k)?;
    let hats: Vec<_> = basis.iter().map(|b| b.hat(m)).collect();
    let engine = DegreeEngine::new(m)?;
    let n = basis.len();
    let mut matrix = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        let bi = basis[i].monomial();
        for j in 0..n {
            matrix[i][j] = engine.deg_monomial(&bi.times(&hats[j].monomial()))?.0;
        }
    }
    let triangular = (0..n).all(|i| (i + 1..n).all(|j| matrix[i][j].is_zero()));
    let diag: Vec<BigInt> = (0..n).map(|i| matrix[i][i].clone()).collect();
    let diag_sign_matches = basis.iter().zip(&diag).all(|(b, d)| {
        let l = b.flag.len();
        let expect = if (r + 1 - l).is_multiple_of(2) { 1 } else { -1 };
        *d == BigInt::from(expect)
    });
    let det = bareiss_det(&matrix);

    let mut spot_checks = 0;
    let mut spot_check_mismatches = 0;
    let mut spot_check_skipped = None;
    let total = n * n;
    let want = ((total as f64) * opts.spot_fraction).ceil() as usize;
    if want > 0 {
        let oracle = Oracle::with_cap(m, opts.monomial_cap)?;
        match oracle.piece(r) {
            Err(Error::GuardExceeded { size, cap, .. }) => {
                spot_check_skipped = Some(format!(
                    "oracle refused: {size} top-degree monomials exceed the cap {cap}"
                ));
            }
            Err(e) => return Err(e),
            Ok(_) => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                for idx in sample(&mut rng, total, want.min(total)).into_iter() {
                    let (i, j) = (idx / n, idx % n);
                    let mono = basis[i].monomial().times(&hats[j].monomial());
                    spot_checks += 1;
                    if oracle.degree(&mono)? != matrix[i][j] {
                        spot_check_mismatches += 1;
                    }
                }
            }
        }
    }

    Ok(PairingCertificate {
        k,
        rows: basis.iter().map(|b| b.display(m).to_string()).collect(),
        columns: hats.iter().map(|b| b.display(m).to_string()).collect(),
        matrix,
        det,
        triangular,
        diag,
        diag_sign_matches,
        spot_checks,
        spot_check_mismatches,
        spot_check_skipped,
    })
}

/// `(|det| = 1, certificate)`.
pub fn verify_poincare(m: &Matroid, k: usize) -> Result<(bool, PairingCertificate)> {
    let cert = pairing_matrix(m, k)?;
    Ok((cert.unimodular(), cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u23_degree_zero() {
        let m = Matroid::from_uniform(2, 3).unwrap();
        let cert = pairing_matrix(&m, 0).unwrap();
        assert_eq!(cert.matrix, vec![vec![BigInt::from(-1)]]);
        assert_eq!(cert.det, BigInt::from(-1));
        assert!(cert.triangular && cert.diag_sign_matches);
    }

    #[test]
    fn boolean4_all_degrees() {
        let m = Matroid::from_boolean(4).unwrap();
        for k in 0..=3 {
            let (ok, cert) = verify_poincare(&m, k).unwrap();
            assert!(ok, "k={k}: det {}", cert.det);
            assert!(cert.triangular, "k={k}");
            assert!(cert.diag_sign_matches);
            assert_eq!(cert.spot_check_mismatches, 0);
            assert!(cert.spot_checks > 0);
        }
        assert_eq!(pairing_matrix(&m, 1).unwrap().matrix.len(), 11);
    }
}
