//! Exact computations in Chow rings of matroids.
//!
//! Elements are 0-based throughout: the ground set of an `n`-element matroid
//! is `{0, .., n-1}`.

pub mod catalog;
pub mod charpoly;
pub mod cli;
pub mod chow;
pub mod error;
pub mod matroid;
pub mod oracle;
pub mod subset;
pub mod verify;
pub mod volume;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

pub use charpoly::CharPoly;
pub use error::{Error, Result};
pub use matroid::{Field, Flat, GroundSet, Matroid};
pub use subset::Subset;

/// `C(n, k)` by Pascal's rule, exactly.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::default();
    }
    let k = k.min(n - k);
    let mut row = vec![BigInt::one(); k + 1];
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            if j < i {
                let prev = row[j - 1].clone();
                row[j] += prev;
            }
        }
    }
    row[k].clone()
}

/// Integers that fit in an `i64` as JSON numbers, larger ones as strings.
pub fn json_int(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(60, 30), BigInt::from(118264581564861424u64));
    }
}
