// Volume polynomials and the volumes of generalized permutahedra.

use chow_engine::volume::{
    eval_volume, is_submodular, minkowski_to_support, postnikov_volume, psi_minus_volume,
    volume_polynomial, MinkowskiWeights,
};
use chow_engine::{Matroid, Subset};

fn main() -> chow_engine::Result<()> {
    let b3 = Matroid::from_boolean(3)?;
    println!("Vol on B3: {}", volume_polynomial(&b3)?.display(&b3));

    // The Minkowski sum of the simplices on {0,1} and {0,2}.
    let mut y = MinkowskiWeights::new(3);
    y.set(Subset::from_elements(3, [0, 1])?, num_bigint::BigInt::from(1))?;
    y.set(Subset::from_elements(3, [0, 2])?, num_bigint::BigInt::from(1))?;
    let x = minkowski_to_support(3, &y)?;
    assert!(is_submodular(3, &x)?.0);
    let post = postnikov_volume(3, &y)?;
    let chow = eval_volume(&b3, &x)?;
    let psi = psi_minus_volume(&b3, &y)?;
    println!("Postnikov {post}, Chow ring {chow}, psi-minus {psi}");
    assert!(post == chow && chow == psi);

    let b5 = Matroid::from_boolean(5)?;
    let mut y = MinkowskiWeights::new(5);
    y.set(Subset::full(5), num_bigint::BigInt::from(1))?;
    let v = eval_volume(&b5, &minkowski_to_support(5, &y)?)?;
    println!("standard simplex in R^5: {v}");
    assert_eq!(v, postnikov_volume(5, &y)?);

    let u24 = Matroid::from_uniform(2, 4)?;
    println!("raw volume polynomial of U(2,4): {}", volume_polynomial(&u24)?.display(&u24));
    Ok(())
}
