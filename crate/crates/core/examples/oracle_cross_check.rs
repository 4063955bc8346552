// The quotient-ring oracle: graded ranks, degrees of random monomials and
// agreement with the closed form.

use chow_engine::chow::deg_monomial;
use chow_engine::oracle::{build_graded, Oracle};
use chow_engine::verify::sample_top_monomials;
use chow_engine::{catalog, Matroid};

fn main() -> chow_engine::Result<()> {
    let b4 = Matroid::from_boolean(4)?;
    let ranks: Vec<usize> = (0..=4)
        .map(|k| build_graded(&b4, k).map(|p| p.rank()))
        .collect::<chow_engine::Result<_>>()?;
    println!("B4 graded ranks: {ranks:?}");
    assert_eq!(ranks, vec![1, 11, 11, 1, 0]);

    for name in ["uniform_3_5", "k4", "fano", "boolean_4"] {
        let m = catalog::load(name)?;
        let oracle = Oracle::new(&m)?;
        let mut agree = 0;
        let samples = sample_top_monomials(&m, 200, 1);
        for mono in &samples {
            if oracle.degree(mono)? == deg_monomial(&m, mono)? {
                agree += 1;
            }
        }
        println!("{name:>12}: {agree}/{} agreements", samples.len());
        assert_eq!(agree, samples.len());
    }
    Ok(())
}
