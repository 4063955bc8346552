// Characteristic polynomials by three independent routes, and the
// unsigned coefficients of the reduced polynomial.

use chow_engine::charpoly::{deletion_contraction, via_mobius, whitney};
use chow_engine::{catalog, Matroid};

fn main() -> chow_engine::Result<()> {
    for name in ["boolean_5", "uniform_2_3", "k4", "fano", "non_fano", "k5_minus_edge"] {
        let m = catalog::load(name)?;
        let chi = whitney(&m);
        assert_eq!(chi, deletion_contraction(&m));
        assert_eq!(chi, via_mobius(&m));
        let mu: Vec<String> = m.mu_vector()?.iter().map(|c| c.to_string()).collect();
        println!("{name:>14}: chi = {chi}   chibar = {}   mu = ({})", m.reduced_char_poly()?, mu.join(", "));
    }
    let k4 = catalog::load("k4")?;
    assert_eq!(k4.reduced_char_poly()?.to_string(), "λ^2 - 5λ + 6");

    let b5 = Matroid::from_boolean(5)?;
    assert_eq!(b5.char_poly(), chow_engine::CharPoly::lambda_minus_one_pow(5));
    Ok(())
}
