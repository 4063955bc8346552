// Psi classes as divisor combinations, powers of psi_0 and psi_infinity,
// and products of psi-minus classes.

use chow_engine::chow::{
    deg_psi_minus_product, deg_psi_powers, parse_flat, psi_infinity, psi_minus, psi_plus, psi_zero,
};
use chow_engine::Matroid;

fn main() -> chow_engine::Result<()> {
    let m = Matroid::from_uniform(2, 3)?;
    println!("U(2,3): psi_0 = {}", psi_zero(&m)?.display(&m));
    println!("U(2,3): psi_inf = {}", psi_infinity(&m)?.display(&m));
    let f = parse_flat(&m, "{0}")?;
    println!("U(2,3): psi-_{{0}} = {}", psi_minus(&m, f, 1)?.display(&m));
    println!("U(2,3): psi+_{{0}} = {}", psi_plus(&m, f, 1)?.display(&m));

    let b7 = Matroid::from_boolean(7)?;
    for a in 0..=6 {
        let d = deg_psi_powers(&b7, a, 6 - a)?;
        assert_eq!(d, chow_engine::binomial(6, a as usize));
        print!("{d} ");
    }
    println!("= deg(psi_0^a psi_inf^(6-a)) on B7");

    let u34 = Matroid::from_uniform(3, 4)?;
    for pair in [["{0}", "{0}"], ["{0,1}", "E"], ["{0}", "E"], ["{0,1}", "{0,2}"]] {
        let flats = pair
            .iter()
            .map(|t| parse_flat(&u34, t))
            .collect::<chow_engine::Result<Vec<_>>>()?;
        println!("U(3,4): deg(psi-_{} psi-_{}) = {}", pair[0], pair[1], deg_psi_minus_product(&u34, &flats)?);
    }
    Ok(())
}
