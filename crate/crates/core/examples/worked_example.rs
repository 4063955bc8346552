// The degree of D_{01}^3 D_{01234}^2 D_{012345} on the Boolean matroid of
// seven elements, by the closed form, by the flag expansion and by
// straightening with the defining relations.

use chow_engine::chow::{deg_monomial, parse_monomial, DegreeEngine};
use chow_engine::oracle::straighten_degree;
use chow_engine::Matroid;

fn main() -> chow_engine::Result<()> {
    let m = Matroid::from_boolean(7)?;
    let mono = parse_monomial(&m, "D{0,1}^3 * D{0,1,2,3,4}^2 * D{0,1,2,3,4,5}")?;

    let closed = deg_monomial(&m, &mono)?;
    println!("closed form:   {closed}");

    let engine = DegreeEngine::new(&m)?;
    let expansion = engine.expand_monomial(&mono)?;
    let mut total = num_bigint::BigInt::from(0);
    for term in &expansion.terms {
        let factors: Vec<String> = engine.interval_factors(term)?.iter().map(|f| f.to_string()).collect();
        let value = engine.deg_flag_mixed(term)?;
        println!("  {}  [{}] -> {value}", term.display(&m), factors.join(", "));
        total += value;
    }
    println!("expansion:     {total}");

    let straightened = straighten_degree(&m, &mono)?;
    println!("straightening: {straightened}");

    assert_eq!(closed, (-4).into());
    assert_eq!(total, closed);
    assert_eq!(straightened, closed);
    Ok(())
}
