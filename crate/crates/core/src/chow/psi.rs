use super::DivisorCombination;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

fn proper(m: &Matroid) -> impl Iterator<Item = Subset> + '_ {
    m.proper_flats().map(|f| f.members)
}

fn check(m: &Matroid, f: Subset, e: usize) -> Result<()> {
    m.require_chow()?;
    m.check_element(e)?;
    m.flat(f).map(|_| ())
}

/// `ψ_F^- = Σ_{e ∈ G} D_G - Σ_{G ⊇ F} D_G`, both sums over proper flats.
pub fn psi_minus(m: &Matroid, f: Subset, e: usize) -> Result<DivisorCombination> {
    check(m, f, e)?;
    let mut c = DivisorCombination::new();
    for g in proper(m) {
        if g.contains(e) {
            c.add_term(g, 1);
        }
        if f.is_subset(g) {
            c.add_term(g, -1);
        }
    }
    Ok(c)
}

/// `ψ_F^+ = Σ_{e ∉ G} D_G - Σ_{G ⊆ F} D_G`, both sums over proper flats.
pub fn psi_plus(m: &Matroid, f: Subset, e: usize) -> Result<DivisorCombination> {
    check(m, f, e)?;
    let mut c = DivisorCombination::new();
    for g in proper(m) {
        if !g.contains(e) {
            c.add_term(g, 1);
        }
        if g.is_subset(f) {
            c.add_term(g, -1);
        }
    }
    Ok(c)
}

/// `ψ_0 = ψ_∅^+` with the least element as representative.
pub fn psi_zero(m: &Matroid) -> Result<DivisorCombination> {
    psi_plus(m, Subset::EMPTY, 0)
}

/// `ψ_∞ = ψ_E^- = -D_E` with the least element as representative.
pub fn psi_infinity(m: &Matroid) -> Result<DivisorCombination> {
    m.require_chow()?;
    psi_minus(m, m.all(), 0)
}

/// `ρ_S`, sending a combination over `M|_S` (in the restriction's own
/// coordinates) to `Σ c_G Σ_{G ⊆ G' ⊆ G ∪ S^c} D_{G'}` over proper flats of `M`.
pub fn rho(m: &Matroid, s: Subset, c: &DivisorCombination) -> Result<DivisorCombination> {
    m.require_chow()?;
    if s.is_empty() {
        return Err(Error::invalid("rho needs a nonempty subset"));
    }
    if !s.is_subset(m.all()) {
        return Err(Error::ElementOutOfRange {
            element: s.difference(m.all()).min().unwrap_or(0),
            size: m.n(),
        });
    }
    let restricted = m.restrict(s)?;
    let outside = m.all().difference(s);
    let mut out = DivisorCombination::new();
    for (g_local, coef) in c.terms() {
        let is_proper = restricted
            .flat(g_local)
            .is_ok_and(|f| f.members != restricted.all() && !f.members.is_empty());
        if !is_proper {
            return Err(Error::invalid(format!(
                "{} is not a proper flat of the restriction to {}",
                restricted.show(g_local),
                m.show(s)
            )));
        }
        let g = g_local.expand(s);
        let ceiling = g.union(outside);
        for h in proper(m) {
            if g.is_subset(h) && h.is_subset(ceiling) {
                out.add_term(h, coef.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn u23_examples() {
        let m = Matroid::from_uniform(2, 3).unwrap();
        let p = psi_minus(&m, m.all(), 1).unwrap();
        assert_eq!(p, DivisorCombination::generator(Subset::singleton(1)));
        let z = psi_zero(&m).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.coefficient(Subset::singleton(1)), BigInt::from(1));
        assert!(psi_minus(&m, m.all(), 3).is_err());
        assert!(psi_minus(&m, Subset::from_bits(0b11), 0).is_err());
    }

    #[test]
    fn representatives_differ_by_linear_relation() {
        let m = Matroid::from_boolean(4).unwrap();
        for f in m.flats() {
            for (e, g) in [(0, 1), (1, 3), (2, 0)] {
                let diff = &psi_minus(&m, f.members, e).unwrap()
                    - &psi_minus(&m, f.members, g).unwrap();
                let mut rel = DivisorCombination::new();
                for h in proper(&m) {
                    if h.contains(e) {
                        rel.add_term(h, 1);
                    }
                    if h.contains(g) {
                        rel.add_term(h, -1);
                    }
                }
                assert_eq!(diff, rel);
                let diff_plus = &psi_plus(&m, f.members, e).unwrap()
                    - &psi_plus(&m, f.members, g).unwrap();
                assert_eq!(diff_plus, rel.scaled(&BigInt::from(-1)));
            }
        }
    }

    #[test]
    fn rho_identities() {
        let m = Matroid::from_boolean(4).unwrap();
        // ρ_E is the identity on generators.
        for f in proper(&m) {
            let g = DivisorCombination::generator(f);
            assert_eq!(rho(&m, m.all(), &g).unwrap(), g);
        }
        // ρ_F(ψ_∞ of M|_F) = ψ_F^-.
        let f = Subset::from_bits(0b0111);
        let mf = m.restrict(f).unwrap();
        let image = rho(&m, f, &psi_infinity(&mf).unwrap()).unwrap();
        assert_eq!(image, psi_minus(&m, f, 0).unwrap());
        // ρ_S(ψ_0 of M|_S) = ψ_0 - Σ_{G ⊆ S^c} D_G.
        let s = Subset::from_bits(0b0101);
        let ms = m.restrict(s).unwrap();
        let image = rho(&m, s, &psi_zero(&ms).unwrap()).unwrap();
        let mut expect = psi_zero(&m).unwrap();
        for g in proper(&m) {
            if g.is_subset(m.all().difference(s)) {
                expect.add_term(g, -1);
            }
        }
        assert_eq!(image, expect);
        assert!(rho(&m, Subset::EMPTY, &DivisorCombination::new()).is_err());
    }
}
