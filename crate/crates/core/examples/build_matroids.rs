// Building matroids from families, graphs, matrices and flat lists, and
// taking minors.

use chow_engine::{catalog, Field, Matroid, Subset};

fn main() -> chow_engine::Result<()> {
    let u23 = Matroid::from_uniform(2, 3)?;
    println!("U(2,3): {} flats, rank {}", u23.flats().len(), u23.rank());

    let triangle = Matroid::from_graph(3, &[(0, 1), (1, 2), (0, 2)])?;
    assert!(triangle.same_lattice(&u23));

    let k4 = catalog::load("k4")?;
    println!("K4: {} proper flats", k4.proper_flats().count());
    assert_eq!(k4.proper_flats().count(), 13);

    // The Fano plane: all nonzero vectors of GF(2)^3 as columns.
    let fano = Matroid::from_matrix(
        3,
        7,
        &[1, 0, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1],
        Field::Prime(2),
    )?;
    println!("Fano: {} lines", fano.flats_of_rank(2).count());
    assert_eq!(fano.flats_of_rank(2).count(), 7);

    let from_file = Matroid::from_json(r#"{"ground_set": 3, "flats": [[], [0], [1], [2], [0, 1, 2]]}"#)?;
    assert!(from_file.same_lattice(&u23));

    let bad = Matroid::from_json(r#"{"ground_set": 3, "flats": [[], [0], [1], [0, 1, 2]]}"#);
    println!("invalid lattice: {}", bad.unwrap_err());

    let b7 = Matroid::from_boolean(7)?;
    let f = Subset::from_elements(7, [0, 1])?;
    let g = Subset::from_elements(7, [0, 1, 2, 3, 4])?;
    let minor = b7.interval_minor(f, g)?;
    println!("B7[{{0,1}}, {{0,1,2,3,4}}] is Boolean on {} elements", minor.n());
    assert!(minor.is_boolean() && minor.n() == 3);

    let u34 = Matroid::from_uniform(3, 4)?;
    let contracted = u34.contract(Subset::singleton(0))?;
    assert!(contracted.same_lattice(&Matroid::from_uniform(2, 3)?));
    println!("U(3,4)/0 = U(2,3): {}", m_json(&contracted));
    Ok(())
}

fn m_json(m: &Matroid) -> String {
    m.to_json()
}
