// Monomial bases and unimodular pairing matrices.

use chow_engine::oracle::{fy_basis, pairing_matrix};
use chow_engine::{catalog, Matroid};

fn main() -> chow_engine::Result<()> {
    let b3 = Matroid::from_boolean(3)?;
    for k in 0..=2 {
        let basis: Vec<String> = fy_basis(&b3, k)?.iter().map(|b| b.display(&b3).to_string()).collect();
        println!("B3 degree {k}: {}", basis.join(", "));
    }

    let fano = catalog::load("fano")?;
    let cert = pairing_matrix(&fano, 1)?;
    println!("Fano, k = 1: det {}, triangular {}", cert.det, cert.triangular);
    for (row, label) in cert.matrix.iter().zip(&cert.rows) {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
        println!("  {label:>10} | {}", cells.join(" "));
    }
    assert!(cert.unimodular() && cert.triangular);
    println!("{}", serde_json::to_string(&pairing_matrix(&Matroid::from_uniform(2, 3)?, 0)?).unwrap());
    Ok(())
}
