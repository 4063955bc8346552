// Every verification suite on a handful of catalog matroids.

use chow_engine::catalog;
use chow_engine::verify::verify_all;

fn main() -> chow_engine::Result<()> {
    for name in ["boolean_3", "boolean_4", "uniform_2_4", "uniform_3_5", "k4", "fano", "non_fano"] {
        let m = catalog::load(name)?;
        let report = verify_all(&m, Some(100), 11)?;
        println!("{name:>12}: {}", if report.passed() { "PASS" } else { "FAIL" });
        assert!(report.passed(), "{}", report.to_json());
    }
    Ok(())
}
