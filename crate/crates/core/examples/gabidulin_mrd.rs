//! Build Gabidulin and twisted Gabidulin codes as m×n matrix codes and
//! certify the MRD property by enumeration.
//!
//! cargo run --release --example gabidulin_mrd

use twisted_gabidulin::cli::{generic_subspace, nonsquare_min};
use twisted_gabidulin::gf::{Fe, Field};
use twisted_gabidulin::linpoly::SubspaceSpec;
use twisted_gabidulin::rankcode::{CodeParams, RankCode, CODEWORD_LIMIT};

fn report(label: &str, code: &RankCode) -> twisted_gabidulin::Result<()> {
    let cert = code.is_mrd(CODEWORD_LIMIT)?;
    println!(
        "{label}: {}x{} over F_{}, dim {}, d = {:?}, MRD: {}",
        code.m(),
        code.n(),
        code.q(),
        code.dim(),
        cert.min_distance,
        cert.is_mrd
    );
    println!("  rank weights: {:?}", code.weight_distribution(CODEWORD_LIMIT)?);
    Ok(())
}

fn main() -> twisted_gabidulin::Result<()> {
    let f = Field::new(2, 1, 5, None)?;
    let spec = SubspaceSpec::new(&f, generic_subspace(&f, 4, 0)?, 1)?;
    let params = CodeParams::new(&f, 4, 2, 1, 0, Fe::ZERO)?;
    report("Gabidulin q=2 n=5 m=4 k=2", &RankCode::twisted_gabidulin(&params, &spec)?)?;

    let f3 = Field::new(3, 1, 4, None)?;
    let eta = nonsquare_min(&f3)?;
    let spec3 = SubspaceSpec::new(&f3, generic_subspace(&f3, 3, 0)?, 1)?;
    for h in 0..4 {
        let params = CodeParams::new(&f3, 3, 1, 1, h, eta)?;
        let code = RankCode::twisted_gabidulin(&params, &spec3)?;
        report(&format!("twisted q=3 n=4 m=3 k=1 h={h}"), &code)?;
    }

    // over F_2 every twist has norm 1, so it is rejected
    let bad = CodeParams::new(&f, 4, 2, 1, 0, f.generator());
    println!("q=2 twist: {}", bad.unwrap_err());
    Ok(())
}
