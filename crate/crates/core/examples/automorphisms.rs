//! Exhaustive automorphism groups X ↦ A X^ρ B and the monomial-form check.
//!
//! cargo run --release --example automorphisms

use twisted_gabidulin::autgroup::{check_monomial_form, gl_order};
use twisted_gabidulin::cli::{aut_for, RunConfig};
use twisted_gabidulin::linpoly::LinearizedPoly;

fn main() -> twisted_gabidulin::Result<()> {
    let cfg = RunConfig::from_json(
        r#"{"field":{"p":2,"n":4},"params":{"m":3,"k":1},"subspace":"generic:0"}"#,
    )?;
    let inst = cfg.build()?;
    println!("|GL(3,2)| = {}, |GL(4,2)| = {}", gl_order(3, 2), gl_order(4, 2));

    let rep = aut_for(&inst)?;
    println!("{}", rep.summary());
    if let Some(t) = &rep.theta_predicates {
        println!("Θ has dimension {}, whole field: {}", t.dim, t.is_whole_field);
    }

    let basis = inst.basis();
    for t in rep.triples.iter().take(5) {
        let b = LinearizedPoly::from_matrix(&basis, &t.b);
        let form = check_monomial_form(&b, rep.ell);
        match form.u {
            Some(u) if form.is_monomial => println!("  ρ = {}, B ≡ a·X^(q^{u}) mod X^(q^{}) - X", t.rho, rep.ell),
            _ => println!("  ρ = {}, B is not monomial mod X^(q^{}) - X", t.rho, rep.ell),
        }
    }
    Ok(())
}
