//! Linearized polynomials, subspace polynomials θ_S and reduction to the
//! transversal Σ a_j X^{q^{sj}}.
//!
//! cargo run --example linearized_polys

use twisted_gabidulin::cli::generic_subspace;
use twisted_gabidulin::gf::Field;
use twisted_gabidulin::linpoly::{shift_support, LinearizedPoly, SubspaceSpec};

fn main() -> twisted_gabidulin::Result<()> {
    let f = Field::new(2, 1, 6, None)?;
    let xi = f.generator();
    let p = LinearizedPoly::new(&f, vec![xi, f.pow(xi, 5), f.pow(xi, 0), xi, xi, f.pow(xi, 9)]);
    let q = LinearizedPoly::monomial(&f, f.pow(xi, 3), 2);

    let x = f.pow(xi, 11);
    let pq = p.compose(&q)?;
    println!("(p∘q)(x) = p(q(x)): {}", pq.eval(x) == p.eval(q.eval(x)));

    let basis = f.power_basis();
    println!("matrix of q:\n{:?}", q.to_matrix(&basis).data());

    let spec = SubspaceSpec::new(&f, generic_subspace(&f, 3, 0)?, 1)?;
    let theta: Vec<u32> = spec.theta().iter().map(|c| c.index()).collect();
    println!("θ_S coefficients (by element index): {theta:?}");
    println!("θ_S vanishes on all {} elements of U_S", spec.elements().len());

    let red = spec.reduce(&p);
    let rep = LinearizedPoly::from_transversal(&f, &red, 1);
    let agree = spec.elements().iter().all(|&u| rep.eval(u) == p.eval(u));
    println!("p reduces to {} transversal terms; agrees on U_S: {agree}", red.len());

    let phi = LinearizedPoly::monomial(&f, xi, 0);
    for t in 0..3 {
        println!("support of φ(aX^(q^{t})) mod θ_S: {:?}", shift_support(&phi, &spec, 1, t)?);
    }
    Ok(())
}
