//! Arithmetic in F_{q^n}: generators, Frobenius, norms, subfields and digit I/O.
//!
//! cargo run --example field_arithmetic

use twisted_gabidulin::gf::Field;

fn main() -> twisted_gabidulin::Result<()> {
    let f = Field::new(3, 1, 4, None)?;
    let d = f.description();
    println!("F_{}^{} with modulus {:?}", d.p, f.n(), d.modulus);

    let xi = f.generator();
    println!("generator ξ has digits {:?} and order {}", f.digits(xi), f.multiplicative_order(xi));

    let a = f.from_digits(&[1, 2, 0, 1])?;
    let b = f.pow(xi, 17);
    println!("a·b = {:?}", f.digits(f.mul(a, b)));
    println!("a^q = {:?}, a^(q^4) = a: {}", f.digits(f.frobenius(a, 1)), f.frobenius(a, 4) == a);
    println!("N(a) = {:?}, Tr(a) = {:?}", f.digits(f.relative_norm(a, 1)?), f.digits(f.trace(a)));
    println!("ξ is a square: {}", f.is_square(xi));

    for l in [1, 2, 4] {
        let sub = f.subfield_elements(l)?;
        println!("F_(3^{l}) has {} elements inside F_81", sub.len());
    }

    // F_4 as scalars: q = 4, n = 3
    let g = Field::new(2, 2, 3, None)?;
    println!("F_(4^3): q = {}, order = {}", g.q(), g.order());
    Ok(())
}
