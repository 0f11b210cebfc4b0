//! The Hermitian curve over GF(4): points, Riemann-Roch basis, and the
//! exact minimum distance of the genus-1 code with m = 4.

use goppa::agcode::CodeConfig;
use goppa::{Curve, Field, GoppaCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::with_default_modulus(2, 2)?;
    let curve = Curve::hermitian(&f)?;
    println!("{}: genus {}", curve, curve.genus());
    for p in curve.rational_points() {
        print!("{p} ");
    }
    println!();
    for mono in curve.rr_basis(6) {
        println!("  {:?} pole order {}", mono, curve.pole_order(&mono));
    }

    let code = GoppaCode::build(CodeConfig::all_points(curve, 4))?;
    let p = code.params();
    println!("n = {}, k = {}, k* = {}, designed d = {}", p.n, p.k, p.k_star, p.d);
    println!("true minimum distance {}", code.true_min_distance(1_000_000)?);
    Ok(())
}
