//! Arithmetic in GF(9) built from the default modulus.

use goppa::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::with_default_modulus(3, 2)?;
    println!("GF({}) with modulus coefficients {:?} (constant term first)", f.order(), f.modulus());

    let a = f.from_coeffs(&[1, 2])?;
    let b = f.from_coeffs(&[0, 1])?;
    println!("a = {:?} (index {}), b = {:?} (index {})", f.coeffs(a), a.index(), f.coeffs(b), b.index());
    println!("a + b = {:?}", f.coeffs(f.add(a, b)));
    println!("a * b = {:?}", f.coeffs(f.mul(a, b)));
    println!("a / b = {:?}", f.coeffs(f.div(a, b)?));
    println!("a^9 = a: {}", f.pow(a, 9) == a);

    // multiplicative order of every nonzero element
    for x in f.nonzero() {
        let order = (1..f.order() as u64).find(|&k| f.pow(x, k) == f.one()).unwrap();
        print!("{}:{} ", x.index(), order);
    }
    println!();
    Ok(())
}
