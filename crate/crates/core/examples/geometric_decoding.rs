//! Corrupts a Hermitian codeword and decodes it by minimal secant span.

use goppa::agcode::CodeConfig;
use goppa::decoder::decode_geometric;
use goppa::harness::channel::{random_message, seeded_rng, ChannelModel};
use goppa::{Curve, Field, GoppaCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::with_default_modulus(3, 2)?;
    let code = GoppaCode::build(CodeConfig::all_points(Curve::hermitian(&f)?, 20))?;
    println!("n = {}, k = {}, d = {}, t = {}", code.n(), code.k(), code.d(), code.t());

    let mut rng = seeded_rng(7);
    for weight in 0..=code.t() + 1 {
        let x = code.encode(&random_message(&code, &mut rng))?;
        let (y, e) = ChannelModel::new(weight).corrupt(code.field(), &x, &mut rng);
        let r = decode_geometric(&code, &y)?;
        let truth: Vec<usize> = (0..code.n()).filter(|&i| !e[i].is_zero()).collect();
        println!(
            "weight {weight}: {:?}, support {:?} (true {truth:?}), restored {}",
            r.status,
            r.support,
            r.codeword.as_ref() == Some(&x)
        );
    }
    Ok(())
}
