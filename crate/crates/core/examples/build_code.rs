//! Builds a Reed-Solomon code from a config file and prints its matrices.
//!
//! `cargo run --example build_code [config.json]`

use goppa::harness::CodeConfigFile;
use goppa::GoppaCode;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/rational_gf7_m3.json")
    });
    let code = GoppaCode::build(CodeConfigFile::load(&path)?.to_code_config()?)?;
    let p = code.params();
    println!("{}", code.curve());
    println!("n = {}, k = {}, k* = {}, genus = {}, d = {}, t = {}", p.n, p.k, p.k_star, p.genus, p.d, p.t);
    println!("primal basis {:?}", code.primal_basis());
    println!("dual basis   {:?}", code.dual_basis());

    let show = |name: &str, m: &goppa::Matrix| {
        println!("{name}:");
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(|x| x.index().to_string()).collect();
            println!("  [{}]", row.join(" "));
        }
    };
    show("generator", code.generator());
    show("parity check", code.parity());
    let v: Vec<u32> = code.multipliers().iter().map(|x| x.index()).collect();
    println!("multipliers {v:?}");
    println!("G * H^T = 0: {}", code.generator().mul(&code.parity().transpose())?.is_zero());
    Ok(())
}
