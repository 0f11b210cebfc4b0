//! Runs the power-sum decoder next to the geometric one on every error of
//! weight at most t for a genus-0 code over GF(11).

use goppa::agcode::CodeConfig;
use goppa::decoder::cross_validate;
use goppa::harness::channel::{random_message, seeded_rng};
use goppa::secantgeom::error_patterns;
use goppa::{Curve, Field, GoppaCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::prime(11)?;
    let code = GoppaCode::build(CodeConfig::all_points(Curve::rational(&f), 6))?;
    let mut rng = seeded_rng(1);
    let mut words = Vec::new();
    for w in 0..=code.t() {
        for e in error_patterns(&f, code.n(), w) {
            let x = code.encode(&random_message(&code, &mut rng))?;
            words.push(x.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect());
        }
    }
    let report = cross_validate(&code, &words)?;
    println!(
        "{} words: {} corrected by both, {} rejected by both, {} disagreements",
        report.cases,
        report.both_corrected,
        report.both_uncorrected,
        report.disagreements.len()
    );
    Ok(())
}
