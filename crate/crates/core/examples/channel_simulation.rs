//! Decoding success rate across error weights, with both decoders on a
//! genus-0 code.

use goppa::harness::experiment::{simulate, DecoderChoice, ExperimentSpec, Mode, DEFAULT_BUDGET};
use goppa::harness::CodeConfigFile;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/rational_gf11_m6.json");
    let spec = ExperimentSpec {
        code: CodeConfigFile::load(&path)?,
        weights: vec![0, 1, 2, 3, 4],
        trials: 500,
        seed: Some(42),
        mode: Mode::Sampled,
        budget: DEFAULT_BUDGET,
        decoder: DecoderChoice::Both,
    };
    let report = simulate(&spec)?;
    println!("rng {}, seed {:?}, t = {}", report.rng, report.seed, report.params.t);
    for w in &report.per_weight {
        println!(
            "weight {}: {}/{} restored, {} miscorrected, {} detected, agreement {:?}",
            w.weight, w.corrected_to_original, w.cases, w.miscorrected,
            w.detected_beyond_capacity, w.decoder_agreements
        );
    }
    Ok(())
}
