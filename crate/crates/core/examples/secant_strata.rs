//! Labels syndromes by secant height and prints the census of the whole
//! syndrome space.

use goppa::agcode::CodeConfig;
use goppa::secantgeom::{secant_height, stratify_all, syndrome, DEFAULT_STRATA_BUDGET};
use goppa::{Curve, Field, GoppaCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::prime(7)?;
    let code = GoppaCode::build(CodeConfig::all_points(Curve::rational(&f), 3))?;

    let mut e = vec![f.zero(); code.n()];
    e[2] = f.from_int(5);
    let label = secant_height(&code, &syndrome(&code, &e)?, code.n());
    println!("single error at 2: h = {:?}, s = {:?}, {:?}, witnesses {:?}",
        label.h, label.s, label.stability, label.witnesses);

    e[5] = f.one();
    let label = secant_height(&code, &syndrome(&code, &e)?, code.n());
    println!("errors at 2 and 5: h = {:?}, {} witnesses", label.h, label.witnesses.len());

    let census = stratify_all(&code, DEFAULT_STRATA_BUDGET)?;
    let s = &census.summary;
    println!("{} syndromes, d = {}, t = {}", s.total, s.d, s.t);
    for st in &s.strata {
        println!("  h = {:?}  s = {:?}  {:?}  count {}  multi-witness {}",
            st.h_d, st.s, st.stability, st.count, st.multi_witness);
    }
    println!("unstable {}, semistable {}, stable {}", s.unstable, s.semistable, s.stable);
    Ok(())
}
