//! Round-trips a chain complex through JSON and checks the long exact sequence
//! of a triple of action windows.
//!
//! cargo run --example complex_json

use lens_homology::chain::{homology, triple_exactness_check, GradedChainComplex};
use lens_homology::exact::Prime;
use lens_homology::morse_bott::{build_nonequivariant_complex, LensData, Profile};
use lens_homology::rational::{integer, ratio};

fn main() -> lens_homology::Result<()> {
    let lens = LensData::standard(1, Prime::new(2)?)?;
    let profile = Profile::from_critical_values(integer(1), &[ratio(3, 4)], integer(2))?;
    let c = build_nonequivariant_complex(&profile, &lens);
    let text = serde_json::to_string_pretty(&c.to_json()).expect("serializable");
    println!("{text}");

    let back = GradedChainComplex::from_json(serde_json::from_str(&text).expect("valid json"))?;
    assert_eq!(homology(&back), homology(&c));
    println!("homology {}", homology(&back));

    match triple_exactness_check(&c, &ratio(1, 4), &ratio(3, 2)) {
        Ok(t) => println!(
            "triple (1/4, 3/2): inclusion {:?}, projection {:?}, connecting {:?}",
            t.inclusion, t.projection, t.connecting
        ),
        Err(e) => println!("triple check failed: {e}"),
    }
    Ok(())
}
