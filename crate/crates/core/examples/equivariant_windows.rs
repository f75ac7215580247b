//! Builds the quotient complex of a lens action over the integers and reads off
//! the torsion in a few action windows.
//!
//! cargo run --example equivariant_windows

use lens_homology::chain::{homology, Coefficients};
use lens_homology::exact::Prime;
use lens_homology::morse_bott::{build_equivariant_complex, critical_data, LensData, Profile};
use lens_homology::rational::{format_rational, integer, ratio};

fn main() -> lens_homology::Result<()> {
    let lens = LensData::new(Prime::new(3)?, vec![1, 2])?;
    let profile = Profile::from_critical_values(integer(1), &[ratio(3, 4), ratio(7, 4)], integer(3))?;

    println!("critical strata:");
    for s in critical_data(&profile, &lens) {
        println!("  {:?} (base degree {}) at action {}", s.kind, s.base_index, format_rational(&s.value));
    }

    let eq = build_equivariant_complex(&profile, &lens, Coefficients::Integer)?;
    for (a, b) in [(ratio(1, 2), integer(1)), (ratio(1, 2), integer(2)), (integer(1), integer(2)), (ratio(1, 10), ratio(29, 10))] {
        let h = homology(&eq.window(&a, &b)?);
        println!("window ({}, {}]: {h}", format_rational(&a), format_rational(&b));
    }

    let f3 = build_equivariant_complex(&profile, &lens, Coefficients::Field { modulus: lens.k() })?;
    let h = homology(&f3.window(&ratio(1, 2), &integer(1))?);
    println!("window (1/2, 1] over F_3: {:?}", h.ranks());
    Ok(())
}
