//! Integral homology of lens spaces and what field coefficients see of it.
//!
//! cargo run --example lens_spaces

use lens_homology::chain::Coefficients;
use lens_homology::exact::Prime;
use lens_homology::morse_bott::LensData;
use lens_homology::oracles::{lens_homology, prequantize};

fn main() -> lens_homology::Result<()> {
    for (n, k, weights) in [(1, 2, vec![1]), (2, 3, vec![1, 2]), (3, 5, vec![1, 2, 3])] {
        let lens = LensData::new(Prime::new(k)?, weights)?;
        let integral = lens_homology(&lens, Coefficients::Integer);
        println!("L^{}({}; {:?})", 2 * n - 1, k, lens.weights());
        println!("  over Z:     {integral}");
        for p in [2, 3, 5] {
            let p = Prime::new(p)?;
            println!("  over F_{p}:   {:?}", integral.field_ranks(p));
        }
        let field = lens_homology(&lens, Coefficients::Field { modulus: lens.k() });
        println!("  prequantization bundle over F_{k}: {:?}", prequantize(&field).ranks());
    }
    Ok(())
}
