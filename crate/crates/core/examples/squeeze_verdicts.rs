//! Squeeze verdicts for balls into balls, with and without a lens action.
//!
//! cargo run --example squeeze_verdicts

use lens_homology::exact::Prime;
use lens_homology::rational::{format_rational, ratio};
use lens_homology::squeeze::{equivariant_verdict, nonequivariant_verdict, obstructed_target};

fn main() -> lens_homology::Result<()> {
    let k = Prime::new(3)?;
    let pairs = [(ratio(4, 5), ratio(1, 10)), (ratio(4, 5), ratio(3, 5)), (ratio(13, 10), ratio(3, 10)), (ratio(5, 2), ratio(3, 2))];
    for n in [1, 2] {
        for (r, rp) in &pairs {
            let eq = equivariant_verdict(n, k, r, rp)?;
            let plain = nonequivariant_verdict(n, r, rp)?;
            println!(
                "n = {n}, B({}) -> B({}): equivariant {:?} (witness {:?}, degree {:?}), plain {:?}",
                format_rational(r),
                format_rational(rp),
                eq.status,
                eq.witness,
                eq.degree,
                plain.status
            );
        }
    }

    for r in [ratio(4, 5), ratio(3, 10), ratio(1, 7)] {
        let target = obstructed_target(&r);
        let v = equivariant_verdict(2, k, &r, &target)?;
        println!("B({}) cannot be squeezed into B({}): {:?}", format_rational(&r), format_rational(&target), v.status);
    }
    Ok(())
}
