//! Pulling a generating function back along the lens rotation.
//!
//! cargo run --example generating_functions

use lens_homology::contact_geo::{pullback_generating_check, random_base_points, GeneratingFunction, PolynomialGf};
use lens_homology::exact::Prime;
use lens_homology::morse_bott::LensData;

fn report(name: &str, gf: &dyn GeneratingFunction, lens: &LensData) {
    let samples = random_base_points(lens.n(), 200, 3, 0.5);
    let r = pullback_generating_check(gf, lens, &samples, 1e-5, 1e-6);
    println!(
        "{name}: {} samples, max residual {:.3e}, degenerate fibers {}, {}",
        r.samples,
        r.max_residual,
        r.nondegeneracy_failures,
        if r.pass { "pass" } else { "fail" }
    );
}

fn main() -> lens_homology::Result<()> {
    report("invariant coupling, L^3(5; 1, 2)", &PolynomialGf::invariant_coupling(2), &LensData::new(Prime::new(5)?, vec![1, 2])?);
    report("fiber square, L^5(3; 1, 1, 2)", &PolynomialGf::fiber_square(3, 2), &LensData::new(Prime::new(3)?, vec![1, 1, 2])?);
    report("linear coupling, L^1(3; 1)", &PolynomialGf::linear_coupling(), &LensData::new(Prime::new(3)?, vec![1])?);
    Ok(())
}
