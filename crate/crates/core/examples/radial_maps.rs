//! A radial contactomorphism of the prequantization space: its translated points,
//! their actions, the induced step profile, and how it interacts with the lens action.
//!
//! cargo run --example radial_maps

use lens_homology::contact_geo::{
    conformal_defect, critical_values_f64, equivariance_sweep, induced_profile, translated_points, BasePoint, Embedding,
    RadialContactMap, SmoothstepProfile,
};
use lens_homology::exact::Prime;
use lens_homology::morse_bott::LensData;

fn main() -> lens_homology::Result<()> {
    let map = RadialContactMap::new(1.0, 2, SmoothstepProfile::new(-2.5, 0.1)?)?;
    for p in translated_points(&map) {
        println!("circle j = {}: s = {:.6}, action {:.6}{}", p.j, p.s, p.action, if p.degenerate { " (degenerate)" } else { "" });
    }
    let profile = induced_profile(&map)?;
    println!("induced critical values {:?}", critical_values_f64(&profile));

    let q = BasePoint::new(vec![0.2, -0.1], vec![0.15, 0.3], 0.4);
    for h in [1e-2, 1e-3, 1e-4] {
        println!("conformal defect at h = {h:.0e}: {:.3e}", conformal_defect(&map, &q, h));
    }

    let lens = LensData::new(Prime::new(5)?, vec![1, 2])?;
    for emb in [Embedding::Sigma, Embedding::Bhupal] {
        let r = equivariance_sweep(&map, emb, &lens, 200, 0, 1e-9);
        println!("{} graph commutes with the action: {} (max residual {:.3e})", emb.name(), r.pass, r.max_residual);
    }
    Ok(())
}
