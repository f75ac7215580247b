//! Numerical checks that the product embeddings into the 1-jet space are contact,
//! with a Richardson profile of the finite-difference error.
//!
//! cargo run --example contact_embeddings

use lens_homology::contact_geo::{contact_sweep, random_product_points, richardson_profile, Embedding};

fn main() {
    for emb in [Embedding::Sigma, Embedding::Bhupal, Embedding::CorruptedSigma] {
        let r = contact_sweep(emb, 2, 500, 0, 1e-5, 1e-6);
        println!(
            "{:<16} max residual {:.3e}, lambda at worst point {:?}, {}",
            emb.name(),
            r.max_residual,
            r.worst.lambda,
            if r.pass { "contact" } else { "NOT contact" }
        );
    }

    let points = random_product_points(2, 100, 1);
    let prof = richardson_profile(Embedding::Sigma, &points, &[1e-3, 1e-4, 1e-5]);
    for (h, res) in prof.steps.iter().zip(&prof.max_residuals) {
        println!("h = {h:.0e}: max residual {res:.3e}");
    }
    println!("observed orders {:?}, C = {:.3}", prof.orders, prof.quadratic_constant);
}
