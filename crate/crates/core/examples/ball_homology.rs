//! Generating-function homology of a ball, computed from the Morse-Bott chain
//! complex and compared with the closed form, with and without the lens action.
//!
//! cargo run --example ball_homology -- 7/10 1

use lens_homology::exact::Prime;
use lens_homology::morse_bott::{stabilized_homology, LensData};
use lens_homology::oracles::ball_table;
use lens_homology::rational::{format_rational, parse_rational};

fn main() -> lens_homology::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let capacity = parse_rational(args.first().map_or("7/10", String::as_str))?;
    let a = parse_rational(args.get(1).map_or("1", String::as_str))?;
    let (n, k) = (2, Prime::new(3)?);
    let lens = LensData::standard(n, k)?;
    let max_degree = 16;

    for equivariant in [false, true] {
        let chain = stabilized_homology(&lens, &capacity, &a, max_degree, equivariant)?;
        let oracle = ball_table(n, k, &capacity, &a, max_degree, equivariant)?;
        println!(
            "{} B({}) window ({}, inf], n = {n}, k = {k}, nu = {}",
            if equivariant { "equivariant" } else { "plain" },
            format_rational(&capacity),
            format_rational(&a),
            chain.profile.nu()
        );
        for d in 1..=max_degree {
            let (c, o) = (chain.table.rank(d), oracle.rank(d));
            if c == 0 && o == 0 {
                continue;
            }
            let note = if chain.is_tower_sensitive(d) { " (tower-sensitive)" } else { "" };
            println!("  degree {d:>2}: chain {c}, closed form {o}{note}");
        }
    }
    Ok(())
}
