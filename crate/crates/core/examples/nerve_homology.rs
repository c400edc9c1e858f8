//! Integral homology of the nerve of a finite category through Smith normal form.
//!
//!     cargo run --release --example nerve_homology

use exitcat::category::build_category;
use exitcat::homotopy::{nerve_chain_complex, smith_invariants, IntMatrix, DEFAULT_MAX_CHAINS};
use exitcat::lie::FlagPoset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = IntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let invariants: Vec<String> = smith_invariants(&m)
        .iter()
        .map(ToString::to_string)
        .collect();
    println!(
        "Smith invariants of a 3x3 example: {}",
        invariants.join(", ")
    );

    let flags = FlagPoset::new(2, 2)?;
    for (label, poset) in [
        ("graded links", flags.gposet().clone()),
        ("trivial links", flags.gposet().with_trivial_links()),
    ] {
        let category = build_category(&poset)?;
        let complex = nerve_chain_complex(&category, 2, DEFAULT_MAX_CHAINS)?;
        println!("GL_2(F_2), {label}: chain ranks {:?}", complex.ranks());
        println!(
            "  boundary squares to zero: {}",
            complex.check_boundary_squared().is_ok()
        );
        for h in complex.all_homology() {
            println!("  {h}");
        }
    }
    Ok(())
}
