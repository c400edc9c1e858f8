//! Homology with coefficients in a functor: the one-object category of `Z/2`
//! with the sign action, against constant coefficients.
//!
//!     cargo run --example functor_homology

use std::sync::Arc;

use exitcat::category::build_category;
use exitcat::gposet::point;
use exitcat::group::{FinGroup, DEFAULT_MAX_ORDER};
use exitcat::homotopy::{functor_homology, CoefficientFunctor, Coefficients, DEFAULT_MAX_CHAINS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z2 = Arc::new(FinGroup::from_permutations(
        2,
        &[vec![1, 0]],
        DEFAULT_MAX_ORDER,
    )?);
    let bz2 = build_category(&point(&z2))?;

    let trivial = CoefficientFunctor::constant(&bz2, Coefficients::Integers);
    // Morphisms are ordered by representative, so the identity comes first.
    let sign = CoefficientFunctor {
        coefficients: Coefficients::Integers,
        dims: vec![1],
        matrices: vec![vec![1], vec![-1]],
    };
    let mod2 = CoefficientFunctor::constant(&bz2, Coefficients::Field(2));

    for (label, functor) in [
        ("Z", &trivial),
        ("Z with sign action", &sign),
        ("F_2", &mod2),
    ] {
        let homology = functor_homology(&bz2, functor, 3, DEFAULT_MAX_CHAINS)?;
        let shown: Vec<String> = homology.iter().map(ToString::to_string).collect();
        println!("H_*(Z/2; {label}): {}", shown.join(", "));
    }

    let broken = CoefficientFunctor {
        coefficients: Coefficients::Integers,
        dims: vec![1],
        matrices: vec![vec![1], vec![2]],
    };
    if let Err(e) = functor_homology(&bz2, &broken, 1, DEFAULT_MAX_CHAINS) {
        println!("rejected: {e}");
    }
    Ok(())
}
