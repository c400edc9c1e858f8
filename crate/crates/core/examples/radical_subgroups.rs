//! Exhaustive `p`-radical scans and the orbit category they span.
//!
//!     cargo run --example radical_subgroups

use std::sync::Arc;

use exitcat::group::{FinGroup, DEFAULT_MAX_ORDER};
use exitcat::lie::{
    exhaustive_radical_enumeration, orbit_category, radicals_match_flags, FlagPoset,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let flags = FlagPoset::new(2, 2)?;
    let radicals = exhaustive_radical_enumeration(flags.group(), 2)?;
    println!("GL_2(F_2): {} 2-radical subgroups", radicals.len());
    for u in radicals.members() {
        println!(
            "  order {}, normaliser order {}",
            u.order(),
            u.normalizer().order()
        );
    }
    println!(
        "they are exactly the graded links of the flags: {}",
        radicals_match_flags(&flags)?
    );
    let orbit = orbit_category(&radicals)?;
    println!("orbit category hom sizes: {:?}", orbit.hom_sizes());

    let s4 = Arc::new(FinGroup::from_permutations(
        4,
        &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]],
        DEFAULT_MAX_ORDER,
    )?);
    for p in [2, 3] {
        let radicals = exhaustive_radical_enumeration(&s4, p)?;
        let orders: Vec<usize> = radicals.members().iter().map(|u| u.order()).collect();
        println!("S_4, p = {p}: radical subgroup orders {orders:?}");
    }
    Ok(())
}
