//! Building the quotient category of a G-poset with links and the map from
//! the trivial-link category onto it.
//!
//!     cargo run --example build_category

use std::sync::Arc;

use exitcat::category::{build_category, quotient_functor};
use exitcat::lie::FlagPoset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let flags = FlagPoset::new(2, 2)?;
    let rbs = Arc::new(build_category(flags.gposet())?);
    let bs = Arc::new(build_category(&flags.gposet().with_trivial_links())?);

    println!("objects: {:?}", rbs.objects());
    println!("graded links, hom sizes: {:?}", rbs.hom_sizes());
    println!("trivial links, hom sizes: {:?}", bs.hom_sizes());
    let report = rbs.check_axioms();
    println!(
        "axioms: {} pairs and {} triples checked, {} violations",
        report.pairs_checked, report.triples_checked, report.total_violations
    );

    let q = quotient_functor(&bs, &rbs)?;
    println!(
        "quotient functor: full = {}, {}",
        q.is_full(),
        q.is_isomorphism()
    );

    // Every endomorphism of the empty flag composes like GL_2(F_2) itself.
    let top = flags.top();
    let endos: Vec<_> = rbs.hom_range(top, top).collect();
    println!("|End(empty flag)| = {}", endos.len());
    let (f, g) = (endos[1], endos[2]);
    println!("class {g} after class {f} is class {}", rbs.compose(g, f));

    let dump = serde_json::to_string(&rbs.to_json())?;
    println!(
        "canonical dump is {} bytes; opposite has {} morphisms",
        dump.len(),
        rbs.opposite()?.num_morphisms()
    );
    Ok(())
}
