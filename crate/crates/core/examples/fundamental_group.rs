//! A presentation of the fundamental group of a finite category, coset
//! enumeration, and the comparison with `G/E`.
//!
//!     cargo run --release --example fundamental_group

use exitcat::category::build_category;
use exitcat::homotopy::{coset_enumeration, pi1_vs_quotient, Presentation, DEFAULT_MAX_COSETS};
use exitcat::lie::FlagPoset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Coset enumeration on its own: <a, b | a^2, b^3, (ab)^2> is S_3.
    let s3 = Presentation::new(
        vec!["a".into(), "b".into()],
        vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]],
    );
    println!(
        "<a, b | a^2, b^3, (ab)^2>: {}",
        coset_enumeration(&s3, 100).outcome
    );

    for (n, p, trivial) in [(2, 2, false), (2, 3, false), (2, 2, true)] {
        let flags = FlagPoset::new(n, p)?;
        let poset = if trivial {
            flags.gposet().with_trivial_links()
        } else {
            flags.gposet().clone()
        };
        let category = build_category(&poset)?;
        let report = pi1_vs_quotient(&category, &poset, flags.top(), DEFAULT_MAX_COSETS)?;
        let links = if trivial { "trivial" } else { "graded" };
        println!(
            "GL_{n}(F_{p}), {links} links: {} generators, {} relators, |E| = {}, |G/E| = {}, pi_1: {}, {}",
            report.generators,
            report.relators,
            report.e_order,
            report.quotient_order,
            report.enumeration.outcome,
            if report.passed() { "PASS" } else { "FAIL" }
        );
        println!("  abelianisation: {}", report.abelianization);
    }
    Ok(())
}
