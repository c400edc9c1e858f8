//! The flag category of `GL_n(F_p)` against the orbit category on its
//! radical subgroups.
//!
//!     cargo run --release --example borel_tits -- 3 2

use exitcat::lie::{BorelTits, FlagPoset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cases: Vec<(usize, u32)> = match args.as_slice() {
        [n, p] => vec![(n.parse()?, p.parse()?)],
        _ => vec![(2, 2), (2, 3), (3, 2)],
    };
    for (n, p) in cases {
        let comparison = BorelTits::new(FlagPoset::new(n, p)?)?;
        let report = comparison.report();
        println!(
            "GL_{n}(F_{p}), |G| = {}, {} flags",
            report.group_order, report.flag_count
        );
        println!(
            "  hom-set equality checked on {} pairs: {:?}",
            report.pairs_checked,
            report.equation_one.is_ok()
        );
        println!("  Phi: {}", report.phi_isomorphism);
        println!("  square commutes: {}", report.square.is_ok());
        println!(
            "  normalisers of links are parabolics: {}",
            report.normalizer_failures.is_empty()
        );
        match report.radical_scan {
            Some(ok) => println!("  exhaustive radical scan matches the links: {ok}"),
            None => println!("  radical scan skipped at this order"),
        }
        println!(
            "  overall: {}",
            if report.passed() { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}
