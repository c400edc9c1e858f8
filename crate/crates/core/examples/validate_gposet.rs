//! Validating a G-poset with links: the action laws, then the link
//! conditions, and what a single corrupted entry looks like in the reports.
//!
//!     cargo run --example validate_gposet

use exitcat::gposet::GPoset;
use exitcat::group::Subgroup;
use exitcat::lie::FlagPoset;

fn show(label: &str, poset: &GPoset) {
    let action = poset.validate_action();
    let links = poset.validate_links();
    println!(
        "{label}: action {}, links {}",
        verdict(action.passed()),
        verdict(links.passed())
    );
    for v in action.violations.iter().take(3) {
        println!("  action: {v}");
    }
    for v in links.violations.iter().take(3) {
        println!("  links:  {v}");
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, p) in [(2, 2), (3, 2)] {
        let flags = FlagPoset::new(n, p)?;
        let poset = flags.gposet();
        println!(
            "GL_{n}(F_{p}): {} flags, |G| = {}",
            poset.len(),
            poset.group().order()
        );
        show("  as generated", poset);
    }

    let flags = FlagPoset::new(2, 2)?;
    let group = flags.group().clone();
    let clean = flags.gposet().clone().into_parts();

    // A generator sends the first line somewhere else than it should.
    let mut parts = clean.clone();
    let g = group.generators()[0].index();
    let n = parts.items.len();
    parts.action[g * n] = ((parts.action[g * n] as usize + 1) % (n - 1)) as u32;
    show("corrupted action entry", &GPoset::new(parts)?);

    // The first line takes the link of the second, which is not its conjugate.
    let mut parts = clean.clone();
    let top = flags.top();
    parts.links[0] = flags.graded_link(1).clone();
    show("corrupted link conjugacy", &GPoset::new(parts)?);

    // A larger link on the empty flag breaks L_top <= L_line.
    let mut parts = clean;
    parts.links[top] = Subgroup::whole(&group);
    show("corrupted link monotonicity", &GPoset::new(parts)?);
    Ok(())
}
