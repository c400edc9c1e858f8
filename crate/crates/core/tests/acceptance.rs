//! Acceptance criteria, one PASS/FAIL line each with its runtime against a
//! fixed limit. Exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{
    bar_homology, cyclic_group, dense_nerve_homology, library_homology, symmetric_group, Hom,
};
use exitcat::category::{build_category, quotient_functor, Category};
use exitcat::gposet::{point, trivial_action, GPoset, LinkViolation};
use exitcat::group::{FinGroup, Subgroup, DEFAULT_MAX_ORDER};
use exitcat::homotopy::{
    abelianization, build_complex, coset_enumeration, functor_homology, nerve_chain_complex,
    pi1_presentation, pi1_vs_quotient, CoefficientFunctor, Coefficients, CosetOutcome,
    DEFAULT_MAX_CHAINS,
};
use exitcat::lie::{exhaustive_radical_enumeration, radicals_match_flags, BorelTits, FlagPoset};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn flag_poset(n: usize, p: u32) -> Result<FlagPoset, String> {
    FlagPoset::new(n, p).map_err(err)
}

// 1. Validation of flag G-posets and three injected corruptions.
fn validation() -> Check {
    let mut caught = 0;
    for (n, p) in [(2, 2), (3, 2)] {
        let flags = flag_poset(n, p)?;
        let poset = flags.gposet();
        ensure!(
            poset.validate_action().passed(),
            "GL_{n}(F_{p}) action rejected"
        );
        ensure!(
            poset.validate_links().passed(),
            "GL_{n}(F_{p}) links rejected"
        );
        let group = flags.group().clone();
        let clean = poset.clone().into_parts();
        let items = clean.items.len();

        // Action entry: the first generator sends item 0 somewhere else.
        let g = group.generators()[0];
        let mut parts = clean.clone();
        let old = parts.action[g.index() * items] as usize;
        parts.action[g.index() * items] = ((old + 1) % items) as u32;
        let bad = GPoset::new(parts).map_err(err)?;
        let report = bad.validate_action();
        ensure!(
            !report.passed(),
            "GL_{n}(F_{p}): corrupted action entry accepted"
        );
        ensure!(
            report.implicates(&group, &bad, g, 0),
            "GL_{n}(F_{p}): action violation does not name ({g}, 0)"
        );
        caught += 1;

        // Link conjugacy: item 0 takes the link of another flag in its orbit.
        let other = (1..items)
            .find(|&j| group.elements().any(|h| poset.act(h, 0) == j))
            .unwrap();
        let mut parts = clean.clone();
        parts.links[0] = flags.graded_link(other).clone();
        let bad = GPoset::new(parts).map_err(err)?;
        let report = bad.validate_links();
        let named = report.violations.iter().any(|v| match *v {
            LinkViolation::NotEquivariant { g, item } => item == 0 || bad.act(g, item) == 0,
            _ => false,
        });
        ensure!(
            named,
            "GL_{n}(F_{p}): conjugacy corruption not named: {:?}",
            report.violations.first()
        );
        caught += 1;

        // Link monotonicity: the empty flag gets the whole group as its link.
        let top = flags.top();
        let mut parts = clean;
        parts.links[top] = Subgroup::whole(&group);
        let bad = GPoset::new(parts).map_err(err)?;
        let report = bad.validate_links();
        ensure!(
            !report.passed(),
            "GL_{n}(F_{p}): monotonicity corruption accepted"
        );
        let only_monotone = report
            .violations
            .iter()
            .all(|v| matches!(*v, LinkViolation::NotMonotone { j, .. } if j == top));
        ensure!(
            only_monotone,
            "GL_{n}(F_{p}): unexpected violation {:?}",
            report.violations
        );
        caught += 1;
    }
    Ok(format!(
        "GL_2(F_2), GL_3(F_2) valid; {caught}/6 corruptions caught and named"
    ))
}

// 2. Category structure of the GL_2(F_2) flag categories.
fn category_structure() -> Check {
    let flags = flag_poset(2, 2)?;
    let poset = flags.gposet();
    let rbs = Arc::new(build_category(poset).map_err(err)?);
    let expected = vec![
        vec![1, 1, 1, 3],
        vec![1, 1, 1, 3],
        vec![1, 1, 1, 3],
        vec![0, 0, 0, 6],
    ];
    ensure!(
        rbs.hom_sizes() == expected,
        "hom sizes {:?}",
        rbs.hom_sizes()
    );
    ensure!(rbs.check_axioms().passed(), "axiom check failed");

    let trivial = poset.with_trivial_links();
    let bs = Arc::new(build_category(&trivial).map_err(err)?);
    let group = poset.group();
    for i in 0..poset.len() {
        for j in 0..poset.len() {
            let transporter = group
                .elements()
                .filter(|&g| poset.leq(poset.act(g, i), j))
                .count();
            ensure!(
                bs.hom(i, j).len() == transporter,
                "C^BS hom({i},{j}) is not the transporter count"
            );
        }
    }
    // Independent listing of 2x2 matrices for line-to-line transporters.
    for (i, f) in flags
        .flags()
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.chain.is_empty())
    {
        for (j, f2) in flags
            .flags()
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.chain.is_empty())
        {
            let v = f.chain[0].basis().next().unwrap();
            let w = f2.chain[0].basis().next().unwrap();
            let count =
                common::gl22_line_transporter([v[0] as u8, v[1] as u8], [w[0] as u8, w[1] as u8]);
            ensure!(
                bs.hom(i, j).len() == count,
                "C^BS hom({i},{j}) disagrees with the matrix listing"
            );
        }
    }
    ensure!(bs.check_axioms().passed(), "C^BS axiom check failed");

    let q = quotient_functor(&bs, &rbs).map_err(err)?;
    ensure!(
        q.on_objects == (0..poset.len()).collect::<Vec<_>>(),
        "quotient moves objects"
    );
    ensure!(q.is_full(), "quotient is not full");
    ensure!(q.check().is_ok(), "quotient is not a functor");
    Ok(format!(
        "hom sizes {expected:?}; C^BS {:?}; quotient full, identity on objects",
        bs.hom_sizes()
    ))
}

// 3. The flag category against the orbit category on radicals.
fn borel_tits() -> Check {
    let mut summary = Vec::new();
    for (n, p) in [(2, 2), (2, 3), (3, 2)] {
        let report = BorelTits::new(flag_poset(n, p)?).map_err(err)?.report();
        ensure!(
            report.equation_one.is_ok(),
            "GL_{n}(F_{p}): hom-set equality fails at {:?}",
            report.equation_one
        );
        ensure!(
            report.phi_isomorphism.holds(),
            "GL_{n}(F_{p}): {}",
            report.phi_isomorphism
        );
        ensure!(
            report.phi_functor.is_ok() && report.square.is_ok(),
            "GL_{n}(F_{p}): Phi or square fails"
        );
        ensure!(
            report.normalizer_failures.is_empty(),
            "GL_{n}(F_{p}): N(O_p(P)) != P at {:?}",
            report.normalizer_failures
        );
        ensure!(report.passed(), "GL_{n}(F_{p}): report failed");
        summary.push(format!("GL_{n}(F_{p}) {} pairs", report.pairs_checked));
    }
    let flags = flag_poset(2, 2)?;
    let radicals = exhaustive_radical_enumeration(flags.group(), 2).map_err(err)?;
    ensure!(radicals.len() == 4, "found {} radicals", radicals.len());
    ensure!(
        radicals_match_flags(&flags).map_err(err)?,
        "radicals differ from graded links"
    );
    Ok(format!(
        "Phi isomorphism for {}; 4 radicals in GL_2(F_2)",
        summary.join(", ")
    ))
}

// 4. Fundamental group against G/E.
fn fundamental_group() -> Check {
    let limit = Duration::from_secs(60);
    let mut summary = Vec::new();
    for (n, p, trivial, expected) in [(2, 2, false, 1), (2, 3, false, 2), (2, 2, true, 6)] {
        let start = Instant::now();
        let flags = flag_poset(n, p)?;
        let poset = if trivial {
            flags.gposet().with_trivial_links()
        } else {
            flags.gposet().clone()
        };
        let category = build_category(&poset).map_err(err)?;
        let report = pi1_vs_quotient(&category, &poset, flags.top(), 10_000).map_err(err)?;
        let case = format!("GL_{n}(F_{p}){}", if trivial { " C^BS" } else { "" });
        ensure!(
            report.quotient_order == expected,
            "{case}: |G/E| = {}",
            report.quotient_order
        );
        ensure!(
            report.enumeration.outcome == CosetOutcome::Order(expected),
            "{case}: {}",
            report.enumeration.outcome
        );
        ensure!(report.passed(), "{case}: comparison failed");
        let elapsed = start.elapsed();
        ensure!(elapsed < limit, "{case} took {elapsed:?}");
        summary.push(format!("{case} {expected} ({:.2}s)", elapsed.as_secs_f64()));
    }
    Ok(summary.join(", "))
}

fn show(h: &[Hom]) -> String {
    let parts: Vec<String> = h
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut terms: Vec<String> = Vec::new();
            if g.rank > 0 {
                terms.push(if g.rank == 1 {
                    "Z".into()
                } else {
                    format!("Z^{}", g.rank)
                });
            }
            terms.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            format!(
                "H_{k}={}",
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            )
        })
        .collect();
    parts.join(" ")
}

// 5. Nerve homology of the GL_2(F_2) flag categories.
fn homology() -> Check {
    let flags = flag_poset(2, 2)?;
    let bs = build_category(&flags.gposet().with_trivial_links()).map_err(err)?;
    let got = library_homology(
        &nerve_chain_complex(&bs, 2, DEFAULT_MAX_CHAINS)
            .map_err(err)?
            .all_homology(),
    );
    let z = Hom {
        rank: 1,
        torsion: vec![],
    };
    let zero = Hom {
        rank: 0,
        torsion: vec![],
    };
    let z2 = Hom {
        rank: 0,
        torsion: vec![2],
    };
    ensure!(
        got == vec![z.clone(), z2.clone(), zero.clone()],
        "C^BS: {}",
        show(&got)
    );
    let oracle = bar_homology(&symmetric_group(3), &|_| 1, 2);
    ensure!(
        got == oracle,
        "C^BS {} but bar complex of S_3 gives {}",
        show(&got),
        show(&oracle)
    );
    ensure!(
        got == dense_nerve_homology(&bs, 2),
        "C^BS disagrees with the dense nerve oracle"
    );

    let rbs = build_category(flags.gposet()).map_err(err)?;
    let got_rbs = library_homology(
        &nerve_chain_complex(&rbs, 1, DEFAULT_MAX_CHAINS)
            .map_err(err)?
            .all_homology(),
    );
    ensure!(got_rbs == vec![z, zero], "C^RBS: {}", show(&got_rbs));
    Ok(format!(
        "C^BS {} = bar H_*(S_3); C^RBS {}",
        show(&got),
        show(&got_rbs)
    ))
}

struct TestCategory {
    name: String,
    category: Category,
    degree: usize,
    /// Small enough for the dense oracle.
    dense: bool,
}

fn test_categories() -> Result<Vec<TestCategory>, String> {
    let mut out = Vec::new();
    for (n, p, degree) in [(2, 2, 2), (2, 3, 2), (3, 2, 1)] {
        let flags = flag_poset(n, p)?;
        out.push(TestCategory {
            name: format!("C^RBS GL_{n}(F_{p})"),
            category: build_category(flags.gposet()).map_err(err)?,
            degree,
            dense: n == 2 && p == 2,
        });
        if n == 2 {
            out.push(TestCategory {
                name: format!("C^BS GL_{n}(F_{p})"),
                category: build_category(&flags.gposet().with_trivial_links()).map_err(err)?,
                degree,
                dense: p == 2,
            });
        }
    }
    for (name, gens) in [
        ("BZ/2", vec![vec![1u32, 0]]),
        ("BS_3", vec![vec![1, 0, 2], vec![1, 2, 0]]),
    ] {
        let degree = gens[0].len();
        let group =
            Arc::new(FinGroup::from_permutations(degree, &gens, DEFAULT_MAX_ORDER).map_err(err)?);
        out.push(TestCategory {
            name: name.into(),
            category: build_category(&point(&group)).map_err(err)?,
            degree: 2,
            dense: true,
        });
    }
    // The face poset of a triangle boundary: a circle.
    let items: Vec<String> = ["a", "b", "c", "ab", "bc", "ca"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut leq = vec![false; 36];
    for i in 0..6 {
        leq[i * 6 + i] = true;
    }
    for (v, e) in [(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)] {
        leq[v * 6 + e] = true;
    }
    let circle = trivial_action(items, leq).map_err(err)?;
    out.push(TestCategory {
        name: "circle poset".into(),
        category: build_category(&circle).map_err(err)?,
        degree: 2,
        dense: true,
    });
    Ok(out)
}

// 6. Constant functor coefficients against nerve homology; sign coefficients on BZ/2.
fn functor_coefficients() -> Check {
    let mut checked = Vec::new();
    for t in test_categories()? {
        let constant = CoefficientFunctor::constant(&t.category, Coefficients::Integers);
        let via_functor =
            functor_homology(&t.category, &constant, t.degree, DEFAULT_MAX_CHAINS).map_err(err)?;
        let nerve = nerve_chain_complex(&t.category, t.degree, DEFAULT_MAX_CHAINS)
            .map_err(err)?
            .all_homology();
        ensure!(
            via_functor == nerve,
            "{}: functor homology differs from nerve homology",
            t.name
        );
        if t.dense {
            let oracle = dense_nerve_homology(&t.category, t.degree);
            ensure!(
                library_homology(&via_functor) == oracle,
                "{}: dense oracle gives {}",
                t.name,
                show(&oracle)
            );
        }
        checked.push(t.name);
    }
    let z2 =
        Arc::new(FinGroup::from_permutations(2, &[vec![1, 0]], DEFAULT_MAX_ORDER).map_err(err)?);
    let bz2 = build_category(&point(&z2)).map_err(err)?;
    let sign = CoefficientFunctor {
        coefficients: Coefficients::Integers,
        dims: vec![1],
        matrices: vec![vec![1], vec![-1]],
    };
    let got = library_homology(&functor_homology(&bz2, &sign, 2, DEFAULT_MAX_CHAINS).map_err(err)?);
    let oracle = bar_homology(&cyclic_group(2), &|g| if g == 0 { 1 } else { -1 }, 2);
    ensure!(
        got == oracle,
        "sign coefficients: {} against bar {}",
        show(&got),
        show(&oracle)
    );
    ensure!(
        (0..=2).all(|k| got[k] == common::z2_sign(k)),
        "sign coefficients disagree with the closed form"
    );
    Ok(format!(
        "constant Z = nerve on {} categories; H_*(Z/2; Z_sign) {}",
        checked.len(),
        show(&got)
    ))
}

// 7. Abelianised fundamental group against H_1, boundary squares, link equality.
fn cross_checks() -> Check {
    let mut complexes = 0;
    let categories = test_categories()?;
    for t in &categories {
        let complex =
            nerve_chain_complex(&t.category, t.degree, DEFAULT_MAX_CHAINS).map_err(err)?;
        ensure!(
            complex.check_boundary_squared().is_ok(),
            "{}: boundary does not square to zero",
            t.name
        );
        complexes += 1;
        let h1 = complex.homology(1).map_err(err)?;
        let pi1 = pi1_presentation(&t.category, 0).map_err(err)?;
        ensure!(
            pi1.component.len() == t.category.num_objects(),
            "{} is not connected",
            t.name
        );
        let ab = abelianization(&pi1.presentation);
        ensure!(ab == h1, "{}: abelianised pi_1 {ab} but {h1}", t.name);
        if t.category.num_objects() == 1 {
            let order = coset_enumeration(&pi1.presentation, 10_000).outcome;
            let group_order = t.category.num_morphisms();
            ensure!(
                order == CosetOutcome::Order(group_order),
                "{}: pi_1 {order}",
                t.name
            );
        }
    }
    // Functor-coefficient complexes too, over Z and F_2.
    for t in &categories {
        for coefficients in [Coefficients::Integers, Coefficients::Field(2)] {
            let f = CoefficientFunctor::constant(&t.category, coefficients);
            let complex =
                build_complex(&t.category, &f, t.degree.min(1), DEFAULT_MAX_CHAINS).map_err(err)?;
            ensure!(
                complex.check_boundary_squared().is_ok(),
                "{} over {coefficients}: boundary squares nonzero",
                t.name
            );
            complexes += 1;
        }
    }
    let mut flags_checked = 0;
    for (n, p) in [(2, 2), (2, 3), (3, 2), (2, 5)] {
        let flags = flag_poset(n, p)?;
        for i in 0..flags.len() {
            ensure!(
                flags.verify_link_is_op(i),
                "GL_{n}(F_{p}): graded link of {} is not O_p",
                flags.flags()[i]
            );
            flags_checked += 1;
        }
    }
    Ok(format!(
        "ab(pi_1) = H_1 on {} categories; dd = 0 on {complexes} complexes; link = O_p on {flags_checked} flags",
        categories.len()
    ))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion {
            name: "G-poset validation and corruptions",
            limit: Duration::from_secs(5),
            run: validation,
        },
        Criterion {
            name: "category structure of GL_2(F_2)",
            limit: Duration::from_secs(5),
            run: category_structure,
        },
        Criterion {
            name: "flag category = orbit category on radicals",
            limit: Duration::from_secs(300),
            run: borel_tits,
        },
        Criterion {
            name: "fundamental group = G/E",
            limit: Duration::from_secs(180),
            run: fundamental_group,
        },
        Criterion {
            name: "nerve homology",
            limit: Duration::from_secs(120),
            run: homology,
        },
        Criterion {
            name: "functor-coefficient homology",
            limit: Duration::from_secs(60),
            run: functor_coefficients,
        },
        Criterion {
            name: "cross-checks",
            limit: Duration::from_secs(120),
            run: cross_checks,
        },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("over the time limit; {detail}")),
            other => other,
        };
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!(
            "{verdict} criterion {} ({}) [{:.2}s / {}s]: {detail}",
            k + 1,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
