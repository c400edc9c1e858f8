//! Closing generators into a finite group and the subgroup toolkit: Sylow
//! subgroups, `O_p`, normalisers, normal closures and quotients.
//!
//!     cargo run --example finite_groups

use std::sync::Arc;

use exitcat::group::{normal_closure, quotient_group, FinGroup, Subgroup, DEFAULT_MAX_ORDER};
use exitcat::lie::gl_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // S_4 from a transposition and a 4-cycle.
    let s4 = Arc::new(FinGroup::from_permutations(
        4,
        &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]],
        DEFAULT_MAX_ORDER,
    )?);
    println!("|S_4| = {}", s4.order());
    let whole = Subgroup::whole(&s4);
    let sylow2 = whole.sylow(2);
    let sylow3 = whole.sylow(3);
    println!(
        "Sylow 2-subgroup: order {}, normaliser order {}",
        sylow2.order(),
        sylow2.normalizer().order()
    );
    println!(
        "Sylow 3-subgroup: order {}, normaliser order {}",
        sylow3.order(),
        sylow3.normalizer().order()
    );
    // O_2(S_4) is the Klein four group.
    println!("O_2(S_4) has order {}", whole.o_p(2).order());

    // The normal closure of a 3-cycle is A_4, leaving S_4 / A_4 = Z/2.
    let three_cycle = s4.find(&[1, 2, 0, 3]).expect("a permutation in S_4");
    let a4 = normal_closure(&s4, &[Subgroup::generate(&s4, &[three_cycle])]);
    let quotient = quotient_group(&s4, &a4)?;
    println!(
        "normal closure of (0 1 2): order {}, quotient order {}",
        a4.order(),
        quotient.group.order()
    );

    // GL_2(F_3) from transvections and a diagonal matrix.
    let gl = Arc::new(gl_group(2, 3, DEFAULT_MAX_ORDER)?);
    let g = Subgroup::whole(&gl);
    println!(
        "|GL_2(F_3)| = {}, O_3 = {}, O_2 = {}",
        gl.order(),
        g.o_p(3).order(),
        g.o_p(2).order()
    );
    for &x in gl.generators() {
        println!(
            "  generator {:?} has order {}",
            gl.form(x).unwrap(),
            gl.element_order(x)
        );
    }
    Ok(())
}
