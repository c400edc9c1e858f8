//! Flags of `F_p^n`, parabolic subgroups of `GL_n(F_p)`, `p`-radical
//! subgroups and the comparison between the flag category and the orbit
//! category on radicals.

mod borel_tits;
mod flags;
mod linalg;

pub use borel_tits::{BorelTits, BorelTitsReport, EquationOneFailure};
pub use flags::{
    check_scale, enumerate_subspaces, gl_group, graded_link, stab_parabolic, Flag, FlagPoset,
    MAX_DIM, PRIMES,
};
pub use linalg::{gaussian_binomial, Subspace};

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::category::{Category, CategoryError, MorphismClass, MulOrder};
use crate::gposet::GPosetError;
use crate::group::{Elem, FinGroup, GroupError, Subgroup};

/// Largest group order for [`exhaustive_radical_enumeration`].
pub const RADICAL_SCAN_LIMIT: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("scale guard: {0}")]
    ScaleGuard(String),
    #[error("flag computations need a matrix group")]
    NotMatrixGroup,
    #[error("member {index} is not p-radical")]
    NotRadical { index: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poset(#[from] GPosetError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// `O_p(N_G(U)) = U`.
pub fn p_radical_test(u: &Subgroup, p: u32) -> bool {
    u.normalizer().o_p(p) == *u
}

/// A list of `p`-radical subgroups, each checked on construction.
#[derive(Clone, Debug)]
pub struct RadicalCollection {
    p: u32,
    labels: Vec<String>,
    members: Vec<Subgroup>,
}

impl RadicalCollection {
    pub fn new(
        p: u32,
        labels: Vec<String>,
        members: Vec<Subgroup>,
    ) -> Result<RadicalCollection, LieError> {
        assert_eq!(labels.len(), members.len());
        if let Some(index) = members.iter().position(|u| !p_radical_test(u, p)) {
            return Err(LieError::NotRadical { index });
        }
        Ok(RadicalCollection { p, labels, members })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Every `p`-subgroup of `group`, sorted by order then members. Grows each
/// subgroup `P` by elements `x` of `N(P) \ P` with `x^p in P`; every
/// nontrivial `p`-group has a normal subgroup of index `p`, so nothing is missed.
pub fn all_p_subgroups(group: &Arc<FinGroup>, p: u32) -> Vec<Subgroup> {
    let trivial = Subgroup::trivial(group);
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([trivial.members().to_vec()]);
    let mut out = vec![trivial.clone()];
    let mut queue = VecDeque::from([trivial]);
    while let Some(sub) = queue.pop_front() {
        for &x in sub.normalizer().members() {
            if sub.contains(x) || !sub.contains(group.pow(x, p as u64)) {
                continue;
            }
            let bigger = sub.join(&[x]);
            if seen.insert(bigger.members().to_vec()) {
                out.push(bigger.clone());
                queue.push_back(bigger);
            }
        }
    }
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    out
}

/// All `p`-radical subgroups by brute force over the `p`-subgroups.
pub fn exhaustive_radical_enumeration(
    group: &Arc<FinGroup>,
    p: u32,
) -> Result<RadicalCollection, LieError> {
    if group.order() > RADICAL_SCAN_LIMIT {
        return Err(LieError::ScaleGuard(format!(
            "radical scan needs |G| <= {RADICAL_SCAN_LIMIT}, got {}",
            group.order()
        )));
    }
    let members: Vec<Subgroup> = all_p_subgroups(group, p)
        .into_iter()
        .filter(|u| p_radical_test(u, p))
        .collect();
    let labels = (0..members.len()).map(|k| format!("U{k}")).collect();
    RadicalCollection::new(p, labels, members)
}

/// Whether the radical subgroups of `GL_n(F_p)` are exactly the graded links of flags.
pub fn radicals_match_flags(flags: &FlagPoset) -> Result<bool, LieError> {
    let radicals = exhaustive_radical_enumeration(flags.group(), flags.p())?;
    let from_scan: HashSet<&[Elem]> = radicals.members().iter().map(Subgroup::members).collect();
    let from_flags: HashSet<&[Elem]> = (0..flags.len())
        .map(|i| flags.graded_link(i).members())
        .collect();
    Ok(from_scan == from_flags && from_flags.len() == flags.len())
}

/// The orbit category on a collection: objects `G/H`, and
/// `hom(G/H, G/K) = {g : g^-1 H g <= K} / K` by left cosets `gK`. The map
/// `[x]: G/H -> G/K` then `[y]: G/K -> G/L` composes to `[xy]`.
pub fn orbit_category(collection: &RadicalCollection) -> Result<Category, LieError> {
    let members = collection.members();
    let Some(first) = members.first() else {
        return Err(CategoryError::EmptySelection.into());
    };
    let group = first.group().clone();
    let mut classes = Vec::new();
    for (i, h) in members.iter().enumerate() {
        for (j, k) in members.iter().enumerate() {
            let mut seen = vec![false; group.order()];
            for g in group.elements() {
                if seen[g.index()] || !h.conjugates_into(group.inv(g), k) {
                    continue;
                }
                let coset: Vec<Elem> = k.members().iter().map(|&x| group.mul(g, x)).collect();
                for &x in &coset {
                    seen[x.index()] = true;
                }
                classes.push(MorphismClass {
                    src: i,
                    dst: j,
                    members: coset,
                });
            }
        }
    }
    let objects = collection
        .labels()
        .iter()
        .map(|l| format!("G/{l}"))
        .collect();
    let category = Category::from_classes(&group, objects, classes, MulOrder::LaterRight)?;
    category.check_axioms().into_result()?;
    Ok(category)
}

/// The transport category on a collection: `hom(H, K) = {g : g H g^-1 <= K}`,
/// one morphism per element, and `g` then `h` composes to `hg`.
pub fn transport_category(collection: &RadicalCollection) -> Result<Category, LieError> {
    let members = collection.members();
    let Some(first) = members.first() else {
        return Err(CategoryError::EmptySelection.into());
    };
    let group = first.group().clone();
    let mut classes = Vec::new();
    for (i, h) in members.iter().enumerate() {
        for (j, k) in members.iter().enumerate() {
            for g in group.elements().filter(|&g| h.conjugates_into(g, k)) {
                classes.push(MorphismClass {
                    src: i,
                    dst: j,
                    members: vec![g],
                });
            }
        }
    }
    let category = Category::from_classes(
        &group,
        collection.labels().to_vec(),
        classes,
        MulOrder::LaterLeft,
    )?;
    category.check_axioms().into_result()?;
    Ok(category)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FinGroup> {
        Arc::new(FinGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], 100).unwrap())
    }

    #[test]
    fn radical_tests() {
        let g = s3();
        assert!(p_radical_test(&Subgroup::trivial(&g), 2));
        let t = g.find(&[1, 0, 2]).unwrap();
        assert!(p_radical_test(&Subgroup::generate(&g, &[t]), 2));
        let c = g.find(&[1, 2, 0]).unwrap();
        let c3 = Subgroup::generate(&g, &[c]);
        assert!(!p_radical_test(&c3, 2));
        assert!(p_radical_test(&c3, 3));
        assert!(!p_radical_test(&Subgroup::trivial(&g), 3));
        assert_eq!(
            RadicalCollection::new(2, vec!["a".into()], vec![c3]).unwrap_err(),
            LieError::NotRadical { index: 0 }
        );
    }

    /// Reference list of subgroups: closures of all subsets of size at most two.
    fn all_subgroups(group: &Arc<FinGroup>) -> HashSet<Vec<Elem>> {
        let mut out = HashSet::new();
        for a in group.elements() {
            for b in group.elements() {
                out.insert(Subgroup::generate(group, &[a, b]).members().to_vec());
            }
        }
        out
    }

    #[test]
    fn p_subgroup_search_is_complete() {
        // Every subgroup of these groups is generated by at most two elements.
        for (group, p) in [
            (s3(), 2),
            (s3(), 3),
            (Arc::new(gl_group(2, 3, 100).unwrap()), 2),
            (Arc::new(gl_group(2, 3, 100).unwrap()), 3),
        ] {
            let expected: HashSet<Vec<Elem>> = all_subgroups(&group)
                .into_iter()
                .filter(|m| crate::group::p_part(m.len(), p) == m.len())
                .collect();
            let found: HashSet<Vec<Elem>> = all_p_subgroups(&group, p)
                .iter()
                .map(|s| s.members().to_vec())
                .collect();
            assert_eq!(found, expected);
        }
    }

    #[test]
    fn radical_scans() {
        let f22 = FlagPoset::new(2, 2).unwrap();
        let r2 = exhaustive_radical_enumeration(f22.group(), 2).unwrap();
        assert_eq!(
            r2.members().iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 2, 2, 2]
        );
        let r3 = exhaustive_radical_enumeration(f22.group(), 3).unwrap();
        assert_eq!(r3.len(), 1);
        assert_eq!(r3.members()[0].order(), 3);
        assert!(radicals_match_flags(&f22).unwrap());

        let f32 = FlagPoset::new(3, 2).unwrap();
        assert_eq!(
            exhaustive_radical_enumeration(f32.group(), 2)
                .unwrap()
                .len(),
            36
        );
        assert!(radicals_match_flags(&f32).unwrap());

        let big = Arc::new(gl_group(2, 5, 1000).unwrap());
        assert!(matches!(
            exhaustive_radical_enumeration(&big, 5),
            Err(LieError::ScaleGuard(_))
        ));
    }

    #[test]
    fn orbit_categories() {
        let g = s3();
        let only_trivial =
            RadicalCollection::new(2, vec!["e".into()], vec![Subgroup::trivial(&g)]).unwrap();
        let bg = orbit_category(&only_trivial).unwrap();
        assert_eq!(bg.hom_sizes(), vec![vec![6]]);

        let f22 = FlagPoset::new(2, 2).unwrap();
        let r = exhaustive_radical_enumeration(f22.group(), 2).unwrap();
        let o = orbit_category(&r).unwrap();
        // Object 0 is the trivial subgroup.
        assert_eq!(o.hom(0, 1).len(), 3);
        assert_eq!(o.hom(1, 0).len(), 0);
        assert_eq!(o.hom(0, 0).len(), 6);
        let t = transport_category(&r).unwrap();
        assert_eq!(t.hom(0, 1).len(), 6);
        assert_eq!(t.hom(1, 1).len(), 2);
    }
}
