//! Finite categories whose morphisms are classes of group elements.
//!
//! The main source is [`build_category`]: for a G-poset with links `L_i`,
//! `hom(i, j) = {g : g.i <= j} / L_i` (right cosets `g L_i`), and the class of
//! `g: i -> j` followed by `h: j -> k` is the class of `hg`. Orbit categories
//! and opposites use the same representation with the product order recorded
//! in [`MulOrder`].
//!
//! Hom-sets are stored extensionally so that independence of representatives
//! is checked, never assumed. Every class is represented by its smallest
//! member and morphisms are numbered in `(source, target, representative)`
//! order, which makes all tables canonical.

mod dump;
mod functor;

pub use functor::{quotient_functor, Functor, FunctorViolation, IsoWitness};

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::gposet::GPoset;
use crate::group::{Elem, FinGroup};

pub type MorphId = usize;

/// Stop collecting axiom violations after this many.
const MAX_REPORTED_VIOLATIONS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("input G-poset failed validation: {}", .0.join("; "))]
    ValidationFailed(Vec<String>),
    #[error("category axioms fail: {0}")]
    AxiomsFailed(String),
    #[error("incompatible inputs: {0}")]
    IncompatibleInputs(String),
    #[error("empty object selection")]
    EmptySelection,
    #[error("object {0} does not exist")]
    UnknownObject(usize),
    #[error("no identity class at object {0}")]
    MissingIdentity(usize),
    #[error("composite of morphisms {f} and {g} has no class in the target hom-set")]
    NotClosed { f: MorphId, g: MorphId },
    #[error("element {elem} lies in two classes of hom({src}, {dst})")]
    OverlappingClasses { src: usize, dst: usize, elem: Elem },
}

/// Which side the later morphism's element multiplies on when composing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MulOrder {
    /// `g: i -> j` then `h: j -> k` composes to the class of `h * g`.
    LaterLeft,
    /// `g: i -> j` then `h: j -> k` composes to the class of `g * h`.
    LaterRight,
}

impl MulOrder {
    pub fn flipped(self) -> MulOrder {
        match self {
            MulOrder::LaterLeft => MulOrder::LaterRight,
            MulOrder::LaterRight => MulOrder::LaterLeft,
        }
    }

    fn product(self, group: &FinGroup, earlier: Elem, later: Elem) -> Elem {
        match self {
            MulOrder::LaterLeft => group.mul(later, earlier),
            MulOrder::LaterRight => group.mul(earlier, later),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: usize,
    pub dst: usize,
    /// Smallest member of the class.
    pub rep: Elem,
    /// Sorted members of the class.
    pub members: Vec<Elem>,
}

/// Input to [`Category::from_classes`].
#[derive(Clone, Debug)]
pub struct MorphismClass {
    pub src: usize,
    pub dst: usize,
    pub members: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct Category {
    group: Arc<FinGroup>,
    objects: Vec<String>,
    order: MulOrder,
    morphisms: Vec<Morphism>,
    /// `src_start[i]..src_start[i + 1]` are the morphisms out of `i`.
    src_start: Vec<usize>,
    /// `hom_start[i * n + j]..` delimits `hom(i, j)` within `out(i)`.
    hom_start: Vec<usize>,
    identities: Vec<MorphId>,
    /// `compose[compose_start[f] + (g - src_start[dst f])]` is `g . f`.
    compose: Vec<u32>,
    compose_start: Vec<usize>,
    /// Per `(src, dst)` pair: member element -> class, sorted by element.
    lookup: Vec<Vec<(Elem, u32)>>,
}

impl PartialEq for Category {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            && self.objects == other.objects
            && self.order == other.order
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.compose == other.compose
    }
}

impl Eq for Category {}

impl Category {
    /// Assembles a category from explicit morphism classes. Representatives,
    /// numbering and the composition table are derived canonically; the
    /// composite of two classes is the class of the product of their
    /// representatives. Axioms are not checked here.
    pub fn from_classes(
        group: &Arc<FinGroup>,
        objects: Vec<String>,
        classes: Vec<MorphismClass>,
        order: MulOrder,
    ) -> Result<Category, CategoryError> {
        let n = objects.len();
        let mut morphisms: Vec<Morphism> = classes
            .into_iter()
            .map(|c| {
                let mut members = c.members;
                members.sort_unstable();
                members.dedup();
                Morphism {
                    src: c.src,
                    dst: c.dst,
                    rep: members[0],
                    members,
                }
            })
            .collect();
        if let Some(m) = morphisms.iter().find(|m| m.src >= n || m.dst >= n) {
            return Err(CategoryError::UnknownObject(m.src.max(m.dst)));
        }
        morphisms.sort_unstable_by_key(|m| (m.src, m.dst, m.rep));

        let mut src_start = vec![0; n + 1];
        let mut hom_start = vec![0; n * n + 1];
        for m in &morphisms {
            src_start[m.src + 1] += 1;
            hom_start[m.src * n + m.dst + 1] += 1;
        }
        for i in 0..n {
            src_start[i + 1] += src_start[i];
        }
        for c in 0..n * n {
            hom_start[c + 1] += hom_start[c];
        }

        let mut lookup: Vec<Vec<(Elem, u32)>> = vec![Vec::new(); n * n];
        for (id, m) in morphisms.iter().enumerate() {
            lookup[m.src * n + m.dst].extend(m.members.iter().map(|&e| (e, id as u32)));
        }
        for (cell, table) in lookup.iter_mut().enumerate() {
            table.sort_unstable();
            if let Some(w) = table.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(CategoryError::OverlappingClasses {
                    src: cell / n.max(1),
                    dst: cell % n.max(1),
                    elem: w[0].0,
                });
            }
        }

        let mut category = Category {
            group: group.clone(),
            objects,
            order,
            morphisms,
            src_start,
            hom_start,
            identities: Vec::new(),
            compose: Vec::new(),
            compose_start: Vec::new(),
            lookup,
        };
        category.identities = (0..n)
            .map(|i| {
                category
                    .class_of(i, i, Elem::IDENTITY)
                    .ok_or(CategoryError::MissingIdentity(i))
            })
            .collect::<Result<_, _>>()?;

        let mut compose = Vec::new();
        let mut compose_start = Vec::with_capacity(category.morphisms.len() + 1);
        for (f, mf) in category.morphisms.iter().enumerate() {
            compose_start.push(compose.len());
            for g in category.out_range(mf.dst) {
                let mg = &category.morphisms[g];
                let product = order.product(group, mf.rep, mg.rep);
                let gf = category
                    .class_of(mf.src, mg.dst, product)
                    .ok_or(CategoryError::NotClosed { f, g })?;
                compose.push(gf as u32);
            }
        }
        compose_start.push(compose.len());
        category.compose = compose;
        category.compose_start = compose_start;
        Ok(category)
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn mul_order(&self) -> MulOrder {
        self.order
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, f: MorphId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn identity(&self, object: usize) -> MorphId {
        self.identities[object]
    }

    pub fn is_identity(&self, f: MorphId) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    /// Morphisms out of `object`, as a contiguous id range.
    pub fn out_range(&self, object: usize) -> Range<MorphId> {
        self.src_start[object]..self.src_start[object + 1]
    }

    /// `hom(src, dst)` as a contiguous id range.
    pub fn hom_range(&self, src: usize, dst: usize) -> Range<MorphId> {
        let n = self.num_objects();
        let base = self.src_start[src];
        base + self.hom_start[src * n + dst] - self.hom_start[src * n]
            ..base + self.hom_start[src * n + dst + 1] - self.hom_start[src * n]
    }

    pub fn hom(&self, src: usize, dst: usize) -> &[Morphism] {
        &self.morphisms[self.hom_range(src, dst)]
    }

    /// `n x n` matrix of hom-set sizes.
    pub fn hom_sizes(&self) -> Vec<Vec<usize>> {
        let n = self.num_objects();
        (0..n)
            .map(|i| (0..n).map(|j| self.hom_range(i, j).len()).collect())
            .collect()
    }

    /// Class of `hom(src, dst)` containing `g`, if any.
    pub fn class_of(&self, src: usize, dst: usize, g: Elem) -> Option<MorphId> {
        let table = &self.lookup[src * self.num_objects() + dst];
        table
            .binary_search_by_key(&g, |&(e, _)| e)
            .ok()
            .map(|k| table[k].1 as usize)
    }

    /// `g . f` (first `f`, then `g`). Panics if they are not composable.
    pub fn compose(&self, g: MorphId, f: MorphId) -> MorphId {
        let dst = self.morphisms[f].dst;
        assert_eq!(
            self.morphisms[g].src, dst,
            "morphisms {f} and {g} are not composable"
        );
        self.compose[self.compose_start[f] + g - self.src_start[dst]] as MorphId
    }

    #[cfg(test)]
    pub(crate) fn corrupt_composite(&mut self, g: MorphId, f: MorphId, result: MorphId) {
        let dst = self.morphisms[f].dst;
        self.compose[self.compose_start[f] + g - self.src_start[dst]] = result as u32;
    }

    /// Unit laws, associativity over every composable triple, and independence
    /// of representatives over every pair of members of composable classes.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let group = &*self.group;
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose(f, self.identities[m.src]) != f
                || self.compose(self.identities[m.dst], f) != f
            {
                report.push(AxiomViolation::UnitLaw { morphism: f });
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            let row_f = &self.compose[self.compose_start[f]..self.compose_start[f + 1]];
            let base_j = self.src_start[mf.dst];
            for (off_g, &gf) in row_f.iter().enumerate() {
                let g = base_j + off_g;
                let mg = &self.morphisms[g];
                report.pairs_checked += 1;
                for &a in &mf.members {
                    for &b in &mg.members {
                        let product = self.order.product(group, a, b);
                        if self.class_of(mf.src, mg.dst, product) != Some(gf as MorphId) {
                            report.push(AxiomViolation::NotWellDefined {
                                f,
                                g,
                                members: (a, b),
                            });
                        }
                    }
                }
                let row_gf = &self.compose
                    [self.compose_start[gf as usize]..self.compose_start[gf as usize + 1]];
                let row_g = &self.compose[self.compose_start[g]..self.compose_start[g + 1]];
                for (off_h, (&h_gf, &hg)) in row_gf.iter().zip(row_g).enumerate() {
                    report.triples_checked += 1;
                    let left = self.compose(hg as MorphId, f);
                    if h_gf != left as u32 {
                        let h = self.src_start[mg.dst] + off_h;
                        report.push(AxiomViolation::Associativity { f, g, h });
                    }
                }
            }
        }
        report
    }

    /// The opposite category: `hom^op(i, j) = hom(j, i)` with composition reversed.
    pub fn opposite(&self) -> Result<Category, CategoryError> {
        let classes = self
            .morphisms
            .iter()
            .map(|m| MorphismClass {
                src: m.dst,
                dst: m.src,
                members: m.members.clone(),
            })
            .collect();
        let op = Category::from_classes(
            &self.group,
            self.objects.clone(),
            classes,
            self.order.flipped(),
        )?;
        op.check_axioms().into_result()?;
        Ok(op)
    }

    /// Full subcategory on `objects` (in the given order).
    pub fn full_subcategory(&self, objects: &[usize]) -> Result<Category, CategoryError> {
        if objects.is_empty() {
            return Err(CategoryError::EmptySelection);
        }
        if let Some(&bad) = objects.iter().find(|&&o| o >= self.num_objects()) {
            return Err(CategoryError::UnknownObject(bad));
        }
        let mut classes = Vec::new();
        for (a, &i) in objects.iter().enumerate() {
            for (b, &j) in objects.iter().enumerate() {
                classes.extend(self.hom(i, j).iter().map(|m| MorphismClass {
                    src: a,
                    dst: b,
                    members: m.members.clone(),
                }));
            }
        }
        let names = objects.iter().map(|&o| self.objects[o].clone()).collect();
        Category::from_classes(&self.group, names, classes, self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    UnitLaw {
        morphism: MorphId,
    },
    Associativity {
        f: MorphId,
        g: MorphId,
        h: MorphId,
    },
    /// Composing via the given members of `f` and `g` leaves the composite class.
    NotWellDefined {
        f: MorphId,
        g: MorphId,
        members: (Elem, Elem),
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnitLaw { morphism } => write!(f, "unit law fails for morphism {morphism}"),
            Self::Associativity { f: a, g, h } => {
                write!(f, "associativity fails on ({a}, {g}, {h})")
            }
            Self::NotWellDefined { f: a, g, members } => {
                write!(
                    f,
                    "composite of {a} and {g} depends on representatives ({}, {})",
                    members.0, members.1
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    /// The first violations found (at most 100).
    pub violations: Vec<AxiomViolation>,
    pub total_violations: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
}

impl AxiomReport {
    fn push(&mut self, v: AxiomViolation) {
        self.total_violations += 1;
        if self.violations.len() < MAX_REPORTED_VIOLATIONS {
            self.violations.push(v);
        }
    }

    pub fn passed(&self) -> bool {
        self.total_violations == 0
    }

    pub fn into_result(self) -> Result<AxiomReport, CategoryError> {
        match self.violations.first() {
            None => Ok(self),
            Some(v) => Err(CategoryError::AxiomsFailed(format!(
                "{v} ({} violations)",
                self.total_violations
            ))),
        }
    }
}

/// Builds the category of a G-poset: objects are the items and
/// `hom(i, j) = {g : g.i <= j} / L_i`. The input is validated first and the
/// axioms are verified before returning.
pub fn build_category(poset: &GPoset) -> Result<Category, CategoryError> {
    let action = poset.validate_action();
    let links = poset.validate_links();
    if !action.passed() || !links.passed() {
        let messages = action
            .violations
            .iter()
            .map(ToString::to_string)
            .chain(links.violations.iter().map(ToString::to_string))
            .take(10)
            .collect();
        return Err(CategoryError::ValidationFailed(messages));
    }
    let group = poset.group();
    let n = poset.len();
    let mut classes = Vec::new();
    for i in 0..n {
        let link = poset.link(i);
        let mut seen = vec![false; group.order()];
        for g in group.elements() {
            if seen[g.index()] {
                continue;
            }
            let coset: Vec<Elem> = link.members().iter().map(|&l| group.mul(g, l)).collect();
            for &x in &coset {
                seen[x.index()] = true;
            }
            let gi = poset.act(g, i);
            for j in (0..n).filter(|&j| poset.leq(gi, j)) {
                classes.push(MorphismClass {
                    src: i,
                    dst: j,
                    members: coset.clone(),
                });
            }
        }
    }
    let category =
        Category::from_classes(group, poset.items().to_vec(), classes, MulOrder::LaterLeft)?;
    category.check_axioms().into_result()?;
    Ok(category)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gposet::{point, trivial_action};
    use crate::lie::FlagPoset;

    fn gl22_rbs() -> (FlagPoset, Category) {
        let flags = FlagPoset::new(2, 2).unwrap();
        let c = build_category(flags.gposet()).unwrap();
        (flags, c)
    }

    /// Brute-force hom-set size: count `g` with `g.i <= j`, divide by `|L_i|`.
    fn brute_hom_size(poset: &GPoset, i: usize, j: usize) -> usize {
        let count = poset
            .group()
            .elements()
            .filter(|&g| poset.leq(poset.act(g, i), j))
            .count();
        assert_eq!(count % poset.link(i).order(), 0);
        count / poset.link(i).order()
    }

    #[test]
    fn poset_as_category() {
        let items = vec!["a".into(), "b".into(), "c".into()];
        // a <= b, a <= c
        let leq = vec![true, true, true, false, true, false, false, false, true];
        let c = build_category(&trivial_action(items, leq).unwrap()).unwrap();
        assert_eq!(
            c.hom_sizes(),
            vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn gl22_hom_sizes_match_brute_force() {
        let (flags, rbs) = gl22_rbs();
        let poset = flags.gposet();
        let expected = [[1, 1, 1, 3], [1, 1, 1, 3], [1, 1, 1, 3], [0, 0, 0, 6]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(brute_hom_size(poset, i, j), expected[i][j]);
                assert_eq!(rbs.hom(i, j).len(), expected[i][j]);
                for m in rbs.hom(i, j) {
                    assert_eq!(m.members.len(), poset.link(i).order());
                }
            }
        }
        let bs = build_category(&poset.with_trivial_links()).unwrap();
        assert_eq!(bs.hom(0, 3).len(), 6);
        assert_eq!(bs.hom(0, 0).len(), 2);
    }

    #[test]
    fn classes_partition_transporter_sets() {
        let flags = FlagPoset::new(3, 2).unwrap();
        let poset = flags.gposet();
        let c = build_category(poset).unwrap();
        for i in 0..poset.len() {
            for j in 0..poset.len() {
                let total: usize = c.hom(i, j).iter().map(|m| m.members.len()).sum();
                let brute = poset
                    .group()
                    .elements()
                    .filter(|&g| poset.leq(poset.act(g, i), j))
                    .count();
                assert_eq!(total, brute);
            }
            let stab = poset.stabilizer(i).unwrap();
            assert_eq!(c.hom(i, i).len(), stab.order() / poset.link(i).order());
        }
    }

    #[test]
    fn corrupted_composition_is_caught() {
        let (_, mut c) = gl22_rbs();
        let empty = 3;
        let endos: Vec<MorphId> = c.hom_range(empty, empty).collect();
        let (f, g) = (endos[1], endos[2]);
        let honest = c.compose(g, f);
        let wrong = *endos.iter().find(|&&x| x != honest).unwrap();
        c.corrupt_composite(g, f, wrong);
        let report = c.check_axioms();
        assert!(!report.passed());
        assert!(report.violations.len() <= MAX_REPORTED_VIOLATIONS);
        assert!(report.violations.iter().any(|v| matches!(
            v,
            AxiomViolation::Associativity { .. }
                | AxiomViolation::UnitLaw { .. }
                | AxiomViolation::NotWellDefined { .. }
        )));
    }

    #[test]
    fn gl32_axioms_pass() {
        let flags = FlagPoset::new(3, 2).unwrap();
        let c = build_category(flags.gposet()).unwrap();
        assert_eq!(c.num_objects(), 36);
        let report = c.check_axioms();
        assert!(report.passed());
        assert!(report.triples_checked > 0);
    }

    #[test]
    fn full_subcategories() {
        let (_, c) = gl22_rbs();
        assert_eq!(c.full_subcategory(&[0, 1, 2, 3]).unwrap(), c);
        let top = c.full_subcategory(&[3]).unwrap();
        assert_eq!(top.hom_sizes(), vec![vec![6]]);
        let lines = c.full_subcategory(&[0, 1, 2]).unwrap();
        assert!(lines.hom_sizes().iter().flatten().all(|&s| s == 1));
        assert!(lines.check_axioms().passed());
        assert_eq!(
            c.full_subcategory(&[]).unwrap_err(),
            CategoryError::EmptySelection
        );
    }

    #[test]
    fn opposites() {
        let (_, c) = gl22_rbs();
        let op = c.opposite().unwrap();
        assert_eq!(op.opposite().unwrap(), c);
        let sizes = c.hom_sizes();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(op.hom(i, j).len(), sizes[j][i]);
            }
        }
        // One-object group category: the opposite multiplies in reverse, and
        // inversion is an isomorphism back.
        let group = c.group().clone();
        let bg = build_category(&point(&group)).unwrap();
        let bg_op = bg.opposite().unwrap();
        for f in 0..bg.num_morphisms() {
            for g in 0..bg.num_morphisms() {
                let (a, b) = (bg.morphism(f).rep, bg.morphism(g).rep);
                assert_eq!(bg_op.morphism(bg_op.compose(g, f)).rep, group.mul(a, b));
                let inv = |x: MorphId| bg_op.class_of(0, 0, group.inv(bg.morphism(x).rep)).unwrap();
                assert_eq!(inv(bg.compose(g, f)), bg_op.compose(inv(g), inv(f)));
            }
        }
    }
}
