//! Edge-path presentations of the fundamental group of a nerve, coset
//! enumeration, and the comparison with `G/E`.

use num_traits::One;
use serde_json::{json, Value};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use super::chain::{Coefficients, HomologyGroup};
use super::snf::{smith_invariants, IntMatrix};
use super::HomotopyError;
use crate::category::{Category, MorphId, MulOrder};
use crate::gposet::GPoset;
use crate::group::{normal_closure, quotient_group, Elem, Subgroup};

/// Default bound on live cosets.
pub const DEFAULT_MAX_COSETS: usize = 10_000;

/// A finite presentation. Relator letters are signed 1-based generator
/// indices: `3` is the third generator, `-3` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<i32>>) -> Presentation {
        let n = generators.len() as i32;
        assert!(
            relators.iter().flatten().all(|&x| x != 0 && x.abs() <= n),
            "relator letters must name declared generators"
        );
        Presentation {
            generators,
            relators,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"generators": self.generators, "relators": self.relators})
    }

    /// Removes generators killed by one-letter relators, then freely and
    /// cyclically reduces every relator and drops empty or repeated ones.
    pub fn simplified(&self) -> Presentation {
        let killed: HashSet<i32> = self
            .relators
            .iter()
            .filter(|r| r.len() == 1)
            .map(|r| r[0].abs())
            .collect();
        let mut renumber = HashMap::new();
        let mut generators = Vec::new();
        for (k, name) in self.generators.iter().enumerate() {
            let g = k as i32 + 1;
            if !killed.contains(&g) {
                generators.push(name.clone());
                renumber.insert(g, generators.len() as i32);
            }
        }
        let mut seen = HashSet::new();
        let mut relators = Vec::new();
        for r in &self.relators {
            let word: Vec<i32> = r
                .iter()
                .filter(|x| !killed.contains(&x.abs()))
                .map(|&x| x.signum() * renumber[&x.abs()])
                .collect();
            let word = cyclically_reduce(free_reduce(&word));
            if !word.is_empty() && seen.insert(word.clone()) {
                relators.push(word);
            }
        }
        Presentation {
            generators,
            relators,
        }
    }
}

fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclically_reduce(mut word: Vec<i32>) -> Vec<i32> {
    while word.len() >= 2 && word[0] == -word[word.len() - 1] {
        word.pop();
        word.remove(0);
    }
    word
}

/// The abelianisation, from the Smith form of the exponent-sum matrix.
pub fn abelianization(presentation: &Presentation) -> HomologyGroup {
    let n = presentation.generators.len();
    let columns = presentation
        .relators
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| ((x.unsigned_abs() - 1), x.signum() as i64))
                .collect()
        })
        .collect();
    let invariants = smith_invariants(&IntMatrix::from_columns(n, columns));
    HomologyGroup {
        coefficients: Coefficients::Integers,
        degree: 1,
        rank: n - invariants.len(),
        torsion: invariants.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetOutcome {
    /// The enumeration closed with this many cosets.
    Order(usize),
    /// The bound on live cosets was reached and a lookahead pass freed nothing.
    Inconclusive { live: usize, defined: usize },
}

impl fmt::Display for CosetOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetOutcome::Order(n) => write!(f, "order {n}"),
            CosetOutcome::Inconclusive { live, defined } => {
                write!(f, "inconclusive ({live} live cosets, {defined} defined)")
            }
        }
    }
}

/// Transcript of a coset enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetEnumeration {
    pub outcome: CosetOutcome,
    pub defined: usize,
    pub max_live: usize,
    pub lookaheads: usize,
}

const NONE: u32 = u32::MAX;
const MAX_TABLE_CELLS: usize = 1 << 26;

/// HLT coset enumeration over the trivial subgroup with coincidence handling.
struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_live: usize,
    queue: Vec<u32>,
    defined_limit: usize,
}

impl CosetTable {
    fn new(gens: usize) -> CosetTable {
        let cols = 2 * gens;
        CosetTable {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            max_live: 1,
            queue: Vec::new(),
            defined_limit: usize::MAX,
        }
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> u32 {
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.live += 1;
        self.max_live = self.max_live.max(self.live);
        d
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(dead, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let (e, f) = (self.rep(dead), self.rep(d));
                let ex = self.get(e, x);
                let fx = self.get(f, x ^ 1);
                if ex != NONE {
                    self.merge(f, ex);
                } else if fx != NONE {
                    self.merge(e, fx);
                } else {
                    self.set(e, x, f);
                    self.set(f, x ^ 1, e);
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `word` at coset `c`, defining new cosets while fewer than `bound`
    /// are live. Returns `false` if a definition was needed but not allowed.
    fn scan(&mut self, c: u32, word: &[usize], bound: usize) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len());
        loop {
            while i < j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i && self.get(b, word[j - 1] ^ 1) != NONE {
                b = self.get(b, word[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return true;
            }
            if self.live >= bound || self.parent.len() >= self.defined_limit {
                return false;
            }
            self.define(f, word[i]);
        }
    }

    /// Scans every live coset under every relator without defining anything;
    /// returns whether some coset was freed.
    fn lookahead(&mut self, relators: &[Vec<usize>]) -> bool {
        let before = self.live;
        for d in 0..self.parent.len() as u32 {
            for r in relators {
                if !self.alive(d) {
                    break;
                }
                self.scan(d, r, 0);
            }
        }
        self.live < before
    }
}

fn column(letter: i32) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    2 * g + usize::from(letter < 0)
}

/// Order of the presented group by HLT enumeration with at most `bound` live
/// cosets. Reaching the bound triggers a lookahead pass; if that frees no
/// coset the result is [`CosetOutcome::Inconclusive`].
pub fn coset_enumeration(presentation: &Presentation, bound: usize) -> CosetEnumeration {
    assert!(bound >= 1);
    let pres = presentation.simplified();
    let relators: Vec<Vec<usize>> = pres
        .relators
        .iter()
        .map(|r| r.iter().map(|&x| column(x)).collect())
        .collect();
    let mut t = CosetTable::new(pres.generators.len());
    let mut lookaheads = 0;
    let inconclusive = |t: &CosetTable, lookaheads| {
        let defined = t.parent.len();
        CosetEnumeration {
            outcome: CosetOutcome::Inconclusive {
                live: t.live,
                defined,
            },
            defined,
            max_live: t.max_live,
            lookaheads,
        }
    };
    // Dead rows stay allocated, so also cap the total number of definitions.
    let defined_limit = (20 * bound).min(MAX_TABLE_CELLS / t.cols.max(1)).max(bound);
    t.defined_limit = defined_limit;
    let mut c: u32 = 0;
    'cosets: while (c as usize) < t.parent.len() {
        let mut k = 0;
        while k < relators.len() && t.alive(c) {
            if t.scan(c, &relators[k], bound) {
                k += 1;
                continue;
            }
            lookaheads += 1;
            if !t.lookahead(&relators) {
                return inconclusive(&t, lookaheads);
            }
        }
        for x in 0..t.cols {
            if !t.alive(c) {
                break;
            }
            if t.get(c, x) == NONE {
                if t.parent.len() >= defined_limit {
                    return inconclusive(&t, lookaheads);
                }
                if t.live >= bound {
                    lookaheads += 1;
                    if !t.lookahead(&relators) {
                        return inconclusive(&t, lookaheads);
                    }
                    // Rescan this coset from the start.
                    continue 'cosets;
                }
                t.define(c, x);
            }
        }
        c += 1;
    }
    CosetEnumeration {
        outcome: CosetOutcome::Order(t.live),
        defined: t.parent.len(),
        max_live: t.max_live,
        lookaheads,
    }
}

/// An edge-path presentation of `pi_1` of a nerve at a basepoint.
#[derive(Clone, Debug)]
pub struct Pi1Presentation {
    pub presentation: Presentation,
    pub basepoint: usize,
    /// Objects of the basepoint's component, in breadth-first order.
    pub component: Vec<usize>,
    /// The morphism behind each generator.
    pub generator_morphisms: Vec<MorphId>,
    /// Whether each generator is a spanning-tree edge.
    pub tree: Vec<bool>,
}

/// Generators are the non-identity morphisms of the basepoint's component;
/// relators kill the breadth-first spanning tree and impose `g f = c` for each
/// composable pair `f` then `g` with composite `c` (dropping `c` when it is an
/// identity).
pub fn pi1_presentation(
    category: &Category,
    basepoint: usize,
) -> Result<Pi1Presentation, HomotopyError> {
    let n = category.num_objects();
    if basepoint >= n {
        return Err(HomotopyError::UnknownObject(basepoint));
    }
    let mut incident = vec![Vec::new(); n];
    for (f, m) in category.morphisms().iter().enumerate() {
        if !category.is_identity(f) {
            incident[m.src].push(f);
            if m.dst != m.src {
                incident[m.dst].push(f);
            }
        }
    }
    let mut visited = vec![false; n];
    visited[basepoint] = true;
    let mut component = vec![basepoint];
    let mut tree_edges = HashSet::new();
    let mut queue = VecDeque::from([basepoint]);
    while let Some(u) = queue.pop_front() {
        for &f in &incident[u] {
            let m = category.morphism(f);
            let other = if m.src == u { m.dst } else { m.src };
            if !visited[other] {
                visited[other] = true;
                tree_edges.insert(f);
                component.push(other);
                queue.push_back(other);
            }
        }
    }
    let generator_morphisms: Vec<MorphId> = (0..category.num_morphisms())
        .filter(|&f| !category.is_identity(f) && visited[category.morphism(f).src])
        .collect();
    let letter: HashMap<MorphId, i32> = generator_morphisms
        .iter()
        .enumerate()
        .map(|(k, &f)| (f, k as i32 + 1))
        .collect();
    let mut relators: Vec<Vec<i32>> = generator_morphisms
        .iter()
        .filter(|f| tree_edges.contains(f))
        .map(|f| vec![letter[f]])
        .collect();
    for &f in &generator_morphisms {
        for g in category
            .out_range(category.morphism(f).dst)
            .filter(|&g| !category.is_identity(g))
        {
            let c = category.compose(g, f);
            let mut word = vec![letter[&g], letter[&f]];
            if !category.is_identity(c) {
                word.push(-letter[&c]);
            }
            relators.push(word);
        }
    }
    let generators = generator_morphisms
        .iter()
        .map(|&f| {
            let m = category.morphism(f);
            format!("[{}]:{}->{}", m.rep, m.src, m.dst)
        })
        .collect();
    let tree = generator_morphisms
        .iter()
        .map(|f| tree_edges.contains(f))
        .collect();
    Ok(Pi1Presentation {
        presentation: Presentation::new(generators, relators),
        basepoint,
        component,
        generator_morphisms,
        tree,
    })
}

/// `E`: the normal closure of all link subgroups.
pub fn e_subgroup(poset: &GPoset) -> Subgroup {
    let links: Vec<Subgroup> = (0..poset.len()).map(|i| poset.link(i).clone()).collect();
    normal_closure(poset.group(), &links)
}

/// Outcome of comparing `pi_1` with `G/E`.
#[derive(Clone, Debug)]
pub struct Pi1Report {
    pub generators: usize,
    pub relators: usize,
    pub e_order: usize,
    pub quotient_order: usize,
    /// Index of the first relator whose image in `G/E` is not trivial.
    pub relators_hold: Result<(), usize>,
    pub surjective: bool,
    pub enumeration: CosetEnumeration,
    pub abelianization: HomologyGroup,
}

impl Pi1Report {
    pub fn passed(&self) -> bool {
        self.relators_hold.is_ok()
            && self.surjective
            && self.enumeration.outcome == CosetOutcome::Order(self.quotient_order)
    }

    pub fn to_json(&self) -> Value {
        let order = match self.enumeration.outcome {
            CosetOutcome::Order(n) => json!(n),
            CosetOutcome::Inconclusive { .. } => Value::Null,
        };
        json!({
            "generators": self.generators,
            "relators": self.relators,
            "e_order": self.e_order,
            "quotient_order": self.quotient_order,
            "relators_hold": self.relators_hold.is_ok(),
            "failing_relator": self.relators_hold.err(),
            "surjective": self.surjective,
            "pi1_order": order,
            "enumeration": {
                "outcome": self.enumeration.outcome.to_string(),
                "defined": self.enumeration.defined,
                "max_live": self.enumeration.max_live,
                "lookaheads": self.enumeration.lookaheads,
            },
            "abelianization": self.abelianization.to_json(),
            "pass": self.passed(),
        })
    }
}

/// Builds `rho: pi_1 -> G/E` from vertex potentials along the spanning tree
/// and checks that it is a well-defined surjection between groups of equal order.
pub fn pi1_vs_quotient(
    category: &Category,
    poset: &GPoset,
    basepoint: usize,
    max_cosets: usize,
) -> Result<Pi1Report, HomotopyError> {
    if category.mul_order() != MulOrder::LaterLeft || category.objects() != poset.items() {
        return Err(HomotopyError::Incompatible(
            "the category must be built from the given G-poset".into(),
        ));
    }
    let pi1 = pi1_presentation(category, basepoint)?;
    if pi1.component.len() != category.num_objects() {
        return Err(HomotopyError::DisconnectedBasepoint {
            basepoint,
            reached: pi1.component.len(),
        });
    }
    let group = poset.group();
    let e = e_subgroup(poset);
    let quotient = quotient_group(group, &e)?;
    let q = &*quotient.group;
    let proj = |g: Elem| quotient.project(g);

    // Potentials: c_base = 1, and a tree edge gamma: u -> v gives c_v = proj(gamma) c_u.
    let mut potential: Vec<Option<Elem>> = vec![None; category.num_objects()];
    potential[basepoint] = Some(Elem::IDENTITY);
    let tree: Vec<MorphId> = pi1
        .generator_morphisms
        .iter()
        .zip(&pi1.tree)
        .filter(|(_, &t)| t)
        .map(|(&f, _)| f)
        .collect();
    // Tree edges were discovered in breadth-first order, so one sweep per level suffices.
    while potential.iter().any(Option::is_none) {
        for &f in &tree {
            let m = category.morphism(f);
            let gamma = proj(m.rep);
            match (potential[m.src], potential[m.dst]) {
                (Some(cu), None) => potential[m.dst] = Some(q.mul(gamma, cu)),
                (None, Some(cv)) => potential[m.src] = Some(q.mul(q.inv(gamma), cv)),
                _ => {}
            }
        }
    }
    let potential: Vec<Elem> = potential.into_iter().map(Option::unwrap).collect();
    let images: Vec<Elem> = pi1
        .generator_morphisms
        .iter()
        .map(|&f| {
            let m = category.morphism(f);
            q.mul(
                q.mul(q.inv(potential[m.dst]), proj(m.rep)),
                potential[m.src],
            )
        })
        .collect();
    let evaluate = |word: &[i32]| {
        word.iter().fold(Elem::IDENTITY, |acc, &x| {
            let image = images[(x.unsigned_abs() - 1) as usize];
            q.mul(acc, if x > 0 { image } else { q.inv(image) })
        })
    };
    let relators_hold = match pi1
        .presentation
        .relators
        .iter()
        .position(|r| !evaluate(r).is_identity())
    {
        None => Ok(()),
        Some(k) => Err(k),
    };
    let image_group = Subgroup::generate(&quotient.group, &images);
    let surjective = image_group.order() == q.order();
    let enumeration = coset_enumeration(&pi1.presentation, max_cosets);
    Ok(Pi1Report {
        generators: pi1.presentation.generators.len(),
        relators: pi1.presentation.relators.len(),
        e_order: e.order(),
        quotient_order: q.order(),
        relators_hold,
        surjective,
        enumeration,
        abelianization: abelianization(&pi1.presentation),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::build_category;
    use crate::gposet::{point, trivial_action};
    use crate::group::FinGroup;
    use crate::lie::FlagPoset;
    use std::sync::Arc;

    fn pres(gens: usize, relators: &[&[i32]]) -> Presentation {
        Presentation::new(
            (1..=gens).map(|k| format!("x{k}")).collect(),
            relators.iter().map(|r| r.to_vec()).collect(),
        )
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            coset_enumeration(&pres(1, &[&[1, 1]]), 10).outcome,
            CosetOutcome::Order(2)
        );
        let s3 = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        assert_eq!(coset_enumeration(&s3, 100).outcome, CosetOutcome::Order(6));
        assert!(matches!(
            coset_enumeration(&pres(1, &[]), 10).outcome,
            CosetOutcome::Inconclusive { .. }
        ));
        assert_eq!(
            coset_enumeration(&pres(0, &[]), 10).outcome,
            CosetOutcome::Order(1)
        );
        // <a, b | a^3, b^2, (ab)^2> is S_3 again; <a, b | a^2, b^3, (ab)^5> is A_5.
        assert_eq!(
            coset_enumeration(&pres(2, &[&[1, 1, 1], &[2, 2], &[1, 2, 1, 2]]), 100).outcome,
            CosetOutcome::Order(6)
        );
        let a5 = pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]]);
        assert_eq!(
            coset_enumeration(&a5, 1000).outcome,
            CosetOutcome::Order(60)
        );
        // Trivial group with a deceptive presentation: <a, b | b a b^-1 a^-2, a b a^-1 b^-2>.
        let trivial = pres(2, &[&[2, 1, -2, -1, -1], &[1, 2, -1, -2, -2]]);
        assert_eq!(
            coset_enumeration(&trivial, 1000).outcome,
            CosetOutcome::Order(1)
        );
    }

    #[test]
    fn bound_is_respected() {
        let s3 = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        let run = coset_enumeration(&s3, 3);
        assert!(run.max_live <= 3);
        assert!(matches!(run.outcome, CosetOutcome::Inconclusive { .. }));
    }

    #[test]
    fn abelianizations() {
        assert_eq!(abelianization(&pres(1, &[&[1, 1]])).torsion, vec![2.into()]);
        assert_eq!(abelianization(&pres(2, &[])).rank, 2);
        let s3 = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        let h = abelianization(&s3);
        assert_eq!((h.rank, h.torsion.clone()), (0, vec![2.into()]));
    }

    #[test]
    fn simple_presentations() {
        let poset =
            trivial_action(vec!["0".into(), "1".into()], vec![true, true, false, true]).unwrap();
        let interval = build_category(&poset).unwrap();
        let p = pi1_presentation(&interval, 0).unwrap();
        assert_eq!(p.presentation.generators.len(), 1);
        assert_eq!(p.presentation.relators, vec![vec![1]]);
        assert_eq!(
            coset_enumeration(&p.presentation, 10).outcome,
            CosetOutcome::Order(1)
        );

        let z2 = Arc::new(FinGroup::from_permutations(2, &[vec![1, 0]], 10).unwrap());
        let bz2 = build_category(&point(&z2)).unwrap();
        let p = pi1_presentation(&bz2, 0).unwrap();
        assert_eq!(p.presentation.relators, vec![vec![1, 1]]);
    }

    #[test]
    fn disconnected_basepoint() {
        let poset =
            trivial_action(vec!["a".into(), "b".into()], vec![true, false, false, true]).unwrap();
        let c = build_category(&poset).unwrap();
        assert!(matches!(
            pi1_vs_quotient(&c, &poset, 0, 100),
            Err(HomotopyError::DisconnectedBasepoint {
                basepoint: 0,
                reached: 1
            })
        ));
    }

    #[test]
    fn flag_categories() {
        for (n, p, links, expected) in [(2, 2, true, 1), (2, 3, true, 2), (2, 2, false, 6)] {
            let flags = FlagPoset::new(n, p).unwrap();
            let poset = if links {
                flags.gposet().clone()
            } else {
                flags.gposet().with_trivial_links()
            };
            let c = build_category(&poset).unwrap();
            let report = pi1_vs_quotient(&c, &poset, flags.top(), DEFAULT_MAX_COSETS).unwrap();
            assert!(report.passed(), "n={n} p={p}: {:?}", report.to_json());
            assert_eq!(report.quotient_order, expected);
        }
        let flags = FlagPoset::new(2, 3).unwrap();
        assert_eq!(e_subgroup(flags.gposet()).order(), 24);
    }
}
