//! Finite posets with a group action and a link subgroup at every element.
//!
//! The poset order is a dense boolean table and the action a full table
//! indexed by group element, so every standing hypothesis can be checked
//! exhaustively.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::group::{Elem, FinGroup, Subgroup};
use crate::schema::{self, child, SchemaError};

/// Above this many `(g, h, item)` triples the composition law is checked
/// against the group generators only, which is equivalent.
const FULL_COMPOSITION_CHECK_LIMIT: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GPosetError {
    #[error("malformed G-poset: {0}")]
    Shape(String),
    #[error("link subgroup of item {item} is not contained in its stabiliser")]
    LinkNotInStabilizer { item: usize },
    #[error("orbit relation is not antisymmetric between classes {a} and {b}")]
    NotAPartialOrder { a: usize, b: usize },
}

/// Raw data of a G-poset, for construction and for deliberate modification.
#[derive(Clone, Debug)]
pub struct GPosetParts {
    pub group: Arc<FinGroup>,
    pub items: Vec<String>,
    /// Row-major `n x n`; `leq[i * n + j]` means `i <= j`.
    pub leq: Vec<bool>,
    /// Row-major `|G| x n`; `action[g * n + i]` is `g.i`.
    pub action: Vec<u32>,
    pub links: Vec<Subgroup>,
}

#[derive(Clone, Debug)]
pub struct GPoset {
    parts: GPosetParts,
}

impl GPoset {
    /// Checks shapes and index ranges only; see [`GPoset::validate_action`]
    /// and [`GPoset::validate_links`] for the mathematical conditions.
    pub fn new(parts: GPosetParts) -> Result<GPoset, GPosetError> {
        let n = parts.items.len();
        let order = parts.group.order();
        if parts.leq.len() != n * n {
            return Err(GPosetError::Shape(format!(
                "order table has {} cells, expected {}",
                parts.leq.len(),
                n * n
            )));
        }
        if parts.action.len() != order * n {
            return Err(GPosetError::Shape(format!(
                "action table has {} cells, expected {}",
                parts.action.len(),
                order * n
            )));
        }
        if let Some(bad) = parts.action.iter().position(|&x| x as usize >= n) {
            return Err(GPosetError::Shape(format!(
                "action entry [{}][{}] is out of range",
                bad / n,
                bad % n
            )));
        }
        if parts.links.len() != n {
            return Err(GPosetError::Shape(format!(
                "{} links for {n} items",
                parts.links.len()
            )));
        }
        if parts
            .links
            .iter()
            .any(|l| !Arc::ptr_eq(l.group(), &parts.group))
        {
            return Err(GPosetError::Shape(
                "a link subgroup belongs to a different group".into(),
            ));
        }
        let mut names: Vec<&String> = parts.items.iter().collect();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(GPosetError::Shape("item names are not unique".into()));
        }
        Ok(GPoset { parts })
    }

    pub fn into_parts(self) -> GPosetParts {
        self.parts
    }

    pub fn parts(&self) -> &GPosetParts {
        &self.parts
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.parts.group
    }

    pub fn items(&self) -> &[String] {
        &self.parts.items
    }

    pub fn len(&self) -> usize {
        self.parts.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.items.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.parts.leq[i * self.len() + j]
    }

    /// `g.i`.
    pub fn act(&self, g: Elem, i: usize) -> usize {
        self.parts.action[g.index() * self.len() + i] as usize
    }

    pub fn link(&self, i: usize) -> &Subgroup {
        &self.parts.links[i]
    }

    /// Copy of this G-poset with every link replaced by the trivial subgroup.
    pub fn with_trivial_links(&self) -> GPoset {
        let mut parts = self.parts.clone();
        let trivial = Subgroup::trivial(&parts.group);
        parts.links = vec![trivial; parts.items.len()];
        GPoset { parts }
    }

    /// `{g : g.i = i}`; errors if the link at `i` is not inside it.
    pub fn stabilizer(&self, i: usize) -> Result<Subgroup, GPosetError> {
        let stab = self.raw_stabilizer(i);
        if self.link(i).is_subgroup_of(&stab) {
            Ok(stab)
        } else {
            Err(GPosetError::LinkNotInStabilizer { item: i })
        }
    }

    fn raw_stabilizer(&self, i: usize) -> Subgroup {
        let fixing = self
            .group()
            .elements()
            .map(|g| self.act(g, i) == i)
            .collect();
        Subgroup::from_closed_mask(self.group(), fixing)
    }

    /// Partial-order axioms, action axioms, order preservation, and absence of
    /// `g.i < i`.
    pub fn validate_action(&self) -> ActionReport {
        let n = self.len();
        let group = self.group();
        let mut violations = Vec::new();
        for i in 0..n {
            if !self.leq(i, i) {
                violations.push(ActionViolation::NotReflexive { item: i });
            }
            for j in i + 1..n {
                if self.leq(i, j) && self.leq(j, i) {
                    violations.push(ActionViolation::NotAntisymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| self.leq(i, j)) {
                for k in (0..n).filter(|&k| self.leq(j, k)) {
                    if !self.leq(i, k) {
                        violations.push(ActionViolation::NotTransitive { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            if self.act(Elem::IDENTITY, i) != i {
                violations.push(ActionViolation::IdentityMoves { item: i });
            }
        }
        let full = group.order() * group.order() * n <= FULL_COMPOSITION_CHECK_LIMIT;
        let right_factors: Vec<Elem> = if full {
            group.elements().collect()
        } else {
            group.generators().to_vec()
        };
        for g in group.elements() {
            for &h in &right_factors {
                let gh = group.mul(g, h);
                for i in 0..n {
                    if self.act(gh, i) != self.act(g, self.act(h, i)) {
                        violations.push(ActionViolation::NotComposition { g, h, item: i });
                    }
                }
            }
        }
        for g in group.elements() {
            for i in 0..n {
                let gi = self.act(g, i);
                if gi != i && self.leq(gi, i) {
                    violations.push(ActionViolation::StrictDecrease { g, item: i });
                }
                for j in (0..n).filter(|&j| self.leq(i, j)) {
                    if !self.leq(gi, self.act(g, j)) {
                        violations.push(ActionViolation::NotOrderPreserving { g, i, j });
                    }
                }
            }
        }
        ActionReport { violations }
    }

    /// Stabiliser containment, monotonicity `i <= j => L_j <= L_i`, and
    /// equivariance `g L_i g^-1 = L_{g.i}` (as set equality).
    pub fn validate_links(&self) -> LinkReport {
        let n = self.len();
        let mut violations = Vec::new();
        let mut non_normal = Vec::new();
        for i in 0..n {
            let stab = self.raw_stabilizer(i);
            if !self.link(i).is_subgroup_of(&stab) {
                violations.push(LinkViolation::NotInStabilizer { item: i });
            } else if !self.link(i).is_normal_in(&stab) {
                non_normal.push(i);
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| self.leq(i, j)) {
                if !self.link(j).is_subgroup_of(self.link(i)) {
                    violations.push(LinkViolation::NotMonotone { i, j });
                }
            }
        }
        for g in self.group().elements() {
            for i in 0..n {
                let target = self.link(self.act(g, i));
                let source = self.link(i);
                if source.order() != target.order() || !source.conjugates_into(g, target) {
                    violations.push(LinkViolation::NotEquivariant { g, item: i });
                }
            }
        }
        LinkReport {
            violations,
            non_normal,
        }
    }

    /// The induced order on `G`-orbits: `[i] <= [j]` iff `i <= g.j` for some `g`.
    pub fn orbit_poset(&self) -> Result<OrbitPoset, GPosetError> {
        let n = self.len();
        let unassigned = usize::MAX;
        let mut class_of = vec![unassigned; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != unassigned {
                continue;
            }
            let mut orbit: Vec<usize> = self.group().elements().map(|g| self.act(g, i)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                class_of[x] = classes.len();
            }
            classes.push(orbit);
        }
        let m = classes.len();
        let mut leq = vec![false; m * m];
        for i in 0..n {
            for j in 0..n {
                if self.leq(i, j) {
                    leq[class_of[i] * m + class_of[j]] = true;
                }
            }
        }
        for a in 0..m {
            for b in a + 1..m {
                if leq[a * m + b] && leq[b * m + a] {
                    return Err(GPosetError::NotAPartialOrder { a, b });
                }
            }
        }
        Ok(OrbitPoset {
            classes,
            class_of,
            leq,
        })
    }

    /// Parses the poset descriptor
    /// `{"items": [...], "leq": [[i,j],...], "action": [[...],...], "links": {item: [elements]}}`.
    ///
    /// `leq` lists transitively closed pairs; the diagonal is implied. `action`
    /// is indexed `[g][item]`. Link keys are item names (or decimal indices)
    /// and values are generating element indices; omitted links are trivial.
    pub fn from_json(
        group: &Arc<FinGroup>,
        v: &Value,
        pointer: &str,
    ) -> Result<GPoset, SchemaError> {
        let obj = schema::object(v, pointer)?;
        let items_ptr = child(pointer, "items");
        let items: Vec<String> = schema::array(schema::field(obj, "items", pointer)?, &items_ptr)?
            .iter()
            .map(|x| match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        let n = items.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        let leq_ptr = child(pointer, "leq");
        for (k, pair) in schema::array(schema::field(obj, "leq", pointer)?, &leq_ptr)?
            .iter()
            .enumerate()
        {
            let ptr = child(&leq_ptr, k);
            let pair = schema::uint_array(pair, &ptr)?;
            if pair.len() != 2 {
                return Err(SchemaError::new(ptr, "expected a pair [i, j]"));
            }
            for (c, &x) in pair.iter().enumerate() {
                if x as usize >= n {
                    return Err(SchemaError::new(
                        child(&ptr, c),
                        format!("item index {x} out of range"),
                    ));
                }
            }
            leq[pair[0] as usize * n + pair[1] as usize] = true;
        }
        let act_ptr = child(pointer, "action");
        let rows = schema::array(schema::field(obj, "action", pointer)?, &act_ptr)?;
        if rows.len() != group.order() {
            return Err(SchemaError::new(
                &act_ptr,
                format!(
                    "expected {} rows (one per group element), found {}",
                    group.order(),
                    rows.len()
                ),
            ));
        }
        let mut action = Vec::with_capacity(group.order() * n);
        for (g, row) in rows.iter().enumerate() {
            let ptr = child(&act_ptr, g);
            let row = schema::uint_array(row, &ptr)?;
            if row.len() != n {
                return Err(SchemaError::new(
                    ptr,
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            for (i, &x) in row.iter().enumerate() {
                if x as usize >= n {
                    return Err(SchemaError::new(
                        child(&ptr, i),
                        format!("item index {x} out of range"),
                    ));
                }
                action.push(x as u32);
            }
        }
        let mut links = vec![Subgroup::trivial(group); n];
        if let Some(link_obj) = obj.get("links") {
            let links_ptr = child(pointer, "links");
            for (key, gens) in schema::object(link_obj, &links_ptr)? {
                let ptr = child(&links_ptr, key);
                let item = items
                    .iter()
                    .position(|s| s == key)
                    .or_else(|| key.parse::<usize>().ok().filter(|&i| i < n))
                    .ok_or_else(|| SchemaError::new(&ptr, format!("unknown item \"{key}\"")))?;
                let gens = schema::uint_array(gens, &ptr)?;
                let mut seeds = Vec::with_capacity(gens.len());
                for (k, &x) in gens.iter().enumerate() {
                    if x as usize >= group.order() {
                        return Err(SchemaError::new(
                            child(&ptr, k),
                            format!("element index {x} out of range"),
                        ));
                    }
                    seeds.push(Elem::from_index(x as usize));
                }
                links[item] = Subgroup::generate(group, &seeds);
            }
        }
        GPoset::new(GPosetParts {
            group: group.clone(),
            items,
            leq,
            action,
            links,
        })
        .map_err(|e| SchemaError::new(pointer, e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let n = self.len();
        let leq: Vec<[usize; 2]> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| [i, j]))
            .filter(|&[i, j]| self.leq(i, j))
            .collect();
        let action: Vec<Vec<u32>> = self
            .parts
            .action
            .chunks(n.max(1))
            .map(<[u32]>::to_vec)
            .collect();
        let links: Map<String, Value> = (0..n)
            .filter(|&i| !self.link(i).is_trivial())
            .map(|i| (self.items()[i].clone(), json!(self.link(i).generators())))
            .collect();
        json!({"items": self.items(), "leq": leq, "action": if n == 0 { Vec::new() } else { action }, "links": links})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionViolation {
    NotReflexive {
        item: usize,
    },
    NotAntisymmetric {
        i: usize,
        j: usize,
    },
    NotTransitive {
        i: usize,
        j: usize,
        k: usize,
    },
    IdentityMoves {
        item: usize,
    },
    /// `(gh).i != g.(h.i)`.
    NotComposition {
        g: Elem,
        h: Elem,
        item: usize,
    },
    /// `i <= j` but not `g.i <= g.j`.
    NotOrderPreserving {
        g: Elem,
        i: usize,
        j: usize,
    },
    /// `g.i < i`.
    StrictDecrease {
        g: Elem,
        item: usize,
    },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotReflexive { item } => write!(f, "not reflexive at item {item}"),
            Self::NotAntisymmetric { i, j } => write!(f, "not antisymmetric: {i} <= {j} <= {i}"),
            Self::NotTransitive { i, j, k } => {
                write!(f, "not transitive: {i} <= {j} <= {k} but not {i} <= {k}")
            }
            Self::IdentityMoves { item } => write!(f, "identity moves item {item}"),
            Self::NotComposition { g, h, item } => {
                write!(f, "({g}*{h}).{item} != {g}.({h}.{item})")
            }
            Self::NotOrderPreserving { g, i, j } => write!(f, "{g} does not preserve {i} <= {j}"),
            Self::StrictDecrease { g, item } => write!(f, "{g}.{item} < {item}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ActionReport {
    pub violations: Vec<ActionViolation>,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether some violation involves the action entry `(g, item)` directly,
    /// i.e. reads `g.item` on either side of a failed law.
    pub fn implicates(&self, group: &FinGroup, poset: &GPoset, g: Elem, item: usize) -> bool {
        self.violations.iter().any(|v| match *v {
            ActionViolation::NotComposition {
                g: a,
                h: b,
                item: i,
            } => {
                (group.mul(a, b) == g && i == item)
                    || (a == g && poset.act(b, i) == item)
                    || (b == g && i == item)
            }
            ActionViolation::NotOrderPreserving { g: a, i, j } => {
                a == g && (i == item || j == item)
            }
            ActionViolation::StrictDecrease { g: a, item: i } => a == g && i == item,
            ActionViolation::IdentityMoves { item: i } => g.is_identity() && i == item,
            _ => false,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkViolation {
    NotInStabilizer {
        item: usize,
    },
    /// `i <= j` but `L_j` is not inside `L_i`.
    NotMonotone {
        i: usize,
        j: usize,
    },
    /// `g L_i g^-1 != L_{g.i}`.
    NotEquivariant {
        g: Elem,
        item: usize,
    },
}

impl fmt::Display for LinkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotInStabilizer { item } => {
                write!(f, "link of item {item} is not inside its stabiliser")
            }
            Self::NotMonotone { i, j } => {
                write!(f, "{i} <= {j} but link({j}) is not inside link({i})")
            }
            Self::NotEquivariant { g, item } => {
                write!(f, "{g} link({item}) {g}^-1 is not the link of {g}.{item}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LinkReport {
    pub violations: Vec<LinkViolation>,
    /// Items whose link is not normal in the stabiliser. Recorded, not an error.
    pub non_normal: Vec<usize>,
}

impl LinkReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The quotient poset `G \ I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoset {
    /// Orbits, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    leq: Vec<bool>,
}

impl OrbitPoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// Number of pairs `a < b`.
    pub fn strict_relations(&self) -> usize {
        let m = self.len();
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq(a, b))
            .count()
    }
}

/// A poset on `items` with the trivial group acting, all links trivial.
pub fn trivial_action(items: Vec<String>, leq: Vec<bool>) -> Result<GPoset, GPosetError> {
    let group = Arc::new(FinGroup::from_permutations(0, &[], 1).expect("trivial group"));
    let n = items.len();
    GPoset::new(GPosetParts {
        links: vec![Subgroup::trivial(&group); n],
        action: (0..n as u32).collect(),
        group,
        items,
        leq,
    })
}

/// One-point poset with `group` acting trivially and trivial link: its
/// category is the group itself.
pub fn point(group: &Arc<FinGroup>) -> GPoset {
    GPoset::new(GPosetParts {
        group: group.clone(),
        items: vec!["*".into()],
        leq: vec![true],
        action: vec![0; group.order()],
        links: vec![Subgroup::trivial(group)],
    })
    .expect("well-formed point")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> GPoset {
        let items = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n * n).map(|c| c / n <= c % n).collect();
        trivial_action(items, leq).unwrap()
    }

    #[test]
    fn one_point_trivial_group_passes() {
        let p = chain(1);
        assert!(p.validate_action().passed());
        assert!(p.validate_links().passed());
        assert!(p.stabilizer(0).unwrap().is_trivial());
    }

    #[test]
    fn trivial_action_orbit_poset_is_the_poset() {
        let p = chain(3);
        let o = p.orbit_poset().unwrap();
        assert_eq!(o.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(o.leq(o.class_of[i], o.class_of[j]), p.leq(i, j));
            }
        }
    }

    #[test]
    fn detects_broken_order() {
        let mut parts = chain(3).into_parts();
        let at = |i: usize, j: usize| i * 3 + j;
        parts.leq[at(2, 0)] = true; // 2 <= 0 as well as 0 <= 2
        parts.leq[at(0, 2)] = true;
        parts.leq[at(1, 1)] = false;
        let report = GPoset::new(parts).unwrap().validate_action();
        assert!(report
            .violations
            .contains(&ActionViolation::NotAntisymmetric { i: 0, j: 2 }));
        assert!(report
            .violations
            .contains(&ActionViolation::NotReflexive { item: 1 }));
    }

    #[test]
    fn detects_strict_decrease() {
        // Z/2 swapping 0 and 1 in the chain 0 < 1: order preserved fails and
        // 1 moves below itself.
        let group = Arc::new(FinGroup::from_permutations(2, &[vec![1, 0]], 10).unwrap());
        let poset = GPoset::new(GPosetParts {
            links: vec![Subgroup::trivial(&group); 2],
            group,
            items: vec!["a".into(), "b".into()],
            leq: vec![true, true, false, true],
            action: vec![0, 1, 1, 0],
        })
        .unwrap();
        let report = poset.validate_action();
        assert!(report
            .violations
            .contains(&ActionViolation::StrictDecrease {
                g: Elem::from_index(1),
                item: 1
            }));
        assert!(!report.passed());
    }

    #[test]
    fn shape_errors() {
        let mut parts = chain(2).into_parts();
        parts.action.pop();
        assert!(matches!(GPoset::new(parts), Err(GPosetError::Shape(_))));
        let mut parts = chain(2).into_parts();
        parts.items[1] = "0".into();
        assert!(matches!(GPoset::new(parts), Err(GPosetError::Shape(_))));
    }

    #[test]
    fn json_round_trip() {
        let group = Arc::new(FinGroup::from_permutations(2, &[vec![1, 0]], 10).unwrap());
        let v = json!({"items": ["x", "y", "top"], "leq": [[0, 2], [1, 2]], "action": [[0, 1, 2], [1, 0, 2]], "links": {"top": []}});
        let p = GPoset::from_json(&group, &v, "").unwrap();
        assert!(p.validate_action().passed());
        assert!(p.validate_links().passed());
        let again = GPoset::from_json(&group, &p.to_json(), "").unwrap();
        assert_eq!(again.parts().leq, p.parts().leq);
        assert_eq!(again.parts().action, p.parts().action);

        let bad = json!({"items": ["x"], "leq": [], "action": [[0], [3]]});
        assert_eq!(
            GPoset::from_json(&group, &bad, "/poset")
                .unwrap_err()
                .pointer,
            "/poset/action/1/0"
        );
    }
}
