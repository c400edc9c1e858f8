use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use super::{Elem, FinGroup, GroupError};

/// A subgroup of a [`FinGroup`], stored as its sorted member list.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FinGroup>,
    members: Vec<Elem>,
    mask: Vec<bool>,
    generators: OnceLock<Vec<Elem>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("members", &self.members)
            .finish()
    }
}

/// Closure of `seeds` under multiplication, as a membership mask.
fn closure_mask(group: &FinGroup, seeds: &[Elem]) -> Vec<bool> {
    let mut mask = vec![false; group.order()];
    mask[0] = true;
    let mut queue = VecDeque::from([Elem::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for &s in seeds {
            let y = group.mul(x, s);
            if !std::mem::replace(&mut mask[y.index()], true) {
                queue.push_back(y);
            }
        }
    }
    mask
}

impl Subgroup {
    fn from_mask(group: Arc<FinGroup>, mask: Vec<bool>) -> Subgroup {
        let members = mask
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m)
            .map(|(i, _)| Elem::from_index(i))
            .collect();
        Subgroup {
            group,
            members,
            mask,
            generators: OnceLock::new(),
        }
    }

    /// Wraps a membership mask the caller knows to be a subgroup, such as the
    /// set of elements fixing a point under an action.
    pub(crate) fn from_closed_mask(group: &Arc<FinGroup>, mask: Vec<bool>) -> Subgroup {
        Self::from_mask(group.clone(), mask)
    }

    /// Smallest subgroup containing `seeds`.
    pub fn generate(group: &Arc<FinGroup>, seeds: &[Elem]) -> Subgroup {
        Self::from_mask(group.clone(), closure_mask(group, seeds))
    }

    pub fn trivial(group: &Arc<FinGroup>) -> Subgroup {
        Self::generate(group, &[])
    }

    pub fn whole(group: &Arc<FinGroup>) -> Subgroup {
        Self::from_mask(group.clone(), vec![true; group.order()])
    }

    /// Builds a subgroup from an explicit member set, checking closure.
    pub fn from_members(group: &Arc<FinGroup>, members: &[Elem]) -> Option<Subgroup> {
        let mut mask = vec![false; group.order()];
        for &m in members {
            *mask.get_mut(m.index())? = true;
        }
        let sub = Self::from_mask(group.clone(), mask);
        let closed = sub.contains(Elem::IDENTITY)
            && sub.members.iter().all(|&a| {
                sub.contains(group.inv(a))
                    && sub.members.iter().all(|&b| sub.contains(group.mul(a, b)))
            });
        closed.then_some(sub)
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.mask[a.index()]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members.iter().all(|&a| other.contains(a))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut mask = vec![false; self.group.order()];
            mask[0] = true;
            for &a in &self.members {
                if !mask[a.index()] {
                    gens.push(a);
                    mask = closure_mask(&self.group, &gens);
                }
            }
            gens
        })
    }

    /// `{g h g^-1 : h in H}`.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let mut mask = vec![false; self.group.order()];
        for &h in &self.members {
            mask[self.group.conjugate(g, h).index()] = true;
        }
        Self::from_mask(self.group.clone(), mask)
    }

    /// Whether `g H g^-1 <= K`.
    pub fn conjugates_into(&self, g: Elem, k: &Subgroup) -> bool {
        self.order() <= k.order()
            && self
                .generators()
                .iter()
                .all(|&h| k.contains(self.group.conjugate(g, h)))
    }

    pub fn is_normalized_by(&self, g: Elem) -> bool {
        self.conjugates_into(g, self)
    }

    /// Normaliser in the parent group.
    pub fn normalizer(&self) -> Subgroup {
        self.normalizer_in(&Subgroup::whole(&self.group))
    }

    /// `N_K(H) = {k in K : k H k^-1 = H}`.
    pub fn normalizer_in(&self, within: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.group.order()];
        for &k in &within.members {
            if self.is_normalized_by(k) {
                mask[k.index()] = true;
            }
        }
        Self::from_mask(self.group.clone(), mask)
    }

    /// Whether `self` is normal in `within` (which must contain it).
    pub fn is_normal_in(&self, within: &Subgroup) -> bool {
        self.is_subgroup_of(within)
            && within
                .generators()
                .iter()
                .all(|&g| self.is_normalized_by(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| a && b)
            .collect();
        Self::from_mask(self.group.clone(), mask)
    }

    /// Subgroup generated by `self` and extra elements.
    pub fn join(&self, extra: &[Elem]) -> Subgroup {
        let mut seeds = self.generators().to_vec();
        seeds.extend_from_slice(extra);
        Subgroup::generate(&self.group, &seeds)
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        super::p_part(self.order(), p) == self.order()
    }

    /// A Sylow `p`-subgroup, grown greedily: a `p`-subgroup `P` that is not yet
    /// Sylow is extended by the first element `x` of `N_H(P) \ P` with
    /// `x^p in P`.
    pub fn sylow(&self, p: u32) -> Subgroup {
        let target = super::p_part(self.order(), p);
        let mut sylow = Subgroup::trivial(&self.group);
        while sylow.order() < target {
            let normalizer = sylow.normalizer_in(self);
            let x = normalizer
                .members
                .iter()
                .copied()
                .find(|&x| !sylow.contains(x) && sylow.contains(self.group.pow(x, p as u64)))
                .expect(
                    "a p-subgroup below Sylow order has a proper p-extension in its normaliser",
                );
            sylow = sylow.join(&[x]);
        }
        sylow
    }

    /// `O_p(H)`: the intersection of the `H`-conjugates of a Sylow `p`-subgroup.
    pub fn o_p(&self, p: u32) -> Subgroup {
        let sylow = self.sylow(p);
        let mut core = sylow.clone();
        for &h in &self.members {
            if core.is_trivial() {
                break;
            }
            if !sylow.is_normalized_by(h) {
                core = core.intersection(&sylow.conjugate(h));
            }
        }
        debug_assert!(core.is_normal_in(self));
        core
    }
}

/// Smallest normal subgroup of `group` containing every seed: alternates
/// closure and conjugation by the group's generators until stable.
pub fn normal_closure(group: &Arc<FinGroup>, seeds: &[Subgroup]) -> Subgroup {
    let gens: Vec<Elem> = seeds
        .iter()
        .flat_map(|s| s.generators().iter().copied())
        .collect();
    let mut current = Subgroup::generate(group, &gens);
    loop {
        let fresh: Vec<Elem> = group
            .generators()
            .iter()
            .flat_map(|&g| {
                current
                    .generators()
                    .iter()
                    .map(move |&h| group.conjugate(g, h))
            })
            .filter(|&c| !current.contains(c))
            .collect();
        if fresh.is_empty() {
            return current;
        }
        current = current.join(&fresh);
    }
}

/// `{g : g H g^-1 <= K}`, in index order.
pub fn transporter(h: &Subgroup, k: &Subgroup) -> Vec<Elem> {
    if h.order() > k.order() {
        return Vec::new();
    }
    h.group
        .elements()
        .filter(|&g| h.conjugates_into(g, k))
        .collect()
}

/// A quotient `G/N` with the projection from `G`.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: Arc<FinGroup>,
    /// `projection[g]` is the coset of `g`.
    pub projection: Vec<Elem>,
}

impl QuotientGroup {
    pub fn project(&self, g: Elem) -> Elem {
        self.projection[g.index()]
    }
}

/// Forms `G/N`. Cosets are numbered by their smallest member, so the coset of
/// the identity is 0.
pub fn quotient_group(
    group: &Arc<FinGroup>,
    normal: &Subgroup,
) -> Result<QuotientGroup, GroupError> {
    if !normal.is_normal_in(&Subgroup::whole(group)) {
        return Err(GroupError::NotNormal);
    }
    let unassigned = u32::MAX;
    let mut coset = vec![unassigned; group.order()];
    let mut reps = Vec::new();
    for g in group.elements() {
        if coset[g.index()] == unassigned {
            let id = reps.len() as u32;
            for &n in normal.members() {
                coset[group.mul(g, n).index()] = id;
            }
            reps.push(g);
        }
    }
    let q = reps.len();
    if q > super::DENSE_TABLE_LIMIT {
        return Err(GroupError::CapExceeded {
            cap: super::DENSE_TABLE_LIMIT,
        });
    }
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[group.mul(a, b).index()]);
        }
    }
    let generators = group
        .generators()
        .iter()
        .map(|g| Elem(coset[g.index()]))
        .collect();
    Ok(QuotientGroup {
        group: Arc::new(FinGroup::from_table(q, table, generators)),
        projection: coset.into_iter().map(Elem).collect(),
    })
}
