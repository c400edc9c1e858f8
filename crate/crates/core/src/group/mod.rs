//! Fully enumerated finite groups given by permutation or matrix generators.
//!
//! Every group is closed breadth-first from the identity, so element indices
//! are deterministic: index 0 is the identity, and later indices follow the
//! order in which products with the generators (in input order) were found.

mod descriptor;
mod subgroup;

pub use descriptor::GroupDescriptor;
pub use subgroup::{normal_closure, quotient_group, transporter, QuotientGroup, Subgroup};

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// Groups up to this order keep a dense multiplication table.
const DENSE_TABLE_LIMIT: usize = 2048;

/// Handle to an element of a [`FinGroup`]; index 0 is always the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn from_index(index: usize) -> Elem {
        Elem(u32::try_from(index).expect("element index fits in u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure grew past the order cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("generator {generator} is not a bijection (image {image} repeats)")]
    NotBijection { generator: usize, image: u32 },
    #[error("generator {generator} maps a point to {image}, outside 0..{degree}")]
    PointOutOfRange {
        generator: usize,
        image: u32,
        degree: usize,
    },
    #[error("generator {generator} is not invertible mod {p}")]
    NotInvertible { generator: usize, p: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("generator {generator} has {found} entries, expected {expected}")]
    BadShape {
        generator: usize,
        expected: usize,
        found: usize,
    },
    #[error("subgroup is not normal in its parent group")]
    NotNormal,
}

/// How elements of a group are represented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Permutations of `0..degree`, stored as image arrays; `(a*b)(x) = a(b(x))`.
    Permutation { degree: usize },
    /// Invertible `n x n` matrices over `F_p`, stored row-major.
    Matrix { n: usize, p: u32 },
    /// An abstract group known only through its multiplication table.
    Table,
}

/// A finite group with every element enumerated.
#[derive(Clone, Debug)]
pub struct FinGroup {
    kind: GroupKind,
    forms: Vec<Vec<u32>>,
    lookup: HashMap<Vec<u32>, u32>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    generators: Vec<Elem>,
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.forms == other.forms
            && self.table == other.table
            && self.generators == other.generators
    }
}

impl Eq for FinGroup {}

pub fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn compose_perm(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn compose_matrix(a: &[u32], b: &[u32], n: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k] as u64;
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                let cell = &mut out[i * n + j];
                *cell = ((*cell as u64 + aik * b[k * n + j] as u64) % p as u64) as u32;
            }
        }
    }
    out
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Inverse of a matrix over `F_p` by Gauss-Jordan elimination, or `None` if singular.
pub(crate) fn matrix_inverse(m: &[u32], n: usize, p: u32) -> Option<Vec<u32>> {
    let w = 2 * n;
    let mut aug = vec![0u32; n * w];
    for i in 0..n {
        aug[i * w..i * w + n].copy_from_slice(&m[i * n..i * n + n]);
        aug[i * w + n + i] = 1;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r * w + col] != 0)?;
        if pivot != col {
            for j in 0..w {
                aug.swap(pivot * w + j, col * w + j);
            }
        }
        let scale = inv_mod(aug[col * w + col], p) as u64;
        for j in 0..w {
            aug[col * w + j] = (aug[col * w + j] as u64 * scale % p as u64) as u32;
        }
        for r in 0..n {
            let factor = aug[r * w + col] as u64;
            if r == col || factor == 0 {
                continue;
            }
            for j in 0..w {
                let sub = factor * aug[col * w + j] as u64 % p as u64;
                aug[r * w + j] = ((aug[r * w + j] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
    }
    Some(
        (0..n)
            .flat_map(|i| aug[i * w + n..i * w + w].to_vec())
            .collect(),
    )
}

impl FinGroup {
    /// Closes a set of permutations of `0..degree` under composition.
    pub fn from_permutations(
        degree: usize,
        gens: &[Vec<u32>],
        cap: usize,
    ) -> Result<FinGroup, GroupError> {
        for (g, perm) in gens.iter().enumerate() {
            if perm.len() != degree {
                return Err(GroupError::BadShape {
                    generator: g,
                    expected: degree,
                    found: perm.len(),
                });
            }
            let mut seen = vec![false; degree];
            for &image in perm {
                if image as usize >= degree {
                    return Err(GroupError::PointOutOfRange {
                        generator: g,
                        image,
                        degree,
                    });
                }
                if std::mem::replace(&mut seen[image as usize], true) {
                    return Err(GroupError::NotBijection {
                        generator: g,
                        image,
                    });
                }
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        Self::close(GroupKind::Permutation { degree }, identity, gens, cap)
    }

    /// Closes a set of invertible `n x n` matrices over `F_p` (row-major, entries
    /// reduced mod `p`) under multiplication.
    pub fn from_matrices(
        n: usize,
        p: u32,
        gens: &[Vec<u32>],
        cap: usize,
    ) -> Result<FinGroup, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let mut reduced = Vec::with_capacity(gens.len());
        for (g, m) in gens.iter().enumerate() {
            if m.len() != n * n {
                return Err(GroupError::BadShape {
                    generator: g,
                    expected: n * n,
                    found: m.len(),
                });
            }
            let m: Vec<u32> = m.iter().map(|x| x % p).collect();
            if matrix_inverse(&m, n, p).is_none() {
                return Err(GroupError::NotInvertible { generator: g, p });
            }
            reduced.push(m);
        }
        let mut identity = vec![0u32; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }
        Self::close(GroupKind::Matrix { n, p }, identity, &reduced, cap)
    }

    /// Builds an abstract group from a full multiplication table with identity at 0.
    pub(crate) fn from_table(order: usize, table: Vec<u32>, generators: Vec<Elem>) -> FinGroup {
        assert_eq!(table.len(), order * order);
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("table has inverses") as u32;
        }
        FinGroup {
            kind: GroupKind::Table,
            forms: Vec::new(),
            lookup: HashMap::new(),
            table: Some(table),
            inverses,
            generators,
        }
    }

    fn close(
        kind: GroupKind,
        identity: Vec<u32>,
        gens: &[Vec<u32>],
        cap: usize,
    ) -> Result<FinGroup, GroupError> {
        if cap == 0 {
            return Err(GroupError::CapExceeded { cap });
        }
        let compose = |a: &[u32], b: &[u32]| match kind {
            GroupKind::Permutation { .. } => compose_perm(a, b),
            GroupKind::Matrix { n, p } => compose_matrix(a, b, n, p),
            GroupKind::Table => unreachable!(),
        };
        let mut forms = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, 0u32)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(&forms[x], g);
                if !lookup.contains_key(&y) {
                    if forms.len() == cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    lookup.insert(y.clone(), forms.len() as u32);
                    queue.push_back(forms.len());
                    forms.push(y);
                }
            }
        }
        let generators = gens.iter().map(|g| Elem(lookup[g])).collect();
        let order = forms.len();
        let inverses = forms
            .iter()
            .map(|f| {
                let inv = match kind {
                    GroupKind::Permutation { .. } => {
                        let mut inv = vec![0u32; f.len()];
                        for (i, &x) in f.iter().enumerate() {
                            inv[x as usize] = i as u32;
                        }
                        inv
                    }
                    GroupKind::Matrix { n, p } => matrix_inverse(f, n, p).expect("invertible"),
                    GroupKind::Table => unreachable!(),
                };
                lookup[&inv]
            })
            .collect();
        let table = (order <= DENSE_TABLE_LIMIT).then(|| {
            let mut table = Vec::with_capacity(order * order);
            for a in &forms {
                for b in &forms {
                    table.push(lookup[&compose(a, b)]);
                }
            }
            table
        });
        Ok(FinGroup {
            kind,
            forms,
            lookup,
            table,
            inverses,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> + Clone {
        (0..self.order() as u32).map(Elem)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(table) = &self.table {
            return Elem(table[a.index() * self.order() + b.index()]);
        }
        let (fa, fb) = (&self.forms[a.index()], &self.forms[b.index()]);
        let product = match self.kind {
            GroupKind::Permutation { .. } => compose_perm(fa, fb),
            GroupKind::Matrix { n, p } => compose_matrix(fa, fb, n, p),
            GroupKind::Table => unreachable!("table groups always carry a table"),
        };
        Elem(self.lookup[&product])
    }

    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inverses[a.index()])
    }

    /// `g a g^-1`.
    pub fn conjugate(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let (mut base, mut acc) = (a, Elem::IDENTITY);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while !x.is_identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Canonical form of an element (image array or row-major matrix);
    /// `None` for table groups.
    pub fn form(&self, a: Elem) -> Option<&[u32]> {
        self.forms.get(a.index()).map(Vec::as_slice)
    }

    /// Looks an element up by its canonical form.
    pub fn find(&self, form: &[u32]) -> Option<Elem> {
        self.lookup.get(form).map(|&i| Elem(i))
    }

    /// Exhaustively checks associativity, identity and inverse laws, plus
    /// generation by the stored generators. Returns a description of the
    /// first failure.
    pub fn check_axioms(&self) -> Result<(), String> {
        let e = Elem::IDENTITY;
        for a in self.elements() {
            if self.mul(e, a) != a || self.mul(a, e) != a {
                return Err(format!("identity law fails at {a}"));
            }
            let ai = self.inv(a);
            if !self.mul(a, ai).is_identity() || !self.mul(ai, a).is_identity() {
                return Err(format!("inverse law fails at {a}"));
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for &g in &self.generators {
                let y = self.mul(x, g);
                if !std::mem::replace(&mut seen[y.index()], true) {
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err("generators do not generate the group".into())
        }
    }

    /// Largest power of `p` dividing the order.
    pub fn p_part(&self, p: u32) -> usize {
        p_part(self.order(), p)
    }
}

pub(crate) fn p_part(mut n: usize, p: u32) -> usize {
    let p = p as usize;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}
