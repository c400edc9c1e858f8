use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::linalg::{all_subspaces, mat_vec, Subspace};
use super::LieError;
use crate::gposet::{GPoset, GPosetParts};
use crate::group::{FinGroup, GroupKind, Subgroup, DEFAULT_MAX_ORDER};

/// A strictly increasing chain of proper nonzero subspaces. The empty chain
/// is allowed and plays the role of the whole group as a parabolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    pub chain: Vec<Subspace>,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return write!(f, "()");
        }
        for (k, v) in self.chain.iter().enumerate() {
            if k > 0 {
                write!(f, "<")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Largest dimension and the primes accepted by [`FlagPoset::new`].
pub const MAX_DIM: usize = 4;
pub const PRIMES: [u32; 3] = [2, 3, 5];

pub fn check_scale(n: usize, p: u32) -> Result<(), LieError> {
    if n == 0 || n > MAX_DIM || !PRIMES.contains(&p) {
        return Err(LieError::ScaleGuard(format!(
            "need 1 <= n <= {MAX_DIM} and p in {PRIMES:?}, got n={n}, p={p}"
        )));
    }
    Ok(())
}

/// Proper nonzero subspaces of `F_p^n`, graded by dimension.
pub fn enumerate_subspaces(n: usize, p: u32) -> Result<Vec<Subspace>, LieError> {
    check_scale(n, p)?;
    Ok(all_subspaces(n, p)
        .into_iter()
        .filter(|s| s.dim() > 0 && s.dim() < n)
        .collect())
}

/// `GL_n(F_p)` generated by the elementary transvections `1 + E_ij` and
/// `diag(w, 1, ..., 1)` for the least primitive root `w`.
pub fn gl_group(n: usize, p: u32, cap: usize) -> Result<FinGroup, LieError> {
    check_scale(n, p)?;
    let identity = |m: &mut Vec<u32>| (0..n).for_each(|i| m[i * n + i] = 1);
    let mut gens = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let mut m = vec![0; n * n];
            identity(&mut m);
            m[i * n + j] = 1;
            gens.push(m);
        }
    }
    let root = (1..p)
        .find(|&w| (1..p - 1).all(|k| (w as u64).pow(k) % p as u64 != 1))
        .unwrap_or(1);
    if root != 1 {
        let mut m = vec![0; n * n];
        identity(&mut m);
        m[0] = root;
        gens.push(m);
    }
    Ok(FinGroup::from_matrices(n, p, &gens, cap)?)
}

/// The flags of `F_p^n` under `GL_n(F_p)` with associated-graded links.
///
/// A flag `F` sits below `F'` when `F` contains every subspace of `F'`, so
/// stabilisers grow along the order and the empty flag is the top. Items are
/// listed longest flags first, then by the enumeration index of their
/// subspaces; the empty flag comes last.
#[derive(Clone, Debug)]
pub struct FlagPoset {
    n: usize,
    p: u32,
    flags: Vec<Flag>,
    gposet: GPoset,
}

impl FlagPoset {
    pub fn new(n: usize, p: u32) -> Result<FlagPoset, LieError> {
        Self::with_cap(n, p, DEFAULT_MAX_ORDER)
    }

    pub fn with_cap(n: usize, p: u32, cap: usize) -> Result<FlagPoset, LieError> {
        let group = Arc::new(gl_group(n, p, cap)?);
        Self::over(group)
    }

    /// Builds the flag poset for a matrix group containing all of `GL_n(F_p)`.
    pub fn over(group: Arc<FinGroup>) -> Result<FlagPoset, LieError> {
        let GroupKind::Matrix { n, p } = *group.kind() else {
            return Err(LieError::NotMatrixGroup);
        };
        check_scale(n, p)?;
        let subspaces = enumerate_subspaces(n, p)?;
        let index: HashMap<&Subspace, usize> =
            subspaces.iter().enumerate().map(|(k, s)| (s, k)).collect();

        // Chains as lists of subspace indices.
        let mut chains: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier = chains.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for chain in &frontier {
                for (k, s) in subspaces.iter().enumerate() {
                    let extends = match chain.last() {
                        None => true,
                        Some(&top) => {
                            let t = &subspaces[top];
                            s.dim() > t.dim() && s.contains(t, p)
                        }
                    };
                    if extends {
                        let mut longer = chain.clone();
                        longer.push(k);
                        next.push(longer);
                    }
                }
            }
            chains.extend(next.iter().cloned());
            frontier = next;
        }
        chains.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let flag_index: HashMap<&[usize], usize> = chains
            .iter()
            .enumerate()
            .map(|(k, c)| (c.as_slice(), k))
            .collect();
        let m = chains.len();

        let leq: Vec<bool> = chains
            .iter()
            .flat_map(|a| chains.iter().map(move |b| b.iter().all(|s| a.contains(s))))
            .collect();

        let mut subspace_action = vec![0u32; group.order() * subspaces.len()];
        for g in group.elements() {
            let form = group.form(g).expect("matrix group");
            for (k, s) in subspaces.iter().enumerate() {
                subspace_action[g.index() * subspaces.len() + k] = index[&s.image(form, p)] as u32;
            }
        }
        let mut action = vec![0u32; group.order() * m];
        let mut image = Vec::with_capacity(n);
        for g in group.elements() {
            for (k, chain) in chains.iter().enumerate() {
                image.clear();
                image.extend(
                    chain
                        .iter()
                        .map(|&s| subspace_action[g.index() * subspaces.len() + s] as usize),
                );
                action[g.index() * m + k] = flag_index[image.as_slice()] as u32;
            }
        }

        let flags: Vec<Flag> = chains
            .iter()
            .map(|c| Flag {
                chain: c.iter().map(|&s| subspaces[s].clone()).collect(),
            })
            .collect();
        let links = flags.iter().map(|f| graded_link(&group, f)).collect();
        let parts = GPosetParts {
            group,
            items: flags.iter().map(ToString::to_string).collect(),
            leq,
            action,
            links,
        };
        let gposet = GPoset::new(parts)?;
        Ok(FlagPoset {
            n,
            p,
            flags,
            gposet,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        self.gposet.group()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// Index of the empty flag.
    pub fn top(&self) -> usize {
        self.flags.len() - 1
    }

    /// The G-poset with associated-graded links.
    pub fn gposet(&self) -> &GPoset {
        &self.gposet
    }

    pub fn parabolic(&self, flag: usize) -> Subgroup {
        stab_parabolic(self.group(), &self.flags[flag])
    }

    pub fn graded_link(&self, flag: usize) -> &Subgroup {
        self.gposet.link(flag)
    }

    /// Whether the graded link of `flag` is `O_p` of its stabiliser.
    pub fn verify_link_is_op(&self, flag: usize) -> bool {
        *self.graded_link(flag) == self.parabolic(flag).o_p(self.p)
    }

    /// Whether `N_G(O_p(P)) = P` for the stabiliser `P` of `flag`.
    pub fn verify_normalizer_is_parabolic(&self, flag: usize) -> bool {
        self.graded_link(flag).normalizer() == self.parabolic(flag)
    }
}

/// `{g : g.F = F}`, computed from the matrices directly.
pub fn stab_parabolic(group: &Arc<FinGroup>, flag: &Flag) -> Subgroup {
    let (_, p) = matrix_params(group);
    let mask = group
        .elements()
        .map(|g| {
            let form = group.form(g).expect("matrix group");
            flag.chain.iter().all(|v| v.image(form, p) == *v)
        })
        .collect();
    Subgroup::from_closed_mask(group, mask)
}

/// Elements that fix every step of `flag` and act trivially on each quotient
/// `V_k / V_(k-1)`, with `0` below and the whole space on top.
pub fn graded_link(group: &Arc<FinGroup>, flag: &Flag) -> Subgroup {
    let (n, p) = matrix_params(group);
    let whole = Subspace::span(
        &(0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect::<Vec<_>>(),
        n,
        p,
    );
    let mut steps = vec![Subspace::zero(n)];
    steps.extend(flag.chain.iter().cloned());
    steps.push(whole);
    let mask = group
        .elements()
        .map(|g| {
            let form = group.form(g).expect("matrix group");
            steps.windows(2).all(|w| {
                w[1].basis().all(|v| {
                    let gv = mat_vec(form, v, n, p);
                    let diff: Vec<u32> = gv.iter().zip(v).map(|(&a, &b)| (a + p - b) % p).collect();
                    w[0].contains_vector(&diff, p)
                })
            })
        })
        .collect();
    Subgroup::from_closed_mask(group, mask)
}

fn matrix_params(group: &FinGroup) -> (usize, u32) {
    match *group.kind() {
        GroupKind::Matrix { n, p } => (n, p),
        _ => panic!("flag computations need a matrix group"),
    }
}

impl Flag {
    /// `g.F` for a matrix `g`.
    pub fn image(&self, g: &[u32], p: u32) -> Flag {
        Flag {
            chain: self.chain.iter().map(|v| v.image(g, p)).collect(),
        }
    }
}
