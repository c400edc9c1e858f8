//! Normalized nerve chain complexes and their homology, with constant or
//! functor coefficients.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use super::snf::{rank_mod_p, smith_invariants, IntMatrix};
use super::HomotopyError;
use crate::category::{Category, MorphId};

/// Default cap on the number of chains in any one degree.
pub const DEFAULT_MAX_CHAINS: usize = 2_000_000;

/// A nondegenerate chain `i0 -> i1 -> ... -> ik`: the start object and the
/// (non-identity) morphisms in order. Zero-chains are bare objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub start: usize,
    pub arrows: Vec<MorphId>,
}

/// Coefficients of a chain complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    /// The prime field `F_p`.
    Field(u32),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Field(p) => write!(f, "F_{p}"),
        }
    }
}

/// Free chain groups in degrees `0..=top` with boundary matrices.
/// `boundaries[k]` maps degree `k` to degree `k - 1`; `boundaries[0]` is the zero map.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    coefficients: Coefficients,
    /// Largest degree whose homology is meaningful; chains exist through `max_degree + 1`.
    max_degree: usize,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

/// One homology group `Z^rank + torsion`, or `F_p^rank` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub coefficients: Coefficients,
    pub degree: usize,
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self
            .torsion
            .iter()
            .map(|t| match i64::try_from(t) {
                Ok(x) => json!(x),
                Err(_) => json!(t.to_string()),
            })
            .collect();
        json!({"coefficients": self.coefficients.to_string(), "degree": self.degree, "rank": self.rank, "torsion": torsion})
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(self.coefficients.to_string()),
            r => parts.push(format!("{}^{r}", self.coefficients)),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "H_{} = 0", self.degree)
        } else {
            write!(f, "H_{} = {}", self.degree, parts.join(" + "))
        }
    }
}

impl ChainComplex {
    /// Assembles a complex from ranks and boundaries, checking shapes.
    pub fn new(
        coefficients: Coefficients,
        max_degree: usize,
        ranks: Vec<usize>,
        boundaries: Vec<IntMatrix>,
    ) -> ChainComplex {
        assert_eq!(ranks.len(), max_degree + 2);
        assert_eq!(boundaries.len(), ranks.len());
        for (k, b) in boundaries.iter().enumerate() {
            assert_eq!(b.cols(), ranks[k]);
            assert_eq!(b.rows(), if k == 0 { 0 } else { ranks[k - 1] });
        }
        ChainComplex {
            coefficients,
            max_degree,
            ranks,
            boundaries,
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Ranks of the chain groups in degrees `0..=max_degree + 1`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k]
    }

    /// Checks `d_(k-1) d_k = 0` in the coefficient ring in every degree;
    /// returns the first failing `k`.
    pub fn check_boundary_squared(&self) -> Result<(), usize> {
        for k in 2..self.boundaries.len() {
            let vanishes = match self.boundaries[k - 1].mul(&self.boundaries[k]) {
                None => false,
                Some(product) => match self.coefficients {
                    Coefficients::Integers => product.is_zero(),
                    Coefficients::Field(p) => (0..product.cols())
                        .all(|c| product.column(c).iter().all(|&(_, x)| x % p as i64 == 0)),
                },
            };
            if !vanishes {
                return Err(k);
            }
        }
        Ok(())
    }

    /// `H_k` for `k <= max_degree`.
    pub fn homology(&self, k: usize) -> Result<HomologyGroup, HomotopyError> {
        if k > self.max_degree {
            return Err(HomotopyError::DegreeOutOfRange {
                degree: k,
                max: self.max_degree,
            });
        }
        let n = self.ranks[k];
        match self.coefficients {
            Coefficients::Integers => {
                let outgoing = if k == 0 {
                    0
                } else {
                    smith_invariants(&self.boundaries[k]).len()
                };
                let incoming = smith_invariants(&self.boundaries[k + 1]);
                let torsion = incoming.iter().filter(|d| !d.is_one()).cloned().collect();
                Ok(HomologyGroup {
                    coefficients: self.coefficients,
                    degree: k,
                    rank: n - outgoing - incoming.len(),
                    torsion,
                })
            }
            Coefficients::Field(p) => {
                let outgoing = if k == 0 {
                    0
                } else {
                    rank_mod_p(&self.boundaries[k], p)
                };
                let incoming = rank_mod_p(&self.boundaries[k + 1], p);
                Ok(HomologyGroup {
                    coefficients: self.coefficients,
                    degree: k,
                    rank: n - outgoing - incoming,
                    torsion: Vec::new(),
                })
            }
        }
    }

    /// `H_0, ..., H_max_degree`.
    pub fn all_homology(&self) -> Vec<HomologyGroup> {
        (0..=self.max_degree)
            .map(|k| self.homology(k).expect("degree in range"))
            .collect()
    }

    /// The same complex with the bases of every degree reordered.
    /// `perms[k][i]` is the new position of basis element `i` in degree `k`.
    pub fn relabeled(&self, perms: &[Vec<usize>]) -> ChainComplex {
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let rows: Vec<usize> = if k == 0 {
                    Vec::new()
                } else {
                    perms[k - 1].clone()
                };
                b.permuted(&rows, &perms[k])
            })
            .collect();
        ChainComplex {
            boundaries,
            ..self.clone()
        }
    }
}

/// Nondegenerate chains of a category in degrees `0..=top`, each degree in
/// lexicographic order of morphism ids (objects for degree 0).
pub fn nerve_simplices(
    category: &Category,
    top: usize,
    max_chains: usize,
) -> Result<Vec<Vec<Simplex>>, HomotopyError> {
    let n = category.num_objects();
    if n > max_chains {
        return Err(HomotopyError::ChainCap {
            degree: 0,
            cap: max_chains,
        });
    }
    let mut out = vec![(0..n)
        .map(|start| Simplex {
            start,
            arrows: Vec::new(),
        })
        .collect::<Vec<_>>()];
    if top == 0 {
        return Ok(out);
    }
    let first: Vec<Simplex> = (0..category.num_morphisms())
        .filter(|&f| !category.is_identity(f))
        .map(|f| Simplex {
            start: category.morphism(f).src,
            arrows: vec![f],
        })
        .collect();
    if first.len() > max_chains {
        return Err(HomotopyError::ChainCap {
            degree: 1,
            cap: max_chains,
        });
    }
    out.push(first);
    for k in 2..=top {
        let mut next = Vec::new();
        for s in &out[k - 1] {
            let last = *s.arrows.last().unwrap();
            for g in category
                .out_range(category.morphism(last).dst)
                .filter(|&g| !category.is_identity(g))
            {
                if next.len() == max_chains {
                    return Err(HomotopyError::ChainCap {
                        degree: k,
                        cap: max_chains,
                    });
                }
                let mut arrows = s.arrows.clone();
                arrows.push(g);
                next.push(Simplex {
                    start: s.start,
                    arrows,
                });
            }
        }
        out.push(next);
    }
    Ok(out)
}

/// The `j`-th face of a simplex with its object, or `None` when an inner face
/// composes to an identity (a degenerate simplex).
fn face(category: &Category, s: &Simplex, j: usize) -> Option<Simplex> {
    let k = s.arrows.len();
    if j == 0 {
        let start = category.morphism(s.arrows[0]).dst;
        return Some(Simplex {
            start,
            arrows: s.arrows[1..].to_vec(),
        });
    }
    if j == k {
        return Some(Simplex {
            start: s.start,
            arrows: s.arrows[..k - 1].to_vec(),
        });
    }
    let composite = category.compose(s.arrows[j], s.arrows[j - 1]);
    if category.is_identity(composite) {
        return None;
    }
    let mut arrows = Vec::with_capacity(k - 1);
    arrows.extend_from_slice(&s.arrows[..j - 1]);
    arrows.push(composite);
    arrows.extend_from_slice(&s.arrows[j + 1..]);
    Some(Simplex {
        start: s.start,
        arrows,
    })
}

/// A functor from a category to free modules (over `Z`) or vector spaces
/// (over `F_p`): a dimension per object and a matrix per morphism, acting on
/// column vectors, so `F(g . f) = F(g) F(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFunctor {
    pub coefficients: Coefficients,
    pub dims: Vec<usize>,
    /// Row-major `dims[dst] x dims[src]` matrix for each morphism.
    pub matrices: Vec<Vec<i64>>,
}

impl CoefficientFunctor {
    /// The constant functor with value `Z` (or `F_p`) and identity maps.
    pub fn constant(category: &Category, coefficients: Coefficients) -> CoefficientFunctor {
        CoefficientFunctor {
            coefficients,
            dims: vec![1; category.num_objects()],
            matrices: vec![vec![1]; category.num_morphisms()],
        }
    }

    pub fn zero(category: &Category, coefficients: Coefficients) -> CoefficientFunctor {
        CoefficientFunctor {
            coefficients,
            dims: vec![0; category.num_objects()],
            matrices: vec![Vec::new(); category.num_morphisms()],
        }
    }

    fn reduce(&self, x: i64) -> i64 {
        match self.coefficients {
            Coefficients::Integers => x,
            Coefficients::Field(p) => x.rem_euclid(p as i64),
        }
    }

    fn product(
        &self,
        a: &[i64],
        b: &[i64],
        rows: usize,
        inner: usize,
        cols: usize,
    ) -> Option<Vec<i64>> {
        let mut out = vec![0i64; rows * cols];
        for r in 0..rows {
            for k in 0..inner {
                let x = a[r * inner + k];
                if x == 0 {
                    continue;
                }
                for c in 0..cols {
                    let cell = &mut out[r * cols + c];
                    *cell = self.reduce(cell.checked_add(x.checked_mul(b[k * cols + c])?)?);
                }
            }
        }
        Some(out)
    }

    /// Shapes, identities and every composable pair.
    pub fn verify(&self, category: &Category) -> Result<(), HomotopyError> {
        let fail = |msg: String| Err(HomotopyError::NotFunctorial(msg));
        if self.dims.len() != category.num_objects()
            || self.matrices.len() != category.num_morphisms()
        {
            return fail("object or morphism count does not match the category".into());
        }
        for (f, m) in category.morphisms().iter().enumerate() {
            if self.matrices[f].len() != self.dims[m.dst] * self.dims[m.src] {
                return fail(format!("matrix of morphism {f} has the wrong shape"));
            }
        }
        let norm: Vec<Vec<i64>> = self
            .matrices
            .iter()
            .map(|m| m.iter().map(|&x| self.reduce(x)).collect())
            .collect();
        for i in 0..category.num_objects() {
            let d = self.dims[i];
            let identity: Vec<i64> = (0..d * d).map(|k| i64::from(k / d == k % d)).collect();
            if norm[category.identity(i)] != identity {
                return fail(format!(
                    "identity of object {i} is not sent to the identity matrix"
                ));
            }
        }
        for f in 0..category.num_morphisms() {
            let mf = category.morphism(f);
            for g in category.out_range(mf.dst) {
                let mg = category.morphism(g);
                let Some(prod) = self.product(
                    &norm[g],
                    &norm[f],
                    self.dims[mg.dst],
                    self.dims[mf.dst],
                    self.dims[mf.src],
                ) else {
                    return fail(format!("overflow composing morphisms {f} and {g}"));
                };
                if prod != norm[category.compose(g, f)] {
                    return fail(format!("F({g} . {f}) differs from F({g}) F({f})"));
                }
            }
        }
        Ok(())
    }
}

/// The normalized nerve complex with integer coefficients, through degree `d + 1`.
pub fn nerve_chain_complex(
    category: &Category,
    d: usize,
    max_chains: usize,
) -> Result<ChainComplex, HomotopyError> {
    let constant = CoefficientFunctor::constant(category, Coefficients::Integers);
    build_complex(category, &constant, d, max_chains)
}

/// Homology of `category` with coefficients in `functor`, degrees `0..=d`.
pub fn functor_homology(
    category: &Category,
    functor: &CoefficientFunctor,
    d: usize,
    max_chains: usize,
) -> Result<Vec<HomologyGroup>, HomotopyError> {
    functor.verify(category)?;
    Ok(build_complex(category, functor, d, max_chains)?.all_homology())
}

/// Chains `C_k = sum over simplices of F(i0)`. The face `d_0` applies `F` of
/// the first arrow; the other faces keep the vector.
pub fn build_complex(
    category: &Category,
    functor: &CoefficientFunctor,
    d: usize,
    max_chains: usize,
) -> Result<ChainComplex, HomotopyError> {
    let simplices = nerve_simplices(category, d + 1, max_chains)?;
    let offsets: Vec<Vec<usize>> = simplices
        .iter()
        .map(|level| {
            let mut offsets = Vec::with_capacity(level.len() + 1);
            let mut acc = 0;
            for s in level {
                offsets.push(acc);
                acc += functor.dims[s.start];
            }
            offsets.push(acc);
            offsets
        })
        .collect();
    let ranks: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut boundaries = vec![IntMatrix::zero(0, ranks[0])];
    for k in 1..=d + 1 {
        let index: HashMap<&Simplex, usize> = simplices[k - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut columns = Vec::with_capacity(ranks[k]);
        for s in &simplices[k] {
            let dim = functor.dims[s.start];
            let mut block: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dim];
            for j in 0..=k {
                let Some(t) = face(category, s, j) else {
                    continue;
                };
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let base = offsets[k - 1][index[&t]];
                if j == 0 {
                    let f = s.arrows[0];
                    let target_dim = functor.dims[t.start];
                    let m = &functor.matrices[f];
                    for (c, col) in block.iter_mut().enumerate() {
                        for r in 0..target_dim {
                            let x = m[r * dim + c];
                            if x != 0 {
                                col.push(((base + r) as u32, sign * x));
                            }
                        }
                    }
                } else {
                    for (c, col) in block.iter_mut().enumerate() {
                        col.push(((base + c) as u32, sign));
                    }
                }
            }
            columns.extend(block);
        }
        let mut matrix = IntMatrix::from_columns(ranks[k - 1], columns);
        if let Coefficients::Field(p) = functor.coefficients {
            let reduced = (0..matrix.cols())
                .map(|c| {
                    matrix
                        .column(c)
                        .iter()
                        .map(|&(r, x)| (r, x.rem_euclid(p as i64)))
                        .collect()
                })
                .collect();
            matrix = IntMatrix::from_columns(ranks[k - 1], reduced);
        }
        boundaries.push(matrix);
    }
    Ok(ChainComplex::new(
        functor.coefficients,
        d,
        ranks,
        boundaries,
    ))
}
