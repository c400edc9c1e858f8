//! Subspaces of `F_p^n` in reduced row echelon form.

use std::fmt;

use crate::group::inv_mod;

/// A subspace of `F_p^n`, stored as the nonzero rows of its reduced row
/// echelon basis. Two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    dim: usize,
    n: usize,
    rows: Vec<u32>,
}

impl Subspace {
    /// Span of the given row vectors (each of length `n`).
    pub fn span(vectors: &[Vec<u32>], n: usize, p: u32) -> Subspace {
        let mut rows: Vec<u32> = vectors
            .iter()
            .flat_map(|v| v.iter().map(|x| x % p))
            .collect();
        let dim = rref(&mut rows, n, p);
        rows.truncate(dim * n);
        Subspace { dim, n, rows }
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace {
            dim: 0,
            n,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> impl Iterator<Item = &[u32]> {
        self.rows.chunks(self.n.max(1)).take(self.dim)
    }

    pub fn contains_vector(&self, v: &[u32], p: u32) -> bool {
        let mut rows = self.rows.clone();
        rows.extend(v.iter().map(|x| x % p));
        rref(&mut rows, self.n, p) == self.dim
    }

    pub fn contains(&self, other: &Subspace, p: u32) -> bool {
        other.dim <= self.dim && other.basis().all(|v| self.contains_vector(v, p))
    }

    /// Image under the matrix `g` (row-major `n x n`) acting on column vectors.
    pub fn image(&self, g: &[u32], p: u32) -> Subspace {
        let vectors: Vec<Vec<u32>> = self.basis().map(|v| mat_vec(g, v, self.n, p)).collect();
        Subspace::span(&vectors, self.n, p)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (r, row) in self.basis().enumerate() {
            if r > 0 {
                write!(f, ",")?;
            }
            for x in row {
                write!(f, "{x}")?;
            }
        }
        write!(f, "}}")
    }
}

pub(crate) fn mat_vec(g: &[u32], v: &[u32], n: usize, p: u32) -> Vec<u32> {
    (0..n)
        .map(|i| {
            ((0..n)
                .map(|k| g[i * n + k] as u64 * v[k] as u64)
                .sum::<u64>()
                % p as u64) as u32
        })
        .collect()
}

/// Row-reduces `rows` (row-major, width `n`) in place to reduced echelon form
/// with the nonzero rows first; returns the rank.
fn rref(rows: &mut [u32], n: usize, p: u32) -> usize {
    if n == 0 {
        return 0;
    }
    let m = rows.len() / n;
    let p64 = p as u64;
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..m).find(|&r| rows[r * n + col] != 0) else {
            continue;
        };
        for c in 0..n {
            rows.swap(pivot * n + c, rank * n + c);
        }
        let scale = inv_mod(rows[rank * n + col], p) as u64;
        for c in 0..n {
            rows[rank * n + c] = (rows[rank * n + c] as u64 * scale % p64) as u32;
        }
        for r in (0..m).filter(|&r| r != rank) {
            let factor = rows[r * n + col] as u64;
            if factor == 0 {
                continue;
            }
            for c in 0..n {
                let sub = factor * rows[rank * n + c] as u64 % p64;
                rows[r * n + c] = ((rows[r * n + c] as u64 + p64 - sub) % p64) as u32;
            }
        }
        rank += 1;
    }
    rank
}

/// Every subspace of `F_p^n`, ordered by dimension, then pivot columns, then
/// free entries. Generated directly as reduced echelon matrices.
pub fn all_subspaces(n: usize, p: u32) -> Vec<Subspace> {
    let mut out = Vec::new();
    for dim in 0..=n {
        for pivots in combinations(n, dim) {
            // Free positions: row r, column c > pivots[r], c not a pivot.
            let free: Vec<(usize, usize)> = (0..dim)
                .flat_map(|r| {
                    (pivots[r] + 1..n)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let count = (p as usize).pow(free.len() as u32);
            for code in 0..count {
                let mut rows = vec![0u32; dim * n];
                for (r, &c) in pivots.iter().enumerate() {
                    rows[r * n + c] = 1;
                }
                let mut rest = code;
                for &(r, c) in free.iter().rev() {
                    rows[r * n + c] = (rest % p as usize) as u32;
                    rest /= p as usize;
                }
                out.push(Subspace { dim, n, rows });
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}
