//! Sparse integer matrices, Smith invariants and ranks over `F_p`.
//!
//! Invariant factors come from three phases: a streaming pass that reduces
//! columns one at a time against unit pivots, sparse elimination on unit
//! pivots over what is left, then a dense arbitrary-precision Smith reduction
//! of the remainder. Nerve boundaries are mostly unit entries, so the dense
//! phase usually sees a tiny matrix.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An integer matrix stored by columns; each column is a sorted list of
/// `(row, value)` pairs with nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from column entry lists; duplicate rows within a column are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> IntMatrix {
        let columns = columns.into_iter().map(normalize).collect();
        IntMatrix { rows, columns }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> IntMatrix {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter(|&r| dense[r][c] != 0)
                    .map(|r| (r as u32, dense[r][c]))
                    .collect()
            })
            .collect();
        IntMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                dense[r as usize][c] = v;
            }
        }
        dense
    }

    /// `self * other`, or `None` if an entry overflows.
    pub fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        let mut columns = Vec::with_capacity(other.cols());
        let mut acc: HashMap<u32, i64> = HashMap::new();
        for col in &other.columns {
            acc.clear();
            for &(k, b) in col {
                for &(r, a) in &self.columns[k as usize] {
                    let e = acc.entry(r).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            columns.push(normalize(acc.iter().map(|(&r, &v)| (r, v)).collect()));
        }
        Some(IntMatrix {
            rows: self.rows,
            columns,
        })
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                columns[r as usize].push((c as u32, v));
            }
        }
        IntMatrix {
            rows: self.cols(),
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Permutes rows and columns: row `r` moves to `row_perm[r]`, column `c` to `col_perm[c]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        let mut columns = vec![Vec::new(); self.cols()];
        for (c, col) in self.columns.iter().enumerate() {
            columns[col_perm[c]] = normalize(
                col.iter()
                    .map(|&(r, v)| (row_perm[r as usize] as u32, v))
                    .collect(),
            );
        }
        IntMatrix {
            rows: self.rows,
            columns,
        }
    }
}

fn normalize(mut col: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// Nonzero Smith invariants `d_1 | d_2 | ...`, all positive. Their number is
/// the rank over the rationals.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let (streamed, rest) = match stream_units(m) {
        Some((units, rest)) => (units, rest),
        None => (0, m.clone()),
    };
    // Work on the transpose: columns become rows, which does not change the invariants.
    let mut elim = SparseElim::new(&rest);
    let units = streamed + elim.run();
    let mut invariants = vec![BigInt::one(); units];
    invariants.extend(dense_smith(elim.remainder()));
    invariants
}

/// Column reduction against a growing list of pivots, each with a `+-1`
/// entry on its own lead row and zeros on the lead rows of earlier pivots.
/// Restricted to lead rows the pivots form a unitriangular block, so the
/// matrix is equivalent to `I_k + R`, where `R` holds the reduced columns
/// that had no unit entry. Returns `k` and `R`, or `None` on overflow.
fn stream_units(m: &IntMatrix) -> Option<(usize, IntMatrix)> {
    const NONE: u32 = u32::MAX;
    let mut pivots: Vec<(u32, i64, Vec<(u32, i64)>)> = Vec::new();
    let mut pivot_of_row = vec![NONE; m.rows];

    let reduce =
        |mut v: Vec<(u32, i64)>, pivots: &[(u32, i64, Vec<(u32, i64)>)], pivot_of_row: &[u32]| {
            let mut heap: BinaryHeap<Reverse<u32>> = v
                .iter()
                .map(|&(r, _)| pivot_of_row[r as usize])
                .filter(|&k| k != NONE)
                .map(Reverse)
                .collect();
            while let Some(Reverse(k)) = heap.pop() {
                let (lead, sign, pivot) = &pivots[k as usize];
                let Ok(pos) = v.binary_search_by_key(lead, |&(r, _)| r) else {
                    continue;
                };
                let a = v[pos].1;
                v = axpy_checked(&v, pivot, -(a * sign))?;
                heap.extend(
                    pivot
                        .iter()
                        .map(|&(r, _)| pivot_of_row[r as usize])
                        .filter(|&j| j != NONE && j > k)
                        .map(Reverse),
                );
            }
            Some(v)
        };
    let promote = |v: Vec<(u32, i64)>,
                   pivots: &mut Vec<_>,
                   pivot_of_row: &mut Vec<u32>|
     -> Option<Vec<(u32, i64)>> {
        // Pivoting on the last unit entry keeps fill-in low on nerve boundaries.
        match v.iter().rev().find(|&&(_, x)| x.abs() == 1) {
            Some(&(r, sign)) => {
                pivot_of_row[r as usize] = pivots.len() as u32;
                pivots.push((r, sign, v));
                None
            }
            None => Some(v),
        }
    };

    let mut hard = Vec::new();
    for col in &m.columns {
        let v = reduce(col.clone(), &pivots, &pivot_of_row)?;
        if !v.is_empty() {
            hard.extend(promote(v, &mut pivots, &mut pivot_of_row));
        }
    }
    // Later pivots may reduce earlier hard columns further.
    loop {
        let before = pivots.len();
        let mut kept = Vec::with_capacity(hard.len());
        for v in std::mem::take(&mut hard) {
            let v = reduce(v, &pivots, &pivot_of_row)?;
            if !v.is_empty() {
                kept.extend(promote(v, &mut pivots, &mut pivot_of_row));
            }
        }
        hard = kept;
        if pivots.len() == before {
            break;
        }
    }
    Some((
        pivots.len(),
        IntMatrix {
            rows: m.rows,
            columns: hard,
        },
    ))
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &IntMatrix, p: u32) -> usize {
    let p64 = p as i64;
    // Echelon form keyed by leading column, built one column-vector at a time.
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut rank = 0;
    for col in &m.columns {
        let mut v: Vec<(u32, u64)> = col
            .iter()
            .map(|&(r, x)| (r, x.rem_euclid(p64) as u64))
            .filter(|&(_, x)| x != 0)
            .collect();
        // Leading entry is the last one, as in the streaming Smith phase.
        while let Some(&(lead, a)) = v.last() {
            match pivots.get(&lead) {
                None => {
                    let inv = crate::group::inv_mod(a as u32, p) as u64;
                    let scaled = v.iter().map(|&(r, x)| (r, x * inv % p as u64)).collect();
                    pivots.insert(lead, scaled);
                    rank += 1;
                    break;
                }
                Some(pivot) => v = axpy_mod(&v, pivot, p as u64 - a, p as u64),
            }
        }
    }
    rank
}

/// `v + s * w` mod `p` on sorted sparse vectors.
fn axpy_mod(v: &[(u32, u64)], w: &[(u32, u64)], s: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let (r, x) = match (v.get(i), w.get(j)) {
            (Some(&(a, x)), Some(&(b, _))) if a < b => {
                i += 1;
                (a, x)
            }
            (Some(&(a, x)), Some(&(b, y))) if a == b => {
                i += 1;
                j += 1;
                (a, (x + s * y) % p)
            }
            (_, Some(&(b, y))) => {
                j += 1;
                (b, s * y % p)
            }
            (Some(&(a, x)), None) => {
                i += 1;
                (a, x)
            }
            (None, None) => unreachable!(),
        };
        if x != 0 {
            out.push((r, x));
        }
    }
    out
}

/// Sparse elimination on `+-1` pivots. Rows here are the input's columns.
struct SparseElim {
    rows: Vec<Vec<(u32, i64)>>,
    /// Rows possibly holding an entry in each column (may be stale).
    col_rows: Vec<Vec<u32>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl SparseElim {
    fn new(m: &IntMatrix) -> SparseElim {
        let rows = m.columns.clone();
        let mut col_rows = vec![Vec::new(); m.rows];
        for (r, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                col_rows[c as usize].push(r as u32);
            }
        }
        SparseElim {
            row_alive: vec![true; rows.len()],
            col_alive: vec![true; m.rows],
            rows,
            col_rows,
        }
    }

    fn entry(&self, r: usize, c: u32) -> Option<i64> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |&(k, _)| k)
            .ok()
            .map(|k| row[k].1)
    }

    /// Eliminates unit pivots until none remain; returns how many were used.
    /// Stops early, leaving a valid partial reduction, if an entry would overflow.
    fn run(&mut self) -> usize {
        let mut used = 0;
        loop {
            let mut progress = false;
            let mut order: Vec<usize> = (0..self.col_rows.len())
                .filter(|&c| self.col_alive[c])
                .collect();
            order.sort_by_key(|&c| self.col_rows[c].len());
            for c in order {
                if !self.col_alive[c] {
                    continue;
                }
                let c32 = c as u32;
                let mut live: Vec<u32> = std::mem::take(&mut self.col_rows[c]);
                live.sort_unstable();
                live.dedup();
                live.retain(|&r| {
                    self.row_alive[r as usize] && self.entry(r as usize, c32).is_some()
                });
                let pivot = live
                    .iter()
                    .copied()
                    .filter(|&r| self.entry(r as usize, c32).is_some_and(|v| v.abs() == 1))
                    .min_by_key(|&r| self.rows[r as usize].len());
                let Some(pivot) = pivot else {
                    self.col_rows[c] = live;
                    continue;
                };
                let sign = self.entry(pivot as usize, c32).unwrap();
                let pivot_row = self.rows[pivot as usize].clone();
                for &r in live.iter().filter(|&&r| r != pivot) {
                    let a = self.entry(r as usize, c32).unwrap();
                    // row_r -= a * sign * pivot_row, which clears column c.
                    let Some(updated) =
                        axpy_checked(&self.rows[r as usize], &pivot_row, -(a * sign))
                    else {
                        self.col_rows[c] = live;
                        return used;
                    };
                    for &(k, _) in &updated {
                        if self.entry(r as usize, k).is_none() {
                            self.col_rows[k as usize].push(r);
                        }
                    }
                    self.rows[r as usize] = updated;
                }
                // The pivot column is now clear apart from the pivot, so column
                // operations clear the pivot row without touching anything else.
                self.row_alive[pivot as usize] = false;
                self.col_alive[c] = false;
                used += 1;
                progress = true;
            }
            if !progress {
                return used;
            }
        }
    }

    /// What is left after elimination, as a dense matrix.
    fn remainder(&self) -> Vec<Vec<BigInt>> {
        let cols: Vec<usize> = (0..self.col_alive.len())
            .filter(|&c| self.col_alive[c])
            .collect();
        let index: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        self.rows
            .iter()
            .enumerate()
            .filter(|&(r, row)| self.row_alive[r] && !row.is_empty())
            .map(|(_, row)| {
                let mut dense = vec![BigInt::zero(); cols.len()];
                for &(c, v) in row {
                    dense[index[&(c as usize)]] = BigInt::from(v);
                }
                dense
            })
            .collect()
    }
}

fn axpy_checked(v: &[(u32, i64)], w: &[(u32, i64)], s: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let (c, x) = match (v.get(i), w.get(j)) {
            (Some(&(a, x)), Some(&(b, _))) if a < b => {
                i += 1;
                (a, x)
            }
            (Some(&(a, x)), Some(&(b, y))) if a == b => {
                i += 1;
                j += 1;
                (a, x.checked_add(s.checked_mul(y)?)?)
            }
            (_, Some(&(b, y))) => {
                j += 1;
                (b, s.checked_mul(y)?)
            }
            (Some(&(a, x)), None) => {
                i += 1;
                (a, x)
            }
            (None, None) => unreachable!(),
        };
        if x != 0 {
            out.push((c, x));
        }
    }
    Some(out)
}

/// Smith invariants of a dense matrix by unimodular row and column operations.
pub(crate) fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| a[r1][c1].abs().cmp(&a[r2][c2].abs()))
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let sub = &q * &a[t][c];
                    a[r][c] -= sub;
                }
                if !a[r][t].is_zero() {
                    clean = false;
                    if a[r][t].abs() < a[t][t].abs() {
                        a.swap(t, r);
                    }
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[c] -= sub;
                }
                if !a[t][c].is_zero() {
                    clean = false;
                    if a[t][c].abs() < a[t][t].abs() {
                        for row in a.iter_mut() {
                            row.swap(t, c);
                        }
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility: fold in any row with an entry the pivot misses.
            let bad =
                (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !(&a[r][c] % &a[t][t]).is_zero()));
            match bad {
                Some(r) => {
                    for c in t..cols {
                        let x = a[r][c].clone();
                        a[t][c] += x;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        let id = IntMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(smith_invariants(&id), ints(&[1, 1, 1]));
        assert_eq!(
            smith_invariants(&IntMatrix::from_dense(&[vec![2, 0], vec![0, 0]])),
            ints(&[2])
        );
        assert_eq!(
            smith_invariants(&IntMatrix::from_dense(&[vec![2, 4], vec![6, 8]])),
            ints(&[2, 4])
        );
        assert_eq!(
            smith_invariants(&IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]])),
            ints(&[1, 6])
        );
        assert_eq!(smith_invariants(&IntMatrix::zero(3, 2)), ints(&[]));
        assert_eq!(smith_invariants(&IntMatrix::zero(0, 0)), ints(&[]));
    }

    #[test]
    fn mixed_unit_and_dense_phase() {
        // A unit pivot followed by [[4,6],[6,4]]: gcd 2, determinant -20.
        let m = IntMatrix::from_dense(&[vec![1, 1, 0], vec![0, 4, 6], vec![0, 6, 4]]);
        assert_eq!(smith_invariants(&m), ints(&[1, 2, 10]));
    }

    #[test]
    fn growth_beyond_64_bits() {
        // diag(2^40, 3^30): invariants are gcd and lcm, the latter past i64.
        let a = 1i64 << 40;
        let b = 3i64.pow(30);
        let m = IntMatrix::from_dense(&[vec![a, 0], vec![0, b]]);
        let inv = smith_invariants(&m);
        assert_eq!(inv[0], BigInt::one());
        assert_eq!(inv[1], BigInt::from(a) * BigInt::from(b));
    }

    #[test]
    fn ranks_mod_p() {
        let m = IntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(rank_mod_p(&m, 2), 0);
        assert_eq!(rank_mod_p(&m, 3), 2);
        assert_eq!(rank_mod_p(&m, 5), 2);
    }

    #[test]
    fn products_and_permutations() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).unwrap().to_dense(), vec![vec![2, 1], vec![4, 3]]);
        assert_eq!(
            a.permuted(&[1, 0], &[0, 1]).to_dense(),
            vec![vec![3, 4], vec![1, 2]]
        );
        let big = IntMatrix::from_dense(&[vec![i64::MAX]]);
        assert!(big.mul(&IntMatrix::from_dense(&[vec![2]])).is_none());
    }
}
