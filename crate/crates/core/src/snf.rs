//! Sparse integer matrices and their Smith normal form invariants.
//!
//! Boundary matrices of the complexes in this crate start out with `±1`
//! entries and stay very sparse, so the reduction first eliminates unit
//! pivots on a sparse representation (Markowitz-style: shortest vector
//! first, then the least populated column). Whatever survives has no unit
//! entries and is handed to a dense Smith normal form over `BigInt`.
//!
//! The sparse phase runs on checked `i64` arithmetic and restarts on
//! `BigInt` if any entry would overflow.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-major sparse integer matrix. Each column is a list of
/// `(row, value)` pairs sorted by row, without explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Builds from columns; entries are sorted and zeros dropped. Repeated
    /// rows in a column are summed.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by_key(|&(r, _)| r);
                let mut out: Vec<(usize, i64)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    assert!(r < nrows, "row {r} out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|&(_, v)| v != 0);
                out
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i, rows[i][j]))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j]
            .binary_search_by_key(&i, |&(r, _)| r)
            .map_or(0, |k| self.cols[j][k].1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] = v;
            }
        }
        out
    }

    /// `self * rhs`, or `None` on `i64` overflow.
    pub fn checked_mul(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.ncols(), rhs.nrows, "dimension mismatch");
        let mut cols = Vec::with_capacity(rhs.ncols());
        let mut acc = vec![0i64; self.nrows];
        let mut touched = Vec::new();
        for rcol in &rhs.cols {
            for &(k, b) in rcol {
                for &(i, a) in &self.cols[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = acc[i].checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let col = touched
                .drain(..)
                .filter_map(|i| {
                    let v = std::mem::take(&mut acc[i]);
                    (v != 0).then_some((i, v))
                })
                .collect();
            cols.push(col);
        }
        Some(SparseMatrix {
            nrows: self.nrows,
            cols,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// Rank and non-trivial elementary divisors of an integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    /// Elementary divisors greater than one, in divisibility order.
    pub divisors: Vec<BigInt>,
}

trait Entry: Clone + std::fmt::Debug {
    fn is_unit(&self) -> bool;
    /// `self - factor * other`, `None` on overflow.
    fn sub_mul(&self, factor: &Self, other: &Self) -> Option<Self>;
    fn mul_unit(&self, unit: &Self) -> Self;
    fn vanishes(&self) -> bool;
    fn into_big(self) -> BigInt;
    fn from_i64(v: i64) -> Self;
}

impl Entry for i64 {
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, factor: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(factor.checked_mul(*other)?)
    }
    fn mul_unit(&self, unit: &Self) -> Self {
        self * unit
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Entry for BigInt {
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, factor: &Self, other: &Self) -> Option<Self> {
        Some(self - factor * other)
    }
    fn mul_unit(&self, unit: &Self) -> Self {
        self * unit
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn into_big(self) -> BigInt {
        self
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Smith normal form invariants of a sparse matrix.
pub fn smith(m: &SparseMatrix) -> SnfResult {
    match eliminate_units::<i64>(m) {
        Some(r) => r,
        None => {
            log::debug!("i64 overflow during sparse elimination; retrying with BigInt");
            eliminate_units::<BigInt>(m).expect("BigInt arithmetic cannot overflow")
        }
    }
}

/// `rows[u] -= factor * rows[v]` on sorted sparse vectors. Reports the
/// indices that became nonzero in `rows[u]`.
fn axpy<T: Entry>(
    target: &[(usize, T)],
    factor: &T,
    pivot: &[(usize, T)],
    fresh: &mut Vec<usize>,
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::from_i64(0);
    while i < target.len() || j < pivot.len() {
        let ti = target.get(i).map(|e| e.0);
        let pj = pivot.get(j).map(|e| e.0);
        match (ti, pj) {
            (Some(a), Some(b)) if a == b => {
                let v = target[i].1.sub_mul(factor, &pivot[j].1)?;
                if !v.vanishes() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(target[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(target[i].clone());
                i += 1;
            }
            (_, Some(b)) => {
                let v = zero.sub_mul(factor, &pivot[j].1)?;
                if !v.vanishes() {
                    out.push((b, v));
                    fresh.push(b);
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some(out)
}

fn eliminate_units<T: Entry>(m: &SparseMatrix) -> Option<SnfResult> {
    // each column of `m` is one vector; indices are rows of `m`
    let mut vecs: Vec<Vec<(usize, T)>> = m
        .cols
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, T::from_i64(v))).collect())
        .collect();
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); m.nrows];
    for (v, vec) in vecs.iter().enumerate() {
        for &(r, _) in vec {
            occ[r].push(v);
        }
    }
    let mut alive = vec![true; vecs.len()];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = vecs
        .iter()
        .enumerate()
        .map(|(v, vec)| Reverse((vec.len(), v)))
        .collect();
    let mut rank = 0usize;
    let mut fresh = Vec::new();

    while let Some(Reverse((len, v))) = heap.pop() {
        if !alive[v] || vecs[v].len() != len {
            continue;
        }
        if len == 0 {
            alive[v] = false;
            continue;
        }
        let pivot_pos = vecs[v]
            .iter()
            .enumerate()
            .filter(|(_, (_, val))| val.is_unit())
            .min_by_key(|(_, (r, _))| occ[*r].len())
            .map(|(k, _)| k);
        let Some(k) = pivot_pos else {
            // no unit entry; revisited only if a later update changes it
            continue;
        };
        let (prow, pval) = vecs[v][k].clone();
        let pivot = std::mem::take(&mut vecs[v]);
        alive[v] = false;
        rank += 1;

        let mut users = std::mem::take(&mut occ[prow]);
        users.sort_unstable();
        users.dedup();
        for u in users {
            if u == v || !alive[u] {
                continue;
            }
            let Ok(pos) = vecs[u].binary_search_by_key(&prow, |e| e.0) else {
                continue;
            };
            let factor = vecs[u][pos].1.mul_unit(&pval);
            fresh.clear();
            let updated = axpy(&vecs[u], &factor, &pivot, &mut fresh)?;
            vecs[u] = updated;
            for &r in &fresh {
                occ[r].push(u);
            }
            heap.push(Reverse((vecs[u].len(), u)));
        }
    }

    // dense remainder
    let rest: Vec<usize> = (0..vecs.len())
        .filter(|&v| alive[v] && !vecs[v].is_empty())
        .collect();
    if rest.is_empty() {
        return Some(SnfResult {
            rank,
            divisors: Vec::new(),
        });
    }
    let mut idx: Vec<usize> = rest
        .iter()
        .flat_map(|&v| vecs[v].iter().map(|e| e.0))
        .collect();
    idx.sort_unstable();
    idx.dedup();
    let mut dense = vec![vec![BigInt::zero(); idx.len()]; rest.len()];
    for (i, &v) in rest.iter().enumerate() {
        for (r, val) in std::mem::take(&mut vecs[v]) {
            let j = idx.binary_search(&r).unwrap();
            dense[i][j] = val.into_big();
        }
    }
    log::trace!("dense remainder {}x{}", dense.len(), idx.len());
    let diag = smith_dense(dense);
    let mut divisors = Vec::new();
    for d in diag {
        rank += 1;
        if !d.is_one() {
            divisors.push(d);
        }
    }
    Some(SnfResult { rank, divisors })
}

/// Nonzero diagonal of the Smith normal form of a dense matrix, positive and
/// in divisibility order.
///
/// Repeatedly moves the entry of smallest absolute value to the pivot slot
/// and reduces its row and column by division with remainder; when the pivot
/// clears its row and column but fails to divide some remaining entry, that
/// entry's row is added to the pivot row and the step repeats.
pub fn smith_dense(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        // smallest nonzero entry in the trailing block
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    changed = true;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a[t..].iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    changed = true;
                }
            }
            if changed {
                let (pi, pj) = min_in_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // row and column cleared; enforce divisibility
            let bad = (t + 1..nrows)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|b| av < b.2) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smallest nonzero entry in row `t` or column `t` of the trailing block.
fn min_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    let mut consider = |i: usize, j: usize, v: &BigInt| {
        if !v.is_zero() && (best.2.is_zero() || v.abs() < best.2) {
            best = (i, j, v.abs());
        }
    };
    for (i, row) in a.iter().enumerate().skip(t) {
        consider(i, t, &row[t]);
    }
    for (j, v) in a[t].iter().enumerate().skip(t) {
        consider(t, j, v);
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn dense_known_example() {
        let a = vec![
            big(&[-6, 111, -36, 6]),
            big(&[5, -672, 210, 74]),
            big(&[0, -255, 81, 24]),
            big(&[-7, 255, -81, -10]),
        ];
        assert_eq!(smith_dense(a), big(&[1, 3, 21]));
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) has Smith form diag(1, 6)
        assert_eq!(smith_dense(vec![big(&[2, 0]), big(&[0, 3])]), big(&[1, 6]));
    }

    #[test]
    fn sparse_matches_dense() {
        let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let r = smith(&SparseMatrix::from_dense(&rows));
        assert_eq!(r.rank, 3);
        assert_eq!(r.divisors, big(&[2, 6, 12]));
    }

    #[test]
    fn torsion_of_projective_plane_boundary() {
        // boundary of the 2-cell of RP^2 in its minimal CW structure
        let r = smith(&SparseMatrix::from_dense(&[vec![2]]));
        assert_eq!(
            r,
            SnfResult {
                rank: 1,
                divisors: big(&[2])
            }
        );
    }

    #[test]
    fn empty_and_zero() {
        assert_eq!(smith(&SparseMatrix::zeros(0, 0)).rank, 0);
        assert_eq!(smith(&SparseMatrix::zeros(3, 5)).rank, 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big_entry = i64::MAX / 2;
        let rows = vec![vec![1, big_entry], vec![big_entry, 1]];
        let r = smith(&SparseMatrix::from_dense(&rows));
        assert_eq!(r.rank, 2);
        let det = BigInt::from(1) - BigInt::from(big_entry) * BigInt::from(big_entry);
        assert_eq!(r.divisors, vec![det.abs()]);
    }

    #[test]
    fn product_and_equality() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = SparseMatrix::from_dense(&[vec![1, -2], vec![0, 1]]);
        let id = a.checked_mul(&b).unwrap();
        assert_eq!(id.to_dense(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(a.get(0, 1), 2);
        assert_eq!(a.nnz(), 3);
    }
}
