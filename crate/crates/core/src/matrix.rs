//! Exact sparse linear algebra over the rationals.
//!
//! Every solve in the crate reduces to the routines here: a deterministic
//! reduced row-echelon form (leftmost pivot column, smallest row index), a
//! canonical kernel basis, subspace intersection and membership. The forward
//! pass works on integer rows (denominators cleared, content divided out) so
//! intermediate entries stay small; matrices with fewer than
//! `DENSE_COL_THRESHOLD` columns take a dense path instead.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::Scalar;

const DENSE_COL_THRESHOLD: usize = 64;

/// Sparse matrix over `Scalar` with per-row ordered entries.
///
/// Absent entries are zero; no explicit zero is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, Scalar)>>,
}

/// Result of [`MatrixQ::rref`].
pub struct Rref {
    pub matrix: MatrixQ,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl MatrixQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zero(n, n);
        for i in 0..n {
            m.data[i].push((i as u32, Scalar::one()));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = MatrixQ::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].push((j as u32, v.clone()));
                }
            }
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; later duplicates accumulate.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, Scalar)]) -> Self {
        let mut acc: Vec<BTreeMap<u32, Scalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(*r < rows && *c < cols, "triplet out of range");
            let slot = acc[*r].entry(*c as u32).or_insert_with(Scalar::zero);
            *slot += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        MatrixQ { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn entry_count(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols);
        match self.data[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(idx) => self.data[r][idx].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        match self.data[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(idx) => {
                if v.is_zero() {
                    self.data[r].remove(idx);
                } else {
                    self.data[r][idx].1 = v;
                }
            }
            Err(idx) => {
                if !v.is_zero() {
                    self.data[r].insert(idx, (c as u32, v));
                }
            }
        }
    }

    pub fn row_entries(&self, r: usize) -> &[(u32, Scalar)] {
        &self.data[r]
    }

    pub fn row_dense(&self, r: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.cols];
        for (c, v) in &self.data[r] {
            out[*c as usize] = v.clone();
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row_dense(r)).collect()
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut out = MatrixQ::zero(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.data[*c as usize].push((r as u32, v.clone()));
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixQ) -> Result<MatrixQ, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = MatrixQ::zero(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k as usize] {
                    let slot = acc.entry(*c).or_insert_with(Scalar::zero);
                    *slot += a * b;
                }
            }
            out.data[r] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MatrixQ) -> Result<MatrixQ, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix difference",
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (r, row) in other.data.iter().enumerate() {
            for (c, v) in row {
                let cur = out.get(r, *c as usize);
                out.set(r, *c as usize, cur - v);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> MatrixQ {
        if s.is_zero() {
            return MatrixQ::zero(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect())
            .collect();
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                left: self.cols,
                right: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (c, a) in row {
                    acc += a * &v[*c as usize];
                }
                acc
            })
            .collect())
    }

    /// Row-major flattening of an `n x n` matrix into a length `n*n` vector.
    pub fn flatten_row_major(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rows * self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r * self.cols + *c as usize] = v.clone();
            }
        }
        out
    }

    /// Inverse of [`MatrixQ::flatten_row_major`].
    pub fn from_flat(rows: usize, cols: usize, flat: &[Scalar]) -> MatrixQ {
        assert_eq!(flat.len(), rows * cols);
        let mut m = MatrixQ::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = &flat[r * cols + c];
                if !v.is_zero() {
                    m.data[r].push((c as u32, v.clone()));
                }
            }
        }
        m
    }

    /// Deterministic reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        if self.cols < DENSE_COL_THRESHOLD {
            self.rref_dense()
        } else {
            self.rref_sparse()
        }
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.cols);
        for row in &self.data {
            red.add_row_sparse(row);
        }
        red.rank()
    }

    /// Canonical kernel basis: one vector per free column in index order,
    /// with the free variable set to 1; identical to the basis read off
    /// the reduced row-echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut red = RowReducer::new(self.cols);
        for row in &self.data {
            red.add_row_sparse(row);
        }
        red.kernel_basis()
    }

    fn rref_dense(&self) -> Rref {
        let mut a = self.to_dense();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..cols {
            if pivot_row >= rows {
                break;
            }
            let found = (pivot_row..rows).find(|&r| !a[r][col].is_zero());
            let Some(r) = found else { continue };
            a.swap(pivot_row, r);
            let inv = a[pivot_row][col].clone();
            for j in col..cols {
                let v = a[pivot_row][j].clone();
                a[pivot_row][j] = v / &inv;
            }
            for r2 in 0..rows {
                if r2 == pivot_row || a[r2][col].is_zero() {
                    continue;
                }
                let f = a[r2][col].clone();
                for j in col..cols {
                    let sub = &f * &a[pivot_row][j];
                    let v = a[r2][j].clone();
                    a[r2][j] = v - sub;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: MatrixQ::from_dense(&a),
            pivots,
            rank,
        }
    }

    fn rref_sparse(&self) -> Rref {
        let mut red = RowReducer::new(self.cols);
        for row in &self.data {
            red.add_row_sparse(row);
        }
        let reduced = red.into_rref_rows();
        let rank = reduced.len();
        let pivots: Vec<usize> = reduced.iter().map(|r| r[0].0 as usize).collect();
        let mut data: Vec<Vec<(u32, Scalar)>> = reduced;
        data.resize(self.rows.max(rank), Vec::new());
        data.truncate(self.rows.max(rank));
        // Keep the original row count; echelon forms never need more rows
        // than the rank, so padding with zero rows is safe.
        let mut m = MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data,
        };
        m.data.truncate(self.rows);
        while m.data.len() < self.rows {
            m.data.push(Vec::new());
        }
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row = self
                .row_dense(r)
                .iter()
                .map(crate::scalar::render)
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(f, "  [{row}]")?;
        }
        write!(f, "]")
    }
}

type IntRow = Vec<(u32, BigInt)>;

/// Streaming row-echelon accumulator.
///
/// Rows are integerized on entry (denominators cleared, content divided out)
/// and reduced against the pivots seen so far; a nonzero residue becomes a
/// new pivot. Feeding rows in a fixed order makes the result deterministic,
/// and the canonical kernel/rank depend only on the row space, so this
/// matches the batch reduced-echelon path exactly.
pub struct RowReducer {
    cols: usize,
    pivots: BTreeMap<u32, IntRow>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.keys().map(|c| *c as usize).collect()
    }

    /// Adds a rational row given as ordered `(col, value)` pairs.
    pub fn add_row_sparse(&mut self, row: &[(u32, Scalar)]) {
        self.add_int_row(integerize(row));
    }

    /// Adds a dense rational row.
    pub fn add_row_dense(&mut self, row: &[Scalar]) {
        debug_assert_eq!(row.len(), self.cols);
        let sparse: Vec<(u32, Scalar)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c as u32, v.clone()))
            .collect();
        self.add_int_row(integerize(&sparse));
    }

    fn add_int_row(&mut self, mut row: IntRow) {
        loop {
            normalize_content(&mut row);
            let Some(&(lead, _)) = row.first() else {
                return;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    row = eliminate(&row, pivot);
                }
                None => {
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Residual of a dense rational vector against the accumulated row space.
    /// Zero residual means membership.
    pub fn reduce_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.cols);
        let mut r = v.to_vec();
        for (&c, pivot) in &self.pivots {
            let lead_col = c as usize;
            if r[lead_col].is_zero() {
                continue;
            }
            let lead_val = Scalar::from_integer(pivot[0].1.clone());
            let factor = &r[lead_col] / &lead_val;
            for (col, a) in pivot {
                let sub = &factor * &Scalar::from_integer(a.clone());
                let cur = r[*col as usize].clone();
                r[*col as usize] = cur - sub;
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce_vector(v).iter().all(Scalar::is_zero)
    }

    /// Canonical kernel basis of the accumulated rows (free variables set to
    /// one in column order), obtained by back-substitution.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let pivot_cols: Vec<u32> = self.pivots.keys().copied().collect();
        let is_pivot: std::collections::HashSet<u32> = pivot_cols.iter().copied().collect();
        let free_cols: Vec<u32> = (0..self.cols as u32)
            .filter(|c| !is_pivot.contains(c))
            .collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut v = vec![Scalar::zero(); self.cols];
            v[fc as usize] = Scalar::one();
            for (&pc, row) in self.pivots.iter().rev() {
                let mut acc = Scalar::zero();
                for (col, a) in row.iter().skip(1) {
                    if !v[*col as usize].is_zero() {
                        acc += Scalar::from_integer(a.clone()) * &v[*col as usize];
                    }
                }
                if !acc.is_zero() {
                    v[pc as usize] = -acc / Scalar::from_integer(row[0].1.clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Finishes the reduction into canonical reduced-echelon rows
    /// (pivots normalized to 1, pivot columns cleared above).
    fn into_rref_rows(self) -> Vec<Vec<(u32, Scalar)>> {
        let rows: Vec<IntRow> = self.pivots.into_values().collect();
        let pivot_col_of: Vec<u32> = rows.iter().map(|r| r[0].0).collect();
        let col_to_idx: BTreeMap<u32, usize> = pivot_col_of
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i))
            .collect();
        let mut reduced: Vec<IntRow> = rows;
        for i in (0..reduced.len()).rev() {
            // Clear later pivot columns from row i, in ascending column order.
            loop {
                let target = reduced[i]
                    .iter()
                    .skip(1)
                    .map(|(c, _)| *c)
                    .find(|c| col_to_idx.contains_key(c));
                let Some(c) = target else { break };
                let j = col_to_idx[&c];
                let combined = eliminate_at(&reduced[i], &reduced[j], c);
                reduced[i] = combined;
                normalize_content(&mut reduced[i]);
            }
        }
        reduced
            .into_iter()
            .map(|row| {
                let lead = Scalar::from_integer(row[0].1.clone());
                row.into_iter()
                    .map(|(c, a)| (c, Scalar::from_integer(a) / &lead))
                    .collect()
            })
            .collect()
    }
}

/// Clears denominators and divides out integer content; leading entry made
/// positive.
fn integerize(row: &[(u32, Scalar)]) -> IntRow {
    if row.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IntRow = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .filter(|(_, a)| !a.is_zero())
        .collect();
    normalize_content(&mut out);
    out
}

/// Divides a row by the gcd of its entries and fixes the sign of the lead.
fn normalize_content(row: &mut IntRow) {
    row.retain(|(_, a)| !a.is_zero());
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, a) in row.iter() {
        g = g.gcd(a);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, a) in row.iter_mut() {
            *a = &*a / &g;
        }
    }
}

/// Cross-multiplication elimination of `row`'s leading entry against `pivot`
/// (which leads at the same column).
fn eliminate(row: &IntRow, pivot: &IntRow) -> IntRow {
    debug_assert_eq!(row[0].0, pivot[0].0);
    eliminate_at(row, pivot, row[0].0)
}

/// Returns `pivot_lead/g * row - row[col]/g * pivot`, cancelling column `col`.
fn eliminate_at(row: &IntRow, pivot: &IntRow, col: u32) -> IntRow {
    let row_coeff = row
        .iter()
        .find(|(c, _)| *c == col)
        .map(|(_, a)| a.clone())
        .expect("eliminate_at: column absent");
    let pivot_lead = &pivot[0].1;
    let g = row_coeff.gcd(pivot_lead);
    let scale_row = pivot_lead / &g;
    let scale_pivot = &row_coeff / &g;
    let mut out: IntRow = Vec::with_capacity(row.len() + pivot.len());
    let mut i = 0usize;
    let mut j = 0usize;
    while i < row.len() || j < pivot.len() {
        let next_row = row.get(i).map(|e| e.0);
        let next_piv = pivot.get(j).map(|e| e.0);
        match (next_row, next_piv) {
            (Some(a), Some(b)) if a == b => {
                let v = &row[i].1 * &scale_row - &pivot[j].1 * &scale_pivot;
                if !v.is_zero() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push((a, &row[i].1 * &scale_row));
                i += 1;
            }
            (Some(_), Some(_)) => {
                out.push((pivot[j].0, -(&pivot[j].1 * &scale_pivot)));
                j += 1;
            }
            (Some(a), None) => {
                out.push((a, &row[i].1 * &scale_row));
                i += 1;
            }
            (None, Some(b)) => {
                out.push((b, -(&pivot[j].1 * &scale_pivot)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Basis of the intersection of two subspaces given by spanning vectors in
/// the same ambient dimension.
pub fn intersect_subspaces(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, Error> {
    let dim = a
        .first()
        .or_else(|| b.first())
        .map(Vec::len)
        .unwrap_or(0);
    for v in a.iter().chain(b.iter()) {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "subspace intersection",
                left: dim,
                right: v.len(),
            });
        }
    }
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    // Kernel of [A^T | -B^T]: a kernel vector (alpha, beta) encodes
    // sum alpha_i a_i = sum beta_j b_j, an intersection vector.
    let mut stacked = MatrixQ::zero(dim, a.len() + b.len());
    for (i, v) in a.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            if !x.is_zero() {
                stacked.set(r, i, x.clone());
            }
        }
    }
    for (j, v) in b.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            if !x.is_zero() {
                stacked.set(r, a.len() + j, -x.clone());
            }
        }
    }
    let kernel = stacked.kernel_basis();
    let spanning: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|k| {
            let mut v = vec![Scalar::zero(); dim];
            for (i, av) in a.iter().enumerate() {
                if k[i].is_zero() {
                    continue;
                }
                for (r, x) in av.iter().enumerate() {
                    if !x.is_zero() {
                        v[r] += &k[i] * x;
                    }
                }
            }
            v
        })
        .collect();
    Ok(canonical_basis(&spanning))
}

/// Reduced-echelon canonical basis of the span of the given vectors.
pub fn canonical_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = MatrixQ::from_dense(vectors);
    let red = m.rref();
    (0..red.rank).map(|r| red.matrix.row_dense(r)).collect()
}

/// Expresses `v` in the given basis, or reports it is not a member.
/// Coefficients refer to the basis as given; with a dependent spanning set
/// the solution with free coefficients set to zero is returned.
pub fn membership(v: &[Scalar], basis: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>, Error> {
    if basis.is_empty() {
        return if v.iter().all(Scalar::is_zero) {
            Ok(Some(Vec::new()))
        } else {
            Ok(None)
        };
    }
    let dim = basis[0].len();
    if v.len() != dim || basis.iter().any(|b| b.len() != dim) {
        return Err(Error::DimensionMismatch {
            context: "membership",
            left: dim,
            right: v.len(),
        });
    }
    // Solve B^T x = v from the reduced echelon form of [B^T | v].
    let mut aug = MatrixQ::zero(dim, basis.len() + 1);
    for (j, b) in basis.iter().enumerate() {
        for (r, x) in b.iter().enumerate() {
            if !x.is_zero() {
                aug.set(r, j, x.clone());
            }
        }
    }
    for (r, x) in v.iter().enumerate() {
        if !x.is_zero() {
            aug.set(r, basis.len(), x.clone());
        }
    }
    let red = aug.rref();
    if red.pivots.contains(&basis.len()) {
        return Ok(None);
    }
    let mut coeffs = vec![Scalar::zero(); basis.len()];
    for (row, &pc) in red.pivots.iter().enumerate() {
        coeffs[pc] = red.matrix.get(row, basis.len());
    }
    Ok(Some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense(rows: &[&[i64]]) -> MatrixQ {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|x| int(*x)).collect())
            .collect();
        MatrixQ::from_dense(&rows)
    }

    /// Independent oracle: naive dense elimination with full pivoting.
    fn oracle_rank(m: &MatrixQ) -> usize {
        let mut a = m.to_dense();
        let rows = m.rows();
        let cols = m.cols();
        let mut rank = 0usize;
        let mut used = vec![false; rows];
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in 0..rows {
                if used[r] {
                    continue;
                }
                for c in 0..cols {
                    if !a[r][c].is_zero() {
                        best = Some((r, c));
                        break;
                    }
                }
                if best.is_some() {
                    break;
                }
            }
            let Some((pr, pc)) = best else { break };
            used[pr] = true;
            rank += 1;
            for r in 0..rows {
                if r == pr || a[r][pc].is_zero() {
                    continue;
                }
                let f = &a[r][pc] / &a[pr][pc];
                for c in 0..cols {
                    let sub = &f * &a[pr][c];
                    let v = a[r][c].clone();
                    a[r][c] = v - sub;
                }
            }
        }
        rank
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> MatrixQ {
        let data: Vec<Vec<Scalar>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.gen_bool(0.7) {
                            ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
                        } else {
                            int(0)
                        }
                    })
                    .collect()
            })
            .collect();
        MatrixQ::from_dense(&data)
    }

    #[test]
    fn rref_identity_fixed_point() {
        let m = MatrixQ::identity(2);
        let red = m.rref();
        assert_eq!(red.matrix, m);
        assert_eq!(red.pivots, vec![0, 1]);
        assert_eq!(red.rank, 2);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = dense(&[&[1, 2], &[2, 4]]);
        let red = m.rref();
        assert_eq!(red.matrix, dense(&[&[1, 2], &[0, 0]]));
        assert_eq!(red.pivots, vec![0]);
        assert_eq!(red.rank, 1);
    }

    #[test]
    fn rref_rank_matches_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(01);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, 5, 7);
            let red = m.rref();
            assert_eq!(red.rank, oracle_rank(&m));
            assert_eq!(red.rank, m.transpose().rank());
            assert_eq!(m.cols(), red.rank + m.kernel_basis().len());
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 4, 6);
            let red = m.rref();
            let red2 = red.matrix.rref();
            assert_eq!(red.matrix, red2.matrix);
            assert_eq!(red.pivots, red2.pivots);
        }
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let m = MatrixQ::zero(3, 3);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(MatrixQ::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_canonical_example() {
        let m = dense(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // Free column 1 set to one; proportional to (1, -1, 0).
        assert_eq!(k[0], vec![int(-1), int(1), int(0)]);
        assert!(m.apply(&k[0]).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn kernel_vectors_satisfy_system_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 6, 9);
            for v in m.kernel_basis() {
                assert!(m.apply(&v).unwrap().iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // Force the sparse path by widening with zero columns.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 5, 8);
            let mut wide = MatrixQ::zero(5, DENSE_COL_THRESHOLD + 8);
            for r in 0..5 {
                for (c, v) in m.row_entries(r) {
                    wide.set(r, *c as usize + DENSE_COL_THRESHOLD, v.clone());
                }
            }
            let red_wide = wide.rref();
            let red = m.rref();
            assert_eq!(red_wide.rank, red.rank);
            let shifted: Vec<usize> = red.pivots.iter().map(|c| c + DENSE_COL_THRESHOLD).collect();
            assert_eq!(red_wide.pivots, shifted);
            for r in 0..red.rank {
                let narrow = red.matrix.row_dense(r);
                let wide_row = red_wide.matrix.row_dense(r);
                assert_eq!(&wide_row[DENSE_COL_THRESHOLD..], &narrow[..]);
            }
        }
    }

    #[test]
    fn intersect_trivial_cases() {
        let e1 = vec![int(1), int(0), int(0)];
        let e2 = vec![int(0), int(1), int(0)];
        let same = intersect_subspaces(&[e1.clone()], &[e1.clone()]).unwrap();
        assert_eq!(same, vec![e1.clone()]);
        let disjoint = intersect_subspaces(&[e1.clone()], &[e2]).unwrap();
        assert!(disjoint.is_empty());
        let mismatch = intersect_subspaces(&[e1], &[vec![int(1), int(0)]]);
        assert!(mismatch.is_err());
    }

    #[test]
    fn intersect_dimension_identity_on_random_subspaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let a: Vec<Vec<Scalar>> = (0..3)
                .map(|_| (0..5).map(|_| int(rng.gen_range(-5..=5))).collect())
                .collect();
            let b: Vec<Vec<Scalar>> = (0..3)
                .map(|_| (0..5).map(|_| int(rng.gen_range(-5..=5))).collect())
                .collect();
            let dim_a = MatrixQ::from_dense(&a).rank();
            let dim_b = MatrixQ::from_dense(&b).rank();
            let stacked: Vec<Vec<Scalar>> = a.iter().chain(b.iter()).cloned().collect();
            let dim_sum = MatrixQ::from_dense(&stacked).rank();
            let inter = intersect_subspaces(&a, &b).unwrap();
            assert_eq!(inter.len(), dim_a + dim_b - dim_sum);
        }
    }

    #[test]
    fn membership_examples() {
        let b0 = vec![int(1), int(2), int(0)];
        let b1 = vec![int(0), int(1), int(1)];
        let basis = vec![b0.clone(), b1.clone()];
        let zero = vec![int(0), int(0), int(0)];
        assert_eq!(membership(&zero, &basis).unwrap().unwrap(), vec![int(0), int(0)]);
        assert_eq!(membership(&b0, &basis).unwrap().unwrap(), vec![int(1), int(0)]);
        let combo: Vec<Scalar> = (0..3).map(|i| &b0[i] + &b1[i] * int(2)).collect();
        assert_eq!(membership(&combo, &basis).unwrap().unwrap(), vec![int(1), int(2)]);
        let outside = vec![int(1), int(0), int(0)];
        assert!(membership(&outside, &basis).unwrap().is_none());
    }

    #[test]
    fn membership_round_trip_on_random_bases() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let basis: Vec<Vec<Scalar>> = (0..2)
                .map(|_| (0..4).map(|_| int(rng.gen_range(-5..=5))).collect())
                .collect();
            if MatrixQ::from_dense(&basis).rank() < 2 {
                continue;
            }
            let c0 = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            let c1 = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            let v: Vec<Scalar> = (0..4)
                .map(|i| &basis[0][i] * &c0 + &basis[1][i] * &c1)
                .collect();
            let coeffs = membership(&v, &basis).unwrap().unwrap();
            assert_eq!(coeffs, vec![c0, c1]);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rank_identities(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..8);
            let m = random_matrix(&mut rng, rows, cols);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.cols(), m.rank() + m.kernel_basis().len());
        }
    }
}
