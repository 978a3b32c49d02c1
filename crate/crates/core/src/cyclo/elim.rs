//! Exact elimination.
//!
//! Two independent routes produce the same reduced row echelon form:
//! a fraction-free Bareiss pass over `Z[zeta_N]` for dense matrices, and an
//! incremental sparse Gauss-Jordan used for the large structured systems
//! (intertwiners, invariants). Pivots are always chosen leftmost column
//! first, topmost row within a column; the RREF is unique, so both routes
//! agree exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{Field, FieldData};
use super::matrix::{sparse_axpy, sparse_scale, sparse_to_dense, ExactMatrix, SparseVec};
use super::num::CycNum;

/// Reduced row echelon form restricted to the first `nvars` columns; columns
/// past `nvars` (if any) are carried along as right-hand sides.
#[derive(Clone, Debug)]
pub struct Rref {
    field: Field,
    ncols: usize,
    nvars: usize,
    /// Pivot rows sorted by pivot column; each has a leading 1.
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    inconsistent: bool,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.nvars];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.nvars).filter(|&j| !is_pivot[j]).collect()
    }

    /// Null-space basis of the variable block, one vector per free column in
    /// increasing order.
    pub fn kernel_sparse(&self) -> Vec<SparseVec> {
        let one = CycNum::one(&self.field);
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v: SparseVec = vec![(f, one.clone())];
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                        v.push((p, -&row[k].1));
                    }
                }
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }

    pub fn kernel_dense(&self) -> Vec<Vec<CycNum>> {
        self.kernel_sparse()
            .iter()
            .map(|v| sparse_to_dense(&self.field, v, self.nvars))
            .collect()
    }

    /// Particular solution with all free variables zero; `None` if the system
    /// is inconsistent. Returned as `nvars x (ncols - nvars)`.
    pub fn particular(&self) -> Option<ExactMatrix> {
        if self.inconsistent {
            return None;
        }
        let nrhs = self.ncols - self.nvars;
        let mut x = ExactMatrix::zeros(&self.field, self.nvars, nrhs);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (j, v) in row.iter().filter(|(j, _)| *j >= self.nvars) {
                x.set(p, j - self.nvars, v.clone());
            }
        }
        Some(x)
    }
}

/// Incremental sparse Gauss-Jordan elimination.
pub struct Echelon {
    field: Field,
    ncols: usize,
    nvars: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    inconsistent: bool,
}

impl Echelon {
    pub fn new(field: &Field, ncols: usize) -> Self {
        Self::with_rhs(field, ncols, 0)
    }

    /// `nvars` variable columns followed by `nrhs` right-hand-side columns.
    pub fn with_rhs(field: &Field, nvars: usize, nrhs: usize) -> Self {
        Echelon {
            field: field.clone(),
            ncols: nvars + nrhs,
            nvars,
            rows: Vec::new(),
            pivot_row: vec![None; nvars],
            inconsistent: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.nvars
    }

    /// Reduce `row` against the current pivots; returns the remainder.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut idx = 0;
        while idx < row.len() {
            let (j, ref v) = row[idx];
            if j >= self.nvars {
                break;
            }
            match self.pivot_row[j] {
                Some(p) => {
                    let c = -v;
                    row = sparse_axpy(&row, &c, &self.rows[p]);
                }
                None => idx += 1,
            }
        }
        row
    }

    /// Add an equation row. Returns `true` if it raised the rank.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        debug_assert!(row.iter().all(|(j, v)| *j < self.ncols && !v.is_zero()));
        let mut row = row;
        let idx = 0;
        while idx < row.len() {
            let j = row[idx].0;
            if j >= self.nvars {
                break;
            }
            match self.pivot_row[j] {
                Some(p) => {
                    let c = -&row[idx].1;
                    row = sparse_axpy(&row, &c, &self.rows[p]);
                }
                None => {
                    let lead = row[idx].1.inv().expect("nonzero pivot");
                    let normalized = sparse_scale(&row[idx..], &lead);
                    self.pivot_row[j] = Some(self.rows.len());
                    self.rows.push(normalized);
                    return true;
                }
            }
        }
        if !row.is_empty() {
            self.inconsistent = true;
        }
        false
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn into_rref(self) -> Rref {
        let Echelon {
            field,
            ncols,
            nvars,
            mut rows,
            pivot_row,
            inconsistent,
        } = self;
        let pivots: Vec<usize> = (0..nvars).filter(|&j| pivot_row[j].is_some()).collect();
        for &c in pivots.iter().rev() {
            let p = pivot_row[c].unwrap();
            let prow = std::mem::take(&mut rows[p]);
            for (q, other) in rows.iter_mut().enumerate() {
                if q == p {
                    continue;
                }
                if let Ok(k) = other.binary_search_by_key(&c, |e| e.0) {
                    let coef = -&other[k].1;
                    *other = sparse_axpy(other, &coef, &prow);
                }
            }
            rows[p] = prow;
        }
        let sorted_rows = pivots
            .iter()
            .map(|&c| std::mem::take(&mut rows[pivot_row[c].unwrap()]))
            .collect();
        Rref {
            field,
            ncols,
            nvars,
            rows: sorted_rows,
            pivots,
            inconsistent,
        }
    }
}

/// Sparse route: RREF of `m` with the first `nvars` columns as variables.
pub fn rref_sparse(m: &ExactMatrix, nvars: usize) -> Rref {
    let mut e = Echelon::with_rhs(m.field(), nvars, m.ncols() - nvars);
    for r in m.rows() {
        if !r.is_empty() {
            e.insert(r.clone());
        }
    }
    e.into_rref()
}

type ZElem = Vec<BigInt>;

fn z_is_zero(a: &ZElem) -> bool {
    a.iter().all(|c| c.is_zero())
}

fn z_exact_div(data: &FieldData, a: &ZElem, b: &ZElem) -> ZElem {
    if b.len() == 1 || b[1..].iter().all(|c| c.is_zero()) {
        let d = &b[0];
        return a
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(d);
                debug_assert!(r.is_zero(), "inexact Bareiss division");
                q
            })
            .collect();
    }
    let conj = data.conjugate_product(b);
    let norm = data.mul_poly(b, &conj)[0].clone();
    data.mul_poly(a, &conj)
        .into_iter()
        .map(|c| {
            let (q, r) = c.div_rem(&norm);
            debug_assert!(r.is_zero(), "inexact Bareiss division");
            q
        })
        .collect()
}

/// Fraction-free route: Bareiss elimination over `Z[zeta_N]` after clearing
/// denominators row by row, then back-substitution over the field.
pub fn rref_bareiss(m: &ExactMatrix, nvars: usize) -> Rref {
    let field = m.field().clone();
    let data = field.data();
    let deg = field.degree();
    let (nrows, ncols) = m.shape();
    let zero: ZElem = vec![BigInt::zero(); deg];
    let mut a: Vec<Vec<ZElem>> = m
        .rows()
        .iter()
        .map(|r| {
            let l = r
                .iter()
                .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denominator()));
            let mut dense = vec![zero.clone(); ncols];
            for (j, v) in r {
                let s = &l / v.denominator();
                dense[*j] = v.numerators().iter().map(|c| c * &s).collect();
            }
            dense
        })
        .collect();

    let mut prev: ZElem = zero.clone();
    prev[0] = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..nvars {
        let Some(i) = (r..nrows).find(|&i| !z_is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(i, r);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let p = &prow[c];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[c], zero.clone());
            for j in c + 1..ncols {
                let mut t = data.mul_poly(p, &row[j]);
                if !z_is_zero(&lead) && !z_is_zero(&prow[j]) {
                    let u = data.mul_poly(&lead, &prow[j]);
                    for (x, y) in t.iter_mut().zip(u) {
                        *x -= y;
                    }
                }
                row[j] = if z_is_zero(&t) {
                    t
                } else {
                    z_exact_div(data, &t, &prev)
                };
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let inconsistent = a[r..]
        .iter()
        .any(|row| row[nvars..].iter().any(|x| !z_is_zero(x)));

    let one = BigInt::one();
    let mut e = Echelon::with_rhs(&field, nvars, ncols - nvars);
    for row in a.iter().take(r) {
        let sparse: SparseVec = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !z_is_zero(x))
            .map(|(j, x)| (j, CycNum::from_parts(&field, x.clone(), one.clone())))
            .collect();
        let inserted = e.insert(sparse);
        debug_assert!(inserted);
    }
    let mut rref = e.into_rref();
    rref.inconsistent |= inconsistent;
    debug_assert_eq!(rref.pivots, pivots);
    rref
}

/// Solution set of `A X = B`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    /// One solution with all free variables set to zero.
    pub particular: ExactMatrix,
    /// Basis of `ker A` (each a column of length `A.ncols()`).
    pub kernel: Vec<Vec<CycNum>>,
}

impl ExactMatrix {
    pub fn rref(&self) -> Rref {
        rref_bareiss(self, self.ncols())
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<CycNum>> {
        self.rref().kernel_dense()
    }

    /// Solve `self * X = rhs`. `None` means the system has no solution.
    pub fn solve_linear(&self, rhs: &ExactMatrix) -> Option<AffineSolution> {
        assert_eq!(
            self.nrows(),
            rhs.nrows(),
            "solve_linear: row count mismatch"
        );
        let aug = self.hstack(rhs);
        let rref = rref_bareiss(&aug, self.ncols());
        let particular = rref.particular()?;
        Some(AffineSolution {
            particular,
            kernel: rref.kernel_dense(),
        })
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.nrows() != self.ncols() {
            return None;
        }
        let n = self.nrows();
        let sol = self.solve_linear(&ExactMatrix::identity(self.field(), n))?;
        sol.kernel.is_empty().then_some(sol.particular)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let k = q();
        let a = ExactMatrix::identity(&k, 3);
        let b = ExactMatrix::from_ints(&k, &[&[1, 2], &[3, 4], &[5, 6]]);
        let sol = a.solve_linear(&b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_with_nonzero_rhs_is_infeasible() {
        let k = q();
        let a = ExactMatrix::zeros(&k, 2, 2);
        let b = ExactMatrix::from_ints(&k, &[&[1], &[0]]);
        assert!(a.solve_linear(&b).is_none());
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let k = q();
        assert!(ExactMatrix::identity(&k, 4).kernel_basis().is_empty());
        let z = ExactMatrix::zeros(&k, 3, 3).kernel_basis();
        assert_eq!(z.len(), 3);
        for (i, v) in z.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert!(x.is_zero() || i == j);
            }
        }
    }

    #[test]
    fn bareiss_and_sparse_agree_over_cyclotomic() {
        let k = Field::cyclotomic(6);
        let z = CycNum::zeta(&k);
        let one = CycNum::one(&k);
        let rows = vec![
            vec![z.clone(), one.clone(), CycNum::zero(&k), &z * &z],
            vec![&z * &z, &z + &one, one.clone(), CycNum::from_int(&k, 2)],
            vec![&(&z * &z) * &z, &(&z * &z) + &z, z.clone(), &z * &CycNum::from_int(&k, 2) + &z * &z],
        ];
        let m = ExactMatrix::from_dense(&k, rows).unwrap();
        let a = rref_bareiss(&m, 4);
        let b = rref_sparse(&m, 4);
        assert_eq!(a.pivots(), b.pivots());
        assert_eq!(a.rows(), b.rows());
        for v in a.kernel_dense() {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_of_small_matrix() {
        let k = q();
        let a = ExactMatrix::from_ints(&k, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let singular = ExactMatrix::from_ints(&k, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }
}
