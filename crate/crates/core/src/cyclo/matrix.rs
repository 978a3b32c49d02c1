use std::fmt;

use super::field::Field;
use super::num::CycNum;
use super::CycError;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, CycNum)>;

/// `a + c * b` for sparse vectors.
pub fn sparse_axpy(a: &[(usize, CycNum)], c: &CycNum, b: &[(usize, CycNum)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let bj = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ai < bj {
            out.push(a[i].clone());
            i += 1;
        } else if bj < ai {
            let v = c * &b[j].1;
            if !v.is_zero() {
                out.push((bj, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((ai, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(a: &[(usize, CycNum)], c: &CycNum) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

pub fn sparse_from_dense(v: &[CycNum]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(field: &Field, v: &[(usize, CycNum)], len: usize) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(field); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Accumulates a sparse linear combination with random-access writes.
pub(crate) struct Accumulator {
    slots: Vec<Option<CycNum>>,
    touched: Vec<usize>,
}

impl Accumulator {
    pub(crate) fn new(len: usize) -> Self {
        Accumulator {
            slots: vec![None; len],
            touched: Vec::new(),
        }
    }

    pub(crate) fn add(&mut self, idx: usize, v: CycNum) {
        match &mut self.slots[idx] {
            Some(x) => *x += &v,
            slot @ None => {
                *slot = Some(v);
                self.touched.push(idx);
            }
        }
    }

    /// Drain into a sparse vector, leaving the accumulator empty.
    pub(crate) fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            if let Some(v) = self.slots[i].take() {
                if !v.is_zero() {
                    out.push((i, v));
                }
            }
        }
        self.touched.clear();
        out
    }
}

/// Exact matrix over a cyclotomic field, stored as sparse rows.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(field: &Field, nrows: usize, ncols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.rows[i].push((i, CycNum::one(field)));
        }
        m
    }

    pub fn scalar(c: CycNum) -> Self {
        let field = c.field().clone();
        let mut m = Self::zeros(&field, 1, 1);
        if !c.is_zero() {
            m.rows[0].push((0, c));
        }
        m
    }

    pub fn from_dense(field: &Field, rows: Vec<Vec<CycNum>>) -> Result<Self, CycError> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(CycError::Shape("ragged rows".into()));
        }
        let rows = rows.iter().map(|r| sparse_from_dense(r)).collect();
        Ok(ExactMatrix {
            field: field.clone(),
            nrows,
            ncols,
            rows,
        })
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&x| CycNum::from_int(field, x)).collect())
            .collect();
        Self::from_dense(field, dense).expect("ragged integer matrix")
    }

    /// Rows must be sorted and zero-free.
    pub fn from_sparse_rows(field: &Field, ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows
            .iter()
            .all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
                && r.iter().all(|(j, v)| *j < ncols && !v.is_zero())));
        ExactMatrix {
            field: field.clone(),
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn from_columns(field: &Field, nrows: usize, cols: &[Vec<CycNum>]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.rows[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub fn from_sparse_columns(field: &Field, nrows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                m.rows[*i].push((j, v.clone()));
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn row(&self, i: usize) -> &[(usize, CycNum)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> CycNum {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => CycNum::zero(&self.field),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                if v.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.insert(k, (j, v));
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn to_dense(&self) -> Vec<Vec<CycNum>> {
        self.rows
            .iter()
            .map(|r| sparse_to_dense(&self.field, r, self.ncols))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<CycNum> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns_sparse(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                cols[*j].push((i, v.clone()));
            }
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        let cols = self.columns_sparse();
        ExactMatrix {
            field: self.field.clone(),
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols,
        }
    }

    fn check_same_shape(&self, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        assert!(self.field == other.field, "matrix field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_shape(other);
        let one = CycNum::one(&self.field);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| sparse_axpy(a, &one, b))
            .collect();
        ExactMatrix {
            rows,
            ..self.clone_shape()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_shape(other);
        let m1 = -CycNum::one(&self.field);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| sparse_axpy(a, &m1, b))
            .collect();
        ExactMatrix {
            rows,
            ..self.clone_shape()
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &CycNum, other: &Self) -> Self {
        self.check_same_shape(other);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| sparse_axpy(a, c, b))
            .collect();
        ExactMatrix {
            rows,
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let rows = self.rows.iter().map(|r| sparse_scale(r, c)).collect();
        ExactMatrix {
            rows,
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-CycNum::one(&self.field))
    }

    fn clone_shape(&self) -> Self {
        ExactMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            rows: Vec::new(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.ncols, other.nrows,
            "matrix product dimension mismatch: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        assert!(self.field == other.field, "matrix field mismatch");
        let mut acc = Accumulator::new(other.ncols);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        acc.add(*j, a * b);
                    }
                }
                acc.take()
            })
            .collect();
        ExactMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(self.ncols, v.len(), "matrix-vector dimension mismatch");
        self.rows
            .iter()
            .map(|r| {
                let mut s = CycNum::zero(&self.field);
                for (j, a) in r {
                    if !v[*j].is_zero() {
                        s += &(a * &v[*j]);
                    }
                }
                s
            })
            .collect()
    }

    pub fn mul_sparse_vec(&self, v: &[(usize, CycNum)]) -> SparseVec {
        let mut dense: Vec<Option<&CycNum>> = vec![None; self.ncols];
        for (j, x) in v {
            dense[*j] = Some(x);
        }
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut s = CycNum::zero(&self.field);
            for (j, a) in r {
                if let Some(x) = dense[*j] {
                    s += &(a * x);
                }
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }

    /// Kronecker product; the row index of `self` is the major index.
    pub fn kron(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "matrix field mismatch");
        let (m, n) = other.shape();
        let mut rows = Vec::with_capacity(self.nrows * m);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * n + jb, a * b));
                    }
                }
                rows.push(row);
            }
        }
        ExactMatrix {
            field: self.field.clone(),
            nrows: self.nrows * m,
            ncols: self.ncols * n,
            rows,
        }
    }

    pub fn trace(&self) -> CycNum {
        assert_eq!(self.nrows, self.ncols, "trace of non-square matrix");
        let mut s = CycNum::zero(&self.field);
        for i in 0..self.nrows {
            if let Ok(k) = self.rows[i].binary_search_by_key(&i, |e| e.0) {
                s += &self.rows[i][k].1;
            }
        }
        s
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.nrows, other.nrows, "hstack row mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.ncols, v.clone())));
                r
            })
            .collect();
        ExactMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols + other.ncols,
            rows,
        }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.ncols, "vstack column mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        ExactMatrix {
            field: self.field.clone(),
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// Permute rows: row `i` of the result is row `perm[i]` of `self`.
    pub fn select_rows(&self, perm: &[usize]) -> Self {
        ExactMatrix {
            field: self.field.clone(),
            nrows: perm.len(),
            ncols: self.ncols,
            rows: perm.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Permute columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn select_columns(&self, perm: &[usize]) -> Self {
        let mut inverse = vec![usize::MAX; self.ncols];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out: SparseVec = r
                    .iter()
                    .filter(|(j, _)| inverse[*j] != usize::MAX)
                    .map(|(j, v)| (inverse[*j], v.clone()))
                    .collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        ExactMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: perm.len(),
            rows,
        }
    }

    pub fn embed(&self, target: &Field) -> Result<Self, CycError> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, v)| Ok((*j, v.embed(target)?)))
                    .collect::<Result<SparseVec, CycError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix {
            field: target.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    /// Entries flattened row-major (length `nrows * ncols`), sparse.
    pub fn vectorize(&self) -> SparseVec {
        let mut out = Vec::with_capacity(self.nnz());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                out.push((i * self.ncols + j, v.clone()));
            }
        }
        out
    }

    pub fn unvectorize(field: &Field, nrows: usize, ncols: usize, v: &[(usize, CycNum)]) -> Self {
        let mut rows = vec![Vec::new(); nrows];
        for (k, x) in v {
            rows[k / ncols].push((k % ncols, x.clone()));
        }
        ExactMatrix {
            field: field.clone(),
            nrows,
            ncols,
            rows,
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {:?} [", self.nrows, self.ncols, self.field)?;
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
