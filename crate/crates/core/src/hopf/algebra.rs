use crate::cyclo::{Accumulator, CycNum, Echelon, ExactMatrix, SparseVec};

use super::{HopfBundle, HopfError};

impl HopfBundle {
    pub fn basis(&self, i: usize) -> SparseVec {
        vec![(i, CycNum::one(&self.field))]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn scalar(&self, c: CycNum) -> SparseVec {
        crate::cyclo::sparse_scale(&self.unit, &c)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }

    pub fn mul(&self, a: &[(usize, CycNum)], b: &[(usize, CycNum)]) -> SparseVec {
        let mut acc = Accumulator::new(self.dim);
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in self.mul_basis(*i, *j) {
                    acc.add(*k, &xy * c);
                }
            }
        }
        acc.take()
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, factors: &[&SparseVec]) -> SparseVec {
        factors.iter().fold(self.unit.clone(), |acc, f| self.mul(&acc, f))
    }

    pub fn comult_basis(&self, i: usize) -> &SparseVec {
        &self.comult[i]
    }

    pub fn comult(&self, a: &[(usize, CycNum)]) -> SparseVec {
        let mut acc = Accumulator::new(self.dim * self.dim);
        for (i, x) in a {
            for (jk, c) in &self.comult[*i] {
                acc.add(*jk, x * c);
            }
        }
        acc.take()
    }

    pub fn counit_basis(&self, i: usize) -> &CycNum {
        &self.counit[i]
    }

    pub fn counit(&self, a: &[(usize, CycNum)]) -> CycNum {
        let mut s = CycNum::zero(&self.field);
        for (i, x) in a {
            if !self.counit[*i].is_zero() {
                s += &(x * &self.counit[*i]);
            }
        }
        s
    }

    pub fn antipode_basis(&self, i: usize) -> &SparseVec {
        &self.antipode[i]
    }

    pub fn antipode(&self, a: &[(usize, CycNum)]) -> SparseVec {
        let mut acc = Accumulator::new(self.dim);
        for (i, x) in a {
            for (j, c) in &self.antipode[*i] {
                acc.add(*j, x * c);
            }
        }
        acc.take()
    }

    /// Product in `H⊗H`.
    pub fn tensor_mul(&self, x: &[(usize, CycNum)], y: &[(usize, CycNum)]) -> SparseVec {
        let d = self.dim;
        let mut acc = Accumulator::new(d * d);
        for (ab, s) in x {
            let (a, b) = (ab / d, ab % d);
            for (ce, t) in y {
                let (c, e) = (ce / d, ce % d);
                let st = s * t;
                let left = self.mul_basis(a, c);
                let right = self.mul_basis(b, e);
                for (k, u) in left {
                    let stu = &st * u;
                    for (l, w) in right {
                        acc.add(k * d + l, &stu * w);
                    }
                }
            }
        }
        acc.take()
    }

    pub fn tensor_of(&self, x: &[(usize, CycNum)], y: &[(usize, CycNum)]) -> SparseVec {
        let d = self.dim;
        let mut out: SparseVec = Vec::with_capacity(x.len() * y.len());
        for (i, a) in x {
            for (j, b) in y {
                out.push((i * d + j, a * b));
            }
        }
        out
    }

    /// `x ↦ x_21`.
    pub fn flip(&self, x: &[(usize, CycNum)]) -> SparseVec {
        let d = self.dim;
        let mut out: SparseVec = x.iter().map(|(ij, c)| ((ij % d) * d + ij / d, c.clone())).collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Left multiplication by `a` as a `d x d` matrix.
    pub fn left_mult_matrix(&self, a: &[(usize, CycNum)]) -> ExactMatrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        ExactMatrix::from_sparse_columns(&self.field, self.dim, &cols)
    }

    /// Two-sided inverse, if `a` is a unit.
    pub fn inverse(&self, a: &[(usize, CycNum)]) -> Option<SparseVec> {
        let l = self.left_mult_matrix(a);
        let rhs = ExactMatrix::from_sparse_columns(&self.field, self.dim, std::slice::from_ref(&self.unit));
        let sol = l.solve_linear(&rhs)?;
        let x = sol.particular.columns_sparse().remove(0);
        // In a finite-dimensional algebra a right inverse is two-sided.
        (self.mul(&x, a) == self.unit).then_some(x)
    }

    pub fn r_matrix(&self) -> Result<&SparseVec, HopfError> {
        self.r.as_ref().ok_or(HopfError::Capability("R-matrix"))
    }

    pub fn r_matrix_inv(&self) -> Result<&SparseVec, HopfError> {
        self.r_inv.as_ref().ok_or(HopfError::Capability("R-matrix"))
    }

    pub fn ribbon(&self) -> Result<&SparseVec, HopfError> {
        self.ribbon.as_ref().ok_or(HopfError::Capability("ribbon element"))
    }

    pub fn ribbon_inv(&self) -> Result<&SparseVec, HopfError> {
        let v = self.ribbon()?;
        self.cache
            .ribbon_inv
            .get_or_init(|| self.inverse(v))
            .as_ref()
            .ok_or(HopfError::Structure("ribbon element is not invertible".into()))
    }

    pub fn pivotal(&self) -> &SparseVec {
        &self.pivotal
    }

    pub fn pivotal_inv(&self) -> Result<&SparseVec, HopfError> {
        self.cache
            .pivotal_inv
            .get_or_init(|| self.inverse(&self.pivotal))
            .as_ref()
            .ok_or(HopfError::Structure("pivotal element is not invertible".into()))
    }

    /// Drinfeld element `u = Σ S(R2) R1`.
    pub fn drinfeld_u(&self) -> Result<SparseVec, HopfError> {
        let d = self.dim;
        let r = self.r_matrix()?;
        let mut acc = Accumulator::new(d);
        for (ij, c) in r {
            let (i, j) = (ij / d, ij % d);
            for (k, s) in &self.antipode[j] {
                let cs = c * s;
                for (l, m) in self.mul_basis(*k, i) {
                    acc.add(*l, &cs * m);
                }
            }
        }
        Ok(acc.take())
    }

    /// Basis indices generating `H` as an algebra, chosen greedily in index
    /// order.
    pub fn generators(&self) -> &[usize] {
        self.cache.generators.get_or_init(|| {
            let d = self.dim;
            let mut gens: Vec<usize> = Vec::new();
            let mut span = Echelon::new(&self.field, d);
            let mut basis: Vec<SparseVec> = Vec::new();
            let push = |v: SparseVec, span: &mut Echelon, basis: &mut Vec<SparseVec>| {
                if !v.is_empty() && span.insert(v.clone()) {
                    basis.push(v);
                    true
                } else {
                    false
                }
            };
            push(self.unit.clone(), &mut span, &mut basis);
            for i in 0..d {
                if span.is_full() {
                    break;
                }
                if span.reduce(self.basis(i)).is_empty() {
                    continue;
                }
                gens.push(i);
                // Close the span under left multiplication by all generators.
                let mut frontier: Vec<SparseVec> = basis.clone();
                while let Some(v) = frontier.pop() {
                    for &g in &gens {
                        let w = self.mul(&self.basis(g), &v);
                        if push(w.clone(), &mut span, &mut basis) {
                            frontier.push(w);
                        }
                    }
                }
            }
            gens
        })
    }

    /// Nonzero left integral `Λ` (`hΛ = ε(h)Λ`), normalized so that its
    /// leading coordinate is 1.
    pub fn left_integral(&self) -> &SparseVec {
        self.cache.integral.get_or_init(|| {
            let d = self.dim;
            let mut e = Echelon::new(&self.field, d);
            for &g in self.generators() {
                let mut m = self.left_mult_matrix(&self.basis(g));
                for i in 0..d {
                    let x = &m.get(i, i) - &self.counit[g];
                    m.set(i, i, x);
                }
                for row in m.rows() {
                    if !row.is_empty() {
                        e.insert(row.clone());
                    }
                }
            }
            let ker = e.into_rref().kernel_sparse();
            assert_eq!(ker.len(), 1, "space of left integrals must be one-dimensional");
            ker.into_iter().next().unwrap()
        })
    }
}
