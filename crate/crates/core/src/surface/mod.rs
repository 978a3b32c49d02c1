//! Skein algebras of punctured surfaces as invariant subalgebras of braided
//! tensor powers of the coend.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::coend::{coadjoint_rep, coend_power, dinat, qchar, slf_basis, CoendError};
use crate::cyclo::serial::scalar_to_json;
use crate::cyclo::{CycNum, Echelon, ExactMatrix, Field, SparseVec};
use crate::hopf::{braiding, dual_rep, hom_space, regular_rep, tensor_rep, trivial_rep, HopfBundle, HopfError, Rep};

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error(transparent)]
    Coend(#[from] CoendError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// Module pairs whose tensor product exceeds this dimension are skipped by the
/// multiplicativity check in [`char_map`].
pub const MULTIPLICATIVITY_DIM_LIMIT: usize = 256;

/// Convolution `(f*k)(x) = Σ f(x₁) k(x₂)` as a `d × d²` matrix.
pub fn convolution(b: &HopfBundle) -> ExactMatrix {
    let d = b.dim();
    let rows = (0..d).map(|x| b.comult_basis(x).clone()).collect();
    ExactMatrix::from_sparse_rows(b.field(), d * d, rows)
}

/// Coend product `L ⊗ L → L`,
/// `m(f⊗k)(h) = Σ f(S(R¹) h₁) k(S(R²₍₂₎) h₂ R²₍₁₎)`.
pub fn coend_mult(b: &HopfBundle) -> Result<ExactMatrix, HopfError> {
    let d = b.dim();
    let r = b.r_matrix()?;
    let mut acc: Vec<BTreeMap<usize, CycNum>> = vec![BTreeMap::new(); d];
    for (h, out) in acc.iter_mut().enumerate() {
        for (ij, c) in b.comult_basis(h) {
            let (h1, h2) = (b.basis(ij / d), b.basis(ij % d));
            for (rr, cr) in r {
                let x = b.mul(&b.antipode_basis(rr / d).clone(), &h1);
                let crc = c * cr;
                for (st, cd) in b.comult_basis(rr % d) {
                    let y = b.mul_all(&[b.antipode_basis(st % d), &h2, &b.basis(st / d)]);
                    let w = &crc * cd;
                    for (a, xa) in &x {
                        let wx = &w * xa;
                        for (bb, yb) in &y {
                            let e = out.entry(a * d + bb).or_insert_with(|| CycNum::zero(b.field()));
                            *e = &*e + &(&wx * yb);
                        }
                    }
                }
            }
        }
    }
    let rows = acc
        .into_iter()
        .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    Ok(ExactMatrix::from_sparse_rows(b.field(), d * d, rows))
}

/// The coend product from its dinatural characterization: on the regular
/// representation, `m(i_H(1⊗f) ⊗ i_H(1⊗k)) = i_{H⊗H}((id ⊗ c_{H*, H⊗H*})(1⊗f⊗1⊗k))`.
/// Works with `d³`-dimensional matrices, so it is meant for small bundles.
pub fn coend_mult_via_dinat(b: &HopfBundle) -> Result<ExactMatrix, HopfError> {
    let d = b.dim();
    let h = regular_rep(b);
    let hd = dual_rep(b, &h);
    let c = braiding(b, &hd, &tensor_rep(b, &h, &hd))?;
    let i2 = dinat(b, &tensor_rep(b, &h, &h));
    let unit = b.unit();
    let mut cols = Vec::with_capacity(d * d);
    for a in 0..d {
        for k in 0..d {
            // e_a* ⊗ 1 ⊗ e_k* in H* ⊗ H ⊗ H*
            let v: SparseVec = unit.iter().map(|(u, x)| ((a * d + u) * d + k, x.clone())).collect();
            let w = c.mul_sparse_vec(&v);
            // 1 ⊗ (n ⊗ ψ ⊗ φ) becomes (1 ⊗ n) ⊗ (dual basis of (1 ⊗ n)) indexed (φ, ψ)
            let mut full: BTreeMap<usize, CycNum> = BTreeMap::new();
            for (u, x) in unit {
                for (idx, y) in &w {
                    let (n, psi, phi) = (idx / (d * d), (idx / d) % d, idx % d);
                    let key = (u * d + n) * d * d + phi * d + psi;
                    let e = full.entry(key).or_insert_with(|| CycNum::zero(b.field()));
                    *e = &*e + &(x * y);
                }
            }
            let full: SparseVec = full.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            cols.push(i2.mul_sparse_vec(&full));
        }
    }
    Ok(ExactMatrix::from_sparse_columns(b.field(), d, &cols))
}

/// Coordinates with respect to a fixed basis of a subspace.
struct Coords {
    n: usize,
    len: usize,
    ech: Echelon,
}

impl Coords {
    fn new(field: &Field, len: usize, basis: &[SparseVec]) -> Coords {
        let n = basis.len();
        let mut ech = Echelon::with_rhs(field, len, n);
        for (i, v) in basis.iter().enumerate() {
            let mut row = v.clone();
            row.push((len + i, CycNum::one(field)));
            ech.insert(row);
        }
        Coords { n, len, ech }
    }

    /// `None` if `v` is outside the span.
    fn of(&self, field: &Field, v: &[(usize, CycNum)]) -> Option<Vec<CycNum>> {
        let r = self.ech.reduce(v.to_vec());
        if r.iter().any(|(j, _)| *j < self.len) {
            return None;
        }
        let mut out = vec![CycNum::zero(field); self.n];
        for (j, x) in r {
            out[j - self.len] = -x;
        }
        Some(out)
    }
}

/// Braided product on `L^{⊗m}`: the second factor's copies cross over the
/// first factor's later copies through `c_{L,L}`, then copies multiply pairwise.
struct BraidedPower {
    d: usize,
    m: usize,
    field: Field,
    mult_cols: Vec<SparseVec>,
    cross_cols: Vec<SparseVec>,
}

impl BraidedPower {
    fn new(b: &HopfBundle, m: usize, mult: &ExactMatrix, l: &Rep) -> Result<BraidedPower, HopfError> {
        let cross_cols = if m > 1 { braiding(b, l, l)?.columns_sparse() } else { Vec::new() };
        Ok(BraidedPower {
            d: b.dim(),
            m,
            field: b.field().clone(),
            mult_cols: mult.columns_sparse(),
            cross_cols,
        })
    }

    fn digits(&self, mut idx: usize, slots: usize) -> Vec<usize> {
        let mut out = vec![0; slots];
        for s in (0..slots).rev() {
            out[s] = idx % self.d;
            idx /= self.d;
        }
        out
    }

    fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &x| acc * self.d + x)
    }

    fn cross(&self, v: BTreeMap<usize, CycNum>, slots: usize, p: usize) -> BTreeMap<usize, CycNum> {
        let mut out: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (idx, x) in v {
            let mut dg = self.digits(idx, slots);
            for (uv, y) in &self.cross_cols[dg[p] * self.d + dg[p + 1]] {
                dg[p] = uv / self.d;
                dg[p + 1] = uv % self.d;
                let e = out.entry(self.index(&dg)).or_insert_with(|| CycNum::zero(&self.field));
                *e = &*e + &(&x * y);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn mul(&self, x: &[(usize, CycNum)], y: &[(usize, CycNum)]) -> SparseVec {
        let (d, m) = (self.d, self.m);
        let shift = d.pow(m as u32);
        let mut v: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (i, a) in x {
            for (j, c) in y {
                v.insert(i * shift + j, a * c);
            }
        }
        // move the j-th copy of y left past copies j+1..m of x
        for j in 0..m {
            let from = m + j;
            let to = 2 * j + 1;
            for p in (to..from).rev() {
                v = self.cross(v, 2 * m, p);
            }
        }
        let mut out: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (idx, x) in v {
            let dg = self.digits(idx, 2 * m);
            let mut terms: Vec<(usize, CycNum)> = vec![(0, x)];
            for s in 0..m {
                let col = &self.mult_cols[dg[2 * s] * d + dg[2 * s + 1]];
                terms = terms
                    .iter()
                    .flat_map(|(acc, c)| col.iter().map(move |(k, y)| (acc * d + k, c * y)))
                    .collect();
            }
            for (k, c) in terms {
                let e = out.entry(k).or_insert_with(|| CycNum::zero(&self.field));
                *e = &*e + &c;
            }
        }
        out.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// `SkAlg(Σ_{g,n})` in a basis of invariants of `L^{⊗(2g+n−1)}`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub bundle: String,
    pub g: usize,
    pub n: usize,
    pub copies: usize,
    pub field: Field,
    pub labels: Vec<String>,
    /// Basis vectors in `(H*)^{⊗copies}`.
    pub basis: Vec<SparseVec>,
    /// `e_i e_j = Σ_k c e_k` as `(i, j, k, c)`.
    pub structure: Vec<(usize, usize, usize, CycNum)>,
    pub unit: Vec<CycNum>,
    pub provenance: Vec<String>,
}

impl AlgebraPresentation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn table(&self) -> Vec<Vec<Vec<CycNum>>> {
        let n = self.dim();
        let mut t = vec![vec![vec![CycNum::zero(&self.field); n]; n]; n];
        for (i, j, k, c) in &self.structure {
            t[*i][*j][*k] = c.clone();
        }
        t
    }

    pub fn mul(&self, x: &[CycNum], y: &[CycNum]) -> Vec<CycNum> {
        let n = self.dim();
        let mut out = vec![CycNum::zero(&self.field); n];
        for (i, j, k, c) in &self.structure {
            if x[*i].is_zero() || y[*j].is_zero() {
                continue;
            }
            out[*k] = &out[*k] + &(&(&x[*i] * &y[*j]) * c);
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(&self.field); self.dim()];
        v[i] = CycNum::one(&self.field);
        v
    }

    /// Triples `(i, j, k)` with `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
    pub fn associativity_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let t = self.table();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&t[i][j], &self.basis_vec(k));
                    let right = self.mul(&self.basis_vec(i), &t[j][k]);
                    if left != right {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    pub fn unit_holds(&self) -> bool {
        (0..self.dim()).all(|i| {
            let e = self.basis_vec(i);
            self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e
        })
    }

    pub fn is_commutative(&self) -> bool {
        let t = self.table();
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| t[i][j] == t[j][i]))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "bundle": self.bundle,
            "g": self.g,
            "n": self.n,
            "copies": self.copies,
            "dim": self.dim(),
            "basis_labels": self.labels,
            "unit": self.unit.iter().map(scalar_to_json).collect::<Vec<_>>(),
            "structure_constants": self
                .structure
                .iter()
                .map(|(i, j, k, c)| json!([i, j, k, scalar_to_json(c)]))
                .collect::<Vec<_>>(),
            "basis_vectors": self
                .basis
                .iter()
                .map(|v| v.iter().map(|(i, c)| json!([i, scalar_to_json(c)])).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "provenance": self.provenance,
        })
    }

    pub const CSV_HEADER: &'static str = "bundle,g,n,dim,image_rank";

    pub fn csv_row(&self, image_rank: Option<usize>) -> String {
        format!(
            "{},{},{},{},{}",
            self.bundle,
            self.g,
            self.n,
            self.dim(),
            image_rank.map(|r| r.to_string()).unwrap_or_default()
        )
    }
}

fn invariant_vectors(b: &HopfBundle, m: &Rep) -> Vec<SparseVec> {
    hom_space(b, &trivial_rep(b), m).iter().map(ExactMatrix::vectorize).collect()
}

/// `dim Hom(1, L^{⊗m})` computed as `dim Hom_H(L*, L^{⊗(m−1)})`, a second
/// linear system for the same number.
pub fn invariant_dim_via_duality(b: &HopfBundle, m: usize) -> usize {
    let l = coadjoint_rep(b);
    let rest = if m == 1 { trivial_rep(b) } else { coend_power(b, m - 2, &l) };
    hom_space(b, &dual_rep(b, &l), &rest).len()
}

fn epsilon_power(b: &HopfBundle, m: usize) -> SparseVec {
    let eps: SparseVec = (0..b.dim())
        .filter_map(|i| {
            let c = b.counit_basis(i).clone();
            (!c.is_zero()).then_some((i, c))
        })
        .collect();
    let d = b.dim();
    (1..m).fold(eps.clone(), |acc, _| {
        acc.iter()
            .flat_map(|(i, x)| eps.iter().map(move |(j, y)| (i * d + j, x * y)))
            .collect()
    })
}

/// The skein algebra of the genus-`g` surface with `n ≥ 1` boundary
/// components, on `m = 2g+n−1` copies of `L` (handle pairs first).
///
/// For `m = 1` (the annulus) invariants of `L` are the symmetric forms and the
/// product of two invariants is their convolution, which needs no R-matrix.
pub fn skalg(b: &HopfBundle, g: usize, n: usize) -> Result<AlgebraPresentation, SurfaceError> {
    if n == 0 {
        return Err(SurfaceError::Unsupported("closed surfaces (n = 0) are out of scope".into()));
    }
    let m = 2 * g + n - 1;
    if m == 0 {
        return Err(SurfaceError::Unsupported("the disk has no coend copies (2g+n−1 = 0)".into()));
    }
    let f = b.field();
    let l = coadjoint_rep(b);
    let (basis, product, prov_tag) = if m == 1 {
        let slf = slf_basis(b);
        let inv = invariant_vectors(b, &l).len();
        if inv != slf.len() {
            return Err(SurfaceError::Consistency(format!(
                "{} symmetric forms but {} invariants of L",
                slf.len(),
                inv
            )));
        }
        (slf, BraidedPower::new(b, 1, &convolution(b), &l)?, "slf")
    } else {
        let mult = coend_mult(b)?;
        let power = coend_power(b, m - 1, &l);
        let inv = invariant_vectors(b, &power);
        let other = invariant_dim_via_duality(b, m);
        if inv.len() != other {
            return Err(SurfaceError::Consistency(format!(
                "dim Hom(1, L^{m}) is {} but dim Hom(L*, L^{}) is {other}",
                inv.len(),
                m - 1
            )));
        }
        (inv, BraidedPower::new(b, m, &mult, &l)?, "inv")
    };
    let len = b.dim().pow(m as u32);
    let coords = Coords::new(f, len, &basis);
    let dim = basis.len();
    let mut structure = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let p = product.mul(&basis[i], &basis[j]);
            let c = coords.of(f, &p).ok_or_else(|| {
                SurfaceError::Consistency(format!("product of basis elements {i} and {j} is not invariant"))
            })?;
            for (k, x) in c.into_iter().enumerate() {
                if !x.is_zero() {
                    structure.push((i, j, k, x));
                }
            }
        }
    }
    let unit = coords
        .of(f, &epsilon_power(b, m))
        .ok_or_else(|| SurfaceError::Consistency("ε^{⊗m} is not invariant".into()))?;
    Ok(AlgebraPresentation {
        bundle: b.name().to_string(),
        g,
        n,
        copies: m,
        field: f.clone(),
        labels: (0..dim).map(|i| format!("{prov_tag}{i}")).collect(),
        basis,
        structure,
        unit,
        provenance: (0..dim)
            .map(|i| if m == 1 { format!("symmetric form {i}") } else { format!("invariant {i} of L^{m}") })
            .collect(),
    })
}

/// Recheck closure outside the span test used during construction: every
/// basis vector and every product of two basis vectors is fixed by the
/// generators of `H` acting on `L^{⊗m}`, and each product equals its
/// expansion in structure constants. Returns the offending pairs, with
/// `(i, i)` for a basis vector that is not invariant.
pub fn closure_failures(b: &HopfBundle, alg: &AlgebraPresentation) -> Result<Vec<(usize, usize)>, SurfaceError> {
    let m = alg.copies;
    let l = coadjoint_rep(b);
    let power = coend_power(b, m - 1, &l);
    let product = if m == 1 {
        BraidedPower::new(b, 1, &convolution(b), &l)?
    } else {
        BraidedPower::new(b, m, &coend_mult(b)?, &l)?
    };
    let invariant = |v: &[(usize, CycNum)]| {
        b.generators().iter().all(|&g| {
            let eps = b.counit_basis(g);
            power.action(g).mul_sparse_vec(v) == crate::cyclo::sparse_scale(v, eps)
        })
    };
    let mut failures: Vec<(usize, usize)> = (0..alg.dim()).filter(|&i| !invariant(&alg.basis[i])).map(|i| (i, i)).collect();
    let mut expected: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (i, j, k, c) in &alg.structure {
        let e = expected.entry((*i, *j)).or_default();
        *e = crate::cyclo::sparse_axpy(e, c, &alg.basis[*k]);
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let p = product.mul(&alg.basis[i], &alg.basis[j]);
            let want = expected.get(&(i, j)).cloned().unwrap_or_default();
            if !invariant(&p) || p != want {
                failures.push((i, j));
            }
        }
    }
    Ok(failures)
}

#[derive(Clone, Debug)]
pub struct CharMapReport {
    /// Coordinates of the character of each listed simple module.
    pub images: Vec<(String, Vec<CycNum>)>,
    pub rank: usize,
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    /// Module pairs with `χ_M χ_N ≠ χ_{M⊗N}`.
    pub failures: Vec<String>,
}

impl CharMapReport {
    pub fn to_json(&self) -> Value {
        json!({
            "images": self
                .images
                .iter()
                .map(|(name, c)| json!({"module": name, "coords": c.iter().map(scalar_to_json).collect::<Vec<_>>()}))
                .collect::<Vec<_>>(),
            "rank": self.rank,
            "multiplicativity": {
                "pairs_checked": self.pairs_checked,
                "pairs_skipped": self.pairs_skipped,
                "failures": self.failures,
            },
        })
    }
}

/// The canonical map from characters into the annulus algebra.
pub fn char_map(b: &HopfBundle, alg: &AlgebraPresentation) -> Result<CharMapReport, SurfaceError> {
    if alg.copies != 1 || alg.g != 0 {
        return Err(SurfaceError::Unsupported("char_map needs the annulus algebra (g = 0, n = 2)".into()));
    }
    let f = b.field();
    let simples = b.simples();
    if simples.is_empty() {
        return Err(CoendError::NoSimples.into());
    }
    let coords = Coords::new(f, b.dim(), &alg.basis);
    let express = |m: &Rep| {
        coords
            .of(f, &qchar(b, m))
            .ok_or_else(|| SurfaceError::Consistency(format!("character of {} is not in the algebra", m.name())))
    };
    let mut images = Vec::new();
    let mut span = Echelon::new(f, alg.dim());
    for s in simples {
        let c = express(s)?;
        span.insert(c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect());
        images.push((s.name().to_string(), c));
    }
    let mut failures = Vec::new();
    let (mut checked, mut skipped) = (0, 0);
    let mods: Vec<Rep> = std::iter::once(trivial_rep(b)).chain(b.modules().iter().cloned()).collect();
    let chars = mods.iter().map(express).collect::<Result<Vec<_>, _>>()?;
    for (x, cx) in mods.iter().zip(&chars) {
        for (y, cy) in mods.iter().zip(&chars) {
            if x.dim() * y.dim() > MULTIPLICATIVITY_DIM_LIMIT {
                skipped += 1;
                continue;
            }
            checked += 1;
            if alg.mul(cx, cy) != express(&tensor_rep(b, x, y))? {
                failures.push(format!("{} * {}", x.name(), y.name()));
            }
        }
    }
    Ok(CharMapReport {
        images,
        rank: span.rank(),
        pairs_checked: checked,
        pairs_skipped: skipped,
        failures,
    })
}
