use std::sync::Arc;

use crate::cyclo::{sparse_axpy, CycNum, Echelon, ExactMatrix, Field, SparseVec};

use super::{HopfBundle, HopfError};

/// A finite-dimensional left `H`-module: one action matrix per basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    name: String,
    dim: usize,
    field: Field,
    action: Arc<Vec<ExactMatrix>>,
}

impl Rep {
    pub fn new(name: impl Into<String>, field: &Field, dim: usize, action: Vec<ExactMatrix>) -> Result<Rep, HopfError> {
        let name = name.into();
        for (i, m) in action.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(HopfError::Structure(format!(
                    "module {name:?}: action of e{i} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if m.field() != field {
                return Err(HopfError::Structure(format!("module {name:?}: matrices in the wrong field")));
            }
        }
        Ok(Rep {
            name,
            dim,
            field: field.clone(),
            action: Arc::new(action),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Rep {
        Rep {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn action_len(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self, i: usize) -> &ExactMatrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[ExactMatrix] {
        &self.action
    }

    /// `ρ(x)` for an element `x` of `H`.
    pub fn act(&self, x: &[(usize, CycNum)]) -> ExactMatrix {
        x.iter().fold(ExactMatrix::zeros(&self.field, self.dim, self.dim), |acc, (i, c)| {
            acc.axpy(c, &self.action[*i])
        })
    }

    /// `(ρ⊗ρ')(t)` for `t ∈ H⊗H`, as a matrix on `self ⊗ other`.
    pub fn act_pair(&self, other: &Rep, d: usize, t: &[(usize, CycNum)]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(&self.field, self.dim * other.dim, self.dim * other.dim);
        for (ij, c) in t {
            let k = self.action[ij / d].kron(&other.action[ij % d]);
            out = out.axpy(c, &k);
        }
        out
    }

    /// Names of violated module axioms (empty if this is a module).
    pub fn check(&self, b: &HopfBundle) -> Vec<String> {
        let d = b.dim();
        let mut out = Vec::new();
        if self.action.len() != d {
            out.push(format!("wrong number of action matrices ({})", self.action.len()));
            return out;
        }
        if !self.act(b.unit()).is_identity() {
            out.push("unit does not act as the identity".into());
        }
        'outer: for i in 0..d {
            for j in 0..d {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(b.mul_basis(i, j));
                if lhs != rhs {
                    out.push(format!("action is not multiplicative at (e{i}, e{j})"));
                    break 'outer;
                }
            }
        }
        out
    }
}

/// `ρ(e_i) = Σ c ρ_M(e_j) ⊗ ρ_N(e_k)` over `Δ(e_i)`; the first factor is the
/// major index.
pub fn tensor_rep(b: &HopfBundle, m: &Rep, n: &Rep) -> Rep {
    let d = b.dim();
    let action = (0..d).map(|i| m.act_pair(n, d, b.comult_basis(i))).collect();
    Rep {
        name: format!("{}⊗{}", m.name, n.name),
        dim: m.dim * n.dim,
        field: b.field().clone(),
        action: Arc::new(action),
    }
}

/// `ρ*(h) = ρ(S h)^T`.
pub fn dual_rep(b: &HopfBundle, m: &Rep) -> Rep {
    let action = (0..b.dim()).map(|i| m.act(b.antipode_basis(i)).transpose()).collect();
    let name = if m.name.contains('⊗') {
        format!("({})*", m.name)
    } else {
        format!("{}*", m.name)
    };
    Rep {
        name,
        dim: m.dim,
        field: m.field.clone(),
        action: Arc::new(action),
    }
}

pub fn direct_sum(m: &Rep, n: &Rep) -> Rep {
    let action = m
        .action
        .iter()
        .zip(n.action.iter())
        .map(|(a, c)| {
            let top = a.hstack(&ExactMatrix::zeros(&m.field, m.dim, n.dim));
            let bottom = ExactMatrix::zeros(&m.field, n.dim, m.dim).hstack(c);
            top.vstack(&bottom)
        })
        .collect();
    Rep {
        name: format!("{}⊕{}", m.name, n.name),
        dim: m.dim + n.dim,
        field: m.field.clone(),
        action: Arc::new(action),
    }
}

/// Left multiplication; column `j` of `ρ(e_i)` is `e_i e_j`.
pub fn regular_rep(b: &HopfBundle) -> Rep {
    let d = b.dim();
    let action = (0..d)
        .map(|i| {
            let cols: Vec<SparseVec> = (0..d).map(|j| b.mul_basis(i, j).clone()).collect();
            ExactMatrix::from_sparse_columns(b.field(), d, &cols)
        })
        .collect();
    Rep {
        name: "regular".into(),
        dim: d,
        field: b.field().clone(),
        action: Arc::new(action),
    }
}

/// The tensor unit, `ρ(h) = ε(h)`.
pub fn trivial_rep(b: &HopfBundle) -> Rep {
    let action = (0..b.dim())
        .map(|i| ExactMatrix::scalar(b.counit_basis(i).clone()))
        .collect();
    Rep {
        name: "1".into(),
        dim: 1,
        field: b.field().clone(),
        action: Arc::new(action),
    }
}

/// Equations `ρ_N(x) F - F ρ_M(x) = 0` for the algebra generators `x`, in the
/// unknowns `F[a][c]` at index `a * m + c`.
fn intertwiner_rows(b: &HopfBundle, m: &Rep, n: &Rep) -> Vec<SparseVec> {
    let (dm, dn) = (m.dim, n.dim);
    let mut rows = Vec::new();
    for &g in b.generators() {
        let am = m.action(g);
        let an = n.action(g);
        let am_cols = am.columns_sparse();
        for a in 0..dn {
            for c in 0..dm {
                let mut row: SparseVec = an.row(a).iter().map(|(bb, v)| (bb * dm + c, v.clone())).collect();
                let minus: SparseVec = am_cols[c].iter().map(|(bb, v)| (a * dm + bb, v.clone())).collect();
                row = sparse_axpy(&row, &CycNum::from_int(b.field(), -1), &minus);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Basis of `Hom_H(M, N)`, each an `n x m` matrix.
pub fn hom_space(b: &HopfBundle, m: &Rep, n: &Rep) -> Vec<ExactMatrix> {
    let nvars = m.dim * n.dim;
    let mut e = Echelon::new(b.field(), nvars);
    for row in intertwiner_rows(b, m, n) {
        e.insert(row);
        if e.is_full() {
            break;
        }
    }
    e.into_rref()
        .kernel_sparse()
        .iter()
        .map(|v| ExactMatrix::unvectorize(b.field(), n.dim, m.dim, v))
        .collect()
}

fn flip_rows(mat: &ExactMatrix, dm: usize, dn: usize) -> ExactMatrix {
    // row (a, c) of M⊗N becomes row (c, a) of N⊗M
    let perm: Vec<usize> = (0..dn * dm).map(|r| (r % dm) * dn + r / dm).collect();
    mat.select_rows(&perm)
}

/// `c_{M,N} = flip ∘ (ρ_M⊗ρ_N)(R) : M⊗N → N⊗M`.
pub fn braiding(b: &HopfBundle, m: &Rep, n: &Rep) -> Result<ExactMatrix, HopfError> {
    let r = b.r_matrix()?;
    Ok(flip_rows(&m.act_pair(n, b.dim(), r), m.dim, n.dim))
}

/// `c_{M,N}^{-1} = (ρ_M⊗ρ_N)(R⁻¹) ∘ flip : N⊗M → M⊗N`.
pub fn braiding_inv(b: &HopfBundle, m: &Rep, n: &Rep) -> Result<ExactMatrix, HopfError> {
    let r_inv = b.r_matrix_inv()?;
    let x = m.act_pair(n, b.dim(), r_inv);
    // columns (a, c) of M⊗N read from position (c, a) of N⊗M
    Ok(flip_rows(&x.transpose(), m.dim, n.dim).transpose())
}

/// Categorical twist `θ_M = ρ_M(v⁻¹)`; with `Δ(v) = (R21 R)⁻¹(v⊗v)` this is
/// the choice satisfying `θ_{M⊗N} = c_{N,M} c_{M,N} (θ_M⊗θ_N)`.
pub fn twist(b: &HopfBundle, m: &Rep) -> Result<ExactMatrix, HopfError> {
    Ok(m.act(b.ribbon_inv()?))
}

pub fn twist_inv(b: &HopfBundle, m: &Rep) -> Result<ExactMatrix, HopfError> {
    Ok(m.act(b.ribbon()?))
}

type HigmanTerms = Vec<(Vec<SparseVec>, ExactMatrix, CycNum)>;

/// Terms `(columns of ρ(Λ1), ρ(S Λ2), c)` of `Δ(Λ)` acting on `M`.
fn higman_terms(b: &HopfBundle, m: &Rep) -> HigmanTerms {
    let d = b.dim();
    b.comult(b.left_integral())
        .into_iter()
        .map(|(ij, c)| (m.action(ij / d).columns_sparse(), m.act(b.antipode_basis(ij % d)), c))
        .collect()
}

/// Average of the elementary matrix `E_kl`.
fn elementary_average(f: &Field, terms: &HigmanTerms, n: usize, k: usize, l: usize) -> ExactMatrix {
    let mut img = ExactMatrix::zeros(f, n, n);
    for (cols, sb, c) in terms {
        let col = &cols[k];
        let row = sb.row(l);
        if col.is_empty() || row.is_empty() {
            continue;
        }
        let mut outer = ExactMatrix::zeros(f, n, n);
        for (i, x) in col {
            let cx = c * x;
            for (j, y) in row {
                outer.set(*i, *j, &cx * y);
            }
        }
        img = img.add(&outer);
    }
    img
}

/// Higman's criterion: `M` is projective iff `id_M = Σ ρ(Λ1) f ρ(S Λ2)` for
/// some linear `f`, with `Λ` a left integral.
pub fn is_projective(b: &HopfBundle, m: &Rep) -> bool {
    let n = m.dim;
    let f = b.field();
    let terms = higman_terms(b, m);
    let target = ExactMatrix::identity(f, n).vectorize();
    let end_dim = hom_space(b, m, m).len();
    let mut span = Echelon::new(f, n * n);
    for k in 0..n {
        for l in 0..n {
            let v = elementary_average(f, &terms, n, k, l).vectorize();
            if !v.is_empty() {
                span.insert(v);
            }
            if span.rank() == end_dim {
                return true;
            }
        }
    }
    span.reduce(target).is_empty()
}

/// A linear `t : M → M` with `Σ ρ(Λ1) t ρ(S Λ2) = id_M`, if `M` is projective.
pub fn higman_witness(b: &HopfBundle, m: &Rep) -> Option<ExactMatrix> {
    let n = m.dim;
    let f = b.field();
    let terms = higman_terms(b, m);
    let cols: Vec<SparseVec> = (0..n * n)
        .map(|kl| elementary_average(f, &terms, n, kl / n, kl % n).vectorize())
        .collect();
    let a = ExactMatrix::from_sparse_columns(f, n * n, &cols);
    let mut e = Echelon::with_rhs(f, n * n, 1);
    for (r, row) in a.rows().iter().enumerate() {
        let mut row = row.clone();
        if r / n == r % n {
            row.push((n * n, CycNum::one(f)));
        }
        if !row.is_empty() {
            e.insert(row);
        }
    }
    let x = e.into_rref().particular()?;
    Some(ExactMatrix::unvectorize(f, n, n, &sparse_from_column(&x)))
}

fn sparse_from_column(x: &ExactMatrix) -> SparseVec {
    x.rows()
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.first().map(|(_, v)| (i, v.clone())))
        .collect()
}

/// `Σ ρ_N(Λ1) T ρ_M(S Λ2)` for a linear `T : M → N`; always `H`-linear.
pub fn average(b: &HopfBundle, m: &Rep, n: &Rep, t: &ExactMatrix) -> ExactMatrix {
    let d = b.dim();
    let mut acc = ExactMatrix::zeros(b.field(), n.dim, m.dim);
    for (ij, c) in b.comult(b.left_integral()) {
        let left = n.action(ij / d).mul(t);
        acc = acc.axpy(&c, &left.mul(&m.act(b.antipode_basis(ij % d))));
    }
    acc
}

/// The defining route: the multiplication map `H⊗M → M` from the free module
/// on the underlying space of `M` has an `H`-linear section.
pub fn is_projective_split(b: &HopfBundle, m: &Rep) -> bool {
    let d = b.dim();
    let n = m.dim;
    let f = b.field();
    let free_action: Vec<ExactMatrix> = (0..d)
        .map(|i| regular_rep_action(b, i).kron(&ExactMatrix::identity(f, n)))
        .collect();
    let free = Rep {
        name: "free".into(),
        dim: d * n,
        field: f.clone(),
        action: Arc::new(free_action),
    };
    // section s : M → H⊗M, unknown s[r][c] at r * n + c
    let nvars = d * n * n;
    let mut e = Echelon::with_rhs(f, nvars, 1);
    for row in intertwiner_rows(b, m, &free) {
        e.insert(row);
    }
    // π s = id, where π(e_i ⊗ v_k) = ρ(e_i) v_k
    for a in 0..n {
        for c in 0..n {
            let mut row: SparseVec = Vec::new();
            for i in 0..d {
                for k in 0..n {
                    let x = m.action(i).get(a, k);
                    if !x.is_zero() {
                        row.push(((i * n + k) * n + c, x));
                    }
                }
            }
            if a == c {
                row.push((nvars, CycNum::one(f)));
            }
            if !row.is_empty() {
                e.insert(row);
            }
        }
    }
    e.is_consistent()
}

fn regular_rep_action(b: &HopfBundle, i: usize) -> ExactMatrix {
    let cols: Vec<SparseVec> = (0..b.dim()).map(|j| b.mul_basis(i, j).clone()).collect();
    ExactMatrix::from_sparse_columns(b.field(), b.dim(), &cols)
}
