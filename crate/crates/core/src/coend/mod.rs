//! The coend `L`, modeled on `H*`. A linear form `f` is stored by its values
//! `f(e_k)` on the basis of `H`.
//!
//! Two coadjoint actions appear. [`coadjoint_rep`] uses
//! `(h·f)(x) = f(S(h₂) x h₁)`, which makes [`dinat`] on `M ⊗ M*` `H`-linear;
//! its invariants are exactly the symmetric linear forms. [`coadjoint_rep_left`]
//! uses `(h·f)(x) = f(S(h₁) x h₂)` (the coend on `M* ⊗ M`); its invariants are
//! carried onto the symmetric forms by `f ↦ f(g·−)`.

use thiserror::Error;

use crate::cyclo::{sparse_to_dense, CycNum, Echelon, ExactMatrix, SparseVec};
use crate::hopf::{
    average, higman_witness, hom_space, is_projective, regular_rep, tensor_rep, trivial_rep, HopfBundle, HopfError,
    Rep,
};

#[derive(Debug, Error)]
pub enum CoendError {
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("bundle lists no simple modules")]
    NoSimples,
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

fn coadjoint(b: &HopfBundle, name: &str, left_first: bool) -> Rep {
    let d = b.dim();
    let f = b.field();
    let action = (0..d)
        .map(|h| {
            // ρ(h)[x][y] is the coefficient of e_y in S(h₂) e_x h₁ (or S(h₁) e_x h₂)
            let mut m = ExactMatrix::zeros(f, d, d);
            for (ij, c) in b.comult_basis(h) {
                let (h1, h2) = (b.basis(ij / d), b.basis(ij % d));
                let (s, r) = if left_first { (b.antipode(&h1), h2) } else { (b.antipode(&h2), h1) };
                for x in 0..d {
                    for (y, v) in b.mul_all(&[&s, &b.basis(x), &r]) {
                        let cur = m.get(x, y);
                        m.set(x, y, &cur + &(c * &v));
                    }
                }
            }
            m
        })
        .collect();
    Rep::new(name, f, d, action).expect("coadjoint action has the right shape")
}

/// `L = H*` with `(h·f)(x) = f(S(h₂) x h₁)`.
pub fn coadjoint_rep(b: &HopfBundle) -> Rep {
    coadjoint(b, "L", false)
}

/// `H*` with `(h·f)(x) = f(S(h₁) x h₂)`.
pub fn coadjoint_rep_left(b: &HopfBundle) -> Rep {
    coadjoint(b, "L'", true)
}

/// Matrix coefficients `M ⊗ M* → H*`, `m ⊗ φ ↦ (h ↦ φ(ρ(h) m))`.
pub fn dinat(b: &HopfBundle, m: &Rep) -> ExactMatrix {
    let n = m.dim();
    let mut out = ExactMatrix::zeros(b.field(), b.dim(), n * n);
    for h in 0..b.dim() {
        for (j, row) in m.action(h).rows().iter().enumerate() {
            for (i, v) in row {
                out.set(h, i * n + j, v.clone());
            }
        }
    }
    out
}

/// `f ↦ f(g·−)`.
pub fn g_twist(b: &HopfBundle, f: &[(usize, CycNum)]) -> SparseVec {
    twist_by(b, b.pivotal(), f)
}

fn twist_by(b: &HopfBundle, g: &[(usize, CycNum)], f: &[(usize, CycNum)]) -> SparseVec {
    let d = b.dim();
    let dense = sparse_to_dense(b.field(), f, d);
    (0..d)
        .filter_map(|x| {
            let v = b
                .mul(g, &b.basis(x))
                .iter()
                .fold(CycNum::zero(b.field()), |acc, (k, c)| &acc + &(c * &dense[*k]));
            (!v.is_zero()).then_some((x, v))
        })
        .collect()
}

/// `f(xy) = f(yx)` on all basis pairs.
pub fn is_slf(b: &HopfBundle, f: &[(usize, CycNum)]) -> bool {
    let d = b.dim();
    let dense = sparse_to_dense(b.field(), f, d);
    let eval = |v: &SparseVec| v.iter().fold(CycNum::zero(b.field()), |acc, (k, c)| &acc + &(c * &dense[*k]));
    (0..d).all(|i| (i + 1..d).all(|j| eval(b.mul_basis(i, j)) == eval(b.mul_basis(j, i))))
}

/// Basis of the symmetric linear forms, from the equations `f(e_i e_j) = f(e_j e_i)`.
pub fn slf_basis(b: &HopfBundle) -> Vec<SparseVec> {
    let d = b.dim();
    let minus = CycNum::from_int(b.field(), -1);
    let mut e = Echelon::new(b.field(), d);
    'outer: for i in 0..d {
        for j in i + 1..d {
            let row = crate::cyclo::sparse_axpy(b.mul_basis(i, j), &minus, b.mul_basis(j, i));
            if !row.is_empty() {
                e.insert(row);
                if e.is_full() {
                    break 'outer;
                }
            }
        }
    }
    e.into_rref().kernel_sparse()
}

fn invariants(b: &HopfBundle, m: &Rep) -> Vec<SparseVec> {
    hom_space(b, &trivial_rep(b), m).iter().map(ExactMatrix::vectorize).collect()
}

/// The symmetric forms again, as the `g`-twist of the invariants of
/// [`coadjoint_rep_left`].
pub fn slf_basis_via_invariants(b: &HopfBundle) -> Vec<SparseVec> {
    invariants(b, &coadjoint_rep_left(b)).iter().map(|f| g_twist(b, f)).collect()
}

/// The character `x ↦ tr ρ_M(x)`, a symmetric linear form.
pub fn qchar(b: &HopfBundle, m: &Rep) -> SparseVec {
    (0..b.dim())
        .filter_map(|x| {
            let t = m.action(x).trace();
            (!t.is_zero()).then_some((x, t))
        })
        .collect()
}

/// The twisted trace `x ↦ tr ρ_M(g⁻¹ x)`, invariant for [`coadjoint_rep_left`];
/// its `g`-twist is [`qchar`].
pub fn qchar_invariant(b: &HopfBundle, m: &Rep) -> Result<SparseVec, HopfError> {
    let gi = m.act(b.pivotal_inv()?);
    Ok((0..b.dim())
        .filter_map(|x| {
            let t = gi.mul(m.action(x)).trace();
            (!t.is_zero()).then_some((x, t))
        })
        .collect())
}

/// Rank of the span of the characters of the listed simple modules.
pub fn canonical_image_dim(b: &HopfBundle) -> Result<usize, CoendError> {
    let simples = b.simples();
    if simples.is_empty() {
        return Err(CoendError::NoSimples);
    }
    let mut e = Echelon::new(b.field(), b.dim());
    for s in simples {
        e.insert(qchar(b, s));
    }
    Ok(e.rank())
}

/// `L^{⊗k} ⊗ X` as a module (`X` alone when `k = 0`).
pub fn coend_power(b: &HopfBundle, k: usize, x: &Rep) -> Rep {
    let l = coadjoint_rep(b);
    (0..k).rev().fold(x.clone(), |acc, _| tensor_rep(b, &l, &acc))
}

fn check_intertwiner(b: &HopfBundle, f: &ExactMatrix, src: &Rep, dst: &Rep) -> Result<(), CoendError> {
    if f.shape() != (dst.dim(), src.dim()) {
        return Err(CoendError::Shape(format!(
            "map is {}x{}, expected {}x{}",
            f.nrows(),
            f.ncols(),
            dst.dim(),
            src.dim()
        )));
    }
    for &g in b.generators() {
        if dst.action(g).mul(f) != f.mul(src.action(g)) {
            return Err(CoendError::NotIntertwiner(format!("fails for basis element {g}")));
        }
    }
    Ok(())
}

/// `(dinat_H^{⊗k} ⊗ id_X) : (H ⊗ H*)^{⊗k} ⊗ X → L^{⊗k} ⊗ X`.
pub fn reassemble_map(b: &HopfBundle, k: usize, x: &Rep) -> ExactMatrix {
    let i_h = dinat(b, &regular_rep(b));
    (0..k).fold(ExactMatrix::identity(b.field(), x.dim()), |acc, _| i_h.kron(&acc))
}

/// Resolve the `k` coend slots of an intertwiner `f : P → L^{⊗k} ⊗ X` through
/// the regular representation. Returns a single term `(1, F)` with
/// `F : P → (H ⊗ H*)^{⊗k} ⊗ X` intertwining and
/// `reassemble_map(k, X) ∘ F = f`.
pub fn red_to_blue(
    b: &HopfBundle,
    f: &ExactMatrix,
    p: &Rep,
    k: usize,
    x: &Rep,
) -> Result<Vec<(CycNum, ExactMatrix)>, CoendError> {
    if !is_projective(b, p) {
        return Err(CoendError::Inadmissible("lift requires projectivity".into()));
    }
    check_intertwiner(b, f, p, &coend_power(b, k, x))?;
    let one = CycNum::one(b.field());
    if k == 0 {
        return Ok(vec![(one, f.clone())]);
    }
    let d = b.dim();
    // linear section of dinat_H: φ ↦ 1 ⊗ φ
    let mut section = ExactMatrix::zeros(b.field(), d * d, d);
    for (i, u) in b.unit() {
        for a in 0..d {
            section.set(i * d + a, a, u.clone());
        }
    }
    let sections = (0..k).fold(ExactMatrix::identity(b.field(), x.dim()), |acc, _| section.kron(&acc));
    let t = higman_witness(b, p).ok_or_else(|| CoendError::Inadmissible("lift requires projectivity".into()))?;
    let h = regular_rep(b);
    let hh = tensor_rep(b, &h, &crate::hopf::dual_rep(b, &h));
    let target = (0..k).fold(x.clone(), |acc, _| tensor_rep(b, &hh, &acc));
    let lift = average(b, p, &target, &sections.mul(f).mul(&t));
    Ok(vec![(one, lift)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::bundles;

    #[test]
    fn trivial_bundle_coadjoint_is_trivial() {
        let b = bundles::trivial();
        let l = coadjoint_rep(&b);
        assert_eq!(l.actions(), trivial_rep(&b).actions());
    }

    #[test]
    fn group_algebra_acts_by_conjugation() {
        // commutative group: conjugation is trivial, L is dim-many copies of the unit
        let b = bundles::z3_braided();
        let l = coadjoint_rep(&b);
        for i in 0..3 {
            assert!(l.action(i).is_identity());
        }
        assert_eq!(slf_basis(&b).len(), 3);
    }

    #[test]
    fn trivial_character_is_counit() {
        let b = bundles::sweedler();
        let eps: SparseVec = (0..4)
            .filter_map(|i| {
                let c = b.counit_basis(i).clone();
                (!c.is_zero()).then_some((i, c))
            })
            .collect();
        assert_eq!(qchar(&b, &trivial_rep(&b)), eps);
    }

    #[test]
    fn canonical_image_needs_simples() {
        let b = bundles::trivial();
        let data = crate::hopf::bundle_to_json(&b);
        let mut v = data;
        v["simples"] = serde_json::json!([]);
        let b = crate::hopf::bundle_from_json(&v).unwrap();
        assert!(matches!(canonical_image_dim(&b), Err(CoendError::NoSimples)));
    }
}
