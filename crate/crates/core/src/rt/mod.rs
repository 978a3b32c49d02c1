//! Ribbon diagrams in the thickened disk as sliced words, and their
//! Reshetikhin-Turaev evaluation as matrices.
//!
//! A boundary point `(V, +)` carries `V`, `(V, -)` carries `V*`. Slices are
//! read bottom to top; each slice is a horizontal tensor product of
//! generators, leftmost factor major.

mod json;
pub mod moves;

use std::fmt;

use thiserror::Error;

use crate::cyclo::{CycNum, ExactMatrix};
use crate::hopf::{braiding, braiding_inv, dual_rep, hom_space, is_projective, tensor_rep, twist, twist_inv, HopfBundle, HopfError, Rep};

pub use json::{diagram_from_json, diagram_to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Orientation::Plus => "+",
            Orientation::Minus => "-",
        }
    }
}

/// A colored, oriented strand end.
#[derive(Clone, Debug, PartialEq)]
pub struct Obj {
    pub rep: Rep,
    pub orient: Orientation,
}

impl Obj {
    pub fn plus(rep: &Rep) -> Obj {
        Obj {
            rep: rep.clone(),
            orient: Orientation::Plus,
        }
    }

    pub fn minus(rep: &Rep) -> Obj {
        Obj {
            rep: rep.clone(),
            orient: Orientation::Minus,
        }
    }

    pub fn dual(&self) -> Obj {
        Obj {
            rep: self.rep.clone(),
            orient: self.orient.flip(),
        }
    }

    /// The module this point carries.
    pub fn module(&self, b: &HopfBundle) -> Rep {
        match self.orient {
            Orientation::Plus => self.rep.clone(),
            Orientation::Minus => dual_rep(b, &self.rep),
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rep.name(), self.orient.symbol())
    }
}

pub type Boundary = Vec<Obj>;

#[derive(Clone, Debug, PartialEq)]
pub enum Gen {
    Id(Obj),
    /// `M*⊗M → 1`, `φ⊗m ↦ φ(m)`.
    Ev(Rep),
    /// `1 → M⊗M*`.
    Coev(Rep),
    /// `M⊗M* → 1`, `m⊗φ ↦ φ(g m)`.
    EvPiv(Rep),
    /// `1 → M*⊗M`, `1 ↦ Σ φ^i ⊗ g⁻¹ m_i`.
    CoevPiv(Rep),
    Braid(Obj, Obj),
    BraidInv(Obj, Obj),
    Twist(Obj),
    TwistInv(Obj),
    Coupon {
        map: ExactMatrix,
        domain: Boundary,
        codomain: Boundary,
    },
}

impl Gen {
    pub fn domain(&self) -> Boundary {
        match self {
            Gen::Id(x) | Gen::Twist(x) | Gen::TwistInv(x) => vec![x.clone()],
            Gen::Ev(m) => vec![Obj::minus(m), Obj::plus(m)],
            Gen::EvPiv(m) => vec![Obj::plus(m), Obj::minus(m)],
            Gen::Coev(_) | Gen::CoevPiv(_) => vec![],
            Gen::Braid(x, y) => vec![x.clone(), y.clone()],
            Gen::BraidInv(x, y) => vec![y.clone(), x.clone()],
            Gen::Coupon { domain, .. } => domain.clone(),
        }
    }

    pub fn codomain(&self) -> Boundary {
        match self {
            Gen::Id(x) | Gen::Twist(x) | Gen::TwistInv(x) => vec![x.clone()],
            Gen::Ev(_) | Gen::EvPiv(_) => vec![],
            Gen::Coev(m) => vec![Obj::plus(m), Obj::minus(m)],
            Gen::CoevPiv(m) => vec![Obj::minus(m), Obj::plus(m)],
            Gen::Braid(x, y) => vec![y.clone(), x.clone()],
            Gen::BraidInv(x, y) => vec![x.clone(), y.clone()],
            Gen::Coupon { codomain, .. } => codomain.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gen::Id(_) => "Id",
            Gen::Ev(_) => "Ev",
            Gen::Coev(_) => "Coev",
            Gen::EvPiv(_) => "EvPiv",
            Gen::CoevPiv(_) => "CoevPiv",
            Gen::Braid(..) => "Braid",
            Gen::BraidInv(..) => "BraidInv",
            Gen::Twist(_) => "Twist",
            Gen::TwistInv(_) => "TwistInv",
            Gen::Coupon { .. } => "Coupon",
        }
    }

    fn reps(&self) -> Vec<&Rep> {
        match self {
            Gen::Id(x) | Gen::Twist(x) | Gen::TwistInv(x) => vec![&x.rep],
            Gen::Ev(m) | Gen::Coev(m) | Gen::EvPiv(m) | Gen::CoevPiv(m) => vec![m],
            Gen::Braid(x, y) | Gen::BraidInv(x, y) => vec![&x.rep, &y.rep],
            Gen::Coupon { domain, codomain, .. } => domain.iter().chain(codomain).map(|o| &o.rep).collect(),
        }
    }
}

pub type Slice = Vec<Gen>;

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    pub bottom: Boundary,
    pub top: Boundary,
    pub slices: Vec<Slice>,
    /// When set, every color occurring must be projective.
    pub admissible: bool,
}

impl Diagram {
    pub fn new(bottom: Boundary, top: Boundary, slices: Vec<Slice>) -> Diagram {
        Diagram {
            bottom,
            top,
            slices,
            admissible: false,
        }
    }

    pub fn identity(boundary: &[Obj]) -> Diagram {
        Diagram::new(boundary.to_vec(), boundary.to_vec(), Vec::new())
    }

    pub fn admissible(mut self) -> Diagram {
        self.admissible = true;
        self
    }

    /// Stack `self` below `above`.
    pub fn then(&self, above: &Diagram) -> Diagram {
        let mut slices = self.slices.clone();
        slices.extend(above.slices.iter().cloned());
        Diagram {
            bottom: self.bottom.clone(),
            top: above.top.clone(),
            slices,
            admissible: self.admissible || above.admissible,
        }
    }

    /// Place `right` beside `self`, padding the shorter one with identity
    /// slices on top.
    pub fn beside(&self, right: &Diagram) -> Diagram {
        let n = self.slices.len().max(right.slices.len());
        let pad = |d: &Diagram, i: usize| -> Slice {
            d.slices
                .get(i)
                .cloned()
                .unwrap_or_else(|| d.top.iter().cloned().map(Gen::Id).collect())
        };
        let slices = (0..n)
            .map(|i| {
                let mut s = pad(self, i);
                s.extend(pad(right, i));
                s
            })
            .collect();
        Diagram {
            bottom: self.bottom.iter().chain(&right.bottom).cloned().collect(),
            top: self.top.iter().chain(&right.top).cloned().collect(),
            slices,
            admissible: self.admissible || right.admissible,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RtError {
    #[error("slice {slice}: {msg}")]
    Typing { slice: usize, msg: String },
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// Module carried by a boundary sequence, `V1 ⊗ ... ⊗ Vn` (the unit if empty).
pub fn boundary_module(b: &HopfBundle, objs: &[Obj]) -> Rep {
    let mut it = objs.iter();
    match it.next() {
        None => crate::hopf::trivial_rep(b),
        Some(first) => it.fold(first.module(b), |acc, o| tensor_rep(b, &acc, &o.module(b))),
    }
}

fn boundary_dim(objs: &[Obj]) -> usize {
    objs.iter().map(|o| o.rep.dim()).product()
}

fn same_boundary(a: &[Obj], b: &[Obj]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.orient == y.orient && x.rep.name() == y.rep.name() && x.rep == y.rep)
}

fn show(objs: &[Obj]) -> String {
    if objs.is_empty() {
        "()".into()
    } else {
        objs.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("")
    }
}

fn eval_gen(b: &HopfBundle, g: &Gen, slice: usize) -> Result<ExactMatrix, RtError> {
    let f = b.field();
    Ok(match g {
        Gen::Id(x) => ExactMatrix::identity(f, x.rep.dim()),
        Gen::Ev(m) | Gen::Coev(m) => {
            let n = m.dim();
            let mut v = ExactMatrix::zeros(f, 1, n * n);
            for i in 0..n {
                v.set(0, i * n + i, CycNum::one(f));
            }
            if matches!(g, Gen::Coev(_)) {
                v.transpose()
            } else {
                v
            }
        }
        Gen::EvPiv(m) => {
            // m_i ⊗ φ^j ↦ ρ(g)[j][i]
            let n = m.dim();
            let rg = m.act(b.pivotal());
            let mut v = ExactMatrix::zeros(f, 1, n * n);
            for (j, row) in rg.rows().iter().enumerate() {
                for (i, x) in row {
                    v.set(0, i * n + j, x.clone());
                }
            }
            v
        }
        Gen::CoevPiv(m) => {
            // Σ_i φ^i ⊗ g⁻¹ m_i: coefficient of φ^i ⊗ m_j is ρ(g⁻¹)[j][i]
            let n = m.dim();
            let rg = m.act(b.pivotal_inv()?);
            let mut v = ExactMatrix::zeros(f, n * n, 1);
            for (j, row) in rg.rows().iter().enumerate() {
                for (i, x) in row {
                    v.set(i * n + j, 0, x.clone());
                }
            }
            v
        }
        Gen::Braid(x, y) => braiding(b, &x.module(b), &y.module(b))?,
        Gen::BraidInv(x, y) => braiding_inv(b, &x.module(b), &y.module(b))?,
        Gen::Twist(x) => twist(b, &x.module(b))?,
        Gen::TwistInv(x) => twist_inv(b, &x.module(b))?,
        Gen::Coupon { map, domain, codomain } => {
            let shape = (boundary_dim(codomain), boundary_dim(domain));
            if map.shape() != shape {
                return Err(RtError::Typing {
                    slice,
                    msg: format!("coupon matrix is {}x{}, expected {}x{}", map.nrows(), map.ncols(), shape.0, shape.1),
                });
            }
            let dm = boundary_module(b, domain);
            let cm = boundary_module(b, codomain);
            for &i in b.generators() {
                if cm.action(i).mul(map) != map.mul(dm.action(i)) {
                    return Err(RtError::Typing {
                        slice,
                        msg: format!("coupon {} -> {} is not H-linear", show(domain), show(codomain)),
                    });
                }
            }
            map.clone()
        }
    })
}

/// RT evaluation: a matrix from the bottom boundary module to the top one.
pub fn evaluate(b: &HopfBundle, d: &Diagram) -> Result<ExactMatrix, RtError> {
    if d.admissible {
        for (s, slice) in d.slices.iter().enumerate() {
            for g in slice {
                for r in g.reps() {
                    if !is_projective(b, r) {
                        return Err(RtError::Inadmissible(format!("slice {s}: color {} is not projective", r.name())));
                    }
                }
            }
        }
    }
    let mut current = d.bottom.clone();
    let mut acc = ExactMatrix::identity(b.field(), boundary_dim(&current));
    for (s, slice) in d.slices.iter().enumerate() {
        let dom: Boundary = slice.iter().flat_map(Gen::domain).collect();
        if !same_boundary(&dom, &current) {
            return Err(RtError::Typing {
                slice: s,
                msg: format!("expects {} but receives {}", show(&dom), show(&current)),
            });
        }
        let mut m = ExactMatrix::identity(b.field(), 1);
        for g in slice {
            m = m.kron(&eval_gen(b, g, s)?);
        }
        acc = m.mul(&acc);
        current = slice.iter().flat_map(Gen::codomain).collect();
    }
    if !same_boundary(&current, &d.top) {
        return Err(RtError::Typing {
            slice: d.slices.len(),
            msg: format!("diagram ends at {} but the top boundary is {}", show(&current), show(&d.top)),
        });
    }
    Ok(acc)
}

/// Formal linear combination of diagrams with a common boundary.
#[derive(Clone, Debug)]
pub struct SkeinVector {
    pub terms: Vec<(CycNum, Diagram)>,
}

impl SkeinVector {
    pub fn single(d: Diagram) -> SkeinVector {
        SkeinVector {
            terms: vec![(CycNum::one(&crate::cyclo::Field::rationals()), d)],
        }
    }

    /// Coefficients may live in any subfield of the bundle's field.
    pub fn from_terms(terms: Vec<(CycNum, Diagram)>) -> SkeinVector {
        SkeinVector { terms }
    }

    fn boundary(&self) -> Option<(&Boundary, &Boundary)> {
        self.terms.first().map(|(_, d)| (&d.bottom, &d.top))
    }

    pub fn evaluate(&self, b: &HopfBundle) -> Result<ExactMatrix, RtError> {
        let (bot, top) = self.boundary().ok_or_else(|| RtError::Boundary("empty skein vector".into()))?;
        let mut acc = ExactMatrix::zeros(b.field(), boundary_dim(top), boundary_dim(bot));
        for (c, d) in &self.terms {
            if !same_boundary(&d.bottom, bot) || !same_boundary(&d.top, top) {
                return Err(RtError::Boundary("terms of a skein vector have different boundaries".into()));
            }
            let c = c.embed(b.field()).map_err(HopfError::from)?;
            acc = acc.axpy(&c, &evaluate(b, d)?);
        }
        Ok(acc)
    }
}

/// Equality in the skein module: equal evaluations, exactly.
pub fn skein_eq(b: &HopfBundle, s1: &SkeinVector, s2: &SkeinVector) -> Result<bool, RtError> {
    let (b1, t1) = s1.boundary().ok_or_else(|| RtError::Boundary("empty skein vector".into()))?;
    let (b2, t2) = s2.boundary().ok_or_else(|| RtError::Boundary("empty skein vector".into()))?;
    if !same_boundary(b1, b2) || !same_boundary(t1, t2) {
        return Err(RtError::Boundary(format!("{} -> {} vs {} -> {}", show(b1), show(t1), show(b2), show(t2))));
    }
    Ok(s1.evaluate(b)? == s2.evaluate(b)?)
}

/// Basis of the admissible skein module of the disk with the given boundary,
/// realized as `Hom_H(bottom, top)`. Boundary colors must be projective and
/// at least one boundary point is required.
pub fn skein_module_disk(b: &HopfBundle, bottom: &[Obj], top: &[Obj]) -> Result<Vec<ExactMatrix>, RtError> {
    if bottom.is_empty() && top.is_empty() {
        return Err(RtError::Inadmissible("no I-colored boundary".into()));
    }
    for o in bottom.iter().chain(top) {
        if !is_projective(b, &o.rep) {
            return Err(RtError::Inadmissible(format!("boundary color {} is not projective", o.rep.name())));
        }
    }
    Ok(hom_space(b, &boundary_module(b, bottom), &boundary_module(b, top)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::bundles;

    #[test]
    fn empty_diagram_is_unit() {
        let b = bundles::sweedler();
        let m = evaluate(&b, &Diagram::identity(&[])).unwrap();
        assert!(m.is_identity());
        assert_eq!(m.shape(), (1, 1));
    }

    #[test]
    fn zigzag_is_identity() {
        let b = bundles::sweedler();
        for m in b.modules() {
            for (lhs, rhs) in moves::zigzags(m) {
                assert_eq!(evaluate(&b, &lhs).unwrap(), evaluate(&b, &rhs).unwrap(), "{}", m.name());
            }
        }
    }

    #[test]
    fn typing_error_names_slice() {
        let b = bundles::sweedler();
        let p = Obj::plus(b.module("P+").unwrap());
        let t = Obj::plus(b.module("triv").unwrap());
        let d = Diagram::new(vec![p.clone()], vec![p.clone()], vec![vec![Gen::Id(p.clone())], vec![Gen::Id(t)]]);
        match evaluate(&b, &d) {
            Err(RtError::Typing { slice, .. }) => assert_eq!(slice, 1),
            other => panic!("{other:?}"),
        }
        let d = Diagram::new(vec![p.clone()], vec![], vec![vec![Gen::Id(p)]]);
        assert!(matches!(evaluate(&b, &d), Err(RtError::Typing { slice: 1, .. })));
    }

    #[test]
    fn braid_on_pivotal_only_bundle_is_capability_error() {
        let b = bundles::restricted_quantum_sl2(2, false);
        let x = Obj::plus(b.simples()[0]);
        let d = Diagram::new(vec![x.clone(), x.clone()], vec![x.clone(), x.clone()], vec![vec![Gen::Braid(x.clone(), x)]]);
        assert!(matches!(evaluate(&b, &d), Err(RtError::Hopf(HopfError::Capability(_)))));
    }

    #[test]
    fn admissibility_rejects_non_projective_colors() {
        let b = bundles::sweedler();
        let t = Obj::plus(b.module("triv").unwrap());
        let d = Diagram::identity(&[t.clone()]);
        assert!(evaluate(&b, &d).is_ok());
        let d = Diagram::new(vec![t.clone()], vec![t.clone()], vec![vec![Gen::Id(t)]]).admissible();
        assert!(matches!(evaluate(&b, &d), Err(RtError::Inadmissible(_))));
    }

    #[test]
    fn non_intertwining_coupon_is_rejected() {
        let b = bundles::sweedler();
        let p = Obj::plus(b.module("P+").unwrap());
        // P+ is indecomposable, so a rank-one idempotent is not H-linear
        let f = ExactMatrix::from_ints(b.field(), &[&[1, 0], &[0, 0]]);
        let d = Diagram::new(
            vec![p.clone()],
            vec![p.clone()],
            vec![vec![Gen::Coupon {
                map: f,
                domain: vec![p.clone()],
                codomain: vec![p],
            }]],
        );
        assert!(matches!(evaluate(&b, &d), Err(RtError::Typing { slice: 0, .. })));
    }

    #[test]
    fn disk_requires_boundary() {
        let b = bundles::sweedler();
        let e = skein_module_disk(&b, &[], &[]).unwrap_err();
        assert_eq!(e.to_string(), "inadmissible: no I-colored boundary");
        let p = Obj::plus(b.module("P+").unwrap());
        let basis = skein_module_disk(&b, &[p.clone()], &[p]).unwrap();
        assert!(!basis.is_empty());
    }

    #[test]
    fn skein_eq_rejects_boundary_mismatch() {
        let b = bundles::sweedler();
        let p = Obj::plus(b.module("P+").unwrap());
        let m = Obj::plus(b.module("P-").unwrap());
        let s1 = SkeinVector::single(Diagram::identity(&[p]));
        let s2 = SkeinVector::single(Diagram::identity(&[m]));
        assert!(matches!(skein_eq(&b, &s1, &s2), Err(RtError::Boundary(_))));
    }
}
