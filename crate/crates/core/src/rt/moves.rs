//! Diagram pairs for the framed Reidemeister-type moves. Each function returns
//! `(lhs, rhs)` diagrams that must evaluate to the same matrix.

use crate::cyclo::ExactMatrix;
use crate::hopf::{HopfBundle, Rep};

use super::{boundary_module, Diagram, Gen, Obj};

fn ids(objs: &[&Obj]) -> Vec<Gen> {
    objs.iter().map(|o| Gen::Id((*o).clone())).collect()
}

/// `(id_M ⊗ ev)(coev ⊗ id_M) = id_M` and the three other zig-zags, each
/// against the identity.
pub fn zigzags(m: &Rep) -> Vec<(Diagram, Diagram)> {
    let (p, n) = (Obj::plus(m), Obj::minus(m));
    vec![
        (
            Diagram::new(vec![p.clone()], vec![p.clone()], vec![vec![Gen::Coev(m.clone()), Gen::Id(p.clone())], vec![Gen::Id(p.clone()), Gen::Ev(m.clone())]]),
            Diagram::identity(std::slice::from_ref(&p)),
        ),
        (
            Diagram::new(vec![n.clone()], vec![n.clone()], vec![vec![Gen::Id(n.clone()), Gen::Coev(m.clone())], vec![Gen::Ev(m.clone()), Gen::Id(n.clone())]]),
            Diagram::identity(std::slice::from_ref(&n)),
        ),
        (
            Diagram::new(vec![p.clone()], vec![p.clone()], vec![vec![Gen::Id(p.clone()), Gen::CoevPiv(m.clone())], vec![Gen::EvPiv(m.clone()), Gen::Id(p.clone())]]),
            Diagram::identity(std::slice::from_ref(&p)),
        ),
        (
            Diagram::new(vec![n.clone()], vec![n.clone()], vec![vec![Gen::CoevPiv(m.clone()), Gen::Id(n.clone())], vec![Gen::Id(n.clone()), Gen::EvPiv(m.clone())]]),
            Diagram::identity(std::slice::from_ref(&n)),
        ),
    ]
}

/// `c⁻¹ c = id` and `c c⁻¹ = id` on `X⊗Y`.
pub fn reidemeister2(x: &Obj, y: &Obj) -> Vec<(Diagram, Diagram)> {
    let xy = vec![x.clone(), y.clone()];
    let yx = vec![y.clone(), x.clone()];
    vec![
        (
            Diagram::new(xy.clone(), xy.clone(), vec![vec![Gen::Braid(x.clone(), y.clone())], vec![Gen::BraidInv(x.clone(), y.clone())]]),
            Diagram::identity(&xy),
        ),
        (
            Diagram::new(yx.clone(), yx.clone(), vec![vec![Gen::BraidInv(x.clone(), y.clone())], vec![Gen::Braid(x.clone(), y.clone())]]),
            Diagram::identity(&yx),
        ),
    ]
}

/// Braid relation on `X⊗Y⊗Z`.
pub fn reidemeister3(x: &Obj, y: &Obj, z: &Obj) -> (Diagram, Diagram) {
    let bottom = vec![x.clone(), y.clone(), z.clone()];
    let top = vec![z.clone(), y.clone(), x.clone()];
    let c = |a: &Obj, b: &Obj| Gen::Braid(a.clone(), b.clone());
    let i = |a: &Obj| Gen::Id(a.clone());
    let lhs = Diagram::new(
        bottom.clone(),
        top.clone(),
        vec![vec![c(x, y), i(z)], vec![i(y), c(x, z)], vec![c(y, z), i(x)]],
    );
    let rhs = Diagram::new(bottom, top, vec![vec![i(x), c(y, z)], vec![c(x, z), i(y)], vec![i(z), c(x, y)]]);
    (lhs, rhs)
}

pub fn twist_cancel(x: &Obj) -> Vec<(Diagram, Diagram)> {
    let b = vec![x.clone()];
    vec![
        (Diagram::new(b.clone(), b.clone(), vec![vec![Gen::Twist(x.clone())], vec![Gen::TwistInv(x.clone())]]), Diagram::identity(&b)),
        (Diagram::new(b.clone(), b.clone(), vec![vec![Gen::TwistInv(x.clone())], vec![Gen::Twist(x.clone())]]), Diagram::identity(&b)),
    ]
}

/// `θ_{X⊗Y} = c_{Y,X} c_{X,Y} (θ_X ⊗ θ_Y)`; the left side merges the two
/// strands into one `X⊗Y`-colored strand through identity coupons.
pub fn ribbon_balance(bundle: &HopfBundle, x: &Obj, y: &Obj) -> (Diagram, Diagram) {
    let pair = vec![x.clone(), y.clone()];
    let merged = boundary_module(bundle, &pair);
    let merged = Obj::plus(&merged.renamed(format!("[{}{}]", x, y)));
    let id = ExactMatrix::identity(bundle.field(), x.rep.dim() * y.rep.dim());
    let lhs = Diagram::new(
        pair.clone(),
        pair.clone(),
        vec![
            vec![Gen::Coupon {
                map: id.clone(),
                domain: pair.clone(),
                codomain: vec![merged.clone()],
            }],
            vec![Gen::Twist(merged.clone())],
            vec![Gen::Coupon {
                map: id,
                domain: vec![merged],
                codomain: pair.clone(),
            }],
        ],
    );
    let rhs = Diagram::new(
        pair.clone(),
        pair,
        vec![
            vec![Gen::Twist(x.clone()), Gen::Twist(y.clone())],
            vec![Gen::Braid(x.clone(), y.clone())],
            vec![Gen::Braid(y.clone(), x.clone())],
        ],
    );
    (lhs, rhs)
}

/// Sliding a coupon `F: X → X2` through a crossing with `Y`.
pub fn coupon_naturality(f: &ExactMatrix, x: &Obj, x2: &Obj, y: &Obj) -> (Diagram, Diagram) {
    let coupon = Gen::Coupon {
        map: f.clone(),
        domain: vec![x.clone()],
        codomain: vec![x2.clone()],
    };
    let bottom = vec![x.clone(), y.clone()];
    let top = vec![y.clone(), x2.clone()];
    let lhs = Diagram::new(
        bottom.clone(),
        top.clone(),
        vec![
            [vec![coupon.clone()], ids(&[y])].concat(),
            vec![Gen::Braid(x2.clone(), y.clone())],
        ],
    );
    let rhs = Diagram::new(bottom, top, vec![vec![Gen::Braid(x.clone(), y.clone())], [ids(&[y]), vec![coupon]].concat()]);
    (lhs, rhs)
}

/// Closed `M`-colored loop carrying one positive twist.
pub fn twisted_loop(m: &Rep) -> Diagram {
    Diagram::new(
        vec![],
        vec![],
        vec![
            vec![Gen::Coev(m.clone())],
            vec![Gen::Twist(Obj::plus(m)), Gen::Id(Obj::minus(m))],
            vec![Gen::EvPiv(m.clone())],
        ],
    )
}
