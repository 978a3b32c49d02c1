use serde_json::{json, Value};

use crate::cyclo::{sparse_axpy, Accumulator, CycNum, SparseVec};

use super::HopfBundle;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub axiom: String,
    pub detail: String,
}

/// Axiom failures sorted by name; empty means the bundle is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn axioms(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.failures.iter().map(|f| f.axiom.as_str()).collect();
        v.dedup();
        v
    }

    pub fn names(&self, axiom: &str) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "failures": self.failures.iter().map(|f| json!({"axiom": f.axiom, "detail": f.detail})).collect::<Vec<_>>(),
        })
    }
}

struct Checker<'a> {
    b: &'a HopfBundle,
    failures: Vec<Failure>,
}

impl Checker<'_> {
    fn fail(&mut self, axiom: &str, detail: String) {
        self.failures.push(Failure {
            axiom: axiom.into(),
            detail,
        });
    }

    fn label(&self, i: usize) -> &str {
        &self.b.basis_labels()[i]
    }
}

/// Exhaustive exact check of the Hopf, quasitriangular, ribbon and pivotal
/// axioms and of every listed module. Each axiom reports its first witness.
pub fn validate_bundle(b: &HopfBundle) -> ValidationReport {
    let mut c = Checker {
        b,
        failures: Vec::new(),
    };
    check_algebra(&mut c);
    check_coalgebra(&mut c);
    check_bialgebra(&mut c);
    check_antipode(&mut c);
    check_pivotal(&mut c);
    if b.has_braiding() {
        check_quasitriangular(&mut c);
    }
    if b.has_ribbon() {
        check_ribbon(&mut c);
    }
    for m in b.modules() {
        for problem in m.check(b) {
            c.fail(&format!("module:{}", m.name()), problem);
        }
    }
    let mut failures = c.failures;
    failures.sort();
    ValidationReport { failures }
}

fn check_algebra(c: &mut Checker) {
    let b = c.b;
    let d = b.dim();
    for i in 0..d {
        let e = b.basis(i);
        if b.mul(b.unit(), &e) != e || b.mul(&e, b.unit()) != e {
            c.fail("unit", format!("1·{0} or {0}·1 differs from {0}", c.label(i)));
            break;
        }
    }
    let f = b.field();
    let mut acc = Accumulator::new(d);
    'outer: for i in 0..d {
        for j in 0..d {
            let ij = b.mul_basis(i, j);
            for k in 0..d {
                for (l, x) in ij {
                    for (m, y) in b.mul_basis(*l, k) {
                        acc.add(*m, x * y);
                    }
                }
                let mut diff = acc.take();
                for (l, x) in b.mul_basis(j, k) {
                    for (m, y) in b.mul_basis(i, *l) {
                        acc.add(*m, -(x * y));
                    }
                }
                diff = sparse_axpy(&diff, &CycNum::one(f), &acc.take());
                if !diff.is_empty() {
                    let msg = format!("({}·{})·{} != {}·({}·{})", c.label(i), c.label(j), c.label(k), c.label(i), c.label(j), c.label(k));
                    c.fail("associativity", msg);
                    break 'outer;
                }
            }
        }
    }
}

/// `(Δ⊗id)(t)` for `t ∈ H⊗H`, as an element of `H⊗H⊗H` indexed `(i*d+j)*d+k`.
pub(crate) fn comult_left(b: &HopfBundle, t: &[(usize, CycNum)]) -> SparseVec {
    let d = b.dim();
    let mut acc = Accumulator::new(d * d * d);
    for (ab, x) in t {
        let (a, bb) = (ab / d, ab % d);
        for (ij, y) in b.comult_basis(a) {
            acc.add(ij * d + bb, x * y);
        }
    }
    acc.take()
}

/// `(id⊗Δ)(t)` for `t ∈ H⊗H`.
pub(crate) fn comult_right(b: &HopfBundle, t: &[(usize, CycNum)]) -> SparseVec {
    let d = b.dim();
    let mut acc = Accumulator::new(d * d * d);
    for (ab, x) in t {
        let (a, bb) = (ab / d, ab % d);
        for (jk, y) in b.comult_basis(bb) {
            acc.add(a * d * d + jk, x * y);
        }
    }
    acc.take()
}

fn check_coalgebra(c: &mut Checker) {
    let b = c.b;
    let d = b.dim();
    for i in 0..d {
        let delta = b.comult_basis(i);
        if comult_left(b, delta) != comult_right(b, delta) {
            c.fail("coassociativity", format!("(Δ⊗id)Δ({0}) != (id⊗Δ)Δ({0})", c.label(i)));
            break;
        }
    }
    for i in 0..d {
        let mut left = Accumulator::new(d);
        let mut right = Accumulator::new(d);
        for (jk, x) in b.comult_basis(i) {
            let (j, k) = (jk / d, jk % d);
            left.add(k, x * b.counit_basis(j));
            right.add(j, x * b.counit_basis(k));
        }
        let e = b.basis(i);
        if left.take() != e || right.take() != e {
            c.fail("counit", format!("(ε⊗id)Δ({0}) or (id⊗ε)Δ({0}) differs from {0}", c.label(i)));
            break;
        }
    }
}

fn check_bialgebra(c: &mut Checker) {
    let b = c.b;
    let d = b.dim();
    if b.comult(b.unit()) != b.tensor_of(b.unit(), b.unit()) {
        c.fail("bialgebra", "Δ(1) != 1⊗1".into());
    }
    if !b.counit(b.unit()).is_one() {
        c.fail("bialgebra", "ε(1) != 1".into());
    }
    'eps: for i in 0..d {
        for j in 0..d {
            if b.counit(b.mul_basis(i, j)) != b.counit_basis(i) * b.counit_basis(j) {
                c.fail("bialgebra", format!("ε({0}·{1}) != ε({0})ε({1})", c.label(i), c.label(j)));
                break 'eps;
            }
        }
    }
    'delta: for i in 0..d {
        for j in 0..d {
            let lhs = b.comult(b.mul_basis(i, j));
            let rhs = b.tensor_mul(b.comult_basis(i), b.comult_basis(j));
            if lhs != rhs {
                c.fail("bialgebra", format!("Δ({0}·{1}) != Δ({0})Δ({1})", c.label(i), c.label(j)));
                break 'delta;
            }
        }
    }
}

fn check_antipode(c: &mut Checker) {
    let b = c.b;
    let d = b.dim();
    for i in 0..d {
        let mut left = Accumulator::new(d);
        let mut right = Accumulator::new(d);
        for (jk, x) in b.comult_basis(i) {
            let (j, k) = (jk / d, jk % d);
            for (l, s) in b.antipode_basis(j) {
                for (m, y) in b.mul_basis(*l, k) {
                    left.add(*m, &(x * s) * y);
                }
            }
            for (l, s) in b.antipode_basis(k) {
                for (m, y) in b.mul_basis(j, *l) {
                    right.add(*m, &(x * s) * y);
                }
            }
        }
        let expect = b.scalar(b.counit_basis(i).clone());
        if left.take() != expect || right.take() != expect {
            c.fail("antipode", format!("S({0}₁){0}₂ or {0}₁S({0}₂) differs from ε({0})1", c.label(i)));
            break;
        }
    }
}

fn check_pivotal(c: &mut Checker) {
    let b = c.b;
    let g = b.pivotal();
    if b.comult(g) != b.tensor_of(g, g) || !b.counit(g).is_one() {
        c.fail("pivotal_grouplike", "Δ(g) != g⊗g or ε(g) != 1".into());
        return;
    }
    for i in 0..b.dim() {
        let s2 = b.antipode(b.antipode_basis(i));
        if b.mul(&s2, g) != b.mul(g, &b.basis(i)) {
            c.fail("pivotal_square_antipode", format!("S²({0})·g != g·{0}", c.label(i)));
            break;
        }
    }
}

fn check_quasitriangular(c: &mut Checker) {
    let b = c.b;
    let d = b.dim();
    let r = b.r_matrix().unwrap();
    let r_inv = b.r_matrix_inv().unwrap();
    let one = b.tensor_of(b.unit(), b.unit());
    if b.tensor_mul(r, r_inv) != one || b.tensor_mul(r_inv, r) != one {
        c.fail("r_invertible", "R·R_inv or R_inv·R differs from 1⊗1".into());
    }
    for i in 0..d {
        let delta = b.comult_basis(i);
        if b.tensor_mul(&b.flip(delta), r) != b.tensor_mul(r, delta) {
            c.fail("quasitriangular_conjugation", format!("Δop({0})·R != R·Δ({0})", c.label(i)));
            break;
        }
    }
    // (Δ⊗id)R = R13 R23 and (id⊗Δ)R = R13 R12
    let r13 = embed_pair(b, r, [0, 2]);
    let r23 = embed_pair(b, r, [1, 2]);
    let r12 = embed_pair(b, r, [0, 1]);
    if comult_left(b, r) != triple_mul(b, &r13, &r23) {
        c.fail("quasitriangular_coproduct_left", "(Δ⊗id)R != R13·R23".into());
    }
    if comult_right(b, r) != triple_mul(b, &r13, &r12) {
        c.fail("quasitriangular_coproduct_right", "(id⊗Δ)R != R13·R12".into());
    }
}

/// Place `t ∈ H⊗H` into the given tensor slots of `H⊗H⊗H`, unit elsewhere.
pub(crate) fn embed_pair(b: &HopfBundle, t: &[(usize, CycNum)], slots: [usize; 2]) -> SparseVec {
    let d = b.dim();
    let mut acc = Accumulator::new(d * d * d);
    for (ab, x) in t {
        for (u, y) in b.unit() {
            let mut idx = [*u; 3];
            idx[slots[0]] = ab / d;
            idx[slots[1]] = ab % d;
            acc.add((idx[0] * d + idx[1]) * d + idx[2], x * y);
        }
    }
    acc.take()
}

pub(crate) fn triple_mul(b: &HopfBundle, x: &[(usize, CycNum)], y: &[(usize, CycNum)]) -> SparseVec {
    let d = b.dim();
    let mut acc = Accumulator::new(d * d * d);
    for (p, s) in x {
        let (p0, p1, p2) = (p / (d * d), (p / d) % d, p % d);
        for (q, t) in y {
            let (q0, q1, q2) = (q / (d * d), (q / d) % d, q % d);
            let st = s * t;
            for (a, u) in b.mul_basis(p0, q0) {
                let stu = &st * u;
                for (bb, v) in b.mul_basis(p1, q1) {
                    let stuv = &stu * v;
                    for (cc, w) in b.mul_basis(p2, q2) {
                        acc.add((a * d + bb) * d + cc, &stuv * w);
                    }
                }
            }
        }
    }
    acc.take()
}

fn check_ribbon(c: &mut Checker) {
    let b = c.b;
    let d = b.dim();
    let v = b.ribbon().unwrap();
    for i in 0..d {
        let e = b.basis(i);
        if b.mul(v, &e) != b.mul(&e, v) {
            c.fail("ribbon_central", format!("v·{0} != {0}·v", c.label(i)));
            break;
        }
    }
    let u = b.drinfeld_u().unwrap();
    if b.mul(v, v) != b.mul(&u, &b.antipode(&u)) {
        c.fail("ribbon_square", "v² != u·S(u)".into());
    }
    if &b.antipode(v) != v {
        c.fail("ribbon_antipode", "S(v) != v".into());
    }
    if !b.counit(v).is_one() {
        c.fail("ribbon_counit", "ε(v) != 1".into());
    }
    let r = b.r_matrix().unwrap();
    let monodromy = b.tensor_mul(&b.flip(r), r);
    if b.tensor_mul(&monodromy, &b.comult(v)) != b.tensor_of(v, v) {
        c.fail("ribbon_coproduct", "(R21·R)·Δ(v) != v⊗v".into());
    }
    if b.mul(b.pivotal(), v) != u {
        c.fail("pivotal_drinfeld", "g·v != u".into());
    }
}
