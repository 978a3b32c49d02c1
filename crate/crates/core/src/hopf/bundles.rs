//! Built-in bundles: the trivial algebra, cyclic group algebras, Sweedler's
//! four-dimensional algebra and small quantum groups of `sl2`.

use serde_json::{json, Map, Value};

use crate::cyclo::{sparse_scale, Accumulator, CycNum, ExactMatrix, Field, SparseVec};

use super::validate::{comult_left, embed_pair, triple_mul};
use super::{regular_rep, validate_bundle, BundleData, HopfBundle, Rep};

/// Hand-transcribed bundle files shipped with the crate.
pub const SWEEDLER_JSON: &str = include_str!("../../bundles/sweedler.json");
pub const Z2_JSON: &str = include_str!("../../bundles/z2.json");

struct Tables {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    unit: SparseVec,
    mult: Vec<SparseVec>,
    comult: Vec<SparseVec>,
    counit: Vec<CycNum>,
    antipode: Vec<SparseVec>,
}

impl Tables {
    fn data(&self, name: &str) -> BundleData {
        let d = self.dim;
        BundleData {
            name: name.into(),
            field: self.field.clone(),
            dim: d,
            basis_labels: Some(self.labels.clone()),
            unit: self.unit.clone(),
            mult: (0..d * d)
                .flat_map(|ij| self.mult[ij].iter().map(move |(k, c)| (ij / d, ij % d, *k, c.clone())))
                .collect(),
            comult: (0..d)
                .flat_map(|i| self.comult[i].iter().map(move |(jk, c)| (i, jk / d, jk % d, c.clone())))
                .collect(),
            counit: crate::cyclo::sparse_from_dense(&self.counit),
            antipode: (0..d)
                .flat_map(|i| self.antipode[i].iter().map(move |(j, c)| (i, *j, c.clone())))
                .collect(),
            r: None,
            r_inv: None,
            ribbon: None,
            pivotal: self.unit.clone(),
            modules: Vec::new(),
            simples: Vec::new(),
            metadata: Map::new(),
        }
    }

    /// Shape-only bundle, used to reach the algebra operations while the
    /// remaining data is assembled.
    fn provisional(&self) -> HopfBundle {
        HopfBundle::new(self.data("provisional")).expect("builder tables are well-formed")
    }
}

fn pairs(t: &[(usize, CycNum)], d: usize) -> Vec<(usize, usize, CycNum)> {
    t.iter().map(|(ij, c)| (ij / d, ij % d, c.clone())).collect()
}

/// `(S⊗id)(R)`, the inverse of a universal R-matrix.
fn r_inverse(b: &HopfBundle, r: &[(usize, CycNum)]) -> SparseVec {
    let d = b.dim();
    let mut acc = Accumulator::new(d * d);
    for (ij, c) in r {
        for (k, s) in b.antipode_basis(ij / d) {
            acc.add(k * d + ij % d, c * s);
        }
    }
    acc.take()
}

/// Attach `R`, its inverse and the ribbon element `v = g⁻¹u`.
fn attach_ribbon(data: &mut BundleData, b: &HopfBundle, r: &SparseVec) {
    let d = b.dim();
    data.r = Some(pairs(r, d));
    data.r_inv = Some(pairs(&r_inverse(b, r), d));
    let with_r = HopfBundle::new(data.clone()).expect("well-formed");
    let u = with_r.drinfeld_u().expect("R present");
    let g_inv = with_r.inverse(&data.pivotal).expect("pivotal element is invertible");
    data.ribbon = Some(with_r.mul(&g_inv, &u));
}

fn finish(mut data: BundleData, tables: &Tables, reps: Vec<Rep>, simples: &[&str]) -> HopfBundle {
    let b = tables.provisional();
    data.modules = reps;
    data.modules.push(regular_rep(&b));
    data.simples = simples.iter().map(|s| s.to_string()).collect();
    HopfBundle::new(data).expect("builder output is well-formed")
}

/// The one-dimensional Hopf algebra `k`.
pub fn trivial() -> HopfBundle {
    let f = Field::rationals();
    let one = CycNum::one(&f);
    let t = Tables {
        field: f.clone(),
        dim: 1,
        labels: vec!["1".into()],
        unit: vec![(0, one.clone())],
        mult: vec![vec![(0, one.clone())]],
        comult: vec![vec![(0, one.clone())]],
        counit: vec![one.clone()],
        antipode: vec![vec![(0, one.clone())]],
    };
    let mut data = t.data("trivial");
    data.r = Some(vec![(0, 0, one.clone())]);
    data.r_inv = Some(vec![(0, 0, one.clone())]);
    data.ribbon = Some(vec![(0, one.clone())]);
    let triv = Rep::new("1", &f, 1, vec![ExactMatrix::identity(&f, 1)]).unwrap();
    let mut b = finish(data, &t, vec![triv], &["1"]).to_data();
    // the regular module of k is the unit itself
    b.modules.truncate(1);
    HopfBundle::new(b).unwrap()
}

/// Group algebra of `Z/n` on the basis `g^0..g^{n-1}`, with the braiding of
/// the bicharacter `β(k, l) = ω^{kl}` when `braided`, else `R = 1⊗1`.
pub fn cyclic_group(n: usize, braided: bool) -> HopfBundle {
    assert!(n >= 1);
    let f = Field::cyclotomic(n as u32);
    let one = CycNum::one(&f);
    let w = |k: i64| CycNum::zeta_pow(&f, k);
    let t = Tables {
        field: f.clone(),
        dim: n,
        labels: (0..n)
            .map(|k| match k {
                0 => "1".into(),
                1 => "g".into(),
                _ => format!("g^{k}"),
            })
            .collect(),
        unit: vec![(0, one.clone())],
        mult: (0..n * n).map(|ij| vec![((ij / n + ij % n) % n, one.clone())]).collect(),
        comult: (0..n).map(|k| vec![(k * n + k, one.clone())]).collect(),
        counit: vec![one.clone(); n],
        antipode: (0..n).map(|k| vec![((n - k) % n, one.clone())]).collect(),
    };
    let b = t.provisional();
    let mut data = t.data(&if braided { format!("Z{n}-braided") } else { format!("Z{n}") });
    // R = Σ β(k,l) P_k⊗P_l with P_k = (1/n) Σ_a ω^{-ak} g^a
    let nn = CycNum::from_int(&f, (n * n) as i64);
    let r: SparseVec = (0..n * n)
        .filter_map(|ab| {
            let (a, bb) = ((ab / n) as i64, (ab % n) as i64);
            let mut s = CycNum::zero(&f);
            for k in 0..n as i64 {
                for l in 0..n as i64 {
                    let e = if braided { k * l } else { 0 } - a * k - bb * l;
                    s += &w(e);
                }
            }
            let c = s.checked_div(&nn).unwrap();
            (!c.is_zero()).then_some((ab, c))
        })
        .collect();
    attach_ribbon(&mut data, &b, &r);
    let reps: Vec<Rep> = (0..n)
        .map(|k| {
            let action = (0..n).map(|a| ExactMatrix::scalar(w((a * k) as i64))).collect();
            Rep::new(format!("chi{k}"), &f, 1, action).unwrap()
        })
        .collect();
    let names: Vec<String> = (0..n).map(|k| format!("chi{k}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    finish(data, &t, reps, &name_refs)
}

pub fn z2() -> HopfBundle {
    cyclic_group(2, false)
}

pub fn z3_braided() -> HopfBundle {
    cyclic_group(3, true)
}

/// Sweedler's algebra `<g, x | g² = 1, x² = 0, xg = -gx>` on the basis
/// `1, g, x, gx`, with `Δ(x) = x⊗1 + g⊗x` and the triangular R-matrix
/// `R = ½(1⊗1 + 1⊗g + g⊗1 - g⊗g) + ½(x⊗x - x⊗gx + gx⊗x + gx⊗gx)`.
pub fn sweedler() -> HopfBundle {
    let f = Field::rationals();
    let q = |p: i64| CycNum::from_int(&f, p);
    // basis index a + 2b for g^a x^b
    let idx = |a: usize, b: usize| a + 2 * b;
    let mut mult = vec![Vec::new(); 16];
    for i in 0..4 {
        for j in 0..4 {
            let (a, b, c, e) = (i % 2, i / 2, j % 2, j / 2);
            if b + e < 2 {
                let sign = if b * c == 1 { -1 } else { 1 };
                mult[i * 4 + j] = vec![(idx((a + c) % 2, b + e), q(sign))];
            }
        }
    }
    let comult = (0..4)
        .map(|i| {
            let (a, b) = (i % 2, i / 2);
            let mut v = if b == 0 {
                vec![(idx(a, 0) * 4 + idx(a, 0), q(1))]
            } else {
                vec![(idx(a, 1) * 4 + idx(a, 0), q(1)), (idx((a + 1) % 2, 0) * 4 + idx(a, 1), q(1))]
            };
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    let t = Tables {
        field: f.clone(),
        dim: 4,
        labels: vec!["1".into(), "g".into(), "x".into(), "gx".into()],
        unit: vec![(0, q(1))],
        mult,
        comult,
        counit: vec![q(1), q(1), q(0), q(0)],
        antipode: vec![vec![(0, q(1))], vec![(1, q(1))], vec![(3, q(-1))], vec![(2, q(1))]],
    };
    let b = t.provisional();
    let mut data = t.data("sweedler");
    data.pivotal = vec![(1, q(1))];
    let half = CycNum::from_ratio(&f, 1, 2);
    let half_neg = CycNum::from_ratio(&f, -1, 2);
    let mut r: SparseVec = vec![
        (0, half.clone()),
        (1, half.clone()),
        (4, half.clone()),
        (5, half_neg.clone()),
        (2 * 4 + 2, half.clone()),
        (2 * 4 + 3, half_neg),
        (3 * 4 + 2, half.clone()),
        (3 * 4 + 3, half.clone()),
    ];
    r.sort_by_key(|e| e.0);
    attach_ribbon(&mut data, &b, &r);

    let m = |rows: &[&[i64]]| ExactMatrix::from_ints(&f, rows);
    let rep = |name: &str, g: ExactMatrix, x: ExactMatrix| {
        let gx = g.mul(&x);
        let id = ExactMatrix::identity(&f, g.nrows());
        Rep::new(name, &f, g.nrows(), vec![id, g, x, gx]).unwrap()
    };
    let reps = vec![
        rep("triv", m(&[&[1]]), m(&[&[0]])),
        rep("sign", m(&[&[-1]]), m(&[&[0]])),
        rep("P+", m(&[&[1, 0], &[0, -1]]), m(&[&[0, 0], &[1, 0]])),
        rep("P-", m(&[&[-1, 0], &[0, 1]]), m(&[&[0, 0], &[1, 0]])),
    ];
    finish(data, &t, reps, &["triv", "sign"])
}

/// Parameters of a small quantum group of `sl2` at `q = ζ_N`.
struct Qsl2 {
    field: Field,
    /// order of `q`
    n: u32,
    /// `E^ne = F^ne = 0`
    ne: usize,
    /// `K^nk = 1`
    nk: usize,
}

impl Qsl2 {
    fn dim(&self) -> usize {
        self.ne * self.ne * self.nk
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.ne + b) * self.nk + c
    }

    fn split(&self, i: usize) -> (usize, usize, usize) {
        (i / (self.ne * self.nk), (i / self.nk) % self.ne, i % self.nk)
    }

    fn q(&self, k: i64) -> CycNum {
        CycNum::zeta_pow(&self.field, k)
    }

    fn qint(&self, k: i64) -> CycNum {
        (self.q(k) - self.q(-k)).checked_div(&(self.q(1) - self.q(-1))).unwrap()
    }

    fn qfact(&self, k: i64) -> CycNum {
        (1..=k).fold(CycNum::one(&self.field), |acc, j| acc * self.qint(j))
    }

    fn kmod(&self, c: i64) -> usize {
        c.rem_euclid(self.nk as i64) as usize
    }

    fn left_k(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        for (i, x) in v {
            let (a, b, c) = self.split(*i);
            acc.add(self.idx(a, b, self.kmod(c as i64 + 1)), x * &self.q(2 * a as i64 - 2 * b as i64));
        }
        acc.take()
    }

    fn left_e(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        for (i, x) in v {
            let (a, b, c) = self.split(*i);
            if a + 1 < self.ne {
                acc.add(self.idx(a + 1, b, c), x.clone());
            }
        }
        acc.take()
    }

    /// `F E^a = E^a F - [a] E^{a-1} (q^{a-1} K - q^{1-a} K⁻¹)/(q - q⁻¹)`.
    fn left_f(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        let denom = self.q(1) - self.q(-1);
        for (i, x) in v {
            let (a, b, c) = self.split(*i);
            if b + 1 < self.ne {
                acc.add(self.idx(a, b + 1, c), x.clone());
            }
            if a >= 1 {
                let (ai, bi, ci) = (a as i64, b as i64, c as i64);
                let coef = (x * &self.qint(ai)).checked_div(&denom).unwrap();
                acc.add(self.idx(a - 1, b, self.kmod(ci + 1)), -(&coef * &self.q(ai - 1 - 2 * bi)));
                acc.add(self.idx(a - 1, b, self.kmod(ci - 1)), &coef * &self.q(1 - ai + 2 * bi));
            }
        }
        acc.take()
    }

    fn tables(&self) -> Tables {
        let d = self.dim();
        let one = CycNum::one(&self.field);
        let mut mult = Vec::with_capacity(d * d);
        for i in 0..d {
            let (a, b, c) = self.split(i);
            for j in 0..d {
                let mut v: SparseVec = vec![(j, one.clone())];
                for _ in 0..c {
                    v = self.left_k(&v);
                }
                for _ in 0..b {
                    v = self.left_f(&v);
                }
                for _ in 0..a {
                    v = self.left_e(&v);
                }
                mult.push(v);
            }
        }
        let labels = (0..d)
            .map(|i| {
                let (a, b, c) = self.split(i);
                let part = |s: &str, k: usize| match k {
                    0 => String::new(),
                    1 => s.to_string(),
                    _ => format!("{s}^{k}"),
                };
                let l = part("E", a) + &part("F", b) + &part("K", c);
                if l.is_empty() {
                    "1".into()
                } else {
                    l
                }
            })
            .collect();
        let mut t = Tables {
            field: self.field.clone(),
            dim: d,
            labels,
            unit: vec![(0, one.clone())],
            mult,
            comult: vec![Vec::new(); d],
            counit: (0..d)
                .map(|i| {
                    let (a, b, _) = self.split(i);
                    CycNum::from_int(&self.field, (a == 0 && b == 0) as i64)
                })
                .collect(),
            antipode: vec![Vec::new(); d],
        };
        let pb = t.provisional();
        let e = self.idx(1, 0, 0);
        let f = self.idx(0, 1, 0);
        let k = self.idx(0, 0, 1);
        let kinv = self.idx(0, 0, self.nk - 1);
        let unit = pb.basis(0);
        let delta_e = pb.tensor_of(&pb.basis(e), &pb.basis(k));
        let delta_e = crate::cyclo::sparse_axpy(&delta_e, &one, &pb.tensor_of(&unit, &pb.basis(e)));
        let delta_f = pb.tensor_of(&pb.basis(f), &unit);
        let delta_f = crate::cyclo::sparse_axpy(&delta_f, &one, &pb.tensor_of(&pb.basis(kinv), &pb.basis(f)));
        let delta_k = pb.tensor_of(&pb.basis(k), &pb.basis(k));
        let s_e = sparse_scale(&pb.mul(&pb.basis(e), &pb.basis(kinv)), &CycNum::from_int(&self.field, -1));
        let s_f = sparse_scale(&pb.mul(&pb.basis(k), &pb.basis(f)), &CycNum::from_int(&self.field, -1));
        let s_k = pb.basis(kinv);
        for i in 0..d {
            let (a, b, c) = self.split(i);
            let mut delta = pb.tensor_of(&unit, &unit);
            let mut s = unit.clone();
            for _ in 0..a {
                delta = pb.tensor_mul(&delta, &delta_e);
                s = pb.mul(&s_e, &s);
            }
            for _ in 0..b {
                delta = pb.tensor_mul(&delta, &delta_f);
                s = pb.mul(&s_f, &s);
            }
            for _ in 0..c {
                delta = pb.tensor_mul(&delta, &delta_k);
                s = pb.mul(&s_k, &s);
            }
            t.comult[i] = delta;
            t.antipode[i] = s;
        }
        t
    }

    /// Simple module of dimension `s` with `K v_i = σ q^{s-1-2i} v_i`,
    /// `F v_i = v_{i+1}`, `E v_i = σ [i][s-i] v_{i-1}`.
    fn simple(&self, name: String, s: usize, sigma: i64) -> Rep {
        let f = &self.field;
        let sg = CycNum::from_int(f, sigma);
        let mut k = ExactMatrix::zeros(f, s, s);
        let mut e = ExactMatrix::zeros(f, s, s);
        let mut fm = ExactMatrix::zeros(f, s, s);
        for i in 0..s {
            k.set(i, i, &sg * &self.q(s as i64 - 1 - 2 * i as i64));
            if i + 1 < s {
                fm.set(i + 1, i, CycNum::one(f));
            }
            if i >= 1 {
                e.set(i - 1, i, &sg * &(self.qint(i as i64) * self.qint((s - i) as i64)));
            }
        }
        let pow = |m: &ExactMatrix, p: usize| (0..p).fold(ExactMatrix::identity(f, s), |acc, _| acc.mul(m));
        let action = (0..self.dim())
            .map(|i| {
                let (a, b, c) = self.split(i);
                pow(&e, a).mul(&pow(&fm, b)).mul(&pow(&k, c))
            })
            .collect();
        Rep::new(name, f, s, action).unwrap()
    }

    /// Candidate `R = D_h Θ` (or `Θ D_h`) with `D_h = Σ q^{hλμ} P_λ⊗P_μ` over
    /// the `K`-eigenprojectors and `Θ = Σ q^{s n(n-1)/2} (q-q⁻¹)^n/[n]! X^n⊗Y^n`.
    fn r_candidate(&self, b: &HopfBundle, h: i64, s: i64, ef: bool, d_left: bool) -> SparseVec {
        let f = &self.field;
        let d = self.dim();
        let nk = self.nk as i64;
        let nk2 = CycNum::from_int(f, nk * nk);
        let mut dpart: SparseVec = Vec::new();
        for a in 0..nk {
            for bb in 0..nk {
                let mut sum = CycNum::zero(f);
                for l in 0..nk {
                    for m in 0..nk {
                        sum += &self.q(h * l * m - a * l - bb * m);
                    }
                }
                let c = sum.checked_div(&nk2).unwrap();
                if !c.is_zero() {
                    dpart.push((self.idx(0, 0, a as usize) * d + self.idx(0, 0, bb as usize), c));
                }
            }
        }
        dpart.sort_by_key(|e| e.0);
        let mut theta: SparseVec = Vec::new();
        let qq = self.q(1) - self.q(-1);
        for n in 0..self.ne {
            let ni = n as i64;
            let coef = (self.q(s * ni * (ni - 1) / 2) * qq.pow(ni).unwrap())
                .checked_div(&self.qfact(ni))
                .unwrap();
            let (x, y) = if ef {
                (self.idx(n, 0, 0), self.idx(0, n, 0))
            } else {
                (self.idx(0, n, 0), self.idx(n, 0, 0))
            };
            theta.push((x * d + y, coef));
        }
        theta.sort_by_key(|e| e.0);
        if d_left {
            b.tensor_mul(&dpart, &theta)
        } else {
            b.tensor_mul(&theta, &dpart)
        }
    }

    /// Necessary conditions checked on generators only.
    fn quick_check(&self, b: &HopfBundle, r: &SparseVec) -> bool {
        for g in [self.idx(1, 0, 0), self.idx(0, 1, 0), self.idx(0, 0, 1)] {
            let delta = b.comult_basis(g);
            if b.tensor_mul(&b.flip(delta), r) != b.tensor_mul(r, delta) {
                return false;
            }
        }
        comult_left(b, r) == triple_mul(b, &embed_pair(b, r, [0, 2]), &embed_pair(b, r, [1, 2]))
    }
}

/// Restricted quantum group `ū_q(sl2)` at `q = ζ_{2p}` (`E^p = F^p = 0`,
/// `K^{2p} = 1`), pivotal element `K^{p+1}`, dimension `2p³`. Modules: the
/// `2p` simples `X±s` and the regular representation.
///
/// With `with_r`, a family of standard-form R-matrix candidates is tried;
/// R and ribbon data are attached only if the full validator accepts one.
/// The outcome is recorded under `metadata.braiding`.
pub fn restricted_quantum_sl2(p: usize, with_r: bool) -> HopfBundle {
    assert!(p >= 2, "p must be at least 2");
    let qs = Qsl2 {
        field: Field::cyclotomic(2 * p as u32),
        n: 2 * p as u32,
        ne: p,
        nk: 2 * p,
    };
    let mut reps = Vec::new();
    let mut names = Vec::new();
    for sigma in [1i64, -1] {
        for s in 1..=p {
            let name = format!("X{}{s}", if sigma > 0 { '+' } else { '-' });
            reps.push(qs.simple(name.clone(), s, sigma));
            names.push(name);
        }
    }
    let g = qs.idx(0, 0, p + 1);
    let meta = json!({
        "generator": "restricted_quantum_sl2",
        "p": p,
        "q": format!("zeta_{}", qs.n),
        "pivotal": format!("K^{}", p + 1),
    });
    build_qsl2(&qs, &format!("uqsl2_p{p}"), g, reps, &names, with_r, meta)
}

/// Small quantum group `u_q(sl2)` at an odd root of unity `q = ζ_ℓ`
/// (`E^ℓ = F^ℓ = 0`, `K^ℓ = 1`), pivotal element `K`, with the first
/// R-matrix candidate accepted by the validator.
pub fn small_quantum_sl2_odd(ell: usize) -> HopfBundle {
    assert!(ell >= 3 && ell % 2 == 1, "ell must be odd and at least 3");
    let qs = Qsl2 {
        field: Field::cyclotomic(ell as u32),
        n: ell as u32,
        ne: ell,
        nk: ell,
    };
    let reps: Vec<Rep> = (1..=ell).map(|s| qs.simple(format!("V{s}"), s, 1)).collect();
    let names: Vec<String> = (1..=ell).map(|s| format!("V{s}")).collect();
    let g = qs.idx(0, 0, 1);
    let meta = json!({"generator": "small_quantum_sl2_odd", "ell": ell, "q": format!("zeta_{ell}"), "pivotal": "K"});
    build_qsl2(&qs, &format!("uqsl2_odd{ell}"), g, reps, &names, true, meta)
}

fn build_qsl2(
    qs: &Qsl2,
    name: &str,
    pivotal: usize,
    reps: Vec<Rep>,
    names: &[String],
    with_r: bool,
    meta: Value,
) -> HopfBundle {
    let t = qs.tables();
    let pb = t.provisional();
    let mut data = t.data(name);
    data.pivotal = pb.basis(pivotal);
    let mut meta = meta.as_object().cloned().unwrap_or_default();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    if with_r {
        let mut tried = 0;
        let mut accepted = None;
        'search: for d_left in [true, false] {
            for ef in [true, false] {
                for s in [1i64, -1] {
                    for h in 0..qs.nk as i64 {
                        tried += 1;
                        let r = qs.r_candidate(&pb, h, s, ef, d_left);
                        if !qs.quick_check(&pb, &r) {
                            continue;
                        }
                        let mut trial = data.clone();
                        attach_ribbon(&mut trial, &pb, &r);
                        let candidate = HopfBundle::new(trial.clone()).expect("well-formed");
                        if validate_bundle(&candidate).is_valid() {
                            accepted = Some((trial, json!({"h": h, "s": s, "order": if ef { "EF" } else { "FE" }, "cartan_left": d_left})));
                            break 'search;
                        }
                    }
                }
            }
        }
        let status = match accepted {
            Some((trial, params)) => {
                data = trial;
                json!({"status": "accepted", "candidates_tried": tried, "candidate": params})
            }
            None => json!({
                "status": "rejected",
                "candidates_tried": tried,
                "detail": "no candidate D_h·Θ or Θ·D_h satisfies quasitriangularity; bundle is pivotal-only",
            }),
        };
        meta.insert("braiding".into(), status);
    }
    data.metadata = meta;
    finish(data, &t, reps, &name_refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for b in [trivial(), z2(), z3_braided(), sweedler()] {
            let rep = validate_bundle(&b);
            assert!(rep.is_valid(), "{}: {:?}", b.name(), rep.failures);
        }
    }

    #[test]
    fn shipped_files_match_builders() {
        use crate::hopf::{bundle_from_json, bundle_to_json};
        for (text, built) in [(SWEEDLER_JSON, sweedler()), (Z2_JSON, z2())] {
            let parsed = bundle_from_json(&serde_json::from_str(text).unwrap()).unwrap();
            assert_eq!(bundle_to_json(&parsed), bundle_to_json(&built), "{}", built.name());
        }
    }

    #[test]
    fn restricted_p2_is_pivotal_valid() {
        let b = restricted_quantum_sl2(2, false);
        assert_eq!(b.dim(), 16);
        let rep = validate_bundle(&b);
        assert!(rep.is_valid(), "{:?}", rep.failures);
        assert_eq!(b.simples().len(), 4);
    }

    #[test]
    fn odd_three_has_validated_ribbon() {
        let b = small_quantum_sl2_odd(3);
        assert_eq!(b.dim(), 27);
        assert!(b.has_ribbon(), "{:?}", b.metadata());
        assert!(validate_bundle(&b).is_valid());
    }
}
