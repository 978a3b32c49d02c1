use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Precomputed reduction data for `Q(zeta_N)` in the power basis modulo the
/// cyclotomic polynomial `Phi_N`.
#[derive(Debug)]
pub struct FieldData {
    order: u32,
    degree: usize,
    /// Coefficients of `Phi_N`, lowest degree first, monic of length `degree + 1`.
    modulus: Vec<i64>,
    /// `x^j mod Phi_N` for `0 <= j < order`.
    powers: Vec<Vec<i64>>,
    /// Exponents `k` coprime to `order`, excluding 1; these index the
    /// non-identity Galois automorphisms `zeta -> zeta^k`.
    conjugators: Vec<u32>,
}

/// Cheap shared handle to a cyclotomic field.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.order == other.0.order
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.order.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.order)
    }
}

fn registry() -> &'static Mutex<HashMap<u32, Field>> {
    static REGISTRY: OnceLock<Mutex<HashMap<u32, Field>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// The field `Q(zeta_order)`. Handles are interned per order.
    pub fn cyclotomic(order: u32) -> Field {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut reg = registry().lock().expect("field registry poisoned");
        reg.entry(order)
            .or_insert_with(|| Field(Arc::new(FieldData::new(order))))
            .clone()
    }

    /// The rational numbers, `Q(zeta_1)`.
    pub fn rationals() -> Field {
        Field::cyclotomic(1)
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// `phi(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub(crate) fn data(&self) -> &FieldData {
        &self.0
    }
}

impl FieldData {
    fn new(order: u32) -> FieldData {
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 0 {
            unreachable!("cyclotomic polynomial has positive degree");
        }
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * modulus[i];
                }
            }
        }
        let conjugators = (2..order.max(2))
            .filter(|k| k.gcd(&order) == 1)
            .collect();
        FieldData {
            order,
            degree,
            modulus,
            powers,
            conjugators,
        }
    }

    pub(crate) fn power(&self, exp: u64) -> &[i64] {
        &self.powers[(exp % self.order as u64) as usize]
    }

    /// Reduce an integer polynomial of arbitrary length modulo `Phi_N`.
    pub(crate) fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        if poly.len() < d {
            poly.resize(d, BigInt::zero());
            return poly;
        }
        for k in (d..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            for i in 0..d {
                let m = self.modulus[i];
                if m != 0 {
                    poly[k - d + i] -= &c * m;
                }
            }
        }
        poly.truncate(d);
        poly
    }

    /// Product of two reduced integer polynomials, reduced.
    pub(crate) fn mul_poly(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree;
        if d == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut out = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Apply the Galois automorphism `zeta -> zeta^k` to a reduced polynomial.
    pub(crate) fn galois(&self, a: &[BigInt], k: u32) -> Vec<BigInt> {
        let d = self.degree;
        let mut out = vec![BigInt::zero(); d];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = self.power(i as u64 * k as u64);
            for (slot, m) in out.iter_mut().zip(img) {
                if *m != 0 {
                    *slot += c * *m;
                }
            }
        }
        out
    }

    /// Product of all non-identity Galois conjugates of `a`. Multiplying by
    /// it sends `a` to its (integer) norm when `a` has integer coefficients.
    pub(crate) fn conjugate_product(&self, a: &[BigInt]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.degree];
        acc[0] = BigInt::one();
        for &k in &self.conjugators {
            let c = self.galois(a, k);
            acc = self.mul_poly(&acc, &c);
        }
        acc
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_poly_div(&poly, &divisor);
        }
    }
    poly
}

fn exact_poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1 || lead == -1);
    let qlen = num.len() - dd;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd] / lead;
        quot[k] = c;
        for i in 0..=dd {
            rem[k + i] -= c * den[i];
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn power_table_wraps() {
        let f = Field::cyclotomic(6);
        let d = f.data();
        // zeta_6^3 = -1
        assert_eq!(d.power(3), &[-1, 0]);
        assert_eq!(d.power(6), &[1, 0]);
        assert_eq!(d.power(2), &[-1, 1]);
    }

    #[test]
    fn interned() {
        let a = Field::cyclotomic(8);
        let b = Field::cyclotomic(8);
        assert!(Arc::ptr_eq(&a.0, &b.0));
        assert_eq!(a.degree(), 4);
    }
}
