use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use super::CycError;

/// Exact element of `Q(zeta_N)`.
///
/// Stored as integer numerators over a single positive common denominator in
/// the power basis `1, zeta, ..., zeta^(phi(N)-1)`. The representation is
/// normalized (reduced modulo `Phi_N`, `gcd(numerators, den) = 1`), so
/// structural equality is field equality.
#[derive(Clone)]
pub struct CycNum {
    field: Field,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(field: &Field) -> CycNum {
        CycNum {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Field) -> CycNum {
        CycNum::from_int(field, 1)
    }

    pub fn from_int(field: &Field, n: i64) -> CycNum {
        let mut z = CycNum::zero(field);
        z.num[0] = BigInt::from(n);
        z
    }

    pub fn from_bigint(field: &Field, n: BigInt) -> CycNum {
        let mut z = CycNum::zero(field);
        z.num[0] = n;
        z
    }

    pub fn from_rational(field: &Field, q: &BigRational) -> CycNum {
        let mut z = CycNum::zero(field);
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        z.normalize();
        z
    }

    pub fn from_ratio(field: &Field, p: i64, q: i64) -> CycNum {
        assert!(q != 0, "zero denominator");
        CycNum::from_rational(field, &BigRational::new(p.into(), q.into()))
    }

    /// Build from power-basis coordinates (need not be reduced; any length).
    pub fn from_power_coeffs(field: &Field, coeffs: &[BigRational]) -> CycNum {
        let mut acc = CycNum::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += &(CycNum::zeta_pow(field, k as i64) * CycNum::from_rational(field, c));
        }
        acc
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_pow(field: &Field, k: i64) -> CycNum {
        let n = field.order() as i64;
        let e = k.rem_euclid(n) as u64;
        let p = field.data().power(e);
        CycNum {
            field: field.clone(),
            num: p.iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn zeta(field: &Field) -> CycNum {
        CycNum::zeta_pow(field, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Power-basis coordinates, each in lowest terms.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub(crate) fn from_parts(field: &Field, num: Vec<BigInt>, den: BigInt) -> CycNum {
        debug_assert_eq!(num.len(), field.degree());
        let mut z = CycNum {
            field: field.clone(),
            num,
            den,
        };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    fn check_field(&self, other: &CycNum) -> Result<(), CycError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(CycError::FieldMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    fn assert_field(&self, other: &CycNum) {
        if let Err(e) = self.check_field(other) {
            panic!("{e}");
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &CycNum, negate: bool) -> CycNum {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let x = a * &other.den;
                    let y = b * &self.den;
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        CycNum::from_parts(&self.field, num, den)
    }

    fn mul_unchecked(&self, other: &CycNum) -> CycNum {
        if self.is_zero() || other.is_zero() {
            return CycNum::zero(&self.field);
        }
        let num = self.field.data().mul_poly(&self.num, &other.num);
        CycNum::from_parts(&self.field, num, &self.den * &other.den)
    }

    /// Multiplicative inverse via the norm: `a^{-1} = (prod of other
    /// conjugates) / N(a)`.
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let data = self.field.data();
        let conj = data.conjugate_product(&self.num);
        let norm_poly = data.mul_poly(&self.num, &conj);
        debug_assert!(norm_poly[1..].iter().all(|c| c.is_zero()));
        let norm = norm_poly[0].clone();
        // a = num/den, so a^{-1} = den * conj / norm(num)
        let num = conj.into_iter().map(|c| c * &self.den).collect();
        Ok(CycNum::from_parts(&self.field, num, norm))
    }

    pub fn pow(&self, exp: i64) -> Result<CycNum, CycError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = CycNum::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Re-express in `Q(zeta_target)`; `target` must be a multiple of the
    /// current order.
    pub fn embed(&self, target: &Field) -> Result<CycNum, CycError> {
        if target == &self.field {
            return Ok(self.clone());
        }
        let n = self.order();
        let m = target.order();
        if !m.is_multiple_of(n) {
            return Err(CycError::IncompatibleEmbedding { from: n, to: m });
        }
        let step = (m / n) as u64;
        let data = target.data();
        let mut num = vec![BigInt::zero(); target.degree()];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in num.iter_mut().zip(data.power(i as u64 * step)) {
                if *p != 0 {
                    *slot += c * *p;
                }
            }
        }
        Ok(CycNum::from_parts(target, num, self.den.clone()))
    }

    /// Apply `zeta -> zeta^k` (k coprime to N).
    pub fn galois(&self, k: u32) -> CycNum {
        let num = self.field.data().galois(&self.num, k);
        CycNum::from_parts(&self.field, num, self.den.clone())
    }

    /// Complex conjugate (`zeta -> zeta^{-1}`).
    pub fn conj(&self) -> CycNum {
        let n = self.order();
        self.galois(if n <= 2 { 1 } else { n - 1 })
    }

    /// Floating-point value under `zeta_N = exp(2 pi i / N)`. Non-authoritative;
    /// used for display and cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order() as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    pub fn parse_rational(s: &str) -> Result<BigRational, CycError> {
        let s = s.trim();
        let bad = || CycError::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(p, q))
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(BigRational::from_integer(p))
            }
        }
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl std::hash::Hash for CycNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.to_rational().unwrap()));
        }
        let n = self.order();
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{}", format_rational(&mag))?,
                (_, true) => write!(f, "z{n}^{k}")?,
                (_, false) => write!(f, "{}*z{n}^{k}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                self.assert_field(rhs);
                $body(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_unchecked(b, false));
forward_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_unchecked(b, true));
forward_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_unchecked(b));

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in self.num.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta4_squared_is_minus_one() {
        let k = Field::cyclotomic(4);
        let z = CycNum::zeta(&k);
        assert_eq!(&z * &z, CycNum::from_int(&k, -1));
    }

    #[test]
    fn additive_identity() {
        let k = Field::cyclotomic(5);
        let x = CycNum::zeta_pow(&k, 3) + CycNum::from_ratio(&k, 2, 7);
        assert_eq!(&x + &CycNum::zero(&k), x);
    }

    #[test]
    fn zeta8_plus_inverse_squared_is_two() {
        let k = Field::cyclotomic(8);
        let s = CycNum::zeta(&k) + CycNum::zeta_pow(&k, -1);
        let sq = &s * &s;
        // floating oracle first, then the exact claim
        let (re, im) = sq.to_complex();
        assert!((re - 2.0).abs() < 1e-12 && im.abs() < 1e-12);
        assert_eq!(sq, CycNum::from_int(&k, 2));
    }

    #[test]
    fn inverse_roundtrip() {
        let k = Field::cyclotomic(12);
        let x = CycNum::zeta_pow(&k, 1) + CycNum::from_ratio(&k, 3, 2) - CycNum::zeta_pow(&k, 3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let k = Field::cyclotomic(3);
        let x = CycNum::one(&k);
        assert!(matches!(
            x.checked_div(&CycNum::zero(&k)),
            Err(CycError::DivisionByZero)
        ));
    }

    #[test]
    fn mixed_orders_need_embedding() {
        let a = CycNum::zeta(&Field::cyclotomic(4));
        let b = CycNum::zeta(&Field::cyclotomic(3));
        assert!(matches!(
            a.checked_add(&b),
            Err(CycError::FieldMismatch { .. })
        ));
        let k12 = Field::cyclotomic(12);
        let s = a.embed(&k12).unwrap() + b.embed(&k12).unwrap();
        // i + zeta_3 = zeta_12^3 + zeta_12^4
        assert_eq!(s, CycNum::zeta_pow(&k12, 3) + CycNum::zeta_pow(&k12, 4));
    }

    #[test]
    fn rational_parse_and_format() {
        let q = CycNum::parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert!(CycNum::parse_rational("1/0").is_err());
        assert!(CycNum::parse_rational("x").is_err());
    }
}
