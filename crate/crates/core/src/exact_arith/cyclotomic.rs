use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Rational, UniPoly};
use crate::error::LabError;

/// The m-th cyclotomic polynomial Φ_m, monic of degree φ(m).
///
/// Computed by dividing x^m − 1 by Φ_k for every proper divisor k of m.
pub fn cyclotomic_polynomial(m: u32) -> UniPoly {
    assert!(m >= 1, "cyclotomic_polynomial needs m >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u32, UniPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut poly = UniPoly::x_pow_minus_one(m as usize);
    for k in 1..m {
        if m % k == 0 {
            let (q, r) = poly.div_rem(&cyclotomic_polynomial(k));
            debug_assert!(r.is_zero());
            poly = q;
        }
    }
    cache.lock().unwrap().insert(m, poly.clone());
    poly
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// Arithmetic context for ℚ(ζ_m) = ℚ[x]/(Φ_m).
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    degree: usize,
    modulus: UniPoly,
    /// x^k mod Φ_m for 0 <= k < max(m, 2φ(m) − 1). Integral because Φ_m is monic in ℤ[x].
    powers: Vec<Vec<BigInt>>,
}

impl CycloField {
    /// Shared context for ℚ(ζ_m); built once per order.
    pub fn get(order: u32) -> Arc<CycloField> {
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(Default::default);
        let mut guard = fields.lock().unwrap();
        guard
            .entry(order)
            .or_insert_with(|| Arc::new(CycloField::build(order)))
            .clone()
    }

    fn build(order: u32) -> CycloField {
        assert!(order >= 1, "cyclotomic field order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.degree().unwrap();
        let phi_int: Vec<BigInt> = modulus
            .coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        // reduce x^k by repeated shifting: x·v, then replace x^degree by −Σ Φ_i x^i
        let shift = |v: &[BigInt]| -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); degree];
            let top = v[degree - 1].clone();
            for i in (1..degree).rev() {
                out[i] = v[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    out[i] -= &top * &phi_int[i];
                }
            }
            out
        };
        let mut unit = vec![BigInt::zero(); degree];
        unit[0] = BigInt::one();
        let max_k = (order as usize).max(2 * degree - 1);
        let mut powers = Vec::with_capacity(max_k);
        let mut cur = unit;
        for _ in 0..max_k {
            let next = shift(&cur);
            powers.push(cur);
            cur = next;
        }
        CycloField {
            order,
            degree,
            modulus,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(m), the dimension over ℚ.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    /// Product in ℤ[ζ_m] of two power-basis coefficient vectors of length φ(m).
    pub fn mul_integral(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let deg = self.degree;
        let mut raw = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = raw[..deg].to_vec();
        for (k, c) in raw.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.powers[k]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }

    /// Reduces a coefficient vector of arbitrary length modulo Φ_m.
    fn reduce(&self, mut raw: Vec<Rational>) -> Vec<Rational> {
        let deg = self.degree;
        if raw.len() <= deg {
            raw.resize(deg, Rational::zero());
            return raw;
        }
        // fold exponents >= m with ζ^m = 1, then use the power table
        let m = self.order as usize;
        if raw.len() > self.powers.len() {
            for k in (m..raw.len()).rev() {
                let c = std::mem::take(&mut raw[k]);
                if !c.is_zero() {
                    raw[k % m] += c;
                }
            }
            raw.truncate(m);
        }
        let mut out: Vec<Rational> = raw[..deg].to_vec();
        for (k, c) in raw.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.powers[k]) {
                if !r.is_zero() {
                    *o += c * Rational::from_integer(r.clone());
                }
            }
        }
        out
    }
}

/// An exact element of ℚ(ζ_m), stored in the power basis 1, ζ, …, ζ^{φ(m)−1}.
///
/// The representation is canonical: two values are equal as field elements
/// iff their coefficient vectors are identical.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn zero(order: u32) -> Self {
        let field = CycloField::get(order);
        let coeffs = vec![Rational::zero(); field.degree];
        CycloNumber { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = q;
        x
    }

    pub fn from_int(order: u32, k: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(k)))
    }

    /// Builds an element from power-basis coefficients of any length; the
    /// input is reduced modulo Φ_m.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        let field = CycloField::get(order);
        let coeffs = field.reduce(coeffs);
        CycloNumber { field, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, when it lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixing elements of different cyclotomic fields"
        );
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplication by ζ^k.
    pub fn mul_zeta(&self, k: i64) -> Self {
        self * &zeta_pow(self.order(), k)
    }

    pub fn inverse(&self) -> Result<Self, LabError> {
        if self.is_zero() {
            return Err(LabError::DivisionByZero { order: self.order() });
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order(), q.recip()));
        }
        let a = UniPoly::new(self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&self.field.modulus);
        debug_assert!(g.is_one_poly());
        Ok(Self::from_coeffs(self.order(), s.coeffs().to_vec()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Galois conjugate under ζ ↦ ζ^k.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.order() as i64;
        let mut raw = vec![Rational::zero(); self.order() as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(j as i64 * k).rem_euclid(m) as usize] += c;
            }
        }
        Self::from_coeffs(self.order(), raw)
    }

    /// Complex conjugate (ζ ↦ ζ^{-1}).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Floating point value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.order() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * j as f64 / m;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

impl UniPoly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeffs()[0].is_one()
    }
}

/// ε^k for ε = e^{2πi/m}, with k reduced mod m.
pub fn zeta_pow(m: u32, k: i64) -> CycloNumber {
    let field = CycloField::get(m);
    let idx = k.rem_euclid(m as i64) as usize;
    let coeffs = field.powers[idx]
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    CycloNumber { field, coeffs }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl Hash for CycloNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNumber[{}]({self})", self.order())
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match j {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if j == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &'a CycloNumber) -> CycloNumber {
        self.check_same_field(rhs);
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &'a CycloNumber) -> CycloNumber {
        self.check_same_field(rhs);
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &'a CycloNumber) -> CycloNumber {
        self.check_same_field(rhs);
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(&q);
        }
        let deg = self.field.degree;
        let mut raw = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.field.reduce(raw),
        }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &'a CycloNumber) -> CycloNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        self.check_same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, rhs: &CycloNumber) {
        self.check_same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl std::iter::Sum for CycloNumber {
    fn sum<I: Iterator<Item = CycloNumber>>(iter: I) -> Self {
        let mut iter = iter.peekable();
        let Some(first) = iter.next() else {
            panic!("summing an empty iterator of CycloNumber needs an explicit order");
        };
        iter.fold(first, |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic_polynomial(1), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), UniPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), UniPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(9), UniPoly::from_ints(&[1, 0, 0, 1, 0, 0, 1]));
        for m in 1..=30 {
            let p = cyclotomic_polynomial(m);
            assert!(p.is_monic());
            assert_eq!(p.degree(), Some(euler_phi(m)));
        }
    }

    #[test]
    fn cyclotomic_against_product_oracle() {
        // x^m - 1 = prod over divisors, independently of the recursive division
        for m in 1..=24u32 {
            let mut prod = UniPoly::one();
            for k in 1..=m {
                if m % k == 0 {
                    prod = prod.mul(&cyclotomic_polynomial(k));
                }
            }
            assert_eq!(prod, UniPoly::x_pow_minus_one(m as usize), "m = {m}");
        }
    }

    #[test]
    fn zeta_pow_examples() {
        assert!(zeta_pow(4, 0).is_one());
        assert_eq!(zeta_pow(4, 2), CycloNumber::from_int(4, -1));
        assert_eq!(zeta_pow(4, 5), zeta_pow(4, 1));
        assert_eq!(zeta_pow(4, -1), -zeta_pow(4, 1));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for m in 2..=12u32 {
            let mut sum = CycloNumber::zero(m);
            for k in 0..m as i64 {
                let z = zeta_pow(m, k);
                assert!(z.pow(m as u64).is_one(), "m={m} k={k}");
                sum += &z;
            }
            assert!(sum.is_zero(), "m={m}");
        }
        // m = 1: the only root is 1
        assert!(zeta_pow(1, 3).is_one());
    }

    #[test]
    fn field_ops_examples() {
        let i = zeta_pow(4, 1);
        assert_eq!(i.inverse().unwrap(), -i.clone());
        for a in 0..7i64 {
            for b in -3..5i64 {
                assert_eq!(&zeta_pow(9, a) * &zeta_pow(9, b), zeta_pow(9, a + b));
            }
        }
        assert!(matches!(
            CycloNumber::zero(5).inverse(),
            Err(LabError::DivisionByZero { order: 5 })
        ));
    }

    #[test]
    fn inverse_of_generic_element() {
        let x = CycloNumber::from_coeffs(9, vec![q(1, 2), q(-3, 7), q(0, 1), q(5, 1), q(1, 3)]);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn galois_conjugation_is_multiplicative() {
        let x = CycloNumber::from_coeffs(12, vec![q(1, 1), q(2, 1), q(-1, 5)]);
        let y = CycloNumber::from_coeffs(12, vec![q(0, 1), q(3, 4), q(1, 1), q(7, 1)]);
        for k in [1i64, 5, 7, 11] {
            assert_eq!((&x * &y).galois(k), &x.galois(k) * &y.galois(k));
        }
        assert_eq!(zeta_pow(12, 1).conj(), zeta_pow(12, -1));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(zeta_pow(3, 2).to_string(), "-1 - z");
        assert_eq!(CycloNumber::from_rational(5, q(-3, 2)).to_string(), "-3/2");
    }
}
