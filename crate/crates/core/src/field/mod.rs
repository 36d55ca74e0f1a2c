//! Exact coefficient fields.
//!
//! A [`Field`] value is a context object; its elements are plain values of
//! the associated `Elem` type kept in canonical form, so `==` is field
//! equality.

mod ext;
mod laurent;
mod poly;
mod spec;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

pub use ext::ExtensionField;
pub use laurent::{GradedLaurent, LaurentElement};
pub use poly::{
    enumerate_monic_irreducibles, irreducible_over_prime_field, is_prime, Irreducibility, Polynomial,
};
pub use spec::{AnyField, BaseSpec, FieldSpec, PolyText};
pub use ext::companion_matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree >= 1 with nonzero constant term: {0}")]
    BadModulus(String),
    #[error("modulus {0} is reducible")]
    Reducible(String),
    #[error("modulus {0} has degree > 3 over Q; irreducibility must be asserted")]
    UnverifiedIrreducible(String),
    #[error("cannot parse scalar `{0}`")]
    ParseScalar(String),
    #[error("cannot parse polynomial `{0}`")]
    ParsePoly(String),
    #[error("unknown field spec `{0}`")]
    UnknownField(String),
    #[error("Laurent step mismatch: {0} vs {1}")]
    StepMismatch(i64, i64),
}

pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq + Eq + Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// `Some(q)` for a finite field with `q` elements.
    fn order(&self) -> Option<u64>;
    /// The `i`-th element in a fixed enumeration of a finite field.
    fn element(&self, i: u64) -> Self::Elem;

    fn name(&self) -> String;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, text: &str) -> Result<Self::Elem, FieldError>;

    /// A pseudo-random element; over Q a small fraction.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^k` for any integer `k` (negative powers need `a != 0`).
    fn pow(&self, a: &Self::Elem, k: i64) -> Result<Self::Elem, FieldError> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Whether `f` is irreducible; finite fields use trial division.
    fn irreducibility(&self, f: &Polynomial<Self::Elem>) -> Irreducibility {
        if self.order().is_some() {
            if poly::trial_division(self, f) {
                Irreducibility::Irreducible
            } else {
                Irreducibility::Reducible
            }
        } else {
            Irreducibility::Unknown
        }
    }

    /// A random nonzero element.
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            Err(FieldError::InverseOfZero)
        } else {
            Ok(a.recip())
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    /// Enumerates 0, 1, -1, 2, -2, ...
    fn element(&self, i: u64) -> BigRational {
        let k = i.div_ceil(2) as i64;
        self.from_i64(if i % 2 == 1 { k } else { -k })
    }

    fn name(&self) -> String {
        "Q".into()
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse(&self, text: &str) -> Result<BigRational, FieldError> {
        let err = || FieldError::ParseScalar(text.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(BigRational::new(num, den))
    }

    fn irreducibility(&self, f: &Polynomial<BigRational>) -> Irreducibility {
        poly::rational_irreducibility(f)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=4);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// `Z/pZ` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, FieldError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::InverseOfZero);
        }
        // Fermat: a^(p-2).
        let mut e = self.p - 2;
        let mut acc = 1;
        let mut sq = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq % self.p;
            }
            sq = sq * sq % self.p;
            e >>= 1;
        }
        Ok(acc)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.p)
    }

    fn element(&self, i: u64) -> u64 {
        i % self.p
    }

    fn name(&self) -> String {
        format!("F{}", self.p)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, text: &str) -> Result<u64, FieldError> {
        let t = text.trim();
        let err = || FieldError::ParseScalar(text.to_string());
        if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| err())?;
            let d: i64 = d.trim().parse().map_err(|_| err())?;
            let d = self.from_i64(d);
            return self.div(&self.from_i64(n), &d).map_err(|_| err());
        }
        let n: i64 = t.parse().map_err(|_| err())?;
        Ok(self.from_i64(n))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// Formats a coefficient for use in a sum: wraps composite expressions in
/// parentheses so `coef term` parses back unambiguously.
pub fn format_coefficient<F: Field>(field: &F, a: &F::Elem) -> String {
    let s = field.format(a);
    let body = s.strip_prefix('-').unwrap_or(&s);
    if body.contains('+') || body.contains('-') || body.contains('t') {
        format!("({s})")
    } else {
        s
    }
}

/// Splits a leading sign off a formatted scalar.
pub fn split_sign(s: &str) -> (bool, &str) {
    match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn axioms<F: Field>(field: &F, trials: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..trials {
            let a = field.random(&mut rng);
            let b = field.random(&mut rng);
            let c = field.random(&mut rng);
            assert_eq!(field.add(&a, &b), field.add(&b, &a));
            assert_eq!(field.mul(&a, &b), field.mul(&b, &a));
            assert_eq!(
                field.add(&field.add(&a, &b), &c),
                field.add(&a, &field.add(&b, &c))
            );
            assert_eq!(
                field.mul(&field.mul(&a, &b), &c),
                field.mul(&a, &field.mul(&b, &c))
            );
            assert_eq!(
                field.mul(&a, &field.add(&b, &c)),
                field.add(&field.mul(&a, &b), &field.mul(&a, &c))
            );
            assert_eq!(field.add(&a, &field.neg(&a)), field.zero());
            assert_eq!(field.mul(&a, &field.one()), a);
            if !field.is_zero(&a) {
                assert_eq!(field.mul(&a, &field.inv(&a).unwrap()), field.one());
            }
        }
    }

    #[test]
    fn field_axioms_hold() {
        axioms(&Rationals, 100);
        axioms(&PrimeField::new(2).unwrap(), 100);
        axioms(&PrimeField::new(7).unwrap(), 100);
        let f2 = PrimeField::new(2).unwrap();
        let quad = Polynomial::parse(&f2, "t^2+t+1").unwrap();
        axioms(&ExtensionField::new(f2, quad).unwrap(), 100);
        let cubic = Polynomial::parse(&Rationals, "t^3-2").unwrap();
        axioms(&ExtensionField::new(Rationals, cubic).unwrap(), 100);
    }

    #[test]
    fn rational_sum() {
        let q = Rationals;
        let s = q.add(&q.parse("1/2").unwrap(), &q.parse("1/3").unwrap());
        assert_eq!(q.format(&s), "5/6");
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(Rationals.inv(&Rationals.zero()), Err(FieldError::InverseOfZero));
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(&0), Err(FieldError::InverseOfZero));
        assert_eq!(f5.inv(&2), Ok(3));
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(PrimeField::new(4), Err(FieldError::NotPrime(4)));
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn integer_powers() {
        let q = Rationals;
        let two = q.from_i64(2);
        assert_eq!(q.pow(&two, 3).unwrap(), q.from_i64(8));
        assert_eq!(q.pow(&two, -2).unwrap(), q.parse("1/4").unwrap());
        assert!(q.pow(&q.zero(), -1).is_err());
    }
}
