//! The graded Laurent ring `K[t^n, t^-n]` and its degree shifts.

use std::collections::BTreeMap;

use super::{Field, FieldError};

/// A Laurent polynomial whose exponents all lie in `step·Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentElement<E> {
    step: i64,
    terms: BTreeMap<i64, E>,
}

impl<E: Clone + PartialEq> LaurentElement<E> {
    pub fn zero(step: i64) -> Self {
        assert!(step >= 1, "Laurent step must be positive");
        LaurentElement { step, terms: BTreeMap::new() }
    }

    /// `c·t^exp`; `exp` must be a multiple of `step`.
    pub fn monomial<F: Field<Elem = E>>(field: &F, step: i64, exp: i64, c: E) -> Result<Self, FieldError> {
        if exp.rem_euclid(step) != 0 {
            return Err(FieldError::StepMismatch(exp, step));
        }
        let mut out = Self::zero(step);
        if !field.is_zero(&c) {
            out.terms.insert(exp, c);
        }
        Ok(out)
    }

    pub fn one<F: Field<Elem = E>>(field: &F, step: i64) -> Self {
        Self::monomial(field, step, 0, field.one()).unwrap()
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &E)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, exp: i64) -> E {
        self.terms.get(&exp).cloned().unwrap_or_else(|| field.zero())
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.step != other.step {
            return Err(FieldError::StepMismatch(self.step, other.step));
        }
        Ok(())
    }

    fn insert_add<F: Field<Elem = E>>(terms: &mut BTreeMap<i64, E>, field: &F, exp: i64, c: &E) {
        let sum = match terms.get(&exp) {
            Some(old) => field.add(old, c),
            None => c.clone(),
        };
        if field.is_zero(&sum) {
            terms.remove(&exp);
        } else {
            terms.insert(exp, sum);
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            Self::insert_add(&mut terms, field, *k, c);
        }
        Ok(LaurentElement { step: self.step, terms })
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let mut out = Self::zero(self.step);
        for (k, v) in &self.terms {
            Self::insert_add(&mut out.terms, field, *k, &field.mul(v, c));
        }
        out
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                Self::insert_add(&mut terms, field, a + b, &field.mul(x, y));
            }
        }
        Ok(LaurentElement { step: self.step, terms })
    }

    /// Multiplication by `t^by`.
    pub fn shift_exponents(&self, by: i64) -> Result<Self, FieldError> {
        if by.rem_euclid(self.step) != 0 {
            return Err(FieldError::StepMismatch(by, self.step));
        }
        Ok(LaurentElement {
            step: self.step,
            terms: self.terms.iter().map(|(k, v)| (k + by, v.clone())).collect(),
        })
    }

    /// The part of degree exactly `d`.
    pub fn homogeneous(&self, d: i64) -> Self {
        LaurentElement {
            step: self.step,
            terms: self.terms.get_key_value(&d).map(|(k, v)| (*k, v.clone())).into_iter().collect(),
        }
    }

    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match *k {
                0 => field.format(c),
                _ if field.is_one(c) => format!("t^{k}"),
                _ => format!("{}t^{}", super::format_coefficient(field, c), k),
            })
            .collect();
        parts.join(" + ")
    }
}

/// `K[t^n, t^-n](m)`: the Laurent ring with its grading moved so that the
/// component of degree `d` is the ring's component of degree `d + m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedLaurent {
    pub step: i64,
    pub shift: i64,
}

impl GradedLaurent {
    pub fn new(step: i64, shift: i64) -> Self {
        assert!(step >= 1, "Laurent step must be positive");
        GradedLaurent { step, shift }
    }

    /// Degree in the shifted module of the monomial `t^exp`.
    pub fn degree_of(&self, exp: i64) -> i64 {
        exp - self.shift
    }

    /// The underlying exponent sitting in degree `d`, if any.
    pub fn exponent_at(&self, d: i64) -> Option<i64> {
        let e = d + self.shift;
        (e.rem_euclid(self.step) == 0).then_some(e)
    }

    /// Degree-`d` component of `x` viewed in the shifted module.
    pub fn component<E: Clone + PartialEq>(&self, x: &LaurentElement<E>, d: i64) -> LaurentElement<E> {
        match self.exponent_at(d) {
            Some(e) => x.homogeneous(e),
            None => LaurentElement::zero(x.step()),
        }
    }

    /// Shifts `t^{m}` and `t^{m'}` give isomorphic graded modules iff
    /// `m ≡ m' (mod n)`.
    pub fn isomorphic(&self, other: &GradedLaurent) -> bool {
        self.step == other.step && (self.shift - other.shift).rem_euclid(self.step) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn inverse_monomials_multiply_to_one() {
        let q = Rationals;
        let a = LaurentElement::monomial(&q, 2, 2, q.one()).unwrap();
        let b = LaurentElement::monomial(&q, 2, -2, q.one()).unwrap();
        assert_eq!(a.mul(&q, &b).unwrap(), LaurentElement::one(&q, 2));
    }

    #[test]
    fn homogeneous_component() {
        let q = Rationals;
        let a = LaurentElement::monomial(&q, 2, 2, q.one()).unwrap();
        let b = LaurentElement::monomial(&q, 2, 4, q.from_i64(3)).unwrap();
        let s = a.add(&q, &b).unwrap();
        assert_eq!(s.homogeneous(4), b);
        assert_eq!(s.format(&q), "t^2 + 3t^4");
    }

    #[test]
    fn step_mismatch_errors() {
        let q = Rationals;
        let a = LaurentElement::<num_rational::BigRational>::one(&q, 2);
        let b = LaurentElement::one(&q, 3);
        assert_eq!(a.add(&q, &b), Err(FieldError::StepMismatch(2, 3)));
        assert!(LaurentElement::monomial(&q, 2, 3, q.one()).is_err());
    }

    #[test]
    fn shifted_degree_reads_underlying_degree_plus_shift() {
        let q = Rationals;
        let g = GradedLaurent::new(2, 1);
        let x = LaurentElement::monomial(&q, 2, 4, q.from_i64(5)).unwrap();
        assert_eq!(g.degree_of(4), 3);
        assert_eq!(g.component(&x, 3), x);
        assert!(g.component(&x, 4).is_zero());
        assert!(g.isomorphic(&GradedLaurent::new(2, 3)));
        assert!(!g.isomorphic(&GradedLaurent::new(2, 2)));
    }
}
