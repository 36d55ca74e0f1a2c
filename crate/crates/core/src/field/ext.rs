//! Simple extensions `F[t]/(f)` for a monic irreducible `f`.

use rand::Rng;

use super::{Field, FieldError, Irreducibility, Polynomial};

/// `F[t]/(f)`. Elements are coordinate vectors of length `deg f` in the
/// basis `1, t̄, ..., t̄^(d-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionField<F: Field> {
    base: F,
    modulus: Polynomial<F::Elem>,
}

impl<F: Field> ExtensionField<F> {
    /// Checks that `f` is monic of degree >= 1, has nonzero constant term,
    /// and is irreducible when that can be decided.
    pub fn new(base: F, modulus: Polynomial<F::Elem>) -> Result<Self, FieldError> {
        Self::build(base, modulus, false)
    }

    /// Like [`ExtensionField::new`] but trusts the caller when irreducibility
    /// cannot be decided.
    pub fn new_asserted(base: F, modulus: Polynomial<F::Elem>) -> Result<Self, FieldError> {
        Self::build(base, modulus, true)
    }

    fn build(base: F, modulus: Polynomial<F::Elem>, assert: bool) -> Result<Self, FieldError> {
        let text = modulus.format(&base);
        let ok_shape = modulus.degree().is_some_and(|d| d >= 1)
            && modulus.is_monic(&base)
            && !base.is_zero(&modulus.coeff(&base, 0));
        if !ok_shape {
            return Err(FieldError::BadModulus(text));
        }
        match base.irreducibility(&modulus) {
            Irreducibility::Irreducible => {}
            Irreducibility::Reducible => return Err(FieldError::Reducible(text)),
            Irreducibility::Unknown if assert => {}
            Irreducibility::Unknown => return Err(FieldError::UnverifiedIrreducible(text)),
        }
        Ok(ExtensionField { base, modulus })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &Polynomial<F::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The class of `t`.
    pub fn generator(&self) -> Vec<F::Elem> {
        self.reduce(&Polynomial::monomial(&self.base, 1))
    }

    /// Embeds a base-field scalar.
    pub fn embed(&self, c: &F::Elem) -> Vec<F::Elem> {
        self.reduce(&Polynomial::constant(&self.base, c.clone()))
    }

    pub fn reduce(&self, p: &Polynomial<F::Elem>) -> Vec<F::Elem> {
        let r = p.rem(&self.base, &self.modulus).expect("modulus is nonzero");
        (0..self.degree()).map(|i| r.coeff(&self.base, i)).collect()
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Polynomial<F::Elem> {
        Polynomial::from_coeffs(&self.base, a.to_vec())
    }

    /// Matrix of multiplication by `t̄` in the basis `1, t̄, ...`:
    /// column `j` holds the coordinates of `t̄^(j+1)`.
    pub fn companion(&self) -> Vec<Vec<F::Elem>> {
        companion_matrix(&self.base, &self.modulus)
    }
}

/// Companion matrix of a monic `f` of degree `d` (row-major, `d × d`).
pub fn companion_matrix<F: Field>(field: &F, f: &Polynomial<F::Elem>) -> Vec<Vec<F::Elem>> {
    let d = f.degree().unwrap_or(0);
    let mut m = vec![vec![field.zero(); d]; d];
    for j in 0..d {
        if j + 1 < d {
            m[j + 1][j] = field.one();
        } else {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = field.neg(&f.coeff(field, i));
            }
        }
    }
    m
}

impl<F: Field> Field for ExtensionField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let p = self.to_poly(a).mul(&self.base, &self.to_poly(b));
        self.reduce(&p)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError> {
        let p = self.to_poly(a);
        if p.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        let (g, s, _) = p.ext_gcd(&self.base, &self.modulus)?;
        if g.degree() != Some(0) {
            return Err(FieldError::Reducible(self.modulus.format(&self.base)));
        }
        Ok(self.reduce(&s))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn order(&self) -> Option<u64> {
        self.base.order().and_then(|q| q.checked_pow(self.degree() as u32))
    }

    fn element(&self, mut i: u64) -> Self::Elem {
        match self.base.order() {
            Some(q) => (0..self.degree())
                .map(|_| {
                    let c = self.base.element(i % q);
                    i /= q;
                    c
                })
                .collect(),
            None => self.embed(&self.base.element(i)),
        }
    }

    fn name(&self) -> String {
        format!("{}[t]/({})", self.base.name(), self.modulus.format(&self.base))
    }

    fn format(&self, a: &Self::Elem) -> String {
        self.to_poly(a).format(&self.base)
    }

    fn parse(&self, text: &str) -> Result<Self::Elem, FieldError> {
        let t = text.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(t);
        let p = Polynomial::parse(&self.base, t).map_err(|_| FieldError::ParseScalar(text.into()))?;
        Ok(self.reduce(&p))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.degree()).map(|_| self.base.random(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn f4() -> ExtensionField<PrimeField> {
        let f2 = PrimeField::new(2).unwrap();
        let m = Polynomial::parse(&f2, "t^2+t+1").unwrap();
        ExtensionField::new(f2, m).unwrap()
    }

    #[test]
    fn generator_squares_to_generator_plus_one() {
        let k = f4();
        let t = k.generator();
        assert_eq!(k.mul(&t, &t), k.add(&t, &k.one()));
        assert_eq!(k.format(&k.mul(&t, &t)), "t+1");
        assert_eq!(k.order(), Some(4));
        assert_eq!(k.name(), "F2[t]/(t^2+t+1)");
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        let k = f4();
        for i in 1..4 {
            let a = k.element(i);
            assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        let f2 = PrimeField::new(2).unwrap();
        let red = Polynomial::parse(&f2, "t^2+1").unwrap();
        assert!(matches!(ExtensionField::new(f2, red), Err(FieldError::Reducible(_))));
        let no_const = Polynomial::parse(&f2, "t^2+t").unwrap();
        assert!(matches!(ExtensionField::new(f2, no_const), Err(FieldError::BadModulus(_))));
        let quartic = Polynomial::parse(&Rationals, "t^4+1").unwrap();
        assert!(matches!(
            ExtensionField::new(Rationals, quartic.clone()),
            Err(FieldError::UnverifiedIrreducible(_))
        ));
        assert!(ExtensionField::new_asserted(Rationals, quartic).is_ok());
    }

    #[test]
    fn cube_root_of_two() {
        let q = Rationals;
        let k = ExtensionField::new(q, Polynomial::parse(&q, "t^3-2").unwrap()).unwrap();
        let t = k.generator();
        assert_eq!(k.pow(&t, 3).unwrap(), k.from_i64(2));
        assert_eq!(k.format(&k.inv(&t).unwrap()), "1/2t^2");
        assert_eq!(k.parse("(1/2t^2)").unwrap(), k.inv(&t).unwrap());
    }

    #[test]
    fn companion_matches_multiplication() {
        let k = f4();
        let c = k.companion();
        let base = k.base();
        // column j of the companion is t̄·e_j
        for j in 0..k.degree() {
            let mut e = k.zero();
            e[j] = base.one();
            let prod = k.mul(&k.generator(), &e);
            let col: Vec<u64> = (0..k.degree()).map(|i| c[i][j]).collect();
            assert_eq!(prod, col);
        }
    }
}
