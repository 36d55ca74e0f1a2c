//! Univariate polynomials in `t` over a [`Field`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, FieldError, PrimeField, Rationals};

/// Coefficients from the constant term upwards, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    coeffs: Vec<E>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// The test is out of reach (degree > 3 over Q).
    Unknown,
}

impl<E: Clone + PartialEq> Polynomial<E> {
    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The monomial `t^k`.
    pub fn monomial<F: Field<Elem = E>>(field: &F, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(field.one());
        Polynomial { coeffs }
    }

    /// `t - a`.
    pub fn linear<F: Field<Elem = E>>(field: &F, a: &E) -> Self {
        Self::from_coeffs(field, vec![field.neg(a), field.one()])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.leading().is_some_and(|c| field.is_one(c))
    }

    /// The polynomial `t` itself.
    pub fn is_t<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.len() == 2 && field.is_zero(&self.coeffs[0]) && field.is_one(&self.coeffs[1])
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::from_coeffs(field, self.coeffs.iter().map(|x| field.mul(x, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(field, coeffs)
    }

    /// Euclidean division: `(q, r)` with `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let dd = divisor.degree().ok_or(FieldError::InverseOfZero)?;
        let lead_inv = field.inv(divisor.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = field.mul(rem.last().unwrap(), &lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = field.sub(&rem[k + j], &field.mul(&c, d));
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| field.is_zero(x)) {
                rem.pop();
            }
        }
        Ok((Self::from_coeffs(field, quot), Self::from_coeffs(field, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Result<Self, FieldError> {
        Ok(self.div_rem(field, divisor)?.1)
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Result<Self, FieldError> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(c) => Ok(self.scale(field, &field.inv(c)?)),
        }
    }

    /// Extended gcd: `(g, s, u)` with `g = s·self + u·other`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<(Self, Self, Self), FieldError> {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(field, field.one()), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::constant(field, field.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(field, &r1)?;
            let s2 = s0.sub(field, &q.mul(field, &s1));
            let u2 = u0.sub(field, &q.mul(field, &u1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        match r0.leading().cloned() {
            None => Ok((r0, s0, u0)),
            Some(c) => {
                let ci = field.inv(&c)?;
                Ok((r0.scale(field, &ci), s0.scale(field, &ci), u0.scale(field, &ci)))
            }
        }
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// Text form, highest degree first: `t^3+t+1`, `2t^2-1/3`.
    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let s = field.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let unit = mag == "1";
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !unit {
                        out.push_str(&mag);
                    }
                    out.push('t');
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }

    /// Parses sums of terms `c`, `c t`, `c t^k`, `c*t^k` (spaces ignored).
    pub fn parse<F: Field<Elem = E>>(field: &F, text: &str) -> Result<Self, FieldError> {
        let err = || FieldError::ParsePoly(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && current.ends_with('^')) {
                if i > 0 {
                    if current.is_empty() {
                        return Err(err());
                    }
                    terms.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(err());
        }
        terms.push((negative, current));

        let mut coeffs: Vec<E> = Vec::new();
        for (neg, term) in terms {
            let (coef_text, exp) = match term.split_once('t') {
                None => (term.as_str(), 0usize),
                Some((c, rest)) => {
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<usize>()
                            .map_err(|_| err())?
                    };
                    (c.strip_suffix('*').unwrap_or(c), exp)
                }
            };
            let mut c = if coef_text.is_empty() {
                field.one()
            } else {
                field.parse(coef_text).map_err(|_| err())?
            };
            if neg {
                c = field.neg(&c);
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, field.zero());
            }
            coeffs[exp] = field.add(&coeffs[exp], &c);
        }
        Ok(Self::from_coeffs(field, coeffs))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// All monic polynomials of exact degree `d` over a finite field.
pub(crate) fn monic_of_degree<F: Field>(field: &F, d: usize) -> Vec<Polynomial<F::Elem>> {
    let q = field.order().expect("finite field");
    let count = q.pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(field.element(idx % q));
                idx /= q;
            }
            coeffs.push(field.one());
            Polynomial::from_coeffs(field, coeffs)
        })
        .collect()
}

/// Trial division by every monic polynomial of degree `<= deg f / 2`.
pub(crate) fn trial_division<F: Field>(field: &F, f: &Polynomial<F::Elem>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        for g in monic_of_degree(field, d) {
            if f.rem(field, &g).map(|r| r.is_zero()).unwrap_or(false) {
                return false;
            }
        }
    }
    true
}

/// Irreducibility of a monic `f` over `F_p`.
pub fn irreducible_over_prime_field(f: &Polynomial<u64>, p: u64) -> Result<bool, FieldError> {
    let field = PrimeField::new(p)?;
    Ok(trial_division(&field, f))
}

/// All monic irreducibles over `F_p` of degree `1..=d_max` except `t`,
/// ordered by degree and then by the value `Σ c_i p^i`.
pub fn enumerate_monic_irreducibles(p: u64, d_max: usize) -> Result<Vec<Polynomial<u64>>, FieldError> {
    let field = PrimeField::new(p)?;
    let mut out = Vec::new();
    for d in 1..=d_max {
        // monic_of_degree already yields increasing Σ c_i p^i.
        out.extend(
            monic_of_degree(&field, d)
                .into_iter()
                .filter(|f| !f.is_t(&field) && trial_division(&field, f)),
        );
    }
    Ok(out)
}

/// Over Q: exact for degree <= 3 via the rational root theorem.
pub(crate) fn rational_irreducibility(f: &Polynomial<BigRational>) -> Irreducibility {
    let Some(n) = f.degree() else {
        return Irreducibility::Reducible;
    };
    match n {
        0 => Irreducibility::Reducible,
        1 => Irreducibility::Irreducible,
        2 | 3 => {
            if has_rational_root(f) {
                Irreducibility::Reducible
            } else {
                Irreducibility::Irreducible
            }
        }
        _ => Irreducibility::Unknown,
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn has_rational_root(f: &Polynomial<BigRational>) -> bool {
    let q = Rationals;
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    if ints[0].is_zero() {
        return true;
    }
    let lead = ints.last().unwrap();
    for num in divisors(&ints[0]) {
        for den in divisors(lead) {
            for sign in [1, -1] {
                let r = BigRational::new(&num * sign, den.clone());
                if q.is_zero(&f.eval(&q, &r)) {
                    return true;
                }
            }
        }
    }
    false
}
