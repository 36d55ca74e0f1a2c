//! Field spec strings: `Q`, `F7`, `F2[t]/(t^2+t+1)`, `Q[t]/(t^3-2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ExtensionField, Field, FieldError, Polynomial, PrimeField, Rationals};

/// Polynomial text as typed by a user, e.g. `t^3+t+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyText(pub String);

impl fmt::Display for PolyText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseSpec {
    Rationals,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub base: BaseSpec,
    pub modulus: Option<PolyText>,
    /// Accept a modulus whose irreducibility cannot be decided.
    #[serde(default)]
    pub assert_irreducible: bool,
}

/// A concrete field built from a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Rationals(Rationals),
    Prime(PrimeField),
    RationalExt(ExtensionField<Rationals>),
    PrimeExt(ExtensionField<PrimeField>),
}

/// Runs `$body` with `$f` bound to the concrete field inside an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, |$f:ident| $body:expr) => {
        match $any {
            $crate::field::AnyField::Rationals($f) => $body,
            $crate::field::AnyField::Prime($f) => $body,
            $crate::field::AnyField::RationalExt($f) => $body,
            $crate::field::AnyField::PrimeExt($f) => $body,
        }
    };
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { base: BaseSpec::Rationals, modulus: None, assert_irreducible: false }
    }

    pub fn prime(p: u64) -> Self {
        FieldSpec { base: BaseSpec::Prime(p), modulus: None, assert_irreducible: false }
    }

    pub fn build(&self) -> Result<AnyField, FieldError> {
        let ext = |text: &PolyText| -> Result<AnyField, FieldError> {
            match self.base {
                BaseSpec::Rationals => {
                    let f = Polynomial::parse(&Rationals, &text.0)?;
                    let k = if self.assert_irreducible {
                        ExtensionField::new_asserted(Rationals, f)?
                    } else {
                        ExtensionField::new(Rationals, f)?
                    };
                    Ok(AnyField::RationalExt(k))
                }
                BaseSpec::Prime(p) => {
                    let base = PrimeField::new(p)?;
                    let f = Polynomial::parse(&base, &text.0)?;
                    Ok(AnyField::PrimeExt(ExtensionField::new(base, f)?))
                }
            }
        };
        match (&self.base, &self.modulus) {
            (BaseSpec::Rationals, None) => Ok(AnyField::Rationals(Rationals)),
            (BaseSpec::Prime(p), None) => Ok(AnyField::Prime(PrimeField::new(*p)?)),
            (_, Some(text)) => ext(text),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let err = || FieldError::UnknownField(s.to_string());
        let s = s.trim();
        let (base_text, modulus) = match s.split_once("[t]/") {
            Some((b, m)) => {
                let m = m
                    .strip_prefix('(')
                    .and_then(|m| m.strip_suffix(')'))
                    .ok_or_else(err)?;
                (b, Some(PolyText(m.to_string())))
            }
            None => (s, None),
        };
        let base = match base_text {
            "Q" => BaseSpec::Rationals,
            b => {
                let p = b
                    .strip_prefix('F')
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(err)?;
                BaseSpec::Prime(p)
            }
        };
        Ok(FieldSpec { base, modulus, assert_irreducible: false })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseSpec::Rationals => write!(f, "Q")?,
            BaseSpec::Prime(p) => write!(f, "F{p}")?,
        }
        if let Some(m) = &self.modulus {
            write!(f, "[t]/({m})")?;
        }
        Ok(())
    }
}

impl AnyField {
    pub fn name(&self) -> String {
        with_field!(self, |f| f.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::rationals());
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::prime(2));
        let e: FieldSpec = "F2[t]/(t^2+t+1)".parse().unwrap();
        assert_eq!(e.to_string(), "F2[t]/(t^2+t+1)");
        assert_eq!(e.build().unwrap().name(), "F2[t]/(t^2+t+1)");
        assert!("R".parse::<FieldSpec>().is_err());
        assert!("F4".parse::<FieldSpec>().unwrap().build().is_err());
        assert!("F2[t]/(t^2+1)".parse::<FieldSpec>().unwrap().build().is_err());
    }

    #[test]
    fn asserted_quartic_over_q() {
        let mut s: FieldSpec = "Q[t]/(t^4+1)".parse().unwrap();
        assert!(s.build().is_err());
        s.assert_irreducible = true;
        assert!(s.build().is_ok());
    }
}
