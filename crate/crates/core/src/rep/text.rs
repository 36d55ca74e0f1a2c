//! Text forms of module specs, basis elements and module vectors.
//!
//! Specs: `chen:v`, `chen:(e):e=2`, `chen-ext:e:t^2+t+1`, `nvc:e1.e2`,
//! `ind:v:triv(1)`, `ind:(e):ka(2)`, `ind:(e):quot(t^2+t+1)`,
//! `ind:(e):laurent(0)`, each optionally followed by `@shift`.
//!
//! Vectors: signed sums of `[coef] basis`, where a basis token is a boundary
//! path (`f`, `f(e)`), `path#i` for a coefficient coordinate, or `path@k`
//! for an induced coset. Vectors of `N_vc` are written as algebra elements.

use crate::algebra::TwistVector;
use crate::field::{format_coefficient, Field, Polynomial};
use crate::graph::Graph;
use crate::path::{BoundaryPath, ClosedPath};

use super::{BasisElement, Module, ModuleKind, ModuleSpec, ModuleVector, NSpec, RepError};

fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s)
}

/// The argument of `name(arg)`.
fn call<'a>(text: &'a str, name: &str) -> Option<&'a str> {
    text.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

impl<E: Clone + PartialEq> ModuleSpec<E> {
    pub fn parse<F: Field<Elem = E>>(graph: &Graph, field: &F, text: &str) -> Result<Self, RepError> {
        let err = |msg: &str| RepError::Parse(text.to_string(), msg.to_string());
        let trimmed = text.trim();
        let (body, shift) = match trimmed.rsplit_once('@') {
            Some((b, s)) => (b, s.trim().parse::<i64>().map_err(|_| err("bad shift"))?),
            None => (trimmed, 0),
        };
        let parts: Vec<&str> = body.splitn(3, ':').map(str::trim).collect();
        let kind = match parts.as_slice() {
            ["chen", base] => ModuleKind::Chen { base: BoundaryPath::parse(graph, base)?, twist: None },
            ["chen", base, twist] => ModuleKind::Chen {
                base: BoundaryPath::parse(graph, base)?,
                twist: Some(TwistVector::parse(graph, field, twist)?),
            },
            ["chen-ext", cycle, poly] => ModuleKind::ChenExt {
                cycle: ClosedPath::parse(graph, cycle)?,
                modulus: Polynomial::parse(field, poly)?,
            },
            ["nvc", cycle] => ModuleKind::Nvc { cycle: ClosedPath::parse(graph, cycle)? },
            ["ind", base, coeff] => {
                let base = BoundaryPath::parse(graph, base)?;
                let int = |s: &str| s.trim().parse::<i64>().map_err(|_| err("expected an integer"));
                let coeff = if *coeff == "triv" {
                    NSpec::TrivialK(0)
                } else if let Some(n) = call(coeff, "triv") {
                    NSpec::TrivialK(int(n)?)
                } else if let Some(a) = call(coeff, "ka") {
                    NSpec::Ka(field.parse(strip_parens(a.trim()))?)
                } else if let Some(f) = call(coeff, "quot") {
                    NSpec::QuotField(Polynomial::parse(field, f)?)
                } else if let Some(m) = call(coeff, "laurent") {
                    NSpec::LaurentShift(int(m)?)
                } else {
                    return Err(err("coefficient module must be triv, ka(a), quot(f) or laurent(m)"));
                };
                ModuleKind::Induced { base, coeff }
            }
            _ => return Err(err("expected chen:, chen-ext:, nvc: or ind:")),
        };
        Ok(ModuleSpec { kind, shift })
    }

    pub fn format<F: Field<Elem = E>>(&self, graph: &Graph, field: &F) -> String {
        let mut out = match &self.kind {
            ModuleKind::Chen { base, twist } => {
                let mut s = format!("chen:{}", base.display(graph));
                if let Some(a) = twist {
                    let items: Vec<String> = graph
                        .edge_ids()
                        .filter(|&e| !field.is_one(a.get(e)))
                        .map(|e| format!("{}={}", graph.edge_name(e), format_coefficient(field, a.get(e))))
                        .collect();
                    if !items.is_empty() {
                        s.push(':');
                        s.push_str(&items.join(","));
                    }
                }
                s
            }
            ModuleKind::ChenExt { cycle, modulus } => {
                format!("chen-ext:{}:{}", cycle.display(graph), modulus.format(field))
            }
            ModuleKind::Nvc { cycle } => format!("nvc:{}", cycle.display(graph)),
            ModuleKind::Induced { base, coeff } => {
                let c = match coeff {
                    NSpec::TrivialK(n) => format!("triv({n})"),
                    NSpec::Ka(a) => format!("ka({})", format_coefficient(field, a)),
                    NSpec::QuotField(f) => format!("quot({})", f.format(field)),
                    NSpec::LaurentShift(m) => format!("laurent({m})"),
                };
                format!("ind:{}:{}", base.display(graph), c)
            }
        };
        if self.shift != 0 {
            out.push_str(&format!("@{}", self.shift));
        }
        out
    }
}

/// Splits a signed sum at top-level `+`/`-`, leaving signs that follow `@`
/// or `#` (negative lags and Laurent exponents) in place.
fn signed_terms(text: &str) -> Result<Vec<(bool, String)>, String> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    let mut prev = ' ';
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let separator = depth == 0 && (ch == '+' || ch == '-') && prev != '@' && prev != '#';
        if separator {
            if !current.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
            } else if !terms.is_empty() || negative {
                return Err("dangling sign".into());
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    if current.trim().is_empty() {
        return Err("empty term".into());
    }
    terms.push((negative, current));
    Ok(terms)
}

impl<F: Field> Module<'_, F> {
    fn shows_coord(&self) -> bool {
        self.coefficient_dim() != Some(1)
    }

    pub fn format_basis(&self, b: &BasisElement) -> String {
        let graph = self.graph();
        match b {
            BasisElement::ChenPath { path, coord } => {
                let mut s = path.display(graph).to_string();
                if self.shows_coord() {
                    s.push_str(&format!("#{coord}"));
                }
                s
            }
            BasisElement::NvcMono(m) => m.display(graph).to_string(),
            BasisElement::Coset { y, k, coord } => {
                let mut s = format!("{}@{}", y.display(graph), k);
                if self.shows_coord() {
                    s.push_str(&format!("#{coord}"));
                }
                s
            }
        }
    }

    pub fn format_vector(&self, v: &ModuleVector<F::Elem>) -> String {
        let field = self.field();
        if matches!(self.spec().kind, ModuleKind::Nvc { .. }) {
            let elt = crate::algebra::Element::from_terms(
                field,
                v.terms().filter_map(|(b, c)| match b {
                    BasisElement::NvcMono(m) => Some((m.clone(), c.clone())),
                    _ => None,
                }),
            );
            return self.lpa().format(&elt);
        }
        if v.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (b, c) in v.terms() {
            let s = field.format(c);
            let simple_negative = s
                .strip_prefix('-')
                .filter(|r| !r.contains(['+', '-', 't']))
                .map(str::to_string);
            let (negative, mag) = match simple_negative {
                Some(r) => (true, r),
                None => (false, format_coefficient(field, c)),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push(' ');
            }
            out.push_str(&self.format_basis(b));
        }
        out
    }

    fn parse_basis(&self, token: &str) -> Result<ModuleVector<F::Elem>, RepError> {
        let err = |msg: &str| RepError::Parse(token.to_string(), msg.to_string());
        let field = self.field();
        let graph = self.graph();
        let (rest, coord) = match token.rsplit_once('#') {
            Some((r, c)) => (r, c.parse::<i64>().map_err(|_| err("bad coordinate"))?),
            None => (token, 0),
        };
        match &self.spec().kind {
            ModuleKind::Chen { .. } | ModuleKind::ChenExt { .. } => {
                if coord < 0 {
                    return Err(err("negative coordinate"));
                }
                let path = BoundaryPath::parse(graph, rest)?;
                let b = BasisElement::ChenPath { path, coord: coord as usize };
                if !self.owns(&b) {
                    return Err(RepError::ForeignBasis(token.to_string()));
                }
                Ok(ModuleVector::basis(field, b))
            }
            ModuleKind::Induced { .. } => {
                let (path_text, k) = match rest.rsplit_once('@') {
                    Some((p, k)) => (p, Some(k.parse::<i64>().map_err(|_| err("bad lag"))?)),
                    None => (rest, None),
                };
                let y = BoundaryPath::parse(graph, path_text)?;
                let k = match k {
                    Some(k) => k,
                    None => crate::path::tail_lags(&y, self.point())
                        .representative()
                        .ok_or_else(|| RepError::ForeignBasis(token.to_string()))?,
                };
                if !self.check_coord(coord) {
                    return Err(err("coordinate out of range"));
                }
                self.coset(y, k, coord)
            }
            ModuleKind::Nvc { .. } => unreachable!("handled by the algebra parser"),
        }
    }

    pub fn parse_vector(&self, text: &str) -> Result<ModuleVector<F::Elem>, RepError> {
        let field = self.field();
        if matches!(self.spec().kind, ModuleKind::Nvc { .. }) {
            let elt = self.lpa().parse(text)?;
            let mut out = ModuleVector::zero();
            for (m, c) in elt.terms() {
                let b = BasisElement::NvcMono(m.clone());
                if !self.owns(&b) {
                    return Err(RepError::ForeignBasis(m.display(self.graph()).to_string()));
                }
                out.add_term(field, b, c);
            }
            return Ok(out);
        }
        let trimmed = text.trim();
        if trimmed == "0" {
            return Ok(ModuleVector::zero());
        }
        let terms = signed_terms(trimmed).map_err(|m| RepError::Parse(text.to_string(), m))?;
        let mut out = ModuleVector::zero();
        for (neg, term) in terms {
            let tokens: Vec<&str> = term.split_whitespace().collect();
            let (coef, basis) = match tokens.as_slice() {
                [b] => (field.one(), *b),
                [c, b] => (field.parse(strip_parens(c))?, *b),
                _ => return Err(RepError::Parse(text.to_string(), format!("cannot read term `{}`", term.trim()))),
            };
            let coef = if neg { field.neg(&coef) } else { coef };
            out = out.add(field, &self.parse_basis(basis)?.scale(field, &coef));
        }
        Ok(out)
    }
}
