//! The Leavitt path algebra of a graph: monomials `μν*`, multiplication,
//! the normal form, the grading and twisting automorphisms.
//!
//! Normal form: every regular vertex `v` has a special edge (the least edge
//! leaving `v` by name). A monomial `μν*` is normal unless `μ` and `ν` both
//! end in the same special edge; such a monomial `μ₀ee*ν₀*` is rewritten as
//! `μ₀ν₀* - Σ_{f ≠ e} μ₀ff*ν₀*`.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::field::{format_coefficient, Field, FieldError};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::path::{ClosedPath, Path, PathError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("monomial needs r(mu) = r(nu): `{0}` vs `{1}`")]
    RangeMismatch(String, String),
    #[error("cannot parse element `{0}`: {1}")]
    Parse(String, String),
    #[error("element does not belong to this graph")]
    ForeignElement,
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `μν*` with `r(μ) = r(ν)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    mu: Path,
    nu: Path,
}

impl Monomial {
    pub fn new(graph: &Graph, mu: Path, nu: Path) -> Result<Monomial, AlgebraError> {
        if mu.rng() != nu.rng() {
            return Err(AlgebraError::RangeMismatch(
                mu.display(graph).to_string(),
                nu.display(graph).to_string(),
            ));
        }
        Ok(Monomial { mu, nu })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial { mu: Path::vertex(v), nu: Path::vertex(v) }
    }

    /// The real path `p = p·r(p)*`.
    pub fn real(p: Path) -> Monomial {
        let nu = Path::vertex(p.rng());
        Monomial { mu: p, nu }
    }

    /// The ghost path `p* = r(p)·p*`.
    pub fn ghost(p: Path) -> Monomial {
        let mu = Path::vertex(p.rng());
        Monomial { mu, nu: p }
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn nu(&self) -> &Path {
        &self.nu
    }

    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    /// Total length `|μ| + |ν|`.
    pub fn weight(&self) -> usize {
        self.mu.len() + self.nu.len()
    }

    /// `(μν*)* = νμ*`.
    pub fn transpose(&self) -> Monomial {
        Monomial { mu: self.nu.clone(), nu: self.mu.clone() }
    }

    /// The un-normalized product: `μγβ*` if `α = νγ`, `μ(βγ)*` if `ν = αγ`,
    /// otherwise zero.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(gamma) = other.mu.strip_prefix(&self.nu) {
            let mu = self.mu.concat(&gamma)?;
            return Some(Monomial { mu, nu: other.nu.clone() });
        }
        if let Some(gamma) = self.nu.strip_prefix(&other.mu) {
            let nu = other.nu.concat(&gamma)?;
            return Some(Monomial { mu: self.mu.clone(), nu });
        }
        None
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, graph }
    }

    fn belongs_to(&self, graph: &Graph) -> bool {
        let ok = |p: &Path| {
            p.src().0 < graph.num_vertices()
                && p.edges().iter().all(|e| e.0 < graph.num_edges())
                && (p.is_vertex() || Path::from_edges(graph, p.edges().to_vec()).as_ref() == Ok(p))
        };
        ok(&self.mu) && ok(&self.nu)
    }
}

/// Every `μν*` with `|μ|, |ν| <= len`.
pub fn monomials_up_to(graph: &Graph, len: usize) -> Vec<Monomial> {
    let mut by_range: Vec<Vec<Path>> = vec![Vec::new(); graph.num_vertices()];
    for v in graph.vertex_ids() {
        for p in crate::groupoid::forward_paths(graph, v, len) {
            by_range[p.rng().0].push(p);
        }
    }
    let mut out = Vec::new();
    for paths in &by_range {
        for mu in paths {
            for nu in paths {
                out.push(Monomial { mu: mu.clone(), nu: nu.clone() });
            }
        }
    }
    out.sort();
    out
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    graph: &'a Graph,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mu, nu) = (&self.m.mu, &self.m.nu);
        match (mu.is_vertex(), nu.is_vertex()) {
            (_, true) => write!(f, "{}", mu.display(self.graph)),
            (true, false) => write!(f, "{}^*", nu.display(self.graph)),
            (false, false) => write!(f, "{} {}^*", mu.display(self.graph), nu.display(self.graph)),
        }
    }
}

/// A finite linear combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E> Default for Element<E> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<E: Clone + PartialEq> Element<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    /// Degrees of the monomials present.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(Monomial::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn accumulate<F: Field<Elem = E>>(&mut self, field: &F, m: Monomial, c: &E) {
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = field.add(old, c);
                if field.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Builds an element from raw terms without normalizing.
    pub fn from_terms<F: Field<Elem = E>>(field: &F, terms: impl IntoIterator<Item = (Monomial, E)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.accumulate(field, m, &c);
        }
        out
    }
}

/// Edge scalars `a_e`; `a_μ` is the product along `μ` and `a_v = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistVector<E> {
    scalars: Vec<E>,
}

impl<E: Clone + PartialEq> TwistVector<E> {
    pub fn trivial<F: Field<Elem = E>>(graph: &Graph, field: &F) -> Self {
        TwistVector { scalars: vec![field.one(); graph.num_edges()] }
    }

    pub fn new<F: Field<Elem = E>>(field: &F, scalars: Vec<E>) -> Result<Self, FieldError> {
        if scalars.iter().any(|c| field.is_zero(c)) {
            return Err(FieldError::InverseOfZero);
        }
        Ok(TwistVector { scalars })
    }

    /// Parses `f=3,e=1/2`; unnamed edges get 1.
    pub fn parse<F: Field<Elem = E>>(graph: &Graph, field: &F, text: &str) -> Result<Self, AlgebraError> {
        let mut out = Self::trivial(graph, field);
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, val) = item
                .split_once('=')
                .ok_or_else(|| AlgebraError::Parse(text.into(), format!("expected edge=scalar, got `{item}`")))?;
            let e = graph
                .edge(name.trim())
                .ok_or_else(|| PathError::UnknownName(name.trim().into()))?;
            let c = field.parse(strip_parens(val.trim()))?;
            if field.is_zero(&c) {
                return Err(FieldError::InverseOfZero.into());
            }
            out.scalars[e.0] = c;
        }
        Ok(out)
    }

    pub fn get(&self, e: EdgeId) -> &E {
        &self.scalars[e.0]
    }

    pub fn set(&mut self, e: EdgeId, c: E) {
        self.scalars[e.0] = c;
    }

    pub fn a_mu<F: Field<Elem = E>>(&self, field: &F, mu: &Path) -> E {
        mu.edges()
            .iter()
            .fold(field.one(), |acc, e| field.mul(&acc, &self.scalars[e.0]))
    }

    /// `a_c` for a closed path; the same for every rotation.
    pub fn a_cycle<F: Field<Elem = E>>(&self, field: &F, c: &ClosedPath) -> E {
        c.edges()
            .iter()
            .fold(field.one(), |acc, e| field.mul(&acc, &self.scalars[e.0]))
    }

    pub fn is_c_stable<F: Field<Elem = E>>(&self, field: &F, c: &ClosedPath) -> bool {
        field.is_one(&self.a_cycle(field, c))
    }

    /// The inverse twist `e ↦ a_e^{-1}`.
    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Self {
        TwistVector {
            scalars: self.scalars.iter().map(|c| field.inv(c).expect("twist scalars are units")).collect(),
        }
    }
}

fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s)
}

/// The algebra over a fixed graph and field.
#[derive(Clone, Debug)]
pub struct Lpa<'g, F: Field> {
    graph: &'g Graph,
    field: F,
    special: Vec<Option<EdgeId>>,
}

impl<'g, F: Field> Lpa<'g, F> {
    pub fn new(graph: &'g Graph, field: F) -> Self {
        // Edge ids follow name order, so the first out-edge is the least name.
        let special = graph
            .vertex_ids()
            .map(|v| graph.out_edges(v).iter().copied().min())
            .collect();
        Lpa { graph, field, special }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// The special edge at a regular vertex.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.special[v.0]
    }

    pub fn zero(&self) -> Element<F::Elem> {
        Element::zero()
    }

    pub fn monomial(&self, m: Monomial) -> Element<F::Elem> {
        self.normalize(&Element::from_terms(&self.field, [(m, self.field.one())]))
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Element<F::Elem> {
        self.normalize(&Element::from_terms(&self.field, [(m, c)]))
    }

    pub fn vertex(&self, v: VertexId) -> Element<F::Elem> {
        self.monomial(Monomial::vertex(v))
    }

    pub fn real(&self, p: Path) -> Element<F::Elem> {
        self.monomial(Monomial::real(p))
    }

    pub fn ghost(&self, p: Path) -> Element<F::Elem> {
        self.monomial(Monomial::ghost(p))
    }

    pub fn edge(&self, e: EdgeId) -> Element<F::Elem> {
        self.real(Path::edge(self.graph, e))
    }

    pub fn ghost_edge(&self, e: EdgeId) -> Element<F::Elem> {
        self.ghost(Path::edge(self.graph, e))
    }

    pub fn belongs(&self, x: &Element<F::Elem>) -> bool {
        x.terms.keys().all(|m| m.belongs_to(self.graph))
    }

    /// The special-edge rewrite site of `m`, if any.
    fn reducible(&self, m: &Monomial) -> Option<EdgeId> {
        let e = m.mu.last_edge()?;
        (m.nu.last_edge() == Some(e) && self.special[self.graph.src(e).0] == Some(e)).then_some(e)
    }

    pub fn is_normal(&self, x: &Element<F::Elem>) -> bool {
        x.terms.keys().all(|m| self.reducible(m).is_none())
    }

    /// One rewrite step: the replacement terms for a reducible monomial
    /// with coefficient `c`.
    fn rewrite(&self, m: &Monomial, e: EdgeId, c: &F::Elem) -> Vec<(Monomial, F::Elem)> {
        let g = self.graph;
        let v = g.src(e);
        let mut mu0 = m.mu.clone();
        mu0.pop(g);
        let mut nu0 = m.nu.clone();
        nu0.pop(g);
        let mut out = vec![(Monomial { mu: mu0.clone(), nu: nu0.clone() }, c.clone())];
        let neg = self.field.neg(c);
        for &f in g.out_edges(v) {
            if f == e {
                continue;
            }
            let mut mu = mu0.clone();
            mu.push(g, f);
            let mut nu = nu0.clone();
            nu.push(g, f);
            out.push((Monomial { mu, nu }, neg.clone()));
        }
        out
    }

    pub fn normalize(&self, x: &Element<F::Elem>) -> Element<F::Elem> {
        let mut out = Element::zero();
        let mut work: Vec<(Monomial, F::Elem)> = x.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            match self.reducible(&m) {
                None => out.accumulate(&self.field, m, &c),
                Some(e) => work.extend(self.rewrite(&m, e, &c)),
            }
        }
        out
    }

    /// Normal form computed with a randomly scheduled rewrite order: the
    /// work list is shuffled before every step and partial sums are merged
    /// before rewriting.
    pub fn normalize_scheduled<R: Rng + ?Sized>(&self, x: &Element<F::Elem>, rng: &mut R) -> Element<F::Elem> {
        let mut pending = x.clone();
        loop {
            let mut reducible: Vec<Monomial> = pending
                .terms
                .keys()
                .filter(|m| self.reducible(m).is_some())
                .cloned()
                .collect();
            if reducible.is_empty() {
                return pending;
            }
            reducible.shuffle(rng);
            let take = rng.gen_range(1..=reducible.len());
            for m in reducible.into_iter().take(take) {
                let Some(c) = pending.terms.remove(&m) else { continue };
                let e = self.reducible(&m).unwrap();
                for (m2, c2) in self.rewrite(&m, e, &c) {
                    pending.accumulate(&self.field, m2, &c2);
                }
            }
        }
    }

    pub fn add(&self, x: &Element<F::Elem>, y: &Element<F::Elem>) -> Element<F::Elem> {
        let mut out = x.clone();
        for (m, c) in &y.terms {
            out.accumulate(&self.field, m.clone(), c);
        }
        out
    }

    pub fn neg(&self, x: &Element<F::Elem>) -> Element<F::Elem> {
        self.scale(x, &self.field.neg(&self.field.one()))
    }

    pub fn sub(&self, x: &Element<F::Elem>, y: &Element<F::Elem>) -> Element<F::Elem> {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &Element<F::Elem>, c: &F::Elem) -> Element<F::Elem> {
        Element::from_terms(&self.field, x.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))))
    }

    pub fn mul(&self, x: &Element<F::Elem>, y: &Element<F::Elem>) -> Element<F::Elem> {
        let mut raw = Element::zero();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                if let Some(m) = m1.mul(m2) {
                    raw.accumulate(&self.field, m, &self.field.mul(c1, c2));
                }
            }
        }
        self.normalize(&raw)
    }

    pub fn pow(&self, x: &Element<F::Elem>, k: u32) -> Element<F::Elem> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `Σ_v v` over all vertices: the unit of the algebra.
    pub fn one(&self) -> Element<F::Elem> {
        let mut out = Element::zero();
        for v in self.graph.vertex_ids() {
            out.accumulate(&self.field, Monomial::vertex(v), &self.field.one());
        }
        out
    }

    /// Equality in the algebra: compares normal forms.
    pub fn eq(&self, x: &Element<F::Elem>, y: &Element<F::Elem>) -> bool {
        self.normalize(x) == self.normalize(y)
    }

    pub fn homogeneous_component(&self, x: &Element<F::Elem>, k: i64) -> Element<F::Elem> {
        Element {
            terms: x
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `σ_a(μν*) = a_μ a_ν^{-1} μν*`.
    pub fn sigma_twist(&self, a: &TwistVector<F::Elem>, x: &Element<F::Elem>) -> Element<F::Elem> {
        let f = &self.field;
        Element::from_terms(
            f,
            x.terms.iter().map(|(m, c)| {
                let s = f
                    .div(&a.a_mu(f, &m.mu), &a.a_mu(f, &m.nu))
                    .expect("twist scalars are units");
                (m.clone(), f.mul(c, &s))
            }),
        )
    }

    /// `μν* ↦ νμ*`, coefficients unchanged.
    pub fn ghost_transpose(&self, x: &Element<F::Elem>) -> Element<F::Elem> {
        self.normalize(&Element::from_terms(
            &self.field,
            x.terms.iter().map(|(m, c)| (m.transpose(), c.clone())),
        ))
    }

    /// A random path of length at most `max_len` ending at `w`, built by
    /// walking backwards along random incoming edges.
    fn random_path_into<R: Rng + ?Sized>(&self, rng: &mut R, w: VertexId, max_len: usize) -> Path {
        let g = self.graph;
        let len = rng.gen_range(0..=max_len);
        let mut edges = Vec::new();
        let mut cur = w;
        for _ in 0..len {
            let ins = g.in_edges(cur);
            let Some(&e) = ins.choose(rng) else { break };
            edges.push(e);
            cur = g.src(e);
        }
        edges.reverse();
        if edges.is_empty() {
            Path::vertex(w)
        } else {
            Path::from_edges(g, edges).expect("walk follows edges")
        }
    }

    pub fn random_monomial<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Monomial {
        let w = VertexId(rng.gen_range(0..self.graph.num_vertices()));
        let mu = self.random_path_into(rng, w, max_len);
        let nu = self.random_path_into(rng, w, max_len);
        Monomial { mu, nu }
    }

    /// A random normalized element with up to `terms` terms.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, terms: usize, max_len: usize) -> Element<F::Elem> {
        let n = rng.gen_range(1..=terms.max(1));
        let raw = Element::from_terms(
            &self.field,
            (0..n).map(|_| (self.random_monomial(rng, max_len), self.field.random_nonzero(rng))),
        );
        self.normalize(&raw)
    }

    pub fn format(&self, x: &Element<F::Elem>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &x.terms {
            let s = self.field.format(c);
            let simple_negative = s
                .strip_prefix('-')
                .filter(|r| !r.contains(['+', '-', 't']))
                .map(str::to_string);
            let (negative, mag) = match simple_negative {
                Some(r) => (true, r),
                None => (false, format_coefficient(&self.field, c)),
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
            out.push_str(&m.display(self.graph).to_string());
        }
        out
    }

    /// Parses sums of terms `[coef] factor factor ...` where a factor is a
    /// path (`v`, `e.f`) or a ghost path (`e.f^*` or `e.f^`). Factors in a
    /// term are multiplied in the algebra.
    pub fn parse(&self, text: &str) -> Result<Element<F::Elem>, AlgebraError> {
        let err = |msg: &str| AlgebraError::Parse(text.to_string(), msg.to_string());
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut depth = 0i32;
        for ch in text.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if !current.trim().is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                } else if !terms.is_empty() || negative {
                    return Err(err("dangling sign"));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if depth != 0 {
            return Err(err("unbalanced parentheses"));
        }
        if current.trim().is_empty() {
            return Err(err("empty term"));
        }
        terms.push((negative, current));

        let f = &self.field;
        let mut total = Element::zero();
        for (neg, term) in terms {
            let tokens: Vec<&str> = term.split_whitespace().collect();
            let mut coef = f.one();
            let mut factors: &[&str] = &tokens;
            if let Some(first) = tokens.first() {
                let is_name = self.graph.vertex(first).is_some() || self.graph.edge(first).is_some();
                let looks_scalar = first.starts_with('(') || (!is_name && f.parse(first).is_ok());
                if looks_scalar {
                    coef = f.parse(strip_parens(first))?;
                    factors = &tokens[1..];
                }
            }
            if neg {
                coef = f.neg(&coef);
            }
            let mut value: Option<Element<F::Elem>> = None;
            for tok in factors {
                let factor = match tok.strip_suffix("^*").or_else(|| tok.strip_suffix('^')) {
                    Some(p) => self.ghost(Path::parse(self.graph, p)?),
                    None => self.real(Path::parse(self.graph, tok)?),
                };
                value = Some(match value {
                    None => factor,
                    Some(acc) => self.mul(&acc, &factor),
                });
            }
            let value = match value {
                Some(v) => v,
                None if tokens.len() == 1 && f.is_zero(&coef) => Element::zero(),
                None => self.one(),
            };
            total = self.add(&total, &self.scale(&value, &coef));
        }
        Ok(total)
    }
}
