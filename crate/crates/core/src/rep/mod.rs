//! Modules over the algebra: Chen modules `V_[x]` and their twists, the
//! extension modules `V^f`, the graded modules `N_vc`, and modules induced
//! from the isotropy group at a boundary path.
//!
//! Infinite-dimensional modules are handled through finite windows of their
//! basis. Actions are computed symbolically and only converting a result to
//! window coordinates can fail, with an explicit out-of-window error.

mod hom;
mod text;
mod verify;

pub use hom::{intertwiner_space, restrict, simplicity_probe, Restriction, SimplicityVerdict, Simplicity};
pub use verify::{
    graded_iso_check, verify_nvc_iso, verify_res_ind, verify_triv_iso, verify_twist_iso, Certificate, Check,
    GradedIsoDecision, TrivCorruption,
};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, Lpa, Monomial, TwistVector};
use crate::field::{companion_matrix, Field, FieldError, Irreducibility, Polynomial};
use crate::graph::{EdgeId, Graph};
use crate::groupoid::orbit;
use crate::linalg::Matrix;
use crate::path::{tail_lags, BoundaryPath, ClosedPath, LagSet, Path, PathError};
use crate::cycles::enumerate_paths_ending_at;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("result leaves the enumerated window: {0}")]
    OutOfWindow(String),
    #[error("module is not graded: {0}")]
    NotGradable(String),
    #[error("invalid module: {0}")]
    Invalid(String),
    #[error("module is not finite-dimensional on this window")]
    NotFiniteDimensional,
    #[error("no stabilization within {0} idempotent steps")]
    NoStabilization(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("basis element does not belong to this module: {0}")]
    ForeignBasis(String),
    #[error("cannot parse `{0}`: {1}")]
    Parse(String, String),
    #[error("modules live over different graphs")]
    GraphMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The module over the isotropy group algebra that gets induced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NSpec<E> {
    /// `K(n)`, for a base with trivial isotropy.
    TrivialK(i64),
    /// `K` with the isotropy generator acting by `a`.
    Ka(E),
    /// `K[t]/(f)` with the generator acting by `t̄`.
    QuotField(Polynomial<E>),
    /// `K[t^n, t^-n](m)` with `n` the cycle length.
    LaurentShift(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind<E> {
    Chen { base: BoundaryPath, twist: Option<TwistVector<E>> },
    ChenExt { cycle: ClosedPath, modulus: Polynomial<E> },
    Nvc { cycle: ClosedPath },
    Induced { base: BoundaryPath, coeff: NSpec<E> },
}

/// A module together with a degree shift: grades of `M(s)` are those of `M`
/// minus `s`, so that `M(s)_d = M_{d+s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec<E> {
    pub kind: ModuleKind<E>,
    pub shift: i64,
}

impl<E> ModuleSpec<E> {
    pub fn new(kind: ModuleKind<E>) -> Self {
        ModuleSpec { kind, shift: 0 }
    }

    pub fn shifted(mut self, s: i64) -> Self {
        self.shift += s;
        self
    }

    pub fn chen(base: BoundaryPath) -> Self {
        Self::new(ModuleKind::Chen { base, twist: None })
    }

    pub fn twisted(base: BoundaryPath, twist: TwistVector<E>) -> Self {
        Self::new(ModuleKind::Chen { base, twist: Some(twist) })
    }

    pub fn chen_ext(cycle: ClosedPath, modulus: Polynomial<E>) -> Self {
        Self::new(ModuleKind::ChenExt { cycle, modulus })
    }

    pub fn nvc(cycle: ClosedPath) -> Self {
        Self::new(ModuleKind::Nvc { cycle })
    }

    pub fn induced(base: BoundaryPath, coeff: NSpec<E>) -> Self {
        Self::new(ModuleKind::Induced { base, coeff })
    }
}

/// A basis vector of some module, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisElement {
    /// A boundary path, tensored with the `coord`-th basis vector of the
    /// coefficient space (always 0 except for `V^f`).
    ChenPath { path: BoundaryPath, coord: usize },
    /// `μν*` with `s(ν) = v`.
    NvcMono(Monomial),
    /// `(y, k, x) ⊗ b_coord`, `k` the normalised lag, `b_coord` a basis
    /// vector of the induced coefficient module (for Laurent coefficients,
    /// `t^{coord·n}`).
    Coset { y: BoundaryPath, k: i64, coord: i64 },
}

/// A finite combination of basis elements with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector<E> {
    terms: BTreeMap<BasisElement, E>,
}

impl<E: Clone + PartialEq> Default for ModuleVector<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Clone + PartialEq> ModuleVector<E> {
    pub fn zero() -> Self {
        ModuleVector { terms: BTreeMap::new() }
    }

    pub fn basis<F: Field<Elem = E>>(field: &F, b: BasisElement) -> Self {
        Self::term(field, b, field.one())
    }

    pub fn term<F: Field<Elem = E>>(field: &F, b: BasisElement, c: E) -> Self {
        let mut out = Self::zero();
        out.add_term(field, b, &c);
        out
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

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &E)> {
        self.terms.iter()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, b: &BasisElement) -> E {
        self.terms.get(b).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, b: BasisElement, c: &E) {
        let sum = match self.terms.get(&b) {
            Some(old) => field.add(old, c),
            None => c.clone(),
        };
        if field.is_zero(&sum) {
            self.terms.remove(&b);
        } else {
            self.terms.insert(b, sum);
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(field, b.clone(), c);
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let mut out = Self::zero();
        for (b, x) in &self.terms {
            out.add_term(field, b.clone(), &field.mul(x, c));
        }
        out
    }

    /// Applies a map given on basis elements, extended linearly.
    pub fn map_linear<F: Field<Elem = E>, Er>(
        &self,
        field: &F,
        mut f: impl FnMut(&BasisElement) -> Result<ModuleVector<E>, Er>,
    ) -> Result<Self, Er> {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out = out.add(field, &f(b)?.scale(field, c));
        }
        Ok(out)
    }
}

/// A finite piece of a module basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    elements: Vec<BasisElement>,
    index: BTreeMap<BasisElement, usize>,
    /// The window is the whole basis.
    pub exact: bool,
    pub bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Window {
    fn new(mut elements: Vec<BasisElement>, exact: bool, bound: usize) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        Window { elements, index, exact, bound }
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn dimension(&self) -> Dimension {
        if self.exact {
            Dimension::Finite(self.elements.len())
        } else {
            Dimension::Infinite
        }
    }
}

/// How the isotropy generator acts on the coefficient coordinates.
#[derive(Clone, Debug)]
enum Coefficients<E> {
    /// One coordinate and no isotropy action.
    Scalar,
    /// A finite-dimensional coefficient space with an invertible generator.
    Matrix { gen: Matrix<E>, inv: Matrix<E> },
    /// Coordinates are exponents `j` of `t^{jn}`.
    Laurent,
}

/// A module spec bound to an algebra and checked.
#[derive(Clone, Debug)]
pub struct Module<'g, F: Field> {
    lpa: Lpa<'g, F>,
    spec: ModuleSpec<F::Elem>,
    /// Base point: `x` for Chen and induced modules, `c^∞` otherwise.
    point: BoundaryPath,
    /// The cycle edge carrying `t̄` in `V^f`.
    marked: Option<EdgeId>,
    coeff: Coefficients<F::Elem>,
}

fn check_modulus<F: Field>(field: &F, f: &Polynomial<F::Elem>) -> Result<(), RepError> {
    let text = f.format(field);
    if !f.is_monic(field) || f.degree().unwrap_or(0) == 0 {
        return Err(RepError::Invalid(format!("modulus {text} must be monic of positive degree")));
    }
    if f.is_t(field) {
        return Err(RepError::Invalid("modulus t is excluded".into()));
    }
    match field.irreducibility(f) {
        Irreducibility::Irreducible => Ok(()),
        Irreducibility::Reducible => Err(RepError::Invalid(format!("modulus {text} is reducible"))),
        Irreducibility::Unknown => Err(RepError::Invalid(format!("cannot decide irreducibility of {text}"))),
    }
}

fn matrix_coefficients<F: Field>(field: &F, gen: Matrix<F::Elem>) -> Coefficients<F::Elem> {
    let inv = gen.inverse(field).expect("isotropy generator is invertible");
    Coefficients::Matrix { gen, inv }
}

fn companion<F: Field>(field: &F, f: &Polynomial<F::Elem>) -> Matrix<F::Elem> {
    let d = f.degree().unwrap_or(0);
    Matrix::from_rows(companion_matrix(field, f), d)
}

impl<'g, F: Field> Module<'g, F> {
    pub fn new(lpa: &Lpa<'g, F>, spec: ModuleSpec<F::Elem>) -> Result<Self, RepError> {
        let graph = lpa.graph();
        let field = lpa.field();
        let (point, marked, coeff) = match &spec.kind {
            ModuleKind::Chen { base, twist } => {
                if let Some(t) = twist {
                    if graph.edge_ids().any(|e| field.is_zero(t.get(e))) {
                        return Err(RepError::Invalid("twist scalars must be nonzero".into()));
                    }
                }
                (base.clone(), None, Coefficients::Scalar)
            }
            ModuleKind::ChenExt { cycle, modulus } => {
                check_modulus(field, modulus)?;
                let root = cycle.root(graph).canonical(graph).0;
                let marked = root.edges()[0];
                (
                    BoundaryPath::periodic(graph, &root),
                    Some(marked),
                    matrix_coefficients(field, companion(field, modulus)),
                )
            }
            ModuleKind::Nvc { cycle } => {
                if cycle.has_exit() {
                    return Err(RepError::Invalid(format!(
                        "closed path {} has an exit",
                        cycle.display(graph)
                    )));
                }
                if !cycle.is_simple() {
                    return Err(RepError::Invalid("closed path must not be a proper power".into()));
                }
                (BoundaryPath::periodic(graph, cycle), None, Coefficients::Scalar)
            }
            ModuleKind::Induced { base, coeff } => {
                let rational = base.is_rational();
                let coeff = match coeff {
                    NSpec::TrivialK(_) if !rational => Coefficients::Scalar,
                    NSpec::TrivialK(_) => {
                        return Err(RepError::Invalid("K(n) needs a base with trivial isotropy".into()))
                    }
                    _ if !rational => {
                        return Err(RepError::Invalid("this coefficient module needs a rational base".into()))
                    }
                    NSpec::Ka(a) => {
                        if field.is_zero(a) {
                            return Err(RepError::Invalid("isotropy scalar must be nonzero".into()));
                        }
                        matrix_coefficients(field, Matrix::from_rows(vec![vec![a.clone()]], 1))
                    }
                    NSpec::QuotField(f) => {
                        check_modulus(field, f)?;
                        matrix_coefficients(field, companion(field, f))
                    }
                    NSpec::LaurentShift(_) => Coefficients::Laurent,
                };
                (base.clone(), None, coeff)
            }
        };
        Ok(Module { lpa: lpa.clone(), spec, point, marked, coeff })
    }

    pub fn lpa(&self) -> &Lpa<'g, F> {
        &self.lpa
    }

    pub fn graph(&self) -> &'g Graph {
        self.lpa.graph()
    }

    pub fn field(&self) -> &F {
        self.lpa.field()
    }

    pub fn spec(&self) -> &ModuleSpec<F::Elem> {
        &self.spec
    }

    /// The base point `x` (or `c^∞`).
    pub fn point(&self) -> &BoundaryPath {
        &self.point
    }

    /// Dimension of the coefficient space, `None` for Laurent coefficients.
    pub fn coefficient_dim(&self) -> Option<usize> {
        match &self.coeff {
            Coefficients::Scalar => Some(1),
            Coefficients::Matrix { gen, .. } => Some(gen.rows()),
            Coefficients::Laurent => None,
        }
    }

    /// Matrix of the isotropy generator on the coefficient space.
    pub fn coefficient_generator(&self) -> Option<Matrix<F::Elem>> {
        match &self.coeff {
            Coefficients::Scalar => Some(Matrix::identity(self.field(), 1)),
            Coefficients::Matrix { gen, .. } => Some(gen.clone()),
            Coefficients::Laurent => None,
        }
    }

    fn cycle_len(&self) -> i64 {
        self.point.cycle().map_or(0, |c| c.len() as i64)
    }

    /// `g^j` applied to coefficient basis vector `i`.
    fn isotropy_power(&self, i: i64, j: i64) -> Vec<(i64, F::Elem)> {
        let field = self.field();
        match &self.coeff {
            Coefficients::Scalar => {
                assert_eq!(j, 0, "trivial isotropy");
                vec![(i, field.one())]
            }
            Coefficients::Laurent => vec![(i + j, field.one())],
            Coefficients::Matrix { gen, inv } => {
                let d = gen.rows();
                let step = if j >= 0 { gen } else { inv };
                let mut v = vec![field.zero(); d];
                v[i as usize] = field.one();
                for _ in 0..j.unsigned_abs() {
                    v = step.apply(field, &v);
                }
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !field.is_zero(c))
                    .map(|(r, c)| (r as i64, c))
                    .collect()
            }
        }
    }

    /// The canonical form of `(y, k, x) ⊗ b_coord`.
    pub fn coset(&self, y: BoundaryPath, k: i64, coord: i64) -> Result<ModuleVector<F::Elem>, RepError> {
        let field = self.field();
        match tail_lags(&y, &self.point) {
            LagSet::Empty => Err(RepError::ForeignBasis(format!(
                "{} is not tail-equivalent to the base",
                y.display(self.graph())
            ))),
            LagSet::Single(k0) if k0 == k => Ok(ModuleVector::basis(field, BasisElement::Coset { y, k, coord })),
            LagSet::Single(k0) => Err(RepError::ForeignBasis(format!(
                "lag {k} is not {k0} for {}",
                y.display(self.graph())
            ))),
            LagSet::Coset { k0, n } => {
                if (k - k0).rem_euclid(n) != 0 {
                    return Err(RepError::ForeignBasis(format!("lag {k} is not in {k0} + {n}Z")));
                }
                let j = (k - k0) / n;
                let mut out = ModuleVector::zero();
                for (c, s) in self.isotropy_power(coord, j) {
                    out.add_term(field, BasisElement::Coset { y: y.clone(), k: k0, coord: c }, &s);
                }
                Ok(out)
            }
        }
    }

    fn check_coord(&self, coord: i64) -> bool {
        match self.coefficient_dim() {
            Some(d) => (0..d as i64).contains(&coord),
            None => true,
        }
    }

    /// Whether `b` is a basis element of this module.
    pub fn owns(&self, b: &BasisElement) -> bool {
        match (&self.spec.kind, b) {
            (ModuleKind::Chen { .. } | ModuleKind::ChenExt { .. }, BasisElement::ChenPath { path, coord }) => {
                !tail_lags(path, &self.point).is_empty() && self.check_coord(*coord as i64)
            }
            (ModuleKind::Nvc { .. }, BasisElement::NvcMono(m)) => {
                m.nu().src() == self.point.source()
                    && self.point.strip_prefix(m.nu()).is_some()
                    && self.lpa.is_normal(&self.lpa.term(m.clone(), self.field().one()))
            }
            (ModuleKind::Induced { .. }, BasisElement::Coset { y, k, coord }) => {
                tail_lags(y, &self.point).representative() == Some(*k) && self.check_coord(*coord)
            }
            _ => false,
        }
    }

    /// `m · b` for a monomial `m` and a basis element `b`.
    pub fn act_basis(&self, m: &Monomial, b: &BasisElement) -> Result<ModuleVector<F::Elem>, RepError> {
        let field = self.field();
        let graph = self.graph();
        if !self.owns(b) {
            return Err(RepError::ForeignBasis(self.format_basis(b)));
        }
        match b {
            BasisElement::ChenPath { path, coord } => {
                let Some(rest) = path.strip_prefix(m.nu()) else {
                    return Ok(ModuleVector::zero());
                };
                let y = rest.prepend(graph, m.mu()).expect("r(mu) = r(nu) = s(rest)");
                match (&self.spec.kind, self.marked) {
                    (ModuleKind::ChenExt { .. }, Some(e1)) => {
                        let s = m.mu().count_edge(e1) as i64 - m.nu().count_edge(e1) as i64;
                        let mut out = ModuleVector::zero();
                        for (c, x) in self.isotropy_power(*coord as i64, s) {
                            out.add_term(field, BasisElement::ChenPath { path: y.clone(), coord: c as usize }, &x);
                        }
                        Ok(out)
                    }
                    (ModuleKind::Chen { twist: Some(a), .. }, _) => {
                        let s = field.div(&a.a_mu(field, m.mu()), &a.a_mu(field, m.nu()))?;
                        Ok(ModuleVector::term(field, BasisElement::ChenPath { path: y, coord: *coord }, s))
                    }
                    _ => Ok(ModuleVector::basis(field, BasisElement::ChenPath { path: y, coord: *coord })),
                }
            }
            BasisElement::NvcMono(n) => {
                let prod = self.lpa.mul(&self.lpa.monomial(m.clone()), &self.lpa.monomial(n.clone()));
                let mut out = ModuleVector::zero();
                for (mono, c) in prod.terms() {
                    out.add_term(field, BasisElement::NvcMono(mono.clone()), c);
                }
                Ok(out)
            }
            BasisElement::Coset { y, k, coord } => {
                let Some(rest) = y.strip_prefix(m.nu()) else {
                    return Ok(ModuleVector::zero());
                };
                let y2 = rest.prepend(graph, m.mu()).expect("r(mu) = r(nu) = s(rest)");
                self.coset(y2, k + m.degree(), *coord)
            }
        }
    }

    /// `elt · vec`.
    pub fn act(
        &self,
        elt: &Element<F::Elem>,
        vec: &ModuleVector<F::Elem>,
    ) -> Result<ModuleVector<F::Elem>, RepError> {
        if !self.lpa.belongs(elt) {
            return Err(AlgebraError::ForeignElement.into());
        }
        let field = self.field();
        let mut out = ModuleVector::zero();
        for (m, a) in elt.terms() {
            let part = vec.map_linear(field, |b| self.act_basis(m, b))?;
            out = out.add(field, &part.scale(field, a));
        }
        Ok(out)
    }

    pub fn is_gradable(&self) -> bool {
        match &self.spec.kind {
            ModuleKind::Chen { base, .. } => !base.is_rational(),
            ModuleKind::ChenExt { .. } => false,
            ModuleKind::Nvc { .. } => true,
            ModuleKind::Induced { coeff, .. } => matches!(coeff, NSpec::TrivialK(_) | NSpec::LaurentShift(_)),
        }
    }

    /// Degree of a basis element.
    pub fn grade_of(&self, b: &BasisElement) -> Result<i64, RepError> {
        if !self.owns(b) {
            return Err(RepError::ForeignBasis(self.format_basis(b)));
        }
        let unshifted = match (&self.spec.kind, b) {
            (ModuleKind::Chen { base, .. }, BasisElement::ChenPath { path, .. }) => match tail_lags(path, base) {
                LagSet::Single(k) => k,
                _ => {
                    return Err(RepError::NotGradable(format!(
                        "Chen module at the rational path {}",
                        base.display(self.graph())
                    )))
                }
            },
            (ModuleKind::ChenExt { .. }, _) => {
                return Err(RepError::NotGradable("extension modules at a cycle".into()))
            }
            (ModuleKind::Nvc { .. }, BasisElement::NvcMono(m)) => m.degree(),
            (ModuleKind::Induced { coeff, .. }, BasisElement::Coset { k, coord, .. }) => match coeff {
                NSpec::TrivialK(n) => k - n,
                NSpec::LaurentShift(m) => k + coord * self.cycle_len() - m,
                _ => return Err(RepError::NotGradable("ungraded isotropy coefficients".into())),
            },
            _ => unreachable!("ownership checked"),
        };
        Ok(unshifted - self.spec.shift)
    }

    /// The distinct degrees occurring in `vec`.
    pub fn degrees(&self, vec: &ModuleVector<F::Elem>) -> Result<Vec<i64>, RepError> {
        let mut out: Vec<i64> = vec.terms().map(|(b, _)| self.grade_of(b)).collect::<Result<_, _>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Basis elements whose paths have canonical prefixes of at most `bound`
    /// edges (and Laurent exponents `|j| <= bound`).
    pub fn basis(&self, bound: usize) -> Result<Window, RepError> {
        let graph = self.graph();
        match &self.spec.kind {
            ModuleKind::Chen { .. } | ModuleKind::ChenExt { .. } => {
                let o = orbit(graph, &self.point, bound);
                let d = self.coefficient_dim().expect("finite coefficients");
                let elements = o
                    .members
                    .into_iter()
                    .flat_map(|p| (0..d).map(move |coord| BasisElement::ChenPath { path: p.clone(), coord }))
                    .collect();
                Ok(Window::new(elements, o.exact, bound))
            }
            ModuleKind::Nvc { .. } => {
                let v = self.point.source();
                let mut elements = Vec::new();
                for l in 0..=bound {
                    let nu = self.point.initial_segment(graph, l).expect("infinite path");
                    for mu in enumerate_paths_ending_at(graph, nu.rng(), bound).paths {
                        if mu.len() > bound || (l > 0 && mu.last_edge() == nu.last_edge()) {
                            continue;
                        }
                        elements.push(BasisElement::NvcMono(Monomial::new(graph, mu, nu.clone())?));
                    }
                }
                debug_assert!(elements.iter().all(|b| matches!(b, BasisElement::NvcMono(m) if m.nu().src() == v)));
                Ok(Window::new(elements, false, bound))
            }
            ModuleKind::Induced { .. } => {
                let o = orbit(graph, &self.point, bound);
                let coords: Vec<i64> = match self.coefficient_dim() {
                    Some(d) => (0..d as i64).collect(),
                    None => (-(bound as i64)..=bound as i64).collect(),
                };
                let mut elements = Vec::new();
                for y in o.members {
                    let k = tail_lags(&y, &self.point).representative().expect("orbit member");
                    for &coord in &coords {
                        elements.push(BasisElement::Coset { y: y.clone(), k, coord });
                    }
                }
                Ok(Window::new(elements, o.exact && self.coefficient_dim().is_some(), bound))
            }
        }
    }

    /// The algebra generators `v`, `e`, `e*` as monomials.
    pub fn generators(&self) -> Vec<Monomial> {
        let graph = self.graph();
        let mut out: Vec<Monomial> = graph.vertex_ids().map(Monomial::vertex).collect();
        for e in graph.edge_ids() {
            out.push(Monomial::real(Path::edge(graph, e)));
        }
        for e in graph.edge_ids() {
            out.push(Monomial::ghost(Path::edge(graph, e)));
        }
        out
    }

    /// Coordinates of `vec` in the window basis.
    pub fn coords(&self, w: &Window, vec: &ModuleVector<F::Elem>) -> Result<Vec<F::Elem>, RepError> {
        let field = self.field();
        let mut out = vec![field.zero(); w.len()];
        for (b, c) in vec.terms() {
            let i = w
                .position(b)
                .ok_or_else(|| RepError::OutOfWindow(self.format_basis(b)))?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn from_coords(&self, w: &Window, coords: &[F::Elem]) -> ModuleVector<F::Elem> {
        let field = self.field();
        let mut out = ModuleVector::zero();
        for (b, c) in w.elements().iter().zip(coords) {
            out.add_term(field, b.clone(), c);
        }
        out
    }

    /// Matrix of `m` on the window; fails if the window is not closed under `m`.
    pub fn matrix(&self, m: &Monomial, w: &Window) -> Result<Matrix<F::Elem>, RepError> {
        let field = self.field();
        let cols: Vec<Vec<F::Elem>> = w
            .elements()
            .iter()
            .map(|b| self.coords(w, &self.act_basis(m, b)?))
            .collect::<Result<_, _>>()?;
        Ok(Matrix::from_columns(field, &cols, w.len()))
    }

    /// Matrix of an algebra element on the window.
    pub fn element_matrix(&self, x: &Element<F::Elem>, w: &Window) -> Result<Matrix<F::Elem>, RepError> {
        let field = self.field();
        let mut acc = Matrix::zeros(field, w.len(), w.len());
        for (m, c) in x.terms() {
            acc = acc.add(field, &self.matrix(m, w)?.scale(field, c));
        }
        Ok(acc)
    }
}

/// Decomposes `y = μp`, `x = νp` with `|μ| - |ν| = k`, choosing the
/// shortest such pair.
pub fn decompose(graph: &Graph, y: &BoundaryPath, x: &BoundaryPath, k: i64) -> Option<(Path, Path)> {
    if !tail_lags(y, x).contains(k) {
        return None;
    }
    let n = x.cycle().map_or(0, |c| c.len()) as i64;
    let limit = (y.prefix_len() + x.prefix_len()) as i64 + k.abs() + 2 * n + 1;
    for b in 0..=limit {
        let a = b + k;
        if a < 0 {
            continue;
        }
        let (Some(mu), Some(nu)) = (y.initial_segment(graph, a as usize), x.initial_segment(graph, b as usize)) else {
            continue;
        };
        if y.strip_prefix(&mu).is_some() && y.strip_prefix(&mu) == x.strip_prefix(&nu) {
            return Some((mu, nu));
        }
    }
    None
}

#[cfg(test)]
mod tests;
