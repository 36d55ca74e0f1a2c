//! The boundary-path groupoid: elements `(x, k, y)` with `x ~_k y`,
//! compact open bisections `Z((μ,ν) \ F)`, isotropy and orbits.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::Monomial;
use crate::cycles::{enumerate_paths_ending_at, on_cycle, reachability, scc_ids};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::path::{tail_lags, BoundaryPath, ClosedPath, Path};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("boundary paths are not tail-equivalent with lag {0}")]
    NotEquivalent(i64),
    #[error("elements are not composable")]
    NotComposable,
    #[error("bisection needs r(mu) = r(nu)")]
    RangeMismatch,
    #[error("excluded edge does not leave r(mu)")]
    BadExclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupoidElement {
    x: BoundaryPath,
    k: i64,
    y: BoundaryPath,
}

impl GroupoidElement {
    pub fn new(x: BoundaryPath, k: i64, y: BoundaryPath) -> Result<Self, GroupoidError> {
        if !tail_lags(&x, &y).contains(k) {
            return Err(GroupoidError::NotEquivalent(k));
        }
        Ok(GroupoidElement { x, k, y })
    }

    pub fn unit(x: BoundaryPath) -> Self {
        GroupoidElement { y: x.clone(), x, k: 0 }
    }

    pub fn x(&self) -> &BoundaryPath {
        &self.x
    }

    pub fn y(&self) -> &BoundaryPath {
        &self.y
    }

    pub fn degree(&self) -> i64 {
        self.k
    }

    /// `c(x, k, y) = x`.
    pub fn codomain(&self) -> BoundaryPath {
        self.x.clone()
    }

    /// `d(x, k, y) = y`.
    pub fn domain(&self) -> BoundaryPath {
        self.y.clone()
    }

    pub fn inverse(&self) -> Self {
        GroupoidElement { x: self.y.clone(), k: -self.k, y: self.x.clone() }
    }

    pub fn compose(&self, other: &Self) -> Result<Self, GroupoidError> {
        if self.y != other.x {
            return Err(GroupoidError::NotComposable);
        }
        Ok(GroupoidElement { x: self.x.clone(), k: self.k + other.k, y: other.y.clone() })
    }
}

/// `Z((μ,ν) \ F)`: elements `(μp, |μ|-|ν|, νp)` with `p` not starting in `F`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bisection {
    mu: Path,
    nu: Path,
    excluded: BTreeSet<EdgeId>,
}

impl Bisection {
    pub fn new(graph: &Graph, mu: Path, nu: Path, excluded: BTreeSet<EdgeId>) -> Result<Self, GroupoidError> {
        if mu.rng() != nu.rng() {
            return Err(GroupoidError::RangeMismatch);
        }
        if excluded.iter().any(|&e| graph.src(e) != mu.rng()) {
            return Err(GroupoidError::BadExclusion);
        }
        Ok(Bisection { mu, nu, excluded })
    }

    /// The bisection `Z(μ,ν)` matching `μν*`.
    pub fn of_monomial(m: &Monomial) -> Self {
        Bisection { mu: m.mu().clone(), nu: m.nu().clone(), excluded: BTreeSet::new() }
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn nu(&self) -> &Path {
        &self.nu
    }

    pub fn excluded(&self) -> &BTreeSet<EdgeId> {
        &self.excluded
    }

    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    fn allowed(&self, p: &BoundaryPath) -> bool {
        p.edge_at(0).is_none_or(|e| !self.excluded.contains(&e))
    }

    pub fn contains(&self, g: &GroupoidElement) -> bool {
        if g.k != self.degree() {
            return false;
        }
        match (g.x.strip_prefix(&self.mu), g.y.strip_prefix(&self.nu)) {
            (Some(p), Some(q)) => p == q && self.allowed(&p),
            _ => false,
        }
    }

    /// The unique element of the bisection with codomain `x`, if any.
    pub fn through_codomain(&self, graph: &Graph, x: &BoundaryPath) -> Option<GroupoidElement> {
        let p = x.strip_prefix(&self.mu)?;
        if !self.allowed(&p) {
            return None;
        }
        let y = p.prepend(graph, &self.nu)?;
        Some(GroupoidElement { x: x.clone(), k: self.degree(), y })
    }

    /// The unique element of the bisection with domain `y`, if any.
    pub fn through_domain(&self, graph: &Graph, y: &BoundaryPath) -> Option<GroupoidElement> {
        let p = y.strip_prefix(&self.nu)?;
        if !self.allowed(&p) {
            return None;
        }
        let x = p.prepend(graph, &self.mu)?;
        Some(GroupoidElement { x, k: self.degree(), y: y.clone() })
    }

    /// Points `(μp, |μ|-|ν|, νp)` for `p` in a window of boundary paths.
    pub fn points(&self, graph: &Graph, window: &BoundaryWindow) -> Vec<GroupoidElement> {
        window
            .starting_at(self.mu.rng())
            .filter(|p| self.allowed(p))
            .filter_map(|p| {
                Some(GroupoidElement {
                    x: p.prepend(graph, &self.mu)?,
                    k: self.degree(),
                    y: p.prepend(graph, &self.nu)?,
                })
            })
            .collect()
    }

    pub fn display(&self, graph: &Graph) -> String {
        let mut s = format!("Z({}, {})", self.mu.display(graph), self.nu.display(graph));
        if !self.excluded.is_empty() {
            let names: Vec<&str> = self.excluded.iter().map(|&e| graph.edge_name(e)).collect();
            s = format!("{s} \\ {{{}}}", names.join(", "));
        }
        s
    }
}

/// `B1·B2` via prefix matching; empty or a single bisection.
pub fn bisection_product(b1: &Bisection, b2: &Bisection) -> Vec<Bisection> {
    // Case alpha = nu gamma.
    if let Some(gamma) = b2.mu.strip_prefix(&b1.nu) {
        return match gamma.first_edge() {
            None => vec![Bisection {
                mu: b1.mu.clone(),
                nu: b2.nu.clone(),
                excluded: b1.excluded.union(&b2.excluded).copied().collect(),
            }],
            Some(e) if b1.excluded.contains(&e) => vec![],
            Some(_) => vec![Bisection {
                mu: b1.mu.concat(&gamma).expect("gamma starts at r(mu)"),
                nu: b2.nu.clone(),
                excluded: b2.excluded.clone(),
            }],
        };
    }
    // Case nu = alpha gamma with gamma nonempty.
    if let Some(gamma) = b1.nu.strip_prefix(&b2.mu) {
        let e = gamma.first_edge().expect("vertex case handled above");
        if b2.excluded.contains(&e) {
            return vec![];
        }
        return vec![Bisection {
            mu: b1.mu.clone(),
            nu: b2.nu.concat(&gamma).expect("gamma starts at r(beta)"),
            excluded: b1.excluded.clone(),
        }];
    }
    vec![]
}

/// A finite set of boundary paths used for pointwise checks: finite
/// prefixes up to a length bound, followed by a sink or by a closed path
/// from a bounded list.
#[derive(Clone, Debug)]
pub struct BoundaryWindow {
    by_source: Vec<Vec<BoundaryPath>>,
}

impl BoundaryWindow {
    pub fn new(graph: &Graph, prefix_len: usize, cycle_len: usize) -> Self {
        let closed = primitive_closed_paths(graph, cycle_len);
        let mut by_source = vec![BTreeSet::new(); graph.num_vertices()];
        for v in graph.vertex_ids() {
            for p in forward_paths(graph, v, prefix_len) {
                if graph.is_sink(p.rng()) {
                    by_source[v.0].insert(BoundaryPath::SinkPath(p.clone()));
                }
                for c in closed.iter().filter(|c| c.base() == p.rng()) {
                    by_source[v.0].insert(BoundaryPath::lasso(graph, p.clone(), c).expect("based at r(p)"));
                }
            }
        }
        BoundaryWindow { by_source: by_source.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    pub fn starting_at(&self, v: VertexId) -> impl Iterator<Item = &BoundaryPath> {
        self.by_source[v.0].iter()
    }

    pub fn all(&self) -> impl Iterator<Item = &BoundaryPath> {
        self.by_source.iter().flatten()
    }
}

/// All paths starting at `v` with at most `len` edges.
pub fn forward_paths(graph: &Graph, v: VertexId, len: usize) -> Vec<Path> {
    let mut out = vec![Path::vertex(v)];
    let mut frontier = vec![Path::vertex(v)];
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in graph.out_edges(p.rng()) {
                let mut q = p.clone();
                q.push(graph, e);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every rotation of every primitive closed path with at most `len` edges.
pub fn primitive_closed_paths(graph: &Graph, len: usize) -> Vec<ClosedPath> {
    let mut out = BTreeSet::new();
    for v in graph.vertex_ids() {
        for p in forward_paths(graph, v, len) {
            if p.is_closed() {
                let c = ClosedPath::new(graph, &p).expect("closed");
                if c.root(graph) == c {
                    out.insert(c);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Checks that the algebra product of two monomials matches the bisection
/// product, using the given monomial product rule.
///
/// Two checks run: the prefix calculus result must equal the bisection of
/// the product monomial, and on a window of boundary points the product
/// set `UV` must agree with that bisection, computed from membership and
/// prefix stripping only.
pub fn pi_consistency_with(
    graph: &Graph,
    window: &BoundaryWindow,
    m1: &Monomial,
    m2: &Monomial,
    rule: impl Fn(&Monomial, &Monomial) -> Option<Monomial>,
) -> bool {
    let u = Bisection::of_monomial(m1);
    let v = Bisection::of_monomial(m2);
    let product = rule(m1, m2);
    let expected: Vec<Bisection> = product.iter().map(Bisection::of_monomial).collect();
    if bisection_product(&u, &v) != expected {
        return false;
    }
    // Every composable pair in U x V lands in W.
    for g in u.points(graph, window) {
        if let Some(h) = v.through_codomain(graph, &g.y) {
            let gh = g.compose(&h).expect("d(g) = c(h)");
            if !expected.iter().any(|w| w.contains(&gh)) {
                return false;
            }
        }
    }
    // Every point of W factors through U and V.
    for w in &expected {
        for pt in w.points(graph, window) {
            let Some(g) = u.through_codomain(graph, &pt.x) else {
                return false;
            };
            let h = GroupoidElement { x: g.y.clone(), k: pt.k - g.k, y: pt.y.clone() };
            if !v.contains(&h) {
                return false;
            }
        }
    }
    true
}

pub fn pi_consistency(graph: &Graph, window: &BoundaryWindow, m1: &Monomial, m2: &Monomial) -> bool {
    pi_consistency_with(graph, window, m1, m2, Monomial::mul)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isotropy {
    Trivial,
    /// Generated by `(x, n, x)` with `n` the length of the cycle.
    InfiniteCyclic { lag: i64, cycle: ClosedPath },
}

pub fn isotropy(x: &BoundaryPath) -> Isotropy {
    match x {
        BoundaryPath::SinkPath(_) => Isotropy::Trivial,
        BoundaryPath::Lasso { cycle, .. } => Isotropy::InfiniteCyclic { lag: cycle.len() as i64, cycle: cycle.clone() },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<BoundaryPath>,
    /// The whole class was listed.
    pub exact: bool,
}

/// Lists the tail-equivalence class of `x`. Sink classes are exact when no
/// cycle reaches the sink; lasso classes are exact when the cycle is the
/// only closed path among the vertices that reach it. Inexact classes list
/// members whose canonical prefix has at most `bound` edges.
pub fn orbit(graph: &Graph, x: &BoundaryPath, bound: usize) -> Orbit {
    match x {
        BoundaryPath::SinkPath(p) => {
            let list = enumerate_paths_ending_at(graph, p.rng(), bound);
            Orbit {
                members: list.paths.into_iter().map(BoundaryPath::SinkPath).collect(),
                exact: list.exact,
            }
        }
        BoundaryPath::Lasso { cycle, .. } => {
            let n = cycle.len();
            let scc = scc_ids(graph);
            let reach = reachability(graph);
            let cyc = on_cycle(graph);
            let base = cycle.base();
            let same = |v: VertexId| scc[v.0] == scc[base.0];
            let internal = graph.edge_ids().filter(|&e| same(graph.src(e)) && same(graph.rng(e))).count();
            let size = graph.vertex_ids().filter(|&v| same(v)).count();
            let fed = graph.vertex_ids().any(|v| !same(v) && cyc[v.0] && reach[v.0][base.0]);
            let exact = internal == n && size == n && !fed;
            let mut members = BTreeSet::new();
            for j in 0..n {
                let c_j = cycle.rotation(graph, j);
                let target = cycle.vertices()[j];
                members.insert(BoundaryPath::lasso(graph, Path::vertex(target), &c_j).unwrap());
                for &e in graph.in_edges(target) {
                    if e == cycle.entering_edge(j) {
                        continue;
                    }
                    let limit = if exact { graph.num_vertices() } else { bound.saturating_sub(1) };
                    for beta in enumerate_paths_ending_at(graph, graph.src(e), limit).paths {
                        if !exact && beta.len() + 1 > bound {
                            continue;
                        }
                        let mut prefix = beta;
                        prefix.push(graph, e);
                        members.insert(BoundaryPath::lasso(graph, prefix, &c_j).unwrap());
                    }
                }
            }
            Orbit { members: members.into_iter().collect(), exact }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomials_up_to;
    use crate::graph::fixtures;

    fn bp(g: &Graph, s: &str) -> BoundaryPath {
        BoundaryPath::parse(g, s).unwrap()
    }

    fn p(g: &Graph, s: &str) -> Path {
        Path::parse(g, s).unwrap()
    }

    fn z(g: &Graph, mu: &str, nu: &str) -> Bisection {
        Bisection::new(g, p(g, mu), p(g, nu), BTreeSet::new()).unwrap()
    }

    #[test]
    fn composition_adds_lags() {
        let g = fixtures::r1();
        let x = bp(&g, "(e)");
        let a = GroupoidElement::new(x.clone(), 1, x.clone()).unwrap();
        let b = GroupoidElement::new(x.clone(), 2, x.clone()).unwrap();
        assert_eq!(a.compose(&b).unwrap().degree(), 3);
        assert_eq!(a.compose(&a.inverse()).unwrap(), GroupoidElement::unit(x));
        let g = fixtures::a2();
        let f = GroupoidElement::new(bp(&g, "f"), 1, bp(&g, "v")).unwrap();
        assert_eq!(f.compose(&f), Err(GroupoidError::NotComposable));
        assert!(GroupoidElement::new(bp(&g, "f"), 0, bp(&g, "v")).is_err());
    }

    #[test]
    fn membership() {
        let g = fixtures::a2();
        let elt = GroupoidElement::new(bp(&g, "f"), 1, bp(&g, "v")).unwrap();
        assert!(z(&g, "f", "v").contains(&elt));
        let g = fixtures::r1();
        let x = bp(&g, "(e)");
        let unit = GroupoidElement::unit(x);
        assert!(z(&g, "e", "e").contains(&unit));
        let e = g.edge("e").unwrap();
        let excl = Bisection::new(&g, p(&g, "v"), p(&g, "v"), [e].into()).unwrap();
        assert!(!excl.contains(&unit));
    }

    #[test]
    fn products() {
        let g = fixtures::r1();
        assert_eq!(bisection_product(&z(&g, "e", "v"), &z(&g, "v", "e")), vec![z(&g, "e", "e")]);
        assert_eq!(bisection_product(&z(&g, "v", "e"), &z(&g, "e", "v")), vec![z(&g, "v", "v")]);
        let g = fixtures::a2();
        assert!(bisection_product(&z(&g, "f", "v"), &z(&g, "f", "v")).is_empty());
    }

    #[test]
    fn exclusion_kills_product() {
        let g = fixtures::rose2();
        let e = g.edge("e").unwrap();
        let b1 = Bisection::new(&g, p(&g, "v"), p(&g, "v"), [e].into()).unwrap();
        assert!(bisection_product(&b1, &z(&g, "e", "e")).is_empty());
        let merged = bisection_product(&b1, &z(&g, "v", "v"));
        assert_eq!(merged[0].excluded().len(), 1);
    }

    #[test]
    fn pi_consistency_small_graphs() {
        for (_, g) in [("a2", fixtures::a2()), ("r1", fixtures::r1())] {
            let window = BoundaryWindow::new(&g, 2, 2);
            let monos = monomials_up_to(&g, 2);
            for a in &monos {
                for b in &monos {
                    assert!(pi_consistency(&g, &window, a, b));
                }
            }
        }
    }

    #[test]
    fn corrupted_rule_is_caught() {
        let g = fixtures::r1();
        let window = BoundaryWindow::new(&g, 2, 2);
        // Forgets the overhang gamma in the second case.
        let bad = |a: &Monomial, b: &Monomial| -> Option<Monomial> {
            if b.mu().strip_prefix(a.nu()).is_some() {
                return a.mul(b);
            }
            a.nu().strip_prefix(b.mu())?;
            Monomial::new(&g, a.mu().clone(), b.nu().clone()).ok()
        };
        let monos = monomials_up_to(&g, 2);
        let failures = monos
            .iter()
            .flat_map(|a| monos.iter().map(move |b| (a, b)))
            .filter(|(a, b)| !pi_consistency_with(&g, &window, a, b, bad))
            .count();
        assert!(failures > 0);
    }

    #[test]
    fn isotropy_and_orbits() {
        let g = fixtures::a2();
        let v = bp(&g, "v");
        assert_eq!(isotropy(&v), Isotropy::Trivial);
        let o = orbit(&g, &v, 5);
        assert!(o.exact);
        assert_eq!(o.members, vec![bp(&g, "v"), bp(&g, "f")]);

        let g = fixtures::r1();
        let x = bp(&g, "(e)");
        assert!(matches!(isotropy(&x), Isotropy::InfiniteCyclic { lag: 1, .. }));
        let o = orbit(&g, &x, 5);
        assert!(o.exact);
        assert_eq!(o.members, vec![x]);

        let g = fixtures::toeplitz();
        let x = bp(&g, "(e)");
        let o = orbit(&g, &x, 5);
        assert!(o.exact);
        assert_eq!(o.members, vec![x.clone()]);
        assert_eq!(tail_lags(&x, &x), crate::path::LagSet::coset(0, 1));

        let g = fixtures::lasso();
        let o = orbit(&g, &bp(&g, "(e)"), 5);
        assert!(o.exact);
        assert_eq!(o.members.len(), 2);

        let g = fixtures::rose2();
        let o = orbit(&g, &bp(&g, "(e)"), 3);
        assert!(!o.exact);
        assert!(o.members.len() > 1);
    }

    #[test]
    fn isotropy_lags_match_self_lags() {
        for (_, g) in fixtures::suite() {
            let window = BoundaryWindow::new(&g, 2, 3);
            for x in window.all() {
                let lags = tail_lags(x, x);
                match isotropy(x) {
                    Isotropy::Trivial => assert_eq!(lags, crate::path::LagSet::Single(0)),
                    Isotropy::InfiniteCyclic { lag, .. } => assert_eq!(lags, crate::path::LagSet::coset(0, lag)),
                }
            }
        }
    }
}
