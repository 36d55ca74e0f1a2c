//! Finite paths, closed paths, boundary paths and tail-equivalence lags.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("edges `{0}` and `{1}` are not composable")]
    NotComposable(String, String),
    #[error("cannot concatenate: range `{0}` differs from source `{1}`")]
    MismatchedEndpoints(String, String),
    #[error("closed path required, got a path from `{0}` to `{1}`")]
    NotClosed(String, String),
    #[error("closed path must have positive length")]
    EmptyClosedPath,
    #[error("finite boundary path must end at a sink, `{0}` is regular")]
    NotAtSink(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("malformed path text `{0}`")]
    Malformed(String),
}

/// A finite path `e_1 ... e_n`, or a vertex when `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    src: VertexId,
    rng: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            src: v,
            rng: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(graph: &Graph, e: EdgeId) -> Path {
        Path {
            src: graph.src(e),
            rng: graph.rng(e),
            edges: vec![e],
        }
    }

    /// Builds a path of positive length, checking `r(e_i) = s(e_{i+1})`.
    pub fn from_edges(graph: &Graph, edges: Vec<EdgeId>) -> Result<Path, PathError> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(PathError::Malformed("empty edge list".into())),
        };
        for w in edges.windows(2) {
            if graph.rng(w[0]) != graph.src(w[1]) {
                return Err(PathError::NotComposable(
                    graph.edge_name(w[0]).into(),
                    graph.edge_name(w[1]).into(),
                ));
            }
        }
        Ok(Path {
            src: graph.src(first),
            rng: graph.rng(last),
            edges,
        })
    }

    /// Parses `v` (a vertex) or `e1.e2.e3`.
    pub fn parse(graph: &Graph, text: &str) -> Result<Path, PathError> {
        let text = text.trim();
        if let Some(v) = graph.vertex(text) {
            return Ok(Path::vertex(v));
        }
        let edges = text
            .split('.')
            .map(|name| {
                graph
                    .edge(name.trim())
                    .ok_or_else(|| PathError::UnknownName(name.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(graph, edges)
    }

    pub fn src(&self) -> VertexId {
        self.src
    }

    pub fn rng(&self) -> VertexId {
        self.rng
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first_edge(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub fn is_closed(&self) -> bool {
        self.src == self.rng && !self.edges.is_empty()
    }

    /// `pq`, defined when `r(p) = s(q)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.rng != other.src {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            src: self.src,
            rng: other.rng,
            edges,
        })
    }

    pub fn try_concat(&self, graph: &Graph, other: &Path) -> Result<Path, PathError> {
        self.concat(other).ok_or_else(|| {
            PathError::MismatchedEndpoints(
                graph.vertex_name(self.rng).into(),
                graph.vertex_name(other.src).into(),
            )
        })
    }

    pub fn push(&mut self, graph: &Graph, e: EdgeId) {
        debug_assert_eq!(self.rng, graph.src(e));
        self.edges.push(e);
        self.rng = graph.rng(e);
    }

    /// Removes the last edge; `r` becomes the source of that edge.
    pub fn pop(&mut self, graph: &Graph) -> Option<EdgeId> {
        let e = self.edges.pop()?;
        self.rng = graph.src(e);
        Some(e)
    }

    /// If `prefix` is an initial subpath of `self`, returns the remainder `q`
    /// with `self = prefix q`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.src != self.src || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            src: prefix.rng,
            rng: self.rng,
            edges: self.edges[prefix.len()..].to_vec(),
        })
    }

    /// The initial subpath with `len` edges.
    pub fn truncate(&self, graph: &Graph, len: usize) -> Path {
        if len == 0 {
            return Path::vertex(self.src);
        }
        let edges = self.edges[..len].to_vec();
        let rng = graph.rng(edges[len - 1]);
        Path {
            src: self.src,
            rng,
            edges,
        }
    }

    /// Counts occurrences of `e` along the path.
    pub fn count_edge(&self, e: EdgeId) -> usize {
        self.edges.iter().filter(|&&x| x == e).count()
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph }
    }
}

/// Orders paths by length, then lexicographically by edge name, then by vertex.
pub fn shortlex(a: &Path, b: &Path) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.edges.cmp(&b.edges))
        .then_with(|| a.src.cmp(&b.src))
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            return f.write_str(self.graph.vertex_name(self.path.src));
        }
        let names: Vec<&str> = self
            .path
            .edges
            .iter()
            .map(|&e| self.graph.edge_name(e))
            .collect();
        f.write_str(&names.join("."))
    }
}

/// Smallest `d` with `word = w^{n/d}` for the prefix `w` of length `d`.
fn primitive_period(word: &[EdgeId]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| word[i] == word[i - d]))
        .unwrap_or(n)
}

/// Returns `(rep, r)` with `rep` the lexicographically least rotation and
/// `word = rep[r..] ++ rep[..r]`.
fn least_rotation(word: &[EdgeId]) -> (Vec<EdgeId>, usize) {
    let n = word.len();
    let rotate = |s: usize| -> Vec<EdgeId> { word[s..].iter().chain(&word[..s]).copied().collect() };
    let mut best_shift = 0;
    let mut best = rotate(0);
    for s in 1..n {
        let cand = rotate(s);
        if cand < best {
            best = cand;
            best_shift = s;
        }
    }
    // word rotated by best_shift is rep, so word = rep rotated by n - best_shift.
    (best, (n - best_shift) % n)
}

/// A closed path with its structural flags.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedPath {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
    simple: bool,
    cycle: bool,
    has_exit: bool,
}

impl ClosedPath {
    pub fn new(graph: &Graph, path: &Path) -> Result<ClosedPath, PathError> {
        if path.is_vertex() {
            return Err(PathError::EmptyClosedPath);
        }
        if !path.is_closed() {
            return Err(PathError::NotClosed(
                graph.vertex_name(path.src()).into(),
                graph.vertex_name(path.rng()).into(),
            ));
        }
        let edges = path.edges().to_vec();
        let vertices: Vec<VertexId> = edges.iter().map(|&e| graph.src(e)).collect();
        let simple = primitive_period(&edges) == edges.len();
        let mut seen = vertices.clone();
        seen.sort();
        seen.dedup();
        let cycle = seen.len() == vertices.len();
        let has_exit = edges
            .iter()
            .any(|&e| graph.out_edges(graph.src(e)).iter().any(|&x| x != e));
        Ok(ClosedPath {
            edges,
            vertices,
            simple,
            cycle,
            has_exit,
        })
    }

    pub fn parse(graph: &Graph, text: &str) -> Result<ClosedPath, PathError> {
        ClosedPath::new(graph, &Path::parse(graph, text)?)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// `vertices()[i] = s(c_i)`.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn base(&self) -> VertexId {
        self.vertices[0]
    }

    /// Not a proper power `d^k`, `k >= 2`.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// No repeated vertex.
    pub fn is_cycle(&self) -> bool {
        self.cycle
    }

    pub fn has_exit(&self) -> bool {
        self.has_exit
    }

    pub fn as_path(&self, graph: &Graph) -> Path {
        Path::from_edges(graph, self.edges.clone()).expect("closed path is a path")
    }

    /// The `i`-th rotation `c_i = e_{i+1} ... e_n e_1 ... e_i`.
    pub fn rotation(&self, graph: &Graph, i: usize) -> ClosedPath {
        let i = i % self.len();
        let word: Vec<EdgeId> = self.edges[i..].iter().chain(&self.edges[..i]).copied().collect();
        ClosedPath::new(graph, &Path::from_edges(graph, word).unwrap()).unwrap()
    }

    /// The simple closed path `d` with `self = d^k`.
    pub fn root(&self, graph: &Graph) -> ClosedPath {
        let d = primitive_period(&self.edges);
        let path = Path::from_edges(graph, self.edges[..d].to_vec()).unwrap();
        ClosedPath::new(graph, &path).unwrap()
    }

    /// Lexicographically least rotation together with the index `r` such
    /// that `self` is rotation `r` of it.
    pub fn canonical(&self, graph: &Graph) -> (ClosedPath, usize) {
        let (rep, r) = least_rotation(&self.edges);
        let path = Path::from_edges(graph, rep).unwrap();
        (ClosedPath::new(graph, &path).unwrap(), r)
    }

    pub fn is_canonical(&self) -> bool {
        least_rotation(&self.edges).1 == 0
    }

    /// Edge of the closed path entering `s(c_i)`.
    pub fn entering_edge(&self, i: usize) -> EdgeId {
        let n = self.len();
        self.edges[(i + n - 1) % n]
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> ClosedPathDisplay<'a> {
        ClosedPathDisplay { cp: self, graph }
    }
}

pub struct ClosedPathDisplay<'a> {
    cp: &'a ClosedPath,
    graph: &'a Graph,
}

impl fmt::Display for ClosedPathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.cp.edges.iter().map(|&e| self.graph.edge_name(e)).collect();
        f.write_str(&names.join("."))
    }
}

/// A boundary path of a finite graph: a finite path ending at a sink, or an
/// eventually periodic infinite path `α c_i^∞`.
///
/// Lassos are kept canonical: `cycle` is the least rotation of a simple
/// closed path and the last edge of `prefix` is never the cycle edge
/// entering `s(c_i)`.  Two canonical values are equal iff they denote the
/// same infinite path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryPath {
    SinkPath(Path),
    Lasso {
        prefix: Path,
        cycle: ClosedPath,
        rotation: usize,
    },
}

impl BoundaryPath {
    pub fn sink_path(graph: &Graph, path: Path) -> Result<BoundaryPath, PathError> {
        if !graph.is_sink(path.rng()) {
            return Err(PathError::NotAtSink(graph.vertex_name(path.rng()).into()));
        }
        Ok(BoundaryPath::SinkPath(path))
    }

    /// `prefix · closed^∞`, normalised.  `closed` must start at `r(prefix)`.
    pub fn lasso(graph: &Graph, prefix: Path, closed: &ClosedPath) -> Result<BoundaryPath, PathError> {
        if prefix.rng() != closed.base() {
            return Err(PathError::MismatchedEndpoints(
                graph.vertex_name(prefix.rng()).into(),
                graph.vertex_name(closed.base()).into(),
            ));
        }
        let root = closed.root(graph);
        let (cycle, rotation) = root.canonical(graph);
        Ok(Self::absorb(graph, prefix, cycle, rotation))
    }

    /// `c^∞` for a closed path `c`.
    pub fn periodic(graph: &Graph, closed: &ClosedPath) -> BoundaryPath {
        Self::lasso(graph, Path::vertex(closed.base()), closed).expect("base matches")
    }

    fn absorb(graph: &Graph, mut prefix: Path, cycle: ClosedPath, mut rotation: usize) -> BoundaryPath {
        let n = cycle.len();
        while prefix.last_edge() == Some(cycle.entering_edge(rotation)) {
            prefix.pop(graph);
            rotation = (rotation + n - 1) % n;
        }
        BoundaryPath::Lasso {
            prefix,
            cycle,
            rotation,
        }
    }

    /// Parses a finite path ending at a sink (`f.g`, `v`) or a lasso written
    /// `prefix(closed)` such as `(e)`, `f(e1.e2)`.
    pub fn parse(graph: &Graph, text: &str) -> Result<BoundaryPath, PathError> {
        let text = text.trim();
        if let Some(open) = text.find('(') {
            let close = text
                .strip_suffix(')')
                .ok_or_else(|| PathError::Malformed(text.to_string()))?;
            let prefix_text = close[..open].trim().trim_end_matches('.');
            let closed = ClosedPath::parse(graph, &close[open + 1..])?;
            let prefix = if prefix_text.is_empty() {
                Path::vertex(closed.base())
            } else {
                Path::parse(graph, prefix_text)?
            };
            return BoundaryPath::lasso(graph, prefix, &closed);
        }
        BoundaryPath::sink_path(graph, Path::parse(graph, text)?)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, BoundaryPath::Lasso { .. })
    }

    pub fn source(&self) -> VertexId {
        match self {
            BoundaryPath::SinkPath(p) => p.src(),
            BoundaryPath::Lasso { prefix, .. } => prefix.src(),
        }
    }

    /// The cycle class of a lasso.
    pub fn cycle(&self) -> Option<&ClosedPath> {
        match self {
            BoundaryPath::SinkPath(_) => None,
            BoundaryPath::Lasso { cycle, .. } => Some(cycle),
        }
    }

    /// Length of the finite path, or of the canonical prefix of a lasso.
    pub fn prefix_len(&self) -> usize {
        match self {
            BoundaryPath::SinkPath(p) => p.len(),
            BoundaryPath::Lasso { prefix, .. } => prefix.len(),
        }
    }

    /// The `j`-th edge (0-based), unrolling the cycle of a lasso.
    pub fn edge_at(&self, j: usize) -> Option<EdgeId> {
        match self {
            BoundaryPath::SinkPath(p) => p.edges().get(j).copied(),
            BoundaryPath::Lasso {
                prefix,
                cycle,
                rotation,
            } => {
                if j < prefix.len() {
                    Some(prefix.edges()[j])
                } else {
                    let n = cycle.len();
                    Some(cycle.edges()[(rotation + j - prefix.len()) % n])
                }
            }
        }
    }

    /// Initial subpath with `len` edges, if the path is that long.
    pub fn initial_segment(&self, graph: &Graph, len: usize) -> Option<Path> {
        if len == 0 {
            return Some(Path::vertex(self.source()));
        }
        let edges: Option<Vec<EdgeId>> = (0..len).map(|j| self.edge_at(j)).collect();
        Some(Path::from_edges(graph, edges?).expect("segment of a path"))
    }

    /// If `mu` is an initial subpath of `self`, the unique remainder `p`
    /// with `self = mu p`.
    pub fn strip_prefix(&self, mu: &Path) -> Option<BoundaryPath> {
        if mu.src() != self.source() {
            return None;
        }
        match self {
            BoundaryPath::SinkPath(p) => p.strip_prefix(mu).map(BoundaryPath::SinkPath),
            BoundaryPath::Lasso {
                prefix,
                cycle,
                rotation,
            } => {
                if mu.edges().iter().enumerate().any(|(j, &e)| self.edge_at(j) != Some(e)) {
                    return None;
                }
                if mu.len() <= prefix.len() {
                    let rest = prefix.strip_prefix(mu).expect("matched edges");
                    // The remainder keeps the last edge of `prefix`, so it is still canonical.
                    Some(BoundaryPath::Lasso {
                        prefix: rest,
                        cycle: cycle.clone(),
                        rotation: *rotation,
                    })
                } else {
                    let r = (rotation + mu.len() - prefix.len()) % cycle.len();
                    Some(BoundaryPath::Lasso {
                        prefix: Path::vertex(cycle.vertices()[r]),
                        cycle: cycle.clone(),
                        rotation: r,
                    })
                }
            }
        }
    }

    /// `mu · self`, defined when `r(mu) = s(self)`; the result is canonical.
    pub fn prepend(&self, graph: &Graph, mu: &Path) -> Option<BoundaryPath> {
        if mu.rng() != self.source() {
            return None;
        }
        match self {
            BoundaryPath::SinkPath(p) => Some(BoundaryPath::SinkPath(mu.concat(p)?)),
            BoundaryPath::Lasso {
                prefix,
                cycle,
                rotation,
            } => Some(Self::absorb(graph, mu.concat(prefix)?, cycle.clone(), *rotation)),
        }
    }

    /// Lag of `self` against the base point `c^∞` of its cycle class:
    /// `α c_i^∞ ~ c^∞` with lag `|α| - i`, modulo `|c|`.
    fn lag_to_cycle_base(&self) -> Option<i64> {
        match self {
            BoundaryPath::SinkPath(_) => None,
            BoundaryPath::Lasso {
                prefix, rotation, ..
            } => Some(prefix.len() as i64 - *rotation as i64),
        }
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> BoundaryPathDisplay<'a> {
        BoundaryPathDisplay { bp: self, graph }
    }
}

pub struct BoundaryPathDisplay<'a> {
    bp: &'a BoundaryPath,
    graph: &'a Graph,
}

impl fmt::Display for BoundaryPathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bp {
            BoundaryPath::SinkPath(p) => write!(f, "{}", p.display(self.graph)),
            BoundaryPath::Lasso {
                prefix,
                cycle,
                rotation,
            } => {
                if !prefix.is_vertex() {
                    write!(f, "{}", prefix.display(self.graph))?;
                }
                let rot = cycle.rotation(self.graph, *rotation);
                write!(f, "({})", rot.display(self.graph))
            }
        }
    }
}

/// The set of lags `k` with `x ~_k y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LagSet {
    Empty,
    Single(i64),
    /// `{k0 + j n : j ∈ Z}` with `0 <= k0 < n`.
    Coset { k0: i64, n: i64 },
}

impl LagSet {
    pub fn coset(k: i64, n: i64) -> LagSet {
        assert!(n >= 1, "coset modulus must be positive");
        LagSet::Coset {
            k0: k.rem_euclid(n),
            n,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, LagSet::Empty)
    }

    pub fn contains(&self, k: i64) -> bool {
        match *self {
            LagSet::Empty => false,
            LagSet::Single(j) => j == k,
            LagSet::Coset { k0, n } => (k - k0).rem_euclid(n) == 0,
        }
    }

    pub fn negate(&self) -> LagSet {
        match *self {
            LagSet::Empty => LagSet::Empty,
            LagSet::Single(k) => LagSet::Single(-k),
            LagSet::Coset { k0, n } => LagSet::coset(-k0, n),
        }
    }

    /// Some element of the set (the normalised one for a coset).
    pub fn representative(&self) -> Option<i64> {
        match *self {
            LagSet::Empty => None,
            LagSet::Single(k) => Some(k),
            LagSet::Coset { k0, .. } => Some(k0),
        }
    }
}

impl fmt::Display for LagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LagSet::Empty => f.write_str("{}"),
            LagSet::Single(k) => write!(f, "{{{k}}}"),
            LagSet::Coset { k0, n } => write!(f, "{k0} + {n}Z"),
        }
    }
}

/// All lags `k` with `x ~_k y`, i.e. `x = μp`, `y = νp`, `|μ| - |ν| = k`.
pub fn tail_lags(x: &BoundaryPath, y: &BoundaryPath) -> LagSet {
    match (x, y) {
        (BoundaryPath::SinkPath(p), BoundaryPath::SinkPath(q)) => {
            if p.rng() == q.rng() {
                LagSet::Single(p.len() as i64 - q.len() as i64)
            } else {
                LagSet::Empty
            }
        }
        (BoundaryPath::Lasso { cycle: c, .. }, BoundaryPath::Lasso { cycle: d, .. }) if c == d => {
            let kx = x.lag_to_cycle_base().unwrap();
            let ky = y.lag_to_cycle_base().unwrap();
            LagSet::coset(kx - ky, c.len() as i64)
        }
        _ => LagSet::Empty,
    }
}
