//! Reachability, cycles and path enumeration on finite graphs.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::path::{shortlex, ClosedPath, Path};

/// `reach[u][v]` iff there is a finite path (possibly of length 0) from `u` to `v`.
pub fn reachability(graph: &Graph) -> Vec<Vec<bool>> {
    let n = graph.num_vertices();
    let mut reach = vec![vec![false; n]; n];
    for start in graph.vertex_ids() {
        let mut stack = vec![start];
        reach[start.0][start.0] = true;
        while let Some(v) = stack.pop() {
            for &e in graph.out_edges(v) {
                let w = graph.rng(e);
                if !reach[start.0][w.0] {
                    reach[start.0][w.0] = true;
                    stack.push(w);
                }
            }
        }
    }
    reach
}

/// Strongly connected component index per vertex, components numbered in
/// order of their least vertex.
pub fn scc_ids(graph: &Graph) -> Vec<usize> {
    let reach = reachability(graph);
    let n = graph.num_vertices();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if comp[v] != usize::MAX {
            continue;
        }
        for w in v..n {
            if reach[v][w] && reach[w][v] {
                comp[w] = next;
            }
        }
        next += 1;
    }
    comp
}

/// Number of edges with both endpoints in each component.
fn internal_edge_counts(graph: &Graph, comp: &[usize]) -> Vec<usize> {
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut counts = vec![0; ncomp];
    for e in graph.edge_ids() {
        let (s, r) = (comp[graph.src(e).0], comp[graph.rng(e).0]);
        if s == r {
            counts[s] += 1;
        }
    }
    counts
}

/// Vertices lying on some closed path.
pub fn on_cycle(graph: &Graph) -> Vec<bool> {
    let comp = scc_ids(graph);
    let counts = internal_edge_counts(graph, &comp);
    graph.vertex_ids().map(|v| counts[comp[v.0]] > 0).collect()
}

/// True when some cycle has a path to `v` (then infinitely many paths end at `v`).
pub fn cycle_reaches(graph: &Graph, v: VertexId) -> bool {
    let reach = reachability(graph);
    let cyc = on_cycle(graph);
    graph.vertex_ids().any(|w| cyc[w.0] && reach[w.0][v.0])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathList {
    pub paths: Vec<Path>,
    /// The list is all of `{μ : r(μ) = v}`, independent of the bound.
    pub exact: bool,
}

/// All paths `μ` with `r(μ) = v`.  When no cycle reaches `v` the set is
/// finite and returned in full; otherwise it is cut at `|μ| <= bound`.
/// Sorted shortlex.
pub fn enumerate_paths_ending_at(graph: &Graph, v: VertexId, bound: usize) -> PathList {
    let exact = !cycle_reaches(graph, v);
    let limit = if exact { usize::MAX } else { bound };
    let mut out = Vec::new();
    // Paths are grown backwards from v.
    let mut frontier = vec![Path::vertex(v)];
    while let Some(path) = frontier.pop() {
        if path.len() < limit {
            for &e in graph.in_edges(path.src()) {
                let grown = Path::edge(graph, e).concat(&path).expect("e ends at s(path)");
                frontier.push(grown);
            }
        }
        out.push(path);
    }
    out.sort_by(shortlex);
    PathList { paths: out, exact }
}

/// Every cycle (closed path without repeated vertices) once, represented by
/// its lexicographically least rotation; sorted by length, then edge names.
pub fn elementary_cycles(graph: &Graph) -> Vec<ClosedPath> {
    let mut found = BTreeSet::new();
    for start in graph.vertex_ids() {
        // Only vertices >= start, so each cycle is found from its least vertex.
        let mut stack: Vec<(VertexId, Vec<EdgeId>, Vec<bool>)> = Vec::new();
        let mut visited = vec![false; graph.num_vertices()];
        visited[start.0] = true;
        stack.push((start, Vec::new(), visited));
        while let Some((v, edges, visited)) = stack.pop() {
            for &e in graph.out_edges(v) {
                let w = graph.rng(e);
                if w == start {
                    let mut word = edges.clone();
                    word.push(e);
                    let cp = ClosedPath::new(graph, &Path::from_edges(graph, word).unwrap()).unwrap();
                    found.insert(cp.canonical(graph).0);
                } else if w > start && !visited[w.0] {
                    let mut word = edges.clone();
                    word.push(e);
                    let mut vis = visited.clone();
                    vis[w.0] = true;
                    stack.push((w, word, vis));
                }
            }
        }
    }
    let mut cycles: Vec<ClosedPath> = found.into_iter().collect();
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.edges().cmp(b.edges())));
    cycles
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPathList {
    pub paths: Vec<ClosedPath>,
    /// The list is provably the whole set of simple closed paths up to rotation.
    pub complete: bool,
}

/// Simple closed paths of length `<= bound`, one per rotation class.
///
/// The full set is finite exactly when every strongly connected component
/// carries at most one cycle; it is then the set of cycles.
pub fn simple_closed_paths(graph: &Graph, bound: usize) -> ClosedPathList {
    let mut found = BTreeSet::new();
    for start in graph.vertex_ids() {
        let mut stack: Vec<(VertexId, Vec<EdgeId>)> = vec![(start, Vec::new())];
        while let Some((v, edges)) = stack.pop() {
            if edges.len() == bound {
                continue;
            }
            for &e in graph.out_edges(v) {
                let mut word = edges.clone();
                word.push(e);
                let w = graph.rng(e);
                if w == start {
                    let cp = ClosedPath::new(graph, &Path::from_edges(graph, word.clone()).unwrap()).unwrap();
                    if cp.is_simple() {
                        found.insert(cp.canonical(graph).0);
                    }
                }
                stack.push((w, word));
            }
        }
    }
    let mut paths: Vec<ClosedPath> = found.into_iter().collect();
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.edges().cmp(b.edges())));

    let comp = scc_ids(graph);
    let internal = internal_edge_counts(graph, &comp);
    let mut sizes = vec![0; internal.len()];
    for c in &comp {
        sizes[*c] += 1;
    }
    let finite = internal
        .iter()
        .zip(&sizes)
        .all(|(&edges, &verts)| edges == 0 || edges == verts);
    let longest = elementary_cycles(graph).iter().map(|c| c.len()).max().unwrap_or(0);
    ClosedPathList {
        paths,
        complete: finite && bound >= longest,
    }
}

/// A maximal sink together with the number of finite paths ending at it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalSink {
    #[serde(skip)]
    pub vertex: VertexId,
    pub name: String,
    pub path_count: u64,
}

/// Number of paths ending at `v`, by dynamic programming over the
/// (acyclic) set of predecessors.  `None` if a cycle reaches `v`.
pub fn count_paths_ending_at(graph: &Graph, v: VertexId) -> Option<u64> {
    if cycle_reaches(graph, v) {
        return None;
    }
    // ways[w] = number of paths from w to v; memoised DFS over predecessors.
    // Only edges that can still reach `v` are followed; the others may lead
    // into cycles.
    fn ways(graph: &Graph, reach: &[Vec<bool>], w: VertexId, v: VertexId, memo: &mut Vec<Option<u64>>) -> u64 {
        if let Some(c) = memo[w.0] {
            return c;
        }
        let mut total: u64 = u64::from(w == v);
        for &e in graph.out_edges(w) {
            if !reach[graph.rng(e).0][v.0] {
                continue;
            }
            total = total
                .checked_add(ways(graph, reach, graph.rng(e), v, memo))
                .expect("path count overflow");
        }
        memo[w.0] = Some(total);
        total
    }
    let reach = reachability(graph);
    let mut memo = vec![None; graph.num_vertices()];
    let mut sum: u64 = 0;
    for w in graph.vertex_ids() {
        if reach[w.0][v.0] {
            sum = sum.checked_add(ways(graph, &reach, w, v, &mut memo)).expect("path count overflow");
        }
    }
    Some(sum)
}

/// Sinks not reached by any cycle, with their path counts.
pub fn maximal_sinks(graph: &Graph) -> Vec<MaximalSink> {
    graph
        .sinks()
        .into_iter()
        .filter_map(|v| {
            count_paths_ending_at(graph, v).map(|path_count| MaximalSink {
                vertex: v,
                name: graph.vertex_name(v).to_string(),
                path_count,
            })
        })
        .collect()
}

/// Cycles whose strongly connected component is the cycle itself and that
/// no other cycle reaches.
pub fn maximal_cycles(graph: &Graph) -> Vec<ClosedPath> {
    let comp = scc_ids(graph);
    let internal = internal_edge_counts(graph, &comp);
    let reach = reachability(graph);
    let cyc = on_cycle(graph);
    elementary_cycles(graph)
        .into_iter()
        .filter(|c| {
            let home = comp[c.base().0];
            if internal[home] != c.len() {
                return false;
            }
            !graph
                .vertex_ids()
                .any(|w| comp[w.0] != home && cyc[w.0] && reach[w.0][c.base().0])
        })
        .collect()
}

/// Two distinct cycles in one strongly connected component, if any.  Such a
/// pair exists iff the graph has irrational infinite paths.
pub fn irrational_witness(graph: &Graph) -> Option<(ClosedPath, ClosedPath)> {
    let comp = scc_ids(graph);
    let cycles = elementary_cycles(graph);
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            if comp[a.base().0] == comp[b.base().0] {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}
