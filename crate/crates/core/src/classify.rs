//! Lists of the spectral graded simple modules and of the finite-dimensional
//! simple modules of a finite graph, with dimensions.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{count_paths_ending_at, irrational_witness, maximal_cycles, maximal_sinks, simple_closed_paths};
use crate::field::{Field, Irreducibility, Polynomial};
use crate::graph::Graph;
use crate::path::ClosedPath;
use crate::rep::Dimension;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{0} is not a finite-dimensional entry")]
    InfiniteEntry(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GradedFamily {
    /// `V_[v](n)` for all `n`.
    SinkFamily { vertex: String, dim: Dimension, module: String },
    /// Chen modules at irrational paths, present iff two cycles share a
    /// strongly connected component.
    IrrationalFamilyFlag { present: bool, witness: Option<(String, String)> },
    /// `Ind_{c^∞}(K[t^n, t^-n])(m)` for `0 <= m < n = |c|`.
    LaurentFamily { cycle: String, shifts: Vec<i64>, modules: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedReport {
    pub families: Vec<GradedFamily>,
    pub complete: bool,
    pub bounds: Bounds,
}

/// Spectral graded simple modules up to isomorphism and shift.
pub fn classify_graded(graph: &Graph, cycle_bound: usize) -> GradedReport {
    let mut families = Vec::new();
    for v in graph.sinks() {
        let name = graph.vertex_name(v).to_string();
        let dim = match count_paths_ending_at(graph, v) {
            Some(n) => Dimension::Finite(n as usize),
            None => Dimension::Infinite,
        };
        families.push(GradedFamily::SinkFamily { module: format!("chen:{name}"), vertex: name, dim });
    }
    let witness = irrational_witness(graph);
    families.push(GradedFamily::IrrationalFamilyFlag {
        present: witness.is_some(),
        witness: witness.map(|(a, b)| (a.display(graph).to_string(), b.display(graph).to_string())),
    });
    let cycles = simple_closed_paths(graph, cycle_bound);
    for c in &cycles.paths {
        let name = c.display(graph).to_string();
        let shifts: Vec<i64> = (0..c.len() as i64).collect();
        let modules = shifts.iter().map(|m| format!("ind:({name}):laurent({m})")).collect();
        families.push(GradedFamily::LaurentFamily { cycle: name, shifts, modules });
    }
    GradedReport {
        families,
        complete: cycles.complete,
        bounds: Bounds { cycle_length: Some(cycle_bound), poly_degree: None },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "entry", rename_all = "snake_case")]
pub enum SimpleEntry {
    SinkSimple { vertex: String, dim: usize, module: String },
    CycleSimple { cycle: String, modulus: String, orbit_size: usize, dim: usize, module: String },
    InfiniteDimFlagged { base: String, reason: String },
}

impl SimpleEntry {
    pub fn dim(&self) -> Option<usize> {
        match self {
            SimpleEntry::SinkSimple { dim, .. } | SimpleEntry::CycleSimple { dim, .. } => Some(*dim),
            SimpleEntry::InfiniteDimFlagged { .. } => None,
        }
    }

    /// Module spec text of a finite-dimensional entry.
    pub fn module(&self) -> Option<&str> {
        match self {
            SimpleEntry::SinkSimple { module, .. } | SimpleEntry::CycleSimple { module, .. } => Some(module),
            SimpleEntry::InfiniteDimFlagged { .. } => None,
        }
    }

    fn label(&self) -> String {
        match self {
            SimpleEntry::SinkSimple { vertex, .. } => format!("V_[{vertex}]"),
            SimpleEntry::CycleSimple { cycle, modulus, .. } => format!("V^({modulus})_[({cycle})]"),
            SimpleEntry::InfiniteDimFlagged { base, .. } => format!("V_[{base}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleReport {
    pub families: Vec<SimpleEntry>,
    /// Whether the finite-dimensional list is the whole list: the polynomial
    /// axis was enumerated (finite fields only) and nothing else is open.
    pub complete: bool,
    pub bounds: Bounds,
}

/// Candidate moduli: monic irreducible `f ≠ t` of degree `<= max_degree`.
///
/// Over a finite field these are enumerated exhaustively. Otherwise the
/// linear `t - a` for each sample `a ≠ 0` are used, plus the given extras
/// that pass the irreducibility test; the list is then never complete.
pub fn candidate_moduli<F: Field>(
    field: &F,
    max_degree: usize,
    samples: &[F::Elem],
    extra: &[Polynomial<F::Elem>],
) -> (Vec<Polynomial<F::Elem>>, bool) {
    let admissible = |f: &Polynomial<F::Elem>| {
        f.is_monic(field)
            && f.degree().is_some_and(|d| d >= 1 && d <= max_degree)
            && !f.is_t(field)
            && field.irreducibility(f) == Irreducibility::Irreducible
    };
    let mut out: Vec<Polynomial<F::Elem>> = Vec::new();
    let push = |f: Polynomial<F::Elem>, out: &mut Vec<Polynomial<F::Elem>>| {
        if admissible(&f) && !out.contains(&f) {
            out.push(f);
        }
    };
    let complete = match field.order() {
        Some(q) => {
            for d in 1..=max_degree {
                let count = (q as u128).pow(d as u32);
                for code in 0..count {
                    let mut c = code;
                    let mut coeffs: Vec<F::Elem> = (0..d)
                        .map(|_| {
                            let x = field.element((c % q as u128) as u64);
                            c /= q as u128;
                            x
                        })
                        .collect();
                    coeffs.push(field.one());
                    push(Polynomial::from_coeffs(field, coeffs), &mut out);
                }
            }
            true
        }
        None => {
            for a in samples {
                push(Polynomial::linear(field, a), &mut out);
            }
            false
        }
    };
    for f in extra {
        push(f.clone(), &mut out);
    }
    (out, complete)
}

/// `|[c^∞]|` for a maximal cycle: one class member `μ·(rotation of c)^∞`
/// per path `μ` that ends on `c` and does not end with an edge of `c`.
pub fn rational_orbit_size(graph: &Graph, c: &ClosedPath) -> Option<usize> {
    let on_c: Vec<_> = c.edges().to_vec();
    let mut total = 0u64;
    for &w in c.vertices() {
        total += 1;
        for &e in graph.in_edges(w) {
            if !on_c.contains(&e) {
                total += count_paths_ending_at(graph, graph.src(e))?;
            }
        }
    }
    Some(total as usize)
}

/// The finite-dimensional simple modules, with every other spectral family
/// flagged as infinite-dimensional.
pub fn classify_simple<F: Field>(
    graph: &Graph,
    field: &F,
    poly_degree: usize,
    samples: &[F::Elem],
    extra: &[Polynomial<F::Elem>],
) -> SimpleReport {
    let mut families = Vec::new();
    let finite_sinks = maximal_sinks(graph);
    for v in graph.sinks() {
        let name = graph.vertex_name(v).to_string();
        match finite_sinks.iter().find(|s| s.vertex == v) {
            Some(s) => families.push(SimpleEntry::SinkSimple {
                module: format!("chen:{name}"),
                vertex: name,
                dim: s.path_count as usize,
            }),
            None => families.push(SimpleEntry::InfiniteDimFlagged {
                base: name,
                reason: "a cycle reaches the sink, so infinitely many paths end there".into(),
            }),
        }
    }
    let (moduli, moduli_complete) = candidate_moduli(field, poly_degree, samples, extra);
    let maximal = maximal_cycles(graph);
    // All cycles are listed: a graph without irrational paths has finitely many.
    let cycles = crate::cycles::elementary_cycles(graph);
    for c in &cycles {
        let name = c.display(graph).to_string();
        if maximal.contains(c) {
            let size = rational_orbit_size(graph, c).expect("maximal cycles have finitely many predecessors");
            for f in &moduli {
                let deg = f.degree().expect("nonzero modulus");
                let modulus = f.format(field);
                families.push(SimpleEntry::CycleSimple {
                    module: format!("chen-ext:{name}:{modulus}"),
                    cycle: name.clone(),
                    modulus,
                    orbit_size: size,
                    dim: size * deg,
                });
            }
        } else {
            families.push(SimpleEntry::InfiniteDimFlagged {
                base: format!("({name})"),
                reason: "another cycle reaches this cycle or shares its component".into(),
            });
        }
    }
    if let Some((a, b)) = irrational_witness(graph) {
        families.push(SimpleEntry::InfiniteDimFlagged {
            base: "irrational paths".into(),
            reason: format!("cycles {} and {} share a component", a.display(graph), b.display(graph)),
        });
    }
    SimpleReport {
        families,
        complete: moduli_complete,
        bounds: Bounds { cycle_length: None, poly_degree: Some(poly_degree) },
    }
}

/// Dimension of a finite-dimensional entry, recomputed from the graph: a
/// path count for sinks, `|[c^∞]| · deg f` for cycles.
pub fn dimension_oracle<F: Field>(graph: &Graph, field: &F, entry: &SimpleEntry) -> Result<usize, ClassifyError> {
    match entry {
        SimpleEntry::SinkSimple { vertex, .. } => {
            let v = graph.vertex(vertex).ok_or_else(|| ClassifyError::InfiniteEntry(vertex.clone()))?;
            count_paths_ending_at(graph, v)
                .map(|n| n as usize)
                .ok_or_else(|| ClassifyError::InfiniteEntry(entry.label()))
        }
        SimpleEntry::CycleSimple { cycle, modulus, .. } => {
            let bad = || ClassifyError::InfiniteEntry(entry.label());
            let c = ClosedPath::parse(graph, cycle).map_err(|_| bad())?;
            let f = Polynomial::parse(field, modulus).map_err(|_| bad())?;
            Ok(rational_orbit_size(graph, &c).ok_or_else(bad)? * f.degree().ok_or_else(bad)?)
        }
        SimpleEntry::InfiniteDimFlagged { .. } => Err(ClassifyError::InfiniteEntry(entry.label())),
    }
}

fn dim_text(d: &Dimension) -> String {
    match d {
        Dimension::Finite(n) => n.to_string(),
        Dimension::Infinite => "infinite".into(),
    }
}

pub fn render_graded(report: &GradedReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<10} {:<16} {:<10} shifts", "family", "base", "dim");
    for f in &report.families {
        let _ = match f {
            GradedFamily::SinkFamily { vertex, dim, .. } => {
                writeln!(out, "{:<10} {:<16} {:<10} all n", "sink", vertex, dim_text(dim))
            }
            GradedFamily::IrrationalFamilyFlag { present, witness } => match witness {
                Some((a, b)) if *present => {
                    writeln!(out, "{:<10} {:<16} {:<10} all n", "irrational", format!("{a} | {b}"), "infinite")
                }
                _ => writeln!(out, "{:<10} {:<16} {:<10} -", "irrational", "none", "-"),
            },
            GradedFamily::LaurentFamily { cycle, shifts, .. } => writeln!(
                out,
                "{:<10} {:<16} {:<10} m = {}..{}",
                "laurent",
                format!("({cycle})"),
                "infinite",
                shifts.first().copied().unwrap_or(0),
                shifts.last().copied().unwrap_or(0)
            ),
        };
    }
    let _ = writeln!(out, "complete: {}", report.complete);
    out
}

pub fn render_simple(report: &SimpleReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<28} {:<10} module", "simple", "dim");
    for e in &report.families {
        let dim = e.dim().map_or("infinite".to_string(), |d| d.to_string());
        let detail = match e {
            SimpleEntry::InfiniteDimFlagged { reason, .. } => reason.as_str(),
            _ => e.module().unwrap_or(""),
        };
        let _ = writeln!(out, "{:<28} {:<10} {}", e.label(), dim, detail);
    }
    let _ = writeln!(out, "complete: {}", report.complete);
    out
}
