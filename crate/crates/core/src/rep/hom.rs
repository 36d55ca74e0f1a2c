//! Linear algebra on module windows: homomorphism spaces, restriction to
//! the isotropy group, and simplicity tests.

use serde::Serialize;

use crate::algebra::Monomial;
use crate::field::{Field, Irreducibility};
use crate::groupoid::{isotropy, Isotropy};
use crate::linalg::{in_span, intertwiners_supported, span_basis, span_rank, Matrix};
use crate::path::BoundaryPath;

use super::verify::{laurent_quotient_witness, Check};
use super::{Module, ModuleKind, ModuleSpec, NSpec, RepError, Window};

/// Basis of `Hom(A, B)` as matrices (`dim B × dim A`) in window coordinates.
/// With `graded = Some(d)` only maps raising degree by `d` are returned.
pub fn intertwiner_space<F: Field>(
    a: &Module<'_, F>,
    wa: &Window,
    b: &Module<'_, F>,
    wb: &Window,
    graded: Option<i64>,
) -> Result<Vec<Matrix<F::Elem>>, RepError> {
    if a.graph() != b.graph() {
        return Err(RepError::GraphMismatch);
    }
    let field = a.field();
    let mut pairs = Vec::new();
    for g in a.generators() {
        pairs.push((b.matrix(&g, wb)?, a.matrix(&g, wa)?));
    }
    let grades = |m: &Module<'_, F>, w: &Window| -> Result<Vec<i64>, RepError> {
        w.elements().iter().map(|x| m.grade_of(x)).collect()
    };
    let basis = match graded {
        None => intertwiners_supported(field, &pairs, wb.len(), wa.len(), |_, _| true),
        Some(d) => {
            let ga = grades(a, wa)?;
            let gb = grades(b, wb)?;
            intertwiners_supported(field, &pairs, wb.len(), wa.len(), |i, j| gb[i] == ga[j] + d)
        }
    };
    Ok(basis)
}

/// `Res_x(M)` on a finite window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction<E> {
    /// Basis of the restricted subspace, in window coordinates.
    pub basis: Vec<Vec<E>>,
    /// The isotropy generator `(x, n, x)` on that basis (1×1 identity-sized
    /// when the isotropy is trivial).
    pub generator: Matrix<E>,
    /// Number of idempotent images computed.
    pub steps: usize,
}

impl<E> Restriction<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Intersects the images of `μμ*` for the initial subpaths `μ` of `x`.
///
/// Equal consecutive images alone do not prove that the chain has settled
/// (it can branch later), so the walk always reaches the full sink path, or
/// one whole turn of the cycle past the prefix of a lasso, before stopping
/// at the first repeat.
pub fn restrict<F: Field>(
    m: &Module<'_, F>,
    w: &Window,
    x: &BoundaryPath,
    cap: usize,
) -> Result<Restriction<F::Elem>, RepError> {
    let field = m.field();
    let graph = m.graph();
    let depth = x.prefix_len() + x.cycle().map_or(0, |c| c.len());
    let mut current: Option<Vec<Vec<F::Elem>>> = None;
    let mut steps = 0;
    for l in 0.. {
        let Some(mu) = x.initial_segment(graph, l) else {
            break;
        };
        if steps == cap {
            return Err(RepError::NoStabilization(cap));
        }
        let idem = Monomial::new(graph, mu.clone(), mu)?;
        let p = m.matrix(&idem, w)?;
        let cols: Vec<Vec<F::Elem>> = (0..w.len()).map(|j| p.column(j)).collect();
        let image = span_basis(field, &cols, w.len());
        steps += 1;
        let settled = current
            .as_ref()
            .is_some_and(|prev| prev.len() == image.len() && image.iter().all(|v| in_span(field, prev, v)));
        current = Some(image);
        if settled && l >= depth {
            break;
        }
    }
    let basis = current.unwrap_or_default();
    let generator = match isotropy(x) {
        Isotropy::Trivial => Matrix::identity(field, basis.len()),
        Isotropy::InfiniteCyclic { cycle, .. } => {
            let BoundaryPath::Lasso { prefix, rotation, .. } = x else {
                unreachable!("cyclic isotropy only at lassos")
            };
            let turn = cycle.rotation(graph, *rotation).as_path(graph);
            let g = Monomial::new(graph, prefix.concat(&turn).expect("cycle starts at r(prefix)"), prefix.clone())?;
            let gm = m.matrix(&g, w)?;
            let b = Matrix::from_columns(field, &basis, w.len());
            let cols: Vec<Vec<F::Elem>> = basis
                .iter()
                .map(|v| {
                    b.solve(field, &gm.apply(field, v))
                        .ok_or_else(|| RepError::Invalid("restricted subspace is not isotropy-stable".into()))
                })
                .collect::<Result<_, _>>()?;
            Matrix::from_columns(field, &cols, basis.len())
        }
    };
    Ok(Restriction { basis, generator, steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplicityVerdict {
    Simple,
    GradedSimpleNotSimple,
    NotSimple,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Simplicity {
    pub verdict: SimplicityVerdict,
    pub witness: String,
    pub checks: Vec<Check>,
}

/// Basis of the submodule generated by `v` under the matrices `gens`.
fn generated<F: Field>(field: &F, gens: &[Matrix<F::Elem>], v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let dim = v.len();
    let mut span: Vec<Vec<F::Elem>> = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(u) = queue.pop() {
        if u.iter().all(|x| field.is_zero(x)) || in_span(field, &span, &u) {
            continue;
        }
        for g in gens {
            queue.push(g.apply(field, &u));
        }
        span.push(u);
    }
    span_basis(field, &span, dim)
}

/// Dimension of the matrix algebra generated by `gens` and the identity.
fn algebra_dim<F: Field>(field: &F, gens: &[Matrix<F::Elem>], d: usize) -> usize {
    let mut basis: Vec<Matrix<F::Elem>> = Vec::new();
    let mut flat: Vec<Vec<F::Elem>> = Vec::new();
    let mut queue = vec![Matrix::identity(field, d)];
    queue.extend(gens.iter().cloned());
    while let Some(m) = queue.pop() {
        let f = m.flatten();
        if f.iter().all(|x| field.is_zero(x)) || in_span(field, &flat, &f) {
            continue;
        }
        for g in gens {
            queue.push(g.mul(field, &m));
        }
        flat.push(f);
        basis.push(m);
        if flat.len() == d * d {
            break;
        }
    }
    span_rank(field, &flat)
}

/// Looks for an element of the commutant generating it as a field.
fn commutant_is_field<F: Field>(field: &F, commutant: &[Matrix<F::Elem>]) -> bool {
    let c = commutant.len();
    let mut candidates: Vec<Matrix<F::Elem>> = commutant.to_vec();
    if let Some(first) = commutant.first() {
        let mut sum = first.clone();
        for (i, m) in commutant.iter().enumerate().skip(1) {
            sum = sum.add(field, &m.scale(field, &field.from_i64(i as i64 + 1)));
        }
        candidates.push(sum);
    }
    candidates.iter().any(|z| {
        let p = z.minimal_polynomial(field);
        p.degree() == Some(c) && field.irreducibility(&p) == Irreducibility::Irreducible
    })
}

/// Decides simplicity of a finite-dimensional module, or of an induced
/// Laurent module (graded simple, never simple).
pub fn simplicity_probe<F: Field>(m: &Module<'_, F>, bound: usize) -> Result<Simplicity, RepError> {
    match &m.spec().kind {
        ModuleKind::Induced { coeff: NSpec::LaurentShift(_), .. } => return laurent_quotient_witness(m, bound),
        ModuleKind::Nvc { cycle } => {
            // N_vc is the module induced from the regular representation.
            let ind = Module::new(
                m.lpa(),
                ModuleSpec::induced(BoundaryPath::periodic(m.graph(), cycle), NSpec::LaurentShift(0)),
            )?;
            return laurent_quotient_witness(&ind, bound);
        }
        _ => {}
    }
    let field = m.field();
    let w = m.basis(bound)?;
    if !w.exact {
        return Ok(Simplicity {
            verdict: SimplicityVerdict::Inconclusive,
            witness: "module is infinite-dimensional".into(),
            checks: Vec::new(),
        });
    }
    let d = w.len();
    let gens: Vec<Matrix<F::Elem>> = m.generators().iter().map(|g| m.matrix(g, &w)).collect::<Result<_, _>>()?;
    let mut checks = Vec::new();

    // Every basis vector must generate everything.
    let mut seeds = Check::new("basis vectors generate the module");
    for (i, b) in w.elements().iter().enumerate() {
        let mut v = vec![field.zero(); d];
        v[i] = field.one();
        let span = generated(field, &gens, &v);
        seeds.record(span.len() == d, || {
            format!("{} generates a submodule of dimension {}", m.format_basis(b), span.len())
        });
    }
    let seeds_ok = seeds.pass;
    let seed_witness = seeds.counterexample.clone();
    checks.push(seeds);
    if !seeds_ok {
        return Ok(Simplicity {
            verdict: SimplicityVerdict::NotSimple,
            witness: seed_witness.unwrap_or_default(),
            checks,
        });
    }

    let alg = algebra_dim(field, &gens, d);
    let mut full = Check::new("acting algebra is all of End(M)");
    full.record(alg == d * d, || format!("acting algebra has dimension {alg} < {}", d * d));
    let full_ok = full.pass;
    checks.push(full);
    if full_ok {
        return Ok(Simplicity {
            verdict: SimplicityVerdict::Simple,
            witness: format!("acting algebra has dimension {} = {d}^2", d * d),
            checks,
        });
    }

    // Small finite fields: try every nonzero vector.
    if let Some(q) = field.order() {
        if (d as f64) * (q as f64).log2() <= 12.0 {
            let total = q.pow(d as u32);
            let mut all = Check::new("every nonzero vector generates the module");
            for code in 1..total {
                let mut c = code;
                let v: Vec<F::Elem> = (0..d)
                    .map(|_| {
                        let x = field.element(c % q);
                        c /= q;
                        x
                    })
                    .collect();
                let span = generated(field, &gens, &v);
                all.record(span.len() == d, || format!("vector {code} generates dimension {}", span.len()));
            }
            let ok = all.pass;
            let witness = all.counterexample.clone();
            checks.push(all);
            return Ok(Simplicity {
                verdict: if ok { SimplicityVerdict::Simple } else { SimplicityVerdict::NotSimple },
                witness: witness.unwrap_or_else(|| format!("all {} nonzero vectors are cyclic", total - 1)),
                checks,
            });
        }
    }

    // Double-commutant count: a field commutant C with dim A · dim C = d².
    let commutant = intertwiner_space(m, &w, m, &w, None)?;
    let is_field = commutant_is_field(field, &commutant);
    let mut dc = Check::new("commutant is a field and dim A · dim C = d^2");
    dc.record(is_field && alg * commutant.len() == d * d, || {
        format!("dim A = {alg}, dim C = {}, commutant field: {is_field}", commutant.len())
    });
    let ok = dc.pass;
    checks.push(dc);
    Ok(Simplicity {
        verdict: if ok { SimplicityVerdict::Simple } else { SimplicityVerdict::Inconclusive },
        witness: format!("dim A = {alg}, dim End_A(M) = {}", commutant.len()),
        checks,
    })
}
