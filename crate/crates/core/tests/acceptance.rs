//! Acceptance criteria 1 to 10, one test per criterion. Each test prints a
//! single PASS/FAIL line; all arithmetic is exact.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lpa_core::algebra::{monomials_up_to, Element, Lpa, TwistVector};
use lpa_core::classify::{classify_graded, classify_simple, GradedFamily, SimpleEntry};
use lpa_core::field::{Field, Polynomial, PrimeField, Rationals};
use lpa_core::graph::{fixtures, Graph};
use lpa_core::groupoid::{pi_consistency, BoundaryWindow};
use lpa_core::linalg::Matrix;
use lpa_core::path::{tail_lags, BoundaryPath, ClosedPath, LagSet, Path};
use lpa_core::rep::{
    graded_iso_check, intertwiner_space, restrict, simplicity_probe, verify_nvc_iso, verify_res_ind,
    verify_triv_iso, verify_twist_iso, Module, ModuleSpec, NSpec, SimplicityVerdict, TrivCorruption,
};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn report(n: u32, what: &str, outcome: Outcome) {
    match &outcome {
        Ok(()) => println!("criterion {n:>2} PASS  {what}"),
        Err(why) => println!("criterion {n:>2} FAIL  {what}: {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {n} failed: {why}");
    }
}

fn relation_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("single vertex", fixtures::single_vertex()),
        ("A2", fixtures::a2()),
        ("R1", fixtures::r1()),
        ("Toeplitz", fixtures::toeplitz()),
        ("2-rose", fixtures::rose2()),
        ("3-cycle with exit", fixtures::three_cycle_with_exit()),
        ("chain", fixtures::chain()),
    ]
}

fn spec<F: Field>(g: &Graph, field: &F, text: &str) -> ModuleSpec<F::Elem> {
    ModuleSpec::parse(g, field, text).unwrap()
}

fn module<'g, F: Field>(lpa: &Lpa<'g, F>, text: &str) -> Module<'g, F> {
    Module::new(lpa, spec(lpa.graph(), lpa.field(), text)).unwrap()
}

// Criterion 1 ---------------------------------------------------------------

fn relations_hold<F: Field>(g: &Graph, field: F) -> Outcome {
    let lpa = Lpa::new(g, field);
    let edge = |e| lpa.edge(e);
    let ghost = |e| lpa.ghost_edge(e);
    for v in g.vertex_ids() {
        for w in g.vertex_ids() {
            let expected = if v == w { lpa.vertex(v) } else { lpa.zero() };
            ensure!(lpa.eq(&lpa.mul(&lpa.vertex(v), &lpa.vertex(w)), &expected), "(V) fails at {v:?} {w:?}");
        }
    }
    for e in g.edge_ids() {
        let (s, r) = (lpa.vertex(g.src(e)), lpa.vertex(g.rng(e)));
        ensure!(lpa.eq(&lpa.mul(&s, &edge(e)), &edge(e)), "(E1) s(e)e");
        ensure!(lpa.eq(&lpa.mul(&edge(e), &r), &edge(e)), "(E1) e r(e)");
        ensure!(lpa.eq(&lpa.mul(&r, &ghost(e)), &ghost(e)), "(E2) r(e)e*");
        ensure!(lpa.eq(&lpa.mul(&ghost(e), &s), &ghost(e)), "(E2) e* s(e)");
        for f in g.edge_ids() {
            let expected = if e == f { r.clone() } else { lpa.zero() };
            ensure!(lpa.eq(&lpa.mul(&ghost(e), &edge(f)), &expected), "(CK1) fails");
        }
    }
    for v in g.vertex_ids().filter(|&v| !g.is_sink(v)) {
        let mut sum: Element<F::Elem> = lpa.zero();
        for &e in g.out_edges(v) {
            sum = lpa.add(&sum, &lpa.mul(&edge(e), &ghost(e)));
        }
        ensure!(lpa.eq(&sum, &lpa.vertex(v)), "(CK2) fails at {}", g.vertex_name(v));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let x = lpa.random_element(&mut rng, 3, 3);
        let y = lpa.random_element(&mut rng, 3, 3);
        let z = lpa.random_element(&mut rng, 3, 3);
        let left = lpa.mul(&lpa.mul(&x, &y), &z);
        let right = lpa.mul(&x, &lpa.mul(&y, &z));
        ensure!(left == right, "associativity fails for {}, {}, {}", lpa.format(&x), lpa.format(&y), lpa.format(&z));
        ensure!(lpa.is_normal(&left), "product not in normal form");
    }
    Ok(())
}

#[test]
fn criterion_01_relations_and_associativity() {
    let outcome = relation_graphs().iter().try_for_each(|(name, g)| {
        relations_hold(g, Rationals).map_err(|e| format!("{name} over Q: {e}"))?;
        relations_hold(g, PrimeField::new(2).unwrap()).map_err(|e| format!("{name} over F2: {e}"))
    });
    report(1, "defining relations and 200 associativity triples per graph over Q and F2", outcome);
}

// Criterion 2 ---------------------------------------------------------------

#[test]
fn criterion_02_pi_consistency() {
    let outcome = relation_graphs().iter().try_for_each(|(name, g)| {
        let window = BoundaryWindow::new(g, 3, 3);
        let monos = monomials_up_to(g, 3);
        let mut mismatches = 0;
        for a in &monos {
            for b in &monos {
                if !pi_consistency(g, &window, a, b) {
                    mismatches += 1;
                }
            }
        }
        ensure!(mismatches == 0, "{name}: {mismatches} mismatches over {} pairs", monos.len().pow(2));
        Ok(())
    });
    report(2, "monomial products agree with bisection products for all pairs of length <= 3", outcome);
}

// Criterion 3 ---------------------------------------------------------------

#[test]
fn criterion_03_a2_classification() {
    let outcome = (|| {
        let g = fixtures::a2();
        let simple = classify_simple(&g, &Rationals, 2, &[Rationals.from_i64(1)], &[]);
        let finite: Vec<&SimpleEntry> = simple.families.iter().filter(|e| e.dim().is_some()).collect();
        ensure!(finite.len() == 1 && finite[0].dim() == Some(2), "finite simples {finite:?}");
        let graded = classify_graded(&g, 4);
        let sinks: Vec<&GradedFamily> =
            graded.families.iter().filter(|f| matches!(f, GradedFamily::SinkFamily { .. })).collect();
        ensure!(sinks.len() == 1, "sink families {sinks:?}");
        ensure!(
            matches!(sinks[0], GradedFamily::SinkFamily { dim: lpa_core::rep::Dimension::Finite(2), .. }),
            "sink family {:?}",
            sinks[0]
        );
        // Oracle: the paths ending at v are v and f.
        let lpa = Lpa::new(&g, Rationals);
        let m = module(&lpa, finite[0].module().unwrap());
        let w = m.basis(5).map_err(|e| e.to_string())?;
        ensure!(w.len() == 2, "basis has {} elements", w.len());
        let s = simplicity_probe(&m, 5).map_err(|e| e.to_string())?;
        ensure!(s.verdict == SimplicityVerdict::Simple, "verdict {:?}", s.verdict);
        Ok(())
    })();
    report(3, "A2 has one finite-dimensional simple, of dimension 2, and it is simple", outcome);
}

// Criterion 4 ---------------------------------------------------------------

/// Monic irreducible polynomials over F2 of degree 1..=3 other than t: all
/// linear ones, and in degrees 2 and 3 those without a root. Bit i is the
/// coefficient of t^i.
fn brute_irreducibles_f2() -> Vec<(usize, u32)> {
    let eval = |p: u32, x: u32| (0..4).filter(|i| p >> i & 1 == 1).map(|i| x.pow(i)).sum::<u32>() % 2;
    let mut out = Vec::new();
    for d in 1..=3usize {
        for low in 0..(1u32 << d) {
            let p = low | 1 << d;
            if p == 0b10 {
                continue;
            }
            if d == 1 || (eval(p, 0) != 0 && eval(p, 1) != 0) {
                out.push((d, p));
            }
        }
    }
    out
}

#[test]
fn criterion_04_toeplitz_over_f2() {
    let outcome = (|| {
        let g = fixtures::toeplitz();
        let f2 = PrimeField::new(2).unwrap();
        let report = classify_simple(&g, &f2, 3, &[], &[]);
        ensure!(report.complete, "list over F2 should be complete");
        let mut cycle_dims = Vec::new();
        for e in &report.families {
            match e {
                SimpleEntry::CycleSimple { cycle, dim, orbit_size, .. } => {
                    ensure!(cycle == "e" && *orbit_size == 1, "unexpected entry {e:?}");
                    cycle_dims.push(*dim);
                }
                SimpleEntry::SinkSimple { .. } => return Err(format!("unexpected finite sink entry {e:?}")),
                SimpleEntry::InfiniteDimFlagged { .. } => {}
            }
        }
        ensure!(cycle_dims == vec![1, 2, 3, 3], "dims {cycle_dims:?}");
        let brute: Vec<usize> = brute_irreducibles_f2().iter().map(|(d, _)| *d).collect();
        ensure!(brute == cycle_dims, "brute-force irreducible degrees {brute:?}");
        ensure!(
            report
                .families
                .iter()
                .any(|e| matches!(e, SimpleEntry::InfiniteDimFlagged { base, .. } if base == "v")),
            "V_[v] not flagged"
        );
        let lpa = Lpa::new(&g, f2);
        let m = module(&lpa, "chen:v");
        ensure!(!m.basis(6).map_err(|e| e.to_string())?.exact, "V_[v] window claims to be exact");
        Ok(())
    })();
    report(4, "Toeplitz over F2, degree <= 3: dims 1, 2, 3, 3 and V_[v] infinite", outcome);
}

// Criterion 5 ---------------------------------------------------------------

#[test]
fn criterion_05_triv_certificate() {
    let outcome = (|| {
        let g = fixtures::a2();
        let lpa = Lpa::new(&g, Rationals);
        let a = TwistVector::parse(&g, &Rationals, "f=3").map_err(|e| e.to_string())?;
        let x = BoundaryPath::parse(&g, "v").unwrap();
        let cert = verify_triv_iso(&lpa, &x, &a, 4, None).map_err(|e| e.to_string())?;
        ensure!(cert.pass, "certificate fails: {:?}", cert.checks);
        let names: BTreeSet<&str> = cert.checks.iter().map(|c| c.name.as_str()).collect();
        for needed in ["psi after phi is the identity", "phi after psi is the identity", "degree preserved", "equivariance"] {
            ensure!(names.contains(needed), "missing check {needed}");
        }
        // Equivariance ran over every monomial with |μ|, |ν| <= 3 and both basis elements.
        let eq = cert.checks.iter().find(|c| c.name == "equivariance").unwrap();
        ensure!(eq.checked == monomials_up_to(&g, 3).len() * 2, "equivariance checked {} cases", eq.checked);
        let bad = verify_triv_iso(&lpa, &x, &a, 4, Some(TrivCorruption::DropMu)).map_err(|e| e.to_string())?;
        ensure!(!bad.pass, "corrupted map passed");
        ensure!(bad.checks.iter().any(|c| c.name == "equivariance" && !c.pass), "corruption not caught by equivariance");
        Ok(())
    })();
    report(5, "Ind_v(K) is graded isomorphic to the twisted Chen module on A2 with a_f = 3", outcome);
}

// Criterion 6 ---------------------------------------------------------------

#[test]
fn criterion_06_twisted_isomorphisms() {
    let outcome = (|| {
        for g in [fixtures::r1(), fixtures::toeplitz()] {
            let lpa = Lpa::new(&g, Rationals);
            let c = ClosedPath::parse(&g, "e").unwrap();
            for a in [1, 2, -1] {
                let cert = verify_twist_iso(&lpa, &c, &NSpec::Ka(Rationals.from_i64(a)), 4).map_err(|e| e.to_string())?;
                ensure!(cert.pass, "Ka({a}) fails: {:?}", cert.checks);
            }
            let f2 = PrimeField::new(2).unwrap();
            let lpa2 = Lpa::new(&g, f2);
            let f = Polynomial::parse(&f2, "t^2+t+1").unwrap();
            let cert = verify_twist_iso(&lpa2, &c, &NSpec::QuotField(f), 4).map_err(|e| e.to_string())?;
            ensure!(cert.pass, "quot(t^2+t+1) fails: {:?}", cert.checks);

            for a in [1, 2, -1] {
                for b in [1, 2, -1] {
                    let ma = module(&lpa, &format!("chen:(e):e={a}"));
                    let mb = module(&lpa, &format!("chen:(e):e={b}"));
                    let (wa, wb) = (ma.basis(4).unwrap(), mb.basis(4).unwrap());
                    let dim = intertwiner_space(&ma, &wa, &mb, &wb, None).map_err(|e| e.to_string())?.len();
                    ensure!(dim == usize::from(a == b), "Hom(V^{a}, V^{b}) has dimension {dim}");
                }
                let t_minus_a = Polynomial::linear(&Rationals, &Rationals.from_i64(a)).format(&Rationals);
                let ext = module(&lpa, &format!("chen-ext:e:{t_minus_a}"));
                let tw = module(&lpa, &format!("chen:(e):e={a}"));
                let (we, wt) = (ext.basis(4).unwrap(), tw.basis(4).unwrap());
                let dim = intertwiner_space(&ext, &we, &tw, &wt, None).map_err(|e| e.to_string())?.len();
                ensure!(dim == 1, "Hom(V^(t-{a}), V^{a}) has dimension {dim}");
            }
        }
        Ok(())
    })();
    report(6, "twisted and extension Chen modules are induced; Hom dimensions 0 or 1", outcome);
}

// Criterion 7 ---------------------------------------------------------------

#[test]
fn criterion_07_restriction_of_induction() {
    let outcome = (|| {
        let g = fixtures::a2();
        let lpa = Lpa::new(&g, Rationals);
        let s = spec(&g, &Rationals, "ind:v:triv");
        let cert = verify_res_ind(&lpa, &s, 4, 3).map_err(|e| e.to_string())?;
        ensure!(cert.pass, "A2: {:?}", cert.checks);
        let m = Module::new(&lpa, s).unwrap();
        let r = restrict(&m, &m.basis(4).unwrap(), m.point(), 3).map_err(|e| e.to_string())?;
        ensure!(r.dim() == 1, "A2 restriction has dimension {}", r.dim());

        let g = fixtures::toeplitz();
        let lpa = Lpa::new(&g, Rationals);
        for a in [2, -1] {
            let s = spec(&g, &Rationals, &format!("ind:(e):ka({a})"));
            ensure!(verify_res_ind(&lpa, &s, 4, 3).map_err(|e| e.to_string())?.pass, "Toeplitz ka({a})");
            let m = Module::new(&lpa, s).unwrap();
            let r = restrict(&m, &m.basis(4).unwrap(), m.point(), 3).map_err(|e| e.to_string())?;
            let expected = Matrix::from_rows(vec![vec![Rationals.from_i64(a)]], 1);
            ensure!(r.generator == expected, "generator {:?}", r.generator);
        }
        let f2 = PrimeField::new(2).unwrap();
        let lpa = Lpa::new(&g, f2);
        let s = spec(&g, &f2, "ind:(e):quot(t^2+t+1)");
        ensure!(verify_res_ind(&lpa, &s, 4, 3).map_err(|e| e.to_string())?.pass, "Toeplitz quot");
        let m = Module::new(&lpa, s).unwrap();
        let r = restrict(&m, &m.basis(4).unwrap(), m.point(), 3).map_err(|e| e.to_string())?;
        // A 2x2 matrix with minimal polynomial f of degree 2 is similar to companion(f).
        let f = Polynomial::parse(&f2, "t^2+t+1").unwrap();
        ensure!(r.dim() == 2, "dimension {}", r.dim());
        ensure!(r.generator.minimal_polynomial(&f2) == f, "minimal polynomial differs");
        ensure!(r.steps <= 3, "took {} steps", r.steps);
        Ok(())
    })();
    report(7, "Res_x(Ind_x(N)) recovers N within 3 idempotent steps", outcome);
}

// Criterion 8 ---------------------------------------------------------------

#[test]
fn criterion_08_graded_simple_not_simple() {
    let outcome = (|| {
        let g = fixtures::r1();
        let lpa = Lpa::new(&g, Rationals);
        let m = module(&lpa, "ind:(e):laurent(0)");
        let bound = 4;
        let w = m.basis(bound).unwrap();
        for d in -(bound as i64)..=bound as i64 {
            let count = w.elements().iter().filter(|b| m.grade_of(b).unwrap() == d).count();
            ensure!(count == 1, "degree {d} has dimension {count} in the window");
        }
        let s = simplicity_probe(&m, bound).map_err(|e| e.to_string())?;
        ensure!(s.verdict == SimplicityVerdict::GradedSimpleNotSimple, "verdict {:?}", s.verdict);
        let kernel = s.checks.iter().find(|c| c.name == "nonzero kernel vector");
        ensure!(kernel.is_some_and(|c| c.pass), "kernel witness {kernel:?}");
        ensure!(s.checks.iter().all(|c| c.pass), "checks {:?}", s.checks);
        let c = ClosedPath::parse(&g, "e").unwrap();
        let cert = verify_nvc_iso(&lpa, &c, 3).map_err(|e| e.to_string())?;
        ensure!(cert.pass, "N_vc certificate: {:?}", cert.checks);
        Ok(())
    })();
    report(8, "the Laurent module on R1 is graded simple but maps onto V^(t-1) with a kernel", outcome);
}

// Criterion 9 ---------------------------------------------------------------

/// Number of isomorphism classes among `laurent(m)` for the given shifts.
fn laurent_classes(g: &Graph, cycle: &str, shifts: &[i64]) -> Result<usize, String> {
    let lpa = Lpa::new(g, Rationals);
    let mut reps: Vec<i64> = Vec::new();
    for &m in shifts {
        let a = spec(g, &Rationals, &format!("ind:({cycle}):laurent({m})"));
        let mut found = false;
        for &r in &reps {
            let b = spec(g, &Rationals, &format!("ind:({cycle}):laurent({r})"));
            let d = graded_iso_check(&lpa, &a, &b, 3).map_err(|e| e.to_string())?;
            if !d.witness.iter().all(|c| c.pass) {
                return Err(format!("witness fails for {m} vs {r}: {:?}", d.witness));
            }
            found |= d.isomorphic;
        }
        if !found {
            reps.push(m);
        }
    }
    Ok(reps.len())
}

#[test]
fn criterion_09_graded_isomorphism_criterion() {
    let outcome = (|| {
        let g = fixtures::three_cycle();
        let shifts: Vec<i64> = (-3..=5).collect();
        ensure!(laurent_classes(&g, "e1.e2.e3", &[0, 1, 2])? == 3, "m = 0, 1, 2 not pairwise distinct");
        ensure!(laurent_classes(&g, "e1.e2.e3", &shifts)? == 3, "shifts mod 3 not identified");
        let lpa = Lpa::new(&g, Rationals);
        for (m, m2) in [(0, 3), (1, -2), (2, 5)] {
            let a = spec(&g, &Rationals, &format!("ind:(e1.e2.e3):laurent({m})"));
            let b = spec(&g, &Rationals, &format!("ind:(e2.e3.e1):laurent({m2})"));
            // Rotating the base point shifts the lag by one.
            let d = graded_iso_check(&lpa, &a, &b, 3).map_err(|e| e.to_string())?;
            let lags = tail_lags(
                &BoundaryPath::parse(&g, "(e1.e2.e3)").unwrap(),
                &BoundaryPath::parse(&g, "(e2.e3.e1)").unwrap(),
            );
            ensure!(d.isomorphic == lags.contains(m2 - m), "{m} vs rotated {m2}");
        }
        let g = fixtures::r1();
        ensure!(laurent_classes(&g, "e", &[-2, -1, 0, 1, 2, 3])? == 1, "R1 shifts not all identified");
        Ok(())
    })();
    report(9, "three Laurent classes on the 3-cycle, one on R1", outcome);
}

// Criterion 10 --------------------------------------------------------------

/// First `len` edges of a boundary path (fewer for a finite path).
fn word(g: &Graph, x: &BoundaryPath, len: usize) -> Path {
    (0..=len).rev().find_map(|l| x.initial_segment(g, l)).unwrap()
}

/// Lags `a - b` with `x = μp`, `y = νp`, `|μ| = a <= bound`, `|ν| = b <= bound`,
/// found by comparing the tails directly.
fn brute_lags(g: &Graph, x: &BoundaryPath, y: &BoundaryPath, bound: usize) -> BTreeSet<i64> {
    let horizon = 4 * bound;
    let wx = word(g, x, horizon + bound);
    let wy = word(g, y, horizon + bound);
    let mut out = BTreeSet::new();
    for a in 0..=bound.min(wx.len()) {
        for b in 0..=bound.min(wy.len()) {
            let (tx, ty) = (&wx.edges()[a..], &wy.edges()[b..]);
            let same = match (x.is_rational(), y.is_rational()) {
                (false, false) => tx == ty && wx.rng() == wy.rng(),
                (true, true) => {
                    let n = horizon.min(tx.len()).min(ty.len());
                    tx[..n] == ty[..n]
                }
                _ => false,
            };
            if same {
                out.insert(a as i64 - b as i64);
            }
        }
    }
    out
}

#[test]
fn criterion_10_lag_sets() {
    let outcome = (|| {
        for (g, c) in [(fixtures::r1(), "e"), (fixtures::two_cycle(), "e1.e2"), (fixtures::three_cycle(), "e1.e2.e3")] {
            let x = BoundaryPath::periodic(&g, &ClosedPath::parse(&g, c).unwrap());
            let n = c.split('.').count() as i64;
            ensure!(tail_lags(&x, &x) == LagSet::Coset { k0: 0, n }, "lags of ({c}) with itself");
        }
        let bound = 4;
        for (name, g) in relation_graphs()
            .into_iter()
            .chain([("lasso", fixtures::lasso()), ("two cycle", fixtures::two_cycle()), ("two loops", fixtures::two_loops())])
        {
            let window = BoundaryWindow::new(&g, 2, 3);
            let points: Vec<&BoundaryPath> = window.all().collect();
            for x in &points {
                for y in &points {
                    let lags = tail_lags(x, y);
                    let brute = brute_lags(&g, x, y, bound);
                    let shown = || format!("{name}: {} vs {}", x.display(&g), y.display(&g));
                    match (x.is_rational(), y.is_rational()) {
                        (false, false) => ensure!(
                            matches!(lags, LagSet::Single(_) | LagSet::Empty),
                            "{}: sink lag set {lags}",
                            shown()
                        ),
                        (true, true) => {}
                        _ => ensure!(lags == LagSet::Empty, "{}: across the partition {lags}", shown()),
                    }
                    for &k in &brute {
                        ensure!(lags.contains(k), "{}: brute lag {k} missing from {lags}", shown());
                    }
                    // Conversely every small lag is realized by short prefixes.
                    let wide = brute_lags(&g, x, y, 3 * bound);
                    for k in -(bound as i64)..=bound as i64 {
                        ensure!(lags.contains(k) == wide.contains(&k), "{}: lag {k} disagrees with {lags}", shown());
                    }
                }
            }
        }
        Ok(())
    })();
    report(10, "lag sets: |c|Z on cycles, singletons for sinks, empty across kinds", outcome);
}
