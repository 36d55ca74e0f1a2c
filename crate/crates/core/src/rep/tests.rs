use super::*;
use crate::field::{PrimeField, Rationals};
use crate::graph::{fixtures, Graph};

fn spec<F: Field>(g: &Graph, field: &F, text: &str) -> ModuleSpec<F::Elem> {
    ModuleSpec::parse(g, field, text).unwrap()
}

fn module<'g, F: Field>(lpa: &Lpa<'g, F>, text: &str) -> Module<'g, F> {
    Module::new(lpa, spec(lpa.graph(), lpa.field(), text)).unwrap()
}

fn bp(g: &Graph, s: &str) -> BoundaryPath {
    BoundaryPath::parse(g, s).unwrap()
}

fn chen(g: &Graph, s: &str, coord: usize) -> BasisElement {
    BasisElement::ChenPath { path: bp(g, s), coord }
}

#[test]
fn a2_chen_basis_and_action() {
    let g = fixtures::a2();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "chen:v");
    let w = m.basis(4).unwrap();
    assert_eq!(w.dimension(), Dimension::Finite(2));
    assert!(w.position(&chen(&g, "v", 0)).is_some());
    assert!(w.position(&chen(&g, "f", 0)).is_some());

    let f = m.parse_vector("f").unwrap();
    assert_eq!(m.act(&lpa.parse("f^*").unwrap(), &f).unwrap(), m.parse_vector("v").unwrap());
    let v = m.parse_vector("v").unwrap();
    assert_eq!(m.act(&lpa.parse("f").unwrap(), &v).unwrap(), f);
    assert!(m.act(&lpa.parse("f^*").unwrap(), &v).unwrap().is_zero());

    assert_eq!(m.grade_of(&chen(&g, "f", 0)).unwrap(), 1);
    assert_eq!(m.grade_of(&chen(&g, "v", 0)).unwrap(), 0);
}

#[test]
fn shifted_grades_move_down() {
    let g = fixtures::a2();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "chen:v@2");
    assert_eq!(m.grade_of(&chen(&g, "f", 0)).unwrap(), -1);
}

#[test]
fn rational_chen_is_not_gradable() {
    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "chen:(e)");
    assert!(matches!(m.grade_of(&chen(&g, "(e)", 0)), Err(RepError::NotGradable(_))));
}

#[test]
fn twisted_loop_acts_by_scalar() {
    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "chen:(e):e=5");
    let x = m.parse_vector("(e)").unwrap();
    let y = m.act(&lpa.parse("e").unwrap(), &x).unwrap();
    assert_eq!(m.format_vector(&y), "5 (e)");
    let z = m.act(&lpa.parse("e^*").unwrap(), &y).unwrap();
    assert_eq!(z, x);
}

#[test]
fn toeplitz_extension_module() {
    let g = fixtures::toeplitz();
    let f2 = PrimeField::new(2).unwrap();
    let lpa = Lpa::new(&g, f2);
    let m = module(&lpa, "chen-ext:e:t^2+t+1");
    let w = m.basis(4).unwrap();
    assert_eq!(w.dimension(), Dimension::Finite(2));
    // e multiplies the coefficient by the class of t.
    let x0 = m.parse_vector("(e)#0").unwrap();
    assert_eq!(m.act(&lpa.parse("e").unwrap(), &x0).unwrap(), m.parse_vector("(e)#1").unwrap());
    let x1 = m.parse_vector("(e)#1").unwrap();
    assert_eq!(m.act(&lpa.parse("e").unwrap(), &x1).unwrap(), m.parse_vector("(e)#0 + (e)#1").unwrap());
    assert!(m.grade_of(&chen(&g, "(e)", 0)).is_err());
}

#[test]
fn bad_moduli_are_rejected() {
    let g = fixtures::toeplitz();
    let f2 = PrimeField::new(2).unwrap();
    let lpa = Lpa::new(&g, f2);
    for f in ["t", "t^2+1", "2t+1", "1"] {
        let s = ModuleSpec::parse(&g, lpa.field(), &format!("chen-ext:e:{f}"));
        assert!(s.is_err() || Module::new(&lpa, s.unwrap()).is_err(), "{f}");
    }
}

#[test]
fn nvc_on_r1() {
    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "nvc:e");
    let x = m.parse_vector("e e e^*").unwrap();
    assert_eq!(m.degrees(&x).unwrap(), vec![1]);
    let w = m.basis(3).unwrap();
    assert!(!w.exact);
    // Each degree in [-3, 3] has exactly one basis monomial e^i (e^j)*.
    for d in -3..=3 {
        let count = w.elements().iter().filter(|b| m.grade_of(b).unwrap() == d).count();
        assert_eq!(count, 1, "degree {d}");
    }
    // e e* = v in the algebra, so it cannot be a basis element.
    assert!(m.parse_vector("e^*").is_ok());
    assert_eq!(m.act(&lpa.parse("e").unwrap(), &m.parse_vector("e^*").unwrap()).unwrap(), m.parse_vector("v").unwrap());
}

#[test]
fn nvc_needs_a_cycle_without_exits() {
    let g = fixtures::rose2();
    let lpa = Lpa::new(&g, Rationals);
    assert!(Module::new(&lpa, spec(&g, &Rationals, "nvc:e")).is_err());
}

#[test]
fn coefficient_kinds_match_the_base() {
    let g = fixtures::toeplitz();
    let lpa = Lpa::new(&g, Rationals);
    assert!(Module::new(&lpa, spec(&g, &Rationals, "ind:f:ka(2)")).is_err());
    assert!(Module::new(&lpa, spec(&g, &Rationals, "ind:(e):triv")).is_err());
    assert!(Module::new(&lpa, spec(&g, &Rationals, "ind:(e):ka(0)")).is_err());
    assert!(Module::new(&lpa, spec(&g, &Rationals, "ind:f:triv(3)")).is_ok());
}

#[test]
fn out_of_window_is_an_error() {
    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "nvc:e");
    let w = m.basis(1).unwrap();
    let e = Monomial::real(crate::path::Path::parse(&g, "e").unwrap());
    assert!(matches!(m.matrix(&e, &w), Err(RepError::OutOfWindow(_))));
}

#[test]
fn restrictions() {
    let g = fixtures::a2();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "chen:v");
    let w = m.basis(4).unwrap();
    let r = restrict(&m, &w, &bp(&g, "v"), 10).unwrap();
    assert_eq!(r.dim(), 1);
    assert_eq!(m.from_coords(&w, &r.basis[0]), m.parse_vector("v").unwrap());

    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "chen:(e):e=7");
    let w = m.basis(4).unwrap();
    let r = restrict(&m, &w, &bp(&g, "(e)"), 10).unwrap();
    assert_eq!(r.generator, Matrix::from_rows(vec![vec![Rationals.from_i64(7)]], 1));

    let g = fixtures::toeplitz();
    let f2 = PrimeField::new(2).unwrap();
    let lpa = Lpa::new(&g, f2);
    let m = module(&lpa, "chen-ext:e:t^2+t+1");
    let w = m.basis(4).unwrap();
    let r = restrict(&m, &w, &bp(&g, "(e)"), 10).unwrap();
    assert_eq!(r.dim(), 2);
    let f = Polynomial::parse(&f2, "t^2+t+1").unwrap();
    assert_eq!(r.generator.minimal_polynomial(&f2), f);
}

#[test]
fn restriction_waits_for_late_branching() {
    // Over the chain, images of vv* and of the full path agree but the walk
    // still reaches the end of the path.
    let g = fixtures::chain();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "chen:v");
    let w = m.basis(4).unwrap();
    let r = restrict(&m, &w, &bp(&g, "f.g"), 10).unwrap();
    assert_eq!(r.dim(), 1);
    assert_eq!(m.from_coords(&w, &r.basis[0]), m.parse_vector("f.g").unwrap());
    assert!(r.steps >= 3);
}

#[test]
fn hom_dimensions() {
    let g = fixtures::a2();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "chen:v");
    let w = m.basis(4).unwrap();
    assert_eq!(intertwiner_space(&m, &w, &m, &w, None).unwrap().len(), 1);
    assert_eq!(intertwiner_space(&m, &w, &m, &w, Some(0)).unwrap().len(), 1);
    assert_eq!(intertwiner_space(&m, &w, &m, &w, Some(1)).unwrap().len(), 0);

    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let a = module(&lpa, "chen:(e):e=2");
    let b = module(&lpa, "chen:(e):e=3");
    let wa = a.basis(3).unwrap();
    let wb = b.basis(3).unwrap();
    assert_eq!(intertwiner_space(&a, &wa, &b, &wb, None).unwrap().len(), 0);
    assert_eq!(intertwiner_space(&a, &wa, &a, &wa, None).unwrap().len(), 1);

    // K[t]/(t - a) is one-dimensional with t acting by a.
    let ext = module(&lpa, "chen-ext:e:t-2");
    let we = ext.basis(3).unwrap();
    assert_eq!(intertwiner_space(&ext, &we, &a, &wa, None).unwrap().len(), 1);
}

#[test]
fn hom_rejects_different_graphs() {
    let g1 = fixtures::a2();
    let g2 = fixtures::r1();
    let l1 = Lpa::new(&g1, Rationals);
    let l2 = Lpa::new(&g2, Rationals);
    let a = module(&l1, "chen:v");
    let b = module(&l2, "chen:(e)");
    let (wa, wb) = (a.basis(2).unwrap(), b.basis(2).unwrap());
    assert!(matches!(intertwiner_space(&a, &wa, &b, &wb, None), Err(RepError::GraphMismatch)));
}

#[test]
fn triv_iso_certificates() {
    let g = fixtures::a2();
    let lpa = Lpa::new(&g, Rationals);
    let x = bp(&g, "v");
    let one = TwistVector::trivial(&g, &Rationals);
    assert!(verify_triv_iso(&lpa, &x, &one, 4, None).unwrap().pass);
    let three = TwistVector::parse(&g, &Rationals, "f=3").unwrap();
    let cert = verify_triv_iso(&lpa, &x, &three, 4, None).unwrap();
    assert!(cert.pass, "{cert:?}");
    let bad = verify_triv_iso(&lpa, &x, &three, 4, Some(TrivCorruption::DropMu)).unwrap();
    assert!(!bad.pass);
    assert!(bad.checks.iter().any(|c| c.name == "equivariance" && !c.pass));

    // Base at f: the ν-factor matters.
    let x = bp(&g, "f");
    assert!(verify_triv_iso(&lpa, &x, &three, 4, None).unwrap().pass);
    let bad = verify_triv_iso(&lpa, &x, &three, 4, Some(TrivCorruption::DropNuInverse)).unwrap();
    assert!(!bad.pass);
}

#[test]
fn twist_iso_certificates() {
    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let c = ClosedPath::parse(&g, "e").unwrap();
    let cert = verify_twist_iso(&lpa, &c, &NSpec::Ka(Rationals.from_i64(4)), 4).unwrap();
    assert!(cert.pass, "{cert:?}");
    assert_eq!(cert.window.source_size, 1);

    let g = fixtures::toeplitz();
    let lpa = Lpa::new(&g, Rationals);
    let c = ClosedPath::parse(&g, "e").unwrap();
    assert!(verify_twist_iso(&lpa, &c, &NSpec::Ka(Rationals.from_i64(-2)), 4).unwrap().pass);

    let f2 = PrimeField::new(2).unwrap();
    let lpa = Lpa::new(&g, f2);
    let f = Polynomial::parse(&f2, "t^2+t+1").unwrap();
    let cert = verify_twist_iso(&lpa, &c, &NSpec::QuotField(f), 4).unwrap();
    assert!(cert.pass, "{cert:?}");
    assert_eq!(cert.window.source_size, 2);

    let g = fixtures::three_cycle_with_exit();
    let f3 = PrimeField::new(3).unwrap();
    let lpa = Lpa::new(&g, f3);
    let c = ClosedPath::parse(&g, "e2.e3.e1").unwrap();
    let f = Polynomial::parse(&f3, "t^2+1").unwrap();
    let cert = verify_twist_iso(&lpa, &c, &NSpec::QuotField(f), 4).unwrap();
    assert!(cert.pass, "{cert:?}");
    assert_eq!(cert.window.source_size, 6);
}

#[test]
fn nvc_iso_certificates() {
    for (g, c) in [(fixtures::r1(), "e"), (fixtures::lasso(), "e"), (fixtures::two_cycle(), "e1.e2")] {
        let lpa = Lpa::new(&g, Rationals);
        let c = ClosedPath::parse(&g, c).unwrap();
        let cert = verify_nvc_iso(&lpa, &c, 3).unwrap();
        assert!(cert.pass, "{cert:?}");
    }
    let g = fixtures::rose2();
    let lpa = Lpa::new(&g, Rationals);
    let c = ClosedPath::parse(&g, "e").unwrap();
    assert!(verify_nvc_iso(&lpa, &c, 3).is_err());
}

#[test]
fn res_ind_certificates() {
    let g = fixtures::a2();
    let lpa = Lpa::new(&g, Rationals);
    let cert = verify_res_ind(&lpa, &spec(&g, &Rationals, "ind:v:triv"), 4, 20).unwrap();
    assert!(cert.pass, "{cert:?}");
    let cert = verify_res_ind(&lpa, &spec(&g, &Rationals, "ind:f:triv(2)@1"), 4, 20).unwrap();
    assert!(cert.pass, "{cert:?}");

    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let s = spec(&g, &Rationals, "ind:(e):ka(3)");
    assert!(verify_res_ind(&lpa, &s, 4, 20).unwrap().pass);
    let m = Module::new(&lpa, s).unwrap();
    let w = m.basis(4).unwrap();
    let r = restrict(&m, &w, m.point(), 20).unwrap();
    assert_eq!(r.generator, Matrix::from_rows(vec![vec![Rationals.from_i64(3)]], 1));

    let g = fixtures::toeplitz();
    let f2 = PrimeField::new(2).unwrap();
    let lpa = Lpa::new(&g, f2);
    assert!(verify_res_ind(&lpa, &spec(&g, &f2, "ind:(e):quot(t^2+t+1)"), 4, 20).unwrap().pass);
    assert!(verify_res_ind(&lpa, &spec(&g, &f2, "ind:(e):laurent(0)"), 4, 20).is_err());
}

#[test]
fn graded_iso_decisions() {
    let g = fixtures::a2();
    let lpa = Lpa::new(&g, Rationals);
    // Ind_f(K(m)) is Ind_v(K(m + 1)): the lag from f to v is 1.
    let d = graded_iso_check(&lpa, &spec(&g, &Rationals, "ind:f:triv(0)"), &spec(&g, &Rationals, "ind:v:triv(1)"), 4)
        .unwrap();
    assert!(d.isomorphic, "{d:?}");
    assert_eq!(d.lag, Some(1));
    assert!(d.witness.iter().all(|c| c.pass), "{d:?}");
    let d = graded_iso_check(&lpa, &spec(&g, &Rationals, "ind:f:triv(0)"), &spec(&g, &Rationals, "ind:v:triv(0)"), 4)
        .unwrap();
    assert!(!d.isomorphic);
    assert!(d.witness.iter().all(|c| c.pass), "{d:?}");
    // Chen modules convert to their induced forms.
    let d = graded_iso_check(&lpa, &spec(&g, &Rationals, "chen:v"), &spec(&g, &Rationals, "ind:f:triv(-1)"), 4)
        .unwrap();
    assert!(d.isomorphic, "{d:?}");

    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let d = graded_iso_check(
        &lpa,
        &spec(&g, &Rationals, "ind:(e):laurent(0)"),
        &spec(&g, &Rationals, "ind:(e):laurent(1)"),
        3,
    )
    .unwrap();
    assert!(d.isomorphic, "{d:?}");
    assert!(d.witness.iter().all(|c| c.pass), "{d:?}");

    let g = fixtures::three_cycle();
    let lpa = Lpa::new(&g, Rationals);
    let a = spec(&g, &Rationals, "ind:(e1.e2.e3):laurent(0)");
    let b = spec(&g, &Rationals, "ind:(e1.e2.e3):laurent(1)");
    let d = graded_iso_check(&lpa, &a, &b, 3).unwrap();
    assert!(!d.isomorphic);
    assert!(d.witness.iter().all(|c| c.pass), "{d:?}");
    let c = spec(&g, &Rationals, "ind:(e1.e2.e3):laurent(3)");
    assert!(graded_iso_check(&lpa, &a, &c, 3).unwrap().isomorphic);
    let nvc = spec(&g, &Rationals, "nvc:e1.e2.e3");
    assert!(graded_iso_check(&lpa, &a, &nvc, 3).unwrap().isomorphic);

    let g = fixtures::two_loops();
    let lpa = Lpa::new(&g, Rationals);
    let d = graded_iso_check(&lpa, &spec(&g, &Rationals, "nvc:e"), &spec(&g, &Rationals, "nvc:g"), 3).unwrap();
    assert!(!d.isomorphic);
}

#[test]
fn simplicity() {
    let g = fixtures::a2();
    let lpa = Lpa::new(&g, Rationals);
    let s = simplicity_probe(&module(&lpa, "chen:v"), 4).unwrap();
    assert_eq!(s.verdict, SimplicityVerdict::Simple);

    let g = fixtures::toeplitz();
    let f2 = PrimeField::new(2).unwrap();
    let lpa = Lpa::new(&g, f2);
    let s = simplicity_probe(&module(&lpa, "chen-ext:e:t+1"), 4).unwrap();
    assert_eq!(s.verdict, SimplicityVerdict::Simple);
    let s = simplicity_probe(&module(&lpa, "chen-ext:e:t^2+t+1"), 4).unwrap();
    assert_eq!(s.verdict, SimplicityVerdict::Simple);

    let g = fixtures::three_cycle_with_exit();
    let lpa = Lpa::new(&g, Rationals);
    let s = simplicity_probe(&module(&lpa, "chen-ext:e1.e2.e3:t^2+1"), 4).unwrap();
    assert_eq!(s.verdict, SimplicityVerdict::Simple, "{s:?}");

    let g = fixtures::r1();
    let lpa = Lpa::new(&g, Rationals);
    let s = simplicity_probe(&module(&lpa, "ind:(e):laurent(0)"), 3).unwrap();
    assert_eq!(s.verdict, SimplicityVerdict::GradedSimpleNotSimple, "{s:?}");
    let s = simplicity_probe(&module(&lpa, "nvc:e"), 3).unwrap();
    assert_eq!(s.verdict, SimplicityVerdict::GradedSimpleNotSimple, "{s:?}");
}

#[test]
fn spec_text_round_trips() {
    let g = fixtures::toeplitz();
    let f3 = PrimeField::new(3).unwrap();
    for text in [
        "chen:f",
        "chen:(e):e=2",
        "chen-ext:e:t^2+1",
        "ind:f:triv(2)@-1",
        "ind:(e):ka(2)",
        "ind:(e):quot(t^2+1)",
        "ind:(e):laurent(0)@3",
    ] {
        let s = spec(&g, &f3, text);
        assert_eq!(s.format(&g, &f3), text);
    }
    let g = fixtures::lasso();
    let s = spec(&g, &f3, "nvc:e");
    assert_eq!(s.format(&g, &f3), "nvc:e");
}

#[test]
fn vector_text_round_trips() {
    let g = fixtures::lasso();
    let lpa = Lpa::new(&g, Rationals);
    let m = module(&lpa, "ind:(e):laurent(0)");
    let v = m.parse_vector("2 h(e)@1#-2 - 1/2 (e)@0#3").unwrap();
    assert_eq!(m.parse_vector(&m.format_vector(&v)).unwrap(), v);
    let n = module(&lpa, "nvc:e");
    let v = n.parse_vector("h e^* - 3 e").unwrap();
    assert_eq!(n.parse_vector(&n.format_vector(&v)).unwrap(), v);

    let g = fixtures::toeplitz();
    let f2 = PrimeField::new(2).unwrap();
    let lpa = Lpa::new(&g, f2);
    let m = module(&lpa, "chen-ext:e:t^2+t+1");
    let v = m.parse_vector("(e)#0 + (e)#1").unwrap();
    assert_eq!(m.format_vector(&v), "(e)#0 + (e)#1");
    assert!(m.parse_vector("f#0").is_err());
}
