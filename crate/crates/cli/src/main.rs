//! `lpa`: classification, module actions and verification suites for Leavitt
//! path algebras of graphs read from JSON files.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use lpa_core::algebra::{Lpa, TwistVector};
use lpa_core::classify::{self, SimpleEntry};
use lpa_core::field::{Field, FieldSpec, Polynomial};
use lpa_core::graph::Graph;
use lpa_core::path::{BoundaryPath, ClosedPath};
use lpa_core::rep::{self, Certificate, Check, Module, ModuleKind, ModuleSpec, TrivCorruption};
use lpa_core::with_field;

#[derive(Parser, Debug)]
#[command(name = "lpa", version, about = "Leavitt path algebras and their simple modules")]
struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the sampled suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Path-length bound for module windows.
    #[arg(long, global = true, default_value_t = 4)]
    window: usize,
    /// Coefficient field: Q, Fp, Fp[t]/(f) or Q[t]/(f).
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph file and summarize it.
    Validate { graph: PathBuf },
    /// List graded simple (with --graded) or finite-dimensional simple modules.
    Classify {
        graph: PathBuf,
        #[arg(long)]
        graded: bool,
        #[arg(long, default_value_t = 4)]
        cycles_up_to: usize,
        #[arg(long, default_value_t = 2)]
        poly_deg: usize,
        /// Scalars `a` giving the moduli `t - a` over infinite fields.
        #[arg(long = "sample", allow_hyphen_values = true)]
        samples: Vec<String>,
        /// Extra moduli to try.
        #[arg(long = "poly")]
        polys: Vec<String>,
    },
    /// Apply an algebra element to a module vector.
    Act {
        graph: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        elt: String,
        #[arg(long)]
        vec: String,
    },
    /// Run one verification suite.
    Verify(VerifyArgs),
    /// Dimensions of the finite-dimensional simple modules, from the graph
    /// and from module bases.
    Dims {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        poly_deg: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    TrivIso,
    TwistIso,
    NvcIso,
    ResInd,
    GradedIso,
    Simplicity,
    Hom,
    Axioms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Corrupt {
    DropMu,
    DropNuInverse,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: Suite,
    graph: PathBuf,
    /// Base point (triv-iso).
    #[arg(long)]
    at: Option<String>,
    /// Twist `e=a,...` (triv-iso).
    #[arg(long)]
    twist: Option<String>,
    /// Cycle (twist-iso, nvc-iso).
    #[arg(long)]
    cycle: Option<String>,
    /// Isotropy coefficients `ka(a)` or `quot(f)` (twist-iso).
    #[arg(long)]
    coeff: Option<String>,
    /// Module spec (res-ind, graded-iso, simplicity, hom, axioms).
    #[arg(long)]
    module: Option<String>,
    /// Second module spec (graded-iso, hom).
    #[arg(long)]
    other: Option<String>,
    /// Degree for graded homomorphisms (hom).
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<i64>,
    /// Break the map on purpose (triv-iso negative control).
    #[arg(long)]
    corrupt: Option<Corrupt>,
    /// Stabilization cap (res-ind).
    #[arg(long, default_value_t = 32)]
    cap: usize,
    /// Sample count (axioms).
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

/// Outcome of a command: JSON, a human rendering, and whether it passed.
struct Report {
    json: Value,
    text: String,
    pass: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, pass: true }
    }
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res<T> = Result<T, InputError>;

fn load_graph(path: &PathBuf) -> Res<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Graph::from_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn need<'a>(value: &'a Option<String>, flag: &str) -> Res<&'a str> {
    value.as_deref().ok_or_else(|| InputError(format!("--{flag} is required for this suite")))
}

fn render_checks(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("  {status} {} ({} checked)\n", c.name, c.checked));
        if let Some(why) = &c.counterexample {
            out.push_str(&format!("       {why}\n"));
        }
    }
    out
}

fn certificate(cert: Certificate) -> Res<Report> {
    let text = format!(
        "{}\n  statement: {}\n  window: bound {}, {} / {} basis elements\n{}result: {}\n",
        cert.claim,
        cert.statement,
        cert.window.bound,
        cert.window.source_size,
        cert.window.target_size,
        render_checks(&cert.checks),
        if cert.pass { "pass" } else { "FAIL" }
    );
    Ok(Report { json: serde_json::to_value(&cert)?, pass: cert.pass, text })
}

fn module<'g, F: Field>(lpa: &Lpa<'g, F>, text: &str) -> Res<Module<'g, F>> {
    Ok(Module::new(lpa, ModuleSpec::parse(lpa.graph(), lpa.field(), text)?)?)
}

fn classify_cmd<F: Field>(
    graph: &Graph,
    field: &F,
    graded: bool,
    cycles: usize,
    poly_deg: usize,
    samples: &[String],
    polys: &[String],
) -> Res<Report> {
    if graded {
        let r = classify::classify_graded(graph, cycles);
        return Ok(Report::ok(serde_json::to_value(&r)?, classify::render_graded(&r)));
    }
    let mut sample_elems = Vec::new();
    if samples.is_empty() {
        for a in [1, -1, 2] {
            sample_elems.push(field.from_i64(a));
        }
    }
    for s in samples {
        sample_elems.push(field.parse(s)?);
    }
    let extra: Vec<Polynomial<F::Elem>> = polys.iter().map(|p| Polynomial::parse(field, p)).collect::<Result<_, _>>()?;
    let r = classify::classify_simple(graph, field, poly_deg, &sample_elems, &extra);
    Ok(Report::ok(serde_json::to_value(&r)?, classify::render_simple(&r)))
}

fn dims_cmd<F: Field>(graph: &Graph, field: &F, poly_deg: usize, window: usize) -> Res<Report> {
    let lpa = Lpa::new(graph, field.clone());
    let samples = [field.from_i64(1), field.from_i64(-1), field.from_i64(2)];
    let r = classify::classify_simple(graph, field, poly_deg, &samples, &[]);
    let mut rows = Vec::new();
    let mut text = format!("{:<32} {:>7} {:>7}\n", "module", "oracle", "basis");
    let mut pass = true;
    for e in r.families.iter().filter(|e| e.dim().is_some()) {
        let spec = e.module().expect("finite entry");
        let oracle = classify::dimension_oracle(graph, field, e)?;
        let w = module(&lpa, spec)?.basis(window.max(graph.num_vertices() + 1))?;
        let basis = w.exact.then_some(w.len());
        let agree = basis == Some(oracle) && e.dim() == Some(oracle);
        pass &= agree;
        let shown = basis.map_or("?".to_string(), |b| b.to_string());
        text.push_str(&format!("{spec:<32} {oracle:>7} {shown:>7}{}\n", if agree { "" } else { "  MISMATCH" }));
        rows.push(json!({ "module": spec, "oracle": oracle, "basis": basis, "agree": agree }));
    }
    let flagged: Vec<&SimpleEntry> = r.families.iter().filter(|e| e.dim().is_none()).collect();
    for e in &flagged {
        if let SimpleEntry::InfiniteDimFlagged { base, .. } = e {
            text.push_str(&format!("{:<32} {:>7}\n", format!("V_[{base}]"), "inf"));
        }
    }
    Ok(Report { json: json!({ "entries": rows, "infinite": flagged, "pass": pass }), text, pass })
}

fn act_cmd<F: Field>(graph: &Graph, field: &F, spec: &str, elt: &str, vec: &str) -> Res<Report> {
    let lpa = Lpa::new(graph, field.clone());
    let m = module(&lpa, spec)?;
    let x = lpa.parse(elt)?;
    let v = m.parse_vector(vec)?;
    let out = m.act(&x, &v)?;
    let text = m.format_vector(&out);
    Ok(Report::ok(json!({ "module": spec, "element": lpa.format(&x), "vector": m.format_vector(&v), "result": text }), text + "\n"))
}

fn verify_cmd<F: Field>(graph: &Graph, field: &F, args: &VerifyArgs, window: usize, seed: u64) -> Res<Report> {
    let lpa = Lpa::new(graph, field.clone());
    match args.suite {
        Suite::TrivIso => {
            let x = BoundaryPath::parse(graph, need(&args.at, "at")?)?;
            let a = match &args.twist {
                Some(t) => TwistVector::parse(graph, field, t)?,
                None => TwistVector::trivial(graph, field),
            };
            let corruption = args.corrupt.map(|c| match c {
                Corrupt::DropMu => TrivCorruption::DropMu,
                Corrupt::DropNuInverse => TrivCorruption::DropNuInverse,
            });
            certificate(rep::verify_triv_iso(&lpa, &x, &a, window, corruption)?)
        }
        Suite::TwistIso => {
            let cycle = need(&args.cycle, "cycle")?;
            let spec = ModuleSpec::parse(graph, field, &format!("ind:({cycle}):{}", need(&args.coeff, "coeff")?))?;
            let ModuleKind::Induced { coeff, .. } = spec.kind else { unreachable!() };
            let c = ClosedPath::parse(graph, cycle)?;
            certificate(rep::verify_twist_iso(&lpa, &c, &coeff, window)?)
        }
        Suite::NvcIso => {
            let c = ClosedPath::parse(graph, need(&args.cycle, "cycle")?)?;
            certificate(rep::verify_nvc_iso(&lpa, &c, window)?)
        }
        Suite::ResInd => {
            let spec = ModuleSpec::parse(graph, field, need(&args.module, "module")?)?;
            certificate(rep::verify_res_ind(&lpa, &spec, window, args.cap)?)
        }
        Suite::GradedIso => {
            let a = ModuleSpec::parse(graph, field, need(&args.module, "module")?)?;
            let b = ModuleSpec::parse(graph, field, need(&args.other, "other")?)?;
            let d = rep::graded_iso_check(&lpa, &a, &b, window)?;
            let pass = d.witness.iter().all(|c| c.pass);
            let text = format!(
                "{}: {}\n{}",
                if d.isomorphic { "isomorphic" } else { "not isomorphic" },
                d.reason,
                render_checks(&d.witness)
            );
            Ok(Report { json: serde_json::to_value(&d)?, text, pass })
        }
        Suite::Simplicity => {
            let m = module(&lpa, need(&args.module, "module")?)?;
            let s = rep::simplicity_probe(&m, window)?;
            let pass = s.checks.iter().all(|c| c.pass) || s.verdict == rep::SimplicityVerdict::NotSimple;
            let verdict = serde_json::to_value(s.verdict)?;
            let text = format!("{}\n  {}\n{}", verdict.as_str().unwrap_or(""), s.witness, render_checks(&s.checks));
            Ok(Report { json: serde_json::to_value(&s)?, text, pass })
        }
        Suite::Hom => {
            let a = module(&lpa, need(&args.module, "module")?)?;
            let b = module(&lpa, need(&args.other, "other")?)?;
            let (wa, wb) = (a.basis(window)?, b.basis(window)?);
            let hom = rep::intertwiner_space(&a, &wa, &b, &wb, args.degree)?;
            let exact = wa.exact && wb.exact;
            let text = format!(
                "dim Hom = {}{}\n",
                hom.len(),
                if exact { "" } else { " (on the window only)" }
            );
            Ok(Report::ok(json!({ "dim": hom.len(), "degree": args.degree, "exact": exact }), text))
        }
        Suite::Axioms => {
            let m = module(&lpa, need(&args.module, "module")?)?;
            let w = m.basis(window)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut check = Check::new("(xy).m = x.(y.m)");
            let mut sample = || lpa.random_monomial(&mut rng, 2);
            for i in 0..args.samples {
                let (eta, theta) = (sample(), sample());
                let b = &w.elements()[i % w.len().max(1)];
                let v = rep::ModuleVector::basis(field, b.clone());
                let x = lpa.monomial(eta.clone());
                let y = lpa.monomial(theta.clone());
                let lhs = m.act(&lpa.mul(&x, &y), &v)?;
                let rhs = m.act(&x, &m.act(&y, &v)?)?;
                check.record(lhs == rhs, || {
                    format!(
                        "x = {}, y = {}, m = {}: {} vs {}",
                        eta.display(graph),
                        theta.display(graph),
                        m.format_basis(b),
                        m.format_vector(&lhs),
                        m.format_vector(&rhs)
                    )
                });
            }
            let pass = check.pass;
            let text = render_checks(std::slice::from_ref(&check));
            Ok(Report { json: json!({ "seed": seed, "checks": [check], "pass": pass }), text, pass })
        }
    }
}

fn run(cli: &Cli) -> Res<Report> {
    let field = cli.field.parse::<FieldSpec>()?.build()?;
    match &cli.command {
        Command::Validate { graph } => {
            let g = load_graph(graph)?;
            let r = g.validate();
            let text = format!(
                "{} vertices, {} edges\nsinks: {}\nregular: {}\n",
                r.vertices,
                r.edges,
                r.sinks.join(" "),
                r.regular.join(" ")
            );
            Ok(Report::ok(serde_json::to_value(&r)?, text))
        }
        Command::Classify { graph, graded, cycles_up_to, poly_deg, samples, polys } => {
            let g = load_graph(graph)?;
            with_field!(&field, |f| classify_cmd(&g, f, *graded, *cycles_up_to, *poly_deg, samples, polys))
        }
        Command::Act { graph, module, elt, vec } => {
            let g = load_graph(graph)?;
            with_field!(&field, |f| act_cmd(&g, f, module, elt, vec))
        }
        Command::Verify(args) => {
            let g = load_graph(&args.graph)?;
            with_field!(&field, |f| verify_cmd(&g, f, args, cli.window, cli.seed))
        }
        Command::Dims { graph, poly_deg } => {
            let g = load_graph(graph)?;
            with_field!(&field, |f| dims_cmd(&g, f, *poly_deg, cli.window))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
            } else {
                print!("{}", report.text);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
