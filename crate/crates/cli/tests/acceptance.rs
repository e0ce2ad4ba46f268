//! The acceptance criteria, each checked exactly and reported as PASS or FAIL.
//! Run with `cargo test -p fixlocus-cli --test acceptance -- --nocapture` to
//! see the table.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};

use common::{cli, corpus_subject};
use fixlocus::automorphism::{
    detect_order, eigen_factor, fixed_hypersurface_part, jacobian_and_classify, Automorphism, FixedPart, Order,
    PolynomialMap, Specialness, TameGenerator, DEFAULT_ITER_BOUND, DEFAULT_ORDER_DEGREE_CAP,
    DEFAULT_ROOT_OF_UNITY_BOUND,
};
use fixlocus::factor::{irreducible_multivariate, Irreducibility, DEFAULT_DEGREE_CAP};
use fixlocus::groebner::buchberger;
use fixlocus::poly::{gcd, rat, RationalMatrix};
use fixlocus::random::Sampler;
use fixlocus::theorem::{
    check_fix_equals_hypersurface, check_smooth, fiber_shift_holds, verdict_finite_order, verify_ruled_witness,
    ReportOptions, SmoothMode, TheoremId, VerdictStatus, FIBER_SHIFT_POINTS, WITNESS_ATTEMPTS,
};
use fixlocus::{Polynomial, TermOrder};
use fixlocus_cli::dsl::{parse_document, print_document};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn certified(name: &str) -> Automorphism {
    corpus_subject(name).automorphism().expect("corpus maps are certified").clone()
}

fn hypersurface(f: &Automorphism) -> Result<Polynomial, String> {
    match fixed_hypersurface_part(f.forward()) {
        FixedPart::Hypersurface(h) => Ok(h),
        other => Err(format!("expected a fixed hypersurface, got {other:?}")),
    }
}

fn parse_poly(vars: &str, expr: &str) -> Polynomial {
    let doc = parse_document(&format!("ring {vars}\nmap p = ({expr}, 0, 0)\n")).unwrap();
    match &doc.items[0] {
        fixlocus_cli::dsl::Item::Map { components, .. } => components[0].clone(),
        _ => unreachable!(),
    }
}

fn nagata_specialness() -> Outcome {
    for (name, quadric) in [("nagata_v1", "x^2 - y*z"), ("nagata_v2", "x*z + y^2")] {
        let f = certified(name);
        let det = f.forward().jacobian_determinant();
        ensure!(det == Polynomial::one(3), "{name}: Jacobian determinant {det}");
        let h = hypersurface(&f)?;
        ensure!(h == parse_poly("x, y, z", quadric).normalized(), "{name}: hypersurface part {h}");
        let c = eigen_factor(&f, &h).map_err(|e| e.to_string())?;
        ensure!(c == rat(1), "{name}: eigen constant {c}");
        ensure!(h.compose(f.forward().components()).unwrap() == h, "{name}: h o f != h");
    }
    Ok(())
}

fn singular_cone() -> Outcome {
    for name in ["nagata_v1", "nagata_v2"] {
        let h = hypersurface(&certified(name))?;
        ensure!(!check_smooth(&h, SmoothMode::Smooth).unwrap(), "{name}: cone reported smooth");
        ensure!(!check_smooth(&h, SmoothMode::SuperSmooth).unwrap(), "{name}: cone reported super-smooth");
    }
    Ok(())
}

fn nonspecial_fixed_hypersurfaces() -> Outcome {
    for (name, lambda) in [("scale_z", 2), ("linear_eps", -1)] {
        let f = certified(name);
        let h = hypersurface(&f)?;
        ensure!(check_smooth(&h, SmoothMode::Smooth).unwrap(), "{name}: not smooth");
        ensure!(check_fix_equals_hypersurface(&f) == Some(true), "{name}: Fix != V(h)");
        let irr = irreducible_multivariate(&h, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
        ensure!(!matches!(irr, Irreducibility::Reducible(_)), "{name}: reducible");
        let c = eigen_factor(&f, &h).map_err(|e| e.to_string())?;
        ensure!(c == rat(lambda), "{name}: eigen constant {c}, expected {lambda}");
    }
    Ok(())
}

fn supersmooth_and_fiber_shift() -> Outcome {
    let f = certified("scale_z");
    let h = hypersurface(&f)?;
    let lambda = f.jacobian_constant().clone();
    ensure!(lambda == rat(2), "Jacobian {lambda}");
    ensure!(
        jacobian_and_classify(&f, DEFAULT_ROOT_OF_UNITY_BOUND)
            == Specialness::NonSpecial { lambda: lambda.clone(), lambda_order: None },
        "lambda classified as a root of unity"
    );
    ensure!(check_smooth(&h, SmoothMode::SuperSmooth).unwrap(), "not super-smooth");
    ensure!(fiber_shift_holds(&f, &h, &lambda, 1), "fiber shift fails");
    let mut s = Sampler::new(0xf1be);
    for _ in 0..FIBER_SHIFT_POINTS {
        let p = s.point(3);
        let lhs = h.evaluate_at(&f.forward().apply(&p));
        ensure!(lhs == &lambda * h.evaluate_at(&p), "h(f(p)) != 2 h(p) at {p:?}");
    }
    Ok(())
}

fn finite_order_nonspecial() -> Outcome {
    let f = certified("linear_eps");
    let order = detect_order(f.forward(), DEFAULT_ITER_BOUND, DEFAULT_ORDER_DEGREE_CAP);
    ensure!(order == Order::Finite(2), "order {order:?}");
    let h = hypersurface(&f)?;
    ensure!(h == Polynomial::var(3, 0), "hypersurface {h}");
    let spec = jacobian_and_classify(&f, DEFAULT_ROOT_OF_UNITY_BOUND);
    ensure!(spec == Specialness::NonSpecial { lambda: rat(-1), lambda_order: Some(2) }, "{spec:?}");
    let v = verdict_finite_order(&f, &ReportOptions::default());
    ensure!(v.theorem == TheoremId::FiniteOrderNonspecial, "wrong verdict id");
    ensure!(v.status == VerdictStatus::Pass, "verdict {:?}: {}", v.status, v.reason);
    Ok(())
}

fn ruled_witnesses() -> Outcome {
    let mut covered = Vec::new();
    for name in fixlocus_cli::corpus::names() {
        let s = corpus_subject(name);
        let f = s.automorphism().unwrap();
        if !jacobian_and_classify(f, DEFAULT_ROOT_OF_UNITY_BOUND).is_special() || !matches!(fixed_hypersurface_part(f.forward()), FixedPart::Hypersurface(_)) {
            continue;
        }
        ensure!(!s.witnesses.is_empty(), "{name}: no stored witness");
        for w in &s.witnesses {
            let check = verify_ruled_witness(&w.witness, 1).map_err(|e| e.to_string())?;
            ensure!(check.image_in_target, "{name}/{}: image not in target", w.name);
            ensure!(check.nonconstant_in_t, "{name}/{}: constant in t", w.name);
            ensure!(check.dominant, "{name}/{}: rank deficient after {WITNESS_ATTEMPTS} seeds", w.name);
        }
        covered.push(name);
    }
    for required in ["nagata_v1", "nagata_v2", "triangular_r1", "triangular_r2"] {
        ensure!(covered.contains(&required), "{required} not checked");
    }
    Ok(())
}

fn checkers_not_vacuous() -> Outcome {
    let shear = certified("shear4");
    let h = hypersurface(&shear)?;
    ensure!(h == Polynomial::var(4, 2), "shear4 hypersurface part {h}");
    ensure!(check_fix_equals_hypersurface(&shear) == Some(false), "shear4: Fix reported equal to V(z)");
    let g = certified("example2_g");
    let part = fixed_hypersurface_part(g.forward());
    ensure!(part == FixedPart::Unit, "example2_g hypersurface part {part:?}");
    Ok(())
}

fn random_tame(s: &mut Sampler, n: usize, len: usize) -> Automorphism {
    let word = (0..len)
        .map(|_| {
            if s.int(0, 2) == 0 {
                loop {
                    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| s.int(-2, 2)).collect()).collect();
                    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                    let matrix = RationalMatrix::from_integers(&refs);
                    if !num_traits::Zero::is_zero(&matrix.determinant().unwrap()) {
                        let translation = (0..n).map(|_| rat(s.int(-3, 3))).collect();
                        break TameGenerator::Affine { matrix, translation };
                    }
                }
            } else {
                let target = s.index(n);
                let shift = s.polynomial(n, 2, 2);
                let shift = Polynomial::from_terms(
                    n,
                    shift
                        .terms()
                        .filter(|(m, _)| m.exponent(target) == 0)
                        .map(|(m, c)| (m.exponents().to_vec(), c.clone())),
                );
                TameGenerator::Elementary { target, shift }
            }
        })
        .collect();
    Automorphism::from_generators(n, word).unwrap()
}

fn schwartz_zippel(lhs: &Polynomial, rhs: &Polynomial, s: &mut Sampler) -> bool {
    (0..1000).all(|_| {
        let p = s.point(lhs.nvars());
        lhs.evaluate_at(&p) == rhs.evaluate_at(&p)
    })
}

fn kernel_properties() -> Outcome {
    let mut s = Sampler::new(0x0f1c_5eed);
    let mut points = Sampler::new(0x5a_2199);
    let n = 3;
    for case in 0..100 {
        let (a, b, c) = (s.polynomial(n, 3, 4), s.polynomial(n, 3, 4), s.polynomial(n, 3, 4));
        ensure!(&a + &b == &b + &a && &a * &b == &b * &a, "commutativity, case {case}");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "associativity, case {case}");
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        ensure!(lhs == rhs, "distributivity, case {case}");
        let v = case % n;
        let leibniz = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        ensure!((&a * &b).derivative(v) == leibniz, "Leibniz, case {case}");
        let images = [s.polynomial(n, 2, 3), s.polynomial(n, 2, 3), s.polynomial(n, 2, 3)];
        let sub = |p: &Polynomial| p.compose(&images).unwrap();
        ensure!(sub(&(&a * &b)) == &sub(&a) * &sub(&b), "substitution homomorphism, case {case}");
        if case < 10 {
            ensure!(schwartz_zippel(&lhs, &rhs, &mut points), "distributivity at points, case {case}");
            ensure!(schwartz_zippel(&(&a * &b).derivative(v), &leibniz, &mut points), "Leibniz at points, case {case}");
        }
    }
    for case in 0..200 {
        let (a, b) = (s.polynomial(2, 3, 3), s.polynomial(2, 3, 3));
        let common = s.polynomial(2, 2, 2);
        let (p, q) = (&a * &common, &b * &common);
        let g = gcd(&p, &q);
        ensure!(g.divides(&p) && g.divides(&q), "gcd does not divide, case {case}");
        ensure!(p.is_zero() || q.is_zero() || common.is_zero() || common.divides(&g), "gcd misses common factor, case {case}");
    }
    for case in 0..100 {
        let order = if case % 2 == 0 { TermOrder::grevlex() } else { TermOrder::lex() };
        let gens = [s.polynomial(n, 2, 3), s.polynomial(n, 2, 3)];
        let gb = buchberger(&gens, &order);
        let p = s.polynomial(n, 3, 4);
        let r = gb.normal_form(&p);
        ensure!(gb.normal_form(&r) == r, "normal form not idempotent, case {case}");
        let member = &(&gens[0] * &s.polynomial(n, 1, 2)) + &(&gens[1] * &s.polynomial(n, 1, 2));
        ensure!(gb.contains(&member), "combination of generators not a member, case {case}");
        ensure!(gb.contains(&(&p - &r)), "p - NF(p) not a member, case {case}");
    }
    for case in 0..50 {
        let (f, g) = (random_tame(&mut s, n, 2), random_tame(&mut s, n, 2));
        let (f, g) = (f.forward(), g.forward());
        let lhs = g.compose(f).unwrap().jacobian_determinant();
        let rhs = &g.jacobian_determinant().compose(f.components()).unwrap() * &f.jacobian_determinant();
        ensure!(lhs == rhs, "chain rule, case {case}");
        if case < 5 {
            ensure!(schwartz_zippel(&lhs, &rhs, &mut points), "chain rule at points, case {case}");
        }
    }
    let id = PolynomialMap::identity(n);
    ensure!(id.jacobian_determinant() == Polynomial::one(n), "identity Jacobian");
    Ok(())
}

fn round_trip_and_stability() -> Outcome {
    for e in fixlocus_cli::corpus::ENTRIES {
        let doc = parse_document(e.text).map_err(|err| format!("{}: {err}", e.name))?;
        let printed = print_document(&doc);
        ensure!(parse_document(&printed).as_ref() == Ok(&doc), "{}: parse(print(doc)) != doc", e.name);
        ensure!(print_document(&parse_document(&printed).unwrap()) == printed, "{}: printing unstable", e.name);
        let path = format!("{}/tests/golden/{}.json", env!("CARGO_MANIFEST_DIR"), e.name);
        let golden = std::fs::read_to_string(&path).map_err(|err| format!("{path}: {err}"))?;
        let source = format!("corpus:{}", e.name);
        let first = cli(&["analyze", &source, "--json", "--seed", "1"]);
        let second = cli(&["analyze", &source, "--json", "--seed", "1"]);
        ensure!(first.code == 0, "{}: exit {}", e.name, first.code);
        ensure!(first.stdout == second.stdout, "{}: JSON differs between runs", e.name);
        ensure!(first.stdout == golden, "{}: JSON differs from the golden file", e.name);
    }
    let a = cli(&["corpus", "run-all", "--json"]);
    let b = cli(&["corpus", "run-all", "--json"]);
    ensure!(a.code == 0 && a.stdout == b.stdout, "corpus run-all not stable");
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("Nagata maps are special with invariant quadric", nagata_specialness),
        ("the quadric cone is singular", singular_cone),
        ("non-special fixed hypersurfaces", nonspecial_fixed_hypersurfaces),
        ("super-smoothness and fiber shift", supersmooth_and_fiber_shift),
        ("finite order forces non-special", finite_order_nonspecial),
        ("ruled witnesses for special maps", ruled_witnesses),
        ("Fix(f) larger than V(h), and no hypersurface", checkers_not_vacuous),
        ("kernel property suites", kernel_properties),
        ("round trip and byte-identical output", round_trip_and_stability),
    ];
    let mut failures = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic.downcast_ref::<String>().cloned().or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {title}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
