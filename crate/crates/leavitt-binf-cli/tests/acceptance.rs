//! Acceptance gate: ten end-to-end checks, each printing one pass/fail
//! line and holding a wall-clock budget.

use std::process::Command;
use std::time::{Duration, Instant};

use leavitt_binf::binfverify::{
    check_brace_axioms, check_rho_morphism, theta_trees, HatBrace, SgBrace,
};
use leavitt_binf::hatcomplex::cohomology_dims;
use leavitt_binf::leavitt::{
    derivation_d, derivation_squared_is_zero, dtensor_equals, dtensor_mul_left,
    dtensor_mul_right, enumerate_monomials_up_to, mul, LeavittElement, LeavittMonomial,
};
use leavitt_binf::quiver::{ArrowId, Path};
use leavitt_binf::report::SuiteReport;
use leavitt_binf::sgcomplex::{
    apply_layers, bar_table, brace_sg, kappa_table, Layer, SgElement, SgTerm, Slot, SlotComb,
    Tail,
};
use leavitt_binf::transfer::{check_binf_morphism, check_retract_suite, check_transfer_suite};
use leavitt_binf::{parse_quiver, Field, Quiver};

const BIN: &str = env!("CARGO_BIN_EXE_leavitt-binf");

fn load(name: &str) -> Quiver {
    let path = format!("{}/../../quivers/{}", env!("CARGO_MANIFEST_DIR"), name);
    parse_quiver(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn quiver_path(name: &str) -> String {
    format!("{}/../../quivers/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn conclude(tag: &str, ok: bool, started: Instant, budget_secs: u64) {
    let elapsed = started.elapsed();
    let within = elapsed <= Duration::from_secs(budget_secs);
    println!(
        "{}: {} ({:.3?} of {}s budget)",
        tag,
        if ok && within { "pass" } else { "FAIL" },
        elapsed,
        budget_secs
    );
    assert!(ok, "{}: check failed", tag);
    assert!(within, "{}: exceeded {}s budget ({:?})", tag, budget_secs, elapsed);
}

fn all_pass(suites: &[SuiteReport]) -> bool {
    suites.iter().all(|s| s.passed() && s.instances > 0)
}

#[test]
fn acceptance_01_worked_brace_example_and_bridge() {
    let started = Instant::now();
    let expr = "s^-1 b0*.b1*.b2*.b3*.a5.a4.a3.a2.a1 \
                { s^-1 c0*.c1*.d2.b3.b2 , s^-1 a4*.a5*.d2*.d3*.e3.e2.e1 , \
                s^-1 a2*.a3*.e1*.e2*.f2.f1 }";
    let out = Command::new(BIN)
        .args(["--quiver", &quiver_path("parallel_paths.quiver"), "brace", expr])
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let ok = out.status.code() == Some(0)
        && text.contains("value: s^-1 b0*.b1*.c0*.c1*.d3*.e3.f2.f1.a1\n")
        && text.contains(
            "parallel form: -> b0 -> b1 -> c0 -> c1 -> d3 <- e3 <- f2 <- f1 <- a1 [shifted]\n",
        )
        && text.contains("rho bridge: ok\n");
    conclude("01 worked-brace-example", ok, started, 1);
}

fn worked_terms(q: &Quiver) -> (SgTerm, SgTerm, SgTerm, SgTerm, SgTerm) {
    let path = |names: &[&str]| {
        Path::from_arrows(q, names.iter().map(|n| q.arrow_id(n).unwrap()).collect()).unwrap()
    };
    let term = |gamma: &[&str], gamma_prime: &[&str]| {
        SgTerm::new(q, path(gamma), path(gamma_prime), true).unwrap()
    };
    (
        term(&["a1", "a2", "a3", "a4", "a5"], &["b0", "b1", "b2", "b3"]),
        term(&["b2", "b3", "d2"], &["c0", "c1"]),
        term(&["e1", "e2", "e3"], &["a4", "a5", "d2", "d3"]),
        term(&["f1", "f2"], &["a2", "a3", "e1", "e2"]),
        term(&["a1", "f1", "f2", "e3"], &["b0", "b1", "c0", "c1", "d3"]),
    )
}

#[test]
fn acceptance_02_kappa_transport_sign_bridge() {
    let started = Instant::now();
    let q = load("parallel_paths.quiver");
    let f = Field::Q;
    let (x, y1, y2, y3, spliced) = worked_terms(&q);
    let arrows =
        |names: &[&str]| -> Vec<ArrowId> { names.iter().map(|n| q.arrow_id(n).unwrap()).collect() };
    let table = |t: &SgTerm| kappa_table(&q, &SgElement::term(f, t.clone())).unwrap();

    // Leading transport signs of the five terms.
    let sign_of = |t: &SgTerm| -> i64 {
        let tab = table(t);
        let key: Vec<ArrowId> = t.gamma.arrows.iter().rev().copied().collect();
        let comb = tab.table.get(&key).unwrap();
        assert_eq!(comb.terms.len(), 1);
        let c = comb.terms.values().next().unwrap();
        if c.is_one() {
            1
        } else {
            -1
        }
    };
    let signs_ok = sign_of(&x) == -1
        && sign_of(&y1) == -1
        && sign_of(&y2) == 1
        && sign_of(&y3) == -1
        && sign_of(&spliced) == 1;

    // Interleaved layer composite on the transported side.
    let bar = |t: &SgTerm| bar_table(&table(t));
    let layers = [
        Layer { left: 1, map: bar(&y1), right: 2 },
        Layer { left: 2, map: table(&x), right: 0 },
        Layer { left: 0, map: bar(&y2), right: 3 },
        Layer { left: 1, map: bar(&y3), right: 1 },
    ];
    let input =
        SlotComb::word(f, arrows(&["e3", "f2", "f1", "a1"]).into_iter().map(Slot::S).collect());
    let composite = apply_layers(&layers, &input);
    let mut expected_word: Vec<Slot> =
        arrows(&["d3", "c1", "c0", "b1"]).into_iter().map(Slot::S).collect();
    expected_word.push(Slot::Lam(Tail::Arrow(q.arrow_id("b0").unwrap())));
    let mut expected = SlotComb::zero(f);
    expected.add_term(expected_word, f.from_i64(-1));
    let composite_ok = composite == expected;

    // The transported brace value is minus the composite.
    let host = SgElement::term(f, x);
    let args = [SgElement::term(f, y1), SgElement::term(f, y2), SgElement::term(f, y3)];
    let braced = brace_sg(&q, &host, &args).unwrap();
    let braced_ok = braced == SgElement::term(f, spliced.clone());
    let value = table(&spliced).table.get(&arrows(&["e3", "f2", "f1", "a1"])).cloned();
    let bridge_ok = value == Some(composite.scale(&f.from_i64(-1)));

    conclude(
        "02 kappa-transport-bridge",
        signs_ok && composite_ok && braced_ok && bridge_ok,
        started,
        1,
    );
}

#[test]
fn acceptance_03_brace_axiom_suites() {
    let started = Instant::now();
    let mut ok = true;
    for name in ["loop.quiver", "two_cycle.quiver"] {
        let q = load(name);
        for field in [Field::Q, Field::Fp(2)] {
            let hat = HatBrace { q: &q, field };
            ok &= all_pass(&check_brace_axioms(&hat, 2, 3).unwrap());
            let sg = SgBrace { q: &q, field };
            ok &= all_pass(&check_brace_axioms(&sg, 2, 3).unwrap());
        }
    }
    conclude("03 brace-axiom-suites", ok, started, 60);
}

#[test]
fn acceptance_04_comparison_map_is_a_strict_isomorphism() {
    let started = Instant::now();
    let mut ok = true;
    for name in ["loop.quiver", "two_cycle.quiver"] {
        let q = load(name);
        for field in [Field::Q, Field::Fp(2)] {
            ok &= all_pass(&check_rho_morphism(&q, field, 2, 3).unwrap());
        }
    }
    conclude("04 comparison-map-isomorphism", ok, started, 30);
}

#[test]
fn acceptance_05_retract_identities() {
    let started = Instant::now();
    let q = load("loop.quiver");
    let suites = check_retract_suite(&q, Field::Q, 3).unwrap();
    conclude("05 retract-identities", suites.len() == 5 && all_pass(&suites), started, 60);
}

#[test]
fn acceptance_06_transferred_structure() {
    let started = Instant::now();
    let q = load("loop.quiver");
    let suites = check_transfer_suite(&q, Field::Q, 3, 3).unwrap();
    conclude("06 transferred-structure", suites.len() == 3 && all_pass(&suites), started, 120);
}

#[test]
fn acceptance_07_comparison_identity_grid() {
    let started = Instant::now();
    let q = load("loop.quiver");
    let mut ok = true;
    for (p, qn) in [(1, 1), (1, 2), (2, 1)] {
        let report = check_binf_morphism(&q, Field::Q, p, qn, 2, 3).unwrap();
        ok &= report.passed() && report.instances > 0;
    }
    conclude("07 comparison-identity-grid", ok, started, 300);
}

#[test]
fn acceptance_08_composition_tree_counts() {
    let started = Instant::now();
    let counts: Vec<usize> = (1..=5).map(|k| theta_trees(k).len()).collect();
    let mut ok = counts == [1, 1, 2, 5, 14];
    let renders = |k: usize| -> Vec<String> {
        theta_trees(k).iter().map(|t| t.render()).collect()
    };
    ok &= renders(2) == ["M^tr_{1,1}"];
    ok &= renders(3) == ["M^tr_{1,2}", "M^tr_{1,1} \u{2218} (1 \u{2297} M^tr_{1,1})"];
    ok &= renders(4)
        == [
            "M^tr_{1,3}",
            "M^tr_{1,2} \u{2218} (1 \u{2297} M^tr_{1,1} \u{2297} 1)",
            "M^tr_{1,2} \u{2218} (1 \u{2297} 1 \u{2297} M^tr_{1,1})",
            "M^tr_{1,1} \u{2218} (1 \u{2297} M^tr_{1,2})",
            "M^tr_{1,1} \u{2218} (1 \u{2297} M^tr_{1,1} \u{2218} (1 \u{2297} M^tr_{1,1}))",
        ];
    conclude("08 composition-tree-counts", ok, started, 1);
}

#[test]
fn acceptance_09_cohomology_table() {
    let started = Instant::now();
    let q = load("loop.quiver");
    let rational = cohomology_dims(&q, Field::Q, -3, 3, 4).unwrap();
    let modular = cohomology_dims(&q, Field::Fp(2), -3, 3, 4).unwrap();
    let ok = rational.len() == 7
        && rational.iter().all(|r| r.dim == 1 && r.stabilized)
        && modular.len() == 7
        && modular.iter().all(|r| r.dim == 2 && r.stabilized);
    conclude("09 cohomology-table", ok, started, 10);
}

#[test]
fn acceptance_10_derivation_identities() {
    let started = Instant::now();
    let f = Field::Q;
    let mut ok = true;
    for name in ["loop.quiver", "two_cycle.quiver"] {
        let q = load(name);
        let mut pool: Vec<LeavittMonomial> =
            q.vertices().map(LeavittMonomial::idempotent).collect();
        pool.extend(enumerate_monomials_up_to(&q, 3, false));
        for x in &pool {
            let xe = LeavittElement::monomial(f, x.clone());
            ok &= derivation_squared_is_zero(&q, &xe).unwrap();
            let dx = derivation_d(&q, &xe);
            for y in &pool {
                let ye = LeavittElement::monomial(f, y.clone());
                let lhs = derivation_d(&q, &mul(&q, &xe, &ye));
                let rhs = dtensor_mul_right(&q, &dx, &ye)
                    .add(&dtensor_mul_left(&q, &xe, &derivation_d(&q, &ye)).scale(&f.sign(x.degree())));
                ok &= dtensor_equals(&q, &lhs, &rhs).unwrap();
            }
        }
    }
    conclude("10 derivation-identities", ok, started, 10);
}
