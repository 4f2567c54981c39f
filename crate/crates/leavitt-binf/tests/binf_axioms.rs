use leavitt_binf::binfverify::{
    check_brace_axioms, check_opposite_involution, check_rho_morphism, check_theta_morphism,
    check_transpose_involution, gerstenhaber_checks, theta_trees, BraceAlgebra, HatBrace,
    SgBrace,
};
use leavitt_binf::{parse_quiver, Field, Quiver};

fn load(name: &str) -> Quiver {
    let path = format!("{}/../../quivers/{}", env!("CARGO_MANIFEST_DIR"), name);
    parse_quiver(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn catalan(n: usize) -> usize {
    let mut c = vec![0usize; n + 1];
    c[0] = 1;
    for i in 1..=n {
        for j in 0..i {
            c[i] += c[j] * c[i - 1 - j];
        }
    }
    c[n]
}

#[test]
fn two_copy_brace_axioms() {
    let q = load("loop.quiver");
    let alg = HatBrace { q: &q, field: Field::Q };
    for report in check_brace_axioms(&alg, 2, 3).unwrap() {
        assert!(
            report.passed(),
            "{}: {} failures of {}: {:?}",
            report.name,
            report.failures,
            report.instances,
            report.first_counterexample
        );
        assert!(report.instances > 0, "{}", report.name);
    }
    let q = load("two_cycle.quiver");
    let alg = HatBrace { q: &q, field: Field::fp(2).unwrap() };
    for report in check_brace_axioms(&alg, 2, 3).unwrap() {
        assert!(report.passed(), "{}: {:?}", report.name, report.first_counterexample);
    }
}

#[test]
fn parallel_brace_axioms() {
    let q = load("loop.quiver");
    let alg = SgBrace { q: &q, field: Field::Q };
    for report in check_brace_axioms(&alg, 2, 3).unwrap() {
        assert!(
            report.passed(),
            "{}: {} failures of {}: {:?}",
            report.name,
            report.failures,
            report.instances,
            report.first_counterexample
        );
    }
    let q = load("two_cycle.quiver");
    let alg = SgBrace { q: &q, field: Field::fp(2).unwrap() };
    for report in check_brace_axioms(&alg, 2, 3).unwrap() {
        assert!(report.passed(), "{}: {:?}", report.name, report.first_counterexample);
    }
}

#[test]
fn transpose_and_opposite_are_involutive() {
    let q = load("loop.quiver");
    let hat = HatBrace { q: &q, field: Field::Q };
    let report = check_transpose_involution(&hat, 1, 2).unwrap();
    assert!(report.passed(), "{:?}", report.first_counterexample);
    let report = check_opposite_involution(&hat, 1, 2).unwrap();
    assert!(report.passed(), "{:?}", report.first_counterexample);

    let sg = SgBrace { q: &q, field: Field::Q };
    let report = check_transpose_involution(&sg, 1, 2).unwrap();
    assert!(report.passed(), "{:?}", report.first_counterexample);
    let report = check_opposite_involution(&sg, 1, 2).unwrap();
    assert!(report.passed(), "{:?}", report.first_counterexample);
}

#[test]
fn composition_trees_count_and_print() {
    for k in 1..=8 {
        let trees = theta_trees(k);
        assert_eq!(trees.len(), catalan(k - 1), "arity {}", k);
        assert!(trees.iter().all(|t| t.size() == k), "arity {}", k);
    }

    let render = |k: usize| -> Vec<String> {
        theta_trees(k).iter().map(|t| t.render()).collect()
    };
    assert_eq!(render(2), ["M^tr_{1,1}"]);
    assert_eq!(
        render(3),
        ["M^tr_{1,2}", "M^tr_{1,1} \u{2218} (1 \u{2297} M^tr_{1,1})"]
    );
    assert_eq!(
        render(4),
        [
            "M^tr_{1,3}",
            "M^tr_{1,2} \u{2218} (1 \u{2297} M^tr_{1,1} \u{2297} 1)",
            "M^tr_{1,2} \u{2218} (1 \u{2297} 1 \u{2297} M^tr_{1,1})",
            "M^tr_{1,1} \u{2218} (1 \u{2297} M^tr_{1,2})",
            "M^tr_{1,1} \u{2218} (1 \u{2297} M^tr_{1,1} \u{2218} (1 \u{2297} M^tr_{1,1}))",
        ]
    );
}

#[test]
fn tree_family_is_a_candidate_morphism() {
    let q = load("loop.quiver");
    let hat = HatBrace { q: &q, field: Field::Q };
    let report = check_theta_morphism(&hat, 1, 3).unwrap();
    assert!(
        report.passed(),
        "{} failures of {}: {:?}",
        report.failures,
        report.instances,
        report.first_counterexample
    );

    let q2 = load("two_cycle.quiver");
    let hat_p = HatBrace { q: &q2, field: Field::Fp(2) };
    let report_p = check_theta_morphism(&hat_p, 1, 2).unwrap();
    assert!(report_p.passed(), "{:?}", report_p.first_counterexample);
}

#[test]
fn bracket_identities() {
    let q = load("loop.quiver");
    let hat = HatBrace { q: &q, field: Field::Q };
    for report in gerstenhaber_checks(&hat, 1).unwrap() {
        assert!(report.passed(), "{}: {:?}", report.name, report.first_counterexample);
        assert!(report.instances > 0);
    }
    let sg = SgBrace { q: &q, field: Field::fp(2).unwrap() };
    for report in gerstenhaber_checks(&sg, 1).unwrap() {
        assert!(report.passed(), "{}: {:?}", report.name, report.first_counterexample);
    }
}

#[test]
fn comparison_map_is_a_strict_isomorphism() {
    for (name, field) in [("loop.quiver", Field::Q), ("two_cycle.quiver", Field::fp(2).unwrap())]
    {
        let q = load(name);
        for report in check_rho_morphism(&q, field, 2, 2).unwrap() {
            assert!(
                report.passed(),
                "{} on {}: {} failures of {}: {:?}",
                report.name,
                name,
                report.failures,
                report.instances,
                report.first_counterexample
            );
            assert!(report.instances > 0);
        }
    }
}

#[test]
fn degrees_drive_the_reversed_brace() {
    // The reversed brace on a single argument only flips the sign.
    let q = load("loop.quiver");
    let hat = HatBrace { q: &q, field: Field::Q };
    let atoms = hat.atoms(1);
    for a in &atoms {
        for b in &atoms {
            let plain = hat.brace(a, std::slice::from_ref(b)).unwrap();
            let rev =
                leavitt_binf::binfverify::brace_transposed(&hat, a, std::slice::from_ref(b))
                    .unwrap();
            let expected = hat.scale_sign(&plain, 1);
            assert!(hat.equal(&rev, &expected).unwrap());
        }
    }
}
