use leavitt_binf::binfverify::{check_a_infinity_morphism, AInfMorphism};
use leavitt_binf::hatcomplex::{cup_hat, delta_prime, hat_equals, hat_is_zero, HatElement};
use leavitt_binf::leavitt::{
    enumerate_monomials_up_to, equals, mul, LeavittElement, LeavittMonomial,
};
use leavitt_binf::quiver::Path;
use leavitt_binf::transfer::{
    bounded_equal, check_binf_morphism, check_retract_suite, check_transfer_suite, cup_cochain,
    differential_cochain, enumerate_tensors, homotopy_h, iota_pi_bar, is_idempotent_class, phi1,
    phi_k, phi_k_recursive, psi, transfer_m_k, CochainEvaluator, MonomialTensor,
};
use leavitt_binf::{parse_quiver, CalcError, Field, Quiver};

fn load(name: &str) -> Quiver {
    let path = format!("{}/../../quivers/{}", env!("CARGO_MANIFEST_DIR"), name);
    parse_quiver(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn path(q: &Quiver, names: &[&str], base: &str) -> Path {
    if names.is_empty() {
        Path::trivial(q.vertex_id(base).unwrap())
    } else {
        Path::from_arrows(q, names.iter().map(|n| q.arrow_id(n).unwrap()).collect()).unwrap()
    }
}

fn mono(q: &Quiver, ghost: &[&str], real: &[&str], base: &str) -> LeavittMonomial {
    LeavittMonomial::new(q, path(q, ghost, base), path(q, real, base)).unwrap()
}

fn hat_atoms(q: &Quiver, f: Field, max_letters: usize) -> Vec<HatElement> {
    let mut monos: Vec<LeavittMonomial> =
        (0..q.vertex_count()).map(LeavittMonomial::idempotent).collect();
    monos.extend(enumerate_monomials_up_to(q, max_letters, true));
    let mut out = Vec::new();
    for m in monos {
        let e = LeavittElement::monomial(f, m);
        out.push(HatElement::from_plain(e.clone()));
        out.push(HatElement::from_shifted(e));
    }
    out
}

fn shifted_atoms(q: &Quiver, f: Field, max_letters: usize) -> Vec<HatElement> {
    hat_atoms(q, f, max_letters)
        .into_iter()
        .filter(|x| x.plain.is_empty_form())
        .collect()
}

fn assert_extensionally_equal(
    q: &Quiver,
    lhs: &CochainEvaluator,
    rhs: &CochainEvaluator,
    max_letters: usize,
    what: &str,
) {
    let cex = bounded_equal(q, lhs, rhs, max_letters, 1_000_000).unwrap();
    assert!(cex.is_none(), "{}: {:?}", what, cex);
}

#[test]
fn tensor_construction_rules() {
    let q = load("two_cycle.quiver");
    let a = mono(&q, &[], &["a"], "w");
    let b = mono(&q, &[], &["b"], "v");
    let t = MonomialTensor::new(&q, vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(t.weight(), 2);
    assert_eq!(t.letters(), 2);
    assert_eq!(t.base, q.vertex_id("w").unwrap());
    assert_eq!(t.junction(1), q.vertex_id("v").unwrap());
    assert_eq!(t.right_corner(), q.vertex_id("w").unwrap());
    assert_eq!(t.render(&q), "s a (x) s b");
    assert_eq!(t.slice(1, 2).base, q.vertex_id("v").unwrap());

    // Mismatched corners refuse to chain.
    assert!(MonomialTensor::new(&q, vec![a.clone(), a.clone()]).is_none());

    // Factors representing corner idempotents die in the tensor factors.
    let diag = mono(&q, &["a"], &["a"], "v");
    assert!(is_idempotent_class(&q, &diag));
    assert!(MonomialTensor::new(&q, vec![diag]).is_none());
    let lp = load("loop.quiver");
    let round = mono(&lp, &["a", "a"], &["a", "a"], "v");
    assert!(is_idempotent_class(&lp, &round));
    let deep = mono(&lp, &["a"], &["a", "a"], "v");
    assert!(!is_idempotent_class(&lp, &deep));
}

#[test]
fn contraction_of_single_slots() {
    let q = load("loop.quiver");
    let f = Field::Q;
    // A bare arrow contracts into an idempotent first slot, which dies.
    let a = LeavittElement::monomial(f, mono(&q, &[], &["a"], "v"));
    assert!(iota_pi_bar(&q, &a).unwrap().is_empty());

    // The square leaves exactly one surviving splice with value -e.
    let aa = LeavittElement::monomial(f, mono(&q, &[], &["a", "a"], "v"));
    let splice = iota_pi_bar(&q, &aa).unwrap();
    assert_eq!(splice.len(), 1);
    let ((first, arrow), value) = splice.iter().next().unwrap();
    assert_eq!(*first, mono(&q, &[], &["a"], "v"));
    assert_eq!(q.arrow_name(*arrow), "a");
    let e = LeavittElement::idempotent(f, q.vertex_id("v").unwrap());
    assert_eq!(*value, e.neg());

    let sink = Quiver::new(&["u", "s"], &[("a", "u", "s")]).unwrap();
    let err = iota_pi_bar(&sink, &LeavittElement::zero(f)).unwrap_err();
    assert_eq!(err, CalcError::SinkQuiver { vertex: "s".into() });
}

#[test]
fn projection_retracts_the_section() {
    for name in ["loop.quiver", "two_cycle.quiver"] {
        let q = load(name);
        for x in hat_atoms(&q, Field::Q, 2) {
            let back = psi(&q, &phi1(&q, &x).unwrap());
            assert!(hat_equals(&q, &back, &x).unwrap(), "{}", name);
        }
    }
}

#[test]
fn section_values_on_arrows() {
    for name in ["loop.quiver", "two_cycle.quiver"] {
        let q = load(name);
        let f = Field::Q;
        for u in shifted_atoms(&q, f, 2) {
            let g = phi1(&q, &u).unwrap();
            for a in q.arrows() {
                let am = LeavittMonomial::real_path(&q, Path::of_arrow(&q, a));
                let Some(t) = MonomialTensor::new(&q, vec![am.clone()]) else {
                    continue;
                };
                let alpha = LeavittElement::monomial(f, am);
                let expected = mul(&q, &alpha, &u.shifted).neg();
                assert!(equals(&q, &g.eval(&t), &expected).unwrap(), "{}", name);
            }
        }
    }
}

#[test]
fn homotopy_kills_single_weights_and_arrow_tails() {
    let q = load("loop.quiver");
    let f = Field::Q;
    let atoms = hat_atoms(&q, f, 1);
    let zero = CochainEvaluator::zero(f, 0);
    for x in &atoms {
        let g = phi1(&q, x).unwrap();
        assert_extensionally_equal(&q, &homotopy_h(&q, &g), &zero, 3, "single weight");
    }
    // Any value vanishes when the last slot is a bare arrow.
    let mut pool: Vec<CochainEvaluator> = Vec::new();
    for x in &atoms {
        for y in &atoms {
            pool.push(cup_cochain(&q, &phi1(&q, x).unwrap(), &phi1(&q, y).unwrap()));
        }
    }
    let mut weights = std::collections::BTreeSet::new();
    for g in &pool {
        weights.extend(homotopy_h(&q, g).weights.clone());
    }
    for t in enumerate_tensors(&q, &weights, 3) {
        let last = match t.factors.last() {
            Some(m) => m,
            None => continue,
        };
        if !(last.letters() == 1 && last.degree() == 1) {
            continue;
        }
        for g in &pool {
            let val = homotopy_h(&q, g).eval(&t);
            assert!(equals(&q, &val, &LeavittElement::zero(f)).unwrap());
        }
    }
}

#[test]
fn homotopy_images_are_annihilated() {
    let q = load("loop.quiver");
    let f = Field::Q;
    let atoms = hat_atoms(&q, f, 1);
    let mut pool: Vec<CochainEvaluator> = Vec::new();
    for x in &atoms {
        pool.push(phi1(&q, x).unwrap());
    }
    for x in atoms.iter().take(3) {
        for y in atoms.iter().take(3) {
            pool.push(cup_cochain(&q, &phi1(&q, x).unwrap(), &phi1(&q, y).unwrap()));
        }
    }
    let zero = CochainEvaluator::zero(f, 0);
    for g1 in &pool {
        for g2 in &pool {
            let inner = cup_cochain(&q, g1, &homotopy_h(&q, g2));
            assert_extensionally_equal(
                &q,
                &homotopy_h(&q, &inner),
                &zero,
                3,
                "homotopy of homotopy image",
            );
            assert!(hat_is_zero(&q, &psi(&q, &inner)).unwrap());
        }
    }
}

#[test]
fn homotopy_equation_on_the_loop() {
    let q = load("loop.quiver");
    let f = Field::Q;
    let atoms = hat_atoms(&q, f, 1);
    let mut pool: Vec<CochainEvaluator> = Vec::new();
    for x in &atoms {
        pool.push(phi1(&q, x).unwrap());
        pool.push(differential_cochain(&q, &phi1(&q, x).unwrap()));
    }
    for x in atoms.iter().take(4) {
        for y in atoms.iter().take(4) {
            let cup = cup_cochain(&q, &phi1(&q, x).unwrap(), &phi1(&q, y).unwrap());
            pool.push(homotopy_h(&q, &cup));
            pool.push(cup);
        }
    }
    for g in &pool {
        let lhs = g.sub(&phi1(&q, &psi(&q, g)).unwrap());
        let rhs = differential_cochain(&q, &homotopy_h(&q, g))
            .add(&homotopy_h(&q, &differential_cochain(&q, g)));
        assert_extensionally_equal(&q, &lhs, &rhs, 3, "homotopy equation");
    }
}

#[test]
fn transferred_family_closed_form_matches_recursion() {
    let q = load("loop.quiver");
    let f = Field::Q;
    let args = shifted_atoms(&q, f, 2);
    for u1 in &args {
        for u2 in &args {
            let us = [u1.clone(), u2.clone()];
            let closed = phi_k(&q, &us).unwrap();
            let rec = phi_k_recursive(&q, &us).unwrap();
            assert_extensionally_equal(&q, &closed, &rec, 3, "pair");
        }
    }
    let small = shifted_atoms(&q, f, 1);
    for u1 in &small {
        for u2 in &small {
            for u3 in &small {
                let us = [u1.clone(), u2.clone(), u3.clone()];
                let closed = phi_k(&q, &us).unwrap();
                let rec = phi_k_recursive(&q, &us).unwrap();
                assert_extensionally_equal(&q, &closed, &rec, 3, "triple");
            }
        }
    }

    let tc = load("two_cycle.quiver");
    let args = shifted_atoms(&tc, f, 2);
    for u1 in &args {
        for u2 in &args {
            let us = [u1.clone(), u2.clone()];
            let closed = phi_k(&tc, &us).unwrap();
            let rec = phi_k_recursive(&tc, &us).unwrap();
            assert_extensionally_equal(&tc, &closed, &rec, 3, "two-cycle pair");
        }
    }
}

#[test]
fn transferred_products_collapse() {
    for name in ["loop.quiver", "two_cycle.quiver"] {
        let q = load(name);
        let f = Field::Q;
        let atoms = hat_atoms(&q, f, 2);
        for x in &atoms {
            let m1 = transfer_m_k(&q, std::slice::from_ref(x)).unwrap();
            assert!(hat_equals(&q, &m1, &delta_prime(&q, x)).unwrap(), "{}", name);
        }
        for x in &atoms {
            for y in &atoms {
                let m2 = transfer_m_k(&q, &[x.clone(), y.clone()]).unwrap();
                assert!(
                    hat_equals(&q, &m2, &cup_hat(&q, x, y)).unwrap(),
                    "{}: product of {} and {}",
                    name,
                    x.render(&q),
                    y.render(&q)
                );
            }
        }
        let small = hat_atoms(&q, f, 1);
        for x in &small {
            for y in &small {
                for z in &small {
                    let m3 = transfer_m_k(&q, &[x.clone(), y.clone(), z.clone()]).unwrap();
                    assert!(hat_is_zero(&q, &m3).unwrap(), "{}", name);
                }
            }
        }
    }
}

#[test]
fn transferred_family_is_a_homotopy_morphism() {
    let q = load("loop.quiver");
    let f = Field::Q;
    let data: AInfMorphism<HatElement, CochainEvaluator> = AInfMorphism {
        source_m: Box::new(|args| match args.len() {
            1 => Ok(delta_prime(&q, &args[0])),
            2 => Ok(cup_hat(&q, &args[0], &args[1])),
            _ => Ok(HatElement::zero(f)),
        }),
        map: Box::new(|args| phi_k(&q, args)),
        target_m1: Box::new(|g| Ok(differential_cochain(&q, g))),
        target_m2: Box::new(|g1, g2| Ok(cup_cochain(&q, g1, g2))),
        add: Box::new(|g1, g2| g1.add(g2)),
        scale_sign: Box::new(|g, e| g.scale_sign(e)),
        degree: Box::new(|x| x.degree().ok().flatten().unwrap_or(0)),
        equal: Box::new(|g1, g2| bounded_equal(&q, g1, g2, 3, 1_000_000)),
        render: Box::new(|x| x.render(&q)),
    };
    let atoms = hat_atoms(&q, f, 1);
    let report = check_a_infinity_morphism("transferred-family", &data, &atoms, 3).unwrap();
    assert!(
        report.passed(),
        "{} failures of {} instances: {:?}",
        report.failures,
        report.instances,
        report.first_counterexample
    );
    assert_eq!(report.instances, atoms.len() + atoms.len().pow(2) + atoms.len().pow(3));
}

#[test]
fn bundled_suites_pass() {
    let q = load("loop.quiver");
    let retract = check_retract_suite(&q, Field::Q, 3).unwrap();
    assert_eq!(retract.len(), 5);
    for r in &retract {
        assert!(r.passed(), "{}: {:?}", r.name, r.first_counterexample);
        assert!(r.instances > 0, "{}", r.name);
    }
    let transfer = check_transfer_suite(&q, Field::Q, 3, 3).unwrap();
    assert_eq!(transfer.len(), 3);
    for r in &transfer {
        assert!(r.passed(), "{}: {:?}", r.name, r.first_counterexample);
        assert!(r.instances > 0, "{}", r.name);
    }
    let sink = Quiver::new(&["u", "s"], &[("a", "u", "s")]).unwrap();
    assert!(check_retract_suite(&sink, Field::Q, 2).is_err());
}

#[test]
fn comparison_identity_smoke() {
    let q = load("loop.quiver");
    for (p, qn) in [(1, 1), (1, 2), (2, 1)] {
        let report = check_binf_morphism(&q, Field::Q, p, qn, 1, 2).unwrap();
        assert!(
            report.passed(),
            "p={} q={}: {:?}",
            p,
            qn,
            report.first_counterexample
        );
        assert!(report.instances > 0);
    }
    // Degenerate shapes hold vacuously and still count.
    let report = check_binf_morphism(&q, Field::Q, 0, 2, 1, 2).unwrap();
    assert!(report.passed());
    assert_eq!(report.instances, 1);
}
