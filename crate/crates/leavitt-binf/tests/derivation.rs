use leavitt_binf::leavitt::{
    derivation_d, derivation_squared_is_zero, dtensor_equals, dtensor_is_zero, dtensor_mul_left,
    dtensor_mul_right, enumerate_monomials_up_to, mul, DTensor, DTensorElement, LeavittElement,
    LeavittMonomial,
};
use leavitt_binf::quiver::Path;
use leavitt_binf::{parse_quiver, Field, Quiver};

fn load(name: &str) -> Quiver {
    let path = format!("{}/../../quivers/{}", env!("CARGO_MANIFEST_DIR"), name);
    parse_quiver(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn arrow_path(q: &Quiver, name: &str) -> Path {
    Path::of_arrow(q, q.arrow_id(name).unwrap())
}

#[test]
fn derivative_of_idempotent_vanishes() {
    let q = load("two_cycle.quiver");
    let e = LeavittElement::idempotent(Field::Q, q.vertex_id("v").unwrap());
    assert!(derivation_d(&q, &e).terms.is_empty());
}

#[test]
fn derivative_of_an_arrow() {
    let q = load("two_cycle.quiver");
    let f = Field::Q;
    let v = q.vertex_id("v").unwrap();
    let a = LeavittMonomial::real_path(&q, arrow_path(&q, "a"));
    let d = derivation_d(&q, &LeavittElement::monomial(f, a.clone()));

    // D(a) = -(a (x) s_v (x) e_v); the split point is the source of a.
    let mut expected = DTensorElement::zero(f);
    expected.add_term(
        DTensor { left: a, mid: v, right: LeavittMonomial::idempotent(v) },
        f.from_i64(-1),
    );
    assert_eq!(d, expected);
}

#[test]
fn derivative_of_a_ghost_arrow() {
    let q = load("two_cycle.quiver");
    let f = Field::Q;
    let v = q.vertex_id("v").unwrap();
    let a_star = LeavittMonomial::ghost_path(&q, arrow_path(&q, "a"));
    let d = derivation_d(&q, &LeavittElement::monomial(f, a_star.clone()));

    // D(a*) = -(e_v (x) s_v (x) a*).
    let mut expected = DTensorElement::zero(f);
    expected.add_term(
        DTensor { left: LeavittMonomial::idempotent(v), mid: v, right: a_star },
        f.from_i64(-1),
    );
    assert_eq!(d, expected);
}

#[test]
fn derivative_of_a_squared_loop() {
    let q = load("loop.quiver");
    let f = Field::Q;
    let v = q.vertex_id("v").unwrap();
    let a = q.arrow_id("a").unwrap();
    let single = LeavittMonomial::real_path(&q, Path::of_arrow(&q, a));
    let double =
        LeavittMonomial::real_path(&q, Path::from_arrows(&q, vec![a, a]).unwrap());
    let d = derivation_d(&q, &LeavittElement::monomial(f, double.clone()));

    // D(a^2) = -(a (x) s (x) a) + (a^2 (x) s (x) e).
    let mut expected = DTensorElement::zero(f);
    expected.add_term(
        DTensor { left: single.clone(), mid: v, right: single },
        f.from_i64(-1),
    );
    expected.add_term(
        DTensor { left: double, mid: v, right: LeavittMonomial::idempotent(v) },
        f.from_i64(1),
    );
    assert_eq!(d, expected);
}

fn test_pool(q: &Quiver, max_letters: usize) -> Vec<LeavittMonomial> {
    let mut pool: Vec<LeavittMonomial> =
        (0..q.vertex_count()).map(LeavittMonomial::idempotent).collect();
    pool.extend(enumerate_monomials_up_to(q, max_letters, false));
    pool
}

#[test]
fn leibniz_rule_holds_on_small_monomials() {
    for name in ["loop.quiver", "two_cycle.quiver"] {
        let q = load(name);
        let f = Field::Q;
        let pool = test_pool(&q, 3);
        for x in &pool {
            let xe = LeavittElement::monomial(f, x.clone());
            let dx = derivation_d(&q, &xe);
            for y in &pool {
                let ye = LeavittElement::monomial(f, y.clone());
                let dy = derivation_d(&q, &ye);
                let lhs = derivation_d(&q, &mul(&q, &xe, &ye));
                let rhs = dtensor_mul_right(&q, &dx, &ye)
                    .add(&dtensor_mul_left(&q, &xe, &dy).scale(&f.sign(x.degree())));
                assert!(
                    dtensor_equals(&q, &lhs, &rhs).unwrap(),
                    "{}: Leibniz fails on {} . {}",
                    name,
                    x.render(&q),
                    y.render(&q)
                );
            }
        }
    }
}

#[test]
fn tensor_zero_test_normalizes_each_slot() {
    let q = load("loop.quiver");
    let f = Field::Q;
    let v = q.vertex_id("v").unwrap();
    let a = q.arrow_id("a").unwrap();
    let a_up_a = LeavittMonomial::new(
        &q,
        Path::of_arrow(&q, a),
        Path::of_arrow(&q, a),
    )
    .unwrap();
    let e = LeavittMonomial::idempotent(v);

    // a*a (x) s (x) e and e (x) s (x) e agree slot-wise after raising.
    let mut lhs = DTensorElement::zero(f);
    lhs.add_term(DTensor { left: a_up_a.clone(), mid: v, right: e.clone() }, f.from_i64(1));
    let mut rhs = DTensorElement::zero(f);
    rhs.add_term(DTensor { left: e.clone(), mid: v, right: e.clone() }, f.from_i64(1));
    assert!(!lhs.sub(&rhs).terms.is_empty());
    assert!(dtensor_is_zero(&q, &lhs.sub(&rhs)).unwrap());

    // But the middle slot is only vertex-balanced: a (x) s (x) a* differs
    // from a a* (x) s (x) e even though a a* = e.
    let a_real = LeavittMonomial::real_path(&q, Path::of_arrow(&q, a));
    let a_ghost = LeavittMonomial::ghost_path(&q, Path::of_arrow(&q, a));
    let mut skew = DTensorElement::zero(f);
    skew.add_term(DTensor { left: a_real, mid: v, right: a_ghost }, f.from_i64(1));
    assert!(!dtensor_is_zero(&q, &skew.sub(&rhs)).unwrap());
}

#[test]
fn bimodule_actions_are_associative() {
    let q = load("two_cycle.quiver");
    let f = Field::Q;
    let pool = test_pool(&q, 2);
    let mut seed = DTensorElement::zero(f);
    for v in 0..q.vertex_count() {
        let e = LeavittMonomial::idempotent(v);
        seed.add_term(DTensor { left: e.clone(), mid: v, right: e }, f.from_i64(1));
    }
    for x in &pool {
        let xe = LeavittElement::monomial(f, x.clone());
        for y in &pool {
            let ye = LeavittElement::monomial(f, y.clone());
            let two_step = dtensor_mul_left(&q, &xe, &dtensor_mul_left(&q, &ye, &seed));
            let one_step = dtensor_mul_left(&q, &mul(&q, &xe, &ye), &seed);
            assert!(dtensor_equals(&q, &two_step, &one_step).unwrap());

            let two_step = dtensor_mul_right(&q, &dtensor_mul_right(&q, &seed, &xe), &ye);
            let one_step = dtensor_mul_right(&q, &seed, &mul(&q, &xe, &ye));
            assert!(dtensor_equals(&q, &two_step, &one_step).unwrap());
        }
    }
}

#[test]
fn derivative_squares_to_zero_on_small_monomials() {
    for name in ["loop.quiver", "two_cycle.quiver"] {
        let q = load(name);
        for field in [Field::Q, Field::fp(2).unwrap()] {
            for m in test_pool(&q, 3) {
                let x = LeavittElement::monomial(field, m.clone());
                assert!(
                    derivation_squared_is_zero(&q, &x).unwrap(),
                    "{}: D^2 != 0 on {}",
                    name,
                    m.render(&q)
                );
            }
        }
    }
}
