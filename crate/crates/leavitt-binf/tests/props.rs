use leavitt_binf::leavitt::{enumerate_monomials_up_to, equals, mul, raise_level, LeavittElement};
use leavitt_binf::{parse_quiver, Field, Quiver};
use proptest::prelude::*;

fn load(name: &str) -> Quiver {
    let path = format!("{}/../../quivers/{}", env!("CARGO_MANIFEST_DIR"), name);
    parse_quiver(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Q), Just(Field::Fp(2)), Just(Field::Fp(5)), Just(Field::Fp(97))]
}

proptest! {
    #[test]
    fn scalar_arithmetic_satisfies_field_axioms(
        field in fields(),
        a in -2000i64..2000,
        b in -2000i64..2000,
        c in -2000i64..2000,
    ) {
        let x = field.from_i64(a);
        let y = field.from_i64(b);
        let z = field.from_i64(c);
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.add(&x.neg()).is_zero());
        prop_assert_eq!(x.sub(&y), x.add(&y.neg()));
        prop_assert_eq!(x.mul(&field.one()), x.clone());
        prop_assert!(x.mul(&field.zero()).is_zero());
        if x.is_zero() {
            prop_assert!(x.inv().is_none());
        } else {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn parity_signs_square_to_one(field in fields(), e in -50i64..50) {
        let s = field.sign(e);
        prop_assert!(s.mul(&s).is_one());
        prop_assert_eq!(field.sign(e), field.sign(e + 2));
        prop_assert_eq!(field.sign(e).mul(&field.sign(e + 1)), field.from_i64(-1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn monomial_products_add_degrees(
        which in 0usize..2,
        i in 0usize..512,
        j in 0usize..512,
    ) {
        let q = load(if which == 0 { "loop.quiver" } else { "two_cycle.quiver" });
        let pool = enumerate_monomials_up_to(&q, 3, false);
        let x = &pool[i % pool.len()];
        let y = &pool[j % pool.len()];
        let ex = LeavittElement::monomial(Field::Q, x.clone());
        let ey = LeavittElement::monomial(Field::Q, y.clone());
        let p = mul(&q, &ex, &ey);
        if !p.is_empty_form() {
            prop_assert_eq!(p.l_degree().unwrap(), x.degree() + y.degree());
        }
    }

    #[test]
    fn raising_preserves_value_degree_and_corners(
        which in 0usize..2,
        i in 0usize..512,
        extra in 0usize..3,
    ) {
        let q = load(if which == 0 { "loop.quiver" } else { "two_cycle.quiver" });
        let pool = enumerate_monomials_up_to(&q, 3, false);
        let m = &pool[i % pool.len()];
        let x = LeavittElement::monomial(Field::Q, m.clone());
        let level = m.real.len() + extra;
        let r = raise_level(&q, &x, level).unwrap();
        prop_assert!(equals(&q, &x, &r).unwrap());
        prop_assert_eq!(r.l_degree().unwrap(), m.degree());
        for (t, _) in &r.terms {
            prop_assert_eq!(t.left_corner(), m.left_corner());
            prop_assert_eq!(t.right_corner(), m.right_corner());
        }
        // Raising in two steps lands on the same written form as one step.
        let stepped = raise_level(&q, &r, level + 1).unwrap();
        let direct = raise_level(&q, &x, level + 1).unwrap();
        prop_assert_eq!(stepped, direct);
    }
}
