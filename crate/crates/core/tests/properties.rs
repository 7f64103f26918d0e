//! Randomized invariants.

use proptest::prelude::*;
use quadrance_core::field::build_field_of_order;
use quadrance_core::geometry::{
    build_polygon, discriminant, point_add, quadrance, verify_polygon, Point,
};
use quadrance_core::Elem;

const ORDERS: [u32; 8] = [3, 5, 7, 9, 11, 13, 25, 27];

fn order() -> impl Strategy<Value = u32> {
    prop::sample::select(ORDERS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quadrance_is_symmetric_and_translation_invariant(q in order(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let ctx = build_field_of_order(q).unwrap();
        let n = (q * q) as usize;
        let (a, b, c) = (
            Point::from_index(q, a as usize % n),
            Point::from_index(q, b as usize % n),
            Point::from_index(q, c as usize % n),
        );
        prop_assert_eq!(quadrance(&ctx, a, b), quadrance(&ctx, b, a));
        prop_assert_eq!(
            quadrance(&ctx, point_add(&ctx, a, c), point_add(&ctx, b, c)),
            quadrance(&ctx, a, b)
        );
        prop_assert_eq!(quadrance(&ctx, a, a), Elem::ZERO);
    }

    #[test]
    fn character_is_multiplicative(q in order(), a in any::<u32>(), b in any::<u32>()) {
        let ctx = build_field_of_order(q).unwrap();
        let (a, b) = (Elem(a % q), Elem(b % q));
        prop_assert_eq!(ctx.chi(ctx.mul(a, b)), ctx.chi(a) * ctx.chi(b));
    }

    #[test]
    fn discriminant_is_symmetric(q in order(), i in any::<u32>(), j in any::<u32>(), k in any::<u32>()) {
        let ctx = build_field_of_order(q).unwrap();
        let (i, j, k) = (Elem(i % q), Elem(j % q), Elem(k % q));
        let d = discriminant(&ctx, i, j, k).value;
        prop_assert_eq!(d, discriminant(&ctx, j, i, k).value);
        prop_assert_eq!(d, discriminant(&ctx, k, j, i).value);
    }

    #[test]
    fn polygons_verify_when_feasible(q in prop::sample::select(vec![3u32, 7, 9, 11, 13]), sides in prop::collection::vec(1u32..1000, 3..9)) {
        let ctx = build_field_of_order(q).unwrap();
        let a: Vec<Elem> = sides.iter().map(|&s| Elem(1 + s % (q - 1))).collect();
        let r = build_polygon(&ctx, &a).unwrap();
        if r.feasible {
            prop_assert!(verify_polygon(&ctx, &r.vertices, &a).unwrap());
        } else {
            prop_assert!(a.len() <= 4);
        }
    }
}
