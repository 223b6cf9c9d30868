use std::collections::BTreeSet;

use proptest::prelude::*;

use iorder::group::EndoPowers;
use iorder::verifier::{check_a, check_straight};
use iorder::{
    close_generators, l_class_coverage, to_bicyclic, validate_endomorphism, validate_group,
    Endomorphism, GroupTable, Reilly, ReillyElement, Status, Window,
};

/// `Z_n` with `g -> k*g`.
fn cyclic_ambient() -> impl Strategy<Value = Reilly> {
    (1usize..9, 0usize..9).prop_map(|(n, k)| {
        let g = GroupTable::cyclic(n);
        Reilly::new(g, Endomorphism::cyclic_scaling(n, k % n.max(1)))
    })
}

fn element(order: usize, bound: u32) -> impl Strategy<Value = ReillyElement> {
    (0..=bound, 0..order, 0..=bound).prop_map(|(m, g, n)| ReillyElement::new(m, g, n))
}

fn ambient_with_elements(count: usize) -> impl Strategy<Value = (Reilly, Vec<ReillyElement>)> {
    cyclic_ambient().prop_flat_map(move |amb| {
        let order = amb.group().order();
        (Just(amb), prop::collection::vec(element(order, 12), count))
    })
}

proptest! {
    #[test]
    fn scaling_maps_are_endomorphisms(n in 1usize..12, k in 0usize..12) {
        let g = GroupTable::cyclic(n);
        let e = Endomorphism::cyclic_scaling(n, k);
        prop_assert!(validate_endomorphism(&g, e.map().to_vec()).is_ok());
    }

    #[test]
    fn endomorphism_powers_add(n in 1usize..12, k in 0usize..12, s in 0u64..40, t in 0u64..40, x in 0usize..12) {
        let g = GroupTable::cyclic(n);
        let e = Endomorphism::cyclic_scaling(n, k);
        let powers = EndoPowers::new(&e);
        let x = x % n;
        prop_assert_eq!(powers.apply(s + t, x), powers.apply(s, powers.apply(t, x)));
        prop_assert_eq!(powers.apply(s, x), e.power(s, x));
        prop_assert_eq!(powers.apply(s, g.identity()), g.identity());
    }

    #[test]
    fn reilly_multiplication_is_associative((amb, xs) in ambient_with_elements(3)) {
        let (x, y, z) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(
            amb.multiply(amb.multiply(x, y), z),
            amb.multiply(x, amb.multiply(y, z))
        );
    }

    #[test]
    fn inverses_are_regular_and_antimultiplicative((amb, xs) in ambient_with_elements(2)) {
        let (x, y) = (xs[0], xs[1]);
        let xi = amb.invert(x);
        prop_assert_eq!(amb.multiply(amb.multiply(x, xi), x), x);
        prop_assert_eq!(amb.multiply(amb.multiply(xi, x), xi), xi);
        prop_assert_eq!(amb.invert(amb.multiply(x, y)), amb.multiply(amb.invert(y), xi));
        prop_assert!(amb.is_idempotent(amb.multiply(x, xi)));
    }

    #[test]
    fn projection_to_bicyclic_is_a_homomorphism((amb, xs) in ambient_with_elements(2)) {
        let (x, y) = (xs[0], xs[1]);
        prop_assert_eq!(to_bicyclic(amb.multiply(x, y)), to_bicyclic(x).mul(to_bicyclic(y)));
    }

    #[test]
    fn closure_ignores_generator_order((amb, mut gens) in ambient_with_elements(3), bound in 2u32..7) {
        let bound = bound.max(gens.iter().map(|g| g.m.max(g.n)).max().unwrap_or(0));
        let a = close_generators(&gens, &amb, Window::new(bound)).unwrap();
        gens.reverse();
        let b = close_generators(&gens, &amb, Window::new(bound)).unwrap();
        prop_assert_eq!(a.names(), b.names());
        for x in a.ids() {
            for y in a.ids() {
                prop_assert_eq!(a.product(x, y), b.product(x, y));
            }
        }
    }

    #[test]
    fn larger_windows_only_add_elements(
        gens in prop::collection::vec((0u32..4, 0u32..4), 1..3),
        extra in 1u32..4,
    ) {
        let amb = Reilly::bicyclic();
        let gens: Vec<ReillyElement> = gens.into_iter().map(|(m, n)| ReillyElement::new(m, 0, n)).collect();
        let small = close_generators(&gens, &amb, Window::new(5)).unwrap();
        let large = close_generators(&gens, &amb, Window::new(5 + extra)).unwrap();
        let inner: BTreeSet<ReillyElement> = small.ids().map(|i| small.triple(i).unwrap()).collect();
        let outer: BTreeSet<ReillyElement> = large
            .ids()
            .map(|i| large.triple(i).unwrap())
            .filter(|t| t.m <= 5 && t.n <= 5)
            .collect();
        prop_assert_eq!(inner, outer);
    }

    /// A subsemigroup missing an L-class at or below the target bound cannot
    /// pass both condition (A) and straightness.
    #[test]
    fn coverage_gaps_break_a_or_straightness(
        gens in prop::collection::vec((0u32..4, 0u32..4), 1..4),
    ) {
        let amb = Reilly::bicyclic();
        let gens: Vec<ReillyElement> = gens.into_iter().map(|(m, n)| ReillyElement::new(m, 0, n)).collect();
        let s = close_generators(&gens, &amb, Window::new(10)).unwrap();
        let targets = Window::new(4);
        let coverage = l_class_coverage(&s, s.window());
        if (0..=targets.bound).any(|n| !coverage.contains(&n)) {
            let a = check_a(&s, targets).unwrap();
            let straight = check_straight(&s, targets).unwrap();
            prop_assert!(a.status != Status::Pass || straight.status != Status::Pass);
        }
    }
}

#[test]
fn demo_groups_satisfy_the_group_axioms() {
    for (name, text) in iorder::pipeline::DEMOS {
        let config = iorder::config::parse_config(text).unwrap();
        let g = validate_group(&config.group).unwrap_or_else(|e| panic!("{name}: {e}"));
        let n = g.order();
        for x in 0..n {
            assert_eq!(g.mul(x, g.inv(x)), g.identity(), "{name}");
            for y in 0..n {
                for z in 0..n {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)), "{name}");
                }
            }
        }
    }
}
