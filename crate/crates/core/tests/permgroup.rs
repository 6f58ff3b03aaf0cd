mod common;

use arboru::PermGroup;
use common::{brute_primitive, brute_two_transitive, closure, cycles_text, images_of};
use proptest::prelude::*;

fn images(d: u8) -> impl Strategy<Value = Vec<u8>> {
    Just((1..=d).collect::<Vec<u8>>()).prop_shuffle()
}

fn group_input() -> impl Strategy<Value = (u8, Vec<Vec<u8>>)> {
    (3u8..=6).prop_flat_map(|d| (Just(d), prop::collection::vec(images(d), 1..=3)))
}

fn build(d: u8, gens: &[Vec<u8>]) -> PermGroup {
    let text: Vec<String> = gens.iter().map(|g| cycles_text(g)).collect();
    PermGroup::parse(d, &text.join(";")).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_closure((d, gens) in group_input()) {
        let g = build(d, &gens);
        let expected = closure(&gens, d);
        let got: std::collections::BTreeSet<Vec<u8>> = images_of(&g).into_iter().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn predicates_match_brute_force((d, gens) in group_input()) {
        let g = build(d, &gens);
        let els = images_of(&g);
        prop_assert_eq!(g.is_2transitive(), brute_two_transitive(&els, d));
        prop_assert_eq!(g.is_primitive(), brute_primitive(&els, d));
        if g.is_2transitive() {
            prop_assert!(g.is_primitive());
        }
    }

    #[test]
    fn orbit_stabilizer_and_transporters((d, gens) in group_input(), a in 1u8..=3, b in 1u8..=3) {
        let g = build(d, &gens);
        let els = images_of(&g);
        let orbit: std::collections::BTreeSet<u8> = els.iter().map(|p| p[a as usize - 1]).collect();
        prop_assert_eq!(g.orbit(a).len(), orbit.len());
        let stab = g.point_stabilizer(a).unwrap();
        prop_assert_eq!(stab.order() * orbit.len(), g.order());
        let exists = els.iter().any(|p| p[a as usize - 1] == b);
        match g.point_transporter(a, b) {
            Some(p) => prop_assert!(p.apply(a) == b && g.contains(p)),
            None => prop_assert!(!exists),
        }
    }

    #[test]
    fn generators_text_round_trips((d, gens) in group_input()) {
        let g = build(d, &gens);
        let again = PermGroup::parse(d, &g.generators_text()).unwrap();
        prop_assert_eq!(again.elements(), g.elements());
    }
}

#[test]
fn suite_groups_predicates() {
    let rows = [
        (PermGroup::symmetric(3), 6, true, true, false),
        (PermGroup::symmetric(5), 120, true, true, false),
        (PermGroup::alternating(5), 60, true, true, false),
        (PermGroup::dihedral(5), 10, false, true, false),
        (PermGroup::cyclic(4), 4, false, false, false),
        (PermGroup::cyclic(5), 5, false, true, true),
    ];
    for (g, order, two, prim, cyc) in rows {
        assert_eq!(g.order(), order);
        assert_eq!(g.is_2transitive(), two);
        assert_eq!(g.is_primitive(), prim);
        assert_eq!(g.is_cyclic_of_prime_order(), cyc);
    }
    assert!(PermGroup::dihedral(5).is_generated_by_point_stabilizers());
    assert!(!PermGroup::cyclic(5).is_generated_by_point_stabilizers());
}
