use proptest::prelude::*;

use holoskew::gamma::{circle_from_gamma, gamma_from_circle, gamma_from_regular, opposite_gamma};
use holoskew::group::{cyclic, dihedral, FiniteGroup};
use holoskew::holomorph::{enumerate_regular_subgroups, Holomorph};
use holoskew::perm::{rho, Permutation};

fn pool() -> Vec<FiniteGroup> {
    vec![
        cyclic(4).unwrap(),
        cyclic(6).unwrap(),
        holoskew::group::abelian(&[2, 2]).unwrap(),
        dihedral(3).unwrap(),
        dihedral(4).unwrap(),
        holoskew::group::quaternion(8).unwrap(),
    ]
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn compose_then_inverse_is_identity(p in perm_strategy(7), q in perm_strategy(7)) {
        let r = p.compose(&q);
        prop_assert!(r.compose(&q.inverse()).images() == p.images());
        prop_assert!(p.inverse().compose(&r).images() == q.images());
    }

    #[test]
    fn composition_is_right_to_left_application(p in perm_strategy(6), q in perm_strategy(6), x in 0usize..6) {
        prop_assert_eq!(p.compose(&q).apply(x), q.apply(p.apply(x)));
    }

    #[test]
    fn rho_is_a_homomorphism(gi in 0usize..6, x in 0usize..8, y in 0usize..8) {
        let g = &pool()[gi];
        let n = g.order();
        let (x, y) = (x % n, y % n);
        let lhs = rho(g, g.mul(x, y));
        let rhs = rho(g, x).compose(&rho(g, y));
        prop_assert_eq!(lhs.images(), rhs.images());
    }

    #[test]
    fn conjugation_identities(gi in 0usize..6, x in 0usize..8, y in 0usize..8, z in 0usize..8) {
        let g = &pool()[gi];
        let n = g.order();
        let (x, y, z) = (x % n, y % n, z % n);
        // (x^y)^z = x^(yz)
        prop_assert_eq!(g.conj(g.conj(x, y), z), g.conj(x, g.mul(y, z)));
        // x^y = x iff x and y commute
        prop_assert_eq!(g.conj(x, y) == x, g.mul(x, y) == g.mul(y, x));
    }

    #[test]
    fn gamma_circle_roundtrip(gi in 0usize..6, pick in 0usize..64) {
        let hol = Holomorph::build(pool()[gi].clone());
        let regulars = enumerate_regular_subgroups(&hol);
        let reg = &regulars[pick % regulars.len()];
        let gamma = gamma_from_regular(&hol, reg);
        let brace = circle_from_gamma(&hol, &gamma).unwrap();
        let back = gamma_from_circle(&hol, brace.circle.table()).unwrap();
        prop_assert_eq!(&back, &gamma);
    }

    #[test]
    fn opposite_is_an_involution(gi in 0usize..6, pick in 0usize..64) {
        let hol = Holomorph::build(pool()[gi].clone());
        let regulars = enumerate_regular_subgroups(&hol);
        let reg = &regulars[pick % regulars.len()];
        let gamma = gamma_from_regular(&hol, reg);
        let bar = opposite_gamma(&hol, &gamma).unwrap();
        prop_assert_eq!(&opposite_gamma(&hol, &bar).unwrap(), &gamma);
    }
}
