use proptest::prelude::*;

use zoll_ech::capseq::{ball_capacities, dstar_capacities, CapacitySequence, Surface};
use zoll_ech::exact::ExactQuantity;
use zoll_ech::obstruct::{dominates, gromov_width_capacity_bound};
use zoll_ech::zollcx::{ech_index, homology_class, OrbitSet, ZollModel};

fn quantity(pi: bool) -> impl Strategy<Value = ExactQuantity> {
    (1i64..=24, 1i64..=6).prop_map(move |(n, d)| if pi { ExactQuantity::ratio_pi(n, d) } else { ExactQuantity::ratio(n, d) })
}

fn pair() -> impl Strategy<Value = (ExactQuantity, ExactQuantity)> {
    any::<bool>().prop_flat_map(|pi| (quantity(pi), quantity(pi)))
}

fn sorted_combos(a: ExactQuantity, b: ExactQuantity, n: usize) -> Vec<ExactQuantity> {
    let mut all: Vec<ExactQuantity> = (0..n as i64)
        .flat_map(|m| (0..n as i64).map(move |k| (m, k)))
        .map(|(m, k)| a.checked_mul_int(m).unwrap().checked_add(&b.checked_mul_int(k).unwrap()).unwrap())
        .collect();
    all.sort_by(|x, y| x.try_cmp(y).unwrap());
    all.truncate(n);
    all
}

fn in_scope(idx: usize) -> CapacitySequence {
    let pi = ExactQuantity::int_pi;
    match idx {
        0 => dstar_capacities(Surface::S2),
        1 => dstar_capacities(Surface::RP2),
        2 => ball_capacities(pi(2)).unwrap(),
        3 => ball_capacities(ExactQuantity::ratio_pi(5, 2)).unwrap(),
        4 => CapacitySequence::combos(pi(2), pi(4)).unwrap(),
        5 => CapacitySequence::combos(pi(1), pi(3)).unwrap(),
        _ => ball_capacities(pi(1)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn combos_match_sorted_enumeration((a, b) in pair()) {
        let seq = CapacitySequence::combos(a, b).unwrap();
        prop_assert_eq!(seq.prefix(60).unwrap(), sorted_combos(a, b, 60));
    }

    #[test]
    fn scaling_commutes_with_combos((a, b) in pair(), lam in quantity(false)) {
        let scaled = CapacitySequence::scaled(&CapacitySequence::combos(a, b).unwrap(), lam).unwrap();
        let direct = CapacitySequence::combos(a.checked_mul(&lam).unwrap(), b.checked_mul(&lam).unwrap()).unwrap();
        prop_assert_eq!(scaled.prefix(50).unwrap(), direct.prefix(50).unwrap());
    }

    #[test]
    fn filtering_keeps_exactly_the_multiples(a in 1i64..8, b in 1i64..8, j in 1u64..6) {
        let base = CapacitySequence::combos(ExactQuantity::int(a), ExactQuantity::int(b)).unwrap();
        let filtered = CapacitySequence::filtered(&base, j).unwrap();
        let prefix = base.prefix(400).unwrap();
        let multiples: Vec<_> = prefix
            .iter()
            .copied()
            .filter(|q| q.coeff().to_integer() % j as i64 == 0)
            .collect();
        let n = multiples.len().min(100);
        prop_assert_eq!(filtered.prefix(n).unwrap(), multiples[..n].to_vec());
    }

    #[test]
    fn capacities_are_nondecreasing(idx in 0usize..7) {
        let terms = in_scope(idx).prefix(1000).unwrap();
        prop_assert!(terms.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn dominance_is_transitive(i in 0usize..7, j in 0usize..7, k in 0usize..7) {
        let (a, b, c) = (in_scope(i), in_scope(j), in_scope(k));
        prop_assert!(dominates(&a, &a, 300).unwrap().holds());
        if dominates(&a, &b, 300).unwrap().holds() && dominates(&b, &c, 300).unwrap().holds() {
            prop_assert!(dominates(&a, &c, 300).unwrap().holds());
        }
    }

    #[test]
    fn width_bound_is_scale_equivariant(idx in 0usize..7, lam in quantity(false)) {
        let s = in_scope(idx);
        let scaled = CapacitySequence::scaled(&s, lam).unwrap();
        let base = gromov_width_capacity_bound(&s, 100).unwrap();
        let after = gromov_width_capacity_bound(&scaled, 100).unwrap();
        prop_assert_eq!(after.value, base.value.checked_mul(&lam).unwrap());
    }

    #[test]
    fn index_parity_and_additivity(
        m in 0usize..3,
        a in (0u64..=40, 0u64..=40),
        b in (0u64..=40, 0u64..=40),
        c in (0u64..=40, 0u64..=40),
    ) {
        let model = ZollModel::all()[m];
        let (a, b, c) = (OrbitSet::new(a.0, a.1), OrbitSet::new(b.0, b.1), OrbitSet::new(c.0, c.1));
        let same = |x, y| homology_class(&model, x) == homology_class(&model, y);
        if same(a, b) {
            prop_assert_eq!(ech_index(&model, a, b).unwrap() % 2, 0);
        } else {
            prop_assert!(ech_index(&model, a, b).is_err());
        }
        if same(a, b) && same(b, c) {
            let sum = ech_index(&model, a, b).unwrap() + ech_index(&model, b, c).unwrap();
            prop_assert_eq!(sum, ech_index(&model, a, c).unwrap());
        }
    }

    #[test]
    fn quantities_round_trip(n in -500i64..500, d in 1i64..50, p in 0u8..3) {
        let q = ExactQuantity::new(num_rational::Rational64::new(n, d), p).unwrap();
        prop_assert_eq!(q.to_string().parse::<ExactQuantity>().unwrap(), q);
        let json = serde_json::to_string(&q).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExactQuantity>(&json).unwrap(), q);
    }
}

#[test]
fn width_bound_balls_fit_their_targets() {
    for s in [Surface::S2, Surface::RP2] {
        let target = dstar_capacities(s);
        let bound = gromov_width_capacity_bound(&target, 100).unwrap();
        let ball = ball_capacities(bound.value).unwrap();
        assert!(dominates(&ball, &target, 100).unwrap().holds(), "{s}");
    }
}
