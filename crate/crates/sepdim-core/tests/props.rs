//! Property tests for the counting identities.

use proptest::prelude::*;

use sepdim_core::certify::extremal_counts;
use sepdim_core::perm::{Edge, PermFamily, Permutation};
use sepdim_core::verify::{
    best_s_pair, c_count, delta_balance, ksca_profile, s_stat, separation_profile,
};

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|image| Permutation::from_image(image).unwrap())
}

fn arb_family(n: usize, max_len: usize) -> impl Strategy<Value = PermFamily> {
    prop::collection::vec(arb_perm(n), 1..=max_len)
        .prop_map(move |members| PermFamily::from_members(n, members).unwrap())
}

fn arb_sized_family() -> impl Strategy<Value = PermFamily> {
    (4usize..=8).prop_flat_map(|n| arb_family(n, 9))
}

proptest! {
    #[test]
    fn exactly_one_pairing_of_every_4set_is_separated(
        sigma in (4usize..=10).prop_flat_map(arb_perm),
        picks in prop::collection::vec(0usize..10_000, 4),
    ) {
        let n = sigma.n() as u32;
        let a = 1 + (picks[0] as u32 % n);
        let mut rest: Vec<u32> = (1..=n).filter(|&v| v != a).collect();
        let b = rest.remove(picks[1] % rest.len());
        let c = rest.remove(picks[2] % rest.len());
        let d = rest.remove(picks[3] % rest.len());
        let mut quad = [a, b, c, d];
        quad.sort_unstable();
        let [a, b, c, d] = quad;
        let pairings = [
            (Edge::new(a, b).unwrap(), Edge::new(c, d).unwrap()),
            (Edge::new(a, c).unwrap(), Edge::new(b, d).unwrap()),
            (Edge::new(a, d).unwrap(), Edge::new(b, c).unwrap()),
        ];
        let separated = pairings
            .iter()
            .filter(|&&(e, f)| sigma.separates(e, f).unwrap())
            .count();
        prop_assert_eq!(separated, 1);
    }

    #[test]
    fn three_pairing_conservation(fam in arb_sized_family()) {
        let n = fam.n() as u32;
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        let total = c_count(&fam, Edge::new(a, b).unwrap(), Edge::new(c, d).unwrap()).unwrap()
                            + c_count(&fam, Edge::new(a, c).unwrap(), Edge::new(b, d).unwrap()).unwrap()
                            + c_count(&fam, Edge::new(a, d).unwrap(), Edge::new(b, c).unwrap()).unwrap();
                        prop_assert_eq!(total, fam.len() as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn separation_counts_are_relabeling_equivariant(
        (fam, pi) in (4usize..=7).prop_flat_map(|n| (arb_family(n, 6), arb_perm(n))),
    ) {
        let relabeled = fam.relabeled(&pi).unwrap();
        let n = fam.n() as u32;
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        let before = c_count(
                            &fam,
                            Edge::new(a, b).unwrap(),
                            Edge::new(c, d).unwrap(),
                        ).unwrap();
                        let after = c_count(
                            &relabeled,
                            Edge::new(pi.at(a as usize), pi.at(b as usize)).unwrap(),
                            Edge::new(pi.at(c as usize), pi.at(d as usize)).unwrap(),
                        ).unwrap();
                        prop_assert_eq!(before, after);
                    }
                }
            }
        }
    }

    #[test]
    fn profiles_ignore_member_order_and_relabeling(
        (fam, pi) in (4usize..=7).prop_flat_map(|n| (arb_family(n, 6), arb_perm(n))),
    ) {
        let mut reversed_members: Vec<Permutation> = fam.members().to_vec();
        reversed_members.reverse();
        let reordered = PermFamily::from_members(fam.n(), reversed_members).unwrap();
        let relabeled = fam.relabeled(&pi).unwrap();

        let base = separation_profile(&fam);
        prop_assert_eq!(&separation_profile(&reordered).histogram, &base.histogram);
        prop_assert_eq!(&separation_profile(&relabeled).histogram, &base.histogram);

        let cov = ksca_profile(&fam, 3).unwrap();
        prop_assert_eq!(&ksca_profile(&relabeled, 3).unwrap().histogram, &cov.histogram);
    }

    #[test]
    fn delta_zero_and_separating_iff_lambda(fam in arb_sized_family()) {
        let profile = separation_profile(&fam);
        let balance = delta_balance(&fam);
        prop_assert_eq!(
            balance.delta == 0 && balance.separating,
            profile.lambda.is_some()
        );
    }

    #[test]
    fn s_statistic_total_identity_and_averaging_bound(fam in arb_sized_family()) {
        let n = fam.n() as u64;
        let mut total = 0u64;
        for u in 1..=fam.n() as u32 {
            for v in u + 1..=fam.n() as u32 {
                total += s_stat(&fam, u, v).unwrap();
            }
        }
        prop_assert_eq!(total, fam.len() as u64 * n * (n - 1) * (n - 2) / 3);

        let best = best_s_pair(&fam).unwrap();
        prop_assert!(best.meets_averaging_bound());
    }

    #[test]
    fn extremal_counts_sum_to_twice_the_size(fam in arb_sized_family()) {
        let counts = extremal_counts(&fam);
        prop_assert_eq!(counts.values().sum::<u64>(), 2 * fam.len() as u64);
    }
}
