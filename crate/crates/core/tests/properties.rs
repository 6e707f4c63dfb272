mod common;

use std::collections::HashSet;

use pairsplit::approx::resplit_position_probs;
use pairsplit::dealer::{dealer_distribution, dealer_distribution_single};
use pairsplit::split::{exact_split, split_shoe, Method};
use pairsplit::{AddressPlan, CacheSize, CacheWidth, DealerCache, DoubleOption, Rank, RuleSet, Shoe};
use proptest::prelude::*;

fn rank(v: u8) -> Rank {
    Rank::new(v).unwrap()
}

fn sequences(j: usize, max: u8, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if prefix.len() == j {
        out.push(prefix.clone());
        return;
    }
    let top = prefix.last().copied().unwrap_or(max);
    for v in 0..=top {
        prefix.push(v);
        sequences(j, max, prefix, out);
        prefix.pop();
    }
}

#[test]
fn addresses_are_a_bijection_up_to_depth_four() {
    for j in 1..=4 {
        let plan = AddressPlan::new(j).unwrap();
        let mut all = Vec::new();
        sequences(j, 10, &mut Vec::new(), &mut all);
        assert_eq!(all.len() as u64, plan.slots(), "depth {j}");
        let addrs: HashSet<u64> = all.iter().map(|s| plan.address(s)).collect();
        assert_eq!(addrs.len(), all.len(), "depth {j} collides");
        assert!(addrs.iter().all(|&a| (1..=plan.slots()).contains(&a)));
    }
}

fn removal_shoe() -> impl Strategy<Value = Shoe> {
    prop::collection::vec(1u8..=10, 0..=20).prop_map(|cards| {
        let mut shoe = Shoe::new(1).unwrap();
        for c in cards {
            shoe.remove(rank(c));
        }
        shoe
    })
}

// Small shoes leaning on tens so that most hands finish before the cards run
// out. Counts respect one-deck limits.
fn toy_shoe() -> impl Strategy<Value = Shoe> {
    prop::collection::vec(prop_oneof![3 => Just(10u8), 7 => 1u8..=9], 4..=12).prop_filter_map("deck limits", |cards| {
        let mut counts = [0u8; 10];
        for c in cards {
            counts[(c - 1) as usize] += 1;
        }
        Shoe::from_counts(counts, 1).ok()
    })
}

fn das() -> impl Strategy<Value = DoubleOption> {
    prop_oneof![Just(DoubleOption::None), Just(DoubleOption::AnyTwo), Just(DoubleOption::TenEleven)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dealer_distribution_normalizes(shoe in removal_shoe(), up in 1u8..=10, h17 in any::<bool>()) {
        let up = rank(up);
        prop_assume!(shoe.count(up) > 0);
        let mut s = shoe;
        s.remove(up);
        let partner_only = up.natural_partner().is_some_and(|p| s.count(p) as u16 == s.total());
        prop_assume!(!partner_only);
        let d = dealer_distribution(&s, up, h17);
        prop_assert!((d.sum() - 1.0).abs() < 1e-12, "sum {}", d.sum());
        prop_assert!(d.0.iter().all(|&p| p >= 0.0));
        let single = dealer_distribution_single(&s, up, h17);
        prop_assert!((single.sum() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn remove_then_restore_round_trips(cards in prop::collection::vec(1u8..=10, 0..=40), decks in 1u8..=8) {
        let full = Shoe::new(decks).unwrap();
        let mut shoe = full;
        let mut taken = Vec::new();
        for c in cards {
            if shoe.remove(rank(c)) {
                taken.push(rank(c));
            }
        }
        prop_assert_eq!(shoe.total() as usize, full.total() as usize - taken.len());
        for &c in taken.iter().rev() {
            shoe.restore(c);
        }
        prop_assert_eq!(shoe, full);
    }

    #[test]
    fn card_order_classes_partition(extra in prop::collection::vec(1u8..=10, 0..=12), up in 1u8..=10, s in 1u8..=10) {
        let (up, s) = (rank(up), rank(s));
        let full = Shoe::new(1).unwrap();
        let Ok(mut shoe) = split_shoe(&full, up, s) else { return Ok(()) };
        for c in extra {
            shoe.remove(rank(c));
        }
        prop_assume!(shoe.total() >= 8);
        let partner_only = up.natural_partner().is_some_and(|p| shoe.count(p) as u16 == shoe.total());
        prop_assume!(!partner_only);
        let r = resplit_position_probs(&shoe, up, s);
        prop_assert!((r.sum() - 1.0).abs() < 1e-12, "sum {}", r.sum());
        let c = r.coefficients();
        prop_assert!(c.iter().all(|&x| x >= -1e-12));
        let hands = 2.0 * r.p2 + 3.0 * r.p3() + 4.0 * r.p4();
        prop_assert!((c.iter().sum::<f64>() - hands).abs() < 1e-12);
    }

    #[test]
    fn engines_match_brute_force_on_toy_shoes(
        shoe in toy_shoe(),
        up in 1u8..=10,
        s in 1u8..=10,
        h in 2u8..=4,
        das in das(),
        rsa in any::<bool>(),
        h17 in any::<bool>(),
    ) {
        let (up, s) = (rank(up), rank(s));
        let rules = RuleSet::default()
            .with_max_hands(h)
            .with_dd_after_split(das)
            .with_resplit_aces(rsa)
            .with_hits_soft17(h17);
        let Some(want) = common::oracle::split_value(&shoe, up, s, &rules) else {
            return Ok(());
        };
        for method in [Method::Recursive, Method::Hands, Method::Merged] {
            let mut cache = DealerCache::new(shoe, up, h17, CacheSize::Depth(6), CacheWidth::Double).unwrap();
            let got = exact_split(&shoe, up, s, &rules, method, &mut cache).ev;
            prop_assert!((got - want).abs() < 1e-9, "{:?}: {} vs {}", method, got, want);
        }
    }

    #[test]
    fn cache_is_transparent(shoe in toy_shoe(), up in 2u8..=9, s in 1u8..=10, h in 2u8..=4, depth in 1usize..=8) {
        let (up, s) = (rank(up), rank(s));
        let rules = RuleSet::default().with_max_hands(h).with_dd_after_split(DoubleOption::AnyTwo);
        prop_assume!(common::oracle::split_value(&shoe, up, s, &rules).is_some());
        let mut off = DealerCache::disabled(shoe, up, false);
        let mut on = DealerCache::new(shoe, up, false, CacheSize::Depth(depth), CacheWidth::Double).unwrap();
        let a = exact_split(&shoe, up, s, &rules, Method::Recursive, &mut off).ev;
        let b = exact_split(&shoe, up, s, &rules, Method::Recursive, &mut on).ev;
        prop_assert_eq!(a, b);
    }
}

#[test]
fn cache_is_transparent_on_full_deck_cells() {
    let full = Shoe::new(1).unwrap();
    for (p, u) in [(8, 6), (2, 5), (9, 4), (6, 3)] {
        let (p, u) = (rank(p), rank(u));
        let shoe = split_shoe(&full, u, p).unwrap();
        let rules = RuleSet::default().with_max_hands(3).with_dd_after_split(DoubleOption::AnyTwo);
        let mut off = DealerCache::disabled(shoe, u, false);
        let mut on = DealerCache::new(shoe, u, false, CacheSize::default(), CacheWidth::Double).unwrap();
        let a = exact_split(&shoe, u, p, &rules, Method::Hands, &mut off);
        let b = exact_split(&shoe, u, p, &rules, Method::Hands, &mut on);
        assert_eq!(a.ev, b.ev, "{p}{p} vs {u}");
        assert!(b.cache.hits > 0);
        assert_eq!(off.stats().hits, 0);
    }
}

#[test]
fn eight_card_shoe_three_hands_matches_brute_force() {
    // one three and seven tens with the dealer showing 7: splitting threes
    // can reach three hands and every line of play fits in eight cards
    let shoe = Shoe::from_counts([0, 0, 1, 0, 0, 0, 0, 0, 0, 7], 1).unwrap();
    let (up, s) = (rank(7), rank(3));
    let rules = RuleSet::default().with_max_hands(3);
    let want = common::oracle::split_value(&shoe, up, s, &rules).unwrap();
    for method in [Method::Recursive, Method::Hands, Method::Merged] {
        let mut cache = DealerCache::disabled(shoe, up, false);
        let got = exact_split(&shoe, up, s, &rules, method, &mut cache).ev;
        assert!((got - want).abs() < 1e-12, "{method:?}: {got} vs {want}");
    }
}
