//! Exact stand, hit and double expected values for a single hand played by
//! basic strategy, conditional on the dealer not holding a natural.

use crate::cache::DealerCache;
use crate::cards::{HandState, Rank, Shoe};
use crate::dealer::DealerDistribution;
use crate::rules::RuleSet;
use crate::strategy::{basic_double, basic_hit, split_action, Action};

/// Probability that the next card is `rank`, given the dealer shows `up`
/// and does not hold a natural. Cards already seen (up card, player cards)
/// must be out of `shoe`. Draws that would leave the dealer only
/// natural-forming hole cards have probability zero.
#[inline]
pub fn player_card_prob(shoe: &Shoe, up: Rank, rank: Rank) -> f64 {
    let n = shoe.total() as f64;
    let ni = shoe.count(rank) as f64;
    if ni == 0.0 {
        return 0.0;
    }
    match up.natural_partner() {
        None => ni / n,
        Some(partner) => {
            let np = shoe.count(partner) as f64;
            if rank == partner {
                if n - np < 1.0 {
                    0.0
                } else {
                    ni / (n - 1.0)
                }
            } else if n - np < 2.0 {
                0.0
            } else {
                ni / (n - 1.0) * (n - np - 1.0) / (n - np)
            }
        }
    }
}

/// All ten [`player_card_prob`] values, ace first.
pub fn player_card_probs(shoe: &Shoe, up: Rank) -> [f64; 10] {
    let mut out = [0.0; 10];
    for r in Rank::all() {
        out[r.index()] = player_card_prob(shoe, up, r);
    }
    out
}

/// Removes `cards` from the shoe in order and returns the probability of
/// drawing them in that order, or `None` (shoe untouched) if any is missing.
pub fn remove_with_weight(shoe: &mut Shoe, up: Rank, cards: &[Rank]) -> Option<f64> {
    let mut w = 1.0;
    for (i, &c) in cards.iter().enumerate() {
        if shoe.count(c) == 0 {
            for &back in &cards[..i] {
                shoe.restore(back);
            }
            return None;
        }
        w *= player_card_prob(shoe, up, c);
        shoe.remove(c);
    }
    Some(w)
}

/// Expected result of standing: -1 when bust, otherwise from the dealer
/// distribution.
#[inline]
pub fn stand_ev(hand: &HandState, dist: &DealerDistribution) -> f64 {
    dist.stand_value(hand.score().total)
}

/// Single-hand evaluator over a worker-local dealer cache. The cache fixes
/// the up card and dealer soft-17 rule.
pub struct HandEvaluator<'c> {
    pub rules: RuleSet,
    cache: &'c mut DealerCache,
}

impl<'c> HandEvaluator<'c> {
    pub fn new(rules: RuleSet, cache: &'c mut DealerCache) -> Self {
        debug_assert_eq!(rules.dealer_hits_soft17, cache.hits_soft17());
        HandEvaluator { rules, cache }
    }

    pub fn up(&self) -> Rank {
        self.cache.up()
    }

    pub fn cache(&self) -> &DealerCache {
        self.cache
    }

    #[inline]
    pub fn distribution(&mut self, shoe: &Shoe) -> DealerDistribution {
        self.cache.distribution(shoe)
    }

    /// Value of standing now. `shoe` excludes the hand and the up card.
    pub fn stand(&mut self, hand: &HandState, shoe: &Shoe) -> f64 {
        if hand.score().is_bust() {
            return -1.0;
        }
        let d = self.cache.distribution(shoe);
        stand_ev(hand, &d)
    }

    /// Value of hitting now and continuing by basic strategy.
    pub fn hit(&mut self, hand: &mut HandState, shoe: &mut Shoe) -> f64 {
        let up = self.up();
        let mut ev = 0.0;
        for r in Rank::all() {
            if shoe.count(r) == 0 {
                continue;
            }
            let w = player_card_prob(shoe, up, r);
            if w == 0.0 {
                continue;
            }
            shoe.remove(r);
            hand.add(r);
            let v = if hand.score().is_bust() {
                -1.0
            } else if basic_hit(hand, up, &self.rules) {
                self.hit(hand, shoe)
            } else {
                self.stand(hand, shoe)
            };
            ev += w * v;
            hand.remove(r);
            shoe.restore(r);
        }
        ev
    }

    /// Value of doubling: twice the value of one more card then standing.
    pub fn double(&mut self, hand: &mut HandState, shoe: &mut Shoe) -> f64 {
        assert_eq!(hand.num_cards(), 2, "only two-card hands double");
        let up = self.up();
        let mut ev = 0.0;
        for r in Rank::all() {
            if shoe.count(r) == 0 {
                continue;
            }
            let w = player_card_prob(shoe, up, r);
            if w == 0.0 {
                continue;
            }
            shoe.remove(r);
            hand.add(r);
            ev += w * self.stand(hand, shoe);
            hand.remove(r);
            shoe.restore(r);
        }
        2.0 * ev
    }

    /// Value of a two-card hand played by basic strategy (doubling only
    /// when the table allows it).
    pub fn basic_play(&mut self, hand: &mut HandState, shoe: &mut Shoe) -> f64 {
        let up = self.up();
        if basic_double(hand, up, &self.rules) {
            self.double(hand, shoe)
        } else if basic_hit(hand, up, &self.rules) {
            self.hit(hand, shoe)
        } else {
            self.stand(hand, shoe)
        }
    }

    /// Total-bet expected value of one hand formed by splitting, starting
    /// from its first card and played by the split-hand rules without
    /// resplitting. When `forbid_second` is set, that rank cannot arrive as
    /// the second card and the other second-card weights are renormalized.
    pub fn split_hand(&mut self, hand: &mut HandState, shoe: &mut Shoe, forbid_second: Option<Rank>) -> f64 {
        let up = self.up();
        let mut probs = [0.0; 10];
        let mut norm = 1.0;
        for r in Rank::all() {
            if shoe.count(r) > 0 {
                probs[r.index()] = player_card_prob(shoe, up, r);
            }
        }
        if hand.num_cards() == 1 {
            if let Some(f) = forbid_second {
                norm = 1.0 - probs[f.index()];
                probs[f.index()] = 0.0;
                if norm <= 0.0 {
                    return 0.0;
                }
            }
        }
        let mut ev = 0.0;
        for r in Rank::all() {
            let w = probs[r.index()];
            if w == 0.0 {
                continue;
            }
            shoe.remove(r);
            hand.add(r);
            let v = self.continue_split_hand(hand, shoe);
            ev += w * v;
            hand.remove(r);
            if hand.num_cards() == 1 {
                hand.bet = 1;
            }
            shoe.restore(r);
        }
        ev / norm
    }

    fn continue_split_hand(&mut self, hand: &mut HandState, shoe: &mut Shoe) -> f64 {
        let bet = hand.bet as f64;
        if hand.score().is_bust() {
            return -bet;
        }
        if hand.bet == 2 {
            return bet * self.stand(hand, shoe);
        }
        match split_action(hand, self.up(), &self.rules) {
            Action::Stand => self.stand(hand, shoe),
            Action::Hit => self.split_hand(hand, shoe, None),
            Action::Double => {
                hand.bet = 2;
                let v = self.split_hand(hand, shoe, None);
                hand.bet = 1;
                v
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cache::{CacheSize, CacheWidth};

    fn r(v: u8) -> Rank {
        Rank::new(v).unwrap()
    }

    #[test]
    fn card_probabilities() {
        let mut shoe = Shoe::new(1).unwrap();
        for c in [6, 8, 8] {
            shoe.remove(r(c));
        }
        assert!((player_card_prob(&shoe, r(6), r(5)) - 4.0 / 49.0).abs() < 1e-15);

        let mut shoe = Shoe::new(1).unwrap();
        shoe.remove(Rank::ACE);
        let n = 51.0;
        assert!((player_card_prob(&shoe, Rank::ACE, Rank::TEN) - 16.0 / (n - 1.0)).abs() < 1e-15);

        let mut shoe = Shoe::new(1).unwrap();
        shoe.remove(Rank::TEN);
        let (n, n1) = (51.0, 4.0);
        let want = 4.0 / (n - 1.0) * (n - n1 - 1.0) / (n - n1);
        assert!((player_card_prob(&shoe, Rank::TEN, r(5)) - want).abs() < 1e-15);

        for up in Rank::all() {
            let mut shoe = Shoe::new(1).unwrap();
            shoe.remove(up);
            let sum: f64 = player_card_probs(&shoe, up).iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }

    fn evaluator_for(up: Rank, shoe: &Shoe) -> DealerCache {
        DealerCache::new(*shoe, up, false, CacheSize::Depth(6), CacheWidth::Double).unwrap()
    }

    #[test]
    fn stand_on_twenty_vs_six() {
        let mut shoe = Shoe::new(1).unwrap();
        for c in [6, 10, 10] {
            shoe.remove(r(c));
        }
        let mut cache = evaluator_for(r(6), &shoe);
        let mut ev = HandEvaluator::new(RuleSet::default(), &mut cache);
        let hand = HandState::from_cards(&[Rank::TEN, Rank::TEN]);
        let v = ev.stand(&hand, &shoe);
        assert!((v - 0.697403).abs() < 5e-7, "{v}");
    }

    #[test]
    fn double_bounds() {
        let mut shoe = Shoe::new(1).unwrap();
        for c in [6, 5, 6] {
            shoe.remove(r(c));
        }
        let mut cache = evaluator_for(r(6), &shoe);
        let mut ev = HandEvaluator::new(RuleSet::default(), &mut cache);
        let mut hand = HandState::from_cards(&[r(5), r(6)]);
        let d = ev.double(&mut hand, &mut shoe.clone());
        let mut lo: f64 = 2.0;
        let mut hi: f64 = -2.0;
        for c in Rank::all() {
            if shoe.count(c) == 0 {
                continue;
            }
            let mut s2 = shoe;
            s2.remove(c);
            let mut h2 = hand;
            h2.add(c);
            let v = 2.0 * ev.stand(&h2, &s2);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert!(d >= lo && d <= hi);
    }

    #[test]
    fn double_all_bust() {
        // hard 20 with only tens left: every draw busts
        let shoe = Shoe::from_counts([0, 0, 0, 0, 0, 0, 0, 0, 0, 8], 1).unwrap();
        let mut cache = evaluator_for(r(6), &shoe);
        let mut ev = HandEvaluator::new(RuleSet::default(), &mut cache);
        let mut hand = HandState::from_cards(&[Rank::TEN, Rank::TEN]);
        assert_eq!(ev.double(&mut hand, &mut shoe.clone()), -2.0);
    }
}
