//! Whole-game expected value for basic-strategy play: every initial deal is
//! weighted by its probability, naturals are settled directly, and other
//! hands take the best of standing, hitting, doubling and splitting.

use std::collections::HashMap;

use serde::Serialize;

use crate::approx::approx_split;
use crate::cache::{CacheSize, CacheWidth, DealerCache};
use crate::cards::{HandState, Rank, Shoe};
use crate::exact::HandEvaluator;
use crate::rules::{DoubleOption, RuleSet};
use crate::split::{exact_split, Method};
use crate::strategy::{basic_double, basic_hit, double_permitted};
use crate::Error;

/// Where split values come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitSource {
    /// Exact values wherever splitting could be the best play.
    Exact,
    /// The approximations everywhere.
    Approximate,
}

/// How the initial play of an unsplit hand is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    /// Stand, hit or double as the basic strategy says; split when that
    /// beats the basic play.
    Basic,
    /// The best of every permitted play for the exact composition.
    Best,
}

/// How the chance of a dealer natural is weighed against each deal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NaturalOdds {
    /// Hole card drawn from the shoe less the up card only.
    UpCardOnly,
    /// Hole card drawn from the shoe less the up card and both player cards.
    Conditioned,
}

/// Approximate split values further than this below the best alternative
/// cannot win once exact; their exact value is not needed.
pub const SCREEN_MARGIN: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Play {
    Natural,
    Stand,
    Hit,
    Double,
    Split,
}

/// One initial deal: a two-card player hand (low card first) against an up
/// card, with the value of each permitted play given no dealer natural.
#[derive(Clone, Debug, Serialize)]
pub struct Deal {
    pub up: Rank,
    pub cards: [Rank; 2],
    /// Probability of this deal.
    pub weight: f64,
    /// Probability the dealer holds a natural, given the deal.
    pub dealer_natural: f64,
    pub stand: f64,
    pub hit: f64,
    pub double: Option<f64>,
    pub split: Option<f64>,
    /// Whether `split` is exact rather than approximate.
    pub split_exact: bool,
    /// The basic-strategy play for the unsplit hand.
    pub basic: Play,
}

impl Deal {
    pub fn is_natural(&self) -> bool {
        HandState::from_cards(&self.cards).is_natural()
    }

    /// Best play and its value (given no dealer natural) after rounding each
    /// option with `round`. Ties go to the earlier of stand, hit, double,
    /// split.
    pub fn best_with(&self, decision: Decision, round: impl Fn(f64) -> f64) -> (Play, f64) {
        if self.is_natural() {
            return (Play::Natural, 1.5);
        }
        let value = |play| match play {
            Play::Hit => Some(self.hit),
            Play::Double => self.double,
            Play::Split => self.split,
            _ => Some(self.stand),
        };
        let mut best = (Play::Stand, round(self.stand));
        let mut options = vec![(Play::Split, self.split)];
        match decision {
            Decision::Basic => best = (self.basic, round(value(self.basic).unwrap())),
            Decision::Best => options = vec![(Play::Hit, Some(self.hit)), (Play::Double, self.double), (Play::Split, self.split)],
        }
        for (play, v) in options {
            if let Some(v) = v {
                let v = round(v);
                if v > best.1 {
                    best = (play, v);
                }
            }
        }
        best
    }

    pub fn best(&self, decision: Decision) -> (Play, f64) {
        self.best_with(decision, |x| x)
    }

    /// Contribution to the game value, in initial bets, before weighting.
    pub fn value_with(&self, decision: Decision, round: impl Fn(f64) -> f64) -> f64 {
        let (play, v) = self.best_with(decision, round);
        if play == Play::Natural {
            (1.0 - self.dealer_natural) * 1.5
        } else {
            -self.dealer_natural + (1.0 - self.dealer_natural) * v
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GameEV {
    /// Game value in percent of the initial bet.
    pub value: f64,
    pub rules: RuleSet,
    pub source: SplitSource,
    pub decision: Decision,
    pub deals: Vec<Deal>,
}

impl GameEV {
    /// Recomputes the game value (percent) with every option value rounded
    /// by `round`.
    pub fn value_with(&self, round: impl Fn(f64) -> f64 + Copy) -> f64 {
        100.0 * self.deals.iter().map(|d| d.weight * d.value_with(self.decision, round)).sum::<f64>()
    }

    pub fn total_weight(&self) -> f64 {
        self.deals.iter().map(|d| d.weight).sum()
    }
}

fn ordered_deal_weight(shoe: &Shoe, cards: [Rank; 3]) -> f64 {
    let mut s = *shoe;
    let mut w = 1.0;
    for c in cards {
        if s.count(c) == 0 {
            return 0.0;
        }
        w *= s.count(c) as f64 / s.total() as f64;
        s.remove(c);
    }
    w
}

/// Split value for one pair against one up card. `shoe` excludes the up card
/// and both split cards.
pub fn split_value(shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet, source: SplitSource) -> Result<f64, Error> {
    match source {
        SplitSource::Approximate => {
            let mut cache = DealerCache::new(*shoe, up, rules.dealer_hits_soft17, CacheSize::Depth(8), CacheWidth::Double)?;
            approx_split(shoe, up, s, rules, &mut cache)
        }
        SplitSource::Exact => {
            let mut cache = DealerCache::new(*shoe, up, rules.dealer_hits_soft17, CacheSize::default(), CacheWidth::Double)?;
            Ok(exact_split(shoe, up, s, rules, Method::Merged, &mut cache).ev)
        }
    }
}

// Split values depend on the rules only through these fields.
type SplitKey = (u8, bool, DoubleOption, u8, Rank, Rank, bool);

fn split_key(rules: &RuleSet, up: Rank, s: Rank, exact: bool) -> SplitKey {
    (rules.decks, rules.dealer_hits_soft17, rules.dd_after_split, rules.hand_limit(s), up, s, exact)
}

/// Evaluates games under several rule sets, reusing split values that the
/// rule sets share.
pub struct GameCalculator {
    pub source: SplitSource,
    pub decision: Decision,
    pub odds: NaturalOdds,
    splits: HashMap<SplitKey, f64>,
}

impl GameCalculator {
    /// Best play for each initial deal, dealer naturals weighed by the up
    /// card alone.
    pub fn new(source: SplitSource) -> GameCalculator {
        GameCalculator {
            source,
            decision: Decision::Best,
            odds: NaturalOdds::UpCardOnly,
            splits: HashMap::new(),
        }
    }

    fn split(&mut self, shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet, source: SplitSource) -> Result<f64, Error> {
        let key = split_key(rules, up, s, source == SplitSource::Exact);
        if let Some(&v) = self.splits.get(&key) {
            return Ok(v);
        }
        let v = split_value(shoe, up, s, rules, source)?;
        self.splits.insert(key, v);
        Ok(v)
    }

    /// Game value for `rules`. A hand limit of one disables splitting.
    pub fn evaluate(&mut self, rules: &RuleSet) -> Result<GameEV, Error> {
        rules.validate()?;
        let full = Shoe::new(rules.decks)?;
        let mut deals = Vec::new();
        for up in Rank::all() {
            let mut base = full;
            base.remove(up);
            let mut cache = DealerCache::new(base, up, rules.dealer_hits_soft17, CacheSize::Depth(8), CacheWidth::Double)?;
            for a in Rank::all() {
                for b in Rank::all().filter(|&b| b >= a) {
                    let mut weight = ordered_deal_weight(&full, [a, b, up]);
                    if a != b {
                        weight += ordered_deal_weight(&full, [b, a, up]);
                    }
                    if weight == 0.0 {
                        continue;
                    }
                    let mut shoe = base;
                    shoe.remove(a);
                    shoe.remove(b);
                    let hole_shoe = match self.odds {
                        NaturalOdds::UpCardOnly => &base,
                        NaturalOdds::Conditioned => &shoe,
                    };
                    let dealer_natural = match up.natural_partner() {
                        Some(p) => hole_shoe.count(p) as f64 / hole_shoe.total() as f64,
                        None => 0.0,
                    };
                    let mut hand = HandState::from_cards(&[a, b]);
                    let basic = if basic_double(&hand, up, rules) {
                        Play::Double
                    } else if basic_hit(&hand, up, rules) {
                        Play::Hit
                    } else {
                        Play::Stand
                    };
                    let mut ev = HandEvaluator::new(*rules, &mut cache);
                    let stand = ev.stand(&hand, &shoe);
                    let hit = ev.hit(&mut hand, &mut shoe);
                    let double = double_permitted(&hand, rules.dd_option).then(|| ev.double(&mut hand, &mut shoe));
                    let mut deal = Deal {
                        up,
                        cards: [a, b],
                        weight,
                        dealer_natural,
                        stand,
                        hit,
                        double,
                        split: None,
                        split_exact: false,
                        basic,
                    };
                    if a == b && rules.max_hands >= 2 {
                        let alt = deal.best(self.decision).1;
                        let approx = self.split(&shoe, up, a, rules, SplitSource::Approximate)?;
                        deal.split = Some(approx);
                        if self.source == SplitSource::Exact && approx > alt - SCREEN_MARGIN {
                            deal.split = Some(self.split(&shoe, up, a, rules, SplitSource::Exact)?);
                            deal.split_exact = true;
                        }
                    }
                    deals.push(deal);
                }
            }
        }
        let mut g = GameEV {
            value: 0.0,
            rules: *rules,
            source: self.source,
            decision: self.decision,
            deals,
        };
        g.value = g.value_with(|x| x);
        Ok(g)
    }

    /// `evaluate(variant) - evaluate(base)` in percent.
    pub fn delta(&mut self, base: &RuleSet, variant: &RuleSet) -> Result<f64, Error> {
        Ok(self.evaluate(variant)?.value - self.evaluate(base)?.value)
    }
}

/// Game value for `rules` with a fresh [`GameCalculator`].
pub fn game_ev(rules: &RuleSet, source: SplitSource) -> Result<GameEV, Error> {
    GameCalculator::new(source).evaluate(rules)
}

/// `game_ev(variant) - game_ev(base)` in percent.
pub fn rule_delta(base: &RuleSet, variant: &RuleSet, source: SplitSource) -> Result<f64, Error> {
    GameCalculator::new(source).delta(base, variant)
}

/// Rounds to `digits` decimal places.
pub fn round_to(x: f64, digits: u32) -> f64 {
    let f = 10f64.powi(digits as i32);
    (x * f).round() / f
}

/// Game value recomputed from option values rounded to each number of
/// decimal places in `digits`.
pub fn precision_sweep(game: &GameEV, digits: impl IntoIterator<Item = u32>) -> Vec<(u32, f64)> {
    digits
        .into_iter()
        .map(|k| (k, game.value_with(move |x| round_to(x, k))))
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SplitOpportunities {
    /// Probability the initial hand is a pair.
    pub pairs: f64,
    /// Probability the initial hand is a pair that is best split.
    pub favorable: f64,
}

pub fn split_opportunity_stats(game: &GameEV) -> SplitOpportunities {
    let mut out = SplitOpportunities { pairs: 0.0, favorable: 0.0 };
    for d in &game.deals {
        if d.cards[0] == d.cards[1] {
            out.pairs += d.weight;
            if d.best(game.decision).0 == Play::Split {
                out.favorable += d.weight;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_to(0.1234567, 3), 0.123);
        assert_eq!(round_to(-0.1235, 2), -0.12);
    }

    #[test]
    fn best_play_ties_go_to_stand() {
        let d = Deal {
            up: Rank::TEN,
            cards: [Rank::new(8).unwrap(), Rank::new(9).unwrap()],
            weight: 1.0,
            dealer_natural: 0.0,
            stand: 0.1,
            hit: 0.1,
            double: Some(0.1),
            split: None,
            split_exact: false,
            basic: Play::Stand,
        };
        assert_eq!(d.best(Decision::Best), (Play::Stand, 0.1));
    }

    #[test]
    fn no_split_game_weights() {
        let g = game_ev(&RuleSet::default().with_max_hands(1), SplitSource::Approximate).unwrap();
        assert!((g.total_weight() - 1.0).abs() < 1e-12);
        assert!(g.deals.iter().all(|d| d.split.is_none()));
        assert!(g.value > -5.0 && g.value < 5.0);
        let s = split_opportunity_stats(&g);
        assert_eq!(s.favorable, 0.0);
    }
}
