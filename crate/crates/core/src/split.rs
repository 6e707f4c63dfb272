//! Exact expected values for splitting a pair.
//!
//! Hands are played one after another. A hand whose second card matches the
//! split card becomes two hands while fewer than the allowed number of hands
//! exist. Once every hand is complete, all of them are settled against the
//! dealer using the shoe depleted by every card dealt to the player.

use std::time::Instant;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::cache::{CacheStats, DealerCache, HandIndex};
use crate::cards::{HandState, Rank, Shoe};
use crate::exact::{player_card_prob, remove_with_weight, HandEvaluator};
use crate::rules::RuleSet;
use crate::strategy::{split_action, Action};
use crate::Error;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SplitResult {
    /// Expected value summed over all split hands, in initial bets.
    pub ev: f64,
    /// Complete hand sets settled against the dealer.
    pub hands_enumerated: u64,
    /// Catalog size for the hands-based methods; zero for the recursive one.
    pub unique_hands: usize,
    /// Memoized states for the merged method; zero otherwise.
    pub states: usize,
    pub elapsed: f64,
    pub cache: CacheStats,
}

/// The shoe after dealing the up card and the two split cards.
pub fn split_shoe(shoe: &Shoe, up: Rank, split: Rank) -> Result<Shoe, Error> {
    let mut s = *shoe;
    if s.remove_all(&[up, split, split]) {
        Ok(s)
    } else {
        Err(Error::CardsUnavailable(format!("{up},{split},{split}")))
    }
}

// Decides whether a split hand keeps drawing right after it received a card
// (or a new hand was split off it). Sets the bet when the hand doubles.
#[inline]
fn keeps_drawing(hand: &mut HandState, up: Rank, rules: &RuleSet) -> bool {
    if hand.bet == 2 || hand.score().is_bust() {
        return false;
    }
    match split_action(hand, up, rules) {
        Action::Stand => false,
        Action::Hit => true,
        Action::Double => {
            hand.bet = 2;
            true
        }
    }
}

struct Recursive<'a> {
    shoe: Shoe,
    up: Rank,
    split: Rank,
    limit: usize,
    rules: RuleSet,
    cache: &'a mut DealerCache,
    hands: Vec<HandState>,
    terminals: u64,
}

impl Recursive<'_> {
    fn play(&mut self, k: usize) -> f64 {
        let mut ev = 0.0;
        for r in Rank::all().rev() {
            if self.shoe.count(r) == 0 {
                continue;
            }
            let wt = player_card_prob(&self.shoe, self.up, r);
            if wt == 0.0 {
                continue;
            }
            self.shoe.remove(r);
            let new_hand = r == self.split && self.hands[k].num_cards() == 1 && self.hands.len() < self.limit;
            if new_hand {
                self.hands.push(HandState::new(self.split));
            } else {
                self.hands[k].add(r);
            }

            let v = if keeps_drawing(&mut self.hands[k], self.up, &self.rules) {
                self.play(k)
            } else if k + 1 < self.hands.len() {
                self.play(k + 1)
            } else {
                self.settle()
            };
            ev += wt * v;

            if new_hand {
                self.hands.pop();
            } else {
                let hand = &mut self.hands[k];
                hand.remove(r);
                if hand.num_cards() == 1 {
                    hand.bet = 1;
                }
            }
            self.shoe.restore(r);
        }
        ev
    }

    fn settle(&mut self) -> f64 {
        self.terminals += 1;
        let d = self.cache.distribution(&self.shoe);
        self.hands
            .iter()
            .map(|h| h.bet as f64 * d.stand_value(h.score().total))
            .sum()
    }
}

/// Exact split value by recursive card-by-card generation of every
/// combination of split hands. `shoe` must already exclude the up card and
/// both split cards; the cache baseline should be that same shoe.
pub fn exact_split_recursive(shoe: &Shoe, up: Rank, split: Rank, rules: &RuleSet, cache: &mut DealerCache) -> SplitResult {
    let start = Instant::now();
    let limit = rules.hand_limit(split).max(2) as usize;
    let mut rec = Recursive {
        shoe: *shoe,
        up,
        split,
        limit,
        rules: *rules,
        cache,
        hands: vec![HandState::new(split), HandState::new(split)],
        terminals: 0,
    };
    let ev = rec.play(0);
    debug_assert_eq!(rec.shoe, *shoe);
    SplitResult {
        ev,
        hands_enumerated: rec.terminals,
        unique_hands: 0,
        states: 0,
        elapsed: start.elapsed().as_secs_f64(),
        cache: rec.cache.stats(),
    }
}

/// One unique playable split hand and how often, and with what bets, its
/// composition arises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayHand {
    /// Per-rank counts of the whole hand, including the split card.
    pub counts: [u8; 10],
    /// Cards after the split card, in non-increasing order.
    pub drawn: Vec<Rank>,
    /// Final total (above 21 when bust).
    pub total: u8,
    /// Order-distinct ways the hand arises.
    pub occurrences: u64,
    /// Of those, the ways whose second card is the split card.
    pub splittable_occurrences: u64,
    /// Summed bet over all occurrences.
    pub total_bet: u64,
    pub total_bet_splittable: u64,
}

impl PlayHand {
    pub fn is_splittable(&self) -> bool {
        self.splittable_occurrences > 0
    }

    pub fn num_cards(&self) -> usize {
        self.drawn.len() + 1
    }
}

/// Unique split hands for one (shoe, up card, split card, rules) setup.
#[derive(Clone, Debug, Serialize)]
pub struct Catalog {
    pub up: Rank,
    pub split: Rank,
    pub rules: RuleSet,
    pub hands: Vec<PlayHand>,
    /// Hands produced by recursive generation, counting repeats.
    pub generated: u64,
}

/// Catalogs every hand one split hand can finish as. Hands whose second card
/// is the split card are played on as ordinary hands and flagged as
/// splittable.
pub fn enumerate_unique_hands(shoe: &Shoe, up: Rank, split: Rank, rules: &RuleSet) -> Catalog {
    struct Gen<'a> {
        shoe: Shoe,
        up: Rank,
        split: Rank,
        rules: &'a RuleSet,
        index: HandIndex,
        hands: Vec<PlayHand>,
        generated: u64,
    }
    impl Gen<'_> {
        fn walk(&mut self, hand: &mut HandState, second_is_split: bool) {
            for r in Rank::all() {
                if !self.shoe.remove(r) {
                    continue;
                }
                hand.add(r);
                let second = if hand.num_cards() == 2 { r == self.split } else { second_is_split };
                if keeps_drawing(hand, self.up, self.rules) {
                    self.walk(hand, second);
                } else {
                    self.record(hand, second);
                }
                hand.remove(r);
                if hand.num_cards() == 1 {
                    hand.bet = 1;
                }
                self.shoe.restore(r);
            }
        }

        fn record(&mut self, hand: &HandState, second_is_split: bool) {
            self.generated += 1;
            let pos = match self.index.get(hand.counts()) {
                Some(p) => p,
                None => {
                    let mut drawn = hand.sorted_cards();
                    let at = drawn.iter().position(|&c| c == self.split).expect("split card present");
                    drawn.remove(at);
                    self.hands.push(PlayHand {
                        counts: *hand.counts(),
                        drawn,
                        total: hand.score().total,
                        occurrences: 0,
                        splittable_occurrences: 0,
                        total_bet: 0,
                        total_bet_splittable: 0,
                    });
                    let p = self.hands.len() - 1;
                    self.index.insert(hand.counts(), p);
                    p
                }
            };
            let e = &mut self.hands[pos];
            e.occurrences += 1;
            e.total_bet += hand.bet as u64;
            if second_is_split {
                e.splittable_occurrences += 1;
                e.total_bet_splittable += hand.bet as u64;
            }
        }
    }

    let mut gen = Gen {
        shoe: *shoe,
        up,
        split,
        rules,
        index: HandIndex::new(),
        hands: Vec::new(),
        generated: 0,
    };
    let mut hand = HandState::new(split);
    gen.walk(&mut hand, false);
    Catalog {
        up,
        split,
        rules: *rules,
        hands: gen.hands,
        generated: gen.generated,
    }
}

#[derive(Clone, Copy)]
struct Slot {
    total: u8,
    bet: f64,
}

struct HandsMethod<'a> {
    shoe: Shoe,
    up: Rank,
    split: Rank,
    limit: usize,
    cache: &'a mut DealerCache,
    catalog: &'a [PlayHand],
    slots: Vec<Slot>,
    terminals: u64,
}

impl HandsMethod<'_> {
    fn play(&mut self, k: usize) -> f64 {
        let mut ev = 0.0;
        let wt = player_card_prob(&self.shoe, self.up, self.split);
        if self.slots.len() < self.limit && wt > 0.0 {
            self.shoe.remove(self.split);
            self.slots.push(Slot { total: 0, bet: 1.0 });
            ev += wt * self.play(k);
            self.slots.pop();
            self.shoe.restore(self.split);
        }

        let can_resplit = self.slots.len() < self.limit;
        let last = k + 1 == self.slots.len();
        for e in self.catalog {
            let (occ, bet) = if can_resplit && e.is_splittable() {
                (e.occurrences - e.splittable_occurrences, e.total_bet - e.total_bet_splittable)
            } else {
                (e.occurrences, e.total_bet)
            };
            if occ == 0 {
                continue;
            }
            let Some(p) = remove_with_weight(&mut self.shoe, self.up, &e.drawn) else {
                continue;
            };
            if p == 0.0 {
                for &c in &e.drawn {
                    self.shoe.restore(c);
                }
                continue;
            }
            let wt = p * occ as f64;
            self.slots[k] = Slot {
                total: e.total,
                bet: bet as f64 / occ as f64,
            };
            let v = if last { self.settle() } else { self.play(k + 1) };
            ev += wt * v;
            for &c in &e.drawn {
                self.shoe.restore(c);
            }
        }
        ev
    }

    fn settle(&mut self) -> f64 {
        self.terminals += 1;
        let d = self.cache.distribution(&self.shoe);
        self.slots.iter().map(|s| s.bet * d.stand_value(s.total)).sum()
    }
}

/// Exact split value by looping over a catalog of unique hands for each
/// hand slot. Agrees with [`exact_split_recursive`].
pub fn exact_split_hands(
    shoe: &Shoe,
    up: Rank,
    split: Rank,
    rules: &RuleSet,
    cache: &mut DealerCache,
    catalog: &Catalog,
) -> SplitResult {
    assert!(
        catalog.up == up && catalog.split == split && catalog.rules == *rules,
        "catalog built for a different setup"
    );
    let start = Instant::now();
    let limit = rules.hand_limit(split).max(2) as usize;
    let mut m = HandsMethod {
        shoe: *shoe,
        up,
        split,
        limit,
        cache,
        catalog: &catalog.hands,
        slots: vec![Slot { total: 0, bet: 1.0 }; 2],
        terminals: 0,
    };
    let ev = m.play(0);
    debug_assert_eq!(m.shoe, *shoe);
    SplitResult {
        ev,
        hands_enumerated: m.terminals,
        unique_hands: catalog.hands.len(),
        states: 0,
        elapsed: start.elapsed().as_secs_f64(),
        cache: m.cache.stats(),
    }
}

// Class of a standing total for settlement: 0 for 16 or less, then 17..=21.
#[inline]
fn stand_class(total: u8) -> usize {
    if total <= 16 {
        0
    } else {
        (total - 16) as usize
    }
}

#[derive(Clone, Copy)]
struct Outlook {
    /// Expected final stand values by class, over the rest of the play.
    stand: [f64; 6],
    /// Expected result of the hands still to be played.
    future: f64,
}

struct Merged<'a> {
    shoe: Shoe,
    up: Rank,
    split: Rank,
    limit: usize,
    cache: &'a mut DealerCache,
    catalog: &'a [PlayHand],
    memo: FxHashMap<(u64, u8, u8), Outlook>,
    // final stand values by shoe, for removals too deep for the cache
    settled: FxHashMap<u64, [f64; 6]>,
    terminals: u64,
}

impl Merged<'_> {
    // Outlook when hand `k` of `n` is about to receive its second card.
    fn solve(&mut self, n: usize, k: usize) -> Outlook {
        let key = (self.shoe.pack(), n as u8, k as u8);
        if let Some(o) = self.memo.get(&key) {
            return *o;
        }
        let mut out = Outlook { stand: [0.0; 6], future: 0.0 };
        let wt = player_card_prob(&self.shoe, self.up, self.split);
        if n < self.limit && wt > 0.0 {
            self.shoe.remove(self.split);
            let o = self.solve(n + 1, k);
            self.shoe.restore(self.split);
            for c in 0..6 {
                out.stand[c] += wt * o.stand[c];
            }
            out.future += wt * o.future;
        }

        let can_resplit = n < self.limit;
        let last = k + 1 == n;
        for e in self.catalog {
            let (occ, bet) = if can_resplit && e.is_splittable() {
                (e.occurrences - e.splittable_occurrences, e.total_bet - e.total_bet_splittable)
            } else {
                (e.occurrences, e.total_bet)
            };
            if occ == 0 {
                continue;
            }
            let Some(p) = remove_with_weight(&mut self.shoe, self.up, &e.drawn) else {
                continue;
            };
            if p == 0.0 {
                for &c in &e.drawn {
                    self.shoe.restore(c);
                }
                continue;
            }
            let wt = p * occ as f64;
            let bet = bet as f64 / occ as f64;
            let next = if last {
                self.terminals += 1;
                Outlook {
                    stand: self.settle(),
                    future: 0.0,
                }
            } else {
                self.solve(n, k + 1)
            };
            let own = if e.total > 21 { -bet } else { bet * next.stand[stand_class(e.total)] };
            for c in 0..6 {
                out.stand[c] += wt * next.stand[c];
            }
            out.future += wt * (own + next.future);
            for &c in &e.drawn {
                self.shoe.restore(c);
            }
        }
        self.memo.insert(key, out);
        out
    }

    fn settle(&mut self) -> [f64; 6] {
        let removed = (self.cache.baseline().total() - self.shoe.total()) as usize;
        if removed <= self.cache.plan().depth() {
            return self.cache.distribution(&self.shoe).stand_values();
        }
        let key = self.shoe.pack();
        if let Some(v) = self.settled.get(&key) {
            return *v;
        }
        let v = self.cache.distribution(&self.shoe).stand_values();
        self.settled.insert(key, v);
        v
    }
}

/// Exact split value by backward induction over (remaining shoe, hand count,
/// current hand). Hands still to be played depend only on that state, so
/// play histories that remove the same cards are evaluated once. Agrees with
/// the other exact methods.
pub fn exact_split_merged(
    shoe: &Shoe,
    up: Rank,
    split: Rank,
    rules: &RuleSet,
    cache: &mut DealerCache,
    catalog: &Catalog,
) -> SplitResult {
    assert!(
        catalog.up == up && catalog.split == split && catalog.rules == *rules,
        "catalog built for a different setup"
    );
    let start = Instant::now();
    let limit = rules.hand_limit(split).max(2) as usize;
    let mut m = Merged {
        shoe: *shoe,
        up,
        split,
        limit,
        cache,
        catalog: &catalog.hands,
        memo: FxHashMap::default(),
        settled: FxHashMap::default(),
        terminals: 0,
    };
    let ev = m.solve(2, 0).future;
    debug_assert_eq!(m.shoe, *shoe);
    SplitResult {
        ev,
        hands_enumerated: m.terminals,
        unique_hands: catalog.hands.len(),
        states: m.memo.len(),
        elapsed: start.elapsed().as_secs_f64(),
        cache: m.cache.stats(),
    }
}

/// Exact split engine selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    /// Card-by-card recursion over every play history.
    Recursive,
    /// Loops over a catalog of unique hands.
    Hands,
    /// Catalog loops with merged play histories.
    Merged,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "recursive" => Ok(Method::Recursive),
            "hands" => Ok(Method::Hands),
            "merged" => Ok(Method::Merged),
            _ => Err(Error::InvalidOption(s.to_string())),
        }
    }
}

/// Exact split value with the chosen engine. `shoe` excludes the up card and
/// both split cards. A hand limit of one plays the pair unsplit. The elapsed
/// time includes building the catalog.
pub fn exact_split(shoe: &Shoe, up: Rank, split: Rank, rules: &RuleSet, method: Method, cache: &mut DealerCache) -> SplitResult {
    let start = Instant::now();
    let mut res = if rules.max_hands == 1 {
        SplitResult {
            ev: unsplit_pair_ev(shoe, split, rules, cache),
            ..SplitResult::default()
        }
    } else {
        match method {
            Method::Recursive => exact_split_recursive(shoe, up, split, rules, cache),
            Method::Hands => {
                let catalog = enumerate_unique_hands(shoe, up, split, rules);
                exact_split_hands(shoe, up, split, rules, cache, &catalog)
            }
            Method::Merged => {
                let catalog = enumerate_unique_hands(shoe, up, split, rules);
                exact_split_merged(shoe, up, split, rules, cache, &catalog)
            }
        }
    };
    res.elapsed = start.elapsed().as_secs_f64();
    res.cache = cache.stats();
    res
}

/// Twice the value of a single hand holding one split card, with the other
/// split card out of the shoe.
pub fn split_ev_one_hand(shoe: &Shoe, split: Rank, rules: &RuleSet, cache: &mut DealerCache) -> f64 {
    let mut ev = HandEvaluator::new(*rules, cache);
    let mut work = *shoe;
    let mut hand = HandState::new(split);
    2.0 * ev.split_hand(&mut hand, &mut work, None)
}

/// Value of playing the pair unsplit by basic strategy: what a one-hand
/// limit amounts to.
pub fn unsplit_pair_ev(shoe: &Shoe, split: Rank, rules: &RuleSet, cache: &mut DealerCache) -> f64 {
    let mut ev = HandEvaluator::new(*rules, cache);
    let mut work = *shoe;
    let mut hand = HandState::from_cards(&[split, split]);
    ev.basic_play(&mut hand, &mut work)
}
