//! Zero-memory single-deck basic strategy for hitting and doubling, and the
//! play of hands formed by splitting.
//!
//! Hitting and doubling are decided from a total-based base table with the
//! composition-dependent exceptions layered on top as explicit predicates.

use serde::{Deserialize, Serialize};

use crate::cards::{HandState, Rank};
use crate::rules::{DoubleOption, RuleSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    Stand,
    Hit,
    Double,
}

impl Action {
    pub fn code(self) -> &'static str {
        match self {
            Action::Stand => "S",
            Action::Hit => "H",
            Action::Double => "D",
        }
    }
}

/// Hit/stand decision for a hand of two or more cards that has not busted.
pub fn basic_hit(hand: &HandState, up: Rank, rules: &RuleSet) -> bool {
    let score = hand.score();
    if score.total >= 21 {
        return false;
    }
    let stands_s17 = !rules.dealer_hits_soft17;
    let up = up.value();
    if score.soft {
        return match up {
            2..=8 => score.total <= 17,
            9 | 10 => score.total <= 18,
            // ace: stand on soft 18 only when the dealer stands on soft 17
            _ => score.total <= if stands_s17 { 17 } else { 18 },
        };
    }
    let total = score.total;
    match up {
        2 => total <= 12 || (stands_s17 && hand.is_pair_of(10, 3)),
        3 => {
            if total == 12 && (hand.is_pair_of(8, 4) || hand.is_pair_of(7, 5) || hand.is_pair_of(6, 6)) {
                false
            } else {
                total <= 12
            }
        }
        4 => total <= 11 || hand.is_pair_of(10, 2),
        5 => total <= 11,
        6 => total <= 11 || (stands_s17 && hand.is_pair_of(10, 2)),
        10 => {
            if hand.is_pair_of(7, 7) || (total == 16 && hand.num_cards() >= 3) {
                false
            } else {
                total <= 16
            }
        }
        // 7, 8, 9 and ace
        _ => total <= 16,
    }
}

/// Basic-strategy doubling decision for a two-card hand, ignoring which
/// doubling option the table offers.
fn strategy_double(hand: &HandState, up: Rank, rules: &RuleSet) -> bool {
    if hand.num_cards() != 2 {
        return false;
    }
    let stands_s17 = !rules.dealer_hits_soft17;
    let up = up.value();
    let score = hand.score();
    if score.soft {
        // (A,x) with x the other card; (A,A) is never doubled
        if hand.count(Rank::ACE) == 2 {
            return false;
        }
        let other = score.total - 11;
        return match up {
            2 => other == 6,
            3 => other == 6 || other == 7,
            4 | 5 => (2..=7).contains(&other),
            6 => (2..=8).contains(&other),
            _ => false,
        };
    }
    let total = score.total;
    match up {
        2..=4 => (9..=11).contains(&total),
        5 => (8..=11).contains(&total) && !(stands_s17 && hand.is_pair_of(6, 2)),
        6 => (8..=11).contains(&total) && !hand.is_pair_of(6, 2),
        7..=9 => total == 10 || total == 11,
        _ => total == 11,
    }
}

/// Whether the doubling option permits doubling this two-card hand at all.
pub fn double_permitted(hand: &HandState, option: DoubleOption) -> bool {
    if hand.num_cards() != 2 {
        return false;
    }
    match option {
        DoubleOption::None => false,
        DoubleOption::AnyTwo => true,
        DoubleOption::TenEleven => {
            let s = hand.score();
            !s.soft && (s.total == 10 || s.total == 11)
        }
    }
}

/// Doubling decision for an initial two-card hand under `rules.dd_option`.
pub fn basic_double(hand: &HandState, up: Rank, rules: &RuleSet) -> bool {
    double_permitted(hand, rules.dd_option) && strategy_double(hand, up, rules)
}

/// Decision for a hand that belongs to a split group. One-card hands are
/// always drawn to; hands of split aces (first card an ace) stop at two
/// cards.
pub fn split_action(hand: &HandState, up: Rank, rules: &RuleSet) -> Action {
    if hand.num_cards() < 2 {
        return Action::Hit;
    }
    if hand.first() == Rank::ACE {
        return Action::Stand;
    }
    if double_permitted(hand, rules.dd_after_split) && strategy_double(hand, up, rules) {
        return Action::Double;
    }
    if basic_hit(hand, up, rules) {
        Action::Hit
    } else {
        Action::Stand
    }
}

/// Printable decision grid, one row per hand class, one column per up card
/// (A, 2, ..., T).
pub fn decision_grid(rules: &RuleSet) -> Vec<(String, Vec<&'static str>)> {
    let ups: Vec<Rank> = std::iter::once(Rank::ACE)
        .chain((2..=10).map(|v| Rank::new(v).unwrap()))
        .collect();
    let mut rows = Vec::new();
    let mut push = |label: String, hand: HandState| {
        let cells = ups
            .iter()
            .map(|&u| {
                if hand.num_cards() == 2 && basic_double(&hand, u, rules) {
                    "D"
                } else if basic_hit(&hand, u, rules) {
                    "H"
                } else {
                    "S"
                }
            })
            .collect();
        rows.push((label, cells));
    };
    let r = |v: u8| Rank::new(v).unwrap();
    // every distinct non-pair, non-ace two-card composition
    for a in (2..=10u8).rev() {
        for b in (2..a).rev() {
            push(format!("{a},{b}"), HandState::from_cards(&[r(a), r(b)]));
        }
    }
    for a in 2..=10u8 {
        push(format!("{a},{a}"), HandState::from_cards(&[r(a), r(a)]));
    }
    for b in 1..=10u8 {
        push(format!("A,{b}"), HandState::from_cards(&[Rank::ACE, r(b)]));
    }
    // multi-card hands by total
    for total in 12..=20u8 {
        let hand = three_card_hard(total);
        push(format!("hard {total} (3+ cards)"), hand);
    }
    for total in 13..=20u8 {
        let hand = three_card_soft(total);
        push(format!("soft {total} (3+ cards)"), hand);
    }
    rows
}

fn three_card_hard(total: u8) -> HandState {
    // 2 + 2 + rest keeps every multi-card hard total in 6..=20 reachable
    let r = |v: u8| Rank::new(v).unwrap();
    let rest = total - 4;
    if rest <= 10 {
        HandState::from_cards(&[r(2), r(2), r(rest.max(2))])
    } else {
        HandState::from_cards(&[r(2), r(2), r(rest - 8), r(8)])
    }
}

fn three_card_soft(total: u8) -> HandState {
    let r = |v: u8| Rank::new(v).unwrap();
    // ace + 2 + rest
    let rest = total - 13;
    if rest >= 2 {
        HandState::from_cards(&[Rank::ACE, r(2), r(rest)])
    } else {
        HandState::from_cards(&[Rank::ACE, Rank::ACE, r(rest + 1)])
    }
}
