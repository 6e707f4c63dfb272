// Brute-force split values over ordered card sequences. The hole card is
// dealt first and natural-forming hole cards are rejected, every later card
// is a plain draw without replacement, and probabilities are naive products.
// Returns `None` when some sequence would run the shoe dry.

use pairsplit::strategy::{split_action, Action};
use pairsplit::{HandState, Rank, RuleSet, Shoe};

struct Setup {
    up: Rank,
    split: Rank,
    rules: RuleSet,
    limit: usize,
}

fn draws(shoe: &Shoe) -> Vec<(Rank, f64)> {
    let n = shoe.total() as f64;
    Rank::all()
        .filter(|&r| shoe.count(r) > 0)
        .map(|r| (r, shoe.count(r) as f64 / n))
        .collect()
}

pub fn split_value(shoe: &Shoe, up: Rank, split: Rank, rules: &RuleSet) -> Option<f64> {
    let setup = Setup {
        up,
        split,
        rules: *rules,
        limit: rules.hand_limit(split) as usize,
    };
    let partner = up.natural_partner();
    let barred = partner.map_or(0, |p| shoe.count(p)) as f64;
    let denom = shoe.total() as f64 - barred;
    if denom <= 0.0 {
        return None;
    }
    let mut ev = 0.0;
    for r in Rank::all() {
        if shoe.count(r) == 0 || Some(r) == partner {
            continue;
        }
        let w = shoe.count(r) as f64 / denom;
        let mut s = *shoe;
        s.remove(r);
        ev += w * next_hand(&setup, &s, r, 2, &mut Vec::new())?;
    }
    Some(ev)
}

fn next_hand(st: &Setup, shoe: &Shoe, hole: Rank, pending: usize, done: &mut Vec<HandState>) -> Option<f64> {
    if pending == 0 {
        return settle(st, shoe, hole, done);
    }
    second_card(st, shoe, hole, pending - 1, HandState::new(st.split), done)
}

fn second_card(st: &Setup, shoe: &Shoe, hole: Rank, pending: usize, hand: HandState, done: &mut Vec<HandState>) -> Option<f64> {
    if shoe.total() == 0 {
        return None;
    }
    let mut ev = 0.0;
    for (r, w) in draws(shoe) {
        let mut s = *shoe;
        s.remove(r);
        let v = if r == st.split && done.len() + pending + 1 < st.limit {
            second_card(st, &s, hole, pending + 1, hand, done)?
        } else {
            let mut h = hand;
            h.add(r);
            play(st, &s, hole, pending, h, done)?
        };
        ev += w * v;
    }
    Some(ev)
}

fn play(st: &Setup, shoe: &Shoe, hole: Rank, pending: usize, mut hand: HandState, done: &mut Vec<HandState>) -> Option<f64> {
    let action = if hand.score().is_bust() {
        Action::Stand
    } else {
        split_action(&hand, st.up, &st.rules)
    };
    match action {
        Action::Stand => {
            done.push(hand);
            let v = next_hand(st, shoe, hole, pending, done);
            done.pop();
            v
        }
        Action::Hit | Action::Double => {
            if shoe.total() == 0 {
                return None;
            }
            if action == Action::Double {
                hand.bet = 2;
            }
            let mut ev = 0.0;
            for (r, w) in draws(shoe) {
                let mut s = *shoe;
                s.remove(r);
                let mut h = hand;
                h.add(r);
                let v = if action == Action::Double {
                    done.push(h);
                    let v = next_hand(st, &s, hole, pending, done);
                    done.pop();
                    v?
                } else {
                    play(st, &s, hole, pending, h, done)?
                };
                ev += w * v;
            }
            Some(ev)
        }
    }
}

fn settle(st: &Setup, shoe: &Shoe, hole: Rank, done: &[HandState]) -> Option<f64> {
    let dealer = HandState::from_cards(&[st.up, hole]);
    let mut finals = [0.0; 23];
    dealer_finals(shoe, dealer, st.rules.dealer_hits_soft17, 1.0, &mut finals)?;
    let mut ev = 0.0;
    for (d, &p) in finals.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for h in done {
            let t = h.score().total as usize;
            let bet = h.bet as f64;
            let r = if t > 21 {
                -bet
            } else if d > 21 || t > d {
                bet
            } else if t < d {
                -bet
            } else {
                0.0
            };
            ev += p * r;
        }
    }
    Some(ev)
}

// finals[22] collects every bust.
fn dealer_finals(shoe: &Shoe, hand: HandState, h17: bool, p: f64, finals: &mut [f64; 23]) -> Option<()> {
    let sc = hand.score();
    if sc.total > 21 {
        finals[22] += p;
        return Some(());
    }
    if sc.total > 17 || (sc.total == 17 && !(sc.soft && h17)) {
        finals[sc.total as usize] += p;
        return Some(());
    }
    if shoe.total() == 0 {
        return None;
    }
    for (r, w) in draws(shoe) {
        let mut s = *shoe;
        s.remove(r);
        let mut h = hand;
        h.add(r);
        dealer_finals(&s, h, h17, p * w, finals)?;
    }
    Some(())
}
