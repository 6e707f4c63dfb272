//! Approximate split values built from single-hand expected values.
//!
//! * [`approx_nonresplit`]: twice the value of one hand seeded with the split
//!   card, both split cards out of the shoe.
//! * [`griffin_resplit`]: `sum_i i P(i) E(i)` over the number of hands played.
//! * [`new_approx_resplit`]: the same `E(i)` reweighted by the order in which
//!   split and non-split cards arrive in the first four player cards.

use serde::Serialize;

use crate::cache::{CacheSize, CacheWidth, DealerCache};
use crate::cards::{HandState, Rank, Shoe};
use crate::exact::HandEvaluator;
use crate::rules::RuleSet;
use crate::split::split_ev_one_hand;
use crate::Error;

/// Probabilities of each class of split/non-split card order in the first
/// four player cards. `p3_1` is `nsnn`, `p3_2` is `snnn`, `p4_1` is `nsns`,
/// `p4_2` is `nss?`, `p4_3` is `snns`, `p4_4` is `sns?` and `p4_5` is `ss??`;
/// `p2` covers `nn??`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ResplitProbabilities {
    pub p2: f64,
    pub p3_1: f64,
    pub p3_2: f64,
    pub p4_1: f64,
    pub p4_2: f64,
    pub p4_3: f64,
    pub p4_4: f64,
    pub p4_5: f64,
}

impl ResplitProbabilities {
    pub fn p3(&self) -> f64 {
        self.p3_1 + self.p3_2
    }

    pub fn p4(&self) -> f64 {
        self.p4_1 + self.p4_2 + self.p4_3 + self.p4_4 + self.p4_5
    }

    pub fn sum(&self) -> f64 {
        self.p2 + self.p3() + self.p4()
    }

    /// Weights on `E(2)`, `E(3)` and `E(4)` in the card-order approximation.
    pub fn coefficients(&self) -> [f64; 3] {
        [
            2.0 * self.p2 + self.p3_1 + self.p4_1 + self.p4_2,
            3.0 * self.p3() - self.p3_1 + self.p4_1 + 2.0 * self.p4_3 + self.p4_4,
            4.0 * self.p4() - 2.0 * self.p4_1 - self.p4_2 - 2.0 * self.p4_3 - self.p4_4,
        ]
    }
}

/// Probabilities that the first split card lands in player position `j`
/// (`p[j]`) and that a second one does (`pss[j]`), for `j` in 1..=4.
/// Index 0 is unused.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PositionProbabilities {
    pub p: [f64; 5],
    pub pss: [f64; 5],
}

// Next-card probability of `s` with `drop_s` fewer split cards and `drop_n`
// fewer cards overall.
fn substituted_prob(shoe: &Shoe, up: Rank, s: Rank, drop_s: u16, drop_n: u16) -> f64 {
    let n = shoe.total() as f64 - drop_n as f64;
    let ns = (shoe.count(s) as f64 - drop_s as f64).max(0.0);
    if n <= 0.0 || ns <= 0.0 {
        return 0.0;
    }
    match up.natural_partner() {
        None => ns / n,
        Some(partner) if partner == s => ns / (n - 1.0),
        Some(partner) => {
            let np = shoe.count(partner) as f64;
            ns / (n - 1.0) * (n - np - 1.0) / (n - np)
        }
    }
}

/// Position probabilities for the shoe left after dealing the up card and
/// both split cards.
pub fn position_probs(shoe: &Shoe, up: Rank, s: Rank) -> PositionProbabilities {
    let mut out = PositionProbabilities::default();
    for j in 1..=4u16 {
        out.p[j as usize] = substituted_prob(shoe, up, s, 0, j - 1);
        if j >= 2 {
            out.pss[j as usize] = substituted_prob(shoe, up, s, 1, j - 1);
        }
    }
    out
}

/// Card-order class probabilities. `P(4/4)` is the probability of `s n s`,
/// so the eight values partition all orders and sum to one.
pub fn resplit_position_probs(shoe: &Shoe, up: Rank, s: Rank) -> ResplitProbabilities {
    let pp = position_probs(shoe, up, s);
    let mut r = as_printed(&pp);
    r.p4_4 = pp.p[1] * (1.0 - pp.pss[2]) * pp.pss[3];
    r
}

/// Like [`resplit_position_probs`] but with `P(4/4)` taken as
/// `p1 (1 - p2(s|s)) (1 - p3(s|s))`, the form that repeats the `s n n`
/// prefix. Kept for comparison; its values do not sum to one.
pub fn resplit_position_probs_as_printed(shoe: &Shoe, up: Rank, s: Rank) -> ResplitProbabilities {
    as_printed(&position_probs(shoe, up, s))
}

fn as_printed(pp: &PositionProbabilities) -> ResplitProbabilities {
    let (p1, p2) = (pp.p[1], pp.p[2]);
    let (q2, q3, q4) = (pp.pss[2], pp.pss[3], pp.pss[4]);
    ResplitProbabilities {
        p2: (1.0 - p1) * (1.0 - p2),
        p3_1: (1.0 - p1) * p2 * (1.0 - q3) * (1.0 - q4),
        p3_2: p1 * (1.0 - q2) * (1.0 - q3) * (1.0 - q4),
        p4_1: (1.0 - p1) * p2 * (1.0 - q3) * q4,
        p4_2: (1.0 - p1) * p2 * q3,
        p4_3: p1 * (1.0 - q2) * (1.0 - q3) * q4,
        p4_4: p1 * (1.0 - q2) * (1.0 - q3),
        p4_5: p1 * q2,
    }
}

/// Single-hand values `E(i)` for `i` in `2..=4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ConditionalHandEV {
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
}

/// `E(i)`: the value of one hand starting with `s` once `i` split cards are
/// out of the shoe. Unless `last`, the hand may not draw `s` as its second
/// card and the dealer's draws are conditioned on the other `i - 1` hands'
/// hidden second cards not being split cards. Returns `None` if the shoe
/// does not hold `i - 2` more split cards.
///
/// `shoe` excludes the up card and both original split cards.
pub fn conditional_hand_ev(shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet, i: u8, last: bool) -> Option<f64> {
    assert!((2..=4).contains(&i), "E(i) defined for 2..=4 hands, got {i}");
    let mut work = *shoe;
    for _ in 2..i {
        if !work.remove(s) {
            return None;
        }
    }
    let size = CacheSize::Depth(6);
    let mut cache = if last {
        DealerCache::new(work, up, rules.dealer_hits_soft17, size, CacheWidth::Double)
    } else {
        DealerCache::hole_conditioned(work, up, rules.dealer_hits_soft17, s, i, size, CacheWidth::Double)
    }
    .expect("small cache fits");
    let mut ev = HandEvaluator::new(*rules, &mut cache);
    let mut hand = HandState::new(s);
    let forbid = if last { None } else { Some(s) };
    Some(ev.split_hand(&mut hand, &mut work, forbid))
}

/// `E(2)`, `E(3)` and `E(4)` for a four-hand limit; unreachable values are 0.
pub fn conditional_hand_evs(shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet) -> ConditionalHandEV {
    let e = |i| conditional_hand_ev(shoe, up, s, rules, i, i == 4).unwrap_or(0.0);
    ConditionalHandEV {
        e2: e(2),
        e3: e(3),
        e4: e(4),
    }
}

/// Non-resplit approximation: twice the single-hand value.
pub fn approx_nonresplit(shoe: &Shoe, s: Rank, rules: &RuleSet, cache: &mut DealerCache) -> f64 {
    split_ev_one_hand(shoe, s, rules, cache)
}

fn hand_limit(rules: &RuleSet, s: Rank) -> Result<u8, Error> {
    let h = rules.hand_limit(s).max(2);
    if h > 4 {
        return Err(Error::Unsupported(format!("resplit approximations cover at most 4 hands, got {h}")));
    }
    Ok(h)
}

/// `sum_i i P(i) E(i)` for `i` up to the hand limit, with the last class
/// taking the remaining probability.
pub fn griffin_resplit(shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet) -> Result<f64, Error> {
    let h = hand_limit(rules, s)?;
    let probs = resplit_position_probs(shoe, up, s);
    let mut p = [0.0; 5];
    p[2] = probs.p2;
    p[3] = probs.p3();
    p[h as usize] = 1.0 - (2..h as usize).map(|i| p[i]).sum::<f64>();
    let mut ev = 0.0;
    for i in 2..=h {
        if p[i as usize] == 0.0 {
            continue;
        }
        if let Some(e) = conditional_hand_ev(shoe, up, s, rules, i, i == h) {
            ev += i as f64 * p[i as usize] * e;
        }
    }
    Ok(ev)
}

/// Card-order approximation for a four-hand limit. Limits of two and three
/// hands fall back to [`griffin_resplit`], which needs no order refinement.
pub fn new_approx_resplit(shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet) -> Result<f64, Error> {
    if hand_limit(rules, s)? < 4 {
        return griffin_resplit(shoe, up, s, rules);
    }
    let c = resplit_position_probs(shoe, up, s).coefficients();
    let e = conditional_hand_evs(shoe, up, s, rules);
    Ok(c[0] * e.e2 + c[1] * e.e3 + c[2] * e.e4)
}

/// Approximate split value for the rules' hand limit: the non-resplit
/// formula for two hands, otherwise [`new_approx_resplit`].
pub fn approx_split(shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet, cache: &mut DealerCache) -> Result<f64, Error> {
    if rules.hand_limit(s) <= 2 {
        Ok(approx_nonresplit(shoe, s, rules, cache))
    } else {
        new_approx_resplit(shoe, up, s, rules)
    }
}
