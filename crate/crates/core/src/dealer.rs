//! Dealer outcome probabilities by recursive enumeration of the dealer's
//! draws, conditional on the dealer not holding a natural.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::cards::{Rank, Shoe};

/// Probabilities of the dealer finishing on 17, 18, 19, 20, 21 or busting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DealerDistribution(pub [f64; 6]);

impl DealerDistribution {
    pub const BUST: usize = 5;

    /// Probability of finishing on `total` (17..=21).
    pub fn total(&self, total: u8) -> f64 {
        assert!((17..=21).contains(&total));
        self.0[(total - 17) as usize]
    }

    pub fn bust(&self) -> f64 {
        self.0[Self::BUST]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Expected result of standing on `player_total` against this
    /// distribution: -1 for a bust hand, otherwise wins minus losses.
    #[inline]
    pub fn stand_value(&self, player_total: u8) -> f64 {
        let d = &self.0;
        if player_total > 21 {
            return -1.0;
        }
        let mut ev = d[Self::BUST];
        for t in 17..=21u8 {
            let p = d[(t - 17) as usize];
            if t < player_total {
                ev += p;
            } else if t > player_total {
                ev -= p;
            }
        }
        ev
    }

    /// Stand values for totals <=16 and 17..=21, indexed 0..6.
    #[inline]
    pub fn stand_values(&self) -> [f64; 6] {
        let mut out = [0.0; 6];
        out[0] = self.stand_value(16);
        for t in 17..=21u8 {
            out[(t - 16) as usize] = self.stand_value(t);
        }
        out
    }
}

impl Index<usize> for DealerDistribution {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Draw probabilities for one dealer card given the shoe and how many
/// cards the dealer already holds. Implementations may condition draws on
/// information the dealer does not see.
trait DrawLaw {
    fn weights(&self, shoe: &Shoe, up: Rank, dealer_cards: u8, out: &mut [f64; 10]);
}

/// Plain sampling without replacement, with the hole card barred from
/// completing a natural.
struct Unconditioned;

impl DrawLaw for Unconditioned {
    #[inline]
    fn weights(&self, shoe: &Shoe, up: Rank, dealer_cards: u8, out: &mut [f64; 10]) {
        let counts = shoe.counts();
        let mut denom = shoe.total() as f64;
        let barred = if dealer_cards == 1 { up.natural_partner() } else { None };
        if let Some(b) = barred {
            denom -= counts[b.index()] as f64;
            assert!(denom > 0.0, "only natural-forming hole cards remain");
        }
        for i in 0..10 {
            out[i] = counts[i] as f64 / denom;
        }
        if let Some(b) = barred {
            out[b.index()] = 0.0;
        }
    }
}

/// Draws conditioned on `unseen` player cards, drawn from the shoe earlier
/// and not shown, all being different from `split`.
struct HoleConditioned {
    split: Rank,
    unseen: u16,
}

impl HoleConditioned {
    #[inline]
    fn card_prob(&self, shoe: &Shoe, k: Rank) -> f64 {
        let n = shoe.total() as f64;
        let ns = shoe.count(self.split) as f64;
        let nk = shoe.count(k) as f64;
        let m = self.unseen as f64;
        if k == self.split {
            nk / (n - m)
        } else {
            nk / (n - m) * (n - ns - m) / (n - ns)
        }
    }
}

impl DrawLaw for HoleConditioned {
    #[inline]
    fn weights(&self, shoe: &Shoe, up: Rank, dealer_cards: u8, out: &mut [f64; 10]) {
        let barred = if dealer_cards == 1 { up.natural_partner() } else { None };
        let mut sum = 0.0;
        for k in Rank::all() {
            let p = if Some(k) == barred || shoe.count(k) == 0 {
                0.0
            } else {
                self.card_prob(shoe, k)
            };
            out[k.index()] = p;
            sum += p;
        }
        if barred.is_some() {
            for p in out.iter_mut() {
                *p /= sum;
            }
        }
    }
}

/// Dealer final-total distribution for the given shoe (up card already
/// removed), conditional on no dealer natural.
///
/// Panics if the shoe cannot supply the dealer's cards.
pub fn dealer_distribution(shoe: &Shoe, up: Rank, hits_soft17: bool) -> DealerDistribution {
    let mut work = *shoe;
    let mut acc = [0.0; 6];
    play(&mut work, up, up.value(), up == Rank::ACE, 1, 1.0, hits_soft17, &Unconditioned, &mut acc);
    DealerDistribution(acc)
}

/// The dealer distribution used by the resplit approximations: each dealer
/// draw uses the probability of card `k` given that `i - 1` unseen player
/// cards are not `split` cards.
pub fn dealer_distribution_hole_conditioned(
    shoe: &Shoe,
    up: Rank,
    split: Rank,
    i: u8,
    hits_soft17: bool,
) -> DealerDistribution {
    assert!((1..=4).contains(&i), "hand count {i} outside 1..=4");
    let law = HoleConditioned {
        split,
        unseen: i as u16 - 1,
    };
    let mut work = *shoe;
    let mut acc = [0.0; 6];
    play(&mut work, up, up.value(), up == Rank::ACE, 1, 1.0, hits_soft17, &law, &mut acc);
    DealerDistribution(acc)
}

/// The per-card probabilities `p(k, i, s)` used by the hole-conditioned
/// dealer, indexed ace first.
pub fn hole_conditioned_card_probs(shoe: &Shoe, split: Rank, i: u8) -> [f64; 10] {
    let law = HoleConditioned {
        split,
        unseen: i as u16 - 1,
    };
    let mut out = [0.0; 10];
    for k in Rank::all() {
        out[k.index()] = law.card_prob(shoe, k);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn play<L: DrawLaw>(
    shoe: &mut Shoe,
    up: Rank,
    hard: u8,
    has_ace: bool,
    cards: u8,
    prob: f64,
    hits_soft17: bool,
    law: &L,
    acc: &mut [f64; 6],
) {
    assert!(shoe.total() > 0, "dealer ran out of cards");
    let mut weights = [0.0; 10];
    law.weights(shoe, up, cards, &mut weights);
    for k in Rank::all() {
        let w = weights[k.index()];
        if w == 0.0 {
            continue;
        }
        let p = prob * w;
        let hard2 = hard + k.value();
        let ace2 = has_ace || k == Rank::ACE;
        let soft_total = if ace2 && hard2 + 10 <= 21 { hard2 + 10 } else { hard2 };
        let is_soft = soft_total != hard2;
        if soft_total > 21 {
            acc[DealerDistribution::BUST] += p;
        } else if soft_total > 17 || (soft_total == 17 && !(is_soft && hits_soft17)) {
            acc[(soft_total - 17) as usize] += p;
        } else {
            shoe.remove(k);
            play(shoe, up, hard2, ace2, cards + 1, p, hits_soft17, law, acc);
            shoe.restore(k);
        }
    }
}

/// [`dealer_distribution`] carried out entirely in single-precision
/// arithmetic, for reproducing results computed with four-byte floats.
pub fn dealer_distribution_single(shoe: &Shoe, up: Rank, hits_soft17: bool) -> DealerDistribution {
    fn play32(shoe: &mut Shoe, up: Rank, hard: u8, has_ace: bool, cards: u8, prob: f32, hits_soft17: bool, acc: &mut [f32; 6]) {
        assert!(shoe.total() > 0, "dealer ran out of cards");
        let barred = if cards == 1 { up.natural_partner() } else { None };
        let mut denom = shoe.total() as f32;
        if let Some(b) = barred {
            denom -= shoe.count(b) as f32;
            assert!(denom > 0.0, "only natural-forming hole cards remain");
        }
        for k in Rank::all() {
            if Some(k) == barred || shoe.count(k) == 0 {
                continue;
            }
            let p = prob * (shoe.count(k) as f32 / denom);
            let hard2 = hard + k.value();
            let ace2 = has_ace || k == Rank::ACE;
            let soft_total = if ace2 && hard2 + 10 <= 21 { hard2 + 10 } else { hard2 };
            let is_soft = soft_total != hard2;
            if soft_total > 21 {
                acc[DealerDistribution::BUST] += p;
            } else if soft_total > 17 || (soft_total == 17 && !(is_soft && hits_soft17)) {
                acc[(soft_total - 17) as usize] += p;
            } else {
                shoe.remove(k);
                play32(shoe, up, hard2, ace2, cards + 1, p, hits_soft17, acc);
                shoe.restore(k);
            }
        }
    }
    let mut work = *shoe;
    let mut acc = [0.0f32; 6];
    play32(&mut work, up, up.value(), up == Rank::ACE, 1, 1.0, hits_soft17, &mut acc);
    DealerDistribution(acc.map(|x| x as f64))
}

/// Direct enumeration of every ordered dealer card sequence, multiplying the
/// draw probabilities along each sequence. Kept deliberately naive: it is an
/// independent check on [`dealer_distribution`].
pub fn dealer_distribution_brute_force(shoe: &Shoe, up: Rank, hits_soft17: bool) -> DealerDistribution {
    fn seqs(
        counts: &mut Vec<u32>,
        seq: &mut Vec<usize>,
        up: Rank,
        hits_soft17: bool,
        out: &mut Vec<(Vec<usize>, u8)>,
    ) {
        let mut hard = up.value() as u32;
        let mut ace = up == Rank::ACE;
        for &c in seq.iter() {
            hard += c as u32 + 1;
            ace |= c == 0;
        }
        let total = if ace && hard + 10 <= 21 { hard + 10 } else { hard };
        let soft = total != hard;
        if !seq.is_empty() && (total > 17 || (total == 17 && !(soft && hits_soft17))) {
            out.push((seq.clone(), total.min(22) as u8));
            return;
        }
        for c in 0..10 {
            if counts[c] == 0 {
                continue;
            }
            counts[c] -= 1;
            seq.push(c);
            seqs(counts, seq, up, hits_soft17, out);
            seq.pop();
            counts[c] += 1;
        }
    }
    let mut counts: Vec<u32> = shoe.counts().iter().map(|&c| c as u32).collect();
    let mut all = Vec::new();
    seqs(&mut counts, &mut Vec::new(), up, hits_soft17, &mut all);
    let natural = up.natural_partner().map(|r| r.index());
    let mut acc = [0.0; 6];
    let mut kept = 0.0;
    for (seq, total) in all {
        if Some(seq[0]) == natural {
            continue;
        }
        let mut counts: Vec<f64> = shoe.counts().iter().map(|&c| c as f64).collect();
        let mut n = shoe.total() as f64;
        let mut p = 1.0;
        for &c in &seq {
            p *= counts[c] / n;
            counts[c] -= 1.0;
            n -= 1.0;
        }
        kept += p;
        let slot = if total > 21 { 5 } else { (total - 17) as usize };
        acc[slot] += p;
    }
    for a in acc.iter_mut() {
        *a /= kept;
    }
    DealerDistribution(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: u8) -> Rank {
        Rank::new(v).unwrap()
    }

    #[test]
    fn forced_draws() {
        let tens = Shoe::from_counts([0, 0, 0, 0, 0, 0, 0, 0, 0, 12], 1).unwrap();
        let d = dealer_distribution(&tens, Rank::TEN, false);
        assert_eq!(d.0, [0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);

        let sixes = Shoe::from_counts([0, 0, 0, 0, 0, 4, 0, 0, 0, 0], 1).unwrap();
        let d = dealer_distribution(&sixes, Rank::TEN, false);
        assert_eq!(d.bust(), 1.0);
    }

    #[test]
    fn soft17_rule() {
        // up ace, hole 6 only: soft 17
        let sixes = Shoe::from_counts([0, 0, 0, 0, 0, 4, 0, 0, 0, 0], 1).unwrap();
        let stand = dealer_distribution(&sixes, Rank::ACE, false);
        assert_eq!(stand.total(17), 1.0);
        // hitting soft 17 with 6s: A,6,6 = 13, +6 = 19
        let hit = dealer_distribution(&sixes, Rank::ACE, true);
        assert_eq!(hit.total(19), 1.0);
    }

    #[test]
    fn full_deck_matches_brute_force() {
        let mut shoe = Shoe::new(1).unwrap();
        shoe.remove(r(6));
        let fast = dealer_distribution(&shoe, r(6), false);
        let slow = dealer_distribution_brute_force(&shoe, r(6), false);
        for i in 0..6 {
            assert!((fast[i] - slow[i]).abs() < 1e-12, "{i}: {} vs {}", fast[i], slow[i]);
        }
        assert!((fast.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn natural_conditioning() {
        // up ace: a ten hole card never appears, so a shoe of tens plus one
        // 7 always yields hole 7 (soft 18)
        let shoe = Shoe::from_counts([0, 0, 0, 0, 0, 0, 1, 0, 0, 10], 1).unwrap();
        let d = dealer_distribution(&shoe, Rank::ACE, false);
        assert_eq!(d.total(18), 1.0);
        let shoe = Shoe::from_counts([3, 0, 0, 0, 0, 0, 1, 0, 0, 0], 1).unwrap();
        let d = dealer_distribution(&shoe, Rank::TEN, false);
        assert_eq!(d.total(17), 1.0);
    }

    #[test]
    fn stand_values() {
        let d = DealerDistribution([0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(d.stand_value(21), 1.0);
        assert_eq!(d.stand_value(20), 0.0);
        assert_eq!(d.stand_value(19), -1.0);
        assert_eq!(d.stand_value(25), -1.0);
    }

    #[test]
    fn hole_conditioned_probabilities_normalize() {
        let mut shoe = Shoe::new(1).unwrap();
        for c in [6, 8, 8] {
            shoe.remove(r(c));
        }
        for i in 1..=4 {
            let p = hole_conditioned_card_probs(&shoe, r(8), i);
            let sum: f64 = p.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "i={i} sum={sum}");
        }
        // with no split cards left both branches reduce to n_k / n
        let mut no8 = shoe;
        no8.remove(r(8));
        no8.remove(r(8));
        let p = hole_conditioned_card_probs(&no8, r(8), 3);
        let plain = hole_conditioned_card_probs(&no8, r(8), 1);
        for k in 0..10 {
            assert!((p[k] - plain[k]).abs() < 1e-15);
        }
    }
}
