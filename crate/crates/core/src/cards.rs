//! Card ranks, the shoe of remaining cards, and player hand scoring.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// A card value. Aces are 1 and every ten-valued card is 10.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Rank(u8);

impl Rank {
    pub const ACE: Rank = Rank(1);
    pub const TEN: Rank = Rank(10);

    pub fn new(value: u8) -> Option<Rank> {
        (1..=10).contains(&value).then_some(Rank(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Zero-based slot in per-rank arrays.
    #[inline]
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    /// All ranks, ace first.
    pub fn all() -> impl DoubleEndedIterator<Item = Rank> + Clone {
        (1..=10).map(Rank)
    }

    /// The hole card that would complete a dealer natural with this up card.
    pub fn natural_partner(self) -> Option<Rank> {
        match self.0 {
            1 => Some(Rank::TEN),
            10 => Some(Rank::ACE),
            _ => None,
        }
    }
}

impl TryFrom<u8> for Rank {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self, Error> {
        Rank::new(value).ok_or(Error::InvalidRank(value.to_string()))
    }
}

impl From<Rank> for u8 {
    fn from(rank: Rank) -> u8 {
        rank.0
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            1 => f.write_str("A"),
            10 => f.write_str("T"),
            v => write!(f, "{v}"),
        }
    }
}

impl FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        match t.to_ascii_uppercase().as_str() {
            "A" | "ACE" | "1" | "11" => Ok(Rank::ACE),
            "T" | "10" | "J" | "Q" | "K" | "TEN" => Ok(Rank::TEN),
            other => other
                .parse::<u8>()
                .ok()
                .and_then(Rank::new)
                .ok_or_else(|| Error::InvalidRank(t.to_string())),
        }
    }
}

/// Parses a comma separated list of ranks such as `A,T,5`.
pub fn parse_ranks(list: &str) -> Result<Vec<Rank>, Error> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Largest number of decks a shoe may hold.
pub const MAX_DECKS: u8 = 8;

/// Remaining cards, counted by rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shoe {
    counts: [u8; 10],
    total: u16,
    decks: u8,
}

impl Shoe {
    /// A full shoe of `decks` standard 52-card decks.
    pub fn new(decks: u8) -> Result<Shoe, Error> {
        if decks == 0 || decks > MAX_DECKS {
            return Err(Error::InvalidDecks(decks));
        }
        let mut counts = [4 * decks; 10];
        counts[9] = 16 * decks;
        Ok(Shoe {
            counts,
            total: 52 * decks as u16,
            decks,
        })
    }

    /// A shoe holding an arbitrary composition, used for contrived and toy
    /// shoes. Counts are indexed ace first and must respect the limits for
    /// `decks` decks.
    pub fn from_counts(counts: [u8; 10], decks: u8) -> Result<Shoe, Error> {
        let full = Shoe::new(decks)?;
        if counts.iter().zip(full.counts.iter()).any(|(c, m)| c > m) {
            return Err(Error::InvalidComposition);
        }
        Ok(Shoe {
            counts,
            total: counts.iter().map(|&c| c as u16).sum(),
            decks,
        })
    }

    #[inline]
    pub fn count(&self, rank: Rank) -> u8 {
        self.counts[rank.index()]
    }

    #[inline]
    pub fn counts(&self) -> &[u8; 10] {
        &self.counts
    }

    #[inline]
    pub fn total(&self) -> u16 {
        self.total
    }

    pub fn decks(&self) -> u8 {
        self.decks
    }

    /// Per-rank ceiling for the configured number of decks.
    pub fn max_count(&self, rank: Rank) -> u8 {
        if rank == Rank::TEN {
            16 * self.decks
        } else {
            4 * self.decks
        }
    }

    /// Takes one card of `rank` out of the shoe. Returns false, leaving the
    /// shoe untouched, when none remain.
    #[inline]
    pub fn remove(&mut self, rank: Rank) -> bool {
        let c = &mut self.counts[rank.index()];
        if *c == 0 {
            return false;
        }
        *c -= 1;
        self.total -= 1;
        true
    }

    /// Puts a card back. Exceeding the per-rank ceiling is a logic error.
    #[inline]
    pub fn restore(&mut self, rank: Rank) {
        let max = self.max_count(rank);
        let c = &mut self.counts[rank.index()];
        assert!(*c < max, "restoring {rank} would exceed {max} cards");
        *c += 1;
        self.total += 1;
    }

    /// Removes every card of `hand`, failing without side effects if any is
    /// missing.
    pub fn remove_all(&mut self, cards: &[Rank]) -> bool {
        for (i, &r) in cards.iter().enumerate() {
            if !self.remove(r) {
                for &back in &cards[..i] {
                    self.restore(back);
                }
                return false;
            }
        }
        true
    }

    /// Cards present in `baseline` but missing here, as a per-rank count.
    /// `self` must be a sub-shoe of `baseline`.
    #[inline]
    pub fn removed_since(&self, baseline: &Shoe) -> [u8; 10] {
        let mut out = [0u8; 10];
        for i in 0..10 {
            debug_assert!(self.counts[i] <= baseline.counts[i]);
            out[i] = baseline.counts[i] - self.counts[i];
        }
        out
    }

    /// Packs the composition into one integer key: 6 bits for each of
    /// ace through nine (at most 32 each) and 8 bits for tens (at most 128).
    #[inline]
    pub(crate) fn pack(&self) -> u64 {
        let mut key = 0u64;
        for &c in &self.counts[..9] {
            key = (key << 6) | c as u64;
        }
        (key << 8) | self.counts[9] as u64
    }
}

impl fmt::Debug for Shoe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shoe[")?;
        for r in Rank::all() {
            write!(f, "{}:{} ", r, self.count(r))?;
        }
        write!(f, "total {}]", self.total)
    }
}

/// Hand score. `total` is the best total not exceeding 21 when one exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Score {
    pub total: u8,
    pub soft: bool,
}

impl Score {
    #[inline]
    pub fn from_hard(hard: u8, has_ace: bool) -> Score {
        if has_ace && hard + 10 <= 21 {
            Score {
                total: hard + 10,
                soft: true,
            }
        } else {
            Score {
                total: hard,
                soft: false,
            }
        }
    }

    #[inline]
    pub fn is_bust(self) -> bool {
        self.total > 21
    }
}

/// A player hand as a multiset of cards plus play bookkeeping.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HandState {
    counts: [u8; 10],
    first: Rank,
    num_cards: u8,
    hard: u8,
    /// Bet on this hand in units of the initial bet.
    pub bet: u8,
}

impl HandState {
    /// A hand holding the single card `first`.
    pub fn new(first: Rank) -> HandState {
        let mut counts = [0u8; 10];
        counts[first.index()] = 1;
        HandState {
            counts,
            first,
            num_cards: 1,
            hard: first.value(),
            bet: 1,
        }
    }

    /// A hand built from `cards` in order. Panics on an empty slice.
    pub fn from_cards(cards: &[Rank]) -> HandState {
        let mut h = HandState::new(cards[0]);
        for &c in &cards[1..] {
            h.add(c);
        }
        h
    }

    #[inline]
    pub fn add(&mut self, rank: Rank) {
        self.counts[rank.index()] += 1;
        self.num_cards += 1;
        self.hard += rank.value();
    }

    /// Undoes `add`. Removing a card the hand does not hold is a logic error.
    #[inline]
    pub fn remove(&mut self, rank: Rank) {
        assert!(self.counts[rank.index()] > 0 && self.num_cards > 1);
        self.counts[rank.index()] -= 1;
        self.num_cards -= 1;
        self.hard -= rank.value();
    }

    #[inline]
    pub fn first(&self) -> Rank {
        self.first
    }

    #[inline]
    pub fn num_cards(&self) -> u8 {
        self.num_cards
    }

    #[inline]
    pub fn count(&self, rank: Rank) -> u8 {
        self.counts[rank.index()]
    }

    pub fn counts(&self) -> &[u8; 10] {
        &self.counts
    }

    #[inline]
    pub fn hard_total(&self) -> u8 {
        self.hard
    }

    #[inline]
    pub fn has_ace(&self) -> bool {
        self.counts[0] > 0
    }

    #[inline]
    pub fn score(&self) -> Score {
        Score::from_hard(self.hard, self.has_ace())
    }

    /// True when the hand is exactly the two cards `a` and `b` in any order.
    #[inline]
    pub fn is_pair_of(&self, a: u8, b: u8) -> bool {
        if self.num_cards != 2 {
            return false;
        }
        if a == b {
            self.counts[a as usize - 1] == 2
        } else {
            self.counts[a as usize - 1] == 1 && self.counts[b as usize - 1] == 1
        }
    }

    /// Two-card ace plus ten.
    pub fn is_natural(&self) -> bool {
        self.is_pair_of(1, 10)
    }

    /// Cards in non-increasing rank order.
    pub fn sorted_cards(&self) -> Vec<Rank> {
        let mut out = Vec::with_capacity(self.num_cards as usize);
        for r in Rank::all().rev() {
            for _ in 0..self.count(r) {
                out.push(r);
            }
        }
        out
    }
}

impl fmt::Debug for HandState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cards: Vec<String> = self.sorted_cards().iter().map(|r| r.to_string()).collect();
        write!(f, "Hand({}; bet {})", cards.join(","), self.bet)
    }
}

/// Scores a hand. See [`HandState::score`].
pub fn score(hand: &HandState) -> Score {
    hand.score()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: u8) -> Rank {
        Rank::new(v).unwrap()
    }

    #[test]
    fn scoring_examples() {
        let s = HandState::from_cards(&[r(1), r(8)]).score();
        assert_eq!(s, Score { total: 19, soft: true });
        let s = HandState::from_cards(&[r(8), r(7), r(1)]).score();
        assert_eq!(s, Score { total: 16, soft: false });
        let s = HandState::from_cards(&[r(10), r(10), r(2)]).score();
        assert_eq!(s, Score { total: 22, soft: false });
        assert!(s.is_bust());
        let s = HandState::from_cards(&[r(1), r(1)]).score();
        assert_eq!(s, Score { total: 12, soft: true });
    }

    #[test]
    fn remove_and_restore() {
        let mut shoe = Shoe::new(1).unwrap();
        let fresh = shoe;
        assert!(shoe.remove(Rank::ACE));
        assert_eq!(shoe.count(Rank::ACE), 3);
        assert_eq!(shoe.total(), 51);
        shoe.restore(Rank::ACE);
        assert_eq!(shoe, fresh);

        let mut empty5 = Shoe::from_counts([4, 4, 4, 4, 0, 4, 4, 4, 4, 16], 1).unwrap();
        let before = empty5;
        assert!(!empty5.remove(r(5)));
        assert_eq!(empty5, before);

        let mut s = Shoe::new(1).unwrap();
        s.remove(r(2));
        s.remove(r(2));
        s.restore(r(2));
        s.restore(r(2));
        assert_eq!(s, fresh);
    }

    #[test]
    #[should_panic]
    fn restore_past_full_panics() {
        let mut shoe = Shoe::new(1).unwrap();
        shoe.restore(Rank::TEN);
    }

    #[test]
    fn rank_parsing() {
        assert_eq!("A".parse::<Rank>().unwrap(), Rank::ACE);
        assert_eq!("q".parse::<Rank>().unwrap(), Rank::TEN);
        assert_eq!("7".parse::<Rank>().unwrap(), r(7));
        assert!("0".parse::<Rank>().is_err());
        assert_eq!(parse_ranks("T,6").unwrap(), vec![Rank::TEN, r(6)]);
    }

    #[test]
    fn shoe_limits() {
        assert!(Shoe::new(0).is_err());
        assert!(Shoe::new(9).is_err());
        let s = Shoe::new(8).unwrap();
        assert_eq!(s.total(), 416);
        assert_eq!(s.count(Rank::TEN), 128);
        assert!(Shoe::from_counts([5, 0, 0, 0, 0, 0, 0, 0, 0, 0], 1).is_err());
    }
}
