//! Table rules that change the game's expected values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Which two-card hands may be doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DoubleOption {
    /// ND: no doubling.
    None,
    /// DD1: any two cards.
    AnyTwo,
    /// DD2: hard 10 or 11 only.
    TenEleven,
}

impl DoubleOption {
    pub fn label(self) -> &'static str {
        match self {
            DoubleOption::None => "ND",
            DoubleOption::AnyTwo => "DD1",
            DoubleOption::TenEleven => "DD2",
        }
    }
}

impl fmt::Display for DoubleOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DoubleOption {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" | "nd" | "no" => Ok(DoubleOption::None),
            "any" | "dd1" | "any-two" => Ok(DoubleOption::AnyTwo),
            "10-11" | "dd2" | "10&11" | "ten-eleven" => Ok(DoubleOption::TenEleven),
            _ => Err(Error::InvalidOption(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleSet {
    pub decks: u8,
    pub dealer_hits_soft17: bool,
    /// Doubling on the initial two cards.
    pub dd_option: DoubleOption,
    /// Doubling on two-card hands formed after a split.
    pub dd_after_split: DoubleOption,
    /// Maximum hands a split may grow to; 2 forbids resplitting.
    pub max_hands: u8,
    pub resplit_aces: bool,
}

impl Default for RuleSet {
    /// One deck, dealer stands on soft 17, double any two cards, no double
    /// after split, no resplitting.
    fn default() -> Self {
        RuleSet {
            decks: 1,
            dealer_hits_soft17: false,
            dd_option: DoubleOption::AnyTwo,
            dd_after_split: DoubleOption::None,
            max_hands: 2,
            resplit_aces: false,
        }
    }
}

impl RuleSet {
    pub fn validate(&self) -> Result<(), Error> {
        if self.decks == 0 || self.decks > crate::cards::MAX_DECKS {
            return Err(Error::InvalidDecks(self.decks));
        }
        if self.max_hands == 0 {
            return Err(Error::InvalidMaxHands(self.max_hands));
        }
        Ok(())
    }

    pub fn with_max_hands(mut self, h: u8) -> Self {
        self.max_hands = h;
        self
    }

    pub fn with_dd_after_split(mut self, option: DoubleOption) -> Self {
        self.dd_after_split = option;
        self
    }

    pub fn with_resplit_aces(mut self, allowed: bool) -> Self {
        self.resplit_aces = allowed;
        self
    }

    pub fn with_hits_soft17(mut self, hits: bool) -> Self {
        self.dealer_hits_soft17 = hits;
        self
    }

    pub fn with_decks(mut self, decks: u8) -> Self {
        self.decks = decks;
        self
    }

    pub fn with_dd_option(mut self, option: DoubleOption) -> Self {
        self.dd_option = option;
        self
    }

    /// Hand limit in force when splitting `split_card`: aces only grow past
    /// two hands when aces may be resplit.
    pub fn hand_limit(&self, split_card: crate::Rank) -> u8 {
        if split_card == crate::Rank::ACE && !self.resplit_aces {
            self.max_hands.min(2)
        } else {
            self.max_hands
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} deck(s), {}, double {}, after split {}, max hands {}{}",
            self.decks,
            if self.dealer_hits_soft17 { "H17" } else { "S17" },
            self.dd_option,
            self.dd_after_split,
            self.max_hands,
            if self.resplit_aces { ", resplit aces" } else { "" }
        )
    }
}
