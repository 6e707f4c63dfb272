//! Exact and approximate expected values for splitting pairs in blackjack.
//!
//! The exact split engines enumerate every way the split hands can be
//! played, reusing dealer outcome distributions through a cache addressed by
//! the multiset of removed cards. [`split::exact_split_hands`] walks a
//! catalog of unique hands instead of regenerating hands card by card, and
//! [`split::exact_split_merged`] additionally merges play histories that
//! remove the same cards.

pub mod approx;
pub mod cache;
pub mod cards;
pub mod dealer;
pub mod exact;
pub mod game;
pub mod mc;
pub mod rules;
pub mod split;
pub mod strategy;

pub use cache::{AddressPlan, CacheSize, CacheStats, CacheWidth, DealerCache, DealerKind, HandIndex};
pub use cards::{HandState, Rank, Score, Shoe};
pub use dealer::DealerDistribution;
pub use rules::{DoubleOption, RuleSet};
pub use strategy::Action;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid card rank {0:?}")]
    InvalidRank(String),
    #[error("deck count {0} outside 1..=8")]
    InvalidDecks(u8),
    #[error("shoe composition exceeds the deck limits")]
    InvalidComposition,
    #[error("maximum hands must be at least 1, got {0}")]
    InvalidMaxHands(u8),
    #[error("unrecognized option {0:?}")]
    InvalidOption(String),
    #[error("address table of depth {0} overflows")]
    AddressOverflow(usize),
    #[error("cards {0} are not available in the shoe")]
    CardsUnavailable(String),
    #[error("{0}")]
    Unsupported(String),
}
