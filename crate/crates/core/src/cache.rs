//! Perfect addressing of sorted card multisets, and the flat tables built on
//! it: the dealer-probability cache and the unique-hand index.
//!
//! A multiset of at most `j` cards is written as a non-increasing sequence
//! `x_1 >= x_2 >= ... >= x_j` of values in `0..=10`, where 0 pads sequences
//! shorter than `j`. Its address is
//!
//! ```text
//! K_j = 1 + sum_{i=1..j} T_i(x_{j-i+1}),    T_i(N) = C(N + i - 1, i)
//! ```
//!
//! which enumerates every such sequence exactly once over `1..=T_j(11)`.

use serde::Serialize;

use crate::cards::{Rank, Shoe};
use crate::dealer::{
    dealer_distribution, dealer_distribution_hole_conditioned, dealer_distribution_single, DealerDistribution,
};
use crate::Error;

/// Number of states a sequence entry can take (no card, ace .. ten).
pub const STATES: usize = 11;

/// Precomputed `T_i(N)` for `i` in `1..=j` and `N` in `0..=11`.
#[derive(Clone, Debug)]
pub struct AddressPlan {
    j: usize,
    // t[i][n] for i in 0..=j (row 0 unused)
    t: Vec<[u64; STATES + 1]>,
}

impl AddressPlan {
    pub fn new(j: usize) -> Result<AddressPlan, Error> {
        let mut t = vec![[0u64; STATES + 1]; j + 1];
        if j >= 1 {
            for n in 0..=STATES {
                t[1][n] = n as u64;
            }
        }
        for i in 2..=j {
            // T_i(N) = sum_{m=0}^{N-1} T_{i-1}(m+1)
            for n in 1..=STATES {
                t[i][n] = t[i][n - 1]
                    .checked_add(t[i - 1][n])
                    .ok_or(Error::AddressOverflow(j))?;
            }
        }
        Ok(AddressPlan { j, t })
    }

    pub fn depth(&self) -> usize {
        self.j
    }

    /// `T_i(n)`.
    pub fn t(&self, i: usize, n: usize) -> u64 {
        assert!(i >= 1 && i <= self.j && n <= STATES);
        self.t[i][n]
    }

    /// Number of addresses, `T_j(11)`; zero for an empty plan.
    pub fn slots(&self) -> u64 {
        if self.j == 0 {
            0
        } else {
            self.t[self.j][STATES]
        }
    }

    /// Address of a non-increasing sequence of at most `j` values in
    /// `0..=10`. Shorter sequences are padded with zeros.
    pub fn address(&self, sorted: &[u8]) -> u64 {
        assert!(sorted.len() <= self.j, "{} values exceed depth {}", sorted.len(), self.j);
        assert!(
            sorted.windows(2).all(|w| w[0] >= w[1]),
            "address input must be non-increasing: {sorted:?}"
        );
        let mut k = 1u64;
        for (p, &x) in sorted.iter().enumerate() {
            assert!(x as usize <= 10);
            // x_p with p counted from 1 pairs with T_{j-p+1}
            k += self.t[self.j - p][x as usize];
        }
        k
    }

    /// Address of a multiset given as per-rank counts (ace first), or
    /// `None` when it holds more than `j` cards.
    #[inline]
    pub fn address_counts(&self, counts: &[u8; 10]) -> Option<u64> {
        let mut k = 1u64;
        let mut p = 0usize;
        for r in (0..10).rev() {
            let c = counts[r] as usize;
            if c == 0 {
                continue;
            }
            if p + c > self.j {
                return None;
            }
            for _ in 0..c {
                k += self.t[self.j - p][r + 1];
                p += 1;
            }
        }
        Some(k)
    }
}

/// `T_j(n) = C(n + j - 1, j)`.
pub fn t_value(j: usize, n: usize) -> Result<u64, Error> {
    if j == 0 || n > STATES {
        return Err(Error::AddressOverflow(j));
    }
    AddressPlan::new(j).map(|p| p.t(j, n))
}

/// Storage width for cached distributions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CacheWidth {
    /// Six f64 values, 48 bytes a slot.
    Double,
    /// Six f32 values, 24 bytes a slot. Distributions are also computed
    /// in single precision.
    Single,
}

impl CacheWidth {
    pub fn slot_bytes(self) -> u64 {
        match self {
            CacheWidth::Double => 48,
            CacheWidth::Single => 24,
        }
    }
}

enum Slots {
    Double(Vec<[f64; 6]>),
    Single(Vec<[f32; 6]>),
}

/// Cache sizing: either a fixed depth or the deepest table that fits a
/// byte budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheSize {
    Depth(usize),
    Bytes(u64),
}

impl CacheSize {
    /// Resolves to a depth for the given storage width.
    pub fn depth(self, width: CacheWidth) -> usize {
        match self {
            CacheSize::Depth(j) => j,
            CacheSize::Bytes(budget) => {
                let mut j = 0;
                loop {
                    let next = match t_value(j + 1, STATES) {
                        Ok(v) => v,
                        Err(_) => break,
                    };
                    if next.saturating_mul(width.slot_bytes()) > budget {
                        break;
                    }
                    j += 1;
                }
                j
            }
        }
    }
}

impl Default for CacheSize {
    fn default() -> Self {
        CacheSize::Bytes(256 << 20)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub depth: usize,
    pub slots: u64,
    pub bytes: u64,
    pub hits: u64,
    pub misses: u64,
    pub bypassed: u64,
    pub filled: u64,
}

impl CacheStats {
    pub fn fill_ratio(&self) -> f64 {
        if self.slots == 0 {
            0.0
        } else {
            self.filled as f64 / self.slots as f64
        }
    }

    pub fn merge(&mut self, other: &CacheStats) {
        self.hits += other.hits;
        self.misses += other.misses;
        self.bypassed += other.bypassed;
        self.filled += other.filled;
        self.depth = self.depth.max(other.depth);
        self.slots = self.slots.max(other.slots);
        self.bytes = self.bytes.max(other.bytes);
    }
}

/// Which dealer distribution a cache holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DealerKind {
    /// Ordinary dealer play.
    Standard,
    /// Dealer draws conditioned on `hands - 1` unseen player cards not being
    /// `split` cards.
    HoleConditioned { split: Rank, hands: u8 },
}

/// Dealer distributions for one up card, addressed by the cards removed
/// from a baseline shoe. Empty slots are all-zero, which no real
/// distribution is.
pub struct DealerCache {
    plan: AddressPlan,
    slots: Slots,
    baseline: Shoe,
    up: Rank,
    hits_soft17: bool,
    kind: DealerKind,
    stats: CacheStats,
}

impl DealerCache {
    /// A cache for `up` whose keys are removals relative to `baseline`
    /// (the shoe with the up card and any fixed cards already taken out).
    pub fn new(baseline: Shoe, up: Rank, hits_soft17: bool, size: CacheSize, width: CacheWidth) -> Result<DealerCache, Error> {
        let j = size.depth(width);
        let plan = AddressPlan::new(j)?;
        let n = plan.slots() as usize;
        // slot 0 is unused so addresses index directly
        let len = if n == 0 { 0 } else { n + 1 };
        let slots = match width {
            CacheWidth::Double => Slots::Double(vec![[0.0; 6]; len]),
            CacheWidth::Single => Slots::Single(vec![[0.0; 6]; len]),
        };
        let stats = CacheStats {
            depth: j,
            slots: plan.slots(),
            bytes: plan.slots() * width.slot_bytes(),
            ..CacheStats::default()
        };
        Ok(DealerCache {
            plan,
            slots,
            baseline,
            up,
            hits_soft17,
            kind: DealerKind::Standard,
            stats,
        })
    }

    /// A cache of hole-conditioned distributions; see [`DealerKind`].
    pub fn hole_conditioned(
        baseline: Shoe,
        up: Rank,
        hits_soft17: bool,
        split: Rank,
        hands: u8,
        size: CacheSize,
        width: CacheWidth,
    ) -> Result<DealerCache, Error> {
        let mut c = DealerCache::new(baseline, up, hits_soft17, size, width)?;
        c.kind = DealerKind::HoleConditioned { split, hands };
        Ok(c)
    }

    /// A cache that never stores anything.
    pub fn disabled(baseline: Shoe, up: Rank, hits_soft17: bool) -> DealerCache {
        DealerCache::new(baseline, up, hits_soft17, CacheSize::Depth(0), CacheWidth::Double)
            .expect("depth 0 always fits")
    }

    pub fn up(&self) -> Rank {
        self.up
    }

    pub fn hits_soft17(&self) -> bool {
        self.hits_soft17
    }

    pub fn kind(&self) -> DealerKind {
        self.kind
    }

    pub fn baseline(&self) -> &Shoe {
        &self.baseline
    }

    pub fn plan(&self) -> &AddressPlan {
        &self.plan
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }

    /// Returns the stored distribution for `removals`, or stores and
    /// returns `compute()`. Removal sets deeper than the cache bypass it.
    pub fn lookup_or_compute<F>(&mut self, removals: &[u8; 10], compute: F) -> DealerDistribution
    where
        F: FnOnce() -> DealerDistribution,
    {
        let addr = if self.plan.depth() == 0 {
            None
        } else {
            self.plan.address_counts(removals)
        };
        let Some(addr) = addr else {
            self.stats.bypassed += 1;
            return compute();
        };
        let addr = addr as usize;
        match &mut self.slots {
            Slots::Double(v) => {
                let slot = &mut v[addr];
                if slot.iter().any(|&x| x != 0.0) {
                    self.stats.hits += 1;
                    return DealerDistribution(*slot);
                }
                let d = compute();
                *slot = d.0;
                self.stats.misses += 1;
                self.stats.filled += 1;
                d
            }
            Slots::Single(v) => {
                let slot = &mut v[addr];
                if slot.iter().any(|&x| x != 0.0) {
                    self.stats.hits += 1;
                    return DealerDistribution(slot.map(|x| x as f64));
                }
                let d = compute();
                *slot = d.0.map(|x| x as f32);
                self.stats.misses += 1;
                self.stats.filled += 1;
                // hand back the stored precision so hits and misses agree
                DealerDistribution(slot.map(|x| x as f64))
            }
        }
    }

    /// Dealer distribution for `shoe`, which must be a sub-shoe of the
    /// baseline.
    #[inline]
    pub fn distribution(&mut self, shoe: &Shoe) -> DealerDistribution {
        let removals = shoe.removed_since(&self.baseline);
        let (up, h17) = (self.up, self.hits_soft17);
        match (self.kind, &self.slots) {
            (DealerKind::HoleConditioned { split, hands }, _) => self.lookup_or_compute(&removals, || {
                dealer_distribution_hole_conditioned(shoe, up, split, hands, h17)
            }),
            (DealerKind::Standard, Slots::Double(_)) => {
                self.lookup_or_compute(&removals, || dealer_distribution(shoe, up, h17))
            }
            (DealerKind::Standard, Slots::Single(_)) => {
                self.lookup_or_compute(&removals, || dealer_distribution_single(shoe, up, h17))
            }
        }
    }
}

/// Index from hand composition to a position in a unique-hand catalog.
pub struct HandIndex {
    plan: AddressPlan,
    entries: Vec<i32>,
}

/// Longest split hand reachable under basic strategy.
pub const MAX_HAND_CARDS: usize = 14;

impl HandIndex {
    pub fn new() -> HandIndex {
        let plan = AddressPlan::new(MAX_HAND_CARDS).expect("depth 14 fits");
        let entries = vec![-1; plan.slots() as usize + 1];
        HandIndex { plan, entries }
    }

    /// Catalog position for the hand with these per-rank counts, or `None`
    /// when unseen.
    pub fn get(&self, counts: &[u8; 10]) -> Option<usize> {
        let addr = self.plan.address_counts(counts).expect("hand longer than 14 cards");
        let e = self.entries[addr as usize];
        (e >= 0).then_some(e as usize)
    }

    pub fn insert(&mut self, counts: &[u8; 10], position: usize) {
        let addr = self.plan.address_counts(counts).expect("hand longer than 14 cards");
        self.entries[addr as usize] = position as i32;
    }
}

impl Default for HandIndex {
    fn default() -> Self {
        HandIndex::new()
    }
}
