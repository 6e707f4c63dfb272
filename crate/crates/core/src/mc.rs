//! Monte Carlo simulation of split play, an independent statistical check
//! on the exact and approximate engines.
//!
//! Trials are grouped in fixed-size chunks. Chunk `k` draws from a ChaCha8
//! generator seeded with `seed` on stream `k`, so results depend only on the
//! inputs and the seed, never on the number of workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cards::{HandState, Rank, Shoe};
use crate::rules::RuleSet;
use crate::strategy::{split_action, Action};
use crate::Error;

/// Trials per generator stream.
pub const CHUNK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McResult {
    pub mean: f64,
    /// Sample standard deviation over the square root of the trial count.
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

fn draw(shoe: &mut Shoe, rng: &mut ChaCha8Rng) -> Result<Rank, Error> {
    if shoe.total() == 0 {
        return Err(Error::Unsupported("shoe ran out during a simulated round".into()));
    }
    let mut k = rng.gen_range(0..shoe.total());
    for r in Rank::all() {
        let c = shoe.count(r) as u16;
        if k < c {
            shoe.remove(r);
            return Ok(r);
        }
        k -= c;
    }
    unreachable!("shoe total matches its counts")
}

/// One split round: total result over all split hands, in initial bets.
/// Returns `None` when the dealer's hole card completes a natural.
fn play_round(shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet, rng: &mut ChaCha8Rng) -> Result<Option<f64>, Error> {
    let mut shoe = *shoe;
    let hole = draw(&mut shoe, rng)?;
    if up.natural_partner() == Some(hole) {
        return Ok(None);
    }
    let limit = rules.hand_limit(s) as usize;
    let mut pending = 2usize;
    let mut done: Vec<HandState> = Vec::with_capacity(limit);
    while pending > 0 {
        pending -= 1;
        let mut hand = HandState::new(s);
        loop {
            let c = draw(&mut shoe, rng)?;
            if hand.num_cards() == 1 && c == s && done.len() + pending + 1 < limit {
                // resplit: the arriving card starts another hand
                pending += 1;
                continue;
            }
            hand.add(c);
            break;
        }
        loop {
            if hand.score().is_bust() {
                break;
            }
            match split_action(&hand, up, rules) {
                Action::Stand => break,
                Action::Hit => hand.add(draw(&mut shoe, rng)?),
                Action::Double => {
                    hand.bet = 2;
                    hand.add(draw(&mut shoe, rng)?);
                    break;
                }
            }
        }
        done.push(hand);
    }
    let mut dealer = HandState::from_cards(&[up, hole]);
    loop {
        let sc = dealer.score();
        if sc.total > 17 || (sc.total == 17 && !(sc.soft && rules.dealer_hits_soft17)) {
            break;
        }
        dealer.add(draw(&mut shoe, rng)?);
    }
    let d = dealer.score();
    let mut total = 0.0;
    for h in &done {
        let p = h.score();
        let bet = h.bet as f64;
        total += if p.is_bust() {
            -bet
        } else if d.is_bust() || p.total > d.total {
            bet
        } else if p.total < d.total {
            -bet
        } else {
            0.0
        };
    }
    Ok(Some(total))
}

fn run_chunk(shoe: &Shoe, up: Rank, s: Rank, rules: &RuleSet, seed: u64, chunk: u64, trials: u64) -> Result<(f64, f64), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let (mut sum, mut sq) = (0.0, 0.0);
    let mut n = 0;
    while n < trials {
        if let Some(x) = play_round(shoe, up, s, rules, &mut rng)? {
            sum += x;
            sq += x * x;
            n += 1;
        }
    }
    Ok((sum, sq))
}

/// Simulates splitting `s` against `up`. `shoe` excludes the up card and
/// both split cards. Dealer naturals are rejected and redrawn.
pub fn simulate_split(
    shoe: &Shoe,
    up: Rank,
    s: Rank,
    rules: &RuleSet,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<McResult, Error> {
    rules.validate()?;
    if trials == 0 {
        return Err(Error::Unsupported("at least one trial is required".into()));
    }
    let partner_only = up
        .natural_partner()
        .is_some_and(|p| shoe.count(p) as u16 == shoe.total());
    if shoe.total() == 0 || partner_only {
        return Err(Error::Unsupported("every hole card completes a dealer natural".into()));
    }
    let chunks = trials.div_ceil(CHUNK);
    let size = |k: u64| CHUNK.min(trials - k * CHUNK);
    let workers = workers.max(1).min(chunks as usize);
    let mut parts: Vec<Result<(f64, f64), Error>> = (0..chunks).map(|_| Ok((0.0, 0.0))).collect();
    std::thread::scope(|scope| {
        for (w, slots) in parts.chunks_mut(chunks.div_ceil(workers as u64) as usize).enumerate() {
            let first = (w * chunks.div_ceil(workers as u64) as usize) as u64;
            scope.spawn(move || {
                for (i, slot) in slots.iter_mut().enumerate() {
                    let k = first + i as u64;
                    *slot = run_chunk(shoe, up, s, rules, seed, k, size(k));
                }
            });
        }
    });
    let (mut sum, mut sq) = (0.0, 0.0);
    for p in parts {
        let (a, b) = p?;
        sum += a;
        sq += b;
    }
    let n = trials as f64;
    let mean = sum / n;
    let var = if trials > 1 { ((sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    Ok(McResult {
        mean,
        stderr: (var / n).sqrt(),
        trials,
        seed,
    })
}
