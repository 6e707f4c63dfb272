//! `pairsplit`: split tables, game values, comparisons and benchmarks.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pairsplit::approx::{approx_nonresplit, griffin_resplit, new_approx_resplit};
use pairsplit::cards::parse_ranks;
use pairsplit::dealer::dealer_distribution;
use pairsplit::exact::HandEvaluator;
use pairsplit::game::{game_ev, precision_sweep, split_opportunity_stats, GameCalculator, SplitSource};
use pairsplit::mc::simulate_split;
use pairsplit::split::{exact_split, split_shoe, Method, SplitResult};
use pairsplit::strategy::{decision_grid, double_permitted};
use pairsplit::{CacheSize, CacheWidth, DealerCache, DoubleOption, Error, HandState, Rank, RuleSet, Shoe};

use output::{emit, Cell, Format, Table};

#[derive(Parser)]
#[command(name = "pairsplit", version, about = "Exact and approximate expected values for splitting pairs in blackjack")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact split values with engine statistics, one row per cell.
    EvSplit {
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        cache: CacheArgs,
        #[arg(long, default_value = "merged")]
        method: Method,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact split table: one row per pair and up card, one column per
    /// hand limit and doubling-after-split option.
    EvTable {
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        cache: CacheArgs,
        #[arg(long, default_value = "merged")]
        method: Method,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Whole-game values and the effect of splitting rules, in percent.
    EvGame {
        #[command(flatten)]
        rules: RuleArgs,
        /// Where split values come from.
        #[arg(long, value_enum, default_value = "exact")]
        source: Source,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Values of standing, hitting and doubling one hand.
    EvHand {
        #[command(flatten)]
        rules: RuleArgs,
        /// Player cards, for example `T,6`.
        #[arg(long)]
        cards: String,
        /// Dealer up card.
        #[arg(long)]
        up: Rank,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Approximations against exact values.
    ApproxCompare {
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        cache: CacheArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Timing and cache behavior across hand limits, cache depths and
    /// methods.
    Bench {
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        cache: CacheArgs,
        /// Methods to time, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "merged")]
        methods: Vec<Method>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Monte Carlo estimates of split values.
    Mc {
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also compute the exact value of each cell.
        #[arg(long)]
        compare: bool,
        #[command(flatten)]
        cache: CacheArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The hit, stand and double decisions in force.
    StrategyDump {
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dealer final-total probabilities for each up card, given no natural.
    DealerDump {
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Game value recomputed from tables rounded to a number of decimals.
    PrecisionSweep {
        #[command(flatten)]
        rules: RuleArgs,
        #[arg(long, value_enum, default_value = "exact")]
        source: Source,
        /// Decimal places to round to, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
        digits: Vec<u32>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Soft17 {
    Stand,
    Hit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Exact,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Precision {
    Double,
    Single,
}

#[derive(Args, Clone)]
struct RuleArgs {
    #[arg(long, default_value_t = 1)]
    decks: u8,
    /// Dealer play on soft 17.
    #[arg(long, value_enum, default_value = "stand")]
    soft17: Soft17,
    /// Doubling on the initial two cards: none, any or 10-11.
    #[arg(long, default_value = "any")]
    dd: DoubleOption,
    /// Doubling after splitting, comma separated for tables.
    #[arg(long = "dd-after-split", value_delimiter = ',', default_value = "none")]
    dd_after_split: Vec<DoubleOption>,
    /// Maximum hands a split may grow to, comma separated for tables.
    #[arg(long = "max-hands", value_delimiter = ',', default_value = "2")]
    max_hands: Vec<u8>,
    #[arg(long = "resplit-aces")]
    resplit_aces: bool,
}

impl RuleArgs {
    fn variants(&self) -> Result<Vec<RuleSet>, Error> {
        let mut out = Vec::new();
        for &h in &self.max_hands {
            for &das in &self.dd_after_split {
                let r = RuleSet {
                    decks: self.decks,
                    dealer_hits_soft17: self.soft17 == Soft17::Hit,
                    dd_option: self.dd,
                    dd_after_split: das,
                    max_hands: h,
                    resplit_aces: self.resplit_aces,
                };
                r.validate()?;
                out.push(r);
            }
        }
        Ok(out)
    }

    fn single(&self) -> Result<RuleSet, Failure> {
        let v = self.variants()?;
        if v.len() != 1 {
            return Err(Failure::Usage("this command takes one --max-hands and one --dd-after-split value".into()));
        }
        Ok(v[0])
    }
}

#[derive(Args, Clone)]
struct FilterArgs {
    /// Pairs to split, for example `A,8,T`. Defaults to all.
    #[arg(long)]
    pairs: Option<String>,
    /// Dealer up cards. Defaults to all.
    #[arg(long)]
    ups: Option<String>,
}

impl FilterArgs {
    fn ranks(list: &Option<String>) -> Result<Vec<Rank>, Failure> {
        let v = match list {
            Some(l) => parse_ranks(l).map_err(|e| Failure::Usage(e.to_string()))?,
            None => Rank::all().collect(),
        };
        if v.is_empty() {
            return Err(Failure::Usage("filters select no work".into()));
        }
        Ok(v)
    }

    /// (pair, up) cells sorted by up card, then pair.
    fn cells(&self) -> Result<Vec<(Rank, Rank)>, Failure> {
        let pairs = Self::ranks(&self.pairs)?;
        let mut ups = Self::ranks(&self.ups)?;
        ups.sort();
        ups.dedup();
        let mut out = Vec::new();
        for &u in &ups {
            let mut ps = pairs.clone();
            ps.sort();
            ps.dedup();
            out.extend(ps.into_iter().map(|p| (p, u)));
        }
        Ok(out)
    }
}

#[derive(Args, Clone)]
struct CacheArgs {
    /// Dealer cache budget in bytes.
    #[arg(long = "cache-bytes", conflicts_with = "cache_depth")]
    cache_bytes: Option<u64>,
    /// Dealer cache depth: removals of up to this many cards are cached. The
    /// bench command also takes a comma separated list or `sweep`.
    #[arg(long = "cache-depth")]
    cache_depth: Option<String>,
    /// Arithmetic used for dealer distributions.
    #[arg(long, value_enum, default_value = "double")]
    precision: Precision,
    /// Worker threads; results do not depend on the count.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl CacheArgs {
    fn width(&self) -> CacheWidth {
        match self.precision {
            Precision::Double => CacheWidth::Double,
            Precision::Single => CacheWidth::Single,
        }
    }

    fn sizes(&self) -> Result<Vec<CacheSize>, Failure> {
        if let Some(b) = self.cache_bytes {
            return Ok(vec![CacheSize::Bytes(b)]);
        }
        match self.cache_depth.as_deref() {
            None => Ok(vec![CacheSize::default()]),
            Some("sweep") => Ok((0..=16).step_by(2).map(CacheSize::Depth).collect()),
            Some(list) => list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map(CacheSize::Depth)
                        .map_err(|_| Failure::Usage(format!("invalid cache depth {s:?}")))
                })
                .collect(),
        }
    }

    fn size(&self) -> Result<CacheSize, Failure> {
        let v = self.sizes()?;
        if v.len() != 1 {
            return Err(Failure::Usage("this command takes a single cache depth".into()));
        }
        Ok(v[0])
    }
}

#[derive(Args, Clone)]
struct OutArgs {
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidRank(_) | Error::InvalidDecks(_) | Error::InvalidMaxHands(_) | Error::InvalidOption(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// A cache for one cell. An infeasible budget falls back to no cache.
fn make_cache(baseline: Shoe, up: Rank, rules: &RuleSet, size: CacheSize, width: CacheWidth) -> DealerCache {
    DealerCache::new(baseline, up, rules.dealer_hits_soft17, size, width).unwrap_or_else(|e| {
        eprintln!("warning: {e}; dealer cache bypassed");
        DealerCache::disabled(baseline, up, rules.dealer_hits_soft17)
    })
}

/// Runs `f` over `items` on `workers` threads and returns results in item
/// order.
fn run_ordered<C: Sync, T: Send>(
    items: &[C],
    workers: usize,
    f: impl Fn(&C) -> Result<T, Failure> + Sync,
) -> Result<Vec<T>, Failure> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<T, Failure>>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1).min(items.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|r| r.expect("every item ran"))
        .collect()
}

fn cell_shoe(rules: &RuleSet, up: Rank, pair: Rank) -> Result<Shoe, Failure> {
    Ok(split_shoe(&Shoe::new(rules.decks)?, up, pair)?)
}

fn exact_cell(rules: &RuleSet, pair: Rank, up: Rank, method: Method, size: CacheSize, width: CacheWidth) -> Result<SplitResult, Failure> {
    let shoe = cell_shoe(rules, up, pair)?;
    let mut cache = make_cache(shoe, up, rules, size, width);
    Ok(exact_split(&shoe, up, pair, rules, method, &mut cache))
}

fn variant_label(r: &RuleSet) -> String {
    format!("h{} {}", r.max_hands, r.dd_after_split)
}

fn rules_meta(t: &mut Table, r: &RuleSet) {
    t.meta("rules", r);
    t.meta("version", env!("CARGO_PKG_VERSION"));
}

fn ev_split(rules: &RuleArgs, filter: &FilterArgs, cache: &CacheArgs, method: Method) -> Result<Table, Failure> {
    let variants = rules.variants()?;
    let size = cache.size()?;
    let mut jobs = Vec::new();
    for (p, u) in filter.cells()? {
        for r in &variants {
            jobs.push((p, u, *r));
        }
    }
    let res = run_ordered(&jobs, cache.workers, |&(p, u, r)| exact_cell(&r, p, u, method, size, cache.width()))?;
    let mut t = Table::new(
        "Exact split values",
        &["pair", "up", "max_hands", "dd_after_split", "ev", "hand_sets", "unique_hands", "states", "cache_depth", "cache_hits", "cache_misses"],
    );
    rules_meta(&mut t, &variants[0]);
    t.meta("method", format!("{method:?}"));
    for ((p, u, r), s) in jobs.iter().zip(res) {
        t.rows.push(vec![
            p.to_string().into(),
            u.to_string().into(),
            Cell::Int(r.max_hands as u64),
            r.dd_after_split.to_string().into(),
            Cell::Num(s.ev, 6),
            Cell::Int(s.hands_enumerated),
            Cell::Int(s.unique_hands as u64),
            Cell::Int(s.states as u64),
            Cell::Int(s.cache.depth as u64),
            Cell::Int(s.cache.hits),
            Cell::Int(s.cache.misses),
        ]);
    }
    Ok(t)
}

fn ev_table(rules: &RuleArgs, filter: &FilterArgs, cache: &CacheArgs, method: Method) -> Result<Table, Failure> {
    let variants = rules.variants()?;
    let size = cache.size()?;
    let cells = filter.cells()?;
    let mut jobs = Vec::new();
    for &(p, u) in &cells {
        for r in &variants {
            jobs.push((p, u, *r));
        }
    }
    let res = run_ordered(&jobs, cache.workers, |&(p, u, r)| exact_cell(&r, p, u, method, size, cache.width()))?;
    let mut cols = vec!["pair".to_string(), "up".to_string()];
    cols.extend(variants.iter().map(variant_label));
    let colrefs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new("Exact split table", &colrefs);
    rules_meta(&mut t, &variants[0]);
    for (i, &(p, u)) in cells.iter().enumerate() {
        let mut row: Vec<Cell> = vec![p.to_string().into(), u.to_string().into()];
        row.extend(res[i * variants.len()..(i + 1) * variants.len()].iter().map(|s| Cell::Num(s.ev, 6)));
        t.rows.push(row);
    }
    Ok(t)
}

fn source(s: Source) -> SplitSource {
    match s {
        Source::Exact => SplitSource::Exact,
        Source::Approx => SplitSource::Approximate,
    }
}

fn ev_game(rules: &RuleArgs, src: Source) -> Result<Table, Failure> {
    let selected = rules.single()?;
    let src = source(src);
    let base = selected.with_max_hands(2).with_resplit_aces(false);
    let nd = base.with_dd_after_split(DoubleOption::None);
    let mut calc = GameCalculator::new(src);
    let base_game = calc.evaluate(&base)?;
    let selected_game = calc.evaluate(&selected)?;
    let mut value = |r: &RuleSet| calc.evaluate(r).map(|g| g.value);
    let nd_value = value(&nd)?;
    let stats = split_opportunity_stats(&selected_game);
    let mut t = Table::new("Game expected value (percent)", &["row", "value"]);
    rules_meta(&mut t, &selected);
    t.meta("split values", format!("{src:?}"));
    t.meta("deltas", "relative to the same game without doubling after splitting");
    t.meta("pair probability", format!("{:.4}", stats.pairs));
    t.meta("favorable split probability, selected rules", format!("{:.4}", stats.favorable));
    let rows = [
        ("base, no resplit", base_game.value),
        ("resplit to 4 except aces", value(&base.with_max_hands(4))? - nd_value),
        ("resplit to 4 including aces", value(&base.with_max_hands(4).with_resplit_aces(true))? - nd_value),
        ("eliminate splitting", value(&base.with_max_hands(1))? - nd_value),
        ("selected rules", selected_game.value),
    ];
    for (label, v) in rows {
        t.rows.push(vec![label.into(), Cell::Num(v, 4)]);
    }
    Ok(t)
}

fn ev_hand(rules: &RuleArgs, cards: &str, up: Rank) -> Result<Table, Failure> {
    let rules = rules.single()?;
    let cards = parse_ranks(cards).map_err(|e| Failure::Usage(e.to_string()))?;
    if cards.len() < 2 {
        return Err(Failure::Usage("a hand needs at least two cards".into()));
    }
    let mut shoe = Shoe::new(rules.decks)?;
    let mut dealt = cards.clone();
    dealt.push(up);
    if !shoe.remove_all(&dealt) {
        return Err(Failure::Usage("cards are not available in the shoe".into()));
    }
    let mut cache = make_cache(shoe, up, &rules, CacheSize::Depth(8), CacheWidth::Double);
    let mut ev = HandEvaluator::new(rules, &mut cache);
    let mut hand = HandState::from_cards(&cards);
    let mut t = Table::new("Hand expected values", &["play", "ev"]);
    rules_meta(&mut t, &rules);
    t.meta("hand", format!("{} vs {up}", cards.iter().map(Rank::to_string).collect::<Vec<_>>().join(",")));
    t.rows.push(vec!["stand".into(), Cell::Num(ev.stand(&hand, &shoe), 6)]);
    if !hand.score().is_bust() {
        t.rows.push(vec!["hit".into(), Cell::Num(ev.hit(&mut hand, &mut shoe), 6)]);
    }
    if double_permitted(&hand, rules.dd_option) {
        t.rows.push(vec!["double".into(), Cell::Num(ev.double(&mut hand, &mut shoe), 6)]);
    }
    Ok(t)
}

fn approx_compare(rules: &RuleArgs, filter: &FilterArgs, cache: &CacheArgs) -> Result<Table, Failure> {
    let variants = rules.variants()?;
    let size = cache.size()?;
    let mut jobs = Vec::new();
    for (p, u) in filter.cells()? {
        for r in &variants {
            jobs.push((p, u, *r));
        }
    }
    let res = run_ordered(&jobs, cache.workers, |&(p, u, r)| {
        let shoe = cell_shoe(&r, u, p)?;
        let mut c = make_cache(shoe, u, &r, size, cache.width());
        let exact = exact_split(&shoe, u, p, &r, Method::Merged, &mut c).ev;
        let (approx, griffin) = if r.hand_limit(p) <= 2 {
            (approx_nonresplit(&shoe, p, &r, &mut c), None)
        } else {
            (new_approx_resplit(&shoe, u, p, &r)?, Some(griffin_resplit(&shoe, u, p, &r)?))
        };
        Ok((exact, approx, griffin))
    })?;
    let mut t = Table::new(
        "Approximations against exact split values",
        &["pair", "up", "max_hands", "dd_after_split", "exact", "approx", "approx_error", "griffin", "griffin_error"],
    );
    rules_meta(&mut t, &variants[0]);
    for ((p, u, r), (exact, approx, griffin)) in jobs.iter().zip(res) {
        t.rows.push(vec![
            p.to_string().into(),
            u.to_string().into(),
            Cell::Int(r.max_hands as u64),
            r.dd_after_split.to_string().into(),
            Cell::Num(exact, 6),
            Cell::Num(approx, 6),
            Cell::Num(approx - exact, 6),
            griffin.map_or(Cell::Empty, |g| Cell::Num(g, 6)),
            griffin.map_or(Cell::Empty, |g| Cell::Num(g - exact, 6)),
        ]);
    }
    Ok(t)
}

fn bench(rules: &RuleArgs, filter: &FilterArgs, cache: &CacheArgs, methods: &[Method]) -> Result<Table, Failure> {
    let variants = rules.variants()?;
    let sizes = cache.sizes()?;
    let cells = filter.cells()?;
    let mut t = Table::new(
        "Split timing",
        &["max_hands", "dd_after_split", "method", "cache_depth", "cells", "seconds", "cache_hits", "cache_misses", "hit_ratio"],
    );
    rules_meta(&mut t, &variants[0]);
    t.meta("cells", cells.iter().map(|(p, u)| format!("{p}{p} vs {u}")).collect::<Vec<_>>().join(" "));
    for r in &variants {
        for &m in methods {
            for &size in &sizes {
                let res = run_ordered(&cells, cache.workers, |&(p, u)| exact_cell(r, p, u, m, size, cache.width()))?;
                let secs: f64 = res.iter().map(|s| s.elapsed).sum();
                let hits: u64 = res.iter().map(|s| s.cache.hits).sum();
                let misses: u64 = res.iter().map(|s| s.cache.misses).sum();
                let depth = res.first().map_or(0, |s| s.cache.depth);
                let ratio = if hits + misses == 0 { 0.0 } else { hits as f64 / (hits + misses) as f64 };
                t.rows.push(vec![
                    Cell::Int(r.max_hands as u64),
                    r.dd_after_split.to_string().into(),
                    format!("{m:?}").into(),
                    Cell::Int(depth as u64),
                    Cell::Int(cells.len() as u64),
                    Cell::Num(secs, 3),
                    Cell::Int(hits),
                    Cell::Int(misses),
                    Cell::Num(ratio, 4),
                ]);
            }
        }
    }
    Ok(t)
}

fn mc(rules: &RuleArgs, filter: &FilterArgs, trials: u64, seed: u64, compare: bool, cache: &CacheArgs) -> Result<Table, Failure> {
    let rules = rules.single()?;
    let size = cache.size()?;
    let cells = filter.cells()?;
    let mut t = Table::new(
        "Monte Carlo split values",
        &["pair", "up", "mean", "stderr", "trials", "seed", "exact", "z"],
    );
    rules_meta(&mut t, &rules);
    for (p, u) in cells {
        let shoe = cell_shoe(&rules, u, p)?;
        let res = simulate_split(&shoe, u, p, &rules, trials, seed, cache.workers)?;
        let exact = if compare {
            Some(exact_cell(&rules, p, u, Method::Merged, size, cache.width())?.ev)
        } else {
            None
        };
        t.rows.push(vec![
            p.to_string().into(),
            u.to_string().into(),
            Cell::Num(res.mean, 6),
            Cell::Num(res.stderr, 6),
            Cell::Int(res.trials),
            Cell::Int(res.seed),
            exact.map_or(Cell::Empty, |e| Cell::Num(e, 6)),
            exact.map_or(Cell::Empty, |e| {
                Cell::Num(if res.stderr > 0.0 { (res.mean - e) / res.stderr } else { 0.0 }, 2)
            }),
        ]);
    }
    Ok(t)
}

fn strategy_dump(rules: &RuleArgs) -> Result<Table, Failure> {
    let rules = rules.single()?;
    let mut t = Table::new("Basic strategy (S stand, H hit, D double)", &["hand", "A", "2", "3", "4", "5", "6", "7", "8", "9", "T"]);
    rules_meta(&mut t, &rules);
    for (label, cells) in decision_grid(&rules) {
        let mut row: Vec<Cell> = vec![label.into()];
        row.extend(cells.into_iter().map(Cell::from));
        t.rows.push(row);
    }
    Ok(t)
}

fn dealer_dump(rules: &RuleArgs, filter: &FilterArgs) -> Result<Table, Failure> {
    let rules = rules.single()?;
    let mut ups = FilterArgs::ranks(&filter.ups)?;
    ups.sort();
    ups.dedup();
    let mut t = Table::new("Dealer final totals given no natural", &["up", "17", "18", "19", "20", "21", "bust"]);
    rules_meta(&mut t, &rules);
    for u in ups {
        let mut shoe = Shoe::new(rules.decks)?;
        shoe.remove(u);
        let d = dealer_distribution(&shoe, u, rules.dealer_hits_soft17);
        let mut row: Vec<Cell> = vec![u.to_string().into()];
        row.extend(d.0.iter().map(|&x| Cell::Num(x, 6)));
        t.rows.push(row);
    }
    Ok(t)
}

fn precision(rules: &RuleArgs, src: Source, digits: &[u32]) -> Result<Table, Failure> {
    let rules = rules.single()?;
    let g = game_ev(&rules, source(src))?;
    let mut t = Table::new("Game value from rounded tables (percent)", &["digits", "value", "error"]);
    rules_meta(&mut t, &rules);
    for (k, v) in precision_sweep(&g, digits.iter().copied()) {
        t.rows.push(vec![Cell::Int(k as u64), Cell::Num(v, 6), Cell::Num(v - g.value, 6)]);
    }
    t.rows.push(vec!["full".into(), Cell::Num(g.value, 6), Cell::Num(0.0, 6)]);
    Ok(t)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (table, out) = match &cli.command {
        Command::EvSplit { rules, filter, cache, method, out } => (ev_split(rules, filter, cache, *method)?, out),
        Command::EvTable { rules, filter, cache, method, out } => (ev_table(rules, filter, cache, *method)?, out),
        Command::EvGame { rules, source, out } => (ev_game(rules, *source)?, out),
        Command::EvHand { rules, cards, up, out } => (ev_hand(rules, cards, *up)?, out),
        Command::ApproxCompare { rules, filter, cache, out } => (approx_compare(rules, filter, cache)?, out),
        Command::Bench { rules, filter, cache, methods, out } => (bench(rules, filter, cache, methods)?, out),
        Command::Mc { rules, filter, trials, seed, compare, cache, out } => {
            (mc(rules, filter, *trials, *seed, *compare, cache)?, out)
        }
        Command::StrategyDump { rules, out } => (strategy_dump(rules)?, out),
        Command::DealerDump { rules, filter, out } => (dealer_dump(rules, filter)?, out),
        Command::PrecisionSweep { rules, source, digits, out } => (precision(rules, *source, digits)?, out),
    };
    emit(&table.render(out.format), out.out.as_deref()).map_err(|e| Failure::Compute(format!("writing output: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
