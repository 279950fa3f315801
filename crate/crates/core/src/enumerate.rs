//! Table populations: exhaustive and seeded random generation, censuses of
//! regularity classes, and a divergence search over non-associative tables.
//!
//! Exhaustive order: cells in row-major order, each cycling through the
//! nonempty subsets in ascending bitmask order, with the last cell varying
//! fastest. Table `i` is therefore `i` written in base `2^n - 1` with cell
//! `(0,0)` as the most significant digit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    classify_class, definitional_unchecked, fuzzy_inequality_holds, fuzzy_unchecked,
    RegularityClass, DEFAULT_SUBSET_CAP,
};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySubset, DEFAULT_MAX_DENOMINATOR};
use crate::hyperop::{Carrier, ElementSet, HyperOp};
use crate::io::{parse_table, serialize_table};

/// Tables per RNG stream when sampling; fixes the sample independently of
/// how the work is split across threads.
const SAMPLE_CHUNK: u64 = 1024;

/// Random fuzzy subsets tried per class in the divergence search.
const SEARCH_FUZZY_TRIALS: usize = 16;

/// Upper bound on the number of tables an exhaustive run may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveBudget(pub u64);

impl ExhaustiveBudget {
    /// Admits orders 1 and 2 (`3^4 = 81` tables).
    pub const DEFAULT: ExhaustiveBudget = ExhaustiveBudget(81);
    /// Also admits order 3 (`7^9 = 40,353,607` tables).
    pub const EXTENDED: ExhaustiveBudget = ExhaustiveBudget(40_353_607);
}

impl Default for ExhaustiveBudget {
    fn default() -> Self {
        ExhaustiveBudget::DEFAULT
    }
}

/// `(2^n - 1)^(n²)`, or `None` on overflow.
pub fn table_count(order: usize) -> Option<u128> {
    let base = (1u128 << order) - 1;
    base.checked_pow(u32::try_from(order * order).ok()?)
}

fn check_budget(order: usize, budget: ExhaustiveBudget) -> Result<u64> {
    Carrier::new(order)?;
    match table_count(order) {
        Some(count) if count <= budget.0 as u128 => Ok(count as u64),
        count => Err(Error::BudgetExceeded {
            order,
            tables: count.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
            budget: budget.0,
        }),
    }
}

/// Every order-`n` table in enumeration order.
#[derive(Debug, Clone)]
pub struct Hypergroupoids {
    carrier: Carrier,
    cells: Vec<u32>,
    /// Leading cells held fixed (used for partitioning).
    fixed: usize,
    done: bool,
}

impl Hypergroupoids {
    fn starting_at(carrier: Carrier, cells: Vec<u32>, fixed: usize) -> Self {
        Hypergroupoids {
            carrier,
            cells,
            fixed,
            done: false,
        }
    }

    fn advance(&mut self) {
        let max = self.carrier.nonempty_subset_count();
        for cell in self.cells[self.fixed..].iter_mut().rev() {
            if *cell < max {
                *cell += 1;
                return;
            }
            *cell = 1;
        }
        self.done = true;
    }
}

impl Iterator for Hypergroupoids {
    type Item = HyperOp;

    fn next(&mut self) -> Option<HyperOp> {
        if self.done {
            return None;
        }
        let cells = self
            .cells
            .iter()
            .map(|&b| ElementSet::from_bits(b).expect("below MAX_ORDER"))
            .collect();
        let table = HyperOp::new(self.carrier, cells).expect("enumerated cells are valid");
        self.advance();
        Some(table)
    }
}

/// Streams all `(2^n - 1)^(n²)` tables of order `n`, refusing orders whose
/// table count exceeds `budget`.
pub fn enumerate_hypergroupoids(order: usize, budget: ExhaustiveBudget) -> Result<Hypergroupoids> {
    check_budget(order, budget)?;
    let carrier = Carrier::new(order)?;
    Ok(Hypergroupoids::starting_at(carrier, vec![1; order * order], 0))
}

/// The slice of the enumeration whose first cell is the subset with bitmask
/// `first_cell`.
fn partition(carrier: Carrier, first_cell: u32) -> Hypergroupoids {
    let n = carrier.order();
    let mut cells = vec![1; n * n];
    cells[0] = first_cell;
    Hypergroupoids::starting_at(carrier, cells, 1)
}

/// A table with every cell uniform over the nonempty subsets.
pub fn random_hypergroupoid_with<R: Rng + ?Sized>(carrier: Carrier, rng: &mut R) -> HyperOp {
    let max = carrier.nonempty_subset_count();
    let n = carrier.order();
    let cells = (0..n * n)
        .map(|_| ElementSet::from_bits(rng.gen_range(1..=max)).expect("below MAX_ORDER"))
        .collect();
    HyperOp::new(carrier, cells).expect("random cells are valid")
}

pub fn random_hypergroupoid(order: usize, seed: u64) -> Result<HyperOp> {
    let carrier = Carrier::new(order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_hypergroupoid_with(carrier, &mut rng))
}

/// Random table number `index` of the seeded sample stream.
///
/// Table `i` lives in chunk `i / 1024`, drawn from its own ChaCha stream,
/// so any subrange can be regenerated independently.
pub fn sampled_tables(order: usize, seed: u64, range: std::ops::Range<u64>) -> Result<SampledTables> {
    let carrier = Carrier::new(order)?;
    Ok(SampledTables::new(carrier, seed, range))
}

#[derive(Debug, Clone)]
pub struct SampledTables {
    carrier: Carrier,
    seed: u64,
    next: u64,
    end: u64,
    rng: ChaCha8Rng,
}

impl SampledTables {
    fn new(carrier: Carrier, seed: u64, range: std::ops::Range<u64>) -> Self {
        let mut s = SampledTables {
            carrier,
            seed,
            next: range.start,
            end: range.end,
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        s.reposition();
        s
    }

    fn reposition(&mut self) {
        let chunk = self.next / SAMPLE_CHUNK;
        self.rng = ChaCha8Rng::seed_from_u64(self.seed);
        self.rng.set_stream(chunk);
        for _ in 0..self.next % SAMPLE_CHUNK {
            random_hypergroupoid_with(self.carrier, &mut self.rng);
        }
    }
}

impl Iterator for SampledTables {
    type Item = HyperOp;

    fn next(&mut self) -> Option<HyperOp> {
        if self.next >= self.end {
            return None;
        }
        if self.next.is_multiple_of(SAMPLE_CHUNK) {
            self.rng = ChaCha8Rng::seed_from_u64(self.seed);
            self.rng.set_stream(self.next / SAMPLE_CHUNK);
        }
        self.next += 1;
        Some(random_hypergroupoid_with(self.carrier, &mut self.rng))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CensusMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Copy)]
pub struct CensusOptions<'a> {
    pub budget: ExhaustiveBudget,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub subset_cap: usize,
    /// Called with (finished, total) after each work unit.
    pub progress: Option<&'a (dyn Fn(usize, usize) + Sync)>,
}

impl Default for CensusOptions<'_> {
    fn default() -> Self {
        CensusOptions {
            budget: ExhaustiveBudget::DEFAULT,
            jobs: None,
            subset_cap: DEFAULT_SUBSET_CAP,
            progress: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub class: RegularityClass,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinationCount {
    /// Bit `c.index()` set iff class `c` holds.
    pub mask: u8,
    pub classes: Vec<RegularityClass>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub order: usize,
    pub mode: CensusMode,
    pub tables_seen: u64,
    pub hypersemigroups: u64,
    pub per_class: Vec<ClassCount>,
    /// Nonzero combinations only, ascending by mask.
    pub combinations: Vec<CombinationCount>,
    pub route_disagreements: u64,
    /// Canonical text of the first table (in population order) whose routes
    /// disagreed.
    pub first_disagreement: Option<String>,
    /// Tables that are left and right quasi-regular but not semisimple.
    pub quasi_regular_not_semisimple: u64,
}

impl CensusReport {
    pub fn class_count(&self, class: RegularityClass) -> u64 {
        self.per_class[class.index()].count
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    tables_seen: u64,
    hypersemigroups: u64,
    per_class: [u64; 5],
    combinations: [u64; 32],
    disagreements: u64,
    first_disagreement: Option<(u64, HyperOp)>,
    quasi_not_semisimple: u64,
}

impl Tally {
    fn record(&mut self, position: u64, h: &HyperOp, subset_cap: usize) {
        self.tables_seen += 1;
        if !h.is_hypersemigroup() {
            return;
        }
        self.hypersemigroups += 1;
        let mut mask = 0u8;
        let mut agree = true;
        for class in RegularityClass::ALL {
            let report = classify_class(h, class, subset_cap);
            agree &= report.routes_agree;
            if report.definitional.holds {
                mask |= 1 << class.index();
                self.per_class[class.index()] += 1;
            }
        }
        self.combinations[mask as usize] += 1;
        if !agree {
            self.disagreements += 1;
            if self.first_disagreement.is_none() {
                self.first_disagreement = Some((position, h.clone()));
            }
        }
        let bit = |c: RegularityClass| mask >> c.index() & 1 == 1;
        if bit(RegularityClass::LeftQuasiRegular)
            && bit(RegularityClass::RightQuasiRegular)
            && !bit(RegularityClass::Semisimple)
        {
            self.quasi_not_semisimple += 1;
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.tables_seen += other.tables_seen;
        self.hypersemigroups += other.hypersemigroups;
        for (a, b) in self.per_class.iter_mut().zip(other.per_class) {
            *a += b;
        }
        for (a, b) in self.combinations.iter_mut().zip(other.combinations) {
            *a += b;
        }
        self.disagreements += other.disagreements;
        self.first_disagreement = match (self.first_disagreement, other.first_disagreement) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self.quasi_not_semisimple += other.quasi_not_semisimple;
        self
    }

    fn into_report(self, order: usize, mode: CensusMode) -> CensusReport {
        CensusReport {
            order,
            mode,
            tables_seen: self.tables_seen,
            hypersemigroups: self.hypersemigroups,
            per_class: RegularityClass::ALL
                .iter()
                .map(|&class| ClassCount {
                    class,
                    count: self.per_class[class.index()],
                })
                .collect(),
            combinations: self
                .combinations
                .iter()
                .enumerate()
                .filter(|(_, &count)| count > 0)
                .map(|(mask, &count)| CombinationCount {
                    mask: mask as u8,
                    classes: RegularityClass::ALL
                        .iter()
                        .copied()
                        .filter(|c| mask >> c.index() & 1 == 1)
                        .collect(),
                    count,
                })
                .collect(),
            route_disagreements: self.disagreements,
            first_disagreement: self.first_disagreement.map(|(_, h)| serialize_table(&h)),
            quasi_regular_not_semisimple: self.quasi_not_semisimple,
        }
    }
}

fn in_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    }
}

/// Filters a population to hypersemigroups, classifies each survivor by all
/// routes, and tallies the results. The report does not depend on `jobs`.
pub fn census(order: usize, mode: CensusMode, options: CensusOptions<'_>) -> Result<CensusReport> {
    let carrier = Carrier::new(order)?;
    let cap = options.subset_cap;
    let done = std::sync::atomic::AtomicUsize::new(0);
    let report_progress = |total: usize| {
        let finished = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
        if let Some(progress) = options.progress {
            progress(finished, total);
        }
    };

    let tally = match mode {
        CensusMode::Exhaustive => {
            check_budget(order, options.budget)?;
            let parts = carrier.nonempty_subset_count();
            let per_part = carrier.nonempty_subset_count() as u64;
            let per_part = per_part.pow((order * order - 1) as u32);
            in_pool(options.jobs, || {
                (1..=parts)
                    .into_par_iter()
                    .map(|first| {
                        let base = (first as u64 - 1) * per_part;
                        let mut tally = Tally::default();
                        for (i, h) in partition(carrier, first).enumerate() {
                            tally.record(base + i as u64, &h, cap);
                        }
                        report_progress(parts as usize);
                        tally
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .fold(Tally::default(), Tally::merge)
        }
        CensusMode::Sampled { count, seed } => {
            let chunks = count.div_ceil(SAMPLE_CHUNK);
            in_pool(options.jobs, || {
                (0..chunks)
                    .into_par_iter()
                    .map(|chunk| {
                        let start = chunk * SAMPLE_CHUNK;
                        let end = (start + SAMPLE_CHUNK).min(count);
                        let mut tally = Tally::default();
                        for (i, h) in SampledTables::new(carrier, seed, start..end).enumerate() {
                            tally.record(start + i as u64, &h, cap);
                        }
                        report_progress(chunks as usize);
                        tally
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .fold(Tally::default(), Tally::merge)
        }
    };
    Ok(tally.into_report(order, mode))
}

/// A non-associative table on which the definitional and fuzzy readings of
/// a class disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    /// Canonical `hypertable v1` text.
    pub table: String,
    pub class: RegularityClass,
    pub definitional: bool,
    /// Verdict of the point-subset check `f_a ⪯ P(f_a)` for all `a`.
    pub fuzzy_points: bool,
    /// A fuzzy subset violating the inequality while the definition holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_subset: Option<FuzzySubset>,
}

impl Finding {
    /// Recomputes the divergence from the serialized table alone.
    pub fn reverify(&self) -> bool {
        let Ok(h) = parse_table(&self.table) else {
            return false;
        };
        if h.is_hypersemigroup() {
            return false;
        }
        let definitional = definitional_unchecked(&h, self.class).holds;
        let fuzzy_points = fuzzy_unchecked(&h, self.class).holds;
        if definitional != self.definitional || fuzzy_points != self.fuzzy_points {
            return false;
        }
        match &self.violating_subset {
            Some(f) => {
                definitional
                    && f.order() == h.order()
                    && !fuzzy_inequality_holds(&h, self.class, f).unwrap_or(true)
            }
            None => definitional != fuzzy_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub order: usize,
    /// Non-associative tables examined.
    pub examined: u64,
    pub finding: Option<Finding>,
}

fn divergence(h: &HyperOp, rng: &mut ChaCha8Rng) -> Option<Finding> {
    for class in RegularityClass::ALL {
        let definitional = definitional_unchecked(h, class).holds;
        let fuzzy_points = fuzzy_unchecked(h, class).holds;
        let mut finding = Finding {
            table: serialize_table(h),
            class,
            definitional,
            fuzzy_points,
            violating_subset: None,
        };
        if definitional != fuzzy_points {
            return Some(finding);
        }
        if definitional {
            for _ in 0..SEARCH_FUZZY_TRIALS {
                let f = FuzzySubset::random(h.carrier(), DEFAULT_MAX_DENOMINATOR, rng);
                if !fuzzy_inequality_holds(h, class, &f).expect("carrier matches") {
                    finding.violating_subset = Some(f);
                    return Some(finding);
                }
            }
        }
    }
    None
}

/// Looks for a non-associative table separating the definitional route from
/// the left-folded fuzzy inequality. Orders within the default exhaustive
/// budget are walked in enumeration order; larger orders are sampled.
/// `budget` bounds the number of non-associative tables examined.
pub fn search_nonassociative_divergence(order: usize, budget: u64, seed: u64) -> Result<SearchOutcome> {
    let carrier = Carrier::new(order)?;
    let mut fuzzy_rng = ChaCha8Rng::seed_from_u64(seed);
    fuzzy_rng.set_stream(u64::MAX);

    let tables: Box<dyn Iterator<Item = HyperOp>> =
        match enumerate_hypergroupoids(order, ExhaustiveBudget::DEFAULT) {
            Ok(all) => Box::new(all),
            Err(_) => Box::new(SampledTables::new(carrier, seed, 0..u64::MAX)),
        };

    let mut examined = 0;
    for h in tables.filter(|h| !h.is_hypersemigroup()) {
        if examined >= budget {
            break;
        }
        examined += 1;
        if let Some(finding) = divergence(&h, &mut fuzzy_rng) {
            return Ok(SearchOutcome {
                order,
                examined,
                finding: Some(finding),
            });
        }
    }
    Ok(SearchOutcome {
        order,
        examined,
        finding: None,
    })
}
