//! Fuzzy subsets of a finite carrier with exact rational membership values,
//! and the sup-min composition induced by a hyperoperation.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperop::{Carrier, ElementSet, HyperOp};

/// Default bound on denominators of randomly sampled fuzzy values.
pub const DEFAULT_MAX_DENOMINATOR: u64 = 16;

/// An exact rational in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzyValue(Ratio<u64>);

impl FuzzyValue {
    pub const ZERO: FuzzyValue = FuzzyValue(Ratio::new_raw(0, 1));
    pub const ONE: FuzzyValue = FuzzyValue(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 || numer > denom {
            return Err(Error::InvalidFuzzyValue(format!("{numer}/{denom}")));
        }
        Ok(FuzzyValue(Ratio::new(numer, denom)))
    }

    /// Numerator in lowest terms.
    pub fn numer(self) -> u64 {
        *self.0.numer()
    }

    /// Denominator in lowest terms.
    pub fn denom(self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self == FuzzyValue::ZERO
    }

    pub fn as_ratio(self) -> Ratio<u64> {
        self.0
    }
}

impl Default for FuzzyValue {
    fn default() -> Self {
        FuzzyValue::ZERO
    }
}

impl fmt::Display for FuzzyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for FuzzyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FuzzyValue {
    type Err = Error;

    /// Accepts `p/q` or a bare integer (which must then be 0 or 1).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidFuzzyValue(s.to_string());
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        match s.split_once('/') {
            Some((p, q)) => FuzzyValue::new(parse(p)?, parse(q)?).map_err(|_| bad()),
            None => FuzzyValue::new(parse(s)?, 1).map_err(|_| bad()),
        }
    }
}

impl Serialize for FuzzyValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FuzzyValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A map from the carrier to `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FuzzySubset {
    values: Vec<FuzzyValue>,
}

impl FuzzySubset {
    pub fn new(values: Vec<FuzzyValue>) -> Result<Self> {
        Carrier::new(values.len())?;
        Ok(FuzzySubset { values })
    }

    /// Constant-zero subset.
    pub fn zeros(carrier: Carrier) -> Self {
        FuzzySubset {
            values: vec![FuzzyValue::ZERO; carrier.order()],
        }
    }

    /// The constant `1`, top of the pointwise order.
    pub fn one(carrier: Carrier) -> Self {
        FuzzySubset {
            values: vec![FuzzyValue::ONE; carrier.order()],
        }
    }

    /// Indicator of `{element}`.
    pub fn point(carrier: Carrier, element: usize) -> Result<Self> {
        carrier.check_element(element)?;
        let mut f = FuzzySubset::zeros(carrier);
        f.values[element] = FuzzyValue::ONE;
        Ok(f)
    }

    /// Indicator of a crisp subset.
    pub fn indicator(carrier: Carrier, set: ElementSet) -> Result<Self> {
        carrier.check_set(set)?;
        Ok(FuzzySubset {
            values: carrier
                .elements()
                .map(|x| if set.contains(x) { FuzzyValue::ONE } else { FuzzyValue::ZERO })
                .collect(),
        })
    }

    /// Uniform-ish sample: denominator in `1..=max_denominator`, then numerator
    /// in `0..=denominator`.
    pub fn random<R: Rng + ?Sized>(carrier: Carrier, max_denominator: u64, rng: &mut R) -> Self {
        let max_denominator = max_denominator.max(1);
        let values = carrier
            .elements()
            .map(|_| {
                let d = rng.gen_range(1..=max_denominator);
                let p = rng.gen_range(0..=d);
                FuzzyValue(Ratio::new(p, d))
            })
            .collect();
        FuzzySubset { values }
    }

    pub fn carrier(&self) -> Carrier {
        Carrier::new(self.values.len()).expect("length validated at construction")
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, x: usize) -> FuzzyValue {
        self.values[x]
    }

    pub fn values(&self) -> &[FuzzyValue] {
        &self.values
    }

    /// Elements with nonzero membership.
    pub fn support(&self) -> ElementSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(x, _)| x)
            .collect()
    }

    fn same_carrier(&self, other: &FuzzySubset) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    fn zip_with<F>(&self, other: &FuzzySubset, op: F) -> Result<FuzzySubset>
    where
        F: Fn(FuzzyValue, FuzzyValue) -> FuzzyValue,
    {
        self.same_carrier(other)?;
        Ok(FuzzySubset {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    /// Pointwise order `f ⪯ g`.
    pub fn leq(&self, other: &FuzzySubset) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// Pointwise minimum `f ∧ g`.
    pub fn meet(&self, other: &FuzzySubset) -> Result<FuzzySubset> {
        self.zip_with(other, std::cmp::min)
    }

    /// Pointwise maximum. Only used to build ideal closures.
    pub(crate) fn join(&self, other: &FuzzySubset) -> Result<FuzzySubset> {
        self.zip_with(other, std::cmp::max)
    }
}

impl fmt::Display for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for FuzzySubset {
    type Err = Error;

    /// Comma-separated values, e.g. `3/10,7/10` or `1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<FuzzyValue>>>()?;
        FuzzySubset::new(values)
    }
}

/// `A_a`: all pairs `(y, z)` with `a ∈ y ∘ z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSet {
    pairs: Vec<(usize, usize)>,
}

impl PairSet {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.pairs.contains(&pair)
    }
}

/// Pairs whose hyperproduct contains `a`, in lexicographic order.
pub fn a_set(h: &HyperOp, a: usize) -> Result<PairSet> {
    h.carrier().check_element(a)?;
    let n = h.order();
    let pairs = (0..n)
        .flat_map(|y| (0..n).map(move |z| (y, z)))
        .filter(|&(y, z)| h.cell(y, z).contains(a))
        .collect();
    Ok(PairSet { pairs })
}

fn check_against(h: &HyperOp, f: &FuzzySubset) -> Result<()> {
    if f.order() == h.order() {
        Ok(())
    } else {
        Err(Error::CarrierMismatch {
            left: h.order(),
            right: f.order(),
        })
    }
}

/// Sup-min composition: `(f ∘ g)(a) = max { min(f(y), g(z)) : a ∈ y ∘ z }`,
/// or `0` when no pair produces `a`.
pub fn compose(h: &HyperOp, f: &FuzzySubset, g: &FuzzySubset) -> Result<FuzzySubset> {
    check_against(h, f)?;
    check_against(h, g)?;
    let n = h.order();
    let mut out = vec![FuzzyValue::ZERO; n];
    // Scatter each pair's min into every element of its cell.
    for y in 0..n {
        let fy = f.values[y];
        if fy.is_zero() {
            continue;
        }
        for z in 0..n {
            let v = fy.min(g.values[z]);
            if v.is_zero() {
                continue;
            }
            for a in h.cell(y, z) {
                if out[a] < v {
                    out[a] = v;
                }
            }
        }
    }
    Ok(FuzzySubset { values: out })
}

/// Left-associated fold of [`compose`]. On hypersemigroups composition is
/// associative, so the bracketing does not matter; on other tables the
/// left fold is the convention.
pub fn compose_chain<'a, I>(h: &HyperOp, factors: I) -> Result<FuzzySubset>
where
    I: IntoIterator<Item = &'a FuzzySubset>,
{
    let mut iter = factors.into_iter();
    let first = iter.next().ok_or(Error::EmptyFactorList)?;
    check_against(h, first)?;
    iter.try_fold(first.clone(), |acc, f| compose(h, &acc, f))
}
