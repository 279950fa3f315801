//! Deciders for the five regularity classes of a hypersemigroup.
//!
//! Each class is decided three ways:
//!
//! * **definitional**: search for the witness elements the class asks for
//!   (`x`, `x,y` or `x,y,z`) in lexicographic order;
//! * **subset**: membership `a ∈ P({a})` for a product pattern `P` over
//!   singletons and the whole carrier (variant 1), or the inclusion
//!   `A ⊆ P(A)` for every nonempty `A` (variant 2);
//! * **fuzzy**: the inequality `f ⪯ P(f)` evaluated at every point subset
//!   `f_a`, where `P` is the same pattern read as a composition chain with
//!   `1` in place of the whole carrier.
//!
//! On a hypersemigroup all routes agree; [`classify`] records whether they did.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::{compose_chain, FuzzySubset, FuzzyValue, DEFAULT_MAX_DENOMINATOR};
use crate::hyperop::{ElementSet, HyperOp};

/// Largest order for which variant 2 of the subset route is attempted.
pub const DEFAULT_SUBSET_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityClass {
    Regular,
    IntraRegular,
    LeftQuasiRegular,
    RightQuasiRegular,
    Semisimple,
}

/// A factor slot in a class pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// The subject: `f`, `{a}` or `A`.
    Subject,
    /// The whole carrier, or the fuzzy constant `1`.
    Whole,
}

use Slot::{Subject as S, Whole as W};

impl RegularityClass {
    pub const ALL: [RegularityClass; 5] = [
        RegularityClass::Regular,
        RegularityClass::IntraRegular,
        RegularityClass::LeftQuasiRegular,
        RegularityClass::RightQuasiRegular,
        RegularityClass::Semisimple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegularityClass::Regular => "regular",
            RegularityClass::IntraRegular => "intra-regular",
            RegularityClass::LeftQuasiRegular => "left-quasi-regular",
            RegularityClass::RightQuasiRegular => "right-quasi-regular",
            RegularityClass::Semisimple => "semisimple",
        }
    }

    /// Position in [`ALL`](Self::ALL); also the bit used in class masks.
    pub fn index(self) -> usize {
        self as usize
    }

    /// The right-hand side of `f ⪯ ...`:
    ///
    /// | class               | pattern       |
    /// |---------------------|---------------|
    /// | regular             | `f 1 f`       |
    /// | intra-regular       | `1 f f 1`     |
    /// | left quasi-regular  | `1 f 1 f`     |
    /// | right quasi-regular | `f 1 f 1`     |
    /// | semisimple          | `1 f 1 f 1`   |
    pub fn pattern(self) -> &'static [Slot] {
        match self {
            RegularityClass::Regular => &[S, W, S],
            RegularityClass::IntraRegular => &[W, S, S, W],
            RegularityClass::LeftQuasiRegular => &[W, S, W, S],
            RegularityClass::RightQuasiRegular => &[S, W, S, W],
            RegularityClass::Semisimple => &[W, S, W, S, W],
        }
    }

    /// Number of witness elements the definition quantifies over.
    pub fn witness_arity(self) -> usize {
        match self {
            RegularityClass::Regular => 1,
            RegularityClass::Semisimple => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for RegularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    #[serde(rename = "definitional")]
    Definitional,
    #[serde(rename = "subset-1")]
    SubsetSingleton,
    #[serde(rename = "subset-2")]
    SubsetAll,
    #[serde(rename = "fuzzy")]
    Fuzzy,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Definitional => "definitional",
            Route::SubsetSingleton => "subset-1",
            Route::SubsetAll => "subset-2",
            Route::Fuzzy => "fuzzy",
        })
    }
}

/// Which of the two subset-product formulations to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetVariant {
    /// `a ∈ P({a})` for every element `a`.
    Singleton,
    /// `A ⊆ P(A)` for every nonempty `A`.
    AllSubsets,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Holds {
        witnesses: Vec<usize>,
    },
    Fails {
        #[serde(skip_serializing_if = "Option::is_none")]
        subset: Option<ElementSet>,
        #[serde(skip_serializing_if = "Option::is_none")]
        fuzzy: Option<FuzzySubset>,
    },
}

/// Evidence for one element under one route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub route: Route,
    pub element: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl Witness {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds { .. })
    }

    /// Re-checks a positive witness from scratch. Failure records return
    /// `false`.
    pub fn reverify(&self, h: &HyperOp, class: RegularityClass) -> bool {
        let Outcome::Holds { witnesses } = &self.outcome else {
            return false;
        };
        if self.element >= h.order() {
            return false;
        }
        match self.route {
            Route::Definitional => {
                witnesses.len() == class.witness_arity()
                    && witnesses.iter().all(|&w| w < h.order())
                    && definition_holds(h, class, self.element, witnesses)
            }
            Route::SubsetSingleton | Route::SubsetAll => {
                subset_member(h, class, self.element)
            }
            Route::Fuzzy => point_chain_value(h, class, self.element) == FuzzyValue::ONE,
        }
    }
}

/// One route's verdict for one class. On success, definitional and fuzzy
/// routes carry one witness per element; on failure, a single record for
/// the first failing element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RouteVerdict {
    pub route: Route,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl RouteVerdict {
    pub fn failing_element(&self) -> Option<usize> {
        self.witnesses.iter().find(|w| !w.holds()).map(|w| w.element)
    }
}

/// The raw defining membership for `class` at `a` with the given witnesses:
///
/// * regular: `a ∈ (a∘x) * {a}`
/// * intra-regular: `a ∈ (x∘a) * (a∘y)`
/// * left quasi-regular: `a ∈ (x∘a) * (y∘a)`
/// * right quasi-regular: `a ∈ (a∘x) * (a∘y)`
/// * semisimple: `a ∈ (x∘a) * (y∘a) * {z}`
///
/// Multi-factor products are folded from the left.
pub fn definition_holds(h: &HyperOp, class: RegularityClass, a: usize, w: &[usize]) -> bool {
    let single = ElementSet::singleton;
    let set = match class {
        RegularityClass::Regular => h.product(h.cell(a, w[0]), single(a)),
        RegularityClass::IntraRegular => h.product(h.cell(w[0], a), h.cell(a, w[1])),
        RegularityClass::LeftQuasiRegular => h.product(h.cell(w[0], a), h.cell(w[1], a)),
        RegularityClass::RightQuasiRegular => h.product(h.cell(a, w[0]), h.cell(a, w[1])),
        RegularityClass::Semisimple => h.product(
            h.product(h.cell(w[0], a), h.cell(w[1], a)),
            single(w[2]),
        ),
    };
    set.contains(a)
}

/// First witness tuple in lexicographic order, if any.
fn find_witness(h: &HyperOp, class: RegularityClass, a: usize) -> Option<Vec<usize>> {
    let n = h.order();
    let arity = class.witness_arity();
    let total = n.pow(arity as u32);
    let mut tuple = vec![0; arity];
    for index in 0..total {
        let mut rest = index;
        for slot in tuple.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        if definition_holds(h, class, a, &tuple) {
            return Some(tuple);
        }
    }
    None
}

pub(crate) fn definitional_unchecked(h: &HyperOp, class: RegularityClass) -> RouteVerdict {
    let mut witnesses = Vec::with_capacity(h.order());
    for a in h.carrier().elements() {
        match find_witness(h, class, a) {
            Some(found) => witnesses.push(Witness {
                route: Route::Definitional,
                element: a,
                outcome: Outcome::Holds { witnesses: found },
            }),
            None => {
                return RouteVerdict {
                    route: Route::Definitional,
                    holds: false,
                    witnesses: vec![Witness {
                        route: Route::Definitional,
                        element: a,
                        outcome: Outcome::Fails {
                            subset: None,
                            fuzzy: None,
                        },
                    }],
                }
            }
        }
    }
    RouteVerdict {
        route: Route::Definitional,
        holds: true,
        witnesses,
    }
}

/// Definitional route: exhaustive witness search for every element.
pub fn is_class_elementwise(h: &HyperOp, class: RegularityClass) -> Result<RouteVerdict> {
    h.require_hypersemigroup()?;
    Ok(definitional_unchecked(h, class))
}

fn pattern_product(h: &HyperOp, class: RegularityClass, subject: ElementSet) -> ElementSet {
    let whole = h.carrier().full();
    class
        .pattern()
        .iter()
        .map(|slot| match slot {
            Slot::Subject => subject,
            Slot::Whole => whole,
        })
        .reduce(|acc, f| h.product(acc, f))
        .expect("patterns are nonempty")
}

fn subset_member(h: &HyperOp, class: RegularityClass, a: usize) -> bool {
    pattern_product(h, class, ElementSet::singleton(a)).contains(a)
}

/// Subset route as a full verdict. Variant 2 refuses orders above `cap`.
pub fn subset_route(
    h: &HyperOp,
    class: RegularityClass,
    variant: SubsetVariant,
    cap: usize,
) -> Result<RouteVerdict> {
    h.require_hypersemigroup()?;
    Ok(match variant {
        SubsetVariant::Singleton => subset_singleton_unchecked(h, class),
        SubsetVariant::AllSubsets => {
            if h.order() > cap {
                return Err(Error::SubsetCapExceeded {
                    order: h.order(),
                    cap,
                });
            }
            subset_all_unchecked(h, class)
        }
    })
}

fn subset_singleton_unchecked(h: &HyperOp, class: RegularityClass) -> RouteVerdict {
    let route = Route::SubsetSingleton;
    let mut witnesses = Vec::with_capacity(h.order());
    for a in h.carrier().elements() {
        if subset_member(h, class, a) {
            witnesses.push(Witness {
                route,
                element: a,
                outcome: Outcome::Holds { witnesses: vec![] },
            });
        } else {
            return RouteVerdict {
                route,
                holds: false,
                witnesses: vec![Witness {
                    route,
                    element: a,
                    outcome: Outcome::Fails {
                        subset: Some(ElementSet::singleton(a)),
                        fuzzy: None,
                    },
                }],
            };
        }
    }
    RouteVerdict {
        route,
        holds: true,
        witnesses,
    }
}

fn subset_all_unchecked(h: &HyperOp, class: RegularityClass) -> RouteVerdict {
    let route = Route::SubsetAll;
    for subject in h.carrier().nonempty_subsets() {
        let product = pattern_product(h, class, subject);
        if !subject.is_subset(product) {
            let missing = subject
                .iter()
                .find(|&a| !product.contains(a))
                .expect("subject not contained in product");
            return RouteVerdict {
                route,
                holds: false,
                witnesses: vec![Witness {
                    route,
                    element: missing,
                    outcome: Outcome::Fails {
                        subset: Some(subject),
                        fuzzy: None,
                    },
                }],
            };
        }
    }
    RouteVerdict {
        route,
        holds: true,
        witnesses: vec![],
    }
}

/// Subset route: `a ∈ P({a})` for all `a`, or `A ⊆ P(A)` for all nonempty
/// `A` (orders above [`DEFAULT_SUBSET_CAP`] are refused for the latter).
pub fn is_class_subsetdef(
    h: &HyperOp,
    class: RegularityClass,
    variant: SubsetVariant,
) -> Result<bool> {
    subset_route(h, class, variant, DEFAULT_SUBSET_CAP).map(|v| v.holds)
}

fn instantiate<'a>(
    class: RegularityClass,
    subject: &'a FuzzySubset,
    one: &'a FuzzySubset,
) -> impl Iterator<Item = &'a FuzzySubset> + 'a {
    class.pattern().iter().map(move |slot| match slot {
        Slot::Subject => subject,
        Slot::Whole => one,
    })
}

/// The class's composition chain evaluated at `f`.
pub fn pattern_chain(h: &HyperOp, class: RegularityClass, f: &FuzzySubset) -> Result<FuzzySubset> {
    let one = FuzzySubset::one(h.carrier());
    compose_chain(h, instantiate(class, f, &one))
}

fn point_chain_value(h: &HyperOp, class: RegularityClass, a: usize) -> FuzzyValue {
    let point = FuzzySubset::point(h.carrier(), a).expect("element in range");
    pattern_chain(h, class, &point)
        .expect("carrier matches")
        .get(a)
}

pub(crate) fn fuzzy_unchecked(h: &HyperOp, class: RegularityClass) -> RouteVerdict {
    let route = Route::Fuzzy;
    let mut witnesses = Vec::with_capacity(h.order());
    for a in h.carrier().elements() {
        // f_a ⪯ chain(f_a) only constrains position a, where f_a is 1.
        if point_chain_value(h, class, a) == FuzzyValue::ONE {
            witnesses.push(Witness {
                route,
                element: a,
                outcome: Outcome::Holds { witnesses: vec![] },
            });
        } else {
            return RouteVerdict {
                route,
                holds: false,
                witnesses: vec![Witness {
                    route,
                    element: a,
                    outcome: Outcome::Fails {
                        subset: None,
                        fuzzy: Some(FuzzySubset::point(h.carrier(), a).expect("in range")),
                    },
                }],
            };
        }
    }
    RouteVerdict {
        route,
        holds: true,
        witnesses,
    }
}

/// Fuzzy route: `f_a ⪯ P(f_a)` for every point subset `f_a`.
pub fn is_class_fuzzy(h: &HyperOp, class: RegularityClass) -> Result<RouteVerdict> {
    h.require_hypersemigroup()?;
    Ok(fuzzy_unchecked(h, class))
}

/// `f ⪯ P(f)` for a single fuzzy subset. Accepts non-associative tables,
/// where the chain is folded from the left.
pub fn fuzzy_inequality_holds(h: &HyperOp, class: RegularityClass, f: &FuzzySubset) -> Result<bool> {
    let chain = pattern_chain(h, class, f)?;
    f.leq(&chain)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: RegularityClass,
    pub definitional: RouteVerdict,
    pub subset_singleton: RouteVerdict,
    /// `None` when the order exceeds the subset cap.
    pub subset_all: Option<RouteVerdict>,
    pub fuzzy: RouteVerdict,
    pub routes_agree: bool,
}

impl ClassReport {
    pub fn routes(&self) -> impl Iterator<Item = &RouteVerdict> {
        [&self.definitional, &self.subset_singleton]
            .into_iter()
            .chain(self.subset_all.as_ref())
            .chain([&self.fuzzy])
    }

    /// The agreed verdict, or `None` if the routes disagree.
    pub fn verdict(&self) -> Option<bool> {
        self.routes_agree.then_some(self.definitional.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub classes: Vec<ClassReport>,
}

impl ClassificationReport {
    pub fn class(&self, class: RegularityClass) -> &ClassReport {
        &self.classes[class.index()]
    }

    pub fn all_agree(&self) -> bool {
        self.classes.iter().all(|c| c.routes_agree)
    }

    /// Bit `c.index()` set iff the definitional route says `c` holds.
    pub fn class_mask(&self) -> u8 {
        self.classes
            .iter()
            .filter(|c| c.definitional.holds)
            .fold(0, |m, c| m | 1 << c.class.index())
    }
}

pub fn classify_class(h: &HyperOp, class: RegularityClass, cap: usize) -> ClassReport {
    let definitional = definitional_unchecked(h, class);
    let subset_singleton = subset_singleton_unchecked(h, class);
    let subset_all = (h.order() <= cap).then(|| subset_all_unchecked(h, class));
    let fuzzy = fuzzy_unchecked(h, class);
    let mut report = ClassReport {
        class,
        definitional,
        subset_singleton,
        subset_all,
        fuzzy,
        routes_agree: false,
    };
    let first = report.definitional.holds;
    let agree = report.routes().all(|r| r.holds == first);
    report.routes_agree = agree;
    report
}

/// Runs every route for every class.
pub fn classify(h: &HyperOp) -> Result<ClassificationReport> {
    classify_with_cap(h, DEFAULT_SUBSET_CAP)
}

pub fn classify_with_cap(h: &HyperOp, cap: usize) -> Result<ClassificationReport> {
    h.require_hypersemigroup()?;
    Ok(ClassificationReport {
        order: h.order(),
        classes: RegularityClass::ALL
            .iter()
            .map(|&c| classify_class(h, c, cap))
            .collect(),
    })
}

/// Outcome of checking one class's characterization on one table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub class: RegularityClass,
    pub routes_agree: bool,
    pub verdict: bool,
    pub trials: usize,
    /// Random fuzzy subsets violating the inequality.
    pub random_violations: usize,
    /// For a negative verdict: whether the recorded failing point subset
    /// violates the inequality when re-evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_violation_confirmed: Option<bool>,
    /// A random fuzzy subset violating the inequality although the class holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<FuzzySubset>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    pub classes: Vec<TheoremCheck>,
    pub passed: bool,
}

/// Checks route agreement for every class, then samples `trials` random
/// fuzzy subsets per class: when a class holds none may violate its
/// inequality, and when it fails the recorded point subset must.
pub fn verify_theorems(h: &HyperOp, trials: usize, seed: u64) -> Result<TheoremReport> {
    let report = classify(h)?;
    let classes: Vec<TheoremCheck> = report
        .classes
        .iter()
        .map(|cr| check_class(h, cr, trials, seed))
        .collect();
    let passed = classes.iter().all(|c| c.passed);
    Ok(TheoremReport {
        order: h.order(),
        trials,
        seed,
        classes,
        passed,
    })
}

fn check_class(h: &HyperOp, cr: &ClassReport, trials: usize, seed: u64) -> TheoremCheck {
    let verdict = cr.definitional.holds;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(cr.class.index() as u64);

    let mut random_violations = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let f = FuzzySubset::random(h.carrier(), DEFAULT_MAX_DENOMINATOR, &mut rng);
        if !fuzzy_inequality_holds(h, cr.class, &f).expect("carrier matches") {
            random_violations += 1;
            if verdict && counterexample.is_none() {
                counterexample = Some(f);
            }
        }
    }

    let point_violation_confirmed = (!verdict).then(|| {
        cr.fuzzy
            .witnesses
            .iter()
            .find_map(|w| match &w.outcome {
                Outcome::Fails { fuzzy: Some(f), .. } => Some(f),
                _ => None,
            })
            .is_some_and(|f| !fuzzy_inequality_holds(h, cr.class, f).expect("carrier matches"))
    });

    let passed = cr.routes_agree
        && counterexample.is_none()
        && point_violation_confirmed.unwrap_or(true);
    TheoremCheck {
        class: cr.class,
        routes_agree: cr.routes_agree,
        verdict,
        trials,
        random_violations,
        point_violation_confirmed,
        counterexample,
        passed,
    }
}
