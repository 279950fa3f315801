//! Finite hypersemigroups and their fuzzy subsets.
//!
//! A hyperoperation on `{0, .., n-1}` sends each pair to a nonempty subset.
//! This crate provides the induced product on subsets, the sup-min
//! composition of fuzzy subsets, three independent deciders for the
//! regular, intra-regular, left/right quasi-regular and semisimple classes,
//! fuzzy one-sided ideals, and exhaustive or sampled censuses of small
//! tables.

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod fuzzy;
pub mod hyperop;
pub mod ideal;
pub mod io;
pub mod report;

pub use classify::{
    classify, fuzzy_inequality_holds, is_class_elementwise, is_class_fuzzy, is_class_subsetdef,
    verify_theorems, ClassificationReport, RegularityClass, Route, SubsetVariant, Witness,
};
pub use enumerate::{
    census, enumerate_hypergroupoids, random_hypergroupoid, search_nonassociative_divergence,
    CensusMode, CensusOptions, CensusReport, ExhaustiveBudget,
};
pub use error::{Error, Result};
pub use fuzzy::{a_set, compose, compose_chain, FuzzySubset, FuzzyValue, PairSet};
pub use hyperop::{Carrier, ElementSet, HyperOp, MAX_ORDER};
pub use ideal::{
    check_meet_identity, is_fuzzy_left_ideal, is_fuzzy_right_ideal, left_ideal_closure,
    right_ideal_closure,
};
pub use io::{parse_table, serialize_table, TableDocument};
