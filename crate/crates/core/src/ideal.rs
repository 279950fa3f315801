//! Fuzzy one-sided ideals and the meet/composition identity on regular
//! hypersemigroups.

use thiserror::Error;

use crate::classify::{definitional_unchecked, RegularityClass};
use crate::error::{Error, Result};
use crate::fuzzy::{compose, FuzzySubset};
use crate::hyperop::HyperOp;

fn check_carrier(h: &HyperOp, f: &FuzzySubset) -> Result<()> {
    if h.order() == f.order() {
        Ok(())
    } else {
        Err(Error::CarrierMismatch {
            left: h.order(),
            right: f.order(),
        })
    }
}

/// `f(u) ≥ f(x)` whenever `u ∈ x ∘ y`.
pub fn is_fuzzy_right_ideal(h: &HyperOp, f: &FuzzySubset) -> Result<bool> {
    check_carrier(h, f)?;
    let n = h.order();
    Ok((0..n).all(|x| (0..n).all(|y| h.cell(x, y).iter().all(|u| f.get(u) >= f.get(x)))))
}

/// `f(u) ≥ f(y)` whenever `u ∈ x ∘ y`.
pub fn is_fuzzy_left_ideal(h: &HyperOp, f: &FuzzySubset) -> Result<bool> {
    check_carrier(h, f)?;
    let n = h.order();
    Ok((0..n).all(|x| (0..n).all(|y| h.cell(x, y).iter().all(|u| f.get(u) >= f.get(y)))))
}

fn closure<F>(h: &HyperOp, f: &FuzzySubset, step: F) -> Result<FuzzySubset>
where
    F: Fn(&FuzzySubset) -> Result<FuzzySubset>,
{
    check_carrier(h, f)?;
    let mut current = f.clone();
    // Values never leave values(f) ∪ {0} and only grow, so this terminates.
    loop {
        let next = current.join(&step(&current)?)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// Least fuzzy right ideal above `f`: iterate `g ↦ g ∨ (g ∘ 1)` to a fixpoint.
pub fn right_ideal_closure(h: &HyperOp, f: &FuzzySubset) -> Result<FuzzySubset> {
    let one = FuzzySubset::one(h.carrier());
    closure(h, f, |g| compose(h, g, &one))
}

/// Least fuzzy left ideal above `f`: iterate `g ↦ g ∨ (1 ∘ g)` to a fixpoint.
pub fn left_ideal_closure(h: &HyperOp, f: &FuzzySubset) -> Result<FuzzySubset> {
    let one = FuzzySubset::one(h.carrier());
    closure(h, f, |g| compose(h, &one, g))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeetIdentityError {
    #[error(transparent)]
    Input(#[from] Error),
    #[error("the hypersemigroup is not regular (fails at element {0})")]
    NotRegular(usize),
    #[error("f is not a fuzzy right ideal")]
    NotRightIdeal,
    #[error("g is not a fuzzy left ideal")]
    NotLeftIdeal,
}

/// Whether `f ∧ g = f ∘ g` for a fuzzy right ideal `f` and fuzzy left ideal
/// `g` of a regular hypersemigroup. Unmet hypotheses are errors, not `false`.
pub fn check_meet_identity(
    h: &HyperOp,
    f: &FuzzySubset,
    g: &FuzzySubset,
) -> Result<bool, MeetIdentityError> {
    h.require_hypersemigroup()?;
    let regular = definitional_unchecked(h, RegularityClass::Regular);
    if let Some(a) = regular.failing_element() {
        return Err(MeetIdentityError::NotRegular(a));
    }
    if !is_fuzzy_right_ideal(h, f)? {
        return Err(MeetIdentityError::NotRightIdeal);
    }
    if !is_fuzzy_left_ideal(h, g)? {
        return Err(MeetIdentityError::NotLeftIdeal);
    }
    Ok(f.meet(g)? == compose(h, f, g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FuzzyValue;
    use crate::hyperop::Carrier;

    fn fs(s: &str) -> FuzzySubset {
        s.parse().unwrap()
    }

    #[test]
    fn constants_are_two_sided_ideals() {
        let h = HyperOp::from_fn(3, |a, b| [a, (a + b) % 3].into_iter().collect()).unwrap();
        let c = Carrier::new(3).unwrap();
        for f in [FuzzySubset::one(c), FuzzySubset::zeros(c)] {
            assert!(is_fuzzy_right_ideal(&h, &f).unwrap());
            assert!(is_fuzzy_left_ideal(&h, &f).unwrap());
        }
    }

    #[test]
    fn ideal_examples() {
        let lz = HyperOp::left_zero(2).unwrap();
        assert!(is_fuzzy_right_ideal(&lz, &fs("1/2,1")).unwrap());
        assert!(!is_fuzzy_left_ideal(&lz, &fs("0,1")).unwrap());
        let constant = HyperOp::constant(2, 0).unwrap();
        assert!(is_fuzzy_left_ideal(&constant, &fs("1,0")).unwrap());
        assert!(is_fuzzy_right_ideal(&lz, &fs("1,0,0")).is_err());
    }

    #[test]
    fn closures_fix_ideals_and_zero() {
        let lz = HyperOp::left_zero(2).unwrap();
        let f = fs("1/2,1");
        assert_eq!(right_ideal_closure(&lz, &f).unwrap(), f);
        let zero = FuzzySubset::zeros(lz.carrier());
        assert_eq!(right_ideal_closure(&lz, &zero).unwrap(), zero);
        assert_eq!(left_ideal_closure(&lz, &zero).unwrap(), zero);
        // In a left-zero table every fuzzy subset is a right ideal, and a left
        // ideal must be constant.
        let g = left_ideal_closure(&lz, &fs("0,1")).unwrap();
        assert_eq!(g, fs("1,1"));
    }

    #[test]
    fn closure_on_constant_table_raises_the_absorbing_element() {
        let h = HyperOp::constant(3, 2).unwrap();
        let f = fs("1/3,1/2,0");
        let r = right_ideal_closure(&h, &f).unwrap();
        assert_eq!(r, fs("1/3,1/2,1/2"));
        assert!(is_fuzzy_right_ideal(&h, &r).unwrap());
        assert!(f.leq(&r).unwrap());
    }

    #[test]
    fn meet_identity_on_full_table() {
        let h = HyperOp::full(2).unwrap();
        let one = FuzzySubset::one(h.carrier());
        assert_eq!(check_meet_identity(&h, &one, &one), Ok(true));
        let zero = FuzzySubset::zeros(h.carrier());
        assert_eq!(check_meet_identity(&h, &zero, &zero), Ok(true));
        assert_eq!(compose(&h, &one, &one).unwrap().get(0), FuzzyValue::ONE);
    }

    #[test]
    fn meet_identity_preconditions() {
        let constant = HyperOp::constant(2, 0).unwrap();
        let one = FuzzySubset::one(constant.carrier());
        assert_eq!(
            check_meet_identity(&constant, &one, &one),
            Err(MeetIdentityError::NotRegular(1))
        );
        let lz = HyperOp::left_zero(2).unwrap();
        assert_eq!(
            check_meet_identity(&lz, &one, &fs("0,1")),
            Err(MeetIdentityError::NotLeftIdeal)
        );
        let rz = HyperOp::right_zero(2).unwrap();
        assert_eq!(
            check_meet_identity(&rz, &fs("0,1"), &one),
            Err(MeetIdentityError::NotRightIdeal)
        );
        let nonassoc = HyperOp::from_fn(2, |a, b| {
            crate::hyperop::ElementSet::singleton(if a == 0 && b == 0 { 1 } else { 0 })
        })
        .unwrap();
        assert!(matches!(
            check_meet_identity(&nonassoc, &one, &one),
            Err(MeetIdentityError::Input(Error::NotHypersemigroup(..)))
        ));
    }
}
