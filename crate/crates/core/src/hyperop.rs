//! Finite carriers, hyperoperation tables and the induced product on subsets.
//!
//! Elements of an order-`n` carrier are the integers `0..n`. Subsets are
//! bitmasks, which is why the order is capped at [`MAX_ORDER`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported carrier order.
pub const MAX_ORDER: usize = 16;

/// The carrier `{0, .., order - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Carrier {
    order: usize,
}

impl Carrier {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Carrier { order })
    }

    pub fn order(self) -> usize {
        self.order
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The whole carrier as a subset.
    pub fn full(self) -> ElementSet {
        ElementSet::from_bits_unchecked(low_mask(self.order))
    }

    pub fn check_element(self, element: usize) -> Result<()> {
        if element < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element,
                order: self.order,
            })
        }
    }

    pub fn check_set(self, set: ElementSet) -> Result<()> {
        if set.bits() & !low_mask(self.order) == 0 {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                bits: set.bits(),
                order: self.order,
            })
        }
    }

    /// All `2^n - 1` nonempty subsets in ascending bitmask order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = ElementSet> + Clone {
        (1..=low_mask(self.order)).map(ElementSet::from_bits_unchecked)
    }

    /// Number of nonempty subsets, `2^n - 1`.
    pub fn nonempty_subset_count(self) -> u32 {
        low_mask(self.order)
    }
}

impl TryFrom<usize> for Carrier {
    type Error = Error;

    fn try_from(order: usize) -> Result<Self> {
        Carrier::new(order)
    }
}

impl From<Carrier> for usize {
    fn from(c: Carrier) -> usize {
        c.order
    }
}

fn low_mask(order: usize) -> u32 {
    ((1u64 << order) - 1) as u32
}

/// A subset of a carrier, stored as a bitmask (bit `i` set iff `i` is a member).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn singleton(element: usize) -> Self {
        assert!(element < MAX_ORDER, "element {element} exceeds MAX_ORDER");
        ElementSet(1 << element)
    }

    pub fn from_bits(bits: u32) -> Result<Self> {
        if bits >> MAX_ORDER != 0 {
            return Err(Error::SubsetOutOfRange {
                bits,
                order: MAX_ORDER,
            });
        }
        Ok(ElementSet(bits))
    }

    pub(crate) const fn from_bits_unchecked(bits: u32) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, element: usize) -> bool {
        element < MAX_ORDER && self.0 >> element & 1 == 1
    }

    pub fn insert(&mut self, element: usize) {
        *self = self.union(ElementSet::singleton(element));
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }
}

/// Ascending iterator over the members of an [`ElementSet`].
#[derive(Debug, Clone)]
pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let next = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(next)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(ElementSet::EMPTY, |s, e| s.union(ElementSet::singleton(e)))
    }
}

impl From<ElementSet> for Vec<usize> {
    fn from(s: ElementSet) -> Vec<usize> {
        s.iter().collect()
    }
}

impl From<Vec<usize>> for ElementSet {
    fn from(v: Vec<usize>) -> ElementSet {
        v.into_iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// A hyperoperation table: `cell(a, b)` is the nonempty set `a ∘ b`.
///
/// Tables are immutable once built. Rows are indexed by the left operand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperOp {
    carrier: Carrier,
    cells: Vec<ElementSet>,
}

impl HyperOp {
    /// Builds a table from its `n²` cells in row-major order.
    pub fn new(carrier: Carrier, cells: Vec<ElementSet>) -> Result<Self> {
        let n = carrier.order();
        if cells.len() != n * n {
            return Err(Error::CellCount {
                expected: n * n,
                actual: cells.len(),
            });
        }
        for (i, &cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::EmptyCell(i / n, i % n));
            }
            carrier.check_set(cell)?;
        }
        Ok(HyperOp { carrier, cells })
    }

    pub fn from_fn<F>(order: usize, mut cell: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> ElementSet,
    {
        let carrier = Carrier::new(order)?;
        let cells = carrier
            .elements()
            .flat_map(|a| carrier.elements().map(move |b| (a, b)))
            .map(|(a, b)| cell(a, b))
            .collect();
        HyperOp::new(carrier, cells)
    }

    /// `a ∘ b = {a}`.
    pub fn left_zero(order: usize) -> Result<Self> {
        HyperOp::from_fn(order, |a, _| ElementSet::singleton(a))
    }

    /// `a ∘ b = {b}`.
    pub fn right_zero(order: usize) -> Result<Self> {
        HyperOp::from_fn(order, |_, b| ElementSet::singleton(b))
    }

    /// Every product is `{value}`.
    pub fn constant(order: usize, value: usize) -> Result<Self> {
        Carrier::new(order)?.check_element(value)?;
        HyperOp::from_fn(order, |_, _| ElementSet::singleton(value))
    }

    /// Every product is the whole carrier.
    pub fn full(order: usize) -> Result<Self> {
        let all = Carrier::new(order)?.full();
        HyperOp::from_fn(order, |_, _| all)
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[ElementSet] {
        &self.cells
    }

    /// `a ∘ b`. Panics if either index is out of range; see
    /// [`hyper_product`](Self::hyper_product) for the checked form.
    #[inline]
    pub fn cell(&self, a: usize, b: usize) -> ElementSet {
        let n = self.order();
        assert!(a < n && b < n, "({a},{b}) out of range for order {n}");
        self.cells[a * n + b]
    }

    pub fn hyper_product(&self, a: usize, b: usize) -> Result<ElementSet> {
        self.carrier.check_element(a)?;
        self.carrier.check_element(b)?;
        Ok(self.cell(a, b))
    }

    /// `A * B`, the union of `a ∘ b` over `A × B`. Empty if either side is.
    pub fn set_product(&self, lhs: ElementSet, rhs: ElementSet) -> Result<ElementSet> {
        self.carrier.check_set(lhs)?;
        self.carrier.check_set(rhs)?;
        Ok(self.product(lhs, rhs))
    }

    /// Unchecked [`set_product`](Self::set_product); members outside the
    /// carrier panic.
    #[inline]
    pub fn product(&self, lhs: ElementSet, rhs: ElementSet) -> ElementSet {
        let n = self.order();
        let mut out = 0u32;
        for a in lhs {
            let row = &self.cells[a * n..a * n + n];
            for b in rhs {
                out |= row[b].bits();
            }
        }
        ElementSet::from_bits_unchecked(out)
    }

    /// Left-to-right fold of `*` over `factors`.
    pub fn n_fold_product(&self, factors: &[ElementSet]) -> Result<ElementSet> {
        let (first, rest) = factors.split_first().ok_or(Error::EmptyFactorList)?;
        self.carrier.check_set(*first)?;
        rest.iter().try_fold(*first, |acc, &f| self.set_product(acc, f))
    }

    /// First triple (in lexicographic order) where
    /// `(x ∘ y) * {z} != {x} * (y ∘ z)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.cell(x, y);
                for z in 0..n {
                    let left = self.product(xy, ElementSet::singleton(z));
                    let right = self.product(ElementSet::singleton(x), self.cell(y, z));
                    if left != right {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_hypersemigroup(&self) -> bool {
        self.associativity_failure().is_none()
    }

    pub fn require_hypersemigroup(&self) -> Result<()> {
        match self.associativity_failure() {
            None => Ok(()),
            Some((x, y, z)) => Err(Error::NotHypersemigroup(x, y, z)),
        }
    }
}

impl fmt::Display for HyperOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                if b > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.cell(a, b))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(members: &[usize]) -> ElementSet {
        members.iter().copied().collect()
    }

    #[test]
    fn carrier_rejects_zero_and_oversized_orders() {
        assert_eq!(Carrier::new(0), Err(Error::InvalidOrder(0)));
        assert!(Carrier::new(MAX_ORDER).is_ok());
        assert_eq!(
            Carrier::new(MAX_ORDER + 1),
            Err(Error::InvalidOrder(MAX_ORDER + 1))
        );
        assert_eq!(Carrier::new(MAX_ORDER).unwrap().full().len(), MAX_ORDER);
    }

    #[test]
    fn element_set_basics() {
        let s = set(&[2, 0, 2]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.len(), 2);
        assert!(s.contains(2) && !s.contains(1));
        assert!(set(&[0]).is_subset(s));
        assert!(!s.is_subset(set(&[0])));
        assert_eq!(s.to_string(), "{0,2}");
        assert_eq!(ElementSet::EMPTY.to_string(), "{}");
    }

    #[test]
    fn hyper_product_on_named_tables() {
        let lz = HyperOp::left_zero(2).unwrap();
        assert_eq!(lz.hyper_product(0, 1).unwrap(), set(&[0]));
        let full = HyperOp::full(2).unwrap();
        assert_eq!(full.hyper_product(1, 1).unwrap(), set(&[0, 1]));
        let constant = HyperOp::constant(2, 0).unwrap();
        assert_eq!(constant.hyper_product(1, 0).unwrap(), set(&[0]));
    }

    #[test]
    fn hyper_product_out_of_range() {
        let lz = HyperOp::left_zero(2).unwrap();
        assert_eq!(
            lz.hyper_product(2, 0),
            Err(Error::ElementOutOfRange {
                element: 2,
                order: 2
            })
        );
    }

    #[test]
    fn construction_rejects_empty_cells_and_bad_counts() {
        let c = Carrier::new(2).unwrap();
        let mut cells = vec![set(&[0]); 4];
        cells[1] = ElementSet::EMPTY;
        assert_eq!(HyperOp::new(c, cells), Err(Error::EmptyCell(0, 1)));
        assert_eq!(
            HyperOp::new(c, vec![set(&[0]); 3]),
            Err(Error::CellCount {
                expected: 4,
                actual: 3
            })
        );
        assert!(matches!(
            HyperOp::new(c, vec![set(&[2]); 4]),
            Err(Error::SubsetOutOfRange { .. })
        ));
    }

    #[test]
    fn set_product_examples() {
        let lz = HyperOp::left_zero(2).unwrap();
        assert_eq!(lz.set_product(set(&[0, 1]), set(&[0])).unwrap(), set(&[0, 1]));
        assert_eq!(
            lz.set_product(ElementSet::EMPTY, set(&[0, 1])).unwrap(),
            ElementSet::EMPTY
        );
        assert_eq!(
            lz.set_product(set(&[1]), ElementSet::EMPTY).unwrap(),
            ElementSet::EMPTY
        );
        assert!(lz.set_product(set(&[3]), set(&[0])).is_err());
    }

    #[test]
    fn singleton_products_reproduce_cells() {
        let h = HyperOp::from_fn(3, |a, b| set(&[(a + b) % 3, (a * b) % 3])).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(
                    h.set_product(ElementSet::singleton(a), ElementSet::singleton(b))
                        .unwrap(),
                    h.cell(a, b)
                );
            }
        }
    }

    #[test]
    fn n_fold_product_examples() {
        let lz = HyperOp::left_zero(2).unwrap();
        let a = set(&[1]);
        assert_eq!(lz.n_fold_product(&[a]).unwrap(), a);
        assert_eq!(
            lz.n_fold_product(&[set(&[0]), set(&[0, 1]), set(&[0])]).unwrap(),
            set(&[0])
        );
        let full = HyperOp::full(2).unwrap();
        assert_eq!(full.n_fold_product(&[a, a, a]).unwrap(), set(&[0, 1]));
        assert_eq!(lz.n_fold_product(&[]), Err(Error::EmptyFactorList));
    }

    #[test]
    fn associativity_on_named_tables() {
        assert!(HyperOp::constant(2, 0).unwrap().is_hypersemigroup());
        assert!(HyperOp::left_zero(3).unwrap().is_hypersemigroup());
        assert!(HyperOp::right_zero(3).unwrap().is_hypersemigroup());
        assert!(HyperOp::full(3).unwrap().is_hypersemigroup());
        // cell(0,0) = {1}, everything else {0}:
        // (0∘0)*{0} = {1}*{0} = {0} and {0}*(0∘0) = {0}*{1} = {0}, etc.
        let h = HyperOp::from_fn(2, |a, b| {
            if a == 0 && b == 0 {
                set(&[1])
            } else {
                set(&[0])
            }
        })
        .unwrap();
        // (0∘0)*{1} = {1}*{1} = {0}; {0}*(0∘1) = {0}*{0} = {1}.
        assert_eq!(h.associativity_failure(), Some((0, 0, 1)));
        assert!(matches!(
            h.require_hypersemigroup(),
            Err(Error::NotHypersemigroup(0, 0, 1))
        ));
    }
}
