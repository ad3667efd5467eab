//! Subset encoding, gcd arithmetic and the quotient of `Z^r` by a single
//! relation vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported ground set. Subsets are stored in a machine word.
pub const MAX_GROUND_SET: usize = 63;

/// A subset of the ground set `[n]`, stored as a bitmask.
///
/// Elements are 0-based internally; [`fmt::Display`] and
/// [`GroundSubset::to_one_based`] use the 1-based labels of `[n]`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSubset(u64);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    pub const fn from_bits(bits: u64) -> Self {
        GroundSubset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole ground set `[n]`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND_SET, "ground set size {n} exceeds {MAX_GROUND_SET}");
        GroundSubset((1u64 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_GROUND_SET);
        GroundSubset(1u64 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements
            .into_iter()
            .fold(GroundSubset::EMPTY, |acc, i| acc.with(i))
    }

    /// Builds a subset from 1-based labels, checking that each lies in `[n]`.
    pub fn from_one_based(labels: &[usize], n: usize) -> Result<Self> {
        let mut set = GroundSubset::EMPTY;
        for &label in labels {
            if label == 0 || label > n {
                return Err(Error::usage(format!(
                    "element {label} is outside the ground set [1..{n}]"
                )));
            }
            set = set.with(label - 1);
        }
        Ok(set)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        assert!(i < MAX_GROUND_SET);
        GroundSubset(self.0 | 1u64 << i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        GroundSubset(self.0 & !(1u64 << i))
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        GroundSubset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        GroundSubset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        GroundSubset(self.0 & !other.0)
    }

    /// Complement inside `[n]`.
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        GroundSubset::full(n).difference(self)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Whether every element lies in `[n]`.
    pub fn fits(self, n: usize) -> bool {
        n >= 64 || self.0 >> n == 0
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// 0-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.elements().map(|i| i + 1).collect()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = GroundSubset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full {
                None
            } else {
                Some((current.wrapping_sub(full)) & full)
            };
            Some(GroundSubset(current))
        })
    }
}

/// Every subset of `[n]`, in increasing bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = GroundSubset> {
    assert!(n <= MAX_GROUND_SET);
    (0..1u64 << n).map(GroundSubset)
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Greatest common divisor of the absolute values. The gcd of an all-zero
/// list is 0.
pub fn gcd_of(entries: &[BigInt]) -> Result<BigInt> {
    if entries.is_empty() {
        return Err(Error::usage("gcd of an empty list"));
    }
    Ok(entries
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x)))
}

/// The finitely generated abelian group `Z^free_rank ⊕ Z/torsion Z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupInvariants {
    pub free_rank: usize,
    /// `1` means no torsion. Never zero.
    pub torsion: BigInt,
}

impl GroupInvariants {
    pub fn new(free_rank: usize, torsion: impl Into<BigInt>) -> Self {
        let torsion = torsion.into();
        assert!(torsion.is_positive(), "torsion order must be positive");
        GroupInvariants { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_one()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_one()
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        if !self.torsion.is_one() {
            parts.push(format!("Z/{}Z", self.torsion));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Structure of `Z^r / Z·a`.
pub fn quotient_by_relation(r: usize, relation: &[BigInt]) -> Result<GroupInvariants> {
    if r == 0 {
        return Err(Error::usage("quotient of Z^0 requested"));
    }
    if relation.len() != r {
        return Err(Error::usage(format!(
            "relation has length {} but r = {r}",
            relation.len()
        )));
    }
    let d = gcd_of(relation)?;
    if d.is_zero() {
        Ok(GroupInvariants::new(r, 1))
    } else {
        Ok(GroupInvariants::new(r - 1, d))
    }
}
