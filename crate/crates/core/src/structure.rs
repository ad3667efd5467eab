//! Closed and inseparable subsets of a polymatroid.
//!
//! A nonempty `A` is closed when every proper superset has strictly larger
//! rank, and inseparable when no split `A = A1 ⊔ A2` into nonempty parts
//! has `rho(A) = rho(A1) + rho(A2)`. The closed inseparable sets index the
//! height one primes containing `t`, and hence the generators of the class
//! group.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::foundation::{all_subsets, GroundSubset};
use crate::rank_engine::{Polymatroid, Rank};

/// Default cap on the ground set size for exhaustive subset enumeration.
pub const DEFAULT_MAX_N: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyMember {
    pub set: GroundSubset,
    pub rank: Rank,
}

impl FamilyMember {
    pub fn cardinality(&self) -> usize {
        self.set.len()
    }
}

/// The closed inseparable subsets of a polymatroid with their ranks, ordered
/// by bitmask value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedInseparableFamily {
    n: usize,
    members: Vec<FamilyMember>,
}

impl ClosedInseparableFamily {
    /// Builds a family from explicit members; they are sorted and must be
    /// distinct, nonempty subsets of `[n]` with positive rank.
    pub fn from_members(n: usize, mut members: Vec<FamilyMember>) -> Result<Self> {
        members.sort();
        for w in members.windows(2) {
            if w[0].set == w[1].set {
                return Err(Error::usage(format!("duplicate family member {}", w[0].set)));
            }
        }
        if let Some(m) = members
            .iter()
            .find(|m| m.set.is_empty() || !m.set.fits(n) || m.rank == 0)
        {
            return Err(Error::usage(format!(
                "invalid family member {} with rank {}",
                m.set, m.rank
            )));
        }
        Ok(ClosedInseparableFamily { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rank_of(&self, set: GroundSubset) -> Option<Rank> {
        self.members
            .binary_search_by_key(&set, |m| m.set)
            .ok()
            .map(|k| self.members[k].rank)
    }
}

fn check_candidate(p: &Polymatroid, a: GroundSubset) -> Result<()> {
    if a.is_empty() {
        return Err(Error::usage("closedness and separability need a nonempty set"));
    }
    if !a.fits(p.n()) {
        return Err(Error::usage(format!("{a} is not a subset of [{}]", p.n())));
    }
    Ok(())
}

/// Whether `rho(A) < rho(B)` for every `B ⊋ A`.
///
/// By monotonicity it suffices to add one element at a time.
pub fn is_closed(p: &Polymatroid, a: GroundSubset) -> Result<bool> {
    check_candidate(p, a)?;
    Ok(closed_unchecked(p, a))
}

fn closed_unchecked(p: &Polymatroid, a: GroundSubset) -> bool {
    let r = p.rank_of(a);
    a.complement(p.n()).elements().all(|j| r < p.rank_of(a.with(j)))
}

/// Whether no bipartition of `A` is additive for `rho`.
pub fn is_inseparable(p: &Polymatroid, a: GroundSubset) -> Result<bool> {
    check_candidate(p, a)?;
    Ok(inseparable_unchecked(p, a))
}

fn inseparable_unchecked(p: &Polymatroid, a: GroundSubset) -> bool {
    let Some(first) = a.min_element() else {
        return false;
    };
    let r = p.rank_of(a);
    let rest = a.without(first);
    // parts containing min(A); the complement part must be nonempty
    rest.subsets()
        .filter(|&s| s != rest)
        .all(|s| {
            let part = s.with(first);
            p.rank_of(part) + p.rank_of(a.difference(part)) != r
        })
}

/// All nonempty closed inseparable subsets of `[n]`.
pub fn closed_inseparable_family(p: &Polymatroid, max_n: usize) -> Result<ClosedInseparableFamily> {
    let n = p.n();
    if n > max_n {
        return Err(Error::resource(format!(
            "ground set size {n} exceeds the enumeration cap of {max_n}"
        )));
    }
    let mut candidates: Vec<GroundSubset> = all_subsets(n).skip(1).collect();
    candidates.sort_by_key(|s| (s.len(), s.bits()));
    let mut members: Vec<FamilyMember> = candidates
        .into_par_iter()
        .filter(|&a| closed_unchecked(p, a) && inseparable_unchecked(p, a))
        .map(|set| FamilyMember { set, rank: p.rank_of(set) })
        .collect();
    members.sort();
    Ok(ClosedInseparableFamily { n, members })
}
