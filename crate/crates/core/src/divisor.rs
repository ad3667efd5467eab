//! Divisor class group presentations, canonical classes and the Gorenstein
//! test.
//!
//! The class group is always presented as `Z^r` modulo one relation vector,
//! with one generator per height one prime containing `t`. A
//! [`DivisorClass`] is a coordinate vector in that presentation; two vectors
//! give the same class exactly when their difference is an integer multiple
//! of the relation.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::foundation::{all_subsets, quotient_by_relation, GroundSubset, GroupInvariants};
use crate::rank_engine::{Polymatroid, Representation};
use crate::structure::ClosedInseparableFamily;

/// Generator label of the prime `P_A`.
pub fn label_for(set: GroundSubset) -> String {
    format!("P_{set}")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorPresentation {
    pub labels: Vec<String>,
    pub relation: Vec<BigInt>,
    pub invariants: GroupInvariants,
}

impl DivisorPresentation {
    pub fn new(labels: Vec<String>, relation: Vec<BigInt>) -> Result<Self> {
        if labels.len() != relation.len() {
            return Err(Error::usage("labels and relation differ in length"));
        }
        let invariants = quotient_by_relation(relation.len(), &relation)?;
        Ok(DivisorPresentation { labels, relation, invariants })
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.relation.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A divisor class in a fixed presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    presentation: Arc<DivisorPresentation>,
    coords: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(presentation: Arc<DivisorPresentation>, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != presentation.rank() {
            return Err(Error::usage(format!(
                "class has {} coordinates, presentation has {} generators",
                coords.len(),
                presentation.rank()
            )));
        }
        Ok(DivisorClass { presentation, coords })
    }

    pub fn zero(presentation: Arc<DivisorPresentation>) -> Self {
        let coords = vec![BigInt::zero(); presentation.rank()];
        DivisorClass { presentation, coords }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn presentation(&self) -> &Arc<DivisorPresentation> {
        &self.presentation
    }

    pub fn is_zero(&self) -> bool {
        self.equals(&DivisorClass::zero(self.presentation.clone()))
            .expect("same presentation")
    }

    /// `self + k * relation`, which is the same class.
    pub fn shifted(&self, k: &BigInt) -> DivisorClass {
        let coords = self
            .coords
            .iter()
            .zip(&self.presentation.relation)
            .map(|(c, a)| c + k * a)
            .collect();
        DivisorClass { presentation: self.presentation.clone(), coords }
    }

    pub fn equals(&self, other: &DivisorClass) -> Result<bool> {
        classes_equal(self, other)
    }

    /// Re-expresses this class in `target`, matching generators by label.
    /// The two presentations must carry the same labels and relation up to
    /// order.
    pub fn transport(&self, target: &Arc<DivisorPresentation>) -> Result<DivisorClass> {
        let src = &self.presentation;
        if src.rank() != target.rank() {
            return Err(Error::usage("presentations have different numbers of generators"));
        }
        let mut coords = vec![BigInt::zero(); target.rank()];
        for (k, label) in src.labels.iter().enumerate() {
            let j = target
                .index_of(label)
                .ok_or_else(|| Error::usage(format!("generator {label} missing in target")))?;
            if target.relation[j] != src.relation[k] {
                return Err(Error::usage(format!(
                    "generator {label} has relation entry {} vs {}",
                    src.relation[k], target.relation[j]
                )));
            }
            coords[j] = self.coords[k].clone();
        }
        Ok(DivisorClass { presentation: target.clone(), coords })
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .zip(&self.presentation.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{c}[{l}]"))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `Cl(R)` generated by `[P_A]`, `A` in the family, with the single relation
/// `sum rho(A) [P_A] = 0`.
pub fn class_group(family: &ClosedInseparableFamily) -> Result<DivisorPresentation> {
    if family.is_empty() {
        return Err(Error::Internal("empty closed inseparable family".into()));
    }
    let labels = family.members().iter().map(|m| label_for(m.set)).collect();
    let relation = family.members().iter().map(|m| BigInt::from(m.rank)).collect();
    DivisorPresentation::new(labels, relation)
}

/// The canonical class `sum (|A| + 1) [P_A]`.
pub fn canonical_class(family: &ClosedInseparableFamily) -> Result<DivisorClass> {
    let presentation = Arc::new(class_group(family)?);
    let coords = family
        .members()
        .iter()
        .map(|m| BigInt::from(m.cardinality() + 1))
        .collect();
    DivisorClass::new(presentation, coords)
}

/// Whether `x - y` is an integer multiple of the relation.
pub fn classes_equal(x: &DivisorClass, y: &DivisorClass) -> Result<bool> {
    if !Arc::ptr_eq(&x.presentation, &y.presentation) && x.presentation != y.presentation {
        return Err(Error::usage("classes live in different presentations"));
    }
    let diff: Vec<BigInt> = x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect();
    let relation = &x.presentation.relation;
    let Some(k) = relation.iter().position(|a| !a.is_zero()) else {
        return Ok(diff.iter().all(Zero::is_zero));
    };
    let (lambda, rem) = diff[k].div_rem(&relation[k]);
    if !rem.is_zero() {
        return Ok(false);
    }
    Ok(diff.iter().zip(relation).all(|(d, a)| *d == &lambda * a))
}

/// The integer `a` with `|A| + 1 = a rho(A)` for every member, if it exists.
pub fn is_gorenstein(family: &ClosedInseparableFamily) -> Option<u64> {
    let first = family.members().first()?;
    let size = first.cardinality() as u64 + 1;
    if size % first.rank != 0 {
        return None;
    }
    let a = size / first.rank;
    let ratio = family
        .members()
        .iter()
        .all(|m| m.cardinality() as u64 + 1 == a * m.rank)
        .then_some(a);
    debug_assert_eq!(ratio.is_some(), canonical_is_zero(family).unwrap_or(false));
    ratio
}

/// Gorenstein test through the class group: the canonical class vanishes.
pub fn canonical_is_zero(family: &ClosedInseparableFamily) -> Result<bool> {
    Ok(canonical_class(family)?.is_zero())
}

/// The graph whose edges are the independent 2-subsets of a matroid, with
/// its maximal independent sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnmixedReport {
    /// 0-based vertex pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
    pub maximal_independent_sets: Vec<GroundSubset>,
    pub unmixed: bool,
}

/// Necessary condition for a matroid base ring to be Gorenstein: the graph
/// of independent 2-subsets must be unmixed.
pub fn matroid_unmixed_check(m: &Polymatroid, max_n: usize) -> Result<UnmixedReport> {
    let Representation::MatroidBases(bases) = m.representation() else {
        return Err(Error::usage("unmixedness check needs a matroid given by its bases"));
    };
    let n = m.n();
    if n > max_n {
        return Err(Error::resource(format!(
            "ground set size {n} exceeds the enumeration cap of {max_n}"
        )));
    }
    let mut edges = Vec::new();
    let mut neighbours = vec![GroundSubset::EMPTY; n];
    for i in 0..n {
        for j in i + 1..n {
            let pair = GroundSubset::singleton(i).with(j);
            if bases.iter().any(|b| pair.is_subset_of(*b)) {
                edges.push((i, j));
                neighbours[i] = neighbours[i].with(j);
                neighbours[j] = neighbours[j].with(i);
            }
        }
    }
    let independent = |s: GroundSubset| s.elements().all(|i| neighbours[i].is_disjoint(s));
    let maximal_independent_sets: Vec<GroundSubset> = all_subsets(n)
        .filter(|&s| independent(s))
        .filter(|&s| {
            s.complement(n)
                .elements()
                .all(|v| !neighbours[v].is_disjoint(s))
        })
        .collect();
    let unmixed = maximal_independent_sets
        .windows(2)
        .all(|w| w[0].len() == w[1].len());
    Ok(UnmixedReport { edges, maximal_independent_sets, unmixed })
}
