//! Named families of polymatroids and their closed-form class groups.
//!
//! Every analyzer here returns a [`ClosedForm`] prediction that can be
//! checked against the generic engine: instantiate the polymatroid, run
//! [`closed_inseparable_family`](crate::structure::closed_inseparable_family)
//! and compare.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::ToPrimitive;

use crate::divisor::{class_group, is_gorenstein};
use crate::error::{Error, Result};
use crate::foundation::{all_subsets, quotient_by_relation, GroundSubset, GroupInvariants};
use crate::rank_engine::{Polymatroid, Rank, EAGER_TABLE_LIMIT};
use crate::structure::{closed_inseparable_family, ClosedInseparableFamily, FamilyMember};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Gorenstein { a: u64 },
    NotGorenstein,
}

impl From<Option<u64>> for Verdict {
    fn from(a: Option<u64>) -> Self {
        match a {
            Some(a) => Verdict::Gorenstein { a },
            None => Verdict::NotGorenstein,
        }
    }
}

impl Verdict {
    pub fn is_gorenstein(self) -> bool {
        matches!(self, Verdict::Gorenstein { .. })
    }
}

/// Predicted closed inseparable family, class group and (when known)
/// Gorenstein verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    /// Sorted by set.
    pub members: Vec<FamilyMember>,
    pub invariants: GroupInvariants,
    pub gorenstein: Option<Verdict>,
}

impl ClosedForm {
    fn new(mut members: Vec<FamilyMember>, invariants: GroupInvariants, gorenstein: Option<Verdict>) -> Self {
        members.sort();
        ClosedForm { members, invariants, gorenstein }
    }

    /// Set equality of `(A, rho(A))` pairs with a computed family.
    pub fn matches_family(&self, family: &ClosedInseparableFamily) -> bool {
        self.members == family.members()
    }
}

/// `(A_1, ..., A_s)` of nonempty subsets covering `[n]`; repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalFamily {
    n: usize,
    sets: Vec<GroundSubset>,
}

impl TransversalFamily {
    pub fn new(n: usize, sets: Vec<GroundSubset>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::usage("a transversal presentation needs at least one set"));
        }
        if let Some(s) = sets.iter().find(|s| s.is_empty() || !s.fits(n)) {
            return Err(Error::usage(format!("{s} is not a nonempty subset of [{n}]")));
        }
        let union = sets.iter().fold(GroundSubset::EMPTY, |acc, s| acc.union(*s));
        if union != GroundSubset::full(n) {
            return Err(Error::usage(format!("the sets cover {union}, not all of [{n}]")));
        }
        Ok(TransversalFamily { n, sets })
    }

    /// All `i`-subsets of `[n]`.
    pub fn uniform(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n || n > EAGER_TABLE_LIMIT {
            return Err(Error::usage(format!("no uniform family for n = {n}, i = {i}")));
        }
        Self::new(n, all_subsets(n).filter(|s| s.len() == i).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[GroundSubset] {
        &self.sets
    }

    pub fn multiplicities(&self) -> BTreeMap<GroundSubset, usize> {
        let mut counts = BTreeMap::new();
        for s in &self.sets {
            *counts.entry(*s).or_insert(0) += 1;
        }
        counts
    }

    pub fn polymatroid(&self) -> Result<Polymatroid> {
        Polymatroid::transversal(self.n, self.sets.clone())
    }
}

/// `1 < i < n`: the family is every `X` with `1 <= |X| <= n - i` together
/// with `[n]`, `rho(X) = C(n,i) - C(n-|X|,i)`, and the class group is free
/// of rank `r - 1`.
pub fn uniform_transversal_analysis(n: usize, i: usize) -> Result<ClosedForm> {
    if !(1 < i && i < n) {
        return Err(Error::usage(format!("need 1 < i < n, got n = {n}, i = {i}")));
    }
    if n > EAGER_TABLE_LIMIT {
        return Err(Error::resource(format!("n = {n} is too large to list the family")));
    }
    let choose = |a: usize, b: usize| binomial(BigInt::from(a), BigInt::from(b));
    let total = choose(n, i);
    let to_rank = |x: BigInt| {
        x.to_u64()
            .ok_or_else(|| Error::resource("rank does not fit in 64 bits"))
    };
    let mut members = Vec::new();
    for x in all_subsets(n).filter(|x| (1..=n - i).contains(&x.len())) {
        let rank = to_rank(&total - choose(n - x.len(), i))?;
        members.push(FamilyMember { set: x, rank });
    }
    members.push(FamilyMember { set: GroundSubset::full(n), rank: to_rank(total)? });
    let r: BigInt = (1..=n - i).map(|k| choose(n, k)).sum::<BigInt>() + 1;
    let free_rank = (r - BigInt::from(1))
        .to_usize()
        .ok_or_else(|| Error::resource("class group rank too large"))?;
    Ok(ClosedForm::new(members, GroupInvariants::new(free_rank, 1), None))
}

fn check_chain(n: usize, chain: &[(GroundSubset, u64)]) -> Result<()> {
    let Some(&(last, _)) = chain.last() else {
        return Err(Error::usage("empty chain"));
    };
    if n == 0 || n > EAGER_TABLE_LIMIT {
        return Err(Error::usage(format!("unsupported ground set size {n}")));
    }
    if last != GroundSubset::full(n) {
        return Err(Error::usage(format!("the chain must end with [{n}], not {last}")));
    }
    if chain[0].0.is_empty() {
        return Err(Error::usage("the chain must start with a nonempty set"));
    }
    for w in chain.windows(2) {
        if !(w[0].0.is_subset_of(w[1].0) && w[0].0 != w[1].0) {
            return Err(Error::usage(format!("{} is not strictly inside {}", w[0].0, w[1].0)));
        }
    }
    if chain.iter().any(|&(_, k)| k == 0) {
        return Err(Error::usage("multiplicities must be positive"));
    }
    Ok(())
}

/// Transversal presentation repeating `A_i` exactly `k_i` times.
pub fn nested_chain_family(n: usize, chain: &[(GroundSubset, u64)]) -> Result<TransversalFamily> {
    check_chain(n, chain)?;
    let sets = chain
        .iter()
        .flat_map(|&(a, k)| std::iter::repeat(a).take(k as usize))
        .collect();
    TransversalFamily::new(n, sets)
}

/// `A_1 ⊊ ... ⊊ A_r = [n]` with multiplicities `k_i`: the family is `[n]`
/// and the complements `[n] \ A_i`, and `Cl = Z^(r-1) ⊕ Z/gcd(k)`.
pub fn nested_chain_analysis(n: usize, chain: &[(GroundSubset, u64)]) -> Result<ClosedForm> {
    check_chain(n, chain)?;
    let full = GroundSubset::full(n);
    let r = chain.len();
    let mut members = vec![FamilyMember {
        set: full,
        rank: chain.iter().map(|&(_, k)| k).sum(),
    }];
    for i in 0..r - 1 {
        members.push(FamilyMember {
            set: full.difference(chain[i].0),
            rank: chain[i + 1..].iter().map(|&(_, k)| k).sum(),
        });
    }
    let d = chain.iter().fold(0u64, |acc, &(_, k)| acc.gcd(&k));
    Ok(ClosedForm::new(members, GroupInvariants::new(r - 1, d), None))
}

/// Shapes of transversal presentations with a known class group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Every set is `[n]`: `Cl = Z/sZ`.
    UniqueMember { s: usize },
    /// Every set is `B` or `C` with `[n] = B ⊔ C`, `q` copies of `B`.
    TwoMembersPartition { b: GroundSubset, c: GroundSubset, q: usize, s: usize },
    /// Every set is a proper `A` or `[n]`, `q` copies of `A`.
    TwoMembersNested { a: GroundSubset, q: usize, s: usize },
    /// Some `A_index` is not covered by the other sets, so `Cl` is free.
    TorsionFreeWitness { index: usize },
    Generic,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::UniqueMember { .. } => "unique-member",
            Classification::TwoMembersPartition { .. } => "two-members-partition",
            Classification::TwoMembersNested { .. } => "two-members-nested",
            Classification::TorsionFreeWitness { .. } => "torsion-free-witness",
            Classification::Generic => "generic",
        }
    }

    /// Full class group when a closed form applies.
    pub fn predicted(&self) -> Option<GroupInvariants> {
        match *self {
            Classification::UniqueMember { s } => Some(GroupInvariants::new(0, s as u64)),
            Classification::TwoMembersPartition { q, s, .. }
            | Classification::TwoMembersNested { q, s, .. } => {
                Some(GroupInvariants::new(1, q.gcd(&(s - q)) as u64))
            }
            _ => None,
        }
    }

    /// Torsion order when it is determined.
    pub fn predicted_torsion(&self) -> Option<BigInt> {
        match self {
            Classification::TorsionFreeWitness { .. } => Some(BigInt::from(1)),
            other => other.predicted().map(|g| g.torsion),
        }
    }
}

pub fn classify_transversal(t: &TransversalFamily) -> Classification {
    let full = GroundSubset::full(t.n());
    let s = t.sets().len();
    let counts = t.multiplicities();
    let distinct: Vec<(GroundSubset, usize)> = counts.into_iter().collect();
    if distinct.len() == 1 && distinct[0].0 == full {
        return Classification::UniqueMember { s };
    }
    if distinct.len() == 2 {
        let (x, qx) = distinct[0];
        let (y, qy) = distinct[1];
        if x.is_disjoint(y) && x.union(y) == full {
            return Classification::TwoMembersPartition { b: x, c: y, q: qx, s };
        }
        if y == full {
            return Classification::TwoMembersNested { a: x, q: qx, s };
        }
        if x == full {
            return Classification::TwoMembersNested { a: y, q: qy, s };
        }
    }
    for (index, a) in t.sets().iter().enumerate() {
        let others = t
            .sets()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != index)
            .fold(GroundSubset::EMPTY, |acc, (_, b)| acc.union(*b));
        if !a.is_subset_of(others) {
            return Classification::TorsionFreeWitness { index };
        }
    }
    Classification::Generic
}

/// Transversal family of the complements of the edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphComplementPrediction {
    pub family: TransversalFamily,
    pub leaves: usize,
    /// Edges that are not vertex covers.
    pub non_cover_edges: usize,
    pub predicted_free_rank: usize,
}

/// `A_k = [n] \ e_k` for the edges `e_k` of a connected non-star graph on
/// `[n]`, `n >= 3`. Edges use 1-based vertex labels. The class group is
/// predicted free of rank `n - l + m` (`l` leaves, `m` edges that are not
/// vertex covers), and of rank 2 when `n = 3`.
pub fn graph_complement_family(n: usize, edges: &[(usize, usize)]) -> Result<GraphComplementPrediction> {
    if n < 3 || n > EAGER_TABLE_LIMIT {
        return Err(Error::usage(format!("need 3 <= n <= {EAGER_TABLE_LIMIT}, got {n}")));
    }
    let mut edge_sets = Vec::new();
    for &(u, v) in edges {
        if u == v {
            return Err(Error::usage(format!("loop at vertex {u}")));
        }
        let e = GroundSubset::from_one_based(&[u, v], n)?;
        if edge_sets.contains(&e) {
            return Err(Error::usage(format!("repeated edge {e}")));
        }
        edge_sets.push(e);
    }
    // connectivity by closure from vertex 0
    let mut reached = GroundSubset::singleton(0);
    loop {
        let grown = edge_sets
            .iter()
            .filter(|e| !e.is_disjoint(reached))
            .fold(reached, |acc, e| acc.union(*e));
        if grown == reached {
            break;
        }
        reached = grown;
    }
    if reached != GroundSubset::full(n) {
        return Err(Error::usage("the graph is not connected"));
    }
    let common = edge_sets
        .iter()
        .fold(GroundSubset::full(n), |acc, e| acc.intersection(*e));
    if !common.is_empty() {
        return Err(Error::usage("the graph is a star"));
    }
    let degree = |v: usize| edge_sets.iter().filter(|e| e.contains(v)).count();
    let leaves = (0..n).filter(|&v| degree(v) == 1).count();
    let non_cover_edges = edge_sets
        .iter()
        .filter(|e| edge_sets.iter().any(|f| f.is_disjoint(**e)))
        .count();
    let predicted_free_rank = if n == 3 { 2 } else { n - leaves + non_cover_edges };
    let family = TransversalFamily::new(
        n,
        edge_sets.iter().map(|e| e.complement(n)).collect(),
    )?;
    Ok(GraphComplementPrediction { family, leaves, non_cover_edges, predicted_free_rank })
}

/// Bounds `1 <= s_1 <= ... <= s_n <= d` with `d < sum s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseParams {
    s: Vec<Rank>,
    d: Rank,
}

impl VeroneseParams {
    pub fn new(s: Vec<Rank>, d: Rank) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::usage("empty bound vector"));
        }
        if s[0] < 1 || s.windows(2).any(|w| w[0] > w[1]) || *s.last().unwrap() > d {
            return Err(Error::usage("need 1 <= s_1 <= ... <= s_n <= d"));
        }
        if d >= s.iter().sum::<Rank>() {
            return Err(Error::usage("need d < s_1 + ... + s_n"));
        }
        Ok(VeroneseParams { s, d })
    }

    pub fn s(&self) -> &[Rank] {
        &self.s
    }

    pub fn d(&self) -> Rank {
        self.d
    }

    pub fn polymatroid(&self) -> Result<Polymatroid> {
        Polymatroid::veronese(self.s.clone(), self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseAnalysis {
    pub prediction: ClosedForm,
    /// Set when `s_n = d` and the generic engine produced the result.
    pub deferred: Option<String>,
}

/// Closed form for `s_n < d`: the family is the singletons (rank `s_i`) and
/// `[n]` (rank `d`); Gorenstein iff every `s_i = 2` and `n = d - 1 >= 2`, or
/// every `s_i = 1` and `n = 2d - 1 >= 3`. When `s_n = d` the singleton `{n}`
/// is not closed and the generic engine is used instead.
pub fn veronese_analysis(v: &VeroneseParams, max_n: usize) -> Result<VeroneseAnalysis> {
    let n = v.s.len();
    if *v.s.last().unwrap() == v.d {
        let p = v.polymatroid()?;
        let family = closed_inseparable_family(&p, max_n)?;
        let invariants = class_group(&family)?.invariants;
        let verdict = Verdict::from(is_gorenstein(&family));
        return Ok(VeroneseAnalysis {
            prediction: ClosedForm::new(family.members().to_vec(), invariants, Some(verdict)),
            deferred: Some(format!(
                "s_n = d = {}: singleton {{{n}}} is not closed, closed form does not apply",
                v.d
            )),
        });
    }
    let mut members: Vec<FamilyMember> = v
        .s
        .iter()
        .enumerate()
        .map(|(i, &r)| FamilyMember { set: GroundSubset::singleton(i), rank: r })
        .collect();
    members.push(FamilyMember { set: GroundSubset::full(n), rank: v.d });
    let relation: Vec<BigInt> = members.iter().map(|m| BigInt::from(m.rank)).collect();
    let invariants = quotient_by_relation(relation.len(), &relation)?;
    let n64 = n as u64;
    let verdict = if v.s.iter().all(|&x| x == 2) && n64 + 1 == v.d && n >= 2 {
        Verdict::Gorenstein { a: 1 }
    } else if v.s.iter().all(|&x| x == 1) && n64 + 1 == 2 * v.d && n >= 3 {
        Verdict::Gorenstein { a: 2 }
    } else {
        Verdict::NotGorenstein
    };
    Ok(VeroneseAnalysis {
        prediction: ClosedForm::new(members, invariants, Some(verdict)),
        deferred: None,
    })
}

/// `{w : w <= v}`: the family is the singletons with `rho({i}) = v_i`,
/// `Cl = Z^(n-1) ⊕ Z/gcd(v)`, Gorenstein iff all `v_i` are equal and at most 2.
pub fn box_analysis(v: &[Rank]) -> Result<ClosedForm> {
    if v.is_empty() || v.contains(&0) || v.len() > EAGER_TABLE_LIMIT {
        return Err(Error::usage("box bounds must be positive"));
    }
    let members = v
        .iter()
        .enumerate()
        .map(|(i, &r)| FamilyMember { set: GroundSubset::singleton(i), rank: r })
        .collect();
    let d = v.iter().fold(0u64, |acc, x| acc.gcd(x));
    let verdict = if v.iter().all(|&x| x == v[0]) && v[0] <= 2 {
        Verdict::Gorenstein { a: 2 / v[0] }
    } else {
        Verdict::NotGorenstein
    };
    Ok(ClosedForm::new(members, GroupInvariants::new(v.len() - 1, d), Some(verdict)))
}

/// `{v : |v| <= d}`: only `[n]` with rank `d`, `Cl = Z/dZ`, Gorenstein iff
/// `d` divides `n + 1`.
pub fn rank_bounded_analysis(n: usize, d: Rank) -> Result<ClosedForm> {
    if n == 0 || d == 0 || n > EAGER_TABLE_LIMIT {
        return Err(Error::usage("need n >= 1 and d >= 1"));
    }
    let members = vec![FamilyMember { set: GroundSubset::full(n), rank: d }];
    let n1 = n as u64 + 1;
    let verdict = if n1 % d == 0 {
        Verdict::Gorenstein { a: n1 / d }
    } else {
        Verdict::NotGorenstein
    };
    Ok(ClosedForm::new(members, GroupInvariants::new(0, d), Some(verdict)))
}

/// The polymatroid `{v : |v| <= d}` on `[n]`.
pub fn rank_bounded_polymatroid(n: usize, d: Rank) -> Result<Polymatroid> {
    Polymatroid::veronese(vec![d; n], d)
}
