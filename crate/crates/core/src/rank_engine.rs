//! Ground set rank functions of discrete polymatroids.
//!
//! A [`Polymatroid`] wraps one of several encodings of its rank function
//! (an explicit table, a transversal presentation, Veronese type, a box, the
//! bases of a matroid, or a generating point set) and evaluates it with a
//! memo. For `n <= 20` the whole table is materialized on construction;
//! larger ground sets fill a lock-protected cache lazily.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::foundation::{all_subsets, GroundSubset, MAX_GROUND_SET};

pub type Rank = u64;

/// Ground sets up to this size get an eagerly computed rank table.
pub const EAGER_TABLE_LIMIT: usize = 20;

/// Default cap on the number of lattice points enumerated.
pub const DEFAULT_POINT_CAP: usize = 1_000_000;

/// A point of `Z_+^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<u64>);

impl LatticeVector {
    pub fn new(coords: Vec<u64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        LatticeVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|v|`, the sum of all coordinates.
    pub fn norm(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `v(A)`, the sum of the coordinates indexed by `A`.
    pub fn sum_over(&self, a: GroundSubset) -> u64 {
        a.elements().filter(|&i| i < self.0.len()).map(|i| self.0[i]).sum()
    }

    /// Componentwise `self <= other`.
    pub fn is_below(&self, other: &LatticeVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// How the rank function of a [`Polymatroid`] is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Explicit values indexed by subset bitmask.
    RankTable(Vec<Rank>),
    /// `rho(X) = #{k : X meets A_k}`. Repeated sets are kept.
    Transversal(Vec<GroundSubset>),
    /// `rho(A) = min(sum_{i in A} s_i, d)`.
    Veronese { s: Vec<Rank>, d: Rank },
    /// `rho(A) = sum_{i in A} v_i`.
    Box(Vec<Rank>),
    /// `rho(A) = max |A ∩ F|` over the bases `F`.
    MatroidBases(Vec<GroundSubset>),
    /// `rho(A) = max v(A)` over the given points.
    PointSet(Vec<LatticeVector>),
}

enum Memo {
    Table(Vec<Rank>),
    Lazy(RwLock<HashMap<u64, Rank>>),
}

/// A discrete polymatroid on `[n]`, given by its ground set rank function.
pub struct Polymatroid {
    n: usize,
    repr: Representation,
    memo: Memo,
}

impl Clone for Polymatroid {
    fn clone(&self) -> Self {
        let memo = match &self.memo {
            Memo::Table(t) => Memo::Table(t.clone()),
            Memo::Lazy(m) => Memo::Lazy(RwLock::new(m.read().unwrap().clone())),
        };
        Polymatroid { n: self.n, repr: self.repr.clone(), memo }
    }
}

impl fmt::Debug for Polymatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polymatroid")
            .field("n", &self.n)
            .field("repr", &self.repr)
            .finish()
    }
}

fn check_ground_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("ground set must be nonempty"));
    }
    if n > MAX_GROUND_SET {
        return Err(Error::resource(format!(
            "ground set size {n} exceeds the limit of {MAX_GROUND_SET}"
        )));
    }
    Ok(())
}

fn check_subsets(n: usize, sets: &[GroundSubset], what: &str) -> Result<()> {
    for s in sets {
        if !s.fits(n) {
            return Err(Error::usage(format!("{what} {s} is not a subset of [{n}]")));
        }
    }
    Ok(())
}

impl Polymatroid {
    fn build(n: usize, repr: Representation) -> Result<Self> {
        check_ground_size(n)?;
        let mut p = Polymatroid {
            n,
            repr,
            memo: Memo::Lazy(RwLock::new(HashMap::new())),
        };
        if n <= EAGER_TABLE_LIMIT {
            let table = all_subsets(n).map(|a| p.evaluate(a)).collect();
            p.memo = Memo::Table(table);
        } else if matches!(p.repr, Representation::PointSet(_)) {
            return Err(Error::resource(format!(
                "point-set input needs a rank table; n = {n} exceeds {EAGER_TABLE_LIMIT}"
            )));
        }
        Ok(p)
    }

    /// Rank table indexed by subset bitmask; must have `2^n` entries.
    pub fn rank_table(n: usize, table: Vec<Rank>) -> Result<Self> {
        check_ground_size(n)?;
        if n > EAGER_TABLE_LIMIT {
            return Err(Error::resource(format!(
                "explicit rank tables are limited to n <= {EAGER_TABLE_LIMIT}"
            )));
        }
        if table.len() != 1usize << n {
            return Err(Error::usage(format!(
                "rank table has {} entries, expected 2^{n} = {}",
                table.len(),
                1usize << n
            )));
        }
        Self::build(n, Representation::RankTable(table))
    }

    /// The transversal polymatroid presented by `(A_1, ..., A_s)`.
    pub fn transversal(n: usize, sets: Vec<GroundSubset>) -> Result<Self> {
        check_ground_size(n)?;
        check_subsets(n, &sets, "transversal set")?;
        if sets.iter().any(|s| s.is_empty()) {
            return Err(Error::usage("transversal sets must be nonempty"));
        }
        Self::build(n, Representation::Transversal(sets))
    }

    /// `{v : v_i <= s_i, |v| <= d}`. The bounds are not required to be sorted.
    pub fn veronese(s: Vec<Rank>, d: Rank) -> Result<Self> {
        Self::build(s.len(), Representation::Veronese { s, d })
    }

    /// `{w : w <= v}`.
    pub fn boxed(v: Vec<Rank>) -> Result<Self> {
        Self::build(v.len(), Representation::Box(v))
    }

    pub fn matroid_bases(n: usize, bases: Vec<GroundSubset>) -> Result<Self> {
        check_ground_size(n)?;
        check_subsets(n, &bases, "basis")?;
        if bases.is_empty() {
            return Err(Error::usage("a matroid needs at least one basis"));
        }
        Self::build(n, Representation::MatroidBases(bases))
    }

    pub fn point_set(n: usize, points: Vec<LatticeVector>) -> Result<Self> {
        check_ground_size(n)?;
        if points.is_empty() {
            return Err(Error::usage("point set is empty"));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::usage(format!(
                "point {p:?} has dimension {} instead of {n}",
                p.dim()
            )));
        }
        Self::build(n, Representation::PointSet(points))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn ground_set(&self) -> GroundSubset {
        GroundSubset::full(self.n)
    }

    fn evaluate(&self, a: GroundSubset) -> Rank {
        match &self.repr {
            Representation::RankTable(t) => t[a.bits() as usize],
            Representation::Transversal(sets) => {
                sets.iter().filter(|s| !s.is_disjoint(a)).count() as Rank
            }
            Representation::Veronese { s, d } => {
                let total: Rank = a.elements().map(|i| s[i]).sum();
                total.min(*d)
            }
            Representation::Box(v) => a.elements().map(|i| v[i]).sum(),
            Representation::MatroidBases(bases) => bases
                .iter()
                .map(|f| f.intersection(a).len() as Rank)
                .max()
                .unwrap_or(0),
            Representation::PointSet(points) => {
                points.iter().map(|p| p.sum_over(a)).max().unwrap_or(0)
            }
        }
    }

    /// `rho(A)`, memoized.
    pub fn rank(&self, a: GroundSubset) -> Result<Rank> {
        if !a.fits(self.n) {
            return Err(Error::usage(format!("{a} is not a subset of [{}]", self.n)));
        }
        Ok(self.rank_of(a))
    }

    /// `rho(A)` straight from the representation, bypassing the memo.
    pub fn rank_uncached(&self, a: GroundSubset) -> Result<Rank> {
        if !a.fits(self.n) {
            return Err(Error::usage(format!("{a} is not a subset of [{}]", self.n)));
        }
        Ok(self.evaluate(a))
    }

    /// Memoized rank for a subset already known to lie in `[n]`.
    pub(crate) fn rank_of(&self, a: GroundSubset) -> Rank {
        debug_assert!(a.fits(self.n));
        match &self.memo {
            Memo::Table(t) => t[a.bits() as usize],
            Memo::Lazy(cache) => {
                if let Some(&r) = cache.read().unwrap().get(&a.bits()) {
                    return r;
                }
                let r = self.evaluate(a);
                cache.write().unwrap().insert(a.bits(), r);
                r
            }
        }
    }

    /// The full table of ranks, indexed by bitmask.
    pub fn table(&self) -> Result<Vec<Rank>> {
        if self.n > EAGER_TABLE_LIMIT {
            return Err(Error::resource(format!(
                "rank table for n = {} is too large",
                self.n
            )));
        }
        Ok(all_subsets(self.n).map(|a| self.rank_of(a)).collect())
    }

    /// Checks normalization, monotonicity, submodularity and `rho({i}) >= 1`.
    ///
    /// Monotonicity and submodularity are checked in their local forms
    /// `rho(S) <= rho(S+i)` and `rho(S+i) + rho(S+j) >= rho(S+i+j) + rho(S)`,
    /// which are equivalent to the global ones. Each violated local
    /// instance is reported as the pair of sets witnessing it.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let mut violations = Vec::new();
        let empty = self.rank_of(GroundSubset::EMPTY);
        if empty != 0 {
            violations.push(Violation::NotNormalized { value: empty });
        }
        for i in 0..n {
            if self.rank_of(GroundSubset::singleton(i)) == 0 {
                violations.push(Violation::ZeroSingleton { element: i });
            }
        }
        for s in all_subsets(n) {
            let rs = self.rank_of(s);
            let outside: Vec<usize> = s.complement(n).elements().collect();
            for &i in &outside {
                if rs > self.rank_of(s.with(i)) {
                    violations.push(Violation::NotMonotone {
                        smaller: s,
                        larger: s.with(i),
                    });
                }
            }
            for (k, &i) in outside.iter().enumerate() {
                let ri = self.rank_of(s.with(i));
                for &j in &outside[k + 1..] {
                    let rj = self.rank_of(s.with(j));
                    let rij = self.rank_of(s.with(i).with(j));
                    if ri + rj < rij + rs {
                        violations.push(Violation::NotSubmodular {
                            a: s.with(i),
                            b: s.with(j),
                        });
                    }
                }
            }
        }
        let mut warnings = Vec::new();
        if let Representation::MatroidBases(bases) = &self.repr {
            warnings.extend(matroid_warnings(bases));
        }
        ValidationReport { violations, warnings }
    }

    /// Every `v` in `Z_+^n` with `v(A) <= rho(A)` for all `A`, in
    /// lexicographic order.
    pub fn lattice_points(&self, cap: usize) -> Result<Vec<LatticeVector>> {
        let n = self.n;
        if n > EAGER_TABLE_LIMIT {
            return Err(Error::resource(format!(
                "lattice point enumeration is limited to n <= {EAGER_TABLE_LIMIT}"
            )));
        }
        // constraints whose largest element is k, checked once coordinate k is set
        let by_last: Vec<Vec<(GroundSubset, Rank)>> = (0..n)
            .map(|k| {
                GroundSubset::full(k)
                    .subsets()
                    .map(|s| {
                        let a = s.with(k);
                        (a, self.rank_of(a))
                    })
                    .collect()
            })
            .collect();
        let bounds: Vec<Rank> = (0..n).map(|i| self.rank_of(GroundSubset::singleton(i))).collect();
        let mut out = Vec::new();
        let mut current = vec![0u64; n];
        lattice_dfs(0, &mut current, &bounds, &by_last, &mut out, cap)?;
        Ok(out)
    }

    /// The maximal points of the polymatroid.
    pub fn bases(&self, cap: usize) -> Result<Vec<LatticeVector>> {
        let points = self.lattice_points(cap)?;
        let members: HashSet<&LatticeVector> = points.iter().collect();
        let n = self.n;
        Ok(points
            .iter()
            .filter(|v| {
                (0..n).all(|i| {
                    let mut up = v.coords().to_vec();
                    up[i] += 1;
                    !members.contains(&LatticeVector::new(up))
                })
            })
            .cloned()
            .collect())
    }
}

fn lattice_dfs(
    k: usize,
    current: &mut Vec<u64>,
    bounds: &[Rank],
    by_last: &[Vec<(GroundSubset, Rank)>],
    out: &mut Vec<LatticeVector>,
    cap: usize,
) -> Result<()> {
    if k == current.len() {
        if out.len() >= cap {
            return Err(Error::resource(format!(
                "more than {cap} lattice points"
            )));
        }
        out.push(LatticeVector::new(current.clone()));
        return Ok(());
    }
    for value in 0..=bounds[k] {
        current[k] = value;
        let feasible = by_last[k]
            .iter()
            .all(|&(a, r)| a.elements().map(|i| current[i]).sum::<u64>() <= r);
        if !feasible {
            // every constraint is monotone in v_k
            break;
        }
        lattice_dfs(k + 1, current, bounds, by_last, out, cap)?;
    }
    current[k] = 0;
    Ok(())
}

fn matroid_warnings(bases: &[GroundSubset]) -> Vec<String> {
    let mut warnings = Vec::new();
    let size = bases[0].len();
    if bases.iter().any(|b| b.len() != size) {
        warnings.push("matroid bases do not all have the same cardinality".to_string());
        return warnings;
    }
    let set: HashSet<GroundSubset> = bases.iter().copied().collect();
    'outer: for &b1 in bases {
        for &b2 in bases {
            for x in b1.difference(b2).elements() {
                let ok = b2
                    .difference(b1)
                    .elements()
                    .any(|y| set.contains(&b1.without(x).with(y)));
                if !ok {
                    warnings.push(format!(
                        "basis exchange fails for {b1} and {b2} at element {}",
                        x + 1
                    ));
                    break 'outer;
                }
            }
        }
    }
    warnings
}

/// One failed polymatroid axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `rho(∅) != 0`.
    NotNormalized { value: Rank },
    /// `smaller ⊆ larger` but `rho(smaller) > rho(larger)`.
    NotMonotone { smaller: GroundSubset, larger: GroundSubset },
    /// `rho(a) + rho(b) < rho(a ∪ b) + rho(a ∩ b)`.
    NotSubmodular { a: GroundSubset, b: GroundSubset },
    /// `rho({element}) = 0`, so `e_element` is not a point of the polymatroid.
    ZeroSingleton { element: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotNormalized { value } => write!(f, "rank of the empty set is {value}"),
            Violation::NotMonotone { smaller, larger } => {
                write!(f, "not monotone: rank{smaller} > rank{larger}")
            }
            Violation::NotSubmodular { a, b } => {
                write!(f, "not submodular at A = {a}, B = {b}")
            }
            Violation::ZeroSingleton { element } => {
                write!(f, "singleton {{{}}} has rank 0", element + 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}
