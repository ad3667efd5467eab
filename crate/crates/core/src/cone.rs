//! The convex route: the cone over the semigroup generators `(v, 1)`.
//!
//! Facets of the cone are found with the double description method over
//! exact integers. Each facet gives a normalized support form `c`, with
//! `gcd(c) = 1` and `<c, p> >= 0` on every generator. Forms with positive
//! last coefficient belong to the minimal primes `P_j` of `t`; the others
//! are the coordinate forms `x_i` of the primes `Q_i`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::divisor::{label_for, DivisorClass, DivisorPresentation};
use crate::error::{Error, Result};
use crate::foundation::GroundSubset;
use crate::rank_engine::{LatticeVector, Polymatroid, Rank};
use crate::structure::ClosedInseparableFamily;

/// A multicomplex given by its facets, or, in generalized mode, an arbitrary
/// finite point set containing `0` and every `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticomplexInput {
    n: usize,
    facets: Vec<LatticeVector>,
    generalized: bool,
}

impl MulticomplexInput {
    pub fn new(n: usize, facets: Vec<LatticeVector>, generalized: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("ground set must be nonempty"));
        }
        if let Some(f) = facets.iter().find(|f| f.dim() != n) {
            return Err(Error::usage(format!("vector {f:?} does not have dimension {n}")));
        }
        if generalized {
            if !facets.contains(&LatticeVector::zeros(n)) {
                return Err(Error::usage("generalized input must contain the zero vector"));
            }
            if let Some(i) = (0..n).find(|&i| !facets.contains(&LatticeVector::unit(n, i))) {
                return Err(Error::usage(format!(
                    "generalized input must contain e_{}",
                    i + 1
                )));
            }
        } else {
            for (k, a) in facets.iter().enumerate() {
                for b in &facets[k + 1..] {
                    if a.is_below(b) || b.is_below(a) {
                        return Err(Error::usage(format!(
                            "facets {a:?} and {b:?} are comparable"
                        )));
                    }
                }
            }
            if let Some(i) = (0..n).find(|&i| facets.iter().all(|f| f.coords()[i] == 0)) {
                return Err(Error::usage(format!("e_{} lies below no facet", i + 1)));
            }
        }
        Ok(MulticomplexInput { n, facets, generalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn is_generalized(&self) -> bool {
        self.generalized
    }

    /// All points: the downward closure of the facets, or the listed points
    /// themselves in generalized mode. Sorted, without repeats.
    pub fn points(&self, cap: usize) -> Result<Vec<LatticeVector>> {
        let mut out = BTreeSet::new();
        if self.generalized {
            out.extend(self.facets.iter().cloned());
        } else {
            for f in &self.facets {
                let mut current = vec![0u64; self.n];
                loop {
                    out.insert(LatticeVector::new(current.clone()));
                    if out.len() > cap {
                        return Err(Error::resource(format!("more than {cap} lattice points")));
                    }
                    // odometer over the box below f
                    let mut i = 0;
                    while i < self.n && current[i] == f.coords()[i] {
                        current[i] = 0;
                        i += 1;
                    }
                    if i == self.n {
                        break;
                    }
                    current[i] += 1;
                }
            }
        }
        if out.len() > cap {
            return Err(Error::resource(format!("more than {cap} lattice points")));
        }
        Ok(out.into_iter().collect())
    }
}

/// The points `p_v = (v, 1)` generating the semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupGenerators {
    n: usize,
    points: Vec<Vec<i64>>,
}

impl SemigroupGenerators {
    pub fn from_points(n: usize, points: &[LatticeVector]) -> Result<Self> {
        let mut lifted = BTreeSet::new();
        for v in points {
            if v.dim() != n {
                return Err(Error::usage(format!("point {v:?} does not have dimension {n}")));
            }
            let mut p = Vec::with_capacity(n + 1);
            for &x in v.coords() {
                p.push(i64::try_from(x).map_err(|_| Error::resource("coordinate too large"))?);
            }
            p.push(1);
            lifted.insert(p);
        }
        Ok(SemigroupGenerators { n, points: lifted.into_iter().collect() })
    }

    pub fn from_polymatroid(p: &Polymatroid, cap: usize) -> Result<Self> {
        Self::from_points(p.n(), &p.lattice_points(cap)?)
    }

    pub fn from_multicomplex(m: &MulticomplexInput, cap: usize) -> Result<Self> {
        Self::from_points(m.n(), &m.points(cap)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension `n + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }
}

/// A normalized integer linear form, nonnegative on the cone, vanishing on a
/// facet. Ordered lexicographically by coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportForm {
    coeffs: Vec<BigInt>,
}

impl SupportForm {
    /// Divides out the gcd of the coefficients; the zero form is rejected.
    pub fn normalized(coeffs: Vec<BigInt>) -> Result<Self> {
        let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::usage("zero linear form"));
        }
        Ok(SupportForm { coeffs: coeffs.into_iter().map(|c| c / &g).collect() })
    }

    /// `x_i` in dimension `n + 1` (0-based `i`).
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[i] = BigInt::one();
        SupportForm { coeffs }
    }

    /// `-sum_{i in A} x_i + rank x_{n+1}`.
    pub fn edmonds(n: usize, set: GroundSubset, rank: Rank) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for i in set.elements() {
            coeffs[i] = -BigInt::one();
        }
        coeffs[n] = BigInt::from(rank);
        SupportForm::normalized(coeffs).expect("nonzero form")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// The coefficient of `t`.
    pub fn t_coefficient(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty form")
    }

    pub fn contains_t(&self) -> bool {
        self.t_coefficient().is_positive()
    }

    /// `Some(i)` when the form is the coordinate `x_i`.
    pub fn coordinate_index(&self) -> Option<usize> {
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nonzero.next(), nonzero.next()) {
            (Some((i, c)), None) if c.is_one() && i + 1 < self.coeffs.len() => Some(i),
            _ => None,
        }
    }

    /// `Some(A)` when the form is `-sum_{i in A} x_i + k x_{n+1}` with `k > 0`.
    pub fn edmonds_set(&self) -> Option<GroundSubset> {
        let n = self.coeffs.len() - 1;
        if !self.coeffs[n].is_positive() {
            return None;
        }
        let mut set = GroundSubset::EMPTY;
        for (i, c) in self.coeffs[..n].iter().enumerate() {
            if *c == -BigInt::one() {
                set = set.with(i);
            } else if !c.is_zero() {
                return None;
            }
        }
        (!set.is_empty()).then_some(set)
    }

    pub fn evaluate(&self, point: &[i64]) -> BigInt {
        self.coeffs
            .iter()
            .zip(point)
            .map(|(c, &x)| c * BigInt::from(x))
            .sum()
    }

    pub fn evaluate_big(&self, point: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum()
    }

    /// Generator label: `P_A` for forms of Edmonds shape, otherwise the
    /// coefficient vector.
    pub fn label(&self) -> String {
        match self.edmonds_set() {
            Some(set) => label_for(set),
            None => format!("P[{self}]"),
        }
    }
}

impl fmt::Display for SupportForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SupportForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// One form per line, coefficients as decimal integers separated by spaces,
/// in the given (sorted) order.
pub fn format_facets(forms: &[SupportForm]) -> String {
    forms.iter().map(|f| format!("{f}\n")).collect()
}

/// The forms predicted for a polymatroid: `f_A` for each closed inseparable
/// `A` and the coordinate forms, sorted.
pub fn edmonds_facets(family: &ClosedInseparableFamily) -> Vec<SupportForm> {
    let n = family.n();
    let mut forms: Vec<SupportForm> = family
        .members()
        .iter()
        .map(|m| SupportForm::edmonds(n, m.set, m.rank))
        .chain((0..n).map(|i| SupportForm::coordinate(n, i)))
        .collect();
    forms.sort();
    forms
}

struct Ray {
    v: Vec<BigInt>,
    tight: FixedBitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|c| c / &g).collect()
    }
}

/// Indices of a maximal linearly independent subset of `rows`, greedily.
fn independent_rows(rows: &[Vec<BigInt>]) -> Vec<usize> {
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
        for (pivot, e) in &echelon {
            if !r[*pivot].is_zero() {
                let factor = &r[*pivot] / &e[*pivot];
                for (x, y) in r.iter_mut().zip(e) {
                    *x -= &factor * y;
                }
            }
        }
        if let Some(pivot) = r.iter().position(|x| !x.is_zero()) {
            echelon.push((pivot, r));
            chosen.push(idx);
        }
    }
    chosen
}

/// Inverse of a square matrix over the rationals.
fn invert(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let d = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
            r.extend((0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[d..].to_vec()).collect())
}

/// Facets of the cone spanned by the generators, as normalized support
/// forms in lexicographic order.
///
/// The facet normals are the extreme rays of the dual cone
/// `{c : <c, p> >= 0 for every generator p}`, computed by the double
/// description method with the combinatorial adjacency test.
pub fn cone_facets(generators: &SemigroupGenerators) -> Result<Vec<SupportForm>> {
    let dim = generators.dim();
    let rows: Vec<Vec<BigInt>> = generators
        .points()
        .iter()
        .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let basis = independent_rows(&rows);
    if basis.len() < dim {
        return Err(Error::Internal(format!(
            "generators span a space of dimension {} < {dim}",
            basis.len()
        )));
    }
    let in_basis: HashSet<usize> = basis.iter().copied().collect();
    let constraints: Vec<&Vec<BigInt>> = basis
        .iter()
        .copied()
        .chain((0..rows.len()).filter(|k| !in_basis.contains(k)))
        .map(|k| &rows[k])
        .collect();
    let m = constraints.len();

    let square: Vec<Vec<BigInt>> = constraints[..dim].iter().map(|r| (*r).clone()).collect();
    let inverse = invert(&square)
        .ok_or_else(|| Error::Internal("initial generator matrix is singular".into()))?;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let column: Vec<BigRational> = inverse.iter().map(|row| row[j].clone()).collect();
            let lcm = column
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let v = column
                .iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            let mut tight = FixedBitSet::with_capacity(m);
            for i in (0..dim).filter(|&i| i != j) {
                tight.insert(i);
            }
            Ray { v: primitive(v), tight }
        })
        .collect();

    for (k, a) in constraints.iter().enumerate().skip(dim) {
        let values: Vec<BigInt> = rays.iter().map(|r| dot(&r.v, a)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.insert(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].tight.clone();
                common.intersect_with(&rays[q].tight);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(r, ray)| r == p || r == q || !common.is_subset(&ray.tight));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vq = -&values[q];
                let v: Vec<BigInt> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[q].v)
                    .map(|(x, y)| vp * y + &vq * x)
                    .collect();
                let mut tight = common;
                tight.insert(k);
                created.push(Ray { v: primitive(v), tight });
            }
        }
        let mut next = Vec::with_capacity(pos.len() + created.len());
        for (i, mut ray) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                ray.tight.insert(k);
                next.push(ray);
            } else if values[i].is_positive() {
                next.push(ray);
            }
        }
        next.extend(created);
        rays = next;
    }

    let forms: BTreeSet<SupportForm> = rays
        .into_iter()
        .map(|r| SupportForm::normalized(r.v))
        .collect::<Result<_>>()?;
    let forms: Vec<SupportForm> = forms.into_iter().collect();
    for f in &forms {
        if let Some(p) = generators.points().iter().find(|p| f.evaluate(p).is_negative()) {
            return Err(Error::Internal(format!("form {f} is negative on generator {p:?}")));
        }
    }
    Ok(forms)
}

fn check_forms(forms: &[SupportForm]) -> Result<usize> {
    let first = forms.first().ok_or_else(|| Error::usage("no support forms given"))?;
    let dim = first.dim();
    if forms.iter().any(|f| f.dim() != dim) {
        return Err(Error::usage("support forms of different dimensions"));
    }
    Ok(dim - 1)
}

/// The forms of the height one primes containing `t`, in input order.
///
/// All remaining forms must be exactly the `n` coordinate forms.
pub fn minimal_primes_of_t(forms: &[SupportForm]) -> Result<Vec<SupportForm>> {
    let n = check_forms(forms)?;
    let mut coordinates = BTreeSet::new();
    let mut primes = Vec::new();
    for f in forms {
        if f.contains_t() {
            primes.push(f.clone());
        } else if let Some(i) = f.coordinate_index() {
            coordinates.insert(i);
        } else {
            return Err(Error::Invariant(format!(
                "support form {f} avoids t but is not a coordinate form"
            )));
        }
    }
    if coordinates.len() != n {
        return Err(Error::Invariant(format!(
            "expected {n} coordinate forms, found {}",
            coordinates.len()
        )));
    }
    Ok(primes)
}

/// Valuations `<c, u>` of the monomial with exponent `u` along every form.
pub fn monomial_divisor(u: &[BigInt], forms: &[SupportForm]) -> Result<Vec<BigInt>> {
    let n = check_forms(forms)?;
    if u.len() != n + 1 {
        return Err(Error::usage(format!(
            "exponent vector has length {}, expected {}",
            u.len(),
            n + 1
        )));
    }
    Ok(forms.iter().map(|f| f.evaluate_big(u)).collect())
}

/// Class group presentation read off the forms: one generator per form
/// containing `t`, relation given by the `t` coefficients.
pub fn class_group_from_cone(forms: &[SupportForm]) -> Result<DivisorPresentation> {
    let primes = minimal_primes_of_t(forms)?;
    let labels = primes.iter().map(SupportForm::label).collect();
    let relation = primes.iter().map(|f| f.t_coefficient().clone()).collect();
    DivisorPresentation::new(labels, relation)
}

/// `[omega] = sum_j (1 - c_{1,j} - ... - c_{n,j}) [P_j]`.
pub fn canonical_from_cone(forms: &[SupportForm]) -> Result<DivisorClass> {
    let presentation = Arc::new(class_group_from_cone(forms)?);
    let primes = minimal_primes_of_t(forms)?;
    let coords = primes
        .iter()
        .map(|f| {
            let n = f.dim() - 1;
            BigInt::one() - f.coeffs()[..n].iter().sum::<BigInt>()
        })
        .collect();
    DivisorClass::new(presentation, coords)
}

/// Class of the principal divisor of the monomial `u`, with each `[Q_i]`
/// replaced by `-sum_j c_{i,j} [P_j]`. Always zero for a valid cone.
pub fn principal_class(u: &[BigInt], forms: &[SupportForm]) -> Result<DivisorClass> {
    let values = monomial_divisor(u, forms)?;
    let presentation = Arc::new(class_group_from_cone(forms)?);
    let primes = minimal_primes_of_t(forms)?;
    let mut coords = vec![BigInt::zero(); primes.len()];
    let mut j = 0;
    for (f, value) in forms.iter().zip(values) {
        if f.contains_t() {
            coords[j] += value;
            j += 1;
        } else if let Some(i) = f.coordinate_index() {
            for (c, p) in coords.iter_mut().zip(&primes) {
                *c -= &value * &p.coeffs()[i];
            }
        }
    }
    DivisorClass::new(presentation, coords)
}

/// Outcome of the bounded-degree normality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub max_degree: u64,
    /// Number of cone lattice points examined over all degrees.
    pub points_checked: usize,
    /// First cone lattice point (last coordinate = degree) that is not a sum
    /// of that many generators.
    pub violation: Option<Vec<i64>>,
}

impl NormalityReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that every lattice point of the cone at height `k <= max_degree`
/// is a sum of `k` generators. This is evidence, not a proof, of normality.
pub fn normality_witness(
    generators: &SemigroupGenerators,
    forms: &[SupportForm],
    max_degree: u64,
    cap: usize,
) -> Result<NormalityReport> {
    if max_degree == 0 {
        return Err(Error::usage("degree bound must be at least 1"));
    }
    let n = generators.n();
    let bounds: Vec<i64> = (0..n)
        .map(|i| generators.points().iter().map(|p| p[i]).max().unwrap_or(0))
        .collect();
    let mut level: HashSet<Vec<i64>> = generators.points().iter().cloned().collect();
    let mut points_checked = 0;
    for k in 1..=max_degree as i64 {
        if k > 1 {
            let mut next = HashSet::new();
            for a in &level {
                for g in generators.points() {
                    next.insert(a.iter().zip(g).map(|(x, y)| x + y).collect::<Vec<i64>>());
                }
                if next.len() > cap {
                    return Err(Error::resource(format!(
                        "more than {cap} semigroup elements in degree {k}"
                    )));
                }
            }
            level = next;
        }
        let mut w = vec![0i64; n + 1];
        w[n] = k;
        'enumerate: loop {
            if forms.iter().all(|f| !f.evaluate(&w).is_negative()) {
                points_checked += 1;
                if !level.contains(&w) {
                    return Ok(NormalityReport {
                        max_degree,
                        points_checked,
                        violation: Some(w),
                    });
                }
            }
            // lexicographic odometer, first coordinate most significant
            let mut i = n;
            loop {
                if i == 0 {
                    break 'enumerate;
                }
                i -= 1;
                if w[i] < k * bounds[i] {
                    w[i] += 1;
                    break;
                }
                w[i] = 0;
            }
        }
    }
    Ok(NormalityReport { max_degree, points_checked, violation: None })
}

/// Index of the lattice spanned by the generators in `Z^(n+1)`: the product
/// of its elementary divisors, or 0 when the span is not full rank.
pub fn lattice_index(generators: &SemigroupGenerators) -> BigInt {
    let dim = generators.dim();
    let mut rows: Vec<Vec<BigInt>> = generators
        .points()
        .iter()
        .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut index = BigInt::one();
    let mut top = 0;
    for col in 0..dim {
        loop {
            let pivot = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(pivot) = pivot else {
                return BigInt::zero();
            };
            rows.swap(top, pivot);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[top][col]);
                let pivot_row = rows[top].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        index *= rows[top][col].abs();
        top += 1;
    }
    index
}

/// Converts an `i64` exponent vector for [`monomial_divisor`].
pub fn exponent(u: &[i64]) -> Vec<BigInt> {
    u.iter().map(|&x| BigInt::from(x)).collect()
}

/// Small helper for reports: coefficient vector as `i64` when it fits.
pub fn form_to_i64(f: &SupportForm) -> Option<Vec<i64>> {
    f.coeffs().iter().map(|c| c.to_i64()).collect()
}
