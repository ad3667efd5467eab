//! Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
//! Exits nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_class::cone::{
    canonical_from_cone, class_group_from_cone, cone_facets, edmonds_facets, exponent,
    normality_witness, principal_class, SemigroupGenerators,
};
use toric_class::divisor::{canonical_class, class_group, classes_equal, is_gorenstein};
use toric_class::families::{
    box_analysis, classify_transversal, graph_complement_family, nested_chain_analysis,
    nested_chain_family, rank_bounded_analysis, uniform_transversal_analysis, veronese_analysis,
    TransversalFamily, Verdict, VeroneseParams,
};
use toric_class::foundation::all_subsets;
use toric_class::rank_engine::{Violation, DEFAULT_POINT_CAP};
use toric_class::structure::{closed_inseparable_family, is_closed, ClosedInseparableFamily, DEFAULT_MAX_N};
use toric_class::{GroundSubset, GroupInvariants, Polymatroid};
use toric_class_cli::report::AnalysisReport;

const UNIFORM_BUDGET: Duration = Duration::from_secs(60);
const BOUNDED_DEGREE_BUDGET: Duration = Duration::from_secs(60);
const VERONESE_BUDGET: Duration = Duration::from_secs(300);
const RANDOM_TABLES: usize = 200;
const INVALID_SAMPLES: usize = 1000;
const SEED: u64 = 0x7061_7468;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < budget, || format!("took {spent:.2?}, budget {budget:?}"))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct Engine {
    family: ClosedInseparableFamily,
    invariants: GroupInvariants,
    gorenstein: Option<u64>,
}

fn engine(p: &Polymatroid) -> Engine {
    let family = closed_inseparable_family(p, DEFAULT_MAX_N).expect("family");
    let invariants = class_group(&family).expect("class group").invariants;
    let gorenstein = is_gorenstein(&family);
    Engine { family, invariants, gorenstein }
}

fn set(labels: &[usize], n: usize) -> GroundSubset {
    GroundSubset::from_one_based(labels, n).unwrap()
}

/// `rho(A) = sum_k min(w_k(A), c_k)`, every element weighted somewhere.
fn random_table(rng: &mut ChaCha8Rng, n: usize) -> Vec<u64> {
    let terms = rng.gen_range(1..=3);
    let mut weights: Vec<Vec<u64>> =
        (0..terms).map(|_| (0..n).map(|_| rng.gen_range(0..=2)).collect()).collect();
    for i in 0..n {
        if weights.iter().all(|w| w[i] == 0) {
            weights[rng.gen_range(0..terms)][i] = 1;
        }
    }
    let caps: Vec<u64> = (0..terms).map(|_| rng.gen_range(1..=4)).collect();
    all_subsets(n)
        .map(|a| {
            weights
                .iter()
                .zip(&caps)
                .map(|(w, &c)| a.elements().map(|i| w[i]).sum::<u64>().min(c))
                .sum()
        })
        .collect()
}

fn vectors(n: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Connected graphs on `[n]` that are not stars, as 1-based edge lists.
fn connected_non_stars(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| *e).collect();
        let mut reached = vec![false; n + 1];
        reached[1] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &(u, v) in &edges {
                if reached[u] != reached[v] {
                    reached[u] = true;
                    reached[v] = true;
                    changed = true;
                }
            }
        }
        let connected = reached[1..].iter().all(|&r| r);
        let star = (1..=n).any(|c| edges.iter().all(|&(u, v)| u == c || v == c));
        if connected && !star {
            out.push(edges);
        }
    }
    out
}

fn complement_presentation(n: usize, edges: &[(usize, usize)]) -> TransversalFamily {
    let sets = edges.iter().map(|&(u, v)| set(&[u, v], n).complement(n)).collect();
    TransversalFamily::new(n, sets).unwrap()
}

/// Chains `A_1 ⊊ ... ⊊ A_r = [n]` with `r <= max_r`, nonempty `A_1`.
fn chains(n: usize, max_r: usize) -> Vec<Vec<GroundSubset>> {
    let full = GroundSubset::full(n);
    let mut out = vec![vec![full]];
    let mut frontier = vec![vec![full]];
    for _ in 1..max_r {
        let mut next = Vec::new();
        for c in &frontier {
            for a in c[0].subsets().filter(|a| !a.is_empty() && *a != c[0]) {
                let mut longer = vec![a];
                longer.extend(c);
                next.push(longer);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Multisets of `s` nonempty subsets of `[n]` covering `[n]`.
fn presentations(n: usize, s: usize) -> Vec<Vec<GroundSubset>> {
    let subsets: Vec<GroundSubset> = all_subsets(n).skip(1).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((picked, from)) = stack.pop() {
        if picked.len() == s {
            let sets: Vec<GroundSubset> = picked.iter().map(|&k| subsets[k]).collect();
            if sets.iter().fold(GroundSubset::EMPTY, |a, b| a.union(*b)) == GroundSubset::full(n) {
                out.push(sets);
            }
            continue;
        }
        for k in from..subsets.len() {
            let mut next = picked.clone();
            next.push(k);
            stack.push((next, k));
        }
    }
    out
}

fn uniform_transversal() -> Outcome {
    let start = Instant::now();
    let sets: Vec<Vec<usize>> = all_subsets(7)
        .filter(|a| a.len() == 4)
        .map(|a| a.to_one_based())
        .collect();
    let json = serde_json::json!({ "kind": "transversal", "n": 7, "sets": sets }).to_string();
    let mut file = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
    file.write_all(json.as_bytes()).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_toric-class"))
        .args(["analyze", file.path().to_str().unwrap(), "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let report: AnalysisReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let family = report.family.ok_or("no family in report")?;
    let ranks: BTreeSet<u64> = family.iter().map(|m| m.rank).collect();
    ensure(ranks == BTreeSet::from([20, 30, 34, 35]), || format!("ranks {ranks:?}"))?;
    ensure(family.len() == 64, || format!("|family| = {}", family.len()))?;
    ensure(report.class_group.display == "Z^63", || format!("Cl = {}", report.class_group.display))?;
    let pred = uniform_transversal_analysis(7, 4).map_err(|e| e.to_string())?;
    ensure(pred.invariants.to_string() == "Z^63", || "closed form disagrees".into())?;
    within(UNIFORM_BUDGET, start)?;
    Ok(format!("ranks {{20,30,34,35}}, |A| = 64, Cl = Z^63 in {:.2?}", start.elapsed()))
}

fn bounded_degree() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for d in 1..=5u64 {
        for n in 2..=6usize {
            let e = engine(&Polymatroid::veronese(vec![d; n], d).unwrap());
            let expected = GroupInvariants::new(0, d);
            ensure(e.invariants == expected, || format!("n={n} d={d}: Cl = {}", e.invariants))?;
            let gorenstein = (n as u64 + 1) % d == 0;
            ensure(e.gorenstein.is_some() == gorenstein, || format!("n={n} d={d}: verdict"))?;
            let pred = rank_bounded_analysis(n, d).map_err(|e| e.to_string())?;
            ensure(pred.matches_family(&e.family) && pred.invariants == e.invariants, || {
                format!("n={n} d={d}: closed form")
            })?;
            count += 1;
        }
    }
    within(BOUNDED_DEGREE_BUDGET, start)?;
    Ok(format!("{count} cases in {:.2?}", start.elapsed()))
}

fn boxes() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        for v in vectors(n, 1, 3) {
            let e = engine(&Polymatroid::boxed(v.clone()).unwrap());
            let g = v.iter().fold(0, |a, &b| gcd(a, b));
            ensure(e.invariants == GroupInvariants::new(n - 1, g), || format!("{v:?}: Cl = {}", e.invariants))?;
            let gorenstein = v.iter().all(|&x| x == v[0]) && v[0] <= 2;
            ensure(e.gorenstein.is_some() == gorenstein, || format!("{v:?}: verdict"))?;
            let pred = box_analysis(&v).map_err(|e| e.to_string())?;
            ensure(pred.matches_family(&e.family), || format!("{v:?}: closed form family"))?;
            count += 1;
        }
    }
    Ok(format!("{count} boxes"))
}

fn veronese_classification() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut gorenstein_cases = 0;
    for n in 2..=5usize {
        for d in 1..=5u64 {
            for s in vectors(n, 1, d.saturating_sub(1).max(1)) {
                if s.iter().any(|&x| x >= d) || d >= s.iter().sum() {
                    continue;
                }
                let e = engine(&Polymatroid::veronese(s.clone(), d).unwrap());
                let predicate = (s.iter().all(|&x| x == 2) && n as u64 == d - 1)
                    || (s.iter().all(|&x| x == 1) && n as u64 == 2 * d - 1);
                ensure(e.gorenstein.is_some() == predicate, || format!("s={s:?} d={d}: verdict"))?;
                let mut sorted = s.clone();
                sorted.sort();
                let params = VeroneseParams::new(sorted, d).map_err(|e| e.to_string())?;
                let a = veronese_analysis(&params, DEFAULT_MAX_N).map_err(|e| e.to_string())?;
                ensure(a.deferred.is_none(), || format!("s={s:?} d={d}: deferred"))?;
                ensure(
                    a.prediction.gorenstein == Some(Verdict::from(e.gorenstein))
                        && a.prediction.invariants == e.invariants,
                    || format!("s={s:?} d={d}: closed form"),
                )?;
                gorenstein_cases += usize::from(predicate);
                count += 1;
            }
        }
    }
    within(VERONESE_BUDGET, start)?;
    Ok(format!("{count} cases ({gorenstein_cases} Gorenstein) in {:.2?}", start.elapsed()))
}

/// Random tables with n <= 4 and every named family with n <= 4.
fn corpus() -> Vec<(String, Polymatroid)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for k in 0..RANDOM_TABLES {
        let n = rng.gen_range(1..=4);
        let table = random_table(&mut rng, n);
        out.push((format!("random table #{k}"), Polymatroid::rank_table(n, table).unwrap()));
    }
    for d in 1..=5u64 {
        for n in 2..=4 {
            out.push((format!("P_{d} on [{n}]"), Polymatroid::veronese(vec![d; n], d).unwrap()));
        }
    }
    for n in 1..=4 {
        for v in vectors(n, 1, 3) {
            out.push((format!("box {v:?}"), Polymatroid::boxed(v).unwrap()));
        }
    }
    for n in 2..=4usize {
        for d in 1..=5u64 {
            for s in vectors(n, 1, d.saturating_sub(1).max(1)) {
                if s.iter().all(|&x| x < d) && d < s.iter().sum() {
                    out.push((format!("Veronese {s:?}/{d}"), Polymatroid::veronese(s, d).unwrap()));
                }
            }
        }
    }
    for n in 3..=4 {
        for i in 2..n {
            let t = TransversalFamily::uniform(n, i).unwrap();
            out.push((format!("uniform {n},{i}"), t.polymatroid().unwrap()));
        }
        for chain in chains(n, 3) {
            let c: Vec<(GroundSubset, u64)> = chain.iter().map(|&a| (a, 2)).collect();
            let t = nested_chain_family(n, &c).unwrap();
            out.push((format!("chain {chain:?}"), t.polymatroid().unwrap()));
        }
        for edges in connected_non_stars(n) {
            let t = complement_presentation(n, &edges);
            out.push((format!("graph {edges:?}"), t.polymatroid().unwrap()));
        }
    }
    out
}

fn facet_cross_check(corpus: &[(String, Polymatroid)]) -> Outcome {
    for (name, p) in corpus {
        let family = closed_inseparable_family(p, DEFAULT_MAX_N).unwrap();
        let g = SemigroupGenerators::from_polymatroid(p, DEFAULT_POINT_CAP).unwrap();
        let forms = cone_facets(&g).map_err(|e| format!("{name}: {e}"))?;
        ensure(forms == edmonds_facets(&family), || format!("{name}: forms differ"))?;
    }
    Ok(format!("{} instances", corpus.len()))
}

fn path_agreement(corpus: &[(String, Polymatroid)]) -> Outcome {
    for (name, p) in corpus {
        let family = closed_inseparable_family(p, DEFAULT_MAX_N).unwrap();
        let g = SemigroupGenerators::from_polymatroid(p, DEFAULT_POINT_CAP).unwrap();
        let forms = cone_facets(&g).unwrap();
        let rank_group = class_group(&family).unwrap().invariants;
        let cone_group = class_group_from_cone(&forms).map_err(|e| format!("{name}: {e}"))?.invariants;
        ensure(rank_group == cone_group, || format!("{name}: {rank_group} vs {cone_group}"))?;
        let omega = canonical_class(&family).unwrap();
        let moved = canonical_from_cone(&forms)
            .and_then(|w| w.transport(omega.presentation()))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(classes_equal(&omega, &moved).unwrap(), || format!("{name}: canonical classes differ"))?;
    }
    Ok(format!("{} instances", corpus.len()))
}

fn principal_nullity(corpus: &[(String, Polymatroid)]) -> Outcome {
    let mut checked = 0;
    for (name, p) in corpus {
        let n = p.n();
        let g = SemigroupGenerators::from_polymatroid(p, DEFAULT_POINT_CAP).unwrap();
        let forms = cone_facets(&g).unwrap();
        for code in 0..3usize.pow(n as u32 + 1) {
            let mut c = code;
            let u: Vec<i64> = (0..=n)
                .map(|_| {
                    let digit = (c % 3) as i64 - 1;
                    c /= 3;
                    digit
                })
                .collect();
            let class = principal_class(&exponent(&u), &forms).map_err(|e| format!("{name}: {e}"))?;
            ensure(class.is_zero(), || format!("{name}: u = {u:?} gives {class}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} exponent vectors over {} instances", corpus.len()))
}

fn transversal_classifications() -> Outcome {
    let mut counts = [0usize; 4];

    // a finite class group exactly when every set is [n], and then Z/sZ
    for n in 1..=3 {
        for s in 1..=3 {
            for sets in presentations(n, s) {
                let t = TransversalFamily::new(n, sets.clone()).unwrap();
                let e = engine(&t.polymatroid().unwrap());
                let all_full = sets.iter().all(|&a| a == GroundSubset::full(n));
                ensure((e.invariants.free_rank == 0) == all_full, || format!("{sets:?}: {}", e.invariants))?;
                if all_full {
                    ensure(e.invariants == GroupInvariants::new(0, s as u64), || format!("{sets:?}"))?;
                    ensure(classify_transversal(&t).predicted() == Some(e.invariants.clone()), || {
                        format!("{sets:?}: classification")
                    })?;
                }
                counts[0] += 1;
            }
        }
    }

    // nested chains
    for n in 1..=5 {
        for chain in chains(n, 3) {
            for ks in vectors(chain.len(), 1, 3) {
                let c: Vec<(GroundSubset, u64)> = chain.iter().copied().zip(ks.iter().copied()).collect();
                let t = nested_chain_family(n, &c).unwrap();
                let e = engine(&t.polymatroid().unwrap());
                let d = ks.iter().fold(0, |a, &b| gcd(a, b));
                let expected = GroupInvariants::new(chain.len() - 1, d);
                ensure(e.invariants == expected, || format!("{c:?}: {}", e.invariants))?;
                let pred = nested_chain_analysis(n, &c).unwrap();
                ensure(pred.matches_family(&e.family) && pred.invariants == e.invariants, || {
                    format!("{c:?}: closed form")
                })?;
                counts[1] += 1;
            }
        }
    }

    // two distinct sets: partitions and nestings
    for n in 2..=5 {
        let full = GroundSubset::full(n);
        for b in all_subsets(n).skip(1).filter(|&b| b != full) {
            for s in 2..=5usize {
                for q in 1..s {
                    let d = gcd(q as u64, (s - q) as u64);
                    let expected = GroupInvariants::new(1, d);
                    let shapes = [(b, full.difference(b)), (b, full)];
                    for (x, y) in shapes {
                        if x.bits() > y.bits() && y != full {
                            continue;
                        }
                        let mut sets = vec![x; q];
                        sets.extend(vec![y; s - q]);
                        let t = TransversalFamily::new(n, sets).unwrap();
                        let e = engine(&t.polymatroid().unwrap());
                        ensure(e.invariants == expected, || format!("{x} x{q}, {y} x{}: {}", s - q, e.invariants))?;
                        let c = classify_transversal(&t);
                        ensure(c.predicted() == Some(expected.clone()), || format!("{x}, {y}: {c:?}"))?;
                        counts[2] += 1;
                    }
                }
            }
        }
    }
    // converse: free rank one only for those two shapes
    for n in 2..=3 {
        for s in 2..=3 {
            for sets in presentations(n, s) {
                let t = TransversalFamily::new(n, sets.clone()).unwrap();
                let e = engine(&t.polymatroid().unwrap());
                let two_shapes = matches!(
                    classify_transversal(&t).tag(),
                    "two-members-partition" | "two-members-nested"
                );
                ensure((e.invariants.free_rank == 1) == two_shapes, || format!("{sets:?}: {}", e.invariants))?;
            }
        }
    }

    // every Z^(r-1) + Z/dZ occurs
    for r in 1..=3usize {
        for d in 1..=4u64 {
            let chain: Vec<(GroundSubset, u64)> = (1..=r).map(|i| (GroundSubset::full(i), d)).collect();
            let t = nested_chain_family(r, &chain).unwrap();
            let e = engine(&t.polymatroid().unwrap());
            ensure(e.invariants == GroupInvariants::new(r - 1, d), || format!("r={r} d={d}: {}", e.invariants))?;
            counts[3] += 1;
        }
    }
    Ok(format!(
        "finite {}, chains {}, two shapes {}, every group {}",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn graph_complements() -> Outcome {
    let mut count = 0;
    let mut graphs = vec![(3, vec![(1, 2), (2, 3), (1, 3)])];
    for n in 4..=5 {
        graphs.extend(connected_non_stars(n).into_iter().map(|g| (n, g)));
    }
    for (n, edges) in graphs {
        let degree = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        let leaves = (1..=n).filter(|&v| degree(v) == 1).count();
        let non_covers = edges
            .iter()
            .filter(|&&(a, b)| edges.iter().any(|&(c, d)| c != a && c != b && d != a && d != b))
            .count();
        let expected_rank = if n == 3 { 2 } else { n - leaves + non_covers };
        let e = engine(&complement_presentation(n, &edges).polymatroid().unwrap());
        ensure(e.invariants == GroupInvariants::new(expected_rank, 1), || {
            format!("n={n} {edges:?}: {} vs rank {expected_rank}", e.invariants)
        })?;
        let pred = graph_complement_family(n, &edges).map_err(|e| e.to_string())?;
        ensure(pred.predicted_free_rank == expected_rank, || format!("{edges:?}: library prediction"))?;
        count += 1;
    }
    Ok(format!("{count} graphs"))
}

/// Violations found by checking the axioms on all pairs of sets.
fn violates_axioms(n: usize, t: &[u64]) -> bool {
    if t[0] != 0 || (0..n).any(|i| t[1 << i] == 0) {
        return true;
    }
    all_subsets(n).any(|a| {
        all_subsets(n).any(|b| {
            let (a, b) = (a.bits() as usize, b.bits() as usize);
            (a & b == a && t[a] > t[b]) || t[a] + t[b] < t[a | b] + t[a & b]
        })
    })
}

fn violation_holds(t: &[u64], v: &Violation) -> bool {
    let r = |s: GroundSubset| t[s.bits() as usize];
    match *v {
        Violation::NotNormalized { value } => t[0] == value && value != 0,
        Violation::NotMonotone { smaller, larger } => smaller.is_subset_of(larger) && r(smaller) > r(larger),
        Violation::NotSubmodular { a, b } => {
            r(a) + r(b) < r(a.union(b)) + r(a.intersection(b))
        }
        Violation::ZeroSingleton { element } => r(GroundSubset::singleton(element)) == 0,
    }
}

fn property_suite(corpus: &[(String, Polymatroid)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut invalid = 0;
    let mut valid_seen = 0;
    while invalid < INVALID_SAMPLES {
        let n = rng.gen_range(2..=4);
        let mut table = random_table(&mut rng, n);
        for _ in 0..rng.gen_range(1..=2) {
            let k = rng.gen_range(0..table.len());
            let delta: i64 = rng.gen_range(-2..=2);
            table[k] = (table[k] as i64 + delta).max(0) as u64;
        }
        let report = Polymatroid::rank_table(n, table.clone()).unwrap().validate();
        if violates_axioms(n, &table) {
            ensure(!report.is_valid(), || format!("accepted invalid table {table:?}"))?;
            for v in &report.violations {
                ensure(violation_holds(&table, v), || format!("{table:?}: spurious {v}"))?;
            }
            invalid += 1;
        } else {
            ensure(report.is_valid(), || format!("rejected valid table {table:?}"))?;
            valid_seen += 1;
        }
    }

    let mut closed_checked = 0;
    let mut shortcut_corpus: Vec<Polymatroid> = corpus.iter().map(|(_, p)| p.clone()).collect();
    for _ in 0..RANDOM_TABLES {
        shortcut_corpus.push(Polymatroid::rank_table(5, random_table(&mut rng, 5)).unwrap());
    }
    for p in &shortcut_corpus {
        let n = p.n();
        for a in all_subsets(n).skip(1) {
            let r = p.rank(a).unwrap();
            let by_definition = all_subsets(n)
                .filter(|b| a.is_subset_of(*b) && *b != a)
                .all(|b| p.rank(b).unwrap() > r);
            ensure(is_closed(p, a).unwrap() == by_definition, || format!("{p:?}: {a}"))?;
            closed_checked += 1;
        }
    }

    let mut witnessed = 0;
    for (name, p) in corpus {
        let g = SemigroupGenerators::from_polymatroid(p, DEFAULT_POINT_CAP).unwrap();
        let forms = cone_facets(&g).unwrap();
        let w = normality_witness(&g, &forms, p.n() as u64, DEFAULT_POINT_CAP).map_err(|e| format!("{name}: {e}"))?;
        ensure(w.passed(), || format!("{name}: hole at {:?}", w.violation))?;
        witnessed += 1;
    }
    Ok(format!(
        "{invalid} invalid tables rejected ({valid_seen} valid accepted), {closed_checked} closedness checks, \
         {witnessed} normality witnesses"
    ))
}

fn main() {
    let corpus_start = Instant::now();
    let corpus = corpus();
    println!("corpus: {} polymatroids built in {:.2?}", corpus.len(), corpus_start.elapsed());
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("AC1 uniform transversal P_{7,4}", Box::new(uniform_transversal)),
        ("AC2 bounded degree P_d", Box::new(bounded_degree)),
        ("AC3 boxes", Box::new(boxes)),
        ("AC4 Veronese Gorenstein classification", Box::new(veronese_classification)),
        ("AC5 Edmonds facets vs double description", Box::new(|| facet_cross_check(&corpus))),
        ("AC6 combinatorial vs cone path", Box::new(|| path_agreement(&corpus))),
        ("AC7 principal divisors vanish", Box::new(|| principal_nullity(&corpus))),
        ("AC8 transversal classifications", Box::new(transversal_classifications)),
        ("AC9 graph complements", Box::new(graph_complements)),
        ("AC10 validation, closedness, normality", Box::new(|| property_suite(&corpus))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{:.2?}]", start.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
