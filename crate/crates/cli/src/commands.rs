//! The `analyze`, `facets` and `verify` commands.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use toric_class::cone::{
    canonical_from_cone, class_group_from_cone, cone_facets, edmonds_facets, exponent,
    format_facets, lattice_index, normality_witness, principal_class, NormalityReport,
    SemigroupGenerators, SupportForm,
};
use toric_class::divisor::{canonical_class, class_group, is_gorenstein, DivisorClass, DivisorPresentation};
use toric_class::families::{
    box_analysis, classify_transversal, graph_complement_family, nested_chain_analysis,
    rank_bounded_analysis, uniform_transversal_analysis, veronese_analysis, ClosedForm,
    TransversalFamily, Verdict, VeroneseParams,
};
use toric_class::foundation::MAX_GROUND_SET;
use toric_class::rank_engine::DEFAULT_POINT_CAP;
use toric_class::structure::{closed_inseparable_family, ClosedInseparableFamily, DEFAULT_MAX_N};
use toric_class::{GroundSubset, GroupInvariants, Polymatroid};

use crate::input::{InputSpec, Instance};
use crate::report::{
    ints, AnalysisReport, Check, ConeReport, GroupReport, Int, MemberReport, NormalityOutcome,
    VerifyReport,
};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub max_n: usize,
    pub point_cap: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { max_n: DEFAULT_MAX_N, point_cap: DEFAULT_POINT_CAP }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub cone: bool,
    pub normality: Option<u64>,
}

/// Largest ground set for which `verify` tries every `u` in `{-1,0,1}^(n+1)`.
const FULL_PRINCIPAL_SWEEP: usize = 5;

fn group_report(g: &GroupInvariants) -> GroupReport {
    GroupReport { free_rank: g.free_rank, torsion: Int::from(&g.torsion), display: g.to_string() }
}

fn normality_outcome(r: NormalityReport) -> NormalityOutcome {
    NormalityOutcome { max_degree: r.max_degree, points_checked: r.points_checked, violation: r.violation }
}

/// `lambda` with `coords = lambda * relation`, if any.
fn multiple_of_relation(coords: &[BigInt], relation: &[BigInt]) -> Option<BigInt> {
    let k = relation.iter().position(|a| !a.is_zero())?;
    if !(&coords[k] % &relation[k]).is_zero() {
        return None;
    }
    let lambda = &coords[k] / &relation[k];
    coords.iter().zip(relation).all(|(c, a)| *c == &lambda * a).then_some(lambda)
}

/// Validated polymatroid within the enumeration cap.
fn checked_polymatroid(p: &Polymatroid, settings: Settings) -> Result<Vec<String>, CliError> {
    if p.n() > settings.max_n {
        return Err(CliError::Resource(format!(
            "n = {} exceeds --max-n {}",
            p.n(),
            settings.max_n
        )));
    }
    let report = p.validate();
    if !report.is_valid() {
        let shown: Vec<String> = report.violations.iter().take(5).map(|v| v.to_string()).collect();
        let more = report.violations.len().saturating_sub(shown.len());
        let suffix = if more > 0 { format!(" (and {more} more)") } else { String::new() };
        return Err(CliError::Input(format!(
            "not a polymatroid rank function: {}{suffix}",
            shown.join("; ")
        )));
    }
    Ok(report.warnings)
}

/// Combinatorial-path results for a polymatroid.
struct RankPath {
    family: ClosedInseparableFamily,
    presentation: DivisorPresentation,
    canonical: DivisorClass,
    gorenstein: Option<u64>,
}

fn rank_path(p: &Polymatroid, settings: Settings) -> Result<RankPath, CliError> {
    let family = closed_inseparable_family(p, settings.max_n)?;
    let presentation = class_group(&family)?;
    let canonical = canonical_class(&family)?;
    let gorenstein = is_gorenstein(&family);
    Ok(RankPath { family, presentation, canonical, gorenstein })
}

/// Cone-path results, from the support forms alone.
struct ConePath {
    forms: Vec<SupportForm>,
    presentation: DivisorPresentation,
    canonical: DivisorClass,
}

fn cone_path(g: &SemigroupGenerators) -> Result<ConePath, CliError> {
    let forms = cone_facets(g)?;
    let presentation = class_group_from_cone(&forms)?;
    let canonical = canonical_from_cone(&forms)?;
    Ok(ConePath { forms, presentation, canonical })
}

/// Everything on which the two paths must agree.
fn compare_paths(rank: &RankPath, cone: &ConePath) -> Vec<Check> {
    let expected_forms = edmonds_facets(&rank.family);
    let canonical_match = match cone.canonical.transport(rank.canonical.presentation()) {
        Ok(moved) => match rank.canonical.equals(&moved) {
            Ok(true) => "equal".to_string(),
            Ok(false) => "different".to_string(),
            Err(e) => e.to_string(),
        },
        Err(e) => format!("not comparable: {e}"),
    };
    let cone_gorenstein = cone.canonical.is_zero();
    vec![
        Check::compare(
            "support forms",
            format_facets(&expected_forms).trim_end().replace('\n', "; "),
            format_facets(&cone.forms).trim_end().replace('\n', "; "),
        ),
        Check::compare("class group", &rank.presentation.invariants, &cone.presentation.invariants),
        Check::compare("canonical class", "equal", canonical_match),
        Check::compare("gorenstein", rank.gorenstein.is_some(), cone_gorenstein),
    ]
}

fn principal_checks(forms: &[SupportForm], n: usize) -> Result<Check, CliError> {
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    if n <= FULL_PRINCIPAL_SWEEP {
        let total = 3usize.pow(n as u32 + 1);
        for code in 0..total {
            let mut c = code;
            vectors.push(
                (0..=n)
                    .map(|_| {
                        let digit = (c % 3) as i64 - 1;
                        c /= 3;
                        digit
                    })
                    .collect(),
            );
        }
    } else {
        for i in 0..=n {
            let mut u = vec![0; n + 1];
            u[i] = 1;
            vectors.push(u);
        }
    }
    let mut failures = Vec::new();
    for u in &vectors {
        if !principal_class(&exponent(u), forms)?.is_zero() {
            failures.push(format!("{u:?}"));
        }
    }
    let actual = if failures.is_empty() {
        format!("zero for {} exponents", vectors.len())
    } else {
        format!("nonzero for {}", failures.join(", "))
    };
    Ok(Check::compare(
        "principal divisors",
        format!("zero for {} exponents", vectors.len()),
        actual,
    ))
}

pub fn analyze(spec: &InputSpec, opts: AnalyzeOptions, settings: Settings) -> Result<AnalysisReport, CliError> {
    match spec.build()? {
        Instance::Polymatroid(p) => analyze_polymatroid(spec, &p, opts, settings),
        Instance::Multicomplex(m) => {
            let g = SemigroupGenerators::from_multicomplex(&m, settings.point_cap)?;
            analyze_cone_only(spec, &g, m.is_generalized(), opts, settings)
        }
    }
}

fn analyze_polymatroid(
    spec: &InputSpec,
    p: &Polymatroid,
    opts: AnalyzeOptions,
    settings: Settings,
) -> Result<AnalysisReport, CliError> {
    let mut warnings = checked_polymatroid(p, settings)?;
    let rank = rank_path(p, settings)?;
    let family = rank
        .family
        .members()
        .iter()
        .map(|m| MemberReport { set: m.set.to_one_based(), rank: m.rank })
        .collect();

    let generators = if opts.cone || opts.normality.is_some() {
        Some(SemigroupGenerators::from_polymatroid(p, settings.point_cap)?)
    } else {
        None
    };
    let mut cone = None;
    let mut forms = None;
    if let (true, Some(g)) = (opts.cone, &generators) {
        let path = cone_path(g)?;
        let mismatches: Vec<String> = compare_paths(&rank, &path)
            .into_iter()
            .filter(|c| !c.ok)
            .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual))
            .collect();
        cone = Some(ConeReport {
            forms: path.forms.iter().map(|f| ints(f.coeffs())).collect(),
            agrees_with_rank_path: Some(mismatches.is_empty()),
            mismatches,
        });
        forms = Some(path.forms);
    }
    let mut normality = None;
    if let (Some(d), Some(g)) = (opts.normality, &generators) {
        let forms = match forms {
            Some(f) => f,
            None => cone_facets(g)?,
        };
        let r = normality_witness(g, &forms, d, settings.point_cap)?;
        if r.violation.is_some() {
            warnings.push("normality witness failed on a polymatroid, which is always normal".into());
        }
        normality = Some(normality_outcome(r));
    }

    Ok(AnalysisReport {
        input: spec.clone(),
        family: Some(family),
        labels: rank.presentation.labels.clone(),
        relation: ints(&rank.presentation.relation),
        class_group: group_report(&rank.presentation.invariants),
        canonical_class: ints(rank.canonical.coords()),
        gorenstein: rank.gorenstein.is_some(),
        gorenstein_a: rank.gorenstein.map(|a| Int(BigInt::from(a))),
        cone,
        normality,
        warnings,
    })
}

fn analyze_cone_only(
    spec: &InputSpec,
    g: &SemigroupGenerators,
    generalized: bool,
    opts: AnalyzeOptions,
    settings: Settings,
) -> Result<AnalysisReport, CliError> {
    let mut warnings = Vec::new();
    let path = cone_path(g)?;
    if !lattice_index(g).is_one() {
        warnings.push("the generators do not span the full lattice".into());
    }
    let degree = opts.normality.unwrap_or(g.n() as u64);
    let witness = normality_witness(g, &path.forms, degree, settings.point_cap)?;
    if let Some(v) = &witness.violation {
        warnings.push(format!(
            "the semigroup is not normal ({v:?} is a hole); the class group and canonical class \
             formulas assume a normal ring"
        ));
    }
    if generalized {
        warnings.push("generalized input: the listed points are used as generators as is".into());
    }
    let a = multiple_of_relation(path.canonical.coords(), &path.presentation.relation);
    Ok(AnalysisReport {
        input: spec.clone(),
        family: None,
        labels: path.presentation.labels.clone(),
        relation: ints(&path.presentation.relation),
        class_group: group_report(&path.presentation.invariants),
        canonical_class: ints(path.canonical.coords()),
        gorenstein: a.is_some(),
        gorenstein_a: a.map(Int),
        cone: opts.cone.then(|| ConeReport {
            forms: path.forms.iter().map(|f| ints(f.coeffs())).collect(),
            agrees_with_rank_path: None,
            mismatches: Vec::new(),
        }),
        normality: Some(normality_outcome(witness)),
        warnings,
    })
}

/// Support form dump, with the Edmonds comparison for polymatroid input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetsOutcome {
    pub dump: String,
    /// Set when the forms differ from the Edmonds prediction.
    pub mismatch: Option<String>,
}

pub fn facets(spec: &InputSpec, settings: Settings) -> Result<FacetsOutcome, CliError> {
    match spec.build()? {
        Instance::Polymatroid(p) => {
            checked_polymatroid(&p, settings)?;
            let g = SemigroupGenerators::from_polymatroid(&p, settings.point_cap)?;
            let forms = cone_facets(&g)?;
            let family = closed_inseparable_family(&p, settings.max_n)?;
            let expected = edmonds_facets(&family);
            let mismatch = (forms != expected).then(|| {
                format!(
                    "expected the Edmonds forms\n{}but double description found\n{}",
                    format_facets(&expected),
                    format_facets(&forms)
                )
            });
            Ok(FacetsOutcome { dump: format_facets(&forms), mismatch })
        }
        Instance::Multicomplex(m) => {
            let g = SemigroupGenerators::from_multicomplex(&m, settings.point_cap)?;
            Ok(FacetsOutcome { dump: format_facets(&cone_facets(&g)?), mismatch: None })
        }
    }
}

pub fn verify(spec: &InputSpec, settings: Settings) -> Result<VerifyReport, CliError> {
    match spec.build()? {
        Instance::Polymatroid(p) => {
            let mut warnings = checked_polymatroid(&p, settings)?;
            let rank = rank_path(&p, settings)?;
            let g = SemigroupGenerators::from_polymatroid(&p, settings.point_cap)?;
            let cone = cone_path(&g)?;
            let mut checks = compare_paths(&rank, &cone);
            checks.push(principal_checks(&cone.forms, p.n())?);
            checks.extend(closed_form_checks(spec, &rank, settings, &mut warnings)?);
            Ok(VerifyReport::new(spec.clone(), checks, warnings))
        }
        Instance::Multicomplex(m) => {
            let g = SemigroupGenerators::from_multicomplex(&m, settings.point_cap)?;
            let cone = cone_path(&g)?;
            let mut warnings = Vec::new();
            let witness = normality_witness(&g, &cone.forms, m.n() as u64, settings.point_cap)?;
            if let Some(v) = witness.violation {
                warnings.push(format!("the semigroup is not normal ({v:?} is a hole)"));
            }
            let checks = vec![
                Check::compare("lattice index", 1, lattice_index(&g)),
                principal_checks(&cone.forms, m.n())?,
            ];
            Ok(VerifyReport::new(spec.clone(), checks, warnings))
        }
    }
}

fn prediction_checks(name: &str, pred: &ClosedForm, rank: &RankPath) -> Vec<Check> {
    let mut checks = vec![
        Check::compare(
            format!("{name}: family"),
            "matches",
            if pred.matches_family(&rank.family) { "matches" } else { "differs" },
        ),
        Check::compare(format!("{name}: class group"), &pred.invariants, &rank.presentation.invariants),
    ];
    if let Some(v) = pred.gorenstein {
        checks.push(Check::compare(
            format!("{name}: gorenstein"),
            format!("{v:?}"),
            format!("{:?}", Verdict::from(rank.gorenstein)),
        ));
    }
    checks
}

/// Closed-form predictions that apply to the input, compared with the
/// combinatorial path.
fn closed_form_checks(
    spec: &InputSpec,
    rank: &RankPath,
    settings: Settings,
    warnings: &mut Vec<String>,
) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let actual = &rank.presentation.invariants;
    match spec {
        InputSpec::Box { v, .. } => {
            checks.extend(prediction_checks("box formula", &box_analysis(v)?, rank));
        }
        InputSpec::Veronese { n, s, d } => {
            if s.iter().all(|x| x == d) {
                checks.extend(prediction_checks("bounded degree formula", &rank_bounded_analysis(*n, *d)?, rank));
            }
            let mut sorted = s.clone();
            sorted.sort();
            match VeroneseParams::new(sorted, *d) {
                Ok(params) => {
                    let a = veronese_analysis(&params, settings.max_n)?;
                    match a.deferred {
                        Some(note) => warnings.push(format!("Veronese closed form skipped: {note}")),
                        None => {
                            // only the class group and verdict are label independent
                            checks.push(Check::compare(
                                "Veronese formula: class group",
                                &a.prediction.invariants,
                                actual,
                            ));
                            if let Some(v) = a.prediction.gorenstein {
                                checks.push(Check::compare(
                                    "Veronese formula: gorenstein",
                                    format!("{v:?}"),
                                    format!("{:?}", Verdict::from(rank.gorenstein)),
                                ));
                            }
                        }
                    }
                }
                Err(e) => warnings.push(format!("Veronese closed form skipped: {e}")),
            }
        }
        InputSpec::Transversal { n, sets } => {
            let sets: Vec<GroundSubset> = sets
                .iter()
                .map(|s| GroundSubset::from_one_based(s, *n))
                .collect::<Result<_, _>>()?;
            let t = match TransversalFamily::new(*n, sets) {
                Ok(t) => t,
                Err(e) => {
                    warnings.push(format!("transversal formulas skipped: {e}"));
                    return Ok(checks);
                }
            };
            let c = classify_transversal(&t);
            if let Some(pred) = c.predicted() {
                checks.push(Check::compare(format!("{} case: class group", c.tag()), pred, actual));
            } else if let Some(torsion) = c.predicted_torsion() {
                checks.push(Check::compare(format!("{} case: torsion", c.tag()), torsion, &actual.torsion));
            }
            if let Some(i) = uniform_size(&t) {
                checks.extend(prediction_checks("uniform family", &uniform_transversal_analysis(*n, i)?, rank));
            }
            if let Some(chain) = nested_chain(&t) {
                checks.extend(prediction_checks("nested chain", &nested_chain_analysis(*n, &chain)?, rank));
            }
            if let Some(edges) = complement_edges(&t) {
                if let Ok(pred) = graph_complement_family(*n, &edges) {
                    checks.push(Check::compare(
                        "graph complement: class group",
                        GroupInvariants::new(pred.predicted_free_rank, 1),
                        actual,
                    ));
                }
            }
        }
        _ => {}
    }
    Ok(checks)
}

/// `i` when the sets are exactly the `i`-subsets of `[n]`, `1 < i < n`.
fn uniform_size(t: &TransversalFamily) -> Option<usize> {
    let n = t.n();
    let i = t.sets().first()?.len();
    if !(1 < i && i < n) || t.sets().iter().any(|s| s.len() != i) {
        return None;
    }
    let counts = t.multiplicities();
    let expected = toric_class::foundation::all_subsets(n).filter(|s| s.len() == i).count();
    (counts.values().all(|&c| c == 1) && counts.len() == expected).then_some(i)
}

/// The distinct sets as a chain ending in `[n]`, with multiplicities.
fn nested_chain(t: &TransversalFamily) -> Option<Vec<(GroundSubset, u64)>> {
    let mut chain: Vec<(GroundSubset, u64)> =
        t.multiplicities().into_iter().map(|(s, k)| (s, k as u64)).collect();
    chain.sort_by_key(|(s, _)| s.len());
    let nested = chain.windows(2).all(|w| w[0].0.is_subset_of(w[1].0) && w[0].0 != w[1].0);
    (nested && chain.last()?.0 == GroundSubset::full(t.n())).then_some(chain)
}

/// 1-based edges when every set is the complement of a distinct pair.
fn complement_edges(t: &TransversalFamily) -> Option<Vec<(usize, usize)>> {
    let n = t.n();
    if n < 3 || n > MAX_GROUND_SET || t.multiplicities().values().any(|&c| c > 1) {
        return None;
    }
    t.sets()
        .iter()
        .map(|s| {
            let e: Vec<usize> = s.complement(n).to_one_based();
            (e.len() == 2).then(|| (e[0], e[1]))
        })
        .collect()
}
