//! Seeded exact sampling of Ω and the checks run over those samples:
//! bound containment for `k > 0`, the equality loci of both bounds, three-way
//! agreement of the ratio oracles, and an empirical (non-certified) envelope
//! for `k ∈ (−1, 0)`.
//!
//! Samples are evaluated independently through [`crate::par::map`] and merged
//! by sample index, so reports do not depend on the number of workers.

use std::collections::HashSet;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::crosscut::{
    closed_form_inner_vertices, crosscut_figure, sharp_bounds, CrosscutError, KParam,
};
use crate::geometry::{in_omega, CanonicalParams};
use crate::par::{self, Execution};
use crate::poly::{build_p, q_factors, MPoly};
use crate::rational::{format_rational, int, serde_str, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("k = {k} is outside {range}", k = format_rational(.0), range = .1)]
    Domain(Rational, &'static str),
    #[error("invalid sample spec: {0}")]
    InvalidSpec(&'static str),
    #[error("equality locus violated at {point}: {detail}")]
    LocusViolation {
        point: Box<CanonicalParams>,
        detail: String,
    },
    #[error(transparent)]
    Crosscut(#[from] CrosscutError),
}

/// How Ω is sampled. Ω is unbounded; samples are taken from `Ω ∩ [0, box_max]²`
/// plus explicit extra points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpec {
    pub seed: u64,
    pub grid_step: Rational,
    pub box_max: Rational,
    pub random_count: usize,
    pub denominator_bound: u64,
    /// Always extended with `(1,0), (0,1), (1,1)`.
    pub extra_points: Vec<CanonicalParams>,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            seed: 1943,
            grid_step: Rational::new(1.into(), 10.into()),
            box_max: int(4),
            random_count: 500,
            denominator_bound: 64,
            extra_points: Vec::new(),
        }
    }
}

impl SampleSpec {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if !self.grid_step.is_positive() {
            return Err(VerifyError::InvalidSpec("grid_step must be positive"));
        }
        if self.box_max < int(1) {
            return Err(VerifyError::InvalidSpec("box_max must be at least 1"));
        }
        if self.denominator_bound == 0 {
            return Err(VerifyError::InvalidSpec(
                "denominator_bound must be positive",
            ));
        }
        Ok(())
    }

    /// The points where the bounds are attained; present in every sample.
    pub fn mandatory_points() -> [CanonicalParams; 3] {
        [(1, 0), (0, 1), (1, 1)]
            .map(|(a, b)| CanonicalParams::new(int(a), int(b)).expect("mandatory points lie in Ω"))
    }
}

fn floor_to_u64(value: &Rational) -> u64 {
    value.floor().to_integer().to_u64().unwrap_or(0)
}

/// Deterministic sample of Ω: mandatory points, `extra_points`, the grid,
/// then `random_count` random rationals with denominators up to
/// `denominator_bound`, rejection-sampled into Ω. Duplicates are dropped,
/// keeping the first occurrence.
pub fn sample_omega(spec: &SampleSpec) -> Result<Vec<CanonicalParams>, VerifyError> {
    spec.validate()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |p: CanonicalParams, out: &mut Vec<CanonicalParams>| {
        if seen.insert(p.clone()) {
            out.push(p);
        }
    };
    for p in SampleSpec::mandatory_points()
        .into_iter()
        .chain(spec.extra_points.iter().cloned())
    {
        push(p, &mut out);
    }
    let steps = floor_to_u64(&(&spec.box_max / &spec.grid_step));
    for i in 0..=steps {
        for j in 0..=steps {
            let a = &spec.grid_step * int(i as i64);
            let b = &spec.grid_step * int(j as i64);
            if in_omega(&a, &b) {
                push(CanonicalParams { a, b }, &mut out);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let coordinate = |rng: &mut ChaCha8Rng| {
        let den = rng.gen_range(1..=spec.denominator_bound);
        let top = floor_to_u64(&(&spec.box_max * int(den as i64)));
        let num = rng.gen_range(0..=top);
        Rational::new(num.into(), den.into())
    };
    for _ in 0..spec.random_count {
        loop {
            let a = coordinate(&mut rng);
            let b = coordinate(&mut rng);
            if in_omega(&a, &b) {
                push(CanonicalParams { a, b }, &mut out);
                break;
            }
        }
    }
    Ok(out)
}

/// `P/Q` at `(a, b, k)`; `None` where a factor of `Q` vanishes.
pub fn pq_ratio(
    p: &MPoly,
    q_factors: &[MPoly; 5],
    params: &CanonicalParams,
    k: &Rational,
) -> Option<Rational> {
    let point = [params.a.clone(), params.b.clone(), k.clone()];
    let mut q = int(1);
    for f in q_factors {
        let v = f.eval(&point);
        if v.is_zero() {
            return None;
        }
        q *= v;
    }
    Some(p.eval(&point) / q)
}

/// Whether `(a, b)` lies on `bk + 1 − a − ak = 0` or `b + bk − 1 + ak − 2k = 0`.
pub fn on_upper_locus(params: &CanonicalParams, k: &Rational) -> bool {
    let (a, b) = (&params.a, &params.b);
    let one = int(1);
    let line1 = b * k + &one - a - a * k;
    let line2 = b + b * k - &one + a * k - int(2) * k;
    line1.is_zero() || line2.is_zero()
}

pub fn is_lower_equality_point(params: &CanonicalParams) -> bool {
    let (a, b) = (&params.a, &params.b);
    (a == &int(1) && b.is_zero()) || (a.is_zero() && b == &int(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityHit {
    pub point: CanonicalParams,
    pub bound: Bound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    BelowLower {
        point: CanonicalParams,
        #[serde(with = "serde_str")]
        ratio: Rational,
    },
    AboveUpper {
        point: CanonicalParams,
        #[serde(with = "serde_str")]
        ratio: Rational,
    },
    ConstructionFailed {
        point: CanonicalParams,
        error: String,
    },
}

/// A sample where the three ratio oracles disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub point: CanonicalParams,
    #[serde(with = "serde_str")]
    pub geometric: Rational,
    #[serde(with = "serde_str::option")]
    pub polynomial: Option<Rational>,
    #[serde(with = "serde_str::option")]
    pub closed_form: Option<Rational>,
}

/// A sample where "ratio equals a bound" disagrees with the predicted
/// equality locus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocusMismatch {
    pub point: CanonicalParams,
    pub bound: Bound,
    pub attains: bool,
    pub predicted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    #[serde(with = "serde_str")]
    pub k: Rational,
    #[serde(with = "serde_str")]
    pub lower: Rational,
    #[serde(with = "serde_str")]
    pub upper: Rational,
    pub samples_checked: usize,
    pub violations: Vec<Violation>,
    #[serde(with = "serde_str")]
    pub min_ratio: Rational,
    pub min_at: Vec<CanonicalParams>,
    #[serde(with = "serde_str")]
    pub max_ratio: Rational,
    pub max_at: Vec<CanonicalParams>,
    pub equality_hits: Vec<EqualityHit>,
    pub oracle_mismatches: Vec<OracleMismatch>,
    pub locus_mismatches: Vec<LocusMismatch>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self.oracle_mismatches.is_empty()
            && self.locus_mismatches.is_empty()
    }
}

struct BoundsSample {
    ratio: Result<Rational, CrosscutError>,
    polynomial: Option<Rational>,
    closed_form: Option<Rational>,
}

fn evaluate_bounds_sample(
    params: &CanonicalParams,
    k: &KParam,
    p: &MPoly,
    qf: &[MPoly; 5],
) -> BoundsSample {
    let figure = crosscut_figure(&params.quadrilateral(), k);
    let closed_form = closed_form_inner_vertices(params, k)
        .ok()
        .map(|iv| iv.area() * int(2) / (&params.a + &params.b));
    BoundsSample {
        ratio: figure.map(|f| f.ratio),
        polynomial: pq_ratio(p, qf, params, k.value()),
        closed_form,
    }
}

/// Tracks the extreme values and every point attaining them.
struct Extrema {
    min: Option<(Rational, Vec<CanonicalParams>)>,
    max: Option<(Rational, Vec<CanonicalParams>)>,
}

impl Extrema {
    fn new() -> Self {
        Extrema {
            min: None,
            max: None,
        }
    }

    fn observe(&mut self, value: &Rational, point: &CanonicalParams) {
        match &mut self.min {
            Some((m, at)) if value == m => at.push(point.clone()),
            Some((m, _)) if value > m => {}
            _ => self.min = Some((value.clone(), vec![point.clone()])),
        }
        match &mut self.max {
            Some((m, at)) if value == m => at.push(point.clone()),
            Some((m, _)) if value < m => {}
            _ => self.max = Some((value.clone(), vec![point.clone()])),
        }
    }
}

/// Checks `lower ≤ s/S ≤ upper` exactly at every sample, the equality
/// characterization of both bounds, and agreement of the geometric ratio
/// with `P/Q` and with the closed-form inner vertices.
pub fn verify_bounds(spec: &SampleSpec, k: &Rational) -> Result<BoundsReport, VerifyError> {
    verify_bounds_with(spec, k, Execution::Parallel)
}

pub fn verify_bounds_with(
    spec: &SampleSpec,
    k: &Rational,
    execution: Execution,
) -> Result<BoundsReport, VerifyError> {
    if !k.is_positive() {
        return Err(VerifyError::Domain(k.clone(), "k > 0"));
    }
    let kp = KParam::from_segment_ratio(k.clone())?;
    let (lower, upper) = sharp_bounds(k)?;
    let samples = sample_omega(spec)?;
    let p = build_p();
    let qf = q_factors();
    let evaluated = par::map(&samples, execution, |params| {
        evaluate_bounds_sample(params, &kp, &p, &qf)
    });

    let mut violations = Vec::new();
    let mut equality_hits = Vec::new();
    let mut oracle_mismatches = Vec::new();
    let mut locus_mismatches = Vec::new();
    let mut extrema = Extrema::new();
    for (point, sample) in samples.iter().zip(evaluated) {
        let ratio = match sample.ratio {
            Ok(r) => r,
            Err(e) => {
                violations.push(Violation::ConstructionFailed {
                    point: point.clone(),
                    error: e.to_string(),
                });
                continue;
            }
        };
        extrema.observe(&ratio, point);
        if ratio < lower {
            violations.push(Violation::BelowLower {
                point: point.clone(),
                ratio: ratio.clone(),
            });
        }
        if ratio > upper {
            violations.push(Violation::AboveUpper {
                point: point.clone(),
                ratio: ratio.clone(),
            });
        }
        for (bound, value, predicted) in [
            (Bound::Lower, &lower, is_lower_equality_point(point)),
            (Bound::Upper, &upper, on_upper_locus(point, k)),
        ] {
            let attains = &ratio == value;
            if attains {
                equality_hits.push(EqualityHit {
                    point: point.clone(),
                    bound,
                });
            }
            if attains != predicted {
                locus_mismatches.push(LocusMismatch {
                    point: point.clone(),
                    bound,
                    attains,
                    predicted,
                });
            }
        }
        if sample.polynomial.as_ref() != Some(&ratio) || sample.closed_form.as_ref() != Some(&ratio)
        {
            oracle_mismatches.push(OracleMismatch {
                point: point.clone(),
                geometric: ratio,
                polynomial: sample.polynomial,
                closed_form: sample.closed_form,
            });
        }
    }
    let (min_ratio, min_at) = extrema.min.unwrap_or((int(0), Vec::new()));
    let (max_ratio, max_at) = extrema.max.unwrap_or((int(0), Vec::new()));
    Ok(BoundsReport {
        k: k.clone(),
        lower,
        upper,
        samples_checked: samples.len(),
        violations,
        min_ratio,
        min_at,
        max_ratio,
        max_at,
        equality_hits,
        oracle_mismatches,
        locus_mismatches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocusReport {
    #[serde(with = "serde_str")]
    pub k: Rational,
    /// Points of Ω on `a = (bk+1)/(k+1)` where `s/S` equals the upper bound.
    pub line1_points: Vec<CanonicalParams>,
    /// Points of Ω on `a = (1+2k−b−bk)/k` where `s/S` equals the upper bound.
    pub line2_points: Vec<CanonicalParams>,
    /// Samples off `(1,0), (0,1)` found strictly above the lower bound.
    pub strict_lower_samples: usize,
}

/// Points of Ω on the two upper-equality lines, `count` per line.
pub fn upper_locus_points(
    k: &Rational,
    count: usize,
) -> (Vec<CanonicalParams>, Vec<CanonicalParams>) {
    let one = int(1);
    let two = int(2);
    // line 1: a = (bk+1)/(k+1), in Ω iff b ≥ k/(2k+1)
    let b_start = k / (&two * k + &one);
    let line1 = (0..count)
        .map(|j| {
            let b = &b_start + Rational::new((j as i64).into(), 2.into());
            let a = (&b * k + &one) / (k + &one);
            CanonicalParams::new(a, b).expect("line 1 point lies in Ω")
        })
        .collect();
    // line 2: a = (1+2k−b−bk)/k, in Ω iff 0 ≤ b ≤ (1+2k)/(1+k)
    let b_end = (&one + &two * k) / (&one + k);
    let steps = int(count.saturating_sub(1).max(1) as i64);
    let line2 = (0..count)
        .map(|j| {
            let b = &b_end * int(j as i64) / &steps;
            let a = (&one + &two * k - &b - &b * k) / k;
            CanonicalParams::new(a, b).expect("line 2 point lies in Ω")
        })
        .collect();
    (line1, line2)
}

/// Confirms where each bound is attained: the upper bound at `count` points
/// on each of the two lines, the lower bound at `(1,0)` and `(0,1)`, strict
/// inequality `s/S > lower` at every other sample of `spec`, and that `(1,1)`
/// lies on both lines.
pub fn equality_locus_check(
    k: &Rational,
    count: usize,
    spec: &SampleSpec,
) -> Result<LocusReport, VerifyError> {
    let kp = KParam::from_segment_ratio(k.clone())
        .map_err(|_| VerifyError::Domain(k.clone(), "k > 0"))?;
    let (lower, upper) = sharp_bounds(k)?;
    let violation = |point: &CanonicalParams, detail: String| VerifyError::LocusViolation {
        point: Box::new(point.clone()),
        detail,
    };
    let ratio_at = |p: &CanonicalParams| crosscut_figure(&p.quadrilateral(), &kp).map(|f| f.ratio);

    let (line1, line2) = upper_locus_points(k, count);
    for p in line1.iter().chain(&line2) {
        let r = ratio_at(p)?;
        if r != upper {
            return Err(violation(
                p,
                format!(
                    "ratio {} ≠ upper {}",
                    format_rational(&r),
                    format_rational(&upper)
                ),
            ));
        }
    }
    for p in SampleSpec::mandatory_points().iter().take(2) {
        let r = ratio_at(p)?;
        if r != lower {
            return Err(violation(
                p,
                format!(
                    "ratio {} ≠ lower {}",
                    format_rational(&r),
                    format_rational(&lower)
                ),
            ));
        }
    }
    let samples = sample_omega(spec)?;
    let ratios = par::map(&samples, Execution::Parallel, |p| ratio_at(p));
    let mut strict = 0;
    for (p, r) in samples.iter().zip(ratios) {
        if is_lower_equality_point(p) {
            continue;
        }
        let r = r?;
        if r <= lower {
            return Err(violation(
                p,
                format!(
                    "ratio {} not strictly above lower {}",
                    format_rational(&r),
                    format_rational(&lower)
                ),
            ));
        }
        strict += 1;
    }
    let unit = &SampleSpec::mandatory_points()[2];
    let one = int(1);
    let on1 = (&unit.b * k + &one - &unit.a - &unit.a * k).is_zero();
    let on2 = (&unit.b + &unit.b * k - &one + &unit.a * k - int(2) * k).is_zero();
    if !(on1 && on2) {
        return Err(violation(
            unit,
            "(1,1) is not on both upper-equality lines".into(),
        ));
    }
    Ok(LocusReport {
        k: k.clone(),
        line1_points: line1,
        line2_points: line2,
        strict_lower_samples: strict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplorationRecord {
    #[serde(with = "serde_str")]
    pub a: Rational,
    #[serde(with = "serde_str")]
    pub b: Rational,
    #[serde(with = "serde_str::option")]
    pub ratio: Option<Rational>,
    pub simple: Option<bool>,
    pub inner_inside: Option<bool>,
    /// Set when the construction fails, e.g. two cevians are parallel.
    pub failure: Option<String>,
    /// `P/Q` where every factor of `Q` is nonzero.
    #[serde(with = "serde_str::option")]
    pub pq: Option<Rational>,
    pub pq_agrees: Option<bool>,
}

/// Empirical envelope of `s/S` for `k ∈ (−1, 0)`. Nothing here is a proven
/// bound; the report is labelled accordingly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplorationReport {
    pub label: &'static str,
    #[serde(with = "serde_str")]
    pub k: Rational,
    pub samples: usize,
    #[serde(with = "serde_str")]
    pub grid_step: Rational,
    #[serde(with = "serde_str")]
    pub box_max: Rational,
    pub random_count: usize,
    pub seed: u64,
    pub failures: usize,
    #[serde(with = "serde_str::option")]
    pub empirical_min: Option<Rational>,
    pub min_at: Vec<CanonicalParams>,
    #[serde(with = "serde_str::option")]
    pub empirical_max: Option<Rational>,
    pub max_at: Vec<CanonicalParams>,
    pub pq_agreements: usize,
    pub pq_disagreements: usize,
    pub records: Vec<ExplorationRecord>,
}

pub const CONJECTURAL: &str = "CONJECTURAL";

pub fn empirical_extrema(
    spec: &SampleSpec,
    k: &Rational,
) -> Result<ExplorationReport, VerifyError> {
    empirical_extrema_with(spec, k, Execution::Parallel)
}

pub fn empirical_extrema_with(
    spec: &SampleSpec,
    k: &Rational,
    execution: Execution,
) -> Result<ExplorationReport, VerifyError> {
    if !(k > &int(-1) && k.is_negative()) {
        return Err(VerifyError::Domain(k.clone(), "(-1, 0)"));
    }
    explore(spec, k, execution)
}

/// Exploration without the `(−1, 0)` restriction; any `k > −1`.
pub(crate) fn explore(
    spec: &SampleSpec,
    k: &Rational,
    execution: Execution,
) -> Result<ExplorationReport, VerifyError> {
    let kp = KParam::from_any(k.clone())?;
    let samples = sample_omega(spec)?;
    let p = build_p();
    let qf = q_factors();
    let records = par::map(&samples, execution, |params| {
        let pq = pq_ratio(&p, &qf, params, k);
        match crosscut_figure(&params.quadrilateral(), &kp) {
            Ok(fig) => ExplorationRecord {
                a: params.a.clone(),
                b: params.b.clone(),
                pq_agrees: pq.as_ref().map(|v| v == &fig.ratio),
                ratio: Some(fig.ratio),
                simple: Some(fig.inner_simple),
                inner_inside: Some(fig.inner_inside),
                failure: None,
                pq,
            },
            Err(e) => ExplorationRecord {
                a: params.a.clone(),
                b: params.b.clone(),
                ratio: None,
                simple: None,
                inner_inside: None,
                failure: Some(e.to_string()),
                pq_agrees: None,
                pq,
            },
        }
    });
    let mut extrema = Extrema::new();
    for (point, rec) in samples.iter().zip(&records) {
        if let Some(r) = &rec.ratio {
            extrema.observe(r, point);
        }
    }
    let (empirical_min, min_at) = extrema
        .min
        .map_or((None, Vec::new()), |(v, at)| (Some(v), at));
    let (empirical_max, max_at) = extrema
        .max
        .map_or((None, Vec::new()), |(v, at)| (Some(v), at));
    Ok(ExplorationReport {
        label: CONJECTURAL,
        k: k.clone(),
        samples: samples.len(),
        grid_step: spec.grid_step.clone(),
        box_max: spec.box_max.clone(),
        random_count: spec.random_count,
        seed: spec.seed,
        failures: records.iter().filter(|r| r.failure.is_some()).count(),
        empirical_min,
        min_at,
        empirical_max,
        max_at,
        pq_agreements: records.iter().filter(|r| r.pq_agrees == Some(true)).count(),
        pq_disagreements: records
            .iter()
            .filter(|r| r.pq_agrees == Some(false))
            .count(),
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    #[serde(with = "serde_str")]
    pub k: Rational,
    #[serde(with = "serde_str::option")]
    pub lower: Option<Rational>,
    #[serde(with = "serde_str::option")]
    pub upper: Option<Rational>,
    #[serde(with = "serde_str::option")]
    pub empirical_min: Option<Rational>,
    #[serde(with = "serde_str::option")]
    pub empirical_max: Option<Rational>,
    pub samples: usize,
    pub equality_hits: usize,
    /// Bound violations or oracle/locus disagreements (`k > 0` rows only).
    pub defects: usize,
}

/// One row per `k`: closed-form bounds and the full bound check for `k > 0`,
/// the empirical envelope only for `k ∈ (−1, 0)`, and the constant row 1 for
/// `k = 0`.
pub fn scan_k(ks: &[Rational], spec: &SampleSpec) -> Result<Vec<ScanRow>, VerifyError> {
    scan_k_with(ks, spec, Execution::Parallel)
}

pub fn scan_k_with(
    ks: &[Rational],
    spec: &SampleSpec,
    execution: Execution,
) -> Result<Vec<ScanRow>, VerifyError> {
    ks.iter()
        .map(|k| {
            if k <= &int(-1) {
                return Err(VerifyError::Domain(k.clone(), "k > -1"));
            }
            if k.is_positive() {
                let r = verify_bounds_with(spec, k, execution)?;
                return Ok(ScanRow {
                    k: k.clone(),
                    defects: r.violations.len()
                        + r.oracle_mismatches.len()
                        + r.locus_mismatches.len(),
                    lower: Some(r.lower),
                    upper: Some(r.upper),
                    empirical_min: Some(r.min_ratio),
                    empirical_max: Some(r.max_ratio),
                    samples: r.samples_checked,
                    equality_hits: r.equality_hits.len(),
                });
            }
            let r = explore(spec, k, execution)?;
            Ok(ScanRow {
                k: k.clone(),
                lower: None,
                upper: None,
                empirical_min: r.empirical_min,
                empirical_max: r.empirical_max,
                samples: r.samples,
                equality_hits: 0,
                defects: 0,
            })
        })
        .collect()
}
