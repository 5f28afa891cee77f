use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{
    MaxArg, ReportGrid, ReportParams, Verdict, VerificationReport, SCHEMA_VERSION,
};
use crate::bohr::{BohrParams, SampleMode, WeightFamily};
use crate::error::{Error, Result};
use crate::extremals::{self, closed_form_value, sharpness_witness, ExtremalSpec, DEFAULT_ORDER};
use crate::quaternion::sample_boundary;
use crate::radii;
use crate::theorem::TheoremId;

/// Slack on `max value + tail ≤ 1`.
pub const CERTIFY_TOL: f64 = 1e-9;
/// Distance beyond the radius at which the witness is sought.
pub const WITNESS_OFFSET: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub radii: usize,
    pub order: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 256,
            radii: 32,
            order: DEFAULT_ORDER,
        }
    }
}

#[derive(Debug, Clone)]
struct Point {
    r: f64,
    value: f64,
    tail: f64,
    source: String,
}

impl Point {
    fn bound(&self) -> f64 {
        self.value + self.tail
    }
}

/// Keeps the first point with the largest `value + tail`.
fn keep_max(best: Option<Point>, p: Point) -> Option<Point> {
    match best {
        Some(b) if !(p.bound() > b.bound()) && !p.bound().is_nan() => Some(b),
        _ => Some(p),
    }
}

/// Certifies one theorem below its radius and checks sharpness above it.
pub fn verify(
    theorem: TheoremId,
    params: &BohrParams,
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    if cfg.radii == 0 || cfg.order == 0 {
        return Err(Error::InvalidArgument(
            "radii and order must be positive".into(),
        ));
    }
    let params = theorem.effective_params(params);
    params.check_d()?;
    params.weight.validate()?;
    let radius = theorem.radius(&params)?;
    let class = theorem.class();
    let functional = theorem.functional();
    let family = theorem.family();

    let mut grid: Vec<f64> = (1..=cfg.radii)
        .map(|j| radius * j as f64 / cfg.radii as f64)
        .collect();
    *grid.last_mut().expect("nonempty grid") = radius;
    let ladder: Vec<f64> = if theorem.a_ladder().is_empty() {
        vec![0.0]
    } else {
        theorem.a_ladder().to_vec()
    };
    let order = match &params.weight {
        WeightFamily::UserSeries(ws) => cfg.order.min(ws.len().max(1)),
        WeightFamily::Monomial(_) => cfg.order,
    };

    let mut report = VerificationReport {
        schema: SCHEMA_VERSION,
        theorem_id: theorem,
        params: ReportParams {
            m: theorem.uses_m().then_some(params.m),
            n: params.degree(),
            d: params.d.clone(),
            class,
            functional,
            weight: params.weight.name().into(),
            l_value: None,
        },
        radius,
        grid: ReportGrid {
            r: grid.clone(),
            samples: cfg.samples,
            seed: cfg.seed,
            order,
            a_ladder: theorem.a_ladder().to_vec(),
        },
        max_value: None,
        max_arg: None,
        tail_bound: None,
        extremal_limit_at_radius: None,
        witness: None,
        verdict: Verdict::Inconclusive,
        explanation: String::new(),
    };

    if theorem == TheoremId::T1_6 {
        let l = radii::l_condition(&params.d, params.m)?;
        report.params.l_value = Some(l.value);
        if !l.admissible {
            report.explanation = format!("L(d) > m: L(d) = {} exceeds m = {}", l.value, params.m);
            return Ok(report);
        }
    }

    let mut best: Option<Point> = None;

    let u = sample_boundary(cfg.seed);
    for &a in &ladder {
        let f = extremals::build(&ExtremalSpec::new(family, a, u, order))?;
        for &r in &grid {
            let (value, tail) = functional.evaluate_with_tail(&f, r, &params, class)?;
            best = keep_max(
                best,
                Point {
                    r,
                    value,
                    tail: tail.value,
                    source: format!("extremal {family} a={a}"),
                },
            );
            let value = closed_form_value(family, functional, r, a, &params)?;
            best = keep_max(
                best,
                Point {
                    r,
                    value,
                    tail: 0.0,
                    source: format!("closed_form {family} a={a}"),
                },
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seeds: Vec<u64> = (0..cfg.samples).map(|_| rng.random()).collect();
    let per_sample: Vec<Result<Option<Point>>> = seeds
        .par_iter()
        .enumerate()
        .map(|(s, &seed)| {
            let mode = if s % 2 == 0 {
                SampleMode::Interior
            } else {
                SampleMode::Boundary
            };
            let f = class.sample(order, seed, mode);
            let mut local = None;
            for &r in &grid {
                let (value, tail) = functional.evaluate_with_tail(&f, r, &params, class)?;
                local = keep_max(
                    local,
                    Point {
                        r,
                        value,
                        tail: tail.value,
                        source: format!("sample {s}"),
                    },
                );
            }
            Ok(local)
        })
        .collect();
    for p in per_sample {
        if let Some(p) = p? {
            best = keep_max(best, p);
        }
    }

    if params.weight.is_monomial() {
        for &r in &grid {
            let (value, t) = functional.class_supremum(class, r, &params)?;
            best = keep_max(
                best,
                Point {
                    r,
                    value,
                    tail: 0.0,
                    source: format!("class_majorant t={t}"),
                },
            );
        }
    }

    let best = best.expect("grid is nonempty");
    report.max_value = Some(best.value);
    report.tail_bound = Some(best.tail);
    report.max_arg = Some(MaxArg {
        r: best.r,
        source: best.source.clone(),
    });
    report.extremal_limit_at_radius = Some(closed_form_value(
        family,
        functional,
        radius,
        theorem.a_limit().unwrap_or(0.0),
        &params,
    )?);

    let bound = best.bound();
    if !(bound <= 1.0 + CERTIFY_TOL) {
        report.verdict = Verdict::Violated;
        report.explanation = format!(
            "max value + tail = {bound} exceeds 1 at r = {} ({})",
            best.r, best.source
        );
        return Ok(report);
    }
    match sharpness_witness(theorem, radius + WITNESS_OFFSET, &params) {
        Ok(w) => {
            report.verdict = Verdict::Certified;
            report.explanation = format!(
                "max value + tail = {bound} <= 1 on (0, {radius}]; witness value {} > 1 at r = {}",
                w.value, w.r
            );
            report.witness = Some(w);
        }
        Err(e) => {
            report.explanation =
                format!("bound holds below the radius but no sharpness witness: {e}");
        }
    }
    Ok(report)
}

/// Theorems and parameters covered by a default run.
pub fn default_suite() -> Result<Vec<(TheoremId, BohrParams)>> {
    let mut out = Vec::new();
    for t in [
        TheoremId::B,
        TheoremId::T1_1,
        TheoremId::T1_2,
        TheoremId::T1_3,
    ] {
        out.push((t, BohrParams::default()));
    }
    for m in [0.1, 0.25, 0.5, 1.0, 1.5, 2.0] {
        out.push((TheoremId::T1_4, BohrParams::with_m(m)));
    }
    for m in [0.1, 0.25, 0.5, 1.0] {
        out.push((TheoremId::T1_5, BohrParams::with_m(m)));
    }
    for m in [0.25, 0.5, 1.0] {
        for n in 1..=3 {
            out.push((
                TheoremId::T1_6,
                BohrParams::new(m, radii::boundary_d(n, m)?)?,
            ));
        }
    }
    out.push((TheoremId::T1_7, BohrParams::default()));
    Ok(out)
}

/// Runs `verify` over `suite` in order.
pub fn verify_suite(
    suite: &[(TheoremId, BohrParams)],
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>> {
    suite.iter().map(|(t, p)| verify(*t, p, cfg)).collect()
}
