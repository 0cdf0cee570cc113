//! Root clouds of `W_n` measured against the predicted limit set.

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_forms::{characteristic_data, limit_set, LimitSetDescriptor};
use crate::error::{Error, Result};
use crate::exact::rational::from_f64;
use crate::exact::QuadExt;
use crate::roots::{complex_roots, ComplexRootApprox};
use crate::sequence::{gen_w, RecurrenceParams};

use super::bkw::{bkw_classify_exact, bkw_classify_with, BkwVerdict};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalLimits {
    pub n: usize,
    pub roots: Vec<ComplexRootApprox>,
    /// Distance of each root to the reference set.
    pub distances: Vec<f64>,
    pub max_distance: f64,
    /// `true` when the reference set is the full limit set (`ad < bc`);
    /// otherwise distances are to the always-present limit points only and
    /// carry no pass/fail meaning.
    pub full_limit_set: bool,
}

/// Distance from `z` to the interval and isolated points of `ls`, or to its
/// always-present limit points when the full set is not known.
pub fn distance_to_limit_set(ls: &LimitSetDescriptor, z: Complex64) -> f64 {
    let mut best = f64::INFINITY;
    if let Some((lo, hi)) = &ls.interval {
        let x = z.re.clamp(lo.to_f64(), hi.to_f64());
        best = best.min((z - Complex64::new(x, 0.0)).norm());
        for p in &ls.isolated_points {
            best = best.min((z - Complex64::new(p.to_f64(), 0.0)).norm());
        }
    } else {
        for p in &ls.always_nonisolated {
            let (re, im) = p.approx();
            best = best.min((z - Complex64::new(re, im)).norm());
        }
    }
    best
}

pub fn empirical_limits(params: &RecurrenceParams, n: usize, tol: f64) -> Result<EmpiricalLimits> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "empirical limits need n >= 1".into(),
        ));
    }
    let ls = limit_set(params);
    let w = gen_w(params, n)?;
    let roots = complex_roots(&w, tol)?;
    let distances: Vec<f64> = roots
        .iter()
        .map(|r| distance_to_limit_set(&ls, r.value()))
        .collect();
    let max_distance = distances.iter().cloned().fold(0.0, f64::max);
    Ok(EmpiricalLimits {
        n,
        roots,
        distances,
        max_distance,
        full_limit_set: ls.is_full(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointVerdict {
    pub name: String,
    pub verdict: BkwVerdict,
    /// Membership the limit-set description predicts, when it predicts one.
    pub expected: Option<bool>,
}

impl PointVerdict {
    pub fn agrees(&self) -> bool {
        self.expected.is_none_or(|e| e == self.verdict.member)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitSetCheck {
    pub params: RecurrenceParams,
    pub limit_set: LimitSetDescriptor,
    pub points: Vec<PointVerdict>,
    pub failures: Vec<String>,
}

impl LimitSetCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// BKW verdicts at the real critical points (exact), at the origin, and at
/// `samples` interior points of `[x_Δ^-, x_Δ^+]` (both exact and floating at
/// `tol`), compared against the limit-set description.
///
/// Predictions are made only where the description is complete (`ad < bc`),
/// except for `x_A`, the real `x_Δ^±` and the origin, which hold in general.
pub fn limit_set_check(params: &RecurrenceParams, samples: usize, tol: f64) -> LimitSetCheck {
    let ls = limit_set(params);
    let cp = characteristic_data(params);
    let mut points = Vec::new();
    let exact = |name: &str, x: &QuadExt, expected: Option<bool>| PointVerdict {
        name: name.to_string(),
        verdict: bkw_classify_exact(params, x),
        expected,
    };

    points.push(exact(
        "x_A",
        &QuadExt::from_rational(cp.x_a.clone()),
        Some(true),
    ));
    if let Some(x) = &cp.x_delta_minus {
        points.push(exact("x_delta-", x, Some(true)));
    }
    if let Some(x) = &cp.x_delta_plus {
        points.push(exact("x_delta+", x, Some(true)));
    }
    let predicted = |x: &QuadExt| -> Option<bool> {
        let (lo, hi) = ls.interval.as_ref()?;
        Some((lo <= x && x <= hi) || ls.isolated_points.contains(x))
    };
    for (name, x) in [("x_g-", &cp.x_g_minus), ("x_g+", &cp.x_g_plus)] {
        if let Some(x) = x {
            points.push(exact(name, x, predicted(x)));
        }
    }
    points.push(exact("0", &QuadExt::zero(), Some(false)));

    if let Some((lo, hi)) = &ls.interval {
        let (lo_f, hi_f) = (lo.to_f64(), hi.to_f64());
        for k in 1..=samples {
            let t = k as f64 / (samples + 1) as f64;
            let xf = lo_f + t * (hi_f - lo_f);
            let xq = QuadExt::from_rational(from_f64(xf));
            if !(lo < &xq && &xq < hi) {
                continue;
            }
            points.push(exact(&format!("interior[{k}]"), &xq, Some(true)));
            points.push(PointVerdict {
                name: format!("interior[{k}] (float)"),
                verdict: bkw_classify_with(params, Complex64::new(xf, 0.0), tol, false),
                expected: Some(true),
            });
        }
    }

    let failures = points
        .iter()
        .filter(|p| !p.agrees())
        .map(|p| {
            format!(
                "{}: member = {}, predicted {}",
                p.name,
                p.verdict.member,
                p.expected.unwrap_or_default()
            )
        })
        .collect();
    LimitSetCheck {
        params: params.clone(),
        limit_set: ls,
        points,
        failures,
    }
}
