//! Real-root counts of `W_n` for `ad > bc` and the onset guarantees.
//!
//! * `h(x_Δ^+) > 0`: for `n >= n^+` there is a root in `(x_g^-, x_Δ^-)` and
//!   another in `[x_Δ^+, x_g^+)`.
//! * `h(x_Δ^+) <= 0 < h(x_Δ^-)`: for `n > n^-` there is a root in
//!   `(x_Δ^-, x_Δ^+)`, and one more in `(x_g^-, x_Δ^-)` when `Δ_g >= 0`.
//!
//! Without either hypothesis the counts are reported but not asserted.

use num_traits::Signed;
use serde::Serialize;

use crate::closed_forms::{
    characteristic_data, classify_family, onset_hypothesis, FamilyClass, OnsetHypothesis,
};
use crate::error::{Error, Result};
use crate::exact::QuadExt;
use crate::exec::Strategy;
use crate::roots::{Bounds, RealRootIsolator};
use crate::sequence::{RecurrenceParams, Regime, SequenceCache};

use super::NamedInterval;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocatedCount {
    pub interval: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OnsetRow {
    pub n: usize,
    pub distinct_real: usize,
    pub real_with_multiplicity: usize,
    /// Guaranteed number of distinct real roots at this `n`, if any.
    pub required_min: Option<usize>,
    pub located: Vec<LocatedCount>,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OnsetReport {
    pub params: RecurrenceParams,
    pub class: FamilyClass,
    pub rows: Vec<OnsetRow>,
    pub failures: Vec<String>,
}

impl OnsetReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn nonempty(name: &str, b: Bounds) -> Option<NamedInterval> {
    (!b.is_empty()).then(|| NamedInterval::new(name, b))
}

pub fn real_zero_onset(params: &RecurrenceParams, n_max: usize) -> Result<OnsetReport> {
    real_zero_onset_with(params, n_max, Strategy::default())
}

pub fn real_zero_onset_with(
    params: &RecurrenceParams,
    n_max: usize,
    strategy: Strategy,
) -> Result<OnsetReport> {
    if params.regime() != Regime::Above {
        return Err(Error::WrongRegime(format!(
            "the onset table is for ad > bc; {params} has ad {} bc and is real-rooted",
            if params.regime() == Regime::Equal {
                "="
            } else {
                "<"
            }
        )));
    }
    let class = classify_family(params);
    let cp = characteristic_data(params);
    let hyp = onset_hypothesis(&cp);

    // Intervals that must each hold a root once the guarantee applies.
    let mut required: Vec<Option<NamedInterval>> = Vec::new();
    let mut min_count = 0;
    match hyp {
        Some(OnsetHypothesis::PositiveAtPlus) => {
            let (gm, gp) = (cp.x_g_minus.clone().unwrap(), cp.x_g_plus.clone().unwrap());
            let (dm, dp) = (
                cp.x_delta_minus.clone().unwrap(),
                cp.x_delta_plus.clone().unwrap(),
            );
            required.push(nonempty("(x_g-, x_delta-)", Bounds::open(gm, dm)));
            required.push(nonempty("[x_delta+, x_g+)", Bounds::closed_open(dp, gp)));
            min_count = 2;
        }
        Some(OnsetHypothesis::SignChange | OnsetHypothesis::ZeroAtPlus) => {
            let (dm, dp) = (
                cp.x_delta_minus.clone().unwrap(),
                cp.x_delta_plus.clone().unwrap(),
            );
            required.push(nonempty(
                "(x_delta-, x_delta+)",
                Bounds::open(dm.clone(), dp),
            ));
            min_count = 1;
            if !cp.disc_g.is_negative() {
                let gm = cp.x_g_minus.clone().unwrap();
                required.push(nonempty("(x_g-, x_delta-)", Bounds::open(gm, dm)));
                min_count = 2;
            }
        }
        None => {}
    }
    let applies = |n: usize| -> bool {
        let nq = QuadExt::from_rational(crate::exact::rational::int(n as i64));
        match hyp {
            Some(OnsetHypothesis::PositiveAtPlus) => cp.n_plus.as_ref().is_some_and(|t| nq >= *t),
            Some(_) => cp.n_minus.as_ref().is_some_and(|t| nq > *t),
            None => false,
        }
    };

    let mut cache = SequenceCache::new(params.clone());
    let w = cache.prefix(n_max)?.to_vec();
    let rows: Vec<(OnsetRow, Vec<String>)> = strategy.map_range(1..n_max + 1, |n| {
        let iso = RealRootIsolator::new(&w[n]).expect("W_n is nonzero");
        let distinct_real = iso.distinct_real_count();
        let real_with_multiplicity = iso.real_count_with_multiplicity();
        let mut failures = Vec::new();
        let mut located = Vec::new();
        let mut required_min = None;
        let mut holds = None;
        if applies(n) {
            required_min = Some(min_count);
            let mut ok = distinct_real >= min_count;
            if !ok {
                failures.push(format!(
                    "n={n}: {distinct_real} distinct real roots, at least {min_count} guaranteed"
                ));
            }
            for iv in &required {
                let (name, count) = match iv {
                    Some(iv) => (iv.name.clone(), iso.count_in(&iv.bounds).expect("nonempty")),
                    None => ("empty interval".to_string(), 0),
                };
                if count == 0 {
                    ok = false;
                    failures.push(format!("n={n}: no root in {name}"));
                }
                located.push(LocatedCount {
                    interval: name,
                    count,
                });
            }
            holds = Some(ok);
        }
        (
            OnsetRow {
                n,
                distinct_real,
                real_with_multiplicity,
                required_min,
                located,
                holds,
            },
            failures,
        )
    });
    let mut report = OnsetReport {
        params: params.clone(),
        class,
        rows: Vec::with_capacity(rows.len()),
        failures: Vec::new(),
    };
    for (row, f) in rows {
        report.rows.push(row);
        report.failures.extend(f);
    }
    Ok(report)
}
