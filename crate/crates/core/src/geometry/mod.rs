//! Verification of the root-count and interlacing statements, the limit-set classifier
//! and the real-zero onset table.

pub mod bkw;
pub mod interlace;
pub mod limits;
pub mod onset;

use serde::Serialize;

use crate::exact::QuadExt;
use crate::roots::{Bounds, IsolatedRealRoot, RealRootIsolator};

pub use bkw::{bkw_classify, bkw_classify_exact, bkw_classify_with, BkwCondition, BkwVerdict};
pub use interlace::{verify_equal_case, verify_interlacing, Direction, InterlacingReport};
pub use limits::{
    distance_to_limit_set, empirical_limits, limit_set_check, EmpiricalLimits, LimitSetCheck,
    PointVerdict,
};
pub use onset::{real_zero_onset, OnsetReport, OnsetRow};

/// Refinement budget per root when separating it from interval endpoints or
/// from another polynomial's roots.
pub const REFINEMENT_CAP: usize = 400;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedInterval {
    pub name: String,
    pub bounds: Bounds,
}

impl NamedInterval {
    pub fn new(name: &str, bounds: Bounds) -> Self {
        NamedInterval {
            name: name.to_string(),
            bounds,
        }
    }
}

enum Placement {
    Inside,
    Outside,
    Undecided,
}

fn place(root: &IsolatedRealRoot, b: &Bounds) -> Placement {
    if root.is_exact() {
        return if b.contains(&QuadExt::from_rational(root.lo.clone())) {
            Placement::Inside
        } else {
            Placement::Outside
        };
    }
    // The root lies strictly inside (lo, hi).
    let lo = QuadExt::from_rational(root.lo.clone());
    let hi = QuadExt::from_rational(root.hi.clone());
    if b.lo <= lo && hi <= b.hi {
        Placement::Inside
    } else if hi <= b.lo || lo >= b.hi {
        Placement::Outside
    } else {
        Placement::Undecided
    }
}

/// Refines each root until its membership in every interval is decided and
/// returns, per root, the index of the interval containing it.
pub(crate) fn locate_roots(
    iso: &RealRootIsolator,
    roots: &[IsolatedRealRoot],
    intervals: &[Bounds],
) -> std::result::Result<Vec<(IsolatedRealRoot, Option<usize>)>, String> {
    let mut out = Vec::with_capacity(roots.len());
    for root in roots {
        let mut r = root.clone();
        let mut steps = 0;
        loop {
            let mut home = None;
            let mut undecided = false;
            for (j, b) in intervals.iter().enumerate() {
                match place(&r, b) {
                    Placement::Inside => home = Some(j),
                    Placement::Outside => {}
                    Placement::Undecided => undecided = true,
                }
            }
            if !undecided {
                out.push((r, home));
                break;
            }
            if steps == REFINEMENT_CAP {
                return Err(format!(
                    "root near {:.6} could not be separated from the interval endpoints",
                    r.approx()
                ));
            }
            r = iso.refine_step(&r);
            steps += 1;
        }
    }
    Ok(out)
}

/// Refines two root lists (each internally disjoint) until no interval of
/// one overlaps an interval of the other.
pub(crate) fn separate(
    iso_x: &RealRootIsolator,
    xs: &mut [IsolatedRealRoot],
    iso_y: &RealRootIsolator,
    ys: &mut [IsolatedRealRoot],
) -> std::result::Result<(), String> {
    for _ in 0..REFINEMENT_CAP {
        let mut clash = false;
        for x in xs.iter_mut() {
            for y in ys.iter_mut() {
                if x.overlaps(y) {
                    if x.is_exact() && y.is_exact() {
                        return Err(format!("common root at {}", x.lo));
                    }
                    clash = true;
                    *x = iso_x.refine_step(x);
                    *y = iso_y.refine_step(y);
                }
            }
        }
        if !clash {
            return Ok(());
        }
    }
    Err("refinement cap reached while separating root sets".into())
}

/// Whether `xs` strictly interlaces `ys` (both already separated), in
/// increasing order when `from_left`, decreasing otherwise.
pub(crate) fn interlaces(
    xs: &[IsolatedRealRoot],
    ys: &[IsolatedRealRoot],
    from_left: bool,
) -> bool {
    if xs.len() != ys.len() && xs.len() != ys.len() + 1 {
        return false;
    }
    let mut merged: Vec<(&IsolatedRealRoot, bool)> = xs
        .iter()
        .map(|r| (r, true))
        .chain(ys.iter().map(|r| (r, false)))
        .collect();
    merged.sort_by(|p, q| {
        if p.0.lies_strictly_below(q.0) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    if !from_left {
        merged.reverse();
    }
    merged
        .iter()
        .enumerate()
        .all(|(i, (_, from_x))| *from_x == (i % 2 == 0))
}
