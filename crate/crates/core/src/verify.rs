//! Bundled identity and sign checks for one parameter set.
//!
//! Every check compares a closed form or a sign table against direct exact
//! evaluation of the generated polynomials.

use serde::Serialize;

use crate::closed_forms::{
    characteristic_data, closed_value_at_xdelta, closed_value_at_xg, h_at_xdelta_plus_closed_form,
    n_gap_closed_form, predicted_sign_at_xdelta_minus, predicted_sign_at_xdelta_plus,
    predicted_sign_at_xg_minus, sign_at_xa, Branch,
};
use crate::error::Result;
use crate::exact::rational::sign_of;
use crate::exact::{Poly, QuadExt};
use crate::sequence::{gf_check, verify_rec2, RecurrenceParams, Regime, SequenceCache};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Why the check does not apply to these parameters, if it does not.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityCheck {
    fn new(name: &'static str) -> Self {
        IdentityCheck {
            name,
            skipped: None,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn skip(name: &'static str, why: &str) -> Self {
        IdentityCheck {
            skipped: Some(why.to_string()),
            ..Self::new(name)
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub params: RecurrenceParams,
    pub n_max: usize,
    pub checks: Vec<IdentityCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn sign_check(
    name: &'static str,
    w: &[Poly],
    x: &QuadExt,
    start: usize,
    predict: impl Fn(usize) -> i8,
) -> IdentityCheck {
    let mut c = IdentityCheck::new(name);
    for (n, wn) in w.iter().enumerate().skip(start) {
        let got = wn.eval(x).signum();
        let want = predict(n);
        c.record(got == want, || {
            format!("n={n}: sign {got}, predicted {want}")
        });
    }
    c
}

pub fn verify_identities(params: &RecurrenceParams, n_max: usize) -> Result<VerificationReport> {
    let mut cache = SequenceCache::new(params.clone());
    let w = cache.prefix(n_max)?.to_vec();
    let cp = characteristic_data(params);
    let regime = params.regime();
    let mut checks = Vec::new();

    let rec = verify_rec2(params, n_max)?;
    let mut c = IdentityCheck::new("order_four_recurrence");
    for n in &rec.checked {
        c.record(!rec.failures.contains(n), || format!("n={n}"));
    }
    checks.push(c);

    let gf = gf_check(params, n_max)?;
    let mut c = IdentityCheck::new("generating_function");
    for n in &gf.checked {
        c.record(!gf.failures.contains(n), || format!("n={n}"));
    }
    checks.push(c);

    for (name, branch, x) in [
        ("closed_value_at_x_g_minus", Branch::Minus, &cp.x_g_minus),
        ("closed_value_at_x_g_plus", Branch::Plus, &cp.x_g_plus),
    ] {
        let Some(x) = x else {
            checks.push(IdentityCheck::skip(name, "x_g is not real"));
            continue;
        };
        let mut c = IdentityCheck::new(name);
        for (n, wn) in w.iter().enumerate() {
            let closed = closed_value_at_xg(params, branch, n as u32)?;
            c.record(wn.eval(x) == closed, || format!("n={n}"));
        }
        checks.push(c);
    }

    for (name, branch, x) in [
        (
            "closed_value_at_x_delta_minus",
            Branch::Minus,
            &cp.x_delta_minus,
        ),
        (
            "closed_value_at_x_delta_plus",
            Branch::Plus,
            &cp.x_delta_plus,
        ),
    ] {
        let Some(x) = x else {
            checks.push(IdentityCheck::skip(name, "x_delta is not real"));
            continue;
        };
        let mut c = IdentityCheck::new(name);
        for (n, wn) in w.iter().enumerate().skip(1) {
            let closed = closed_value_at_xdelta(params, branch, n as u32)?;
            c.record(wn.eval(x) == closed, || format!("n={n}"));
        }
        checks.push(c);
    }

    let mut c = IdentityCheck::new("sign_at_x_a");
    for (n, wn) in w.iter().enumerate() {
        let got = sign_of(&wn.eval_rational(&cp.x_a));
        let want = sign_at_xa(params, n as u64);
        c.record(got == want, || {
            format!("n={n}: sign {got}, predicted {want}")
        });
    }
    checks.push(c);

    checks.push(match &cp.x_g_minus {
        Some(x) => sign_check("sign_at_x_g_minus", &w, x, 0, |n| {
            predicted_sign_at_xg_minus(&cp, n as u64).expect("x_g^- is real")
        }),
        None => IdentityCheck::skip("sign_at_x_g_minus", "x_g^- is not real"),
    });

    checks.push(match &cp.x_delta_minus {
        Some(x) => sign_check("sign_at_x_delta_minus", &w, x, 0, |n| {
            predicted_sign_at_xdelta_minus(&cp, n as u64).expect("x_delta^- is real")
        }),
        None => IdentityCheck::skip("sign_at_x_delta_minus", "x_delta^- is not real"),
    });

    checks.push(match (&cp.x_delta_plus, regime) {
        (None, _) => IdentityCheck::skip("sign_at_x_delta_plus", "x_delta^+ is not real"),
        (Some(x), Regime::Above) => sign_check("sign_at_x_delta_plus", &w, x, 0, |n| {
            predicted_sign_at_xdelta_plus(&cp, n as u64).expect("x_delta^+ is real")
        }),
        (Some(x), Regime::Below) => sign_check("sign_at_x_delta_plus", &w, x, 1, |_| -1),
        (Some(_), Regime::Equal) => IdentityCheck::skip(
            "sign_at_x_delta_plus",
            "x_delta^+ = x_A, where W_n vanishes for n >= 2",
        ),
    });

    if regime == Regime::Above {
        checks.push(IdentityCheck::skip("sign_at_u_and_v", "needs ad <= bc"));
    } else {
        let u = cp.u.clone().expect("u is real when ad <= bc");
        let v = cp.v.clone().expect("v is real when ad <= bc");
        let mut c = IdentityCheck::new("sign_at_u_and_v");
        for (n, wn) in w.iter().enumerate() {
            let want = if n % 2 == 0 { 1 } else { -1 };
            let (su, sv) = (wn.eval(&u).signum(), wn.eval(&v).signum());
            c.record(su == want && sv == want, || {
                format!("n={n}: signs ({su}, {sv}) at (u, v), predicted {want}")
            });
        }
        checks.push(c);
    }

    match (&cp.n_minus, &cp.n_plus) {
        (Some(nm), Some(np)) => {
            let mut c = IdentityCheck::new("n_gap_closed_form");
            let gap = np.try_sub(nm).ok();
            let closed = n_gap_closed_form(params, &cp);
            c.record(gap.is_some() && gap == closed, || {
                format!("n+ - n- = {gap:?}, closed form {closed:?}")
            });
            checks.push(c);
        }
        _ => checks.push(IdentityCheck::skip(
            "n_gap_closed_form",
            "needs both h(x_delta^±) != 0",
        )),
    }

    match &cp.h_at_x_delta_plus {
        Some(h) => {
            let mut c = IdentityCheck::new("h_at_x_delta_plus_closed_form");
            let closed = h_at_xdelta_plus_closed_form(params);
            c.record(closed.as_ref() == Some(h), || format!("{h} vs {closed:?}"));
            checks.push(c);
        }
        None => checks.push(IdentityCheck::skip(
            "h_at_x_delta_plus_closed_form",
            "x_delta^+ is not real",
        )),
    }

    Ok(VerificationReport {
        params: params.clone(),
        n_max,
        checks,
    })
}
