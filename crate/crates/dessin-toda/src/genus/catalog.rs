//! Initial values of Toda tau-functions from matrix models, with their genus-zero
//! limits and the algebraic curves those limits lie on.

use crate::algebra::{RatFunc, Ring, Var};
use crate::barnes::shift_identity_check;
use crate::error::Result;
use serde::Serialize;
use std::collections::HashMap;

fn r(name: &str) -> RatFunc {
    RatFunc::var(name)
}

fn k(n: i64) -> RatFunc {
    RatFunc::int(n)
}

fn frac(n: i64, d: i64) -> RatFunc {
    &k(n) / &k(d)
}

/// One row: (V, W) at finite ε, the genus-zero (v, w), and a curve C(cv, cw) = 0.
#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub name: &'static str,
    pub big_v: RatFunc,
    pub big_w: RatFunc,
    pub v: RatFunc,
    pub w: RatFunc,
    pub curve: RatFunc,
    pub curve_text: &'static str,
}

impl CatalogRow {
    pub fn on_curve(&self) -> bool {
        let mut m = HashMap::new();
        m.insert(Var::new("cv"), self.v.clone());
        m.insert(Var::new("cw"), self.w.clone());
        self.curve.subs(&m).is_zero_r()
    }

    /// (V, W) at ε = 0 reproduce (v, w).
    pub fn genus_zero_limit(&self) -> bool {
        let mut m = HashMap::new();
        m.insert(Var::new("eps"), k(0));
        self.big_v.subs(&m) == self.v && self.big_w.subs(&m) == self.w
    }
}

pub fn catalog() -> Vec<CatalogRow> {
    let (x, a, b, e) = (r("x"), r("a"), r("b"), r("eps"));
    let (cv, cw) = (r("cv"), r("cw"));
    let xa = &x + &a;
    let s = &(&(&x + &x) + &a) + &b;
    let b2a2 = &(&b * &b) - &(&a * &a);
    let quartic = &(&(&x * &xa) * &(&x + &b)) * &(&xa + &b);
    vec![
        CatalogRow {
            name: "LUE/dessins",
            big_v: &(&(&x + &x) + &a) + &e,
            big_w: &x * &xa,
            v: &(&x + &x) + &a,
            w: &x * &xa,
            curve: &cw - &(&(&(&cv * &cv) - &(&a * &a)) * &frac(1, 4)),
            curve_text: "w = (v^2 - a^2)/4",
        },
        CatalogRow {
            name: "JUE",
            big_v: &frac(1, 2) + &(&b2a2 / &(&(&s * &(&s + &(&e + &e))) * &k(2))),
            big_w: &quartic / &(&(&(&s - &e) * &(&s * &s)) * &(&s + &e)),
            v: &frac(1, 2) + &(&b2a2 / &(&(&s * &s) * &k(2))),
            w: &quartic / &(&(&s * &s) * &(&s * &s)),
            curve: &cw
                - &(&(&(&(&cv * &cv) * &frac(1, 4)) - &(&(&(&b * &b) * &cv) / &(&b2a2 * &k(2))))
                    + &(&(&b * &b) / &(&b2a2 * &k(4)))),
            curve_text: "w = v^2/4 - b^2 v/(2(b^2-a^2)) + b^2/(4(b^2-a^2))",
        },
        CatalogRow {
            name: "GUE",
            big_v: k(0),
            big_w: x.clone(),
            v: k(0),
            w: x.clone(),
            curve: cv.clone(),
            curve_text: "v = 0",
        },
        CatalogRow {
            name: "mEven GUE",
            // in the variable x_mE = 2x
            big_v: &x + &e,
            big_w: &(&(&x * &x) * &frac(1, 4)) - &(&(&e * &e) * &frac(1, 16)),
            v: x.clone(),
            w: &(&x * &x) * &frac(1, 4),
            curve: &cw - &(&(&cv * &cv) * &frac(1, 4)),
            curve_text: "w = v^2/4",
        },
        CatalogRow {
            name: "P1",
            big_v: &x + &(&e * &frac(1, 2)),
            big_w: k(1),
            v: x.clone(),
            w: k(1),
            curve: &cw - &k(1),
            curve_text: "w = 1",
        },
    ]
}

/// V = ε(Λ − 1)⟨τ₁⟩ with ⟨τ₁⟩ = x(x+a)/ε² and Λ: x → x + ε.
pub fn lue_v_from_one_point() -> RatFunc {
    let (x, a, e) = (r("x"), r("a"), r("eps"));
    let tau1 = |xx: &RatFunc| &(xx * &(xx + &a)) / &(&e * &e);
    let mut shifted = HashMap::new();
    shifted.insert(Var::new("x"), &x + &e);
    let t = tau1(&x);
    &e * &(&t.subs(&shifted) - &t)
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub rows: Vec<(String, bool, bool)>,
    pub lue_v_from_one_point: bool,
    pub lue_w_from_shift_identity: bool,
}

impl CatalogReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|(_, c, l)| *c && *l) && self.lue_v_from_one_point && self.lue_w_from_shift_identity
    }
}

/// Curves, ε → 0 limits, and the LUE/dessins initial values from the one-point
/// function and the corrected constant term (through ε^{2·eps_order}).
pub fn catalog_check(eps_order: u32) -> Result<CatalogReport> {
    let rows = catalog();
    let lue = &rows[0];
    let lue_v_from_one_point = lue_v_from_one_point() == lue.big_v;
    let lue_w_from_shift_identity =
        lue.big_w == &r("x") * &(&r("x") + &r("a")) && shift_identity_check(eps_order.div_ceil(2).max(1))?.is_empty();
    Ok(CatalogReport {
        rows: rows
            .iter()
            .map(|row| (row.name.to_string(), row.on_curve(), row.genus_zero_limit()))
            .collect(),
        lue_v_from_one_point,
        lue_w_from_shift_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_on_curves() {
        for row in catalog() {
            assert!(row.on_curve(), "{}", row.name);
        }
    }

    #[test]
    fn limits() {
        for row in catalog() {
            assert!(row.genus_zero_limit(), "{}", row.name);
        }
    }

    #[test]
    fn lue_initial_value() {
        assert_eq!(lue_v_from_one_point(), catalog()[0].big_v);
    }

    #[test]
    fn wrong_curve_fails() {
        let mut row = catalog()[0].clone();
        row.w = &row.w + &RatFunc::int(1);
        assert!(!row.on_curve());
    }
}
