//! Bernoulli numbers, the log-asymptotics of the Barnes G-function, and the
//! constant term of the corrected free energy, assembled two ways and checked
//! against the shift identity (Λ + Λ⁻¹ − 2)F = log W at p = 0.

use crate::algebra::{binomial, factorial, q, qf, Poly, RatFunc, Rational, Ring, Var};
use crate::error::{Error, Result};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// B_k with B₁ = −1/2, from Σ_{j<k+1} C(k+1, j) B_j = 0.
pub fn bernoulli(k: u32) -> Rational {
    let mut b: Vec<Rational> = vec![q(1)];
    for m in 1..=k as u64 {
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += binomial(m + 1, j as u64) * bj;
        }
        b.push(-s / q(m as i64 + 1));
    }
    b[k as usize].clone()
}

/// Logarithms that may appear linearly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LogSym {
    X,
    XPlusA,
    A,
    Eps,
    TwoPi,
}

impl LogSym {
    fn label(&self) -> &'static str {
        match self {
            LogSym::X => "log(x)",
            LogSym::XPlusA => "log(x+a)",
            LogSym::A => "log(a)",
            LogSym::Eps => "log(eps)",
            LogSym::TwoPi => "log(2pi)",
        }
    }
}

/// Opaque constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConstSym {
    ZetaPrime,
    LogMinusOne,
}

/// rat + Σ c_s·log(s) + Σ k_t·t with c_s rational functions of (x, a) and k_t rational.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LogLinearScalar {
    pub rat: RatFunc,
    pub logs: BTreeMap<LogSym, RatFunc>,
    pub consts: BTreeMap<ConstSym, Rational>,
}

fn x() -> RatFunc {
    RatFunc::var("x")
}

fn a() -> RatFunc {
    RatFunc::var("a")
}

impl LogLinearScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rat(r: RatFunc) -> Self {
        LogLinearScalar { rat: r, ..Default::default() }
    }

    pub fn log(s: LogSym, c: RatFunc) -> Self {
        let mut out = Self::zero();
        out.add_log(s, c);
        out
    }

    pub fn constant(c: ConstSym, k: Rational) -> Self {
        let mut out = Self::zero();
        if !k.is_zero() {
            out.consts.insert(c, k);
        }
        out
    }

    fn add_log(&mut self, s: LogSym, c: RatFunc) {
        let slot = self.logs.entry(s).or_insert_with(RatFunc::zero_r);
        *slot = &*slot + &c;
        if slot.is_zero_r() {
            self.logs.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero_r() && self.logs.is_empty() && self.consts.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.rat = &out.rat + &o.rat;
        for (s, c) in &o.logs {
            out.add_log(*s, c.clone());
        }
        for (s, k) in &o.consts {
            let v = out.consts.get(s).cloned().unwrap_or_else(Rational::zero) + k;
            if v.is_zero() {
                out.consts.remove(s);
            } else {
                out.consts.insert(*s, v);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&RatFunc::int(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Multiply by a rational function; only allowed when there are no constants to
    /// promote, since a function times ζ'(−1) is outside the ring.
    pub fn scale(&self, r: &RatFunc) -> Self {
        let mut out = LogLinearScalar::rat(&self.rat * r);
        for (s, c) in &self.logs {
            out.add_log(*s, c * r);
        }
        if !self.consts.is_empty() {
            let k = r
                .as_constant()
                .expect("constant symbols may only be scaled by rationals");
            for (s, v) in &self.consts {
                if !(v * &k).is_zero() {
                    out.consts.insert(*s, v * &k);
                }
            }
        }
        out
    }

    pub fn scale_q(&self, k: &Rational) -> Self {
        self.scale(&RatFunc::from_poly(Poly::constant(k.clone())))
    }

    /// ∂/∂v for v ∈ {x, a}; d log x = dx/x etc., log ε and log 2π are constants here.
    pub fn derive(&self, v: Var) -> Self {
        let mut out = LogLinearScalar::rat(self.rat.derive(v));
        for (s, c) in &self.logs {
            out.add_log(*s, c.derive(v));
            let arg = match s {
                LogSym::X => Some(x()),
                LogSym::XPlusA => Some(&x() + &a()),
                LogSym::A => Some(a()),
                _ => None,
            };
            if let Some(arg) = arg {
                let d = arg.derive(v);
                if !d.is_zero_r() {
                    out.rat = &out.rat + &(c * &(&d / &arg));
                }
            }
        }
        out
    }

    /// x∂ₓ + a∂ₐ.
    pub fn euler(&self) -> Self {
        self.derive(Var::new("x"))
            .scale(&x())
            .add(&self.derive(Var::new("a")).scale(&a()))
    }
}

impl fmt::Display for LogLinearScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rat.is_zero_r() {
            parts.push(format!("{}", self.rat));
        }
        for (s, c) in &self.logs {
            parts.push(format!("({})*{}", c, s.label()));
        }
        for (s, k) in &self.consts {
            let name = match s {
                ConstSym::ZetaPrime => "zeta'(-1)",
                ConstSym::LogMinusOne => "log(-1)",
            };
            parts.push(format!("({})*{}", crate::algebra::render_rational(k), name));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Σ_k c_k ε^k with LogLinearScalar coefficients, kept through ε^{top}.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsExpansion {
    pub top: i32,
    pub terms: BTreeMap<i32, LogLinearScalar>,
}

impl EpsExpansion {
    pub fn new(top: i32) -> Self {
        EpsExpansion { top, terms: BTreeMap::new() }
    }

    pub fn add_at(&mut self, k: i32, c: LogLinearScalar) {
        if k > self.top {
            return;
        }
        let v = self.terms.get(&k).cloned().unwrap_or_default().add(&c);
        if v.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, v);
        }
    }

    pub fn coeff(&self, k: i32) -> LogLinearScalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.top = self.top.min(o.top);
        for (k, c) in &o.terms {
            out.add_at(*k, c.clone());
        }
        out.terms.retain(|k, _| *k <= out.top);
        out
    }

    pub fn neg(&self) -> Self {
        EpsExpansion {
            top: self.top,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of log ε collected over all orders.
    pub fn log_eps_part(&self) -> Vec<(i32, RatFunc)> {
        self.terms
            .iter()
            .filter_map(|(k, c)| c.logs.get(&LogSym::Eps).map(|r| (*k, r.clone())))
            .collect()
    }

    /// ε∂_ε: ε^k ↦ kε^k, and ε^k log ε ↦ kε^k log ε + ε^k.
    pub fn eps_euler(&self) -> Self {
        let mut out = EpsExpansion::new(self.top);
        for (k, c) in &self.terms {
            out.add_at(*k, c.scale_q(&q(*k as i64)));
            if let Some(l) = c.logs.get(&LogSym::Eps) {
                out.add_at(*k, LogLinearScalar::rat(l.clone()));
            }
        }
        out
    }

    pub fn map<F: Fn(&LogLinearScalar) -> LogLinearScalar>(&self, f: F) -> Self {
        let mut out = EpsExpansion::new(self.top);
        for (k, c) in &self.terms {
            out.add_at(*k, f(c));
        }
        out
    }
}

/// The arguments c in G(1 + c/ε).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarnesArg {
    X,
    XPlusA,
    A,
}

impl BarnesArg {
    pub fn value(&self) -> RatFunc {
        match self {
            BarnesArg::X => x(),
            BarnesArg::XPlusA => &x() + &a(),
            BarnesArg::A => a(),
        }
    }

    pub fn log_sym(&self) -> LogSym {
        match self {
            BarnesArg::X => LogSym::X,
            BarnesArg::XPlusA => LogSym::XPlusA,
            BarnesArg::A => LogSym::A,
        }
    }
}

/// log G(1 + z), z = c/ε, through ε^{2g}:
/// z²/2(log z − 3/2) + (z/2)log 2π − (1/12)log z + ζ'(−1) + Σ_ℓ B_{2ℓ+2}/(4ℓ(ℓ+1)) z^{-2ℓ},
/// with log z = log c − log ε.
pub fn barnes_log_asymp(arg: BarnesArg, g: u32) -> EpsExpansion {
    let c = arg.value();
    let lc = arg.log_sym();
    let c2 = (&c * &c).scale(&qf(1, 2));
    let mut out = EpsExpansion::new(2 * g as i32);
    out.add_at(-2, LogLinearScalar::log(lc, c2.clone()));
    out.add_at(-2, LogLinearScalar::log(LogSym::Eps, c2.scale(&q(-1))));
    out.add_at(-2, LogLinearScalar::rat(c2.scale(&qf(-3, 2))));
    out.add_at(-1, LogLinearScalar::log(LogSym::TwoPi, c.scale(&qf(1, 2))));
    out.add_at(0, LogLinearScalar::log(lc, RatFunc::int(1).scale(&qf(-1, 12))));
    out.add_at(0, LogLinearScalar::log(LogSym::Eps, RatFunc::int(1).scale(&qf(1, 12))));
    out.add_at(0, LogLinearScalar::constant(ConstSym::ZetaPrime, q(1)));
    for l in 1..=g {
        let k = bernoulli(2 * l + 2) / q(4 * (l * (l + 1)) as i64);
        out.add_at(2 * l as i32, LogLinearScalar::rat(c.pow_i(-2 * l as i32).scale(&k)));
    }
    out
}

/// The constant term of the corrected free energy through ε^{2g}, as displayed:
/// ε⁻²(x²/2 log x + (x+a)²/2 log(x+a) − a²/2 log a − 3/2 x(x+a))
/// − (1/12)(log x + log(x+a) − log a) + ζ'(−1)
/// + Σ_{h≥2} B_{2h}/(4h(h−1)) ε^{2h−2} (x^{2−2h} + (x+a)^{2−2h} − a^{2−2h}).
pub fn corrected_constant_term(g: u32) -> EpsExpansion {
    let mut out = EpsExpansion::new(2 * g as i32);
    let signs = [(BarnesArg::X, 1), (BarnesArg::XPlusA, 1), (BarnesArg::A, -1)];
    for (arg, s) in signs {
        let c = arg.value();
        let half = (&c * &c).scale(&qf(s, 2));
        out.add_at(-2, LogLinearScalar::log(arg.log_sym(), half));
        out.add_at(0, LogLinearScalar::log(arg.log_sym(), RatFunc::int(1).scale(&qf(-s, 12))));
        for h in 2..=g + 1 {
            let k = bernoulli(2 * h) / q(4 * (h * (h - 1)) as i64) * q(s);
            out.add_at(2 * h as i32 - 2, LogLinearScalar::rat(c.pow_i(2 - 2 * h as i32).scale(&k)));
        }
    }
    out.add_at(-2, LogLinearScalar::rat((&x() * &(&x() + &a())).scale(&qf(-3, 2))));
    out.add_at(0, LogLinearScalar::constant(ConstSym::ZetaPrime, q(1)));
    out
}

/// Prefactor ε^{−1/12 + e/ε²}(2π)^{−t/ε} multiplying the three Barnes factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prefactor {
    /// e = uv = x(x+a), t = u = x: the choice for which log ε and log 2π cancel.
    Matching,
    /// e = v² = (x+a)², t = v = x+a, as printed.
    Quoted,
}

impl Prefactor {
    pub fn name(&self) -> &'static str {
        match self {
            Prefactor::Matching => "eps^(-1/12+uv/eps^2)(2pi)^(-u/eps)",
            Prefactor::Quoted => "eps^(-1/12+v^2/eps^2)(2pi)^(-v/eps)",
        }
    }
}

/// log of the correction factor ε^{…}(2π)^{…} G(1+u/ε)G(1+v/ε)/G(1+(v−u)/ε), u = x, v = x+a.
pub fn correction_factor_log(g: u32, pre: Prefactor) -> EpsExpansion {
    let mut out = barnes_log_asymp(BarnesArg::X, g)
        .add(&barnes_log_asymp(BarnesArg::XPlusA, g))
        .sub(&barnes_log_asymp(BarnesArg::A, g));
    let (e, t) = match pre {
        Prefactor::Matching => (&x() * &(&x() + &a()), x()),
        Prefactor::Quoted => (&(&x() + &a()) * &(&x() + &a()), &x() + &a()),
    };
    out.add_at(-2, LogLinearScalar::log(LogSym::Eps, e));
    out.add_at(0, LogLinearScalar::log(LogSym::Eps, RatFunc::int(1).scale(&qf(-1, 12))));
    out.add_at(-1, LogLinearScalar::log(LogSym::TwoPi, t.scale(&q(-1))));
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssemblyReport {
    pub prefactor: String,
    pub agree: bool,
    /// Orders at which a log ε term survives in the Barnes assembly.
    pub log_eps_orders: Vec<i32>,
    pub log_two_pi_survives: bool,
}

/// Compare the displayed constant term with the log of the Barnes correction factor.
pub fn compare_assemblies(g: u32, pre: Prefactor) -> AssemblyReport {
    let a = corrected_constant_term(g);
    let b = correction_factor_log(g, pre);
    AssemblyReport {
        prefactor: pre.name().to_string(),
        agree: a == b,
        log_eps_orders: b.log_eps_part().into_iter().map(|p| p.0).collect(),
        log_two_pi_survives: b.terms.values().any(|c| c.logs.contains_key(&LogSym::TwoPi)),
    }
}

/// Residuals of (Λ + Λ⁻¹ − 2)F − log(x(x+a)) at p = 0, Λ: x → x + ε, expanded as
/// Σ_j 2ε^{2j}∂ₓ^{2j}/(2j)!, through ε^{2g}. Returns the orders with a nonzero residual.
pub fn shift_identity_check(g: u32) -> Result<Vec<i32>> {
    if g == 0 {
        return Err(Error::Input("ε-order must be at least 1".into()));
    }
    Ok(shift_identity_residual(&corrected_constant_term(g + 1), g))
}

/// The same residual for an arbitrary constant term `f` (known through ε^{2g} or beyond).
pub fn shift_identity_residual(f: &EpsExpansion, g: u32) -> Vec<i32> {
    let xv = Var::new("x");
    let mut lhs = EpsExpansion::new(2 * g as i32);
    for (k, c) in &f.terms {
        let mut d = c.clone();
        for j in 1..=(g as i32 + 1) {
            d = d.derive(xv).derive(xv);
            let order = k + 2 * j;
            if order > 2 * g as i32 {
                break;
            }
            let coef = q(2) / factorial(2 * j as u64);
            lhs.add_at(order, d.scale_q(&coef));
        }
    }
    lhs.add_at(0, LogLinearScalar::log(LogSym::X, RatFunc::int(-1)));
    lhs.add_at(0, LogLinearScalar::log(LogSym::XPlusA, RatFunc::int(-1)));
    lhs.terms.keys().copied().collect()
}

/// (ε∂_ε + x∂ₓ + a∂ₐ)F + 1/12 − x(x+a)/ε² at p = 0: the weight-0 part of the dilaton
/// equation, where −∂F/∂p₁ contributes −⟨τ₁⟩ = −x(x+a)/ε².
pub fn dilaton_constant_residual(g: u32) -> EpsExpansion {
    let f = corrected_constant_term(g);
    let mut r = f.eps_euler().add(&f.map(|c| c.euler()));
    r.add_at(0, LogLinearScalar::rat(RatFunc::int(1).scale(&qf(1, 12))));
    r.add_at(-2, LogLinearScalar::rat((&x() * &(&x() + &a())).scale(&q(-1))));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1));
        assert_eq!(bernoulli(1), qf(-1, 2));
        assert_eq!(bernoulli(2), qf(1, 6));
        assert_eq!(bernoulli(3), q(0));
        assert_eq!(bernoulli(4), qf(-1, 30));
        assert_eq!(bernoulli(12), qf(-691, 2730));
    }

    #[test]
    fn barnes_tail_coefficients() {
        let b = barnes_log_asymp(BarnesArg::X, 2);
        assert_eq!(b.coeff(2).rat, x().pow_i(-2).scale(&qf(-1, 240)));
        assert_eq!(b.coeff(4).rat, x().pow_i(-4).scale(&qf(1, 1008)));
        assert_eq!(b.coeff(0).consts.get(&ConstSym::ZetaPrime), Some(&q(1)));
    }

    #[test]
    fn displayed_orders() {
        let f = corrected_constant_term(1);
        let two = f.coeff(2).rat;
        let want = (&(&x().pow_i(-2) + &(&x() + &a()).pow_i(-2)) - &a().pow_i(-2)).scale(&qf(-1, 240));
        assert_eq!(two, want);
        assert!(f.coeff(-1).is_zero());
    }

    #[test]
    fn assemblies_agree_with_matching_prefactor() {
        let r = compare_assemblies(4, Prefactor::Matching);
        assert!(r.agree, "{:?}", r);
        let r = compare_assemblies(4, Prefactor::Quoted);
        assert!(!r.agree);
        assert!(r.log_two_pi_survives);
        assert_eq!(r.log_eps_orders, vec![-2]);
    }

    #[test]
    fn shift_identity() {
        assert_eq!(shift_identity_check(4).unwrap(), Vec::<i32>::new());
    }

    #[test]
    fn shift_identity_detects_sign_error() {
        // flip the sign of the x-tail at ε²
        let mut f = corrected_constant_term(4);
        f.add_at(2, LogLinearScalar::rat(x().pow_i(-2).scale(&qf(1, 120))));
        assert_eq!(shift_identity_residual(&f, 3), vec![4, 6]);
    }

    #[test]
    fn dilaton_at_zero_coupling() {
        assert!(dilaton_constant_residual(4).is_zero());
    }
}
