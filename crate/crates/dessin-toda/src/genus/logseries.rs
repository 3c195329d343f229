//! Truncated series in the couplings whose coefficients are LogLinearScalars:
//! a rational-function series plus series multiples of log x, log(x+a), log a and
//! rational multiples of the opaque constants.

use crate::algebra::{q, RatFunc, Rational, Ring, Series, Var};
use crate::barnes::{ConstSym, LogLinearScalar, LogSym};
use num_traits::Zero;
use std::collections::BTreeMap;

pub type RSeries = Series<RatFunc>;

#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries {
    pub series: RSeries,
    pub logs: BTreeMap<LogSym, RSeries>,
    pub consts: BTreeMap<ConstSym, Rational>,
}

fn log_arg(s: LogSym) -> Option<RatFunc> {
    let (x, a) = (RatFunc::var("x"), RatFunc::var("a"));
    match s {
        LogSym::X => Some(x),
        LogSym::XPlusA => Some(&x + &a),
        LogSym::A => Some(a),
        _ => None,
    }
}

impl LogSeries {
    pub fn from_series(s: RSeries) -> Self {
        LogSeries { series: s, logs: BTreeMap::new(), consts: BTreeMap::new() }
    }

    pub fn zero_like(s: &RSeries) -> Self {
        Self::from_series(s.like())
    }

    /// c·log(sym) as a constant series shaped like `shape`.
    pub fn log(shape: &RSeries, sym: LogSym, c: RatFunc) -> Self {
        let mut out = Self::zero_like(shape);
        out.logs.insert(sym, Series::constant(shape.weights().to_vec(), shape.cutoff(), c));
        out.prune();
        out
    }

    pub fn constant(shape: &RSeries, sym: ConstSym, k: Rational) -> Self {
        let mut out = Self::zero_like(shape);
        if !k.is_zero() {
            out.consts.insert(sym, k);
        }
        out
    }

    fn prune(&mut self) {
        self.logs.retain(|_, s| !s.is_zero());
        self.consts.retain(|_, k| !k.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero() && self.logs.is_empty() && self.consts.is_empty()
    }

    pub fn has_logs(&self) -> bool {
        !self.logs.is_empty() || !self.consts.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.series = out.series.add(&o.series);
        for (s, c) in &o.logs {
            let slot = out.logs.entry(*s).or_insert_with(|| c.like());
            *slot = slot.add(c);
        }
        for (s, k) in &o.consts {
            let v = out.consts.get(s).cloned().unwrap_or_else(Rational::zero) + k;
            out.consts.insert(*s, v);
        }
        out.prune();
        out
    }

    pub fn neg(&self) -> Self {
        self.scale_q(&q(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale_q(&self, k: &Rational) -> Self {
        let mut out = LogSeries {
            series: self.series.scale(k),
            logs: self.logs.iter().map(|(s, c)| (*s, c.scale(k))).collect(),
            consts: self.consts.iter().map(|(s, c)| (*s, c * k)).collect(),
        };
        out.prune();
        out
    }

    /// Multiply by a log-free series. Opaque constants need a rational multiplier.
    pub fn mul_series(&self, f: &RSeries) -> Self {
        let mut out = Self::from_series(self.series.mul(f));
        for (s, c) in &self.logs {
            out.logs.insert(*s, c.mul(f));
        }
        for (s, k) in &self.consts {
            assert!(
                f.terms().all(|(e, c)| e.iter().all(|&x| x == 0) && c.as_constant().is_some()),
                "opaque constant times a non-rational series"
            );
            let c = f.constant_term().as_constant().unwrap();
            out.consts.insert(*s, k * c);
        }
        out.prune();
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self.has_logs(), o.has_logs()) {
            (_, false) => self.mul_series(&o.series),
            (false, true) => o.mul_series(&self.series),
            _ => panic!("product of two logarithmic series"),
        }
    }

    /// ∂/∂T_i.
    pub fn derive_t(&self, i: usize) -> Self {
        let mut out = Self::from_series(self.series.derive(i));
        for (s, c) in &self.logs {
            out.logs.insert(*s, c.derive(i));
        }
        out.prune();
        out
    }

    /// ∂/∂x or ∂/∂a acting on coefficients and logarithms.
    pub fn derive_param(&self, v: Var) -> Self {
        let mut out = Self::from_series(self.series.map(|c| c.derive(v)));
        for (s, c) in &self.logs {
            out.logs.insert(*s, c.map(|r| r.derive(v)));
            if let Some(arg) = log_arg(*s) {
                let d = arg.derive(v);
                if !d.is_zero_r() {
                    out.series = out.series.add(&c.scale_by(&(&d / &arg)));
                }
            }
        }
        out.prune();
        out
    }

    pub fn with_cutoff(&self, cutoff: u32) -> Self {
        let mut out = LogSeries {
            series: self.series.with_cutoff(cutoff),
            logs: self.logs.iter().map(|(s, c)| (*s, c.with_cutoff(cutoff))).collect(),
            consts: self.consts.clone(),
        };
        out.prune();
        out
    }

    /// Coefficient of the coupling monomial `e`.
    pub fn coeff(&self, e: &[u32]) -> LogLinearScalar {
        let mut out = LogLinearScalar::rat(self.series.coeff(e));
        for (s, c) in &self.logs {
            out = out.add(&LogLinearScalar::log(*s, c.coeff(e)));
        }
        if e.iter().all(|&x| x == 0) {
            for (s, k) in &self.consts {
                out = out.add(&LogLinearScalar::constant(*s, k.clone()));
            }
        }
        out
    }

    /// The logarithms occur only in the constant term.
    pub fn logs_are_constant(&self) -> bool {
        self.logs
            .values()
            .all(|c| c.terms().all(|(e, _)| e.iter().all(|&x| x == 0)))
    }
}

/// Monomials (exponent vectors) of weight 1..=cutoff for the given weights.
pub fn monomials(weights: &[u32], cutoff: u32) -> Vec<Vec<u32>> {
    fn rec(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            out.push(cur.clone());
            return;
        }
        let mut k = 0;
        while k * w[i] <= left {
            cur.push(k);
            rec(w, i + 1, left - k * w[i], cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, cutoff, &mut Vec::new(), &mut out);
    out.retain(|e| e.iter().any(|&x| x > 0));
    out.sort_by_key(|e| (e.iter().zip(weights).map(|(a, b)| a * b).sum::<u32>(), e.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_derivative() {
        let shape: RSeries = Series::in_p(1, 2);
        let x = RatFunc::var("x");
        let f = LogSeries::log(&shape, LogSym::X, &x * &x);
        let d = f.derive_param(Var::new("x"));
        assert_eq!(d.series.constant_term(), x.clone());
        assert_eq!(d.logs[&LogSym::X].constant_term(), &x + &x);
    }

    #[test]
    fn monomial_enumeration() {
        // partitions of 1..=4 with parts ≤ 4
        assert_eq!(monomials(&[1, 2, 3, 4], 4).len(), 1 + 2 + 3 + 5);
    }
}
