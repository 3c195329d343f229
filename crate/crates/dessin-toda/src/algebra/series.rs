//! Multivariate power series truncated by weighted total degree.

use super::ring::{q, Rational, Ring};
use super::AlgebraError;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Debug)]
pub struct Series<C: Ring> {
    weights: Vec<u32>,
    cutoff: u32,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Ring> Series<C> {
    pub fn zero(weights: Vec<u32>, cutoff: u32) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Series {
            weights,
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    /// Series in `k` variables where variable `j` (0-based) has weight `j+1`.
    pub fn in_p(k: usize, cutoff: u32) -> Self {
        Series::zero((1..=k as u32).collect(), cutoff)
    }

    pub fn constant(weights: Vec<u32>, cutoff: u32, c: C) -> Self {
        let mut s = Series::zero(weights, cutoff);
        let e = vec![0; s.weights.len()];
        s.insert(e, c);
        s
    }

    pub fn like(&self) -> Self {
        Series::zero(self.weights.clone(), self.cutoff)
    }

    pub fn one_like(&self) -> Self {
        Series::constant(self.weights.clone(), self.cutoff, C::one_r())
    }

    pub fn var_like(&self, i: usize) -> Self {
        let mut e = vec![0; self.weights.len()];
        e[i] = 1;
        let mut s = self.like();
        s.insert(e, C::one_r());
        s
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_of(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    /// Add `c` to the coefficient of `e`; terms beyond the cutoff are dropped.
    pub fn insert(&mut self, e: Vec<u32>, c: C) {
        if c.is_zero_r() || self.weight_of(&e) > self.cutoff {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(C::zero_r);
        *slot = slot.plus(&c);
        if slot.is_zero_r() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero_r)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.weights.len()])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_cutoff(&self, cutoff: u32) -> Self {
        let mut s = Series::zero(self.weights.clone(), cutoff);
        for (e, c) in &self.terms {
            s.insert(e.clone(), c.clone());
        }
        s
    }

    /// The homogeneous part of weight `d`.
    pub fn part(&self, d: u32) -> Self {
        let mut s = self.like();
        for (e, c) in &self.terms {
            if self.weight_of(e) == d {
                s.terms.insert(e.clone(), c.clone());
            }
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.insert(e.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn map<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let mut s = self.like();
        for (e, c) in &self.terms {
            s.insert(e.clone(), f(c));
        }
        s
    }

    pub fn map_into<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> Series<D> {
        let mut s = Series::zero(self.weights.clone(), self.cutoff);
        for (e, c) in &self.terms {
            s.insert(e.clone(), f(c));
        }
        s
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn scale_by(&self, k: &C) -> Self {
        self.map(|c| c.times(k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.weights, o.weights, "series over different variables");
        let mut s = self.like();
        for (ea, ca) in &self.terms {
            let wa = self.weight_of(ea);
            for (eb, cb) in &o.terms {
                if wa + o.weight_of(eb) > self.cutoff {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                s.insert(e, ca.times(cb));
            }
        }
        s
    }

    /// Multiply by the monomial `x_i`.
    pub fn mul_var(&self, i: usize) -> Self {
        let mut s = self.like();
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[i] += 1;
            s.insert(e, c.clone());
        }
        s
    }

    /// Partial derivative in variable `i`. Coefficients near the cutoff lose
    /// accuracy by the weight of `x_i`; callers track that window.
    pub fn derive(&self, i: usize) -> Self {
        let mut s = self.like();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            s.insert(e2, c.scale(&q(e[i] as i64)));
        }
        s
    }

    /// Apply the weighted Euler operator sum_i w_i x_i d/dx_i.
    pub fn euler(&self) -> Self {
        let mut s = self.like();
        for (e, c) in &self.terms {
            let w = self.weight_of(e);
            s.insert(e.clone(), c.scale(&q(w as i64)));
        }
        s
    }

    fn parts(&self) -> Vec<Self> {
        (0..=self.cutoff).map(|d| self.part(d)).collect()
    }

    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if !self.constant_term().is_zero_r() {
            return Err(AlgebraError::Domain("exp needs zero constant term".into()));
        }
        let s = self.parts();
        let mut e: Vec<Self> = vec![self.one_like()];
        for d in 1..=self.cutoff {
            let mut acc = self.like();
            for k in 1..=d {
                if s[k as usize].is_zero() {
                    continue;
                }
                let t = s[k as usize].mul(&e[(d - k) as usize]).scale(&q(k as i64));
                acc = acc.add(&t);
            }
            e.push(acc.scale(&Rational::new(1.into(), (d as i64).into())));
        }
        Ok(e.iter().fold(self.like(), |a, b| a.add(b)))
    }

    pub fn log(&self) -> Result<Self, AlgebraError> {
        if self.constant_term() != C::one_r() {
            return Err(AlgebraError::Domain("log needs constant term 1".into()));
        }
        let s = self.parts();
        let mut l: Vec<Self> = vec![self.like()];
        for d in 1..=self.cutoff {
            let mut acc = s[d as usize].clone();
            let mut corr = self.like();
            for k in 1..d {
                let t = l[k as usize].mul(&s[(d - k) as usize]).scale(&q(k as i64));
                corr = corr.add(&t);
            }
            acc = acc.sub(&corr.scale(&Rational::new(1.into(), (d as i64).into())));
            l.push(acc);
        }
        Ok(l.iter().fold(self.like(), |a, b| a.add(b)))
    }

    /// Square root whose constant term is the supplied `root` (`root^2` must equal
    /// the constant term, and `root` must be invertible in the coefficient domain).
    pub fn sqrt_with_root(&self, root: &C) -> Result<Self, AlgebraError> {
        if root.times(root) != self.constant_term() {
            return Err(AlgebraError::Domain("designated root does not square to the constant term".into()));
        }
        let two_root = root.scale(&q(2));
        let s = self.parts();
        let mut r: Vec<Self> = vec![Series::constant(self.weights.clone(), self.cutoff, root.clone())];
        for d in 1..=self.cutoff {
            let mut acc = s[d as usize].clone();
            for k in 1..d {
                acc = acc.sub(&r[k as usize].mul(&r[(d - k) as usize]));
            }
            let mut next = self.like();
            for (e, c) in acc.terms() {
                let v = c
                    .try_div(&two_root)
                    .ok_or_else(|| AlgebraError::Domain("root not invertible".into()))?;
                next.insert(e.clone(), v);
            }
            r.push(next);
        }
        Ok(r.iter().fold(self.like(), |a, b| a.add(b)))
    }

    /// Multiplicative inverse when the constant term is invertible.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let c0 = self.constant_term();
        let one = C::one_r();
        let inv0 = one
            .try_div(&c0)
            .ok_or_else(|| AlgebraError::Domain("constant term not invertible".into()))?;
        let s = self.parts();
        let mut r: Vec<Self> = vec![Series::constant(self.weights.clone(), self.cutoff, inv0.clone())];
        for d in 1..=self.cutoff {
            let mut acc = self.like();
            for k in 1..=d {
                acc = acc.add(&s[k as usize].mul(&r[(d - k) as usize]));
            }
            r.push(acc.scale_by(&inv0).neg());
        }
        Ok(r.iter().fold(self.like(), |a, b| a.add(b)))
    }
}

impl<C: Ring> Series<C>
where
    C: Clone,
{
    /// Square root with the constant term's root found in the rationals.
    pub fn sqrt(&self) -> Result<Self, AlgebraError>
    where
        C: RationalConstant,
    {
        let c0 = self.constant_term();
        let root = c0
            .rational_sqrt()
            .ok_or_else(|| AlgebraError::Domain("constant term is not a perfect square".into()))?;
        self.sqrt_with_root(&root)
    }
}

/// Coefficient domains whose constants can have rational square roots found.
pub trait RationalConstant: Sized {
    fn rational_sqrt(&self) -> Option<Self>;
}

impl RationalConstant for Rational {
    fn rational_sqrt(&self) -> Option<Self> {
        super::ring::rational_sqrt(self)
    }
}

impl RationalConstant for super::poly::Poly {
    fn rational_sqrt(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| super::ring::rational_sqrt(&c))
            .map(super::poly::Poly::constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::qf;

    fn p1(cut: u32) -> Series<Rational> {
        Series::<Rational>::in_p(3, cut).var_like(0)
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z = Series::<Rational>::in_p(2, 4);
        assert_eq!(z.exp().unwrap(), z.one_like());
    }

    #[test]
    fn exp_taylor() {
        let p = p1(2);
        let e = p.exp().unwrap();
        assert_eq!(e.coeff(&[0, 0, 0]), q(1));
        assert_eq!(e.coeff(&[1, 0, 0]), q(1));
        assert_eq!(e.coeff(&[2, 0, 0]), qf(1, 2));
        assert_eq!(e.terms().count(), 3);
    }

    #[test]
    fn exp_rejects_constant() {
        assert!(p1(2).one_like().exp().is_err());
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let p = p1(4);
        let s = p.one_like().add(&p);
        let sq = s.mul(&s);
        assert_eq!(sq.sqrt().unwrap(), s);
    }

    #[test]
    fn derivative_drops_variable() {
        let s = Series::<Rational>::in_p(3, 5);
        let m = s.var_like(0).mul(&s.var_like(1));
        assert_eq!(m.derive(1), s.var_like(0));
    }

    #[test]
    fn inverse_times_self() {
        let s = Series::<Rational>::in_p(3, 6);
        let f = s.one_like().add(&s.var_like(0).scale(&q(3))).add(&s.var_like(2));
        let g = f.inverse().unwrap();
        assert_eq!(f.mul(&g), s.one_like());
    }
}
