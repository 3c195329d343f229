//! Rational functions kept in gcd-reduced form with a monic denominator.

use super::poly::{gcd, Poly, Var};
use super::ring::{Rational, Ring};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.as_constant().is_some() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = d.leading_coeff();
        if lc != num_traits::One::one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(name: &str) -> RatFunc {
        RatFunc::from_poly(Poly::var(name))
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::from_poly(Poly::int(n))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    pub fn recip(&self) -> RatFunc {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn derive(&self, v: Var) -> RatFunc {
        let n = &(&self.num.derive(v) * &self.den) - &(&self.num * &self.den.derive(v));
        RatFunc::new(n, &self.den * &self.den)
    }

    pub fn subs(&self, map: &HashMap<Var, RatFunc>) -> RatFunc {
        // substitute in numerator and denominator separately via common denominators
        let eval = |p: &Poly| -> RatFunc {
            let mut acc = <RatFunc as Ring>::zero_r();
            for (m, c) in p.terms() {
                let mut t = RatFunc::from_poly(Poly::constant(c.clone()));
                for &(v, e) in m {
                    let f = map
                        .get(&v)
                        .cloned()
                        .unwrap_or_else(|| RatFunc::from_poly(Poly::from_var(v)));
                    t = &t * &f.pow_i(e as i32);
                }
                acc = &acc + &t;
            }
            acc
        };
        &eval(&self.num) / &eval(&self.den)
    }

    pub fn pow_i(&self, e: i32) -> RatFunc {
        if e >= 0 {
            RatFunc {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            }
            .renorm()
        } else {
            self.recip().pow_i(-e)
        }
    }

    fn renorm(self) -> RatFunc {
        RatFunc::new(self.num, self.den)
    }

    pub fn eval(&self, vals: &HashMap<Var, Rational>) -> Rational {
        self.num.eval(vals) / self.den.eval(vals)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            let d = self.den.as_constant().unwrap();
            self.num.as_constant().map(|n| n / d)
        } else {
            None
        }
    }
}

impl Ring for RatFunc {
    fn zero_r() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one_r() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn is_zero_r(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::from_poly(Poly::constant(r.clone()))
    }
    fn scale(&self, r: &Rational) -> Self {
        RatFunc {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
        .renorm()
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.num.is_zero() {
            None
        } else {
            Some(self / o)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &'a RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &'a RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &'a RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return <RatFunc as Ring>::zero_r();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &'a RatFunc) -> RatFunc {
        assert!(!o.num.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl<'a> Neg for &'a RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num.scale(&self.den.as_constant().unwrap().recip()))
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_makes_equality_structural() {
        let x = Poly::var("x");
        let a = Poly::var("a");
        let f = RatFunc::new(&(&x * &x) - &(&a * &a), &x + &a);
        assert_eq!(f, RatFunc::from_poly(&x - &a));
        let g = &RatFunc::new(Poly::one(), x.clone()) + &RatFunc::new(Poly::one(), a.clone());
        assert_eq!(g, RatFunc::new(&x + &a, &x * &a));
    }

    #[test]
    fn derivative_of_reciprocal() {
        let x = RatFunc::var("x");
        let d = x.recip().derive(Var::new("x"));
        assert_eq!(d, -&(&x * &x).recip());
    }
}
