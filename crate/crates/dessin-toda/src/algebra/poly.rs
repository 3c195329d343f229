//! Sparse multivariate polynomials over Q in globally interned named symbols.

use super::ring::{render_rational, Rational, Ring};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{OnceLock, RwLock};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static I: OnceLock<RwLock<Interner>> = OnceLock::new();
    I.get_or_init(|| {
        RwLock::new(Interner {
            names: Vec::new(),
            ids: HashMap::new(),
        })
    })
}

impl Var {
    pub fn new(name: &str) -> Var {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Var(id);
        }
        let mut w = interner().write().unwrap();
        if let Some(&id) = w.ids.get(name) {
            return Var(id);
        }
        let id = w.names.len() as u32;
        w.names.push(name.to_string());
        w.ids.insert(name.to_string(), id);
        Var(id)
    }

    pub fn name(&self) -> String {
        interner().read().unwrap().names[self.0 as usize].clone()
    }
}

/// Monomial: sorted (variable, positive exponent) pairs.
pub type Mono = Vec<(Var, u32)>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &(v, e) in a {
        if j < b.len() && b[j].0 < v {
            return None;
        }
        if j < b.len() && b[j].0 == v {
            if b[j].1 > e {
                return None;
            }
            if e > b[j].1 {
                out.push((v, e - b[j].1));
            }
            j += 1;
        } else {
            out.push((v, e));
        }
    }
    if j < b.len() {
        return None;
    }
    Some(out)
}

fn mono_exp(m: &Mono, v: Var) -> u32 {
    m.iter().find(|(w, _)| *w == v).map(|p| p.1).unwrap_or(0)
}

/// Pure lex order, smallest variable id most significant.
fn lex_cmp(a: &Mono, b: &Mono) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => {
                if va < vb {
                    return Ordering::Greater;
                }
                if vb < va {
                    return Ordering::Less;
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Mono, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(super::ring::q(n))
    }

    pub fn var(name: &str) -> Poly {
        Poly::from_var(Var::new(name))
    }

    pub fn from_var(v: Var) -> Poly {
        Poly::monomial(vec![(v, 1)], Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_of(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (mono_mul(k, m), x.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|p| p.0))
            .collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| mono_exp(m, v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|p| p.1).sum())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `v^k`, a polynomial free of `v`.
    pub fn coeff_in(&self, v: Var, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if mono_exp(m, v) == k {
                let rest: Mono = m.iter().filter(|p| p.0 != v).cloned().collect();
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    pub fn derive(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = mono_exp(m, v);
            if e == 0 {
                continue;
            }
            let nm: Mono = m
                .iter()
                .filter_map(|&(w, f)| {
                    if w != v {
                        Some((w, f))
                    } else if f > 1 {
                        Some((w, f - 1))
                    } else {
                        None
                    }
                })
                .collect();
            out.add_term(nm, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Rename variables by `f`; `f` must be injective on the variables present.
    pub fn map_vars<F: Fn(Var) -> Var>(&self, f: F) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut nm: Mono = m.iter().map(|&(v, e)| (f(v), e)).collect();
            nm.sort_unstable_by_key(|p| p.0);
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Σ (degree in `vars`) · term.
    pub fn euler_in(&self, vars: &[Var]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let d: u32 = m.iter().filter(|p| vars.contains(&p.0)).map(|p| p.1).sum();
            if d > 0 {
                out.add_term(m.clone(), c * Rational::from_integer(d.into()));
            }
        }
        out
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn subs(&self, map: &HashMap<Var, Poly>) -> Poly {
        let mut cache: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut keep: Mono = Vec::new();
            for &(v, e) in m {
                if let Some(p) = map.get(&v) {
                    let pe = cache.entry((v, e)).or_insert_with(|| p.pow(e)).clone();
                    term = &term * &pe;
                } else {
                    keep.push((v, e));
                }
            }
            if !keep.is_empty() {
                term = term.mul_mono(&keep);
            }
            out += &term;
        }
        out
    }

    pub fn subs1(&self, v: Var, p: &Poly) -> Poly {
        let mut map = HashMap::new();
        map.insert(v, p.clone());
        self.subs(&map)
    }

    /// Evaluate fully at rational values; panics on a missing variable.
    pub fn eval(&self, vals: &HashMap<Var, Rational>) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                let x = vals
                    .get(&v)
                    .unwrap_or_else(|| panic!("no value for {}", v.name()));
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().max_by(|a, b| lex_cmp(a.0, b.0))
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|p| p.1.clone()).unwrap_or_else(Rational::zero)
    }

    /// Scale so the lex-leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut qt = Poly::zero();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let tm = mono_div(&rm, &dm)?;
            let tc = rc / &dc;
            let t = Poly::monomial(tm, tc);
            r -= &(&t * d);
            qt += &t;
        }
        Some(qt)
    }

    /// Content with respect to `v`: gcd of the coefficients of the powers of `v`.
    fn content_in(&self, v: Var) -> Poly {
        let d = self.degree_in(v);
        let mut g = Poly::zero();
        for k in (0..=d).rev() {
            let c = self.coeff_in(v, k);
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.as_constant().is_some() {
                return Poly::one();
            }
        }
        g
    }

    fn prem(&self, g: &Poly, v: Var) -> Poly {
        let dg = g.degree_in(v);
        let lg = g.coeff_in(v, dg);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dg {
            let dr = r.degree_in(v);
            let lr = r.coeff_in(v, dr);
            let shift = if dr > dg { vec![(v, dr - dg)] } else { Vec::new() };
            r = &(&lg * &r) - &(&lr * &g.mul_mono(&shift));
        }
        r
    }
}

/// Monic greatest common divisor (zero only if both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    let x = *va.union(&vb).max().unwrap();
    if !va.contains(&x) {
        return gcd(a, &b.content_in(x));
    }
    if !vb.contains(&x) {
        return gcd(&a.content_in(x), b);
    }
    let ca = a.content_in(x);
    let cb = b.content_in(x);
    let c = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(x) < g.degree_in(x) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = f.prem(&g, x);
        if r.is_zero() {
            break;
        }
        if r.degree_in(x) == 0 {
            g = Poly::one();
            break;
        }
        f = g;
        let cr = r.content_in(x);
        g = r.div_exact(&cr).expect("content divides").monic();
    }
    let cg = g.content_in(x);
    let pg = g.div_exact(&cg).expect("content divides");
    (&c * &pg).monic()
}

impl Ring for Poly {
    fn zero_r() -> Self {
        Poly::zero()
    }
    fn one_r() -> Self {
        Poly::one()
    }
    fn is_zero_r(&self) -> bool {
        self.terms.is_empty()
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
        Poly::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        Poly::scale(self, r)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        self.div_exact(o)
    }
}

impl<'a> AddAssign<&'a Poly> for Poly {
    fn add_assign(&mut self, o: &'a Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a Poly> for Poly {
    fn sub_assign(&mut self, o: &'a Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &'a Poly) -> Poly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &'a Poly) -> Poly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &'a Poly) -> Poly {
        let mut r = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        r
    }
}

impl<'a> Neg for &'a Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &'a Poly) -> Poly {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                self.$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn render_mono(m: &Mono) -> (Vec<(String, u32)>, String) {
    let mut parts: Vec<(String, u32)> = m.iter().map(|&(v, e)| (v.name(), e)).collect();
    parts.sort();
    let s = parts
        .iter()
        .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{}^{}", n, e) })
        .collect::<Vec<_>>()
        .join("*");
    (parts, s)
}

impl fmt::Display for Poly {
    /// Canonical rendering: descending total degree, then by variable names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut rows: Vec<(u32, Vec<(String, u32)>, String, &Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let (parts, s) = render_mono(m);
                (m.iter().map(|p| p.1).sum(), parts, s, c)
            })
            .collect();
        rows.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| {
            // higher powers of earlier names first
            let ka: Vec<(String, i64)> = a.1.iter().map(|(n, e)| (n.clone(), -(*e as i64))).collect();
            let kb: Vec<(String, i64)> = b.1.iter().map(|(n, e)| (n.clone(), -(*e as i64))).collect();
            ka.cmp(&kb)
        }));
        for (i, (_, _, s, c)) in rows.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if s.is_empty() {
                write!(f, "{}", render_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", s)?;
            } else {
                write!(f, "{}*{}", render_rational(&a), s)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{q, qf};

    fn p(s: &str) -> Poly {
        Poly::var(s)
    }

    #[test]
    fn canonical_equality_independent_of_order() {
        let (n, w) = (p("n"), p("w"));
        let a = &(&n + &w) * &(&n - &w);
        let b = &(&n * &n) - &(&w * &w);
        assert_eq!(a, b);
        assert_eq!(format!("{}", b), "n^2 - w^2");
    }

    #[test]
    fn rendering_with_fractions() {
        let (n, w) = (p("n"), p("w"));
        let e = (&n * &w).scale(&qf(1, 2)) - Poly::int(3);
        assert_eq!(e.to_string(), "1/2*n*w - 3");
    }

    #[test]
    fn derivative_and_substitution() {
        let (x, y) = (p("x"), p("y"));
        let f = &(&x * &x) * &y;
        assert_eq!(f.derive(Var::new("x")), Poly::int(2) * &x * &y);
        let g = f.subs1(Var::new("y"), &(&x + &Poly::one()));
        assert_eq!(g, &(&x * &x) * &x + &x * &x);
    }

    #[test]
    fn exact_division() {
        let (x, y) = (p("x"), p("y"));
        let a = &x + &y;
        let b = &x - &(&y * &Poly::int(2));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&(&x + &Poly::one())), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let (x, a) = (p("x"), p("a"));
        let f = &x + &a;
        let g1 = &f * &(&x * &x + &Poly::int(3));
        let g2 = &f * &f * &(&a - &x);
        let g = gcd(&g1, &g2);
        assert_eq!(g, f.monic());
        let h = gcd(&(&x * &a), &(&x + &Poly::one()));
        assert_eq!(h, Poly::one());
        assert_eq!(gcd(&Poly::int(4).scale(&q(1)), &x), Poly::one());
    }
}
