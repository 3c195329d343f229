//! Connected LUE correlators, the explicit LUE resolvent built from A_ℓ, B_ℓ,
//! the h-series matrix M(λ), the diagonal gauge relating them, and the large-n
//! coefficients in the variables n⁻² and c = 1 + α/n.
//!
//! The parameter α is the symbol `a`, and w = n + a throughout.

use crate::algebra::laurent::{cyclic_trace_coefficient, Mat2, Tail};
use crate::algebra::{factorial, q, Poly, RatFunc, Rational, Ring, Var};
use crate::dessins::{self, h_series, n, n_var, w, w_var};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use std::collections::{BTreeMap, HashMap};

pub fn alpha() -> Poly {
    Poly::var("a")
}

pub fn alpha_var() -> Var {
    Var::new("a")
}

/// n + a, the Wishart size.
pub fn wishart() -> Poly {
    &n() + &alpha()
}

/// Replace w by n + a.
pub fn to_lue(p: &Poly) -> Poly {
    p.subs1(w_var(), &wishart())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pochhammer {
    /// (x)_ℓ = x(x+1)⋯(x+ℓ−1)
    Rising,
    /// (x)_ℓ = x(x−1)⋯(x−ℓ+1)
    Falling,
}

impl Pochhammer {
    pub fn apply(self, x: &Poly, l: usize) -> Poly {
        let mut p = Poly::one();
        for r in 0..l as i64 {
            let s = match self {
                Pochhammer::Rising => r,
                Pochhammer::Falling => -r,
            };
            p = &p * &(x + &Poly::int(s));
        }
        p
    }
}

/// The convention under which the explicit resolvent is conjugate to M(λ).
pub const DEFAULT_POCHHAMMER: Pochhammer = Pochhammer::Rising;

pub fn explicit_a(l: usize, n: &Poly, np: &Poly, conv: Pochhammer) -> Poly {
    if l == 0 {
        return n.clone();
    }
    let mut s = Poly::zero();
    for j in 0..l {
        let jj = Poly::int(j as i64);
        let t = &conv.apply(&(n - &jj), l) * &conv.apply(&(np - &jj), l);
        let c = q(if j % 2 == 0 { 1 } else { -1 })
            / (factorial(j as u64) * factorial((l - 1 - j) as u64) * q(l as i64));
        s += &t.scale(&c);
    }
    s
}

pub fn explicit_b(l: usize, n: &Poly, np: &Poly, conv: Pochhammer) -> Poly {
    let mut s = Poly::zero();
    for j in 0..=l {
        let jj = Poly::int(j as i64);
        let t = &conv.apply(&(n - &jj), l) * &conv.apply(&(np - &jj), l);
        let c = q(if j % 2 == 0 { 1 } else { -1 })
            / (factorial(j as u64) * factorial((l - j) as u64));
        s += &t.scale(&c);
    }
    s
}

/// E₁₁ + Σ_ℓ [[ℓA_ℓ(n,n′), B_ℓ(n+1,n′+1)], [−nn′B_ℓ(n,n′), −ℓA_ℓ(n,n′)]] λ^{−ℓ−1},
/// n′ = n + a, through λ^{−order}.
pub fn explicit_resolvent(order: usize, conv: Pochhammer) -> Mat2<Poly> {
    let (nn, np) = (n(), wishart());
    let (n1, np1) = (&nn + &Poly::one(), &np + &Poly::one());
    let nnp = &nn * &np;
    let mut e: [[Vec<Poly>; 2]; 2] = Default::default();
    for row in e.iter_mut() {
        for t in row.iter_mut() {
            *t = vec![Poly::zero(); order + 1];
        }
    }
    e[0][0][0] = Poly::one();
    for l in 0..order {
        let k = l + 1;
        let la = explicit_a(l, &nn, &np, conv).scale(&q(l as i64));
        e[0][0][k] = la.clone();
        e[1][1][k] = -&la;
        e[0][1][k] = explicit_b(l, &n1, &np1, conv);
        e[1][0][k] = -&(&nnp * &explicit_b(l, &nn, &np, conv));
    }
    let [[a, b], [c, d]] = e;
    Mat2::new(
        Tail::from_coeffs(a),
        Tail::from_coeffs(b),
        Tail::from_coeffs(c),
        Tail::from_coeffs(d),
    )
}

/// M(λ) in the symbols n, w, through λ^{−order}.
pub fn m_matrix(order: usize) -> Mat2<Poly> {
    let (nn, ww) = (n(), w());
    let one = Poly::one();
    let left0 = h_series(order, &(-&nn), &(-&ww)).reflect();
    let left1 = h_series(order, &(&one - &nn), &(&one - &ww)).reflect();
    let right0 = h_series(order, &nn, &ww);
    let right1 = h_series(order, &(&nn + &one), &(&ww + &one));
    let nw = &nn * &ww;
    let m11 = left0.mul(&right0);
    let m12 = left0.mul(&right1).shift_down(1).scale_by(&-&nw);
    let m21 = left1.mul(&right0).shift_down(1);
    let m22 = left1.mul(&right1).shift_down(2).scale_by(&-&nw);
    Mat2::new(m11, m12, m21, m22)
}

/// M(λ) with w = n + a.
pub fn m_matrix_lue(order: usize) -> Mat2<Poly> {
    let m = m_matrix(order);
    m.map_into(|p: &Poly| to_lue(p))
}

/// Choice of the diagonal gauge T = diag(1, t) in T·R·T⁻¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gauge {
    /// t = −1/(n(n+a)), the gauge under which the identity holds.
    Matching,
    /// t = −n/(n+a), as the gauge is sometimes quoted.
    Quoted,
}

impl Gauge {
    pub fn entry(self) -> RatFunc {
        let nn = n();
        match self {
            Gauge::Matching => RatFunc::new(Poly::int(-1), &nn * &wishart()),
            Gauge::Quoted => RatFunc::new(-&nn, wishart()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjugationReport {
    pub order: usize,
    /// (λ-order, row, column) of the first mismatch, if any.
    pub first_failure: Option<(usize, usize, usize)>,
}

impl ConjugationReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Compare T·R(λ)·T⁻¹ with M(λ) (w = n + a) coefficient by coefficient.
pub fn conjugation_check(order: usize, conv: Pochhammer, gauge: Gauge) -> ConjugationReport {
    let r = explicit_resolvent(order, conv);
    let m = m_matrix_lue(order);
    let t = gauge.entry();
    let ti = t.recip();
    let one = <RatFunc as Ring>::one_r();
    let factor = |i: usize, j: usize| -> RatFunc {
        let left = if i == 0 { &one } else { &t };
        let right = if j == 0 { &one } else { &ti };
        left * right
    };
    for k in 0..=order {
        let rk = r.coeff(k);
        let mk = m.coeff(k);
        for i in 0..2 {
            for j in 0..2 {
                let lhs = &RatFunc::from_poly(rk[i][j].clone()) * &factor(i, j);
                if lhs != RatFunc::from_poly(mk[i][j].clone()) {
                    return ConjugationReport {
                        order,
                        first_failure: Some((k, i, j)),
                    };
                }
            }
        }
    }
    ConjugationReport {
        order,
        first_failure: None,
    }
}

/// ⟨tr M^{μ1}⋯tr M^{μm}⟩_c = Πμ_j ⟨τ_{μ1}⋯τ_{μm}⟩(n, n+a, 1).
pub fn lue_correlator_from_dessins(mus: &[u32]) -> Result<Poly> {
    let p = dessins::correlator(mus)?;
    let prod: i64 = mus.iter().map(|&m| m as i64).product();
    Ok(to_lue(&p).scale(&q(prod)))
}

/// The same correlator from the cyclic trace formula over the explicit resolvent.
pub fn lue_correlator_from_resolvent(mus: &[u32]) -> Result<Poly> {
    if mus.is_empty() || mus.contains(&0) {
        return Err(Error::Input("insertion indices must be positive".into()));
    }
    let total: u32 = mus.iter().sum();
    let r = explicit_resolvent(total as usize + 1, DEFAULT_POCHHAMMER);
    if mus.len() == 1 {
        let mu = mus[0] as usize;
        return Ok(r.get(0, 0).coeff(mu + 1).scale(&(q(1) / q(mu as i64))));
    }
    let exps: Vec<i64> = mus.iter().map(|&x| -(x as i64) - 1).collect();
    Ok(cyclic_trace_coefficient(&r, &exps)?.negate())
}

/// Connected LUE correlator, computed both ways; disagreement is an error.
pub fn lue_correlator(mus: &[u32]) -> Result<Poly> {
    let a = lue_correlator_from_dessins(mus)?;
    let b = lue_correlator_from_resolvent(mus)?;
    if a != b {
        return Err(Error::Verification(format!(
            "LUE correlator {:?}: dessin route {} differs from resolvent route {}",
            mus, a, b
        )));
    }
    Ok(a)
}

/// Coefficients of n^{−2g} c^s in n^{m−|μ|−2}⟨tr M^{μ1}⋯⟩_c with c = 1 + a/n.
pub fn c_expansion_coefficients(mu: &Partition) -> Result<BTreeMap<(u32, u32), Rational>> {
    if mu.is_empty() {
        return Err(Error::Input("μ must be nonempty".into()));
    }
    let p = lue_correlator_from_dessins(mu.parts())?;
    c_expansion_from_correlator(mu, &p)
}

pub fn c_expansion_from_correlator(mu: &Partition, p: &Poly) -> Result<BTreeMap<(u32, u32), Rational>> {
    let (nv, cv) = (n_var(), Var::new("c"));
    // a = n(c − 1)
    let sub = &n() * &(&Poly::var("c") - &Poly::one());
    let mut map = HashMap::new();
    map.insert(alpha_var(), sub);
    let r = p.subs(&map);
    let shift = mu.len() as i64 - mu.weight() as i64 - 2;
    let mut out = BTreeMap::new();
    for (mono, c) in r.terms() {
        let mut en = 0i64;
        let mut ec = 0u32;
        for &(v, e) in mono {
            if v == nv {
                en = e as i64;
            } else if v == cv {
                ec = e;
            } else {
                return Err(Error::Verification(format!("unexpected symbol {}", v.name())));
            }
        }
        let e = en + shift;
        if e > 0 || e % 2 != 0 {
            return Err(Error::Verification(format!(
                "large-n rewrite of {} produced n^{}",
                mu, e
            )));
        }
        out.insert(((-e / 2) as u32, ec), c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lue_poly(s: &[(i64, u32, u32)]) -> Poly {
        // Σ c n^i a^j
        let mut p = Poly::zero();
        for &(c, i, j) in s {
            p += &(&n().pow(i) * &alpha().pow(j)).scale(&q(c));
        }
        p
    }

    #[test]
    fn explicit_initial_terms() {
        let (nn, np) = (n(), wishart());
        assert_eq!(explicit_a(0, &nn, &np, Pochhammer::Rising), nn);
        assert_eq!(explicit_b(0, &nn, &np, Pochhammer::Rising), Poly::one());
        assert_eq!(explicit_a(1, &nn, &np, Pochhammer::Rising), &nn * &np);
    }

    #[test]
    fn m_matrix_is_rank_one_projector() {
        let m = m_matrix(8);
        assert_eq!(m.trace(), Tail::one(8));
        assert!(m.det().is_zero());
        assert_eq!(m.get(0, 0).coeff(2), &n() * &w());
    }

    #[test]
    fn explicit_trace_and_det() {
        let r = explicit_resolvent(6, DEFAULT_POCHHAMMER);
        assert_eq!(r.trace(), Tail::one(6));
        assert!(r.det().is_zero());
    }

    #[test]
    fn conjugation_holds_in_matching_gauge() {
        assert!(conjugation_check(6, Pochhammer::Rising, Gauge::Matching).holds());
    }

    #[test]
    fn conjugation_controls() {
        let f = conjugation_check(6, Pochhammer::Falling, Gauge::Matching);
        assert_eq!(f.first_failure, Some((3, 0, 0)));
        let g = conjugation_check(4, Pochhammer::Rising, Gauge::Quoted);
        assert_eq!(g.first_failure, Some((1, 0, 1)));
    }

    #[test]
    fn small_correlators() {
        assert_eq!(lue_correlator(&[1]).unwrap(), lue_poly(&[(1, 2, 0), (1, 1, 1)]));
        assert_eq!(
            lue_correlator(&[2]).unwrap(),
            lue_poly(&[(2, 3, 0), (3, 2, 1), (1, 1, 2)])
        );
        assert_eq!(lue_correlator(&[1, 1]).unwrap(), lue_poly(&[(1, 2, 0), (1, 1, 1)]));
        assert_eq!(lue_correlator(&[1, 2, 2]).unwrap(), lue_correlator(&[2, 1, 2]).unwrap());
    }

    #[test]
    fn wishart_symmetry() {
        let p = lue_correlator(&[3, 1]).unwrap();
        let mut map = HashMap::new();
        map.insert(n_var(), wishart());
        map.insert(alpha_var(), -&alpha());
        assert_eq!(p.subs(&map), p);
    }

    #[test]
    fn c_expansion_small() {
        let c = c_expansion_coefficients(&Partition::new(vec![1])).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![((0, 1), q(1))]);
        let c = c_expansion_coefficients(&Partition::new(vec![2])).unwrap();
        assert_eq!(
            c.into_iter().collect::<Vec<_>>(),
            vec![((0, 1), q(1)), ((0, 2), q(1))]
        );
    }
}
