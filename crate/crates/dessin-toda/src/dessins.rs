//! Connected dessin correlators ⟨τ_{μ1}⋯τ_{μm}⟩(n, w, 1) as polynomials in n, w,
//! from the h-series one-point product and the cyclic kernel formula, and the
//! weighted counts N_{k,l}(μ) read off from them.

use crate::algebra::laurent::{cyclic_kernel_coefficient, DoubleKernel, Tail};
use crate::algebra::{factorial, q, Poly, Rational, Ring, Var};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use std::sync::{Mutex, OnceLock};

/// Default cap on the number of insertions for the kernel formula.
pub const DEFAULT_MAX_POINTS: usize = 7;

pub fn n() -> Poly {
    Poly::var("n")
}

pub fn w() -> Poly {
    Poly::var("w")
}

pub fn n_var() -> Var {
    Var::new("n")
}

pub fn w_var() -> Var {
    Var::new("w")
}

/// (−1)^j nw / ((i+j+1) i! j!) · Π_{r≤i}(n+r)(w+r) · Π_{r≤j}(n−r)(w−r).
pub fn a_coeff(i: usize, j: usize) -> Poly {
    let (n, w) = (n(), w());
    let mut p = &n * &w;
    for r in 1..=i as i64 {
        p = &p * &(&(&n + &Poly::int(r)) * &(&w + &Poly::int(r)));
    }
    for r in 1..=j as i64 {
        p = &p * &(&(&n - &Poly::int(r)) * &(&w - &Poly::int(r)));
    }
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let den = q((i + j + 1) as i64) * factorial(i as u64) * factorial(j as u64);
    p.scale(&(q(sign) / den))
}

fn kernel_cache() -> &'static Mutex<Vec<Vec<Poly>>> {
    static K: OnceLock<Mutex<Vec<Vec<Poly>>>> = OnceLock::new();
    K.get_or_init(|| Mutex::new(Vec::new()))
}

/// The kernel Â(λ, μ) = 1/(λ−μ) + Σ A_{ij} λ^{-j-1} μ^{-i-1} with 0 ≤ i, j ≤ order.
///
/// Note the index placement: `a_coeff(i, j)` multiplies λ^{-j-1} μ^{-i-1}. This is
/// the orientation produced by the wave-function pairing (checked in `toda`), and
/// the one for which ⟨τ1 τ1⟩ = nw.
pub fn a_kernel(order: usize) -> DoubleKernel<Poly> {
    let mut cache = kernel_cache().lock().unwrap();
    if cache.len() <= order {
        let old = cache.len();
        for row in cache.iter_mut().enumerate() {
            let (i, r) = row;
            while r.len() <= order {
                let j = r.len();
                r.push(a_coeff(i, j));
            }
        }
        for i in old..=order {
            cache.push((0..=order).map(|j| a_coeff(i, j)).collect());
        }
    }
    let a: Vec<Vec<Poly>> = cache[..=order]
            .iter()
            .map(|r| r[..=order].to_vec())
            .collect();
    DoubleKernel {
        pure: true,
        reg: (0..=order)
            .map(|i| (0..=order).map(|j| a[j][i].clone()).collect())
            .collect(),
    }
}

/// h(λ; n, w) = Σ_i (1/i!) Π_{r<i} (n+r)(w+r) λ^{-i}, with arbitrary polynomial n, w.
pub fn h_series(order: usize, n: &Poly, w: &Poly) -> Tail<Poly> {
    let mut c = Vec::with_capacity(order + 1);
    let mut acc = Poly::one();
    c.push(acc.clone());
    for i in 1..=order {
        let r = Poly::int(i as i64 - 1);
        acc = &acc * &(&(n + &r) * &(w + &r));
        acc = acc.scale(&(q(1) / q(i as i64)));
        c.push(acc.clone());
    }
    Tail::from_coeffs(c)
}

/// h(−λ; −n, −w) · h(λ; n, w) = 1 + Σ μ²⟨τ_μ⟩ λ^{-μ-1}.
pub fn one_point_generating(order: usize) -> Tail<Poly> {
    let (n, w) = (n(), w());
    let left = h_series(order, &(-&n), &(-&w)).reflect();
    left.mul(&h_series(order, &n, &w))
}

pub fn one_point(mu: u32) -> Result<Poly> {
    if mu == 0 {
        return Err(Error::Input("insertion index must be positive".into()));
    }
    let g = one_point_generating(mu as usize + 1);
    let c = g.coeff(mu as usize + 1);
    Ok(c.scale(&(q(1) / q((mu * mu) as i64))))
}

/// ⟨τ_{μ1}⋯τ_{μm}⟩(n, w, 1) for m ≥ 2 from the cyclic kernel formula.
pub fn m_point(mus: &[u32]) -> Result<Poly> {
    m_point_capped(mus, DEFAULT_MAX_POINTS)
}

pub fn m_point_capped(mus: &[u32], max_points: usize) -> Result<Poly> {
    let m = mus.len();
    if m < 2 {
        return Err(Error::Input("the kernel formula needs at least two insertions".into()));
    }
    if m > max_points {
        return Err(Error::Input(format!(
            "{} insertions exceed the configured cap of {}",
            m, max_points
        )));
    }
    if mus.contains(&0) {
        return Err(Error::Input("insertion indices must be positive".into()));
    }
    let total: u32 = mus.iter().sum();
    let k = a_kernel(total as usize);
    let exps: Vec<i64> = mus.iter().map(|&x| -(x as i64) - 1).collect();
    let c = cyclic_kernel_coefficient(&k, &exps)?;
    let signed = if (m - 1) % 2 == 0 { c } else { c.negate() };
    let prod: i64 = mus.iter().map(|&x| x as i64).product();
    Ok(signed.scale(&(q(1) / q(prod))))
}

/// Connected correlator for any nonempty list of insertions.
pub fn correlator(mus: &[u32]) -> Result<Poly> {
    match mus.len() {
        0 => Err(Error::Input("empty insertion list".into())),
        1 => one_point(mus[0]),
        _ => m_point(mus),
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DessinCount {
    pub k: u32,
    pub l: u32,
    pub g: u32,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub value: Rational,
}

/// Read N_{k,l}(μ) off the correlator, with the genus of each entry.
pub fn n_kl(mu: &Partition) -> Result<Vec<DessinCount>> {
    if mu.is_empty() {
        return Err(Error::Input("μ must be nonempty".into()));
    }
    let p = correlator(mu.parts())?;
    counts_from_correlator(mu, &p)
}

pub fn counts_from_correlator(mu: &Partition, p: &Poly) -> Result<Vec<DessinCount>> {
    let (nv, wv) = (n_var(), w_var());
    let top = mu.weight() as i64 - mu.len() as i64 + 2;
    let mut out = Vec::new();
    for (mono, c) in p.terms() {
        let mut k = 0u32;
        let mut l = 0u32;
        for &(v, e) in mono {
            if v == nv {
                k = e;
            } else if v == wv {
                l = e;
            } else {
                return Err(Error::Verification(format!("unexpected symbol {}", v.name())));
            }
        }
        let rest = top - k as i64 - l as i64;
        if rest < 0 || rest % 2 != 0 {
            return Err(Error::Verification(format!(
                "monomial n^{} w^{} violates the genus grading for {}",
                k, l, mu
            )));
        }
        out.push(DessinCount {
            k,
            l,
            g: (rest / 2) as u32,
            value: c.clone(),
        });
    }
    out.sort_by(|a, b| a.g.cmp(&b.g).then(b.k.cmp(&a.k)).then(a.l.cmp(&b.l)));
    Ok(out)
}

/// Split a correlator by genus: the part with k + l = |μ| − m + 2 − 2g.
pub fn genus_part(mu: &[u32], p: &Poly, g: u32) -> Poly {
    let top = mu.iter().sum::<u32>() as i64 - mu.len() as i64 + 2;
    let want = top - 2 * g as i64;
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let deg: u32 = m.iter().map(|x| x.1).sum();
        if deg as i64 == want {
            out += &Poly::monomial(m.clone(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;

    fn nw() -> Poly {
        &n() * &w()
    }

    #[test]
    fn kernel_entries() {
        assert_eq!(a_coeff(0, 0), nw());
        let half = qf(1, 2);
        let one = Poly::one();
        assert_eq!(a_coeff(1, 0), (&nw() * &(&(&n() + &one) * &(&w() + &one))).scale(&half));
        assert_eq!(
            a_coeff(0, 1),
            (&nw() * &(&(&n() - &one) * &(&w() - &one))).scale(&-half)
        );
    }

    #[test]
    fn h_series_leading_terms() {
        let h = h_series(3, &n(), &w());
        assert_eq!(h.coeff(0), Poly::one());
        assert_eq!(h.coeff(1), nw());
        let one = Poly::one();
        assert_eq!(
            h.coeff(2),
            (&nw() * &(&(&n() + &one) * &(&w() + &one))).scale(&qf(1, 2))
        );
    }

    #[test]
    fn one_point_values() {
        assert_eq!(one_point(1).unwrap(), nw());
        assert_eq!(one_point(2).unwrap(), (&nw() * &(&n() + &w())).scale(&qf(1, 2)));
    }

    #[test]
    fn one_point_parity() {
        for mu in 1..=6u32 {
            let p = one_point(mu).unwrap();
            for (m, _) in p.terms() {
                let d: u32 = m.iter().map(|x| x.1).sum();
                assert_eq!((d + mu + 1) % 2, 0);
            }
        }
    }

    #[test]
    fn two_point_tau1_tau1() {
        assert_eq!(m_point(&[1, 1]).unwrap(), nw());
    }

    #[test]
    fn pure_part_alone_vanishes() {
        let k: DoubleKernel<Poly> = DoubleKernel {
            pure: true,
            reg: vec![vec![Poly::zero(); 4]; 4],
        };
        let c = cyclic_kernel_coefficient(&k, &[-3, -2]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn counts_for_small_mu() {
        let c = n_kl(&Partition::new(vec![1])).unwrap();
        assert_eq!(c, vec![DessinCount { k: 1, l: 1, g: 0, value: q(1) }]);
        let c = n_kl(&Partition::new(vec![2])).unwrap();
        assert_eq!(
            c,
            vec![
                DessinCount { k: 2, l: 1, g: 0, value: qf(1, 2) },
                DessinCount { k: 1, l: 2, g: 0, value: qf(1, 2) }
            ]
        );
        let c = n_kl(&Partition::new(vec![1, 1])).unwrap();
        assert_eq!(c, vec![DessinCount { k: 1, l: 1, g: 0, value: q(1) }]);
    }

    #[test]
    fn symmetric_under_reordering_and_swap() {
        let a = m_point(&[1, 2, 3]).unwrap();
        let b = m_point(&[3, 1, 2]).unwrap();
        assert_eq!(a, b);
        let mut sw = std::collections::HashMap::new();
        sw.insert(n_var(), w());
        sw.insert(w_var(), n());
        assert_eq!(a.subs(&sw), a);
    }
}
