//! Strictly monotone double Hurwitz numbers by exhaustive enumeration of
//! factorizations α τ₁⋯τ_r = β, and the comparison with dessin counts.

use crate::algebra::{factorial, q, Poly, Rational};
use crate::dessins::{self, n_var, w_var};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Orbits, Partition, Permutation};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

pub const DEFAULT_MAX_DEGREE: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzQuery {
    pub g: u32,
    pub mu: Partition,
    pub nu: Partition,
}

impl HurwitzQuery {
    /// Number of transpositions, r = ℓ(μ) + ℓ(ν) + 2g − 2 (negative means no tuples).
    pub fn r(&self) -> i64 {
        self.mu.len() as i64 + self.nu.len() as i64 + 2 * self.g as i64 - 2
    }
}

/// Counts of transitive strictly monotone factorizations starting from the class
/// of `mu`, keyed by (cycle type of β, r).
pub type Tally = BTreeMap<(Partition, usize), u64>;

fn tally_cache() -> &'static Mutex<HashMap<Partition, Tally>> {
    static C: OnceLock<Mutex<HashMap<Partition, Tally>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn canonical_orbits(o: &mut Orbits, d: usize) -> Vec<u8> {
    let mut label = vec![u8::MAX; d];
    let mut out = vec![0u8; d];
    let mut next = 0u8;
    for i in 0..d {
        let r = o.find(i);
        if label[r] == u8::MAX {
            label[r] = next;
            next += 1;
        }
        out[i] = label[r];
    }
    out
}

fn orbits_from_labels(labels: &[u8]) -> Orbits {
    let d = labels.len();
    let mut o = Orbits::new(d);
    let mut first: HashMap<u8, usize> = HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        match first.get(&l) {
            Some(&j) => o.union(i, j),
            None => {
                first.insert(l, i);
            }
        }
    }
    o
}

/// Tally of all strictly monotone factorizations from the class of `mu`.
///
/// Points are 0-based; the larger entries b_j of the transpositions are taken in
/// increasing order, and at each b one either skips it or multiplies by (a, b)
/// for some a < b. Identical partial states (current product, orbit partition,
/// transposition count) are merged, which keeps d = 8 cheap.
pub fn monotone_tally(mu: &Partition) -> Result<Tally> {
    let d = mu.weight() as usize;
    if d == 0 {
        return Err(Error::Input("partitions must be nonempty".into()));
    }
    if d > u8::MAX as usize {
        return Err(Error::Input("degree too large".into()));
    }
    if let Some(t) = tally_cache().lock().unwrap().get(mu) {
        return Ok(t.clone());
    }
    type State = (Vec<u8>, Vec<u8>, usize);
    let mut states: HashMap<State, u64> = HashMap::new();
    for alpha in Permutation::all(d) {
        if &alpha.cycle_type() != mu {
            continue;
        }
        let mut o = Orbits::new(d);
        for i in 0..d {
            o.union(i, alpha.apply(i));
        }
        let img: Vec<u8> = (0..d).map(|i| alpha.apply(i) as u8).collect();
        *states.entry((img, canonical_orbits(&mut o, d), 0)).or_insert(0) += 1;
    }
    for b in 1..d {
        let next: Vec<(State, u64)> = states
            .par_iter()
            .flat_map_iter(|((img, orb, r), &count)| {
                let mut out = vec![((img.clone(), orb.clone(), *r), count)];
                for a in 0..b {
                    let mut img2 = img.clone();
                    img2.swap(a, b);
                    let mut o = orbits_from_labels(orb);
                    o.union(a, b);
                    out.push(((img2, canonical_orbits(&mut o, d), r + 1), count));
                }
                out
            })
            .collect();
        let mut merged: HashMap<State, u64> = HashMap::new();
        for (s, c) in next {
            *merged.entry(s).or_insert(0) += c;
        }
        states = merged;
    }
    let mut tally = Tally::new();
    for ((img, orb, r), c) in states {
        if orb.iter().any(|&l| l != 0) {
            continue;
        }
        let beta = Permutation::from_images(img.iter().map(|&x| x as usize).collect()).unwrap();
        *tally.entry((beta.cycle_type(), r)).or_insert(0) += c;
    }
    tally_cache().lock().unwrap().insert(mu.clone(), tally.clone());
    Ok(tally)
}

fn check_query(q: &HurwitzQuery, cap: u32) -> Result<()> {
    if q.mu.weight() != q.nu.weight() {
        return Err(Error::Input(format!("|{}| ≠ |{}|", q.mu, q.nu)));
    }
    if q.mu.is_empty() {
        return Err(Error::Input("partitions must be nonempty".into()));
    }
    if q.mu.weight() > cap {
        return Err(Error::Input(format!(
            "degree {} exceeds the cap of {}",
            q.mu.weight(),
            cap
        )));
    }
    Ok(())
}

/// h_g(μ, ν).
pub fn strictly_monotone_hurwitz(q: &HurwitzQuery) -> Result<u64> {
    strictly_monotone_hurwitz_capped(q, DEFAULT_MAX_DEGREE)
}

pub fn strictly_monotone_hurwitz_capped(q: &HurwitzQuery, cap: u32) -> Result<u64> {
    check_query(q, cap)?;
    let r = q.r();
    if r < 0 {
        return Ok(0);
    }
    let t = monotone_tally(&q.mu)?;
    Ok(t.get(&(q.nu.clone(), r as usize)).copied().unwrap_or(0))
}

/// Direct enumeration without state merging: every α of type μ and every
/// strictly monotone sequence of r transpositions. Used to cross-check the tally.
pub fn strictly_monotone_hurwitz_naive(q: &HurwitzQuery) -> Result<u64> {
    check_query(q, 6)?;
    let r = q.r();
    if r < 0 {
        return Ok(0);
    }
    let d = q.mu.weight() as usize;
    let alphas: Vec<Permutation> = Permutation::all(d)
        .into_iter()
        .filter(|p| p.cycle_type() == q.mu)
        .collect();
    let total = alphas
        .par_iter()
        .map(|alpha| {
            let mut count = 0u64;
            let mut taus = Vec::new();
            walk(alpha, d, r as usize, 1, &mut taus, &q.nu, &mut count);
            count
        })
        .sum();
    Ok(total)
}

fn walk(
    alpha: &Permutation,
    d: usize,
    r: usize,
    b_min: usize,
    taus: &mut Vec<(usize, usize)>,
    nu: &Partition,
    count: &mut u64,
) {
    if taus.len() == r {
        let mut beta = alpha.clone();
        for &(a, b) in taus.iter() {
            beta.mul_transposition(a, b);
        }
        if &beta.cycle_type() != nu {
            return;
        }
        let mut gens = vec![alpha.clone()];
        gens.extend(taus.iter().map(|&(a, b)| Permutation::transposition(d, a, b)));
        if crate::partitions::is_transitive(&gens, d) {
            *count += 1;
        }
        return;
    }
    for b in b_min..d {
        for a in 0..b {
            taus.push((a, b));
            walk(alpha, d, r, b + 1, taus, nu, count);
            taus.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct HurwitzComparison {
    pub mu: Vec<u32>,
    pub g: u32,
    pub k: u32,
    pub l: u32,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rhs: Rational,
    pub equal: bool,
}

/// The k forced by the grading |μ| − m − k − l = 2g − 2, if positive.
pub fn k_for(mu: &Partition, g: u32, l: u32) -> Option<u32> {
    let k = mu.weight() as i64 - mu.len() as i64 - l as i64 - 2 * g as i64 + 2;
    (k >= 1).then_some(k as u32)
}

/// N_{k,l}(μ) against (Π n_i!)/|μ|! · Σ_{ℓ(ν)=l} h_g(μ, ν).
pub fn verify_dessin_hurwitz(mu: &Partition, g: u32, l: u32) -> Result<HurwitzComparison> {
    let corr = dessins::correlator(mu.parts())?;
    verify_with_correlator(mu, g, l, &corr)
}

pub fn verify_with_correlator(mu: &Partition, g: u32, l: u32, corr: &Poly) -> Result<HurwitzComparison> {
    if l == 0 {
        return Err(Error::Input("l must be positive".into()));
    }
    let k = k_for(mu, g, l).ok_or_else(|| {
        Error::Input(format!("no positive k for μ = {}, g = {}, l = {}", mu, g, l))
    })?;
    let lhs = corr.coeff_of(&vec![(n_var(), k), (w_var(), l)]);
    let d = mu.weight();
    let mut sum = 0u64;
    for nu in partitions_of(d) {
        if nu.len() == l as usize {
            sum += strictly_monotone_hurwitz(&HurwitzQuery {
                g,
                mu: mu.clone(),
                nu,
            })?;
        }
    }
    let rhs = mu.aut() * q(sum as i64) / factorial(d as u64);
    Ok(HurwitzComparison {
        mu: mu.parts().to_vec(),
        g,
        k,
        l,
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// (z_μ/|μ|!) Σ_{ℓ(ν)=s} h_g(μ, ν), keyed by (g, s), for g ≤ `max_g`.
pub fn c_expansion_from_hurwitz(mu: &Partition, max_g: u32) -> Result<BTreeMap<(u32, u32), Rational>> {
    let d = mu.weight();
    let t = monotone_tally(mu)?;
    let mut out = BTreeMap::new();
    for ((nu, r), c) in t {
        let twice_g = r as i64 + 2 - mu.len() as i64 - nu.len() as i64;
        if twice_g < 0 || twice_g % 2 != 0 || twice_g / 2 > max_g as i64 {
            continue;
        }
        let key = ((twice_g / 2) as u32, nu.len() as u32);
        let v = mu.z() * q(c as i64) / factorial(d as u64);
        let e = out.entry(key).or_insert_with(|| q(0));
        *e += v;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hq(g: u32, mu: &[u32], nu: &[u32]) -> HurwitzQuery {
        HurwitzQuery {
            g,
            mu: Partition::new(mu.to_vec()),
            nu: Partition::new(nu.to_vec()),
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(strictly_monotone_hurwitz(&hq(0, &[1], &[1])).unwrap(), 1);
        assert_eq!(strictly_monotone_hurwitz(&hq(0, &[2], &[2])).unwrap(), 1);
        assert_eq!(strictly_monotone_hurwitz(&hq(0, &[1, 1], &[2])).unwrap(), 1);
        assert_eq!(strictly_monotone_hurwitz(&hq(0, &[1, 1], &[1, 1])).unwrap(), 0);
    }

    #[test]
    fn tally_matches_naive_enumeration() {
        for d in 1..=4u32 {
            for mu in partitions_of(d) {
                for nu in partitions_of(d) {
                    for g in 0..=1 {
                        let q = HurwitzQuery { g, mu: mu.clone(), nu: nu.clone() };
                        assert_eq!(
                            strictly_monotone_hurwitz(&q).unwrap(),
                            strictly_monotone_hurwitz_naive(&q).unwrap(),
                            "{:?}",
                            q
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_mismatched_degrees() {
        assert!(strictly_monotone_hurwitz(&hq(0, &[2], &[1])).is_err());
        assert!(strictly_monotone_hurwitz(&hq(0, &[9], &[9])).is_err());
    }

    #[test]
    fn dessin_bridge_small() {
        for (mu, l) in [(vec![1], 1), (vec![2], 1), (vec![1, 1], 1)] {
            let c = verify_dessin_hurwitz(&Partition::new(mu), 0, l).unwrap();
            assert!(c.equal, "{:?}", c);
        }
        let c = verify_dessin_hurwitz(&Partition::new(vec![2]), 0, 1).unwrap();
        assert_eq!(c.lhs, crate::algebra::qf(1, 2));
    }
}
