//! Integer partitions, Young-diagram data, symmetric-group characters and permutations.

use crate::algebra::{factorial, q, Poly, Rational};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build from any list of positive parts; they are sorted into weakly decreasing order.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    /// Parse "3,1,1" (or an empty string for the empty partition).
    pub fn parse(s: &str) -> Result<Partition, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let v: u32 = tok
                .trim()
                .parse()
                .map_err(|_| format!("not a positive integer: {:?}", tok.trim()))?;
            if v == 0 {
                return Err("parts must be positive".into());
            }
            parts.push(v);
        }
        Ok(Partition::new(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicities n_i of each part size i.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Π n_i!
    pub fn aut(&self) -> Rational {
        self.multiplicities()
            .values()
            .map(|&n| factorial(n as u64))
            .product()
    }

    /// z_μ = Π i^{n_i} n_i!
    pub fn z(&self) -> Rational {
        let mut z = q(1);
        for (&i, &n) in &self.multiplicities() {
            z *= factorial(n as u64) * q((i as i64).pow(n));
        }
        z
    }

    /// (hook length, content) for each box; content is column − row.
    pub fn hooks_contents(&self) -> Vec<(u32, i64)> {
        let conj = self.conjugate();
        let mut out = Vec::new();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.parts[j] as usize - i - 1;
                out.push(((arm + leg + 1) as u32, j as i64 - i as i64));
            }
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let mut c = Vec::new();
        if let Some(&first) = self.parts.first() {
            for j in 0..first {
                c.push(self.parts.iter().filter(|&&p| p > j).count() as u32);
            }
        }
        Partition { parts: c }
    }

    pub fn hook_product(&self) -> Rational {
        self.hooks_contents().iter().map(|&(h, _)| q(h as i64)).product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `d`, in reverse lexicographic order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `d` with exactly `len` parts.
pub fn partitions_with_len(d: u32, len: usize) -> Vec<Partition> {
    partitions_of(d).into_iter().filter(|p| p.len() == len).collect()
}

fn char_memo() -> &'static Mutex<HashMap<(Vec<u32>, Vec<u32>), i64>> {
    static M: OnceLock<Mutex<HashMap<(Vec<u32>, Vec<u32>), i64>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Irreducible character χ^λ evaluated on cycle type ρ (Murnaghan–Nakayama).
pub fn character(lambda: &Partition, rho: &Partition) -> i64 {
    assert_eq!(lambda.weight(), rho.weight(), "character arguments of different size");
    let key = (lambda.parts.clone(), rho.parts.clone());
    if let Some(&v) = char_memo().lock().unwrap().get(&key) {
        return v;
    }
    let v = mn(&lambda.parts, &rho.parts);
    char_memo().lock().unwrap().insert(key, v);
    v
}

fn mn(lambda: &[u32], rho: &[u32]) -> i64 {
    if rho.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let r = rho[0] as i64;
    let l = lambda.len();
    // beta numbers β_i = λ_i + (l − 1 − i), strictly decreasing
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (l - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for i in 0..l {
        let nb = beta[i] - r;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let between = beta.iter().filter(|&&b| b > nb && b < beta[i]).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nbeta = beta.clone();
        nbeta[i] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let nl = nbeta.len();
        let mut np: Vec<u32> = nbeta
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (nl - 1 - j) as i64) as u32)
            .collect();
        np.retain(|&p| p > 0);
        let key = (np.clone(), rho[1..].to_vec());
        let cached = char_memo().lock().unwrap().get(&key).copied();
        let sub = match cached {
            Some(v) => v,
            None => {
                let v = mn(&np, &rho[1..]);
                char_memo().lock().unwrap().insert(key, v);
                v
            }
        };
        total += sign * sub;
    }
    total
}

/// s_μ = Σ_ν χ^μ(ν) p_ν / z_ν, as (ν, coefficient) pairs.
pub fn schur_power_sum_terms(mu: &Partition) -> Vec<(Partition, Rational)> {
    partitions_of(mu.weight())
        .into_iter()
        .filter_map(|nu| {
            let c = character(mu, &nu);
            if c == 0 {
                None
            } else {
                let z = nu.z();
                Some((nu, q(c) / z))
            }
        })
        .collect()
}

/// Name of the j-th power-sum variable.
pub fn p_name(j: u32) -> String {
    format!("p{}", j)
}

pub fn power_sum_monomial(nu: &Partition) -> Poly {
    nu.parts
        .iter()
        .fold(Poly::one(), |acc, &j| &acc * &Poly::var(&p_name(j)))
}

pub fn schur_in_power_sums(mu: &Partition) -> Poly {
    let mut out = Poly::zero();
    for (nu, c) in schur_power_sum_terms(mu) {
        out += &power_sum_monomial(&nu).scale(&c);
    }
    out
}

/// A permutation of {0..d−1}, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Permutation {
        Permutation {
            img: (0..d).collect(),
        }
    }

    pub fn from_images(img: Vec<usize>) -> Option<Permutation> {
        let mut seen = vec![false; img.len()];
        for &i in &img {
            if i >= img.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { img })
    }

    /// Transposition of `a` and `b` (0-based).
    pub fn transposition(d: usize, a: usize, b: usize) -> Permutation {
        let mut p = Permutation::identity(d);
        p.img.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            img: other.img.iter().map(|&i| self.img[i]).collect(),
        }
    }

    /// Right-multiply by the transposition (a b) in place: `self ∘ (a b)`.
    pub fn mul_transposition(&mut self, a: usize, b: usize) {
        self.img.swap(a, b);
    }

    pub fn cycle_type(&self) -> Partition {
        let d = self.img.len();
        let mut seen = vec![false; d];
        let mut parts = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.img[i];
                len += 1;
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    /// All permutations of {0..d−1} in lexicographic order of image arrays.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..d).collect();
        loop {
            out.push(Permutation { img: cur.clone() });
            // next permutation
            let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..d).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// Union-find over {0..d−1}.
pub struct Orbits {
    parent: Vec<usize>,
    count: usize,
}

impl Orbits {
    pub fn new(d: usize) -> Orbits {
        Orbits {
            parent: (0..d).collect(),
            count: d,
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.count -= 1;
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

/// Whether the group generated by `gens` acts transitively on {0..d−1}.
pub fn is_transitive(gens: &[Permutation], d: usize) -> bool {
    let mut o = Orbits::new(d);
    for g in gens {
        for i in 0..d {
            o.union(i, g.apply(i));
        }
    }
    o.count() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(10).len(), 42);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn hooks_and_contents() {
        assert_eq!(p(&[1]).hooks_contents(), vec![(1, 0)]);
        let mut hc = p(&[2, 1]).hooks_contents();
        hc.sort();
        assert_eq!(hc, vec![(1, -1), (1, 1), (3, 0)]);
        assert_eq!(p(&[2, 2]).hook_product(), q(12));
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for d in 0..=8 {
            let s: Rational = partitions_of(d).iter().map(|m| factorial(d as u64) / m.z()).sum();
            assert_eq!(s, factorial(d as u64));
        }
    }

    #[test]
    fn small_schur_functions() {
        let p1 = Poly::var("p1");
        let p2 = Poly::var("p2");
        assert_eq!(schur_in_power_sums(&p(&[1])), p1.clone());
        let half = crate::algebra::qf(1, 2);
        assert_eq!(schur_in_power_sums(&p(&[2])), (&(&p1 * &p1) + &p2).scale(&half));
        assert_eq!(schur_in_power_sums(&p(&[1, 1])), (&(&p1 * &p1) - &p2).scale(&half));
    }

    #[test]
    fn characters_dimension_is_hook_formula() {
        for d in 1..=6 {
            let id = Partition::new(vec![1; d as usize]);
            for lam in partitions_of(d) {
                let dim = q(character(&lam, &id));
                assert_eq!(dim, factorial(d as u64) / lam.hook_product());
            }
        }
    }

    #[test]
    fn permutations_and_transitivity() {
        let t = Permutation::transposition(3, 0, 1);
        assert_eq!(t.cycle_type(), p(&[2, 1]));
        assert!(is_transitive(&[Permutation::identity(1)], 1));
        assert!(!is_transitive(&[t.clone()], 3));
        let c = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert!(is_transitive(&[c], 3));
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(Partition::parse("1,2").unwrap(), p(&[2, 1]));
        assert!(Partition::parse("1,x").is_err());
        assert!(Partition::parse("0").is_err());
    }
}
