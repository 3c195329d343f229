//! Independent constructions of the dessin / LUE partition function in the
//! power sums p_1..p_D (ε = 1): the cut-and-join exponential, the Schur
//! expansion, and the Virasoro, homogeneity and dilaton checks on them.

use crate::algebra::{q, Poly, Rational, Series, Var};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, schur_power_sum_terms, Partition};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// A series in p_1..p_D (variable j−1 is p_j, of weight j) with polynomial coefficients.
pub type CouplingSeries = Series<Poly>;

/// One term c · Π p_{mult} · Π ∂/∂p_{diff}; indices are listed with repetition.
#[derive(Clone, Debug, PartialEq)]
pub struct OpTerm {
    pub coeff: Poly,
    pub mult: Vec<u32>,
    pub diff: Vec<u32>,
}

impl OpTerm {
    pub fn shift(&self) -> i64 {
        self.mult.iter().map(|&j| j as i64).sum::<i64>()
            - self.diff.iter().map(|&j| j as i64).sum::<i64>()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearOperator {
    pub terms: Vec<OpTerm>,
}

impl LinearOperator {
    pub fn push(&mut self, coeff: Poly, mult: Vec<u32>, diff: Vec<u32>) {
        if !coeff.is_zero() {
            self.terms.push(OpTerm { coeff, mult, diff });
        }
    }

    /// The largest amount by which a term lowers weight (0 if none does).
    pub fn max_lowering(&self) -> u32 {
        self.terms.iter().map(|t| (-t.shift()).max(0) as u32).max().unwrap_or(0)
    }

    /// Some(s) if every term shifts weight by exactly s.
    pub fn homogeneous_shift(&self) -> Option<i64> {
        let mut it = self.terms.iter().map(|t| t.shift());
        let first = it.next()?;
        it.all(|s| s == first).then_some(first)
    }

    pub fn apply(&self, s: &CouplingSeries) -> CouplingSeries {
        let nv = s.nvars();
        let mut out = s.like();
        for (e, c) in s.terms() {
            'term: for t in &self.terms {
                let mut ne = e.clone();
                let mut factor = q(1);
                for &j in &t.diff {
                    let k = j as usize - 1;
                    if k >= nv || ne[k] == 0 {
                        continue 'term;
                    }
                    factor *= q(ne[k] as i64);
                    ne[k] -= 1;
                }
                for &j in &t.mult {
                    let k = j as usize - 1;
                    if k >= nv {
                        continue 'term;
                    }
                    ne[k] += 1;
                }
                out.insert(ne, (c * &t.coeff).scale(&factor));
            }
        }
        out
    }

    /// Apply and keep only the weights not contaminated by truncation.
    pub fn apply_trusted(&self, s: &CouplingSeries) -> Result<CouplingSeries> {
        let window = trusted_window(s.cutoff(), self)?;
        Ok(self.apply(s).with_cutoff(window))
    }
}

/// Highest weight at which `op(s)` is exact when `s` is known up to weight `cutoff`.
pub fn trusted_window(cutoff: u32, op: &LinearOperator) -> Result<u32> {
    let low = op.max_lowering();
    if low > cutoff {
        return Err(Error::Input(format!(
            "operator lowers weight by {} but the series is only known to weight {}",
            low, cutoff
        )));
    }
    Ok(cutoff - low)
}

/// W = s·Λ₁ + M₁ + c·p₁ with Λ₁ = Σ (i−1) p_i ∂_{i−1} and
/// M₁ = Σ_{i≥2} Σ_{j<i} [(i−1) p_j p_{i−j} ∂_{i−1} + j(i−j) p_{i+1} ∂_j ∂_{i−j}],
/// restricted to p_1..p_D.
pub fn cut_and_join_operator(d: u32, s: &Poly, c: &Poly) -> LinearOperator {
    cut_and_join_with_offset(d, s, c, 1)
}

/// Same operator with Λ₁ = Σ (i−k) p_i ∂_{i−1}. Only k = 1 reproduces the Schur
/// expansion; k = 2 loses the p₂ term of W²(1) and is kept as a control.
pub fn cut_and_join_with_offset(d: u32, s: &Poly, c: &Poly, k: u32) -> LinearOperator {
    let mut op = LinearOperator::default();
    op.push(c.clone(), vec![1], vec![]);
    for i in 2..=d {
        op.push(s.scale(&q(i as i64 - k as i64)), vec![i], vec![i - 1]);
    }
    for i in 2..=d + 1 {
        for j in 1..i {
            op.push(Poly::int(i as i64 - 1), vec![j, i - j], vec![i - 1]);
            if i < d {
                op.push(
                    Poly::int((j * (i - j)) as i64),
                    vec![i + 1],
                    vec![j, i - j],
                );
            }
        }
    }
    op
}

/// Σ_{k≤D} W^k(1)/k!, using that W raises weight by exactly one.
pub fn exp_cut_and_join(d: u32, s: &Poly, c: &Poly) -> Result<CouplingSeries> {
    let op = cut_and_join_operator(d, s, c);
    if op.homogeneous_shift() != Some(1) {
        return Err(Error::Verification(
            "cut-and-join operator is not of homogeneous weight one".into(),
        ));
    }
    let one = Series::constant((1..=d).collect(), d, Poly::one());
    let mut z = one.clone();
    let mut cur = one;
    for k in 1..=d {
        cur = op.apply(&cur).scale(&(q(1) / q(k as i64)));
        z = z.add(&cur);
    }
    Ok(z)
}

/// Z_dessins(u, v) by the cut-and-join exponential.
pub fn cut_and_join_z(d: u32, u: &Poly, v: &Poly) -> Result<CouplingSeries> {
    exp_cut_and_join(d, &(u + v), &(u * v))
}

/// Z_LUE1(x, a) by the Laguerre cut-and-join: 2(x + a/2)Λ₁ + M₁ + x(x+a)p₁.
pub fn cut_and_join_z_laguerre(d: u32, x: &Poly, a: &Poly) -> Result<CouplingSeries> {
    let s = &x.scale(&q(2)) + a;
    let c = x * &(x + a);
    exp_cut_and_join(d, &s, &c)
}

fn exponents_of(nu: &Partition, d: u32) -> Vec<u32> {
    let mut e = vec![0u32; d as usize];
    for &j in nu.parts() {
        e[j as usize - 1] += 1;
    }
    e
}

/// Π over boxes of (u + c)(v + c)/h.
pub fn content_weight(mu: &Partition, u: &Poly, v: &Poly) -> Poly {
    let mut p = Poly::one();
    for (h, c) in mu.hooks_contents() {
        let cc = Poly::int(c);
        p = &p * &(&(u + &cc) * &(v + &cc));
        p = p.scale(&(q(1) / q(h as i64)));
    }
    p
}

/// Z_dessins(u, v) = Σ_μ s_μ(p) Π_□ (u + c(□))(v + c(□))/h(□).
pub fn schur_z(d: u32, u: &Poly, v: &Poly) -> CouplingSeries {
    let weights: Vec<u32> = (1..=d).collect();
    let pieces: Vec<Vec<(Vec<u32>, Poly)>> = (1..=d)
        .into_par_iter()
        .map(|k| {
            let mut acc: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
            for mu in partitions_of(k) {
                let w = content_weight(&mu, u, v);
                for (nu, c) in schur_power_sum_terms(&mu) {
                    let slot = acc.entry(exponents_of(&nu, d)).or_default();
                    *slot += &w.scale(&c);
                }
            }
            acc.into_iter().collect()
        })
        .collect();
    let mut z = Series::constant(weights, d, Poly::one());
    for piece in pieces {
        for (e, c) in piece {
            z.insert(e, c);
        }
    }
    z
}

/// Connected correlators ⟨τ_μ⟩ read off log Z: coefficient of p^μ times aut(μ).
pub fn correlators_from_z(z: &CouplingSeries) -> Result<BTreeMap<Partition, Poly>> {
    let f = z.log()?;
    let mut out = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut parts = Vec::new();
        for (k, &m) in e.iter().enumerate() {
            for _ in 0..m {
                parts.push(k as u32 + 1);
            }
        }
        let mu = Partition::new(parts);
        let aut = mu.aut();
        out.insert(mu, c.scale(&aut));
    }
    Ok(out)
}

/// Which of the three Virasoro families to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VirasoroKind {
    /// L_b on Z_dessins(n, w): linear coefficient n + w, constant nw.
    Dessin,
    /// L_k on the corrected function at ε = 1: 2(x + a/2), x(x + a).
    Corrected,
    /// L_m on Z_LUE1 in (n, a): 2n + a, n(n + a).
    Lue1,
}

impl VirasoroKind {
    pub fn symbols(&self) -> (Poly, Poly) {
        match self {
            VirasoroKind::Dessin => (Poly::var("n"), Poly::var("w")),
            VirasoroKind::Corrected => (Poly::var("x"), Poly::var("a")),
            VirasoroKind::Lue1 => (Poly::var("n"), Poly::var("a")),
        }
    }

    fn linear_and_constant(&self) -> (Poly, Poly) {
        let (s, t) = self.symbols();
        match self {
            VirasoroKind::Dessin => (&s + &t, &s * &t),
            _ => (&s.scale(&q(2)) + &t, &s * &(&s + &t)),
        }
    }

    /// The partition function these operators annihilate, to weight d.
    pub fn partition_function(&self, d: u32) -> Result<CouplingSeries> {
        let (s, t) = self.symbols();
        match self {
            VirasoroKind::Dessin => Ok(schur_z(d, &s, &t)),
            _ => cut_and_join_z_laguerre(d, &s, &t),
        }
    }
}

/// L_b = s·b ∂_b + Σ_j (b+j) p̃_j ∂_{b+j} + Σ_{i+j=b} ij ∂_i∂_j + c δ_{b0}, p̃_j = p_j − δ_{j1}.
pub fn virasoro_operator(kind: VirasoroKind, b: u32, d: u32) -> LinearOperator {
    let (s, c) = kind.linear_and_constant();
    let mut op = LinearOperator::default();
    if b == 0 {
        op.push(c, vec![], vec![]);
    } else if b <= d {
        op.push(s.scale(&q(b as i64)), vec![], vec![b]);
    }
    for j in 1..=d {
        if b + j <= d {
            op.push(Poly::int((b + j) as i64), vec![j], vec![b + j]);
        }
    }
    if b + 1 <= d {
        op.push(Poly::int(-((b + 1) as i64)), vec![], vec![b + 1]);
    }
    for i in 1..b {
        op.push(Poly::int((i * (b - i)) as i64), vec![], vec![i, b - i]);
    }
    op
}

/// L_b(Z) restricted to its trusted window; zero means annihilation holds there.
pub fn virasoro_apply(kind: VirasoroKind, b: u32, z: &CouplingSeries) -> Result<CouplingSeries> {
    let op = virasoro_operator(kind, b, z.cutoff());
    op.apply_trusted(z)
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct AnnihilationReport {
    pub index: u32,
    pub trusted_weight: u32,
    pub holds: bool,
}

/// Check L_b Z = 0 for b = 0..=max_b, each with Z computed far enough to trust weight `target`.
pub fn virasoro_annihilation(kind: VirasoroKind, max_b: u32, target: u32) -> Result<Vec<AnnihilationReport>> {
    let d = target + max_b + 1;
    let z = kind.partition_function(d)?;
    (0..=max_b)
        .map(|b| {
            let zb = z.with_cutoff(target + b + 1);
            let r = virasoro_apply(kind, b, &zb)?;
            Ok(AnnihilationReport {
                index: b,
                trusted_weight: r.cutoff(),
                holds: r.is_zero(),
            })
        })
        .collect()
}

/// A reproducible pseudo-random series in p_1..p_D with small rational coefficients
/// in the operator's symbols.
pub fn random_series(d: u32, seed: u64, symbols: &[Poly]) -> CouplingSeries {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut s = Series::zero((1..=d).collect(), d);
    for k in 0..=d {
        for nu in partitions_of(k) {
            let mut c = Poly::int(rng.gen_range(-5..=5));
            for sym in symbols {
                let r = q(rng.gen_range(-3..=3)) / q(rng.gen_range(1..=4));
                c += &sym.scale(&r);
            }
            s.insert(exponents_of(&nu, d), c);
        }
    }
    s
}

/// [L_i, L_j](f) − (i − j) L_{i+j}(f) on the common trusted window.
pub fn commutator_defect(kind: VirasoroKind, i: u32, j: u32, f: &CouplingSeries) -> Result<CouplingSeries> {
    let d = f.cutoff();
    let li = virasoro_operator(kind, i, d);
    let lj = virasoro_operator(kind, j, d);
    let lij = virasoro_operator(kind, i + j, d);
    let window = trusted_window(trusted_window(d, &lj)?, &li)?
        .min(trusted_window(trusted_window(d, &li)?, &lj)?)
        .min(trusted_window(d, &lij)?);
    let a = li.apply(&lj.apply(f));
    let b = lj.apply(&li.apply(f));
    let c = lij.apply(f).scale(&q(i as i64 - j as i64));
    Ok(a.sub(&b).sub(&c).with_cutoff(window))
}

pub fn eps_var() -> Var {
    Var::new("eps")
}

/// G = ε²F with the genus restored: a term of p^μ (m parts) whose coefficient has total
/// degree k in `vars` gets ε^{2g}, 2g = |μ| − m + 2 − k.
pub fn with_genus_parameter(f: &CouplingSeries, vars: &[Var]) -> Result<CouplingSeries> {
    let eps = Poly::from_var(eps_var());
    let mut out = f.like();
    for (e, c) in f.terms() {
        let m: u32 = e.iter().sum();
        let size = f.weight_of(e);
        for (mono, r) in c.terms() {
            if mono.iter().any(|p| !vars.contains(&p.0)) {
                return Err(Error::Input("coefficient has symbols outside the grading".into()));
            }
            let k: u32 = mono.iter().map(|p| p.1).sum();
            let twog = size as i64 - m as i64 + 2 - k as i64;
            if twog < 0 || twog % 2 != 0 {
                return Err(Error::Verification(format!(
                    "term of degree {} at weight {} violates the genus parity",
                    k, size
                )));
            }
            let t = Poly::monomial(mono.clone(), r.clone());
            out.insert(e.clone(), &t * &eps.pow(twog as u32));
        }
    }
    Ok(out)
}

/// Σ (j−1) p_j ∂_j G − (E_{ε,vars} − 2) G; zero for the genus-graded free energy.
pub fn homogeneity_residual(g: &CouplingSeries, vars: &[Var]) -> CouplingSeries {
    let mut all = vars.to_vec();
    all.push(eps_var());
    let mut out = g.like();
    for (e, c) in g.terms() {
        let m: u32 = e.iter().sum();
        let shift = q(g.weight_of(e) as i64 - m as i64 + 2);
        out.insert(e.clone(), &c.scale(&shift) - &c.euler_in(&all));
    }
    out
}

/// (Σ p_j ∂_j + E_{ε,vars} − 2) G − ∂_{p1} G at positive weights (weight 0 is the
/// Barnes constant and is checked separately).
pub fn dilaton_residual(g: &CouplingSeries, vars: &[Var]) -> CouplingSeries {
    let mut all = vars.to_vec();
    all.push(eps_var());
    let mut out = g.like();
    for (e, c) in g.terms() {
        let m: u32 = e.iter().sum();
        out.insert(e.clone(), &c.scale(&q(m as i64 - 2)) + &c.euler_in(&all));
    }
    let out = out.sub(&g.derive(0));
    let mut trimmed = out.like();
    for (e, c) in out.terms() {
        if e.iter().any(|&x| x > 0) {
            trimmed.insert(e.clone(), c.clone());
        }
    }
    trimmed.with_cutoff(g.cutoff().saturating_sub(1))
}

/// The genus-graded LUE1 free energy ε²F(x, a) to weight d, computed by cut-and-join.
pub fn graded_free_energy_xa(d: u32) -> Result<CouplingSeries> {
    let (x, a) = (Poly::var("x"), Poly::var("a"));
    let f = cut_and_join_z_laguerre(d, &x, &a)?.log()?;
    with_genus_parameter(&f, &[Var::new("x"), Var::new("a")])
}

/// Add `delta` to one coefficient; used to confirm the checks can fail.
pub fn perturb(s: &CouplingSeries, e: Vec<u32>, delta: &Rational) -> CouplingSeries {
    let mut out = s.clone();
    out.insert(e, Poly::constant(delta.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;

    fn nw() -> (Poly, Poly) {
        (Poly::var("n"), Poly::var("w"))
    }

    fn e(v: &[u32], d: u32) -> Vec<u32> {
        let mut x = v.to_vec();
        x.resize(d as usize, 0);
        x
    }

    #[test]
    fn low_weight_parts() {
        let (n, w) = nw();
        let z = cut_and_join_z(3, &n, &w).unwrap();
        assert_eq!(z.constant_term(), Poly::one());
        assert_eq!(z.coeff(&e(&[1], 3)), &n * &w);
        assert_eq!(z.coeff(&e(&[0, 1], 3)), (&(&n + &w) * &(&n * &w)).scale(&qf(1, 2)));
    }

    #[test]
    fn schur_matches_cut_and_join() {
        let (n, w) = nw();
        for d in 1..=5 {
            assert_eq!(schur_z(d, &n, &w), cut_and_join_z(d, &n, &w).unwrap(), "weight {}", d);
        }
    }

    #[test]
    fn laguerre_is_the_substitution() {
        let (x, a) = (Poly::var("x"), Poly::var("a"));
        let l = cut_and_join_z_laguerre(5, &x, &a).unwrap();
        let s = cut_and_join_z(5, &x, &(&x + &a)).unwrap();
        assert_eq!(l, s);
        assert_eq!(l.coeff(&e(&[1], 5)), &x * &(&x + &a));
    }

    #[test]
    fn offset_two_misses_p2() {
        let (n, w) = nw();
        let op = cut_and_join_with_offset(2, &(&n + &w), &(&n * &w), 2);
        let one = Series::constant(vec![1, 2], 2, Poly::one());
        let w2 = op.apply(&op.apply(&one));
        assert!(w2.coeff(&[0, 1]).is_zero());
    }

    #[test]
    fn schur_is_symmetric() {
        let (n, w) = nw();
        let z = schur_z(5, &n, &w);
        let sw = schur_z(5, &w, &n);
        assert_eq!(z, sw);
    }

    #[test]
    fn correlators_match_kernel_formula() {
        let (n, w) = nw();
        let z = cut_and_join_z(5, &n, &w).unwrap();
        let c = correlators_from_z(&z).unwrap();
        for (mu, p) in c {
            assert_eq!(p, crate::dessins::correlator(mu.parts()).unwrap(), "{}", mu);
        }
    }

    #[test]
    fn annihilation_small() {
        for kind in [VirasoroKind::Dessin, VirasoroKind::Corrected, VirasoroKind::Lue1] {
            for r in virasoro_annihilation(kind, 2, 4).unwrap() {
                assert!(r.holds, "{:?} L_{}", kind, r.index);
                assert_eq!(r.trusted_weight, 4);
            }
        }
    }

    #[test]
    fn trusted_window_rejects_empty() {
        let z = schur_z(2, &Poly::var("n"), &Poly::var("w"));
        assert!(virasoro_apply(VirasoroKind::Dessin, 3, &z).is_err());
    }

    #[test]
    fn commutators() {
        let f = random_series(7, 7, &[Poly::var("n"), Poly::var("w")]);
        for (i, j) in [(1, 2), (0, 1), (0, 2), (2, 1)] {
            let d = commutator_defect(VirasoroKind::Dessin, i, j, &f).unwrap();
            assert!(d.is_zero(), "[L{}, L{}]", i, j);
        }
    }

    #[test]
    fn homogeneity_and_dilaton() {
        let (nv, wv) = (Var::new("n"), Var::new("w"));
        let (n, w) = nw();
        let f = cut_and_join_z(5, &n, &w).unwrap().log().unwrap();
        let g = with_genus_parameter(&f, &[nv, wv]).unwrap();
        assert!(homogeneity_residual(&g, &[nv, wv]).is_zero());
        let bad = perturb(&g, e(&[0, 1], 5), &q(1));
        assert!(!homogeneity_residual(&bad, &[nv, wv]).is_zero());

        let g = graded_free_energy_xa(5).unwrap();
        let xa = [Var::new("x"), Var::new("a")];
        assert!(dilaton_residual(&g, &xa).is_zero());
        let bad = perturb(&g, e(&[1, 1], 5), &qf(1, 3));
        assert!(!dilaton_residual(&bad, &xa).is_zero());
    }
}
