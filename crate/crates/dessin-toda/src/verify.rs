//! Verification suites: each runs a list of exact checks and records pass/fail with
//! the first counterexample. Reports carry no timing so they render byte-identically;
//! wall-clock timings are returned separately.

use crate::algebra::{Poly, Var};
use crate::barnes::{compare_assemblies, shift_identity_check, dilaton_constant_residual, Prefactor};
use crate::dessins::correlator;
use crate::error::{Error, Result};
use crate::genus::{catalog_check, frobenius_identities, genus_one_check, genus_zero_check, loop_equation_check_genus1};
use crate::hurwitz::{c_expansion_from_hurwitz, k_for, verify_dessin_hurwitz};
use crate::lue::{c_expansion_coefficients, conjugation_check, Gauge, Pochhammer};
use crate::oracles::{
    commutator_defect, correlators_from_z, cut_and_join_z, dilaton_residual, graded_free_energy_xa,
    homogeneity_residual, random_series, schur_z, virasoro_annihilation, with_genus_parameter, VirasoroKind,
};
use crate::partitions::{partitions_of, Partition};
use crate::toda::{matrix_resolvent_n_point, product_formula_check, resolvent_residual, solve_resolvent, verify_tau_structure, wave_pair_check, JetRing};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Oracles,
    Virasoro,
    Toda,
    Hurwitz,
    Genus,
    Barnes,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Oracles, Suite::Virasoro, Suite::Toda, Suite::Hurwitz, Suite::Genus, Suite::Barnes];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Oracles => "oracles",
            Suite::Virasoro => "virasoro",
            Suite::Toda => "toda",
            Suite::Hurwitz => "hurwitz",
            Suite::Genus => "genus",
            Suite::Barnes => "barnes",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name, or `all`.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::from_str(s).map(|x| vec![x])
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown suite {:?} (expected oracles, virasoro, toda, hurwitz, genus, barnes or all)", s)))
    }
}

/// Truncation orders. Fixed-size checks clamp to the sizes they are meant for.
#[derive(Clone, Debug, Serialize)]
pub struct Orders {
    pub weight: u32,
    pub lambda_order: u32,
    pub eps_order: u32,
    pub max_parts: usize,
}

impl Default for Orders {
    fn default() -> Self {
        Orders { weight: 8, lambda_order: 10, eps_order: 8, max_parts: 5 }
    }
}

impl Orders {
    fn hurwitz_degree(&self) -> u32 {
        self.weight.min(6)
    }
    fn genus_depth(&self) -> u32 {
        self.weight.clamp(2, 5)
    }
    fn homogeneity_weight(&self) -> u32 {
        self.weight.min(6)
    }
    fn eps_genus(&self) -> u32 {
        self.eps_order.div_ceil(2).max(1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Failing checks with `gating = false` are reported but do not fail the suite.
    pub gating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Check {
        Check { name: name.into(), passed, gating: true, detail }
    }
    fn pass_or(name: impl Into<String>, failure: Option<String>) -> Check {
        Check::new(name, failure.is_none(), failure)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.gating)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.gating && !c.passed)
    }
}

/// Labelled wall-clock durations, reported outside the deterministic output.
pub type Timings = Vec<(String, Duration)>;

pub fn run_suite(suite: Suite, o: &Orders) -> Result<(SuiteReport, Timings)> {
    let mut t = Timings::new();
    let checks = match suite {
        Suite::Oracles => oracles_suite(o, &mut t)?,
        Suite::Virasoro => virasoro_suite(o, &mut t)?,
        Suite::Toda => toda_suite(o, &mut t)?,
        Suite::Hurwitz => hurwitz_suite(o, &mut t)?,
        Suite::Genus => genus_suite(o, &mut t)?,
        Suite::Barnes => barnes_suite(o, &mut t)?,
    };
    Ok((SuiteReport { suite, checks }, t))
}

fn timed<T>(t: &mut Timings, label: impl Into<String>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let r = f()?;
    t.push((label.into(), start.elapsed()));
    Ok(r)
}

fn nw() -> (Poly, Poly) {
    (Poly::var("n"), Poly::var("w"))
}

/// Kernel formula, cut-and-join, Schur expansion and (m ≥ 2) the resolvent n-point
/// formula for every μ of the given weight with at most `max_parts` parts.
pub fn four_oracle_mismatch(
    d: u32,
    max_parts: usize,
    cj: &std::collections::BTreeMap<Partition, Poly>,
    schur: &std::collections::BTreeMap<Partition, Poly>,
) -> Result<Option<String>> {
    let mus: Vec<Partition> = partitions_of(d).into_iter().filter(|m| m.len() <= max_parts).collect();
    let found: Vec<Option<String>> = mus
        .par_iter()
        .map(|mu| -> Result<Option<String>> {
            let k = correlator(mu.parts())?;
            let missing = Poly::zero();
            let c = cj.get(mu).unwrap_or(&missing);
            let s = schur.get(mu).unwrap_or(&missing);
            if c != &k {
                return Ok(Some(format!("μ = {}: kernel {} vs cut-and-join {}", mu, k, c)));
            }
            if s != &k {
                return Ok(Some(format!("μ = {}: kernel {} vs Schur {}", mu, k, s)));
            }
            if mu.len() >= 2 {
                let m = matrix_resolvent_n_point(mu.parts())?;
                if m != k {
                    return Ok(Some(format!("μ = {}: kernel {} vs n-point resolvent {}", mu, k, m)));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}

fn oracles_suite(o: &Orders, t: &mut Timings) -> Result<Vec<Check>> {
    let (n, w) = nw();
    let cj = timed(t, "cut-and-join Z", || Ok(correlators_from_z(&cut_and_join_z(o.weight, &n, &w)?)?))?;
    let schur = timed(t, "Schur Z", || correlators_from_z(&schur_z(o.weight, &n, &w)))?;
    let mut out = Vec::new();
    for d in 1..=o.weight {
        let m = timed(t, format!("weight {}", d), || four_oracle_mismatch(d, o.max_parts, &cj, &schur))?;
        out.push(Check::pass_or(format!("four oracles agree at weight {} (at most {} parts)", d, o.max_parts), m));
    }
    let hd = o.hurwitz_degree();
    let m = timed(t, "LUE c-expansion vs Hurwitz sums", || c_expansion_mismatch(hd))?;
    out.push(Check::pass_or(format!("LUE correlator c-expansion matches Hurwitz sums, |μ| ≤ {}", hd), m));
    Ok(out)
}

/// The n^{−2g}c^s coefficients of the LUE correlator against (z_μ/|μ|!)Σ h_g(μ, ν).
pub fn c_expansion_mismatch(max_weight: u32) -> Result<Option<String>> {
    let mus: Vec<Partition> = (1..=max_weight).flat_map(partitions_of).collect();
    let found: Vec<Option<String>> = mus
        .par_iter()
        .map(|mu| -> Result<Option<String>> {
            let lhs = c_expansion_coefficients(mu)?;
            let max_g = lhs.keys().map(|k| k.0).max().unwrap_or(0);
            let rhs = c_expansion_from_hurwitz(mu, max_g)?;
            Ok((lhs != rhs).then(|| format!("μ = {}: correlator {:?} vs Hurwitz {:?}", mu, lhs, rhs)))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}

fn virasoro_suite(o: &Orders, t: &mut Timings) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (kind, label) in [(VirasoroKind::Dessin, "dessin"), (VirasoroKind::Lue1, "LUE")] {
        let reps = timed(t, format!("{} annihilation", label), || virasoro_annihilation(kind, 3, o.weight))?;
        for r in reps {
            out.push(Check::new(
                format!("L_{} annihilates the {} partition function through weight {}", r.index, label, r.trusted_weight),
                r.holds,
                None,
            ));
        }
    }
    let (n, w) = nw();
    let f = random_series(o.weight, 7, &[n.clone(), w.clone()]);
    for (i, j) in [(1, 2), (0, 1), (0, 2)] {
        let d = timed(t, format!("[L{}, L{}]", i, j), || commutator_defect(VirasoroKind::Dessin, i, j, &f))?;
        let fail = d.terms().next().map(|(e, c)| format!("defect at {:?}: {}", e, c));
        let k = match i as i64 - j as i64 {
            1 => String::new(),
            -1 => "−".to_string(),
            c => c.to_string().replace('-', "−"),
        };
        out.push(Check::pass_or(format!("[L_{}, L_{}] = {}L_{} on a random series", i, j, k, i + j), fail));
    }
    let hw = o.homogeneity_weight();
    let (nv, wv) = (Var::new("n"), Var::new("w"));
    let g = timed(t, "homogeneity", || {
        let f = cut_and_join_z(hw, &n, &w)?.log()?;
        with_genus_parameter(&f, &[nv, wv])
    })?;
    let r = homogeneity_residual(&g, &[nv, wv]);
    out.push(Check::pass_or(
        format!("genus-graded free energy is homogeneous through weight {}", hw),
        r.terms().next().map(|(e, c)| format!("residual at {:?}: {}", e, c)),
    ));
    let g = timed(t, "dilaton", || graded_free_energy_xa(hw))?;
    let r = dilaton_residual(&g, &[Var::new("x"), Var::new("a")]);
    out.push(Check::pass_or(
        format!("dilaton equation at positive weight through {}", hw.saturating_sub(1)),
        r.terms().next().map(|(e, c)| format!("residual at {:?}: {}", e, c)),
    ));
    Ok(out)
}

fn toda_suite(o: &Orders, t: &mut Timings) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let lo = o.lambda_order as usize;
    let c = timed(t, "conjugation", || Ok(conjugation_check(lo, Pochhammer::Rising, Gauge::Matching)))?;
    out.push(Check::pass_or(
        format!("conjugated explicit LUE resolvent equals M(λ) through λ^-{}", lo),
        c.first_failure.map(|f| format!("first mismatch (order, row, column) = {:?}", f)),
    ));
    let ring = JetRing::for_order(9, 18);
    let r = timed(t, "resolvent", || solve_resolvent(&ring, 9))?;
    let res = resolvent_residual(&ring, &r)?;
    out.push(Check::pass_or(
        "resolvent equation, tr R = 1 and det R = 0 in the jet ring",
        res.map(|f| format!("first failure (order, row, column) = {:?}", f)),
    ));
    let tau = timed(t, "tau structure", || verify_tau_structure(3))?;
    out.push(Check::new("Ω_{i,j} symmetric, i, j ≤ 3", tau.omega_symmetric, tau.first_failure.clone()));
    out.push(Check::new("(Λ − 1)Ω_{i,j} = ε∂_{t_j}S_i, i, j ≤ 3", tau.omega_identity, tau.first_failure.clone()));
    out.push(Check::new("(1 − Λ⁻¹)S_i = ε∂_{t_i}log W, i ≤ 3", tau.log_w_identity, tau.first_failure.clone()));
    out.push(Check::new("t₀ flow is the Toda equation", tau.base_flow, tau.first_failure.clone()));
    out.push(Check::new("flows agree with powers of the Lax operator", tau.lax_agreement, tau.first_failure.clone()));
    let po = lo.min(6);
    let p = timed(t, "specialized resolvent", || product_formula_check(po))?;
    out.push(Check::pass_or(
        format!("resolvent at the initial data equals M(λ) through λ^-{}", po),
        p.mismatch.map(|m| format!("{:?}", m)),
    ));
    let wo = lo.min(8);
    let wr = timed(t, "wave functions", || wave_pair_check(wo))?;
    out.push(Check::new(format!("wave-function pairing normalized through λ^-{}", wo), wr.pairing, None));
    out.push(Check::new(format!("eigen-equations of both wave functions through λ^-{}", wo), wr.eigen_a && wr.eigen_b, None));
    out.push(Check::new(format!("wave-function kernel equals the dessin kernel to bi-order ({}, {})", wo, wo), wr.kernel, None));
    Ok(out)
}

fn hurwitz_suite(o: &Orders, t: &mut Timings) -> Result<Vec<Check>> {
    let hd = o.hurwitz_degree();
    let m = timed(t, "dessin-Hurwitz bridge", || hurwitz_bridge_mismatch(hd, 2))?;
    Ok(vec![Check::pass_or(format!("N_{{k,l}}(μ) equals the monotone Hurwitz sum, |μ| ≤ {}, g ≤ 2", hd), m)])
}

/// Every admissible (μ, g, l) with |μ| ≤ max_weight, g ≤ max_g.
pub fn hurwitz_bridge_mismatch(max_weight: u32, max_g: u32) -> Result<Option<String>> {
    let mut cases = Vec::new();
    for d in 1..=max_weight {
        for mu in partitions_of(d) {
            for g in 0..=max_g {
                for l in 1..=d {
                    if k_for(&mu, g, l).is_some() {
                        cases.push((mu.clone(), g, l));
                    }
                }
            }
        }
    }
    let found: Vec<Option<String>> = cases
        .par_iter()
        .map(|(mu, g, l)| -> Result<Option<String>> {
            let c = verify_dessin_hurwitz(mu, *g, *l)?;
            Ok((!c.equal).then(|| format!("μ = {}, g = {}, k = {}, l = {}: dessins {} vs Hurwitz {}", mu, g, c.k, l, c.lhs, c.rhs)))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}

fn genus_suite(o: &Orders, t: &mut Timings) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let depth = o.genus_depth();
    let fr = timed(t, "Frobenius manifold", || Ok(frobenius_identities(3)))?;
    out.push(Check::new("two-point functions, Hamiltonians and Euler weights on the Frobenius manifold", fr.holds(), None));
    let g0 = timed(t, "genus zero", || genus_zero_check(depth))?;
    out.push(Check::pass_or(
        format!("genus-zero free energy coefficients equal genus-zero correlators through weight {}", depth),
        g0.correlator_mismatch.as_ref().map(|m| format!("{:?}: got {}, expected {}", m.0, m.1, m.2)),
    ));
    out.push(Check::new("genus-zero free energy at T = 0", g0.constant_term, None));
    out.push(Check::new("∂F₀/∂T_0 at T = 0 is ⟨τ₁⟩", g0.first_derivative_is_tau1, None));
    out.push(Check::new("second derivatives of F₀ are the two-point functions", g0.second_derivatives && g0.x_second_derivative && g0.mixed_derivatives, None));
    out.push(Check::new(format!("Euler identity for F₀ through degree {}", depth - 1), g0.euler_identity, None));
    out.push(Check::new(format!("dilaton identity for F₀ through degree {}", depth - 1), g0.dilaton_identity, None));
    out.push(Check::new("Euler weights of u, v, φ, ω and Ω along the solution", g0.homogeneity, None));
    let g1 = timed(t, "genus one", || genus_one_check(depth))?;
    out.push(Check::pass_or(
        format!("F₁ + c₁ coefficients equal genus-one correlators through weight {}", depth),
        g1.correlator_mismatch.as_ref().map(|m| format!("{:?}: got {}, expected {}", m.0, m.1, m.2)),
    ));
    out.push(Check::new("log(−1) cancels in F₁", g1.log_minus_one_cancels, None));
    out.push(Check::new("F₁ at T = 0", g1.constant_term, None));
    let lp = timed(t, "loop equation", || Ok(loop_equation_check_genus1()))?;
    out.push(Check::new("genus-one loop operator on F₁ reduces to −e^u/D²", lp.lhs_is_minus_eu_over_d2, None));
    out.push(Check::new("u/12 in place of u/24 changes the loop residual", lp.perturbation_detected, None));
    let mut against_source = Check::new(
        "genus-one loop residual against the source e^u(w² + 4e^u)/D³",
        lp.residual_zero,
        (!lp.residual_zero).then(|| format!("{} residual terms: {}", lp.residual_terms, lp.offending)),
    );
    // known mismatch with that source; reported, not gating
    against_source.gating = false;
    out.push(against_source);
    let cat = timed(t, "catalog", || catalog_check(o.eps_order))?;
    for (name, curve, limit) in &cat.rows {
        out.push(Check::new(format!("{}: genus-zero values lie on the curve", name), *curve, None));
        out.push(Check::new(format!("{}: ε → 0 limit of the initial values", name), *limit, None));
    }
    out.push(Check::new("LUE initial V from ε(Λ − 1)⟨τ₁⟩", cat.lue_v_from_one_point, None));
    out.push(Check::new("LUE initial W from the shift identity", cat.lue_w_from_shift_identity, None));
    Ok(out)
}

fn barnes_suite(o: &Orders, t: &mut Timings) -> Result<Vec<Check>> {
    let g = o.eps_genus();
    let mut out = Vec::new();
    let r = timed(t, "shift identity", || shift_identity_check(g))?;
    out.push(Check::pass_or(
        format!("(Λ + Λ⁻¹ − 2)F = log W at p = 0 through ε^{}", 2 * g),
        (!r.is_empty()).then(|| format!("nonzero at ε orders {:?}", r)),
    ));
    let a = timed(t, "assemblies", || Ok(compare_assemblies(g, Prefactor::Matching)))?;
    out.push(Check::new(format!("Barnes correction factor equals the displayed constant term through ε^{}", 2 * g), a.agree, None));
    out.push(Check::new(
        "log ε and log 2π cancel in the Barnes assembly",
        a.log_eps_orders.is_empty() && !a.log_two_pi_survives,
        (!a.log_eps_orders.is_empty()).then(|| format!("log ε at orders {:?}", a.log_eps_orders)),
    ));
    let d = dilaton_constant_residual(g);
    out.push(Check::new("dilaton equation at zero coupling", d.is_zero(), None));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        assert_eq!(parse_suites("all").unwrap().len(), 6);
        assert_eq!(parse_suites("toda").unwrap(), vec![Suite::Toda]);
        assert!(parse_suites("tod").is_err());
    }

    #[test]
    fn small_suites_pass() {
        let o = Orders { weight: 4, lambda_order: 4, eps_order: 4, max_parts: 5 };
        for s in [Suite::Oracles, Suite::Hurwitz, Suite::Barnes] {
            let (r, _) = run_suite(s, &o).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn bridge_detects_nothing_small() {
        assert_eq!(hurwitz_bridge_mismatch(4, 1).unwrap(), None);
        assert_eq!(c_expansion_mismatch(4).unwrap(), None);
    }
}
