//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
//! All comparisons are exact.

use dessin_toda::algebra::{Poly, Var};
use dessin_toda::barnes::{compare_assemblies, shift_identity_check, Prefactor};
use dessin_toda::cli;
use dessin_toda::genus::{catalog_check, genus_one_check, genus_zero_check, loop_equation_check_genus1};
use dessin_toda::lue::{conjugation_check, Gauge, Pochhammer};
use dessin_toda::oracles::{
    commutator_defect, correlators_from_z, cut_and_join_z, homogeneity_residual, random_series, schur_z,
    virasoro_annihilation, with_genus_parameter, VirasoroKind,
};
use dessin_toda::toda::{product_formula_check, resolvent_residual, solve_resolvent, verify_tau_structure, wave_pair_check, JetRing};
use dessin_toda::verify::{c_expansion_mismatch, four_oracle_mismatch, hurwitz_bridge_mismatch};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn none_or(m: Option<String>) -> Outcome {
    m.map_or(Ok(()), Err)
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn four_oracles() -> Outcome {
    let (n, w) = (Poly::var("n"), Poly::var("w"));
    let cj = correlators_from_z(&cut_and_join_z(8, &n, &w).map_err(e)?).map_err(e)?;
    let schur = correlators_from_z(&schur_z(8, &n, &w)).map_err(e)?;
    for d in 1..=8 {
        none_or(four_oracle_mismatch(d, 5, &cj, &schur).map_err(e)?)?;
    }
    Ok(())
}

fn hurwitz_bridge() -> Outcome {
    none_or(hurwitz_bridge_mismatch(6, 2).map_err(e)?)
}

fn c_expansion() -> Outcome {
    none_or(c_expansion_mismatch(6).map_err(e)?)
}

fn lue_conjugation() -> Outcome {
    let r = conjugation_check(10, Pochhammer::Rising, Gauge::Matching);
    ensure(r.holds(), || format!("first mismatch {:?}", r.first_failure))
}

fn resolvent_and_tau() -> Outcome {
    let ring = JetRing::for_order(9, 18);
    let r = solve_resolvent(&ring, 9).map_err(e)?;
    if let Some(f) = resolvent_residual(&ring, &r).map_err(e)? {
        return Err(format!("resolvent equation / trace / determinant fails at {:?}", f));
    }
    let t = verify_tau_structure(3).map_err(e)?;
    ensure(t.holds(), || format!("{:?}", t))?;
    let p = product_formula_check(6).map_err(e)?;
    ensure(p.mismatch.is_none(), || format!("specialized resolvent vs M(λ): {:?}", p.mismatch))
}

fn wave_bridge() -> Outcome {
    let r = wave_pair_check(8).map_err(e)?;
    ensure(r.holds(), || format!("{:?}", r))
}

fn virasoro() -> Outcome {
    for kind in [VirasoroKind::Dessin, VirasoroKind::Lue1] {
        for r in virasoro_annihilation(kind, 3, 8).map_err(e)? {
            ensure(r.holds && r.trusted_weight == 8, || format!("{:?} L_{} at trusted weight {}", kind, r.index, r.trusted_weight))?;
        }
    }
    let (n, w) = (Poly::var("n"), Poly::var("w"));
    for seed in [1, 2, 3] {
        let f = random_series(8, seed, &[n.clone(), w.clone()]);
        let d = commutator_defect(VirasoroKind::Dessin, 1, 2, &f).map_err(e)?;
        ensure(d.is_zero(), || format!("[L1, L2] + L3 nonzero on seed {}", seed))?;
    }
    let vars = [Var::new("n"), Var::new("w")];
    let f = cut_and_join_z(6, &n, &w).map_err(e)?.log().map_err(e)?;
    let g = with_genus_parameter(&f, &vars).map_err(e)?;
    ensure(homogeneity_residual(&g, &vars).is_zero(), || "homogeneity residual nonzero".into())
}

fn correction_factor() -> Outcome {
    let r = shift_identity_check(4).map_err(e)?;
    ensure(r.is_empty(), || format!("shift identity fails at ε orders {:?}", r))?;
    let a = compare_assemblies(4, Prefactor::Matching);
    ensure(a.agree && a.log_eps_orders.is_empty() && !a.log_two_pi_survives, || format!("{:?}", a))
}

fn genus_zero() -> Outcome {
    let r = genus_zero_check(5).map_err(e)?;
    if let Some(m) = &r.correlator_mismatch {
        return Err(format!("coefficient of T^{:?}: {} vs {}", m.0, m.1, m.2));
    }
    ensure(r.constant_term && r.euler_identity && r.dilaton_identity, || format!("{:?}", r))
}

fn genus_one() -> Outcome {
    let r = genus_one_check(5).map_err(e)?;
    if let Some(m) = &r.correlator_mismatch {
        return Err(format!("coefficient of T^{:?}: {} vs {}", m.0, m.1, m.2));
    }
    ensure(r.log_minus_one_cancels, || "log(−1) survives".into())
}

fn loop_equation() -> Outcome {
    let r = loop_equation_check_genus1();
    ensure(r.holds(), || {
        format!(
            "residual has {} terms ({}); left side reduces to −e^u/D²: {}; perturbation detected: {}",
            r.residual_terms, r.offending, r.lhs_is_minus_eu_over_d2, r.perturbation_detected
        )
    })
}

fn catalog() -> Outcome {
    let r = catalog_check(8).map_err(e)?;
    ensure(r.holds(), || format!("{:?}", r))
}

fn cli_run(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["dessin-toda"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, out)
}

fn determinism() -> Outcome {
    let mut first: Option<(String, Vec<u8>)> = None;
    for fmt in ["json", "csv"] {
        first = None;
        for threads in ["1", "4"] {
            let (code, out) = cli_run(&["verify", "all", "--format", fmt, "--threads", threads]);
            ensure(code == 0, || format!("verify all --format {} --threads {} exited {}", fmt, threads, code))?;
            match &first {
                None => first = Some((threads.to_string(), out)),
                Some((t0, o0)) => ensure(o0 == &out, || format!("{} output differs between --threads {} and {}", fmt, t0, threads))?,
            }
        }
    }
    drop(first);
    for args in [["dessins", "--mu", "3,2,1", "--format", "json"], ["dessins", "--mu", "4,2", "--format", "csv"]] {
        let runs: Vec<_> = ["1", "2", "4"]
            .iter()
            .map(|t| {
                let mut a = args.to_vec();
                a.extend_from_slice(&["--threads", t]);
                cli_run(&a)
            })
            .collect();
        ensure(runs.iter().all(|r| r == &runs[0] && r.0 == 0), || format!("{:?} is not byte-identical", args))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("four-oracle agreement, |μ| ≤ 8, at most 5 parts", four_oracles),
        ("dessin/Hurwitz bridge, |μ| ≤ 6, g ≤ 2", hurwitz_bridge),
        ("LUE c-expansion against Hurwitz sums, |μ| ≤ 6", c_expansion),
        ("conjugated explicit LUE resolvent equals M(λ) to λ^-10", lue_conjugation),
        ("resolvent axioms, tau structure i,j ≤ 3, specialized resolvent to λ^-6", resolvent_and_tau),
        ("wave functions: kernel to bi-order (8,8), eigen-equations to λ^-8", wave_bridge),
        ("Virasoro annihilation to weight 8, [L1,L2] = −L3, homogeneity to weight 6", virasoro),
        ("shift identity and the two constant-term assemblies through ε^8", correction_factor),
        ("genus-zero reconstruction, weight ≤ 5", genus_zero),
        ("genus-one reconstruction, weight ≤ 5", genus_one),
        ("genus-one loop equation", loop_equation),
        ("catalog curves and LUE initial data", catalog),
        ("verify all exits 0; output byte-identical across runs and threads", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("PASS {:>2} {} ({:.1}s)", i + 1, name, secs),
            Err(m) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.1}s): {}", i + 1, name, secs, m);
            }
        }
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
}
