//! The genus-one part of the loop equation evaluated in the jet ring extended by
//! σ = 1/√(w² − 4e^u). Prints the reduced left-hand side and the residual against
//! the source term.

use dessin_toda::genus::loop_equation::{lhs_times_q, loop_equation_check_genus1, q_poly};
use dessin_toda::algebra::qf;

fn main() {
    println!("Q = {}", q_poly());
    println!("Q * LHS = {}", lhs_times_q(&qf(-1, 24)));
    let r = loop_equation_check_genus1();
    println!("LHS = -e^u/D^2: {}", r.lhs_is_minus_eu_over_d2);
    println!("residual vanishes: {} ({} terms: {})", r.residual_zero, r.residual_terms, r.offending);
    println!("u/12 perturbation detected: {}", r.perturbation_detected);
}
