//! Matrix resolvent of the Toda lattice in the jet ring, the two-point functions Ω_{i,j}
//! it generates, and the same resolvent at the dessin initial data.

use dessin_toda::toda::{omega_and_s, solve_resolvent, specialized_resolvent, verify_tau_structure, JetRing};

fn main() {
    let ring = JetRing::new(10);
    let r = solve_resolvent(&ring, 4).unwrap();
    for k in 1..=3 {
        println!("R_{} = {:?}", k, r.coeff(k));
    }
    let data = omega_and_s(&ring, &r, 1).unwrap();
    println!("Omega_00 = {}", data.omega[0][0]);
    println!("Omega_01 = {}", data.omega[0][1]);

    let rep = verify_tau_structure(2).unwrap();
    println!("tau structure through index 2: {}", rep.holds());

    let m = specialized_resolvent(3).unwrap();
    println!("at the initial data: beta_2 = {}, gamma_2 = {}", m.beta(2), m.gamma(2));
}
