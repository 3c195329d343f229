//! Genus-zero free energy from the hodograph solution on the P¹ Frobenius manifold,
//! compared coefficient by coefficient with genus-zero dessin correlators.

use dessin_toda::genus::{f0_assemble, genus_zero_check, hodograph_solve};
use dessin_toda::genus::solution::{coefficient_table, expected_coefficient};

fn main() {
    let depth = 4;
    let sol = hodograph_solve(depth).unwrap();
    println!("v = {}", sol.v.constant_term());
    let f0 = f0_assemble(&sol).unwrap();
    for (e, c) in coefficient_table(&f0).into_iter().take(8) {
        let want = if e.iter().any(|&x| x > 0) { expected_coefficient(&e, 0).unwrap().to_string() } else { "-".into() };
        println!("T^{:?}: {}   (correlator: {})", e, c, want);
    }
    let r = genus_zero_check(depth).unwrap();
    println!("{:?}", r);
    assert!(r.holds());
}
