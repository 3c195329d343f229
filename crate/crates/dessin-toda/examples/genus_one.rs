//! Genus-one free energy (1/24)log(v_x² − e^u u_x²) − u/24 + const on the genus-zero
//! solution, against genus-one dessin correlators.

use dessin_toda::genus::{f1_evaluate, genus_one_check, hodograph_solve};
use dessin_toda::genus::solution::coefficient_table;

fn main() {
    let sol = hodograph_solve(4).unwrap();
    let f1 = f1_evaluate(&sol).unwrap();
    for (e, c) in coefficient_table(&f1).into_iter().take(6) {
        println!("T^{:?}: {}", e, c);
    }
    let r = genus_one_check(4).unwrap();
    println!("{:?}", r);
    assert!(r.holds());
}
