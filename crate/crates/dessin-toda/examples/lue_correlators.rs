//! Connected LUE correlators in n and a, and their expansion in 1/n and c = 1 + a/n.

use dessin_toda::lue::{c_expansion_coefficients, lue_correlator};
use dessin_toda::partitions::Partition;

fn main() {
    for mu in [vec![1], vec![2], vec![3], vec![2, 1], vec![1, 1, 1]] {
        println!("<tr M^{:?}>_c = {}", mu, lue_correlator(&mu).unwrap());
    }
    let mu = Partition::new(vec![3, 1]);
    println!("coefficients of n^(-2g) c^s for mu = {}:", mu);
    for ((g, s), v) in c_expansion_coefficients(&mu).unwrap() {
        println!("  g = {}, s = {}: {}", g, s, v);
    }
}
