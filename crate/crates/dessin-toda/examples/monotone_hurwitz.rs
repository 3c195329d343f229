//! Strictly monotone double Hurwitz numbers by enumeration, and the dessin counts they equal.

use dessin_toda::hurwitz::{k_for, strictly_monotone_hurwitz, verify_dessin_hurwitz, HurwitzQuery};
use dessin_toda::partitions::{partitions_of, Partition};

fn main() {
    let q = HurwitzQuery { g: 0, mu: Partition::new(vec![2, 1]), nu: Partition::new(vec![3]) };
    println!("h_0((2,1), (3)) = {}", strictly_monotone_hurwitz(&q).unwrap());

    for mu in partitions_of(4) {
        for g in 0..=1 {
            for l in 1..=4 {
                if k_for(&mu, g, l).is_none() {
                    continue;
                }
                let c = verify_dessin_hurwitz(&mu, g, l).unwrap();
                println!("mu = {:<8} g = {} k = {} l = {}: {} = {}", mu.to_string(), g, c.k, l, c.lhs, c.rhs);
                assert!(c.equal);
            }
        }
    }
}
