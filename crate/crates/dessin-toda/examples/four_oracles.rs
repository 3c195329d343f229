//! One correlator computed four independent ways: kernel formula, cut-and-join,
//! Schur expansion, and the n-point resolvent formula at the initial data.

use dessin_toda::algebra::Poly;
use dessin_toda::dessins::correlator;
use dessin_toda::oracles::{correlators_from_z, cut_and_join_z, schur_z};
use dessin_toda::partitions::Partition;
use dessin_toda::toda::matrix_resolvent_n_point;

fn main() {
    let mu = Partition::new(vec![3, 2, 1]);
    let d = mu.weight();
    let (n, w) = (Poly::var("n"), Poly::var("w"));
    let kernel = correlator(mu.parts()).unwrap();
    let cj = correlators_from_z(&cut_and_join_z(d, &n, &w).unwrap()).unwrap()[&mu].clone();
    let schur = correlators_from_z(&schur_z(d, &n, &w)).unwrap()[&mu].clone();
    let resolvent = matrix_resolvent_n_point(mu.parts()).unwrap();
    println!("kernel        {}", kernel);
    println!("cut-and-join  {}", cj);
    println!("Schur         {}", schur);
    println!("resolvent     {}", resolvent);
    assert!(kernel == cj && cj == schur && schur == resolvent);
    println!("all four agree");
}
