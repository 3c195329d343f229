//! Pair of wave functions at the initial data: normalization, eigen-equations, and the
//! two-variable kernel they produce.

use dessin_toda::toda::{wave_pair_check, WavePair};

fn main() {
    let wp = WavePair::new(4);
    println!("pairing = {:?}", wp.pairing());
    let rep = wave_pair_check(5).unwrap();
    println!("{:?}", rep);
    assert!(rep.holds());
}
