//! Initial values of Toda tau-functions for several matrix models, their genus-zero
//! limits, and the algebraic curves those limits satisfy.

use dessin_toda::genus::{catalog, catalog_check, lue_v_from_one_point};

fn main() {
    for row in catalog() {
        println!("{:<12} V = {}, W = {}", row.name, row.big_v, row.big_w);
        println!("{:<12} curve {}: {}", "", row.curve_text, row.on_curve());
    }
    println!("LUE V from the one-point function: {}", lue_v_from_one_point());
    assert!(catalog_check(4).unwrap().holds());
}
