//! Virasoro constraints on the dessin and LUE partition functions, the commutation
//! relations of the operators, and the genus-graded homogeneity of the free energy.

use dessin_toda::algebra::{Poly, Var};
use dessin_toda::oracles::{
    commutator_defect, cut_and_join_z, homogeneity_residual, random_series, virasoro_annihilation,
    with_genus_parameter, VirasoroKind,
};

fn main() {
    for kind in [VirasoroKind::Dessin, VirasoroKind::Lue1] {
        for r in virasoro_annihilation(kind, 2, 6).unwrap() {
            println!("{:?} L_{} Z = 0 through weight {}: {}", kind, r.index, r.trusted_weight, r.holds);
        }
    }
    let (n, w) = (Poly::var("n"), Poly::var("w"));
    let f = random_series(6, 42, &[n.clone(), w.clone()]);
    let d = commutator_defect(VirasoroKind::Dessin, 1, 2, &f).unwrap();
    println!("[L1, L2] + L3 on a random series vanishes: {}", d.is_zero());

    let vars = [Var::new("n"), Var::new("w")];
    let g = with_genus_parameter(&cut_and_join_z(5, &n, &w).unwrap().log().unwrap(), &vars).unwrap();
    println!("homogeneity residual vanishes: {}", homogeneity_residual(&g, &vars).is_zero());
}
