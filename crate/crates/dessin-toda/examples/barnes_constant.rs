//! Constant term of the corrected free energy in ε, compared with the log of the Barnes
//! G-function correction factor, and the shift identity at zero coupling.

use dessin_toda::barnes::{compare_assemblies, corrected_constant_term, shift_identity_check, Prefactor};

fn main() {
    let f = corrected_constant_term(2);
    for k in [-2, 0, 2, 4] {
        println!("eps^{}: {}", k, f.coeff(k));
    }
    for pre in [Prefactor::Matching, Prefactor::Quoted] {
        let r = compare_assemblies(4, pre);
        println!("{}: agree = {}, log eps left at {:?}", r.prefactor, r.agree, r.log_eps_orders);
    }
    println!("shift identity failures through eps^8: {:?}", shift_identity_check(4).unwrap());
}
