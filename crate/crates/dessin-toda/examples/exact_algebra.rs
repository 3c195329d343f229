//! Polynomials, rational functions and weighted truncated series with exact rationals.

use dessin_toda::algebra::{qf, Poly, RatFunc, Series, Var};

fn main() {
    let (n, w) = (Poly::var("n"), Poly::var("w"));
    let p = &(&n + &w).pow(3) - &(&n * &w).scale(&qf(3, 2));
    println!("p = {}", p);
    println!("dp/dn = {}", p.derive(Var::new("n")));

    let r = &RatFunc::var("x") / &(&RatFunc::var("x") + &RatFunc::var("a"));
    println!("x/(x+a) = {}", r);

    // log(1 + p1 + p2) in variables of weight 1 and 2, truncated at weight 4
    let s: Series<Poly> = Series::in_p(2, 4);
    let one_plus = s.one_like().add(&s.var_like(0)).add(&s.var_like(1));
    let l = one_plus.log().unwrap();
    for (e, c) in l.terms() {
        println!("  p^{:?}: {}", e, c);
    }
    assert_eq!(l.exp().unwrap(), one_plus);
}
