//! Weighted dessin counts N_{k,l}(μ) with genus labels, read off the connected correlator.

use dessin_toda::dessins::{correlator, n_kl};
use dessin_toda::partitions::Partition;

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "3,1".into());
    let mu = Partition::parse(&arg).expect("partition like 3,1");
    println!("<tau_mu>(n, w) for mu = {}:\n  {}", mu, correlator(mu.parts()).unwrap());
    println!("{:>3} {:>3} {:>3}  N", "k", "l", "g");
    for c in n_kl(&mu).unwrap() {
        println!("{:>3} {:>3} {:>3}  {}", c.k, c.l, c.g, c.value);
    }
}
