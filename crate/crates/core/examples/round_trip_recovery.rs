//! Start from a Lorenz system, hand its invariants to the matching equations
//! and recover the parameters.

use chen_lorenz::equiv::{matching_system, obstruction_from_invariants, recover_lorenz_candidates, InvariantTriple};
use chen_lorenz::exact::rat;
use chen_lorenz::systems::LorenzParams;

fn main() {
    for lorenz in [LorenzParams::new(10, rat(8, 3), 28), LorenzParams::new(rat(7, 2), rat(1, 5), rat(13, 4))] {
        let t = InvariantTriple::from_lorenz(&lorenz);
        let m = matching_system(&t);
        println!("lorenz({}, {}, {})", lorenz.a, lorenz.b, lorenz.c);
        println!("  u = {}, v = {}, w = {}, k = {}", t.u, t.v, t.w, t.k);
        println!("  cubic {}  quadratic {}", m.cubic, m.quadratic);
        println!("  M0 = {}", obstruction_from_invariants(&t).m0);
        for c in recover_lorenz_candidates(&t) {
            match c.exact_params() {
                Some(p) => println!("  candidate ({}, {}, {})  {:?}", p.a, p.b, p.c, c.status),
                None => println!("  candidate a = {}, b = {}  {:?}", c.a.approx(), c.b.approx(), c.status),
            }
        }
    }
}
