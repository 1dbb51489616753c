//! Exact equilibria, Jacobian determinants and characteristic polynomials
//! for the classical Lorenz system and the certificate Chen system.

use chen_lorenz::exact::rat;
use chen_lorenz::systems::{
    charpoly_at, equilibria, jacobian_det_at_equilibrium, ChenParams, LorenzParams, ParamSystem,
};

fn show<S: ParamSystem>(name: &str, sys: &S) {
    let set = equilibria(sys);
    println!("{name}: existence product {}, {} point(s)", set.existence_product, set.count);
    for eq in &set.points {
        let cp = charpoly_at(sys, eq.which).unwrap();
        let det = jacobian_det_at_equilibrium(sys, eq.which).unwrap();
        println!(
            "  {} = ({}, {}, {})  det J = {det}  charpoly {}",
            eq.label,
            eq.point.x,
            eq.point.y,
            eq.point.z,
            cp.as_unipoly()
        );
        assert!(sys.field(&eq.point).is_zero());
    }
}

fn main() {
    show("lorenz(10, 8/3, 28)", &LorenzParams::new(10, rat(8, 3), 28));
    show("chen(45, 5, 28)", &ChenParams::new(45, 5, 28));
    show("chen(2, 3, 1)", &ChenParams::new(2, 3, 1));
}
