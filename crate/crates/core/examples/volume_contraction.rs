//! Liouville check: the determinant of the tangent flow against
//! `exp(trace * t)` for both systems. Optional argument: the step size.

use chen_lorenz::dynamics::{volume_contraction_check, Flow, IntegratorConfig};

fn main() {
    let dt: f64 = std::env::args().nth(1).map_or(1e-4, |s| s.parse().unwrap());
    let cfg = IntegratorConfig::new(dt, 1.0, [1.0, 1.0, 1.0]);
    for flow in [
        Flow::lorenz(10.0, 8.0 / 3.0, 28.0),
        Flow::chen(45.0, 5.0, 28.0),
        Flow::chen(35.0, 3.0, 28.0),
        Flow::lorenz(16.0, 4.0, 45.0),
    ] {
        let r = volume_contraction_check(&flow, &cfg).expect("bounded over t = 1");
        println!(
            "{:?}({}, {}, {})  trace {:+.4}  det {:.6e}  exp(trace t) {:.6e}  max rel dev {:.2e}",
            flow.system, flow.a, flow.b, flow.c, r.trace, r.final_det, r.expected_final_det, r.max_relative_deviation
        );
    }
}
