//! Benettin estimate of the largest Lyapunov exponent for the certificate
//! Chen system and the classical Lorenz attractor.

use chen_lorenz::dynamics::{largest_lyapunov, Flow, LyapunovConfig};

fn main() {
    let cfg = LyapunovConfig::standard();
    for (name, flow) in [
        ("chen(45, 5, 28)", Flow::chen(45.0, 5.0, 28.0)),
        ("lorenz(10, 8/3, 28)", Flow::lorenz(10.0, 8.0 / 3.0, 28.0)),
        ("lorenz(10, 8/3, 1/2)", Flow::lorenz(10.0, 8.0 / 3.0, 0.5)),
    ] {
        let est = largest_lyapunov(&flow, &cfg).expect("bounded trajectory");
        println!("{name:<22} lambda_max = {:+.4}  ({})", est.lambda_max, est.label);
    }
}
