//! Integrate the certificate Chen system and write the trajectory as CSV.
//!
//!     cargo run --release --example simulate_trajectory > chen.csv

use chen_lorenz::dynamics::{equilibria_from_trajectory, integrate, Flow, IntegratorConfig};

fn main() -> std::io::Result<()> {
    let flow = Flow::chen(45.0, 5.0, 28.0);
    let traj = integrate(&flow, &IntegratorConfig::new(1e-3, 50.0, [1.0, 1.0, 1.0])).expect("bounded");
    eprintln!("{} samples, max |component| {:.3}", traj.samples.len(), traj.max_abs_component());
    for eq in equilibria_from_trajectory(&flow, &traj) {
        eprintln!("Newton from a slow sample: ({:.12}, {:.12}, {:.12})", eq[0], eq[1], eq[2]);
    }
    traj.write_csv(std::io::stdout().lock())
}
