//! Scan a small grid, list the zeros of M0 and the surface each one lies on.

use chen_lorenz::cli::{run_scan, AxisRange, ScanArgs};

fn main() {
    let args = ScanArgs {
        a: "1:5:1".parse().unwrap(),
        b: "1:5:1".parse().unwrap(),
        c: "-2:2:1".parse::<AxisRange>().unwrap(),
        exact_values: true,
        classify: true,
        threads: 4,
    };
    let rows = run_scan(&args).unwrap();
    let mut zeros = 0;
    for row in rows.iter().filter(|r| r.m0.is_zero()) {
        zeros += 1;
        let mut on = Vec::new();
        if row.on_a2c {
            on.push("a' = 2c'");
        }
        if row.on_c1 {
            on.push("c' = -1");
        }
        if row.on_quintic == Some(true) {
            on.push("quintic");
        }
        println!("({}, {}, {})  on {}", row.point.a, row.point.b, row.point.c, on.join(", "));
    }
    println!("{zeros} of {} grid points have M0 = 0", rows.len());
}
