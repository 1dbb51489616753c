//! Decide a Chen system. Defaults to (45, 5, 28); pass `a b c` to try others.
//!
//!     cargo run --example decide_certificate -- 35 3 28

use chen_lorenz::equiv::{certificate_point, decide};
use chen_lorenz::exact::Rational;
use chen_lorenz::systems::ChenParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let chen = match args.as_slice() {
        [] => certificate_point(),
        [a, b, c] => ChenParams::new(a.parse::<Rational>()?, b.parse::<Rational>()?, c.parse::<Rational>()?),
        _ => return Err("expected three parameters a b c".into()),
    };
    let cert = decide(&chen);
    println!("chen({}, {}, {})", chen.a, chen.b, chen.c);
    println!("  cubic      {}", cert.matching.cubic);
    println!("  quadratic  {}", cert.matching.quadratic);
    println!("  M0         {}", cert.m0);
    println!("  verdict    {}", cert.verdict.as_str());
    for c in &cert.candidates {
        println!("  candidate  a = {} b = {} ({:?})", c.a.approx(), c.b.approx(), c.status);
    }
    println!("{}", cert.paper_note);
    Ok(())
}
