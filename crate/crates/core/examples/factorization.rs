//! Peel the surface factors off the symbolic M0 and compare the remaining
//! quintic with the printed one.

use chen_lorenz::equiv::verify_factorization;

fn main() {
    let report = verify_factorization();
    for f in &report.peeled_factors {
        println!("({})^{}  divided exactly: {}", f.factor, f.multiplicity, f.divided_exactly);
    }
    println!("\nquotient ({} terms):\n  {}", report.quotient.num_terms(), report.quotient_text);
    println!("\nat (45, 5, 28):");
    println!("  M0               {}", report.m0_at_certificate);
    println!("  quotient         {}", report.quotient_at_certificate);
    println!("  printed quintic  {}", report.printed_quintic_at_certificate);
    println!("  match            {}", report.printed_quintic_match);
    for d in &report.discrepancy {
        println!(
            "  term a'^{} b'^{} c'^{}: computed {}, printed {}",
            d.exponents[0], d.exponents[1], d.exponents[2], d.computed, d.printed
        );
    }
}
