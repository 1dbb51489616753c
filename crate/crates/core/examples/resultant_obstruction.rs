//! The obstruction M0 three ways: the numeric Sylvester determinant, the
//! subresultant sequence, and the symbolic polynomial evaluated at a point.

use chen_lorenz::equiv::{invariants_from_chen, matching_system, obstruction_m0, symbolic_m0};
use chen_lorenz::exact::{resultant, resultant_prs, sylvester_matrix, Rational};
use chen_lorenz::systems::ChenParams;

fn main() {
    let chen = ChenParams::new(45, 5, 28);
    let m = matching_system(&invariants_from_chen(&chen));

    let syl = sylvester_matrix(&m.cubic, &m.quadratic).unwrap();
    println!("Sylvester matrix of\n  {}\n  {}", m.cubic, m.quadratic);
    for row in syl.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>6}", v.to_string())).collect();
        println!("  [{}]", cells.join(" "));
    }

    let by_det = resultant(&m.cubic, &m.quadratic).unwrap();
    let by_prs = resultant_prs(&m.cubic, &m.quadratic).unwrap();
    let symbolic = symbolic_m0();
    let by_poly = symbolic.eval(&[chen.a.clone(), chen.b.clone(), chen.c.clone()]);
    println!("determinant    {by_det}");
    println!("subresultant   {by_prs}");
    println!("symbolic M0    {by_poly}  ({} terms, degree {})", symbolic.num_terms(), symbolic.total_degree().unwrap());
    assert_eq!(by_det, by_prs);
    assert_eq!(by_det, by_poly);
    assert_eq!(by_det, obstruction_m0(&chen));

    let nearby = ChenParams::new(35, 3, 28);
    println!("M0(35, 3, 28) = {}", obstruction_m0(&nearby));
    let on_surface = ChenParams::new(Rational::from(10), 7, 5);
    println!("M0(10, 7, 5)  = {}  (a' = 2c')", obstruction_m0(&on_surface));
}
