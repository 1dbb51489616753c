//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as a plain binary so the report is always printed.

mod common;

use std::time::{Duration, Instant};

use chen_lorenz::cli::{run_from_args, EXIT_OK};
use chen_lorenz::dynamics::{
    integrate, largest_lyapunov, volume_contraction_check, Flow, IntegratorConfig, LyapunovConfig, LyapunovEstimate,
    Vec3,
};
use chen_lorenz::equiv::{
    certificate_point, computed_quintic, decide, invariants_from_chen, matching_system, obstruction_from_invariants,
    obstruction_m0, printed_quintic, recover_lorenz_candidates, symbolic_m0, verify_factorization, InvariantTriple,
    Verdict,
};
use chen_lorenz::exact::{poly_gcd, resultant, resultant_prs, MultiPoly, Rational, UniPoly};
use chen_lorenz::systems::{
    charpoly_at, equilibria, ChenParams, EquilibriumLabel, LorenzParams, ParamSystem, SystemKind, SystemParams,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn certificate_regression() -> Outcome {
    let cert = decide(&certificate_point());
    ensure(cert.verdict == Verdict::NonEquivalentResultantNonzero, || format!("verdict {:?}", cert.verdict))?;
    ensure(cert.m0 == 291_933_448_125i64, || format!("m0 = {}", cert.m0))?;
    let rounded = format!("{:.3e}", cert.m0_approx);
    ensure(rounded == "2.919e11", || format!("rounds to {rounded}"))?;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_from_args(["chenlorenz", "decide", "45", "5", "28"], &mut out, &mut err);
    let json: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    ensure(code == EXIT_OK && json["m0"] == "291933448125", || format!("cli exit {code}, m0 {}", json["m0"]))?;
    Ok(format!("m0 = {} ({rounded})", cert.m0))
}

fn resultant_correctness() -> Outcome {
    let mut rng = common::rng(1001);
    let mut zeros = 0;
    let pairs = 250;
    for i in 0..pairs {
        let mut p: Vec<i64> = (0..3).map(|_| rng.gen_range(-12..=12)).collect();
        p.push(rng.gen_range(1..=12));
        let mut q: Vec<i64> = (0..2).map(|_| rng.gen_range(-12..=12)).collect();
        q.push(rng.gen_range(1..=12));
        let (mut p, mut q) = (UniPoly::from_ints(&p), UniPoly::from_ints(&q));
        if i % 4 == 0 {
            // plant a common rational root in a quarter of the pairs
            let r = Rational::new(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=3));
            p = &UniPoly::linear_root(&r) * &UniPoly::new(p.coeffs()[1..].to_vec());
            q = &UniPoly::linear_root(&r) * &UniPoly::new(q.coeffs()[1..].to_vec());
        }
        let syl = resultant(&p, &q).map_err(|e| e.to_string())?;
        let prs = resultant_prs(&p, &q).map_err(|e| e.to_string())?;
        ensure(syl == prs, || format!("Sylvester {syl} != PRS {prs} for {p} / {q}"))?;
        let common_factor = poly_gcd(&p, &q).degree().unwrap_or(0) >= 1;
        ensure(syl.is_zero() == common_factor, || format!("zero test disagrees with gcd for {p} / {q}"))?;
        zeros += usize::from(syl.is_zero());
    }
    Ok(format!("{pairs} pairs, {zeros} with a common factor"))
}

fn surface_vanishing() -> Outcome {
    let mut rng = common::rng(1002);
    for _ in 0..50 {
        let (x, y) = (common::rational_in(&mut rng, -25, 25, 9), common::rational_in(&mut rng, -25, 25, 9));
        let points = [
            ChenParams::new(x.clone(), 0, y.clone()),
            ChenParams::new(&Rational::from(2) * &y, x.clone(), y.clone()),
            ChenParams::new(x, y, -1),
        ];
        for p in points {
            let v = obstruction_m0(&p);
            ensure(v.is_zero(), || format!("M0 = {v} at {p:?}"))?;
        }
    }
    let report = verify_factorization();
    ensure(report.all_divided_exactly(), || "a surface factor did not divide exactly".into())?;
    ensure(report.reconstructs(), || "quotient times factors differs from M0".into())?;
    let q = &report.quotient_at_certificate;
    ensure(*q == Rational::from(16_639_125), || format!("quotient at certificate = {q}"))?;
    Ok(format!("150 surface points, quotient(45,5,28) = {q}"))
}

fn typo_detection() -> Outcome {
    let report = verify_factorization();
    let printed = printed_quintic().eval(&[Rational::from(45), Rational::from(5), Rational::from(28)]);
    ensure(printed == Rational::from(-3_864_000), || format!("printed quintic at certificate = {printed}"))?;
    ensure(report.printed_quintic_at_certificate == printed, || "report disagrees with direct evaluation".into())?;
    ensure(!report.printed_quintic_match, || "printed quintic reported as matching".into())?;
    Ok(format!(
        "printed {printed} vs computed {}, {} differing term(s)",
        report.quotient_at_certificate,
        report.discrepancy.len()
    ))
}

fn round_trip_recovery() -> Outcome {
    let mut rng = common::rng(1005);
    for _ in 0..100 {
        let lorenz = LorenzParams::new(
            common::positive(&mut rng, 30, 8),
            common::positive(&mut rng, 10, 8),
            &Rational::one() + &common::positive(&mut rng, 40, 8),
        );
        let t = InvariantTriple::from_lorenz(&lorenz);
        let m0 = obstruction_from_invariants(&t).m0;
        ensure(m0.is_zero(), || format!("M0 = {m0} for {lorenz:?}"))?;
        let found = recover_lorenz_candidates(&t).iter().any(|c| c.valid && c.exact_params().as_ref() == Some(&lorenz));
        ensure(found, || format!("{lorenz:?} not among valid candidates"))?;
    }
    Ok("100 Lorenz triples recovered exactly".into())
}

fn spectral_identities() -> Outcome {
    let mut rng = common::rng(1006);
    for _ in 0..200 {
        let (a, b, c) = (
            common::rational_in(&mut rng, -40, 40, 7),
            common::rational_in(&mut rng, -40, 40, 7),
            common::rational_in(&mut rng, -40, 40, 7),
        );
        let chen = ChenParams::new(a.clone(), b.clone(), c.clone());
        let cubic = matching_system(&invariants_from_chen(&chen)).cubic;
        ensure(cubic.eval(&b).is_zero(), || format!("matching cubic nonzero at b' for {chen:?}"))?;
        let q1 = charpoly_at(&chen, EquilibriumLabel::Origin).map_err(|e| e.to_string())?;
        ensure(q1.eval(&-b.clone()).is_zero(), || format!("Q1 charpoly nonzero at -b' for {chen:?}"))?;
        let lorenz = LorenzParams::new(a, b.clone(), c);
        let p1 = charpoly_at(&lorenz, EquilibriumLabel::Origin).map_err(|e| e.to_string())?;
        ensure(p1.eval(&-b).is_zero(), || format!("P1 charpoly nonzero at -b for {lorenz:?}"))?;
    }
    Ok("200 triples, both systems".into())
}

fn equilibrium_residuals() -> Outcome {
    let mut rng = common::rng(1007);
    let mut checked = 0;
    let mut drawn = 0;
    while checked < 100 {
        drawn += 1;
        let kind = if drawn % 2 == 0 { SystemKind::Lorenz } else { SystemKind::Chen };
        let sys = SystemParams::new(
            kind,
            common::rational_in(&mut rng, -30, 30, 6),
            common::rational_in(&mut rng, -30, 30, 6),
            common::rational_in(&mut rng, -30, 30, 6),
        );
        let set = equilibria(&sys);
        if set.count != 3 {
            continue;
        }
        checked += 1;
        for eq in &set.points {
            ensure(sys.field(&eq.point).is_zero(), || format!("nonzero field at {} for {sys:?}", eq.label))?;
        }
    }
    Ok(format!("{checked} systems with three equilibria ({drawn} drawn)"))
}

fn distance(p: &Vec3, q: &Vec3) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

fn dynamics_corroboration() -> Outcome {
    let chen = Flow::chen(45.0, 5.0, 28.0);
    let lorenz = Flow::lorenz(10.0, 8.0 / 3.0, 28.0);
    let end = |flow: &Flow, dt: f64| -> Result<Vec3, String> {
        let traj = integrate(flow, &IntegratorConfig::new(dt, 0.5, [1.0, 1.0, 1.0])).map_err(|e| e.to_string())?;
        Ok(traj.last().expect("nonempty").state())
    };
    let mut ratios = Vec::new();
    for flow in [&lorenz, &chen] {
        let reference = end(flow, 1e-5)?;
        let ratio = distance(&end(flow, 4e-3)?, &reference) / distance(&end(flow, 2e-3)?, &reference);
        ensure((14.0..=18.0).contains(&ratio), || format!("RK4 error ratio {ratio:.2} for {:?}", flow.system))?;
        ratios.push(format!("{ratio:.2}"));
    }

    let mut worst: f64 = 0.0;
    for flow in [&lorenz, &chen] {
        let report = volume_contraction_check(flow, &IntegratorConfig::new(1e-4, 1.0, [1.0, 1.0, 1.0]))
            .map_err(|e| e.to_string())?;
        worst = worst.max(report.max_relative_deviation);
    }
    ensure(worst < 1e-6, || format!("volume deviation {worst:e}"))?;

    let traj = integrate(&chen, &IntegratorConfig::new(1e-3, 100.0, [1.0, 1.0, 1.0])).map_err(|e| e.to_string())?;
    let bound = traj.max_abs_component();
    ensure(bound < 1e3, || format!("max |component| = {bound}"))?;
    let terminal = traj.last().expect("nonempty").state();
    let nearest = equilibria(&certificate_point())
        .points
        .iter()
        .map(|e| distance(&terminal, &[e.point.x.to_f64(), e.point.y.to_f64(), e.point.z.to_f64()]))
        .fold(f64::INFINITY, f64::min);
    ensure(nearest > 1e-3, || format!("terminal point {nearest:e} from an equilibrium"))?;

    let est = largest_lyapunov(&chen, &LyapunovConfig::standard()).map_err(|e| e.to_string())?;
    ensure(est.lambda_max > 0.0 && (est.lambda_max - 1.18).abs() < 0.1, || format!("lambda_max = {}", est.lambda_max))?;
    ensure(est.label == LyapunovEstimate::CHAOS_LABEL, || format!("label {:?}", est.label))?;
    Ok(format!(
        "RK4 ratios {}, volume dev {worst:.1e}, max |x| {bound:.2}, lambda_max {:.3} ({})",
        ratios.join("/"),
        est.lambda_max,
        est.label
    ))
}

fn small_grid_scan() -> Outcome {
    let quintic: &MultiPoly = computed_quintic();
    let m0 = symbolic_m0();
    let mut zeros = 0;
    for a in 1..=5i64 {
        for b in 1..=5i64 {
            for c in -2..=2i64 {
                let p = ChenParams::new(a, b, c);
                let v = obstruction_m0(&p);
                let point = [p.a.clone(), p.b.clone(), p.c.clone()];
                ensure(v == m0.eval(&point), || format!("numeric and symbolic M0 differ at {p:?}"))?;
                if !v.is_zero() {
                    continue;
                }
                zeros += 1;
                let on_surface = b == 0 || a == 2 * c || c == -1 || quintic.eval(&point).is_zero();
                ensure(on_surface, || format!("unclassified zero at ({a}, {b}, {c})"))?;
            }
        }
    }
    Ok(format!("125 points, {zeros} zeros, all on a classified surface"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("certificate regression", certificate_regression, Duration::from_secs(1)),
        ("resultant correctness", resultant_correctness, Duration::from_secs(10)),
        ("surface vanishing", surface_vanishing, Duration::from_secs(60)),
        ("typo detection", typo_detection, Duration::from_secs(60)),
        ("round-trip recovery", round_trip_recovery, Duration::from_secs(60)),
        ("spectral identities", spectral_identities, Duration::from_secs(60)),
        ("equilibrium residuals", equilibrium_residuals, Duration::from_secs(60)),
        ("dynamics corroboration", dynamics_corroboration, Duration::from_secs(60)),
        ("small-grid scan", small_grid_scan, Duration::from_secs(30)),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= limit {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL  {}. {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
