//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use girdle_core::cochain::{
    act, coboundary, coboundary_matrix, codifferential_matrix, full_len, hodge_spaces, Cochain, CochainSpace,
};
use girdle_core::exact::{vec_zero, Gq, Subspace};
use girdle_core::model::{isotropy_algebra, model_levi_cubic, sample_points, ProjectivePoint};
use girdle_core::prolong::{gauge_image, gauge_space, normalization_space, normalize_ctorsion, prolong_step};
use girdle_core::report::{self, Report};
use girdle_core::so32::{indices_of_grade, unit, H_0_1, H_0_2, H_1_1, H_1_2, H_2};
use girdle_core::structeq::{constraint_catalog, StructureFunctionSymbol};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn all_pass(r: &Report) -> Result<(), String> {
    match r.checks.iter().find(|c| !c.pass) {
        None => Ok(()),
        Some(c) => Err(format!("{}: {} (expected {}, got {})", r.command, c.name, c.expected, c.actual)),
    }
}

fn lie_algebra() -> Outcome {
    let r = report::verify_jacobi();
    all_pass(&r)?;
    let jacobi = r.checks.iter().filter(|c| c.name.starts_with("Jacobi")).count();
    let grading = r.checks.iter().filter(|c| c.name.starts_with("[g^")).count();
    ensure(jacobi == 120 && grading == 25, format!("{jacobi} Jacobi triples, {grading} grading pairs"))?;
    Ok("120 Jacobi triples, 25 grading pairs, eigenspace dims (1,2,4,2,1)".into())
}

fn table() -> Outcome {
    let r = report::verify_table1();
    ensure(r.checks.len() == 110, format!("{} cells", r.checks.len()))?;
    all_pass(&r)?;
    let deltas = r.checks.iter().filter(|c| c.expected != c.actual).count();
    Ok(format!("110 cells, {deltas} explained scalar-factor deltas, 0 unexplained"))
}

fn isotropy() -> Outcome {
    let iso = isotropy_algebra(&ProjectivePoint::x_o());
    let want = Subspace::span(10, [H_0_1, H_0_2, H_1_1, H_1_2, H_2].iter().map(|&k| unit(k)).collect());
    ensure(iso.dim() == 5 && iso == want, format!("isotropy dim {}", iso.dim()))?;
    Ok("dim 5, equals the span of the five h-generators".into())
}

fn model_invariants() -> Outcome {
    let (levi, cubic) = model_levi_cubic();
    ensure(levi == "-1/2".parse().unwrap() && cubic == "-1/2*i".parse().unwrap(), format!("({levi}, {cubic})"))?;
    Ok(format!("({levi}, {cubic})"))
}

fn prolongation() -> Outcome {
    let dims: Vec<usize> = (0..=3).map(|s| prolong_step(s).unwrap().dim()).collect();
    ensure(dims == [2, 2, 1, 0], format!("dims {dims:?}"))?;
    all_pass(&report::prolong(None).unwrap())?;
    Ok(format!("dims {dims:?}, generators and ad-witnesses agree"))
}

fn kostant() -> Outcome {
    for ell in 0..2 {
        ensure(coboundary_matrix(ell + 1).unwrap().mul(coboundary_matrix(ell).unwrap()).unwrap().is_zero(), "d^2")?;
    }
    for ell in 2..=3 {
        let m = codifferential_matrix(ell - 1).unwrap().mul(codifferential_matrix(ell).unwrap()).unwrap();
        ensure(m.is_zero(), "(d*)^2")?;
    }
    for k in 1..=4 {
        all_pass(&report::hodge(2, k).unwrap())?;
    }
    for x in indices_of_grade(0) {
        let x = unit(x);
        for ell in 0..3 {
            let d = coboundary_matrix(ell).unwrap();
            for col in 0..full_len(ell) {
                let mut c = vec_zero(full_len(ell));
                c[col] = Gq::one();
                ensure(d.mul_vec(&act(&x, ell, &c)) == act(&x, ell + 1, &d.mul_vec(&c)), "d equivariance")?;
            }
        }
        for ell in 1..=3 {
            let d = codifferential_matrix(ell).unwrap();
            for col in 0..full_len(ell) {
                let mut c = vec_zero(full_len(ell));
                c[col] = Gq::one();
                ensure(d.mul_vec(&act(&x, ell, &c)) == act(&x, ell - 1, &d.mul_vec(&c)), "d* equivariance")?;
            }
        }
    }
    Ok("d^2 = (d*)^2 = 0, direct sums for k = 1..4, g0-equivariance".into())
}

fn invariant_under(xs: &[usize], from: i32, to: &Subspace, to_k: i32, src: &Subspace) -> bool {
    let (s_from, s_to) = (CochainSpace::new(2, from).unwrap(), CochainSpace::new(2, to_k).unwrap());
    xs.iter().all(|&x| {
        src.basis().iter().all(|b| to.contains(&s_to.restrict(&act(&unit(x), 2, &s_from.embed(b)))).unwrap())
    })
}

fn normalization() -> Outcome {
    for k in 1..=3 {
        let n = normalization_space(k).unwrap();
        let g = gauge_image(k).unwrap();
        let total = CochainSpace::new(2, k).unwrap().dim();
        ensure(n.intersect(&g).unwrap().dim() == 0 && n.dim() + g.dim() == total, format!("complement k = {k}"))?;
    }
    let (n1, n2, n3) = (normalization_space(1).unwrap(), normalization_space(2).unwrap(), normalization_space(3).unwrap());
    let n4 = hodge_spaces(2, 4).unwrap().ker_dstar;
    ensure(invariant_under(&[H_0_1, H_0_2], 1, &n1, 1, &n1), "h0-invariance k = 1")?;
    ensure(invariant_under(&[H_0_1, H_0_2], 2, &n2, 2, &n2), "h0-invariance k = 2")?;
    ensure(invariant_under(&[H_1_1, H_1_2], 2, &n3, 3, &n2), "h1 maps N2 into N3")?;
    ensure(invariant_under(&[H_1_1, H_1_2], 3, &n4, 4, &n3), "h1 maps N3 into ker d*")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 1..=3 {
        let space = CochainSpace::new(2, k).unwrap();
        let normal = normalization_space(k).unwrap();
        let gauge = gauge_space(k).unwrap();
        let s1 = CochainSpace::new(1, k).unwrap();
        for _ in 0..100 {
            let local: Vec<Gq> =
                (0..space.dim()).map(|_| Gq::q(rng.gen_range(-9..=9), rng.gen_range(1..=5), 0, 1)).collect();
            let c = Cochain::new(2, k, space.embed(&local)).unwrap();
            let n = normalize_ctorsion(&c).unwrap();
            let back = coboundary(&n.gauge).unwrap();
            let sum: Vec<Gq> = back.coeffs.iter().zip(&n.residual.coeffs).map(|(a, b)| a + b).collect();
            ensure(
                normal.contains(&space.restrict(&n.residual.coeffs)).unwrap()
                    && gauge.contains(&s1.restrict(&n.gauge.coeffs)).unwrap()
                    && sum == c.coeffs,
                format!("round trip failed at k = {k}"),
            )?;
        }
    }
    Ok("complements, invariance, 300 random round trips".into())
}

fn tube() -> Outcome {
    let n = sample_points().len();
    ensure(n >= 4, "too few sample points")?;
    let r = report::model_samples();
    all_pass(&r)?;
    Ok(format!("{n} cone points: Levi rank 1, rib, cubic nonzero, Freeman (2, 1, 0), extension independence"))
}

fn embedding() -> Outcome {
    all_pass(&report::model_identities())?;
    for p in sample_points() {
        let csv: Vec<String> = (0..3).map(|j| p.z[j].re.to_string()).chain((0..3).map(|j| p.z[j].im.to_string())).collect();
        all_pass(&report::model_embed(&csv.join(",")).unwrap())?;
    }
    Ok("(f, f) = 0, <f, f> = 2 rho, f(samples) in the open orbit".into())
}

fn structure_equations() -> Outcome {
    all_pass(&report::verify_structeq())?;
    let cat = constraint_catalog();
    for (upper, b) in [(1, 1), (2, 2)] {
        let s = StructureFunctionSymbol { upper, lower: (b, 3) };
        ensure(cat.contains_vanishing(&s), format!("{s} missing"))?;
    }
    Ok("10 equations vanish, d^2 = 0, catalog contains the named vanishing pair".into())
}

fn determinism() -> Outcome {
    let run = || report::full_suite().iter().map(Report::to_json).collect::<String>();
    let (a, b) = (run(), run());
    ensure(a == b, "JSON differs between runs")?;
    Ok(format!("{} bytes identical across two runs", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Lie algebra integrity", lie_algebra),
        ("bracket table cross-check", table),
        ("isotropy at the base point", isotropy),
        ("model Levi and cubic values", model_invariants),
        ("prolongation dimensions and generators", prolongation),
        ("Kostant machinery", kostant),
        ("normalization spaces", normalization),
        ("tube geometry", tube),
        ("embedding identities", embedding),
        ("structure equations", structure_equations),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
