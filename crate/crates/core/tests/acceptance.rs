//! Acceptance checks: one PASS/FAIL line each, non-zero exit on failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slice_bohr::bohr::{BohrParams, CoefficientClass, FunctionalId, SampleMode};
use slice_bohr::extremals::{closed_form_value, sharpness_witness, Family};
use slice_bohr::harness::{default_suite, verify_suite, Verdict, VerifyConfig};
use slice_bohr::quaternion::{on_slice, random_unit, random_unit_imaginary};
use slice_bohr::radii;
use slice_bohr::theorem::TheoremId;
use slice_bohr::{QSeries, Quaternion};

/// High-precision maximum of `x(1+x)²(1−x²)²` on `[0, 1]`.
const C2_ORACLE: f64 = 0.642_902_340_200_415_5;
/// High-precision root of `3r³ − 5r² − 3r + 1` in `(0, 1)`.
const RSTAR_ORACLE: f64 = 0.246_829_826_210_458_5;
/// Relative slack for floating-point equality cases.
const ROUNDING: f64 = 1e-12;

type Criterion = (&'static str, fn(&mut Check), Option<Duration>);

struct Check {
    fails: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self {
            fails: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.fails.push(what.into());
        }
    }

    fn close(&mut self, got: f64, want: f64, tol: f64, what: &str) {
        self.expect(
            (got - want).abs() <= tol,
            format!("{what}: got {got}, want {want} within {tol:e}"),
        );
    }
}

fn radius_constants(c: &mut Check) {
    let rs = radii::radius_rstar().value;
    c.close(rs, 0.24683, 5e-6, "R*");
    c.close(rs, RSTAR_ORACLE, 1e-15, "R* against oracle");
    c.close(
        radii::radius_starlike().value,
        (3.0 - 5f64.sqrt()) / 2.0,
        1e-12,
        "(3-sqrt5)/2",
    );
    c.expect(radii::radius_deriv_starlike().value == 0.5, "radius 1/2");
    c.expect(radii::radius_classical().value == 1.0 / 3.0, "radius 1/3");
    for m in [0.1, 0.5, 1.0, 2.0] {
        let closed = radii::radius_rm(m).unwrap().value;
        c.close(closed, m / (2.0 + m), 1e-15, &format!("R_m m={m}"));
        let inf = radii::radius_rm_via_infimum(m).unwrap().value;
        c.close(inf, closed, 1e-8, &format!("infimum oracle m={m}"));
    }
    let out = Command::new(env!("CARGO_BIN_EXE_slice-bohr"))
        .args(["radius", "--theorem", "1.7"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    let printed = text
        .lines()
        .find_map(|l| l.strip_prefix("radius "))
        .and_then(|v| v.parse::<f64>().ok());
    c.expect(
        printed.is_some_and(|v| (v - 0.24683).abs() <= 5e-6),
        format!("CLI radius output: {text}"),
    );
}

fn extremal_equality(c: &mut Check) {
    let p1 = BohrParams::default();
    let rs = radii::radius_starlike().value;
    let v = closed_form_value(Family::StarlikeKoebe, FunctionalId::Bohr, rs, 0.0, &p1).unwrap();
    c.close(v, 1.0, 1e-12, "Koebe sum at (3-sqrt5)/2");
    let v = closed_form_value(Family::GeomCayley, FunctionalId::Bohr, 0.5, 0.0, &p1).unwrap();
    c.expect(v == 1.0, format!("Cayley sum at 1/2 = {v}"));
    for (fun, ms) in [
        (FunctionalId::K, &[0.1, 0.5, 1.0, 2.0][..]),
        (FunctionalId::L, &[0.1, 0.5, 1.0][..]),
    ] {
        for &m in ms {
            let p = BohrParams::with_m(m);
            let r = m / (2.0 + m);
            let ladder: Vec<f64> = [0.9, 0.99, 0.999]
                .iter()
                .map(|&a| closed_form_value(Family::MobiusLike, fun, r, a, &p).unwrap())
                .collect();
            c.close(ladder[2], 1.0, 1e-2, &format!("{fun} m={m} a=0.999"));
            let gaps: Vec<f64> = ladder.iter().map(|v| (v - 1.0).abs()).collect();
            c.expect(
                gaps[2] < gaps[1] && gaps[1] < gaps[0],
                format!("{fun} m={m}: ladder not converging {ladder:?}"),
            );
            let limit = closed_form_value(Family::MobiusLike, fun, r, 1.0, &p).unwrap();
            c.close(limit, 1.0, 1e-12, &format!("{fun} m={m} a->1 limit"));
        }
    }
    let r = radii::radius_rstar().value;
    let v = closed_form_value(Family::HalfSpaceMap, FunctionalId::N, r, 0.999, &p1).unwrap();
    c.close(v, 1.0, 1e-2, "N on half-space map a=0.999 at R*");
    let v0 = closed_form_value(Family::HalfSpaceMap, FunctionalId::N, r, 0.0, &p1).unwrap();
    c.close(v0, 1.0, 1e-12, "N on half-space map a->0 at R*");
}

fn sharpness_witnesses(c: &mut Check) {
    for (t, p) in default_suite().unwrap() {
        let r = t.radius(&p).unwrap() + 0.01;
        match sharpness_witness(t, r, &p) {
            Ok(w) => {
                c.expect(w.value > 1.0, format!("{t}: witness {}", w.value));
                if t.family() == Family::MobiusLike {
                    let at = closed_form_value(
                        t.family(),
                        t.functional(),
                        r,
                        0.999,
                        &t.effective_params(&p),
                    )
                    .unwrap();
                    c.expect(at > 1.0, format!("{t} m={}: a=0.999 gives {at}", p.m));
                }
            }
            Err(e) => c.expect(false, format!("{t} m={}: {e}", p.m)),
        }
    }
    let r = radii::radius_rstar().value + 0.01;
    let near_one = closed_form_value(
        Family::HalfSpaceMap,
        FunctionalId::N,
        r,
        0.999,
        &BohrParams::default(),
    )
    .unwrap();
    let w = sharpness_witness(TheoremId::T1_7, r, &BohrParams::default()).unwrap();
    c.notes.push(format!(
        "1.7 witness a={} value {:.6}; a=0.999 gives {near_one:.6}",
        w.spec.a, w.value
    ));
}

fn class_certification(c: &mut Check) {
    let cfg = VerifyConfig::default();
    let suite = default_suite().unwrap();
    let reports = verify_suite(&suite, &cfg).unwrap();
    let mut worst: f64 = 0.0;
    for r in &reports {
        let bound = r.certified_bound().unwrap_or(f64::INFINITY);
        worst = worst.max(bound);
        c.expect(
            r.verdict == Verdict::Certified && bound <= 1.0 + 1e-9,
            format!("{}: {} ({})", r.theorem_id, r.verdict, r.explanation),
        );
        c.expect(
            r.grid.samples == 256 && r.grid.r.len() == 32 && r.grid.order == 2048,
            format!(
                "{}: grid {:?}",
                r.theorem_id,
                (r.grid.samples, r.grid.r.len(), r.grid.order)
            ),
        );
    }
    let ids: std::collections::BTreeSet<_> = reports.iter().map(|r| r.theorem_id).collect();
    c.expect(ids.len() == TheoremId::ALL.len(), "every theorem covered");
    c.notes.push(format!(
        "{} reports, worst max+tail {worst:.15}",
        reports.len()
    ));

    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_slice-bohr"))
        .arg("verify")
        .output()
        .unwrap()
        .status;
    let elapsed = start.elapsed();
    c.expect(
        status.code() == Some(0),
        format!("default verify exit {status}"),
    );
    c.expect(
        elapsed < Duration::from_secs(60),
        format!("default verify took {elapsed:?}"),
    );
    c.notes
        .push(format!("default verify run {:.2} s", elapsed.as_secs_f64()));
}

fn random_series(rng: &mut ChaCha8Rng, max_order: usize) -> QSeries {
    let order = rng.random_range(0..=max_order);
    QSeries::new(
        (0..=order)
            .map(|_| random_unit(rng) * rng.random::<f64>())
            .collect(),
    )
}

fn algebra_oracles(c: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = [0.0f64; 5];
    let mut n = 0;
    while n < 1000 {
        let (f, h) = (random_series(&mut rng, 8), random_series(&mut rng, 8));
        let q = random_unit(&mut rng) * (0.99 * rng.random::<f64>());
        let fq = f.eval(q);
        if fq.modulus() < 1e-6 {
            continue;
        }
        let rhs = fq * h.eval(fq.inverse().unwrap() * q * fq);
        worst[0] = worst[0].max(f.star(&h).eval(q).max_abs_diff(rhs));
        for s in f.symmetrization().coeffs() {
            worst[1] = worst[1].max(s.im_modulus());
        }
        if let Ok(t) = f.transform(q) {
            let back = f.regular_conjugate().transform(t).unwrap();
            worst[3] = worst[3].max(back.max_abs_diff(q));
        }
        n += 1;
    }
    for _ in 0..100 {
        let mut coeffs: Vec<Quaternion> = (0..=8)
            .map(|_| random_unit(&mut rng) * (0.5 * rng.random::<f64>()))
            .collect();
        coeffs[0] = random_unit(&mut rng);
        let f = QSeries::new(coeffs);
        let inv = f.regular_reciprocal(64).unwrap();
        worst[2] = worst[2]
            .max(inv.star_truncated(&f, 64).scaled_distance(&QSeries::one()))
            .max(f.star_truncated(&inv, 64).scaled_distance(&QSeries::one()));
    }
    for _ in 0..1000 {
        let i_unit = random_unit_imaginary(&mut rng);
        let v = random_unit_imaginary(&mut rng);
        let w = v + i_unit * (v * i_unit).re();
        let j_unit = w / w.modulus();
        let k_unit = i_unit * j_unit;
        let order = rng.random_range(0..=12);
        let (mut fc, mut gc, mut coeffs) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..=order {
            let [a, b, cc, d]: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            fc.push(Complex64::new(a, b));
            gc.push(Complex64::new(cc, d));
            coeffs.push(Quaternion::real(a) + i_unit * b + j_unit * cc + k_unit * d);
        }
        let (x, y) = (rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7));
        let z = Complex64::new(x, y);
        let horner = |cs: &[Complex64]| {
            cs.iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &p| acc * z + p)
        };
        let (fz, gz) = (horner(&fc), horner(&gc));
        let want = Quaternion::real(fz.re) + i_unit * fz.im + j_unit * gz.re + k_unit * gz.im;
        worst[4] = worst[4].max(
            QSeries::new(coeffs)
                .eval(on_slice(x, y, i_unit))
                .max_abs_diff(want),
        );
    }
    let names = [
        "star identity",
        "symmetrization realness",
        "reciprocal",
        "T_f inversion",
        "slice oracle",
    ];
    let tols = [1e-9, 1e-12, 1e-10, 1e-10, 1e-10];
    for i in 0..5 {
        c.expect(
            worst[i] <= tols[i],
            format!("{}: {:e} > {:e}", names[i], worst[i], tols[i]),
        );
    }
    c.notes.push(format!(
        "worst errors {}",
        names
            .iter()
            .zip(worst)
            .map(|(n, w)| format!("{n} {w:.1e}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
}

fn constants(c: &mut Check) {
    c.close(radii::c_k(1).unwrap(), 4.0, 1e-12, "c1");
    let cs: Vec<f64> = (1..=10).map(|k| radii::c_k(k).unwrap()).collect();
    c.expect(
        cs.windows(2).all(|w| w[1] <= w[0]),
        format!("c_k not nonincreasing: {cs:?}"),
    );
    let c2 = radii::c_k_detailed(2).unwrap();
    c.close(c2.grid_value, C2_ORACLE, 1e-9, "c2 grid value");
    c.close(c2.value, C2_ORACLE, 1e-9, "c2 refined value");
    let l = radii::l_condition(&[8.0 / 9.0], 1.0).unwrap();
    c.close(l.value, 1.0, 1e-12, "L(8/9) at m = 1");
    c.expect(l.admissible, "boundary d admissible");
}

fn s_star_bound(c: &mut Check) {
    let mut violations = 0;
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let p = BohrParams::default();
    for s in 0..1000 {
        let mode = if s % 2 == 0 {
            SampleMode::Interior
        } else {
            SampleMode::Boundary
        };
        let f = CoefficientClass::Bounded.sample(2048, rng.random(), mode);
        let t = f.coeff(0).modulus();
        let b = 1.0 - t * t;
        for r in [0.1, 0.2, 0.3] {
            let (v, tail) = FunctionalId::SStar
                .evaluate_with_tail(&f, r, &p, CoefficientClass::Bounded)
                .unwrap();
            let bound = b * b * r * r / ((1.0 - r * r) * (1.0 - r * r));
            worst = worst.max((v - bound - tail.value) / bound);
            if v > bound * (1.0 + ROUNDING) + tail.value {
                violations += 1;
            }
        }
    }
    c.expect(violations == 0, format!("{violations} S* violations"));
    c.notes.push(format!(
        "largest relative excess over the bound {worst:.1e}"
    ));
}

fn main() -> ExitCode {
    let checks: [Criterion; 7] = [
        (
            "radius constants",
            radius_constants,
            Some(Duration::from_secs(1)),
        ),
        (
            "extremal equality at the radius",
            extremal_equality,
            Some(Duration::from_secs(1)),
        ),
        (
            "sharpness witnesses",
            sharpness_witnesses,
            Some(Duration::from_secs(1)),
        ),
        ("class certification sweeps", class_certification, None),
        ("algebra oracle suite", algebra_oracles, None),
        ("admissibility constants", constants, None),
        ("S* bound on bounded samples", s_star_bound, None),
    ];
    let mut failed = 0;
    for (name, run, budget) in checks {
        let mut c = Check::new();
        let start = Instant::now();
        run(&mut c);
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            c.expect(elapsed < b, format!("took {elapsed:?}, budget {b:?}"));
        }
        let ok = c.fails.is_empty();
        failed += usize::from(!ok);
        println!(
            "{} {name} ({:.1} ms)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64() * 1e3
        );
        for n in &c.notes {
            println!("     {n}");
        }
        for f in &c.fails {
            println!("     - {f}");
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
