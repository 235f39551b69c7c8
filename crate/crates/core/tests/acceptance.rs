//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Tolerances are pinned here and must not be loosened.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::Instant;

use noneuclid::lambert::{
    classify, edge_lengths_from_abc, edge_lengths_spherical, principal_spherical, volume_hyperbolic,
    volume_singular, volume_spherical, volume_spherical_integral_with, IntegralRoute,
};
use noneuclid::orthoscheme::{
    classify_orthoscheme, cosine_rule_residual, orthoscheme_edges, volume_orthoscheme_integral,
    volume_orthoscheme_schlaefli, volume_via_delta, Curvature, OrthoschemeAngles,
};
use noneuclid::quadrature::quad;
use noneuclid::specfun::{delta_s, delta_s_arccot, delta_s_reduced, delta_s_tol, dilog2};
use noneuclid::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QTOL: f64 = 1e-12;
const MARGIN: f64 = 0.05;

struct Outcome {
    residual: f64,
    tol: f64,
    note: String,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.residual <= self.tol
    }
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(42 + criterion)
}

fn spherical_angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(FRAC_PI_2 + MARGIN..PI - MARGIN)
}

fn worst(acc: &mut f64, r: f64) {
    *acc = if r.is_nan() { f64::INFINITY } else { acc.max(r.abs()) };
}

fn c1() -> Result<Outcome> {
    let q = classify(2.0 * PI / 3.0, 2.0 * PI / 3.0, 3.0 * FRAC_PI_4)?;
    let v = volume_spherical(&q, QTOL)?;
    let exact = 31.0 * PI * PI / 576.0;
    Ok(Outcome {
        residual: (v - exact).abs(),
        tol: 1e-9,
        note: format!("V(2pi/3, 2pi/3, 3pi/4) = {v:.15} vs 31pi^2/576 = {exact:.15}"),
    })
}

fn c2() -> Result<Outcome> {
    let mut rng = rng(2);
    let mut res = 0.0;
    let mut n = 0;
    while n < 10 {
        let (a, b) = (spherical_angle(&mut rng), spherical_angle(&mut rng));
        let rest = 1.0 - a.cos().powi(2) - b.cos().powi(2);
        if rest <= 0.0 {
            continue;
        }
        let g = PI - rest.sqrt().acos();
        if g < FRAC_PI_2 + MARGIN {
            continue;
        }
        n += 1;
        let closed = 0.25 * (PI * PI / 2.0 - (PI - a).powi(2) - (PI - b).powi(2) - (PI - g).powi(2));
        let v = volume_spherical(&classify(a, b, g)?, QTOL)?;
        worst(&mut res, v - closed);
    }
    Ok(Outcome {
        residual: res,
        tol: 1e-9,
        note: "10 triples on cos^2 a + cos^2 b + cos^2 g = 1".into(),
    })
}

fn c3() -> Result<Outcome> {
    let mut rng = rng(3);
    let mut res = 0.0;
    let mut ratio = 0.0;
    for _ in 0..5 {
        let (a, b) = (spherical_angle(&mut rng), spherical_angle(&mut rng));
        let v = volume_spherical(&classify(a, b, PI - 1e-4)?, QTOL)?;
        let s = volume_singular(a, b)?;
        worst(&mut res, v - s);
        ratio = v / s;
    }
    Ok(Outcome {
        residual: res,
        tol: 2e-3,
        note: format!("5 pairs at gamma = pi - 1e-4; V / (a+b-pi)pi = {ratio:.6} on the last pair"),
    })
}

fn c4() -> Result<Outcome> {
    let mut rng = rng(4);
    let mut res = 0.0;
    for _ in 0..20 {
        let q = classify(spherical_angle(&mut rng), spherical_angle(&mut rng), spherical_angle(&mut rng))?;
        let v = volume_spherical(&q, QTOL)?;
        for route in [IntegralRoute::Substituted, IntegralRoute::Ray] {
            worst(&mut res, v - volume_spherical_integral_with(&q, QTOL, route)?.value);
        }
    }
    Ok(Outcome {
        residual: res,
        tol: 1e-9,
        note: "20 triples, delta decomposition vs the integral (substituted and ray)".into(),
    })
}

fn c5() -> Result<Outcome> {
    let mut rng = rng(5);
    let mut res = 0.0;
    for _ in 0..50 {
        let q = classify(spherical_angle(&mut rng), spherical_angle(&mut rng), spherical_angle(&mut rng))?;
        let pd = principal_spherical(&q)?;
        let x = q.as_array();
        let by_abc = edge_lengths_from_abc(&pd)?.as_array();
        for i in 0..3 {
            worst(&mut res, (x[i].tan() / by_abc[i].tan() - pd.t) / pd.t);
        }
        let l = edge_lengths_spherical(&pd)?.as_array();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let p = x[i].sin() / l[i].sin() * x[j].sin() / l[j].sin() * x[k].cos() / l[k].cos();
            worst(&mut res, p + 1.0);
        }
    }
    Ok(Outcome {
        residual: res,
        tol: 1e-10,
        note: "50 triples, tangent rule and the three cyclic sine-cosine products".into(),
    })
}

fn c6() -> Result<Outcome> {
    let mut rng = rng(6);
    let h = 1e-4;
    let mut res = 0.0;
    for _ in 0..10 {
        let x = [spherical_angle(&mut rng), spherical_angle(&mut rng), spherical_angle(&mut rng)];
        let q = classify(x[0], x[1], x[2])?;
        let l = edge_lengths_spherical(&principal_spherical(&q)?)?.as_array();
        for i in 0..3 {
            let (mut up, mut down) = (x, x);
            up[i] += h;
            down[i] -= h;
            let fd = (volume_spherical(&classify(up[0], up[1], up[2])?, QTOL)?
                - volume_spherical(&classify(down[0], down[1], down[2])?, QTOL)?)
                / (2.0 * h);
            worst(&mut res, fd - 0.5 * l[i]);
        }
    }
    Ok(Outcome {
        residual: res,
        tol: 1e-6,
        note: "10 triples, central differences at step 1e-4 vs l/2".into(),
    })
}

fn c7() -> Result<Outcome> {
    let mut rng = rng(7);
    let mut res = 0.0;
    for _ in 0..20 {
        let a: f64 = rng.random_range(0.0..=PI);
        let dist = (FRAC_PI_2 - a).abs();
        let half = FRAC_PI_2 - dist;
        let closed = [
            PI * (FRAC_PI_4 - dist),
            half * half - PI * PI / 16.0,
            0.0,
            PI * PI / 16.0 - half * half,
            PI * (dist - FRAC_PI_4),
        ];
        for (k, c) in closed.iter().enumerate() {
            worst(&mut res, delta_s(a, k as f64 * FRAC_PI_4)? - c);
        }
    }
    Ok(Outcome {
        residual: res,
        tol: 1e-9,
        note: "20 alphas in [0, pi] at theta = 0, pi/4, pi/2, 3pi/4, pi".into(),
    })
}

fn c8() -> Result<Outcome> {
    let mut rng = rng(8);
    let mut res = 0.0;
    for _ in 0..20 {
        let (a, t) = (spherical_angle(&mut rng), spherical_angle(&mut rng));
        worst(&mut res, delta_s(a, t)? - delta_s_arccot(a, t)?);
    }
    Ok(Outcome {
        residual: res,
        tol: 1e-9,
        note: "20 points of (pi/2, pi)^2".into(),
    })
}

fn c9() -> Result<Outcome> {
    let n = 50;
    let d = |a: f64, t: f64| delta_s_tol(a, t, 1e-11).map(|r| r.value);
    let mut props = 0.0;
    let mut excess = 0.0;
    for i in 0..n {
        let a = PI * i as f64 / (n - 1) as f64;
        let d0 = d(a, 0.0)?;
        for j in 0..n {
            let t = -PI + 2.0 * PI * j as f64 / (n - 1) as f64;
            let base = d(a, t)?;
            worst(&mut props, base - d(-a, t)?);
            worst(&mut props, base + d(a, -t)? - 2.0 * d0);
            worst(&mut props, base - d(PI - a, t)?);
            worst(&mut props, base + d(a, PI - t)?);
            worst(&mut props, base - d(a + PI, t)?);
            worst(&mut props, d(a, t + PI)? - (base - 2.0 * d0));
            let red = delta_s_reduced(a, t)?;
            excess = f64::max(excess, red.abs() - PI * PI / 4.0);
        }
    }
    let at = delta_s_reduced(FRAC_PI_2, 3.0 * FRAC_PI_4)?;
    let equality = (at - PI * PI / 4.0).abs();
    Ok(Outcome {
        residual: props.max(excess.max(0.0)).max(equality),
        tol: 1e-9,
        note: format!(
            "50x50 grid: symmetry/periodicity max {props:.2e}, bound excess {:.2e}; reduced delta(pi/2, 3pi/4) = {at:.12} vs pi^2/4 = {:.12}",
            excess.max(0.0),
            PI * PI / 4.0
        ),
    })
}

fn c10() -> Result<Outcome> {
    let mut rng = rng(10);
    let mut routes = 0.0;
    let mut cosine = 0.0;
    let mut boundary = 0.0;
    let mut n = 0;
    while n < 20 {
        let a = rng.random_range(MARGIN..FRAC_PI_2 - MARGIN);
        let g = rng.random_range(MARGIN..FRAC_PI_2 - MARGIN);
        let b_min = (a.cos() * g.cos()).acos() + MARGIN;
        if b_min >= FRAC_PI_2 - MARGIN {
            continue;
        }
        n += 1;
        let b = rng.random_range(b_min..FRAC_PI_2 - MARGIN);
        let o = OrthoschemeAngles::new(a, b, g)?;
        let d = volume_via_delta(&o, QTOL)?;
        worst(&mut routes, d - volume_orthoscheme_schlaefli(&o, QTOL)?);
        worst(&mut routes, d - volume_orthoscheme_integral(&o, QTOL)?);
        let data = classify_orthoscheme(&o);
        worst(&mut cosine, cosine_rule_residual(&o, &orthoscheme_edges(&data, &o)?));

        let e = OrthoschemeAngles::new(a, (a.cos() * g.cos()).acos(), g)?;
        assert_eq!(classify_orthoscheme(&e).curvature, Curvature::Euclidean);
        worst(&mut boundary, 4.0 * volume_orthoscheme_schlaefli(&e, QTOL)?);
    }
    let ok = routes <= 1e-8 && boundary <= 1e-8 && cosine <= 1e-10;
    Ok(Outcome {
        residual: if ok { 0.0 } else { f64::INFINITY },
        tol: 0.0,
        note: format!(
            "20 orthoschemes: routes {routes:.2e} (tol 1e-8), Euclidean |S| {boundary:.2e} (tol 1e-8), cosine rule {cosine:.2e} (tol 1e-10)"
        ),
    })
}

fn c11() -> Result<Outcome> {
    let mut rng = rng(11);
    let mut res = 0.0;
    for _ in 0..20 {
        let quarter = rng.random_range(MARGIN..FRAC_PI_2 - MARGIN);
        let a = if rng.random_bool(0.5) { quarter } else { quarter + FRAC_PI_2 };
        let t = rng.random_range(-FRAC_PI_4 + 1e-3..3.0 * FRAC_PI_4 - 1e-3);
        let r = (FRAC_PI_4 - t).tan();
        let half = FRAC_PI_2 - (FRAC_PI_2 - a).abs();
        let lhs = delta_s(a, t)? - (half * half - PI * PI / 16.0);
        let rhs = dilog2(r, FRAC_PI_2)? - dilog2(r, 2.0 * a)?;
        worst(&mut res, lhs - rhs);
    }
    Ok(Outcome {
        residual: res,
        tol: 1e-9,
        note: "20 points with theta in (-pi/4, 3pi/4)".into(),
    })
}

fn c12() -> Result<Outcome> {
    let mut rng = rng(12);
    let mut res = 0.0;
    for _ in 0..20 {
        let a = rng.random_range(MARGIN..PI - MARGIN);
        let t: f64 = 2.0 - rng.random_range(0.0..2.0);
        let lhs = delta_s(a, t.tanh().atan())? - delta_s(a, 0.0)?;
        let s2 = a.sin().powi(2);
        let f = |s: f64| (2.0 * (s.sinh().powi(2) + s2)).ln() - (2.0 * s).cosh().ln();
        let rhs = -quad(f, 0.0, t, 1e-12)?.value;
        worst(&mut res, lhs - rhs);
    }
    Ok(Outcome {
        residual: res,
        tol: 1e-9,
        note: "20 points with theta in (0, 2]".into(),
    })
}

fn c13() -> Result<Outcome> {
    // 2Λ(π/4) is Catalan's constant
    let limit = 0.915_965_594_177_219_015;
    let e = 1e-4;
    let small = volume_hyperbolic(&classify(e, e, e)?, QTOL)?;
    let x = FRAC_PI_2 - 1e-3;
    let near_right = volume_hyperbolic(&classify(x, x, x)?, QTOL)?;
    let ok = (small - limit).abs() <= 1e-3 && near_right < 1e-2;
    Ok(Outcome {
        residual: if ok { 0.0 } else { f64::INFINITY },
        tol: 0.0,
        note: format!(
            "V(1e-4 x3) = {small:.10} vs 2L(pi/4) = {limit:.10} (tol 1e-3); V(pi/2 - 1e-3 x3) = {near_right:.3e} (< 1e-2)"
        ),
    })
}

fn main() -> ExitCode {
    let criteria: [fn() -> Result<Outcome>; 13] =
        [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13];
    let mut failed = 0;
    for (i, run) in criteria.iter().enumerate() {
        let start = Instant::now();
        let line = match run() {
            Ok(o) => {
                let verdict = if o.passed() { "PASS" } else { "FAIL" };
                if !o.passed() {
                    failed += 1;
                }
                if o.tol > 0.0 {
                    format!("{verdict}  residual {:.3e} <= {:.0e}?  {}", o.residual, o.tol, o.note)
                } else {
                    format!("{verdict}  {}", o.note)
                }
            }
            Err(e) => {
                failed += 1;
                format!("FAIL  error: {e}")
            }
        };
        println!("criterion {:>2}: {line}  [{:.2}s]", i + 1, start.elapsed().as_secs_f64());
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
