//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs the library directly and the `okb` binary for the figure.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_traits::{Signed, Zero};
use okb_core::cones::{cone_model, is_big, is_nef, line_minus, seshadri};
use okb_core::exactlin::rational::{int, parse_rational, ratio};
use okb_core::okounkov::{
    body_data, body_l, line_body, nagata_strip, okounkov_body, rescale, BodyRequest, Point, Polygon, PolygonRecord,
};
use okb_core::parallel;
use okb_core::sampling::Sampler;
use okb_core::weyl::{exceptional_classes, exceptional_classes_diophantine, Reflection};
use okb_core::zariski::zariski_decompose_with;
use okb_core::{canonical_class, intersect, zariski_decompose, CurveClass, DivisorClass, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn seshadri_table() -> Vec<Rational> {
    ["1", "1/2", "1/2", "1/2", "2/5", "2/5", "3/8", "6/17", "1/3"]
        .iter()
        .map(|s| parse_rational(s).unwrap())
        .collect()
}

/// `(δₙ, ε′ₙ)` for `n = 1..=8` at `ε = 1/3`.
fn third_table() -> Vec<(Rational, Rational)> {
    let delta = ["2/3", "2/3", "1/2", "1/3", "1/3", "1/5", "1/8", "1/17"];
    let eps_p = ["2/3", "1/3", "1/3", "1/3", "1/6", "1/6", "1/9", "1/18"];
    delta
        .iter()
        .zip(eps_p)
        .map(|(d, p)| (parse_rational(d).unwrap(), parse_rational(p).unwrap()))
        .collect()
}

fn quadrilateral(delta: &Rational, eps_p: &Rational) -> Polygon {
    Polygon::hull([
        Point::ints(0, 0),
        Point::new(delta.clone(), int(0)),
        Point::new(eps_p.clone(), int(1) - eps_p),
        Point::ints(0, 1),
    ])
}

fn expected_third_bodies() -> Vec<Polygon> {
    let mut v = vec![Polygon::unit_simplex()];
    v.extend(third_table().iter().map(|(d, p)| quadrilateral(d, p)));
    v.push(Polygon::hull([Point::ints(0, 0), Point::ints(0, 1)]));
    v
}

fn criterion_1() -> Outcome {
    let counts = [1usize, 3, 6, 10, 16, 27, 56, 240];
    for (i, &want) in counts.iter().enumerate() {
        let got = exceptional_classes(i + 1).map_err(e)?.len();
        ensure(got == want, || format!("n = {}: {got} classes, expected {want}", i + 1))?;
    }
    let mut hist = [0usize; 7];
    for c in exceptional_classes(8).map_err(e)? {
        hist[c.degree() as usize] += 1;
    }
    ensure(hist == [8, 28, 56, 56, 56, 28, 8], || format!("n = 8 histogram {hist:?}"))?;
    for n in 3..=8 {
        let orbit: BTreeSet<CurveClass> = exceptional_classes(n).map_err(e)?.iter().cloned().collect();
        let oracle: BTreeSet<CurveClass> = exceptional_classes_diophantine(n).map_err(e)?.into_iter().collect();
        ensure(orbit == oracle, || format!("n = {n}: orbit and Diophantine sets differ"))?;
    }
    Ok("counts 1..240, n=8 histogram, orbit = oracle for n=3..8".into())
}

fn criterion_2() -> Outcome {
    for (i, want) in seshadri_table().iter().enumerate() {
        let n = i + 1;
        let got = seshadri(n).map_err(e)?;
        ensure(&got == want, || format!("n = {n}: {got}, expected {want}"))?;
        if n <= 8 {
            // nef threshold, seen from both sides
            let at = line_minus(n, &got).map_err(e)?;
            let past = line_minus(n, &(&got + ratio(1, 1000))).map_err(e)?;
            ensure(is_nef(&at).map_err(e)? && !is_nef(&past).map_err(e)?, || format!("n = {n}: not the nef threshold"))?;
        }
    }
    Ok("table matches for n=1..9".into())
}

fn criterion_3() -> Outcome {
    let expected = expected_third_bodies();
    let third = ratio(1, 3);
    for (n, want) in expected.iter().enumerate().take(9) {
        let body = okounkov_body(&BodyRequest::Class(line_minus(n, &third).map_err(e)?)).map_err(e)?;
        ensure(&body == want, || format!("n = {n}: {body:?}, expected {want:?}"))?;
        // independent cross-check: 2·area is the volume of the class
        let vol = zariski_decompose(&line_minus(n, &third).map_err(e)?).map_err(e)?.volume();
        ensure(int(2) * body.area() == vol, || format!("n = {n}: area law fails"))?;
    }
    let nine = body_l(9, &int(1), &third).map_err(e)?;
    ensure(nine == expected[9], || format!("n = 9: {nine:?}"))?;
    Ok("quadrilaterals for n=1..8, triangle n=0, segment n=9".into())
}

fn criterion_4() -> Outcome {
    for n in 1..=8 {
        let eps = seshadri(n).map_err(e)?;
        let corner = int(1) - int(n as i64) * &eps * &eps;
        let want = Polygon::hull([Point::ints(0, 0), Point::new(corner.clone(), int(0)), Point::ints(0, 1)]);
        let d = line_minus(n, &eps).map_err(e)?;
        let got = if is_big(&d).map_err(e)? {
            body_data(&d).map_err(e)?.polygon
        } else {
            // D² = 0 (n = 1, 4): the limiting segment
            line_body(n, &eps).map_err(e)?
        };
        ensure(got == want, || format!("n = {n}: {got:?}, expected {want:?}"))?;
    }
    let x = |n: usize| {
        let eps = seshadri(n).unwrap();
        int(1) - int(n as i64) * &eps * &eps
    };
    ensure(x(5) == ratio(1, 5) && x(8) == ratio(1, 289), || "corner values".into())?;
    Ok("walk body = Seshadri triangle for n=1..8 (corners 1/5, 1/289)".into())
}

fn criterion_5() -> Outcome {
    let ns: Vec<usize> = (1..=8).collect();
    let results = parallel::map(&ns, |&n| -> Result<usize, String> {
        let mut s = Sampler::stream(5, n as u64);
        for _ in 0..20 {
            let (a, b) = s.epsilon_pair(n).map_err(e)?;
            let (da, db) = (line_minus(n, &a).map_err(e)?, line_minus(n, &b).map_err(e)?);
            ensure(is_big(&da).map_err(e)? && is_big(&db).map_err(e)?, || format!("n = {n}: sample not big"))?;
            let lhs = rescale(&line_body(n, &a).map_err(e)?, &(&b / &a)).map_err(e)?;
            let rhs = line_body(n, &b).map_err(e)?;
            ensure(lhs == rhs, || format!("n = {n}, ε = {a}, ε′ = {b}: {lhs:?} vs {rhs:?}"))?;
        }
        Ok(20)
    });
    let total: usize = results.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{total} pairs, exact polygon equality"))
}

fn criterion_6() -> Outcome {
    let ns: Vec<usize> = (0..=8).collect();
    let results = parallel::map(&ns, |&n| -> Result<usize, String> {
        let mut s = Sampler::stream(6, n as u64);
        for _ in 0..100 {
            let d = s.big_class(n).map_err(e)?;
            let body = body_data(&d).map_err(e)?;
            let vol = zariski_decompose(&d).map_err(e)?.positive().square();
            ensure(int(2) * body.polygon.area() == vol, || format!("{d}: 2·area ≠ {vol}"))?;
        }
        Ok(100)
    });
    let total: usize = results.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{total} big classes, 2·area = P² exactly"))
}

/// Negative definiteness by exact symmetric elimination: all pivots `< 0`.
fn negative_definite_ldl(mut a: Vec<Vec<Rational>>) -> bool {
    let k = a.len();
    for i in 0..k {
        let p = a[i][i].clone();
        if !p.is_negative() {
            return false;
        }
        for r in i + 1..k {
            let f = &a[r][i] / &p;
            let pivot = a[i].clone();
            for (x, y) in a[r][i..k].iter_mut().zip(&pivot[i..k]) {
                *x -= &f * y;
            }
        }
    }
    true
}

fn criterion_7() -> Outcome {
    let ns: Vec<usize> = (0..=8).collect();
    let results = parallel::map(&ns, |&n| -> Result<usize, String> {
        let mut s = Sampler::stream(7, n as u64);
        let cone = cone_model(n).map_err(e)?;
        let mut cands: Vec<CurveClass> = cone.negative_curves().cloned().collect();
        for _ in 0..200 {
            let d = s.psef_class(n).map_err(e)?;
            let z = zariski_decompose(&d).map_err(e)?;
            let p = z.positive();
            for g in cone.generators() {
                let v = intersect(&g.to_divisor(), p).map_err(e)?;
                ensure(!v.is_negative(), || format!("{d}: P·{g} < 0"))?;
            }
            let mut n_class = DivisorClass::zero(n).map_err(e)?;
            for (c, x) in z.negative() {
                ensure(x.is_positive(), || format!("{d}: coefficient on {c} not positive"))?;
                ensure(intersect(&c.to_divisor(), p).map_err(e)?.is_zero(), || format!("{d}: P·{c} ≠ 0"))?;
                n_class = n_class.add_scaled(x, &c.to_divisor()).map_err(e)?;
            }
            ensure(p.add(&n_class).map_err(e)? == d, || format!("{d}: P + N ≠ D"))?;
            let gram: Vec<Vec<Rational>> = z
                .negative()
                .iter()
                .map(|(a, _)| z.negative().iter().map(|(b, _)| int(a.dot(b))).collect())
                .collect();
            ensure(gram.is_empty() || negative_definite_ldl(gram), || format!("{d}: Gram not negative definite"))?;
            s.shuffle(&mut cands);
            let again = zariski_decompose_with(&d, &cands).map_err(e)?;
            ensure(again == z, || format!("{d}: result depends on candidate order"))?;
        }
        Ok(200)
    });
    let total: usize = results.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{total} psef classes, zero failures"))
}

fn criterion_8() -> Outcome {
    let mut s = Sampler::new(8);
    for _ in 0..1000 {
        let n = 3 + s.below(7);
        let a = s.integral_class(n, 10).map_err(e)?;
        let b = s.integral_class(n, 10).map_err(e)?;
        let k = CurveClass::from_divisor(&canonical_class(n).map_err(e)?).map_err(e)?;
        for r in Reflection::generators(n) {
            let (ra, rb) = (r.apply_curve(&a).map_err(e)?, r.apply_curve(&b).map_err(e)?);
            ensure(ra.dot(&rb) == a.dot(&b), || format!("s{} breaks the form on {a}, {b}", r.index()))?;
            ensure(r.apply_curve(&k).map_err(e)? == k, || format!("s{} moves k", r.index()))?;
        }
    }
    for n in 3..=8 {
        let set: BTreeSet<CurveClass> = exceptional_classes(n).map_err(e)?.iter().cloned().collect();
        for r in Reflection::generators(n) {
            let img: BTreeSet<CurveClass> = set.iter().map(|c| r.apply_curve(c)).collect::<Result<_, _>>().map_err(e)?;
            ensure(img == set, || format!("n = {n}: s{} does not permute the set", r.index()))?;
        }
        for c in &set {
            let mut m = c.multiplicities().to_vec();
            if m.iter().filter(|&&x| x > 0).count() >= 2 {
                m.sort_unstable_by(|x, y| y.cmp(x));
                m.resize(m.len().max(3), 0);
                ensure(c.degree() < m[0] + m[1] + m[2], || format!("{c} violates Noether"))?;
            }
        }
    }
    Ok("1000 random classes; permutation and Noether for n=3..8".into())
}

fn okb(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_okb")).args(args).output().map_err(e)?;
    ensure(out.status.success(), || format!("okb {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)))?;
    String::from_utf8(out.stdout).map_err(e)
}

fn tikz_ticks(tikz: &str, anchor: &str) -> Vec<f64> {
    tikz.lines()
        .filter_map(|l| l.strip_prefix(&format!("\\node [{anchor}] at (")))
        .map(|rest| {
            let (x, rest) = rest.split_once(',').unwrap();
            let y = &rest[..rest.find(')').unwrap()];
            if anchor == "below" { x.parse().unwrap() } else { y.parse().unwrap() }
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let tikz = okb(&["dissect", "--eps", "1/3", "--scale", "10.2", "--format", "tikz"])?;
    let figure_x = [0.6, 1.27, 2.04, 3.4, 5.1, 6.8, 10.2];
    let figure_y = [3.4, 6.8, 8.5, 9.07, 9.63, 10.2];
    for (anchor, want) in [("below", &figure_x[..]), ("left", &figure_y[..])] {
        let got = tikz_ticks(&tikz, anchor);
        ensure(got.len() == want.len(), || format!("{anchor} ticks {got:?}"))?;
        for (g, w) in got.iter().zip(want) {
            ensure((g - w).abs() < 0.01, || format!("tick {g} vs figure {w}"))?;
        }
    }
    let json = okb(&["dissect", "--eps", "1/3", "--format", "json"])?;
    let records: Vec<PolygonRecord> = serde_json::from_str(&json).map_err(e)?;
    let bodies: Vec<Polygon> = records.iter().map(|r| r.polygon()).collect::<Result<_, _>>().map_err(e)?;
    ensure(records.iter().map(|r| r.n).eq(0..=9), || "records are not n = 0..9".into())?;
    ensure(bodies == expected_third_bodies(), || "JSON bodies differ from the table".into())?;
    for n in 1..=9 {
        ensure(bodies[n - 1].contains(&bodies[n]), || format!("Δ({n}) ⊄ Δ({})", n - 1))?;
    }
    Ok("ticks within 0.01, JSON equals the table, nesting n=1..9".into())
}

fn criterion_10() -> Outcome {
    let strip = nagata_strip(9, &int(3), &int(1)).map_err(e)?;
    let rational = strip.to_rational().ok_or("n = 9 strip not rational")?;
    ensure(rational == body_l(9, &int(3), &int(1)).map_err(e)?, || "n = 9 strip ≠ body_L(9,3,1)".into())?;
    ensure(rational.vertices().iter().all(|p| p.x.is_zero()), || format!("{rational:?} leaves x = 0"))?;
    ensure(!strip.conjectural, || "n = 9 flagged conjectural".into())?;
    for m in 1..=3 {
        let s16 = nagata_strip(16, &int(4 * m), &int(m)).map_err(e)?;
        let p = s16.to_rational().ok_or("n = 16 strip not rational")?;
        ensure(p.dimension() == Some(1), || format!("n = 16, m = {m}: {p:?}"))?;
    }
    let s10 = nagata_strip(10, &int(4), &int(1)).map_err(e)?;
    ensure(s10.conjectural, || "n = 10 not flagged conjectural".into())?;
    let x = &s10.vertices[1].x;
    let four = okb_core::QuadraticNumber::from(int(4));
    let diff = &four - x;
    ensure((&diff * &diff).as_rational() == Some(&int(10)), || format!("(4 − x)² ≠ 10 for x = {x}"))?;
    let json = okb(&["nagata", "-n", "10", "-d", "4", "-m", "1", "--json"])?;
    let v: serde_json::Value = serde_json::from_str(&json).map_err(e)?;
    ensure(v["conjectural"] == true && v["vertices"][1][0]["b"] == "-1", || format!("CLI payload {v}"))?;
    Ok("n=9 segment, n=16 degenerate, n=10 conjectural with x = 4 - sqrt(10)".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exceptional-class counts", criterion_1),
        ("Seshadri table", criterion_2),
        ("quadrilateral table", criterion_3),
        ("Seshadri-triangle cross-check", criterion_4),
        ("rescale law", criterion_5),
        ("area-volume law", criterion_6),
        ("Zariski suite", criterion_7),
        ("Weyl invariants", criterion_8),
        ("dissection figure", criterion_9),
        ("Nagata strips", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{detail}] {secs:.2}s", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{why}] {secs:.2}s", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
