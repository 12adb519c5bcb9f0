//! Self-check suites, one per module, run from a seed. Checks run in
//! parallel; each draws from its own random stream, so a report depends
//! only on the suite and the seed.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cones::{
    cone_model, is_big, is_nef, is_pseudoeffective, line_minus, pseudoeffective_certificate, seshadri, PsefCertificate,
};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{is_negative_definite, solve_linear, RationalMatrix};
use crate::exactlin::quadratic::QuadraticNumber;
use crate::exactlin::rational::{format_rational, int, parse_rational, ratio};
use crate::exactlin::Rational;
use crate::lattice::{canonical_class, expected_genus, intersect, CurveClass, DivisorClass};
use crate::okounkov::{body_data, dissection, line_body, rescale, seshadri_body, Point, Polygon};
use crate::parallel;
use crate::sampling::Sampler;
use crate::weyl::{exceptional_classes, exceptional_classes_diophantine, satisfies_noether, Reflection};
use crate::zariski::{zariski_decompose, zariski_decompose_with};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match c.status {
                Status::Pass => writeln!(f, "PASS {}", c.id)?,
                Status::Fail => writeln!(f, "FAIL {}: expected {}, got {}", c.id, c.expected, c.actual)?,
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "suite {} seed {}: {} checks, {} failed",
            self.suite,
            self.seed,
            self.checks.len(),
            failed
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Exactlin,
    Lattice,
    Weyl,
    Cones,
    Zariski,
    Okounkov,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 6] =
        [Suite::Exactlin, Suite::Lattice, Suite::Weyl, Suite::Cones, Suite::Zariski, Suite::Okounkov];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exactlin => "exactlin",
            Suite::Lattice => "lattice",
            Suite::Weyl => "weyl",
            Suite::Cones => "cones",
            Suite::Zariski => "zariski",
            Suite::Okounkov => "okounkov",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::MODULES
            .into_iter()
            .chain([Suite::All])
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::parse(s, "unknown suite"))
    }
}

struct Outcome {
    pass: bool,
    expected: String,
    actual: String,
}

fn same<T: PartialEq + fmt::Debug>(expected: T, actual: T) -> Outcome {
    Outcome {
        pass: expected == actual,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    }
}

fn holds(what: &str, ok: bool, detail: impl fmt::Display) -> Outcome {
    Outcome {
        pass: ok,
        expected: what.to_string(),
        actual: if ok { what.to_string() } else { detail.to_string() },
    }
}

type Task = Box<dyn Fn(&mut Sampler) -> Result<Outcome> + Send + Sync>;

fn task(id: impl Into<String>, f: impl Fn(&mut Sampler) -> Result<Outcome> + Send + Sync + 'static) -> (String, Task) {
    (id.into(), Box::new(f))
}

/// Fraction-string form, for readable expected/actual fields.
fn fr(r: &Rational) -> String {
    format_rational(r)
}

fn exactlin_tasks() -> Vec<(String, Task)> {
    let mut t = vec![
        task("exactlin.solve.example", |_| {
            let a = RationalMatrix::from_rows(vec![vec![int(-1), int(1)], vec![int(1), int(-2)]])?;
            let x = solve_linear(&a, &[int(1), int(0)])?;
            Ok(same(vec![int(-2), int(-1)], x))
        }),
        task("exactlin.quadratic.sign", |_| {
            let x = QuadraticNumber::new(int(4), int(-1), 10)?;
            Ok(same("4 - sqrt(10)".to_string(), x.to_string()))
        }),
        task("exactlin.parse.reduce", |_| Ok(same(ratio(1, 3), parse_rational("2/6")?))),
    ];
    t.push(task("exactlin.solve.random", |s| {
        for _ in 0..30 {
            let k = 1 + s.below(5);
            let rows: Vec<Vec<Rational>> = (0..k).map(|_| (0..k).map(|_| s.rational(-5, 5, 4)).collect()).collect();
            let a = RationalMatrix::from_rows(rows)?;
            let b: Vec<Rational> = (0..k).map(|_| s.rational(-5, 5, 4)).collect();
            match solve_linear(&a, &b) {
                Ok(x) => {
                    if a.mul_vec(&x)? != b {
                        return Ok(holds("A·x = b", false, "substitution mismatch"));
                    }
                }
                Err(Error::SingularSystem) => {
                    if !a.determinant()?.is_zero() {
                        return Ok(holds("singular only when det = 0", false, "nonzero det"));
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Ok(holds("A·x = b", true, ""))
    }));
    t.push(task("exactlin.negdef.random", |s| {
        // −(MᵀM + I) is always negative definite
        for _ in 0..20 {
            let k = 1 + s.below(5);
            let m: Vec<Vec<Rational>> = (0..k).map(|_| (0..k).map(|_| s.rational(-3, 3, 3)).collect()).collect();
            let g = RationalMatrix::from_fn(k, k, |i, j| {
                let mut acc: Rational = (0..k).map(|l| &m[l][i] * &m[l][j]).sum();
                if i == j {
                    acc += int(1);
                }
                -acc
            });
            if !is_negative_definite(&g)? {
                return Ok(holds("-(MᵀM + I) negative definite", false, format!("{g:?}")));
            }
        }
        Ok(holds("-(MᵀM + I) negative definite", true, ""))
    }));
    t
}

fn lattice_tasks() -> Vec<(String, Task)> {
    let mut t = Vec::new();
    for n in 0..=9 {
        t.push(task(format!("lattice.canonical_square.n{n}"), move |_| {
            let k = canonical_class(n)?;
            Ok(same(int(9 - n as i64), k.square()))
        }));
    }
    t.push(task("lattice.bilinear.random", |s| {
        for _ in 0..50 {
            let n = s.below(10);
            let (a, b, c) = (s.rational_class(n, 5, 4)?, s.rational_class(n, 5, 4)?, s.rational_class(n, 5, 4)?);
            let l = s.rational(-3, 3, 5);
            let lhs = intersect(&a.add_scaled(&l, &b)?, &c)?;
            let rhs = intersect(&a, &c)? + &l * intersect(&b, &c)?;
            if lhs != rhs || intersect(&a, &b)? != intersect(&b, &a)? {
                return Ok(holds("symmetric bilinear", false, format!("{a} {b} {c}")));
            }
        }
        Ok(holds("symmetric bilinear", true, ""))
    }));
    t
}

fn weyl_tasks() -> Vec<(String, Task)> {
    let counts = [1usize, 3, 6, 10, 16, 27, 56, 240];
    let mut t = Vec::new();
    for (i, &want) in counts.iter().enumerate() {
        let n = i + 1;
        t.push(task(format!("weyl.count.n{n}"), move |_| Ok(same(want, exceptional_classes(n)?.len()))));
    }
    t.push(task("weyl.histogram.n8", |_| {
        let mut h = [0usize; 7];
        for c in exceptional_classes(8)? {
            h[c.degree() as usize] += 1;
        }
        Ok(same([8, 28, 56, 56, 56, 28, 8], h))
    }));
    for n in 3..=8 {
        t.push(task(format!("weyl.oracle.n{n}"), move |_| {
            Ok(same(exceptional_classes(n)?.to_vec(), exceptional_classes_diophantine(n)?))
        }));
        t.push(task(format!("weyl.permutes.n{n}"), move |_| {
            let set = exceptional_classes(n)?;
            for r in Reflection::generators(n) {
                let mut img: Vec<CurveClass> = set.iter().map(|c| r.apply_curve(c)).collect::<Result<_>>()?;
                img.sort_by(CurveClass::canonical_cmp);
                if img != set {
                    return Ok(holds("reflections permute the set", false, format!("s{}", r.index())));
                }
            }
            Ok(holds("reflections permute the set", true, ""))
        }));
        t.push(task(format!("weyl.exceptional_invariants.n{n}"), move |_| {
            for c in exceptional_classes(n)? {
                if c.square() != -1 || c.canonical_degree() != -1 || !expected_genus(c).is_zero() || !satisfies_noether(c) {
                    return Ok(holds("C² = C·K = -1, genus 0, Noether", false, c));
                }
            }
            Ok(holds("C² = C·K = -1, genus 0, Noether", true, ""))
        }));
    }
    t.push(task("weyl.isometry.random", |s| {
        for _ in 0..300 {
            let n = 3 + s.below(7);
            let a = s.integral_class(n, 8)?;
            let b = s.integral_class(n, 8)?;
            let k = CurveClass::from_divisor(&canonical_class(n)?)?;
            let r = Reflection::new(1 + s.below(n), n)?;
            let (ra, rb) = (r.apply_curve(&a)?, r.apply_curve(&b)?);
            if ra.dot(&rb) != a.dot(&b) || r.apply_curve(&k)? != k || r.apply_curve(&ra)? != a {
                return Ok(holds("isometric involution fixing K", false, format!("s{} on {a}", r.index())));
            }
        }
        Ok(holds("isometric involution fixing K", true, ""))
    }));
    t
}

fn seshadri_table() -> Vec<Rational> {
    vec![ratio(1, 1), ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(2, 5), ratio(2, 5), ratio(3, 8), ratio(6, 17), ratio(1, 3)]
}

fn cones_tasks() -> Vec<(String, Task)> {
    let mut t = Vec::new();
    for (i, want) in seshadri_table().into_iter().enumerate() {
        let n = i + 1;
        t.push(task(format!("cones.seshadri.n{n}"), move |_| Ok(same(fr(&want), fr(&seshadri(n)?)))));
    }
    t.push(task("cones.samples.random", |s| {
        for _ in 0..60 {
            let n = s.below(9);
            let p = s.psef_class(n)?;
            let b = s.big_class(n)?;
            if !is_pseudoeffective(&p)? || !is_big(&b)? {
                return Ok(holds("sampled classes psef / big", false, format!("{p} / {b}")));
            }
            let neg = p.scale(&int(-1));
            if !p.is_zero() && is_pseudoeffective(&neg)? {
                return Ok(holds("cone is pointed", false, &p));
            }
        }
        Ok(holds("sampled classes psef / big", true, ""))
    }));
    t.push(task("cones.nef_pairs.random", |s| {
        // nef classes meet every generator nonnegatively, hence every psef class
        for _ in 0..40 {
            let n = 1 + s.below(8);
            let p = s.psef_class(n)?;
            let z = zariski_decompose(&s.psef_class(n)?)?;
            let nef = z.positive();
            if !is_nef(nef)? || intersect(nef, &p)?.is_negative() {
                return Ok(holds("P·D ≥ 0 for nef P, psef D", false, format!("{nef} · {p}")));
            }
        }
        Ok(holds("P·D ≥ 0 for nef P, psef D", true, ""))
    }));
    t.push(task("cones.lp_agrees.random", |s| {
        // the cone LP is slow but independent of the Zariski-based test
        for _ in 0..12 {
            let n = 1 + s.below(6);
            let d = s.rational_class(n, 3, 3)?;
            let lp = matches!(pseudoeffective_certificate(&d)?, PsefCertificate::Combination(_));
            if lp != is_pseudoeffective(&d)? {
                return Ok(holds("LP and Zariski psef tests agree", false, &d));
            }
        }
        Ok(holds("LP and Zariski psef tests agree", true, ""))
    }));
    t
}

/// `(name, failure)` for a decomposition, `None` when everything holds.
fn zariski_failure(d: &DivisorClass, shuffled: &[CurveClass]) -> Result<Option<String>> {
    let z = zariski_decompose(d)?;
    if let Err(e) = z.check_invariants() {
        return Ok(Some(format!("{d}: {e}")));
    }
    let again = zariski_decompose_with(d, shuffled)?;
    if again != z {
        return Ok(Some(format!("{d}: depends on candidate order")));
    }
    Ok(None)
}

fn zariski_tasks() -> Vec<(String, Task)> {
    let mut t = Vec::new();
    for n in 1..=8 {
        t.push(task(format!("zariski.random.n{n}"), move |s| {
            let mut cands: Vec<CurveClass> = cone_model(n)?.negative_curves().cloned().collect();
            for _ in 0..25 {
                let d = s.psef_class(n)?;
                s.shuffle(&mut cands);
                if let Some(f) = zariski_failure(&d, &cands)? {
                    return Ok(holds("Zariski invariants", false, f));
                }
            }
            Ok(holds("Zariski invariants", true, ""))
        }));
    }
    t.push(task("zariski.example.n2", |_| {
        let d = DivisorClass::new(ratio(1, 2), vec![ratio(1, 3), ratio(1, 3)])?;
        let z = zariski_decompose(&d)?;
        let coeffs: Vec<String> = z.negative().iter().map(|(_, x)| fr(x)).collect();
        Ok(same(vec!["1/6".to_string()], coeffs))
    }));
    t
}

fn quadrilateral(delta: Rational, eps_p: Rational) -> Polygon {
    let top = int(1) - &eps_p;
    Polygon::hull([Point::ints(0, 0), Point::new(delta, int(0)), Point::new(eps_p, top), Point::ints(0, 1)])
}

/// `(δ, ε′)` of the body of `e₀ − ⅓·Σ eᵢ` for `n = 1..=8`.
fn third_table() -> Vec<(Rational, Rational)> {
    vec![
        (ratio(2, 3), ratio(2, 3)),
        (ratio(2, 3), ratio(1, 3)),
        (ratio(1, 2), ratio(1, 3)),
        (ratio(1, 3), ratio(1, 3)),
        (ratio(1, 3), ratio(1, 6)),
        (ratio(1, 5), ratio(1, 6)),
        (ratio(1, 8), ratio(1, 9)),
        (ratio(1, 17), ratio(1, 18)),
    ]
}

fn okounkov_tasks() -> Vec<(String, Task)> {
    let mut t = Vec::new();
    for (i, (delta, eps_p)) in third_table().into_iter().enumerate() {
        let n = i + 1;
        t.push(task(format!("okounkov.third.n{n}"), move |_| {
            Ok(same(quadrilateral(delta.clone(), eps_p.clone()), line_body(n, &ratio(1, 3))?))
        }));
    }
    for n in 1..=8 {
        t.push(task(format!("okounkov.seshadri_triangle.n{n}"), move |_| {
            Ok(same(seshadri_body(n)?, line_body(n, &seshadri(n)?)?))
        }));
        t.push(task(format!("okounkov.rescale.n{n}"), move |s| {
            for _ in 0..4 {
                let (e, f) = s.epsilon_pair(n)?;
                let lhs = rescale(&line_body(n, &e)?, &(&f / &e))?;
                let rhs = line_body(n, &f)?;
                if lhs != rhs {
                    return Ok(same(rhs, lhs));
                }
            }
            Ok(holds("rescale law", true, ""))
        }));
        t.push(task(format!("okounkov.area.n{n}"), move |s| {
            for _ in 0..6 {
                let d = s.big_class(n)?;
                let data = body_data(&d)?;
                let vol = zariski_decompose(&d)?.volume();
                if int(2) * data.polygon.area() != vol || !data.beta.is_concave() {
                    return Ok(holds("2·area = vol, β concave", false, format!("{d}: {}", fr(&vol))));
                }
            }
            Ok(holds("2·area = vol, β concave", true, ""))
        }));
    }
    t.push(task("okounkov.dissection.third", |_| {
        let d = dissection(&ratio(1, 3))?;
        Ok(same((0..=9).collect::<Vec<usize>>(), d.iter().map(|(n, _)| *n).collect()))
    }));
    t.push(task("okounkov.line_mu", |_| {
        let d = body_data(&line_minus(8, &ratio(1, 3))?)?;
        Ok(same(ratio(1, 17), d.mu))
    }));
    t
}

fn tasks(suite: Suite) -> Vec<(String, Task)> {
    match suite {
        Suite::Exactlin => exactlin_tasks(),
        Suite::Lattice => lattice_tasks(),
        Suite::Weyl => weyl_tasks(),
        Suite::Cones => cones_tasks(),
        Suite::Zariski => zariski_tasks(),
        Suite::Okounkov => okounkov_tasks(),
        Suite::All => Suite::MODULES.into_iter().flat_map(tasks).collect(),
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> VerificationReport {
    let tasks = tasks(suite);
    let indexed: Vec<(u64, &(String, Task))> = (0u64..).zip(&tasks).collect();
    let checks = parallel::map(&indexed, |(i, (id, f))| {
        let mut sampler = Sampler::stream(seed, *i);
        let (status, expected, actual) = match f(&mut sampler) {
            Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.expected, o.actual),
            Err(e) => (Status::Fail, "no error".to_string(), format!("error: {e}")),
        };
        Check { id: id.clone(), status, expected, actual }
    });
    VerificationReport {
        suite: suite.name().to_string(),
        seed,
        checks,
    }
}
