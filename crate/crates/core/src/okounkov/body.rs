//! Okounkov bodies for the flag (very general line, very general point on it).
//!
//! For `D_t = D − t·e₀` with Zariski decomposition `P_t + N_t`, the body is
//! `{(t, y) : 0 ≤ t ≤ μ, 0 ≤ y ≤ β(t)}` with `β(t) = e₀·P_t`. The lower
//! boundary is identically zero: the flag point avoids every negative curve
//! and `e₀² = 1` keeps the line itself out of every negative part.
//!
//! `β` is computed by walking the Zariski chambers crossed by the ray.
//! At each event `t` the decomposition of the germ `D_t − η·e₀` gives the
//! support valid just to the right of `t` together with the affine law of
//! `P` on that chamber; the next event is the first parameter where a
//! generator outside the support would be met negatively or a coefficient
//! would drop to zero.

use num_traits::{Signed, Zero};

use crate::cones::{cone_model, is_big, is_nef, line_minus, seshadri};
use crate::error::{Error, Result};
use crate::exactlin::rational::{int, ratio};
use crate::exactlin::Rational;
use crate::lattice::{intersect, CurveClass, DivisorClass, ScaledClass};
use crate::zariski::{decompose_germ, zariski_decompose_with};

use super::nagata::nagata_strip;
use super::pl::PiecewiseLinearFn;
use super::polygon::{Point, Polygon};

const MAX_CHAMBERS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub start: Rational,
    pub end: Rational,
    /// Negative support on the open interval `(start, end)`.
    pub support: Vec<CurveClass>,
}

#[derive(Clone, Debug)]
pub struct BodyData {
    pub class: DivisorClass,
    pub mu: Rational,
    pub beta: PiecewiseLinearFn,
    pub chambers: Vec<Chamber>,
    pub polygon: Polygon,
}

/// What to compute a body for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BodyRequest {
    Class(DivisorClass),
    /// `L_{n,d,m} = d·e₀ − m·Σ eᵢ`.
    Symmetric { n: usize, d: Rational, m: Rational },
}

pub fn okounkov_body(req: &BodyRequest) -> Result<Polygon> {
    match req {
        BodyRequest::Class(d) => Ok(body_data(d)?.polygon),
        BodyRequest::Symmetric { n, d, m } => body_l(*n, d, m),
    }
}

/// `√r` when it is rational.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (p, q) = (r.numer().sqrt(), r.denom().sqrt());
    (&p * &p == *r.numer() && &q * &q == *r.denom()).then(|| Rational::new(p, q))
}

/// First `u` in `(0, limit]` (unbounded without a limit) where
/// `a + 2b·u + c·u²` vanishes, given `a > 0`.
fn first_zero(a: &Rational, b: &Rational, c: &Rational, limit: Option<&Rational>) -> Result<Option<Rational>> {
    let f = |u: &Rational| a + int(2) * b * u + c * u * u;
    let positive_roots: Vec<Rational> = if c.is_zero() {
        if b.is_negative() {
            vec![-a / (int(2) * b)]
        } else {
            vec![]
        }
    } else {
        let disc = b * b - a * c;
        if disc.is_negative() {
            vec![]
        } else if let Some(root) = rational_sqrt(&disc) {
            let mut rs: Vec<Rational> = [(-b - &root) / c, (-b + root) / c]
                .into_iter()
                .filter(|u| u.is_positive())
                .collect();
            rs.sort();
            rs
        } else {
            // both zeros are irrational, so neither can be the (rational) end of the walk
            let vertex = -b / c;
            let dips = vertex.is_positive() && limit.is_none_or(|l| &vertex < l) && !f(&vertex).is_positive();
            let crosses = match limit {
                Some(l) => !f(l).is_positive(),
                None => c.is_negative(),
            };
            if dips || crosses {
                return Err(Error::InvariantViolation("volume vanishes at an irrational parameter".into()));
            }
            vec![]
        }
    };
    Ok(positive_roots.into_iter().find(|u| limit.is_none_or(|l| u <= l)))
}

/// Runs the chamber walk for a big class with `n ≤ 8`.
///
/// `μ` is found by the walk itself, as the first zero of the volume `P_t²`
/// (the class is big exactly while the volume is positive).
pub fn body_data(d: &DivisorClass) -> Result<BodyData> {
    let n = d.n();
    if n == 9 {
        return Err(Error::RequiresSeshadriPipeline);
    }
    let cone = cone_model(n)?;
    if !is_big(d)? {
        return Err(Error::NotBig);
    }
    let e0 = DivisorClass::basis(n, 0)?;
    let down = e0.scale(&int(-1));
    let candidates: Vec<CurveClass> = cone.negative_curves().cloned().collect();

    let mut points: Vec<(Rational, Rational)> = Vec::new();
    let mut chambers = Vec::new();
    let mut t = Rational::zero();
    let (mu, predicted_at_mu) = loop {
        if chambers.len() >= MAX_CHAMBERS {
            return Err(Error::InvariantViolation("chamber walk does not terminate".into()));
        }
        let dt = d.add_scaled(&-t.clone(), &e0)?;
        let germ = decompose_germ(&dt, &down, &candidates)?
            .ok_or_else(|| Error::InvariantViolation(format!("walk left the pseudo-effective cone at t = {t}")))?;
        if germ.support.iter().any(|c| c.square() >= 0) {
            return Err(Error::InvariantViolation("flag line entered a negative part".into()));
        }
        // β(t) = e₀·P_t is the degree coefficient of P_t
        points.push((t.clone(), germ.positive.degree().clone()));

        let mut step: Option<Rational> = None;
        let mut consider = |root: Rational| {
            if step.as_ref().is_none_or(|s| root < *s) {
                step = Some(root);
            }
        };
        let (pos_s, slope_s) = (ScaledClass::new(&germ.positive), ScaledClass::new(&germ.positive_slope));
        for g in cone.generators() {
            if !slope_s.scaled_dot(g).is_negative() || germ.support.contains(g) {
                continue;
            }
            consider(pos_s.dot(g) / -slope_s.dot(g));
        }
        for x in &germ.coeffs {
            if x.h.is_negative() {
                consider(&x.v / -&x.h);
            }
        }
        let (p, s) = (&germ.positive, &germ.positive_slope);
        let zero = first_zero(&p.square(), &intersect(p, s)?, &s.square(), step.as_ref())?;
        let (len, last) = match (zero, step) {
            (Some(u), _) => (u, true),
            (None, Some(w)) => (w, false),
            (None, None) => return Err(Error::InvariantViolation(format!("volume never vanishes past t = {t}"))),
        };
        if len.is_zero() {
            return Err(Error::InvariantViolation(format!("zero-length chamber at t = {t}")));
        }
        let next = &t + &len;

        // re-derive the decomposition at the midpoint from scratch
        let mid = (&t + &next) / int(2);
        let direct = zariski_decompose_with(&d.add_scaled(&-mid.clone(), &e0)?, &candidates)?;
        let predicted = p.add_scaled(&(&mid - &t), s)?;
        if direct.positive() != &predicted {
            return Err(Error::InvariantViolation(format!(
                "affine chamber law broke inside ({t}, {next})"
            )));
        }
        chambers.push(Chamber {
            start: t.clone(),
            end: next.clone(),
            support: direct.support().curves,
        });
        if last {
            break (next, p.add_scaled(&len, s)?);
        }
        t = next;
    };
    let at_mu = zariski_decompose_with(&d.add_scaled(&-mu.clone(), &e0)?, &candidates)?;
    if at_mu.positive() != &predicted_at_mu || !at_mu.volume().is_zero() {
        return Err(Error::InvariantViolation("decomposition at μ disagrees with the walk".into()));
    }
    let beta_mu = at_mu.positive().degree().clone();
    if beta_mu.is_negative() {
        return Err(Error::InvariantViolation("negative β at μ".into()));
    }
    points.push((mu.clone(), beta_mu));

    let beta = PiecewiseLinearFn::new(points)?;
    if !beta.is_concave() {
        return Err(Error::InvariantViolation(format!("β is not concave for {d}")));
    }
    let polygon = Polygon::hull(
        [Point::ints(0, 0), Point::new(mu.clone(), Rational::zero())]
            .into_iter()
            .chain(
                beta.breakpoints()
                    .iter()
                    .zip(beta.values())
                    .map(|(t, v)| Point::new(t.clone(), v.clone())),
            ),
    );
    Ok(BodyData {
        class: d.clone(),
        mu,
        beta,
        chambers,
        polygon,
    })
}

/// Body of `e₀ − ε·Σ eᵢ` for `n ≤ 8`. At a nef class of volume zero
/// (`ε = εₙ` for `n = 1, 4`) this is the limiting segment `(0,0)–(0,1)`.
pub fn line_body(n: usize, epsilon: &Rational) -> Result<Polygon> {
    let d = line_minus(n, epsilon)?;
    if n <= 8 && d.square().is_zero() && is_nef(&d)? {
        return Ok(Polygon::hull([Point::ints(0, 0), Point::ints(0, 1)]));
    }
    Ok(body_data(&d)?.polygon)
}

/// Triangle with corners `(0,0)`, `(D²,0)`, `(0,1)` for `D = e₀ − εₙ·Σ eᵢ`;
/// a segment when `D² = 0`.
pub fn seshadri_body(n: usize) -> Result<Polygon> {
    let eps = seshadri(n)?;
    let vol = int(1) - int(n as i64) * &eps * &eps;
    Ok(Polygon::hull([Point::ints(0, 0), Point::new(vol, Rational::zero()), Point::ints(0, 1)]))
}

/// `φ_r(x, y) = r·(x − 1, y) + (1, 0)`, followed by clipping to the unit simplex.
pub fn rescale(body: &Polygon, r: &Rational) -> Result<Polygon> {
    if !r.is_positive() {
        return Err(Error::out_of_range("rescale factor", r));
    }
    let image = body.map(|p| Point::new(r * (&p.x - int(1)) + int(1), r * &p.y));
    Ok(image.intersect(&Polygon::unit_simplex()))
}

/// Body of `L_{n,d,m} = d·e₀ − m·Σ eᵢ`.
///
/// For `n ≤ 8` this is `d` times the body of `e₀ − (m/d)·Σ eᵢ`. For `n = 9`
/// it comes from `ε₉ = 1/3`: the Seshadri segment rescaled for `m/d ≥ 1/3`,
/// and the (certified) vertical strip for `m/d < 1/3`.
pub fn body_l(n: usize, d: &Rational, m: &Rational) -> Result<Polygon> {
    if !d.is_positive() {
        return Err(Error::out_of_range("d", d));
    }
    let eps = m / d;
    match n {
        0..=8 => Ok(line_body(n, &eps)?.scale(d)),
        9 => {
            if m.is_negative() {
                return Err(Error::Unsupported("n = 9 needs m >= 0".into()));
            }
            let third = ratio(1, 3);
            if eps < third {
                return nagata_strip(9, d, m)?
                    .to_rational()
                    .ok_or_else(|| Error::InvariantViolation("n = 9 strip is not rational".into()));
            }
            let unit = rescale(&seshadri_body(9)?, &(&eps / &third))?;
            if unit.is_empty() {
                return Err(Error::NotBig);
            }
            Ok(unit.scale(d))
        }
        _ => Err(Error::out_of_range("n", n)),
    }
}
