use std::collections::BTreeMap;
use std::fmt::Write as _;

use okb_core::cones::{ample_failure, is_big, nef_violation, pseudoeffective_certificate, seshadri as seshadri_constant, AmpleFailure, PsefCertificate};
use okb_core::exactlin::rational::format_rational;
use okb_core::figure::{emit_figure, FigureFormat};
use okb_core::okounkov::{body_data, dissection, nagata_strip, okounkov_body, BodyRequest, Polygon, PolygonRecord};
use okb_core::verify::{run_suite, Suite};
use okb_core::weyl::{exceptional_classes, exceptional_classes_diophantine};
use okb_core::{intersect, zariski_decompose, DivisorClass, Error, Rational, Result};
use serde_json::{json, Value};

use crate::{Format, Property};

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }

    fn json(v: &Value) -> Self {
        Self::ok(format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")))
    }
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

pub fn class_for(n: usize, s: &str) -> Result<DivisorClass> {
    let d = DivisorClass::parse(s)?;
    if d.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: d.n() });
    }
    Ok(d)
}

pub fn curves(n: usize, histogram: bool, oracle: bool, json: bool) -> Result<Output> {
    let classes = exceptional_classes(n)?;
    let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
    for c in classes {
        *hist.entry(c.degree()).or_default() += 1;
    }
    let matches = if oracle {
        Some(exceptional_classes_diophantine(n)? == classes)
    } else {
        None
    };
    let code = if matches == Some(false) { 1 } else { 0 };
    if json {
        let mut v = json!({
            "n": n,
            "count": classes.len(),
            "classes": classes.iter().map(|c| c.to_divisor()).collect::<Vec<_>>(),
        });
        if histogram {
            v["histogram"] = json!(hist.iter().map(|(d, k)| (d.to_string(), *k)).collect::<BTreeMap<_, _>>());
        }
        if let Some(m) = matches {
            v["oracle_match"] = json!(m);
        }
        let mut out = Output::json(&v);
        out.code = code;
        return Ok(out);
    }
    let mut text = String::new();
    if histogram {
        for (d, k) in &hist {
            let _ = writeln!(text, "degree {d}: {k}");
        }
    } else {
        for c in classes {
            let _ = writeln!(text, "{c}");
        }
    }
    let _ = writeln!(text, "total: {}", classes.len());
    if let Some(m) = matches {
        let _ = writeln!(text, "oracle: {}", if m { "match" } else { "MISMATCH" });
    }
    Ok(Output { text, code })
}

pub fn seshadri(n: usize, json: bool) -> Result<Output> {
    let e = seshadri_constant(n)?;
    Ok(if json {
        Output::json(&json!({"n": n, "seshadri": r(&e)}))
    } else {
        Output::ok(format!("{}\n", r(&e)))
    })
}

pub fn test(d: &DivisorClass, prop: Property, json: bool) -> Result<Output> {
    let (name, holds, certificate) = match prop {
        Property::Psef => match pseudoeffective_certificate(d)? {
            PsefCertificate::Combination(terms) => {
                let parts: Vec<String> = terms.iter().map(|(c, w)| format!("{}*{}", r(w), c)).collect();
                let cert = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                ("psef", true, format!("D = {cert}"))
            }
            PsefCertificate::Separator(sep) => {
                let v = intersect(&sep, d)?;
                ("psef", false, format!("nef class {sep} has {sep}·D = {}", r(&v)))
            }
        },
        Property::Nef => match nef_violation(d)? {
            None => ("nef", true, "D·C >= 0 for every extremal effective class".to_string()),
            Some(c) => {
                let v = intersect(&c.to_divisor(), d)?;
                ("nef", false, format!("{c}·D = {}", r(&v)))
            }
        },
        Property::Big => {
            let big = is_big(d)?;
            let cert = if big {
                let z = zariski_decompose(d)?;
                format!("vol = P² = {}", r(&z.volume()))
            } else {
                match pseudoeffective_certificate(d)? {
                    PsefCertificate::Separator(sep) => format!("not psef: nef class {sep}"),
                    PsefCertificate::Combination(_) => {
                        format!("vol = P² = {}", r(&zariski_decompose(d)?.volume()))
                    }
                }
            };
            ("big", big, cert)
        }
        Property::Ample => match ample_failure(d)? {
            None => ("ample", true, format!("D² = {} > 0 and D·C > 0 for every extremal class", r(&d.square()))),
            Some(AmpleFailure::NonPositiveSquare(s)) => ("ample", false, format!("D² = {}", r(&s))),
            Some(AmpleFailure::Orthogonal(c, v)) => ("ample", false, format!("{c}·D = {}", r(&v))),
        },
    };
    Ok(if json {
        Output::json(&json!({"class": d, "property": name, "holds": holds, "certificate": certificate}))
    } else {
        Output::ok(format!("{name}: {holds}\n{certificate}\n"))
    })
}

pub fn zariski(d: &DivisorClass, json: bool) -> Result<Output> {
    let z = zariski_decompose(d)?;
    z.check_invariants()?;
    if json {
        let mut v = z.to_json();
        v["volume"] = json!(r(&z.volume()));
        return Ok(Output::json(&v));
    }
    let mut text = format!("D = {}\nP = {}\n", z.input(), z.positive());
    if z.negative().is_empty() {
        text.push_str("N = 0\n");
    }
    for (c, x) in z.negative() {
        let _ = writeln!(text, "N += {} * {}", r(x), c);
    }
    let _ = writeln!(text, "vol = {}", r(&z.volume()));
    Ok(Output::ok(text))
}

fn polygon_text(p: &Polygon) -> String {
    let vs: Vec<String> = p.vertices().iter().map(|v| format!("({}, {})", r(&v.x), r(&v.y))).collect();
    format!("vertices: {}\narea: {}\n", vs.join(" "), r(&p.area()))
}

pub fn body_class(d: &DivisorClass, json: bool) -> Result<Output> {
    let data = body_data(d)?;
    if json {
        return Ok(Output::json(&serde_json::to_value(PolygonRecord::new(d.n(), &data.polygon)).expect("serializable")));
    }
    let mut text = polygon_text(&data.polygon);
    let _ = writeln!(text, "mu: {}", r(&data.mu));
    for c in &data.chambers {
        let sup: Vec<String> = c.support.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(text, "chamber [{}, {}]: {{{}}}", r(&c.start), r(&c.end), sup.join(", "));
    }
    Ok(Output::ok(text))
}

pub fn body_symmetric(n: usize, d: &Rational, m: &Rational, json: bool) -> Result<Output> {
    let p = okounkov_body(&BodyRequest::Symmetric { n, d: d.clone(), m: m.clone() })?;
    Ok(if json {
        Output::json(&serde_json::to_value(PolygonRecord::new(n, &p)).expect("serializable"))
    } else {
        Output::ok(polygon_text(&p))
    })
}

pub fn dissect(eps: &Rational, format: Format, scale: f64) -> Result<Output> {
    let bodies = dissection(eps)?;
    Ok(match format {
        Format::Json => {
            let records: Vec<PolygonRecord> = bodies.iter().map(|(n, p)| PolygonRecord::new(*n, p)).collect();
            Output::json(&serde_json::to_value(records).expect("serializable"))
        }
        Format::Text => {
            let mut text = String::new();
            for (n, p) in &bodies {
                let _ = write!(text, "n = {n}\n{}", polygon_text(p));
            }
            Output::ok(text)
        }
        Format::Svg => Output::ok(emit_figure(&bodies, FigureFormat::Svg, scale)),
        Format::Tikz => Output::ok(emit_figure(&bodies, FigureFormat::Tikz, scale)),
    })
}

pub fn nagata(n: usize, d: &Rational, m: &Rational, json: bool) -> Result<Output> {
    let s = nagata_strip(n, d, m)?;
    if json {
        return Ok(Output::json(&serde_json::to_value(&s).expect("serializable")));
    }
    let vs: Vec<String> = s.vertices.iter().map(|v| format!("({}, {})", v.x, v.y)).collect();
    Ok(Output::ok(format!("vertices: {}\nconjectural: {}\n", vs.join(" "), s.conjectural)))
}

pub fn verify(suite: &Suite, seed: u64, json: bool) -> Result<Output> {
    let report = run_suite(*suite, seed);
    let code = if report.passed() { 0 } else { 1 };
    let text = if json {
        format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"))
    } else {
        format!("{report}\n")
    };
    Ok(Output { text, code })
}
