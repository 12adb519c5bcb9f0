use log::warn;

use crate::error::{Error, Result};
use crate::exactlin::rational::{format_rational, int};
use crate::exactlin::Rational;
use crate::parallel;

use super::body::{body_l, line_body};
use super::polygon::Polygon;

/// Bodies of `e₀ − ε·Σ₁ⁿ eᵢ` for `n = 0..=9`, ordered by `n`, with the
/// nesting `Δ(n) ⊆ Δ(n−1)` checked between consecutive entries.
/// Entries whose class is not big (or, for `n = 9`, not reachable from
/// `ε₉ = 1/3`) are dropped with a warning.
pub fn dissection(epsilon: &Rational) -> Result<Vec<(usize, Polygon)>> {
    let ns: Vec<usize> = (0..=9).collect();
    let bodies = parallel::map(&ns, |&n| match n {
        9 => body_l(9, &int(1), epsilon),
        _ => line_body(n, epsilon),
    });
    let mut out = Vec::new();
    for (n, body) in ns.into_iter().zip(bodies) {
        match body {
            Ok(p) => out.push((n, p)),
            Err(e @ (Error::NotBig | Error::Unsupported(_))) => {
                warn!("dropping n = {n} at eps = {}: {e}", format_rational(epsilon));
            }
            Err(e) => return Err(e),
        }
    }
    for pair in out.windows(2) {
        let ((n0, outer), (n1, inner)) = (&pair[0], &pair[1]);
        if !outer.contains(inner) {
            return Err(Error::InvariantViolation(format!(
                "body for n = {n1} is not contained in the body for n = {n0}"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::ratio;
    use crate::okounkov::polygon::Point;

    #[test]
    fn one_third_gives_ten_nested_bodies() {
        let d = dissection(&ratio(1, 3)).unwrap();
        assert_eq!(d.iter().map(|(n, _)| *n).collect::<Vec<_>>(), (0..=9).collect::<Vec<_>>());
        assert_eq!(d[0].1, Polygon::unit_simplex());
        assert_eq!(d[9].1, Polygon::hull([Point::ints(0, 0), Point::ints(0, 1)]));
        assert!(d[4].1.contains(&d[5].1));
    }

    #[test]
    fn zero_gives_unit_triangles() {
        let d = dissection(&ratio(0, 1)).unwrap();
        assert_eq!(d.len(), 10);
        assert!(d.iter().all(|(_, p)| *p == Polygon::unit_simplex()));
    }

    #[test]
    fn large_epsilon_drops_entries() {
        let d = dissection(&ratio(1, 2)).unwrap();
        let ns: Vec<usize> = d.iter().map(|(n, _)| *n).collect();
        // e₀ − ½Σeᵢ is nef of volume zero at n = 4 and not big beyond
        assert_eq!(ns, vec![0, 1, 2, 3, 4]);
        assert_eq!(d[4].1, Polygon::hull([Point::ints(0, 0), Point::ints(0, 1)]));
    }
}
