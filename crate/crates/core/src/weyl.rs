//! The Weyl group `Wₙ` on the Picard lattice: simple reflections, orbit
//! closure, Cremona reduction and the exceptional-class lists built on them.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactlin::Rational;
use crate::lattice::{CurveClass, DivisorClass};
use crate::parallel;

pub const DEFAULT_ORBIT_BOUND: usize = 10_000;

/// Simple reflection `s_index` of `Wₙ`. For `index < n` it swaps `e_index`
/// and `e_{index+1}`; `s_n` is the quadratic Cremona reflection on the
/// first three points.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reflection {
    index: usize,
    n: usize,
}

impl Reflection {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        if index == 0 || index > n {
            return Err(Error::out_of_range("reflection index", index));
        }
        if index == n && n < 3 {
            return Err(Error::CremonaUndefined { n });
        }
        Ok(Self { index, n })
    }

    /// `s₁, …, sₙ` (without `sₙ` when `n < 3`).
    pub fn generators(n: usize) -> Vec<Reflection> {
        (1..=n).filter_map(|i| Reflection::new(i, n).ok()).collect()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_cremona(&self) -> bool {
        self.index == self.n
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }

    pub fn apply(&self, c: &DivisorClass) -> Result<DivisorClass> {
        self.check(c.n())?;
        let mut m = c.multiplicities().to_vec();
        let d = c.degree().clone();
        if self.is_cremona() {
            let s: Rational = &m[0] + &m[1] + &m[2];
            let d2: Rational = &d + &d - &s;
            let (m1, m2, m3) = (m[0].clone(), m[1].clone(), m[2].clone());
            m[0] = &d - &m2 - &m3;
            m[1] = &d - &m1 - &m3;
            m[2] = &d - &m1 - &m2;
            DivisorClass::new(d2, m)
        } else {
            m.swap(self.index - 1, self.index);
            DivisorClass::new(d, m)
        }
    }

    pub fn apply_curve(&self, c: &CurveClass) -> Result<CurveClass> {
        self.check(c.n())?;
        let mut out = c.clone();
        if self.is_cremona() {
            let d = c.degree();
            let m = c.multiplicities();
            let (m1, m2, m3) = (m[0], m[1], m[2]);
            out.set_degree(2 * d - m1 - m2 - m3);
            let mm = out.multiplicities_mut();
            mm[0] = d - m2 - m3;
            mm[1] = d - m1 - m3;
            mm[2] = d - m1 - m2;
        } else {
            out.multiplicities_mut().swap(self.index - 1, self.index);
        }
        Ok(out)
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.index)
    }
}

impl fmt::Debug for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct OrbitResult {
    pub seed: CurveClass,
    /// Canonically sorted.
    pub elements: Vec<CurveClass>,
    /// A word `[i₁, …, i_k]` with `s_{i_k} ⋯ s_{i₁}(seed) = element`.
    pub words: BTreeMap<CurveClass, Vec<usize>>,
}

/// Breadth-first closure of `seed` under the simple reflections.
pub fn orbit(seed: &CurveClass, max_size: usize) -> Result<OrbitResult> {
    let gens = Reflection::generators(seed.n());
    let mut words: HashMap<CurveClass, Vec<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    words.insert(seed.clone(), Vec::new());
    queue.push_back(seed.clone());
    while let Some(c) = queue.pop_front() {
        for s in &gens {
            let image = s.apply_curve(&c)?;
            if words.contains_key(&image) {
                continue;
            }
            if words.len() >= max_size {
                return Err(Error::OrbitBoundExceeded { bound: max_size });
            }
            let mut w = words[&c].clone();
            w.push(s.index());
            words.insert(image.clone(), w);
            queue.push_back(image);
        }
    }
    let mut elements: Vec<CurveClass> = words.keys().cloned().collect();
    elements.sort_by(CurveClass::canonical_cmp);
    Ok(OrbitResult {
        seed: seed.clone(),
        elements,
        words: words.into_iter().collect(),
    })
}

fn check_exceptional_range(n: usize) -> Result<()> {
    if !(1..=8).contains(&n) {
        return Err(Error::out_of_range("n (exceptional classes need 1..=8)", n));
    }
    Ok(())
}

fn compute_exceptional(n: usize) -> Result<Vec<CurveClass>> {
    let mut out = match n {
        1 => vec![CurveClass::basis(1, 1)?],
        2 => vec![
            CurveClass::basis(2, 1)?,
            CurveClass::basis(2, 2)?,
            CurveClass::new(1, vec![1, 1])?,
        ],
        _ => orbit(&CurveClass::basis(n, n)?, DEFAULT_ORBIT_BOUND)?.elements,
    };
    out.sort_by(CurveClass::canonical_cmp);
    Ok(out)
}

/// All classes of exceptional curves of the first kind on `Xₙ`, `1 ≤ n ≤ 8`,
/// canonically sorted. Computed once per `n`.
pub fn exceptional_classes(n: usize) -> Result<&'static [CurveClass]> {
    static CACHE: [OnceLock<Vec<CurveClass>>; 9] = [const { OnceLock::new() }; 9];
    check_exceptional_range(n)?;
    if let Some(v) = CACHE[n].get() {
        return Ok(v);
    }
    let v = compute_exceptional(n)?;
    Ok(CACHE[n].get_or_init(|| v))
}

/// Independent enumeration of integral `(d; m)` with `C² = −1`, `C·k = −1`,
/// `0 ≤ d ≤ 6`, `−1 ≤ mᵢ ≤ d`.
pub fn exceptional_classes_diophantine(n: usize) -> Result<Vec<CurveClass>> {
    check_exceptional_range(n)?;
    let degrees: Vec<i64> = (0..=6).collect();
    let per_degree = parallel::map(&degrees, |&d| {
        let mut found = Vec::new();
        let mut m = Vec::with_capacity(n);
        // Σm = 3d − 1 and Σm² = d² + 1
        enumerate(n, d, 3 * d - 1, d * d + 1, &mut m, &mut found);
        found
    });
    let mut out: Vec<CurveClass> = per_degree
        .into_iter()
        .flatten()
        .map(|(d, m)| CurveClass::new(d, m))
        .collect::<Result<_>>()?;
    out.sort_by(CurveClass::canonical_cmp);
    Ok(out)
}

fn enumerate(
    n: usize,
    d: i64,
    sum: i64,
    squares: i64,
    m: &mut Vec<i64>,
    out: &mut Vec<(i64, Vec<i64>)>,
) {
    let left = (n - m.len()) as i64;
    if left == 0 {
        if sum == 0 && squares == 0 {
            out.push((d, m.clone()));
        }
        return;
    }
    // values lie in [-1, d]; Cauchy–Schwarz bounds the remaining sum
    if squares < 0 || sum > left * d || sum < -left || sum * sum > left * squares {
        return;
    }
    for v in -1..=d {
        m.push(v);
        enumerate(n, d, sum - v, squares - v * v, m, out);
        m.pop();
    }
}

/// Sorts multiplicities descending with `s₁…s_{n−1}` and applies `sₙ`
/// while `d < m₁ + m₂ + m₃` (and the new degree stays nonnegative).
/// Each Cremona step strictly lowers `d`.
pub fn cremona_reduce(c: &CurveClass) -> Result<(CurveClass, Vec<Reflection>)> {
    let n = c.n();
    if n < 3 {
        return Err(Error::CremonaUndefined { n });
    }
    let mut cur = c.clone();
    let mut word = Vec::new();
    let cremona = Reflection::new(n, n)?;
    loop {
        // bubble sort by adjacent transpositions
        let mut swapped = true;
        while swapped {
            swapped = false;
            for i in 1..n {
                let m = cur.multiplicities();
                if m[i - 1] < m[i] {
                    let s = Reflection::new(i, n)?;
                    cur = s.apply_curve(&cur)?;
                    word.push(s);
                    swapped = true;
                }
            }
        }
        let m = cur.multiplicities();
        let top = m[0] + m[1] + m[2];
        let d = cur.degree();
        if top > d && 2 * d - top >= 0 {
            cur = cremona.apply_curve(&cur)?;
            word.push(cremona);
        } else {
            return Ok((cur, word));
        }
    }
}

/// Noether's inequality `d < m₁ + m₂ + m₃` on the sorted, zero-padded
/// multiplicities. Vacuously true with fewer than two positive entries.
pub fn satisfies_noether(c: &CurveClass) -> bool {
    let mut m = c.multiplicities().to_vec();
    if m.iter().filter(|&&x| x > 0).count() < 2 {
        return true;
    }
    m.sort_unstable_by(|a, b| b.cmp(a));
    m.resize(m.len().max(3), 0);
    c.degree() < m[0] + m[1] + m[2]
}
