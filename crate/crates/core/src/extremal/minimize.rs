//! Minimising `omega = m1 m2 n1 n2` over two-block staircases with a fixed
//! edge count `m1 n1 + m1 n2 + m2 n1 = e`. For a chain graph with two
//! distinct degrees `r1 > r2` (multiplicities `m1`, `m2`) one has
//! `n1 = r2`, `n2 = r1 - r2`, and the smaller `omega` is, the larger
//! `lambda_max` becomes.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::One;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::Rational;

/// `(m1, m2, n1, n2)`: row-block sizes and column-block sizes of an `h = 2` staircase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBlockProfile<T> {
    pub m1: T,
    pub m2: T,
    pub n1: T,
    pub n2: T,
}

impl<T: Copy + Add<Output = T> + Mul<Output = T>> TwoBlockProfile<T> {
    pub fn new(m1: T, m2: T, n1: T, n2: T) -> Self {
        Self { m1, m2, n1, n2 }
    }

    /// `m1 n1 + m1 n2 + m2 n1`.
    pub fn edges(&self) -> T {
        self.m1 * self.n1 + self.m1 * self.n2 + self.m2 * self.n1
    }

    pub fn omega(&self) -> T {
        self.m1 * self.m2 * self.n1 * self.n2
    }

    /// Exchanges the roles of the two sides.
    pub fn swap(&self) -> Self {
        Self {
            m1: self.n1,
            m2: self.n2,
            n1: self.m1,
            n2: self.m2,
        }
    }
}

impl<T: fmt::Display> fmt::Display for TwoBlockProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),({},{}))", self.m1, self.m2, self.n1, self.n2)
    }
}

impl<T: fmt::Display> Serialize for TwoBlockProfile<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which end of the segment `ax + by = e` minimises `xy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AuxBoundary {
    /// `x = 1`, when `a < b`.
    XIsOne,
    /// `y = 1`, when `b < a`.
    YIsOne,
    /// Either end, when `a = b`.
    Either,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuxMin {
    pub value: f64,
    pub x: f64,
    pub y: f64,
    pub boundary: AuxBoundary,
}

/// Minimum of `xy` over `ax + by = e`, `x >= 1`, `y >= 1`.
///
/// `xy` restricted to the segment is a concave parabola, so the minimum sits
/// at an endpoint: `(e - a) / b` at `x = 1` or `(e - b) / a` at `y = 1`.
pub fn auxmin(a: f64, b: f64, e: f64) -> Result<AuxMin> {
    if !(a > 0.0 && b > 0.0 && e > 0.0) {
        return invalid("auxmin needs positive a, b, e");
    }
    if e <= a + b {
        return invalid(format!("auxmin needs e > a + b, got e={e}, a+b={}", a + b));
    }
    let at_x1 = (e - a) / b;
    let at_y1 = (e - b) / a;
    Ok(if a < b {
        AuxMin {
            value: at_x1,
            x: 1.0,
            y: at_x1,
            boundary: AuxBoundary::XIsOne,
        }
    } else if b < a {
        AuxMin {
            value: at_y1,
            x: at_y1,
            y: 1.0,
            boundary: AuxBoundary::YIsOne,
        }
    } else {
        AuxMin {
            value: at_x1,
            x: 1.0,
            y: at_x1,
            boundary: AuxBoundary::Either,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuousMin {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub solutions: Vec<TwoBlockProfile<Rational>>,
    /// Closed-form candidates that failed substitution into the edge identity.
    pub rejected: Vec<TwoBlockProfile<Rational>>,
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    x: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Real minimum of `omega` subject to the edge identity, all blocks `>= 1`,
/// `m1 + m2 >= r` and `n1 + n2 >= r`: `(r-1)(e-r+1)/r`, for `e >= r^2 + 1`.
///
/// The minimisers are `(m1,m2) = (r-1,1), (n1,n2) = ((e-r+1)/r, 1)` and its
/// side swap. Each closed-form candidate is substituted back before being returned.
pub fn min_omega_continuous(r: usize, e: usize) -> Result<ContinuousMin> {
    if r < 2 {
        return invalid("r must be at least 2");
    }
    if e < r * r + 1 {
        return Err(Error::OutOfHypothesis(format!(
            "need e >= r^2 + 1 = {}, got {e}",
            r * r + 1
        )));
    }
    let (ri, ei) = (r as i128, e as i128);
    let one = Rational::one();
    let rq = Rational::from_integer(ri);
    let n1 = Rational::new(ei - ri + 1, ri);
    let value = Rational::new((ri - 1) * (ei - ri + 1), ri);
    let target = Rational::from_integer(ei);

    let first = TwoBlockProfile::new(rq - one, one, n1, one);
    let candidates = [
        first,
        first.swap(),
        // variant with (n1, n2) = (r, 1) for the swapped solution
        TwoBlockProfile::new(n1, one, rq, one),
    ];
    let (mut solutions, mut rejected) = (Vec::new(), Vec::new());
    for c in candidates {
        let feasible = c.edges() == target
            && c.m1 + c.m2 >= rq
            && c.n1 + c.n2 >= rq
            && [c.m1, c.m2, c.n1, c.n2].iter().all(|&x| x >= one);
        if feasible && c.omega() == value {
            solutions.push(c);
        } else {
            rejected.push(c);
        }
    }
    Ok(ContinuousMin {
        value,
        solutions,
        rejected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerMin {
    pub value: u64,
    pub argmins: Vec<TwoBlockProfile<u64>>,
}

/// Exhaustive integer minimum of `m1 m2 n1 n2` subject to the edge identity,
/// `m1 + m2 <= p`, `n1 + n2 <= q`, `m1 + m2 >= r`, `n1 + n2 >= r`.
///
/// `n1` is solved from the edge identity for each `(m1, m2, n2)`. Argmins are
/// returned in lexicographic order.
pub fn min_omega_integer(e: u64, r: u64, p: u64, q: u64) -> Result<IntegerMin> {
    if p < 2 || p > q {
        return invalid(format!("need 2 <= p <= q, got p={p}, q={q}"));
    }
    if e < 3 || e >= p * q {
        return invalid(format!("need 3 <= e < pq = {}, got e={e}", p * q));
    }
    let mut best: Option<u64> = None;
    let mut argmins = Vec::new();
    for m1 in 1..p {
        for m2 in 1..=p - m1 {
            if m1 + m2 < r {
                continue;
            }
            for n2 in 1..q {
                if m1 * n2 >= e {
                    break;
                }
                let rest = e - m1 * n2;
                if !rest.is_multiple_of(m1 + m2) {
                    continue;
                }
                let n1 = rest / (m1 + m2);
                if n1 == 0 || n1 + n2 > q || n1 + n2 < r {
                    continue;
                }
                let cand = TwoBlockProfile::new(m1, m2, n1, n2);
                debug_assert_eq!(cand.edges(), e);
                let w = cand.omega();
                match best {
                    Some(b) if w > b => {}
                    Some(b) if w == b => argmins.push(cand),
                    _ => {
                        best = Some(w);
                        argmins = vec![cand];
                    }
                }
            }
        }
    }
    let value = best.ok_or_else(|| {
        Error::EmptyFeasible(format!("no (m1,m2,n1,n2) for e={e}, r={r}, p={p}, q={q}"))
    })?;
    argmins.sort();
    Ok(IntegerMin { value, argmins })
}

/// The `e = 3k + 1`, `r = 3` instance. For `k >= 7` the minimum is `2k` with
/// exactly two minimisers; for `2 <= k <= 6` the exhaustive search is run and
/// must also give `2k`.
pub fn min_omega_e3k1(k: u64) -> Result<IntegerMin> {
    if k < 2 {
        return invalid(format!("k must be at least 2, got {k}"));
    }
    if k >= 7 {
        return Ok(IntegerMin {
            value: 2 * k,
            argmins: vec![
                TwoBlockProfile::new(1, 2, k, 1),
                TwoBlockProfile::new(k, 1, 1, 2),
            ],
        });
    }
    let e = 3 * k + 1;
    let found = min_omega_integer(e, 3, e, e)?;
    if found.value != 2 * k {
        return Err(Error::VerificationFailed(format!(
            "exhaustive minimum for k={k} is {}, expected {}",
            found.value,
            2 * k
        )));
    }
    Ok(found)
}
