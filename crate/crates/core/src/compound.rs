//! Second compound matrices and the rational lower bounds `omega`,
//! `omega'`, `omega*` on `sigma_1^2 sigma_2^2` of a chain graph.
//!
//! For a chain matrix every 2x2 minor is 0 or -1. Taking the indicator `w`
//! of the nonzero columns of the compound matrix, the Rayleigh quotient
//! `|C w|^2 / |w|^2` has a closed form in the Ferrers profile; that closed
//! form is `omega`. Applying it to the transposed staircase gives `omega'`.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bipartite::{
    chain_from_degrees, conjugate_profile, ferrers_profile, DegreeSequence, FerrersProfile,
    RepresentationMatrix,
};
use crate::error::{invalid, Error, Result};
use crate::spectra::sigma_pair;
use crate::Rational;

/// Largest compound matrix (in entries) that [`second_compound`] will build.
pub const COMPOUND_SIZE_LIMIT: usize = 1_000_000;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl IntMatrix {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn nonzero_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| self.get(i, j) != 0))
            .collect()
    }

    /// `self * v` for an integer vector.
    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Index pairs `(i1, i2)` with `i1 < i2`, in lexicographic order.
pub fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Matrix of all 2x2 minors: entry `((i1,i2),(j1,j2))` is
/// `a[i1][j1] a[i2][j2] - a[i1][j2] a[i2][j1]`.
pub fn second_compound(a: &RepresentationMatrix) -> Result<IntMatrix> {
    if a.rows() < 2 || a.cols() < 2 {
        return invalid("second compound needs at least two rows and two columns");
    }
    let rp = index_pairs(a.rows());
    let cp = index_pairs(a.cols());
    if rp.len().saturating_mul(cp.len()) > COMPOUND_SIZE_LIMIT {
        return Err(Error::ResourceLimit {
            what: format!("{}x{} compound matrix", rp.len(), cp.len()),
            budget: COMPOUND_SIZE_LIMIT as u64,
        });
    }
    let g = |i: usize, j: usize| a.get(i, j) as i64;
    let entries = rp
        .iter()
        .flat_map(|&(i1, i2)| {
            cp.iter()
                .map(move |&(j1, j2)| g(i1, j1) * g(i2, j2) - g(i1, j2) * g(i2, j1))
        })
        .collect();
    Ok(IntMatrix {
        rows: rp.len(),
        cols: cp.len(),
        entries,
    })
}

/// `sum_{k<l} m_k m_l (r_l (r_k - r_l))^2`, the squared norm of `C w`.
pub fn omega_numerator(f: &FerrersProfile) -> i128 {
    let (r, m) = (f.distinct(), f.multiplicities());
    let mut total = 0i128;
    for k in 0..f.h() {
        for l in k + 1..f.h() {
            let entry = (r[l] * (r[k] - r[l])) as i128;
            total += (m[k] * m[l]) as i128 * entry * entry;
        }
    }
    total
}

/// `sum_{k<h} r_{k+1} (r_k - r_{k+1})`, the number of nonzero compound columns.
pub fn omega_denominator(f: &FerrersProfile) -> i128 {
    let r = f.distinct();
    r.windows(2).map(|w| (w[1] * (w[0] - w[1])) as i128).sum()
}

/// Zero when `h = 1`.
pub fn omega(f: &FerrersProfile) -> Rational {
    if f.h() == 1 {
        return Rational::zero();
    }
    Rational::new(omega_numerator(f), omega_denominator(f))
}

pub fn omega_prime(f: &FerrersProfile) -> Rational {
    omega(&conjugate_profile(f))
}

pub fn omega_star(f: &FerrersProfile) -> Rational {
    omega(f).max(omega_prime(f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaBounds {
    pub omega: Rational,
    pub omega_prime: Rational,
    pub omega_star: Rational,
    pub h: usize,
}

impl OmegaBounds {
    pub fn of(f: &FerrersProfile) -> Self {
        let omega = omega(f);
        let omega_prime = omega_prime(f);
        Self {
            omega,
            omega_prime,
            omega_star: omega.max(omega_prime),
            h: f.h(),
        }
    }
}

/// `(e + sqrt(e^2 - 4 omega*)) / 2`, an upper bound on `lambda_max^2`.
pub fn lambda_sq_upper_bound(e: usize, omega_star: Rational) -> Result<f64> {
    let e = Rational::from_integer(e as i128);
    let disc = e * e - omega_star * 4;
    if disc < Rational::zero() {
        return Err(Error::NumericDomain(format!(
            "e^2 - 4 omega* = {disc} is negative"
        )));
    }
    let disc = disc.to_f64().expect("finite rational");
    Ok((e.to_f64().expect("finite rational") + disc.sqrt()) / 2.0)
}

/// `|C w|^2 / |w|^2` computed from the materialized compound matrix, with
/// `w` the indicator of its nonzero columns. Zero if there are none.
pub fn compound_rayleigh_quotient(c: &IntMatrix) -> Rational {
    let mut w = vec![0i64; c.cols];
    let nz = c.nonzero_columns();
    if nz.is_empty() {
        return Rational::zero();
    }
    for &j in &nz {
        w[j] = 1;
    }
    let cw = c.mul_vec(&w);
    let num: i128 = cw.iter().map(|&x| (x as i128) * (x as i128)).sum();
    Rational::new(num, nz.len() as i128)
}

/// Spectral data and `omega` bounds for the chain graph of `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainBounds {
    pub degrees: DegreeSequence,
    pub e: usize,
    pub h: usize,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub omega: String,
    pub omega_prime: String,
    pub omega_star: String,
    pub omega_star_value: f64,
    pub upper_bound: f64,
    /// `upper_bound - sigma1_sq`; zero for `h <= 2` up to rounding.
    pub slack: f64,
    pub sigma_product_sq: f64,
}

impl ChainBounds {
    /// Both `omega` and `omega'` bound `sigma_1^2 sigma_2^2` from below
    /// and the resulting upper bound dominates `lambda_max^2`.
    pub fn holds(&self, tol: f64) -> bool {
        self.omega_star_value <= self.sigma_product_sq + tol
            && self.sigma1_sq <= self.upper_bound + tol
    }
}

pub fn chain_bounds(d: &DegreeSequence) -> Result<ChainBounds> {
    let f = ferrers_profile(d);
    let b = OmegaBounds::of(&f);
    let (s1, s2) = sigma_pair(&chain_from_degrees(d))?;
    let (s1sq, s2sq) = (s1 * s1, s2 * s2);
    let upper = lambda_sq_upper_bound(d.edges(), b.omega_star)?;
    Ok(ChainBounds {
        degrees: d.clone(),
        e: d.edges(),
        h: b.h,
        sigma1_sq: s1sq,
        sigma2_sq: s2sq,
        omega: b.omega.to_string(),
        omega_prime: b.omega_prime.to_string(),
        omega_star: b.omega_star.to_string(),
        omega_star_value: b.omega_star.to_f64().unwrap_or(f64::NAN),
        upper_bound: upper,
        slack: upper - s1sq,
        sigma_product_sq: s1sq * s2sq,
    })
}
