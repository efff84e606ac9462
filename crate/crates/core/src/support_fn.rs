//! The support function `μ_A` and its coefficient vector on each cone.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::a2_coeffs;
use crate::rational::{dot, int, Rational};
use crate::singularity::c_coeffs;
use crate::tropical::{extract, CombinatorialType, Covector, SupportSet};

/// Free constants shifting the first and last coordinates of every vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ShiftConfig {
    pub c1: i64,
    pub c2: i64,
}

impl ShiftConfig {
    pub const fn new(c1: i64, c2: i64) -> Self {
        ShiftConfig { c1, c2 }
    }

    pub const fn zero() -> Self {
        ShiftConfig { c1: 0, c2: 0 }
    }

    /// `(4, 6 - 6n)` with `n` the largest exponent; the normalisation used for `A = [1, n]`.
    pub fn unit_interval(support: &SupportSet) -> Self {
        ShiftConfig::new(4, 6 - 6 * support.last())
    }
}

/// A shift as written on the command line: explicit constants or a named preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftSpec {
    Explicit(ShiftConfig),
    UnitInterval,
}

impl ShiftSpec {
    pub fn resolve(self, support: &SupportSet) -> ShiftConfig {
        match self {
            ShiftSpec::Explicit(s) => s,
            ShiftSpec::UnitInterval => ShiftConfig::unit_interval(support),
        }
    }
}

impl Default for ShiftSpec {
    fn default() -> Self {
        ShiftSpec::Explicit(ShiftConfig::zero())
    }
}

impl FromStr for ShiftSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "unit-interval" {
            return Ok(ShiftSpec::UnitInterval);
        }
        let bad = || Error::Parse(format!("shift must be `c1,c2` or `unit-interval`, got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let c1 = a.trim().parse().map_err(|_| bad())?;
        let c2 = b.trim().parse().map_err(|_| bad())?;
        Ok(ShiftSpec::Explicit(ShiftConfig::new(c1, c2)))
    }
}

/// Integer coefficients of `μ_A` on one cone, in support order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexVector {
    pub coeffs: Vec<i64>,
}

impl VertexVector {
    pub fn pair(&self, gamma: &Covector) -> Rational {
        dot(&self.coeffs, gamma.values())
    }

    /// `(Σ v, Σ a·v)`.
    pub fn hyperplane_constants(&self, support: &SupportSet) -> (i64, i64) {
        let d1 = self.coeffs.iter().sum();
        let d2 = self
            .coeffs
            .iter()
            .zip(support.points())
            .map(|(v, a)| v * a)
            .sum();
        (d1, d2)
    }
}

impl fmt::Display for VertexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Adds `factor·S_i` where `S_i = w_{i+1}γ(w_i) - w_iγ(w_{i+1})`.
pub(crate) fn add_s(coeffs: &mut [i64], support: &SupportSet, w: &[i64], i: usize, factor: i64) {
    coeffs[support.idx(w[i])] += factor * w[i + 1];
    coeffs[support.idx(w[i + 1])] -= factor * w[i];
}

/// `Σ_j S_{z_j}(d_{z_j} + offset + Σ_{l<j} 2d_{z_l})` plus the two endpoint terms.
///
/// With `offset = -3` this is the main part of `μ_A`; with `offset = 0` it is the
/// lattice volume of the fiber polygon.
pub(crate) fn stacked_s_coeffs(support: &SupportSet, ty: &CombinatorialType, offset: i64) -> Vec<i64> {
    let mut coeffs = vec![0i64; support.len()];
    let mut below = 0i64;
    for &i in &ty.z {
        let d = ty.d(i);
        add_s(&mut coeffs, support, &ty.w, i, d + offset + 2 * below);
        below += d;
    }
    let (w0, wk) = (ty.w[0], ty.w[ty.k()]);
    coeffs[0] += (w0.abs() - w0) * (wk - w0);
    *coeffs.last_mut().unwrap() += (wk + wk.abs()) * (wk - w0);
    coeffs
}

pub fn mu_coeffs(support: &SupportSet, ty: &CombinatorialType, shift: ShiftConfig) -> VertexVector {
    let mut coeffs = stacked_s_coeffs(support, ty, -3);
    for j in 0..ty.k() {
        for (c, x) in coeffs.iter_mut().zip(c_coeffs(support, ty, j)) {
            *c += x;
        }
    }
    coeffs[0] += shift.c1;
    *coeffs.last_mut().unwrap() += shift.c2;
    VertexVector { coeffs }
}

pub fn mu_value(support: &SupportSet, gamma: &Covector, shift: ShiftConfig) -> Result<Rational> {
    let ty = extract(support, gamma)?;
    Ok(mu_coeffs(support, &ty, shift).pair(gamma))
}

/// Closed form of [`mu_coeffs`] for supports inside the positive integers.
pub fn mu_coeffs_positive(
    support: &SupportSet,
    ty: &CombinatorialType,
    shift: ShiftConfig,
) -> Result<VertexVector> {
    if !support.is_positive() {
        return Err(Error::NotPositiveSupport);
    }
    if ty.z.iter().enumerate().any(|(i, z)| i != *z) {
        return Err(Error::InvalidType(
            "root values must increase along W for a positive support".into(),
        ));
    }
    let w = &ty.w;
    let k = ty.k();
    let w0 = w[0];
    let mut coeffs = vec![0i64; support.len()];
    coeffs[support.idx(w0)] += w[1] * (w[1] - w0 - 3) + shift.c1;
    for j in 1..k {
        coeffs[support.idx(w[j])] += (w[j + 1] - w[j - 1]) * (w[j - 1] + w[j] + w[j + 1] - 2 * w0 - 3);
    }
    coeffs[support.idx(w[k])] +=
        (w[k] - w[k - 1]) * (2 * w[k] + w[k - 1] - 2 * w0 - 3) + 3 * w[k] + shift.c2;
    for j in 0..k {
        for (c, x) in coeffs.iter_mut().zip(c_coeffs(support, ty, j)) {
            *c += x;
        }
    }
    Ok(VertexVector { coeffs })
}

/// Coefficients of `b·|2A1| + a·|A2|` on the cone of `ty`.
///
/// `|A2|` is `Area(N) - γ(w_0) - γ(w_k)` and `2|2A1| + |A2| = μ_A`, so
/// `(a, b) = (1, 2)` gives back [`mu_coeffs`].
pub fn maxwell_caustic_split(
    support: &SupportSet,
    ty: &CombinatorialType,
    a: &Rational,
    b: &Rational,
    shift: ShiftConfig,
) -> Vec<Rational> {
    let mu = mu_coeffs(support, ty, shift);
    let a2 = a2_coeffs(support, ty);
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    mu.coeffs
        .iter()
        .zip(&a2)
        .map(|(&m, &x)| {
            let n2a1 = (int(m) - int(x)) * &half;
            b * n2a1 + a * int(x)
        })
        .collect()
}
