//! The Newton polygon `N`, the fiber polygon `P` and the counts of singular strata.

use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, lattice_area, Hull, Point2};
use crate::rational::{dot, format_rational, int, rational_to_json, Rational};
use crate::singularity::c_value_via_levels;
use crate::support_fn::{add_s, mu_coeffs, stacked_s_coeffs, ShiftConfig};
use crate::tropical::{extract, upper_hull, CombinatorialType, Covector, SupportSet};

/// `conv({(a, γ(a))} ∪ {(a_0, 0), (a_last, 0)})`.
pub fn newton_polygon(support: &SupportSet, gamma: &Covector) -> Hull {
    let mut pts: Vec<Point2> = support
        .points()
        .iter()
        .zip(gamma.values())
        .map(|(&a, g)| Point2::new(int(a), g.clone()))
        .collect();
    pts.push(Point2::new(int(support.first()), Rational::zero()));
    pts.push(Point2::new(int(support.last()), Rational::zero()));
    convex_hull(&pts)
}

/// Lattice area of `N` by the shoelace formula.
pub fn area_n(support: &SupportSet, gamma: &Covector) -> Rational {
    lattice_area(&newton_polygon(support, gamma).vertices)
}

/// `Σ S_j + w_kγ(w_k) - w_0γ(w_0)` as a linear form.
pub fn area_n_coeffs(support: &SupportSet, w: &[i64]) -> Vec<i64> {
    let mut coeffs = vec![0i64; support.len()];
    for i in 0..w.len() - 1 {
        add_s(&mut coeffs, support, w, i, 1);
    }
    coeffs[0] -= w[0];
    *coeffs.last_mut().unwrap() += w[w.len() - 1];
    coeffs
}

/// Area of `N` read off the upper hull; needs a nondegenerate hull.
pub fn area_n_formula(support: &SupportSet, gamma: &Covector) -> Result<Rational> {
    let w = upper_hull(support, gamma)?;
    Ok(dot(&area_n_coeffs(support, &w), gamma.values()))
}

/// `|A2| = Area(N) - γ(w_0) - γ(w_k)` as a linear form.
pub fn a2_coeffs(support: &SupportSet, ty: &CombinatorialType) -> Vec<i64> {
    let mut coeffs = area_n_coeffs(support, &ty.w);
    coeffs[0] -= 1;
    *coeffs.last_mut().unwrap() -= 1;
    coeffs
}

/// A stack of rectangular trapezoids sharing a vertical left side.
///
/// Base `i` has length `bases[i]`; the gap between bases `i` and `i + 1` is `heights[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberPolygon {
    pub bases: Vec<Rational>,
    pub heights: Vec<i64>,
    /// Height of the lowest base.
    pub offset: i64,
}

impl FiberPolygon {
    pub fn total_height(&self) -> i64 {
        self.heights.iter().sum()
    }

    /// Lattice area as a sum of trapezoids.
    pub fn volume(&self) -> Rational {
        self.bases
            .windows(2)
            .zip(&self.heights)
            .map(|(b, &h)| (&b[0] + &b[1]) * int(h))
            .sum()
    }

    /// Heights of the bases, bottom to top.
    pub fn levels(&self) -> Vec<i64> {
        let mut y = self.offset;
        let mut out = vec![y];
        for h in &self.heights {
            y += h;
            out.push(y);
        }
        out
    }

    /// Counterclockwise vertex cycle, without repeated points.
    pub fn vertices(&self) -> Vec<Point2> {
        let levels = self.levels();
        let mut out: Vec<Point2> = self
            .bases
            .iter()
            .zip(&levels)
            .map(|(b, &y)| Point2::new(b.clone(), int(y)))
            .collect();
        out.push(Point2::new(Rational::zero(), int(*levels.last().unwrap())));
        out.insert(0, Point2::new(Rational::zero(), int(levels[0])));
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<_> = self
            .vertices()
            .iter()
            .map(|p| json!([rational_to_json(&p.x), rational_to_json(&p.y)]))
            .collect();
        json!({
            "bases": self.bases.iter().map(rational_to_json).collect::<Vec<_>>(),
            "heights": self.heights,
            "levels": self.levels(),
            "vertices": vertices,
            "volume": rational_to_json(&self.volume()),
        })
    }
}

pub fn fiber_polygon(support: &SupportSet, gamma: &Covector) -> Result<FiberPolygon> {
    let ty = extract(support, gamma).map_err(Error::not_morse)?;
    Ok(fiber_polygon_of(support, gamma, &ty))
}

fn s_value(support: &SupportSet, gamma: &Covector, w: &[i64], i: usize) -> Rational {
    gamma.at(support, w[i]) * int(w[i + 1]) - gamma.at(support, w[i + 1]) * int(w[i])
}

/// Fiber polygon on a known cone.
///
/// The bottom base is `Area(N)` when `0` lies inside `conv(A)`. Otherwise the
/// triangle between `N` and the origin at the endpoint nearer to `0` is added.
pub fn fiber_polygon_of(support: &SupportSet, gamma: &Covector, ty: &CombinatorialType) -> FiberPolygon {
    let w = &ty.w;
    let (w0, wk) = (w[0], w[ty.k()]);
    let g0 = gamma.at(support, w0);
    let gk = gamma.at(support, wk);
    let area = dot(&area_n_coeffs(support, w), gamma.values());
    let (bottom, offset) = if w0 < 0 && wk > 0 {
        (area, 0)
    } else if w0 > 0 {
        (area + g0 * int(w0), w0)
    } else {
        (area + gk * int(-wk), -wk)
    };
    let mut bases = vec![bottom];
    let mut heights = Vec::with_capacity(ty.k());
    for &i in &ty.z {
        let next = bases.last().unwrap() - s_value(support, gamma, w, i);
        bases.push(next);
        heights.push(ty.d(i));
    }
    FiberPolygon {
        bases,
        heights,
        offset,
    }
}

/// Closed-form lattice volume of `P` as a linear form on the cone.
pub fn vol_p_coeffs(support: &SupportSet, ty: &CombinatorialType) -> Vec<i64> {
    stacked_s_coeffs(support, ty, 0)
}

pub fn vol_p_closed(support: &SupportSet, gamma: &Covector) -> Result<Rational> {
    let ty = extract(support, gamma).map_err(Error::not_morse)?;
    Ok(dot(&vol_p_coeffs(support, &ty), gamma.values()))
}

pub fn vol_p_trapezoid(support: &SupportSet, gamma: &Covector) -> Result<Rational> {
    Ok(fiber_polygon(support, gamma)?.volume())
}

/// Closed form of [`vol_p_coeffs`] for supports inside the positive integers.
pub fn vol_p_positive_coeffs(support: &SupportSet, ty: &CombinatorialType) -> Result<Vec<i64>> {
    if !support.is_positive() {
        return Err(Error::NotPositiveSupport);
    }
    let w = &ty.w;
    let k = ty.k();
    let w0 = w[0];
    let mut coeffs = vec![0i64; support.len()];
    coeffs[support.idx(w0)] += w[1] * (w[1] - w0);
    for j in 1..k {
        coeffs[support.idx(w[j])] += (w[j + 1] - w[j - 1]) * (w[j - 1] + w[j] + w[j + 1] - 2 * w0);
    }
    coeffs[support.idx(w[k])] += (w[k] - w[k - 1]) * (2 * w[k] + w[k - 1] - 2 * w0);
    Ok(coeffs)
}

/// `χ(A1)`, `|A2|` and `|2A1|` relative to a shift convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataCounts {
    pub chi_a1: Rational,
    pub n_a2: Rational,
    pub n_2a1: Rational,
    pub shift: ShiftConfig,
}

impl StrataCounts {
    /// `2·|2A1|` must be even for the counts to be integers.
    pub fn parity_ok(&self) -> bool {
        self.n_2a1.is_integer()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "chiA1": rational_to_json(&self.chi_a1),
            "nA2": rational_to_json(&self.n_a2),
            "n2A1": rational_to_json(&self.n_2a1),
            "shift": [self.shift.c1, self.shift.c2],
            "parity_ok": self.parity_ok(),
        })
    }
}

pub fn strata_counts(support: &SupportSet, gamma: &Covector, shift: ShiftConfig) -> Result<StrataCounts> {
    gamma.integers()?;
    let ty = extract(support, gamma).map_err(Error::not_morse)?;
    let area = dot(&area_n_coeffs(support, &ty.w), gamma.values());
    let n_a2 = &area - gamma.values()[0].clone() - gamma.values().last().unwrap();
    let mu = mu_coeffs(support, &ty, shift).pair(gamma);
    let n_2a1 = (&mu - &n_a2) / int(2);
    let chi_a1 = -area - int(2) * &n_2a1 - int(2) * &n_a2;
    Ok(StrataCounts {
        chi_a1,
        n_a2,
        n_2a1,
        shift,
    })
}

/// Residuals of the three relations tying the strata counts to the geometry.
///
/// Each residual is the left side minus the right side, computed from
/// independent routes: shoelace area, trapezoid volume, and level-scan `C^j`.
/// The third relation carries constants `(c1 - 3w_0 - 2, c2 + 3w_k - 2)`.
pub fn system_residuals(
    support: &SupportSet,
    gamma: &Covector,
    counts: &StrataCounts,
) -> Result<[Rational; 3]> {
    let ty = extract(support, gamma).map_err(Error::not_morse)?;
    let area = area_n(support, gamma);
    let vol = fiber_polygon_of(support, gamma, &ty).volume();
    let mut c_sum = Rational::zero();
    for j in 0..ty.k() {
        c_sum += c_value_via_levels(support, gamma, &ty, j)?;
    }
    let (w0, wk) = (ty.w[0], ty.w[ty.k()]);
    let g0 = &gamma.values()[0];
    let gk = gamma.values().last().unwrap();
    let s1 = counts.shift.c1 - 3 * w0 - 2;
    let s2 = counts.shift.c2 + 3 * wk - 2;

    let r1 = &counts.chi_a1 + int(2) * &counts.n_2a1 + int(2) * &counts.n_a2 + &area;
    let r2 = &counts.n_a2 - (&area - g0 - gk);
    let r3 = &counts.chi_a1 - &counts.n_a2 + vol + g0 * int(s1) + gk * int(s2) + c_sum;
    Ok([r1, r2, r3])
}

pub fn residuals_vanish(res: &[Rational; 3]) -> bool {
    res.iter().all(Zero::is_zero)
}

pub fn describe_residuals(res: &[Rational; 3]) -> String {
    let parts: Vec<String> = res.iter().map(format_rational).collect();
    parts.join(", ")
}
