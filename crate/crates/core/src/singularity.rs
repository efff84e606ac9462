//! Correction sums `C^j` attached to roots whose endpoint exponents share a factor.
//!
//! Two routes are provided. The ladder route accumulates gcds along the
//! ordering `M^j`. The level route scans the lifted support against the facet
//! hyperplane of root `j` one integer level at a time and reads off the
//! fork sequence of the resulting singularity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::error::Result;
use crate::rational::{bigint_to_json, dot, gcd_i64, Rational};
use crate::tropical::{CombinatorialType, Covector, SupportSet};

/// `b_0 = gcd(w_j, w_{j+1})`, then `b_l = gcd(b_{l-1}, m_l)` along `M^j`.
///
/// The ladder always has `|M^j| + 1` entries, even after it reaches 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdLadder {
    entries: Vec<i64>,
}

impl GcdLadder {
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Entries up to and including the first 1.
    pub fn until_one(&self) -> &[i64] {
        match self.entries.iter().position(|b| *b == 1) {
            Some(i) => &self.entries[..=i],
            None => &self.entries,
        }
    }
}

pub fn gcd_ladder(w: &[i64], j: usize, m_j: &[i64]) -> GcdLadder {
    let mut entries = Vec::with_capacity(m_j.len() + 1);
    let mut b = gcd_i64(w[j], w[j + 1]);
    entries.push(b);
    for &m in m_j {
        b = gcd_i64(b, m);
        entries.push(b);
    }
    GcdLadder { entries }
}

/// Coefficients of `C^j` as a linear form on `A`, in support order.
pub fn c_coeffs(support: &SupportSet, ty: &CombinatorialType, j: usize) -> Vec<i64> {
    let mut coeffs = vec![0i64; support.len()];
    let (wl, wr) = (ty.w[j], ty.w[j + 1]);
    let ladder = gcd_ladder(&ty.w, j, &ty.m[j]);
    let b = ladder.entries();
    for (l, &m) in ty.m[j].iter().enumerate() {
        let drop = b[l] - b[l + 1];
        if drop == 0 {
            continue;
        }
        coeffs[support.idx(m)] += drop * (wr - wl);
        coeffs[support.idx(wl)] += drop * (m - wr);
        coeffs[support.idx(wr)] += drop * (wl - m);
    }
    coeffs
}

pub fn c_value(support: &SupportSet, gamma: &Covector, ty: &CombinatorialType, j: usize) -> Rational {
    dot(&c_coeffs(support, ty, j), gamma.values())
}

/// A fork sequence `i_1, i_2, …`, stored as runs of equal values.
///
/// Runs are `(value, length)`. The last run is `(1, 1)` when the sequence
/// reaches 1; scanning stops there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkSequence {
    runs: Vec<(i64, BigInt)>,
}

impl ForkSequence {
    /// Builds a sequence from explicit entries, truncating after the first 1.
    pub fn from_entries(entries: &[i64]) -> Self {
        let mut seq = ForkSequence { runs: Vec::new() };
        for &e in entries {
            seq.push_run(e, BigInt::one());
            if e == 1 {
                break;
            }
        }
        seq
    }

    fn push_run(&mut self, value: i64, len: BigInt) {
        if len.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some((v, n)) if *v == value => *n += len,
            _ => self.runs.push((value, len)),
        }
    }

    pub fn runs(&self) -> &[(i64, BigInt)] {
        &self.runs
    }

    pub fn first(&self) -> i64 {
        self.runs.first().map_or(1, |r| r.0)
    }

    /// Number of entries.
    pub fn len(&self) -> BigInt {
        self.runs.iter().map(|r| &r.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Expanded entries, for short sequences only.
    pub fn entries(&self) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        for (v, n) in &self.runs {
            let n = n.to_usize().filter(|n| *n <= 1 << 20)?;
            out.extend(std::iter::repeat_n(*v, n));
        }
        Some(out)
    }

    /// `Σ (i_n - 1)`.
    pub fn excess(&self) -> BigInt {
        self.runs
            .iter()
            .map(|(v, n)| BigInt::from(v - 1) * n)
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let runs: Vec<_> = self
            .runs
            .iter()
            .map(|(v, n)| json!([v, bigint_to_json(n)]))
            .collect();
        json!({ "runs": runs, "excess": bigint_to_json(&self.excess()) })
    }
}

/// Euler characteristic `χ(i) = i_1 - i_1·Σ (i_n - 1)`.
pub fn chi_fork(seq: &ForkSequence) -> BigInt {
    let i1 = BigInt::from(seq.first());
    &i1 - &i1 * seq.excess()
}

/// The facet hyperplane `h_1 x + h_2 y + h_3 z = λ` of root `j` in the lifted support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetFunctional {
    /// Reduced normal with coprime entries.
    pub h: [BigInt; 3],
    /// Reduced level of the facet.
    pub level: BigInt,
    /// Lattice area of the facet: the content of the unreduced normal.
    pub volume: BigInt,
}

impl FacetFunctional {
    /// Reduced level of the lattice point `(x, y, z)`.
    pub fn level_of(&self, x: i64, y: i64, z: &BigInt) -> BigInt {
        &self.h[0] * x + &self.h[1] * y + &self.h[2] * z
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "h": self.h.iter().map(bigint_to_json).collect::<Vec<_>>(),
            "level": bigint_to_json(&self.level),
            "volume": bigint_to_json(&self.volume),
        })
    }
}

pub fn facet_functional(
    support: &SupportSet,
    gamma: &Covector,
    ty: &CombinatorialType,
    j: usize,
) -> Result<FacetFunctional> {
    let g = gamma.integers()?;
    let (wl, wr) = (ty.w[j], ty.w[j + 1]);
    let gl = &g[support.idx(wl)];
    let gr = &g[support.idx(wr)];
    let s = gl * wr - gr * wl;
    let raw = [gl - gr, s.clone(), BigInt::from(wr - wl)];
    let content = raw[0].gcd(&raw[1]).gcd(&raw[2]);
    let h = raw.map(|v| v / &content);
    Ok(FacetFunctional {
        h,
        level: s / &content,
        volume: content,
    })
}

/// Lifted support points `(x, y, z)`: apex, the two base points, and the lifted monomials.
fn lifted_points(support: &SupportSet, g: &[BigInt]) -> Vec<(i64, i64, BigInt)> {
    let mut pts = vec![
        (0, 1, BigInt::zero()),
        (support.first(), 0, BigInt::zero()),
        (support.last(), 0, BigInt::zero()),
    ];
    pts.extend(
        support
            .points()
            .iter()
            .zip(g)
            .map(|(&p, v)| (p, 0, v.clone())),
    );
    pts
}

/// Fork sequence of root `j` read off the levels `λ, λ-1, …` of its facet functional.
pub fn level_sequence(
    support: &SupportSet,
    gamma: &Covector,
    ty: &CombinatorialType,
    j: usize,
) -> Result<(FacetFunctional, ForkSequence)> {
    let facet = facet_functional(support, gamma, ty, j)?;
    let g = gamma.integers()?;
    let mut leveled: Vec<(BigInt, i64)> = lifted_points(support, &g)
        .into_iter()
        .map(|(x, y, z)| (facet.level_of(x, y, &z), x))
        .collect();
    leveled.sort_by(|a, b| b.0.cmp(&a.0));

    let mut seq = ForkSequence { runs: Vec::new() };
    let mut gcd = 0i64;
    let mut idx = 0;
    // Consume the facet itself, then every lower level that brings new points.
    let mut current = facet.level.clone();
    loop {
        while idx < leveled.len() && leveled[idx].0 >= current {
            gcd = gcd_i64(gcd, leveled[idx].1);
            idx += 1;
        }
        if gcd == 1 || idx == leveled.len() {
            seq.push_run(gcd, BigInt::one());
            break;
        }
        let next = leveled[idx].0.clone();
        seq.push_run(gcd, &current - &next);
        current = next;
    }
    Ok((facet, seq))
}

/// `C^j = -Vol(Γ_j)·Σ (i_l - 1)` from the level scan.
pub fn c_value_via_levels(
    support: &SupportSet,
    gamma: &Covector,
    ty: &CombinatorialType,
    j: usize,
) -> Result<Rational> {
    let (facet, seq) = level_sequence(support, gamma, ty, j)?;
    Ok(Rational::from_integer(-(facet.volume * seq.excess())))
}

/// Level gap between the facet and the first monomial of `M^j`, scaled by the facet volume.
///
/// Returns `None` when `M^j` is empty.
pub fn first_gap_times_volume(
    support: &SupportSet,
    gamma: &Covector,
    ty: &CombinatorialType,
    j: usize,
) -> Result<Option<BigInt>> {
    let facet = facet_functional(support, gamma, ty, j)?;
    let Some(&m) = ty.m[j].first() else {
        return Ok(None);
    };
    let g = gamma.integers()?;
    let gap = &facet.level - facet.level_of(m, 0, &g[support.idx(m)]);
    Ok(Some(gap * &facet.volume))
}
