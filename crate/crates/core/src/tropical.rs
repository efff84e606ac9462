//! Support sets, covectors and the combinatorial data of a tropical polynomial.
//!
//! A covector `γ` on a support `A` is read as the tropical Laurent polynomial
//! `φ(X) = max_a (a·X + γ(a))`. Its combinatorial type is the triple `(W, Z, M)`:
//! the exponents realising the maximum somewhere, the order of the root values,
//! and for every root the order of the remaining monomials.
//!
//! Every comparison here is exact. Inputs that sit on a wall between cones are
//! rejected with a typed error; nothing is perturbed.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

/// A validated support: sorted, distinct, nonzero exponents that affinely generate `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SupportSet {
    points: Vec<i64>,
}

impl SupportSet {
    pub fn new(raw: &[i64]) -> Result<Self> {
        validate_support(raw)
    }

    /// Like [`SupportSet::new`] but without the affine-generation check.
    ///
    /// Meant for small experiments such as `{1, 4}`. Gcd ladders and level
    /// sequences on such supports need not stabilise at 1.
    pub fn lenient(raw: &[i64]) -> Result<Self> {
        let points = sorted_checked(raw)?;
        Ok(SupportSet { points })
    }

    pub fn points(&self) -> &[i64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> i64 {
        self.points[0]
    }

    pub fn last(&self) -> i64 {
        self.points[self.points.len() - 1]
    }

    pub fn index_of(&self, exponent: i64) -> Option<usize> {
        self.points.binary_search(&exponent).ok()
    }

    pub(crate) fn idx(&self, exponent: i64) -> usize {
        self.index_of(exponent)
            .unwrap_or_else(|| panic!("exponent {exponent} is not in the support"))
    }

    /// All exponents are strictly positive.
    pub fn is_positive(&self) -> bool {
        self.first() > 0
    }

    /// `0` lies in the interior of `conv(A)`.
    pub fn straddles_zero(&self) -> bool {
        self.first() < 0 && self.last() > 0
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn validate_support(raw: &[i64]) -> Result<SupportSet> {
    let points = sorted_checked(raw)?;
    let gcd = points
        .iter()
        .fold(0i64, |g, p| num_integer::gcd(g, p - points[0]));
    if gcd != 1 {
        return Err(Error::NotGenerating { gcd });
    }
    Ok(SupportSet { points })
}

fn sorted_checked(raw: &[i64]) -> Result<Vec<i64>> {
    if raw.contains(&0) {
        return Err(Error::ZeroInSupport);
    }
    let mut points = raw.to_vec();
    points.sort_unstable();
    if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoint(w[0]));
    }
    if points.len() < 2 || points[points.len() - 1] - points[0] < 3 {
        return Err(Error::TooShort);
    }
    Ok(points)
}

/// Nonnegative rational values, one per support point, in support order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covector {
    values: Vec<Rational>,
}

impl Covector {
    pub fn new(support: &SupportSet, values: Vec<Rational>) -> Result<Self> {
        if values.len() != support.len() {
            return Err(Error::CovectorLength {
                expected: support.len(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| v.is_negative()) {
            return Err(Error::NegativeEntry {
                exponent: support.points()[i],
            });
        }
        Ok(Covector { values })
    }

    pub fn from_ints(support: &SupportSet, values: &[i64]) -> Result<Self> {
        Self::new(support, values.iter().map(|&v| int(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at exponent `p`.
    pub fn at(&self, support: &SupportSet, p: i64) -> &Rational {
        &self.values[support.idx(p)]
    }

    /// Multiplies every entry by `factor`; `factor` must be nonnegative.
    pub fn scaled(&self, factor: &Rational) -> Covector {
        assert!(!factor.is_negative(), "covectors must stay nonnegative");
        Covector {
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn integers(&self) -> Result<Vec<num_bigint::BigInt>> {
        self.values
            .iter()
            .map(|v| {
                if v.is_integer() {
                    Ok(v.numer().clone())
                } else {
                    Err(Error::NonIntegerCovector)
                }
            })
            .collect()
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The data `(W, Z, M)` that names a full-dimensional cone of Morse covectors.
///
/// `z` uses 0-based root indices. `m[j]` lists `A \ {w_j, w_{j+1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinatorialType {
    #[serde(rename = "W")]
    pub w: Vec<i64>,
    #[serde(rename = "Z")]
    pub z: Vec<usize>,
    #[serde(rename = "M")]
    pub m: Vec<Vec<i64>>,
}

impl CombinatorialType {
    /// Number of roots, `k = |W| - 1`.
    pub fn k(&self) -> usize {
        self.w.len() - 1
    }

    /// `d_j = w_{j+1} - w_j`.
    pub fn d(&self, j: usize) -> i64 {
        self.w[j + 1] - self.w[j]
    }

    pub fn validate(&self, support: &SupportSet) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidType(msg));
        if self.w.len() < 2 {
            return bad("W needs at least two exponents".into());
        }
        if self.w[0] != support.first() || *self.w.last().unwrap() != support.last() {
            return bad("W must start at a_0 and end at the last exponent".into());
        }
        if self.w.windows(2).any(|p| p[0] >= p[1]) {
            return bad("W must be strictly increasing".into());
        }
        if let Some(p) = self.w.iter().find(|p| support.index_of(**p).is_none()) {
            return bad(format!("W contains {p}, which is not in the support"));
        }
        let k = self.k();
        let mut z = self.z.clone();
        z.sort_unstable();
        if z != (0..k).collect::<Vec<_>>() {
            return bad(format!("Z must be a permutation of 0..{k}"));
        }
        if self.m.len() != k {
            return bad(format!("expected {k} sequences M^j, got {}", self.m.len()));
        }
        for (j, seq) in self.m.iter().enumerate() {
            let mut expected: Vec<i64> = support
                .points()
                .iter()
                .copied()
                .filter(|p| *p != self.w[j] && *p != self.w[j + 1])
                .collect();
            let mut got = seq.clone();
            got.sort_unstable();
            expected.sort_unstable();
            if got != expected {
                return bad(format!("M^{j} is not an ordering of A \\ {{w_{j}, w_{}}}", j + 1));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W={:?} Z={:?}", self.w, self.z)?;
        for (j, m) in self.m.iter().enumerate() {
            write!(f, " M^{j}={m:?}")?;
        }
        Ok(())
    }
}

/// A tropical root `r_j` and the value `φ(r_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub r: Rational,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxwellWitness {
    /// Indices of two roots with equal value.
    pub roots: (usize, usize),
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CausticWitness {
    pub root: usize,
    pub r: String,
    /// Monomials whose values coincide at the root, besides the defining pair.
    pub monomials: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum MorseClass {
    Morse,
    Maxwell {
        maxwell: MaxwellWitness,
    },
    Caustic {
        caustic: CausticWitness,
    },
    MaxwellAndCaustic {
        maxwell: MaxwellWitness,
        caustic: CausticWitness,
    },
}

impl MorseClass {
    pub fn is_morse(&self) -> bool {
        matches!(self, MorseClass::Morse)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MorseClass::Morse => "Morse",
            MorseClass::Maxwell { .. } => "Maxwell",
            MorseClass::Caustic { .. } => "Caustic",
            MorseClass::MaxwellAndCaustic { .. } => "MaxwellAndCaustic",
        }
    }
}

/// Height of `(mid, γ(mid))` above the chord from `left` to `right`, scaled by `right - left`.
fn chord_excess(support: &SupportSet, gamma: &Covector, left: i64, mid: i64, right: i64) -> Rational {
    let g = |p| gamma.at(support, p);
    g(mid) * int(right - left) - g(left) * int(right - mid) - g(right) * int(mid - left)
}

/// Upper-hull vertices that are strict corners, plus the points lying exactly on an edge.
fn hull_chain(support: &SupportSet, gamma: &Covector) -> (Vec<i64>, Vec<(i64, i64, i64)>) {
    // The base points (a_0, 0) and (a_last, 0) sit at or below the end vertices when
    // γ >= 0, so they never change the upper chain.
    let mut chain: Vec<i64> = Vec::with_capacity(support.len());
    for &p in support.points() {
        while chain.len() >= 2 {
            let (left, mid) = (chain[chain.len() - 2], chain[chain.len() - 1]);
            if chord_excess(support, gamma, left, mid, p).is_positive() {
                break;
            }
            chain.pop();
        }
        chain.push(p);
    }
    let mut on_edge = Vec::new();
    for edge in chain.windows(2) {
        let (left, right) = (edge[0], edge[1]);
        for &p in support.points().iter().filter(|p| **p > left && **p < right) {
            if chord_excess(support, gamma, left, p, right).is_zero() {
                on_edge.push((p, left, right));
            }
        }
    }
    (chain, on_edge)
}

/// Exponents whose lifted points are strict vertices of the upper hull.
pub fn upper_hull(support: &SupportSet, gamma: &Covector) -> Result<Vec<i64>> {
    check_len(support, gamma)?;
    let (chain, on_edge) = hull_chain(support, gamma);
    if let Some(&(point, left, right)) = on_edge.first() {
        return Err(Error::DegenerateHull { point, left, right });
    }
    Ok(chain)
}

fn check_len(support: &SupportSet, gamma: &Covector) -> Result<()> {
    if gamma.len() != support.len() {
        return Err(Error::CovectorLength {
            expected: support.len(),
            got: gamma.len(),
        });
    }
    Ok(())
}

/// `r_j = (γ(w_j) - γ(w_{j+1})) / (w_{j+1} - w_j)` and `φ_j = w_j·r_j + γ(w_j)`.
pub fn roots_and_values(support: &SupportSet, gamma: &Covector, w: &[i64]) -> Vec<Root> {
    w.windows(2)
        .map(|e| {
            let (a, b) = (e[0], e[1]);
            let ga = gamma.at(support, a);
            let r = (ga - gamma.at(support, b)) / int(b - a);
            let value = &r * int(a) + ga;
            Root { r, value }
        })
        .collect()
}

/// Value of the monomial `p` at `x`: `p·x + γ(p)`.
pub fn monomial_value(support: &SupportSet, gamma: &Covector, p: i64, x: &Rational) -> Rational {
    x * int(p) + gamma.at(support, p)
}

/// Checks that no two distinct pairs `p < q`, `r < s` span segments of equal slope.
pub fn check_slopes(support: &SupportSet, gamma: &Covector) -> Result<()> {
    let pts = support.points();
    let mut pairs = Vec::with_capacity(pts.len() * pts.len() / 2);
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let slope = (gamma.at(support, q) - gamma.at(support, p)) / int(q - p);
            pairs.push(((p, q), slope));
        }
    }
    for (i, (first, s1)) in pairs.iter().enumerate() {
        for (second, s2) in &pairs[i + 1..] {
            if s1 == s2 {
                return Err(Error::SlopeDegenerate {
                    first: *first,
                    second: *second,
                });
            }
        }
    }
    Ok(())
}

/// Extracts `(W, Z, M)`, rejecting covectors on any wall of the fan.
pub fn extract(support: &SupportSet, gamma: &Covector) -> Result<CombinatorialType> {
    let w = upper_hull(support, gamma)?;
    check_slopes(support, gamma)?;
    let roots = roots_and_values(support, gamma, &w);
    let k = roots.len();

    let mut z: Vec<usize> = (0..k).collect();
    z.sort_by(|&i, &j| roots[i].value.cmp(&roots[j].value));
    for pair in z.windows(2) {
        if roots[pair[0]].value == roots[pair[1]].value {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            return Err(Error::RootValueDegenerate { first: a, second: b });
        }
    }

    let m = (0..k)
        .map(|j| {
            let mut rest: Vec<(i64, Rational)> = support
                .points()
                .iter()
                .copied()
                .filter(|p| *p != w[j] && *p != w[j + 1])
                .map(|p| (p, monomial_value(support, gamma, p, &roots[j].r)))
                .collect();
            // Distinct by the slope condition checked above.
            rest.sort_by(|a, b| b.1.cmp(&a.1));
            rest.into_iter().map(|(p, _)| p).collect()
        })
        .collect();

    Ok(CombinatorialType { w, z, m })
}

/// Classifies `γ` by the tropical Maxwell and caustic conditions at its roots.
///
/// Roots are read off the hull whether or not it is degenerate; a monomial
/// sitting on a hull edge shows up as a caustic witness.
pub fn classify(support: &SupportSet, gamma: &Covector) -> Result<MorseClass> {
    check_len(support, gamma)?;
    let (chain, _) = hull_chain(support, gamma);
    let roots = roots_and_values(support, gamma, &chain);

    let mut maxwell = None;
    'outer: for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i].value == roots[j].value {
                maxwell = Some(MaxwellWitness {
                    roots: (i, j),
                    value: format_rational(&roots[i].value),
                });
                break 'outer;
            }
        }
    }

    let mut caustic = None;
    'roots: for (j, root) in roots.iter().enumerate() {
        let (wl, wr) = (chain[j], chain[j + 1]);
        let mut values: Vec<(i64, Rational)> = support
            .points()
            .iter()
            .map(|&p| (p, monomial_value(support, gamma, p, &root.r)))
            .collect();
        values.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        // The defining pair attains the top value; any further coincidence is a caustic.
        let mut groups: Vec<Vec<i64>> = Vec::new();
        let mut last: Option<&Rational> = None;
        for (p, v) in &values {
            if last == Some(v) {
                groups.last_mut().unwrap().push(*p);
            } else {
                groups.push(vec![*p]);
            }
            last = Some(v);
        }
        for group in &groups {
            let is_top_pair = group.len() == 2 && group.contains(&wl) && group.contains(&wr);
            if group.len() >= 2 && !is_top_pair {
                let monomials = group
                    .iter()
                    .copied()
                    .filter(|p| *p != wl && *p != wr)
                    .collect();
                caustic = Some(CausticWitness {
                    root: j,
                    r: format_rational(&root.r),
                    monomials,
                });
                break 'roots;
            }
        }
    }

    Ok(match (maxwell, caustic) {
        (None, None) => MorseClass::Morse,
        (Some(maxwell), None) => MorseClass::Maxwell { maxwell },
        (None, Some(caustic)) => MorseClass::Caustic { caustic },
        (Some(maxwell), Some(caustic)) => MorseClass::MaxwellAndCaustic { maxwell, caustic },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn mixed_sign_case() -> (SupportSet, Covector) {
        let a = SupportSet::new(&[-3, -1, 1, 2, 4]).unwrap();
        let g = Covector::from_ints(&a, &[3, 5, 2, 5, 1]).unwrap();
        (a, g)
    }

    #[test]
    fn support_validation() {
        let a = SupportSet::new(&[4, -1, 2, -3, 1]).unwrap();
        assert_eq!(a.points(), &[-3, -1, 1, 2, 4]);
        assert_eq!(SupportSet::new(&[1, 2]), Err(Error::TooShort));
        assert_eq!(SupportSet::new(&[2, 4, 8]), Err(Error::NotGenerating { gcd: 2 }));
        assert_eq!(SupportSet::new(&[0, 1, 4]), Err(Error::ZeroInSupport));
        assert_eq!(SupportSet::new(&[1, 4, 4]), Err(Error::DuplicatePoint(4)));
        assert_eq!(SupportSet::new(&[5]), Err(Error::TooShort));
        assert_eq!(SupportSet::new(&[1, 4]), Err(Error::NotGenerating { gcd: 3 }));
        assert!(SupportSet::lenient(&[1, 4]).is_ok());
        assert_eq!(SupportSet::lenient(&[1, 3]), Err(Error::TooShort));
    }

    #[test]
    fn covector_validation() {
        let a = SupportSet::new(&[1, 2, 4]).unwrap();
        assert!(matches!(
            Covector::from_ints(&a, &[1, 2]),
            Err(Error::CovectorLength { expected: 3, got: 2 })
        ));
        assert_eq!(
            Covector::from_ints(&a, &[1, -2, 0]),
            Err(Error::NegativeEntry { exponent: 2 })
        );
    }

    #[test]
    fn hull_of_worked_examples() {
        let (a, g) = mixed_sign_case();
        assert_eq!(upper_hull(&a, &g).unwrap(), vec![-3, -1, 2, 4]);

        let a = SupportSet::new(&[1, 2, 3, 4]).unwrap();
        let g = Covector::from_ints(&a, &[1, 4, 3, 3]).unwrap();
        assert_eq!(upper_hull(&a, &g).unwrap(), vec![1, 2, 4]);

        let a = SupportSet::new(&[1, 2, 5]).unwrap();
        let g = Covector::from_ints(&a, &[0, 0, 0]).unwrap();
        assert_eq!(
            upper_hull(&a, &g),
            Err(Error::DegenerateHull { point: 2, left: 1, right: 5 })
        );
    }

    #[test]
    fn roots_of_example() {
        let (a, g) = mixed_sign_case();
        let roots = roots_and_values(&a, &g, &[-3, -1, 2, 4]);
        let r: Vec<_> = roots.iter().map(|x| x.r.clone()).collect();
        let v: Vec<_> = roots.iter().map(|x| x.value.clone()).collect();
        assert_eq!(r, vec![int(-1), int(0), int(2)]);
        assert_eq!(v, vec![int(6), int(5), int(9)]);
        // φ(r_1) < φ(r_0) < φ(r_2)
        assert!(v[1] < v[0] && v[0] < v[2]);

        let doubled = g.scaled(&int(2));
        let roots2 = roots_and_values(&a, &doubled, &[-3, -1, 2, 4]);
        for (x, y) in roots.iter().zip(&roots2) {
            assert_eq!(&x.r * int(2), y.r);
            assert_eq!(&x.value * int(2), y.value);
        }

        let a = SupportSet::lenient(&[1, 4]).unwrap();
        let g = Covector::from_ints(&a, &[0, 0]).unwrap();
        let roots = roots_and_values(&a, &g, &[1, 4]);
        assert_eq!(roots, vec![Root { r: int(0), value: int(0) }]);
    }

    #[test]
    fn extract_worked_examples() {
        let (a, g) = mixed_sign_case();
        let t = extract(&a, &g).unwrap();
        assert_eq!(t.w, vec![-3, -1, 2, 4]);
        assert_eq!(t.z, vec![1, 0, 2]);
        assert_eq!(t.m, vec![vec![2, 1, 4], vec![-3, 1, 4], vec![1, -1, -3]]);
        t.validate(&a).unwrap();

        let a = SupportSet::new(&[1, 2, 3, 4]).unwrap();
        let g = Covector::from_ints(&a, &[1, 4, 3, 3]).unwrap();
        let t = extract(&a, &g).unwrap();
        assert_eq!(t.w, vec![1, 2, 4]);
        assert_eq!(t.z, vec![0, 1]);
        assert_eq!(t.m, vec![vec![3, 4], vec![3, 1]]);

        let a = SupportSet::lenient(&[1, 4]).unwrap();
        let g = Covector::from_ints(&a, &[0, 1]).unwrap();
        let t = extract(&a, &g).unwrap();
        assert_eq!(t, CombinatorialType { w: vec![1, 4], z: vec![0], m: vec![vec![]] });
    }

    #[test]
    fn extract_reports_slope_ties() {
        // slope(1,3) = slope(2,4) = -1 while the hull is {1, 2, 4} as a strict chain
        let a = SupportSet::new(&[1, 2, 3, 4]).unwrap();
        let g = Covector::from_ints(&a, &[4, 4, 2, 2]).unwrap();
        assert!(matches!(extract(&a, &g), Err(Error::SlopeDegenerate { .. })));
    }

    #[test]
    fn extract_reports_equal_root_values() {
        // lines -2X, -X+3, X+3, 2X meet pairwise at X = -3, 0, 3;
        // the outer roots share the value 6.
        let a = SupportSet::new(&[-2, -1, 1, 2]).unwrap();
        let g = Covector::from_ints(&a, &[0, 3, 3, 0]).unwrap();
        // fails on slopes first: slope(-1,1) = 0 = slope(-2,2)
        assert!(matches!(extract(&a, &g), Err(Error::SlopeDegenerate { .. })));
    }

    #[test]
    fn classify_cases() {
        let (a, g) = mixed_sign_case();
        assert_eq!(classify(&a, &g).unwrap(), MorseClass::Morse);

        let a = SupportSet::new(&[1, 2, 5]).unwrap();
        let g = Covector::from_ints(&a, &[0, 0, 0]).unwrap();
        let c = classify(&a, &g).unwrap();
        assert_eq!(c.name(), "Caustic");
        if let MorseClass::Caustic { caustic } = c {
            assert_eq!(caustic.monomials, vec![2]);
            assert_eq!(caustic.r, "0");
        }
    }

    #[test]
    fn classify_finds_maxwell_pairs() {
        // max(-3X, -X + 4, X + 3, 2X): roots -2, 1/2, 3 with values 6, 7/2, 6
        let a = SupportSet::new(&[-3, -1, 1, 2]).unwrap();
        let g = Covector::from_ints(&a, &[0, 4, 3, 0]).unwrap();
        let roots = roots_and_values(&a, &g, &upper_hull(&a, &g).unwrap());
        assert_eq!(roots[0].value, int(6));
        assert_eq!(roots[1].value, ratio(7, 2));
        assert_eq!(roots[2].value, int(6));
        match classify(&a, &g).unwrap() {
            MorseClass::Maxwell { maxwell } => assert_eq!(maxwell.roots, (0, 2)),
            other => panic!("expected Maxwell, got {other:?}"),
        }
        assert_eq!(
            extract(&a, &g),
            Err(Error::RootValueDegenerate { first: 0, second: 2 })
        );
    }

    #[test]
    fn symmetric_support_ties_both_ways() {
        // mirror symmetry forces both a root-value tie and a tie at the middle root
        let a = SupportSet::new(&[-2, -1, 1, 2]).unwrap();
        let g = Covector::from_ints(&a, &[0, 2, 2, 0]).unwrap();
        assert_eq!(classify(&a, &g).unwrap().name(), "MaxwellAndCaustic");
    }
}
