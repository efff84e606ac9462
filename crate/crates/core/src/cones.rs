//! Open cones of Morse covectors and the enumeration of realisable types.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::feasible_point;
use crate::rational::{denominator_lcm, int, Rational};
use crate::tropical::{extract, CombinatorialType, Covector, SupportSet};

pub const DEFAULT_MAX_SUPPORT: usize = 7;

/// Homogeneous integer linear forms on `γ`, each required to be strictly positive.
///
/// Nonnegativity of `γ` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrictSystem {
    pub n: usize,
    pub forms: Vec<Vec<i64>>,
}

impl StrictSystem {
    pub fn new(n: usize) -> Self {
        StrictSystem { n, forms: Vec::new() }
    }

    fn push(&mut self, form: Vec<i64>) {
        debug_assert_eq!(form.len(), self.n);
        self.forms.push(form);
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn eval(form: &[i64], x: &[Rational]) -> Rational {
        form.iter()
            .zip(x)
            .filter(|(c, _)| **c != 0)
            .map(|(c, v)| v * BigInt::from(*c))
            .sum()
    }

    pub fn strictly_satisfied(&self, x: &[Rational]) -> bool {
        x.iter().all(|v| !v.is_negative())
            && self.forms.iter().all(|f| Self::eval(f, x).is_positive())
    }
}

/// Form builders over support indices.
struct Forms<'a> {
    support: &'a SupportSet,
}

impl Forms<'_> {
    fn zero(&self) -> Vec<i64> {
        vec![0; self.support.len()]
    }

    fn add(&self, f: &mut [i64], p: i64, c: i64) {
        f[self.support.idx(p)] += c;
    }

    /// `(r - l)γ(m) - (r - m)γ(l) - (m - l)γ(r) > 0`: `m` strictly above the chord `[l, r]`.
    fn above_chord(&self, l: i64, m: i64, r: i64) -> Vec<i64> {
        let mut f = self.zero();
        self.add(&mut f, m, r - l);
        self.add(&mut f, l, -(r - m));
        self.add(&mut f, r, -(m - l));
        f
    }

    /// `d_j·φ_j = S_j`.
    fn s(&self, w: &[i64], i: usize) -> Vec<i64> {
        let mut f = self.zero();
        self.add(&mut f, w[i], w[i + 1]);
        self.add(&mut f, w[i + 1], -w[i]);
        f
    }

    /// `φ_a < φ_b` cleared of denominators.
    fn root_order(&self, w: &[i64], a: usize, b: usize) -> Vec<i64> {
        let (da, db) = (w[a + 1] - w[a], w[b + 1] - w[b]);
        let sa = self.s(w, a);
        let sb = self.s(w, b);
        sb.iter().zip(&sa).map(|(y, x)| da * y - db * x).collect()
    }

    /// `d_j·(p·r_j + γ(p))`.
    fn monomial(&self, w: &[i64], j: usize, p: i64) -> Vec<i64> {
        let mut f = self.zero();
        self.add(&mut f, w[j], p);
        self.add(&mut f, w[j + 1], -p);
        self.add(&mut f, p, w[j + 1] - w[j]);
        f
    }

    /// Monomial `p` above monomial `q` at root `j`.
    fn monomial_order(&self, w: &[i64], j: usize, p: i64, q: i64) -> Vec<i64> {
        let fp = self.monomial(w, j, p);
        let fq = self.monomial(w, j, q);
        fp.iter().zip(&fq).map(|(x, y)| x - y).collect()
    }
}

fn hull_forms(forms: &Forms<'_>, support: &SupportSet, w: &[i64], sys: &mut StrictSystem) {
    for t in w.windows(3) {
        sys.push(forms.above_chord(t[0], t[1], t[2]));
    }
    for e in w.windows(2) {
        for &p in support.points().iter().filter(|p| **p > e[0] && **p < e[1]) {
            // the edge [e0, e1] strictly above p
            let f: Vec<i64> = forms.above_chord(e[0], p, e[1]).iter().map(|c| -c).collect();
            sys.push(f);
        }
    }
}

/// The full system cutting out the open cone of `ty`.
pub fn cone_constraints(support: &SupportSet, ty: &CombinatorialType) -> StrictSystem {
    let forms = Forms { support };
    let mut sys = StrictSystem::new(support.len());
    hull_forms(&forms, support, &ty.w, &mut sys);
    for pair in ty.z.windows(2) {
        sys.push(forms.root_order(&ty.w, pair[0], pair[1]));
    }
    for (j, m) in ty.m.iter().enumerate() {
        for pair in m.windows(2) {
            sys.push(forms.monomial_order(&ty.w, j, pair[0], pair[1]));
        }
    }
    sys
}

/// A point of the open cone, or `None` when the cone is empty.
pub fn feasible(support: &SupportSet, sys: &StrictSystem) -> Option<Covector> {
    if sys.is_empty() {
        return Some(Covector::from_ints(support, &vec![1; support.len()]).unwrap());
    }
    let x = feasible_point(&sys.forms, sys.n)?;
    Some(Covector::new(support, x).expect("simplex points are nonnegative"))
}

/// A cone together with a generic integer point inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeEntry {
    pub ty: CombinatorialType,
    pub witness: Covector,
}

/// Moves `x` off every wall not part of `sys` while staying in the open cone.
///
/// Tries `x` first, then `x + εv` for a deterministic sequence of positive
/// directions `v`, with `ε` small enough that no form changes sign.
pub fn generic_witness(
    support: &SupportSet,
    sys: &StrictSystem,
    ty: &CombinatorialType,
    x: &[Rational],
) -> Result<Covector> {
    let n = support.len();
    let margin = sys
        .forms
        .iter()
        .map(|f| StrictSystem::eval(f, x))
        .min()
        .unwrap_or_else(Rational::one);
    debug_assert!(margin.is_positive());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..64u32 {
        let candidate: Vec<Rational> = if attempt == 0 {
            x.to_vec()
        } else {
            let bound = 1 + 4 * i64::from(attempt);
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=bound)).collect();
            let spread = sys
                .forms
                .iter()
                .map(|f| f.iter().zip(&v).map(|(c, d)| c * d).sum::<i64>().abs())
                .max()
                .unwrap_or(0);
            let eps = &margin / int(2 * (1 + spread) * i64::from(attempt));
            x.iter().zip(&v).map(|(xi, vi)| xi + &eps * int(*vi)).collect()
        };
        let scaled = integer_scaling(&candidate);
        let cov = Covector::new(support, scaled).expect("nonnegative witness");
        if extract(support, &cov).as_ref() == Ok(ty) {
            return Ok(cov);
        }
    }
    Err(Error::WitnessFailure(ty.to_string()))
}

/// Smallest positive multiple of `x` with coprime integer entries.
fn integer_scaling(x: &[Rational]) -> Vec<Rational> {
    let l = denominator_lcm(x);
    let ints: Vec<BigInt> = x.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect()
}

/// Incremental search state: the forms so far and a point satisfying them strictly.
#[derive(Clone)]
struct Node {
    sys: StrictSystem,
    point: Vec<Rational>,
}

impl Node {
    /// Adds one form, keeping the current point when it still works.
    fn extend(&self, form: Vec<i64>) -> Option<Node> {
        let mut sys = self.sys.clone();
        sys.push(form);
        let last = sys.forms.last().unwrap();
        if StrictSystem::eval(last, &self.point).is_positive() {
            return Some(Node {
                sys,
                point: self.point.clone(),
            });
        }
        let point = feasible_point(&sys.forms, sys.n)?;
        Some(Node { sys, point })
    }
}

/// All realisable types with a generic witness each, in canonical order.
pub fn enumerate_types(support: &SupportSet, max_support: usize) -> Result<Vec<ConeEntry>> {
    let n = support.len();
    if n > max_support {
        return Err(Error::SupportTooLarge {
            size: n,
            cap: max_support,
        });
    }
    let pts = support.points();
    let interior = &pts[1..n - 1];
    let subsets: Vec<Vec<i64>> = (0u64..1 << interior.len())
        .map(|mask| {
            let mut w = vec![pts[0]];
            w.extend(
                interior
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, p)| *p),
            );
            w.push(pts[n - 1]);
            w
        })
        .collect();

    let per_w: Vec<Result<Vec<ConeEntry>>> = subsets
        .par_iter()
        .map(|w| enumerate_for_w(support, w))
        .collect();
    let mut out = Vec::new();
    for r in per_w {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.ty.cmp(&b.ty));
    Ok(out)
}

fn enumerate_for_w(support: &SupportSet, w: &[i64]) -> Result<Vec<ConeEntry>> {
    let forms = Forms { support };
    let mut sys = StrictSystem::new(support.len());
    hull_forms(&forms, support, w, &mut sys);
    let Some(point) = feasible_point(&sys.forms, sys.n) else {
        return Ok(Vec::new());
    };
    let root = Node { sys, point };
    let k = w.len() - 1;
    let mut out = Vec::new();
    let mut z = Vec::with_capacity(k);
    let mut used = vec![false; k];
    search_z(support, &forms, w, &root, &mut z, &mut used, &mut out)?;
    Ok(out)
}

fn search_z(
    support: &SupportSet,
    forms: &Forms<'_>,
    w: &[i64],
    node: &Node,
    z: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<ConeEntry>,
) -> Result<()> {
    let k = w.len() - 1;
    if z.len() == k {
        let mut m: Vec<Vec<i64>> = Vec::with_capacity(k);
        return search_m(support, forms, w, z, node, &mut m, out);
    }
    for i in 0..k {
        if used[i] {
            continue;
        }
        let child = match z.last() {
            None => Some(node.clone()),
            Some(&prev) => node.extend(forms.root_order(w, prev, i)),
        };
        if let Some(child) = child {
            used[i] = true;
            z.push(i);
            search_z(support, forms, w, &child, z, used, out)?;
            z.pop();
            used[i] = false;
        }
    }
    Ok(())
}

fn search_m(
    support: &SupportSet,
    forms: &Forms<'_>,
    w: &[i64],
    z: &[usize],
    node: &Node,
    m: &mut Vec<Vec<i64>>,
    out: &mut Vec<ConeEntry>,
) -> Result<()> {
    let k = w.len() - 1;
    let full = support.len() - 2;
    // advance to the first incomplete sequence
    let j = match m.iter().position(|s| s.len() < full) {
        Some(j) => j,
        None if m.len() < k => {
            m.push(Vec::new());
            let r = search_m(support, forms, w, z, node, m, out);
            m.pop();
            return r;
        }
        None => {
            let ty = CombinatorialType {
                w: w.to_vec(),
                z: z.to_vec(),
                m: m.clone(),
            };
            let sys = cone_constraints(support, &ty);
            debug_assert!(sys.strictly_satisfied(&node.point));
            let witness = generic_witness(support, &sys, &ty, &node.point)?;
            out.push(ConeEntry { ty, witness });
            return Ok(());
        }
    };
    let candidates: Vec<i64> = support
        .points()
        .iter()
        .copied()
        .filter(|p| *p != w[j] && *p != w[j + 1] && !m[j].contains(p))
        .collect();
    for p in candidates {
        let child = match m[j].last() {
            None => Some(node.clone()),
            Some(&prev) => node.extend(forms.monomial_order(w, j, prev, p)),
        };
        if let Some(child) = child {
            m[j].push(p);
            search_m(support, forms, w, z, &child, m, out)?;
            m[j].pop();
        }
    }
    Ok(())
}
