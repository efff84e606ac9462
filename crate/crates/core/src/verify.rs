//! Seeded property checks that compare independent routes to the same quantity.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::Result;
use crate::fiber::{
    area_n, area_n_coeffs, fiber_polygon_of, residuals_vanish, strata_counts, system_residuals,
    vol_p_coeffs, vol_p_positive_coeffs,
};
use crate::polytope::{build_polytope, MorsePolytope};
use crate::rational::{dot, int, Rational};
use crate::singularity::{c_value, c_value_via_levels, first_gap_times_volume};
use crate::support_fn::{mu_coeffs, mu_coeffs_positive, ShiftConfig};
use crate::tropical::{extract, CombinatorialType, Covector, SupportSet};

pub const DEFAULT_BOUND: i64 = 50;

/// Draws integer covectors uniformly from `{0, …, bound}^|A|` until one is Morse.
///
/// Returns the covector, its type, and how many draws were rejected.
pub fn sample_integer_morse(
    support: &SupportSet,
    rng: &mut impl Rng,
    bound: i64,
) -> (Covector, CombinatorialType, usize) {
    let mut rejected = 0;
    loop {
        let vals: Vec<i64> = (0..support.len()).map(|_| rng.gen_range(0..=bound)).collect();
        let g = Covector::from_ints(support, &vals).expect("nonnegative draw");
        match extract(support, &g) {
            Ok(t) => return (g, t, rejected),
            Err(_) => rejected += 1,
        }
    }
}

/// Like [`sample_integer_morse`] with entries `p/q`, `q` drawn from `1..=12`.
pub fn sample_rational_morse(
    support: &SupportSet,
    rng: &mut impl Rng,
    bound: i64,
) -> (Covector, CombinatorialType, usize) {
    let mut rejected = 0;
    loop {
        let vals: Vec<Rational> = (0..support.len())
            .map(|_| {
                let q = rng.gen_range(1..=12i64);
                Rational::new(BigInt::from(rng.gen_range(0..=bound * q)), BigInt::from(q))
            })
            .collect();
        let g = Covector::new(support, vals).expect("nonnegative draw");
        match extract(support, &g) {
            Ok(t) => return (g, t, rejected),
            Err(_) => rejected += 1,
        }
    }
}

pub fn random_positive_rational(rng: &mut impl Rng) -> Rational {
    let q = rng.gen_range(1..=20i64);
    Rational::new(BigInt::from(rng.gen_range(1..=20 * q)), BigInt::from(q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub bound: i64,
    pub shift: ShiftConfig,
    pub max_support: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 200,
            seed: 7,
            bound: DEFAULT_BOUND,
            shift: ShiftConfig::zero(),
            max_support: crate::cones::DEFAULT_MAX_SUPPORT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub skipped: Option<String>,
    pub counterexample: Option<String>,
}

impl PropertyReport {
    fn new(name: &'static str) -> Self {
        PropertyReport {
            name,
            checked: 0,
            failures: 0,
            skipped: None,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub support: SupportSet,
    pub config: VerifyConfig,
    pub resamples: usize,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let props: Vec<_> = self
            .properties
            .iter()
            .map(|p| {
                json!({
                    "name": p.name,
                    "passed": p.passed(),
                    "checked": p.checked,
                    "failures": p.failures,
                    "skipped": p.skipped,
                    "counterexample": p.counterexample,
                })
            })
            .collect();
        json!({
            "A": self.support.points(),
            "seed": self.config.seed,
            "samples": self.config.samples,
            "bound": self.config.bound,
            "shift": [self.config.shift.c1, self.config.shift.c2],
            "resamples": self.resamples,
            "passed": self.passed(),
            "properties": props,
        })
    }
}

/// Highest-pairing vertex, or `None` when the maximum is attained twice.
pub fn unique_argmax(poly: &MorsePolytope, gamma: &Covector) -> Option<(usize, Rational)> {
    let mut best: Option<(usize, Rational)> = None;
    let mut tied = false;
    for (i, v) in poly.vertices.iter().enumerate() {
        let val = v.pair(gamma);
        match &best {
            Some((_, b)) if val < *b => {}
            Some((_, b)) if val == *b => tied = true,
            _ => {
                best = Some((i, val));
                tied = false;
            }
        }
    }
    if tied {
        None
    } else {
        best
    }
}

/// Runs every property on `cfg.samples` seeded Morse covectors.
pub fn run_verify(support: &SupportSet, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let shift = cfg.shift;
    let mut cj = PropertyReport::new("cj_dual_route");
    let mut gap = PropertyReport::new("cj_first_gap");
    let mut vol = PropertyReport::new("vol_p_dual_route");
    let mut area = PropertyReport::new("area_n_dual_route");
    let mut strata = PropertyReport::new("strata_system");
    let mut parity = PropertyReport::new("strata_parity");
    let mut dom = PropertyReport::new("mu_dominance");
    let mut homog = PropertyReport::new("mu_homogeneity");
    let mut ext = PropertyReport::new("extract_homogeneity");
    let mut locality = PropertyReport::new("shift_locality");
    let mut special = PropertyReport::new("positive_specialization");

    let poly = match build_polytope(support, shift, cfg.max_support) {
        Ok(p) => Some(p),
        Err(e) => {
            dom.skipped = Some(e.to_string());
            None
        }
    };
    if !support.is_positive() {
        special.skipped = Some("support has nonpositive exponents".into());
    }

    let mut resamples = 0;
    for _ in 0..cfg.samples {
        let (g, t, r) = sample_integer_morse(support, &mut rng, cfg.bound);
        resamples += r;
        let show = || format!("gamma={g} type={t}");

        for j in 0..t.k() {
            let b = c_value(support, &g, &t, j);
            let l = c_value_via_levels(support, &g, &t, j)?;
            cj.record(b == l, || format!("{} j={j}: ladder {b}, levels {l}", show()));

            if let Some(got) = first_gap_times_volume(support, &g, &t, j)? {
                let m = t.m[j][0];
                let (wl, wr) = (t.w[j], t.w[j + 1]);
                let expected = g.at(support, wl) * int(wr - m) + g.at(support, wr) * int(m - wl)
                    - g.at(support, m) * int(wr - wl);
                gap.record(Rational::from_integer(got.clone()) == expected, || {
                    format!("{} j={j}: gap {got}, expected {expected}", show())
                });
            }
        }

        let closed = dot(&vol_p_coeffs(support, &t), g.values());
        let stacked = fiber_polygon_of(support, &g, &t).volume();
        vol.record(closed == stacked, || format!("{}: closed {closed}, trapezoids {stacked}", show()));

        let shoelace = area_n(support, &g);
        let formula = dot(&area_n_coeffs(support, &t.w), g.values());
        area.record(shoelace == formula, || format!("{}: shoelace {shoelace}, formula {formula}", show()));

        let counts = strata_counts(support, &g, shift)?;
        let res = system_residuals(support, &g, &counts)?;
        strata.record(residuals_vanish(&res), || {
            format!("{}: residuals {}", show(), crate::fiber::describe_residuals(&res))
        });
        parity.record(counts.parity_ok(), || format!("{}: |2A1| = {}", show(), counts.n_2a1));

        let mu_v = mu_coeffs(support, &t, shift);
        let mu = mu_v.pair(&g);
        if let Some(poly) = &poly {
            let own = poly.vertices.binary_search(&mu_v).ok();
            let best = unique_argmax(poly, &g);
            let ok = matches!((own, &best), (Some(i), Some((b, val))) if i == *b && *val == mu);
            dom.record(ok, || format!("{}: mu {mu}, argmax {best:?}, own vertex {own:?}", show()));
        }

        let lambda = random_positive_rational(&mut rng);
        let scaled = g.scaled(&lambda);
        let t2 = extract(support, &scaled);
        ext.record(t2.as_ref() == Ok(&t), || format!("{}: lambda {lambda}", show()));
        let mu2 = mu_coeffs(support, &t, shift).pair(&scaled);
        homog.record(mu2 == &mu * &lambda, || format!("{}: lambda {lambda}", show()));

        let moved = mu_coeffs(support, &t, ShiftConfig::new(shift.c1 + 1, shift.c2 - 2));
        let n = support.len();
        let expected: Vec<i64> = mu_v
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c + i64::from(i == 0) - 2 * i64::from(i == n - 1))
            .collect();
        locality.record(moved.coeffs == expected, show);

        if special.skipped.is_none() {
            let pos = mu_coeffs_positive(support, &t, shift)?;
            let vpos = vol_p_positive_coeffs(support, &t)?;
            let z_id = t.z.iter().enumerate().all(|(i, z)| i == *z);
            special.record(pos == mu_v && vpos == vol_p_coeffs(support, &t) && z_id, show);
        }
    }

    Ok(VerifyReport {
        support: support.clone(),
        config: cfg.clone(),
        resamples,
        properties: vec![cj, gap, vol, area, strata, parity, dom, homog, ext, locality, special],
    })
}
