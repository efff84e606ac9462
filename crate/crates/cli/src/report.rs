//! Command bodies. Each returns the full stdout text and an exit status.

use std::fmt::Write;

use anyhow::Context;
use morsekit::fiber::{
    area_n, area_n_formula, fiber_polygon_of, newton_polygon, residuals_vanish, strata_counts, system_residuals,
    vol_p_closed,
};
use morsekit::io::Problem;
use morsekit::polytope::{build_polytope, project_and_hull, MorsePolytope};
use morsekit::rational::{format_rational, rational_to_json};
use morsekit::singularity::{c_coeffs, c_value, c_value_via_levels, chi_fork, gcd_ladder, level_sequence};
use morsekit::support_fn::mu_coeffs;
use morsekit::svg::{render_fiber, render_polygon, SvgOptions};
use morsekit::tropical::{classify, roots_and_values, MorseClass};
use morsekit::verify::{run_verify, VerifyConfig};
use morsekit::{extract, CombinatorialType, Covector, ShiftConfig};
use serde_json::{json, Value};

use crate::{Format, Opts, Outcome, EXIT_DEGENERATE, EXIT_PROPERTY_FAILED};

pub struct Ctx<'a> {
    pub problem: Problem,
    pub shift: ShiftConfig,
    pub opts: &'a Opts,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

impl Ctx<'_> {
    fn json_or_text(&self, value: Value, text: impl FnOnce() -> String) -> String {
        match self.opts.format {
            Format::Json => pretty(&value),
            _ => text(),
        }
    }

    /// The covector and its type, or the degenerate-case report.
    fn morse(&self) -> anyhow::Result<Result<(&Covector, CombinatorialType), Outcome>> {
        let a = &self.problem.support;
        let g = self.problem.require_gamma()?;
        let class = classify(a, g)?;
        if let (MorseClass::Morse, Ok(ty)) = (&class, extract(a, g)) {
            return Ok(Ok((g, ty)));
        }
        let value = json!({
            "A": a.points(),
            "gamma": g.values().iter().map(rational_to_json).collect::<Vec<_>>(),
            "class": class.name(),
            "witness": serde_json::to_value(&class).expect("serializable"),
            "detail": extract(a, g).err().map(|e| e.to_string()),
        });
        let stdout = self.json_or_text(value.clone(), || {
            let mut s = format!("class: {}\n", class.name());
            if let Some(w) = value["witness"].as_object() {
                for (k, v) in w.iter().filter(|(k, _)| *k != "class") {
                    let _ = writeln!(s, "{k}: {v}");
                }
            }
            if let Some(d) = value["detail"].as_str() {
                let _ = writeln!(s, "detail: {d}");
            }
            s
        });
        Ok(Err(Outcome {
            stdout,
            code: EXIT_DEGENERATE,
        }))
    }

    fn polytope_of(&self) -> anyhow::Result<MorsePolytope> {
        build_polytope(&self.problem.support, self.shift, self.opts.max_support_size).context("building the polytope")
    }

    pub fn extract(&self) -> anyhow::Result<Outcome> {
        let (g, ty) = match self.morse()? {
            Ok(v) => v,
            Err(out) => return Ok(out),
        };
        let a = &self.problem.support;
        let roots = roots_and_values(a, g, &ty.w);
        let value = json!({
            "A": a.points(),
            "gamma": g.values().iter().map(rational_to_json).collect::<Vec<_>>(),
            "class": "Morse",
            "W": ty.w,
            "Z": ty.z,
            "M": ty.m,
            "roots": roots.iter().map(|r| json!({"r": rational_to_json(&r.r), "phi": rational_to_json(&r.value)})).collect::<Vec<_>>(),
        });
        Ok(Outcome::ok(self.json_or_text(value, || {
            let mut s = String::from("class: Morse\n");
            let _ = writeln!(s, "W = {}", tuple(&ty.w));
            let z: Vec<i64> = ty.z.iter().map(|&z| z as i64).collect();
            let _ = writeln!(s, "Z = {}", tuple(&z));
            for (j, m) in ty.m.iter().enumerate() {
                let _ = writeln!(s, "M^{j} = {}", tuple(m));
            }
            for (j, r) in roots.iter().enumerate() {
                let _ = writeln!(s, "r_{j} = {}  phi = {}", format_rational(&r.r), format_rational(&r.value));
            }
            s
        })))
    }

    pub fn mu(&self) -> anyhow::Result<Outcome> {
        let (g, ty) = match self.morse()? {
            Ok(v) => v,
            Err(out) => return Ok(out),
        };
        let v = mu_coeffs(&self.problem.support, &ty, self.shift);
        let mu = v.pair(g);
        let value = json!({
            "mu": rational_to_json(&mu),
            "vertex": v,
            "shift": [self.shift.c1, self.shift.c2],
            "type": ty,
        });
        Ok(Outcome::ok(self.json_or_text(value, || {
            format!("mu = {}\nvertex = {}\n", format_rational(&mu), tuple(&v.coeffs))
        })))
    }

    pub fn cj(&self) -> anyhow::Result<Outcome> {
        let (g, ty) = match self.morse()? {
            Ok(v) => v,
            Err(out) => return Ok(out),
        };
        let a = &self.problem.support;
        let integral = g.is_integral();
        let mut rows = Vec::new();
        let mut text = String::new();
        for j in 0..ty.k() {
            let ladder = gcd_ladder(&ty.w, j, &ty.m[j]);
            let coeffs = c_coeffs(a, &ty, j);
            let by_ladder = c_value(a, g, &ty, j);
            let mut row = json!({
                "j": j,
                "edge": [ty.w[j], ty.w[j + 1]],
                "M": ty.m[j],
                "ladder": ladder.entries(),
                "coeffs": coeffs,
                "value": rational_to_json(&by_ladder),
            });
            let _ = writeln!(
                text,
                "C^{j}: edge [{}, {}] ladder {} coeffs {} value {}",
                ty.w[j],
                ty.w[j + 1],
                tuple(ladder.entries()),
                tuple(&coeffs),
                format_rational(&by_ladder)
            );
            if integral {
                let (facet, seq) = level_sequence(a, g, &ty, j)?;
                let by_levels = c_value_via_levels(a, g, &ty, j)?;
                row["facet"] = facet.to_json();
                row["levels"] = seq.to_json();
                row["chi"] = json!(chi_fork(&seq).to_string());
                row["value_via_levels"] = rational_to_json(&by_levels);
                row["routes_agree"] = json!(by_levels == by_ladder);
                let _ = writeln!(
                    text,
                    "     levels route {} ({})",
                    format_rational(&by_levels),
                    if by_levels == by_ladder { "agrees" } else { "DISAGREES" }
                );
            }
            rows.push(row);
        }
        let value = json!({ "A": a.points(), "roots": rows });
        Ok(Outcome::ok(self.json_or_text(value, || text)))
    }

    pub fn fiber(&self) -> anyhow::Result<Outcome> {
        let (g, ty) = match self.morse()? {
            Ok(v) => v,
            Err(out) => return Ok(out),
        };
        let a = &self.problem.support;
        let poly = fiber_polygon_of(a, g, &ty);
        if self.opts.format == Format::Svg {
            return Ok(Outcome::ok(render_fiber(&poly, &SvgOptions::default())));
        }
        let closed = vol_p_closed(a, g)?;
        let shoelace = area_n(a, g);
        let formula = area_n_formula(a, g)?;
        let newton: Vec<Value> = newton_polygon(a, g)
            .vertices
            .iter()
            .map(|p| json!([rational_to_json(&p.x), rational_to_json(&p.y)]))
            .collect();
        let mut value = poly.to_json();
        value["offset"] = json!(poly.offset);
        value["vol_closed"] = rational_to_json(&closed);
        value["area_n"] = rational_to_json(&shoelace);
        value["area_n_formula"] = rational_to_json(&formula);
        value["newton_polygon"] = json!(newton);
        Ok(Outcome::ok(self.json_or_text(value, || {
            let bases: Vec<String> = poly.bases.iter().map(format_rational).collect();
            format!(
                "bases = ({})\nheights = {}\noffset = {}\nvol trapezoids = {}\nvol closed = {}\narea_N shoelace = {}\narea_N formula = {}\n",
                bases.join(","),
                tuple(&poly.heights),
                poly.offset,
                format_rational(&poly.volume()),
                format_rational(&closed),
                format_rational(&shoelace),
                format_rational(&formula)
            )
        })))
    }

    pub fn enumerate(&self) -> anyhow::Result<Outcome> {
        let a = &self.problem.support;
        let cones = morsekit::cones::enumerate_types(a, self.opts.max_support_size)?;
        let rows: Vec<Value> = cones
            .iter()
            .map(|c| {
                json!({
                    "W": c.ty.w,
                    "Z": c.ty.z,
                    "M": c.ty.m,
                    "witness": c.witness.values().iter().map(rational_to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        let value = json!({ "A": a.points(), "count": cones.len(), "types": rows });
        Ok(Outcome::ok(self.json_or_text(value, || {
            let mut s = format!("{} types\n", cones.len());
            for c in &cones {
                let _ = writeln!(s, "{}  witness {}", c.ty, c.witness);
            }
            s
        })))
    }

    fn projection_svg(&self, poly: &MorsePolytope) -> anyhow::Result<String> {
        let axes = self.opts.axes.unwrap_or_else(|| poly.default_axes());
        let hull = project_and_hull(poly, axes)?;
        let opts = SvgOptions {
            title: Some(format!("A = {}, axes {},{}", poly.support, axes.0, axes.1)),
            ..SvgOptions::default()
        };
        Ok(render_polygon(&hull.vertices, &opts))
    }

    pub fn polytope(&self) -> anyhow::Result<Outcome> {
        let poly = self.polytope_of()?;
        if self.opts.format == Format::Svg {
            return Ok(Outcome::ok(self.projection_svg(&poly)?));
        }
        Ok(Outcome::ok(self.json_or_text(poly.to_json(), || {
            let mut s = format!(
                "{} vertices from {} cones, d1 = {}, d2 = {}\n",
                poly.vertices.len(),
                poly.cones.len(),
                poly.d1,
                poly.d2
            );
            for v in &poly.vertices {
                let _ = writeln!(s, "{}", tuple(&v.coeffs));
            }
            s
        })))
    }

    pub fn strata(&self) -> anyhow::Result<Outcome> {
        if let Err(out) = self.morse()? {
            return Ok(out);
        }
        let a = &self.problem.support;
        let g = self.problem.require_gamma()?;
        let counts = strata_counts(a, g, self.shift)?;
        let res = system_residuals(a, g, &counts)?;
        let ok = residuals_vanish(&res);
        let mut value = counts.to_json();
        value["residuals"] = json!(res.iter().map(rational_to_json).collect::<Vec<_>>());
        value["relations_hold"] = json!(ok);
        Ok(Outcome::ok(self.json_or_text(value, || {
            format!(
                "chi(A1) = {}\n|A2| = {}\n|2A1| = {}\nparity {}\nrelations {}\n",
                format_rational(&counts.chi_a1),
                format_rational(&counts.n_a2),
                format_rational(&counts.n_2a1),
                if counts.parity_ok() { "ok" } else { "FAILS" },
                if ok { "hold" } else { "FAIL" }
            )
        })))
    }

    pub fn verify(&self) -> anyhow::Result<Outcome> {
        let cfg = VerifyConfig {
            samples: usize::try_from(self.opts.samples)?,
            seed: self.opts.seed,
            bound: i64::from(self.opts.bound),
            shift: self.shift,
            max_support: self.opts.max_support_size,
        };
        let report = run_verify(&self.problem.support, &cfg)?;
        let stdout = self.json_or_text(report.to_json(), || {
            let mut s = format!(
                "A = {}  seed {}  samples {}  resamples {}\n",
                report.support, cfg.seed, cfg.samples, report.resamples
            );
            for p in &report.properties {
                let status = match (&p.skipped, p.passed()) {
                    (Some(_), _) => "skip",
                    (None, true) => "pass",
                    (None, false) => "FAIL",
                };
                let _ = write!(s, "{status} {} ({}/{})", p.name, p.checked - p.failures, p.checked);
                if let Some(why) = &p.skipped {
                    let _ = write!(s, ": {why}");
                }
                if let Some(c) = &p.counterexample {
                    let _ = write!(s, ": {c}");
                }
                s.push('\n');
            }
            s
        });
        let code = if report.passed() { 0 } else { EXIT_PROPERTY_FAILED };
        Ok(Outcome { stdout, code })
    }

    pub fn plot(&self) -> anyhow::Result<Outcome> {
        if self.problem.gamma.is_some() {
            let (g, ty) = match self.morse()? {
                Ok(v) => v,
                Err(out) => return Ok(out),
            };
            let poly = fiber_polygon_of(&self.problem.support, g, &ty);
            return Ok(Outcome::ok(render_fiber(&poly, &SvgOptions::default())));
        }
        let poly = self.polytope_of()?;
        Ok(Outcome::ok(self.projection_svg(&poly)?))
    }
}
