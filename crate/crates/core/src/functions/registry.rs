//! Named test problems with closed-form integrals.
//!
//! Spellings accepted by [`registry_problem`] (and the CLI `--problem`
//! flag); parameters are `key=value` pairs after a colon:
//!
//! * `const[:value=V]` — constant V in every coordinate.
//! * `poly[:deg=D]` — coordinate c is the tensor monomial prod_a t_a^e with
//!   e = (c mod D) + 1; per-axis degree at most D.
//! * `expsum[:seed=S]` — coordinate j is c_j exp(w_j . t); without a seed
//!   all c_j = 1 and w_j = (1,...,1), with a seed the coefficients are drawn
//!   reproducibly from it.
//! * `trig[:freq=F]` — coordinate c is prod_a sin(2 pi (F+c) t_a).
//! * `trig:octaves=J,decay=Q[,freq=F]` — lacunary sum over j <= J of
//!   2^(-jQ) prod_a sin(2 pi (F+c) 2^j t_a); certified smoothness
//!   ceil(Q) - 1. The partial sums keep the same derivative-decay profile
//!   at every scale the octaves cover, which makes the family a sharp
//!   test problem for interpolation-based integrators.
//! * `coordinate-mix` — coordinate c is prod_a t_a^e + sin(2 pi (c+1) t_1)/(c+1)
//!   with e = (c mod 3) + 1; distinct smooth coordinates.
//!
//! Every entry certifies its smoothness conservatively and stores a
//! documented upper bound for the derivative norm at that order.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::Rng;

use super::TestProblem;
use crate::error::{CoreError, Result};
use crate::seeding::{self, DOMAIN_PROBLEM};
use crate::spaces::{Element, SpaceDescriptor};

/// Smoothness certificate used for infinitely differentiable entries.
const SMOOTH_CAP: u32 = 8;

/// Builds the registry problem named by `spec` on \[0,1\]^d into `space`.
pub fn registry_problem(spec: &str, d: usize, space: SpaceDescriptor) -> Result<TestProblem> {
    let (name, params) = parse_spec(spec)?;
    match name.as_str() {
        "const" => build_const(spec, d, space, params),
        "poly" => build_poly(spec, d, space, params),
        "expsum" => build_expsum(spec, d, space, params),
        "trig" => build_trig(spec, d, space, params),
        "coordinate-mix" => build_coordinate_mix(spec, d, space, params),
        other => Err(CoreError::UnknownProblem(other.to_string())),
    }
}

struct Params<'a> {
    spec: &'a str,
    map: BTreeMap<String, String>,
}

impl Params<'_> {
    fn bad(&self, msg: impl Into<String>) -> CoreError {
        CoreError::ParseProblem(self.spec.to_string(), msg.into())
    }

    fn f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<f64>()
                .map_err(|_| self.bad(format!("parameter `{key}` must be a number"))),
        }
    }

    fn u64_opt(&self, key: &str) -> Result<Option<u64>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| self.bad(format!("parameter `{key}` must be a non-negative integer"))),
        }
    }

    fn finish(&self, known: &[&str]) -> Result<()> {
        for k in self.map.keys() {
            if !known.contains(&k.as_str()) {
                return Err(self.bad(format!("unknown parameter `{k}`")));
            }
        }
        Ok(())
    }
}

fn parse_spec(spec: &str) -> Result<(String, Params<'_>)> {
    let (name, rest) = match spec.split_once(':') {
        None => (spec, ""),
        Some((n, r)) => (n, r),
    };
    let mut map = BTreeMap::new();
    if !rest.is_empty() {
        for pair in rest.split(',') {
            let (k, v) = pair.split_once('=').ok_or_else(|| {
                CoreError::ParseProblem(spec.to_string(), format!("expected key=value, got `{pair}`"))
            })?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    Ok((name.to_string(), Params { spec, map }))
}

fn build_const(
    spec: &str,
    d: usize,
    space: SpaceDescriptor,
    params: Params<'_>,
) -> Result<TestProblem> {
    let value = params.f64("value", 1.0)?;
    params.finish(&["value"])?;
    let element = space.splat(value);
    let bound = space.norm(&element)?;
    let out = element.clone();
    TestProblem::new(
        spec,
        d,
        space,
        SMOOTH_CAP,
        bound,
        Some(element),
        move |_t| out.clone(),
    )
}

fn falling_factorial_max(e: usize) -> f64 {
    (1..=e).map(|i| i as f64).product::<f64>().max(1.0)
}

fn build_poly(
    spec: &str,
    d: usize,
    space: SpaceDescriptor,
    params: Params<'_>,
) -> Result<TestProblem> {
    let deg = params.f64("deg", 2.0)?;
    params.finish(&["deg"])?;
    if deg < 1.0 || deg.fract() != 0.0 || deg > 16.0 {
        return Err(CoreError::ParseProblem(
            spec.to_string(),
            "deg must be an integer in 1..=16".into(),
        ));
    }
    let deg = deg as usize;
    let m = space.dim();
    let exponents: Vec<usize> = (0..m).map(|c| (c % deg) + 1).collect();
    let exact: Vec<f64> = exponents
        .iter()
        .map(|&e| (1.0 / (e as f64 + 1.0)).powi(d as i32))
        .collect();
    let bound_vec: Vec<f64> = exponents
        .iter()
        .map(|&e| falling_factorial_max(e).powi(d as i32))
        .collect();
    let bound = space.norm(&Element::new(bound_vec))?;
    let exps = exponents.clone();
    TestProblem::new(
        spec,
        d,
        space,
        SMOOTH_CAP,
        bound,
        Some(Element::new(exact)),
        move |t| {
            let coords = exps
                .iter()
                .map(|&e| t.iter().map(|&ta| ta.powi(e as i32)).product())
                .collect();
            Element::new(coords)
        },
    )
}

fn expm1_over(w: f64) -> f64 {
    if w == 0.0 {
        1.0
    } else {
        w.exp_m1() / w
    }
}

fn build_expsum(
    spec: &str,
    d: usize,
    space: SpaceDescriptor,
    params: Params<'_>,
) -> Result<TestProblem> {
    let seed = params.u64_opt("seed")?;
    params.finish(&["seed"])?;
    let m = space.dim();
    let mut amps = vec![1.0; m];
    let mut weights = vec![vec![1.0; d]; m];
    if let Some(s) = seed {
        let mut rng = seeding::stream_rng(s, DOMAIN_PROBLEM, 0);
        for j in 0..m {
            amps[j] = 0.5 + rng.gen::<f64>();
            for w in weights[j].iter_mut() {
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                *w = sign * (0.25 + 1.75 * rng.gen::<f64>());
            }
        }
    }
    let exact: Vec<f64> = (0..m)
        .map(|j| amps[j] * weights[j].iter().map(|&w| expm1_over(w)).product::<f64>())
        .collect();
    let bound_vec: Vec<f64> = (0..m)
        .map(|j| {
            let growth: f64 = weights[j].iter().map(|&w| w.max(0.0)).sum();
            let deriv: f64 = weights[j]
                .iter()
                .map(|&w| w.abs().max(1.0))
                .product::<f64>()
                .powi(SMOOTH_CAP as i32);
            amps[j] * deriv * growth.exp()
        })
        .collect();
    let bound = space.norm(&Element::new(bound_vec))?;
    TestProblem::new(
        spec,
        d,
        space,
        SMOOTH_CAP,
        bound,
        Some(Element::new(exact)),
        move |t| {
            let coords = amps
                .iter()
                .zip(&weights)
                .map(|(&c, w)| c * w.iter().zip(t).map(|(&wa, &ta)| wa * ta).sum::<f64>().exp())
                .collect();
            Element::new(coords)
        },
    )
}

fn build_trig(
    spec: &str,
    d: usize,
    space: SpaceDescriptor,
    params: Params<'_>,
) -> Result<TestProblem> {
    let freq = params.f64("freq", 1.0)?;
    let octaves = params.u64_opt("octaves")?;
    let decay = params.f64("decay", f64::NAN)?;
    params.finish(&["freq", "octaves", "decay"])?;
    if freq < 1.0 || freq.fract() != 0.0 {
        return Err(CoreError::ParseProblem(
            spec.to_string(),
            "freq must be a positive integer".into(),
        ));
    }
    let m = space.dim();
    let freqs: Vec<f64> = (0..m).map(|c| freq + c as f64).collect();

    match octaves {
        None => {
            let bound_vec: Vec<f64> = freqs
                .iter()
                .map(|&f| (TAU * f).powi(SMOOTH_CAP as i32))
                .collect();
            let bound = space.norm(&Element::new(bound_vec))?;
            let fr = freqs.clone();
            TestProblem::new(
                spec,
                d,
                space,
                SMOOTH_CAP,
                bound,
                Some(space.zero()),
                move |t| {
                    let coords = fr
                        .iter()
                        .map(|&f| t.iter().map(|&ta| (TAU * f * ta).sin()).product())
                        .collect();
                    Element::new(coords)
                },
            )
        }
        Some(octaves) => {
            if !decay.is_finite() || decay <= 1.0 {
                return Err(CoreError::ParseProblem(
                    spec.to_string(),
                    "lacunary mode needs decay > 1".into(),
                ));
            }
            if octaves > 24 {
                return Err(CoreError::ParseProblem(
                    spec.to_string(),
                    "octaves must be at most 24".into(),
                ));
            }
            let smoothness = decay.ceil() as u32 - 1;
            let amps: Vec<f64> = (0..=octaves)
                .map(|j| 2.0_f64.powf(-(j as f64) * decay))
                .collect();
            let bound_vec: Vec<f64> = freqs
                .iter()
                .map(|&f| {
                    amps.iter()
                        .enumerate()
                        .map(|(j, &a)| a * (TAU * f * 2.0_f64.powi(j as i32)).powi(smoothness as i32))
                        .sum()
                })
                .collect();
            let bound = space.norm(&Element::new(bound_vec))?;
            let fr = freqs.clone();
            TestProblem::new(
                spec,
                d,
                space,
                smoothness,
                bound,
                Some(space.zero()),
                move |t| {
                    let coords = fr
                        .iter()
                        .map(|&f| {
                            amps.iter()
                                .enumerate()
                                .map(|(j, &a)| {
                                    let scale = TAU * f * 2.0_f64.powi(j as i32);
                                    a * t.iter().map(|&ta| (scale * ta).sin()).product::<f64>()
                                })
                                .sum()
                        })
                        .collect();
                    Element::new(coords)
                },
            )
        }
    }
}

fn build_coordinate_mix(
    spec: &str,
    d: usize,
    space: SpaceDescriptor,
    params: Params<'_>,
) -> Result<TestProblem> {
    params.finish(&[])?;
    let m = space.dim();
    let exponents: Vec<usize> = (0..m).map(|c| (c % 3) + 1).collect();
    let exact: Vec<f64> = exponents
        .iter()
        .map(|&e| (1.0 / (e as f64 + 1.0)).powi(d as i32))
        .collect();
    let bound_vec: Vec<f64> = exponents
        .iter()
        .enumerate()
        .map(|(c, &e)| {
            let wave = TAU * (c as f64 + 1.0);
            falling_factorial_max(e).powi(d as i32) + wave.powi(SMOOTH_CAP as i32) / (c as f64 + 1.0)
        })
        .collect();
    let bound = space.norm(&Element::new(bound_vec))?;
    let exps = exponents.clone();
    TestProblem::new(
        spec,
        d,
        space,
        SMOOTH_CAP,
        bound,
        Some(Element::new(exact)),
        move |t| {
            let coords = exps
                .iter()
                .enumerate()
                .map(|(c, &e)| {
                    let poly: f64 = t.iter().map(|&ta| ta.powi(e as i32)).product();
                    let k = c as f64 + 1.0;
                    poly + (TAU * k * t[0]).sin() / k
                })
                .collect();
            Element::new(coords)
        },
    )
}
