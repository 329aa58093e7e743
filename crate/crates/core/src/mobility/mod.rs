//! Synthetic beam-center micromobility.
//!
//! A handheld device holding a narrow-beam link wanders around the aligned
//! direction. We model the beam-center offset as a drift-diffusion walk in a
//! ±`fov_half_deg` angular box: each step moves both axes by a
//! distance-dependent magnitude (profile speed curve, converted from
//! capture-plane m/s to deg/step), with the step sign biased back toward the
//! origin (profile drift curve) and optionally correlated between axes.
//!
//! `markov` fits a grid Markov chain to such traces and resamples from it,
//! plus per-axis decomposed generators (1D chains / Brownian).

pub mod markov;
pub mod profile;

pub use markov::{fit_markov2d, sample_decomposed, sample_markov2d, Decomposition, MarkovModel2D};
pub use profile::{
    profile_by_name, standard_profiles, ApplicationProfile, MobilityClass, PiecewiseCurve,
};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularOffset {
    pub x_deg: f64,
    pub y_deg: f64,
}

impl AngularOffset {
    pub const ORIGIN: AngularOffset = AngularOffset {
        x_deg: 0.0,
        y_deg: 0.0,
    };

    pub fn radius_deg(&self) -> f64 {
        self.x_deg.hypot(self.y_deg)
    }
}

/// Beam-center offset samples at a fixed step, starting at t = 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BeamCenterTrace {
    pub app: String,
    pub dt_ms: f64,
    pub samples: Vec<AngularOffset>,
}

impl BeamCenterTrace {
    pub fn duration_ms(&self) -> f64 {
        (self.samples.len().saturating_sub(1)) as f64 * self.dt_ms
    }

    pub fn t_ms(&self, index: usize) -> f64 {
        index as f64 * self.dt_ms
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WalkConfig {
    pub duration_ms: f64,
    pub dt_ms: f64,
    /// Half-width of the angular box; steps reflect at ±this.
    pub fov_half_deg: f64,
    /// Initial offset (the tracker has just aligned, so normally the origin).
    pub start: AngularOffset,
}

impl Default for WalkConfig {
    fn default() -> Self {
        Self {
            duration_ms: 30_000.0,
            dt_ms: 1.0,
            fov_half_deg: 20.0,
            start: AngularOffset::ORIGIN,
        }
    }
}

impl WalkConfig {
    pub fn with_duration(duration_ms: f64) -> Self {
        Self {
            duration_ms,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt_ms > 0.0) || !self.dt_ms.is_finite() {
            return Err(Error::invalid("dt_ms must be positive"));
        }
        if !(self.duration_ms >= self.dt_ms) {
            return Err(Error::invalid("duration_ms must cover at least one step"));
        }
        if !(self.fov_half_deg > 0.0) {
            return Err(Error::invalid("fov_half_deg must be positive"));
        }
        if self.start.x_deg.abs() > self.fov_half_deg || self.start.y_deg.abs() > self.fov_half_deg
        {
            return Err(Error::invalid("start offset lies outside the angular box"));
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        ((self.duration_ms / self.dt_ms) + 1e-9).floor() as usize
    }
}

fn reflect(mut v: f64, half: f64) -> f64 {
    // Steps are small relative to the box, but loop for safety.
    loop {
        if v > half {
            v = 2.0 * half - v;
        } else if v < -half {
            v = -2.0 * half - v;
        } else {
            return v;
        }
    }
}

/// Draw one ±1 sign biased toward the origin for a coordinate at `coord`.
fn biased_sign<R: Rng>(rng: &mut R, coord: f64, p_toward: f64) -> f64 {
    let toward = if coord.abs() < 1e-12 {
        // At the origin there is no inward direction; unbiased.
        return if rng.gen::<f64>() < 0.5 { 1.0 } else { -1.0 };
    } else {
        -coord.signum()
    };
    if rng.gen::<f64>() < p_toward {
        toward
    } else {
        -toward
    }
}

/// Generate one beam-center walk for `profile`.
///
/// Per step the total angular magnitude is
/// `speed_curve(d) * plane_to_angle * dt` (split evenly across axes), the
/// per-axis sign is pulled toward the origin with probability
/// `0.5 + drift/2`, and the y sign copies (or mirrors, for negative
/// correlation) the x sign with probability `|axis_corr|`.
pub fn synth_walk(
    profile: &ApplicationProfile,
    walk: &WalkConfig,
    seed_value: u64,
) -> Result<BeamCenterTrace> {
    profile.validate()?;
    walk.validate()?;

    let n_steps = walk.n_steps();
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut pos = walk.start;
    samples.push(pos);

    let mut rng = seed::rng(seed_value, "walk", 0);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let p2a = profile.plane_to_angle;
    let dt_s = walk.dt_ms / 1000.0;

    for k in 0..n_steps {
        let t_ms = (k + 1) as f64 * walk.dt_ms;
        if t_ms <= profile.start_delay_ms {
            samples.push(pos);
            continue;
        }
        let d_m = pos.radius_deg() / p2a;
        let mag = profile.speed_curve.eval(d_m) * p2a * dt_s * inv_sqrt2;
        let p_toward = 0.5 + profile.drift_at(d_m) / 2.0;

        let sx = biased_sign(&mut rng, pos.x_deg, p_toward);
        let sy = if rng.gen::<f64>() < profile.axis_corr.abs() {
            if profile.axis_corr >= 0.0 {
                sx
            } else {
                -sx
            }
        } else {
            biased_sign(&mut rng, pos.y_deg, p_toward)
        };

        pos = AngularOffset {
            x_deg: reflect(pos.x_deg + mag * sx, walk.fov_half_deg),
            y_deg: reflect(pos.y_deg + mag * sy, walk.fov_half_deg),
        };
        samples.push(pos);
    }

    Ok(BeamCenterTrace {
        app: profile.name.clone(),
        dt_ms: walk.dt_ms,
        samples,
    })
}

/// Generate `count` walks with per-trace seeds derived from `master`.
pub fn synth_ensemble(
    profile: &ApplicationProfile,
    walk: &WalkConfig,
    master: u64,
    count: usize,
) -> Result<Vec<BeamCenterTrace>> {
    use rayon::prelude::*;
    let seeds: Vec<u64> = (0..count)
        .map(|i| seed::derive(master, &format!("walk/{}", profile.name), i as u64))
        .collect();
    seeds
        .par_iter()
        .map(|&s| synth_walk(profile, walk, s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn racing() -> ApplicationProfile {
        standard_profiles()
            .into_iter()
            .find(|p| p.name == "racing")
            .unwrap()
    }

    #[test]
    fn walk_starts_at_origin_and_respects_bounds() {
        let trace = synth_walk(&racing(), &WalkConfig::with_duration(2_000.0), 11).unwrap();
        assert_eq!(trace.samples.len(), 2_001);
        assert_eq!(trace.samples[0], AngularOffset::ORIGIN);
        for s in &trace.samples {
            assert!(s.x_deg.abs() <= 20.0 + 1e-12);
            assert!(s.y_deg.abs() <= 20.0 + 1e-12);
        }
    }

    #[test]
    fn walk_is_deterministic_per_seed() {
        let cfg = WalkConfig::with_duration(500.0);
        let a = synth_walk(&racing(), &cfg, 5).unwrap();
        let b = synth_walk(&racing(), &cfg, 5).unwrap();
        let c = synth_walk(&racing(), &cfg, 6).unwrap();
        assert_eq!(a.samples, b.samples);
        assert_ne!(a.samples, c.samples);
    }

    #[test]
    fn pure_drift_walk_never_moves_outward() {
        // Full inward bias and steps far smaller than the start offset: the
        // distance to the origin must be non-increasing at every step.
        let mut p = racing();
        p.drift_curve = PiecewiseCurve::constant(1.0);
        p.drift_gain = 1.0;
        p.axis_corr = 0.0;
        p.speed_curve = PiecewiseCurve::constant(1.0);
        p.plane_to_angle = 1.0;
        let walk = WalkConfig {
            duration_ms: 500.0,
            start: AngularOffset {
                x_deg: 1.0,
                y_deg: 1.0,
            },
            ..WalkConfig::default()
        };
        let trace = synth_walk(&p, &walk, 3).unwrap();
        for w in trace.samples.windows(2) {
            assert!(
                w[1].radius_deg() <= w[0].radius_deg() + 1e-12,
                "distance increased: {} -> {}",
                w[0].radius_deg(),
                w[1].radius_deg()
            );
        }
        // It actually moved.
        assert!(trace.samples.last().unwrap().radius_deg() < 1.4);
    }

    #[test]
    fn start_delay_holds_the_origin() {
        let mut p = racing();
        p.start_delay_ms = 50.0;
        let trace = synth_walk(&p, &WalkConfig::with_duration(200.0), 9).unwrap();
        for k in 0..=50 {
            assert_eq!(trace.samples[k], AngularOffset::ORIGIN);
        }
        assert_ne!(trace.samples[60], AngularOffset::ORIGIN);
    }

    #[test]
    fn ensemble_step_speed_tracks_the_profile_curve() {
        // Binned mean plane speed must follow the speed curve within 5%.
        let profile = racing();
        let walk = WalkConfig::default(); // 30 s
        let traces = synth_ensemble(&profile, &walk, 77, 1_000).unwrap();

        let bin_w = 0.02; // meters
        let mut sums = vec![0.0f64; 32];
        let mut counts = vec![0usize; 32];
        let dt_s = walk.dt_ms / 1000.0;
        for tr in &traces {
            for w in tr.samples.windows(2) {
                let step_deg =
                    (w[1].x_deg - w[0].x_deg).hypot(w[1].y_deg - w[0].y_deg);
                // Skip steps altered by boundary reflection.
                if w[1].x_deg.abs() > 19.0 || w[1].y_deg.abs() > 19.0 {
                    continue;
                }
                let d_m = w[0].radius_deg() / profile.plane_to_angle;
                let bin = (d_m / bin_w) as usize;
                if bin < sums.len() {
                    sums[bin] += step_deg / (profile.plane_to_angle * dt_s);
                    counts[bin] += 1;
                }
            }
        }
        let mut checked = 0;
        for bin in 0..sums.len() {
            if counts[bin] < 5_000 {
                continue;
            }
            let center = (bin as f64 + 0.5) * bin_w;
            let expect = profile.speed_curve.eval(center);
            let got = sums[bin] / counts[bin] as f64;
            assert!(
                (got - expect).abs() / expect < 0.05,
                "bin {center:.3} m: got {got:.3} m/s, expected {expect:.3} m/s"
            );
            checked += 1;
        }
        assert!(checked >= 3, "too few populated distance bins: {checked}");
    }

    #[test]
    fn axis_sign_correlation_matches_profile() {
        for (corr, tol) in [(0.0, 0.05), (-0.4, 0.1)] {
            let mut p = racing();
            p.axis_corr = corr;
            let walk = WalkConfig::with_duration(2_000.0);
            let (mut sx, mut sy, mut sxy, mut sxx, mut syy, mut n) =
                (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
            for i in 0..150 {
                let tr = synth_walk(&p, &walk, 1_000 + i).unwrap();
                for w in tr.samples.windows(2) {
                    let dx = w[1].x_deg - w[0].x_deg;
                    let dy = w[1].y_deg - w[0].y_deg;
                    sx += dx;
                    sy += dy;
                    sxy += dx * dy;
                    sxx += dx * dx;
                    syy += dy * dy;
                    n += 1.0;
                }
            }
            let cov = sxy / n - (sx / n) * (sy / n);
            let var_x = sxx / n - (sx / n) * (sx / n);
            let var_y = syy / n - (sy / n) * (sy / n);
            let got = cov / (var_x * var_y).sqrt();
            assert!(
                (got - corr).abs() < tol,
                "axis_corr {corr}: empirical {got:.3}"
            );
        }
    }
}
