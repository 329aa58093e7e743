use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Piecewise-linear curve over capture-plane distance (meters). Evaluation
/// clamps outside the knot range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PiecewiseCurve {
    pub points: Vec<(f64, f64)>,
}

impl PiecewiseCurve {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("curve needs at least one point"));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::invalid(format!(
                    "curve x-coordinates must be strictly increasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::invalid("curve points must be finite"));
        }
        Ok(Self { points })
    }

    pub fn constant(y: f64) -> Self {
        Self {
            points: vec![(0.0, y)],
        }
    }

    /// Two-knot ramp from `(0, y0)` to `(x1, y1)`.
    pub fn ramp(y0: f64, x1: f64, y1: f64) -> Self {
        Self {
            points: vec![(0.0, y0), (x1, y1)],
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let pts = &self.points;
        if x <= pts[0].0 {
            return pts[0].1;
        }
        if x >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        for w in pts.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x <= x1 {
                let t = (x - x0) / (x1 - x0);
                return y0 + t * (y1 - y0);
            }
        }
        unreachable!("knots are sorted");
    }

    pub fn min_value(&self) -> f64 {
        self.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.1)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MobilityClass {
    Slow,
    Fast,
}

impl std::fmt::Display for MobilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MobilityClass::Slow => write!(f, "slow"),
            MobilityClass::Fast => write!(f, "fast"),
        }
    }
}

/// Per-application micromobility description plus its calibration scales.
///
/// Speeds are capture-plane speeds (m/s) as a function of distance from the
/// aligned position; `plane_to_angle` (deg/m) converts them into angular
/// beam-center motion at the receiver. `drift_curve` is the inward pull
/// (0..1) realized as a per-step sign bias, scaled by `drift_gain` (the
/// per-step bias at 1 ms steps is much weaker than the per-capture-frame
/// pull the curves describe; the gain is a calibration knob).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApplicationProfile {
    pub name: String,
    pub class: MobilityClass,
    pub speed_curve: PiecewiseCurve,
    pub drift_curve: PiecewiseCurve,
    /// Sign correlation between the x and y increments, in [-1, 1].
    pub axis_corr: f64,
    /// Degrees of beam-center offset per meter of capture-plane motion.
    pub plane_to_angle: f64,
    /// Scale on `drift_curve` (and the per-axis drift curves).
    pub drift_gain: f64,
    /// Per-axis speed curves (m/s vs per-axis plane distance), used by the
    /// decomposed per-axis generators.
    pub x_speed_curve: PiecewiseCurve,
    pub y_speed_curve: PiecewiseCurve,
    pub x_drift_curve: PiecewiseCurve,
    pub y_drift_curve: PiecewiseCurve,
    /// Hold the beam center at the origin for this long before walking
    /// (emulates the idle stretch before the application engages).
    #[serde(default)]
    pub start_delay_ms: f64,
}

impl ApplicationProfile {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::invalid("profile name must be non-empty"));
        }
        for (label, curve) in [
            ("speed_curve", &self.speed_curve),
            ("x_speed_curve", &self.x_speed_curve),
            ("y_speed_curve", &self.y_speed_curve),
        ] {
            if curve.min_value() < 0.0 {
                return Err(Error::invalid(format!(
                    "{}.{label} must be non-negative",
                    self.name
                )));
            }
        }
        for (label, curve) in [
            ("drift_curve", &self.drift_curve),
            ("x_drift_curve", &self.x_drift_curve),
            ("y_drift_curve", &self.y_drift_curve),
        ] {
            if curve.min_value() < 0.0 || curve.max_value() > 1.0 {
                return Err(Error::invalid(format!(
                    "{}.{label} values must lie in [0, 1]",
                    self.name
                )));
            }
        }
        if !(-1.0..=1.0).contains(&self.axis_corr) {
            return Err(Error::invalid(format!(
                "{}.axis_corr must lie in [-1, 1]",
                self.name
            )));
        }
        if !(self.plane_to_angle > 0.0) || !self.plane_to_angle.is_finite() {
            return Err(Error::invalid(format!(
                "{}.plane_to_angle must be positive",
                self.name
            )));
        }
        if !(0.0..=1.0).contains(&self.drift_gain) {
            return Err(Error::invalid(format!(
                "{}.drift_gain must lie in [0, 1]",
                self.name
            )));
        }
        if self.start_delay_ms < 0.0 {
            return Err(Error::invalid(format!(
                "{}.start_delay_ms must be non-negative",
                self.name
            )));
        }
        // The four bundled names carry a fixed class; custom names are free.
        let expected = match self.name.as_str() {
            "video" | "call" => Some(MobilityClass::Slow),
            "vr" | "racing" => Some(MobilityClass::Fast),
            _ => None,
        };
        if let Some(class) = expected {
            if self.class != class {
                return Err(Error::invalid(format!(
                    "profile `{}` must have class {class}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Effective inward-bias probability increment at radial plane distance
    /// `d_m`, clamped so the per-axis sign probability stays in [0, 1].
    pub fn drift_at(&self, d_m: f64) -> f64 {
        (self.drift_curve.eval(d_m) * self.drift_gain).clamp(0.0, 1.0)
    }
}

/// The four bundled application profiles. Curve knots span one meter of
/// capture-plane distance; `plane_to_angle` and `drift_gain` carry the
/// bundled channel calibration (see `channel::calibrate_channel` for how
/// they are re-derived).
pub fn standard_profiles() -> Vec<ApplicationProfile> {
    vec![
        ApplicationProfile {
            name: "video".into(),
            class: MobilityClass::Slow,
            speed_curve: PiecewiseCurve::ramp(3.0, 1.0, 10.0),
            drift_curve: PiecewiseCurve::ramp(0.17, 1.0, 0.11),
            axis_corr: 0.0,
            plane_to_angle: 40.0,
            drift_gain: 0.8,
            x_speed_curve: PiecewiseCurve::ramp(1.0, 1.0, 6.0),
            y_speed_curve: PiecewiseCurve::ramp(2.0, 1.0, 8.0),
            x_drift_curve: PiecewiseCurve::ramp(0.17, 1.0, 0.05),
            y_drift_curve: PiecewiseCurve::ramp(0.17, 1.0, 0.21),
            start_delay_ms: 0.0,
        },
        ApplicationProfile {
            name: "call".into(),
            class: MobilityClass::Slow,
            speed_curve: PiecewiseCurve::constant(7.0),
            drift_curve: PiecewiseCurve::ramp(0.17, 1.0, 0.30),
            axis_corr: -0.2,
            plane_to_angle: 12.8,
            drift_gain: 0.01,
            x_speed_curve: PiecewiseCurve::ramp(3.0, 1.0, 6.0),
            y_speed_curve: PiecewiseCurve::ramp(3.0, 1.0, 5.0),
            x_drift_curve: PiecewiseCurve::ramp(0.17, 1.0, 0.13),
            y_drift_curve: PiecewiseCurve::ramp(0.17, 1.0, 0.25),
            start_delay_ms: 0.0,
        },
        ApplicationProfile {
            name: "vr".into(),
            class: MobilityClass::Fast,
            speed_curve: PiecewiseCurve::ramp(9.0, 1.0, 13.0),
            drift_curve: PiecewiseCurve::constant(0.17),
            axis_corr: 0.0,
            plane_to_angle: 29.2,
            drift_gain: 0.02,
            x_speed_curve: PiecewiseCurve::ramp(6.0, 1.0, 9.0),
            y_speed_curve: PiecewiseCurve::ramp(5.0, 1.0, 8.0),
            x_drift_curve: PiecewiseCurve::constant(0.17),
            y_drift_curve: PiecewiseCurve::constant(0.17),
            start_delay_ms: 0.0,
        },
        ApplicationProfile {
            name: "racing".into(),
            class: MobilityClass::Fast,
            speed_curve: PiecewiseCurve::ramp(9.0, 1.0, 5.0),
            drift_curve: PiecewiseCurve::constant(0.17),
            axis_corr: -0.4,
            plane_to_angle: 62.9,
            drift_gain: 0.02,
            x_speed_curve: PiecewiseCurve::ramp(7.0, 1.0, 4.0),
            y_speed_curve: PiecewiseCurve::ramp(3.0, 1.0, 2.0),
            x_drift_curve: PiecewiseCurve::ramp(0.13, 1.0, 0.21),
            y_drift_curve: PiecewiseCurve::ramp(0.19, 1.0, 0.14),
            start_delay_ms: 0.0,
        },
    ]
}

pub fn profile_by_name<'a>(
    profiles: &'a [ApplicationProfile],
    name: &str,
) -> Result<&'a ApplicationProfile> {
    profiles
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::invalid(format!("no profile named `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_interpolates_and_clamps() {
        let c = PiecewiseCurve::ramp(9.0, 1.0, 5.0);
        assert_eq!(c.eval(-0.5), 9.0);
        assert_eq!(c.eval(0.0), 9.0);
        assert!((c.eval(0.5) - 7.0).abs() < 1e-12);
        assert_eq!(c.eval(1.0), 5.0);
        assert_eq!(c.eval(2.0), 5.0);
    }

    #[test]
    fn curve_rejects_unsorted_knots() {
        assert!(PiecewiseCurve::new(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(PiecewiseCurve::new(vec![]).is_err());
    }

    #[test]
    fn bundled_profiles_validate() {
        let profiles = standard_profiles();
        assert_eq!(profiles.len(), 4);
        for p in &profiles {
            p.validate().unwrap();
        }
        let fast: Vec<_> = profiles
            .iter()
            .filter(|p| p.class == MobilityClass::Fast)
            .map(|p| p.name.as_str())
            .collect();
        assert_eq!(fast, ["vr", "racing"]);
    }

    #[test]
    fn class_mismatch_is_rejected() {
        let mut p = standard_profiles().remove(0);
        assert_eq!(p.name, "video");
        p.class = MobilityClass::Fast;
        assert!(p.validate().is_err());
    }

    #[test]
    fn drift_respects_gain_and_clamp() {
        let mut p = standard_profiles().remove(0);
        p.drift_gain = 0.5;
        assert!((p.drift_at(0.0) - 0.085).abs() < 1e-12);
        p.drift_gain = 1.0;
        assert!((p.drift_at(1.0) - 0.11).abs() < 1e-12);
    }
}
