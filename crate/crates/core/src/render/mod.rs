//! Deterministic SVG rendering of a [`ProfileSet`] and a minimal HTML
//! wrapper around it.
//!
//! A linear axis is split in two when the largest ratio exceeds `tau_max`:
//! the focus region `[tau_min, tau_max]` takes 70% of the plot width and the
//! long-term region `(tau_max, max_ratio]` the remaining 30%, both mapped
//! linearly. A logarithmic axis is a single log10 region.

mod fmt;
mod html;
mod svg;

pub use self::fmt::format_number;
pub use self::html::render_html;
pub use self::svg::render_svg;

use crate::config::{AnalysisConfig, XScale};
use crate::engine::ProfileSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("nothing to plot: every instance was filtered out")]
    NothingToPlot,
    #[error("invalid axis: {0}")]
    InvalidAxis(String),
}

/// Qualitative palette, assigned by solver order and cycled past ten solvers.
pub const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];

const FOCUS_SHARE: f64 = 0.7;

/// A τ interval mapped onto a horizontal pixel interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub tau_lo: f64,
    pub tau_hi: f64,
    pub px_lo: f64,
    pub px_hi: f64,
    pub scale: XScale,
}

impl Region {
    fn project(&self, tau: f64) -> f64 {
        let t = match self.scale {
            XScale::Linear => (tau - self.tau_lo) / (self.tau_hi - self.tau_lo),
            XScale::Logarithmic => {
                (tau.log10() - self.tau_lo.log10()) / (self.tau_hi.log10() - self.tau_lo.log10())
            }
        };
        self.px_lo + t * (self.px_hi - self.px_lo)
    }

    fn unproject(&self, px: f64) -> f64 {
        let t = (px - self.px_lo) / (self.px_hi - self.px_lo);
        match self.scale {
            XScale::Linear => self.tau_lo + t * (self.tau_hi - self.tau_lo),
            XScale::Logarithmic => {
                10f64.powf(self.tau_lo.log10() + t * (self.tau_hi.log10() - self.tau_lo.log10()))
            }
        }
    }
}

/// Resolved plot geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub width: f64,
    pub height: f64,
    pub margin_left: f64,
    pub margin_right: f64,
    pub margin_top: f64,
    pub margin_bottom: f64,
    /// One region, or two for a split linear axis. Boundaries strictly increase.
    pub regions: Vec<Region>,
    pub palette: Vec<&'static str>,
    pub legend_title: String,
}

impl PlotSpec {
    pub const DEFAULT_WIDTH: f64 = 800.0;
    pub const DEFAULT_HEIGHT: f64 = 500.0;

    pub fn new<T: Scalar>(
        profiles: &ProfileSet<T>,
        config: &AnalysisConfig<T>,
    ) -> Result<Self, RenderError> {
        Self::with_size(profiles, config, Self::DEFAULT_WIDTH, Self::DEFAULT_HEIGHT)
    }

    pub fn with_size<T: Scalar>(
        profiles: &ProfileSet<T>,
        config: &AnalysisConfig<T>,
        width: f64,
        height: f64,
    ) -> Result<Self, RenderError> {
        if profiles.is_empty() {
            return Err(RenderError::NothingToPlot);
        }
        let tau_min = config.tau_min.to_f64_lossy();
        let tau_max = config.tau_max.to_f64_lossy();
        if !(tau_min.is_finite() && tau_max.is_finite() && tau_min >= 0.0 && tau_min < tau_max) {
            return Err(RenderError::InvalidAxis(format!(
                "need 0 <= tau_min < tau_max, got [{tau_min}, {tau_max}]"
            )));
        }
        if config.x_scale == XScale::Logarithmic && tau_min <= 0.0 {
            return Err(RenderError::InvalidAxis(
                "a logarithmic axis needs tau_min > 0".into(),
            ));
        }
        let global_max = profiles.max_ratio().map(Scalar::to_f64_lossy);

        let mut spec = PlotSpec {
            width,
            height,
            margin_left: 60.0,
            margin_right: 170.0,
            margin_top: 30.0,
            margin_bottom: 50.0,
            regions: Vec::new(),
            palette: PALETTE.to_vec(),
            legend_title: profiles.metric_name().to_owned(),
        };
        let (left, right) = (spec.plot_left(), spec.plot_right());
        spec.regions = match (config.x_scale, global_max) {
            (XScale::Linear, Some(g)) if g > tau_max => {
                let split = left + FOCUS_SHARE * (right - left);
                vec![
                    Region {
                        tau_lo: tau_min,
                        tau_hi: tau_max,
                        px_lo: left,
                        px_hi: split,
                        scale: XScale::Linear,
                    },
                    Region {
                        tau_lo: tau_max,
                        tau_hi: g,
                        px_lo: split,
                        px_hi: right,
                        scale: XScale::Linear,
                    },
                ]
            }
            (XScale::Linear, _) => vec![Region {
                tau_lo: tau_min,
                tau_hi: tau_max,
                px_lo: left,
                px_hi: right,
                scale: XScale::Linear,
            }],
            (XScale::Logarithmic, g) => vec![Region {
                tau_lo: tau_min,
                tau_hi: g.map_or(tau_max, |g| g.max(tau_max)),
                px_lo: left,
                px_hi: right,
                scale: XScale::Logarithmic,
            }],
        };
        Ok(spec)
    }

    pub fn plot_left(&self) -> f64 {
        self.margin_left
    }

    pub fn plot_right(&self) -> f64 {
        self.width - self.margin_right
    }

    pub fn plot_top(&self) -> f64 {
        self.margin_top
    }

    pub fn plot_bottom(&self) -> f64 {
        self.height - self.margin_bottom
    }

    /// Visible τ domain.
    pub fn tau_range(&self) -> (f64, f64) {
        (
            self.regions[0].tau_lo,
            self.regions[self.regions.len() - 1].tau_hi,
        )
    }

    pub fn is_split(&self) -> bool {
        self.regions.len() > 1
    }

    /// Horizontal pixel for `tau`, clamped to the visible domain.
    pub fn x(&self, tau: f64) -> f64 {
        let (lo, hi) = self.tau_range();
        let tau = tau.clamp(lo, hi);
        let region = self
            .regions
            .iter()
            .find(|r| tau <= r.tau_hi)
            .unwrap_or(&self.regions[self.regions.len() - 1]);
        region.project(tau)
    }

    /// Inverse of [`PlotSpec::x`] inside the plot area.
    pub fn tau_at(&self, px: f64) -> f64 {
        let region = self
            .regions
            .iter()
            .find(|r| px <= r.px_hi)
            .unwrap_or(&self.regions[self.regions.len() - 1]);
        region.unproject(px)
    }

    /// Vertical pixel for a profile value in `[0, 1]`.
    pub fn y(&self, f: f64) -> f64 {
        let f = f.clamp(0.0, 1.0);
        self.plot_bottom() - f * (self.plot_bottom() - self.plot_top())
    }

    pub fn value_at(&self, py: f64) -> f64 {
        (self.plot_bottom() - py) / (self.plot_bottom() - self.plot_top())
    }

    pub fn color(&self, index: usize) -> &'static str {
        self.palette[index % self.palette.len()]
    }

    /// Tick positions: five in the focus region, the endpoint of the long-term region.
    pub fn x_ticks(&self) -> Vec<f64> {
        let focus = &self.regions[0];
        let mut ticks: Vec<f64> = (0..5)
            .map(|k| {
                let t = k as f64 / 4.0;
                match focus.scale {
                    XScale::Linear => focus.tau_lo + t * (focus.tau_hi - focus.tau_lo),
                    XScale::Logarithmic => 10f64.powf(
                        focus.tau_lo.log10() + t * (focus.tau_hi.log10() - focus.tau_lo.log10()),
                    ),
                }
            })
            .collect();
        if let Some(long) = self.regions.get(1) {
            ticks.push(long.tau_hi);
        }
        ticks
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{analyze, parse_dataset};

    fn car_spec(config: impl Fn(AnalysisConfig<f64>) -> AnalysisConfig<f64>) -> PlotSpec {
        let ds = parse_dataset(include_bytes!("../../assets/cars.json")).unwrap();
        let config = config(AnalysisConfig::new(&ds));
        let p = analyze(&ds, &config).unwrap();
        PlotSpec::new(&p, &config).unwrap()
    }

    #[test]
    fn car_linear_axis_splits_at_two_and_ends_at_twelve() {
        let spec = car_spec(|c| c);
        assert!(spec.is_split());
        assert_eq!((spec.regions[0].tau_lo, spec.regions[0].tau_hi), (0.0, 2.0));
        assert_eq!(
            (spec.regions[1].tau_lo, spec.regions[1].tau_hi),
            (2.0, 12.0)
        );
        let focus = spec.regions[0].px_hi - spec.regions[0].px_lo;
        let long = spec.regions[1].px_hi - spec.regions[1].px_lo;
        assert!((focus / (focus + long) - 0.7).abs() < 1e-12);
        assert_eq!(spec.x_ticks(), [0.0, 0.5, 1.0, 1.5, 2.0, 12.0]);
    }

    #[test]
    fn wide_window_has_single_region() {
        let spec = car_spec(|c| c.with_tau_window(0.0, 20.0));
        assert!(!spec.is_split());
        assert_eq!(spec.tau_range(), (0.0, 20.0));
    }

    #[test]
    fn log_axis_is_single_region() {
        let spec = car_spec(|c| {
            c.with_x_scale(XScale::Logarithmic)
                .with_tau_window(1.0, 2.0)
        });
        assert_eq!(spec.regions.len(), 1);
        assert_eq!(spec.tau_range(), (1.0, 12.0));
        let mid = spec.x(12f64.sqrt());
        assert!((mid - (spec.plot_left() + spec.plot_right()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn projection_round_trips() {
        for spec in [
            car_spec(|c| c),
            car_spec(|c| {
                c.with_x_scale(XScale::Logarithmic)
                    .with_tau_window(0.5, 2.0)
            }),
        ] {
            for tau in [0.5, 1.0, 1.7, 2.0, 3.3, 12.0] {
                assert!((spec.tau_at(spec.x(tau)) - tau).abs() < 1e-9, "{tau}");
            }
            assert!((spec.value_at(spec.y(0.25)) - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_profiles_cannot_be_plotted() {
        let ds = parse_dataset(include_bytes!("../../assets/cars.json")).unwrap();
        let config = AnalysisConfig::new(&ds).with_active_labels(Vec::<String>::new());
        let p = analyze(&ds, &config).unwrap();
        assert_eq!(PlotSpec::new(&p, &config), Err(RenderError::NothingToPlot));
    }
}
