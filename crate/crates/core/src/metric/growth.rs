use num_rational::Ratio;
use serde::Serialize;

use super::ball::{Ball, BallOptions};
use crate::automorphism::Element;
use crate::error::{Error, Result};
use crate::groups::GeneratingSet;

/// Samples `(r, γ(r))` of the growth function with `γ(r)^(1/r)` estimates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthSeries {
    pub samples: Vec<(u32, u64)>,
    pub rate_estimates: Vec<(u32, f64)>,
}

impl GrowthSeries {
    /// Reads the series off a ball at `0, step, 2·step, …, max_radius`.
    pub fn from_ball(ball: &Ball, max_radius: u32, step: u32) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidParameter("step must be positive".into()));
        }
        let mut samples = Vec::new();
        let mut rate_estimates = Vec::new();
        let mut r = 0;
        while r <= max_radius {
            let gamma = ball.gamma(r);
            samples.push((r, gamma));
            let rate = if r == 0 {
                1.0
            } else {
                (gamma as f64).powf(1.0 / r as f64)
            };
            rate_estimates.push((r, rate));
            r += step;
        }
        Ok(GrowthSeries {
            samples,
            rate_estimates,
        })
    }

    pub fn gamma(&self, r: u32) -> Option<u64> {
        self.samples.iter().find(|&&(s, _)| s == r).map(|&(_, g)| g)
    }

    pub fn is_monotone(&self) -> bool {
        self.samples.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    /// The smallest `C` with `γ(r₁ + r₂) ≤ C·γ(r₁)·γ(r₂)` over all sampled
    /// pairs whose sum is also sampled.
    pub fn submultiplicativity_constant(&self) -> Ratio<u128> {
        let mut worst = Ratio::new(0u128, 1);
        for &(r1, g1) in &self.samples {
            for &(r2, g2) in &self.samples {
                if r2 < r1 {
                    continue;
                }
                if let Some(g12) = self.gamma(r1 + r2) {
                    let c = Ratio::new(g12 as u128, g1 as u128 * g2 as u128);
                    if c > worst {
                        worst = c;
                    }
                }
            }
        }
        worst
    }
}

/// Growth function of the group up to `max_radius`.
pub fn growth_series(
    set: &GeneratingSet,
    max_radius: u32,
    step: u32,
    options: BallOptions,
) -> Result<GrowthSeries> {
    let ball = super::ball::enumerate_ball(set, max_radius, options)?;
    GrowthSeries::from_ball(&ball, max_radius, step)
}

/// Whether `g` fixes every vertex of level at most `level`.
pub fn level_stabilizer_member(g: &Element, level: u32) -> bool {
    g.fixes_level(level)
}
