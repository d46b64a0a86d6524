//! Product rules for integrals over the finite chart against
//! `(1 + |z|²)^{-2} dη(z)`, `dη = π^{-1} dx dy`.
//!
//! With `t = |z|² / (1 + |z|²)` and `z = √(t/(1-t)) e^{iθ}` the measure becomes
//! `(2π)^{-1} dt dθ` on `[0, 1) × [0, 2π)`. The radial factor uses
//! Gauss–Legendre on `t`, the angular factor a uniform trapezoid in `θ`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::monopole::SpinLevel;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    angular_count: usize,
    radial: Vec<(f64, f64)>,
}

/// One node of the product rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureNode {
    pub z: Complex64,
    /// `|z|²`
    pub u: f64,
    /// Weight for `∫ f(z) (1 + |z|²)^{-2} dη(z)`.
    pub weight: f64,
}

impl QuadratureNode {
    /// Weight for `∫ f(z) dη(z)`.
    pub fn lebesgue_weight(&self) -> f64 {
        self.weight * (1.0 + self.u).powi(2)
    }
}

impl QuadratureRule {
    pub fn new(angular_count: usize, radial_count: usize) -> Result<Self> {
        let radial_count = NonZeroUsize::new(radial_count)
            .ok_or_else(|| Error::Parameter("radial node count must be positive".into()))?;
        if angular_count == 0 {
            return Err(Error::Parameter(
                "angular node count must be positive".into(),
            ));
        }
        let gl = GaussLegendre::new(radial_count);
        let radial = gl
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        Ok(Self {
            angular_count,
            radial,
        })
    }

    /// Rule sized for the products of two level-`(ν, m)` basis functions:
    /// `2(2ν+2m)+1` angles and `2ν+2m+4` radial nodes.
    pub fn for_level(level: SpinLevel) -> Self {
        let n = level.oscillator_n() as usize;
        Self::new(2 * n + 1, n + 4).expect("counts are positive")
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn radial_count(&self) -> usize {
        self.radial.len()
    }

    /// Highest angular frequency `|n|` with `Σ_a e^{i n θ_a} / M` exact.
    pub fn max_frequency(&self) -> usize {
        self.angular_count - 1
    }

    /// Highest polynomial degree in `t` integrated exactly on `[0, 1]`.
    pub fn max_degree(&self) -> usize {
        2 * self.radial.len() - 1
    }

    pub fn radial_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        self.radial.iter().map(|&(t, _)| t)
    }

    pub fn radial_weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.radial.iter().map(|&(_, w)| w)
    }

    /// Same rule with both node counts doubled.
    pub fn doubled(&self) -> Self {
        Self::new(2 * self.angular_count, 2 * self.radial.len()).expect("counts are positive")
    }

    /// Fails unless the rule is exact for the given angular frequency and
    /// radial degree.
    pub fn require(&self, frequency: usize, degree: usize) -> Result<()> {
        if self.max_frequency() < frequency || self.max_degree() < degree {
            return Err(Error::QuadratureUndersized(format!(
                "need frequency {frequency} / degree {degree}, rule gives {} / {}",
                self.max_frequency(),
                self.max_degree()
            )));
        }
        Ok(())
    }

    /// Fails unless the rule integrates products of two basis functions of `level` exactly.
    pub fn require_level(&self, level: SpinLevel) -> Result<()> {
        let n = level.oscillator_n() as usize;
        self.require(n, n)
    }

    pub fn nodes(&self) -> impl Iterator<Item = QuadratureNode> + '_ {
        let m = self.angular_count;
        self.radial.iter().flat_map(move |&(t, w)| {
            let r = (t / (1.0 - t)).sqrt();
            (0..m).map(move |a| {
                let theta = 2.0 * PI * a as f64 / m as f64;
                QuadratureNode {
                    z: Complex64::from_polar(r, theta),
                    u: r * r,
                    weight: w / m as f64,
                }
            })
        })
    }

    pub fn len(&self) -> usize {
        self.angular_count * self.radial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Evaluate `f` on every node, in node order. Runs on the rayon pool when
    /// the `parallel` feature is enabled; the output order never changes.
    pub fn map_nodes<R, F>(&self, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(&QuadratureNode) -> R + Sync + Send,
    {
        let nodes: Vec<QuadratureNode> = self.nodes().collect();
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            nodes.par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            nodes.iter().map(f).collect()
        }
    }
}

/// Exact-degree rule for the level (angular count `≥ 2(2ν+2m)+1`, radial `≥ 2ν+2m+4`).
pub fn make_quadrature(level: SpinLevel) -> QuadratureRule {
    QuadratureRule::for_level(level)
}
