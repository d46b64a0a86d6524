//! Square sampling grids on the finite chart.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::monopole::PlanePoint;

/// `resolution × resolution` points covering
/// `[c - w, c + w] × [c - w, c + w]` around `center`, row-major with the
/// imaginary part on the outer loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneGrid {
    pub center: Complex64,
    pub half_width: f64,
    pub resolution: usize,
}

impl PlaneGrid {
    pub fn new(center: Complex64, half_width: f64, resolution: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::Parameter(
                "grid resolution must be at least 1".into(),
            ));
        }
        if !(half_width >= 0.0) || !half_width.is_finite() {
            return Err(Error::Parameter(format!(
                "grid half-width must be >= 0, got {half_width}"
            )));
        }
        PlanePoint::from_complex(center)?;
        PlanePoint::from_complex(center + Complex64::new(half_width, half_width))?;
        Ok(Self {
            center,
            half_width,
            resolution,
        })
    }

    /// Parse `"re,im,half_width,resolution"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        let bad = || {
            Error::Parameter(format!(
                "grid spec must be re,im,half_width,resolution; got {spec:?}"
            ))
        };
        if parts.len() != 4 {
            return Err(bad());
        }
        let re: f64 = parts[0].parse().map_err(|_| bad())?;
        let im: f64 = parts[1].parse().map_err(|_| bad())?;
        let hw: f64 = parts[2].parse().map_err(|_| bad())?;
        let res: usize = parts[3].parse().map_err(|_| bad())?;
        Self::new(Complex64::new(re, im), hw, res)
    }

    pub fn len(&self) -> usize {
        self.resolution * self.resolution
    }

    pub fn is_empty(&self) -> bool {
        self.resolution == 0
    }

    fn axis(&self, i: usize) -> f64 {
        if self.resolution == 1 {
            return 0.0;
        }
        -self.half_width + 2.0 * self.half_width * i as f64 / (self.resolution - 1) as f64
    }

    pub fn points(&self) -> impl Iterator<Item = PlanePoint> + '_ {
        (0..self.resolution).flat_map(move |row| {
            (0..self.resolution).map(move |col| {
                PlanePoint::from_complex_unchecked(
                    self.center + Complex64::new(self.axis(col), self.axis(row)),
                )
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_enumerate() {
        let g = PlaneGrid::parse("0,0,1,5").unwrap();
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), 25);
        assert_eq!(pts[0].z(), Complex64::new(-1.0, -1.0));
        assert_eq!(pts[24].z(), Complex64::new(1.0, 1.0));
        assert_eq!(pts[12].z(), Complex64::new(0.0, 0.0));
        let single = PlaneGrid::parse("0.5,-0.25,3,1").unwrap();
        assert_eq!(
            single.points().next().unwrap().z(),
            Complex64::new(0.5, -0.25)
        );
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(PlaneGrid::parse("0,0,1").is_err());
        assert!(PlaneGrid::parse("0,0,-1,4").is_err());
        assert!(PlaneGrid::parse("0,0,1,0").is_err());
        assert!(PlaneGrid::parse("a,0,1,3").is_err());
        assert!(PlaneGrid::parse("1e9,0,1,3").is_err());
    }
}
