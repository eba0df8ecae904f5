use crate::error::{param, Result};

/// Positions of `n` points in `R^d` at one instant, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    d: usize,
    coords: Vec<f64>,
}

impl PointConfig {
    pub fn new(points: &[Vec<f64>]) -> Result<Self> {
        let d = points.first().map_or(0, Vec::len);
        if d == 0 {
            return Err(param("point configuration needs at least one point of dimension >= 1"));
        }
        if points.iter().any(|p| p.len() != d) {
            return Err(param("points disagree on dimension"));
        }
        let coords: Vec<f64> = points.iter().flatten().copied().collect();
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(param("non-finite coordinate"));
        }
        Ok(PointConfig { d, coords })
    }

    pub fn from_flat(d: usize, coords: Vec<f64>) -> Self {
        debug_assert!(d > 0 && coords.len().is_multiple_of(d));
        PointConfig { d, coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.point(i)
            .iter()
            .zip(self.point(j))
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Largest per-point displacement between two snapshots of the same points.
    pub fn max_displacement(&self, other: &PointConfig) -> f64 {
        self.coords
            .chunks(self.d)
            .zip(other.coords.chunks(other.d))
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> PointConfig {
        PointConfig { d: self.d, coords: self.coords.iter().map(|c| c * factor).collect() }
    }
}
