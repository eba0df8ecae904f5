use crate::error::{param, Result};
use crate::spanning::{emst_length, PointConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadReport {
    pub l: usize,
    /// Smallest distance from any point to its `l`-th nearest neighbour.
    pub mindist: f64,
    pub delta: f64,
}

/// Brute force over all pairs.
pub fn spread(cfg: &PointConfig, l: usize) -> Result<SpreadReport> {
    let n = cfg.n();
    if l == 0 || l >= n {
        return Err(param(format!("neighbour rank must lie in 1..={}, got {l}", n.saturating_sub(1))));
    }
    let mut mindist = f64::INFINITY;
    let mut row = Vec::with_capacity(n - 1);
    for i in 0..n {
        row.clear();
        row.extend((0..n).filter(|&j| j != i).map(|j| cfg.dist(i, j)));
        row.select_nth_unstable_by(l - 1, f64::total_cmp);
        mindist = mindist.min(row[l - 1]);
    }
    Ok(SpreadReport { l, mindist, delta: 1.0 / mindist })
}

/// Greedy thinning: repeatedly keep the lowest-index remaining point and
/// discard every other remaining point closer than `radius`.
pub fn greedy_thinning(cfg: &PointConfig, radius: f64) -> Vec<usize> {
    let n = cfg.n();
    let mut alive = vec![true; n];
    let mut kept = Vec::new();
    for i in 0..n {
        if !alive[i] {
            continue;
        }
        kept.push(i);
        for (j, flag) in alive.iter_mut().enumerate().skip(i + 1) {
            if *flag && cfg.dist(i, j) < radius {
                *flag = false;
            }
        }
    }
    kept
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThinningReport {
    pub spread: SpreadReport,
    pub n: usize,
    pub kept: Vec<usize>,
    pub emst_thinned: f64,
    pub emst_full: f64,
    /// `(m - 1) * mindist_l`, a lower bound on `emst_thinned`.
    pub thinned_bound: f64,
    /// `m * mindist_l / 2`, a lower bound on `emst_full`.
    pub full_bound: f64,
}

impl ThinningReport {
    /// Checks `m >= ceil(n / l)` and both length bounds.
    pub fn holds(&self, tol: f64) -> bool {
        self.kept.len() * self.spread.l >= self.n
            && self.emst_thinned + tol >= self.thinned_bound
            && self.emst_full + tol >= self.full_bound
    }
}

/// Thins at radius `mindist_l` and compares EMST lengths with the packing bounds.
pub fn thinning_lower_bound(cfg: &PointConfig, l: usize) -> Result<ThinningReport> {
    let sp = spread(cfg, l)?;
    let kept = greedy_thinning(cfg, sp.mindist);
    let d = cfg.dim();
    let coords: Vec<f64> = kept.iter().flat_map(|&i| cfg.point(i).to_vec()).collect();
    let thinned = PointConfig::from_flat(d, coords);
    let m = kept.len() as f64;
    Ok(ThinningReport {
        spread: sp,
        n: cfg.n(),
        emst_thinned: emst_length(&thinned),
        emst_full: emst_length(cfg),
        thinned_bound: (m - 1.0) * sp.mindist,
        full_bound: if kept.len() >= 2 { m * sp.mindist / 2.0 } else { 0.0 },
        kept,
    })
}
