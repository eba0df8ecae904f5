use crate::error::{Error, Result};
use crate::spanning::{emst_length, tree_length, PointConfig, SpanningTree};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnyTreeReport {
    pub max_edge: f64,
    pub total: f64,
    pub opt: f64,
    pub ratio: f64,
}

/// Every edge of any spanning tree is at most the EMST length (the EMST path
/// between its endpoints is no shorter), so the total is at most `(n-1) OPT`.
pub fn any_tree_bound_audit(cfg: &PointConfig, tree: &SpanningTree) -> Result<AnyTreeReport> {
    let total = tree_length(cfg, tree)?;
    let opt = emst_length(cfg);
    let tol = 1e-12 * opt.max(1.0);
    let mut max_edge: f64 = 0.0;
    for e in tree.edges() {
        let len = cfg.dist(e.0, e.1);
        if len > opt + tol {
            return Err(Error::Audit(format!("edge ({e}) has length {len} > OPT {opt}")));
        }
        max_edge = max_edge.max(len);
    }
    let cap = (cfg.n() - 1) as f64 * opt;
    if total > cap + tol * cfg.n() as f64 {
        return Err(Error::Audit(format!("tree length {total} > (n - 1) OPT = {cap}")));
    }
    let ratio = if opt > 0.0 { total / opt } else { 1.0 };
    Ok(AnyTreeReport { max_edge, total, opt, ratio })
}
