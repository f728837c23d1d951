use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Average, minimum and maximum degree in the graph's own view (out-degree
/// for directed graphs).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeStats {
    pub avg: f64,
    pub min: usize,
    pub max: usize,
}

pub fn degree_stats(g: &Graph) -> Result<DegreeStats> {
    let degrees = g.degrees();
    if degrees.is_empty() {
        return Err(Error::Analysis(
            "degree statistics of an empty graph".into(),
        ));
    }
    let total: usize = degrees.iter().sum();
    Ok(DegreeStats {
        avg: total as f64 / degrees.len() as f64,
        min: *degrees.iter().min().unwrap(),
        max: *degrees.iter().max().unwrap(),
    })
}

/// Degree counts indexed by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    counts: Vec<usize>,
    total: usize,
}

impl DegreeHistogram {
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Analysis(
                "histogram of an empty degree sequence".into(),
            ));
        }
        let max = *degrees.iter().max().unwrap();
        let mut counts = vec![0; max + 1];
        for &d in degrees {
            counts[d] += 1;
        }
        Ok(Self {
            counts,
            total: degrees.len(),
        })
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        Self::from_degrees(&g.degrees())
    }

    /// Pools several histograms (e.g. replicate runs) into one.
    pub fn merge(parts: &[DegreeHistogram]) -> Result<Self> {
        let len = parts
            .iter()
            .map(|h| h.counts.len())
            .max()
            .ok_or_else(|| Error::Analysis("nothing to merge".into()))?;
        let mut counts = vec![0; len];
        for h in parts {
            for (k, &c) in h.counts.iter().enumerate() {
                counts[k] += c;
            }
        }
        Ok(Self {
            counts,
            total: parts.iter().map(|h| h.total).sum(),
        })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len() - 1
    }

    /// `P(K = k)` for `k = 0..=max_degree`.
    pub fn pmf(&self) -> Vec<f64> {
        let n = self.total as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// `P(K >= k)` for `k = 0..=max_degree`, accumulated from integer counts
    /// so it is exactly non-increasing.
    pub fn ccdf(&self) -> Vec<f64> {
        let n = self.total as f64;
        let mut tail = 0usize;
        let mut out = vec![0.0; self.counts.len()];
        for k in (0..self.counts.len()).rev() {
            tail += self.counts[k];
            out[k] = tail as f64 / n;
        }
        out
    }

    /// Fraction of samples with degree below `k`.
    pub fn fraction_below(&self, k: usize) -> f64 {
        let below: usize = self.counts.iter().take(k).sum();
        below as f64 / self.total as f64
    }

    /// Logarithmically binned density for plotting: bins `[lo, lo * base)`
    /// starting at `k = 1`, each reported as `(geometric center, mass /
    /// integer width)`. Degree 0 is left out.
    pub fn log_binned(&self, base: f64) -> Vec<(f64, f64)> {
        assert!(base > 1.0, "log bin base must exceed 1");
        let n = self.total as f64;
        let mut out = Vec::new();
        let mut lo = 1.0f64;
        while (lo as usize) < self.counts.len() {
            let hi = lo * base;
            let start = lo.ceil() as usize;
            let end = (hi.ceil() as usize).max(start + 1);
            let mass: usize = self.counts[start.min(self.counts.len())..end.min(self.counts.len())]
                .iter()
                .sum();
            if mass > 0 {
                out.push(((lo * hi).sqrt(), mass as f64 / n / (end - start) as f64));
            }
            lo = hi;
        }
        out
    }
}
