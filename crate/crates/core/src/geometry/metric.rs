//! Induced metric of an embedding.

use super::{Embedding, MetricField};
use crate::error::Result;

/// g_ab = d_a R . d_b R with centered differences (one-sided at open edges),
/// plus inverse, sqrt(det g) and the area form.
pub fn induced_metric(e: &Embedding) -> Result<MetricField> {
    let (tu, tv) = e.tangents();
    let n = e.grid.node_count();
    let mut g = Vec::with_capacity(n);
    for idx in 0..n {
        let (a, b) = (tu.data[idx], tv.data[idx]);
        g.push([a.dot(&a), a.dot(&b), b.dot(&b)]);
    }
    MetricField::from_components(&e.grid, g)
}
