use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph, Row};

/// Largest vertex count accepted by [`count_ham_cycles`].
pub const MAX_COUNT_VERTICES: usize = 20;

/// Exact number of Hamiltonian cycles, by dynamic programming over
/// (visited set, endpoint) path counts for paths starting at vertex 0.
pub fn count_ham_cycles(g: &Graph) -> Result<BigUint> {
    let n = g.n();
    if n > MAX_COUNT_VERTICES {
        return Err(Error::TooLarge { n, max: MAX_COUNT_VERTICES });
    }
    if n < 3 {
        return Ok(BigUint::default());
    }
    // vertex v >= 1 becomes bit v-1
    let m = n - 1;
    let adj: Vec<Row> = (1..n).map(|v| g.row(v) >> 1).collect();
    let start = g.row(0) >> 1;
    let full = (1usize << m) - 1;
    let mut dp = vec![0u64; (1usize << m) * m];
    for j in bits(start) {
        dp[(1usize << j) * m + j] = 1;
    }
    for mask in 1..=full {
        let base = mask * m;
        for j in bits(mask as Row) {
            let val = dp[base + j];
            if val == 0 {
                continue;
            }
            let free = adj[j] & !(mask as Row) & full as Row;
            for k in bits(free) {
                dp[(mask | (1 << k)) * m + k] += val;
            }
        }
    }
    let closing: u64 = bits(start).map(|j| dp[full * m + j]).sum();
    Ok(BigUint::from(closing / 2))
}
