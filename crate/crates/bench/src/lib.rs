//! Shared inputs for the benchmark targets.

use fermat_syzygy::{FieldCtx, MatFp};

pub fn field(p: u64) -> FieldCtx {
    FieldCtx::new(p).expect("benchmark prime")
}

/// Deterministic pseudo-random matrix over F_p.
pub fn random_matrix(rows: usize, cols: usize, p: u64, seed: u64) -> MatFp {
    let mut state = seed | 1;
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 33) % p
    };
    let mut m = MatFp::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, next());
        }
    }
    m
}
