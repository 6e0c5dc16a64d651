//! Deterministic data parallelism over index ranges.
//!
//! Work is cut into fixed-size blocks whose results are returned in index
//! order. Callers merge block results sequentially, so floating-point sums are
//! identical whether the blocks ran on one thread or many. With the
//! `parallel` feature disabled, [`Exec::Parallel`] falls back to the
//! sequential path.

use std::ops::Range;

/// Samples per block. Fixed so that reductions do not depend on thread count.
pub const BLOCK: u64 = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when this build can actually run blocks concurrently.
    pub fn is_concurrent(self) -> bool {
        self == Exec::Parallel && cfg!(feature = "parallel")
    }
}

/// Split `0..count` into blocks of [`BLOCK`] indices.
pub fn blocks(count: u64) -> Vec<Range<u64>> {
    let mut out = Vec::with_capacity(count.div_ceil(BLOCK) as usize);
    let mut start = 0;
    while start < count {
        let end = (start + BLOCK).min(count);
        out.push(start..end);
        start = end;
    }
    out
}

/// Evaluate `f` on every block of `0..count`, results in block order.
pub fn map_blocks<T, F>(exec: Exec, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    map_items(exec, blocks(count), f)
}

/// Evaluate `f(i)` for `i` in `0..count`, results in index order.
pub fn map_indexed<T, F>(exec: Exec, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    map_items(exec, (0..count).collect(), f)
}

fn map_items<I, T, F>(exec: Exec, items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_cover_range() {
        let b = blocks(2 * BLOCK + 5);
        assert_eq!(b.len(), 3);
        assert_eq!(b[2], 2 * BLOCK..2 * BLOCK + 5);
        assert!(blocks(0).is_empty());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let f = |r: Range<u64>| r.map(|i| (i as f64).sqrt()).sum::<f64>();
        let a = map_blocks(Exec::Sequential, 10_000, f);
        let b = map_blocks(Exec::Parallel, 10_000, f);
        assert_eq!(a, b);
        let s: Vec<u64> = map_indexed(Exec::Parallel, 5, |i| i * i);
        assert_eq!(s, vec![0, 1, 4, 9, 16]);
    }
}
