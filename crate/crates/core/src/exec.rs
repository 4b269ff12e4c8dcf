//! Row-level data parallelism with a sequential fallback.
//!
//! Without the `parallel` feature every call runs sequentially. With it, the
//! process-wide mode can still be switched at runtime so both paths can be
//! benchmarked and cross-checked from one binary.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

const SEQ: u8 = 0;
const PAR: u8 = 1;

static MODE: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { PAR } else { SEQ });

pub fn mode() -> ExecMode {
    match MODE.load(Ordering::Relaxed) {
        PAR if cfg!(feature = "parallel") => ExecMode::Parallel,
        _ => ExecMode::Sequential,
    }
}

pub fn set_mode(m: ExecMode) {
    MODE.store(if m == ExecMode::Parallel { PAR } else { SEQ }, Ordering::Relaxed);
}

/// Sizes the global worker pool. Only the first call has any effect.
pub fn init_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

/// `(0..len).map(f).collect()`, in parallel when enabled. Output order is
/// always index order.
pub fn map_indices<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == ExecMode::Parallel && len > 1 {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let v = map_indices(100, |i| i * i);
        assert_eq!(v, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }
}
