//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature the items run on a rayon pool; without it,
//! or with [`Execution::Sequential`], they run in order on the calling
//! thread. Results always come back in input order, so reductions over them
//! do not depend on scheduling.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// rayon's global pool.
    #[default]
    Parallel,
    /// A dedicated pool with this many threads.
    Threads(usize),
}

impl Execution {
    /// `None` or `0` means the default pool, `1` sequential.
    pub fn from_threads(threads: Option<usize>) -> Self {
        match threads {
            None | Some(0) => Execution::Parallel,
            Some(1) => Execution::Sequential,
            Some(n) => Execution::Threads(n),
        }
    }
}

pub fn map_indexed<T, R, F>(items: &[T], execution: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    match execution {
        Execution::Sequential => sequential(items, f),
        #[cfg(feature = "parallel")]
        Execution::Parallel => pooled(items, f),
        #[cfg(feature = "parallel")]
        Execution::Threads(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| pooled(items, f)),
            Err(e) => {
                log::warn!("could not build a {n}-thread pool ({e}); running sequentially");
                sequential(items, f)
            }
        },
        #[cfg(not(feature = "parallel"))]
        _ => sequential(items, f),
    }
}

fn sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(usize, &T) -> R,
{
    items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

#[cfg(feature = "parallel")]
fn pooled<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect()
}
