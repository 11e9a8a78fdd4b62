//! The task layer: a work-stealing worker pool for data-parallel `forall`
//! loops, plus task-per-iteration `coforall`, `begin`, and `cobegin`.
//!
//! `forall` partitions its iterable into at most `worker_count` contiguous
//! chunks and runs them on the pool; the partition depends only on the worker
//! count and iterable size, so results over disjoint writes are deterministic.
//! `coforall`/`begin`/`cobegin` run each body on its own task, which may block
//! on sync variables freely.

use std::any::Any;
use std::panic::resume_unwind;
use std::sync::Mutex;
use std::thread::JoinHandle;

use crate::array::Array;
use crate::domain::Domain;
use crate::range::Range;

/// Random-access iterable understood by the parallel loops.
pub trait Iterable: Sync {
    type Item: Send;

    /// Number of items, `None` when unbounded.
    fn bounded_len(&self) -> Option<usize>;

    fn at(&self, k: usize) -> Self::Item;

    fn len(&self) -> usize {
        self.bounded_len()
            .expect("loop iterable must be bounded; truncate with `#` first")
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Iterable for Range {
    type Item = i64;

    fn bounded_len(&self) -> Option<usize> {
        self.size()
    }

    fn at(&self, k: usize) -> i64 {
        self.index_at(k)
    }
}

impl Iterable for Domain {
    type Item = Vec<i64>;

    fn bounded_len(&self) -> Option<usize> {
        Some(self.size())
    }

    fn at(&self, k: usize) -> Vec<i64> {
        self.unrank(k)
    }
}

impl<T: Copy + Send + Sync> Iterable for &Array<T> {
    type Item = T;

    fn bounded_len(&self) -> Option<usize> {
        Some(self.size())
    }

    fn at(&self, k: usize) -> T {
        self.getn(&self.domain().unrank(k))
    }
}

impl<T: Clone + Send + Sync> Iterable for Vec<T> {
    type Item = T;

    fn bounded_len(&self) -> Option<usize> {
        Some(self.len())
    }

    fn at(&self, k: usize) -> T {
        self[k].clone()
    }
}

impl<I: Iterable> Iterable for &I {
    type Item = I::Item;

    fn bounded_len(&self) -> Option<usize> {
        (**self).bounded_len()
    }

    fn at(&self, k: usize) -> Self::Item {
        (**self).at(k)
    }
}

/// Sequential enumeration of an iterable, for lowered `for` loops.
pub fn seq<I: Iterable>(it: I) -> impl Iterator<Item = I::Item> {
    let n = it.len();
    (0..n).map(move |k| it.at(k))
}

pub struct Runtime {
    pool: rayon::ThreadPool,
    workers: usize,
    detached: Mutex<Vec<TaskHandle>>,
}

pub struct TaskHandle {
    handle: JoinHandle<()>,
}

impl TaskHandle {
    /// Blocks until the task completes, propagating its panic if it had one.
    pub fn join(self) {
        if let Err(payload) = self.handle.join() {
            resume_unwind(payload);
        }
    }
}

pub type TaskBody<'a> = Box<dyn FnOnce() + Send + 'a>;

/// Wraps a closure as a `cobegin` arm.
pub fn task<'a, F: FnOnce() + Send + 'a>(f: F) -> TaskBody<'a> {
    Box::new(f)
}

impl Runtime {
    /// `workers = 0` selects the hardware default.
    pub fn new(workers: usize) -> Runtime {
        let workers = if workers == 0 {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        } else {
            workers
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .thread_name(|i| format!("chplx-worker-{i}"))
            .build()
            .expect("failed to build worker pool");
        Runtime {
            pool,
            workers,
            detached: Mutex::new(Vec::new()),
        }
    }

    pub fn worker_count(&self) -> usize {
        self.workers
    }

    pub(crate) fn pool(&self) -> &rayon::ThreadPool {
        &self.pool
    }

    /// Data-parallel loop: invokes `body` exactly once per item, split into
    /// at most `worker_count` contiguous chunks, and joins before returning.
    pub fn forall<I, F>(&self, iterable: I, body: F)
    where
        I: Iterable,
        F: Fn(I::Item) + Sync,
    {
        let n = iterable.len();
        if n == 0 {
            return;
        }
        let chunks = self.workers.min(n);
        self.pool.in_place_scope(|scope| {
            for c in 0..chunks {
                let start = c * n / chunks;
                let end = (c + 1) * n / chunks;
                let iterable = &iterable;
                let body = &body;
                scope.spawn(move |_| {
                    for k in start..end {
                        body(iterable.at(k));
                    }
                });
            }
        });
    }

    /// Task-parallel loop: exactly one task per item regardless of worker
    /// count; joins before returning.
    pub fn coforall<I, F>(&self, iterable: I, body: F)
    where
        I: Iterable,
        F: Fn(I::Item) + Sync,
    {
        let n = iterable.len();
        if n == 0 {
            return;
        }
        std::thread::scope(|scope| {
            let mut handles = Vec::with_capacity(n);
            for k in 0..n {
                let iterable = &iterable;
                let body = &body;
                handles.push(scope.spawn(move || body(iterable.at(k))));
            }
            join_all(handles.into_iter().map(|h| h.join()));
        });
    }

    /// Spawns `body` asynchronously and returns a joinable handle.
    pub fn begin<F: FnOnce() + Send + 'static>(&self, body: F) -> TaskHandle {
        TaskHandle {
            handle: std::thread::spawn(body),
        }
    }

    /// Spawns `body` and defers its join to `shutdown`. Lowered form of a
    /// bare `begin` statement.
    pub fn begin_detached<F: FnOnce() + Send + 'static>(&self, body: F) {
        let handle = self.begin(body);
        self.detached.lock().unwrap().push(handle);
    }

    /// Runs all bodies concurrently and joins them all before returning.
    pub fn cobegin(&self, bodies: Vec<TaskBody<'_>>) {
        std::thread::scope(|scope| {
            let handles: Vec<_> = bodies
                .into_iter()
                .map(|b| scope.spawn(b))
                .collect();
            join_all(handles.into_iter().map(|h| h.join()));
        });
    }

    /// Joins any detached `begin` tasks.
    pub fn shutdown(self) {
        let handles = std::mem::take(&mut *self.detached.lock().unwrap());
        for h in handles {
            h.join();
        }
    }
}

/// Joins every result, then propagates the first panic (if any) so sibling
/// tasks always complete before the failure surfaces.
fn join_all<E: Into<Box<dyn Any + Send>>>(results: impl Iterator<Item = Result<(), E>>) {
    let mut first_panic: Option<Box<dyn Any + Send>> = None;
    for r in results {
        if let Err(payload) = r {
            first_panic.get_or_insert(payload.into());
        }
    }
    if let Some(payload) = first_panic {
        resume_unwind(payload);
    }
}
