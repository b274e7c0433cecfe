//! Coordinator/worker plumbing shared by the parallel planners.
//!
//! There is one global [`SearchLock`] guarding all search state, one
//! coordinator, and a [`WorkerPool`] of at most `N_t` lazily spawned workers.
//! Every OPEN/BE mutation raises the lock's change signal; the coordinator
//! waits on it when no edge is currently safe to expand.

use std::cell::Cell;
use std::collections::VecDeque;
use std::ops::{Deref, DerefMut};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Condvar, Mutex, MutexGuard};
use std::thread::{self, Scope, ScopedJoinHandle};
use std::time::Instant;

use thiserror::Error;

thread_local! {
    static LOCK_DEPTH: Cell<u32> = const { Cell::new(0) };
}

/// Whether the calling thread currently holds any [`SearchLock`].
///
/// Domains can assert on this to verify that edge evaluation never runs
/// under the lock.
pub fn holds_search_lock() -> bool {
    LOCK_DEPTH.with(|d| d.get() > 0)
}

fn mark_held(delta: i32) {
    LOCK_DEPTH.with(|d| d.set((d.get() as i32 + delta) as u32));
}

fn lock_unpoisoned<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

struct Guarded<T> {
    data: T,
    pending_change: bool,
}

/// The single global lock plus its "OPEN or BE changed" signal and terminate flag.
pub struct SearchLock<T> {
    inner: Mutex<Guarded<T>>,
    changed: Condvar,
    terminate: AtomicBool,
}

pub struct SearchGuard<'a, T> {
    lock: &'a SearchLock<T>,
    guard: Option<MutexGuard<'a, Guarded<T>>>,
}

impl<T> SearchLock<T> {
    pub fn new(data: T) -> Self {
        SearchLock {
            inner: Mutex::new(Guarded {
                data,
                pending_change: false,
            }),
            changed: Condvar::new(),
            terminate: AtomicBool::new(false),
        }
    }

    pub fn lock(&self) -> SearchGuard<'_, T> {
        let guard = lock_unpoisoned(&self.inner);
        mark_held(1);
        SearchGuard {
            lock: self,
            guard: Some(guard),
        }
    }

    /// Releases the lock until a change is signalled, terminate is raised, or
    /// `deadline` passes; re-acquires it before returning.
    ///
    /// A change signalled before the call (and not yet consumed) makes this
    /// return immediately. Spurious returns are allowed; callers loop.
    pub fn wait_for_change<'a>(&'a self, mut guard: SearchGuard<'a, T>, deadline: Option<Instant>) -> SearchGuard<'a, T> {
        let mut inner = guard.guard.take().expect("guard already released");
        mark_held(-1);
        if !inner.pending_change && !self.is_terminated() {
            inner = match deadline {
                Some(d) => {
                    let left = d.saturating_duration_since(Instant::now());
                    self.changed
                        .wait_timeout(inner, left)
                        .unwrap_or_else(|e| e.into_inner())
                        .0
                }
                None => self.changed.wait(inner).unwrap_or_else(|e| e.into_inner()),
            };
        }
        inner.pending_change = false;
        mark_held(1);
        guard.guard = Some(inner);
        guard
    }

    /// Raises terminate and wakes any waiter. Must not be called while the
    /// calling thread holds this lock; use [`SearchGuard::raise_terminate`] then.
    pub fn raise_terminate(&self) {
        let mut g = self.lock();
        g.raise_terminate();
    }

    /// Readable without the lock.
    pub fn is_terminated(&self) -> bool {
        self.terminate.load(Ordering::Acquire)
    }

    pub fn into_inner(self) -> T {
        self.inner.into_inner().unwrap_or_else(|e| e.into_inner()).data
    }
}

impl<T> SearchGuard<'_, T> {
    /// Signals that OPEN or BE changed.
    pub fn notify_change(&mut self) {
        self.guard.as_mut().expect("guard released").pending_change = true;
        self.lock.changed.notify_all();
    }

    /// Forgets any change signalled so far. Called right before the caller
    /// inspects the state it would otherwise wait on.
    pub fn clear_pending(&mut self) {
        self.guard.as_mut().expect("guard released").pending_change = false;
    }

    pub fn raise_terminate(&mut self) {
        self.lock.terminate.store(true, Ordering::Release);
        self.lock.changed.notify_all();
    }
}

impl<T> Deref for SearchGuard<'_, T> {
    type Target = T;
    fn deref(&self) -> &T {
        &self.guard.as_ref().expect("guard released").data
    }
}

impl<T> DerefMut for SearchGuard<'_, T> {
    fn deref_mut(&mut self) -> &mut T {
        &mut self.guard.as_mut().expect("guard released").data
    }
}

impl<T> Drop for SearchGuard<'_, T> {
    fn drop(&mut self) {
        if self.guard.take().is_some() {
            mark_held(-1);
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("worker pool is shut down")]
pub struct ShutDown;

struct Slots<J> {
    jobs: Vec<Option<J>>,
    idle: VecDeque<usize>,
    spawned: usize,
}

struct PoolShared<J> {
    slots: Mutex<Slots<J>>,
    work_ready: Vec<Condvar>,
    worker_idle: Condvar,
    terminate: AtomicBool,
}

impl<J> PoolShared<J> {
    fn terminated(&self) -> bool {
        self.terminate.load(Ordering::Acquire)
    }
}

/// At most `capacity` worker threads, spawned on first need, each holding at
/// most one job. Jobs run the pool's handler exactly once, unless shutdown
/// preempts them before they start.
pub struct WorkerPool<'scope, 'env, J: Send + 'scope> {
    scope: &'scope Scope<'scope, 'env>,
    shared: Arc<PoolShared<J>>,
    handler: Arc<dyn Fn(J) + Send + Sync + 'scope>,
    handles: Vec<ScopedJoinHandle<'scope, ()>>,
}

impl<'scope, 'env, J: Send + 'scope> WorkerPool<'scope, 'env, J> {
    pub fn new<F>(scope: &'scope Scope<'scope, 'env>, capacity: usize, handler: F) -> Self
    where
        F: Fn(J) + Send + Sync + 'scope,
    {
        assert!(capacity >= 1, "worker pool needs at least one worker");
        WorkerPool {
            scope,
            shared: Arc::new(PoolShared {
                slots: Mutex::new(Slots {
                    jobs: (0..capacity).map(|_| None).collect(),
                    idle: VecDeque::new(),
                    spawned: 0,
                }),
                work_ready: (0..capacity).map(|_| Condvar::new()).collect(),
                worker_idle: Condvar::new(),
                terminate: AtomicBool::new(false),
            }),
            handler: Arc::new(handler),
            handles: Vec::new(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.shared.work_ready.len()
    }

    pub fn spawned(&self) -> usize {
        lock_unpoisoned(&self.shared.slots).spawned
    }

    /// Hands `job` to a free worker, spawning one if the budget allows, and
    /// blocks while every worker is busy.
    pub fn assign(&mut self, job: J) -> Result<(), ShutDown> {
        let mut slots = lock_unpoisoned(&self.shared.slots);
        loop {
            if self.shared.terminated() {
                return Err(ShutDown);
            }
            if let Some(i) = slots.idle.pop_front() {
                slots.jobs[i] = Some(job);
                self.shared.work_ready[i].notify_one();
                return Ok(());
            }
            if slots.spawned < self.capacity() {
                let i = slots.spawned;
                slots.spawned += 1;
                slots.jobs[i] = Some(job);
                drop(slots);
                self.spawn(i);
                return Ok(());
            }
            slots = self
                .shared
                .worker_idle
                .wait(slots)
                .unwrap_or_else(|e| e.into_inner());
        }
    }

    /// Blocks until `assign` would not block. Returns `Ok(false)` if
    /// `deadline` passed first.
    pub fn wait_available(&self, deadline: Option<Instant>) -> Result<bool, ShutDown> {
        let mut slots = lock_unpoisoned(&self.shared.slots);
        loop {
            if self.shared.terminated() {
                return Err(ShutDown);
            }
            if !slots.idle.is_empty() || slots.spawned < self.capacity() {
                return Ok(true);
            }
            slots = match deadline {
                Some(d) => {
                    let now = Instant::now();
                    if now >= d {
                        return Ok(false);
                    }
                    self.shared
                        .worker_idle
                        .wait_timeout(slots, d - now)
                        .unwrap_or_else(|e| e.into_inner())
                        .0
                }
                None => self
                    .shared
                    .worker_idle
                    .wait(slots)
                    .unwrap_or_else(|e| e.into_inner()),
            };
        }
    }

    fn spawn(&mut self, i: usize) {
        let shared = Arc::clone(&self.shared);
        let handler = Arc::clone(&self.handler);
        let handle = thread::Builder::new()
            .name(format!("edge-expand-{i}"))
            .spawn_scoped(self.scope, move || worker_loop(i, &shared, &*handler))
            .expect("failed to spawn worker thread");
        self.handles.push(handle);
    }

    /// Raises terminate and joins every spawned worker. Idempotent.
    pub fn shutdown(&mut self) {
        self.shared.terminate.store(true, Ordering::Release);
        {
            let _slots = lock_unpoisoned(&self.shared.slots);
            for cv in &self.shared.work_ready {
                cv.notify_all();
            }
            self.shared.worker_idle.notify_all();
        }
        for h in self.handles.drain(..) {
            if let Err(panic) = h.join() {
                std::panic::resume_unwind(panic);
            }
        }
    }
}

impl<'scope, 'env, J: Send + 'scope> Drop for WorkerPool<'scope, 'env, J> {
    fn drop(&mut self) {
        if !thread::panicking() {
            self.shutdown();
        } else {
            self.shared.terminate.store(true, Ordering::Release);
            let _slots = lock_unpoisoned(&self.shared.slots);
            for cv in &self.shared.work_ready {
                cv.notify_all();
            }
        }
    }
}

fn worker_loop<J>(i: usize, shared: &PoolShared<J>, handler: &(dyn Fn(J) + Send + Sync)) {
    let mut slots = lock_unpoisoned(&shared.slots);
    loop {
        if shared.terminated() {
            // a job still sitting in the slot was preempted
            slots.jobs[i] = None;
            return;
        }
        if let Some(job) = slots.jobs[i].take() {
            drop(slots);
            handler(job);
            slots = lock_unpoisoned(&shared.slots);
            slots.idle.push_back(i);
            shared.worker_idle.notify_all();
            continue;
        }
        slots = shared.work_ready[i]
            .wait(slots)
            .unwrap_or_else(|e| e.into_inner());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::AtomicUsize;
    use std::time::Duration;

    #[test]
    fn lock_flag_tracks_guard() {
        let lock = SearchLock::new(0u32);
        assert!(!holds_search_lock());
        {
            let mut g = lock.lock();
            *g += 1;
            assert!(holds_search_lock());
        }
        assert!(!holds_search_lock());
        assert_eq!(lock.into_inner(), 1);
    }

    #[test]
    fn pending_signal_is_not_lost() {
        let lock = SearchLock::new(());
        let mut g = lock.lock();
        g.notify_change();
        let g = lock.wait_for_change(g, None);
        assert!(holds_search_lock());
        drop(g);
    }

    #[test]
    fn capacity_one_assigns_immediately() {
        let hits = AtomicUsize::new(0);
        thread::scope(|s| {
            let mut pool = WorkerPool::new(s, 1, |n: usize| {
                hits.fetch_add(n, Ordering::SeqCst);
            });
            assert_eq!(pool.spawned(), 0);
            pool.assign(3).unwrap();
            assert_eq!(pool.spawned(), 1);
            assert_eq!(pool.wait_available(None), Ok(true));
            pool.shutdown();
        });
        assert_eq!(hits.load(Ordering::SeqCst), 3);
    }

    #[test]
    fn shutdown_without_workers_and_twice() {
        thread::scope(|s| {
            let mut pool = WorkerPool::new(s, 4, |_: ()| {});
            pool.shutdown();
            pool.shutdown();
            assert_eq!(pool.assign(()), Err(ShutDown));
            assert_eq!(pool.wait_available(None), Err(ShutDown));
        });
    }

    #[test]
    fn wait_available_times_out_when_busy() {
        let release = AtomicBool::new(false);
        thread::scope(|s| {
            let mut pool = WorkerPool::new(s, 1, |_: ()| {
                while !release.load(Ordering::SeqCst) {
                    thread::sleep(Duration::from_millis(1));
                }
            });
            pool.assign(()).unwrap();
            let r = pool.wait_available(Some(Instant::now() + Duration::from_millis(20)));
            assert_eq!(r, Ok(false));
            release.store(true, Ordering::SeqCst);
            assert_eq!(pool.wait_available(None), Ok(true));
        });
    }
}
