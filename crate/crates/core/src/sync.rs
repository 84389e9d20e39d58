//! Small synchronisation helpers shared by the backends and the sandbox.

use std::sync::{Condvar, Mutex};

/// Counting semaphore bounding how many callers run a section at once.
#[derive(Debug)]
pub struct Semaphore {
    available: Mutex<usize>,
    cond: Condvar,
}

impl Semaphore {
    /// `permits` is clamped to at least one.
    pub fn new(permits: usize) -> Self {
        Self {
            available: Mutex::new(permits.max(1)),
            cond: Condvar::new(),
        }
    }

    pub fn acquire(&self) -> SemaphoreGuard<'_> {
        let mut available = self.available.lock().unwrap_or_else(|e| e.into_inner());
        while *available == 0 {
            available = self.cond.wait(available).unwrap_or_else(|e| e.into_inner());
        }
        *available -= 1;
        SemaphoreGuard { sem: self }
    }
}

pub struct SemaphoreGuard<'a> {
    sem: &'a Semaphore,
}

impl Drop for SemaphoreGuard<'_> {
    fn drop(&mut self) {
        let mut available = self.sem.available.lock().unwrap_or_else(|e| e.into_inner());
        *available += 1;
        self.sem.cond.notify_one();
    }
}
