//! Memoized infinite sequences.
//!
//! A [`LazySeq`] is defined by a step rule that sees the index and the
//! already evaluated prefix. Evaluation extends the prefix under a lock, so
//! each index is computed exactly once even when several threads ask for it.

use std::fmt;
use std::sync::{Arc, Mutex, MutexGuard};

use crate::error::Result;

type Step<T> = dyn Fn(usize, &[T]) -> Result<T> + Send + Sync;

struct Inner<T> {
    step: Box<Step<T>>,
    memo: Mutex<Vec<T>>,
}

/// Shared handle to a memoized sequence. Clones share the memo.
pub struct LazySeq<T>(Arc<Inner<T>>);

impl<T> Clone for LazySeq<T> {
    fn clone(&self) -> Self {
        LazySeq(Arc::clone(&self.0))
    }
}

impl<T: Clone + Send + 'static> LazySeq<T> {
    /// Sequence given by a recurrence over the evaluated prefix.
    pub fn recurrence(step: impl Fn(usize, &[T]) -> Result<T> + Send + Sync + 'static) -> Self {
        LazySeq(Arc::new(Inner {
            step: Box::new(step),
            memo: Mutex::new(Vec::new()),
        }))
    }

    /// Sequence given pointwise.
    pub fn from_fn(rule: impl Fn(usize) -> Result<T> + Send + Sync + 'static) -> Self {
        Self::recurrence(move |n, _| rule(n))
    }

    fn memo(&self) -> MutexGuard<'_, Vec<T>> {
        // a panic in a nested rule leaves the prefix valid, so keep going
        self.0.memo.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Value at `n`, evaluating any missing prefix first.
    pub fn get(&self, n: usize) -> Result<T> {
        let mut memo = self.memo();
        while memo.len() <= n {
            let next = (self.0.step)(memo.len(), &memo)?;
            memo.push(next);
        }
        Ok(memo[n].clone())
    }

    /// Values at indices `0..len`.
    pub fn prefix(&self, len: usize) -> Result<Vec<T>> {
        if len > 0 {
            self.get(len - 1)?;
        }
        Ok(self.memo()[..len].to_vec())
    }

    /// How many indices have been evaluated so far.
    pub fn evaluated(&self) -> usize {
        self.memo().len()
    }
}

impl<T> fmt::Debug for LazySeq<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazySeq").finish_non_exhaustive()
    }
}
