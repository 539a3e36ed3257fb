//! Cooperative time budgets.
//!
//! A deadline is installed per thread with [`with_deadline`]; long searches
//! call [`checkpoint`] and unwind with [`Error::Timeout`] once it has passed.

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
    static TICKS: Cell<u32> = const { Cell::new(0) };
}

/// Runs `f` with a deadline `budget` from now. Nested calls keep the
/// earlier of the two deadlines.
pub fn with_deadline<T>(budget: Duration, f: impl FnOnce() -> T) -> T {
    let requested = Instant::now().checked_add(budget);
    let prev = DEADLINE.with(|d| d.get());
    let effective = match (prev, requested) {
        (Some(p), Some(r)) => Some(p.min(r)),
        (p, r) => p.or(r),
    };
    DEADLINE.with(|d| d.set(effective));
    struct Restore(Option<Instant>);
    impl Drop for Restore {
        fn drop(&mut self) {
            DEADLINE.with(|d| d.set(self.0));
        }
    }
    let _restore = Restore(prev);
    f()
}

/// The deadline active on this thread, if any.
pub fn current_deadline() -> Option<Instant> {
    DEADLINE.with(|d| d.get())
}

/// Installs an absolute deadline (used to carry a budget onto worker threads).
pub fn with_absolute_deadline<T>(deadline: Option<Instant>, f: impl FnOnce() -> T) -> T {
    match deadline {
        None => f(),
        Some(at) => with_deadline(at.saturating_duration_since(Instant::now()), f),
    }
}

/// Cheap check; reads the clock only every 256 calls.
#[inline]
pub fn checkpoint() -> Result<()> {
    let t = TICKS.with(|c| {
        let v = c.get().wrapping_add(1);
        c.set(v);
        v
    });
    if t & 0xff != 0 {
        return Ok(());
    }
    expired_now()
}

/// Clock-reading check, for coarse loops.
pub fn expired_now() -> Result<()> {
    match DEADLINE.with(|d| d.get()) {
        Some(at) if Instant::now() >= at => Err(Error::Timeout),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deadline_expires_and_restores() {
        assert!(current_deadline().is_none());
        let r = with_deadline(Duration::from_millis(0), || {
            std::thread::sleep(Duration::from_millis(2));
            expired_now()
        });
        assert_eq!(r, Err(Error::Timeout));
        assert!(current_deadline().is_none());
    }

    #[test]
    fn nested_keeps_earliest() {
        with_deadline(Duration::from_secs(1), || {
            let outer = current_deadline().unwrap();
            with_deadline(Duration::from_secs(100), || {
                assert_eq!(current_deadline().unwrap(), outer);
            });
        });
    }
}
