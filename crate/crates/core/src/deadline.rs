//! Cooperative deadlines for the exponential searches.

use std::time::{Duration, Instant};

/// An optional wall-clock budget checked inside the search loops.
///
/// The searches poll the deadline every few thousand nodes, so expiry is
/// detected with a small delay. `Deadline::NONE` never expires.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub const NONE: Deadline = Deadline(None);

    pub fn after(budget: Duration) -> Self {
        Deadline(Some(Instant::now() + budget))
    }

    pub fn expired(&self) -> bool {
        match self.0 {
            Some(t) => Instant::now() >= t,
            None => false,
        }
    }
}

/// Returned by the `*_within` entry points when the deadline fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("search aborted: deadline expired")]
pub struct Timeout;

/// Poll counter so `Instant::now` is not called on every search node.
pub(crate) struct Ticker {
    deadline: Deadline,
    countdown: u32,
}

const POLL_INTERVAL: u32 = 4096;

impl Ticker {
    pub(crate) fn new(deadline: Deadline) -> Self {
        Ticker {
            deadline,
            countdown: POLL_INTERVAL,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), Timeout> {
        self.countdown -= 1;
        if self.countdown == 0 {
            self.countdown = POLL_INTERVAL;
            if self.deadline.expired() {
                return Err(Timeout);
            }
        }
        Ok(())
    }
}
