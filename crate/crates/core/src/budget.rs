use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Cooperative wall-clock deadline checked between DP steps.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn after(budget: Duration) -> Self {
        Deadline(Some(Instant::now() + budget))
    }

    pub fn check(&self) -> Result<()> {
        match self.0 {
            Some(t) if Instant::now() >= t => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}
