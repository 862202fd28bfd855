//! Warning-tagged values.
//!
//! Some formulas remain evaluable outside their regime of validity; those
//! operations return the value together with flags instead of suppressing it.

use serde::{Deserialize, Serialize};

/// A value plus any validity warnings raised while computing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flagged<T> {
    pub value: T,
    /// Human-readable warnings; empty when the result is in-regime.
    pub flags: Vec<String>,
}

impl<T> Flagged<T> {
    pub fn clean(value: T) -> Self {
        Self {
            value,
            flags: Vec::new(),
        }
    }

    pub fn with_flag(value: T, flag: impl Into<String>) -> Self {
        Self {
            value,
            flags: vec![flag.into()],
        }
    }

    pub fn is_clean(&self) -> bool {
        self.flags.is_empty()
    }
}
