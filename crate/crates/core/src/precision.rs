//! Precision policy: start at a default, double on ambiguity, stop at a hard cap.

use crate::error::{Error, Result};

/// Environment variable that overrides the default starting precision (bits).
pub const PRECISION_ENV: &str = "HECKOID_PRECISION";

pub const DEFAULT_BITS: u32 = 128;
pub const CAP_BITS: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { start: DEFAULT_BITS, cap: CAP_BITS }
    }
}

impl Precision {
    pub fn new(start: u32, cap: u32) -> Result<Self> {
        if start < 16 || cap < start {
            return Err(Error::Invalid(format!("precision start {start} / cap {cap}")));
        }
        Ok(Precision { start, cap })
    }

    /// Default policy, with the starting precision read from `HECKOID_PRECISION` if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(v) => {
                let bits: u32 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("{PRECISION_ENV}={v:?} is not a bit count")))?;
                Precision::new(bits, CAP_BITS.max(bits))
            }
            Err(_) => Ok(Precision::default()),
        }
    }

    /// The sequence start, 2·start, … up to the cap.
    pub fn levels(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap;
        std::iter::successors(Some(self.start), move |&p| if p >= cap { None } else { Some((p * 2).min(cap)) })
    }

    /// Run `f` at increasing precision until it returns `Some`.
    pub fn escalate<T>(&self, what: &str, mut f: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
        for p in self.levels() {
            if let Some(v) = f(p)? {
                return Ok(v);
            }
        }
        Err(Error::Precision { cap: self.cap, what: what.to_string() })
    }
}
