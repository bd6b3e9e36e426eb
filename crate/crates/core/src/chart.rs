use crate::error::{Error, Result};
use crate::index::MAX_SLOTS;

/// Chart dimension `m` and bundle rank `r`, fixed for a computation.
///
/// The bundle `E` is trivialised by a global frame `e1..er`; the connection
/// induced by that frame is flat.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChartConfig {
    m: usize,
    r: usize,
}

impl ChartConfig {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if m == 0 || r == 0 {
            return Err(Error::Chart(format!("need m >= 1 and r >= 1, got m={m}, r={r}")));
        }
        if m + r * r > MAX_SLOTS {
            return Err(Error::Chart(format!(
                "gauge frame of size m + r^2 = {} exceeds {MAX_SLOTS}",
                m + r * r
            )));
        }
        Ok(ChartConfig { m, r })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// Size of the gauge-algebroid frame: `m` coordinate derivations followed
    /// by the `r^2` matrix units.
    pub fn frame_size(&self) -> usize {
        self.m + self.r * self.r
    }

    pub(crate) fn expect_same(&self, other: &ChartConfig) {
        assert_eq!(self, other, "objects live on different charts");
    }
}
