use std::path::Path;

use serde::{Deserialize, Serialize};

use super::RaceError;
use crate::analysis::{CompensatedSum, Constants};
use crate::format::{hex_to_f64, f64_to_hex};
use crate::primes::{prime_count, prime_stream_from, DEFAULT_SEGMENT};

/// Current checkpoint schema.
pub const SCHEMA_VERSION: u32 = 1;

/// Running prime sums covering every prime `p < x_reached`.
///
/// `mertens_log_sum` is `Σ -log(1 - 1/p)` and `zhang_partial` is
/// `Σ 1/(p log p)`, both compensated.
#[derive(Debug, Clone, PartialEq)]
pub struct RaceState {
    x_reached: u64,
    pi_count: u64,
    mertens: CompensatedSum,
    zhang: CompensatedSum,
}

impl Default for RaceState {
    fn default() -> Self {
        Self::new()
    }
}

impl RaceState {
    /// Empty sums at `x = 2`.
    pub fn new() -> Self {
        Self {
            x_reached: 2,
            pi_count: 0,
            mertens: CompensatedSum::new(),
            zhang: CompensatedSum::new(),
        }
    }

    /// The sums cover exactly the primes below this value.
    pub fn x_reached(&self) -> u64 {
        self.x_reached
    }

    /// Number of primes below `x_reached`.
    pub fn pi_count(&self) -> u64 {
        self.pi_count
    }

    pub fn mertens_log_sum(&self) -> &CompensatedSum {
        &self.mertens
    }

    pub fn zhang_partial(&self) -> &CompensatedSum {
        &self.zhang
    }

    /// Absorb every prime in `[x_reached, x)`.
    pub fn advance_to(&mut self, x: u64) -> Result<(), RaceError> {
        if x < self.x_reached {
            return Err(RaceError::Backwards { at: self.x_reached, requested: x });
        }
        if x == self.x_reached {
            return Ok(());
        }
        for p in prime_stream_from(self.x_reached, x - 1, DEFAULT_SEGMENT)? {
            self.absorb(p);
        }
        self.x_reached = x;
        Ok(())
    }

    /// Add the prime `p ≥ x_reached`; afterwards the state sits at `p + 1`.
    /// The caller guarantees there are no primes in `[x_reached, p)`.
    pub(crate) fn absorb(&mut self, p: u64) {
        debug_assert!(p >= self.x_reached);
        let pf = p as f64;
        self.mertens.add(-(-1.0 / pf).ln_1p());
        self.zhang.add(1.0 / (pf * pf.ln()));
        self.pi_count += 1;
        self.x_reached = p + 1;
    }

    /// Move to `x` without sieving. The caller guarantees `[x_reached, x)`
    /// holds no primes.
    pub(crate) fn skip_to(&mut self, x: u64) {
        debug_assert!(x >= self.x_reached);
        self.x_reached = x;
    }

    /// Serialize as the checkpoint JSON object. Floats are stored as their
    /// exact bit patterns so a resumed scan is bit-identical.
    pub fn to_checkpoint_json(&self) -> String {
        let file = CheckpointFile {
            schema_version: SCHEMA_VERSION,
            x_reached: self.x_reached,
            pi_count: self.pi_count,
            mertens_sum: f64_to_hex(self.mertens.primary()),
            mertens_carry: f64_to_hex(self.mertens.carry()),
            zhang_sum: f64_to_hex(self.zhang.primary()),
            zhang_carry: f64_to_hex(self.zhang.carry()),
        };
        serde_json::to_string_pretty(&file).expect("checkpoint serializes")
    }

    /// Parse and validate a checkpoint. Besides the schema, this re-counts
    /// the primes below `x_reached` and checks the sums against their
    /// analytic ranges.
    pub fn from_checkpoint_json(text: &str) -> Result<Self, RaceError> {
        let file: CheckpointFile =
            serde_json::from_str(text).map_err(|e| RaceError::corrupt(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(RaceError::corrupt(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        let hex = |s: &str| hex_to_f64(s).map_err(|e| RaceError::corrupt(e.to_string()));
        let state = Self {
            x_reached: file.x_reached,
            pi_count: file.pi_count,
            mertens: CompensatedSum::from_parts(hex(&file.mertens_sum)?, hex(&file.mertens_carry)?),
            zhang: CompensatedSum::from_parts(hex(&file.zhang_sum)?, hex(&file.zhang_carry)?),
        };
        state.validate()?;
        Ok(state)
    }

    fn validate(&self) -> Result<(), RaceError> {
        if self.x_reached < 2 {
            return Err(RaceError::corrupt("x_reached below 2"));
        }
        let counted = prime_count(self.x_reached - 1)?;
        if counted != self.pi_count {
            return Err(RaceError::corrupt(format!(
                "pi_count {} but there are {counted} primes below {}",
                self.pi_count, self.x_reached
            )));
        }
        let m = self.mertens.value();
        let z = self.zhang.value();
        if !m.is_finite() || !z.is_finite() || m < 0.0 || z < 0.0 {
            return Err(RaceError::corrupt("sums must be finite and nonnegative"));
        }
        if self.x_reached >= 3 {
            let x = self.x_reached as f64;
            let upper = x.ln().ln() + Constants::get().euler_gamma + 1.0;
            if m > upper {
                return Err(RaceError::corrupt(format!("Mertens sum {m} exceeds {upper}")));
            }
        }
        if z >= Constants::get().zhang_constant {
            return Err(RaceError::corrupt(format!("Zhang partial sum {z} is not below C_Z")));
        }
        Ok(())
    }

    /// Write the checkpoint atomically (temporary file, then rename).
    pub fn save(&self, path: &Path) -> Result<(), RaceError> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.to_checkpoint_json())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, RaceError> {
        Self::from_checkpoint_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckpointFile {
    schema_version: u32,
    x_reached: u64,
    pi_count: u64,
    mertens_sum: String,
    mertens_carry: String,
    zhang_sum: String,
    zhang_carry: String,
}
