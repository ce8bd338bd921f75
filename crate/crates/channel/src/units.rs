//! Carrier frequency and link distance newtypes.
//!
//! Path-loss formulas below take frequency in Hz and distance in meters;
//! the ABG frequency term is the one place that consumes GHz directly.
//! Frequencies are stored in GHz so that `from_ghz(x).ghz() == x` holds
//! bit-for-bit (storing Hz would lose that to double rounding through
//! the x1e9 / 1e9 pair), and `hz()` is a single exact-factor product.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Model-supported carrier band, GHz. Frequencies outside it are legal
/// inputs but callers should surface a warning (the fitted parameters
/// are only claimed for this band).
pub const SUPPORTED_BAND_GHZ: (f64, f64) = (0.5, 100.0);

/// Carrier frequency. Always strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Frequency {
    ghz: f64,
}

impl Frequency {
    pub fn from_ghz(ghz: f64) -> Result<Self> {
        if !(ghz > 0.0) || !ghz.is_finite() {
            return Err(Error::domain(format!(
                "frequency must be a positive finite number, got {ghz} GHz"
            )));
        }
        Ok(Self { ghz })
    }

    pub fn from_hz(hz: f64) -> Result<Self> {
        if !(hz > 0.0) || !hz.is_finite() {
            return Err(Error::domain(format!(
                "frequency must be a positive finite number, got {hz} Hz"
            )));
        }
        Ok(Self { ghz: hz / 1e9 })
    }

    #[inline]
    pub fn hz(self) -> f64 {
        self.ghz * 1e9
    }

    #[inline]
    pub fn ghz(self) -> f64 {
        self.ghz
    }

    /// True when the carrier lies inside the band the model parameters
    /// were fitted for.
    pub fn in_supported_band(self) -> bool {
        self.ghz >= SUPPORTED_BAND_GHZ.0 && self.ghz <= SUPPORTED_BAND_GHZ.1
    }
}

/// 3D transmitter-receiver separation in meters. The path-loss models are
/// anchored at a 1 m free-space reference, so anything closer is rejected
/// rather than extrapolated.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distance {
    meters: f64,
}

impl Distance {
    pub fn from_meters(meters: f64) -> Result<Self> {
        if !meters.is_finite() || meters < 1.0 {
            return Err(Error::domain(format!(
                "path-loss distance must be >= 1 m (models are anchored at 1 m), got {meters} m"
            )));
        }
        Ok(Self { meters })
    }

    #[inline]
    pub fn meters(self) -> f64 {
        self.meters
    }
}
