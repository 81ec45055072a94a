//! Weight functions `σ: ℕ → [1, ∞)` used to scale each ℂ² block.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A block weight `σ(n)`.
///
/// The string form accepted by [`FromStr`] (and used on the command line):
///
/// | form             | σ(n)                  |
/// |------------------|-----------------------|
/// | `affine`         | `1 + n`               |
/// | `affine:a,b`     | `a + b·n`             |
/// | `log`            | `1 + ln(1 + n)`       |
/// | `poly:p`         | `(1 + n)^p`           |
/// | `const:c`        | `c` (bounded)         |
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum WeightFamily {
    Affine { offset: f64, slope: f64 },
    Logarithmic,
    Polynomial { exponent: f64 },
    Constant { value: f64 },
}

impl Default for WeightFamily {
    fn default() -> Self {
        WeightFamily::Affine {
            offset: 1.0,
            slope: 1.0,
        }
    }
}

impl WeightFamily {
    pub fn affine(offset: f64, slope: f64) -> Result<Self> {
        WeightFamily::Affine { offset, slope }.validated()
    }

    pub fn polynomial(exponent: f64) -> Result<Self> {
        WeightFamily::Polynomial { exponent }.validated()
    }

    pub fn constant(value: f64) -> Result<Self> {
        WeightFamily::Constant { value }.validated()
    }

    fn validated(self) -> Result<Self> {
        let fail = |reason: &str| Error::InvalidWeights {
            input: self.to_string(),
            reason: reason.to_owned(),
        };
        match self {
            WeightFamily::Affine { offset, slope } => {
                if !offset.is_finite() || !slope.is_finite() {
                    return Err(fail("parameters must be finite"));
                }
                if offset < 1.0 {
                    return Err(fail("offset must be >= 1"));
                }
                if slope <= 0.0 {
                    return Err(fail("slope must be > 0"));
                }
            }
            WeightFamily::Logarithmic => {}
            WeightFamily::Polynomial { exponent } => {
                if !exponent.is_finite() || exponent <= 0.0 {
                    return Err(fail("exponent must be finite and > 0"));
                }
            }
            WeightFamily::Constant { value } => {
                if !value.is_finite() || value < 1.0 {
                    return Err(fail("value must be finite and >= 1"));
                }
            }
        }
        Ok(self)
    }

    /// `σ(n)`; always `>= 1`.
    pub fn sigma(&self, n: usize) -> f64 {
        let m = n as f64;
        match *self {
            WeightFamily::Affine { offset, slope } => offset + slope * m,
            WeightFamily::Logarithmic => 1.0 + m.ln_1p(),
            WeightFamily::Polynomial { exponent } => (1.0 + m).powf(exponent),
            WeightFamily::Constant { value } => value,
        }
    }

    /// Unbounded families are the proper weights; only `const` is bounded.
    pub fn is_unbounded(&self) -> bool {
        !matches!(self, WeightFamily::Constant { .. })
    }
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFamily::Affine { offset, slope } => write!(f, "affine:{offset},{slope}"),
            WeightFamily::Logarithmic => f.write_str("log"),
            WeightFamily::Polynomial { exponent } => write!(f, "poly:{exponent}"),
            WeightFamily::Constant { value } => write!(f, "const:{value}"),
        }
    }
}

impl FromStr for WeightFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidWeights {
            input: s.to_owned(),
            reason: reason.to_owned(),
        };
        let num = |t: &str| -> Result<f64> {
            t.trim()
                .parse::<f64>()
                .map_err(|_| bad(&format!("`{}` is not a number", t.trim())))
        };

        let (kind, args) = match s.trim().split_once(':') {
            Some((k, a)) => (k.trim(), Some(a)),
            None => (s.trim(), None),
        };
        let family = match (kind, args) {
            ("affine", None) => WeightFamily::default(),
            ("affine", Some(a)) => {
                let parts: Vec<&str> = a.split(',').collect();
                if parts.len() != 2 {
                    return Err(bad("expected affine:<offset>,<slope>"));
                }
                WeightFamily::Affine {
                    offset: num(parts[0])?,
                    slope: num(parts[1])?,
                }
            }
            ("log", None) => WeightFamily::Logarithmic,
            ("poly", Some(a)) => WeightFamily::Polynomial { exponent: num(a)? },
            ("const", Some(a)) => WeightFamily::Constant { value: num(a)? },
            ("poly", None) | ("const", None) => return Err(bad("missing parameter")),
            ("log", Some(_)) => return Err(bad("log takes no parameters")),
            _ => return Err(bad("unknown family; expected affine, log, poly or const")),
        };
        family.validated().map_err(|e| match e {
            Error::InvalidWeights { reason, .. } => bad(&reason),
            other => other,
        })
    }
}

impl TryFrom<String> for WeightFamily {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<WeightFamily> for String {
    fn from(w: WeightFamily) -> String {
        w.to_string()
    }
}
