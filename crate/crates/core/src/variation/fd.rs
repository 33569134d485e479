use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default base step for central differences.
pub const DEFAULT_STEP: f64 = 1e-3;

/// A Richardson-extrapolated derivative with the size of its last
/// correction as an error indicator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdEstimate {
    pub value: f64,
    pub error: f64,
}

/// Central differences at steps `h, h/2, h/4`, combined through a
/// three-level Richardson tableau (eliminating the `h²` and `h⁴` terms).
pub fn fd_derivative(f: impl Fn(f64) -> Result<f64>, t0: f64, step: f64) -> Result<FdEstimate> {
    let sample = |t: f64| -> Result<f64> {
        let y = f(t)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { t })
        }
    };
    let central = |h: f64| -> Result<f64> { Ok((sample(t0 + h)? - sample(t0 - h)?) / (2.0 * h)) };
    let d = [central(step)?, central(step / 2.0)?, central(step / 4.0)?];
    let r1 = [(4.0 * d[1] - d[0]) / 3.0, (4.0 * d[2] - d[1]) / 3.0];
    let value = (16.0 * r1[1] - r1[0]) / 15.0;
    Ok(FdEstimate {
        value,
        error: (value - r1[1]).abs(),
    })
}
