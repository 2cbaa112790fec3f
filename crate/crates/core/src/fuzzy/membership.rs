use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Lower bound on every Gaussian spread, in normalized input units.
pub const SIGMA_MIN: f64 = 1e-4;

/// Gaussian membership function `exp(-(x - center)^2 / (2 sigma^2))`.
///
/// The spread is kept at or above [`SIGMA_MIN`]; degrees are floored at the
/// smallest positive normal value so the result always lies in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFunction<T> {
    center: T,
    sigma: T,
}

impl<T: Scalar> MembershipFunction<T> {
    pub fn new(center: T, sigma: T) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::invalid(format!("membership center {center} is not finite")));
        }
        if !sigma.is_finite() || sigma <= T::zero() {
            return Err(Error::invalid(format!("membership sigma {sigma} must be finite and > 0")));
        }
        Ok(Self {
            center,
            sigma: sigma.max(T::lit(SIGMA_MIN)),
        })
    }

    pub fn center(&self) -> T {
        self.center
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    /// Checked evaluation: rejects non-finite inputs.
    pub fn evaluate(&self, x: T) -> Result<T> {
        if !x.is_finite() {
            return Err(Error::invalid(format!("membership input {x} is not finite")));
        }
        Ok(self.degree(x))
    }

    /// Unchecked evaluation used on hot paths; callers validate `x` once.
    #[inline]
    pub fn degree(&self, x: T) -> T {
        let d = (x - self.center) / self.sigma;
        (-(d * d) / T::lit(2.0)).exp().max(T::min_positive_value())
    }

    /// Updates both parameters, clamping the spread to the floor.
    /// Returns `true` when the clamp fired.
    pub(crate) fn set(&mut self, center: T, sigma: T) -> bool {
        self.center = center;
        let floor = T::lit(SIGMA_MIN);
        // NaN sigma also lands on the floor.
        if sigma >= floor {
            self.sigma = sigma;
            false
        } else {
            self.sigma = floor;
            true
        }
    }
}

/// One input dimension and its ordered set of membership functions.
#[derive(Debug, Clone, PartialEq)]
pub struct InputVariable<T> {
    pub name: String,
    mfs: Vec<MembershipFunction<T>>,
}

impl<T: Scalar> InputVariable<T> {
    /// Explicit construction. A single membership function is accepted here
    /// (it yields a rule base that ignores this input); grid topologies built
    /// by [`InputVariable::grid`] always have at least two.
    pub fn new(name: impl Into<String>, mfs: Vec<MembershipFunction<T>>) -> Result<Self> {
        let name = name.into();
        if mfs.is_empty() {
            return Err(Error::invalid(format!("input '{name}' has no membership functions")));
        }
        Ok(Self { name, mfs })
    }

    /// Evenly spaced centers over `[lo, hi]` with `sigma = (hi - lo) / (2 (count - 1))`,
    /// so neighbouring functions cross close to 0.5.
    pub fn grid(name: impl Into<String>, lo: T, hi: T, count: usize) -> Result<Self> {
        let name = name.into();
        if count < 2 {
            return Err(Error::invalid(format!(
                "input '{name}' needs at least 2 membership functions, got {count}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::invalid(format!(
                "input '{name}' has an empty or invalid range [{lo}, {hi}]"
            )));
        }
        let range = hi - lo;
        let steps = T::lit((count - 1) as f64);
        let sigma = range / (T::lit(2.0) * steps);
        let mfs = (0..count)
            .map(|k| MembershipFunction::new(lo + range * T::lit(k as f64) / steps, sigma))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { name, mfs })
    }

    pub fn mfs(&self) -> &[MembershipFunction<T>] {
        &self.mfs
    }

    pub(crate) fn mfs_mut(&mut self) -> &mut [MembershipFunction<T>] {
        &mut self.mfs
    }

    pub fn mf_count(&self) -> usize {
        self.mfs.len()
    }
}
