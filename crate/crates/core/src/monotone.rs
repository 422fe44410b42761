//! The one-parameter family `f_β` of symmetric normalized operator monotone
//! functions and the scalar means `m^f(x, y) = x f(y/x)`.
//!
//! Every member can be written as `f(x) = √x · h(ln x)` with `h` even and
//! `h(0) = 1`; symmetry `x f(1/x) = f(x)` is then structural. Evaluation goes
//! through `h`:
//!
//! - `β ∈ [1/2, 1]`: `h(u) = cosh(βu/2)^{1/β}`
//! - `β = 0`:        `h(u) = sinh(u/2) / (u/2)`
//! - otherwise:      `h(u) = β(1-β) sinh²(u/2) / (sinh(βu/2) sinh((1-β)u/2))`
//!
//! which are the hyperbolic rewrites of the piecewise definition. Close to
//! `x = 1` a second-order expansion `h ≈ 1 + c_β u²` takes over.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::operator::DensityMatrix;
use crate::{Error, Result};

/// Relative gap below which two arguments of a mean are treated as equal.
pub const NEAR_DEGENERATE: f64 = 1e-8;

/// Crossover `|x - 1|` for the series form of `f`.
pub const SERIES_CROSSOVER: f64 = 1e-6;

// beyond this |u| the hyperbolic ratios are assembled in log space
const LOG_DOMAIN_U: f64 = 40.0;

/// A source of symmetric means. `F_β` is the only family shipped; anything
/// else that yields a mean with `m(x, x) = x` and `m(x, y) = m(y, x)` plugs in
/// here.
pub trait MeanProvider: Send + Sync {
    /// `m(x, y)` for strictly positive arguments.
    fn mean(&self, x: f64, y: f64) -> f64;

    /// `f(x) = m(1, x)`.
    fn eval(&self, x: f64) -> f64 {
        self.mean(1.0, x)
    }

    /// Family parameter, for providers that belong to `F_β`.
    fn beta(&self) -> Option<f64> {
        None
    }
}

/// Member `f_β` of the family, `β ∈ [-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonotoneFunction {
    beta: f64,
}

impl MonotoneFunction {
    /// Symmetric logarithmic derivative, `f(x) = (1+x)/2`.
    pub const SLD: MonotoneFunction = MonotoneFunction { beta: 1.0 };
    /// Wigner–Yanase, `f(x) = ((1+√x)/2)²`.
    pub const WIGNER_YANASE: MonotoneFunction = MonotoneFunction { beta: 0.5 };
    /// Logarithmic mean, `f(x) = (x-1)/ln x`.
    pub const LOG: MonotoneFunction = MonotoneFunction { beta: 0.0 };
    /// Right logarithmic derivative, `f(x) = 2x/(1+x)`.
    pub const RLD: MonotoneFunction = MonotoneFunction { beta: -1.0 };

    pub fn new(beta: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::BetaOutOfRange(beta));
        }
        Ok(MonotoneFunction { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `f_β(x)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::NonPositiveArgument(x));
        }
        Ok(self.eval_unchecked(x))
    }

    /// `m^f(x, y) = x f(y/x)`.
    pub fn mean(&self, x: f64, y: f64) -> Result<f64> {
        for v in [x, y] {
            if !(v > 0.0) {
                return Err(Error::NonPositiveArgument(v));
            }
        }
        Ok(self.mean_unchecked(x, y))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        if x == 1.0 {
            return 1.0;
        }
        let u = x.ln();
        let h = if (x - 1.0).abs() < SERIES_CROSSOVER { self.h_series(u) } else { self.h(u) };
        x.sqrt() * h
    }

    fn mean_unchecked(&self, x: f64, y: f64) -> f64 {
        if (x / y - 1.0).abs() < NEAR_DEGENERATE {
            return 0.5 * (x + y);
        }
        let u = y.ln() - x.ln();
        let h = if u.abs() < SERIES_CROSSOVER { self.h_series(u) } else { self.h(u) };
        x.sqrt() * y.sqrt() * h
    }

    fn series_coefficient(&self) -> f64 {
        let b = self.beta;
        if b >= 0.5 {
            b / 8.0
        } else {
            (1.0 + 2.0 * b - 2.0 * b * b) / 24.0
        }
    }

    fn h_series(&self, u: f64) -> f64 {
        1.0 + self.series_coefficient() * u * u
    }

    fn h(&self, u: f64) -> f64 {
        let b = self.beta;
        let big = u.abs() > LOG_DOMAIN_U;
        if b >= 0.5 {
            (ln_cosh((0.5 * b * u).abs()) / b).exp()
        } else if b == 0.0 {
            let z = 0.5 * u.abs();
            if big {
                (ln_sinh(z) - z.ln()).exp()
            } else {
                z.sinh() / z
            }
        } else {
            // sinh is odd, so the ratio only depends on |u|; signs collect in β(1-β)
            let z = 0.5 * u.abs();
            let zb = b.abs() * z;
            let zc = (1.0 - b) * z;
            let prefactor = (b * (1.0 - b)).abs();
            if big {
                (prefactor.ln() + 2.0 * ln_sinh(z) - ln_sinh(zb) - ln_sinh(zc)).exp()
            } else {
                let s = z.sinh();
                prefactor * s * s / (zb.sinh() * zc.sinh())
            }
        }
    }
}

/// `ln cosh z` for `z ≥ 0`.
fn ln_cosh(z: f64) -> f64 {
    if z < 20.0 {
        z.cosh().ln()
    } else {
        z - std::f64::consts::LN_2 + (-2.0 * z).exp().ln_1p()
    }
}

/// `ln sinh z` for `z > 0`.
fn ln_sinh(z: f64) -> f64 {
    if z < 20.0 {
        z.sinh().ln()
    } else {
        z - std::f64::consts::LN_2 + (-(-2.0 * z).exp()).ln_1p()
    }
}

impl MeanProvider for MonotoneFunction {
    fn mean(&self, x: f64, y: f64) -> f64 {
        self.mean_unchecked(x, y)
    }

    fn eval(&self, x: f64) -> f64 {
        self.eval_unchecked(x)
    }

    fn beta(&self) -> Option<f64> {
        Some(self.beta)
    }
}

impl fmt::Display for MonotoneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.beta)
    }
}

impl FromStr for MonotoneFunction {
    type Err = Error;

    /// A decimal `β` or one of `sld`, `wy`, `rld`, `log`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sld" => Ok(Self::SLD),
            "wy" => Ok(Self::WIGNER_YANASE),
            "rld" => Ok(Self::RLD),
            "log" => Ok(Self::LOG),
            other => {
                let beta: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("`{s}` is neither a number nor sld/wy/rld/log")))?;
                MonotoneFunction::new(beta)
            }
        }
    }
}

impl Serialize for MonotoneFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.beta)
    }
}

impl<'de> Deserialize<'de> for MonotoneFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Alias(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(b) => MonotoneFunction::new(b),
            Repr::Alias(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// `m^f(p_i, p_j)` over the spectrum of a state.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanMatrix {
    values: DMatrix<f64>,
}

impl MeanMatrix {
    pub fn dim(&self) -> usize {
        self.values.nrows()
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }
}

/// Means over eigenvalue pairs; the diagonal is `p_i` exactly and every entry
/// is kept inside `[min(p_i, p_j), max(p_i, p_j)]`.
pub fn mean_matrix<M: MeanProvider + ?Sized>(f: &M, rho: &DensityMatrix) -> MeanMatrix {
    MeanMatrix { values: means_over(f, rho.eigenvalues()) }
}

/// `m(x, y)` forced into `[min(x, y), max(x, y)]` against rounding.
pub(crate) fn clamped_mean<M: MeanProvider + ?Sized>(f: &M, x: f64, y: f64) -> f64 {
    f.mean(x, y).clamp(x.min(y), x.max(y))
}

pub(crate) fn means_over<M: MeanProvider + ?Sized>(f: &M, p: &[f64]) -> DMatrix<f64> {
    let d = p.len();
    let mut values = DMatrix::zeros(d, d);
    for i in 0..d {
        values[(i, i)] = p[i];
        for j in i + 1..d {
            let m = clamped_mean(f, p[i], p[j]);
            values[(i, j)] = m;
            values[(j, i)] = m;
        }
    }
    values
}
