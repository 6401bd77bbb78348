//! System parameters shared by every module.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::ExtendedRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamsError {
    #[error("need 1 <= k <= n (got n={n}, k={k})")]
    Reconstruction { n: usize, k: usize },
    #[error("need 1 <= r <= n-1 (got n={n}, r={r})")]
    Failures { n: usize, r: usize },
    #[error("rho must be a rational in [0, 1] (got {0})")]
    Rho(String),
    #[error("file size must be a positive finite rational (got {0})")]
    FileSize(String),
}

/// One cache system instance: `n` nodes, any `k` of which rebuild the file;
/// `r` nodes partially fail per repair round keeping a fraction `rho` of
/// their content; the file has size `file_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemParams {
    n: usize,
    k: usize,
    r: usize,
    #[serde(with = "serde_rational")]
    rho: ExtendedRational,
    #[serde(with = "serde_rational")]
    file_size: ExtendedRational,
}

impl SystemParams {
    pub fn new(
        n: usize,
        k: usize,
        r: usize,
        rho: ExtendedRational,
        file_size: ExtendedRational,
    ) -> Result<Self, ParamsError> {
        if k == 0 || k > n {
            return Err(ParamsError::Reconstruction { n, k });
        }
        if r == 0 || r + 1 > n {
            return Err(ParamsError::Failures { n, r });
        }
        match rho.as_finite() {
            Some(v) if !v.is_negative() && *v <= num_rational::BigRational::one() => {}
            _ => return Err(ParamsError::Rho(rho.to_string())),
        }
        match file_size.as_finite() {
            Some(v) if v.is_positive() => {}
            _ => return Err(ParamsError::FileSize(file_size.to_string())),
        }
        Ok(Self {
            n,
            k,
            r,
            rho,
            file_size,
        })
    }

    /// Unit file size (`M = 1`).
    pub fn unit(n: usize, k: usize, r: usize, rho: ExtendedRational) -> Result<Self, ParamsError> {
        Self::new(n, k, r, rho, ExtendedRational::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rho(&self) -> &ExtendedRational {
        &self.rho
    }

    pub fn file_size(&self) -> &ExtendedRational {
        &self.file_size
    }

    /// Number of complete nodes that broadcast during a round.
    pub fn helpers(&self) -> usize {
        self.n - self.r
    }

    pub fn r_divides_k(&self) -> bool {
        self.k.is_multiple_of(self.r)
    }

    /// `⌈k/r⌉`, the number of repair rounds needed to touch every node a
    /// collector reads from.
    pub fn rounds(&self) -> usize {
        self.k.div_ceil(self.r)
    }

    /// The closed forms are only argued for `r <= n - k`.
    pub fn outside_proof_regime(&self) -> bool {
        self.r > self.n - self.k
    }

    /// `β = γ / (n - r)`.
    pub fn beta_for(&self, gamma: &ExtendedRational) -> ExtendedRational {
        gamma / ExtendedRational::from(self.helpers())
    }

    /// `γ = (n - r) β`.
    pub fn gamma_for(&self, beta: &ExtendedRational) -> ExtendedRational {
        ExtendedRational::from(self.helpers()) * beta
    }

    pub fn alpha1(&self, alpha: &ExtendedRational) -> ExtendedRational {
        &self.rho * alpha
    }

    pub fn one_minus_rho(&self) -> ExtendedRational {
        ExtendedRational::one() - &self.rho
    }

    pub fn rho_is_one(&self) -> bool {
        self.rho == ExtendedRational::one()
    }

    pub fn rho_is_zero(&self) -> bool {
        self.rho.as_finite().is_some_and(|v| v.is_zero())
    }
}

impl fmt::Display for SystemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} k={} r={} rho={} M={}",
            self.n, self.k, self.r, self.rho, self.file_size
        )
    }
}

mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::ExtendedRational;

    pub fn serialize<S: Serializer>(v: &ExtendedRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExtendedRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
