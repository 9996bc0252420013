//! Run configuration and its canonical text form.
//!
//! The canonical form is the flag list the CLI accepts, in a fixed order:
//! `--group gl2 --q 5 --weights 1,0;0,1 --psi 1 --mode exact --tol … --convention +1,1,-4`.

use std::fmt;
use std::str::FromStr;

use bkk_core::bessel::WeightSet;
use bkk_core::field::{AdditiveCharacter, PrimeField};
use bkk_core::kernel::Convention;
use bkk_core::rootdata::Preset;
use serde::Serialize;

use crate::error::UsageError;

/// The convention frozen by calibration: least passing record.
pub const CANONICAL_CONVENTION: Convention = Convention {
    sign: 1,
    invert: true,
    q_exponent: -4,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Float => "float",
            Mode::Exact => "exact",
        })
    }
}

impl FromStr for Mode {
    type Err = UsageError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Mode::Float),
            "exact" => Ok(Mode::Exact),
            _ => Err(UsageError::new(format!("mode must be float or exact, got {s:?}"))),
        }
    }
}

/// Pass thresholds, each overridable by name.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Absolute, float Gauss-product comparison.
    pub gauss: f64,
    /// Eigen error relative to `dim π · max(1, |γ(π)|)`.
    pub eigen: f64,
    /// Relative residual of `φ ≈ c·ψ∘tr`.
    pub std: f64,
    /// Off-Borel sums relative to `max |φ|`.
    pub vanishing: f64,
    /// Some on-Borel sum must exceed this multiple of `max |φ|`.
    pub nontrivial: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gauss: 1e-9,
            eigen: 1e-8,
            std: 1e-9,
            vanishing: 1e-8,
            nontrivial: 1e-3,
        }
    }
}

impl Tolerances {
    const NAMES: [&'static str; 5] = ["gauss", "eigen", "std", "vanishing", "nontrivial"];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        match name {
            "gauss" => Some(&mut self.gauss),
            "eigen" => Some(&mut self.eigen),
            "std" => Some(&mut self.std),
            "vanishing" => Some(&mut self.vanishing),
            "nontrivial" => Some(&mut self.nontrivial),
            _ => None,
        }
    }

    /// Apply `name=value,name=value` overrides on top of `self`.
    pub fn with_overrides(mut self, text: &str) -> Result<Self, UsageError> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| UsageError::new(format!("tolerance {item:?} is not NAME=VALUE")))?;
            let value: f64 = value
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite() && *v > 0.0)
                .ok_or_else(|| UsageError::new(format!("tolerance {name} must be a positive number")))?;
            let slot = self.slot(name).ok_or_else(|| {
                UsageError::new(format!("unknown tolerance {name:?}; known: {}", Self::NAMES.join(", ")))
            })?;
            *slot = value;
        }
        Ok(self)
    }
}

impl fmt::Display for Tolerances {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gauss={:e},eigen={:e},std={:e},vanishing={:e},nontrivial={:e}",
            self.gauss, self.eigen, self.std, self.vanishing, self.nontrivial
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub group: Preset,
    pub q: u32,
    pub weights: WeightSet,
    /// Root index `r` of `ψ(x) = ζ_p^{r·Tr x}`.
    pub psi: u32,
    pub mode: Mode,
    pub tol: Tolerances,
    pub convention: Convention,
}

/// `(p, k)` with `q = p^k`, `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl RunConfig {
    /// Defaults for a group and `q`: standard weights, `ψ` with root index
    /// 1, float mode, default tolerances, canonical convention.
    pub fn new(group: Preset, q: u32) -> Result<Self, UsageError> {
        let weights = match group {
            Preset::Sl2 => WeightSet::parse("1").expect("literal weights"),
            _ => WeightSet::standard(group.rank()),
        };
        let config = Self {
            group,
            q,
            weights,
            psi: 1,
            mode: Mode::Float,
            tol: Tolerances::default(),
            convention: CANONICAL_CONVENTION,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let (p, _) = prime_power(self.q)
            .ok_or_else(|| UsageError::new(format!("q = {} is not a prime power", self.q)))?;
        if p > 97 {
            return Err(UsageError::new(format!("q = {} is too large: the characteristic must be at most 97", self.q)));
        }
        if self.psi == 0 || self.psi >= p {
            return Err(UsageError::new(format!("psi root index must lie in 1..{p}, got {}", self.psi)));
        }
        if self.weights.rank() != self.group.rank() {
            return Err(UsageError::new(format!(
                "weights have rank {}, {} has rank {}",
                self.weights.rank(),
                self.group,
                self.group.rank()
            )));
        }
        Ok(())
    }

    pub fn characteristic(&self) -> u32 {
        prime_power(self.q).expect("validated").0
    }

    /// `F_q`; only `q = p` and `q = p²` are implemented.
    pub fn field(&self) -> Result<PrimeField, UsageError> {
        let (p, k) = prime_power(self.q).expect("validated");
        PrimeField::new(p, k).map_err(|e| UsageError::new(e.to_string()))
    }

    pub fn additive_character(&self) -> AdditiveCharacter {
        AdditiveCharacter::new(self.characteristic(), self.psi).expect("validated root index")
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "--group {} --q {} --weights {} --psi {} --mode {} --tol {} --convention {}",
            self.group,
            self.q,
            self.weights.canonical_string(),
            self.psi,
            self.mode,
            self.tol,
            self.convention
        )
    }
}

impl RunConfig {
    /// Build from `(flag, value)` pairs without leading dashes, in any
    /// order; `group` and `q` are required.
    pub fn from_flags(pairs: &[(&str, &str)]) -> Result<Self, UsageError> {
        for (i, (flag, _)) in pairs.iter().enumerate() {
            if pairs[..i].iter().any(|(f, _)| f == flag) {
                return Err(UsageError::new(format!("flag --{flag} given twice")));
            }
        }
        let get = |name: &str| pairs.iter().find(|(f, _)| *f == name).map(|(_, v)| *v);
        let group: Preset = get("group")
            .ok_or_else(|| UsageError::new("missing --group"))?
            .parse()
            .map_err(|e: bkk_core::error::RootDataError| UsageError::new(e.to_string()))?;
        let q: u32 = get("q")
            .ok_or_else(|| UsageError::new("missing --q"))?
            .parse()
            .map_err(|_| UsageError::new("--q must be a positive integer"))?;
        let mut config = Self::new(group, q)?;
        for (flag, value) in pairs {
            match *flag {
                "group" | "q" => {}
                "weights" => {
                    config.weights = WeightSet::parse(value).map_err(|e| UsageError::new(e.to_string()))?;
                }
                "psi" => {
                    config.psi = value.parse().map_err(|_| UsageError::new("--psi must be a positive integer"))?;
                }
                "mode" => config.mode = value.parse()?,
                "tol" => config.tol = config.tol.with_overrides(value)?,
                "convention" => {
                    config.convention = value.parse().map_err(|e: bkk_core::kernel::ConventionParseError| {
                        UsageError::new(e.to_string())
                    })?;
                }
                other => return Err(UsageError::new(format!("unknown flag --{other}"))),
            }
        }
        config.validate()?;
        Ok(config)
    }
}

impl FromStr for RunConfig {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if !tokens.len().is_multiple_of(2) {
            return Err(UsageError::new("expected --flag value pairs"));
        }
        let pairs = tokens
            .chunks(2)
            .map(|pair| {
                pair[0]
                    .strip_prefix("--")
                    .map(|flag| (flag, pair[1]))
                    .ok_or_else(|| UsageError::new(format!("expected a flag, got {:?}", pair[0])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_flags(&pairs)
    }
}
