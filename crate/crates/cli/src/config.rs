//! Run settings, read from an optional TOML file and overridden by flags.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use skdv_algebra::random::random_nonzero_rational;
use skdv_algebra::{fmt_rational, parse_rational, Q};
use skdv_core::{CoreError, Exec, Result};

/// Keys accepted in the config file. Every key is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub seeds: Option<Vec<u64>>,
    pub trials: Option<usize>,
    pub n_max: Option<usize>,
    pub psi_n_max: Option<usize>,
    pub height: Option<i64>,
    pub h: Option<String>,
    pub generic_h: Option<bool>,
    pub sequential: Option<bool>,
    /// Germs per divisor in the invariant finder.
    pub samples: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CoreError::Invalid(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CoreError::Invalid(format!("config: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    /// Base seed of every random choice.
    pub seed: u64,
    /// Seeds that must agree where a check samples several times.
    pub seeds: Vec<u64>,
    /// Random lines per degree measurement.
    pub trials: usize,
    pub n_max: usize,
    pub psi_n_max: usize,
    pub height: i64,
    /// Fixed `h` for sampled computations; drawn from the seed when `None`.
    pub h: Option<Q>,
    /// Keep `h` transcendental in tower and finder computations.
    pub generic_h: bool,
    pub samples: usize,
    pub exec: Exec,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 1,
            seeds: vec![1, 2, 3],
            trials: 3,
            n_max: 10,
            psi_n_max: 8,
            height: 97,
            h: None,
            generic_h: false,
            samples: 4,
            exec: Exec::default(),
        }
    }
}

impl Settings {
    pub fn apply(&mut self, f: &FileConfig) -> Result<()> {
        if let Some(s) = f.seed {
            self.seed = s;
        }
        if let Some(s) = &f.seeds {
            if s.is_empty() {
                return Err(CoreError::Invalid("config: seeds is empty".into()));
            }
            self.seeds = s.clone();
        }
        if let Some(t) = f.trials {
            self.trials = t;
        }
        if let Some(n) = f.n_max {
            self.n_max = n;
        }
        if let Some(n) = f.psi_n_max {
            self.psi_n_max = n;
        }
        if let Some(hh) = f.height {
            self.height = hh;
        }
        if let Some(h) = &f.h {
            self.h = Some(parse_q(h)?);
        }
        if let Some(g) = f.generic_h {
            self.generic_h = g;
        }
        if let Some(s) = f.samples {
            self.samples = s;
        }
        if f.sequential == Some(true) {
            self.exec = Exec::Sequential;
        }
        Ok(())
    }

    /// A nonzero rational determined by the seed and a salt.
    pub fn generic_rational(&self, salt: u64) -> Q {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt);
        random_nonzero_rational(&mut rng, self.height)
    }

    /// `h` for sampled computations.
    pub fn h_value(&self) -> Q {
        self.h.clone().unwrap_or_else(|| self.generic_rational(0x68))
    }
}

/// Parses `p/q` or an integer.
pub fn parse_q(s: &str) -> Result<Q> {
    parse_rational(s.trim()).ok_or_else(|| CoreError::Invalid(format!("not a rational number: {s}")))
}

pub fn show_q(q: &Q) -> String {
    fmt_rational(q)
}
