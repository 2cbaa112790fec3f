use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use neurofuzz::{GaConfig, HybridConfig, PsoConfig, SearchMode, SynthKind};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trainer {
    Anfis,
    AnfisGa,
    AnfisPso,
}

impl Trainer {
    pub const ALL: [Trainer; 3] = [Trainer::Anfis, Trainer::AnfisGa, Trainer::AnfisPso];

    /// Name used in flags, config files and output directories.
    pub fn key(self) -> &'static str {
        match self {
            Self::Anfis => "anfis",
            Self::AnfisGa => "anfis-ga",
            Self::AnfisPso => "anfis-pso",
        }
    }

    /// Row label in comparison tables.
    pub fn method(self) -> &'static str {
        match self {
            Self::Anfis => "ANFIS",
            Self::AnfisGa => "ANFIS-GA",
            Self::AnfisPso => "ANFIS-PSO",
        }
    }

    /// Stream tag mixed into the run seed, so a trainer's random draws do not
    /// depend on which other trainers run alongside it.
    fn seed_tag(self) -> u64 {
        match self {
            Self::Anfis => 0x414e_4649_53,
            Self::AnfisGa => 0x4741,
            Self::AnfisPso => 0x50_534f,
        }
    }

    pub fn derived_seed(self, run_seed: u64) -> u64 {
        // splitmix64 finalizer
        let mut z = run_seed ^ self.seed_tag().wrapping_mul(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

impl FromStr for Trainer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Trainer::ALL
            .into_iter()
            .find(|t| t.key() == s)
            .ok_or_else(|| format!("unknown trainer '{s}' (expected anfis, anfis-ga or anfis-pso)"))
    }
}

impl fmt::Display for Trainer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub n: usize,
    #[serde(default)]
    pub noise: f64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum DataSource {
    Csv(PathBuf),
    Synthetic(SynthSpec),
}

/// A complete, reproducible experiment description.
///
/// The `seed` fields inside `ga` and `pso` are ignored: each trainer's seed is
/// derived from the run `seed` and the trainer name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub data: DataSource,
    /// Drives the train/test split and every trainer's random stream.
    pub seed: u64,
    /// Gaussian MFs per input.
    pub mf_count: usize,
    pub trainers: Vec<Trainer>,
    pub hybrid: HybridConfig,
    pub ga: GaConfig,
    pub pso: PsoConfig,
    pub mode: SearchMode,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            data: DataSource::Synthetic(SynthSpec {
                kind: SynthKind::HvacLike,
                n: 300,
                noise: 0.01,
                seed: 42,
            }),
            seed: 42,
            mf_count: 3,
            trainers: Trainer::ALL.to_vec(),
            hybrid: HybridConfig::default(),
            ga: GaConfig::default(),
            pso: PsoConfig::default(),
            mode: SearchMode::PremiseLse,
            out_dir: PathBuf::from("neurofuzz-out"),
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trainers: Vec<Trainer>,
    pub out_dir: Option<PathBuf>,
    pub mf_count: Option<usize>,
    pub mode: Option<SearchMode>,
    pub data: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config("read config", e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("read config", format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config("read config", format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config is always serializable")
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if !o.trainers.is_empty() {
            self.trainers = o.trainers.clone();
        }
        if let Some(d) = &o.out_dir {
            self.out_dir = d.clone();
        }
        if let Some(m) = o.mf_count {
            self.mf_count = m;
        }
        if let Some(m) = o.mode {
            self.mode = m;
        }
        if let Some(p) = &o.data {
            self.data = DataSource::Csv(p.clone());
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |msg: String| Err(CliError::config("validate config", msg));
        if self.trainers.is_empty() {
            return fail("select at least one trainer".into());
        }
        for (i, t) in self.trainers.iter().enumerate() {
            if self.trainers[..i].contains(t) {
                return fail(format!("trainer '{t}' is selected twice"));
            }
        }
        if self.mf_count < 2 {
            return fail(format!("mf_count must be >= 2, got {}", self.mf_count));
        }
        if let DataSource::Synthetic(s) = &self.data {
            if !(s.noise.is_finite() && s.noise >= 0.0) {
                return fail(format!("synthetic noise must be finite and >= 0, got {}", s.noise));
            }
        }
        let nested = |r: neurofuzz::Result<()>| r.map_err(|e| CliError::config("validate config", e.to_string()));
        nested(self.hybrid.validate())?;
        if self.trainers.contains(&Trainer::AnfisGa) {
            nested(self.ga.validate())?;
        }
        if self.trainers.contains(&Trainer::AnfisPso) {
            nested(self.pso.validate())?;
        }
        Ok(())
    }
}
