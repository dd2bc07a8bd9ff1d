use std::path::Path;

use carlitz_core::algebra::Field;
use carlitz_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Run settings. A `CARLITZ_DEFAULTS` file may give any subset of the
/// fields; flags override it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub p: u32,
    pub gamma: u32,
    /// `gamma + 1` residues mod p, constant term first.
    pub modulus: Option<Vec<u32>>,
    pub imax: usize,
    #[serde(rename = "M")]
    pub m: usize,
    /// Working precision in units of `x^(1/d)`.
    pub prec: i64,
    /// Largest ramification denominator; q^2 when absent.
    pub ram_cap: Option<u64>,
    pub seed: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            gamma: 1,
            modulus: None,
            imax: 8,
            m: 8,
            prec: 64,
            ram_cap: None,
            seed: 0,
            format: Format::Text,
        }
    }
}

/// Flag values; `None` leaves the configured value alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub p: Option<u32>,
    pub gamma: Option<u32>,
    pub modulus: Option<Vec<u32>>,
    pub imax: Option<usize>,
    pub m: Option<usize>,
    pub prec: Option<i64>,
    pub ram_cap: Option<u64>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read defaults file {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("defaults file {}: {e}", path.display())))
    }

    pub fn apply(mut self, o: &Overrides) -> RunConfig {
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = &o.$f { self.$f = v.clone(); })* };
        }
        set!(p, gamma, imax, m, prec, seed, format);
        if o.modulus.is_some() {
            self.modulus = o.modulus.clone();
        }
        if o.ram_cap.is_some() {
            self.ram_cap = o.ram_cap;
        }
        self
    }

    /// Checks every field and builds the coefficient field.
    pub fn field(&self) -> Result<Field> {
        let base = match &self.modulus {
            Some(m) => Field::with_modulus(self.p, self.gamma, m)?,
            None => Field::new(self.p, self.gamma)?,
        };
        if self.m == 0 {
            return Err(Error::Domain("M must be at least 1".into()));
        }
        if self.prec < 1 {
            return Err(Error::Domain("prec must be at least 1".into()));
        }
        let q = base.q() as u64;
        let field = match self.ram_cap {
            Some(cap) => {
                if !is_power_of(cap, q) {
                    return Err(Error::Domain(format!("ram cap {cap} is not a power of q = {q}")));
                }
                base.with_ram_cap(cap)
            }
            None => base,
        };
        Ok(field.with_work_prec(self.prec))
    }
}

fn is_power_of(mut n: u64, q: u64) -> bool {
    while n > 1 && n % q == 0 {
        n /= q;
    }
    n == 1
}
