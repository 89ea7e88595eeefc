//! Suite configuration for `verify-paper`.

use catpure::concrete::ConcreteDescriptor;
use serde::{Deserialize, Serialize};

use crate::input::Failure;

pub const DEFAULT_CONFIG: &str = include_str!("../../../configs/default.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub categories: Categories,
    pub bounds: Bounds,
    pub corpus: Corpus,
}

/// The three concrete categories every check draws from.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Categories {
    pub capped: ConcreteDescriptor,
    pub finvect: ConcreteDescriptor,
    pub finmod: ConcreteDescriptor,
}

/// Object-size bounds. `suite` is the test-object bound of the purity checks and is the
/// value `--bound` replaces.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub suite: u64,
    pub stability_suite: u64,
    pub stability_span: u64,
    pub membership: u64,
    pub factorization_squares: u64,
    pub characterization_finmod: u64,
    pub oracle_diagram: u64,
    pub oracle_search: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub count: usize,
    pub seed: u64,
    pub summand_bound: u64,
}

impl SuiteConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self, Failure> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: SuiteConfig = serde_path_to_error::deserialize(de)
            .map_err(|e| Failure::usage(format!("{origin}: field `{}`: {}", e.path(), e.inner())))?;
        cfg.check_kinds(origin)?;
        Ok(cfg)
    }

    fn check_kinds(&self, origin: &str) -> Result<(), Failure> {
        let c = &self.categories;
        let wrong = |field: &str, want: &str| Failure::usage(format!("{origin}: field `categories.{field}.kind`: expected `{want}`"));
        if !matches!(c.capped, ConcreteDescriptor::Capped { .. }) {
            return Err(wrong("capped", "capped"));
        }
        if !matches!(c.finvect, ConcreteDescriptor::Finvect { .. }) {
            return Err(wrong("finvect", "finvect"));
        }
        if !matches!(c.finmod, ConcreteDescriptor::Finmod { .. }) {
            return Err(wrong("finmod", "finmod"));
        }
        Ok(())
    }
}
