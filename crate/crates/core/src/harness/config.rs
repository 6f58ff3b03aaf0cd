use serde::Deserialize;

use super::HarnessError;
use crate::permgroup::PermGroup;

/// Suite configuration, read from TOML.
///
/// ```toml
/// seed = 7
/// depth = 5
/// samples = 20
///
/// [[groups]]
/// name = "D5"
/// degree = 5
/// generators = "(2 5)(3 4);(1 2 3 4 5)"
/// expect_orbits = [1, 2, 4, 8, 16]
/// ```
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Orbit-growth depth and radius of the exhaustive ball checks.
    #[serde(default = "default_depth")]
    pub depth: usize,
    /// Random samples per invariant battery.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub groups: Vec<GroupSpec>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub degree: u8,
    /// Generators in cycle notation separated by `;`.
    pub generators: String,
    #[serde(default)]
    pub expect_order: Option<usize>,
    #[serde(default)]
    pub expect_2transitive: Option<bool>,
    #[serde(default)]
    pub expect_primitive: Option<bool>,
    /// Expected `o_1, o_2, …`; compared on the common prefix with the
    /// computed growth.
    #[serde(default)]
    pub expect_orbits: Option<Vec<u128>>,
}

fn default_seed() -> u64 {
    1
}

fn default_depth() -> usize {
    5
}

fn default_samples() -> usize {
    20
}

impl GroupSpec {
    pub fn new(name: &str, degree: u8, generators: &str) -> Self {
        GroupSpec {
            name: name.to_string(),
            degree,
            generators: generators.to_string(),
            expect_order: None,
            expect_2transitive: None,
            expect_primitive: None,
            expect_orbits: None,
        }
    }

    pub fn build(&self) -> Result<PermGroup, HarnessError> {
        if self.degree < 3 {
            return Err(HarnessError::NeedsThreeColors(self.degree));
        }
        PermGroup::parse(self.degree, &self.generators).map_err(|source| HarnessError::Group {
            name: self.name.clone(),
            source,
        })
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    /// Sym(3), Sym(5), A₅, D5, C4 and C5 at depth 5.
    pub fn default_suite() -> Self {
        let mut groups = vec![
            GroupSpec::new("Sym3", 3, "(1 2);(1 2 3)"),
            GroupSpec::new("Sym5", 5, "(1 2);(1 2 3 4 5)"),
            GroupSpec::new("A5", 5, "(1 2 3);(1 2 3 4 5)"),
            GroupSpec::new("D5", 5, "(2 5)(3 4);(1 2 3 4 5)"),
            GroupSpec::new("C4", 4, "(1 2 3 4)"),
            GroupSpec::new("C5", 5, "(1 2 3 4 5)"),
        ];
        let expectations: [(usize, bool, bool, &[u128]); 6] = [
            (6, true, true, &[1, 1, 1, 1, 1]),
            (120, true, true, &[1, 1, 1, 1, 1]),
            (60, true, true, &[1, 1, 1, 1, 1]),
            (10, false, true, &[1, 2, 4, 8, 16]),
            (4, false, false, &[1, 3, 9, 27, 81]),
            (5, false, true, &[1, 4, 16, 64, 256]),
        ];
        for (g, (order, two, prim, orbits)) in groups.iter_mut().zip(expectations) {
            g.expect_order = Some(order);
            g.expect_2transitive = Some(two);
            g.expect_primitive = Some(prim);
            g.expect_orbits = Some(orbits.to_vec());
        }
        SuiteConfig {
            seed: default_seed(),
            depth: default_depth(),
            samples: default_samples(),
            groups,
        }
    }
}
