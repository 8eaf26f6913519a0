//! Shipped default decompositions and quotient catalogs.

use crate::error::{Error, Result};
use crate::topology::PantsDecomposition;

/// `(key, genus, punctures, json)` for every shipped default decomposition.
pub const SURFACES: &[(&str, u32, u32, &str)] = &[
    ("s1_1", 1, 1, include_str!("../assets/surfaces/s1_1.json")),
    ("s0_4", 0, 4, include_str!("../assets/surfaces/s0_4.json")),
    ("s1_2", 1, 2, include_str!("../assets/surfaces/s1_2.json")),
    ("s0_5", 0, 5, include_str!("../assets/surfaces/s0_5.json")),
    ("s2_0", 2, 0, include_str!("../assets/surfaces/s2_0.json")),
];

/// Alternative decompositions used in tests and examples.
pub const EXTRA_SURFACES: &[(&str, &str)] = &[("s2_0_theta", include_str!("../assets/surfaces/s2_0_theta.json"))];

pub const CATALOGS: &[(&str, &str)] = &[
    ("s1_1", include_str!("../assets/catalogs/s1_1.json")),
    ("s0_4", include_str!("../assets/catalogs/s0_4.json")),
    ("s1_2", include_str!("../assets/catalogs/s1_2.json")),
    ("s0_5", include_str!("../assets/catalogs/s0_5.json")),
    ("s2_0", include_str!("../assets/catalogs/s2_0.json")),
];

pub fn surface_key(genus: u32, punctures: u32) -> String {
    format!("s{genus}_{punctures}")
}

/// The shipped default decomposition for `key` (e.g. `s1_1` or `s2_0_theta`).
pub fn decomposition(key: &str) -> Result<PantsDecomposition> {
    let json = SURFACES
        .iter()
        .find(|s| s.0 == key)
        .map(|s| s.3)
        .or_else(|| EXTRA_SURFACES.iter().find(|s| s.0 == key).map(|s| s.1))
        .ok_or_else(|| Error::InvalidArgument(format!("no shipped surface `{key}`")))?;
    PantsDecomposition::from_json(json)
}

pub fn default_decomposition(genus: u32, punctures: u32) -> Result<PantsDecomposition> {
    decomposition(&surface_key(genus, punctures))
}

pub fn catalog_json(key: &str) -> Result<&'static str> {
    CATALOGS
        .iter()
        .find(|c| c.0 == key)
        .map(|c| c.1)
        .ok_or_else(|| Error::InvalidArgument(format!("no shipped catalog `{key}`")))
}
