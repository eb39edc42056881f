use serde::{Deserialize, Serialize};

/// Work limits for the exhaustive routines, plus the switch for internal
/// parallel loops. Every field can be overridden from an instance file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    /// Largest `n^k` that may be enumerated.
    pub enumeration: u128,
    /// Largest `|B|^2 * |G|` accepted when building a poset.
    pub poset_work: u128,
    /// Largest `n` for which all of `S_n` is scanned in the χ-matroid test.
    pub sigma_max_n: usize,
    /// Facet count up to which a failed shelling search certifies "no".
    pub facet_cap: usize,
    /// Search-node budget for shelling attempts above the facet cap.
    pub shell_steps: u64,
    /// Largest number of order ideals that will be listed.
    pub ideal_cap: usize,
    /// Posets up to this size get their order axioms re-verified.
    pub verify_axioms_up_to: usize,
    pub parallel: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: 2_000_000,
            poset_work: 4_000_000_000,
            sigma_max_n: 7,
            facet_cap: 24,
            shell_steps: 250_000,
            ideal_cap: 100_000,
            verify_axioms_up_to: 2048,
            parallel: false,
        }
    }
}
