use serde::{Deserialize, Serialize};

/// Caps applied by the enumerating operations.
///
/// Exceeding `vertex_cap` or `breaking_cap` is a hard error. The sample caps
/// only truncate lists of examples, never verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Maximum number of vertices for subset enumeration.
    pub vertex_cap: usize,
    /// Maximum size of a breaking-vertex set when enumerating `S ⊆ B_H`.
    pub breaking_cap: usize,
    /// Number of edge indices sampled from each ω bundle.
    pub omega_samples: u64,
    /// Maximum number of sample paths kept in compatible-path counts.
    pub sample_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            vertex_cap: 16,
            breaking_cap: 16,
            omega_samples: 2,
            sample_cap: 8,
        }
    }
}
