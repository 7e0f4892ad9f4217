use serde::{Deserialize, Serialize};

/// Resource limits shared by the enumeration kernels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    /// Largest subgroup index accepted by low-index enumeration.
    pub max_index: usize,
    /// Largest symmetric-group degree for homomorphism enumeration.
    pub max_hom_degree: usize,
    /// Search-node limit for backtracking and brute-force enumeration.
    pub max_nodes: u64,
    /// Cap on the index of any computed intersection or kernel.
    pub max_result_index: u64,
    /// Coset limit for coset enumeration.
    pub max_cosets: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_index: 6,
            max_hom_degree: 4,
            max_nodes: 10_000_000,
            max_result_index: 10_000,
            max_cosets: 1_000_000,
        }
    }
}
