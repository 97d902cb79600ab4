//! Rank of `H¹(X, μ_ℓ)` assembled from skeleton data.

use thiserror::Error;

use super::cochain::{harm_basis, CochainError};
use super::SemiGraph;
use crate::modular::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("ell = {0} is not prime")]
    NotPrime(u64),
    #[error("ell must differ from the residue characteristic {0}")]
    ResidueCharacteristic(u64),
    #[error("{genera} genera supplied for {vertices} vertices")]
    GenusCount { genera: usize, vertices: usize },
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

impl RankError {
    pub fn code(&self) -> &'static str {
        match self {
            RankError::NotPrime(_) => "ell_not_prime",
            RankError::ResidueCharacteristic(_) => "ell_equals_p",
            RankError::GenusCount { .. } => "genus_count",
            RankError::Cochain(e) => e.code(),
        }
    }
}

/// `betti(Γ) + Σ 2g(x) + rank Harm(Γ, Z/ℓ)`.
pub fn h1_rank(g: &SemiGraph, genera: &[u64], ell: u64, p: u64) -> Result<u64, RankError> {
    if !is_prime(ell) {
        return Err(RankError::NotPrime(ell));
    }
    if ell == p {
        return Err(RankError::ResidueCharacteristic(p));
    }
    if genera.len() != g.vertex_count() {
        return Err(RankError::GenusCount { genera: genera.len(), vertices: g.vertex_count() });
    }
    let harm = harm_basis(g, ell)?.rank.expect("prime modulus has a rank") as u64;
    Ok(g.betti() as u64 + 2 * genera.iter().sum::<u64>() + harm)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn classical_ranks() {
        assert_eq!(h1_rank(&circle(), &[0], 5, 3), Ok(2));
        assert_eq!(h1_rank(&tripod(), &[0], 5, 3), Ok(2));
        let point = SemiGraph::new(vs(&["v"]), vec![]).unwrap();
        assert_eq!(h1_rank(&point, &[2], 5, 3), Ok(4));
    }

    #[test]
    fn rejects_bad_ell() {
        assert_eq!(h1_rank(&circle(), &[0], 6, 3), Err(RankError::NotPrime(6)));
        assert_eq!(h1_rank(&circle(), &[0], 3, 3), Err(RankError::ResidueCharacteristic(3)));
    }
}
