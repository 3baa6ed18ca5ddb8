use std::fmt;

use serde::Serialize;

use crate::artin::{exponent_matrix, ArtinPresentation};
use crate::matrix::{abelian_invariants, AbelianInvariants, IntMatrix};
use crate::word::Word;

/// Meridian and longitude words of a knot group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Peripheral {
    pub meridian: Word,
    pub longitude: Word,
}

/// A finite presentation `<x_1..x_k | relators>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FpGroup {
    generators: usize,
    relators: Vec<Word>,
    peripheral: Option<Peripheral>,
}

impl FpGroup {
    /// Panics if a relator's rank differs from `generators`.
    pub fn new(generators: usize, relators: Vec<Word>) -> Self {
        assert!(
            relators.iter().all(|r| r.rank() == generators),
            "relator rank must equal the generator count"
        );
        FpGroup { generators, relators, peripheral: None }
    }

    pub fn free(generators: usize) -> Self {
        FpGroup::new(generators, Vec::new())
    }

    pub fn with_peripheral(mut self, meridian: Word, longitude: Word) -> Self {
        self.peripheral = Some(Peripheral { meridian, longitude });
        self
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn peripheral(&self) -> Option<&Peripheral> {
        self.peripheral.as_ref()
    }

    /// Total relator length.
    pub fn length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Relator exponent-sum matrix (rows: relators, columns: generators).
    pub fn exponent_matrix(&self) -> IntMatrix<i64> {
        exponent_matrix(&self.relators, self.generators)
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        abelian_invariants(&self.exponent_matrix())
    }
}

impl fmt::Display for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generators).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = self.relators.iter().map(Word::to_string).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// `π(r)`: the group presented by the relators of `r`.
pub fn pi(r: &ArtinPresentation) -> FpGroup {
    FpGroup::new(r.n(), r.relators().to_vec())
}

/// Abelianization is trivial: every invariant factor of the relator matrix
/// is a unit and there is no free part.
pub fn is_perfect(g: &FpGroup) -> bool {
    g.abelianization().is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_of_small_presentations() {
        let g = pi(&ArtinPresentation::identity(2));
        assert_eq!(g.generators(), 2);
        assert!(g.relators().iter().all(Word::is_identity));
        let g = pi(&ArtinPresentation::diagonal(&[5]));
        assert_eq!(g.relators(), &[Word::power(1, 1, 5).unwrap()]);
    }

    #[test]
    fn perfectness() {
        assert!(is_perfect(&FpGroup::new(1, vec![Word::generator(1, 1).unwrap()])));
        assert!(!is_perfect(&FpGroup::free(1)));
        assert!(!is_perfect(&FpGroup::new(1, vec![Word::power(1, 1, 2).unwrap()])));
        // Non-square relation matrices are fine.
        let g = FpGroup::new(
            2,
            vec![
                Word::generator(2, 1).unwrap(),
                Word::generator(2, 2).unwrap(),
                Word::power(2, 1, 3).unwrap(),
            ],
        );
        assert!(is_perfect(&g));
    }
}
