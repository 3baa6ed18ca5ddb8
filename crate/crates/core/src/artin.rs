//! Artin presentations: the Artin-equation validator, the correspondence with
//! framed pure braids, the group law on presentations, the abelianization
//! matrix and Torelli presentations.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::braid::{to_framed_automorphism, BraidError, BraidWord, FramedAutomorphism};
use crate::corpus::random_pure_braid;
use crate::matrix::{IntMatrix, IntSymMatrix, MatrixError};
use crate::word::{boundary_word, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtinError {
    #[error("presentation has {relators} relators for {n} generators")]
    RelatorCount { n: usize, relators: usize },
    #[error("n must be at least 1")]
    Empty,
    #[error("A(r) is not symmetric at ({row}, {col}): {upper} vs {lower}")]
    Asymmetric { row: usize, col: usize, upper: i64, lower: i64 },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Why a candidate failed the Artin equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinViolation {
    /// Reduced `r_1^-1 x_1 r_1 … r_n^-1 x_n r_n`.
    pub lhs: Word,
    /// `x_1 … x_n`.
    pub rhs: Word,
    /// Index of the first differing letter.
    pub first_divergence: usize,
}

impl fmt::Display for ArtinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Artin equation fails: product of conjugates reduces to [{}] (length {}), expected [{}]; first divergence at letter {}",
            self.lhs,
            self.lhs.len(),
            self.rhs,
            self.first_divergence
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Shape(#[from] ArtinError),
    #[error("{0}")]
    Equation(Box<ArtinViolation>),
}

/// Reduced left-hand side of the Artin equation.
pub fn artin_lhs(relators: &[Word]) -> Word {
    let n = relators.len();
    let mut acc = Word::identity(n);
    for (i, r) in relators.iter().enumerate() {
        let x = Word::generator(n, i + 1).unwrap();
        acc = &acc * &(&(&r.inverse() * &x) * r);
    }
    acc
}

/// An `n`-generator, `n`-relator presentation satisfying the Artin equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ArtinPresentation {
    relators: Vec<Word>,
}

/// How `multiply(r, s)` orders the automorphism composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductOrder {
    /// `r·s` corresponds to `φ_r ∘ φ_s`.
    Forward,
    /// `r·s` corresponds to `φ_s ∘ φ_r`.
    Reversed,
}

/// Pinned by reproducing the worked example `r = t·s`.
pub const PRODUCT_ORDER: ProductOrder = ProductOrder::Forward;

impl ArtinPresentation {
    /// Checks the Artin equation; failure is reported with a divergence witness.
    pub fn validate(n: usize, relators: Vec<Word>) -> Result<Self, ValidationError> {
        if n == 0 {
            return Err(ArtinError::Empty.into());
        }
        if relators.len() != n {
            return Err(ArtinError::RelatorCount { n, relators: relators.len() }.into());
        }
        if let Some(r) = relators.iter().find(|r| r.rank() != n) {
            return Err(ArtinError::Word(WordError::RankMismatch { left: n, right: r.rank() }).into());
        }
        let lhs = artin_lhs(&relators);
        let rhs = boundary_word(n);
        if lhs == rhs {
            return Ok(ArtinPresentation { relators });
        }
        let first_divergence =
            lhs.letters().zip(rhs.letters()).take_while(|(a, b)| a == b).count();
        Err(ValidationError::Equation(Box::new(ArtinViolation { lhs, rhs, first_divergence })))
    }

    /// The all-empty presentation, the identity of the group law.
    pub fn identity(n: usize) -> Self {
        ArtinPresentation { relators: vec![Word::identity(n); n] }
    }

    /// `r_i = x_i^{k_i}`.
    pub fn diagonal(framings: &[i64]) -> Self {
        let n = framings.len();
        ArtinPresentation {
            relators: framings
                .iter()
                .enumerate()
                .map(|(i, &k)| Word::power(n, i + 1, k).unwrap())
                .collect(),
        }
    }

    pub fn from_braid(b: &BraidWord, framings: &[i64]) -> Result<Self, ArtinError> {
        Ok(from_framed(&to_framed_automorphism(b, framings)?))
    }

    pub fn n(&self) -> usize {
        self.relators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, i: usize) -> &Word {
        &self.relators[i - 1]
    }

    pub fn to_framed(&self) -> FramedAutomorphism {
        to_framed(self)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, ArtinError> {
        multiply(self, other)
    }

    pub fn invert(&self) -> Result<Self, ArtinError> {
        invert(self)
    }

    pub fn abelianization_matrix(&self) -> Result<IntSymMatrix<i64>, ArtinError> {
        abelianization_matrix(self)
    }

    pub fn is_torelli(&self) -> bool {
        is_torelli(self)
    }
}

impl fmt::Display for ArtinPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.relators.iter().enumerate() {
            writeln!(f, "r{} = {}", i + 1, r)?;
        }
        Ok(())
    }
}

/// `f_i` is the exponent of the maximal `x_i` prefix of `r_i = x_i^{f_i} u`,
/// and `A_i = u^-1`.
pub fn to_framed(r: &ArtinPresentation) -> FramedAutomorphism {
    let mut conjugators = Vec::with_capacity(r.n());
    let mut framings = Vec::with_capacity(r.n());
    for (i, rel) in r.relators.iter().enumerate() {
        let (f, u) = rel.strip_leading(i + 1);
        framings.push(f);
        conjugators.push(u.inverse());
    }
    FramedAutomorphism::from_parts_unchecked(conjugators, framings)
}

/// `r_i = x_i^{f_i} A_i^-1`.
pub fn from_framed(a: &FramedAutomorphism) -> ArtinPresentation {
    let n = a.strands();
    let relators: Vec<Word> = a
        .conjugators()
        .iter()
        .zip(a.framings())
        .enumerate()
        .map(|(i, (c, &f))| &Word::power(n, i + 1, f).unwrap() * &c.inverse())
        .collect();
    debug_assert_eq!(artin_lhs(&relators), boundary_word(n));
    ArtinPresentation { relators }
}

/// Diagonal of `A(r)`: the exponent sum of `x_i` in `r_i`.
pub fn self_linking(r: &ArtinPresentation) -> Vec<i64> {
    r.relators
        .iter()
        .enumerate()
        .map(|(i, w)| w.exponent_vector().get(i).copied().unwrap_or(0))
        .collect()
}

/// The presentation with automorphism `a` whose `A(r)` has diagonal `diag`.
fn with_self_linking(a: &FramedAutomorphism, diag: &[i64]) -> Result<ArtinPresentation, ArtinError> {
    let framings = a
        .conjugators()
        .iter()
        .zip(diag)
        .enumerate()
        .map(|(i, (c, &e))| e + c.exponent_vector().get(i).copied().unwrap_or(0))
        .collect();
    Ok(from_framed(&a.with_framings(framings)?))
}

/// Composes the automorphisms and adds the diagonals of `A`, so that `A` is a
/// homomorphism to symmetric matrices and the Torelli presentations form its
/// kernel.
pub fn multiply_with(
    r: &ArtinPresentation,
    s: &ArtinPresentation,
    order: ProductOrder,
) -> Result<ArtinPresentation, ArtinError> {
    if r.n() != s.n() {
        return Err(WordError::RankMismatch { left: r.n(), right: s.n() }.into());
    }
    let (a, b) = (to_framed(r), to_framed(s));
    let c = match order {
        ProductOrder::Forward => a.compose(&b)?,
        ProductOrder::Reversed => b.compose(&a)?,
    };
    let diag: Vec<i64> = self_linking(r).iter().zip(self_linking(s)).map(|(x, y)| x + y).collect();
    with_self_linking(&c, &diag)
}

pub fn multiply(r: &ArtinPresentation, s: &ArtinPresentation) -> Result<ArtinPresentation, ArtinError> {
    multiply_with(r, s, PRODUCT_ORDER)
}

pub fn invert(r: &ArtinPresentation) -> Result<ArtinPresentation, ArtinError> {
    let diag: Vec<i64> = self_linking(r).iter().map(|e| -e).collect();
    with_self_linking(&to_framed(r).invert()?, &diag)
}

/// Exponent sums `A_ij = exponent of x_j in r_i` for any list of relators,
/// without the symmetry check.
pub fn exponent_matrix(relators: &[Word], gens: usize) -> IntMatrix<i64> {
    if relators.is_empty() {
        return IntMatrix::zeros(0, gens);
    }
    let rows = relators
        .iter()
        .map(|r| {
            let mut v = r.exponent_vector();
            v.resize(gens, 0);
            v
        })
        .collect();
    IntMatrix::from_rows(rows).expect("rows padded to equal length")
}

/// `A(r)`; asymmetry means the input was not a genuine Artin presentation.
pub fn abelianization_matrix(r: &ArtinPresentation) -> Result<IntSymMatrix<i64>, ArtinError> {
    abelianization_of_relators(r.relators())
}

/// `A` for raw relators (e.g. an unvalidated file), failing loudly on
/// asymmetry.
pub fn abelianization_of_relators(relators: &[Word]) -> Result<IntSymMatrix<i64>, ArtinError> {
    let m = exponent_matrix(relators, relators.len());
    IntSymMatrix::new(m.clone()).map_err(|e| match e {
        MatrixError::Asymmetric { row, col } => ArtinError::Asymmetric {
            row: row + 1,
            col: col + 1,
            upper: m[(row, col)],
            lower: m[(col, row)],
        },
        _ => ArtinError::RelatorCount { n: m.cols(), relators: m.rows() },
    })
}

pub fn is_torelli(r: &ArtinPresentation) -> bool {
    r.relators.iter().all(|w| w.exponent_vector().iter().all(|&e| e == 0))
}

/// The commutator `(a·b)·(a^-1·b^-1)` of two random zero-framed pure braid
/// presentations with braid length at most `size`.
pub fn random_torelli(n: usize, seed: u64, size: usize) -> Result<ArtinPresentation, ArtinError> {
    assert!(n >= 2, "random_torelli needs n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = vec![0; n];
    let a = ArtinPresentation::from_braid(&random_pure_braid(&mut rng, n, size), &zero)?;
    let b = ArtinPresentation::from_braid(&random_pure_braid(&mut rng, n, size), &zero)?;
    commutator(&a, &b)
}

/// `(a·b)·(a^-1·b^-1)`.
pub fn commutator(a: &ArtinPresentation, b: &ArtinPresentation) -> Result<ArtinPresentation, ArtinError> {
    multiply(&multiply(a, b)?, &multiply(&invert(a)?, &invert(b)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, letters: &[i32]) -> Word {
        Word::from_letters(rank, letters).unwrap()
    }

    fn sigma_sq() -> ArtinPresentation {
        ArtinPresentation::validate(2, vec![w(2, &[-2, -1]), w(2, &[-1])]).unwrap()
    }

    #[test]
    fn validator_examples() {
        assert!(ArtinPresentation::validate(3, vec![Word::identity(3); 3]).is_ok());
        let err = ArtinPresentation::validate(2, vec![w(2, &[2]), Word::identity(2)]).unwrap_err();
        match err {
            ValidationError::Equation(v) => {
                assert_eq!(v.lhs, Word::from_syllables(2, [(2, -1), (1, 1), (2, 2)]).unwrap());
                assert_eq!(v.first_divergence, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            ArtinPresentation::validate(2, vec![Word::identity(2)]),
            Err(ValidationError::Shape(ArtinError::RelatorCount { .. }))
        ));
    }

    #[test]
    fn framed_correspondence() {
        let a = to_framed(&sigma_sq());
        assert_eq!(a.framings(), &[0, 0]);
        assert_eq!(a.conjugators(), &[w(2, &[1, 2]), w(2, &[1])]);
        let d = ArtinPresentation::diagonal(&[3, -2]);
        let fd = to_framed(&d);
        assert_eq!(fd, FramedAutomorphism::identity(vec![3, -2]));
        assert_eq!(from_framed(&fd), d);
        assert_eq!(to_framed(&ArtinPresentation::identity(3)), FramedAutomorphism::identity(vec![0; 3]));
        assert_eq!(from_framed(&a), sigma_sq());
    }

    #[test]
    fn abelianization_examples() {
        let m = abelianization_matrix(&sigma_sq()).unwrap();
        assert_eq!(m.matrix().to_rows(), vec![vec![-1, -1], vec![-1, 0]]);
        assert!(abelianization_matrix(&ArtinPresentation::identity(3)).unwrap().matrix().is_zero());
        let d = abelianization_matrix(&ArtinPresentation::diagonal(&[2, 0, -5])).unwrap();
        assert_eq!(d, IntSymMatrix::diagonal(&[2, 0, -5]));
    }

    #[test]
    fn asymmetry_is_reported() {
        let e = abelianization_of_relators(&[w(2, &[2, 2]), Word::identity(2)]).unwrap_err();
        assert_eq!(e, ArtinError::Asymmetric { row: 1, col: 2, upper: 2, lower: 0 });
    }

    #[test]
    fn torelli_predicate() {
        assert!(is_torelli(&ArtinPresentation::identity(2)));
        assert!(!is_torelli(&ArtinPresentation::diagonal(&[1])));
    }

    #[test]
    fn group_law_basics() {
        let r = sigma_sq();
        assert_eq!(multiply(&r, &ArtinPresentation::identity(2)).unwrap(), r);
        let inv = invert(&r).unwrap();
        assert_eq!(multiply(&r, &inv).unwrap(), ArtinPresentation::identity(2));
        assert_eq!(commutator(&r, &r).unwrap(), ArtinPresentation::identity(2));
    }

    #[test]
    fn random_torelli_is_torelli() {
        for seed in 0..10 {
            let t = random_torelli(3, seed, 6).unwrap();
            assert!(ArtinPresentation::validate(3, t.relators().to_vec()).is_ok());
            assert!(is_torelli(&t));
        }
    }

    #[test]
    fn torelli_multiplication_keeps_a() {
        for seed in 0..20 {
            let t = random_torelli(3, seed, 6).unwrap();
            let r = crate::corpus::triality_corpus_entry(3, seed + 100, &[1, -1, 2], 6).unwrap();
            let a = abelianization_matrix(&r).unwrap();
            assert_eq!(abelianization_matrix(&multiply(&t, &r).unwrap()).unwrap(), a);
            assert_eq!(abelianization_matrix(&multiply(&r, &t).unwrap()).unwrap(), a);
        }
    }

    #[test]
    fn a_is_additive() {
        let r = sigma_sq();
        let rr = multiply(&r, &r).unwrap();
        assert_eq!(abelianization_matrix(&rr).unwrap().matrix().to_rows(), vec![vec![-2, -2], vec![-2, 0]]);
        let inv = invert(&r).unwrap();
        assert_eq!(abelianization_matrix(&inv).unwrap().matrix().to_rows(), vec![vec![1, 1], vec![1, 0]]);
    }
}
