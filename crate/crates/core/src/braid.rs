//! Braid words, their Artin action on the free group, and framed pure braids
//! in the form of framed conjugating automorphisms.

use std::fmt;

use thiserror::Error;

use crate::word::{boundary_word, FreeEndo, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid letter s{index} invalid on {strands} strands")]
    LetterOutOfRange { index: usize, strands: usize },
    #[error("braid is not pure: image of x{generator} is not a conjugate of x{generator}")]
    NotPure { generator: usize },
    #[error("expected {expected} framings, got {got}")]
    FramingCount { expected: usize, got: usize },
    #[error("automorphism does not fix x1…xn")]
    ProductNotFixed,
    #[error("length reduction stuck at total image length {total_len} after {steps} steps")]
    NotABraidAutomorphism { steps: usize, total_len: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Which of the two mirror-image Artin actions is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionConvention {
    /// `σ_i : x_i ↦ x_i x_{i+1} x_i^-1, x_{i+1} ↦ x_i`.
    Standard,
    /// The mirror: `σ_i` acts as the standard `σ_i^-1`.
    Mirror,
}

/// The convention used throughout the crate.
pub const ACTION_CONVENTION: ActionConvention = ActionConvention::Standard;

/// A word in the Artin generators `σ_1 … σ_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self, BraidError> {
        for &(index, sign) in &letters {
            if index == 0 || index >= strands || (sign != 1 && sign != -1) {
                return Err(BraidError::LetterOutOfRange { index, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// The pure braid generator
    /// `A_ij = (σ_{j-1}…σ_{i+1}) σ_i^2 (σ_{i+1}^-1…σ_{j-1}^-1)`, `i < j`.
    pub fn pure_generator(strands: usize, i: usize, j: usize) -> Result<Self, BraidError> {
        if i == 0 || i >= j || j > strands {
            return Err(BraidError::LetterOutOfRange { index: j, strands });
        }
        let mut letters: Vec<(usize, i8)> = ((i + 1)..j).rev().map(|k| (k, 1)).collect();
        letters.push((i, 1));
        letters.push((i, 1));
        letters.extend(((i + 1)..j).map(|k| (k, -1)));
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn then(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "braid strand counts must agree");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, s)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if s > 0 {
                write!(f, "s{i}")?;
            } else {
                write!(f, "s{i}^-1")?;
            }
        }
        Ok(())
    }
}

/// Image of the braid under `B_n → S_n`; entry `k` is where the strand
/// starting at position `k` ends (0-based).
pub fn permutation_of(b: &BraidWord) -> Vec<usize> {
    // position -> strand currently there
    let mut at: Vec<usize> = (0..b.strands).collect();
    for &(i, _) in &b.letters {
        at.swap(i - 1, i);
    }
    let mut perm = vec![0; b.strands];
    for (pos, &strand) in at.iter().enumerate() {
        perm[strand] = pos;
    }
    perm
}

pub fn is_pure(b: &BraidWord) -> bool {
    permutation_of(b).iter().enumerate().all(|(k, &p)| k == p)
}

/// Applies one Artin generator to a tuple of images, i.e. replaces the
/// endomorphism `φ` by `φ ∘ σ_i^sign`. Only entries `i`, `i+1` change.
pub fn hurwitz_move(images: &mut [Word], i: usize, sign: i8) {
    let sign = match ACTION_CONVENTION {
        ActionConvention::Standard => sign,
        ActionConvention::Mirror => -sign,
    };
    let (a, b) = (images[i - 1].clone(), images[i].clone());
    if sign > 0 {
        images[i - 1] = &(&a * &b) * &a.inverse();
        images[i] = a;
    } else {
        images[i - 1] = b.clone();
        images[i] = &(&b.inverse() * &a) * &b;
    }
}

/// The automorphism of `F_n` induced by `b`; a homomorphism, so
/// `artin_action(u·v) = artin_action(u) ∘ artin_action(v)`.
pub fn artin_action(b: &BraidWord) -> FreeEndo {
    let mut images = FreeEndo::identity(b.strands).images().to_vec();
    for &(i, s) in &b.letters {
        hurwitz_move(&mut images, i, s);
    }
    FreeEndo::new(images).expect("images share the ambient rank")
}

/// A framed pure braid, stored as `x_i ↦ A_i x_i A_i^-1` plus framings.
///
/// Conjugators are normalized so that `A_i` never ends in a power of `x_i`,
/// which makes equality syntactic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FramedAutomorphism {
    conjugators: Vec<Word>,
    framings: Vec<i64>,
}

impl FramedAutomorphism {
    /// Normalizes the conjugators and checks that `x_1…x_n` is fixed.
    pub fn new(conjugators: Vec<Word>, framings: Vec<i64>) -> Result<Self, BraidError> {
        let n = conjugators.len();
        if framings.len() != n {
            return Err(BraidError::FramingCount { expected: n, got: framings.len() });
        }
        for c in &conjugators {
            if c.rank() != n {
                return Err(WordError::RankMismatch { left: n, right: c.rank() }.into());
            }
        }
        let a = Self::from_parts_unchecked(conjugators, framings);
        if a.endo().apply(&boundary_word(n))? != boundary_word(n) {
            return Err(BraidError::ProductNotFixed);
        }
        Ok(a)
    }

    pub(crate) fn from_parts_unchecked(conjugators: Vec<Word>, framings: Vec<i64>) -> Self {
        let conjugators = conjugators
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.strip_trailing(i + 1).0)
            .collect();
        FramedAutomorphism { conjugators, framings }
    }

    pub fn identity(framings: Vec<i64>) -> Self {
        let n = framings.len();
        FramedAutomorphism { conjugators: vec![Word::identity(n); n], framings }
    }

    pub fn strands(&self) -> usize {
        self.conjugators.len()
    }

    pub fn conjugators(&self) -> &[Word] {
        &self.conjugators
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    /// The underlying automorphism `x_i ↦ A_i x_i A_i^-1`.
    pub fn endo(&self) -> FreeEndo {
        let n = self.strands();
        let images = self
            .conjugators
            .iter()
            .enumerate()
            .map(|(i, a)| Word::generator(n, i + 1).unwrap().conjugated_by(a))
            .collect();
        FreeEndo::new(images).expect("conjugators share the ambient rank")
    }

    /// Whether the braid part is trivial (framings ignored).
    pub fn is_unframed_identity(&self) -> bool {
        self.conjugators.iter().all(Word::is_identity)
    }

    pub fn with_framings(&self, framings: Vec<i64>) -> Result<Self, BraidError> {
        if framings.len() != self.strands() {
            return Err(BraidError::FramingCount { expected: self.strands(), got: framings.len() });
        }
        Ok(FramedAutomorphism { conjugators: self.conjugators.clone(), framings })
    }

    /// Automorphism composition `self ∘ other`; framings add.
    pub fn compose(&self, other: &FramedAutomorphism) -> Result<Self, BraidError> {
        let n = self.strands();
        if other.strands() != n {
            return Err(WordError::RankMismatch { left: n, right: other.strands() }.into());
        }
        let endo = self.endo();
        let conjugators = other
            .conjugators
            .iter()
            .zip(&self.conjugators)
            .map(|(b, a)| Ok(&b.substitute(&endo)? * a))
            .collect::<Result<Vec<_>, WordError>>()?;
        let framings = self.framings.iter().zip(&other.framings).map(|(x, y)| x + y).collect();
        Ok(Self::from_parts_unchecked(conjugators, framings))
    }

    /// The inverse, obtained by reconstructing a braid word, inverting it and
    /// re-deriving the action. Framings negate.
    pub fn invert(&self) -> Result<Self, BraidError> {
        let b = braid_word_of(self)?;
        let framings: Vec<i64> = self.framings.iter().map(|f| -f).collect();
        to_framed_automorphism(&b.inverse(), &framings)
    }
}

/// Reads off the conjugators of a pure braid's action and attaches framings.
pub fn to_framed_automorphism(
    b: &BraidWord,
    framings: &[i64],
) -> Result<FramedAutomorphism, BraidError> {
    let n = b.strands();
    if framings.len() != n {
        return Err(BraidError::FramingCount { expected: n, got: framings.len() });
    }
    let action = artin_action(b);
    let mut conjugators = Vec::with_capacity(n);
    for (i, img) in action.images().iter().enumerate() {
        let (core, conj) = img.cyclically_reduce();
        if core != Word::generator(n, i + 1)? {
            return Err(BraidError::NotPure { generator: i + 1 });
        }
        conjugators.push(conj);
    }
    Ok(FramedAutomorphism::from_parts_unchecked(conjugators, framings.to_vec()))
}

/// Total-length change of the Hurwitz move `σ_i^sign` on `images`.
fn move_delta(images: &[Word], i: usize, sign: i8) -> isize {
    let mut pair = [images[i - 1].clone(), images[i].clone()];
    let before = (pair[0].len() + pair[1].len()) as isize;
    hurwitz_move(&mut pair, 1, sign);
    (pair[0].len() + pair[1].len()) as isize - before
}

/// Recovers a braid word whose Artin action equals the automorphism of `a`.
///
/// Greedy peak reduction: repeatedly apply the generator move that most
/// reduces the total image length (ties: lowest index, positive first) until
/// the identity is reached.
pub fn braid_word_of(a: &FramedAutomorphism) -> Result<BraidWord, BraidError> {
    let n = a.strands();
    let mut images = a.endo().images().to_vec();
    let start_len: usize = images.iter().map(Word::len).sum();
    let cap = 10 * (start_len + n);
    let mut moves: Vec<(usize, i8)> = Vec::new();
    let mut total = start_len;
    while total > n {
        if moves.len() >= cap {
            return Err(BraidError::NotABraidAutomorphism { steps: moves.len(), total_len: total });
        }
        let mut best: Option<(isize, usize, i8)> = None;
        for i in 1..n {
            for sign in [1i8, -1] {
                let d = move_delta(&images, i, sign);
                if d < 0 && best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, sign));
                }
            }
        }
        let Some((d, i, sign)) = best else {
            return Err(BraidError::NotABraidAutomorphism { steps: moves.len(), total_len: total });
        };
        hurwitz_move(&mut images, i, sign);
        total = (total as isize + d) as usize;
        moves.push((i, sign));
    }
    // Every image now has length one; only the identity tuple has product x1…xn.
    if !FreeEndo::new(images)?.is_identity() {
        return Err(BraidError::NotABraidAutomorphism { steps: moves.len(), total_len: total });
    }
    // φ ∘ g_1 ∘ … ∘ g_k = id, so φ is the inverse of g_1 … g_k.
    BraidWord::new(n, moves).map(|b| b.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, letters: &[i32]) -> Word {
        Word::from_letters(rank, letters).unwrap()
    }

    fn braid(n: usize, letters: &[(usize, i8)]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn permutations() {
        assert_eq!(permutation_of(&braid(2, &[(1, 1)])), vec![1, 0]);
        assert_eq!(permutation_of(&braid(2, &[(1, 1), (1, 1)])), vec![0, 1]);
        assert_eq!(permutation_of(&BraidWord::identity(3)), vec![0, 1, 2]);
        assert!(is_pure(&braid(2, &[(1, 1), (1, -1)])));
        assert!(!is_pure(&braid(2, &[(1, 1)])));
        assert!(is_pure(&BraidWord::pure_generator(4, 1, 3).unwrap()));
    }

    #[test]
    fn sigma_one_action() {
        let a = artin_action(&braid(2, &[(1, 1)]));
        assert_eq!(a.images(), &[w(2, &[1, 2, -1]), w(2, &[1])]);
        let a2 = artin_action(&braid(2, &[(1, 1), (1, 1)]));
        assert_eq!(a2.images(), &[w(2, &[1, 2, 1, -2, -1]), w(2, &[1, 2, -1])]);
        assert!(artin_action(&BraidWord::identity(3)).is_identity());
    }

    #[test]
    fn inverse_letter_undoes_action() {
        let b = braid(3, &[(2, 1), (1, -1), (2, -1), (1, 1)]);
        let both = artin_action(&b.then(&b.inverse()));
        assert!(both.is_identity());
    }

    #[test]
    fn sigma_squared_conjugators() {
        let b = braid(2, &[(1, 1), (1, 1)]);
        let a = to_framed_automorphism(&b, &[0, 0]).unwrap();
        assert_eq!(a.conjugators(), &[w(2, &[1, 2]), w(2, &[1])]);
        let id = to_framed_automorphism(&BraidWord::identity(2), &[3, -1]).unwrap();
        assert_eq!(id, FramedAutomorphism::identity(vec![3, -1]));
        assert_eq!(
            to_framed_automorphism(&braid(2, &[(1, 1)]), &[0, 0]),
            Err(BraidError::NotPure { generator: 1 })
        );
    }

    #[test]
    fn composition_matches_braid_product() {
        let s2 = braid(2, &[(1, 1), (1, 1)]);
        let a = to_framed_automorphism(&s2, &[0, 0]).unwrap();
        let a4 = to_framed_automorphism(&s2.pow(2), &[0, 0]).unwrap();
        assert_eq!(a.compose(&a).unwrap(), a4);
        let f = FramedAutomorphism::identity(vec![1, 0])
            .compose(&FramedAutomorphism::identity(vec![0, 2]))
            .unwrap();
        assert_eq!(f, FramedAutomorphism::identity(vec![1, 2]));
    }

    #[test]
    fn inversion() {
        let id = FramedAutomorphism::identity(vec![2, -1]);
        assert_eq!(id.invert().unwrap(), FramedAutomorphism::identity(vec![-2, 1]));
        let s2 = braid(2, &[(1, 1), (1, 1)]);
        let a = to_framed_automorphism(&s2, &[0, 0]).unwrap();
        let inv = a.invert().unwrap();
        assert_eq!(inv, to_framed_automorphism(&s2.inverse(), &[0, 0]).unwrap());
        assert_eq!(a.compose(&inv).unwrap(), FramedAutomorphism::identity(vec![0, 0]));
    }

    #[test]
    fn braid_reconstruction() {
        assert!(braid_word_of(&FramedAutomorphism::identity(vec![0; 3])).unwrap().is_empty());
        let a = FramedAutomorphism::new(vec![w(2, &[1, 2]), w(2, &[1])], vec![0, 0]).unwrap();
        let b = braid_word_of(&a).unwrap();
        assert_eq!(artin_action(&b), a.endo());
        let src = braid(3, &[(2, 1), (2, 1), (1, 1), (1, 1)]);
        let a = to_framed_automorphism(&src, &[0; 3]).unwrap();
        let b = braid_word_of(&a).unwrap();
        assert_eq!(artin_action(&b), artin_action(&src));
    }

    #[test]
    fn rejects_non_product_fixing_data() {
        let r = FramedAutomorphism::new(vec![w(2, &[2]), Word::identity(2)], vec![0, 0]);
        assert_eq!(r, Err(BraidError::ProductNotFixed));
    }

    #[test]
    fn conjugators_are_normalized() {
        let a = FramedAutomorphism::new(vec![w(2, &[1, 2, 1, 1]), w(2, &[1])], vec![0, 0]).unwrap();
        assert_eq!(a.conjugators()[0], w(2, &[1, 2]));
    }
}
