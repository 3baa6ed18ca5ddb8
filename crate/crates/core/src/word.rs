//! Free-group words in run-length (syllable) form.
//!
//! A [`Word`] is always freely reduced: adjacent syllables carry distinct
//! generators and no syllable has exponent zero. Equality of group elements
//! in the free group is therefore plain structural equality.

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator x{index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
}

/// A free generator `x_index`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(usize);

impl Generator {
    pub fn new(index: usize) -> Option<Self> {
        (index >= 1).then_some(Generator(index))
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A maximal power `x_gen^exp` inside a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A freely reduced element of the free group of rank `rank`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    syllables: Vec<Syllable>,
}

/// Appends one syllable to a reduced stack, keeping it reduced.
fn push_syllable(stack: &mut Vec<Syllable>, s: Syllable) {
    if s.exp == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.gen == s.gen => {
            top.exp += s.exp;
            if top.exp == 0 {
                stack.pop();
            }
        }
        _ => stack.push(s),
    }
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, syllables: Vec::new() }
    }

    /// `x_index^exp`.
    pub fn power(rank: usize, index: usize, exp: i64) -> Result<Self, WordError> {
        if index == 0 || index > rank {
            return Err(WordError::GeneratorOutOfRange { index, rank });
        }
        let mut w = Word::identity(rank);
        push_syllable(&mut w.syllables, Syllable { gen: index, exp });
        Ok(w)
    }

    pub fn generator(rank: usize, index: usize) -> Result<Self, WordError> {
        Word::power(rank, index, 1)
    }

    /// Builds and reduces a word from syllables; exponents may be zero and
    /// neighbours may share a generator.
    pub fn from_syllables(
        rank: usize,
        syllables: impl IntoIterator<Item = (usize, i64)>,
    ) -> Result<Self, WordError> {
        let mut stack = Vec::new();
        for (gen, exp) in syllables {
            if gen == 0 || gen > rank {
                return Err(WordError::GeneratorOutOfRange { index: gen, rank });
            }
            push_syllable(&mut stack, Syllable { gen, exp });
        }
        Ok(Word { rank, syllables: stack })
    }

    /// Builds a word from signed letters: `3` is `x3`, `-3` is `x3^-1`.
    pub fn from_letters(rank: usize, letters: &[i32]) -> Result<Self, WordError> {
        Word::from_syllables(
            rank,
            letters.iter().map(|&l| (l.unsigned_abs() as usize, l.signum() as i64)),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length (sum of absolute exponents).
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Signed letters, `±gen`.
    pub fn letters(&self) -> impl Iterator<Item = i32> + '_ {
        self.syllables.iter().flat_map(|s| {
            let l = if s.exp > 0 { s.gen as i32 } else { -(s.gen as i32) };
            std::iter::repeat_n(l, s.exp.unsigned_abs() as usize)
        })
    }

    /// Same group element viewed in a free group of larger rank.
    pub fn widen(&self, rank: usize) -> Word {
        assert!(rank >= self.rank);
        Word { rank, syllables: self.syllables.clone() }
    }

    /// Same element in a smaller rank, if every generator fits.
    pub fn narrow(&self, rank: usize) -> Result<Word, WordError> {
        Word::from_syllables(rank, self.syllables.iter().map(|s| (s.gen, s.exp)))
    }

    pub fn try_mul(&self, rhs: &Word) -> Result<Word, WordError> {
        if self.rank != rhs.rank {
            return Err(WordError::RankMismatch { left: self.rank, right: rhs.rank });
        }
        let mut stack = Vec::with_capacity(self.syllables.len() + rhs.syllables.len());
        stack.extend_from_slice(&self.syllables);
        for &s in &rhs.syllables {
            push_syllable(&mut stack, s);
        }
        Ok(Word { rank: self.rank, syllables: stack })
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -s.exp })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// `(a, b) = a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Result<Word, WordError> {
        a.inverse().try_mul(&b.inverse())?.try_mul(a)?.try_mul(b)
    }

    /// `self^-1 · x · self` style conjugation: returns `c · self · c^-1`.
    pub fn conjugated_by(&self, c: &Word) -> Word {
        &(c * self) * &c.inverse()
    }

    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.syllables.iter().filter(|s| s.gen == g.index()).map(|s| s.exp).sum()
    }

    /// Exponent sums of every generator, indexed from 0.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for s in &self.syllables {
            v[s.gen - 1] += s.exp;
        }
        v
    }

    pub fn substitute(&self, e: &FreeEndo) -> Result<Word, WordError> {
        if self.rank != e.rank() {
            return Err(WordError::RankMismatch { left: self.rank, right: e.rank() });
        }
        let target = e.images.first().map_or(self.rank, Word::rank);
        let mut stack: Vec<Syllable> = Vec::new();
        for s in &self.syllables {
            let img = &e.images[s.gen - 1];
            let piece = if s.exp > 0 { img.clone() } else { img.inverse() };
            for _ in 0..s.exp.unsigned_abs() {
                for &t in &piece.syllables {
                    push_syllable(&mut stack, t);
                }
            }
        }
        Ok(Word { rank: target, syllables: stack })
    }

    /// Splits `self = conjugator · core · conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let syl = &self.syllables;
        let (mut lo, mut hi) = (0usize, syl.len());
        let mut conj = Vec::new();
        let mut core_first: Option<Syllable> = None;
        let mut core_last: Option<Syllable> = None;
        // Peel matching inverse syllable pairs from both ends.
        while hi - lo >= 2 {
            let (a, b) = (syl[lo], syl[hi - 1]);
            if a.gen != b.gen {
                break;
            }
            if a.exp == -b.exp {
                conj.push(a);
                lo += 1;
                hi -= 1;
            } else {
                // x^a ... x^b with a != -b: pull out the common part.
                let shared = if a.exp.signum() == -b.exp.signum() {
                    if a.exp.abs() < b.exp.abs() { a.exp } else { -b.exp }
                } else {
                    0
                };
                if shared != 0 {
                    conj.push(Syllable { gen: a.gen, exp: shared });
                    core_first = Some(Syllable { gen: a.gen, exp: a.exp - shared });
                    core_last = Some(Syllable { gen: b.gen, exp: b.exp + shared });
                    lo += 1;
                    hi -= 1;
                }
                break;
            }
        }
        let mut core = Vec::new();
        if let Some(f) = core_first {
            push_syllable(&mut core, f);
        }
        for &s in &syl[lo..hi] {
            push_syllable(&mut core, s);
        }
        if let Some(l) = core_last {
            push_syllable(&mut core, l);
        }
        let conjugator = Word::from_syllables(self.rank, conj.iter().map(|s| (s.gen, s.exp)))
            .expect("generators already in range");
        let core = Word { rank: self.rank, syllables: core };
        (core, conjugator)
    }

    /// Removes trailing syllables of `x_gen` (right multiplication by its
    /// centralizer) and returns the stripped exponent.
    pub fn strip_trailing(&self, gen: usize) -> (Word, i64) {
        match self.syllables.last() {
            Some(s) if s.gen == gen => {
                let mut syllables = self.syllables.clone();
                let last = syllables.pop().unwrap();
                (Word { rank: self.rank, syllables }, last.exp)
            }
            _ => (self.clone(), 0),
        }
    }

    /// Removes a leading `x_gen` syllable and returns its exponent.
    pub fn strip_leading(&self, gen: usize) -> (i64, Word) {
        match self.syllables.first() {
            Some(s) if s.gen == gen => {
                (s.exp, Word { rank: self.rank, syllables: self.syllables[1..].to_vec() })
            }
            _ => (0, self.clone()),
        }
    }
}

impl Mul for &Word {
    type Output = Word;

    /// Panics on rank mismatch; use [`Word::try_mul`] on untrusted input.
    fn mul(self, rhs: &Word) -> Word {
        self.try_mul(rhs).expect("word ranks must agree")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exp == 1 {
                write!(f, "x{}", s.gen)?;
            } else {
                write!(f, "x{}^{}", s.gen, s.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{}]({})", self.rank, self)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An endomorphism of the free group, given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeEndo {
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn identity(rank: usize) -> Self {
        FreeEndo {
            images: (1..=rank).map(|i| Word::generator(rank, i).unwrap()).collect(),
        }
    }

    pub fn new(images: Vec<Word>) -> Result<Self, WordError> {
        let rank = images.len();
        for w in &images {
            if w.rank() != rank {
                return Err(WordError::RankMismatch { left: rank, right: w.rank() });
            }
        }
        Ok(FreeEndo { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `x_index` (1-based).
    pub fn image(&self, index: usize) -> &Word {
        &self.images[index - 1]
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        w.substitute(self)
    }

    /// `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &FreeEndo) -> Result<FreeEndo, WordError> {
        if self.rank() != other.rank() {
            return Err(WordError::RankMismatch { left: self.rank(), right: other.rank() });
        }
        let images = other
            .images
            .iter()
            .map(|w| w.substitute(self))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FreeEndo { images })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| {
            matches!(w.syllables(), [Syllable { gen, exp: 1 }] if *gen == i + 1)
        })
    }

    /// Total letter length of all images.
    pub fn total_len(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }
}

/// `x_1 x_2 … x_n`.
pub fn boundary_word(rank: usize) -> Word {
    Word::from_syllables(rank, (1..=rank).map(|i| (i, 1))).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, letters: &[i32]) -> Word {
        Word::from_letters(rank, letters).unwrap()
    }

    #[test]
    fn multiply_cancels_and_merges() {
        assert_eq!(&w(3, &[1, 2]) * &w(3, &[-2, 3]), w(3, &[1, 3]));
        assert_eq!(&w(3, &[1]) * &w(3, &[1]), Word::power(3, 1, 2).unwrap());
        let a = w(3, &[1, -2, 3, 3]);
        assert!((&a * &a.inverse()).is_identity());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert_eq!(
            w(2, &[1]).try_mul(&w(3, &[1])),
            Err(WordError::RankMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn inversion() {
        assert_eq!(w(2, &[1, 2]).inverse(), w(2, &[-2, -1]));
        assert!(Word::identity(2).inverse().is_identity());
        assert_eq!(Word::power(2, 1, 3).unwrap().inverse(), Word::power(2, 1, -3).unwrap());
    }

    #[test]
    fn substitution_examples() {
        let sigma = FreeEndo::new(vec![w(2, &[1, 2, -1]), w(2, &[1])]).unwrap();
        assert_eq!(w(2, &[1]).substitute(&FreeEndo::identity(2)).unwrap(), w(2, &[1]));
        assert_eq!(w(2, &[1, 2]).substitute(&sigma).unwrap(), w(2, &[1, 2]));
        assert_eq!(w(2, &[2]).substitute(&sigma).unwrap(), w(2, &[1]));
    }

    #[test]
    fn exponent_sums() {
        let g = |i| Generator::new(i).unwrap();
        // (x1 (x2 x3)^2 x2^2)^-1
        let s2 = w(4, &[1, 2, 3, 2, 3, 2, 2]).inverse();
        assert_eq!(s2.exponent_sum(g(2)), -4);
        let c = Word::commutator(&w(4, &[1, 3]), &w(4, &[2, 2, -4])).unwrap();
        assert!((1..=4).all(|i| c.exponent_sum(g(i)) == 0));
        assert_eq!(w(2, &[1, 1, 1, 2, -1]).exponent_sum(g(1)), 2);
    }

    #[test]
    fn cyclic_reduction_examples() {
        let (core, conj) = w(2, &[2, 1, -2]).cyclically_reduce();
        assert_eq!((core, conj), (w(2, &[1]), w(2, &[2])));
        let (core, conj) = w(2, &[1, 2]).cyclically_reduce();
        assert_eq!((core, conj), (w(2, &[1, 2]), Word::identity(2)));
        let (core, conj) = Word::identity(2).cyclically_reduce();
        assert!(core.is_identity() && conj.is_identity());
    }

    #[test]
    fn cyclic_reduction_with_partial_syllables() {
        // x1^3 x2 x1^-1  =  x1 (x1^2 x2 x1^0 ...) -> core x1^2 x2, conj x1
        let word = Word::from_syllables(2, [(1, 3), (2, 1), (1, -1)]).unwrap();
        let (core, conj) = word.cyclically_reduce();
        assert_eq!(conj, w(2, &[1]));
        assert_eq!(core, Word::from_syllables(2, [(1, 2), (2, 1)]).unwrap());
        assert_eq!(&(&conj * &core) * &conj.inverse(), word);
        // x1^2 x2 x1^3 is already cyclically reduced up to rotation, no conjugator
        let word = Word::from_syllables(2, [(1, 2), (2, 1), (1, 3)]).unwrap();
        let (core, conj) = word.cyclically_reduce();
        assert!(conj.is_identity());
        assert_eq!(core, word);
    }

    #[test]
    fn display_format() {
        assert_eq!(Word::from_syllables(3, [(1, 1), (3, -1), (2, 2)]).unwrap().to_string(), "x1 x3^-1 x2^2");
        assert_eq!(Word::identity(3).to_string(), "1");
    }

    #[test]
    fn out_of_range_generator() {
        assert!(matches!(
            Word::generator(2, 3),
            Err(WordError::GeneratorOutOfRange { index: 3, rank: 2 })
        ));
    }
}
