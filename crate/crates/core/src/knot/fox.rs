//! Fox free differential calculus.

use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentPoly;
use crate::scalar::IntScalar;
use crate::word::Word;

/// An element `Σ c_w w` of the integral group ring of a free group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    rank: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

impl GroupRingElement {
    pub fn zero(rank: usize) -> Self {
        GroupRingElement { rank, terms: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: &Word, c: i64) {
        let key: Vec<i32> = w.letters().collect();
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(&Word::from_letters(self.rank, k).unwrap(), c);
        }
        out
    }

    /// `w · self`.
    pub fn left_mul(&self, w: &Word) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, &c) in &self.terms {
            out.add_term(&(w * &Word::from_letters(self.rank, k).unwrap()), c);
        }
        out
    }

    /// Terms in a fixed (letter-lexicographic) order.
    pub fn terms(&self) -> Vec<(Word, i64)> {
        self.terms
            .iter()
            .map(|(k, &c)| (Word::from_letters(self.rank, k).unwrap(), c))
            .collect()
    }

    /// Image under `x_j ↦ t^{e[j-1]}`.
    pub fn abelianize<T: IntScalar>(&self, e: &[i64]) -> LaurentPoly<T> {
        self.terms.iter().fold(LaurentPoly::zero(), |acc, (k, &c)| {
            let deg: i64 = k.iter().map(|&l| l.signum() as i64 * e[l.unsigned_abs() as usize - 1]).sum();
            &acc + &LaurentPoly::monomial(T::int(c), deg)
        })
    }
}

impl fmt::Display for GroupRingElement {
    /// `1 + x1`, `-x1^-1`, `2·x2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().into_iter().enumerate() {
            match (i, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.unsigned_abs();
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}·{w}")?;
            }
        }
        Ok(())
    }
}

/// `∂w/∂x_g`.
pub fn fox_derivative(w: &Word, g: usize) -> GroupRingElement {
    let rank = w.rank();
    let mut out = GroupRingElement::zero(rank);
    let mut prefix = Word::identity(rank);
    for l in w.letters() {
        let x = Word::from_letters(rank, &[l]).unwrap();
        if l == g as i32 {
            out.add_term(&prefix, 1);
        } else if l == -(g as i32) {
            out.add_term(&(&prefix * &x), -1);
        }
        prefix = &prefix * &x;
    }
    out
}

/// `∂w/∂x_g` pushed through `x_j ↦ t^{e[j-1]}` in one pass.
pub fn fox_abelianized<T: IntScalar>(w: &Word, g: usize, e: &[i64]) -> LaurentPoly<T> {
    let mut coeffs: BTreeMap<i64, i64> = BTreeMap::new();
    let mut deg = 0i64;
    for l in w.letters() {
        let x = l.unsigned_abs() as usize;
        if l > 0 {
            if x == g {
                *coeffs.entry(deg).or_insert(0) += 1;
            }
            deg += e[x - 1];
        } else {
            deg -= e[x - 1];
            if x == g {
                *coeffs.entry(deg).or_insert(0) -= 1;
            }
        }
    }
    coeffs
        .into_iter()
        .fold(LaurentPoly::zero(), |acc, (d, c)| &acc + &LaurentPoly::monomial(T::int(c), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s, 2).unwrap()
    }

    #[test]
    fn rules() {
        assert_eq!(fox_derivative(&w("x1 x2"), 1).to_string(), "1");
        assert_eq!(fox_derivative(&w("x1^2"), 1).to_string(), "1 + x1");
        assert_eq!(fox_derivative(&w("x1^-1"), 1).to_string(), "-x1^-1");
        assert!(fox_derivative(&w("x2"), 1).is_zero());
        assert_eq!(fox_derivative(&w("x1 x2"), 2).to_string(), "x1");
    }

    #[test]
    fn product_rule() {
        let (u, v) = (w("x1 x2^-1 x1"), w("x2 x1^-3 x2^2"));
        for g in 1..=2 {
            let lhs = fox_derivative(&(&u * &v), g);
            let rhs = fox_derivative(&u, g).add(&fox_derivative(&v, g).left_mul(&u));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fast_path_agrees() {
        let r = w("x1 x2 x1 x2^-1 x1^-1 x2^-1");
        for g in 1..=2 {
            let slow: LaurentPoly<i64> = fox_derivative(&r, g).abelianize(&[1, 1]);
            assert_eq!(slow, fox_abelianized(&r, g, &[1, 1]));
        }
    }
}
