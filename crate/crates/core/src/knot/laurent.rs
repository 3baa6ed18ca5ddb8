//! Laurent polynomials in one variable `t` over an exact integer ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::IntScalar;

/// `Σ coeffs[k] t^(low + k)`, kept trimmed (no zero coefficient at either
/// end; the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<T: IntScalar> {
    low: i64,
    coeffs: Vec<T>,
}

impl<T: IntScalar> LaurentPoly<T> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn monomial(c: T, deg: i64) -> Self {
        Self::new(deg, vec![c])
    }

    /// `t^deg`.
    pub fn t_pow(deg: i64) -> Self {
        Self::monomial(T::one(), deg)
    }

    pub fn new(low: i64, coeffs: Vec<T>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// From an ordinary polynomial's coefficients, constant term first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(0, coeffs.iter().map(|&c| T::int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Width `high - low`; `None` for zero.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: i64) -> T {
        let k = deg - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            T::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    /// `p(t^-1)`.
    pub fn mirror(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(-self.high_degree(), c)
    }

    /// gcd of the coefficients, non-negative.
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Exact value at an integer point `t = x` with `x = ±1` allowed for
    /// negative degrees; other points need `low >= 0`.
    pub fn eval(&self, x: &T) -> Option<T> {
        if self.low < 0 && !x.abs().is_one() {
            return None;
        }
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        let lowpow = if self.low >= 0 {
            num_traits::pow(x.clone(), self.low as usize)
        } else {
            num_traits::pow(x.clone(), (-self.low) as usize)
        };
        Some(acc * lowpow)
    }

    /// Canonical representative up to units `±t^k`: lowest degree 0 and
    /// positive lowest coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = LaurentPoly { low: 0, coeffs: self.coeffs.clone() };
        if p.coeffs[0].is_negative() {
            p = -p;
        }
        p
    }

    /// Symmetric under `t → t^-1` up to a unit.
    pub fn is_symmetric(&self) -> bool {
        self.normalized() == self.mirror().normalized()
    }

    /// Exact division of ordinary polynomials (low degrees ignored);
    /// `None` if `d` does not divide `self`.
    fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return None;
        }
        let lead = d.coeffs[dl - 1].clone();
        let mut q = vec![T::zero(); rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = rem[k + dl - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - qk.clone() * dc.clone();
            }
            q[k] = qk;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(0, q))
    }

    /// Primitive part as an ordinary polynomial.
    fn primitive(&self) -> Self {
        let c = self.content();
        Self::new(0, self.coeffs.iter().map(|a| a.clone() / c.clone()).collect())
    }

    /// Pseudo-remainder of ordinary polynomials.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        let lead = d.coeffs[dl - 1].clone();
        while rem.len() >= dl && !rem.is_empty() {
            let top = rem[rem.len() - 1].clone();
            let shift = rem.len() - dl;
            for c in rem.iter_mut() {
                *c = c.clone() * lead.clone();
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] = rem[shift + j].clone() - top.clone() * dc.clone();
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Self::new(0, rem)
    }

    /// gcd in `Z[t, t^-1]`, normalized; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.normalized().primitive(), other.normalized().primitive());
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
        }
        a.normalized().scale(&content)
    }

    /// Exact quotient in `Z[t, t^-1]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let q = self.shift(-self.low).div_exact_poly(&d.shift(-d.low))?;
        Some(q.shift(self.low - d.low))
    }

    pub fn map<U: IntScalar>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        LaurentPoly::new(self.low, self.coeffs.iter().map(f).collect())
    }
}

impl<T: IntScalar> Default for LaurentPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: IntScalar> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, o: Self) -> LaurentPoly<T> {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high_degree().max(o.high_degree());
        let coeffs = (low..=high).map(|d| self.coeff(d) + o.coeff(d)).collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl<T: IntScalar> Neg for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: IntScalar> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, o: Self) -> LaurentPoly<T> {
        self + &(-o.clone())
    }
}

impl<T: IntScalar> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, o: Self) -> LaurentPoly<T> {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.low + o.low, c)
    }
}

impl<T: IntScalar> fmt::Display for LaurentPoly<T> {
    /// Highest degree first: `t^2-3t+1`, `-t^-1+2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let d = self.low + k as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let unit = mag.is_one();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if d == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<T: IntScalar> fmt::Debug for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<T: IntScalar> serde::Serialize for LaurentPoly<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<i64>;

    #[test]
    fn display() {
        assert_eq!(P::from_i64(&[1, -3, 1]).to_string(), "t^2-3t+1");
        assert_eq!(P::from_i64(&[1, -1, 1]).to_string(), "t^2-t+1");
        assert_eq!(P::new(-1, vec![-1, 2]).to_string(), "2-t^-1");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::one().to_string(), "1");
        assert_eq!(P::from_i64(&[0, 5]).to_string(), "5t");
    }

    #[test]
    fn arithmetic() {
        let a = P::from_i64(&[1, 1]);
        let b = P::from_i64(&[-1, 1]);
        assert_eq!(&a * &b, P::from_i64(&[-1, 0, 1]));
        assert_eq!(&a - &a, P::zero());
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn normalization_quotients_units() {
        let p = P::new(-3, vec![-1, 3, -1]);
        assert_eq!(p.normalized(), P::from_i64(&[1, -3, 1]));
        assert!(p.is_symmetric());
        assert!(!P::from_i64(&[1, 2]).is_symmetric());
    }

    #[test]
    fn gcds() {
        let f = P::from_i64(&[1, -1, 1]);
        let g = P::from_i64(&[1, -3, 1]);
        let x = P::from_i64(&[-1, 1]);
        assert_eq!((&f * &x).gcd(&(&g * &x)), P::from_i64(&[-1, 1]).normalized());
        assert_eq!(f.gcd(&g), P::one());
        assert_eq!(P::from_i64(&[2, 4]).gcd(&P::from_i64(&[6])), P::from_i64(&[2]));
        assert_eq!(P::zero().gcd(&f.shift(4)), f);
        let q = (&f * &g).div_exact(&g).unwrap();
        assert_eq!(q, f);
        assert!(f.div_exact(&g).is_none());
    }

    #[test]
    fn big_coefficients() {
        let p = LaurentPoly::<BigInt>::from_i64(&[1, -3, 1]);
        let big = p.scale(&(BigInt::from(10).pow(30)));
        assert_eq!(big.gcd(&p), p);
        assert_eq!(p.eval(&BigInt::from(2)).unwrap(), BigInt::from(-1));
    }
}
