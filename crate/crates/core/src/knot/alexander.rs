//! Knot groups of the components `k_i(r)` and their Alexander polynomials.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::fox::fox_abelianized;
use super::laurent::LaurentPoly;
use crate::artin::ArtinPresentation;
use crate::group::FpGroup;
use crate::matrix::{smith_normal_form, IntMatrix};
use crate::scalar::IntScalar;

/// Label attached to knot groups built by [`knot_group`].
pub const PRESENTATION_RULE: &str = "AP-delete-one";

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum KnotError {
    #[error("knot k_0 (the binding component) is not implemented")]
    BindingNotImplemented,
    #[error("knot index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("abelianization is {abelianization}, not Z")]
pub struct NotComputable {
    pub abelianization: String,
}

/// `<x_1..x_n | r_j (j ≠ i)>` with meridian `x_i` and longitude `r_i`.
pub fn knot_group(r: &ArtinPresentation, i: usize) -> Result<FpGroup, KnotError> {
    let n = r.n();
    if i == 0 {
        return Err(KnotError::BindingNotImplemented);
    }
    if i > n {
        return Err(KnotError::IndexOutOfRange { index: i, n });
    }
    let relators = (1..=n).filter(|&j| j != i).map(|j| r.relator(j).clone()).collect();
    let meridian = crate::word::Word::generator(n, i).expect("index checked");
    Ok(FpGroup::new(n, relators).with_peripheral(meridian, r.relator(i).clone()))
}

/// Exponents `e_j` of a surjection `x_j ↦ t^{e_j}` onto `H_1 = Z`, read off
/// the Smith transform. The sign makes the meridian (or else the first
/// generator with nonzero exponent) map to a positive power.
pub fn abelianization_map(g: &FpGroup) -> Result<Vec<i64>, NotComputable> {
    let ab = g.abelianization();
    if !ab.is_infinite_cyclic() {
        return Err(NotComputable { abelianization: ab.to_string() });
    }
    let m: IntMatrix<BigInt> = {
        let e = g.exponent_matrix();
        let rows: Vec<Vec<BigInt>> = e.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, g.generators())
        } else {
            IntMatrix::from_rows(rows).expect("rectangular")
        }
    };
    let snf = smith_normal_form(&m);
    let rank = snf.invariant_factors().iter().filter(|x| !x.is_zero()).count();
    let mut e: Vec<i64> = (0..g.generators())
        .map(|j| snf.v[(j, rank)].to_i64().expect("abelianization exponent fits i64"))
        .collect();
    let pivot = g
        .peripheral()
        .and_then(|p| p.meridian.exponent_vector().iter().zip(&e).map(|(a, b)| a * b).reduce(|a, b| a + b))
        .filter(|&v| v != 0)
        .or_else(|| e.iter().copied().find(|&v| v != 0))
        .unwrap_or(1);
    if pivot < 0 {
        e.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(e)
}

/// Abelianized Fox Jacobian, rows indexed by relators.
pub fn fox_jacobian<T: IntScalar>(g: &FpGroup, e: &[i64]) -> Vec<Vec<LaurentPoly<T>>> {
    g.relators()
        .iter()
        .map(|r| (1..=g.generators()).map(|j| fox_abelianized(r, j, e)).collect())
        .collect()
}

/// Determinant by fraction-free elimination over `Z[t, t^-1]`.
pub fn determinant<T: IntScalar>(m: &[Vec<LaurentPoly<T>>]) -> LaurentPoly<T> {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a: Vec<Vec<LaurentPoly<T>>> = m.to_vec();
    let mut sign = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].span()) else {
            return LaurentPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign { -d } else { d }
}

/// gcd of the maximal minors of `m` (`rows × cols`, minors of size `cols`).
pub fn maximal_minor_gcd<T: IntScalar>(m: &[Vec<LaurentPoly<T>>], cols: usize) -> LaurentPoly<T> {
    let rows = m.len();
    if cols == 0 {
        return LaurentPoly::one();
    }
    if rows < cols {
        return LaurentPoly::zero();
    }
    let mut g = LaurentPoly::zero();
    let mut pick: Vec<usize> = (0..cols).collect();
    loop {
        let sub: Vec<Vec<LaurentPoly<T>>> = pick.iter().map(|&i| m[i].clone()).collect();
        g = g.gcd(&determinant(&sub));
        if g.coeffs().len() == 1 && g.coeffs()[0].is_one() {
            return g;
        }
        // next combination
        let mut k = cols;
        loop {
            if k == 0 {
                return g;
            }
            k -= 1;
            if pick[k] < rows - cols + k {
                pick[k] += 1;
                for j in k + 1..cols {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Alexander polynomial, deleting the given Jacobian column (0-based).
pub fn alexander_deleting(g: &FpGroup, e: &[i64], col: usize) -> LaurentPoly<BigInt> {
    let jac: Vec<Vec<LaurentPoly<BigInt>>> = fox_jacobian(g, e)
        .into_iter()
        .map(|row| row.into_iter().enumerate().filter(|&(j, _)| j != col).map(|(_, p)| p).collect())
        .collect();
    maximal_minor_gcd(&jac, g.generators() - 1).normalized()
}

/// Columns whose generators map to `t^{±1}`.
pub fn deletable_columns(e: &[i64]) -> Vec<usize> {
    (0..e.len()).filter(|&j| e[j].abs() == 1).collect()
}

/// Generator of the first elementary ideal of the Alexander module.
///
/// With a column mapping to `t^{±1}` that column is deleted; otherwise the
/// gcd runs over every column deletion, which gives the same ideal.
pub fn alexander_polynomial(g: &FpGroup) -> Result<LaurentPoly<BigInt>, NotComputable> {
    let e = abelianization_map(g)?;
    let cols = deletable_columns(&e);
    if let Some(&c) = cols.first() {
        return Ok(alexander_deleting(g, &e, c));
    }
    Ok((0..g.generators()).fold(LaurentPoly::zero(), |acc, c| acc.gcd(&alexander_deleting(g, &e, c))))
}

/// `Δ(1)`; `±1` for knot groups.
pub fn value_at_one(p: &LaurentPoly<BigInt>) -> BigInt {
    p.coeffs().iter().fold(BigInt::zero(), |a, c| a + c)
}

pub fn coefficients_i64(p: &LaurentPoly<BigInt>) -> Vec<i64> {
    p.coeffs().iter().map(|c| c.to_i64().unwrap_or(if c.is_negative() { i64::MIN } else { i64::MAX })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{bundled, parse_bundled};
    use crate::grammar::{parse_group_file, parse_word};

    fn group(k: usize, rels: &[&str]) -> FpGroup {
        FpGroup::new(k, rels.iter().map(|r| parse_word(r, k).unwrap()).collect())
    }

    fn poly(c: &[i64]) -> LaurentPoly<BigInt> {
        LaurentPoly::from_i64(c)
    }

    /// Laplace expansion along the first row.
    fn laplace(m: &[Vec<LaurentPoly<i64>>]) -> LaurentPoly<i64> {
        if m.is_empty() {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<LaurentPoly<i64>>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect()).collect();
            let term = &m[0][j] * &laplace(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn bareiss_matches_laplace() {
        let p = |c: &[i64], low: i64| LaurentPoly::<i64>::new(low, c.to_vec());
        let m = vec![
            vec![p(&[1, -1], 0), p(&[2], -1), p(&[0, 1, 1], 0)],
            vec![p(&[0], 0), p(&[1, 1], 1), p(&[3], 0)],
            vec![p(&[1], 2), p(&[-1, 2], 0), p(&[1, 0, -1], -1)],
        ];
        assert_eq!(determinant(&m), laplace(&m));
        let singular = vec![m[0].clone(), m[0].clone(), m[1].clone()];
        assert!(determinant(&singular).is_zero());
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let (k, rels) = parse_group_file(bundled("trefoil.fp").unwrap()).unwrap();
        let tref = FpGroup::new(k, rels);
        assert_eq!(alexander_polynomial(&tref).unwrap(), poly(&[1, -1, 1]));
        let (k, rels) = parse_group_file(bundled("figure8.fp").unwrap()).unwrap();
        let fig8 = FpGroup::new(k, rels);
        assert_eq!(alexander_polynomial(&fig8).unwrap(), poly(&[1, -3, 1]));
    }

    #[test]
    fn unknot_and_non_knots() {
        assert_eq!(alexander_polynomial(&FpGroup::free(1)).unwrap(), LaurentPoly::one());
        assert!(alexander_polynomial(&FpGroup::free(2)).is_err());
        assert!(alexander_polynomial(&group(1, &["x1^2"])).is_err());
    }

    #[test]
    fn column_choice_does_not_matter() {
        // Torus knot T(2,5) as a two-generator one-relator group.
        let g = group(2, &["x1 x2 x1 x2 x1 x2^-1 x1^-1 x2^-1 x1^-1 x2^-1"]);
        let e = abelianization_map(&g).unwrap();
        let polys: Vec<_> = deletable_columns(&e).into_iter().map(|c| alexander_deleting(&g, &e, c)).collect();
        assert!(polys.len() == 2 && polys[0] == polys[1]);
        assert_eq!(polys[0], poly(&[1, -1, 1, -1, 1]));
    }

    #[test]
    fn mirrored_presentation() {
        let g = group(2, &["x1 x2 x1 x2^-1 x1^-1 x2^-1"]);
        let m = group(2, &["x1^-1 x2^-1 x1^-1 x2 x1 x2"]);
        assert_eq!(alexander_polynomial(&g).unwrap(), alexander_polynomial(&m).unwrap().mirror().normalized());
    }

    #[test]
    fn generators_without_unit_exponent() {
        // <a, b | a^2 b^-3>: trefoil group with a -> t^3, b -> t^2.
        let g = group(2, &["x1^2 x2^-3"]);
        let e = abelianization_map(&g).unwrap();
        assert!(deletable_columns(&e).is_empty());
        assert_eq!(alexander_polynomial(&g).unwrap(), poly(&[1, -1, 1]));
    }

    #[test]
    fn knot_group_rule() {
        let p = parse_bundled("r.ap").unwrap();
        let r = ArtinPresentation::validate(p.n, p.relators).unwrap();
        let g = knot_group(&r, 3).unwrap();
        assert_eq!(g.relators().len(), 3);
        assert_eq!(g.peripheral().unwrap().longitude, *r.relator(3));
        assert_eq!(knot_group(&r, 0), Err(KnotError::BindingNotImplemented));
        assert_eq!(knot_group(&r, 5), Err(KnotError::IndexOutOfRange { index: 5, n: 4 }));
    }
}
