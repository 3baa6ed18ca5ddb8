//! Brute-force reference computations, kept independent of the search code
//! they check.

use crate::group::{Elem, FiniteGroup, FpGroup, HomCounts};
use crate::word::Word;

/// Letter-by-letter evaluation of `w` under `images`.
fn evaluate(target: &FiniteGroup, images: &[Elem], w: &Word) -> Elem {
    w.letters().fold(0, |acc, l| {
        let x = images[l.unsigned_abs() as usize - 1];
        target.mul(acc, if l > 0 { x } else { target.inv(x) })
    })
}

fn closure_size(target: &FiniteGroup, gens: &[Elem]) -> usize {
    let mut seen = vec![false; target.order()];
    let mut stack = vec![0 as Elem];
    seen[0] = true;
    let mut count = 1;
    while let Some(a) = stack.pop() {
        for &g in gens {
            let b = target.mul(a, g);
            if !seen[b as usize] {
                seen[b as usize] = true;
                count += 1;
                stack.push(b);
            }
        }
    }
    count
}

/// Counts homomorphisms `g → target` by scanning all `|target|^k` tuples.
pub fn exhaustive_hom_count(g: &FpGroup, target: &FiniteGroup) -> HomCounts {
    let k = g.generators();
    let m = target.order();
    let mut counts = HomCounts::default();
    let mut images = vec![0 as Elem; k];
    loop {
        if g.relators().iter().all(|r| evaluate(target, &images, r) == 0) {
            counts.total += 1;
            let nonabelian = images
                .iter()
                .enumerate()
                .any(|(i, &a)| images[i + 1..].iter().any(|&b| target.mul(a, b) != target.mul(b, a)));
            if nonabelian {
                counts.nonabelian_image += 1;
            }
            if closure_size(target, &images) == m {
                counts.surjective += 1;
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return counts;
            }
            images[pos] += 1;
            if (images[pos] as usize) < m {
                break;
            }
            images[pos] = 0;
            pos += 1;
        }
    }
}

/// Sylvester's criterion on leading principal minors, in exact `i128`.
pub fn positive_definite_by_minors(rows: &[Vec<i64>]) -> bool {
    (1..=rows.len()).all(|k| {
        let sub: Vec<Vec<i128>> = rows[..k].iter().map(|r| r[..k].iter().map(|&v| v as i128).collect()).collect();
        laplace(&sub) > 0
    })
}

/// Cofactor expansion along the first row.
pub fn laplace(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .filter(|&j| m[0][j] != 0)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * laplace(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}`
/// where `D_k` is the gcd of all `k × k` minors.
pub fn invariant_factors_by_minors(rows: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut dk = 0i128;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                dk = gcd(dk, laplace(&sub));
            }
        }
        if dk == 0 {
            out.extend(std::iter::repeat_n(0, r.min(c) - k + 1));
            break;
        }
        out.push((dk / prev) as i64);
        prev = dk;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_group_into_s3() {
        assert_eq!(exhaustive_hom_count(&FpGroup::free(2), &FiniteGroup::symmetric(3)).total, 36);
    }

    #[test]
    fn divisors_small() {
        assert_eq!(invariant_factors_by_minors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(invariant_factors_by_minors(&[vec![2, 4], vec![1, 2]]), vec![1, 0]);
    }

    #[test]
    fn laplace_small() {
        assert_eq!(laplace(&[vec![2, -1], vec![-1, 2]]), 3);
        assert!(positive_definite_by_minors(&[vec![2, -1], vec![-1, 2]]));
        assert!(!positive_definite_by_minors(&[vec![0, 1], vec![1, 0]]));
    }
}
