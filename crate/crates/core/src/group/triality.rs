//! The finite perfect groups presented by Artin presentations are either
//! trivial or the binary icosahedral group of order 120.

use serde::Serialize;

use super::coset::todd_coxeter;
use super::finite::{Elem, FiniteGroup};
use super::fp::{is_perfect, pi};
use super::homs::{apply_hom, find_surjection, DEFAULT_NODE_CAP};
use super::tietze::tietze_simplify_with_map;
use crate::artin::ArtinPresentation;

pub const TIETZE_ROUNDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Triality {
    Trivial,
    /// Order 120, certified by a surjection onto `SL(2,5)`; `images[i]` is
    /// the image of `x_{i+1}` as a matrix `[a, b, c, d]` over `F_5`.
    I120 { images: Vec<[u32; 4]> },
    NotPerfect,
    /// Enumeration did not close within the coset cap.
    Unknown { max_cosets: usize },
    /// A closed, perfect enumeration of order other than 1 or 120, or of
    /// order 120 with no surjection onto `SL(2,5)`.
    Violation { order: usize, relators: Vec<String> },
}

impl Triality {
    pub fn is_violation(&self) -> bool {
        matches!(self, Triality::Violation { .. })
    }
}

pub fn triality_check(r: &ArtinPresentation, max_cosets: usize) -> Triality {
    let g = pi(r);
    if !is_perfect(&g) {
        return Triality::NotPerfect;
    }
    let s = tietze_simplify_with_map(&g, TIETZE_ROUNDS);
    let order = match todd_coxeter(&s.group, &[], max_cosets) {
        Ok(t) => t.index(),
        Err(_) => return Triality::Unknown { max_cosets },
    };
    let violation = || Triality::Violation { order, relators: r.relators().iter().map(|w| w.to_string()).collect() };
    match order {
        1 => Triality::Trivial,
        120 => {
            let target = FiniteGroup::sl25();
            match find_surjection(&s.group, &target, DEFAULT_NODE_CAP) {
                Ok(Some(im)) => {
                    let images: Vec<Elem> = s.images.iter().map(|w| apply_hom(&target, &im, w)).collect();
                    let mats = sl25_matrices();
                    Triality::I120 { images: images.iter().map(|&e| mats[e as usize]).collect() }
                }
                _ => violation(),
            }
        }
        _ => violation(),
    }
}

/// Matrices of `SL(2,5)` in the element order of [`FiniteGroup::sl25`].
fn sl25_matrices() -> Vec<[u32; 4]> {
    let p = 5;
    let mul = |a: &[u32; 4], b: &[u32; 4]| -> [u32; 4] {
        [
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        ]
    };
    let gens = [[1, 1, 0, 1], [1, 0, 1, 1]];
    let mut elems = vec![[1, 0, 0, 1]];
    let mut k = 0;
    while k < elems.len() {
        for g in &gens {
            let m = mul(&elems[k], g);
            if !elems.contains(&m) {
                elems.push(m);
            }
        }
        k += 1;
    }
    elems
}
