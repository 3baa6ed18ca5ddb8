//! Bundled example presentations and seeded random corpora.

use rand::Rng;

use crate::artin::{multiply, random_torelli, ArtinError, ArtinPresentation};
use crate::braid::{to_framed_automorphism, BraidWord, FramedAutomorphism};
use crate::grammar::{parse_presentation_file, ParseError, PresentationText};

/// The example `s`, verbatim. It fails the Artin equation.
pub const S_AP: &str = include_str!("../corpus/s.ap");
/// The same `s` with the one-letter correction in `s_1` (`(x2x3)^2` for `(x1x3)^2`).
pub const S_CORRECTED_AP: &str = include_str!("../corpus/s_corrected.ap");
/// The example Torelli `t`.
pub const T_AP: &str = include_str!("../corpus/t.ap");
/// The product `r = t·s`, verbatim.
pub const R_AP: &str = include_str!("../corpus/r.ap");
pub const IDENTITY4_AP: &str = include_str!("../corpus/identity4.ap");
pub const TREFOIL_FP: &str = include_str!("../corpus/trefoil.fp");
pub const FIGURE8_FP: &str = include_str!("../corpus/figure8.fp");

/// Every bundled file as `(name, contents)`.
pub const BUNDLED: &[(&str, &str)] = &[
    ("s.ap", S_AP),
    ("s_corrected.ap", S_CORRECTED_AP),
    ("t.ap", T_AP),
    ("r.ap", R_AP),
    ("identity4.ap", IDENTITY4_AP),
    ("trefoil.fp", TREFOIL_FP),
    ("figure8.fp", FIGURE8_FP),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}

pub fn parse_bundled(name: &str) -> Result<PresentationText, ParseError> {
    let text = bundled(name).unwrap_or_else(|| panic!("no bundled file {name}"));
    parse_presentation_file(text)
}

/// A random product of pure braid generators `A_ij^{±1}` whose total braid
/// letter length stays within `max_len`.
pub fn random_pure_braid<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> BraidWord {
    let mut b = BraidWord::identity(n);
    if n < 2 {
        return b;
    }
    let target = rng.gen_range(0..=max_len);
    // A few attempts to find a generator that still fits.
    let mut misses = 0;
    while misses < 8 {
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let g = BraidWord::pure_generator(n, i, j).unwrap();
        if b.len() + g.len() > target {
            misses += 1;
            continue;
        }
        b = if rng.gen_bool(0.5) { b.then(&g) } else { b.then(&g.inverse()) };
    }
    b
}

pub fn random_framings<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// A random framed pure braid as an automorphism.
pub fn random_framed<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_len: usize,
    framing_bound: i64,
) -> FramedAutomorphism {
    let b = random_pure_braid(rng, n, max_len);
    let f = random_framings(rng, n, framing_bound);
    to_framed_automorphism(&b, &f).expect("products of A_ij are pure")
}

/// Torelli multiples `t·d` of diagonal `±1` presentations, the sample used
/// for Triality runs.
pub fn triality_corpus_entry(
    n: usize,
    seed: u64,
    signs: &[i64],
    torelli_size: usize,
) -> Result<ArtinPresentation, ArtinError> {
    let t = random_torelli(n, seed, torelli_size)?;
    multiply(&t, &ArtinPresentation::diagonal(signs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::is_pure;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bundled_files_parse() {
        for (name, _) in BUNDLED.iter().filter(|(n, _)| n.ends_with(".ap")) {
            parse_bundled(name).unwrap();
        }
    }

    #[test]
    fn random_pure_braids_are_pure_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=6);
            let b = random_pure_braid(&mut rng, n, 40);
            assert!(b.len() <= 40);
            assert!(is_pure(&b));
        }
    }
}
