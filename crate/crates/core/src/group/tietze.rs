//! Tietze simplification: generator elimination and relator shortening.

use super::fp::{FpGroup, Peripheral};
use crate::word::Word;

/// Letter-length ceiling past which eliminations stop.
const LENGTH_CEILING: usize = 50_000;

/// A simplified presentation and, for each original generator, its image as
/// a word in the new generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub group: FpGroup,
    pub images: Vec<Word>,
}

/// Tietze-equivalent presentation; `budget` bounds the number of
/// elimination and shortening rounds.
pub fn tietze_simplify(g: &FpGroup, budget: usize) -> FpGroup {
    tietze_simplify_with_map(g, budget).group
}

pub fn tietze_simplify_with_map(g: &FpGroup, budget: usize) -> Simplified {
    let k = g.generators();
    let mut st = State {
        alive: vec![true; k],
        relators: g.relators().iter().map(|w| w.letters().collect()).collect(),
        images: (1..=k as i32).map(|i| vec![i]).collect(),
        peripheral: g
            .peripheral()
            .map(|p| (p.meridian.letters().collect(), p.longitude.letters().collect())),
    };
    st.tidy();
    for _ in 0..budget {
        let shortened = st.shorten();
        let eliminated = st.eliminate_one();
        st.tidy();
        if !shortened && !eliminated {
            break;
        }
    }
    st.finish()
}

type Letters = Vec<i32>;

struct State {
    alive: Vec<bool>,
    relators: Vec<Letters>,
    images: Vec<Letters>,
    peripheral: Option<(Letters, Letters)>,
}

fn reduce(w: &[i32]) -> Letters {
    let mut out: Letters = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[i32]) -> Letters {
    let mut w = reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn inverse(w: &[i32]) -> Letters {
    w.iter().rev().map(|l| -l).collect()
}

/// Lexicographically least rotation of `w` or of its inverse.
fn cyclic_key(w: &[i32]) -> Letters {
    let inv = inverse(w);
    let mut best = w.to_vec();
    for base in [w, &inv[..]] {
        for i in 0..base.len() {
            let rot: Letters = base[i..].iter().chain(&base[..i]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

fn substitute(w: &[i32], x: i32, e: &[i32]) -> Letters {
    let einv = inverse(e);
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        if l == x {
            out.extend_from_slice(e);
        } else if l == -x {
            out.extend_from_slice(&einv);
        } else {
            out.push(l);
        }
    }
    reduce(&out)
}

impl State {
    fn tidy(&mut self) {
        let mut seen = std::collections::HashSet::new();
        let rels = std::mem::take(&mut self.relators);
        for r in rels {
            let r = cyclic_reduce(&r);
            if !r.is_empty() && seen.insert(cyclic_key(&r)) {
                self.relators.push(r);
            }
        }
        self.relators.sort_by_key(Vec::len);
    }

    fn total_len(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    /// Eliminates the generator occurring exactly once in some relator,
    /// choosing the elimination that grows the presentation least.
    fn eliminate_one(&mut self) -> bool {
        let mut best: Option<(i64, usize, i32)> = None;
        for (ri, r) in self.relators.iter().enumerate() {
            for g in 1..=self.alive.len() as i32 {
                if !self.alive[g as usize - 1] {
                    continue;
                }
                if r.iter().filter(|l| l.abs() == g).count() != 1 {
                    continue;
                }
                let elsewhere: usize = self
                    .relators
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != ri)
                    .map(|(_, s)| s.iter().filter(|l| l.abs() == g).count())
                    .sum();
                let growth = elsewhere as i64 * (r.len() as i64 - 2) - r.len() as i64;
                if best.is_none_or(|(b, _, _)| growth < b) {
                    best = Some((growth, ri, g));
                }
            }
        }
        let Some((growth, ri, g)) = best else { return false };
        if growth > 0 && self.total_len() as i64 + growth > LENGTH_CEILING as i64 {
            return false;
        }
        let r = self.relators.remove(ri);
        let pos = r.iter().position(|l| l.abs() == g).unwrap();
        // Rotate to x^e w, so x = w^-e.
        let rot: Letters = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let expr = if r[pos] > 0 { inverse(&rot) } else { rot };
        for s in self.relators.iter_mut() {
            *s = substitute(s, g, &expr);
        }
        for im in self.images.iter_mut() {
            *im = substitute(im, g, &expr);
        }
        if let Some((m, l)) = self.peripheral.as_mut() {
            *m = substitute(m, g, &expr);
            *l = substitute(l, g, &expr);
        }
        self.alive[g as usize - 1] = false;
        true
    }

    /// Replaces a long cyclic subword of one relator matching more than half
    /// of a rotation of a shorter one.
    fn shorten(&mut self) -> bool {
        let mut changed = false;
        for i in 0..self.relators.len() {
            let r = self.relators[i].clone();
            let n = r.len();
            if n == 0 {
                continue;
            }
            let inv = inverse(&r);
            let rotations: Vec<Letters> = [&r[..], &inv[..]]
                .iter()
                .flat_map(|b| (0..n).map(move |k| b[k..].iter().chain(&b[..k]).copied().collect::<Letters>()))
                .collect();
            for j in 0..self.relators.len() {
                if i == j || self.relators[j].len() < n {
                    continue;
                }
                loop {
                    let s = &self.relators[j];
                    let Some(new) = rotations.iter().find_map(|p| replace_half(s, p)) else { break };
                    self.relators[j] = cyclic_reduce(&new);
                    changed = true;
                }
            }
        }
        changed
    }

    fn finish(self) -> Simplified {
        let mut renumber = vec![0i32; self.alive.len() + 1];
        let mut k = 0;
        for (i, &a) in self.alive.iter().enumerate() {
            if a {
                k += 1;
                renumber[i + 1] = k;
            }
        }
        let k = k as usize;
        let word = |w: &Letters| {
            let letters: Vec<i32> = w.iter().map(|&l| l.signum() * renumber[l.unsigned_abs() as usize]).collect();
            Word::from_letters(k, &letters).expect("eliminated generators were substituted away")
        };
        let relators = self.relators.iter().map(word).collect();
        let images = self.images.iter().map(word).collect();
        let mut group = FpGroup::new(k, relators);
        if let Some((m, l)) = &self.peripheral {
            group = group.with_peripheral(word(m), word(l));
        }
        Simplified { group, images }
    }
}

/// If the cyclic word `s` contains a prefix `p[..m]` with `2m > |p|`,
/// returns `s` with that piece replaced by the inverse of `p[m..]`.
fn replace_half(s: &[i32], p: &[i32]) -> Option<Letters> {
    let n = s.len();
    let need = p.len() / 2 + 1;
    if need > n {
        return None;
    }
    for start in 0..n {
        let mut m = 0;
        while m < p.len() && m < n && s[(start + m) % n] == p[m] {
            m += 1;
        }
        if m >= need {
            let rest: Letters = (0..n - m).map(|k| s[(start + m + k) % n]).collect();
            let mut out = inverse(&p[m..]);
            out.extend(rest);
            return Some(out);
        }
    }
    None
}

impl Simplified {
    pub fn peripheral(&self) -> Option<&Peripheral> {
        self.group.peripheral()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_word;
    use crate::group::coset::group_order;
    use crate::group::finite::FiniteGroup;
    use crate::group::homs::{hom_count, DEFAULT_NODE_CAP};

    fn group(k: usize, rels: &[&str]) -> FpGroup {
        FpGroup::new(k, rels.iter().map(|r| parse_word(r, k).unwrap()).collect())
    }

    #[test]
    fn eliminates_defined_generators() {
        let g = group(3, &["x3^-1 x1 x2", "x1^2", "x2^3", "x3^5"]);
        let s = tietze_simplify_with_map(&g, 10);
        assert_eq!(s.group.generators(), 2);
        assert_eq!(group_order(&s.group, 1000).unwrap(), 60);
    }

    #[test]
    fn drops_trivial_and_duplicate_relators() {
        let g = group(2, &["x1 x2 x1^-1 x2^-1", "x2 x1 x2^-1 x1^-1", "x1 x1^-1", "x2^-1 x1^-1 x2 x1"]);
        let s = tietze_simplify(&g, 0);
        assert_eq!(s.relators().len(), 1);
    }

    #[test]
    fn trivial_presentations_collapse() {
        let g = group(3, &["x1 x2^-1", "x2 x3^-1", "x3"]);
        let s = tietze_simplify(&g, 10);
        assert_eq!(s.generators(), 0);
        assert!(s.relators().is_empty());
    }

    #[test]
    fn preserves_hom_counts() {
        let g = group(3, &["x1^2 (x1 x2 x3)^-1", "x2^3 (x1 x2 x3)^-1", "x3^5 (x1 x2 x3)^-1"]);
        let s = tietze_simplify_with_map(&g, 10);
        assert!(s.group.generators() < 3);
        for t in [FiniteGroup::sl25(), FiniteGroup::alternating(5), FiniteGroup::symmetric(4)] {
            let a = hom_count(&g, &t, DEFAULT_NODE_CAP).unwrap();
            let b = hom_count(&s.group, &t, DEFAULT_NODE_CAP).unwrap();
            assert_eq!(a.total, b.total, "{}", t.name());
        }
        assert_eq!(group_order(&s.group, 10_000).unwrap(), 120);
    }

    #[test]
    fn shortening_uses_long_overlaps() {
        let got = replace_half(&[1, 2, 1, 3], &[1, 2, 1, -2]).unwrap();
        assert_eq!(got, vec![2, 3]);
    }

    #[test]
    fn peripheral_words_follow_eliminations() {
        let g = group(2, &["x2^-1 x1^2"]).with_peripheral(parse_word("x2", 2).unwrap(), parse_word("x1 x2", 2).unwrap());
        let s = tietze_simplify_with_map(&g, 5);
        assert_eq!(s.group.generators(), 1);
        assert_eq!(s.peripheral().unwrap().meridian, parse_word("x1^2", 1).unwrap());
        assert_eq!(s.peripheral().unwrap().longitude, parse_word("x1^3", 1).unwrap());
    }
}
