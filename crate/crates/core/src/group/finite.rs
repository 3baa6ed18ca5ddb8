//! Small finite groups as multiplication tables.

use std::collections::HashMap;
use std::hash::Hash;

use super::coset::todd_coxeter;
use super::fp::FpGroup;
use crate::grammar::parse_word;

/// Element indices; `0` is always the identity.
pub type Elem = u16;

/// A finite group of order at most `u16::MAX`, given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
}

impl FiniteGroup {
    /// Closes `gens` under `mul`, numbering elements in breadth-first order
    /// starting from `identity`.
    pub fn generate<E, F>(name: impl Into<String>, identity: E, gens: &[E], mul: F) -> Self
    where
        E: Clone + Eq + Hash,
        F: Fn(&E, &E) -> E,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<E, usize> = HashMap::from([(identity, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for g in gens {
                let p = mul(&elems[k], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            k += 1;
        }
        let order = elems.len();
        assert!(order <= Elem::MAX as usize, "group too large for a table");
        let mut table = vec![0; order * order];
        for (a, ea) in elems.iter().enumerate() {
            for (b, eb) in elems.iter().enumerate() {
                table[a * order + b] = index[&mul(ea, eb)] as Elem;
            }
        }
        let mut inverse = vec![0; order];
        for a in 0..order {
            inverse[a] = (0..order).find(|&b| table[a * order + b] == 0).expect("group has inverses") as Elem;
        }
        FiniteGroup { name: name.into(), order, table, inverse }
    }

    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        FiniteGroup::generate(format!("cyclic({k})"), 0usize, &[1 % k], |a, b| (a + b) % k)
    }

    pub fn symmetric(k: usize) -> Self {
        assert!((1..=6).contains(&k), "symmetric groups are capped at S6");
        let mut gens = Vec::new();
        if k >= 2 {
            let mut t: Vec<u8> = (0..k as u8).collect();
            t.swap(0, 1);
            let c: Vec<u8> = (0..k as u8).map(|i| (i + 1) % k as u8).collect();
            gens.push(t);
            gens.push(c);
        }
        FiniteGroup::generate(format!("S{k}"), (0..k as u8).collect(), &gens, |a: &Vec<u8>, b: &Vec<u8>| compose_perm(a, b))
    }

    pub fn alternating(k: usize) -> Self {
        assert!((1..=6).contains(&k), "alternating groups are capped at A6");
        // 3-cycles (0 1 i) generate A_k.
        let gens: Vec<Vec<u8>> = (2..k)
            .map(|i| {
                let mut p: Vec<u8> = (0..k as u8).collect();
                p[0] = 1;
                p[1] = i as u8;
                p[i] = 0;
                p
            })
            .collect();
        FiniteGroup::generate(format!("A{k}"), (0..k as u8).collect(), &gens, |a: &Vec<u8>, b: &Vec<u8>| compose_perm(a, b))
    }

    /// The binary dihedral group of order `4k`:
    /// `<a, b | a^{2k}, b^2 = a^k, b^-1 a b = a^-1>`.
    pub fn binary_dihedral(k: usize) -> Self {
        assert!(k >= 2);
        let m = 2 * k;
        // (i, e) stands for a^i b^e.
        let mul = move |&(i, e): &(usize, u8), &(j, f): &(usize, u8)| -> (usize, u8) {
            if e == 0 {
                ((i + j) % m, f)
            } else if f == 0 {
                ((i + m - j) % m, 1)
            } else {
                ((i + m - j + k) % m, 0)
            }
        };
        FiniteGroup::generate(format!("binary_dihedral({k})"), (0, 0), &[(1, 0), (0, 1)], mul)
    }

    /// `SL(2, p)` from explicit matrices over the prime field.
    pub fn sl2(p: u32) -> Self {
        let mul = move |a: &[u32; 4], b: &[u32; 4]| -> [u32; 4] {
            [
                (a[0] * b[0] + a[1] * b[2]) % p,
                (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p,
                (a[2] * b[1] + a[3] * b[3]) % p,
            ]
        };
        // Elementary matrices generate SL(2, p).
        FiniteGroup::generate(format!("SL(2,{p})"), [1, 0, 0, 1], &[[1, 1, 0, 1], [1, 0, 1, 1]], mul)
    }

    /// `SL(2,5)`, the binary icosahedral group of order 120.
    pub fn sl25() -> Self {
        Self::sl2(5)
    }

    /// Binary tetrahedral group, `SL(2,3)`.
    pub fn binary_tetrahedral() -> Self {
        let mut g = Self::sl2(3);
        g.name = "binary_tetrahedral".into();
        g
    }

    /// Binary octahedral group `<r, s, t | r^2 = s^3 = t^4 = rst>`, built from
    /// its regular permutation representation.
    pub fn binary_octahedral() -> Self {
        let g = FpGroup::new(
            3,
            ["x1^2 (x1 x2 x3)^-1", "x2^3 (x1 x2 x3)^-1", "x3^4 (x1 x2 x3)^-1"]
                .iter()
                .map(|r| parse_word(r, 3).unwrap())
                .collect(),
        );
        Self::from_presentation("binary_octahedral", &g, 10_000).expect("finite presentation")
    }

    /// Regular representation of a finite presentation, if enumeration closes.
    pub fn from_presentation(name: &str, g: &FpGroup, max_cosets: usize) -> Option<Self> {
        let table = todd_coxeter(g, &[], max_cosets).ok()?;
        let gens: Vec<Vec<u32>> = (1..=g.generators())
            .map(|k| table.generator_permutation(k).into_iter().map(|v| v as u32).collect())
            .collect();
        let id: Vec<u32> = (0..table.index() as u32).collect();
        Some(FiniteGroup::generate(name, id, &gens, |a: &Vec<u32>, b: &Vec<u32>| {
            // right action: first a, then b
            a.iter().map(|&i| b[i as usize]).collect()
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as Elem).all(|a| (0..self.order as Elem).all(|b| self.commute(a, b)))
    }

    /// The smallest element of each conjugacy class.
    pub fn class_representatives(&self) -> Vec<Elem> {
        let n = self.order as Elem;
        let mut seen = vec![false; self.order];
        let mut reps = Vec::new();
        for a in 0..n {
            if seen[a as usize] {
                continue;
            }
            reps.push(a);
            for g in 0..n {
                seen[self.mul(self.mul(g, a), self.inv(g)) as usize] = true;
            }
        }
        reps
    }

    /// Size of the subgroup generated by `gens`.
    pub fn generated_order(&self, gens: &[Elem]) -> usize {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0 as Elem];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    /// Identity and inverses exactly; associativity on a deterministic sample
    /// (all triples for orders up to 60).
    pub fn check_axioms(&self) -> bool {
        let n = self.order as Elem;
        let ident = (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a);
        let inv = (0..n).all(|a| self.mul(a, self.inv(a)) == 0 && self.mul(self.inv(a), a) == 0);
        let step = if self.order <= 60 { 1 } else { 7 };
        let assoc = (0..n).step_by(step).all(|a| {
            (0..n).step_by(step).all(|b| {
                (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
            })
        });
        ident && inv && assoc
    }
}

fn compose_perm(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().map(|&i| b[i as usize]).collect()
}

/// Targets accepted on the command line: `sl25`, `s3`…`s6`, `a4`…`a6`,
/// `cyclic:k`, `bd:k`, `2t`, `2o`, `2i`.
pub fn named_group(spec: &str) -> Option<FiniteGroup> {
    let spec = spec.trim().to_ascii_lowercase();
    if let Some(k) = spec.strip_prefix("cyclic:") {
        return k.parse().ok().filter(|&k| (1..=720).contains(&k)).map(FiniteGroup::cyclic);
    }
    if let Some(k) = spec.strip_prefix("bd:") {
        return k.parse().ok().filter(|&k| (2..=180).contains(&k)).map(FiniteGroup::binary_dihedral);
    }
    match spec.as_str() {
        "sl25" | "2i" | "i120" => return Some(FiniteGroup::sl25()),
        "2t" => return Some(FiniteGroup::binary_tetrahedral()),
        "2o" => return Some(FiniteGroup::binary_octahedral()),
        _ => {}
    }
    let (kind, k) = spec.split_at(1);
    let k: usize = k.parse().ok().filter(|k| (1..=6).contains(k))?;
    match kind {
        "s" => Some(FiniteGroup::symmetric(k)),
        "a" => Some(FiniteGroup::alternating(k)),
        _ => None,
    }
}

/// The finite subgroups of SU(2) searched for representations, in the fixed
/// order that decides which witness is reported.
pub fn su2_targets() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (2..=12).map(FiniteGroup::cyclic).collect();
    out.extend((2..=6).map(FiniteGroup::binary_dihedral));
    out.push(FiniteGroup::binary_tetrahedral());
    out.push(FiniteGroup::binary_octahedral());
    out.push(FiniteGroup::sl25());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(FiniteGroup::cyclic(5).order(), 5);
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(6).order(), 720);
        assert_eq!(FiniteGroup::alternating(5).order(), 60);
        assert_eq!(FiniteGroup::alternating(6).order(), 360);
        assert_eq!(FiniteGroup::binary_dihedral(3).order(), 12);
        assert_eq!(FiniteGroup::sl25().order(), 120);
        assert_eq!(FiniteGroup::binary_tetrahedral().order(), 24);
        assert_eq!(FiniteGroup::binary_octahedral().order(), 48);
    }

    #[test]
    fn axioms_hold() {
        for g in su2_targets().iter().chain([FiniteGroup::symmetric(4), FiniteGroup::alternating(5)].iter()) {
            assert!(g.check_axioms(), "{}", g.name());
        }
    }

    #[test]
    fn binary_polyhedral_groups_have_a_unique_involution() {
        for g in [FiniteGroup::binary_tetrahedral(), FiniteGroup::binary_octahedral(), FiniteGroup::sl25(), FiniteGroup::binary_dihedral(4)] {
            let involutions = (1..g.order() as Elem).filter(|&a| g.element_order(a) == 2).count();
            assert_eq!(involutions, 1, "{}", g.name());
        }
    }

    #[test]
    fn sl25_is_perfect_and_not_a5() {
        let g = FiniteGroup::sl25();
        assert!(!g.is_abelian());
        let max_order = (0..120).map(|a| g.element_order(a)).max().unwrap();
        assert_eq!(max_order, 10);
    }

    #[test]
    fn class_counts() {
        assert_eq!(FiniteGroup::sl25().class_representatives().len(), 9);
        assert_eq!(FiniteGroup::symmetric(4).class_representatives().len(), 5);
        assert_eq!(FiniteGroup::cyclic(7).class_representatives().len(), 7);
    }

    #[test]
    fn names_parse() {
        assert_eq!(named_group("s3").unwrap().order(), 6);
        assert_eq!(named_group("a5").unwrap().order(), 60);
        assert_eq!(named_group("cyclic:7").unwrap().order(), 7);
        assert_eq!(named_group("sl25").unwrap().order(), 120);
        assert!(named_group("s9").is_none());
        assert!(named_group("foo").is_none());
    }
}
