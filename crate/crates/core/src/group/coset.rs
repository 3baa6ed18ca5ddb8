//! Felsch-style Todd-Coxeter coset enumeration.
//!
//! Cosets are numbered in order of definition, new cosets are always defined
//! at the first empty table entry, and every definition or deduction is
//! pushed on a stack and scanned against the relator cycles starting with
//! that column. Coincidences are resolved with union-find; rows of dead
//! cosets are compacted away once they make up half the table.

use serde::Serialize;
use thiserror::Error;

use super::fp::FpGroup;
use crate::word::Word;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
#[error("coset table overflow: more than {max_cosets} cosets needed (result unknown)")]
pub struct Overflow {
    pub max_cosets: usize,
}

/// Column of a signed letter: `x_g` is `2(g-1)`, `x_g^-1` is `2(g-1)+1`.
pub(crate) fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 { 2 * g } else { 2 * g + 1 }
}

fn columns_of(w: &Word) -> Vec<usize> {
    w.letters().map(column).collect()
}

/// A closed coset table: transitive permutation action of the generators on
/// the cosets of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    /// Cosets defined in total, including ones later found coincident.
    pub defined: usize,
}

impl CosetTable {
    /// Number of cosets, the index of the subgroup.
    pub fn index(&self) -> usize {
        if self.cols == 0 { 1 } else { self.table.len() / self.cols }
    }

    pub fn completed(&self) -> bool {
        true
    }

    /// Image of coset `c` (0-based, 0 is the subgroup) under a signed letter.
    pub fn act(&self, c: usize, letter: i32) -> usize {
        self.table[c * self.cols + column(letter)] as usize
    }

    /// The permutation of the cosets induced by `x_g` (1-based).
    pub fn generator_permutation(&self, g: usize) -> Vec<usize> {
        (0..self.index()).map(|c| self.act(c, g as i32)).collect()
    }

    pub fn trace(&self, c: usize, w: &Word) -> usize {
        w.letters().fold(c, |c, l| self.act(c, l))
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    defined: usize,
    max_cosets: usize,
    /// Relator cycles (and their inverses) grouped by first column.
    cycles: Vec<Vec<Vec<usize>>>,
    subgroup: Vec<Vec<usize>>,
    deductions: Vec<(u32, usize)>,
    queue: Vec<u32>,
    scan_from: usize,
}

impl Enumerator {
    fn new(g: &FpGroup, subgroup: &[Word], max_cosets: usize) -> Self {
        let cols = 2 * g.generators();
        let mut cycles = vec![Vec::new(); cols];
        let mut seen = std::collections::HashSet::new();
        for r in g.relators() {
            let (core, _) = r.cyclically_reduce();
            for w in [core.clone(), core.inverse()] {
                let cs = columns_of(&w);
                for k in 0..cs.len() {
                    let mut rot = cs[k..].to_vec();
                    rot.extend_from_slice(&cs[..k]);
                    if seen.insert(rot.clone()) {
                        cycles[rot[0]].push(rot);
                    }
                }
            }
        }
        let subgroup = subgroup.iter().map(columns_of).filter(|w| !w.is_empty()).collect();
        let mut e = Enumerator {
            cols,
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            defined: 0,
            max_cosets: max_cosets.max(1),
            cycles,
            subgroup,
            deductions: Vec::new(),
            queue: Vec::new(),
            scan_from: 0,
        };
        e.new_coset();
        e
    }

    fn total(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> u32 {
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.live += 1;
        self.defined += 1;
        c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut idx = 0;
        while idx < self.queue.len() {
            let gamma = self.queue[idx];
            idx += 1;
            for x in 0..self.cols {
                let delta = self.get(gamma, x);
                if delta == UNDEF {
                    continue;
                }
                let xi = x ^ 1;
                if self.get(delta, xi) == gamma {
                    self.set(delta, xi, UNDEF);
                }
                self.scan_from = self.scan_from.min(delta as usize);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else {
                    let nxi = self.get(nu, xi);
                    if nxi != UNDEF {
                        self.merge(mu, nxi);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, xi, mu);
                        self.deductions.push((mu, x));
                    }
                }
            }
        }
        self.scan_from = self.scan_from.min(self.rep(a).min(self.rep(b)) as usize);
    }

    /// Scans `w` from coset `c` in both directions, deducing a single gap or
    /// detecting a coincidence.
    fn scan(&mut self, c: u32, w: &[usize]) {
        let len = w.len();
        let mut f = c;
        let mut i = 0;
        while i < len {
            let next = self.get(f, w[i]);
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == len {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        let mut j = len;
        while j > i {
            let next = self.get(b, w[j - 1] ^ 1);
            if next == UNDEF {
                break;
            }
            b = next;
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincidence(f, b);
            }
        } else if j == i + 1 {
            self.set(f, w[i], b);
            self.set(b, w[i] ^ 1, f);
            self.deductions.push((f, w[i]));
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.cycles[x].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.cycles[x][k]);
                self.scan(c, &w);
                self.cycles[x][k] = w;
            }
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, x);
            if d != UNDEF && self.is_live(d) {
                let xi = x ^ 1;
                for k in 0..self.cycles[xi].len() {
                    if !self.is_live(d) {
                        break;
                    }
                    let w = std::mem::take(&mut self.cycles[xi][k]);
                    self.scan(d, &w);
                    self.cycles[xi][k] = w;
                }
            }
            for k in 0..self.subgroup.len() {
                let w = std::mem::take(&mut self.subgroup[k]);
                self.scan(0, &w);
                self.subgroup[k] = w;
            }
        }
    }

    /// Renumbers live cosets consecutively, preserving their order.
    fn compact(&mut self) {
        let total = self.total();
        let mut map = vec![UNDEF; total];
        let mut next = 0u32;
        for c in 0..total {
            if self.parent[c] == c as u32 {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..total {
            if map[c] == UNDEF {
                continue;
            }
            for x in 0..self.cols {
                let d = self.table[c * self.cols + x];
                table.push(if d == UNDEF { UNDEF } else { map[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.deductions.clear();
        self.scan_from = 0;
    }

    /// Defines a coset at the first empty entry; `None` once complete.
    fn define_next(&mut self) -> Result<Option<()>, Overflow> {
        let total = self.total();
        let mut c = self.scan_from;
        while c < total {
            if self.parent[c] == c as u32 {
                if let Some(x) = (0..self.cols).find(|&x| self.table[c * self.cols + x] == UNDEF) {
                    self.scan_from = c;
                    if self.total() >= self.max_cosets {
                        if self.live < self.total() {
                            self.compact();
                            return Ok(Some(()));
                        }
                        return Err(Overflow { max_cosets: self.max_cosets });
                    }
                    let d = self.new_coset();
                    self.set(c as u32, x, d);
                    self.set(d, x ^ 1, c as u32);
                    self.deductions.push((c as u32, x));
                    return Ok(Some(()));
                }
            }
            c += 1;
        }
        self.scan_from = total;
        Ok(None)
    }

    /// Traces a subgroup generator from coset 0, defining cosets as needed.
    fn trace_subgroup_generator(&mut self, k: usize) -> Result<(), Overflow> {
        let w = self.subgroup[k].clone();
        let mut f = self.rep(0);
        for (i, &x) in w.iter().enumerate() {
            if i + 1 == w.len() {
                break;
            }
            let next = self.get(f, x);
            f = if next == UNDEF {
                if self.total() >= self.max_cosets {
                    return Err(Overflow { max_cosets: self.max_cosets });
                }
                let d = self.new_coset();
                self.set(f, x, d);
                self.set(d, x ^ 1, f);
                self.deductions.push((f, x));
                d
            } else {
                next
            };
            self.process_deductions();
            f = self.rep(f);
        }
        let c = self.rep(0);
        self.scan(c, &w);
        self.process_deductions();
        Ok(())
    }

    fn run(mut self) -> Result<CosetTable, Overflow> {
        for k in 0..self.subgroup.len() {
            self.trace_subgroup_generator(k)?;
        }
        loop {
            self.process_deductions();
            if 2 * self.live < self.total() {
                self.compact();
            }
            if self.define_next()?.is_none() {
                break;
            }
        }
        self.compact();
        Ok(CosetTable { cols: self.cols, table: self.table, defined: self.defined })
    }
}

/// Enumerates the cosets of `<subgroup>` in `g`, giving up once more than
/// `max_cosets` rows are needed. Overflow means "unknown", never "infinite".
pub fn todd_coxeter(
    g: &FpGroup,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, Overflow> {
    Enumerator::new(g, subgroup, max_cosets).run()
}

/// Order of `g` if the enumeration over the trivial subgroup closes.
pub fn group_order(g: &FpGroup, max_cosets: usize) -> Result<usize, Overflow> {
    todd_coxeter(g, &[], max_cosets).map(|t| t.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_word;

    fn group(gens: usize, rels: &[&str]) -> FpGroup {
        FpGroup::new(gens, rels.iter().map(|r| parse_word(r, gens).unwrap()).collect())
    }

    #[test]
    fn cyclic_groups() {
        for k in 1..=12 {
            let g = FpGroup::new(1, vec![Word::power(1, 1, k).unwrap()]);
            assert_eq!(group_order(&g, 1000).unwrap(), k as usize);
        }
    }

    #[test]
    fn symmetric_three() {
        let g = group(2, &["x1^2", "x2^3", "(x1 x2)^2"]);
        assert_eq!(group_order(&g, 1000).unwrap(), 6);
    }

    #[test]
    fn free_group_overflows() {
        assert_eq!(group_order(&FpGroup::free(1), 1000), Err(Overflow { max_cosets: 1000 }));
    }

    #[test]
    fn subgroup_index() {
        // S3 with subgroup <x1> of order 2 has index 3.
        let g = group(2, &["x1^2", "x2^3", "(x1 x2)^2"]);
        let t = todd_coxeter(&g, &[parse_word("x1", 2).unwrap()], 1000).unwrap();
        assert_eq!(t.index(), 3);
        assert_eq!(t.trace(0, &parse_word("x1", 2).unwrap()), 0);
    }

    #[test]
    fn binary_icosahedral_order() {
        // <r, s, t | r^2 = s^3 = t^5 = rst>
        let g = group(3, &["x1^2 (x1 x2 x3)^-1", "x2^3 (x1 x2 x3)^-1", "x3^5 (x1 x2 x3)^-1"]);
        assert_eq!(group_order(&g, 10_000).unwrap(), 120);
    }

    #[test]
    fn trivial_group_collapses() {
        let g = group(2, &["x1 x2 x1^-1 x2^-2", "x2 x1 x2^-1 x1^-2"]);
        assert_eq!(group_order(&g, 10_000).unwrap(), 1);
        assert_eq!(group_order(&FpGroup::new(0, vec![]), 10).unwrap(), 1);
    }

    #[test]
    fn table_is_a_permutation_action() {
        let g = group(2, &["x1^3", "x2^2", "(x1 x2)^5"]);
        let t = todd_coxeter(&g, &[], 10_000).unwrap();
        assert_eq!(t.index(), 60);
        for gen in 1..=2 {
            let mut p = t.generator_permutation(gen);
            p.sort();
            assert_eq!(p, (0..60).collect::<Vec<_>>());
        }
    }

    #[test]
    fn deterministic() {
        let g = group(2, &["x1^3", "x2^2", "(x1 x2)^5"]);
        assert_eq!(todd_coxeter(&g, &[], 10_000), todd_coxeter(&g, &[], 10_000));
    }
}
