//! Homomorphisms from finitely presented groups into finite groups, by
//! backtracking over generator images.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::finite::{Elem, FiniteGroup};
use super::fp::FpGroup;
use crate::word::Word;

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct HomCounts {
    pub total: u64,
    pub nonabelian_image: u64,
    pub surjective: u64,
}

impl std::ops::AddAssign for HomCounts {
    fn add_assign(&mut self, o: Self) {
        self.total += o.total;
        self.nonabelian_image += o.nonabelian_image;
        self.surjective += o.surjective;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
#[error("search exceeded {cap} nodes")]
pub struct BudgetExceeded {
    pub cap: u64,
}

/// Image of a word under the homomorphism sending `x_i` to `images[i-1]`.
pub fn apply_hom(target: &FiniteGroup, images: &[Elem], w: &Word) -> Elem {
    w.syllables()
        .iter()
        .fold(0, |acc, s| target.mul(acc, target.pow(images[s.gen - 1], s.exp)))
}

pub fn is_hom(g: &FpGroup, target: &FiniteGroup, images: &[Elem]) -> bool {
    images.len() == g.generators() && g.relators().iter().all(|r| apply_hom(target, images, r) == 0)
}

/// Search order: generators by depth, and the relators that become fully
/// assigned at each depth.
struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<usize>>,
    relators: Vec<Vec<(usize, i64)>>,
}

impl Plan {
    fn new(g: &FpGroup) -> Self {
        let k = g.generators();
        let relators: Vec<Vec<(usize, i64)>> = g
            .relators()
            .iter()
            .filter(|r| !r.is_identity())
            .map(|r| r.syllables().iter().map(|s| (s.gen - 1, s.exp)).collect())
            .collect();
        let supports: Vec<Vec<bool>> = relators
            .iter()
            .map(|r| {
                let mut v = vec![false; k];
                for &(x, _) in r {
                    v[x] = true;
                }
                v
            })
            .collect();
        let mut assigned = vec![false; k];
        let mut done = vec![false; relators.len()];
        let mut order = Vec::with_capacity(k);
        let mut checks = Vec::with_capacity(k);
        for _ in 0..k {
            // Prefer the generator that completes most relators, then the one
            // touching most relators that already involve assigned generators.
            let next = (0..k)
                .filter(|&x| !assigned[x])
                .max_by_key(|&x| {
                    let completes = (0..relators.len())
                        .filter(|&j| !done[j] && supports[j][x])
                        .filter(|&j| (0..k).all(|y| y == x || assigned[y] || !supports[j][y]))
                        .count();
                    let touching = (0..relators.len())
                        .filter(|&j| supports[j][x] && (0..k).any(|y| assigned[y] && supports[j][y]))
                        .count();
                    let uses = supports.iter().filter(|s| s[x]).count();
                    (completes, touching, uses, std::cmp::Reverse(x))
                })
                .unwrap();
            assigned[next] = true;
            order.push(next);
            let mut now = Vec::new();
            for j in 0..relators.len() {
                if !done[j] && (0..k).all(|y| assigned[y] || !supports[j][y]) {
                    done[j] = true;
                    now.push(j);
                }
            }
            checks.push(now);
        }
        Plan { order, checks, relators }
    }

    fn relator_holds(&self, target: &FiniteGroup, images: &[Elem], j: usize) -> bool {
        self.relators[j]
            .iter()
            .fold(0, |acc, &(x, e)| target.mul(acc, target.pow(images[x], e)))
            == 0
    }
}

struct Search<'a> {
    plan: &'a Plan,
    target: &'a FiniteGroup,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
    cap: u64,
}

impl Search<'_> {
    /// Visits every homomorphism extending `images[order[..depth]]`; `visit`
    /// returns `false` to stop.
    fn walk(&self, images: &mut [Elem], depth: usize, visit: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        if depth == self.plan.order.len() {
            return visit(images);
        }
        let x = self.plan.order[depth];
        for v in 0..self.target.order() as Elem {
            if self.abort.load(Ordering::Relaxed) {
                return false;
            }
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
                self.abort.store(true, Ordering::Relaxed);
                return false;
            }
            if !self.assign(images, depth, x, v, visit) {
                return false;
            }
        }
        true
    }

    fn assign(
        &self,
        images: &mut [Elem],
        depth: usize,
        x: usize,
        v: Elem,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        images[x] = v;
        if self.plan.checks[depth].iter().all(|&j| self.plan.relator_holds(self.target, images, j)) {
            self.walk(images, depth + 1, visit)
        } else {
            true
        }
    }
}

fn classify(target: &FiniteGroup, images: &[Elem], counts: &mut HomCounts) {
    counts.total += 1;
    let nonabelian = images
        .iter()
        .enumerate()
        .any(|(i, &a)| images[i + 1..].iter().any(|&b| !target.commute(a, b)));
    if nonabelian {
        counts.nonabelian_image += 1;
    }
    if target.generated_order(images) == target.order() {
        counts.surjective += 1;
    }
}

/// Counts all homomorphisms `g → target`, splitting the search over the
/// images of the first generator in parallel.
pub fn hom_count(g: &FpGroup, target: &FiniteGroup, node_cap: u64) -> Result<HomCounts, BudgetExceeded> {
    let plan = Plan::new(g);
    let k = g.generators();
    if k == 0 {
        let mut c = HomCounts::default();
        classify(target, &[], &mut c);
        return Ok(c);
    }
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let search = Search { plan: &plan, target, nodes: &nodes, abort: &abort, cap: node_cap };
    let first = plan.order[0];
    let counts = (0..target.order() as Elem)
        .into_par_iter()
        .map(|v| {
            let mut c = HomCounts::default();
            if search.nodes.fetch_add(1, Ordering::Relaxed) >= node_cap {
                search.abort.store(true, Ordering::Relaxed);
                return c;
            }
            let mut images = vec![0; k];
            search.assign(&mut images, 0, first, v, &mut |im| {
                classify(target, im, &mut c);
                true
            });
            c
        })
        .reduce(HomCounts::default, |mut a, b| {
            a += b;
            a
        });
    if abort.load(Ordering::Relaxed) {
        Err(BudgetExceeded { cap: node_cap })
    } else {
        Ok(counts)
    }
}

/// First homomorphism (in search order) whose images satisfy `accept`.
/// The first generator's image ranges over conjugacy class representatives
/// only, which loses no solutions up to conjugation.
pub fn find_hom(
    g: &FpGroup,
    target: &FiniteGroup,
    node_cap: u64,
    accept: &dyn Fn(&[Elem]) -> bool,
) -> Result<Option<Vec<Elem>>, BudgetExceeded> {
    let plan = Plan::new(g);
    let k = g.generators();
    if k == 0 {
        return Ok(accept(&[]).then(Vec::new));
    }
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let search = Search { plan: &plan, target, nodes: &nodes, abort: &abort, cap: node_cap };
    let mut images = vec![0; k];
    let mut found = None;
    for v in target.class_representatives() {
        if nodes.fetch_add(1, Ordering::Relaxed) >= node_cap {
            return Err(BudgetExceeded { cap: node_cap });
        }
        let finished = search.assign(&mut images, 0, plan.order[0], v, &mut |im| {
            if accept(im) {
                found = Some(im.to_vec());
                false
            } else {
                true
            }
        });
        if found.is_some() {
            return Ok(found);
        }
        if !finished {
            return Err(BudgetExceeded { cap: node_cap });
        }
    }
    Ok(None)
}

/// A homomorphism with non-trivial image, if any.
pub fn find_nontrivial_hom(g: &FpGroup, target: &FiniteGroup, node_cap: u64) -> Result<Option<Vec<Elem>>, BudgetExceeded> {
    find_hom(g, target, node_cap, &|im| im.iter().any(|&e| e != 0))
}

pub fn find_surjection(g: &FpGroup, target: &FiniteGroup, node_cap: u64) -> Result<Option<Vec<Elem>>, BudgetExceeded> {
    find_hom(g, target, node_cap, &|im| target.generated_order(im) == target.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_word;

    fn group(k: usize, rels: &[&str]) -> FpGroup {
        FpGroup::new(k, rels.iter().map(|r| parse_word(r, k).unwrap()).collect())
    }

    /// Tries every tuple of images.
    fn exhaustive(g: &FpGroup, t: &FiniteGroup) -> HomCounts {
        let k = g.generators();
        let n = t.order();
        let mut c = HomCounts::default();
        let mut images = vec![0 as Elem; k];
        for code in 0..n.pow(k as u32) {
            let mut c2 = code;
            for im in images.iter_mut() {
                *im = (c2 % n) as Elem;
                c2 /= n;
            }
            if is_hom(g, t, &images) {
                classify(t, &images, &mut c);
            }
        }
        c
    }

    #[test]
    fn trefoil_to_s3() {
        let g = group(2, &["x1 x2 x1 x2^-1 x1^-1 x2^-1"]);
        let c = hom_count(&g, &FiniteGroup::symmetric(3), DEFAULT_NODE_CAP).unwrap();
        // 6 maps through the abelianization (x1 = x2) and 6 surjections.
        assert_eq!(c, HomCounts { total: 12, nonabelian_image: 6, surjective: 6 });
        assert_eq!(c, exhaustive(&g, &FiniteGroup::symmetric(3)));
    }

    #[test]
    fn matches_exhaustive_scan() {
        let gs = [
            group(2, &["x1^2", "x2^3", "(x1 x2)^5"]),
            group(2, &["x1 x2 x1^-1 x2^-2"]),
            group(3, &["(x1, x2)", "x3^2 x1"]),
            group(2, &[]),
        ];
        for g in &gs {
            for t in [FiniteGroup::symmetric(3), FiniteGroup::cyclic(4), FiniteGroup::binary_dihedral(2)] {
                assert_eq!(hom_count(g, &t, DEFAULT_NODE_CAP).unwrap(), exhaustive(g, &t), "{g} -> {}", t.name());
            }
        }
    }

    #[test]
    fn a5_surjections() {
        // The (2,3,5) triangle group is A5; |Aut(A5)| = 120 surjections.
        let g = group(2, &["x1^2", "x2^3", "(x1 x2)^5"]);
        let c = hom_count(&g, &FiniteGroup::alternating(5), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(c.surjective, 120);
        assert_eq!(c.total, 121);
    }

    #[test]
    fn budget_is_reported() {
        let g = FpGroup::free(4);
        assert_eq!(hom_count(&g, &FiniteGroup::sl25(), 1000), Err(BudgetExceeded { cap: 1000 }));
    }

    #[test]
    fn finds_surjection_onto_sl25() {
        // <r,s,t | r^2 = s^3 = t^5 = rst>
        let g = group(3, &["x1^2 (x1 x2 x3)^-1", "x2^3 (x1 x2 x3)^-1", "x3^5 (x1 x2 x3)^-1"]);
        let t = FiniteGroup::sl25();
        let im = find_surjection(&g, &t, DEFAULT_NODE_CAP).unwrap().unwrap();
        assert!(is_hom(&g, &t, &im));
        assert_eq!(t.generated_order(&im), 120);
        assert_eq!(find_nontrivial_hom(&g, &FiniteGroup::symmetric(3), DEFAULT_NODE_CAP).unwrap(), None);
    }

    #[test]
    fn zero_generators() {
        let g = FpGroup::free(0);
        assert_eq!(hom_count(&g, &FiniteGroup::cyclic(3), 10).unwrap().total, 1);
    }
}
