//! Integral symmetric forms: classification, the Donaldson obstruction, and
//! the search for non-trivial representations of `π(r)`.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::artin::{abelianization_matrix, ArtinError, ArtinPresentation};
use crate::braid::BraidWord;
use crate::group::homs::{apply_hom, find_nontrivial_hom, BudgetExceeded};
use crate::group::{pi, su2_targets, tietze_simplify_with_map, Elem, FiniteGroup};
use crate::matrix::{IntMatrix, IntSymMatrix};
use crate::scalar::IntScalar;
use crate::word::Word;

/// Largest rank for which `±I`-equivalence is decided.
pub const RANK_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Definiteness {
    PosDef,
    NegDef,
    Indefinite,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagonalizable {
    Yes,
    No,
    /// Definite unimodular of rank above [`RANK_CAP`].
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormReport {
    pub rank: usize,
    pub det: String,
    pub unimodular: bool,
    pub definiteness: Definiteness,
    /// Counts of positive, negative and zero eigenvalues.
    pub inertia: (usize, usize, usize),
    pub parity: Parity,
    pub diagonalizable_to_identity: Diagonalizable,
}

fn to_big<T: IntScalar>(m: &IntSymMatrix<T>) -> Vec<Vec<BigInt>> {
    m.matrix().to_rows().iter().map(|r| r.iter().map(T::to_big).collect()).collect()
}

/// Inertia `(positive, negative, zero)` by symmetric rational elimination.
/// A zero pivot with a nonzero off-diagonal entry in its row is fixed by the
/// congruence `e_i ← e_i ± e_j`.
pub fn inertia<T: IntScalar>(m: &IntSymMatrix<T>) -> (usize, usize, usize) {
    let n = m.dim();
    let mut a: Vec<Vec<BigRational>> =
        to_big(m).into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let piv = match active.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let Some((i, j)) = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero())
                else {
                    break;
                };
                // e_i ← e_i + e_j turns a_ii into 2 a_ij.
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let _ = first;
        let p = a[piv][piv].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != piv);
        for &i in &active {
            let f = a[i][piv].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for &k in &active {
                let v = f.clone() * a[piv][k].clone();
                a[i][k] -= v;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

pub fn classify<T: IntScalar>(m: &IntSymMatrix<T>) -> FormReport {
    let n = m.dim();
    let det = m.determinant();
    let unimodular = det.abs().is_one();
    let (pos, neg, zero) = inertia(m);
    let definiteness = if zero > 0 {
        Definiteness::Degenerate
    } else if neg == 0 {
        Definiteness::PosDef
    } else if pos == 0 {
        Definiteness::NegDef
    } else {
        Definiteness::Indefinite
    };
    let parity = if (0..n).all(|i| m.matrix()[(i, i)].is_even()) { Parity::Even } else { Parity::Odd };
    let diagonalizable_to_identity = match definiteness {
        Definiteness::PosDef | Definiteness::NegDef if unimodular => {
            if n > RANK_CAP {
                Diagonalizable::Unknown
            } else {
                let g = if definiteness == Definiteness::NegDef { m.negate() } else { m.clone() };
                if orthonormal_frame(&g).len() == n { Diagonalizable::Yes } else { Diagonalizable::No }
            }
        }
        _ => Diagonalizable::No,
    };
    FormReport {
        rank: n,
        det: det.to_string(),
        unimodular,
        definiteness,
        inertia: (pos, neg, zero),
        parity,
        diagonalizable_to_identity,
    }
}

/// All `x ≠ 0` with `xᵀ G x = 1`, one of each `±` pair (first nonzero entry
/// positive), for positive definite `G`. Fincke-Pohst enumeration with exact
/// rational bounds.
pub fn unit_vectors<T: IntScalar>(g: &IntSymMatrix<T>) -> Vec<Vec<i64>> {
    let n = g.dim();
    let gb = to_big(g);
    // q[i][i] are the Cholesky pivots, q[i][j] (j > i) the multipliers.
    let mut q: Vec<Vec<BigRational>> =
        gb.iter().map(|r| r.iter().cloned().map(BigRational::from_integer).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = q[i][j].clone() / q[i][i].clone();
        }
        for k in i + 1..n {
            for l in k..n {
                let v = q[k][i].clone() * q[i][l].clone();
                q[k][l] -= v;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    if n > 0 {
        fincke_pohst(&q, &gb, n - 1, BigRational::one(), &mut x, &mut out);
    }
    out
}

fn fincke_pohst(
    q: &[Vec<BigRational>],
    g: &[Vec<BigInt>],
    i: usize,
    remaining: BigRational,
    x: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) {
    let n = x.len();
    let center: BigRational = -(i + 1..n).fold(BigRational::zero(), |acc, j| acc + q[i][j].clone() * BigRational::from_integer(x[j].into()));
    let fits = |v: i64| {
        let d = BigRational::from_integer(v.into()) - center.clone();
        q[i][i].clone() * d.clone() * d <= remaining
    };
    let start = center.round().to_integer().to_i64().expect("small coordinates");
    let mut candidates = Vec::new();
    let mut v = start;
    while fits(v) {
        candidates.push(v);
        v += 1;
    }
    let mut v = start - 1;
    while fits(v) {
        candidates.push(v);
        v -= 1;
    }
    candidates.sort_unstable();
    for v in candidates {
        x[i] = v;
        let d = BigRational::from_integer(v.into()) - center.clone();
        let rest = remaining.clone() - q[i][i].clone() * d.clone() * d;
        if i == 0 {
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            let first_positive = x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
            if first_positive && norm(g, x) == BigInt::one() {
                out.push(x.to_vec());
            }
        } else {
            fincke_pohst(q, g, i - 1, rest, x, out);
        }
    }
    x[i] = 0;
}

fn norm(g: &[Vec<BigInt>], x: &[i64]) -> BigInt {
    inner(g, x, x)
}

fn inner(g: &[Vec<BigInt>], x: &[i64], y: &[i64]) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        for j in 0..y.len() {
            s += &g[i][j] * BigInt::from(x[i]) * BigInt::from(y[j]);
        }
    }
    s
}

/// A maximal set of mutually orthogonal unit vectors, chosen greedily. For a
/// definite unimodular form `I_k ⊕ L` (with `L` free of unit vectors) this
/// has exactly `k` elements.
pub fn orthonormal_frame<T: IntScalar>(g: &IntSymMatrix<T>) -> Vec<Vec<i64>> {
    let gb = to_big(g);
    let mut frame: Vec<Vec<i64>> = Vec::new();
    for v in unit_vectors(g) {
        if frame.iter().all(|w| inner(&gb, &v, w).is_zero()) {
            frame.push(v);
        }
    }
    frame
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    Obstructed,
    NotObstructed,
    /// Rank above the cap.
    Unknown,
}

/// Unimodular, definite, and not `±I`: no closed smooth simply-connected
/// 4-manifold has this intersection form.
pub fn donaldson_obstructed<T: IntScalar>(m: &IntSymMatrix<T>) -> Obstruction {
    let r = classify(m);
    let definite = matches!(r.definiteness, Definiteness::PosDef | Definiteness::NegDef);
    if !(r.unimodular && definite) {
        return Obstruction::NotObstructed;
    }
    match r.diagonalizable_to_identity {
        Diagonalizable::No => Obstruction::Obstructed,
        Diagonalizable::Yes => Obstruction::NotObstructed,
        Diagonalizable::Unknown => Obstruction::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetAttempt {
    pub target: String,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Witness {
    /// A homomorphism `π(r) → target` with non-trivial image; `images[i]`
    /// is the element index of the image of `x_{i+1}`, `orders[i]` its order.
    NontrivialityCertified { target: String, images: Vec<Elem>, orders: Vec<usize> },
    NotObstructed,
    /// The form is obstructed (or undecided) but no finite subgroup of SU(2)
    /// in the list received a non-trivial map within budget. Representations
    /// into SU(2) need not have finite image, so this says nothing against
    /// the theorem.
    Inconclusive { reason: String, attempts: Vec<TargetAttempt> },
}

/// Searches for a non-trivial representation of `π(r)` into the finite
/// subgroups of SU(2), in a fixed order, once `A(r)` is obstructed.
pub fn theorem_witness(r: &ArtinPresentation, budget: u64) -> Result<Witness, ArtinError> {
    let a = abelianization_matrix(r)?;
    let reason = match donaldson_obstructed(&a) {
        Obstruction::NotObstructed => return Ok(Witness::NotObstructed),
        Obstruction::Obstructed => "finite-subgroup search exhausted",
        Obstruction::Unknown => "form rank above cap; finite-subgroup search exhausted",
    };
    let g = pi(r);
    let s = tietze_simplify_with_map(&g, crate::group::triality::TIETZE_ROUNDS);
    let targets = su2_targets();
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<Result<Option<Vec<Elem>>, BudgetExceeded>> = targets
        .par_iter()
        .enumerate()
        .map(|(k, t)| {
            if best.load(Ordering::Relaxed) < k {
                return Ok(None);
            }
            let found = find_nontrivial_hom(&s.group, t, budget)?;
            if found.is_some() {
                best.fetch_min(k, Ordering::Relaxed);
            }
            Ok(found)
        })
        .collect();
    let mut attempts = Vec::new();
    for (t, res) in targets.iter().zip(results) {
        match res {
            Ok(Some(im)) => {
                let images: Vec<Elem> = s.images.iter().map(|w| apply_hom(t, &im, w)).collect();
                debug_assert!(g.relators().iter().all(|w| apply_hom(t, &images, w) == 0));
                let orders = images.iter().map(|&e| t.element_order(e)).collect();
                return Ok(Witness::NontrivialityCertified { target: t.name().to_string(), images, orders });
            }
            Ok(None) => attempts.push(TargetAttempt { target: t.name().into(), outcome: "no non-trivial homomorphism".into() }),
            Err(e) => attempts.push(TargetAttempt { target: t.name().into(), outcome: e.to_string() }),
        }
    }
    Ok(Witness::Inconclusive { reason: reason.into(), attempts })
}

/// Checks a claimed witness against every relator of `π(r)`.
pub fn verify_witness(r: &ArtinPresentation, target: &FiniteGroup, images: &[Elem]) -> bool {
    images.len() == r.n()
        && images.iter().any(|&e| e != 0)
        && r.relators().iter().all(|w| apply_hom(target, images, w) == 0)
}

/// An Artin presentation with `A(r) = m`: a product of pure braid generators
/// `A_ij^{-m_ij}` fixes the off-diagonal entries, then the prefix framings
/// are shifted until the diagonal matches.
pub fn realize_form(m: &IntSymMatrix<i64>) -> Result<ArtinPresentation, ArtinError> {
    let n = m.dim();
    assert!(n >= 1, "realize_form needs n >= 1");
    let mut b = BraidWord::identity(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let k = m.matrix()[(i - 1, j - 1)];
            if k != 0 {
                b = b.then(&BraidWord::pure_generator(n, i, j)?.pow(-k));
            }
        }
    }
    let zero = vec![0; n];
    let r0 = ArtinPresentation::from_braid(&b, &zero)?;
    let a0 = abelianization_matrix(&r0)?;
    let framings: Vec<i64> = (0..n).map(|i| m.matrix()[(i, i)] - a0.matrix()[(i, i)]).collect();
    let r = ArtinPresentation::from_braid(&b, &framings)?;
    let got = abelianization_matrix(&r)?;
    assert_eq!(&got, m, "linking numbers of A_ij are additive");
    Ok(r)
}

/// Relators of the trivial group whose exponent-sum matrix (rows: relators)
/// is the unimodular `m`. Built from `<x_i | x_i>` by Andrews-Curtis moves
/// (inverting, swapping, and multiplying by conjugates of other relators),
/// which preserve triviality.
pub fn trivial_group_with_exponents(m: &IntSymMatrix<i64>) -> Vec<Word> {
    let n = m.dim();
    let mut a = m.matrix().to_rows();
    assert!(m.determinant().abs() == 1, "needs a unimodular matrix");
    enum Op {
        Add(usize, usize, i64),
        Swap(usize, usize),
        Negate(usize),
    }
    let mut ops = Vec::new();
    for c in 0..n {
        loop {
            let nonzero: Vec<usize> = (c..n).filter(|&i| a[i][c] != 0).collect();
            let p = *nonzero.iter().min_by_key(|&&i| a[i][c].abs()).expect("unimodular");
            if p != c {
                a.swap(p, c);
                ops.push(Op::Swap(p, c));
            }
            let mut done = true;
            for i in c + 1..n {
                let k = a[i][c] / a[c][c];
                if k != 0 {
                    for j in 0..n {
                        a[i][j] -= k * a[c][j];
                    }
                    ops.push(Op::Add(i, c, -k));
                }
                if a[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[c][c] < 0 {
            a[c].iter_mut().for_each(|v| *v = -*v);
            ops.push(Op::Negate(c));
        }
    }
    for c in (0..n).rev() {
        for i in 0..c {
            let k = a[i][c];
            if k != 0 {
                for j in 0..n {
                    a[i][j] -= k * a[c][j];
                }
                ops.push(Op::Add(i, c, -k));
            }
        }
    }
    debug_assert!((0..n).all(|i| (0..n).all(|j| a[i][j] == i64::from(i == j))));
    let mut rel: Vec<Word> = (1..=n).map(|i| Word::generator(n, i).unwrap()).collect();
    for op in ops.iter().rev() {
        match *op {
            Op::Add(i, j, k) => {
                let conj = Word::generator(n, (j + 1) % n + 1).unwrap();
                let piece = rel[j].conjugated_by(&conj).pow(-k);
                rel[i] = &rel[i] * &piece;
            }
            Op::Swap(i, j) => rel.swap(i, j),
            Op::Negate(i) => rel[i] = rel[i].inverse(),
        }
    }
    rel
}

/// Integer matrix as `IntMatrix<T>` rows, for tests and the CLI.
pub fn sym_from_rows<T: IntScalar>(rows: &[Vec<i64>]) -> Option<IntSymMatrix<T>> {
    IntSymMatrix::new(IntMatrix::from_i64_rows(rows).ok()?).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::exponent_matrix;
    use crate::group::{group_order, FpGroup};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = IntSymMatrix<i64>;

    #[test]
    fn classification_examples() {
        let r = classify(&M::identity(8));
        assert!(r.unimodular);
        assert_eq!((r.definiteness, r.parity, r.diagonalizable_to_identity), (Definiteness::PosDef, Parity::Odd, Diagonalizable::Yes));
        let r = classify(&M::e8());
        assert!(r.unimodular);
        assert_eq!((r.definiteness, r.parity, r.diagonalizable_to_identity), (Definiteness::PosDef, Parity::Even, Diagonalizable::No));
        let r = classify(&M::diagonal(&[1, -1]));
        assert!(r.unimodular);
        assert_eq!(r.definiteness, Definiteness::Indefinite);
        assert_eq!(classify(&M::zeros(3)).definiteness, Definiteness::Degenerate);
        assert_eq!(classify(&M::e8().negate()).definiteness, Definiteness::NegDef);
        let h = M::from_i64_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(inertia(&h), (1, 1, 0));
    }

    #[test]
    fn e8_has_no_unit_vectors() {
        assert!(unit_vectors(&M::e8()).is_empty());
        assert_eq!(unit_vectors(&M::identity(5)).len(), 5);
        let mixed = M::e8().direct_sum(&M::identity(3));
        assert_eq!(unit_vectors(&mixed).len(), 3);
        assert_eq!(classify(&mixed).diagonalizable_to_identity, Diagonalizable::No);
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(donaldson_obstructed(&M::e8()), Obstruction::Obstructed);
        assert_eq!(donaldson_obstructed(&M::e8().negate()), Obstruction::Obstructed);
        for n in 1..=12 {
            assert_eq!(donaldson_obstructed(&M::identity(n)), Obstruction::NotObstructed);
        }
        assert_eq!(donaldson_obstructed(&M::zeros(2)), Obstruction::NotObstructed);
        assert_eq!(donaldson_obstructed(&M::identity(13)), Obstruction::Unknown);
    }

    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix<i64> {
        let mut u = IntMatrix::<i64>::identity(n);
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                u.add_col_multiple(i, j, &rng.gen_range(-1..=1));
            }
        }
        if rng.gen_bool(0.5) {
            u.negate_col(0);
        }
        u
    }

    #[test]
    fn congruence_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let base = if rng.gen_bool(0.5) { M::e8() } else { M::identity(rng.gen_range(1..=8)) };
            let u = random_unimodular(&mut rng, base.dim());
            let c = base.congruent(&u);
            assert_eq!(donaldson_obstructed(&c), donaldson_obstructed(&base));
            assert_eq!(classify(&c).diagonalizable_to_identity, classify(&base).diagonalizable_to_identity);
        }
    }

    /// Sylvester's criterion on leading principal minors.
    fn positive_definite_by_minors(m: &M) -> bool {
        (1..=m.dim()).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            m.matrix().select(&idx, &idx).determinant().unwrap() > 0
        })
    }

    #[test]
    fn definiteness_matches_minor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i..n {
                    let v = if i == j { rng.gen_range(-1..=6) } else { rng.gen_range(-2..=2) };
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            let m = M::from_i64_rows(&rows).unwrap();
            let r = classify(&m);
            assert_eq!(r.definiteness == Definiteness::PosDef, positive_definite_by_minors(&m), "{rows:?}");
            assert_eq!(r.definiteness == Definiteness::NegDef, positive_definite_by_minors(&m.negate()), "{rows:?}");
            assert_eq!(r.definiteness == Definiteness::Degenerate, m.determinant() == 0, "{rows:?}");
        }
    }

    #[test]
    fn e8_realization() {
        let r = realize_form(&M::e8()).unwrap();
        assert!(ArtinPresentation::validate(8, r.relators().to_vec()).is_ok());
        assert_eq!(abelianization_matrix(&r).unwrap(), M::e8());
        assert!(crate::group::is_perfect(&pi(&r)));
    }

    #[test]
    fn realization_of_small_forms() {
        for rows in [vec![vec![1, 2], vec![2, -3]], vec![vec![0, -1, 1], vec![-1, 4, 0], vec![1, 0, 2]]] {
            let m = M::from_i64_rows(&rows).unwrap();
            assert_eq!(abelianization_matrix(&realize_form(&m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn non_artin_trivial_group_with_e8_exponents() {
        let w = trivial_group_with_exponents(&M::e8());
        assert_eq!(exponent_matrix(&w, 8), M::e8().into_matrix());
        assert!(ArtinPresentation::validate(8, w.clone()).is_err());
        let g = FpGroup::new(8, w);
        let s = crate::group::tietze_simplify(&g, 64);
        assert_eq!(group_order(&s, 200_000).unwrap(), 1);
    }

    #[test]
    fn e8_group_is_binary_icosahedral() {
        let r = realize_form(&M::e8()).unwrap();
        assert!(matches!(crate::group::triality_check(&r, 200_000), crate::group::Triality::I120 { .. }));
        match theorem_witness(&r, 10_000_000).unwrap() {
            Witness::NontrivialityCertified { target, images, .. } => {
                assert_eq!(target, "SL(2,5)");
                assert!(verify_witness(&r, &FiniteGroup::sl25(), &images));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_form_is_not_obstructed() {
        let r = ArtinPresentation::diagonal(&[1, 1, 1]);
        assert_eq!(theorem_witness(&r, 1_000_000).unwrap(), Witness::NotObstructed);
    }
}
