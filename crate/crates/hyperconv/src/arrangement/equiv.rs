//! Equivalence of arrangements via projective Plücker sign patterns, and the
//! strong-lift search for polarized cyclicity.

use super::{Arrangement, PolarizedArrangement, StrongPolarizedArrangement};
use crate::error::{Error, Result};
use crate::qlinalg::{k_subsets, plucker, sign_of, Mat, Rat, SignClass};
use num::{One, Zero};

// [[A, w], [0, 1]]: the (n+1) x (k+1) presentation matrix of (V, η).
fn augmented_unpolarized(arr: &Arrangement) -> Mat {
    let top = arr.a.hcat(&Mat::column(arr.w.clone()));
    let mut bottom = vec![Rat::zero(); arr.k];
    bottom.push(Rat::one());
    top.vcat(&Mat::from_rows(vec![bottom]))
}

// [[A, w], [xᵀ, c], [0, 1]]: the (n+2) x (k+1) presentation matrix of a
// strong polarized arrangement.
fn augmented_strong(pol: &PolarizedArrangement, c: &Rat) -> Mat {
    let top = pol.base.a.hcat(&Mat::column(pol.base.w.clone()));
    let mut xi_row = pol.x.clone();
    xi_row.push(c.clone());
    let mut bottom = vec![Rat::zero(); pol.k()];
    bottom.push(Rat::one());
    top.vcat(&Mat::from_rows(vec![xi_row, bottom]))
}

fn check_same_shape(n1: usize, k1: usize, n2: usize, k2: usize) -> Result<()> {
    if (n1, k1) != (n2, k2) {
        return Err(Error::Shape(format!("mismatched shapes ({n1},{k1}) vs ({n2},{k2})")));
    }
    Ok(())
}

/// Equivalence of arrangements: equal projective sign vectors of the Plücker
/// coordinates of `[[A, w], [0, 1]]`.
pub fn equivalent_arrangements(a: &Arrangement, b: &Arrangement) -> Result<bool> {
    check_same_shape(a.n, a.k, b.n, b.k)?;
    let pa = plucker(&augmented_unpolarized(a))?;
    let pb = plucker(&augmented_unpolarized(b))?;
    Ok(pa.same_projective_signs(&pb))
}

/// Equivalence of strong polarized arrangements.
pub fn equivalent_strong(
    a: &StrongPolarizedArrangement,
    b: &StrongPolarizedArrangement,
) -> Result<bool> {
    check_same_shape(a.polarized.n(), a.polarized.k(), b.polarized.n(), b.polarized.k())?;
    let pa = plucker(&augmented_strong(&a.polarized, &a.c))?;
    let pb = plucker(&augmented_strong(&b.polarized, &b.c))?;
    Ok(pa.same_projective_signs(&pb))
}

// Sign pattern of the maximal minors of augmented_strong(pol, c), normalized
// so that the first nonzero sign is +1.
fn pattern_at(pol: &PolarizedArrangement, c: &Rat) -> Vec<i8> {
    let p = plucker(&augmented_strong(pol, c)).expect("augmented matrix is tall");
    let mut v = p.sign_vector();
    if let Some(&lead) = v.iter().find(|&&s| s != 0) {
        if lead < 0 {
            for s in v.iter_mut() {
                *s = -*s;
            }
        }
    }
    v
}

// Each maximal minor of the augmented matrix is affine-linear in the lift
// constant c, so the achievable sign patterns change only at the finitely
// many roots; sampling roots, midpoints, and points beyond the extremes
// realizes every pattern.
fn achievable_patterns(pol: &PolarizedArrangement) -> Vec<Vec<i8>> {
    let m0 = augmented_strong(pol, &Rat::zero());
    let m1 = augmented_strong(pol, &Rat::one());
    let nrows = m0.rows();
    let ncols = m0.cols();
    let mut roots: Vec<Rat> = Vec::new();
    for s in k_subsets(nrows, ncols) {
        let p = m0.select_rows(&s).det();
        let q = m1.select_rows(&s).det() - &p;
        if !q.is_zero() {
            roots.push(-p / q);
        }
    }
    roots.sort();
    roots.dedup();
    let mut samples: Vec<Rat> = Vec::new();
    if roots.is_empty() {
        samples.push(Rat::zero());
    } else {
        samples.push(roots[0].clone() - Rat::one());
        for i in 0..roots.len() {
            samples.push(roots[i].clone());
            if i + 1 < roots.len() {
                samples.push((&roots[i] + &roots[i + 1]) / Rat::from_integer(2.into()));
            }
        }
        samples.push(roots[roots.len() - 1].clone() + Rat::one());
    }
    let mut patterns: Vec<Vec<i8>> = samples.iter().map(|c| pattern_at(pol, c)).collect();
    patterns.sort();
    patterns.dedup();
    patterns
}

/// Equivalence of polarized arrangements: some strong lifts of the two are
/// equivalent. Decided exhaustively — the sign pattern of the lift matrix is
/// a piecewise-constant function of the lift constant with finitely many
/// pieces, all of which are sampled.
pub fn equivalent_polarized(a: &PolarizedArrangement, b: &PolarizedArrangement) -> Result<bool> {
    check_same_shape(a.n(), a.k(), b.n(), b.k())?;
    let pa = achievable_patterns(a);
    let pb = achievable_patterns(b);
    Ok(pa.iter().any(|p| pb.contains(p)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftFlavor {
    Left,
    Right,
}

// The strong-lift positivity matrix with symbolic lift constant c:
// left:  [[xᵀ, c], [A, (-1)^k w], [0, 1]]
// right: [[0, 1], [A, w], [(-1)^k xᵀ, (-1)^k c]]
fn lift_matrix(pol: &PolarizedArrangement, flavor: LiftFlavor, c: &Rat) -> Mat {
    let k = pol.k();
    let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
    match flavor {
        LiftFlavor::Left => {
            let mut xi_row = pol.x.clone();
            xi_row.push(c.clone());
            let w_signed: Vec<Rat> = pol.base.w.iter().map(|v| &sign * v).collect();
            let mid = pol.base.a.hcat(&Mat::column(w_signed));
            let mut bottom = vec![Rat::zero(); k];
            bottom.push(Rat::one());
            Mat::from_rows(vec![xi_row]).vcat(&mid).vcat(&Mat::from_rows(vec![bottom]))
        }
        LiftFlavor::Right => {
            let mut top = vec![Rat::zero(); k];
            top.push(Rat::one());
            let mid = pol.base.a.hcat(&Mat::column(pol.base.w.clone()));
            let mut xi_row: Vec<Rat> = pol.x.iter().map(|v| &sign * v).collect();
            xi_row.push(&sign * c);
            Mat::from_rows(vec![top]).vcat(&mid).vcat(&Mat::from_rows(vec![xi_row]))
        }
    }
}

/// Searches for a lift constant `c` making every maximal minor of the
/// flavor's `(n+2) x (k+1)` positivity matrix strictly one sign. Each minor
/// is affine-linear in `c`, so the constraints intersect to an interval;
/// returns a rational interior point, or `None` when the interval is empty
/// for both target signs.
pub fn find_strong_lift(pol: &PolarizedArrangement, flavor: LiftFlavor) -> Option<Rat> {
    let m0 = lift_matrix(pol, flavor, &Rat::zero());
    let m1 = lift_matrix(pol, flavor, &Rat::one());
    let nrows = m0.rows();
    let ncols = m0.cols();
    let mut affine: Vec<(Rat, Rat)> = Vec::new(); // minor = p + q c
    for s in k_subsets(nrows, ncols) {
        let p = m0.select_rows(&s).det();
        let q = m1.select_rows(&s).det() - &p;
        affine.push((p, q));
    }
    'signs: for sigma in [1i8, -1] {
        let mut lo: Option<Rat> = None; // exclusive
        let mut hi: Option<Rat> = None;
        for (p, q) in &affine {
            if q.is_zero() {
                if sign_of(p) != sigma {
                    continue 'signs;
                }
                continue;
            }
            let root = -(p / q);
            let wants_above = sign_of(q) == sigma;
            if wants_above {
                if lo.as_ref().is_none_or(|cur| root > *cur) {
                    lo = Some(root);
                }
            } else if hi.as_ref().is_none_or(|cur| root < *cur) {
                hi = Some(root);
            }
        }
        let c = match (&lo, &hi) {
            (Some(a), Some(b)) => {
                if a >= b {
                    continue 'signs;
                }
                (a + b) / Rat::from_integer(2.into())
            }
            (Some(a), None) => a + Rat::one(),
            (None, Some(b)) => b - Rat::one(),
            (None, None) => Rat::zero(),
        };
        let check = plucker(&lift_matrix(pol, flavor, &c)).expect("tall matrix");
        assert_eq!(
            check.class(),
            SignClass::PositiveProjective,
            "strong lift re-validation failed: library bug"
        );
        return Some(c);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{
        reference_left, reference_right, vandermonde, vandermonde_left, vandermonde_right,
    };
    use crate::qlinalg::rat;

    #[test]
    fn vandermonde_arrangements_equivalent() {
        let a = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 2).unwrap();
        let b = vandermonde(&[rat(1), rat(3), rat(7), rat(20)], 2).unwrap();
        assert!(equivalent_arrangements(&a, &b).unwrap());
        assert!(equivalent_arrangements(&a, &a).unwrap());
    }

    #[test]
    fn mismatched_shapes_error() {
        let a = vandermonde(&[rat(1), rat(2), rat(3)], 1).unwrap();
        let b = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 1).unwrap();
        assert!(equivalent_arrangements(&a, &b).is_err());
    }

    #[test]
    fn left_and_right_polarizations_differ() {
        let l = reference_left(4, 1).unwrap();
        let r = reference_right(4, 1).unwrap();
        assert!(!equivalent_polarized(&l, &r).unwrap());
        assert!(equivalent_polarized(&l, &l).unwrap());
    }

    #[test]
    fn left_fixtures_with_different_nodes_equivalent() {
        let a = reference_left(4, 2).unwrap();
        let z = [rat(1), rat(3), rat(7), rat(20)];
        let b = vandermonde_left(&rat(-1), &z, 2).unwrap();
        assert!(equivalent_polarized(&a, &b).unwrap());
    }

    #[test]
    fn right_fixtures_with_different_nodes_equivalent() {
        let a = reference_right(4, 2).unwrap();
        let z = [rat(-3), rat(1), rat(2), rat(8)];
        let b = vandermonde_right(&z, &rat(90), 2).unwrap();
        assert!(equivalent_polarized(&a, &b).unwrap());
    }

    #[test]
    fn strong_lift_exists_for_left_fixture() {
        let pol = vandermonde_left(&rat(0), &[rat(1), rat(2)], 1).unwrap();
        assert!(find_strong_lift(&pol, LiftFlavor::Left).is_some());
        // A left fixture is not right cyclic and admits no right lift.
        assert!(find_strong_lift(&pol, LiftFlavor::Right).is_none());
    }

    #[test]
    fn strong_equivalence_reflexive() {
        let pol = reference_left(3, 1).unwrap();
        let c = find_strong_lift(&pol, LiftFlavor::Left).unwrap();
        let s = StrongPolarizedArrangement { polarized: pol, c };
        assert!(equivalent_strong(&s, &s).unwrap());
    }
}
