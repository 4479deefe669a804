//! Gale duality, alt, polarization reversal, deletion, restriction and
//! signed restriction on (polarized) arrangements.
//!
//! Representative choices are normalized by orthogonal projection so that the
//! operations are exact involutions where possible; Gale duality is an
//! involution up to equivalence only, since the perpendicular basis is not
//! canonical.

use crate::arrangement::{Arrangement, PolarizedArrangement};
use crate::error::{Error, Result};
use crate::qlinalg::{orthogonal_complement, Mat, Rat};
use num::Zero;

/// `(V, η, ξ) -> (V^⊥, -ξ, -η)`.
///
/// The new shift representative is minus the representative of `ξ` lying in
/// `V`; the new objective matrix is `-Bᵀw` for the computed perpendicular
/// basis `B`.
pub fn gale_dual(pol: &PolarizedArrangement) -> Result<PolarizedArrangement> {
    let a = pol.matrix();
    let b = orthogonal_complement(a)?;
    // Representative of ξ inside V: c = A y with (AᵀA) y = x.
    let gram = a.transpose().mul(a);
    let y = gram.solve(pol.xi()).expect("Gram matrix invertible for a basis");
    let c = a.mul_vec(&y);
    let w_dual: Vec<Rat> = c.iter().map(|v| -v).collect();
    let x_dual: Vec<Rat> = b
        .transpose()
        .mul_vec(pol.shift())
        .into_iter()
        .map(|v| -v)
        .collect();
    PolarizedArrangement::new(Arrangement::new(b, w_dual)?, x_dual)
}

fn alt_rows(m: &Mat) -> Mat {
    Mat::from_fn(m.rows(), m.cols(), |i, j| {
        if i % 2 == 1 {
            -m[(i, j)].clone()
        } else {
            m[(i, j)].clone()
        }
    })
}

fn alt_vec(v: &[Rat]) -> Vec<Rat> {
    v.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect()
}

/// Negates the even-index coordinates (1-based: rows 2, 4, ...). An exact
/// involution on presentations.
pub fn alt_arrangement(arr: &Arrangement) -> Result<Arrangement> {
    Arrangement::new(alt_rows(arr.matrix()), alt_vec(arr.shift()))
}

/// Alt on a polarized arrangement. The matrix of `alt(ξ)` in the alt basis
/// equals the original matrix, so `x` is unchanged.
pub fn alt_polarized(pol: &PolarizedArrangement) -> Result<PolarizedArrangement> {
    PolarizedArrangement::new(alt_arrangement(pol.base())?, pol.xi().to_vec())
}

/// `p(V, η, ξ) = (V, η, -ξ)`.
pub fn polarization_reverse(pol: &PolarizedArrangement) -> Result<PolarizedArrangement> {
    PolarizedArrangement::new(pol.base().clone(), pol.xi().iter().map(|v| -v).collect())
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::Precondition(format!("hyperplane index {i} out of 1..={n}")));
    }
    Ok(())
}

/// Deletion of the `i`-th hyperplane (1-based): drop row `i` of `A` and entry
/// `i` of `w`. Defined only when `V` does not contain the `i`-th coordinate
/// axis.
pub fn delete_arrangement(arr: &Arrangement, i: usize) -> Result<Arrangement> {
    check_index(arr.n(), i)?;
    let mut e = vec![Rat::zero(); arr.n()];
    e[i - 1] = Rat::from_integer(1.into());
    if arr.matrix().solve(&e).is_some() {
        return Err(Error::Precondition(format!(
            "deletion undefined: V contains coordinate axis {i}"
        )));
    }
    let a = arr.matrix().delete_row(i - 1);
    let mut w = arr.shift().to_vec();
    w.remove(i - 1);
    Arrangement::new(a, w)
}

/// Polarized deletion: the matrix of `ξ_i` in the surviving columns is
/// unchanged.
pub fn delete(pol: &PolarizedArrangement, i: usize) -> Result<PolarizedArrangement> {
    PolarizedArrangement::new(delete_arrangement(pol.base(), i)?, pol.xi().to_vec())
}

// Shared restriction core: A' = (A·T) minus row i, w' = (w + A·t0) minus
// entry i, where T spans the kernel of the i-th row functional and t0 moves
// the shift onto the hyperplane.
fn restrict_data(arr: &Arrangement, i: usize) -> Result<(Mat, Vec<Rat>, Mat)> {
    check_index(arr.n(), i)?;
    let row = Mat::from_rows(vec![arr.matrix().row(i - 1)]);
    if row.rank() == 0 {
        return Err(Error::Precondition(format!(
            "restriction undefined: V lies in coordinate hyperplane {i}"
        )));
    }
    let t = row.kernel(); // k x (k-1)
    let t0 = row.solve(&[-arr.shift()[i - 1].clone()]).expect("row functional is onto");
    let a_new_full = arr.matrix().mul(&t);
    let shift_move = arr.matrix().mul_vec(&t0);
    let w_full: Vec<Rat> =
        arr.shift().iter().zip(&shift_move).map(|(w, m)| w + m).collect();
    debug_assert!(w_full[i - 1].is_zero());
    let a = a_new_full.delete_row(i - 1);
    let mut w = w_full;
    w.remove(i - 1);
    Ok((a, w, t))
}

/// Restriction to the `i`-th hyperplane (1-based): intersect `V` with the
/// coordinate hyperplane, giving `n-1` hyperplanes in `(k-1)`-space.
pub fn restrict_arrangement(arr: &Arrangement, i: usize) -> Result<Arrangement> {
    let (a, w, _) = restrict_data(arr, i)?;
    Arrangement::new(a, w)
}

/// Polarized restriction: `ξ^i = ξ|_{V^i}`, with matrix `xᵀT` in the new
/// basis `A·T`.
pub fn restrict(pol: &PolarizedArrangement, i: usize) -> Result<PolarizedArrangement> {
    let (a, w, t) = restrict_data(pol.base(), i)?;
    let x_new: Vec<Rat> = (0..t.cols())
        .map(|j| pol.xi().iter().zip(t.col(j)).map(|(x, tc)| x * tc).sum())
        .collect();
    PolarizedArrangement::new(Arrangement::new(a, w)?, x_new)
}

fn sign_flip_tail(m: &Mat, w: &[Rat], i: usize) -> (Mat, Vec<Rat>) {
    // Diagonal automorphism with entry 1 for 1-based j < i and -1 for j >= i.
    let a = Mat::from_fn(m.rows(), m.cols(), |r, c| {
        if r + 1 >= i {
            -m[(r, c)].clone()
        } else {
            m[(r, c)].clone()
        }
    });
    let w = w
        .iter()
        .enumerate()
        .map(|(r, v)| if r + 1 >= i { -v } else { v.clone() })
        .collect();
    (a, w)
}

/// Signed restriction: restriction post-composed with the sign-change
/// automorphism negating coordinates `j >= i`. Preserves left/right
/// cyclicity where the plain restriction does not.
pub fn signed_restrict_arrangement(arr: &Arrangement, i: usize) -> Result<Arrangement> {
    let (a, w, _) = restrict_data(arr, i)?;
    let (a, w) = sign_flip_tail(&a, &w, i);
    Arrangement::new(a, w)
}

/// Polarized signed restriction. The matrix of the twisted `ξ` in the
/// twisted basis equals the untwisted matrix.
pub fn signed_restrict(pol: &PolarizedArrangement, i: usize) -> Result<PolarizedArrangement> {
    let r = restrict(pol, i)?;
    let (a, w) = sign_flip_tail(r.matrix(), r.shift(), i);
    PolarizedArrangement::new(Arrangement::new(a, w)?, r.xi().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{
        equivalent_arrangements, equivalent_polarized, is_left_cyclic, is_right_cyclic,
        reference_left, reference_right, sign::SignSeq, vandermonde, DEFAULT_ENUMERATION_CAP,
    };
    use crate::qlinalg::rat;

    #[test]
    fn gale_dual_is_involution_up_to_equivalence() {
        let pol = reference_left(4, 1).unwrap();
        let dd = gale_dual(&gale_dual(&pol).unwrap()).unwrap();
        assert!(equivalent_polarized(&pol, &dd).unwrap());
    }

    #[test]
    fn gale_swaps_feasible_and_bounded() {
        let pol = reference_left(4, 1).unwrap();
        let dual = gale_dual(&pol).unwrap();
        for alpha in SignSeq::all(4) {
            assert_eq!(pol.is_feasible(&alpha), dual.is_bounded(&alpha), "{alpha}");
            assert_eq!(pol.is_bounded(&alpha), dual.is_feasible(&alpha), "{alpha}");
        }
    }

    #[test]
    fn gale_preserves_bounded_feasible() {
        let pol = reference_left(4, 2).unwrap();
        let dual = gale_dual(&pol).unwrap();
        let p1 = pol.enumerate_sets(DEFAULT_ENUMERATION_CAP).unwrap().bounded_feasible;
        let p2 = dual.enumerate_sets(DEFAULT_ENUMERATION_CAP).unwrap().bounded_feasible;
        assert_eq!(p1, p2);
    }

    #[test]
    fn alt_is_exact_involution() {
        let pol = reference_left(4, 2).unwrap();
        let twice = alt_polarized(&alt_polarized(&pol).unwrap()).unwrap();
        assert_eq!(twice.matrix(), pol.matrix());
        assert_eq!(twice.shift(), pol.shift());
        assert_eq!(twice.xi(), pol.xi());
        assert_eq!(
            alt_vec(&[rat(1), rat(1), rat(1), rat(1)]),
            vec![rat(1), rat(-1), rat(1), rat(-1)]
        );
    }

    #[test]
    fn polarization_reverse_is_exact_involution() {
        let pol = reference_right(4, 2).unwrap();
        let twice = polarization_reverse(&polarization_reverse(&pol).unwrap()).unwrap();
        assert_eq!(twice.xi(), pol.xi());
    }

    #[test]
    fn alt_gale_theorem_small() {
        // Right cyclic iff the polarization reversal of the alt Gale dual is
        // left cyclic.
        for (n, k) in [(3usize, 1usize), (4, 1), (4, 2), (4, 3)] {
            let pol = reference_right(n, k).unwrap();
            let tr =
                polarization_reverse(&alt_polarized(&gale_dual(&pol).unwrap()).unwrap()).unwrap();
            assert!(is_right_cyclic(&pol), "(n,k)=({n},{k})");
            assert!(is_left_cyclic(&tr), "(n,k)=({n},{k})");
            // A left cyclic input fails the transformed test.
            let pol_l = reference_left(n, k).unwrap();
            let tr_l =
                polarization_reverse(&alt_polarized(&gale_dual(&pol_l).unwrap()).unwrap()).unwrap();
            assert!(!is_left_cyclic(&tr_l), "(n,k)=({n},{k})");
        }
    }

    #[test]
    fn deletion_matches_smaller_vandermonde() {
        let arr = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 1).unwrap();
        let del = delete_arrangement(&arr, 2).unwrap();
        let expect = vandermonde(&[rat(1), rat(3), rat(4)], 1).unwrap();
        assert!(equivalent_arrangements(&del, &expect).unwrap());
    }

    #[test]
    fn gale_exchanges_deletion_and_restriction() {
        let pol = reference_left(4, 2).unwrap();
        for i in 1..=4 {
            let lhs = gale_dual(&restrict(&pol, i).unwrap()).unwrap();
            let rhs = delete(&gale_dual(&pol).unwrap(), i).unwrap();
            assert!(equivalent_polarized(&lhs, &rhs).unwrap(), "i = {i}");
        }
    }

    #[test]
    fn deletion_preserves_cyclicity() {
        let pol = reference_left(5, 2).unwrap();
        for i in 1..=5 {
            assert!(is_left_cyclic(&delete(&pol, i).unwrap()), "i = {i}");
        }
        let pol = reference_right(5, 2).unwrap();
        for i in 1..=5 {
            assert!(is_right_cyclic(&delete(&pol, i).unwrap()), "i = {i}");
        }
    }

    #[test]
    fn signed_restriction_preserves_cyclicity() {
        let pol = reference_left(4, 2).unwrap();
        let r = signed_restrict(&pol, 1).unwrap();
        assert_eq!((r.n(), r.k()), (3, 1));
        assert!(is_left_cyclic(&r));
        for i in 2..=4 {
            assert!(is_left_cyclic(&signed_restrict(&pol, i).unwrap()), "i = {i}");
        }
        let pol = reference_right(4, 2).unwrap();
        for i in 1..=4 {
            assert!(is_right_cyclic(&signed_restrict(&pol, i).unwrap()), "i = {i}");
        }
    }

    #[test]
    fn deletion_of_contained_axis_rejected() {
        // V = span(e1) in R^2 contains the first coordinate axis.
        let a = Mat::from_i64(vec![vec![1], vec![0]]);
        let arr = Arrangement::new(a, vec![rat(1), rat(2)]).unwrap();
        assert!(delete_arrangement(&arr, 1).is_err());
        // Restriction at the second hyperplane is undefined (row is zero).
        assert!(restrict_arrangement(&arr, 2).is_err());
    }
}
