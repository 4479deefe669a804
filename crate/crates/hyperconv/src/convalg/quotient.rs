//! Graded dimensions of the finite quotient `B(V)` over the rationals:
//! `R_{α,β} = R~_{α,β} ⊗ Q` modulo the linear forms `c·u` for `c ∈ V`.

use super::BTilde;
use crate::arrangement::sign::SignSeq;
use crate::qlinalg::{Mat, Rat};
use num::Zero;

fn exponents_of_total(n: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0usize; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

// Admissible monomials u^a f_{α,β} of the given single degree.
fn degree_basis(alg: &BTilde, alpha: &SignSeq, beta: &SignSeq, degree: usize) -> Vec<Vec<usize>> {
    let flips = alpha.flips(beta).len();
    if degree < flips || (degree - flips) % 2 != 0 {
        return Vec::new();
    }
    exponents_of_total(alg.n(), (degree - flips) / 2)
        .into_iter()
        .filter(|e| alg.admissible(alpha, beta, e))
        .collect()
}

/// Dimension over `Q` of the degree-`degree` part of
/// `R~_{α,β} ⊗ Q / (c_1 u_1 + ... + c_n u_n : c ∈ V)`,
/// with the ideal generators taken from the columns of `A`.
pub fn finite_quotient_graded_dim(
    alg: &BTilde,
    alpha: &SignSeq,
    beta: &SignSeq,
    degree: usize,
) -> usize {
    let basis = degree_basis(alg, alpha, beta, degree);
    if basis.is_empty() {
        return 0;
    }
    let index = |e: &[usize]| basis.iter().position(|b| b == e);
    let lower = if degree >= 2 { degree_basis(alg, alpha, beta, degree - 2) } else { Vec::new() };
    let a = alg.arrangement().matrix();
    let n = alg.n();
    let k = alg.k();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for e in &lower {
        for j in 0..k {
            // (Σ_i A_ij u_i) · u^e, reduced.
            let mut row = vec![Rat::zero(); basis.len()];
            let mut nonzero = false;
            for i in 0..n {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let mut bumped = e.clone();
                bumped[i] += 1;
                if let Some(idx) = index(&bumped) {
                    row[idx] = &row[idx] + &a[(i, j)];
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return basis.len();
    }
    basis.len() - Mat::from_rows(rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{reference_left, vandermonde_left};
    use crate::convalg::BTilde;
    use crate::qlinalg::rat;

    fn seq(s: &str) -> SignSeq {
        SignSeq::parse(s).unwrap()
    }

    #[test]
    fn n2_k1_diagonal_is_dual_numbers() {
        // R~ = Z[u1,u2]/(u1u2); mod (u1+u2) the quotient is Q[u]/(u^2).
        let pol = vandermonde_left(&rat(0), &[rat(1), rat(2)], 1).unwrap();
        let alg = BTilde::new(pol).unwrap();
        let a = seq("+-");
        assert_eq!(finite_quotient_graded_dim(&alg, &a, &a, 0), 1);
        assert_eq!(finite_quotient_graded_dim(&alg, &a, &a, 2), 1);
        assert_eq!(finite_quotient_graded_dim(&alg, &a, &a, 4), 0);
        assert_eq!(finite_quotient_graded_dim(&alg, &a, &a, 1), 0);
    }

    #[test]
    fn degree_zero_diagonal_is_one() {
        let alg = BTilde::new(reference_left(3, 1).unwrap()).unwrap();
        for a in alg.pset().to_vec() {
            assert_eq!(finite_quotient_graded_dim(&alg, &a, &a, 0), 1);
        }
    }

    #[test]
    fn total_dimension_stabilizes_to_zero() {
        let alg = BTilde::new(reference_left(3, 1).unwrap()).unwrap();
        let ps = alg.pset().to_vec();
        let mut saw_zero_run = 0;
        for degree in 0..=10 {
            let total: usize = ps
                .iter()
                .flat_map(|a| ps.iter().map(move |b| (a, b)))
                .map(|(a, b)| finite_quotient_graded_dim(&alg, a, b, degree))
                .sum();
            if total == 0 {
                saw_zero_run += 1;
            } else {
                assert_eq!(saw_zero_run, 0, "dimension resurged after vanishing");
            }
        }
        assert!(saw_zero_run >= 4, "expected the finite quotient to die out");
    }
}
