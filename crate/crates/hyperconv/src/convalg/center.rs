//! Graded center of `B~(V)` by the integer commutant condition.
//!
//! A central element is diagonal, `z = Σ_α z_α e_α`, and commutes with every
//! `f_{α,β}`; in canonical form that forces the coefficients of `u^a` at `α`
//! and at `β` to agree whenever `u^a` survives in `R~_{α,β}`. The solution
//! lattice is free on the classes of the resulting identification, computed
//! by union-find over all pairs (no generation assumption needed).

use super::{BElem, BTilde, Monomial};

#[derive(Clone, Debug)]
pub struct CenterPiece {
    /// Single degree of the piece.
    pub degree: usize,
    pub rank: usize,
    /// A basis of the degree piece of the center, in canonical form.
    pub basis: Vec<BElem>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

fn exponents_of_total(n: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
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
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// The degree-`degree` piece of `Z(B~(V))`, with an explicit basis.
/// The basis is re-verified to commute with every `f_{α,β}` exactly.
pub fn center_graded(alg: &BTilde, degree: usize) -> CenterPiece {
    if degree % 2 != 0 {
        return CenterPiece { degree, rank: 0, basis: Vec::new() };
    }
    let pset = alg.pset().to_vec();
    let n = alg.n();
    // Variables: admissible diagonal monomials of this degree.
    let mut vars: Vec<(usize, Vec<usize>)> = Vec::new();
    for (ai, alpha) in pset.iter().enumerate() {
        for expo in exponents_of_total(n, degree / 2) {
            if alg.admissible(alpha, alpha, &expo) {
                vars.push((ai, expo));
            }
        }
    }
    let var_index = |ai: usize, expo: &[usize], vars: &[(usize, Vec<usize>)]| {
        vars.iter().position(|(b, e)| *b == ai && e == expo)
    };
    let mut uf = UnionFind::new(vars.len());
    for (ai, alpha) in pset.iter().enumerate() {
        for (bi, beta) in pset.iter().enumerate() {
            if ai == bi {
                continue;
            }
            for expo in exponents_of_total(n, degree / 2) {
                if alg.admissible(alpha, beta, &expo) {
                    // Admissibility at (α,β) implies it at both diagonals.
                    let va = var_index(ai, &expo, &vars).expect("diagonal var exists");
                    let vb = var_index(bi, &expo, &vars).expect("diagonal var exists");
                    uf.union(va, vb);
                }
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, BElem> = Default::default();
    for (vi, (ai, expo)) in vars.iter().enumerate() {
        let root = uf.find(vi);
        let m = Monomial { src: pset[*ai].clone(), tgt: pset[*ai].clone(), expo: expo.clone() };
        let elem = BElem { terms: [(m, 1i64)].into_iter().collect() };
        classes.entry(root).or_insert_with(BElem::zero).add_assign(&elem);
    }
    let basis: Vec<BElem> = classes.into_values().collect();
    for z in &basis {
        for a in &pset {
            for b in &pset {
                let f = alg.f_generator(a, b);
                assert_eq!(
                    alg.multiply(z, &f),
                    alg.multiply(&f, z),
                    "computed center element fails to commute: library bug"
                );
            }
        }
    }
    CenterPiece { degree, rank: basis.len(), basis }
}

/// Number of monomials `u^a` of single degree `degree` (with `deg u_i = 2`)
/// supported on at most `k` of `n` variables: the graded dimension of
/// `Z[U_1..U_n]/(squarefree (k+1)-fold products)`.
pub fn truncated_polynomial_monomial_count(n: usize, k: usize, degree: usize) -> usize {
    if degree % 2 != 0 {
        return 0;
    }
    exponents_of_total(n, degree / 2)
        .into_iter()
        .filter(|e| e.iter().filter(|&&x| x > 0).count() <= k)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::reference_left;

    fn algebra(n: usize, k: usize) -> BTilde {
        BTilde::new(reference_left(n, k).unwrap()).unwrap()
    }

    #[test]
    fn center_degree_zero_is_the_unit() {
        let alg = algebra(2, 1);
        let piece = center_graded(&alg, 0);
        assert_eq!(piece.rank, 1);
        assert_eq!(piece.basis[0], alg.unit());
    }

    #[test]
    fn center_n2_k1_degrees() {
        let alg = algebra(2, 1);
        assert_eq!(center_graded(&alg, 2).rank, 2); // classes of u_1, u_2
        assert_eq!(center_graded(&alg, 4).rank, 2); // u_1^2, u_2^2; u_1u_2 = 0
        assert_eq!(center_graded(&alg, 1).rank, 0);
        assert_eq!(center_graded(&alg, 3).rank, 0);
    }

    #[test]
    fn center_matches_truncated_polynomial_count() {
        for (n, k) in [(2usize, 1usize), (3, 1), (3, 2)] {
            let alg = algebra(n, k);
            for degree in (0..=6).step_by(2) {
                assert_eq!(
                    center_graded(&alg, degree).rank,
                    truncated_polynomial_monomial_count(n, k, degree),
                    "(n,k)=({n},{k}), degree {degree}"
                );
            }
        }
    }

    #[test]
    fn u_sum_is_central() {
        let alg = algebra(3, 1);
        for i in 0..3 {
            let u = alg.u_generator(i);
            for a in alg.pset().to_vec() {
                for b in alg.pset().to_vec() {
                    let f = alg.f_generator(&a, &b);
                    assert_eq!(alg.multiply(&u, &f), alg.multiply(&f, &u));
                }
            }
        }
    }
}
