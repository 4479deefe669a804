//! The bijection from bounded feasible regions to matroid bases via ξ-argmax
//! vertices, and the induced partial order.

use super::sign::SignSeq;
use super::{matroid_bases, PolarizedArrangement, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::lp;
use crate::qlinalg::Rat;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct MuEntry {
    /// 1-based indices of the hyperplanes meeting at the maximizer.
    pub basis: BTreeSet<usize>,
    /// The vertex `H_𝕩` in `A`-column coordinates.
    pub vertex: Vec<Rat>,
    /// `ξ(H_𝕩)` (up to the shared lift constant).
    pub value: Rat,
}

/// The bijection `μ: P -> B` computed region by region.
#[derive(Clone, Debug)]
pub struct MuBijection {
    pub entries: BTreeMap<SignSeq, MuEntry>,
}

/// For each bounded feasible `α`, maximize `ξ` over `Δ_α`; the tight
/// hyperplanes form the basis `𝕩_α`. Errors on degenerate objectives and
/// verifies that the assignment is a bijection onto the matroid bases.
pub fn mu_bijection(pol: &PolarizedArrangement) -> Result<MuBijection> {
    let k = pol.k();
    let mut entries = BTreeMap::new();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for alpha in pol.bounded_feasible_set(DEFAULT_ENUMERATION_CAP)? {
        let (vertex, active0) = lp::argmax_vertex(&pol.region(&alpha), pol.xi())?;
        let basis: BTreeSet<usize> = active0.into_iter().map(|i| i + 1).collect();
        if basis.len() != k {
            return Err(Error::DegenerateObjective);
        }
        if !seen.insert(basis.clone()) {
            return Err(Error::Precondition(format!(
                "μ is not injective: basis {basis:?} repeats at {alpha}"
            )));
        }
        let value = pol.xi_value(&vertex);
        entries.insert(alpha, MuEntry { basis, vertex, value });
    }
    let bases = matroid_bases(pol.base());
    if seen != bases {
        return Err(Error::Precondition(
            "μ image does not equal the set of matroid bases".into(),
        ));
    }
    Ok(MuBijection { entries })
}

/// The ξ-induced partial order on `P ≅ B`: transitive closure of
/// `𝕩 < 𝕩'` for `|𝕩 ∩ 𝕩'| = k-1` and `ξ(H_𝕩) < ξ(H_𝕩')`.
#[derive(Clone, Debug)]
pub struct PartialOrder {
    /// Strict covering pairs `(smaller, larger)`.
    pub covers: BTreeSet<(SignSeq, SignSeq)>,
    /// Strict pairs of the full transitive closure.
    pub less: BTreeSet<(SignSeq, SignSeq)>,
}

impl PartialOrder {
    pub fn lt(&self, a: &SignSeq, b: &SignSeq) -> bool {
        self.less.contains(&(a.clone(), b.clone()))
    }
}

pub fn partial_order(pol: &PolarizedArrangement) -> Result<PartialOrder> {
    let mu = mu_bijection(pol)?;
    let items: Vec<(&SignSeq, &MuEntry)> = mu.entries.iter().collect();
    let k = pol.k();
    let m = items.len();
    let mut adj = vec![vec![false; m]; m];
    let mut covers = BTreeSet::new();
    for i in 0..m {
        for j in i + 1..m {
            let (ai, ei) = items[i];
            let (aj, ej) = items[j];
            if k == 0 || ei.basis.intersection(&ej.basis).count() != k - 1 {
                continue;
            }
            if ei.value == ej.value {
                return Err(Error::Precondition(format!(
                    "ξ takes equal values at adjacent vertices {:?} and {:?}",
                    ei.basis, ej.basis
                )));
            }
            if ei.value < ej.value {
                adj[i][j] = true;
                covers.insert((ai.clone(), aj.clone()));
            } else {
                adj[j][i] = true;
                covers.insert((aj.clone(), ai.clone()));
            }
        }
    }
    // Warshall closure.
    for via in 0..m {
        for a in 0..m {
            if adj[a][via] {
                for b in 0..m {
                    if adj[via][b] {
                        adj[a][b] = true;
                    }
                }
            }
        }
    }
    let mut less = BTreeSet::new();
    for (i, (ai, _)) in items.iter().enumerate() {
        for (j, (aj, _)) in items.iter().enumerate() {
            if adj[i][j] {
                less.insert(((*ai).clone(), (*aj).clone()));
            }
        }
    }
    Ok(PartialOrder { covers, less })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::sign::{kappa_l, kappa_r};
    use crate::arrangement::{reference_left, reference_right};
    use crate::qlinalg::rat;

    fn seq(s: &str) -> SignSeq {
        SignSeq::parse(s).unwrap()
    }

    #[test]
    fn mu_on_left_fixture_n4_k1() {
        let pol = reference_left(4, 1).unwrap();
        let mu = mu_bijection(&pol).unwrap();
        // α = ----: max of x on (-∞,1] is at x = 1, hyperplane 1 active.
        let e = &mu.entries[&seq("----")];
        assert_eq!(e.basis, BTreeSet::from([1]));
        assert_eq!(e.vertex, vec![rat(1)]);
        // α = +---: max of x on [1,2] at x = 2.
        let e = &mu.entries[&seq("+---")];
        assert_eq!(e.basis, BTreeSet::from([2]));
        assert_eq!(e.vertex, vec![rat(2)]);
    }

    #[test]
    fn mu_satisfies_shift_by_one_on_left_fixture() {
        for (n, k) in [(4usize, 1usize), (4, 2), (5, 2)] {
            let pol = reference_left(n, k).unwrap();
            let mu = mu_bijection(&pol).unwrap();
            for (alpha, e) in &mu.entries {
                let dots = kappa_l(alpha, k).unwrap();
                let shifted: BTreeSet<usize> = dots.iter().map(|i| i + 1).collect();
                assert_eq!(e.basis, shifted, "α = {alpha}");
            }
        }
    }

    #[test]
    fn mu_equals_dots_on_right_fixture() {
        for (n, k) in [(4usize, 1usize), (4, 2)] {
            let pol = reference_right(n, k).unwrap();
            let mu = mu_bijection(&pol).unwrap();
            for (alpha, e) in &mu.entries {
                let dots = kappa_r(alpha, k).unwrap();
                assert_eq!(e.basis, dots, "α = {alpha}");
            }
        }
    }

    #[test]
    fn order_is_lexicographic_chain_for_k1() {
        let pol = reference_left(4, 1).unwrap();
        let order = partial_order(&pol).unwrap();
        let chain = ["----", "+---", "++--", "+++-"];
        for i in 0..chain.len() {
            for j in i + 1..chain.len() {
                assert!(order.lt(&seq(chain[i]), &seq(chain[j])));
            }
        }
        assert!(!order.lt(&seq("+---"), &seq("----")));
    }
}
