//! The convolution algebras of a polarized arrangement: canonical-form
//! arithmetic in `B~(V)`, quiver presentations with integer graded-rank
//! computation, the truncation `B~'`, centers, finite quotients, and the
//! deletion/restriction homomorphisms.

pub mod center;
pub mod homs;
pub mod intmat;
pub mod presentation;
pub mod quotient;

pub use center::{center_graded, CenterPiece};
pub use homs::{composition_check, deletion_restriction_homs, BTildeHom, DelRestHoms, HomStep};
pub use presentation::{
    atilde_presentation, btilde_presentation, Arrow, GradedPiece, PathMonomial,
    QuiverPresentation, Relation,
};
pub use quotient::finite_quotient_graded_dim;

use crate::arrangement::sign::SignSeq;
use crate::arrangement::{PolarizedArrangement, DEFAULT_ENUMERATION_CAP};
use crate::error::Result;
use crate::lp;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Multidegree in `Z<e_1..e_n>`, stored as nonnegative coordinates.
pub type MultiDeg = Vec<usize>;

pub fn multideg_zero(n: usize) -> MultiDeg {
    vec![0; n]
}

pub fn multideg_add(a: &[usize], b: &[usize]) -> MultiDeg {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn multideg_le(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn single_degree(d: &[usize]) -> usize {
    d.iter().sum()
}

/// All multidegrees with total degree at most `bound`.
pub fn multidegrees_up_to(n: usize, bound: usize) -> Vec<MultiDeg> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, left: usize, cur: &mut MultiDeg, out: &mut Vec<MultiDeg>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

/// The minimal subsets `S` (0-based) with `Δ_α ∩ Δ_β ∩ H_S = ∅`; the monomial
/// ideal they generate cuts `Z[u_1..u_n]` down to `R~_{α,β}`.
#[derive(Clone, Debug)]
pub struct VanishingIdeal {
    pub alpha: SignSeq,
    pub beta: SignSeq,
    /// An antichain under inclusion; `{∅}` for the zero ring.
    pub minimal_sets: Vec<BTreeSet<usize>>,
}

/// A canonical-form basis monomial `u^expo f_{src,tgt}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub src: SignSeq,
    pub tgt: SignSeq,
    pub expo: Vec<usize>,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{:?} f[{},{}]", self.expo, self.src, self.tgt)
    }
}

impl Monomial {
    pub fn multidegree(&self) -> MultiDeg {
        (0..self.expo.len())
            .map(|i| 2 * self.expo[i] + usize::from(self.src.get(i) != self.tgt.get(i)))
            .collect()
    }
}

/// An element of `B~(V)` in reduced canonical form: an integer combination of
/// admissible monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BElem {
    pub terms: BTreeMap<Monomial, i64>,
}

impl fmt::Debug for BElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}·{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl BElem {
    pub fn zero() -> BElem {
        BElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, by: i64) -> BElem {
        if by == 0 {
            return BElem::zero();
        }
        BElem { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * by)).collect() }
    }

    pub fn add_assign(&mut self, other: &BElem) {
        for (m, c) in &other.terms {
            let entry = self.terms.entry(m.clone()).or_insert(0);
            *entry += c;
            if *entry == 0 {
                self.terms.remove(m);
            }
        }
    }

    pub fn sub_assign(&mut self, other: &BElem) {
        self.add_assign(&other.scaled(-1));
    }

    /// Nonzero terms must share one multidegree; returns it.
    pub fn multidegree(&self) -> Option<MultiDeg> {
        let mut it = self.terms.keys();
        let first = it.next()?.multidegree();
        debug_assert!(it.all(|m| m.multidegree() == first));
        Some(first)
    }
}

/// The algebra `B~(V)` of a polarized arrangement, with idempotents indexed
/// by the bounded sign sequences (bounded infeasible ones act as zero) and a
/// cached vanishing ideal per pair of sequences.
pub struct BTilde {
    pol: PolarizedArrangement,
    bounded: Vec<SignSeq>,
    pset: Vec<SignSeq>,
    kset: Vec<SignSeq>,
    vanishing: Mutex<HashMap<(SignSeq, SignSeq), Arc<Vec<BTreeSet<usize>>>>>,
}

impl BTilde {
    pub fn new(pol: PolarizedArrangement) -> Result<BTilde> {
        let census = pol.enumerate_sets(DEFAULT_ENUMERATION_CAP)?;
        Ok(BTilde {
            pol,
            bounded: census.bounded.into_iter().collect(),
            pset: census.bounded_feasible.into_iter().collect(),
            kset: census.compact.into_iter().collect(),
            vanishing: Mutex::new(HashMap::new()),
        })
    }

    pub fn arrangement(&self) -> &PolarizedArrangement {
        &self.pol
    }

    pub fn n(&self) -> usize {
        self.pol.n()
    }

    pub fn k(&self) -> usize {
        self.pol.k()
    }

    /// Bounded sequences (the extended idempotent index set), in lex order.
    pub fn bounded(&self) -> &[SignSeq] {
        &self.bounded
    }

    /// Bounded feasible sequences, in lex order.
    pub fn pset(&self) -> &[SignSeq] {
        &self.pset
    }

    /// Compact sequences, in lex order.
    pub fn kset(&self) -> &[SignSeq] {
        &self.kset
    }

    /// Minimal vanishing sets for the pair `(α, β)`, cached. Cardinality-
    /// ascending search with superset pruning; pairs involving an infeasible
    /// sequence come out as `{∅}` (the unit ideal).
    pub fn vanishing_sets(&self, alpha: &SignSeq, beta: &SignSeq) -> Arc<Vec<BTreeSet<usize>>> {
        let key = (alpha.clone(), beta.clone());
        if let Some(v) = self.vanishing.lock().unwrap().get(&key) {
            return Arc::clone(v);
        }
        let n = self.n();
        let mut minimal: Vec<BTreeSet<usize>> = Vec::new();
        let mut minimal_masks: Vec<u64> = Vec::new();
        for size in 0..=n {
            for s in crate::qlinalg::k_subsets(n, size) {
                let mask: u64 = s.iter().fold(0, |m, &i| m | 1 << i);
                if minimal_masks.iter().any(|&mm| mask & mm == mm) {
                    continue; // contains a known vanishing set
                }
                let subset: BTreeSet<usize> = s.into_iter().collect();
                let poly = self.pol.base().slice(alpha, Some(beta), &subset);
                if lp::is_nonempty(&poly).is_none() {
                    minimal.push(subset);
                    minimal_masks.push(mask);
                }
            }
        }
        let arc = Arc::new(minimal);
        self.vanishing.lock().unwrap().insert(key, Arc::clone(&arc));
        arc
    }

    pub fn vanishing_ideal(&self, alpha: &SignSeq, beta: &SignSeq) -> VanishingIdeal {
        VanishingIdeal {
            alpha: alpha.clone(),
            beta: beta.clone(),
            minimal_sets: self.vanishing_sets(alpha, beta).as_ref().clone(),
        }
    }

    /// Whether `u^expo f_{α,β}` survives in `R~_{α,β}`.
    pub fn admissible(&self, alpha: &SignSeq, beta: &SignSeq, expo: &[usize]) -> bool {
        let mins = self.vanishing_sets(alpha, beta);
        !mins.iter().any(|s| s.iter().all(|&i| expo[i] > 0))
    }

    fn reduced(&self, raw: BTreeMap<Monomial, i64>) -> BElem {
        let terms = raw
            .into_iter()
            .filter(|(m, c)| *c != 0 && self.admissible(&m.src, &m.tgt, &m.expo))
            .collect();
        BElem { terms }
    }

    pub fn monomial(&self, src: &SignSeq, tgt: &SignSeq, expo: Vec<usize>) -> BElem {
        let m = Monomial { src: src.clone(), tgt: tgt.clone(), expo };
        self.reduced(BTreeMap::from([(m, 1)]))
    }

    /// `e_α` (zero for bounded infeasible α).
    pub fn idempotent(&self, alpha: &SignSeq) -> BElem {
        self.monomial(alpha, alpha, vec![0; self.n()])
    }

    /// `f_{α,β}`.
    pub fn f_generator(&self, alpha: &SignSeq, beta: &SignSeq) -> BElem {
        self.monomial(alpha, beta, vec![0; self.n()])
    }

    /// The unit `Σ_α e_α`.
    pub fn unit(&self) -> BElem {
        let mut out = BElem::zero();
        for alpha in &self.pset {
            out.add_assign(&self.idempotent(alpha));
        }
        out
    }

    /// `u_i · 1` (0-based `i`).
    pub fn u_generator(&self, i: usize) -> BElem {
        let mut out = BElem::zero();
        for alpha in &self.pset {
            let mut expo = vec![0; self.n()];
            expo[i] = 1;
            out.add_assign(&self.monomial(alpha, alpha, expo));
        }
        out
    }

    /// `f_{α,β} · f_{β,γ} = u_{S(αβγ)} f_{α,γ}` with
    /// `S(αβγ) = {i : α(i) = γ(i) ≠ β(i)}`, extended bilinearly and reduced.
    pub fn multiply(&self, x: &BElem, y: &BElem) -> BElem {
        let mut raw: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                if mx.tgt != my.src {
                    continue;
                }
                let mut expo: Vec<usize> =
                    mx.expo.iter().zip(&my.expo).map(|(a, b)| a + b).collect();
                for i in 0..self.n() {
                    if mx.src.get(i) == my.tgt.get(i) && mx.src.get(i) != mx.tgt.get(i) {
                        expo[i] += 1;
                    }
                }
                let m = Monomial { src: mx.src.clone(), tgt: my.tgt.clone(), expo };
                *raw.entry(m).or_insert(0) += cx * cy;
            }
        }
        self.reduced(raw)
    }

    pub fn product(&self, factors: &[&BElem]) -> BElem {
        match factors.split_first() {
            None => self.unit(),
            Some((first, rest)) => {
                let mut acc = (*first).clone();
                for f in rest {
                    acc = self.multiply(&acc, f);
                }
                acc
            }
        }
    }

    /// The anti-involution `ψ: u^a f_{α,β} -> u^a f_{β,α}`.
    pub fn psi(&self, x: &BElem) -> BElem {
        let raw = x
            .terms
            .iter()
            .map(|(m, c)| {
                (Monomial { src: m.tgt.clone(), tgt: m.src.clone(), expo: m.expo.clone() }, *c)
            })
            .collect();
        self.reduced(raw)
    }

    /// The unique admissible monomial of multidegree `d` in `R~_{α,β}`, if any.
    pub fn monomial_at(&self, alpha: &SignSeq, beta: &SignSeq, d: &[usize]) -> Option<Monomial> {
        let n = self.n();
        assert_eq!(d.len(), n);
        let mut expo = vec![0usize; n];
        for i in 0..n {
            let flip = usize::from(alpha.get(i) != beta.get(i));
            if d[i] < flip || (d[i] - flip) % 2 != 0 {
                return None;
            }
            expo[i] = (d[i] - flip) / 2;
        }
        if self.admissible(alpha, beta, &expo) {
            Some(Monomial { src: alpha.clone(), tgt: beta.clone(), expo })
        } else {
            None
        }
    }

    /// Rank of the multidegree-`d` component of `R~_{α,β}`: one when the
    /// exponent forced by `d` is admissible, zero otherwise.
    pub fn graded_rank(&self, alpha: &SignSeq, beta: &SignSeq, d: &[usize]) -> usize {
        usize::from(self.monomial_at(alpha, beta, d).is_some())
    }
}

/// The idempotent truncation `B~'(V, η)` of `B~(V)` to the compact sequences.
/// Its graded data depends only on the underlying arrangement.
pub struct BTildePrime<'a> {
    pub algebra: &'a BTilde,
}

impl<'a> BTildePrime<'a> {
    pub fn new(algebra: &'a BTilde) -> BTildePrime<'a> {
        BTildePrime { algebra }
    }

    pub fn idempotent_labels(&self) -> &[SignSeq] {
        self.algebra.kset()
    }

    pub fn graded_rank(&self, alpha: &SignSeq, beta: &SignSeq, d: &[usize]) -> usize {
        assert!(
            self.algebra.kset().contains(alpha) && self.algebra.kset().contains(beta),
            "B~' indices must be compact sequences"
        );
        self.algebra.graded_rank(alpha, beta, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::reference_left;

    fn seq(s: &str) -> SignSeq {
        SignSeq::parse(s).unwrap()
    }

    fn algebra(n: usize, k: usize) -> BTilde {
        BTilde::new(reference_left(n, k).unwrap()).unwrap()
    }

    #[test]
    fn vanishing_sets_on_left_fixture() {
        let alg = algebra(4, 1);
        let v = alg.vanishing_ideal(&seq("+---"), &seq("+---"));
        let expect: Vec<BTreeSet<usize>> =
            vec![BTreeSet::from([0, 1]), BTreeSet::from([2]), BTreeSet::from([3])];
        let mut got = v.minimal_sets.clone();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn infeasible_pair_has_unit_ideal() {
        let alg = algebra(4, 1);
        // -+-- is infeasible (bounded): the unit ideal kills everything.
        let v = alg.vanishing_sets(&seq("+---"), &seq("-+--"));
        assert_eq!(v.as_ref(), &vec![BTreeSet::new()]);
        assert!(alg.idempotent(&seq("-+--")).is_zero());
    }

    #[test]
    fn k1_pairs_vanish() {
        // For k=1 any two distinct hyperplanes are distinct points, so every
        // 2-subset lies in the vanishing ideal.
        let alg = algebra(3, 1);
        for a in alg.pset().to_vec() {
            for b in alg.pset().to_vec() {
                let mut expo = vec![0; 3];
                expo[0] = 1;
                expo[1] = 1;
                assert!(!alg.admissible(&a, &b, &expo), "({a},{b})");
            }
        }
    }

    #[test]
    fn multiplication_matches_definition() {
        let alg = algebra(4, 1);
        let f1 = alg.f_generator(&seq("+---"), &seq("++--"));
        let f2 = alg.f_generator(&seq("++--"), &seq("+---"));
        let prod = alg.multiply(&f1, &f2);
        // f·f' = u_2 e_{+---}.
        let mut expo = vec![0; 4];
        expo[1] = 1;
        assert_eq!(prod, alg.monomial(&seq("+---"), &seq("+---"), expo));
    }

    #[test]
    fn idempotent_unit_laws() {
        let alg = algebra(4, 1);
        let f = alg.f_generator(&seq("+---"), &seq("++--"));
        let e = alg.idempotent(&seq("+---"));
        assert_eq!(alg.multiply(&e, &f), f);
        let one = alg.unit();
        assert_eq!(alg.multiply(&one, &f), f);
        assert_eq!(alg.multiply(&f, &one), f);
    }

    #[test]
    fn associativity_on_window() {
        let alg = algebra(3, 1);
        let mut elems: Vec<BElem> = Vec::new();
        for a in alg.pset().to_vec() {
            for b in alg.pset().to_vec() {
                let f = alg.f_generator(&a, &b);
                if !f.is_zero() {
                    elems.push(f);
                }
            }
        }
        for i in 0..alg.n() {
            elems.push(alg.u_generator(i));
        }
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    let left = alg.multiply(&alg.multiply(x, y), z);
                    let right = alg.multiply(x, &alg.multiply(y, z));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn graded_rank_examples() {
        let alg = algebra(4, 1);
        let a = seq("+---");
        let b = seq("++--");
        // d = 2e_1: the monomial u_1.
        assert_eq!(alg.graded_rank(&a, &a, &[2, 0, 0, 0]), 1);
        // d = e_1: parity failure.
        assert_eq!(alg.graded_rank(&a, &a, &[1, 0, 0, 0]), 0);
        // d = e_2 between neighbors: f itself.
        assert_eq!(alg.graded_rank(&a, &b, &[0, 1, 0, 0]), 1);
        // d = 2e_3: u_3 is killed at (+---, +---) since H_3 misses [1,2].
        assert_eq!(alg.graded_rank(&a, &a, &[0, 0, 2, 0]), 0);
    }

    #[test]
    fn psi_is_involutive_antihomomorphism() {
        let alg = algebra(4, 2);
        let ps = alg.pset().to_vec();
        let mut gens: Vec<BElem> = Vec::new();
        for a in &ps {
            for b in &ps {
                if a.flips(b).len() == 1 {
                    gens.push(alg.f_generator(a, b));
                }
            }
        }
        gens.push(alg.u_generator(0));
        for x in &gens {
            assert_eq!(alg.psi(&alg.psi(x)), *x);
            for y in &gens {
                let lhs = alg.psi(&alg.multiply(x, y));
                let rhs = alg.multiply(&alg.psi(y), &alg.psi(x));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn multidegree_additivity_on_products() {
        let alg = algebra(4, 2);
        let ps = alg.pset().to_vec();
        for a in &ps {
            for b in &ps {
                for c in &ps {
                    let f1 = alg.f_generator(a, b);
                    let f2 = alg.f_generator(b, c);
                    let prod = alg.multiply(&f1, &f2);
                    if let (Some(d1), Some(d2), Some(dp)) =
                        (f1.multidegree(), f2.multidegree(), prod.multidegree())
                    {
                        assert_eq!(dp, multideg_add(&d1, &d2));
                    }
                }
            }
        }
    }

    #[test]
    fn btilde_prime_idempotents() {
        let alg = algebra(4, 1);
        let prime = BTildePrime::new(&alg);
        let labels: Vec<String> =
            prime.idempotent_labels().iter().map(|a| a.to_string()).collect();
        assert_eq!(labels, vec!["+++-", "++--", "+---"]);
    }
}
