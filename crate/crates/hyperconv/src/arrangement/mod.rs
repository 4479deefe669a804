//! Arrangements and polarized arrangements: validation, regions, the
//! feasible/bounded/compact census, cyclicity, Vandermonde fixtures, the
//! dots bijections, and the ξ-induced partial order.

pub mod sign;
mod cyclic;
mod equiv;
mod order;

pub use cyclic::{combinatorial_feasibility, is_cyclic, is_left_cyclic, is_right_cyclic,
                 projection_variation_check, CombVerdicts, CyclicFlavor};
pub use equiv::{equivalent_arrangements, equivalent_polarized, equivalent_strong,
                find_strong_lift, LiftFlavor};
pub use order::{mu_bijection, partial_order, MuBijection, MuEntry, PartialOrder};

use crate::error::{Error, Result};
use crate::lp::{self, LpVerdict, Polyhedron};
use crate::qlinalg::{k_subsets, rat, Mat, Rat};
use num::{One, Zero};
use sign::SignSeq;
use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// An arrangement of `n` co-oriented affine hyperplanes in `k`-space,
/// presented by an `n x k` matrix `A` of full column rank (a basis of the
/// subspace `V`) and a vector `w` representing the affine shift `η`.
///
/// Simplicity is enforced at construction: no `k+1` of the hyperplanes have a
/// common point, which is exactly the condition that every representative of
/// `η` has at least `n-k` nonzero entries.
pub struct Arrangement {
    n: usize,
    k: usize,
    a: Mat,
    w: Vec<Rat>,
    region_cache: Mutex<HashMap<SignSeq, (bool, bool)>>, // (feasible, compact)
}

impl Clone for Arrangement {
    fn clone(&self) -> Self {
        Arrangement {
            n: self.n,
            k: self.k,
            a: self.a.clone(),
            w: self.w.clone(),
            region_cache: Mutex::new(self.region_cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Arrangement")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("a", &self.a)
            .field("w", &self.w)
            .finish()
    }
}

impl Arrangement {
    pub fn new(a: Mat, w: Vec<Rat>) -> Result<Arrangement> {
        let n = a.rows();
        let k = a.cols();
        if w.len() != n {
            return Err(Error::Shape(format!("w has length {}, expected {n}", w.len())));
        }
        if k > n {
            return Err(Error::InvalidArrangement(format!("k = {k} exceeds n = {n}")));
        }
        if a.rank() != k {
            return Err(Error::InvalidArrangement("A is not of full column rank".into()));
        }
        let arr =
            Arrangement { n, k, a, w, region_cache: Mutex::new(HashMap::new()) };
        // Simplicity: every k+1 hyperplanes have empty intersection.
        for s in k_subsets(n, k + 1) {
            let rows = arr.a.select_rows(&s);
            let rhs: Vec<Rat> = s.iter().map(|&i| -arr.w[i].clone()).collect();
            if rows.solve(&rhs).is_some() {
                return Err(Error::InvalidArrangement(format!(
                    "not simple: hyperplanes {s:?} (0-based) have a common point"
                )));
            }
        }
        Ok(arr)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &Mat {
        &self.a
    }

    pub fn shift(&self) -> &[Rat] {
        &self.w
    }

    /// The closed region `Δ_α = { x : α_i (w_i + A_i·x) >= 0 }`.
    pub fn region(&self, alpha: &SignSeq) -> Polyhedron {
        assert_eq!(alpha.len(), self.n, "sign sequence length mismatch");
        let mut p = Polyhedron::new(self.k);
        for i in 0..self.n {
            let s = rat(alpha.get(i).as_i8() as i64);
            let normal: Vec<Rat> = self.a.row(i).into_iter().map(|v| &s * v).collect();
            p.add(normal, &s * &self.w[i]);
        }
        p
    }

    /// `Δ_α ∩ Δ_β ∩ H_S` (β optional, `S` 0-based) as a polyhedron, with
    /// hyperplane memberships encoded as paired inequalities.
    pub fn slice(&self, alpha: &SignSeq, beta: Option<&SignSeq>, s: &BTreeSet<usize>) -> Polyhedron {
        let mut p = self.region(alpha);
        if let Some(b) = beta {
            for (n, d) in self.region(b).ineqs {
                p.add(n, d);
            }
        }
        for &i in s {
            let normal = self.a.row(i);
            let neg: Vec<Rat> = normal.iter().map(|v| -v).collect();
            p.add(normal, self.w[i].clone());
            p.add(neg, -self.w[i].clone());
        }
        p
    }

    fn feasible_compact(&self, alpha: &SignSeq) -> (bool, bool) {
        if let Some(&v) = self.region_cache.lock().unwrap().get(alpha) {
            return v;
        }
        let p = self.region(alpha);
        let feasible = lp::is_nonempty(&p).is_some();
        let compact = feasible && {
            let mut bounded_all = true;
            'dirs: for j in 0..self.k {
                for sgn in [1i64, -1] {
                    let mut e = vec![Rat::zero(); self.k];
                    e[j] = rat(sgn);
                    if matches!(lp::bounded_above(&p, &e), LpVerdict::NonemptyUnbounded { .. }) {
                        bounded_all = false;
                        break 'dirs;
                    }
                }
            }
            bounded_all
        };
        self.region_cache.lock().unwrap().insert(alpha.clone(), (feasible, compact));
        (feasible, compact)
    }

    pub fn is_feasible(&self, alpha: &SignSeq) -> bool {
        self.feasible_compact(alpha).0
    }

    /// Nonempty with trivial recession cone.
    pub fn is_compact(&self, alpha: &SignSeq) -> bool {
        self.feasible_compact(alpha).1
    }

    /// All feasible and compact sign sequences, by exhaustive LP scan.
    pub fn census(&self, cap: usize) -> Result<(BTreeSet<SignSeq>, BTreeSet<SignSeq>)> {
        if self.n > cap {
            return Err(Error::CapExceeded { n: self.n, cap });
        }
        let mut f = BTreeSet::new();
        let mut k = BTreeSet::new();
        for alpha in SignSeq::all(self.n) {
            let (feasible, compact) = self.feasible_compact(&alpha);
            if feasible {
                f.insert(alpha.clone());
            }
            if compact {
                k.insert(alpha);
            }
        }
        Ok((f, k))
    }
}

/// The four region classes of a polarized arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCensus {
    pub feasible: BTreeSet<SignSeq>,
    pub bounded: BTreeSet<SignSeq>,
    pub bounded_feasible: BTreeSet<SignSeq>,
    pub compact: BTreeSet<SignSeq>,
}

/// An arrangement with a linear-programming objective `ξ`, stored as its
/// `1 x k` matrix `x` in the basis given by the columns of `A`.
///
/// Construction enforces the dual simplicity condition (every representative
/// of `ξ` has at least `k` nonzero entries); genericity of `ξ` (unique
/// maximizers) is enforced lazily by [`mu_bijection`].
pub struct PolarizedArrangement {
    base: Arrangement,
    x: Vec<Rat>,
    bounded_cache: Mutex<HashMap<SignSeq, bool>>,
}

impl Clone for PolarizedArrangement {
    fn clone(&self) -> Self {
        PolarizedArrangement {
            base: self.base.clone(),
            x: self.x.clone(),
            bounded_cache: Mutex::new(self.bounded_cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for PolarizedArrangement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PolarizedArrangement")
            .field("base", &self.base)
            .field("x", &self.x)
            .finish()
    }
}

impl PolarizedArrangement {
    pub fn new(base: Arrangement, x: Vec<Rat>) -> Result<PolarizedArrangement> {
        if x.len() != base.k {
            return Err(Error::Shape(format!("ξ matrix has length {}, expected {}", x.len(), base.k)));
        }
        // Dual simplicity: no representative c of ξ (cᵀA = xᵀ) is supported
        // on fewer than k coordinates, i.e. for every (k-1)-subset S the
        // system A_Sᵀ c_S = x must be inconsistent.
        if base.k > 0 {
            for s in k_subsets(base.n, base.k - 1) {
                let at = base.a.select_rows(&s).transpose();
                if at.solve(&x).is_some() {
                    return Err(Error::InvalidArrangement(format!(
                        "ξ has a representative supported on rows {s:?} (0-based)"
                    )));
                }
            }
        }
        Ok(PolarizedArrangement { base, x, bounded_cache: Mutex::new(HashMap::new()) })
    }

    pub fn base(&self) -> &Arrangement {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn k(&self) -> usize {
        self.base.k
    }

    pub fn matrix(&self) -> &Mat {
        &self.base.a
    }

    pub fn shift(&self) -> &[Rat] {
        &self.base.w
    }

    /// Matrix of `ξ` in the columns of `A`.
    pub fn xi(&self) -> &[Rat] {
        &self.x
    }

    pub fn region(&self, alpha: &SignSeq) -> Polyhedron {
        self.base.region(alpha)
    }

    pub fn is_feasible(&self, alpha: &SignSeq) -> bool {
        self.base.is_feasible(alpha)
    }

    pub fn is_compact(&self, alpha: &SignSeq) -> bool {
        self.base.is_compact(alpha)
    }

    /// `ξ` bounded above on `Δ_α`; empty regions are vacuously bounded.
    pub fn is_bounded(&self, alpha: &SignSeq) -> bool {
        if let Some(&v) = self.bounded_cache.lock().unwrap().get(alpha) {
            return v;
        }
        let verdict = !matches!(
            lp::bounded_above(&self.region(alpha), &self.x),
            LpVerdict::NonemptyUnbounded { .. }
        );
        self.bounded_cache.lock().unwrap().insert(alpha.clone(), verdict);
        verdict
    }

    pub fn is_bounded_feasible(&self, alpha: &SignSeq) -> bool {
        self.is_feasible(alpha) && self.is_bounded(alpha)
    }

    /// Exhaustive scan of all `2^n` sign sequences into the four classes.
    pub fn enumerate_sets(&self, cap: usize) -> Result<SetCensus> {
        if self.n() > cap {
            return Err(Error::CapExceeded { n: self.n(), cap });
        }
        let mut census = SetCensus {
            feasible: BTreeSet::new(),
            bounded: BTreeSet::new(),
            bounded_feasible: BTreeSet::new(),
            compact: BTreeSet::new(),
        };
        for alpha in SignSeq::all(self.n()) {
            let f = self.is_feasible(&alpha);
            let b = self.is_bounded(&alpha);
            if f {
                census.feasible.insert(alpha.clone());
            }
            if b {
                census.bounded.insert(alpha.clone());
            }
            if f && b {
                census.bounded_feasible.insert(alpha.clone());
            }
            if self.is_compact(&alpha) {
                census.compact.insert(alpha.clone());
            }
        }
        debug_assert!(census.compact.is_subset(&census.bounded_feasible));
        Ok(census)
    }

    /// The bounded feasible sequences, in lexicographic order.
    pub fn bounded_feasible_set(&self, cap: usize) -> Result<Vec<SignSeq>> {
        Ok(self.enumerate_sets(cap)?.bounded_feasible.into_iter().collect())
    }

    /// The value of `ξ` at a point given in `A`-column coordinates.
    pub fn xi_value(&self, point: &[Rat]) -> Rat {
        self.x.iter().zip(point).map(|(a, b)| a * b).sum()
    }
}

/// A polarized arrangement together with a lift constant `c`, fixing an
/// affine objective on `V + η`.
#[derive(Clone, Debug)]
pub struct StrongPolarizedArrangement {
    pub polarized: PolarizedArrangement,
    pub c: Rat,
}

fn powers(z: &Rat, k: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(k);
    let mut acc = Rat::one();
    for _ in 0..k {
        out.push(acc.clone());
        acc *= z;
    }
    out
}

fn check_increasing(z: &[Rat]) -> Result<()> {
    if z.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("z values must be strictly increasing".into()));
    }
    Ok(())
}

/// The cyclic Vandermonde arrangement on nodes `z_1 < ... < z_n`:
/// `A[i][j] = z_i^j` and `w_i = (-1)^k z_i^k`.
pub fn vandermonde(z: &[Rat], k: usize) -> Result<Arrangement> {
    check_increasing(z)?;
    let n = z.len();
    if k > n {
        return Err(Error::Precondition(format!("k = {k} exceeds n = {n}")));
    }
    let a = Mat::from_rows(z.iter().map(|zi| powers(zi, k)).collect());
    let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
    let w = z
        .iter()
        .map(|zi| {
            let mut p = Rat::one();
            for _ in 0..k {
                p *= zi;
            }
            &sign * p
        })
        .collect();
    Arrangement::new(a, w)
}

/// Left cyclic polarization from an extra node `z_0 < z_1`:
/// `ξ` has matrix `(1, z_0, ..., z_0^{k-1})`.
pub fn vandermonde_left(z0: &Rat, z: &[Rat], k: usize) -> Result<PolarizedArrangement> {
    if let Some(first) = z.first() {
        if z0 >= first {
            return Err(Error::Precondition("need z_0 < z_1".into()));
        }
    }
    PolarizedArrangement::new(vandermonde(z, k)?, powers(z0, k))
}

/// Right cyclic polarization from an extra node `z_{n+1} > z_n`:
/// `ξ` has matrix `(-1)^k (1, z_{n+1}, ..., z_{n+1}^{k-1})`.
pub fn vandermonde_right(z: &[Rat], z_last: &Rat, k: usize) -> Result<PolarizedArrangement> {
    if let Some(last) = z.last() {
        if z_last <= last {
            return Err(Error::Precondition("need z_{n+1} > z_n".into()));
        }
    }
    let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
    let x = powers(z_last, k).into_iter().map(|p| &sign * p).collect();
    PolarizedArrangement::new(vandermonde(z, k)?, x)
}

/// The standard left cyclic fixture: `z_0 = 0`, `z_i = i`.
pub fn reference_left(n: usize, k: usize) -> Result<PolarizedArrangement> {
    let z: Vec<Rat> = (1..=n as i64).map(rat).collect();
    vandermonde_left(&rat(0), &z, k)
}

/// The standard right cyclic fixture: `z_i = i`, `z_{n+1} = n+1`.
pub fn reference_right(n: usize, k: usize) -> Result<PolarizedArrangement> {
    let z: Vec<Rat> = (1..=n as i64).map(rat).collect();
    vandermonde_right(&z, &rat(n as i64 + 1), k)
}

/// Sorted 1-based index subsets `S` with `H_S` a point (bases of the matroid).
pub fn matroid_bases(arr: &Arrangement) -> BTreeSet<BTreeSet<usize>> {
    k_subsets(arr.n, arr.k)
        .into_iter()
        .filter(|s| !arr.a.select_rows(s).det().is_zero())
        .map(|s| s.into_iter().map(|i| i + 1).collect())
        .collect()
}

pub use sign::{Sign as RegionSign, SignSeq as RegionSignSeq};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::ratio;

    fn seq(s: &str) -> SignSeq {
        SignSeq::parse(s).unwrap()
    }

    #[test]
    fn vandermonde_k1_data() {
        let arr = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 1).unwrap();
        assert_eq!(arr.matrix(), &Mat::from_i64(vec![vec![1], vec![1], vec![1], vec![1]]));
        assert_eq!(arr.shift(), &[rat(-1), rat(-2), rat(-3), rat(-4)]);
    }

    #[test]
    fn vandermonde_k2_data() {
        let arr = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 2).unwrap();
        assert_eq!(
            arr.matrix(),
            &Mat::from_i64(vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![1, 4]])
        );
        assert_eq!(arr.shift(), &[rat(1), rat(4), rat(9), rat(16)]);
        let left = vandermonde_left(&rat(0), &[rat(1), rat(2), rat(3), rat(4)], 2).unwrap();
        assert_eq!(left.xi(), &[rat(1), rat(0)]);
        let right = vandermonde_right(&[rat(1), rat(2), rat(3), rat(4)], &rat(5), 2).unwrap();
        assert_eq!(right.xi(), &[rat(1), rat(5)]);
    }

    #[test]
    fn vandermonde_rejects_unsorted() {
        assert!(vandermonde(&[rat(2), rat(1)], 1).is_err());
    }

    #[test]
    fn region_inequalities_match_hand_computation() {
        let arr = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 1).unwrap();
        // α = (+,-,-,-): {x-1>=0, -x+2>=0, -x+3>=0, -x+4>=0}
        let p = arr.region(&seq("+---"));
        assert_eq!(p.ineqs[0], (vec![rat(1)], rat(-1)));
        assert_eq!(p.ineqs[1], (vec![rat(-1)], rat(2)));
        assert_eq!(p.ineqs[2], (vec![rat(-1)], rat(3)));
        assert_eq!(p.ineqs[3], (vec![rat(-1)], rat(4)));
        assert!(arr.is_feasible(&seq("+---")));
        assert!(arr.is_compact(&seq("+---")));
        // α = (-,+,-,-) forces x <= 1 and x >= 2.
        assert!(!arr.is_feasible(&seq("-+--")));
    }

    #[test]
    fn census_n4_k1_left_fixture() {
        let pol = reference_left(4, 1).unwrap();
        let census = pol.enumerate_sets(DEFAULT_ENUMERATION_CAP).unwrap();
        let f: Vec<String> = census.feasible.iter().map(|a| a.to_string()).collect();
        assert_eq!(f, vec!["++++", "+++-", "++--", "+---", "----"]);
        let k: Vec<String> = census.compact.iter().map(|a| a.to_string()).collect();
        assert_eq!(k, vec!["+++-", "++--", "+---"]);
        let p: Vec<String> = census.bounded_feasible.iter().map(|a| a.to_string()).collect();
        assert_eq!(p, vec!["+++-", "++--", "+---", "----"]);
        assert_eq!(census.bounded_feasible.len(), 4);
    }

    #[test]
    fn census_n2_k1() {
        let z = [rat(1), rat(2)];
        let pol = vandermonde_left(&rat(0), &z, 1).unwrap();
        let census = pol.enumerate_sets(DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(census.bounded_feasible.len(), 2);
        assert_eq!(census.compact.len(), 1);
    }

    #[test]
    fn census_n5_k2_left() {
        let pol = reference_left(5, 2).unwrap();
        let census = pol.enumerate_sets(DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(census.bounded_feasible.len(), 10); // C(5,2)
        assert_eq!(census.compact.len(), 6); // C(4,2)
    }

    #[test]
    fn cap_exceeded() {
        let pol = reference_left(4, 1).unwrap();
        assert!(matches!(pol.enumerate_sets(3), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn simplicity_rejected() {
        // Two copies of the same hyperplane meet in a point: not simple for k=1.
        let a = Mat::from_i64(vec![vec![1], vec![1], vec![1]]);
        let w = vec![rat(-1), rat(-1), rat(-2)];
        assert!(Arrangement::new(a, w).is_err());
    }

    #[test]
    fn xi_simplicity_rejected() {
        // k=2, ξ proportional to a single row of A: representative with one
        // nonzero entry exists.
        let arr = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 2).unwrap();
        let bad = PolarizedArrangement::new(arr, vec![rat(1), rat(1)]);
        assert!(bad.is_err());
    }

    #[test]
    fn k0_arrangement_works() {
        let pol = reference_left(3, 0).unwrap();
        let census = pol.enumerate_sets(DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(census.bounded_feasible.len(), 1);
        assert_eq!(census.feasible.len(), 1);
        assert!(census.feasible.contains(&seq("+++")));
        assert_eq!(census.bounded.len(), 8);
    }

    #[test]
    fn strong_arrangement_holds_lift() {
        let pol = reference_left(2, 1).unwrap();
        let s = StrongPolarizedArrangement { polarized: pol, c: ratio(1, 2) };
        assert_eq!(s.c, ratio(1, 2));
    }
}
