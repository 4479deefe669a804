//! Cyclicity tests and the var-based combinatorial region classification.

use super::sign::{self, Sign, SignSeq};
use super::{Arrangement, PolarizedArrangement};
use crate::error::{Error, Result};
use crate::qlinalg::{plucker, project_off_colspan, Mat, Rat, SignClass};
use num::{One, Signed, Zero};

fn is_positive_grassmannian(m: &Mat) -> bool {
    plucker(m).map(|p| p.class() == SignClass::PositiveProjective).unwrap_or(false)
}

// [A | w] spans V + <η>.
fn span_with_eta(arr: &Arrangement) -> Mat {
    arr.a.hcat(&Mat::column(arr.w.clone()))
}

fn eta_positively_oriented(arr: &Arrangement) -> bool {
    let u = project_off_colspan(&arr.a, &arr.w);
    u.first().map(|c| c.is_positive()).unwrap_or(false)
}

/// Cyclicity of `(V, η)`, computed by two routes that must agree:
/// the three-condition definition (`V` and `V+<η>` totally positive, `η`
/// positively oriented), and the single Plücker-positivity test on the
/// `(n+1) x (k+1)` matrix `[[1, 0], [w, A]]`.
pub fn is_cyclic(arr: &Arrangement) -> bool {
    let by_definition = is_positive_grassmannian(&arr.a)
        && is_positive_grassmannian(&span_with_eta(arr))
        && eta_positively_oriented(arr);

    // (φ, id)(V + <η>) = colspan [[1, 0], [w, A]].
    let top: Vec<Rat> = std::iter::once(Rat::one())
        .chain(std::iter::repeat_with(Rat::zero).take(arr.k))
        .collect();
    let bottom = Mat::column(arr.w.clone()).hcat(&arr.a);
    let m = Mat::from_rows(vec![top]).vcat(&bottom);
    let by_plucker = is_positive_grassmannian(&m);

    assert_eq!(
        by_definition, by_plucker,
        "cyclicity tests disagree: library bug (arrangement {arr:?})"
    );
    by_definition
}

// (ξ, id)(V): ξ-row on top of A.
fn xi_then_id(pol: &PolarizedArrangement) -> Mat {
    Mat::from_rows(vec![pol.x.clone()]).vcat(&pol.base.a)
}

// (id, (-1)^k ξ)(V): A with (-1)^k ξ-row at the bottom.
fn id_then_signed_xi(pol: &PolarizedArrangement) -> Mat {
    let sign = if pol.k() % 2 == 0 { Rat::one() } else { -Rat::one() };
    let bottom: Vec<Rat> = pol.x.iter().map(|v| &sign * v).collect();
    pol.base.a.vcat(&Mat::from_rows(vec![bottom]))
}

/// Left cyclicity: `V + <η>` totally positive, `(ξ, id)(V)` totally positive,
/// and `η` positively oriented. Cross-validated against the strong-lift
/// criterion on every call.
pub fn is_left_cyclic(pol: &PolarizedArrangement) -> bool {
    let verdict = is_positive_grassmannian(&span_with_eta(&pol.base))
        && is_positive_grassmannian(&xi_then_id(pol))
        && eta_positively_oriented(&pol.base);
    let lift = super::equiv::find_strong_lift(pol, super::equiv::LiftFlavor::Left);
    assert_eq!(
        verdict,
        lift.is_some(),
        "left cyclicity and strong-lift existence disagree: library bug"
    );
    verdict
}

/// Right cyclicity: `V + <η>` totally positive, `(id, (-1)^k ξ)(V)` totally
/// positive, and `η` positively oriented.
pub fn is_right_cyclic(pol: &PolarizedArrangement) -> bool {
    let verdict = is_positive_grassmannian(&span_with_eta(&pol.base))
        && is_positive_grassmannian(&id_then_signed_xi(pol))
        && eta_positively_oriented(&pol.base);
    let lift = super::equiv::find_strong_lift(pol, super::equiv::LiftFlavor::Right);
    assert_eq!(
        verdict,
        lift.is_some(),
        "right cyclicity and strong-lift existence disagree: library bug"
    );
    verdict
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyclicFlavor {
    Cyclic,
    LeftCyclic,
    RightCyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CombVerdicts {
    pub feasible: bool,
    /// `None` for the unpolarized flavor, where boundedness is undefined.
    pub bounded: Option<bool>,
    pub compact: bool,
}

/// Classifies `Δ_α` for a cyclic / left cyclic / right cyclic arrangement by
/// sign variation alone:
/// compact iff `var(α) = k` and `α` starts with `+`; feasible iff
/// `var_l(α) <= k` (left) resp. `var_r(α) <= k` (right); bounded iff the
/// reverse inequality holds.
pub fn combinatorial_feasibility(flavor: CyclicFlavor, k: usize, alpha: &SignSeq) -> CombVerdicts {
    let v = sign::var(&alpha.as_i8());
    let compact = v == k && alpha.get(0) == Sign::Plus;
    match flavor {
        CyclicFlavor::Cyclic => {
            let feasible = v < k || compact;
            CombVerdicts { feasible, bounded: None, compact }
        }
        CyclicFlavor::LeftCyclic => {
            let vl = sign::var_l(alpha);
            CombVerdicts { feasible: vl <= k, bounded: Some(vl >= k), compact }
        }
        CyclicFlavor::RightCyclic => {
            let vr = sign::var_r(alpha, k);
            CombVerdicts { feasible: vr <= k, bounded: Some(vr >= k), compact }
        }
    }
}

/// For `V` and `V + <η>` totally positive, the projection
/// `u = proj_{V^⊥}(η)` must satisfy `var(u) = var̄(u) = k`.
pub fn projection_variation_check(arr: &Arrangement) -> Result<bool> {
    if !is_positive_grassmannian(&arr.a) || !is_positive_grassmannian(&span_with_eta(arr)) {
        return Err(Error::Precondition("requires V and V+<η> totally positive".into()));
    }
    let u = project_off_colspan(&arr.a, &arr.w);
    let s = sign::signs_of(&u);
    Ok(sign::var(&s) == arr.k && sign::var_bar(&s) == arr.k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{reference_left, reference_right, vandermonde, vandermonde_left};
    use crate::qlinalg::rat;

    fn seq(s: &str) -> SignSeq {
        SignSeq::parse(s).unwrap()
    }

    #[test]
    fn vandermonde_is_cyclic() {
        let arr = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 1).unwrap();
        assert!(is_cyclic(&arr));
        let arr2 = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 2).unwrap();
        assert!(is_cyclic(&arr2));
    }

    #[test]
    fn negated_eta_is_not_cyclic() {
        let arr = vandermonde(&[rat(1), rat(2), rat(3), rat(4)], 1).unwrap();
        let w: Vec<Rat> = arr.shift().iter().map(|v| -v).collect();
        let flipped = Arrangement::new(arr.matrix().clone(), w).unwrap();
        assert!(!is_cyclic(&flipped));
    }

    #[test]
    fn non_positive_v_is_not_cyclic() {
        let a = Mat::from_i64(vec![vec![1, 0], vec![0, 1], vec![-1, 0]]);
        let w = vec![rat(1), rat(2), rat(4)];
        if let Ok(arr) = Arrangement::new(a, w) {
            assert!(!is_cyclic(&arr));
        }
    }

    #[test]
    fn left_right_fixtures() {
        assert!(is_left_cyclic(&reference_left(4, 1).unwrap()));
        assert!(is_right_cyclic(&reference_right(4, 1).unwrap()));
        assert!(is_left_cyclic(&reference_left(4, 2).unwrap()));
        assert!(is_right_cyclic(&reference_right(4, 2).unwrap()));
        // Mismatched polarizations fail the matching test.
        assert!(!is_right_cyclic(&reference_left(4, 2).unwrap()));
    }

    #[test]
    fn negated_xi_is_not_left_cyclic() {
        let pol = reference_left(4, 1).unwrap();
        let neg = PolarizedArrangement::new(
            pol.base().clone(),
            pol.xi().iter().map(|v| -v).collect(),
        )
        .unwrap();
        assert!(!is_left_cyclic(&neg));
    }

    #[test]
    fn combinatorial_k1_examples() {
        let v = combinatorial_feasibility(CyclicFlavor::Cyclic, 1, &seq("+---"));
        assert!(v.feasible && v.compact);
        let v = combinatorial_feasibility(CyclicFlavor::LeftCyclic, 1, &seq("----"));
        assert_eq!((v.feasible, v.bounded, v.compact), (true, Some(true), false));
        let v = combinatorial_feasibility(CyclicFlavor::LeftCyclic, 1, &seq("-+--"));
        assert!(!v.feasible);
    }

    #[test]
    fn combinatorial_agrees_with_lp_small() {
        for (n, k) in [(3usize, 1usize), (4, 2)] {
            let pol = reference_left(n, k).unwrap();
            for alpha in SignSeq::all(n) {
                let c = combinatorial_feasibility(CyclicFlavor::LeftCyclic, k, &alpha);
                assert_eq!(c.feasible, pol.is_feasible(&alpha), "{alpha}");
                assert_eq!(c.bounded, Some(pol.is_bounded(&alpha)), "{alpha}");
                assert_eq!(c.compact, pol.is_compact(&alpha), "{alpha}");
            }
        }
    }

    #[test]
    fn projection_variation_on_fixtures() {
        for (n, k) in [(4usize, 1usize), (4, 2), (3, 1)] {
            let z: Vec<Rat> = (1..=n as i64).map(rat).collect();
            let arr = vandermonde(&z, k).unwrap();
            assert!(projection_variation_check(&arr).unwrap(), "(n,k)=({n},{k})");
        }
    }

    #[test]
    fn left_fixture_with_shifted_z0_still_left_cyclic() {
        let z = [rat(1), rat(3), rat(7), rat(20)];
        let pol = vandermonde_left(&rat(-2), &z, 2).unwrap();
        assert!(is_left_cyclic(&pol));
    }
}
