//! Exact linear programming over the rationals by Fourier–Motzkin
//! elimination: nonemptiness of polyhedra, boundedness of linear functionals,
//! and unique-vertex argmax extraction.
//!
//! Sized for arrangement work (few variables, tens of inequalities), not for
//! large-scale LP.

use crate::error::{Error, Result};
use crate::qlinalg::{sign_of, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Closed polyhedron `{ x : normal·x + offset >= 0 for each inequality }`.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    pub dim: usize,
    pub ineqs: Vec<(Vec<Rat>, Rat)>,
}

impl Polyhedron {
    pub fn new(dim: usize) -> Polyhedron {
        Polyhedron { dim, ineqs: Vec::new() }
    }

    pub fn add(&mut self, normal: Vec<Rat>, offset: Rat) {
        assert_eq!(normal.len(), self.dim);
        self.ineqs.push((normal, offset));
    }

    pub fn eval(&self, i: usize, x: &[Rat]) -> Rat {
        let (n, d) = &self.ineqs[i];
        n.iter().zip(x).map(|(a, b)| a * b).sum::<Rat>() + d
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        (0..self.ineqs.len()).all(|i| !self.eval(i, x).is_negative())
    }

    /// Indices (0-based) of inequalities tight at `x`.
    pub fn active_set(&self, x: &[Rat]) -> BTreeSet<usize> {
        (0..self.ineqs.len()).filter(|&i| self.eval(i, x).is_zero()).collect()
    }

    /// The recession cone `{ r : normal·r >= 0 }` intersected with the box
    /// `|r_i| <= 1`.
    pub fn recession_box(&self) -> Polyhedron {
        let mut p = Polyhedron::new(self.dim);
        for (n, _) in &self.ineqs {
            p.add(n.clone(), Rat::zero());
        }
        for j in 0..self.dim {
            let mut e = vec![Rat::zero(); self.dim];
            e[j] = Rat::one();
            p.add(e.clone(), Rat::one()); // r_j >= -1
            e[j] = -Rat::one();
            p.add(e, Rat::one()); // r_j <= 1
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpVerdict {
    Empty,
    /// Maximum attained; carries the exact optimum and a maximizing point.
    NonemptyBounded { optimum: Rat, witness: Vec<Rat> },
    /// Carries a recession direction `r` with `objective·r > 0` and
    /// `normal·r >= 0` for every inequality.
    NonemptyUnbounded { witness: Vec<Rat>, ray: Vec<Rat> },
}

// One row of a Fourier–Motzkin system: coeffs over all original variables
// (eliminated columns are zero) plus a constant term.
type Row = (Vec<Rat>, Rat);

fn normalize(row: &mut Row) {
    if let Some(lead) = row.0.iter().find(|c| !c.is_zero()) {
        let s = lead.abs();
        for c in row.0.iter_mut() {
            *c = &*c / &s;
        }
        row.1 = &row.1 / &s;
    }
}

// Drop duplicate rows and rows dominated by another row with the same normal
// (same normal, larger offset is weaker).
fn prune(rows: Vec<Row>) -> Vec<Row> {
    let mut best: Vec<Row> = Vec::new();
    'outer: for mut r in rows {
        normalize(&mut r);
        for b in best.iter_mut() {
            if b.0 == r.0 {
                if r.1 < b.1 {
                    b.1 = r.1;
                }
                continue 'outer;
            }
        }
        best.push(r);
    }
    best
}

// Eliminate variable `j`, returning the projected system.
fn eliminate(rows: &[Row], j: usize) -> Vec<Row> {
    let mut lower = Vec::new(); // coeff of x_j > 0
    let mut upper = Vec::new(); // coeff of x_j < 0
    let mut out = Vec::new();
    for r in rows {
        match sign_of(&r.0[j]) {
            0 => out.push(r.clone()),
            1 => lower.push(r.clone()),
            _ => upper.push(r.clone()),
        }
    }
    for lo in &lower {
        for up in &upper {
            let a = &lo.0[j];
            let b = &up.0[j]; // negative
            // a*up - b*lo has zero x_j coefficient; both multipliers positive.
            let coeffs: Vec<Rat> = lo
                .0
                .iter()
                .zip(&up.0)
                .map(|(lc, uc)| a * uc - b * lc)
                .collect();
            let cst = a * &up.1 - b * &lo.1;
            out.push((coeffs, cst));
        }
    }
    prune(out)
}

// Systems after eliminating variables dim-1, dim-2, ..., 0 in turn.
// tower[m] is a system in variables x_0..x_{m-1}; tower[dim] is the input.
fn elimination_tower(p: &Polyhedron) -> Vec<Vec<Row>> {
    let mut tower = vec![prune(p.ineqs.clone())];
    for j in (0..p.dim).rev() {
        let next = eliminate(tower.last().unwrap(), j);
        tower.push(next);
    }
    tower.reverse();
    tower
}

fn constants_consistent(rows: &[Row]) -> bool {
    rows.iter().all(|(c, d)| {
        debug_assert!(c.iter().all(|x| x.is_zero()));
        !d.is_negative()
    })
}

// Extend a witness for levels[m] to levels[m+1] by picking x_m inside its
// feasible interval.
fn extend_witness(rows: &[Row], x: &mut Vec<Rat>) {
    let j = x.len();
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for (c, d) in rows {
        let s = sign_of(&c[j]);
        if s == 0 {
            continue;
        }
        let rest: Rat = c[..j].iter().zip(x.iter()).map(|(a, b)| a * b).sum::<Rat>() + d;
        let bound = -rest / &c[j];
        if s > 0 {
            // x_j >= bound
            if lo.as_ref().is_none_or(|cur| bound > *cur) {
                lo = Some(bound);
            }
        } else if hi.as_ref().is_none_or(|cur| bound < *cur) {
            hi = Some(bound);
        }
    }
    let v = match (lo, hi) {
        (Some(a), Some(b)) => (&a + &b) / Rat::from_integer(2.into()),
        (Some(a), None) => a + Rat::one(),
        (None, Some(b)) => b - Rat::one(),
        (None, None) => Rat::zero(),
    };
    x.push(v);
}

/// Decides `p != ∅` and returns an exact interior-or-boundary witness.
pub fn is_nonempty(p: &Polyhedron) -> Option<Vec<Rat>> {
    let tower = elimination_tower(p);
    if !constants_consistent(&tower[0]) {
        return None;
    }
    let mut x: Vec<Rat> = Vec::with_capacity(p.dim);
    for m in 0..p.dim {
        extend_witness(&tower[m + 1], &mut x);
    }
    debug_assert!(p.contains(&x), "FM witness must satisfy the system");
    Some(x)
}

// Exact max of objective over p, via projection onto t = objective·x.
// Returns None when p is empty, Some(None) when unbounded above,
// Some(Some(m)) otherwise.
fn supremum(p: &Polyhedron, objective: &[Rat]) -> Option<Option<Rat>> {
    assert_eq!(objective.len(), p.dim);
    // Variables (x_0..x_{dim-1}, t) with t = objective·x, eliminating all x.
    let mut rows: Vec<Row> = Vec::with_capacity(p.ineqs.len() + 2);
    for (n, d) in &p.ineqs {
        let mut c = n.clone();
        c.push(Rat::zero());
        rows.push((c, d.clone()));
    }
    let mut eq: Vec<Rat> = objective.to_vec();
    eq.push(-Rat::one()); // objective·x - t >= 0
    rows.push((eq.clone(), Rat::zero()));
    let neg: Vec<Rat> = eq.iter().map(|c| -c).collect(); // t - objective·x >= 0
    rows.push((neg, Rat::zero()));

    let mut cur = prune(rows);
    for j in 0..p.dim {
        cur = eliminate(&cur, j);
    }
    // Rows now constrain t alone (index p.dim).
    let mut upper: Option<Rat> = None;
    for (c, d) in &cur {
        match sign_of(&c[p.dim]) {
            0 => {
                if d.is_negative() {
                    return None; // infeasible
                }
            }
            -1 => {
                // c_t·t + d >= 0 with c_t < 0 gives t <= -d/c_t.
                let b = -(d / &c[p.dim]);
                if upper.as_ref().is_none_or(|cur| b < *cur) {
                    upper = Some(b);
                }
            }
            _ => {} // lower bounds on t do not affect the supremum
        }
    }
    Some(upper)
}

/// Boundedness of `objective` over `p`, with exact optimum or a certified
/// recession direction.
pub fn bounded_above(p: &Polyhedron, objective: &[Rat]) -> LpVerdict {
    let Some(witness) = is_nonempty(p) else {
        return LpVerdict::Empty;
    };
    // Recession-cone test with box normalization |r_i| <= 1: bounded above
    // iff max objective·r over the cone is <= 0.
    let cone = p.recession_box();
    let cone_sup = supremum(&cone, objective)
        .expect("recession box contains 0")
        .expect("recession box is compact");
    if cone_sup.is_positive() {
        let ray = argmax_point(&cone, objective, &cone_sup);
        debug_assert!(cone.contains(&ray));
        debug_assert!(dot(objective, &ray).is_positive());
        return LpVerdict::NonemptyUnbounded { witness, ray };
    }
    let optimum = supremum(p, objective)
        .expect("nonempty established above")
        .expect("recession cone has no improving ray, so the sup is finite");
    let witness = argmax_point(p, objective, &optimum);
    LpVerdict::NonemptyBounded { optimum, witness }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// Some point of the optimal face {x in p : objective·x = value}.
fn argmax_point(p: &Polyhedron, objective: &[Rat], value: &Rat) -> Vec<Rat> {
    let mut face = p.clone();
    face.add(objective.to_vec(), -value.clone());
    face.add(objective.iter().map(|c| -c).collect(), value.clone());
    is_nonempty(&face).expect("optimal face of an attained maximum is nonempty")
}

/// The unique maximizer of `objective` over `p` together with the set of
/// inequalities tight there. Errors when the maximizer is not a single point
/// (a non-generic objective) or when no maximum exists.
pub fn argmax_vertex(p: &Polyhedron, objective: &[Rat]) -> Result<(Vec<Rat>, BTreeSet<usize>)> {
    let LpVerdict::NonemptyBounded { optimum, witness } = bounded_above(p, objective) else {
        return Err(Error::Precondition(
            "argmax_vertex requires a nonempty region with bounded objective".into(),
        ));
    };
    let mut face = p.clone();
    face.add(objective.to_vec(), -optimum.clone());
    face.add(objective.iter().map(|c| -c).collect(), optimum.clone());
    // The face is a point iff every coordinate has equal max and min on it.
    let mut point = Vec::with_capacity(p.dim);
    for j in 0..p.dim {
        let mut e = vec![Rat::zero(); p.dim];
        e[j] = Rat::one();
        let hi = match bounded_above(&face, &e) {
            LpVerdict::NonemptyBounded { optimum, .. } => optimum,
            _ => return Err(Error::DegenerateObjective),
        };
        e[j] = -Rat::one();
        let lo = match bounded_above(&face, &e) {
            LpVerdict::NonemptyBounded { optimum, .. } => -optimum,
            _ => return Err(Error::DegenerateObjective),
        };
        if lo != hi {
            return Err(Error::DegenerateObjective);
        }
        point.push(hi);
    }
    debug_assert_eq!(dot(objective, &point), dot(objective, &witness));
    let active = p.active_set(&point);
    Ok((point, active))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::rat;

    fn interval(lo: i64, hi: i64) -> Polyhedron {
        // { x : x >= lo, x <= hi }
        let mut p = Polyhedron::new(1);
        p.add(vec![rat(1)], rat(-lo));
        p.add(vec![rat(-1)], rat(hi));
        p
    }

    #[test]
    fn nonempty_interval() {
        let mut p = Polyhedron::new(1);
        p.add(vec![rat(1)], rat(-1)); // x >= 1
        p.add(vec![rat(-1)], rat(2)); // x <= 2
        let w = is_nonempty(&p).unwrap();
        assert!(p.contains(&w));
    }

    #[test]
    fn empty_interval() {
        let mut p = Polyhedron::new(1);
        p.add(vec![rat(1)], rat(-2)); // x >= 2
        p.add(vec![rat(-1)], rat(1)); // x <= 1
        assert!(is_nonempty(&p).is_none());
    }

    #[test]
    fn dim_zero_no_constraints() {
        let p = Polyhedron::new(0);
        assert_eq!(is_nonempty(&p), Some(vec![]));
    }

    #[test]
    fn bounded_above_endpoint() {
        let mut p = Polyhedron::new(1);
        p.add(vec![rat(1)], rat(-1)); // x >= 1
        match bounded_above(&p, &[rat(-1)]) {
            LpVerdict::NonemptyBounded { optimum, witness } => {
                assert_eq!(optimum, rat(-1));
                assert_eq!(witness, vec![rat(1)]);
            }
            v => panic!("expected bounded, got {v:?}"),
        }
    }

    #[test]
    fn unbounded_ray() {
        let mut p = Polyhedron::new(1);
        p.add(vec![rat(1)], rat(-1)); // x >= 1
        match bounded_above(&p, &[rat(1)]) {
            LpVerdict::NonemptyUnbounded { ray, .. } => {
                assert!(ray[0].is_positive());
            }
            v => panic!("expected unbounded, got {v:?}"),
        }
    }

    #[test]
    fn empty_verdict() {
        let mut p = Polyhedron::new(1);
        p.add(vec![rat(1)], rat(-2));
        p.add(vec![rat(-1)], rat(1));
        assert_eq!(bounded_above(&p, &[rat(1)]), LpVerdict::Empty);
    }

    #[test]
    fn argmax_interval_right() {
        let p = interval(1, 2);
        let (x, active) = argmax_vertex(&p, &[rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2)]);
        assert_eq!(active, BTreeSet::from([1]));
    }

    #[test]
    fn argmax_interval_left() {
        let p = interval(1, 2);
        let (x, active) = argmax_vertex(&p, &[rat(-1)]).unwrap();
        assert_eq!(x, vec![rat(1)]);
        assert_eq!(active, BTreeSet::from([0]));
    }

    #[test]
    fn argmax_unit_square_corner() {
        let mut p = Polyhedron::new(2);
        p.add(vec![rat(1), rat(0)], rat(0)); // x >= 0
        p.add(vec![rat(-1), rat(0)], rat(1)); // x <= 1
        p.add(vec![rat(0), rat(1)], rat(0)); // y >= 0
        p.add(vec![rat(0), rat(-1)], rat(1)); // y <= 1
        let (x, active) = argmax_vertex(&p, &[rat(1), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        assert_eq!(active.len(), 2);
    }

    #[test]
    fn argmax_degenerate_rejected() {
        let mut p = Polyhedron::new(2);
        p.add(vec![rat(1), rat(0)], rat(0));
        p.add(vec![rat(-1), rat(0)], rat(1));
        p.add(vec![rat(0), rat(1)], rat(0));
        p.add(vec![rat(0), rat(-1)], rat(1));
        // objective constant on the facet x = 1
        match argmax_vertex(&p, &[rat(1), rat(0)]) {
            Err(Error::DegenerateObjective) => {}
            other => panic!("expected degenerate objective, got {other:?}"),
        }
    }

    #[test]
    fn monotone_under_added_constraint() {
        // Adding an inequality never turns bounded into unbounded.
        let mut p = Polyhedron::new(2);
        p.add(vec![rat(1), rat(1)], rat(0));
        p.add(vec![rat(-1), rat(1)], rat(0));
        let obj = [rat(0), rat(-1)];
        assert!(matches!(bounded_above(&p, &obj), LpVerdict::NonemptyBounded { .. }));
        p.add(vec![rat(0), rat(-1)], rat(5));
        assert!(matches!(bounded_above(&p, &obj), LpVerdict::NonemptyBounded { .. }));
    }
}
