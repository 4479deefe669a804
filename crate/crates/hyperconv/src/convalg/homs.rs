//! The deletion/restriction algebra homomorphisms and their composition
//! identities.
//!
//! All six maps are realized on canonical forms of `B~` algebras, with
//! `A~(X)` handled as `B~(X^∨)`. Each handle records its generator-level
//! formula as a [`HomStep`], the induced map of multigrading groups, and
//! whether the single grading survives; well-definedness is verified by
//! mapping every defining relation of the domain presentation to a
//! canonical-form zero in the codomain (or, for the idempotent-truncated
//! variants, by the ideal-mapping and multiplicativity checks).

use super::presentation::btilde_presentation;
use super::{BElem, BTilde, Monomial};
use crate::arrangement::sign::{Sign, SignSeq};
use crate::arrangement::PolarizedArrangement;
use crate::dualities;
use crate::error::{Error, Result};
use std::sync::Arc;

/// Generator-level formula of an elementary homomorphism between `B~`
/// algebras (1-based hyperplane index `i`).
#[derive(Clone, Debug)]
pub enum HomStep {
    /// `e_α -> e_{ι_{i,s}(α)}`, `u_j -> u_j (j<i), u_{j+1} (j>=i)`:
    /// the deletion homomorphism `B~(V_i) -> B~(V)`.
    InsertSign { i: usize, s: Sign },
    /// `e_α -> e_{ρ_{i,s}(α)}` when `α_i = s` (else zero), with `u_i`
    /// sent to 0 (`rest`) or 1 (`rest'`), other indices shifted down.
    RemoveSign { i: usize, s: Sign, u_i_to_one: bool },
    /// `e_α -> e_{-α}`, `u_j -> u_j`: the sign-change isomorphism between
    /// the algebras of a restriction and its signed restriction at i = 1.
    NegateSigns,
}

pub struct BTildeHom {
    pub name: String,
    pub domain: Arc<BTilde>,
    pub codomain: Arc<BTilde>,
    pub step: HomStep,
    /// Image of each domain grading generator `e_j` (0-based), `None` = killed.
    pub grading_map: Vec<Option<usize>>,
    pub single_grading_preserved: bool,
    /// `Some((i, s))` when the domain is the truncation `B~^s` at hyperplane `i`.
    pub truncated_domain: Option<(usize, Sign)>,
}

impl BTildeHom {
    pub fn elementary(
        name: impl Into<String>,
        domain: Arc<BTilde>,
        codomain: Arc<BTilde>,
        step: HomStep,
    ) -> BTildeHom {
        let n_dom = domain.n();
        let (grading_map, single, truncated) = match &step {
            HomStep::InsertSign { i, .. } => {
                let map = (0..n_dom)
                    .map(|j| Some(if j < i - 1 { j } else { j + 1 }))
                    .collect();
                (map, true, None)
            }
            HomStep::RemoveSign { i, s, u_i_to_one } => {
                let map = (0..n_dom)
                    .map(|j| {
                        if j == i - 1 {
                            None
                        } else if j < i - 1 {
                            Some(j)
                        } else {
                            Some(j - 1)
                        }
                    })
                    .collect();
                let trunc = if *u_i_to_one { Some((*i, *s)) } else { None };
                (map, !u_i_to_one, trunc)
            }
            HomStep::NegateSigns => ((0..n_dom).map(Some).collect(), true, None),
        };
        BTildeHom {
            name: name.into(),
            domain,
            codomain,
            step,
            grading_map,
            single_grading_preserved: single,
            truncated_domain: truncated,
        }
    }

    /// Image of a raw (unreduced) monomial symbol, reduced in the codomain.
    pub fn apply_monomial(&self, m: &Monomial, coef: i64) -> BElem {
        let mapped = match &self.step {
            HomStep::InsertSign { i, s } => {
                let src = m.src.insert(i - 1, *s);
                let tgt = m.tgt.insert(i - 1, *s);
                let mut expo = vec![0usize; self.codomain.n()];
                for (j, &e) in m.expo.iter().enumerate() {
                    let slot = if j < i - 1 { j } else { j + 1 };
                    expo[slot] = e;
                }
                Some((src, tgt, expo))
            }
            HomStep::RemoveSign { i, s, u_i_to_one } => {
                if m.src.get(i - 1) != *s || m.tgt.get(i - 1) != *s {
                    None
                } else if !u_i_to_one && m.expo[i - 1] > 0 {
                    None // u_i -> 0 kills the term
                } else {
                    let src = m.src.remove(i - 1);
                    let tgt = m.tgt.remove(i - 1);
                    let mut expo = vec![0usize; self.codomain.n()];
                    for (j, &e) in m.expo.iter().enumerate() {
                        if j == i - 1 {
                            continue; // exponent dropped (u_i -> 1) or zero
                        }
                        let slot = if j < i - 1 { j } else { j - 1 };
                        expo[slot] = e;
                    }
                    Some((src, tgt, expo))
                }
            }
            HomStep::NegateSigns => {
                Some((m.src.negate(), m.tgt.negate(), m.expo.clone()))
            }
        };
        match mapped {
            None => BElem::zero(),
            Some((src, tgt, expo)) => self.codomain.monomial(&src, &tgt, expo).scaled(coef),
        }
    }

    /// Image of a canonical-form element.
    pub fn apply(&self, x: &BElem) -> BElem {
        let mut out = BElem::zero();
        for (m, c) in &x.terms {
            out.add_assign(&self.apply_monomial(m, *c));
        }
        out
    }

    // Images of the domain presentation generators.
    fn vertex_image(&self, alpha: &SignSeq) -> BElem {
        let n = self.domain.n();
        self.apply_monomial(
            &Monomial { src: alpha.clone(), tgt: alpha.clone(), expo: vec![0; n] },
            1,
        )
    }

    fn arrow_image(&self, alpha: &SignSeq, beta: &SignSeq) -> BElem {
        let n = self.domain.n();
        self.apply_monomial(
            &Monomial { src: alpha.clone(), tgt: beta.clone(), expo: vec![0; n] },
            1,
        )
    }

    fn central_image(&self, j: usize) -> BElem {
        match &self.step {
            HomStep::InsertSign { i, .. } => {
                let slot = if j < i - 1 { j } else { j + 1 };
                self.codomain.u_generator(slot)
            }
            HomStep::RemoveSign { i, u_i_to_one, .. } => {
                if j == i - 1 {
                    if *u_i_to_one {
                        self.codomain.unit()
                    } else {
                        BElem::zero()
                    }
                } else {
                    let slot = if j < i - 1 { j } else { j - 1 };
                    self.codomain.u_generator(slot)
                }
            }
            HomStep::NegateSigns => self.codomain.u_generator(j),
        }
    }

    /// Verifies well-definedness.
    ///
    /// For the presentable domains, every relation of the domain presentation
    /// must map to a canonical-form zero. For truncated domains (`u_i -> 1`),
    /// the generators of each vanishing ideal must map into the target ideal,
    /// and multiplicativity is checked on all products of truncated
    /// generators.
    pub fn verify_well_defined(&self) -> Result<()> {
        match self.truncated_domain {
            None => self.verify_relations(),
            Some((i, s)) => self.verify_truncated(i, s),
        }
    }

    fn verify_relations(&self) -> Result<()> {
        let pres = btilde_presentation(&self.domain);
        let labels: Vec<SignSeq> = pres
            .vertex_labels
            .iter()
            .map(|l| SignSeq::parse(l).expect("vertex labels are sign sequences"))
            .collect();
        for rel in &pres.relations {
            let mut image = BElem::zero();
            for (coef, pm) in &rel.terms {
                let mut acc = self.vertex_image(&labels[rel.src]);
                for &aid in &pm.arrows {
                    let arrow = &pres.arrows[aid];
                    let g = self.arrow_image(&labels[arrow.src], &labels[arrow.tgt]);
                    acc = self.codomain.multiply(&acc, &g);
                }
                for (j, &e) in pm.central.iter().enumerate() {
                    for _ in 0..e {
                        let u = self.central_image(j);
                        acc = self.codomain.multiply(&acc, &u);
                    }
                }
                image.add_assign(&acc.scaled(*coef));
            }
            if !image.is_zero() {
                return Err(Error::Precondition(format!(
                    "{}: relation `{}` maps to nonzero {:?}",
                    self.name, rel.name, image
                )));
            }
        }
        Ok(())
    }

    fn verify_truncated(&self, i: usize, s: Sign) -> Result<()> {
        let dom = &self.domain;
        let pairs: Vec<(SignSeq, SignSeq)> = dom
            .pset()
            .iter()
            .filter(|a| a.get(i - 1) == s)
            .flat_map(|a| {
                dom.pset()
                    .iter()
                    .filter(|b| b.get(i - 1) == s)
                    .map(move |b| (a.clone(), b.clone()))
            })
            .collect();
        // Ideal mapping: each minimal vanishing generator dies in the target.
        for (a, b) in &pairs {
            for min_set in dom.vanishing_sets(a, b).iter() {
                let mut expo = vec![0usize; dom.n()];
                for &idx in min_set {
                    expo[idx] = 1;
                }
                let m = Monomial { src: a.clone(), tgt: b.clone(), expo };
                let img = self.apply_monomial(&m, 1);
                if !img.is_zero() {
                    return Err(Error::Precondition(format!(
                        "{}: ideal generator u_{min_set:?} f[{a},{b}] maps to nonzero {img:?}",
                        self.name
                    )));
                }
            }
        }
        // Multiplicativity on truncated generators.
        let mut gens: Vec<BElem> = Vec::new();
        for (a, b) in &pairs {
            if a == b || a.flips(b).len() == 1 {
                let f = dom.f_generator(a, b);
                if !f.is_zero() {
                    gens.push(f);
                }
            }
        }
        for j in 0..dom.n() {
            // u_j restricted to the truncation.
            let mut g = BElem::zero();
            for a in dom.pset().iter().filter(|a| a.get(i - 1) == s) {
                let mut expo = vec![0; dom.n()];
                expo[j] = 1;
                g.add_assign(&dom.monomial(a, a, expo));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        for x in &gens {
            for y in &gens {
                let lhs = self.apply(&dom.multiply(x, y));
                let rhs = self.codomain.multiply(&self.apply(x), &self.apply(y));
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "{}: multiplicativity fails on {x:?} · {y:?}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The six deletion/restriction homomorphisms attached to `(V, i, s)`,
/// with `A~(X)` realized as `B~(X^∨)`.
pub struct DelRestHoms {
    /// `rest_A~(V,s): A~(V^i) -> A~(V)`.
    pub rest_a: BTildeHom,
    /// `del_A~(V,s): A~(V) -> A~(V_i)` (`t_i -> 0`).
    pub del_a: BTildeHom,
    /// `del'_A~(V,s): A~^s(V) -> A~(V_i)` (`t_i -> 1`).
    pub del_a_prime: BTildeHom,
    /// `del_B~(V,s): B~(V_i) -> B~(V)`.
    pub del_b: BTildeHom,
    /// `rest_B~(V,s): B~(V) -> B~(V^i)` (`u_i -> 0`).
    pub rest_b: BTildeHom,
    /// `rest'_B~(V,s): B~^s(V) -> B~(V^i)` (`u_i -> 1`).
    pub rest_b_prime: BTildeHom,
}

pub fn deletion_restriction_homs(
    pol: &PolarizedArrangement,
    i: usize,
    s: Sign,
) -> Result<DelRestHoms> {
    let deleted = dualities::delete(pol, i)?;
    let restricted = dualities::restrict(pol, i)?;
    let b_v = Arc::new(BTilde::new(pol.clone())?);
    let b_del = Arc::new(BTilde::new(deleted.clone())?);
    let b_res = Arc::new(BTilde::new(restricted.clone())?);
    let a_v = Arc::new(BTilde::new(dualities::gale_dual(pol)?)?);
    let a_del = Arc::new(BTilde::new(dualities::gale_dual(&deleted)?)?);
    let a_res = Arc::new(BTilde::new(dualities::gale_dual(&restricted)?)?);

    let sch = s.as_char();
    Ok(DelRestHoms {
        rest_a: BTildeHom::elementary(
            format!("rest_A(i={i},s={sch})"),
            Arc::clone(&a_res),
            Arc::clone(&a_v),
            HomStep::InsertSign { i, s },
        ),
        del_a: BTildeHom::elementary(
            format!("del_A(i={i},s={sch})"),
            Arc::clone(&a_v),
            Arc::clone(&a_del),
            HomStep::RemoveSign { i, s, u_i_to_one: false },
        ),
        del_a_prime: BTildeHom::elementary(
            format!("del'_A(i={i},s={sch})"),
            a_v,
            a_del,
            HomStep::RemoveSign { i, s, u_i_to_one: true },
        ),
        del_b: BTildeHom::elementary(
            format!("del_B(i={i},s={sch})"),
            b_del,
            Arc::clone(&b_v),
            HomStep::InsertSign { i, s },
        ),
        rest_b: BTildeHom::elementary(
            format!("rest_B(i={i},s={sch})"),
            Arc::clone(&b_v),
            Arc::clone(&b_res),
            HomStep::RemoveSign { i, s, u_i_to_one: false },
        ),
        rest_b_prime: BTildeHom::elementary(
            format!("rest'_B(i={i},s={sch})"),
            b_v,
            b_res,
            HomStep::RemoveSign { i, s, u_i_to_one: true },
        ),
    })
}

/// Report of the composition identities for the chain
/// `B~(V) -> B~(V') -> B~(V'')` with `V = (V')_i` and `V'' = (V')^i`.
#[derive(Debug)]
pub struct CompositionReport {
    /// Mixed-sign composites vanish on every generator.
    pub cross_signs_vanish: bool,
    /// The `s'=s''=+` and `s'=s''=-` composites agree on every generator.
    pub equal_signs_agree: bool,
    /// Routing the second leg through `rest'` gives the same composite.
    pub primed_route_agrees: bool,
}

impl CompositionReport {
    pub fn all_hold(&self) -> bool {
        self.cross_signs_vanish && self.equal_signs_agree && self.primed_route_agrees
    }
}

pub fn composition_check(vprime: &PolarizedArrangement, i: usize) -> Result<CompositionReport> {
    let v = dualities::delete(vprime, i)?;
    let b_v = Arc::new(BTilde::new(v)?);
    let b_vp = Arc::new(BTilde::new(vprime.clone())?);
    let b_vpp = Arc::new(BTilde::new(dualities::restrict(vprime, i)?)?);

    let del = |s: Sign| {
        BTildeHom::elementary(
            "del_B",
            Arc::clone(&b_v),
            Arc::clone(&b_vp),
            HomStep::InsertSign { i, s },
        )
    };
    let rest = |s: Sign, one: bool| {
        BTildeHom::elementary(
            "rest_B",
            Arc::clone(&b_vp),
            Arc::clone(&b_vpp),
            HomStep::RemoveSign { i, s, u_i_to_one: one },
        )
    };

    // Generators of B~(V): idempotents, adjacent-pair arrows, u's.
    let mut gens: Vec<BElem> = Vec::new();
    let ps = b_v.pset().to_vec();
    for a in &ps {
        gens.push(b_v.idempotent(a));
        for b in &ps {
            if a.flips(b).len() == 1 {
                let f = b_v.f_generator(a, b);
                if !f.is_zero() {
                    gens.push(f);
                }
            }
        }
    }
    for j in 0..b_v.n() {
        gens.push(b_v.u_generator(j));
    }

    let composite = |s1: Sign, s2: Sign, primed: bool, g: &BElem| -> BElem {
        let first = del(s1).apply(g);
        rest(s2, primed).apply(&first)
    };

    let mut cross = true;
    let mut agree = true;
    let mut primed = true;
    for g in &gens {
        use Sign::{Minus, Plus};
        if !composite(Plus, Minus, false, g).is_zero()
            || !composite(Minus, Plus, false, g).is_zero()
        {
            cross = false;
        }
        let pp = composite(Plus, Plus, false, g);
        let mm = composite(Minus, Minus, false, g);
        if pp != mm {
            agree = false;
        }
        if composite(Plus, Plus, true, g) != pp || composite(Minus, Minus, true, g) != mm {
            primed = false;
        }
    }
    Ok(CompositionReport {
        cross_signs_vanish: cross,
        equal_signs_agree: agree,
        primed_route_agrees: primed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::reference_left;

    #[test]
    fn all_six_well_defined_on_n4_k2() {
        let pol = reference_left(4, 2).unwrap();
        for s in [Sign::Plus, Sign::Minus] {
            let homs = deletion_restriction_homs(&pol, 2, s).unwrap();
            homs.rest_a.verify_well_defined().unwrap();
            homs.del_a.verify_well_defined().unwrap();
            homs.del_a_prime.verify_well_defined().unwrap();
            homs.del_b.verify_well_defined().unwrap();
            homs.rest_b.verify_well_defined().unwrap();
            homs.rest_b_prime.verify_well_defined().unwrap();
        }
    }

    #[test]
    fn rest_a_maps_idempotents_by_insertion() {
        let pol = reference_left(4, 2).unwrap();
        let homs = deletion_restriction_homs(&pol, 2, Sign::Plus).unwrap();
        for alpha in homs.rest_a.domain.pset().to_vec() {
            let img = homs.rest_a.apply(&homs.rest_a.domain.idempotent(&alpha));
            let expect = homs.rest_a.codomain.idempotent(&alpha.insert(1, Sign::Plus));
            assert_eq!(img, expect, "α = {alpha}");
        }
    }

    #[test]
    fn grading_maps_record_killing_and_shifts() {
        let pol = reference_left(4, 2).unwrap();
        let homs = deletion_restriction_homs(&pol, 2, Sign::Plus).unwrap();
        assert_eq!(homs.del_a.grading_map, vec![Some(0), None, Some(1), Some(2)]);
        assert!(homs.del_a.single_grading_preserved);
        assert_eq!(homs.rest_b_prime.grading_map, vec![Some(0), None, Some(1), Some(2)]);
        assert!(!homs.rest_b_prime.single_grading_preserved);
        assert_eq!(homs.del_b.grading_map, vec![Some(0), Some(2), Some(3)]);
    }

    #[test]
    fn rest_prime_drops_degree_on_u_i() {
        // u_2 f has single degree 2 more than its image under rest'.
        let pol = reference_left(4, 2).unwrap();
        let homs = deletion_restriction_homs(&pol, 2, Sign::Plus).unwrap();
        let dom = &homs.rest_b_prime.domain;
        let alpha = dom
            .pset()
            .iter()
            .find(|a| a.get(1) == Sign::Plus)
            .cloned()
            .expect("some P sequence has + at position 2");
        let mut expo = vec![0; 4];
        expo[1] = 1;
        let x = dom.monomial(&alpha, &alpha, expo);
        if x.is_zero() {
            return; // u_2 already dies at this idempotent; nothing to measure
        }
        let img = homs.rest_b_prime.apply(&x);
        assert!(!img.is_zero());
        let d_in: usize = x.multidegree().unwrap().iter().sum();
        let d_out: usize = img.multidegree().unwrap().iter().sum();
        assert_eq!(d_in, d_out + 2);
    }

    #[test]
    fn composition_identities_small() {
        let vprime = reference_left(3, 1).unwrap();
        let report = composition_check(&vprime, 1).unwrap();
        assert!(report.all_hold(), "{report:?}");
        let vprime = reference_left(4, 2).unwrap();
        let report = composition_check(&vprime, 2).unwrap();
        assert!(report.all_hold(), "{report:?}");
    }
}
