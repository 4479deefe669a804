//! The algebras `B(n,k)` and their truncations, as small-step quiver
//! presentations: vertices are k-element dot sets, arrows `R_i`/`L_i` move a
//! dot across line `i`, and `U_i` is a loop of degree `2e_i`.

mod bimodules;
mod iso;

pub use bimodules::{
    e2k_piece_rank, f_squared_zero, factorization_check, fk_homomorphism, fk_piece_rank,
    FactorReport, FkHom,
};
pub use iso::{center_check, verify_isomorphism, verify_prime_truncation, IsoReport, Phi};

use crate::arrangement::sign::{dots_to_string, DotSet};
use crate::convalg::{Arrow, PathMonomial, QuiverPresentation, Relation};
use crate::error::{Error, Result};
use crate::qlinalg::k_subsets;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OszVariant {
    /// All k-subsets of `{0..n}`.
    Full,
    /// Subsets of `{0..n-1}`.
    Left,
    /// Subsets of `{1..n}`.
    Right,
    /// Subsets of `{1..n-1}`.
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OszSpec {
    pub n: usize,
    pub k: usize,
    pub variant: OszVariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrowKind {
    R,
    L,
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OszArrowInfo {
    pub kind: ArrowKind,
    /// 1-based line index.
    pub i: usize,
}

/// A presented algebra `B(n,k)` (or a variant), with arrow metadata for the
/// anti-automorphism and the isomorphism maps.
pub struct OszAlgebra {
    pub spec: OszSpec,
    pub vertices: Vec<DotSet>,
    pub pres: QuiverPresentation,
    pub info: Vec<OszArrowInfo>,
    arrow_lookup: BTreeMap<(ArrowKind, usize, usize), usize>,
}

impl OszSpec {
    fn dot_range(&self) -> (usize, usize) {
        match self.variant {
            OszVariant::Full => (0, self.n),
            OszVariant::Left => (0, self.n - 1),
            OszVariant::Right => (1, self.n),
            OszVariant::Prime => (1, self.n - 1),
        }
    }
}

impl OszAlgebra {
    pub fn new(spec: OszSpec) -> Result<OszAlgebra> {
        let (lo, hi) = spec.dot_range();
        if hi + 1 < lo + spec.k {
            return Err(Error::Precondition(format!(
                "no {}-element subsets of {{{lo}..{hi}}}",
                spec.k
            )));
        }
        let count = hi - lo + 1;
        let vertices: Vec<DotSet> = k_subsets(count, spec.k)
            .into_iter()
            .map(|s| s.into_iter().map(|i| i + lo).collect::<DotSet>())
            .collect();
        let vertex_index: BTreeMap<&DotSet, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let n = spec.n;

        let mut arrows: Vec<Arrow> = Vec::new();
        let mut info: Vec<OszArrowInfo> = Vec::new();
        let mut lookup: BTreeMap<(ArrowKind, usize, usize), usize> = BTreeMap::new();
        let push = |arrows: &mut Vec<Arrow>,
                        info: &mut Vec<OszArrowInfo>,
                        lookup: &mut BTreeMap<(ArrowKind, usize, usize), usize>,
                        kind: ArrowKind,
                        i: usize,
                        src: usize,
                        tgt: usize,
                        deg2: bool| {
            let mut deg = vec![0usize; n];
            deg[i - 1] = if deg2 { 2 } else { 1 };
            let name = format!("{kind:?}{i}");
            lookup.insert((kind, i, src), arrows.len());
            arrows.push(Arrow { src, tgt, deg, name });
            info.push(OszArrowInfo { kind, i });
        };
        for (vi, x) in vertices.iter().enumerate() {
            for i in 1..=n {
                // R_i: move the dot at i-1 to i.
                if x.contains(&(i - 1)) && !x.contains(&i) {
                    let mut y = x.clone();
                    y.remove(&(i - 1));
                    y.insert(i);
                    if let Some(&vj) = vertex_index.get(&y) {
                        push(&mut arrows, &mut info, &mut lookup, ArrowKind::R, i, vi, vj, false);
                        push(&mut arrows, &mut info, &mut lookup, ArrowKind::L, i, vj, vi, false);
                    }
                }
                push(&mut arrows, &mut info, &mut lookup, ArrowKind::U, i, vi, vi, true);
            }
        }

        let mut alg = OszAlgebra {
            spec,
            vertices,
            pres: QuiverPresentation::new(Vec::new(), n, false, arrows, Vec::new()),
            info,
            arrow_lookup: lookup,
        };
        alg.pres.vertex_labels = alg.vertices.iter().map(dots_to_string).collect();
        alg.pres.relations = alg.build_relations();
        Ok(alg)
    }

    pub fn vertex_of(&self, x: &DotSet) -> Option<usize> {
        self.vertices.iter().position(|v| v == x)
    }

    pub fn arrow(&self, kind: ArrowKind, i: usize, src: usize) -> Option<usize> {
        self.arrow_lookup.get(&(kind, i, src)).copied()
    }

    fn path(&self, arrows: Vec<usize>) -> PathMonomial {
        PathMonomial::path(arrows, self.spec.n)
    }

    // The defining relations, instantiated at every vertex where the
    // constituent arrows exist.
    fn build_relations(&self) -> Vec<Relation> {
        let n = self.spec.n;
        let mut rels: Vec<Relation> = Vec::new();
        let deg_of = |ids: &[usize]| {
            let mut d = vec![0usize; n];
            for &a in ids {
                for (c, v) in d.iter_mut().zip(&self.pres.arrows[a].deg) {
                    *c += v;
                }
            }
            d
        };
        let push2 =
            |rels: &mut Vec<Relation>, lhs: Vec<usize>, rhs: Vec<usize>, name: String| {
                let src = self.pres.arrows[lhs[0]].src;
                let tgt = self.pres.arrows[*lhs.last().unwrap()].tgt;
                rels.push(Relation {
                    src,
                    tgt,
                    deg: deg_of(&lhs),
                    terms: vec![(1, self.path(lhs)), (-1, self.path(rhs))],
                    name,
                });
            };
        for (vi, x) in self.vertices.iter().enumerate() {
            for i in 1..=n {
                let u_here = self.arrow(ArrowKind::U, i, vi).unwrap();
                // (5) U_i I_x = 0 when x ∩ {i-1, i} = ∅.
                if !x.contains(&(i - 1)) && !x.contains(&i) {
                    rels.push(Relation {
                        src: vi,
                        tgt: vi,
                        deg: self.pres.arrows[u_here].deg.clone(),
                        terms: vec![(1, self.path(vec![u_here]))],
                        name: format!("U{i} vanishes at {}", dots_to_string(x)),
                    });
                }
                // (1) U_i U_j = U_j U_i.
                for j in i + 1..=n {
                    let u_j = self.arrow(ArrowKind::U, j, vi).unwrap();
                    push2(
                        &mut rels,
                        vec![u_here, u_j],
                        vec![u_j, u_here],
                        format!("U{i}U{j} commute at {}", dots_to_string(x)),
                    );
                }
                // (2) R_i L_i = U_i and L_i R_i = U_i at the other end.
                if let Some(r) = self.arrow(ArrowKind::R, i, vi) {
                    let vj = self.pres.arrows[r].tgt;
                    let l = self.arrow(ArrowKind::L, i, vj).unwrap();
                    push2(
                        &mut rels,
                        vec![r, l],
                        vec![u_here],
                        format!("R{i}L{i} = U{i} at {}", dots_to_string(x)),
                    );
                    let u_there = self.arrow(ArrowKind::U, i, vj).unwrap();
                    push2(
                        &mut rels,
                        vec![l, r],
                        vec![u_there],
                        format!("L{i}R{i} = U{i} at {}", dots_to_string(&self.vertices[vj])),
                    );
                }
                // (1) R/L commute with every U_j.
                for kind in [ArrowKind::R, ArrowKind::L] {
                    if let Some(a) = self.arrow(kind, i, vi) {
                        let vj = self.pres.arrows[a].tgt;
                        for j in 1..=n {
                            let u_src = self.arrow(ArrowKind::U, j, vi).unwrap();
                            let u_tgt = self.arrow(ArrowKind::U, j, vj).unwrap();
                            push2(
                                &mut rels,
                                vec![u_src, a],
                                vec![a, u_tgt],
                                format!("{kind:?}{i} commutes with U{j} at {}", dots_to_string(x)),
                            );
                        }
                    }
                }
                // (4) R_{i-1} R_i = 0 and L_i L_{i-1} = 0.
                if i >= 2 {
                    if let Some(r1) = self.arrow(ArrowKind::R, i - 1, vi) {
                        let mid = self.pres.arrows[r1].tgt;
                        if let Some(r2) = self.arrow(ArrowKind::R, i, mid) {
                            rels.push(Relation {
                                src: vi,
                                tgt: self.pres.arrows[r2].tgt,
                                deg: deg_of(&[r1, r2]),
                                terms: vec![(1, self.path(vec![r1, r2]))],
                                name: format!("R{}R{i} = 0 at {}", i - 1, dots_to_string(x)),
                            });
                        }
                    }
                    if let Some(l2) = self.arrow(ArrowKind::L, i, vi) {
                        let mid = self.pres.arrows[l2].tgt;
                        if let Some(l1) = self.arrow(ArrowKind::L, i - 1, mid) {
                            rels.push(Relation {
                                src: vi,
                                tgt: self.pres.arrows[l1].tgt,
                                deg: deg_of(&[l2, l1]),
                                terms: vec![(1, self.path(vec![l2, l1]))],
                                name: format!("L{i}L{} = 0 at {}", i - 1, dots_to_string(x)),
                            });
                        }
                    }
                }
                // (3) distant commutation for |i-j| > 1.
                for j in i + 2..=n {
                    for kind_a in [ArrowKind::R, ArrowKind::L] {
                        for kind_b in [ArrowKind::R, ArrowKind::L] {
                            let Some(a) = self.arrow(kind_a, i, vi) else { continue };
                            let mid = self.pres.arrows[a].tgt;
                            let Some(b) = self.arrow(kind_b, j, mid) else { continue };
                            let end = self.pres.arrows[b].tgt;
                            let Some(b2) = self.arrow(kind_b, j, vi) else { continue };
                            let mid2 = self.pres.arrows[b2].tgt;
                            let Some(a2) = self.arrow(kind_a, i, mid2) else { continue };
                            assert_eq!(self.pres.arrows[a2].tgt, end, "distant moves commute");
                            push2(
                                &mut rels,
                                vec![a, b],
                                vec![b2, a2],
                                format!(
                                    "{kind_a:?}{i}{kind_b:?}{j} commute at {}",
                                    dots_to_string(x)
                                ),
                            );
                        }
                    }
                }
            }
        }
        rels
    }

    /// The arrow of the involution `R_i <-> L_i`, `U_i -> U_i`.
    pub fn psi_arrow(&self, aid: usize) -> usize {
        let arrow = &self.pres.arrows[aid];
        let inf = self.info[aid];
        let kind = match inf.kind {
            ArrowKind::R => ArrowKind::L,
            ArrowKind::L => ArrowKind::R,
            ArrowKind::U => ArrowKind::U,
        };
        self.arrow(kind, inf.i, arrow.tgt).expect("mate arrow exists")
    }
}

/// A formal integer combination of quiver paths, used for images of the
/// structure maps before reduction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OszSum {
    /// `(src, tgt, arrows) -> coefficient`.
    pub terms: BTreeMap<(usize, usize, Vec<usize>), i64>,
}

impl OszSum {
    pub fn zero() -> OszSum {
        OszSum::default()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn idempotent(v: usize) -> OszSum {
        OszSum { terms: BTreeMap::from([((v, v, Vec::new()), 1)]) }
    }

    pub fn single(src: usize, tgt: usize, arrows: Vec<usize>, coef: i64) -> OszSum {
        if coef == 0 {
            return OszSum::zero();
        }
        OszSum { terms: BTreeMap::from([((src, tgt, arrows), coef)]) }
    }

    pub fn add_assign(&mut self, other: &OszSum) {
        for (k, c) in &other.terms {
            let e = self.terms.entry(k.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                self.terms.remove(k);
            }
        }
    }

    pub fn scaled(&self, by: i64) -> OszSum {
        if by == 0 {
            return OszSum::zero();
        }
        OszSum { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * by)).collect() }
    }

    /// Path-concatenation product.
    pub fn multiply(&self, other: &OszSum) -> OszSum {
        let mut out = OszSum::zero();
        for ((s1, t1, a1), c1) in &self.terms {
            for ((s2, t2, a2), c2) in &other.terms {
                if t1 != s2 {
                    continue;
                }
                let mut arrows = a1.clone();
                arrows.extend_from_slice(a2);
                out.add_assign(&OszSum::single(*s1, *t2, arrows, c1 * c2));
            }
        }
        out
    }

    /// Reversal under the anti-automorphism `ψ`.
    pub fn psi(&self, alg: &OszAlgebra) -> OszSum {
        let mut out = OszSum::zero();
        for ((s, t, arrows), c) in &self.terms {
            let mapped: Vec<usize> = arrows.iter().rev().map(|&a| alg.psi_arrow(a)).collect();
            out.add_assign(&OszSum::single(*t, *s, mapped, *c));
        }
        out
    }

    /// Zero test in the presented algebra, degreewise via the relation
    /// lattice.
    pub fn is_zero_in(&self, alg: &OszAlgebra) -> bool {
        let mut grouped: BTreeMap<(usize, usize), Vec<(i64, PathMonomial)>> = BTreeMap::new();
        for ((s, t, arrows), c) in &self.terms {
            grouped
                .entry((*s, *t))
                .or_default()
                .push((*c, PathMonomial::path(arrows.clone(), alg.spec.n)));
        }
        grouped
            .into_iter()
            .all(|((s, t), terms)| alg.pres.is_zero_element(s, t, &terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dots(v: &[usize]) -> DotSet {
        v.iter().copied().collect()
    }

    #[test]
    fn left_2_1_structure() {
        let alg = OszAlgebra::new(OszSpec { n: 2, k: 1, variant: OszVariant::Left }).unwrap();
        assert_eq!(alg.vertices, vec![dots(&[0]), dots(&[1])]);
        let r_count = alg.info.iter().filter(|i| i.kind == ArrowKind::R).count();
        let l_count = alg.info.iter().filter(|i| i.kind == ArrowKind::L).count();
        let u_count = alg.info.iter().filter(|i| i.kind == ArrowKind::U).count();
        assert_eq!((r_count, l_count, u_count), (1, 1, 4));
    }

    #[test]
    fn u2_vanishes_at_dot_zero() {
        let alg = OszAlgebra::new(OszSpec { n: 2, k: 1, variant: OszVariant::Left }).unwrap();
        let v0 = alg.vertex_of(&dots(&[0])).unwrap();
        let u2 = alg.arrow(ArrowKind::U, 2, v0).unwrap();
        let elem = OszSum::single(v0, v0, vec![u2], 1);
        assert!(elem.is_zero_in(&alg));
        // U_1 at {0} is not zero.
        let u1 = alg.arrow(ArrowKind::U, 1, v0).unwrap();
        assert!(!OszSum::single(v0, v0, vec![u1], 1).is_zero_in(&alg));
    }

    #[test]
    fn rl_equals_u() {
        let alg = OszAlgebra::new(OszSpec { n: 2, k: 1, variant: OszVariant::Left }).unwrap();
        let v0 = alg.vertex_of(&dots(&[0])).unwrap();
        let r = alg.arrow(ArrowKind::R, 1, v0).unwrap();
        let v1 = alg.pres.arrows[r].tgt;
        let l = alg.arrow(ArrowKind::L, 1, v1).unwrap();
        let u1 = alg.arrow(ArrowKind::U, 1, v0).unwrap();
        let mut diff = OszSum::single(v0, v0, vec![r, l], 1);
        diff.add_assign(&OszSum::single(v0, v0, vec![u1], -1));
        assert!(diff.is_zero_in(&alg));
    }

    #[test]
    fn psi_swaps_r_and_l() {
        let alg = OszAlgebra::new(OszSpec { n: 3, k: 1, variant: OszVariant::Left }).unwrap();
        for (aid, inf) in alg.info.iter().enumerate() {
            let mate = alg.psi_arrow(aid);
            match inf.kind {
                ArrowKind::R => assert_eq!(alg.info[mate].kind, ArrowKind::L),
                ArrowKind::L => assert_eq!(alg.info[mate].kind, ArrowKind::R),
                ArrowKind::U => assert_eq!(mate, aid),
            }
            assert_eq!(alg.psi_arrow(mate), aid);
        }
    }

    #[test]
    fn psi_is_antihomomorphism_on_samples() {
        let alg = OszAlgebra::new(OszSpec { n: 2, k: 1, variant: OszVariant::Left }).unwrap();
        let v0 = alg.vertex_of(&dots(&[0])).unwrap();
        let r = alg.arrow(ArrowKind::R, 1, v0).unwrap();
        let v1 = alg.pres.arrows[r].tgt;
        let l = alg.arrow(ArrowKind::L, 1, v1).unwrap();
        let x = OszSum::single(v0, v1, vec![r], 1);
        let y = OszSum::single(v1, v0, vec![l], 1);
        let lhs = x.multiply(&y).psi(&alg);
        let rhs = y.psi(&alg).multiply(&x.psi(&alg));
        assert_eq!(lhs, rhs);
        // ψ(R_1 L_1) equals R_1 L_1 up to the defining relation (= U_1).
        let mut diff = lhs.clone();
        diff.add_assign(&x.multiply(&y).scaled(-1));
        assert!(diff.is_zero_in(&alg));
    }

    #[test]
    fn prime_variant_vertices() {
        let alg = OszAlgebra::new(OszSpec { n: 4, k: 2, variant: OszVariant::Prime }).unwrap();
        assert_eq!(alg.vertices.len(), 3); // C(3,2) subsets of {1,2,3}
        for v in &alg.vertices {
            assert!(v.iter().all(|&d| (1..=3).contains(&d)));
        }
    }
}
