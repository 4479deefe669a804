//! Finitely presented multigraded quiver algebras and their graded pieces.
//!
//! A presentation is a quiver with multigraded arrows, optionally a family of
//! central polynomial generators `u_i` of multidegree `2e_i`, and a list of
//! multihomogeneous relations. Each graded piece is computed as the cokernel
//! of the integer matrix of relation instances embedded into paths, via Smith
//! normal form; this is the finite window onto the infinite algebra.

use super::intmat::{in_row_span, smith_normal_form, z_row_echelon};
use super::{multideg_add, multideg_le, BTilde, MultiDeg};
use crate::arrangement::sign::SignSeq;
use num::bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub deg: MultiDeg,
    pub name: String,
}

/// A path (arrow ids, composed left to right) times a central monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathMonomial {
    pub arrows: Vec<usize>,
    pub central: Vec<usize>,
}

impl PathMonomial {
    pub fn path(arrows: Vec<usize>, n: usize) -> PathMonomial {
        PathMonomial { arrows, central: vec![0; n] }
    }
}

/// An integer combination of path monomials sharing source, target, and
/// multidegree; a relation states that the combination is zero.
#[derive(Clone, Debug)]
pub struct Relation {
    pub src: usize,
    pub tgt: usize,
    pub deg: MultiDeg,
    pub terms: Vec<(i64, PathMonomial)>,
    pub name: String,
}

pub struct QuiverPresentation {
    pub vertex_labels: Vec<String>,
    pub n_coords: usize,
    /// Central generators `u_1..u_n` (one per coordinate, degree `2e_i`)
    /// tensored onto the path algebra.
    pub has_central: bool,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    paths_cache: Mutex<HashMap<(usize, MultiDeg), Arc<PathsByEnd>>>,
}

impl Clone for QuiverPresentation {
    fn clone(&self) -> Self {
        QuiverPresentation {
            vertex_labels: self.vertex_labels.clone(),
            n_coords: self.n_coords,
            has_central: self.has_central,
            arrows: self.arrows.clone(),
            relations: self.relations.clone(),
            paths_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for QuiverPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuiverPresentation")
            .field("vertices", &self.vertex_labels)
            .field("arrows", &self.arrows.len())
            .field("relations", &self.relations.len())
            .finish()
    }
}

/// One multidegree component of a presented algebra.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub basis: Vec<PathMonomial>,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone)]
struct PathEnd {
    arrows: Vec<usize>,
    deg: MultiDeg,
    end: usize,
}

// Paths out of one source with bounded degree, grouped by endpoint.
type PathsByEnd = HashMap<usize, Vec<(Vec<usize>, MultiDeg)>>;

impl QuiverPresentation {
    pub fn new(
        vertex_labels: Vec<String>,
        n_coords: usize,
        has_central: bool,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
    ) -> QuiverPresentation {
        QuiverPresentation {
            vertex_labels,
            n_coords,
            has_central,
            arrows,
            relations,
            paths_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn monomial_degree(&self, pm: &PathMonomial) -> MultiDeg {
        let mut d = vec![0usize; self.n_coords];
        for &a in &pm.arrows {
            d = multideg_add(&d, &self.arrows[a].deg);
        }
        for i in 0..self.n_coords {
            d[i] += 2 * pm.central[i];
        }
        d
    }

    pub fn monomial_src(&self, pm: &PathMonomial, fallback: usize) -> usize {
        pm.arrows.first().map(|&a| self.arrows[a].src).unwrap_or(fallback)
    }

    pub fn monomial_tgt(&self, pm: &PathMonomial, fallback: usize) -> usize {
        pm.arrows.last().map(|&a| self.arrows[a].tgt).unwrap_or(fallback)
    }

    // All composable paths out of `src` with multidegree <= bound, cached
    // per (src, bound) and grouped by endpoint.
    fn paths_from(&self, src: usize, bound: &[usize]) -> Arc<PathsByEnd> {
        let key = (src, bound.to_vec());
        if let Some(hit) = self.paths_cache.lock().unwrap().get(&key) {
            return Arc::clone(hit);
        }
        let mut arrows_by_src: HashMap<usize, Vec<usize>> = HashMap::new();
        for (id, arrow) in self.arrows.iter().enumerate() {
            arrows_by_src.entry(arrow.src).or_default().push(id);
        }
        let mut out: PathsByEnd = HashMap::new();
        let mut stack = vec![PathEnd { arrows: Vec::new(), deg: vec![0; self.n_coords], end: src }];
        while let Some(p) = stack.pop() {
            out.entry(p.end).or_default().push((p.arrows.clone(), p.deg.clone()));
            for &id in arrows_by_src.get(&p.end).into_iter().flatten() {
                let arrow = &self.arrows[id];
                let nd = multideg_add(&p.deg, &arrow.deg);
                if !multideg_le(&nd, bound) {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.push(id);
                stack.push(PathEnd { arrows, deg: nd, end: arrow.tgt });
            }
        }
        let arc = Arc::new(out);
        self.paths_cache.lock().unwrap().insert(key, Arc::clone(&arc));
        arc
    }

    // Completes a path of degree `deg` to full degree `d` with a central
    // monomial, when possible.
    fn central_completion(&self, deg: &[usize], d: &[usize]) -> Option<Vec<usize>> {
        let mut c = vec![0usize; self.n_coords];
        for i in 0..self.n_coords {
            let r = d[i].checked_sub(deg[i])?;
            if r % 2 != 0 {
                return None;
            }
            if r > 0 && !self.has_central {
                return None;
            }
            c[i] = r / 2;
        }
        Some(c)
    }

    /// Monomial basis of the degree-`d` component of the free cover
    /// `P(Q) ⊗ Z[u]` from `src` to `tgt`.
    pub fn monomial_basis(&self, src: usize, tgt: usize, d: &[usize]) -> Vec<PathMonomial> {
        let mut basis = Vec::new();
        if let Some(paths) = self.paths_from(src, d).get(&tgt) {
            for (arrows, deg) in paths {
                if let Some(central) = self.central_completion(deg, d) {
                    basis.push(PathMonomial { arrows: arrows.clone(), central });
                }
            }
        }
        basis.sort();
        basis
    }

    // Every relation instance P·r·S·u^c of degree d from src to tgt, as a
    // sparse vector over the monomial basis.
    fn relation_instances(
        &self,
        src: usize,
        tgt: usize,
        d: &[usize],
        index: &BTreeMap<PathMonomial, usize>,
    ) -> Vec<Vec<(usize, i64)>> {
        let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
        let prefixes = self.paths_from(src, d);
        let mut suffix_cache: BTreeMap<usize, Arc<PathsByEnd>> = BTreeMap::new();
        for rel in &self.relations {
            if !multideg_le(&rel.deg, d) {
                continue;
            }
            let Some(pre_bucket) = prefixes.get(&rel.src) else {
                continue;
            };
            let suffixes = suffix_cache
                .entry(rel.tgt)
                .or_insert_with(|| self.paths_from(rel.tgt, d));
            let Some(suf_bucket) = suffixes.get(&tgt) else {
                continue;
            };
            for (pre_arrows, pre_deg) in pre_bucket {
                let used = multideg_add(pre_deg, &rel.deg);
                if !multideg_le(&used, d) {
                    continue;
                }
                for (suf_arrows, suf_deg) in suf_bucket {
                    let total = multideg_add(&used, suf_deg);
                    let Some(c0) = self.central_completion(&total, d) else {
                        continue;
                    };
                    let mut row: BTreeMap<usize, i64> = BTreeMap::new();
                    for (coef, pm) in &rel.terms {
                        let mut arrows = pre_arrows.clone();
                        arrows.extend_from_slice(&pm.arrows);
                        arrows.extend_from_slice(suf_arrows);
                        let central: Vec<usize> =
                            pm.central.iter().zip(&c0).map(|(a, b)| a + b).collect();
                        let key = PathMonomial { arrows, central };
                        let idx = *index
                            .get(&key)
                            .expect("relation instance lands in the monomial basis");
                        *row.entry(idx).or_insert(0) += coef;
                    }
                    row.retain(|_, v| *v != 0);
                    if !row.is_empty() {
                        rows.push(row.into_iter().collect());
                    }
                }
            }
        }
        rows.sort();
        rows.dedup();
        rows
    }

    /// Rank and torsion of the degree-`d` piece from `src` to `tgt` of the
    /// presented algebra.
    pub fn graded_piece(&self, src: usize, tgt: usize, d: &[usize]) -> GradedPiece {
        let basis = self.monomial_basis(src, tgt, d);
        let index: BTreeMap<PathMonomial, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        if basis.is_empty() {
            return GradedPiece { basis, rank: 0, torsion: Vec::new() };
        }
        let rows = self.relation_instances(src, tgt, d, &index);
        let dense: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                let mut v = vec![BigInt::from(0); basis.len()];
                for (idx, coef) in row {
                    v[*idx] = BigInt::from(*coef);
                }
                v
            })
            .collect();
        // Row reduction preserves the row lattice, so the cokernel (and its
        // divisors) can be read from the much smaller echelon matrix.
        let echelon = z_row_echelon(dense);
        let m_rank = echelon.len();
        if m_rank == basis.len() && echelon.iter().all(|(c, row)| row[*c] == BigInt::from(1)) {
            return GradedPiece { basis, rank: 0, torsion: Vec::new() };
        }
        let snf = smith_normal_form(echelon.into_iter().map(|(_, row)| row).collect());
        GradedPiece { rank: basis.len() - snf.rank, torsion: snf.torsion(), basis }
    }

    /// Whether a multihomogeneous integer combination of path monomials lies
    /// in the relation ideal (i.e. is zero in the presented algebra).
    pub fn is_zero_element(&self, src: usize, tgt: usize, terms: &[(i64, PathMonomial)]) -> bool {
        // Split by multidegree; each piece must lie in the instance lattice.
        let mut by_deg: BTreeMap<MultiDeg, Vec<(i64, PathMonomial)>> = BTreeMap::new();
        for (c, pm) in terms {
            if *c == 0 {
                continue;
            }
            by_deg.entry(self.monomial_degree(pm)).or_default().push((*c, pm.clone()));
        }
        for (d, piece) in by_deg {
            let basis = self.monomial_basis(src, tgt, &d);
            let index: BTreeMap<PathMonomial, usize> =
                basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut v = vec![BigInt::from(0); basis.len()];
            for (c, pm) in piece {
                let Some(&idx) = index.get(&pm) else {
                    return false; // not even a valid monomial here
                };
                v[idx] += BigInt::from(c);
            }
            if v.iter().all(|x| x == &BigInt::from(0)) {
                continue;
            }
            let rows = self.relation_instances(src, tgt, &d, &index);
            let dense: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|row| {
                    let mut rv = vec![BigInt::from(0); basis.len()];
                    for (idx, coef) in row {
                        rv[*idx] = BigInt::from(*coef);
                    }
                    rv
                })
                .collect();
            let ech = z_row_echelon(dense);
            if !in_row_span(&ech, &v) {
                return false;
            }
        }
        true
    }

    /// Deterministic DOT rendering (vertices and arrows in id order).
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"{graph_name}\" {{\n"));
        for (i, label) in self.vertex_labels.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{label}\"];\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{}\"];\n",
                a.src, a.tgt, a.name
            ));
        }
        out.push_str("}\n");
        out
    }
}

// Shared builder: quiver on `vertices` with arrows between sequences at
// Hamming distance one, a dead-idempotent relation for `dead` vertices,
// square commutation relations, and loop relations against central monomials.
fn sign_sequence_presentation(
    vertices: &[SignSeq],
    dead: impl Fn(&SignSeq) -> bool,
    n: usize,
    central_name: &str,
) -> QuiverPresentation {
    let vertex_index: BTreeMap<&SignSeq, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut arrows = Vec::new();
    let mut arrow_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (vi, alpha) in vertices.iter().enumerate() {
        for i in 0..n {
            let flipped = alpha.flip_at(i);
            if let Some(&vj) = vertex_index.get(&flipped) {
                let mut deg = vec![0; n];
                deg[i] = 1;
                arrow_index.insert((vi, vj), arrows.len());
                arrows.push(Arrow {
                    src: vi,
                    tgt: vj,
                    deg,
                    name: format!("p({alpha},{flipped})"),
                });
            }
        }
    }
    let mut relations = Vec::new();
    // Dead idempotents.
    for (vi, alpha) in vertices.iter().enumerate() {
        if dead(alpha) {
            relations.push(Relation {
                src: vi,
                tgt: vi,
                deg: vec![0; n],
                terms: vec![(1, PathMonomial::path(Vec::new(), n))],
                name: format!("dead e_{alpha}"),
            });
        }
    }
    for (vi, alpha) in vertices.iter().enumerate() {
        // Loops: p(α, α^i) p(α^i, α) = u_i e_α.
        for i in 0..n {
            let beta = alpha.flip_at(i);
            if let Some(&vj) = vertex_index.get(&beta) {
                let out = arrow_index[&(vi, vj)];
                let back = arrow_index[&(vj, vi)];
                let mut central = vec![0; n];
                central[i] = 1;
                let mut deg = vec![0; n];
                deg[i] = 2;
                relations.push(Relation {
                    src: vi,
                    tgt: vi,
                    deg,
                    terms: vec![
                        (1, PathMonomial::path(vec![out, back], n)),
                        (-1, PathMonomial { arrows: Vec::new(), central }),
                    ],
                    name: format!("loop {central_name}_{} at {alpha}", i + 1),
                });
            }
        }
        // Squares: p(α,α^i) p(α^i,α^{ij}) = p(α,α^j) p(α^j,α^{ij}).
        for i in 0..n {
            for j in i + 1..n {
                let bi = alpha.flip_at(i);
                let bj = alpha.flip_at(j);
                let bij = bi.flip_at(j);
                let (Some(&v_bi), Some(&v_bj), Some(&v_bij)) = (
                    vertex_index.get(&bi),
                    vertex_index.get(&bj),
                    vertex_index.get(&bij),
                ) else {
                    continue;
                };
                let mut deg = vec![0; n];
                deg[i] = 1;
                deg[j] = 1;
                relations.push(Relation {
                    src: vi,
                    tgt: v_bij,
                    deg,
                    terms: vec![
                        (
                            1,
                            PathMonomial::path(
                                vec![arrow_index[&(vi, v_bi)], arrow_index[&(v_bi, v_bij)]],
                                n,
                            ),
                        ),
                        (
                            -1,
                            PathMonomial::path(
                                vec![arrow_index[&(vi, v_bj)], arrow_index[&(v_bj, v_bij)]],
                                n,
                            ),
                        ),
                    ],
                    name: format!("square at {alpha} ({},{})", i + 1, j + 1),
                });
            }
        }
    }
    QuiverPresentation::new(
        vertices.iter().map(|v| v.to_string()).collect(),
        n,
        true,
        arrows,
        relations,
    )
}

/// The presentation of `B~(V)`: vertices are the bounded sequences, with
/// relations killing bounded-infeasible idempotents, commuting squares, and
/// loops equal to `u_i`.
pub fn btilde_presentation(alg: &BTilde) -> QuiverPresentation {
    let vertices = alg.bounded().to_vec();
    let n = alg.n();
    let pol = alg.arrangement();
    sign_sequence_presentation(&vertices, |a| !pol.is_feasible(a), n, "u")
}

/// The presentation of `A~(V)` on its own feasibility data: vertices are the
/// feasible sequences, with feasible-unbounded idempotents killed and central
/// generators `t_i`.
pub fn atilde_presentation(pol: &crate::arrangement::PolarizedArrangement) -> QuiverPresentation {
    let census = pol
        .enumerate_sets(crate::arrangement::DEFAULT_ENUMERATION_CAP)
        .expect("enumeration cap");
    let vertices: Vec<SignSeq> = census.feasible.iter().cloned().collect();
    sign_sequence_presentation(&vertices, |a| !pol.is_bounded(a), pol.n(), "t")
}
