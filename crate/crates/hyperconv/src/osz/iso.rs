//! The inverse isomorphisms between `B(n,k)`-variants and `B~(V)` for
//! left/right cyclic `V`, verified generator-by-generator and through
//! independent graded-rank computations.

use super::{ArrowKind, OszAlgebra, OszSum, OszVariant};
use crate::arrangement::sign::{kappa_l, kappa_l_inv, kappa_r, kappa_r_inv, SignSeq};
use crate::arrangement::{is_left_cyclic, is_right_cyclic, reference_left, reference_right};
use crate::convalg::center::truncated_polynomial_monomial_count;
use crate::convalg::{
    btilde_presentation, center_graded, multidegrees_up_to, BElem, BTilde, Monomial,
};
use crate::error::{Error, Result};

/// The structure map `Φ: B(n,k)-variant -> B~(V)`: vertices map through the
/// inverse dots bijection, `R`/`L` arrows to the `f` generators, and `U_i`
/// loops to `u_i e_α`.
pub struct Phi<'a> {
    pub osz: &'a OszAlgebra,
    pub target: &'a BTilde,
    vertex_seq: Vec<SignSeq>,
}

impl<'a> Phi<'a> {
    pub fn new(osz: &'a OszAlgebra, target: &'a BTilde) -> Result<Phi<'a>> {
        let spec = osz.spec;
        if (spec.n, spec.k) != (target.n(), target.k()) {
            return Err(Error::Shape("Φ requires matching (n,k)".into()));
        }
        let cyclic_ok = match spec.variant {
            OszVariant::Left | OszVariant::Prime => is_left_cyclic(target.arrangement()),
            OszVariant::Right => is_right_cyclic(target.arrangement()),
            OszVariant::Full => false,
        };
        if !cyclic_ok {
            return Err(Error::Precondition(
                "Φ requires a left (resp. right) cyclic arrangement matching the variant".into(),
            ));
        }
        let vertex_seq: Vec<SignSeq> = osz
            .vertices
            .iter()
            .map(|x| match spec.variant {
                OszVariant::Left | OszVariant::Prime => kappa_l_inv(x, spec.n),
                OszVariant::Right => kappa_r_inv(x, spec.n, spec.k),
                OszVariant::Full => unreachable!(),
            })
            .collect::<Result<_>>()?;
        for seq in &vertex_seq {
            if !target.pset().contains(seq) {
                return Err(Error::Precondition(format!(
                    "κ^{{-1}} image {seq} is not bounded feasible"
                )));
            }
        }
        if spec.variant == OszVariant::Prime {
            for seq in &vertex_seq {
                if !target.kset().contains(seq) {
                    return Err(Error::Precondition(format!(
                        "prime vertex {seq} is not compact"
                    )));
                }
            }
        }
        Ok(Phi { osz, target, vertex_seq })
    }

    pub fn vertex_sequence(&self, v: usize) -> &SignSeq {
        &self.vertex_seq[v]
    }

    pub fn vertex_elem(&self, v: usize) -> BElem {
        self.target.idempotent(&self.vertex_seq[v])
    }

    pub fn arrow_elem(&self, aid: usize) -> BElem {
        let arrow = &self.osz.pres.arrows[aid];
        let info = self.osz.info[aid];
        let src = &self.vertex_seq[arrow.src];
        let tgt = &self.vertex_seq[arrow.tgt];
        match info.kind {
            ArrowKind::R | ArrowKind::L => self.target.f_generator(src, tgt),
            ArrowKind::U => {
                let mut expo = vec![0usize; self.target.n()];
                expo[info.i - 1] = 1;
                self.target.monomial(src, tgt, expo)
            }
        }
    }

    pub fn eval_sum(&self, sum: &OszSum) -> BElem {
        let mut out = BElem::zero();
        for ((src, _tgt, arrows), coef) in &sum.terms {
            let mut acc = self.vertex_elem(*src);
            for &aid in arrows {
                acc = self.target.multiply(&acc, &self.arrow_elem(aid));
            }
            out.add_assign(&acc.scaled(*coef));
        }
        out
    }

    /// Maps every defining relation of the quiver presentation to canonical
    /// form and demands zero.
    pub fn verify_well_defined(&self) -> Result<()> {
        for rel in &self.osz.pres.relations {
            let mut image = BElem::zero();
            for (coef, pm) in &rel.terms {
                let mut acc = self.vertex_elem(rel.src);
                for &aid in &pm.arrows {
                    acc = self.target.multiply(&acc, &self.arrow_elem(aid));
                }
                image.add_assign(&acc.scaled(*coef));
            }
            if !image.is_zero() {
                return Err(Error::Precondition(format!(
                    "Φ sends relation `{}` to nonzero {:?}",
                    rel.name, image
                )));
            }
        }
        Ok(())
    }
}

// The inverse map Ψ on generators of the B~ presentation.
struct Psi<'a> {
    source: &'a BTilde,
    osz: &'a OszAlgebra,
}

impl<'a> Psi<'a> {
    fn kappa(&self, alpha: &SignSeq) -> Option<usize> {
        let spec = self.osz.spec;
        let dots = match spec.variant {
            OszVariant::Left | OszVariant::Prime => kappa_l(alpha, spec.k).ok()?,
            OszVariant::Right => kappa_r(alpha, spec.k).ok()?,
            OszVariant::Full => return None,
        };
        self.osz.vertex_of(&dots)
    }

    fn vertex_image(&self, alpha: &SignSeq) -> OszSum {
        match self.kappa(alpha) {
            Some(v) => OszSum::idempotent(v),
            None => OszSum::zero(),
        }
    }

    // p(α, β) for a single sign flip: R_i when the dot moves right
    // (β delays the sign change), L_i when it moves left.
    fn arrow_image(&self, alpha: &SignSeq, beta: &SignSeq) -> OszSum {
        let (Some(va), Some(vb)) = (self.kappa(alpha), self.kappa(beta)) else {
            return OszSum::zero();
        };
        let flips = alpha.flips(beta);
        assert_eq!(flips.len(), 1, "arrow endpoints differ in one position");
        let i = flips[0] + 1; // 1-based line index
        let xa = &self.osz.vertices[va];
        let xb = &self.osz.vertices[vb];
        let kind = if xa.contains(&(i - 1)) && xb.contains(&i) {
            ArrowKind::R
        } else if xa.contains(&i) && xb.contains(&(i - 1)) {
            ArrowKind::L
        } else {
            panic!("flip at {i} does not move a dot between {i}-1 and {i}: library bug");
        };
        let aid = self.osz.arrow(kind, i, va).expect("arrow exists in the variant quiver");
        assert_eq!(self.osz.pres.arrows[aid].tgt, vb);
        OszSum::single(va, vb, vec![aid], 1)
    }

    fn u_image(&self, j: usize) -> OszSum {
        let mut out = OszSum::zero();
        for v in 0..self.osz.vertices.len() {
            let aid = self.osz.arrow(ArrowKind::U, j + 1, v).expect("U loop at every vertex");
            out.add_assign(&OszSum::single(v, v, vec![aid], 1));
        }
        out
    }

    // Image of a canonical monomial with at most one sign flip (idempotents,
    // u-multiples, and f generators): all that the generator checks need.
    fn monomial_image(&self, m: &Monomial) -> OszSum {
        let mut acc = match m.src.flips(&m.tgt).len() {
            0 => self.vertex_image(&m.src),
            1 => self.arrow_image(&m.src, &m.tgt),
            _ => panic!("monomial_image supports at most one flip"),
        };
        for (j, &e) in m.expo.iter().enumerate() {
            for _ in 0..e {
                acc = acc.multiply(&self.u_image(j));
            }
        }
        acc
    }

    // Relations of the B~ presentation map into the relation lattice.
    fn verify_well_defined(&self) -> Result<()> {
        let pres = btilde_presentation(self.source);
        let labels: Vec<SignSeq> = pres
            .vertex_labels
            .iter()
            .map(|l| SignSeq::parse(l).expect("labels are sign sequences"))
            .collect();
        for rel in &pres.relations {
            let mut image = OszSum::zero();
            for (coef, pm) in &rel.terms {
                let mut acc = self.vertex_image(&labels[rel.src]);
                for &aid in &pm.arrows {
                    let arrow = &pres.arrows[aid];
                    acc = acc.multiply(&self.arrow_image(&labels[arrow.src], &labels[arrow.tgt]));
                }
                for (j, &e) in pm.central.iter().enumerate() {
                    for _ in 0..e {
                        acc = acc.multiply(&self.u_image(j));
                    }
                }
                image.add_assign(&acc.scaled(*coef));
            }
            if !image.is_zero_in(self.osz) {
                return Err(Error::Precondition(format!(
                    "Ψ sends relation `{}` outside the relation lattice",
                    rel.name
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
pub struct IsoReport {
    pub checks: Vec<(String, bool, String)>,
}

impl IsoReport {
    fn push(&mut self, name: &str, ok: bool, witness: impl Into<String>) {
        self.checks.push((name.to_string(), ok, witness.into()));
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }

    pub fn summary(&self) -> String {
        self.checks
            .iter()
            .map(|(name, ok, witness)| {
                if *ok {
                    format!("PASS {name}")
                } else {
                    format!("FAIL {name}: {witness}")
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Runs the full isomorphism verification for the Left or Right variant on
/// the reference Vandermonde arrangement: well-definedness of `Φ` and `Ψ`,
/// mutual inversion on generators, graded-rank agreement with no torsion up
/// to the window, and intertwining of the anti-involutions.
pub fn verify_isomorphism(
    n: usize,
    k: usize,
    variant: OszVariant,
    window: usize,
) -> Result<IsoReport> {
    let pol = match variant {
        OszVariant::Left => reference_left(n, k)?,
        OszVariant::Right => reference_right(n, k)?,
        _ => {
            return Err(Error::Precondition(
                "verify_isomorphism runs on the Left and Right variants".into(),
            ))
        }
    };
    let alg = BTilde::new(pol)?;
    let osz = OszAlgebra::new(super::OszSpec { n, k, variant })?;
    let phi = Phi::new(&osz, &alg)?;
    let psi = Psi { source: &alg, osz: &osz };
    let mut report = IsoReport::default();

    report.push(
        "Φ well-defined",
        phi.verify_well_defined().is_ok(),
        phi.verify_well_defined().err().map(|e| e.to_string()).unwrap_or_default(),
    );
    report.push(
        "Ψ well-defined",
        psi.verify_well_defined().is_ok(),
        psi.verify_well_defined().err().map(|e| e.to_string()).unwrap_or_default(),
    );

    // Ψ∘Φ = id on quiver generators.
    let mut psiphi_ok = true;
    let mut witness = String::new();
    for v in 0..osz.vertices.len() {
        let img = psi.monomial_image(
            phi.vertex_elem(v).terms.keys().next().expect("idempotents are nonzero"),
        );
        if img != OszSum::idempotent(v) {
            psiphi_ok = false;
            witness = format!("idempotent {v}");
        }
    }
    for aid in 0..osz.pres.arrows.len() {
        let phi_a = phi.arrow_elem(aid);
        if phi_a.is_zero() {
            // U_i killed by relation (5); Ψ has nothing to invert here.
            continue;
        }
        let mut img = OszSum::zero();
        for (m, c) in &phi_a.terms {
            img.add_assign(&psi.monomial_image(m).scaled(*c));
        }
        let arrow = &osz.pres.arrows[aid];
        let mut diff = img;
        diff.add_assign(&OszSum::single(arrow.src, arrow.tgt, vec![aid], -1));
        if !diff.is_zero_in(&osz) {
            psiphi_ok = false;
            witness = format!("arrow {}", arrow.name);
        }
    }
    report.push("Ψ∘Φ = id on generators", psiphi_ok, witness);

    // Φ∘Ψ = id on B~ generators.
    let mut phipsi_ok = true;
    let mut witness = String::new();
    let ps = alg.pset().to_vec();
    for a in &ps {
        if phi.eval_sum(&psi.vertex_image(a)) != alg.idempotent(a) {
            phipsi_ok = false;
            witness = format!("e_{a}");
        }
        for b in &ps {
            if a.flips(b).len() == 1 {
                let f = alg.f_generator(a, b);
                if phi.eval_sum(&psi.arrow_image(a, b)) != f {
                    phipsi_ok = false;
                    witness = format!("f[{a},{b}]");
                }
            }
        }
    }
    for j in 0..n {
        if phi.eval_sum(&psi.u_image(j)) != alg.u_generator(j) {
            phipsi_ok = false;
            witness = format!("u_{}", j + 1);
        }
    }
    report.push("Φ∘Ψ = id on generators", phipsi_ok, witness);

    // Graded ranks agree with the canonical monomial count; no torsion.
    let mut ranks_ok = true;
    let mut witness = String::new();
    'ranks: for (vi, x) in osz.vertices.iter().enumerate() {
        for (vj, y) in osz.vertices.iter().enumerate() {
            let a = phi.vertex_sequence(vi);
            let b = phi.vertex_sequence(vj);
            for d in multidegrees_up_to(n, window) {
                let piece = osz.pres.graded_piece(vi, vj, &d);
                let canonical = alg.graded_rank(a, b, &d);
                if piece.rank != canonical || !piece.torsion.is_empty() {
                    ranks_ok = false;
                    witness = format!(
                        "pair ({x:?},{y:?}) degree {d:?}: presented {} (torsion {:?}) vs canonical {canonical}",
                        piece.rank, piece.torsion
                    );
                    break 'ranks;
                }
            }
        }
    }
    report.push(&format!("graded ranks agree (Σd ≤ {window}, torsion-free)"), ranks_ok, witness);

    // Φ intertwines ψ_OSz with ψ on B~.
    let mut psi_ok = true;
    let mut witness = String::new();
    for aid in 0..osz.pres.arrows.len() {
        let mate = osz.psi_arrow(aid);
        let lhs = phi.arrow_elem(mate);
        let rhs = alg.psi(&phi.arrow_elem(aid));
        if lhs != rhs {
            psi_ok = false;
            witness = format!("arrow {}", osz.pres.arrows[aid].name);
        }
    }
    report.push("Φ ∘ ψ_OSz = ψ ∘ Φ on generators", psi_ok, witness);

    Ok(report)
}

/// The prime truncation against `B~'`: ranks over compact idempotent pairs
/// computed three ways (left polarization, right polarization, and the Prime
/// quiver presentation) must agree — in particular they are ξ-independent.
pub fn verify_prime_truncation(n: usize, k: usize, window: usize) -> Result<IsoReport> {
    let alg_l = BTilde::new(reference_left(n, k)?)?;
    let alg_r = BTilde::new(reference_right(n, k)?)?;
    let prime = OszAlgebra::new(super::OszSpec { n, k, variant: OszVariant::Prime })?;
    let mut report = IsoReport::default();

    let mut seqs: Vec<SignSeq> = Vec::new();
    let mut bij_ok = true;
    for x in &prime.vertices {
        let via_l = kappa_l_inv(x, n)?;
        let via_r = kappa_r_inv(x, n, k)?;
        if via_l != via_r || !alg_l.kset().contains(&via_l) || !alg_r.kset().contains(&via_l) {
            bij_ok = false;
        }
        seqs.push(via_l);
    }
    report.push("κ_l and κ_r agree on compact regions", bij_ok, "");

    let mut ranks_ok = true;
    let mut witness = String::new();
    'outer: for (vi, a) in seqs.iter().enumerate() {
        for (vj, b) in seqs.iter().enumerate() {
            for d in multidegrees_up_to(n, window) {
                let via_left = alg_l.graded_rank(a, b, &d);
                let via_right = alg_r.graded_rank(a, b, &d);
                let piece = prime.pres.graded_piece(vi, vj, &d);
                if via_left != via_right || piece.rank != via_left || !piece.torsion.is_empty() {
                    ranks_ok = false;
                    witness = format!(
                        "pair ({a},{b}) degree {d:?}: left {via_left}, right {via_right}, prime {}",
                        piece.rank
                    );
                    break 'outer;
                }
            }
        }
    }
    report.push(
        &format!("B~' ranks ξ-independent and equal B'(n,k) (Σd ≤ {window})"),
        ranks_ok,
        witness,
    );
    Ok(report)
}

#[derive(Debug)]
pub struct CenterReport {
    /// `(degree, commutant rank, truncated-polynomial count)`.
    pub per_degree: Vec<(usize, usize, usize)>,
    pub u_sums_central: bool,
}

impl CenterReport {
    pub fn ok(&self) -> bool {
        self.u_sums_central && self.per_degree.iter().all(|(_, got, want)| got == want)
    }
}

/// Centers of `B_l(n,k)`/`B_r(n,k)` through the isomorphism: the commutant
/// ranks of `B~(V)` must match the monomial counts of
/// `Z[U_1..U_n]/(squarefree (k+1)-fold products)` degree by degree, and the
/// element `Σ_x U_i I_x` (alias `u_i·1`) must be central.
pub fn center_check(n: usize, k: usize, variant: OszVariant, bound: usize) -> Result<CenterReport> {
    let pol = match variant {
        OszVariant::Left => reference_left(n, k)?,
        OszVariant::Right => reference_right(n, k)?,
        _ => return Err(Error::Precondition("center_check runs on Left or Right".into())),
    };
    let alg = BTilde::new(pol)?;
    let mut per_degree = Vec::new();
    for degree in 0..=bound {
        let piece = center_graded(&alg, degree);
        per_degree.push((degree, piece.rank, truncated_polynomial_monomial_count(n, k, degree)));
    }
    let mut u_sums_central = true;
    let ps = alg.pset().to_vec();
    for j in 0..n {
        let u = alg.u_generator(j);
        for a in &ps {
            for b in &ps {
                let f = alg.f_generator(a, b);
                if alg.multiply(&u, &f) != alg.multiply(&f, &u) {
                    u_sums_central = false;
                }
            }
        }
    }
    Ok(CenterReport { per_degree, u_sums_central })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_left_2_1() {
        let report = verify_isomorphism(2, 1, OszVariant::Left, 4).unwrap();
        assert!(report.ok(), "{}", report.summary());
    }

    #[test]
    fn iso_right_2_1() {
        let report = verify_isomorphism(2, 1, OszVariant::Right, 4).unwrap();
        assert!(report.ok(), "{}", report.summary());
    }

    #[test]
    fn iso_left_3_2() {
        let report = verify_isomorphism(3, 2, OszVariant::Left, 3).unwrap();
        assert!(report.ok(), "{}", report.summary());
    }

    #[test]
    fn prime_truncation_3_1() {
        let report = verify_prime_truncation(3, 1, 3).unwrap();
        assert!(report.ok(), "{}", report.summary());
    }

    #[test]
    fn center_small() {
        let report = center_check(2, 1, OszVariant::Left, 4).unwrap();
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.per_degree[2], (2, 2, 2));
        assert_eq!(report.per_degree[4], (4, 2, 2));
    }
}
