use hyperconv::arrangement::{reference_left, sign::SignSeq};
use hyperconv::convalg::{btilde_presentation, multidegrees_up_to, BTilde};
use std::time::Instant;

fn main() {
    for (n, k) in [(3usize, 1usize), (4, 1), (4, 2)] {
        let t = Instant::now();
        let alg = BTilde::new(reference_left(n, k).unwrap()).unwrap();
        let pres = btilde_presentation(&alg);
        let labels: Vec<SignSeq> =
            pres.vertex_labels.iter().map(|l| SignSeq::parse(l).unwrap()).collect();
        let mut cells = 0usize;
        let mut nonzero = 0usize;
        for (vi, a) in labels.iter().enumerate() {
            for (vj, b) in labels.iter().enumerate() {
                for d in multidegrees_up_to(n, 6) {
                    let piece = pres.graded_piece(vi, vj, &d);
                    let canonical = alg.graded_rank(a, b, &d);
                    assert_eq!(piece.rank, canonical, "({a},{b}) at {d:?}");
                    assert!(piece.torsion.is_empty());
                    cells += 1;
                    nonzero += canonical;
                }
            }
        }
        println!("acc3 ({n},{k}): {cells} cells, {nonzero} nonzero, {:?}", t.elapsed());
    }
}
