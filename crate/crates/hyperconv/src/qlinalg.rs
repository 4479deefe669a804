//! Exact rational linear algebra: row reduction, kernels, orthogonal
//! complements, maximal minors (Plücker coordinates) and linear solving over
//! arbitrary-precision rationals.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (guaranteed by the underlying representation).
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` with arbitrary-precision integers.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| mk_err())?;
            let q: BigInt = q.trim().parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Dense matrix over `Rat`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| rat_to_string(&self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Mat {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_i64(rows: Vec<Vec<i64>>) -> Mat {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
    }

    pub fn column(entries: Vec<Rat>) -> Mat {
        let rows = entries.len();
        Mat { rows, cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|l| &self[(i, l)] * &other[(l, j)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self[(i, j)].clone() } else { other[(i, j - self.cols)].clone() }
        })
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self[(i, j)].clone() } else { other[(i - self.rows, j)].clone() }
        })
    }

    pub fn delete_row(&self, i: usize) -> Mat {
        Mat::from_fn(self.rows - 1, self.cols, |r, c| {
            self[(if r < i { r } else { r + 1 }, c)].clone()
        })
    }

    /// Submatrix picking the given rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(idx.len(), self.cols, |r, c| self[(idx[r], c)].clone())
    }

    pub fn scale_row(&mut self, i: usize, by: &Rat) {
        for j in 0..self.cols {
            let v = &self[(i, j)] * by;
            self[(i, j)] = v;
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Reduced row echelon form; returns pivot columns (0-based). Pivot
    /// selection is the first nonzero entry scanning top to bottom, so the
    /// output is deterministic.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..self.cols {
            let Some(nz) = (pr..self.rows).find(|&i| !self[(i, pc)].is_zero()) else {
                continue;
            };
            if nz != pr {
                for j in 0..self.cols {
                    self.data.swap(nz * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = self[(pr, pc)].recip();
            self.scale_row(pr, &inv);
            for i in 0..self.rows {
                if i != pr && !self[(i, pc)].is_zero() {
                    let factor = self[(i, pc)].clone();
                    for j in 0..self.cols {
                        let v = &self[(i, j)] - &factor * &self[(pr, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        pivots
    }

    /// Determinant of a square matrix by fraction-free Bareiss elimination on
    /// an integer rescaling of the rows.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        // Clear denominators rowwise: det = bareiss / prod(row scales).
        let mut scale = Rat::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = num::integer::lcm(lcm, self[(i, j)].denom().clone());
            }
            scale *= Rat::from_integer(lcm.clone());
            m.push(
                (0..n)
                    .map(|j| {
                        let r = &self[(i, j)] * Rat::from_integer(lcm.clone());
                        r.to_integer()
                    })
                    .collect(),
            );
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for r in 0..n - 1 {
            if m[r][r].is_zero() {
                let Some(swap) = (r + 1..n).find(|&i| !m[i][r].is_zero()) else {
                    return Rat::zero();
                };
                m.swap(r, swap);
                sign = -sign;
            }
            for i in r + 1..n {
                for j in r + 1..n {
                    let v = (&m[r][r] * &m[i][j] - &m[i][r] * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][r] = BigInt::zero();
            }
            prev = m[r][r].clone();
        }
        Rat::from_integer(sign * m[n - 1][n - 1].clone()) / scale
    }

    /// Solves `self * y = b` exactly. Returns `None` when inconsistent; when
    /// the system is underdetermined, free variables are set to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let aug = self.hcat(&Mat::column(b.to_vec()));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constant column
        }
        let mut y = vec![Rat::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            y[pc] = r[(row, self.cols)].clone();
        }
        Some(y)
    }

    /// Basis of the null space `{ y : self * y = 0 }`, as matrix columns.
    /// Deterministic: one column per free variable, in increasing order.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut m = Mat::zero(self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            m[(fc, idx)] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                m[(pc, idx)] = -r[(row, fc)].clone();
            }
        }
        m
    }
}

/// Columns spanning the perpendicular of the column span of `basis`.
/// `basis` must have full column rank.
pub fn orthogonal_complement(basis: &Mat) -> Result<Mat> {
    if basis.rank() != basis.cols() {
        return Err(Error::NotABasis);
    }
    Ok(basis.transpose().kernel())
}

/// Orthogonal projection of `v` onto the column span of `basis`
/// (full column rank required), returned as coordinates in the ambient space.
pub fn project_onto_colspan(basis: &Mat, v: &[Rat]) -> Vec<Rat> {
    // Solve (BᵀB) y = Bᵀ v, projection = B y.
    let bt = basis.transpose();
    let gram = bt.mul(basis);
    let rhs = bt.mul_vec(v);
    let y = gram.solve(&rhs).expect("Gram matrix of a full-rank basis is invertible");
    basis.mul_vec(&y)
}

/// Component of `v` perpendicular to the column span of `basis`.
pub fn project_off_colspan(basis: &Mat, v: &[Rat]) -> Vec<Rat> {
    let p = project_onto_colspan(basis, v);
    v.iter().zip(p).map(|(a, b)| a - b).collect()
}

/// Maximal minors of an `n x k` matrix (`n >= k`), keyed by the row subset in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct PluckerVector {
    pub ambient_n: usize,
    pub rank_k: usize,
    pub coords: BTreeMap<Vec<usize>, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignClass {
    /// All maximal minors nonzero and of one sign: membership in the
    /// totally positive Grassmannian (projectively).
    PositiveProjective,
    NotPositive,
}

impl PluckerVector {
    /// Sign vector in lexicographic subset order.
    pub fn sign_vector(&self) -> Vec<i8> {
        self.coords.values().map(sign_of).collect()
    }

    pub fn class(&self) -> SignClass {
        let signs = self.sign_vector();
        if !signs.is_empty() && (signs.iter().all(|&s| s == 1) || signs.iter().all(|&s| s == -1)) {
            SignClass::PositiveProjective
        } else {
            SignClass::NotPositive
        }
    }

    /// Projective sign equality: equal sign vectors up to a global flip.
    pub fn same_projective_signs(&self, other: &PluckerVector) -> bool {
        let a = self.sign_vector();
        let b = other.sign_vector();
        a.len() == b.len()
            && (a == b || a.iter().zip(&b).all(|(x, y)| *x == -*y))
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All size-`k` subsets of `{0..n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets_of_size(n, k)
}

/// Plücker coordinates (all maximal minors) of `m`.
pub fn plucker(m: &Mat) -> Result<PluckerVector> {
    if m.rows() < m.cols() {
        return Err(Error::Shape(format!(
            "plucker needs rows >= cols, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut coords = BTreeMap::new();
    for s in subsets_of_size(m.rows(), m.cols()) {
        let minor = m.select_rows(&s).det();
        coords.insert(s, minor);
    }
    Ok(PluckerVector { ambient_n: m.rows(), rank_k: m.cols(), coords })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity() {
        let (r, p) = Mat::identity(2).rref();
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_vandermonde_column_pair() {
        let m = Mat::from_i64(vec![vec![1, 1], vec![1, 2], vec![1, 3]]);
        let (r, p) = m.rref();
        assert_eq!(r, Mat::from_i64(vec![vec![1, 0], vec![0, 1], vec![0, 0]]));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let (r, p) = Mat::zero(2, 3).rref();
        assert_eq!(r, Mat::zero(2, 3));
        assert!(p.is_empty());
    }

    #[test]
    fn complement_of_ones() {
        let ones = Mat::from_i64(vec![vec![1], vec![1], vec![1], vec![1]]);
        let c = orthogonal_complement(&ones).unwrap();
        assert_eq!(c.rows(), 4);
        assert_eq!(c.cols(), 3);
        assert_eq!(c.rank(), 3);
        for j in 0..3 {
            let dot: Rat = c.col(j).iter().sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn complement_of_e1() {
        let e1 = Mat::from_i64(vec![vec![1], vec![0]]);
        let c = orthogonal_complement(&e1).unwrap();
        assert_eq!((c.rows(), c.cols()), (2, 1));
        assert!(c[(0, 0)].is_zero());
        assert!(!c[(1, 0)].is_zero());
    }

    #[test]
    fn complement_of_vandermonde_is_second_difference() {
        let m = Mat::from_i64(vec![vec![1, 1], vec![1, 2], vec![1, 3]]);
        let c = orthogonal_complement(&m).unwrap();
        assert_eq!((c.rows(), c.cols()), (3, 1));
        // Kernel direction of the dot-product system is proportional to (1,-2,1).
        let v = c.col(0);
        let t = &v[0];
        assert!(!t.is_zero());
        assert_eq!(v[1], rat(-2) * t);
        assert_eq!(v[2], t.clone());
    }

    #[test]
    fn rank_deficient_complement_errors() {
        let m = Mat::from_i64(vec![vec![1, 2], vec![2, 4]]);
        assert!(matches!(orthogonal_complement(&m), Err(Error::NotABasis)));
    }

    #[test]
    fn plucker_ones_column() {
        let m = Mat::from_i64(vec![vec![1], vec![1], vec![1], vec![1]]);
        let p = plucker(&m).unwrap();
        assert_eq!(p.coords.len(), 4);
        assert!(p.coords.values().all(|v| v == &rat(1)));
        assert_eq!(p.class(), SignClass::PositiveProjective);
    }

    #[test]
    fn plucker_vandermonde() {
        let m = Mat::from_i64(vec![vec![1, 1], vec![1, 2], vec![1, 3]]);
        let p = plucker(&m).unwrap();
        assert_eq!(p.coords[&vec![0, 1]], rat(1));
        assert_eq!(p.coords[&vec![0, 2]], rat(2));
        assert_eq!(p.coords[&vec![1, 2]], rat(1));
        assert_eq!(p.class(), SignClass::PositiveProjective);
    }

    #[test]
    fn plucker_identity() {
        let p = plucker(&Mat::identity(2)).unwrap();
        assert_eq!(p.coords.len(), 1);
        assert_eq!(p.coords[&vec![0, 1]], rat(1));
    }

    #[test]
    fn plucker_zero_minor_not_positive() {
        let m = Mat::from_i64(vec![vec![1, 0], vec![0, 1], vec![-1, 0]]);
        let p = plucker(&m).unwrap();
        assert_eq!(p.coords[&vec![0, 2]], rat(0));
        assert_eq!(p.class(), SignClass::NotPositive);
    }

    #[test]
    fn solve_identity() {
        let y = Mat::identity(2).solve(&[ratio(3, 2), rat(-1)]).unwrap();
        assert_eq!(y, vec![ratio(3, 2), rat(-1)]);
    }

    #[test]
    fn solve_two_by_two() {
        let m = Mat::from_i64(vec![vec![1, 1], vec![1, 2]]);
        let y = m.solve(&[rat(1), rat(2)]).unwrap();
        assert_eq!(y, vec![rat(0), rat(1)]);
    }

    #[test]
    fn solve_inconsistent() {
        let m = Mat::from_i64(vec![vec![1], vec![1]]);
        assert!(m.solve(&[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn det_bareiss_matches_hand_value() {
        let m = Mat::from_rows(vec![
            vec![ratio(1, 2), rat(2), rat(3)],
            vec![rat(0), ratio(1, 3), rat(1)],
            vec![rat(1), rat(0), rat(2)],
        ]);
        // expansion by hand
        let expected = ratio(1, 2) * (ratio(1, 3) * rat(2) - rat(0))
            - rat(2) * (rat(0) - rat(1))
            + rat(3) * (rat(0) - ratio(1, 3));
        assert_eq!(m.det(), expected);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), rat(-4));
        assert_eq!(rat_to_string(&ratio(-3, 9)), "-1/3");
        assert_eq!(rat_to_string(&rat(7)), "7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
