//! Sign sequences, sign variation statistics, and the dots-in-regions
//! bijections for left/right cyclic arrangements.

use crate::error::{Error, Result};
use crate::qlinalg::Rat;
use num::Signed;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// `(-1)^k`.
    pub fn pow_minus_one(k: usize) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Element of `{+,-}^n`. Ordering is lexicographic with `+` before `-`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignSeq(pub Vec<Sign>);

impl fmt::Debug for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl SignSeq {
    pub fn parse(s: &str) -> Result<SignSeq> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::Parse(format!("invalid sign character `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignSeq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    /// All `2^n` sequences in lexicographic order (`+` first).
    pub fn all(n: usize) -> impl Iterator<Item = SignSeq> {
        assert!(n < usize::BITS as usize);
        (0u64..(1 << n)).map(move |mask| {
            SignSeq(
                (0..n)
                    .map(|i| {
                        if mask >> (n - 1 - i) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            )
        })
    }

    /// The sequence with the sign at `i` (0-based) flipped.
    pub fn flip_at(&self, i: usize) -> SignSeq {
        let mut v = self.0.clone();
        v[i] = v[i].flip();
        SignSeq(v)
    }

    pub fn negate(&self) -> SignSeq {
        SignSeq(self.0.iter().map(|s| s.flip()).collect())
    }

    /// 0-based positions where the two sequences differ.
    pub fn flips(&self, other: &SignSeq) -> Vec<usize> {
        assert_eq!(self.len(), other.len());
        (0..self.len()).filter(|&i| self.0[i] != other.0[i]).collect()
    }

    /// Insert sign `s` at 0-based position `i` (the paper's `ι_{i,s}` with
    /// 1-based `i+1`).
    pub fn insert(&self, i: usize, s: Sign) -> SignSeq {
        let mut v = self.0.clone();
        v.insert(i, s);
        SignSeq(v)
    }

    /// Remove the sign at 0-based position `i`.
    pub fn remove(&self, i: usize) -> SignSeq {
        let mut v = self.0.clone();
        v.remove(i);
        SignSeq(v)
    }

    pub fn as_i8(&self) -> Vec<i8> {
        self.0.iter().map(|s| s.as_i8()).collect()
    }
}

/// Number of sign alternations, ignoring zeros.
pub fn var(seq: &[i8]) -> usize {
    let mut count = 0;
    let mut last: Option<i8> = None;
    for &s in seq {
        if s == 0 {
            continue;
        }
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Maximum of `var` over all resolutions of zeros into `+`/`-`.
///
/// Computed blockwise: a run of `g` zeros between fixed signs contributes
/// `g+1` alternations when the parity works out and `g` otherwise; leading
/// and trailing runs always contribute their full length.
pub fn var_bar(seq: &[i8]) -> usize {
    let n = seq.len();
    let nz: Vec<usize> = (0..n).filter(|&i| seq[i] != 0).collect();
    let Some((&first, &last)) = nz.first().zip(nz.last()) else {
        return n.saturating_sub(1);
    };
    let mut total = first + (n - 1 - last);
    for w in nz.windows(2) {
        let g = w[1] - w[0] - 1;
        let flip = seq[w[0]] != seq[w[1]];
        let full = if flip { g % 2 == 0 } else { g % 2 == 1 };
        total += if full { g + 1 } else { g };
    }
    total
}

pub fn signs_of(v: &[Rat]) -> Vec<i8> {
    v.iter()
        .map(|r| {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// Negates the even-index coordinates (1-based indexing: positions 2, 4, ...).
pub fn alt_i8(v: &[i8]) -> Vec<i8> {
    v.iter().enumerate().map(|(i, &s)| if i % 2 == 1 { -s } else { s }).collect()
}

/// `var_l(α) = var(+α)`.
pub fn var_l(alpha: &SignSeq) -> usize {
    let mut v = vec![1i8];
    v.extend(alpha.as_i8());
    var(&v)
}

/// `var_r(α) = var(α · (-1)^k)`.
pub fn var_r(alpha: &SignSeq, k: usize) -> usize {
    let mut v = alpha.as_i8();
    v.push(Sign::pow_minus_one(k).as_i8());
    var(&v)
}

/// Sets of dots in regions: `k`-element subsets of `{0..n-1}` (left flavor),
/// `{1..n}` (right flavor) or `{1..n-1}` (core).
pub type DotSet = BTreeSet<usize>;

pub fn dots_to_string(x: &DotSet) -> String {
    let inner: Vec<String> = x.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Bijection `P -> V_l(n,k)` for a left cyclic arrangement: dot `i` records a
/// sign change after position `i+1` of `+α`. Requires `var_l(α) = k`.
pub fn kappa_l(alpha: &SignSeq, k: usize) -> Result<DotSet> {
    if var_l(alpha) != k {
        return Err(Error::Precondition(format!(
            "kappa_l needs var_l(α) = {k}, got {} for {alpha}",
            var_l(alpha)
        )));
    }
    let mut padded = vec![Sign::Plus];
    padded.extend(alpha.0.iter().copied());
    Ok((0..alpha.len()).filter(|&i| padded[i] != padded[i + 1]).collect())
}

/// Inverse of [`kappa_l`]: rebuild `α` by walking left to right from a
/// leading `+`, flipping at step `i` exactly when `i-1` is a dot.
pub fn kappa_l_inv(x: &DotSet, n: usize) -> Result<SignSeq> {
    if x.iter().any(|&i| i >= n) {
        return Err(Error::Precondition(format!("dot out of range for V_l({n},k)")));
    }
    let mut prev = Sign::Plus;
    let mut out = Vec::with_capacity(n);
    for step in 1..=n {
        let s = if x.contains(&(step - 1)) { prev.flip() } else { prev };
        out.push(s);
        prev = s;
    }
    Ok(SignSeq(out))
}

/// Bijection `P -> V_r(n,k)` for a right cyclic arrangement: dot `i` records
/// a sign change after position `i` of `α·(-1)^k`. Requires `var_r(α) = k`.
pub fn kappa_r(alpha: &SignSeq, k: usize) -> Result<DotSet> {
    if var_r(alpha, k) != k {
        return Err(Error::Precondition(format!(
            "kappa_r needs var_r(α) = {k}, got {} for {alpha}",
            var_r(alpha, k)
        )));
    }
    let n = alpha.len();
    let mut padded = alpha.0.clone();
    padded.push(Sign::pow_minus_one(k));
    Ok((1..=n).filter(|&i| padded[i - 1] != padded[i]).collect())
}

/// Inverse of [`kappa_r`]: rebuild `α` right to left starting from the
/// appended sign `(-1)^k`, flipping at position `j` exactly when `j` is a dot.
pub fn kappa_r_inv(x: &DotSet, n: usize, k: usize) -> Result<SignSeq> {
    if x.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::Precondition(format!("dot out of range for V_r({n},k)")));
    }
    let mut prev = Sign::pow_minus_one(k);
    let mut out = vec![Sign::Plus; n];
    for j in (1..=n).rev() {
        let s = if x.contains(&j) { prev.flip() } else { prev };
        out[j - 1] = s;
        prev = s;
    }
    Ok(SignSeq(out))
}
