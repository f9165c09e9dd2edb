//! Permutations of `[n]` in one-line notation.
//!
//! Composition follows the right-action convention used for maps in this
//! crate: `i(p∘q) = (ip)q`, i.e. apply `p` first.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// A bijection on `[n]`, stored as the 1-based images of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotAPermutation(images));
            }
            seen[x - 1] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `iσ` for 1-based `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// The unique `i` with `iσ = j`.
    pub fn preimage(&self, j: usize) -> usize {
        self.0.iter().position(|&x| x == j).expect("value in range") + 1
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `self ∘ other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::SizeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Perm(self.0.iter().map(|&x| other.apply(x)).collect()))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Perm(inv)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Perm::new(images).map_err(serde::de::Error::custom)
    }
}

/// All of `S_n` in lexicographic order of one-line notation.
pub fn enumerate_sn(n: usize) -> Vec<Perm> {
    (1..=n).permutations(n).map(Perm).collect()
}

/// Position of `p` in [`enumerate_sn`] order (the Lehmer rank).
pub fn lex_rank(p: &Perm) -> usize {
    let n = p.degree();
    let mut rank = 0;
    for i in 0..n {
        let smaller_later = p.0[i + 1..].iter().filter(|&&x| x < p.0[i]).count();
        rank = rank * (n - i) + smaller_later;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_law_and_self_inverse_transposition() {
        let p = Perm::new(vec![2, 3, 1]).unwrap();
        assert_eq!(Perm::identity(3).compose(&p).unwrap(), p);
        assert_eq!(p.compose(&Perm::identity(3)).unwrap(), p);
        let t = Perm::new(vec![2, 1]).unwrap();
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn composition_applies_left_operand_first() {
        let p = Perm::new(vec![2, 3, 1]).unwrap();
        let q = Perm::new(vec![1, 3, 2]).unwrap();
        let pq = p.compose(&q).unwrap();
        for i in 1..=3 {
            assert_eq!(pq.apply(i), q.apply(p.apply(i)));
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let err = Perm::identity(2).compose(&Perm::identity(3));
        assert!(matches!(
            err,
            Err(Error::SizeMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![0, 1]).is_err());
        assert!(Perm::new(vec![1, 3]).is_err());
    }

    #[test]
    fn enumeration_counts_and_order() {
        for (n, count) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            let all = enumerate_sn(n);
            assert_eq!(all.len(), count);
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, all, "lexicographic and distinct");
            for (r, p) in all.iter().enumerate() {
                assert_eq!(lex_rank(p), r);
                assert_eq!(p.compose(&p.inverse()).unwrap(), Perm::identity(n));
            }
        }
        assert_eq!(enumerate_sn(4).len(), 24);
        assert!(enumerate_sn(3)[0].is_identity());
    }

    #[test]
    fn one_line_serialization() {
        let t = Perm::new(vec![2, 1]).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), "[2,1]");
        assert_eq!(t.to_string(), "[2,1]");
        assert!(serde_json::from_str::<Perm>("[2,2]").is_err());
    }
}
