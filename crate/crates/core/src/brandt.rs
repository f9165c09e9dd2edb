//! The Brandt semigroup `B_n`.
//!
//! `B_n` is `([n] x [n]) ∪ {ϑ}` with `(i,j) + (k,l) = (i,l)` when `j = k` and
//! `ϑ` otherwise; `ϑ` is a two-sided zero. Indices are 1-based everywhere.
//!
//! Elements are linearly ordered: `ϑ` first, then pairs lexicographically.
//! The position of an element in that order is its *code*; function tables in
//! [`crate::map`] are arrays indexed by codes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` whose element codes fit in a `u8` table cell.
pub const MAX_N: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrandtElem {
    Zero,
    Pair(usize, usize),
}

impl BrandtElem {
    /// Checked constructor for a nonzero element of `B_n`.
    pub fn pair(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        Ok(BrandtElem::Pair(i, j))
    }

    pub fn is_zero(self) -> bool {
        self == BrandtElem::Zero
    }

    pub fn is_valid(self, n: usize) -> bool {
        match self {
            BrandtElem::Zero => true,
            BrandtElem::Pair(i, j) => (1..=n).contains(&i) && (1..=n).contains(&j),
        }
    }

    /// First projection `π₁`; `None` on `ϑ`.
    pub fn row(self) -> Option<usize> {
        match self {
            BrandtElem::Zero => None,
            BrandtElem::Pair(i, _) => Some(i),
        }
    }

    /// Second projection `π₂`; `None` on `ϑ`.
    pub fn col(self) -> Option<usize> {
        match self {
            BrandtElem::Zero => None,
            BrandtElem::Pair(_, j) => Some(j),
        }
    }

    /// Position of this element in the canonical order of `B_n`.
    pub fn code(self, n: usize) -> usize {
        match self {
            BrandtElem::Zero => 0,
            BrandtElem::Pair(i, j) => 1 + (i - 1) * n + (j - 1),
        }
    }

    pub fn from_code(code: usize, n: usize) -> Self {
        if code == 0 {
            BrandtElem::Zero
        } else {
            let c = code - 1;
            BrandtElem::Pair(c / n + 1, c % n + 1)
        }
    }
}

impl fmt::Display for BrandtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrandtElem::Zero => f.write_str("theta"),
            BrandtElem::Pair(i, j) => write!(f, "({i},{j})"),
        }
    }
}

impl FromStr for BrandtElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "theta" {
            return Ok(BrandtElem::Zero);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("not a Brandt element: {s:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("not a Brandt element: {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index in {s:?}")))
        };
        let (i, j) = (parse(a)?, parse(b)?);
        if i == 0 || j == 0 {
            return Err(Error::Parse(format!("indices are 1-based: {s:?}")));
        }
        Ok(BrandtElem::Pair(i, j))
    }
}

impl Serialize for BrandtElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BrandtElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `a + b` in `B_n`.
pub fn brandt_add(a: BrandtElem, b: BrandtElem) -> BrandtElem {
    match (a, b) {
        (BrandtElem::Pair(i, j), BrandtElem::Pair(k, l)) if j == k => BrandtElem::Pair(i, l),
        _ => BrandtElem::Zero,
    }
}

/// Checked variant of [`brandt_add`] that validates both operands against `n`.
pub fn brandt_add_checked(a: BrandtElem, b: BrandtElem, n: usize) -> Result<BrandtElem> {
    for x in [a, b] {
        if let BrandtElem::Pair(i, j) = x {
            if !x.is_valid(n) {
                return Err(Error::IndexOutOfRange { i, j, n });
            }
        }
    }
    Ok(brandt_add(a, b))
}

/// Addition on element codes. Hot path for map arithmetic.
#[inline]
pub fn add_codes(a: u8, b: u8, n: usize) -> u8 {
    if a == 0 || b == 0 {
        return 0;
    }
    let (a, b) = (a as usize - 1, b as usize - 1);
    if a % n == b / n {
        (1 + (a / n) * n + b % n) as u8
    } else {
        0
    }
}

/// All `n² + 1` elements of `B_n` in canonical order.
pub fn elements(n: usize) -> Vec<BrandtElem> {
    (0..=n * n).map(|c| BrandtElem::from_code(c, n)).collect()
}

/// `I(B_n) = {(k,k)} ∪ {ϑ}`, in canonical order.
pub fn brandt_idempotents(n: usize) -> Vec<BrandtElem> {
    std::iter::once(BrandtElem::Zero)
        .chain((1..=n).map(|k| BrandtElem::Pair(k, k)))
        .collect()
}

pub fn order(n: usize) -> usize {
    n * n + 1
}
