//! Total maps on `B_n` and the canonical classification of `A^+(B_n)` elements.
//!
//! Arguments are written on the left: `γ(f + g) = γf + γg` and
//! `γ(f ∘ g) = (γf)g`, so [`FMap::compose`] applies `self` first.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::brandt::{self, add_codes, BrandtElem};
use crate::error::{Error, Result};
use crate::perm::{enumerate_sn, Perm};

/// A function table on `B_n`, indexed by element code (see [`BrandtElem::code`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FMap {
    n: usize,
    table: Vec<u8>,
}

impl FMap {
    pub fn from_fn(n: usize, mut f: impl FnMut(BrandtElem) -> BrandtElem) -> Result<Self> {
        check_n(n)?;
        let table = brandt::elements(n)
            .into_iter()
            .map(|a| {
                let b = f(a);
                match b {
                    BrandtElem::Pair(i, j) if !b.is_valid(n) => {
                        Err(Error::IndexOutOfRange { i, j, n })
                    }
                    _ => Ok(b.code(n) as u8),
                }
            })
            .collect::<Result<_>>()?;
        Ok(FMap { n, table })
    }

    pub fn from_codes(n: usize, table: Vec<u8>) -> Result<Self> {
        check_n(n)?;
        let order = brandt::order(n);
        if table.len() != order {
            return Err(Error::SizeMismatch {
                left: table.len(),
                right: order,
            });
        }
        if let Some(&bad) = table.iter().find(|&&c| c as usize >= order) {
            return Err(Error::Parse(format!(
                "table cell {bad} out of range for B_{n}"
            )));
        }
        Ok(FMap { n, table })
    }

    /// The constant map `ξ_α`.
    pub fn constant(alpha: BrandtElem, n: usize) -> Result<Self> {
        if let BrandtElem::Pair(i, j) = alpha {
            if !alpha.is_valid(n) {
                return Err(Error::IndexOutOfRange { i, j, n });
            }
        }
        Self::from_fn(n, |_| alpha)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::constant(BrandtElem::Zero, n)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |a| a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn codes(&self) -> &[u8] {
        &self.table
    }

    pub fn eval(&self, alpha: BrandtElem) -> BrandtElem {
        BrandtElem::from_code(self.table[alpha.code(self.n)] as usize, self.n)
    }

    fn same_n(&self, other: &FMap) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Pointwise sum `f + g`.
    pub fn add(&self, other: &FMap) -> Result<FMap> {
        self.same_n(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &FMap) -> FMap {
        let n = self.n;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| add_codes(a, b, n))
            .collect();
        FMap { n, table }
    }

    /// `f ∘ g`: apply `self`, then `other`.
    pub fn compose(&self, other: &FMap) -> Result<FMap> {
        self.same_n(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &FMap) -> FMap {
        let table = self
            .table
            .iter()
            .map(|&a| other.table[a as usize])
            .collect();
        FMap { n: self.n, table }
    }

    /// `supp(f) = {α : αf ≠ ϑ}` in canonical order.
    pub fn support(&self) -> Vec<BrandtElem> {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(a, _)| BrandtElem::from_code(a, self.n))
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.table.iter().filter(|&&c| c != 0).count()
    }

    /// `supp(f)` as a bitmask over element codes (`n ≤ 11` fits in 128 bits).
    pub fn support_mask(&self) -> u128 {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0, |m, (a, _)| m | (1u128 << a))
    }

    /// `Im(f)`, including `ϑ` when attained.
    pub fn image(&self) -> BTreeSet<BrandtElem> {
        self.table
            .iter()
            .map(|&c| BrandtElem::from_code(c as usize, self.n))
            .collect()
    }

    pub fn image_mask(&self) -> u128 {
        self.table.iter().fold(0, |m, &c| m | (1u128 << c))
    }

    /// The common second coordinate of all nonzero images, if there is one.
    pub fn image_invariant(&self) -> Option<usize> {
        self.image()
            .into_iter()
            .filter_map(BrandtElem::col)
            .dedup()
            .exactly_one()
            .ok()
    }

    /// `αfπ₁`: first coordinate of the image of `α`, `None` if `αf = ϑ`.
    pub fn first_projection(&self, alpha: BrandtElem) -> Option<usize> {
        self.eval(alpha).row()
    }

    /// `αfπ₂`: second coordinate of the image of `α`, `None` if `αf = ϑ`.
    pub fn second_projection(&self, alpha: BrandtElem) -> Option<usize> {
        self.eval(alpha).col()
    }

    pub fn constant_value(&self) -> Option<BrandtElem> {
        let first = self.table[0];
        self.table
            .iter()
            .all(|&c| c == first)
            .then(|| BrandtElem::from_code(first as usize, self.n))
    }

    /// `(α + β)f = αf + βf` for all `α, β`.
    pub fn is_endomorphism(&self) -> bool {
        let n = self.n;
        let order = self.table.len();
        (0..order).all(|a| {
            (0..order).all(|b| {
                let sum = add_codes(a as u8, b as u8, n) as usize;
                self.table[sum] == add_codes(self.table[a], self.table[b], n)
            })
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.table.iter().all_unique()
    }

    /// Canonical text when the map lies in `A^+(B_n)`; `phi[σ]` for
    /// automorphisms; otherwise the raw table.
    pub fn label(&self) -> String {
        if let Ok(c) = classify(self) {
            return c.to_string();
        }
        if let Some(sigma) = as_automorphism(self) {
            return format!("phi{sigma}");
        }
        let cells = brandt::elements(self.n)
            .into_iter()
            .map(|a| format!("{a}->{}", self.eval(a)))
            .join(",");
        format!("table[{cells}]")
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    if n > brandt::MAX_N {
        return Err(Error::ExceedsCap {
            n,
            cap: brandt::MAX_N,
        });
    }
    Ok(())
}

/// Recovers `σ` when `f = φ_σ`, i.e. `(i,j) ↦ (iσ, jσ)` and `ϑ ↦ ϑ`.
pub fn as_automorphism(f: &FMap) -> Option<Perm> {
    if f.table[0] != 0 {
        return None;
    }
    let n = f.n;
    let images = (1..=n)
        .map(|i| f.eval(BrandtElem::Pair(i, i)).row())
        .collect::<Option<Vec<_>>>()?;
    let sigma = Perm::new(images).ok()?;
    let matches = (1..=n).cartesian_product(1..=n).all(|(i, j)| {
        f.eval(BrandtElem::Pair(i, j)) == BrandtElem::Pair(sigma.apply(i), sigma.apply(j))
    });
    matches.then_some(sigma)
}

/// Classification of an element of `A^+(B_n)`.
///
/// Variant order is the canonical element order: zero, constants, singleton
/// support maps, then `n`-support maps `(k, q; σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalElem {
    Zero,
    /// `ξ_α` for nonzero `α`.
    Constant(BrandtElem),
    /// `⟨(k,l) → (p,q)⟩`: support `{(k,l)}`, image `(p,q)`.
    Singleton {
        src: (usize, usize),
        dst: (usize, usize),
    },
    /// `(k, q; σ)`: support column `k`, `(i,k) ↦ (iσ, q)`.
    NSupport {
        k: usize,
        q: usize,
        sigma: Perm,
    },
}

impl CanonicalElem {
    pub fn support_size(&self, n: usize) -> usize {
        match self {
            CanonicalElem::Zero => 0,
            CanonicalElem::Constant(_) => n * n + 1,
            CanonicalElem::Singleton { .. } => 1,
            CanonicalElem::NSupport { .. } => n,
        }
    }
}

impl fmt::Display for CanonicalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalElem::Zero => f.write_str("xi_theta"),
            CanonicalElem::Constant(a) => write!(f, "xi{a}"),
            CanonicalElem::Singleton { src, dst } => {
                write!(f, "<({},{})->({},{})>", src.0, src.1, dst.0, dst.1)
            }
            CanonicalElem::NSupport { k, q, sigma } => write!(f, "({k},{q};{sigma})"),
        }
    }
}

impl FromStr for CanonicalElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a canonical element: {s:?}"));
        let s = s.trim();
        if s == "xi_theta" {
            return Ok(CanonicalElem::Zero);
        }
        if let Some(rest) = s.strip_prefix("xi") {
            return match rest.parse::<BrandtElem>()? {
                BrandtElem::Zero => Err(bad()),
                a => Ok(CanonicalElem::Constant(a)),
            };
        }
        if let Some(inner) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
            let (a, b) = inner.split_once("->").ok_or_else(bad)?;
            let as_pair = |t: &str| match t.parse::<BrandtElem>() {
                Ok(BrandtElem::Pair(i, j)) => Ok((i, j)),
                _ => Err(bad()),
            };
            return Ok(CanonicalElem::Singleton {
                src: as_pair(a)?,
                dst: as_pair(b)?,
            });
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (kq, sigma) = inner.split_once(';').ok_or_else(bad)?;
        let (k, q) = kq.split_once(',').ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let q: usize = q.trim().parse().map_err(|_| bad())?;
        let sigma: Perm = serde_json::from_str(sigma.trim()).map_err(|_| bad())?;
        Ok(CanonicalElem::NSupport { k, q, sigma })
    }
}

impl Serialize for CanonicalElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Classifies a table into one of the four `A^+(B_n)` shapes.
///
/// At `n = 1` the only nonconstant, nonzero element is the identity, which is
/// both of singleton and of `n`-support; it is reported as `(1,1;[1])`.
pub fn classify(f: &FMap) -> Result<CanonicalElem> {
    let n = f.n;
    let not_affine = || Error::NotAffineElement(describe_raw(f));
    let supp = f.support();
    if supp.is_empty() {
        return Ok(CanonicalElem::Zero);
    }
    if let Some(alpha) = f.constant_value() {
        return Ok(CanonicalElem::Constant(alpha));
    }
    if supp.contains(&BrandtElem::Zero) {
        return Err(not_affine());
    }
    if supp.len() == n {
        let k = supp[0].col().expect("nonzero");
        let q = f.image_invariant().ok_or_else(not_affine)?;
        if supp.iter().any(|a| a.col() != Some(k)) {
            return Err(not_affine());
        }
        let images = (1..=n)
            .map(|i| {
                f.first_projection(BrandtElem::Pair(i, k))
                    .expect("in support")
            })
            .collect();
        let sigma = Perm::new(images).map_err(|_| not_affine())?;
        return Ok(CanonicalElem::NSupport { k, q, sigma });
    }
    if supp.len() == 1 {
        let src = supp[0];
        let dst = f.eval(src);
        if let (BrandtElem::Pair(k, l), BrandtElem::Pair(p, q)) = (src, dst) {
            return Ok(CanonicalElem::Singleton {
                src: (k, l),
                dst: (p, q),
            });
        }
    }
    Err(not_affine())
}

fn describe_raw(f: &FMap) -> String {
    format!(
        "n={} table [{}]",
        f.n,
        f.table
            .iter()
            .map(|&c| BrandtElem::from_code(c as usize, f.n))
            .join(", ")
    )
}

/// Builds the table denoted by a canonical element.
pub fn render(c: &CanonicalElem, n: usize) -> Result<FMap> {
    check_n(n)?;
    let pair = |(i, j): (usize, usize)| BrandtElem::pair(i, j, n);
    match c {
        CanonicalElem::Zero => FMap::zero(n),
        CanonicalElem::Constant(a) => match a {
            BrandtElem::Zero => Err(Error::NotAffineElement(
                "the zero constant is written xi_theta".into(),
            )),
            BrandtElem::Pair(i, j) => FMap::constant(pair((*i, *j))?, n),
        },
        CanonicalElem::Singleton { src, dst } => {
            if n == 1 {
                return Err(Error::NotAffineElement(
                    "at n = 1 the singleton-support map is written (1,1;[1])".into(),
                ));
            }
            let (src, dst) = (pair(*src)?, pair(*dst)?);
            FMap::from_fn(n, |a| if a == src { dst } else { BrandtElem::Zero })
        }
        CanonicalElem::NSupport { k, q, sigma } => {
            pair((*k, *q))?;
            if sigma.degree() != n {
                return Err(Error::SizeMismatch {
                    left: sigma.degree(),
                    right: n,
                });
            }
            FMap::from_fn(n, |a| match a {
                BrandtElem::Pair(i, j) if j == *k => BrandtElem::Pair(sigma.apply(i), *q),
                _ => BrandtElem::Zero,
            })
        }
    }
}

/// Every canonical element for `n`, in canonical order.
pub fn canonical_elements(n: usize) -> Vec<CanonicalElem> {
    let pairs: Vec<(usize, usize)> = (1..=n).cartesian_product(1..=n).collect();
    let mut out = vec![CanonicalElem::Zero];
    out.extend(
        pairs
            .iter()
            .map(|&(i, j)| CanonicalElem::Constant(BrandtElem::Pair(i, j))),
    );
    if n >= 2 {
        for &src in &pairs {
            for &dst in &pairs {
                out.push(CanonicalElem::Singleton { src, dst });
            }
        }
    }
    let perms = enumerate_sn(n);
    for &(k, q) in &pairs {
        for sigma in &perms {
            out.push(CanonicalElem::NSupport {
                k,
                q,
                sigma: sigma.clone(),
            });
        }
    }
    out
}
