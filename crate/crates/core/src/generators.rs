//! `End(B_n)`, `Aut(B_n)`, `Aff(B_n)` and the constant maps.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::brandt::{self, BrandtElem};
use crate::error::{Error, Result};
use crate::formulas::factorial;
use crate::map::{classify, render, CanonicalElem, FMap};
use crate::perm::{enumerate_sn, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    End,
    Aut,
    Aff,
    ConstAll,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::End => "End",
            GeneratorKind::Aut => "Aut",
            GeneratorKind::Aff => "Aff",
            GeneratorKind::ConstAll => "ConstAll",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "end" => Ok(GeneratorKind::End),
            "aut" => Ok(GeneratorKind::Aut),
            "aff" => Ok(GeneratorKind::Aff),
            "const" | "constall" | "const-all" => Ok(GeneratorKind::ConstAll),
            _ => Err(Error::Parse(format!("unknown generator kind {s:?}"))),
        }
    }
}

/// A named family of maps on `B_n`, distinct and in canonical order.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    n: usize,
    kind: GeneratorKind,
    members: Vec<FMap>,
}

/// JSON form of a [`GeneratorSet`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSetJson {
    pub n: usize,
    pub kind: GeneratorKind,
    pub count: usize,
    pub members: Vec<String>,
}

impl GeneratorSet {
    fn new(n: usize, kind: GeneratorKind, members: Vec<FMap>) -> Self {
        let set = GeneratorSet { n, kind, members };
        assert_eq!(
            set.members.len() as u128,
            expected_size(n, kind),
            "{kind} size for n = {n}"
        );
        set
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn members(&self) -> &[FMap] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_json(&self) -> GeneratorSetJson {
        GeneratorSetJson {
            n: self.n,
            kind: self.kind,
            count: self.members.len(),
            members: self.members.iter().map(FMap::label).collect(),
        }
    }
}

fn expected_size(n: usize, kind: GeneratorKind) -> u128 {
    let (n_, f) = (n as u128, factorial(n));
    match kind {
        GeneratorKind::End => f + n_ + 1,
        GeneratorKind::Aut => f,
        GeneratorKind::Aff => (f + 1) * n_ * n_ + 1,
        GeneratorKind::ConstAll => n_ * n_ + 1,
    }
}

/// `φ_σ : (i,j) ↦ (iσ, jσ)`, `ϑ ↦ ϑ`.
pub fn phi_sigma(sigma: &Perm) -> FMap {
    FMap::from_fn(sigma.degree(), |a| match a {
        BrandtElem::Pair(i, j) => BrandtElem::Pair(sigma.apply(i), sigma.apply(j)),
        BrandtElem::Zero => BrandtElem::Zero,
    })
    .expect("degree within range")
}

pub fn enumerate_aut(n: usize) -> Result<GeneratorSet> {
    check(n)?;
    let members = enumerate_sn(n).iter().map(phi_sigma).collect();
    Ok(GeneratorSet::new(n, GeneratorKind::Aut, members))
}

/// `End(B_n)`: `ξ_ϑ`, `ξ_(k,k)`, then `φ_σ` in `S_n` order.
pub fn enumerate_end(n: usize) -> Result<GeneratorSet> {
    check(n)?;
    let mut members: Vec<FMap> = brandt::brandt_idempotents(n)
        .into_iter()
        .map(|a| FMap::constant(a, n))
        .collect::<Result<_>>()?;
    members.extend(enumerate_sn(n).iter().map(phi_sigma));
    Ok(GeneratorSet::new(n, GeneratorKind::End, members))
}

pub fn enumerate_constants(n: usize) -> Result<GeneratorSet> {
    check(n)?;
    let members = brandt::elements(n)
        .into_iter()
        .map(|a| FMap::constant(a, n))
        .collect::<Result<_>>()?;
    Ok(GeneratorSet::new(n, GeneratorKind::ConstAll, members))
}

/// `Aff(B_n) = {g + ξ : g ∈ End(B_n), ξ constant}`, built from all sums and
/// deduplicated, sorted in canonical `A^+(B_n)` order.
pub fn enumerate_aff(n: usize) -> Result<GeneratorSet> {
    let end = enumerate_end(n)?;
    let consts = enumerate_constants(n)?;
    let mut sums = BTreeSet::new();
    for g in end.members() {
        for xi in consts.members() {
            sums.insert(g.add(xi)?);
        }
    }
    let mut keyed = sums
        .into_iter()
        .map(|f| classify(&f).map(|c| (c, f)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort();
    let members = keyed.into_iter().map(|(_, f)| f).collect();
    Ok(GeneratorSet::new(n, GeneratorKind::Aff, members))
}

pub fn enumerate(n: usize, kind: GeneratorKind) -> Result<GeneratorSet> {
    match kind {
        GeneratorKind::End => enumerate_end(n),
        GeneratorKind::Aut => enumerate_aut(n),
        GeneratorKind::Aff => enumerate_aff(n),
        GeneratorKind::ConstAll => enumerate_constants(n),
    }
}

fn check(n: usize) -> Result<()> {
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

/// The `n`-support map with triple `(k, q; σ)`.
pub fn triple_to_map(k: usize, q: usize, sigma: &Perm, n: usize) -> Result<FMap> {
    render(
        &CanonicalElem::NSupport {
            k,
            q,
            sigma: sigma.clone(),
        },
        n,
    )
}

/// Inverse of [`triple_to_map`].
pub fn map_to_triple(f: &FMap) -> Result<(usize, usize, Perm)> {
    let size = f.support_size();
    if size != f.n() {
        return Err(Error::NotNSupport(size));
    }
    match classify(f)? {
        CanonicalElem::NSupport { k, q, sigma } => Ok((k, q, sigma)),
        _ => Err(Error::NotNSupport(size)),
    }
}

/// Every table in `M(B_n)` that is an endomorphism. Exponential in `n`;
/// intended as an oracle for `n ≤ 2` (`5⁵` tables).
pub fn brute_force_endomorphisms(n: usize) -> Result<Vec<FMap>> {
    check(n)?;
    let order = brandt::order(n);
    let total = (order as u64).pow(order as u32);
    let mut out = Vec::new();
    let mut table = vec![0u8; order];
    for mut idx in 0..total {
        for cell in table.iter_mut() {
            *cell = (idx % order as u64) as u8;
            idx /= order as u64;
        }
        let f = FMap::from_codes(n, table.clone())?;
        if f.is_endomorphism() {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::as_automorphism;

    #[test]
    fn phi_sigma_examples() {
        assert_eq!(phi_sigma(&Perm::identity(3)), FMap::identity(3).unwrap());
        let swap = Perm::new(vec![2, 1]).unwrap();
        assert_eq!(
            phi_sigma(&swap).eval(BrandtElem::Pair(1, 2)),
            BrandtElem::Pair(2, 1)
        );
        for n in 1..=4 {
            for s in enumerate_sn(n) {
                let id = phi_sigma(&s).compose(&phi_sigma(&s.inverse())).unwrap();
                assert_eq!(id, FMap::identity(n).unwrap());
            }
        }
    }

    #[test]
    fn end_matches_brute_force_oracle() {
        for n in 1..=2 {
            let oracle: BTreeSet<FMap> =
                brute_force_endomorphisms(n).unwrap().into_iter().collect();
            let end: BTreeSet<FMap> = enumerate_end(n)
                .unwrap()
                .members()
                .iter()
                .cloned()
                .collect();
            assert_eq!(oracle, end);
        }
        assert_eq!(enumerate_end(2).unwrap().len(), 5);
        assert_eq!(enumerate_end(1).unwrap().len(), 3);
    }

    #[test]
    fn end_members_are_endomorphisms() {
        for n in 1..=4 {
            let end = enumerate_end(n).unwrap();
            assert!(end.members().iter().all(FMap::is_endomorphism));
            let distinct: BTreeSet<_> = end.members().iter().collect();
            assert_eq!(distinct.len(), end.len());
        }
    }

    #[test]
    fn aut_is_bijective_part_of_end_and_isomorphic_to_sn() {
        for n in 1..=4 {
            let end = enumerate_end(n).unwrap();
            let bij: Vec<_> = end
                .members()
                .iter()
                .filter(|f| f.is_bijective())
                .cloned()
                .collect();
            assert_eq!(bij, enumerate_aut(n).unwrap().members());
            let perms = enumerate_sn(n);
            for s in &perms {
                for t in &perms {
                    let lhs = phi_sigma(&s.compose(t).unwrap());
                    let rhs = phi_sigma(s).compose(&phi_sigma(t)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn aff_sizes_and_shape() {
        assert_eq!(enumerate_aff(2).unwrap().len(), 13);
        for n in 2..=4 {
            let aff = enumerate_aff(n).unwrap();
            let nsup = aff
                .members()
                .iter()
                .filter(|f| f.support_size() == n)
                .count();
            assert_eq!(nsup as u128, factorial(n) * (n * n) as u128);
            let zero = FMap::zero(n).unwrap();
            assert!(aff.members().contains(&zero));
            for f in aff.members() {
                if f.eval(BrandtElem::Zero) != BrandtElem::Zero {
                    assert!(matches!(f.constant_value(), Some(BrandtElem::Pair(..))));
                }
                let s = f.support_size();
                assert!(s == 0 || s == n || s == n * n + 1);
            }
        }
        assert!(enumerate_aff(1)
            .unwrap()
            .members()
            .contains(&FMap::zero(1).unwrap()));
    }

    #[test]
    fn triples_round_trip_and_are_distinct() {
        let m = triple_to_map(1, 2, &Perm::identity(2), 2).unwrap();
        assert_eq!(map_to_triple(&m).unwrap(), (1, 2, Perm::identity(2)));
        let mut tables = BTreeSet::new();
        for k in 1..=3 {
            for q in 1..=3 {
                for s in enumerate_sn(3) {
                    let f = triple_to_map(k, q, &s, 3).unwrap();
                    // φ_σ + ξ_(kσ, q) has support column k
                    let via_sum = phi_sigma(&s)
                        .add(&FMap::constant(BrandtElem::Pair(s.apply(k), q), 3).unwrap())
                        .unwrap();
                    assert_eq!(f, via_sum);
                    assert_eq!(map_to_triple(&f).unwrap(), (k, q, s));
                    tables.insert(f);
                }
            }
        }
        assert_eq!(tables.len(), 54);
        let c = FMap::constant(BrandtElem::Pair(1, 1), 2).unwrap();
        assert!(matches!(map_to_triple(&c), Err(Error::NotNSupport(5))));
    }

    #[test]
    fn json_labels() {
        let json = enumerate_end(2).unwrap().to_json();
        assert_eq!(json.count, 5);
        assert_eq!(
            json.members,
            vec!["xi_theta", "xi(1,1)", "xi(2,2)", "phi[1,2]", "phi[2,1]"]
        );
        assert!(enumerate_aut(3)
            .unwrap()
            .members()
            .iter()
            .all(|f| as_automorphism(f).is_some()));
    }
}
