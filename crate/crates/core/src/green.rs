//! Green's relations on finite semigroups.
//!
//! [`green_brute`] works from principal ideals of an arbitrary Cayley table.
//! The `analytic_*` functions decide the same relations on `A^+(B_n)` from
//! supports and images alone; [`cross_check`] compares the two.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brandt::{self, BrandtElem};
use crate::closure::{FiniteSemigroup, NearSemiring, Reduct};
use crate::error::{Error, Result};
use crate::map::FMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    R,
    L,
    D,
    J,
    H,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::R,
        Relation::L,
        Relation::D,
        Relation::J,
        Relation::H,
    ];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Relation::R),
            "L" | "l" => Ok(Relation::L),
            "D" | "d" => Ok(Relation::D),
            "J" | "j" => Ok(Relation::J),
            "H" | "h" => Ok(Relation::H),
            _ => Err(Error::Parse(format!("unknown relation {s:?}"))),
        }
    }
}

/// A partition of `0..order` into classes. Classes are sorted ascending and
/// listed by their least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Groups indices with equal keys.
    pub fn from_keys<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::new();
        for (i, k) in keys.into_iter().enumerate() {
            let next = ids.len();
            let id = *ids.entry(k).or_insert(next);
            if id == classes.len() {
                classes.push(Vec::new());
            }
            classes[id].push(i);
            class_of.push(id);
        }
        Partition { classes, class_of }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_containing(&self, x: usize) -> &[usize] {
        &self.classes[self.class_of[x]]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| coarser.related(c[0], x)))
    }

    /// Sorted class sizes.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    fn join(a: &Partition, b: &Partition) -> Partition {
        let n = a.class_of.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for p in [a, b] {
            for class in &p.classes {
                for &x in &class[1..] {
                    let (ra, rb) = (find(&mut parent, class[0]), find(&mut parent, x));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        Partition::from_keys(roots)
    }
}

/// Green's structure of a finite semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenStructure {
    pub r: Partition,
    pub l: Partition,
    pub d: Partition,
    pub j: Partition,
    pub h: Partition,
    pub idempotent: Vec<bool>,
    pub regular: Vec<bool>,
    /// Least `m ≥ 1` with the `m`-th power regular; `None` if not found
    /// within `|S|` steps.
    pub eventual_index: Vec<Option<usize>>,
}

impl GreenStructure {
    pub fn order(&self) -> usize {
        self.idempotent.len()
    }

    pub fn relation(&self, rel: Relation) -> &Partition {
        match rel {
            Relation::R => &self.r,
            Relation::L => &self.l,
            Relation::D => &self.d,
            Relation::J => &self.j,
            Relation::H => &self.h,
        }
    }

    pub fn idempotents(&self) -> Vec<usize> {
        flagged(&self.idempotent)
    }

    pub fn regular_elements(&self) -> Vec<usize> {
        flagged(&self.regular)
    }

    pub fn d_equals_j(&self) -> bool {
        self.d == self.j
    }

    /// Structural invariants: `H ⊆ R, L ⊆ D`, `D = J`, idempotents regular.
    pub fn is_consistent(&self) -> bool {
        self.h.refines(&self.r)
            && self.h.refines(&self.l)
            && self.r.refines(&self.d)
            && self.l.refines(&self.d)
            && self.d_equals_j()
            && self
                .idempotent
                .iter()
                .zip(&self.regular)
                .all(|(&e, &r)| !e || r)
    }

    pub fn to_json(&self) -> GreenJson {
        let classes = |p: &Partition| p.classes().to_vec();
        GreenJson {
            r: classes(&self.r),
            l: classes(&self.l),
            d: classes(&self.d),
            j: classes(&self.j),
            h: classes(&self.h),
            idempotents: self.idempotents(),
            regular: self.regular_elements(),
            eventual_index: self.eventual_index.clone(),
        }
    }
}

fn flagged(flags: &[bool]) -> Vec<usize> {
    flags
        .iter()
        .enumerate()
        .filter_map(|(i, &f)| f.then_some(i))
        .collect()
}

/// JSON export of a [`GreenStructure`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenJson {
    #[serde(rename = "R")]
    pub r: Vec<Vec<usize>>,
    #[serde(rename = "L")]
    pub l: Vec<Vec<usize>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<usize>>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<usize>>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<usize>>,
    pub idempotents: Vec<usize>,
    pub regular: Vec<usize>,
    pub eventual_index: Vec<Option<usize>>,
}

pub fn idempotents(sg: &FiniteSemigroup) -> Vec<usize> {
    (0..sg.order()).filter(|&a| sg.op(a, a) == a).collect()
}

pub fn is_regular(sg: &FiniteSemigroup, a: usize) -> bool {
    (0..sg.order()).any(|y| sg.op(sg.op(a, y), a) == a)
}

pub fn regular_elements(sg: &FiniteSemigroup) -> Vec<usize> {
    let flags: Vec<bool> = (0..sg.order())
        .into_par_iter()
        .map(|a| is_regular(sg, a))
        .collect();
    flagged(&flags)
}

/// Least `m` with `a^m` regular, searching `m ≤ |S|`.
pub fn eventual_regularity(sg: &FiniteSemigroup, regular: &[bool]) -> Vec<Option<usize>> {
    (0..sg.order())
        .map(|a| {
            let mut power = a;
            for m in 1..=sg.order() {
                if regular[power] {
                    return Some(m);
                }
                power = sg.op(power, a);
            }
            None
        })
        .collect()
}

/// Green's relations from principal ideals with an identity adjoined:
/// `aS¹`, `S¹a`, `S¹aS¹`. `D` is the join of `R` and `L`; `J` is computed
/// independently from two-sided ideals.
pub fn green_brute(sg: &FiniteSemigroup) -> GreenStructure {
    let order = sg.order();
    let ideals = |left: bool| -> Vec<FixedBitSet> {
        (0..order)
            .into_par_iter()
            .map(|a| {
                let mut set = FixedBitSet::with_capacity(order);
                set.insert(a);
                for s in 0..order {
                    set.insert(if left { sg.op(s, a) } else { sg.op(a, s) });
                }
                set
            })
            .collect()
    };
    let right = ideals(false);
    let left = ideals(true);
    let two_sided: Vec<FixedBitSet> = right
        .par_iter()
        .map(|ra| {
            let mut set = FixedBitSet::with_capacity(order);
            for x in ra.ones() {
                set.union_with(&left[x]);
            }
            set
        })
        .collect();

    let r = Partition::from_keys(right.iter());
    let l = Partition::from_keys(left.iter());
    let j = Partition::from_keys(two_sided.iter());
    let d = Partition::join(&r, &l);
    let h = Partition::from_keys((0..order).map(|a| (r.class_of(a), l.class_of(a))));

    let idempotent: Vec<bool> = (0..order).map(|a| sg.op(a, a) == a).collect();
    let regular: Vec<bool> = (0..order)
        .into_par_iter()
        .map(|a| is_regular(sg, a))
        .collect();
    let eventual_index = eventual_regularity(sg, &regular);
    GreenStructure {
        r,
        l,
        d,
        j,
        h,
        idempotent,
        regular,
        eventual_index,
    }
}

/// Class counts and class-size multisets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsRecord {
    pub r: usize,
    pub l: usize,
    pub d: usize,
    pub j: usize,
    pub h: usize,
    pub idempotents: usize,
    pub regular: usize,
    pub class_sizes: BTreeMap<Relation, Vec<usize>>,
}

pub fn class_counts(gs: &GreenStructure) -> CountsRecord {
    CountsRecord {
        r: gs.r.len(),
        l: gs.l.len(),
        d: gs.d.len(),
        j: gs.j.len(),
        h: gs.h.len(),
        idempotents: gs.idempotent.iter().filter(|&&x| x).count(),
        regular: gs.regular.iter().filter(|&&x| x).count(),
        class_sizes: Relation::ALL
            .iter()
            .map(|&rel| (rel, gs.relation(rel).sizes()))
            .collect(),
    }
}

/// Per-element data the analytic classifiers read.
#[derive(Clone, Debug)]
pub struct Profile {
    n: usize,
    support: u128,
    support_size: usize,
    image: u128,
    constant: bool,
    /// `(αfπ₁, αfπ₂)` per element code, `None` off the support.
    coords: Vec<Option<(usize, usize)>>,
}

impl Profile {
    pub fn new(f: &FMap) -> Self {
        let n = f.n();
        Profile {
            n,
            support: f.support_mask(),
            support_size: f.support_size(),
            image: f.image_mask(),
            constant: f.constant_value().is_some(),
            coords: brandt::elements(n)
                .into_iter()
                .map(|a| match f.eval(a) {
                    BrandtElem::Pair(p, q) => Some((p, q)),
                    BrandtElem::Zero => None,
                })
                .collect(),
        }
    }

    fn shape_ok(&self) -> bool {
        let (s, n) = (self.support_size, self.n);
        s == 0 || s == 1 || s == n || s == n * n + 1
    }

    fn same_projection(&self, other: &Profile, pick: fn((usize, usize)) -> usize) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => pick(*x) == pick(*y),
                (None, None) => true,
                _ => false,
            })
    }
}

fn check_pair(f: &Profile, g: &Profile) -> Result<()> {
    if f.n != g.n {
        return Err(Error::SizeMismatch {
            left: f.n,
            right: g.n,
        });
    }
    for p in [f, g] {
        if !p.shape_ok() {
            return Err(Error::NotAffineElement(format!(
                "support size {} is not 0, 1, n or n²+1",
                p.support_size
            )));
        }
    }
    Ok(())
}

/// Green's relations on `(A^+(B_n), +)` by support and projections.
pub fn analytic_additive(f: &Profile, g: &Profile, rel: Relation) -> Result<bool> {
    check_pair(f, g)?;
    if f.support != g.support {
        return Ok(false);
    }
    let n = f.n;
    let s = f.support_size;
    let equal = f.coords == g.coords;
    let rows = f.same_projection(g, |(p, _)| p);
    let cols = f.same_projection(g, |(_, q)| q);
    Ok(if s == 0 {
        true
    } else if s == 1 || s == n * n + 1 {
        match rel {
            Relation::R => rows,
            Relation::L => cols,
            Relation::H => rows && cols,
            Relation::D | Relation::J => true,
        }
    } else {
        // n-support: L and H are trivial, D = R.
        match rel {
            Relation::R | Relation::D | Relation::J => rows,
            Relation::L | Relation::H => equal,
        }
    })
}

/// Green's relations on `(A^+(B_n), ∘)` by support, image and constancy.
pub fn analytic_multiplicative(f: &Profile, g: &Profile, rel: Relation) -> Result<bool> {
    check_pair(f, g)?;
    let r = match (f.constant, g.constant) {
        (true, true) => true,
        (false, false) => f.support == g.support,
        _ => false,
    };
    let l = f.image == g.image;
    Ok(match rel {
        Relation::R => r,
        Relation::L => l,
        Relation::H => r && l,
        Relation::D | Relation::J => f.support_size == g.support_size || (f.constant && g.constant),
    })
}

pub fn green_analytic_additive(f: &FMap, g: &FMap, rel: Relation) -> Result<bool> {
    analytic_additive(&Profile::new(f), &Profile::new(g), rel)
}

pub fn green_analytic_multiplicative(f: &FMap, g: &FMap, rel: Relation) -> Result<bool> {
    analytic_multiplicative(&Profile::new(f), &Profile::new(g), rel)
}

pub fn analytic(reduct: Reduct, f: &Profile, g: &Profile, rel: Relation) -> Result<bool> {
    match reduct {
        Reduct::Additive => analytic_additive(f, g, rel),
        Reduct::Multiplicative => analytic_multiplicative(f, g, rel),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub reduct: Reduct,
    pub relation: Relation,
    pub a: usize,
    pub b: usize,
    pub brute: bool,
    pub analytic: bool,
}

/// First pair (in index order) on which the analytic classifier and the
/// brute-force partition disagree, over every pair and every relation.
pub fn cross_check(
    ns: &NearSemiring,
    reduct: Reduct,
    gs: &GreenStructure,
) -> Result<Option<Disagreement>> {
    let profiles: Vec<Profile> = ns.elements().iter().map(Profile::new).collect();
    let order = profiles.len();
    let found = (0..order)
        .into_par_iter()
        .map(|a| -> Result<Option<Disagreement>> {
            for b in 0..order {
                for rel in Relation::ALL {
                    let brute = gs.relation(rel).related(a, b);
                    let guess = analytic(reduct, &profiles[a], &profiles[b], rel)?;
                    if brute != guess {
                        return Ok(Some(Disagreement {
                            reduct,
                            relation: rel,
                            a,
                            b,
                            brute,
                            analytic: guess,
                        }));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::a_plus;
    use crate::map::{render, CanonicalElem};

    fn cm(s: &str, n: usize) -> FMap {
        render(&s.parse::<CanonicalElem>().unwrap(), n).unwrap()
    }

    #[test]
    fn trivial_semigroup() {
        let sg = FiniteSemigroup::new("trivial", 1, vec![0]).unwrap();
        let gs = green_brute(&sg);
        for rel in Relation::ALL {
            assert_eq!(gs.relation(rel).len(), 1);
        }
        assert!(gs.is_consistent());
        assert_eq!(gs.eventual_index, vec![Some(1)]);
    }

    #[test]
    fn brandt_b2_as_semigroup() {
        // B_2 itself: R by first coordinate, L by second, one nonzero D-class.
        let sg = FiniteSemigroup::from_fn("B_2", 5, |a, b| {
            brandt::add_codes(a as u8, b as u8, 2) as usize
        })
        .unwrap();
        let gs = green_brute(&sg);
        assert_eq!(gs.r.len(), 3);
        assert_eq!(gs.l.len(), 3);
        assert_eq!(gs.d.sizes(), vec![1, 4]);
        assert_eq!(gs.h.len(), 5);
        assert_eq!(idempotents(&sg), vec![0, 1, 4]);
        assert_eq!(regular_elements(&sg).len(), 5);
    }

    #[test]
    fn a_plus_b2_counts() {
        let ns = a_plus(2).unwrap();
        let add = class_counts(&green_brute(ns.additive()));
        assert_eq!((add.r, add.l, add.d, add.h), (15, 19, 10, 29));
        assert_eq!((add.idempotents, add.regular), (11, 21));
        let mul = class_counts(&green_brute(ns.multiplicative()));
        assert_eq!((mul.r, mul.l, mul.d, mul.h), (7, 11, 3, 25));
        assert_eq!(mul.class_sizes[&Relation::D], vec![5, 8, 16]);
        assert_eq!((mul.idempotents, mul.regular), (11, 29));
    }

    #[test]
    fn analytic_examples() {
        let n = 2;
        let a = |s| cm(s, n);
        assert!(green_analytic_additive(&a("xi(1,1)"), &a("xi(1,2)"), Relation::R).unwrap());
        assert!(
            !green_analytic_additive(&a("(1,1;[1,2])"), &a("(1,1;[2,1])"), Relation::L).unwrap()
        );
        let f = a("(1,2;[2,1])");
        assert!(green_analytic_additive(&f, &f, Relation::D).unwrap());
        assert!(green_analytic_multiplicative(&a("xi(1,1)"), &a("xi_theta"), Relation::R).unwrap());
        assert!(
            green_analytic_multiplicative(&a("(1,1;[1,2])"), &a("(2,2;[2,1])"), Relation::D)
                .unwrap()
        );
        assert!(green_analytic_multiplicative(
            &a("<(1,1)->(1,2)>"),
            &a("<(2,2)->(1,2)>"),
            Relation::L
        )
        .unwrap());
    }

    #[test]
    fn analytic_errors() {
        let f = cm("xi(1,1)", 2);
        let g = cm("xi(1,1)", 3);
        assert!(matches!(
            green_analytic_additive(&f, &g, Relation::R),
            Err(Error::SizeMismatch { .. })
        ));
        let id = FMap::identity(2).unwrap();
        assert!(green_analytic_multiplicative(&f, &id, Relation::R).is_err());
    }

    #[test]
    fn cross_check_n2() {
        let ns = a_plus(2).unwrap();
        for r in [Reduct::Additive, Reduct::Multiplicative] {
            let gs = green_brute(ns.reduct(r));
            assert!(gs.is_consistent());
            assert_eq!(cross_check(&ns, r, &gs).unwrap(), None);
        }
    }

    #[test]
    fn cross_check_reports_tampering() {
        let ns = a_plus(2).unwrap();
        let mut gs = green_brute(ns.additive());
        // merge the singleton L-classes of two n-support maps
        let (c21, c22) = (gs.l.class_of(21), gs.l.class_of(22));
        gs.l = Partition::from_keys((0..29).map(|i| {
            let c = gs.l.class_of(i);
            if c == c22 {
                c21
            } else {
                c
            }
        }));
        let d = cross_check(&ns, Reduct::Additive, &gs).unwrap().unwrap();
        assert_eq!((d.relation, d.a, d.b), (Relation::L, 21, 22));
    }

    #[test]
    fn partition_join_and_refinement() {
        let a = Partition::from_keys([0, 0, 1, 2, 2]);
        let b = Partition::from_keys([0, 1, 1, 2, 3]);
        let j = Partition::join(&a, &b);
        assert_eq!(j.classes(), &[vec![0, 1, 2], vec![3, 4]]);
        assert!(a.refines(&j) && b.refines(&j));
        assert!(!j.refines(&a));
    }

    #[test]
    fn eventual_index_n2() {
        let ns = a_plus(2).unwrap();
        let gs = green_brute(ns.additive());
        for (i, f) in ns.elements().iter().enumerate() {
            let expected = if f.support_size() == 2 { 2 } else { 1 };
            assert_eq!(gs.eventual_index[i], Some(expected), "{}", f.label());
        }
    }
}
