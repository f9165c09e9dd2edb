//! Subsemigroup reports and isomorphism certificates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::brandt::{self, BrandtElem};
use crate::closure::{FiniteSemigroup, NearSemiring, Reduct};
use crate::error::{Error, Result};
use crate::generators::{enumerate_aut, phi_sigma};
use crate::green::{idempotents, is_regular};
use crate::map::FMap;
use crate::perm::{enumerate_sn, Perm};

/// Named subsets of `A^+(B_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subset {
    All,
    /// Regular elements of the additive reduct.
    K,
    /// Everything except the full-support maps.
    N,
    Constants,
    /// Singleton-support maps together with `ξ_ϑ`.
    SingletonIdeal,
}

impl Subset {
    pub const ALL: [Subset; 5] = [
        Subset::All,
        Subset::K,
        Subset::N,
        Subset::Constants,
        Subset::SingletonIdeal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subset::All => "all",
            Subset::K => "K",
            Subset::N => "N",
            Subset::Constants => "constants",
            Subset::SingletonIdeal => "singleton-ideal",
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subset::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSubset(s.to_string()))
    }
}

/// Indices of `subset` inside `ns`, ascending.
pub fn subset_indices(ns: &NearSemiring, subset: Subset) -> Vec<usize> {
    let n = ns.n();
    let full = n * n + 1;
    let add = ns.additive();
    (0..ns.len())
        .filter(|&i| {
            let f = &ns.elements()[i];
            match subset {
                Subset::All => true,
                Subset::K => is_regular(add, i),
                Subset::N => f.support_size() != full,
                Subset::Constants => f.constant_value().is_some(),
                Subset::SingletonIdeal => f.support_size() <= 1,
            }
        })
        .collect()
}

/// Result of checking one explicit bijection against a target operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCheck {
    pub target: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub subset: Subset,
    pub reduct: Reduct,
    pub size: usize,
    pub closed: bool,
    pub regular: bool,
    pub idempotents_commute: bool,
    pub inverse: bool,
    pub orthodox: bool,
    pub isomorphism: Option<IsoCheck>,
    pub witness: Option<String>,
}

/// Closure, regularity, inverse and orthodox verdicts for `subset` under one
/// reduct, plus the isomorphism certificate where one is known.
pub fn structural_checks(ns: &NearSemiring, reduct: Reduct, subset: Subset) -> SubsetReport {
    let indices = subset_indices(ns, subset);
    let isomorphism = match (subset, reduct) {
        (Subset::Constants, Reduct::Additive) => Some(constants_iso(ns)),
        (Subset::SingletonIdeal, Reduct::Additive) => Some(singleton_additive_iso(ns)),
        (Subset::SingletonIdeal, Reduct::Multiplicative) => Some(singleton_multiplicative_iso(ns)),
        _ => None,
    };
    let mut report = SubsetReport {
        subset,
        reduct,
        size: indices.len(),
        closed: false,
        regular: false,
        idempotents_commute: false,
        inverse: false,
        orthodox: false,
        isomorphism,
        witness: None,
    };
    let sg = match ns.reduct(reduct).restrict(&indices) {
        Ok(sg) => sg,
        Err(e) => {
            report.witness = Some(e.to_string());
            return report;
        }
    };
    report.closed = true;
    let non_regular = (0..sg.order()).find(|&a| !is_regular(&sg, a));
    report.regular = non_regular.is_none();
    let idem = idempotents(&sg);
    let commuting = first_pair(&idem, |e, f| sg.op(e, f) != sg.op(f, e));
    report.idempotents_commute = commuting.is_none();
    let band = first_pair(&idem, |e, f| !idem.contains(&sg.op(e, f)));
    report.inverse = report.regular && report.idempotents_commute;
    report.orthodox = report.regular && band.is_none();
    let label = |i: usize| ns.elements()[indices[i]].label();
    report.witness = if let Some(a) = non_regular {
        Some(format!("{} is not regular", label(a)))
    } else if let Some((e, f)) = commuting {
        Some(format!(
            "idempotents {} and {} do not commute",
            label(e),
            label(f)
        ))
    } else if let Some((e, f)) = band {
        Some(format!("{} * {} is not idempotent", label(e), label(f)))
    } else {
        None
    };
    report
}

fn first_pair(xs: &[usize], bad: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    xs.iter()
        .flat_map(|&a| xs.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| bad(a, b))
}

/// Checks that `map` (target index → index in `sg`) is a bijection onto
/// `image` and carries `target_op` to the operation of `sg`.
pub fn check_homomorphism(
    sg: &FiniteSemigroup,
    map: &[usize],
    image: &[usize],
    target_op: impl Fn(usize, usize) -> usize,
    describe: impl Fn(usize) -> String,
) -> Option<String> {
    let mut seen: Vec<usize> = map.to_vec();
    seen.sort_unstable();
    let mut want = image.to_vec();
    want.sort_unstable();
    if seen != want {
        return Some(format!(
            "not a bijection onto the subset ({} targets, {} elements)",
            map.len(),
            image.len()
        ));
    }
    for a in 0..map.len() {
        for b in 0..map.len() {
            let lhs = sg.op(map[a], map[b]);
            let rhs = map[target_op(a, b)];
            if lhs != rhs {
                return Some(format!(
                    "{} * {} maps to {} but should map to {}",
                    describe(a),
                    describe(b),
                    lhs,
                    rhs
                ));
            }
        }
    }
    None
}

fn iso(target: String, witness: Option<String>) -> IsoCheck {
    IsoCheck {
        target,
        holds: witness.is_none(),
        witness,
    }
}

fn index_or_missing(ns: &NearSemiring, f: &FMap) -> usize {
    ns.index_of(f).unwrap_or(usize::MAX)
}

/// `α ↦ ξ_α` from `B_n` onto the constants under `+`.
pub fn constants_iso(ns: &NearSemiring) -> IsoCheck {
    let n = ns.n();
    let elems = brandt::elements(n);
    let map: Vec<usize> = elems
        .iter()
        .map(|&a| FMap::constant(a, n).map_or(usize::MAX, |f| index_or_missing(ns, &f)))
        .collect();
    let witness = check_homomorphism(
        ns.additive(),
        &map,
        &subset_indices(ns, Subset::Constants),
        |a, b| brandt::add_codes(a as u8, b as u8, n) as usize,
        |a| elems[a].to_string(),
    );
    iso(format!("B_{n}"), witness)
}

/// The support point and its image of a singleton-support map.
fn singleton_point(f: &FMap) -> Option<(BrandtElem, BrandtElem)> {
    let supp = f.support();
    (supp.len() == 1).then(|| (supp[0], f.eval(supp[0])))
}

/// `⟨(k,l)→(p,q)⟩ ↦ (p,q)^{(k,l)}` onto the 0-direct union of `n²` copies
/// of `B_n`. Target index: `0` is the shared zero, `1 + c·n² + (code−1)` is
/// the element with code `code` in copy `c`.
pub fn singleton_additive_iso(ns: &NearSemiring) -> IsoCheck {
    let n = ns.n();
    let m = n * n;
    let target_len = 1 + m * m;
    let split = |t: usize| ((t - 1) / m, (t - 1) % m + 1);
    let mut map = vec![usize::MAX; target_len];
    map[0] = index_or_missing(ns, &FMap::zero(n).expect("n ≥ 1"));
    for (i, f) in ns.elements().iter().enumerate() {
        if let Some((src, dst)) = singleton_point(f) {
            map[1 + (src.code(n) - 1) * m + (dst.code(n) - 1)] = i;
        }
    }
    let op = |a: usize, b: usize| {
        if a == 0 || b == 0 {
            return 0;
        }
        let ((ca, xa), (cb, xb)) = (split(a), split(b));
        let sum = brandt::add_codes(xa as u8, xb as u8, n) as usize;
        if ca != cb || sum == 0 {
            0
        } else {
            1 + ca * m + sum - 1
        }
    };
    let describe = |t: usize| {
        if t == 0 {
            "0".to_string()
        } else {
            let (c, x) = split(t);
            format!(
                "{}^{}",
                BrandtElem::from_code(x, n),
                BrandtElem::from_code(c + 1, n)
            )
        }
    };
    let witness = check_homomorphism(
        ns.additive(),
        &map,
        &subset_indices(ns, Subset::SingletonIdeal),
        op,
        describe,
    );
    iso(format!("0-direct union of {m} copies of B_{n}"), witness)
}

/// `⟨α→β⟩ ↦ (ι(α), ι(β))` onto `B_{n²}` under `∘`, where `ι` numbers the
/// nonzero elements of `B_n` by code.
pub fn singleton_multiplicative_iso(ns: &NearSemiring) -> IsoCheck {
    let n = ns.n();
    let m = n * n;
    let mut map = vec![usize::MAX; 1 + m * m];
    map[0] = index_or_missing(ns, &FMap::zero(n).expect("n ≥ 1"));
    for (i, f) in ns.elements().iter().enumerate() {
        if let Some((src, dst)) = singleton_point(f) {
            map[BrandtElem::Pair(src.code(n), dst.code(n)).code(m)] = i;
        }
    }
    let witness = check_homomorphism(
        ns.multiplicative(),
        &map,
        &subset_indices(ns, Subset::SingletonIdeal),
        |a, b| {
            let sum = brandt::brandt_add(BrandtElem::from_code(a, m), BrandtElem::from_code(b, m));
            sum.code(m)
        },
        |t| BrandtElem::from_code(t, m).to_string(),
    );
    iso(format!("B_{m}"), witness)
}

/// `σ ↦ φ_σ` from `S_n` onto `Aut(B_n)`, with `φ_σ∘φ_τ = φ_{σ∘τ}`.
pub fn aut_iso(n: usize) -> Result<IsoCheck> {
    let perms = enumerate_sn(n);
    let auts = enumerate_aut(n)?;
    let maps: Vec<FMap> = perms.iter().map(phi_sigma).collect();
    let mut witness = None;
    if maps.len() != auts.len() || !maps.iter().all(|f| auts.members().contains(f)) {
        witness = Some("σ ↦ φ_σ is not onto Aut(B_n)".to_string());
    }
    'outer: for s in &perms {
        for t in &perms {
            let lhs = phi_sigma(s).compose(&phi_sigma(t))?;
            let st: Perm = s.compose(t)?;
            if lhs != phi_sigma(&st) {
                witness = Some(format!("phi{s} o phi{t} != phi{st}"));
                break 'outer;
            }
        }
    }
    Ok(iso(format!("S_{n}"), witness))
}
