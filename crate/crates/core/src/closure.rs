//! Additive closure of a generating set inside `M(B_n)`, the resulting
//! Cayley tables, and axiom validation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{enumerate_aff, GeneratorSet};
use crate::map::{classify, render, CanonicalElem, FMap};

/// Default upper bound on `n` for closure runs.
pub const DEFAULT_N_CAP: usize = 6;

/// Version tag of the on-disk [`NearSemiringJson`] format.
pub const FORMAT_VERSION: u32 = 1;

/// Triples are checked exhaustively up to this many elements, sampled above.
pub const EXHAUSTIVE_ORDER_LIMIT: usize = 200;

pub const SAMPLE_TRIPLES: usize = 100_000;

/// Largest number of cells allowed in one dense Cayley table (about 1 GB of
/// `u32` per reduct). `A^+(B_5)` needs 13.3M, `A^+(B_6)` 742.7M.
pub const TABLE_CELL_BUDGET: u128 = 250_000_000;

const SAMPLE_SEED: u64 = 0x005e_edb4_a2d7;

pub fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    if n > cap {
        return Err(Error::ExceedsCap { n, cap });
    }
    Ok(())
}

/// A finite semigroup given by a dense Cayley table over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    label: String,
    order: usize,
    table: Vec<u32>,
}

impl FiniteSemigroup {
    pub fn new(label: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != order * order {
            return Err(Error::SizeMismatch {
                left: table.len(),
                right: order * order,
            });
        }
        if let Some(pos) = table.iter().position(|&x| x as usize >= order) {
            return Err(Error::NotClosed(format!(
                "product {} * {} = {} is out of range",
                pos / order,
                pos % order,
                table[pos]
            )));
        }
        Ok(FiniteSemigroup {
            label: label.into(),
            order,
            table,
        })
    }

    pub fn from_fn(
        label: impl Into<String>,
        order: usize,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let table = (0..order)
            .flat_map(|a| (0..order).map(move |b| (a, b)))
            .map(|(a, b)| op(a, b) as u32)
            .collect();
        Self::new(label, order, table)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table
            .chunks(self.order.max(1))
            .map(<[u32]>::to_vec)
            .collect()
    }

    pub(crate) fn set(&mut self, a: usize, b: usize, value: usize) {
        self.table[a * self.order + b] = value as u32;
    }

    /// First `(a, b, c)` with `(ab)c ≠ a(bc)`.
    pub fn associativity_witness(&self) -> Option<[usize; 3]> {
        let n = self.order;
        (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Some([a, b, c]);
                    }
                }
            }
            None
        })
    }

    pub fn sampled_associativity_witness(&self, samples: usize) -> Option<[usize; 3]> {
        sample_triples(self.order, samples)
            .into_iter()
            .find(|&[a, b, c]| self.op(self.op(a, b), c) != self.op(a, self.op(b, c)))
    }

    /// The subsemigroup on `subset` (re-indexed in the given order), or a
    /// closure witness.
    pub fn restrict(&self, subset: &[usize]) -> Result<FiniteSemigroup> {
        let position: HashMap<usize, usize> =
            subset.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = Vec::with_capacity(subset.len() * subset.len());
        for &a in subset {
            for &b in subset {
                let ab = self.op(a, b);
                let idx = position.get(&ab).ok_or_else(|| {
                    Error::NotClosed(format!("{a} * {b} = {ab} leaves the subset"))
                })?;
                table.push(*idx as u32);
            }
        }
        FiniteSemigroup::new(self.label.clone(), subset.len(), table)
    }
}

fn sample_triples(order: usize, samples: usize) -> Vec<[usize; 3]> {
    if order == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..samples)
        .map(|_| {
            [
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            ]
        })
        .collect()
}

/// `A^+`-style near-semiring: elements with both Cayley tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearSemiring {
    n: usize,
    elements: Vec<FMap>,
    additive: FiniteSemigroup,
    multiplicative: FiniteSemigroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduct {
    Additive,
    Multiplicative,
}

impl Reduct {
    pub fn name(self) -> &'static str {
        match self {
            Reduct::Additive => "additive",
            Reduct::Multiplicative => "multiplicative",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Reduct::Additive => "+",
            Reduct::Multiplicative => "∘",
        }
    }
}

impl NearSemiring {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[FMap] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn additive(&self) -> &FiniteSemigroup {
        &self.additive
    }

    pub fn multiplicative(&self) -> &FiniteSemigroup {
        &self.multiplicative
    }

    pub fn reduct(&self, r: Reduct) -> &FiniteSemigroup {
        match r {
            Reduct::Additive => &self.additive,
            Reduct::Multiplicative => &self.multiplicative,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(FMap::label).collect()
    }

    pub fn index_of(&self, f: &FMap) -> Option<usize> {
        self.elements.iter().position(|g| g == f)
    }

    /// Canonical forms of all elements; fails if any element is outside
    /// `A^+(B_n)`.
    pub fn canonical_forms(&self) -> Result<Vec<CanonicalElem>> {
        self.elements.iter().map(classify).collect()
    }

    /// Corrupts one cell of a Cayley table. Only useful for negative tests.
    #[doc(hidden)]
    pub fn tamper(&mut self, r: Reduct, a: usize, b: usize, value: usize) {
        match r {
            Reduct::Additive => self.additive.set(a, b, value),
            Reduct::Multiplicative => self.multiplicative.set(a, b, value),
        }
    }

    pub fn to_json(&self) -> NearSemiringJson {
        NearSemiringJson {
            format_version: FORMAT_VERSION,
            n: self.n,
            count: self.len(),
            elements: self.labels(),
            add_table: self.additive.rows(),
            mul_table: self.multiplicative.rows(),
        }
    }

    /// Rebuilds from JSON. Tables are taken as given; use
    /// [`table_consistency`] to compare them against the element maps.
    pub fn from_json(json: &NearSemiringJson) -> Result<Self> {
        if json.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "format version {} (expected {FORMAT_VERSION})",
                json.format_version
            )));
        }
        if json.count != json.elements.len() {
            return Err(Error::SizeMismatch {
                left: json.count,
                right: json.elements.len(),
            });
        }
        let elements = json
            .elements
            .iter()
            .map(|s| render(&s.parse::<CanonicalElem>()?, json.n))
            .collect::<Result<Vec<_>>>()?;
        let order = elements.len();
        let flatten = |rows: &[Vec<u32>]| -> Result<Vec<u32>> {
            if rows.len() != order || rows.iter().any(|r| r.len() != order) {
                return Err(Error::Parse("Cayley table is not square".into()));
            }
            Ok(rows.concat())
        };
        Ok(NearSemiring {
            n: json.n,
            additive: FiniteSemigroup::new("additive", order, flatten(&json.add_table)?)?,
            multiplicative: FiniteSemigroup::new(
                "multiplicative",
                order,
                flatten(&json.mul_table)?,
            )?,
            elements,
        })
    }
}

/// On-disk interchange form of a [`NearSemiring`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearSemiringJson {
    pub format_version: u32,
    pub n: usize,
    pub count: usize,
    pub elements: Vec<String>,
    pub add_table: Vec<Vec<u32>>,
    pub mul_table: Vec<Vec<u32>>,
}

/// Canonical order: classifiable elements by canonical form, then anything
/// else by raw table.
fn canonical_cmp(a: &(Option<CanonicalElem>, FMap), b: &(Option<CanonicalElem>, FMap)) -> Ordering {
    match (&a.0, &b.0) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.1.cmp(&b.1),
    }
}

/// Closes `gens` under `+` by adjoining `s + g` for known `s` and generators
/// `g` until nothing new appears, then sorts canonically and fills both
/// Cayley tables. Fails if the result is not closed under `∘`.
pub fn additive_closure(gens: &GeneratorSet) -> Result<NearSemiring> {
    let n = gens.n();
    let mut gen_list: IndexSet<FMap> = IndexSet::new();
    for g in gens.members() {
        if g.n() != n {
            return Err(Error::SizeMismatch {
                left: g.n(),
                right: n,
            });
        }
        gen_list.insert(g.clone());
    }
    let gen_list: Vec<FMap> = gen_list.into_iter().collect();

    let mut set: IndexSet<FMap> = gen_list.iter().cloned().collect();
    let mut frontier: Vec<usize> = (0..set.len()).collect();
    while !frontier.is_empty() {
        let batches: Vec<Vec<FMap>> = frontier
            .par_iter()
            .map(|&i| {
                let s = &set[i];
                gen_list
                    .iter()
                    .map(|g| s.add_unchecked(g))
                    .filter(|f| !set.contains(f))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for f in batches.into_iter().flatten() {
            let (idx, inserted) = set.insert_full(f);
            if inserted {
                next.push(idx);
            }
        }
        frontier = next;
    }

    let mut keyed: Vec<(Option<CanonicalElem>, FMap)> =
        set.into_iter().map(|f| (classify(&f).ok(), f)).collect();
    keyed.sort_by(canonical_cmp);
    let elements: Vec<FMap> = keyed.into_iter().map(|(_, f)| f).collect();
    build_tables(n, elements)
}

/// Closure of `Aff(B_n)`, i.e. `A^+(B_n)`.
pub fn a_plus(n: usize) -> Result<NearSemiring> {
    let order = crate::formulas::counts(n)?.a_plus_total;
    check_table_budget(order as usize)?;
    additive_closure(&enumerate_aff(n)?)
}

fn check_table_budget(order: usize) -> Result<()> {
    let cells = (order as u128) * (order as u128);
    if cells > TABLE_CELL_BUDGET {
        return Err(Error::TableTooLarge {
            order,
            cells,
            budget: TABLE_CELL_BUDGET,
        });
    }
    Ok(())
}

fn build_tables(n: usize, elements: Vec<FMap>) -> Result<NearSemiring> {
    check_table_budget(elements.len())?;
    let index: HashMap<&FMap, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, f)| (f, i as u32))
        .collect();
    let order = elements.len();
    let fill = |op: fn(&FMap, &FMap) -> FMap, name: &str| -> Result<Vec<u32>> {
        let rows: Vec<Vec<u32>> = elements
            .par_iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let c = op(a, b);
                        index.get(&c).copied().ok_or_else(|| {
                            Error::NotClosed(format!(
                                "{} {name} {} = {}",
                                a.label(),
                                b.label(),
                                c.label()
                            ))
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        Ok(rows.concat())
    };
    let add = fill(FMap::add_unchecked, "+")?;
    let mul = fill(FMap::compose_unchecked, "∘")?;
    Ok(NearSemiring {
        n,
        additive: FiniteSemigroup::new("additive", order, add)?,
        multiplicative: FiniteSemigroup::new("multiplicative", order, mul)?,
        elements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub exhaustive: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// First `(a, b)` where a table cell disagrees with the product of the maps.
pub fn table_consistency(ns: &NearSemiring, r: Reduct) -> Option<[usize; 2]> {
    let els = &ns.elements;
    let sg = ns.reduct(r);
    (0..els.len()).into_par_iter().find_map_first(|a| {
        (0..els.len()).find_map(|b| {
            let actual = match r {
                Reduct::Additive => els[a].add_unchecked(&els[b]),
                Reduct::Multiplicative => els[a].compose_unchecked(&els[b]),
            };
            (els[sg.op(a, b)] != actual).then_some([a, b])
        })
    })
}

/// Both associativities and left distributivity `f∘(g+h) = f∘g + f∘h`,
/// judged on the Cayley tables alone.
pub fn verify_near_semiring(ns: &NearSemiring) -> ValidationReport {
    let order = ns.len();
    let exhaustive = order <= EXHAUSTIVE_ORDER_LIMIT;
    let add = &ns.additive;
    let mul = &ns.multiplicative;
    let assoc = |sg: &FiniteSemigroup| {
        if exhaustive {
            sg.associativity_witness()
        } else {
            sg.sampled_associativity_witness(SAMPLE_TRIPLES)
        }
    };
    let distributes =
        |[f, g, h]: [usize; 3]| mul.op(f, add.op(g, h)) == add.op(mul.op(f, g), mul.op(f, h));
    let distributivity = if exhaustive {
        (0..order).into_par_iter().find_map_first(|f| {
            (0..order)
                .flat_map(|g| (0..order).map(move |h| [f, g, h]))
                .find(|&t| !distributes(t))
        })
    } else {
        sample_triples(order, SAMPLE_TRIPLES)
            .into_iter()
            .find(|&t| !distributes(t))
    };
    let check = |name: &str, w: Option<[usize; 3]>| AxiomCheck {
        name: name.into(),
        passed: w.is_none(),
        exhaustive,
        witness: w.map(|w| w.to_vec()),
    };
    ValidationReport {
        checks: vec![
            check("additive associativity", assoc(add)),
            check("multiplicative associativity", assoc(mul)),
            check("left distributivity", distributivity),
        ],
    }
}

/// Element count per support size.
pub fn support_histogram(ns: &NearSemiring) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for f in &ns.elements {
        *hist.entry(f.support_size()).or_insert(0) += 1;
    }
    hist
}

/// No element has support size strictly between `1` and `n`, or strictly
/// between `n` and `n² + 1`.
pub fn intermediate_support_check(ns: &NearSemiring) -> bool {
    let n = ns.n;
    ns.elements.iter().all(|f| {
        let s = f.support_size();
        !((1 < s && s < n) || (n < s && s < n * n + 1))
    })
}
