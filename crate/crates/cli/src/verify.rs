//! The verification pipeline: every structural and counting check for one
//! `n`, plus the JSON exports it produces.

use std::collections::{BTreeMap, BTreeSet};

use brandt_affine::closure::{
    intermediate_support_check, support_histogram, table_consistency, verify_near_semiring,
};
use brandt_affine::formulas::{counts, CountsTable};
use brandt_affine::generators::{
    brute_force_endomorphisms, enumerate_aff, enumerate_aut, enumerate_end,
};
use brandt_affine::green::{class_counts, cross_check, green_brute, GreenStructure};
use brandt_affine::map::{render, CanonicalElem};
use brandt_affine::structure::{aut_iso, structural_checks, Subset};
use brandt_affine::{brandt, NearSemiring, Perm, Reduct, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| match (&c.witness, c.passed) {
                (_, true) => format!("n={} {}: PASS", self.n, c.name),
                (Some(w), false) => format!("n={} {}: FAIL ({w})", self.n, c.name),
                (None, false) => format!("n={} {}: FAIL", self.n, c.name),
            })
            .collect()
    }

    fn push(&mut self, name: impl Into<String>, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        });
    }

    fn count(&mut self, name: &str, expected: u128, measured: usize) {
        let witness = (expected != measured as u128).then(|| format!("measured {measured}"));
        self.push(format!("{name} = {expected}"), witness);
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        self.push(name, (!ok).then(witness));
    }
}

/// A file produced by the pipeline: name relative to the output directory
/// and its contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Export {
    pub name: String,
    pub contents: String,
}

pub struct Outcome {
    pub report: Report,
    pub exports: Vec<Export>,
}

/// Runs every check on `ns` (freshly built or loaded from a cache).
pub fn verify(ns: &NearSemiring) -> Result<Outcome> {
    let n = ns.n();
    let expected = counts(n)?;
    let mut report = Report {
        n,
        checks: Vec::new(),
    };

    for r in [Reduct::Additive, Reduct::Multiplicative] {
        let w = table_consistency(ns, r).map(|[a, b]| {
            format!(
                "cell ({a},{b}) holds {} but the maps give another element",
                ns.reduct(r).op(a, b)
            )
        });
        report.push(format!("table consistency({})", r.symbol()), w);
    }
    let classified = ns.canonical_forms();
    report.push(
        "every element classifies",
        classified.as_ref().err().map(ToString::to_string),
    );
    generator_checks(&mut report, n, &expected)?;
    report.count("|A+(B_n)|", expected.a_plus_total, ns.len());
    let hist = support_histogram(ns);
    let b = &expected.breakup;
    let mut want: BTreeMap<usize, usize> = BTreeMap::new();
    for (s, c) in [
        (0, b.zero),
        (1, b.singleton),
        (n, b.n_support),
        (n * n + 1, b.full),
    ] {
        if c > 0 {
            *want.entry(s).or_default() += c as usize;
        }
    }
    report.holds("support breakup", hist == want, || {
        format!("measured {hist:?}")
    });
    report.holds(
        "no intermediate supports",
        intermediate_support_check(ns),
        String::new,
    );

    for axiom in verify_near_semiring(ns).checks {
        let w = axiom.witness.map(|t| format!("triple {t:?}"));
        report.push(axiom.name, w);
    }
    sum_checks(&mut report, ns);

    let add = green_brute(ns.additive());
    let mul = green_brute(ns.multiplicative());
    for (r, gs) in [(Reduct::Additive, &add), (Reduct::Multiplicative, &mul)] {
        green_checks(&mut report, ns, r, gs, &expected)?;
    }
    additive_checks(&mut report, ns, &add);
    multiplicative_checks(&mut report, ns, &mul)?;
    structure_checks(&mut report, ns)?;

    let exports = vec![
        export(format!("a_plus_n{n}.json"), &ns.to_json())?,
        export(format!("green_n{n}_additive.json"), &add.to_json())?,
        export(format!("green_n{n}_multiplicative.json"), &mul.to_json())?,
        export(format!("counts_n{n}.json"), &expected)?,
        export(format!("report_n{n}.json"), &report)?,
    ];
    Ok(Outcome { report, exports })
}

fn export(name: String, value: &impl Serialize) -> Result<Export> {
    Ok(Export {
        name,
        contents: serde_json::to_string_pretty(value)? + "\n",
    })
}

fn generator_checks(report: &mut Report, n: usize, expected: &CountsTable) -> Result<()> {
    let end = enumerate_end(n)?;
    report.count("|End(B_n)|", expected.end_count, end.len());
    if n <= 2 {
        let brute: BTreeSet<_> = brute_force_endomorphisms(n)?.into_iter().collect();
        let listed: BTreeSet<_> = end.members().iter().cloned().collect();
        report.holds(
            "End(B_n) matches exhaustive homomorphism search",
            brute == listed,
            || format!("search found {}", brute.len()),
        );
    }
    report.count("|Aut(B_n)|", expected.aut_count, enumerate_aut(n)?.len());
    report.count("|Aff(B_n)|", expected.aff_count, enumerate_aff(n)?.len());
    Ok(())
}

/// Aperiodicity and the support sizes of sums with `n`-support maps.
fn sum_checks(report: &mut Report, ns: &NearSemiring) {
    let n = ns.n();
    let add = ns.additive();
    let aperiodic = (0..ns.len()).find(|&f| {
        let two = add.op(f, f);
        add.op(two, f) != two
    });
    report.push(
        "aperiodicity f+f = 3f",
        aperiodic.map(|f| ns.elements()[f].label()),
    );

    let els = ns.elements();
    let nsupp: Vec<usize> = (0..ns.len())
        .filter(|&i| els[i].support_size() == n && els[i].constant_value().is_none())
        .collect();
    let consts: Vec<usize> = (0..ns.len())
        .filter(|&i| els[i].constant_value().is_some_and(|a| !a.is_zero()))
        .collect();
    let size = |i: usize| els[i].support_size();
    let mut bad = None;
    'outer: for &f in &nsupp {
        for &g in &nsupp {
            if size(add.op(g, f)) > 1 {
                bad = Some(format!("{} + {}", els[g].label(), els[f].label()));
                break 'outer;
            }
        }
        for &h in &consts {
            if size(add.op(h, f)) != 1 {
                bad = Some(format!("{} + {}", els[h].label(), els[f].label()));
                break 'outer;
            }
            let s = size(add.op(f, h));
            if s != 0 && s != n {
                bad = Some(format!("{} + {}", els[f].label(), els[h].label()));
                break 'outer;
            }
        }
    }
    report.push("supports of sums with n-support maps", bad);
}

fn green_checks(
    report: &mut Report,
    ns: &NearSemiring,
    r: Reduct,
    gs: &GreenStructure,
    expected: &CountsTable,
) -> Result<()> {
    let s = r.symbol();
    let c = class_counts(gs);
    let (er, el, ed, eh, ei, ereg) = match r {
        Reduct::Additive => {
            let a = &expected.additive;
            (a.r, a.l, a.d, a.h, a.idempotents, a.regular)
        }
        Reduct::Multiplicative => {
            let m = &expected.multiplicative;
            (m.r, m.l, m.d, m.h, m.idempotents, m.regular)
        }
    };
    report.count(&format!("R-classes({s})"), er, c.r);
    report.count(&format!("L-classes({s})"), el, c.l);
    report.count(&format!("D-classes({s})"), ed, c.d);
    report.count(&format!("H-classes({s})"), eh, c.h);
    report.count(&format!("idempotents({s})"), ei, c.idempotents);
    report.count(&format!("regular({s})"), ereg, c.regular);
    report.holds(format!("D = J({s})"), gs.d_equals_j(), || {
        format!("{} D-classes, {} J-classes", c.d, c.j)
    });
    report.holds(
        format!("H refines R and L, R and L refine D({s})"),
        gs.is_consistent(),
        || "partition nesting broken".into(),
    );
    let disagreement = cross_check(ns, r, gs)?.map(|d| {
        format!(
            "{} {} {}: brute {} analytic {}",
            ns.elements()[d.a].label(),
            d.relation,
            ns.elements()[d.b].label(),
            d.brute,
            d.analytic
        )
    });
    report.push(
        format!("analytic classifiers agree with brute force({s})"),
        disagreement,
    );
    Ok(())
}

fn additive_checks(report: &mut Report, ns: &NearSemiring, gs: &GreenStructure) {
    let n = ns.n();
    let els = ns.elements();
    report.holds("H trivial(+)", gs.h.len() == ns.len(), || {
        format!("{} H-classes", gs.h.len())
    });
    let regular_rule = (0..ns.len()).find(|&i| {
        let rule = n == 1 || els[i].support_size() != n;
        gs.regular[i] != rule
    });
    report.push(
        "regular iff support size is not n(+)",
        regular_rule.map(|i| els[i].label()),
    );
    let index_rule = (0..ns.len()).find(|&i| {
        let want = if n >= 2 && els[i].support_size() == n {
            2
        } else {
            1
        };
        gs.eventual_index[i] != Some(want)
    });
    report.push(
        "eventual regularity index 2 exactly on n-support(+)",
        index_rule.map(|i| format!("{} has index {:?}", els[i].label(), gs.eventual_index[i])),
    );
}

fn multiplicative_checks(
    report: &mut Report,
    ns: &NearSemiring,
    gs: &GreenStructure,
) -> Result<()> {
    let n = ns.n();
    let mut want: BTreeSet<CanonicalElem> = brandt::elements(n)
        .into_iter()
        .map(|a| match a {
            brandt::BrandtElem::Zero => CanonicalElem::Zero,
            a => CanonicalElem::Constant(a),
        })
        .collect();
    for k in 1..=n {
        want.insert(CanonicalElem::NSupport {
            k,
            q: k,
            sigma: Perm::identity(n),
        });
    }
    if n >= 2 {
        for a in brandt::elements(n) {
            if let brandt::BrandtElem::Pair(i, j) = a {
                want.insert(CanonicalElem::Singleton {
                    src: (i, j),
                    dst: (i, j),
                });
            }
        }
    }
    let want: BTreeSet<_> = want.iter().map(|c| render(c, n)).collect::<Result<_>>()?;
    let got: BTreeSet<_> = gs
        .idempotents()
        .into_iter()
        .map(|i| ns.elements()[i].clone())
        .collect();
    let extra = got.symmetric_difference(&want).next().map(|f| f.label());
    report.push("idempotents(∘) are constants, (k,k;id) and <a->a>", extra);
    Ok(())
}

fn structure_checks(report: &mut Report, ns: &NearSemiring) -> Result<()> {
    let verdict = |subset, r, pick: fn(&brandt_affine::structure::SubsetReport) -> bool| {
        let rep = structural_checks(ns, r, subset);
        let ok = pick(&rep);
        (ok, rep.witness.unwrap_or_else(|| "verdict false".into()))
    };
    let (ok, w) = verdict(Subset::K, Reduct::Additive, |r| r.inverse);
    report.holds("(K,+) inverse semigroup", ok, || w);
    let (ok, w) = verdict(Subset::N, Reduct::Multiplicative, |r| r.inverse);
    report.holds("(N,∘) inverse semigroup", ok, || w);
    let (ok, w) = verdict(Subset::All, Reduct::Multiplicative, |r| r.orthodox);
    report.holds("(A+,∘) orthodox", ok, || w);

    for (subset, r) in [
        (Subset::Constants, Reduct::Additive),
        (Subset::SingletonIdeal, Reduct::Additive),
        (Subset::SingletonIdeal, Reduct::Multiplicative),
    ] {
        let rep = structural_checks(ns, r, subset);
        if let Some(iso) = rep.isomorphism {
            report.push(
                format!("{subset}({}) ≅ {}", r.symbol(), iso.target),
                iso.witness,
            );
        }
    }
    let iso = aut_iso(ns.n())?;
    report.push(format!("Aut(B_n) ≅ {}", iso.target), iso.witness);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use brandt_affine::a_plus;

    #[test]
    fn n2_passes_and_reports_d_classes() {
        let out = verify(&a_plus(2).unwrap()).unwrap();
        let lines = out.report.lines();
        assert!(out.report.all_passed(), "{lines:#?}");
        assert!(lines.contains(&"n=2 D-classes(∘) = 3: PASS".to_string()));
    }

    #[test]
    fn n1_passes() {
        let out = verify(&a_plus(1).unwrap()).unwrap();
        assert!(out.report.all_passed(), "{:#?}", out.report.lines());
    }

    #[test]
    fn tampered_table_fails_with_witness() {
        let mut ns = a_plus(2).unwrap();
        ns.tamper(Reduct::Additive, 1, 1, 2);
        let out = verify(&ns).unwrap();
        assert!(!out.report.all_passed());
        let line = out
            .report
            .lines()
            .into_iter()
            .find(|l| l.starts_with("n=2 table consistency(+)"))
            .unwrap();
        assert!(line.contains("FAIL (cell (1,1)"), "{line}");
    }
}
