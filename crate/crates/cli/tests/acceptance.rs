//! Acceptance suite. Runs as a plain binary (`harness = false`) and prints
//! one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};

use ans_cli::eggbox::EggBox;
use brandt_affine::closure::{support_histogram, verify_near_semiring};
use brandt_affine::formulas::{counts, factorial};
use brandt_affine::generators::{brute_force_endomorphisms, enumerate_aff, enumerate_end};
use brandt_affine::green::{class_counts, cross_check, green_brute, CountsRecord};
use brandt_affine::structure::{aut_iso, structural_checks, Subset};
use brandt_affine::{a_plus, additive_closure, NearSemiring, Reduct};

type Verdict = Result<(), String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn green_counts(ns: &NearSemiring, r: Reduct) -> CountsRecord {
    class_counts(&green_brute(ns.reduct(r)))
}

fn rldh(c: &CountsRecord) -> [usize; 4] {
    [c.r, c.l, c.d, c.h]
}

fn c1() -> Verdict {
    let ns = additive_closure(&enumerate_aff(2).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(ns.len() == 29, || format!("{} elements", ns.len()))?;
    let hist = support_histogram(&ns);
    let want = BTreeMap::from([(0, 1), (1, 16), (2, 8), (5, 4)]);
    ensure(hist == want, || format!("histogram {hist:?}"))
}

fn c2() -> Verdict {
    for (n, want) in [(2, 29), (3, 145), (4, 657)] {
        let got = a_plus(n).map_err(|e| e.to_string())?.len();
        let formula = counts(n).unwrap().a_plus_total;
        let direct = (factorial(n) + 1) * (n * n) as u128 + n.pow(4) as u128 + 1;
        ensure(
            got == want && formula == want as u128 && direct == formula,
            || format!("n={n}: closure {got}, formula {formula}"),
        )?;
    }
    Ok(())
}

fn c3() -> Verdict {
    // n!+n+1 = 10 at n = 3
    for (n, want) in [(2, 5), (3, 10), (4, 29)] {
        let got = enumerate_end(n).unwrap().len();
        let formula = counts(n).unwrap().end_count;
        ensure(got == want && formula == want as u128, || {
            format!("n={n}: {got}")
        })?;
    }
    let brute: BTreeSet<_> = brute_force_endomorphisms(2).unwrap().into_iter().collect();
    let listed: BTreeSet<_> = enumerate_end(2)
        .unwrap()
        .members()
        .iter()
        .cloned()
        .collect();
    ensure(brute == listed, || {
        format!("exhaustive search found {}", brute.len())
    })
}

fn c4() -> Verdict {
    for (n, want) in [(2, 13), (3, 64), (4, 401)] {
        let got = enumerate_aff(n).unwrap().len();
        ensure(got == want, || format!("n={n}: {got}"))?;
    }
    Ok(())
}

fn c5() -> Verdict {
    let n2 = green_counts(&a_plus(2).unwrap(), Reduct::Additive);
    ensure(rldh(&n2) == [15, 19, 10, 29], || {
        format!("n=2 {:?}", rldh(&n2))
    })?;
    // (n!)n² + n³ + n + 1 = 85 at n = 3
    let n3 = green_counts(&a_plus(3).unwrap(), Reduct::Additive);
    let f = counts(3).unwrap().additive;
    ensure(
        [n3.r, n3.l, n3.d].map(|x| x as u128) == [f.r, f.l, f.d]
            && [n3.r, n3.l, n3.d] == [49, 85, 29],
        || format!("n=3 R,L,D = {},{},{}", n3.r, n3.l, n3.d),
    )
}

fn c6() -> Verdict {
    let n2 = green_counts(&a_plus(2).unwrap(), Reduct::Multiplicative);
    ensure(rldh(&n2) == [7, 11, 3, 25], || {
        format!("n=2 {:?}", rldh(&n2))
    })?;
    let n3 = green_counts(&a_plus(3).unwrap(), Reduct::Multiplicative);
    ensure(rldh(&n3) == [13, 22, 3, 100], || {
        format!("n=3 {:?}", rldh(&n3))
    })
}

fn c7() -> Verdict {
    for n in [2, 3] {
        let ns = a_plus(n).unwrap();
        for r in [Reduct::Additive, Reduct::Multiplicative] {
            let gs = green_brute(ns.reduct(r));
            if let Some(d) = cross_check(&ns, r, &gs).map_err(|e| e.to_string())? {
                return Err(format!("n={n} {d:?}"));
            }
        }
    }
    Ok(())
}

/// Starred elements of the two n = 2 egg-box diagrams, transcribed.
fn diagram_stars(r: Reduct) -> BTreeSet<String> {
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect();
    match r {
        Reduct::Additive => s(&[
            "xi_theta",
            "xi(1,1)",
            "xi(2,2)",
            "<(1,1)->(1,1)>",
            "<(1,1)->(2,2)>",
            "<(1,2)->(1,1)>",
            "<(1,2)->(2,2)>",
            "<(2,1)->(1,1)>",
            "<(2,1)->(2,2)>",
            "<(2,2)->(1,1)>",
            "<(2,2)->(2,2)>",
        ]),
        Reduct::Multiplicative => s(&[
            "xi_theta",
            "xi(1,1)",
            "xi(1,2)",
            "xi(2,1)",
            "xi(2,2)",
            "(1,1;[1,2])",
            "(2,2;[1,2])",
            "<(1,1)->(1,1)>",
            "<(1,2)->(1,2)>",
            "<(2,1)->(2,1)>",
            "<(2,2)->(2,2)>",
        ]),
    }
}

fn c8() -> Verdict {
    let ns = a_plus(2).unwrap();
    let labels = ns.labels();
    for (r, regular) in [(Reduct::Additive, 21), (Reduct::Multiplicative, 29)] {
        let gs = green_brute(ns.reduct(r));
        let stars: BTreeSet<String> = gs
            .idempotents()
            .into_iter()
            .map(|i| labels[i].clone())
            .collect();
        ensure(stars == diagram_stars(r), || {
            format!("{r:?} idempotents {stars:?}")
        })?;
        let got = gs.regular_elements().len();
        ensure(got == regular, || format!("{r:?} regular {got}"))?;
    }
    Ok(())
}

fn c9() -> Verdict {
    for n in 1..=3 {
        let ns = a_plus(n).unwrap();
        let axioms = verify_near_semiring(&ns);
        ensure(axioms.all_passed(), || format!("n={n} axioms {axioms:?}"))?;
        let add = ns.additive();
        let aperiodic = (0..ns.len()).all(|f| {
            let two = add.op(f, f);
            add.op(two, f) == two
        });
        ensure(aperiodic, || format!("n={n} f+f != 3f"))?;
        let ga = green_brute(add);
        let gm = green_brute(ns.multiplicative());
        ensure(ga.h.len() == ns.len(), || {
            format!("n={n} additive H nontrivial")
        })?;
        ensure(ga.d_equals_j() && gm.d_equals_j(), || {
            format!("n={n} D != J")
        })?;
        for (i, f) in ns.elements().iter().enumerate() {
            let want = if n >= 2 && f.support_size() == n {
                2
            } else {
                1
            };
            ensure(ga.eventual_index[i] == Some(want), || {
                format!("n={n} {} index {:?}", f.label(), ga.eventual_index[i])
            })?;
        }
        let checks = [
            (Subset::K, Reduct::Additive, "inverse"),
            (Subset::N, Reduct::Multiplicative, "inverse"),
            (Subset::All, Reduct::Multiplicative, "orthodox"),
        ];
        for (s, r, what) in checks {
            let rep = structural_checks(&ns, r, s);
            let ok = if what == "inverse" {
                rep.inverse
            } else {
                rep.orthodox
            };
            ensure(ok, || {
                format!("n={n} ({s},{}) not {what}: {:?}", r.symbol(), rep.witness)
            })?;
        }
        for (s, r) in [
            (Subset::Constants, Reduct::Additive),
            (Subset::SingletonIdeal, Reduct::Additive),
            (Subset::SingletonIdeal, Reduct::Multiplicative),
        ] {
            let iso = structural_checks(&ns, r, s)
                .isomorphism
                .expect("certificate");
            ensure(iso.holds, || {
                format!("n={n} {s} ≇ {}: {:?}", iso.target, iso.witness)
            })?;
        }
        let aut = aut_iso(n).map_err(|e| e.to_string())?;
        ensure(aut.holds, || format!("n={n} Aut: {:?}", aut.witness))?;
    }
    Ok(())
}

fn c10() -> Verdict {
    let ns = a_plus(1).unwrap();
    ensure(ns.len() == 3, || format!("{} elements", ns.len()))?;
    for r in [Reduct::Additive, Reduct::Multiplicative] {
        let gs = green_brute(ns.reduct(r));
        ensure(gs.idempotent.iter().all(|&e| e), || {
            format!("{r:?} not all idempotent")
        })?;
    }
    Ok(())
}

fn ans(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_ans"))
        .args(args)
        .env_remove("ANS_CACHE_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("ans {args:?} exited with {:?}", o.status.code()));
    }
    Ok(o.stdout)
}

fn c11() -> Verdict {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for r in ["additive", "multiplicative"] {
        let want = fs::read_to_string(golden.join(format!("eggbox_n2_{r}.txt")))
            .map_err(|e| e.to_string())?;
        let got = String::from_utf8(ans(&[
            "eggbox", "--n", "2", "--reduct", r, "--format", "text",
        ])?)
        .unwrap();
        ensure(got == want, || {
            format!("{r} rendering differs from golden file")
        })?;
        let stars = got.matches('*').count();
        ensure(stars == 11, || format!("{r}: {stars} stars"))?;
    }
    // the library renderer agrees with the binary
    let ns = a_plus(2).unwrap();
    let lib = EggBox::build(&ns, Reduct::Additive, &green_brute(ns.additive())).to_text();
    let want = fs::read_to_string(golden.join("eggbox_n2_additive.txt")).unwrap();
    ensure(lib == want, || "library rendering differs".into())
}

fn read_dir(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

fn c12() -> Verdict {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = Vec::new();
    for (i, jobs) in ["1", "1", "4"].iter().enumerate() {
        let out = tmp.path().join(format!("run{i}"));
        ans(&[
            "verify",
            "--n",
            "1..3",
            "--jobs",
            jobs,
            "--out",
            out.to_str().unwrap(),
        ])?;
        runs.push(read_dir(&out));
    }
    ensure(runs[0].len() == 15, || {
        format!("{} export files", runs[0].len())
    })?;
    ensure(runs[0] == runs[1], || "two identical runs differ".into())?;
    ensure(runs[0] == runs[2], || "--jobs 1 and --jobs 4 differ".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("|A+(B_2)| = 29 with breakup {0:1, 1:16, 2:8, 5:4}", c1),
        ("|A+(B_n)| = (n!+1)n²+n⁴+1 for n = 2,3,4", c2),
        (
            "|End(B_n)| = n!+n+1 for n = 2,3,4; n = 2 by exhaustive search",
            c3,
        ),
        ("|Aff(B_n)| = (n!+1)n²+1 for n = 2,3,4", c4),
        ("additive Green counts at n = 2 and n = 3", c5),
        ("multiplicative Green counts at n = 2 and n = 3", c6),
        (
            "analytic classifiers agree with brute force for n = 2,3",
            c7,
        ),
        ("n = 2 idempotents and regular elements", c8),
        ("property suite for n <= 3", c9),
        ("n = 1: three elements, all idempotent", c10),
        ("egg-box golden files for n = 2", c11),
        (
            "verify exports are byte-identical across runs and --jobs",
            c12,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
