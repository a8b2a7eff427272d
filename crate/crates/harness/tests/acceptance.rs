//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use charvan::{
    builtin_group, corpus_groups, evaluate, run_corpus, Analysis, Conclusion, Hypothesis, Outcome,
    Param, TheoremCase, TheoremId,
};
use charvan_core::arith::prime_power_base;
use charvan_core::{
    center, constituents, derived_subgroup, hall, induce, inflate, inner_product,
    irreducible_characters, is_normal, normalizer, quotient, restrict, sylow,
    vanishing_in_subgroup, CharacterTable, ClassFunction, Cyclotomic, HallResult, PermGroup, PiSet,
};
use charvan_oracle::{character_table, embed, match_rows};
use nalgebra::Complex;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn group(name: &str) -> charvan::NamedGroup {
    builtin_group(name).expect("catalog group")
}

fn table(g: &PermGroup) -> Result<CharacterTable, String> {
    irreducible_characters(g).map_err(err)
}

/// Classes of `g` lying in `n` whose element order is 1 or a power of `p`.
fn p_classes_in(t: &CharacterTable, n: &PermGroup, p: u64) -> Vec<usize> {
    let cd = t.classes();
    (0..cd.len())
        .filter(|&c| {
            let o = cd.class(c).element_order;
            n.contains(&cd.class(c).rep) && (o == 1 || prime_power_base(o) == Some(p))
        })
        .collect()
}

fn degree_example_constituents() -> Check {
    let s4 = group("S4");
    let v4 = s4.normal("V4").unwrap();
    let t = table(&s4.group)?;
    let f = induce(&s4.group, &ClassFunction::trivial(v4)).map_err(err)?;
    let cs = constituents(&t, &f).map_err(err)?;
    let degrees: Vec<u64> = cs.iter().map(|&(chi, _)| t.degrees()[chi]).collect();
    ensure(cs.len() == 3, format!("{} constituents", cs.len()))?;
    ensure(
        degrees.iter().filter(|&&d| d == 2).count() == 1,
        format!("constituent degrees {degrees:?}"),
    )?;
    Ok(format!(
        "(1_V4)^S4 has 3 distinct constituents of degrees {degrees:?}"
    ))
}

fn degree_example_beta() -> Check {
    let s4 = group("S4");
    let g = &s4.group;
    let a4 = s4.normal("A4").unwrap();
    let v4 = s4.normal("V4").unwrap();
    let t = table(g)?;
    let p = sylow(g, 2);
    ensure(
        p.order() == 8 && v4.is_subgroup_of(&p),
        "V4 not in the Sylow 2-subgroup",
    )?;
    let q = quotient(&p, v4).map_err(err)?;
    let tq = table(q.group())?;
    let classes = p_classes_in(&t, a4, 2);
    let mut good = Vec::new();
    for beta in 1..tq.len() {
        let b = inflate(&q, &ClassFunction::irreducible(&tq, beta)).map_err(err)?;
        let ind = induce(g, &b).map_err(err)?;
        let ok = constituents(&t, &ind)
            .map_err(err)?
            .iter()
            .all(|&(chi, _)| classes.iter().all(|&c| !t.value(chi, c).is_zero()));
        if ok {
            good.push(beta);
        }
    }
    ensure(tq.len() == 2, format!("|Irr(P/V4)| = {}", tq.len()))?;
    ensure(
        !good.is_empty(),
        "every nontrivial beta has a vanishing constituent",
    )?;
    Ok(format!(
        "nontrivial beta of P/V4 with constituents nonzero on {} 2-element classes of A4",
        classes.len()
    ))
}

fn pi_separability_example() -> Check {
    let s5 = group("S5");
    let a5 = s5.normal("A5").unwrap();
    let t = table(&s5.group)?;
    let van = vanishing_in_subgroup(&t, a5).map_err(err)?;
    let threes: Vec<_> = van
        .iter()
        .filter(|v| prime_power_base(v.element_order) == Some(3))
        .collect();
    ensure(!threes.is_empty(), "no vanishing 3-elements in A5")?;
    for v in &threes {
        ensure(v.size == 20, format!("3-element class of size {}", v.size))?;
    }
    let p3 = sylow(a5, 3);
    ensure(
        !is_normal(a5, &p3).map_err(err)?,
        "Sylow 3-subgroup of A5 is normal",
    )?;
    Ok(format!(
        "{} vanishing 3-element class(es) in A5, all of size 20; Sylow 3 not normal",
        threes.len()
    ))
}

fn quaternion_example() -> Check {
    let q8 = group("Q8");
    let c4 = q8.normal("C4").unwrap();
    ensure(
        c4.order() == 4 && c4.is_abelian(),
        "N is not abelian of order 4",
    )?;
    let t = table(&q8.group)?;
    let van = vanishing_in_subgroup(&t, c4).map_err(err)?;
    ensure(!van.is_empty(), "N meets no vanishing class")?;
    Ok(format!(
        "N = C4 abelian, {} vanishing class(es) of Q8 inside N",
        van.len()
    ))
}

fn suzuki_example() -> Check {
    let sz = group("SzSylNorm8");
    let g = &sz.group;
    ensure(g.order() == 448, format!("|G| = {}", g.order()))?;
    let n = sz.normal("N64").unwrap();
    ensure(n.same_as(&sylow(g, 2)), "N64 is not the Sylow 2-subgroup")?;
    let t = table(g)?;
    let van = vanishing_in_subgroup(&t, n).map_err(err)?;
    ensure(
        van.is_empty(),
        format!("{} vanishing classes meet N", van.len()),
    )?;
    let z = center(g);
    ensure(!n.is_subgroup_of(&z), "N is central")?;
    ensure(is_normal(g, n).map_err(err)?, "N not normal")?;
    let f = match hall(g, &PiSet::prime(2).map_err(err)?.complement()) {
        HallResult::Found(f) => f,
        _ => return Err("no 2-complement".into()),
    };
    let fz = f.extended_by(z.generators()).map_err(err)?;
    let nfz = normalizer(g, &fz).map_err(err)?;
    ensure(nfz.order() == fz.order(), "F Z(G) is not self-normalising")?;
    Ok(format!(
        "Van(G) meets N trivially, |Z(G)| = {}, F Z(G) of order {} self-normalising",
        z.order(),
        fz.order()
    ))
}

fn semilinear_example() -> Check {
    let a = Analysis::new(group("AGammaL(1,8)"));
    ensure(
        a.named.normal("N56").map(|n| n.order()) == Some(56),
        "no Hall 3'-subgroup N56",
    )?;
    let case = TheoremCase::new(
        TheoremId::C1,
        a,
        Some("N56".into()),
        Param::Pi(PiSet::prime(7).map_err(err)?),
    )
    .map_err(err)?;
    let r = evaluate(&case);
    ensure(
        r.hypothesis == Hypothesis::Holds && r.conclusion == Conclusion::Holds,
        format!("{:?}/{:?}: {:?}", r.hypothesis, r.conclusion, r.witnesses),
    )?;
    Ok("C1 hypothesis and conclusion hold for N of order 56, pi = {7}".into())
}

fn theorem_sweep() -> Check {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report = run_corpus(&TheoremId::ALL, jobs).map_err(err)?;
    ensure(
        report.reports.len() >= 40,
        format!("only {} cases", report.reports.len()),
    )?;
    for t in TheoremId::ALL {
        ensure(
            report.tally.get(&t).is_some_and(|x| x.cases > 0),
            format!("no cases for {t}"),
        )?;
    }
    let bad: Vec<String> = report
        .reports
        .iter()
        .filter(|r| matches!(r.outcome, Outcome::Counterexample | Outcome::Error))
        .map(|r| {
            format!(
                "{} {} {:?} {}: {:?}",
                r.theorem, r.group, r.normal, r.param, r.witnesses
            )
        })
        .collect();
    ensure(
        bad.is_empty(),
        format!("{} failing cases: {}", bad.len(), bad.join("; ")),
    )?;
    ensure(
        report.coverage_gaps.is_empty(),
        format!("no non-vacuous instance for {:?}", report.coverage_gaps),
    )?;
    Ok(format!(
        "{} cases, 0 counterexamples, every theorem has a non-vacuous pass, {} findings",
        report.reports.len(),
        report.count(Outcome::Finding)
    ))
}

fn table_invariants() -> Check {
    let groups = corpus_groups().map_err(err)?;
    for a in &groups {
        let name = &a.named.name;
        let g = &a.named.group;
        let t = a.table().map_err(err)?;
        t.verify_orthogonality()
            .map_err(|v| format!("{name}: {v:?}"))?;
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        ensure(
            sum == g.order(),
            format!("{name}: sum of squared degrees {sum}"),
        )?;
        ensure(
            t.degrees().iter().all(|d| g.order() % d == 0),
            format!("{name}: a degree does not divide |G|"),
        )?;
        let linear = t.degrees().iter().filter(|&&d| d == 1).count() as u64;
        let index = g.order() / derived_subgroup(g).order();
        ensure(
            linear == index,
            format!("{name}: {linear} linear characters, |G:G'| = {index}"),
        )?;
        for chi in 0..t.len() {
            if t.degrees()[chi] > 1 {
                ensure(
                    !t.prime_power_zeros(chi).is_empty(),
                    format!("{name}: chi_{chi} has no zero on a prime-power-order class"),
                )?;
            }
        }
    }
    Ok(format!("{} corpus groups up to order 2520", groups.len()))
}

fn to_complex(c: &Cyclotomic) -> Complex<f64> {
    let coeffs: Vec<f64> = c.coeffs().iter().map(|r| r.to_f64().unwrap()).collect();
    embed(c.modulus(), &coeffs)
}

fn oracle_equivalence() -> Check {
    let mut checked = Vec::new();
    for a in corpus_groups().map_err(err)? {
        if a.named.order() > 500 {
            continue;
        }
        let name = &a.named.name;
        let t = a.table().map_err(err)?;
        let cd = t.classes();
        let elements: Vec<Vec<usize>> = cd
            .elements()
            .iter()
            .map(|p| p.images().iter().map(|&i| i as usize).collect())
            .collect();
        let oracle = character_table::<f64>(&elements);
        ensure(
            oracle.classes.len() == t.len(),
            format!("{name}: class counts differ"),
        )?;
        let col: Vec<usize> = oracle.classes.iter().map(|m| cd.class_at(m[0])).collect();
        let exact: Vec<Vec<Complex<f64>>> = (0..t.len())
            .map(|chi| col.iter().map(|&c| to_complex(t.value(chi, c))).collect())
            .collect();
        let perm = match_rows(&exact, &oracle.values, 1e-6)
            .ok_or_else(|| format!("{name}: no row matching within 1e-6"))?;
        for (chi, &o) in perm.iter().enumerate() {
            ensure(
                t.degrees()[chi] == oracle.degrees[o],
                format!("{name}: degree of chi_{chi} differs"),
            )?;
            for (j, &c) in col.iter().enumerate() {
                if let Some(q) = t.value(chi, c).to_rational() {
                    let rounded = oracle.values[o][j].re.round();
                    ensure(
                        q.is_integer() && q.to_integer().to_f64() == Some(rounded),
                        format!("{name}: rational entry chi_{chi}({c}) differs after rounding"),
                    )?;
                }
            }
        }
        checked.push(name.to_string());
    }
    Ok(format!("{} groups: {}", checked.len(), checked.join(" ")))
}

fn frobenius_reciprocity() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
    let groups: Vec<_> = corpus_groups()
        .map_err(err)?
        .into_iter()
        .filter(|a| a.named.order() <= 720)
        .collect();
    let mut samples = 0;
    let mut transitivity = 0;
    while samples < 240 {
        let a = &groups[rng.random_range(0..groups.len())];
        let g = &a.named.group;
        let tg = a.table().map_err(err)?;
        let elements = g.elements();
        let mut pick = || elements[rng.random_range(0..elements.len())].clone();
        let h = g.generate(&[pick()]).map_err(err)?;
        let h = if h.order() < 4 {
            h.extended_by(&[pick()]).map_err(err)?
        } else {
            h
        };
        let k = h.extended_by(&[pick()]).map_err(err)?;
        let th = table(&h)?;
        for _ in 0..4 {
            let beta = rng.random_range(0..th.len());
            let chi = rng.random_range(0..tg.len());
            let b = ClassFunction::irreducible(&th, beta);
            let x = ClassFunction::irreducible(&tg, chi);
            let induced = induce(g, &b).map_err(err)?;
            let lhs = inner_product(&induced, &x).map_err(err)?;
            let rhs = inner_product(&b, &restrict(&h, &x).map_err(err)?).map_err(err)?;
            ensure(
                lhs == rhs,
                format!(
                    "{}: [beta^G, chi] = {lhs} but [beta, chi_H] = {rhs}",
                    a.named.name
                ),
            )?;
            let deg = induced.character_degree().map_err(err)?;
            ensure(
                deg == th.degrees()[beta] * (g.order() / h.order()),
                format!("{}: induced degree {deg}", a.named.name),
            )?;
            let via_k = induce(g, &induce(&k, &b).map_err(err)?).map_err(err)?;
            ensure(
                via_k.values() == induced.values(),
                format!("{}: induction is not transitive", a.named.name),
            )?;
            transitivity += 1;
            samples += 1;
        }
    }
    Ok(format!(
        "{samples} random (G, H, beta, chi) samples exact, {transitivity} transitivity checks"
    ))
}

fn table_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_charvan");
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(bin).args(args).output().map_err(err)?;
        ensure(
            out.status.success(),
            format!("charvan {args:?} failed: {out:?}"),
        )?;
        Ok(out.stdout)
    };
    let groups = [
        "builtin:S5",
        "builtin:SL(2,3)",
        "builtin:AGammaL(1,8)",
        "builtin:A7",
    ];
    for g in groups {
        for json in [false, true] {
            let mut a: Vec<&str> = vec!["--jobs", "1", "table", g];
            let mut b: Vec<&str> = vec!["--jobs", "8", "table", g];
            if json {
                a.push("--json");
                b.push("--json");
            }
            let (x, y) = (run(&a)?, run(&b)?);
            ensure(
                !x.is_empty() && x == y,
                format!("output of table {g} differs"),
            )?;
        }
    }
    Ok(format!(
        "{} groups, text and JSON identical for --jobs 1 and 8",
        groups.len()
    ))
}

fn timed_table(name: &str) -> Check {
    let g = group(name).group;
    let start = Instant::now();
    let t = table(&g)?;
    Ok(format!(
        "{name}: {} classes in {:.1} ms",
        t.len(),
        start.elapsed().as_secs_f64() * 1e3
    ))
}

struct Criterion {
    label: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            label: "1",
            limit: secs(1),
            run: degree_example_constituents,
        },
        Criterion {
            label: "2",
            limit: secs(1),
            run: degree_example_beta,
        },
        Criterion {
            label: "3",
            limit: secs(2),
            run: pi_separability_example,
        },
        Criterion {
            label: "4",
            limit: secs(1),
            run: quaternion_example,
        },
        Criterion {
            label: "5",
            limit: secs(10),
            run: suzuki_example,
        },
        Criterion {
            label: "6",
            limit: secs(5),
            run: semilinear_example,
        },
        Criterion {
            label: "7",
            limit: secs(300),
            run: theorem_sweep,
        },
        Criterion {
            label: "8",
            limit: secs(300),
            run: table_invariants,
        },
        Criterion {
            label: "9",
            limit: secs(300),
            run: oracle_equivalence,
        },
        Criterion {
            label: "10",
            limit: secs(300),
            run: frobenius_reciprocity,
        },
        Criterion {
            label: "11",
            limit: secs(300),
            run: table_determinism,
        },
        Criterion {
            label: "perf S6",
            limit: secs(5),
            run: || timed_table("S6"),
        },
        Criterion {
            label: "perf SzSylNorm8",
            limit: secs(2),
            run: || timed_table("SzSylNorm8"),
        },
        Criterion {
            label: "perf A7",
            limit: secs(60),
            run: || timed_table("A7"),
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > c.limit => {
                Err(format!("{msg}; took {elapsed:?}, limit {:?}", c.limit))
            }
            r => r,
        };
        let (status, detail) = match result {
            Ok(msg) => ("PASS", msg),
            Err(msg) => {
                failed += 1;
                ("FAIL", msg)
            }
        };
        println!(
            "criterion {:<16} {status}  {:>9.1} ms  {detail}",
            c.label,
            elapsed.as_secs_f64() * 1e3
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
