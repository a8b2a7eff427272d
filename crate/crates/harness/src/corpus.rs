//! The built-in corpus and the sweep that evaluates every applicable case
//! over it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use charvan_core::arith::prime_divisors;
use charvan_core::PiSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::catalog::builtin_group;
use crate::error::{HarnessError, Result};
use crate::theorems::{
    evaluate, Outcome, Param, ParamKind, TheoremCase, TheoremId, VerificationReport,
};

/// Catalog names of the corpus groups, smallest first.
pub const CORPUS: &[&str] = &[
    "V4",
    "S3",
    "C6",
    "D8",
    "Q8",
    "D10",
    "A4",
    "D12",
    "Dic12",
    "Q16",
    "S3xC5",
    "F20",
    "F21",
    "Q8xC3",
    "SL(2,3)",
    "S4",
    "D8xC3",
    "S4xC2",
    "AGL(1,8)",
    "A5",
    "S5",
    "AGammaL(1,8)",
    "SzSylNorm8",
    "A6",
    "S6",
    "A7",
];

pub fn corpus_groups() -> Result<Vec<Arc<Analysis>>> {
    CORPUS
        .iter()
        .map(|name| builtin_group(name).map(Analysis::new))
        .collect()
}

/// Prime sets used for a group: each prime divisor, its complement and the
/// full set, identified when they select the same primes of `|G|`.
fn pi_choices(order: u64) -> Vec<PiSet> {
    let primes = prime_divisors(order);
    let mut out: Vec<PiSet> = Vec::new();
    let mut seen: Vec<Vec<u64>> = Vec::new();
    let mut push = |pi: PiSet| {
        let key = pi.primes_dividing(order);
        if !key.is_empty() && !seen.contains(&key) {
            seen.push(key);
            out.push(pi);
        }
    };
    for &p in &primes {
        push(PiSet::prime(p).expect("prime divisor"));
    }
    for &p in &primes {
        push(PiSet::prime(p).expect("prime divisor").complement());
    }
    if let Ok(all) = PiSet::new(primes.iter().copied()) {
        push(all);
    }
    out
}

/// Every case of the selected theorems over the given groups, in a fixed
/// order: group, theorem, normal subgroup, prime data.
pub fn corpus_cases(groups: &[Arc<Analysis>], selection: &[TheoremId]) -> Vec<TheoremCase> {
    let mut cases = Vec::new();
    for a in groups {
        let order = a.named.order();
        let primes = prime_divisors(order);
        let pis = pi_choices(order);
        for &t in selection {
            let normals: Vec<Option<String>> = if t.uses_normal() {
                std::iter::once(None)
                    .chain(a.named.normals.iter().map(|(id, _)| Some(id.clone())))
                    .collect()
            } else {
                vec![None]
            };
            let params: Vec<Param> = match t.param_kind() {
                ParamKind::None => vec![Param::None],
                ParamKind::Prime => primes.iter().map(|&p| Param::Prime(p)).collect(),
                ParamKind::Pi => pis.iter().cloned().map(Param::Pi).collect(),
            };
            for n in &normals {
                for param in &params {
                    let case = TheoremCase::new(t, a.clone(), n.clone(), param.clone())
                        .expect("corpus cases are well formed");
                    cases.push(case);
                }
            }
        }
    }
    cases
}

/// Per-theorem tallies.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TheoremTally {
    pub cases: usize,
    pub outcomes: BTreeMap<Outcome, usize>,
    /// Passes whose hypothesis genuinely held.
    pub non_vacuous: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub reports: Vec<VerificationReport>,
    pub tally: BTreeMap<TheoremId, TheoremTally>,
    /// Selected theorems without a single non-vacuous pass.
    pub coverage_gaps: Vec<TheoremId>,
    pub wall_ms: f64,
}

impl CorpusReport {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.reports.iter().filter(|r| r.outcome == outcome).count()
    }

    /// 1 for a counterexample or an internal error, 3 for a resource cap,
    /// 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.count(Outcome::Counterexample) + self.count(Outcome::Error) > 0 {
            1
        } else if self.count(Outcome::ResourceCap) > 0 {
            3
        } else {
            0
        }
    }

    /// Human-readable report: one line per case, witnesses for the
    /// interesting ones, then the per-theorem summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let mut label = format!("{} {}", r.theorem, r.group);
            if let Some(n) = &r.normal {
                let _ = write!(label, " N={n}");
            }
            if !r.param.is_empty() {
                let _ = write!(label, " {}", r.param);
            }
            let _ = writeln!(
                out,
                "{:<15} {label} ({:.1} ms)",
                r.outcome.to_string(),
                r.wall_ms
            );
            if matches!(
                r.outcome,
                Outcome::Counterexample | Outcome::Finding | Outcome::Error | Outcome::ResourceCap
            ) {
                for w in &r.witnesses {
                    let _ = writeln!(out, "    {w}");
                }
            }
        }
        let _ = writeln!(
            out,
            "\ntheorem     cases  pass  non-vacuous  vacuous  skipped  other"
        );
        for (t, tally) in &self.tally {
            let get = |o| tally.outcomes.get(&o).copied().unwrap_or(0);
            let other =
                tally.cases - get(Outcome::Pass) - get(Outcome::Vacuous) - get(Outcome::Skipped);
            let _ = writeln!(
                out,
                "{:<10} {:>6} {:>5} {:>12} {:>8} {:>8} {:>6}",
                t.as_str(),
                tally.cases,
                get(Outcome::Pass),
                tally.non_vacuous,
                get(Outcome::Vacuous),
                get(Outcome::Skipped),
                other
            );
        }
        let _ = writeln!(
            out,
            "\n{} cases, {} counterexamples, {} findings, {} resource caps, {} errors in {:.0} ms",
            self.reports.len(),
            self.count(Outcome::Counterexample),
            self.count(Outcome::Finding),
            self.count(Outcome::ResourceCap),
            self.count(Outcome::Error),
            self.wall_ms
        );
        if !self.coverage_gaps.is_empty() {
            let gaps: Vec<&str> = self.coverage_gaps.iter().map(|t| t.as_str()).collect();
            let _ = writeln!(
                out,
                "insufficient coverage: no non-vacuous pass for {}",
                gaps.join(", ")
            );
        }
        out
    }
}

/// Evaluates the cases on a pool of `jobs` threads. Reports keep the order
/// of `cases` whatever the schedule.
pub fn run_cases(
    cases: &[TheoremCase],
    selection: &[TheoremId],
    jobs: usize,
) -> Result<CorpusReport> {
    let start = std::time::Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::input(format!("thread pool: {e}")))?;
    let reports: Vec<VerificationReport> = pool.install(|| {
        // Tables first, one task per group, so cases do not queue behind
        // the same lazy computation.
        let mut groups: Vec<&Arc<Analysis>> = Vec::new();
        for c in cases {
            if !groups.iter().any(|g| Arc::ptr_eq(g, &c.group)) {
                groups.push(&c.group);
            }
        }
        groups.par_iter().for_each(|g| {
            let _ = g.table();
        });
        cases.par_iter().map(evaluate).collect()
    });

    let mut tally: BTreeMap<TheoremId, TheoremTally> = selection
        .iter()
        .map(|&t| (t, TheoremTally::default()))
        .collect();
    for r in &reports {
        let t = tally.entry(r.theorem).or_default();
        t.cases += 1;
        *t.outcomes.entry(r.outcome).or_default() += 1;
        if r.outcome == Outcome::Pass && r.is_non_vacuous() {
            t.non_vacuous += 1;
        }
    }
    let coverage_gaps = tally
        .iter()
        .filter(|(_, t)| t.non_vacuous == 0)
        .map(|(&id, _)| id)
        .collect();
    Ok(CorpusReport {
        reports,
        tally,
        coverage_gaps,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Sweeps the selected theorems over the whole built-in corpus.
pub fn run_corpus(selection: &[TheoremId], jobs: usize) -> Result<CorpusReport> {
    let groups = if selection.is_empty() {
        Vec::new()
    } else {
        corpus_groups()?
    };
    let cases = corpus_cases(&groups, selection);
    run_cases(&cases, selection, jobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_selection_is_empty() {
        let r = run_corpus(&[], 2).unwrap();
        assert!(r.reports.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn pi_choices_are_distinct() {
        let names = |o| -> Vec<String> { pi_choices(o).iter().map(|p| p.to_string()).collect() };
        assert_eq!(names(24), ["{2}", "{3}", "{2,3}"]);
        assert_eq!(
            names(60),
            ["{2}", "{3}", "{5}", "{2}'", "{3}'", "{5}'", "{2,3,5}"]
        );
        assert_eq!(names(8), ["{2}"]);
    }

    #[test]
    fn single_case_selection() {
        let g = Analysis::new(builtin_group("S4").unwrap());
        let case = TheoremCase::new(TheoremId::A, g, Some("A4".into()), Param::Prime(2)).unwrap();
        let r = run_cases(&[case], &[TheoremId::A], 1).unwrap();
        assert_eq!(r.reports.len(), 1);
        assert_eq!(r.reports[0].outcome, Outcome::Pass);
        assert!(r.coverage_gaps.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn cases_are_ordered_by_group_then_theorem() {
        let groups = vec![
            Analysis::new(builtin_group("S3").unwrap()),
            Analysis::new(builtin_group("S4").unwrap()),
        ];
        let cases = corpus_cases(&groups, &[TheoremId::D, TheoremId::A]);
        let labels: Vec<String> = cases.iter().map(|c| c.label()).collect();
        assert_eq!(
            labels,
            [
                "D S3",
                "A S3 N=G p=2",
                "A S3 N=G p=3",
                "A S3 N=A3 p=2",
                "A S3 N=A3 p=3",
                "D S4",
                "A S4 N=G p=2",
                "A S4 N=G p=3",
                "A S4 N=A4 p=2",
                "A S4 N=A4 p=3",
                "A S4 N=V4 p=2",
                "A S4 N=V4 p=3",
            ]
        );
    }
}
