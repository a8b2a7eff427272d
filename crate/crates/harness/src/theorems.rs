//! Executable statements about vanishing elements and the structure of
//! normal subgroups. Each case reports whether its hypothesis holds on the
//! given group and, if so, whether the conclusion does.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use charvan_core::arith::{p_part, prime_divisors, prime_power_base};
use charvan_core::{
    center, centralizer, class_commutator, conjugacy_classes, constituents, derived_subgroup,
    fitting, hall, induce, inflate, inner_product, intersection, irreducible_characters,
    is_nilpotent, is_normal, is_pi_separable, is_solvable, normalizer, pi_core, quotient,
    relative_pi_core, sylow, upper_pi_series, CharacterTable, ClassData, ClassFunction, HallResult,
    PermGroup, PiSet,
};
use serde::{Serialize, Serializer};

use crate::analysis::Analysis;
use crate::error::{HarnessError, Result};

/// The statements the harness can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    A,
    B,
    MN,
    C1,
    C2,
    PiPi,
    E,
    D,
    VanPiPrime,
    VanPi,
    Core,
    Lemmas,
    InwScan,
}

/// What kind of prime data a statement takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Prime,
    Pi,
    None,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::A,
        TheoremId::B,
        TheoremId::MN,
        TheoremId::C1,
        TheoremId::C2,
        TheoremId::PiPi,
        TheoremId::E,
        TheoremId::D,
        TheoremId::VanPiPrime,
        TheoremId::VanPi,
        TheoremId::Core,
        TheoremId::Lemmas,
        TheoremId::InwScan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::A => "A",
            TheoremId::B => "B",
            TheoremId::MN => "MN",
            TheoremId::C1 => "C1",
            TheoremId::C2 => "C2",
            TheoremId::PiPi => "PIPI",
            TheoremId::E => "E",
            TheoremId::D => "D",
            TheoremId::VanPiPrime => "VAN_PI'",
            TheoremId::VanPi => "VAN_PI",
            TheoremId::Core => "CORE",
            TheoremId::Lemmas => "LEMMAS",
            TheoremId::InwScan => "INW_SCAN",
        }
    }

    pub fn param_kind(self) -> ParamKind {
        match self {
            TheoremId::A | TheoremId::B | TheoremId::MN => ParamKind::Prime,
            TheoremId::D | TheoremId::InwScan => ParamKind::None,
            _ => ParamKind::Pi,
        }
    }

    /// Whether the statement is about a normal subgroup `N` (otherwise it
    /// concerns the whole group).
    pub fn uses_normal(self) -> bool {
        matches!(
            self,
            TheoremId::A
                | TheoremId::B
                | TheoremId::C1
                | TheoremId::C2
                | TheoremId::PiPi
                | TheoremId::E
                | TheoremId::Lemmas
        )
    }

    /// Open conjectures are scanned, not asserted.
    pub fn is_conjecture(self) -> bool {
        self == TheoremId::InwScan
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        let norm = match norm.as_str() {
            "VAN_PI_PRIME" => "VAN_PI'".to_string(),
            _ => norm,
        };
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == norm)
            .ok_or_else(|| {
                let known: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
                HarnessError::input(format!(
                    "unknown theorem {s:?}; known: {}",
                    known.join(", ")
                ))
            })
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypothesis {
    Holds,
    Fails,
    /// Nothing to check (for instance no relevant prime divides `|N|`).
    Vacuous,
    /// Could not be decided, typically because Hall existence is unknown.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conclusion {
    Holds,
    Fails,
    Skipped,
}

/// Summary classification of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Hypothesis and conclusion both hold.
    Pass,
    /// Hypothesis fails or is vacuous.
    Vacuous,
    /// Hypothesis undecided.
    Skipped,
    /// Hypothesis holds and conclusion fails for a proved statement.
    Counterexample,
    /// Conjecture scan found an exception.
    Finding,
    ResourceCap,
    Error,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Pass => "pass",
            Outcome::Vacuous => "vacuous",
            Outcome::Skipped => "skipped",
            Outcome::Counterexample => "COUNTEREXAMPLE",
            Outcome::Finding => "finding",
            Outcome::ResourceCap => "resource-cap",
            Outcome::Error => "error",
        };
        f.write_str(s)
    }
}

/// The prime data of a case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    None,
    Prime(u64),
    Pi(PiSet),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::None => Ok(()),
            Param::Prime(p) => write!(f, "p={p}"),
            Param::Pi(pi) => write!(f, "pi={pi}"),
        }
    }
}

/// One statement applied to one group, normal subgroup and prime data.
#[derive(Debug, Clone)]
pub struct TheoremCase {
    pub theorem: TheoremId,
    pub group: Arc<Analysis>,
    pub normal: Option<String>,
    pub param: Param,
}

impl TheoremCase {
    /// Validates the combination: the normal subgroup must be named in the
    /// group and the prime data must fit the statement.
    pub fn new(
        theorem: TheoremId,
        group: Arc<Analysis>,
        normal: Option<String>,
        param: Param,
    ) -> Result<Self> {
        if let Some(id) = &normal {
            if group.named.normal(id).is_none() {
                return Err(HarnessError::input(format!(
                    "{} has no normal subgroup named {id}",
                    group.named.name
                )));
            }
        }
        let param = match (theorem.param_kind(), param) {
            (ParamKind::None, _) => Param::None,
            (ParamKind::Prime, Param::Prime(p)) => Param::Prime(p),
            (ParamKind::Prime, Param::Pi(pi)) if pi.primes().len() == 1 && !pi.is_complement() => {
                Param::Prime(*pi.primes().iter().next().unwrap())
            }
            (ParamKind::Pi, Param::Pi(pi)) => Param::Pi(pi),
            (ParamKind::Pi, Param::Prime(p)) => Param::Pi(PiSet::prime(p)?),
            (kind, _) => {
                let need = if kind == ParamKind::Prime {
                    "--p"
                } else {
                    "--pi"
                };
                return Err(HarnessError::input(format!(
                    "theorem {theorem} needs {need}"
                )));
            }
        };
        if let Param::Prime(p) = param {
            if !charvan_core::arith::is_prime(p) {
                return Err(charvan_core::Error::NotPrime(p).into());
            }
        }
        let normal = if theorem.uses_normal() { normal } else { None };
        Ok(TheoremCase {
            theorem,
            group,
            normal,
            param,
        })
    }

    pub fn label(&self) -> String {
        let mut s = format!("{} {}", self.theorem, self.group.named.name);
        if let Some(n) = &self.normal {
            s.push_str(&format!(" N={n}"));
        } else if self.theorem.uses_normal() {
            s.push_str(" N=G");
        }
        if self.param != Param::None {
            s.push_str(&format!(" {}", self.param));
        }
        s
    }
}

/// Result of evaluating a case.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub group: String,
    pub normal: Option<String>,
    pub param: String,
    pub hypothesis: Hypothesis,
    pub conclusion: Conclusion,
    pub outcome: Outcome,
    pub witnesses: Vec<String>,
    pub wall_ms: f64,
}

impl VerificationReport {
    pub fn is_counterexample(&self) -> bool {
        self.outcome == Outcome::Counterexample
    }

    /// True when the hypothesis genuinely held and the conclusion was
    /// checked.
    pub fn is_non_vacuous(&self) -> bool {
        self.hypothesis == Hypothesis::Holds && self.conclusion != Conclusion::Skipped
    }
}

struct Eval {
    hypothesis: Hypothesis,
    conclusion: Conclusion,
    witnesses: Vec<String>,
}

fn holds(b: bool) -> Hypothesis {
    if b {
        Hypothesis::Holds
    } else {
        Hypothesis::Fails
    }
}

fn concl(b: bool) -> Conclusion {
    if b {
        Conclusion::Holds
    } else {
        Conclusion::Fails
    }
}

fn outcome(theorem: TheoremId, h: Hypothesis, c: Conclusion) -> Outcome {
    match (h, c) {
        (Hypothesis::Holds, Conclusion::Holds) => Outcome::Pass,
        (Hypothesis::Holds, Conclusion::Fails) if theorem.is_conjecture() => Outcome::Finding,
        (Hypothesis::Holds, Conclusion::Fails) => Outcome::Counterexample,
        (Hypothesis::Holds, Conclusion::Skipped) | (Hypothesis::Unknown, _) => Outcome::Skipped,
        (Hypothesis::Fails | Hypothesis::Vacuous, _) => Outcome::Vacuous,
    }
}

/// Evaluates a case. Resource limits and internal errors are reported in
/// the outcome rather than returned.
pub fn evaluate(case: &TheoremCase) -> VerificationReport {
    let start = Instant::now();
    let result = run(case);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (hypothesis, conclusion, witnesses, out) = match result {
        Ok(e) => {
            let o = outcome(case.theorem, e.hypothesis, e.conclusion);
            (e.hypothesis, e.conclusion, e.witnesses, o)
        }
        Err(err) => {
            let o = if err.is_resource() {
                Outcome::ResourceCap
            } else {
                Outcome::Error
            };
            (
                Hypothesis::Unknown,
                Conclusion::Skipped,
                vec![err.to_string()],
                o,
            )
        }
    };
    VerificationReport {
        theorem: case.theorem,
        group: case.group.named.name.clone(),
        normal: case.normal.clone(),
        param: case.param.to_string(),
        hypothesis,
        conclusion,
        outcome: out,
        witnesses,
        wall_ms,
    }
}

type CoreResult<T> = charvan_core::Result<T>;

/// Shared data for evaluating one case.
struct Ctx<'a> {
    g: &'a PermGroup,
    table: &'a CharacterTable,
    cd: &'a ClassData,
    n: PermGroup,
    /// Classes of `G` contained in `N`.
    in_n: Vec<usize>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a PermGroup, table: &'a CharacterTable, n: PermGroup) -> Self {
        let cd: &ClassData = table.classes();
        let in_n = (0..cd.len())
            .filter(|&i| n.contains(&cd.class(i).rep))
            .collect();
        Ctx {
            g,
            table,
            cd,
            n,
            in_n,
        }
    }

    fn size(&self, c: usize) -> u64 {
        self.cd.class(c).size
    }

    fn order_of(&self, c: usize) -> u64 {
        self.cd.class(c).element_order
    }

    fn describe(&self, c: usize) -> String {
        let class = self.cd.class(c);
        let mut s = format!(
            "x = {} (order {}, |x^G| = {})",
            class.rep, class.element_order, class.size
        );
        if let Some(w) = self.table.zero_at(c) {
            s.push_str(&format!(", chi_{w}(x) = 0"));
        }
        s
    }

    /// Classes of `N` of prime-power order `p^k`, `k >= 1`, with `p`
    /// accepted by `keep`, that vanish in `G`.
    fn vanishing_prime_power(&self, keep: impl Fn(u64) -> bool) -> Vec<usize> {
        self.in_n
            .iter()
            .copied()
            .filter(|&c| {
                prime_power_base(self.order_of(c)).is_some_and(&keep)
                    && self.table.zero_at(c).is_some()
            })
            .collect()
    }

    /// Classes of `N` whose elements have order a power of `p`, identity
    /// included.
    fn p_classes_in_n(&self, p: u64) -> Vec<usize> {
        self.in_n
            .iter()
            .copied()
            .filter(|&c| {
                let o = self.order_of(c);
                o == 1 || prime_power_base(o) == Some(p)
            })
            .collect()
    }

    /// Checks that every listed class size satisfies `ok`, recording the
    /// classes that do not.
    fn sizes_satisfy(
        &self,
        classes: &[usize],
        ok: impl Fn(u64) -> bool,
        what: &str,
        w: &mut Vec<String>,
    ) -> bool {
        let bad: Vec<usize> = classes
            .iter()
            .copied()
            .filter(|&c| !ok(self.size(c)))
            .collect();
        w.push(format!(
            "{} vanishing prime-power-order classes checked, {} with |x^G| not {what}",
            classes.len(),
            bad.len()
        ));
        for &c in bad.iter().take(3) {
            w.push(format!("  {}", self.describe(c)));
        }
        bad.is_empty()
    }
}

fn run(case: &TheoremCase) -> CoreResult<Eval> {
    let named = &case.group.named;
    let g = &named.group;
    let table = case.group.table()?;
    let n = match &case.normal {
        Some(id) => named.normal(id).expect("validated normal subgroup").clone(),
        None => g.clone(),
    };
    let ctx = Ctx::new(g, &table, n);
    let pi = |param: &Param| match param {
        Param::Pi(pi) => pi.clone(),
        Param::Prime(p) => PiSet::prime(*p).expect("validated prime"),
        Param::None => unreachable!("validated prime data"),
    };
    let prime = |param: &Param| match param {
        Param::Prime(p) => *p,
        _ => unreachable!("validated prime"),
    };
    match case.theorem {
        TheoremId::A => thm_a(&ctx, prime(&case.param)),
        TheoremId::B => thm_b(&ctx, prime(&case.param)),
        TheoremId::MN => thm_mn(&ctx, prime(&case.param)),
        TheoremId::C1 => thm_c1(&ctx, &pi(&case.param), false),
        TheoremId::VanPiPrime => thm_c1(&ctx, &pi(&case.param), true),
        TheoremId::C2 | TheoremId::VanPi => thm_c2(&ctx, &pi(&case.param)),
        TheoremId::PiPi => thm_pipi(&ctx, &pi(&case.param)),
        TheoremId::E => thm_e(&ctx, &pi(&case.param)),
        TheoremId::Core => thm_core(&ctx, &pi(&case.param)),
        TheoremId::D => thm_d(&ctx),
        TheoremId::Lemmas => lemma_suite(&ctx, &pi(&case.param)),
        TheoremId::InwScan => inw_scan(&ctx),
    }
}

/// If no prime of `pi` divides `|N|`, the statements about `pi` are empty.
fn pi_irrelevant(ctx: &Ctx, pi: &PiSet) -> Option<Eval> {
    pi.primes_dividing(ctx.n.order()).is_empty().then(|| Eval {
        hypothesis: Hypothesis::Vacuous,
        conclusion: Conclusion::Holds,
        witnesses: vec![format!("no prime of {pi} divides |N| = {}", ctx.n.order())],
    })
}

/// Whether `N/K` has a normal Hall pi-subgroup, for `K` a normal
/// pi'-subgroup of `N`. Returns the preimage of `O_pi(N/K)` as well.
fn normal_hall_over(n: &PermGroup, k: &PermGroup, pi: &PiSet) -> (bool, PermGroup) {
    let o = relative_pi_core(n, k, pi);
    let ok = o.order() / k.order() == pi.pi_part(n.order() / k.order());
    (ok, o)
}

/// The first irreducible constituent of `f` vanishing on one of `classes`.
fn vanishing_constituent(
    table: &CharacterTable,
    f: &ClassFunction,
    classes: &[usize],
) -> CoreResult<Option<(usize, usize)>> {
    for (chi, _) in constituents(table, f)? {
        if let Some(&c) = classes.iter().find(|&&c| table.value(chi, c).is_zero()) {
            return Ok(Some((chi, c)));
        }
    }
    Ok(None)
}

fn thm_a(ctx: &Ctx, p: u64) -> CoreResult<Eval> {
    let mut w = Vec::new();
    let p0 = sylow(&ctx.n, p);
    let normal = is_normal(&ctx.n, &p0)?;
    w.push(format!(
        "Sylow {p}-subgroup of N has order {}, normal: {normal}",
        p0.order()
    ));
    if !ctx.n.order().is_multiple_of(p) {
        return Ok(Eval {
            hypothesis: Hypothesis::Vacuous,
            conclusion: concl(normal),
            witnesses: w,
        });
    }
    let van = ctx.vanishing_prime_power(|q| q == p);
    for &c in van.iter().take(3) {
        w.push(format!("vanishing {p}-element: {}", ctx.describe(c)));
    }
    Ok(Eval {
        hypothesis: holds(van.is_empty()),
        conclusion: concl(normal),
        witnesses: w,
    })
}

fn thm_b(ctx: &Ctx, p: u64) -> CoreResult<Eval> {
    let g = ctx.g;
    let table = ctx.table;
    let mut w = Vec::new();
    let p_g = sylow(g, p);
    let p0 = intersection(&p_g, &ctx.n);
    if p0.order() != p_part(ctx.n.order(), p) {
        return Err(charvan_core::Error::InvalidTable(
            "P meet N is not a Sylow subgroup of N".into(),
        ));
    }
    if !ctx.n.order().is_multiple_of(p) {
        return Ok(Eval {
            hypothesis: Hypothesis::Vacuous,
            conclusion: Conclusion::Holds,
            witnesses: vec![format!("{p} does not divide |N|")],
        });
    }
    let classes = ctx.p_classes_in_n(p);
    let i = is_normal(&ctx.n, &p0)?;
    w.push(format!(
        "(i) P0 = P meet N of order {} normal in N: {i}",
        p0.order()
    ));

    let ind0 = induce(g, &ClassFunction::trivial(&p0))?;
    let v2 = vanishing_constituent(table, &ind0, &classes)?;
    let ii = v2.is_none();
    w.push(format!(
        "(ii) constituents of (1_P0)^G non-vanishing on p-elements of N: {ii}"
    ));
    if let Some((chi, c)) = v2 {
        w.push(format!("  chi_{chi} vanishes at {}", ctx.describe(c)));
    }

    let q = quotient(&p_g, &p0)?;
    let tq = irreducible_characters(q.group())?;
    let mut all_agree = i == ii;
    for beta in 0..tq.len() {
        let b = inflate(&q, &ClassFunction::irreducible(&tq, beta))?;
        let v3 = vanishing_constituent(table, &induce(g, &b)?, &classes)?;
        let iii = v3.is_none();
        all_agree &= iii == i;
        let mut line = format!(
            "(iii) beta_{beta} of P/P0 (degree {}): constituents of beta^G non-vanishing: {iii}",
            tq.degrees()[beta]
        );
        if let Some((chi, c)) = v3 {
            line.push_str(&format!("; chi_{chi} vanishes at {}", ctx.describe(c)));
        }
        w.push(line);
    }

    let degree_ok = constituents(table, &ind0)?
        .iter()
        .all(|&(chi, _)| !table.degrees()[chi].is_multiple_of(p));
    if ctx.n.order() == g.order() {
        all_agree &= degree_ok == i;
        w.push(format!(
            "degree criterion p does not divide chi(1): {degree_ok}"
        ));
    } else {
        w.push(format!(
            "degree criterion for (1_P0)^G (not characterising when N < G): {degree_ok}"
        ));
    }
    Ok(Eval {
        hypothesis: Hypothesis::Holds,
        conclusion: concl(all_agree),
        witnesses: w,
    })
}

fn thm_mn(ctx: &Ctx, p: u64) -> CoreResult<Eval> {
    let g = ctx.g;
    let table = ctx.table;
    if !g.order().is_multiple_of(p) {
        return Ok(Eval {
            hypothesis: Hypothesis::Vacuous,
            conclusion: Conclusion::Holds,
            witnesses: vec![format!("{p} does not divide |G|")],
        });
    }
    let pg = sylow(g, p);
    let i = is_normal(g, &pg)?;
    let ind = induce(g, &ClassFunction::trivial(&pg))?;
    let classes = ctx.cd.p_element_classes(p);
    let v = vanishing_constituent(table, &ind, &classes)?;
    let ii = v.is_none();
    let iii = constituents(table, &ind)?
        .iter()
        .all(|&(chi, _)| !table.degrees()[chi].is_multiple_of(p));
    let mut w = vec![
        format!("(i) Sylow {p}-subgroup normal: {i}"),
        format!("(ii) constituents of (1_P)^G non-vanishing on P: {ii}"),
        format!("(iii) p divides no constituent degree: {iii}"),
    ];
    if let Some((chi, c)) = v {
        w.push(format!("  chi_{chi} vanishes at {}", ctx.describe(c)));
    }
    Ok(Eval {
        hypothesis: Hypothesis::Holds,
        conclusion: concl(i == ii && ii == iii),
        witnesses: w,
    })
}

/// Normal Hall pi-subgroup of `N/O_pi'(N)`, nilpotent, plus nilpotency of
/// the Hall pi-subgroups of `N`.
fn nilpotent_normal_hall_mod_core(n: &PermGroup, pi: &PiSet, w: &mut Vec<String>) -> bool {
    let k = pi_core(n, &pi.complement());
    let (normal, o) = normal_hall_over(n, &k, pi);
    w.push(format!(
        "|O_pi'(N)| = {}, |O_pi'pi(N)| = {}, N/O_pi'(N) has a normal Hall pi-subgroup: {normal}",
        k.order(),
        o.order()
    ));
    if !normal {
        return false;
    }
    // O is pi'-by-pi, so a Hall pi-subgroup of O maps isomorphically onto
    // O/K and is a Hall pi-subgroup of N.
    let h = match hall(&o, pi) {
        HallResult::Found(h) => h,
        _ => {
            w.push("no Hall pi-subgroup found in O_pi'pi(N)".into());
            return false;
        }
    };
    let nil = is_nilpotent(&h);
    w.push(format!(
        "Hall pi-subgroup of order {} nilpotent: {nil}",
        h.order()
    ));
    nil
}

fn thm_c1(ctx: &Ctx, pi: &PiSet, whole_group: bool) -> CoreResult<Eval> {
    if let Some(e) = pi_irrelevant(ctx, pi) {
        return Ok(e);
    }
    let mut w = Vec::new();
    let van = ctx.vanishing_prime_power(|p| pi.contains(p));
    let pi_prime = pi.complement();
    let sizes_ok = ctx.sizes_satisfy(&van, |s| pi_prime.is_pi_number(s), "a pi'-number", &mut w);
    let series = upper_pi_series(&ctx.n, pi);
    w.push(format!("N pi-separable: {}", series.reached_top));
    let mut ok = nilpotent_normal_hall_mod_core(&ctx.n, pi, &mut w);
    if whole_group && series.reached_top {
        w.push(format!("pi-length {}", series.pi_length));
        ok &= series.pi_length <= 1;
    }
    if sizes_ok && !series.reached_top {
        w.push("class-size condition holds without pi-separability".into());
    }
    Ok(Eval {
        hypothesis: holds(sizes_ok && series.reached_top),
        conclusion: concl(ok),
        witnesses: w,
    })
}

fn thm_c2(ctx: &Ctx, pi: &PiSet) -> CoreResult<Eval> {
    if let Some(e) = pi_irrelevant(ctx, pi) {
        return Ok(e);
    }
    let mut w = Vec::new();
    let van = ctx.vanishing_prime_power(|p| pi.contains(p));
    let sizes_ok = ctx.sizes_satisfy(&van, |s| pi.is_pi_number(s), "a pi-number", &mut w);
    let h = match hall(&ctx.n, pi) {
        HallResult::Found(h) => h,
        HallResult::None => {
            w.push("N has no Hall pi-subgroup".into());
            return Ok(Eval {
                hypothesis: Hypothesis::Fails,
                conclusion: Conclusion::Skipped,
                witnesses: w,
            });
        }
        HallResult::Unknown => {
            w.push("Hall pi-subgroup existence undecided".into());
            let hypothesis = if sizes_ok {
                Hypothesis::Unknown
            } else {
                Hypothesis::Fails
            };
            return Ok(Eval {
                hypothesis,
                conclusion: Conclusion::Skipped,
                witnesses: w,
            });
        }
    };
    let normal = is_normal(&ctx.n, &h)?;
    w.push(format!(
        "Hall pi-subgroup of order {} normal in N: {normal}",
        h.order()
    ));
    let mut ok = normal;
    if normal {
        let van_prime = ctx.vanishing_prime_power(|p| !pi.contains(p));
        let mut extra = Vec::new();
        let extra_ok = ctx.sizes_satisfy(
            &van_prime,
            |s| pi.is_pi_number(s),
            "a pi-number",
            &mut extra,
        );
        if extra_ok && sizes_ok {
            w.push("additional condition on pi'-elements holds".into());
            match hall(&ctx.n, &pi.complement()) {
                HallResult::Found(k) => {
                    let nil = is_nilpotent(&k);
                    w.push(format!(
                        "Hall pi'-subgroup of order {} nilpotent: {nil}",
                        k.order()
                    ));
                    ok &= nil;
                }
                _ => {
                    w.push("no Hall pi'-subgroup found although N is pi-separable".into());
                    ok = false;
                }
            }
        }
    }
    Ok(Eval {
        hypothesis: holds(sizes_ok),
        conclusion: concl(ok),
        witnesses: w,
    })
}

fn pi_or_pi_prime(pi: &PiSet, s: u64) -> bool {
    pi.is_pi_number(s) || pi.complement().is_pi_number(s)
}

fn thm_pipi(ctx: &Ctx, pi: &PiSet) -> CoreResult<Eval> {
    if let Some(e) = pi_irrelevant(ctx, pi) {
        return Ok(e);
    }
    let mut w = Vec::new();
    let van = ctx.vanishing_prime_power(|p| pi.contains(p));
    let sizes_ok = ctx.sizes_satisfy(
        &van,
        |s| pi_or_pi_prime(pi, s),
        "a pi-number or a pi'-number",
        &mut w,
    );
    let series = upper_pi_series(&ctx.n, pi);
    w.push(format!("N pi-separable: {}", series.reached_top));
    let k = pi_core(&ctx.n, &pi.complement());
    let (normal, _) = normal_hall_over(&ctx.n, &k, pi);
    w.push(format!(
        "N/O_pi'(N) has a normal Hall pi-subgroup: {normal}"
    ));
    let mut ok = normal;
    if series.reached_top {
        w.push(format!("pi-length {}", series.pi_length));
        ok &= series.pi_length <= 1;
    } else if sizes_ok {
        w.push("class-size condition holds without pi-separability".into());
    }
    Ok(Eval {
        hypothesis: holds(sizes_ok && series.reached_top),
        conclusion: concl(ok),
        witnesses: w,
    })
}

/// `N/O_pi'(F(N))` has a normal Hall pi-subgroup.
fn normal_hall_over_fitting(n: &PermGroup, pi: &PiSet, w: &mut Vec<String>) -> (bool, PermGroup) {
    let f = fitting(n);
    let k = pi_core(&f, &pi.complement());
    let (normal, _) = normal_hall_over(n, &k, pi);
    w.push(format!(
        "|F(N)| = {}, |O_pi'(F(N))| = {}, N/O_pi'(F(N)) has a normal Hall pi-subgroup: {normal}",
        f.order(),
        k.order()
    ));
    (normal, f)
}

fn thm_e(ctx: &Ctx, pi: &PiSet) -> CoreResult<Eval> {
    if let Some(e) = pi_irrelevant(ctx, pi) {
        return Ok(e);
    }
    let mut w = Vec::new();
    let van = ctx.vanishing_prime_power(|p| pi.contains(p));
    let sizes_ok = ctx.sizes_satisfy(
        &van,
        |s| s == 1 || prime_power_base(s).is_some(),
        "a prime power",
        &mut w,
    );
    let (mut ok, f) = normal_hall_over_fitting(&ctx.n, pi, &mut w);
    if pi.primes_dividing(ctx.n.order()).len() == prime_divisors(ctx.n.order()).len() {
        let q = quotient(&ctx.n, &f)?;
        let nil = is_nilpotent(q.group());
        w.push(format!(
            "N/F(N) of order {} nilpotent: {nil}",
            q.group().order()
        ));
        ok &= nil;
    }
    Ok(Eval {
        hypothesis: holds(sizes_ok),
        conclusion: concl(ok),
        witnesses: w,
    })
}

/// The pi/pi' statement for `N = G`. The variant over `O_pi'(F(G))` is
/// reported but not asserted: it fails on AGammaL(1,8) with pi = {3}.
fn thm_core(ctx: &Ctx, pi: &PiSet) -> CoreResult<Eval> {
    let mut e = thm_pipi(ctx, pi)?;
    if e.hypothesis == Hypothesis::Holds {
        let mut w = Vec::new();
        normal_hall_over_fitting(&ctx.n, pi, &mut w);
        e.witnesses
            .extend(w.into_iter().map(|l| format!("(not asserted) {l}")));
    }
    Ok(e)
}

fn thm_d(ctx: &Ctx) -> CoreResult<Eval> {
    let mut w = Vec::new();
    let derived = derived_subgroup(ctx.g);
    let nil = is_nilpotent(&derived);
    w.push(format!("|G'| = {}, G' nilpotent: {nil}", derived.order()));
    let van = ctx.vanishing_prime_power(|_| true);
    if ctx.g.is_abelian() {
        return Ok(Eval {
            hypothesis: Hypothesis::Vacuous,
            conclusion: concl(nil),
            witnesses: w,
        });
    }
    let sizes_ok = ctx.sizes_satisfy(
        &van,
        |s| s == 1 || prime_power_base(s).is_some(),
        "a prime power",
        &mut w,
    );
    Ok(Eval {
        hypothesis: holds(sizes_ok),
        conclusion: concl(nil),
        witnesses: w,
    })
}

fn inw_scan(ctx: &Ctx) -> CoreResult<Eval> {
    if !is_solvable(ctx.g) {
        return Ok(Eval {
            hypothesis: Hypothesis::Fails,
            conclusion: Conclusion::Skipped,
            witnesses: vec!["G is not soluble".into()],
        });
    }
    let f = fitting(ctx.g);
    let outside: Vec<usize> = (0..ctx.cd.len())
        .filter(|&c| ctx.table.zero_at(c).is_none() && !f.contains(&ctx.cd.class(c).rep))
        .collect();
    let mut w = vec![format!(
        "|F(G)| = {}, non-vanishing classes outside F(G): {}",
        f.order(),
        outside.len()
    )];
    for &c in &outside {
        w.push(format!("  {}", ctx.describe(c)));
    }
    Ok(Eval {
        hypothesis: Hypothesis::Holds,
        conclusion: concl(outside.is_empty()),
        witnesses: w,
    })
}

/// One auxiliary statement checked over all its applicable instances.
struct SubCheck {
    name: &'static str,
    instances: usize,
    failures: Vec<String>,
}

impl SubCheck {
    fn new(name: &'static str) -> Self {
        SubCheck {
            name,
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn lemma_suite(ctx: &Ctx, pi: &PiSet) -> CoreResult<Eval> {
    let checks = vec![
        divisibility(ctx)?,
        wielandt(ctx, pi),
        berkovich_kazarin(ctx)?,
        in_fitting(ctx, pi)?,
        normal_p_subgroup_sizes(ctx),
        nilpotent_hall(ctx, pi)?,
        defect_zero(ctx)?,
        abelian_criterion(ctx),
        nilpotent_vanishing(ctx),
        vanishing_in_subgroups(ctx)?,
    ];
    let total: usize = checks.iter().map(|c| c.instances).sum();
    let mut w = Vec::new();
    let mut ok = true;
    for c in &checks {
        w.push(format!(
            "{}: {} instances, {} failures",
            c.name,
            c.instances,
            c.failures.len()
        ));
        for f in &c.failures {
            w.push(format!("  {f}"));
        }
        ok &= c.failures.is_empty();
    }
    Ok(Eval {
        hypothesis: if total > 0 {
            Hypothesis::Holds
        } else {
            Hypothesis::Vacuous
        },
        conclusion: concl(ok),
        witnesses: w,
    })
}

/// `|x^N|` divides `|x^G|`; `|(xN)^(G/N)|` divides `|x^G|`; `p`-elements
/// of `G/N` lift to `p`-elements of `G`.
fn divisibility(ctx: &Ctx) -> CoreResult<SubCheck> {
    let mut s = SubCheck::new("class-size divisibility");
    for &c in &ctx.in_n {
        let x = &ctx.cd.class(c).rep;
        let xn = ctx.n.order() / centralizer(&ctx.n, x)?.order();
        s.check(ctx.size(c).is_multiple_of(xn), || {
            format!("|x^N| = {xn} does not divide |x^G| for {}", ctx.describe(c))
        });
    }
    if ctx.n.is_trivial() || ctx.n.order() == ctx.g.order() {
        return Ok(s);
    }
    let q = quotient(ctx.g, &ctx.n)?;
    let cq = conjugacy_classes(q.group());
    let mut image_class = Vec::with_capacity(ctx.cd.len());
    for c in 0..ctx.cd.len() {
        let y = q.image_of(&ctx.cd.class(c).rep)?;
        let j = cq.class_of(&y).expect("image lies in the quotient");
        image_class.push(j);
        let qs = cq.class(j).size;
        s.check(ctx.size(c).is_multiple_of(qs), || {
            format!(
                "|(xN)^(G/N)| = {qs} does not divide |x^G| for {}",
                ctx.describe(c)
            )
        });
    }
    for j in 0..cq.len() {
        let o = cq.class(j).element_order;
        if let Some(p) = prime_power_base(o) {
            let lifted = (0..ctx.cd.len())
                .any(|c| image_class[c] == j && prime_power_base(ctx.order_of(c)) == Some(p));
            s.check(lifted, || {
                format!(
                    "quotient class {} of order {o} has no {p}-element preimage",
                    cq.class(j).rep
                )
            });
        }
    }
    Ok(s)
}

/// For `H` a Hall pi-subgroup of `N` and `x` in `H` with `|x^G|` a
/// pi-number, `x` lies in `O_pi(N)`.
fn wielandt(ctx: &Ctx, pi: &PiSet) -> SubCheck {
    let mut s = SubCheck::new("Hall elements with pi-number class size lie in O_pi(N)");
    let h = match hall(&ctx.n, pi) {
        HallResult::Found(h) => h,
        _ => return s,
    };
    let core = pi_core(&ctx.n, pi);
    for x in h.elements().iter() {
        if x.is_identity() {
            continue;
        }
        let c = ctx.cd.class_of(x).expect("element of N lies in G");
        if pi.is_pi_number(ctx.size(c)) {
            s.check(core.contains(x), || {
                format!("{x} not in O_pi(N) of order {}", core.order())
            });
        }
    }
    s
}

/// `|x^G|` a power of `p` implies `[x^G, x^G]` is a `p`-group.
fn berkovich_kazarin(ctx: &Ctx) -> CoreResult<SubCheck> {
    let mut s = SubCheck::new("prime-power class size gives a p-group [x^G, x^G]");
    for c in 0..ctx.cd.len() {
        if let Some(p) = prime_power_base(ctx.size(c)) {
            let k = class_commutator(ctx.g, &ctx.cd.class(c).rep)?;
            s.check(p_part(k.order(), p) == k.order(), || {
                format!("[x^G, x^G] of order {} for {}", k.order(), ctx.describe(c))
            });
        }
    }
    Ok(s)
}

/// For `N` pi-separable (or pi a single prime) and `|x^G|` a pi-number:
/// `[x^G, x^G] <= O_pi(N)` and `x O_pi(N)` is central in `F(N/O_pi(N))`.
fn in_fitting(ctx: &Ctx, pi: &PiSet) -> CoreResult<SubCheck> {
    let mut s = SubCheck::new("[x^G, x^G] <= O_pi(N) for pi-number class sizes");
    let single = pi.primes().len() == 1 && !pi.is_complement();
    if !single && !is_pi_separable(&ctx.n, pi) {
        return Ok(s);
    }
    let core = pi_core(&ctx.n, pi);
    let q = quotient(&ctx.n, &core)?;
    let zf = center(&fitting(q.group()));
    for &c in &ctx.in_n {
        if c == 0 || !pi.is_pi_number(ctx.size(c)) {
            continue;
        }
        let x = &ctx.cd.class(c).rep;
        let k = class_commutator(ctx.g, x)?;
        s.check(k.is_subgroup_of(&core), || {
            format!(
                "[x^G, x^G] of order {} not in O_pi(N) for {}",
                k.order(),
                ctx.describe(c)
            )
        });
        let y = q.image_of(x)?;
        s.check(zf.contains(&y), || {
            format!("image not central in F(N/O_pi(N)) for {}", ctx.describe(c))
        });
    }
    Ok(s)
}

/// For a nontrivial normal `p`-subgroup `M` of `G`, every `x` in
/// `M ∩ Van(G)` has `p` dividing `|x^G|`. Checking `O_p(G)` covers every
/// such `M`.
fn normal_p_subgroup_sizes(ctx: &Ctx) -> SubCheck {
    let mut s = SubCheck::new("vanishing classes in O_p(G) have size divisible by p");
    for p in prime_divisors(ctx.g.order()) {
        let m = pi_core(ctx.g, &PiSet::prime(p).expect("prime divisor"));
        if m.is_trivial() {
            continue;
        }
        for c in 0..ctx.cd.len() {
            if ctx.table.zero_at(c).is_some() && m.contains(&ctx.cd.class(c).rep) {
                s.check(ctx.size(c).is_multiple_of(p), || {
                    format!("p = {p} does not divide the size of {}", ctx.describe(c))
                });
            }
        }
    }
    s
}

/// If no prime-power-order pi-element of `N` vanishes in `G`, then `N` has
/// a nilpotent normal Hall pi-subgroup; if moreover `|G:N|` is a
/// pi'-number, `F Z(G)` is self-normalising for a pi-complement `F`.
fn nilpotent_hall(ctx: &Ctx, pi: &PiSet) -> CoreResult<SubCheck> {
    let mut s = SubCheck::new("non-vanishing pi-elements give a nilpotent normal Hall subgroup");
    if pi.primes_dividing(ctx.n.order()).is_empty()
        || !ctx.vanishing_prime_power(|p| pi.contains(p)).is_empty()
    {
        return Ok(s);
    }
    let h = pi_core(&ctx.n, pi);
    let ok = h.order() == pi.pi_part(ctx.n.order()) && is_nilpotent(&h);
    s.check(ok, || {
        format!(
            "O_pi(N) of order {} is not a nilpotent Hall subgroup",
            h.order()
        )
    });
    if !ok || !pi.complement().is_pi_number(ctx.g.order() / ctx.n.order()) {
        return Ok(s);
    }
    let f = match hall(ctx.g, &pi.complement()) {
        HallResult::Found(f) => f,
        _ => {
            s.check(false, || {
                "no pi-complement in a group with a normal Hall subgroup".into()
            });
            return Ok(s);
        }
    };
    let fz = f.extended_by(center(ctx.g).generators())?;
    let nfz = normalizer(ctx.g, &fz)?;
    s.check(nfz.order() == fz.order(), || {
        format!(
            "F Z(G) of order {} has normaliser of order {}",
            fz.order(),
            nfz.order()
        )
    });
    Ok(s)
}

/// A `p`-defect zero character is a constituent of `(1_P)^G` and vanishes
/// on the nontrivial `p`-elements.
fn defect_zero(ctx: &Ctx) -> CoreResult<SubCheck> {
    let mut s = SubCheck::new("p-defect zero characters");
    for p in prime_divisors(ctx.g.order()) {
        let chis: Vec<usize> = (0..ctx.table.len())
            .filter(|&chi| ctx.table.p_defect_zero(chi, p))
            .collect();
        if chis.is_empty() {
            continue;
        }
        let pg = sylow(ctx.g, p);
        let ind = induce(ctx.g, &ClassFunction::trivial(&pg))?;
        let classes: Vec<usize> = ctx
            .cd
            .p_element_classes(p)
            .into_iter()
            .filter(|&c| c != 0)
            .collect();
        for chi in chis {
            let irr = ClassFunction::irreducible(ctx.table, chi);
            let m = inner_product(&ind, &irr)?;
            let zero = classes.iter().all(|&c| ctx.table.value(chi, c).is_zero());
            s.check(m > num_rational_zero() && zero, || {
                format!("chi_{chi} of {p}-defect zero: multiplicity {m}, vanishes on p-elements: {zero}")
            });
        }
    }
    Ok(s)
}

fn num_rational_zero() -> charvan_core::Rational {
    charvan_core::Rational::from_integer(0.into())
}

/// `G` is abelian iff no prime-power-order element vanishes.
fn abelian_criterion(ctx: &Ctx) -> SubCheck {
    let mut s = SubCheck::new("abelian iff prime-power-order elements non-vanishing");
    let van = (0..ctx.cd.len())
        .any(|c| prime_power_base(ctx.order_of(c)).is_some() && ctx.table.zero_at(c).is_some());
    let abelian = ctx.g.is_abelian();
    s.check(abelian != van, || {
        format!("abelian: {abelian}, prime-power vanishing: {van}")
    });
    s
}

/// For nilpotent `G`, `Van(G)` is exactly `G \ Z(G)`.
fn nilpotent_vanishing(ctx: &Ctx) -> SubCheck {
    let mut s = SubCheck::new("nilpotent groups vanish exactly off the centre");
    if !is_nilpotent(ctx.g) {
        return s;
    }
    for c in 0..ctx.cd.len() {
        let van = ctx.table.zero_at(c).is_some();
        s.check(van == (ctx.size(c) > 1), || {
            format!("{} vanishing: {van}", ctx.describe(c))
        });
    }
    s
}

/// For `H <= G` and `x` in `H` with `G = H C_G(x)`, `x` vanishes in `G`
/// iff it vanishes in `H`. Checked for `H = N` and the Sylow normalisers.
fn vanishing_in_subgroups(ctx: &Ctx) -> CoreResult<SubCheck> {
    let mut s = SubCheck::new("vanishing transfers to H when G = H C_G(x)");
    let g = ctx.g;
    let mut subgroups: Vec<PermGroup> = Vec::new();
    if !ctx.n.is_trivial() && ctx.n.order() < g.order() {
        subgroups.push(ctx.n.clone());
    }
    for p in prime_divisors(g.order()) {
        let np = normalizer(g, &sylow(g, p))?;
        if np.order() < g.order() && !subgroups.iter().any(|h| h.same_as(&np)) {
            subgroups.push(np);
        }
    }
    for h in subgroups {
        let th = irreducible_characters(&h)?;
        let ch = th.classes();
        for j in 0..ch.len() {
            let x = &ch.class(j).rep;
            let cg = centralizer(g, x)?;
            let product = h.order() * cg.order() / intersection(&h, &cg).order();
            if product != g.order() {
                continue;
            }
            let c = ctx.cd.class_of(x).expect("subgroup element lies in G");
            let in_g = ctx.table.zero_at(c).is_some();
            let in_h = th.zero_at(j).is_some();
            s.check(in_g == in_h, || {
                format!(
                    "{} in H of order {}: vanishing in G {in_g}, in H {in_h}",
                    ctx.describe(c),
                    h.order()
                )
            });
        }
    }
    Ok(s)
}
