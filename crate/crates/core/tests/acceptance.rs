//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use arcadian::construction::{build, dump_table};
use arcadian::engine::{emergence_violations, prove, Attempt, ProveResult};
use arcadian::formula::{alpha_eq, parse, parse_at, print, Binding, Eigen};
use arcadian::machine::{accepts, ArcadianAutomaton, Budget, Flavor, Id, RunJson, RunTree, StoreEntry};
use arcadian::oracle::decide_prop;
use arcadian::proofterm::{is_lnf, parse_term_at, type_check, CheckError, Context, Rule};
use common::{closed_formula, count_prop, for_each_prop, formula, FIG4, NON_THEOREMS, PROVABLE};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn proved(f: &str, fuel: Budget) -> Result<Attempt, String> {
    let phi = parse(f).map_err(|e| format!("{f}: {e}"))?;
    let a = prove(&phi, fuel).map_err(|e| format!("{f}: {e}"))?;
    let term = a.result.term().ok_or_else(|| format!("{f}: not proved"))?;
    type_check(&Context::new(), term, &a.formula).map_err(|e| format!("{f}: {e}"))?;
    if !is_lnf(&Context::new(), term, &a.formula).unwrap_or(false) {
        return Err(format!("{f}: term is not long normal"));
    }
    Ok(a)
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let c = build(&parse(FIG4).unwrap()).map_err(|e| e.to_string())?;
    let dump = dump_table(&c.automaton, &c.table);
    // Nodes 1..6 of the example tree are the paths ε, 0, 00, 1, 10, 100.
    for line in [
        "(1) q∀_ε: store 0, 1, q∃_1",
        "(4) q∀_0: new 00, q∃_00",
        "(4) q∀_1: new 10, q∃_10",
        "(5) q∀_10: instr 100, q∃_100",
        "(10) q∃_00: jmp 0, q∃*_0 [match 00, witness 0]",
        "(10) q∃_100: jmp 0, q∃*_0 [match 00, witness 0]",
        "(13) q∃_ε: check ε, ε, q∀_axiom",
        "(13) q∃_100: check 100, 100, q∀_axiom",
        "(19) q∀_ε,∃10: jmp 10, q∃*_10",
        "(19) q∀_1,∃10: jmp 10, q∃*_10",
        "(19) q∀_10,∃10: jmp 10, q∃*_10",
        "(20) q∀_ε,∃10: instl 100, ε, q∃_ε",
        "(20) q∀_1,∃10: instl 100, 1, q∃_1",
        "(20) q∀_10,∃10: instl 100, 10, q∃_10",
    ] {
        if !dump.lines().any(|l| l == line) {
            return Err(format!("instruction table lacks `{line}`"));
        }
    }
    let a = proved(FIG4, Budget::new(16, 2))?;
    let kinds = a.result.run().unwrap().kind_sequence(a.automaton());
    let expected = ["jmp", "store", "jmp", "new", "jmp", "instr", "jmp", "check"];
    if kinds != expected {
        return Err(format!("run kinds {kinds:?}"));
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(1) {
        return Err(format!("took {}", secs(t)));
    }
    Ok(format!("table instances present, 8-step run, term verified and long normal, {}", secs(t)))
}

fn provable_corpus(runs: &mut Vec<Attempt>) -> Outcome {
    let start = Instant::now();
    for f in PROVABLE {
        runs.push(proved(f, Budget::new(24, 3))?);
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(30) {
        return Err(format!("took {}", secs(t)));
    }
    Ok(format!("{} formulas proved at fuel (24,3), {}", PROVABLE.len(), secs(t)))
}

fn non_theorems() -> Outcome {
    let start = Instant::now();
    let mut exhausted = 0;
    for f in NON_THEOREMS {
        let a = prove(&parse(f).unwrap(), Budget::new(20, 3)).map_err(|e| e.to_string())?;
        match a.result {
            ProveResult::Proved { .. } => return Err(format!("{f} was proved")),
            ProveResult::Exhausted(_) => exhausted += 1,
            ProveResult::NotFoundWithinFuel(_) => {}
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(30) {
        return Err(format!("took {}", secs(t)));
    }
    Ok(format!(
        "{} formulas not proved at fuel (20,3) ({exhausted} with the bounded space exhausted), {}",
        NON_THEOREMS.len(),
        secs(t)
    ))
}

fn oracle_equivalence() -> Outcome {
    const MAX: usize = 7;
    let limit = Duration::from_secs(600);
    let start = Instant::now();
    let total: u128 = (0..=MAX).map(count_prop).sum();
    let mut checked: u128 = 0;
    let mut disagreements = Vec::new();
    let mut complete_through = None;
    for n in 0..=MAX {
        let finished = for_each_prop(n, &mut |f| {
            if start.elapsed() >= limit {
                return false;
            }
            let fuel = Budget::new(2 * f.size() as u32 + 8, 0);
            let expected = decide_prop(f).unwrap();
            match prove(f, fuel) {
                Ok(a) if a.result.is_proved() == expected => {}
                Ok(_) => disagreements.push(print(f)),
                Err(e) => disagreements.push(format!("{}: {e}", print(f))),
            }
            checked += 1;
            true
        });
        if !finished {
            break;
        }
        complete_through = Some(n);
    }
    let t = start.elapsed();
    let summary = format!(
        "{checked} of {total} formulas checked in {}, complete through {} connectives, {} disagreements",
        secs(t),
        complete_through.map_or("no".to_string(), |n| n.to_string()),
        disagreements.len()
    );
    if !disagreements.is_empty() {
        return Err(format!("{summary}; first: {}", disagreements[0]));
    }
    if checked < total {
        return Err(format!("{summary}; time limit reached before the enumeration finished"));
    }
    Ok(summary)
}

/// IDs with the goal binding extended outside fv(κ) by some element of V.
fn extensions(aut: &ArcadianAutomaton, id: &Id) -> Vec<Id> {
    let tree = aut.tree();
    let mut out = Vec::new();
    for n in tree.ids() {
        if !tree.kind(n).is_quantifier() || id.w.contains(n) {
            continue;
        }
        for &y in &id.domain {
            let mut ext = id.clone();
            ext.w.insert(n, y);
            if ext.check(aut).is_ok() {
                out.push(ext);
            }
        }
    }
    out
}

/// Small IDs at plain states with an empty store over V = {X1, X2}.
fn small_ids(aut: &ArcadianAutomaton) -> Vec<Id> {
    let tree = aut.tree();
    let domain = vec![Eigen(1), Eigen(2)];
    let mut out = Vec::new();
    for (ix, s) in aut.states().iter().enumerate() {
        if s.id.flavor != Flavor::Plain {
            continue;
        }
        let fv = tree.fv(s.id.node);
        let mut ws = vec![Binding::new()];
        for &n in fv {
            ws = ws
                .into_iter()
                .flat_map(|w| {
                    domain.iter().map(move |&y| {
                        let mut w = w.clone();
                        w.insert(n, y);
                        w
                    })
                })
                .collect();
        }
        for w in ws {
            let id = Id {
                state: arcadian::machine::StateIx(ix as u32),
                node: s.id.node,
                w,
                aux: Binding::new(),
                store: Vec::<StoreEntry>::new(),
                domain: domain.clone(),
            };
            if id.check(aut).is_ok() {
                out.push(id);
            }
        }
    }
    out
}

fn monotonicity(runs: &[Attempt]) -> Outcome {
    let fuel = Budget::new(16, 3);
    let mut pairs = 0;
    let mut failures = Vec::new();
    let fig4 = build(&parse(FIG4).unwrap()).unwrap().automaton;
    let mut bases: Vec<(&ArcadianAutomaton, Id)> = small_ids(&fig4).into_iter().map(|id| (&fig4, id)).collect();
    for a in runs {
        for id in a.result.run().unwrap().ids() {
            bases.push((a.automaton(), id.clone()));
        }
    }
    for (aut, id) in bases {
        if accepts(aut, &id, fuel).run().is_none() {
            continue;
        }
        for ext in extensions(aut, &id) {
            pairs += 1;
            if accepts(aut, &ext, fuel).run().is_none() {
                failures.push(ext.display(aut));
            }
        }
    }
    if !failures.is_empty() {
        return Err(format!("{} of {pairs} extensions lost acceptance, e.g. {}", failures.len(), failures[0]));
    }
    if pairs < 100 {
        return Err(format!("only {pairs} pairs enumerated"));
    }
    Ok(format!("{pairs} (ID, extension) pairs, acceptance preserved in all"))
}

fn emergence(runs: &[Attempt]) -> Outcome {
    let mut ids = 0;
    for a in runs {
        let run = a.result.run().unwrap();
        ids += run.ids().len();
        let v = emergence_violations(a.automaton(), run);
        if let Some(first) = v.first() {
            return Err(format!("{}: {first}", print(&a.formula)));
        }
    }
    Ok(format!("{ids} IDs over {} runs, no violations", runs.len()))
}

struct Fixture {
    rule: Rule,
    ctx: &'static [(&'static str, &'static str)],
    good: (&'static str, &'static str),
    bad: (&'static str, &'static str),
}

const FIXTURES: &[Fixture] = &[
    Fixture { rule: Rule::Var, ctx: &[("x", "p")], good: ("x", "p"), bad: ("x", "q") },
    Fixture { rule: Rule::ImpI, ctx: &[], good: ("\\x:p. x", "p -> p"), bad: ("\\x:q. x", "p -> p") },
    Fixture { rule: Rule::ImpE, ctx: &[("f", "p -> q"), ("a", "p"), ("b", "r")], good: ("f a", "q"), bad: ("f b", "q") },
    Fixture { rule: Rule::AndI, ctx: &[("a", "p"), ("b", "q")], good: ("<a, b>", "p /\\ q"), bad: ("<b, a>", "p /\\ q") },
    Fixture { rule: Rule::AndE1, ctx: &[("h", "p /\\ q")], good: ("p1 h", "p"), bad: ("p1 h", "q") },
    Fixture { rule: Rule::AndE2, ctx: &[("h", "p /\\ q")], good: ("p2 h", "q"), bad: ("p2 h", "p") },
    Fixture { rule: Rule::OrI1, ctx: &[("a", "p")], good: ("inl[p \\/ q] a", "p \\/ q"), bad: ("inl[p \\/ r] a", "p \\/ q") },
    Fixture { rule: Rule::OrI2, ctx: &[("a", "p"), ("b", "q")], good: ("inr[p \\/ q] b", "p \\/ q"), bad: ("inr[p \\/ q] a", "p \\/ q") },
    Fixture {
        rule: Rule::OrE,
        ctx: &[("h", "p \\/ q")],
        good: ("case h of {x:p => inr[q \\/ p] x | y:q => inl[q \\/ p] y}", "q \\/ p"),
        bad: ("case h of {x:q => inl[q \\/ p] x | y:p => inr[q \\/ p] y}", "q \\/ p"),
    },
    Fixture { rule: Rule::AllI, ctx: &[("h", "forall x. P(x)")], good: ("\\\\Y. h @Y", "forall z. P(z)"), bad: ("\\\\Y. h @Y", "forall z. Q(z)") },
    Fixture { rule: Rule::AllE, ctx: &[("h", "forall x. P(x)")], good: ("h @Y", "P(Y)"), bad: ("h @Y", "P(Z)") },
    Fixture { rule: Rule::ExI, ctx: &[("a", "P(Y)")], good: ("pack a, Y to x. P(x)", "exists x. P(x)"), bad: ("pack a, Z to x. P(x)", "exists x. P(x)") },
    Fixture {
        rule: Rule::ExE,
        ctx: &[("h", "exists x. P(x)")],
        good: ("let [Y, u:P(Y)] = h in pack u, Y to z. P(z)", "exists z. P(z)"),
        bad: ("let [Y, u:Q(Y)] = h in pack u, Y to z. Q(z)", "exists z. Q(z)"),
    },
    Fixture { rule: Rule::BotE, ctx: &[("h", "bot")], good: ("abort[p] h", "p"), bad: ("abort[q] h", "p") },
];

/// Violations of the eigenvariable condition, each with the rule that must
/// report it.
type Judgment = (Rule, &'static [(&'static str, &'static str)], &'static str, &'static str);

const EIGEN_VIOLATIONS: &[Judgment] = &[
    (Rule::AllI, &[("k", "P(Y)")], "\\\\Y. k", "forall z. P(z)"),
    (Rule::AllE, &[("h", "forall x. exists y. R(x, y)")], "h @y", "exists y. R(y, y)"),
    (Rule::ExE, &[("h", "exists x. P(x)")], "let [Y, u:P(Y)] = h in u", "P(Y)"),
    (Rule::ExE, &[("h", "exists x. P(x)"), ("k", "Q(Y)")], "let [Y, u:P(Y)] = h in k", "Q(Y)"),
];

fn judge(ctx: &[(&str, &str)], term: &str, goal: &str) -> Result<(), CheckError> {
    let mut ar = std::collections::HashMap::new();
    let ctx = Context::from_pairs(ctx.iter().map(|&(x, f)| (x, parse_at(f, &mut ar).unwrap())));
    let goal = parse_at(goal, &mut ar).unwrap();
    let m = parse_term_at(term, &mut ar).unwrap();
    type_check(&ctx, &m, &goal)
}

fn checker_negatives() -> Outcome {
    for fx in FIXTURES {
        if let Err(e) = judge(fx.ctx, fx.good.0, fx.good.1) {
            return Err(format!("{} positive instance rejected: {e}", fx.rule));
        }
        if judge(fx.ctx, fx.bad.0, fx.bad.1).is_ok() {
            return Err(format!("{} perturbed instance accepted", fx.rule));
        }
    }
    for &(rule, ctx, term, goal) in EIGEN_VIOLATIONS {
        match judge(ctx, term, goal) {
            Err(CheckError::EigenvariableViolation { rule: r, .. }) if r == rule => {}
            other => return Err(format!("{rule} violation `{term}` gave {other:?}")),
        }
    }
    Ok(format!(
        "{} rules with positive and perturbed instances, {} eigenvariable violations caught",
        FIXTURES.len(),
        EIGEN_VIOLATIONS.len()
    ))
}

fn round_trips(runs: &[Attempt]) -> Outcome {
    let mut runner = TestRunner::deterministic();
    let strat = (formula(6), closed_formula(4));
    for i in 0..1000 {
        let (f, g) = strat.new_tree(&mut runner).unwrap().current();
        let f = if i % 2 == 0 { f } else { g };
        let text = print(&f);
        match parse(&text) {
            Ok(back) if alpha_eq(&back, &f) => {}
            Ok(back) => return Err(format!("{text} reparsed as {}", print(&back))),
            Err(e) => return Err(format!("{text}: {e}")),
        }
    }
    for a in runs {
        let aut = a.automaton();
        let run = a.result.run().unwrap();
        let text = serde_json::to_string(&run.to_json(aut)).map_err(|e| e.to_string())?;
        let doc: RunJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let back = RunTree::from_json(aut, &doc).map_err(|e| format!("{}: {e}", print(&a.formula)))?;
        if back != *run {
            return Err(format!("{}: replayed run differs", print(&a.formula)));
        }
    }
    Ok(format!("1000 formulas reparsed, {} runs serialized and replayed", runs.len()))
}

fn main() {
    let mut runs = Vec::new();
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "worked example reproduction", worked_example()),
        (2, "provable corpus", provable_corpus(&mut runs)),
        (3, "non-theorem corpus", non_theorems()),
    ];
    results.push((5, "monotonicity under binding extension", monotonicity(&runs)));
    results.push((6, "emergence along accepting runs", emergence(&runs)));
    results.push((7, "checker negatives", checker_negatives()));
    results.push((8, "round trips", round_trips(&runs)));
    results.push((4, "oracle equivalence", oracle_equivalence()));
    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(msg) => println!("criterion {n} {name}: PASS ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} {name}: FAIL ({msg})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
}
