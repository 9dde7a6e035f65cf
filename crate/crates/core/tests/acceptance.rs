//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use recshacl::acorss::is_acorss_stable;
use recshacl::eval::{eval_shape_2v, eval_shape_3v_all};
use recshacl::fixpoint::{
    enumerate_stable, enumerate_supported, kripke_kleene, well_founded, Limits,
};
use recshacl::interp::exactify;
use recshacl::oracle::{oracle_partial_stable, oracle_supported, oracle_unique_extension};
use recshacl::schema::to_snf;
use recshacl::{
    validate, Graph, PartialInterpretation, Program, SemanticsKind, ShapeAssignment, TruthValue,
    ValidationMode,
};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:?}, budget {budget:?}"))
}

fn names(g: &Graph, set: &recshacl::NodeSet) -> Vec<String> {
    g.names_of(set).map(str::to_owned).collect()
}

fn nodes_with(g: &Graph, p: &PartialInterpretation, shape: &str, v: TruthValue) -> Vec<String> {
    let id = p.vocabulary().id(shape).unwrap();
    names(g, &p.nodes_with(id, v))
}

fn by_name(g: &Graph, m: &ShapeAssignment, shape: &str) -> Vec<String> {
    names(g, m.by_name(shape).unwrap())
}

fn v(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn example1() -> Outcome {
    let start = Instant::now();
    let g = fig1();
    let schema = schema_fixture("example1.shacl");
    let prog = Program::new(&schema, &g).map_err(|e| e.to_string())?;
    use TruthValue::*;

    let wf = well_founded(&prog);
    ensure(wf.is_exact(), || "WF model is not exact".into())?;
    let wf = wf.lower().clone();
    ensure(by_name(&g, &wf, "atRisk") == v(&["d", "e", "f"]), || {
        format!("WF atRisk = {:?}", by_name(&g, &wf, "atRisk"))
    })?;
    let can_work = by_name(&g, &wf, "canWork");
    ensure(can_work == v(&["a", "b", "c", "Pfizer", "Cough"]), || {
        format!("WF canWork = {can_work:?}")
    })?;

    let kk = kripke_kleene(&prog);
    let persons = |xs: Vec<String>| -> Vec<String> {
        xs.into_iter().filter(|x| x.len() == 1).collect()
    };
    ensure(nodes_with(&g, &kk, "atRisk", Unknown) == v(&["a", "b"]), || {
        format!("KK atRisk u = {:?}", nodes_with(&g, &kk, "atRisk", Unknown))
    })?;
    ensure(persons(nodes_with(&g, &kk, "atRisk", False)) == v(&["c"]), || {
        format!("KK atRisk f = {:?}", nodes_with(&g, &kk, "atRisk", False))
    })?;
    ensure(nodes_with(&g, &kk, "atRisk", True) == v(&["d", "e", "f"]), || {
        format!("KK atRisk t = {:?}", nodes_with(&g, &kk, "atRisk", True))
    })?;

    let limits = Limits::default();
    let sup = enumerate_supported(&prog, limits).map_err(|e| e.to_string())?;
    ensure(sup.len() == 2, || format!("{} supported models", sup.len()))?;
    let mut at_risk: Vec<Vec<String>> = sup.iter().map(|m| by_name(&g, m, "atRisk")).collect();
    at_risk.sort();
    ensure(
        at_risk == vec![v(&["a", "b", "d", "e", "f"]), v(&["d", "e", "f"])],
        || format!("supported atRisk sets {at_risk:?}"),
    )?;
    let st = enumerate_stable(&prog, limits).map_err(|e| e.to_string())?;
    ensure(st == vec![wf], || format!("stable models {st:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{:?}", start.elapsed()))
}

fn example2() -> Outcome {
    let start = Instant::now();
    let g = fig1();
    let schema = schema_fixture("example2.shacl");
    let prog = Program::new(&schema, &g).map_err(|e| e.to_string())?;
    let sup = enumerate_supported(&prog, Limits::default()).map_err(|e| e.to_string())?;
    let aft: Vec<_> = enumerate_stable(&prog, Limits::default()).map_err(|e| e.to_string())?;
    ensure(aft.len() == 1, || format!("{} AFT-stable models", aft.len()))?;
    let safe = by_name(&g, &aft[0], "Safe");
    ensure(safe == v(&["a", "b", "c", "Pfizer", "Cough"]), || format!("Safe = {safe:?}"))?;
    let acorss: Vec<Vec<String>> = sup
        .iter()
        .filter(|m| is_acorss_stable(&prog, m))
        .map(|m| by_name(&g, m, "Safe"))
        .collect();
    ensure(acorss.len() == 2, || format!("{} ACORSS-stable models", acorss.len()))?;
    ensure(acorss.contains(&safe), || "the AFT-stable model is not level-stable".into())?;
    let all = names(&g, &g.full_set());
    ensure(acorss.contains(&all), || format!("level-stable models {acorss:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{:?}", start.elapsed()))
}

fn coverage(batch: &[Instance]) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    for inst in batch {
        for r in inst.schema.rules() {
            connectives(&r.body, &mut seen);
        }
    }
    let missing: Vec<&str> = ALL_CONNECTIVES.iter().copied().filter(|c| !seen.contains(c)).collect();
    ensure(missing.is_empty(), || format!("connectives never generated: {missing:?}"))
}

fn approximator() -> Outcome {
    let start = Instant::now();
    let batch = random_instances(200, 1000);
    coverage(&batch)?;
    let mut checks = 0u64;
    for inst in &batch {
        let prog = Program::new(&inst.schema, &inst.graph).map_err(|e| e.to_string())?;
        let vocab = prog.vocabulary().clone();
        let domain = prog.domain_len();
        let n = prog.atom_count() as u32;
        let images: Vec<PartialInterpretation> =
            (0..3u64.pow(n)).map(|c| prog.psi_op(&pair(&vocab, domain, c))).collect();
        // Every refinement step sets one unknown atom to t or f; monotonicity
        // along those steps gives it for the whole order.
        for code in 0..3u64.pow(n) {
            for i in 0..n {
                let w = 3u64.pow(i);
                if code / w % 3 != 1 {
                    continue;
                }
                for finer in [code - w, code + w] {
                    checks += 1;
                    ensure(images[code as usize].precision_leq(&images[finer as usize]).unwrap(), || {
                        format!("seed {}: psi not monotone between pair codes {code} and {finer}", inst.seed)
                    })?;
                }
            }
        }
        for code in 0..1u64 << n {
            let a = assignment(&vocab, domain, code);
            checks += 1;
            ensure(prog.psi_op(&exactify(&a)) == exactify(&prog.t_op(&a)), || {
                format!("seed {}: psi and T differ on exact pair {code}", inst.seed)
            })?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} instances, {checks} checks, {:?}", batch.len(), start.elapsed()))
}

fn restrict_all(ms: &[ShapeAssignment], vocab: &std::sync::Arc<recshacl::Vocabulary>) -> Vec<ShapeAssignment> {
    ms.iter().map(|m| m.restrict(vocab.clone()).unwrap()).collect()
}

fn level_stability() -> Outcome {
    let start = Instant::now();
    let batch = random_instances(200, 1000);
    let limits = Limits::default();
    let mut stable_models = 0;
    for inst in &batch {
        let prog = Program::new(&inst.schema, &inst.graph).map_err(|e| e.to_string())?;
        for m in enumerate_stable(&prog, limits).map_err(|e| e.to_string())? {
            stable_models += 1;
            ensure(is_acorss_stable(&prog, &m), || {
                format!("seed {}: stable model not level-stable", inst.seed)
            })?;
        }
        let snf = to_snf(&inst.schema).map_err(|e| e.to_string())?;
        let sprog = Program::new(&snf.schema, &inst.graph).map_err(|e| e.to_string())?;
        let sup = enumerate_supported(&sprog, limits).map_err(|e| e.to_string())?;
        let aft: Vec<_> = sup.iter().filter(|m| recshacl::fixpoint::is_stable(&sprog, m)).cloned().collect();
        let lvl: Vec<_> = sup.iter().filter(|m| is_acorss_stable(&sprog, m)).cloned().collect();
        let (aft, lvl) = (restrict_all(&aft, &snf.original), restrict_all(&lvl, &snf.original));
        ensure(sorted(aft) == sorted(lvl), || {
            format!("seed {}: stable sets differ after normalization", inst.seed)
        })?;
    }
    Ok(format!("{} instances, {stable_models} stable models, {:?}", batch.len(), start.elapsed()))
}

fn aft_structure() -> Outcome {
    let start = Instant::now();
    let batch = random_instances(200, 1000);
    let limits = Limits::default();
    let mut wf_checked = 0;
    for inst in &batch {
        let prog = Program::new(&inst.schema, &inst.graph).map_err(|e| e.to_string())?;
        let kk = kripke_kleene(&prog);
        let sup = enumerate_supported(&prog, limits).map_err(|e| e.to_string())?;
        for m in &sup {
            ensure(kk.precision_leq(&exactify(m)).unwrap(), || {
                format!("seed {}: KK not below a supported model", inst.seed)
            })?;
        }
        let st = enumerate_stable(&prog, limits).map_err(|e| e.to_string())?;
        ensure(st.iter().all(|m| sup.contains(m)), || {
            format!("seed {}: a stable model is not supported", inst.seed)
        })?;
        let oracle = oracle_supported(&inst.schema, &inst.graph).map_err(|e| e.to_string())?;
        ensure(sorted(sup) == sorted(oracle), || {
            format!("seed {}: supported models differ from the oracle", inst.seed)
        })?;
        if prog.atom_count() <= 12 {
            wf_checked += 1;
            let partial = oracle_partial_stable(&inst.schema, &inst.graph).map_err(|e| e.to_string())?;
            let wf = well_founded(&prog);
            let least = partial
                .iter()
                .find(|p| partial.iter().all(|q| p.precision_leq(q).unwrap()));
            ensure(least == Some(&wf), || {
                format!("seed {}: WF is not the least partial stable pair", inst.seed)
            })?;
        }
    }
    Ok(format!(
        "{} instances, WF against oracle on {wf_checked}, {:?}",
        batch.len(),
        start.elapsed()
    ))
}

fn nonrecursive() -> Outcome {
    let start = Instant::now();
    let batch = random_nonrecursive(120, 5000);
    let limits = Limits::default();
    for inst in &batch {
        ensure(!inst.schema.is_recursive(), || format!("seed {} is recursive", inst.seed))?;
        let prog = Program::new(&inst.schema, &inst.graph).map_err(|e| e.to_string())?;
        let expected = oracle_unique_extension(&inst.schema, &inst.graph).map_err(|e| e.to_string())?;
        let fail = |what: &str| format!("seed {}: {what} differs from the unique extension", inst.seed);
        ensure(kripke_kleene(&prog) == exactify(&expected), || fail("KK"))?;
        ensure(well_founded(&prog) == exactify(&expected), || fail("WF"))?;
        let sup = enumerate_supported(&prog, limits).map_err(|e| e.to_string())?;
        ensure(sup == vec![expected.clone()], || fail("supported"))?;
        let st = enumerate_stable(&prog, limits).map_err(|e| e.to_string())?;
        ensure(st == vec![expected.clone()], || fail("stable"))?;
        let mut verdicts = BTreeSet::new();
        for sigma in SemanticsKind::ALL {
            for mode in ValidationMode::ALL {
                let r = validate(&prog, sigma, mode, limits).map_err(|e| e.to_string())?;
                let per_target: Vec<bool> = r.targets.iter().map(|t| t.pass).collect();
                verdicts.insert((r.pass, per_target));
            }
        }
        ensure(verdicts.len() == 1, || format!("seed {}: verdicts disagree", inst.seed))?;
    }
    Ok(format!("{} schemas, {:?}", batch.len(), start.elapsed()))
}

fn abbreviations() -> Outcome {
    let start = Instant::now();
    let batch = random_instances(200, 9000);
    let mut checks = 0u64;
    for inst in &batch {
        let g = &inst.graph;
        let vocab = inst.schema.vocabulary();
        let domain = g.domain_len();
        let n = (vocab.len() * domain) as u32;
        let shapes: Vec<_> = inst
            .schema
            .rules()
            .iter()
            .map(|r| r.body.clone())
            .chain(inst.schema.targets().iter().map(|t| t.query.clone()))
            .collect();
        for phi in &shapes {
            let expanded = phi.expand_abbreviations();
            for code in 0..1u64 << n {
                let a = assignment(vocab, domain, code);
                checks += 1;
                ensure(
                    eval_shape_2v(phi, g, &a).unwrap() == eval_shape_2v(&expanded, g, &a).unwrap(),
                    || format!("seed {}: two-valued mismatch for {phi}", inst.seed),
                )?;
            }
            for code in 0..3u64.pow(n) {
                let p = pair(vocab, domain, code);
                checks += 1;
                ensure(
                    eval_shape_3v_all(phi, g, &p).unwrap() == eval_shape_3v_all(&expanded, g, &p).unwrap(),
                    || format!("seed {}: three-valued mismatch for {phi}", inst.seed),
                )?;
            }
        }
    }
    Ok(format!("{} instances, {checks} checks, {:?}", batch.len(), start.elapsed()))
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_recshacl"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn cli() -> Outcome {
    let graph = "fixtures/fig1.graph";
    let cases: [(&[&str], i32, &str); 3] = [
        (
            &["validate", "--graph", graph, "--schema", "fixtures/example1.shacl", "--semantics", "wf", "--mode", "cautious"],
            1,
            "target top <= canWork: FAIL (witnesses: d, e, f)",
        ),
        (
            &["models", "--graph", graph, "--schema", "fixtures/example1.shacl", "--semantics", "supported"],
            0,
            "supported models: 2",
        ),
        (
            &["compare", "--graph", graph, "--schema", "fixtures/example2.shacl"],
            0,
            "AFT-stable: 1, ACORSS-stable: 2",
        ),
    ];
    for (args, code, needle) in cases {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure(first == second, || format!("`{}` is not deterministic", args[0]))?;
        ensure(first.0 == code, || format!("`{}` exited {} instead of {code}", args[0], first.0))?;
        let text = String::from_utf8_lossy(&first.1);
        ensure(text.contains(needle), || format!("`{}` output lacks {needle:?}:\n{text}", args[0]))?;
    }
    Ok("3 commands, 2 runs each".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Example 1 reproduction", example1),
        ("Example 2 reproduction", example2),
        ("approximator monotone and exact on two-valued pairs", approximator),
        ("fixpoint-stable implies level-stable; equal after normalization", level_stability),
        ("KK, WF, stable and supported structure against the oracle", aft_structure),
        ("non-recursive schemas have one model under every semantics", nonrecursive),
        ("or/forall agree with their abbreviations", abbreviations),
        ("CLI exit codes, outputs and determinism", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
