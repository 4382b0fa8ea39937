//! The bundled worked examples and the `repro` suite that replays them.

use clap::Parser;
use serde::Deserialize;
use serde_json::{json, Value};

use lpa_core::quiverrep::{is_full, is_irreducible, is_nondegenerate, ker_j, nabla, sigma_subspace, a_dimension, Verdict};
use lpa_core::{DimVector, Field, Graph, Matrix, Subspace};

use crate::args::{ChenCommand, Cli, Command};
use crate::commands;
use crate::input::Source;
use crate::report::{CmdResult, Failure, Report};

const FILES: &[(&str, &str)] = &[
    ("bouquet2.json", include_str!("../corpus/bouquet2.json")),
    ("line2.json", include_str!("../corpus/line2.json")),
    ("full_degenerate.json", include_str!("../corpus/full_degenerate.json")),
    ("nondegenerate_not_full.json", include_str!("../corpus/nondegenerate_not_full.json")),
    ("nilpotent.json", include_str!("../corpus/nilpotent.json")),
    ("nilpotent_element.json", include_str!("../corpus/nilpotent_element.json")),
    ("vertex.json", include_str!("../corpus/vertex.json")),
    ("generic.json", include_str!("../corpus/generic.json")),
    ("caret_element.json", include_str!("../corpus/caret_element.json")),
    ("snip.json", include_str!("../corpus/snip.json")),
    ("glue.json", include_str!("../corpus/glue.json")),
    ("chen.json", include_str!("../corpus/chen.json")),
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[derive(Debug, Deserialize)]
struct ChenCase {
    name: String,
    args: Vec<String>,
    dims: std::collections::BTreeMap<String, usize>,
    #[serde(default)]
    simple: Option<bool>,
    #[serde(default)]
    chain: Option<Vec<usize>>,
}

struct Checks {
    rows: Vec<Value>,
    failed: usize,
}

impl Checks {
    fn check(&mut self, example: &str, what: &str, expected: Value, observed: Value) {
        let pass = expected == observed;
        if !pass {
            self.failed += 1;
        }
        self.rows.push(json!({
            "example": example,
            "check": what,
            "expected": expected,
            "observed": observed,
            "pass": pass,
        }));
    }
}

fn total(d: &DimVector) -> Value {
    json!(d.total())
}

fn pi_act(element: &str, operator: &str) -> CmdResult<Value> {
    let mut r = Report::new("pi-act");
    commands::pi_act(&mut r, Source::Corpus, element.as_ref(), operator.as_ref(), None)?;
    Ok(r.results)
}

/// Terms as `(origin, edges, vector)` triples.
fn terms(results: &Value) -> Value {
    json!(results["element"]["terms"]
        .as_array()
        .map(|ts| ts
            .iter()
            .map(|t| json!([t["path"]["origin"], t["path"]["edges"], t["vector"]]))
            .collect::<Vec<_>>())
        .unwrap_or_default())
}

fn worked_examples(c: &mut Checks) -> CmdResult {
    let src = Source::Corpus;

    let name = "full_degenerate.json";
    let rep = src.rep(name)?;
    c.check(name, "full", json!(true), json!(is_full(&rep)));
    c.check(name, "nondegenerate", json!(false), json!(is_nondegenerate(&rep)));
    c.check(name, "A-dimension", json!(1), total(&a_dimension(&rep)));

    let name = "nondegenerate_not_full.json";
    let rep = src.rep(name)?;
    c.check(name, "nondegenerate", json!(true), json!(is_nondegenerate(&rep)));
    c.check(name, "full", json!(false), json!(is_full(&rep)));
    let e1 = Subspace::new(&rep, vec![Matrix::from_i64(Field::Rationals, &[&[1], &[0], &[0]])])?;
    c.check(name, "sigma is the span of E1", json!(true), json!(sigma_subspace(&rep) == e1));
    c.check(name, "A-dimension", json!(1), total(&a_dimension(&rep)));

    let name = "nilpotent.json";
    let rep = src.rep(name)?;
    c.check(name, "ker j is everything", json!(true), json!(ker_j(&rep).is_whole(&rep)));
    c.check(name, "nabla is zero", json!(0), total(&nabla(&rep).0.dims()));
    let r = pi_act("nilpotent_element.json", "vertex.json")?;
    c.check(name, "[v, E2] is zero", json!(true), r["zero"].clone());

    let name = "caret_element.json";
    let r = pi_act(name, "snip.json")?;
    c.check(name, "acted on by e1e2", json!([["v", [], ["-7", "-11"]]]), terms(&r));
    let r = pi_act(name, "glue.json")?;
    c.check(
        name,
        "acted on by e1*",
        json!([["v", ["e1", "e1"], ["1", "-2"]], ["v", ["e1", "e2"], ["3", "5"]]]),
        terms(&r),
    );
    Ok(())
}

fn chen_examples(c: &mut Checks, seed: u64) -> CmdResult {
    let cases: Vec<ChenCase> = serde_json::from_str(file("chen.json").expect("bundled"))
        .map_err(|e| Failure::invalid(format!("chen.json: {e}")))?;
    for case in cases {
        let cli = Cli::try_parse_from(std::iter::once("lpa".to_string()).chain(case.args.iter().cloned()))
            .map_err(|e| Failure::invalid(format!("{}: {e}", case.name)))?;
        let Command::Chen { kind } = cli.command else {
            return Err(Failure::invalid(format!("{}: not a chen invocation", case.name)));
        };
        let (g, rep, chain) = commands::build_chen(Source::Corpus, &kind)?;
        let dims: std::collections::BTreeMap<String, usize> =
            g.vertices().map(|v| (g.vertex_name(v).to_string(), rep.dim(v))).collect();
        c.check(&case.name, "dimensions", json!(case.dims), json!(dims));
        if let Some(simple) = case.simple {
            c.check(&case.name, "full", json!(true), json!(is_full(&rep)));
            c.check(&case.name, "nondegenerate", json!(true), json!(is_nondegenerate(&rep)));
            let verdict = is_irreducible(&rep, seed)?.verdict();
            let expected = if simple { Verdict::Yes } else { Verdict::No };
            c.check(&case.name, "irreducible", json!(expected.to_string()), json!(verdict.to_string()));
        }
        if let Some(expected) = case.chain {
            let chain = chain.ok_or_else(|| Failure::invalid(format!("{}: no chain produced", case.name)))?;
            c.check(&case.name, "chain dimensions", json!(expected), json!(chain.dims));
            c.check(&case.name, "chain is valid", json!(true), json!(chain.holds()));
        }
        if matches!(kind, ChenCommand::Cyclic { .. }) {
            let s = sigma_subspace(&rep);
            c.check(&case.name, "sigma is the identity", json!(true), json!(s.is_whole(&rep)));
        }
    }
    Ok(())
}

fn orbit_examples(c: &mut Checks) -> CmdResult {
    let g = std::sync::Arc::new(Graph::bouquet(2));
    for (p, classes, nonzero) in [(2, 4, 3), (3, 9, 8)] {
        let f = Field::prime(p)?;
        let r = lpa_core::moduli::enumerate_and_count(&g, &DimVector(vec![1]), f, 1 << 20)?;
        let name = format!("bouquet 2, dimension 1, {f}");
        c.check(&name, "orbits", json!(classes), json!(r.classes));
        c.check(&name, "orbits with a nonzero map", json!(nonzero), json!(r.nonzero_classes));
    }
    Ok(())
}

pub fn repro(report: &mut Report, seed: u64) -> CmdResult {
    report.seed = Some(seed);
    report.input("corpus", "bundled");
    let mut c = Checks { rows: Vec::new(), failed: 0 };
    worked_examples(&mut c)?;
    chen_examples(&mut c, seed)?;
    orbit_examples(&mut c)?;
    report.results = json!({
        "checks": c.rows.len(),
        "failed": c.failed,
        "details": c.rows,
    });
    if c.failed > 0 {
        report.fail(Failure::check_failed(format!("{} example checks failed", c.failed)));
    }
    Ok(())
}
