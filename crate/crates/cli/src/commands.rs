use std::path::Path as FsPath;
use std::sync::Arc;

use serde_json::{json, Value};

use lpa_core::chen::{ChainReport, ChenSpec};
use lpa_core::io;
use lpa_core::leavitt::verify_relations;
use lpa_core::moduli;
use lpa_core::quiverrep::{
    a_dimension, is_full, is_indecomposable_with_budget, is_irreducible_with_budget, is_isomorphic_with_budget,
    is_nondegenerate, ker_j, nabla, recover, satisfies_condition_i, sigma, Decomposition, Irreducibility,
    Isomorphism, Verdict,
};
use lpa_core::{Error, Graph, Rep};

use crate::args::{ChenCommand, Decide, ModuliCommand};
use crate::input::{self, Source};
use crate::report::{write_atomic, CmdResult, Failure, Report};

fn rep_value(rep: &Rep) -> Value {
    serde_json::to_value(io::rep_to_json(rep)).expect("plain data serializes")
}

fn write_rep(out: Option<&FsPath>, rep: &Rep) -> CmdResult {
    match out {
        Some(path) => write_atomic(path, &io::to_pretty(&io::rep_to_json(rep))),
        None => Ok(()),
    }
}

fn irreducibility(rep: &Rep, seed: u64, budget: u128) -> CmdResult<Irreducibility> {
    match is_irreducible_with_budget(rep, seed, budget) {
        Err(Error::ZeroRep) => Ok(Irreducibility::No(lpa_core::Subspace::zero(rep))),
        r => Ok(r?),
    }
}

fn decomposition(rep: &Rep, seed: u64, budget: u128) -> CmdResult<Decomposition> {
    match is_indecomposable_with_budget(rep, seed, budget) {
        Err(Error::ZeroRep) => Ok(Decomposition::No(lpa_core::Subspace::zero(rep), lpa_core::Subspace::zero(rep))),
        r => Ok(r?),
    }
}

fn require(report: &mut Report, wanted: bool, verdicts: &[(&str, Verdict)]) {
    if !wanted {
        return;
    }
    let open: Vec<&str> = verdicts
        .iter()
        .filter(|(_, v)| *v == Verdict::Unknown)
        .map(|(name, _)| *name)
        .collect();
    if !open.is_empty() {
        report.fail(Failure::undecided(format!("undecided: {}", open.join(", "))));
    }
}

pub fn analyze(report: &mut Report, src: Source, a: &Decide) -> CmdResult {
    let name = a.rep.to_string_lossy();
    report.input("rep", &name);
    report.seed = Some(a.seed);
    let rep = src.rep(&name)?;
    let g = rep.graph();
    let budget = input::budget()?;
    let irr = irreducibility(&rep, a.seed, budget)?;
    let indec = decomposition(&rep, a.seed, budget)?;
    let (s, _) = sigma(&rep);
    report.results = json!({
        "valid": true,
        "field": rep.field().to_string(),
        "dims": io::dims_to_json(g, &rep.dims()),
        "nondegenerate": is_nondegenerate(&rep),
        "full": is_full(&rep),
        "condition_I": satisfies_condition_i(&rep),
        "a_dimension": io::dims_to_json(g, &a_dimension(&rep)),
        "sigma_dims": io::dims_to_json(g, &s.dims()),
        "ker_j_dims": io::dims_to_json(g, &ker_j(&rep).dims()),
        "irreducible": irr.verdict().to_string(),
        "indecomposable": indec.verdict().to_string(),
    });
    require(
        report,
        a.require_decision,
        &[("irreducible", irr.verdict()), ("indecomposable", indec.verdict())],
    );
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub enum Which {
    Sigma,
    Nabla,
    Recover,
}

pub fn functor(report: &mut Report, src: Source, which: Which, rep: &FsPath, out: Option<&FsPath>) -> CmdResult {
    let name = rep.to_string_lossy();
    report.input("rep", &name);
    let before = src.rep(&name)?;
    let after = match which {
        Which::Sigma => sigma(&before).1,
        Which::Nabla => nabla(&before).0,
        Which::Recover => recover(&before),
    };
    let g = before.graph();
    report.results = json!({
        "before": io::dims_to_json(g, &before.dims()),
        "after": io::dims_to_json(g, &after.dims()),
        "rep": rep_value(&after),
    });
    if let Some(out) = out {
        report.input("out", out.display());
    }
    write_rep(out, &after)
}

pub fn iso(report: &mut Report, src: Source, first: &FsPath, second: &FsPath, seed: u64, require_decision: bool) -> CmdResult {
    let (n1, n2) = (first.to_string_lossy(), second.to_string_lossy());
    report.input("first", &n1);
    report.input("second", &n2);
    report.seed = Some(seed);
    let (v, w) = (src.rep(&n1)?, src.rep(&n2)?);
    let verdict = is_isomorphic_with_budget(&v, &w, seed, input::budget()?)?;
    let g = v.graph();
    let witness = match &verdict {
        Isomorphism::Yes(h) => json!(g
            .vertices()
            .map(|x| (g.vertex_name(x).to_string(), json!(io::matrix_to_json(h.block(x)))))
            .collect::<serde_json::Map<_, _>>()),
        _ => Value::Null,
    };
    report.results = json!({ "isomorphic": verdict.verdict().to_string(), "witness": witness });
    require(report, require_decision, &[("isomorphic", verdict.verdict())]);
    Ok(())
}

pub fn irr(report: &mut Report, src: Source, a: &Decide) -> CmdResult {
    let name = a.rep.to_string_lossy();
    report.input("rep", &name);
    report.seed = Some(a.seed);
    let rep = src.rep(&name)?;
    let verdict = irreducibility(&rep, a.seed, input::budget()?)?;
    let witness = match &verdict {
        Irreducibility::No(s) => json!(io::subspace_to_json(rep.graph(), s)),
        _ => Value::Null,
    };
    report.results = json!({ "irreducible": verdict.verdict().to_string(), "submodule": witness });
    require(report, a.require_decision, &[("irreducible", verdict.verdict())]);
    Ok(())
}

pub fn indec(report: &mut Report, src: Source, a: &Decide) -> CmdResult {
    let name = a.rep.to_string_lossy();
    report.input("rep", &name);
    report.seed = Some(a.seed);
    let rep = src.rep(&name)?;
    let verdict = decomposition(&rep, a.seed, input::budget()?)?;
    let g = rep.graph();
    let witness = match &verdict {
        Decomposition::No(a, b) => json!([io::subspace_to_json(g, a), io::subspace_to_json(g, b)]),
        _ => Value::Null,
    };
    report.results = json!({ "indecomposable": verdict.verdict().to_string(), "summands": witness });
    require(report, a.require_decision, &[("indecomposable", verdict.verdict())]);
    Ok(())
}

pub fn pi_act(report: &mut Report, src: Source, element: &FsPath, operator: &FsPath, out: Option<&FsPath>) -> CmdResult {
    let (en, on) = (element.to_string_lossy(), operator.to_string_lossy());
    report.input("element", &en);
    report.input("operator", &on);
    let loaded = src.element(&en)?;
    let module = loaded.element.module().clone();
    let l = src.operator(&on, module.graph(), module.rep().field())?;
    let result = loaded.element.act(&l)?.normal_form();
    let encoded = io::pi_element_to_json(&result, loaded.rep_ref);
    report.results = json!({
        "element": encoded,
        "terms": result.term_count(),
        "zero": result.is_zero(),
    });
    if let Some(out) = out {
        report.input("out", out.display());
        write_atomic(out, &io::to_pretty(&encoded))?;
    }
    Ok(())
}

/// Parses a Chen subcommand into a constructor call and runs it.
pub fn build_chen(src: Source, cmd: &ChenCommand) -> CmdResult<(Arc<Graph>, Rep, Option<ChainReport>)> {
    let t = cmd.target();
    let g = src.graph(&t.graph)?;
    let f = t.field;
    let spec = match cmd {
        ChenCommand::Cyclic { cycle, lambda, .. } => ChenSpec::Cyclic {
            cycle: input::cycle(&g, cycle)?,
            lambda: f.parse(lambda)?,
        },
        ChenCommand::Sink { vertex, .. } => ChenSpec::Sink { vertex: g.vertex(vertex)? },
        ChenCommand::AnhNam { cycle, poly, .. } => ChenSpec::AnhNam {
            cycle: input::cycle(&g, cycle)?,
            poly: input::poly(f, poly)?,
        },
        ChenCommand::Twist { cycle, matrix, .. } => ChenSpec::TwistMatrix {
            cycle: input::cycle(&g, cycle)?,
            twist: input::matrix(f, matrix)?,
        },
        ChenCommand::Vector { cycle, vector, strict, .. } => ChenSpec::VectorVariant {
            cycle: input::cycle(&g, cycle)?,
            vector: input::scalars(f, vector)?,
            strict: *strict,
        },
        ChenCommand::GradedTrunc { vertex, cycle, depth, .. } => ChenSpec::GradedTrunc {
            vertex: g.vertex(vertex)?,
            cycle: input::cycle(&g, cycle)?,
            depth: *depth,
        },
        ChenCommand::IrrationalTrunc { prefix, depth, .. } => ChenSpec::IrrationalTrunc {
            prefix: input::edge_path(&g, prefix)?,
            depth: *depth,
        },
    };
    let (rep, chain) = spec.build(&g, f)?;
    Ok((g, rep, chain))
}

pub fn chen(report: &mut Report, src: Source, cmd: &ChenCommand) -> CmdResult {
    let t = cmd.target();
    report.input("kind", cmd.name());
    report.input("graph", &t.graph);
    report.input("field", t.field);
    let (g, rep, chain) = build_chen(src, cmd)?;
    report.results = json!({
        "dims": io::dims_to_json(&g, &rep.dims()),
        "full": is_full(&rep),
        "nondegenerate": is_nondegenerate(&rep),
        "rep": rep_value(&rep),
        "chain": chain.map(|c| io::chain_report_json(&g, &c)),
    });
    if let Some(out) = &t.out {
        report.input("out", out.display());
    }
    write_rep(t.out.as_deref(), &rep)
}

pub fn moduli(report: &mut Report, src: Source, cmd: &ModuliCommand) -> CmdResult {
    match cmd {
        ModuliCommand::Count { graph, dims, field, representatives } => {
            report.input("graph", graph);
            report.input("dims", dims);
            report.input("field", field);
            let g = src.graph(graph)?;
            let d = input::dims(&g, dims)?;
            let r = moduli::enumerate_and_count(&g, &d, *field, input::budget()?)?;
            let mut results = io::orbit_report_json(&g, &r);
            if !representatives {
                results.as_object_mut().expect("object").remove("representatives");
            }
            report.results = results;
        }
        ModuliCommand::Stabilizer { rep } => {
            let name = rep.to_string_lossy();
            report.input("rep", &name);
            let rep = src.rep(&name)?;
            report.results = io::stabilizer_report_json(&moduli::stabilizer_check(&rep));
        }
        ModuliCommand::ExpectedDim { graph, dims } => {
            report.input("graph", graph);
            report.input("dims", dims);
            let g = src.graph(graph)?;
            let d = input::dims(&g, dims)?;
            report.results = json!({ "expected_dim": moduli::expected_dim(&g, &d) });
        }
        ModuliCommand::ChenReport { n, d, field } => {
            report.input("n", n);
            report.input("d", d);
            report.input("field", field);
            report.results = io::chen_subvariety_json(&moduli::chen_subvariety_report(*n, *d, *field)?);
        }
    }
    Ok(())
}

pub fn verify(report: &mut Report, src: Source, rep: &FsPath, samples: usize, seed: u64) -> CmdResult {
    let name = rep.to_string_lossy();
    report.input("rep", &name);
    report.input("samples", samples);
    report.seed = Some(seed);
    let rep = src.rep(&name)?;
    let r = verify_relations(&rep, samples, seed);
    report.results = json!({
        "samples": r.samples,
        "checks": r.checks,
        "failures": r.failures,
        "passed": r.passed(),
    });
    if !r.passed() {
        report.fail(Failure::check_failed(format!("{} relation checks failed", r.failures.len())));
    }
    Ok(())
}
