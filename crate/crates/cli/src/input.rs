//! Loading inputs from disk or from the bundled corpus, and parsing the
//! compact argument syntaxes (`e1,e2`, `v=1,w=2`, `0,1;1,0`).

use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use lpa_core::io::{self, GraphJson, Inline, LElementJson, PiElementJson, RepJson};
use lpa_core::{Cycle, DimVector, Field, Graph, LElement, Matrix, Path, PiElement, PiModule, Poly, Rep, Scalar};

use crate::corpus;
use crate::report::{CmdResult, Failure};

/// Where named inputs come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Files,
    Corpus,
}

pub struct LoadedElement {
    pub element: PiElement,
    /// The representation reference as written in the input.
    pub rep_ref: Inline<RepJson>,
}

impl Source {
    fn text(&self, name: &str) -> CmdResult<String> {
        match self {
            Source::Files => std::fs::read_to_string(name).map_err(|e| Failure::invalid(format!("{name}: {e}"))),
            Source::Corpus => corpus::file(name)
                .map(str::to_string)
                .ok_or_else(|| Failure::invalid(format!("{name}: not in the bundled corpus"))),
        }
    }

    fn base(&self, name: &str) -> Option<PathBuf> {
        match self {
            Source::Files => FsPath::new(name).parent().map(FsPath::to_path_buf),
            Source::Corpus => None,
        }
    }

    /// A graph file, or `bouquet:N` / `line:N`.
    pub fn graph(&self, arg: &str) -> CmdResult<Arc<Graph>> {
        if let Some(g) = builtin_graph(arg)? {
            return Ok(Arc::new(g));
        }
        let text = self.text(arg)?;
        let j: GraphJson = io::parse_json(&text).map_err(|e| Failure::from(e).context(arg))?;
        Ok(Arc::new(io::graph_from_json(&j).map_err(|e| Failure::from(e).context(arg))?))
    }

    fn rep_json(&self, j: RepJson, base: Option<&FsPath>) -> CmdResult<Rep> {
        match (self, &j.graph) {
            (Source::Corpus, Inline::File(name)) => {
                let g = self.graph(name)?;
                let j = RepJson { graph: Inline::Value(io::graph_to_json(&g)), ..j };
                Ok(io::rep_from_json(&j, None)?)
            }
            _ => Ok(io::rep_from_json(&j, base)?),
        }
    }

    pub fn rep(&self, name: &str) -> CmdResult<Rep> {
        let text = self.text(name)?;
        let base = self.base(name);
        io::parse_json::<RepJson>(&text)
            .map_err(Failure::from)
            .and_then(|j| self.rep_json(j, base.as_deref()))
            .map_err(|e| e.context(name))
    }

    pub fn element(&self, name: &str) -> CmdResult<LoadedElement> {
        let text = self.text(name)?;
        let load = || -> CmdResult<LoadedElement> {
            let j: PiElementJson = io::parse_json(&text)?;
            let rep = match &j.rep {
                Inline::File(r) => {
                    let full = match self.base(name) {
                        Some(b) => b.join(r).to_string_lossy().into_owned(),
                        None => r.clone(),
                    };
                    self.rep(&full)?
                }
                Inline::Value(v) => self.rep_json(v.clone(), self.base(name).as_deref())?,
            };
            let module = PiModule::new(rep);
            let element = io::pi_terms_from_json(&module, &j.terms)?;
            Ok(LoadedElement { element, rep_ref: j.rep })
        };
        load().map_err(|e| e.context(name))
    }

    pub fn operator(&self, name: &str, g: &Graph, field: Field) -> CmdResult<LElement> {
        let text = self.text(name)?;
        io::parse_json::<LElementJson>(&text)
            .and_then(|j| io::l_element_from_json(g, field, &j))
            .map_err(|e| Failure::from(e).context(name))
    }
}

fn builtin_graph(arg: &str) -> CmdResult<Option<Graph>> {
    let Some((kind, n)) = arg.split_once(':') else {
        return Ok(None);
    };
    let n: usize = n
        .parse()
        .map_err(|_| Failure::invalid(format!("`{arg}`: expected a vertex or loop count")))?;
    match kind {
        "bouquet" if n >= 1 => Ok(Some(Graph::bouquet(n))),
        "line" if n >= 1 => Ok(Some(Graph::line(n))),
        _ => Err(Failure::invalid(format!("unknown builtin graph `{arg}`"))),
    }
}

fn items(list: &str) -> impl Iterator<Item = &str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn edge_path(g: &Graph, list: &str) -> CmdResult<Path> {
    let names: Vec<&str> = items(list).collect();
    Ok(g.path_named(None, &names)?)
}

pub fn cycle(g: &Graph, list: &str) -> CmdResult<Cycle> {
    Ok(g.cycle(edge_path(g, list)?)?)
}

pub fn scalars(field: Field, list: &str) -> CmdResult<Vec<Scalar>> {
    items(list).map(|s| Ok(field.parse(s)?)).collect()
}

/// Coefficients from the constant term upward.
pub fn poly(field: Field, list: &str) -> CmdResult<Poly> {
    Ok(Poly::new(field, scalars(field, list)?))
}

/// Rows separated by `;`, entries by `,`.
pub fn matrix(field: Field, text: &str) -> CmdResult<Matrix> {
    let rows = text
        .split(';')
        .map(|r| scalars(field, r))
        .collect::<CmdResult<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure::invalid(format!("ragged matrix `{text}`")));
    }
    Ok(Matrix::from_rows(field, cols, rows))
}

/// Either one count per vertex in order (`1,2`) or `name=count` pairs.
pub fn dims(g: &Graph, text: &str) -> CmdResult<DimVector> {
    let parts: Vec<&str> = items(text).collect();
    let count = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Failure::invalid(format!("`{s}` is not a dimension")))
    };
    if parts.iter().any(|p| p.contains('=')) {
        let mut d = vec![0; g.vertex_count()];
        for p in parts {
            let (name, n) = p
                .split_once('=')
                .ok_or_else(|| Failure::invalid(format!("mixed dimension syntax in `{text}`")))?;
            d[g.vertex(name.trim())?] = count(n)?;
        }
        return Ok(DimVector(d));
    }
    if parts.len() != g.vertex_count() {
        return Err(Failure::invalid(format!(
            "{} dimensions given for {} vertices",
            parts.len(),
            g.vertex_count()
        )));
    }
    Ok(DimVector(parts.into_iter().map(count).collect::<CmdResult<_>>()?))
}

pub fn budget() -> CmdResult<u128> {
    match std::env::var("LPA_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::invalid(format!("LPA_BUDGET=`{v}` is not a count"))),
        Err(_) => Ok(lpa_core::quiverrep::DEFAULT_BUDGET),
    }
}
