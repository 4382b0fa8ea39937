//! JSON encodings of graphs, representations, subspaces, Π elements and
//! Leavitt algebra elements. Scalars are strings in the field's text form.

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chen::ChainReport;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graph::{Graph, Path};
use crate::leavitt::{LElement, LMonomial, PiElement, PiModule};
use crate::matrix::Matrix;
use crate::moduli::{ChenSubvarietyReport, OrbitReport, StabilizerReport};
use crate::quiverrep::{DimVector, Rep, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<String>,
    #[serde(default)]
    pub edges: Vec<String>,
}

/// An inline object or a path to a file holding one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Inline<T> {
    File(String),
    Value(T),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub graph: Inline<GraphJson>,
    pub field: Field,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub path: PathJson,
    pub vector: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiElementJson {
    pub rep: Inline<RepJson>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialJson {
    #[serde(default = "one_text")]
    pub coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PathJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<PathJson>,
}

fn one_text() -> String {
    "1".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LElementJson {
    pub monomials: Vec<MonomialJson>,
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn read_file(base: Option<&FsPath>, name: &str) -> Result<String> {
    let path: PathBuf = match base {
        Some(b) => b.join(name),
        None => PathBuf::from(name),
    };
    std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn resolve<T: for<'de> Deserialize<'de> + Clone>(x: &Inline<T>, base: Option<&FsPath>) -> Result<(T, Option<PathBuf>)> {
    match x {
        Inline::Value(v) => Ok((v.clone(), base.map(FsPath::to_path_buf))),
        Inline::File(name) => {
            let text = read_file(base, name)?;
            let full = base.map_or_else(|| PathBuf::from(name), |b| b.join(name));
            Ok((parse_json(&text)?, full.parent().map(FsPath::to_path_buf)))
        }
    }
}

pub fn graph_to_json(g: &Graph) -> GraphJson {
    GraphJson {
        vertices: g.vertex_names().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                name: e.name.clone(),
                src: g.vertex_name(e.src).to_string(),
                dst: g.vertex_name(e.dst).to_string(),
            })
            .collect(),
    }
}

pub fn graph_from_json(j: &GraphJson) -> Result<Graph> {
    Graph::new(
        j.vertices.iter().cloned(),
        j.edges.iter().map(|e| (e.name.clone(), e.src.clone(), e.dst.clone())),
    )
}

pub fn path_to_json(g: &Graph, p: &Path) -> PathJson {
    PathJson {
        origin: Some(g.vertex_name(p.origin()).to_string()),
        edges: p.edges().iter().map(|&e| g.edge_name(e).to_string()).collect(),
    }
}

pub fn path_from_json(g: &Graph, j: &PathJson) -> Result<Path> {
    let edges: Vec<&str> = j.edges.iter().map(String::as_str).collect();
    g.path_named(j.origin.as_deref(), &edges)
}

pub fn scalars_to_json(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(Scalar::to_string).collect()
}

pub fn scalars_from_json(field: Field, xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| field.parse(s)).collect()
}

pub fn matrix_to_json(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| scalars_to_json(r)).collect()
}

/// Rows of strings; `cols` fixes the width when there are no rows.
pub fn matrix_from_json(field: Field, rows: &[Vec<String>], cols: usize) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| scalars_from_json(field, r))
        .collect::<Result<Vec<_>>>()?;
    let width = parsed.first().map_or(cols, Vec::len);
    if parsed.iter().any(|r| r.len() != width) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(Matrix::from_rows(field, width, parsed))
}

pub fn rep_to_json(rep: &Rep) -> RepJson {
    let g = rep.graph();
    RepJson {
        graph: Inline::Value(graph_to_json(g)),
        field: rep.field(),
        dims: g.vertices().map(|v| (g.vertex_name(v).to_string(), rep.dim(v))).collect(),
        matrices: g
            .edge_ids()
            .map(|e| (g.edge_name(e).to_string(), matrix_to_json(rep.mat(e))))
            .collect(),
    }
}

/// Builds the representation; a graph given as a file name is read relative
/// to `base`. Missing dimensions are 0 and missing matrices are zero.
pub fn rep_from_json(j: &RepJson, base: Option<&FsPath>) -> Result<Rep> {
    j.field.validate()?;
    let (gj, _) = resolve(&j.graph, base)?;
    let g = Arc::new(graph_from_json(&gj)?);
    let mut dims = vec![0; g.vertex_count()];
    for (name, &d) in &j.dims {
        dims[g.vertex(name)?] = d;
    }
    let mut mats: Vec<Option<Matrix>> = vec![None; g.edge_count()];
    for (name, rows) in &j.matrices {
        let e = g.edge_id(name)?;
        mats[e] = Some(matrix_from_json(j.field, rows, dims[g.src(e)])?);
    }
    let mats = g
        .edge_ids()
        .zip(mats)
        .map(|(e, m)| m.unwrap_or_else(|| Matrix::zeros(j.field, dims[g.dst(e)], dims[g.src(e)])))
        .collect();
    Rep::new(g, j.field, dims, mats)
}

pub fn parse_rep(text: &str, base: Option<&FsPath>) -> Result<Rep> {
    rep_from_json(&parse_json(text)?, base)
}

pub fn dims_to_json(g: &Graph, d: &DimVector) -> Value {
    Value::Object(
        g.vertices()
            .map(|v| (g.vertex_name(v).to_string(), json!(d.get(v))))
            .collect(),
    )
}

/// Per-vertex lists of basis columns.
pub fn subspace_to_json(g: &Graph, s: &Subspace) -> BTreeMap<String, Vec<Vec<String>>> {
    g.vertices()
        .map(|v| {
            let cols = s.component(v).columns().iter().map(|c| scalars_to_json(c)).collect();
            (g.vertex_name(v).to_string(), cols)
        })
        .collect()
}

pub fn subspace_from_json(rep: &Rep, j: &BTreeMap<String, Vec<Vec<String>>>) -> Result<Subspace> {
    let g = rep.graph();
    let f = rep.field();
    let mut blocks: Vec<Matrix> = g.vertices().map(|v| Matrix::zeros(f, rep.dim(v), 0)).collect();
    for (name, cols) in j {
        let v = g.vertex(name)?;
        let cols = cols
            .iter()
            .map(|c| scalars_from_json(f, c))
            .collect::<Result<Vec<_>>>()?;
        if cols.iter().any(|c| c.len() != rep.dim(v)) {
            return Err(Error::DimensionMismatch(format!("column length at `{name}`")));
        }
        blocks[v] = Matrix::from_columns(f, rep.dim(v), &cols);
    }
    Subspace::new(rep, blocks)
}

/// Encodes an element; `rep` is the reference written into the file.
pub fn pi_element_to_json(w: &PiElement, rep: Inline<RepJson>) -> PiElementJson {
    let g = w.module().graph();
    PiElementJson {
        rep,
        terms: w
            .terms()
            .map(|(p, x)| TermJson {
                path: path_to_json(g, p),
                vector: scalars_to_json(x),
            })
            .collect(),
    }
}

pub fn pi_terms_from_json(module: &Arc<PiModule>, terms: &[TermJson]) -> Result<PiElement> {
    let g = module.graph();
    let f = module.rep().field();
    let terms = terms
        .iter()
        .map(|t| Ok((path_from_json(g, &t.path)?, scalars_from_json(f, &t.vector)?)))
        .collect::<Result<Vec<_>>>()?;
    PiElement::new(module, terms)
}

/// The representation referenced by an element file, resolved relative to
/// `base`.
pub fn pi_element_rep(j: &PiElementJson, base: Option<&FsPath>) -> Result<Rep> {
    let (rj, dir) = resolve(&j.rep, base)?;
    rep_from_json(&rj, dir.as_deref())
}

pub fn l_element_to_json(g: &Graph, l: &LElement) -> LElementJson {
    LElementJson {
        monomials: l
            .monomials
            .iter()
            .map(|m| MonomialJson {
                coeff: m.coeff.to_string(),
                p: Some(path_to_json(g, &m.p)),
                q: Some(path_to_json(g, &m.q)),
            })
            .collect(),
    }
}

/// A missing `p` or `q` stands for the end vertex of the other.
pub fn l_element_from_json(g: &Graph, field: Field, j: &LElementJson) -> Result<LElement> {
    let monomials = j
        .monomials
        .iter()
        .map(|m| {
            let coeff = field.parse(&m.coeff)?;
            let p = m.p.as_ref().map(|p| path_from_json(g, p)).transpose()?;
            let q = m.q.as_ref().map(|q| path_from_json(g, q)).transpose()?;
            match (p, q) {
                (Some(p), Some(q)) => LMonomial::new(coeff, p, q),
                (Some(p), None) => Ok(LMonomial::path(coeff, p)),
                (None, Some(q)) => Ok(LMonomial::ghost(coeff, q)),
                (None, None) => Err(Error::MalformedMonomial("neither p nor q given".into())),
            }
        })
        .collect::<Result<_>>()?;
    Ok(LElement { monomials })
}

pub fn orbit_report_json(g: &Graph, r: &OrbitReport) -> Value {
    json!({
        "total": r.total.to_string(),
        "irreducible": r.irreducible.to_string(),
        "classes": r.classes,
        "nonzero_classes": r.nonzero_classes,
        "expected_dim": r.expected_dim,
        "representatives": r.representatives.iter().map(|(i, rep)| json!({
            "index": i.to_string(),
            "matrices": g.edge_ids().map(|e| (g.edge_name(e).to_string(), json!(matrix_to_json(rep.mat(e))))).collect::<serde_json::Map<_, _>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn stabilizer_report_json(r: &StabilizerReport) -> Value {
    json!({
        "kernel_dim": r.kernel_dim,
        "end_dim": r.end_dim,
        "expected_dim": r.expected_dim,
        "transverse_dim": r.transverse_dim,
        "consistent": r.consistent(),
    })
}

pub fn chen_subvariety_json(r: &ChenSubvarietyReport) -> Value {
    json!({
        "n": r.n,
        "d": r.d,
        "q": r.q,
        "lambda_family": r.lambda_family.to_string(),
        "twisted": r.twisted.iter().map(|t| json!({
            "cycle_len": t.cycle_len,
            "poly_degree": t.poly_degree,
            "count": t.count.to_string(),
        })).collect::<Vec<_>>(),
        "expected_dim": r.expected_dim,
        "ambient": r.ambient.map(|a| a.to_string()),
        "note": r.note,
    })
}

pub fn chain_report_json(g: &Graph, c: &ChainReport) -> Value {
    json!({
        "length": c.len(),
        "dims": c.dims,
        "all_complete": c.all_complete,
        "strictly_descending": c.strictly_descending,
        "trivial_intersection": c.trivial_intersection,
        "degenerate": c.degenerate,
        "full": c.full,
        "members": c.members.iter().map(|s| json!(subspace_to_json(g, s))).collect::<Vec<_>>(),
    })
}
