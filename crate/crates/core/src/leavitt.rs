//! Elements of the functor `Π(V)`: formal sums of `(path, vector)` terms
//! modulo `(p, x) ∼ Σ_e (pe, x·e)`, with the right action of the Leavitt path
//! algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::matrix::Echelon;
use crate::quiverrep::{ker_j, Rep, RepHom};

/// A representation together with its cached kernel of `j`.
#[derive(Debug)]
pub struct PiModule {
    rep: Rep,
    kernel: Vec<Echelon>,
}

impl PiModule {
    pub fn new(rep: Rep) -> Arc<Self> {
        let k = ker_j(&rep);
        let kernel = rep
            .graph()
            .vertices()
            .map(|v| {
                let mut e = Echelon::new(rep.field(), rep.dim(v));
                for c in k.component(v).columns() {
                    e.insert(&c);
                }
                e
            })
            .collect();
        Arc::new(PiModule { rep, kernel })
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn graph(&self) -> &Graph {
        self.rep.graph()
    }

    fn in_kernel(&self, v: VertexId, x: &[Scalar]) -> bool {
        self.kernel[v].contains(x)
    }

    /// Canonical representative of `x` modulo the kernel at `v`.
    fn reduce(&self, v: VertexId, x: &[Scalar]) -> Vec<Scalar> {
        self.kernel[v].reduce(x)
    }
}

/// A finite formal sum `Σ [p_i, x_i]` with `x_i ∈ V_{end p_i}`.
#[derive(Debug, Clone)]
pub struct PiElement {
    module: Arc<PiModule>,
    terms: BTreeMap<Path, Vec<Scalar>>,
}

/// Leaves of a refined element: no path is a prefix of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntichainForm {
    pub leaves: Vec<(Path, Vec<Scalar>)>,
}

/// `coeff · p · q*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMonomial {
    pub coeff: Scalar,
    pub p: Path,
    pub q: Path,
}

/// A linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LElement {
    pub monomials: Vec<LMonomial>,
}

impl LMonomial {
    pub fn new(coeff: Scalar, p: Path, q: Path) -> Result<Self> {
        if p.end() != q.end() {
            return Err(Error::MalformedMonomial(
                "p and q must end at the same vertex".into(),
            ));
        }
        Ok(LMonomial { coeff, p, q })
    }

    /// The path `p` (with `q` the end vertex).
    pub fn path(coeff: Scalar, p: Path) -> Self {
        let q = Path::vertex(p.end());
        LMonomial { coeff, p, q }
    }

    /// The ghost path `q*`.
    pub fn ghost(coeff: Scalar, q: Path) -> Self {
        let p = Path::vertex(q.end());
        LMonomial { coeff, p, q }
    }
}

fn is_zero_vec(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

fn add_into(terms: &mut BTreeMap<Path, Vec<Scalar>>, p: Path, x: Vec<Scalar>) {
    if is_zero_vec(&x) {
        return;
    }
    match terms.get_mut(&p) {
        Some(y) => {
            for (a, b) in y.iter_mut().zip(&x) {
                *a += b;
            }
            if is_zero_vec(y) {
                terms.remove(&p);
            }
        }
        None => {
            terms.insert(p, x);
        }
    }
}

impl PiElement {
    pub fn zero(module: &Arc<PiModule>) -> Self {
        PiElement {
            module: module.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Builds an element, merging repeated paths and dropping zero vectors.
    pub fn new(module: &Arc<PiModule>, terms: Vec<(Path, Vec<Scalar>)>) -> Result<Self> {
        let rep = module.rep();
        let mut map = BTreeMap::new();
        for (p, x) in terms {
            rep.graph().path(p.origin(), p.edges().to_vec())?;
            if x.len() != rep.dim(p.end()) {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} at `{}` of dimension {}",
                    x.len(),
                    rep.graph().vertex_name(p.end()),
                    rep.dim(p.end())
                )));
            }
            if x.iter().any(|s| s.field() != rep.field()) {
                return Err(Error::FieldMismatch(
                    rep.field().to_string(),
                    "vector entry".into(),
                ));
            }
            add_into(&mut map, p, x);
        }
        Ok(PiElement {
            module: module.clone(),
            terms: map,
        })
    }

    pub fn module(&self) -> &Arc<PiModule> {
        &self.module
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Vec<Scalar>)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_module(&self, other: &PiElement) -> Result<()> {
        if Arc::ptr_eq(&self.module, &other.module) || self.module.rep == other.module.rep {
            Ok(())
        } else {
            Err(Error::RepMismatch)
        }
    }

    fn with_terms(&self, terms: BTreeMap<Path, Vec<Scalar>>) -> PiElement {
        PiElement {
            module: self.module.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &PiElement) -> Result<PiElement> {
        self.same_module(other)?;
        let mut t = self.terms.clone();
        for (p, x) in &other.terms {
            add_into(&mut t, p.clone(), x.clone());
        }
        Ok(self.with_terms(t))
    }

    pub fn scale(&self, c: &Scalar) -> PiElement {
        let mut t = BTreeMap::new();
        for (p, x) in &self.terms {
            add_into(&mut t, p.clone(), x.iter().map(|a| a * c).collect());
        }
        self.with_terms(t)
    }

    pub fn sub(&self, other: &PiElement) -> Result<PiElement> {
        let minus = other.scale(&-self.module.rep.field().one());
        self.add(&minus)
    }

    /// `w·ν`: the terms whose path starts at `ν`.
    pub fn act_vertex(&self, v: VertexId) -> PiElement {
        self.with_terms(
            self.terms
                .iter()
                .filter(|(p, _)| p.origin() == v)
                .map(|(p, x)| (p.clone(), x.clone()))
                .collect(),
        )
    }

    /// `w·f` for an edge `f`.
    pub fn act_edge(&self, f: EdgeId) -> PiElement {
        let rep = &self.module.rep;
        let g = rep.graph();
        let mut t = BTreeMap::new();
        for (p, x) in &self.terms {
            if p.is_empty() {
                if g.src(f) == p.origin() {
                    add_into(&mut t, Path::vertex(g.dst(f)), rep.mat(f).mul_vec(x));
                }
            } else if p.edges()[0] == f {
                let head = g.single_edge(f);
                add_into(&mut t, p.strip_prefix(&head).unwrap(), x.clone());
            }
        }
        self.with_terms(t)
    }

    /// `w·f*` for an edge `f`.
    pub fn act_ghost_edge(&self, f: EdgeId) -> PiElement {
        let g = self.module.rep.graph();
        let e = g.single_edge(f);
        self.act_ghost(&e)
    }

    /// `w·p`; the empty path acts as its vertex.
    pub fn act_path(&self, p: &Path) -> PiElement {
        if p.is_empty() {
            return self.act_vertex(p.origin());
        }
        p.edges()
            .iter()
            .fold(self.act_vertex(p.origin()), |w, &e| w.act_edge(e))
    }

    /// `w·q*`: `[u, x] ↦ [qu, x]` when `q` ends where `u` starts.
    pub fn act_ghost(&self, q: &Path) -> PiElement {
        if q.is_empty() {
            return self.act_vertex(q.origin());
        }
        let mut t = BTreeMap::new();
        for (u, x) in &self.terms {
            if let Some(qu) = q.concat(u) {
                add_into(&mut t, qu, x.clone());
            }
        }
        self.with_terms(t)
    }

    pub fn act_monomial(&self, m: &LMonomial) -> Result<PiElement> {
        if m.p.end() != m.q.end() {
            return Err(Error::MalformedMonomial(
                "p and q must end at the same vertex".into(),
            ));
        }
        let g = self.module.rep.graph();
        for path in [&m.p, &m.q] {
            g.path(path.origin(), path.edges().to_vec())
                .map_err(|e| Error::MalformedMonomial(e.to_string()))?;
        }
        Ok(self.act_path(&m.p).act_ghost(&m.q).scale(&m.coeff))
    }

    pub fn act(&self, l: &LElement) -> Result<PiElement> {
        let mut acc = PiElement::zero(&self.module);
        for m in &l.monomials {
            acc = acc.add(&self.act_monomial(m)?)?;
        }
        Ok(acc)
    }

    /// Expands every term whose path is a proper prefix of one of `targets`.
    fn refine_against(&self, targets: &[Path]) -> BTreeMap<Path, Vec<Scalar>> {
        let rep = &self.module.rep;
        let mut todo: Vec<(Path, Vec<Scalar>)> =
            self.terms.iter().map(|(p, x)| (p.clone(), x.clone())).collect();
        let mut out = BTreeMap::new();
        while let Some((p, x)) = todo.pop() {
            let strict_prefix = targets.iter().any(|t| t.len() > p.len() && p.is_prefix_of(t));
            if strict_prefix {
                todo.extend(expand_term(rep, &p, &x).expect("a strict prefix is not at a sink"));
            } else {
                add_into(&mut out, p, x);
            }
        }
        out
    }

    /// This element refined to its own antichain, vectors reduced modulo the
    /// kernel of `j`, and zero leaves dropped.
    pub fn normal_form(&self) -> PiElement {
        let paths: Vec<Path> = self.terms.keys().cloned().collect();
        let mut t = BTreeMap::new();
        for (p, x) in self.refine_against(&paths) {
            let r = self.module.reduce(p.end(), &x);
            add_into(&mut t, p, r);
        }
        self.with_terms(t)
    }

    pub fn is_zero(&self) -> bool {
        let paths: Vec<Path> = self.terms.keys().cloned().collect();
        self.refine_against(&paths)
            .iter()
            .all(|(p, x)| self.module.in_kernel(p.end(), x))
    }
}

/// `(p, x) ↦ Σ_{e leaving end p} (pe, M_e x)`.
pub fn expand_term(rep: &Rep, p: &Path, x: &[Scalar]) -> Result<Vec<(Path, Vec<Scalar>)>> {
    let g = rep.graph();
    let v = p.end();
    if g.is_sink(v) {
        return Err(Error::SinkExpansion(g.vertex_name(v).to_string()));
    }
    Ok(g.out_edges(v)
        .iter()
        .map(|&e| (p.push(e, g.dst(e)), rep.mat(e).mul_vec(x)))
        .filter(|(_, y)| !is_zero_vec(y))
        .collect())
}

/// Refines both elements onto a common antichain of paths.
pub fn refine_to_antichain(a: &PiElement, b: &PiElement) -> Result<(AntichainForm, AntichainForm)> {
    a.same_module(b)?;
    let targets: Vec<Path> = a.terms.keys().chain(b.terms.keys()).cloned().collect();
    let to_form = |m: BTreeMap<Path, Vec<Scalar>>| AntichainForm {
        leaves: m.into_iter().collect(),
    };
    Ok((to_form(a.refine_against(&targets)), to_form(b.refine_against(&targets))))
}

/// Equality in `Π(V)`: after joint refinement every leaf difference lies in
/// the kernel of `j`.
pub fn eq(a: &PiElement, b: &PiElement) -> Result<bool> {
    Ok(a.sub(b)?.is_zero())
}

/// `[ν, x]`.
pub fn j_embed(module: &Arc<PiModule>, v: VertexId, x: Vec<Scalar>) -> Result<PiElement> {
    let d = module.rep().dim(v);
    if x.len() != d {
        return Err(Error::ShapeMismatch {
            edge: module.graph().vertex_name(v).to_string(),
            expected: (d, 1),
            found: (x.len(), 1),
        });
    }
    PiElement::new(module, vec![(Path::vertex(v), x)])
}

/// `Π(θ)`: `[p, x] ↦ [p, θ_{end p} x]`, landing in `target`.
pub fn pi_hom(theta: &RepHom, w: &PiElement, target: &Arc<PiModule>) -> Result<PiElement> {
    if w.module.rep != *theta.source() || target.rep != *theta.target() {
        return Err(Error::RepMismatch);
    }
    let mut t = BTreeMap::new();
    for (p, x) in &w.terms {
        add_into(&mut t, p.clone(), theta.block(p.end()).mul_vec(x));
    }
    Ok(PiElement {
        module: target.clone(),
        terms: t,
    })
}

/// Zero test by expanding every term until it is `depth` edges longer than
/// the longest term or reaches a sink.
pub fn is_zero_by_expansion(w: &PiElement, depth: usize) -> bool {
    let rep = w.module.rep();
    let g = rep.graph();
    let target = w.terms.keys().map(Path::len).max().unwrap_or(0) + depth;
    let mut todo: Vec<(Path, Vec<Scalar>)> = w.terms.iter().map(|(p, x)| (p.clone(), x.clone())).collect();
    let mut out = BTreeMap::new();
    while let Some((p, x)) = todo.pop() {
        if p.len() >= target || g.is_sink(p.end()) {
            add_into(&mut out, p, x);
        } else {
            todo.extend(expand_term(rep, &p, &x).unwrap());
        }
    }
    out.is_empty()
}

/// A random element with up to `max_terms` terms on paths of length at most
/// `max_len`.
pub fn random_element<R: Rng + ?Sized>(
    module: &Arc<PiModule>,
    max_terms: usize,
    max_len: usize,
    rng: &mut R,
) -> PiElement {
    let rep = module.rep();
    let g = rep.graph();
    let f = rep.field();
    let mut terms = Vec::new();
    let count = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..count {
        let v = rng.gen_range(0..g.vertex_count());
        let mut p = Path::vertex(v);
        let len = rng.gen_range(0..=max_len);
        for _ in 0..len {
            let out = g.out_edges(p.end());
            if out.is_empty() {
                break;
            }
            let e = out[rng.gen_range(0..out.len())];
            p = p.push(e, g.dst(e));
        }
        let x: Vec<Scalar> = (0..rep.dim(p.end())).map(|_| f.random(rng)).collect();
        terms.push((p, x));
    }
    PiElement::new(module, terms).expect("random walks are valid paths")
}

/// Outcome of a relation check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the defining relations of the Leavitt path algebra on random
/// elements of `Π(V)`, plus the iterated expansion identity
/// `Σ_{q ∈ E^n} (w·q)·q* = w` for `n ≤ 3`.
pub fn verify_relations(rep: &Rep, samples: usize, seed: u64) -> RelationReport {
    let module = PiModule::new(rep.clone());
    let g = rep.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RelationReport {
        samples,
        ..Default::default()
    };
    let iterated: Vec<Vec<Path>> = (1..=3).map(|n| g.paths_e(n, None)).collect();
    for s in 0..samples {
        let w = random_element(&module, 3, 2, &mut rng);
        let mut check = |name: String, lhs: PiElement, rhs: PiElement| {
            report.checks += 1;
            if !eq(&lhs, &rhs).expect("same module") && report.failures.len() < 16 {
                report.failures.push(format!("sample {s}: {name}"));
            }
        };
        for v in g.vertices() {
            for u in g.vertices() {
                let lhs = w.act_vertex(v).act_vertex(u);
                let rhs = if u == v {
                    w.act_vertex(v)
                } else {
                    PiElement::zero(&module)
                };
                check(format!("E0 {} {}", g.vertex_name(v), g.vertex_name(u)), lhs, rhs);
            }
        }
        for e in g.edge_ids() {
            let we = w.act_edge(e);
            check(format!("E1 s({0}){0}", g.edge_name(e)), w.act_vertex(g.src(e)).act_edge(e), we.clone());
            check(format!("E1 {0}r({0})", g.edge_name(e)), we.act_vertex(g.dst(e)), we.clone());
            let ws = w.act_ghost_edge(e);
            check(format!("E1 r({0}){0}*", g.edge_name(e)), w.act_vertex(g.dst(e)).act_ghost_edge(e), ws.clone());
            check(format!("E1 {0}*s({0})", g.edge_name(e)), ws.act_vertex(g.src(e)), ws.clone());
            for f in g.edge_ids() {
                let lhs = ws.act_edge(f);
                let rhs = if e == f {
                    w.act_vertex(g.dst(e))
                } else {
                    PiElement::zero(&module)
                };
                check(format!("CK1 {}* {}", g.edge_name(e), g.edge_name(f)), lhs, rhs);
            }
        }
        for v in g.regular_vertices() {
            let mut sum = PiElement::zero(&module);
            for &e in g.out_edges(v) {
                sum = sum.add(&w.act_edge(e).act_ghost_edge(e)).unwrap();
            }
            check(format!("CK2 {}", g.vertex_name(v)), sum, w.act_vertex(v));
        }
        for (n, paths) in iterated.iter().enumerate() {
            let mut sum = PiElement::zero(&module);
            for q in paths {
                sum = sum.add(&w.act_path(q).act_ghost(q)).unwrap();
            }
            check(format!("iterated CK2, n = {}", n + 1), sum, w.clone());
        }
        for (p, x) in w.terms() {
            let single = PiElement::new(&module, vec![(p.clone(), x.clone())]).unwrap();
            let at_end = PiElement::new(&module, vec![(Path::vertex(p.end()), x.clone())]).unwrap();
            check(format!("[p,x] = [rp,x]·p* at {}", g.path_string(p)), at_end.act_ghost(p), single);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::Matrix;

    fn bouquet_module(a: &[&[i64]], b: &[&[i64]]) -> Arc<PiModule> {
        let q = Field::Rationals;
        let rep = Rep::from_named(
            Arc::new(Graph::bouquet(2)),
            q,
            &[("v", a.len())],
            &[("e1", Matrix::from_i64(q, a)), ("e2", Matrix::from_i64(q, b))],
        )
        .unwrap();
        PiModule::new(rep)
    }

    fn vec_q(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Field::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn defining_relation() {
        let m = bouquet_module(&[&[1, 2], &[3, 4]], &[&[0, 1], &[1, 0]]);
        let g = m.graph().clone();
        let x = vec_q(&[1, -1]);
        let a = j_embed(&m, 0, x.clone()).unwrap();
        let terms = expand_term(m.rep(), &Path::vertex(0), &x).unwrap();
        assert_eq!(terms.len(), 2);
        let b = PiElement::new(&m, terms).unwrap();
        assert!(eq(&a, &b).unwrap());
        let (fa, fb) = refine_to_antichain(&a, &b).unwrap();
        assert_eq!(fa, fb);
        assert_eq!(fa.leaves[0].0, g.path_named(None, &["e1"]).unwrap());
        assert!(!eq(&a, &PiElement::zero(&m)).unwrap());
    }

    #[test]
    fn sink_terms_do_not_expand() {
        let q = Field::Rationals;
        let rep = Rep::from_named(
            Arc::new(Graph::line(2)),
            q,
            &[("v1", 1), ("v2", 1)],
            &[("e1", Matrix::from_i64(q, &[&[2]]))],
        )
        .unwrap();
        assert_eq!(expand_term(&rep, &Path::vertex(0), &vec_q(&[1])).unwrap().len(), 1);
        assert!(matches!(
            expand_term(&rep, &Path::vertex(1), &vec_q(&[1])),
            Err(Error::SinkExpansion(_))
        ));
        let m = PiModule::new(rep.clone());
        assert!(expand_term(&rep, &Path::vertex(0), &vec_q(&[0])).unwrap().is_empty());
        let w = j_embed(&m, 1, vec_q(&[1])).unwrap();
        assert!(!w.is_zero());
    }

    #[test]
    fn degenerate_module_is_zero() {
        let m = bouquet_module(&[&[0, 1], &[0, 0]], &[&[0, 1], &[0, 0]]);
        let w = j_embed(&m, 0, vec_q(&[0, 1])).unwrap();
        assert!(eq(&w, &PiElement::zero(&m)).unwrap());
        assert!(is_zero_by_expansion(&w, 2));
    }

    #[test]
    fn figure_computations() {
        let m = bouquet_module(&[&[1, 2], &[3, 4]], &[&[5, 6], &[7, 9]]);
        let g = m.graph().clone();
        let e1 = g.path_named(None, &["e1"]).unwrap();
        let e2 = g.path_named(None, &["e2"]).unwrap();
        let (v1, v2) = (vec_q(&[1, 0]), vec_q(&[2, 3]));
        let w = PiElement::new(&m, vec![(e1.clone(), v1.clone()), (e2.clone(), v2.clone())]).unwrap();
        let q = Field::Rationals;
        let snip = LMonomial::path(q.one(), g.path_named(None, &["e1", "e2"]).unwrap());
        let got = w.act_monomial(&snip).unwrap();
        let expected = j_embed(&m, 0, m.rep().mat(1).mul_vec(&v1)).unwrap();
        assert_eq!(got.terms().collect::<Vec<_>>(), expected.terms().collect::<Vec<_>>());
        let glue = LMonomial::ghost(q.one(), e1.clone());
        let got = w.act_monomial(&glue).unwrap();
        let e1e1 = g.path_named(None, &["e1", "e1"]).unwrap();
        let e1e2 = g.path_named(None, &["e1", "e2"]).unwrap();
        let expected = PiElement::new(&m, vec![(e1e1, v1), (e1e2, v2)]).unwrap();
        assert_eq!(got.terms().collect::<Vec<_>>(), expected.terms().collect::<Vec<_>>());
        // vertex projection
        let proj = LMonomial::path(q.one(), Path::vertex(0));
        assert!(eq(&w.act_monomial(&proj).unwrap(), &w).unwrap());
    }

    #[test]
    fn malformed_monomial() {
        let rep = Rep::from_named(
            Arc::new(Graph::line(3)),
            Field::Rationals,
            &[("v1", 1)],
            &[],
        )
        .unwrap();
        let g = rep.graph().clone();
        let m = PiModule::new(rep);
        let bad = LMonomial {
            coeff: Field::Rationals.one(),
            p: g.path_named(None, &["e1"]).unwrap(),
            q: g.path_named(None, &["e1", "e2"]).unwrap(),
        };
        assert!(matches!(
            PiElement::zero(&m).act_monomial(&bad),
            Err(Error::MalformedMonomial(_))
        ));
    }

    #[test]
    fn relations_hold() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [Graph::bouquet(2), Graph::line(2), Graph::line(3)] {
            let rep = Rep::random(Arc::new(g.clone()), f, vec![2; g.vertex_count()], &mut rng);
            let report = verify_relations(&rep, 50, 3);
            assert!(report.passed(), "{:?}", report.failures);
        }
    }
}
