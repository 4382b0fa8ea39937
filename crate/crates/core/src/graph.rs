//! Finite directed graphs, paths and cycles.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub dst: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Sink,
    Regular,
}

/// A finite graph. Declaration order of vertices and edges is the canonical
/// order used everywhere else.
#[derive(Clone)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Edges are `(name, src, dst)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut es = Vec::new();
        let mut edge_index = HashMap::new();
        for (name, s, d) in edges {
            let src = *vertex_index
                .get(&s)
                .ok_or_else(|| Error::UnknownVertex(s.clone()))?;
            let dst = *vertex_index
                .get(&d)
                .ok_or_else(|| Error::UnknownVertex(d.clone()))?;
            if vertex_index.contains_key(&name) || edge_index.insert(name.clone(), es.len()).is_some()
            {
                return Err(Error::DuplicateName(name));
            }
            es.push(Edge { name, src, dst });
        }
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for (i, e) in es.iter().enumerate() {
            out[e.src].push(i);
            inc[e.dst].push(i);
        }
        Ok(Graph {
            vertices,
            edges: es,
            vertex_index,
            edge_index,
            out,
            inc,
        })
    }

    /// One vertex `v` with loops `e1..en`.
    pub fn bouquet(n: usize) -> Self {
        Graph::new(
            ["v"],
            (1..=n).map(|i| (format!("e{i}"), "v".to_string(), "v".to_string())),
        )
        .expect("well-formed bouquet")
    }

    /// Vertices `v1..vn` joined by `e_i: v_i → v_{i+1}`.
    pub fn line(n: usize) -> Self {
        Graph::new(
            (1..=n).map(|i| format!("v{i}")),
            (1..n).map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1))),
        )
        .expect("well-formed line")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertices.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edges.len()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e].name
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.edges[e].src
    }

    pub fn dst(&self, e: EdgeId) -> VertexId {
        self.edges[e].dst
    }

    /// Edges leaving `v`, in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    /// Edges entering `v`, in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.inc[v]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out[v].is_empty()
    }

    pub fn classify_vertex(&self, v: VertexId) -> VertexKind {
        if self.is_sink(v) {
            VertexKind::Sink
        } else {
            VertexKind::Regular
        }
    }

    pub fn classify_vertex_named(&self, name: &str) -> Result<VertexKind> {
        Ok(self.classify_vertex(self.vertex(name)?))
    }

    pub fn regular_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| !self.is_sink(v))
    }

    /// Builds and validates a path.
    pub fn path(&self, origin: VertexId, edges: Vec<EdgeId>) -> Result<Path> {
        if origin >= self.vertex_count() {
            return Err(Error::InvalidPath(format!("vertex index {origin}")));
        }
        let mut at = origin;
        for &e in &edges {
            if e >= self.edge_count() {
                return Err(Error::InvalidPath(format!("edge index {e}")));
            }
            if self.src(e) != at {
                return Err(Error::InvalidPath(format!(
                    "edge `{}` does not start at `{}`",
                    self.edge_name(e),
                    self.vertex_name(at)
                )));
            }
            at = self.dst(e);
        }
        Ok(Path {
            origin,
            end: at,
            edges,
        })
    }

    /// Path from edge names; the origin defaults to the first edge's source.
    pub fn path_named(&self, origin: Option<&str>, edges: &[&str]) -> Result<Path> {
        let ids = edges
            .iter()
            .map(|e| self.edge_id(e))
            .collect::<Result<Vec<_>>>()?;
        let origin = match (origin, ids.first()) {
            (Some(o), _) => self.vertex(o)?,
            (None, Some(&e)) => self.src(e),
            (None, None) => return Err(Error::InvalidPath("empty path without origin".into())),
        };
        self.path(origin, ids)
    }

    pub fn single_edge(&self, e: EdgeId) -> Path {
        Path {
            origin: self.src(e),
            end: self.dst(e),
            edges: vec![e],
        }
    }

    /// Paths of length exactly `k` together with shorter paths ending at a
    /// sink, optionally restricted to those starting at `source`.
    pub fn paths_e(&self, k: usize, source: Option<VertexId>) -> Vec<Path> {
        fn grow(g: &Graph, k: usize, p: Path, out: &mut Vec<Path>) {
            if p.len() == k || g.is_sink(p.end) {
                out.push(p);
                return;
            }
            for &e in g.out_edges(p.end) {
                let mut edges = p.edges.clone();
                edges.push(e);
                grow(
                    g,
                    k,
                    Path {
                        origin: p.origin,
                        end: g.dst(e),
                        edges,
                    },
                    out,
                );
            }
        }
        let mut out = Vec::new();
        let starts: Vec<VertexId> = match source {
            Some(v) => vec![v],
            None => self.vertices().collect(),
        };
        for v in starts {
            grow(self, k, Path::vertex(v), &mut out);
        }
        out
    }

    pub fn cycle(&self, p: Path) -> Result<Cycle> {
        if p.is_empty() || p.origin != p.end {
            return Err(Error::NotACycle(self.path_string(&p)));
        }
        Ok(Cycle(p))
    }

    pub fn cycle_named(&self, edges: &[&str]) -> Result<Cycle> {
        let p = self.path_named(None, edges)?;
        self.cycle(p)
    }

    pub fn is_prime_cycle(&self, c: &Cycle) -> bool {
        let e = c.edges();
        let m = e.len();
        !(1..m).any(|l| m.is_multiple_of(l) && (0..m).all(|i| e[i] == e[i % l]))
    }

    /// Rotation `c_k c_{k+1} … c_{k−1}`.
    pub fn rotate(&self, c: &Cycle, k: usize) -> Cycle {
        let e = c.edges();
        let m = e.len();
        let edges: Vec<EdgeId> = (0..m).map(|i| e[(i + k) % m]).collect();
        let origin = self.src(edges[0]);
        Cycle(Path {
            origin,
            end: origin,
            edges,
        })
    }

    /// Lexicographically least rotation in edge order.
    pub fn cycle_rotation_class(&self, c: &Cycle) -> Cycle {
        (0..c.len())
            .map(|k| self.rotate(c, k))
            .min_by(|a, b| a.edges().cmp(b.edges()))
            .expect("cycles are nonempty")
    }

    pub fn rotation_equivalent(&self, a: &Cycle, b: &Cycle) -> bool {
        self.cycle_rotation_class(a) == self.cycle_rotation_class(b)
    }

    /// `v` for vertices, `e1e2` style otherwise.
    pub fn path_string(&self, p: &Path) -> String {
        if p.is_empty() {
            self.vertex_name(p.origin).to_string()
        } else {
            p.edges.iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join("")
        }
    }
}

/// A finite path; the empty path at a vertex stands for the vertex itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    origin: VertexId,
    end: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            origin: v,
            end: v,
            edges: Vec::new(),
        }
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self` followed by `other`, if they meet.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        (self.end == other.origin).then(|| Path {
            origin: self.origin,
            end: other.end,
            edges: self.edges.iter().chain(&other.edges).copied().collect(),
        })
    }

    /// Extends by one edge; the caller guarantees `src(e) = end`.
    pub fn push(&self, e: EdgeId, dst: VertexId) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            origin: self.origin,
            end: dst,
            edges,
        }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.origin == other.origin && other.edges.starts_with(&self.edges)
    }

    /// The remainder after removing `prefix`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        prefix.is_prefix_of(self).then(|| Path {
            origin: prefix.end,
            end: self.end,
            edges: self.edges[prefix.len()..].to_vec(),
        })
    }
}

/// A closed path of positive length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Path);

impl Cycle {
    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn base(&self) -> VertexId {
        self.0.origin
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0.edges
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn names(g: &Graph, ps: &[Path]) -> BTreeSet<String> {
        ps.iter().map(|p| g.path_string(p)).collect()
    }

    #[test]
    fn vertex_classes() {
        let line = Graph::line(2);
        assert_eq!(line.classify_vertex_named("v2").unwrap(), VertexKind::Sink);
        assert_eq!(line.classify_vertex_named("v1").unwrap(), VertexKind::Regular);
        let b = Graph::bouquet(2);
        assert_eq!(b.classify_vertex(0), VertexKind::Regular);
        let iso = Graph::new(["w"], Vec::new()).unwrap();
        assert_eq!(iso.classify_vertex(0), VertexKind::Sink);
        assert_eq!(
            line.classify_vertex_named("zz"),
            Err(Error::UnknownVertex("zz".into()))
        );
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Graph::new(["a", "a"], Vec::new()),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            Graph::new(["a"], vec![("e".into(), "a".into(), "b".into())]),
            Err(Error::UnknownVertex(_))
        ));
        let g = Graph::line(3);
        assert!(matches!(
            g.path_named(None, &["e2", "e1"]),
            Err(Error::InvalidPath(_))
        ));
        assert!(matches!(g.cycle_named(&["e1"]), Err(Error::NotACycle(_))));
    }

    #[test]
    fn path_sets() {
        let line = Graph::line(2);
        assert_eq!(
            names(&line, &line.paths_e(2, None)),
            ["e1", "v2"].iter().map(|s| s.to_string()).collect()
        );
        let b = Graph::bouquet(2);
        assert_eq!(
            names(&b, &b.paths_e(2, None)),
            ["e1e1", "e1e2", "e2e1", "e2e2"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        let g = Graph::line(4);
        assert_eq!(g.paths_e(0, None).len(), 4);
        for n in 1..=3 {
            let b = Graph::bouquet(n);
            for k in 0..=4 {
                assert_eq!(b.paths_e(k, None).len(), n.pow(k as u32));
            }
        }
    }

    #[test]
    fn path_set_refinement() {
        let g = Graph::new(
            ["a", "b", "c"],
            vec![
                ("x".into(), "a".into(), "a".into()),
                ("y".into(), "a".into(), "b".into()),
                ("z".into(), "b".into(), "c".into()),
                ("w".into(), "b".into(), "a".into()),
            ],
        )
        .unwrap();
        for k in 0..5 {
            let here: BTreeSet<Path> = g.paths_e(k, None).into_iter().collect();
            for p in g.paths_e(k + 1, None) {
                if p.len() == k + 1 {
                    let prefix = g.path(p.origin(), p.edges()[..k].to_vec()).unwrap();
                    assert!(here.contains(&prefix));
                } else {
                    assert!(g.is_sink(p.end()));
                    assert!(here.contains(&p));
                }
            }
        }
    }

    #[test]
    fn primes_and_rotations() {
        let b = Graph::bouquet(2);
        assert!(b.is_prime_cycle(&b.cycle_named(&["e1"]).unwrap()));
        assert!(!b.is_prime_cycle(&b.cycle_named(&["e1", "e1"]).unwrap()));
        assert!(b.is_prime_cycle(&b.cycle_named(&["e1", "e2"]).unwrap()));
        assert!(!b.is_prime_cycle(&b.cycle_named(&["e1", "e2", "e1", "e2"]).unwrap()));
        let c = b.cycle_named(&["e2", "e1"]).unwrap();
        assert_eq!(b.cycle_rotation_class(&c), b.cycle_named(&["e1", "e2"]).unwrap());
        let d = b.cycle_named(&["e1", "e2", "e1", "e2"]).unwrap();
        let canon = b.cycle_rotation_class(&d);
        for k in 0..4 {
            let r = b.rotate(&d, k);
            assert_eq!(b.cycle_rotation_class(&r), canon);
            assert_eq!(b.cycle_rotation_class(&b.cycle_rotation_class(&r)), canon);
        }
    }

    #[test]
    fn prefix_operations() {
        let b = Graph::bouquet(2);
        let p = b.path_named(None, &["e1", "e2"]).unwrap();
        let q = b.path_named(None, &["e1"]).unwrap();
        assert!(q.is_prefix_of(&p));
        assert_eq!(p.strip_prefix(&q).unwrap(), b.path_named(None, &["e2"]).unwrap());
        assert_eq!(q.concat(&b.path_named(None, &["e2"]).unwrap()).unwrap(), p);
        assert!(Path::vertex(0).is_prefix_of(&p));
    }
}
