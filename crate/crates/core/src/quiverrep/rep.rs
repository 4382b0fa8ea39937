use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::matrix::{quotient_maps, solve_in_basis, span_includes, spin, Matrix};

/// Dimension at each vertex, in graph order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn get(&self, v: VertexId) -> usize {
        self.0[v]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Pointwise `≤`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A representation: a space at each vertex and a map along each edge, with
/// `v·e = M_e v` and `M_e` of shape `dim(dst e) × dim(src e)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rep {
    graph: Arc<Graph>,
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Rep");
        d.field("field", &self.field).field("dims", &self.dims);
        for (e, m) in self.mats.iter().enumerate() {
            d.field(self.graph.edge_name(e), m);
        }
        d.finish()
    }
}

/// Checks dimensions, fields and edge-map shapes.
pub fn validate_rep(graph: &Graph, field: Field, dims: &[usize], mats: &[Matrix]) -> Result<()> {
    field.validate()?;
    if dims.len() != graph.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} dimensions for {} vertices",
            dims.len(),
            graph.vertex_count()
        )));
    }
    if mats.len() != graph.edge_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices for {} edges",
            mats.len(),
            graph.edge_count()
        )));
    }
    for (e, m) in mats.iter().enumerate() {
        if m.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), m.field().to_string()));
        }
        let expected = (dims[graph.dst(e)], dims[graph.src(e)]);
        if m.shape() != expected {
            return Err(Error::ShapeMismatch {
                edge: graph.edge_name(e).to_string(),
                expected,
                found: m.shape(),
            });
        }
    }
    Ok(())
}

impl Rep {
    pub fn new(graph: Arc<Graph>, field: Field, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        validate_rep(&graph, field, &dims, &mats)?;
        Ok(Rep {
            graph,
            field,
            dims,
            mats,
        })
    }

    /// Named construction; absent vertices get dimension 0 and absent edges
    /// the zero map.
    pub fn from_named(
        graph: Arc<Graph>,
        field: Field,
        dims: &[(&str, usize)],
        mats: &[(&str, Matrix)],
    ) -> Result<Self> {
        let mut d = vec![0; graph.vertex_count()];
        for (name, k) in dims {
            d[graph.vertex(name)?] = *k;
        }
        let mut ms: Vec<Option<Matrix>> = vec![None; graph.edge_count()];
        for (name, m) in mats {
            ms[graph.edge_id(name)?] = Some(m.clone());
        }
        let ms = ms
            .into_iter()
            .enumerate()
            .map(|(e, m)| m.unwrap_or_else(|| Matrix::zeros(field, d[graph.dst(e)], d[graph.src(e)])))
            .collect();
        Rep::new(graph, field, d, ms)
    }

    /// All edge maps zero.
    pub fn zero_maps(graph: Arc<Graph>, field: Field, dims: Vec<usize>) -> Result<Self> {
        let mats = graph
            .edge_ids()
            .map(|e| Matrix::zeros(field, dims.get(graph.dst(e)).copied().unwrap_or(0), dims.get(graph.src(e)).copied().unwrap_or(0)))
            .collect();
        Rep::new(graph, field, dims, mats)
    }

    pub fn random<R: Rng + ?Sized>(graph: Arc<Graph>, field: Field, dims: Vec<usize>, rng: &mut R) -> Self {
        let mats = graph
            .edge_ids()
            .map(|e| Matrix::random(field, dims[graph.dst(e)], dims[graph.src(e)], rng))
            .collect();
        Rep::new(graph, field, dims, mats).expect("shapes follow the dimension vector")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, v: VertexId) -> usize {
        self.dims[v]
    }

    pub fn dims(&self) -> DimVector {
        DimVector(self.dims.clone())
    }

    pub fn mat(&self, e: EdgeId) -> &Matrix {
        &self.mats[e]
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Start of each vertex block in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// The edge map as an operator on the total space.
    pub fn edge_operator(&self, e: EdgeId) -> Matrix {
        let n = self.total_dim();
        let off = self.offsets();
        let mut m = Matrix::zeros(self.field, n, n);
        m.set_block(off[self.graph.dst(e)], off[self.graph.src(e)], &self.mats[e]);
        m
    }

    pub fn vertex_projection(&self, v: VertexId) -> Matrix {
        let n = self.total_dim();
        let o = self.offsets()[v];
        Matrix::from_fn(self.field, n, n, |i, j| {
            if i == j && i >= o && i < o + self.dims[v] {
                self.field.one()
            } else {
                self.field.zero()
            }
        })
    }

    /// Operators whose common invariant subspaces are the subrepresentations.
    pub fn generators(&self) -> Vec<Matrix> {
        let mut g: Vec<Matrix> = self.graph.edge_ids().map(|e| self.edge_operator(e)).collect();
        if self.dims.iter().filter(|&&d| d > 0).count() > 1 {
            g.extend(self.graph.vertices().filter(|&v| self.dims[v] > 0).map(|v| self.vertex_projection(v)));
        }
        g
    }

    /// Stacked caret map `x ↦ (M_e x)_{e leaving v}`.
    pub fn caret(&self, v: VertexId) -> Matrix {
        let parts: Vec<&Matrix> = self.graph.out_edges(v).iter().map(|&e| &self.mats[e]).collect();
        Matrix::vstack(self.field, self.dims[v], &parts)
    }

    /// The same maps after a change of basis `g_v` at each vertex:
    /// `M_e ↦ g_dst M_e g_src⁻¹`.
    pub fn base_change(&self, g: &[Matrix]) -> Result<Rep> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().ok_or(Error::NotAMorphism))
            .collect::<Result<_>>()?;
        let mats = self
            .graph
            .edge_ids()
            .map(|e| g[self.graph.dst(e)].mul(&self.mats[e]).mul(&inv[self.graph.src(e)]))
            .collect();
        Rep::new(self.graph.clone(), self.field, self.dims.clone(), mats)
    }

    fn check_compatible(&self, other: &Rep) -> Result<()> {
        if *self.graph != *other.graph {
            return Err(Error::GraphMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }
}

pub(crate) fn compatible(a: &Rep, b: &Rep) -> Result<()> {
    a.check_compatible(b)
}

/// Per-vertex subspaces, each stored as a canonical column basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    basis: Vec<Matrix>,
}

impl Subspace {
    pub fn new(rep: &Rep, blocks: Vec<Matrix>) -> Result<Self> {
        if blocks.len() != rep.graph().vertex_count() {
            return Err(Error::DimensionMismatch("one block per vertex".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.rows() != rep.dim(v) {
                return Err(Error::DimensionMismatch(format!(
                    "block at `{}` has {} rows, expected {}",
                    rep.graph().vertex_name(v),
                    b.rows(),
                    rep.dim(v)
                )));
            }
            if b.field() != rep.field() {
                return Err(Error::FieldMismatch(rep.field().to_string(), b.field().to_string()));
            }
        }
        Ok(Subspace {
            field: rep.field(),
            basis: blocks.iter().map(Matrix::col_basis).collect(),
        })
    }

    pub(crate) fn from_blocks(field: Field, blocks: Vec<Matrix>) -> Self {
        Subspace {
            field,
            basis: blocks.iter().map(Matrix::col_basis).collect(),
        }
    }

    pub fn zero(rep: &Rep) -> Self {
        Subspace {
            field: rep.field(),
            basis: rep
                .graph()
                .vertices()
                .map(|v| Matrix::zeros(rep.field(), rep.dim(v), 0))
                .collect(),
        }
    }

    pub fn whole(rep: &Rep) -> Self {
        Subspace {
            field: rep.field(),
            basis: rep
                .graph()
                .vertices()
                .map(|v| Matrix::identity(rep.field(), rep.dim(v)))
                .collect(),
        }
    }

    /// Splits a subspace of the total space by vertex; exact when the
    /// subspace is stable under the vertex projections.
    pub fn from_total(rep: &Rep, m: &Matrix) -> Self {
        let off = rep.offsets();
        let blocks = rep
            .graph()
            .vertices()
            .map(|v| m.block(off[v], 0, rep.dim(v), m.cols()))
            .collect();
        Subspace::from_blocks(rep.field(), blocks)
    }

    pub fn to_total(&self, rep: &Rep) -> Matrix {
        let off = rep.offsets();
        let mut m = Matrix::zeros(self.field, rep.total_dim(), self.total_dim());
        let mut c = 0;
        for (v, b) in self.basis.iter().enumerate() {
            m.set_block(off[v], c, b);
            c += b.cols();
        }
        m
    }

    pub fn component(&self, v: VertexId) -> &Matrix {
        &self.basis[v]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dims(&self) -> DimVector {
        DimVector(self.basis.iter().map(Matrix::cols).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(Matrix::cols).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.basis
            .iter()
            .zip(&other.basis)
            .all(|(a, b)| span_includes(a, b))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        Subspace {
            field: self.field,
            basis: self
                .basis
                .iter()
                .zip(&other.basis)
                .map(|(a, b)| crate::matrix::span_intersection(a, b))
                .collect(),
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace {
            field: self.field,
            basis: self
                .basis
                .iter()
                .zip(&other.basis)
                .map(|(a, b)| crate::matrix::span_sum(a, b))
                .collect(),
        }
    }

    /// Whether the subspace is the whole of `rep`.
    pub fn is_whole(&self, rep: &Rep) -> bool {
        self.total_dim() == rep.total_dim()
    }
}

/// A family of maps `θ_v` with `θ_dst M_e = N_e θ_src` for every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepHom {
    source: Rep,
    target: Rep,
    blocks: Vec<Matrix>,
}

impl RepHom {
    pub fn new(source: Rep, target: Rep, blocks: Vec<Matrix>) -> Result<Self> {
        compatible(&source, &target)?;
        if blocks.len() != source.graph().vertex_count() {
            return Err(Error::DimensionMismatch("one block per vertex".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dim(v), source.dim(v)) {
                return Err(Error::DimensionMismatch(format!(
                    "block at `{}`",
                    source.graph().vertex_name(v)
                )));
            }
        }
        let hom = RepHom {
            source,
            target,
            blocks,
        };
        if !hom.is_equivariant() {
            return Err(Error::NotAMorphism);
        }
        Ok(hom)
    }

    pub(crate) fn new_unchecked(source: Rep, target: Rep, blocks: Vec<Matrix>) -> Self {
        let hom = RepHom {
            source,
            target,
            blocks,
        };
        debug_assert!(hom.is_equivariant());
        hom
    }

    pub fn identity(rep: &Rep) -> Self {
        RepHom {
            source: rep.clone(),
            target: rep.clone(),
            blocks: rep
                .graph()
                .vertices()
                .map(|v| Matrix::identity(rep.field(), rep.dim(v)))
                .collect(),
        }
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn block(&self, v: VertexId) -> &Matrix {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn is_equivariant(&self) -> bool {
        let g = self.source.graph();
        g.edge_ids().all(|e| {
            self.blocks[g.dst(e)].mul(self.source.mat(e))
                == self.target.mat(e).mul(&self.blocks[g.src(e)])
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RepHom) -> Result<RepHom> {
        if other.target != self.source {
            return Err(Error::RepMismatch);
        }
        Ok(RepHom {
            source: other.source.clone(),
            target: self.target.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn to_total(&self) -> Matrix {
        let so = self.source.offsets();
        let to = self.target.offsets();
        let mut m = Matrix::zeros(
            self.source.field(),
            self.target.total_dim(),
            self.source.total_dim(),
        );
        for (v, b) in self.blocks.iter().enumerate() {
            m.set_block(to[v], so[v], b);
        }
        m
    }

    /// Image of each component.
    pub fn image(&self) -> Subspace {
        Subspace::from_blocks(self.source.field(), self.blocks.clone())
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_blocks(
            self.source.field(),
            self.blocks.iter().map(Matrix::nullspace).collect(),
        )
    }

    /// `θ⁻¹(s)` for a subspace `s` of the target.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        Subspace::from_blocks(
            self.source.field(),
            self.blocks
                .iter()
                .zip(s.components())
                .map(|(b, t)| crate::matrix::preimage(b, t))
                .collect(),
        )
    }

    /// `θ(s)` for a subspace `s` of the source.
    pub fn image_of(&self, s: &Subspace) -> Subspace {
        Subspace::from_blocks(
            self.source.field(),
            self.blocks
                .iter()
                .zip(s.components())
                .map(|(b, t)| b.mul(t))
                .collect(),
        )
    }
}

/// Block-diagonal sum.
pub fn direct_sum(v: &Rep, w: &Rep) -> Result<Rep> {
    compatible(v, w)?;
    let g = v.graph_arc().clone();
    let dims: Vec<usize> = g.vertices().map(|x| v.dim(x) + w.dim(x)).collect();
    let mats = g
        .edge_ids()
        .map(|e| {
            let (a, b) = (v.mat(e), w.mat(e));
            let mut m = Matrix::zeros(v.field(), a.rows() + b.rows(), a.cols() + b.cols());
            m.set_block(0, 0, a);
            m.set_block(a.rows(), a.cols(), b);
            m
        })
        .collect();
    Rep::new(g, v.field(), dims, mats)
}

/// The two summand subspaces of `direct_sum(v, w)`.
pub fn direct_sum_summands(v: &Rep, w: &Rep, sum: &Rep) -> (Subspace, Subspace) {
    let f = v.field();
    let first = sum
        .graph()
        .vertices()
        .map(|x| Matrix::identity(f, sum.dim(x)).select_columns(&(0..v.dim(x)).collect::<Vec<_>>()))
        .collect();
    let second = sum
        .graph()
        .vertices()
        .map(|x| {
            Matrix::identity(f, sum.dim(x))
                .select_columns(&(v.dim(x)..v.dim(x) + w.dim(x)).collect::<Vec<_>>())
        })
        .collect();
    (
        Subspace::from_blocks(f, first),
        Subspace::from_blocks(f, second),
    )
}

pub fn is_submodule(rep: &Rep, s: &Subspace) -> bool {
    let g = rep.graph();
    g.edge_ids().all(|e| {
        let image = rep.mat(e).mul(s.component(g.src(e)));
        span_includes(s.component(g.dst(e)), &image)
    })
}

/// Smallest submodule containing the given `(vertex, vector)` pairs.
pub fn submodule_closure(rep: &Rep, vectors: &[(VertexId, Vec<Scalar>)]) -> Result<Subspace> {
    let off = rep.offsets();
    let n = rep.total_dim();
    let mut seeds = Vec::new();
    for (v, x) in vectors {
        if x.len() != rep.dim(*v) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} at `{}`",
                x.len(),
                rep.graph().vertex_name(*v)
            )));
        }
        let mut t = vec![rep.field().zero(); n];
        t[off[*v]..off[*v] + x.len()].clone_from_slice(x);
        seeds.push(t);
    }
    let gens: Vec<Matrix> = rep.graph().edge_ids().map(|e| rep.edge_operator(e)).collect();
    let ech = spin(&gens, &seeds, rep.field(), n);
    Ok(Subspace::from_total(rep, &ech.basis()))
}

/// Submodule spun from total-space vectors.
pub fn spin_total(rep: &Rep, seeds: &[Vec<Scalar>]) -> Subspace {
    let gens = rep.generators();
    let ech = spin(&gens, seeds, rep.field(), rep.total_dim());
    Subspace::from_total(rep, &ech.basis())
}

/// Quotient representation and the projection onto it.
pub fn quotient(rep: &Rep, s: &Subspace) -> Result<(Rep, RepHom)> {
    if !is_submodule(rep, s) {
        return Err(Error::NotASubmodule);
    }
    let g = rep.graph_arc().clone();
    let maps: Vec<(Matrix, Matrix)> = g.vertices().map(|v| quotient_maps(s.component(v))).collect();
    let dims: Vec<usize> = maps.iter().map(|(c, _)| c.cols()).collect();
    let mats = g
        .edge_ids()
        .map(|e| maps[g.dst(e)].1.mul(rep.mat(e)).mul(&maps[g.src(e)].0))
        .collect();
    let q = Rep::new(g, rep.field(), dims, mats)?;
    let proj = maps.into_iter().map(|(_, p)| p).collect();
    let hom = RepHom::new_unchecked(rep.clone(), q.clone(), proj);
    Ok((q, hom))
}

/// The submodule as a representation of its own, with the inclusion.
pub fn restrict(rep: &Rep, s: &Subspace) -> Result<(Rep, RepHom)> {
    if !is_submodule(rep, s) {
        return Err(Error::NotASubmodule);
    }
    let g = rep.graph_arc().clone();
    let dims: Vec<usize> = s.dims().0;
    let mats = g
        .edge_ids()
        .map(|e| {
            let image = rep.mat(e).mul(s.component(g.src(e)));
            solve_in_basis(s.component(g.dst(e)), &image)
        })
        .collect();
    let sub = Rep::new(g, rep.field(), dims, mats)?;
    let incl = RepHom::new_unchecked(sub.clone(), rep.clone(), s.components().to_vec());
    Ok((sub, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn validation() {
        let q = Field::Rationals;
        let b = Arc::new(Graph::bouquet(2));
        let m = Matrix::from_i64(q, &[&[0, 1], &[0, 0]]);
        assert!(Rep::from_named(b.clone(), q, &[("v", 2)], &[("e1", m.clone()), ("e2", m)]).is_ok());
        let line = Arc::new(Graph::line(2));
        let bad = Rep::from_named(
            line,
            q,
            &[("v1", 1), ("v2", 2)],
            &[("e1", Matrix::zeros(q, 1, 2))],
        );
        assert!(matches!(bad, Err(Error::ShapeMismatch { .. })));
        let empty = Arc::new(Graph::new(Vec::<String>::new(), Vec::new()).unwrap());
        assert!(Rep::new(empty, q, vec![], vec![]).is_ok());
    }

    #[test]
    fn closure_of_second_basis_vector() {
        let q = Field::Rationals;
        let b = Arc::new(Graph::bouquet(2));
        let r = Rep::from_named(
            b,
            q,
            &[("v", 3)],
            &[
                ("e1", Matrix::from_i64(q, &[&[1, 1, 0], &[0, 0, 1], &[0, 0, 0]])),
                ("e2", Matrix::from_i64(q, &[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]])),
            ],
        )
        .unwrap();
        let e1 = vec![q.one(), q.zero(), q.zero()];
        let e2 = vec![q.zero(), q.one(), q.zero()];
        let s1 = submodule_closure(&r, &[(0, e1)]).unwrap();
        assert_eq!(s1.total_dim(), 1);
        assert!(is_submodule(&r, &s1));
        let s2 = submodule_closure(&r, &[(0, e2)]).unwrap();
        assert_eq!(s2.total_dim(), 2);
        let only_e2 = Subspace::new(&r, vec![Matrix::from_i64(q, &[&[0], &[1], &[0]])]).unwrap();
        assert!(!is_submodule(&r, &only_e2));
        assert!(is_submodule(&r, &Subspace::whole(&r)));
        let (quot, proj) = quotient(&r, &s1).unwrap();
        assert_eq!(quot.total_dim(), 2);
        assert!(proj.is_equivariant());
        let (sub, incl) = restrict(&r, &s2).unwrap();
        assert_eq!(sub.total_dim(), 2);
        assert!(incl.is_equivariant());
    }

    #[test]
    fn sums() {
        let f = Field::prime(3).unwrap();
        let g = Arc::new(Graph::line(3));
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(2);
        let a = Rep::random(g.clone(), f, vec![1, 2, 0], &mut rng);
        let b = Rep::random(g, f, vec![2, 0, 1], &mut rng);
        let s = direct_sum(&a, &b).unwrap();
        assert_eq!(s.dims(), a.dims().add(&b.dims()));
        let (x, y) = direct_sum_summands(&a, &b, &s);
        assert!(is_submodule(&s, &x) && is_submodule(&s, &y));
        assert!(x.intersection(&y).is_zero());
        assert!(x.sum(&y).is_whole(&s));
    }
}
