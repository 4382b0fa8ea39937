//! Chen modules and their twisted variants as quiver representations on the
//! tails of a cyclic ray, plus finite truncations of modules with no smallest
//! complete submodule.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::poly_is_irreducible;
use crate::field::{Field, Scalar};
use crate::graph::{Cycle, EdgeId, Graph, Path, VertexId};
use crate::matrix::Matrix;
use crate::poly::{char_poly, companion_matrix, Poly};
use crate::quiverrep::{is_complete, ker_j, is_full, DimVector, Rep, Subspace};

/// Parameters of a constructor, for callers that dispatch on the kind.
#[derive(Debug, Clone)]
pub enum ChenSpec {
    Cyclic { cycle: Cycle, lambda: Scalar },
    Sink { vertex: VertexId },
    AnhNam { cycle: Cycle, poly: Poly },
    TwistMatrix { cycle: Cycle, twist: Matrix },
    VectorVariant { cycle: Cycle, vector: Vec<Scalar>, strict: bool },
    GradedTrunc { vertex: VertexId, cycle: Cycle, depth: usize },
    IrrationalTrunc { prefix: Path, depth: usize },
}

impl ChenSpec {
    /// Builds the representation; truncations also return their chain.
    pub fn build(&self, g: &Arc<Graph>, field: Field) -> Result<(Rep, Option<ChainReport>)> {
        Ok(match self {
            ChenSpec::Cyclic { cycle, lambda } => (chen_cyclic(g, cycle, lambda)?, None),
            ChenSpec::Sink { vertex } => (chen_sink(g, *vertex, field)?, None),
            ChenSpec::AnhNam { cycle, poly } => (anh_nam(g, cycle, poly)?, None),
            ChenSpec::TwistMatrix { cycle, twist } => (twist_matrix(g, cycle, twist)?, None),
            ChenSpec::VectorVariant { cycle, vector, strict } => {
                (vector_variant(g, cycle, vector, field, *strict)?, None)
            }
            ChenSpec::GradedTrunc { vertex, cycle, depth } => {
                let (r, c) = graded_trunc(g, *vertex, cycle, *depth, field)?;
                (r, Some(c))
            }
            ChenSpec::IrrationalTrunc { prefix, depth } => {
                let (r, c) = irrational_trunc(g, prefix, *depth, field)?;
                (r, Some(c))
            }
        })
    }
}

/// Vertex of each tail `t_i = ₁ᵢc^∞`, and the position of `t_i` among the
/// tails sharing its vertex.
pub fn tail_layout(g: &Graph, c: &Cycle) -> (Vec<VertexId>, Vec<usize>, Vec<usize>) {
    let mut counts = vec![0; g.vertex_count()];
    let mut slot = Vec::with_capacity(c.len());
    let verts: Vec<VertexId> = c.edges().iter().map(|&e| g.src(e)).collect();
    for &v in &verts {
        slot.push(counts[v]);
        counts[v] += 1;
    }
    (verts, slot, counts)
}

fn check_prime(g: &Graph, c: &Cycle) -> Result<()> {
    if g.is_prime_cycle(c) {
        Ok(())
    } else {
        Err(Error::NotPrimeCycle)
    }
}

/// Tails carry `b`-dimensional blocks; the transition out of `t_0` is `twist`
/// and every other transition along the cycle is the identity.
fn tail_shift(g: &Arc<Graph>, c: &Cycle, twist: &Matrix) -> Result<Rep> {
    let f = twist.field();
    let b = twist.rows();
    let m = c.len();
    let (verts, slot, counts) = tail_layout(g, c);
    let dims: Vec<usize> = counts.iter().map(|&k| k * b).collect();
    let mut mats: Vec<Matrix> = g
        .edge_ids()
        .map(|e| Matrix::zeros(f, dims[g.dst(e)], dims[g.src(e)]))
        .collect();
    let id = Matrix::identity(f, b);
    for (i, &e) in c.edges().iter().enumerate() {
        let next = (i + 1) % m;
        debug_assert_eq!(g.dst(e), verts[next]);
        let block = if i == 0 { twist } else { &id };
        mats[e].set_block(slot[next] * b, slot[i] * b, block);
    }
    Rep::new(g.clone(), f, dims, mats)
}

/// `t_i·f = δ_{f,c_{i+1}} λ_{t_i} t_{i+1}` with `λ_{t_0} = λ` and all other
/// scalars 1.
pub fn chen_cyclic(g: &Arc<Graph>, c: &Cycle, lambda: &Scalar) -> Result<Rep> {
    check_prime(g, c)?;
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    tail_shift(g, c, &Matrix::from_rows(lambda.field(), 1, vec![vec![lambda.clone()]]))
}

/// The one-dimensional representation at a sink.
pub fn chen_sink(g: &Arc<Graph>, w: VertexId, field: Field) -> Result<Rep> {
    if !g.is_sink(w) {
        return Err(Error::NotASink(g.vertex_name(w).to_string()));
    }
    let mut dims = vec![0; g.vertex_count()];
    dims[w] = 1;
    Rep::zero_maps(g.clone(), field, dims)
}

/// `(𝐤[x]/P) ⊗ 𝐤[T_c]` with multiplication by `x` on the first edge of `c`.
pub fn anh_nam(g: &Arc<Graph>, c: &Cycle, p: &Poly) -> Result<Rep> {
    check_prime(g, c)?;
    let comp = companion_matrix(p)?;
    if !poly_is_irreducible(p)? {
        return Err(Error::NotIrreducible);
    }
    tail_shift(g, c, &comp)
}

/// As [`anh_nam`] with an arbitrary matrix whose characteristic polynomial
/// is irreducible.
pub fn twist_matrix(g: &Arc<Graph>, c: &Cycle, x: &Matrix) -> Result<Rep> {
    check_prime(g, c)?;
    if !x.is_square() || x.rows() == 0 {
        return Err(Error::ShapeMismatch {
            edge: "twist".into(),
            expected: (x.rows(), x.rows()),
            found: x.shape(),
        });
    }
    if !poly_is_irreducible(&char_poly(x))? {
        return Err(Error::ReducibleTwist);
    }
    tail_shift(g, c, x)
}

/// The shift on tails with the image of `r = t_{m−1}` along its leading edge
/// replaced by `v ∈ 𝐤[T_c]` (coordinates indexed by tails). In strict mode
/// every edge leaving the vertex of `r` sends `r` to `v`.
pub fn vector_variant(g: &Arc<Graph>, c: &Cycle, v: &[Scalar], field: Field, strict: bool) -> Result<Rep> {
    check_prime(g, c)?;
    let m = c.len();
    if v.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {} tails",
            v.len(),
            m
        )));
    }
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroVector);
    }
    let base = tail_shift(g, c, &Matrix::identity(field, 1))?;
    let (verts, slot, _) = tail_layout(g, c);
    let r = m - 1;
    let lead = c.edges()[r];
    let edges: Vec<EdgeId> = if strict {
        g.out_edges(verts[r]).to_vec()
    } else {
        vec![lead]
    };
    let mut mats = base.mats().to_vec();
    for e in edges {
        let target = g.dst(e);
        if (0..m).any(|i| verts[i] != target && !v[i].is_zero()) {
            return Err(Error::VectorOffVertex(g.vertex_name(target).to_string()));
        }
        let col = slot[r];
        for row in 0..mats[e].rows() {
            mats[e].set_block(row, col, &Matrix::zeros(field, 1, 1));
        }
        for i in (0..m).filter(|&i| verts[i] == target) {
            mats[e].set_block(slot[i], col, &Matrix::from_rows(field, 1, vec![vec![v[i].clone()]]));
        }
    }
    Rep::new(g.clone(), field, base.dims().0, mats)
}

/// A finite chain of complete submodules.
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub members: Vec<Subspace>,
    pub dims: Vec<usize>,
    pub all_complete: bool,
    pub strictly_descending: bool,
    pub trivial_intersection: bool,
    pub degenerate: bool,
    pub full: bool,
}

impl ChainReport {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.all_complete && self.strictly_descending && self.trivial_intersection
    }
}

/// Basis `b_0, …, b_{n−1}` with `b_j` at `verts[j]` and `b_j·edges[j] = b_{j+1}`;
/// the last vector is killed. Returns the rep and the chain
/// `span{b_j : j ≥ k}` for `k = 1..=n`.
fn truncated_shift(g: &Arc<Graph>, verts: &[VertexId], edges: &[EdgeId], field: Field) -> Result<(Rep, ChainReport)> {
    let n = verts.len();
    let mut counts = vec![0; g.vertex_count()];
    let mut slot = Vec::with_capacity(n);
    for &v in verts {
        slot.push(counts[v]);
        counts[v] += 1;
    }
    let mut mats: Vec<Matrix> = g
        .edge_ids()
        .map(|e| Matrix::zeros(field, counts[g.dst(e)], counts[g.src(e)]))
        .collect();
    let one = Matrix::identity(field, 1);
    for j in 0..n.saturating_sub(1) {
        mats[edges[j]].set_block(slot[j + 1], slot[j], &one);
    }
    let rep = Rep::new(g.clone(), field, counts.clone(), mats)?;
    let members: Vec<Subspace> = (1..=n)
        .map(|k| {
            let mut cols: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); g.vertex_count()];
            for j in k..n {
                let mut x = vec![field.zero(); counts[verts[j]]];
                x[slot[j]] = field.one();
                cols[verts[j]].push(x);
            }
            let blocks = cols
                .iter()
                .enumerate()
                .map(|(v, c)| Matrix::from_columns(field, counts[v], c))
                .collect();
            Subspace::new(&rep, blocks)
        })
        .collect::<Result<_>>()?;
    let all_complete = members
        .iter()
        .map(|s| is_complete(&rep, s))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let dims: Vec<usize> = members.iter().map(Subspace::total_dim).collect();
    let strictly_descending = std::iter::once(rep.total_dim())
        .chain(dims.iter().copied())
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0] > w[1])
        && members.windows(2).all(|w| w[0].contains(&w[1]));
    let trivial_intersection = members
        .iter()
        .skip(1)
        .fold(members.first().cloned(), |acc, s| acc.map(|a| a.intersection(s)))
        .is_none_or(|s| s.is_zero());
    let report = ChainReport {
        dims,
        all_complete,
        strictly_descending,
        trivial_intersection,
        degenerate: !ker_j(&rep).is_zero(),
        full: is_full(&rep),
        members,
    };
    Ok((rep, report))
}

/// Truncation of the span of `q*` for `q` running through the prefixes of
/// `c^∞`, keeping `depth` basis vectors.
pub fn graded_trunc(g: &Arc<Graph>, v: VertexId, c: &Cycle, depth: usize, field: Field) -> Result<(Rep, ChainReport)> {
    if c.base() != v {
        return Err(Error::CycleMismatch(g.vertex_name(v).to_string()));
    }
    if depth < 2 {
        return Err(Error::Unsupported("truncation depth must be at least 2".into()));
    }
    let m = c.len();
    let edges: Vec<EdgeId> = (0..depth).map(|j| c.edges()[j % m]).collect();
    let verts: Vec<VertexId> = edges.iter().map(|&e| g.src(e)).collect();
    truncated_shift(g, &verts, &edges, field)
}

/// Truncation of the tails `₀p, …, ₍depth−1₎p` of a ray given by a finite
/// prefix.
pub fn irrational_trunc(g: &Arc<Graph>, prefix: &Path, depth: usize, field: Field) -> Result<(Rep, ChainReport)> {
    if depth == 0 || prefix.len() < depth {
        return Err(Error::InvalidPrefix(format!(
            "prefix of length {} cannot support depth {}",
            prefix.len(),
            depth
        )));
    }
    let edges = &prefix.edges()[..depth];
    let verts: Vec<VertexId> = edges.iter().map(|&e| g.src(e)).collect();
    truncated_shift(g, &verts, edges, field)
}

/// Prime cycles of length `d` up to rotation, each given by its least
/// rotation.
pub fn prime_cycle_classes(g: &Graph, d: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    for p in g.paths_e(d, None) {
        if p.len() != d || p.origin() != p.end() {
            continue;
        }
        let c = g.cycle(p).expect("closed path of positive length");
        if g.is_prime_cycle(&c) && g.cycle_rotation_class(&c) == c {
            out.push(c);
        }
    }
    out
}

/// Number of prime words of length `d` in `n` letters up to rotation.
pub fn count_prime_classes(n: usize, d: usize) -> u64 {
    let mut word = vec![0usize; d];
    let mut count = 0;
    loop {
        let prime = !(1..d).any(|l| d.is_multiple_of(l) && (0..d).all(|i| word[i] == word[i % l]));
        let least = (1..d).all(|k| {
            let rotated = word[k..].iter().chain(&word[..k]);
            word.iter().cmp(rotated) != std::cmp::Ordering::Greater
        });
        if prime && least {
            count += 1;
        }
        let mut i = d;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            word[i] += 1;
            if word[i] < n {
                break;
            }
            word[i] = 0;
        }
    }
}

/// Dimension vector of any representation built on the tails of `c` with
/// `b`-dimensional blocks.
pub fn tail_dims(g: &Graph, c: &Cycle, b: usize) -> DimVector {
    DimVector(tail_layout(g, c).2.into_iter().map(|k| k * b).collect())
}
