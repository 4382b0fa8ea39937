//! Dimension counts, stabilizers and exhaustive orbit enumeration for
//! representation spaces over small finite fields.

use std::sync::Arc;

use rayon::prelude::*;

use crate::chen::{count_prime_classes, prime_cycle_classes};
use crate::error::{Error, Result};
use crate::factor::rabin_irreducible;
use crate::field::{Field, Scalar};
use crate::graph::Graph;
use crate::matrix::{spin, Matrix};
use crate::poly::monic_polys;
use crate::quiverrep::{end_algebra, DimVector, Rep};

/// `Σ_e d_src d_dst − Σ_v d_v² + 1`.
pub fn expected_dim(g: &Graph, d: &DimVector) -> i64 {
    let edges: i64 = g.edge_ids().map(|e| (d.get(g.src(e)) * d.get(g.dst(e))) as i64).sum();
    let verts: i64 = g.vertices().map(|v| (d.get(v) * d.get(v)) as i64).sum();
    edges - verts + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    /// Kernel dimension of the infinitesimal action of `⊕ gl(d_v)`.
    pub kernel_dim: usize,
    pub end_dim: usize,
    pub expected_dim: i64,
    /// `Σ_e d_src d_dst − (Σ_v d_v² − k)`, reported when `k = 1`.
    pub transverse_dim: Option<i64>,
}

impl StabilizerReport {
    pub fn consistent(&self) -> bool {
        self.kernel_dim == self.end_dim && self.transverse_dim.is_none_or(|t| t == self.expected_dim)
    }
}

/// `A ⊗ B`.
fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    Matrix::from_fn(a.field(), ar * br, ac * bc, |i, j| {
        &a.entries()[(i / br) * ac + j / bc] * &b.entries()[(i % br) * bc + j % bc]
    })
}

/// The map `(g_v) ↦ (g_dst M_e − M_e g_src)_e` assembled on column-major
/// vectorizations: `vec(g M) = (Mᵀ ⊗ I) vec g`, `vec(M g) = (I ⊗ M) vec g`.
pub fn action_derivative(rep: &Rep) -> Matrix {
    let g = rep.graph();
    let f = rep.field();
    let dims = rep.dims();
    let mut col_off = vec![0; g.vertex_count() + 1];
    for v in g.vertices() {
        col_off[v + 1] = col_off[v] + dims.get(v) * dims.get(v);
    }
    let rows: usize = g.edge_ids().map(|e| dims.get(g.src(e)) * dims.get(g.dst(e))).sum();
    let mut out = Matrix::zeros(f, rows, col_off[g.vertex_count()]);
    let mut r0 = 0;
    for e in g.edge_ids() {
        let (s, t) = (g.src(e), g.dst(e));
        let m = rep.mat(e);
        let n = dims.get(s) * dims.get(t);
        if n == 0 {
            continue;
        }
        let left = kron(&m.transpose(), &Matrix::identity(f, dims.get(t)));
        let right = kron(&Matrix::identity(f, dims.get(s)), m).scale(&-f.one());
        if s == t {
            out.set_block(r0, col_off[s], &left.add(&right));
        } else {
            out.set_block(r0, col_off[t], &left);
            out.set_block(r0, col_off[s], &right);
        }
        r0 += n;
    }
    out
}

pub fn stabilizer_check(rep: &Rep) -> StabilizerReport {
    let d = action_derivative(rep);
    let kernel_dim = d.cols() - d.rank();
    let g = rep.graph();
    let dims = rep.dims();
    let edges: i64 = g.edge_ids().map(|e| (dims.get(g.src(e)) * dims.get(g.dst(e))) as i64).sum();
    let squares: i64 = g.vertices().map(|v| (dims.get(v) * dims.get(v)) as i64).sum();
    StabilizerReport {
        kernel_dim,
        end_dim: end_algebra(rep).len(),
        expected_dim: expected_dim(g, &dims),
        transverse_dim: (kernel_dim == 1).then(|| edges - (squares - kernel_dim as i64)),
    }
}

#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub total: u128,
    pub irreducible: u128,
    pub classes: usize,
    /// Classes whose representative has a nonzero edge map.
    pub nonzero_classes: usize,
    pub expected_dim: i64,
    /// Least enumeration index of each orbit with its representation.
    pub representatives: Vec<(u128, Rep)>,
}

/// Every representation of dimension `d` over `𝔽_q`, indexed by reading the
/// entries (edges in order, row-major) as base-`q` digits, least significant
/// first.
pub struct RepSpace {
    graph: Arc<Graph>,
    field: Field,
    dims: Vec<usize>,
    q: u64,
    entries: usize,
}

impl RepSpace {
    pub fn new(graph: Arc<Graph>, d: &DimVector, field: Field) -> Result<Self> {
        let q = field
            .order()
            .ok_or_else(|| Error::Unsupported("enumeration needs a finite field".into()))?;
        if d.0.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for {} vertices",
                d.0.len(),
                graph.vertex_count()
            )));
        }
        let entries = graph.edge_ids().map(|e| d.get(graph.src(e)) * d.get(graph.dst(e))).sum();
        Ok(RepSpace {
            graph,
            field,
            dims: d.0.clone(),
            q,
            entries,
        })
    }

    /// `q^entries`, or `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.entries as u32)
    }

    pub fn rep(&self, mut index: u128) -> Rep {
        let g = &self.graph;
        let mats = g
            .edge_ids()
            .map(|e| {
                let (r, c) = (self.dims[g.dst(e)], self.dims[g.src(e)]);
                Matrix::from_fn(self.field, r, c, |_, _| {
                    let digit = (index % self.q as u128) as u64;
                    index /= self.q as u128;
                    self.field.element(digit)
                })
            })
            .collect();
        Rep::new(g.clone(), self.field, self.dims.clone(), mats).expect("shapes follow the dimension vector")
    }

    pub fn index(&self, rep: &Rep) -> u128 {
        let mut index = 0u128;
        let mut place = 1u128;
        for m in rep.mats() {
            for s in m.entries() {
                index += place * s.residue().expect("finite field") as u128;
                place *= self.q as u128;
            }
        }
        index
    }
}

/// Irreducibility by spinning every nonzero vector at every vertex.
pub fn is_irreducible_exhaustive(rep: &Rep) -> bool {
    let n = rep.total_dim();
    if n == 0 {
        return false;
    }
    let f = rep.field();
    let q = f.order().expect("finite field");
    let gens = rep.generators();
    let offsets = rep.offsets();
    rep.graph().vertices().all(|v| {
        let d = rep.dim(v);
        // leading nonzero coordinate equal to 1
        (0..d).all(|lead| {
            let free = d - lead - 1;
            (0..q.pow(free as u32)).all(|mut code| {
                let mut x = vec![f.zero(); n];
                x[offsets[v] + lead] = f.one();
                for k in 0..free {
                    x[offsets[v] + lead + 1 + k] = f.element(code % q);
                    code /= q;
                }
                spin(&gens, &[x], f, n).dim() == n
            })
        })
    })
}

/// All invertible `n × n` matrices over a finite field.
pub fn general_linear(field: Field, n: usize) -> Vec<Matrix> {
    let q = field.order().expect("finite field");
    let count = q.pow((n * n) as u32);
    (0..count)
        .map(|mut code| {
            Matrix::from_fn(field, n, n, |_, _| {
                let s = field.element(code % q);
                code /= q;
                s
            })
        })
        .filter(Matrix::is_invertible)
        .collect()
}

fn gl_order(q: u128, n: usize) -> u128 {
    let qn = q.pow(n as u32);
    (0..n).map(|i| qn - q.pow(i as u32)).product()
}

/// Exhaustive count of isomorphism classes of irreducible representations of
/// dimension `d` over a finite field.
pub fn enumerate_and_count(graph: &Arc<Graph>, d: &DimVector, field: Field, budget: u128) -> Result<OrbitReport> {
    let space = RepSpace::new(graph.clone(), d, field)?;
    let total = space.size().unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let q = space.q as u128;
    let group_order: u128 = d.0.iter().map(|&n| gl_order(q, n)).product();
    if group_order > budget {
        return Err(Error::BudgetExceeded {
            needed: group_order,
            budget,
        });
    }
    let irreducible: Vec<u128> = (0..total)
        .into_par_iter()
        .filter(|&i| is_irreducible_exhaustive(&space.rep(i)))
        .collect();
    let groups: Vec<Vec<(Matrix, Matrix)>> = d
        .0
        .iter()
        .map(|&n| {
            general_linear(field, n)
                .into_iter()
                .map(|g| {
                    let inv = g.inverse().expect("invertible");
                    (g, inv)
                })
                .collect()
        })
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut representatives = Vec::new();
    for &i in &irreducible {
        if seen.contains(&i) {
            continue;
        }
        let rep = space.rep(i);
        for_each_tuple(&groups, &mut |tuple| {
            let mats = graph
                .edge_ids()
                .map(|e| tuple[graph.dst(e)].0.mul(rep.mat(e)).mul(&tuple[graph.src(e)].1))
                .collect();
            let moved = Rep::new(graph.clone(), field, d.0.clone(), mats).expect("same shapes");
            seen.insert(space.index(&moved));
        });
        representatives.push((i, rep));
    }
    let nonzero_classes = representatives
        .iter()
        .filter(|(_, r)| r.mats().iter().any(|m| !m.is_zero()))
        .count();
    Ok(OrbitReport {
        total,
        irreducible: irreducible.len() as u128,
        classes: representatives.len(),
        nonzero_classes,
        expected_dim: expected_dim(graph, d),
        representatives,
    })
}

type Pair = (Matrix, Matrix);

fn for_each_tuple<'a>(groups: &'a [Vec<Pair>], f: &mut dyn FnMut(&[&'a Pair])) {
    fn go<'a>(
        groups: &'a [Vec<Pair>],
        acc: &mut Vec<&'a Pair>,
        f: &mut dyn FnMut(&[&'a Pair]),
    ) {
        if acc.len() == groups.len() {
            f(acc);
            return;
        }
        for g in &groups[acc.len()] {
            acc.push(g);
            go(groups, acc, f);
            acc.pop();
        }
    }
    go(groups, &mut Vec::new(), f);
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedFamily {
    pub cycle_len: usize,
    pub poly_degree: usize,
    pub count: u128,
}

/// Parameter counts for generalized Chen modules of dimension `d` on the
/// bouquet of `n` loops over `𝔽_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChenSubvarietyReport {
    pub n: usize,
    pub d: usize,
    pub q: u64,
    /// `|W_d|·(q − 1)`.
    pub lambda_family: u128,
    /// `|W_a|·#{monic irreducible P of degree b}` for `ab = d`, `b ≥ 2`.
    pub twisted: Vec<TwistedFamily>,
    pub expected_dim: i64,
    /// `q^expected_dim`, when it is nonnegative and fits.
    pub ambient: Option<u128>,
    pub note: String,
}

pub fn count_irreducible_monic(field: Field, degree: usize) -> u128 {
    monic_polys(field, degree).filter(rabin_irreducible).count() as u128
}

pub fn chen_subvariety_report(n: usize, d: usize, field: Field) -> Result<ChenSubvarietyReport> {
    let q = field
        .order()
        .ok_or_else(|| Error::Unsupported("parameter counts need a finite field".into()))?;
    if n == 0 || d == 0 {
        return Err(Error::Unsupported("need at least one loop and d ≥ 1".into()));
    }
    let lambda_family = count_prime_classes(n, d) as u128 * (q as u128 - 1);
    let twisted = (2..=d)
        .filter(|b| d.is_multiple_of(*b))
        .map(|b| TwistedFamily {
            cycle_len: d / b,
            poly_degree: b,
            count: count_prime_classes(n, d / b) as u128 * count_irreducible_monic(field, b),
        })
        .collect();
    let g = Graph::bouquet(n);
    let e = expected_dim(&g, &DimVector(vec![d]));
    let ambient = u32::try_from(e).ok().and_then(|e| (q as u128).checked_pow(e));
    Ok(ChenSubvarietyReport {
        n,
        d,
        q,
        lambda_family,
        twisted,
        expected_dim: e,
        ambient,
        note: format!(
            "each family is described by at most {d} coefficients, against an expected dimension of {e}"
        ),
    })
}

/// Least-rotation prime cycles of length `d` on `g`, used as class labels.
pub fn cycle_labels(g: &Graph, d: usize) -> Vec<String> {
    prime_cycle_classes(g, d).iter().map(|c| g.path_string(c.path())).collect()
}

/// Scalars of `𝔽_q^×` in element order.
pub fn units(field: Field) -> Vec<Scalar> {
    field.elements().filter(|s| !s.is_zero()).collect()
}
