use crate::error::Result;
use crate::matrix::{preimage, span_intersection, span_sum, Matrix};

use super::rep::{is_submodule, quotient, restrict, DimVector, Rep, RepHom, Subspace};

/// Every caret map at a regular vertex is injective.
pub fn caret_injective(rep: &Rep) -> bool {
    rep.graph()
        .regular_vertices()
        .all(|v| rep.caret(v).rank() == rep.dim(v))
}

/// Every caret map at a regular vertex is bijective.
pub fn satisfies_condition_i(rep: &Rep) -> bool {
    rep.graph().regular_vertices().all(|v| {
        let c = rep.caret(v);
        c.is_square() && c.rank() == rep.dim(v)
    })
}

/// Vectors killed by all sufficiently long paths, with sink components
/// forced to vanish: the increasing chain
/// `K_{k+1,v} = {x : M_e x ∈ K_{k,dst e} for all e leaving v}`.
pub fn ker_j(rep: &Rep) -> Subspace {
    let g = rep.graph();
    let f = rep.field();
    let mut k: Vec<Matrix> = g.vertices().map(|v| Matrix::zeros(f, rep.dim(v), 0)).collect();
    for _ in 0..=rep.total_dim() {
        let next: Vec<Matrix> = g
            .vertices()
            .map(|v| {
                if g.is_sink(v) {
                    return Matrix::zeros(f, rep.dim(v), 0);
                }
                g.out_edges(v)
                    .iter()
                    .map(|&e| preimage(rep.mat(e), &k[g.dst(e)]))
                    .reduce(|a, b| span_intersection(&a, &b))
                    .expect("regular vertices emit edges")
            })
            .collect();
        if next == k {
            return Subspace::from_blocks(f, k);
        }
        k = next;
    }
    panic!("kernel chain failed to stabilize within the total dimension");
}

pub fn is_nondegenerate(rep: &Rep) -> bool {
    caret_injective(rep)
}

/// `V / ker j` and the quotient map.
pub fn nabla(rep: &Rep) -> (Rep, RepHom) {
    quotient(rep, &ker_j(rep)).expect("the kernel of j is a submodule")
}

/// A submodule is complete when the quotient is killed by long paths.
pub fn is_complete(rep: &Rep, s: &Subspace) -> Result<bool> {
    let (q, _) = quotient(rep, s)?;
    Ok(ker_j(&q).is_whole(&q))
}

/// Completeness by containing the smallest complete submodule.
pub fn is_complete_via_sigma(rep: &Rep, s: &Subspace) -> Result<bool> {
    if !is_submodule(rep, s) {
        return Err(crate::error::Error::NotASubmodule);
    }
    Ok(s.contains(&sigma_subspace(rep)))
}

/// The span of all `v·p` over `p ∈ E^k`, computed as a decreasing chain until
/// it stabilizes.
pub fn sigma_subspace(rep: &Rep) -> Subspace {
    let g = rep.graph();
    let f = rep.field();
    let mut w: Vec<Matrix> = g.vertices().map(|v| Matrix::identity(f, rep.dim(v))).collect();
    for _ in 0..=rep.total_dim() {
        let next: Vec<Matrix> = g
            .vertices()
            .map(|v| {
                let start = if g.is_sink(v) {
                    w[v].clone()
                } else {
                    Matrix::zeros(f, rep.dim(v), 0)
                };
                g.in_edges(v).iter().fold(start, |acc, &e| {
                    span_sum(&acc, &rep.mat(e).mul(&w[g.src(e)]))
                })
            })
            .collect();
        if next == w {
            return Subspace::from_blocks(f, w);
        }
        w = next;
    }
    panic!("image chain failed to stabilize within the total dimension");
}

/// Smallest complete submodule, as a subspace and as a representation.
pub fn sigma(rep: &Rep) -> (Subspace, Rep) {
    let s = sigma_subspace(rep);
    let (sub, _) = restrict(rep, &s).expect("the image chain consists of submodules");
    (s, sub)
}

pub fn is_full(rep: &Rep) -> bool {
    sigma_subspace(rep).is_whole(rep)
}

/// `∇Σ(V)`: full and nondegenerate.
pub fn recover(rep: &Rep) -> Rep {
    nabla(&sigma(rep).1).0
}

pub fn a_dimension(rep: &Rep) -> DimVector {
    recover(rep).dims()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::graph::Graph;
    use std::sync::Arc;

    fn bouquet_rep(a: &[&[i64]], b: &[&[i64]]) -> Rep {
        let q = Field::Rationals;
        Rep::from_named(
            Arc::new(Graph::bouquet(2)),
            q,
            &[("v", a.len())],
            &[("e1", Matrix::from_i64(q, a)), ("e2", Matrix::from_i64(q, b))],
        )
        .unwrap()
    }

    #[test]
    fn full_but_degenerate() {
        let r = bouquet_rep(&[&[0, 1], &[0, 1]], &[&[0, 1], &[0, 0]]);
        assert!(is_full(&r));
        assert!(!is_nondegenerate(&r));
        assert_eq!(ker_j(&r).total_dim(), 1);
        assert_eq!(a_dimension(&r).total(), 1);
        assert_eq!(is_complete(&r, &Subspace::zero(&r)), Ok(false));
    }

    #[test]
    fn nondegenerate_but_not_full() {
        let r = bouquet_rep(
            &[&[1, 1, 0], &[0, 0, 1], &[0, 0, 0]],
            &[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]],
        );
        assert!(is_nondegenerate(&r));
        assert!(!is_full(&r));
        let (s, sub) = sigma(&r);
        let q = Field::Rationals;
        let e1 = Subspace::new(&r, vec![Matrix::from_i64(q, &[&[1], &[0], &[0]])]).unwrap();
        assert_eq!(s, e1);
        assert_eq!(sub.total_dim(), 1);
        assert_eq!(is_complete(&r, &e1), Ok(true));
        assert_eq!(a_dimension(&r).total(), 1);
    }

    #[test]
    fn totally_degenerate() {
        let r = bouquet_rep(&[&[0, 1], &[0, 0]], &[&[0, 1], &[0, 0]]);
        assert!(ker_j(&r).is_whole(&r));
        assert!(nabla(&r).0.is_zero());
        assert!(!caret_injective(&r));
    }

    #[test]
    fn sinks() {
        let q = Field::Rationals;
        let g = Arc::new(Graph::line(2));
        let r = Rep::from_named(g.clone(), q, &[("v2", 1)], &[]).unwrap();
        assert!(caret_injective(&r));
        assert!(is_full(&r));
        assert!(ker_j(&r).is_zero());
        // zero sink component never becomes complete
        let r2 = Rep::from_named(
            g,
            q,
            &[("v1", 1), ("v2", 1)],
            &[("e1", Matrix::from_i64(q, &[&[1]]))],
        )
        .unwrap();
        let s = Subspace::new(&r2, vec![Matrix::identity(q, 1), Matrix::zeros(q, 1, 0)]);
        assert!(s.is_err() || !is_submodule(&r2, s.as_ref().unwrap()));
        let zero_at_sink = Subspace::zero(&r2);
        assert_eq!(is_complete(&r2, &zero_at_sink), Ok(false));
        // everything at v1 is pushed into the sink
        assert!(!is_full(&r2));
        assert_eq!(sigma_subspace(&r2).dims().0, vec![0, 1]);
        assert_eq!(a_dimension(&r2).0, vec![0, 1]);
    }

    #[test]
    fn condition_i() {
        let q = Field::Rationals;
        let one = Rep::from_named(
            Arc::new(Graph::bouquet(1)),
            q,
            &[("v", 1)],
            &[("e1", Matrix::from_i64(q, &[&[1]]))],
        )
        .unwrap();
        assert!(satisfies_condition_i(&one));
        let r = bouquet_rep(&[&[1, 0], &[0, 0]], &[&[0, 0], &[0, 1]]);
        assert!(!satisfies_condition_i(&r));
    }

    #[test]
    fn zero_rep() {
        let q = Field::Rationals;
        let r = Rep::zero_maps(Arc::new(Graph::bouquet(2)), q, vec![0]).unwrap();
        assert!(is_full(&r));
        assert!(sigma(&r).1.is_zero());
        assert!(a_dimension(&r).is_zero());
    }
}
