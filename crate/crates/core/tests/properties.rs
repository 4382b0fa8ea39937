use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lpa_core::chen::{anh_nam, chen_cyclic, prime_cycle_classes};
use lpa_core::leavitt::{
    eq, expand_term, is_zero_by_expansion, j_embed, pi_hom, random_element, refine_to_antichain, LMonomial,
    PiElement, PiModule,
};
use lpa_core::moduli::{stabilizer_check, RepSpace};
use lpa_core::quiverrep::{
    a_dimension, all_submodules, caret_injective, direct_sum, hom_space, is_complete, is_full, is_irreducible,
    is_isomorphic, is_nondegenerate, nabla, recover, restrict, sigma, Irreducibility, Isomorphism, RepHom, Verdict,
};
use lpa_core::{DimVector, Field, Graph, Matrix, Path, Poly, Rep, Subspace};

fn graphs() -> Vec<Arc<Graph>> {
    vec![
        Arc::new(Graph::bouquet(1)),
        Arc::new(Graph::bouquet(2)),
        Arc::new(Graph::line(2)),
        Arc::new(Graph::line(3)),
        Arc::new(
            Graph::new(
                ["u", "w", "s"],
                [("a", "u", "w"), ("b", "w", "u"), ("c", "w", "s"), ("d", "u", "u")]
                    .map(|(n, x, y)| (n.to_string(), x.to_string(), y.to_string())),
            )
            .unwrap(),
        ),
    ]
}

/// A random representation with total dimension at most `max_total`.
fn small_rep(seed: u64, field: Field, max_total: usize) -> Rep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gs = graphs();
    let g = gs[rng.gen_range(0..gs.len())].clone();
    let mut dims = vec![0; g.vertex_count()];
    let mut budget = rng.gen_range(0..=max_total);
    for d in dims.iter_mut() {
        let k = rng.gen_range(0..=budget.min(2));
        *d = k;
        budget -= k;
    }
    let mut r = Rep::random(g.clone(), field, dims.clone(), &mut rng);
    // sparsify so degenerate and non-full cases are common
    if rng.gen_bool(0.5) {
        let mats = r
            .mats()
            .iter()
            .map(|m| if rng.gen_bool(0.4) { Matrix::zeros(field, m.rows(), m.cols()) } else { m.clone() })
            .collect();
        r = Rep::new(g, field, dims, mats).unwrap();
    }
    r
}

fn random_hom(v: &Rep, w: &Rep, rng: &mut ChaCha8Rng) -> RepHom {
    let basis = hom_space(v, w).unwrap();
    let f = v.field();
    let mut blocks: Vec<Matrix> = v.graph().vertices().map(|x| Matrix::zeros(f, w.dim(x), v.dim(x))).collect();
    for b in &basis {
        let c = f.random(rng);
        for (acc, blk) in blocks.iter_mut().zip(b.blocks()) {
            *acc = acc.add(&blk.scale(&c));
        }
    }
    RepHom::new(v.clone(), w.clone(), blocks).unwrap()
}

fn random_invertible(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::random(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn iso(a: &Rep, b: &Rep) -> bool {
    matches!(is_isomorphic(a, b, 17).unwrap(), Isomorphism::Yes(_))
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f3() -> Field {
    Field::prime(3).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_axioms(a in 0u64..1000, b in 0u64..1000, c in 0u64..1000, p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let f = Field::prime(p).unwrap();
        let (a, b, c) = (f.from_u64(a), f.from_u64(b), f.from_u64(c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_axioms(xs in prop::collection::vec((-50i64..50, 1i64..20), 3)) {
        let f = Field::Rationals;
        let v: Vec<_> = xs.iter().map(|&(n, d)| f.from_ratio(n, d).unwrap()).collect();
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(&(a - b) + b, a.clone());
        if !a.is_zero() {
            prop_assert!((a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn path_sets_refine(gi in 0usize..5, k in 0usize..4) {
        let g = &graphs()[gi];
        let shorter = g.paths_e(k, None);
        for p in g.paths_e(k + 1, None) {
            if p.len() == k + 1 {
                let prefix = g.path(p.origin(), p.edges()[..k].to_vec()).unwrap();
                prop_assert!(shorter.contains(&prefix));
            } else {
                prop_assert!(g.is_sink(p.end()));
                prop_assert!(shorter.contains(&p));
            }
        }
    }

    #[test]
    fn bouquet_path_counts(n in 1usize..4, k in 0usize..5) {
        prop_assert_eq!(Graph::bouquet(n).paths_e(k, None).len(), n.pow(k as u32));
    }

    #[test]
    fn rotation_canonical(word in prop::collection::vec(0usize..3, 1..8), shift in 0usize..8) {
        let g = Graph::bouquet(3);
        let names: Vec<String> = word.iter().map(|i| format!("e{}", i + 1)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let c = g.cycle_named(&refs).unwrap();
        let canon = g.cycle_rotation_class(&c);
        prop_assert_eq!(g.cycle_rotation_class(&canon), canon.clone());
        let rotated = g.rotate(&c, shift % c.len());
        prop_assert_eq!(g.cycle_rotation_class(&rotated), canon);
    }

    #[test]
    fn complete_submodules_closed(seed in any::<u64>()) {
        let r = small_rep(seed, f2(), 3);
        let subs = all_submodules(&r, 1 << 16).unwrap();
        let complete: Vec<&Subspace> = subs.iter().filter(|s| is_complete(&r, s).unwrap()).collect();
        for a in &complete {
            for b in &complete {
                prop_assert!(is_complete(&r, &a.intersection(b)).unwrap());
            }
        }
        // nested completeness composes
        for v in &complete {
            let (sub, inc) = restrict(&r, v).unwrap();
            for u in subs.iter().filter(|u| v.contains(u)) {
                let local = inc.preimage(u);
                if is_complete(&sub, &local).unwrap() {
                    prop_assert!(is_complete(&r, u).unwrap());
                }
            }
        }
        let (s, _) = sigma(&r);
        let meet = complete.iter().fold(Subspace::whole(&r), |acc, c| acc.intersection(c));
        prop_assert_eq!(s, meet);
    }

    #[test]
    fn complete_under_homs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = small_rep(seed, f2(), 3);
        let w = Rep::random(v.graph_arc().clone(), f2(), v.dims().0, &mut rng);
        let theta = random_hom(&v, &w, &mut rng);
        let w_subs = all_submodules(&w, 1 << 16).unwrap();
        for s in w_subs.iter().filter(|s| is_complete(&w, s).unwrap()) {
            prop_assert!(is_complete(&v, &theta.preimage(s)).unwrap());
        }
        let (img, inc) = restrict(&w, &theta.image()).unwrap();
        for s in all_submodules(&v, 1 << 16).unwrap().iter().filter(|s| is_complete(&v, s).unwrap()) {
            let local = inc.preimage(&theta.image_of(s));
            prop_assert!(is_complete(&img, &local).unwrap());
        }
    }

    #[test]
    fn functors_commute(seed in any::<u64>()) {
        let r = small_rep(seed, f3(), 3);
        let ns = nabla(&sigma(&r).1).0;
        let sn = sigma(&nabla(&r).0).1;
        prop_assert!(iso(&ns, &sn));
        let once = recover(&r);
        prop_assert!(is_full(&once) && is_nondegenerate(&once));
        prop_assert!(iso(&recover(&once), &once));
        prop_assert_eq!(a_dimension(&once), a_dimension(&r));
        prop_assert!(a_dimension(&r).le(&r.dims()));
    }

    #[test]
    fn a_dimension_additive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = small_rep(s1, f3(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(s2);
        let b = Rep::random(a.graph_arc().clone(), f3(), a.dims().0.iter().map(|_| rng.gen_range(0..=1)).collect(), &mut rng);
        let sum = direct_sum(&a, &b).unwrap();
        prop_assert_eq!(a_dimension(&sum), a_dimension(&a).add(&a_dimension(&b)));
    }

    #[test]
    fn irreducibles_are_full_and_nondegenerate(seed in any::<u64>()) {
        let r = small_rep(seed, f2(), 3);
        prop_assume!(r.total_dim() > 0);
        if is_irreducible(&r, seed).unwrap() == Irreducibility::Yes {
            let g = r.graph();
            let degenerate_point = r.total_dim() == 1
                && r.mats().iter().all(Matrix::is_zero)
                && g.vertices().any(|v| r.dim(v) == 1 && !g.is_sink(v));
            prop_assert!(degenerate_point || (is_full(&r) && is_nondegenerate(&r)));
        }
    }

    #[test]
    fn predicates_invariant_under_base_change(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let r = small_rep(seed, f3(), 4);
        prop_assume!(r.total_dim() > 0);
        let g: Vec<Matrix> = r.graph().vertices().map(|v| random_invertible(f3(), r.dim(v), &mut rng)).collect();
        let s = r.base_change(&g).unwrap();
        prop_assert!(iso(&r, &s));
        prop_assert_eq!(is_full(&r), is_full(&s));
        prop_assert_eq!(caret_injective(&r), caret_injective(&s));
        prop_assert_eq!(a_dimension(&r), a_dimension(&s));
        prop_assert_eq!(is_irreducible(&r, 1).unwrap().verdict(), is_irreducible(&s, 2).unwrap().verdict());
        let (a, b) = (
            lpa_core::quiverrep::is_indecomposable(&r, 1).unwrap().verdict(),
            lpa_core::quiverrep::is_indecomposable(&s, 2).unwrap().verdict(),
        );
        if a != Verdict::Unknown && b != Verdict::Unknown {
            prop_assert_eq!(a, b);
        }
        let zero = Subspace::zero(&r);
        prop_assert_eq!(is_complete(&r, &zero).unwrap(), is_complete(&s, &Subspace::zero(&s)).unwrap());
    }

    #[test]
    fn commutant_matches_end(seed in any::<u64>()) {
        let r = small_rep(seed, f3(), 4);
        let s = stabilizer_check(&r);
        prop_assert_eq!(s.kernel_dim, s.end_dim);
    }

    #[test]
    fn enumeration_index_round_trip(seed in any::<u64>()) {
        let r = small_rep(seed, f3(), 3);
        let space = RepSpace::new(r.graph_arc().clone(), &r.dims(), f3()).unwrap();
        let i = space.index(&r);
        prop_assert!(i < space.size().unwrap());
        prop_assert_eq!(space.rep(i), r);
    }

    #[test]
    fn pi_equality_is_an_equivalence(seed in any::<u64>()) {
        let r = small_rep(seed, f3(), 4);
        prop_assume!(r.total_dim() > 0);
        let m = PiModule::new(r.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_element(&m, 3, 2, &mut rng);
        // related copies: expand one term, then add an element of the kernel of j
        let expand_one = |x: &PiElement| {
            let mut terms: Vec<_> = x.terms().map(|(p, v)| (p.clone(), v.clone())).collect();
            if let Some(i) = terms.iter().position(|(p, _)| !r.graph().is_sink(p.end())) {
                let (p, v) = terms.remove(i);
                terms.extend(expand_term(&r, &p, &v).unwrap());
            }
            PiElement::new(&m, terms).unwrap()
        };
        let w1 = expand_one(&w);
        let kernel = lpa_core::quiverrep::ker_j(&r);
        let mut w2 = expand_one(&w1);
        for v in r.graph().vertices() {
            for col in kernel.component(v).columns() {
                w2 = w2.add(&j_embed(&m, v, col).unwrap()).unwrap();
            }
        }
        for (a, b) in [(&w, &w), (&w, &w1), (&w1, &w), (&w1, &w2), (&w, &w2)] {
            prop_assert!(eq(a, b).unwrap());
        }
        let (fa, fb) = refine_to_antichain(&w, &w1).unwrap();
        let as_elem = |f: lpa_core::leavitt::AntichainForm| PiElement::new(&m, f.leaves).unwrap();
        prop_assert!(eq(&as_elem(fa), &w).unwrap());
        prop_assert!(eq(&as_elem(fb), &w1).unwrap());
        let other = random_element(&m, 3, 2, &mut rng);
        prop_assert_eq!(eq(&w, &other).unwrap(), eq(&other, &w).unwrap());
    }

    #[test]
    fn zero_detection_matches_expansion(seed in any::<u64>()) {
        let r = small_rep(seed, f2(), 4);
        let m = PiModule::new(r.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let w = random_element(&m, 3, 2, &mut rng);
            prop_assert_eq!(w.is_zero(), is_zero_by_expansion(&w, r.total_dim()));
        }
    }

    #[test]
    fn j_is_equivariant(seed in any::<u64>()) {
        let r = small_rep(seed, f3(), 4);
        let m = PiModule::new(r.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = r.graph();
        for e in g.edge_ids() {
            let x: Vec<_> = (0..r.dim(g.src(e))).map(|_| f3().random(&mut rng)).collect();
            let lhs = j_embed(&m, g.dst(e), r.mat(e).mul_vec(&x)).unwrap();
            let rhs = j_embed(&m, g.src(e), x).unwrap().act_edge(e);
            prop_assert!(eq(&lhs, &rhs).unwrap());
        }
        if is_nondegenerate(&r) {
            for v in g.vertices() {
                for i in 0..r.dim(v) {
                    let mut x = vec![f3().zero(); r.dim(v)];
                    x[i] = f3().one();
                    prop_assert!(!j_embed(&m, v, x).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn pi_is_a_functor(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = small_rep(seed, f3(), 3);
        let v = Rep::random(u.graph_arc().clone(), f3(), u.dims().0, &mut rng);
        let w = Rep::random(u.graph_arc().clone(), f3(), u.dims().0, &mut rng);
        let (mu, mv, mw) = (PiModule::new(u.clone()), PiModule::new(v.clone()), PiModule::new(w.clone()));
        let psi = random_hom(&u, &v, &mut rng);
        let theta = random_hom(&v, &w, &mut rng);
        let both = theta.compose(&psi).unwrap();
        let g = u.graph();
        for _ in 0..6 {
            let x = random_element(&mu, 3, 2, &mut rng);
            let id = pi_hom(&RepHom::identity(&u), &x, &mu).unwrap();
            prop_assert!(eq(&id, &x).unwrap());
            let lhs = pi_hom(&both, &x, &mw).unwrap();
            let rhs = pi_hom(&theta, &pi_hom(&psi, &x, &mv).unwrap(), &mw).unwrap();
            prop_assert!(eq(&lhs, &rhs).unwrap());
            let paths = g.paths_e(2, None);
            let p = &paths[rng.gen_range(0..paths.len())];
            let qs: Vec<&Path> = paths.iter().filter(|q| q.end() == p.end()).collect();
            let q = qs[rng.gen_range(0..qs.len())].clone();
            let mono = LMonomial::new(f3().random(&mut rng), p.clone(), q).unwrap();
            let acted_first = pi_hom(&psi, &x.act_monomial(&mono).unwrap(), &mv).unwrap();
            let mapped_first = pi_hom(&psi, &x, &mv).unwrap().act_monomial(&mono).unwrap();
            prop_assert!(eq(&acted_first, &mapped_first).unwrap());
        }
    }

    #[test]
    fn pi_preserves_direct_sums(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = small_rep(seed, f2(), 3);
        let b = Rep::random(a.graph_arc().clone(), f2(), a.dims().0.iter().map(|_| rng.gen_range(0..=2)).collect(), &mut rng);
        let s = direct_sum(&a, &b).unwrap();
        let (ma, mb, ms) = (PiModule::new(a.clone()), PiModule::new(b.clone()), PiModule::new(s.clone()));
        let embed = |x: &PiElement, first: bool| {
            let terms = x
                .terms()
                .map(|(p, v)| {
                    let pad_a = vec![f2().zero(); a.dim(p.end())];
                    let pad_b = vec![f2().zero(); b.dim(p.end())];
                    let full = if first { [v.clone(), pad_b].concat() } else { [pad_a, v.clone()].concat() };
                    (p.clone(), full)
                })
                .collect();
            PiElement::new(&ms, terms).unwrap()
        };
        let g = a.graph();
        for _ in 0..6 {
            let x = random_element(&ma, 3, 2, &mut rng);
            let y = random_element(&mb, 3, 2, &mut rng);
            let sum = embed(&x, true).add(&embed(&y, false)).unwrap();
            prop_assert_eq!(sum.is_zero(), x.is_zero() && y.is_zero());
            let e = rng.gen_range(0..g.edge_count());
            let lhs = sum.act_edge(e).act_ghost_edge(e);
            let rhs = embed(&x.act_edge(e).act_ghost_edge(e), true).add(&embed(&y.act_edge(e).act_ghost_edge(e), false)).unwrap();
            prop_assert!(eq(&lhs, &rhs).unwrap());
        }
    }

    #[test]
    fn chen_outputs_are_full_and_nondegenerate(d in 1usize..=4, lam in 1u64..5) {
        let g = Arc::new(Graph::bouquet(2));
        let f = Field::prime(5).unwrap();
        for c in prime_cycle_classes(&g, d) {
            let lam = f.element(lam);
            let r = chen_cyclic(&g, &c, &lam).unwrap();
            prop_assert!(is_full(&r) && is_nondegenerate(&r));
            prop_assert_eq!(a_dimension(&r), DimVector(vec![d]));
            let linear = anh_nam(&g, &c, &Poly::linear(&lam)).unwrap();
            prop_assert!(iso(&linear, &r));
        }
    }
}
