use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{Field, Scalar};
use crate::matrix::{spin, Echelon, Matrix};
use crate::poly::{char_poly, Poly};

use super::rep::{compatible, Rep, RepHom, Subspace};

/// Default cap on exhaustive enumerations.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

const RANDOM_TRIES: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isomorphism {
    Yes(RepHom),
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Yes,
    /// A proper nonzero submodule.
    No(Subspace),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Yes,
    /// Two nonzero complementary submodules.
    No(Subspace, Subspace),
    Unknown,
}

impl Isomorphism {
    pub fn verdict(&self) -> Verdict {
        match self {
            Isomorphism::Yes(_) => Verdict::Yes,
            Isomorphism::No => Verdict::No,
            Isomorphism::Unknown => Verdict::Unknown,
        }
    }
}

impl Irreducibility {
    pub fn verdict(&self) -> Verdict {
        match self {
            Irreducibility::Yes => Verdict::Yes,
            Irreducibility::No(_) => Verdict::No,
            Irreducibility::Unknown => Verdict::Unknown,
        }
    }
}

impl Decomposition {
    pub fn verdict(&self) -> Verdict {
        match self {
            Decomposition::Yes => Verdict::Yes,
            Decomposition::No(..) => Verdict::No,
            Decomposition::Unknown => Verdict::Unknown,
        }
    }
}

/// Basis of the space of morphisms `v → w`.
pub fn hom_space(v: &Rep, w: &Rep) -> Result<Vec<RepHom>> {
    compatible(v, w)?;
    let g = v.graph();
    let f = v.field();
    let mut off = Vec::with_capacity(g.vertex_count());
    let mut nvars = 0;
    for x in g.vertices() {
        off.push(nvars);
        nvars += w.dim(x) * v.dim(x);
    }
    let var = |x: usize, i: usize, k: usize| off[x] + i * v.dim(x) + k;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for e in g.edge_ids() {
        let (s, r) = (g.src(e), g.dst(e));
        let (m, n) = (v.mat(e), w.mat(e));
        // θ_r M − N θ_s = 0, entry (i, j)
        for i in 0..w.dim(r) {
            for j in 0..v.dim(s) {
                let mut row = vec![f.zero(); nvars];
                for k in 0..v.dim(r) {
                    row[var(r, i, k)] += &m[(k, j)];
                }
                for k in 0..w.dim(s) {
                    row[var(s, k, j)] -= &n[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    let sol = Matrix::from_rows(f, nvars, rows).nullspace();
    Ok((0..sol.cols())
        .map(|c| {
            let blocks = g
                .vertices()
                .map(|x| Matrix::from_fn(f, w.dim(x), v.dim(x), |i, k| sol[(var(x, i, k), c)].clone()))
                .collect();
            RepHom::new_unchecked(v.clone(), w.clone(), blocks)
        })
        .collect())
}

pub fn end_algebra(v: &Rep) -> Vec<RepHom> {
    hom_space(v, v).expect("a representation is compatible with itself")
}

fn combine(basis: &[RepHom], coeffs: &[Scalar]) -> RepHom {
    let first = &basis[0];
    let blocks = (0..first.blocks().len())
        .map(|x| {
            basis
                .iter()
                .zip(coeffs)
                .fold(Matrix::zeros(first.source().field(), first.block(x).rows(), first.block(x).cols()), |acc, (h, c)| {
                    acc.add(&h.block(x).scale(c))
                })
        })
        .collect();
    RepHom::new_unchecked(first.source().clone(), first.target().clone(), blocks)
}

fn combine_matrices(field: Field, n: usize, basis: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    basis
        .iter()
        .zip(coeffs)
        .fold(Matrix::zeros(field, n, n), |acc, (b, c)| acc.add(&b.scale(c)))
}

/// Digits of `idx` in base `q`, as field elements.
fn digits(field: Field, mut idx: u128, q: u128, m: usize) -> Vec<Scalar> {
    (0..m)
        .map(|_| {
            let d = (idx % q) as u64;
            idx /= q;
            field.from_u64(d)
        })
        .collect()
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn is_isomorphic(v: &Rep, w: &Rep, seed: u64) -> Result<Isomorphism> {
    is_isomorphic_with_budget(v, w, seed, DEFAULT_BUDGET)
}

/// Decides `v ≅ w`. Certifies `No` by invariants or by showing that no
/// combination of a Hom basis is invertible.
pub fn is_isomorphic_with_budget(v: &Rep, w: &Rep, seed: u64, budget: u128) -> Result<Isomorphism> {
    compatible(v, w)?;
    if v.dims() != w.dims() {
        return Ok(Isomorphism::No);
    }
    if v.is_zero() {
        return Ok(Isomorphism::Yes(RepHom::new_unchecked(
            v.clone(),
            w.clone(),
            v.graph().vertices().map(|_| Matrix::zeros(v.field(), 0, 0)).collect(),
        )));
    }
    let homs = hom_space(v, w)?;
    let m = homs.len();
    if m == 0 || end_algebra(v).len() != m || end_algebra(w).len() != m || hom_space(w, v)?.len() != m {
        return Ok(Isomorphism::No);
    }
    let field = v.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let c: Vec<Scalar> = (0..m).map(|_| field.random(&mut rng)).collect();
        let h = combine(&homs, &c);
        if h.is_isomorphism() {
            return Ok(Isomorphism::Yes(h));
        }
    }
    let d = v.total_dim() as u128;
    // Over F_p every coefficient tuple can be tried; otherwise a grid of
    // d+1 distinct values per coordinate detects a nonzero determinant.
    let q = match field {
        Field::Prime { p } if checked_pow(p as u128, m).is_some_and(|t| t <= budget) => p as u128,
        Field::Prime { p } if (p as u128) <= d => return Ok(Isomorphism::Unknown),
        _ => d + 1,
    };
    let Some(total) = checked_pow(q, m).filter(|&t| t <= budget) else {
        return Ok(Isomorphism::Unknown);
    };
    for idx in 0..total {
        let h = combine(&homs, &digits(field, idx, q, m));
        if h.is_isomorphism() {
            return Ok(Isomorphism::Yes(h));
        }
    }
    Ok(Isomorphism::No)
}

fn random_element(pool: &[Matrix], field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let c: Vec<Scalar> = pool.iter().map(|_| field.random(rng)).collect();
    combine_matrices(field, n, pool, &c)
}

fn annihilator_submodule(rep: &Rep, t: &Matrix) -> Subspace {
    Subspace::from_total(rep, &t.transpose().nullspace())
}

pub fn is_irreducible(rep: &Rep, seed: u64) -> Result<Irreducibility> {
    is_irreducible_with_budget(rep, seed, DEFAULT_BUDGET)
}

/// MeatAxe with Norton's criterion; exhaustive over small finite fields.
pub fn is_irreducible_with_budget(rep: &Rep, seed: u64, budget: u128) -> Result<Irreducibility> {
    let n = rep.total_dim();
    if n == 0 {
        return Err(Error::ZeroRep);
    }
    if n == 1 {
        return Ok(Irreducibility::Yes);
    }
    let field = rep.field();
    let gens = rep.generators();
    let gens_t: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    let proper = |ech: &Echelon| ech.dim() < n;

    for i in 0..n {
        let mut e = vec![field.zero(); n];
        e[i] = field.one();
        let s = spin(&gens, &[e], field, n);
        if proper(&s) {
            return Ok(Irreducibility::No(Subspace::from_total(rep, &s.basis())));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = gens.clone();
    pool.push(Matrix::identity(field, n));
    for _ in 0..RANDOM_TRIES {
        if pool.len() < 64 {
            let a = rng.gen_range(0..pool.len());
            let b = rng.gen_range(0..pool.len());
            let prod = pool[a].mul(&pool[b]);
            pool.push(prod);
        }
        let theta = random_element(&pool, field, n, &mut rng);
        let Ok(factors) = factor(&char_poly(&theta)) else {
            continue;
        };
        for (f, _) in factors {
            let ft = f.eval_matrix(&theta);
            let kernel = ft.nullspace();
            let s = spin(&gens, &[kernel.col(0)], field, n);
            if proper(&s) {
                return Ok(Irreducibility::No(Subspace::from_total(rep, &s.basis())));
            }
            if kernel.cols() == f.degree().unwrap() {
                let dual = ft.transpose().nullspace();
                let t = spin(&gens_t, &[dual.col(0)], field, n);
                if proper(&t) {
                    return Ok(Irreducibility::No(annihilator_submodule(rep, &t.basis())));
                }
                return Ok(Irreducibility::Yes);
            }
        }
    }

    if let Some(q) = field.order() {
        if let Some(total) = checked_pow(q as u128, n).filter(|&t| t <= budget) {
            for idx in 1..total {
                let v = digits(field, idx, q as u128, n);
                // one representative per line
                if !v.iter().find(|x| !x.is_zero()).is_some_and(Scalar::is_one) {
                    continue;
                }
                let s = spin(&gens, &[v], field, n);
                if proper(&s) {
                    return Ok(Irreducibility::No(Subspace::from_total(rep, &s.basis())));
                }
            }
            return Ok(Irreducibility::Yes);
        }
    }
    Ok(Irreducibility::Unknown)
}

/// Every proper nonzero submodule, by exhaustive spinning; `None` beyond the
/// budget or over an infinite field.
pub fn all_submodules(rep: &Rep, budget: u128) -> Option<Vec<Subspace>> {
    let field = rep.field();
    let q = field.order()? as u128;
    let n = rep.total_dim();
    let total = checked_pow(q, n).filter(|&t| t <= budget)?;
    let gens = rep.generators();
    // every submodule is a sum of cyclic ones
    let mut cyclic: Vec<Matrix> = Vec::new();
    for idx in 1..total {
        let v = digits(field, idx, q, n);
        if !v.iter().find(|x| !x.is_zero()).is_some_and(Scalar::is_one) {
            continue;
        }
        let b = spin(&gens, &[v], field, n).basis().col_basis();
        if !cyclic.contains(&b) {
            cyclic.push(b);
        }
    }
    let mut all: Vec<Matrix> = vec![Matrix::zeros(field, n, 0)];
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                let t = crate::matrix::span_sum(s, c);
                if !all.contains(&t) {
                    all.push(t.clone());
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    Some(all.iter().map(|m| Subspace::from_total(rep, m)).collect())
}

fn split_by_factors(rep: &Rep, theta: &Matrix, chi: &Poly) -> Option<Decomposition> {
    let factors = factor(chi).ok()?;
    if factors.len() < 2 {
        return None;
    }
    let (f, m) = &factors[0];
    let a = f.pow(*m);
    let b = chi.div_exact(&a);
    let u = a.eval_matrix(theta).nullspace();
    let w = b.eval_matrix(theta).nullspace();
    Some(Decomposition::No(
        Subspace::from_total(rep, &u),
        Subspace::from_total(rep, &w),
    ))
}

/// Whether `{b − λ_b}` spans a nilpotent ideal, making the algebra local.
fn local_by_eigenvalues(basis: &[Matrix], n: usize, field: Field) -> Option<bool> {
    let mut nil = Echelon::new(field, n * n);
    let mut parts = Vec::new();
    for b in basis {
        let fs = factor(&char_poly(b)).ok()?;
        if fs.len() != 1 || fs[0].0.degree() != Some(1) {
            return Some(false);
        }
        let lambda = -&fs[0].0.coeff(0);
        let nb = b.sub(&Matrix::identity(field, n).scale(&lambda));
        if nil.insert(nb.entries()) {
            parts.push(nb);
        }
    }
    for x in &parts {
        for y in &parts {
            if !nil.contains(x.mul(y).entries()) {
                return Some(false);
            }
        }
    }
    let mut power = parts.clone();
    for _ in 0..=n {
        if power.iter().all(Matrix::is_zero) {
            return Some(true);
        }
        let mut next = Echelon::new(field, n * n);
        let mut kept = Vec::new();
        for x in &power {
            for y in &parts {
                let z = x.mul(y);
                if next.insert(z.entries()) {
                    kept.push(z);
                }
            }
        }
        power = kept;
    }
    Some(false)
}

pub fn is_indecomposable(rep: &Rep, seed: u64) -> Result<Decomposition> {
    is_indecomposable_with_budget(rep, seed, DEFAULT_BUDGET)
}

/// Fitting search over the endomorphism algebra; exhaustive idempotent search
/// when the algebra is small and finite.
pub fn is_indecomposable_with_budget(rep: &Rep, seed: u64, budget: u128) -> Result<Decomposition> {
    let n = rep.total_dim();
    if n == 0 {
        return Err(Error::ZeroRep);
    }
    let field = rep.field();
    let basis: Vec<Matrix> = end_algebra(rep).iter().map(RepHom::to_total).collect();
    let m = basis.len();
    if m == 1 {
        return Ok(Decomposition::Yes);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = basis.clone();
    for _ in 0..RANDOM_TRIES {
        let c: Vec<Scalar> = (0..m).map(|_| field.random(&mut rng)).collect();
        candidates.push(combine_matrices(field, n, &basis, &c));
    }
    for theta in &candidates {
        if let Some(d) = split_by_factors(rep, theta, &char_poly(theta)) {
            return Ok(d);
        }
    }
    if local_by_eigenvalues(&basis, n, field) == Some(true) {
        return Ok(Decomposition::Yes);
    }
    if is_irreducible_with_budget(rep, seed, budget)? == Irreducibility::Yes {
        return Ok(Decomposition::Yes);
    }
    if let Some(q) = field.order() {
        let cap = budget.min(1 << 16);
        if let Some(total) = checked_pow(q as u128, m).filter(|&t| t <= cap) {
            let id = Matrix::identity(field, n);
            for idx in 1..total {
                let e = combine_matrices(field, n, &basis, &digits(field, idx, q as u128, m));
                if e == id || e.mul(&e) != e {
                    continue;
                }
                let image = e.col_basis();
                let kernel = e.nullspace();
                return Ok(Decomposition::No(
                    Subspace::from_total(rep, &image),
                    Subspace::from_total(rep, &kernel),
                ));
            }
            return Ok(Decomposition::Yes);
        }
    }
    Ok(Decomposition::Unknown)
}
