//! Factorization and irreducibility of polynomials over `F_p` and `Q`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Field, Scalar};
use crate::poly::Poly;

/// Largest degree accepted by the rational factorizer.
pub const MAX_RATIONAL_DEGREE: usize = 8;

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients. Constants factor as the empty product.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::Unsupported("factoring the zero polynomial".into()));
    }
    let mut out = match f.field() {
        Field::Prime { .. } => factor_fp(f),
        Field::Rationals => factor_q(f)?,
    };
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| poly_key(&a.0).cmp(&poly_key(&b.0)))
    });
    Ok(out)
}

fn poly_key(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// Irreducibility of a monic polynomial of positive degree.
pub fn poly_is_irreducible(f: &Poly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.degree().unwrap();
    if d == 0 {
        return Ok(false);
    }
    match f.field() {
        Field::Prime { .. } => Ok(rabin_irreducible(f)),
        Field::Rationals => {
            if d > MAX_RATIONAL_DEGREE {
                return Err(Error::Unsupported(format!(
                    "rational irreducibility above degree {MAX_RATIONAL_DEGREE}"
                )));
            }
            let fs = factor_q(f)?;
            Ok(fs.len() == 1 && fs[0].1 == 1)
        }
    }
}

fn prime_of(f: &Poly) -> u64 {
    f.field().characteristic()
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(p^k) mod f` by repeated Frobenius.
fn frobenius_power(f: &Poly, k: usize) -> Poly {
    let p = BigUint::from(prime_of(f));
    let mut h = Poly::x(f.field()).rem(f);
    for _ in 0..k {
        h = h.powmod(&p, f);
    }
    h
}

/// Rabin's test over `F_p`.
pub fn rabin_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let f = f.monic();
    let x = Poly::x(f.field());
    if frobenius_power(&f, n).sub(&x).rem(&f).is_zero() {
        prime_divisors(n).into_iter().all(|q| {
            let h = frobenius_power(&f, n / q).sub(&x);
            h.gcd(&f).is_one()
        })
    } else {
        false
    }
}

fn pth_root(f: &Poly, p: usize) -> Poly {
    let c = f.coeffs();
    Poly::new(f.field(), c.iter().step_by(p).cloned().collect())
}

fn squarefree_fp(f: &Poly) -> Vec<(Poly, usize)> {
    let p = prime_of(f) as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.monic().div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, m) in squarefree_fp(&pth_root(&c, p)) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let p = BigUint::from(prime_of(f));
    let x = Poly::x(f.field());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut i = 1;
    while rest.degree().unwrap() >= 2 * i {
        h = h.powmod(&p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap() > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly(field: Field, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(field, (0..below).map(|_| field.random(rng)).collect())
}

fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.clone());
        return;
    }
    let field = g.field();
    let p = prime_of(g);
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.powmod(&e, g).sub(&Poly::one(field))
        };
        let h = b.gcd(g);
        let hd = h.degree().unwrap_or(0);
        if h.is_zero() || hd == 0 || hd == n {
            continue;
        }
        let other = g.div_exact(&h);
        equal_degree(&h, d, rng, out);
        equal_degree(&other, d, rng, out);
        return;
    }
}

/// Complete factorization over `F_p`.
pub fn factor_fp(f: &Poly) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    for (sq, mult) in squarefree_fp(f) {
        for (g, d) in distinct_degree(&sq) {
            let mut parts = Vec::new();
            equal_degree(&g, d, &mut rng, &mut parts);
            out.extend(parts.into_iter().map(|h| (h, mult)));
        }
    }
    out
}

// ---- rational factorization -------------------------------------------------

type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Division by a monic integer polynomial; `None` unless exact.
fn int_div_monic(a: &IntPoly, d: &IntPoly) -> Option<IntPoly> {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            r[k + j] -= &c * dc;
        }
        q[k] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(trim(q))
    } else {
        None
    }
}

fn to_fp(a: &IntPoly, field: Field) -> Poly {
    Poly::new(field, a.iter().map(|c| field.from_bigint(c)).collect())
}

fn from_fp(a: &Poly) -> IntPoly {
    a.coeffs()
        .iter()
        .map(|c| BigInt::from(c.residue().unwrap()))
        .collect()
}

fn symmetric_mod(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `h ≡ a·b (mod p)` to `mod p^k`; returns the lift of `a`.
fn hensel_lift(h: &IntPoly, a: &Poly, b: &Poly, k: u32) -> IntPoly {
    let field = a.field();
    let p = BigInt::from(field.characteristic());
    let (g, _, t) = a.ext_gcd(b);
    debug_assert!(g.is_one());
    let mut ai = from_fp(a);
    let mut bi = from_fp(b);
    let mut m = p.clone();
    for _ in 1..k {
        let prod = int_mul(&ai, &bi);
        let n = h.len().max(prod.len());
        let e: IntPoly = (0..n)
            .map(|i| {
                let x = h.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default();
                debug_assert!((&x % &m).is_zero());
                x / &m
            })
            .collect();
        let e = to_fp(&trim(e), field);
        let abar = to_fp(&ai, field);
        let bbar = to_fp(&bi, field);
        let da = t.mul(&e).rem(&abar);
        let db = e.sub(&da.mul(&bbar)).div_exact(&abar);
        for (i, c) in from_fp(&da).into_iter().enumerate() {
            ai[i] += &m * c;
        }
        for (i, c) in from_fp(&db).into_iter().enumerate() {
            bi[i] += &m * c;
        }
        m *= &p;
    }
    symmetric_mod(&ai, &m)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Factors a monic squarefree integer polynomial into monic irreducibles.
fn zassenhaus(h: &IntPoly) -> Vec<IntPoly> {
    let n = h.len() - 1;
    if n <= 1 {
        return vec![h.clone()];
    }
    // choose the good prime with the fewest modular factors among a few
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 6 {
        if is_prime_u64(p) {
            let field = Field::Prime { p };
            let hb = to_fp(h, field);
            if hb.degree() == Some(n) && hb.gcd(&hb.derivative()).is_one() {
                tried += 1;
                let fs: Vec<Poly> = factor_fp(&hb).into_iter().map(|(g, _)| g).collect();
                if fs.len() == 1 {
                    return vec![h.clone()];
                }
                if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
                    best = Some((p, fs));
                }
            }
        }
        p += 2;
    }
    let (p, mut facs) = best.expect("a good prime exists");
    let field = Field::Prime { p };

    let norm2: BigInt = h.iter().map(|c| c * c).sum();
    let bound = (BigInt::from(2).pow(n as u32) * (norm2.sqrt() + 1u32)) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }

    let mut rest = h.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= facs.len() {
        let mut split = None;
        for sub in subsets(facs.len(), size) {
            let a = sub
                .iter()
                .fold(Poly::one(field), |acc, &i| acc.mul(&facs[i]));
            let b = (0..facs.len())
                .filter(|i| !sub.contains(i))
                .fold(Poly::one(field), |acc, i| acc.mul(&facs[i]));
            let cand = hensel_lift(&rest, &a, &b, k);
            if let Some(q) = int_div_monic(&rest, &cand) {
                split = Some((sub, cand, q));
                break;
            }
        }
        match split {
            Some((sub, cand, q)) => {
                found.push(cand);
                rest = q;
                facs = facs
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !sub.contains(i))
                    .map(|(_, f)| f)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        found.push(rest);
    }
    found
}

fn squarefree_q(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.monic().div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    out
}

fn ratio(s: &Scalar) -> BigRational {
    s.as_rational().cloned().expect("rational scalar")
}

/// Factors a monic squarefree rational polynomial.
fn factor_squarefree_q(g: &Poly) -> Vec<Poly> {
    let n = g.degree().unwrap();
    if n == 1 {
        return vec![g.clone()];
    }
    let den = g
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(ratio(c).denom()));
    // h(x) = den^n g(x/den)
    let h: IntPoly = (0..=n)
        .map(|i| {
            let c = ratio(&g.coeff(i)) * BigRational::from_integer(den.pow((n - i) as u32));
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    zassenhaus(&h)
        .into_iter()
        .map(|hj| {
            let dj = hj.len() - 1;
            // g_j(x) = den^{-dj} h_j(den·x)
            let coeffs = hj
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let r = BigRational::new(c * den.pow(i as u32), den.pow(dj as u32));
                    Scalar::Q(r)
                })
                .collect();
            Poly::new(Field::Rationals, coeffs)
        })
        .collect()
}

/// Complete factorization over `Q` up to [`MAX_RATIONAL_DEGREE`].
pub fn factor_q(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let d = f.degree().unwrap_or(0);
    if d > MAX_RATIONAL_DEGREE {
        return Err(Error::Unsupported(format!(
            "rational factorization above degree {MAX_RATIONAL_DEGREE}"
        )));
    }
    let mut out = Vec::new();
    if d == 0 {
        return Ok(out);
    }
    for (g, m) in squarefree_q(f) {
        out.extend(factor_squarefree_q(&g).into_iter().map(|h| (h, m)));
    }
    Ok(out)
}

/// Size estimate used in diagnostics.
pub fn coefficient_height(f: &Poly) -> f64 {
    f.coeffs()
        .iter()
        .map(|c| match c.as_rational() {
            Some(r) => r.abs().to_f64().unwrap_or(f64::INFINITY),
            None => c.residue().unwrap() as f64,
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monic_polys;
    use rand::Rng;

    fn product(fs: &[(Poly, usize)], field: Field) -> Poly {
        fs.iter()
            .fold(Poly::one(field), |acc, (g, m)| acc.mul(&g.pow(*m)))
    }

    /// Irreducible iff no monic factor of degree 1..=n/2 divides.
    fn trial_division_irreducible(f: &Poly) -> bool {
        let n = f.degree().unwrap();
        (1..=n / 2).all(|d| monic_polys(f.field(), d).all(|g| !f.rem(&g).is_zero()))
    }

    #[test]
    fn small_examples() {
        let f2 = Field::prime(2).unwrap();
        assert!(poly_is_irreducible(&Poly::from_i64(f2, &[1, 1, 1])).unwrap());
        let f3 = Field::prime(3).unwrap();
        assert!(!poly_is_irreducible(&Poly::from_i64(f3, &[1, 0, 1, 0]).monic()).is_err());
        let q = Field::Rationals;
        assert!(poly_is_irreducible(&Poly::from_i64(q, &[1, 0, 1])).unwrap());
        assert!(!poly_is_irreducible(&Poly::from_i64(q, &[-1, 0, 1])).unwrap());
        assert!(poly_is_irreducible(&Poly::from_i64(q, &[-2, 0, 1])).unwrap());
        assert_eq!(
            poly_is_irreducible(&Poly::from_i64(q, &[1, 2])),
            Err(Error::NotMonic)
        );
        let big = Poly::monomial(q.one(), 9).add(&Poly::one(q));
        assert!(matches!(poly_is_irreducible(&big), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u64, 3, 5] {
            let field = Field::prime(p).unwrap();
            let max_d = if p == 2 { 7 } else { 4 };
            for d in 1..=max_d {
                for f in monic_polys(field, d) {
                    assert_eq!(rabin_irreducible(&f), trial_division_irreducible(&f), "{f}");
                }
            }
        }
    }

    #[test]
    fn fp_factorization_reassembles() {
        for p in [2u64, 3, 7] {
            let field = Field::prime(p).unwrap();
            let max_d = if p == 7 { 3 } else { 6 };
            for d in 1..=max_d {
                for f in monic_polys(field, d) {
                    let fs = factor(&f).unwrap();
                    assert_eq!(product(&fs, field), f);
                    assert!(fs.iter().all(|(g, _)| rabin_irreducible(g)));
                }
            }
        }
    }

    #[test]
    fn rational_factorization_reassembles() {
        let q = Field::Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            // product of random small monic factors
            let mut f = Poly::one(q);
            let parts = rng.gen_range(1..=3);
            for _ in 0..parts {
                let d = rng.gen_range(1..=3).min(MAX_RATIONAL_DEGREE - f.degree().unwrap());
                if d == 0 {
                    break;
                }
                let mut c: Vec<Scalar> = (0..d).map(|_| q.random(&mut rng)).collect();
                c.push(q.one());
                f = f.mul(&Poly::new(q, c));
            }
            let fs = factor(&f).unwrap();
            assert_eq!(product(&fs, q), f);
            for (g, _) in &fs {
                assert!(g.is_monic());
                assert!(g.degree().unwrap() >= 1);
            }
            let total: usize = fs.iter().map(|(g, m)| g.degree().unwrap() * m).sum();
            assert_eq!(total, f.degree().unwrap());
        }
    }

    #[test]
    fn swinnerton_dyer_style_cases() {
        let q = Field::Rationals;
        // x^4 − 10x^2 + 1 is irreducible but splits mod every prime
        let f = Poly::from_i64(q, &[1, 0, -10, 0, 1]);
        assert!(poly_is_irreducible(&f).unwrap());
        // (x^2 − 2)(x^2 − 3)
        let g = Poly::from_i64(q, &[6, 0, -5, 0, 1]);
        let fs = factor(&g).unwrap();
        assert_eq!(fs.len(), 2);
        // (x − 1/2)^2 (x^2 + 1)
        let h = Poly::new(q, vec![q.from_ratio(-1, 2).unwrap(), q.one()])
            .pow(2)
            .mul(&Poly::from_i64(q, &[1, 0, 1]));
        let fs = factor(&h).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].1, 2);
        // cyclotomic x^6 + x^5 + … + 1
        assert!(poly_is_irreducible(&Poly::from_i64(q, &[1; 7])).unwrap());
    }
}
