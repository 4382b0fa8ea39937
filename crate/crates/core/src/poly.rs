//! Dense univariate polynomials over a [`Field`], characteristic polynomials
//! and companion matrices.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Coefficients low degree first; the leading coefficient is nonzero, and the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(c.field(), vec![c])
    }

    pub fn x(field: Field) -> Self {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(c: Scalar, deg: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); deg];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    /// `x − a`.
    pub fn linear(a: &Scalar) -> Self {
        Poly::new(a.field(), vec![-a, a.field().one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            self.field,
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            self.field,
            (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Poly::new(self.field, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                r[k + j] -= &t;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Quotient, asserting exact division.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_u64(i as u64))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(self.field, n).scale(c));
        }
        acc
    }

}

/// Characteristic polynomial `det(x·I − m)` by Hessenberg reduction; valid
/// over every field.
pub fn char_poly(m: &Matrix) -> Poly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    let mut h = m.clone();
    for k in 1..n.saturating_sub(1) {
        let Some(i) = (k..n).find(|&i| !h[(i, k - 1)].is_zero()) else {
            continue;
        };
        if i != k {
            for j in 0..n {
                let t = h[(i, j)].clone();
                h[(i, j)] = h[(k, j)].clone();
                h[(k, j)] = t;
            }
            for j in 0..n {
                let t = h[(j, i)].clone();
                h[(j, i)] = h[(j, k)].clone();
                h[(j, k)] = t;
            }
        }
        let t_inv = h[(k, k - 1)].inv().expect("pivot");
        for i in k + 1..n {
            let u = &h[(i, k - 1)] * &t_inv;
            if u.is_zero() {
                continue;
            }
            for j in 0..n {
                let s = &u * &h[(k, j)];
                h[(i, j)] -= &s;
            }
            for j in 0..n {
                let s = &u * &h[(j, i)];
                h[(j, k)] += &s;
            }
        }
    }
    // p_m = (x − h_mm) p_{m−1} − Σ_i (∏ subdiagonal) h_{m−i,m} p_{m−i−1}, 1-indexed.
    let hh = |a: usize, b: usize| h[(a - 1, b - 1)].clone();
    let mut ps: Vec<Poly> = vec![Poly::one(field)];
    for mm in 1..=n {
        let mut pm = Poly::linear(&hh(mm, mm)).mul(&ps[mm - 1]);
        let mut t = field.one();
        for i in 1..mm {
            t = &t * &hh(mm - i + 1, mm - i);
            let c = &t * &hh(mm - i, mm);
            pm = pm.sub(&ps[mm - i - 1].scale(&c));
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}

/// Matrix of multiplication by `x` on `k[x]/f` in the power basis.
pub fn companion_matrix(f: &Poly) -> Result<Matrix> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.degree().unwrap();
    if d == 0 {
        return Err(Error::Unsupported("companion of a constant".into()));
    }
    let field = f.field();
    let mut m = Matrix::zeros(field, d, d);
    for i in 1..d {
        m[(i, i - 1)] = field.one();
    }
    for i in 0..d {
        m[(i, d - 1)] = -&f.coeff(i);
    }
    Ok(m)
}

/// Every monic polynomial of the given degree over a finite field, in
/// lexicographic coefficient order.
pub fn monic_polys(field: Field, degree: usize) -> impl Iterator<Item = Poly> {
    let q = field.order().expect("finite field");
    let total = q.pow(degree as u32);
    (0..total).map(move |mut idx| {
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push(field.from_u64(idx % q));
            idx /= q;
        }
        c.push(field.one());
        Poly::new(field, c)
    })
}
