//! Exact scalars over ℚ and prime fields.
//!
//! A [`Scalar`] carries its own field tag, so arithmetic can be written with
//! the ordinary operators. Mixing scalars of different fields through the
//! operators is a logic error and panics; [`scalar_arith`] is the checked
//! entry point.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl Field {
    pub fn rationals() -> Self {
        Field::Rationals
    }

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Field::Prime { p })
        } else {
            Err(Error::NotPrimeModulus(p))
        }
    }

    /// Re-checks the primality invariant; used after deserialization.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Field::Rationals => Ok(()),
            Field::Prime { p } => Field::prime(p).map(|_| ()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rationals => 0,
            Field::Prime { p } => p,
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Field::Rationals => None,
            Field::Prime { p } => Some(p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime { .. })
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime { p } => Scalar::Fp {
                v: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    pub fn from_u64(&self, n: u64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime { p } => Scalar::Fp { v: n % p, p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Prime { p } => {
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let v: u64 = r.try_into().expect("residue fits in u64");
                Scalar::Fp { v, p }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d.inv()?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// All field elements in canonical order (`0, 1, …, p−1`). Panics over ℚ.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        let p = self.order().expect("element enumeration needs a finite field");
        (0..p).map(move |v| Scalar::Fp { v, p })
    }

    /// Element with enumeration index `i` (finite fields only).
    pub fn element(&self, i: u64) -> Scalar {
        let p = self.order().expect("finite field");
        Scalar::Fp { v: i % p, p }
    }

    /// A uniformly random element over 𝔽ₚ; a small random rational over ℚ.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            Field::Rationals => {
                let num = rng.gen_range(-5i64..=5);
                let den = rng.gen_range(1i64..=3);
                Scalar::Q(BigRational::new(num.into(), den.into()))
            }
            Field::Prime { p } => Scalar::Fp {
                v: rng.gen_range(0..p),
                p,
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Parses the text encoding: `a/b` or `a` over ℚ, a canonical residue over 𝔽ₚ.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        match *self {
            Field::Rationals => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (t, "1"),
                };
                let num: BigInt = parse_int(num)?;
                let den: BigInt = parse_int(den)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{text}`")));
                }
                Ok(Scalar::Q(BigRational::new(num, den)))
            }
            Field::Prime { p } => {
                if !t.bytes().all(|b| b.is_ascii_digit()) || t.is_empty() {
                    return Err(Error::Parse(format!("`{text}` is not a residue mod {p}")));
                }
                let v: u64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("`{text}` is not a residue mod {p}")))?;
                if v >= p {
                    return Err(Error::Parse(format!("`{text}` is not canonical mod {p}")));
                }
                Ok(Scalar::Fp { v, p })
            }
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("`{s}` is not an integer")));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("`{s}` is not an integer")))
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F{p}"),
        }
    }
}

/// Accepts `Q` or `F<p>` (also `GF(p)`).
impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
        let p = digits
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Reduced fraction with positive denominator.
    Q(BigRational),
    /// Canonical residue `v` in `0..p`.
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue of an 𝔽ₚ element; `None` over ℚ.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    a.check_same(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a * &b.inv()?,
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

macro_rules! binop {
    ($tr:ident, $m:ident, $q:expr, $fp:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q($q(a, b)),
                    (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: p2 }) if p == p2 => {
                        Scalar::Fp { v: $fp(*a, *b, *p), p: *p }
                    }
                    _ => panic!("scalar field mismatch: {} vs {}", self.field(), rhs.field()),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
});
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
});
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Height of a rational (max of |numerator|, denominator); 0 over 𝔽ₚ.
pub fn height(s: &Scalar) -> BigInt {
    match s {
        Scalar::Q(q) => q.numer().abs().max(q.denom().clone()),
        Scalar::Fp { .. } => BigInt::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rational_sum() {
        let q = Field::Rationals;
        let a = q.parse("1/2").unwrap();
        let b = q.parse("1/3").unwrap();
        assert_eq!(scalar_arith(&a, &b, ArithOp::Add).unwrap().to_string(), "5/6");
    }

    #[test]
    fn field_names() {
        assert_eq!("Q".parse::<Field>(), Ok(Field::Rationals));
        assert_eq!("F7".parse::<Field>(), Ok(Field::Prime { p: 7 }));
        assert_eq!("GF(3)".parse::<Field>(), Ok(Field::Prime { p: 3 }));
        assert_eq!("F4".parse::<Field>(), Err(Error::NotPrimeModulus(4)));
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn prime_field_ops() {
        let f5 = Field::prime(5).unwrap();
        let r = scalar_arith(&f5.from_i64(3), &f5.from_i64(4), ArithOp::Mul).unwrap();
        assert_eq!(r, f5.from_i64(2));
        let f2 = Field::prime(2).unwrap();
        assert!(scalar_arith(&f2.one(), &f2.one(), ArithOp::Add)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn errors() {
        let q = Field::Rationals;
        assert_eq!(
            scalar_arith(&q.one(), &q.zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(
            scalar_arith(&q.one(), &f5.one(), ArithOp::Add),
            Err(Error::FieldMismatch(..))
        ));
        assert_eq!(Field::prime(9), Err(Error::NotPrimeModulus(9)));
    }

    #[test]
    fn canonical_forms() {
        let q = Field::Rationals;
        assert_eq!(q.parse("-4/6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse("3/-6").unwrap().to_string(), "-1/2");
        assert_eq!(Field::prime(7).unwrap().from_i64(-1).to_string(), "6");
        assert!(Field::prime(7).unwrap().parse("7").is_err());
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64(4_294_967_291));
        assert!(!is_prime_u64(4_294_967_297));
    }

    fn axioms(field: Field) {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = field.random(&mut rng);
            let b = field.random(&mut rng);
            let c = field.random(&mut rng);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a + &b, &b + &a);
            assert!((&a + &(-&a)).is_zero());
            if !a.is_zero() {
                assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        axioms(Field::Rationals);
        axioms(Field::prime(2).unwrap());
        axioms(Field::prime(5).unwrap());
        axioms(Field::prime(1_000_003).unwrap());
    }
}
