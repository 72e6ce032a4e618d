use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field: the rationals or a prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Invalid(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { v: n.rem_euclid(p as i64) as u32, p },
        }
    }

    /// `num/den` as a field element; `None` when `den` vanishes in the field.
    pub fn frac(&self, num: i64, den: i64) -> Option<Scalar> {
        self.int(den).inv().map(|d| self.int(num) * d)
    }

    /// Whether the positive integer `n` is invertible: the characteristic
    /// is zero or does not divide `n`.
    pub fn int_invertible(&self, n: u64) -> bool {
        match self {
            Field::Rationals => n != 0,
            Field::Prime(p) => n % (*p as u64) != 0,
        }
    }

    /// Parses a scalar in this field: `"p/q"` or `"n"` over Q, a decimal
    /// residue in `[0, p)` over `F_p`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?} for field {self}"));
        match *self {
            Field::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Q(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let v: u64 = s.parse().map_err(|_| bad())?;
                if v >= p as u64 {
                    return Err(Error::Parse(format!("residue {v} out of range [0, {p})")));
                }
                Ok(Scalar::Fp { v: v as u32, p })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u32 = rest
                .trim_start_matches('_')
                .parse()
                .map_err(|_| Error::Parse(format!("invalid field spec {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::Parse(format!("invalid field spec {s:?} (expected \"Q\" or \"F<p>\")")))
    }
}

/// A field element in canonical form.
///
/// Rationals are always reduced with a positive denominator (maintained by
/// `BigRational`); prime-field residues live in `[0, p)`. Arithmetic between
/// elements of different fields panics: containers check fields at their
/// boundaries, so a mismatch here is a logic error.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::Fp { v, p } => Scalar::Fp { v: pow_mod(*v as u64, (*p - 2) as u64, *p as u64) as u32, p: *p },
        })
    }

    /// Small integer value when the scalar is an integer that fits in `i64`
    /// (rationals) or its canonical residue (prime fields).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(r) if r.is_negative())
    }

    fn mismatch(a: &Scalar, b: &Scalar) -> ! {
        panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Q(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (*p - *v) % *p, p: *p },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Returns `y` with `n·y = x`, provided `n` is invertible in the field of `x`.
pub fn div_by_int(x: &Scalar, n: u64) -> Result<Scalar> {
    let field = x.field();
    if n == 0 || !field.int_invertible(n) {
        return Err(Error::NotInvertible { n, characteristic: field.characteristic() });
    }
    let n_scalar = match field {
        Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        Field::Prime(p) => Scalar::Fp { v: (n % p as u64) as u32, p },
    };
    Ok(x * &n_scalar.inv().expect("invertible integer"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        Field::Rationals.parse_scalar(s).unwrap()
    }

    #[test]
    fn field_specs_roundtrip() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("F7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!(Field::Prime(3).to_string(), "F3");
        assert!("F4".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(q("2/4"), q("1/2"));
        assert_eq!(q("3/-6").to_string(), "-1/2");
        assert_eq!(q("6/3").to_string(), "2");
        assert!(Field::Rationals.parse_scalar("1/0").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(5);
        let a = f.int(3);
        let b = f.int(4);
        assert_eq!(&a + &b, f.int(2));
        assert_eq!(&a - &b, f.int(4));
        assert_eq!(&a * &b, f.int(2));
        assert_eq!(-&a, f.int(2));
        assert_eq!(a.inv().unwrap(), f.int(2));
        assert!(f.int(0).inv().is_none());
        assert!(f.parse_scalar("5").is_err());
    }

    #[test]
    fn div_by_int_examples() {
        let f3 = Field::Prime(3);
        assert_eq!(div_by_int(&f3.one(), 2).unwrap(), f3.int(2));
        let f2 = Field::Prime(2);
        assert_eq!(
            div_by_int(&f2.one(), 2),
            Err(Error::NotInvertible { n: 2, characteristic: 2 })
        );
        assert_eq!(div_by_int(&q("3/4"), 3).unwrap(), q("1/4"));
    }

    #[test]
    fn int_invertibility() {
        assert!(Field::Rationals.int_invertible(6));
        assert!(!Field::Prime(2).int_invertible(2));
        assert!(Field::Prime(3).int_invertible(2));
        assert!(!Field::Prime(3).int_invertible(6));
    }
}
