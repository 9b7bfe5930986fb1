//! Exact scalars and vectors.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// A point of `Q^n`: a divisor class, a character, or a sample point of a cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(pub Vec<Rat>);

impl RationalVector {
    pub fn zero(len: usize) -> Self {
        Self(vec![Rat::zero(); len])
    }

    pub fn from_ints<T: Into<Int> + Clone>(xs: &[T]) -> Self {
        Self(xs.iter().cloned().map(|x| Rat::from_integer(x.into())).collect())
    }

    pub fn from_int_vec(xs: &[Int]) -> Self {
        Self(xs.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// The integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<Int>> {
        self.is_integral()
            .then(|| self.0.iter().map(|x| x.to_integer()).collect())
    }

    pub fn scale(&self, q: &Rat) -> Self {
        Self(self.0.iter().map(|x| x * q).collect())
    }

    pub fn dot_int(&self, other: &[Int]) -> Rat {
        self.0
            .iter()
            .zip(other)
            .fold(Rat::zero(), |acc, (x, y)| acc + x * Rat::from_integer(y.clone()))
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> Int {
        self.0
            .iter()
            .fold(Int::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// The primitive integer vector on the same ray (zero stays zero).
    pub fn primitive(&self) -> Vec<Int> {
        let l = self.denominator_lcm();
        let scaled: Vec<Int> = self
            .0
            .iter()
            .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
            .collect();
        primitive(scaled)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&RationalVector> for &Rat {
    type Output = RationalVector;
    fn mul(self, rhs: &RationalVector) -> RationalVector {
        rhs.scale(self)
    }
}

impl From<Vec<Rat>> for RationalVector {
    fn from(v: Vec<Rat>) -> Self {
        Self(v)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(render_rat).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for RationalVector {
    type Err = Error;

    /// Parses a comma separated list such as `1,-1/2,0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self(Vec::new()));
        }
        s.split(',').map(parse_rat).collect::<Result<Vec<_>>>().map(Self)
    }
}

/// Canonical rendering: `p` for integers, `p/q` with `q > 0` otherwise.
pub fn render_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => s.parse::<Int>().map(Rat::from_integer).map_err(|_| bad()),
    }
}

pub fn format_int_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
pub(crate) fn to_ints<T: Into<Int> + Clone>(xs: &[T]) -> Vec<Int> {
    xs.iter().cloned().map(Into::into).collect()
}

pub(crate) fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn rat_dot(a: &[Rat], b: &[Int]) -> Rat {
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + x * Rat::from_integer(y.clone()))
}

/// Divides by the gcd of the entries. The direction is preserved.
pub(crate) fn primitive(mut v: Vec<Int>) -> Vec<Int> {
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Primitive and with first nonzero entry positive; used for lines and hyperplanes.
pub(crate) fn primitive_up_to_sign(v: Vec<Int>) -> Vec<Int> {
    let v = primitive(v);
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

pub(crate) fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `a * x - b * y`, componentwise.
pub(crate) fn combine(a: &Int, x: &[Int], b: &Int, y: &[Int]) -> Vec<Int> {
    x.iter().zip(y).map(|(xi, yi)| a * xi - b * yi).collect()
}
