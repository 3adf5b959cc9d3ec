//! Exact scalar arithmetic for the three supported coefficient rings.
//!
//! Everything here is exact: rationals are kept in lowest terms by
//! `num-rational`, integers are arbitrary precision, and mod-2 arithmetic is
//! a single bit. No floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient ring K, selected at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Rational,
    Integer,
    Mod2,
}

impl CoeffRing {
    pub fn is_field(self) -> bool {
        matches!(self, CoeffRing::Rational | CoeffRing::Mod2)
    }

    /// Tag used in the pairing file format.
    pub fn tag(self) -> &'static str {
        match self {
            CoeffRing::Rational => "Q",
            CoeffRing::Integer => "Z",
            CoeffRing::Mod2 => "F2",
        }
    }

    pub fn from_tag(tag: &str) -> Option<CoeffRing> {
        match tag {
            "Q" => Some(CoeffRing::Rational),
            "Z" => Some(CoeffRing::Integer),
            "F2" => Some(CoeffRing::Mod2),
            _ => None,
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An exact scalar in one of the three rings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Int(BigInt),
    F2(u8),
}

impl Scalar {
    pub fn ring(&self) -> CoeffRing {
        match self {
            Scalar::Rat(_) => CoeffRing::Rational,
            Scalar::Int(_) => CoeffRing::Integer,
            Scalar::F2(_) => CoeffRing::Mod2,
        }
    }

    pub fn zero(ring: CoeffRing) -> Scalar {
        match ring {
            CoeffRing::Rational => Scalar::Rat(BigRational::zero()),
            CoeffRing::Integer => Scalar::Int(BigInt::zero()),
            CoeffRing::Mod2 => Scalar::F2(0),
        }
    }

    pub fn one(ring: CoeffRing) -> Scalar {
        match ring {
            CoeffRing::Rational => Scalar::Rat(BigRational::one()),
            CoeffRing::Integer => Scalar::Int(BigInt::one()),
            CoeffRing::Mod2 => Scalar::F2(1),
        }
    }

    pub fn from_i64(ring: CoeffRing, v: i64) -> Scalar {
        match ring {
            CoeffRing::Rational => Scalar::Rat(BigRational::from(BigInt::from(v))),
            CoeffRing::Integer => Scalar::Int(BigInt::from(v)),
            CoeffRing::Mod2 => Scalar::F2((v.rem_euclid(2)) as u8),
        }
    }

    pub fn from_ratio(ring: CoeffRing, num: i64, den: i64) -> Result<Scalar> {
        match ring {
            CoeffRing::Rational => {
                if den == 0 {
                    return Err(Error::Syntax {
                        offset: 0,
                        msg: "zero denominator".into(),
                    });
                }
                Ok(Scalar::Rat(BigRational::new(
                    BigInt::from(num),
                    BigInt::from(den),
                )))
            }
            _ if den == 1 => Ok(Scalar::from_i64(ring, num)),
            _ => Err(Error::FieldRequired),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Int(i) => i.is_zero(),
            Scalar::F2(b) => *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Int(i) => i.is_one(),
            Scalar::F2(b) => *b == 1,
        }
    }

    /// True when this scalar prints with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Int(i) => i.is_negative(),
            Scalar::F2(_) => false,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Int(i) => Scalar::Int(-i.clone()),
            Scalar::F2(b) => Scalar::F2(*b),
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(a ^ b),
            _ => panic!("scalar ring mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(a & b),
            _ => panic!("scalar ring mismatch"),
        }
    }

    /// Multiplicative inverse; `None` for zero and for non-unit integers.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Int(i) => {
                if i.is_one() || (-i).is_one() {
                    Some(Scalar::Int(i.clone()))
                } else {
                    None
                }
            }
            Scalar::F2(b) => {
                if *b == 1 {
                    Some(Scalar::F2(1))
                } else {
                    None
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Parses an integer or `p/q` literal.
    pub fn parse(ring: CoeffRing, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = |msg: &str| Error::Syntax {
            offset: 0,
            msg: msg.into(),
        };
        if let Some((n, d)) = text.split_once('/') {
            if ring != CoeffRing::Rational {
                return Err(Error::FieldRequired);
            }
            let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Scalar::Rat(BigRational::new(n, d)))
        } else {
            let n: BigInt = text.parse().map_err(|_| bad("bad integer"))?;
            Ok(match ring {
                CoeffRing::Rational => Scalar::Rat(BigRational::from(n)),
                CoeffRing::Integer => Scalar::Int(n),
                CoeffRing::Mod2 => {
                    let two = BigInt::from(2);
                    let r = ((n % &two) + &two) % &two;
                    Scalar::F2(if r.is_zero() { 0 } else { 1 })
                }
            })
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Int(i) => write!(f, "{i}"),
            Scalar::F2(b) => write!(f, "{b}"),
        }
    }
}
