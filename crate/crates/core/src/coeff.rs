//! Coefficient domain: exact integers or exact rationals.
//!
//! Every scalar is stored as a `BigRational`; in integer mode the values are
//! always integral and the arithmetic below is Euclidean.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Which coefficient domain a presentation works over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    Int,
    Rat,
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

fn numer(c: &Scalar) -> BigInt {
    debug_assert!(c.is_integer());
    c.numer().clone()
}

fn lift(n: BigInt) -> Scalar {
    BigRational::from_integer(n)
}

impl Domain {
    pub fn is_field(self) -> bool {
        self == Domain::Rat
    }

    /// Least non-negative residue of `c` modulo `m`; identity when `m = 0`.
    pub fn canon_rem(self, c: &Scalar, m: &Scalar) -> Scalar {
        if m.is_zero() {
            return c.clone();
        }
        match self {
            Domain::Rat => Scalar::zero(),
            Domain::Int => lift(numer(c).mod_floor(&numer(m).abs())),
        }
    }

    /// Extended gcd with `g > 0` and `g = s*a + t*b`.
    pub fn bezout(self, a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar, Scalar)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self == Domain::Rat {
            return Ok(if !a.is_zero() {
                (Scalar::one(), a.recip(), Scalar::zero())
            } else {
                (Scalar::one(), Scalar::zero(), b.recip())
            });
        }
        let (mut r0, mut r1) = (numer(a), numer(b));
        let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
        let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
        while !r1.is_zero() {
            let q = r0.div_floor(&r1);
            let r2 = &r0 - &q * &r1;
            r0 = std::mem::replace(&mut r1, r2);
            let s2 = &s0 - &q * &s1;
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &q * &t1;
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_negative() {
            r0 = -r0;
            s0 = -s0;
            t0 = -t0;
        }
        Ok((lift(r0), lift(s0), lift(t0)))
    }

    /// Generator of the ideal spanned by `gens`, with a recorded combination.
    pub fn strong_ideal_basis(self, gens: &[Scalar]) -> Result<(Scalar, Vec<Scalar>)> {
        if gens.iter().all(Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
        let mut g = Scalar::zero();
        let mut comb: Vec<Scalar> = Vec::with_capacity(gens.len());
        for x in gens {
            if g.is_zero() && x.is_zero() {
                comb.push(Scalar::zero());
                continue;
            }
            let (ng, s, t) = self.bezout(&g, x)?;
            for c in comb.iter_mut() {
                *c = &*c * &s;
            }
            comb.push(t);
            g = ng;
        }
        Ok((g, comb))
    }

    pub fn gcd(self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() && b.is_zero() {
            return Scalar::zero();
        }
        match self {
            Domain::Rat => Scalar::one(),
            Domain::Int => lift(numer(a).gcd(&numer(b))),
        }
    }

    /// Non-negative lcm (field mode: 1 unless an argument vanishes).
    pub fn lcm(self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        match self {
            Domain::Rat => Scalar::one(),
            Domain::Int => lift(numer(a).lcm(&numer(b))),
        }
    }

    pub fn divides(self, d: &Scalar, c: &Scalar) -> bool {
        if d.is_zero() {
            return c.is_zero();
        }
        match self {
            Domain::Rat => true,
            Domain::Int => (numer(c) % numer(d)).is_zero(),
        }
    }

    pub fn is_unit(self, c: &Scalar) -> bool {
        match self {
            Domain::Rat => !c.is_zero(),
            Domain::Int => c.abs().is_one(),
        }
    }

    /// The unit `u` making `u*c` the normalized associate (positive, or 1 over a field).
    pub fn normalizing_unit(self, c: &Scalar) -> Scalar {
        match self {
            Domain::Rat => c.recip(),
            Domain::Int => {
                if c.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
        }
    }

    pub fn parse_scalar(self, text: &str) -> Option<Scalar> {
        if let Some((p, q)) = text.split_once('/') {
            if self == Domain::Int {
                return None;
            }
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        } else {
            text.parse::<BigInt>().ok().map(lift)
        }
    }
}
