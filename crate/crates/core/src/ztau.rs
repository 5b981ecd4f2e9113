//! Exact arithmetic in the ring Z[tau], tau = (sqrt(5) - 1) / 2.
//!
//! An element is stored as the coefficient pair `(a, b)` of `a + b*tau`.
//! Multiplication reduces with `tau^2 = 1 - tau`. Every operation is checked:
//! the `checked_*` methods report [`Error::Overflow`] and the operator impls
//! panic instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::parse::Cursor;

/// `a + b*tau` with 64-bit integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ZTau {
    pub a: i64,
    pub b: i64,
}

impl ZTau {
    pub const ZERO: ZTau = ZTau { a: 0, b: 0 };
    pub const ONE: ZTau = ZTau { a: 1, b: 0 };
    pub const TAU: ZTau = ZTau { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        ZTau { a, b }
    }

    pub fn checked_add(self, rhs: ZTau) -> Result<ZTau> {
        Ok(ZTau {
            a: self.a.checked_add(rhs.a).ok_or(Error::Overflow)?,
            b: self.b.checked_add(rhs.b).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_sub(self, rhs: ZTau) -> Result<ZTau> {
        Ok(ZTau {
            a: self.a.checked_sub(rhs.a).ok_or(Error::Overflow)?,
            b: self.b.checked_sub(rhs.b).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_neg(self) -> Result<ZTau> {
        Ok(ZTau {
            a: self.a.checked_neg().ok_or(Error::Overflow)?,
            b: self.b.checked_neg().ok_or(Error::Overflow)?,
        })
    }

    /// `(a1 + b1 t)(a2 + b2 t) = (a1 a2 + b1 b2) + (a1 b2 + a2 b1 - b1 b2) t`.
    pub fn checked_mul(self, rhs: ZTau) -> Result<ZTau> {
        let (a1, b1, a2, b2) = (self.a as i128, self.b as i128, rhs.a as i128, rhs.b as i128);
        let a = a1 * a2 + b1 * b2;
        let b = a1 * b2 + a2 * b1 - b1 * b2;
        Ok(ZTau {
            a: i64::try_from(a).map_err(|_| Error::Overflow)?,
            b: i64::try_from(b).map_err(|_| Error::Overflow)?,
        })
    }

    /// `tau^k` for any integer `k`; negative powers use `tau^-1 = 1 + tau`.
    pub fn tau_pow(k: i64) -> Result<ZTau> {
        let base = if k >= 0 { ZTau::TAU } else { ZTau::new(1, 1) };
        let mut acc = ZTau::ONE;
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(sq)?;
            }
        }
        Ok(acc)
    }

    /// Exact sign of `a + b*tau`.
    ///
    /// `2(a + b tau) = (2a - b) + b sqrt5`, so the sign is that of `p + q sqrt5`
    /// with `p = 2a - b`, `q = b`; when `p` and `q` disagree we compare `p^2`
    /// against `5 q^2`.
    pub fn signum(self) -> Ordering {
        self.cmp_exact(ZTau::ZERO)
    }

    pub fn is_zero(self) -> bool {
        self == ZTau::ZERO
    }

    /// Floating approximation, for diagnostics and tests only.
    pub fn to_f64(self) -> f64 {
        let tau = (5f64.sqrt() - 1.0) / 2.0;
        self.a as f64 + self.b as f64 * tau
    }

    /// Sign of `self - other`, in i128 so the difference cannot overflow.
    fn cmp_exact(self, other: ZTau) -> Ordering {
        let p = 2 * (self.a as i128 - other.a as i128) - (self.b as i128 - other.b as i128);
        let q = self.b as i128 - other.b as i128;
        match (p.cmp(&0), q.cmp(&0)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (sp, sq) if sp == sq => sp,
            // |p| against |q| sqrt5: the larger magnitude decides.
            (sp, _) => match (p * p).cmp(&(5 * q * q)) {
                Ordering::Greater => sp,
                Ordering::Less => sp.reverse(),
                Ordering::Equal => unreachable!("sqrt5 is irrational"),
            },
        }
    }
}

impl PartialOrd for ZTau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on the real line.
impl Ord for ZTau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(*other)
    }
}

impl Add for ZTau {
    type Output = ZTau;
    fn add(self, rhs: ZTau) -> ZTau {
        self.checked_add(rhs).expect("Z[tau] addition overflow")
    }
}

impl Sub for ZTau {
    type Output = ZTau;
    fn sub(self, rhs: ZTau) -> ZTau {
        self.checked_sub(rhs).expect("Z[tau] subtraction overflow")
    }
}

impl Mul for ZTau {
    type Output = ZTau;
    fn mul(self, rhs: ZTau) -> ZTau {
        self.checked_mul(rhs)
            .expect("Z[tau] multiplication overflow")
    }
}

impl Neg for ZTau {
    type Output = ZTau;
    fn neg(self) -> ZTau {
        self.checked_neg().expect("Z[tau] negation overflow")
    }
}

impl From<i64> for ZTau {
    fn from(a: i64) -> Self {
        ZTau::new(a, 0)
    }
}

/// Prints the literal form `a,b`.
impl fmt::Display for ZTau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl ZTau {
    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> std::result::Result<ZTau, ParseError> {
        cur.skip_ws();
        let paren = cur.eat('(');
        cur.skip_ws();
        let a = cur.signed_i64()?;
        cur.skip_ws();
        cur.expect(',')?;
        cur.skip_ws();
        let b = cur.signed_i64()?;
        cur.skip_ws();
        if paren {
            cur.expect(')')?;
        }
        Ok(ZTau::new(a, b))
    }
}

/// Parses `INT,INT`, optionally wrapped in parentheses.
impl FromStr for ZTau {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let z = ZTau::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(z)
    }
}
