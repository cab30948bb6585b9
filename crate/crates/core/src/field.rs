//! Base field descriptors.
//!
//! Supported base fields are `Q_p` (p-adic numbers) and `F_p((T))` (Laurent
//! series over the prime field). Both are complete discretely valued with
//! residue field `F_p`; scalars never expose which one is in play beyond the
//! descriptor itself.
//!
//! Valuations are stored as integers in *fine* units: a valuation `v` is the
//! rational `v / D` where `D` is the ramification denominator of the field.
//! `D = 1` unless fractional log-radii are in play; `D > 1` corresponds to
//! adjoining a formal `D`-th root of the uniformizer, and all values are
//! expansions in that root.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    /// `Q_p`, carries between digit positions.
    PAdic,
    /// `F_p((T))`, no carries.
    Laurent,
}

/// A complete discretely valued base field together with the global
/// ramification denominator `D` for fractional valuations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    kind: FieldKind,
    p: u64,
    ram: u32,
}

impl Field {
    pub fn new(kind: FieldKind, p: u64, ram: u32) -> Result<Field> {
        if p >= (1 << 62) {
            return Err(Error::Invalid(format!("prime {p} is >= 2^62")));
        }
        if !is_prime_u64(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if ram == 0 {
            return Err(Error::Invalid("ramification denominator must be >= 1".into()));
        }
        Ok(Field { kind, p, ram })
    }

    pub fn padic(p: u64) -> Result<Field> {
        Field::new(FieldKind::PAdic, p, 1)
    }

    pub fn laurent(p: u64) -> Result<Field> {
        Field::new(FieldKind::Laurent, p, 1)
    }

    /// Same field, different ramification denominator.
    pub fn with_ram(&self, ram: u32) -> Result<Field> {
        Field::new(self.kind, self.p, ram)
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The ramification denominator `D`; valuations live in `(1/D)Z`.
    pub fn ram(&self) -> u32 {
        self.ram
    }

    /// Fine valuation of the uniformizer of `K` (`pi = eta^D`).
    pub fn fine_per_pi(&self) -> i64 {
        self.ram as i64
    }

    /// Converts a count of `pi`-digits to fine units.
    pub fn fine(&self, pi_units: i64) -> i64 {
        pi_units * self.ram as i64
    }

    /// Floor of a fine valuation to a whole multiple of `D` (floor in
    /// `pi`-units, expressed back in fine units).
    pub fn fine_floor(&self, fine: i64) -> i64 {
        let d = self.ram as i64;
        fine.div_euclid(d) * d
    }

    /// Renders a fine valuation as a rational string, e.g. `3`, `-1/2`.
    pub fn show_fine(&self, fine: i64) -> String {
        let d = self.ram as i64;
        if fine % d == 0 {
            format!("{}", fine / d)
        } else {
            let g = gcd_i64(fine.abs(), d);
            format!("{}/{}", fine / g, d / g)
        }
    }

    /// Symbol used for the uniformizer when rendering scalars.
    pub fn pi_symbol(&self) -> String {
        match self.kind {
            FieldKind::PAdic => format!("{}", self.p),
            FieldKind::Laurent => "T".to_string(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::PAdic => write!(f, "Q_{}", self.p)?,
            FieldKind::Laurent => write!(f, "F_{}((T))", self.p)?,
        }
        if self.ram != 1 {
            write!(f, "[pi^(1/{})]", self.ram)?;
        }
        Ok(())
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64 (the chosen bases cover the range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
