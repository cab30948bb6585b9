//! Finite-precision scalars with zealous (interval-style) precision tracking.
//!
//! A scalar is one of
//!   * exactly zero,
//!   * zero at precision `N` (the class `0 + O(eta^N)`),
//!   * an exact nonzero value (infinite precision),
//!   * `eta^v * unit + O(eta^N)` with `v < N` and the unit's digits known.
//!
//! All valuations and precisions are in fine units (multiples of `1/D`, see
//! [`crate::field::Field`]). The representation keeps the valuation first
//! class: whenever a leading digit is known to vanish the valuation lower
//! bound moves up, which is what the precision rules of the multiplication
//! engines rely on.

mod digits;
mod exact;

pub use digits::inv_mod_p;
pub use exact::ExactScalar;

use crate::error::{Error, Result};
use crate::field::Field;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero as _;
use std::fmt;

/// An absolute precision: finite (in fine units) or infinite (exact).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prec {
    Finite(i64),
    Inf,
}

impl Prec {
    pub fn add_fine(self, k: i64) -> Prec {
        match self {
            Prec::Finite(n) => Prec::Finite(n + k),
            Prec::Inf => Prec::Inf,
        }
    }

    pub fn plus(self, other: Prec) -> Prec {
        match (self, other) {
            (Prec::Finite(a), Prec::Finite(b)) => Prec::Finite(a + b),
            _ => Prec::Inf,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Prec::Finite(n) => Some(n),
            Prec::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Prec::Inf)
    }
}

/// Approximate nonzero scalar: `eta^val * (sum digits[k] eta^k) + O(eta^prec)`
/// with `digits[0] != 0` and `digits.len() == prec - val`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxScalar {
    pub val: i64,
    pub digits: Vec<u64>,
    pub prec: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    /// `0 + O(eta^N)`; `Zero(Prec::Inf)` is exactly zero.
    Zero(Prec),
    Exact(ExactScalar),
    Approx(ApproxScalar),
}

impl Scalar {
    pub fn exact_zero() -> Scalar {
        Scalar::Zero(Prec::Inf)
    }

    pub fn zero_at(fine: i64) -> Scalar {
        Scalar::Zero(Prec::Finite(fine))
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Scalar::Zero(Prec::Inf))
    }

    /// True when no nonzero digit is known.
    pub fn is_zero_class(&self) -> bool {
        matches!(self, Scalar::Zero(_))
    }

    /// Absolute precision.
    pub fn prec(&self) -> Prec {
        match self {
            Scalar::Zero(n) => *n,
            Scalar::Exact(_) => Prec::Inf,
            Scalar::Approx(a) => Prec::Finite(a.prec),
        }
    }

    /// Certified valuation, when the scalar is known nonzero.
    pub fn certified_val(&self) -> Option<i64> {
        match self {
            Scalar::Zero(_) => None,
            Scalar::Exact(e) => Some(e.val),
            Scalar::Approx(a) => Some(a.val),
        }
    }

    /// Valuation lower bound; for a zero class this is its precision.
    pub fn val_bound(&self) -> Prec {
        match self {
            Scalar::Zero(n) => *n,
            Scalar::Exact(e) => Prec::Finite(e.val),
            Scalar::Approx(a) => Prec::Finite(a.val),
        }
    }
}

fn normalized(base_val: i64, mut digs: Vec<u64>, prec: i64) -> Scalar {
    let lead = digs.iter().position(|&d| d != 0);
    match lead {
        None => Scalar::zero_at(prec),
        Some(k) => {
            digs.drain(..k);
            let val = base_val + k as i64;
            digs.truncate((prec - val) as usize);
            Scalar::Approx(ApproxScalar { val, digits: digs, prec })
        }
    }
}

/// Digit vector of a scalar relative to `base_val`, with `rel_len` digits.
/// Caller guarantees `base_val <= val` and precision covers the window.
fn window(field: &Field, s: &Scalar, base_val: i64, rel_len: usize) -> Vec<u64> {
    let mut out = vec![0u64; rel_len];
    match s {
        Scalar::Zero(_) => {}
        Scalar::Exact(e) => {
            let off = (e.val - base_val) as usize;
            if off < rel_len {
                let d = exact::unit_digits(field, e, rel_len - off);
                out[off..].copy_from_slice(&d);
            }
        }
        Scalar::Approx(a) => {
            let off = (a.val - base_val) as usize;
            for (k, &dg) in a.digits.iter().enumerate() {
                if off + k >= rel_len {
                    break;
                }
                out[off + k] = dg;
            }
        }
    }
    out
}

impl Field {
    pub fn one(&self) -> Scalar {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> Scalar {
        self.from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn from_rational(&self, r: &BigRational) -> Scalar {
        match exact::from_rational(self, r) {
            None => Scalar::exact_zero(),
            Some(e) => Scalar::Exact(e),
        }
    }

    /// Multiplication by `eta^k`.
    pub fn shift(&self, s: &Scalar, k: i64) -> Scalar {
        match s {
            Scalar::Zero(n) => Scalar::Zero(n.add_fine(k)),
            Scalar::Exact(e) => Scalar::Exact(ExactScalar { val: e.val + k, unit: e.unit.clone() }),
            Scalar::Approx(a) => Scalar::Approx(ApproxScalar {
                val: a.val + k,
                digits: a.digits.clone(),
                prec: a.prec + k,
            }),
        }
    }

    /// Caps the absolute precision at `n` fine units.
    pub fn truncate(&self, s: &Scalar, n: i64) -> Scalar {
        match s {
            Scalar::Zero(m) => Scalar::Zero((*m).min(Prec::Finite(n))),
            Scalar::Exact(e) => {
                if n <= e.val {
                    Scalar::zero_at(n)
                } else {
                    let rel = (n - e.val) as usize;
                    let digs = exact::unit_digits(self, e, rel);
                    normalized(e.val, digs, n)
                }
            }
            Scalar::Approx(a) => {
                if n >= a.prec {
                    s.clone()
                } else if n <= a.val {
                    Scalar::zero_at(n)
                } else {
                    let mut digs = a.digits.clone();
                    digs.truncate((n - a.val) as usize);
                    normalized(a.val, digs, n)
                }
            }
        }
    }

    pub fn truncate_prec(&self, s: &Scalar, n: Prec) -> Scalar {
        match n {
            Prec::Inf => s.clone(),
            Prec::Finite(k) => self.truncate(s, k),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Zero(Prec::Inf), _) => b.clone(),
            (_, Scalar::Zero(Prec::Inf)) => a.clone(),
            (Scalar::Zero(Prec::Finite(n)), _) => self.truncate(b, *n),
            (_, Scalar::Zero(Prec::Finite(n))) => self.truncate(a, *n),
            (Scalar::Exact(x), Scalar::Exact(y)) => match exact::add(self, x, y) {
                None => Scalar::exact_zero(),
                Some(e) => Scalar::Exact(e),
            },
            _ => {
                let n = a.prec().min(b.prec()).finite().expect("one side is approximate");
                let va = a.certified_val().unwrap();
                let vb = b.certified_val().unwrap();
                let v = va.min(vb);
                if v >= n {
                    return Scalar::zero_at(n);
                }
                let rel = (n - v) as usize;
                let da = window(self, a, v, rel);
                let db = window(self, b, v, rel);
                normalized(v, digits::add(self, &da, &db, rel), n)
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Zero(_) => a.clone(),
            Scalar::Exact(e) => Scalar::Exact(exact::neg(self, e)),
            Scalar::Approx(x) => {
                let digs = digits::neg(self, &x.digits, x.digits.len());
                normalized(x.val, digs, x.prec)
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_exact_zero() || b.is_exact_zero() {
            return Scalar::exact_zero();
        }
        if a.is_zero_class() || b.is_zero_class() {
            let prec = (a.prec().plus(b.val_bound()))
                .min(b.prec().plus(a.val_bound()))
                .min(a.prec().plus(b.prec()));
            return match prec {
                Prec::Inf => Scalar::exact_zero(),
                Prec::Finite(n) => Scalar::zero_at(n),
            };
        }
        match (a, b) {
            (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(exact::mul(self, x, y)),
            _ => {
                let va = a.certified_val().unwrap();
                let vb = b.certified_val().unwrap();
                let n = (a.prec().add_fine(vb)).min(b.prec().add_fine(va));
                let n = n.finite().expect("one side is approximate");
                let v = va + vb;
                let rel = (n - v) as usize;
                let da = window(self, a, va, rel);
                let db = window(self, b, vb, rel);
                normalized(v, digits::mul(self, &da, &db, rel), n)
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        match a {
            Scalar::Zero(_) => Err(Error::ZeroDivision),
            Scalar::Exact(e) => Ok(Scalar::Exact(exact::inv(self, e)?)),
            Scalar::Approx(x) => {
                let rel = x.digits.len();
                let digs = digits::inv(self, &x.digits, rel);
                Ok(normalized(-x.val, digs, -x.val + rel as i64))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Image in the residue field `F_p`. Requires valuation >= 0 and absolute
    /// precision at least one `pi`-digit.
    pub fn residue(&self, a: &Scalar) -> Result<u64> {
        let needs = self.fine_per_pi();
        match a {
            Scalar::Zero(n) => {
                if *n >= Prec::Finite(needs) {
                    Ok(0)
                } else {
                    Err(Error::InsufficientPrecision("residue of a zero class".into()))
                }
            }
            Scalar::Exact(e) => {
                if e.val < 0 {
                    Err(Error::NegativeValuation)
                } else if e.val > 0 {
                    Ok(0)
                } else {
                    Ok(exact::residue(self, e))
                }
            }
            Scalar::Approx(x) => {
                if x.val < 0 {
                    Err(Error::NegativeValuation)
                } else if x.prec < needs {
                    Err(Error::InsufficientPrecision("residue needs one pi-digit".into()))
                } else if x.val > 0 {
                    Ok(0)
                } else {
                    Ok(x.digits[0])
                }
            }
        }
    }

    /// Residue of the digit at position zero (modulo `eta` rather than `pi`);
    /// needs valuation >= 0 and one fine digit of precision.
    pub fn fine_residue(&self, s: &Scalar) -> Result<u64> {
        match s {
            Scalar::Zero(n) => {
                if *n >= Prec::Finite(1) {
                    Ok(0)
                } else {
                    Err(Error::InsufficientPrecision("residue of a zero class".into()))
                }
            }
            Scalar::Exact(e) => match e.val.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::NegativeValuation),
                std::cmp::Ordering::Greater => Ok(0),
                std::cmp::Ordering::Equal => Ok(exact::residue(self, e)),
            },
            Scalar::Approx(a) => match a.val.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::NegativeValuation),
                std::cmp::Ordering::Greater => Ok(0),
                std::cmp::Ordering::Equal => Ok(a.digits[0]),
            },
        }
    }

    /// Splits `s = rem + eta^v * q` where `rem` carries exactly the digits of
    /// `s` at positions below `v`. The remainder is an exact value (known
    /// digits are exact knowledge); `q` keeps the precision of `s`.
    pub fn split_at(&self, s: &Scalar, v: i64) -> (Scalar, Scalar) {
        match s {
            Scalar::Zero(Prec::Inf) => (Scalar::exact_zero(), Scalar::exact_zero()),
            Scalar::Zero(Prec::Finite(n)) => {
                let rem =
                    if *n >= v { Scalar::exact_zero() } else { Scalar::zero_at(*n) };
                (rem, Scalar::zero_at(n - v))
            }
            Scalar::Exact(e) if e.val >= v => (Scalar::exact_zero(), self.shift(s, -v)),
            _ => {
                let val = s.certified_val().unwrap();
                // only digits that are actually known populate the remainder
                let cut = match s.prec() {
                    Prec::Inf => v,
                    Prec::Finite(n) => v.min(n),
                };
                let low_len = (cut - val).max(0) as usize;
                let digs = window(self, s, val, low_len);
                let terms: Vec<(i64, BigRational)> = digs
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d != 0)
                    .map(|(k, &d)| (val + k as i64, BigRational::from_integer(d.into())))
                    .collect();
                let rem = match exact::normalize(self, 0, terms) {
                    None => Scalar::exact_zero(),
                    Some(e) => Scalar::Exact(e),
                };
                let q = self.shift(&self.sub(s, &rem), -v);
                (rem, q)
            }
        }
    }

    /// True when `a` and `b` are certified equal modulo `eta^n`: their
    /// difference has valuation at least `n` (a certified value above the
    /// modulus also qualifies).
    pub fn agree_at(&self, a: &Scalar, b: &Scalar, n: i64) -> bool {
        self.sub(a, b).val_bound() >= Prec::Finite(n)
    }

    /// Renders a scalar as text, e.g. `5*2^-1 + O(2^4)`.
    pub fn format_scalar(&self, s: &Scalar) -> String {
        let pi = self.pi_symbol();
        let pow = |fine: i64| -> String {
            let e = self.show_fine(fine);
            if e.contains('/') || e.starts_with('-') {
                format!("{pi}^({e})")
            } else {
                format!("{pi}^{e}")
            }
        };
        match s {
            Scalar::Zero(Prec::Inf) => "0".to_string(),
            Scalar::Zero(Prec::Finite(n)) => format!("O({})", pow(*n)),
            Scalar::Approx(a) => {
                let p = BigUint::from(self.p());
                let mut lift = BigUint::zero();
                for &d in a.digits.iter().rev() {
                    lift = lift * &p + BigUint::from(d);
                }
                let head = if a.val == 0 {
                    format!("{lift}")
                } else {
                    format!("{lift}*{}", pow(a.val))
                };
                format!("{head} + O({})", pow(a.prec))
            }
            Scalar::Exact(e) => {
                let terms: Vec<String> = e
                    .unit
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| if j == 0 { format!("{c}") } else { format!("{c}*{}", pow(j as i64)) })
                    .collect();
                let unit = if terms.len() == 1 {
                    terms[0].clone()
                } else {
                    format!("({})", terms.join(" + "))
                };
                if e.val == 0 {
                    unit
                } else {
                    format!("{unit}*{}", pow(e.val))
                }
            }
        }
    }
}

/// Display adapter pairing a scalar with its field.
pub struct ScalarDisplay<'a>(pub &'a Field, pub &'a Scalar);

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.format_scalar(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_basics() {
        let f = Field::padic(2).unwrap();
        // (3 + O(2^5)) + (1 + O(2^5)) = 4 + O(2^5)
        let a = f.truncate(&f.from_u64(3), 5);
        let b = f.truncate(&f.from_u64(1), 5);
        let s = f.add(&a, &b);
        assert_eq!(f.format_scalar(&s), "1*2^2 + O(2^5)");
        assert!(f.agree_at(&s, &f.from_u64(4), 5));
        // a + exact zero = a
        assert_eq!(f.add(&a, &Scalar::exact_zero()), a);
        // (1 + O(2^3)) + (-1 + O(2^7)) = O(2^3), not exactly zero
        let one = f.truncate(&f.from_u64(1), 3);
        let mone = f.truncate(&f.from_i64(-1), 7);
        let z = f.add(&one, &mone);
        assert_eq!(z, Scalar::zero_at(3));
        assert!(!z.is_exact_zero());
    }

    #[test]
    fn mul_basics() {
        let f = Field::padic(2).unwrap();
        // (2 + O(2^4)) * (4 + O(2^3)) = 8 + O(2^4)
        let a = f.truncate(&f.from_u64(2), 4);
        let b = f.truncate(&f.from_u64(4), 3);
        let m = f.mul(&a, &b);
        assert_eq!(m.certified_val(), Some(3));
        assert_eq!(m.prec(), Prec::Finite(4));
        // a * exact 1 = a
        assert_eq!(f.mul(&a, &f.one()), a);
        // (0 + O(2^3)) * (2 + O(2^9)) = 0 + O(2^4)
        let z = f.mul(&Scalar::zero_at(3), &f.truncate(&f.from_u64(2), 9));
        assert_eq!(z, Scalar::zero_at(4));
    }

    #[test]
    fn inv_basics() {
        let f = Field::padic(2).unwrap();
        // inv(2 + O(2^4)): val -1, abs prec 2
        let a = f.truncate(&f.from_u64(2), 4);
        let i = f.inv(&a).unwrap();
        assert_eq!(i.certified_val(), Some(-1));
        assert_eq!(i.prec(), Prec::Finite(2));
        assert!(f.agree_at(&f.mul(&a, &i), &f.one(), 2));
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert_eq!(f.inv(&Scalar::zero_at(5)), Err(Error::ZeroDivision));
        assert_eq!(f.inv(&Scalar::exact_zero()), Err(Error::ZeroDivision));
    }

    #[test]
    fn residue_basics() {
        let f = Field::padic(2).unwrap();
        assert_eq!(f.residue(&f.truncate(&f.from_u64(3), 5)).unwrap(), 1);
        assert_eq!(f.residue(&f.truncate(&f.from_u64(2), 5)).unwrap(), 0);
        assert_eq!(f.residue(&f.from_rational(&rat(1, 2))), Err(Error::NegativeValuation));
        assert_eq!(f.residue(&Scalar::exact_zero()).unwrap(), 0);
        assert!(f.residue(&Scalar::zero_at(0)).is_err());
    }

    #[test]
    fn exact_zero_detection_on_cancellation() {
        let f = Field::padic(5).unwrap();
        let a = f.from_rational(&rat(7, 3));
        let d = f.sub(&a, &a);
        assert!(d.is_exact_zero());
    }

    fn random_rational(rng: &mut ChaCha8Rng, p: u64) -> BigRational {
        let n = rng.gen_range(-50i64..50);
        let mut d = rng.gen_range(1i64..30);
        while d as u64 % p == 0 {
            d += 1;
        }
        rat(n, d)
    }

    /// Precision soundness: every arithmetic result's class contains the
    /// exact rational result.
    #[test]
    fn precision_soundness_against_exact_oracle() {
        for field in [
            Field::padic(2).unwrap(),
            Field::padic(3).unwrap(),
            Field::new(FieldKind::PAdic, 2, 2).unwrap(),
            Field::laurent(2).unwrap(),
            Field::laurent(7).unwrap(),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..200 {
                let x = random_rational(&mut rng, field.p());
                let y = random_rational(&mut rng, field.p());
                let nx = rng.gen_range(3i64..10) * field.fine_per_pi();
                let ny = rng.gen_range(3i64..10) * field.fine_per_pi();
                let ax = field.truncate(&field.from_rational(&x), nx);
                let ay = field.truncate(&field.from_rational(&y), ny);

                let sum = field.add(&ax, &ay);
                let exact_sum = field.from_rational(&(&x + &y));
                if let Some(n) = sum.prec().finite() {
                    assert!(field.agree_at(&sum, &field.truncate(&exact_sum, n), n));
                }
                let prod = field.mul(&ax, &ay);
                let exact_prod = field.from_rational(&(&x * &y));
                if let Some(n) = prod.prec().finite() {
                    assert!(field.agree_at(&prod, &field.truncate(&exact_prod, n), n));
                }
            }
        }
    }

    /// Ring laws on value classes with exact inputs.
    #[test]
    fn ring_laws_exact() {
        let f = Field::padic(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let (a, b, c) = (
                f.from_rational(&random_rational(&mut rng, 3)),
                f.from_rational(&random_rational(&mut rng, 3)),
                f.from_rational(&random_rational(&mut rng, 3)),
            );
            let lhs = f.add(&f.add(&a, &b), &c);
            let rhs = f.add(&a, &f.add(&b, &c));
            assert!(f.sub(&lhs, &rhs).is_exact_zero());
            let dl = f.mul(&a, &f.add(&b, &c));
            let dr = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
            assert!(f.sub(&dl, &dr).is_exact_zero());
        }
    }

    /// val(a*b) = val(a) + val(b) and a * inv(a) contains 1.
    #[test]
    fn multiplicativity_and_inverse() {
        let f = Field::new(FieldKind::PAdic, 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let x = random_rational(&mut rng, 3);
            let y = random_rational(&mut rng, 3);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let shift = rng.gen_range(-3i64..4);
            let ax = f.truncate(&f.shift(&f.from_rational(&x), shift), 20);
            let ay = f.truncate(&f.from_rational(&y), 18);
            let prod = f.mul(&ax, &ay);
            assert_eq!(
                prod.certified_val().unwrap(),
                ax.certified_val().unwrap() + ay.certified_val().unwrap()
            );
            let i = f.inv(&ax).unwrap();
            let unit = f.mul(&ax, &i);
            if let Some(n) = unit.prec().finite() {
                assert!(f.agree_at(&unit, &f.one(), n));
            }
        }
    }

    #[test]
    fn rendering() {
        let f = Field::padic(2).unwrap();
        let a = f.truncate(&f.from_u64(12), 6);
        assert_eq!(f.format_scalar(&a), "3*2^2 + O(2^6)");
        assert_eq!(f.format_scalar(&f.from_rational(&rat(3, 5))), "3/5");
        assert_eq!(f.format_scalar(&Scalar::exact_zero()), "0");
        let g = Field::new(FieldKind::PAdic, 2, 2).unwrap();
        assert_eq!(g.format_scalar(&Scalar::zero_at(3)), "O(2^(3/2))");
        let l = Field::laurent(5).unwrap();
        let b = l.truncate(&l.shift(&l.from_u64(3), 2), 4);
        assert_eq!(l.format_scalar(&b), "3*T^2 + O(T^4)");
    }

    #[test]
    fn split_at_digits() {
        let f = Field::padic(2).unwrap();
        // 11 = 1 + 2 + 8: split at 2: rem = 3, q = 2
        let a = f.from_u64(11);
        let (rem, q) = f.split_at(&a, 2);
        assert!(f.sub(&rem, &f.from_u64(3)).is_exact_zero());
        assert!(f.sub(&q, &f.from_u64(2)).is_exact_zero());
        // approximate value keeps precision on q
        let b = f.truncate(&f.from_u64(11), 4);
        let (rem, q) = f.split_at(&b, 2);
        assert!(f.sub(&rem, &f.from_u64(3)).is_exact_zero());
        assert_eq!(q.prec(), Prec::Finite(2));
        assert!(f.agree_at(&q, &f.from_u64(2), 2));
        // recombination
        let back = f.add(&rem, &f.shift(&q, 2));
        assert!(f.agree_at(&back, &b, 4));
        let (rem, q) = f.split_at(&Scalar::zero_at(5), 2);
        assert!(rem.is_exact_zero());
        assert_eq!(q, Scalar::zero_at(3));
    }

    #[test]
    fn truncate_and_shift() {
        let f = Field::padic(2).unwrap();
        let a = f.from_u64(6); // val 1
        assert_eq!(f.truncate(&a, 1), Scalar::zero_at(1));
        let t = f.truncate(&a, 2);
        assert_eq!(t.certified_val(), Some(1));
        let s = f.shift(&t, 3);
        assert_eq!(s.certified_val(), Some(4));
        assert_eq!(s.prec(), Prec::Finite(5));
    }
}
