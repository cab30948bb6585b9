//! Exact (infinite-precision) scalars.
//!
//! An exact nonzero value is `eta^val * unit` where the unit is a polynomial
//! in `eta` (`eta^D = pi`). Over `Q_p` the unit is reduced modulo
//! `eta^D - p` and has rational coefficients with `unit[0]` a p-adic unit;
//! over `F_p((T))` the coefficients are residues and the polynomial may have
//! any length. Both are closed under ring operations; inversion is exact over
//! `Q_p` (extended Euclid modulo `eta^D - p`) and over `F_p((T))` only for
//! single-term units, since the inverse of a multi-term unit has infinite
//! support.

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactScalar {
    /// Fine valuation.
    pub val: i64,
    /// Unit polynomial in `eta`; `unit[0]` is nonzero of valuation zero.
    pub unit: Vec<BigRational>,
}

fn p_big(field: &Field) -> BigInt {
    BigInt::from(field.p())
}

fn p_pow_rational(field: &Field, k: i64) -> BigRational {
    let p = p_big(field);
    if k >= 0 {
        BigRational::from_integer(p.pow(k as u32))
    } else {
        BigRational::new(BigInt::one(), p.pow((-k) as u32))
    }
}

/// p-adic valuation of a nonzero rational.
fn valp(field: &Field, r: &BigRational) -> i64 {
    let p = p_big(field);
    let count = |mut x: BigInt| -> i64 {
        let mut c = 0;
        while !x.is_zero() {
            let (q, rem) = x.div_rem(&p);
            if !rem.is_zero() {
                break;
            }
            x = q;
            c += 1;
        }
        c
    };
    count(r.numer().clone()) - count(r.denom().clone())
}

fn residue_of_rational(field: &Field, r: &BigRational) -> u64 {
    let p = p_big(field);
    let a = r.numer().mod_floor(&p);
    let b = r.denom().mod_floor(&p);
    let a = a.to_biguint().unwrap().iter_u64_digits().next().unwrap_or(0);
    let b = b.to_biguint().unwrap().iter_u64_digits().next().unwrap_or(0);
    assert!(b != 0, "denominator not coprime to p");
    (a as u128 * super::digits::inv_mod_p(b, field.p()) as u128 % field.p() as u128) as u64
}

/// Rational with p-unit denominator, reduced modulo `p^m`, as a nonnegative
/// integer.
fn rational_mod_pk(field: &Field, r: &BigRational, m: u32) -> BigUint {
    if m == 0 {
        return BigUint::zero();
    }
    let pk = p_big(field).pow(m);
    let a = r.numer().mod_floor(&pk);
    let b = r.denom().mod_floor(&pk);
    let eg = b.extended_gcd(&pk);
    assert!(eg.gcd.is_one(), "denominator not coprime to p");
    let binv = eg.x.mod_floor(&pk);
    (a * binv).mod_floor(&pk).to_biguint().unwrap()
}

/// Collects `(position, coefficient)` terms into the canonical unit shape for
/// the field kind, relative to `base_val`. Returns `None` if everything is
/// zero.
pub fn normalize(
    field: &Field,
    base_val: i64,
    terms: Vec<(i64, BigRational)>,
) -> Option<ExactScalar> {
    match field.kind() {
        FieldKind::PAdic => {
            let d = field.ram() as i64;
            let fold = |terms: Vec<(i64, BigRational)>| -> Vec<BigRational> {
                let mut out = vec![BigRational::zero(); d as usize];
                for (pos, c) in terms {
                    if c.is_zero() {
                        continue;
                    }
                    let class = pos.rem_euclid(d);
                    let carry = (pos - class) / d;
                    out[class as usize] += c * p_pow_rational(field, carry);
                }
                out
            };
            let folded = fold(terms);
            let mut min_fine: Option<i64> = None;
            for (j, c) in folded.iter().enumerate() {
                if !c.is_zero() {
                    let fine = d * valp(field, c) + j as i64;
                    min_fine = Some(min_fine.map_or(fine, |m| m.min(fine)));
                }
            }
            let m = min_fine?;
            let unit = fold(
                folded
                    .into_iter()
                    .enumerate()
                    .map(|(j, c)| (j as i64 - m, c))
                    .collect(),
            );
            Some(ExactScalar { val: base_val + m, unit })
        }
        FieldKind::Laurent => {
            let mut map = std::collections::BTreeMap::<i64, u64>::new();
            let p = field.p();
            for (pos, c) in terms {
                if c.is_zero() {
                    continue;
                }
                let r = residue_of_rational(field, &c);
                let e = map.entry(pos).or_insert(0);
                *e = (*e + r) % p;
            }
            map.retain(|_, v| *v != 0);
            let first = *map.keys().next()?;
            let last = *map.keys().last().unwrap();
            let mut unit = vec![BigRational::zero(); (last - first + 1) as usize];
            for (pos, v) in map {
                unit[(pos - first) as usize] = BigRational::from_integer(BigInt::from(v));
            }
            Some(ExactScalar { val: base_val + first, unit })
        }
    }
}

fn terms_of(e: &ExactScalar, shift: i64) -> Vec<(i64, BigRational)> {
    e.unit
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j as i64 + shift, c.clone()))
        .collect()
}

pub fn add(field: &Field, a: &ExactScalar, b: &ExactScalar) -> Option<ExactScalar> {
    let v = a.val.min(b.val);
    let mut terms = terms_of(a, a.val - v);
    terms.extend(terms_of(b, b.val - v));
    normalize(field, v, terms)
}

pub fn neg(field: &Field, a: &ExactScalar) -> ExactScalar {
    let terms = a.unit.iter().enumerate().map(|(j, c)| (j as i64, -c.clone())).collect();
    normalize(field, a.val, terms).expect("negation of a unit is a unit")
}

pub fn mul(field: &Field, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    let mut terms = Vec::new();
    for (i, x) in a.unit.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.unit.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            terms.push(((i + j) as i64, x * y));
        }
    }
    normalize(field, a.val + b.val, terms).expect("product of units is a unit")
}

pub fn inv(field: &Field, a: &ExactScalar) -> Result<ExactScalar> {
    match field.kind() {
        FieldKind::Laurent => {
            let nonzero: Vec<usize> =
                (0..a.unit.len()).filter(|&j| !a.unit[j].is_zero()).collect();
            if nonzero.len() != 1 {
                return Err(Error::ExactInversion);
            }
            let j = nonzero[0];
            debug_assert_eq!(j, 0, "canonical unit starts at position 0");
            let r = residue_of_rational(field, &a.unit[0]);
            let inv = super::digits::inv_mod_p(r, field.p());
            Ok(ExactScalar {
                val: -a.val,
                unit: vec![BigRational::from_integer(BigInt::from(inv))],
            })
        }
        FieldKind::PAdic => {
            if field.ram() == 1 {
                return Ok(ExactScalar { val: -a.val, unit: vec![a.unit[0].recip()] });
            }
            // extended Euclid in Q[x] modulo x^D - p
            let d = field.ram() as usize;
            let mut modulus = vec![BigRational::zero(); d + 1];
            modulus[0] = -BigRational::from_integer(p_big(field));
            modulus[d] = BigRational::one();
            let s = poly_mod_inverse(&a.unit, &modulus)
                .expect("unit invertible modulo irreducible x^D - p");
            let terms =
                s.into_iter().enumerate().map(|(j, c)| (j as i64, c)).collect();
            Ok(normalize(field, -a.val, terms).expect("inverse of a unit is a unit"))
        }
    }
}

fn poly_trim(a: &mut Vec<BigRational>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn poly_divrem(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / &lead;
        for k in 0..=db {
            let t = &c * &b[k];
            r[dr - db + k] -= t;
        }
        q[dr - db] = c;
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), BigRational::zero());
    for (k, y) in b.iter().enumerate() {
        out[k] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` in Q[x], when `gcd(a, m)` is a nonzero constant.
fn poly_mod_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let g = r0[0].clone();
    Some(s0.into_iter().map(|c| c / &g).collect())
}

/// Digit expansion of the unit, to `rel_len` fine digits.
pub fn unit_digits(field: &Field, e: &ExactScalar, rel_len: usize) -> Vec<u64> {
    let mut out = vec![0u64; rel_len];
    match field.kind() {
        FieldKind::Laurent => {
            for (j, c) in e.unit.iter().enumerate() {
                if j < rel_len && !c.is_zero() {
                    out[j] = residue_of_rational(field, c);
                }
            }
        }
        FieldKind::PAdic => {
            let d = field.ram() as usize;
            let p = BigUint::from(field.p());
            for (j, c) in e.unit.iter().enumerate() {
                if c.is_zero() || j >= rel_len {
                    continue;
                }
                let m_j = (rel_len - j + d - 1) / d;
                let mut x = rational_mod_pk(field, c, m_j as u32);
                let mut pos = j;
                while pos < rel_len {
                    let (q, r) = x.div_rem(&p);
                    let digit = r.iter_u64_digits().next().unwrap_or(0);
                    out[pos] = (out[pos] + digit) % field.p();
                    x = q;
                    pos += d;
                }
            }
            // per-class expansions never collide modulo p, but carries between
            // classes cannot occur here either: positions are disjoint mod D
        }
    }
    out
}

/// Residue in `F_p` of an exact scalar of valuation zero.
pub fn residue(field: &Field, e: &ExactScalar) -> u64 {
    debug_assert_eq!(e.val, 0);
    residue_of_rational(field, &e.unit[0])
}

pub fn from_rational(field: &Field, r: &BigRational) -> Option<ExactScalar> {
    normalize(field, 0, vec![(0, r.clone())])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn padic_rational_basics() {
        let f = Field::padic(2).unwrap();
        let a = from_rational(&f, &rat(12, 5)).unwrap(); // 12/5 = 4 * 3/5
        assert_eq!(a.val, 2);
        assert_eq!(a.unit[0], rat(3, 5));
        let b = from_rational(&f, &rat(-4, 1)).unwrap();
        let s = add(&f, &a, &b).unwrap(); // 12/5 - 4 = -8/5
        assert_eq!(s.val, 3);
        assert_eq!(s.unit[0], rat(-1, 5));
        assert!(add(&f, &a, &neg(&f, &a)).is_none());
        let pr = mul(&f, &a, &b);
        assert_eq!(pr.val, 4);
        let i = inv(&f, &a).unwrap();
        let one = mul(&f, &a, &i);
        assert_eq!(one.val, 0);
        assert_eq!(one.unit[0], rat(1, 1));
    }

    #[test]
    fn padic_digexpansion() {
        let f = Field::padic(3).unwrap();
        // 1/2 = 2 + 1*3 + 1*9 + ... (mod 27: (27+1)/2 = 14 = 2 + 3 + 9)
        let a = from_rational(&f, &rat(1, 2)).unwrap();
        assert_eq!(unit_digits(&f, &a, 3), vec![2, 1, 1]);
    }

    #[test]
    fn ramified_inverse() {
        let f = Field::new(FieldKind::PAdic, 2, 2).unwrap();
        // 1 + eta
        let a = normalize(&f, 0, vec![(0, rat(1, 1)), (1, rat(1, 1))]).unwrap();
        let i = inv(&f, &a).unwrap();
        let one = mul(&f, &a, &i);
        assert_eq!(one.val, 0);
        assert_eq!(one.unit[0], rat(1, 1));
        assert!(one.unit[1].is_zero());
        // (1+eta)(1-eta) = 1 - eta^2 = 1 - 2 = -1, so 1/(1+eta) = eta - 1
        assert_eq!(i.val, 0);
        assert_eq!(i.unit, vec![rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn laurent_units() {
        let f = Field::laurent(5).unwrap();
        let a = from_rational(&f, &rat(7, 3)).unwrap(); // 7*3^{-1} = 2*2 = 4 mod 5
        assert_eq!(a.val, 0);
        assert_eq!(residue(&f, &a), 4);
        assert!(from_rational(&f, &rat(10, 3)).is_none()); // 10 = 0 mod 5
        let b = normalize(&f, 0, vec![(0, rat(1, 1)), (1, rat(2, 1))]).unwrap();
        assert!(inv(&f, &b).is_err());
        let c = mul(&f, &b, &b); // (1+2T)^2 = 1 + 4T + 4T^2
        assert_eq!(unit_digits(&f, &c, 3), vec![1, 4, 4]);
    }
}
