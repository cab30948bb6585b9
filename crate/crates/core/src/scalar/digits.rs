//! Raw arithmetic on digit vectors.
//!
//! A digit vector holds base-p residues indexed by powers of the fine
//! uniformizer `eta` (`eta^D = pi`), relative to some base valuation chosen by
//! the caller. For p-adic fields, carries jump `D` positions (`p * eta^k =
//! eta^(k+D)`); arithmetic is routed through `BigUint` per residue class
//! modulo `D`. For Laurent series fields there are no carries and everything
//! is componentwise modulo `p`.

use crate::field::{Field, FieldKind};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

/// Splits a digit vector into its `D` residue classes; class `j` collects the
/// digits at positions `j, j+D, j+2D, ...` as a base-`p` integer.
fn comps(field: &Field, digits: &[u64]) -> Vec<BigUint> {
    let d = field.ram() as usize;
    let p = BigUint::from(field.p());
    let mut out = vec![BigUint::zero(); d];
    for j in 0..d {
        let mut acc = BigUint::zero();
        let mut t = (digits.len() + d - 1 - j).saturating_sub(1) / d;
        // walk positions j + t*d downwards so Horner accumulation works
        loop {
            let pos = j + t * d;
            if pos < digits.len() {
                acc = acc * &p + BigUint::from(digits[pos]);
            }
            if t == 0 {
                break;
            }
            t -= 1;
        }
        out[j] = acc;
    }
    out
}

/// Inverse of [`comps`], truncated to `len` digits.
fn from_comps(field: &Field, mut comps: Vec<BigUint>, len: usize) -> Vec<u64> {
    let d = field.ram() as usize;
    let p = BigUint::from(field.p());
    let mut out = vec![0u64; len];
    for (k, slot) in out.iter_mut().enumerate() {
        let j = k % d;
        let (q, r) = comps[j].div_rem(&p);
        *slot = biguint_to_u64(&r);
        comps[j] = q;
    }
    out
}

fn biguint_to_u64(x: &BigUint) -> u64 {
    x.iter_u64_digits().next().unwrap_or(0)
}

fn padded(a: &[u64], len: usize) -> Vec<u64> {
    let mut v = a[..a.len().min(len)].to_vec();
    v.resize(len, 0);
    v
}

pub fn add(field: &Field, a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
    match field.kind() {
        FieldKind::Laurent => {
            let p = field.p();
            let mut out = padded(a, len);
            for (k, slot) in out.iter_mut().enumerate() {
                if k < b.len() {
                    *slot = (*slot + b[k]) % p;
                }
            }
            out
        }
        FieldKind::PAdic => {
            let ca = comps(field, &padded(a, len));
            let cb = comps(field, &padded(b, len));
            let sum: Vec<BigUint> = ca.into_iter().zip(cb).map(|(x, y)| x + y).collect();
            from_comps(field, sum, len)
        }
    }
}

pub fn neg(field: &Field, a: &[u64], len: usize) -> Vec<u64> {
    match field.kind() {
        FieldKind::Laurent => {
            let p = field.p();
            padded(a, len).iter().map(|&x| (p - x) % p).collect()
        }
        FieldKind::PAdic => {
            let d = field.ram() as usize;
            let p = BigUint::from(field.p());
            let ca = comps(field, &padded(a, len));
            let mut out = Vec::with_capacity(d);
            for (j, c) in ca.into_iter().enumerate() {
                if c.is_zero() {
                    out.push(c);
                } else {
                    let m_j = (len + d - 1 - j + d - 1) / d; // ceil((len - j)/d), j < len
                    out.push(p.pow(m_j as u32) - c);
                }
            }
            from_comps(field, out, len)
        }
    }
}

pub fn mul(field: &Field, a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
    match field.kind() {
        FieldKind::Laurent => {
            let p = field.p() as u128;
            let aa = padded(a, len);
            let bb = padded(b, len);
            let mut out = vec![0u64; len];
            for (i, &x) in aa.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in bb.iter().enumerate() {
                    if i + j >= len {
                        break;
                    }
                    let t = (x as u128 * y as u128) % p;
                    out[i + j] = ((out[i + j] as u128 + t) % p) as u64;
                }
            }
            out
        }
        FieldKind::PAdic => {
            let d = field.ram() as usize;
            let p = BigUint::from(field.p());
            let ca = comps(field, &padded(a, len));
            let cb = comps(field, &padded(b, len));
            let mut acc = vec![BigUint::zero(); d];
            for (j1, x) in ca.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j2, y) in cb.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let t = j1 + j2;
                    let (carry, j) = (t / d, t % d);
                    acc[j] += x * y * p.pow(carry as u32);
                }
            }
            from_comps(field, acc, len)
        }
    }
}

/// Multiplicative inverse modulo `p` (p prime, `a` nonzero mod p).
pub fn inv_mod_p(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit");
    (t.rem_euclid(p as i128)) as u64
}

/// Newton inversion of a unit digit vector (`a[0] != 0`), to `len` digits.
pub fn inv(field: &Field, a: &[u64], len: usize) -> Vec<u64> {
    debug_assert!(!a.is_empty() && a[0] != 0);
    let mut x = vec![inv_mod_p(a[0], field.p())];
    let mut m = 1usize;
    while m < len {
        let m2 = (2 * m).min(len);
        // x <- x*(2 - a*x), correct to m2 digits
        let ax = mul(field, a, &x, m2);
        let two = of_u64(field, 2, m2);
        let corr = add(field, &two, &neg(field, &ax, m2), m2);
        x = mul(field, &x, &corr, m2);
        m = m2;
    }
    x
}

/// Digit expansion of a small nonnegative integer (positions are multiples of
/// `D` since integers lie in the base field).
pub fn of_u64(field: &Field, n: u64, len: usize) -> Vec<u64> {
    let d = field.ram() as usize;
    let p = field.p();
    let mut out = vec![0u64; len];
    match field.kind() {
        FieldKind::Laurent => {
            if len > 0 {
                out[0] = n % p;
            }
        }
        FieldKind::PAdic => {
            let mut n = n;
            let mut pos = 0usize;
            while n > 0 && pos < len {
                out[pos] = n % p;
                n /= p;
                pos += d;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;

    #[test]
    fn padic_roundtrip_and_ops() {
        let f = Field::padic(2).unwrap();
        // 3 = 1 + 2
        let three = of_u64(&f, 3, 5);
        assert_eq!(three, vec![1, 1, 0, 0, 0]);
        let five = of_u64(&f, 5, 5);
        let eight = add(&f, &three, &five, 5);
        assert_eq!(eight, vec![0, 0, 0, 1, 0]);
        let fifteen = mul(&f, &three, &five, 5);
        assert_eq!(fifteen, vec![1, 1, 1, 1, 0]);
        let m3 = neg(&f, &three, 4);
        assert_eq!(add(&f, &three, &m3, 4), vec![0, 0, 0, 0]);
    }

    #[test]
    fn ramified_carries() {
        // D = 2, p = 2: eta^2 = 2, so (1 + eta)^2 = 1 + 2 eta + eta^2 = 3 + 2 eta
        // eta-digits: 3 + 2 eta = 1 + eta^2 + eta^3.
        let f = Field::new(FieldKind::PAdic, 2, 2).unwrap();
        let x = vec![1, 1, 0, 0, 0, 0];
        let sq = mul(&f, &x, &x, 6);
        assert_eq!(sq, vec![1, 0, 1, 1, 0, 0]);
    }

    #[test]
    fn laurent_no_carries() {
        let f = Field::laurent(2).unwrap();
        let x = vec![1, 1, 0, 0];
        let sq = mul(&f, &x, &x, 4);
        // (1+T)^2 = 1 + T^2 over F_2
        assert_eq!(sq, vec![1, 0, 1, 0]);
        assert_eq!(neg(&f, &x, 4), x);
    }

    #[test]
    fn newton_inverse() {
        for field in [Field::padic(3).unwrap(), Field::laurent(3).unwrap()] {
            let a = vec![2, 1, 0, 2, 1, 0, 1, 2];
            let b = inv(&field, &a, 8);
            let prod = mul(&field, &a, &b, 8);
            assert_eq!(prod, of_u64(&field, 1, 8));
        }
        let f = Field::new(FieldKind::PAdic, 5, 3).unwrap();
        let a = vec![4, 2, 0, 1, 3, 0, 0, 2, 1];
        let b = inv(&f, &a, 9);
        assert_eq!(mul(&f, &a, &b, 9), of_u64(&f, 1, 9));
    }

    #[test]
    fn inverse_mod_p() {
        assert_eq!(inv_mod_p(3, 7), 5);
        let p = (1u64 << 61) - 1;
        let a = 123456789012345u64;
        assert_eq!((a as u128 * inv_mod_p(a, p) as u128) % p as u128, 1);
    }
}
