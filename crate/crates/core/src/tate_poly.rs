//! Finite-support Tate series (polynomials with valued coefficients), Gauss
//! valuations, term comparison, leading terms and basis normalization.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, OrderContext};
use crate::scalar::{Prec, Scalar};
use std::cmp::Ordering;

/// Gauss valuation of a term; a lower bound when the coefficient is only
/// known to be zero at some precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussVal {
    Exact(i64),
    LowerBound(i64),
    /// Exactly zero coefficient.
    Infinite,
}

impl GaussVal {
    pub fn bound(&self) -> Option<i64> {
        match self {
            GaussVal::Exact(v) | GaussVal::LowerBound(v) => Some(*v),
            GaussVal::Infinite => None,
        }
    }
}

/// Gauss valuation `val(coefficient) - r . exponents` of a term. Undefined in
/// polynomial mode.
pub fn gauss_val(field: &Field, ctx: &OrderContext, m: &Monomial, c: &Scalar) -> Result<GaussVal> {
    let _ = field;
    if ctx.is_polynomial() {
        return Err(Error::Invalid("Gauss valuation is undefined in polynomial mode".into()));
    }
    let w = ctx.monomial_fine_val(m);
    Ok(match (c.certified_val(), c.prec()) {
        (Some(v), _) => GaussVal::Exact(v + w),
        (None, Prec::Inf) => GaussVal::Infinite,
        (None, Prec::Finite(n)) => GaussVal::LowerBound(n + w),
    })
}

/// Compares two terms under the context order. In Tate mode the term of
/// smaller Gauss valuation is the greater one, ties broken by the monomial
/// order; certified valuations are required on both sides.
pub fn term_cmp(
    field: &Field,
    ctx: &OrderContext,
    t1: (&Monomial, &Scalar),
    t2: (&Monomial, &Scalar),
) -> Result<Ordering> {
    if ctx.is_polynomial() {
        return Ok(ctx.order.cmp(t1.0, t2.0));
    }
    let v1 = gauss_val(field, ctx, t1.0, t1.1)?;
    let v2 = gauss_val(field, ctx, t2.0, t2.1)?;
    match (v1, v2) {
        (GaussVal::Exact(a), GaussVal::Exact(b)) => Ok(match b.cmp(&a) {
            Ordering::Equal => ctx.order.cmp(t1.0, t2.0),
            ord => ord,
        }),
        _ => Err(Error::InsufficientPrecision(
            "term comparison with uncertified valuation".into(),
        )),
    }
}

/// A finite-support series. Terms are kept sorted by exponent vector with at
/// most one term per monomial; exactly-zero coefficients are dropped while
/// zero-at-precision coefficients are retained so output precision stays
/// reportable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TatePoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl TatePoly {
    pub fn zero() -> TatePoly {
        TatePoly { terms: Vec::new() }
    }

    pub fn from_terms(field: &Field, terms: Vec<(Monomial, Scalar)>) -> TatePoly {
        let mut map = std::collections::BTreeMap::<Monomial, Scalar>::new();
        for (m, c) in terms {
            match map.remove(&m) {
                None => {
                    map.insert(m, c);
                }
                Some(prev) => {
                    map.insert(m, field.add(&prev, &c));
                }
            }
        }
        map.retain(|_, c| !c.is_exact_zero());
        TatePoly { terms: map.into_iter().collect() }
    }

    pub fn term(m: Monomial, c: Scalar) -> TatePoly {
        if c.is_exact_zero() {
            TatePoly::zero()
        } else {
            TatePoly { terms: vec![(m, c)] }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms
            .binary_search_by(|(mm, _)| mm.cmp(m))
            .ok()
            .map(|k| &self.terms[k].1)
    }

    pub fn remove(&mut self, m: &Monomial) -> Option<Scalar> {
        match self.terms.binary_search_by(|(mm, _)| mm.cmp(m)) {
            Ok(k) => Some(self.terms.remove(k).1),
            Err(_) => None,
        }
    }

    pub fn add(&self, field: &Field, other: &TatePoly) -> TatePoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TatePoly::from_terms(field, terms)
    }

    pub fn sub(&self, field: &Field, other: &TatePoly) -> TatePoly {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn scale(&self, field: &Field, c: &Scalar) -> TatePoly {
        TatePoly::from_terms(
            field,
            self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        )
    }

    /// Multiplication by a single term.
    pub fn mul_term(&self, field: &Field, m: &Monomial, c: &Scalar) -> TatePoly {
        TatePoly::from_terms(
            field,
            self.terms.iter().map(|(mm, a)| (mm.mul(m), field.mul(a, c))).collect(),
        )
    }

    pub fn truncate_coeffs(&self, field: &Field, fine: i64) -> TatePoly {
        TatePoly::from_terms(
            field,
            self.terms.iter().map(|(m, a)| (m.clone(), field.truncate(a, fine))).collect(),
        )
    }

    /// The maximal term under the context order.
    ///
    /// Fails on the empty polynomial and when the comparison cannot be
    /// certified at the current precision.
    pub fn leading_term(&self, field: &Field, ctx: &OrderContext) -> Result<(&Monomial, &Scalar)> {
        if self.terms.is_empty() {
            return Err(Error::Invalid("leading term of the zero polynomial".into()));
        }
        if ctx.is_polynomial() {
            let (m, c) = self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| ctx.order.cmp(a, b))
                .map(|(m, c)| (m, c))
                .unwrap();
            if c.certified_val().is_none() {
                return Err(Error::InsufficientPrecision(
                    "leading coefficient is indistinguishable from zero".into(),
                ));
            }
            return Ok((m, c));
        }
        // certified candidates, by (gauss val, monomial order)
        let mut best: Option<(usize, i64)> = None;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if let GaussVal::Exact(v) = gauss_val(field, ctx, m, c)? {
                best = match best {
                    None => Some((k, v)),
                    Some((bk, bv)) => {
                        if v < bv
                            || (v == bv
                                && ctx.order.cmp(m, &self.terms[bk].0) == Ordering::Greater)
                        {
                            Some((k, v))
                        } else {
                            Some((bk, bv))
                        }
                    }
                };
            }
        }
        let (bk, bv) = best.ok_or_else(|| {
            Error::InsufficientPrecision("no certified term in leading-term search".into())
        })?;
        // every uncertified term must be certifiably smaller
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k == bk {
                continue;
            }
            if let GaussVal::LowerBound(b) = gauss_val(field, ctx, m, c)? {
                let loses_tie = b == bv && ctx.order.cmp(m, &self.terms[bk].0) == Ordering::Less;
                if b <= bv && !loses_tie {
                    return Err(Error::InsufficientPrecision(format!(
                        "cannot certify leading term against zero class at {}",
                        ctx.format_monomial(m)
                    )));
                }
            }
        }
        Ok((&self.terms[bk].0, &self.terms[bk].1))
    }

    /// Gauss valuation of the polynomial (that of its leading term).
    pub fn fine_gauss_val(&self, field: &Field, ctx: &OrderContext) -> Result<i64> {
        let (m, c) = self.leading_term(field, ctx)?;
        match gauss_val(field, ctx, m, c)? {
            GaussVal::Exact(v) => Ok(v),
            _ => unreachable!("leading term is certified"),
        }
    }

    pub fn format(&self, field: &Field, ctx: &OrderContext) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut sorted: Vec<&(Monomial, Scalar)> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| ctx.order.cmp(b, a));
        for (m, c) in sorted {
            let cs = field.format_scalar(c);
            let cs = if cs.contains(' ') || cs.contains('+') { format!("({cs})") } else { cs };
            if m.is_one() {
                parts.push(cs);
            } else if cs == "1" {
                parts.push(ctx.format_monomial(m));
            } else {
                parts.push(format!("{}*{}", cs, ctx.format_monomial(m)));
            }
        }
        parts.join(" + ")
    }
}

/// Scales each basis element by a power of `pi` and the inverse of its
/// leading unit so that the leading coefficient becomes `eta^v` with
/// `0 <= v < D` (Gauss valuation of the leading term in `[0, 1)`). In
/// polynomial mode this just makes every element monic.
pub fn normalize_gb(field: &Field, ctx: &OrderContext, basis: &[TatePoly]) -> Result<Vec<TatePoly>> {
    let mut out = Vec::with_capacity(basis.len());
    for g in basis {
        if g.is_empty() {
            return Err(Error::Invalid("zero polynomial in a basis".into()));
        }
        let (lm, lc) = g.leading_term(field, ctx)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        if ctx.is_polynomial() {
            let factor = field.inv(&lc)?;
            out.push(g.scale(field, &factor));
            continue;
        }
        let v = match gauss_val(field, ctx, &lm, &lc)? {
            GaussVal::Exact(v) => v,
            _ => unreachable!("leading term is certified"),
        };
        let target = v - field.fine_floor(v); // in [0, D)
        // after scaling, the leading coefficient is eta^(target - w)
        let w = ctx.monomial_fine_val(&lm);
        let factor = field.shift(&field.inv(&lc)?, target - w);
        out.push(g.scale(field, &factor));
    }
    Ok(out)
}
