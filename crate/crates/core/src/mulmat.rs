//! Multiplication matrices on the quotient by a zero-dimensional ideal.
//!
//! Three engines fill the matrices column by column over the staircase
//! basis:
//!   * `mulmat_poly` — polynomial mode, exact coefficients, one pass in
//!     increasing monomial order;
//!   * `mulmat_iter` — trivial log-radii, `prec + 1` passes; each pass gains
//!     one digit because every out-of-order coefficient carries positive
//!     valuation, which the zealous scalars see;
//!   * `mulmat_rec` — arbitrary rational log-radii, demand-driven recursion
//!     with the matrices as a memo table and per-entry precision requests.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::monomial::{Monomial, OrderContext};
use crate::scalar::{Prec, Scalar};
use crate::staircase::{build_staircase, Provenance, Staircase};
use crate::tate_poly::TatePoly;
use std::collections::HashMap;

/// The multiplication matrices `T_1..T_n`, the staircase basis they are
/// written in, and the precision request they were computed for.
#[derive(Clone, Debug)]
pub struct MulMatSet {
    pub ctx: OrderContext,
    pub staircase: Staircase,
    pub mats: Vec<Matrix>,
    /// Coordinates of the monomial 1 in the staircase basis.
    pub one: Vec<Scalar>,
    /// Requested precision in `pi`-digits (`i64::MAX` for exact matrices).
    pub prec_pi: i64,
}

impl MulMatSet {
    pub fn dim(&self) -> usize {
        self.staircase.dim()
    }

    /// `v_{mu,m} = val(X_i m) - val(mu)` in fine units (0 in polynomial mode).
    pub fn entry_val_floor(&self, field: &Field, i: usize, mu: usize, m: usize) -> i64 {
        if self.ctx.is_polynomial() {
            return 0;
        }
        let target = self.staircase.monomials[m].mul_var(i);
        let v = self.ctx.monomial_fine_val(&target)
            - self.ctx.monomial_fine_val(&self.staircase.monomials[mu]);
        field.fine_floor(v)
    }

    /// Contracted fine precision of entry `(mu, m)` of `T_i`.
    pub fn contract_fine(&self, field: &Field, i: usize, mu: usize, m: usize) -> Option<i64> {
        if self.prec_pi == i64::MAX {
            return None;
        }
        Some(field.fine(self.prec_pi) + self.entry_val_floor(field, i, mu, m))
    }

    /// Entries whose achieved precision falls short of the contract.
    pub fn contract_shortfalls(&self, field: &Field) -> Vec<(usize, usize, usize, i64, Prec)> {
        let mut out = Vec::new();
        let delta = self.dim();
        for (i, t) in self.mats.iter().enumerate() {
            for mu in 0..delta {
                for m in 0..delta {
                    if let Some(req) = self.contract_fine(field, i, mu, m) {
                        let got = t.at(mu, m).prec();
                        if got < Prec::Finite(req) {
                            out.push((i, mu, m, req, got));
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks the structural valuation bound val(entry) >= v_{mu,m}.
    pub fn valuation_pattern_ok(&self, _field: &Field) -> bool {
        let delta = self.dim();
        for (i, t) in self.mats.iter().enumerate() {
            for mu in 0..delta {
                for m in 0..delta {
                    if self.ctx.is_polynomial() {
                        continue;
                    }
                    let target = self.staircase.monomials[m].mul_var(i);
                    let v = self.ctx.monomial_fine_val(&target)
                        - self.ctx.monomial_fine_val(&self.staircase.monomials[mu]);
                    match t.at(mu, m).val_bound() {
                        Prec::Inf => {}
                        Prec::Finite(b) => {
                            if b < v {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

struct BasisData {
    lms: Vec<Monomial>,
    /// Tail terms of each element, negated (the matrix column contents).
    tails: Vec<Vec<(Monomial, Scalar)>>,
}

/// Splits normalized basis elements into leading monomial and negated tail.
fn split_basis(
    field: &Field,
    basis: &[TatePoly],
    ctx: &OrderContext,
) -> Result<BasisData> {
    let mut lms = Vec::with_capacity(basis.len());
    let mut tails = Vec::with_capacity(basis.len());
    for g in basis {
        let (lm, lc) = g.leading_term(field, ctx)?;
        let lm = lm.clone();
        if !ctx.is_polynomial() {
            // normalized: Gauss valuation of the leading term in [0, 1)
            let v = lc.certified_val().unwrap() + ctx.monomial_fine_val(&lm);
            if v < 0 || v >= field.fine_per_pi() {
                return Err(Error::Invalid(
                    "basis is not normalized (leading Gauss valuation outside [0,1))".into(),
                ));
            }
        }
        // column contents are -(g - LT(g)) / lc
        let lc_inv = field.inv(lc)?;
        let mut tail = Vec::new();
        for (m, c) in g.terms() {
            if *m == lm {
                continue;
            }
            tail.push((m.clone(), field.neg(&field.mul(c, &lc_inv))));
        }
        lms.push(lm);
        tails.push(tail);
    }
    Ok(BasisData { lms, tails })
}

/// Residue-level reducedness: no valuation-zero tail term may be divisible by
/// a leading monomial.
fn check_residue_reduced(
    field: &Field,
    data: &BasisData,
    ctx: &OrderContext,
) -> Result<()> {
    for (gi, tail) in data.tails.iter().enumerate() {
        for (m, c) in tail {
            let fine_term_val = match c.certified_val() {
                Some(v) => v + ctx.monomial_fine_val(m),
                None => continue,
            };
            if fine_term_val < field.fine_per_pi()
                && data.lms.iter().any(|lm| lm.divides(m))
            {
                return Err(Error::NotReducedModPi(format!(
                    "element {} has a unit-valuation term at {} inside the leading-term ideal",
                    gi,
                    ctx.format_monomial(m)
                )));
            }
        }
    }
    Ok(())
}

fn check_term_precisions(
    field: &Field,
    basis: &[TatePoly],
    ctx: &OrderContext,
    prec_pi: i64,
) -> Result<()> {
    for (gi, g) in basis.iter().enumerate() {
        for (m, c) in g.terms() {
            let Prec::Finite(have) = c.prec() else { continue };
            // zero classes carry their bound as a valuation; the final
            // contract certification catches any real shortfall they cause
            let Some(v) = c.certified_val() else { continue };
            let tv = v + ctx.monomial_fine_val(m);
            let need = field.fine(prec_pi) + field.fine_floor(tv) - ctx.monomial_fine_val(m);
            if have < need {
                return Err(Error::InsufficientPrecision(format!(
                    "term {} of element {} is known to O(eta^{have}) but the contract needs O(eta^{need})",
                    ctx.format_monomial(m),
                    gi
                )));
            }
        }
    }
    Ok(())
}

/// Classical one-pass construction over exact coefficients (polynomial mode).
pub fn mulmat_poly(field: &Field, basis: &[TatePoly], ctx: &OrderContext) -> Result<MulMatSet> {
    if !ctx.is_polynomial() {
        return Err(Error::Invalid("mulmat_poly requires polynomial mode".into()));
    }
    let data = split_basis(field, basis, ctx)?;
    let staircase = build_staircase(&data.lms, ctx)?;
    let delta = staircase.dim();
    for (gi, tail) in data.tails.iter().enumerate() {
        for (m, _) in tail {
            if staircase.position(m).is_none() {
                return Err(Error::NotReducedOverK(format!(
                    "element {gi} has tail term {} outside the staircase",
                    ctx.format_monomial(m)
                )));
            }
        }
    }
    let n = ctx.nvars;
    let mut mats = vec![Matrix::zero(delta, delta); n];
    for pair in &staircase.pairs {
        let col = match pair.prov {
            Provenance::InB(t) => {
                let mut col = vec![Scalar::exact_zero(); delta];
                col[t] = field.one();
                col
            }
            Provenance::Corner(g) => {
                let mut col = vec![Scalar::exact_zero(); delta];
                for (m, c) in &data.tails[g] {
                    col[staircase.position(m).unwrap()] = c.clone();
                }
                col
            }
            Provenance::Product { var } => {
                let m2 = staircase.monomials[pair.m_idx].div_var(var).unwrap();
                let m2_idx = staircase.position(&m2).unwrap();
                mats[var].mul_vec(field, &mats[pair.var].col(m2_idx))
            }
        };
        mats[pair.var].set_col(pair.m_idx, col);
    }
    let one = unit_one_vector(field, &staircase)?;
    Ok(MulMatSet { ctx: ctx.clone(), staircase, mats, one, prec_pi: i64::MAX })
}

fn unit_one_vector(field: &Field, staircase: &Staircase) -> Result<Vec<Scalar>> {
    let delta = staircase.dim();
    let mut one = vec![Scalar::exact_zero(); delta];
    if delta > 0 {
        let pos = staircase.one_position().ok_or_else(|| {
            Error::NotZeroDimensional("the monomial 1 lies in the leading-term ideal".into())
        })?;
        one[pos] = field.one();
    }
    Ok(one)
}

/// Iterative engine for trivial log-radii; accepts bases that are nonreduced
/// over `K` when `allow_nonreduced` is set (they must still be reduced modulo
/// the uniformizer).
fn iter_engine(
    field: &Field,
    basis: &[TatePoly],
    ctx: &OrderContext,
    prec_pi: i64,
    allow_nonreduced: bool,
) -> Result<MulMatSet> {
    match ctx.finite_radii() {
        Some(r) if r.iter().all(|&x| x == 0) => {}
        _ => return Err(Error::Invalid("the iterative engine requires zero log-radii".into())),
    }
    let data = split_basis(field, basis, ctx)?;
    check_residue_reduced(field, &data, ctx)?;
    check_term_precisions(field, basis, ctx, prec_pi)?;
    let staircase = build_staircase(&data.lms, ctx)?;
    let delta = staircase.dim();
    let n = ctx.nvars;

    let mut nonreduced = false;
    for tail in &data.tails {
        if tail.iter().any(|(m, _)| staircase.position(m).is_none()) {
            nonreduced = true;
        }
    }
    if nonreduced && !allow_nonreduced {
        return Err(Error::NotReducedOverK(
            "basis has tail terms outside the staircase; use the nonreduced variant".into(),
        ));
    }
    if nonreduced && staircase.one_position().is_none() {
        return Err(Error::NotZeroDimensional("nonreduced update needs a proper ideal".into()));
    }

    let mut mats = vec![Matrix::filled(delta, delta, Scalar::zero_at(0)); n];
    let one = unit_one_vector(field, &staircase)?;
    for _k in 0..=prec_pi {
        for pair in &staircase.pairs {
            let col = match pair.prov {
                Provenance::InB(t) => {
                    let mut col = vec![Scalar::exact_zero(); delta];
                    col[t] = field.one();
                    col
                }
                Provenance::Corner(g) => corner_column(field, &staircase, &mats, &data.tails[g], ctx)?,
                Provenance::Product { var } => {
                    let m2 = staircase.monomials[pair.m_idx].div_var(var).unwrap();
                    let m2_idx = staircase.position(&m2).unwrap();
                    mats[var].mul_vec(field, &mats[pair.var].col(m2_idx))
                }
            };
            mats[pair.var].set_col(pair.m_idx, col);
        }
    }
    let out = MulMatSet { ctx: ctx.clone(), staircase, mats, one, prec_pi };
    let shortfalls = out.contract_shortfalls(field);
    if !shortfalls.is_empty() {
        let (i, mu, m, req, got) = shortfalls[0].clone();
        return Err(Error::InsufficientPrecision(format!(
            "entry ({mu},{m}) of T_{i} reached {got:?} of the contracted O(eta^{req})"
        )));
    }
    Ok(out)
}

/// Column contribution of a basis element, rewriting out-of-staircase tail
/// monomials through products of the current matrices. The decomposition
/// picks the staircase divisor that is maximal in the context order.
fn corner_column(
    field: &Field,
    staircase: &Staircase,
    mats: &[Matrix],
    tail: &[(Monomial, Scalar)],
    ctx: &OrderContext,
) -> Result<Vec<Scalar>> {
    let delta = staircase.dim();
    let mut col = vec![Scalar::exact_zero(); delta];
    for (m, c) in tail {
        match staircase.position(m) {
            Some(t) => col[t] = field.add(&col[t], c),
            None => {
                let m2 = staircase
                    .monomials
                    .iter()
                    .filter(|b| b.divides(m))
                    .max_by(|a, b| ctx.cmp_monomials(a, b))
                    .ok_or_else(|| {
                        Error::NotZeroDimensional("empty staircase in nonreduced update".into())
                    })?;
                let alpha = m.try_div(m2).unwrap();
                let mut v = vec![Scalar::exact_zero(); delta];
                v[staircase.position(m2).unwrap()] = field.one();
                for (k, &e) in alpha.0.iter().enumerate() {
                    for _ in 0..e {
                        v = mats[k].mul_vec(field, &v);
                    }
                }
                for (slot, x) in col.iter_mut().zip(&v) {
                    let t = field.mul(c, x);
                    *slot = field.add(slot, &t);
                }
            }
        }
    }
    Ok(col)
}

/// Iterative engine (`prec + 1` passes in increasing order of `X_i m`) for a
/// reduced basis with zero log-radii.
pub fn mulmat_iter(
    field: &Field,
    basis: &[TatePoly],
    ctx: &OrderContext,
    prec_pi: i64,
) -> Result<MulMatSet> {
    iter_engine(field, basis, ctx, prec_pi, false)
}

/// Iterative engine accepting bases that are nonreduced over `K` as long as
/// they stay reduced modulo the uniformizer.
pub fn mulmat_iter_nonreduced(
    field: &Field,
    basis: &[TatePoly],
    ctx: &OrderContext,
    prec_pi: i64,
) -> Result<MulMatSet> {
    iter_engine(field, basis, ctx, prec_pi, true)
}

struct RecState<'a> {
    field: &'a Field,
    ctx: &'a OrderContext,
    staircase: &'a Staircase,
    tails: &'a [Vec<(Monomial, Scalar)>],
    /// Provenance per (variable, staircase index).
    prov: Vec<Vec<Provenance>>,
    mats: Vec<Matrix>,
    /// Highest fully-processed request per entry.
    settled: HashMap<(usize, usize, usize), i64>,
    /// Currently active requests, for cycle detection.
    active: HashMap<(usize, usize, usize), i64>,
    chain: Vec<(usize, usize, usize, i64)>,
}

impl RecState<'_> {
    fn floor_of(&self, i: usize, mu: usize, m: usize) -> i64 {
        let target = self.staircase.monomials[m].mul_var(i);
        let v = self.ctx.monomial_fine_val(&target)
            - self.ctx.monomial_fine_val(&self.staircase.monomials[mu]);
        self.field.fine_floor(v)
    }

    fn request(&mut self, i: usize, mu: usize, m: usize, p: i64) -> Result<()> {
        if self.mats[i].at(mu, m).prec() >= Prec::Finite(p) {
            return Ok(());
        }
        if self.settled.get(&(i, mu, m)).is_some_and(|&s| s >= p) {
            return Ok(());
        }
        if p <= self.floor_of(i, mu, m) {
            return Ok(());
        }
        if let Some(&ap) = self.active.get(&(i, mu, m)) {
            if p >= ap {
                let chain: Vec<String> = self
                    .chain
                    .iter()
                    .map(|(i, mu, m, k)| format!("(T_{i}[{mu},{m}] @ {k})"))
                    .collect();
                return Err(Error::CycleDetected(chain.join(" -> ")));
            }
        }
        self.active.insert((i, mu, m), p);
        self.chain.push((i, mu, m, p));
        let result = self.compute(i, mu, m, p);
        self.chain.pop();
        self.active.remove(&(i, mu, m));
        result?;
        let e = self.settled.entry((i, mu, m)).or_insert(p);
        *e = (*e).max(p);
        Ok(())
    }

    fn compute(&mut self, i: usize, mu: usize, m: usize, p: i64) -> Result<()> {
        let field = self.field;
        match self.prov[i][m] {
            Provenance::InB(t) => {
                let val =
                    if mu == t { field.one() } else { Scalar::exact_zero() };
                *self.mats[i].at_mut(mu, m) = val;
            }
            Provenance::Corner(g) => {
                let mono = &self.staircase.monomials[mu];
                let mut val = Scalar::exact_zero();
                for (tm, tc) in &self.tails[g] {
                    if tm == mono {
                        val = tc.clone();
                    }
                }
                *self.mats[i].at_mut(mu, m) = val;
            }
            Provenance::Product { var: j } => {
                let m2 = self.staircase.monomials[m].div_var(j).unwrap();
                let m2_idx = self.staircase.position(&m2).unwrap();
                let delta = self.staircase.dim();
                let mut acc = Scalar::exact_zero();
                for mu2 in 0..delta {
                    let v1 = self.mats[j].at(mu, mu2).val_bound();
                    let v2 = self.mats[i].at(mu2, m2_idx).val_bound();
                    let (Prec::Finite(w1), Prec::Finite(w2)) = (v1, v2) else {
                        continue; // an exactly-zero factor contributes nothing
                    };
                    self.request(j, mu, mu2, p - w2)?;
                    self.request(i, mu2, m2_idx, p - w1)?;
                    let a = self.mats[j].at(mu, mu2).clone();
                    let b = self.mats[i].at(mu2, m2_idx).clone();
                    acc = field.add(&acc, &field.mul(&a, &b));
                }
                let current = self.mats[i].at(mu, m).clone();
                if acc.prec() > current.prec() {
                    *self.mats[i].at_mut(mu, m) = acc;
                }
            }
        }
        Ok(())
    }
}

/// Recursive engine for arbitrary rational log-radii (denominator dividing
/// the field's ramification). The entry `(mu, m)` of `T_i` is computed to
/// `prec + floor(v_{mu,m})`.
pub fn mulmat_rec(
    field: &Field,
    basis: &[TatePoly],
    ctx: &OrderContext,
    prec_pi: i64,
) -> Result<MulMatSet> {
    if ctx.finite_radii().is_none() {
        return Err(Error::Invalid("the recursive engine requires finite log-radii".into()));
    }
    let data = split_basis(field, basis, ctx)?;
    check_residue_reduced(field, &data, ctx)?;
    check_term_precisions(field, basis, ctx, prec_pi)?;
    let staircase = build_staircase(&data.lms, ctx)?;
    let delta = staircase.dim();
    let n = ctx.nvars;
    for (gi, tail) in data.tails.iter().enumerate() {
        for (m, _) in tail {
            if staircase.position(m).is_none() {
                return Err(Error::NotReducedOverK(format!(
                    "element {gi} has tail term {} outside the staircase",
                    ctx.format_monomial(m)
                )));
            }
        }
    }
    let mut prov = vec![vec![Provenance::InB(0); delta]; n];
    for pair in &staircase.pairs {
        prov[pair.var][pair.m_idx] = pair.prov;
    }
    let mut mats = vec![Matrix::zero(delta, delta); n];
    let mut state = RecState {
        field,
        ctx,
        staircase: &staircase,
        tails: &data.tails,
        prov,
        mats: {
            for (i, t) in mats.iter_mut().enumerate() {
                for mu in 0..delta {
                    for m in 0..delta {
                        let target = staircase.monomials[m].mul_var(i);
                        let v = ctx.monomial_fine_val(&target)
                            - ctx.monomial_fine_val(&staircase.monomials[mu]);
                        *t.at_mut(mu, m) = Scalar::zero_at(field.fine_floor(v));
                    }
                }
            }
            mats
        },
        settled: HashMap::new(),
        active: HashMap::new(),
        chain: Vec::new(),
    };
    for i in 0..n {
        for m in 0..delta {
            for mu in 0..delta {
                let req = field.fine(prec_pi) + state.floor_of(i, mu, m);
                state.request(i, mu, m, req)?;
            }
        }
    }
    let one = unit_one_vector(field, &staircase)?;
    let mats = std::mem::take(&mut state.mats);
    drop(state);
    let out = MulMatSet { ctx: ctx.clone(), staircase, mats, one, prec_pi };
    let shortfalls = out.contract_shortfalls(field);
    if !shortfalls.is_empty() {
        let (i, mu, m, req, got) = shortfalls[0].clone();
        return Err(Error::InsufficientPrecision(format!(
            "entry ({mu},{m}) of T_{i} reached {got:?} of the contracted O(eta^{req})"
        )));
    }
    Ok(out)
}

/// `g(T_1..T_n)` applied to a vector; zero at precision for basis elements.
pub fn eval_poly_at_matrices(
    field: &Field,
    g: &TatePoly,
    mats: &[Matrix],
    v: &[Scalar],
) -> Vec<Scalar> {
    let mut acc = vec![Scalar::exact_zero(); v.len()];
    for (m, c) in g.terms() {
        let mut w = v.to_vec();
        for (k, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                w = mats[k].mul_vec(field, &w);
            }
        }
        for (slot, x) in acc.iter_mut().zip(&w) {
            let t = field.mul(c, x);
            *slot = field.add(slot, &t);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{default_var_names, MonomialOrder, OrderKind};
    use crate::oracle::check_mulmat;
    use crate::tate_poly::normalize_gb;
    use num_rational::BigRational;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn ctx0(n: usize) -> OrderContext {
        OrderContext::tate(
            MonomialOrder::new(OrderKind::Lex, n),
            vec![0; n],
            default_var_names(n),
        )
    }

    #[test]
    fn univariate_corner() {
        // G = {x^2 - p x - p} over Q_3: T = [[0, p], [1, p]]
        let f = Field::padic(3).unwrap();
        let ctx = ctx0(1);
        let g = TatePoly::from_terms(
            &f,
            vec![
                (m(&[2]), f.one()),
                (m(&[1]), f.from_i64(-3)),
                (m(&[0]), f.from_i64(-3)),
            ],
        );
        let t = mulmat_iter(&f, &[g.clone()], &ctx, 8).unwrap();
        assert_eq!(t.dim(), 2);
        let tx = &t.mats[0];
        assert!(f.agree_at(tx.at(0, 0), &Scalar::exact_zero(), 8));
        assert!(f.agree_at(tx.at(1, 0), &f.one(), 8));
        assert!(f.agree_at(tx.at(0, 1), &f.from_u64(3), 8));
        assert!(f.agree_at(tx.at(1, 1), &f.from_u64(3), 8));
        // annihilation: g(T) * one = 0 at precision
        let img = eval_poly_at_matrices(&f, &g, &t.mats, &t.one);
        assert!(img.iter().all(|s| s.is_zero_class()));
    }

    #[test]
    fn trivial_linear_basis() {
        // G = {x, y}: delta = 1, all matrices zero
        let f = Field::padic(2).unwrap();
        let ctx = ctx0(2);
        let basis =
            vec![TatePoly::term(m(&[1, 0]), f.one()), TatePoly::term(m(&[0, 1]), f.one())];
        let t = mulmat_iter(&f, &basis, &ctx, 5).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.mats[0].at(0, 0).is_zero_class() || t.mats[0].at(0, 0).is_exact_zero());
    }

    #[test]
    fn two_variable_example_matches_oracle() {
        // G = {x^2, y^2 - 2xy} over Q_2, lex(x>y): B = {1, y, x, xy}
        let f = Field::padic(2).unwrap();
        let ctx = ctx0(2);
        let basis = vec![
            TatePoly::term(m(&[2, 0]), f.one()),
            TatePoly::from_terms(
                &f,
                vec![(m(&[0, 2]), f.one()), (m(&[1, 1]), f.from_i64(-2))],
            ),
        ];
        let t = mulmat_iter(&f, &basis, &ctx, 10).unwrap();
        assert_eq!(t.dim(), 4);
        let report = check_mulmat(&f, &t, &basis, &ctx).unwrap();
        assert!(report.ok(), "{:?}", report.mismatches);
        // spec columns: x*y -> xy, y*y -> 2xy, y*xy -> 0
        let y_idx = t.staircase.position(&m(&[0, 1])).unwrap();
        let xy_idx = t.staircase.position(&m(&[1, 1])).unwrap();
        assert!(f.agree_at(t.mats[0].at(xy_idx, y_idx), &f.one(), 10));
        assert!(f.agree_at(t.mats[1].at(xy_idx, y_idx), &f.from_u64(2), 10));
        for mu in 0..4 {
            assert!(t.mats[1].at(mu, xy_idx).is_zero_class());
        }
        // the structural valuation pattern of the trivial-radii case
        assert!(t.valuation_pattern_ok(&f));
        // commutation at contracted precision
        let txy = t.mats[0].mul(&f, &t.mats[1]);
        let tyx = t.mats[1].mul(&f, &t.mats[0]);
        for i in 0..4 {
            for j in 0..4 {
                assert!(f.sub(txy.at(i, j), tyx.at(i, j)).is_zero_class());
            }
        }
    }

    #[test]
    fn rec_equals_iter_on_trivial_radii() {
        let f = Field::padic(2).unwrap();
        let ctx = ctx0(2);
        let basis = vec![
            TatePoly::term(m(&[2, 0]), f.one()),
            TatePoly::from_terms(
                &f,
                vec![(m(&[0, 2]), f.one()), (m(&[1, 1]), f.from_i64(-2))],
            ),
        ];
        let a = mulmat_iter(&f, &basis, &ctx, 7).unwrap();
        let b = mulmat_rec(&f, &basis, &ctx, 7).unwrap();
        for i in 0..2 {
            for mu in 0..4 {
                for mm in 0..4 {
                    let c = a.contract_fine(&f, i, mu, mm).unwrap();
                    assert!(
                        f.agree_at(a.mats[i].at(mu, mm), b.mats[i].at(mu, mm), c),
                        "entry ({mu},{mm}) of T_{i} disagrees"
                    );
                }
            }
        }
    }

    #[test]
    fn rec_fractional_radii() {
        // G = {x^2 - p x - p} over Q_3 with r = (1/2): normalize then run
        let f = Field::new(crate::field::FieldKind::PAdic, 3, 2).unwrap();
        let ctx = OrderContext::tate(
            MonomialOrder::new(OrderKind::Lex, 1),
            vec![1],
            default_var_names(1),
        );
        let g = TatePoly::from_terms(
            &f,
            vec![
                (m(&[2]), f.one()),
                (m(&[1]), f.from_i64(-3)),
                (m(&[0]), f.from_i64(-3)),
            ],
        );
        let basis = normalize_gb(&f, &ctx, &[g]).unwrap();
        let t = mulmat_rec(&f, &basis, &ctx, 6).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.valuation_pattern_ok(&f));
        let report = check_mulmat(&f, &t, &basis, &ctx).unwrap();
        assert!(report.ok(), "{:?}", report.mismatches);
        // v_{1,x} = val(x*x) - val(1) = -1 in pi-units, -2 fine
        assert_eq!(t.entry_val_floor(&f, 0, 0, 1), -2);
    }

    #[test]
    fn rec_zero_precision_base_case() {
        let f = Field::padic(2).unwrap();
        let ctx = ctx0(2);
        let basis = vec![
            TatePoly::term(m(&[2, 0]), f.one()),
            TatePoly::from_terms(
                &f,
                vec![(m(&[0, 2]), f.one()), (m(&[1, 1]), f.from_i64(-2))],
            ),
        ];
        let t = mulmat_rec(&f, &basis, &ctx, 0).unwrap();
        // product columns stay at their placeholders
        let xy_idx = t.staircase.position(&m(&[1, 1])).unwrap();
        for mu in 0..4 {
            let e = t.mats[1].at(mu, xy_idx);
            assert!(e.prec() >= Prec::Finite(0));
        }
    }

    #[test]
    fn nonreduced_univariate() {
        // G = {x^2 - p x^3 - p x - p}: tail x^3 lies outside B = {1, x}
        let f = Field::padic(3).unwrap();
        let ctx = ctx0(1);
        let g = TatePoly::from_terms(
            &f,
            vec![
                (m(&[2]), f.one()),
                (m(&[3]), f.from_i64(-3)),
                (m(&[1]), f.from_i64(-3)),
                (m(&[0]), f.from_i64(-3)),
            ],
        );
        assert!(matches!(
            mulmat_iter(&f, &[g.clone()], &ctx, 6),
            Err(Error::NotReducedOverK(_))
        ));
        let t = mulmat_iter_nonreduced(&f, &[g.clone()], &ctx, 6).unwrap();
        let report = check_mulmat(&f, &t, &[g.clone()], &ctx).unwrap();
        assert!(report.ok(), "{:?}", report.mismatches);
        // annihilation through the nonreduced presentation
        let img = eval_poly_at_matrices(&f, &g, &t.mats, &t.one);
        assert!(img.iter().all(|s| s.is_zero_class()));
    }

    #[test]
    fn not_residue_reduced_rejected() {
        // two elements sharing the residue leading monomial x^2
        let f = Field::padic(3).unwrap();
        let ctx = ctx0(1);
        let bad = TatePoly::from_terms(
            &f,
            vec![
                (m(&[2]), f.one()),
                (m(&[1]), f.from_i64(-3)),
                (m(&[0]), f.from_i64(-3)),
            ],
        );
        let noise = TatePoly::from_terms(
            &f,
            vec![(m(&[3]), f.one()), (m(&[2]), f.one())],
        );
        let err = mulmat_iter_nonreduced(&f, &[bad, noise], &ctx, 4);
        assert!(matches!(err, Err(Error::NotReducedModPi(_))));
    }

    #[test]
    fn poly_mode_classical() {
        // paper example: {x^2 - (1/2) y^2, y^3 - (1/2) y^2} over Q_2, lex
        let f = Field::padic(2).unwrap();
        let ctx = OrderContext::polynomial(
            MonomialOrder::new(OrderKind::Lex, 2),
            default_var_names(2),
        );
        let half = f.from_rational(&BigRational::new(1.into(), 2.into()));
        let basis = vec![
            TatePoly::from_terms(
                &f,
                vec![(m(&[2, 0]), f.one()), (m(&[0, 2]), f.neg(&half))],
            ),
            TatePoly::from_terms(
                &f,
                vec![(m(&[0, 3]), f.one()), (m(&[0, 2]), f.neg(&half))],
            ),
        ];
        let t = mulmat_poly(&f, &basis, &ctx).unwrap();
        assert_eq!(t.dim(), 6);
        // all entries exact
        for mat in &t.mats {
            for e in mat.entries() {
                assert!(e.prec() == Prec::Inf);
            }
        }
        let report = check_mulmat(&f, &t, &basis, &ctx).unwrap();
        assert!(report.ok(), "{:?}", report.mismatches);
        // univariate: G = {x - c}
        let ctx1 = OrderContext::polynomial(
            MonomialOrder::new(OrderKind::Lex, 1),
            default_var_names(1),
        );
        let c = f.from_rational(&BigRational::new(7.into(), 3.into()));
        let g = TatePoly::from_terms(&f, vec![(m(&[1]), f.one()), (m(&[0]), f.neg(&c))]);
        let t = mulmat_poly(&f, &[g], &ctx1).unwrap();
        assert!(f.sub(t.mats[0].at(0, 0), &c).is_exact_zero());
        // monomial ideal: {x^2, xy, y^2}: B = {1, x, y}
        let basis = vec![
            TatePoly::term(m(&[2, 0]), f.one()),
            TatePoly::term(m(&[1, 1]), f.one()),
            TatePoly::term(m(&[0, 2]), f.one()),
        ];
        let t = mulmat_poly(&f, &basis, &ctx).unwrap();
        assert_eq!(t.dim(), 3);
    }

    #[test]
    fn fault_injection_caught_by_oracle() {
        let f = Field::padic(2).unwrap();
        let ctx = ctx0(2);
        let basis = vec![
            TatePoly::term(m(&[2, 0]), f.one()),
            TatePoly::from_terms(
                &f,
                vec![(m(&[0, 2]), f.one()), (m(&[1, 1]), f.from_i64(-2))],
            ),
        ];
        let mut t = mulmat_iter(&f, &basis, &ctx, 8).unwrap();
        *t.mats[1].at_mut(2, 1) = f.truncate(&f.from_u64(3), 8);
        let report = check_mulmat(&f, &t, &basis, &ctx).unwrap();
        assert!(!report.ok());
        assert_eq!(report.mismatches[0].0, 1);
    }
}
