//! Brute-force Tate division: the reference normal form every fast path is
//! tested against. Deliberately independent of the staircase and provenance
//! machinery — reduction works directly on term data, always rewriting the
//! maximal reducible term, until everything left is either outside the
//! leading-term ideal or certified below the valuation floor.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, OrderContext};
use crate::mulmat::MulMatSet;
use crate::scalar::{Prec, Scalar};
use crate::tate_poly::TatePoly;
use rand::Rng;

#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub reducer: usize,
    pub mult_mono: Monomial,
    pub mult_coef: Scalar,
}

/// Witness of a reduction: replaying the steps against the basis reproduces
/// the remainder; terms of Gauss valuation at least `floor_fine` may have
/// been left untouched.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub floor_fine: i64,
}

/// Gauss valuation lower bound of a term (coefficient bound for zero classes).
fn term_val_bound(ctx: &OrderContext, m: &Monomial, c: &Scalar) -> Prec {
    c.val_bound().add_fine(ctx.monomial_fine_val(m))
}

fn term_order_key(ctx: &OrderContext, m: &Monomial, c: &Scalar) -> (i64, Monomial) {
    let v = match term_val_bound(ctx, m, c) {
        Prec::Finite(v) => v,
        Prec::Inf => i64::MAX,
    };
    (v, m.clone())
}

/// Step budget: a termination guard, not a proof. Scales with the staircase
/// volume estimated from the pure powers among the leading monomials.
fn step_budget(field: &Field, basis_lms: &[Monomial], f: &TatePoly, floor_fine: i64) -> u64 {
    let n = basis_lms.first().map_or(1, |m| m.nvars());
    let mut volume: u64 = 1;
    for k in 0..n {
        let pure = basis_lms
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == k || e == 0))
            .map(|m| m.0[k] as u64)
            .min()
            .unwrap_or(8);
        volume = volume.saturating_mul(pure.max(1)).min(1 << 20);
    }
    let prec = (floor_fine.unsigned_abs() / field.ram() as u64).max(1);
    10u64.saturating_mul(volume)
        .saturating_mul(prec)
        .saturating_mul(f.terms().len().max(1) as u64)
        .max(1000)
}

/// Reduces `f` against a normalized basis. The remainder is supported on
/// monomials outside the leading-term ideal plus terms of Gauss valuation at
/// least `floor_fine`. Pass an rng to randomize the reducer choice among the
/// eligible basis elements (used by the confluence tests).
pub fn nf_bruteforce(
    field: &Field,
    f: &TatePoly,
    basis: &[TatePoly],
    ctx: &OrderContext,
    floor_fine: i64,
    mut rng: Option<&mut dyn rand::RngCore>,
) -> Result<(TatePoly, ReductionTrace)> {
    let mut lts = Vec::with_capacity(basis.len());
    for g in basis {
        let (lm, lc) = g.leading_term(field, ctx)?;
        lts.push((lm.clone(), lc.clone()));
    }
    let lms: Vec<Monomial> = lts.iter().map(|(m, _)| m.clone()).collect();
    let budget = step_budget(field, &lms, f, floor_fine);

    let polynomial_mode = ctx.is_polynomial();
    let mut work = f.clone();
    let mut steps = Vec::new();
    let mut count: u64 = 0;
    loop {
        // maximal reducible term that is not frozen below the floor
        let mut pick: Option<(Monomial, Scalar, (i64, Monomial))> = None;
        for (m, c) in work.terms() {
            if !polynomial_mode {
                if let Prec::Finite(v) = term_val_bound(ctx, m, c) {
                    if v >= floor_fine {
                        continue;
                    }
                } else {
                    continue; // exactly zero
                }
            }
            if !lms.iter().any(|lm| lm.divides(m)) {
                continue;
            }
            let key = term_order_key(ctx, m, c);
            let better = match &pick {
                None => true,
                // smaller valuation bound wins; ties to the larger monomial
                Some((_, _, bk)) => {
                    key.0 < bk.0 || (key.0 == bk.0 && ctx.order.cmp(&key.1, &bk.1).is_gt())
                }
            };
            if better {
                pick = Some((m.clone(), c.clone(), key));
            }
        }
        let Some((m, c, _)) = pick else { break };
        count += 1;
        if count > budget {
            return Err(Error::NonTerminating);
        }
        let eligible: Vec<usize> =
            (0..lts.len()).filter(|&g| lts[g].0.divides(&m)).collect();
        let g = match rng.as_mut() {
            Some(r) => eligible[r.gen_range(0..eligible.len())],
            None => eligible[0],
        };
        let (glm, glc) = &lts[g];
        let mult_mono = m.try_div(glm).unwrap();
        let mult_coef = field.div(&c, glc)?;
        // remove the target term exactly, then subtract the multiple of the tail
        work.remove(&m);
        let mut extra = Vec::new();
        for (tm, tc) in basis[g].terms() {
            if tm == glm {
                continue;
            }
            extra.push((tm.mul(&mult_mono), field.neg(&field.mul(tc, &mult_coef))));
        }
        work = work.add(field, &TatePoly::from_terms(field, extra));
        steps.push(ReductionStep { reducer: g, mult_mono, mult_coef });
    }
    Ok((work, ReductionTrace { steps, floor_fine }))
}

/// Replays a trace: `f - sum mult_k g_k` must agree with the remainder up to
/// zero classes.
pub fn replay_matches(
    field: &Field,
    f: &TatePoly,
    basis: &[TatePoly],
    trace: &ReductionTrace,
    remainder: &TatePoly,
) -> bool {
    let mut acc = f.clone();
    for step in &trace.steps {
        let sub = basis[step.reducer].mul_term(field, &step.mult_mono, &step.mult_coef);
        acc = acc.sub(field, &sub);
    }
    let diff = acc.sub(field, remainder);
    diff.terms().iter().all(|(_, c)| c.is_zero_class())
}

/// Per-column comparison of multiplication matrices against the brute-force
/// normal forms, at the contracted precision.
#[derive(Clone, Debug, Default)]
pub struct MulMatCheckReport {
    /// `(variable, row, column, detail)` for every mismatch.
    pub mismatches: Vec<(usize, usize, usize, String)>,
    pub columns_checked: usize,
}

impl MulMatCheckReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_mulmat(
    field: &Field,
    t: &MulMatSet,
    basis: &[TatePoly],
    ctx: &OrderContext,
) -> Result<MulMatCheckReport> {
    let mut report = MulMatCheckReport::default();
    let delta = t.dim();
    let _ = delta;
    // the discard floor sits far enough above every contracted precision
    // that frozen tails cannot touch the compared digits
    let max_weight = t
        .staircase
        .monomials
        .iter()
        .map(|m| ctx.monomial_fine_val(m).abs())
        .max()
        .unwrap_or(0);
    let floor_fine = if t.prec_pi == i64::MAX {
        field.fine(64)
    } else {
        field.fine(t.prec_pi) + 2 * max_weight + 2 * field.fine_per_pi()
    };
    for (i, mat) in t.mats.iter().enumerate() {
        for (m_idx, m) in t.staircase.monomials.iter().enumerate() {
            let target = TatePoly::term(m.mul_var(i), field.one());
            let (nf, _) = nf_bruteforce(field, &target, basis, ctx, floor_fine, None)?;
            report.columns_checked += 1;
            for (mu_idx, mu) in t.staircase.monomials.iter().enumerate() {
                let expected = nf.coeff(mu).cloned().unwrap_or_else(Scalar::exact_zero);
                let got = mat.at(mu_idx, m_idx);
                let at = match t.contract_fine(field, i, mu_idx, m_idx) {
                    Some(c) => c,
                    None => match (expected.prec(), got.prec()) {
                        (Prec::Finite(a), Prec::Finite(b)) => a.min(b),
                        (Prec::Finite(a), _) => a,
                        (_, Prec::Finite(b)) => b,
                        _ => {
                            if !field.sub(&expected, got).is_exact_zero() {
                                report.mismatches.push((
                                    i,
                                    mu_idx,
                                    m_idx,
                                    format!(
                                        "expected {} got {}",
                                        field.format_scalar(&expected),
                                        field.format_scalar(got)
                                    ),
                                ));
                            }
                            continue;
                        }
                    },
                };
                if !field.agree_at(&expected, got, at) {
                    report.mismatches.push((
                        i,
                        mu_idx,
                        m_idx,
                        format!(
                            "at O(eta^{at}): expected {} got {}",
                            field.format_scalar(&expected),
                            field.format_scalar(got)
                        ),
                    ));
                }
            }
        }
    }
    Ok(report)
}
