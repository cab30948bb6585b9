//! FGLM over a field: from commuting multiplication matrices and the vector
//! of the monomial 1, enumerate monomials in the target order, track normal
//! form vectors, and read off the reduced Gröbner basis from the first linear
//! dependencies.

use crate::classical::{CoefField, CPoly};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};

/// Dense square matrix over an abstract field element type, row-major.
pub type FMat<E> = Vec<Vec<E>>;

fn mat_vec<F: CoefField>(cf: &F, m: &FMat<F::Elt>, v: &[F::Elt]) -> Vec<F::Elt> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let mut acc = cf.zero();
            for k in 0..n {
                acc = cf.add(&acc, &cf.mul(&m[i][k], &v[k]));
            }
            acc
        })
        .collect()
}

fn mats_commute<F: CoefField>(cf: &F, a: &FMat<F::Elt>, b: &FMat<F::Elt>) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in 0..n {
            let mut ab = cf.zero();
            let mut ba = cf.zero();
            for k in 0..n {
                ab = cf.add(&ab, &cf.mul(&a[i][k], &b[k][j]));
                ba = cf.add(&ba, &cf.mul(&b[i][k], &a[k][j]));
            }
            if ab != ba {
                return false;
            }
        }
    }
    true
}

/// Incremental Gaussian elimination that reports, for a dependent vector, its
/// expression in terms of the previously inserted ones.
struct DependencyTracker<E> {
    dim: usize,
    /// (pivot position, reduced row, expression over inserted vectors)
    rows: Vec<(usize, Vec<E>, Vec<E>)>,
    inserted: usize,
}

impl<E: Clone + PartialEq + std::fmt::Debug> DependencyTracker<E> {
    fn new(dim: usize) -> Self {
        DependencyTracker { dim, rows: Vec::new(), inserted: 0 }
    }

    /// `Ok(None)`: vector inserted (independent). `Ok(Some(expr))`: vector is
    /// `sum expr[k] * inserted_k`.
    fn offer<F: CoefField<Elt = E>>(&mut self, cf: &F, v: &[E]) -> Result<Option<Vec<E>>> {
        let mut v = v.to_vec();
        let mut expr = vec![cf.zero(); self.inserted];
        for (piv, row, rexpr) in &self.rows {
            if cf.is_zero(&v[*piv]) {
                continue;
            }
            let c = v[*piv].clone();
            for k in 0..self.dim {
                v[k] = cf.sub(&v[k], &cf.mul(&c, &row[k]));
            }
            for k in 0..rexpr.len() {
                expr[k] = cf.add(&expr[k], &cf.mul(&c, &rexpr[k]));
            }
        }
        match v.iter().position(|x| !cf.is_zero(x)) {
            None => Ok(Some(expr)),
            Some(piv) => {
                let inv = cf.inv(&v[piv])?;
                let row: Vec<E> = v.iter().map(|x| cf.mul(x, &inv)).collect();
                let mut rexpr: Vec<E> = expr.iter().map(|x| cf.neg(&cf.mul(x, &inv))).collect();
                rexpr.resize(self.inserted + 1, cf.zero());
                rexpr[self.inserted] = inv;
                self.rows.push((piv, row, rexpr));
                self.inserted += 1;
                Ok(None)
            }
        }
    }
}

/// Output of the field-level FGLM enumeration.
#[derive(Clone, Debug)]
pub struct FglmBasis<E> {
    /// Staircase of the target order, ascending.
    pub staircase: Vec<Monomial>,
    /// Reduced Gröbner basis elements, tails supported on the staircase.
    pub basis: Vec<CPoly<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> FglmBasis<E> {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.lm().unwrap().clone()).collect()
    }
}

/// Classical FGLM: `mats` are the pairwise-commuting multiplication matrices
/// of a zero-dimensional quotient in some basis, `one` the vector of the
/// monomial 1. Returns the reduced Gröbner basis for `order` together with
/// its staircase.
pub fn fglm_field<F: CoefField>(
    cf: &F,
    order: &MonomialOrder,
    mats: &[FMat<F::Elt>],
    one: &[F::Elt],
) -> Result<FglmBasis<F::Elt>> {
    let n = mats.len();
    let dim = one.len();
    for m in mats {
        if m.len() != dim || m.iter().any(|r| r.len() != dim) {
            return Err(Error::InconsistentDimension("multiplication matrix size".into()));
        }
    }
    for i in 0..n {
        for j in 0..i {
            if !mats_commute(cf, &mats[i], &mats[j]) {
                return Err(Error::NonCommuting { i, j });
            }
        }
    }
    if dim == 0 {
        // unit ideal
        let one_poly = CPoly::from_terms(cf, order, vec![(Monomial::one(n), cf.one())]);
        return Ok(FglmBasis { staircase: Vec::new(), basis: vec![one_poly] });
    }
    if one.iter().all(|c| cf.is_zero(c)) {
        return Err(Error::InconsistentDimension(
            "the vector of 1 is zero in a nonzero quotient".into(),
        ));
    }

    let mut tracker = DependencyTracker::new(dim);
    let mut staircase: Vec<Monomial> = Vec::new();
    let mut vectors: Vec<Vec<F::Elt>> = Vec::new();
    let mut basis: Vec<CPoly<F::Elt>> = Vec::new();
    // candidates: (monomial, variable, index of parent in staircase)
    let mut candidates: Vec<(Monomial, usize, usize)> = Vec::new();

    let offer_one = tracker.offer(cf, one)?;
    debug_assert!(offer_one.is_none());
    staircase.push(Monomial::one(n));
    vectors.push(one.to_vec());
    for i in 0..n {
        candidates.push((Monomial::var(n, i), i, 0));
    }

    while !candidates.is_empty() {
        // extract the minimum in the target order
        let mut best = 0;
        for k in 1..candidates.len() {
            if order.cmp(&candidates[k].0, &candidates[best].0) == std::cmp::Ordering::Less {
                best = k;
            }
        }
        let (m, var, parent) = candidates.swap_remove(best);
        if candidates.iter().any(|(mm, _, _)| *mm == m) {
            // duplicate: a later parent generates the same monomial
            candidates.retain(|(mm, _, _)| *mm != m);
        }
        if basis.iter().any(|g| g.lm().unwrap().divides(&m)) {
            continue;
        }
        let v = mat_vec(cf, &mats[var], &vectors[parent]);
        match tracker.offer(cf, &v)? {
            None => {
                let idx = staircase.len();
                staircase.push(m.clone());
                vectors.push(v);
                for i in 0..n {
                    candidates.push((m.mul_var(i), i, idx));
                }
                if staircase.len() > dim {
                    return Err(Error::InconsistentDimension(
                        "staircase exceeds the quotient dimension".into(),
                    ));
                }
            }
            Some(expr) => {
                let mut terms = vec![(m.clone(), cf.one())];
                for (k, c) in expr.iter().enumerate() {
                    if !cf.is_zero(c) {
                        terms.push((staircase[k].clone(), cf.neg(c)));
                    }
                }
                basis.push(CPoly::from_terms(cf, order, terms));
            }
        }
    }
    if staircase.len() != dim {
        return Err(Error::InconsistentDimension(format!(
            "enumerated staircase has size {} in a quotient of dimension {}",
            staircase.len(),
            dim
        )));
    }
    basis.sort_by(|a, b| order.cmp(a.lm().unwrap(), b.lm().unwrap()));
    Ok(FglmBasis { staircase, basis })
}
