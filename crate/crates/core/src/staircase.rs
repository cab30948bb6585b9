//! Staircase of a zero-dimensional leading-term ideal: the quotient basis
//! monomials, the boundary pairs `(i, m)` with `X_i m` outside the staircase,
//! and the provenance used to fill each multiplication-matrix column.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, OrderContext};
use std::collections::BTreeMap;

/// How the column of `X_i m` is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `X_i m` is itself a staircase monomial (unit column).
    InB(usize),
    /// `X_i m` is the leading monomial of basis element `g`.
    Corner(usize),
    /// `m = X_j m'` with `X_i m'` outside the staircase: the column is
    /// `T_j` applied to the column of `(i, m')`.
    Product { var: usize },
}

#[derive(Clone, Debug)]
pub struct BoundaryPair {
    /// Variable index `i`.
    pub var: usize,
    /// Index of `m` in the staircase.
    pub m_idx: usize,
    /// The monomial `X_i m`.
    pub target: Monomial,
    pub prov: Provenance,
}

#[derive(Clone, Debug)]
pub struct Staircase {
    /// Staircase monomials, ascending in the context order.
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    /// Leading monomials the staircase was built from.
    pub lms: Vec<Monomial>,
    /// All pairs `(i, m in B)`, ascending by `X_i m` in the context order.
    pub pairs: Vec<BoundaryPair>,
}

impl Staircase {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Size of the boundary: monomials `X_i m` outside the staircase.
    pub fn boundary_size(&self) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        for p in &self.pairs {
            if !matches!(p.prov, Provenance::InB(_)) {
                seen.insert(p.target.clone());
            }
        }
        seen.len()
    }

    pub fn one_position(&self) -> Option<usize> {
        self.position(&Monomial::one(self.monomials.first()?.nvars()))
    }
}

/// Builds the staircase from the leading monomials of a basis.
///
/// Zero-dimensionality requires a pure power of every variable among the
/// leading monomials; the complement of the monomial ideal is then finite.
pub fn build_staircase(lms: &[Monomial], ctx: &OrderContext) -> Result<Staircase> {
    let n = ctx.nvars;
    let mut bound = vec![0u32; n];
    for k in 0..n {
        let pure = lms
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == k || e == 0))
            .map(|m| m.0[k])
            .min();
        match pure {
            Some(a) => bound[k] = a,
            None => {
                return Err(Error::NotZeroDimensional(format!(
                    "no pure power of {} among the leading monomials",
                    ctx.var_names[k]
                )))
            }
        }
    }
    // enumerate the box and keep monomials outside the leading-term ideal
    let mut monomials = Vec::new();
    let mut cur = vec![0u32; n];
    'outer: loop {
        let m = Monomial(cur.clone());
        if !lms.iter().any(|lm| lm.divides(&m)) {
            monomials.push(m);
        }
        for k in 0..n {
            cur[k] += 1;
            if cur[k] < bound[k].max(1) {
                continue 'outer;
            }
            cur[k] = 0;
        }
        break;
    }
    monomials.sort_by(|a, b| ctx.cmp_monomials(a, b));
    let index: BTreeMap<Monomial, usize> =
        monomials.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();

    let mut pairs = Vec::new();
    for i in 0..n {
        for (m_idx, m) in monomials.iter().enumerate() {
            let target = m.mul_var(i);
            let prov = if let Some(t) = index.get(&target) {
                Provenance::InB(*t)
            } else if let Some(g) = lms.iter().position(|lm| *lm == target) {
                Provenance::Corner(g)
            } else {
                // smallest variable j dividing m with X_i * (m / X_j) outside B
                let mut found = None;
                for j in 0..n {
                    if m.0[j] == 0 {
                        continue;
                    }
                    let m2 = m.div_var(j).unwrap();
                    if !index.contains_key(&m2.mul_var(i)) {
                        found = Some(j);
                        break;
                    }
                }
                match found {
                    Some(var) => Provenance::Product { var },
                    None => {
                        return Err(Error::Invalid(format!(
                            "no product decomposition for boundary monomial {}",
                            ctx.format_monomial(&target)
                        )))
                    }
                }
            };
            pairs.push(BoundaryPair { var: i, m_idx, target, prov });
        }
    }
    pairs.sort_by(|a, b| {
        ctx.cmp_monomials(&a.target, &b.target).then(a.var.cmp(&b.var))
    });
    Ok(Staircase { monomials, index, lms: lms.to_vec(), pairs })
}
