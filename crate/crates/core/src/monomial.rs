//! Monomials, monomial orders and order contexts (order + log-radii).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Exponent vector; the variable count is fixed by the surrounding context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A classical monomial order together with a variable priority permutation;
/// `perm[0]` is the most significant variable index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, n: usize) -> MonomialOrder {
        MonomialOrder { kind, perm: (0..n).collect() }
    }

    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> Result<MonomialOrder> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(Error::Invalid("not a permutation of the variables".into()));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, perm })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.perm {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for &v in self.perm.iter().rev() {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        // larger exponent on the least significant side loses
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Log-radii of the ambient Tate algebra, in fine units. `Polynomial` stands
/// for all radii equal to `+inf`, i.e. the plain polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Radii {
    Polynomial,
    Tate(Vec<i64>),
}

/// Everything needed to compare terms: variable count and names, a monomial
/// order and the convergence log-radii.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderContext {
    pub nvars: usize,
    pub order: MonomialOrder,
    pub radii: Radii,
    pub var_names: Vec<String>,
}

impl OrderContext {
    /// `radii` entries are fine-unit values, `None` meaning `+inf`. Mixed
    /// finite and infinite radii are rejected.
    pub fn new(
        order: MonomialOrder,
        radii: Vec<Option<i64>>,
        var_names: Vec<String>,
    ) -> Result<OrderContext> {
        let n = radii.len();
        if order.perm.len() != n || var_names.len() != n {
            return Err(Error::InconsistentDimension("order context sizes".into()));
        }
        let finite = radii.iter().filter(|r| r.is_some()).count();
        let radii = if finite == 0 {
            Radii::Polynomial
        } else if finite == n {
            Radii::Tate(radii.into_iter().map(|r| r.unwrap()).collect())
        } else {
            return Err(Error::Invalid(
                "mixed finite and infinite log-radii are not supported".into(),
            ));
        };
        Ok(OrderContext { nvars: n, order, radii, var_names })
    }

    pub fn tate(order: MonomialOrder, radii: Vec<i64>, var_names: Vec<String>) -> OrderContext {
        let n = radii.len();
        OrderContext { nvars: n, order, radii: Radii::Tate(radii), var_names }
    }

    pub fn polynomial(order: MonomialOrder, var_names: Vec<String>) -> OrderContext {
        OrderContext { nvars: var_names.len(), order, radii: Radii::Polynomial, var_names }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.radii, Radii::Polynomial)
    }

    pub fn finite_radii(&self) -> Option<&[i64]> {
        match &self.radii {
            Radii::Polynomial => None,
            Radii::Tate(r) => Some(r),
        }
    }

    /// Gauss valuation of a monomial with unit coefficient: `-r . exponents`.
    pub fn monomial_fine_val(&self, m: &Monomial) -> i64 {
        match &self.radii {
            Radii::Polynomial => 0,
            Radii::Tate(r) => {
                -m.0.iter().zip(r).map(|(&e, &ri)| e as i64 * ri).sum::<i64>()
            }
        }
    }

    /// Term order restricted to monomials with unit coefficients; this is the
    /// processing order of the multiplication-matrix engines.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.radii {
            Radii::Polynomial => self.order.cmp(a, b),
            Radii::Tate(_) => {
                // smaller Gauss valuation wins
                match self.monomial_fine_val(b).cmp(&self.monomial_fine_val(a)) {
                    Ordering::Equal => self.order.cmp(a, b),
                    ord => ord,
                }
            }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 1 {
                parts.push(self.var_names[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.var_names[i], e));
            }
        }
        parts.join("*")
    }
}

pub fn default_var_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (0..n).map(|i| format!("x{}", i + 1)).collect(),
    }
}
