//! Newton polygons, slope factorization and valuation eigenspaces.
//!
//! The polygon of a monic polynomial splits its roots by valuation; the
//! factor with roots of valuation below a threshold is separated by scaling
//! the variable so the threshold moves to zero, reducing modulo the maximal
//! ideal and Hensel-lifting the resulting coprime factorization (the monic
//! factor carries the roots of nonnegative scaled valuation, the complement
//! reduces to a unit constant).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel, spoly_divrem_monic, spoly_eval_matrix, spoly_mul, spoly_sub};
use crate::matrix::Matrix;
use crate::scalar::{Prec, Scalar};
use num_rational::Ratio;

/// Lower convex hull of a set of points `(index, fine valuation)`, with the
/// derived root valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub deg: usize,
    /// Roots of infinite valuation (vanishing low coefficients).
    pub inf_roots: usize,
    /// Hull vertices, increasing index.
    pub vertices: Vec<(usize, i64)>,
    /// Finite root valuations (fine units) with multiplicities, nonincreasing
    /// left to right; multiplicities plus `inf_roots` sum to `deg`.
    pub root_vals: Vec<(Ratio<i64>, usize)>,
}

impl NewtonPolygon {
    pub fn root_count_below(&self, s_fine: i64) -> usize {
        let s = Ratio::from_integer(s_fine);
        self.root_vals.iter().filter(|(v, _)| *v < s).map(|(_, m)| m).sum()
    }
}

fn lower_hull(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // slope(a,b) >= slope(b,p) means b is not on the strict lower hull
            let lhs = (b.1 - a.1) as i128 * (p.0 - b.0) as i128;
            let rhs = (p.1 - b.1) as i128 * (b.0 - a.0) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn polygon_from_points(deg: usize, points: Vec<(usize, i64)>) -> Result<NewtonPolygon> {
    if points.is_empty() {
        return Err(Error::Invalid("Newton polygon of the zero polynomial".into()));
    }
    let hull = lower_hull(&points);
    let inf_roots = hull[0].0;
    let mut root_vals = Vec::new();
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let mult = x2 - x1;
        let val = Ratio::new(-(y2 - y1), (x2 - x1) as i64);
        root_vals.push((val, mult));
    }
    Ok(NewtonPolygon { deg, inf_roots, vertices: hull, root_vals })
}

/// Newton polygon of a monic polynomial with certified (or exactly zero)
/// coefficients, ascending order.
pub fn newton_polygon(field: &Field, chi: &[Scalar]) -> Result<NewtonPolygon> {
    let _ = field;
    if chi.is_empty() {
        return Err(Error::Invalid("Newton polygon of the zero polynomial".into()));
    }
    let deg = chi.len() - 1;
    let mut points = Vec::new();
    for (i, c) in chi.iter().enumerate() {
        match c.certified_val() {
            Some(v) => points.push((i, v)),
            None => {
                if !c.is_exact_zero() {
                    return Err(Error::InsufficientPrecision(format!(
                        "coefficient {i} is a zero class"
                    )));
                }
            }
        }
    }
    polygon_from_points(deg, points)
}

/// Number of roots of valuation `< s`, certified against zero-at-precision
/// coefficients: the count must agree whether those coefficients are treated
/// as exactly zero or as attaining their precision bound.
pub fn certified_root_count_below(field: &Field, chi: &[Scalar], s_fine: i64) -> Result<usize> {
    let _ = field;
    let deg = chi.len().checked_sub(1).ok_or_else(|| {
        Error::Invalid("Newton polygon of the zero polynomial".into())
    })?;
    if chi[deg].certified_val().is_none() {
        return Err(Error::InsufficientPrecision("uncertified leading coefficient".into()));
    }
    let mut optimistic = Vec::new();
    let mut pessimistic = Vec::new();
    for (i, c) in chi.iter().enumerate() {
        match c.certified_val() {
            Some(v) => {
                optimistic.push((i, v));
                pessimistic.push((i, v));
            }
            None => {
                if let Prec::Finite(n) = c.prec() {
                    pessimistic.push((i, n));
                }
            }
        }
    }
    let opt = polygon_from_points(deg, optimistic)?.root_count_below(s_fine);
    let pess = polygon_from_points(deg, pessimistic)?.root_count_below(s_fine);
    if opt != pess {
        return Err(Error::InsufficientPrecision(format!(
            "root count below {} is ambiguous ({} vs {})",
            s_fine, opt, pess
        )));
    }
    Ok(opt)
}

/// Certified check for a root of valuation below `s`.
pub fn has_root_below(field: &Field, chi: &[Scalar], s_fine: i64) -> Result<bool> {
    Ok(certified_root_count_below(field, chi, s_fine)? > 0)
}

fn is_exact_one(field: &Field, s: &Scalar) -> bool {
    field.sub(s, &field.one()).is_exact_zero()
}

/// Residue polynomial lifted to exact integer scalars.
fn lift_residue_poly(field: &Field, r: &[u64]) -> Vec<Scalar> {
    r.iter().map(|&d| field.from_u64(d)).collect()
}

fn truncate_poly(field: &Field, p: &[Scalar], fine: i64) -> Vec<Scalar> {
    p.iter().map(|c| field.truncate(c, fine)).collect()
}

/// Replaces each coefficient by the exact value of its digits below `fine`:
/// the canonical representative of its class modulo `eta^fine`.
fn lift_poly(field: &Field, p: &[Scalar], fine: i64) -> Vec<Scalar> {
    p.iter().map(|c| field.split_at(c, fine).0).collect()
}

fn poly_all_zero_at(p: &[Scalar], fine: i64) -> bool {
    p.iter().all(|c| c.val_bound() >= Prec::Finite(fine))
}

/// Splits a monic `chi` as `(chi_big, chi_small)` where `chi_big` collects
/// the roots of valuation `< s` and `chi_small` those of valuation `>= s`;
/// both are monic and their product equals `chi` at the working precision.
pub fn slope_factor(
    field: &Field,
    chi: &[Scalar],
    s_fine: i64,
    work_fine: i64,
) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let deg = chi.len().checked_sub(1).ok_or_else(|| {
        Error::Invalid("slope factorization of the zero polynomial".into())
    })?;
    if !is_exact_one(field, &chi[deg]) {
        return Err(Error::Invalid("slope factorization expects a monic polynomial".into()));
    }
    let big_count = certified_root_count_below(field, chi, s_fine)?;
    let k = deg - big_count; // degree of chi_small
    if big_count == 0 {
        return Ok((vec![field.one()], chi.to_vec()));
    }
    if k == 0 {
        return Ok((chi.to_vec(), vec![field.one()]));
    }

    // scale x = eta^s y and normalize so the minimum scaled valuation is 0
    let wmin = chi
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.certified_val().map(|v| v + s_fine * i as i64))
        .min()
        .unwrap();
    let g: Vec<Scalar> = chi
        .iter()
        .enumerate()
        .map(|(i, c)| field.truncate(&field.shift(c, s_fine * i as i64 - wmin), work_fine))
        .collect();
    let target = g
        .iter()
        .filter_map(|c| c.prec().finite())
        .min()
        .unwrap_or(work_fine)
        .min(work_fine);

    // reduction modulo eta: degree k with a unit leading coefficient
    let mut gbar = Vec::with_capacity(deg + 1);
    for c in &g {
        gbar.push(field.fine_residue(c)?);
    }
    if gbar[k] == 0 || gbar[k + 1..].iter().any(|&d| d != 0) {
        return Err(Error::InsufficientPrecision(
            "scaled reduction does not match the Newton polygon".into(),
        ));
    }
    gbar.truncate(k + 1);

    // Hensel: g = fac_h * fac_g with fac_g monic of degree k lifting gbar/lc
    // and fac_h lifting the unit constant lc. Quadratic lifting with the
    // Bezout pair s*fac_h + t*fac_g = 1 maintained alongside (deg s < k,
    // deg t < deg fac_h); the division step keeps all degrees bounded.
    let p = field.p();
    let gamma = gbar[k];
    let gamma_inv = crate::scalar::inv_mod_p(gamma, p);
    let gbar_monic: Vec<u64> =
        gbar.iter().map(|&d| (d as u128 * gamma_inv as u128 % p as u128) as u64).collect();
    let mut fac_g = lift_residue_poly(field, &gbar_monic);
    let mut fac_h = vec![field.from_u64(gamma)];
    let mut bez_s: Vec<Scalar> = vec![field.from_u64(gamma_inv)];
    let mut bez_t: Vec<Scalar> = vec![Scalar::exact_zero()];
    let h_len = deg - k + 1;

    // the factorization is correct modulo eta^level; the level doubles each
    // round, and all polynomials are truncated at it so that coefficients
    // beyond the degree bounds reduce to certified zero classes
    let mut level: i64 = 1;
    let mut done = false;
    for _ in 0..64 {
        let e = truncate_poly(field, &spoly_sub(field, &g, &spoly_mul(field, &fac_h, &fac_g)), target);
        if poly_all_zero_at(&e, target) {
            done = true;
            break;
        }
        level = (2 * level).min(target);
        let e = lift_poly(field, &e, target);
        let (q, r) = spoly_divrem_monic(field, &spoly_mul(field, &bez_s, &e), &fac_g);
        let mut h_new = spoly_add(field, &fac_h, &spoly_mul(field, &bez_t, &e));
        h_new = spoly_add(field, &h_new, &spoly_mul(field, &q, &fac_h));
        fac_h = poly_clamp(field, lift_poly(field, &h_new, level), h_len)?;
        fac_g = lift_poly(field, &spoly_add(field, &fac_g, &r), level);
        fac_g.truncate(k + 1);
        fac_g[k] = field.one();

        // refresh the Bezout pair: s*fac_h + t*fac_g = 1
        let mut berr = spoly_sub(
            field,
            &spoly_add(
                field,
                &spoly_mul(field, &bez_s, &fac_h),
                &spoly_mul(field, &bez_t, &fac_g),
            ),
            &[field.one()],
        );
        berr = lift_poly(field, &berr, level);
        let (c, d) = spoly_divrem_monic(field, &spoly_mul(field, &bez_s, &berr), &fac_g);
        bez_s = lift_poly(field, &spoly_sub(field, &bez_s, &d), level);
        let mut t_new = spoly_sub(field, &bez_t, &spoly_mul(field, &bez_t, &berr));
        t_new = spoly_sub(field, &t_new, &spoly_mul(field, &c, &fac_h));
        bez_t = poly_clamp(field, lift_poly(field, &t_new, level), h_len)?;
    }
    if !done {
        return Err(Error::InsufficientPrecision("Hensel lifting did not certify".into()));
    }
    // the lift is only certified modulo eta^target
    let mut big_g = truncate_poly(field, &fac_g, target);
    big_g[k] = field.one();

    // undo the scaling: chi_small(x) = eta^(s k) G(eta^{-s} x)
    let mut chi_small: Vec<Scalar> = big_g
        .iter()
        .enumerate()
        .map(|(i, c)| field.shift(c, s_fine * (k as i64 - i as i64)))
        .collect();
    chi_small[k] = field.one();
    let (chi_big, rem) = spoly_divrem_monic(field, chi, &chi_small);
    if !rem.iter().all(|c| c.is_zero_class()) {
        return Err(Error::InsufficientPrecision(
            "slope factor division left a certified nonzero remainder".into(),
        ));
    }
    Ok((chi_big, chi_small))
}

fn spoly_add(field: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Scalar::exact_zero());
    for (i, c) in b.iter().enumerate() {
        out[i] = field.add(&out[i], c);
    }
    out
}

/// Drops coefficients beyond `max_len`; they must all be zero classes.
fn poly_clamp(field: &Field, mut p: Vec<Scalar>, max_len: usize) -> Result<Vec<Scalar>> {
    let _ = field;
    for c in p.iter().skip(max_len) {
        if c.certified_val().is_some() {
            return Err(Error::InsufficientPrecision(
                "Hensel correction exceeded its degree bound".into(),
            ));
        }
    }
    p.truncate(max_len);
    Ok(p)
}

/// Basis of `Big_s(f)`: the kernel of `chi_big(f)` where `chi_big` collects
/// the eigenvalues of valuation `< s`. The dimension must match the Newton
/// polygon count.
pub fn big_subspace(field: &Field, f: &Matrix, s_fine: i64, work_fine: i64) -> Result<Matrix> {
    let chi = crate::linalg::charpoly(field, f)?;
    let (chi_big, _) = slope_factor(field, &chi, s_fine, work_fine)?;
    let dim_expected = chi_big.len() - 1;
    if dim_expected == 0 {
        return Ok(Matrix::zero(f.rows(), 0));
    }
    let g = spoly_eval_matrix(field, &chi_big, f);
    let ker = kernel(field, &g)?;
    if ker.cols() != dim_expected {
        return Err(Error::InsufficientPrecision(format!(
            "Big_s dimension {} does not match the polygon count {}",
            ker.cols(),
            dim_expected
        )));
    }
    Ok(ker)
}
