//! Series expansion of the sigma function from purely algebraic data.
//!
//! The pipeline: expand the two-point prime function at infinity (all roots
//! of unity collapse analytically, so everything stays over the rationals),
//! assemble the N-point product formula as a symmetric series, rewrite it in
//! power sums, and peel off the coefficients of `u^alpha` degree by degree.
//! The leading layer is the Schur polynomial of the curve's partition; the
//! solve verifies this and that the residual vanishes identically.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::Zero;

use crate::curve::{
    dx_over_fy_unit, holomorphic_differentials, monomial_basis, puiseux_unit, CurveSpec,
};
use crate::error::{Error, Result};
use crate::fundform::ATable;
use crate::lambda::LambdaPoly;
use crate::rational::{rat, rat_int, Rational};
use crate::schur::Partition;
use crate::series::{TruncSeries, VarSet};

/// `sum_{i=1}^{n-1} eps_n^{-ik}`: `n - 1` when `n | k`, else `-1`.
///
/// This single identity removes every root of unity from the pipeline: the
/// conjugate branches at infinity enter only through such sums.
pub fn conjugate_sum_collapse(n: u32, k: u32) -> i64 {
    assert!(n >= 1 && k >= 1);
    if k % n == 0 {
        n as i64 - 1
    } else {
        -1
    }
}

/// Expansion cores of the prime function at infinity.
///
/// The full two-point function is `(t1 - t2) (t1 t2)^(g-1) * core`, and the
/// one-point degeneration is `t^g * core_at_infinity`.
#[derive(Debug, Clone)]
pub struct PrimeSeries {
    pub genus: u32,
    pub core: TruncSeries,
    pub core_at_infinity: TruncSeries,
}

/// Assembles the square of the prime-function core and takes its square
/// root, normalized to constant term 1.
///
/// The square splits into the two branch units `(1 + sum c'_i t^i)` of
/// `dx/f_y` and the exponential of the double integral of the fundamental
/// form, with every conjugate sum collapsed by [`conjugate_sum_collapse`].
pub fn prime_function_series(spec: &CurveSpec, a_table: &ATable, cutoff: i64) -> Result<PrimeSeries> {
    if a_table.cutoff < cutoff - 2 {
        return Err(Error::InsufficientCutoff { have: a_table.cutoff, need: cutoff - 2 });
    }
    let n = spec.n();
    let pair = VarSet::t_pair();
    let unit = dx_over_fy_unit(spec, cutoff)?;
    let u1 = unit.map_vars(pair.clone(), &[0]);
    let u2 = unit.map_vars(pair.clone(), &[1]);

    // exponent = sum a_kl S(k+1)/((k+1)(l+1)) (t2^(k+1)-t1^(k+1))(t2^(l+1)-t1^(l+1)).
    let mut exponent = TruncSeries::zero(pair.clone(), cutoff);
    for (&(k, l), a_kl) in &a_table.entries {
        let deg = k as i64 + l as i64 + 2;
        if deg > cutoff {
            continue;
        }
        let collapse = conjugate_sum_collapse(n, k + 1);
        let scale = rat(collapse, (k as i64 + 1) * (l as i64 + 1));
        let coeff = a_kl.scale(&scale);
        if coeff.is_zero() {
            continue;
        }
        let mut term = TruncSeries::zero(pair.clone(), cutoff);
        let (ke, le) = (k as i32 + 1, l as i32 + 1);
        // (t2^(k+1) - t1^(k+1)) (t2^(l+1) - t1^(l+1)) expanded directly.
        term.add_term(Box::new([0, ke + le]), LambdaPoly::one());
        term.add_term(Box::new([ke + le, 0]), LambdaPoly::one());
        term.add_term(Box::new([ke, le]), -&LambdaPoly::one());
        term.add_term(Box::new([le, ke]), -&LambdaPoly::one());
        exponent = exponent.add(&term.scale_poly(&coeff));
    }

    let core_sq = u1.mul(&u2).mul(&exponent.exp()?);
    let core = core_sq.nth_root(2)?;

    // t1 -> 0 slice.
    let single = VarSet::t_single();
    let mut core_inf = TruncSeries::zero(single, cutoff);
    for (e, c) in core.terms() {
        if e[0] == 0 {
            core_inf.add_term(Box::new([e[1]]), c.clone());
        }
    }
    Ok(PrimeSeries { genus: spec.genus(), core, core_at_infinity: core_inf })
}

/// The unit core of the one-point prime function: `E(inf, p) = t^g (1+...)`.
pub fn prime_function_at_infinity(prime: &PrimeSeries) -> TruncSeries {
    prime.core_at_infinity.clone()
}

/// The right-hand side of the N-point sigma formula as a symmetric series
/// in `t_1..t_N`:
///
/// `prod_i E(inf, p_i)^N / prod_{i<j} E(p_i, p_j) * det(f_i(p_j))`.
///
/// All powers of `t_i` cancel exactly, leaving the Vandermonde-divided
/// normalized determinant times unit series; the lowest layer is the Schur
/// polynomial of the extended partition.
pub fn assemble_f(
    spec: &CurveSpec,
    prime: &PrimeSeries,
    n_points: usize,
    cutoff: i64,
) -> Result<TruncSeries> {
    let g = spec.genus() as usize;
    if n_points < g.max(1) {
        return Err(Error::TooFewPoints(n_points, g.max(1)));
    }
    let n_pts = n_points;
    let vars = VarSet::t_many(n_pts);
    let vandermonde_degree = (n_pts * (n_pts - 1) / 2) as i64;
    let det_cutoff = cutoff + vandermonde_degree;

    // Normalized determinant G = det(t_j^(N+g-1) f_i(t_j)).
    let basis = monomial_basis(spec, n_pts);
    let top = (n_pts + g - 1) as i64;
    assert!(basis.iter().all(|e| (e.order as i64) <= top));
    let u = puiseux_unit(spec, det_cutoff)?;
    let mut u_pow: Vec<TruncSeries> = Vec::with_capacity(spec.n() as usize);
    u_pow.push(TruncSeries::one(u.vars().clone(), det_cutoff));
    for _ in 1..spec.n() {
        u_pow.push(u_pow.last().unwrap().mul(&u));
    }
    let mut matrix: Vec<Vec<TruncSeries>> = Vec::with_capacity(n_pts);
    for entry in &basis {
        let row_series = u_pow[entry.j as usize]
            .shift_var(0, (top - entry.order as i64) as i32)
            .truncate(det_cutoff);
        let row: Vec<TruncSeries> = (0..n_pts)
            .map(|j| row_series.map_vars(vars.clone(), &[j]))
            .collect();
        matrix.push(row);
    }
    let det = crate::series::determinant(&matrix);

    // Exact Vandermonde division: the determinant is alternating.
    let mut f = det;
    for i in 0..n_pts {
        for j in (i + 1)..n_pts {
            f = f.divide_linear_diff(i, j)?;
        }
    }
    f = f.truncate(cutoff);

    // Unit factors of the prime-function cores.
    let e_inf_pow = prime.core_at_infinity.truncate(cutoff).pow(n_pts as u32);
    for i in 0..n_pts {
        f = f.mul(&e_inf_pow.map_vars(vars.clone(), &[i]));
    }
    let core_inv = prime.core.truncate(cutoff).inverse()?;
    for i in 0..n_pts {
        for j in (i + 1)..n_pts {
            f = f.mul(&core_inv.map_vars(vars.clone(), &[i, j]));
        }
    }

    // The result must be symmetric; check the adjacent transpositions.
    for i in 0..n_pts.saturating_sub(1) {
        if f.swap_vars(i, i + 1) != f {
            return Err(Error::NotSymmetric(
                vars.name(i).to_string(),
                vars.name(i + 1).to_string(),
            ));
        }
    }
    Ok(f)
}

/// Rewrites a symmetric series in `t_1..t_N` as a polynomial in the power
/// sums `T_k = (sum_j t_j^k)/k`, degree layer by degree layer.
pub fn power_sum_rewrite(series: &TruncSeries) -> Result<TruncSeries> {
    let n_pts = series.vars().len();
    for i in 0..n_pts.saturating_sub(1) {
        if series.swap_vars(i, i + 1) != *series {
            return Err(Error::NotSymmetric(
                series.vars().name(i).to_string(),
                series.vars().name(i + 1).to_string(),
            ));
        }
    }
    let t_vars = VarSet::power_sums(n_pts);
    let cutoff = series.cutoff();
    let mut out = TruncSeries::zero(t_vars.clone(), cutoff);
    if series.is_zero() {
        return Ok(out);
    }
    let max_d = series.max_degree().unwrap();
    for d in 0..=max_d {
        let layer = series.layer(d);
        if d == 0 {
            let c = layer.constant_term();
            out.add_term(vec![0i32; n_pts].into_boxed_slice(), c);
            continue;
        }
        // Basis: partitions of d with at most n_pts parts index the sorted
        // monomials; partitions with parts <= n_pts index the power-sum
        // monomials T^nu. Conjugation matches their counts.
        let mus: Vec<Partition> = Partition::all_of_weight(d as u32)
            .into_iter()
            .filter(|p| p.len() <= n_pts)
            .collect();
        if layer.is_zero() {
            continue;
        }
        let nus: Vec<Partition> = Partition::all_of_weight_bounded(d as u32, n_pts as u32);
        assert_eq!(mus.len(), nus.len());
        let mu_index: BTreeMap<Vec<u32>, usize> =
            mus.iter().enumerate().map(|(k, p)| (p.parts().to_vec(), k)).collect();
        // Expand each T^nu over the sorted monomials.
        let mut mat = vec![vec![Rational::zero(); nus.len()]; mus.len()];
        for (col, nu) in nus.iter().enumerate() {
            let expansion = power_sum_product(nu, n_pts, d);
            for (e, c) in expansion.terms() {
                let mut sorted: Vec<u32> = e.iter().map(|&x| x as u32).collect();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                while sorted.last() == Some(&0) {
                    sorted.pop();
                }
                if let Some(&row) = mu_index.get(&sorted) {
                    // Only record the coefficient once (sorted exponents).
                    let is_sorted = e.windows(2).all(|w| w[0] >= w[1]);
                    if is_sorted {
                        mat[row][col] = c.as_constant().expect("rational power-sum expansion");
                    }
                }
            }
        }
        let mut rhs = vec![LambdaPoly::zero(); mus.len()];
        for (row, mu) in mus.iter().enumerate() {
            let mut exp = vec![0i32; n_pts];
            for (i, &p) in mu.parts().iter().enumerate() {
                exp[i] = p as i32;
            }
            rhs[row] = layer.coeff(&exp);
        }
        let solution = solve_exact(mat, rhs).ok_or(Error::InconsistentSystem(d))?;
        for (col, nu) in nus.iter().enumerate() {
            if solution[col].is_zero() {
                continue;
            }
            let mut exp = vec![0i32; n_pts];
            for &part in nu.parts() {
                exp[part as usize - 1] += 1;
            }
            out.add_term(exp.into_boxed_slice(), solution[col].clone());
        }
    }
    Ok(out)
}

/// `prod_i p_{nu_i}(t)/nu_i` as a polynomial in `t_1..t_N`, truncated at `d`.
fn power_sum_product(nu: &Partition, n_pts: usize, d: i64) -> TruncSeries {
    let vars = VarSet::t_many(n_pts);
    let mut out = TruncSeries::one(vars.clone(), d);
    for &part in nu.parts() {
        let mut p = TruncSeries::zero(vars.clone(), d);
        for j in 0..n_pts {
            let mut exp = vec![0i32; n_pts];
            exp[j] = part as i32;
            p.add_term(exp.into_boxed_slice(), LambdaPoly::constant(rat_int(part as i64).recip()));
        }
        out = out.mul(&p);
    }
    out
}

/// Exact solve of a square-or-overdetermined rational system with
/// lambda-polynomial right-hand side. Returns `None` when inconsistent.
fn solve_exact(mut mat: Vec<Vec<Rational>>, mut rhs: Vec<LambdaPoly>) -> Option<Vec<LambdaPoly>> {
    let nrows = mat.len();
    let ncols = if nrows == 0 { 0 } else { mat[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(pr) = (next_row..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(next_row, pr);
        rhs.swap(next_row, pr);
        let inv = mat[next_row][col].clone().recip();
        for c in col..ncols {
            mat[next_row][c] = &mat[next_row][c] * &inv;
        }
        rhs[next_row] = rhs[next_row].scale(&inv);
        for r in 0..nrows {
            if r != next_row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..ncols {
                    let delta = &mat[next_row][c] * &factor;
                    mat[r][c] = &mat[r][c] - &delta;
                }
                let delta = rhs[next_row].scale(&factor);
                rhs[r] = &rhs[r] - &delta;
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == nrows {
            break;
        }
    }
    for r in next_row..nrows {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut x = vec![LambdaPoly::zero(); ncols];
    for col in 0..ncols {
        if let Some(r) = pivot_of_col[col] {
            x[col] = rhs[r].clone();
        }
    }
    Some(x)
}

/// The symmetric sums `u_i = sum_k int du_i (t_k)` rewritten in power sums.
/// The leading term of `u_i` is exactly `T_{w_i}`.
pub fn u_from_t(spec: &CurveSpec, n_points: usize, cutoff: i64) -> Result<Vec<TruncSeries>> {
    let vars = VarSet::t_many(n_points);
    let dus = holomorphic_differentials(spec, cutoff)?;
    let mut out = Vec::with_capacity(dus.len());
    for du in &dus {
        let integral = du.antiderivative(0)?.truncate(cutoff);
        let mut sum = TruncSeries::zero(vars.clone(), cutoff);
        for k in 0..n_points {
            sum = sum.add(&integral.map_vars(vars.clone(), &[k]));
        }
        out.push(power_sum_rewrite(&sum)?);
    }
    Ok(out)
}

/// The expansion of the sigma function around the origin: coefficients
/// `a_alpha` of `u^alpha` with weighted degree `|alpha| <= degree`, graded by
/// `|alpha| = sum w_i alpha_i`.
#[derive(Debug, Clone)]
pub struct SigmaExpansion {
    pub n: u32,
    pub s: u32,
    pub genus: u32,
    pub gaps: Vec<u32>,
    pub partition: Partition,
    pub degree: i64,
    pub n_points: usize,
    pub coeffs: BTreeMap<Vec<u32>, LambdaPoly>,
}

impl SigmaExpansion {
    pub fn coeff(&self, alpha: &[u32]) -> LambdaPoly {
        self.coeffs.get(alpha).cloned().unwrap_or_else(LambdaPoly::zero)
    }

    pub fn alpha_weight(&self, alpha: &[u32]) -> i64 {
        alpha.iter().zip(&self.gaps).map(|(&a, &w)| a as i64 * w as i64).sum()
    }

    /// The layer `|alpha| = |lambda(n,s)|`, which the main theorem pins to
    /// the Schur polynomial of the curve partition.
    pub fn leading_layer(&self) -> BTreeMap<Vec<u32>, LambdaPoly> {
        let w = self.partition.weight() as i64;
        self.coeffs
            .iter()
            .filter(|(a, _)| self.alpha_weight(a) == w)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect()
    }
}

/// All exponent vectors alpha with `sum alpha_i w_i = target`.
fn alphas_of_weight(gaps: &[u32], target: i64) -> Vec<Vec<u32>> {
    fn rec(gaps: &[u32], target: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if gaps.is_empty() {
            if target == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let w = gaps[0] as i64;
        let max = target / w;
        for a in 0..=max {
            prefix.push(a as u32);
            rec(&gaps[1..], target - a * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(gaps, target, &mut Vec::new(), &mut out);
    out
}

/// Computes the sigma expansion through weighted degree `degree` with the
/// default number of points `max(1, 2g-1)`.
pub fn sigma_expansion(spec: &CurveSpec, degree: i64) -> Result<SigmaExpansion> {
    let g = spec.genus();
    sigma_expansion_with(spec, degree, (2 * g as usize).saturating_sub(1).max(1))
}

/// Same with an explicit number of points; `n_points >= max(g, 2g-1)` is
/// required so that `T_{w_1}..T_{w_g}` are algebraically independent.
pub fn sigma_expansion_with(spec: &CurveSpec, degree: i64, n_points: usize) -> Result<SigmaExpansion> {
    let gaps = spec.gap_data();
    let g = gaps.genus;
    let w_g = (2 * g).max(1) as i64 - 1;
    let needed = (w_g as usize).max(g as usize).max(1);
    if n_points < needed {
        return Err(Error::TooFewPoints(n_points, needed));
    }
    let lambda_weight = gaps.partition.weight() as i64;
    assert!(degree >= lambda_weight, "degree below the leading layer");

    let cutoff = degree + w_g;
    let c_table = crate::fundform::solve_c(spec)?;
    let a_table = crate::fundform::omega_hat_series(spec, &c_table, cutoff - 2)?;
    let prime = prime_function_series(spec, &a_table, cutoff)?;
    let f_t = assemble_f(spec, &prime, n_points, cutoff)?;
    let f_power = power_sum_rewrite(&f_t)?;
    let u_polys = u_from_t(spec, n_points, cutoff)?;

    // Layers below the leading weight must already be absent.
    if let Some(min) = f_power.min_degree() {
        if min < lambda_weight {
            return Err(Error::NonzeroResidual(min));
        }
    }

    // Cache powers u_i^k for k w_i <= degree.
    let mut u_pows: Vec<Vec<TruncSeries>> = Vec::with_capacity(g as usize);
    for (i, u) in u_polys.iter().enumerate() {
        let max_k = (degree / gaps.gaps[i] as i64) as usize;
        let mut pows = Vec::with_capacity(max_k + 1);
        pows.push(TruncSeries::one(u.vars().clone(), cutoff));
        for _ in 0..max_k {
            pows.push(pows.last().unwrap().mul(u));
        }
        u_pows.push(pows);
    }

    let mut residual = f_power;
    let mut coeffs: BTreeMap<Vec<u32>, LambdaPoly> = BTreeMap::new();
    let n_vars = residual.vars().len();
    for d in lambda_weight..=degree {
        let mut layer_terms: Vec<(Vec<u32>, LambdaPoly)> = Vec::new();
        for alpha in alphas_of_weight(&gaps.gaps, d) {
            let mut exp = vec![0i32; n_vars];
            for (i, &a) in alpha.iter().enumerate() {
                exp[gaps.gaps[i] as usize - 1] = a as i32;
            }
            let c = residual.coeff(&exp);
            if !c.is_zero() {
                layer_terms.push((alpha, c));
            }
        }
        for (alpha, c) in layer_terms {
            let mut u_alpha = TruncSeries::one(residual.vars().clone(), cutoff);
            for (i, &a) in alpha.iter().enumerate() {
                if a > 0 {
                    u_alpha = u_alpha.mul(&u_pows[i][a as usize]);
                }
            }
            residual = residual.sub(&u_alpha.scale_poly(&c));
            coeffs.insert(alpha, c);
        }
    }

    // Everything through `degree` must now cancel.
    for d in 0..=degree {
        if !residual.layer(d).is_zero() {
            return Err(Error::NonzeroResidual(d));
        }
    }

    Ok(SigmaExpansion {
        n: spec.n(),
        s: spec.s(),
        genus: g,
        gaps: gaps.gaps,
        partition: gaps.partition,
        degree,
        n_points,
        coeffs,
    })
}

/// Checks the parity constraint: every surviving monomial satisfies
/// `(-1)^(sum alpha_i) = (-1)^(|lambda(n,s)|)`.
pub fn parity_check(expansion: &SigmaExpansion) -> bool {
    let parity = expansion.partition.weight() % 2;
    expansion
        .coeffs
        .iter()
        .all(|(alpha, c)| c.is_zero() || alpha.iter().sum::<u32>() % 2 == parity)
}

/// Compares the leading layer with the Schur polynomial of the curve
/// partition under `T_{w_i} -> u_i`.
pub fn leading_layer_is_schur(expansion: &SigmaExpansion) -> bool {
    let schur = crate::schur::schur_s_powersum(&expansion.partition);
    let mut expected: BTreeMap<Vec<u32>, LambdaPoly> = BTreeMap::new();
    for (mono, coeff) in schur.terms() {
        let mut alpha = vec![0u32; expansion.genus as usize];
        let mut ok = true;
        for &(k, e) in mono.pairs() {
            match expansion.gaps.iter().position(|&w| w == k) {
                Some(i) => alpha[i] = e,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            return false;
        }
        expected.insert(alpha, LambdaPoly::constant(coeff.clone()));
    }
    expansion.leading_layer() == expected
}

/// Checks that every coefficient is homogeneous of weight
/// `|alpha| - |lambda(n,s)|`.
pub fn homogeneity_check(spec: &CurveSpec, expansion: &SigmaExpansion) -> bool {
    let base = expansion.partition.weight() as i64;
    expansion.coeffs.iter().all(|(alpha, c)| {
        c.is_homogeneous_of(&spec.weight_fn(), expansion.alpha_weight(alpha) - base)
    })
}

/// The constant relating the N-point product formula to the sigma function,
/// evaluated numerically. This is the single floating-point computation in
/// the crate; nothing downstream consumes it.
pub fn constant_cn(n: u32, s: u32, n_points: u32) -> Complex64 {
    let g = (n - 1) * (s - 1) / 2;
    let nn = n as i64;
    let big_n = n_points as i64;
    let root = |numerator: i64| -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI * (numerator.rem_euclid(nn) as f64) / nn as f64;
        Complex64::new(angle.cos(), angle.sin())
    };
    let eps = |r: i64| -> Complex64 {
        let mut p = Complex64::new(1.0, 0.0);
        for i in 1..=(nn - 1) {
            for j in (i + 1)..=(nn - 1) {
                p *= root(r * i) - root(r * j);
            }
        }
        p
    };
    let sign = if (nn * big_n * (big_n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let ratio = (eps(s as i64) / eps(1)).powi(n_points as i32);
    let exponent = big_n * (big_n - 1) / 2 - big_n * (big_n - 1) * (nn - 1) * (nn - 2) / 4
        + big_n * nn * (nn - 1) / 2
        - (g as i64) * big_n * nn * (nn - 3) / 2;
    sign * ratio * root(exponent)
}
