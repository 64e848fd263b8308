//! The algebraic fundamental bilinear form of the curve.
//!
//! The form is assembled from an explicit one-form kernel plus a correction
//! `sum c * (x1^i1 y1^j1 / f_y(p1)) (x2^i2 y2^j2 / f_y(p2)) dx1 dx2` whose
//! coefficients are fixed by requiring symmetry in the two points. The
//! symmetry condition is a finite linear system over the integers with
//! lambda-polynomial right-hand sides, solved exactly per homogeneous weight
//! block. From the solved form we read off the second-kind differentials
//! `dr_i`, the regular bivariate expansion table `a_ij` at infinity, and the
//! residue intersection pairing that makes `{du_i, dr_j}` symplectic.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;

use crate::curve::{dx_over_fy, puiseux_unit, CurveSpec};
use crate::error::{Error, Result};
use crate::lambda::{LambdaIdx, LambdaPoly};
use crate::rational::Rational;
use crate::series::{TruncSeries, VarSet};
use crate::xypoly::{curve_fx, curve_fy, Key2, Xy2Poly};

/// Numerator coefficients `a_{i1 j1; i2 j2}` of the double differential of
/// the one-form kernel, over `(x1-x2)^2 f_y(p1) f_y(p2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaNumerator {
    pub table: BTreeMap<Key2, LambdaPoly>,
}

/// The solved correction coefficients, keyed by `((i1,j1),(i2,j2))` with
/// `(i1,j1)` one of the du index pairs. Zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTable {
    entries: BTreeMap<(LambdaIdx, LambdaIdx), LambdaPoly>,
    du_monomials: Vec<LambdaIdx>,
}

impl CTable {
    pub fn get(&self, first: LambdaIdx, second: LambdaIdx) -> LambdaPoly {
        self.entries
            .get(&(first, second))
            .cloned()
            .unwrap_or_else(LambdaPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(LambdaIdx, LambdaIdx), &LambdaPoly)> {
        self.entries.iter()
    }

    /// Monomial exponents `(a_i - 1, n - 1 - b_i)` of the du differentials.
    pub fn du_monomials(&self) -> &[LambdaIdx] {
        &self.du_monomials
    }

    /// Test hook: a copy with one entry overwritten.
    pub fn with_entry(&self, first: LambdaIdx, second: LambdaIdx, value: LambdaPoly) -> CTable {
        let mut entries = self.entries.clone();
        if value.is_zero() {
            entries.remove(&(first, second));
        } else {
            entries.insert((first, second), value);
        }
        CTable { entries, du_monomials: self.du_monomials.clone() }
    }
}

/// Bivariate expansion table of the regular part of the fundamental form at
/// infinity: `a_ij` with `i + j <= cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ATable {
    pub cutoff: i64,
    pub entries: BTreeMap<(u32, u32), LambdaPoly>,
}

impl ATable {
    pub fn get(&self, i: u32, j: u32) -> LambdaPoly {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(LambdaPoly::zero)
    }
}

/// Everything the sigma pipeline needs from this module.
#[derive(Debug, Clone)]
pub struct FundFormData {
    pub c_table: CTable,
    pub dr: Vec<TruncSeries>,
    pub a_table: ATable,
}

impl FundFormData {
    pub fn compute(spec: &CurveSpec, a_cutoff: i64, dr_cutoff: i64) -> Result<FundFormData> {
        let c_table = solve_c(spec)?;
        let dr = dr_differentials(spec, &c_table, dr_cutoff)?;
        let a_table = omega_hat_series(spec, &c_table, a_cutoff)?;
        Ok(FundFormData { c_table, dr, a_table })
    }
}

/// `f(x,y) = sum_j f_j(x) y^j` with `f_n = 1`: the coefficient polynomials
/// of the defining equation, in the coordinates of the given point.
fn f_coefficient(spec: &CurveSpec, j: u32, point: usize) -> Xy2Poly {
    let key = |i: u32| -> Key2 {
        if point == 0 {
            (i, 0, 0, 0)
        } else {
            (0, 0, i, 0)
        }
    };
    let mut out = Xy2Poly::zero();
    if j == spec.n() {
        out.add_term(key(0), LambdaPoly::one());
        return out;
    }
    if j == 0 {
        out.add_term(key(spec.s()), -&LambdaPoly::one());
    }
    for (&(i, jj), _) in spec.lambda_entries() {
        if jj == j {
            out.add_term(key(i), -&spec.lambda_coeff((i, jj)));
        }
    }
    out
}

/// The numerator of `d_{p2} Omega(p1, p2)` over
/// `(x1-x2)^2 f_y(p1) f_y(p2) dx1 dx2`, reduced modulo the curve so both
/// y-degrees stay below n.
///
/// With `H = sum_{i<n} y1^i [f(z,w)/w^(i+1)]_+ |_(x2,y2)` the kernel is
/// `Omega = H / ((x1-x2) f_y(p1)) dx1`, and the derivative in p2 gives
/// `N = (x1-x2)(H_x2 f_y(p2) - H_y2 f_x(p2)) + H f_y(p2)`.
pub fn omega_one_form_coeffs(spec: &CurveSpec) -> OmegaNumerator {
    let n = spec.n();
    // H = sum_{i=0}^{n-1} y1^i sum_{j >= i+1} f_j(x2) y2^(j-i-1).
    let mut h = Xy2Poly::zero();
    for i in 0..n {
        for j in (i + 1)..=n {
            let fj = f_coefficient(spec, j, 1);
            let lifted = fj.mul(&Xy2Poly::monomial((0, i, 0, j - i - 1), LambdaPoly::one()));
            h = h.add(&lifted);
        }
    }
    let fy2 = curve_fy(spec, 1);
    let fx2 = curve_fx(spec, 1);
    let x1_minus_x2 = {
        let mut p = Xy2Poly::monomial((1, 0, 0, 0), LambdaPoly::one());
        p.add_term((0, 0, 1, 0), -&LambdaPoly::one());
        p
    };
    let inner = h.d_dx(1).mul(&fy2).sub(&h.d_dy(1).mul(&fx2));
    let numerator = x1_minus_x2.mul(&inner).add(&h.mul(&fy2));
    let reduced = numerator.reduce(spec, 1).reduce(spec, 0);
    OmegaNumerator { table: reduced.terms }
}

/// Weight of the correction coefficient `c_{i1 j1; i2 j2}`.
pub fn c_weight(spec: &CurveSpec, (i1, j1): LambdaIdx, (i2, j2): LambdaIdx) -> i64 {
    let (n, s) = (spec.n() as i64, spec.s() as i64);
    2 * n * s - n * (i1 as i64 + i2 as i64 + 2) - s * (j1 as i64 + j2 as i64 + 2)
}

/// Weight class of a numerator monomial `x1^I1 y1^J1 x2^I2 y2^J2`.
fn monomial_class(spec: &CurveSpec, (i1, j1, i2, j2): Key2) -> i64 {
    let (n, s) = (spec.n() as i64, spec.s() as i64);
    2 * (n - 1) * s - n * (i1 as i64 + i2 as i64) - s * (j1 as i64 + j2 as i64)
}

/// Expands `(M_AB - M_AB swapped) * (x1 - x2)^2` into numerator monomials
/// with integer coefficients.
fn symmetry_column(a: LambdaIdx, b: LambdaIdx) -> BTreeMap<Key2, i64> {
    let mut col: BTreeMap<Key2, i64> = BTreeMap::new();
    let mut add = |key: Key2, v: i64| {
        let e = col.entry(key).or_insert(0);
        *e += v;
        if *e == 0 {
            col.remove(&key);
        }
    };
    // (x1 - x2)^2 = x1^2 - 2 x1 x2 + x2^2.
    for (dx1, dx2, sign) in [(2u32, 0u32, 1i64), (1, 1, -2), (0, 2, 1)] {
        add((a.0 + dx1, a.1, b.0 + dx2, b.1), sign);
        add((b.0 + dx1, b.1, a.0 + dx2, a.1), -sign);
    }
    col
}

/// Solves the symmetry condition for the correction coefficients.
///
/// The system may be underdetermined; the canonical solution is produced by
/// exact Gaussian elimination per homogeneous weight block, scanning pivot
/// columns in lexicographic unknown order and setting free unknowns to zero.
pub fn solve_c(spec: &CurveSpec) -> Result<CTable> {
    let n = spec.n();
    let du_monomials: Vec<LambdaIdx> = spec
        .du_index_pairs()
        .iter()
        .map(|&(a, b)| (a - 1, n - 1 - b))
        .collect();

    // Enumerate unknowns with nonnegative weight.
    let mut unknowns: Vec<(LambdaIdx, LambdaIdx)> = Vec::new();
    for &a in &du_monomials {
        for j2 in 0..n {
            for i2 in 0.. {
                let w = c_weight(spec, a, (i2, j2));
                if w < 0 {
                    break;
                }
                unknowns.push((a, (i2, j2)));
            }
        }
    }
    unknowns.sort();
    unknowns.dedup();

    // Right-hand side: the antisymmetric part of the kernel numerator.
    let numerator = omega_one_form_coeffs(spec);
    let n_poly = Xy2Poly { terms: numerator.table.clone() };
    let rhs_poly = n_poly.sub(&n_poly.swap_points());

    // Group unknown columns and equation rows by weight.
    let mut columns: Vec<BTreeMap<Key2, i64>> = Vec::with_capacity(unknowns.len());
    for &(a, b) in &unknowns {
        columns.push(symmetry_column(a, b));
    }
    let mut blocks: BTreeMap<i64, (Vec<usize>, BTreeSet<Key2>)> = BTreeMap::new();
    for (k, &(a, b)) in unknowns.iter().enumerate() {
        let w = c_weight(spec, a, b);
        let entry = blocks.entry(w).or_default();
        entry.0.push(k);
        for key in columns[k].keys() {
            debug_assert_eq!(monomial_class(spec, *key), w);
            entry.1.insert(*key);
        }
    }
    for (&key, coeff) in &rhs_poly.terms {
        let w = monomial_class(spec, key);
        debug_assert!(coeff.is_homogeneous_of(&spec.weight_fn(), w));
        blocks.entry(w).or_default().1.insert(key);
    }

    let mut solution: Vec<LambdaPoly> = vec![LambdaPoly::zero(); unknowns.len()];
    for (&w, (cols, keys)) in &blocks {
        if w < 0 {
            // Negative-weight unknowns were never enumerated; nothing to do.
            continue;
        }
        let keys: Vec<Key2> = keys.iter().copied().collect();
        let row_of: BTreeMap<Key2, usize> = keys.iter().copied().enumerate().map(|(r, k)| (k, r)).collect();
        let nrows = keys.len();
        let ncols = cols.len();
        // Dense block matrix with rational entries, lambda-polynomial rhs.
        let mut mat: Vec<Vec<Rational>> = vec![vec![Rational::zero(); ncols]; nrows];
        let mut rhs: Vec<LambdaPoly> = vec![LambdaPoly::zero(); nrows];
        for (cc, &k) in cols.iter().enumerate() {
            for (key, &v) in &columns[k] {
                mat[row_of[key]][cc] = Rational::from_integer(v.into());
            }
        }
        for (&key, coeff) in &rhs_poly.terms {
            if let Some(&r) = row_of.get(&key) {
                rhs[r] = -coeff;
            }
        }
        // Row-echelon form, scanning pivots in column order.
        let mut pivot_rows: Vec<Option<usize>> = vec![None; ncols];
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
            pivot_rows[col] = Some(next_row);
            next_row += 1;
            if next_row == nrows {
                break;
            }
        }
        // Rows below the last pivot must have zero rhs.
        for r in next_row..nrows {
            if !rhs[r].is_zero() {
                return Err(Error::InconsistentSystem(w));
            }
        }
        // Free columns stay zero; pivot columns read off the reduced rhs.
        for (cc, &k) in cols.iter().enumerate() {
            if let Some(r) = pivot_rows[cc] {
                solution[k] = rhs[r].clone();
            }
        }
    }

    // Full residual check of every symmetry equation.
    let mut residual = rhs_poly;
    for (k, &(_a, _b)) in unknowns.iter().enumerate() {
        if solution[k].is_zero() {
            continue;
        }
        for (&key, &v) in &columns[k] {
            residual.add_term(key, solution[k].scale(&Rational::from_integer(v.into())));
        }
    }
    if !residual.is_zero() {
        return Err(Error::InconsistentSystem(-1));
    }

    let mut entries = BTreeMap::new();
    for (k, &(a, b)) in unknowns.iter().enumerate() {
        if !solution[k].is_zero() {
            entries.insert((a, b), solution[k].clone());
        }
    }
    Ok(CTable { entries, du_monomials })
}

/// Laurent expansions at infinity of the second-kind differentials
/// `dr_i = -sum_{k,l} c_{(du_i);(k,l)} x^k y^l dx/f_y`, as dt-coefficients.
pub fn dr_differentials(spec: &CurveSpec, c_table: &CTable, cutoff: i64) -> Result<Vec<TruncSeries>> {
    let g = spec.genus() as usize;
    let max_ord = c_table
        .entries()
        .map(|(&(_, (k, l)), _)| (spec.n() * k + spec.s() * l) as i64)
        .max()
        .unwrap_or(0);
    let u = puiseux_unit(spec, cutoff + max_ord)?;
    let dxfy = dx_over_fy(spec, cutoff + max_ord)?;
    let vars = u.vars().clone();
    let mut out = Vec::with_capacity(g);
    for (idx, &a) in c_table.du_monomials().iter().enumerate() {
        let mut dr = TruncSeries::zero(vars.clone(), cutoff);
        for (&(first, (k, l)), coeff) in c_table.entries() {
            if first != a {
                continue;
            }
            let ord = (spec.n() * k + spec.s() * l) as i32;
            let mono = u.pow(l).shift_var(0, -ord).mul(&dxfy).neg();
            dr = dr.add(&mono.scale_poly(coeff).truncate(cutoff));
        }
        if !dr.coeff(&[-1]).is_zero() {
            return Err(Error::NonzeroDrResidue(idx + 1));
        }
        out.push(dr);
    }
    Ok(out)
}

/// Expansion series of a basis monomial times `t^(2n) dx/f_y`, used when
/// evaluating the numerator of the fundamental form at infinity.
struct PointEvaluator {
    /// Power series unit of the branch.
    unit: TruncSeries,
    dxfy: TruncSeries,
    shift: i64,
}

impl PointEvaluator {
    fn new(spec: &CurveSpec, unit_cutoff: i64) -> Result<PointEvaluator> {
        // dx/f_y starts at t^(2g-2); computing it that much deeper keeps the
        // product cutoff at unit_cutoff + 2g - 2.
        let gap = 2 * spec.genus() as i64 - 2;
        Ok(PointEvaluator {
            unit: puiseux_unit(spec, unit_cutoff)?,
            dxfy: dx_over_fy(spec, unit_cutoff + gap)?,
            shift: 2 * spec.n() as i64,
        })
    }

    /// `x^a y^b * t^(2n) * dx/f_y` as a Laurent series in t, with terms
    /// starting at `2n + 2g - 2 - ord`.
    fn eval(&self, spec: &CurveSpec, a: u32, b: u32) -> TruncSeries {
        let ord = (spec.n() * a + spec.s() * b) as i64;
        self.unit
            .pow(b)
            .mul_sharp(&self.dxfy)
            .shift_var(0, (self.shift - ord) as i32)
    }
}

/// Computes the table `a_ij`, `i + j <= cutoff`, of the regular part of the
/// fundamental form at the base point: the form times `(t1^n - t2^n)^2` is
/// a regular bivariate series; subtracting the polynomial
/// `((t1^n - t2^n)/(t1 - t2))^2` and unwinding
/// `a_ij - 2 a_{i+n,j-n} + a_{i+2n,j-2n} = c_{i+2n,j}` recovers the table.
pub fn omega_hat_series(spec: &CurveSpec, c_table: &CTable, cutoff: i64) -> Result<ATable> {
    let n = spec.n();
    let big = cutoff + 2 * n as i64;

    // Total numerator: kernel part plus corrections times (x1-x2)^2.
    let mut numerator = Xy2Poly { terms: omega_one_form_coeffs(spec).table };
    for (&(a, b), coeff) in c_table.entries() {
        for (key, &v) in &symmetry_column_one_sided(a, b) {
            numerator.add_term(*key, coeff.scale(&Rational::from_integer(v.into())));
        }
    }

    // The grading keeps intermediate poles shallow: a nonzero numerator
    // coefficient forces ord1 + ord2 <= 2(n-1)s, so with K = 2n + 2g - 2
    // every pairing needs factor-unit precision at most big + maxsum - 2K.
    let k_shift = 2 * n as i64 + 2 * spec.genus() as i64 - 2;
    let maxsum = numerator
        .terms
        .keys()
        .map(|&(a1, b1, a2, b2)| (n * (a1 + a2) + spec.s() * (b1 + b2)) as i64)
        .max()
        .unwrap_or(0);
    let unit_prec = (big + maxsum - 2 * k_shift + 2).max(4);
    let evaluator = PointEvaluator::new(spec, unit_prec)?;

    // Group terms by the first-point monomial and evaluate.
    let pair_vars = VarSet::t_pair();
    let mut w = TruncSeries::zero(pair_vars.clone(), big);
    let mut grouped: BTreeMap<(u32, u32), Vec<((u32, u32), LambdaPoly)>> = BTreeMap::new();
    for (&(a1, b1, a2, b2), coeff) in &numerator.terms {
        grouped.entry((a1, b1)).or_default().push(((a2, b2), coeff.clone()));
    }
    for ((a1, b1), seconds) in grouped {
        let e1 = evaluator.eval(spec, a1, b1);
        // Every member cutoff is >= the degree actually needed of the sum,
        // so folding with the min-cutoff rule loses nothing.
        let mut members = seconds
            .into_iter()
            .map(|((a2, b2), coeff)| evaluator.eval(spec, a2, b2).scale_poly(&coeff));
        let first = members.next().expect("nonempty group");
        let e2_sum = members.fold(first, |acc, m| acc.add(&m));
        if e1.is_zero() || e2_sum.is_zero() {
            continue;
        }
        // The needed bivariate degrees are known to both factors.
        let m1 = e1.min_degree().unwrap();
        let m2 = e2_sum.min_degree().unwrap();
        debug_assert!(e1.cutoff() >= big - m2, "factor 1 too short");
        debug_assert!(e2_sum.cutoff() >= big - m1, "factor 2 too short");
        // Outer product into the bivariate series.
        for (ea, ca) in e1.terms() {
            for (eb, cb) in e2_sum.terms() {
                let d = ea[0] as i64 + eb[0] as i64;
                if d > big {
                    continue;
                }
                w.add_term(Box::new([ea[0], eb[0]]), ca * cb);
            }
        }
    }
    // The series must be symmetric in the two points; an asymmetric witness
    // points at a malformed correction table.
    let swapped = w.swap_vars(0, 1);
    if swapped != w {
        let witness = w
            .sub(&swapped)
            .terms()
            .map(|(e, _)| (e[0] as i64, e[1] as i64))
            .next()
            .unwrap_or((-1, -1));
        return Err(Error::AsymmetricOmegaHat(witness.0 - 2 * n as i64, witness.1));
    }
    if w.has_negative_exponents() {
        return Err(Error::OmegaHatNotRegular);
    }

    // Subtract ((t1^n - t2^n)/(t1 - t2))^2 = (sum_{k<n} t1^(n-1-k) t2^k)^2.
    let mut cyclotomic = TruncSeries::zero(pair_vars.clone(), big);
    for k in 0..n {
        cyclotomic.add_term(Box::new([(n - 1 - k) as i32, k as i32]), LambdaPoly::one());
    }
    let w_reg = w.sub(&cyclotomic.pow(2));

    // Unwind the recursion in increasing (i+j, j) order.
    let mut a: BTreeMap<(u32, u32), LambdaPoly> = BTreeMap::new();
    let get = |a: &BTreeMap<(u32, u32), LambdaPoly>, i: i64, j: i64| -> LambdaPoly {
        if i < 0 || j < 0 {
            LambdaPoly::zero()
        } else {
            a.get(&(i as u32, j as u32)).cloned().unwrap_or_else(LambdaPoly::zero)
        }
    };
    for m in 0..=cutoff {
        for j in 0..=m {
            let i = m - j;
            let c_term = w_reg.coeff(&[(i + 2 * n as i64) as i32, j as i32]);
            let val = &(&c_term + &get(&a, i + n as i64, j - n as i64).scale(&Rational::from_integer(2.into())))
                - &get(&a, i + 2 * n as i64, j - 2 * n as i64);
            if !val.is_zero() {
                a.insert((i as u32, j as u32), val);
            }
        }
    }

    // Exact symmetry is forced; any asymmetry is a bug.
    for (&(i, j), v) in &a {
        if j > i {
            continue;
        }
        if *v != a.get(&(j, i)).cloned().unwrap_or_else(LambdaPoly::zero) {
            return Err(Error::AsymmetricOmegaHat(i as i64, j as i64));
        }
    }
    Ok(ATable { cutoff, entries: a })
}

/// Expands `M_AB * (x1-x2)^2` (no swap), for assembling the full numerator.
fn symmetry_column_one_sided(a: LambdaIdx, b: LambdaIdx) -> BTreeMap<Key2, i64> {
    let mut col: BTreeMap<Key2, i64> = BTreeMap::new();
    for (dx1, dx2, sign) in [(2u32, 0u32, 1i64), (1, 1, -2), (0, 2, 1)] {
        let e = col.entry((a.0 + dx1, a.1, b.0 + dx2, b.1)).or_insert(0);
        *e += sign;
        if *e == 0 {
            col.remove(&(a.0 + dx1, a.1, b.0 + dx2, b.1));
        }
    }
    col
}

/// Residue intersection pairing `eta o eta' = Res_t ((int eta) eta')` of two
/// second-kind differentials given as univariate dt-coefficient series.
///
/// Both series must be free of `t^-1` terms, and their cutoffs must be large
/// enough that no unknown term could contribute to the residue.
pub fn residue_pairing(eta: &TruncSeries, eta_prime: &TruncSeries) -> Result<LambdaPoly> {
    if !eta.coeff(&[-1]).is_zero() || !eta_prime.coeff(&[-1]).is_zero() {
        return Err(Error::ResidueObstruction("t".into()));
    }
    let integral = eta.antiderivative(0)?;
    // Residue determined only if every contributing pair (k, -1-k) is known.
    let min_i = integral.min_degree().unwrap_or(0);
    let min_p = eta_prime.min_degree().unwrap_or(0);
    let need_i = -1 - min_p;
    let need_p = -1 - min_i;
    if integral.cutoff() < need_i {
        return Err(Error::InsufficientCutoff { have: integral.cutoff(), need: need_i });
    }
    if eta_prime.cutoff() < need_p {
        return Err(Error::InsufficientCutoff { have: eta_prime.cutoff(), need: need_p });
    }
    let mut res = LambdaPoly::zero();
    for (e, c) in integral.terms() {
        let other = eta_prime.coeff(&[-1 - e[0]]);
        if !other.is_zero() {
            res = &res + &(c * &other);
        }
    }
    Ok(res)
}
