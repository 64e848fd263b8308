//! Truncated multivariate power series over `Q[{l[i,j]}]`.
//!
//! A series carries an ordered variable set (each variable with a positive
//! integer weight used for truncation), a cutoff, and a sparse term map.
//! Terms whose weighted degree exceeds the cutoff are unknown and dropped;
//! binary operations truncate to the minimum of the operand cutoffs.
//! Exponents may be negative (bounded pole order), which is how local
//! expansions like `y = t^-s (1 + ...)` are represented.
//!
//! All binary operations panic if the operands live over different variable
//! sets; use [`TruncSeries::map_vars`] to embed a series into a larger set.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::lambda::{LambdaIdx, LambdaPoly};
use crate::rational::{rat_int, Rational};

/// Cutoff value meaning "no truncation": the series is an exact polynomial.
pub const EXACT: i64 = i64::MAX / 4;

/// Ordered list of variable names with truncation weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<i64>,
}

impl VarSet {
    pub fn new(names: Vec<String>, weights: Vec<i64>) -> Arc<VarSet> {
        assert_eq!(names.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Arc::new(VarSet { names, weights })
    }

    pub fn unit_weights(names: &[&str]) -> Arc<VarSet> {
        VarSet::new(names.iter().map(|s| s.to_string()).collect(), vec![1; names.len()])
    }

    /// The single local parameter `t`.
    pub fn t_single() -> Arc<VarSet> {
        VarSet::unit_weights(&["t"])
    }

    /// The pair `t1, t2` used for bivariate expansions.
    pub fn t_pair() -> Arc<VarSet> {
        VarSet::unit_weights(&["t1", "t2"])
    }

    /// `t1, ..., tN`.
    pub fn t_many(n: usize) -> Arc<VarSet> {
        let names: Vec<String> = (1..=n).map(|k| format!("t{k}")).collect();
        VarSet::new(names, vec![1; n])
    }

    /// Power-sum variables `T1, ..., TN` with `Tk` of weight `k`.
    pub fn power_sums(n: usize) -> Arc<VarSet> {
        let names: Vec<String> = (1..=n).map(|k| format!("T{k}")).collect();
        VarSet::new(names, (1..=n as i64).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weighted_degree(&self, exp: &[i32]) -> i64 {
        exp.iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w).sum()
    }
}

type ExpVec = Box<[i32]>;

/// A truncated power series with a bounded pole part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    vars: Arc<VarSet>,
    cutoff: i64,
    terms: BTreeMap<ExpVec, LambdaPoly>,
}

fn same_vars(a: &TruncSeries, b: &TruncSeries) {
    assert_eq!(a.vars, b.vars, "series live over different variable sets");
}

/// Sorts term contributions, sums coefficients of equal exponents, and
/// drops zeros.
fn merge_terms(mut v: Vec<(ExpVec, LambdaPoly)>) -> BTreeMap<ExpVec, LambdaPoly> {
    v.sort_unstable_by(|x, y| x.0.cmp(&y.0));
    let mut out: BTreeMap<ExpVec, LambdaPoly> = BTreeMap::new();
    let mut iter = v.into_iter();
    let Some((mut exp, mut acc)) = iter.next() else {
        return out;
    };
    for (e, c) in iter {
        if e == exp {
            acc = &acc + &c;
        } else {
            if !acc.is_zero() {
                out.insert(exp, acc);
            }
            exp = e;
            acc = c;
        }
    }
    if !acc.is_zero() {
        out.insert(exp, acc);
    }
    out
}

impl TruncSeries {
    pub fn zero(vars: Arc<VarSet>, cutoff: i64) -> Self {
        TruncSeries { vars, cutoff, terms: BTreeMap::new() }
    }

    pub fn one(vars: Arc<VarSet>, cutoff: i64) -> Self {
        Self::constant(vars, cutoff, LambdaPoly::one())
    }

    pub fn constant(vars: Arc<VarSet>, cutoff: i64, c: LambdaPoly) -> Self {
        let mut s = Self::zero(vars, cutoff);
        let n = s.vars.len();
        s.add_term(vec![0; n].into_boxed_slice(), c);
        s
    }

    /// The monomial `c * prod vars[i]^exp[i]`.
    pub fn monomial(vars: Arc<VarSet>, cutoff: i64, exp: &[i32], c: LambdaPoly) -> Self {
        assert_eq!(exp.len(), vars.len());
        let mut s = Self::zero(vars, cutoff);
        s.add_term(exp.to_vec().into_boxed_slice(), c);
        s
    }

    /// The variable by index, as a series.
    pub fn var(vars: Arc<VarSet>, cutoff: i64, index: usize) -> Self {
        let mut exp = vec![0; vars.len()];
        exp[index] = 1;
        Self::monomial(vars, cutoff, &exp, LambdaPoly::one())
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &LambdaPoly)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }

    pub fn coeff(&self, exp: &[i32]) -> LambdaPoly {
        self.terms.get(exp).cloned().unwrap_or_else(LambdaPoly::zero)
    }

    pub fn constant_term(&self) -> LambdaPoly {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Minimum weighted degree of a stored term; `None` for the zero series.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.vars.weighted_degree(e)).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.vars.weighted_degree(e)).max()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    /// Inserts `c * x^exp`, dropping zero results and over-cutoff terms.
    pub fn add_term(&mut self, exp: ExpVec, c: LambdaPoly) {
        if c.is_zero() || self.vars.weighted_degree(&exp) > self.cutoff {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn truncate(&self, cutoff: i64) -> TruncSeries {
        let mut out = TruncSeries::zero(self.vars.clone(), cutoff.min(self.cutoff));
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Relabels the series with a (possibly higher) cutoff without touching
    /// the terms. Only for iteration schemes (Newton, fixed point) whose
    /// next step repairs everything beyond the currently correct prefix.
    pub(crate) fn assume_cutoff(&self, cutoff: i64) -> TruncSeries {
        let mut out = TruncSeries::zero(self.vars.clone(), cutoff);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        same_vars(self, rhs);
        let mut out = self.truncate(rhs.cutoff);
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TruncSeries) -> TruncSeries {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            vars: self.vars.clone(),
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> TruncSeries {
        if r.is_zero() {
            return TruncSeries::zero(self.vars.clone(), self.cutoff);
        }
        TruncSeries {
            vars: self.vars.clone(),
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.scale(r))).collect(),
        }
    }

    pub fn scale_poly(&self, p: &LambdaPoly) -> TruncSeries {
        let mut out = TruncSeries::zero(self.vars.clone(), self.cutoff);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * p);
        }
        out
    }

    /// Product truncated to the minimum cutoff of the operands.
    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        self.mul_with_cutoff(rhs, self.cutoff.min(rhs.cutoff))
    }

    /// Product carrying the sharp validity bound
    /// `min(cutoff_a + min_b, cutoff_b + min_a)` instead of the conservative
    /// min of cutoffs. Used internally where one operand starts above 0.
    pub(crate) fn mul_sharp(&self, rhs: &TruncSeries) -> TruncSeries {
        let ma = self.min_degree().unwrap_or(self.cutoff + 1);
        let mb = rhs.min_degree().unwrap_or(rhs.cutoff + 1);
        let honest = (self.cutoff + mb).min(rhs.cutoff + ma);
        self.mul_with_cutoff(rhs, honest)
    }

    fn mul_with_cutoff(&self, rhs: &TruncSeries, cutoff: i64) -> TruncSeries {
        same_vars(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return TruncSeries::zero(self.vars.clone(), cutoff);
        }
        // Sort both operands by weighted degree so the inner loop can stop
        // as soon as the degree budget is exhausted; accumulate flat and
        // merge once instead of updating a tree per product term.
        let mut a: Vec<(i64, &ExpVec, &LambdaPoly)> =
            self.terms.iter().map(|(e, c)| (self.vars.weighted_degree(e), e, c)).collect();
        let mut b: Vec<(i64, &ExpVec, &LambdaPoly)> =
            rhs.terms.iter().map(|(e, c)| (rhs.vars.weighted_degree(e), e, c)).collect();
        a.sort_by_key(|t| t.0);
        b.sort_by_key(|t| t.0);
        let mut products: Vec<(ExpVec, LambdaPoly)> = Vec::new();
        for &(da, ea, ca) in &a {
            for &(db, eb, cb) in &b {
                if da + db > cutoff {
                    break;
                }
                let exp: ExpVec = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                products.push((exp, ca * cb));
            }
        }
        TruncSeries { vars: self.vars.clone(), cutoff, terms: merge_terms(products) }
    }

    pub fn pow(&self, e: u32) -> TruncSeries {
        let mut out = TruncSeries::one(self.vars.clone(), self.cutoff);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Multiplies by the monomial `var^k`, shifting the cutoff accordingly.
    pub fn shift_var(&self, var: usize, k: i32) -> TruncSeries {
        let dw = k as i64 * self.vars.weight(var);
        let cutoff = if self.cutoff >= EXACT { EXACT } else { self.cutoff + dw };
        let mut out = TruncSeries::zero(self.vars.clone(), cutoff);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp[var] += k;
            out.add_term(exp, c.clone());
        }
        out
    }

    /// Multiplicative inverse. The constant term must be a nonzero rational:
    /// a lambda-dependent constant term is a unit of the power-series ring in
    /// the lambdas but not of the polynomial ring we compute in.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c0 = self.constant_term();
        let c0 = match c0.as_constant() {
            Some(r) if !r.is_zero() => r,
            _ => return Err(Error::NonInvertibleConstant(c0.canonical_string())),
        };
        let n = self.vars.len();
        let zero_exp: ExpVec = vec![0; n].into_boxed_slice();
        let mut rest = self.clone();
        rest.terms.remove(&zero_exp);
        if let Some(min) = rest.min_degree() {
            assert!(min > 0, "inverse requires the non-constant part to have positive degree");
        }
        // Newton iteration x -> x(2 - a x) with doubling working precision;
        // the error squares each round.
        let mut x = TruncSeries::constant(self.vars.clone(), 0, LambdaPoly::constant(c0.recip()));
        let mut correct: i64 = 0;
        while correct < self.cutoff {
            correct = (2 * correct + 1).min(self.cutoff);
            let a = self.truncate(correct);
            let two = TruncSeries::constant(self.vars.clone(), correct, LambdaPoly::constant(rat_int(2)));
            let x_t = x.assume_cutoff(correct);
            x = x_t.mul(&two.sub(&a.mul(&x_t)));
        }
        Ok(x.truncate(self.cutoff))
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let min = match self.min_degree() {
            None => return Ok(TruncSeries::one(self.vars.clone(), self.cutoff)),
            Some(m) => m,
        };
        assert!(min > 0);
        let mut out = TruncSeries::one(self.vars.clone(), self.cutoff);
        let mut power = TruncSeries::one(self.vars.clone(), self.cutoff);
        let mut factorial = Rational::one();
        let kmax = self.cutoff / min;
        for k in 1..=kmax {
            power = power.mul(self);
            factorial *= rat_int(k);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&factorial.recip()));
        }
        Ok(out)
    }

    /// Logarithm of a series with constant term exactly 1.
    pub fn log(&self) -> Result<TruncSeries> {
        if self.constant_term().as_constant() != Some(Rational::one()) {
            return Err(Error::ConstantTermNotOne(self.constant_term().canonical_string()));
        }
        let h = self.sub(&TruncSeries::one(self.vars.clone(), self.cutoff));
        let min = match h.min_degree() {
            None => return Ok(TruncSeries::zero(self.vars.clone(), self.cutoff)),
            Some(m) => m,
        };
        let mut out = TruncSeries::zero(self.vars.clone(), self.cutoff);
        let mut power = TruncSeries::one(self.vars.clone(), self.cutoff);
        let kmax = self.cutoff / min;
        for k in 1..=kmax {
            power = power.mul(&h);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
            out = out.add(&power.scale(&(sign / rat_int(k))));
        }
        Ok(out)
    }

    /// The n-th root of a series with constant term exactly 1, normalized to
    /// constant term 1.
    ///
    /// Computes `s = self^(-1/n)` by the inversion-free Newton step
    /// `s <- s (1 + (1 - a s^n)/n)` with doubling working precision, then
    /// returns `self * s^(n-1)`.
    pub fn nth_root(&self, n: u32) -> Result<TruncSeries> {
        assert!(n >= 1);
        if self.constant_term().as_constant() != Some(Rational::one()) {
            return Err(Error::ConstantTermNotOne(self.constant_term().canonical_string()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let inv_n = rat_int(n as i64).recip();
        let mut s = TruncSeries::one(self.vars.clone(), 0);
        let mut correct: i64 = 0;
        while correct < self.cutoff {
            correct = (2 * correct + 1).min(self.cutoff);
            let a = self.truncate(correct);
            let one = TruncSeries::one(self.vars.clone(), correct);
            let s_t = s.assume_cutoff(correct);
            let residual = one.sub(&a.mul(&s_t.pow(n)));
            s = s_t.mul(&one.add(&residual.scale(&inv_n)));
        }
        Ok(self.mul(&s.pow(n - 1)).truncate(self.cutoff))
    }

    /// Termwise antiderivative in `var` of a series univariate in `var`,
    /// with zero constant of integration. Fails on a `var^-1` term.
    pub fn antiderivative(&self, var: usize) -> Result<TruncSeries> {
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                assert!(i == var || x == 0, "antiderivative input must be univariate");
            }
            if e[var] == -1 {
                return Err(Error::ResidueObstruction(self.vars.name(var).to_string()));
            }
        }
        let dw = self.vars.weight(var);
        let cutoff = if self.cutoff >= EXACT { EXACT } else { self.cutoff + dw };
        let mut out = TruncSeries::zero(self.vars.clone(), cutoff);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp[var] += 1;
            let k = exp[var] as i64;
            out.add_term(exp, c.scale(&rat_int(k).recip()));
        }
        Ok(out)
    }

    /// Termwise derivative in `var`.
    pub fn derivative(&self, var: usize) -> TruncSeries {
        let dw = self.vars.weight(var);
        let cutoff = if self.cutoff >= EXACT { EXACT } else { self.cutoff - dw };
        let mut out = TruncSeries::zero(self.vars.clone(), cutoff);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[var] -= 1;
            out.add_term(exp, c.scale(&rat_int(e[var] as i64)));
        }
        out
    }

    /// Coefficient of `var^k` as a series over the same variable set (the
    /// exponent of `var` is zeroed in the result).
    pub fn coeff_of_var_power(&self, var: usize, k: i32) -> TruncSeries {
        let cutoff = if self.cutoff >= EXACT {
            EXACT
        } else {
            self.cutoff - k as i64 * self.vars.weight(var)
        };
        let mut out = TruncSeries::zero(self.vars.clone(), cutoff);
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut exp = e.clone();
                exp[var] = 0;
                out.add_term(exp, c.clone());
            }
        }
        out
    }

    /// Sets `var` to zero.
    pub fn substitute_zero(&self, var: usize) -> TruncSeries {
        let mut out = TruncSeries::zero(self.vars.clone(), self.cutoff);
        for (e, c) in &self.terms {
            assert!(e[var] >= 0, "substituting 0 into a pole");
            if e[var] == 0 {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Re-indexes the series into another variable set; `mapping[i]` is the
    /// index in `to` of variable `i` of `self`. Weights must agree.
    pub fn map_vars(&self, to: Arc<VarSet>, mapping: &[usize]) -> TruncSeries {
        assert_eq!(mapping.len(), self.vars.len());
        for (i, &m) in mapping.iter().enumerate() {
            assert_eq!(self.vars.weight(i), to.weight(m), "weight mismatch in map_vars");
        }
        let n = to.len();
        let mut out = TruncSeries::zero(to, self.cutoff);
        for (e, c) in &self.terms {
            let mut exp = vec![0i32; n];
            for (i, &x) in e.iter().enumerate() {
                exp[mapping[i]] += x;
            }
            out.add_term(exp.into_boxed_slice(), c.clone());
        }
        out
    }

    /// Exchanges two variables (they must have equal weights).
    pub fn swap_vars(&self, a: usize, b: usize) -> TruncSeries {
        assert_eq!(self.vars.weight(a), self.vars.weight(b));
        let mut out = TruncSeries::zero(self.vars.clone(), self.cutoff);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp.swap(a, b);
            out.add_term(exp, c.clone());
        }
        out
    }

    /// Applies a map to every coefficient (used to specialize lambdas).
    pub fn map_coeffs(&self, f: impl Fn(&LambdaPoly) -> LambdaPoly) -> TruncSeries {
        let mut out = TruncSeries::zero(self.vars.clone(), self.cutoff);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Exact division by `vars[a] - vars[b]`; fails if the remainder is
    /// nonzero. The quotient is reliable one degree below the input cutoff.
    ///
    /// Solves `self_k = q_(k-1) - x_b q_k` (grouping by the exponent of
    /// `x_a`) from the top exponent down; the k = 0 relation is the
    /// remainder check.
    pub fn divide_linear_diff(&self, a: usize, b: usize) -> Result<TruncSeries> {
        assert_ne!(a, b);
        assert_eq!(self.vars.weight(a), self.vars.weight(b));
        assert!(!self.has_negative_exponents());
        let cutoff = if self.cutoff >= EXACT { EXACT } else { self.cutoff - self.vars.weight(a) };
        let mut slices: BTreeMap<i32, Vec<(ExpVec, LambdaPoly)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[a];
            rest[a] = 0;
            slices.entry(k).or_default().push((rest, c.clone()));
        }
        let max_a = match slices.keys().next_back() {
            None => return Ok(TruncSeries::zero(self.vars.clone(), cutoff)),
            Some(&m) => m,
        };
        let mut out: Vec<(ExpVec, LambdaPoly)> = Vec::new();
        let mut q_prev: Vec<(ExpVec, LambdaPoly)> = Vec::new(); // q_k, starts at q_max = 0
        for k in (0..=max_a).rev() {
            let mut level = slices.remove(&k).unwrap_or_default();
            level.extend(q_prev.iter().map(|(e, c)| {
                let mut shifted = e.clone();
                shifted[b] += 1;
                (shifted, c.clone())
            }));
            let merged = merge_terms(level);
            if k == 0 {
                // self_0 + x_b q_0 must vanish.
                if !merged.is_empty() {
                    return Err(Error::InexactDivision(format!(
                        "{} - {}",
                        self.vars.name(a),
                        self.vars.name(b)
                    )));
                }
                break;
            }
            q_prev = merged.into_iter().collect();
            out.extend(q_prev.iter().map(|(e, c)| {
                let mut exp = e.clone();
                exp[a] = k - 1;
                (exp, c.clone())
            }));
        }
        Ok(TruncSeries { vars: self.vars.clone(), cutoff, terms: merge_terms(out) })
    }

    /// The weighted-degree-`d` homogeneous layer.
    pub fn layer(&self, d: i64) -> TruncSeries {
        let mut out = TruncSeries::zero(self.vars.clone(), self.cutoff);
        for (e, c) in &self.terms {
            if self.vars.weighted_degree(e) == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Common value of `coefficient weight - term degree` over all terms, or
    /// `None` if mixed. This is the homogeneous degree in the grading where
    /// the series variables count negatively and each lambda by its weight.
    pub fn graded_degree(&self, w: &dyn Fn(LambdaIdx) -> i64) -> Option<i64> {
        let mut common: Option<i64> = None;
        for (e, c) in &self.terms {
            let cw = c.homogeneous_weight(w)?;
            let d = cw - self.vars.weighted_degree(e);
            match common {
                None => common = Some(d),
                Some(x) if x == d => {}
                Some(_) => return None,
            }
        }
        common
    }
}

/// Determinant of a square matrix of series, all over the same variable set.
///
/// Laplace expansion along columns with memoization on the set of used rows,
/// so the cost is `2^n` series multiplications rather than `n!`.
pub fn determinant(m: &[Vec<TruncSeries>]) -> TruncSeries {
    let n = m.len();
    assert!(n > 0, "empty matrix");
    for row in m {
        assert_eq!(row.len(), n, "matrix is not square");
    }
    let vars = m[0][0].vars().clone();
    let cutoff = m.iter().flatten().map(|s| s.cutoff()).min().unwrap();
    for s in m.iter().flatten() {
        assert_eq!(*s.vars(), vars, "matrix entries over different variable sets");
    }
    let vars_out = vars.clone();
    // state: bitmask of rows used by the first `popcount` columns
    let mut dp: BTreeMap<u32, TruncSeries> = BTreeMap::new();
    dp.insert(0, TruncSeries::one(vars, cutoff));
    for col in 0..n {
        let mut next: BTreeMap<u32, TruncSeries> = BTreeMap::new();
        for (&mask, minor) in &dp {
            let mut free_above = 0u32;
            for row in 0..n {
                let bit = 1u32 << row;
                if mask & bit != 0 {
                    continue;
                }
                // Laplace sign: parity of the row's position among the rows
                // not yet used by earlier columns.
                if !m[row][col].is_zero() {
                    let term = minor.mul(&m[row][col]);
                    let signed = if free_above % 2 == 0 { term } else { term.neg() };
                    next.entry(mask | bit)
                        .and_modify(|s| *s = s.add(&signed))
                        .or_insert(signed);
                }
                free_above += 1;
            }
        }
        dp = next;
    }
    dp.remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| TruncSeries::zero(vars_out, cutoff))
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(^{})", self.cutoff + 1);
        }
        let mut by_degree: Vec<(&ExpVec, &LambdaPoly)> = self.terms.iter().collect();
        by_degree.sort_by_key(|(e, _)| (self.vars.weighted_degree(e), (*e).clone()));
        for (k, (e, c)) in by_degree.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let coeff = c.canonical_string();
            if coeff.contains(' ') {
                write!(f, "({coeff})")?;
            } else {
                write!(f, "{coeff}")?;
            }
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    write!(f, "*{}", self.vars.name(i))?;
                    if x != 1 {
                        write!(f, "^{x}")?;
                    }
                }
            }
        }
        if self.cutoff < EXACT {
            write!(f, " + O(^{})", self.cutoff + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(n: i64, d: i64) -> LambdaPoly {
        LambdaPoly::constant(rat(n, d))
    }

    fn t_series(cutoff: i64, terms: &[(i32, LambdaPoly)]) -> TruncSeries {
        let vars = VarSet::t_single();
        let mut s = TruncSeries::zero(vars, cutoff);
        for (e, p) in terms {
            s.add_term(Box::new([*e]), p.clone());
        }
        s
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = t_series(5, &[(0, c(1, 1)), (1, c(1, 1))]);
        let b = t_series(5, &[(0, c(1, 1)), (1, c(-1, 1))]);
        let p = a.mul(&b);
        assert_eq!(p, t_series(5, &[(0, c(1, 1)), (2, c(-1, 1))]));
    }

    #[test]
    fn mul_truncates_to_min_cutoff() {
        let t = t_series(1, &[(1, c(1, 1))]);
        let p = t.mul(&t);
        assert!(p.is_zero());
        assert_eq!(p.cutoff(), 1);
    }

    #[test]
    fn mul_bivariate() {
        let vars = VarSet::t_pair();
        let mut a = TruncSeries::one(vars.clone(), 2);
        a.add_term(Box::new([1, 0]), c(1, 1));
        let mut b = TruncSeries::one(vars.clone(), 2);
        b.add_term(Box::new([0, 1]), c(1, 1));
        let p = a.mul(&b);
        let mut want = TruncSeries::one(vars.clone(), 2);
        want.add_term(Box::new([1, 0]), c(1, 1));
        want.add_term(Box::new([0, 1]), c(1, 1));
        want.add_term(Box::new([1, 1]), c(1, 1));
        assert_eq!(p, want);
    }

    #[test]
    fn inverse_geometric() {
        let a = t_series(4, &[(0, c(1, 1)), (1, c(-1, 1))]);
        let inv = a.inverse().unwrap();
        assert_eq!(
            inv,
            t_series(4, &[(0, c(1, 1)), (1, c(1, 1)), (2, c(1, 1)), (3, c(1, 1)), (4, c(1, 1))])
        );
        assert_eq!(TruncSeries::one(VarSet::t_single(), 6).inverse().unwrap().constant_term(), LambdaPoly::one());
    }

    #[test]
    fn inverse_geometric_in_lambda_term() {
        // 1 + l[1,0] t^4 inverts to alternating powers.
        let l = LambdaPoly::var((1, 0));
        let a = t_series(8, &[(0, c(1, 1)), (4, l.clone())]);
        let inv = a.inverse().unwrap();
        let want = t_series(8, &[(0, c(1, 1)), (4, -&l), (8, &l * &l)]);
        assert_eq!(inv, want);
        assert_eq!(a.mul(&inv), TruncSeries::one(VarSet::t_single(), 8));
    }

    #[test]
    fn inverse_rejects_bad_constants() {
        let l = LambdaPoly::var((0, 0));
        assert!(t_series(3, &[(1, c(1, 1))]).inverse().is_err());
        assert!(t_series(3, &[(0, l)]).inverse().is_err());
    }

    #[test]
    fn exp_basics() {
        let zero = TruncSeries::zero(VarSet::t_single(), 5);
        assert_eq!(zero.exp().unwrap(), TruncSeries::one(VarSet::t_single(), 5));
        let t = t_series(3, &[(1, c(1, 1))]);
        assert_eq!(
            t.exp().unwrap(),
            t_series(3, &[(0, c(1, 1)), (1, c(1, 1)), (2, c(1, 2)), (3, c(1, 6))])
        );
        assert!(t_series(3, &[(0, c(1, 1))]).exp().is_err());
    }

    #[test]
    fn nth_root_binomial() {
        let a = t_series(2, &[(0, c(1, 1)), (1, c(1, 1))]);
        let r = a.nth_root(2).unwrap();
        assert_eq!(r, t_series(2, &[(0, c(1, 1)), (1, c(1, 2)), (2, c(-1, 8))]));
        assert_eq!(TruncSeries::one(VarSet::t_single(), 4).nth_root(2).unwrap(), TruncSeries::one(VarSet::t_single(), 4));
    }

    #[test]
    fn nth_root_requires_unit_constant() {
        assert!(matches!(
            t_series(3, &[(0, c(2, 1))]).nth_root(2),
            Err(Error::ConstantTermNotOne(_))
        ));
        assert!(t_series(3, &[(0, LambdaPoly::var((0, 0)))]).nth_root(3).is_err());
    }

    #[test]
    fn cube_root_recovers_cube() {
        let l = LambdaPoly::var((1, 0));
        let a = t_series(12, &[(0, c(1, 1)), (4, l)]);
        let cube = a.pow(3);
        assert_eq!(cube.nth_root(3).unwrap(), a);
    }

    #[test]
    fn antiderivative_rules() {
        let one = t_series(4, &[(0, c(1, 1))]);
        assert_eq!(one.antiderivative(0).unwrap(), t_series(5, &[(1, c(1, 1))]));
        let pole = t_series(4, &[(-2, c(1, 1))]);
        assert_eq!(pole.antiderivative(0).unwrap(), t_series(5, &[(-1, c(-1, 1))]));
        let res = t_series(4, &[(-1, c(1, 1))]);
        assert!(matches!(res.antiderivative(0), Err(Error::ResidueObstruction(_))));
    }

    #[test]
    fn determinant_small_cases() {
        let vars = VarSet::t_single();
        let one = TruncSeries::one(vars.clone(), 6);
        let zero = TruncSeries::zero(vars.clone(), 6);
        let t = t_series(6, &[(1, c(1, 1))]);
        let id = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        assert_eq!(determinant(&id), one);
        let m = vec![vec![one.clone(), t.clone()], vec![t.clone(), one.clone()]];
        assert_eq!(determinant(&m), t_series(6, &[(0, c(1, 1)), (2, c(-1, 1))]));
        let swapped = vec![vec![t.clone(), one.clone()], vec![one.clone(), t.clone()]];
        assert_eq!(determinant(&swapped), determinant(&m).neg());
    }

    #[test]
    fn linear_difference_division() {
        // (t1^2 - t2^2) / (t1 - t2) = t1 + t2
        let vars = VarSet::t_pair();
        let mut a = TruncSeries::zero(vars.clone(), 10);
        a.add_term(Box::new([2, 0]), c(1, 1));
        a.add_term(Box::new([0, 2]), c(-1, 1));
        let q = a.divide_linear_diff(0, 1).unwrap();
        let mut want = TruncSeries::zero(vars.clone(), 9);
        want.add_term(Box::new([1, 0]), c(1, 1));
        want.add_term(Box::new([0, 1]), c(1, 1));
        assert_eq!(q, want);
        // t1^2 + t2^2 is not divisible.
        let mut bad = TruncSeries::zero(vars.clone(), 10);
        bad.add_term(Box::new([2, 0]), c(1, 1));
        bad.add_term(Box::new([0, 2]), c(1, 1));
        assert!(bad.divide_linear_diff(0, 1).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Small rational-or-lambda coefficients.
        fn arb_coeff() -> impl Strategy<Value = LambdaPoly> {
            (any::<i8>(), 1u8..6, 0u8..3u8).prop_map(|(num, den, vars)| {
                let base = LambdaPoly::constant(rat(num as i64, den as i64));
                match vars {
                    0 | 1 => base,
                    _ => &base * &LambdaPoly::var((1, 0)),
                }
            })
        }

        /// Sparse univariate series with exponents in [min_exp, 12].
        fn arb_series(min_exp: i32) -> impl Strategy<Value = TruncSeries> {
            proptest::collection::vec((min_exp..=12i32, arb_coeff()), 0..6).prop_map(|terms| {
                let mut s = TruncSeries::zero(VarSet::t_single(), 12);
                for (e, c) in terms {
                    s.add_term(Box::new([e]), c);
                }
                s
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn ring_axioms(a in arb_series(0), b in arb_series(0), c in arb_series(0)) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
                prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            }

            #[test]
            fn exp_log_round_trip(a in arb_series(1)) {
                let mut a = a;
                // Force a zero constant term.
                a = a.sub(&TruncSeries::constant(a.vars().clone(), a.cutoff(), a.constant_term()));
                let one_plus = TruncSeries::one(a.vars().clone(), a.cutoff()).add(&a);
                prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus.clone());
                let e = a.exp().unwrap();
                prop_assert_eq!(e.mul(&a.neg().exp().unwrap()), TruncSeries::one(a.vars().clone(), a.cutoff()));
            }

            #[test]
            fn root_squares_back(a in arb_series(1)) {
                let mut u = TruncSeries::one(a.vars().clone(), a.cutoff());
                u = u.add(&a.sub(&TruncSeries::constant(a.vars().clone(), a.cutoff(), a.constant_term())));
                let r = u.nth_root(2).unwrap();
                prop_assert_eq!(r.pow(2), u.clone());
                let r3 = u.nth_root(3).unwrap();
                prop_assert_eq!(r3.pow(3), u);
            }

            #[test]
            fn determinant_alternating_and_multilinear(
                rows in proptest::collection::vec(proptest::collection::vec(arb_series(0), 3), 3),
                scalar in 1i64..5,
            ) {
                let det = determinant(&rows);
                // Swapping two rows negates.
                let mut swapped = rows.clone();
                swapped.swap(0, 1);
                prop_assert_eq!(determinant(&swapped), det.neg());
                // Scaling one row scales the determinant.
                let mut scaled = rows.clone();
                let r = rat(scalar, 1);
                scaled[2] = scaled[2].iter().map(|s| s.scale(&r)).collect();
                prop_assert_eq!(determinant(&scaled), det.scale(&r));
                // Adding one row to another leaves it unchanged.
                let mut sheared = rows.clone();
                sheared[1] = sheared[1].iter().zip(&rows[0]).map(|(s, t)| s.add(t)).collect();
                prop_assert_eq!(determinant(&sheared), det);
            }

            #[test]
            fn homogeneous_inputs_give_homogeneous_outputs(coeffs in proptest::collection::vec((1i32..10, -3i64..4), 1..5)) {
                // Weighted-degree-0 series on the (2,3) grading: the
                // coefficient of t^d is a weight-d monomial; l[1,1] has
                // weight 1 there.
                let w = |(i, j): crate::lambda::LambdaIdx| 6 - 2 * i as i64 - 3 * j as i64;
                let mut a = TruncSeries::one(VarSet::t_single(), 10);
                for (e, num) in coeffs {
                    let c = LambdaPoly::var((1, 1)).pow(e as u32).scale(&rat(num, 1));
                    a.add_term(Box::new([e]), c);
                }
                prop_assert_eq!(a.graded_degree(&w), Some(0));
                let sq = a.mul(&a);
                prop_assert!(sq.is_zero() || sq.graded_degree(&w) == Some(0));
                if a.constant_term().as_constant() == Some(Rational::one()) {
                    let r = a.nth_root(2).unwrap();
                    prop_assert_eq!(r.graded_degree(&w), Some(0));
                    let inv = a.inverse().unwrap();
                    prop_assert_eq!(inv.graded_degree(&w), Some(0));
                }
            }
        }
    }

    #[test]
    fn graded_degree_tracks_weights() {
        // (2,3)-curve weights: w(1,0) = 4. Series 1 + l[1,0] t^4 is graded of degree 0.
        let w = |(i, j): LambdaIdx| 6 - 2 * i as i64 - 3 * j as i64;
        let l = LambdaPoly::var((1, 0));
        let s = t_series(8, &[(0, c(1, 1)), (4, l)]);
        assert_eq!(s.graded_degree(&w), Some(0));
        let bad = t_series(8, &[(0, c(1, 1)), (3, LambdaPoly::var((1, 0)))]);
        assert_eq!(bad.graded_degree(&w), None);
    }
}
