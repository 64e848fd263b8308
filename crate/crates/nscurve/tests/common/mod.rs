//! Independent oracles for the integration tests: the Weierstrass elliptic
//! functions built from their classical recursions, self-checked against the
//! defining differential equation before use.

use nscurve::lambda::LambdaPoly;
use nscurve::rational::{rat, rat_int};
use nscurve::series::{TruncSeries, VarSet};

/// Coefficients c_k of `p(u) = u^-2 + sum_{k>=2} c_k u^(2k-2)` over
/// `Q[g2, g3]`, via `c_2 = g2/20`, `c_3 = g3/28`, and
/// `c_k = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} c_m c_{k-m}` for k >= 4.
///
/// `g2` and `g3` are passed as lambda-polynomials so the oracle can run with
/// symbolic curve coefficients.
pub fn weierstrass_p_coeffs(g2: &LambdaPoly, g3: &LambdaPoly, max_k: usize) -> Vec<LambdaPoly> {
    let mut c = vec![LambdaPoly::zero(); max_k + 1];
    if max_k >= 2 {
        c[2] = g2.scale(&rat(1, 20));
    }
    if max_k >= 3 {
        c[3] = g3.scale(&rat(1, 28));
    }
    for k in 4..=max_k {
        let mut acc = LambdaPoly::zero();
        for m in 2..=(k - 2) {
            acc = &acc + &(&c[m] * &c[k - m]);
        }
        c[k] = acc.scale(&rat(3, (2 * k as i64 + 1) * (k as i64 - 3)));
    }
    c
}

/// Verifies `p'(u)^2 = 4 p(u)^3 - g2 p(u) - g3` as a Laurent identity up to
/// the cutoff; panics on mismatch. This guards the oracle itself.
pub fn check_p_ode(g2: &LambdaPoly, g3: &LambdaPoly, cutoff: i64) {
    // The products below involve poles of order up to 2, so work 4 orders
    // deeper than the degree actually verified.
    let prec = cutoff + 4;
    let max_k = (prec as usize + 4) / 2 + 2;
    let c = weierstrass_p_coeffs(g2, g3, max_k);
    let vars = VarSet::unit_weights(&["u"]);
    let mut p = TruncSeries::zero(vars.clone(), prec);
    p.add_term(Box::new([-2]), LambdaPoly::one());
    for (k, ck) in c.iter().enumerate().skip(2) {
        let e = 2 * k as i32 - 2;
        if (e as i64) <= prec {
            p.add_term(Box::new([e]), ck.clone());
        }
    }
    let dp = p.derivative(0);
    let lhs = dp.mul(&dp);
    let rhs = p
        .pow(3)
        .scale(&rat_int(4))
        .sub(&p.scale_poly(g2))
        .sub(&TruncSeries::constant(vars, lhs.cutoff(), g3.clone()));
    let diff = lhs.sub(&rhs.truncate(lhs.cutoff())).truncate(cutoff);
    assert!(diff.is_zero(), "p ODE check failed: {diff}");
}

/// The classical sigma series over `Q[g2, g3]`:
/// `sigma = u exp(-q)` with `q'' = p(u) - u^-2`, `q(0) = q'(0) = 0`.
///
/// Returns the univariate series in `u` to the cutoff.
pub fn weierstrass_sigma_series(g2: &LambdaPoly, g3: &LambdaPoly, cutoff: i64) -> TruncSeries {
    check_p_ode(g2, g3, cutoff);
    let max_k = (cutoff as usize) / 2 + 3;
    let c = weierstrass_p_coeffs(g2, g3, max_k);
    let vars = VarSet::unit_weights(&["u"]);
    // q = sum_k c_k u^(2k) / ((2k-1) 2k).
    let mut q = TruncSeries::zero(vars.clone(), cutoff);
    for (k, ck) in c.iter().enumerate().skip(2) {
        let e = 2 * k as i64;
        if e <= cutoff {
            q.add_term(
                Box::new([e as i32]),
                ck.scale(&rat_int((e - 1) * e).recip()),
            );
        }
    }
    let exp = q.neg().exp().expect("zero constant term");
    exp.shift_var(0, 1).truncate(cutoff)
}

/// g2 and g3 of the curve `y^2 = x^3 + l10 x + l00` (short Weierstrass form
/// reached by Y = -2y): `g2 = -4 l10`, `g3 = -4 l00`.
pub fn g2_g3_symbolic() -> (LambdaPoly, LambdaPoly) {
    (
        LambdaPoly::var((1, 0)).scale(&rat_int(-4)),
        LambdaPoly::var((0, 0)).scale(&rat_int(-4)),
    )
}

/// Composes a univariate series `f` (in one variable, terms of degree >= 1)
/// into the slot of a multivariate series argument: returns `f(arg)` where
/// `arg` has min degree >= 1 over `vars`.
pub fn compose_series(f: &TruncSeries, arg: &TruncSeries) -> TruncSeries {
    let cutoff = arg.cutoff().min(f.cutoff());
    assert!(arg.min_degree().map_or(true, |m| m >= 1), "argument must vanish at 0");
    let mut out = TruncSeries::zero(arg.vars().clone(), cutoff);
    // Horner over ascending powers is awkward for sparse f; accumulate
    // arg^k lazily instead.
    let mut powers: Vec<TruncSeries> = vec![TruncSeries::one(arg.vars().clone(), cutoff)];
    let mut terms: Vec<(i32, LambdaPoly)> = f
        .terms()
        .map(|(e, c)| {
            assert!(e.iter().filter(|&&x| x != 0).count() <= 1, "f must be univariate");
            (e.iter().copied().find(|&x| x != 0).unwrap_or(0), c.clone())
        })
        .collect();
    terms.sort_by_key(|&(e, _)| e);
    for (e, c) in terms {
        assert!(e >= 0, "no Laurent composition");
        while powers.len() <= e as usize {
            let next = powers.last().unwrap().mul(arg);
            powers.push(next);
        }
        out = out.add(&powers[e as usize].scale_poly(&c));
    }
    out
}
