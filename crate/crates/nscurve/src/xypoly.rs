//! Exact polynomial arithmetic in the affine coordinates of two points of
//! the same curve, reduced modulo the defining equation so y-degrees stay
//! below n. Internal helper for the fundamental-form construction.

use std::collections::BTreeMap;

use crate::curve::CurveSpec;
use crate::lambda::LambdaPoly;
use crate::rational::rat_int;

/// Monomial key `x1^a y1^b x2^c y2^d`.
pub(crate) type Key2 = (u32, u32, u32, u32);

/// Polynomial in the coordinates of two points with lambda coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct Xy2Poly {
    pub terms: BTreeMap<Key2, LambdaPoly>,
}

impl Xy2Poly {
    pub fn zero() -> Self {
        Xy2Poly::default()
    }

    pub fn monomial(key: Key2, c: LambdaPoly) -> Self {
        let mut p = Xy2Poly::zero();
        p.add_term(key, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Key2, c: LambdaPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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

    pub fn add(&self, rhs: &Xy2Poly) -> Xy2Poly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Xy2Poly) -> Xy2Poly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c);
        }
        out
    }

    pub fn mul(&self, rhs: &Xy2Poly) -> Xy2Poly {
        let mut out = Xy2Poly::zero();
        for (&(a1, b1, c1, d1), p) in &self.terms {
            for (&(a2, b2, c2, d2), q) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2, d1 + d2), p * q);
            }
        }
        out
    }


    /// Exchanges the two points.
    pub fn swap_points(&self) -> Xy2Poly {
        let mut out = Xy2Poly::zero();
        for (&(a, b, c, d), p) in &self.terms {
            out.add_term((c, d, a, b), p.clone());
        }
        out
    }

    /// Formal partial derivative in x of the given point (0 or 1).
    pub fn d_dx(&self, point: usize) -> Xy2Poly {
        let mut out = Xy2Poly::zero();
        for (&(a, b, c, d), p) in &self.terms {
            let (e, key) = match point {
                0 => (a, (a.saturating_sub(1), b, c, d)),
                _ => (c, (a, b, c.saturating_sub(1), d)),
            };
            if e > 0 {
                out.add_term(key, p.scale(&rat_int(e as i64)));
            }
        }
        out
    }

    /// Formal partial derivative in y of the given point.
    pub fn d_dy(&self, point: usize) -> Xy2Poly {
        let mut out = Xy2Poly::zero();
        for (&(a, b, c, d), p) in &self.terms {
            let (e, key) = match point {
                0 => (b, (a, b.saturating_sub(1), c, d)),
                _ => (d, (a, b, c, d.saturating_sub(1))),
            };
            if e > 0 {
                out.add_term(key, p.scale(&rat_int(e as i64)));
            }
        }
        out
    }

    /// Reduces all y-exponents of the given point below n by substituting
    /// `y^n = x^s + sum lambda_ij x^i y^j`.
    pub fn reduce(&self, spec: &CurveSpec, point: usize) -> Xy2Poly {
        let n = spec.n();
        let rhs = curve_rhs(spec, point);
        let mut out = Xy2Poly::zero();
        let mut pending: Vec<(Key2, LambdaPoly)> =
            self.terms.iter().map(|(&k, c)| (k, c.clone())).collect();
        while let Some((key, coeff)) = pending.pop() {
            let ydeg = if point == 0 { key.1 } else { key.3 };
            if ydeg < n {
                out.add_term(key, coeff);
                continue;
            }
            let base = if point == 0 {
                (key.0, key.1 - n, key.2, key.3)
            } else {
                (key.0, key.1, key.2, key.3 - n)
            };
            for (&(a, b, c, d), p) in &rhs.terms {
                pending.push(((base.0 + a, base.1 + b, base.2 + c, base.3 + d), &coeff * p));
            }
        }
        out
    }
}

/// `x^s + sum lambda_ij x^i y^j` in the coordinates of the given point.
fn curve_rhs(spec: &CurveSpec, point: usize) -> Xy2Poly {
    let mut rhs = Xy2Poly::zero();
    let key = |i: u32, j: u32| -> Key2 {
        if point == 0 {
            (i, j, 0, 0)
        } else {
            (0, 0, i, j)
        }
    };
    rhs.add_term(key(spec.s(), 0), LambdaPoly::one());
    for (&(i, j), _) in spec.lambda_entries() {
        rhs.add_term(key(i, j), spec.lambda_coeff((i, j)));
    }
    rhs
}

/// `f_y = n y^(n-1) - sum_j j lambda_ij x^i y^(j-1)` at the given point.
pub(crate) fn curve_fy(spec: &CurveSpec, point: usize) -> Xy2Poly {
    let key = |i: u32, j: u32| -> Key2 {
        if point == 0 {
            (i, j, 0, 0)
        } else {
            (0, 0, i, j)
        }
    };
    let mut fy = Xy2Poly::monomial(
        key(0, spec.n() - 1),
        LambdaPoly::constant(rat_int(spec.n() as i64)),
    );
    for (&(i, j), _) in spec.lambda_entries() {
        if j >= 1 {
            fy.add_term(key(i, j - 1), spec.lambda_coeff((i, j)).scale(&rat_int(-(j as i64))));
        }
    }
    fy
}

/// `f_x = -s x^(s-1) - sum_i i lambda_ij x^(i-1) y^j` at the given point.
pub(crate) fn curve_fx(spec: &CurveSpec, point: usize) -> Xy2Poly {
    let key = |i: u32, j: u32| -> Key2 {
        if point == 0 {
            (i, j, 0, 0)
        } else {
            (0, 0, i, j)
        }
    };
    let mut fx = Xy2Poly::monomial(
        key(spec.s() - 1, 0),
        LambdaPoly::constant(rat_int(-(spec.s() as i64))),
    );
    for (&(i, j), _) in spec.lambda_entries() {
        if i >= 1 {
            fx.add_term(key(i - 1, j), spec.lambda_coeff((i, j)).scale(&rat_int(-(i as i64))));
        }
    }
    fx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;

    #[test]
    fn reduce_replaces_high_y_powers() {
        // On y^2 = x^3 + l10 x + l00: y1^2 reduces to x1^3 + l10 x1 + l00.
        let spec = CurveSpec::symbolic_with_support(2, 3, &[(1, 0), (0, 0)]).unwrap();
        let y1sq = Xy2Poly::monomial((0, 2, 0, 0), LambdaPoly::one());
        let red = y1sq.reduce(&spec, 0);
        let mut want = Xy2Poly::monomial((3, 0, 0, 0), LambdaPoly::one());
        want.add_term((1, 0, 0, 0), LambdaPoly::var((1, 0)));
        want.add_term((0, 0, 0, 0), LambdaPoly::var((0, 0)));
        assert_eq!(red, want);
        // The other point is untouched.
        let y2sq = Xy2Poly::monomial((0, 0, 0, 2), LambdaPoly::one());
        assert_eq!(y2sq.reduce(&spec, 0), y2sq);
    }

    #[test]
    fn derivative_of_curve_matches_partials() {
        let spec = CurveSpec::symbolic(3, 4).unwrap();
        // f = y^3 - x^4 - sum lambda x^i y^j at point 0.
        let mut f = Xy2Poly::monomial((0, 3, 0, 0), LambdaPoly::one());
        f.add_term((4, 0, 0, 0), -&LambdaPoly::one());
        for (&(i, j), _) in spec.lambda_entries() {
            f.add_term((i, j, 0, 0), -&spec.lambda_coeff((i, j)));
        }
        assert_eq!(f.d_dy(0), curve_fy(&spec, 0));
        assert_eq!(f.d_dx(0), curve_fx(&spec, 0));
    }
}
