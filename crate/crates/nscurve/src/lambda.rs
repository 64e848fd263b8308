//! Polynomials in the formal curve coefficients `l[i,j]`.
//!
//! Coefficients of every series in this crate live in `Q[{l[i,j]}]`. A
//! rational scalar is the special case of a constant polynomial, so the
//! whole pipeline is uniform over symbolic and specialized curves.
//!
//! Each variable `l[i,j]` carries the positive weight `n*s - n*i - s*j` of
//! its curve; weights are supplied by the caller (see
//! [`crate::curve::CurveSpec::lambda_weight`]) so this module stays
//! independent of any particular curve.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, rat_string, Rational};

/// Index pair (i, j) of a curve coefficient.
pub type LambdaIdx = (u32, u32);

/// A monomial in the lambda variables: sorted index/exponent pairs, all
/// exponents positive. The empty monomial is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LambdaMono(Box<[(LambdaIdx, u32)]>);

impl LambdaMono {
    pub fn one() -> Self {
        LambdaMono(Box::new([]))
    }

    pub fn var(idx: LambdaIdx) -> Self {
        LambdaMono(Box::new([(idx, 1)]))
    }

    pub fn from_pairs(mut pairs: Vec<(LambdaIdx, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        LambdaMono(pairs.into_boxed_slice())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(LambdaIdx, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &LambdaMono) -> LambdaMono {
        let mut out: Vec<(LambdaIdx, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ia, ea)), Some(&&(ib, eb))) => {
                    if ia < ib {
                        out.push((ia, ea));
                        a.next();
                    } else if ib < ia {
                        out.push((ib, eb));
                        b.next();
                    } else {
                        out.push((ia, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        LambdaMono(out.into_boxed_slice())
    }

    /// Total weight under the given per-variable weight function.
    pub fn weight(&self, w: &dyn Fn(LambdaIdx) -> i64) -> i64 {
        self.0.iter().map(|&(idx, e)| w(idx) * e as i64).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }
}

/// A polynomial in the lambda variables with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    terms: BTreeMap<LambdaMono, Rational>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn one() -> Self {
        LambdaPoly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(LambdaMono::one(), r);
        }
        LambdaPoly { terms }
    }

    pub fn var(idx: LambdaIdx) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(LambdaMono::var(idx), Rational::one());
        LambdaPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (LambdaMono, Rational)>) -> Self {
        let mut p = LambdaPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LambdaMono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Returns the value if the polynomial is constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, mono: LambdaMono, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> LambdaPoly {
        if r.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LambdaPoly {
        let mut out = LambdaPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The common weight of all terms, or `None` if the polynomial is zero
    /// or not homogeneous.
    pub fn homogeneous_weight(&self, w: &dyn Fn(LambdaIdx) -> i64) -> Option<i64> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight(w);
        it.all(|m| m.weight(w) == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, w: &dyn Fn(LambdaIdx) -> i64, expected: i64) -> bool {
        self.is_zero() || self.homogeneous_weight(w) == Some(expected)
    }

    /// Substitutes rational values for a subset of the variables.
    pub fn substitute(&self, values: &BTreeMap<LambdaIdx, Rational>) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (mono, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut rest: Vec<(LambdaIdx, u32)> = Vec::new();
            for &(idx, e) in mono.pairs() {
                match values.get(&idx) {
                    Some(v) => {
                        for _ in 0..e {
                            c *= v;
                        }
                    }
                    None => rest.push((idx, e)),
                }
            }
            out.add_term(LambdaMono::from_pairs(rest), c);
        }
        out
    }

    /// Canonical string form: terms in lexicographic monomial order, each
    /// `p/q*l[i,j]^e*...`, joined by ` + ` / ` - `.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (mono, coeff)) in self.terms.iter().enumerate() {
            let neg = coeff.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&rat_string(&coeff.abs()));
            for &((i, j), e) in mono.pairs() {
                out.push_str(&format!("*l[{i},{j}]"));
                if e > 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }

    /// Parses the canonical string form produced by [`canonical_string`].
    pub fn parse_canonical(text: &str) -> Result<LambdaPoly> {
        let text = text.trim();
        let bad = |detail: String| Error::Parse {
            what: format!("polynomial '{text}'"),
            detail,
        };
        if text == "0" {
            return Ok(LambdaPoly::zero());
        }
        let mut out = LambdaPoly::zero();
        // Split into signed terms on top-level " + " / " - ".
        let mut rest = text;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        }
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(p), Some(m)) if p < m => (&rest[..p], Some((1, &rest[p + 3..]))),
                (Some(_), Some(m)) => (&rest[..m], Some((-1, &rest[m + 3..]))),
                (Some(p), None) => (&rest[..p], Some((1, &rest[p + 3..]))),
                (None, Some(m)) => (&rest[..m], Some((-1, &rest[m + 3..]))),
                (None, None) => (rest, None),
            };
            let mut coeff: Option<Rational> = None;
            let mut pairs: Vec<(LambdaIdx, u32)> = Vec::new();
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Some(body) = factor.strip_prefix("l[") {
                    let (idx_text, exp_text) = match body.split_once(']') {
                        Some((i, rest)) => (i, rest),
                        None => return Err(bad(format!("unclosed l[ in '{factor}'"))),
                    };
                    let (i, j) = idx_text
                        .split_once(',')
                        .ok_or_else(|| bad(format!("bad index in '{factor}'")))?;
                    let i: u32 = i.trim().parse().map_err(|_| bad(format!("bad index '{i}'")))?;
                    let j: u32 = j.trim().parse().map_err(|_| bad(format!("bad index '{j}'")))?;
                    let e: u32 = match exp_text.strip_prefix('^') {
                        Some(e) => e.trim().parse().map_err(|_| bad(format!("bad exponent '{e}'")))?,
                        None if exp_text.is_empty() => 1,
                        None => return Err(bad(format!("trailing '{exp_text}'"))),
                    };
                    pairs.push(((i, j), e));
                } else {
                    if coeff.is_some() {
                        return Err(bad(format!("two numeric factors near '{factor}'")));
                    }
                    coeff = Some(parse_rational(factor)?);
                }
            }
            let mut c = coeff.unwrap_or_else(Rational::one);
            if sign < 0 {
                c = -c;
            }
            out.add_term(LambdaMono::from_pairs(pairs), c);
            match next {
                Some((s, r)) => {
                    sign = s;
                    rest = r;
                }
                None => break,
            }
        }
        Ok(out)
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn l(i: u32, j: u32) -> LambdaPoly {
        LambdaPoly::var((i, j))
    }

    #[test]
    fn arithmetic_and_normalization() {
        let p = &(&l(1, 0) + &l(0, 0)) * &(&l(1, 0) - &l(0, 0));
        let q = &(&l(1, 0) * &l(1, 0)) - &(&l(0, 0) * &l(0, 0));
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn homogeneity() {
        // Weights as on the (2,3) curve: w(i,j) = 6 - 2i - 3j.
        let w = |(i, j): LambdaIdx| 6 - 2 * i as i64 - 3 * j as i64;
        let p = &(&l(0, 0) * &l(1, 0)) + &(&l(1, 0) * &(&l(1, 0) * &l(2, 0)));
        assert_eq!(p.homogeneous_weight(&w), Some(10));
        let q = &l(0, 0) + &l(1, 0);
        assert_eq!(q.homogeneous_weight(&w), None);
    }

    #[test]
    fn substitution() {
        let p = &(&l(1, 0) * &l(1, 0)) + &l(0, 0);
        let mut vals = BTreeMap::new();
        vals.insert((1, 0), rat(1, 2));
        let sub = p.substitute(&vals);
        assert_eq!(sub, &LambdaPoly::constant(rat(1, 4)) + &l(0, 0));
        vals.insert((0, 0), rat(-1, 4));
        assert!(p.substitute(&vals).is_zero());
    }

    #[test]
    fn canonical_string_round_trip() {
        let p = &(&LambdaPoly::constant(rat(-1, 3)) * &(&l(1, 0) * &l(0, 1))) + &l(2, 0).pow(3);
        let s = p.canonical_string();
        assert_eq!(LambdaPoly::parse_canonical(&s).unwrap(), p);
        assert_eq!(LambdaPoly::parse_canonical("0").unwrap(), LambdaPoly::zero());
        assert_eq!(
            LambdaPoly::parse_canonical("1/60*l[1,0]").unwrap(),
            l(1, 0).scale(&rat(1, 60))
        );
        assert_eq!(LambdaPoly::parse_canonical("-1").unwrap(), LambdaPoly::constant(rat(-1, 1)));
    }
}
