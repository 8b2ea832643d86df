//! Multiaffine polynomials in site variables `x1..xn` (optionally paired
//! with `y1..yn`), with [`ParamPoly`] coefficients.
//!
//! Terms are keyed by a pair of bit masks (x-subset, y-subset); bit `i-1`
//! stands for site `i`. Multiaffinity is structural: a mask can hold each
//! variable at most once, and products that would square a variable are
//! rejected.

use crate::params::{ParamPoly, ParamSet, PolyError};
use crate::rational::{CRat, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A site variable, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteVar {
    X(usize),
    Y(usize),
}

#[derive(Debug, Clone)]
pub struct SitePoly {
    n: usize,
    params: Arc<ParamSet>,
    terms: BTreeMap<(u64, u64), ParamPoly>,
}

impl PartialEq for SitePoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.params.names() == other.params.names()
            && self.terms == other.terms
    }
}

impl Eq for SitePoly {}

impl SitePoly {
    pub fn zero(n: usize, params: Arc<ParamSet>) -> Self {
        assert!(n <= 64, "site count over representation limit");
        SitePoly {
            n,
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, params: Arc<ParamSet>) -> Self {
        let coeff = ParamPoly::one(params.clone());
        let mut p = Self::zero(n, params);
        p.add_term(0, 0, coeff);
        p
    }

    pub fn constant(n: usize, coeff: ParamPoly) -> Self {
        let mut p = Self::zero(n, coeff.params().clone());
        p.add_term(0, 0, coeff);
        p
    }

    /// The monomial for an (x-subset, y-subset) pair with coefficient 1.
    pub fn monomial(n: usize, params: Arc<ParamSet>, x_mask: u64, y_mask: u64) -> Self {
        let coeff = ParamPoly::one(params.clone());
        let mut p = Self::zero(n, params);
        p.add_term(x_mask, y_mask, coeff);
        p
    }

    pub fn var(n: usize, params: Arc<ParamSet>, v: SiteVar) -> Self {
        let (xm, ym) = match v {
            SiteVar::X(i) => (1u64 << (i - 1), 0),
            SiteVar::Y(i) => (0, 1u64 << (i - 1)),
        };
        Self::monomial(n, params, xm, ym)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn has_y(&self) -> bool {
        self.terms.keys().any(|&(_, ym)| ym != 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u64, u64), &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x_mask: u64, y_mask: u64) -> ParamPoly {
        self.terms
            .get(&(x_mask, y_mask))
            .cloned()
            .unwrap_or_else(|| ParamPoly::zero(self.params.clone()))
    }

    pub fn add_term(&mut self, x_mask: u64, y_mask: u64, coeff: ParamPoly) {
        let full: u64 = if self.n == 64 { !0 } else { (1u64 << self.n) - 1 };
        assert_eq!(x_mask & !full, 0, "x mask outside site range");
        assert_eq!(y_mask & !full, 0, "y mask outside site range");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((x_mask, y_mask)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().try_add(&coeff).expect("same params");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.n != other.n || self.params.names() != other.params.names() {
            return Err(PolyError::ArityMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (&(xm, ym), c) in &other.terms {
            out.add_term(xm, ym, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SitePoly {
            n: self.n,
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    /// Product; errors with [`PolyError::NotMultiaffine`] when any pair of
    /// terms shares a site variable.
    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = Self::zero(self.n, self.params.clone());
        for (&(xa, ya), ca) in &self.terms {
            for (&(xb, yb), cb) in &other.terms {
                if xa & xb != 0 || ya & yb != 0 {
                    return Err(PolyError::NotMultiaffine);
                }
                out.add_term(xa | xb, ya | yb, ca.try_mul(cb)?);
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by a [`ParamPoly`].
    pub fn scale(&self, c: &ParamPoly) -> Self {
        let mut out = Self::zero(self.n, self.params.clone());
        for (&(xm, ym), k) in &self.terms {
            out.add_term(xm, ym, k.try_mul(c).expect("same params"));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.n, self.params.clone());
        for (&(xm, ym), k) in &self.terms {
            out.add_term(xm, ym, k.scale(c));
        }
        out
    }

    /// Exact formal derivative. For a multiaffine polynomial this extracts
    /// the terms containing the variable and drops it from their masks.
    pub fn partial_derivative(&self, v: SiteVar) -> Result<Self, PolyError> {
        let i = match v {
            SiteVar::X(i) | SiteVar::Y(i) => i,
        };
        if i == 0 || i > self.n {
            return Err(PolyError::IndexOutOfRange);
        }
        let bit = 1u64 << (i - 1);
        let mut out = Self::zero(self.n, self.params.clone());
        for (&(xm, ym), c) in &self.terms {
            match v {
                SiteVar::X(_) if xm & bit != 0 => out.add_term(xm & !bit, ym, c.clone()),
                SiteVar::Y(_) if ym & bit != 0 => out.add_term(xm, ym & !bit, c.clone()),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Exact evaluation at complex-rational points. `xs` and `ys` assign all
    /// site variables; `param_values` assigns all parameters.
    pub fn evaluate(
        &self,
        xs: &[CRat],
        ys: &[CRat],
        param_values: &[Rat],
    ) -> Result<CRat, PolyError> {
        if xs.len() != self.n || (self.has_y() && ys.len() != self.n) {
            return Err(PolyError::MissingAssignment("site variable".into()));
        }
        let zero = CRat::new(Rat::zero(), Rat::zero());
        // Subset products share work across terms: product over a mask is
        // product over (mask minus lowest bit) times one more factor.
        let mut acc = zero.clone();
        let mut x_cache: BTreeMap<u64, CRat> = BTreeMap::new();
        let mut y_cache: BTreeMap<u64, CRat> = BTreeMap::new();
        let one = CRat::new(Rat::one(), Rat::zero());
        x_cache.insert(0, one.clone());
        y_cache.insert(0, one);
        fn subset_product(cache: &mut BTreeMap<u64, CRat>, values: &[CRat], mask: u64) -> CRat {
            if let Some(v) = cache.get(&mask) {
                return v.clone();
            }
            let low = mask & mask.wrapping_neg();
            let rest = subset_product(cache, values, mask & !low);
            let idx = low.trailing_zeros() as usize;
            let v = rest * values[idx].clone();
            cache.insert(mask, v.clone());
            v
        }
        for (&(xm, ym), c) in &self.terms {
            let cv = c.eval(param_values)?;
            if cv.is_zero() {
                continue;
            }
            let mut term = subset_product(&mut x_cache, xs, xm);
            if ym != 0 {
                term = term * subset_product(&mut y_cache, ys, ym);
            }
            acc = acc + term * CRat::new(cv, Rat::zero());
        }
        Ok(acc)
    }

    /// Substitute values for a subset of the parameters.
    pub fn substitute_params(&self, values: &[Option<Rat>]) -> Result<Self, PolyError> {
        let mut out = Self::zero(self.n, self.params.clone());
        for (&(xm, ym), c) in &self.terms {
            out.add_term(xm, ym, c.substitute(values)?);
        }
        Ok(out)
    }

    /// Fully substitute all parameters, yielding a polynomial with plain
    /// rational coefficients (empty parameter set).
    pub fn to_numeric(&self, values: &[Rat]) -> Result<Self, PolyError> {
        let empty = ParamSet::empty();
        let mut out = Self::zero(self.n, empty.clone());
        for (&(xm, ym), c) in &self.terms {
            let v = c.eval(values)?;
            out.add_term(xm, ym, ParamPoly::constant(empty.clone(), v));
        }
        Ok(out)
    }

    /// Set every `y_i` to 1, merging terms.
    pub fn set_y_to_one(&self) -> Self {
        let mut out = Self::zero(self.n, self.params.clone());
        for (&(xm, _), c) in &self.terms {
            out.add_term(xm, 0, c.clone());
        }
        out
    }

    /// Reindex sites `i -> i + offset`, growing `n` accordingly.
    pub fn shift_sites(&self, offset: usize) -> Self {
        let mut out = Self::zero(self.n + offset, self.params.clone());
        for (&(xm, ym), c) in &self.terms {
            out.add_term(xm << offset, ym << offset, c.clone());
        }
        out
    }

    /// Substitute `x_i -> x` and `y_i -> y` for every site.
    pub fn diagonal(&self) -> DiagonalPoly {
        let mut terms: BTreeMap<(u32, u32), ParamPoly> = BTreeMap::new();
        for (&(xm, ym), c) in &self.terms {
            let key = (xm.count_ones(), ym.count_ones());
            match terms.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = o.get().try_add(c).expect("same params");
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        DiagonalPoly {
            params: self.params.clone(),
            terms,
        }
    }

    /// Sum of all coefficients (the value at all site variables = 1).
    pub fn coefficient_sum(&self) -> ParamPoly {
        let mut acc = ParamPoly::zero(self.params.clone());
        for c in self.terms.values() {
            acc = acc.try_add(c).expect("same params");
        }
        acc
    }

    /// Exact proportionality test: `self = c * other` for some nonzero
    /// constant `c` (in the parameters). Implemented by cross-multiplying
    /// with the coefficient sums, which normalizes both sides exactly.
    /// When both sums are numeric the ratio is additionally required to be
    /// positive.
    pub fn proportional_to(&self, other: &Self) -> Result<bool, PolyError> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let s = self.coefficient_sum();
        let t = other.coefficient_sum();
        if s.is_zero() || t.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if let (Some(sv), Some(tv)) = (s.as_constant(), t.as_constant()) {
            if sv.is_positive() != tv.is_positive() {
                return Ok(false);
            }
        }
        Ok(self.scale(&t) == other.scale(&s))
    }
}

impl fmt::Display for SitePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(xm, ym), c) in &self.terms {
            let mut mono = String::new();
            for i in 0..self.n {
                if xm >> i & 1 == 1 {
                    mono.push_str(&format!("*x{}", i + 1));
                }
            }
            for i in 0..self.n {
                if ym >> i & 1 == 1 {
                    mono.push_str(&format!("*y{}", i + 1));
                }
            }
            if !first {
                write!(f, " + ")?;
            }
            if c.num_terms() > 1 {
                write!(f, "({c}){mono}")?;
            } else {
                write!(f, "{c}{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Result of the diagonal restriction: a polynomial in single variables
/// `x` (and `y`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalPoly {
    params: Arc<ParamSet>,
    terms: BTreeMap<(u32, u32), ParamPoly>,
}

impl DiagonalPoly {
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ParamPoly)> {
        self.terms.iter()
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn coefficient(&self, x_deg: u32, y_deg: u32) -> ParamPoly {
        self.terms
            .get(&(x_deg, y_deg))
            .cloned()
            .unwrap_or_else(|| ParamPoly::zero(self.params.clone()))
    }

    /// Product of diagonal polynomials (exponents add, no affine cap).
    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.params.names() != other.params.names() {
            return Err(PolyError::ArityMismatch);
        }
        let mut terms: BTreeMap<(u32, u32), ParamPoly> = BTreeMap::new();
        for ((xa, ya), ca) in &self.terms {
            for ((xb, yb), cb) in &other.terms {
                let key = (xa + xb, ya + yb);
                let prod = ca.try_mul(cb)?;
                match terms.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let sum = o.get().try_add(&prod)?;
                        if sum.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Ok(DiagonalPoly {
            params: self.params.clone(),
            terms,
        })
    }

    /// Dense coefficient vector in `x` for a `y`-free diagonal with numeric
    /// coefficients: index `k` holds the coefficient of `x^k`.
    pub fn univariate_in_x(&self) -> Result<Vec<Rat>, PolyError> {
        let mut deg = 0;
        for (&(xd, yd), _) in &self.terms {
            if yd != 0 {
                return Err(PolyError::ArityMismatch);
            }
            deg = deg.max(xd);
        }
        let mut out = vec![Rat::zero(); deg as usize + 1];
        for (&(xd, _), c) in &self.terms {
            out[xd as usize] = c.constant_value()?;
        }
        Ok(out)
    }
}

impl fmt::Display for DiagonalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(xd, yd), c) in &self.terms {
            let mut mono = String::new();
            match xd {
                0 => {}
                1 => mono.push_str("*x"),
                d => mono.push_str(&format!("*x^{d}")),
            }
            match yd {
                0 => {}
                1 => mono.push_str("*y"),
                d => mono.push_str(&format!("*y^{d}")),
            }
            if !first {
                write!(f, " + ")?;
            }
            if c.num_terms() > 1 {
                write!(f, "({c}){mono}")?;
            } else {
                write!(f, "{c}{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{crat, crat_is_zero, int, rat};

    fn empty() -> Arc<ParamSet> {
        ParamSet::empty()
    }

    fn x(n: usize, i: usize) -> SitePoly {
        SitePoly::var(n, empty(), SiteVar::X(i))
    }

    #[test]
    fn add_merges_like_terms() {
        // (x1 + x2) + x1 = 2 x1 + x2
        let p = x(2, 1).try_add(&x(2, 2)).unwrap().try_add(&x(2, 1)).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(0b01, 0).as_constant(), Some(int(2)));
        assert_eq!(p.coefficient(0b10, 0).as_constant(), Some(int(1)));
    }

    #[test]
    fn mul_identity_and_disjoint_product() {
        let one = SitePoly::one(2, empty());
        let p = x(2, 1).try_add(&one).unwrap();
        assert_eq!(p.try_mul(&SitePoly::one(2, empty())).unwrap(), p);
        let ab = ParamSet::new(["a", "b"]);
        let a = ParamPoly::var_named(ab.clone(), "a");
        let b = ParamPoly::var_named(ab.clone(), "b");
        let ax1 = SitePoly::var(2, ab.clone(), SiteVar::X(1)).scale(&a);
        let bx2 = SitePoly::var(2, ab.clone(), SiteVar::X(2)).scale(&b);
        let prod = ax1.try_mul(&bx2).unwrap();
        assert_eq!(prod.num_terms(), 1);
        assert_eq!(
            prod.coefficient(0b11, 0),
            a.try_mul(&b).unwrap()
        );
    }

    #[test]
    fn mul_rejects_squares() {
        assert_eq!(x(2, 1).try_mul(&x(2, 1)), Err(PolyError::NotMultiaffine));
    }

    #[test]
    fn derivative_examples() {
        // d/dx1 (x1 x2 + x2) = x2
        let p = SitePoly::monomial(2, empty(), 0b11, 0)
            .try_add(&x(2, 2))
            .unwrap();
        assert_eq!(p.partial_derivative(SiteVar::X(1)).unwrap(), x(2, 2));
        // d/dy1 (x1) = 0
        assert!(x(2, 1).partial_derivative(SiteVar::Y(1)).unwrap().is_zero());
        assert_eq!(
            x(2, 1).partial_derivative(SiteVar::X(3)),
            Err(PolyError::IndexOutOfRange)
        );
    }

    #[test]
    fn derivatives_commute() {
        // mixed second derivative of x1 x2 + x1 + x2
        let p = SitePoly::monomial(2, empty(), 0b11, 0)
            .try_add(&x(2, 1))
            .unwrap()
            .try_add(&x(2, 2))
            .unwrap();
        let d12 = p
            .partial_derivative(SiteVar::X(1))
            .unwrap()
            .partial_derivative(SiteVar::X(2))
            .unwrap();
        let d21 = p
            .partial_derivative(SiteVar::X(2))
            .unwrap()
            .partial_derivative(SiteVar::X(1))
            .unwrap();
        assert_eq!(d12, d21);
    }

    #[test]
    fn evaluate_at_i() {
        // (x1 + 1) at x1 = i -> 1 + i
        let p = x(1, 1).try_add(&SitePoly::one(1, empty())).unwrap();
        let i = crat(int(0), int(1));
        let v = p.evaluate(&[i.clone()], &[], &[]).unwrap();
        assert_eq!(v, crat(int(1), int(1)));
        // x1 x2 at x1 = x2 = i -> -1
        let p = SitePoly::monomial(2, empty(), 0b11, 0);
        let v = p.evaluate(&[i.clone(), i], &[], &[]).unwrap();
        assert_eq!(v, crat(int(-1), int(0)));
    }

    #[test]
    fn evaluate_with_parameters() {
        // beta + alpha x1 at x1 = i, alpha = beta = 1 -> 1 + i, nonzero
        let ps = ParamSet::new(["alpha", "beta"]);
        let alpha = ParamPoly::var_named(ps.clone(), "alpha");
        let beta = ParamPoly::var_named(ps.clone(), "beta");
        let p = SitePoly::constant(1, beta)
            .try_add(&SitePoly::var(1, ps, SiteVar::X(1)).scale(&alpha))
            .unwrap();
        let v = p
            .evaluate(&[crat(int(0), int(1))], &[], &[int(1), int(1)])
            .unwrap();
        assert_eq!(v, crat(int(1), int(1)));
        assert!(!crat_is_zero(&v));
    }

    #[test]
    fn diagonal_examples() {
        // x1 + x2 -> 2x
        let p = x(2, 1).try_add(&x(2, 2)).unwrap();
        let d = p.diagonal();
        assert_eq!(d.coefficient(1, 0).as_constant(), Some(int(2)));
        // 1 + x2 + (q+2) x1 + x1 x2 -> 1 + (q+3) x + x^2
        let ps = ParamSet::new(["q"]);
        let q = ParamPoly::var_named(ps.clone(), "q");
        let q2 = q.try_add(&ParamPoly::constant(ps.clone(), int(2))).unwrap();
        let mut p = SitePoly::one(2, ps.clone());
        p.add_term(0b10, 0, ParamPoly::one(ps.clone()));
        p.add_term(0b01, 0, q2);
        p.add_term(0b11, 0, ParamPoly::one(ps.clone()));
        let d = p.diagonal();
        assert_eq!(
            d.coefficient(1, 0),
            q.try_add(&ParamPoly::constant(ps.clone(), int(3))).unwrap()
        );
        assert_eq!(d.coefficient(0, 0), ParamPoly::one(ps.clone()));
        assert_eq!(d.coefficient(2, 0), ParamPoly::one(ps));
    }

    #[test]
    fn diagonal_is_multiplicative() {
        let p = x(3, 1).try_add(&SitePoly::one(3, empty())).unwrap();
        let q = x(3, 2)
            .try_add(&x(3, 3))
            .unwrap()
            .try_add(&SitePoly::one(3, empty()))
            .unwrap();
        let lhs = p.try_mul(&q).unwrap().diagonal();
        let rhs = p.diagonal().try_mul(&q.diagonal()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn proportionality() {
        let two = SitePoly::one(1, empty()).scale_rat(&int(2));
        let p = x(1, 1).scale_rat(&int(2)).try_add(&two).unwrap(); // 2 + 2x1
        let q = x(1, 1).try_add(&SitePoly::one(1, empty())).unwrap(); // 1 + x1
        assert!(p.proportional_to(&q).unwrap());
        let r = x(1, 1).scale_rat(&int(2)).try_add(&SitePoly::one(1, empty())).unwrap();
        assert!(!p.proportional_to(&r).unwrap());
        let zero = SitePoly::zero(1, empty());
        assert_eq!(p.proportional_to(&zero), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn negative_ratio_is_not_proportional() {
        let p = x(1, 1).try_add(&SitePoly::one(1, empty())).unwrap();
        assert!(!p.proportional_to(&p.neg()).unwrap());
    }

    #[test]
    fn shift_and_set_y() {
        let ps = ParamSet::empty();
        let mut p = SitePoly::zero(1, ps.clone());
        p.add_term(1, 0, ParamPoly::constant(ps.clone(), rat(1, 2)));
        p.add_term(0, 1, ParamPoly::constant(ps.clone(), rat(3, 2)));
        let s = p.shift_sites(1);
        assert_eq!(s.n(), 2);
        assert_eq!(s.coefficient(0b10, 0).as_constant(), Some(rat(1, 2)));
        assert_eq!(s.coefficient(0, 0b10).as_constant(), Some(rat(3, 2)));
        let flat = s.set_y_to_one();
        assert_eq!(flat.coefficient(0, 0).as_constant(), Some(rat(3, 2)));
        assert!(!flat.has_y());
    }
}
