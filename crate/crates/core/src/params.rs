//! Sparse polynomials in a fixed list of named scalar parameters, with
//! exact rational coefficients.
//!
//! Every polynomial carries its parameter list; arithmetic between
//! polynomials over different lists is an arity error. Inverse boundary
//! rates are represented by their own parameters (`A` for `1/alpha`, `B`
//! for `1/beta`) so that all values stay polynomial.

use crate::rational::{CRat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Fixed, ordered list of parameter names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSet {
    names: Vec<String>,
}

impl ParamSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Arc<Self> {
        Arc::new(ParamSet {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    /// No parameters: coefficients are plain rationals.
    pub fn empty() -> Arc<Self> {
        Self::new(Vec::<String>::new())
    }

    /// Parameters of the matrix-ansatz bracket.
    pub fn ansatz() -> Arc<Self> {
        Self::new(["alpha", "beta", "q", "xi"])
    }

    /// Parameters of the tree-side bracket `[.]`.
    pub fn tree_bracket() -> Arc<Self> {
        Self::new(["a", "b", "q"])
    }

    /// Parameters of the permutation-side partition sums; `A = 1/alpha`,
    /// `B = 1/beta`.
    pub fn inverse_rates() -> Arc<Self> {
        Self::new(["A", "B", "q"])
    }

    /// Parameters of the two-variable-family Eulerian polynomials.
    pub fn eulerian_ab() -> Arc<Self> {
        Self::new(["a", "b"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    ArityMismatch,
    ZeroPolynomial,
    IndexOutOfRange,
    MissingAssignment(String),
    SymbolicParameters(String),
    NotMultiaffine,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ArityMismatch => write!(f, "incompatible variable or parameter arity"),
            PolyError::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            PolyError::IndexOutOfRange => write!(f, "variable index out of range"),
            PolyError::MissingAssignment(v) => write!(f, "no value assigned to {v}"),
            PolyError::SymbolicParameters(p) => {
                write!(f, "operation requires numeric coefficients, {p} is symbolic")
            }
            PolyError::NotMultiaffine => write!(f, "product would not be multiaffine"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Sparse polynomial over a [`ParamSet`]: exponent vector -> coefficient.
/// Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct ParamPoly {
    params: Arc<ParamSet>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        self.params.names() == other.params.names() && self.terms == other.terms
    }
}

impl Eq for ParamPoly {}

impl ParamPoly {
    pub fn zero(params: Arc<ParamSet>) -> Self {
        ParamPoly {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: Arc<ParamSet>) -> Self {
        Self::constant(params, Rat::one())
    }

    pub fn constant(params: Arc<ParamSet>, value: Rat) -> Self {
        let mut p = Self::zero(params);
        if !value.is_zero() {
            p.terms.insert(vec![0; p.params.len()], value);
        }
        p
    }

    /// The single parameter `params[idx]`.
    pub fn var(params: Arc<ParamSet>, idx: usize) -> Self {
        assert!(idx < params.len(), "parameter index {idx} out of range");
        let mut exps = vec![0; params.len()];
        exps[idx] = 1;
        Self::monomial(params, exps, Rat::one())
    }

    pub fn var_named(params: Arc<ParamSet>, name: &str) -> Self {
        let idx = params
            .index(name)
            .unwrap_or_else(|| panic!("unknown parameter {name}"));
        Self::var(params, idx)
    }

    pub fn monomial(params: Arc<ParamSet>, exps: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exps.len(), params.len(), "exponent arity mismatch");
        let mut p = Self::zero(params);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    fn same_params(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.params, &other.params)
            || self.params.names() == other.params.names()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: Rat) {
        assert_eq!(exps.len(), self.params.len(), "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if !self.same_params(other) {
            return Err(PolyError::ArityMismatch);
        }
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            out.add_term(exps.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if !self.same_params(other) {
            return Err(PolyError::ArityMismatch);
        }
        let mut out = Self::zero(self.params.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.params.clone());
        }
        ParamPoly {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.params.clone());
        for _ in 0..e {
            out = out.try_mul(self).expect("same params");
        }
        out
    }

    /// Evaluate with one rational value per parameter.
    pub fn eval(&self, values: &[Rat]) -> Result<Rat, PolyError> {
        if values.len() != self.params.len() {
            return Err(PolyError::ArityMismatch);
        }
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (e, v) in exps.iter().zip(values) {
                for _ in 0..*e {
                    term *= v;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, values: &[CRat]) -> Result<CRat, PolyError> {
        if values.len() != self.params.len() {
            return Err(PolyError::ArityMismatch);
        }
        let mut acc = CRat::new(Rat::zero(), Rat::zero());
        for (exps, c) in &self.terms {
            let mut term = CRat::new(c.clone(), Rat::zero());
            for (e, v) in exps.iter().zip(values) {
                for _ in 0..*e {
                    term = term * v.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Substitute values for a subset of the parameters; `None` keeps the
    /// parameter symbolic. The parameter list is unchanged.
    pub fn substitute(&self, values: &[Option<Rat>]) -> Result<Self, PolyError> {
        if values.len() != self.params.len() {
            return Err(PolyError::ArityMismatch);
        }
        let mut out = Self::zero(self.params.clone());
        for (exps, c) in &self.terms {
            let mut coeff = c.clone();
            let mut new_exps = exps.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    for _ in 0..exps[i] {
                        coeff *= v;
                    }
                    new_exps[i] = 0;
                }
            }
            out.add_term(new_exps, coeff);
        }
        Ok(out)
    }

    /// Fully numeric value; errors naming the first symbolic parameter left.
    pub fn constant_value(&self) -> Result<Rat, PolyError> {
        match self.as_constant() {
            Some(c) => Ok(c),
            None => {
                let exps = self.terms.keys().next().unwrap();
                let idx = exps.iter().position(|&e| e > 0).unwrap();
                Err(PolyError::SymbolicParameters(
                    self.params.names()[idx].clone(),
                ))
            }
        }
    }

    pub fn max_degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    /// Sum of all coefficients, i.e. the value at all parameters = 1.
    pub fn coeff_sum(&self) -> Rat {
        self.terms.values().sum()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || exps.iter().all(|&e| e == 0) {
                parts.push(crate::rational::format_rat(c));
            }
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    parts.push(self.params.names()[i].clone());
                } else if e > 1 {
                    parts.push(format!("{}^{}", self.params.names()[i], e));
                }
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}", parts.join("*"))?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ab() -> Arc<ParamSet> {
        ParamSet::new(["a", "b"])
    }

    #[test]
    fn constant_and_var_basics() {
        let ps = ab();
        let a = ParamPoly::var_named(ps.clone(), "a");
        let one = ParamPoly::one(ps.clone());
        assert!(ParamPoly::zero(ps.clone()).is_zero());
        assert!(one.is_one());
        assert_eq!(a.try_mul(&one).unwrap(), a);
        assert_eq!(a.as_constant(), None);
    }

    #[test]
    fn add_cancels_to_zero() {
        let ps = ab();
        let a = ParamPoly::var_named(ps.clone(), "a");
        let sum = a.try_add(&a.neg()).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn mul_collects_exponents() {
        let ps = ab();
        let a = ParamPoly::var_named(ps.clone(), "a");
        let b = ParamPoly::var_named(ps.clone(), "b");
        let p = a.try_mul(&b).unwrap().try_mul(&a).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (exps, c) = p.terms().next().unwrap();
        assert_eq!(exps, &vec![2, 1]);
        assert_eq!(c, &int(1));
    }

    #[test]
    fn arity_mismatch_detected() {
        let p = ParamPoly::one(ab());
        let q = ParamPoly::one(ParamSet::new(["a", "b", "q"]));
        assert_eq!(p.try_add(&q), Err(PolyError::ArityMismatch));
    }

    #[test]
    fn eval_and_substitute_agree() {
        let ps = ab();
        let a = ParamPoly::var_named(ps.clone(), "a");
        let b = ParamPoly::var_named(ps.clone(), "b");
        // 2a^2 + ab
        let p = a
            .try_mul(&a)
            .unwrap()
            .scale(&int(2))
            .try_add(&a.try_mul(&b).unwrap())
            .unwrap();
        let full = p.eval(&[rat(1, 2), int(3)]).unwrap();
        assert_eq!(full, rat(2, 4) + rat(3, 2));
        let half = p.substitute(&[Some(rat(1, 2)), None]).unwrap();
        assert_eq!(half.max_degree_in(0), 0);
        assert_eq!(half.eval(&[int(0), int(3)]).unwrap(), full);
    }

    #[test]
    fn constant_value_reports_symbolic_parameter() {
        let ps = ab();
        let b = ParamPoly::var_named(ps, "b");
        match b.constant_value() {
            Err(PolyError::SymbolicParameters(name)) => assert_eq!(name, "b"),
            other => panic!("expected symbolic-parameter error, got {other:?}"),
        }
    }

    #[test]
    fn display_is_deterministic() {
        let ps = ab();
        let a = ParamPoly::var_named(ps.clone(), "a");
        let p = a.pow(2).scale(&rat(3, 2)).try_add(&ParamPoly::one(ps)).unwrap();
        assert_eq!(p.to_string(), "3/2*a^2 + 1");
    }
}
