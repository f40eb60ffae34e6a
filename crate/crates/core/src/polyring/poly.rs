use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: Context, right: Context },
    #[error("variable index {index} out of range for dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("context has no adjoined epsilon")]
    NoEpsilon,
    #[error("polynomial depends on epsilon")]
    DependsOnEpsilon,
    #[error("divisor is not monic")]
    NotMonic,
    #[error("divisor is zero")]
    ZeroDivisor,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// The ambient coordinate system of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Context {
    dim: usize,
    has_epsilon: bool,
}

impl Context {
    pub fn new(dim: usize) -> Result<Self, PolyError> {
        if dim < 2 {
            return Err(PolyError::DimensionTooSmall(dim));
        }
        Ok(Self {
            dim,
            has_epsilon: false,
        })
    }

    pub fn with_epsilon(dim: usize) -> Result<Self, PolyError> {
        let mut ctx = Self::new(dim)?;
        ctx.has_epsilon = true;
        Ok(ctx)
    }

    /// Number of coordinates `x1..xn`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_epsilon(&self) -> bool {
        self.has_epsilon
    }

    /// Same dimension with `eps` adjoined.
    pub fn epsilon_extension(&self) -> Self {
        Self {
            dim: self.dim,
            has_epsilon: true,
        }
    }

    /// Length of an exponent vector: the coordinates plus one slot for `eps`.
    pub fn nvars(&self) -> usize {
        self.dim + usize::from(self.has_epsilon)
    }

    pub(crate) fn epsilon_slot(&self) -> Option<usize> {
        self.has_epsilon.then_some(self.dim)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^{}", self.dim)?;
        if self.has_epsilon {
            write!(f, "[eps]")?;
        }
        Ok(())
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[var] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with rational coefficients in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Context,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: Context) -> Self {
        Self {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: Context) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: Context, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.nvars()), c);
        }
        p
    }

    /// The coordinate `x_{var+1}` (indices are zero-based).
    pub fn var(ctx: Context, var: usize) -> Result<Self, PolyError> {
        if var >= ctx.dim {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                dim: ctx.dim,
            });
        }
        let m = Monomial::one(ctx.nvars()).with_exponent(var, 1);
        Ok(Self::from_terms(ctx, [(m, Rational::one())]))
    }

    pub fn epsilon(ctx: Context) -> Result<Self, PolyError> {
        let slot = ctx.epsilon_slot().ok_or(PolyError::NoEpsilon)?;
        let m = Monomial::one(ctx.nvars()).with_exponent(slot, 1);
        Ok(Self::from_terms(ctx, [(m, Rational::one())]))
    }

    /// `coeff * x^exps`; `exps` must have length `ctx.nvars()`.
    pub fn monomial(ctx: Context, exps: &[u32], coeff: Rational) -> Self {
        assert_eq!(exps.len(), ctx.nvars(), "exponent vector length");
        Self::from_terms(ctx, [(Monomial::from_exponents(exps), coeff)])
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(ctx: Context, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), ctx.nvars());
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<(), PolyError> {
        if self.ctx != other.ctx {
            return Err(PolyError::ContextMismatch {
                left: self.ctx,
                right: other.ctx,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ctx(other)?;
        let mut out = Self::zero(self.ctx);
        out.add_product_unchecked(self, other);
        Ok(out)
    }

    /// `self += other`, contexts assumed equal.
    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += a * b`, contexts assumed equal.
    pub(crate) fn add_product_unchecked(&mut self, a: &Self, b: &Self) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    /// In-place accumulation; panics on context mismatch.
    pub fn add_assign_ref(&mut self, other: &Self) {
        self.check_ctx(other).expect("polynomial context mismatch");
        self.add_assign_unchecked(other);
    }

    /// `self += a * b`; panics on context mismatch.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        self.check_ctx(a).expect("polynomial context mismatch");
        self.check_ctx(b).expect("polynomial context mismatch");
        self.add_product_unchecked(a, b);
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        Self {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to the coordinate `x_{var+1}`.
    pub fn diff(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.ctx.dim {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                dim: self.ctx.dim,
            });
        }
        Ok(self.diff_unchecked(var))
    }

    pub(crate) fn diff_unchecked(&self, var: usize) -> Self {
        let mut out = Self::zero(self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            out.terms.insert(
                m.with_exponent(var, e - 1),
                c * Rational::from_integer(e.into()),
            );
        }
        out
    }

    /// Splits by powers of `eps`: entry `k` holds the coefficient of `eps^k`.
    pub fn epsilon_orders(&self) -> Result<BTreeMap<u32, Polynomial>, PolyError> {
        let slot = self.ctx.epsilon_slot().ok_or(PolyError::NoEpsilon)?;
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.0[slot])
                .or_insert_with(|| Polynomial::zero(self.ctx))
                .terms
                .insert(m.with_exponent(slot, 0), c.clone());
        }
        Ok(out)
    }

    pub fn depends_on_epsilon(&self) -> bool {
        match self.ctx.epsilon_slot() {
            Some(slot) => self.terms.keys().any(|m| m.0[slot] > 0),
            None => false,
        }
    }

    /// Re-embeds into the same dimension with `eps` adjoined.
    pub fn lift_epsilon(&self) -> Self {
        if self.ctx.has_epsilon {
            return self.clone();
        }
        let ctx = self.ctx.epsilon_extension();
        Self {
            ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drops the `eps` slot; fails if some term depends on `eps`.
    pub fn drop_epsilon(&self) -> Result<Self, PolyError> {
        if !self.ctx.has_epsilon {
            return Ok(self.clone());
        }
        if self.depends_on_epsilon() {
            return Err(PolyError::DependsOnEpsilon);
        }
        let ctx = Context::new(self.ctx.dim)?;
        Ok(Self {
            ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::from_exponents(&m.0[..ctx.dim]), c.clone()))
                .collect(),
        })
    }

    /// Renders in the polynomial text grammar, highest grlex term first.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub(crate) fn write_with_names(
        &self,
        f: &mut impl fmt::Write,
        name: impl Fn(usize) -> String,
    ) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (pos, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (var, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(name(var)),
                    _ => factors.push(format!("{}^{}", name(var), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }

    pub(crate) fn var_name(ctx: Context, var: usize) -> String {
        if Some(var) == ctx.epsilon_slot() {
            "eps".to_string()
        } else {
            format!("x{}", var + 1)
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.ctx;
        self.write_with_names(f, |v| Polynomial::var_name(ctx, v))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial context mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial context mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn ctx4() -> Context {
        Context::new(4).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, ctx4()).unwrap()
    }

    #[test]
    fn dimension_must_be_at_least_two() {
        assert_eq!(Context::new(1), Err(PolyError::DimensionTooSmall(1)));
        assert!(Context::new(2).is_ok());
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!((&p("x1") + &p("-x1")).is_zero());
    }

    #[test]
    fn disjoint_monomials_concatenate() {
        let s = &p("2*x1*x2^3*x3^5*x4") + &p("x2^3*x3^6*x4");
        assert_eq!(s.len(), 2);
        assert_eq!(s, p("2*x1*x2^3*x3^5*x4 + x2^3*x3^6*x4"));
    }

    #[test]
    fn jacobi_terms_of_example_sum_to_zero() {
        let m = "x1*x2^5*x3^11*x4^2";
        let coeffs = [6, -6, -6, 6, -18, 18, 12, -6, -6];
        let mut acc = Polynomial::zero(ctx4());
        for c in coeffs {
            acc = &acc + &p(&format!("{c}*{m}"));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn multiplication_by_zero_and_one() {
        let q = p("x1^3 + x2^2");
        assert!((&q * &Polynomial::zero(ctx4())).is_zero());
        assert_eq!(&q * &Polynomial::one(ctx4()), q);
    }

    #[test]
    fn hand_expanded_product() {
        let prod = &p("x1^3 + x2^2") * &p("x2*x3 - x1*x3");
        assert_eq!(prod, p("x1^3*x2*x3 - x1^4*x3 + x2^3*x3 - x1*x2^2*x3"));
    }

    #[test]
    fn power_rule() {
        assert!(Polynomial::constant(ctx4(), rat(7))
            .diff(0)
            .unwrap()
            .is_zero());
        let d = p("-2*x1*x2^3*x3^5*x4").diff(2).unwrap();
        assert_eq!(d, p("-10*x1*x2^3*x3^4*x4"));
    }

    #[test]
    fn diff_out_of_range() {
        assert_eq!(
            p("x1").diff(4),
            Err(PolyError::VariableOutOfRange { index: 4, dim: 4 })
        );
    }

    #[test]
    fn cross_context_is_an_error() {
        let a = Polynomial::one(ctx4());
        let b = Polynomial::one(Context::new(3).unwrap());
        assert!(matches!(
            a.try_add(&b),
            Err(PolyError::ContextMismatch { .. })
        ));
        assert!(matches!(
            a.try_mul(&b),
            Err(PolyError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn epsilon_is_not_differentiated() {
        let ctx = Context::with_epsilon(3).unwrap();
        let q = Polynomial::parse("eps*x1^2 + eps^2*x2", ctx).unwrap();
        assert_eq!(
            q.diff(0).unwrap(),
            Polynomial::parse("2*eps*x1", ctx).unwrap()
        );
        assert!(q.diff(3).is_err());
        let orders = q.epsilon_orders().unwrap();
        assert_eq!(orders[&1], Polynomial::parse("x1^2", ctx).unwrap());
        assert_eq!(orders[&2], Polynomial::parse("x2", ctx).unwrap());
    }

    #[test]
    fn lift_and_drop_epsilon() {
        let q = p("x1*x2 - 3");
        let lifted = q.lift_epsilon();
        assert!(lifted.ctx().has_epsilon());
        assert_eq!(lifted.drop_epsilon().unwrap(), q);
        let e = Polynomial::epsilon(lifted.ctx()).unwrap();
        assert_eq!(
            (&lifted * &e).drop_epsilon(),
            Err(PolyError::DependsOnEpsilon)
        );
    }

    #[test]
    fn render_is_graded_lex_descending() {
        assert_eq!(p("x2^2 + x1^3").render(), "x1^3 + x2^2");
        assert_eq!(p("x2 + x1 + 1").render(), "x1 + x2 + 1");
        assert_eq!(p("-x1 + 1/2").render(), "-x1 + 1/2");
    }
}
