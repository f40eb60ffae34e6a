use num_traits::One;

use super::poly::{Context, PolyError, Polynomial};
use super::Rational;

/// Univariate polynomial in an auxiliary variable `lambda` whose
/// coefficients are polynomials in a fixed [`Context`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    ctx: Context,
    /// `coeffs[k]` multiplies `lambda^k`; the last entry is nonzero.
    coeffs: Vec<Polynomial>,
}

/// One term `coeff * x^x_exp * y^y_exp` of a bivariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateTerm {
    pub x_exp: u32,
    pub y_exp: u32,
    pub coeff: Rational,
}

impl BivariateTerm {
    pub fn new(x_exp: u32, y_exp: u32, coeff: Rational) -> Self {
        Self {
            x_exp,
            y_exp,
            coeff,
        }
    }
}

impl UPoly {
    pub fn zero(ctx: Context) -> Self {
        Self {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: Context) -> Self {
        Self::constant(Polynomial::one(ctx))
    }

    pub fn constant(c: Polynomial) -> Self {
        Self::from_coeffs(c.ctx(), vec![c])
    }

    /// `lambda`
    pub fn lambda(ctx: Context) -> Self {
        Self::from_coeffs(ctx, vec![Polynomial::zero(ctx), Polynomial::one(ctx)])
    }

    /// Builds from coefficients in ascending `lambda` degree.
    pub fn from_coeffs(ctx: Context, mut coeffs: Vec<Polynomial>) -> Self {
        assert!(coeffs.iter().all(|c| c.ctx() == ctx), "coefficient context");
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        Self { ctx, coeffs }
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Polynomial {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.ctx))
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| *c == Polynomial::one(self.ctx))
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
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Ok(Self::from_coeffs(self.ctx, coeffs))
    }

    /// Convolution product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ctx));
        }
        let mut coeffs =
            vec![Polynomial::zero(self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j].add_product_unchecked(a, b);
            }
        }
        Ok(Self::from_coeffs(self.ctx, coeffs))
    }

    /// Euclidean division by a monic divisor: returns `(quotient, remainder)`
    /// with `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check_ctx(divisor)?;
        let d = divisor.degree().ok_or(PolyError::ZeroDivisor)?;
        if !divisor.is_monic() {
            return Err(PolyError::NotMonic);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Polynomial::zero(self.ctx); rem.len().saturating_sub(d)];
        for top in (d..rem.len()).rev() {
            let lead = std::mem::replace(&mut rem[top], Polynomial::zero(self.ctx));
            if lead.is_zero() {
                continue;
            }
            let shift = top - d;
            for k in 0..d {
                rem[shift + k].add_product_unchecked(&-&lead, &divisor.coeffs[k]);
            }
            quot[shift] = lead;
        }
        rem.truncate(d);
        Ok((
            Self::from_coeffs(self.ctx, quot),
            Self::from_coeffs(self.ctx, rem),
        ))
    }

    pub fn rem_monic(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem_monic(divisor)?.1)
    }

    /// For monic `self = lambda^d + u1 lambda^(d-1) + ... + ud`, the polynomial
    /// part `[self / lambda^(d-i+1)]_+ = lambda^(i-1) + u1 lambda^(i-2) + ... + u(i-1)`.
    pub fn plus_part(&self, i: usize, d: usize) -> Result<Self, PolyError> {
        if self.degree() != Some(d) || !self.is_monic() {
            return Err(PolyError::NotMonic);
        }
        if i == 0 || i > d {
            return Err(PolyError::IndexOutOfRange { index: i, max: d });
        }
        let shift = d - i + 1;
        Ok(Self::from_coeffs(self.ctx, self.coeffs[shift..].to_vec()))
    }

    /// Evaluates `phi(lambda, v(lambda))` for `phi = sum coeff * x^a * y^b`.
    pub fn compose_bivariate(phi: &[BivariateTerm], v: &UPoly) -> UPoly {
        let ctx = v.ctx;
        let max_b = phi.iter().map(|t| t.y_exp).max().unwrap_or(0);
        let mut v_pows = vec![UPoly::one(ctx)];
        for b in 1..=max_b as usize {
            let next = v_pows[b - 1].try_mul(v).expect("same context");
            v_pows.push(next);
        }
        let mut acc = UPoly::zero(ctx);
        for t in phi {
            let mut coeffs = vec![Polynomial::zero(ctx); t.x_exp as usize];
            coeffs.push(Polynomial::constant(ctx, t.coeff.clone()));
            let term = UPoly::from_coeffs(ctx, coeffs)
                .try_mul(&v_pows[t.y_exp as usize])
                .expect("same context");
            acc = acc.try_add(&term).expect("same context");
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.ctx, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// `lambda^d + u1 lambda^(d-1) + ... + ud` from the given coefficients.
    pub fn monic_from_tail(ctx: Context, tail: &[Polynomial]) -> Self {
        let mut coeffs: Vec<Polynomial> = tail.iter().rev().cloned().collect();
        coeffs.push(Polynomial::constant(ctx, Rational::one()));
        Self::from_coeffs(ctx, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    // u1, u2, v1, v2 as x1..x4
    fn ctx() -> Context {
        Context::new(4).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, ctx()).unwrap()
    }

    fn up(cs: &[&str]) -> UPoly {
        UPoly::from_coeffs(ctx(), cs.iter().map(|s| p(s)).collect())
    }

    #[test]
    fn square_of_linear() {
        let a = up(&["x1", "1"]);
        assert_eq!(a.try_mul(&a).unwrap(), up(&["x1^2", "2*x1", "1"]));
        assert_eq!(a.try_mul(&UPoly::one(ctx())).unwrap(), a);
        let v = up(&["x4", "x3"]);
        assert_eq!(v.try_mul(&v).unwrap(), up(&["x4^2", "2*x3*x4", "x3^2"]));
    }

    #[test]
    fn zero_is_canonical() {
        assert!(up(&["0", "0"]).is_zero());
        assert_eq!(up(&["x1", "0"]).degree(), Some(0));
    }

    #[test]
    fn one_division_step() {
        let u = up(&["x2", "x1", "1"]);
        let lam2 = up(&["0", "0", "1"]);
        assert_eq!(lam2.rem_monic(&u).unwrap(), up(&["-x2", "-x1"]));
    }

    #[test]
    fn two_division_steps() {
        let u = up(&["x2", "x1", "1"]);
        let lam3 = up(&["0", "0", "0", "1"]);
        assert_eq!(lam3.rem_monic(&u).unwrap(), up(&["x1*x2", "x1^2 - x2"]));
    }

    #[test]
    fn low_degree_is_its_own_remainder() {
        let u = up(&["x2", "x1", "1"]);
        let r = up(&["x3", "x4"]);
        assert_eq!(r.rem_monic(&u).unwrap(), r);
    }

    #[test]
    fn division_errors() {
        let a = up(&["x1"]);
        assert_eq!(
            a.rem_monic(&UPoly::zero(ctx())),
            Err(PolyError::ZeroDivisor)
        );
        assert_eq!(a.rem_monic(&up(&["1", "2"])), Err(PolyError::NotMonic));
    }

    #[test]
    fn plus_parts() {
        let u = up(&["x2", "x1", "1"]);
        assert_eq!(u.plus_part(1, 2).unwrap(), UPoly::one(ctx()));
        assert_eq!(u.plus_part(2, 2).unwrap(), up(&["x1", "1"]));
        assert!(matches!(
            u.plus_part(3, 2),
            Err(PolyError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            u.plus_part(0, 2),
            Err(PolyError::IndexOutOfRange { .. })
        ));
        let cubic = up(&["x3", "x2", "x1", "1"]);
        assert_eq!(cubic.plus_part(3, 3).unwrap(), up(&["x2", "x1", "1"]));
    }

    #[test]
    fn bivariate_substitution() {
        let one = [BivariateTerm::new(0, 0, rat(1))];
        assert_eq!(
            UPoly::compose_bivariate(&one, &up(&["x3"])),
            UPoly::one(ctx())
        );
        let x2y = [BivariateTerm::new(2, 1, rat(1))];
        assert_eq!(
            UPoly::compose_bivariate(&x2y, &up(&["x3"])),
            up(&["0", "0", "x3"])
        );
        let x2y2 = [BivariateTerm::new(2, 2, rat(1))];
        assert_eq!(
            UPoly::compose_bivariate(&x2y2, &up(&["x4", "x3"])),
            up(&["0", "0", "x4^2", "2*x3*x4", "x3^2"])
        );
    }

    #[test]
    fn monic_from_tail_orders_coefficients() {
        let u = UPoly::monic_from_tail(ctx(), &[p("x1"), p("x2")]);
        assert_eq!(u, up(&["x2", "x1", "1"]));
    }
}
