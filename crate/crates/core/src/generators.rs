//! Constructions of Poisson bi-vectors with polynomial coefficients.
//!
//! * [`det_bracket`]: `{a, b} = f * det J(g_1, ..., g_{n-2}, a, b)`.
//! * [`premultiply`]: `P -> f P`, Poisson-preserving in dimension three
//!   (checked through the one-form criterion [`form_obstruction`]).
//! * [`vanhaecke_bracket`]: brackets on the coefficients of
//!   `u(lambda) = lambda^d + u_1 lambda^(d-1) + ... + u_d` and
//!   `v(lambda) = v_1 lambda^(d-1) + ... + v_d`, with coordinates ordered
//!   `u_1..u_d, v_1..v_d` (named `x1..x(2d)`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multivector::{is_poisson, MultiVector};
use crate::polyring::{parse_with, rat, BivariateTerm, Context, Polynomial, Rational, UPoly};

/// Determinant-bracket input: `n - 2` functions and an optional prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetSpec {
    pub ctx: Context,
    pub args: Vec<Polynomial>,
    pub prefactor: Option<Polynomial>,
}

impl DetSpec {
    pub fn new(ctx: Context, args: Vec<Polynomial>) -> Self {
        Self {
            ctx,
            args,
            prefactor: None,
        }
    }

    pub fn with_prefactor(mut self, f: Polynomial) -> Self {
        self.prefactor = Some(f);
        self
    }
}

/// Determinant by cofactor expansion along the first row; zero entries are
/// skipped so sparse rows expand cheaply.
fn determinant(ctx: Context, rows: &[Vec<Polynomial>], cols: &[usize]) -> Polynomial {
    let Some((first, rest)) = rows.split_first() else {
        return Polynomial::one(ctx);
    };
    let mut acc = Polynomial::zero(ctx);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &first[c];
        if entry.is_zero() {
            continue;
        }
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = determinant(ctx, rest, &minor_cols);
        if minor.is_zero() {
            continue;
        }
        let term = entry * &minor;
        acc = if pos % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// `comps[(i,j)] = f * det J(g_1, ..., g_{n-2}, x_i, x_j)`.
pub fn det_bracket(spec: &DetSpec) -> Result<MultiVector> {
    let ctx = spec.ctx;
    let n = ctx.dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    if spec.args.len() != n - 2 {
        return Err(Error::WrongArgCount {
            expected: n - 2,
            found: spec.args.len(),
        });
    }
    for p in spec.args.iter().chain(&spec.prefactor) {
        if p.ctx() != ctx {
            return Err(Error::ContextMismatch(ctx, p.ctx()));
        }
    }
    let gradients: Vec<Vec<Polynomial>> = spec
        .args
        .iter()
        .map(|g| {
            (0..n)
                .map(|l| g.diff(l))
                .collect::<std::result::Result<_, _>>()
        })
        .collect::<std::result::Result<_, _>>()?;
    let unit = |i: usize| -> Vec<Polynomial> {
        (0..n)
            .map(|l| {
                if l == i {
                    Polynomial::one(ctx)
                } else {
                    Polynomial::zero(ctx)
                }
            })
            .collect()
    };
    let cols: Vec<usize> = (0..n).collect();
    let mut out = MultiVector::zero(ctx, 2)?;
    for i in 0..n {
        for j in (i + 1)..n {
            // Moving the two unit rows to the top is an even permutation.
            let mut rows = vec![unit(i), unit(j)];
            rows.extend(gradients.iter().cloned());
            let mut c = determinant(ctx, &rows, &cols);
            if let Some(f) = &spec.prefactor {
                c = &c * f;
            }
            out.set(&[i, j], c)?;
        }
    }
    Ok(out)
}

/// Componentwise `f * P`.
pub fn premultiply(p: &MultiVector, f: &Polynomial) -> Result<MultiVector> {
    p.expect_degree(2)?;
    p.mul_function(f)
}

/// The one-form `P_1 dx + P_2 dy + P_3 dz` of a bi-vector on R^3,
/// with `P_1 = -P^23`, `P_2 = P^13`, `P_3 = -P^12`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    pub comps: [Polynomial; 3],
}

fn expect_dim3(p: &MultiVector) -> Result<()> {
    p.expect_degree(2)?;
    if p.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: p.dim(),
        });
    }
    Ok(())
}

pub fn to_oneform(p: &MultiVector) -> Result<OneForm> {
    expect_dim3(p)?;
    Ok(OneForm {
        comps: [-p.get(&[1, 2]), p.get(&[0, 2]), -p.get(&[0, 1])],
    })
}

/// Coefficient of `dx ^ dy ^ dz` in `dP ^ P` for the associated one-form.
/// It coincides with the `(1,2,3)` component of the Jacobiator.
pub fn form_obstruction(p: &MultiVector) -> Result<Polynomial> {
    let [p1, p2, p3] = to_oneform(p)?.comps;
    let d = |q: &Polynomial, var: usize| q.diff(var).expect("dimension 3");
    // dP = (d_x P2 - d_y P1) dx^dy + (d_x P3 - d_z P1) dx^dz + (d_y P3 - d_z P2) dy^dz
    let xy = &d(&p2, 0) - &d(&p1, 1);
    let xz = &d(&p3, 0) - &d(&p1, 2);
    let yz = &d(&p3, 1) - &d(&p2, 2);
    Ok(&(&(&xy * &p3) - &(&xz * &p2)) + &(&yz * &p1))
}

/// Which power of `lambda` in the reduced remainder gives `{u_i, v_j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaConvention {
    /// Coefficient of `lambda^(j-1)`.
    Ascending,
    /// Coefficient of `lambda^(d-j)`.
    Descending,
}

impl LambdaConvention {
    pub const CANDIDATES: [LambdaConvention; 2] = [Self::Ascending, Self::Descending];

    fn exponent(self, j: usize, d: usize) -> usize {
        match self {
            Self::Ascending => j - 1,
            Self::Descending => d - j,
        }
    }
}

/// The convention fixed by [`calibrate_vanhaecke`]; re-verified on every
/// construction.
pub const VANHAECKE_CONVENTION: LambdaConvention = LambdaConvention::Descending;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanhaeckeSpec {
    pub d: usize,
    pub phi: Vec<BivariateTerm>,
}

impl VanhaeckeSpec {
    pub fn new(d: usize, phi: Vec<BivariateTerm>) -> Self {
        Self { d, phi }
    }

    /// Parses `phi` from text in the variables `x` and `y`.
    pub fn parse(d: usize, phi: &str) -> Result<Self> {
        Ok(Self::new(d, parse_phi(phi)?))
    }

    pub fn ctx(&self) -> Result<Context> {
        Ok(Context::new(2 * self.d)?)
    }
}

/// Parses a bivariate polynomial in `x`, `y` into exponent/coefficient terms.
pub fn parse_phi(text: &str) -> Result<Vec<BivariateTerm>> {
    let ctx = Context::new(2)?;
    let p = parse_with(text, ctx, |name| match name {
        "x" => Some(0),
        "y" => Some(1),
        _ => None,
    })?;
    Ok(p.terms()
        .rev()
        .map(|(m, c)| BivariateTerm::new(m.exponent(0), m.exponent(1), c.clone()))
        .collect())
}

pub fn render_phi(phi: &[BivariateTerm]) -> String {
    let ctx = Context::new(2).expect("dim 2");
    let p = Polynomial::from_terms(
        ctx,
        phi.iter().map(|t| {
            (
                crate::polyring::Monomial::from_exponents(&[t.x_exp, t.y_exp]),
                t.coeff.clone(),
            )
        }),
    );
    let mut s = String::new();
    p.write_with_names(&mut s, |v| if v == 0 { "x" } else { "y" }.to_string())
        .expect("string write");
    s
}

/// Builds the bracket for a given convention without checking Jacobi.
pub fn vanhaecke_with(spec: &VanhaeckeSpec, conv: LambdaConvention) -> Result<MultiVector> {
    let d = spec.d;
    if d == 0 {
        return Err(Error::InvalidSpec("d must be at least 1".into()));
    }
    let ctx = spec.ctx()?;
    let var = |i: usize| Polynomial::var(ctx, i).expect("in range");
    let us: Vec<Polynomial> = (0..d).map(var).collect();
    let u = UPoly::monic_from_tail(ctx, &us);
    // v(lambda) = v1 lambda^(d-1) + ... + vd, ascending storage
    let v = UPoly::from_coeffs(ctx, (0..d).rev().map(|j| var(d + j)).collect());
    let phi_v = UPoly::compose_bivariate(&spec.phi, &v);
    let mut out = MultiVector::zero(ctx, 2)?;
    for i in 1..=d {
        let r = phi_v.try_mul(&u.plus_part(i, d)?)?.rem_monic(&u)?;
        for j in 1..=d {
            out.set(&[i - 1, d + j - 1], r.coeff(conv.exponent(j, d)))?;
        }
    }
    Ok(out)
}

/// Vanhaecke bracket under [`VANHAECKE_CONVENTION`]; fails with
/// [`Error::CalibrationFailure`] if the result is not Poisson.
pub fn vanhaecke_bracket(spec: &VanhaeckeSpec) -> Result<MultiVector> {
    let p = vanhaecke_with(spec, VANHAECKE_CONVENTION)?;
    if !is_poisson(&p)? {
        return Err(Error::CalibrationFailure);
    }
    Ok(p)
}

/// Picks the unique exponent convention that makes the `d = 2`,
/// `phi = x^2 y^2` bracket Poisson.
pub fn calibrate_vanhaecke() -> Result<LambdaConvention> {
    let spec = VanhaeckeSpec::new(2, vec![BivariateTerm::new(2, 2, rat(1))]);
    let mut good = Vec::new();
    for conv in LambdaConvention::CANDIDATES {
        if is_poisson(&vanhaecke_with(&spec, conv)?)? {
            good.push(conv);
        }
    }
    match good.as_slice() {
        [conv] => Ok(*conv),
        _ => Err(Error::CalibrationFailure),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Det,
    Vanhaecke,
}

/// Serializable description of a generator instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefactor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<(u32, u32, String)>>,
}

impl GeneratorSpec {
    pub fn det(dim: usize, args: &[&str], prefactor: Option<&str>) -> Self {
        Self {
            kind: GeneratorKind::Det,
            dim,
            args: args.iter().map(|s| s.to_string()).collect(),
            prefactor: prefactor.map(str::to_string),
            d: None,
            phi: None,
        }
    }

    pub fn vanhaecke(d: usize, phi: &str) -> Result<Self> {
        let terms = parse_phi(phi)?;
        Ok(Self {
            kind: GeneratorKind::Vanhaecke,
            dim: 2 * d,
            args: Vec::new(),
            prefactor: None,
            d: Some(d),
            phi: Some(
                terms
                    .into_iter()
                    .map(|t| (t.x_exp, t.y_exp, t.coeff.to_string()))
                    .collect(),
            ),
        })
    }

    pub fn ctx(&self) -> Result<Context> {
        Ok(Context::new(self.dim)?)
    }

    pub fn to_det_spec(&self) -> Result<DetSpec> {
        let ctx = self.ctx()?;
        let args = self
            .args
            .iter()
            .map(|s| Polynomial::parse(s, ctx))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let prefactor = self
            .prefactor
            .as_deref()
            .map(|s| Polynomial::parse(s, ctx))
            .transpose()?;
        Ok(DetSpec {
            ctx,
            args,
            prefactor,
        })
    }

    pub fn to_vanhaecke_spec(&self) -> Result<VanhaeckeSpec> {
        let d = self
            .d
            .ok_or_else(|| Error::InvalidSpec("vanhaecke spec needs `d`".into()))?;
        if self.dim != 2 * d {
            return Err(Error::InvalidSpec(format!(
                "vanhaecke dim must be 2d = {}, got {}",
                2 * d,
                self.dim
            )));
        }
        let phi = self
            .phi
            .as_ref()
            .ok_or_else(|| Error::InvalidSpec("vanhaecke spec needs `phi`".into()))?
            .iter()
            .map(|(a, b, c)| {
                c.trim()
                    .parse::<Rational>()
                    .map(|c| BivariateTerm::new(*a, *b, c))
                    .map_err(|_| Error::InvalidSpec(format!("bad coefficient `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VanhaeckeSpec::new(d, phi))
    }

    /// Runs the generator. Determinant specs with a prefactor are built as the
    /// plain determinant bracket followed by pre-multiplication.
    pub fn build(&self) -> Result<MultiVector> {
        match self.kind {
            GeneratorKind::Det => {
                let spec = self.to_det_spec()?;
                let base = det_bracket(&DetSpec::new(spec.ctx, spec.args))?;
                match &spec.prefactor {
                    Some(f) => premultiply(&base, f),
                    None => Ok(base),
                }
            }
            GeneratorKind::Vanhaecke => vanhaecke_bracket(&self.to_vanhaecke_spec()?),
        }
    }

    /// Names of the coordinates, e.g. `u1 = x1` for Vanhaecke specs.
    pub fn aliases(&self) -> Vec<(String, String)> {
        match (self.kind, self.d) {
            (GeneratorKind::Vanhaecke, Some(d)) => (1..=d)
                .map(|i| (format!("u{i}"), format!("x{i}")))
                .chain((1..=d).map(|j| (format!("v{j}"), format!("x{}", d + j))))
                .collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Det => {
                write!(f, "det [{}]", self.args.join(", "))?;
                if let Some(p) = &self.prefactor {
                    write!(f, " * ({p})")?;
                }
                Ok(())
            }
            GeneratorKind::Vanhaecke => {
                let phi = self
                    .to_vanhaecke_spec()
                    .map(|s| render_phi(&s.phi))
                    .unwrap_or_default();
                write!(f, "vanhaecke d={} phi={}", self.d.unwrap_or(0), phi)
            }
        }
    }
}
