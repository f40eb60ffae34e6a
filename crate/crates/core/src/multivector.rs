//! Skew multi-vectors in the odd-variable transcription.
//!
//! A degree-`k` [`MultiVector`] stores one polynomial per strictly increasing
//! index tuple `i1 < ... < ik`, read as the coefficient of
//! `xi_{i1} ... xi_{ik}`. For bi-vectors the full-matrix reading is
//! `P[i][j] = comps[(i,j)]` for `i < j`, `P[j][i] = -P[i][j]`, `P[i][i] = 0`.
//!
//! Indices are zero-based in the API and one-based in every text format.
//!
//! The Schouten bracket of two bi-vectors uses the normalisation constant
//! [`SCHOUTEN_SIGMA`] `= 1`: with it the bracket of the four-dimensional
//! determinant example with its first tetrahedral flow has the
//! `xi1 xi2 xi3` coefficient `46008*x1*x2^11*x3^26*x4^5`. Consequently
//! `schouten(P, P) = 2 * jacobiator(P)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::polyring::{Context, Polynomial, Rational};

/// Global normalisation of [`schouten`].
pub const SCHOUTEN_SIGMA: i64 = 1;

pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiVector {
    ctx: Context,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
}

impl MultiVector {
    pub fn zero(ctx: Context, degree: usize) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        Ok(Self {
            ctx,
            degree,
            comps: BTreeMap::new(),
        })
    }

    /// Builds from `(increasing index tuple, coefficient)` pairs; repeated
    /// tuples are summed.
    pub fn from_components<I>(ctx: Context, degree: usize, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut mv = Self::zero(ctx, degree)?;
        for (idx, p) in comps {
            mv.add_to(&idx, &p)?;
        }
        Ok(mv)
    }

    /// A bi-vector from its upper-triangular entries `((i, j), P^ij)`, `i < j`.
    pub fn bivector<I>(ctx: Context, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Polynomial)>,
    {
        Self::from_components(
            ctx,
            2,
            entries.into_iter().map(|((i, j), p)| (vec![i, j], p)),
        )
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        let ok = idx.len() == self.degree
            && idx.windows(2).all(|w| w[0] < w[1])
            && idx.iter().all(|&i| i < self.ctx.dim());
        if ok {
            Ok(())
        } else {
            Err(Error::BadIndex(idx.to_vec()))
        }
    }

    fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if p.ctx() != self.ctx {
            return Err(Error::ContextMismatch(self.ctx, p.ctx()));
        }
        Ok(())
    }

    /// Adds `p` to the component at a strictly increasing index tuple.
    pub fn add_to(&mut self, idx: &[usize], p: &Polynomial) -> Result<()> {
        self.check_index(idx)?;
        self.check_poly(p)?;
        if p.is_zero() {
            return Ok(());
        }
        let slot = self
            .comps
            .entry(idx.to_vec())
            .or_insert_with(|| Polynomial::zero(self.ctx));
        slot.add_assign_ref(p);
        if slot.is_zero() {
            self.comps.remove(idx);
        }
        Ok(())
    }

    pub fn set(&mut self, idx: &[usize], p: Polynomial) -> Result<()> {
        self.check_index(idx)?;
        self.check_poly(&p)?;
        if p.is_zero() {
            self.comps.remove(idx);
        } else {
            self.comps.insert(idx.to_vec(), p);
        }
        Ok(())
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components in increasing tuple order.
    pub fn components(&self) -> impl Iterator<Item = (&[usize], &Polynomial)> {
        self.comps.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Component at an increasing tuple (zero when absent).
    pub fn get(&self, idx: &[usize]) -> Polynomial {
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.ctx))
    }

    /// Full-matrix reading `P^ij` of a bi-vector.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        debug_assert_eq!(self.degree, 2);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.get(&[i, j]),
            std::cmp::Ordering::Greater => -self.get(&[j, i]),
            std::cmp::Ordering::Equal => Polynomial::zero(self.ctx),
        }
    }

    pub fn expect_degree(&self, expected: usize) -> Result<()> {
        if self.degree != expected {
            return Err(Error::DegreeMismatch {
                expected,
                found: self.degree,
            });
        }
        Ok(())
    }

    /// The antisymmetric `n x n` matrix of a bi-vector.
    pub fn full_matrix(&self) -> Result<RawMatrix> {
        self.expect_degree(2)?;
        let n = self.dim();
        let mut m = RawMatrix::zero(self.ctx);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.entry(i, j));
            }
        }
        Ok(m)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self {
            ctx: self.ctx,
            degree: self.degree,
            comps: BTreeMap::new(),
        };
        if !c.is_zero() {
            out.comps = self
                .comps
                .iter()
                .map(|(k, p)| (k.clone(), p.scale(c)))
                .collect();
        }
        out
    }

    /// Componentwise product with a function.
    pub fn mul_function(&self, f: &Polynomial) -> Result<Self> {
        self.check_poly(f)?;
        Self::from_components(
            self.ctx,
            self.degree,
            self.comps.iter().map(|(k, p)| (k.clone(), p * f)),
        )
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        linear_combination(&[(Rational::one(), self), (Rational::one(), other)])
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        linear_combination(&[(Rational::one(), self), (-Rational::one(), other)])
    }

    /// Re-embeds every component with `eps` adjoined.
    pub fn lift_epsilon(&self) -> Self {
        Self {
            ctx: self.ctx.epsilon_extension(),
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(k, p)| (k.clone(), p.lift_epsilon()))
                .collect(),
        }
    }

    pub fn depends_on_epsilon(&self) -> bool {
        self.comps.values().any(Polynomial::depends_on_epsilon)
    }

    /// Splits every component by powers of `eps`.
    pub fn epsilon_orders(&self) -> Result<BTreeMap<u32, MultiVector>> {
        if !self.ctx.has_epsilon() {
            return Err(Error::EpsilonMissing);
        }
        let mut out: BTreeMap<u32, MultiVector> = BTreeMap::new();
        for (idx, p) in &self.comps {
            for (k, part) in p.epsilon_orders()? {
                out.entry(k)
                    .or_insert_with(|| MultiVector::zero(self.ctx, self.degree).unwrap())
                    .comps
                    .insert(idx.clone(), part);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut comps = Map::new();
        for (idx, p) in &self.comps {
            comps.insert(tuple_key(idx), Value::String(p.render()));
        }
        let mut doc = json!({
            "dim": self.dim(),
            "degree": self.degree,
        });
        if self.ctx.has_epsilon() {
            doc["epsilon"] = Value::Bool(true);
        }
        doc["components"] = Value::Object(comps);
        doc
    }

    pub fn from_json(doc: &Value) -> Result<Self> {
        let field = |name: &str| {
            doc.get(name)
                .ok_or_else(|| Error::Format(format!("missing field `{name}`")))
        };
        let dim = field("dim")?
            .as_u64()
            .ok_or_else(|| Error::Format("`dim` must be an integer".into()))?
            as usize;
        let degree = field("degree")?
            .as_u64()
            .ok_or_else(|| Error::Format("`degree` must be an integer".into()))?
            as usize;
        let eps = doc.get("epsilon").and_then(Value::as_bool).unwrap_or(false);
        let ctx = if eps {
            Context::with_epsilon(dim)?
        } else {
            Context::new(dim)?
        };
        let comps = field("components")?
            .as_object()
            .ok_or_else(|| Error::Format("`components` must be an object".into()))?;
        let mut mv = Self::zero(ctx, degree)?;
        for (key, text) in comps {
            let idx = parse_tuple_key(key)?;
            let text = text
                .as_str()
                .ok_or_else(|| Error::Format(format!("component {key} must be a string")))?;
            mv.add_to(&idx, &Polynomial::parse(text, ctx)?)?;
        }
        Ok(mv)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json value")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}

fn tuple_key(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_tuple_key(key: &str) -> Result<Vec<usize>> {
    key.split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::Format(format!("bad component key `{key}`"))),
        })
        .collect()
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return writeln!(f, "0");
        }
        for (idx, p) in &self.comps {
            writeln!(f, "({}): {}", tuple_key(idx), p)?;
        }
        Ok(())
    }
}

/// A full `n x n` coefficient matrix that need not be antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMatrix {
    ctx: Context,
    entries: Vec<Polynomial>,
}

impl RawMatrix {
    pub fn zero(ctx: Context) -> Self {
        let n = ctx.dim();
        Self {
            ctx,
            entries: vec![Polynomial::zero(ctx); n * n],
        }
    }

    pub fn from_rows(ctx: Context, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = ctx.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Format(format!("expected a {n}x{n} matrix")));
        }
        if let Some(p) = rows.iter().flatten().find(|p| p.ctx() != ctx) {
            return Err(Error::ContextMismatch(ctx, p.ctx()));
        }
        Ok(Self {
            ctx,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert_eq!(p.ctx(), self.ctx, "matrix entry context");
        let n = self.dim();
        self.entries[i * n + j] = p;
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut t = Self::zero(self.ctx);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i..n).all(|j| (self.get(i, j) + self.get(j, i)).is_zero()))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Polynomial]> {
        self.entries.chunks(self.dim())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows()
            .map(|r| Value::Array(r.iter().map(|p| Value::String(p.render())).collect()))
            .collect();
        let mut doc = json!({ "dim": self.dim() });
        if self.ctx.has_epsilon() {
            doc["epsilon"] = Value::Bool(true);
        }
        doc["entries"] = Value::Array(rows);
        doc
    }
}

impl fmt::Display for RawMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                writeln!(f, "[{},{}]: {}", i + 1, j + 1, self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// The skew part `comps[(i,j)] = (M^ij - M^ji) / 2`; the symmetric part is
/// discarded.
pub fn bivector_from_raw(m: &RawMatrix) -> MultiVector {
    let n = m.dim();
    let half = Rational::new(1.into(), 2.into());
    let mut mv = MultiVector::zero(m.ctx, 2).expect("degree 2");
    for i in 0..n {
        for j in (i + 1)..n {
            let c = (m.get(i, j) - m.get(j, i)).scale(&half);
            if !c.is_zero() {
                mv.comps.insert(vec![i, j], c);
            }
        }
    }
    mv
}

/// `d_ell P^ab` for all `a, b, ell`, flattened as `[(a * n + b) * n + ell]`.
pub(crate) fn derivative_table(m: &RawMatrix) -> Vec<Polynomial> {
    let n = m.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            let p = m.get(a, b);
            for l in 0..n {
                out.push(p.diff(l).expect("index in range"));
            }
        }
    }
    out
}

/// Componentwise linear combination of multi-vectors of equal context and
/// degree.
pub fn linear_combination(terms: &[(Rational, &MultiVector)]) -> Result<MultiVector> {
    let (_, first) = terms.first().ok_or(Error::EmptyBasis)?;
    let mut out = MultiVector::zero(first.ctx, first.degree)?;
    for (c, mv) in terms {
        if mv.ctx != first.ctx {
            return Err(Error::ContextMismatch(first.ctx, mv.ctx));
        }
        mv.expect_degree(first.degree)?;
        if c.is_zero() {
            continue;
        }
        for (idx, p) in &mv.comps {
            out.add_to(idx, &p.scale(c))?;
        }
    }
    Ok(out)
}

/// Schouten bracket of two bi-vectors, a tri-vector with components
/// (for `i < j < k`)
///
/// `sigma * sum_l [d_l P^ij Q^lk + d_l Q^ij P^lk + cyclic(i,j,k)]`.
pub fn schouten(p: &MultiVector, q: &MultiVector) -> Result<MultiVector> {
    p.expect_degree(2)?;
    q.expect_degree(2)?;
    if p.ctx != q.ctx {
        return Err(Error::ContextMismatch(p.ctx, q.ctx));
    }
    let ctx = p.ctx;
    let n = ctx.dim();
    let pm = p.full_matrix()?;
    let qm = q.full_matrix()?;
    let dp = derivative_table(&pm);
    let dq = derivative_table(&qm);
    let d = |t: &[Polynomial], a: usize, b: usize, l: usize| -> Polynomial {
        t[(a * n + b) * n + l].clone()
    };
    let sigma = Rational::from_integer(SCHOUTEN_SIGMA.into());
    let mut out = MultiVector::zero(ctx, 3)?;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut acc = Polynomial::zero(ctx);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for l in 0..n {
                        acc.add_product(&d(&dp, a, b, l), qm.get(l, c));
                        acc.add_product(&d(&dq, a, b, l), pm.get(l, c));
                    }
                }
                out.set(&[i, j, k], acc.scale(&sigma))?;
            }
        }
    }
    Ok(out)
}

/// Left-hand side of the Jacobi identity,
/// `J^ijk = sum_l (d_l P^ij P^lk + d_l P^jk P^li + d_l P^ki P^lj)`, `i < j < k`.
pub fn jacobiator(p: &MultiVector) -> Result<MultiVector> {
    p.expect_degree(2)?;
    let ctx = p.ctx;
    let n = ctx.dim();
    let pm = p.full_matrix()?;
    let mut out = MultiVector::zero(ctx, 3)?;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut acc = Polynomial::zero(ctx);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let pab = pm.get(a, b);
                    if pab.is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        let plc = pm.get(l, c);
                        if plc.is_zero() {
                            continue;
                        }
                        acc.add_product(&pab.diff(l)?, plc);
                    }
                }
                out.set(&[i, j, k], acc)?;
            }
        }
    }
    Ok(out)
}

/// Exact Jacobi-identity test.
pub fn is_poisson(p: &MultiVector) -> Result<bool> {
    Ok(jacobiator(p)?.is_zero())
}
