use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::multivector::{is_poisson, schouten, MultiVector};
use crate::polyring::{Monomial, Rational};

/// Null space of `sum_i c_i [[P, B_i]] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioSolution {
    pub solution_dimension: usize,
    /// Each vector is primitive integral with a positive leading entry.
    pub basis: Vec<Vec<Rational>>,
}

impl RatioSolution {
    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows: Vec<Vec<Rational>> = self.basis.clone();
        rows.push(v.to_vec());
        rank(rows) == self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "solution_dimension": self.solution_dimension,
            "basis": self.basis.iter()
                .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for RatioSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "solution space dim {}", self.solution_dimension)?;
        for (k, v) in self.basis.iter().enumerate() {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            let sep = if k == 0 { ": " } else { ", " };
            write!(f, "{sep}({})", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    rref(&mut rows).len()
}

/// Scales to a primitive integer vector with positive first nonzero entry.
fn normalize(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        g = -g;
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

/// Exact null space of the `rows x ncols` matrix.
pub fn nullspace(mut m: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            normalize(v)
        })
        .collect()
}

/// Linear relations `c` with `sum_i c_i [[P, B_i]] = 0`, found by matching
/// coefficients of every monomial in every tri-vector component.
pub fn find_ratios(p: &MultiVector, basis: &[MultiVector]) -> Result<RatioSolution> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    if !is_poisson(p)? {
        return Err(Error::NotPoisson);
    }
    let brackets = basis
        .iter()
        .map(|b| schouten(p, b))
        .collect::<Result<Vec<_>>>()?;
    let k = basis.len();
    let mut system: BTreeMap<(Vec<usize>, Monomial), Vec<Rational>> = BTreeMap::new();
    for (col, t) in brackets.iter().enumerate() {
        for (idx, poly) in t.components() {
            for (m, c) in poly.terms() {
                system
                    .entry((idx.to_vec(), m.clone()))
                    .or_insert_with(|| vec![Rational::zero(); k])[col] = c.clone();
            }
        }
    }
    let basis = nullspace(system.into_values().collect(), k);
    Ok(RatioSolution {
        solution_dimension: basis.len(),
        basis,
    })
}
