use rayon::prelude::*;

use super::FlowResult;
use crate::error::Result;
use crate::multivector::{
    bivector_from_raw, derivative_table, linear_combination, MultiVector, RawMatrix,
};
use crate::polyring::{Context, Polynomial, Rational};

/// Dense tensor of polynomials with all extents equal to `n`.
struct Tensor {
    n: usize,
    data: Vec<Polynomial>,
}

impl Tensor {
    fn build(ctx: Context, rank: u32, f: impl Fn(&[usize]) -> Polynomial + Sync) -> Self {
        let n = ctx.dim();
        let data = (0..n.pow(rank))
            .into_par_iter()
            .map(|flat| {
                let mut idx = vec![0; rank as usize];
                let mut r = flat;
                for slot in idx.iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                f(&idx)
            })
            .collect();
        Self { n, data }
    }

    fn at(&self, idx: &[usize]) -> &Polynomial {
        let flat = idx.iter().fold(0, |acc, &i| acc * self.n + i);
        &self.data[flat]
    }
}

/// Sum of products over a shared contraction range, skipping zero factors.
fn contract<'a>(
    ctx: Context,
    pairs: impl Iterator<Item = (&'a Polynomial, &'a Polynomial)>,
) -> Polynomial {
    let mut acc = Polynomial::zero(ctx);
    for (a, b) in pairs {
        if !a.is_zero() && !b.is_zero() {
            acc.add_product(a, b);
        }
    }
    acc
}

/// First tetrahedral flow,
/// `R^ij = sum d_k d_l d_m P^ij * d_l' P^k k' * d_m' P^l l' * d_k' P^m m'`
/// over `k, l, m, k', l', m'`.
pub fn gamma1(p: &MultiVector) -> Result<FlowResult> {
    let pm = p.full_matrix()?;
    let ctx = p.ctx();
    let n = ctx.dim();
    let d1 = derivative_table(&pm);
    // a[k][k'][l'] = d_l' P^{k k'}
    let a = Tensor {
        n,
        data: d1.clone(),
    };
    // ab[k][l][x][y] = sum_c a[k][x][c] a[l][c][y]
    let ab = Tensor::build(ctx, 4, |i| {
        contract(
            ctx,
            (0..n).map(|c| (a.at(&[i[0], i[2], c]), a.at(&[i[1], c, i[3]]))),
        )
    });
    // t[k][l][m] = trace(a_k a_l a_m)
    let t = Tensor::build(ctx, 3, |i| {
        contract(
            ctx,
            (0..n * n).map(|xy| {
                let (x, y) = (xy / n, xy % n);
                (ab.at(&[i[0], i[1], x, y]), a.at(&[i[2], y, x]))
            }),
        )
    });
    let raw = Tensor::build(ctx, 2, |ij| {
        let pij = pm.get(ij[0], ij[1]);
        let mut acc = Polynomial::zero(ctx);
        if pij.total_degree().unwrap_or(0) < 3 {
            return acc;
        }
        for k in 0..n {
            let dk = pij.diff(k).expect("in range");
            if dk.is_zero() {
                continue;
            }
            for l in 0..n {
                let dkl = dk.diff(l).expect("in range");
                if dkl.is_zero() {
                    continue;
                }
                for m in 0..n {
                    let tk = t.at(&[k, l, m]);
                    if tk.is_zero() {
                        continue;
                    }
                    acc.add_product(&dkl.diff(m).expect("in range"), tk);
                }
            }
        }
        acc
    });
    finish(ctx, raw)
}

/// Second tetrahedral flow,
/// `R^im = sum d_k d_l P^ij * d_k' d_l' P^km * d_m' P^k' l * d_j P^m' l'`
/// over `j, k, l, k', l', m'`.
pub fn gamma2(p: &MultiVector) -> Result<FlowResult> {
    let pm = p.full_matrix()?;
    let ctx = p.ctx();
    let n = ctx.dim();
    let d1 = Tensor {
        n,
        data: derivative_table(&pm),
    };
    // h[a][b][c][d] = d_c d_d P^ab
    let h = Tensor::build(ctx, 4, |i| {
        d1.at(&[i[0], i[1], i[2]]).diff(i[3]).expect("in range")
    });
    // w[k'][l][l'][j] = sum_m' d_m' P^{k' l} d_j P^{m' l'}
    let w = Tensor::build(ctx, 4, |i| {
        contract(
            ctx,
            (0..n).map(|mp| (d1.at(&[i[0], i[1], mp]), d1.at(&[mp, i[2], i[3]]))),
        )
    });
    // s[k][m][l][j] = sum_{k',l'} h[k][m][k'][l'] w[k'][l][l'][j]
    let s = Tensor::build(ctx, 4, |i| {
        contract(
            ctx,
            (0..n * n).map(|kl| {
                let (kp, lp) = (kl / n, kl % n);
                (h.at(&[i[0], i[1], kp, lp]), w.at(&[kp, i[2], lp, i[3]]))
            }),
        )
    });
    let raw = Tensor::build(ctx, 2, |im| {
        let (i, m) = (im[0], im[1]);
        contract(
            ctx,
            (0..n * n * n).map(|jkl| {
                let (j, k, l) = (jkl / (n * n), (jkl / n) % n, jkl % n);
                (h.at(&[i, j, k, l]), s.at(&[k, m, l, j]))
            }),
        )
    });
    finish(ctx, raw)
}

fn finish(ctx: Context, raw: Tensor) -> Result<FlowResult> {
    let n = ctx.dim();
    let rows = raw.data.chunks(n).map(<[Polynomial]>::to_vec).collect();
    let raw = RawMatrix::from_rows(ctx, rows)?;
    let skew = bivector_from_raw(&raw);
    Ok(FlowResult { raw, skew })
}

/// `a * gamma1(P) + b * gamma2(P)` on skew parts.
pub fn balanced_flow(p: &MultiVector, a: &Rational, b: &Rational) -> Result<MultiVector> {
    let g1 = gamma1(p)?.skew;
    let g2 = gamma2(p)?.skew;
    linear_combination(&[(a.clone(), &g1), (b.clone(), &g2)])
}

/// The balanced combination `gamma1 + 6 gamma2`.
pub fn balanced_1_6(p: &MultiVector) -> Result<MultiVector> {
    balanced_flow(
        p,
        &Rational::from_integer(1.into()),
        &Rational::from_integer(6.into()),
    )
}
