//! Seeded random polynomials and bi-vectors for property runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::generators::{det_bracket, premultiply, DetSpec};
use crate::multivector::MultiVector;
use crate::polyring::{rat, Context, Polynomial};

pub const DEFAULT_SEED: u64 = 20170623;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial with up to `max_terms` terms of total degree at most
/// `max_degree` and nonzero integer coefficients in `[-5, 5]`.
pub fn random_polynomial(
    ctx: Context,
    rng: &mut impl Rng,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let n = ctx.dim();
    let mut p = Polynomial::zero(ctx);
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let deg = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; ctx.nvars()];
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = *[-5, -4, -3, -2, -1, 1, 2, 3, 4, 5].choose(rng).unwrap();
        p = &p + &Polynomial::monomial(ctx, &exps, rat(c));
    }
    p
}

/// Random polynomial that is guaranteed nonzero.
pub fn random_nonzero_polynomial(
    ctx: Context,
    rng: &mut impl Rng,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let p = random_polynomial(ctx, rng, max_degree, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Skew bi-vector with independent random components; usually not Poisson.
pub fn random_bivector(
    ctx: Context,
    rng: &mut impl Rng,
    max_degree: u32,
    max_terms: usize,
) -> MultiVector {
    let n = ctx.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            entries.push(((i, j), random_polynomial(ctx, rng, max_degree, max_terms)));
        }
    }
    MultiVector::bivector(ctx, entries).expect("valid indices")
}

/// A Poisson bi-vector on `R^3`: `f * det J(g, ., .)` for random `f`, `g`
/// of degree at most `max_degree`.
pub fn random_poisson_3d(rng: &mut impl Rng, max_degree: u32) -> Result<MultiVector> {
    let ctx = Context::new(3)?;
    let g = random_nonzero_polynomial(ctx, rng, max_degree, 3);
    let f = random_nonzero_polynomial(ctx, rng, max_degree, 3);
    premultiply(&det_bracket(&DetSpec::new(ctx, vec![g]))?, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivector::is_poisson;

    #[test]
    fn same_seed_same_samples() {
        let ctx = Context::new(3).unwrap();
        let a = random_bivector(ctx, &mut rng(7), 3, 3);
        let b = random_bivector(ctx, &mut rng(7), 3, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn degree_bound_is_respected() {
        let ctx = Context::new(4).unwrap();
        let mut r = rng(1);
        for _ in 0..50 {
            let p = random_polynomial(ctx, &mut r, 4, 5);
            assert!(p.total_degree().unwrap_or(0) <= 4);
        }
    }

    #[test]
    fn random_3d_samples_are_poisson() {
        let mut r = rng(DEFAULT_SEED);
        for _ in 0..5 {
            assert!(is_poisson(&random_poisson_3d(&mut r, 3).unwrap()).unwrap());
        }
    }
}
