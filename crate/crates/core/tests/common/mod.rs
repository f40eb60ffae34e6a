//! Brute-force reference evaluators shared by the integration tests.
#![allow(dead_code)]

use tetraflow::graphflow::{KGraph, Target};
use tetraflow::multivector::{MultiVector, RawMatrix};
use tetraflow::polyring::{Context, Polynomial};

pub fn poly(ctx: Context, s: &str) -> Polynomial {
    Polynomial::parse(s, ctx).unwrap()
}

/// `P^ij` read straight off the stored components.
pub fn entry(p: &MultiVector, i: usize, j: usize) -> Polynomial {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => p.get(&[i, j]),
        std::cmp::Ordering::Greater => -&p.get(&[j, i]),
        std::cmp::Ordering::Equal => Polynomial::zero(p.ctx()),
    }
}

/// `{f, g} = sum_ab P^ab d_a f d_b g`.
pub fn poisson_bracket(p: &MultiVector, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = p.dim();
    let mut acc = Polynomial::zero(p.ctx());
    for a in 0..n {
        for b in 0..n {
            let pab = entry(p, a, b);
            acc = &acc + &(&pab * &(&f.diff(a).unwrap() * &g.diff(b).unwrap()));
        }
    }
    acc
}

/// `{{x_i, x_j}, x_k} + cyclic` for every `i < j < k`, by nested brackets of
/// coordinate functions.
pub fn jacobiator_by_brackets(p: &MultiVector) -> MultiVector {
    let ctx = p.ctx();
    let n = p.dim();
    let x: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(ctx, i).unwrap()).collect();
    let mut out = MultiVector::zero(ctx, 3).unwrap();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut acc = Polynomial::zero(ctx);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = poisson_bracket(p, &x[a], &x[b]);
                    acc = &acc + &poisson_bracket(p, &inner, &x[c]);
                }
                out.set(&[i, j, k], acc).unwrap();
            }
        }
    }
    out
}

/// Full `n^(2k-2)` enumeration of edge labels, no pruning or caching.
pub fn naive_kgraph(g: &KGraph, p: &MultiVector) -> RawMatrix {
    let ctx = p.ctx();
    let n = p.dim();
    let k = g.internal_count();
    let mut sink_slot = [0usize; 2];
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, pair) in g.edges().iter().enumerate() {
        for (s, t) in pair.iter().enumerate() {
            match *t {
                Target::Sink(which) => sink_slot[which] = 2 * v + s,
                Target::Internal(w) => incoming[w].push(2 * v + s),
            }
        }
    }
    let free: Vec<usize> = (0..2 * k).filter(|e| !sink_slot.contains(e)).collect();
    let mut out = RawMatrix::zero(ctx);
    for a in 0..n {
        for b in 0..n {
            let mut acc = Polynomial::zero(ctx);
            let mut labels = vec![0usize; 2 * k];
            labels[sink_slot[0]] = a;
            labels[sink_slot[1]] = b;
            for code in 0..n.pow(free.len() as u32) {
                let mut c = code;
                for &e in &free {
                    labels[e] = c % n;
                    c /= n;
                }
                let mut term = Polynomial::one(ctx);
                for w in 0..k {
                    let mut f = entry(p, labels[2 * w], labels[2 * w + 1]);
                    for &e in &incoming[w] {
                        f = f.diff(labels[e]).unwrap();
                    }
                    term = &term * &f;
                }
                acc = &acc + &term;
            }
            out.set(a, b, acc);
        }
    }
    out
}

pub mod strategies {
    use proptest::prelude::*;
    use tetraflow::multivector::MultiVector;
    use tetraflow::polyring::{rat, Context, Polynomial};

    /// Sparse polynomial with small integer coefficients.
    pub fn poly(ctx: Context, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        let nvars = ctx.nvars();
        let dim = ctx.dim();
        prop::collection::vec(
            (prop::collection::vec(0..=max_deg, dim), -6i64..=6),
            0..=max_terms,
        )
        .prop_map(move |terms| {
            let mut p = Polynomial::zero(ctx);
            for (mut exps, c) in terms {
                // keep total degree bounded
                while exps.iter().sum::<u32>() > max_deg {
                    let k = exps.iter().position(|&e| e > 0).unwrap();
                    exps[k] -= 1;
                }
                exps.resize(nvars, 0);
                p = &p + &Polynomial::monomial(ctx, &exps, rat(c));
            }
            p
        })
    }

    pub fn bivector(
        ctx: Context,
        max_deg: u32,
        max_terms: usize,
    ) -> impl Strategy<Value = MultiVector> {
        let n = ctx.dim();
        prop::collection::vec(poly(ctx, max_deg, max_terms), n * (n - 1) / 2).prop_map(move |ps| {
            let mut it = ps.into_iter();
            let mut entries = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    entries.push(((i, j), it.next().unwrap()));
                }
            }
            MultiVector::bivector(ctx, entries).unwrap()
        })
    }

    pub fn ctx(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Context> {
        dims.prop_map(|n| Context::new(n).unwrap())
    }
}
