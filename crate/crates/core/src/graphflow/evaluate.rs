use std::collections::HashMap;

use rayon::prelude::*;
use smallvec::SmallVec;

use super::kgraph::{KGraph, Target};
use super::FlowResult;
use crate::error::Result;
use crate::multivector::{bivector_from_raw, MultiVector, RawMatrix};
use crate::polyring::Polynomial;

type DerivKey = (usize, usize, SmallVec<[usize; 4]>);

/// Per-vertex bookkeeping derived from the graph shape.
struct Plan {
    /// For each internal vertex, the edges (by id `2v + slot`) landing on it.
    in_edges: Vec<Vec<usize>>,
    /// Vertices whose factor becomes computable once vertex `v` is assigned.
    ready_at: Vec<Vec<usize>>,
    /// Edge ids landing on the first and second sink.
    sink_edge: [usize; 2],
}

impl Plan {
    fn new(g: &KGraph) -> Self {
        let k = g.internal_count();
        let mut in_edges = vec![Vec::new(); k];
        let mut sink_edge = [usize::MAX; 2];
        for (v, pair) in g.edges().iter().enumerate() {
            for (slot, t) in pair.iter().enumerate() {
                match *t {
                    Target::Internal(w) => in_edges[w].push(2 * v + slot),
                    Target::Sink(s) => sink_edge[s] = 2 * v + slot,
                }
            }
        }
        let mut ready_at = vec![Vec::new(); k];
        for (w, ins) in in_edges.iter().enumerate() {
            let step = ins.iter().map(|e| e / 2).chain([w]).max().unwrap();
            ready_at[step].push(w);
        }
        Self {
            in_edges,
            ready_at,
            sink_edge,
        }
    }
}

struct Search<'a> {
    plan: &'a Plan,
    p: &'a RawMatrix,
    n: usize,
    idx: Vec<usize>,
    cache: HashMap<DerivKey, Polynomial>,
    acc: Polynomial,
}

impl Search<'_> {
    /// `d_{in-edge indices} P^{L R}` at vertex `w` under the current assignment.
    fn factor(&mut self, w: usize) -> Polynomial {
        let (a, b) = (self.idx[2 * w], self.idx[2 * w + 1]);
        let mut derivs: SmallVec<[usize; 4]> =
            self.plan.in_edges[w].iter().map(|&e| self.idx[e]).collect();
        derivs.sort_unstable();
        let p = self.p;
        self.cache
            .entry((a, b, derivs))
            .or_insert_with_key(|(a, b, ds)| {
                ds.iter().fold(p.get(*a, *b).clone(), |acc, &d| {
                    acc.diff(d).expect("index in range")
                })
            })
            .clone()
    }

    fn assign_slot(&mut self, v: usize, slot: usize, product: &Polynomial) {
        let e = 2 * v + slot;
        let fixed = self.plan.sink_edge.contains(&e);
        if fixed {
            return self.after_slot(v, slot, product);
        }
        for i in 0..self.n {
            self.idx[e] = i;
            self.after_slot(v, slot, product);
        }
    }

    fn after_slot(&mut self, v: usize, slot: usize, product: &Polynomial) {
        if slot == 0 {
            return self.assign_slot(v, 1, product);
        }
        if self.p.get(self.idx[2 * v], self.idx[2 * v + 1]).is_zero() {
            return;
        }
        let mut product = product.clone();
        for &w in &self.plan.ready_at[v] {
            let f = self.factor(w);
            if f.is_zero() {
                return;
            }
            product = &product * &f;
        }
        self.step(v + 1, &product);
    }

    fn step(&mut self, v: usize, product: &Polynomial) {
        if v == self.plan.in_edges.len() {
            self.acc.add_assign_ref(product);
            return;
        }
        self.assign_slot(v, 0, product);
    }
}

/// Evaluates the bi-differential operator encoded by `g` on the bi-vector
/// `p`: the raw coefficient matrix sums, over all index assignments to the
/// edges with the sink edges carrying the row and column index, the product
/// of vertex factors `d_{incoming indices} P^{L R}`.
///
/// Assignments are enumerated depth-first, pruning as soon as a vertex
/// coefficient or one of its derivatives vanishes.
pub fn evaluate_kgraph(g: &KGraph, p: &MultiVector) -> Result<FlowResult> {
    let pm = p.full_matrix()?;
    let ctx = p.ctx();
    let n = ctx.dim();
    let plan = Plan::new(g);
    let cells: Vec<(usize, usize, Polynomial)> = (0..n * n)
        .into_par_iter()
        .map(|cell| {
            let (a, b) = (cell / n, cell % n);
            let mut idx = vec![0; 2 * g.internal_count()];
            idx[plan.sink_edge[0]] = a;
            idx[plan.sink_edge[1]] = b;
            let mut search = Search {
                plan: &plan,
                p: &pm,
                n,
                idx,
                cache: HashMap::new(),
                acc: Polynomial::zero(ctx),
            };
            search.step(0, &Polynomial::one(ctx));
            (a, b, search.acc)
        })
        .collect();
    let mut raw = RawMatrix::zero(ctx);
    for (a, b, poly) in cells {
        raw.set(a, b, poly);
    }
    let skew = bivector_from_raw(&raw);
    Ok(FlowResult { raw, skew })
}
