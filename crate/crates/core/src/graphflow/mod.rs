//! Kontsevich graphs on two sinks and the tetrahedral flows they encode.
//!
//! [`evaluate_kgraph`] turns any admissible [`KGraph`] into the raw
//! coefficient matrix of its bi-differential operator; [`gamma1`] and
//! [`gamma2`] are independent closed-form evaluations of the two tetrahedra,
//! factored so the eight-fold index sum costs `O(n^6)` polynomial products.

mod evaluate;
mod flows;
mod kgraph;

pub use evaluate::evaluate_kgraph;
pub use flows::{balanced_1_6, balanced_flow, gamma1, gamma2};
pub use kgraph::{GraphError, KGraph, Target, GAMMA1, GAMMA2, SKEW_VANISHING, WEDGE};

use crate::multivector::{bivector_from_raw, MultiVector, RawMatrix};

/// Output of a flow: the raw matrix and its skew part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub raw: RawMatrix,
    pub skew: MultiVector,
}

impl FlowResult {
    pub fn from_raw(raw: RawMatrix) -> Self {
        let skew = bivector_from_raw(&raw);
        Self { raw, skew }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, Context, Polynomial};

    fn bivector(ctx: Context, entries: &[((usize, usize), &str)]) -> MultiVector {
        MultiVector::bivector(
            ctx,
            entries
                .iter()
                .map(|&(ij, s)| (ij, Polynomial::parse(s, ctx).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn constant_and_affine_coefficients_give_zero_flows() {
        let ctx = Context::new(3).unwrap();
        let constant = bivector(ctx, &[((0, 1), "2"), ((1, 2), "-5")]);
        let affine = bivector(ctx, &[((0, 1), "x3 + 1"), ((0, 2), "2*x2"), ((1, 2), "x1")]);
        for p in [&constant, &affine] {
            assert!(gamma1(p).unwrap().raw.is_zero());
        }
        assert!(gamma2(&constant).unwrap().raw.is_zero());
        assert!(balanced_flow(&affine, &rat(0), &rat(0)).unwrap().is_zero());
    }

    #[test]
    fn wedge_graph_returns_the_bivector() {
        let ctx = Context::new(3).unwrap();
        let p = bivector(ctx, &[((0, 1), "x1*x3^2"), ((1, 2), "x2 - 4")]);
        let r = evaluate_kgraph(&KGraph::wedge(), &p).unwrap();
        assert_eq!(r.raw, p.full_matrix().unwrap());
        assert_eq!(r.skew, p);
    }

    #[test]
    fn skew_vanishing_graph_on_a_cubic_bivector() {
        let ctx = Context::new(3).unwrap();
        let p = bivector(
            ctx,
            &[
                ((0, 1), "x1^2*x3 + x2^3"),
                ((0, 2), "x2^2*x3"),
                ((1, 2), "x1*x2*x3"),
            ],
        );
        let r = evaluate_kgraph(&KGraph::skew_vanishing(), &p).unwrap();
        assert!(r.raw.is_zero());
    }

    #[test]
    fn gamma1_graph_matches_closed_form_on_a_small_example() {
        let ctx = Context::new(3).unwrap();
        let p = bivector(
            ctx,
            &[
                ((0, 1), "x1^3*x3 + x2^2"),
                ((0, 2), "x2^3*x1"),
                ((1, 2), "x3^2*x1^2"),
            ],
        );
        assert_eq!(
            evaluate_kgraph(&KGraph::gamma1_tetrahedron(), &p).unwrap(),
            gamma1(&p).unwrap()
        );
        assert_eq!(
            evaluate_kgraph(&KGraph::gamma2_tetrahedron(), &p).unwrap(),
            gamma2(&p).unwrap()
        );
    }
}
