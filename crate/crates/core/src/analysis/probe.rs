use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::generators::{det_bracket, premultiply, DetSpec};
use crate::graphflow::balanced_1_6;
use crate::multivector::{is_poisson, schouten, MultiVector};
use crate::polyring::{Context, Polynomial};

/// `eps`-graded pieces of `[[P~, P~]]` and `[[P~, Q(P~)]]` for `P~ = P + eps D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    /// Order `k` maps to the `eps^k` coefficients, Jacobi part first.
    /// Orders above the last nonzero one are omitted.
    pub orders: BTreeMap<u32, (MultiVector, MultiVector)>,
    ctx: Context,
}

impl ProbeResult {
    fn part(
        &self,
        order: u32,
        pick: fn(&(MultiVector, MultiVector)) -> &MultiVector,
    ) -> MultiVector {
        self.orders
            .get(&order)
            .map(|pair| pick(pair).clone())
            .unwrap_or_else(|| MultiVector::zero(self.ctx, 3).expect("degree 3"))
    }

    /// `eps^order` coefficient of `[[P~, P~]]`.
    pub fn jacobi_part(&self, order: u32) -> MultiVector {
        self.part(order, |(j, _)| j)
    }

    /// `eps^order` coefficient of `[[P~, Q(P~)]]`.
    pub fn flow_part(&self, order: u32) -> MultiVector {
        self.part(order, |(_, q)| q)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, (j, q)) in &self.orders {
            m.insert(
                k.to_string(),
                json!({ "jacobi": j.to_json(), "flow": q.to_json() }),
            );
        }
        json!({ "orders": m })
    }
}

/// Brackets of the deformed bi-vector `P + eps D`, split by powers of `eps`.
/// Both inputs must live in a context with `eps` adjoined and be `eps`-free.
pub fn perturb_probe(p: &MultiVector, delta: &MultiVector) -> Result<ProbeResult> {
    p.expect_degree(2)?;
    delta.expect_degree(2)?;
    if !p.ctx().has_epsilon() {
        return Err(Error::EpsilonMissing);
    }
    if p.ctx() != delta.ctx() {
        return Err(Error::ContextMismatch(p.ctx(), delta.ctx()));
    }
    if p.depends_on_epsilon() || delta.depends_on_epsilon() {
        return Err(Error::DependsOnEpsilon);
    }
    if !is_poisson(p)? {
        return Err(Error::NotPoisson);
    }
    let eps = Polynomial::epsilon(p.ctx())?;
    let pt = p.try_add(&delta.mul_function(&eps)?)?;
    let jac = schouten(&pt, &pt)?.epsilon_orders()?;
    let flow = schouten(&pt, &balanced_1_6(&pt)?)?.epsilon_orders()?;
    let top = jac.keys().chain(flow.keys()).copied().max().unwrap_or(0);
    let zero = MultiVector::zero(p.ctx(), 3)?;
    let orders = (0..=top)
        .map(|k| {
            let j = jac.get(&k).cloned().unwrap_or_else(|| zero.clone());
            let q = flow.get(&k).cloned().unwrap_or_else(|| zero.clone());
            (k, (j, q))
        })
        .collect();
    Ok(ProbeResult {
        orders,
        ctx: p.ctx(),
    })
}

/// The three-dimensional instance: `P = f * det J(g, ., .)` with `f = x1^2`,
/// `g = x3^3`, perturbed by `D^12 = x2^2*x3`, `D^13 = x2^3*x3^2`, `D^23 = 0`.
/// Returned in the `eps`-extended context.
pub fn probe_instance() -> Result<(MultiVector, MultiVector)> {
    let ctx = Context::new(3)?;
    let poly = |s: &str| Polynomial::parse(s, ctx);
    let p = premultiply(
        &det_bracket(&DetSpec::new(ctx, vec![poly("x3^3")?]))?,
        &poly("x1^2")?,
    )?;
    let delta = MultiVector::bivector(
        ctx,
        [((0, 1), poly("x2^2*x3")?), ((0, 2), poly("x2^3*x3^2")?)],
    )?;
    Ok((p.lift_epsilon(), delta.lift_epsilon()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    #[test]
    fn zero_perturbation_gives_zero_orders() {
        let (p, d) = probe_instance().unwrap();
        let zero = d.scale(&rat(0));
        let r = perturb_probe(&p, &zero).unwrap();
        for (j, q) in r.orders.values() {
            assert!(j.is_zero() && q.is_zero());
        }
    }

    #[test]
    fn rescaling_perturbation_stays_poisson() {
        let (p, _) = probe_instance().unwrap();
        let r = perturb_probe(&p, &p).unwrap();
        assert!(r.orders.values().all(|(j, _)| j.is_zero()));
    }

    #[test]
    fn first_order_is_the_mixed_bracket() {
        let (p, d) = probe_instance().unwrap();
        let r = perturb_probe(&p, &d).unwrap();
        assert!(r.jacobi_part(0).is_zero());
        assert!(r.flow_part(0).is_zero());
        let mixed = schouten(&p, &d).unwrap().scale(&rat(2));
        assert_eq!(r.jacobi_part(1), mixed);
        let ctx = p.ctx();
        // f2 * f' * g' = x2^3 x3^2 * 2 x1 * 3 x3^2, doubled by the bracket
        assert_eq!(
            r.jacobi_part(1).get(&[0, 1, 2]),
            Polynomial::parse("12*x1*x2^3*x3^4", ctx).unwrap()
        );
    }

    #[test]
    fn requires_epsilon() {
        let (p, d) = probe_instance().unwrap();
        let flat_p = MultiVector::zero(Context::new(3).unwrap(), 2).unwrap();
        assert!(matches!(
            perturb_probe(&flat_p, &flat_p),
            Err(Error::EpsilonMissing)
        ));
        let eps = Polynomial::epsilon(p.ctx()).unwrap();
        let bad = d.mul_function(&eps).unwrap();
        assert!(matches!(
            perturb_probe(&p, &bad),
            Err(Error::DependsOnEpsilon)
        ));
    }
}
