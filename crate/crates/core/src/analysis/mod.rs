//! Compatibility of the tetrahedral flows with their Poisson input.
//!
//! For a Poisson `P0`, [`compat_report`] computes `P1 = gamma1(P0)`,
//! `P2 = gamma2(P0)` (skew parts), `Q = P1 + 6 P2` and tests
//! `[[P0,P1]]`, `P2`, `[[P0,P2]]`, `Q`, `[[P0,Q]]` for vanishing.

mod probe;
mod ratios;
mod tables;

pub use probe::{perturb_probe, probe_instance, ProbeResult};
pub use ratios::{find_ratios, nullspace, RatioSolution};
pub use tables::{builtin_rows, reproduce_tables, TableRow, TablesReport};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graphflow::{gamma1, gamma2};
use crate::multivector::{is_poisson, linear_combination, schouten, MultiVector};
use crate::polyring::rat;

/// Column labels, in table order.
pub const FLAG_NAMES: [&str; 5] = ["[[P0,P1]]", "P2", "[[P0,P2]]", "Q", "[[P0,Q]]"];

/// `true` means the quantity vanishes identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompatFlags(pub [bool; 5]);

impl CompatFlags {
    pub fn to_json(self) -> Value {
        let mut m = Map::new();
        for (name, v) in FLAG_NAMES.iter().zip(self.0) {
            m.insert(name.to_string(), Value::Bool(v));
        }
        Value::Object(m)
    }

    /// Check mark for a vanishing entry, cross otherwise.
    pub fn marks(self) -> [&'static str; 5] {
        self.0.map(|z| if z { "✓" } else { "✗" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatReport {
    pub spec: Option<GeneratorSpec>,
    pub flags: CompatFlags,
    /// Nonzero tri-/bi-vectors, keyed by column, one per false flag.
    pub witnesses: Vec<(&'static str, MultiVector)>,
}

impl CompatReport {
    pub fn to_json(&self) -> Value {
        let mut w = Map::new();
        for (name, mv) in &self.witnesses {
            w.insert(name.to_string(), mv.to_json());
        }
        let mut out = Map::new();
        if let Some(spec) = &self.spec {
            out.insert(
                "spec".into(),
                serde_json::to_value(spec).expect("plain data"),
            );
        }
        out.insert("flags".into(), self.flags.to_json());
        out.insert("witnesses".into(), Value::Object(w));
        Value::Object(out)
    }
}

/// Runs the five zero-tests on a Poisson bi-vector.
pub fn compat_report(p0: &MultiVector) -> Result<CompatReport> {
    p0.expect_degree(2)?;
    if !is_poisson(p0)? {
        return Err(Error::NotPoisson);
    }
    let (g1, g2) = rayon::join(|| gamma1(p0), || gamma2(p0));
    let p1 = g1?.skew;
    let p2 = g2?.skew;
    let q = linear_combination(&[(rat(1), &p1), (rat(6), &p2)])?;
    let values = [
        schouten(p0, &p1)?,
        p2.clone(),
        schouten(p0, &p2)?,
        q.clone(),
        schouten(p0, &q)?,
    ];
    let flags = CompatFlags(values.each_ref().map(MultiVector::is_zero));
    let witnesses = FLAG_NAMES
        .into_iter()
        .zip(values)
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(CompatReport {
        spec: None,
        flags,
        witnesses,
    })
}

/// Builds the generator output and reports on it.
pub fn compat_report_for(spec: &GeneratorSpec) -> Result<CompatReport> {
    let p0 = spec.build()?;
    let mut r = compat_report(&p0)?;
    r.spec = Some(spec.clone());
    Ok(r)
}

/// Outcome of checking `[[P, Q(P)]] = 0` on random Poisson samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSuiteReport {
    pub seed: u64,
    pub samples: usize,
    /// Indices of samples where the bracket did not vanish.
    pub failures: Vec<usize>,
}

impl RandomSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({ "seed": self.seed, "samples": self.samples, "failures": self.failures })
    }
}

/// Draws `count` Poisson bi-vectors on `R^3` (determinant bracket times a
/// prefactor, degrees at most `max_degree`) and checks the balanced flow.
pub fn random_balance_suite(seed: u64, count: usize, max_degree: u32) -> Result<RandomSuiteReport> {
    use rayon::prelude::*;
    let mut rng = crate::sampling::rng(seed);
    let samples = (0..count)
        .map(|_| crate::sampling::random_poisson_3d(&mut rng, max_degree))
        .collect::<Result<Vec<_>>>()?;
    let verdicts = samples
        .par_iter()
        .map(|p| Ok(schouten(p, &crate::graphflow::balanced_1_6(p)?)?.is_zero()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(RandomSuiteReport {
        seed,
        samples: count,
        failures: verdicts
            .iter()
            .enumerate()
            .filter(|(_, ok)| !**ok)
            .map(|(i, _)| i)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Context, Polynomial};

    #[test]
    fn constant_bracket_passes_everything() {
        let ctx = Context::new(3).unwrap();
        let p =
            MultiVector::bivector(ctx, [((0, 2), Polynomial::parse("-2", ctx).unwrap())]).unwrap();
        let r = compat_report(&p).unwrap();
        assert_eq!(r.flags, CompatFlags([true; 5]));
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn non_poisson_is_refused() {
        let ctx = Context::new(3).unwrap();
        let poly = |s| Polynomial::parse(s, ctx).unwrap();
        let p = MultiVector::bivector(ctx, [((0, 1), poly("x3")), ((1, 2), poly("x2"))]).unwrap();
        assert!(matches!(compat_report(&p), Err(Error::NotPoisson)));
    }

    #[test]
    fn witnesses_match_false_flags() {
        let spec = GeneratorSpec::det(3, &["x1*x2 + x1*x3 + x2*x3"], Some("x1^2 + x2"));
        let r = compat_report_for(&spec).unwrap();
        assert_eq!(r.flags, CompatFlags([false, false, false, false, true]));
        let names: Vec<_> = r.witnesses.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, FLAG_NAMES[..4]);
        assert_eq!(r.to_json(), compat_report_for(&spec).unwrap().to_json());
    }

    #[test]
    fn small_random_suite() {
        let r = random_balance_suite(3, 4, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
