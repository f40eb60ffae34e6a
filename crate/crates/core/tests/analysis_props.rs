mod common;

use proptest::prelude::*;
use tetraflow::analysis::{
    builtin_rows, compat_report, compat_report_for, find_ratios, perturb_probe, probe_instance,
    random_balance_suite,
};
use tetraflow::graphflow::{gamma1, gamma2};
use tetraflow::multivector::{schouten, MultiVector};
use tetraflow::polyring::{rat, Context, Polynomial};
use tetraflow::sampling::{random_poisson_3d, rng};

use common::strategies;

#[test]
fn ratio_one_to_six_on_table_rows() {
    for row in builtin_rows()
        .into_iter()
        .filter(|r| [2, 3, 7, 8].contains(&r.id))
    {
        let p = row.spec.build().unwrap();
        let p1 = gamma1(&p).unwrap().skew;
        let p2 = gamma2(&p).unwrap().skew;
        assert!(!schouten(&p, &p1).unwrap().is_zero());
        assert!(!schouten(&p, &p2).unwrap().is_zero());
        let sol = find_ratios(&p, &[p1, p2]).unwrap();
        assert!(sol.contains(&[rat(1), rat(6)]), "row {}: {sol}", row.id);
    }
}

#[test]
fn reports_are_reproducible() {
    let row = &builtin_rows()[1];
    let a = compat_report_for(&row.spec).unwrap().to_json().to_string();
    let b = compat_report_for(&row.spec).unwrap().to_json().to_string();
    assert_eq!(a, b);
    let p = row.spec.build().unwrap();
    assert_eq!(compat_report(&p).unwrap().flags, row.expected);
}

#[test]
fn balance_holds_on_another_seed() {
    let r = random_balance_suite(99, 12, 4).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
fn probe_first_order_terms() {
    let (p, d) = probe_instance().unwrap();
    let ctx = p.ctx();
    let v = |s: &str| Polynomial::parse(s, ctx).unwrap();
    let (f, g, f2) = (v("x1^2"), v("x3^3"), v("x2^3*x3^2"));
    let fp = f.diff(0).unwrap();
    let gp = g.diff(2).unwrap();
    let r = perturb_probe(&p, &d).unwrap();
    // Jacobi part: twice f2 f' g'
    let jac = r.jacobi_part(1).get(&[0, 1, 2]);
    assert_eq!(jac, (&(&f2 * &fp) * &gp).scale(&rat(2)));
    // flow part: -(d_y^3 f2) (f')^4 (g')^4
    let flow = r.flow_part(1).get(&[0, 1, 2]);
    let d3 = f2.diff(1).unwrap().diff(1).unwrap().diff(1).unwrap();
    assert_eq!(flow, -&(&d3 * &(&fp.pow(4) * &gp.pow(4))));
}

fn eps_lift(p: MultiVector) -> MultiVector {
    p.lift_epsilon()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn first_order_is_twice_the_mixed_bracket(
        seed in any::<u64>(),
        delta in strategies::bivector(Context::new(3).unwrap(), 2, 2),
    ) {
        let p = eps_lift(random_poisson_3d(&mut rng(seed), 2).unwrap());
        let delta = eps_lift(delta);
        let r = perturb_probe(&p, &delta).unwrap();
        prop_assert!(r.jacobi_part(0).is_zero());
        prop_assert!(r.flow_part(0).is_zero());
        let mixed = schouten(&p, &delta).unwrap().scale(&rat(2));
        prop_assert_eq!(r.jacobi_part(1), mixed);
    }
}
