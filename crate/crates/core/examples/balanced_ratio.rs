//! Finds the combination of the two flows that stays compatible with the
//! input bracket, then checks it directly.

use tetraflow::analysis::find_ratios;
use tetraflow::generators::{det_bracket, DetSpec};
use tetraflow::graphflow::{balanced_1_6, gamma1, gamma2};
use tetraflow::multivector::schouten;
use tetraflow::polyring::{Context, Polynomial};

fn main() -> tetraflow::Result<()> {
    let ctx = Context::new(4)?;
    let args = vec![
        Polynomial::parse("x2^3*x3^2*x4", ctx)?,
        Polynomial::parse("x1*x3^4*x4", ctx)?,
    ];
    let p0 = det_bracket(&DetSpec::new(ctx, args))?;
    let p1 = gamma1(&p0)?.skew;
    let p2 = gamma2(&p0)?.skew;

    let sol = find_ratios(&p0, &[p1, p2])?;
    println!("{sol}");

    let q = balanced_1_6(&p0)?;
    println!("[[P0, P1 + 6 P2]] = {}", schouten(&p0, &q)?);
    Ok(())
}
