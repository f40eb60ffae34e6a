//! Both tetrahedral flows on a four-dimensional Poisson bracket, and their
//! Schouten brackets with the input.

use tetraflow::generators::{det_bracket, DetSpec};
use tetraflow::graphflow::{gamma1, gamma2};
use tetraflow::multivector::{jacobiator, schouten};
use tetraflow::polyring::{Context, Polynomial};

fn main() -> tetraflow::Result<()> {
    let ctx = Context::new(4)?;
    let args = ["x2^3*x3^2*x4", "x1*x3^4*x4"]
        .iter()
        .map(|s| Polynomial::parse(s, ctx))
        .collect::<Result<Vec<_>, _>>()?;
    let p0 = det_bracket(&DetSpec::new(ctx, args))?;

    let p1 = gamma1(&p0)?;
    let p2 = gamma2(&p0)?;
    println!("gamma1 raw (already skew):\n{}", p1.raw);
    println!("gamma2 raw (not skew):\n{}", p2.raw);
    println!("gamma2 skew part:\n{}", p2.skew);

    println!("[[P0, P1]] =\n{}", schouten(&p0, &p1.skew)?);
    println!("[[P0, P2]] =\n{}", schouten(&p0, &p2.skew)?);
    println!("jacobiator(P1) =\n{}", jacobiator(&p1.skew)?);
    println!("jacobiator(P2) =\n{}", jacobiator(&p2.skew)?);
    Ok(())
}
