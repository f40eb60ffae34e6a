//! A Poisson bracket on R^4 from two Casimirs,
//! `{a, b} = det J(g1, g2, a, b)`.

use tetraflow::generators::{det_bracket, DetSpec};
use tetraflow::multivector::{is_poisson, jacobiator};
use tetraflow::polyring::{Context, Polynomial};

fn main() -> tetraflow::Result<()> {
    let ctx = Context::new(4)?;
    let g1 = Polynomial::parse("x2^3*x3^2*x4", ctx)?;
    let g2 = Polynomial::parse("x1*x3^4*x4", ctx)?;
    let p = det_bracket(&DetSpec::new(ctx, vec![g1, g2]))?;

    println!("P0 =\n{p}");
    println!("full matrix:\n{}", p.full_matrix()?);
    println!("jacobiator:\n{}", jacobiator(&p)?);
    println!("Poisson: {}", is_poisson(&p)?);
    println!("{}", p.to_json_string());
    Ok(())
}
