//! On R^3 every `f * det J(g, ., .)` is Poisson; the one-form test explains why.

use tetraflow::generators::{det_bracket, form_obstruction, premultiply, to_oneform, DetSpec};
use tetraflow::multivector::{is_poisson, jacobiator, MultiVector};
use tetraflow::polyring::{Context, Polynomial};

fn main() -> tetraflow::Result<()> {
    let ctx = Context::new(3)?;
    let g = Polynomial::parse("x1*x2 + x1*x3 + x2*x3", ctx)?;
    let f = Polynomial::parse("x1^2 + x2", ctx)?;
    let p = premultiply(&det_bracket(&DetSpec::new(ctx, vec![g]))?, &f)?;
    println!("P =\n{p}");
    let w = to_oneform(&p)?;
    for (k, c) in w.comps.iter().enumerate() {
        println!("w{} = {c}", k + 1);
    }
    println!(
        "dw ^ w = {}   Poisson: {}",
        form_obstruction(&p)?,
        is_poisson(&p)?
    );

    let q = MultiVector::bivector(
        ctx,
        [
            ((0, 1), Polynomial::parse("x3", ctx)?),
            ((1, 2), Polynomial::parse("x2", ctx)?),
        ],
    )?;
    println!(
        "dw ^ w = {}   jacobiator:\n{}",
        form_obstruction(&q)?,
        jacobiator(&q)?
    );
    Ok(())
}
